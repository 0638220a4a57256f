use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::{Monomial, MultiPoly};
use crate::error::{Error, Result};

/// Leading-term long division in the Laurent ring.
///
/// Both operands are first shifted by their elementwise-minimum exponent so
/// they become ordinary polynomials; the shifted divisor is then divisible by
/// no variable, so divisibility in the Laurent ring coincides with
/// divisibility in the polynomial ring and the greedy loop terminates.
pub(super) fn exact_div(p: &MultiPoly, q: &MultiPoly) -> Result<MultiPoly> {
    if q.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if p.is_zero() {
        return Ok(MultiPoly::zero_in(&p.reg));
    }
    if q.len() == 1 {
        let (m, c) = q.terms.iter().next().expect("one term");
        let mut terms = BTreeMap::new();
        for (pm, pc) in &p.terms {
            let (quot, rem) = pc.div_rem(c);
            if !rem.is_zero() {
                return Err(nonexact(p, q));
            }
            terms.insert(pm.div(m), quot);
        }
        return Ok(MultiPoly {
            reg: p.reg.clone(),
            terms,
        });
    }

    let p_shift = min_exponents(p);
    let q_shift = min_exponents(q);
    let mut rem: BTreeMap<Monomial, BigInt> =
        p.terms.iter().map(|(m, c)| (m.div(&p_shift), c.clone())).collect();
    let divisor: Vec<(Monomial, BigInt)> = q
        .terms
        .iter()
        .rev()
        .map(|(m, c)| (m.div(&q_shift), c.clone()))
        .collect();
    let (lead_m, lead_c) = divisor[0].clone();

    let mut quotient = BTreeMap::new();
    while let Some((m, c)) = rem.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
        if !m.dominates(&lead_m) {
            return Err(nonexact(p, q));
        }
        let (qc, r) = c.div_rem(&lead_c);
        if !r.is_zero() {
            return Err(nonexact(p, q));
        }
        let qm = m.div(&lead_m);
        for (dm, dc) in &divisor {
            MultiPoly::add_term(&mut rem, dm.mul(&qm), -(dc * &qc));
        }
        debug_assert!(!rem.contains_key(&m));
        quotient.insert(qm, qc);
    }

    let shift = p_shift.div(&q_shift);
    Ok(MultiPoly {
        reg: p.reg.clone(),
        terms: quotient
            .into_iter()
            .map(|(m, c)| (m.mul(&shift), c))
            .collect(),
    })
}

fn min_exponents(p: &MultiPoly) -> Monomial {
    let mut it = p.terms.keys();
    let first = it.next().cloned().unwrap_or_default();
    it.fold(first, |acc, m| acc.elementwise_min(m))
}

fn nonexact(p: &MultiPoly, q: &MultiPoly) -> Error {
    Error::NonExactDivision(format!("({}) / ({})", p, q))
}
