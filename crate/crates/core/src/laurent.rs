//! Dense Laurent polynomials in `A` with `i64` coefficients.
//!
//! Every operation is checked and returns `None` on overflow or on a division
//! that leaves a remainder, so callers can fall back to [`MultiPoly`].

use crate::polyring::{MultiPoly, VAR_A};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Laurent {
    low: i32,
    coeffs: Vec<i64>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent { low: 0, coeffs: Vec::new() }
    }

    pub fn monomial(c: i64, exp: i32) -> Self {
        Laurent { low: exp, coeffs: vec![c] }.trimmed()
    }

    /// `d = -A^2 - A^-2`.
    pub fn d() -> Self {
        Laurent {
            low: -2,
            coeffs: vec![-1, 0, 0, 0, -1],
        }
    }

    fn high(&self) -> i32 {
        self.low + self.coeffs.len() as i32
    }

    fn coeff(&self, exp: i32) -> i64 {
        let i = exp - self.low;
        if i < 0 || i >= self.coeffs.len() as i32 {
            0
        } else {
            self.coeffs[i as usize]
        }
    }

    fn trimmed(mut self) -> Self {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|&&c| c == 0).count();
        if lead == self.coeffs.len() {
            return Laurent::zero();
        }
        self.coeffs.drain(..lead);
        self.low += lead as i32;
        self
    }

    fn combine(&self, other: &Self, sign: i64) -> Option<Self> {
        if self.coeffs.is_empty() {
            return other.scaled(sign);
        }
        if other.coeffs.is_empty() {
            return Some(self.clone());
        }
        let low = self.low.min(other.low);
        let high = self.high().max(other.high());
        let coeffs = (low..high)
            .map(|e| self.coeff(e).checked_add(other.coeff(e).checked_mul(sign)?))
            .collect::<Option<Vec<_>>>()?;
        Some(Laurent { low, coeffs }.trimmed())
    }

    fn scaled(&self, k: i64) -> Option<Self> {
        let coeffs = self.coeffs.iter().map(|c| c.checked_mul(k)).collect::<Option<Vec<_>>>()?;
        Some(Laurent { low: self.low, coeffs })
    }

    pub fn add(&self, other: &Self) -> Option<Self> {
        self.combine(other, 1)
    }

    pub fn sub(&self, other: &Self) -> Option<Self> {
        self.combine(other, -1)
    }

    pub fn mul(&self, other: &Self) -> Option<Self> {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Some(Laurent::zero());
        }
        let mut acc = vec![0i128; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                acc[i + j] = acc[i + j].checked_add(a as i128 * b as i128)?;
            }
        }
        let coeffs = acc.into_iter().map(|c| i64::try_from(c).ok()).collect::<Option<Vec<_>>>()?;
        Some(
            Laurent {
                low: self.low + other.low,
                coeffs,
            }
            .trimmed(),
        )
    }

    /// Exact quotient by `d = -A^-2 (1 + A^4)`.
    pub fn div_d(&self) -> Option<Self> {
        if self.coeffs.is_empty() {
            return Some(Laurent::zero());
        }
        let n = self.coeffs.len();
        if n < 5 {
            return None;
        }
        let mut q = vec![0i64; n - 4];
        for i in 0..n {
            let carried = if i >= 4 { q[i - 4] } else { 0 };
            let r = self.coeffs[i].checked_sub(carried)?;
            if i < n - 4 {
                q[i] = r;
            } else if r != 0 {
                return None;
            }
        }
        let coeffs = q.into_iter().map(|c| c.checked_neg()).collect::<Option<Vec<_>>>()?;
        Some(
            Laurent {
                low: self.low + 2,
                coeffs,
            }
            .trimmed(),
        )
    }

    pub fn to_poly(&self) -> MultiPoly {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| MultiPoly::monomial(VAR_A, self.low + i as i32).scale(&c.into()))
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MultiPoly {
        MultiPoly::parse(s).unwrap()
    }

    #[test]
    fn arithmetic_matches_sparse() {
        let d = Laurent::d();
        assert_eq!(d.to_poly(), p("-A^2 - A^-2"));
        let sq = d.mul(&d).unwrap();
        assert_eq!(sq.to_poly(), p("A^4 + 2 + A^-4"));
        assert_eq!(sq.div_d().unwrap(), d);
        let x = Laurent::monomial(-1, -3);
        assert_eq!(x.sub(&Laurent::monomial(1, 1)).unwrap().to_poly(), p("-A - A^-3"));
        assert!(x.add(&x.scaled(-1).unwrap()).unwrap().to_poly().is_zero());
    }

    #[test]
    fn failures_are_reported() {
        assert!(Laurent::monomial(1, 3).div_d().is_none());
        assert!(Laurent::monomial(i64::MAX, 0).add(&Laurent::monomial(1, 0)).is_none());
        let big = Laurent::monomial(1 << 40, 0);
        assert!(big.mul(&big).is_none());
    }
}
