//! Sparse multivariate Laurent polynomials with arbitrary-precision integer
//! coefficients.
//!
//! Every polynomial value in the crate (brackets, W-polynomials, chain and
//! sheaf polynomials, flow counts) is a [`MultiPoly`]. Variables live in a
//! shared, append-only [`VarRegistry`]; the exponent vector of a monomial is
//! indexed by registration order, and that order fixes the canonical term
//! order used by [`MultiPoly::canonical_string`].

mod division;
mod format;

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Names registered in every [`VarRegistry`], in index order.
pub const RESERVED: [&str; 8] = ["A", "B", "d", "t", "z1", "z2", "w", "q"];

pub const VAR_A: usize = 0;
pub const VAR_B: usize = 1;
pub const VAR_D: usize = 2;
pub const VAR_T: usize = 3;
pub const VAR_Z1: usize = 4;
pub const VAR_Z2: usize = 5;
pub const VAR_W: usize = 6;
pub const VAR_Q: usize = 7;

/// Append-only table of variable names.
///
/// Cloning is cheap and yields a handle to the same table. Two polynomials
/// can only be combined when they share a table.
#[derive(Clone)]
pub struct VarRegistry(Arc<RwLock<Vec<String>>>);

impl VarRegistry {
    /// A fresh registry holding only the reserved names.
    pub fn new() -> Self {
        VarRegistry(Arc::new(RwLock::new(
            RESERVED.iter().map(|s| s.to_string()).collect(),
        )))
    }

    /// The process-wide registry used by the rest of the crate.
    pub fn global() -> &'static VarRegistry {
        static GLOBAL: OnceLock<VarRegistry> = OnceLock::new();
        GLOBAL.get_or_init(VarRegistry::new)
    }

    /// Index of `name`, registering it if absent. Idempotent.
    pub fn register(&self, name: &str) -> usize {
        if let Some(i) = self.index_of(name) {
            return i;
        }
        let mut names = self.0.write().expect("registry lock poisoned");
        // another thread may have won the race
        if let Some(i) = names.iter().position(|n| n == name) {
            return i;
        }
        names.push(name.to_string());
        names.len() - 1
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        let names = self.0.read().expect("registry lock poisoned");
        names.iter().position(|n| n == name)
    }

    pub fn name(&self, index: usize) -> String {
        let names = self.0.read().expect("registry lock poisoned");
        names
            .get(index)
            .cloned()
            .unwrap_or_else(|| format!("?{index}"))
    }

    pub fn len(&self) -> usize {
        self.0.read().expect("registry lock poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn same_as(&self, other: &VarRegistry) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }
}

impl Default for VarRegistry {
    fn default() -> Self {
        VarRegistry::new()
    }
}

impl fmt::Debug for VarRegistry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.0.read().expect("registry lock poisoned");
        f.debug_tuple("VarRegistry").field(&*names).finish()
    }
}

/// Exponent vector, trailing zeros trimmed so that the representation is unique.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Monomial(SmallVec<[i32; 8]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(index: usize, exp: i32) -> Self {
        let mut v = SmallVec::from_elem(0, index + 1);
        v[index] = exp;
        Monomial(v).trimmed()
    }

    pub fn from_exponents(exps: &[i32]) -> Self {
        Monomial(SmallVec::from_slice(exps)).trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
        self
    }

    pub fn exp(&self, index: usize) -> i32 {
        self.0.get(index).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> &[i32] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let n = self.0.len().max(other.0.len());
        let v = (0..n).map(|i| self.exp(i) + other.exp(i)).collect();
        Monomial(v).trimmed()
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        let n = self.0.len().max(other.0.len());
        let v = (0..n).map(|i| self.exp(i) - other.exp(i)).collect();
        Monomial(v).trimmed()
    }

    pub fn pow(&self, n: i32) -> Monomial {
        Monomial(self.0.iter().map(|e| e * n).collect()).trimmed()
    }

    /// True when every exponent of `self` is at least the matching exponent of `other`.
    fn dominates(&self, other: &Monomial) -> bool {
        let n = self.0.len().max(other.0.len());
        (0..n).all(|i| self.exp(i) >= other.exp(i))
    }

    fn elementwise_min(&self, other: &Monomial) -> Monomial {
        let n = self.0.len().max(other.0.len());
        Monomial((0..n).map(|i| self.exp(i).min(other.exp(i))).collect()).trimmed()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let n = self.0.len().max(other.0.len());
        for i in 0..n {
            match self.exp(i).cmp(&other.exp(i)) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

/// The four ring operations accepted by [`arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithKind {
    Add,
    Sub,
    Mul,
    Neg,
}

/// A Laurent polynomial over the integers.
///
/// Terms are kept in a map from exponent vector to nonzero coefficient, so
/// structural equality is mathematical equality.
#[derive(Clone)]
pub struct MultiPoly {
    reg: VarRegistry,
    terms: BTreeMap<Monomial, BigInt>,
}

impl MultiPoly {
    pub fn zero_in(reg: &VarRegistry) -> Self {
        MultiPoly {
            reg: reg.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant_in(reg: &VarRegistry, c: impl Into<BigInt>) -> Self {
        Self::term_in(reg, Monomial::one(), c)
    }

    pub fn term_in(reg: &VarRegistry, m: Monomial, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly {
            reg: reg.clone(),
            terms,
        }
    }

    /// `var^exp` in the global registry.
    pub fn monomial(var: usize, exp: i32) -> Self {
        Self::term_in(VarRegistry::global(), Monomial::var(var, exp), 1)
    }

    pub fn var(var: usize) -> Self {
        Self::monomial(var, 1)
    }

    /// Variable `name` in the global registry, registering it on first use.
    pub fn var_named(name: &str) -> Self {
        Self::var(VarRegistry::global().register(name))
    }

    pub fn zero() -> Self {
        Self::zero_in(VarRegistry::global())
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::constant_in(VarRegistry::global(), c)
    }

    pub fn registry(&self) -> &VarRegistry {
        &self.reg
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending canonical order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// `±1` times a single monomial: the units of the Laurent ring.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().all(|c| c.abs().is_one())
    }

    /// True when no variable in `vars` occurs.
    pub fn is_free_of(&self, vars: &[usize]) -> bool {
        self.terms
            .keys()
            .all(|m| vars.iter().all(|&v| m.exp(v) == 0))
    }

    /// Indices of the variables that occur.
    pub fn support_vars(&self) -> Vec<usize> {
        let mut out: Vec<usize> = Vec::new();
        for m in self.terms.keys() {
            for (i, &e) in m.exponents().iter().enumerate() {
                if e != 0 && !out.contains(&i) {
                    out.push(i);
                }
            }
        }
        out.sort_unstable();
        out
    }

    fn check_registry(&self, other: &MultiPoly) -> Result<()> {
        if self.reg.same_as(&other.reg) {
            Ok(())
        } else {
            Err(Error::RegistryMismatch)
        }
    }

    fn add_term(terms: &mut BTreeMap<Monomial, BigInt>, m: Monomial, c: BigInt) {
        use std::collections::btree_map::Entry;
        match terms.entry(m) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn try_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_registry(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            Self::add_term(&mut terms, m.clone(), c.clone());
        }
        Ok(MultiPoly {
            reg: self.reg.clone(),
            terms,
        })
    }

    pub fn try_sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_registry(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            Self::add_term(&mut terms, m.clone(), -c);
        }
        Ok(MultiPoly {
            reg: self.reg.clone(),
            terms,
        })
    }

    pub fn try_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_registry(other)?;
        let mut terms = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                Self::add_term(&mut terms, m1.mul(m2), c1 * c2);
            }
        }
        Ok(MultiPoly {
            reg: self.reg.clone(),
            terms,
        })
    }

    pub fn scale(&self, c: &BigInt) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero_in(&self.reg);
        }
        MultiPoly {
            reg: self.reg.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> MultiPoly {
        MultiPoly {
            reg: self.reg.clone(),
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    /// `self^n`. Negative `n` is only defined for units.
    pub fn pow(&self, n: i64) -> Result<MultiPoly> {
        if n < 0 {
            if !self.is_unit() {
                return Err(Error::NonUnitPower { exp: n });
            }
            let (m, c) = self.terms.iter().next().expect("unit has one term");
            let k = i32::try_from(n).map_err(|_| Error::NonUnitPower { exp: n })?;
            let sign = if c.is_negative() && n % 2 != 0 { -1 } else { 1 };
            return Ok(MultiPoly::term_in(&self.reg, m.pow(k), sign));
        }
        if self.is_unit() {
            let (m, c) = self.terms.iter().next().expect("unit has one term");
            let k = i32::try_from(n).map_err(|_| Error::NonUnitPower { exp: n })?;
            let sign = if c.is_negative() && n % 2 != 0 { -1 } else { 1 };
            return Ok(MultiPoly::term_in(&self.reg, m.pow(k), sign));
        }
        let mut base = self.clone();
        let mut acc = MultiPoly::constant_in(&self.reg, 1);
        let mut e = n as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// Simultaneous substitution of variables by polynomials.
    ///
    /// A variable that appears with a negative exponent must be bound to a unit.
    pub fn substitute(&self, bindings: &HashMap<usize, MultiPoly>) -> Result<MultiPoly> {
        if bindings.is_empty() {
            return Ok(self.clone());
        }
        for b in bindings.values() {
            self.check_registry(b)?;
        }
        let mut powers: HashMap<(usize, i32), MultiPoly> = HashMap::new();
        let mut out = MultiPoly::zero_in(&self.reg);
        for (m, c) in &self.terms {
            let mut free = Vec::with_capacity(m.exponents().len());
            let mut factor = MultiPoly::constant_in(&self.reg, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                match bindings.get(&i) {
                    Some(b) if e != 0 => {
                        let p = match powers.get(&(i, e)) {
                            Some(p) => p.clone(),
                            None => {
                                let p = b.pow(e as i64).map_err(|_| {
                                    Error::NonUnitSubstitution {
                                        var: self.reg.name(i),
                                    }
                                })?;
                                powers.insert((i, e), p.clone());
                                p
                            }
                        };
                        factor = &factor * &p;
                        free.push(0);
                    }
                    Some(_) => free.push(0),
                    None => free.push(e),
                }
            }
            let factor = factor.mul_monomial(&Monomial::from_exponents(&free));
            out = &out + &factor;
        }
        Ok(out)
    }

    /// Substitution keyed by variable name; names must already be registered.
    pub fn substitute_named(&self, bindings: &[(&str, MultiPoly)]) -> Result<MultiPoly> {
        let mut map = HashMap::new();
        for (name, p) in bindings {
            let idx = self
                .reg
                .index_of(name)
                .ok_or_else(|| Error::invalid(*name, "unknown variable"))?;
            map.insert(idx, p.clone());
        }
        self.substitute(&map)
    }

    /// Exact rational evaluation. Every occurring variable must be assigned.
    pub fn eval(&self, assignment: &HashMap<usize, BigRational>) -> Result<BigRational> {
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut term = BigRational::from_integer(c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let v = assignment
                    .get(&i)
                    .ok_or_else(|| Error::invalid(self.reg.name(i), "variable not assigned"))?;
                if e < 0 && v.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                term *= num_traits::pow::Pow::pow(v, e);
            }
            total += term;
        }
        Ok(total)
    }

    /// Evaluation keyed by variable names.
    pub fn eval_named(&self, assignment: &[(&str, BigRational)]) -> Result<BigRational> {
        let mut map = HashMap::new();
        for (name, v) in assignment {
            if let Some(i) = self.reg.index_of(name) {
                map.insert(i, v.clone());
            }
        }
        self.eval(&map)
    }

    /// Convenience: evaluate a polynomial in `q` alone at an integer.
    pub fn eval_q(&self, q: i64) -> Result<BigRational> {
        let mut map = HashMap::new();
        map.insert(VAR_Q, BigRational::from_integer(q.into()));
        self.eval(&map)
    }

    /// Exact quotient `self / divisor`; errors if the division leaves a remainder.
    pub fn exact_div(&self, divisor: &MultiPoly) -> Result<MultiPoly> {
        self.check_registry(divisor)?;
        division::exact_div(self, divisor)
    }

    /// The deterministic printed form, e.g. `-A^4 - A^-4` or `2*A*B + B^2*d`.
    pub fn canonical_string(&self) -> String {
        format::canonical_string(self)
    }

    /// Parse the canonical syntax, registering unknown variable names.
    pub fn parse_in(reg: &VarRegistry, s: &str) -> Result<MultiPoly> {
        format::parse(reg, s)
    }

    pub fn parse(s: &str) -> Result<MultiPoly> {
        format::parse(VarRegistry::global(), s)
    }

    /// `{ "[e0,e1,...]": coeff }` map, one key per term, exponents over the registry prefix
    /// that covers every occurring variable.
    pub fn to_json(&self) -> serde_json::Value {
        let width = self
            .terms
            .keys()
            .map(|m| m.exponents().len())
            .max()
            .unwrap_or(0);
        let mut obj = serde_json::Map::new();
        for (m, c) in self.terms.iter().rev() {
            let key = format!(
                "[{}]",
                (0..width)
                    .map(|i| m.exp(i).to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            );
            let value = match i64::try_from(c) {
                Ok(v) => serde_json::Value::from(v),
                Err(_) => serde_json::Value::from(c.to_string()),
            };
            obj.insert(key, value);
        }
        serde_json::Value::Object(obj)
    }
}

/// Spec-level entry point for the four ring operations; `q` is ignored for `Neg`.
pub fn arith(p: &MultiPoly, q: &MultiPoly, kind: ArithKind) -> Result<MultiPoly> {
    match kind {
        ArithKind::Add => p.try_add(q),
        ArithKind::Sub => p.try_sub(q),
        ArithKind::Mul => p.try_mul(q),
        ArithKind::Neg => Ok(-p),
    }
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.reg.same_as(&other.reg) && self.terms == other.terms
    }
}

impl Eq for MultiPoly {}

impl std::hash::Hash for MultiPoly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        for (m, c) in &self.terms {
            m.hash(state);
            c.hash(state);
        }
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_string())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({})", self.canonical_string())
    }
}

// Operator impls panic on registry mismatch; use the `try_*` methods when the
// operands may come from different registries.
impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_add(rhs).expect("registry mismatch")
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_sub(rhs).expect("registry mismatch")
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_mul(rhs).expect("registry mismatch")
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            reg: self.reg.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly { (&self).$method(&rhs) }
        }
        impl $tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly { (&self).$method(rhs) }
        }
        impl $tr<MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly { self.$method(&rhs) }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl std::iter::Sum for MultiPoly {
    fn sum<I: Iterator<Item = MultiPoly>>(iter: I) -> MultiPoly {
        iter.fold(MultiPoly::zero(), |a, b| a + b)
    }
}

impl std::iter::Product for MultiPoly {
    fn product<I: Iterator<Item = MultiPoly>>(iter: I) -> MultiPoly {
        iter.fold(MultiPoly::one(), |a, b| a * b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> MultiPoly {
        MultiPoly::var(VAR_A)
    }
    fn b() -> MultiPoly {
        MultiPoly::var(VAR_B)
    }
    fn d() -> MultiPoly {
        MultiPoly::var(VAR_D)
    }

    #[test]
    fn annihilator_and_cancellation() {
        let p = &a() + &d();
        assert!((&p * &MultiPoly::zero()).is_zero());
        let x = &a() + &(&b() * &d());
        assert_eq!(&x - &a(), &b() * &d());
    }

    #[test]
    fn difference_of_squares() {
        let a2 = a().pow(2).unwrap();
        let one = MultiPoly::one();
        let prod = (&a2 + &one) * (&a2 - &one);
        assert_eq!(prod, a().pow(4).unwrap() - one);
    }

    #[test]
    fn powers_of_units() {
        let m = -MultiPoly::monomial(VAR_A, -3);
        assert_eq!(m.pow(2).unwrap(), MultiPoly::monomial(VAR_A, -6));
        let y = -MultiPoly::monomial(VAR_A, 3);
        assert_eq!(y.pow(-1).unwrap(), -MultiPoly::monomial(VAR_A, -3));
        assert_eq!(y.pow(0).unwrap(), MultiPoly::one());
        let err = (&a() + &d()).pow(-1).unwrap_err();
        assert_eq!(err, Error::NonUnitPower { exp: -1 });
    }

    #[test]
    fn general_power_by_squaring() {
        let p = &a() + &MultiPoly::one();
        let p5 = p.pow(5).unwrap();
        let mut naive = MultiPoly::one();
        for _ in 0..5 {
            naive = &naive * &p;
        }
        assert_eq!(p5, naive);
    }

    #[test]
    fn note_one_specialization() {
        let x = &a() + &(&b() * &d());
        let y = &(&a() * &d()) + &b();
        let mut bind = HashMap::new();
        bind.insert(VAR_B, MultiPoly::monomial(VAR_A, -1));
        bind.insert(
            VAR_D,
            -MultiPoly::monomial(VAR_A, 2) - MultiPoly::monomial(VAR_A, -2),
        );
        assert_eq!(
            x.substitute(&bind).unwrap(),
            -MultiPoly::monomial(VAR_A, -3)
        );
        assert_eq!(y.substitute(&bind).unwrap(), -MultiPoly::monomial(VAR_A, 3));
        assert_eq!(x.substitute(&HashMap::new()).unwrap(), x);
    }

    #[test]
    fn negative_exponent_needs_unit_binding() {
        let p = MultiPoly::monomial(VAR_D, -1);
        let mut bind = HashMap::new();
        bind.insert(VAR_D, &a() + &MultiPoly::one());
        assert!(matches!(
            p.substitute(&bind),
            Err(Error::NonUnitSubstitution { .. })
        ));
    }

    #[test]
    fn eval_examples() {
        let dd = -MultiPoly::monomial(VAR_A, 2) - MultiPoly::monomial(VAR_A, -2);
        let two = BigRational::from_integer(2.into());
        let v = dd.eval_named(&[("A", two)]).unwrap();
        assert_eq!(v, BigRational::new((-17).into(), 4.into()));
        assert!(MultiPoly::zero().eval(&HashMap::new()).unwrap().is_zero());
        let q1 = MultiPoly::var(VAR_Q) - MultiPoly::one();
        assert_eq!(q1.eval_q(5).unwrap(), BigRational::from_integer(4.into()));
        let inv = MultiPoly::monomial(VAR_A, -1);
        assert_eq!(
            inv.eval_named(&[("A", BigRational::zero())]).unwrap_err(),
            Error::DivisionByZero
        );
    }

    #[test]
    fn registry_is_idempotent_and_checked() {
        let reg = VarRegistry::new();
        let i = reg.register("foo");
        assert_eq!(reg.register("foo"), i);
        assert_eq!(reg.index_of("A"), Some(VAR_A));
        let p = MultiPoly::constant_in(&reg, 3);
        let q = MultiPoly::constant(3);
        assert_eq!(p.try_add(&q).unwrap_err(), Error::RegistryMismatch);
        assert_eq!(
            arith(&p, &q, ArithKind::Mul).unwrap_err(),
            Error::RegistryMismatch
        );
    }

    #[test]
    fn concurrent_registration_agrees() {
        let reg = VarRegistry::new();
        let handles: Vec<_> = (0..8)
            .map(|_| {
                let r = reg.clone();
                std::thread::spawn(move || (0..50).map(|i| r.register(&format!("v{i}"))).collect::<Vec<_>>())
            })
            .collect();
        let results: Vec<Vec<usize>> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        assert!(results.windows(2).all(|w| w[0] == w[1]));
        assert_eq!(reg.len(), RESERVED.len() + 50);
    }

    #[test]
    fn monomial_order_pads_with_zero() {
        let m1 = Monomial::from_exponents(&[1]);
        let m2 = Monomial::from_exponents(&[1, -2]);
        assert!(m1 > m2);
        assert_eq!(Monomial::from_exponents(&[1, 0, 0]), m1);
    }
}
