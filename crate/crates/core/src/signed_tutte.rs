//! Kauffman's Q-polynomial of signed graphs, its bracket specialization and
//! the Jones normalization.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::colored_tutte::{w_state_sum, ColorWeights, WParams};
use crate::error::{Error, Result};
use crate::multigraph::minor::Minor;
use crate::multigraph::{Color, Sign, SignedGraph};
use crate::polyring::{MultiPoly, VAR_A, VAR_B, VAR_D};

/// Which ring a Q-type computation is carried out in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ring {
    /// `Z[A^±, B^±, d^±]` with `A`, `B`, `d` independent.
    General,
    /// Laurent polynomials in `A` after `B = A^-1`, `d = -A^2 - A^-2`.
    Bracket,
}

/// `A, B, d` and the derived `X = A + Bd`, `Y = Ad + B` in a given ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QConstants {
    pub ring: Ring,
    pub a: MultiPoly,
    pub b: MultiPoly,
    pub d: MultiPoly,
    pub x: MultiPoly,
    pub y: MultiPoly,
}

impl QConstants {
    pub fn general() -> Self {
        let a = MultiPoly::var(VAR_A);
        let b = MultiPoly::var(VAR_B);
        let d = MultiPoly::var(VAR_D);
        QConstants {
            ring: Ring::General,
            x: &a + &(&b * &d),
            y: &(&a * &d) + &b,
            a,
            b,
            d,
        }
    }

    pub fn bracket() -> Self {
        let a = MultiPoly::var(VAR_A);
        let b = MultiPoly::monomial(VAR_A, -1);
        let d = -MultiPoly::monomial(VAR_A, 2) - MultiPoly::monomial(VAR_A, -2);
        QConstants {
            ring: Ring::Bracket,
            x: &a + &(&b * &d),
            y: &(&a * &d) + &b,
            a,
            b,
            d,
        }
    }

    pub fn for_ring(ring: Ring) -> Self {
        match ring {
            Ring::General => Self::general(),
            Ring::Bracket => Self::bracket(),
        }
    }

    /// Map a general-ring value into this ring.
    pub fn lift(&self, p: &MultiPoly) -> Result<MultiPoly> {
        match self.ring {
            Ring::General => Ok(p.clone()),
            Ring::Bracket => specialize(p),
        }
    }
}

/// `B -> A^-1`, `d -> -A^2 - A^-2`.
pub fn specialize(p: &MultiPoly) -> Result<MultiPoly> {
    let c = QConstants::bracket();
    let mut bind = HashMap::new();
    bind.insert(VAR_B, c.b);
    bind.insert(VAR_D, c.d);
    p.substitute(&bind)
}

/// Q[G] in `Z[A, B, d]` by deletion-contraction.
pub fn q_poly(g: &SignedGraph) -> MultiPoly {
    q_poly_in(g, &QConstants::general())
}

/// Q[G] with the given values of `A, B, d, X, Y`.
///
/// Loops are stripped first (a factor `X` per negative loop, `Y` per positive
/// one), then the smallest-id edge is branched on. Subproblems are memoized on
/// their exact relabelled edge list.
pub fn q_poly_in(g: &SignedGraph, c: &QConstants) -> MultiPoly {
    let minor = Minor::from_graph(g, |e| e.attr);
    let mut memo = HashMap::new();
    q_rec(&minor, c, &mut memo)
}

fn q_rec(m: &Minor<Sign>, c: &QConstants, memo: &mut HashMap<Minor<Sign>, MultiPoly>) -> MultiPoly {
    let (rest, loops) = m.strip_loops();
    let minus = loops.iter().filter(|s| **s == Sign::Minus).count();
    let plus = loops.len() - minus;
    let body = q_loopless(&rest, c, memo);
    if loops.is_empty() {
        return body;
    }
    let factor = &c.x.pow(minus as i64).expect("nonnegative") * &c.y.pow(plus as i64).expect("nonnegative");
    &factor * &body
}

fn q_loopless(m: &Minor<Sign>, c: &QConstants, memo: &mut HashMap<Minor<Sign>, MultiPoly>) -> MultiPoly {
    if m.edges.is_empty() {
        return d_power(c, m.n as i64 - 1);
    }
    if let Some(v) = memo.get(m) {
        return v.clone();
    }
    let deleted = q_rec(&m.delete(0), c, memo);
    let contracted = q_rec(&m.contract(0), c, memo);
    let value = match m.edges[0].2 {
        Sign::Minus => &(&c.a * &deleted) + &(&c.b * &contracted),
        Sign::Plus => &(&c.b * &deleted) + &(&c.a * &contracted),
    };
    memo.insert(m.clone(), value.clone());
    value
}

fn d_power(c: &QConstants, n: i64) -> MultiPoly {
    // n = -1 only for the vertexless graph, where d^-1 exists in the general ring alone
    c.d.pow(n)
        .expect("Q of the vertexless graph has no value in the bracket ring")
}

/// Q[G] branching on edges in the given id order, without memoization.
/// Used to check that the recursion does not depend on the edge order.
pub fn q_poly_with_order(g: &SignedGraph, order: &[String]) -> Result<MultiPoly> {
    let c = QConstants::general();
    let mut g = g.clone();
    let mut factor = MultiPoly::one();
    // strip loops
    for e in g.edges().to_vec() {
        if e.is_loop() {
            factor = &factor * if e.attr == Sign::Minus { &c.x } else { &c.y };
            g = g.delete(&e.id)?;
        }
    }
    let remaining: Vec<String> = order
        .iter()
        .filter(|id| g.edge(id).is_ok())
        .cloned()
        .collect();
    if remaining.len() != g.edge_count() {
        return Err(Error::invalid("order", "must list every edge id"));
    }
    let Some(first) = remaining.first() else {
        return Ok(&factor * &d_power(&c, g.vertex_count() as i64 - 1));
    };
    let sign = g.edge(first)?.attr;
    let deleted = q_poly_with_order(&g.delete(first)?, &remaining[1..])?;
    let contracted = q_poly_with_order(&g.contract(first)?, &remaining[1..])?;
    let value = match sign {
        Sign::Minus => &(&c.a * &deleted) + &(&c.b * &contracted),
        Sign::Plus => &(&c.b * &deleted) + &(&c.a * &contracted),
    };
    Ok(&factor * &value)
}

/// Color weights that make `W(G)(d,d,d)` equal to `Q[G]`:
/// `+ -> (x, y) = (A, B)`, `- -> (B, A)`.
pub fn sign_weights(c: &QConstants) -> ColorWeights {
    ColorWeights::new()
        .with("+", c.a.clone(), c.b.clone())
        .with("-", c.b.clone(), c.a.clone())
}

/// Q[G] through the spanning-subgraph expansion of W at `t = z1 = z2 = d`.
pub fn q_via_state_sum(g: &SignedGraph, cap: usize) -> Result<MultiPoly> {
    let c = QConstants::general();
    let colored = g.map_attr(|e| Color(e.attr.as_str().to_string()));
    w_state_sum(&colored, &sign_weights(&c), &WParams::diagonal(c.d.clone()), cap)
}

/// The Kauffman bracket `<D>`, a Laurent polynomial in `A` alone.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BracketValue(MultiPoly);

impl BracketValue {
    pub fn new(p: MultiPoly) -> Result<Self> {
        if p.support_vars().iter().any(|&v| v != VAR_A) {
            return Err(Error::Internal(format!("bracket value `{p}` is not a polynomial in A")));
        }
        Ok(BracketValue(p))
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.0
    }

    pub fn into_poly(self) -> MultiPoly {
        self.0
    }

    /// `A -> A^-1`.
    pub fn mirror(&self) -> BracketValue {
        let mut bind = HashMap::new();
        bind.insert(VAR_A, MultiPoly::monomial(VAR_A, -1));
        BracketValue(self.0.substitute(&bind).expect("A^-1 is a unit"))
    }
}

impl fmt::Display for BracketValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `<D(G)>` obtained by specializing `Q[G]`.
pub fn kauffman_bracket(g: &SignedGraph) -> Result<BracketValue> {
    BracketValue::new(specialize(&q_poly(g))?)
}

/// `<D(G)>` by running the recursion directly in the bracket ring.
pub fn bracket_by_recursion(g: &SignedGraph) -> BracketValue {
    BracketValue(q_poly_in(g, &QConstants::bracket()))
}

/// Jones polynomial as a map from `4 * (t-exponent)` to coefficient.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct JonesValue(BTreeMap<i64, BigInt>);

impl JonesValue {
    pub fn coefficient(&self, quarter_exp: i64) -> BigInt {
        self.0.get(&quarter_exp).cloned().unwrap_or_default()
    }

    /// `(quarter exponent, coefficient)` pairs, ascending.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.0.iter().map(|(e, c)| (*e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut obj = serde_json::Map::new();
        for (e, c) in self.0.iter().rev() {
            let value = match i64::try_from(c) {
                Ok(v) => serde_json::Value::from(v),
                Err(_) => serde_json::Value::from(c.to_string()),
            };
            obj.insert(format_exponent(*e), value);
        }
        serde_json::Value::Object(obj)
    }
}

fn format_exponent(quarters: i64) -> String {
    let g = quarters.gcd(&4);
    let (num, den) = (quarters / g, 4 / g);
    if den == 1 {
        num.to_string()
    } else {
        format!("{num}/{den}")
    }
}

impl fmt::Display for JonesValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.0.iter().rev().enumerate() {
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let c = c.abs();
            match (*e, c.is_one()) {
                (0, _) => write!(f, "{c}")?,
                (4, true) => f.write_str("t")?,
                (4, false) => write!(f, "{c}*t")?,
                (e, true) => write!(f, "t^{}", format_exponent(e))?,
                (e, false) => write!(f, "{c}*t^{}", format_exponent(e))?,
            }
        }
        Ok(())
    }
}

/// `V(t) = (-A^3)^(-w) <D>` with `A = t^(-1/4)`.
pub fn jones(b: &BracketValue, writhe: i64) -> Result<JonesValue> {
    let normal = (-MultiPoly::monomial(VAR_A, 3)).pow(-writhe)?;
    let p = &normal * b.poly();
    let mut out = BTreeMap::new();
    for (m, c) in p.terms() {
        if !c.is_zero() {
            out.insert(-(m.exp(VAR_A) as i64), c.clone());
        }
    }
    Ok(JonesValue(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multigraph::{Graph, DEFAULT_ENUMERATION_CAP as CAP};

    fn g(n: usize, es: &[(usize, usize, Sign)]) -> SignedGraph {
        Graph::from_triples(n, es.iter().copied()).unwrap()
    }

    fn p(s: &str) -> MultiPoly {
        MultiPoly::parse(s).unwrap()
    }

    const P: Sign = Sign::Plus;
    const M: Sign = Sign::Minus;

    #[test]
    fn edgeless() {
        assert_eq!(q_poly(&SignedGraph::empty(3)), p("d^2"));
        assert_eq!(q_via_state_sum(&SignedGraph::empty(3), CAP).unwrap(), p("d^2"));
    }

    #[test]
    fn positive_loop_is_y() {
        let lp = g(1, &[(0, 0, P)]);
        assert_eq!(q_poly(&lp), p("A*d + B"));
        assert_eq!(q_poly(&g(1, &[(0, 0, M)])), p("A + B*d"));
    }

    #[test]
    fn single_edge_routes_agree() {
        // Calibration of the sign -> weight map: bridge gives X (+) or Y (-).
        let plus = g(2, &[(0, 1, P)]);
        assert_eq!(q_poly(&plus), p("A + B*d"));
        assert_eq!(q_via_state_sum(&plus, CAP).unwrap(), q_poly(&plus));
        let minus = g(2, &[(0, 1, M)]);
        assert_eq!(q_poly(&minus), p("A*d + B"));
        assert_eq!(q_via_state_sum(&minus, CAP).unwrap(), q_poly(&minus));
    }

    #[test]
    fn parallel_pair() {
        let two = g(2, &[(0, 1, P), (0, 1, P)]);
        let want = p("A^2*d + 2*A*B + B^2*d");
        assert_eq!(q_poly(&two), want);
        assert_eq!(q_via_state_sum(&two, CAP).unwrap(), want);
    }

    #[test]
    fn brackets() {
        let one = g(2, &[(0, 1, P)]);
        assert_eq!(kauffman_bracket(&one).unwrap().poly(), &p("-A^-3"));
        let hopf = g(2, &[(0, 1, P), (0, 1, P)]);
        assert_eq!(kauffman_bracket(&hopf).unwrap().to_string(), "-A^4 - A^-4");
        let trefoil = g(2, &[(0, 1, P), (0, 1, P), (0, 1, P)]);
        assert_eq!(kauffman_bracket(&trefoil).unwrap().to_string(), "A^7 - A^3 - A^-5");
        assert_eq!(bracket_by_recursion(&trefoil), kauffman_bracket(&trefoil).unwrap());
    }

    #[test]
    fn jones_examples() {
        let one = BracketValue::new(MultiPoly::one()).unwrap();
        assert_eq!(jones(&one, 0).unwrap().to_string(), "1");
        let kink = BracketValue::new(-MultiPoly::monomial(VAR_A, 3)).unwrap();
        let v = jones(&kink, 1).unwrap();
        assert_eq!(v.to_string(), "1");
        assert_eq!(v.coefficient(0), BigInt::one());
        let hopf = BracketValue::new(p("-A^4 - A^-4")).unwrap();
        let v = jones(&hopf, -2).unwrap();
        assert_eq!(v.to_string(), "-t^-1/2 - t^-5/2");
        assert_eq!(v.coefficient(-10), BigInt::from(-1));
    }

    #[test]
    fn order_independence() {
        let graph = g(3, &[(0, 1, P), (1, 2, M), (2, 0, P), (0, 1, M), (1, 1, P)]);
        let base = q_poly(&graph);
        let mut ids = graph.default_order();
        ids.reverse();
        assert_eq!(q_poly_with_order(&graph, &ids).unwrap(), base);
        ids.rotate_left(2);
        assert_eq!(q_poly_with_order(&graph, &ids).unwrap(), base);
    }

    #[test]
    fn mirror_inverts_a() {
        let graph = g(3, &[(0, 1, P), (1, 2, M), (2, 0, P), (0, 1, P)]);
        let b = kauffman_bracket(&graph).unwrap();
        let m = kauffman_bracket(&graph.mirror()).unwrap();
        assert_eq!(m, b.mirror());
    }

    #[test]
    fn non_a_bracket_rejected() {
        assert!(BracketValue::new(MultiPoly::var(VAR_D)).is_err());
    }
}
