//! Kauffman brackets of rational links by transfer matrices, closed forms for
//! the one- and two-term words, and the three-parameter theta family.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::multigraph::{Graph, Sign, SignedGraph};
use crate::laurent::Laurent;
use crate::polyring::{MultiPoly, VAR_A};
use crate::replacement::{build_replaced, Directive, ReplacementSpec};
use crate::signed_tutte::{q_poly_in, BracketValue, QConstants};

/// A word `m_1 ... m_k` of nonzero half-twist counts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalWord(Vec<i32>);

impl RationalWord {
    pub fn new(terms: Vec<i32>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::invalid("word", "needs at least one term"));
        }
        if let Some(index) = terms.iter().position(|&m| m == 0) {
            return Err(Error::ZeroWordTerm { index });
        }
        Ok(RationalWord(terms))
    }

    pub fn terms(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Odd length words are horizontal, even length ones vertical.
    pub fn is_horizontal(&self) -> bool {
        self.0.len() % 2 == 1
    }

    pub fn mirror(&self) -> RationalWord {
        RationalWord(self.0.iter().map(|m| -m).collect())
    }

    /// Total number of crossings, `Σ|m_i|`.
    pub fn crossings(&self) -> u32 {
        self.0.iter().map(|m| m.unsigned_abs()).sum()
    }
}

impl FromStr for RationalWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let terms = s
            .split(',')
            .map(|t| {
                t.trim().parse::<i32>().map_err(|e| Error::Parse {
                    input: s.to_string(),
                    reason: format!("term `{}`: {e}", t.trim()),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        RationalWord::new(terms)
    }
}

impl fmt::Display for RationalWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i32::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

struct Powers {
    c: QConstants,
}

impl Powers {
    fn new() -> Self {
        Powers { c: QConstants::bracket() }
    }

    fn a(&self, m: i32) -> MultiPoly {
        self.c.a.pow(m as i64).expect("unit")
    }

    fn b(&self, m: i32) -> MultiPoly {
        self.c.b.pow(m as i64).expect("unit")
    }

    fn x(&self, m: i32) -> MultiPoly {
        self.c.x.pow(m as i64).expect("unit")
    }

    fn y(&self, m: i32) -> MultiPoly {
        self.c.y.pow(m as i64).expect("unit")
    }

    fn d(&self, m: u32) -> MultiPoly {
        self.c.d.pow(m as i64).expect("nonnegative")
    }
}

/// Arithmetic needed by the transfer recursion, in the bracket ring.
trait TransferScalar: Sized {
    fn a(m: i32) -> Self;
    fn x(m: i32) -> Self;
    fn d() -> Self;
    fn add(&self, o: &Self) -> Result<Self>;
    fn sub(&self, o: &Self) -> Result<Self>;
    fn mul(&self, o: &Self) -> Result<Self>;
    fn div_d(&self) -> Result<Self>;
    fn into_poly(self) -> MultiPoly;

    fn b(m: i32) -> Self {
        Self::a(-m)
    }

    fn y(m: i32) -> Self {
        Self::x(-m)
    }
}

fn sign_power(m: i32) -> i64 {
    if m % 2 == 0 {
        1
    } else {
        -1
    }
}

impl TransferScalar for MultiPoly {
    fn a(m: i32) -> Self {
        MultiPoly::monomial(VAR_A, m)
    }

    fn x(m: i32) -> Self {
        MultiPoly::monomial(VAR_A, -3 * m).scale(&sign_power(m).into())
    }

    fn d() -> Self {
        QConstants::bracket().d
    }

    fn add(&self, o: &Self) -> Result<Self> {
        self.try_add(o)
    }

    fn sub(&self, o: &Self) -> Result<Self> {
        self.try_sub(o)
    }

    fn mul(&self, o: &Self) -> Result<Self> {
        self.try_mul(o)
    }

    fn div_d(&self) -> Result<Self> {
        self.exact_div(&Self::d())
    }

    fn into_poly(self) -> MultiPoly {
        self
    }
}

impl TransferScalar for Laurent {
    fn a(m: i32) -> Self {
        Laurent::monomial(1, m)
    }

    fn x(m: i32) -> Self {
        Laurent::monomial(sign_power(m), -3 * m)
    }

    fn d() -> Self {
        Laurent::d()
    }

    fn add(&self, o: &Self) -> Result<Self> {
        Laurent::add(self, o).ok_or_else(overflow)
    }

    fn sub(&self, o: &Self) -> Result<Self> {
        Laurent::sub(self, o).ok_or_else(overflow)
    }

    fn mul(&self, o: &Self) -> Result<Self> {
        Laurent::mul(self, o).ok_or_else(overflow)
    }

    fn div_d(&self) -> Result<Self> {
        Laurent::div_d(self).ok_or_else(overflow)
    }

    fn into_poly(self) -> MultiPoly {
        self.to_poly()
    }
}

fn overflow() -> Error {
    Error::Internal("dense coefficient overflow or remainder".into())
}

/// `d` times the transfer matrix of a chain `c` followed by a sheaf `s`.
fn stage<S: TransferScalar>(c: i32, s: i32) -> Result<[[S; 2]; 2]> {
    let d2 = S::d().mul(&S::d())?;
    let xc = S::x(c);
    let xa = xc.sub(&S::a(c))?;
    let bs = S::b(s);
    let yb = S::y(s).sub(&bs)?;
    Ok([
        [xc.mul(&bs)?.mul(&d2)?, xc.mul(&yb)?],
        [xa.mul(&bs)?.mul(&d2)?, xa.mul(&yb)?.add(&S::a(c).mul(&S::y(s))?.mul(&d2)?)?],
    ])
}

fn transfer_in<S: TransferScalar>(word: &RationalWord) -> Result<S> {
    let m = word.terms();
    let d2 = S::d().mul(&S::d())?;
    let (mut v, rest, base_exp) = if word.is_horizontal() {
        let x0 = [S::b(m[0]).mul(&d2)?, S::y(m[0]).sub(&S::b(m[0]))?];
        (x0, &m[1..], 1)
    } else {
        let xa = S::x(m[0]).sub(&S::a(m[0]))?;
        let x0 = [
            xa.mul(&S::b(m[1]))?.mul(&d2)?,
            S::a(m[0])
                .mul(&S::y(m[1]))?
                .mul(&d2)?
                .add(&xa.mul(&S::y(m[1]).sub(&S::b(m[1]))?)?)?,
        ];
        (x0, &m[2..], 2)
    };
    for pair in rest.chunks(2) {
        let a: [[S; 2]; 2] = stage(pair[0], pair[1])?;
        v = [
            v[0].mul(&a[0][0])?.add(&v[1].mul(&a[1][0])?)?,
            v[0].mul(&a[0][1])?.add(&v[1].mul(&a[1][1])?)?,
        ];
    }
    let mut total = v[0].add(&v[1])?;
    for _ in 0..base_exp + rest.len() {
        total = total.div_d()?;
    }
    Ok(total)
}

/// The transfer-matrix evaluation, valid for every word length.
pub fn transfer_bracket(word: &RationalWord) -> Result<BracketValue> {
    let poly = match transfer_in::<Laurent>(word) {
        Ok(dense) => dense.into_poly(),
        Err(_) => transfer_in::<MultiPoly>(word)?,
    };
    BracketValue::new(poly)
}

/// The `(m_1, 2)`-torus link: `(Y^m - B^m)/d + B^m d`.
pub fn bracket_torus2(m1: i32) -> Result<BracketValue> {
    if m1 == 0 {
        return Err(Error::ZeroWordTerm { index: 0 });
    }
    let p = Powers::new();
    let first = (&p.y(m1) - &p.b(m1)).exact_div(&p.c.d)?;
    BracketValue::new(&first + &(&p.b(m1) * &p.c.d))
}

/// The two-term word `m_1 m_2` in closed form.
pub fn bracket_twist(m1: i32, m2: i32) -> Result<BracketValue> {
    for (index, m) in [m1, m2].into_iter().enumerate() {
        if m == 0 {
            return Err(Error::ZeroWordTerm { index });
        }
    }
    let a = |e: i32| MultiPoly::monomial(crate::polyring::VAR_A, e);
    let neg_a4 = -a(4);
    let neg_a_4 = -a(-4);
    let pow = |p: &MultiPoly, e: i32| p.pow(e as i64).expect("unit");
    let one = MultiPoly::one();
    let lead = a(m1 - m2);
    let first = &lead * &(&(&pow(&neg_a_4, m1) + &pow(&neg_a4, m2)) - &one);
    let bracket = &(&(&pow(&neg_a_4, m1 - m2) - &pow(&neg_a_4, m1)) - &pow(&neg_a4, m2)) + &one;
    let denom = &(&a(-4) + &MultiPoly::constant(2)) + &a(4);
    let second = (&lead * &bracket).exact_div(&denom)?;
    BracketValue::new(&first + &second)
}

/// Bracket of a rational link: closed forms for one and two terms, transfer
/// matrices beyond that.
pub fn bracket_rational(word: &RationalWord) -> Result<BracketValue> {
    match *word.terms() {
        [m1] => bracket_torus2(m1),
        [m1, m2] => bracket_twist(m1, m2),
        _ => transfer_bracket(word),
    }
}

/// The base graph and replacement spec whose replaced graph is the link's
/// signed graph. Vertex 0 is the common hub; sheaves end at it.
pub fn build_rational_graph(word: &RationalWord) -> (SignedGraph, ReplacementSpec) {
    let m = word.terms();
    let mut triples = Vec::new();
    let mut directives = Vec::new();
    let rest = if word.is_horizontal() {
        triples.push((0, 1, Sign::Plus));
        directives.push(Directive::sheaf(m[0]));
        &m[1..]
    } else {
        triples.push((0, 1, Sign::Plus));
        directives.push(Directive::chain(m[0]));
        triples.push((0, 1, Sign::Plus));
        directives.push(Directive::sheaf(m[1]));
        &m[2..]
    };
    for (i, pair) in rest.chunks(2).enumerate() {
        triples.push((i + 1, i + 2, Sign::Plus));
        directives.push(Directive::chain(pair[0]));
        triples.push((0, i + 2, Sign::Plus));
        directives.push(Directive::sheaf(pair[1]));
    }
    let g = Graph::from_triples(rest.len() / 2 + 2, triples).expect("valid endpoints");
    let mut spec = ReplacementSpec::new();
    for (e, d) in g.edges().iter().zip(directives) {
        spec.insert(e.id.clone(), d).expect("nonzero terms");
    }
    (g, spec)
}

/// Bracket by deletion-contraction on the fully replaced graph.
pub fn oracle_bracket(word: &RationalWord) -> Result<BracketValue> {
    let (g, spec) = build_rational_graph(word);
    replaced_bracket(&g, &spec)
}

fn replaced_bracket(g: &SignedGraph, spec: &ReplacementSpec) -> Result<BracketValue> {
    let r = build_replaced(g, spec)?;
    BracketValue::new(q_poly_in(&r.graph, &QConstants::bracket()))
}

/// Three parallel edges carrying a chain, a sheaf and a chain.
pub fn theta_graph(m1: i32, m2: i32, m3: i32) -> Result<(SignedGraph, ReplacementSpec)> {
    let g = Graph::from_triples(2, [(0, 1, Sign::Plus); 3])?;
    let spec = ReplacementSpec::new()
        .with("e1", Directive::chain(m1))?
        .with("e2", Directive::sheaf(m2))?
        .with("e3", Directive::chain(m3))?;
    Ok((g, spec))
}

pub fn oracle_theta(m1: i32, m2: i32, m3: i32) -> Result<BracketValue> {
    let (g, spec) = theta_graph(m1, m2, m3)?;
    replaced_bracket(&g, &spec)
}

/// Closed form for the theta family `L(m_1, m_2, m_3)`.
pub fn bracket_theta(m1: i32, m2: i32, m3: i32) -> Result<BracketValue> {
    for (index, m) in [m1, m2, m3].into_iter().enumerate() {
        if m == 0 {
            return Err(Error::ZeroWordTerm { index });
        }
    }
    let p = Powers::new();
    let d = &p.c.d;
    let over_d = |q: MultiPoly| q.exact_div(d);
    let chain3 = over_d(&p.x(m3) - &p.a(m3))?;
    let chain1 = over_d(&p.x(m1) - &p.a(m1))?;
    let sheaf2 = over_d(&p.y(m2) - &p.b(m2))?;
    let t1 = &(&p.x(m1) * &p.b(m2)) * &chain3;
    let t2 = &(&(&(&p.a(m1) * d) + &chain1) * &sheaf2) * &chain3;
    let inner = &(&(&p.d(2) - &MultiPoly::one()) * &p.a(m1)) + &p.x(m1);
    let t3 = over_d(&(&inner * &p.y(m2)) * &p.a(m3))?;
    BracketValue::new(&(&t1 + &t2) + &t3)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(s: &str) -> RationalWord {
        s.parse().unwrap()
    }

    fn a(s: &str) -> MultiPoly {
        MultiPoly::parse(s).unwrap()
    }

    #[test]
    fn golden_words() {
        for (w, want) in [
            ("1,1", "-A^4 - A^-4"),
            ("1,1,1", "-A^5 - A^-3 + A^-7"),
            ("2", "-A^4 - A^-4"),
            ("3", "A^7 - A^3 - A^-5"),
            ("1", "-A^-3"),
        ] {
            assert_eq!(bracket_rational(&word(w)).unwrap().poly(), &a(want), "word {w}");
            assert_eq!(oracle_bracket(&word(w)).unwrap().poly(), &a(want), "oracle {w}");
        }
    }

    #[test]
    fn dense_and_sparse_transfer_agree() {
        for w in ["1", "-2,1", "3,-1,2", "1,1,-2,2,1,3"] {
            let w = word(w);
            let dense = transfer_in::<Laurent>(&w).unwrap().into_poly();
            assert_eq!(dense, transfer_in::<MultiPoly>(&w).unwrap(), "word {w}");
        }
    }

    #[test]
    fn transfer_covers_short_words() {
        for w in ["1", "-2", "3", "1,1", "2,-1", "-3,2"] {
            let w = word(w);
            assert_eq!(transfer_bracket(&w).unwrap(), oracle_bracket(&w).unwrap(), "word {w}");
        }
    }

    #[test]
    fn longer_words_match_oracle() {
        for w in ["1,2,1", "2,-1,1,1", "-1,1,2,-2,1", "1,1,1,1,1,1"] {
            let w = word(w);
            assert_eq!(bracket_rational(&w).unwrap(), oracle_bracket(&w).unwrap(), "word {w}");
        }
    }

    #[test]
    fn rational_graph_shapes() {
        let (g, spec) = build_rational_graph(&word("4"));
        assert_eq!((g.vertex_count(), g.edge_count()), (2, 1));
        assert_eq!(spec.get("e1"), Some(Directive::sheaf(4)));
        let (g, spec) = build_rational_graph(&word("2,3"));
        assert_eq!((g.vertex_count(), g.edge_count()), (2, 2));
        assert_eq!(spec.get("e1"), Some(Directive::chain(2)));
        assert_eq!(spec.get("e2"), Some(Directive::sheaf(3)));
        let (g, _) = build_rational_graph(&word("1,1,1,1,1"));
        assert_eq!((g.vertex_count(), g.edge_count()), (4, 5));
    }

    #[test]
    fn theta_examples() {
        assert_eq!(bracket_theta(1, 1, 1).unwrap().poly(), &a("A^7 - A^3 - A^-5"));
        assert_eq!(bracket_theta(2, -1, 3).unwrap(), oracle_theta(2, -1, 3).unwrap());
        assert_eq!(bracket_theta(1, 2, 3).unwrap(), bracket_theta(3, 2, 1).unwrap());
    }

    #[test]
    fn word_parsing() {
        assert_eq!(word(" -1, 2 ").terms(), &[-1, 2]);
        assert_eq!("0,1".parse::<RationalWord>().unwrap_err(), Error::ZeroWordTerm { index: 0 });
        assert!("1,x".parse::<RationalWord>().is_err());
        assert!("".parse::<RationalWord>().is_err());
        assert_eq!(word("1,-2,3").to_string(), "1,-2,3");
    }

    #[test]
    fn mirror_word_mirrors_bracket() {
        let w = word("2,1,-1");
        assert_eq!(bracket_rational(&w.mirror()).unwrap(), bracket_rational(&w).unwrap().mirror());
    }
}
