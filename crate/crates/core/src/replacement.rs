//! Replacing edges of a signed graph by chains (paths) and sheaves (parallel
//! bundles), and evaluating `Q` of the result without building it.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::chain_sheaf::{ch_poly, sh_poly};
use crate::colored_tutte::{w_recursive, ColorWeights, WParams};
use crate::error::{Error, Result};
use crate::multigraph::minor::Minor;
use crate::multigraph::{Color, Edge, EdgeKind, Graph, Label, LabeledGraph, Sign, SignedGraph};
use crate::polyring::{MultiPoly, VarRegistry, VAR_W};
use crate::signed_tutte::{specialize, QConstants, Ring};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReplacementKind {
    Chain,
    Sheaf,
}

impl ReplacementKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ReplacementKind::Chain => "chain",
            ReplacementKind::Sheaf => "sheaf",
        }
    }
}

impl fmt::Display for ReplacementKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Replace one edge by a chain of length `n` or a sheaf of width `n`.
/// Negative `n` means `|n|` edges of the opposite sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Directive {
    pub kind: ReplacementKind,
    pub n: i32,
}

impl Directive {
    pub fn chain(n: i32) -> Self {
        Directive { kind: ReplacementKind::Chain, n }
    }

    pub fn sheaf(n: i32) -> Self {
        Directive { kind: ReplacementKind::Sheaf, n }
    }
}

/// One directive per edge id.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ReplacementSpec(BTreeMap<String, Directive>);

impl ReplacementSpec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, edge: impl Into<String>, d: Directive) -> Result<()> {
        let edge = edge.into();
        if d.n == 0 {
            return Err(Error::ZeroReplacement(edge));
        }
        self.0.insert(edge, d);
        Ok(())
    }

    pub fn with(mut self, edge: impl Into<String>, d: Directive) -> Result<Self> {
        self.insert(edge, d)?;
        Ok(self)
    }

    /// The same directive on every edge of `g`.
    pub fn uniform<T: Clone>(g: &Graph<T>, d: Directive) -> Result<Self> {
        let mut spec = Self::new();
        for e in g.edges() {
            spec.insert(e.id.clone(), d)?;
        }
        Ok(spec)
    }

    pub fn get(&self, edge: &str) -> Option<Directive> {
        self.0.get(edge).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Directive)> {
        self.0.iter()
    }

    /// Checks that the spec names exactly the edges of `g`.
    pub fn check_total<T: Clone>(&self, g: &Graph<T>) -> Result<()> {
        for id in self.0.keys() {
            g.edge(id)?;
        }
        for e in g.edges() {
            if !self.0.contains_key(&e.id) {
                return Err(Error::MissingDirective(e.id.clone()));
            }
        }
        Ok(())
    }

    fn directive(&self, edge: &str) -> Result<Directive> {
        self.get(edge).ok_or_else(|| Error::MissingDirective(edge.to_string()))
    }
}

/// `Ĝ` together with the original edge each new edge came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReplacedGraph {
    pub graph: SignedGraph,
    pub provenance: BTreeMap<String, String>,
}

/// Builds `Ĝ`. New edges are named `{id}_{j}`; interior chain vertices are
/// appended after the original vertices.
pub fn build_replaced(g: &SignedGraph, spec: &ReplacementSpec) -> Result<ReplacedGraph> {
    spec.check_total(g)?;
    let mut vertices = g.vertex_count();
    let mut edges = Vec::new();
    let mut provenance = BTreeMap::new();
    for e in g.edges() {
        let d = spec.directive(&e.id)?;
        let sign = e.attr * Sign::of(d.n);
        let m = d.n.unsigned_abs() as usize;
        let ids: Vec<String> = (1..=m).map(|j| format!("{}_{j}", e.id)).collect();
        match d.kind {
            ReplacementKind::Sheaf => {
                for id in &ids {
                    edges.push(Edge::new(id.clone(), e.u, e.v, sign));
                }
            }
            ReplacementKind::Chain => {
                let mut from = e.u;
                for (j, id) in ids.iter().enumerate() {
                    let to = if j + 1 == m {
                        e.v
                    } else {
                        vertices += 1;
                        vertices - 1
                    };
                    edges.push(Edge::new(id.clone(), from, to, sign));
                    from = to;
                }
            }
        }
        for id in ids {
            provenance.insert(id, e.id.clone());
        }
    }
    Ok(ReplacedGraph {
        graph: Graph::new(vertices, edges)?,
        provenance,
    })
}

/// Color weights `(x, y)` standing in for a chain or sheaf of `m` edges of
/// the given polarity.
pub fn replacement_weights(kind: ReplacementKind, polarity: Sign, m: u32, c: &QConstants) -> Result<(MultiPoly, MultiPoly)> {
    let m = m as i64;
    let (a, b, x, y) = match polarity {
        Sign::Plus => (&c.a, &c.b, &c.x, &c.y),
        Sign::Minus => (&c.b, &c.a, &c.y, &c.x),
    };
    let am = a.pow(m)?;
    let bm = b.pow(m)?;
    Ok(match kind {
        ReplacementKind::Chain => {
            let yw = (&x.pow(m)? - &am).exact_div(&c.d)?;
            (am, yw)
        }
        ReplacementKind::Sheaf => {
            let xw = (&y.pow(m)? - &bm).exact_div(&c.d)?;
            (xw, bm)
        }
    })
}

fn edge_polarity(edge: &str, sign: Sign, d: Directive, ring: Ring) -> Result<(Sign, u32)> {
    if d.n == 0 {
        return Err(Error::ZeroReplacement(edge.to_string()));
    }
    if d.n < 0 && ring == Ring::General {
        return Err(Error::NegativeInGeneralRing(edge.to_string()));
    }
    Ok((sign * Sign::of(d.n), d.n.unsigned_abs()))
}

fn edge_weights(g: &SignedGraph, spec: &ReplacementSpec, c: &QConstants) -> Result<Vec<(MultiPoly, MultiPoly)>> {
    spec.check_total(g)?;
    g.edges()
        .iter()
        .map(|e| {
            let d = spec.directive(&e.id)?;
            let (polarity, m) = edge_polarity(&e.id, e.attr, d, c.ring)?;
            replacement_weights(d.kind, polarity, m, c)
        })
        .collect()
}

/// `Q[Ĝ]` as `W(G)(d, d, d)` with each edge colored by its own weights.
pub fn q_hat_via_w(g: &SignedGraph, spec: &ReplacementSpec, ring: Ring) -> Result<MultiPoly> {
    let c = QConstants::for_ring(ring);
    let weights = edge_weights(g, spec, &c)?;
    let mut cw = ColorWeights::new();
    for (e, (x, y)) in g.edges().iter().zip(weights) {
        cw.insert(e.id.clone(), x, y);
    }
    let colored = g.map_attr(|e| Color(e.id.clone()));
    w_recursive(&colored, &cw, &WParams::diagonal(c.d.clone()))
}

fn reduce(g: &SignedGraph, edge: &str, d: Directive, c: &QConstants) -> Result<(MultiPoly, MultiPoly)> {
    let e = g.edge(edge)?;
    let (polarity, m) = edge_polarity(edge, e.attr, d, c.ring)?;
    let (x, y) = replacement_weights(d.kind, polarity, m, c)?;
    let x = match g.classify_edge(edge)? {
        EdgeKind::Loop => &x * &c.d,
        _ => x,
    };
    Ok((y, x))
}

/// Coefficients `(on Q[Ĝ - e], on Q[Ĝ / e])` when edge `edge` of `g` is
/// replaced by a chain of length `n`.
pub fn chain_reduce(g: &SignedGraph, edge: &str, n: i32, c: &QConstants) -> Result<(MultiPoly, MultiPoly)> {
    reduce(g, edge, Directive::chain(n), c)
}

/// Coefficients `(on Q[Ĝ - e], on Q[Ĝ / e])` when edge `edge` of `g` is
/// replaced by a sheaf of width `n`.
pub fn sheaf_reduce(g: &SignedGraph, edge: &str, n: i32, c: &QConstants) -> Result<(MultiPoly, MultiPoly)> {
    reduce(g, edge, Directive::sheaf(n), c)
}

/// `Q[Ĝ]` by applying the chain/sheaf reductions edge by edge on `G`.
pub fn q_hat_via_reductions(g: &SignedGraph, spec: &ReplacementSpec, ring: Ring) -> Result<MultiPoly> {
    let c = QConstants::for_ring(ring);
    let weights = edge_weights(g, spec, &c)?;
    let m = Minor::from_graph(g, |e| g.position(&e.id).expect("edge of g"));
    let mut memo = HashMap::new();
    Ok(reduction_rec(&m, &weights, &c, &mut memo))
}

fn reduction_rec(
    m: &Minor<usize>,
    w: &[(MultiPoly, MultiPoly)],
    c: &QConstants,
    memo: &mut HashMap<Minor<usize>, MultiPoly>,
) -> MultiPoly {
    if m.edges.is_empty() {
        return c.d.pow(m.n as i64 - 1).expect("graph has a vertex");
    }
    if let Some(v) = memo.get(m) {
        return v.clone();
    }
    let (x, y) = &w[m.edges[0].2];
    let value = if m.is_loop(0) {
        &(&(x * &c.d) + y) * &reduction_rec(&m.delete(0), w, c, memo)
    } else {
        &(y * &reduction_rec(&m.delete(0), w, c, memo)) + &(x * &reduction_rec(&m.contract(0), w, c, memo))
    };
    memo.insert(m.clone(), value.clone());
    value
}

fn homogeneous(g: &SignedGraph, spec: &ReplacementSpec, kind: ReplacementKind, ring: Ring) -> Result<Vec<(Sign, u32)>> {
    spec.check_total(g)?;
    g.edges()
        .iter()
        .map(|e| {
            let d = spec.directive(&e.id)?;
            if d.kind != kind {
                return Err(Error::invalid(
                    format!("spec.{}.kind", e.id),
                    format!("expected {kind} on every edge"),
                ));
            }
            edge_polarity(&e.id, e.attr, d, ring)
        })
        .collect()
}

fn label_vars(g: &SignedGraph) -> LabeledGraph {
    g.map_attr(|e| Label(format!("l{}", g.position(&e.id).expect("edge of g"))))
}

fn finish(p: MultiPoly, ring: Ring) -> Result<MultiPoly> {
    match ring {
        Ring::General => Ok(p),
        Ring::Bracket => specialize(&p),
    }
}

/// Substitutes `w -> 1 - d^2` and each label by `ratio^m`, multiplying the
/// per-edge prefactors together.
fn relabel(
    poly: &MultiPoly,
    polarities: &[(Sign, u32)],
    c: &QConstants,
    base_and_ratio: impl Fn(Sign) -> (MultiPoly, MultiPoly),
) -> Result<(MultiPoly, MultiPoly)> {
    let mut bind = HashMap::new();
    bind.insert(VAR_W, &MultiPoly::one() - &(&c.d * &c.d));
    let mut prefactor = MultiPoly::one();
    for (i, &(polarity, m)) in polarities.iter().enumerate() {
        let (base, r) = base_and_ratio(polarity);
        let var = VarRegistry::global().register(&format!("l{i}"));
        bind.insert(var, r.pow(m as i64)?);
        prefactor = &prefactor * &base.pow(m as i64)?;
    }
    Ok((poly.substitute(&bind)?, prefactor))
}

fn ratio(num: &MultiPoly, unit: &MultiPoly) -> MultiPoly {
    num * &unit.pow(-1).expect("A and B are units")
}

/// `Q[G_c]` from the chain polynomial of `G`: every directive must be a chain.
pub fn q_gc_via_chain_poly(g: &SignedGraph, spec: &ReplacementSpec, ring: Ring) -> Result<MultiPoly> {
    let polarities = homogeneous(g, spec, ReplacementKind::Chain, ring)?;
    let c = QConstants::general();
    let ch = ch_poly(&label_vars(g))?;
    let (sub, prefactor) = relabel(&ch, &polarities, &c, |s| match s {
        Sign::Plus => (c.a.clone(), ratio(&c.x, &c.a)),
        Sign::Minus => (c.b.clone(), ratio(&c.y, &c.b)),
    })?;
    let exponent = g.edge_count() as i64 - g.vertex_count() as i64 + 1;
    let q = &(&prefactor * &sub) * &c.d.pow(-exponent)?;
    finish(q, ring)
}

/// `Q[G_s]` from the sheaf polynomial of `G`: every directive must be a sheaf.
pub fn q_gs_via_sheaf_poly(g: &SignedGraph, spec: &ReplacementSpec, ring: Ring) -> Result<MultiPoly> {
    let polarities = homogeneous(g, spec, ReplacementKind::Sheaf, ring)?;
    let c = QConstants::general();
    let sh = sh_poly(&label_vars(g))?;
    let (sub, prefactor) = relabel(&sh, &polarities, &c, |s| match s {
        Sign::Plus => (c.b.clone(), ratio(&c.y, &c.b)),
        Sign::Minus => (c.a.clone(), ratio(&c.x, &c.a)),
    })?;
    let k = g.component_count() as i64;
    let exponent = g.vertex_count() as i64 - 2 * k + 1;
    let q = &(&prefactor * &sub) * &c.d.pow(-exponent)?;
    finish(q, ring)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signed_tutte::q_poly_in;

    fn signed(n: usize, es: &[(usize, usize, Sign)]) -> SignedGraph {
        Graph::from_triples(n, es.iter().copied()).unwrap()
    }

    fn p(s: &str) -> MultiPoly {
        MultiPoly::parse(s).unwrap()
    }

    fn oracle(g: &SignedGraph, spec: &ReplacementSpec, ring: Ring) -> MultiPoly {
        let r = build_replaced(g, spec).unwrap();
        q_poly_in(&r.graph, &QConstants::for_ring(ring))
    }

    #[test]
    fn build_chain_and_sheaf() {
        let g = signed(2, &[(0, 1, Sign::Plus)]);
        let r = build_replaced(&g, &ReplacementSpec::uniform(&g, Directive::chain(3)).unwrap()).unwrap();
        assert_eq!(r.graph.vertex_count(), 4);
        assert_eq!(r.graph.edge_count(), 3);
        assert_eq!(r.graph.component_count(), 1);
        assert!(r.graph.edges().iter().all(|e| e.attr == Sign::Plus));
        assert_eq!(r.provenance["e1_2"], "e1");
        let r = build_replaced(&g, &ReplacementSpec::uniform(&g, Directive::chain(-2)).unwrap()).unwrap();
        assert!(r.graph.edges().iter().all(|e| e.attr == Sign::Minus));
        let r = build_replaced(&g, &ReplacementSpec::uniform(&g, Directive::sheaf(2)).unwrap()).unwrap();
        assert_eq!(r.graph.vertex_count(), 2);
        assert_eq!(r.graph.edge_count(), 2);
    }

    #[test]
    fn loops_become_cycles_or_loop_bundles() {
        let g = signed(1, &[(0, 0, Sign::Minus)]);
        let r = build_replaced(&g, &ReplacementSpec::uniform(&g, Directive::chain(3)).unwrap()).unwrap();
        assert_eq!(r.graph.vertex_count(), 3);
        assert!(r.graph.edges().iter().all(|e| !e.is_loop()));
        let r = build_replaced(&g, &ReplacementSpec::uniform(&g, Directive::sheaf(2)).unwrap()).unwrap();
        assert!(r.graph.edges().iter().all(|e| e.is_loop()));
    }

    #[test]
    fn spec_validation() {
        let g = signed(2, &[(0, 1, Sign::Plus), (0, 1, Sign::Plus)]);
        assert_eq!(
            ReplacementSpec::new().with("e1", Directive::chain(0)).unwrap_err(),
            Error::ZeroReplacement("e1".into())
        );
        let partial = ReplacementSpec::new().with("e1", Directive::chain(1)).unwrap();
        assert_eq!(build_replaced(&g, &partial).unwrap_err(), Error::MissingDirective("e2".into()));
        let neg = ReplacementSpec::uniform(&g, Directive::sheaf(-1)).unwrap();
        assert_eq!(
            q_hat_via_w(&g, &neg, Ring::General).unwrap_err(),
            Error::NegativeInGeneralRing("e1".into())
        );
    }

    #[test]
    fn single_edge_sheaf_weights() {
        let g = signed(2, &[(0, 1, Sign::Plus)]);
        let spec = ReplacementSpec::uniform(&g, Directive::sheaf(1)).unwrap();
        assert_eq!(q_hat_via_w(&g, &spec, Ring::General).unwrap(), p("A + B*d"));
        assert_eq!(q_hat_via_w(&g, &spec, Ring::Bracket).unwrap(), p("-A^-3"));
    }

    #[test]
    fn reductions() {
        let c = QConstants::general();
        let g = signed(2, &[(0, 1, Sign::Plus)]);
        assert_eq!(chain_reduce(&g, "e1", 1, &c).unwrap(), (p("B"), p("A")));
        assert_eq!(chain_reduce(&g, "e1", 2, &c).unwrap(), (p("2*A*B + B^2*d"), p("A^2")));
        let l = signed(1, &[(0, 0, Sign::Plus)]);
        let (del, con) = sheaf_reduce(&l, "e1", 1, &c).unwrap();
        assert_eq!((del.clone(), con.clone()), (p("B"), p("A*d")));
        assert_eq!(&del + &con, c.y);
    }

    #[test]
    fn all_routes_on_a_triangle_with_loop() {
        let g = signed(
            3,
            &[(0, 1, Sign::Plus), (1, 2, Sign::Minus), (2, 0, Sign::Plus), (1, 1, Sign::Minus)],
        );
        for kind in [ReplacementKind::Chain, ReplacementKind::Sheaf] {
            let mut spec = ReplacementSpec::new();
            for (i, e) in g.edges().iter().enumerate() {
                spec.insert(e.id.clone(), Directive { kind, n: i as i32 + 1 }).unwrap();
            }
            let want = oracle(&g, &spec, Ring::General);
            assert_eq!(q_hat_via_w(&g, &spec, Ring::General).unwrap(), want);
            assert_eq!(q_hat_via_reductions(&g, &spec, Ring::General).unwrap(), want);
            let cor = match kind {
                ReplacementKind::Chain => q_gc_via_chain_poly(&g, &spec, Ring::General),
                ReplacementKind::Sheaf => q_gs_via_sheaf_poly(&g, &spec, Ring::General),
            };
            assert_eq!(cor.unwrap(), want);
        }
    }

    #[test]
    fn negative_directives_in_bracket_ring() {
        let g = signed(2, &[(0, 1, Sign::Plus), (0, 1, Sign::Minus), (1, 1, Sign::Plus)]);
        let spec = ReplacementSpec::new()
            .with("e1", Directive::chain(-2))
            .unwrap()
            .with("e2", Directive::sheaf(3))
            .unwrap()
            .with("e3", Directive::chain(-1))
            .unwrap();
        let want = oracle(&g, &spec, Ring::Bracket);
        assert_eq!(q_hat_via_w(&g, &spec, Ring::Bracket).unwrap(), want);
        assert_eq!(q_hat_via_reductions(&g, &spec, Ring::Bracket).unwrap(), want);
    }

    #[test]
    fn reidemeister_two_cancellation() {
        // a +edge and a -edge in series behave like one contracted edge
        let g = signed(2, &[(0, 1, Sign::Plus), (0, 1, Sign::Plus)]);
        let c = QConstants::bracket();
        let pair = signed(3, &[(0, 1, Sign::Plus), (1, 2, Sign::Minus), (0, 2, Sign::Plus)]);
        let contracted = g.contract("e1").unwrap();
        assert_eq!(q_poly_in(&pair, &c), q_poly_in(&contracted, &c));
        let sheaf = signed(2, &[(0, 1, Sign::Plus), (0, 1, Sign::Minus), (0, 1, Sign::Plus)]);
        let deleted = g.delete("e1").unwrap();
        assert_eq!(q_poly_in(&sheaf, &c), q_poly_in(&deleted, &c));
    }
}
