//! Seeded instance generators and the route-equivalence checks behind
//! `knotpoly verify` and the acceptance tests.

use std::fmt;
use std::ops::RangeInclusive;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chain_sheaf::{
    ch_from_definition, ch_poly, count_nowhere_zero_flows, count_nowhere_zero_tensions, flow_poly,
    sh_from_definition, sh_poly, tension_poly,
};
use crate::colored_tutte::{w_forest_expansion, w_recursive, w_state_sum, ColorWeights, WParams};
use crate::error::Result;
use crate::multigraph::{Color, Graph, Label, LabeledGraph, Sign, SignedGraph, DEFAULT_ENUMERATION_CAP};
use crate::polyring::{MultiPoly, VAR_T};
use crate::rational_links::{
    bracket_rational, bracket_theta, bracket_twist, oracle_bracket, oracle_theta, transfer_bracket, RationalWord,
};
use crate::replacement::{
    build_replaced, q_gc_via_chain_poly, q_gs_via_sheaf_poly, q_hat_via_reductions, q_hat_via_w, Directive,
    ReplacementKind, ReplacementSpec,
};
use crate::signed_tutte::{kauffman_bracket, q_poly, q_poly_in, q_via_state_sum, QConstants, Ring};

/// Outcome of one check: how many cases ran and a description of each mismatch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub name: String,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl Report {
    fn new(name: &str) -> Self {
        Report {
            name: name.to_string(),
            cases: 0,
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(describe());
        }
    }

    /// Records a comparison whose inputs may themselves have failed to compute.
    fn compare<T: PartialEq + fmt::Display>(&mut self, what: impl fmt::Display, got: Result<T>, want: Result<T>) {
        match (got, want) {
            (Ok(g), Ok(w)) => self.check(g == w, || format!("{what}: got {g}, want {w}")),
            (Err(e), _) | (_, Err(e)) => self.check(false, || format!("{what}: {e}")),
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{status} {} ({} cases", self.name, self.cases)?;
        if !self.passed() {
            write!(f, ", {} failed; first: {}", self.failures.len(), self.failures[0])?;
        }
        write!(f, ")")
    }
}

/// Deterministic random instances.
pub struct Generator {
    rng: ChaCha8Rng,
}

impl Generator {
    pub fn new(seed: u64) -> Self {
        Generator {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Loops and parallel edges allowed; at least one vertex.
    pub fn shape(&mut self, max_vertices: usize, max_edges: usize) -> Graph<()> {
        let n = self.rng.gen_range(1..=max_vertices);
        let m = self.rng.gen_range(0..=max_edges);
        let triples: Vec<_> = (0..m)
            .map(|_| (self.rng.gen_range(0..n), self.rng.gen_range(0..n), ()))
            .collect();
        Graph::from_triples(n, triples).expect("endpoints in range")
    }

    pub fn signed_graph(&mut self, max_vertices: usize, max_edges: usize) -> SignedGraph {
        let shape = self.shape(max_vertices, max_edges);
        shape.map_attr(|_| if self.rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus })
    }

    pub fn colored_graph(&mut self, max_vertices: usize, max_edges: usize, colors: &[&str]) -> Graph<Color> {
        let shape = self.shape(max_vertices, max_edges);
        shape.map_attr(|_| Color(colors[self.rng.gen_range(0..colors.len())].to_string()))
    }

    pub fn nonzero(&mut self, range: RangeInclusive<i32>) -> i32 {
        loop {
            let n = self.rng.gen_range(range.clone());
            if n != 0 {
                return n;
            }
        }
    }

    /// One directive per edge; `kind = None` picks chain or sheaf at random.
    pub fn spec<T: Clone>(&mut self, g: &Graph<T>, kind: Option<ReplacementKind>, n: RangeInclusive<i32>) -> ReplacementSpec {
        let mut spec = ReplacementSpec::new();
        for e in g.edges() {
            let kind = kind.unwrap_or_else(|| {
                if self.rng.gen_bool(0.5) {
                    ReplacementKind::Chain
                } else {
                    ReplacementKind::Sheaf
                }
            });
            let n = self.nonzero(n.clone());
            spec.insert(e.id.clone(), Directive { kind, n }).expect("nonzero");
        }
        spec
    }

    pub fn word(&mut self, max_len: usize, max_abs: i32) -> RationalWord {
        let k = self.rng.gen_range(1..=max_len);
        let terms = (0..k).map(|_| self.nonzero(-max_abs..=max_abs)).collect();
        RationalWord::new(terms).expect("nonzero terms")
    }
}

/// Every multigraph on `1..=max_vertices` vertices with at most `max_edges`
/// edges, as multisets of vertex pairs `u <= v`.
pub fn all_shapes(max_vertices: usize, max_edges: usize) -> Vec<Graph<()>> {
    let mut out = Vec::new();
    for n in 1..=max_vertices {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u..n).map(move |v| (u, v))).collect();
        let mut chosen = Vec::new();
        multisets(&pairs, 0, max_edges, &mut chosen, &mut |edges| {
            let triples = edges.iter().map(|&(u, v)| (u, v, ()));
            out.push(Graph::from_triples(n, triples).expect("endpoints in range"));
        });
    }
    out
}

fn multisets(
    pairs: &[(usize, usize)],
    start: usize,
    left: usize,
    chosen: &mut Vec<(usize, usize)>,
    emit: &mut impl FnMut(&[(usize, usize)]),
) {
    emit(chosen);
    if left == 0 {
        return;
    }
    for i in start..pairs.len() {
        chosen.push(pairs[i]);
        multisets(pairs, i, left - 1, chosen, emit);
        chosen.pop();
    }
}

/// All `2^|E|` sign assignments of a shape.
pub fn sign_patterns(shape: &Graph<()>) -> Vec<SignedGraph> {
    let m = shape.edge_count();
    (0u32..1 << m)
        .map(|mask| {
            let mut i = 0;
            shape.map_attr(|_| {
                let s = if mask >> i & 1 == 1 { Sign::Minus } else { Sign::Plus };
                i += 1;
                s
            })
        })
        .collect()
}

/// Distinct labels `a0, a1, ...` in edge order.
pub fn distinct_labels(shape: &Graph<()>) -> LabeledGraph {
    let mut i = 0;
    shape.map_attr(|_| {
        i += 1;
        Label(format!("a{}", i - 1))
    })
}

/// `q_poly` against the spanning-subgraph expansion: every sign pattern on
/// small shapes, then random graphs.
pub fn check_q_routes(max_vertices: usize, max_edges: usize, random: usize, random_edges: usize, seed: u64) -> Report {
    let mut r = Report::new("Q recursion = state sum");
    let mut graphs: Vec<SignedGraph> = all_shapes(max_vertices, max_edges).iter().flat_map(sign_patterns).collect();
    let mut gen = Generator::new(seed);
    graphs.extend((0..random).map(|_| gen.signed_graph(6, random_edges)));
    for g in &graphs {
        r.compare(format!("{g:?}"), Ok(q_poly(g)), q_via_state_sum(g, DEFAULT_ENUMERATION_CAP));
    }
    r
}

/// `w_recursive` against the state sum (symbolic `t, z1, z2`) and the forest
/// expansion (at `z1 = t`).
pub fn check_w_routes(count: usize, max_edges: usize, seed: u64) -> Report {
    let mut r = Report::new("W recursion = state sum = forest expansion");
    let mut gen = Generator::new(seed);
    let colors = ["r", "g", "b"];
    let cw = ColorWeights::symbolic(colors);
    let symbolic = WParams::symbolic();
    let at_t = WParams {
        z1: MultiPoly::var(VAR_T),
        ..WParams::symbolic()
    };
    for _ in 0..count {
        let g = gen.colored_graph(5, max_edges, &colors);
        let what = format!("{g:?}");
        r.compare(
            &what,
            w_recursive(&g, &cw, &symbolic),
            w_state_sum(&g, &cw, &symbolic, DEFAULT_ENUMERATION_CAP),
        );
        r.compare(
            &what,
            w_recursive(&g, &cw, &at_t),
            w_forest_expansion(&g, &cw, &at_t, &g.default_order(), DEFAULT_ENUMERATION_CAP),
        );
    }
    r
}

fn replaced_q(g: &SignedGraph, spec: &ReplacementSpec, ring: Ring) -> Result<MultiPoly> {
    let r = build_replaced(g, spec)?;
    Ok(q_poly_in(&r.graph, &QConstants::for_ring(ring)))
}

/// `Q[Ĝ]` by explicit replacement against the weighted-W and edge-reduction
/// routes: positive counts in the general ring, signed counts after specialization.
pub fn check_replacement(count: usize, max_edges: usize, seed: u64) -> Report {
    let mut r = Report::new("Q[replaced] = W with chain/sheaf weights");
    let mut gen = Generator::new(seed);
    for (ring, range) in [(Ring::General, 1..=4), (Ring::Bracket, -4..=4)] {
        for _ in 0..count {
            let g = gen.signed_graph(4, max_edges);
            let spec = gen.spec(&g, None, range.clone());
            let what = format!("{ring:?} {g:?} {spec:?}");
            r.compare(&what, q_hat_via_w(&g, &spec, ring), replaced_q(&g, &spec, ring));
            r.compare(&what, q_hat_via_reductions(&g, &spec, ring), replaced_q(&g, &spec, ring));
        }
    }
    r
}

/// Chain- and sheaf-polynomial routes against the weighted-W route on
/// homogeneous specs.
pub fn check_polynomial_routes(count: usize, max_edges: usize, seed: u64) -> Report {
    let mut r = Report::new("chain/sheaf polynomial routes = W route");
    let mut gen = Generator::new(seed);
    for kind in [ReplacementKind::Chain, ReplacementKind::Sheaf] {
        for i in 0..count {
            let (ring, range) = if i % 4 == 3 { (Ring::Bracket, -4..=4) } else { (Ring::General, 1..=4) };
            let g = gen.signed_graph(4, max_edges);
            let spec = gen.spec(&g, Some(kind), range);
            let got = match kind {
                ReplacementKind::Chain => q_gc_via_chain_poly(&g, &spec, ring),
                ReplacementKind::Sheaf => q_gs_via_sheaf_poly(&g, &spec, ring),
            };
            r.compare(format!("{kind} {ring:?} {g:?} {spec:?}"), got, q_hat_via_w(&g, &spec, ring));
        }
    }
    r
}

/// Chain/sheaf recursions against their defining subset sums.
pub fn check_chain_sheaf(max_vertices: usize, max_edges: usize) -> Report {
    let mut r = Report::new("Ch/Sh recursion = defining sums");
    for shape in all_shapes(max_vertices, max_edges) {
        let g = distinct_labels(&shape);
        let what = format!("{g:?}");
        r.compare(&what, ch_poly(&g), ch_from_definition(&g, DEFAULT_ENUMERATION_CAP));
        r.compare(&what, sh_poly(&g), sh_from_definition(&g, DEFAULT_ENUMERATION_CAP));
    }
    r
}

/// Flow and tension polynomials against brute-force counts of nowhere-zero
/// `Z_q` flows and tensions.
pub fn check_flow_tension(max_vertices: usize, max_edges: usize, qs: &[u32]) -> Report {
    let mut r = Report::new("flow/tension polynomials = brute-force counts");
    for g in all_shapes(max_vertices, max_edges) {
        let flow = flow_poly(&g);
        let tension = tension_poly(&g);
        for &q in qs {
            let what = format!("q={q} {g:?}");
            let count = |n: u64| Ok(num_rational::BigRational::from_integer(n.into()));
            r.compare(&what, flow.eval_q(q as i64), count(count_nowhere_zero_flows(&g, q)));
            let t = tension.as_ref().map_err(Clone::clone).and_then(|t| t.eval_q(q as i64));
            r.compare(&what, t, count(count_nowhere_zero_tensions(&g, q)));
        }
    }
    r
}

/// Every word of length `1..=max_len` over `alphabet`, in lexicographic order.
pub fn all_words(max_len: usize, alphabet: &[i32]) -> Vec<RationalWord> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<i32>> = vec![vec![]];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| {
                alphabet.iter().map(move |&m| {
                    let mut w = w.clone();
                    w.push(m);
                    w
                })
            })
            .collect();
        out.extend(layer.iter().map(|w| RationalWord::new(w.clone()).expect("nonzero alphabet")));
    }
    out
}

/// Transfer matrices against the replacement oracle.
pub fn check_transfer(max_len: usize, alphabet: &[i32], random: usize, seed: u64) -> Report {
    let mut r = Report::new("transfer matrices = oracle");
    let mut words = all_words(max_len, alphabet);
    let mut gen = Generator::new(seed);
    words.extend((0..random).map(|_| gen.word(max_len, 3)));
    for w in &words {
        r.compare(format!("word {w}"), bracket_rational(w), oracle_bracket(w));
        if w.len() <= 2 {
            r.compare(format!("word {w} (transfer)"), transfer_bracket(w), oracle_bracket(w));
        }
    }
    r
}

/// The two-term closed form against the transfer route and the oracle.
pub fn check_twist(range: RangeInclusive<i32>) -> Report {
    let mut r = Report::new("two-term closed form = transfer = oracle");
    for m1 in range.clone().filter(|&m| m != 0) {
        for m2 in range.clone().filter(|&m| m != 0) {
            let w = RationalWord::new(vec![m1, m2]).expect("nonzero");
            r.compare(format!("({m1},{m2}) vs transfer"), bracket_twist(m1, m2), transfer_bracket(&w));
            r.compare(format!("({m1},{m2}) vs oracle"), bracket_twist(m1, m2), oracle_bracket(&w));
        }
    }
    r
}

/// Theta closed form against the oracle on a positive grid and random signed triples.
pub fn check_theta(max: i32, random: usize, seed: u64) -> Report {
    let mut r = Report::new("theta closed form = oracle");
    let mut triples: Vec<(i32, i32, i32)> = Vec::new();
    for a in 1..=max {
        for b in 1..=max {
            for c in 1..=max {
                triples.push((a, b, c));
            }
        }
    }
    let mut gen = Generator::new(seed);
    triples.extend((0..random).map(|_| (gen.nonzero(-3..=3), gen.nonzero(-3..=3), gen.nonzero(-3..=3))));
    for (a, b, c) in triples {
        r.compare(format!("({a},{b},{c})"), bracket_theta(a, b, c), oracle_theta(a, b, c));
    }
    r
}

/// Plane dual pairs with opposite signs have the same `Q`.
pub fn dual_pairs() -> Vec<(&'static str, SignedGraph, SignedGraph)> {
    use Sign::{Minus as M, Plus as P};
    let g = |n: usize, es: &[(usize, usize, Sign)]| Graph::from_triples(n, es.iter().copied()).expect("valid");
    vec![
        ("digon", g(2, &[(0, 1, P), (0, 1, P)]), g(2, &[(0, 1, M), (0, 1, M)])),
        ("bridge/loop", g(2, &[(0, 1, P)]), g(1, &[(0, 0, M)])),
        ("loop/bridge", g(1, &[(0, 0, P)]), g(2, &[(0, 1, M)])),
        ("triangle/theta", g(3, &[(0, 1, P), (1, 2, P), (2, 0, P)]), g(2, &[(0, 1, M), (0, 1, M), (0, 1, M)])),
        ("path/bouquet", g(3, &[(0, 1, P), (1, 2, M)]), g(1, &[(0, 0, M), (0, 0, P)])),
        (
            "square/4-bundle",
            g(4, &[(0, 1, P), (1, 2, P), (2, 3, M), (3, 0, P)]),
            g(2, &[(0, 1, M), (0, 1, M), (0, 1, P), (0, 1, M)]),
        ),
        (
            "triangle with pendant/digon with loop",
            g(4, &[(0, 1, P), (1, 2, P), (2, 0, M), (2, 3, P)]),
            g(2, &[(0, 1, M), (0, 1, M), (0, 1, P), (1, 1, M)]),
        ),
    ]
}

pub fn check_duality() -> Report {
    let mut r = Report::new("plane duality with sign reversal");
    for (name, g, dual) in dual_pairs() {
        r.compare(name, Ok(q_poly(&g)), Ok(q_poly(&dual)));
    }
    r
}

/// Negating every sign, or every word term, sends the bracket through `A -> A^-1`.
pub fn check_mirror(count: usize, seed: u64) -> Report {
    let mut r = Report::new("mirror sends A to A^-1");
    let mut gen = Generator::new(seed);
    for i in 0..count {
        if i % 2 == 0 {
            let g = gen.signed_graph(5, 7);
            let want = kauffman_bracket(&g).map(|b| b.mirror());
            r.compare(format!("{g:?}"), kauffman_bracket(&g.mirror()), want);
        } else {
            let w = gen.word(6, 3);
            let want = bracket_rational(&w).map(|b| b.mirror());
            r.compare(format!("word {w}"), bracket_rational(&w.mirror()), want);
        }
    }
    r
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Small,
    Full,
}

/// Runs every check at the suite's size.
pub fn run_suite(suite: Suite, seed: u64) -> Vec<Report> {
    match suite {
        Suite::Small => vec![
            check_q_routes(3, 3, 30, 6, seed),
            check_w_routes(30, 5, seed),
            check_replacement(20, 3, seed),
            check_polynomial_routes(10, 3, seed),
            check_chain_sheaf(3, 3),
            check_flow_tension(3, 3, &[2, 3]),
            check_transfer(3, &[-2, -1, 1, 2], 10, seed),
            check_twist(-2..=2),
            check_theta(2, 5, seed),
            check_duality(),
            check_mirror(20, seed),
        ],
        Suite::Full => vec![
            check_q_routes(4, 4, 200, 8, seed),
            check_w_routes(200, 6, seed),
            check_replacement(200, 4, seed),
            check_polynomial_routes(100, 4, seed),
            check_chain_sheaf(4, 5),
            check_flow_tension(4, 5, &[2, 3, 4, 5]),
            check_transfer(7, &[-2, -1, 1, 2], 50, seed),
            check_twist(-3..=3),
            check_theta(3, 20, seed),
            check_duality(),
            check_mirror(100, seed),
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape_corpus_counts() {
        // one vertex: multisets of size <= 2 from one pair
        assert_eq!(all_shapes(1, 2).len(), 3);
        // two vertices, three pairs, size <= 1: empty + 3, plus the one-vertex empty graph
        assert_eq!(all_shapes(2, 1).len(), 1 + 1 + 1 + 3);
    }

    #[test]
    fn words_enumerated() {
        let ws = all_words(2, &[1, -1]);
        assert_eq!(ws.len(), 2 + 4);
        assert_eq!(ws[2].terms(), &[1, 1]);
    }

    #[test]
    fn generator_is_deterministic() {
        let a = Generator::new(7).signed_graph(4, 6);
        let b = Generator::new(7).signed_graph(4, 6);
        assert_eq!(a, b);
        let w = Generator::new(3).word(5, 3);
        assert!(w.terms().iter().all(|&m| m != 0 && m.abs() <= 3));
    }

    #[test]
    fn small_suite_passes() {
        for report in run_suite(Suite::Small, 1) {
            assert!(report.passed(), "{report}");
        }
    }
}
