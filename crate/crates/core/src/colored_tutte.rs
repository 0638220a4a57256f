//! The W-polynomial of colored graphs, computed three independent ways.
//!
//! [`w_recursive`] is the primary evaluator; [`w_state_sum`] (sum over all
//! spanning subgraphs) and [`w_forest_expansion`] (sum over spanning forests
//! weighted by edge activities) serve as oracles for it.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::multigraph::minor::Minor;
use crate::multigraph::{ColoredGraph, Graph};
use crate::polyring::{MultiPoly, VAR_T, VAR_Z1, VAR_Z2};

/// Color name → `(x, y)` weight pair.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ColorWeights(BTreeMap<String, (MultiPoly, MultiPoly)>);

impl ColorWeights {
    pub fn new() -> Self {
        ColorWeights(BTreeMap::new())
    }

    pub fn insert(&mut self, color: impl Into<String>, x: MultiPoly, y: MultiPoly) {
        self.0.insert(color.into(), (x, y));
    }

    pub fn with(mut self, color: impl Into<String>, x: MultiPoly, y: MultiPoly) -> Self {
        self.insert(color, x, y);
        self
    }

    pub fn get(&self, color: &str) -> Result<&(MultiPoly, MultiPoly)> {
        self.0
            .get(color)
            .ok_or_else(|| Error::UnregisteredColor(color.to_string()))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &(MultiPoly, MultiPoly))> {
        self.0.iter()
    }

    /// Symbolic weights `x_c`, `y_c` for each listed color.
    pub fn symbolic<'a>(colors: impl IntoIterator<Item = &'a str>) -> Self {
        let mut cw = ColorWeights::new();
        for c in colors {
            cw.insert(
                c,
                MultiPoly::var_named(&format!("x_{c}")),
                MultiPoly::var_named(&format!("y_{c}")),
            );
        }
        cw
    }
}

/// The three evaluation variables of `W(G)(t, z1, z2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WParams {
    pub t: MultiPoly,
    pub z1: MultiPoly,
    pub z2: MultiPoly,
}

impl WParams {
    pub fn symbolic() -> Self {
        WParams {
            t: MultiPoly::var(VAR_T),
            z1: MultiPoly::var(VAR_Z1),
            z2: MultiPoly::var(VAR_Z2),
        }
    }

    /// `t = z1 = z2 = value`.
    pub fn diagonal(value: MultiPoly) -> Self {
        WParams {
            t: value.clone(),
            z1: value.clone(),
            z2: value,
        }
    }
}

/// Weights resolved per color index, plus the per-edge color index in id order.
struct Resolved {
    x: Vec<MultiPoly>,
    y: Vec<MultiPoly>,
}

fn resolve(g: &ColoredGraph, cw: &ColorWeights) -> Result<(Resolved, HashMap<String, u32>)> {
    let mut index = HashMap::new();
    let mut r = Resolved {
        x: Vec::new(),
        y: Vec::new(),
    };
    for e in g.edges() {
        if index.contains_key(&e.attr.0) {
            continue;
        }
        let (x, y) = cw.get(&e.attr.0)?;
        index.insert(e.attr.0.clone(), r.x.len() as u32);
        r.x.push(x.clone());
        r.y.push(y.clone());
    }
    Ok((r, index))
}

/// `t^(n-1)`, tolerating a non-unit `t` only for nonnegative exponents.
fn t_power(t: &MultiPoly, n: u32) -> Result<MultiPoly> {
    t.pow(n as i64 - 1)
}

/// W by deletion-contraction, clearing loops and bridges before the smallest-id edge.
pub fn w_recursive(g: &ColoredGraph, cw: &ColorWeights, params: &WParams) -> Result<MultiPoly> {
    w_recursive_with(g, cw, params, true)
}

/// As [`w_recursive`]; with `bridges_first = false` the bridge rule is only
/// used when the smallest-id edge happens to be a bridge.
pub fn w_recursive_with(g: &ColoredGraph, cw: &ColorWeights, params: &WParams, bridges_first: bool) -> Result<MultiPoly> {
    let (weights, index) = resolve(g, cw)?;
    let minor = Minor::from_graph(g, |e| index[&e.attr.0]);
    let mut ctx = WRec {
        w: &weights,
        p: params,
        loop_factor: (0..weights.x.len())
            .map(|c| &(&weights.x[c] * &params.z2) + &weights.y[c])
            .collect(),
        bridge_factor: (0..weights.x.len())
            .map(|c| &weights.x[c] + &(&params.z1 * &weights.y[c]))
            .collect(),
        bridges_first,
        memo: HashMap::new(),
    };
    ctx.eval(&minor)
}

struct WRec<'a> {
    w: &'a Resolved,
    p: &'a WParams,
    loop_factor: Vec<MultiPoly>,
    bridge_factor: Vec<MultiPoly>,
    bridges_first: bool,
    memo: HashMap<Minor<u32>, MultiPoly>,
}

impl WRec<'_> {
    fn eval(&mut self, m: &Minor<u32>) -> Result<MultiPoly> {
        let (rest, loops) = m.strip_loops();
        let mut factor = MultiPoly::one();
        for c in loops {
            factor = &factor * &self.loop_factor[c as usize];
        }
        Ok(&factor * &self.loopless(&rest)?)
    }

    fn loopless(&mut self, m: &Minor<u32>) -> Result<MultiPoly> {
        if m.edges.is_empty() {
            return t_power(&self.p.t, m.n);
        }
        if let Some(v) = self.memo.get(m) {
            return Ok(v.clone());
        }
        let bridge = if self.bridges_first {
            (0..m.edges.len()).find(|&i| m.is_bridge(i))
        } else {
            Some(0).filter(|&i| m.is_bridge(i))
        };
        let value = match bridge {
            Some(i) => {
                let c = m.edges[i].2 as usize;
                let contracted = self.eval(&m.contract(i))?;
                &self.bridge_factor[c] * &contracted
            }
            None => {
                let c = m.edges[0].2 as usize;
                let contracted = self.eval(&m.contract(0))?;
                let deleted = self.eval(&m.delete(0))?;
                &(&self.w.x[c] * &contracted) + &(&self.w.y[c] * &deleted)
            }
        };
        self.memo.insert(m.clone(), value.clone());
        Ok(value)
    }
}

/// Small cache of nonnegative powers.
struct Powers {
    base: MultiPoly,
    cache: Vec<MultiPoly>,
}

impl Powers {
    fn new(base: &MultiPoly) -> Self {
        Powers {
            base: base.clone(),
            cache: vec![MultiPoly::one()],
        }
    }

    fn get(&mut self, n: usize) -> &MultiPoly {
        while self.cache.len() <= n {
            let next = self.cache.last().expect("nonempty") * &self.base;
            self.cache.push(next);
        }
        &self.cache[n]
    }
}

/// W as the subset expansion
/// `t^(k-1) Σ_S Π_{e∈S} x Π_{e∉S} y · z1^(k<S>-k) · z2^(n<S>)`.
pub fn w_state_sum(g: &ColoredGraph, cw: &ColorWeights, params: &WParams, cap: usize) -> Result<MultiPoly> {
    let xs: Vec<&MultiPoly> = g.edges().iter().map(|e| cw.get(&e.attr.0).map(|w| &w.0)).collect::<Result<_>>()?;
    let ys: Vec<&MultiPoly> = g.edges().iter().map(|e| cw.get(&e.attr.0).map(|w| &w.1)).collect::<Result<_>>()?;
    let k = g.component_count();
    let mut z1 = Powers::new(&params.z1);
    let mut z2 = Powers::new(&params.z2);
    let mut total = MultiPoly::zero();
    for s in g.spanning_subgraphs(cap)? {
        let mut term = MultiPoly::one();
        for i in 0..g.edge_count() {
            term = &term * if s.contains(i) { xs[i] } else { ys[i] };
        }
        term = &term * z1.get(s.components - k);
        term = &term * z2.get(s.nullity);
        total = &total + &term;
    }
    Ok(&params.t.pow(k as i64 - 1)? * &total)
}

/// W as the spanning-forest activity expansion, for a given edge order
/// (edge ids, smallest first).
/// Agrees with the other routes for arbitrary `t`, `z1`, `z2`.
pub fn w_forest_expansion(g: &ColoredGraph, cw: &ColorWeights, params: &WParams, order: &[String], cap: usize) -> Result<MultiPoly> {
    let mut ia = Vec::new();
    let mut ea = Vec::new();
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for e in g.edges() {
        let (x, y) = cw.get(&e.attr.0)?;
        ia.push(x + &(&params.z1 * y));
        ea.push(&(x * &params.z2) + y);
        xs.push(x.clone());
        ys.push(y.clone());
    }
    let mut total = MultiPoly::zero();
    for f in g.spanning_forests_with_activities(order, cap)? {
        let mut term = MultiPoly::one();
        for &i in &f.internally_active {
            term = &term * &ia[i];
        }
        for &i in &f.externally_active {
            term = &term * &ea[i];
        }
        for &i in &f.internally_inactive {
            term = &term * &xs[i];
        }
        for &i in &f.externally_inactive {
            term = &term * &ys[i];
        }
        total = &total + &term;
    }
    Ok(&params.t.pow(g.component_count() as i64 - 1)? * &total)
}

/// How two graphs are combined for the product laws.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Join {
    /// `G1 ∪ G2`
    Disjoint,
    /// `G1 · G2`, gluing `G2`'s vertex `at_second` onto `G1`'s vertex `at_first`.
    OnePoint { at_first: usize, at_second: usize },
}

/// W of the combined graph, checked against `t·W(G1)·W(G2)` (disjoint union)
/// or `W(G1)·W(G2)` (one-point union).
pub fn w_product_laws(g1: &ColoredGraph, g2: &ColoredGraph, join: Join, cw: &ColorWeights, params: &WParams) -> Result<MultiPoly> {
    let (combined, expected) = match join {
        Join::Disjoint => (
            g1.disjoint_union(g2, "r.")?,
            &params.t * &(&w_recursive(g1, cw, params)? * &w_recursive(g2, cw, params)?),
        ),
        Join::OnePoint { at_first, at_second } => (
            g1.one_point_union(g2, at_first, at_second, "r.")?,
            &w_recursive(g1, cw, params)? * &w_recursive(g2, cw, params)?,
        ),
    };
    let w = w_recursive(&combined, cw, params)?;
    if w != expected {
        return Err(Error::Internal(format!(
            "product law violated: W = {w}, expected {expected}"
        )));
    }
    Ok(w)
}

/// Convenience for building a colored graph from `(u, v, color)` triples.
pub fn colored(vertices: usize, triples: &[(usize, usize, &str)]) -> Result<ColoredGraph> {
    Graph::from_triples(vertices, triples.iter().map(|&(u, v, c)| (u, v, c.into())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multigraph::DEFAULT_ENUMERATION_CAP as CAP;

    fn weights() -> ColorWeights {
        ColorWeights::symbolic(["r", "s"])
    }

    fn xy(c: &str) -> (MultiPoly, MultiPoly) {
        weights().get(c).unwrap().clone()
    }

    #[test]
    fn empty_graph() {
        let g = ColoredGraph::empty(4);
        let w = w_recursive(&g, &weights(), &WParams::symbolic()).unwrap();
        assert_eq!(w, MultiPoly::monomial(VAR_T, 3));
    }

    #[test]
    fn single_bridge_and_loop() {
        let p = WParams::symbolic();
        let (x, y) = xy("r");
        let bridge = colored(2, &[(0, 1, "r")]).unwrap();
        let want = &x + &(&p.z1 * &y);
        assert_eq!(w_recursive(&bridge, &weights(), &p).unwrap(), want);
        assert_eq!(w_state_sum(&bridge, &weights(), &p, CAP).unwrap(), want);

        let lp = colored(1, &[(0, 0, "r")]).unwrap();
        let want = &(&x * &p.z2) + &y;
        assert_eq!(w_recursive(&lp, &weights(), &p).unwrap(), want);
        assert_eq!(w_state_sum(&lp, &weights(), &p, CAP).unwrap(), want);
        let order = lp.default_order();
        assert_eq!(w_forest_expansion(&lp, &weights(), &p, &order, CAP).unwrap(), want);
    }

    #[test]
    fn tree_forest_expansion() {
        let p = WParams::symbolic();
        let t = colored(3, &[(0, 1, "r"), (1, 2, "s")]).unwrap();
        let (xr, yr) = xy("r");
        let (xs, ys) = xy("s");
        let want = (&xr + &(&p.z1 * &yr)) * (&xs + &(&p.z1 * &ys));
        let order = t.default_order();
        assert_eq!(w_forest_expansion(&t, &weights(), &p, &order, CAP).unwrap(), want);
    }

    #[test]
    fn two_cycle_routes_agree() {
        let p = WParams::symbolic();
        let g = colored(2, &[(0, 1, "r"), (0, 1, "s")]).unwrap();
        let rec = w_recursive(&g, &weights(), &p).unwrap();
        assert_eq!(rec, w_state_sum(&g, &weights(), &p, CAP).unwrap());
        let order = g.default_order();
        assert_eq!(rec, w_forest_expansion(&g, &weights(), &p, &order, CAP).unwrap());
    }

    #[test]
    fn unregistered_color() {
        let g = colored(2, &[(0, 1, "blue")]).unwrap();
        assert_eq!(
            w_recursive(&g, &weights(), &WParams::symbolic()).unwrap_err(),
            Error::UnregisteredColor("blue".into())
        );
    }

    #[test]
    fn product_laws() {
        let p = WParams::symbolic();
        let b1 = colored(2, &[(0, 1, "r")]).unwrap();
        let b2 = colored(2, &[(0, 1, "s")]).unwrap();
        let (xr, yr) = xy("r");
        let (xs, ys) = xy("s");
        let f1 = &xr + &(&p.z1 * &yr);
        let f2 = &xs + &(&p.z1 * &ys);
        let disjoint = w_product_laws(&b1, &b2, Join::Disjoint, &weights(), &p).unwrap();
        assert_eq!(disjoint, &p.t * &(&f1 * &f2));
        let glued = w_product_laws(&b1, &b2, Join::OnePoint { at_first: 1, at_second: 0 }, &weights(), &p).unwrap();
        assert_eq!(glued, &f1 * &f2);
        let e = w_product_laws(&ColoredGraph::empty(2), &ColoredGraph::empty(3), Join::Disjoint, &weights(), &p).unwrap();
        assert_eq!(e, MultiPoly::monomial(VAR_T, 4));
    }

    #[test]
    fn deferred_bridge_rule_agrees() {
        let p = WParams::symbolic();
        let g = colored(4, &[(0, 1, "r"), (1, 2, "s"), (2, 0, "r"), (2, 3, "s"), (3, 3, "r")]).unwrap();
        assert_eq!(
            w_recursive_with(&g, &weights(), &p, true).unwrap(),
            w_recursive_with(&g, &weights(), &p, false).unwrap()
        );
    }

    #[test]
    fn forest_expansion_with_independent_z1() {
        let g = colored(4, &[(0, 1, "r"), (1, 2, "s"), (2, 0, "r"), (2, 3, "s"), (3, 3, "r"), (0, 1, "s")]).unwrap();
        let p = WParams::symbolic();
        let want = w_recursive(&g, &weights(), &p).unwrap();
        let mut order = g.default_order();
        assert_eq!(w_forest_expansion(&g, &weights(), &p, &order, CAP).unwrap(), want);
        order.reverse();
        assert_eq!(w_forest_expansion(&g, &weights(), &p, &order, CAP).unwrap(), want);
    }
}
