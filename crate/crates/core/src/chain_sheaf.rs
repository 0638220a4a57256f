//! Chain and sheaf polynomials of edge-labelled graphs, together with the flow
//! and tension polynomials their defining sums are built from.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::multigraph::minor::Minor;
use crate::multigraph::{Graph, LabeledGraph};
use crate::polyring::{MultiPoly, VarRegistry, RESERVED, VAR_Q, VAR_W};

pub(crate) fn valid_label(name: &str) -> bool {
    let mut chars = name.chars();
    let head_ok = chars
        .next()
        .is_some_and(|c| c.is_ascii_alphabetic() || c == '_');
    head_ok
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && !RESERVED.contains(&name)
}

/// Registers each edge label and returns the minor with variable indices as attributes.
fn label_minor(g: &LabeledGraph) -> Result<Minor<u32>> {
    for e in g.edges() {
        if !valid_label(&e.attr.0) {
            return Err(Error::InvalidLabel(e.attr.0.clone()));
        }
    }
    let reg = VarRegistry::global();
    Ok(Minor::from_graph(g, |e| reg.register(&e.attr.0) as u32))
}

fn one_minus_w() -> MultiPoly {
    MultiPoly::one() - MultiPoly::var(VAR_W)
}

/// `Ch[G]`: loops give `(a - w)`, other edges `(a - 1) Ch[G - a] + Ch[G / a]`.
pub fn ch_poly(g: &LabeledGraph) -> Result<MultiPoly> {
    let m = label_minor(g)?;
    let mut memo = HashMap::new();
    Ok(ch_rec(&m, &MultiPoly::var(VAR_W), &mut memo))
}

fn ch_rec(m: &Minor<u32>, w: &MultiPoly, memo: &mut HashMap<Minor<u32>, MultiPoly>) -> MultiPoly {
    let (rest, loops) = m.strip_loops();
    let mut factor = MultiPoly::one();
    for a in loops {
        factor = &factor * &(&MultiPoly::var(a as usize) - w);
    }
    if rest.edges.is_empty() {
        return factor;
    }
    if let Some(v) = memo.get(&rest) {
        return &factor * v;
    }
    let a = MultiPoly::var(rest.edges[0].2 as usize);
    let deleted = ch_rec(&rest.delete(0), w, memo);
    let contracted = ch_rec(&rest.contract(0), w, memo);
    let value = &(&(&a - &MultiPoly::one()) * &deleted) + &contracted;
    memo.insert(rest, value.clone());
    &factor * &value
}

/// `Sh[G]`: bridges give `(a - w) Sh[G / a]`, other edges
/// `(a - 1) Sh[G / a] + Sh[G - a]` (a loop contracts to its deletion).
pub fn sh_poly(g: &LabeledGraph) -> Result<MultiPoly> {
    let m = label_minor(g)?;
    let mut memo = HashMap::new();
    Ok(sh_rec(&m, &MultiPoly::var(VAR_W), &mut memo))
}

fn sh_rec(m: &Minor<u32>, w: &MultiPoly, memo: &mut HashMap<Minor<u32>, MultiPoly>) -> MultiPoly {
    if m.edges.is_empty() {
        return MultiPoly::one();
    }
    if let Some(v) = memo.get(m) {
        return v.clone();
    }
    let a = MultiPoly::var(m.edges[0].2 as usize);
    let value = if m.is_loop(0) {
        &a * &sh_rec(&m.delete(0), w, memo)
    } else if m.is_bridge(0) {
        &(&a - w) * &sh_rec(&m.contract(0), w, memo)
    } else {
        let contracted = sh_rec(&m.contract(0), w, memo);
        let deleted = sh_rec(&m.delete(0), w, memo);
        &(&(&a - &MultiPoly::one()) * &contracted) + &deleted
    };
    memo.insert(m.clone(), value.clone());
    value
}

/// Flow polynomial in `q`: `F(E_n) = 1`, bridge gives 0, loop `(q - 1) F(G - e)`,
/// otherwise `F(G / e) - F(G - e)`.
pub fn flow_poly<T: Clone>(g: &Graph<T>) -> MultiPoly {
    let m = Minor::from_graph(g, |_| ());
    let mut memo = HashMap::new();
    flow_rec(&m, &mut memo)
}

fn flow_rec(m: &Minor<()>, memo: &mut HashMap<Minor<()>, MultiPoly>) -> MultiPoly {
    let (rest, loops) = m.strip_loops();
    let q1 = MultiPoly::var(VAR_Q) - MultiPoly::one();
    let factor = q1.pow(loops.len() as i64).expect("nonnegative");
    if rest.edges.is_empty() {
        return factor;
    }
    if let Some(v) = memo.get(&rest) {
        return &factor * v;
    }
    let value = if rest.is_bridge(0) {
        MultiPoly::zero()
    } else {
        &flow_rec(&rest.contract(0), memo) - &flow_rec(&rest.delete(0), memo)
    };
    memo.insert(rest, value.clone());
    &factor * &value
}

/// Chromatic polynomial in `q` by deletion-contraction.
pub fn chromatic_poly<T: Clone>(g: &Graph<T>) -> MultiPoly {
    let m = Minor::from_graph(g, |_| ());
    let mut memo = HashMap::new();
    chromatic_rec(&m, &mut memo)
}

fn chromatic_rec(m: &Minor<()>, memo: &mut HashMap<Minor<()>, MultiPoly>) -> MultiPoly {
    if m.edges.iter().any(|e| e.0 == e.1) {
        return MultiPoly::zero();
    }
    if m.edges.is_empty() {
        return MultiPoly::monomial(VAR_Q, m.n as i32);
    }
    if let Some(v) = memo.get(m) {
        return v.clone();
    }
    let value = &chromatic_rec(&m.delete(0), memo) - &chromatic_rec(&m.contract(0), memo);
    memo.insert(m.clone(), value.clone());
    value
}

/// Tension polynomial: the chromatic polynomial divided by `q^k(G)`.
pub fn tension_poly<T: Clone>(g: &Graph<T>) -> Result<MultiPoly> {
    let k = g.component_count();
    chromatic_poly(g).exact_div(&MultiPoly::monomial(VAR_Q, k as i32))
}

/// Number of nowhere-zero `Z_q` flows, by enumerating all `(q-1)^|E|` nonzero assignments.
pub fn count_nowhere_zero_flows<T: Clone>(g: &Graph<T>, q: u32) -> u64 {
    let m = g.edge_count();
    if q < 2 {
        return u64::from(m == 0);
    }
    let mut values = vec![1u32; m];
    let mut count = 0;
    loop {
        let mut balance = vec![0i64; g.vertex_count()];
        for (e, &f) in g.edges().iter().zip(&values) {
            balance[e.u] -= f as i64;
            balance[e.v] += f as i64;
        }
        if balance.iter().all(|b| b.rem_euclid(q as i64) == 0) {
            count += 1;
        }
        // odometer over 1..q-1
        let mut i = 0;
        loop {
            if i == m {
                return count;
            }
            values[i] += 1;
            if values[i] < q {
                break;
            }
            values[i] = 1;
            i += 1;
        }
    }
}

/// Number of nowhere-zero `Z_q` tensions, counting distinct edge maps induced
/// by all potentials `V -> Z_q`.
pub fn count_nowhere_zero_tensions<T: Clone>(g: &Graph<T>, q: u32) -> u64 {
    let n = g.vertex_count();
    if q == 0 {
        return 0;
    }
    let mut potential = vec![0u32; n];
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    loop {
        let tension: Vec<u32> = g
            .edges()
            .iter()
            .map(|e| (potential[e.u] + q - potential[e.v]) % q)
            .collect();
        if tension.iter().all(|&t| t != 0) {
            seen.insert(tension);
        }
        let mut i = 0;
        loop {
            if i == n {
                return seen.len() as u64;
            }
            potential[i] += 1;
            if potential[i] < q {
                break;
            }
            potential[i] = 0;
            i += 1;
        }
    }
}

fn label_product(g: &LabeledGraph, mask: u64) -> MultiPoly {
    g.edges()
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, e)| MultiPoly::var_named(&e.attr.0))
        .product()
}

fn at_one_minus_w(p: &MultiPoly) -> Result<MultiPoly> {
    let mut bind = HashMap::new();
    bind.insert(VAR_Q, one_minus_w());
    p.substitute(&bind)
}

/// `Ch[G] = Σ_Y F[G - Y](1 - w) ε(Y)` over all edge subsets `Y`.
pub fn ch_from_definition(g: &LabeledGraph, cap: usize) -> Result<MultiPoly> {
    label_minor(g)?;
    let mut total = MultiPoly::zero();
    for s in g.spanning_subgraphs(cap)? {
        let mut rest = g.clone();
        for id in s.edge_ids(g) {
            rest = rest.delete(id)?;
        }
        let f = at_one_minus_w(&flow_poly(&rest))?;
        total = &total + &(&f * &label_product(g, s.mask));
    }
    Ok(total)
}

/// `Sh[G] = Σ_Y T[G / Y](1 - w) ε(Y)` over all edge subsets `Y`.
pub fn sh_from_definition(g: &LabeledGraph, cap: usize) -> Result<MultiPoly> {
    label_minor(g)?;
    let mut total = MultiPoly::zero();
    for s in g.spanning_subgraphs(cap)? {
        let mut rest = g.clone();
        for id in s.edge_ids(g) {
            rest = rest.contract(id)?;
        }
        let t = at_one_minus_w(&tension_poly(&rest)?)?;
        total = &total + &(&t * &label_product(g, s.mask));
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multigraph::{Label, DEFAULT_ENUMERATION_CAP as CAP};

    fn labeled(n: usize, es: &[(usize, usize, &str)]) -> LabeledGraph {
        Graph::from_triples(n, es.iter().map(|&(u, v, l)| (u, v, Label::from(l)))).unwrap()
    }

    fn p(s: &str) -> MultiPoly {
        MultiPoly::parse(s).unwrap()
    }

    #[test]
    fn chain_examples() {
        assert_eq!(ch_poly(&LabeledGraph::empty(3)).unwrap(), MultiPoly::one());
        assert_eq!(ch_poly(&labeled(1, &[(0, 0, "a")])).unwrap(), p("a - w"));
        assert_eq!(ch_poly(&labeled(2, &[(0, 1, "a"), (0, 1, "b")])).unwrap(), p("a*b - w"));
    }

    #[test]
    fn sheaf_examples() {
        assert_eq!(sh_poly(&labeled(2, &[(0, 1, "a")])).unwrap(), p("a - w"));
        assert_eq!(sh_poly(&labeled(1, &[(0, 0, "a")])).unwrap(), p("a"));
        assert_eq!(sh_poly(&labeled(2, &[(0, 1, "a"), (0, 1, "b")])).unwrap(), p("a*b - w"));
    }

    #[test]
    fn flow_and_tension_examples() {
        let bridge = labeled(2, &[(0, 1, "a")]);
        let lp = labeled(1, &[(0, 0, "a")]);
        let c2 = labeled(2, &[(0, 1, "a"), (0, 1, "b")]);
        assert!(flow_poly(&bridge).is_zero());
        assert_eq!(flow_poly(&lp), p("q - 1"));
        assert_eq!(flow_poly(&c2), p("q - 1"));
        assert!(tension_poly(&lp).unwrap().is_zero());
        assert_eq!(tension_poly(&bridge).unwrap(), p("q - 1"));
        assert_eq!(tension_poly(&c2).unwrap(), p("q - 1"));
        for q in 2..=5u32 {
            assert_eq!(count_nowhere_zero_flows(&c2, q), (q - 1) as u64);
            assert_eq!(count_nowhere_zero_tensions(&c2, q), (q - 1) as u64);
            assert_eq!(count_nowhere_zero_flows(&bridge, q), 0);
            assert_eq!(count_nowhere_zero_tensions(&lp, q), 0);
        }
    }

    #[test]
    fn definitions_match_recursions() {
        assert_eq!(ch_from_definition(&LabeledGraph::empty(2), CAP).unwrap(), MultiPoly::one());
        let lp = labeled(1, &[(0, 0, "a")]);
        assert_eq!(ch_from_definition(&lp, CAP).unwrap(), p("a - w"));
        let g = labeled(3, &[(0, 1, "a"), (1, 2, "b"), (2, 0, "c"), (0, 0, "e"), (1, 2, "f")]);
        assert_eq!(ch_from_definition(&g, CAP).unwrap(), ch_poly(&g).unwrap());
        assert_eq!(sh_from_definition(&g, CAP).unwrap(), sh_poly(&g).unwrap());
    }

    #[test]
    fn reserved_labels_rejected() {
        let g = labeled(2, &[(0, 1, "d")]);
        assert_eq!(ch_poly(&g).unwrap_err(), Error::InvalidLabel("d".into()));
        let g = labeled(2, &[(0, 1, "1x")]);
        assert!(sh_poly(&g).is_err());
    }
}
