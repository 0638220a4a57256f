//! Multigraphs with loops and parallel edges.
//!
//! A [`Graph`] is an immutable value: [`Graph::delete`] and [`Graph::contract`]
//! return new graphs. The edge attribute is a type parameter.

mod enumerate;
pub(crate) mod minor;

use std::collections::HashSet;
use std::fmt;

pub use enumerate::{ForestActivity, SpanningSubgraphs, SubgraphReport, DEFAULT_ENUMERATION_CAP};

use crate::error::{Error, Result};

/// Edge sign; `+` is identified with `+1`, `-` with `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    /// Sign of a nonzero integer.
    pub fn of(n: i32) -> Sign {
        if n < 0 {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Opaque color name; weights are bound at evaluation time.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Color(pub String);

/// Edge label, used as a polynomial variable by the chain and sheaf polynomials.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label(pub String);

impl From<&str> for Color {
    fn from(s: &str) -> Self {
        Color(s.to_string())
    }
}

impl From<&str> for Label {
    fn from(s: &str) -> Self {
        Label(s.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge<T> {
    pub id: String,
    pub u: usize,
    pub v: usize,
    pub attr: T,
}

impl<T> Edge<T> {
    pub fn new(id: impl Into<String>, u: usize, v: usize, attr: T) -> Self {
        Edge {
            id: id.into(),
            u,
            v,
            attr,
        }
    }

    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeKind {
    Loop,
    Bridge,
    Ordinary,
}

/// Multigraph on vertices `0..vertices`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph<T> {
    vertices: usize,
    edges: Vec<Edge<T>>,
}

pub type SignedGraph = Graph<Sign>;
pub type ColoredGraph = Graph<Color>;
pub type LabeledGraph = Graph<Label>;

impl<T: Clone> Graph<T> {
    pub fn new(vertices: usize, edges: Vec<Edge<T>>) -> Result<Self> {
        let mut seen = HashSet::new();
        for e in &edges {
            if !seen.insert(e.id.as_str()) {
                return Err(Error::DuplicateEdge(e.id.clone()));
            }
            for x in [e.u, e.v] {
                if x >= vertices {
                    return Err(Error::EndpointOutOfRange {
                        edge: e.id.clone(),
                        vertex: x,
                        vertices,
                    });
                }
            }
        }
        Ok(Graph { vertices, edges })
    }

    /// `E_n`: `n` vertices, no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            vertices: n,
            edges: Vec::new(),
        }
    }

    /// Build from `(u, v, attr)` triples, naming edges `e1, e2, ...`.
    pub fn from_triples(vertices: usize, triples: impl IntoIterator<Item = (usize, usize, T)>) -> Result<Self> {
        let edges = triples
            .into_iter()
            .enumerate()
            .map(|(i, (u, v, a))| Edge::new(format!("e{}", i + 1), u, v, a))
            .collect();
        Graph::new(vertices, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge<T>] {
        &self.edges
    }

    pub fn edge(&self, id: &str) -> Result<&Edge<T>> {
        self.position(id).map(|i| &self.edges[i])
    }

    pub(crate) fn position(&self, id: &str) -> Result<usize> {
        self.edges
            .iter()
            .position(|e| e.id == id)
            .ok_or_else(|| Error::UnknownEdge(id.to_string()))
    }

    /// Edge indices sorted by id; the default processing order of every recursion.
    pub fn id_order(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.edges.len()).collect();
        idx.sort_by(|&a, &b| self.edges[a].id.cmp(&self.edges[b].id));
        idx
    }

    pub fn map_attr<U: Clone>(&self, mut f: impl FnMut(&Edge<T>) -> U) -> Graph<U> {
        Graph {
            vertices: self.vertices,
            edges: self
                .edges
                .iter()
                .map(|e| Edge::new(e.id.clone(), e.u, e.v, f(e)))
                .collect(),
        }
    }

    pub fn classify_edge(&self, id: &str) -> Result<EdgeKind> {
        let i = self.position(id)?;
        Ok(self.classify_index(i))
    }

    pub(crate) fn classify_index(&self, i: usize) -> EdgeKind {
        let e = &self.edges[i];
        if e.is_loop() {
            EdgeKind::Loop
        } else if self.connected_without(e.u, e.v, i) {
            EdgeKind::Ordinary
        } else {
            EdgeKind::Bridge
        }
    }

    fn connected_without(&self, from: usize, to: usize, skip: usize) -> bool {
        let mut uf = UnionFind::new(self.vertices);
        for (j, e) in self.edges.iter().enumerate() {
            if j != skip {
                uf.union(e.u, e.v);
            }
        }
        uf.find(from) == uf.find(to)
    }

    /// `G - e`: drop the edge, keep every vertex.
    pub fn delete(&self, id: &str) -> Result<Self> {
        let i = self.position(id)?;
        let mut edges = self.edges.clone();
        edges.remove(i);
        Ok(Graph {
            vertices: self.vertices,
            edges,
        })
    }

    /// `G / e`: identify the ends of `e` and drop it. The larger endpoint is
    /// merged into the smaller and higher vertices shift down by one, so
    /// numbering stays order-preserving. Contracting a loop deletes it.
    pub fn contract(&self, id: &str) -> Result<Self> {
        let i = self.position(id)?;
        let e = &self.edges[i];
        if e.is_loop() {
            return self.delete(id);
        }
        let (keep, gone) = (e.u.min(e.v), e.u.max(e.v));
        let relabel = |x: usize| match x.cmp(&gone) {
            std::cmp::Ordering::Less => x,
            std::cmp::Ordering::Equal => keep,
            std::cmp::Ordering::Greater => x - 1,
        };
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, f)| Edge::new(f.id.clone(), relabel(f.u), relabel(f.v), f.attr.clone()))
            .collect();
        Ok(Graph {
            vertices: self.vertices - 1,
            edges,
        })
    }

    /// `(k, n)`: component count and nullity `|E| - |V| + k`.
    pub fn components_nullity(&self) -> (usize, usize) {
        let k = self.component_count();
        (k, self.edges.len() + k - self.vertices)
    }

    pub fn component_count(&self) -> usize {
        let mut uf = UnionFind::new(self.vertices);
        for e in &self.edges {
            uf.union(e.u, e.v);
        }
        uf.count()
    }

    /// `G1 ∪ G2`; the second graph's vertices and edge ids are shifted/prefixed.
    pub fn disjoint_union(&self, other: &Graph<T>, prefix: &str) -> Result<Self> {
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|e| {
            Edge::new(
                format!("{prefix}{}", e.id),
                e.u + self.vertices,
                e.v + self.vertices,
                e.attr.clone(),
            )
        }));
        Graph::new(self.vertices + other.vertices, edges)
    }

    /// `G1 · G2`: glue vertex `at_other` of `other` onto vertex `at_self`.
    pub fn one_point_union(&self, other: &Graph<T>, at_self: usize, at_other: usize, prefix: &str) -> Result<Self> {
        if at_self >= self.vertices || at_other >= other.vertices {
            return Err(Error::invalid("one_point_union", "gluing vertex out of range"));
        }
        let map = |x: usize| {
            use std::cmp::Ordering::*;
            match x.cmp(&at_other) {
                Equal => at_self,
                Less => self.vertices + x,
                Greater => self.vertices + x - 1,
            }
        };
        let mut edges = self.edges.clone();
        edges.extend(
            other
                .edges
                .iter()
                .map(|e| Edge::new(format!("{prefix}{}", e.id), map(e.u), map(e.v), e.attr.clone())),
        );
        Graph::new(self.vertices + other.vertices - 1, edges)
    }
}

impl SignedGraph {
    /// Every sign flipped.
    pub fn mirror(&self) -> SignedGraph {
        self.map_attr(|e| e.attr.flip())
    }
}

/// Plain union-find with path halving.
#[derive(Debug, Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    sets: usize,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            sets: n,
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true if two different sets were merged.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        self.sets -= 1;
        true
    }

    pub(crate) fn count(&self) -> usize {
        self.sets
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn signed(n: usize, es: &[(usize, usize)]) -> SignedGraph {
        Graph::from_triples(n, es.iter().map(|&(u, v)| (u, v, Sign::Plus))).unwrap()
    }

    #[test]
    fn classify() {
        let bridge = signed(2, &[(0, 1)]);
        assert_eq!(bridge.classify_edge("e1").unwrap(), EdgeKind::Bridge);
        let lp = signed(1, &[(0, 0)]);
        assert_eq!(lp.classify_edge("e1").unwrap(), EdgeKind::Loop);
        let c2 = signed(2, &[(0, 1), (0, 1)]);
        assert_eq!(c2.classify_edge("e1").unwrap(), EdgeKind::Ordinary);
        assert_eq!(c2.classify_edge("e2").unwrap(), EdgeKind::Ordinary);
        assert_eq!(
            c2.classify_edge("nope").unwrap_err(),
            Error::UnknownEdge("nope".into())
        );
    }

    #[test]
    fn delete_and_contract() {
        let p3 = signed(3, &[(0, 1), (1, 2)]);
        let c = p3.contract("e1").unwrap();
        assert_eq!(c.vertex_count(), 2);
        assert_eq!(c.edges()[0].id, "e2");
        assert_eq!((c.edges()[0].u, c.edges()[0].v), (0, 1));

        let c2 = signed(2, &[(0, 1), (0, 1)]);
        let one_loop = c2.contract("e1").unwrap();
        assert_eq!(one_loop.vertex_count(), 1);
        assert!(one_loop.edges()[0].is_loop());

        let lp = signed(2, &[(0, 0), (0, 1)]);
        assert_eq!(lp.contract("e1").unwrap(), lp.delete("e1").unwrap());
        assert_eq!(lp.delete("e2").unwrap().vertex_count(), 2);
    }

    #[test]
    fn components() {
        assert_eq!(SignedGraph::empty(5).components_nullity(), (5, 0));
        assert_eq!(signed(1, &[(0, 0)]).components_nullity(), (1, 1));
        assert_eq!(signed(2, &[(0, 1), (0, 1)]).components_nullity(), (1, 1));
    }

    #[test]
    fn validation() {
        let dup = Graph::new(2, vec![Edge::new("a", 0, 1, Sign::Plus), Edge::new("a", 0, 1, Sign::Plus)]);
        assert_eq!(dup.unwrap_err(), Error::DuplicateEdge("a".into()));
        let oob = Graph::new(2, vec![Edge::new("a", 0, 2, Sign::Plus)]);
        assert!(matches!(oob, Err(Error::EndpointOutOfRange { vertex: 2, .. })));
    }

    #[test]
    fn unions() {
        let e = signed(2, &[(0, 1)]);
        let du = e.disjoint_union(&e, "r").unwrap();
        assert_eq!(du.components_nullity(), (2, 0));
        let p3 = e.one_point_union(&e, 1, 0, "r").unwrap();
        assert_eq!(p3.vertex_count(), 3);
        assert_eq!(p3.components_nullity(), (1, 0));
    }

    #[test]
    fn delete_contract_commute_on_disjoint_pairs() {
        let g = signed(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 1)]);
        let ids: Vec<String> = g.edges().iter().map(|e| e.id.clone()).collect();
        for a in &ids {
            for b in &ids {
                if a == b {
                    continue;
                }
                let dc = g.delete(a).unwrap().contract(b).unwrap();
                let cd = g.contract(b).unwrap().delete(a).unwrap();
                assert_eq!(dc, cd);
                let cc1 = g.contract(a).unwrap().contract(b).unwrap();
                let cc2 = g.contract(b).unwrap().contract(a).unwrap();
                assert_eq!(cc1.components_nullity(), cc2.components_nullity());
                assert_eq!(cc1.vertex_count(), cc2.vertex_count());
            }
        }
    }
}
