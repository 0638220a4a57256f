use std::hash::Hash;

use super::{Edge, Graph, UnionFind};

/// Compact working copy of a graph for deletion-contraction recursions.
///
/// Edges keep their relative order; vertices are relabelled by first
/// appearance after every step, so two minors reached by different branch
/// sequences compare equal exactly when they are the same labelled graph up
/// to that relabelling. That makes a `Minor` usable as a memo key without any
/// risk of merging distinct subproblems.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) struct Minor<T> {
    pub n: u32,
    pub edges: Vec<(u32, u32, T)>,
}

impl<T: Clone + Eq + Hash> Minor<T> {
    /// Edges ordered by id.
    pub fn from_graph<U: Clone>(g: &Graph<U>, mut attr: impl FnMut(&Edge<U>) -> T) -> Self {
        let edges = g
            .id_order()
            .into_iter()
            .map(|i| {
                let e = &g.edges()[i];
                (e.u as u32, e.v as u32, attr(e))
            })
            .collect();
        Minor {
            n: g.vertex_count() as u32,
            edges,
        }
        .normalized()
    }

    pub fn is_loop(&self, i: usize) -> bool {
        self.edges[i].0 == self.edges[i].1
    }

    /// For a non-loop edge: does removing it disconnect its ends?
    pub fn is_bridge(&self, i: usize) -> bool {
        let mut uf = UnionFind::new(self.n as usize);
        for (j, &(u, v, _)) in self.edges.iter().enumerate() {
            if j != i {
                uf.union(u as usize, v as usize);
            }
        }
        let (u, v, _) = self.edges[i];
        uf.find(u as usize) != uf.find(v as usize)
    }

    pub fn delete(&self, i: usize) -> Self {
        let mut edges = self.edges.clone();
        edges.remove(i);
        Minor { n: self.n, edges }.normalized()
    }

    pub fn contract(&self, i: usize) -> Self {
        let (u, v, _) = self.edges[i];
        if u == v {
            return self.delete(i);
        }
        let (keep, gone) = (u.min(v), u.max(v));
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, (a, b, t))| {
                let f = |x: u32| if x == gone { keep } else { x };
                (f(*a), f(*b), t.clone())
            })
            .collect();
        Minor { n: self.n, edges }.normalized_dropping(gone)
    }

    /// Splits off every loop, returning the loopless remainder and the loop attributes.
    pub fn strip_loops(&self) -> (Self, Vec<T>) {
        let mut loops = Vec::new();
        let mut rest = Vec::with_capacity(self.edges.len());
        for e in &self.edges {
            if e.0 == e.1 {
                loops.push(e.2.clone());
            } else {
                rest.push(e.clone());
            }
        }
        if loops.is_empty() {
            return (self.clone(), loops);
        }
        (Minor { n: self.n, edges: rest }.normalized(), loops)
    }

    fn normalized(self) -> Self {
        self.relabel(None)
    }

    fn normalized_dropping(self, gone: u32) -> Self {
        self.relabel(Some(gone))
    }

    fn relabel(self, dropped: Option<u32>) -> Self {
        let n = self.n as usize;
        let mut map = vec![u32::MAX; n];
        let mut next = 0u32;
        let mut edges = self.edges;
        for e in edges.iter_mut() {
            for x in [&mut e.0, &mut e.1] {
                let slot = &mut map[*x as usize];
                if *slot == u32::MAX {
                    *slot = next;
                    next += 1;
                }
                *x = *slot;
            }
        }
        let new_n = match dropped {
            Some(_) => self.n - 1,
            None => self.n,
        };
        Minor { n: new_n, edges }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multigraph::Sign;

    #[test]
    fn relabel_merges_equivalent_minors() {
        let g: Graph<Sign> = Graph::from_triples(3, [(0, 1, Sign::Plus), (1, 2, Sign::Plus), (0, 2, Sign::Plus)]).unwrap();
        let m = Minor::from_graph(&g, |e| e.attr);
        // contracting e1 then e2 versus contracting e2 then e1 leaves the same loop
        let a = m.contract(0).contract(0);
        let b = m.contract(1).contract(0);
        assert_eq!(a, b);
        assert_eq!(a.n, 1);
        assert!(a.is_loop(0));
    }

    #[test]
    fn bridges_and_loops() {
        let g: Graph<Sign> = Graph::from_triples(3, [(0, 1, Sign::Plus), (1, 1, Sign::Minus), (1, 2, Sign::Plus), (1, 2, Sign::Plus)]).unwrap();
        let m = Minor::from_graph(&g, |e| e.attr);
        assert!(m.is_bridge(0));
        assert!(m.is_loop(1));
        assert!(!m.is_bridge(2));
        let (rest, loops) = m.strip_loops();
        assert_eq!(loops, vec![Sign::Minus]);
        assert_eq!(rest.edges.len(), 3);
    }
}
