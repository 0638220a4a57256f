use std::collections::VecDeque;

use super::{Graph, UnionFind};
use crate::error::{Error, Result};

/// Largest edge count the subset enumerators accept unless told otherwise.
pub const DEFAULT_ENUMERATION_CAP: usize = 20;

/// One spanning subgraph `<S>` with its component count and nullity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubgraphReport {
    /// Bit `i` set iff edge `i` (in storage order) is in `S`.
    pub mask: u64,
    pub size: usize,
    pub components: usize,
    pub nullity: usize,
}

impl SubgraphReport {
    pub fn contains(&self, edge: usize) -> bool {
        self.mask >> edge & 1 == 1
    }

    pub fn edge_ids<'g, T: Clone>(&self, g: &'g Graph<T>) -> Vec<&'g str> {
        g.edges()
            .iter()
            .enumerate()
            .filter(|(i, _)| self.contains(*i))
            .map(|(_, e)| e.id.as_str())
            .collect()
    }
}

/// Iterator over all `2^|E|` spanning subgraphs.
pub struct SpanningSubgraphs<'g, T> {
    graph: &'g Graph<T>,
    next: u64,
    end: u64,
}

impl<T: Clone> Iterator for SpanningSubgraphs<'_, T> {
    type Item = SubgraphReport;

    fn next(&mut self) -> Option<SubgraphReport> {
        if self.next >= self.end {
            return None;
        }
        let mask = self.next;
        self.next += 1;
        let mut uf = UnionFind::new(self.graph.vertex_count());
        let mut size = 0;
        for (i, e) in self.graph.edges().iter().enumerate() {
            if mask >> i & 1 == 1 {
                uf.union(e.u, e.v);
                size += 1;
            }
        }
        let components = uf.count();
        Some(SubgraphReport {
            mask,
            size,
            components,
            nullity: size + components - self.graph.vertex_count(),
        })
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = (self.end - self.next) as usize;
        (n, Some(n))
    }
}

/// A spanning forest with the four activity classes of its edges.
///
/// All fields hold edge indices in storage order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForestActivity {
    pub forest: Vec<usize>,
    pub internally_active: Vec<usize>,
    pub internally_inactive: Vec<usize>,
    pub externally_active: Vec<usize>,
    pub externally_inactive: Vec<usize>,
}

impl<T: Clone> Graph<T> {
    pub fn spanning_subgraphs(&self, cap: usize) -> Result<SpanningSubgraphs<'_, T>> {
        let m = self.edge_count();
        if m > cap || m >= 64 {
            return Err(Error::CapExceeded { edges: m, cap });
        }
        Ok(SpanningSubgraphs {
            graph: self,
            next: 0,
            end: 1u64 << m,
        })
    }

    /// Edge indices ranked by the given id order (position in `order`).
    fn ranks(&self, order: &[String]) -> Result<Vec<usize>> {
        if order.len() != self.edge_count() {
            return Err(Error::invalid(
                "order",
                format!("expected {} edge ids, got {}", self.edge_count(), order.len()),
            ));
        }
        let mut rank = vec![usize::MAX; self.edge_count()];
        for (r, id) in order.iter().enumerate() {
            let i = self.position(id)?;
            if rank[i] != usize::MAX {
                return Err(Error::DuplicateEdge(id.clone()));
            }
            rank[i] = r;
        }
        Ok(rank)
    }

    /// Edge ids in lexicographic order, the default activity order.
    pub fn default_order(&self) -> Vec<String> {
        self.id_order()
            .into_iter()
            .map(|i| self.edges()[i].id.clone())
            .collect()
    }

    /// Every spanning forest (maximal acyclic edge set) with edge activities
    /// relative to `order`, which must list every edge id once, smallest first.
    pub fn spanning_forests_with_activities(&self, order: &[String], cap: usize) -> Result<Vec<ForestActivity>> {
        let rank = self.ranks(order)?;
        let m = self.edge_count();
        if m > cap || m >= 64 {
            return Err(Error::CapExceeded { edges: m, cap });
        }
        let rank_target = self.vertex_count() - self.component_count();
        let mut out = Vec::new();
        for mask in 0u64..(1u64 << m) {
            if mask.count_ones() as usize != rank_target {
                continue;
            }
            let mut uf = UnionFind::new(self.vertex_count());
            let acyclic = (0..m)
                .filter(|i| mask >> i & 1 == 1)
                .all(|i| uf.union(self.edges()[i].u, self.edges()[i].v));
            if acyclic {
                out.push(self.activities(mask, &rank));
            }
        }
        Ok(out)
    }

    fn activities(&self, mask: u64, rank: &[usize]) -> ForestActivity {
        let m = self.edge_count();
        let forest: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 1).collect();
        let mut fa = ForestActivity {
            forest: forest.clone(),
            internally_active: vec![],
            internally_inactive: vec![],
            externally_active: vec![],
            externally_inactive: vec![],
        };
        for &e in &forest {
            // fundamental cut: edges joining the two halves of F - e
            let mut uf = UnionFind::new(self.vertex_count());
            for &f in &forest {
                if f != e {
                    uf.union(self.edges()[f].u, self.edges()[f].v);
                }
            }
            let (ru, rv) = (uf.find(self.edges()[e].u), uf.find(self.edges()[e].v));
            let smallest = (0..m)
                .filter(|&g| {
                    let (a, b) = (uf.find(self.edges()[g].u), uf.find(self.edges()[g].v));
                    (a == ru && b == rv) || (a == rv && b == ru)
                })
                .min_by_key(|&g| rank[g]);
            if smallest == Some(e) {
                fa.internally_active.push(e);
            } else {
                fa.internally_inactive.push(e);
            }
        }
        for e in (0..m).filter(|i| mask >> i & 1 == 0) {
            let edge = &self.edges()[e];
            let active = if edge.is_loop() {
                true
            } else {
                let path = self.forest_path(&forest, edge.u, edge.v);
                path.iter().all(|&f| rank[f] > rank[e])
            };
            if active {
                fa.externally_active.push(e);
            } else {
                fa.externally_inactive.push(e);
            }
        }
        fa
    }

    /// Edge indices on the unique `from`-`to` path inside the forest.
    fn forest_path(&self, forest: &[usize], from: usize, to: usize) -> Vec<usize> {
        let n = self.vertex_count();
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for &f in forest {
            let e = &self.edges()[f];
            adj[e.u].push((e.v, f));
            adj[e.v].push((e.u, f));
        }
        let mut prev: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(x) = queue.pop_front() {
            if x == to {
                break;
            }
            for &(y, f) in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    prev[y] = Some((x, f));
                    queue.push_back(y);
                }
            }
        }
        let mut path = Vec::new();
        let mut cur = to;
        while let Some((p, f)) = prev[cur] {
            path.push(f);
            cur = p;
        }
        path
    }
}

#[cfg(test)]
mod tests {
    use crate::multigraph::{Graph, Sign, SignedGraph};

    fn signed(n: usize, es: &[(usize, usize)]) -> SignedGraph {
        Graph::from_triples(n, es.iter().map(|&(u, v)| (u, v, Sign::Plus))).unwrap()
    }

    #[test]
    fn two_cycle_subgraphs() {
        let g = signed(2, &[(0, 1), (0, 1)]);
        let rows: Vec<(usize, usize)> = g
            .spanning_subgraphs(20)
            .unwrap()
            .map(|r| (r.components, r.nullity))
            .collect();
        assert_eq!(rows, vec![(2, 0), (1, 0), (1, 0), (1, 1)]);
    }

    #[test]
    fn empty_and_bridge_subgraphs() {
        let e = SignedGraph::empty(4);
        let rows: Vec<_> = e.spanning_subgraphs(20).unwrap().collect();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].components, 4);
        let b = signed(2, &[(0, 1)]);
        let rows: Vec<(usize, usize)> = b
            .spanning_subgraphs(20)
            .unwrap()
            .map(|r| (r.components, r.nullity))
            .collect();
        assert_eq!(rows, vec![(2, 0), (1, 0)]);
    }

    #[test]
    fn cap_is_enforced() {
        let g = signed(1, &[(0, 0); 5]);
        assert!(g.spanning_subgraphs(4).is_err());
        assert!(g.spanning_subgraphs(5).is_ok());
    }

    #[test]
    fn two_cycle_forests() {
        let g = signed(2, &[(0, 1), (0, 1)]);
        let fs = g.spanning_forests_with_activities(&g.default_order(), 20).unwrap();
        assert_eq!(fs.len(), 2);
        // F = {e1}: e1 active in cut {e1,e2}; e2 not smallest in cycle {e1,e2}
        assert_eq!(fs[0].forest, vec![0]);
        assert_eq!(fs[0].internally_active, vec![0]);
        assert_eq!(fs[0].externally_inactive, vec![1]);
        // F = {e2}: e2 inactive, e1 externally active
        assert_eq!(fs[1].forest, vec![1]);
        assert_eq!(fs[1].internally_inactive, vec![1]);
        assert_eq!(fs[1].externally_active, vec![0]);
    }

    #[test]
    fn tree_and_loop_forests() {
        let t = signed(4, &[(0, 1), (1, 2), (1, 3)]);
        let fs = t.spanning_forests_with_activities(&t.default_order(), 20).unwrap();
        assert_eq!(fs.len(), 1);
        assert_eq!(fs[0].internally_active, vec![0, 1, 2]);
        let l = signed(1, &[(0, 0)]);
        let fs = l.spanning_forests_with_activities(&l.default_order(), 20).unwrap();
        assert_eq!(fs.len(), 1);
        assert!(fs[0].forest.is_empty());
        assert_eq!(fs[0].externally_active, vec![0]);
    }

    #[test]
    fn adding_an_edge_drops_components_by_at_most_one() {
        let g = signed(4, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 3), (0, 1)]);
        let reports: Vec<_> = g.spanning_subgraphs(20).unwrap().collect();
        for r in &reports {
            for i in 0..g.edge_count() {
                if !r.contains(i) {
                    let bigger = reports[(r.mask | 1 << i) as usize];
                    let drop = r.components - bigger.components;
                    assert!(drop <= 1);
                }
            }
        }
    }
}
