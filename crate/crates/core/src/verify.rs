//! Verification numbers and the lower bounds derived from them.

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::chordal::{max_clique_size, ChordalError};
use crate::graph::{GraphError, MixedGraph, Vertex};
use crate::oracle::{EssentialState, HiddenDag};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("exhaustive search refused: n = {n} exceeds the limit {limit} for k = {k}")]
    TooLarge { n: usize, k: usize, limit: usize },
    #[error("size bound must be at least 1")]
    ZeroBound,
}

/// Arcs `u -> v` of a DAG with `pa(v) = pa(u) + {u}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoveredEdgeForest {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
}

impl CoveredEdgeForest {
    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// The edges as an undirected graph on all `n` vertices.
    pub fn skeleton(&self) -> MixedGraph {
        MixedGraph::undirected(self.n, &self.edges).expect("covered edges are simple")
    }

    pub fn is_forest(&self) -> bool {
        let g = self.skeleton();
        g.edge_count() + g.connected_components().len() == self.n
    }

    /// Minimum vertex cover, computed per tree by peeling leaves: walking a
    /// DFS order backwards, an uncovered edge to the parent is covered by the
    /// parent.
    pub fn min_vertex_cover(&self) -> Vec<Vertex> {
        let g = self.skeleton();
        let n = self.n;
        let mut parent = vec![usize::MAX; n];
        let mut seen = vec![false; n];
        let mut order = Vec::with_capacity(n);
        for root in 0..n {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let mut stack = vec![root];
            while let Some(v) = stack.pop() {
                order.push(v);
                for &w in g.neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        parent[w] = v;
                        stack.push(w);
                    }
                }
            }
        }
        let mut cover = vec![false; n];
        for &v in order.iter().rev() {
            let p = parent[v];
            if p != usize::MAX && !cover[v] && !cover[p] {
                cover[p] = true;
            }
        }
        (0..n).filter(|&v| cover[v]).collect()
    }
}

/// Covered edges of a DAG, sorted.
pub fn covered_edges(dag: &MixedGraph) -> Result<CoveredEdgeForest, GraphError> {
    if !dag.is_dag() {
        return Err(GraphError::NotADag);
    }
    let mut edges = Vec::new();
    for (u, v) in dag.arcs() {
        let mut pu: Vec<Vertex> = dag.parents(u).collect();
        pu.push(u);
        pu.sort_unstable();
        let mut pv: Vec<Vertex> = dag.parents(v).collect();
        pv.sort_unstable();
        if pu == pv {
            edges.push((u, v));
        }
    }
    edges.sort_unstable();
    Ok(CoveredEdgeForest { n: dag.n(), edges })
}

/// The atomic verification number and a minimum verifying set.
pub fn verification_number_atomic(dag: &MixedGraph) -> Result<(usize, Vec<Vertex>), GraphError> {
    let cover = covered_edges(dag)?.min_vertex_cover();
    Ok((cover.len(), cover))
}

/// Sum over chain components of half their largest clique, rounded down.
pub fn clique_sum_lower_bound(state: &EssentialState) -> Result<usize, ChordalError> {
    clique_sum_of(state.graph())
}

/// [`clique_sum_lower_bound`] on a bare chain graph.
pub fn clique_sum_of(g: &MixedGraph) -> Result<usize, ChordalError> {
    let comps = g.chain_components().map_err(|_| ChordalError::HasArcs(g.arc_count()))?;
    let mut total = 0;
    for c in comps.iter().filter(|c| !c.is_singleton()) {
        total += max_clique_size(&c.to_local_graph())? / 2;
    }
    Ok(total)
}

/// Lower bound on the size-`k` verification number from the atomic one.
pub fn bounded_verification_lower_bound(nu1: usize, k: usize) -> usize {
    assert!(k >= 1, "size bound must be at least 1");
    nu1.div_ceil(k)
}

/// Largest `n` accepted by [`brute_force_min_verifying_set`].
pub fn brute_force_limit(k: usize) -> usize {
    if k <= 1 {
        12
    } else {
        7
    }
}

/// Smallest number of interventions of size at most `k` that fully orient
/// the hidden DAG from its observational essential graph, by trying every
/// family of each size in turn.
pub fn brute_force_min_verifying_set(hidden: &HiddenDag, k: usize) -> Result<usize, VerifyError> {
    if k == 0 {
        return Err(VerifyError::ZeroBound);
    }
    let n = hidden.n();
    let limit = brute_force_limit(k);
    if n > limit {
        return Err(VerifyError::TooLarge { n, k, limit });
    }
    let start = hidden.observe_with_bound(k);
    if start.is_fully_oriented() {
        return Ok(0);
    }
    // only vertices with an undirected edge matter
    let relevant: Vec<Vertex> = (0..n).filter(|&v| start.is_unresolved(v)).collect();
    let candidates = subsets_up_to(&relevant, k);
    let mut orienter = hidden.clone();
    for m in 1..=relevant.len() {
        let mut idx: Vec<usize> = (0..m).collect();
        loop {
            let batch: Vec<Vec<Vertex>> = idx.iter().map(|&i| candidates[i].clone()).collect();
            let mut s = start.clone();
            s.apply_round(&mut orienter, &batch).expect("candidate sets are valid");
            if s.is_fully_oriented() {
                return Ok(m);
            }
            if !next_combination(&mut idx, candidates.len()) {
                break;
            }
        }
    }
    unreachable!("intervening on every relevant vertex orients everything")
}

fn subsets_up_to(items: &[Vertex], k: usize) -> Vec<Vec<Vertex>> {
    let mut out = Vec::new();
    for size in 1..=k.min(items.len()) {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            out.push(idx.iter().map(|&i| items[i]).collect());
            if !next_combination(&mut idx, items.len()) {
                break;
            }
        }
    }
    out
}

/// Advances a sorted index combination over `0..total`; false when exhausted.
fn next_combination(idx: &mut [usize], total: usize) -> bool {
    let m = idx.len();
    let mut i = m;
    while i > 0 {
        i -= 1;
        if idx[i] < total - (m - i) {
            idx[i] += 1;
            for j in i + 1..m {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::InterventionSet;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn total_order(n: usize) -> MixedGraph {
        let mut arcs = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                arcs.push((u, v));
            }
        }
        MixedGraph::directed(n, &arcs).unwrap()
    }

    #[test]
    fn path_rooted_at_end() {
        let g = MixedGraph::directed(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let c = covered_edges(&g).unwrap();
        assert_eq!(c.edges(), &[(0, 1)]);
        assert_eq!(verification_number_atomic(&g).unwrap().0, 1);
    }

    #[test]
    fn path_rooted_inside() {
        let g = MixedGraph::directed(5, &[(2, 1), (1, 0), (2, 3), (3, 4)]).unwrap();
        let c = covered_edges(&g).unwrap();
        assert_eq!(c.edges(), &[(2, 1), (2, 3)]);
        assert_eq!(verification_number_atomic(&g).unwrap(), (1, vec![2]));
    }

    #[test]
    fn single_arc() {
        let g = MixedGraph::directed(2, &[(1, 0)]).unwrap();
        assert_eq!(covered_edges(&g).unwrap().edges(), &[(1, 0)]);
        assert_eq!(verification_number_atomic(&g).unwrap().0, 1);
    }

    #[test]
    fn cliques_need_half() {
        for n in 2..=6 {
            let g = total_order(n);
            let (nu, _) = verification_number_atomic(&g).unwrap();
            assert_eq!(nu, n / 2);
            let h = HiddenDag::new(g).unwrap();
            assert_eq!(brute_force_min_verifying_set(&h, 1).unwrap(), n / 2);
        }
    }

    #[test]
    fn k4_brute_force() {
        let h = HiddenDag::new(total_order(4)).unwrap();
        assert_eq!(brute_force_min_verifying_set(&h, 1).unwrap(), 2);
        assert_eq!(brute_force_min_verifying_set(&h, 2).unwrap(), 1);
    }

    #[test]
    fn identified_dag_needs_nothing() {
        let h = HiddenDag::new(MixedGraph::directed(3, &[(0, 2), (1, 2)]).unwrap()).unwrap();
        assert_eq!(brute_force_min_verifying_set(&h, 1).unwrap(), 0);
        assert_eq!(verification_number_atomic(h.dag()).unwrap().0, 0);
    }

    #[test]
    fn guard_refuses_large() {
        let h = HiddenDag::new(MixedGraph::new(13)).unwrap();
        assert!(matches!(brute_force_min_verifying_set(&h, 1), Err(VerifyError::TooLarge { .. })));
    }

    #[test]
    fn bounded_lb_arithmetic() {
        assert_eq!(bounded_verification_lower_bound(1, 5), 1);
        assert_eq!(bounded_verification_lower_bound(7, 3), 3);
        assert_eq!(bounded_verification_lower_bound(0, 4), 0);
    }

    #[test]
    fn clique_sum_examples() {
        let path = MixedGraph::undirected(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let s = EssentialState::from_graph(path, 1).unwrap();
        assert_eq!(clique_sum_lower_bound(&s).unwrap(), 1);
        let dag = EssentialState::from_graph(total_order(4), 1).unwrap();
        assert_eq!(clique_sum_lower_bound(&dag).unwrap(), 0);
    }

    #[test]
    fn random_dags_match_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..150 {
            let n = rng.random_range(2..8);
            let mut arcs = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.random_bool(0.5) {
                        arcs.push((u, v));
                    }
                }
            }
            let g = MixedGraph::directed(n, &arcs).unwrap();
            let c = covered_edges(&g).unwrap();
            assert!(c.is_forest());
            for &(u, v) in c.edges() {
                let mut pu: Vec<_> = g.parents(u).chain([u]).collect();
                pu.sort();
                assert_eq!(pu, g.parents(v).collect::<Vec<_>>());
            }
            let (nu, cover) = verification_number_atomic(&g).unwrap();
            let h = HiddenDag::new(g).unwrap();
            assert_eq!(nu, brute_force_min_verifying_set(&h, 1).unwrap());
            let rec = crate::oracle::recovered_arcs(&h, &InterventionSet::atomic(&cover));
            assert_eq!(rec.len(), h.dag().edge_count());
            let lb = clique_sum_lower_bound(&h.observe()).unwrap();
            assert!(lb <= nu);
        }
    }

    #[test]
    fn combinations_enumerate_all() {
        let mut idx = vec![0, 1];
        let mut count = 1;
        while next_combination(&mut idx, 5) {
            count += 1;
        }
        assert_eq!(count, 10);
        assert_eq!(subsets_up_to(&[3, 4, 5], 2).len(), 6);
    }
}
