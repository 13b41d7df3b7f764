//! Random moral DAGs with chordal skeletons.
//!
//! All three families end the same way: an undirected graph and a vertex
//! order `sigma` are fixed, vertices are eliminated in reverse `sigma` order
//! with fill-in, and every edge is oriented along `sigma`. Each vertex's
//! parents then form a clique, so there are no v-structures and reverse
//! `sigma` is a perfect elimination ordering.
//!
//! Randomness comes from ChaCha8 seeded with `seed_from_u64`, so a
//! `(family, parameters, seed)` triple always yields the same DAG.

use alloc::vec;
use alloc::vec::Vec;

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use thiserror::Error;

use crate::graph::{MixedGraph, Vertex};
use crate::oracle::HiddenDag;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SynthError {
    #[error("need at least 2 vertices, got {0}")]
    TooSmall(usize),
    #[error("{name} = {value} is outside [0, 1]")]
    OutOfUnit { name: &'static str, value: f64 },
    #[error("derived branching factor {0} is below 2")]
    DegreeTooSmall(usize),
    #[error("extra edge range {min}..={max} is empty")]
    EmptyRange { min: usize, max: usize },
}

/// The three generator families and their parameters.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "family", rename_all = "snake_case"))]
pub enum Family {
    ErStyled { rho: f64 },
    TreeLike { d_prop: f64, e_min_prop: f64, e_max_prop: f64 },
    GnpUnionTree { p: f64 },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::ErStyled { .. } => "er_styled",
            Family::TreeLike { .. } => "tree_like",
            Family::GnpUnionTree { .. } => "gnp_union_tree",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GeneratorConfig {
    #[cfg_attr(feature = "serde", serde(flatten))]
    pub family: Family,
    pub n: usize,
    pub seed: u64,
}

impl GeneratorConfig {
    pub fn generate(&self) -> Result<HiddenDag, SynthError> {
        match self.family {
            Family::ErStyled { rho } => generate_er_styled(self.n, rho, self.seed),
            Family::TreeLike { d_prop, e_min_prop, e_max_prop } => {
                generate_tree_like(self.n, d_prop, e_min_prop, e_max_prop, self.seed)
            }
            Family::GnpUnionTree { p } => generate_gnp_union_tree(self.n, p, self.seed),
        }
    }
}

/// Seed of trial `trial` in a cohort with master seed `master`.
pub fn trial_seed(master: u64, trial: u64) -> u64 {
    master ^ trial
}

fn unit(name: &'static str, value: f64) -> Result<(), SynthError> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(SynthError::OutOfUnit { name, value })
    }
}

fn at_least_two(n: usize) -> Result<(), SynthError> {
    if n < 2 {
        Err(SynthError::TooSmall(n))
    } else {
        Ok(())
    }
}

/// Dense symmetric adjacency used while building.
struct Draft {
    n: usize,
    adj: Vec<bool>,
}

impl Draft {
    fn new(n: usize) -> Self {
        Draft { n, adj: vec![false; n * n] }
    }

    fn has(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u * self.n + v]
    }

    fn add(&mut self, u: Vertex, v: Vertex) {
        if u != v {
            self.adj[u * self.n + v] = true;
            self.adj[v * self.n + u] = true;
        }
    }

    /// Eliminates in reverse `sigma` with fill-in, then orients along `sigma`.
    fn fill_and_orient(mut self, sigma: &[Vertex]) -> HiddenDag {
        let n = self.n;
        let mut pos = vec![0; n];
        for (i, &v) in sigma.iter().enumerate() {
            pos[v] = i;
        }
        for &v in sigma.iter().rev() {
            let earlier: Vec<Vertex> = (0..n).filter(|&w| self.has(v, w) && pos[w] < pos[v]).collect();
            for (i, &a) in earlier.iter().enumerate() {
                for &b in &earlier[i + 1..] {
                    self.add(a, b);
                }
            }
        }
        let mut arcs = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if self.has(u, v) {
                    arcs.push(if pos[u] < pos[v] { (u, v) } else { (v, u) });
                }
            }
        }
        HiddenDag::new(MixedGraph::directed(n, &arcs).expect("simple arcs"))
            .expect("orientation along an order is acyclic")
    }
}

/// Random order; the vertex at position `i` takes `max(1, Bin(i, rho))`
/// parents uniformly among earlier vertices.
pub fn generate_er_styled(n: usize, rho: f64, seed: u64) -> Result<HiddenDag, SynthError> {
    at_least_two(n)?;
    unit("rho", rho)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sigma: Vec<Vertex> = (0..n).collect();
    sigma.shuffle(&mut rng);
    let mut draft = Draft::new(n);
    for i in 1..n {
        let drawn = Binomial::new(i as u64, rho).expect("valid binomial").sample(&mut rng) as usize;
        let count = drawn.clamp(1, i);
        for j in index::sample(&mut rng, i, count) {
            draft.add(sigma[i], sigma[j]);
        }
    }
    Ok(draft.fill_and_orient(&sigma))
}

/// Complete `d`-ary tree with `d = floor(n * d_prop)`, plus a uniform number
/// in `[floor(n * e_min_prop), floor(n * e_max_prop)]` of extra edges, made
/// chordal along a depth-first topological order.
pub fn generate_tree_like(
    n: usize,
    d_prop: f64,
    e_min_prop: f64,
    e_max_prop: f64,
    seed: u64,
) -> Result<HiddenDag, SynthError> {
    at_least_two(n)?;
    unit("d_prop", d_prop)?;
    unit("e_min_prop", e_min_prop)?;
    unit("e_max_prop", e_max_prop)?;
    let d = (n as f64 * d_prop) as usize;
    if d < 2 {
        return Err(SynthError::DegreeTooSmall(d));
    }
    let e_min = (n as f64 * e_min_prop) as usize;
    let e_max = (n as f64 * e_max_prop) as usize;
    if e_min > e_max {
        return Err(SynthError::EmptyRange { min: e_min, max: e_max });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draft = Draft::new(n);
    // arcs point from lower to higher index, tree and extra edges alike
    let mut children: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    for v in 1..n {
        let p = (v - 1) / d;
        draft.add(p, v);
        children[p].push(v);
    }
    let free: Vec<(Vertex, Vertex)> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|&(u, v)| !draft.has(u, v)).collect();
    let extra = rng.random_range(e_min..=e_max).min(free.len());
    for i in index::sample(&mut rng, free.len(), extra) {
        let (u, v) = free[i];
        draft.add(u, v);
        children[u].push(v);
    }
    for c in &mut children {
        c.sort_unstable();
    }
    Ok(draft.fill_and_orient(&dfs_topological_order(&children)))
}

/// Reverse DFS post-order over arcs `u -> children[u]`, starting roots in
/// index order.
fn dfs_topological_order(children: &[Vec<Vertex>]) -> Vec<Vertex> {
    let n = children.len();
    let mut seen = vec![false; n];
    let mut post = Vec::with_capacity(n);
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut stack = vec![(root, 0usize)];
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            if let Some(&w) = children[v].get(*next) {
                *next += 1;
                if !seen[w] {
                    seen[w] = true;
                    stack.push((w, 0));
                }
            } else {
                post.push(v);
                stack.pop();
            }
        }
    }
    post.reverse();
    post
}

/// `G(n, p)` united with a uniform random tree, oriented along a randomized
/// breadth-first order, with parents married until no v-structure is left.
pub fn generate_gnp_union_tree(n: usize, p: f64, seed: u64) -> Result<HiddenDag, SynthError> {
    at_least_two(n)?;
    unit("p", p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draft = Draft::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                draft.add(u, v);
            }
        }
    }
    for (u, v) in random_prufer_tree(&mut rng, n) {
        draft.add(u, v);
    }
    let sigma = random_bfs_order(&draft, &mut rng);
    // marrying parents latest-first is elimination along reverse sigma
    Ok(draft.fill_and_orient(&sigma))
}

/// Breadth-first order of a connected draft from a random root, visiting
/// neighbors in random order. On a tree every vertex has exactly one earlier
/// neighbor, so no parents need marrying.
fn random_bfs_order<R: Rng + ?Sized>(draft: &Draft, rng: &mut R) -> Vec<Vertex> {
    let n = draft.n;
    let mut seen = vec![false; n];
    let root = rng.random_range(0..n);
    seen[root] = true;
    let mut order = vec![root];
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        head += 1;
        let mut next: Vec<Vertex> = (0..n).filter(|&w| draft.has(v, w) && !seen[w]).collect();
        next.shuffle(rng);
        for w in next {
            seen[w] = true;
            order.push(w);
        }
    }
    order
}

/// Edges of a uniformly random labelled tree, decoded from a random Prüfer
/// sequence.
pub fn random_prufer_tree<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<(Vertex, Vertex)> {
    if n < 2 {
        return Vec::new();
    }
    let code: Vec<Vertex> = (0..n - 2).map(|_| rng.random_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &c in &code {
        degree[c] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut leaves: alloc::collections::BinaryHeap<core::cmp::Reverse<Vertex>> =
        (0..n).filter(|&v| degree[v] == 1).map(core::cmp::Reverse).collect();
    for &c in &code {
        let core::cmp::Reverse(leaf) = leaves.pop().expect("a Prüfer step always has a leaf");
        edges.push((leaf.min(c), leaf.max(c)));
        degree[c] -= 1;
        if degree[c] == 1 {
            leaves.push(core::cmp::Reverse(c));
        }
    }
    let core::cmp::Reverse(a) = leaves.pop().expect("two leaves remain");
    let core::cmp::Reverse(b) = leaves.pop().expect("two leaves remain");
    edges.push((a.min(b), a.max(b)));
    edges
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chordal::is_chordal;
    use crate::meek::has_consistent_extension;

    fn self_check(h: &HiddenDag) {
        let g = h.dag();
        assert!(g.is_dag());
        assert!(g.v_structures().is_empty());
        assert!(is_chordal(g));
        assert!(h.observe().graph().is_fully_undirected());
        assert!(has_consistent_extension(&g.skeleton()));
    }

    #[test]
    fn er_self_check() {
        for seed in 0..100 {
            let h = generate_er_styled(20, 0.1, seed).unwrap();
            self_check(&h);
            assert!(h.dag().is_connected());
        }
    }

    #[test]
    fn er_zero_density_is_tree() {
        for seed in 0..20 {
            let h = generate_er_styled(15, 0.0, seed).unwrap();
            assert_eq!(h.dag().edge_count(), 14);
            assert!(h.dag().is_connected());
        }
        assert_eq!(generate_er_styled(2, 0.5, 1).unwrap().dag().edge_count(), 1);
    }

    #[test]
    fn tree_like_self_check() {
        for seed in 0..100 {
            self_check(&generate_tree_like(100, 0.4, 0.2, 0.5, seed).unwrap());
        }
        let pure = generate_tree_like(30, 0.1, 0.0, 0.0, 3).unwrap();
        assert_eq!(pure.dag().edge_count(), 29);
        assert_eq!(generate_tree_like(3, 0.7, 0.0, 0.0, 0).unwrap().dag().edge_count(), 2);
        assert_eq!(generate_tree_like(10, 0.1, 0.0, 0.0, 0), Err(SynthError::DegreeTooSmall(1)));
    }

    #[test]
    fn gnp_self_check() {
        for seed in 0..100 {
            let h = generate_gnp_union_tree(20, 0.03, seed).unwrap();
            self_check(&h);
            assert!(h.dag().is_connected());
        }
        assert_eq!(generate_gnp_union_tree(6, 1.0, 0).unwrap().dag().edge_count(), 15);
        assert_eq!(generate_gnp_union_tree(12, 0.0, 0).unwrap().dag().edge_count(), 11);
    }

    #[test]
    fn reproducible() {
        let a = generate_er_styled(30, 0.2, 99).unwrap();
        let b = generate_er_styled(30, 0.2, 99).unwrap();
        assert_eq!(a, b);
        let c = generate_er_styled(30, 0.2, 100).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn prufer_is_tree() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 2..30 {
            let e = random_prufer_tree(&mut rng, n);
            let g = MixedGraph::undirected(n, &e).unwrap();
            assert!(g.is_connected());
            assert_eq!(g.edge_count(), n - 1);
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(generate_er_styled(1, 0.1, 0).is_err());
        assert!(generate_er_styled(5, 1.5, 0).is_err());
        assert!(generate_tree_like(10, 0.5, 0.4, 0.2, 0).is_err());
    }
}
