//! Brute-force oracles and random instances for unit tests.

use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{MixedGraph, Vertex};

/// Random graph with fill-in along a random elimination order, so the result
/// is chordal.
pub fn random_chordal<R: Rng>(rng: &mut R, n: usize, p: f64) -> MixedGraph {
    let mut adj = vec![vec![false; n]; n];
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                adj[u][v] = true;
                adj[v][u] = true;
            }
        }
    }
    let mut order: Vec<Vertex> = (0..n).collect();
    order.shuffle(rng);
    let mut eliminated = vec![false; n];
    for &v in &order {
        eliminated[v] = true;
        let rest: Vec<Vertex> = (0..n).filter(|&w| !eliminated[w] && adj[v][w]).collect();
        for (i, &a) in rest.iter().enumerate() {
            for &b in &rest[i + 1..] {
                adj[a][b] = true;
                adj[b][a] = true;
            }
        }
    }
    let mut g = MixedGraph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if adj[u][v] {
                g.add_undirected(u, v).unwrap();
            }
        }
    }
    g
}

/// Uniform-ish random tree: vertex `i` attaches to a random earlier vertex,
/// then labels are shuffled.
pub fn random_tree<R: Rng>(rng: &mut R, n: usize) -> MixedGraph {
    let mut perm: Vec<Vertex> = (0..n).collect();
    perm.shuffle(rng);
    let mut g = MixedGraph::new(n);
    for i in 1..n {
        let j = rng.random_range(0..i);
        g.add_undirected(perm[i], perm[j]).unwrap();
    }
    g
}

fn subsets(n: usize) -> impl Iterator<Item = Vec<Vertex>> {
    (0u32..(1 << n)).map(move |mask| (0..n).filter(|&i| mask & (1 << i) != 0).collect())
}

pub fn brute_maximal_cliques(g: &MixedGraph) -> Vec<Vec<Vertex>> {
    let n = g.n();
    let cliques: Vec<Vec<Vertex>> = subsets(n).filter(|s| !s.is_empty() && g.is_clique(s)).collect();
    let mut out: Vec<Vec<Vertex>> = cliques
        .iter()
        .filter(|c| (0..n).all(|v| c.contains(&v) || !c.iter().all(|&u| g.is_adjacent(u, v))))
        .cloned()
        .collect();
    out.sort();
    out
}

pub fn brute_max_clique(g: &MixedGraph) -> usize {
    subsets(g.n()).filter(|s| g.is_clique(s)).map(|s| s.len()).max().unwrap_or(0)
}

pub fn brute_min_vertex_cover(g: &MixedGraph) -> usize {
    let edges = g.skeleton_pairs();
    subsets(g.n())
        .filter(|s| edges.iter().all(|&(u, v)| s.contains(&u) || s.contains(&v)))
        .map(|s| s.len())
        .min()
        .unwrap_or(0)
}
