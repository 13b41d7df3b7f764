//! Exhaustive oracles shared by the integration tests.
//!
//! Orientations of a skeleton are bitmasks over its sorted edge list: bit
//! `i` set means edge `(lo, hi)` points `lo -> hi`.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use adaptivity_core::graph::{MixedGraph, Vertex};

pub struct Skeleton {
    pub n: usize,
    pub pairs: Vec<(Vertex, Vertex)>,
    adj: Vec<Vec<bool>>,
}

impl Skeleton {
    pub fn of(g: &MixedGraph) -> Self {
        let n = g.n();
        let pairs = g.skeleton_pairs();
        let mut adj = vec![vec![false; n]; n];
        for &(u, v) in &pairs {
            adj[u][v] = true;
            adj[v][u] = true;
        }
        Skeleton { n, pairs, adj }
    }

    pub fn mask_of(&self, g: &MixedGraph) -> u64 {
        let mut m = 0u64;
        for (i, &(u, v)) in self.pairs.iter().enumerate() {
            if g.has_arc(u, v) {
                m |= 1 << i;
            }
        }
        m
    }

    pub fn to_dag(&self, mask: u64) -> MixedGraph {
        let arcs: Vec<_> = self
            .pairs
            .iter()
            .enumerate()
            .map(|(i, &(u, v))| if mask >> i & 1 == 1 { (u, v) } else { (v, u) })
            .collect();
        MixedGraph::directed(self.n, &arcs).unwrap()
    }

    /// Every acyclic orientation, found by orienting along every vertex
    /// permutation.
    pub fn acyclic_orientations(&self) -> Vec<u64> {
        let mut seen = HashSet::new();
        let mut perm: Vec<usize> = (0..self.n).collect();
        let mut pos = vec![0usize; self.n];
        loop {
            for (i, &v) in perm.iter().enumerate() {
                pos[v] = i;
            }
            let mut m = 0u64;
            for (i, &(u, v)) in self.pairs.iter().enumerate() {
                if pos[u] < pos[v] {
                    m |= 1 << i;
                }
            }
            seen.insert(m);
            if !next_permutation(&mut perm) {
                break;
            }
        }
        let mut out: Vec<u64> = seen.into_iter().collect();
        out.sort_unstable();
        out
    }

    /// Parent lists under an orientation.
    fn parents(&self, mask: u64) -> Vec<Vec<Vertex>> {
        let mut pa = vec![Vec::new(); self.n];
        for (i, &(u, v)) in self.pairs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                pa[v].push(u);
            } else {
                pa[u].push(v);
            }
        }
        pa
    }

    /// v-structures `(u, v, w)` with `u < w`, sorted.
    pub fn v_structures(&self, mask: u64) -> Vec<(Vertex, Vertex, Vertex)> {
        let pa = self.parents(mask);
        let mut out = Vec::new();
        for v in 0..self.n {
            for (i, &a) in pa[v].iter().enumerate() {
                for &b in &pa[v][i + 1..] {
                    if !self.adj[a][b] {
                        out.push((a.min(b), v, a.max(b)));
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Orientations that agree with `truth` on every edge with exactly one
    /// endpoint in some set of `interventions`.
    pub fn agrees_on_cuts(&self, mask: u64, truth: u64, interventions: &[Vec<Vertex>]) -> bool {
        let cut = self.cut_mask(interventions);
        (mask ^ truth) & cut == 0
    }

    pub fn cut_mask(&self, interventions: &[Vec<Vertex>]) -> u64 {
        let mut cut = 0u64;
        for s in interventions {
            for (i, &(u, v)) in self.pairs.iter().enumerate() {
                if s.contains(&u) != s.contains(&v) {
                    cut |= 1 << i;
                }
            }
        }
        cut
    }

    /// Arcs shared by every member.
    pub fn unanimous(&self, members: &[u64]) -> BTreeSet<(Vertex, Vertex)> {
        let all = if self.pairs.len() == 64 { u64::MAX } else { (1u64 << self.pairs.len()) - 1 };
        let ones = members.iter().fold(all, |acc, &m| acc & m);
        let zeros = members.iter().fold(all, |acc, &m| acc & !m);
        let mut out = BTreeSet::new();
        for (i, &(u, v)) in self.pairs.iter().enumerate() {
            if ones >> i & 1 == 1 {
                out.insert((u, v));
            } else if zeros >> i & 1 == 1 {
                out.insert((v, u));
            }
        }
        out
    }
}

pub fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Members of the interventional equivalence class of `truth` under
/// `interventions` (observational data always included): same skeleton, same
/// v-structures, same direction on every cut edge.
pub fn interventional_class(sk: &Skeleton, truth: u64, interventions: &[Vec<Vertex>]) -> Vec<u64> {
    let vs = sk.v_structures(truth);
    sk.acyclic_orientations()
        .into_iter()
        .filter(|&m| sk.agrees_on_cuts(m, truth, interventions) && sk.v_structures(m) == vs)
        .collect()
}

/// Arcs of the interventional essential graph according to the class
/// definition.
pub fn oracle_essential_arcs(dag: &MixedGraph, interventions: &[Vec<Vertex>]) -> BTreeSet<(Vertex, Vertex)> {
    let sk = Skeleton::of(dag);
    let truth = sk.mask_of(dag);
    sk.unanimous(&interventional_class(&sk, truth, interventions))
}

/// Consistent DAGs for a mixed graph: every arc kept, v-structures exactly
/// those the arcs already form.
pub fn consistent_extensions(g: &MixedGraph) -> Vec<u64> {
    let sk = Skeleton::of(g);
    let vs = g.v_structures();
    let arcs = g.arcs();
    sk.acyclic_orientations()
        .into_iter()
        .filter(|&m| {
            arcs.iter().all(|&(u, v)| {
                let i = sk.pairs.binary_search(&(u.min(v), u.max(v))).unwrap();
                (m >> i & 1 == 1) == (u < v)
            }) && sk.v_structures(m) == vs
        })
        .collect()
}

/// Every labelled connected chordal graph on `n` vertices.
pub fn connected_chordal_graphs(n: usize) -> Vec<MixedGraph> {
    let all: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << all.len()) {
        if (mask.count_ones() as usize) + 1 < n {
            continue;
        }
        let edges: Vec<_> = all.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
        let g = MixedGraph::undirected(n, &edges).unwrap();
        if g.is_connected() && adaptivity_core::chordal::is_chordal(&g) {
            out.push(g);
        }
    }
    out
}

/// Orientation along reverse of a perfect elimination ordering: moral.
pub fn moral_orientation(g: &MixedGraph) -> MixedGraph {
    let peo = adaptivity_core::chordal::lex_bfs_peo(&g.skeleton()).unwrap();
    let arcs: Vec<_> = g
        .skeleton_pairs()
        .into_iter()
        .map(|(u, v)| if peo.position(u) > peo.position(v) { (u, v) } else { (v, u) })
        .collect();
    MixedGraph::directed(g.n(), &arcs).unwrap()
}

/// Random DAG: random order, each forward pair an arc with probability `p`.
pub fn random_dag<R: rand::Rng>(rng: &mut R, n: usize, p: f64) -> MixedGraph {
    use rand::seq::SliceRandom;
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut arcs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(p) {
                arcs.push((order[i], order[j]));
            }
        }
    }
    MixedGraph::directed(n, &arcs).unwrap()
}

/// Meek closure by the definition: keep applying any applicable rule to a
/// randomly chosen edge until nothing changes.
pub fn naive_closure<R: rand::Rng>(g: &MixedGraph, rng: &mut R) -> MixedGraph {
    use adaptivity_core::meek::rule_implies;
    use rand::seq::SliceRandom;
    let mut h = g.clone();
    loop {
        let mut edges = h.undirected_edges();
        edges.shuffle(rng);
        let mut changed = false;
        for (u, v) in edges {
            let (a, b) = if rng.random_bool(0.5) { (u, v) } else { (v, u) };
            if rule_implies(&h, a, b).is_some() {
                h.orient(a, b).unwrap();
                changed = true;
                break;
            }
            if rule_implies(&h, b, a).is_some() {
                h.orient(b, a).unwrap();
                changed = true;
                break;
            }
        }
        if !changed {
            return h;
        }
    }
}
