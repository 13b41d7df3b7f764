//! Partially directed graphs.
//!
//! [`MixedGraph`] stores undirected edges and directed arcs side by side, so one
//! type covers DAGs, skeletons, essential graphs and interventional essential
//! graphs. Every adjacency is kept twice: a sorted neighbor list per vertex for
//! scans and a pair-keyed map for constant-time edge queries.

use alloc::collections::{BinaryHeap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use hashbrown::HashMap;
use thiserror::Error;

/// Dense vertex index in `0..n`.
pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("vertices {0} and {1} are already adjacent")]
    DuplicateEdge(Vertex, Vertex),
    #[error("vertices {0} and {1} are not adjacent")]
    NotAdjacent(Vertex, Vertex),
    #[error("cannot orient {0} -> {1}: the arc already points the other way")]
    OrientationConflict(Vertex, Vertex),
    #[error("graph contains a partially directed cycle")]
    PartiallyDirectedCycle,
    #[error("graph is not a DAG")]
    NotADag,
}

/// Stored mark for the canonical pair `(lo, hi)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Link {
    Undirected,
    LowToHigh,
    HighToLow,
}

/// An adjacency as seen from the first vertex of a query `(u, v)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Edge {
    /// `u - v`
    Undirected,
    /// `u -> v`
    Out,
    /// `u <- v`
    In,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MixedGraph {
    adj: Vec<Vec<Vertex>>,
    links: HashMap<(Vertex, Vertex), Link>,
    undirected: usize,
    arcs: usize,
}

#[inline]
fn key(u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl MixedGraph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        MixedGraph { adj: vec![Vec::new(); n], links: HashMap::new(), undirected: 0, arcs: 0 }
    }

    pub fn from_edges(
        n: usize,
        undirected: &[(Vertex, Vertex)],
        arcs: &[(Vertex, Vertex)],
    ) -> Result<Self, GraphError> {
        let mut g = MixedGraph::new(n);
        for &(u, v) in undirected {
            g.add_undirected(u, v)?;
        }
        for &(u, v) in arcs {
            g.add_arc(u, v)?;
        }
        Ok(g)
    }

    /// Fully undirected graph; shorthand used heavily in tests.
    pub fn undirected(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        Self::from_edges(n, edges, &[])
    }

    /// Fully directed graph.
    pub fn directed(n: usize, arcs: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        Self::from_edges(n, &[], arcs)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.undirected + self.arcs
    }

    pub fn undirected_count(&self) -> usize {
        self.undirected
    }

    pub fn arc_count(&self) -> usize {
        self.arcs
    }

    fn check(&self, v: Vertex) -> Result<(), GraphError> {
        if v < self.n() {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { vertex: v, n: self.n() })
        }
    }

    fn insert(&mut self, u: Vertex, v: Vertex, link: Link) -> Result<(), GraphError> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        let k = key(u, v);
        if self.links.contains_key(&k) {
            return Err(GraphError::DuplicateEdge(k.0, k.1));
        }
        self.links.insert(k, link);
        for (a, b) in [(u, v), (v, u)] {
            let list = &mut self.adj[a];
            let pos = list.binary_search(&b).unwrap_err();
            list.insert(pos, b);
        }
        match link {
            Link::Undirected => self.undirected += 1,
            _ => self.arcs += 1,
        }
        Ok(())
    }

    pub fn add_undirected(&mut self, u: Vertex, v: Vertex) -> Result<(), GraphError> {
        self.insert(u, v, Link::Undirected)
    }

    /// Adds the arc `u -> v`.
    pub fn add_arc(&mut self, u: Vertex, v: Vertex) -> Result<(), GraphError> {
        let link = if u < v { Link::LowToHigh } else { Link::HighToLow };
        self.insert(u, v, link)
    }

    /// Removes whatever joins `u` and `v`, returning it.
    pub fn remove_edge(&mut self, u: Vertex, v: Vertex) -> Option<Edge> {
        let e = self.edge(u, v)?;
        self.links.remove(&key(u, v));
        for (a, b) in [(u, v), (v, u)] {
            let list = &mut self.adj[a];
            if let Ok(pos) = list.binary_search(&b) {
                list.remove(pos);
            }
        }
        match e {
            Edge::Undirected => self.undirected -= 1,
            _ => self.arcs -= 1,
        }
        Some(e)
    }

    /// Turns the undirected edge `u - v` into `u -> v`.
    ///
    /// Returns `Ok(false)` when the arc is already present.
    pub fn orient(&mut self, u: Vertex, v: Vertex) -> Result<bool, GraphError> {
        match self.edge(u, v) {
            None => Err(GraphError::NotAdjacent(u, v)),
            Some(Edge::Out) => Ok(false),
            Some(Edge::In) => Err(GraphError::OrientationConflict(u, v)),
            Some(Edge::Undirected) => {
                let link = if u < v { Link::LowToHigh } else { Link::HighToLow };
                self.links.insert(key(u, v), link);
                self.undirected -= 1;
                self.arcs += 1;
                Ok(true)
            }
        }
    }

    /// What joins `u` and `v`, seen from `u`.
    #[inline]
    pub fn edge(&self, u: Vertex, v: Vertex) -> Option<Edge> {
        let link = *self.links.get(&key(u, v))?;
        Some(match link {
            Link::Undirected => Edge::Undirected,
            Link::LowToHigh if u < v => Edge::Out,
            Link::HighToLow if u > v => Edge::Out,
            _ => Edge::In,
        })
    }

    #[inline]
    pub fn is_adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.links.contains_key(&key(u, v))
    }

    /// `u -> v`
    #[inline]
    pub fn has_arc(&self, u: Vertex, v: Vertex) -> bool {
        self.edge(u, v) == Some(Edge::Out)
    }

    #[inline]
    pub fn has_undirected(&self, u: Vertex, v: Vertex) -> bool {
        self.edge(u, v) == Some(Edge::Undirected)
    }

    /// All adjacent vertices, ascending.
    #[inline]
    pub fn neighbors(&self, u: Vertex) -> &[Vertex] {
        &self.adj[u]
    }

    pub fn degree(&self, u: Vertex) -> usize {
        self.adj[u].len()
    }

    pub fn undirected_neighbors(&self, u: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.adj[u].iter().copied().filter(move |&v| self.edge(u, v) == Some(Edge::Undirected))
    }

    pub fn parents(&self, u: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.adj[u].iter().copied().filter(move |&v| self.edge(u, v) == Some(Edge::In))
    }

    pub fn children(&self, u: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.adj[u].iter().copied().filter(move |&v| self.edge(u, v) == Some(Edge::Out))
    }

    pub fn has_undirected_incident(&self, u: Vertex) -> bool {
        self.undirected_neighbors(u).next().is_some()
    }

    /// Undirected edges as `(lo, hi)` pairs in ascending order.
    pub fn undirected_edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::with_capacity(self.undirected);
        for u in 0..self.n() {
            for &v in self.adj[u].iter().filter(|&&v| v > u) {
                if self.links[&(u, v)] == Link::Undirected {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Arcs as `(tail, head)` pairs, ordered by tail then head.
    pub fn arcs(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::with_capacity(self.arcs);
        for u in 0..self.n() {
            out.extend(self.children(u).map(|v| (u, v)));
        }
        out
    }

    /// Every adjacency as an unordered `(lo, hi)` pair, ascending.
    pub fn skeleton_pairs(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n() {
            out.extend(self.adj[u].iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    pub fn is_fully_directed(&self) -> bool {
        self.undirected == 0
    }

    pub fn is_fully_undirected(&self) -> bool {
        self.arcs == 0
    }

    /// Topological order of the arcs, smallest available index first.
    /// Undirected edges are ignored. `None` if the arcs contain a cycle.
    pub fn topological_order(&self) -> Option<Vec<Vertex>> {
        let n = self.n();
        let mut indeg = vec![0usize; n];
        for (_, v) in self.arcs() {
            indeg[v] += 1;
        }
        let mut heap: BinaryHeap<Reverse<Vertex>> = (0..n).filter(|&v| indeg[v] == 0).map(Reverse).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(Reverse(u)) = heap.pop() {
            order.push(u);
            for v in self.children(u) {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    heap.push(Reverse(v));
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    pub fn is_dag(&self) -> bool {
        self.is_fully_directed() && self.topological_order().is_some()
    }

    /// Same adjacencies with every arc made undirected.
    pub fn skeleton(&self) -> MixedGraph {
        let mut links = HashMap::with_capacity(self.links.len());
        for &k in self.links.keys() {
            links.insert(k, Link::Undirected);
        }
        MixedGraph { adj: self.adj.clone(), links, undirected: self.edge_count(), arcs: 0 }
    }

    /// Only the undirected edges, on the same vertex set.
    pub fn undirected_part(&self) -> MixedGraph {
        let mut g = MixedGraph::new(self.n());
        for (u, v) in self.undirected_edges() {
            g.add_undirected(u, v).expect("edges come from a valid graph");
        }
        g
    }

    /// Colliders `u -> v <- w` with `u` and `w` non-adjacent, as `(u, v, w)`
    /// with `u < w`, sorted.
    pub fn v_structures(&self) -> Vec<(Vertex, Vertex, Vertex)> {
        let mut out = Vec::new();
        for v in 0..self.n() {
            let pa: Vec<Vertex> = self.parents(v).collect();
            for (i, &u) in pa.iter().enumerate() {
                for &w in &pa[i + 1..] {
                    if !self.is_adjacent(u, w) {
                        out.push((u, v, w));
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Component label per vertex, counting only undirected edges when
    /// `undirected_only` is set. Labels follow the smallest member.
    fn component_labels(&self, undirected_only: bool) -> (Vec<usize>, usize) {
        let n = self.n();
        let mut label = vec![usize::MAX; n];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for s in 0..n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = count;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adj[u] {
                    if label[v] == usize::MAX && (!undirected_only || self.edge(u, v) == Some(Edge::Undirected)) {
                        label[v] = count;
                        queue.push_back(v);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    /// Connected components of the skeleton, each sorted, ordered by smallest member.
    pub fn connected_components(&self) -> Vec<Vec<Vertex>> {
        let (label, count) = self.component_labels(false);
        let mut comps = vec![Vec::new(); count];
        for (v, &l) in label.iter().enumerate() {
            comps[l].push(v);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.component_labels(false).1 == 1
    }

    /// True iff some cycle of length at least three contains an arc and every arc
    /// on it points the same way around the cycle.
    ///
    /// Equivalently: an arc lies inside one undirected component, or the arcs
    /// between undirected components contain a directed cycle.
    pub fn has_partially_directed_cycle(&self) -> bool {
        let (label, count) = self.component_labels(true);
        let mut quotient: Vec<Vec<usize>> = vec![Vec::new(); count];
        let mut indeg = vec![0usize; count];
        for (u, v) in self.arcs() {
            let (a, b) = (label[u], label[v]);
            if a == b {
                return true;
            }
            quotient[a].push(b);
            indeg[b] += 1;
        }
        let mut stack: Vec<usize> = (0..count).filter(|&c| indeg[c] == 0).collect();
        let mut seen = 0;
        while let Some(c) = stack.pop() {
            seen += 1;
            for &d in &quotient[c] {
                indeg[d] -= 1;
                if indeg[d] == 0 {
                    stack.push(d);
                }
            }
        }
        seen != count
    }

    pub fn is_chain_graph(&self) -> bool {
        !self.has_partially_directed_cycle()
    }

    /// Connected components of the undirected part, singletons included,
    /// ordered by smallest member.
    pub fn chain_components(&self) -> Result<Vec<ChainComponent>, GraphError> {
        if self.has_partially_directed_cycle() {
            return Err(GraphError::PartiallyDirectedCycle);
        }
        let (label, count) = self.component_labels(true);
        let mut comps: Vec<ChainComponent> =
            (0..count).map(|_| ChainComponent { vertices: Vec::new(), edges: Vec::new() }).collect();
        for (v, &l) in label.iter().enumerate() {
            comps[l].vertices.push(v);
        }
        for (u, v) in self.undirected_edges() {
            comps[label[u]].edges.push((u, v));
        }
        Ok(comps)
    }

    /// Induced subgraph on `vertices`, relabelled so that `vertices[i]` becomes `i`.
    pub fn induced_subgraph(&self, vertices: &[Vertex]) -> MixedGraph {
        let mut local = HashMap::with_capacity(vertices.len());
        for (i, &v) in vertices.iter().enumerate() {
            local.insert(v, i);
        }
        let mut g = MixedGraph::new(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for &v in &self.adj[u] {
                let Some(&j) = local.get(&v) else { continue };
                // each pair once: from the lower local index, or from the arc tail
                match self.edge(u, v) {
                    Some(Edge::Undirected) if i < j => g.add_undirected(i, j),
                    Some(Edge::Out) => g.add_arc(i, j),
                    _ => Ok(()),
                }
                .expect("subgraph of a valid graph");
            }
        }
        g
    }

    /// Applies `perm` (old index -> new index) to every vertex.
    pub fn relabel(&self, perm: &[Vertex]) -> MixedGraph {
        assert_eq!(perm.len(), self.n(), "permutation length must match n");
        let mut g = MixedGraph::new(self.n());
        for (u, v) in self.undirected_edges() {
            g.add_undirected(perm[u], perm[v]).expect("permutation is a bijection");
        }
        for (u, v) in self.arcs() {
            g.add_arc(perm[u], perm[v]).expect("permutation is a bijection");
        }
        g
    }

    /// Whether the vertex set is a clique in the skeleton.
    pub fn is_clique(&self, vertices: &[Vertex]) -> bool {
        vertices.iter().enumerate().all(|(i, &u)| vertices[i + 1..].iter().all(|&v| self.is_adjacent(u, v)))
    }
}

/// One connected component of the undirected part of a chain graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComponent {
    /// Sorted member vertices (ids of the parent graph).
    pub vertices: Vec<Vertex>,
    /// Undirected edges among them as `(lo, hi)`.
    pub edges: Vec<(Vertex, Vertex)>,
}

impl ChainComponent {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_singleton(&self) -> bool {
        self.vertices.len() == 1
    }

    /// The component as a standalone undirected graph; `vertices[i]` becomes `i`.
    pub fn to_local_graph(&self) -> MixedGraph {
        let mut local = HashMap::with_capacity(self.vertices.len());
        for (i, &v) in self.vertices.iter().enumerate() {
            local.insert(v, i);
        }
        let mut g = MixedGraph::new(self.vertices.len());
        for &(u, v) in &self.edges {
            g.add_undirected(local[&u], local[&v]).expect("component edges are simple");
        }
        g
    }
}

#[cfg(feature = "serde")]
mod serde_impl {
    use super::*;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Repr {
        n: usize,
        undirected: Vec<(Vertex, Vertex)>,
        arcs: Vec<(Vertex, Vertex)>,
    }

    impl Serialize for MixedGraph {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            Repr { n: self.n(), undirected: self.undirected_edges(), arcs: self.arcs() }.serialize(s)
        }
    }

    impl<'de> Deserialize<'de> for MixedGraph {
        fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
            let r = Repr::deserialize(d)?;
            MixedGraph::from_edges(r.n, &r.undirected, &r.arcs).map_err(serde::de::Error::custom)
        }
    }
}
