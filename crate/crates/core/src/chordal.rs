//! Chordal graph machinery: elimination orderings, maximal cliques, clique
//! trees, and independent sets / vertex covers along an elimination ordering.
//!
//! Convention used throughout: a [`Peo`] lists vertices in elimination order,
//! and for every vertex the neighbors eliminated *after* it form a clique.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use hashbrown::HashMap;
use thiserror::Error;

use crate::graph::{MixedGraph, Vertex};
use crate::util::DisjointSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChordalError {
    /// Carries a chordless cycle of length at least four.
    #[error("graph is not chordal; chordless cycle {witness:?}")]
    NotChordal { witness: Vec<Vertex> },
    #[error("expected an undirected graph, found {0} arcs")]
    HasArcs(usize),
    #[error("clique tree requested for a disconnected graph")]
    Disconnected,
}

/// Perfect elimination ordering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Peo {
    order: Vec<Vertex>,
    position: Vec<usize>,
}

impl Peo {
    /// Wraps an ordering without checking it; see [`Peo::is_valid_for`].
    pub fn from_order(order: Vec<Vertex>) -> Self {
        let mut position = vec![usize::MAX; order.len()];
        for (i, &v) in order.iter().enumerate() {
            position[v] = i;
        }
        Peo { order, position }
    }

    pub fn order(&self) -> &[Vertex] {
        &self.order
    }

    pub fn position(&self, v: Vertex) -> usize {
        self.position[v]
    }

    /// Neighbors of `v` eliminated after it, ascending by vertex id.
    pub fn later_neighbors(&self, g: &MixedGraph, v: Vertex) -> Vec<Vertex> {
        let pv = self.position[v];
        g.neighbors(v).iter().copied().filter(|&w| self.position[w] > pv).collect()
    }

    /// Direct check: every set of later neighbors is a clique.
    pub fn is_valid_for(&self, g: &MixedGraph) -> bool {
        if self.order.len() != g.n() || self.position.contains(&usize::MAX) {
            return false;
        }
        self.order.iter().all(|&v| g.is_clique(&self.later_neighbors(g, v)))
    }
}

/// Lexicographic breadth-first search by partition refinement. Returns the
/// visit order; ties go to the smallest vertex id.
pub fn lex_bfs(g: &MixedGraph) -> Vec<Vertex> {
    const NONE: usize = usize::MAX;
    let n = g.n();
    let mut seq: Vec<Vertex> = (0..n).collect();
    let mut pos: Vec<usize> = (0..n).collect();
    let mut visited = vec![false; n];
    // Classes are contiguous ranges of `seq`, ordered by start.
    let mut start = vec![0usize];
    let mut end = vec![n];
    let mut class_of = vec![0usize; n];
    let mut split_child = vec![NONE];
    let mut split_step = vec![NONE];

    for step in 0..n {
        let v = seq[step];
        visited[v] = true;
        start[class_of[v]] += 1;
        for &w in g.neighbors(v) {
            if visited[w] {
                continue;
            }
            let c = class_of[w];
            let front = start[c];
            let other = seq[front];
            seq.swap(front, pos[w]);
            pos[other] = pos[w];
            pos[w] = front;
            let nc = if split_step[c] == step {
                split_child[c]
            } else {
                let id = start.len();
                start.push(front);
                end.push(front);
                split_child.push(NONE);
                split_step.push(NONE);
                split_child[c] = id;
                split_step[c] = step;
                id
            };
            end[nc] += 1;
            start[c] += 1;
            class_of[w] = nc;
        }
    }
    seq
}

/// Checks a candidate elimination ordering in `O(n + m)` expected time. On
/// failure returns `(v, p, w)`: `p` and `w` are later neighbors of `v` that are
/// not adjacent.
fn first_peo_violation(g: &MixedGraph, peo: &Peo) -> Option<(Vertex, Vertex, Vertex)> {
    for &v in peo.order() {
        let later = peo.later_neighbors(g, v);
        let Some(&p) = later.iter().min_by_key(|&&w| peo.position(w)) else {
            continue;
        };
        if let Some(&w) = later.iter().find(|&&w| w != p && !g.is_adjacent(p, w)) {
            return Some((v, p, w));
        }
    }
    None
}

/// Shortest `p`-`w` path whose interior avoids the closed neighborhood of `v`,
/// closed into the cycle `v, p, ..., w`.
fn chordless_cycle_through(g: &MixedGraph, v: Vertex, p: Vertex, w: Vertex) -> Option<Vec<Vertex>> {
    let n = g.n();
    let mut blocked = vec![false; n];
    blocked[v] = true;
    for &x in g.neighbors(v) {
        blocked[x] = true;
    }
    blocked[w] = false;
    let mut prev = vec![usize::MAX; n];
    prev[p] = p;
    let mut queue = VecDeque::from([p]);
    while let Some(u) = queue.pop_front() {
        if u == w {
            break;
        }
        for &x in g.neighbors(u) {
            if !blocked[x] && prev[x] == usize::MAX {
                prev[x] = u;
                queue.push_back(x);
            }
        }
    }
    if prev[w] == usize::MAX {
        return None;
    }
    let mut path = vec![w];
    let mut cur = w;
    while cur != p {
        cur = prev[cur];
        path.push(cur);
    }
    path.push(v);
    path.reverse();
    Some(path)
}

/// Rotates a cycle so it starts at its smallest vertex and continues towards
/// the smaller of that vertex's two cycle neighbors.
fn canonical_cycle(mut cycle: Vec<Vertex>) -> Vec<Vertex> {
    let min_at = (0..cycle.len()).min_by_key(|&i| cycle[i]).unwrap_or(0);
    cycle.rotate_left(min_at);
    if cycle.len() > 2 && cycle[cycle.len() - 1] < cycle[1] {
        cycle[1..].reverse();
    }
    cycle
}

fn find_chordless_cycle(g: &MixedGraph, hint: (Vertex, Vertex, Vertex)) -> Vec<Vertex> {
    if let Some(c) = chordless_cycle_through(g, hint.0, hint.1, hint.2) {
        return canonical_cycle(c);
    }
    // Every chordless cycle passes some v between two non-adjacent neighbors.
    for v in 0..g.n() {
        let nb = g.neighbors(v);
        for (i, &p) in nb.iter().enumerate() {
            for &w in &nb[i + 1..] {
                if g.is_adjacent(p, w) {
                    continue;
                }
                if let Some(c) = chordless_cycle_through(g, v, p, w) {
                    return canonical_cycle(c);
                }
            }
        }
    }
    unreachable!("elimination ordering check failed on a chordal graph")
}

/// Perfect elimination ordering from reverse Lex-BFS, or a chordless cycle
/// witnessing that the graph is not chordal.
pub fn lex_bfs_peo(g: &MixedGraph) -> Result<Peo, ChordalError> {
    if g.arc_count() > 0 {
        return Err(ChordalError::HasArcs(g.arc_count()));
    }
    let mut order = lex_bfs(g);
    order.reverse();
    let peo = Peo::from_order(order);
    match first_peo_violation(g, &peo) {
        None => Ok(peo),
        Some(hint) => Err(ChordalError::NotChordal { witness: find_chordless_cycle(g, hint) }),
    }
}

pub fn is_chordal(g: &MixedGraph) -> bool {
    lex_bfs_peo(&g.skeleton()).is_ok()
}

/// Maximal cliques read off a valid elimination ordering.
///
/// Each vertex `v` proposes `{v} ∪ later(v)`. The proposal of `p` is dropped
/// when some `v` whose first later neighbor is `p` has exactly one more later
/// neighbor than `p`, because then `later(v) = {p} ∪ later(p)`. Cliques are
/// returned sorted, in lexicographic order.
pub fn maximal_cliques(g: &MixedGraph, peo: &Peo) -> Vec<Vec<Vertex>> {
    let n = g.n();
    let later: Vec<Vec<Vertex>> = (0..n).map(|v| peo.later_neighbors(g, v)).collect();
    let mut dominated = vec![false; n];
    for v in 0..n {
        if let Some(&p) = later[v].iter().min_by_key(|&&w| peo.position(w)) {
            if later[v].len() == later[p].len() + 1 {
                dominated[p] = true;
            }
        }
    }
    let mut cliques: Vec<Vec<Vertex>> = (0..n)
        .filter(|&v| !dominated[v])
        .map(|v| {
            let mut c = later[v].clone();
            let at = c.binary_search(&v).unwrap_err();
            c.insert(at, v);
            c
        })
        .collect();
    cliques.sort();
    cliques
}

/// Tree over the maximal cliques of a connected chordal graph, with each tree
/// edge weighted by the size of the clique intersection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueTree {
    cliques: Vec<Vec<Vertex>>,
    /// `(i, j, weight)` with `i < j`, in the order chosen by the spanning tree.
    edges: Vec<(usize, usize, usize)>,
}

impl CliqueTree {
    pub fn len(&self) -> usize {
        self.cliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cliques.is_empty()
    }

    pub fn cliques(&self) -> &[Vec<Vertex>] {
        &self.cliques
    }

    pub fn clique(&self, i: usize) -> &[Vertex] {
        &self.cliques[i]
    }

    pub fn edges(&self) -> &[(usize, usize, usize)] {
        &self.edges
    }

    pub fn total_weight(&self) -> usize {
        self.edges.iter().map(|e| e.2).sum()
    }

    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|&(a, b, _)| match (a == i, b == i) {
                (true, _) => Some(b),
                (_, true) => Some(a),
                _ => None,
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// The tree itself as an undirected graph on clique indices.
    pub fn as_graph(&self) -> MixedGraph {
        let mut t = MixedGraph::new(self.len());
        for &(a, b, _) in &self.edges {
            t.add_undirected(a, b).expect("tree edges are simple");
        }
        t
    }

    /// For every vertex, the cliques containing it induce a connected subtree.
    pub fn has_intersection_property(&self) -> bool {
        let mut containing: HashMap<Vertex, Vec<usize>> = HashMap::new();
        for (i, c) in self.cliques.iter().enumerate() {
            for &v in c {
                containing.entry(v).or_default().push(i);
            }
        }
        containing.values().all(|cl| {
            let mut ds = DisjointSet::new(self.len());
            let mut joins = 0;
            for &(a, b, _) in &self.edges {
                if cl.binary_search(&a).is_ok() && cl.binary_search(&b).is_ok() && ds.union(a, b) {
                    joins += 1;
                }
            }
            joins + 1 == cl.len()
        })
    }
}

/// Maximum-weight spanning tree of the clique intersection graph. Among equal
/// weights the lexicographically smallest clique-index pair is taken first.
pub fn build_clique_tree(g: &MixedGraph) -> Result<CliqueTree, ChordalError> {
    let peo = lex_bfs_peo(g)?;
    if !g.is_connected() {
        return Err(ChordalError::Disconnected);
    }
    Ok(clique_tree_from_cliques(maximal_cliques(g, &peo)))
}

fn clique_tree_from_cliques(cliques: Vec<Vec<Vertex>>) -> CliqueTree {
    let mut containing: HashMap<Vertex, Vec<usize>> = HashMap::new();
    for (i, c) in cliques.iter().enumerate() {
        for &v in c {
            containing.entry(v).or_default().push(i);
        }
    }
    let mut weight: HashMap<(usize, usize), usize> = HashMap::new();
    for cl in containing.values() {
        for (x, &a) in cl.iter().enumerate() {
            for &b in &cl[x + 1..] {
                *weight.entry((a, b)).or_default() += 1;
            }
        }
    }
    let mut candidates: Vec<(usize, usize, usize)> = weight.into_iter().map(|((a, b), w)| (a, b, w)).collect();
    candidates.sort_unstable_by_key(|&(a, b, w)| (Reverse(w), a, b));
    let mut ds = DisjointSet::new(cliques.len());
    let edges = candidates.into_iter().filter(|&(a, b, _)| ds.union(a, b)).collect();
    CliqueTree { cliques, edges }
}

/// One clique tree per connected component, in global vertex ids, ordered by
/// smallest component member.
pub fn clique_forest(g: &MixedGraph) -> Result<Vec<CliqueTree>, ChordalError> {
    let peo = lex_bfs_peo(g)?;
    let cliques = maximal_cliques(g, &peo);
    let comps = g.connected_components();
    let mut comp_of = vec![0usize; g.n()];
    for (i, c) in comps.iter().enumerate() {
        for &v in c {
            comp_of[v] = i;
        }
    }
    let mut grouped: Vec<Vec<Vec<Vertex>>> = vec![Vec::new(); comps.len()];
    for c in cliques {
        grouped[comp_of[c[0]]].push(c);
    }
    Ok(grouped.into_iter().map(clique_tree_from_cliques).collect())
}

/// Clique number of a chordal graph.
pub fn max_clique_size(g: &MixedGraph) -> Result<usize, ChordalError> {
    let peo = lex_bfs_peo(g)?;
    Ok(maximal_cliques(g, &peo).iter().map(Vec::len).max().unwrap_or(0))
}

/// Maximum independent set by taking vertices greedily in elimination order.
pub fn maximum_independent_set(g: &MixedGraph) -> Result<Vec<Vertex>, ChordalError> {
    let peo = lex_bfs_peo(g)?;
    let mut blocked = vec![false; g.n()];
    let mut set = Vec::new();
    for &v in peo.order() {
        if blocked[v] {
            continue;
        }
        set.push(v);
        for &w in g.neighbors(v) {
            blocked[w] = true;
        }
    }
    set.sort_unstable();
    Ok(set)
}

/// Minimum vertex cover: the complement of a maximum independent set.
pub fn min_vertex_cover_chordal(g: &MixedGraph) -> Result<Vec<Vertex>, ChordalError> {
    let independent = maximum_independent_set(g)?;
    let mut in_set = vec![false; g.n()];
    for v in independent {
        in_set[v] = true;
    }
    Ok((0..g.n()).filter(|&v| !in_set[v]).collect())
}

/// Whether deleting clique node `i` separates the graph the way the tree
/// says: vertices outside `K_i` that sit in cliques of different subtrees of
/// `t - i` must be disconnected in `g - K_i`.
pub fn clique_tree_separation_check(t: &CliqueTree, g: &MixedGraph, i: usize) -> bool {
    let n = g.n();
    let mut removed = vec![false; n];
    for &v in t.clique(i) {
        removed[v] = true;
    }
    let mut label = vec![usize::MAX; n];
    let mut next = 0;
    for s in 0..n {
        if removed[s] || label[s] != usize::MAX {
            continue;
        }
        label[s] = next;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &w in g.neighbors(u) {
                if !removed[w] && label[w] == usize::MAX {
                    label[w] = next;
                    stack.push(w);
                }
            }
        }
        next += 1;
    }

    let tree = t.as_graph();
    let mut subtree = vec![usize::MAX; t.len()];
    let mut sub_id = 0;
    for s in 0..t.len() {
        if s == i || subtree[s] != usize::MAX {
            continue;
        }
        subtree[s] = sub_id;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &w in tree.neighbors(u) {
                if w != i && subtree[w] == usize::MAX {
                    subtree[w] = sub_id;
                    stack.push(w);
                }
            }
        }
        sub_id += 1;
    }

    let mut owner: HashMap<usize, usize> = HashMap::new();
    for (j, clique) in t.cliques().iter().enumerate() {
        if j == i {
            continue;
        }
        for &v in clique.iter().filter(|&&v| !removed[v]) {
            let o = *owner.entry(label[v]).or_insert(subtree[j]);
            if o != subtree[j] {
                return false;
            }
        }
    }
    true
}
