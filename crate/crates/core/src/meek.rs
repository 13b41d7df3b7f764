//! Orientation propagation with the four Meek rules.
//!
//! For an undirected edge `x - y` the rules orient `x -> y` when:
//!
//! * R1: some `c -> x` with `c` not adjacent to `y`;
//! * R2: some `x -> c -> y`;
//! * R3: some `c - x - d` with `c -> y <- d` and `c`, `d` non-adjacent;
//! * R4: some `d - x` and `c` adjacent to `x` with `d -> c -> y` and `d`, `y`
//!   non-adjacent.

use alloc::collections::VecDeque;
use alloc::vec::Vec;

use hashbrown::HashSet;
use thiserror::Error;

use crate::graph::{Edge, MixedGraph, Vertex};

/// Why an arc got its direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum RuleTag {
    /// Part of an observational v-structure.
    V,
    /// Cut by an intervention.
    I,
    R1,
    R2,
    R3,
    R4,
}

/// Arcs added by one propagation step, in application order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct OrientationDelta {
    pub oriented: Vec<(Vertex, Vertex, RuleTag)>,
}

impl OrientationDelta {
    pub fn len(&self) -> usize {
        self.oriented.len()
    }

    pub fn is_empty(&self) -> bool {
        self.oriented.is_empty()
    }

    pub fn push(&mut self, tail: Vertex, head: Vertex, rule: RuleTag) {
        self.oriented.push((tail, head, rule));
    }

    pub fn extend(&mut self, other: OrientationDelta) {
        self.oriented.extend(other.oriented);
    }

    /// `(tail, head)` pairs without the rule tags.
    pub fn arcs(&self) -> Vec<(Vertex, Vertex)> {
        self.oriented.iter().map(|&(u, v, _)| (u, v)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MeekError {
    #[error("rules imply both {0} -> {1} and {1} -> {0}")]
    Conflict(Vertex, Vertex),
    #[error("closure produced a directed cycle")]
    DirectedCycle,
}

/// First rule, scanning R1 to R4, that orients the undirected edge `x - y` as
/// `x -> y`.
pub fn rule_implies(g: &MixedGraph, x: Vertex, y: Vertex) -> Option<RuleTag> {
    if g.parents(x).any(|c| c != y && !g.is_adjacent(c, y)) {
        return Some(RuleTag::R1);
    }
    if g.children(x).any(|c| g.has_arc(c, y)) {
        return Some(RuleTag::R2);
    }
    let into_y: Vec<Vertex> = g.undirected_neighbors(x).filter(|&c| c != y && g.has_arc(c, y)).collect();
    for (i, &c) in into_y.iter().enumerate() {
        if into_y[i + 1..].iter().any(|&d| !g.is_adjacent(c, d)) {
            return Some(RuleTag::R3);
        }
    }
    for c in g.parents(y) {
        if c == x || !g.is_adjacent(c, x) {
            continue;
        }
        if g.parents(c).any(|d| d != x && g.has_undirected(d, x) && !g.is_adjacent(d, y)) {
            return Some(RuleTag::R4);
        }
    }
    None
}

/// Applies R1-R4 until no rule fires.
///
/// Uses a worklist of undirected edges: after orienting `a -> b`, only edges
/// touching `a`, `b` or a neighbor of `b` can gain a firing rule.
pub fn meek_closure(g: &MixedGraph) -> Result<(MixedGraph, OrientationDelta), MeekError> {
    let mut out = g.clone();
    let delta = close_in_place(&mut out, g.undirected_edges())?;
    Ok((out, delta))
}

/// Closure restricted to a starting worklist; edges outside it are only
/// examined once something near them changes.
pub(crate) fn close_in_place(g: &mut MixedGraph, seed: Vec<(Vertex, Vertex)>) -> Result<OrientationDelta, MeekError> {
    let mut delta = OrientationDelta::default();
    let mut queued: HashSet<(Vertex, Vertex)> = HashSet::with_capacity(seed.len());
    let mut queue: VecDeque<(Vertex, Vertex)> = VecDeque::with_capacity(seed.len());
    for k in seed {
        if queued.insert(k) {
            queue.push_back(k);
        }
    }

    while let Some((x, y)) = queue.pop_front() {
        queued.remove(&(x, y));
        if g.edge(x, y) != Some(Edge::Undirected) {
            continue;
        }
        let (tail, head, rule) = match (rule_implies(g, x, y), rule_implies(g, y, x)) {
            (None, None) => continue,
            (Some(_), Some(_)) => return Err(MeekError::Conflict(x, y)),
            (Some(r), None) => (x, y, r),
            (None, Some(r)) => (y, x, r),
        };
        g.orient(tail, head).expect("edge was undirected");
        delta.push(tail, head, rule);

        let mut touched: Vec<Vertex> = alloc::vec![tail, head];
        touched.extend_from_slice(g.neighbors(head));
        for u in touched {
            for w in g.undirected_neighbors(u).collect::<Vec<_>>() {
                let k = if u < w { (u, w) } else { (w, u) };
                if queued.insert(k) {
                    queue.push_back(k);
                }
            }
        }
    }

    if has_directed_cycle(g) {
        return Err(MeekError::DirectedCycle);
    }
    Ok(delta)
}

fn has_directed_cycle(g: &MixedGraph) -> bool {
    g.topological_order().is_none()
}

/// Whether the arcs extend to a DAG on the skeleton without creating any new
/// v-structure.
///
/// Repeatedly removes a vertex that has no outgoing arc and whose undirected
/// neighbors are adjacent to all of its other neighbors; succeeds iff every
/// vertex can be removed.
pub fn has_consistent_extension(g: &MixedGraph) -> bool {
    let mut h = g.clone();
    let mut alive: Vec<Vertex> = (0..h.n()).collect();
    while !alive.is_empty() {
        let pick = alive.iter().position(|&x| {
            h.children(x).next().is_none()
                && h.undirected_neighbors(x).all(|y| h.neighbors(x).iter().all(|&z| z == y || h.is_adjacent(y, z)))
        });
        let Some(i) = pick else { return false };
        let x = alive.swap_remove(i);
        for y in h.neighbors(x).to_vec() {
            h.remove_edge(x, y);
        }
    }
    true
}
