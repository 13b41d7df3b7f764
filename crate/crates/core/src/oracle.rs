//! Ideal-intervention simulator.
//!
//! An intervention on `S` reveals the true direction of every edge with
//! exactly one endpoint in `S`. Within one round all cut edges are oriented
//! first and the Meek closure runs once afterwards.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::graph::{ChainComponent, Edge, GraphError, MixedGraph, Vertex};
use crate::meek::{close_in_place, meek_closure, MeekError, OrientationDelta, RuleTag};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("intervention of size {size} exceeds bound {bound}")]
    TooLarge { size: usize, bound: usize },
    #[error("empty intervention")]
    Empty,
    #[error("vertex {0} repeated inside one intervention")]
    Repeated(Vertex),
    #[error("size bound must be at least 1")]
    ZeroBound,
    #[error("orientation answer disagrees with the current graph at {0} -> {1}")]
    BadAnswer(Vertex, Vertex),
    #[error(transparent)]
    Meek(#[from] MeekError),
}

/// An ordered collection of interventions, each of size at most `size_bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct InterventionSet {
    interventions: Vec<Vec<Vertex>>,
    size_bound: usize,
}

impl InterventionSet {
    pub fn new(size_bound: usize) -> Result<Self, OracleError> {
        if size_bound == 0 {
            return Err(OracleError::ZeroBound);
        }
        Ok(InterventionSet { interventions: Vec::new(), size_bound })
    }

    /// One singleton intervention per vertex.
    pub fn atomic(vertices: &[Vertex]) -> Self {
        InterventionSet { interventions: vertices.iter().map(|&v| vec![v]).collect(), size_bound: 1 }
    }

    pub fn from_sets(sets: Vec<Vec<Vertex>>, size_bound: usize) -> Result<Self, OracleError> {
        let mut out = Self::new(size_bound)?;
        for s in sets {
            out.push(s)?;
        }
        Ok(out)
    }

    /// Adds an intervention; the vertex list is stored sorted.
    pub fn push(&mut self, mut set: Vec<Vertex>) -> Result<(), OracleError> {
        set.sort_unstable();
        check_set(&set, self.size_bound, usize::MAX)?;
        self.interventions.push(set);
        Ok(())
    }

    pub fn size_bound(&self) -> usize {
        self.size_bound
    }

    pub fn len(&self) -> usize {
        self.interventions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.interventions.is_empty()
    }

    pub fn interventions(&self) -> &[Vec<Vertex>] {
        &self.interventions
    }

    pub fn iter(&self) -> impl Iterator<Item = &[Vertex]> {
        self.interventions.iter().map(|s| s.as_slice())
    }

    /// Concatenation; the bound is the larger of the two.
    pub fn union(&self, other: &InterventionSet) -> InterventionSet {
        let mut interventions = self.interventions.clone();
        interventions.extend(other.interventions.iter().cloned());
        InterventionSet { interventions, size_bound: self.size_bound.max(other.size_bound) }
    }
}

fn check_set(set: &[Vertex], bound: usize, n: usize) -> Result<(), OracleError> {
    if set.is_empty() {
        return Err(OracleError::Empty);
    }
    if set.len() > bound {
        return Err(OracleError::TooLarge { size: set.len(), bound });
    }
    let mut sorted = set.to_vec();
    sorted.sort_unstable();
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            return Err(OracleError::Repeated(w[0]));
        }
    }
    if let Some(&v) = sorted.last() {
        if v >= n {
            return Err(GraphError::VertexOutOfRange { vertex: v, n }.into());
        }
    }
    Ok(())
}

/// Something that answers which way the cut edges of a batch point.
///
/// Implemented by [`HiddenDag`] and by adversaries that pick the ground truth
/// lazily.
pub trait Orienter {
    fn n(&self) -> usize;

    /// Directions for every undirected edge of `g` that some set in `batch`
    /// cuts. Each returned pair must be an undirected edge of `g`.
    fn orient_cuts(&mut self, g: &MixedGraph, batch: &[Vec<Vertex>]) -> Vec<(Vertex, Vertex)>;
}

/// The undirected edges of `g` with exactly one endpoint in some set of
/// `batch`, as `(inside, outside)` pairs, deduplicated and sorted.
pub fn cut_edges(g: &MixedGraph, batch: &[Vec<Vertex>]) -> Vec<(Vertex, Vertex)> {
    let mut member = vec![false; g.n()];
    let mut out = BTreeSet::new();
    for s in batch {
        for &v in s {
            member[v] = true;
        }
        for &v in s {
            for w in g.undirected_neighbors(v) {
                if !member[w] {
                    out.insert(if v < w { (v, w) } else { (w, v) });
                }
            }
        }
        for &v in s {
            member[v] = false;
        }
    }
    out.into_iter().collect()
}

/// The ground-truth DAG. Search code only sees it through [`Orienter`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HiddenDag {
    dag: MixedGraph,
}

impl HiddenDag {
    pub fn new(dag: MixedGraph) -> Result<Self, GraphError> {
        if !dag.is_dag() {
            return Err(GraphError::NotADag);
        }
        Ok(HiddenDag { dag })
    }

    pub fn n(&self) -> usize {
        self.dag.n()
    }

    /// The true graph. Meant for verification and reporting, not for search.
    pub fn dag(&self) -> &MixedGraph {
        &self.dag
    }

    /// The observational essential graph: v-structures oriented, then closed.
    pub fn observe(&self) -> EssentialState {
        self.observe_with_bound(1)
    }

    pub fn observe_with_bound(&self, size_bound: usize) -> EssentialState {
        let mut g = self.dag.skeleton();
        let mut delta = OrientationDelta::default();
        for (u, v, w) in self.dag.v_structures() {
            for t in [u, w] {
                if g.orient(t, v).expect("skeleton edge") {
                    delta.push(t, v, RuleTag::V);
                }
            }
        }
        let (graph, closure) = meek_closure(&g).expect("closure of a true essential graph");
        delta.extend(closure);
        EssentialState { graph, rounds: Vec::new(), size_bound: size_bound.max(1), initial: delta }
    }

    /// Performs one round of interventions.
    pub fn intervene(
        &self,
        state: &EssentialState,
        batch: &[Vec<Vertex>],
    ) -> Result<(EssentialState, OrientationDelta), OracleError> {
        let mut next = state.clone();
        let mut me = self.clone();
        let delta = next.apply_round(&mut me, batch)?;
        Ok((next, delta))
    }
}

impl Orienter for HiddenDag {
    fn n(&self) -> usize {
        self.dag.n()
    }

    fn orient_cuts(&mut self, g: &MixedGraph, batch: &[Vec<Vertex>]) -> Vec<(Vertex, Vertex)> {
        cut_edges(g, batch).into_iter().map(|(u, v)| if self.dag.has_arc(u, v) { (u, v) } else { (v, u) }).collect()
    }
}

/// The current interventional essential graph plus the rounds that led to it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EssentialState {
    graph: MixedGraph,
    rounds: Vec<Vec<Vec<Vertex>>>,
    size_bound: usize,
    initial: OrientationDelta,
}

impl EssentialState {
    /// Wraps an arbitrary chain graph, e.g. a hand-built essential graph.
    pub fn from_graph(graph: MixedGraph, size_bound: usize) -> Result<Self, OracleError> {
        if size_bound == 0 {
            return Err(OracleError::ZeroBound);
        }
        if graph.has_partially_directed_cycle() {
            return Err(GraphError::PartiallyDirectedCycle.into());
        }
        Ok(EssentialState { graph, rounds: Vec::new(), size_bound, initial: OrientationDelta::default() })
    }

    pub fn graph(&self) -> &MixedGraph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn size_bound(&self) -> usize {
        self.size_bound
    }

    /// Arcs present before any intervention, with their origin.
    pub fn observational_delta(&self) -> &OrientationDelta {
        &self.initial
    }

    /// Interventions grouped by round.
    pub fn rounds(&self) -> &[Vec<Vec<Vertex>>] {
        &self.rounds
    }

    pub fn intervention_count(&self) -> usize {
        self.rounds.iter().map(|r| r.len()).sum()
    }

    /// Every intervention so far, flattened.
    pub fn history(&self) -> InterventionSet {
        InterventionSet { interventions: self.rounds.iter().flatten().cloned().collect(), size_bound: self.size_bound }
    }

    pub fn is_fully_oriented(&self) -> bool {
        self.graph.is_fully_directed()
    }

    pub fn chain_components(&self) -> Vec<ChainComponent> {
        self.graph.chain_components().expect("essential graphs are chain graphs")
    }

    /// Vertices of `scope` with an undirected edge to another vertex of
    /// `scope`, ascending.
    pub fn relevant_nodes(&self, scope: &[Vertex]) -> Vec<Vertex> {
        relevant_nodes(&self.graph, scope)
    }

    /// Whether `v` still has an undirected incident edge.
    pub fn is_unresolved(&self, v: Vertex) -> bool {
        self.graph.has_undirected_incident(v)
    }

    /// Validates `batch`, asks `orienter` for the cut edges, orients them and
    /// closes under the Meek rules. An empty batch changes nothing and is not
    /// recorded.
    pub fn apply_round<O: Orienter + ?Sized>(
        &mut self,
        orienter: &mut O,
        batch: &[Vec<Vertex>],
    ) -> Result<OrientationDelta, OracleError> {
        let n = self.graph.n();
        for s in batch {
            check_set(s, self.size_bound, n)?;
        }
        if batch.is_empty() {
            return Ok(OrientationDelta::default());
        }
        let answers = orienter.orient_cuts(&self.graph, batch);
        let mut delta = OrientationDelta::default();
        let mut touched = vec![false; n];
        for (u, v) in answers {
            if self.graph.edge(u, v) != Some(Edge::Undirected) {
                return Err(OracleError::BadAnswer(u, v));
            }
            self.graph.orient(u, v)?;
            delta.push(u, v, RuleTag::I);
            for x in [u, v] {
                touched[x] = true;
                for &y in self.graph.neighbors(x) {
                    touched[y] = true;
                }
            }
        }
        let mut seed = Vec::new();
        for x in (0..n).filter(|&x| touched[x]) {
            for w in self.graph.undirected_neighbors(x) {
                if !touched[w] || x < w {
                    seed.push(if x < w { (x, w) } else { (w, x) });
                }
            }
        }
        delta.extend(close_in_place(&mut self.graph, seed)?);
        self.rounds.push(batch.iter().map(|s| sorted(s)).collect());
        Ok(delta)
    }
}

fn sorted(s: &[Vertex]) -> Vec<Vertex> {
    let mut s = s.to_vec();
    s.sort_unstable();
    s
}

/// Vertices of `scope` incident to an undirected edge of `g[scope]`.
pub fn relevant_nodes(g: &MixedGraph, scope: &[Vertex]) -> Vec<Vertex> {
    let mut inside = vec![false; g.n()];
    for &v in scope {
        inside[v] = true;
    }
    let mut out: Vec<Vertex> =
        scope.iter().copied().filter(|&v| g.undirected_neighbors(v).any(|w| inside[w])).collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Arcs of the interventional essential graph after performing every
/// intervention of `i`.
pub fn recovered_arcs(hidden: &HiddenDag, i: &InterventionSet) -> BTreeSet<(Vertex, Vertex)> {
    let mut state = hidden.observe_with_bound(i.size_bound());
    let mut me = hidden.clone();
    state.apply_round(&mut me, i.interventions()).expect("valid intervention set");
    state.graph().arcs().into_iter().collect()
}

/// The arcs of the hidden DAG that `i` leaves unoriented, as a DAG on the
/// same vertex set.
pub fn unoriented_subdag(hidden: &HiddenDag, i: &InterventionSet) -> MixedGraph {
    let rec = recovered_arcs(hidden, i);
    let keep: Vec<(Vertex, Vertex)> = hidden.dag().arcs().into_iter().filter(|a| !rec.contains(a)).collect();
    MixedGraph::directed(hidden.n(), &keep).expect("subgraph of a DAG")
}
