//! Round-limited search strategies.
//!
//! Every strategy is a sequence of planned steps. A step proposes a batch of
//! interventions from the current essential graph and executes it in one
//! adaptivity round. The last step intervenes on whatever is still relevant.
//! With checks enabled, a batch may be split: before an intervention the
//! interventions queued so far are executed as their own round, and the
//! next one is dropped if it can no longer cut anything. Each such split
//! spends one round from the check budget.

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::chordal::{build_clique_tree, lex_bfs_peo, maximal_cliques, min_vertex_cover_chordal, ChordalError};
use crate::graph::{ChainComponent, MixedGraph, Vertex};
use crate::meek::RuleTag;
use crate::oracle::{cut_edges, EssentialState, HiddenDag, InterventionSet, OracleError, Orienter};
use crate::partition::{ceil_log2, int_root_ceil, partition_adjacency};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("round budget must be at least 1")]
    ZeroRounds,
    #[error("size bound must be at least 1")]
    ZeroSize,
    #[error("this strategy needs k = 1")]
    NeedsAtomic,
    #[error("this strategy needs k > 1")]
    NeedsBounded,
    #[error("checks are disabled in the configuration")]
    ChecksDisabled,
    #[error("essential graph is not an undirected path")]
    NotAPath,
    #[error("essential graph is not an undirected tree")]
    NotATree,
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Chordal(#[from] ChordalError),
    #[error("search finished with {0} undirected edges left")]
    Incomplete(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SearchConfig {
    /// Adaptivity rounds available.
    pub r: usize,
    /// Largest intervention size.
    pub k: usize,
    pub checks_enabled: bool,
    /// Rounds reserved for checks. `None` derives `r - min(r, ceil(log2 n))`.
    pub check_budget: Option<usize>,
    /// Final round intervenes on a minimum vertex cover of the relevant
    /// vertices instead of all of them.
    pub final_round_vc_optimization: bool,
    /// Switch to the final round as soon as it is cheaper than the next
    /// partition round; unused rounds become checks.
    pub early_final_round: bool,
}

impl SearchConfig {
    /// Plain atomic configuration: no checks, no optimizations.
    pub fn atomic(r: usize) -> Self {
        SearchConfig {
            r,
            k: 1,
            checks_enabled: false,
            check_budget: None,
            final_round_vc_optimization: false,
            early_final_round: false,
        }
    }

    pub fn bounded(r: usize, k: usize) -> Self {
        SearchConfig { k, ..Self::atomic(r) }
    }

    /// Checks, vertex-cover final round and the early switch all on.
    pub fn optimized(r: usize, k: usize) -> Self {
        SearchConfig {
            r,
            k,
            checks_enabled: true,
            check_budget: None,
            final_round_vc_optimization: true,
            early_final_round: true,
        }
    }

    /// Rounds spent on partition steps plus the final step.
    pub fn effective_rounds(&self, n: usize) -> usize {
        self.r.min(ceil_log2(n)).max(1)
    }

    /// `ceil(n^(1/r_eff))`.
    pub fn partition_width(&self, n: usize) -> usize {
        int_root_ceil(n, self.effective_rounds(n))
    }

    pub fn derived_check_budget(&self, n: usize) -> usize {
        self.check_budget.unwrap_or(self.r - self.effective_rounds(n))
    }

    fn validate(&self) -> Result<(), SearchError> {
        if self.r == 0 {
            return Err(SearchError::ZeroRounds);
        }
        if self.k == 0 {
            return Err(SearchError::ZeroSize);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Phase {
    Partition,
    Final,
}

/// A non-singleton chain component as seen before a round.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ComponentSummary {
    pub size: usize,
    pub cliques: usize,
    pub max_clique: usize,
}

/// One executed adaptivity round.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RoundRecord {
    /// 1-based planned step this round belongs to.
    pub step: usize,
    pub phase: Phase,
    pub interventions: Vec<Vec<Vertex>>,
    pub oriented: Vec<(Vertex, Vertex, RuleTag)>,
    /// Interventions dropped by the check that opened this round.
    pub skipped: usize,
    /// Non-singleton chain components before the round.
    pub components: Vec<ComponentSummary>,
    /// Sum of half clique numbers before the round.
    pub lower_bound: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SearchTranscript {
    pub n: usize,
    pub r: usize,
    pub k: usize,
    /// Partition width `L`.
    pub width: usize,
    /// Planned steps, partition rounds plus the final one.
    pub steps: usize,
    pub check_budget: usize,
    pub rounds: Vec<RoundRecord>,
    pub total_interventions: usize,
    pub total_rounds_used: usize,
    pub checks_used: usize,
    /// Step at which the early switch fired, if it did.
    pub early_final_at: Option<usize>,
    pub final_graph: MixedGraph,
}

impl SearchTranscript {
    /// All interventions in execution order.
    pub fn interventions(&self) -> InterventionSet {
        let sets: Vec<Vec<Vertex>> = self.rounds.iter().flat_map(|r| r.interventions.iter().cloned()).collect();
        InterventionSet::from_sets(sets, self.k).expect("recorded interventions are valid")
    }

    pub fn is_complete(&self) -> bool {
        self.final_graph.is_fully_directed()
    }

    /// Interventions per planned step.
    pub fn step_costs(&self) -> Vec<usize> {
        let mut out = vec![0; self.steps];
        for r in &self.rounds {
            out[r.step - 1] += r.interventions.len();
        }
        out
    }

    /// Lower bound recorded by the first round of each step that ran.
    pub fn step_lower_bounds(&self) -> Vec<Option<usize>> {
        let mut out = vec![None; self.steps];
        for r in &self.rounds {
            out[r.step - 1].get_or_insert(r.lower_bound);
        }
        out
    }
}

/// How partition steps pick their vertices.
enum Planner {
    /// Evenly spaced vertices of each surviving subpath; `position` is the
    /// index along the original path.
    Path { position: Vec<usize> },
    /// Balanced partition of each tree component itself.
    Tree,
    /// Balanced partition of each component's clique tree.
    Cliques,
}

/// Vertex sets chosen by a partition step, one per component.
fn partition_sets(planner: &Planner, state: &EssentialState, width: usize) -> Result<Vec<Vec<Vertex>>, SearchError> {
    let mut out = Vec::new();
    for comp in state.chain_components().into_iter().filter(|c| !c.is_singleton()) {
        let chosen = match planner {
            Planner::Path { position } => {
                let mut verts = comp.vertices.clone();
                verts.sort_by_key(|&v| position[v]);
                let len = verts.len();
                let spacing = (len + 1).div_ceil(width + 1).max(2);
                let mut picks: Vec<Vertex> =
                    (1..).map(|j| j * spacing).take_while(|&p| p <= len).map(|p| verts[p - 1]).collect();
                picks.sort_unstable();
                picks
            }
            Planner::Tree => {
                let local = comp.to_local_graph();
                let adj: Vec<Vec<usize>> = (0..local.n()).map(|v| local.neighbors(v).to_vec()).collect();
                let part = partition_adjacency(&adj, width);
                let mut picks: Vec<Vertex> = part.removed.iter().map(|&i| comp.vertices[i]).collect();
                picks.sort_unstable();
                picks
            }
            Planner::Cliques => clique_partition_vertices(&comp, width)?,
        };
        out.push(chosen);
    }
    Ok(out)
}

/// Union of the cliques removed by a balanced partition of the component's
/// clique tree, or the whole component when it is a clique.
fn clique_partition_vertices(comp: &ChainComponent, width: usize) -> Result<Vec<Vertex>, SearchError> {
    let local = comp.to_local_graph();
    let all: Vec<usize> = (0..local.n()).collect();
    if local.is_clique(&all) {
        return Ok(comp.vertices.clone());
    }
    let tree = build_clique_tree(&local)?;
    let adj: Vec<Vec<usize>> = (0..tree.len()).map(|i| tree.neighbors(i)).collect();
    let part = partition_adjacency(&adj, width);
    let mut picked = vec![false; local.n()];
    for &c in &part.removed {
        for &v in tree.clique(c) {
            picked[v] = true;
        }
    }
    Ok((0..local.n()).filter(|&v| picked[v]).map(|v| comp.vertices[v]).collect())
}

/// What the final step would intervene on, per component: all relevant
/// vertices or a minimum vertex cover of them.
fn final_sets(state: &EssentialState, vc: bool) -> Result<Vec<Vec<Vertex>>, SearchError> {
    let mut out = Vec::new();
    for comp in state.chain_components().into_iter().filter(|c| !c.is_singleton()) {
        if vc {
            let cover = min_vertex_cover_chordal(&comp.to_local_graph())?;
            out.push(cover.into_iter().map(|v| comp.vertices[v]).collect());
        } else {
            out.push(comp.vertices.clone());
        }
    }
    Ok(out)
}

/// Turns per-component vertex sets into interventions of size at most `k`.
/// Partition steps separate each component on its own; the final step
/// separates the union, as a single separating system suffices there.
fn to_interventions(groups: Vec<Vec<Vertex>>, k: usize, merge: bool) -> Vec<Vec<Vertex>> {
    if k == 1 {
        let mut all: Vec<Vertex> = groups.into_iter().flatten().collect();
        all.sort_unstable();
        return all.into_iter().map(|v| vec![v]).collect();
    }
    if merge {
        let mut all: Vec<Vertex> = groups.into_iter().flatten().collect();
        all.sort_unstable();
        return labeling_separating_system(&all, k);
    }
    groups.into_iter().flat_map(|g| labeling_separating_system(&g, k)).collect()
}

fn summarize(state: &EssentialState) -> Result<(Vec<ComponentSummary>, usize), SearchError> {
    let mut out = Vec::new();
    let mut lb = 0;
    for comp in state.chain_components().into_iter().filter(|c| !c.is_singleton()) {
        let local = comp.to_local_graph();
        let peo = lex_bfs_peo(&local)?;
        let cliques = maximal_cliques(&local, &peo);
        let max_clique = cliques.iter().map(Vec::len).max().unwrap_or(0);
        lb += max_clique / 2;
        out.push(ComponentSummary { size: comp.len(), cliques: cliques.len(), max_clique });
    }
    Ok((out, lb))
}

struct Runner<'a, O: Orienter + ?Sized> {
    orienter: &'a mut O,
    state: EssentialState,
    checks_enabled: bool,
    checks_left: usize,
    checks_used: usize,
    rounds: Vec<RoundRecord>,
}

impl<O: Orienter + ?Sized> Runner<'_, O> {
    fn round(&mut self, step: usize, phase: Phase, batch: Vec<Vec<Vertex>>, skipped: usize) -> Result<(), SearchError> {
        let (components, lower_bound) = summarize(&self.state)?;
        let delta = self.state.apply_round(self.orienter, &batch)?;
        self.rounds.push(RoundRecord {
            step,
            phase,
            interventions: batch,
            oriented: delta.oriented,
            skipped,
            components,
            lower_bound,
        });
        Ok(())
    }

    /// Executes one planned batch, splitting it greedily while checks remain.
    fn execute(&mut self, step: usize, phase: Phase, batch: Vec<Vec<Vertex>>) -> Result<(), SearchError> {
        if batch.is_empty() {
            return Ok(());
        }
        if !self.checks_enabled || self.checks_left == 0 {
            return self.round(step, phase, batch, 0);
        }
        let mut pending: Vec<Vec<Vertex>> = Vec::new();
        let mut skipped = 0;
        for s in batch {
            if !pending.is_empty() && self.checks_left > 0 {
                let done = core::mem::take(&mut pending);
                self.round(step, phase, done, skipped)?;
                skipped = 0;
                self.checks_left -= 1;
                self.checks_used += 1;
            }
            // the state is known exactly when nothing is queued
            if pending.is_empty() && !s.iter().any(|&v| self.state.is_unresolved(v)) {
                skipped += 1;
                continue;
            }
            pending.push(s);
        }
        if !pending.is_empty() {
            self.round(step, phase, pending, skipped)?;
        } else if skipped > 0 {
            if let Some(last) = self.rounds.last_mut() {
                last.skipped += skipped;
            }
        }
        Ok(())
    }
}

/// Shared driver: `steps - 1` partition steps, then the final one.
fn drive<O: Orienter + ?Sized>(
    orienter: &mut O,
    start: EssentialState,
    cfg: &SearchConfig,
    planner: Planner,
    steps: usize,
    width: usize,
    check_budget: usize,
) -> Result<SearchTranscript, SearchError> {
    let n = start.n();
    let check_budget = if cfg.checks_enabled { check_budget } else { 0 };
    let mut run = Runner {
        orienter,
        state: start,
        checks_enabled: cfg.checks_enabled,
        checks_left: check_budget,
        checks_used: 0,
        rounds: Vec::new(),
    };
    let mut early_final_at = None;
    let mut step = 1;
    while step < steps && !run.state.is_fully_oriented() {
        let batch = to_interventions(partition_sets(&planner, &run.state, width)?, cfg.k, false);
        if cfg.early_final_round {
            let fallback = to_interventions(final_sets(&run.state, cfg.final_round_vc_optimization)?, cfg.k, true);
            if fallback.len() < batch.len() {
                early_final_at = Some(step);
                run.checks_left += steps - step;
                break;
            }
        }
        run.execute(step, Phase::Partition, batch)?;
        step += 1;
    }
    if !run.state.is_fully_oriented() {
        let batch = to_interventions(final_sets(&run.state, cfg.final_round_vc_optimization)?, cfg.k, true);
        run.execute(step, Phase::Final, batch)?;
    }
    let left = run.state.graph().undirected_count();
    if left > 0 {
        return Err(SearchError::Incomplete(left));
    }
    let total_interventions = run.rounds.iter().map(|r| r.interventions.len()).sum();
    Ok(SearchTranscript {
        n,
        r: cfg.r,
        k: cfg.k,
        width,
        steps,
        check_budget,
        total_rounds_used: run.rounds.len(),
        total_interventions,
        checks_used: run.checks_used,
        rounds: run.rounds,
        early_final_at,
        final_graph: run.state.graph().clone(),
    })
}

/// Clique-tree partition search against any orienter, starting from `start`.
/// Handles both atomic and bounded sizes; `r` is clamped to `ceil(log2 n)`
/// and the surplus becomes the check budget.
pub fn search_on<O: Orienter + ?Sized>(
    orienter: &mut O,
    start: EssentialState,
    cfg: &SearchConfig,
) -> Result<SearchTranscript, SearchError> {
    cfg.validate()?;
    let n = start.n();
    let start = rebound(start, cfg.k)?;
    drive(
        orienter,
        start,
        cfg,
        Planner::Cliques,
        cfg.effective_rounds(n),
        cfg.partition_width(n),
        cfg.derived_check_budget(n),
    )
}

fn rebound(start: EssentialState, k: usize) -> Result<EssentialState, SearchError> {
    if start.size_bound() == k {
        return Ok(start);
    }
    Ok(EssentialState::from_graph(start.graph().clone(), k)?)
}

/// Atomic clique-tree partition search.
pub fn adaptive_search(hidden: &HiddenDag, cfg: &SearchConfig) -> Result<SearchTranscript, SearchError> {
    if cfg.k != 1 {
        return Err(SearchError::NeedsAtomic);
    }
    search_on(&mut hidden.clone(), hidden.observe(), cfg)
}

/// Clique-tree partition search with interventions of size up to `k > 1`,
/// built by [`labeling_separating_system`].
pub fn adaptive_search_bounded(hidden: &HiddenDag, cfg: &SearchConfig) -> Result<SearchTranscript, SearchError> {
    if cfg.k <= 1 {
        return Err(SearchError::NeedsBounded);
    }
    search_on(&mut hidden.clone(), hidden.observe_with_bound(cfg.k), cfg)
}

/// [`adaptive_search`] or [`adaptive_search_bounded`] with checks.
pub fn run_with_checks(hidden: &HiddenDag, cfg: &SearchConfig) -> Result<SearchTranscript, SearchError> {
    if !cfg.checks_enabled {
        return Err(SearchError::ChecksDisabled);
    }
    search_on(&mut hidden.clone(), hidden.observe_with_bound(cfg.k), cfg)
}

/// Atomic minimum vertex cover of every chain component, one singleton per
/// vertex. Cuts every undirected edge.
pub fn separating_system_nonadaptive(state: &EssentialState) -> Result<InterventionSet, SearchError> {
    let groups = final_sets(state, true)?;
    let sets = to_interventions(groups, state.size_bound(), true);
    Ok(InterventionSet::from_sets(sets, state.size_bound())?)
}

/// Position of each vertex along the path, or `None` if `g` is not one
/// undirected path through all vertices.
fn path_positions(g: &MixedGraph) -> Option<Vec<usize>> {
    let n = g.n();
    if n == 0 || g.arc_count() > 0 || g.edge_count() + 1 != n || (0..n).any(|v| g.degree(v) > 2) || !g.is_connected() {
        return None;
    }
    let start = (0..n).find(|&v| g.degree(v) <= 1)?;
    let mut position = vec![usize::MAX; n];
    let (mut prev, mut cur) = (usize::MAX, start);
    for i in 0..n {
        position[cur] = i;
        match g.neighbors(cur).iter().copied().find(|&w| w != prev) {
            Some(next) => {
                prev = cur;
                cur = next;
            }
            None => break,
        }
    }
    Some(position)
}

/// Path strategy against any orienter: `r - 1` rounds of evenly spaced
/// interventions on the surviving subpath, then every relevant vertex.
pub fn path_search_on<O: Orienter + ?Sized>(
    orienter: &mut O,
    start: EssentialState,
    cfg: &SearchConfig,
) -> Result<SearchTranscript, SearchError> {
    cfg.validate()?;
    if cfg.k != 1 {
        return Err(SearchError::NeedsAtomic);
    }
    let position = path_positions(start.graph()).ok_or(SearchError::NotAPath)?;
    let n = start.n();
    let start = rebound(start, 1)?;
    let budget = cfg.check_budget.unwrap_or(0);
    drive(orienter, start, cfg, Planner::Path { position }, cfg.r, int_root_ceil(n, cfg.r), budget)
}

pub fn path_search(hidden: &HiddenDag, r: usize) -> Result<SearchTranscript, SearchError> {
    path_search_on(&mut hidden.clone(), hidden.observe(), &SearchConfig::atomic(r))
}

/// Tree strategy: balanced partition of the tree component itself in each of
/// the first `r - 1` rounds, then every relevant vertex.
pub fn tree_search_on<O: Orienter + ?Sized>(
    orienter: &mut O,
    start: EssentialState,
    cfg: &SearchConfig,
) -> Result<SearchTranscript, SearchError> {
    cfg.validate()?;
    if cfg.k != 1 {
        return Err(SearchError::NeedsAtomic);
    }
    let g = start.graph();
    let n = g.n();
    if n == 0 || g.arc_count() > 0 || g.edge_count() + 1 != n || !g.is_connected() {
        return Err(SearchError::NotATree);
    }
    let start = rebound(start, 1)?;
    let budget = cfg.check_budget.unwrap_or(0);
    drive(orienter, start, cfg, Planner::Tree, cfg.r, int_root_ceil(n, cfg.r), budget)
}

pub fn tree_search(hidden: &HiddenDag, r: usize) -> Result<SearchTranscript, SearchError> {
    tree_search_on(&mut hidden.clone(), hidden.observe(), &SearchConfig::atomic(r))
}

/// Words of length `ell` over letters `1..=a`, one per element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelingScheme {
    pub n: usize,
    /// Effective size bound, `min(k, n / 2)` rounded up to an integer bound.
    pub k_prime: usize,
    pub a: usize,
    pub ell: usize,
    pub labels: Vec<Vec<usize>>,
}

impl LabelingScheme {
    /// `n` elements with sets of size at most `k` (`k >= 1`, `n >= 2`).
    ///
    /// Letters at position `x` are handed out class by class, where a class
    /// is a residue modulo `a^x`; inside a class consecutive members get
    /// consecutive letters and the letter counter carries over between
    /// classes. Members of one class differ in digit `x` iff they get
    /// different letters, which keeps labels distinct, and the carried
    /// counter keeps every letter count within `ceil(n / a)`.
    pub fn new(n: usize, k: usize) -> Self {
        assert!(n >= 2 && k >= 1);
        let (k_prime, a) = if 2 * k <= n { (k, n.div_ceil(k)) } else { (n.div_ceil(2), 2) };
        let mut ell = 0;
        let mut pow = 1usize;
        while pow < n {
            pow = pow.saturating_mul(a);
            ell += 1;
        }
        let mut labels = vec![vec![0usize; ell]; n];
        let mut stride = 1usize;
        for x in 0..ell {
            let mut counter = 0usize;
            for residue in 0..stride.min(n) {
                let mut t = residue;
                let mut s = 0;
                while t < n {
                    labels[t][x] = (counter + s) % a + 1;
                    s += 1;
                    t += stride;
                }
                counter += s;
            }
            stride = stride.saturating_mul(a);
        }
        LabelingScheme { n, k_prime, a, ell, labels }
    }

    /// `S_{x,y}`: element indices whose letter at `x` is `y`.
    pub fn set(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.n).filter(|&t| self.labels[t][x] == y).collect()
    }
}

/// A family of subsets of `a`, each of size at most `k`, such that every pair
/// of elements is split by some member and every element is in some member.
///
/// `k = 1` gives singletons. Otherwise the sets come from
/// [`LabelingScheme`]; if that family would be larger than `|a|`, singletons
/// are returned instead since they are smaller and equally valid.
pub fn labeling_separating_system(a: &[Vertex], k: usize) -> Vec<Vec<Vertex>> {
    assert!(k >= 1, "size bound must be at least 1");
    if k == 1 || a.len() <= 1 {
        return a.iter().map(|&v| vec![v]).collect();
    }
    let scheme = LabelingScheme::new(a.len(), k);
    let mut out = Vec::new();
    for x in 0..scheme.ell {
        for y in 1..=scheme.a {
            let members = scheme.set(x, y);
            if !members.is_empty() {
                let mut s: Vec<Vertex> = members.into_iter().map(|t| a[t]).collect();
                s.sort_unstable();
                out.push(s);
            }
        }
    }
    if out.len() > a.len() {
        return a.iter().map(|&v| vec![v]).collect();
    }
    out
}

/// Adversary for undirected paths `0 - 1 - ... - (n-1)`.
///
/// It keeps the hidden source undecided inside an interval of candidates.
/// When a batch arrives it keeps the longest run of candidates that no
/// intervention touches (leftmost on ties) and answers every cut edge as if
/// the source were inside that run: edges left of it point left, edges
/// right of it point right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathAdversary {
    n: usize,
    lo: usize,
    hi: usize,
}

impl PathAdversary {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        PathAdversary { n, lo: 0, hi: n - 1 }
    }

    /// The undirected path the adversary plays on.
    pub fn essential_graph(&self) -> MixedGraph {
        let edges: Vec<(Vertex, Vertex)> = (0..self.n - 1).map(|i| (i, i + 1)).collect();
        MixedGraph::undirected(self.n, &edges).expect("path edges are simple")
    }

    /// Inclusive interval still consistent with every answer.
    pub fn candidates(&self) -> (usize, usize) {
        (self.lo, self.hi)
    }

    /// Source once only one candidate is left.
    pub fn source(&self) -> Option<usize> {
        (self.lo == self.hi).then_some(self.lo)
    }

    /// Narrows the candidate interval given the intervened vertices and
    /// returns it.
    pub fn respond(&mut self, intervened: &[Vertex]) -> (usize, usize) {
        let mut hit = vec![false; self.n];
        for &v in intervened {
            hit[v] = true;
        }
        let mut best: Option<(usize, usize)> = None;
        let mut run_start = None;
        for v in self.lo..=self.hi + 1 {
            let free = v <= self.hi && !hit[v];
            match (free, run_start) {
                (true, None) => run_start = Some(v),
                (false, Some(s)) => {
                    if best.map_or(true, |(bs, be)| v - s > be + 1 - bs) {
                        best = Some((s, v - 1));
                    }
                    run_start = None;
                }
                _ => {}
            }
        }
        let (lo, hi) = best.unwrap_or((self.lo, self.lo));
        self.lo = lo;
        self.hi = hi;
        (lo, hi)
    }
}

impl Orienter for PathAdversary {
    fn n(&self) -> usize {
        self.n
    }

    fn orient_cuts(&mut self, g: &MixedGraph, batch: &[Vec<Vertex>]) -> Vec<(Vertex, Vertex)> {
        let intervened: Vec<Vertex> = batch.iter().flatten().copied().collect();
        let (lo, hi) = self.respond(&intervened);
        cut_edges(g, batch)
            .into_iter()
            .map(|(u, v)| {
                let (a, b) = if u < v { (u, v) } else { (v, u) };
                if b <= lo {
                    (b, a)
                } else {
                    debug_assert!(a >= hi);
                    (a, b)
                }
            })
            .collect()
    }
}
