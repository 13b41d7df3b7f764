//! Benchmark sweeps over the synthetic families.
//!
//! A sweep generates one DAG per (template, n, trial), computes its atomic
//! verification number once, and runs every algorithm and size bound on it.
//! Trials run on the rayon pool; results are sorted before they are written,
//! so output order does not depend on scheduling.

use std::collections::BTreeMap;
use std::fs::{self, File};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;
use std::time::Instant;

use adaptivity_core::oracle::HiddenDag;
use adaptivity_core::partition::ceil_log2;
use adaptivity_core::search::{search_on, SearchConfig, SearchTranscript};
use adaptivity_core::synth::{trial_seed, Family, GeneratorConfig};
use adaptivity_core::verify::verification_number_atomic;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("invalid sweep spec: {0}")]
    Spec(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Json { path: String, source: serde_json::Error },
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> BenchError + '_ {
    move |source| BenchError::Io { path: path.display().to_string(), source }
}

/// The benchmarked round budgets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    AdaptiveR1,
    AdaptiveR2,
    AdaptiveR3,
    AdaptiveRlogn,
    AdaptiveR2logn,
    AdaptiveR3logn,
    AdaptiveRn,
}

impl Algorithm {
    pub const ALL: [Algorithm; 7] = [
        Algorithm::AdaptiveR1,
        Algorithm::AdaptiveR2,
        Algorithm::AdaptiveR3,
        Algorithm::AdaptiveRlogn,
        Algorithm::AdaptiveR2logn,
        Algorithm::AdaptiveR3logn,
        Algorithm::AdaptiveRn,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::AdaptiveR1 => "adaptive_r1",
            Algorithm::AdaptiveR2 => "adaptive_r2",
            Algorithm::AdaptiveR3 => "adaptive_r3",
            Algorithm::AdaptiveRlogn => "adaptive_rlogn",
            Algorithm::AdaptiveR2logn => "adaptive_r2logn",
            Algorithm::AdaptiveR3logn => "adaptive_r3logn",
            Algorithm::AdaptiveRn => "adaptive_rn",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|a| a.name() == s)
    }

    /// Round budget on an `n`-vertex instance, at least 1.
    pub fn rounds(self, n: usize) -> usize {
        let lg = ceil_log2(n);
        match self {
            Algorithm::AdaptiveR1 => 1,
            Algorithm::AdaptiveR2 => 2,
            Algorithm::AdaptiveR3 => 3,
            Algorithm::AdaptiveRlogn => lg,
            Algorithm::AdaptiveR2logn => 2 * lg,
            Algorithm::AdaptiveR3logn => 3 * lg,
            Algorithm::AdaptiveRn => n,
        }
        .max(1)
    }

    /// Benchmark configuration: checks on (they only fire when rounds exceed
    /// `ceil(log2 n)`), vertex-cover final round and early switch on.
    pub fn config(self, n: usize, k: usize) -> SearchConfig {
        SearchConfig::optimized(self.rounds(n), k)
    }
}

/// One family with its parameters and the sizes to sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorTemplate {
    #[serde(flatten)]
    pub family: Family,
    pub n: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub generators: Vec<GeneratorTemplate>,
    pub algorithms: Vec<Algorithm>,
    #[serde(default = "default_k")]
    pub k: Vec<usize>,
    #[serde(default = "default_trials")]
    pub trials: u64,
    #[serde(default)]
    pub master_seed: u64,
}

fn default_k() -> Vec<usize> {
    vec![1]
}

fn default_trials() -> u64 {
    100
}

impl SweepSpec {
    pub fn from_json(text: &str) -> Result<Self, BenchError> {
        let spec: SweepSpec = serde_json::from_str(text).map_err(|e| BenchError::Spec(e.to_string()))?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), BenchError> {
        if self.k.contains(&0) {
            return Err(BenchError::Spec("k must be at least 1".into()));
        }
        if let Some(g) = self.generators.iter().find(|g| g.n.iter().any(|&n| n < 2)) {
            return Err(BenchError::Spec(format!("{}: n must be at least 2", g.family.name())));
        }
        Ok(())
    }

    /// Number of result rows a run produces.
    pub fn cells(&self) -> usize {
        let sizes: usize = self.generators.iter().map(|g| g.n.len()).sum();
        sizes * self.trials as usize * self.algorithms.len() * self.k.len()
    }
}

/// `name=value` pairs of the family parameters, in a fixed order.
pub fn family_params(f: &Family) -> String {
    match *f {
        Family::ErStyled { rho } => format!("rho={rho}"),
        Family::TreeLike { d_prop, e_min_prop, e_max_prop } => {
            format!("d_prop={d_prop};e_min_prop={e_min_prop};e_max_prop={e_max_prop}")
        }
        Family::GnpUnionTree { p } => format!("p={p}"),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialResult {
    pub family: String,
    pub params: String,
    pub algorithm: String,
    pub r: usize,
    pub k: usize,
    pub trial: u64,
    pub seed: u64,
    pub n: usize,
    pub edges: usize,
    pub intervention_count: usize,
    pub rounds_used: usize,
    pub checks_used: usize,
    pub nu1_reference: usize,
    /// `intervention_count / (m * n^(1/m) * nu1)` with `m = min(r, log2 n)`.
    pub bound_ratio: Option<f64>,
    pub wall_time_ns: u64,
    pub completed: bool,
    pub error: Option<String>,
}

/// `m * n^(1/m)` with `m = min(r, log2 n)`, the shape of the round-limited
/// upper bound.
pub fn bound_shape(n: usize, r: usize) -> f64 {
    let m = (r as f64).min((n as f64).log2()).max(1.0);
    m * (n as f64).powf(1.0 / m)
}

pub fn bound_ratio(n: usize, r: usize, count: usize, nu1: usize) -> Option<f64> {
    (nu1 > 0).then(|| count as f64 / (bound_shape(n, r) * nu1 as f64))
}

fn check_transcript(t: &SearchTranscript, hidden: &HiddenDag, r: usize, k: usize) -> Result<(), String> {
    if t.final_graph != *hidden.dag() {
        return Err("final graph differs from the hidden DAG".into());
    }
    if t.total_rounds_used > r {
        return Err(format!("used {} rounds with budget {r}", t.total_rounds_used));
    }
    if t.rounds.iter().flat_map(|x| &x.interventions).any(|s| s.len() > k) {
        return Err(format!("an intervention exceeds size {k}"));
    }
    Ok(())
}

/// Runs one algorithm on one instance and checks the outcome.
pub fn run_trial(
    hidden: &HiddenDag,
    algorithm: Algorithm,
    k: usize,
    nu1: usize,
) -> (usize, Result<SearchTranscript, String>, u64) {
    let n = hidden.n();
    let cfg = algorithm.config(n, k);
    let start = hidden.observe_with_bound(k);
    let mut orienter = hidden.clone();
    let clock = Instant::now();
    let out = search_on(&mut orienter, start, &cfg);
    let elapsed = clock.elapsed().as_nanos() as u64;
    let out = out.map_err(|e| e.to_string()).and_then(|t| {
        check_transcript(&t, hidden, cfg.r, k)?;
        if t.total_interventions < nu1 && k == 1 {
            return Err(format!("{} interventions below the verification number {nu1}", t.total_interventions));
        }
        Ok(t)
    });
    (cfg.r, out, elapsed)
}

struct Unit<'a> {
    template: &'a GeneratorTemplate,
    n: usize,
    trial: u64,
}

fn run_unit(spec: &SweepSpec, master: u64, unit: &Unit) -> Vec<TrialResult> {
    let seed = trial_seed(master, unit.trial);
    let family = unit.template.family.clone();
    let base = |algorithm: Algorithm, k: usize| TrialResult {
        family: family.name().to_string(),
        params: family_params(&family),
        algorithm: algorithm.name().to_string(),
        r: algorithm.rounds(unit.n),
        k,
        trial: unit.trial,
        seed,
        n: unit.n,
        edges: 0,
        intervention_count: 0,
        rounds_used: 0,
        checks_used: 0,
        nu1_reference: 0,
        bound_ratio: None,
        wall_time_ns: 0,
        completed: false,
        error: None,
    };
    let cfg = GeneratorConfig { family: family.clone(), n: unit.n, seed };
    let generated = cfg.generate().map_err(|e| e.to_string()).and_then(|h| {
        let (nu1, _) = verification_number_atomic(h.dag()).map_err(|e| e.to_string())?;
        Ok((h, nu1))
    });
    let mut out = Vec::new();
    for &algorithm in &spec.algorithms {
        for &k in &spec.k {
            let mut row = base(algorithm, k);
            match &generated {
                Err(e) => row.error = Some(format!("generation failed: {e}")),
                Ok((h, nu1)) => {
                    row.edges = h.dag().edge_count();
                    row.nu1_reference = *nu1;
                    let (r, res, ns) = run_trial(h, algorithm, k, *nu1);
                    row.r = r;
                    row.wall_time_ns = ns;
                    match res {
                        Ok(t) => {
                            row.intervention_count = t.total_interventions;
                            row.rounds_used = t.total_rounds_used;
                            row.checks_used = t.checks_used;
                            row.bound_ratio = bound_ratio(unit.n, r, t.total_interventions, *nu1);
                            row.completed = true;
                        }
                        Err(e) => row.error = Some(e),
                    }
                }
            }
            out.push(row);
        }
    }
    out
}

/// Every trial of the sweep. Failures are recorded in the rows, never
/// propagated.
pub fn run_sweep(spec: &SweepSpec, master_seed: u64) -> Vec<TrialResult> {
    let units: Vec<Unit> = spec
        .generators
        .iter()
        .flat_map(|t| t.n.iter().flat_map(move |&n| (0..spec.trials).map(move |trial| Unit { template: t, n, trial })))
        .collect();
    let mut rows: Vec<TrialResult> = units.par_iter().flat_map_iter(|u| run_unit(spec, master_seed, u)).collect();
    rows.sort_by(|a, b| {
        (&a.family, &a.params, a.n, &a.algorithm, a.k, a.trial).cmp(&(
            &b.family,
            &b.params,
            b.n,
            &b.algorithm,
            b.k,
            b.trial,
        ))
    });
    rows
}

pub fn write_ndjson(path: &Path, rows: &[TrialResult]) -> Result<(), BenchError> {
    let mut w = BufWriter::new(File::create(path).map_err(io_err(path))?);
    for row in rows {
        serde_json::to_writer(&mut w, row)
            .map_err(|source| BenchError::Json { path: path.display().to_string(), source })?;
        w.write_all(b"\n").map_err(io_err(path))?;
    }
    w.flush().map_err(io_err(path))
}

pub fn read_ndjson(path: &Path) -> Result<Vec<TrialResult>, BenchError> {
    let r = BufReader::new(File::open(path).map_err(io_err(path))?);
    let mut out = Vec::new();
    for line in r.lines() {
        let line = line.map_err(io_err(path))?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(
            serde_json::from_str(&line)
                .map_err(|source| BenchError::Json { path: path.display().to_string(), source })?,
        );
    }
    Ok(out)
}

pub fn write_csv<T: Serialize>(path: &Path, rows: &[T]) -> Result<(), BenchError> {
    let mut w = csv::Writer::from_path(path)?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush().map_err(io_err(path))
}

/// Writes `results.ndjson` and `results.csv` under `dir`.
pub fn write_results(dir: &Path, rows: &[TrialResult]) -> Result<(), BenchError> {
    fs::create_dir_all(dir).map_err(io_err(dir))?;
    write_ndjson(&dir.join("results.ndjson"), rows)?;
    write_csv(&dir.join("results.csv"), rows)
}

/// Every `*.ndjson` file in `dir`, in file-name order.
pub fn read_results_dir(dir: &Path) -> Result<Vec<TrialResult>, BenchError> {
    let mut files: Vec<_> = fs::read_dir(dir)
        .map_err(io_err(dir))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "ndjson"))
        .collect();
    files.sort();
    let mut out = Vec::new();
    for f in files {
        out.extend(read_ndjson(&f)?);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub family: String,
    pub params: String,
    pub algorithm: String,
    pub k: usize,
    pub n: usize,
    pub trials: usize,
    pub completed: usize,
    pub mean_interventions: f64,
    pub stderr_interventions: f64,
    pub mean_rounds: f64,
    pub mean_nu1: f64,
    pub max_bound_ratio: Option<f64>,
    pub mean_time_ns: f64,
    pub stderr_time_ns: f64,
}

/// Mean and standard error (sample deviation over `sqrt(len)`); zero error
/// for fewer than two values.
pub fn mean_stderr(xs: &[f64]) -> (f64, f64) {
    if xs.is_empty() {
        return (0.0, 0.0);
    }
    let len = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / len;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (len - 1.0);
    (mean, (var / len).sqrt())
}

/// Groups by (family, params, algorithm, k, n); statistics over completed
/// trials only. Rows come out in key order.
pub fn summarize(rows: &[TrialResult]) -> Vec<SummaryRow> {
    let mut cells: BTreeMap<(String, String, usize, String, usize), Vec<&TrialResult>> = BTreeMap::new();
    for row in rows {
        cells
            .entry((row.family.clone(), row.params.clone(), row.n, row.algorithm.clone(), row.k))
            .or_default()
            .push(row);
    }
    cells
        .into_iter()
        .map(|((family, params, n, algorithm, k), group)| {
            let done: Vec<&&TrialResult> = group.iter().filter(|r| r.completed).collect();
            let ints: Vec<f64> = done.iter().map(|r| r.intervention_count as f64).collect();
            let times: Vec<f64> = done.iter().map(|r| r.wall_time_ns as f64).collect();
            let rounds: Vec<f64> = done.iter().map(|r| r.rounds_used as f64).collect();
            let nu1: Vec<f64> = done.iter().map(|r| r.nu1_reference as f64).collect();
            let (mean_interventions, stderr_interventions) = mean_stderr(&ints);
            let (mean_time_ns, stderr_time_ns) = mean_stderr(&times);
            SummaryRow {
                family,
                params,
                algorithm,
                k,
                n,
                trials: group.len(),
                completed: done.len(),
                mean_interventions,
                stderr_interventions,
                mean_rounds: mean_stderr(&rounds).0,
                mean_nu1: mean_stderr(&nu1).0,
                max_bound_ratio: done.iter().filter_map(|r| r.bound_ratio).reduce(f64::max),
                mean_time_ns,
                stderr_time_ns,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(family: &str, n: usize, count: usize) -> TrialResult {
        TrialResult {
            family: family.into(),
            params: "p=0.5".into(),
            algorithm: "adaptive_r2".into(),
            r: 2,
            k: 1,
            trial: 0,
            seed: 0,
            n,
            edges: 0,
            intervention_count: count,
            rounds_used: 2,
            checks_used: 0,
            nu1_reference: 1,
            bound_ratio: None,
            wall_time_ns: 10,
            completed: true,
            error: None,
        }
    }

    #[test]
    fn stderr_by_hand() {
        assert_eq!(mean_stderr(&[5.0; 100]), (5.0, 0.0));
        let (m, s) = mean_stderr(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(m, 2.5);
        // sample variance 5/3, divided by 4
        assert!((s - (5.0f64 / 12.0).sqrt()).abs() < 1e-12);
        assert_eq!(mean_stderr(&[7.0]), (7.0, 0.0));
    }

    #[test]
    fn summary_groups_cells() {
        let rows: Vec<_> = (0..100).map(|_| row("a", 10, 4)).chain([row("b", 10, 2), row("b", 10, 4)]).collect();
        let s = summarize(&rows);
        assert_eq!(s.len(), 2);
        assert_eq!(
            (s[0].family.as_str(), s[0].trials, s[0].mean_interventions, s[0].stderr_interventions),
            ("a", 100, 4.0, 0.0)
        );
        assert_eq!((s[1].mean_interventions, s[1].stderr_interventions), (3.0, 1.0));
    }

    #[test]
    fn empty_spec_gives_nothing() {
        let spec = SweepSpec {
            generators: vec![],
            algorithms: Algorithm::ALL.to_vec(),
            k: vec![1],
            trials: 100,
            master_seed: 0,
        };
        assert!(run_sweep(&spec, 0).is_empty());
        assert!(summarize(&[]).is_empty());
    }

    #[test]
    fn algorithm_names_round_trip() {
        for a in Algorithm::ALL {
            assert_eq!(Algorithm::from_name(a.name()), Some(a));
            assert_eq!(serde_json::to_string(&a).unwrap(), format!("\"{}\"", a.name()));
        }
        assert_eq!(Algorithm::AdaptiveRlogn.rounds(100), 7);
        assert_eq!(Algorithm::AdaptiveR3logn.rounds(100), 21);
        assert_eq!(Algorithm::AdaptiveRn.rounds(2), 2);
    }

    #[test]
    fn spec_parsing() {
        let spec = SweepSpec::from_json(
            r#"{"generators":[{"family":"er_styled","rho":0.1,"n":[10,20]}],"algorithms":["adaptive_r1","adaptive_rn"],"trials":3}"#,
        )
        .unwrap();
        assert_eq!(spec.k, vec![1]);
        assert_eq!(spec.cells(), 12);
        assert!(SweepSpec::from_json(r#"{"generators":[],"algorithms":[],"k":[0]}"#).is_err());
        assert!(SweepSpec::from_json(r#"{"generators":[{"family":"nope","n":[3]}],"algorithms":[]}"#).is_err());
    }

    #[test]
    fn small_sweep_is_deterministic_and_complete() {
        let spec = SweepSpec::from_json(
            r#"{"generators":[{"family":"gnp_union_tree","p":0.1,"n":[12]},{"family":"tree_like","d_prop":0.4,"e_min_prop":0.2,"e_max_prop":0.5,"n":[15]}],
                "algorithms":["adaptive_r1","adaptive_r2","adaptive_rn"],"k":[1,3],"trials":4}"#,
        )
        .unwrap();
        let a = run_sweep(&spec, 9);
        let b = run_sweep(&spec, 9);
        assert_eq!(a.len(), spec.cells());
        assert!(a.iter().all(|r| r.completed && r.rounds_used <= r.r));
        let strip =
            |v: &[TrialResult]| v.iter().map(|r| (r.seed, r.intervention_count, r.nu1_reference)).collect::<Vec<_>>();
        assert_eq!(strip(&a), strip(&b));
    }
}
