//! Monte-Carlo experiment driver: samples graphs, compares combinatorial
//! predictions against the exact rank oracle, fits defect distributions, and
//! emits a fixed-schema CSV.
//!
//! Determinism: every trial uses a seed derived from (master seed, trial
//! index) and records are merged by index, so output is a pure function of
//! the configuration — independent of thread count. Timing is kept in memory
//! only and never written to the CSV.

mod stats;

pub use stats::{compound_pmf, poisson_gof, GofReport};

use serde::Serialize;

use crate::analytics::two_core_params;
use crate::cycles::{enumerate_special_cycles, DEFAULT_MAX_CYCLE_LEN};
use crate::error::{Error, Result};
use crate::exec;
use crate::generators::{derive_seed, sample_bipartite_gnp, sample_gnp, sample_min2};
use crate::graph::Graph;
use crate::linalg::{
    blossom_max_matching, hopcroft_karp, rank_adjacency, rank_biadjacency, sigma, RankMethod,
};
use crate::peeling::{k_core, karp_sipser, karp_sipser_bipartite, OrderPolicy};
use crate::predictor::{predict_corank_adjacency, predict_corank_biadjacency, predict_matching_number};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    /// corank A(G) = i + s(core) on G(n, c/n).
    RankCharA,
    /// corank B(G) = max(i1+s1, i2+s2) on balanced bipartite G(n, n, c/n).
    RankCharB,
    /// rank A(G) = n - s(G) on K(n, m, 2).
    MainRmt,
    /// nu(G) = floor((n - i - q(core))/2) on G(n, c/n), exact blossom nu.
    Matching,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExperimentConfig {
    pub suite: Suite,
    /// Vertices (per side, for the bipartite suite).
    pub n: usize,
    /// Density c (edge probability c/n) for the G(n, p) suites.
    pub c: Option<f64>,
    /// Edge count for the min-degree-2 suite.
    pub m: Option<usize>,
    pub trials: usize,
    pub seed: u64,
}

/// One experiment trial. Fields not applicable to the suite are None and
/// serialize to empty CSV cells. `timing_ms` is deliberately not part of the
/// CSV schema so re-runs are byte-identical.
#[derive(Debug, Clone, Serialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub seed: u64,
    pub model: String,
    pub failed: bool,
    pub i: Option<usize>,
    pub i1: Option<usize>,
    pub i2: Option<usize>,
    pub s: Option<usize>,
    pub s1: Option<usize>,
    pub s2: Option<usize>,
    pub q: Option<usize>,
    pub predicted_corank: Option<usize>,
    pub rank: Option<usize>,
    pub corank: Option<usize>,
    pub nu: Option<usize>,
    pub sigma: Option<usize>,
    pub defect: Option<i64>,
    pub two_core_vertices: Option<usize>,
    pub two_core_edges: Option<usize>,
    pub two_core_corank: Option<usize>,
    #[serde(skip)]
    pub timing_ms: f64,
}

impl TrialRecord {
    fn blank(trial: usize, seed: u64, model: String) -> Self {
        TrialRecord {
            trial,
            seed,
            model,
            failed: false,
            i: None,
            i1: None,
            i2: None,
            s: None,
            s1: None,
            s2: None,
            q: None,
            predicted_corank: None,
            rank: None,
            corank: None,
            nu: None,
            sigma: None,
            defect: None,
            two_core_vertices: None,
            two_core_edges: None,
            two_core_corank: None,
            timing_ms: 0.0,
        }
    }
}

/// Format a float with 12 significant digits (the CSV convention).
pub fn format_float(x: f64) -> String {
    format!("{x:.11e}")
}

const CSV_HEADER: &str = "trial,seed,model,failed,i,i1,i2,s,s1,s2,q,predicted_corank,rank,corank,nu,sigma,defect,two_core_vertices,two_core_edges,two_core_corank";

fn opt<T: std::fmt::Display>(v: &Option<T>) -> String {
    v.as_ref().map(|x| x.to_string()).unwrap_or_default()
}

/// Fixed-schema CSV: header plus one line per record, columns in
/// `TrialRecord` field order (timing excluded).
pub fn to_csv(records: &[TrialRecord]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            r.trial,
            r.seed,
            r.model,
            r.failed,
            opt(&r.i),
            opt(&r.i1),
            opt(&r.i2),
            opt(&r.s),
            opt(&r.s1),
            opt(&r.s2),
            opt(&r.q),
            opt(&r.predicted_corank),
            opt(&r.rank),
            opt(&r.corank),
            opt(&r.nu),
            opt(&r.sigma),
            opt(&r.defect),
            opt(&r.two_core_vertices),
            opt(&r.two_core_edges),
            opt(&r.two_core_corank),
        ));
    }
    out
}

fn graph_trial(
    suite: Suite,
    g: &Graph,
    record: &mut TrialRecord,
) -> Result<()> {
    let n = g.num_vertices();
    let ks = karp_sipser(g, OrderPolicy::LowestIndex, false);
    let rank = rank_adjacency(g, RankMethod::Modular)?;
    let sig = sigma(g);
    record.i = Some(ks.i);
    record.rank = Some(rank.rank);
    record.corank = Some(rank.corank);
    record.sigma = Some(sig);
    record.defect = Some(rank.corank as i64 - ks.i as i64);

    // hard Karp-Sipser-bounds chain, zero tolerance
    assert!(rank.rank <= sig, "rank A > sigma");
    assert!(sig <= n - ks.i, "sigma > n - i");
    assert!(rank.corank >= ks.i, "corank < i");

    match suite {
        Suite::RankCharA => {
            let pred = predict_corank_adjacency(g);
            record.s = pred.s;
            record.predicted_corank = Some(pred.predicted);
        }
        Suite::MainRmt => {
            let report = enumerate_special_cycles(g, DEFAULT_MAX_CYCLE_LEN);
            assert!(!report.truncated, "cycle search truncated in MainRmt regime");
            record.s = Some(report.s);
            record.predicted_corank = Some(ks.i + report.s);
        }
        Suite::Matching => {
            let pred = predict_matching_number(g);
            record.q = pred.q;
            let nu = blossom_max_matching(g);
            record.nu = Some(nu);
            record.predicted_corank = Some(pred.predicted); // predicted nu
            assert!(rank.rank.max(2 * nu) <= sig, "max(rank, 2 nu) > sigma");
        }
        Suite::RankCharB => unreachable!("bipartite suite uses bipartite_trial"),
    }
    Ok(())
}

fn run_one(config: &ExperimentConfig, trial: usize) -> TrialRecord {
    let seed = derive_seed(config.seed, trial as u64);
    let model = match config.suite {
        Suite::RankCharA | Suite::Matching => {
            format!("gnp(n={};c={})", config.n, format_float(config.c.unwrap()))
        }
        Suite::RankCharB => {
            format!("gnnp(n={};c={})", config.n, format_float(config.c.unwrap()))
        }
        Suite::MainRmt => format!("min2(n={};m={})", config.n, config.m.unwrap()),
    };
    let mut record = TrialRecord::blank(trial, seed, model);
    let start = std::time::Instant::now();

    let outcome: Result<()> = (|| {
        match config.suite {
            Suite::RankCharA | Suite::Matching => {
                let c = config.c.ok_or(Error::InfeasibleParameters("c required".into()))?;
                let g = sample_gnp(config.n, c / config.n as f64, seed)?;
                graph_trial(config.suite, &g, &mut record)
            }
            Suite::MainRmt => {
                let m = config.m.ok_or(Error::InfeasibleParameters("m required".into()))?;
                let g = sample_min2(config.n, m, seed)?;
                graph_trial(config.suite, &g, &mut record)
            }
            Suite::RankCharB => {
                let c = config.c.ok_or(Error::InfeasibleParameters("c required".into()))?;
                let n = config.n;
                let b = sample_bipartite_gnp(n, n, c / n as f64, seed)?;
                let ks = karp_sipser_bipartite(&b, OrderPolicy::LowestIndex, false);
                let rank = rank_biadjacency(&b, RankMethod::Modular)?;
                let nu = hopcroft_karp(&b);
                record.i1 = Some(ks.i1);
                record.i2 = Some(ks.i2);
                record.rank = Some(rank.rank);
                record.corank = Some(n - rank.rank);
                record.nu = Some(nu);
                record.defect = Some((n - rank.rank) as i64 - ks.i1.max(ks.i2) as i64);

                // bipartite Karp-Sipser-bounds chain, zero tolerance
                assert!(rank.rank <= nu, "rank B > nu");
                assert!(nu <= (n - ks.i1).min(n - ks.i2), "nu > min(n1-i1, n2-i2)");

                let pred = predict_corank_biadjacency(&b);
                record.s1 = pred.s1;
                record.s2 = pred.s2;
                record.predicted_corank = Some(pred.predicted);
                Ok(())
            }
        }
    })();
    if outcome.is_err() {
        record.failed = true;
    } else if let Some(d) = record.defect {
        assert!(d >= 0, "negative defect");
    }
    record.timing_ms = start.elapsed().as_secs_f64() * 1e3;
    record
}

/// Run the configured suite; one record per trial, deterministic in
/// (config, seed) regardless of thread count.
pub fn run_trials(config: &ExperimentConfig) -> Vec<TrialRecord> {
    assert!(config.trials >= 1);
    exec::map_indexed(config.trials, |t| run_one(config, t))
}

/// Sequential twin of [`run_trials`], used to demonstrate thread-count
/// independence and by the benchmark suite.
pub fn run_trials_seq(config: &ExperimentConfig) -> Vec<TrialRecord> {
    assert!(config.trials >= 1);
    exec::map_indexed_seq(config.trials, |t| run_one(config, t))
}

/// Per trial: sample G(n, c/n), take the 2-core of the largest component,
/// and compute its exact corank. Returns the GoF report of the corank
/// distribution against Poisson(mu), the empirical nonsingularity frequency,
/// and the per-trial records.
pub fn two_core_experiment(
    c: f64,
    n: usize,
    trials: usize,
    seed: u64,
) -> Result<(GofReport, f64, Vec<TrialRecord>)> {
    let params = two_core_params(c)?; // OutOfRange for c <= 1
    let records = exec::map_indexed(trials, |t| {
        let trial_seed = derive_seed(seed, t as u64);
        let model = format!("gnp-2core(n={n};c={})", format_float(c));
        let mut record = TrialRecord::blank(t, trial_seed, model);
        let start = std::time::Instant::now();
        let outcome: Result<()> = (|| {
            let g = sample_gnp(n, c / n as f64, trial_seed)?;
            let comps = g.connected_components();
            let largest = comps.first().cloned().unwrap_or_default();
            let (sub, _) = g.induced_subgraph(&largest)?;
            let (core, _) = k_core(&sub, 2);
            let rank = rank_adjacency(&core, RankMethod::Modular)?;
            record.two_core_vertices = Some(core.num_vertices());
            record.two_core_edges = Some(core.num_edges());
            record.two_core_corank = Some(rank.corank);
            Ok(())
        })();
        if outcome.is_err() {
            record.failed = true;
        }
        record.timing_ms = start.elapsed().as_secs_f64() * 1e3;
        record
    });
    let coranks: Vec<usize> = records
        .iter()
        .filter(|r| !r.failed)
        .map(|r| r.two_core_corank.unwrap())
        .collect();
    let gof = poisson_gof(&coranks, params.mu, None)?;
    let nonsingular = coranks.iter().filter(|&&x| x == 0).count() as f64 / coranks.len() as f64;
    Ok((gof, nonsingular, records))
}

/// One row of the critical scan: empirical mean defect at density c, with
/// the analytic Poisson means where they exist (absent inside the guard band
/// around c = e).
#[derive(Debug, Clone, Serialize)]
pub struct ScanRow {
    pub c: f64,
    pub trials: usize,
    pub mean_defect: f64,
    pub gamma_b: Option<f64>,
    pub gamma_a: Option<f64>,
}

/// Descriptive scan of the defect across a density grid near the critical
/// point; nothing is asserted.
pub fn critical_scan(grid: &[f64], n: usize, trials: usize, seed: u64) -> Vec<ScanRow> {
    grid.iter()
        .map(|&c| {
            let config = ExperimentConfig {
                suite: Suite::RankCharA,
                n,
                c: Some(c),
                m: None,
                trials,
                seed: derive_seed(seed, c.to_bits()),
            };
            let records = run_trials(&config);
            let ok: Vec<&TrialRecord> = records.iter().filter(|r| !r.failed).collect();
            let mean_defect =
                ok.iter().map(|r| r.defect.unwrap() as f64).sum::<f64>() / ok.len() as f64;
            let params = crate::analytics::corank_distribution_params(c).ok();
            ScanRow {
                c,
                trials: ok.len(),
                mean_defect,
                gamma_b: params.as_ref().map(|p| p.gamma_b),
                gamma_a: params.as_ref().map(|p| p.gamma_a),
            }
        })
        .collect()
}
