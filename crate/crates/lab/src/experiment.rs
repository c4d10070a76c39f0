//! Monte Carlo estimates of `Pr(G(N,p) → H)`, sweeps over `p`, and
//! bisection for the empirical threshold.
//!
//! Sample `i` of every cell uses the graph seed `seed.derive(i)`, so cells
//! at different `p` see coupled graphs (`G(N,p) ⊆ G(N,p')` for `p ≤ p'`), and
//! the decider seed `seed.derive(i).with_stream(1)`. Results depend only on
//! the configuration, never on the worker count.

use std::path::Path;
use std::time::Instant;

use bookramsey::certificates::vertices_for;
use bookramsey::stats::{wilson_interval, Z_95};
use bookramsey::{
    decide_exact, decide_sandwich, decide_star_fast, sample_gnp, DeciderLimits, Outcome, Seed, TargetSpec,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{LabError, LabResult};
use crate::io::PendingFile;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DeciderKind {
    Exact,
    Star,
    Sandwich,
}

/// Seeds go to JSON as decimal strings so no reader rounds them.
mod seed_strings {
    use bookramsey::Seed;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Repr {
        value: String,
        stream: String,
    }

    pub fn serialize<S: Serializer>(s: &Seed, ser: S) -> Result<S::Ok, S::Error> {
        Repr {
            value: s.value.to_string(),
            stream: s.stream.to_string(),
        }
        .serialize(ser)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Seed, D::Error> {
        let r = Repr::deserialize(de)?;
        let parse = |s: &str| s.parse::<u64>().map_err(serde::de::Error::custom);
        Ok(Seed {
            value: parse(&r.value)?,
            stream: parse(&r.stream)?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub target: TargetSpec,
    /// `c` when `N` was derived as `⌊c·2^k·n⌋`.
    pub c: Option<f64>,
    pub vertices: usize,
    pub p_grid: Vec<f64>,
    pub samples_per_p: usize,
    #[serde(with = "seed_strings")]
    pub seed: Seed,
    pub decider: DeciderKind,
    pub limits: DeciderLimits,
}

impl ExperimentConfig {
    /// `N = ⌊c·2^k·n⌋` for the target's `k` and `n`.
    pub fn with_c(
        target: TargetSpec,
        c: f64,
        p_grid: Vec<f64>,
        samples_per_p: usize,
        seed: Seed,
        decider: DeciderKind,
    ) -> LabResult<ExperimentConfig> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(LabError::Usage(format!("c must be positive, got {c}")));
        }
        let cfg = ExperimentConfig {
            target,
            c: Some(c),
            vertices: vertices_for(target.k, c, target.n as u64) as usize,
            p_grid,
            samples_per_p,
            seed,
            decider,
            limits: DeciderLimits::default(),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> LabResult<()> {
        let usage = |m: String| Err(LabError::Usage(m));
        if self.vertices < self.target.k + 1 {
            return usage(format!("N = {} must be at least k + 1 = {}", self.vertices, self.target.k + 1));
        }
        if self.samples_per_p == 0 {
            return usage("samples per p must be positive".into());
        }
        if self.p_grid.iter().any(|p| !(0.0..=1.0).contains(p)) {
            return usage("every p must lie in [0, 1]".into());
        }
        if self.p_grid.windows(2).any(|w| w[0] >= w[1]) {
            return usage("the p grid must be strictly increasing".into());
        }
        if self.decider == DeciderKind::Star && self.target.k != 1 {
            return usage("the star decider needs k = 1".into());
        }
        self.limits.validate()?;
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
struct Tally {
    arrows: u64,
    not_arrows: u64,
    unknown: u64,
}

impl Tally {
    fn add(self, o: Tally) -> Tally {
        Tally {
            arrows: self.arrows + o.arrows,
            not_arrows: self.not_arrows + o.not_arrows,
            unknown: self.unknown + o.unknown,
        }
    }

    fn samples(&self) -> u64 {
        self.arrows + self.not_arrows + self.unknown
    }
}

/// One row of the sweep CSV.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub p: f64,
    pub samples: u64,
    pub arrows: u64,
    pub not_arrows: u64,
    pub unknown: u64,
    /// `arrows / (arrows + not_arrows)`; NaN when nothing was decided.
    pub p_hat: f64,
    /// Wilson 95% interval on the decided samples.
    pub ci_lo: f64,
    pub ci_hi: f64,
    /// `arrows / samples` and `(arrows + unknown) / samples`.
    pub band_lo: f64,
    pub band_hi: f64,
}

impl SweepRow {
    fn from_tally(p: f64, t: Tally) -> SweepRow {
        let decided = t.arrows + t.not_arrows;
        let (ci_lo, ci_hi) = wilson_interval(t.arrows, decided, Z_95);
        let n = t.samples() as f64;
        SweepRow {
            p,
            samples: t.samples(),
            arrows: t.arrows,
            not_arrows: t.not_arrows,
            unknown: t.unknown,
            p_hat: if decided == 0 { f64::NAN } else { t.arrows as f64 / decided as f64 },
            ci_lo,
            ci_hi,
            band_lo: t.arrows as f64 / n,
            band_hi: (t.arrows + t.unknown) as f64 / n,
        }
    }

    pub fn unknown_fraction(&self) -> f64 {
        self.unknown as f64 / self.samples as f64
    }
}

fn decide_one(cfg: &ExperimentConfig, p: f64, i: u64) -> Tally {
    let seed = cfg.seed.derive(i);
    let g = sample_gnp(cfg.vertices, p, seed).expect("validated p");
    let t = cfg.target;
    let outcome = match cfg.decider {
        DeciderKind::Star => Ok(decide_star_fast(&g, t.n)),
        DeciderKind::Exact => decide_exact(&g, t, &cfg.limits),
        DeciderKind::Sandwich => decide_sandwich(&g, t, &cfg.limits, seed.with_stream(1)),
    };
    match outcome.map(|v| v.outcome) {
        Ok(Outcome::Arrows(_)) => Tally { arrows: 1, ..Tally::default() },
        Ok(Outcome::NotArrows(_)) => Tally { not_arrows: 1, ..Tally::default() },
        Ok(Outcome::Unknown) | Err(_) => Tally { unknown: 1, ..Tally::default() },
    }
}

fn tally_range(cfg: &ExperimentConfig, p: f64, range: std::ops::Range<u64>) -> Tally {
    range
        .into_par_iter()
        .map(|i| decide_one(cfg, p, i))
        .reduce(Tally::default, Tally::add)
}

fn pool(workers: usize) -> LabResult<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| LabError::Internal(e.to_string()))
}

/// `samples_per_p` samples at `p`. Decider budget errors count as unknown.
pub fn estimate_arrow_probability(cfg: &ExperimentConfig, p: f64, workers: usize) -> LabResult<SweepRow> {
    cfg.validate()?;
    if !(0.0..=1.0).contains(&p) {
        return Err(LabError::Usage(format!("p must lie in [0, 1], got {p}")));
    }
    let t = pool(workers)?.install(|| tally_range(cfg, p, 0..cfg.samples_per_p as u64));
    Ok(SweepRow::from_tally(p, t))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CellTiming {
    pub p: f64,
    pub wall_millis: u128,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
    pub timings: Vec<CellTiming>,
}

pub fn sweep(cfg: &ExperimentConfig, workers: usize) -> LabResult<SweepResult> {
    cfg.validate()?;
    let pool = pool(workers)?;
    let mut rows = Vec::with_capacity(cfg.p_grid.len());
    let mut timings = Vec::with_capacity(cfg.p_grid.len());
    for &p in &cfg.p_grid {
        let start = Instant::now();
        let t = pool.install(|| tally_range(cfg, p, 0..cfg.samples_per_p as u64));
        rows.push(SweepRow::from_tally(p, t));
        timings.push(CellTiming {
            p,
            wall_millis: start.elapsed().as_millis(),
        });
    }
    Ok(SweepResult { rows, timings })
}

pub fn rows_to_csv(rows: &[SweepRow]) -> LabResult<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| LabError::Internal(e.to_string()))?;
    }
    w.into_inner().map_err(|e| LabError::Internal(e.to_string()))
}

#[derive(Serialize)]
struct Manifest<'a> {
    tool_version: &'static str,
    config: &'a ExperimentConfig,
    master_seed: String,
    workers: usize,
    started_at: String,
    finished_at: String,
    cells: &'a [CellTiming],
}

fn now_rfc3339() -> String {
    time::OffsetDateTime::now_utc()
        .format(&time::format_description::well_known::Rfc3339)
        .unwrap_or_default()
}

/// Path of the manifest written next to a sweep CSV.
pub fn manifest_path(csv_path: &Path) -> std::path::PathBuf {
    let mut s = csv_path.as_os_str().to_owned();
    s.push(".manifest.json");
    s.into()
}

/// Runs the sweep and writes the CSV and its JSON manifest atomically.
/// Both destinations are opened before any sampling.
pub fn sweep_to_files(cfg: &ExperimentConfig, csv_path: &Path, workers: usize) -> LabResult<SweepResult> {
    cfg.validate()?;
    let csv_out = PendingFile::create(csv_path)?;
    let man_path = manifest_path(csv_path);
    let man_out = PendingFile::create(&man_path)?;
    let started_at = now_rfc3339();
    let result = sweep(cfg, workers)?;
    let manifest = Manifest {
        tool_version: env!("CARGO_PKG_VERSION"),
        config: cfg,
        master_seed: cfg.seed.value.to_string(),
        workers,
        started_at,
        finished_at: now_rfc3339(),
        cells: &result.timings,
    };
    csv_out.commit(&rows_to_csv(&result.rows)?)?;
    let json = serde_json::to_vec_pretty(&manifest).map_err(|e| LabError::Internal(e.to_string()))?;
    man_out.commit(&json)?;
    Ok(result)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Side {
    Below,
    Above,
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BisectResult {
    pub p_star_estimate: f64,
    pub p_lo: f64,
    pub p_hi: f64,
    pub iterations: usize,
    pub samples_used: u64,
    /// Midpoints whose Wilson interval still contained 1/2 at the sample
    /// cap; those were assigned by the point estimate.
    pub undecided_steps: usize,
}

pub struct BisectOptions {
    pub lo: f64,
    pub hi: f64,
    pub tolerance: f64,
    /// Cap for the doubling of `samples_per_p` at one point.
    pub max_samples: usize,
    pub workers: usize,
}

/// Which side of 1/2 the arrowing probability at `p` is on: samples grow
/// `×2` from `samples_per_p` until the Wilson interval excludes 1/2 or the
/// cap is reached.
fn side(cfg: &ExperimentConfig, p: f64, max_samples: usize) -> (Side, Tally) {
    let mut tally = Tally::default();
    let mut target = cfg.samples_per_p as u64;
    loop {
        tally = tally.add(tally_range(cfg, p, tally.samples()..target));
        let decided = tally.arrows + tally.not_arrows;
        let (lo, hi) = wilson_interval(tally.arrows, decided, Z_95);
        if decided > 0 && hi < 0.5 {
            return (Side::Below, tally);
        }
        if decided > 0 && lo > 0.5 {
            return (Side::Above, tally);
        }
        if target * 2 > max_samples as u64 {
            return (Side::Undecided, tally);
        }
        target *= 2;
    }
}

pub fn bisect_threshold(cfg: &ExperimentConfig, opts: &BisectOptions) -> LabResult<BisectResult> {
    cfg.validate()?;
    let (mut lo, mut hi) = (opts.lo, opts.hi);
    if !(0.0..=1.0).contains(&lo) || !(0.0..=1.0).contains(&hi) || lo >= hi {
        return Err(LabError::Usage(format!("bad bracket [{lo}, {hi}]")));
    }
    if !(opts.tolerance > 0.0) {
        return Err(LabError::Usage("tolerance must be positive".into()));
    }
    if hi - lo <= opts.tolerance {
        return Ok(BisectResult {
            p_star_estimate: (lo + hi) / 2.0,
            p_lo: lo,
            p_hi: hi,
            iterations: 0,
            samples_used: 0,
            undecided_steps: 0,
        });
    }
    let max_samples = opts.max_samples.max(cfg.samples_per_p);
    pool(opts.workers)?.install(|| {
        let mut used = 0u64;
        let mut count = |p: f64| {
            let r = side(cfg, p, max_samples);
            used += r.1.samples();
            r
        };
        let (s_lo, _) = count(lo);
        let (s_hi, _) = count(hi);
        if s_lo != Side::Below || s_hi != Side::Above {
            return Err(LabError::Usage(format!(
                "[{lo}, {hi}] is not a bracket: sides are {s_lo:?} and {s_hi:?} of 1/2"
            )));
        }
        let (mut iterations, mut undecided_steps) = (0, 0);
        while hi - lo > opts.tolerance {
            let mid = (lo + hi) / 2.0;
            let (s, t) = count(mid);
            iterations += 1;
            let above = match s {
                Side::Above => true,
                Side::Below => false,
                Side::Undecided => {
                    undecided_steps += 1;
                    2 * t.arrows >= t.arrows + t.not_arrows
                }
            };
            if above {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(BisectResult {
            p_star_estimate: (lo + hi) / 2.0,
            p_lo: lo,
            p_hi: hi,
            iterations,
            samples_used: used,
            undecided_steps,
        })
    })
}
