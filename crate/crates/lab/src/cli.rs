use std::path::{Path, PathBuf};
use std::time::Instant;

use bookramsey::certificates::{
    lower_threshold_report, neighborhood_maxcut, quasirandom_audit, upper_params, ChernoffReport,
    CountingCertificate, ThresholdParams, UpperParams,
};
use bookramsey::regularity::{build_reduced_graph, Partition};
use bookramsey::{
    decide_sandwich, sample_gnp, ArrowMethod, DeciderLimits, Graph, Outcome, Seed, Shape, TargetSpec,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{LabError, LabResult};
use crate::experiment::{bisect_threshold, sweep_to_files, BisectOptions, DeciderKind, ExperimentConfig};
use crate::io;

#[derive(Parser, Debug)]
#[command(name = "bookramsey", version, about = "Ramsey arrowing of books and bicliques in random graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Estimate Pr(G(N,p) -> H) over a grid of p; writes CSV and a manifest.
    Sweep(SweepArgs),
    /// Bisect for the p where the arrowing probability crosses 1/2.
    Bisect(BisectArgs),
    /// Decide G -> H for one graph file.
    Decide(DecideArgs),
    /// Evaluate the k = 2 counting certificate for G -> B_n^(2).
    Certify(CertifyArgs),
    /// Threshold parameters and the Chernoff/union-bound report.
    Bounds(BoundsArgs),
    /// Quasirandomness audit of a graph against G(N,p).
    Audit(AuditArgs),
    /// Densities, regularity refutations and the reduced graph of a coloring.
    Regularity(RegularityArgs),
    /// Emit a G(N,p) edge list.
    Sample(SampleArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum TargetArg {
    Book,
    Biclique,
}

impl From<TargetArg> for Shape {
    fn from(t: TargetArg) -> Shape {
        match t {
            TargetArg::Book => Shape::Book,
            TargetArg::Biclique => Shape::Biclique,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum DeciderArg {
    Exact,
    Star,
    Sandwich,
}

#[derive(Args, Debug)]
pub struct LimitArgs {
    /// Largest edge count searched exhaustively.
    #[arg(long, default_value_t = DeciderLimits::default().max_edges_exhaustive)]
    pub max_edges: usize,
    /// Node budget of the exhaustive search.
    #[arg(long, default_value_t = DeciderLimits::default().max_search_nodes)]
    pub max_nodes: u64,
    #[arg(long, default_value_t = DeciderLimits::default().local_search_restarts)]
    pub restarts: usize,
    #[arg(long, default_value_t = DeciderLimits::default().local_search_steps)]
    pub steps: usize,
    /// Vertex cap for neighborhood max-cuts.
    #[arg(long, default_value_t = DeciderLimits::default().maxcut_vertex_cap)]
    pub maxcut_cap: usize,
}

impl LimitArgs {
    fn limits(&self) -> DeciderLimits {
        DeciderLimits {
            max_edges_exhaustive: self.max_edges,
            max_search_nodes: self.max_nodes,
            local_search_restarts: self.restarts,
            local_search_steps: self.steps,
            maxcut_vertex_cap: self.maxcut_cap,
        }
    }
}

#[derive(Args, Debug)]
pub struct ExperimentArgs {
    #[arg(long, value_enum, default_value = "book")]
    pub target: TargetArg,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub n: usize,
    /// N = floor(c * 2^k * n).
    #[arg(long, conflicts_with = "vertices", required_unless_present = "vertices")]
    pub c: Option<f64>,
    /// Explicit N.
    #[arg(long)]
    pub vertices: Option<usize>,
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "sandwich")]
    pub decider: DeciderArg,
    /// Worker threads; results do not depend on it.
    #[arg(long)]
    pub workers: Option<usize>,
    #[command(flatten)]
    pub limits: LimitArgs,
}

impl ExperimentArgs {
    fn config(&self, p_grid: Vec<f64>) -> LabResult<ExperimentConfig> {
        let target = TargetSpec::new(self.target.into(), self.k, self.n)?;
        let decider = match self.decider {
            DeciderArg::Exact => DeciderKind::Exact,
            DeciderArg::Star => DeciderKind::Star,
            DeciderArg::Sandwich => DeciderKind::Sandwich,
        };
        let seed = Seed::new(self.seed);
        let mut cfg = match (self.c, self.vertices) {
            (Some(c), _) => ExperimentConfig::with_c(target, c, p_grid, self.samples, seed, decider)?,
            (None, Some(vertices)) => ExperimentConfig {
                target,
                c: None,
                vertices,
                p_grid,
                samples_per_p: self.samples,
                seed,
                decider,
                limits: DeciderLimits::default(),
            },
            (None, None) => return Err(LabError::Usage("give --c or --vertices".into())),
        };
        cfg.limits = self.limits.limits();
        cfg.validate()?;
        Ok(cfg)
    }

    fn workers(&self) -> usize {
        workers_or_default(self.workers)
    }
}

fn workers_or_default(w: Option<usize>) -> usize {
    w.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[command(flatten)]
    pub exp: ExperimentArgs,
    /// Comma-separated, strictly increasing.
    #[arg(long, value_delimiter = ',', required = true)]
    pub p_grid: Vec<f64>,
    /// CSV destination; the manifest goes to `<out>.manifest.json`.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct BisectArgs {
    #[command(flatten)]
    pub exp: ExperimentArgs,
    #[arg(long)]
    pub lo: f64,
    #[arg(long)]
    pub hi: f64,
    #[arg(long, default_value_t = 0.01)]
    pub tolerance: f64,
    /// Cap on samples at one point while doubling.
    #[arg(long, default_value_t = 3200)]
    pub max_samples: usize,
}

#[derive(Args, Debug)]
pub struct DecideArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long, value_enum, default_value = "book")]
    pub target: TargetArg,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Where to write an avoiding coloring, if one is found.
    #[arg(long)]
    pub evidence: Option<PathBuf>,
    #[command(flatten)]
    pub limits: LimitArgs,
}

#[derive(Args, Debug)]
pub struct CertifyArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub n: u64,
    #[arg(long, default_value_t = DeciderLimits::default().maxcut_vertex_cap)]
    pub maxcut_cap: usize,
    #[arg(long)]
    pub workers: Option<usize>,
}

#[derive(Args, Debug)]
pub struct BoundsArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub c: f64,
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub gamma: f64,
}

#[derive(Args, Debug)]
pub struct AuditArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub p: f64,
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Bound on every normalized deviation; a judgment call, not a derived constant.
    #[arg(long, default_value_t = bookramsey::certificates::DEFAULT_AUDIT_TOLERANCE)]
    pub tolerance: f64,
}

#[derive(Args, Debug)]
pub struct RegularityArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub coloring: PathBuf,
    /// Number of parts of the equitable partition into consecutive blocks.
    #[arg(long)]
    pub parts: usize,
    #[arg(long)]
    pub epsilon: f64,
    #[arg(long)]
    pub delta: f64,
    #[arg(long)]
    pub p: f64,
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct SampleArgs {
    #[arg(long)]
    pub vertices: usize,
    #[arg(long)]
    pub p: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn json<T: Serialize>(v: &T) -> LabResult<String> {
    serde_json::to_string_pretty(v)
        .map(|s| s + "\n")
        .map_err(|e| LabError::Internal(e.to_string()))
}

#[derive(Serialize)]
struct DecideReport {
    outcome: &'static str,
    method: Option<ArrowMethod>,
    #[serde(skip_serializing_if = "Option::is_none")]
    evidence_path: Option<String>,
    nodes: u64,
    millis: u128,
}

#[derive(Serialize)]
struct CertifyReport {
    #[serde(flatten)]
    certificate: CountingCertificate,
    budget: f64,
}

#[derive(Serialize)]
struct BoundsReport {
    params: ThresholdParams,
    report: ChernoffReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    upper: Option<UpperParams>,
}

#[derive(Serialize)]
struct RegularityReport {
    part_sizes: Vec<usize>,
    #[serde(flatten)]
    reduced: bookramsey::regularity::ReducedGraph,
    /// Parts that are vertices of `Γ_B'`.
    gamma_b_prime_parts: Vec<usize>,
}

fn decide(a: &DecideArgs) -> LabResult<String> {
    let g = io::read_graph(&a.graph)?;
    let t = TargetSpec::new(a.target.into(), a.k, a.n)?;
    let start = Instant::now();
    let v = decide_sandwich(&g, t, &a.limits.limits(), Seed::new(a.seed))?;
    let millis = start.elapsed().as_millis();
    let (outcome, method, evidence_path) = match &v.outcome {
        Outcome::Arrows(m) => ("arrows", Some(*m), None),
        Outcome::Unknown => ("unknown", None, None),
        Outcome::NotArrows(c) => {
            let path = match &a.evidence {
                Some(p) => {
                    io::write_atomic(p, io::coloring_to_string(c).as_bytes())?;
                    Some(p.display().to_string())
                }
                None => None,
            };
            ("not-arrows", None, path)
        }
    };
    json(&DecideReport {
        outcome,
        method,
        evidence_path,
        nodes: v.nodes,
        millis,
    })
}

/// The counting certificate with neighborhoods processed in parallel.
pub fn certify_graph(g: &Graph, n: u64, cap: usize, workers: usize) -> LabResult<CountingCertificate> {
    if n == 0 {
        return Err(LabError::Usage("book size n must be at least 1".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| LabError::Internal(e.to_string()))?;
    let cuts: Vec<u64> = pool.install(|| {
        (0..g.vertex_count())
            .into_par_iter()
            .map(|v| neighborhood_maxcut(g, v, cap))
            .collect::<Result<_, _>>()
    })?;
    Ok(CountingCertificate::from_maxcut_sum(g, n, cuts.iter().sum()))
}

fn certify(a: &CertifyArgs) -> LabResult<String> {
    let g = io::read_graph(&a.graph)?;
    let certificate = certify_graph(&g, a.n, a.maxcut_cap, workers_or_default(a.workers))?;
    json(&CertifyReport {
        budget: certificate.budget(),
        certificate,
    })
}

fn bounds(a: &BoundsArgs) -> LabResult<String> {
    let params = ThresholdParams::new(a.k, a.c, a.n, a.gamma)?;
    let report = lower_threshold_report(&params)?;
    let upper = if a.k >= 2 && a.gamma > 0.0 {
        Some(upper_params(a.k, a.c, a.gamma)?)
    } else {
        None
    };
    json(&BoundsReport { params, report, upper })
}

fn audit(a: &AuditArgs) -> LabResult<String> {
    let g = io::read_graph(&a.graph)?;
    json(&quasirandom_audit(&g, a.p, a.samples, Seed::new(a.seed), a.tolerance)?)
}

fn regularity(a: &RegularityArgs) -> LabResult<String> {
    let g = io::read_graph(&a.graph)?;
    let c = io::read_coloring(&a.coloring)?;
    if c.host() != &g {
        return Err(LabError::Usage(format!(
            "{} does not color exactly the edges of {}",
            a.coloring.display(),
            a.graph.display()
        )));
    }
    let part = Partition::equitable(g.vertex_count(), a.parts)?;
    let reduced = build_reduced_graph(&c, &part, a.epsilon, a.p, a.delta, a.trials, Seed::new(a.seed))?;
    let gamma_b_prime_parts = reduced.gamma_b_prime().1;
    json(&RegularityReport {
        part_sizes: part.parts().iter().map(|s| s.len()).collect(),
        reduced,
        gamma_b_prime_parts,
    })
}

fn sample(a: &SampleArgs) -> LabResult<String> {
    let g = sample_gnp(a.vertices, a.p, Seed::new(a.seed))?;
    let text = io::graph_to_string(&g);
    match &a.out {
        Some(p) => {
            io::write_atomic(p, text.as_bytes())?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn sweep(a: &SweepArgs) -> LabResult<String> {
    let cfg = a.exp.config(a.p_grid.clone())?;
    let result = sweep_to_files(&cfg, &a.out, a.exp.workers())?;
    json(&result.rows)
}

fn bisect(a: &BisectArgs) -> LabResult<String> {
    let cfg = a.exp.config(Vec::new())?;
    let opts = BisectOptions {
        lo: a.lo,
        hi: a.hi,
        tolerance: a.tolerance,
        max_samples: a.max_samples,
        workers: a.exp.workers(),
    };
    json(&bisect_threshold(&cfg, &opts)?)
}

/// Runs one command and returns what goes to standard output.
pub fn run(cli: &Cli) -> LabResult<String> {
    match &cli.command {
        Command::Sweep(a) => sweep(a),
        Command::Bisect(a) => bisect(a),
        Command::Decide(a) => decide(a),
        Command::Certify(a) => certify(a),
        Command::Bounds(a) => bounds(a),
        Command::Audit(a) => audit(a),
        Command::Regularity(a) => regularity(a),
        Command::Sample(a) => sample(a),
    }
}

/// Parses `args` (program name first) and runs; returns the exit code.
pub fn main_with_args<I, T>(args: I, stdout: &mut dyn std::io::Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match run(&cli) {
        Ok(out) => match stdout.write_all(out.as_bytes()) {
            Ok(()) => 0,
            Err(e) => {
                eprintln!("error: {}", LabError::io(Path::new("<stdout>"), e));
                4
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String) {
        let mut out = Vec::new();
        let code = main_with_args(std::iter::once("bookramsey").chain(args.iter().copied()), &mut out);
        (code, String::from_utf8(out).unwrap())
    }

    #[test]
    fn exit_codes() {
        let dir = tempfile::tempdir().unwrap();
        let bad = dir.path().join("bad.txt");
        std::fs::write(&bad, "3\n0 7\n").unwrap();
        let bad = bad.to_str().unwrap();
        assert_eq!(run_args(&["frobnicate"]).0, 1);
        assert_eq!(run_args(&["bounds", "--k", "1", "--c", "0.5", "--n", "10", "--gamma", "0.1"]).0, 1);
        assert_eq!(run_args(&["certify", "--graph", bad, "--n", "2"]).0, 2);
        assert_eq!(run_args(&["certify", "--graph", "/nonexistent/g.txt", "--n", "2"]).0, 4);
        let big = dir.path().join("k40.txt");
        std::fs::write(&big, io::graph_to_string(&Graph::complete(40))).unwrap();
        assert_eq!(run_args(&["certify", "--graph", big.to_str().unwrap(), "--n", "2"]).0, 3);
    }

    #[test]
    fn decide_writes_evidence() {
        let dir = tempfile::tempdir().unwrap();
        let g = dir.path().join("k5.txt");
        std::fs::write(&g, io::graph_to_string(&Graph::complete(5))).unwrap();
        let ev = dir.path().join("k5.coloring");
        let (code, out) = run_args(&[
            "decide", "--graph", g.to_str().unwrap(), "--k", "2", "--n", "1", "--evidence", ev.to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["outcome"], "not-arrows");
        let c = io::read_coloring(&ev).unwrap();
        assert!(!TargetSpec::book(2, 1).unwrap().present_in(&c));
    }

    #[test]
    fn certify_k16() {
        let dir = tempfile::tempdir().unwrap();
        let g = dir.path().join("k16.txt");
        std::fs::write(&g, io::graph_to_string(&Graph::complete(16))).unwrap();
        let (code, out) = run_args(&["certify", "--graph", g.to_str().unwrap(), "--n", "3"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["triangles"], 560);
        assert_eq!(v["mrb_upper"], 448);
        assert_eq!(v["budget"], 80.0);
        assert_eq!(v["fires"], true);
    }

    #[test]
    fn sample_then_audit() {
        let dir = tempfile::tempdir().unwrap();
        let g = dir.path().join("g.txt");
        let (code, _) = run_args(&["sample", "--vertices", "60", "--p", "0.5", "--seed", "4", "--out", g.to_str().unwrap()]);
        assert_eq!(code, 0);
        assert_eq!(io::read_graph(&g).unwrap(), sample_gnp(60, 0.5, Seed::new(4)).unwrap());
        let (code, out) = run_args(&["audit", "--graph", g.to_str().unwrap(), "--p", "0.5", "--samples", "10"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["tolerance_is_engineering_choice"], true);
    }

    #[test]
    fn bounds_and_regularity_emit_json() {
        let (code, out) = run_args(&["bounds", "--k", "2", "--c", "2", "--n", "100", "--gamma", "0.2"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["params"]["vertices"], 800);
        assert!(v["upper"]["delta"].as_f64().unwrap() > 0.0);

        let dir = tempfile::tempdir().unwrap();
        let host = Graph::complete(12);
        let c = bookramsey::TwoColoring::monochromatic(&host, bookramsey::Color::Blue);
        let (gp, cp) = (dir.path().join("g.txt"), dir.path().join("c.txt"));
        std::fs::write(&gp, io::graph_to_string(&host)).unwrap();
        std::fs::write(&cp, io::coloring_to_string(&c)).unwrap();
        let (code, out) = run_args(&[
            "regularity", "--graph", gp.to_str().unwrap(), "--coloring", cp.to_str().unwrap(), "--parts", "3",
            "--epsilon", "0.3", "--delta", "0.1", "--p", "1", "--trials", "10",
        ]);
        assert_eq!(code, 0, "{out}");
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["edges"].as_array().unwrap().len(), 3);
    }
}
