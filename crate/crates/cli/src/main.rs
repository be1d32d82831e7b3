use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use morse_core::axioms::{check_instance, Axiom};
use morse_core::eval::{sweep, BenchmarkShape};
use morse_core::io::{parse_distance, parse_map, parse_partition, write_edge_list, write_matrix, InputFormat};
use morse_core::monotonic::apply_monotonic;
use morse_core::preorder::{LabelOrder, TieTolerance};
use morse_core::{MorseClustering, MorseInstance, PseudoDistance};

/// Morse clustering of weighted graphs.
///
/// Vertices are 1-based in every file. Inputs ending in `.csv` are read as
/// symmetric distance matrices (0 off the diagonal means no edge); `.tsv`
/// files as `u<TAB>v<TAB>weight` edge lists. The MORSE_THREADS environment
/// variable caps the worker threads.
#[derive(Parser, Debug)]
#[command(name = "morse", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cluster a distance and print the partition as JSON.
    Cluster(ClusterArgs),
    /// Print the Morse flow as TSV (`v  phi(v)  is_critical`).
    Flow(FlowArgs),
    /// Apply a P-monotonic transformation and write the new distance.
    Transform(TransformArgs),
    /// Check a clustering axiom on random inputs; exit code 1 on failure.
    Check(CheckArgs),
    /// Score unsupervised Morse clustering on planted-partition graphs.
    Eval(EvalArgs),
}

#[derive(Args, Debug)]
struct Input {
    /// Distance file (`.csv` matrix or `.tsv` edge list).
    #[arg(long = "input", visible_aliases = ["dist", "edges"], value_name = "FILE")]
    path: PathBuf,
    /// Override the format implied by the extension: csv or tsv.
    #[arg(long)]
    format: Option<InputFormat>,
}

impl Input {
    fn format(&self) -> anyhow::Result<InputFormat> {
        self.format
            .or_else(|| InputFormat::from_path(&self.path))
            .ok_or_else(|| anyhow!("cannot tell the format of {}; pass --format csv or --format tsv", self.path.display()))
    }

    fn load(&self) -> anyhow::Result<PseudoDistance> {
        let text = read(&self.path)?;
        Ok(parse_distance(&text, self.format()?).with_context(|| format!("reading {}", self.path.display()))?)
    }
}

#[derive(Args, Debug)]
struct Clustering {
    /// sir, k:<int>, delta:<float> or unsup.
    #[arg(long)]
    instance: MorseInstance,
    /// Relative tolerance under which two weights count as tied.
    #[arg(long, default_value_t = 0.0)]
    epsilon: f64,
}

impl Clustering {
    fn run(&self, d: &PseudoDistance) -> anyhow::Result<MorseClustering> {
        if !(self.epsilon >= 0.0 && self.epsilon.is_finite()) {
            bail!("--epsilon must be a non-negative number");
        }
        Ok(self.instance.run_with(d, &LabelOrder::identity(), TieTolerance(self.epsilon))?)
    }
}

#[derive(Args, Debug)]
struct ClusterArgs {
    #[command(flatten)]
    input: Input,
    #[command(flatten)]
    clustering: Clustering,
}

#[derive(Args, Debug)]
struct FlowArgs {
    #[command(flatten)]
    input: Input,
    #[command(flatten)]
    clustering: Clustering,
    /// Also write the basins as JSON, `{"basins": {root: [members]}}`.
    #[arg(long, value_name = "FILE")]
    forest: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct TransformArgs {
    #[command(flatten)]
    input: Input,
    /// Partition JSON, `{"n": .., "clusters": [[1, 2], ..]}`.
    #[arg(long, value_name = "FILE")]
    partition: PathBuf,
    /// Expansive map JSON, `{"points": [[x, y], ..], "tail_slope": s}`.
    #[arg(long, value_name = "FILE")]
    map: PathBuf,
    /// Where to write the result, in the input's format; stdout if omitted.
    #[arg(long, short, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CheckArgs {
    /// scale-invariance, richness, connected-richness, morse-richness,
    /// consistency or monotonic-consistency.
    #[arg(long)]
    axiom: Axiom,
    #[arg(long)]
    instance: MorseInstance,
    /// Number of vertices.
    #[arg(long, default_value_t = 6)]
    n: usize,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug)]
struct EvalArgs {
    #[arg(long, default_value_t = 300)]
    n: usize,
    #[arg(long, default_value_t = 5)]
    communities: usize,
    #[arg(long, default_value_t = 12)]
    degree: usize,
    /// Mixing levels, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "0.05,0.2,0.4,0.6,0.8")]
    mu: Vec<f64>,
    /// Seed range `a..b` (b excluded).
    #[arg(long, default_value = "0..20", value_parser = parse_range)]
    seeds: std::ops::Range<u64>,
    #[arg(long, default_value = "unsup")]
    instance: MorseInstance,
}

fn parse_range(s: &str) -> Result<std::ops::Range<u64>, String> {
    let (a, b) = s.split_once("..").ok_or("expected a..b")?;
    let a: u64 = a.trim().parse().map_err(|_| format!("bad start `{a}`"))?;
    let b: u64 = b.trim().parse().map_err(|_| format!("bad end `{b}`"))?;
    if a >= b {
        return Err("empty seed range".into());
    }
    Ok(a..b)
}

/// Everything needed to repeat a run; embedded in JSON outputs.
#[derive(Serialize, Debug)]
struct RunConfig {
    command: &'static str,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    inputs: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    instance: Option<MorseInstance>,
    #[serde(skip_serializing_if = "Option::is_none")]
    epsilon: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    format: &'static str,
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn print_json(value: &impl Serialize) -> anyhow::Result<()> {
    let mut out = std::io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

/// Outcome of a command that ran to completion.
enum Outcome {
    Done,
    AxiomFailed,
}

fn cluster(args: ClusterArgs) -> anyhow::Result<Outcome> {
    let d = args.input.load()?;
    let out = args.clustering.run(&d)?;
    #[derive(Serialize)]
    struct Report<'a> {
        config: RunConfig,
        partition: &'a morse_core::Partition,
        critical: Vec<usize>,
    }
    print_json(&Report {
        config: RunConfig {
            command: "cluster",
            inputs: vec![args.input.path.display().to_string()],
            instance: Some(args.clustering.instance),
            epsilon: Some(args.clustering.epsilon),
            seed: None,
            format: "json",
        },
        partition: &out.partition,
        critical: out.flow.critical_vertices().iter().map(|v| v + 1).collect(),
    })?;
    Ok(Outcome::Done)
}

fn flow(args: FlowArgs) -> anyhow::Result<Outcome> {
    let d = args.input.load()?;
    let out = args.clustering.run(&d)?;
    let mut text = String::from("v\tphi\tis_critical\n");
    for v in 0..d.n() {
        let critical = u8::from(out.flow.is_critical(v));
        text.push_str(&format!("{}\t{}\t{critical}\n", v + 1, out.flow.apply(v) + 1));
    }
    std::io::stdout().lock().write_all(text.as_bytes())?;
    if let Some(path) = args.forest {
        #[derive(Serialize)]
        struct Dump {
            config: RunConfig,
            basins: std::collections::BTreeMap<usize, Vec<usize>>,
        }
        let dump = Dump {
            config: RunConfig {
                command: "flow",
                inputs: vec![args.input.path.display().to_string()],
                instance: Some(args.clustering.instance),
                epsilon: Some(args.clustering.epsilon),
                seed: None,
                format: "json",
            },
            basins: out.forest.basins_one_based(),
        };
        let json = serde_json::to_string_pretty(&dump)? + "\n";
        fs::write(&path, json).with_context(|| format!("cannot write {}", path.display()))?;
    }
    Ok(Outcome::Done)
}

fn transform(args: TransformArgs) -> anyhow::Result<Outcome> {
    let d = args.input.load()?;
    let p = parse_partition(&read(&args.partition)?)?;
    let eta = parse_map(&read(&args.map)?)?;
    let d2 = apply_monotonic(&d, &p, &eta)?;
    let text = match args.input.format()? {
        InputFormat::Matrix => write_matrix(&d2),
        InputFormat::EdgeList => write_edge_list(&d2),
    };
    match args.output {
        Some(path) => fs::write(&path, text).with_context(|| format!("cannot write {}", path.display()))?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(Outcome::Done)
}

fn check(args: CheckArgs) -> anyhow::Result<Outcome> {
    let report = check_instance(args.instance, args.axiom, args.n, args.trials, args.seed)?;
    #[derive(Serialize)]
    struct Out<'a> {
        config: RunConfig,
        n: usize,
        requested_trials: usize,
        report: &'a morse_core::axioms::AxiomReport,
    }
    print_json(&Out {
        config: RunConfig {
            command: "check",
            inputs: Vec::new(),
            instance: Some(args.instance),
            epsilon: None,
            seed: Some(args.seed),
            format: "json",
        },
        n: args.n,
        requested_trials: args.trials,
        report: &report,
    })?;
    Ok(if report.passed { Outcome::Done } else { Outcome::AxiomFailed })
}

fn eval(args: EvalArgs) -> anyhow::Result<Outcome> {
    let shape = BenchmarkShape {
        n: args.n,
        communities: args.communities,
        degree: args.degree,
    };
    let rows = sweep(args.instance, shape, &args.mu, args.seeds.clone())?;
    let mut text = format!(
        "# planted partition (stand-in for LFR): n={} communities={} degree={} seeds={}..{} instance={}\n\
         # NMI = mutual information / arithmetic mean of the entropies\n\
         mu\tmean_nmi\tstd\n",
        args.n, args.communities, args.degree, args.seeds.start, args.seeds.end, args.instance
    );
    for r in rows {
        text.push_str(&format!("{}\t{:.6}\t{:.6}\n", r.mu, r.mean_nmi, r.std));
    }
    std::io::stdout().lock().write_all(text.as_bytes())?;
    Ok(Outcome::Done)
}

fn configure_threads() -> anyhow::Result<()> {
    if let Ok(value) = std::env::var("MORSE_THREADS") {
        let threads: usize = value
            .trim()
            .parse()
            .ok()
            .filter(|&t| t > 0)
            .ok_or_else(|| anyhow!("MORSE_THREADS must be a positive integer, got `{value}`"))?;
        rayon::ThreadPoolBuilder::new().num_threads(threads).build_global()?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| match cli.command {
        Command::Cluster(a) => cluster(a),
        Command::Flow(a) => flow(a),
        Command::Transform(a) => transform(a),
        Command::Check(a) => check(a),
        Command::Eval(a) => eval(a),
    });
    match result {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::AxiomFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
