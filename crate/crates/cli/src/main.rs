use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use kpath::bench::{
    check_suite, emit_report, gen_queries, run_suite, Algorithm, QuerySet, ReportFormat,
    SuiteError, SuiteOptions,
};
use kpath::graph::{Graph, IngestOptions};
use kpath::io::{load_graph, save_csr, write_edge_list};
use kpath::pefp::{BatchOrder, FlushPolicy, TierConfig};
use kpath::preprocess::{pre_bfs, Query};

#[derive(Parser)]
#[command(
    name = "kpath",
    version,
    about = "Hop-constrained s-t simple path enumeration"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample reachable (s, t) query pairs.
    Gen(GenArgs),
    /// Timed benchmark suite with the equality gate.
    Run(RunArgs),
    /// Equality gate only.
    Check(RunArgs),
    /// Dump Pre-BFS diagnostics for one query.
    Pre(PreArgs),
    /// Convert between edge-list text and binary CSR.
    Convert(ConvertArgs),
}

#[derive(Args)]
struct GraphArgs {
    /// Edge list or binary CSR (detected by magic bytes).
    #[arg(long, short = 'g')]
    graph: PathBuf,
    #[arg(long)]
    keep_self_loops: bool,
    #[arg(long)]
    keep_duplicates: bool,
}

impl GraphArgs {
    fn load(&self) -> Result<Graph> {
        let opts = IngestOptions {
            dedup: !self.keep_duplicates,
            keep_self_loops: self.keep_self_loops,
        };
        load_graph(&self.graph, opts).with_context(|| format!("loading {}", self.graph.display()))
    }
}

#[derive(Args)]
struct GenArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[arg(long, short)]
    k: u32,
    #[arg(long, default_value_t = 1000)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write here instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Batching {
    Dfs,
    Fifo,
}

#[derive(Clone, Copy, ValueEnum)]
enum Flush {
    Segment,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    JsonLines,
}

#[derive(Args)]
struct TierArgs {
    #[arg(long, value_enum, default_value = "dfs")]
    batching: Batching,
    #[arg(long, default_value_t = TierConfig::DEFAULT_BUFFER_CAPACITY)]
    buffer_cap: usize,
    /// Records per flush segment and per external refill [default: buffer-cap / 2].
    #[arg(long)]
    theta1: Option<usize>,
    /// Successor slots per processing batch.
    #[arg(long, default_value_t = TierConfig::DEFAULT_PROCESSING_CAPACITY)]
    theta2: usize,
    #[arg(long, value_enum, default_value = "segment")]
    flush: Flush,
    /// Verify wide batches on a thread pool.
    #[arg(long)]
    parallel_verify: bool,
}

impl TierArgs {
    fn config(&self) -> Result<TierConfig> {
        let mut cfg = TierConfig::new(self.buffer_cap, self.theta2)?;
        if let Some(theta1) = self.theta1 {
            cfg = cfg.with_refill_batch(theta1)?;
        }
        Ok(cfg.with_flush(match self.flush {
            Flush::Segment => FlushPolicy::Segment,
            Flush::All => FlushPolicy::All,
        }))
    }

    fn order(&self) -> BatchOrder {
        match self.batching {
            Batching::Dfs => BatchOrder::Dfs,
            Batching::Fifo => BatchOrder::Fifo,
        }
    }
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// Query file from `kpath gen`. Without it, queries are sampled using
    /// --k, --count and --seed.
    #[arg(long, short)]
    queries: Option<PathBuf>,
    #[arg(long, short)]
    k: Option<u32>,
    #[arg(long, default_value_t = 100)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Comma-separated subset of oracle,bcdfs,join,pefp,pefp-fifo.
    #[arg(long, value_delimiter = ',', default_value = "bcdfs,join,pefp")]
    algorithms: Vec<Algorithm>,
    #[command(flatten)]
    tier: TierArgs,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Zero all timing fields.
    #[arg(long)]
    no_timing: bool,
    #[arg(long, default_value_t = 3)]
    repetitions: usize,
    /// Per-run enumeration budget.
    #[arg(long)]
    timeout_ms: Option<u64>,
    #[arg(long)]
    max_paths: Option<usize>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Write every result path here, grouped by query.
    #[arg(long)]
    emit_paths: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct PreArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[arg(long, short)]
    s: u32,
    #[arg(long, short)]
    t: u32,
    #[arg(long, short)]
    k: u32,
    /// Write the dump here instead of stdout.
    #[arg(long)]
    dump_pre: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Csr,
    Edges,
}

#[derive(Args)]
struct ConvertArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[arg(long, short)]
    output: PathBuf,
    #[arg(long, value_enum, default_value = "csr")]
    to: Target,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Gen(a) => {
            let g = a.graph.load()?;
            let qs = gen_queries(&g, a.k, a.count, a.seed)?;
            write_out(a.output.as_deref(), qs.to_text().as_bytes())?;
        }
        Command::Run(a) => return suite(a, false),
        Command::Check(a) => return suite(a, true),
        Command::Pre(a) => {
            let g = a.graph.load()?;
            let pre = pre_bfs(&g, Query::new(a.s, a.t, a.k)?)?;
            write_out(a.dump_pre.as_deref(), pre.dump().as_bytes())?;
        }
        Command::Convert(a) => {
            let g = a.graph.load()?;
            match a.to {
                Target::Csr => save_csr(&g, &a.output)?,
                Target::Edges => {
                    let mut w = BufWriter::new(fs::File::create(&a.output)?);
                    write_edge_list(&g, &mut w)?;
                    w.flush()?;
                }
            }
            eprintln!(
                "wrote {} ({} vertices, {} edges)",
                a.output.display(),
                g.vertex_count(),
                g.edge_count()
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn suite(a: RunArgs, check_only: bool) -> Result<ExitCode> {
    let g = a.graph.load()?;
    let qs = match (&a.queries, a.k) {
        (Some(path), _) => {
            let text =
                fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            QuerySet::parse(&text)?
        }
        (None, Some(k)) => gen_queries(&g, k, a.count, a.seed)?,
        (None, None) => bail!("either --queries or --k is required"),
    };
    if a.algorithms.is_empty() {
        bail!("no algorithms selected");
    }
    let cfg = a.tier.config()?;
    let mut opts = SuiteOptions {
        repetitions: a.repetitions,
        timeout: a.timeout_ms.map(Duration::from_millis),
        jobs: a.jobs,
        no_timing: a.no_timing,
        batching: a.tier.order(),
        parallel_verify: a.tier.parallel_verify,
        keep_paths: a.emit_paths.is_some(),
        ..SuiteOptions::default()
    };
    if let Some(m) = a.max_paths {
        opts.max_paths = m;
    }

    let outcome = if check_only {
        check_suite(&g, &qs, &a.algorithms, cfg, &opts)
    } else {
        run_suite(&g, &qs, &a.algorithms, cfg, &opts)
    };
    let report = match outcome {
        Ok(r) => r,
        Err(SuiteError::Mismatch(cx)) => {
            eprintln!("{cx}");
            return Ok(ExitCode::from(2));
        }
        Err(e) => return Err(e.into()),
    };

    if let Some(path) = &a.emit_paths {
        let mut w = BufWriter::new(fs::File::create(path)?);
        for (q, r) in &report.paths {
            writeln!(
                w,
                "# s={} t={} k={} count={}",
                q.source,
                q.target,
                q.k,
                r.len()
            )?;
            r.write_lines(&mut w)?;
        }
        w.flush()?;
    }

    if check_only {
        let failed = report.records.iter().filter(|r| r.count.is_none()).count();
        let line = format!(
            "ok: {} queries, {} algorithms agree ({} runs hit a limit)\n",
            qs.queries.len(),
            a.algorithms.len(),
            failed
        );
        write_out(a.output.as_deref(), line.as_bytes())?;
    } else {
        let format = match a.format {
            Format::Text => ReportFormat::Text,
            Format::JsonLines => ReportFormat::JsonLines,
        };
        write_out(a.output.as_deref(), emit_report(&report, format).as_bytes())?;
    }
    Ok(ExitCode::SUCCESS)
}

fn write_out(path: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match path {
        Some(p) => fs::write(p, bytes).with_context(|| format!("writing {}", p.display())),
        None => Ok(io::stdout().lock().write_all(bytes)?),
    }
}
