//! `baseseq`: verification and exhaustive search for base sequences
//! `BS(n+1,n)` and their derived objects.
//!
//! Exit status: 0 on success, 1 on verification/domain failures, 2 on
//! usage errors.

use std::collections::BTreeSet;
use std::fs;
use std::io::{BufWriter, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use baseseq::codec::{self, CodePair, WitnessRecord};
use baseseq::constructions::{golay_pair, ts_derive, TsDerivation};
use baseseq::corpus::Corpus;
use baseseq::gamma::{self, EdgeId, ExpectedShape, NuCounts};
use baseseq::search::{self, Restriction, RowSelection, RunMode, RunOptions};
use baseseq::PMSequence;

#[derive(Parser)]
#[command(name = "baseseq", version, about = "Base-sequence toolkit", disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify a witness file, or the embedded corpus with --corpus.
    Verify {
        /// Witness file ("n: ABcode;CDcode" lines).
        file: Option<PathBuf>,
        /// Verify the embedded corpus instead of a file.
        #[arg(long, conflicts_with = "file")]
        corpus: bool,
    },
    /// Decode a compact code into the four sequences.
    Decode {
        #[arg(long)]
        n: usize,
        /// The code, "ABcode;CDcode".
        #[arg(long)]
        code: String,
    },
    /// Encode four sequences (read from stdin, one +- line each) into
    /// the compact code.
    Encode,
    /// Exhaustive or sampled search for BS(n+1,n) members.
    Search(SearchArgs),
    /// Gamma-graph commands.
    Gamma {
        #[command(subcommand)]
        command: GammaCommand,
    },
    /// T-sequence commands.
    Ts {
        #[command(subcommand)]
        command: TsCommand,
    },
    /// Golay-pair commands.
    Golay {
        #[command(subcommand)]
        command: GolayCommand,
    },
    /// Coverage question over squares and triangular numbers.
    Question {
        #[arg(long)]
        limit: usize,
    },
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Paper,
    All,
    Segment,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    n: usize,
    /// paper: the printed 18-case split; all: every valid prefix
    /// (completeness claims attach here); segment: two-phase mode.
    #[arg(long, value_enum, default_value_t = ModeArg::All)]
    mode: ModeArg,
    /// Case id 1..18 (required for segment mode, optional for paper).
    #[arg(long)]
    case: Option<u8>,
    /// Segment mode: fixed entry row (deterministic window).
    #[arg(long)]
    entry: Option<usize>,
    /// Segment mode: rows completed per window.
    #[arg(long)]
    rows: Option<usize>,
    /// Segment mode: number of sampled windows.
    #[arg(long)]
    repeats: Option<usize>,
    /// Seed for sampled segment selection.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Segment row file to reuse (generated when absent).
    #[arg(long)]
    segment_file: Option<PathBuf>,
    /// Restrict to normal sequences (B forced equal to A).
    #[arg(long, conflicts_with = "near_normal")]
    normal: bool,
    /// Restrict to near-normal sequences (B forced to alternate A).
    #[arg(long)]
    near_normal: bool,
    /// Stop once witnesses for these edges are found, e.g. "1-1,2-3".
    #[arg(long)]
    until_edges: Option<String>,
    /// Output witness file (stdout when absent). Found members are
    /// appended as they appear, so interruption loses nothing.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Parallel workers over disjoint search units.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Subcommand)]
enum GammaCommand {
    /// Build the graph witnessed by a file and print it.
    Build {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        witness: PathBuf,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
    },
    /// Print the conjectured graph.
    Expected {
        #[arg(long)]
        n: usize,
    },
    /// Print the embedded vertex-count table.
    Table1 {
        #[arg(long, default_value_t = 40, value_parser = clap::value_parser!(u8).range(0..=40))]
        max: u8,
    },
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Dot,
    Json,
}

#[derive(Subcommand)]
enum TsCommand {
    /// Derive T-sequences of length t, reporting the chain.
    Derive {
        #[arg(long)]
        t: usize,
    },
}

#[derive(Subcommand)]
enum GolayCommand {
    /// Construct a verified Golay pair of the given length.
    Make {
        #[arg(long)]
        len: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Verify { file, corpus } => cmd_verify(file, corpus),
        Command::Decode { n, code } => cmd_decode(n, &code),
        Command::Encode => cmd_encode(),
        Command::Search(args) => cmd_search(args),
        Command::Gamma { command } => match command {
            GammaCommand::Build { n, witness, format } => cmd_gamma_build(n, &witness, format),
            GammaCommand::Expected { n } => cmd_gamma_expected(n),
            GammaCommand::Table1 { max } => cmd_gamma_table1(max as usize),
        },
        Command::Ts { command } => match command {
            TsCommand::Derive { t } => cmd_ts_derive(t),
        },
        Command::Golay { command } => match command {
            GolayCommand::Make { len } => cmd_golay_make(len),
        },
        Command::Question { limit } => cmd_question(limit),
    }
}

fn load_corpus() -> Result<Corpus> {
    Corpus::load().context("loading corpus")
}

fn cmd_verify(file: Option<PathBuf>, corpus: bool) -> Result<ExitCode> {
    if corpus {
        let summary = load_corpus()?.verify_all();
        print!("{}", summary.to_tsv());
        let rows = summary.row_reports.len();
        println!("# {} of {rows} rows pass", summary.rows_passed());
        return Ok(if summary.passed() { ExitCode::SUCCESS } else { ExitCode::FAILURE });
    }
    let path = file.ok_or_else(|| anyhow!("pass a witness file or --corpus"))?;
    let text = fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
    let records = codec::parse_witness_file(&text)?;
    let mut all_ok = true;
    let mut by_n: std::collections::BTreeMap<usize, Vec<CodePair>> = Default::default();
    for (idx, record) in records.iter().enumerate() {
        let q = codec::decode(&record.code);
        match q.first_violation() {
            None => {
                by_n.entry(record.n).or_default().push(record.code.clone());
                println!("row {}\tn={}\t{}\tok", idx + 1, record.n, record.code);
            }
            Some(v) => {
                all_ok = false;
                println!(
                    "row {}\tn={}\t{}\tFAIL lag {} residual {}",
                    idx + 1,
                    record.n,
                    record.code,
                    v.lag,
                    v.residual
                );
            }
        }
    }
    for (n, codes) in &by_n {
        let graph = gamma::build_gamma(codes, *n)?;
        let cmp = gamma::compare(&graph, &gamma::expected_gamma(*n));
        println!("# coverage for n={n}");
        print!("{}", cmp.to_tsv());
    }
    println!("# {} rows checked", records.len());
    Ok(if all_ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn cmd_decode(n: usize, code: &str) -> Result<ExitCode> {
    let pair = CodePair::parse(code, n)?;
    let q = codec::decode(&pair);
    println!("n = {n}");
    println!("A = {}", q.a);
    println!("B = {}", q.b);
    println!("C = {}", q.c);
    println!("D = {}", q.d);
    match q.first_violation() {
        None => println!("base sequences: yes"),
        Some(v) => println!("base sequences: no (lag {} residual {})", v.lag, v.residual),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_encode() -> Result<ExitCode> {
    let mut input = String::new();
    std::io::stdin().read_to_string(&mut input).context("reading sequences from stdin")?;
    let lines: Vec<&str> = input.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
    if lines.len() != 4 {
        bail!("expected four +- lines (A, B, C, D), got {}", lines.len());
    }
    let seqs: Vec<PMSequence> = lines
        .iter()
        .map(|l| PMSequence::from_str(l))
        .collect::<Result<_, _>>()
        .context("parsing +- sequences")?;
    let [a, b, c, d]: [PMSequence; 4] = seqs.try_into().expect("length checked");
    let q = baseseq::BaseQuadruple::new(a, b, c, d)?;
    let code = codec::encode(&q)?;
    println!("{}", WitnessRecord { n: q.n(), code });
    Ok(ExitCode::SUCCESS)
}

fn parse_until_edges(text: &str) -> Result<BTreeSet<EdgeId>> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<EdgeId>().map_err(|e| anyhow!("{e}")))
        .collect()
}

fn cmd_search(args: SearchArgs) -> Result<ExitCode> {
    let restriction = if args.normal {
        Restriction::Normal
    } else if args.near_normal {
        Restriction::NearNormal
    } else {
        Restriction::Free
    };
    let mode = match args.mode {
        ModeArg::Paper => RunMode::Paper { case: args.case },
        ModeArg::All => RunMode::All,
        ModeArg::Segment => {
            let case = args.case.ok_or_else(|| anyhow!("segment mode needs --case"))?;
            let rows_per_window = args.rows.ok_or_else(|| anyhow!("segment mode needs --rows"))?;
            let selection = match (args.entry, args.repeats) {
                (Some(entry), None) => RowSelection::Window { entry, count: rows_per_window },
                (None, Some(repeats)) => RowSelection::Sampled { count: rows_per_window, repeats },
                (None, None) => bail!("segment mode needs --entry or --repeats"),
                (Some(_), Some(_)) => bail!("--entry and --repeats are mutually exclusive"),
            };
            let rows = match &args.segment_file {
                Some(path) if path.exists() => {
                    let text = fs::read_to_string(path)
                        .with_context(|| format!("reading {}", path.display()))?;
                    Some(search::parse_segment_file(&text)?)
                }
                _ => None,
            };
            let rows = match rows {
                Some(rows) => Some(rows),
                None => {
                    let table = search::case_table(search::Parity::of(args.n));
                    let spec = table
                        .iter()
                        .find(|c| c.id == case)
                        .ok_or_else(|| anyhow!("no case {case}"))?;
                    let generated = search::segment_phase1(args.n, spec, restriction)?;
                    if let Some(path) = &args.segment_file {
                        fs::write(path, search::render_segment_file(&generated))
                            .with_context(|| format!("writing {}", path.display()))?;
                        eprintln!("segment file: {} rows written to {}", generated.len(), path.display());
                    }
                    Some(generated)
                }
            };
            RunMode::Segment { case, selection, rows }
        }
    };

    let opts = RunOptions {
        n: args.n,
        mode,
        restriction,
        jobs: args.jobs.max(1),
        seed: args.seed,
        until_edges: args.until_edges.as_deref().map(parse_until_edges).transpose()?,
    };

    let mut sink: Box<dyn Write> = match &args.out {
        Some(path) => Box::new(BufWriter::new(
            fs::File::create(path).with_context(|| format!("creating {}", path.display()))?,
        )),
        None => Box::new(std::io::stdout().lock()),
    };
    let n = args.n;
    let mut write_error = None;
    let stats = search::run_search(
        &opts,
        |q| {
            if write_error.is_some() {
                return;
            }
            let line = match codec::encode(q) {
                Ok(code) => WitnessRecord { n, code }.to_string(),
                Err(_) => format!("# unencodable member: {} {} {} {}", q.a, q.b, q.c, q.d),
            };
            if let Err(e) = writeln!(sink, "{line}").and_then(|_| sink.flush()) {
                write_error = Some(e);
            }
        },
        |line| eprintln!("{line}"),
    )?;
    if let Some(e) = write_error {
        return Err(e).context("writing witness output");
    }
    eprintln!(
        "search: {} found over {} units{}",
        stats.found,
        stats.units,
        if stats.stopped_early { " (stopped early)" } else { "" }
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_gamma_build(n: usize, witness: &PathBuf, format: FormatArg) -> Result<ExitCode> {
    let text = fs::read_to_string(witness).with_context(|| format!("reading {}", witness.display()))?;
    let records = codec::parse_witness_file(&text)?;
    let codes: Vec<CodePair> = records.into_iter().map(|r| r.code).collect();
    let graph = gamma::build_gamma(&codes, n)?;
    match format {
        FormatArg::Dot => print!("{}", graph.to_dot()),
        FormatArg::Json => println!("{}", serde_json::to_string_pretty(&graph.to_json())?),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_gamma_expected(n: usize) -> Result<ExitCode> {
    let expected = gamma::expected_gamma(n);
    println!("n = {n}");
    for (i, p) in expected.vertices.iter().enumerate() {
        println!("vertex {}: {}", i + 1, p);
    }
    match expected.shape {
        ExpectedShape::CompleteWithLoops(v) => println!("shape: complete with loops on {v} vertices"),
        ExpectedShape::CompleteBipartite(v0, v1) => println!("shape: complete bipartite {v0}x{v1}, no loops"),
        ExpectedShape::TwoCompleteWithLoops(v0, v1) => {
            println!("shape: two complete-with-loops components ({v0} and {v1})")
        }
        ExpectedShape::Excepted => println!("shape: no conjectured description for this n"),
    }
    if let Some(ids) = expected.edge_ids() {
        let rendered: Vec<String> = ids.iter().map(EdgeId::to_string).collect();
        println!("expected ({}): {}", rendered.len(), rendered.join(" "));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_gamma_table1(max: usize) -> Result<ExitCode> {
    let corpus = load_corpus()?;
    println!("n\tnu0\tnu1");
    for entry in corpus.table1().iter().filter(|e| e.n <= max) {
        match entry.printed {
            NuCounts::Even { nu0, nu1 } => println!("{}\t{}\t{}", entry.n, nu0, nu1),
            NuCounts::Odd(nu) => println!("{}\t{}\t-", entry.n, nu),
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_ts_derive(t: usize) -> Result<ExitCode> {
    let corpus = load_corpus()?;
    match ts_derive(t, &corpus) {
        TsDerivation::Derived { quad, chain } => {
            for step in &chain {
                println!("# {step}");
            }
            print!("{}", quad.render());
            Ok(ExitCode::SUCCESS)
        }
        TsDerivation::Unknown => {
            println!("TS({t}): unknown (no derivation available from this toolkit)");
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn cmd_golay_make(len: usize) -> Result<ExitCode> {
    let pair = golay_pair(len)?;
    println!("{}", pair.first());
    println!("{}", pair.second());
    Ok(ExitCode::SUCCESS)
}

fn cmd_question(limit: usize) -> Result<ExitCode> {
    let (evens, odds) = gamma::question_coverage(limit);
    let render = |v: &[usize]| {
        if v.is_empty() {
            "none".to_owned()
        } else {
            v.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
        }
    };
    println!("uncovered evens <= {limit}: {}", render(&evens));
    println!("uncovered odds <= {limit}: {}", render(&odds));
    Ok(ExitCode::SUCCESS)
}
