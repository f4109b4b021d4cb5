use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use bdmlab::families::generate_ptolemaic;
use bdmlab::graph_core::connected_graphs_upto;
use bdmlab::reconstruct::consistent::consistent_graphs_with;
use bdmlab::reconstruct::tree::tree_from_bdm;
use bdmlab::reconstruct::verify::Claim;
use bdmlab::{
    bdm, bdm_verdict, boundary_set, connected_graphs, graph_from_sv, hunt_lines, kappa_only_hunt, parse_graph6,
    reconstruct_ptolemaic, recognize, to_dot, verify_claim, write_graph6, BoundaryDistanceMatrix, Error, Family, Graph,
    HuntOptions, SvMatrix,
};
use clap::{ArgGroup, Args, Parser, Subcommand};
use serde_json::json;

const EXIT_FOUND: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(
    name = "bdmlab",
    version,
    about = "Boundary distance matrices of graphs: computation, reconstruction and collision search",
    after_help = "Claim ids for `verify --claim`: L5.1, L5.2, L5.3, T1-strong-resolving, T7-diam2, \
                  T10-irrelevant, PTOL-boundary, INT-boundary, C12-interval-evidence\n\n\
                  Vertices are labelled 1..n in all input and output.\n\
                  Exit codes: 0 ok, 1 error, 2 classes/pairs/violations found, 64 usage error."
)]
struct Cli {
    /// Worker threads (default: all cores for hunt, kappa-hunt and verify, one otherwise).
    #[arg(long, global = true, env = "BDMLAB_JOBS")]
    jobs: Option<usize>,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args)]
struct Input {
    /// graph6 or record file, one item per line; `-` or absent reads stdin.
    #[arg(long = "in", value_name = "PATH")]
    input: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Boundary set, boundary number and boundary distance matrix of each graph.
    Boundary {
        #[command(flatten)]
        input: Input,
        /// Print Graphviz DOT with boundary vertices filled black.
        #[arg(long)]
        dot: bool,
    },
    /// Boundary distance matrix record of each graph.
    Bdm {
        #[command(flatten)]
        input: Input,
    },
    /// Family memberships of each graph.
    Recognize {
        #[command(flatten)]
        input: Input,
    },
    /// Rebuild graphs from distance records.
    #[command(group(ArgGroup::new("method").required(true).args(["sv", "tree", "ptolemaic"])))]
    Reconstruct {
        #[command(flatten)]
        input: Input,
        /// Records `n=..; set=..; rows=..` from a strong resolving set.
        #[arg(long)]
        sv: bool,
        /// Boundary records of trees.
        #[arg(long)]
        tree: bool,
        /// Boundary records of Ptolemaic graphs.
        #[arg(long)]
        ptolemaic: bool,
        #[arg(long)]
        dot: bool,
    },
    /// Every isomorphism class consistent with each boundary record.
    Consistent {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 64)]
        cap: usize,
        #[arg(long, default_value_t = 32)]
        max_free_bits: usize,
    },
    /// Decide whether each graph is determined by its boundary distance matrix.
    Verdict {
        #[command(flatten)]
        input: Input,
    },
    /// Group graphs sharing a boundary distance matrix.
    #[command(group(ArgGroup::new("source").args(["n", "n_max", "input"])))]
    Hunt {
        /// All connected graphs of this order.
        #[arg(long)]
        n: Option<usize>,
        /// All connected graphs of order 1..=N.
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long = "in", value_name = "PATH")]
        input: Option<PathBuf>,
        /// Keep only graphs in this family (repeatable).
        #[arg(long = "family", value_parser = parse_family)]
        families: Vec<Family>,
        #[arg(long)]
        diameter: Option<u32>,
        /// Skip unreadable records instead of stopping.
        #[arg(long)]
        skip_bad: bool,
        /// Spill the first pass to shard files here.
        #[arg(long)]
        shard_dir: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Add wall-clock time to the summary (breaks byte-identical reruns).
        #[arg(long)]
        timing: bool,
    },
    /// Pairs showing that order and boundary number alone do not fix the matrix.
    KappaHunt {
        #[arg(long)]
        n: usize,
    },
    /// Check a catalogued claim over a graph stream.
    #[command(group(ArgGroup::new("source").required(true).args(["n_max", "input", "ptolemaic_samples"])))]
    Verify {
        #[arg(long, value_parser = parse_claim)]
        claim: Claim,
        /// All connected graphs of order 1..=N.
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long = "in", value_name = "PATH")]
        input: Option<PathBuf>,
        /// This many generated Ptolemaic graphs with 3..=max-n vertices.
        #[arg(long)]
        ptolemaic_samples: Option<u64>,
        #[arg(long, default_value_t = 40)]
        max_n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Generate graphs as graph6.
    #[command(group(ArgGroup::new("kind").required(true).args(["ptolemaic", "enumerate"])))]
    Gen {
        /// Random Ptolemaic graphs.
        #[arg(long)]
        ptolemaic: bool,
        /// All connected graphs, one per isomorphism class.
        #[arg(long)]
        enumerate: bool,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn parse_family(s: &str) -> Result<Family, String> {
    Family::parse(s).ok_or_else(|| {
        let names: Vec<&str> = Family::ALL.iter().map(|f| f.name()).collect();
        format!("unknown family `{s}` (expected one of {})", names.join(", "))
    })
}

fn parse_claim(s: &str) -> Result<Claim, String> {
    Claim::parse(s).map_err(|e| e.to_string())
}

fn open(input: &Option<PathBuf>) -> io::Result<Box<dyn BufRead>> {
    Ok(match input {
        Some(p) if p.as_os_str() != "-" => Box::new(BufReader::new(File::open(p)?)),
        _ => Box::new(BufReader::new(io::stdin())),
    })
}

/// Non-empty lines with their 1-based numbers; a leading `>>graph6<<` is dropped.
fn items(input: &Option<PathBuf>) -> Result<Vec<(usize, String)>, Error> {
    let mut out = Vec::new();
    for (i, line) in open(input)?.lines().enumerate() {
        let line = line?;
        let mut text = line.trim();
        if i == 0 {
            text = text.strip_prefix(">>graph6<<").unwrap_or(text);
        }
        if !text.is_empty() {
            out.push((i + 1, text.to_string()));
        }
    }
    Ok(out)
}

fn at(line: usize) -> impl Fn(Error) -> Error {
    move |e| Error::AtLine {
        line,
        source: Box::new(e),
    }
}

fn graphs(input: &Option<PathBuf>) -> Result<Vec<Graph>, Error> {
    items(input)?
        .into_iter()
        .map(|(l, t)| parse_graph6(t.as_bytes()).map_err(at(l)))
        .collect()
}

fn labels(vs: &[usize]) -> Vec<usize> {
    vs.iter().map(|v| v + 1).collect()
}

fn run(cli: Cli, out: &mut dyn Write) -> Result<u8, Error> {
    let mut status = 0;
    match cli.cmd {
        Command::Boundary { input, dot } => {
            for (l, t) in items(&input.input)? {
                let g = parse_graph6(t.as_bytes()).map_err(at(l))?;
                let b = bdm(&g).map_err(at(l))?;
                if dot {
                    write!(out, "{}", to_dot(&g, b.boundary.vertices()))?;
                } else {
                    let rec = json!({
                        "graph": t,
                        "boundary": labels(b.boundary.vertices()),
                        "kappa": b.kappa(),
                        "bdm": b.to_string(),
                    });
                    writeln!(out, "{rec}")?;
                }
            }
        }
        Command::Bdm { input } => {
            for (l, t) in items(&input.input)? {
                let g = parse_graph6(t.as_bytes()).map_err(at(l))?;
                writeln!(out, "{}", bdm(&g).map_err(at(l))?)?;
            }
        }
        Command::Recognize { input } => {
            for (l, t) in items(&input.input)? {
                let g = parse_graph6(t.as_bytes()).map_err(at(l))?;
                let flags = recognize(&g).map_err(at(l))?;
                writeln!(out, "{}", json!({ "graph": t, "flags": flags }))?;
            }
        }
        Command::Reconstruct {
            input,
            sv,
            tree,
            ptolemaic: _,
            dot,
        } => {
            for (l, t) in items(&input.input)? {
                let g = if sv {
                    graph_from_sv(&t.parse::<SvMatrix>().map_err(at(l))?)
                } else {
                    let b: BoundaryDistanceMatrix = t.parse().map_err(at(l))?;
                    if tree {
                        tree_from_bdm(&b)
                    } else {
                        reconstruct_ptolemaic(&b)
                    }
                }
                .map_err(at(l))?;
                if dot {
                    let marked = boundary_set(&g).map(|b| b.vertices().to_vec()).unwrap_or_default();
                    write!(out, "{}", to_dot(&g, &marked))?;
                } else {
                    writeln!(out, "{}", write_graph6(&g))?;
                }
            }
        }
        Command::Consistent {
            input,
            cap,
            max_free_bits,
        } => {
            for (l, t) in items(&input.input)? {
                let b: BoundaryDistanceMatrix = t.parse().map_err(at(l))?;
                let found = consistent_graphs_with(&b, cap, max_free_bits).map_err(at(l))?;
                let members: Vec<String> = found.iter().map(write_graph6).collect();
                writeln!(out, "{}", json!({ "record": t, "classes": members.len(), "graphs": members }))?;
            }
        }
        Command::Verdict { input } => {
            for (l, t) in items(&input.input)? {
                let g = parse_graph6(t.as_bytes()).map_err(at(l))?;
                let v = bdm_verdict(&g).map_err(at(l))?;
                if !v.is_bdm() {
                    status = EXIT_FOUND;
                }
                writeln!(out, "{}", v.to_json(&g))?;
            }
        }
        Command::Hunt {
            n,
            n_max,
            input,
            families,
            diameter,
            skip_bad,
            shard_dir,
            out: path,
            timing,
        } => {
            let start = Instant::now();
            let mut opts = HuntOptions {
                families,
                diameter,
                skip_bad,
                shard_dir,
                input: String::new(),
            };
            let mut report = match (n, n_max) {
                (Some(n), _) => {
                    opts.input = format!("enumerate n={n}");
                    let gs = connected_graphs(n);
                    hunt_lines(gs.iter().map(|g| Ok(write_graph6(g))), &opts)?
                }
                (None, Some(m)) => {
                    opts.input = format!("enumerate n<={m}");
                    let gs = connected_graphs_upto(m);
                    hunt_lines(gs.iter().map(|g| Ok(write_graph6(g))), &opts)?
                }
                (None, None) => {
                    opts.input = match &input {
                        Some(p) if p.as_os_str() != "-" => p.display().to_string(),
                        _ => "stdin".into(),
                    };
                    hunt_lines(open(&input)?.lines(), &opts)?
                }
            };
            if timing {
                report.wall_clock_ms = Some(start.elapsed().as_millis());
            }
            match path {
                Some(p) => {
                    let mut w = BufWriter::new(File::create(p)?);
                    report.write_jsonl(&mut w)?;
                    w.flush()?;
                }
                None => report.write_jsonl(&mut *out)?,
            }
            if !report.classes.is_empty() {
                status = EXIT_FOUND;
            }
        }
        Command::KappaHunt { n } => {
            if !(1..=8).contains(&n) {
                return Err(Error::Record(format!("kappa-hunt supports 1 <= n <= 8, got {n}")));
            }
            let pairs = kappa_only_hunt(n);
            for p in &pairs {
                writeln!(out, "{}", serde_json::to_string(p).expect("serializable"))?;
            }
            writeln!(out, "{}", json!({ "summary": true, "n": n, "pairs": pairs.len() }))?;
            if !pairs.is_empty() {
                status = EXIT_FOUND;
            }
        }
        Command::Verify {
            claim,
            n_max,
            input,
            ptolemaic_samples,
            max_n,
            seed,
        } => {
            let gs = if let Some(m) = n_max {
                connected_graphs_upto(m)
            } else if let Some(k) = ptolemaic_samples {
                let span = max_n.saturating_sub(2).max(1) as u64;
                (0..k).map(|i| generate_ptolemaic(3 + (i % span) as usize, seed.wrapping_add(i))).collect()
            } else {
                graphs(&input)?
            };
            let report = verify_claim(claim.id(), &gs)?;
            writeln!(out, "{}", serde_json::to_string(&report).expect("serializable"))?;
            if !report.holds() {
                status = EXIT_FOUND;
            }
        }
        Command::Gen {
            ptolemaic,
            enumerate: _,
            n,
            count,
            seed,
        } => {
            if ptolemaic {
                for i in 0..count {
                    writeln!(out, "{}", write_graph6(&generate_ptolemaic(n, seed.wrapping_add(i))))?;
                }
            } else {
                if !(1..=10).contains(&n) {
                    return Err(Error::Record(format!("enumeration supports 1 <= n <= 10, got {n}")));
                }
                for g in bdmlab::enumerate_connected(n) {
                    writeln!(out, "{}", write_graph6(&g))?;
                }
            }
        }
    }
    Ok(status)
}

fn default_jobs(cmd: &Command) -> usize {
    match cmd {
        Command::Hunt { .. } | Command::KappaHunt { .. } | Command::Verify { .. } => {
            std::thread::available_parallelism().map_or(1, |n| n.get())
        }
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let jobs = match cli.jobs {
        Some(0) => {
            eprintln!("error: --jobs must be at least 1");
            return ExitCode::from(EXIT_USAGE);
        }
        Some(j) => j,
        None => default_jobs(&cli.cmd),
    };
    let mut out = BufWriter::new(io::stdout());
    let result = bdmlab::with_jobs(jobs, || run(cli, &mut out));
    let flushed = out.flush();
    match result {
        Ok(code) => match flushed {
            Ok(()) => ExitCode::from(code),
            Err(e) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::from(code),
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::FAILURE
            }
        },
        Err(Error::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
