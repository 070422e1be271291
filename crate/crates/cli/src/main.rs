mod output;

use std::io::{self, BufWriter, IsTerminal};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use distcrit::audit::{audit_structural_theorems, StructuralAudit};
use distcrit::automorphism::automorphism_group;
use distcrit::criticality::{is_critical, CriticalityReport};
use distcrit::distinguishing::{count_inequivalent_distinguishing, distinguishing_number};
use distcrit::enumerate::{enumerate_graphs, EnumerationConfig};
use distcrit::graph::Graph;
use distcrit::graph6::{parse_graph6_with, write_graph6, Graph6Options, Graph6Reader};
use distcrit::suites::{
    run_verification_suite_with, search_critical, search_minimal_asymmetric, SearchConfig, SuiteKind,
    SuiteOptions, SUITES,
};
use serde_json::Value;

use output::{Emitter, Format, Record};

#[derive(Parser)]
#[command(name = "distcrit", version, about = "Distinguishing numbers and distinguishing-critical graphs")]
struct Cli {
    /// Output format; JSON lines by default, bare graph6 lines for `gen`.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Worker threads for the search commands (0 = all cores).
    #[arg(long, global = true, env = "DISTCRIT_THREADS", default_value_t = 0)]
    threads: usize,

    /// Reject graph6 records with nonzero padding bits.
    #[arg(long, global = true)]
    strict_padding: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GraphInput {
    /// graph6 strings; read from stdin when none are given.
    graphs: Vec<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Distinguishing number with a witness labeling.
    Dnum(GraphInput),
    /// Number of inequivalent distinguishing k-labelings.
    Count {
        #[arg(long)]
        k: u32,
        #[command(flatten)]
        input: GraphInput,
    },
    /// Automorphism group order, generators and orbits.
    Aut(GraphInput),
    /// Criticality report, with the structural audit for critical graphs.
    Critical(GraphInput),
    /// Stream all graphs of order N up to isomorphism.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, conflicts_with_all = ["disconnected", "trees"])]
        connected: bool,
        #[arg(long, conflicts_with = "trees")]
        disconnected: bool,
        #[arg(long)]
        trees: bool,
    },
    /// Find critical, strong critical or minimal asymmetric graphs.
    Search {
        #[arg(long)]
        max_n: usize,
        #[arg(long, default_value_t = 1)]
        min_n: usize,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        strong: bool,
        #[arg(long, conflicts_with_all = ["d", "strong", "disconnected_only"])]
        minimal_asymmetric: bool,
        #[arg(long)]
        disconnected_only: bool,
    },
    /// Run a named verification suite.
    Verify {
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(SUITES))]
        suite: String,
        #[arg(long)]
        max_n: usize,
        /// Disable the worker pool.
        #[arg(long)]
        sequential: bool,
    },
}

enum Failure {
    Usage(String),
    Decode(String),
    Io(io::Error),
    SuiteFailed,
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type Out = Emitter<BufWriter<io::StdoutLock<'static>>>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if cli.threads > 0 {
        rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global().expect("pool is built once");
    }
    let default_format = cli.format.unwrap_or(Format::Json);
    let mut out = Emitter::new(BufWriter::new(io::stdout().lock()), default_format);
    let result = run(&cli, &mut out).and_then(|()| out.flush().map_err(Failure::Io));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::SuiteFailed) => {
            let _ = out.flush();
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            let _ = out.flush();
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Decode(msg)) => {
            let _ = out.flush();
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli, out: &mut Out) -> Result<(), Failure> {
    let opts = Graph6Options { strict_padding: cli.strict_padding };
    match &cli.command {
        Command::Dnum(input) => for_each_graph(input, opts, |g, at| {
            let r = distinguishing_number(g).map_err(|e| Failure::Usage(format!("{at}: {e}")))?;
            out.emit(&with_graph(g, record! {
                "D" => r.value,
                "method" => r.method.as_str(),
                "witness" => r.witness.colors(),
            }))?;
            Ok(())
        }),
        Command::Count { k, input } => for_each_graph(input, opts, |g, at| {
            let c = count_inequivalent_distinguishing(g, *k).map_err(|e| Failure::Usage(format!("{at}: {e}")))?;
            out.emit(&with_graph(g, record! {
                "k" => k,
                "DGk" => big(c.inequivalent),
                "raw" => big(c.raw),
                "aut_order" => big_str(c.aut_order.to_string()),
            }))?;
            Ok(())
        }),
        Command::Aut(input) => for_each_graph(input, opts, |g, _| {
            let aut = automorphism_group(g, None);
            let gens: Vec<String> = aut.generators.iter().map(|p| p.to_string()).collect();
            out.emit(&with_graph(g, record! {
                "aut_order" => big_str(aut.order.to_string()),
                "generators" => gens,
                "orbits" => aut.orbits,
            }))?;
            Ok(())
        }),
        Command::Critical(input) => for_each_graph(input, opts, |g, at| {
            let report = is_critical(g).map_err(|e| Failure::Usage(format!("{at}: {e}")))?;
            let audit = if report.critical {
                Some(audit_structural_theorems(g, &report).map_err(|e| Failure::Usage(format!("{at}: {e}")))?)
            } else {
                None
            };
            out.emit(&critical_record(g, &report, audit.as_ref()))?;
            Ok(())
        }),
        Command::Gen { n, connected, disconnected, trees } => {
            let config = EnumerationConfig {
                connected_only: *connected,
                disconnected_only: *disconnected,
                tree_only: *trees,
                ..EnumerationConfig::exact(*n)
            };
            let stream = enumerate_graphs(&config).map_err(|e| Failure::Usage(e.to_string()))?;
            for g in stream {
                let g = g.map_err(|e| Failure::Usage(e.to_string()))?;
                match cli.format {
                    None => out.raw_line(&write_graph6(&g))?,
                    Some(_) => out.emit(&with_graph(&g, Record::new()))?,
                }
            }
            Ok(())
        }
        Command::Search { max_n, min_n, d, strong, minimal_asymmetric, disconnected_only } => {
            if *minimal_asymmetric {
                let found = search_minimal_asymmetric(*max_n).map_err(|e| Failure::Usage(e.to_string()))?;
                for g in found.graphs.iter().filter(|g| g.order() >= *min_n) {
                    out.emit(&with_graph(g, record! {"minimal_asymmetric" => true}))?;
                }
                eprintln!("closed under complement: {}", found.closed_under_complement);
                return Ok(());
            }
            let config = SearchConfig {
                min_order: *min_n,
                d: *d,
                strong: *strong,
                disconnected_only: *disconnected_only,
                ..SearchConfig::new(*max_n)
            };
            let hits = search_critical(&config).map_err(|e| Failure::Usage(e.to_string()))?;
            eprintln!("{} graphs found", hits.len());
            for h in &hits {
                out.emit(&critical_record(&h.graph, &h.report, h.audit.as_ref()))?;
            }
            Ok(())
        }
        Command::Verify { suite, max_n, sequential } => {
            let r = run_verification_suite_with(suite, *max_n, &SuiteOptions { parallel: !sequential })
                .map_err(|e| Failure::Usage(e.to_string()))?;
            let failures: Vec<Value> = r
                .failures
                .iter()
                .map(|f| Value::Object(record! {"graph6" => f.graph6, "assertion" => f.assertion, "detail" => f.detail}))
                .collect();
            out.emit(&record! {
                "suite" => r.name,
                "kind" => match r.kind { SuiteKind::Theorem => "theorem", SuiteKind::Conjecture => "conjecture" },
                "max_order" => r.max_order,
                "passed" => r.passed(),
                "graphs_checked" => r.graphs_checked,
                "assertions" => r.assertions,
                "failures" => failures,
                "found" => r.found,
                "elapsed_ms" => r.elapsed.as_millis() as u64,
            })?;
            if r.passed() {
                Ok(())
            } else {
                Err(Failure::SuiteFailed)
            }
        }
    }
}

/// Calls `f` on each input graph with a description of where it came from.
fn for_each_graph(
    input: &GraphInput,
    opts: Graph6Options,
    mut f: impl FnMut(&Graph, &str) -> Result<(), Failure>,
) -> Result<(), Failure> {
    if !input.graphs.is_empty() {
        for (i, s) in input.graphs.iter().enumerate() {
            let at = format!("argument {}", i + 1);
            let g = parse_graph6_with(s.trim(), opts).map_err(|e| Failure::Decode(format!("{at}: {e}")))?;
            f(&g, &at)?;
        }
        return Ok(());
    }
    let stdin = io::stdin();
    if stdin.is_terminal() {
        return Err(Failure::Usage("no graphs given; pass graph6 arguments or pipe them on stdin".into()));
    }
    for item in Graph6Reader::with_options(stdin.lock(), opts) {
        let g = item.map_err(|e| Failure::Decode(format!("stdin {e}")))?;
        f(&g, "stdin")?;
    }
    Ok(())
}

fn with_graph(g: &Graph, payload: Record) -> Record {
    let mut r = record! {"graph6" => write_graph6(g), "order" => g.order()};
    r.extend(payload);
    r
}

/// Exact integers stay numbers while they fit in a u64.
fn big(x: u128) -> Value {
    match u64::try_from(x) {
        Ok(v) => Value::from(v),
        Err(_) => Value::from(x.to_string()),
    }
}

fn big_str(s: String) -> Value {
    match s.parse::<u64>() {
        Ok(v) => Value::from(v),
        Err(_) => Value::from(s),
    }
}

fn critical_record(g: &Graph, r: &CriticalityReport, audit: Option<&StructuralAudit>) -> Record {
    let audit: Value = match audit {
        None => Value::Null,
        Some(a) => a
            .entries
            .iter()
            .map(|e| Value::Object(record! {"id" => e.id, "verdict" => e.verdict.as_str(), "detail" => e.detail}))
            .collect(),
    };
    with_graph(g, record! {
        "D" => r.d,
        "critical" => r.critical,
        "vacuous" => r.vacuous,
        "strong_critical" => r.strong_critical,
        "witness_subset" => r.witness_subset,
        "witness_vertex" => r.witness_vertex,
        "subgraphs_evaluated" => r.subgraphs_evaluated,
        "audit" => audit,
    })
}
