use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use rdd::input::{self, InputError};
use rdd::remote::{run_remote, EndpointConfig};
use rdd::{bundle, check_parallel, json};
use rdd_core::check::{CheckOptions, Mode};
use rdd_core::pretty_print;

const OK: u8 = 0;
const VIOLATED: u8 = 1;
const INPUT_ERROR: u8 = 2;
const REMOTE_ERROR: u8 = 3;

#[derive(Parser)]
#[command(name = "rdd", version, about = "Check RDF data against an RDF Data Description")]
struct Cli {
    /// Bind rdf, rdfs, xsd, foaf and owl before parsing the description.
    #[arg(long, global = true)]
    well_known_prefixes: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a description and print it in canonical form.
    Parse { rdd: PathBuf },
    /// Print the compiled constraints.
    Compile {
        rdd: PathBuf,
        #[arg(long, value_enum, default_value_t = Emit::Fol)]
        emit: Emit,
        /// With `--emit fol`, precede each sentence by its derivations.
        #[arg(long)]
        provenance: bool,
    },
    /// Check N-Triples files (merged into one dataset; `-` is stdin).
    Check {
        rdd: PathBuf,
        #[arg(required = true)]
        data: Vec<PathBuf>,
        #[arg(long, value_enum, default_value_t = CliMode::Indexed)]
        mode: CliMode,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Report at most this many violations per constraint.
        #[arg(long)]
        max_witnesses: Option<usize>,
        /// Treat every term in subject or object position as a resource.
        #[arg(long)]
        lenient_resources: bool,
    },
    /// Write one ASK query per constraint plus a manifest.
    Sparql {
        rdd: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the ASK queries against a SPARQL endpoint.
    RemoteCheck {
        rdd: PathBuf,
        #[arg(long)]
        endpoint: String,
        #[arg(long, default_value_t = 30_000, value_parser = clap::value_parser!(u64).range(1..))]
        timeout_ms: u64,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
        parallel: u64,
        #[arg(long, conflicts_with = "basic_auth")]
        bearer_token: Option<String>,
        /// `user:password`.
        #[arg(long)]
        basic_auth: Option<String>,
        #[arg(long)]
        default_graph: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Fol,
    Ir,
}

#[derive(Clone, Copy, ValueEnum)]
enum CliMode {
    Reference,
    Indexed,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn fail(code: u8, err: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {err}");
    ExitCode::from(code)
}

fn emit(out: String) -> Result<(), InputError> {
    std::io::stdout()
        .lock()
        .write_all(out.as_bytes())
        .map_err(|source| InputError::Io { path: PathBuf::from("<stdout>"), source })
}

fn file_label(path: &Path) -> String {
    path.display().to_string()
}

fn json_text(value: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(value).expect("serializable") + "\n"
}

fn run(cli: Cli) -> Result<u8, InputError> {
    let wk = cli.well_known_prefixes;
    match cli.command {
        Command::Parse { rdd } => {
            let doc = input::parse_rdd_file(&rdd, wk)?;
            emit(pretty_print(&doc))?;
            Ok(OK)
        }
        Command::Compile { rdd, emit: what, provenance } => {
            let loaded = input::load_rdd(&rdd, wk)?;
            let out = match what {
                Emit::Fol => {
                    let mut out = String::new();
                    for c in loaded.constraints.iter() {
                        if provenance {
                            for p in &c.provenance {
                                out.push_str(&format!("# {}:{} {}\n", p.loc.line, p.loc.column, p.derivation));
                            }
                        }
                        out.push_str(&c.fol_text);
                        out.push('\n');
                    }
                    out
                }
                Emit::Ir => json_text(&json::constraints(&loaded.constraints, &file_label(&rdd))),
            };
            emit(out)?;
            Ok(OK)
        }
        Command::Check { rdd, data, mode, format, max_witnesses, lenient_resources } => {
            let loaded = input::load_rdd(&rdd, wk)?;
            let dataset = input::load_data(&data)?;
            let mode = match mode {
                CliMode::Reference => Mode::Reference,
                CliMode::Indexed => Mode::Indexed,
            };
            let opts = CheckOptions { mode, limit: max_witnesses, lenient_resources };
            let report = check_parallel(&dataset, &loaded.constraints, &opts);
            let out = match format {
                Format::Text => report.to_text(),
                Format::Json => json_text(&json::report(&report, &file_label(&rdd), Vec::new())),
            };
            emit(out)?;
            Ok(if report.consistent { OK } else { VIOLATED })
        }
        Command::Sparql { rdd, out } => {
            let loaded = input::load_rdd(&rdd, wk)?;
            let queries =
                bundle::write_bundle(&loaded.constraints, &out).map_err(|source| InputError::Io { path: out.clone(), source })?;
            eprintln!("wrote {} queries to {}", queries.len(), out.display());
            Ok(OK)
        }
        Command::RemoteCheck { rdd, endpoint, timeout_ms, parallel, bearer_token, basic_auth, default_graph, format } => {
            let loaded = input::load_rdd(&rdd, wk)?;
            let cfg = EndpointConfig {
                url: endpoint,
                timeout: Duration::from_millis(timeout_ms),
                bearer_token,
                basic_auth,
                default_graph,
                parallel: parallel as usize,
            };
            let remote = run_remote(&loaded.constraints, &cfg);
            for e in &remote.errors {
                eprintln!("error: query {}: {}", e.id, e.message);
            }
            let out = match format {
                Format::Text if !remote.errors.is_empty() => {
                    format!("ERROR: {} of {} queries failed\n{}", remote.errors.len(), loaded.constraints.len(), remote.report.to_text())
                }
                Format::Text => remote.report.to_text(),
                Format::Json => json_text(&json::report(&remote.report, &file_label(&rdd), remote.json_errors())),
            };
            emit(out)?;
            Ok(if !remote.errors.is_empty() {
                REMOTE_ERROR
            } else if remote.report.consistent {
                OK
            } else {
                VIOLATED
            })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => fail(INPUT_ERROR, e),
    }
}
