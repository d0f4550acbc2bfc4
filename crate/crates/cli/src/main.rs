//! `levrecon`: command-line front end for the reconstruction library.
//!
//! Exit status is 0 on success, 2 when input or parameters are rejected, and
//! 1 on internal failure. Nothing is written to stdout unless the command succeeds.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use levrecon_core::bounds::{generic_list_bounds, oracle_nprime_with, OracleOptions, ReconstructionParams};
use levrecon_core::channel::{transmit, ChannelModel, OutputBatch};
use levrecon_core::codes::{covering_dimension, greedy_code, hamming_code, Code, LinearCode};
use levrecon_core::harness::{self, ExperimentConfig, ExperimentKind, ExperimentResult, DEFAULT_SAMPLES};
use levrecon_core::majority::{majority_vote, verified_decode, verify_radius};
use levrecon_core::probability::{majority_success_lb, verifiable_success_lb, Method};
use levrecon_core::reconstruct::{covering_decode, intersect_list, shatter_decode};
use levrecon_core::{Error, Word};
use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "levrecon", version, about = "Sequence reconstruction over the binary Hamming space")]
struct Cli {
    /// Output format. Defaults to json, or text for `code`.
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,
    /// Write the result to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    /// The plain code file format; `code` only.
    Text,
}

#[derive(clap::Args)]
struct McArgs {
    /// Monte Carlo trials per cell.
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: u64,
    /// Master seed; trial i uses stream i of this seed.
    #[arg(long, env = "LEVRECON_SEED", default_value_t = 0)]
    seed: u64,
    /// Worker threads. Results do not depend on it.
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Pr[z = x] for n=28, t=5, N in {11,21,31,41,101}, with both lower bounds.
    Table1(McArgs),
    /// Pr[verification radius <= e] for n=24, t=7, e in {2,3,4}, N in {11,21,31,41}.
    Table2(McArgs),
    /// A custom Monte Carlo grid. Without --e it estimates Pr[z = x].
    Simulate {
        #[arg(long)]
        n: usize,
        /// Errors per channel.
        #[arg(long)]
        t: usize,
        /// Verification targets; comma separated.
        #[arg(long, value_delimiter = ',')]
        e: Vec<usize>,
        /// Channel counts; comma separated.
        #[arg(long = "N", value_delimiter = ',', required = true)]
        channels: Vec<usize>,
        #[command(flatten)]
        mc: McArgs,
    },
    /// Every list-size and channel-count bound for t = e + l.
    Bounds {
        #[arg(long)]
        n: usize,
        /// Error-correcting capability of the code.
        #[arg(long)]
        e: usize,
        /// Error excess; t = e + l.
        #[arg(long)]
        l: usize,
        /// Target list size for N_h, in [3, l+1].
        #[arg(long)]
        h: Option<usize>,
        /// Radius slack of the bounded-ball condition, in [0, l-1].
        #[arg(long)]
        a: Option<usize>,
        /// Covering radius of the auxiliary code.
        #[arg(long = "R")]
        r: Option<usize>,
        /// Largest number of codewords in a ball of radius e + a.
        #[arg(long = "M")]
        m: Option<u64>,
        /// Override for b in the length threshold n(e, l, b).
        #[arg(long)]
        b: Option<usize>,
        /// Available channel count; decides applicability.
        #[arg(long = "N")]
        channels: Option<BigUint>,
    },
    /// Brute-force largest intersection of h balls of radius e + l around codewords at distance >= 2e+1.
    Oracle {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        e: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        h: usize,
        /// Largest number of configurations tried exhaustively before falling back to search.
        #[arg(long, default_value_t = OracleOptions::default().exhaustive_budget)]
        budget: u64,
        /// Local-search steps in the fallback.
        #[arg(long, default_value_t = OracleOptions::default().local_search_steps)]
        steps: usize,
        #[arg(long, env = "LEVRECON_SEED", default_value_t = 0)]
        seed: u64,
    },
    /// Decode an output batch against a code.
    Decode {
        /// Code file: header `n=<len> d=<dist>` then one word per line.
        #[arg(long)]
        code: PathBuf,
        /// Output batch JSON, as written by `transmit`.
        #[arg(long)]
        batch: PathBuf,
        #[arg(long, value_enum)]
        method: DecodeMethod,
        /// Radius slack for the shattering decoder.
        #[arg(long, default_value_t = 0)]
        a: usize,
        /// Covering radius of D.
        #[arg(long = "R", default_value_t = 1)]
        r: usize,
        /// Linear code D (generator rows) for the covering decoder. Searched when absent.
        #[arg(long = "D")]
        d: Option<PathBuf>,
    },
    /// Majority vote with verification radius and probability bounds.
    Majority {
        #[arg(long)]
        batch: PathBuf,
        /// Code for the verified decoding outcome.
        #[arg(long)]
        code: Option<PathBuf>,
        /// Radius used in the verifiable-success bound; defaults to the code's capability, else 1.
        #[arg(long)]
        k: Option<usize>,
        /// Confidence multiplier for the normal approximation.
        #[arg(long, default_value_t = 3.0)]
        h_conf: f64,
    },
    /// Send a word through N channels and emit the output batch JSON.
    Transmit {
        /// Transmitted word as a 0/1 string.
        #[arg(long)]
        x: Word,
        #[arg(long)]
        e: usize,
        #[arg(long)]
        l: usize,
        #[arg(long = "N")]
        channels: usize,
        #[arg(long, value_enum, default_value_t = Model::Uniform)]
        model: Model,
        #[arg(long, env = "LEVRECON_SEED", default_value_t = 0)]
        seed: u64,
    },
    /// Construct a code and print it in the code file format.
    Code {
        #[command(subcommand)]
        kind: CodeKind,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum DecodeMethod {
    Naive,
    Shatter,
    Covering,
    Majority,
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    Uniform,
    Exact,
    Adversarial,
}

#[derive(Subcommand)]
enum CodeKind {
    /// Lexicographic greedy code of length n and minimum distance d.
    Greedy {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        /// 0 scans in lexicographic order; other seeds permute and translate the scan.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Hamming code of length 2^r - 1.
    Hamming {
        #[arg(long)]
        r: usize,
    },
    /// Smallest-dimension linear R-covering code of length n.
    Covering {
        #[arg(long)]
        n: usize,
        #[arg(long = "R")]
        r: usize,
    },
}

struct Failure {
    code: u8,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExceeded(_) | Error::NoWitness(_) | Error::ChannelContract(_) | Error::Io(_) => 1,
            _ => 2,
        };
        Failure { code, msg: e.to_string() }
    }
}

fn input_err(path: &Path, e: Error) -> Failure {
    Failure { code: 2, msg: format!("{}: {e}", path.display()) }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure { code: 2, msg: msg.into() }
}

type Run = Result<Vec<u8>, Failure>;

fn to_json(v: &impl serde::Serialize) -> Run {
    let mut s = serde_json::to_vec_pretty(v).map_err(|e| Failure { code: 1, msg: e.to_string() })?;
    s.push(b'\n');
    Ok(s)
}

fn to_csv<I, R>(header: &[&str], rows: I) -> Run
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let internal = |e: csv::Error| Failure { code: 1, msg: e.to_string() };
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).map_err(internal)?;
    for r in rows {
        w.write_record(r).map_err(internal)?;
    }
    w.into_inner().map_err(|e| Failure { code: 1, msg: e.to_string() })
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(ToString::to_string).unwrap_or_default()
}

fn experiment(cfg: ExperimentConfig, format: Format) -> Run {
    let result: ExperimentResult = harness::run(&cfg)?;
    match format {
        Format::Json => to_json(&result),
        Format::Csv | Format::Text => {
            let mut buf = Vec::new();
            harness::write_csv_to(&result, &mut buf)?;
            Ok(buf)
        }
    }
}

fn mc_config(kind: ExperimentKind, mc: McArgs) -> ExperimentConfig {
    let mut cfg = match kind {
        ExperimentKind::Table1 => ExperimentConfig::table1(mc.samples, mc.seed),
        _ => ExperimentConfig::table2(mc.samples, mc.seed),
    };
    cfg.worker_count = mc.workers;
    cfg
}

fn read_code(path: &Path) -> Result<Code, Failure> {
    Code::read(path).map_err(|e| input_err(path, e))
}

fn read_batch(path: &Path) -> Result<OutputBatch, Failure> {
    OutputBatch::read_json(path).map_err(|e| input_err(path, e))
}

fn candidates_csv(words: &[Word]) -> Run {
    to_csv(&["candidate"], words.iter().map(|w| [w.to_string()]))
}

fn decode(code: &Path, batch: &Path, method: DecodeMethod, a: usize, r: usize, d: Option<&Path>, format: Format) -> Run {
    let code = read_code(code)?;
    let y = read_batch(batch)?;
    let t = y.t;
    let list = match method {
        DecodeMethod::Naive => intersect_list(&code, &y, t)?,
        DecodeMethod::Shatter => shatter_decode(&code, &y, t, a)?,
        DecodeMethod::Covering => {
            let d = match d {
                Some(p) => LinearCode::read(p).map_err(|e| input_err(p, e))?,
                None => {
                    let l = t
                        .checked_sub(code.capability())
                        .filter(|&l| l > 0)
                        .ok_or_else(|| usage(format!("t = {t} does not exceed the capability {}", code.capability())))?;
                    covering_dimension(l + 2 * r, r)?.1
                }
            };
            covering_decode(&code, &y, t, r, &d)?
        }
        DecodeMethod::Majority => {
            let (_, out) = verified_decode(&code, &y, t)?;
            return match format {
                Format::Json => to_json(&out),
                Format::Csv | Format::Text => {
                    let v = serde_json::to_value(&out).map_err(|e| Failure { code: 1, msg: e.to_string() })?;
                    let field = |k: &str| v.get(k).map(|x| x.to_string().trim_matches('"').to_string()).unwrap_or_default();
                    to_csv(&["outcome", "k", "word", "words", "z"], [[
                        field("outcome"),
                        field("k"),
                        field("word"),
                        v.get("words")
                            .and_then(Value::as_array)
                            .map(|a| a.iter().filter_map(Value::as_str).collect::<Vec<_>>().join(" "))
                            .unwrap_or_default(),
                        field("z"),
                    ]])
                }
            };
        }
    };
    match format {
        Format::Json => to_json(&list),
        Format::Csv | Format::Text => candidates_csv(&list.candidates),
    }
}

fn majority(batch: &Path, code: Option<&Path>, k: Option<usize>, h_conf: f64, format: Format) -> Run {
    let y = read_batch(batch)?;
    let code = code.map(read_code).transpose()?;
    let r = majority_vote(&y)?;
    let radius = verify_radius(&r, y.t);
    let nn = y.len();
    let outcome = match &code {
        Some(c) => Some(verified_decode(c, &y, y.t)?.1),
        None => None,
    };
    let k_bound = k.or(code.as_ref().map(|c| c.capability()).filter(|&e| e > 0)).unwrap_or(1);
    let recursive = majority_success_lb(y.n, y.t, nn, Method::Recursive).ok();
    let simple = majority_success_lb(y.n, y.t, nn, Method::Simple).ok();
    let verifiable = verifiable_success_lb(y.n, y.t, k_bound, nn, h_conf).ok();
    match format {
        Format::Json => to_json(&json!({
            "z": r.z,
            "m": r.minority,
            "k": radius,
            "outcome": outcome,
            "bounds": {
                "thm13": recursive,
                "thm14": simple,
                "cor17": verifiable.as_ref().map(|b| b.value),
                "verifiable_k": k_bound,
                "verifiable_detail": verifiable,
                "verifiable_note": "approximate (CLT)",
            },
        })),
        Format::Csv | Format::Text => to_csv(
            &["z", "m", "k", "outcome", "thm13", "thm14", "cor17"],
            [[
                r.z.to_string(),
                r.minority.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "),
                opt(&radius),
                outcome
                    .as_ref()
                    .and_then(|o| serde_json::to_value(o).ok())
                    .and_then(|v| v.get("outcome").and_then(Value::as_str).map(str::to_string))
                    .unwrap_or_default(),
                opt(&recursive),
                opt(&simple),
                opt(&verifiable.as_ref().map(|b| b.value)),
            ]],
        ),
    }
}

fn run(cli: Cli) -> Run {
    let format = match (cli.format, &cli.command) {
        (Some(f), _) => f,
        (None, Command::Code { .. }) => Format::Text,
        (None, _) => Format::Json,
    };
    if format == Format::Text && !matches!(cli.command, Command::Code { .. }) {
        return Err(usage("--format text applies to the code subcommand only"));
    }
    match cli.command {
        Command::Table1(mc) => experiment(mc_config(ExperimentKind::Table1, mc), format),
        Command::Table2(mc) => experiment(mc_config(ExperimentKind::Table2, mc), format),
        Command::Simulate { n, t, e, channels, mc } => experiment(
            ExperimentConfig {
                kind: ExperimentKind::Custom,
                n,
                t,
                e_values: e,
                channels,
                samples: mc.samples,
                master_seed: mc.seed,
                worker_count: mc.workers,
            },
            format,
        ),
        Command::Bounds { n, e, l, h, a, r, m, b, channels } => {
            let p = ReconstructionParams { n, e, l, h, a, r, m, b, channels };
            p.validate()?;
            let records = generic_list_bounds(&p)?;
            match format {
                Format::Json => to_json(&json!({
                    "params": { "n": n, "e": e, "l": l, "t": p.t(), "h": h, "a": a, "R": r, "M": m, "b": b,
                                "N": p.channels.as_ref().map(ToString::to_string) },
                    "bounds": records,
                })),
                Format::Csv | Format::Text => to_csv(
                    &["name", "kind", "value", "approx", "threshold", "applicable", "note"],
                    records.iter().map(|r| {
                        [
                            r.name.clone(),
                            r.kind.clone(),
                            opt(&r.value),
                            opt(&r.approx),
                            opt(&r.threshold),
                            r.applicable.to_string(),
                            opt(&r.note),
                        ]
                    }),
                ),
            }
        }
        Command::Oracle { n, e, l, h, budget, steps, seed } => {
            let opts = OracleOptions { exhaustive_budget: budget, local_search_steps: steps, seed };
            let res = oracle_nprime_with(n, e, l, h, opts)?;
            match format {
                Format::Json => to_json(&json!({ "n": n, "e": e, "l": l, "h": h, "result": res })),
                Format::Csv | Format::Text => to_csv(
                    &["n", "e", "l", "h", "value", "mode", "configurations"],
                    [[
                        n.to_string(),
                        e.to_string(),
                        l.to_string(),
                        h.to_string(),
                        res.value.to_string(),
                        serde_json::to_value(res.mode).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default(),
                        res.configurations.to_string(),
                    ]],
                ),
            }
        }
        Command::Decode { code, batch, method, a, r, d } => decode(&code, &batch, method, a, r, d.as_deref(), format),
        Command::Majority { batch, code, k, h_conf } => majority(&batch, code.as_deref(), k, h_conf, format),
        Command::Transmit { x, e, l, channels, model, seed } => {
            let model = match model {
                Model::Uniform => ChannelModel::UniformBall,
                Model::Exact => ChannelModel::ExactWeight,
                Model::Adversarial => ChannelModel::AdversarialSet,
            };
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let y = transmit(&x, e + l, channels, model, &mut rng)?;
            match format {
                Format::Json => to_json(&y),
                Format::Csv | Format::Text => candidates_csv(&y.outputs).map(|b| {
                    String::from_utf8(b).unwrap_or_default().replacen("candidate", "output", 1).into_bytes()
                }),
            }
        }
        Command::Code { kind } => {
            let (text, json, words) = match kind {
                CodeKind::Greedy { n, d, seed } => {
                    let c = greedy_code(n, d, seed)?;
                    (c.to_text(), serde_json::to_value(&c), c.words().to_vec())
                }
                CodeKind::Hamming { r } => {
                    let c = hamming_code(r)?;
                    (c.to_text(), serde_json::to_value(&c), c.rows().to_vec())
                }
                CodeKind::Covering { n, r } => {
                    let c = covering_dimension(n, r)?.1;
                    (c.to_text(), serde_json::to_value(&c), c.rows().to_vec())
                }
            };
            match format {
                Format::Text => Ok(text.into_bytes()),
                Format::Json => to_json(&json.map_err(|e| Failure { code: 1, msg: e.to_string() })?),
                Format::Csv => to_csv(&["word"], words.iter().map(|w| [w.to_string()])),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let out = cli.out.clone();
    let result = run(cli).and_then(|bytes| match &out {
        Some(p) => std::fs::write(p, &bytes).map_err(|e| Failure { code: 1, msg: format!("{}: {e}", p.display()) }),
        None => std::io::stdout().write_all(&bytes).map_err(|e| Failure { code: 1, msg: e.to_string() }),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("levrecon: {}", f.msg.lines().next().unwrap_or("error"));
            ExitCode::from(f.code)
        }
    }
}
