//! The `valkey` command line: one JSON document per invocation on stdout.
//!
//! Exit status: 0 on success or a passing check, 1 on a failing check, 2 on
//! usage, parse or semantic errors, 3 when a family prefix is too short to
//! evaluate the input.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value as Json};

use crate::error::{Error, Result};
use crate::family::{limit_check, mlv_correspondence, FamilyPrefix};
use crate::graded::{equivalent, initial_form, inq_prime_divides, y_divides};
use crate::ground::{GroundFieldConfig, Value};
use crate::harness::{self, enumerate_below, Bounds, Sampler};
use crate::keypoly::{abstract_key_check, alpha, compare_keys, epsilon, psi_member};
use crate::parse::parse_poly;
use crate::poly::Poly;
use crate::valuation::{MacLaneChain, ValuationDescriptor};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputMode {
    Json,
    Pretty,
}

#[derive(Debug, Parser)]
#[command(name = "valkey", about = "Exact computation with valuations on K[x]", disable_version_flag = true)]
pub struct Cli {
    /// Output format; the VALKEY_OUTPUT environment variable takes precedence.
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub output: OutputMode,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct DescriptorArg {
    /// Descriptor JSON file.
    #[arg(short = 'd', long = "descriptor")]
    pub descriptor: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// ν(f).
    Eval {
        #[command(flatten)]
        d: DescriptorArg,
        #[arg(short = 'f', long = "poly")]
        poly: String,
    },
    /// The q-expansion of f.
    Expand {
        #[arg(short = 'q', long = "base")]
        base: String,
        #[arg(short = 'f', long = "poly")]
        poly: String,
        /// Ground field when no descriptor is given: PAdic(p), TAdic(Q) or TAdic(GF(p)).
        #[arg(long, default_value = "TAdic(Q)")]
        ground: String,
        #[arg(short = 'd', long = "descriptor")]
        descriptor: Option<PathBuf>,
    },
    /// ε(f) with its argmax set.
    Epsilon {
        #[command(flatten)]
        d: DescriptorArg,
        #[arg(short = 'f', long = "poly")]
        poly: String,
    },
    /// α of the key at a chain step.
    Alpha {
        #[command(flatten)]
        d: DescriptorArg,
        #[arg(long)]
        step: usize,
    },
    /// Membership of f in Ψ of the key at a chain step.
    Psi {
        #[command(flatten)]
        d: DescriptorArg,
        #[arg(long)]
        step: usize,
        #[arg(short = 'f', long = "poly")]
        poly: String,
    },
    /// Whether the key at a chain step is a key polynomial.
    CheckKey {
        #[command(flatten)]
        d: DescriptorArg,
        #[arg(long)]
        step: usize,
    },
    /// The implications between two key polynomials Q (-q) and Q' (-f).
    CompareKeys {
        #[command(flatten)]
        d: DescriptorArg,
        #[arg(short = 'q', long = "base")]
        key: String,
        #[arg(short = 'f', long = "poly")]
        other: String,
    },
    /// in_Q(f) for the truncation of the descriptor at Q.
    InitialForm {
        #[command(flatten)]
        d: DescriptorArg,
        #[arg(short = 'q', long = "base")]
        key: String,
        #[arg(short = 'f', long = "poly")]
        poly: String,
    },
    /// f ∼ g under the descriptor; pass -f twice.
    Equivalent {
        #[command(flatten)]
        d: DescriptorArg,
        #[arg(short = 'f', long = "poly", num_args = 1, required = true)]
        polys: Vec<String>,
    },
    /// y | in_Q(f), or in_Q(Q') | in_Q(f) with Q the key at --step and Q' given by -q.
    Divides {
        #[command(flatten)]
        d: DescriptorArg,
        #[arg(short = 'q', long = "base")]
        key: String,
        #[arg(short = 'f', long = "poly")]
        poly: String,
        #[arg(long)]
        step: Option<usize>,
    },
    /// Operations on a family prefix file.
    Family {
        #[command(subcommand)]
        op: FamilyOp,
    },
    /// Runs a verification suite and reports every failure.
    Check {
        suite: Suite,
        #[command(flatten)]
        d: DescriptorArg,
        #[command(flatten)]
        sampler: SamplerArgs,
        #[arg(long)]
        step: Option<usize>,
        /// The polynomial q or Q for the theorem1 and mlv-key suites.
        #[arg(short = 'q', long = "base")]
        key: Option<String>,
        /// γ for the theorem1 suite.
        #[arg(long)]
        gamma: Option<String>,
    },
    Version,
}

#[derive(Debug, Subcommand)]
pub enum FamilyOp {
    Stabilize {
        #[command(flatten)]
        d: DescriptorArg,
        #[arg(short = 'f', long = "poly")]
        poly: String,
    },
    Classify {
        #[command(flatten)]
        d: DescriptorArg,
        #[arg(short = 'f', long = "poly")]
        poly: String,
    },
    LimitCheck {
        #[command(flatten)]
        d: DescriptorArg,
        #[arg(short = 'q', long = "base")]
        key: String,
        #[arg(long)]
        gamma: String,
        #[command(flatten)]
        sampler: SamplerArgs,
    },
}

#[derive(Debug, Args)]
pub struct SamplerArgs {
    #[arg(long, default_value_t = 4)]
    pub degree: usize,
    #[arg(long, default_value_t = 4)]
    pub height: u32,
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

impl SamplerArgs {
    fn sampler(&self) -> Sampler {
        Sampler::new(self.degree, self.height, self.trials, self.seed)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Axioms,
    Theorem1,
    Lemma23,
    Graded,
    CompleteSet,
    MlvKey,
    KeyRelations,
    Correspondence,
}

/// Exit status and the JSON document to print.
#[derive(Debug, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
}

/// Runs the CLI on `args` (program name first), reading `VALKEY_OUTPUT`.
pub fn run(args: Vec<String>) -> Outcome {
    run_with_env(args, std::env::var("VALKEY_OUTPUT").ok().as_deref())
}

/// As [`run`], with the value of `VALKEY_OUTPUT` passed explicitly.
pub fn run_with_env(args: Vec<String>, output_env: Option<&str>) -> Outcome {
    let env_mode = output_env.and_then(|v| OutputMode::from_str(v, true).ok());
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand) {
                return Outcome { status: 0, stdout: e.to_string() };
            }
            let doc = json!({"error": {"kind": "Usage", "message": e.to_string().trim_end()}});
            return finish(doc, env_mode.unwrap_or(OutputMode::Json), 2);
        }
    };
    let mode = env_mode.unwrap_or(cli.output);
    match dispatch(&cli.command) {
        Ok((doc, pass)) => finish(doc, mode, if pass { 0 } else { 1 }),
        Err(e) => {
            let status = if matches!(e, Error::NotStabilized(_)) { 3 } else { 2 };
            finish(error_document(&e), mode, status)
        }
    }
}

fn error_document(e: &Error) -> Json {
    let mut err = Map::new();
    err.insert("kind".into(), json!(e.kind()));
    err.insert("message".into(), json!(e.to_string()));
    if let Error::Parse { line, column, .. } = e {
        err.insert("line".into(), json!(line));
        err.insert("column".into(), json!(column));
    }
    json!({ "error": err })
}

fn finish(doc: Json, mode: OutputMode, status: i32) -> Outcome {
    let mut obj = Map::new();
    obj.insert("schemaVersion".into(), json!(SCHEMA_VERSION));
    match doc {
        Json::Object(m) => obj.extend(m),
        other => {
            obj.insert("result".into(), other);
        }
    }
    let doc = Json::Object(obj);
    let stdout = match mode {
        OutputMode::Json => serde_json::to_string(&doc),
        OutputMode::Pretty => serde_json::to_string_pretty(&doc),
    }
    .expect("serializable");
    Outcome { status, stdout }
}

fn to_json(value: &impl Serialize) -> Json {
    serde_json::to_value(value).expect("serializable")
}

fn read(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Precondition(format!("cannot read {}: {e}", path.display())))
}

fn descriptor(d: &DescriptorArg) -> Result<ValuationDescriptor> {
    ValuationDescriptor::from_json(&read(&d.descriptor)?)
}

fn chain(d: &DescriptorArg) -> Result<MacLaneChain> {
    MacLaneChain::from_descriptor(&descriptor(d)?)
}

fn family(d: &DescriptorArg) -> Result<FamilyPrefix> {
    FamilyPrefix::from_json(&read(&d.descriptor)?)
}

fn poly(v: &ValuationDescriptor, text: &str) -> Result<Poly> {
    parse_poly(&v.restrict_to_ground(), text)
}

fn value(text: &str) -> Result<Value> {
    text.parse::<Value>().map_err(|_| Error::Parse { line: 1, column: 1, message: format!("invalid value {text:?}") })
}

fn required<'a>(arg: &'a Option<String>, name: &str, suite: Suite) -> Result<&'a str> {
    arg.as_deref().ok_or_else(|| Error::Precondition(format!("suite {suite:?} needs --{name}")))
}

fn required_step(step: Option<usize>, suite: Suite) -> Result<usize> {
    step.ok_or_else(|| Error::Precondition(format!("suite {suite:?} needs --step")))
}

/// The result document and whether it counts as a pass.
fn dispatch(command: &Command) -> Result<(Json, bool)> {
    match command {
        Command::Eval { d, poly: f } => {
            let v = descriptor(d)?;
            let w = v.eval(&poly(&v, f)?)?;
            Ok((json!({ "value": w }), true))
        }
        Command::Expand { base, poly: f, ground, descriptor: path } => {
            let cfg = match path {
                Some(p) => ValuationDescriptor::from_json(&read(p)?)?.restrict_to_ground(),
                None => ground.parse::<GroundFieldConfig>()?,
            };
            let q = parse_poly(&cfg, base)?;
            let e = parse_poly(&cfg, f)?.q_expansion(&q)?;
            let parts: Vec<String> = e.parts.iter().map(|p| p.to_string()).collect();
            Ok((json!({ "base": q.to_string(), "parts": parts }), true))
        }
        Command::Epsilon { d, poly: f } => {
            let v = descriptor(d)?;
            Ok((to_json(&epsilon(&v, &poly(&v, f)?)?), true))
        }
        Command::Alpha { d, step } => {
            let c = chain(d)?;
            let a = alpha(&c, *step)?;
            let key = c.key(*step)?.to_string();
            Ok((json!({ "step": step, "key": key, "alpha": a.map_or(json!("inf"), |n| json!(n)) }), true))
        }
        Command::Psi { d, step, poly: f } => {
            let c = chain(d)?;
            let candidate = poly(c.top(), f)?;
            let member = psi_member(&c, *step, &candidate)?;
            Ok((json!({ "step": step, "candidate": candidate.to_string(), "member": member }), true))
        }
        Command::CheckKey { d, step } => {
            let verdict = abstract_key_check(&chain(d)?, *step)?;
            let pass = verdict.is_verified();
            Ok((json!({ "step": step, "verdict": verdict, "pass": pass }), pass))
        }
        Command::CompareKeys { d, key, other } => {
            let v = descriptor(d)?;
            let report = compare_keys(&v, &poly(&v, key)?, &poly(&v, other)?)?;
            let pass = report.pass;
            Ok((to_json(&report), pass))
        }
        Command::InitialForm { d, key, poly: f } => {
            let v = descriptor(d)?;
            let form = initial_form(&v, &poly(&v, key)?, &poly(&v, f)?)?;
            Ok((to_json(&form), true))
        }
        Command::Equivalent { d, polys } => {
            let v = descriptor(d)?;
            let [f, g] = polys.as_slice() else {
                return Err(Error::Precondition("equivalent takes exactly two -f arguments".into()));
            };
            let (f, g) = (poly(&v, f)?, poly(&v, g)?);
            Ok((json!({ "f": f.to_string(), "g": g.to_string(), "equivalent": equivalent(&v, &f, &g)? }), true))
        }
        Command::Divides { d, key, poly: f, step } => {
            let v = descriptor(d)?;
            let (q, f) = (poly(&v, key)?, poly(&v, f)?);
            let divides = match step {
                Some(i) => inq_prime_divides(&MacLaneChain::from_descriptor(&v)?, *i, &q, &f)?,
                None => y_divides(&v, &q, &f)?,
            };
            let relation = if step.is_some() { "in_Q(Q') | in_Q(f)" } else { "y | in_Q(f)" };
            Ok((json!({ "relation": relation, "key": q.to_string(), "f": f.to_string(), "divides": divides }), true))
        }
        Command::Family { op } => family_op(op),
        Command::Check { suite, d, sampler, step, key, gamma } => {
            let s = sampler.sampler();
            let v = descriptor(d)?;
            let report = match suite {
                Suite::Axioms => harness::check_axioms(&v, &s)?,
                Suite::Theorem1 => {
                    let q = poly(&v, required(key, "base", *suite)?)?;
                    harness::check_theorem1(&v, &q, &value(required(gamma, "gamma", *suite)?)?, &s)?
                }
                Suite::Lemma23 => {
                    harness::check_lemma23(&MacLaneChain::from_descriptor(&v)?, required_step(*step, *suite)?, &s)?
                }
                Suite::Graded => {
                    harness::check_graded(&MacLaneChain::from_descriptor(&v)?, required_step(*step, *suite)?, &s)?
                }
                Suite::CompleteSet => harness::check_complete_set(&MacLaneChain::from_descriptor(&v)?, &s)?,
                Suite::MlvKey => harness::check_mlv_key(&v, &poly(&v, required(key, "base", *suite)?)?, &s)?,
                Suite::KeyRelations => harness::check_key_relations(&MacLaneChain::from_descriptor(&v)?, &s)?,
                Suite::Correspondence => {
                    let c = MacLaneChain::from_descriptor(&v)?;
                    let bounds = Bounds { degree: sampler.degree, height: sampler.height };
                    let r = mlv_correspondence(&c, required_step(*step, *suite)?, bounds, &s)?;
                    let pass = r.pass;
                    return Ok((to_json(&r), pass));
                }
            };
            let pass = report.pass;
            Ok((to_json(&report), pass))
        }
        Command::Version => Ok((json!({ "version": env!("CARGO_PKG_VERSION") }), true)),
    }
}

fn family_op(op: &FamilyOp) -> Result<(Json, bool)> {
    match op {
        FamilyOp::Stabilize { d, poly: f } => {
            let fam = family(d)?;
            let f = poly(fam.base(), f)?;
            Ok((to_json(&fam.stabilize(&f)?), true))
        }
        FamilyOp::Classify { d, poly: f } => {
            let fam = family(d)?;
            let f = poly(fam.base(), f)?;
            Ok((to_json(&fam.classify(&f)?), true))
        }
        FamilyOp::LimitCheck { d, key, gamma, sampler } => {
            let fam = family(d)?;
            let q = poly(fam.base(), key)?;
            let s = sampler.sampler();
            let ground = fam.base().restrict_to_ground();
            let n = q.degree_or_zero();
            let mut samples = enumerate_below(&ground, n, sampler.height.min(2), 400);
            let mut rng = s.rng();
            for _ in 0..s.trials {
                samples.push(s.random_below(&mut rng, &ground, n.max(1)));
            }
            let report = limit_check(&fam, &q, &value(gamma)?, &samples)?;
            let pass = report.pass;
            Ok((to_json(&report), pass))
        }
    }
}
