//! Batch front end: parse a command line, run one library operation, render
//! the result as JSON or text.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use sympcalc::exchange::{certify_corollary24, heisenberg_quadruple, validate_quadruple, ExchangeQuadruple, Halves};
use sympcalc::fourier::{
    character_data, heisenberg_form, lagrangian_polarization, pairing_identities, polarization_roots,
    verify_lemma21,
};
use sympcalc::liealg::{build_cocharacter, grade, triple_for};
use sympcalc::partitions::{
    composite_rewrite, descend, dominance_compare, enumerate_symplectic, expansion_via_steps, is_special,
    maximal_elements, sp_expansion, validate_symplectic, CompositePartition, GroupKind, RewriteRule,
    SquareClassAssignment, SymplecticPartition,
};
use sympcalc::stabilizer::{decide_isotropy, stabilizer_report, totally_imaginary_constraint, DiagonalQuadraticForm};

pub const DEFAULT_MAX_TWO_N: u32 = 16;
pub const MAX_TWO_N_ENV: &str = "SYMPCALC_MAX_TWO_N";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "sympcalc", version, about = "Exact computations with symplectic partitions and nilpotent orbits")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    Sp,
    Mp,
}

#[derive(Debug, clap::Args)]
struct PartitionArg {
    /// Comma-separated parts.
    #[arg(short = 'p', long = "partition", allow_hyphen_values = true)]
    p: String,
}

#[derive(Debug, clap::Args)]
struct WithClasses {
    #[arg(short = 'p', long = "partition", allow_hyphen_values = true)]
    p: String,
    /// One square class per even part, in part order; all 1 when omitted.
    #[arg(short = 'a', long = "classes", allow_hyphen_values = true)]
    a: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// All symplectic partitions of 2n.
    Enumerate {
        #[arg(long = "two-n")]
        two_n: u32,
    },
    /// Whether the partition is special.
    Special(PartitionArg),
    /// Smallest special partition dominating the input.
    Expand {
        #[command(flatten)]
        p: PartitionArg,
        #[arg(long)]
        trace: bool,
    },
    /// Compare two partitions in the dominance order.
    Dominance {
        #[arg(short = 'p', allow_hyphen_values = true)]
        p: String,
        #[arg(short = 'q', allow_hyphen_values = true)]
        q: String,
    },
    /// Maximal elements of a JSON list of partitions.
    Maximal {
        #[arg(long)]
        set: PathBuf,
    },
    /// Drop the largest part and toggle between sp and mp.
    Descend {
        #[command(flatten)]
        p: PartitionArg,
        #[arg(long, value_enum)]
        kind: Kind,
    },
    /// Explicit sl2-triple for the orbit.
    Sl2(WithClasses),
    /// Dimensions of the graded pieces.
    Grade(PartitionArg),
    /// Character functional on the degree-2 piece.
    Character(WithClasses),
    /// Literal and Lagrangian polarizations of the degree-1 piece.
    Polarization(PartitionArg),
    /// Heisenberg form and pairing identities.
    Heisenberg(WithClasses),
    /// Sweep Heisenberg nondegeneracy over all partitions up to a bound.
    #[command(name = "verify-lemma21")]
    VerifyLemma21 {
        #[arg(long = "max-two-n")]
        max_two_n: Option<u32>,
    },
    /// Validate an exchange quadruple read from JSON.
    Quadruple {
        #[arg(long)]
        file: PathBuf,
    },
    /// Build and certify the exchange quadruple for an orbit.
    #[command(name = "certify-cor24")]
    CertifyCor24(WithClasses),
    /// Stabilizer quadratic forms and their anisotropy.
    Stabilizer {
        #[command(flatten)]
        pa: WithClasses,
        /// Record that the orbit data consists of a single partition.
        #[arg(long)]
        unique: bool,
    },
    /// Decide rational isotropy of a diagonal form.
    Isotropic {
        #[arg(long, allow_hyphen_values = true)]
        form: String,
        /// Include the local invariants at each relevant place.
        #[arg(long)]
        local: bool,
    },
    /// Multiplicity test for even partitions.
    #[command(name = "imaginary-check")]
    ImaginaryCheck(PartitionArg),
    /// Apply a rewrite rule to a composite partition.
    Composite {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        rule: String,
    },
}

/// Exit status and captured streams of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Report {
    value: Value,
    /// Set when a verification found a counterexample.
    counterexample: bool,
}

impl Report {
    fn ok(value: Value) -> Self {
        Report {
            value,
            counterexample: false,
        }
    }
}

fn to_value<T: Serialize>(t: &T) -> Result<Value, String> {
    serde_json::to_value(t).map_err(|e| e.to_string())
}

fn parse_list(s: &str) -> Result<Vec<i64>, String> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| format!("not an integer: {t:?}")))
        .collect()
}

fn partition(s: &str) -> Result<SymplecticPartition, String> {
    validate_symplectic(&parse_list(s)?).map_err(|e| e.to_string())
}

fn classes(p: &SymplecticPartition, a: Option<&str>) -> Result<SquareClassAssignment, String> {
    match a {
        None => Ok(SquareClassAssignment::ones(p)),
        Some(s) => SquareClassAssignment::for_partition(p, &parse_list(s)?).map_err(|e| e.to_string()),
    }
}

fn with_classes(w: &WithClasses) -> Result<(SymplecticPartition, SquareClassAssignment), String> {
    let p = partition(&w.p)?;
    let a = classes(&p, w.a.as_deref())?;
    Ok((p, a))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn sweep_cap() -> Result<u32, String> {
    match std::env::var(MAX_TWO_N_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| format!("{MAX_TWO_N_ENV} must be a non-negative integer, got {v:?}")),
        Err(_) => Ok(DEFAULT_MAX_TWO_N),
    }
}

fn check_cap(two_n: u32) -> Result<(), String> {
    let cap = sweep_cap()?;
    if two_n > cap {
        return Err(format!("2n = {two_n} exceeds the sweep cap {cap} (set {MAX_TWO_N_ENV} to raise it)"));
    }
    Ok(())
}

fn execute(cmd: &Command) -> Result<Report, String> {
    let r = match cmd {
        Command::Enumerate { two_n } => {
            check_cap(*two_n)?;
            let all = enumerate_symplectic(*two_n).map_err(|e| e.to_string())?;
            Report::ok(json!({ "two_n": two_n, "count": all.len(), "partitions": to_value(&all)? }))
        }
        Command::Special(a) => Report::ok(json!({ "special": is_special(&partition(&a.p)?) })),
        Command::Expand { p, trace } => {
            let p = partition(&p.p)?;
            if *trace {
                let (e, steps) = expansion_via_steps(&p);
                Report::ok(json!({ "expansion": to_value(&e)?, "steps": to_value(&steps)? }))
            } else {
                Report::ok(json!({ "expansion": to_value(&sp_expansion(&p))? }))
            }
        }
        Command::Dominance { p, q } => {
            let o = dominance_compare(&partition(p)?, &partition(q)?).map_err(|e| e.to_string())?;
            Report::ok(json!({ "order": to_value(&o)? }))
        }
        Command::Maximal { set } => {
            let set: Vec<SymplecticPartition> = read_json(set)?;
            Report::ok(to_value(&maximal_elements(&set).map_err(|e| e.to_string())?)?)
        }
        Command::Descend { p, kind } => {
            let kind = match kind {
                Kind::Sp => GroupKind::Linear,
                Kind::Mp => GroupKind::Metaplectic,
            };
            let (tail, k) = descend(&partition(&p.p)?, kind).map_err(|e| e.to_string())?;
            Report::ok(json!({ "partition": to_value(&tail)?, "kind": to_value(&k)? }))
        }
        Command::Sl2(w) => {
            let (p, a) = with_classes(w)?;
            let t = triple_for(&p, &a).map_err(|e| e.to_string())?;
            Report::ok(json!({
                "partition": to_value(&p)?,
                "square_classes": a.values(),
                "cocharacter": to_value(&build_cocharacter(&p))?,
                "relations_hold": t.relations_hold(),
                "triple": to_value(&t)?,
            }))
        }
        Command::Grade(a) => {
            let p = partition(&a.p)?;
            let g = grade(&p);
            Report::ok(json!({
                "cocharacter": to_value(&build_cocharacter(&p))?,
                "dims": to_value(&g.dims())?,
                "levels": to_value(&g.levels)?,
            }))
        }
        Command::Character(w) => {
            let (p, a) = with_classes(w)?;
            let c = character_data(&p, &a).map_err(|e| e.to_string())?;
            let mut v = to_value(&c)?;
            v["cocharacter"] = to_value(&build_cocharacter(&p))?;
            Report::ok(v)
        }
        Command::Polarization(a) => {
            let p = partition(&a.p)?;
            Report::ok(json!({
                "literal": to_value(&polarization_roots(&p))?,
                "lagrangian": to_value(&lagrangian_polarization(&p))?,
            }))
        }
        Command::Heisenberg(w) => {
            let (p, a) = with_classes(w)?;
            let h = heisenberg_form(&p, &a).map_err(|e| e.to_string())?;
            let pairings = pairing_identities(&p, &a).map_err(|e| e.to_string())?;
            let fails = !(h.nondegenerate && h.sharp_intersection_dim == 0 && h.lagrangian_isotropic && pairings.all_hold);
            Report {
                value: json!({ "form": to_value(&h)?, "pairings": to_value(&pairings)? }),
                counterexample: fails,
            }
        }
        Command::VerifyLemma21 { max_two_n } => {
            let n = match max_two_n {
                Some(n) => *n,
                None => sweep_cap()?,
            };
            check_cap(n)?;
            let s = verify_lemma21(n).map_err(|e| e.to_string())?;
            Report {
                counterexample: !s.all_pass,
                value: to_value(&s)?,
            }
        }
        Command::Quadruple { file } => {
            let q: ExchangeQuadruple = read_json(file)?;
            let r = validate_quadruple(&q).map_err(|e| e.to_string())?;
            Report {
                counterexample: !r.all_pass,
                value: to_value(&r)?,
            }
        }
        Command::CertifyCor24(w) => {
            let (p, a) = with_classes(w)?;
            let q = heisenberg_quadruple(&p, &a, Halves::Lagrangian).map_err(|e| e.to_string())?;
            let r = validate_quadruple(&q).map_err(|e| e.to_string())?;
            let certified = certify_corollary24(&p, &a).map_err(|e| e.to_string())?;
            Report {
                counterexample: !certified,
                value: json!({ "certified": certified, "quadruple": to_value(&q)?, "report": to_value(&r)? }),
            }
        }
        Command::Stabilizer { pa, unique } => {
            let (p, a) = with_classes(pa)?;
            Report::ok(to_value(&stabilizer_report(&p, &a, *unique).map_err(|e| e.to_string())?)?)
        }
        Command::Isotropic { form, local } => {
            let f = DiagonalQuadraticForm::new(parse_list(form)?).map_err(|e| e.to_string())?;
            let d = decide_isotropy(&f);
            let mut v = json!({ "isotropic": d.isotropic, "witness": to_value(&d.witness)? });
            if *local {
                v["local_data"] = to_value(&d.local_data)?;
            }
            Report::ok(v)
        }
        Command::ImaginaryCheck(a) => {
            let p = partition(&a.p)?;
            Report::ok(to_value(&totally_imaginary_constraint(&p).map_err(|e| e.to_string())?)?)
        }
        Command::Composite { file, rule } => {
            let c: CompositePartition = read_json(file)?;
            let rule: RewriteRule = rule.parse()?;
            Report::ok(to_value(&composite_rewrite(&c, rule).map_err(|e| e.to_string())?)?)
        }
    };
    Ok(r)
}

fn scalar_text(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_array() && !x.is_object()) => {
            Some(format!("[{}]", a.iter().filter_map(scalar_text).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

fn render_text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match scalar_text(x) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}{k}: {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}{k}:");
                        render_text(x, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(a) => {
            for x in a {
                match scalar_text(x) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}- {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}-");
                        render_text(x, indent + 1, out);
                    }
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", scalar_text(other).unwrap_or_default());
        }
    }
}

pub fn render(v: &Value, format: Format) -> String {
    match format {
        // serde_json maps are ordered by key, so this is byte-stable
        Format::Json => format!("{v}\n"),
        Format::Text => {
            let mut s = String::new();
            render_text(v, 0, &mut s);
            s
        }
    }
}

/// Runs one invocation; `argv[0]` is the program name.
pub fn run<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 1,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match execute(&cli.command) {
        Ok(r) => Outcome {
            code: if r.counterexample { 2 } else { 0 },
            stdout: render(&r.value, cli.format),
            stderr: String::new(),
        },
        Err(msg) => Outcome {
            code: 1,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
    }
}
