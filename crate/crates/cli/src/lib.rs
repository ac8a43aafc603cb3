//! Command-line front end. [`run`] maps an argument vector to an exit code
//! and the text written to stdout and stderr, so every path is testable
//! without spawning a process.

mod demo;

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use meadow::fractions::{
    closed_to_simple_fraction_q0, falsify_simple_fraction_claim, to_simple_fraction_finite,
    to_sum_of_simple_fractions,
};
use meadow::identities::parse_equation;
use meadow::models::{
    characteristic, check_eq, eval, AnyModel, Assignment, Meadow, Strategy, Verdict,
};
use meadow::normal::to_basic;
use meadow::poly::to_canonical;
use meadow::syntax::{parse, print};
use meadow::term::{is_closed, Signature, Term};
use meadow::{with_model, Error};
use num_bigint::BigInt;
use serde_json::{json, Value};

/// Exit status for success, valid or sampled-ok checks.
pub const EXIT_OK: i32 = 0;
/// Exit status when a check is refuted.
pub const EXIT_REFUTED: i32 = 1;
/// Exit status for usage and domain errors.
pub const EXIT_ERROR: i32 = 2;

/// Numerals up to this size are rendered as terms; larger ones are only
/// listed as integers.
const RENDER_LIMIT: u32 = 4096;

/// Search bound for characteristics of models that do not know their own.
const CHAR_SEARCH: u64 = 1 << 20;

#[derive(Parser, Debug)]
#[command(
    name = "meadow",
    version,
    about = "Exact computation in divisive meadows (x/0 = 0)"
)]
struct Cli {
    /// Model: q0, mk:<k> or gf:<p>^<n>.
    #[arg(long, global = true)]
    model: Option<String>,
    /// Variable values, e.g. "x=3/4,y=-2".
    #[arg(long, global = true)]
    assign: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for sampled checks.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true, value_enum)]
    strategy: Option<StrategyKind>,
    /// Number of samples for sampled checks.
    #[arg(long, global = true)]
    samples: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum StrategyKind {
    Exhaustive,
    Sampled,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Target {
    SimpleFraction,
    SumOfFractions,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a term and print it back.
    Parse {
        term: String,
        /// Read `inv(..)` instead of `/`.
        #[arg(long)]
        inversive: bool,
    },
    /// Evaluate a term in the model.
    Eval { term: String },
    /// Basic form of a closed term, or ring normal form in one variable.
    Normalize {
        term: String,
        #[arg(long, conflicts_with = "canonical")]
        basic: bool,
        /// Canonical polynomial in this variable.
        #[arg(long, value_name = "VAR")]
        canonical: Option<String>,
    },
    /// Check an equation "lhs = rhs" in the model.
    Check { equation: String },
    /// Rewrite a term into fraction form.
    Simplify {
        term: String,
        #[arg(long, value_enum, default_value_t = Target::SimpleFraction)]
        target: Target,
    },
    /// Find a rational where 1 + 1/x and f(x)/g(x) differ.
    Falsify { f: String, g: String },
    /// Characteristic of the model.
    Char,
    /// Scripted scenarios.
    Demo { name: demo::Demo },
}

/// What a command produced.
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// A finished command: human text, machine report and exit status.
pub(crate) struct Report {
    text: String,
    json: Value,
    code: i32,
}

impl Report {
    fn ok(text: String, json: Value) -> Report {
        Report {
            text,
            json,
            code: EXIT_OK,
        }
    }
}

/// Settings shared by every command.
pub(crate) struct Settings {
    model: Option<String>,
    assign: Option<String>,
    seed: Option<u64>,
    strategy: Option<StrategyKind>,
    samples: Option<u64>,
}

impl Settings {
    fn model(&self) -> Result<AnyModel, Error> {
        self.model.as_deref().unwrap_or("q0").parse()
    }

    /// The model named on the command line, or `default`.
    pub(crate) fn model_or(&self, default: &str) -> Result<AnyModel, Error> {
        self.model.as_deref().unwrap_or(default).parse()
    }

    pub(crate) fn strategy<M: Meadow + ?Sized>(&self, model: &M) -> Strategy {
        let sampled = Strategy::Sampled {
            count: self.samples.unwrap_or(Strategy::DEFAULT_SAMPLES),
            seed: self.seed.unwrap_or(0),
        };
        match self.strategy {
            Some(StrategyKind::Exhaustive) => Strategy::Exhaustive,
            Some(StrategyKind::Sampled) => sampled,
            None if model.is_finite() => Strategy::Exhaustive,
            None => sampled,
        }
    }

    fn assignment<M: Meadow + ?Sized>(&self, model: &M) -> Result<Assignment<M::Elem>, Error> {
        let mut a = Assignment::new();
        let Some(src) = self.assign.as_deref() else {
            return Ok(a);
        };
        for part in src.split(',').filter(|p| !p.trim().is_empty()) {
            let (name, value) = part.split_once('=').ok_or_else(|| Error::InvalidElement {
                model: model.name(),
                text: part.trim().to_string(),
                reason: "expected `name=value`".into(),
            })?;
            a.insert(name.trim().to_string(), model.parse_element(value.trim())?);
        }
        Ok(a)
    }
}

/// Runs the command line `args` (program name first).
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output {
                    code: EXIT_ERROR,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Output {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let settings = Settings {
        model: cli.model,
        assign: cli.assign,
        seed: cli.seed,
        strategy: cli.strategy,
        samples: cli.samples,
    };
    match execute(&settings, cli.command) {
        Ok(r) => Output {
            code: r.code,
            stdout: match cli.format {
                Format::Text => with_newline(r.text),
                Format::Json => {
                    with_newline(serde_json::to_string_pretty(&r.json).expect("reports serialize"))
                }
            },
            stderr: String::new(),
        },
        Err(e) => Output {
            code: EXIT_ERROR,
            stdout: match cli.format {
                Format::Text => String::new(),
                Format::Json => with_newline(
                    serde_json::to_string_pretty(&json!({ "error": e.to_string() })).unwrap(),
                ),
            },
            stderr: format!("error: {e}\n"),
        },
    }
}

fn with_newline(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

fn execute(s: &Settings, command: Command) -> Result<Report, Error> {
    match command {
        Command::Parse { term, inversive } => {
            let sig = if inversive {
                Signature::Inversive
            } else {
                Signature::Divisive
            };
            let t = parse(&term, sig)?;
            let printed = print(&t);
            Ok(Report::ok(
                printed.clone(),
                json!({ "term": printed, "tree": t, "size": t.size(), "vars": t.vars() }),
            ))
        }
        Command::Eval { term } => {
            let t = parse_signed(&term)?;
            let m = s.model()?;
            with_model!(&m, m => {
                let a = s.assignment(m)?;
                let v = m.format(&eval(m, &t, &a)?);
                Ok(Report::ok(v.clone(), json!({
                    "model": m.name(),
                    "term": print(&t),
                    "assignment": format_assignment(m, &a),
                    "value": v,
                })))
            })
        }
        Command::Normalize {
            term,
            basic: _,
            canonical,
        } => {
            let t = meadow::syntax::parse_divisive(&term)?;
            match canonical {
                Some(var) => {
                    let p = to_canonical(&t, &var)?;
                    let coeffs: Vec<String> = p.coeffs().iter().map(BigInt::to_string).collect();
                    Ok(Report::ok(
                        p.to_string(),
                        json!({ "var": var, "polynomial": p.to_string(), "coefficients": coeffs }),
                    ))
                }
                None => {
                    let b = to_basic(&t)?;
                    let summands: Vec<String> = b.summands.iter().map(|f| f.to_string()).collect();
                    let rendered =
                        (b.max_numeral() <= BigInt::from(RENDER_LIMIT)).then(|| print(&b.render()));
                    let mut text = format!("summands: {b}");
                    if let Some(r) = &rendered {
                        write!(text, "\nterm: {r}").unwrap();
                    }
                    Ok(Report::ok(
                        text,
                        json!({ "summands": summands, "term": rendered }),
                    ))
                }
            }
        }
        Command::Check { equation } => {
            let (l, r) = parse_equation(&equation)?;
            let m = s.model()?;
            with_model!(&m, m => check(m, &l, &r, s.strategy(m)))
        }
        Command::Simplify { term, target } => {
            let t = meadow::syntax::parse_divisive(&term)?;
            match target {
                Target::SumOfFractions => {
                    let sum = to_sum_of_simple_fractions(&t)?;
                    let pairs: Vec<Value> = sum
                        .summands
                        .iter()
                        .map(|(f, g)| json!({ "num": f.to_string(), "den": g.to_string() }))
                        .collect();
                    let rendered = print(&sum.render());
                    Ok(Report::ok(
                        format!("summands: {sum}\nterm: {rendered}"),
                        json!({ "summands": pairs, "term": rendered }),
                    ))
                }
                Target::SimpleFraction => {
                    let m = s.model()?;
                    let out = match &m {
                        AnyModel::Q0(_) if is_closed(&t) => {
                            let f = closed_to_simple_fraction_q0(&t)?;
                            return Ok(Report::ok(
                                print(&f.render()),
                                json!({ "model": m.to_string(), "term": print(&f.render()), "value": f.to_string() }),
                            ));
                        }
                        _ => with_model!(&m, m => to_simple_fraction_finite(m, &t))?,
                    };
                    let printed = print(&out);
                    Ok(Report::ok(
                        printed.clone(),
                        json!({ "model": m.to_string(), "term": printed }),
                    ))
                }
            }
        }
        Command::Falsify { f, g } => {
            let fp = to_canonical(&meadow::syntax::parse_divisive(&f)?, "x")?;
            let gp = to_canonical(&meadow::syntax::parse_divisive(&g)?, "x")?;
            let w = falsify_simple_fraction_claim(&fp, &gp)?;
            let text = format!(
                "candidate: 1 + 1/x = ({fp})/({gp})\nwitness: x = {}\n1 + 1/x = {}\nf(x)/g(x) = {}",
                w.witness, w.lhs, w.rhs
            );
            Ok(Report::ok(
                text,
                json!({
                    "f": fp.to_string(),
                    "g": gp.to_string(),
                    "witness": w.witness.to_string(),
                    "lhs": w.lhs.to_string(),
                    "rhs": w.rhs.to_string(),
                }),
            ))
        }
        Command::Char => {
            let m = s.model()?;
            let c = with_model!(&m, m => characteristic(m, CHAR_SEARCH));
            Ok(Report::ok(
                c.to_string(),
                json!({ "model": m.to_string(), "characteristic": c.to_string() }),
            ))
        }
        Command::Demo { name } => demo::run(s, name),
    }
}

/// Terms may use either `/` or `inv(..)`, but not both.
fn parse_signed(src: &str) -> Result<Term, Error> {
    meadow::syntax::parse_divisive(src).or_else(|e| parse(src, Signature::Inversive).map_err(|_| e))
}

pub(crate) fn format_assignment<M: Meadow + ?Sized>(m: &M, a: &Assignment<M::Elem>) -> Value {
    a.iter()
        .map(|(k, v)| (k.clone(), Value::String(m.format(v))))
        .collect::<serde_json::Map<_, _>>()
        .into()
}

/// Checks `l = r` and reports the counterexample with both side values.
pub(crate) fn check<M: Meadow + ?Sized>(
    m: &M,
    l: &Term,
    r: &Term,
    strategy: Strategy,
) -> Result<Report, Error> {
    let rep = check_eq(m, l, r, strategy)?;
    let summary = rep.summarize(m, l, r, strategy);
    let how = match strategy {
        Strategy::Exhaustive => "exhaustive".to_string(),
        Strategy::Sampled { count, seed } => format!("{count} samples, seed {seed}"),
    };
    let mut text = format!(
        "{} in {} ({how}, {} evaluated)",
        rep.verdict,
        m.name(),
        rep.evaluations
    );
    let mut json = serde_json::to_value(&summary).expect("summaries serialize");
    if let Some(a) = &rep.counterexample {
        let (lv, rv) = (m.format(&eval(m, l, a)?), m.format(&eval(m, r, a)?));
        let at: Vec<String> = a
            .iter()
            .map(|(k, v)| format!("{k} = {}", m.format(v)))
            .collect();
        write!(
            text,
            "\ncounterexample: {}\nlhs = {lv}, rhs = {rv}",
            at.join(", ")
        )
        .unwrap();
        json["values"] = json!({ "lhs": lv, "rhs": rv });
    }
    Ok(Report {
        text,
        json,
        code: if rep.verdict == Verdict::Refuted {
            EXIT_REFUTED
        } else {
            EXIT_OK
        },
    })
}
