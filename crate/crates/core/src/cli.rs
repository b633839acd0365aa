//! Command-line front end. Every verb loads an instance file, runs one
//! library operation and prints a report.
//!
//! Exit codes: 0 success, 1 domain error, 2 usage error, 3 property
//! violation reported by `verify`.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::amalgam::{AmalInstance, AmalWord};
use crate::error::{Error, Result};
use crate::hnn::{self, HnnInstance};
use crate::lab::{self, Construction, SuiteParams, DEFAULT_BALL_CAP, DEFAULT_MAX_K, DEFAULT_MAX_LEN};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VIOLATION: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "freewidth",
    version,
    about = "Words, quasimorphisms and palindromic length in HNN extensions and amalgams"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Args, Debug)]
pub struct Common {
    /// Instance file (HNN or amalgam JSON)
    #[arg(long)]
    pub instance: PathBuf,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct WordArgs {
    #[command(flatten)]
    pub common: Common,
    /// Whitespace-separated letters: `g:<elem>`, `t`, `t^-1` or `1:<elem>`, `2:<elem>`
    #[arg(long)]
    pub word: String,
}

#[derive(Args, Debug)]
pub struct Caps {
    #[arg(long = "max-len", default_value_t = DEFAULT_MAX_LEN)]
    pub max_len: usize,
    #[arg(long = "max-k", default_value_t = DEFAULT_MAX_K)]
    pub max_k: usize,
    /// Element cap for balls, palindrome sets and product levels
    #[arg(long, default_value_t = DEFAULT_BALL_CAP)]
    pub cap: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Reduced form of a word
    Reduce(WordArgs),
    /// Canonical normal form of a word
    NormalForm(WordArgs),
    /// Stable-letter signature (HNN)
    Signature(WordArgs),
    /// The run-counting function f
    F(WordArgs),
    /// Whether the word is a group-palindrome
    Palindrome(WordArgs),
    /// Substitutions needed to make the letter word a palindrome
    Hamming(WordArgs),
    /// The K-th witness word and its f
    Witness {
        #[command(flatten)]
        common: Common,
        #[arg(long = "k", visible_alias = "K")]
        k: usize,
    },
    /// Lower bound on m-almost palindromic length from f
    Bound {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long, default_value_t = 0)]
        m: usize,
    },
    /// Enumerate the ball of a given letter radius
    Ball {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        radius: usize,
        #[arg(long, default_value_t = DEFAULT_BALL_CAP)]
        cap: usize,
    },
    /// Capped search for m-almost palindromic length
    Plength {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long, default_value_t = 0)]
        m: usize,
        #[command(flatten)]
        caps: Caps,
    },
    /// Run a property suite
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Ball radius for oracle-consistency
        #[arg(long, default_value_t = 6)]
        radius: usize,
        #[arg(long, default_value_t = 0)]
        m: usize,
        #[command(flatten)]
        caps: Caps,
    },
    /// Witness growth of f and the lower bound
    Growth {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0)]
        m: u64,
        /// Largest K
        #[arg(long = "k", visible_alias = "K")]
        k: usize,
    },
    /// Case classification of an amalgam
    Classify {
        #[command(flatten)]
        common: Common,
    },
}

#[allow(clippy::large_enum_variant)]
enum Instance {
    Hnn(HnnInstance),
    Amal(AmalInstance),
}

fn load_instance(path: &Path) -> Result<Instance> {
    let text = std::fs::read_to_string(path)?;
    let value: Value = serde_json::from_str(&text)?;
    let base = path.parent();
    if value.get("g1").is_some() {
        Ok(Instance::Amal(AmalInstance::from_file(
            &serde_json::from_value(value)?,
            base,
        )?))
    } else if value.get("group").is_some() {
        Ok(Instance::Hnn(HnnInstance::from_file(
            &serde_json::from_value(value)?,
            base,
        )?))
    } else {
        Err(Error::Malformed(
            "instance needs either \"group\" (HNN) or \"g1\"/\"g2\" (amalgam)".into(),
        ))
    }
}

/// A report: JSON value plus its text rendering.
struct Report {
    json: Value,
    text: String,
    violation: bool,
}

impl Report {
    fn new(json: Value, text: impl Into<String>) -> Self {
        Report {
            json,
            text: text.into(),
            violation: false,
        }
    }
}

fn to_json<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn not_applicable(operation: &'static str, construction: &'static str) -> Error {
    Error::NotApplicable {
        operation,
        construction,
    }
}

fn dispatch(command: &Command) -> Result<Report> {
    match command {
        Command::Reduce(a) => match load_instance(&a.common.instance)? {
            Instance::Hnn(h) => {
                let r = h.reduce(&h.parse_word(&a.word)?);
                let s = h.format_word(&r);
                Ok(Report::new(
                    json!({"reduced": s, "identity": h.is_identity(&r), "t_length": r.t_length()}),
                    s,
                ))
            }
            Instance::Amal(g) => {
                let r = g.reduce(&g.parse_word(&a.word)?);
                let s = g.format_word(&r);
                Ok(Report::new(
                    json!({"reduced": s, "identity": g.is_identity(&r), "syllable_length": r.len()}),
                    s,
                ))
            }
        },
        Command::NormalForm(a) => match load_instance(&a.common.instance)? {
            Instance::Hnn(h) => {
                let nf = h.normal_form(&h.parse_word(&a.word)?);
                let s = h.format_word(&nf);
                Ok(Report::new(json!({"normal_form": s}), s))
            }
            Instance::Amal(g) => {
                let nf = g.normal_form(&g.parse_word(&a.word)?);
                let reps = g.format_word(&AmalWord(nf.reps.clone()));
                Ok(Report::new(json!({"h": nf.h, "reps": reps}), nf.to_string()))
            }
        },
        Command::Signature(a) => match load_instance(&a.common.instance)? {
            Instance::Hnn(h) => {
                let sig = h.signature(&h.parse_word(&a.word)?);
                Ok(Report::new(json!({"signature": sig}), sig.to_string()))
            }
            Instance::Amal(_) => Err(not_applicable("signature", "amalgam")),
        },
        Command::F(a) => {
            let f = match load_instance(&a.common.instance)? {
                Instance::Hnn(h) => h.f(&h.parse_word(&a.word)?),
                Instance::Amal(g) => g.f(&g.parse_word(&a.word)?)?,
            };
            Ok(Report::new(json!({"f": f}), f.to_string()))
        }
        Command::Palindrome(a) => {
            let p = match load_instance(&a.common.instance)? {
                Instance::Hnn(h) => h.is_group_palindrome(&h.parse_word(&a.word)?),
                Instance::Amal(g) => g.is_group_palindrome(&g.parse_word(&a.word)?),
            };
            Ok(Report::new(json!({"group_palindrome": p}), p.to_string()))
        }
        Command::Hamming(a) => {
            let d = match load_instance(&a.common.instance)? {
                Instance::Hnn(h) => hnn::hamming_to_palindrome(&h.parse_letters(&a.word)?),
                Instance::Amal(g) => g.hamming_to_palindrome(&g.parse_word(&a.word)?),
            };
            Ok(Report::new(json!({"hamming": d}), d.to_string()))
        }
        Command::Witness { common, k } => {
            let (word, f) = match load_instance(&common.instance)? {
                Instance::Hnn(h) => {
                    let w = h.witness_word(*k)?;
                    (h.format_word(&w), h.f(&w))
                }
                Instance::Amal(g) => {
                    let w = g.witness_word(*k)?;
                    (g.format_word(&w), g.f(&w)?)
                }
            };
            Ok(Report::new(
                json!({"k": k, "word": word, "f": f}),
                format!("{word}\nf = {f}"),
            ))
        }
        Command::Bound { word: a, m } => {
            let m = *m as u64;
            let (f, bound, stated) = match load_instance(&a.common.instance)? {
                Instance::Hnn(h) => {
                    let f = h.f(&h.parse_word(&a.word)?);
                    (f, h.lower_bound(f, m), None)
                }
                Instance::Amal(g) => {
                    let f = g.f(&g.parse_word(&a.word)?)?;
                    (f, g.lower_bound(f, m), g.stated_lower_bound(f, m))
                }
            };
            let mut json = json!({"f": f, "m": m, "lower_bound": bound});
            let mut text = format!("f = {f}, lower bound (m = {m}) = {bound}");
            if let Some(s) = stated {
                json["stated_lower_bound"] = json!(s);
                text.push_str(&format!(", with stated coefficients {s}"));
            }
            Ok(Report::new(json, text))
        }
        Command::Ball { common, radius, cap } => {
            let (len, layers) = match load_instance(&common.instance)? {
                Instance::Hnn(h) => ball_summary(&h, *radius, *cap)?,
                Instance::Amal(g) => ball_summary(&g, *radius, *cap)?,
            };
            Ok(Report::new(
                json!({"radius": radius, "elements": len, "layers": layers}),
                format!("radius {radius}: {len} elements, layers {layers:?}"),
            ))
        }
        Command::Plength { word: a, m, caps } => match load_instance(&a.common.instance)? {
            Instance::Hnn(h) => {
                let w = h.parse_word(&a.word)?;
                plength_report(&h, &w, *m, caps)
            }
            Instance::Amal(g) => {
                let w = g.parse_word(&a.word)?;
                plength_report(&g, &w, *m, caps)
            }
        },
        Command::Verify {
            common,
            suite,
            samples,
            seed,
            radius,
            m,
            caps,
        } => {
            let suite: lab::Suite = suite.parse()?;
            let params = SuiteParams {
                samples: *samples,
                seed: *seed,
                radius: *radius,
                m: *m,
                max_len: caps.max_len,
                max_k: caps.max_k,
                cap: caps.cap,
            };
            let report = match load_instance(&common.instance)? {
                Instance::Hnn(h) => lab::verify_suite(&h, suite, &params)?,
                Instance::Amal(g) => lab::verify_suite(&g, suite, &params)?,
            };
            let mut r = Report::new(to_json(&report), report.to_string());
            r.violation = !report.passed();
            Ok(r)
        }
        Command::Growth { common, m, k } => {
            let report = match load_instance(&common.instance)? {
                Instance::Hnn(h) => lab::growth_report(&h, *m, *k)?,
                Instance::Amal(g) => lab::growth_report(&g, *m, *k)?,
            };
            Ok(Report::new(to_json(&report), report.to_string()))
        }
        Command::Classify { common } => match load_instance(&common.instance)? {
            Instance::Hnn(_) => Err(not_applicable("classify", "hnn")),
            Instance::Amal(g) => {
                let c = g.classification()?;
                let text = format!(
                    "{} (indices {} and {}, hypotheses {})",
                    c.case.label(),
                    c.index1,
                    c.index2,
                    if c.hypotheses_hold { "hold" } else { "fail" }
                );
                Ok(Report::new(to_json(c), text))
            }
        },
    }
}

fn ball_summary<C: Construction>(inst: &C, radius: usize, cap: usize) -> Result<(usize, Vec<usize>)> {
    let ball = lab::install(|| lab::enumerate_ball(inst, radius, cap))?;
    Ok((ball.len(), ball.layers().to_vec()))
}

fn plength_report<C: Construction>(inst: &C, w: &C::Word, m: usize, caps: &Caps) -> Result<Report> {
    let value = lab::install(|| lab::plength_oracle(inst, w, m, caps.max_len, caps.max_k, caps.cap))?;
    let bound = inst.lower_bound(inst.f(w)?, m as u64);
    let shown = value.map_or("unknown".to_string(), |k| k.to_string());
    Ok(Report::new(
        json!({"plength": value, "lower_bound": bound, "m": m, "max_len": caps.max_len, "max_k": caps.max_k}),
        format!("plength = {shown} (lower bound {bound})"),
    ))
}

/// Parse `argv` (including the program name), run, and write the report to
/// `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { out } else { err };
            let _ = write!(sink, "{rendered}");
            return if code == 0 { EXIT_OK } else { EXIT_USAGE };
        }
    };
    let format = match &cli.command {
        Command::Reduce(a)
        | Command::NormalForm(a)
        | Command::Signature(a)
        | Command::F(a)
        | Command::Palindrome(a)
        | Command::Hamming(a)
        | Command::Bound { word: a, .. }
        | Command::Plength { word: a, .. } => a.common.format,
        Command::Witness { common, .. }
        | Command::Ball { common, .. }
        | Command::Verify { common, .. }
        | Command::Growth { common, .. }
        | Command::Classify { common } => common.format,
    };
    match dispatch(&cli.command) {
        Ok(report) => {
            let _ = match format {
                Format::Json => writeln!(out, "{}", serde_json::to_string(&report.json).expect("json")),
                Format::Text => writeln!(out, "{}", report.text),
            };
            if report.violation {
                EXIT_VIOLATION
            } else {
                EXIT_OK
            }
        }
        Err(e) => {
            let _ = match format {
                Format::Json => writeln!(out, "{}", json!({"error": e.name(), "message": e.to_string()})),
                Format::Text => writeln!(err, "error: {}: {e}", e.name()),
            };
            EXIT_DOMAIN
        }
    }
}
