//! Command-line front end.
//!
//! Word arguments are inline text (`"n=2; l(1,2)"`), `@path` to read a file,
//! or `-` for standard input. Exit status: 0 success, 1 domain error,
//! 2 usage error (including words with different strand counts).

use std::fmt::Write as _;
use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::combing::{comb, kernel_conjugate_form};
use crate::diagram::{layout, to_svg, SvgStyle};
use crate::error::BraidError;
use crate::homotopy::{
    enumerate_generators, make_generator, ClassicalWord, HomotopyGeneratorSpec, MembershipOracle, MembershipVerdict,
    DEFAULT_POOL_FACTOR_LEN,
};
use crate::invariants::{exponent_report, exponent_vector, linking_matrix, linking_report};
use crate::presentation::{validate_relation_set, MixedForm};
use crate::search::{equivalent_bounded, EquivalenceVerdict, SearchBudget};
use crate::text::{format_word, parse_word, parse_word_detailed};
use crate::word::{expand_sigma, BraidWord, Strand};

#[derive(Debug, Parser)]
#[command(name = "vpbraid", about = "Pure virtual braid group toolkit")]
struct Cli {
    /// Emit a JSON mirror of the text report.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args, Clone, Copy)]
struct BudgetArgs {
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..))]
    budget_depth: u64,
    #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    budget_states: u64,
    #[arg(long, default_value_t = 40, value_parser = clap::value_parser!(u64).range(1..))]
    budget_length: u64,
}

impl BudgetArgs {
    fn budget(&self) -> SearchBudget {
        SearchBudget {
            max_depth: self.budget_depth as usize,
            max_states: self.budget_states as usize,
            max_word_length: self.budget_length as usize,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse a word and print it in canonical form.
    Parse {
        word: String,
        /// Allow s(i,j) tokens, printing their λ expansion.
        #[arg(long)]
        expand: bool,
    },
    /// Concatenate two words.
    Mul { a: String, b: String },
    /// Invert a word.
    Inv { word: String },
    /// Free reduction.
    Reduce { word: String },
    /// Remove a strand and relabel the ones above it.
    DeleteStrand { word: String, strand: usize },
    /// Expand the classical generator σ_ij into λ-letters.
    ExpandSigma { i: usize, j: usize, n: usize },
    /// Exponent vector (abelianization).
    ExpVector { word: String },
    /// Linking matrix.
    Link { word: String },
    /// Normal form w₂ w₃ … wₙ.
    Comb { word: String },
    /// Conjugate-product form of a kernel word.
    KernelForm {
        word: String,
        /// Top strand (defaults to the strand count).
        #[arg(long)]
        top: Option<usize>,
    },
    /// Build one generator of the identity-homotopy subgroup.
    Gen {
        n: usize,
        i: Strand,
        j: Strand,
        #[arg(long, default_value = "[]")]
        ga: String,
        #[arg(long, default_value = "[]")]
        gb: String,
        #[arg(long)]
        x: bool,
    },
    /// List generators with factor words up to a given length.
    EnumGens {
        n: usize,
        #[arg(long, default_value_t = 0)]
        max_factor_len: usize,
    },
    /// Membership in the subgroup of braids homotopic to the identity.
    Member {
        word: String,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long, default_value_t = DEFAULT_POOL_FACTOR_LEN)]
        pool_factor_len: usize,
    },
    /// Bounded equivalence search.
    Equiv {
        a: String,
        b: String,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Render a word as SVG.
    Render {
        word: String,
        #[arg(long, short)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = 1.0)]
        scale_x: f64,
        #[arg(long, default_value_t = 1.0)]
        scale_y: f64,
    },
    /// Check every relation instance against the abelianization.
    ValidateRelations {
        /// Check the unbalanced variant of the mixed relation instead.
        #[arg(long)]
        printed: bool,
        #[arg(long, default_value_t = 6)]
        max_n: usize,
    },
}

#[derive(Debug)]
pub struct Outcome {
    pub status: i32,
    pub stdout: Vec<u8>,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<BraidError> for Failure {
    fn from(e: BraidError) -> Self {
        match e {
            BraidError::StrandMismatch { .. } => Failure::Usage(e.to_string()),
            e => Failure::Domain(e.to_string()),
        }
    }
}

struct Report {
    text: String,
    json: Value,
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let status = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            return if status == 0 {
                Outcome { status, stdout: rendered.into_bytes(), stderr: String::new() }
            } else {
                Outcome { status, stdout: Vec::new(), stderr: rendered }
            };
        }
    };
    let as_json = cli.json;
    match execute(cli.command) {
        Ok(Output::Report(r)) => {
            let stdout = if as_json {
                let mut s = serde_json::to_string_pretty(&r.json).expect("json values serialize");
                s.push('\n');
                s
            } else {
                r.text
            };
            Outcome { status: 0, stdout: stdout.into_bytes(), stderr: String::new() }
        }
        Ok(Output::Bytes(b)) => Outcome { status: 0, stdout: b, stderr: String::new() },
        Err(Failure::Usage(m)) => Outcome { status: 2, stdout: Vec::new(), stderr: format!("usage error: {m}\n") },
        Err(Failure::Domain(m)) => Outcome { status: 1, stdout: Vec::new(), stderr: format!("error: {m}\n") },
    }
}

enum Output {
    Report(Report),
    Bytes(Vec<u8>),
}

fn read_source(arg: &str) -> Result<String, Failure> {
    if arg == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Domain(format!("reading stdin: {e}")))?;
        Ok(s)
    } else if let Some(path) = arg.strip_prefix('@') {
        std::fs::read_to_string(path).map_err(|e| Failure::Domain(format!("reading {path}: {e}")))
    } else {
        Ok(arg.to_string())
    }
}

fn word_arg(arg: &str) -> Result<BraidWord, Failure> {
    Ok(parse_word(&read_source(arg)?)?)
}

fn word_report(w: &BraidWord) -> Report {
    Report { text: format!("{}\n", format_word(w)), json: json!({ "word": format_word(w) }) }
}

fn pairs_json<'a>(entries: impl Iterator<Item = ((Strand, Strand), i64)> + 'a) -> Value {
    Value::Array(entries.map(|((a, b), v)| json!([a, b, v])).collect())
}

fn execute(cmd: Command) -> Result<Output, Failure> {
    let report = match cmd {
        Command::Parse { word, expand } => {
            let parsed = parse_word_detailed(&read_source(&word)?)?;
            let text = parsed.format(expand)?;
            Report { json: json!({ "word": text, "expanded_sigma": parsed.used_sigma }), text: format!("{text}\n") }
        }
        Command::Mul { a, b } => word_report(&word_arg(&a)?.multiply(&word_arg(&b)?)?),
        Command::Inv { word } => word_report(&word_arg(&word)?.invert()),
        Command::Reduce { word } => word_report(&word_arg(&word)?.free_reduce()),
        Command::DeleteStrand { word, strand } => word_report(&word_arg(&word)?.delete_strand(strand)?),
        Command::ExpandSigma { i, j, n } => word_report(&expand_sigma(i, j, n)?),
        Command::ExpVector { word } => {
            let v = exponent_vector(&word_arg(&word)?);
            Report { text: exponent_report(&v), json: json!({ "exp": pairs_json(v.iter()) }) }
        }
        Command::Link { word } => {
            let m = linking_matrix(&word_arg(&word)?);
            Report { text: linking_report(&m), json: json!({ "link": pairs_json(m.iter()) }) }
        }
        Command::Comb { word } => {
            let d = comb(&word_arg(&word)?)?;
            let parts: Vec<Value> = d
                .parts
                .iter()
                .map(|p| {
                    json!({
                        "part": p.top,
                        "word": format_word(&p.word),
                        "length": p.conjugate_form.length(),
                        "factors": p.conjugate_form.factors.iter().map(|f| json!({
                            "conjugator": format_word(&f.conjugator),
                            "letter": f.letter.to_string(),
                        })).collect::<Vec<_>>(),
                        "residual": format_word(&p.conjugate_form.residual),
                    })
                })
                .collect();
            Report { text: d.report(), json: json!({ "strands": d.strands, "parts": parts }) }
        }
        Command::KernelForm { word, top } => {
            let w = word_arg(&word)?;
            let top = top.unwrap_or(w.strands());
            let c = kernel_conjugate_form(&w, top)?;
            let mut text = format!("length {}\n", c.length());
            let mut factors = Vec::new();
            for f in &c.factors {
                writeln!(text, "factor {} | {}", format_word(&f.conjugator), f.letter).unwrap();
                factors.push(json!({ "conjugator": format_word(&f.conjugator), "letter": f.letter.to_string() }));
            }
            writeln!(text, "residual {}", format_word(&c.residual)).unwrap();
            Report {
                text,
                json: json!({ "length": c.length(), "factors": factors, "residual": format_word(&c.residual) }),
            }
        }
        Command::Gen { n, i, j, ga, gb, x } => {
            let spec = HomotopyGeneratorSpec {
                strands: n,
                i,
                j,
                g_a: ClassicalWord::parse(&ga)?,
                g_b: ClassicalWord::parse(&gb)?,
                use_x: x,
            };
            let w = make_generator(&spec)?;
            Report {
                text: format!("{}\n", format_word(&w)),
                json: json!({ "spec": spec.to_string(), "word": format_word(&w) }),
            }
        }
        Command::EnumGens { n, max_factor_len } => {
            if n < 2 {
                return Err(Failure::Domain(BraidError::TooFewStrands(n).to_string()));
            }
            let mut text = String::new();
            let mut items = Vec::new();
            for (spec, w) in enumerate_generators(n, max_factor_len) {
                writeln!(text, "{spec}\t{}", format_word(&w)).unwrap();
                items.push(json!({ "spec": spec.to_string(), "word": format_word(&w) }));
            }
            Report { text, json: Value::Array(items) }
        }
        Command::Member { word, budget, pool_factor_len } => {
            let w = word_arg(&word)?;
            let verdict = if linking_matrix(&w).is_zero() {
                MembershipOracle::new(w.strands(), pool_factor_len).is_homotopic_to_identity(&w, &budget.budget())?
            } else {
                let (pair, link) = linking_matrix(&w).first_nonzero().expect("nonzero matrix");
                MembershipVerdict::NonMember { pair, link }
            };
            let json = match &verdict {
                MembershipVerdict::Member(f) => json!({
                    "verdict": "member",
                    "factors": f.factors.iter().map(|x| json!({
                        "conjugator": format_word(&x.conjugator),
                        "generator": x.generator.to_string(),
                        "inverse": x.inverse,
                    })).collect::<Vec<_>>(),
                    "residual_certificate": f.residual_certificate.to_text(),
                }),
                MembershipVerdict::NonMember { pair, link } => {
                    json!({ "verdict": "non_member", "link": [pair.0, pair.1, link] })
                }
                MembershipVerdict::Unknown => json!({ "verdict": "unknown" }),
            };
            Report { text: verdict.to_text(), json }
        }
        Command::Equiv { a, b, budget } => {
            let verdict = equivalent_bounded(&word_arg(&a)?, &word_arg(&b)?, &budget.budget())?;
            match verdict {
                EquivalenceVerdict::Equivalent(c) => Report {
                    text: format!("equivalent\n{}", c.to_text()),
                    json: json!({ "verdict": "equivalent", "certificate": c.to_text() }),
                },
                EquivalenceVerdict::Distinct(w) => Report {
                    text: format!("distinct exp {} {} {} {}\n", w.pair.0, w.pair.1, w.left, w.right),
                    json: json!({ "verdict": "distinct", "exp": [w.pair.0, w.pair.1, w.left, w.right] }),
                },
                EquivalenceVerdict::Unknown { states, depth } => Report {
                    text: format!("unknown states={states} depth={depth}\n"),
                    json: json!({ "verdict": "unknown", "states": states, "depth": depth }),
                },
            }
        }
        Command::Render { word, output, scale_x, scale_y } => {
            if !(scale_x > 0.0 && scale_y > 0.0) {
                return Err(Failure::Usage("scale factors must be positive".into()));
            }
            let svg = to_svg(&layout(&word_arg(&word)?), &SvgStyle::scaled(scale_x, scale_y));
            match output {
                Some(path) => {
                    std::fs::write(&path, &svg)
                        .map_err(|e| Failure::Domain(format!("writing {}: {e}", path.display())))?;
                    Report {
                        text: format!("wrote {}\n", path.display()),
                        json: json!({ "output": path.display().to_string(), "bytes": svg.len() }),
                    }
                }
                None => return Ok(Output::Bytes(svg)),
            }
        }
        Command::ValidateRelations { printed, max_n } => {
            let form = if printed { MixedForm::Printed } else { MixedForm::Corrected };
            let r = validate_relation_set(form, max_n);
            let mut text = String::new();
            for v in &r.violations {
                let idx: Vec<String> = v.indices.iter().map(|i| i.to_string()).collect();
                writeln!(text, "violation {} {}", v.relation, idx.join(" ")).unwrap();
            }
            writeln!(
                text,
                "{} checked={} violations={}",
                if r.passed() { "pass" } else { "fail" },
                r.instances_checked,
                r.violations.len()
            )
            .unwrap();
            Report { text, json: serde_json::to_value(&r).expect("report serializes") }
        }
    };
    Ok(Output::Report(report))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn out(args: &[&str]) -> (i32, String) {
        let o = run(std::iter::once("vpbraid").chain(args.iter().copied()));
        (o.status, String::from_utf8(o.stdout).unwrap())
    }

    #[test]
    fn link_example() {
        assert_eq!(out(&["link", "n=2; l(1,2)"]), (0, "link 1 2 -1\n".into()));
    }

    #[test]
    fn member_example() {
        assert_eq!(out(&["member", "n=2; l(1,2)", "--budget-depth", "4"]), (0, "non_member link 1 2 -1\n".into()));
    }

    #[test]
    fn mismatched_strands_is_usage() {
        let (status, stdout) = out(&["equiv", "n=2; l(1,2)", "n=3; l(1,3)"]);
        assert_eq!(status, 2);
        assert!(stdout.is_empty());
    }

    #[test]
    fn domain_errors_exit_one() {
        let o = run(["vpbraid", "parse", "n=2; l(1,1)"]);
        assert_eq!(o.status, 1);
        assert!(o.stdout.is_empty());
        assert!(o.stderr.contains("equal indices"));
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run(["vpbraid", "frobnicate"]).status, 2);
        assert_eq!(run(["vpbraid", "member", "n=2;", "--budget-depth", "0"]).status, 2);
    }
}
