//! The `qrep` command line.
//!
//! Exit codes: 0 on success (and when every verification check passes),
//! 1 when a check fails or an operation is refused on mathematical grounds,
//! 2 on usage, I/O and parse errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::fixtures::PaperFixtures;
use crate::format::{parse_quiver, parse_representation, print_representation};
use crate::functors::{membership, sigma, sigma_inv, FunctorResult};
use crate::linalg::FieldTag;
use crate::par::Execution;
use crate::quiver::{DimVector, Quiver, ReflectionWord};
use crate::rep::{
    end_dim, ext_cocycle_basis, ext_dim_formula, hom_dim, is_indecomposable_fp_with, Representation,
    DEFAULT_SEARCH_BUDGET,
};
use crate::verify::verify_with_fixtures;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "qrep", version, about = "Exact computations with quiver representations")]
struct Cli {
    /// Quiver file.
    #[arg(long, global = true)]
    quiver: Option<PathBuf>,

    /// Field to work over: Q or F<p>. Representation files are converted.
    #[arg(long, global = true)]
    field: Option<String>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,

    /// Run searches on one thread.
    #[arg(long, global = true)]
    sequential: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    /// One `key=value` per line.
    Kv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Ringel form <a, b>.
    Euler {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Apply a simple reflection or a word of them (rightmost first).
    Reflect {
        #[arg(long)]
        a: String,
        #[arg(long, conflicts_with = "word", required_unless_present = "word")]
        vertex: Option<usize>,
        #[arg(long)]
        word: Option<String>,
    },
    /// Whether a vector is a positive real root.
    Realroot {
        #[arg(long)]
        root: String,
    },
    /// A reflection word for the reflection along a positive real root.
    Word {
        #[arg(long)]
        root: String,
    },
    /// Real roots below a root that pair nonnegatively with it both ways.
    Candidates {
        #[arg(long)]
        root: String,
    },
    /// dim Hom(x, y).
    Hom(PairArgs),
    /// dim Ext¹(x, y).
    Ext(PairArgs),
    /// dim End(x).
    End {
        #[arg(long)]
        x: PathBuf,
    },
    /// Exhaustive indecomposability test over a prime field.
    Indec {
        #[arg(long)]
        x: PathBuf,
        #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET)]
        budget: u64,
    },
    /// Hom and Ext¹ dimensions between s and x in both directions.
    Membership(FunctorArgs),
    /// Universal extension of x by s from above and below.
    Sigma(FunctorArgs),
    /// Removes copies of s from x below and above.
    SigmaInv(FunctorArgs),
    /// Run the full counterexample verification.
    VerifyPaper(VerifyArgs),
}

#[derive(Debug, Args)]
struct PairArgs {
    #[arg(long)]
    x: PathBuf,
    #[arg(long)]
    y: PathBuf,
}

#[derive(Debug, Args)]
struct FunctorArgs {
    #[arg(long)]
    s: PathBuf,
    #[arg(long)]
    x: PathBuf,
    /// Write the resulting representation here.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long)]
    x_alpha: Option<PathBuf>,
    #[arg(long)]
    x_beta1: Option<PathBuf>,
    #[arg(long)]
    x_gamma1: Option<PathBuf>,
}

/// A failure with its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) | Error::UnknownField(_) | Error::NotPrime(_) | Error::LengthMismatch { .. } => {
                EXIT_USAGE
            }
            _ => EXIT_FAILURE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

/// Human lines and `key=value` pairs for one result.
#[derive(Default)]
struct Output {
    human: Vec<String>,
    kv: Vec<(String, String)>,
    code: i32,
}

impl Output {
    fn human(&mut self, line: impl Into<String>) -> &mut Self {
        self.human.push(line.into());
        self
    }

    fn kv(&mut self, key: impl Into<String>, value: impl ToString) -> &mut Self {
        self.kv.push((key.into(), value.to_string()));
        self
    }
}

/// Runs the command line `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let format = cli.format;
    match execute(cli) {
        Ok(o) => {
            let written = match format {
                Format::Human => o.human.iter().try_for_each(|l| writeln!(out, "{l}")),
                Format::Kv => o.kv.iter().try_for_each(|(k, v)| writeln!(out, "{k}={v}")),
            };
            if written.is_err() {
                return EXIT_USAGE;
            }
            o.code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

struct Context {
    quiver: Option<Quiver>,
    field: Option<FieldTag>,
    mode: Execution,
}

impl Context {
    fn quiver(&self) -> Result<&Quiver, Failure> {
        self.quiver
            .as_ref()
            .ok_or_else(|| usage("this command needs --quiver <file>"))
    }

    fn vector(&self, text: &str) -> Result<DimVector, Failure> {
        let q = self.quiver()?;
        let v = parse_vector(text, q.vertex_count()).map_err(usage)?;
        q.check_len(&v)?;
        Ok(v)
    }

    fn rep(&self, path: &Path) -> Result<Representation, Failure> {
        load_rep(path, self.quiver()?, self.field)
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_rep(path: &Path, quiver: &Quiver, field: Option<FieldTag>) -> Result<Representation, Failure> {
    let rep = parse_representation(&read(path)?, quiver)
        .map_err(|e| usage(format!("{}:{e}", path.display())))?;
    match field {
        Some(f) if f != rep.field() => Ok(rep.convert(f)?),
        _ => Ok(rep),
    }
}

/// `e<i>` for a unit vector, otherwise a comma list.
fn parse_vector(text: &str, n: usize) -> Result<DimVector, String> {
    if let Some(i) = text.strip_prefix('e') {
        let i: usize = i.parse().map_err(|_| format!("invalid unit vector `{text}`"))?;
        if i == 0 || i > n {
            return Err(format!("vertex {i} out of range 1..={n}"));
        }
        return Ok(DimVector::unit(n, i));
    }
    text.parse()
}

fn execute(cli: Cli) -> Result<Output, Failure> {
    let quiver = match &cli.quiver {
        Some(path) => Some(
            parse_quiver(&read(path)?).map_err(|e| usage(format!("{}:{e}", path.display())))?,
        ),
        None => None,
    };
    let field = cli
        .field
        .as_deref()
        .map(str::parse::<FieldTag>)
        .transpose()
        .map_err(|e| usage(e.to_string()))?;
    let ctx = Context {
        quiver,
        field,
        mode: if cli.sequential { Execution::Sequential } else { Execution::Parallel },
    };
    let mut o = Output::default();

    match cli.command {
        Command::Euler { a, b } => {
            let (a, b) = (ctx.vector(&a)?, ctx.vector(&b)?);
            let v = ctx.quiver()?.euler_form(&a, &b)?;
            o.human(v.to_string()).kv("euler", v);
        }
        Command::Reflect { a, vertex, word } => {
            let a = ctx.vector(&a)?;
            let q = ctx.quiver()?;
            let word = match (vertex, word) {
                (Some(v), _) => ReflectionWord::new(vec![v]),
                (None, Some(w)) => w.parse().map_err(usage)?,
                (None, None) => unreachable!("clap requires one of them"),
            };
            let v = q.apply_word(&word, &a)?;
            o.human(v.to_string()).kv("word", &word).kv("result", v);
        }
        Command::Realroot { root } => {
            let a = ctx.vector(&root)?;
            let q = ctx.quiver()?;
            let norm = q.euler_form(&a, &a)?;
            let real = q.is_positive_real_root(&a)?;
            o.human(format!("<a,a> = {norm}"))
                .human(format!("positive real root: {real}"))
                .kv("norm", norm)
                .kv("positive_real_root", real);
        }
        Command::Word { root } => {
            let a = ctx.vector(&root)?;
            let word = ctx.quiver()?.reflection_word_for_root(&a)?;
            o.human(word.to_string()).kv("length", word.len()).kv("word", word);
        }
        Command::Candidates { root } => {
            let a = ctx.vector(&root)?;
            let found = ctx.quiver()?.reflection_candidates(&a)?;
            o.kv("count", found.len());
            for (k, c) in found.iter().enumerate() {
                o.human(c.to_string()).kv(format!("candidate.{}", k + 1), c);
            }
        }
        Command::Hom(p) => {
            let (x, y) = (ctx.rep(&p.x)?, ctx.rep(&p.y)?);
            let d = hom_dim(&x, &y)?;
            o.human(format!("dim Hom(x, y) = {d}")).kv("hom_dim", d);
        }
        Command::Ext(p) => {
            let (x, y) = (ctx.rep(&p.x)?, ctx.rep(&p.y)?);
            let formula = ext_dim_formula(&x, &y)?;
            let cocycles = ext_cocycle_basis(&x, &y)?.dim();
            o.human(format!("dim Ext¹(x, y) = {cocycles}"))
                .kv("ext_dim", cocycles)
                .kv("ext_dim_formula", formula);
        }
        Command::End { x } => {
            let x = ctx.rep(&x)?;
            let d = end_dim(&x)?;
            o.human(format!("dim End(x) = {d}")).kv("end_dim", d);
        }
        Command::Indec { x, budget } => {
            let x = ctx.rep(&x)?;
            let answer = is_indecomposable_fp_with(&x, budget, ctx.mode)?;
            o.human(format!("indecomposable over {}: {answer}", x.field()))
                .kv("field", x.field())
                .kv("indecomposable", answer);
        }
        Command::Membership(f) => {
            let (s, x) = (ctx.rep(&f.s)?, ctx.rep(&f.x)?);
            let m = membership(&s, &x)?;
            for line in m.to_string().lines() {
                o.human(line);
            }
            o.kv("hom_xs_dim", m.hom_xs_dim)
                .kv("hom_sx_dim", m.hom_sx_dim)
                .kv("ext_sx_dim", m.ext_sx_dim)
                .kv("ext_xs_dim", m.ext_xs_dim)
                .kv("summand_conditions", "not_decided");
        }
        Command::Sigma(f) => {
            let (s, x) = (ctx.rep(&f.s)?, ctx.rep(&f.x)?);
            report_functor(&mut o, &sigma(&s, &x)?, f.output.as_deref())?;
        }
        Command::SigmaInv(f) => {
            let (s, x) = (ctx.rep(&f.s)?, ctx.rep(&f.x)?);
            report_functor(&mut o, &sigma_inv(&s, &x)?, f.output.as_deref())?;
        }
        Command::VerifyPaper(v) => {
            let mut fx = PaperFixtures::load();
            if let Some(q) = ctx.quiver.clone() {
                fx.quiver = q;
            }
            let field = ctx.field.unwrap_or(FieldTag::Rationals);
            let rational = Some(FieldTag::Rationals);
            if let Some(p) = &v.x_alpha {
                fx.x_alpha = load_rep(p, &fx.quiver, rational)?;
            }
            if let Some(p) = &v.x_beta1 {
                fx.x_beta1 = load_rep(p, &fx.quiver, rational)?;
            }
            if let Some(p) = &v.x_gamma1 {
                fx.x_gamma1 = load_rep(p, &fx.quiver, rational)?;
            }
            let report = verify_with_fixtures(field, &fx, ctx.mode)?;
            for line in report.to_string().lines() {
                o.human(line);
            }
            for line in report.machine_readable().lines() {
                let (k, v) = line.split_once('=').expect("key=value");
                o.kv(k, v);
            }
            o.code = if report.passed() { EXIT_OK } else { EXIT_FAILURE };
        }
    }
    Ok(o)
}

fn report_functor(o: &mut Output, r: &FunctorResult, output: Option<&Path>) -> Result<(), Failure> {
    let end = end_dim(&r.output)?;
    let multiplicities: Vec<String> = r.multiplicities().iter().map(ToString::to_string).collect();
    o.human(format!("dims {}", r.output.dims()))
        .human(format!("copies of s per stage: {}", multiplicities.join(" ")))
        .human(format!("dim End = {end}"))
        .human(format!("stages exact: {}", r.is_exact()))
        .kv("dims", r.output.dims().coords().iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
        .kv("multiplicities", multiplicities.join(","))
        .kv("end_dim", end)
        .kv("exact", r.is_exact());
    let text = print_representation(&r.output);
    match output {
        Some(path) => {
            fs::write(path, &text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            o.kv("output", path.display());
        }
        None => {
            o.human("");
            for line in text.lines() {
                o.human(line);
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(args.iter().copied(), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn vectors() {
        assert_eq!(parse_vector("e2", 3).unwrap(), DimVector::from([0, 1, 0]));
        assert_eq!(parse_vector("1,0,2", 3).unwrap(), DimVector::from([1, 0, 2]));
        assert!(parse_vector("e4", 3).is_err());
        assert!(parse_vector("e0", 3).is_err());
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_str(&["qrep"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["qrep", "euler", "--a", "e1", "--b", "e1"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["qrep", "verify-paper", "--field", "F4"]).0, EXIT_USAGE);
        let (code, out, _) = run_str(&["qrep", "--help"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("verify-paper"));
    }

    #[test]
    fn verify_paper_kv() {
        let (code, out, _) = run_str(&["qrep", "verify-paper", "--format", "kv", "--field", "F2"]);
        assert_eq!(code, EXIT_OK, "{out}");
        assert!(out.lines().any(|l| l == "check.4.pass=true"));
        assert!(out.lines().any(|l| l == "pass=true"));
    }
}
