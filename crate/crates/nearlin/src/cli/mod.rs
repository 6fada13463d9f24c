//! Command line front end: means, norms, pairings, integrals and unit-circle
//! point clouds.
//!
//! Exit codes: 0 on success (a divergent zero-limit mean is a result, not a
//! failure), 1 when an emitted value fails its own re-check, 2 for bad input
//! or flags, 3 for limit means on families that are not normalized.

mod input;

pub use input::{
    parse_blocks, parse_complex, parse_family, parse_fn, parse_function, parse_param, parse_reals,
};

use crate::automorphism::{AutoParam, ComplexScalar};
use crate::error::Error;
use crate::integral::{self, SampledFunction};
use crate::limit::Direction;
use crate::lp::{
    self, lpq_limit_norm, lpq_norm, lpq_pairing, trace_unit_circle, ComplexMatrix, DeformedVector,
    Exponent, LpSpace, NearInnerProductSpace, PairingSpec,
};
use crate::means::{mean_with, MeanOptions, WeightSplit};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::fmt;
use std::io::{Read, Write};
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(
    name = "nearlin",
    version,
    about = "Deformed sums, norms, pairings and means"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Check tolerance.
    #[arg(long = "tol", global = true, env = "NEARLIN_TOL", default_value_t = crate::tol::NORMALIZATION)]
    pub tolerance: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Grid size for sampled integrands.
    #[arg(long, global = true, default_value_t = 256)]
    pub n: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Lp,
    Lpq,
    Linf,
    Lneginf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum IntegralKind {
    /// The p-integral of f itself.
    Integral,
    Lp,
    Linf,
    Lneginf,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Weighted mean of CSV rows `value_re,value_im,weight_re,weight_im`.
    Mean {
        /// `alpha=RE[+IMi]`, `inf@THETA`, `-inf@THETA` or `zero@THETA`.
        #[arg(long, default_value = "alpha=1", allow_hyphen_values = true)]
        param: String,
        /// Split every weight into this many equal parts first.
        #[arg(long)]
        split: Option<usize>,
        input: Option<PathBuf>,
    },
    /// Norm of a vector (one row) or matrix (one row per line).
    Norm {
        #[command(flatten)]
        opts: NormArgs,
        input: Option<PathBuf>,
    },
    /// Pairing of two vectors or matrices, separated by a blank line.
    Pair {
        #[command(flatten)]
        opts: NormArgs,
        input: Option<PathBuf>,
    },
    /// Integral or norm of a function sampled at midpoints (CSV `x,re,im`).
    Integrate {
        #[arg(long, value_enum, default_value_t = IntegralKind::Integral)]
        kind: IntegralKind,
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        #[command(flatten)]
        source: FnArgs,
        input: Option<PathBuf>,
    },
    /// Print a closed-form function as midpoint CSV `x,re,im`.
    Sample {
        #[command(flatten)]
        source: FnArgs,
    },
    /// Points of the unit circle about a center, as CSV `x1,x2`.
    Circle {
        /// `example32` or `lp:P`.
        #[arg(long, default_value = "example32")]
        space: String,
        #[arg(long, default_value = "0,0", allow_hyphen_values = true)]
        center: String,
        #[arg(long, default_value_t = 360)]
        samples: usize,
    },
}

#[derive(Debug, Args)]
pub struct NormArgs {
    #[arg(long, value_enum, default_value_t = Kind::Lp)]
    pub kind: Kind,
    /// Exponent, or `inf`.
    #[arg(long, default_value = "2")]
    pub p: String,
    #[arg(long, default_value = "2")]
    pub q: String,
    /// Direction of the limit pairings.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub theta: f64,
}

#[derive(Debug, Args)]
pub struct FnArgs {
    /// `const:C`, `x`, `pow:K`, `sin`, `cos`, `exp` or `cis`.
    #[arg(long = "fn")]
    pub func: Option<String>,
    /// Interval `a,b` for `--fn`.
    #[arg(long, default_value = "0,1", allow_hyphen_values = true)]
    pub interval: String,
}

/// Settings shared by every subcommand.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CliConfig {
    pub tolerance: f64,
    pub format: Format,
    pub n: usize,
}

impl Default for CliConfig {
    fn default() -> Self {
        Self {
            tolerance: crate::tol::NORMALIZATION,
            format: Format::Json,
            n: 256,
        }
    }
}

impl CliConfig {
    fn from_args(g: &GlobalArgs) -> Result<Self, CliError> {
        if !(g.tolerance > 0.0 && g.tolerance.is_finite()) {
            return Err(CliError::usage(format!(
                "tolerance must be positive, got {}",
                g.tolerance
            )));
        }
        if g.n < 2 {
            return Err(CliError::usage(format!(
                "grid size must be at least 2, got {}",
                g.n
            )));
        }
        Ok(Self {
            tolerance: g.tolerance,
            format: g.format,
            n: g.n,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Normalization { .. } => 3,
            _ => 2,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::usage(format!("io: {e}"))
    }
}

#[derive(Serialize)]
struct Scalar {
    re: f64,
    im: f64,
}

impl From<ComplexScalar> for Scalar {
    fn from(z: ComplexScalar) -> Self {
        Self { re: z.re, im: z.im }
    }
}

fn write_scalar(out: &mut dyn Write, cfg: &CliConfig, z: ComplexScalar) -> Result<(), CliError> {
    match cfg.format {
        Format::Json => writeln!(out, "{}", json(&Scalar::from(z)))?,
        Format::Csv => writeln!(out, "re,im\n{},{}", z.re, z.im)?,
    }
    Ok(())
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("plain data serializes")
}

fn read_input(path: &Option<PathBuf>, stdin: &mut dyn Read) -> Result<String, CliError> {
    let mut text = String::new();
    match path {
        Some(p) if p.as_os_str() != "-" => {
            text = std::fs::read_to_string(p)
                .map_err(|e| CliError::usage(format!("{}: {e}", p.display())))?
        }
        _ => {
            stdin.read_to_string(&mut text)?;
        }
    }
    Ok(text)
}

fn exponent(s: &str) -> Result<Exponent, CliError> {
    Ok(s.parse::<Exponent>()?)
}

fn finite(e: Exponent, what: &str) -> Result<f64, CliError> {
    match e {
        Exponent::Finite(p) => Ok(p),
        Exponent::Infinity => Err(CliError::usage(format!("{what} must be finite here"))),
    }
}

fn as_vector(block: &[Vec<ComplexScalar>]) -> DeformedVector {
    DeformedVector::new(block.iter().flatten().copied().collect())
}

fn cmd_mean(
    cfg: &CliConfig,
    param: &str,
    split: Option<usize>,
    text: &str,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let param = parse_param(param)?;
    let family = parse_family(text)?;
    let opts = MeanOptions {
        split: match split {
            Some(0) => return Err(CliError::usage("split must be at least 1")),
            Some(k) => WeightSplit::Parts(k),
            None => WeightSplit::TwoPhase,
        },
        normalization_tol: cfg.tolerance,
    };
    match mean_with(&family, &param, &opts) {
        Ok(m) => write_scalar(out, cfg, m),
        Err(Error::Divergent(sig)) => {
            match cfg.format {
                Format::Json => writeln!(out, "{}", json(&sig))?,
                Format::Csv => writeln!(out, "divergent,r,theta\ntrue,{},{}", sig.r, sig.theta)?,
            }
            Ok(())
        }
        Err(e) => Err(e.into()),
    }
}

fn cmd_norm(
    cfg: &CliConfig,
    opts: &NormArgs,
    text: &str,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let blocks = parse_blocks(text)?;
    let block = match blocks.as_slice() {
        [] => return Err(Error::Empty.into()),
        [b] => b,
        _ => return Err(CliError::usage("norm takes a single vector or matrix")),
    };
    let value = match opts.kind {
        Kind::Lp => {
            let u = as_vector(block);
            match exponent(&opts.p)? {
                Exponent::Finite(p) => LpSpace::new(u.len(), p)?.lp_norm(&u)?,
                Exponent::Infinity => lp::linf_norm(&u),
            }
        }
        Kind::Linf => lp::linf_norm(&as_vector(block)),
        Kind::Lneginf => lp::lneginf_seminorm(&as_vector(block)),
        Kind::Lpq => {
            let a = ComplexMatrix::from_rows(block.clone())?;
            match (exponent(&opts.p)?, exponent(&opts.q)?) {
                (Exponent::Finite(p), Exponent::Finite(q)) => lpq_norm(&a, p, q)?,
                (p, q) => lpq_limit_norm(&a, p, q)?,
            }
        }
    };
    write_scalar(out, cfg, ComplexScalar::new(value, 0.0))
}

fn cmd_pair(
    cfg: &CliConfig,
    opts: &NormArgs,
    text: &str,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let blocks = parse_blocks(text)?;
    let (a, b): (Vec<Vec<ComplexScalar>>, Vec<Vec<ComplexScalar>>) = match blocks.as_slice() {
        [] => return Err(Error::Empty.into()),
        [x, y] => (x.clone(), y.clone()),
        // two vectors may also sit on consecutive lines
        [x] if x.len() == 2 && opts.kind != Kind::Lpq => (vec![x[0].clone()], vec![x[1].clone()]),
        _ => {
            return Err(CliError::usage(
                "pair takes two operands separated by a blank line",
            ))
        }
    };
    let dir = Direction::new(opts.theta)?;
    let value = match opts.kind {
        Kind::Lp => {
            let (u, v) = (as_vector(&a), as_vector(&b));
            match exponent(&opts.p)? {
                Exponent::Finite(p) => LpSpace::new(u.len(), p)?.pairing(&u, &v)?,
                Exponent::Infinity => lp::linf_pairing(&u, &v, &dir)?,
            }
        }
        Kind::Linf => lp::linf_pairing(&as_vector(&a), &as_vector(&b), &dir)?,
        Kind::Lneginf => lp::lneginf_pairing(&as_vector(&a), &as_vector(&b), &dir)?,
        Kind::Lpq => {
            let p = finite(exponent(&opts.p)?, "p")?;
            let q = finite(exponent(&opts.q)?, "q")?;
            lpq_pairing(
                &ComplexMatrix::from_rows(a)?,
                &ComplexMatrix::from_rows(b)?,
                p,
                q,
            )?
        }
    };
    write_scalar(out, cfg, value)
}

fn sampled(
    cfg: &CliConfig,
    source: &FnArgs,
    text: impl FnOnce() -> Result<String, CliError>,
) -> Result<SampledFunction, CliError> {
    match &source.func {
        Some(expr) => {
            let f = parse_fn(expr)?;
            let ab = parse_reals(&source.interval)?;
            let [a, b] = ab[..] else {
                return Err(CliError::usage(format!(
                    "interval needs two endpoints, got {:?}",
                    source.interval
                )));
            };
            Ok(SampledFunction::from_fn(a, b, cfg.n, f)?)
        }
        None => Ok(parse_function(&text()?)?),
    }
}

fn cmd_integrate(
    cfg: &CliConfig,
    kind: IntegralKind,
    p: f64,
    f: &SampledFunction,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let value = match kind {
        IntegralKind::Integral => integral::alpha_integral(&AutoParam::real(p)?, f)?,
        IntegralKind::Lp => ComplexScalar::new(integral::lp_norm(f, p)?, 0.0),
        IntegralKind::Linf => ComplexScalar::new(integral::linf_norm(f), 0.0),
        IntegralKind::Lneginf => ComplexScalar::new(integral::lneginf_seminorm(f), 0.0),
    };
    write_scalar(out, cfg, value)
}

fn cmd_sample(f: &SampledFunction, out: &mut dyn Write) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| CliError::usage(format!("csv: {e}"));
    w.write_record(["x", "re", "im"]).map_err(io)?;
    for (x, z) in f.midpoints().zip(f.values()) {
        w.serialize((x, z.re, z.im)).map_err(io)?;
    }
    w.flush()?;
    Ok(())
}

/// Parses `example32` or `lp:P` into a two-dimensional real slice.
pub fn parse_space(name: &str) -> Result<Box<dyn NearInnerProductSpace>, Error> {
    match name.trim() {
        "example32" => Ok(Box::new(PairingSpec::mixed_cubic())),
        s => {
            let p = s
                .strip_prefix("lp:")
                .and_then(|p| p.parse::<f64>().ok())
                .ok_or_else(|| Error::Invalid(format!("unknown space {s:?}")))?;
            if !(p > 0.0 && p.is_finite()) {
                return Err(Error::UnsupportedExponent { p });
            }
            Ok(Box::new(LpSpace::new(2, p)?))
        }
    }
}

#[derive(Serialize)]
struct PointRow {
    x1: f64,
    x2: f64,
    residual: f64,
}

fn cmd_circle(
    cfg: &CliConfig,
    space: &str,
    center: &str,
    samples: usize,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let space = parse_space(space)?;
    let c = parse_reals(center)?;
    let [c1, c2] = c[..] else {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: c.len(),
        }
        .into());
    };
    let center = [c1, c2];
    let points = trace_unit_circle(space.as_ref(), center, samples)?;
    for p in &points {
        let residual = (lp::distance(space.as_ref(), center, p.x)? - 1.0).abs();
        if residual.is_nan() || residual > cfg.tolerance {
            return Err(CliError {
                code: 1,
                message: format!(
                    "point ({}, {}) misses the circle by {residual}",
                    p.x[0], p.x[1]
                ),
            });
        }
    }
    match cfg.format {
        Format::Csv => {
            writeln!(out, "x1,x2")?;
            for p in &points {
                writeln!(out, "{},{}", p.x[0], p.x[1])?;
            }
        }
        Format::Json => {
            let rows: Vec<PointRow> = points
                .iter()
                .map(|p| PointRow {
                    x1: p.x[0],
                    x2: p.x[1],
                    residual: p.residual,
                })
                .collect();
            writeln!(out, "{}", json(&rows))?;
        }
    }
    Ok(())
}

/// Runs one parsed invocation, reading operands from `stdin` when no input
/// file is given.
pub fn run(cli: &Cli, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<(), CliError> {
    let cfg = CliConfig::from_args(&cli.global)?;
    match &cli.command {
        Command::Mean {
            param,
            split,
            input,
        } => cmd_mean(&cfg, param, *split, &read_input(input, stdin)?, out),
        Command::Norm { opts, input } => cmd_norm(&cfg, opts, &read_input(input, stdin)?, out),
        Command::Pair { opts, input } => cmd_pair(&cfg, opts, &read_input(input, stdin)?, out),
        Command::Integrate {
            kind,
            p,
            source,
            input,
        } => {
            let f = sampled(&cfg, source, || read_input(input, stdin))?;
            cmd_integrate(&cfg, *kind, *p, &f, out)
        }
        Command::Sample { source } => {
            if source.func.is_none() {
                return Err(CliError::usage("sample needs --fn"));
            }
            let f = sampled(&cfg, source, || Ok(String::new()))?;
            cmd_sample(&f, out)
        }
        Command::Circle {
            space,
            center,
            samples,
        } => cmd_circle(&cfg, space, center, *samples, out),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str], input: &str) -> Result<String, CliError> {
        let cli = Cli::try_parse_from(std::iter::once("nearlin").chain(args.iter().copied()))
            .expect("flags parse");
        let mut out = Vec::new();
        run(&cli, &mut input.as_bytes(), &mut out)?;
        Ok(String::from_utf8(out).unwrap())
    }

    fn value(s: &str) -> (f64, f64) {
        let v: serde_json::Value = serde_json::from_str(s.trim()).unwrap();
        (v["re"].as_f64().unwrap(), v["im"].as_f64().unwrap())
    }

    #[test]
    fn mean_examples() {
        let (re, im) = value(&call(&["mean", "--param", "alpha=1"], "1,.5\n3,.5\n").unwrap());
        assert!((re - 2.0).abs() < 1e-12 && im.abs() < 1e-12);
        assert_eq!(
            value(&call(&["mean", "--param", "inf@0"], "1,.5\n5,.5\n").unwrap()),
            (5.0, 0.0)
        );
        assert_eq!(call(&["mean"], "").unwrap_err().code, 2);
        assert_eq!(
            call(&["mean", "--param", "inf@0"], "1,.5\n5,.9\n")
                .unwrap_err()
                .code,
            3
        );
        assert_eq!(
            call(&["mean", "--param", "bogus"], "1,1\n")
                .unwrap_err()
                .code,
            2
        );
    }

    #[test]
    fn divergent_mean_is_reported() {
        let out = call(&["mean", "--param", "zero@0", "--tol", "2"], "1,1\n2,1\n").unwrap();
        let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
        assert_eq!(v["divergent"], serde_json::Value::Bool(true));
        assert!((v["r"].as_f64().unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn norm_and_pair() {
        let (re, _) = value(&call(&["norm", "--kind", "lp", "--p", "2"], "3,4\n").unwrap());
        assert!((re - 5.0).abs() < 1e-14);
        assert_eq!(
            value(&call(&["norm", "--kind", "linf"], "1,-2,2\n").unwrap()).0,
            2.0
        );
        let (re, _) = value(
            &call(
                &["norm", "--kind", "lpq", "--p", "2", "--q", "2"],
                "1 0\n0 1\n",
            )
            .unwrap(),
        );
        assert!((re - 2f64.sqrt()).abs() < 1e-14);
        let (re, im) = value(&call(&["pair", "--p", "2"], "1,0\n1,0\n").unwrap());
        assert!((re - 1.0).abs() < 1e-14 && im.abs() < 1e-14);
        assert_eq!(
            call(&["pair", "--p", "2"], "1,0\n\n1,0,0\n")
                .unwrap_err()
                .code,
            2
        );
        assert_eq!(call(&["norm", "--p", "0"], "1\n").unwrap_err().code, 2);
    }

    #[test]
    fn integrate_constant() {
        let (re, _) = value(
            &call(
                &[
                    "integrate",
                    "--p",
                    "3",
                    "--fn",
                    "const:1",
                    "--interval",
                    "0,2",
                ],
                "",
            )
            .unwrap(),
        );
        assert!((re - 2f64.cbrt()).abs() < 1e-6);
        let csv = call(
            &["sample", "--fn", "const:1", "--interval", "0,2", "--n", "8"],
            "",
        )
        .unwrap();
        let (re, _) = value(&call(&["integrate", "--kind", "lp", "--p", "3"], &csv).unwrap());
        assert!((re - 2f64.cbrt()).abs() < 1e-12);
        assert_eq!(
            call(&["integrate", "--fn", "x", "--n", "1"], "")
                .unwrap_err()
                .code,
            2
        );
    }

    #[test]
    fn circle_csv() {
        let out = call(
            &[
                "circle",
                "--space",
                "lp:2",
                "--samples",
                "12",
                "--format",
                "csv",
            ],
            "",
        )
        .unwrap();
        let mut lines = out.lines();
        assert_eq!(lines.next(), Some("x1,x2"));
        for l in lines {
            let xs = parse_reals(l).unwrap();
            assert!((xs[0].hypot(xs[1]) - 1.0).abs() < 1e-9);
        }
        assert_eq!(
            call(&["circle", "--center", "0,0,0"], "").unwrap_err().code,
            2
        );
        assert_eq!(
            call(&["circle", "--space", "lp:-1"], "").unwrap_err().code,
            2
        );
    }
}
