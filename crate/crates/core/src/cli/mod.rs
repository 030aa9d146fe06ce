//! The `mlconv` command line.
//!
//! Exit codes: 0 for success or a member verdict, 1 for a non-member
//! verdict, 2 for any usage, parse or numeric error.

mod parse;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

pub use parse::{
    format_function_spec, parse_coeff_list, parse_complex, parse_function_spec, MAX_ORDER,
};

use crate::bml_operator::{apply_operator, build_kernel, DEFAULT_ORDER};
use crate::classes::{
    boundary_curve, check, check_direct_image, extremal_function, ClassKind, ClassSpec, GridSpec,
    Method, ThetaSpec,
};
use crate::integral_repr::{reconstruct_f, SchwarzSpec};
use crate::laurent::SigmaSeries;
use crate::special_fn::{barnes_ml, BmlParams};
use crate::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NON_MEMBER: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "mlconv",
    version,
    about = "Barnes-Mittag-Leffler operator toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate the Barnes-Mittag-Leffler function at a point.
    MlEval {
        #[command(flatten)]
        params: ParamArgs,
        /// Evaluation point `re,im`.
        #[arg(long, allow_hyphen_values = true)]
        z: String,
    },
    /// Emit the normalized kernel coefficients as CSV `n,h`.
    OpCoeffs {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long = "N", default_value_t = DEFAULT_ORDER)]
        n: usize,
    },
    /// Apply the operator to a function-spec file.
    Apply {
        #[arg(long)]
        spec: PathBuf,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Decide class membership of a function-spec file.
    Check {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, value_enum, default_value_t = MethodArg::Direct)]
        method: MethodArg,
        /// Pad or truncate the function to this order before checking.
        #[arg(long = "N")]
        n: Option<usize>,
        /// Treat the file as the operator image rather than `f` (direct method only).
        #[arg(long)]
        image: bool,
        #[command(flatten)]
        class: ClassArgs,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Emit the extremal function of the half-plane class.
    Extremal {
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
        lambda: f64,
        #[arg(long = "N", default_value_t = DEFAULT_ORDER)]
        n: usize,
    },
    /// Reconstruct a class member from Schwarz coefficients.
    Reconstruct {
        /// Schwarz coefficients `w1,w2,...`, each `re` or `re:im`.
        #[arg(long, allow_hyphen_values = true)]
        omega: String,
        #[arg(long = "N", default_value_t = DEFAULT_ORDER)]
        n: usize,
        #[command(flatten)]
        class: ClassArgs,
    },
    /// Emit phase-ratio samples as CSV `r,theta,q_re,q_im,inside`.
    BoundaryCurve {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        image: bool,
        #[command(flatten)]
        class: ClassArgs,
        #[command(flatten)]
        grid: GridArgs,
    },
}

#[derive(Debug, Args)]
struct ParamArgs {
    #[arg(long = "K", allow_hyphen_values = true, default_value_t = 1.0)]
    k: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 1.0)]
    theta: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 1.0)]
    a: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    s: f64,
}

impl ParamArgs {
    fn build(&self) -> Result<BmlParams> {
        BmlParams::new(self.k, self.theta, self.a, self.s)
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ClassArg {
    Spiral,
    Convex,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    Direct,
    ConvT1,
    ConvT2,
    Alexander,
}

#[derive(Debug, Args)]
struct ClassArgs {
    #[arg(long = "class", alias = "kind", value_enum, default_value_t = ClassArg::Spiral)]
    class: ClassArg,
    #[arg(long = "A", allow_hyphen_values = true, default_value_t = 1.0)]
    big_a: f64,
    #[arg(long = "B", allow_hyphen_values = true, default_value_t = -1.0)]
    big_b: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    lambda: f64,
    #[command(flatten)]
    params: ParamArgs,
}

impl ClassArgs {
    fn build(&self) -> Result<ClassSpec> {
        let kind = match self.class {
            ClassArg::Spiral => ClassKind::Spirallike,
            ClassArg::Convex => ClassKind::Convex,
        };
        ClassSpec::new(
            self.lambda,
            ThetaSpec::janowski(self.big_a, self.big_b)?,
            kind,
            self.params.build()?,
        )
    }
}

#[derive(Debug, Args)]
struct GridArgs {
    #[arg(long, allow_hyphen_values = true)]
    rmax: Option<f64>,
    /// Radius count, or an explicit comma-separated radius list.
    #[arg(long, allow_hyphen_values = true)]
    radii: Option<String>,
    #[arg(long, default_value_t = 256)]
    angles: usize,
    #[arg(long, default_value_t = 512)]
    xsamples: usize,
    #[arg(long, allow_hyphen_values = true, default_value_t = 1e-9)]
    delta: f64,
}

const DEFAULT_RMAX: f64 = 0.99;
const DEFAULT_RADII: usize = 24;

impl GridArgs {
    fn build(&self) -> Result<GridSpec> {
        let radii = self.radii.as_deref().map(str::trim);
        if let Some(count) = radii.map_or(Some(DEFAULT_RADII), |r| r.parse::<usize>().ok()) {
            return GridSpec::uniform(
                self.rmax.unwrap_or(DEFAULT_RMAX),
                count,
                self.angles,
                self.xsamples,
                self.delta,
            );
        }
        if self.rmax.is_some() {
            return Err(Error::InvalidArgument(
                "--rmax cannot be combined with an explicit radius list".into(),
            ));
        }
        let radii = parse_coeff_list(radii.unwrap_or_default())?
            .into_iter()
            .map(|r| {
                if r.im != 0.0 {
                    Err(Error::InvalidArgument(format!("radius {r} is not real")))
                } else {
                    Ok(r.re)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        GridSpec::new(radii, self.angles, self.xsamples, self.delta)
    }
}

fn read_spec(path: &PathBuf) -> Result<SigmaSeries> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
    parse_function_spec(&text)
}

fn check_order(n: usize) -> Result<usize> {
    if n > MAX_ORDER {
        return Err(Error::InvalidArgument(format!(
            "order {n} exceeds {MAX_ORDER}"
        )));
    }
    Ok(n)
}

fn format_value(v: Complex64) -> String {
    if v.im == 0.0 {
        format!("{}", v.re)
    } else {
        format!("{},{}", v.re, v.im)
    }
}

/// Output of a successful command: bytes for stdout and the exit code.
struct Outcome {
    text: String,
    code: i32,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Self {
            text,
            code: EXIT_OK,
        }
    }
}

fn execute(command: Command) -> Result<Outcome> {
    match command {
        Command::MlEval { params, z } => {
            let v = barnes_ml(&params.build()?, parse_complex(&z)?)?;
            Ok(Outcome::ok(format!("{}\n", format_value(v))))
        }
        Command::OpCoeffs { params, n } => {
            let kernel = build_kernel(&params.build()?, check_order(n)?)?;
            let mut text = String::from("n,h\n");
            for (i, h) in kernel.h().iter().enumerate() {
                text.push_str(&format!("{},{:.16e}\n", i + 1, h));
            }
            Ok(Outcome::ok(text))
        }
        Command::Apply { spec, params } => {
            let f = read_spec(&spec)?;
            let kernel = build_kernel(&params.build()?, f.order())?;
            Ok(Outcome::ok(format_function_spec(&apply_operator(
                &f, &kernel,
            ))))
        }
        Command::Check {
            spec,
            method,
            n,
            image,
            class,
            grid,
        } => {
            let mut f = read_spec(&spec)?;
            if let Some(n) = n {
                f = f.with_order(check_order(n)?);
            }
            let spec = class.build()?;
            let grid = grid.build()?;
            let method = match method {
                MethodArg::Direct => Method::Direct,
                MethodArg::ConvT1 => Method::ConvT1,
                MethodArg::ConvT2 => Method::ConvT2,
                MethodArg::Alexander => Method::Alexander,
            };
            let report = if image {
                if method != Method::Direct {
                    return Err(Error::InvalidArgument(
                        "--image is only supported with --method direct".into(),
                    ));
                }
                check_direct_image(&f, &spec, &grid)?
            } else {
                check(&f, &spec, &grid, method)?
            };
            Ok(Outcome {
                code: if report.is_member() {
                    EXIT_OK
                } else {
                    EXIT_NON_MEMBER
                },
                text: report.to_string(),
            })
        }
        Command::Extremal { alpha, lambda, n } => Ok(Outcome::ok(format_function_spec(
            &extremal_function(alpha, lambda, check_order(n)?)?,
        ))),
        Command::Reconstruct { omega, n, class } => {
            let spec = class.build()?;
            let omega = SchwarzSpec::new(parse_coeff_list(&omega)?)?;
            let n = check_order(n)?;
            let kernel = build_kernel(&spec.params, n)?;
            Ok(Outcome::ok(format_function_spec(&reconstruct_f(
                &spec, &omega, &kernel, n,
            )?)))
        }
        Command::BoundaryCurve {
            spec,
            image,
            class,
            grid,
        } => {
            let f = read_spec(&spec)?;
            let spec = class.build()?;
            let grid = grid.build()?;
            let image = if image { f } else { spec.image_of(&f)? };
            let mut text = String::from("r,theta,q_re,q_im,inside\n");
            for s in boundary_curve(&image, &spec, &grid)? {
                text.push_str(&format!(
                    "{:.16e},{:.16e},{:.16e},{:.16e},{}\n",
                    s.r, s.theta, s.q.re, s.q.im, s.inside as u8
                ));
            }
            Ok(Outcome::ok(text))
        }
    }
}

/// Runs the command line `args` (including the program name), writing
/// results to `out` and diagnostics to `err`; returns the exit code.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = write!(out, "{}", e.render());
            return EXIT_OK;
        }
        Err(e) => {
            let rendered = e.render().to_string();
            let line = rendered.lines().next().unwrap_or("error: invalid usage");
            let _ = writeln!(err, "{line}");
            return EXIT_ERROR;
        }
    };
    match execute(cli.command) {
        Ok(outcome) => {
            if out
                .write_all(outcome.text.as_bytes())
                .and_then(|_| out.flush())
                .is_err()
            {
                return EXIT_ERROR;
            }
            outcome.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}
