//! The `conpoly` command line.
//!
//! Exit codes: 0 success, 1 computation or verification failure, 2 usage
//! error. Output goes to `--out` (written atomically) or stdout.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::constructor::{constrained_family, family_residuals};
use crate::error::Error;
use crate::families::{
    laguerre_recursion_family, legendre_family, verify_laguerre, verify_legendre, Corruption,
};
use crate::format::{csv_string, fmt_g, write_atomic};
use crate::measures::MomentFunctional;
use crate::poly::rat;
use crate::projector::{self, WeightCase};
use crate::quadrature;
use crate::toymodel;

#[derive(Parser, Debug)]
#[command(name = "conpoly", version, about = "Constrained orthogonal polynomials and the oscillator density toy model")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print a constrained family as an exact coefficient table.
    Family(FamilyArgs),
    /// Check recursions, differential identities, norms and the projector decomposition.
    Verify(VerifyArgs),
    /// Projector kernel profile <x|P_N|r> over a grid.
    Kernel(ProfileArgs),
    /// Subtractor profile <x|σ_N><σ_N|r> over a grid.
    Subtractor(ProfileArgs),
    /// Oscillator toy model runs.
    Toy {
        #[command(subcommand)]
        command: ToyCommand,
    },
    /// Zero-average residual of the centrifuge density response.
    Centrifuge(CentrifugeArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    Laguerre,
    Legendre,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Debug)]
pub struct FamilyArgs {
    #[arg(long, value_enum, required_unless_present = "ortho")]
    pub kind: Option<FamilyKind>,
    #[arg(long, default_value_t = 1)]
    pub d: u32,
    #[arg(long = "N")]
    pub n: usize,
    /// Orthogonality functional descriptor, e.g. `gauss:a=2`.
    #[arg(long, requires = "constraint", conflicts_with = "kind")]
    pub ortho: Option<String>,
    /// Constraint functional descriptor, e.g. `gauss:a=1`.
    #[arg(long, requires = "ortho")]
    pub constraint: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_delimiter = ',', default_values_t = [1u32, 2, 3])]
    pub d: Vec<u32>,
    #[arg(long = "N", default_value_t = 20)]
    pub n: usize,
    /// Truncation for the projector decomposition check.
    #[arg(long = "projector-N", default_value_t = 30)]
    pub projector_n: usize,
    /// Extra family to check numerically (orthogonality descriptor).
    #[arg(long, requires = "constraint")]
    pub ortho: Option<String>,
    #[arg(long, requires = "ortho")]
    pub constraint: Option<String>,
    /// Order of the extra family.
    #[arg(long = "family-N", default_value_t = 6)]
    pub family_n: usize,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Perturbs the recursion member of this order before checking.
    #[arg(long, hide = true)]
    pub corrupt: Option<usize>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum CaseKind {
    Laguerre,
    Hermite,
}

#[derive(Args, Debug)]
pub struct ProfileArgs {
    #[arg(long, value_enum)]
    pub case: CaseKind,
    /// Gaussian parameter of the Hermite case, `μ = e^(-a r²/2)`.
    #[arg(long, default_value = "1")]
    pub a: String,
    #[arg(long)]
    pub x: f64,
    #[arg(long = "N", value_delimiter = ',', required = true)]
    pub n: Vec<usize>,
    /// Grid start; defaults to 0 (Laguerre) or -rmax (Hermite).
    #[arg(long)]
    pub rmin: Option<f64>,
    #[arg(long)]
    pub rmax: f64,
    #[arg(long, default_value_t = 0.05)]
    pub step: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum ToyCommand {
    /// Density coordinates along `H_0 + λ w_m`.
    Trajectory(TrajectoryArgs),
    /// Border of the density positivity domain.
    Positivity(PositivityArgs),
    /// Flexibility matrix as JSON.
    Flexibility(FlexibilityArgs),
}

#[derive(Args, Debug)]
pub struct TrajectoryArgs {
    #[arg(long, default_value_t = 4)]
    pub m: usize,
    #[arg(long = "lambda-max", default_value_t = 2.0)]
    pub lambda_max: f64,
    #[arg(long, default_value_t = 0.1)]
    pub step: f64,
    #[arg(long = "Z", default_value_t = 4)]
    pub z: usize,
    #[arg(long = "N", default_value_t = 10)]
    pub n: usize,
    #[arg(long = "B", default_value_t = toymodel::DEFAULT_BASIS_SIZE)]
    pub b: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// JSON sidecar with the plot scale factors `2^|n-m|`.
    #[arg(long)]
    pub meta: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct PositivityArgs {
    #[arg(long, default_value_t = 256)]
    pub rays: usize,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct FlexibilityArgs {
    #[arg(long = "Z", default_value_t = 4)]
    pub z: usize,
    #[arg(long = "N", default_value_t = 10)]
    pub n: usize,
    #[arg(long = "B", default_value_t = toymodel::DEFAULT_BASIS_SIZE)]
    pub b: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CentrifugeArgs {
    #[arg(long = "K", allow_negative_numbers = true)]
    pub k: f64,
    /// Quadrature order; defaults to the `CONPOLY_QUAD_ORDER` setting.
    #[arg(long)]
    pub order: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Failure of a subcommand, already mapped to its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidArgument(_) | Error::Parse(_) | Error::UnsupportedDimension(_) => 2,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: msg.into(),
    }
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 {
                write!(stdout, "{}", e.render())
            } else {
                write!(stderr, "{}", e.render())
            };
            return code;
        }
    };
    match execute(&cli, stdout) {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

pub fn execute(cli: &Cli, stdout: &mut dyn Write) -> std::result::Result<(), Failure> {
    match &cli.command {
        Command::Family(a) => cmd_family(a, stdout),
        Command::Verify(a) => cmd_verify(a, stdout),
        Command::Kernel(a) => cmd_profile(a, false, stdout),
        Command::Subtractor(a) => cmd_profile(a, true, stdout),
        Command::Toy { command } => match command {
            ToyCommand::Trajectory(a) => cmd_trajectory(a, stdout),
            ToyCommand::Positivity(a) => cmd_positivity(a, stdout),
            ToyCommand::Flexibility(a) => cmd_flexibility(a, stdout),
        },
        Command::Centrifuge(a) => cmd_centrifuge(a, stdout),
    }
}

fn emit(out: &Option<PathBuf>, contents: &str, stdout: &mut dyn Write) -> std::result::Result<(), Failure> {
    match out {
        Some(path) => write_atomic(path, contents)?,
        None => stdout
            .write_all(contents.as_bytes())
            .map_err(|e| Failure::from(Error::from(e)))?,
    }
    Ok(())
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

/// JSON number rounded to the crate's 12 significant digits.
fn num(v: f64) -> Value {
    fmt_g(v)
        .parse::<f64>()
        .ok()
        .and_then(serde_json::Number::from_f64)
        .map_or(Value::Null, Value::Number)
}

fn parse_functional(s: &str) -> std::result::Result<MomentFunctional, Failure> {
    let f: MomentFunctional = s.parse()?;
    f.validate()?;
    Ok(f)
}

pub fn cmd_family(a: &FamilyArgs, stdout: &mut dyn Write) -> std::result::Result<(), Failure> {
    if a.n == 0 {
        return Err(usage("N must be >= 1: constrained families start at order 1"));
    }
    if a.d == 0 {
        return Err(usage("d must be >= 1"));
    }
    let family = match (&a.ortho, &a.constraint, a.kind) {
        (Some(o), Some(c), _) => constrained_family(&parse_functional(o)?, &parse_functional(c)?, a.n)?,
        (_, _, Some(FamilyKind::Laguerre)) => laguerre_recursion_family(a.d, a.n)?,
        (_, _, Some(FamilyKind::Legendre)) => legendre_family(a.d, a.n)?,
        _ => return Err(usage("give --kind or --ortho/--constraint")),
    };
    let text = match a.format {
        Format::Json => json_text(&family.to_json()),
        Format::Text => family
            .polys
            .iter()
            .enumerate()
            .map(|(i, p)| format!("{} {}\n", i + 1, p))
            .collect(),
    };
    emit(&a.out, &text, stdout)
}

pub fn cmd_verify(a: &VerifyArgs, stdout: &mut dyn Write) -> std::result::Result<(), Failure> {
    if a.n == 0 || a.projector_n == 0 {
        return Err(usage("N and projector-N must be >= 1"));
    }
    let corruption = Corruption { order: a.corrupt };
    let mut failures: Vec<String> = Vec::new();
    let mut reports = Vec::new();
    for &d in &a.d {
        for report in [verify_laguerre(d, a.n, corruption)?, verify_legendre(d, a.n, corruption)?] {
            failures.extend(report.failures());
            reports.push(report);
        }
    }
    let mut decomposition = Vec::new();
    for case in [WeightCase::Laguerre, WeightCase::hermite()] {
        let residual = projector::decomposition_check(&case, a.projector_n)?;
        if !(residual < a.tol) {
            failures.push(format!("decomposition {} N={}", case.name(), a.projector_n));
        }
        decomposition.push(json!({
            "case": case.name(),
            "N": a.projector_n,
            "residual": num(residual),
        }));
    }
    let mut custom = Value::Null;
    if let (Some(o), Some(c)) = (&a.ortho, &a.constraint) {
        let family = constrained_family(&parse_functional(o)?, &parse_functional(c)?, a.family_n)?;
        let (cres, ores) = family_residuals(&family)?;
        if !(cres < a.tol && ores < a.tol) {
            failures.push(format!("custom family {o} / {c}"));
        }
        custom = json!({
            "ortho": o,
            "constraint": c,
            "N": a.family_n,
            "constraint_residual": num(cres),
            "orthogonality_residual": num(ores),
        });
    }
    let all_zero = failures.is_empty();
    let report = json!({
        "families": reports,
        "decomposition": decomposition,
        "custom": custom,
        "failures": failures,
        "all_zero": all_zero,
    });
    emit(&a.out, &json_text(&report), stdout)?;
    if all_zero {
        Ok(())
    } else {
        Err(Failure {
            code: 1,
            message: format!("verification failed: {}", failures.join(", ")),
        })
    }
}

fn weight_case(a: &ProfileArgs) -> std::result::Result<WeightCase, Failure> {
    Ok(match a.case {
        CaseKind::Laguerre => WeightCase::Laguerre,
        CaseKind::Hermite => {
            let param = crate::poly::parse_rational(&a.a)?;
            if param <= rat(0, 1) {
                return Err(usage("a must be positive"));
            }
            WeightCase::Hermite { a: param }
        }
    })
}

pub fn cmd_profile(a: &ProfileArgs, subtractor: bool, stdout: &mut dyn Write) -> std::result::Result<(), Failure> {
    let case = weight_case(a)?;
    if a.n.contains(&0) {
        return Err(usage("every N must be >= 1"));
    }
    let lo = a.rmin.unwrap_or(match case {
        WeightCase::Laguerre => 0.0,
        WeightCase::Hermite { .. } => -a.rmax,
    });
    let grid = projector::grid(lo, a.rmax, a.step)?;
    let mut columns = Vec::with_capacity(a.n.len());
    for &n in &a.n {
        columns.push(if subtractor {
            projector::subtractor_profile(&case, n, a.x, &grid)?
        } else {
            projector::projector_kernel_profile(&case, n, a.x, &grid)?
        });
    }
    let mut header = vec!["r".to_string()];
    if a.n.len() == 1 {
        header.push("value".into());
    } else {
        header.extend(a.n.iter().map(|n| format!("v_{n}")));
    }
    let rows: Vec<Vec<f64>> = grid
        .iter()
        .enumerate()
        .map(|(i, &r)| std::iter::once(r).chain(columns.iter().map(|c| c[i])).collect())
        .collect();
    emit(&a.out, &csv_string(&header, &rows), stdout)
}

pub fn cmd_trajectory(a: &TrajectoryArgs, stdout: &mut dyn Write) -> std::result::Result<(), Failure> {
    if a.m == 0 || a.m > a.n {
        return Err(usage(format!("mode m={} must lie in 1..=N={}", a.m, a.n)));
    }
    let model = toymodel::OscillatorModel::new(a.z, a.b)?;
    let basis = toymodel::ModeBasis::new(a.n)?;
    let grid = toymodel::lambda_grid(a.lambda_max, a.step)?;
    let traj = toymodel::trajectory(&model, a.m, &grid, &basis)?;
    emit(&a.out, &csv_string(&traj.header(), &traj.rows()), stdout)?;
    if let Some(meta) = &a.meta {
        let v = json!({
            "mode": a.m,
            "Z": a.z,
            "B": a.b,
            "N": a.n,
            "scale_factors": traj.scale_factors(),
        });
        write_atomic(meta, &json_text(&v))?;
    }
    Ok(())
}

pub fn cmd_positivity(a: &PositivityArgs, stdout: &mut dyn Write) -> std::result::Result<(), Failure> {
    let points = toymodel::positivity_border(a.rays, a.tol)?;
    let csv = csv_string(
        &toymodel::positivity::border_header(),
        &toymodel::positivity::border_rows(&points),
    );
    emit(&a.out, &csv, stdout)
}

pub fn cmd_flexibility(a: &FlexibilityArgs, stdout: &mut dyn Write) -> std::result::Result<(), Failure> {
    let model = toymodel::OscillatorModel::new(a.z, a.b)?;
    let basis = toymodel::ModeBasis::new(a.n)?;
    let f = toymodel::flexibility_matrix(&model, &basis)?;
    let rows: Vec<Vec<Value>> = (0..f.nrows())
        .map(|i| (0..f.ncols()).map(|j| num(f[(i, j)])).collect())
        .collect();
    let v = json!({ "Z": a.z, "B": a.b, "N": a.n, "F": rows });
    emit(&a.out, &json_text(&v), stdout)
}

pub fn cmd_centrifuge(a: &CentrifugeArgs, stdout: &mut dyn Write) -> std::result::Result<(), Failure> {
    let order = a.order.unwrap_or_else(quadrature::default_order);
    let c = toymodel::centrifuge_mode(a.k, order)?;
    let v = json!({
        "K": num(c.k),
        "order": c.order,
        "residual": num(c.residual),
        "residual_check": num(c.residual_check),
        "c2": num(c.c2),
        "c0": num(c.c0),
    });
    emit(&a.out, &json_text(&v), stdout)
}
