use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exact and trigonometric-approximation light scattering by dielectric spheres.
///
/// Every command writes a CSV table (to --output, or stdout) and prints a
/// one-line summary. Exit status: 0 success, 1 configuration error,
/// 2 numerical degeneracy, 3 failed verification.
#[derive(Parser, Debug)]
#[command(name = "trigmie", version, args_override_self = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Option<Command>,

    /// Flat key = value file; command-line flags override its entries.
    #[arg(long, global = true, help_heading = "Global options", value_name = "PATH")]
    pub config: Option<PathBuf>,

    /// Emit the data behind a reference figure with its parameters built in.
    #[arg(long, global = true, help_heading = "Global options", visible_alias = "paper-figure", value_enum)]
    pub figure: Option<Figure>,

    /// CSV destination. Without it the table goes to stdout and the
    /// summary to stderr.
    #[arg(long, short, global = true, help_heading = "Global options", value_name = "PATH")]
    pub output: Option<PathBuf>,

    /// Second CSV for the speedup histogram (bench and figure 7).
    #[arg(long, global = true, help_heading = "Global options", value_name = "PATH")]
    pub histogram: Option<PathBuf>,

    /// Scheduling of independent point evaluations. Benchmarks always
    /// run sequentially.
    #[arg(long, global = true, help_heading = "Global options", value_enum, default_value_t = ExecutionArg::Parallel)]
    pub execution: ExecutionArg,

    /// Seed for randomized verification samples.
    #[arg(long, global = true, help_heading = "Global options", default_value_t = 7)]
    pub seed: u64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Per-mode coefficients a_n, b_n and their approximations.
    #[command(allow_negative_numbers = true)]
    Coeffs(CoeffsArgs),
    /// Cross-sections of one sphere.
    #[command(allow_negative_numbers = true)]
    CrossSection(CrossSectionArgs),
    /// Approximate and exact sin^2 values along a line m x = c.
    #[command(allow_negative_numbers = true)]
    Sweep(SweepArgs),
    /// Expected scattering cross-section under a size/index distribution.
    #[command(allow_negative_numbers = true)]
    Integrate(IntegrateArgs),
    /// Approximation error along a sweep, or per-mode integral errors.
    #[command(allow_negative_numbers = true)]
    Errors(ErrorsArgs),
    /// Time exact against approximate evaluation over a grid.
    #[command(allow_negative_numbers = true)]
    Bench(BenchArgs),
    /// Check a physical law on random spheres.
    #[command(allow_negative_numbers = true)]
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Figure {
    #[value(name = "1")]
    CircularLaw,
    #[value(name = "2b")]
    ConstantPath,
    #[value(name = "4")]
    PointwiseError,
    #[value(name = "5")]
    CumulativeError,
    #[value(name = "6")]
    PerModeError,
    #[value(name = "7")]
    Speedup,
    #[value(name = "8")]
    Uniform,
    #[value(name = "9")]
    Normal,
    #[value(name = "10")]
    Bimodal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExecutionArg {
    Parallel,
    Sequential,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Model {
    Homogeneous,
    Layered,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EvaluatorArg {
    Exact,
    Approx,
    Both,
}

impl EvaluatorArg {
    pub fn exact(self) -> bool {
        self != EvaluatorArg::Approx
    }

    pub fn approx(self) -> bool {
        self != EvaluatorArg::Exact
    }
}

/// `lo:hi`, or a single value for a degenerate interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval(pub f64, pub f64);

impl FromStr for Interval {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| format!("invalid number '{t}' in interval '{s}'"))
        };
        match s.split_once(':') {
            Some((a, b)) => Ok(Interval(num(a)?, num(b)?)),
            None => {
                let v = num(s)?;
                Ok(Interval(v, v))
            }
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.0, self.1)
    }
}

/// `NxM`, `N` (square), or a comma list of square orders `8,16,32`.
#[derive(Debug, Clone, PartialEq)]
pub enum GridSpec {
    Single(usize, usize),
    Ladder(Vec<usize>),
}

impl FromStr for GridSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| format!("invalid grid size '{t}' in '{s}'"))
        };
        if s.contains(',') {
            return s.split(',').map(num).collect::<Result<_, _>>().map(GridSpec::Ladder);
        }
        match s.split_once(['x', 'X']) {
            Some((a, b)) => Ok(GridSpec::Single(num(a)?, num(b)?)),
            None => {
                let n = num(s)?;
                Ok(GridSpec::Single(n, n))
            }
        }
    }
}

/// Mode cutoff: `standard` (x + 4 x^(1/3) + 2) or a fixed count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NMax {
    Standard,
    Fixed(usize),
}

impl FromStr for NMax {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "standard" {
            return Ok(NMax::Standard);
        }
        s.parse()
            .map(NMax::Fixed)
            .map_err(|_| format!("expected 'standard' or a mode count, got '{s}'"))
    }
}

#[derive(Args, Debug)]
pub struct SphereArgs {
    #[arg(long, value_enum, default_value_t = Model::Homogeneous)]
    pub model: Model,
    /// Size parameter (core size for layered spheres).
    #[arg(long)]
    pub x: f64,
    /// Relative refractive index (core index for layered spheres).
    #[arg(long, alias = "m1")]
    pub m: f64,
    /// Outer size parameter of a layered sphere.
    #[arg(long)]
    pub y: Option<f64>,
    /// Shell index of a layered sphere.
    #[arg(long)]
    pub m2: Option<f64>,
}

#[derive(Args, Debug)]
pub struct CoeffsArgs {
    #[command(flatten)]
    pub sphere: SphereArgs,
    /// Highest mode; defaults to the standard cutoff.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, value_enum, default_value_t = EvaluatorArg::Both)]
    pub evaluator: EvaluatorArg,
}

#[derive(Args, Debug)]
pub struct CrossSectionArgs {
    #[command(flatten)]
    pub sphere: SphereArgs,
    /// Wavenumber; cross-sections scale as 1/k^2.
    #[arg(long, default_value_t = 1.0)]
    pub k: f64,
    #[arg(long, default_value = "standard")]
    pub n_max: NMax,
    #[arg(long, value_enum, default_value_t = EvaluatorArg::Both)]
    pub evaluator: EvaluatorArg,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    /// Optical path m x held constant.
    #[arg(long)]
    pub c: f64,
    /// Size-parameter range; defaults to 1:c.
    #[arg(long)]
    pub x: Option<Interval>,
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    #[arg(long, default_value_t = 1000)]
    pub points: usize,
    #[arg(long, value_enum, default_value_t = EvaluatorArg::Both)]
    pub evaluator: EvaluatorArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Dist {
    Uniform,
    Normal,
    Bimodal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    UniformHomogeneous,
    UniformLayered,
    NormalHomogeneous,
    NormalLayered,
    BimodalHomogeneous,
    BimodalLayered,
}

#[derive(Args, Debug)]
pub struct IntegrateArgs {
    /// One of the six reference experiments; other distribution flags are ignored.
    #[arg(long, value_enum)]
    pub preset: Option<Preset>,
    #[arg(long, value_enum, default_value_t = Dist::Uniform)]
    pub dist: Dist,
    #[arg(long, value_enum, default_value_t = Model::Homogeneous)]
    pub model: Model,
    /// Uniform support in x (core size for layered).
    #[arg(long)]
    pub x: Option<Interval>,
    /// Uniform support in m (core index for layered).
    #[arg(long)]
    pub m: Option<Interval>,
    #[arg(long)]
    pub mu_x: Option<f64>,
    #[arg(long)]
    pub sigma_x: Option<f64>,
    #[arg(long)]
    pub mu_m: Option<f64>,
    #[arg(long)]
    pub sigma_m: Option<f64>,
    /// Second bimodal component.
    #[arg(long)]
    pub mu_x2: Option<f64>,
    #[arg(long)]
    pub sigma_x2: Option<f64>,
    #[arg(long)]
    pub mu_m2: Option<f64>,
    #[arg(long)]
    pub sigma_m2: Option<f64>,
    #[arg(long, default_value_t = 0.5)]
    pub w1: f64,
    #[arg(long, default_value_t = 0.5)]
    pub w2: f64,
    /// Layered model: y = x + shell_offset.
    #[arg(long, default_value_t = 20.0)]
    pub shell_offset: f64,
    /// Layered model: shell index m2.
    #[arg(long, default_value_t = 1.51)]
    pub shell_index: f64,
    #[arg(long, default_value = "60x60")]
    pub grid: GridSpec,
    #[arg(long, value_enum, default_value_t = EvaluatorArg::Both)]
    pub evaluator: EvaluatorArg,
    #[arg(long, default_value_t = 1.0)]
    pub k: f64,
    #[arg(long, default_value_t = 3)]
    pub n_max: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Study {
    Pointwise,
    PerMode,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    ConstantPath,
    ConstantIndex,
    Layered,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ChannelArg {
    Alpha,
    Beta,
}

#[derive(Args, Debug)]
pub struct ErrorsArgs {
    #[arg(long, value_enum, default_value_t = Study::Pointwise)]
    pub study: Study,
    #[arg(long, value_enum, default_value_t = Family::ConstantPath)]
    pub family: Family,
    /// constant-path: m x.
    #[arg(long)]
    pub c: Option<f64>,
    /// constant-index: m.
    #[arg(long)]
    pub m: Option<f64>,
    /// layered: m1 x.
    #[arg(long)]
    pub c1: Option<f64>,
    /// layered: m2 x.
    #[arg(long)]
    pub c2: Option<f64>,
    /// layered: m2 y.
    #[arg(long)]
    pub c3: Option<f64>,
    /// Sweep range: x, or y for the layered family.
    #[arg(long, alias = "x")]
    pub range: Option<Interval>,
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = ChannelArg::Alpha)]
    pub channel: ChannelArg,
    #[arg(long, default_value_t = trigmie::analysis::DEFAULT_POINTS_PER_PI)]
    pub points_per_pi: usize,
    /// per-mode: first:last mode.
    #[arg(long, default_value = "1:20")]
    pub modes: Interval,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    #[arg(long, value_enum, default_value_t = Model::Homogeneous)]
    pub model: Model,
    /// Defaults to 10:20 (homogeneous) or 40:60 (layered core).
    #[arg(long)]
    pub x: Option<Interval>,
    /// Defaults to 1.2:1.8 (homogeneous) or 1.25:1.4 (layered core).
    #[arg(long)]
    pub m: Option<Interval>,
    #[arg(long, default_value_t = 20.0)]
    pub shell_offset: f64,
    #[arg(long, default_value_t = 1.51)]
    pub shell_index: f64,
    #[arg(long, default_value = "60x60")]
    pub grid: GridSpec,
    #[arg(long, default_value_t = 3)]
    pub n_max: usize,
    #[arg(long, default_value_t = 11)]
    pub reps: usize,
    #[arg(long, default_value_t = 3)]
    pub warmup: usize,
    #[arg(long, default_value_t = 20)]
    pub bins: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Law {
    /// |z|^2 = Re z for every a_n, b_n.
    Circular,
    /// Extinction equals scattering at full truncation.
    Balance,
    /// Coated spheres with equal indices match homogeneous spheres.
    Collapse,
    /// m = 1 spheres have zero coefficients, both evaluators.
    Vacuum,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Law::Circular)]
    pub law: Law,
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    /// Largest acceptable deviation; defaults per law.
    #[arg(long)]
    pub tolerance: Option<f64>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_values() {
        assert_eq!("10:20".parse::<Interval>().unwrap(), Interval(10.0, 20.0));
        assert_eq!("3".parse::<Interval>().unwrap(), Interval(3.0, 3.0));
        assert!("a:2".parse::<Interval>().is_err());
        assert_eq!("64x32".parse::<GridSpec>().unwrap(), GridSpec::Single(64, 32));
        assert_eq!("8".parse::<GridSpec>().unwrap(), GridSpec::Single(8, 8));
        assert_eq!("8,16".parse::<GridSpec>().unwrap(), GridSpec::Ladder(vec![8, 16]));
        assert_eq!("standard".parse::<NMax>().unwrap(), NMax::Standard);
        assert_eq!("4".parse::<NMax>().unwrap(), NMax::Fixed(4));
    }

    #[test]
    fn cli_is_well_formed() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
