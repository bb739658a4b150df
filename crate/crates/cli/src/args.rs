use std::ops::RangeInclusive;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;

use mtorus_core::{Family, PhiConvention, SL2Element};

#[derive(Debug, Parser)]
#[command(name = "mtorus", version, about = "Chern-Simons partition functions of torus bundles over the circle")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    /// Tolerance for comparisons between formulas.
    #[arg(long, default_value_t = 1e-9, global = true)]
    pub tol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// SU(2) partition functions for a monodromy matrix.
    Su2(Su2Args),
    /// Partition functions for U = T^p S and a classical group.
    General(GeneralArgs),
    /// Flat connections and their Chern-Simons invariants.
    FixedPoints(FixedPointArgs),
    /// Run self-checking suites.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct LevelArgs {
    /// A single level k ≥ 1.
    #[arg(long, conflicts_with = "levels")]
    pub level: Option<i64>,

    /// An inclusive level range such as `1..8`.
    #[arg(long, value_parser = parse_range)]
    pub levels: Option<RangeInclusive<i64>>,
}

impl LevelArgs {
    pub fn resolve(&self) -> Result<RangeInclusive<i64>, String> {
        let range = match (&self.level, &self.levels) {
            (Some(k), None) => *k..=*k,
            (None, Some(r)) => r.clone(),
            (None, None) => return Err("one of --level or --levels is required".into()),
            (Some(_), Some(_)) => unreachable!("clap rejects both"),
        };
        if *range.start() < 1 || range.is_empty() {
            return Err(format!("levels must be ≥ 1 and nonempty, got {range:?}"));
        }
        Ok(range)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Su2Formula {
    Sqm,
    Trace,
    Rt,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PhiSign {
    Standard,
    Negated,
}

impl From<PhiSign> for PhiConvention {
    fn from(p: PhiSign) -> Self {
        match p {
            PhiSign::Standard => PhiConvention::Standard,
            PhiSign::Negated => PhiConvention::Negated,
        }
    }
}

#[derive(Debug, Args)]
pub struct Su2Args {
    /// Monodromy entries `a,b,c,d` of [[a, b], [c, d]].
    #[arg(long, value_parser = parse_matrix, allow_hyphen_values = true)]
    pub matrix: MatrixArg,

    #[command(flatten)]
    pub levels: LevelArgs,

    #[arg(long, value_enum, default_value_t = Su2Formula::All)]
    pub formula: Su2Formula,

    /// Sign convention for the Rademacher function.
    #[arg(long, value_enum, default_value_t = PhiSign::Standard)]
    pub phi_sign: PhiSign,

    /// Replace the trace-formula constant K(U) by e^{2πi q}, with q given as `num/den`.
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    pub k_override: Option<BigRational>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GeneralFormula {
    Sqm,
    Weights,
    Cosets,
    All,
}

#[derive(Debug, Args)]
pub struct GroupArgs {
    /// Cartan family: A, B, C or D.
    #[arg(long, value_parser = parse_family)]
    pub family: Family,

    #[arg(long)]
    pub rank: usize,
}

#[derive(Debug, Args)]
pub struct GeneralArgs {
    #[command(flatten)]
    pub group: GroupArgs,

    /// The exponent p of U = T^p S.
    #[arg(long, allow_hyphen_values = true)]
    pub p: i64,

    #[command(flatten)]
    pub levels: LevelArgs,

    #[arg(long, value_enum, default_value_t = GeneralFormula::All)]
    pub formula: GeneralFormula,
}

#[derive(Debug, Args)]
pub struct FixedPointArgs {
    #[arg(long, value_parser = parse_matrix, allow_hyphen_values = true)]
    pub matrix: MatrixArg,

    /// Cartan family (default: A, i.e. SU(2) with rank 1).
    #[arg(long, value_parser = parse_family, default_value = "A")]
    pub family: Family,

    #[arg(long, default_value_t = 1)]
    pub rank: usize,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Suite to run (repeatable); `all` runs every suite.
    #[arg(long = "suite", default_value = "all")]
    pub suites: Vec<String>,

    /// Bound on a and c for the reciprocity suite.
    #[arg(long, default_value_t = 40)]
    pub max: i64,

    /// Bound on |entries| of the SU(2) grid.
    #[arg(long, default_value_t = 10)]
    pub trace_bound: i64,

    /// Bound on |c| of the SU(2) grid.
    #[arg(long, default_value_t = 5)]
    pub c_max: i64,

    #[arg(long, value_parser = parse_range, default_value = "1..8")]
    pub levels: RangeInclusive<i64>,

    /// Random draws for sampled suites.
    #[arg(long, default_value_t = 500)]
    pub draws: usize,

    #[arg(long)]
    pub seed: Option<u64>,
}

/// Raw matrix entries; unimodularity is checked by the command so that it
/// maps to the invalid-input exit code.
#[derive(Debug, Clone)]
pub struct MatrixArg(pub [BigInt; 4]);

impl MatrixArg {
    pub fn to_sl2(&self) -> mtorus_core::Result<SL2Element> {
        let [a, b, c, d] = self.0.clone();
        SL2Element::new(a, b, c, d)
    }
}

fn parse_matrix(s: &str) -> Result<MatrixArg, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 4 {
        return Err(format!("expected four comma-separated integers, got {s:?}"));
    }
    let mut out: [BigInt; 4] = Default::default();
    for (slot, p) in out.iter_mut().zip(&parts) {
        *slot = p.parse().map_err(|_| format!("{p:?} is not an integer"))?;
    }
    Ok(MatrixArg(out))
}

fn parse_range(s: &str) -> Result<RangeInclusive<i64>, String> {
    let bad = || format!("expected `lo..hi` or a single integer, got {s:?}");
    match s.split_once("..") {
        Some((lo, hi)) => {
            let hi = hi.strip_prefix('=').unwrap_or(hi);
            let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
            let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
            Ok(lo..=hi)
        }
        None => {
            let k: i64 = s.trim().parse().map_err(|_| bad())?;
            Ok(k..=k)
        }
    }
}

fn parse_rational(s: &str) -> Result<BigRational, String> {
    let bad = || format!("expected a rational `num/den`, got {s:?}");
    let (n, d) = s.split_once('/').unwrap_or((s, "1"));
    let n: BigInt = n.trim().parse().map_err(|_| bad())?;
    let d: BigInt = d.trim().parse().map_err(|_| bad())?;
    if d == BigInt::from(0) {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: mtorus_core::Error| e.to_string())
}
