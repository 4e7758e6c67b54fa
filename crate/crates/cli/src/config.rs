//! Command-line surface of the `hyperlip` binary.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

/// Interval flag value, written as `lo,hi`.
#[derive(Debug, Clone, Copy)]
pub struct IntervalArg {
    pub lo: f64,
    pub hi: f64,
}

impl std::str::FromStr for IntervalArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 2 {
            return Err(format!("expected `lo,hi`, got `{s}`"));
        }
        let lo: f64 = parts[0].trim().parse().map_err(|e| format!("bad lower endpoint: {e}"))?;
        let hi: f64 = parts[1].trim().parse().map_err(|e| format!("bad upper endpoint: {e}"))?;
        if !lo.is_finite() || !hi.is_finite() || lo >= hi {
            return Err(format!("interval must satisfy lo < hi, got {lo},{hi}"));
        }
        Ok(IntervalArg { lo, hi })
    }
}

impl IntervalArg {
    pub fn to_interval(self) -> hyperlip_core::Interval {
        hyperlip_core::Interval::new(self.lo, self.hi).expect("validated at parse time")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TrackModeArg {
    Ordered,
    Matched,
}

#[derive(Debug, Parser)]
#[command(
    name = "hyperlip",
    about = "Hyperbolic polynomial families: certification, normalization, splitting, root-Lipschitz bounds, and root tracking",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: RunCommand,
}

#[derive(Debug, Subcommand)]
pub enum RunCommand {
    /// Certify that a polynomial has all roots real.
    Certify {
        /// Polynomial file (JSON {"degree", "coeffs"} or CSV row `n,a1,..,an`).
        #[arg(long)]
        input: PathBuf,
        /// Write the certificate JSON here as well as to stdout.
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Compute the nondecreasing real roots with multiplicity.
    Roots {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Recenter into Tschirnhausen form (first coefficient becomes zero).
    Tschirn {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Cluster the roots and factor the polynomial across the first gap.
    Split {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Cluster gap; defaults to (max root - min root) / (4 n).
        #[arg(long)]
        gap: Option<f64>,
    },
    /// Compute the root-Lipschitz bound report on nested intervals.
    Bound {
        /// Curve file (JSON {"degree", "domain", "coeff_polys", ["root_polys"]}).
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long = "I0", allow_hyphen_values = true)]
        i0: IntervalArg,
        #[arg(long = "I1", allow_hyphen_values = true)]
        i1: IntervalArg,
        /// Multiplicity order; defaults to the degree (full-multiplicity case).
        #[arg(long)]
        p: Option<usize>,
        /// Grid density for curve validation and the alpha-uniformity sup.
        #[arg(long, default_value_t = 2048)]
        grid: usize,
    },
    /// Track the roots over a grid and emit CSV.
    Track {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Tracking window; defaults to the curve domain.
        #[arg(long = "I0", allow_hyphen_values = true)]
        i0: Option<IntervalArg>,
        #[arg(long, default_value_t = 2048)]
        grid: usize,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = TrackModeArg::Ordered)]
        mode: TrackModeArg,
    },
    /// One-sided derivative continuity diagnostics for the ordered branches.
    C1check {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long = "I0", allow_hyphen_values = true)]
        i0: Option<IntervalArg>,
        #[arg(long, default_value_t = 2048)]
        grid: usize,
        #[arg(long, default_value_t = 1e-4)]
        tol: f64,
    },
    /// Run the full battery of inequality and regularity checks on a curve.
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long = "I0", allow_hyphen_values = true)]
        i0: IntervalArg,
        #[arg(long = "I1", allow_hyphen_values = true)]
        i1: IntervalArg,
        #[arg(long)]
        p: Option<usize>,
        #[arg(long, default_value_t = 2048)]
        grid: usize,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Sample random ground-truth families and tabulate
    /// empirical-Lipschitz / bracket ratios.
    Calibrate {
        /// Polynomial degree of the sampled families (2..=6).
        #[arg(long)]
        n: usize,
        /// Multiplicity order; defaults to n.
        #[arg(long)]
        p: Option<usize>,
        #[arg(long, default_value_t = 100)]
        families: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long = "I0", default_value = "-1,1", allow_hyphen_values = true)]
        i0: IntervalArg,
        #[arg(long = "I1", default_value = "-2,2", allow_hyphen_values = true)]
        i1: IntervalArg,
        /// Tracking grid density per family.
        #[arg(long, default_value_t = 2048)]
        grid: usize,
        /// Write the per-family ratio table CSV here.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}
