use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

/// Exact classification of 2-variable weighted shifts.
///
/// Rationals are written `num/den` or as integers; decimal input is rejected.
#[derive(Debug, Parser)]
#[command(name = "hyposhift", version)]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

/// Flags shared by every subcommand. Each can also come from `--config`.
#[derive(Debug, Default, Args)]
pub struct Common {
    /// Moment matrix order, or `inf` for subnormality.
    #[arg(long, global = true)]
    pub k: Option<String>,
    /// First power exponent (or the step of the generalized Hilbert matrix).
    #[arg(long, global = true)]
    pub h: Option<String>,
    /// Second power exponent.
    #[arg(long, global = true)]
    pub l: Option<String>,
    /// Corner entry of the generalized Hilbert matrix.
    #[arg(long, global = true)]
    pub x: Option<String>,
    #[arg(long, global = true)]
    pub x2: Option<String>,
    #[arg(long, global = true)]
    pub y2: Option<String>,
    #[arg(long, global = true)]
    pub a2: Option<String>,
    #[arg(long, global = true)]
    pub kappa2: Option<String>,
    #[arg(long, global = true)]
    pub p: Option<String>,
    #[arg(long, global = true)]
    pub q: Option<String>,
    /// One of `kappa`, `s1`, `classA`.
    #[arg(long, global = true)]
    pub family: Option<String>,
    /// Also print decimals with this many digits.
    #[arg(long, global = true)]
    pub decimal: Option<String>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<String>,
    /// `key = value` file supplying defaults for any flag.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

impl Common {
    pub fn pairs(&self) -> Vec<(&'static str, Option<&String>)> {
        vec![
            ("k", self.k.as_ref()),
            ("h", self.h.as_ref()),
            ("l", self.l.as_ref()),
            ("x", self.x.as_ref()),
            ("x2", self.x2.as_ref()),
            ("y2", self.y2.as_ref()),
            ("a2", self.a2.as_ref()),
            ("kappa2", self.kappa2.as_ref()),
            ("p", self.p.as_ref()),
            ("q", self.q.as_ref()),
            ("family", self.family.as_ref()),
            ("decimal", self.decimal.as_ref()),
            ("out", self.out.as_ref()),
        ]
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Determinant of the generalized Hilbert matrix A_k(x, h).
    DetHilbert {
        /// Compare against elimination on the assembled matrix.
        #[arg(long)]
        oracle: bool,
    },
    /// Classify a family member (and a power of it).
    Classify,
    /// Evaluate a closed-form threshold, squared.
    Threshold {
        /// h1, f, hinf, g, power, m1, m2, minf, h2 or h2_21.
        name: String,
    },
    /// Positivity of a symmetric matrix given as `a,b;c,d`.
    Psd { matrix: String },
    /// Evaluate verdicts over a grid of one parameter.
    Sweep(SweepArgs),
    /// Run the regression checks.
    Verify {
        /// Restrict to one group: hilbert, kappa, two-one, s1, class-a.
        #[arg(long)]
        only: Option<String>,
    },
}

#[derive(Debug, Default, Args)]
pub struct SweepArgs {
    /// Parameter to sweep: a2, kappa2, x2, y2, p or q.
    #[arg(long)]
    pub vary: Option<String>,
    #[arg(long)]
    pub start: Option<String>,
    #[arg(long)]
    pub stop: Option<String>,
    #[arg(long)]
    pub step: Option<String>,
    /// Comma-separated tests such as `H1,H2@2:1,Hinf`.
    #[arg(long)]
    pub tests: Option<String>,
    /// csv or json.
    #[arg(long)]
    pub format: Option<String>,
}

impl SweepArgs {
    pub fn pairs(&self) -> Vec<(&'static str, Option<&String>)> {
        vec![
            ("vary", self.vary.as_ref()),
            ("start", self.start.as_ref()),
            ("stop", self.stop.as_ref()),
            ("step", self.step.as_ref()),
            ("tests", self.tests.as_ref()),
            ("format", self.format.as_ref()),
        ]
    }
}
