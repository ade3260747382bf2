use std::path::PathBuf;

use clap::Subcommand;
use serde::{Deserialize, Serialize};
use serde_json::json;
use symkit::quiver::{sl2_gamma, GaugeMode, LambdaVector, QuiverRep};

use crate::wire::{cx_vec, from_dmatrix, to_dmatrix, MatrixWire, PairWire};
use crate::CliError;

#[derive(clap::Args)]
pub struct QuiverCmd {
    #[command(subcommand)]
    action: Action,
}

#[derive(clap::ValueEnum, Clone, Copy)]
enum Mode {
    Su,
    U,
}

impl From<Mode> for GaugeMode {
    fn from(m: Mode) -> GaugeMode {
        match m {
            Mode::Su => GaugeMode::Su,
            Mode::U => GaugeMode::U,
        }
    }
}

#[derive(Subcommand)]
enum Action {
    /// Scalar levels and residuals of the complex moment map.
    Moment {
        #[arg(long)]
        input: PathBuf,
    },
    /// Residuals of the real moment map per gauge vertex.
    Realmoment {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "su")]
        mode: Mode,
    },
    /// Act by a tuple of invertible gauge matrices.
    Act {
        #[arg(long)]
        input: PathBuf,
        /// JSON file { "gs": [matrix, ...] }.
        #[arg(long)]
        gauge: PathBuf,
    },
    /// Drive the real moment map to zero along the gauge orbit.
    Solve {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "su")]
        mode: Mode,
        #[arg(long, default_value_t = 10_000)]
        max_iter: usize,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// End matrix and its nilpotency check.
    Nilpotent {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Weyl involution on two-step data.
    Gamma {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Serialize, Deserialize)]
pub struct RepWire {
    pub n: usize,
    pub alphas: Vec<MatrixWire>,
    pub betas: Vec<MatrixWire>,
}

impl RepWire {
    pub fn to_rep(&self) -> Result<QuiverRep, CliError> {
        let alphas = self
            .alphas
            .iter()
            .map(to_dmatrix)
            .collect::<Result<Vec<_>, _>>()?;
        let betas = self
            .betas
            .iter()
            .map(to_dmatrix)
            .collect::<Result<Vec<_>, _>>()?;
        QuiverRep::new(self.n, alphas, betas).map_err(CliError::from)
    }

    pub fn from_rep(rep: &QuiverRep) -> RepWire {
        RepWire {
            n: rep.n(),
            alphas: rep.alphas().iter().map(from_dmatrix).collect(),
            betas: rep.betas().iter().map(from_dmatrix).collect(),
        }
    }
}

#[derive(Deserialize)]
struct GaugeWire {
    gs: Vec<MatrixWire>,
}

impl QuiverCmd {
    pub fn run(self) -> Result<serde_json::Value, CliError> {
        match self.action {
            Action::Moment { input } => {
                let rep: RepWire = crate::read_json(&input)?;
                let (LambdaVector(lambdas), residuals) = rep.to_rep()?.complex_moment();
                Ok(json!({ "lambdas": cx_vec(&lambdas), "residuals": residuals }))
            }
            Action::Realmoment { input, mode } => {
                let rep: RepWire = crate::read_json(&input)?;
                let residuals = rep.to_rep()?.real_moment(mode.into());
                Ok(json!({ "residuals": residuals }))
            }
            Action::Act { input, gauge } => {
                let rep: RepWire = crate::read_json(&input)?;
                let gauge: GaugeWire = crate::read_json(&gauge)?;
                let gs = gauge
                    .gs
                    .iter()
                    .map(to_dmatrix)
                    .collect::<Result<Vec<_>, _>>()?;
                let moved = rep.to_rep()?.act(&gs)?;
                Ok(serde_json::to_value(RepWire::from_rep(&moved))?)
            }
            Action::Solve {
                input,
                mode,
                max_iter,
                tol,
            } => {
                let rep: RepWire = crate::read_json(&input)?;
                let out = rep
                    .to_rep()?
                    .solve_real_moment(mode.into(), max_iter, tol)?;
                Ok(json!({
                    "rep": RepWire::from_rep(&out.rep),
                    "iterations": out.iterations,
                    "residual": out.residual,
                }))
            }
            Action::Nilpotent { input, tol } => {
                let rep: RepWire = crate::read_json(&input)?;
                let (x, nilpotent) = rep.to_rep()?.end_matrix_nilpotency(tol)?;
                Ok(json!({ "end_matrix": from_dmatrix(&x), "nilpotent": nilpotent }))
            }
            Action::Gamma { input } => {
                let pair: PairWire = crate::read_json(&input)?;
                let out = sl2_gamma(&pair.to_pair());
                Ok(serde_json::to_value(PairWire::from_pair(&out))?)
            }
        }
    }
}
