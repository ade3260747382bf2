use std::path::PathBuf;

use clap::Subcommand;
use serde::{Deserialize, Serialize};
use serde_json::json;
use symkit::nahm::{integrate, NahmData, NahmSymmetry};

use crate::wire::{from_dmatrix, to_dmatrix, MatrixWire};
use crate::CliError;

#[derive(clap::Args)]
pub struct NahmCmd {
    #[command(subcommand)]
    action: Action,
}

#[derive(Subcommand)]
enum Action {
    /// Integrate from initial matrices over an interval.
    Integrate {
        /// JSON file { "initial": [m0, m1, m2, m3], "interval": [a, b],
        /// "steps": n }.
        #[arg(long)]
        input: PathBuf,
    },
    /// Largest defect of the equations over a sampled configuration.
    Residual {
        /// JSON file with sampled data (see `integrate` output).
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Apply the scaling or reflection symmetry.
    Transform {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        kind: Kind,
        /// Scale factor (required for --kind scale).
        #[arg(long)]
        factor: Option<f64>,
        /// Optional comma-separated grid to interpolate the result onto.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        resample: Option<Vec<f64>>,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
}

#[derive(clap::ValueEnum, Clone, Copy)]
enum Kind {
    Scale,
    Reflect,
}

#[derive(Serialize, Deserialize)]
pub struct DataWire {
    pub grid: Vec<f64>,
    pub t0: Vec<MatrixWire>,
    pub t1: Vec<MatrixWire>,
    pub t2: Vec<MatrixWire>,
    pub t3: Vec<MatrixWire>,
}

impl DataWire {
    fn to_data(&self, tol: f64) -> Result<NahmData, CliError> {
        let convert = |w: &Vec<MatrixWire>| -> Result<Vec<_>, CliError> {
            w.iter().map(to_dmatrix).collect()
        };
        NahmData::new(
            self.grid.clone(),
            [
                convert(&self.t0)?,
                convert(&self.t1)?,
                convert(&self.t2)?,
                convert(&self.t3)?,
            ],
            tol,
        )
        .map_err(CliError::from)
    }

    fn from_data(d: &NahmData) -> DataWire {
        let convert = |c: usize| d.component(c).iter().map(from_dmatrix).collect();
        DataWire {
            grid: d.grid().to_vec(),
            t0: convert(0),
            t1: convert(1),
            t2: convert(2),
            t3: convert(3),
        }
    }
}

#[derive(Deserialize)]
struct IntegrateInput {
    initial: [MatrixWire; 4],
    interval: [f64; 2],
    steps: usize,
}

impl NahmCmd {
    pub fn run(self) -> Result<serde_json::Value, CliError> {
        match self.action {
            Action::Integrate { input } => {
                let w: IntegrateInput = crate::read_json(&input)?;
                let initial = [
                    to_dmatrix(&w.initial[0])?,
                    to_dmatrix(&w.initial[1])?,
                    to_dmatrix(&w.initial[2])?,
                    to_dmatrix(&w.initial[3])?,
                ];
                let data = integrate(&initial, w.interval[0], w.interval[1], w.steps)?;
                let residual = data.residual()?;
                Ok(json!({
                    "data": DataWire::from_data(&data),
                    "residual": residual,
                }))
            }
            Action::Residual { input, tol } => {
                let w: DataWire = crate::read_json(&input)?;
                let r = w.to_data(tol)?.residual()?;
                Ok(json!({ "residual": r }))
            }
            Action::Transform {
                input,
                kind,
                factor,
                resample,
                tol,
            } => {
                let w: DataWire = crate::read_json(&input)?;
                let data = w.to_data(tol)?;
                let sym = match kind {
                    Kind::Scale => NahmSymmetry::Scale(
                        factor.ok_or_else(|| CliError::schema("--kind scale needs --factor"))?,
                    ),
                    Kind::Reflect => NahmSymmetry::Reflect,
                };
                let mut out = data.symmetry_transform(sym)?;
                if let Some(grid) = resample {
                    out = out.resample(&grid)?;
                }
                Ok(serde_json::to_value(DataWire::from_data(&out))?)
            }
        }
    }
}
