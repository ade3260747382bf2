use std::path::PathBuf;

use clap::Subcommand;
use serde_json::json;
use symkit::arrangement::BroadSet;
use symkit::hypertoric;

use crate::util::{self, ArrangementInput};
use crate::wire::{cx_vec, PairWire, PointWire};
use crate::CliError;

#[derive(clap::Args)]
pub struct HypertoricCmd {
    #[command(subcommand)]
    action: Action,
}

#[derive(Subcommand)]
enum Action {
    /// Integer basis of the kernel lattice of the torus map.
    Kernel {
        #[command(flatten)]
        arr: ArrangementInput,
    },
    /// Moment residuals of the kernel torus at a point.
    Lmoment {
        #[command(flatten)]
        arr: ArrangementInput,
        #[arg(long)]
        point: PathBuf,
    },
    /// Residual-torus moments of a point on the zero complex level.
    Tmoment {
        #[command(flatten)]
        arr: ArrangementInput,
        #[arg(long)]
        point: PathBuf,
    },
    /// Act by the Weyl element named by a word of 1-based reflection indices.
    Weylact {
        #[command(flatten)]
        arr: ArrangementInput,
        #[arg(long)]
        point: PathBuf,
        /// Comma-separated reflection indices; empty for the identity.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        word: Vec<usize>,
    },
    /// Project onto the extended-core component of a broad set.
    Project {
        #[command(flatten)]
        arr: ArrangementInput,
        #[arg(long)]
        point: PathBuf,
        /// Comma-separated 1-based indices of the broad set; defaults to all.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        broad: Option<Vec<usize>>,
        #[arg(long, default_value_t = hypertoric::CHART_TOL)]
        tol: f64,
    },
    /// Torus moments plus one core component per Weyl element.
    Components {
        #[command(flatten)]
        arr: ArrangementInput,
        #[arg(long)]
        point: PathBuf,
    },
    /// Embed a rank-one point into the two-step quiver.
    Embed {
        #[arg(long)]
        point: PathBuf,
    },
}

impl HypertoricCmd {
    pub fn run(self) -> Result<serde_json::Value, CliError> {
        match self.action {
            Action::Kernel { arr } => {
                let (_, arr) = arr.resolve()?;
                let lattice = hypertoric::kernel_lattice(&arr)?;
                Ok(json!({ "basis": lattice.basis }))
            }
            Action::Lmoment { arr, point } => {
                let (_, arr) = arr.resolve()?;
                let p: PointWire = crate::read_json(&point)?;
                let (complex, real) = hypertoric::l_moment_residuals(&arr, &p.to_point()?)?;
                Ok(json!({ "complex": cx_vec(&complex), "real": real }))
            }
            Action::Tmoment { arr, point } => {
                let (_, arr) = arr.resolve()?;
                let p: PointWire = crate::read_json(&point)?;
                let (xi_complex, xi_real) = hypertoric::t_moment(&arr, &p.to_point()?)?;
                Ok(json!({ "xi_complex": cx_vec(&xi_complex), "xi_real": xi_real }))
            }
            Action::Weylact { arr, point, word } => {
                let (rs, arr) = arr.resolve_weyl()?;
                let p: PointWire = crate::read_json(&point)?;
                let w = util::element_from_word(&rs, &word)?;
                let q = hypertoric::weyl_act(&rs, &arr, &w, &p.to_point()?)?;
                Ok(serde_json::to_value(PointWire::from_point(&q))?)
            }
            Action::Project {
                arr,
                point,
                broad,
                tol,
            } => {
                let (_, arr) = arr.resolve()?;
                let p: PointWire = crate::read_json(&point)?;
                let v = match broad {
                    Some(list) => BroadSet {
                        indices: util::indices_zero_based(&list, arr.num_hyperplanes())?,
                    },
                    None => BroadSet::full(arr.num_hyperplanes()),
                };
                let q = hypertoric::core_projection(&arr, &v, &p.to_point()?, tol)?;
                Ok(serde_json::to_value(PointWire::from_point(&q))?)
            }
            Action::Components { arr, point } => {
                let (rs, arr) = arr.resolve_weyl()?;
                let p: PointWire = crate::read_json(&point)?;
                let record = hypertoric::universal_components(&rs, &arr, &p.to_point()?)?;
                let components: Vec<serde_json::Value> = record
                    .components
                    .iter()
                    .map(|(w, q)| {
                        json!({
                            "word": util::one_based(&w.word),
                            "point": PointWire::from_point(q),
                        })
                    })
                    .collect();
                Ok(json!({
                    "mu_complex": cx_vec(&record.mu_complex),
                    "mu_real": record.mu_real,
                    "components": components,
                }))
            }
            Action::Embed { point } => {
                let p: PointWire = crate::read_json(&point)?;
                let pair = hypertoric::sl2_embed_quiver(&p.to_point()?)?;
                Ok(serde_json::to_value(PairWire::from_pair(&pair))?)
            }
        }
    }
}
