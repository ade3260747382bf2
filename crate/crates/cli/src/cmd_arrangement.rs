use std::path::PathBuf;

use clap::Subcommand;
use serde_json::json;
use symkit::arrangement::{Arrangement, Flat};

use crate::util::{self, ArrangementInput};
use crate::wire::PointWire;
use crate::CliError;

#[derive(clap::Args)]
pub struct ArrangementCmd {
    #[command(subcommand)]
    action: Action,
}

#[derive(Subcommand)]
enum Action {
    /// Validate and primitivize an arrangement.
    New {
        #[command(flatten)]
        arr: ArrangementInput,
    },
    /// Enumerate all flats.
    Flats {
        #[command(flatten)]
        arr: ArrangementInput,
    },
    /// Enumerate all broad subsets.
    Broad {
        #[command(flatten)]
        arr: ArrangementInput,
    },
    /// Classify the stratum of a point.
    Stratum {
        #[command(flatten)]
        arr: ArrangementInput,
        /// JSON file { "a": [[re,im],..], "b": [..] }.
        #[arg(long)]
        point: PathBuf,
        /// Coordinate tolerance for vanishing pairs.
        #[arg(long, default_value_t = symkit::arrangement::STRATUM_TOL)]
        tol: f64,
    },
    /// Restriction onto a flat and localization at it.
    Restrict {
        #[command(flatten)]
        arr: ArrangementInput,
        /// Comma-separated 1-based hyperplane indices of the flat.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        flat: Vec<usize>,
    },
}

fn arrangement_json(arr: &Arrangement) -> serde_json::Value {
    json!({
        "rank": arr.rank(),
        "num_hyperplanes": arr.num_hyperplanes(),
        "normals": arr.normals(),
    })
}

fn flat_json(arr: &Arrangement, f: &Flat) -> serde_json::Value {
    json!({
        "indices": util::one_based(&f.indices),
        "subspace_dim": f.subspace_dim,
        "stratum_codim": arr.stratum_codim(f),
    })
}

impl ArrangementCmd {
    pub fn run(self) -> Result<serde_json::Value, CliError> {
        match self.action {
            Action::New { arr } => {
                let (_, arr) = arr.resolve()?;
                Ok(arrangement_json(&arr))
            }
            Action::Flats { arr } => {
                let (_, arr) = arr.resolve()?;
                let flats = arr.flats()?;
                Ok(json!({
                    "count": flats.len(),
                    "flats": flats.iter().map(|f| flat_json(&arr, f)).collect::<Vec<_>>(),
                }))
            }
            Action::Broad { arr } => {
                let (_, arr) = arr.resolve()?;
                let broad = arr.broad_subsets()?;
                Ok(json!({
                    "count": broad.len(),
                    "broad_subsets": broad
                        .iter()
                        .map(|b| util::one_based(&b.indices))
                        .collect::<Vec<_>>(),
                }))
            }
            Action::Stratum { arr, point, tol } => {
                let (_, arr) = arr.resolve()?;
                let wire: PointWire = crate::read_json(&point)?;
                let p = wire.to_point()?;
                let (flat, flags) = arr.stratum_of(&p.a, &p.b, tol)?;
                Ok(json!({
                    "flat": flat_json(&arr, &flat),
                    "in_mg": flags.in_mg,
                    "in_open_stratum": flags.in_open_stratum,
                }))
            }
            Action::Restrict { arr, flat } => {
                let (_, arr) = arr.resolve()?;
                let indices = util::indices_zero_based(&flat, arr.num_hyperplanes())?;
                let flat = arr.flat(&indices)?;
                let (restriction, localization) = arr.restriction_localization(&flat)?;
                Ok(json!({
                    "restriction": arrangement_json(&restriction),
                    "localization": arrangement_json(&localization),
                }))
            }
        }
    }
}
