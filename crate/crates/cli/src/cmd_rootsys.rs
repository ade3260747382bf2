use clap::Subcommand;
use serde_json::json;
use symkit::rootsys::RootSystem;

use crate::util;
use crate::CliError;

#[derive(clap::Args)]
pub struct RootsysCmd {
    #[command(subcommand)]
    action: Action,
}

#[derive(Subcommand)]
enum Action {
    /// Tabulate simple and positive roots with the Cartan matrix.
    Build {
        #[arg(long)]
        family: char,
        #[arg(long)]
        rank: usize,
    },
    /// Enumerate the Weyl group with signed permutations on positive roots.
    Weyl {
        #[arg(long)]
        family: char,
        #[arg(long)]
        rank: usize,
    },
    /// Test dominant-chamber membership of a point in fundamental-weight
    /// coordinates.
    Chamber {
        #[arg(long)]
        family: char,
        #[arg(long)]
        rank: usize,
        /// Comma-separated coordinates.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        xi: Vec<f64>,
        /// Test the open chamber instead of the closed one.
        #[arg(long)]
        open: bool,
    },
}

fn int_matrix(m: &nalgebra::DMatrix<i64>) -> Vec<Vec<i64>> {
    (0..m.nrows())
        .map(|r| (0..m.ncols()).map(|c| m[(r, c)]).collect())
        .collect()
}

fn int_vectors(vs: &[nalgebra::DVector<i64>]) -> Vec<Vec<i64>> {
    vs.iter().map(|v| v.as_slice().to_vec()).collect()
}

pub fn root_system_json(rs: &RootSystem) -> serde_json::Value {
    json!({
        "family": rs.family().letter().to_string(),
        "rank": rs.rank(),
        "num_positive_roots": rs.num_positive_roots(),
        "simple_roots": int_vectors(rs.simple_roots()),
        "positive_roots": int_vectors(rs.positive_roots()),
        "cartan_matrix": int_matrix(rs.cartan_matrix()),
    })
}

impl RootsysCmd {
    pub fn run(self) -> Result<serde_json::Value, CliError> {
        match self.action {
            Action::Build { family, rank } => {
                let rs = util::root_system(family, rank)?;
                Ok(root_system_json(&rs))
            }
            Action::Weyl { family, rank } => {
                let rs = util::root_system(family, rank)?;
                let elements: Vec<serde_json::Value> = rs
                    .weyl_elements()
                    .iter()
                    .map(|w| {
                        json!({
                            "matrix": int_matrix(&w.matrix),
                            "weight_matrix": int_matrix(&w.weight_matrix),
                            "sigma": util::one_based(&w.sigma),
                            "signs": w.signs,
                            "word": util::one_based(&w.word),
                        })
                    })
                    .collect();
                Ok(json!({
                    "family": rs.family().letter().to_string(),
                    "rank": rs.rank(),
                    "order": elements.len(),
                    "elements": elements,
                }))
            }
            Action::Chamber {
                family,
                rank,
                xi,
                open,
            } => {
                let rs = util::root_system(family, rank)?;
                let inside = rs.chamber_membership(&xi, !open)?;
                Ok(json!({ "inside": inside, "closed": !open }))
            }
        }
    }
}
