use std::path::PathBuf;

use clap::Subcommand;
use serde::Deserialize;
use serde_json::json;
use symkit::contraction::{
    complex_invariants, equivalent, gh_flow_numeric, implode_su2, phi, psi_sl2, q_circ_membership,
    su2_flow_closed_form, swann_weyl, CotangentPoint, InvariantMatrix4, Sl2c, DEFAULT_TOL,
};

use crate::wire::{
    c64, cx, from_matrix2, from_matrix4, to_matrix2, to_matrix4, Cx, MatrixWire, PairWire,
};
use crate::CliError;

#[derive(clap::Args)]
pub struct ContractCmd {
    #[command(subcommand)]
    action: Action,
}

#[derive(Subcommand)]
enum Action {
    /// Closed-form unit-time contraction collapse of a unit-determinant matrix.
    Flow {
        /// JSON file { "matrix": 2x2 }.
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Numerical gradient-Hamiltonian flow along the determinant fibration.
    Ghflow {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 512)]
        steps: usize,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        /// Write determinant samples (t, re, im) as CSV here.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Implosion of a group element at a chamber coordinate.
    Implode {
        /// JSON file { "k": 2x2, "lam": number }.
        #[arg(long)]
        input: PathBuf,
    },
    /// Quotient map from cotangent data to the 2x2 invariant matrix.
    Phi {
        /// JSON file { "k": 2x2, "v": 2x2 }.
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Set-theoretic equivalence of two cotangent points.
    Equiv {
        /// JSON file { "x": {k, v}, "y": {k, v} }.
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Invariant 4x4 matrix of a zero-level pair of records.
    Invariants {
        /// JSON file { "p1": {alpha, beta}, "p2": {alpha, beta} }.
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Borel-resolved quotient map.
    Psi {
        /// JSON file { "g": 2x2, "v": 2x2, "line": [[re,im],[re,im]] }.
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Weyl involution on a 4x4 invariant matrix.
    Swann {
        /// JSON file { "matrix": 4x4 }.
        #[arg(long)]
        input: PathBuf,
    },
    /// Whether the circle moment of a record is nonzero.
    Qcirc {
        /// JSON file { "alpha": .., "beta": .. }.
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
}

#[derive(Deserialize)]
struct MatrixInput {
    matrix: MatrixWire,
}

#[derive(Deserialize)]
struct ImplodeInput {
    k: MatrixWire,
    lam: f64,
}

#[derive(Deserialize)]
struct CotangentWire {
    k: MatrixWire,
    v: MatrixWire,
}

impl CotangentWire {
    fn to_point(&self, tol: f64) -> Result<CotangentPoint, CliError> {
        CotangentPoint::new(to_matrix2(&self.k)?, to_matrix2(&self.v)?, tol).map_err(CliError::from)
    }
}

#[derive(Deserialize)]
struct EquivInput {
    x: CotangentWire,
    y: CotangentWire,
}

#[derive(Deserialize)]
struct PairsInput {
    p1: PairWire,
    p2: PairWire,
}

#[derive(Deserialize)]
struct PsiInput {
    g: MatrixWire,
    v: MatrixWire,
    line: [Cx; 2],
}

fn invariants_json(m: &InvariantMatrix4) -> serde_json::Value {
    json!({
        "matrix": from_matrix4(&m.0),
        "max_minor": m.max_minor(),
        "trace_norm": m.trace_norm(),
        "square_norm": m.square_norm(),
    })
}

impl ContractCmd {
    pub fn run(self) -> Result<serde_json::Value, CliError> {
        match self.action {
            Action::Flow { input, tol } => {
                let w: MatrixInput = crate::read_json(&input)?;
                let b = Sl2c::new(to_matrix2(&w.matrix)?, tol)?;
                let out = su2_flow_closed_form(&b);
                Ok(json!({ "matrix": from_matrix2(&out), "det": cx(out.determinant()) }))
            }
            Action::Ghflow {
                input,
                steps,
                tol,
                csv,
            } => {
                let w: MatrixInput = crate::read_json(&input)?;
                let b = Sl2c::new(to_matrix2(&w.matrix)?, tol)?;
                let flow = gh_flow_numeric(&b, steps)?;
                if let Some(path) = csv {
                    let mut text = String::from("t,re_det,im_det\n");
                    for (t, det) in &flow.dets {
                        text.push_str(&format!("{t},{},{}\n", det.re, det.im));
                    }
                    std::fs::write(path, text)?;
                }
                Ok(json!({
                    "matrix": from_matrix2(&flow.matrix),
                    "im_det_drift": flow.im_det_drift,
                }))
            }
            Action::Implode { input } => {
                let w: ImplodeInput = crate::read_json(&input)?;
                let z = implode_su2(&to_matrix2(&w.k)?, w.lam)?;
                Ok(json!({ "z": [cx(z[0]), cx(z[1])] }))
            }
            Action::Phi { input, tol } => {
                let w: CotangentWire = crate::read_json(&input)?;
                let m = phi(&w.to_point(tol)?);
                Ok(json!({
                    "matrix": from_matrix2(&m.0),
                    "quadric_residual": m.quadric_residual(),
                }))
            }
            Action::Equiv { input, tol } => {
                let w: EquivInput = crate::read_json(&input)?;
                let x = w.x.to_point(tol)?;
                let y = w.y.to_point(tol)?;
                Ok(json!({ "equivalent": equivalent(&x, &y, tol) }))
            }
            Action::Invariants { input, tol } => {
                let w: PairsInput = crate::read_json(&input)?;
                let m = complex_invariants(&w.p1.to_pair(), &w.p2.to_pair(), tol)?;
                Ok(invariants_json(&m))
            }
            Action::Psi { input, tol } => {
                let w: PsiInput = crate::read_json(&input)?;
                let line = nalgebra::Vector2::new(c64(w.line[0]), c64(w.line[1]));
                let img = psi_sl2(&to_matrix2(&w.g)?, &to_matrix2(&w.v)?, &line, tol)?;
                Ok(json!({
                    "right": PairWire::from_pair(&img.right),
                    "left": PairWire::from_pair(&img.left),
                    "invariants": invariants_json(&img.invariants),
                }))
            }
            Action::Swann { input } => {
                let w: MatrixInput = crate::read_json(&input)?;
                let m = InvariantMatrix4(to_matrix4(&w.matrix)?);
                let out = swann_weyl(&m);
                Ok(json!({ "matrix": from_matrix4(&out.0) }))
            }
            Action::Qcirc { input, tol } => {
                let w: PairWire = crate::read_json(&input)?;
                let p = w.to_pair();
                Ok(json!({
                    "member": q_circ_membership(&p, tol),
                    "scalar_moment": cx(p.scalar_moment()),
                }))
            }
        }
    }
}
