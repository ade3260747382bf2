//! JSON wire formats: complex numbers as [re, im] pairs, matrices as
//! row-major nested arrays. Conversions validate shapes and report schema
//! problems distinctly from library precondition failures.

use nalgebra::{DMatrix, Matrix2, Matrix4, RowVector2, Vector2};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::CliError;

type C64 = Complex64;

/// A complex number on the wire.
pub type Cx = [f64; 2];

pub fn cx(z: C64) -> Cx {
    [z.re, z.im]
}

pub fn c64(w: Cx) -> C64 {
    C64::new(w[0], w[1])
}

pub fn cx_vec(v: &[C64]) -> Vec<Cx> {
    v.iter().map(|&z| cx(z)).collect()
}

pub fn c64_vec(v: &[Cx]) -> Vec<C64> {
    v.iter().map(|&w| c64(w)).collect()
}

/// Row-major complex matrix.
pub type MatrixWire = Vec<Vec<Cx>>;

pub fn from_dmatrix(m: &DMatrix<C64>) -> MatrixWire {
    (0..m.nrows())
        .map(|r| (0..m.ncols()).map(|c| cx(m[(r, c)])).collect())
        .collect()
}

pub fn to_dmatrix(w: &MatrixWire) -> Result<DMatrix<C64>, CliError> {
    let rows = w.len();
    if rows == 0 {
        return Err(CliError::schema("empty matrix"));
    }
    let cols = w[0].len();
    if cols == 0 || w.iter().any(|r| r.len() != cols) {
        return Err(CliError::schema("ragged matrix rows"));
    }
    Ok(DMatrix::from_fn(rows, cols, |r, c| c64(w[r][c])))
}

pub fn to_matrix2(w: &MatrixWire) -> Result<Matrix2<C64>, CliError> {
    let m = to_dmatrix(w)?;
    if m.nrows() != 2 || m.ncols() != 2 {
        return Err(CliError::schema("expected a 2x2 matrix"));
    }
    Ok(Matrix2::from_fn(|r, c| m[(r, c)]))
}

pub fn to_matrix4(w: &MatrixWire) -> Result<Matrix4<C64>, CliError> {
    let m = to_dmatrix(w)?;
    if m.nrows() != 4 || m.ncols() != 4 {
        return Err(CliError::schema("expected a 4x4 matrix"));
    }
    Ok(Matrix4::from_fn(|r, c| m[(r, c)]))
}

pub fn from_matrix2(m: &Matrix2<C64>) -> MatrixWire {
    (0..2)
        .map(|r| (0..2).map(|c| cx(m[(r, c)])).collect())
        .collect()
}

pub fn from_matrix4(m: &Matrix4<C64>) -> MatrixWire {
    (0..4)
        .map(|r| (0..4).map(|c| cx(m[(r, c)])).collect())
        .collect()
}

/// An n = 2 quiver record on the wire.
#[derive(Debug, Serialize, Deserialize)]
pub struct PairWire {
    pub alpha: [Cx; 2],
    pub beta: [Cx; 2],
}

impl PairWire {
    pub fn to_pair(&self) -> symkit::quiver::Sl2Pair {
        symkit::quiver::Sl2Pair::new(
            Vector2::new(c64(self.alpha[0]), c64(self.alpha[1])),
            RowVector2::new(c64(self.beta[0]), c64(self.beta[1])),
        )
    }

    pub fn from_pair(p: &symkit::quiver::Sl2Pair) -> PairWire {
        PairWire {
            alpha: [cx(p.alpha[0]), cx(p.alpha[1])],
            beta: [cx(p.beta[(0, 0)]), cx(p.beta[(0, 1)])],
        }
    }
}

/// A hypertoric point on the wire.
#[derive(Debug, Serialize, Deserialize)]
pub struct PointWire {
    pub a: Vec<Cx>,
    pub b: Vec<Cx>,
}

impl PointWire {
    pub fn to_point(&self) -> Result<symkit::hypertoric::HypertoricPoint, CliError> {
        symkit::hypertoric::HypertoricPoint::new(c64_vec(&self.a), c64_vec(&self.b))
            .map_err(CliError::from)
    }

    pub fn from_point(p: &symkit::hypertoric::HypertoricPoint) -> PointWire {
        PointWire {
            a: cx_vec(&p.a),
            b: cx_vec(&p.b),
        }
    }
}
