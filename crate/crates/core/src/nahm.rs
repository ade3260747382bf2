//! Fixed-gauge integration of the Nahm system and its residual, plus the
//! scaling and reflection symmetries. Finite intervals stand in for half
//! lines; the zeroth matrix is held constant, so the equations are solved in
//! a fixed gauge.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

type C64 = Complex64;

/// Norm bound beyond which the integrator reports a pole.
pub const POLE_NORM: f64 = 1e6;

/// Matrix-valued samples of a Nahm configuration on an increasing grid.
#[derive(Debug, Clone, PartialEq)]
pub struct NahmData {
    grid: Vec<f64>,
    /// t[c][m]: component c in 0..4 at sample m.
    t: [Vec<DMatrix<C64>>; 4],
}

/// Symmetries of the system: T_i(t) -> c T_i(ct) and T_i(t) -> -T_i(-t).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NahmSymmetry {
    Scale(f64),
    Reflect,
}

fn anti_hermitian_defect(m: &DMatrix<C64>) -> f64 {
    (m + m.adjoint()).norm()
}

fn commutator(a: &DMatrix<C64>, b: &DMatrix<C64>) -> DMatrix<C64> {
    a * b - b * a
}

/// Weights of the first-derivative stencil at `x` on the given nodes, by
/// differentiating the Lagrange basis; exact on polynomials up to the node
/// count minus one.
fn fd_weights(nodes: &[f64], x: f64) -> Vec<f64> {
    let n = nodes.len();
    (0..n)
        .map(|j| {
            let denom: f64 = (0..n)
                .filter(|&k| k != j)
                .map(|k| nodes[j] - nodes[k])
                .product();
            let numer: f64 = (0..n)
                .filter(|&m| m != j)
                .map(|m| {
                    (0..n)
                        .filter(|&k| k != j && k != m)
                        .map(|k| x - nodes[k])
                        .product::<f64>()
                })
                .sum();
            numer / denom
        })
        .collect()
}

impl NahmData {
    pub fn new(grid: Vec<f64>, t: [Vec<DMatrix<C64>>; 4], tol: f64) -> Result<NahmData> {
        let m = grid.len();
        if m == 0 {
            return Err(Error::GridTooShort { need: 1, got: 0 });
        }
        if grid.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Precondition("grid not strictly increasing".into()));
        }
        let d = t[0]
            .first()
            .map(|x| x.nrows())
            .ok_or(Error::GridTooShort { need: 1, got: 0 })?;
        for comp in &t {
            if comp.len() != m {
                return Err(Error::DimensionMismatch {
                    expected: m,
                    got: comp.len(),
                });
            }
            for sample in comp {
                if sample.nrows() != d || sample.ncols() != d {
                    return Err(Error::ShapeMismatch(format!(
                        "expected {d}x{d} sample, got {}x{}",
                        sample.nrows(),
                        sample.ncols()
                    )));
                }
                if anti_hermitian_defect(sample) > tol * (1.0 + sample.norm()) {
                    return Err(Error::Precondition("sample is not anti-Hermitian".into()));
                }
            }
        }
        Ok(NahmData { grid, t })
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    pub fn matrix_dim(&self) -> usize {
        self.t[0][0].nrows()
    }

    pub fn component(&self, c: usize) -> &[DMatrix<C64>] {
        &self.t[c]
    }

    /// Largest defect of the equations over the interior samples and cyclic
    /// index triples, with the time derivative taken by a five-point stencil
    /// where available and a three-point stencil otherwise.
    pub fn residual(&self) -> Result<f64> {
        let m = self.len();
        if m < 3 {
            return Err(Error::GridTooShort { need: 3, got: m });
        }
        let mut worst: f64 = 0.0;
        for s in 1..m - 1 {
            let (lo, hi) = if m >= 5 {
                let lo = s.saturating_sub(2).min(m - 5);
                (lo, lo + 5)
            } else {
                (s - 1, s + 2)
            };
            let nodes = &self.grid[lo..hi];
            let w = fd_weights(nodes, self.grid[s]);
            for (i, j, k) in [(1, 2, 3), (2, 3, 1), (3, 1, 2)] {
                let mut deriv = DMatrix::zeros(self.matrix_dim(), self.matrix_dim());
                for (offset, &weight) in w.iter().enumerate() {
                    deriv += &self.t[i][lo + offset] * C64::new(weight, 0.0);
                }
                let defect = deriv + commutator(&self.t[0][s], &self.t[i][s])
                    - commutator(&self.t[j][s], &self.t[k][s]);
                worst = worst.max(defect.norm());
            }
        }
        Ok(worst)
    }

    /// Apply a symmetry, producing data on the transformed grid. Both
    /// symmetries map grid nodes to grid nodes, so no interpolation happens
    /// here; use [`NahmData::resample`] to move back onto a chosen grid.
    pub fn symmetry_transform(&self, kind: NahmSymmetry) -> Result<NahmData> {
        match kind {
            NahmSymmetry::Scale(c) => {
                if c <= 0.0 {
                    return Err(Error::Precondition("scale factor must be positive".into()));
                }
                let grid = self.grid.iter().map(|&x| x / c).collect();
                let t = [0, 1, 2, 3].map(|comp| {
                    self.t[comp]
                        .iter()
                        .map(|m| m * C64::new(c, 0.0))
                        .collect::<Vec<_>>()
                });
                Ok(NahmData { grid, t })
            }
            NahmSymmetry::Reflect => {
                let grid = self.grid.iter().rev().map(|&x| -x).collect();
                let t = [0, 1, 2, 3]
                    .map(|comp| self.t[comp].iter().rev().map(|m| -m).collect::<Vec<_>>());
                Ok(NahmData { grid, t })
            }
        }
    }

    /// Linear interpolation onto a new grid inside the sampled interval.
    pub fn resample(&self, new_grid: &[f64]) -> Result<NahmData> {
        let (lo, hi) = (self.grid[0], self.grid[self.len() - 1]);
        if new_grid.iter().any(|&x| x < lo - 1e-12 || x > hi + 1e-12) {
            return Err(Error::InterpolationOutOfRange);
        }
        if new_grid.windows(2).any(|w| w[1] <= w[0]) || new_grid.is_empty() {
            return Err(Error::Precondition("grid not strictly increasing".into()));
        }
        let locate = |x: f64| -> (usize, f64) {
            let mut s = match self
                .grid
                .binary_search_by(|probe| probe.partial_cmp(&x).unwrap())
            {
                Ok(i) => i.min(self.len() - 2),
                Err(i) => i.saturating_sub(1).min(self.len() - 2),
            };
            if s + 1 >= self.len() {
                s = self.len() - 2;
            }
            let frac = (x - self.grid[s]) / (self.grid[s + 1] - self.grid[s]);
            (s, frac.clamp(0.0, 1.0))
        };
        let t = [0, 1, 2, 3].map(|comp| {
            new_grid
                .iter()
                .map(|&x| {
                    let (s, frac) = locate(x);
                    &self.t[comp][s] * C64::new(1.0 - frac, 0.0)
                        + &self.t[comp][s + 1] * C64::new(frac, 0.0)
                })
                .collect::<Vec<_>>()
        });
        Ok(NahmData {
            grid: new_grid.to_vec(),
            t,
        })
    }
}

/// Integrate the system with the zeroth matrix held constant, fourth-order
/// fixed-step, from `t0` to `t1` (either direction). Norm growth beyond
/// [`POLE_NORM`] at any stage aborts with a pole report.
pub fn integrate(initial: &[DMatrix<C64>; 4], t0: f64, t1: f64, steps: usize) -> Result<NahmData> {
    if steps < 16 {
        return Err(Error::Precondition("need at least 16 steps".into()));
    }
    if t0 == t1 {
        return Err(Error::Precondition("empty interval".into()));
    }
    let d = initial[0].nrows();
    for m in initial {
        if m.nrows() != d || m.ncols() != d {
            return Err(Error::ShapeMismatch(
                "initial matrices must share a size".into(),
            ));
        }
        if anti_hermitian_defect(m) > 1e-9 * (1.0 + m.norm()) {
            return Err(Error::Precondition(
                "initial data is not anti-Hermitian".into(),
            ));
        }
    }
    let t0mat = initial[0].clone();
    let field = |state: &[DMatrix<C64>; 3]| -> Result<[DMatrix<C64>; 3]> {
        for m in state {
            if m.norm() > POLE_NORM {
                return Err(Error::PoleEncountered(POLE_NORM));
            }
        }
        Ok([
            -commutator(&t0mat, &state[0]) + commutator(&state[1], &state[2]),
            -commutator(&t0mat, &state[1]) + commutator(&state[2], &state[0]),
            -commutator(&t0mat, &state[2]) + commutator(&state[0], &state[1]),
        ])
    };

    let h = (t1 - t0) / steps as f64;
    let mut state = [initial[1].clone(), initial[2].clone(), initial[3].clone()];
    let mut times = vec![t0];
    let mut samples: Vec<[DMatrix<C64>; 3]> = vec![state.clone()];
    let advance = |s: &[DMatrix<C64>; 3], k: &[DMatrix<C64>; 3], f: f64| -> [DMatrix<C64>; 3] {
        [
            &s[0] + &k[0] * C64::new(f, 0.0),
            &s[1] + &k[1] * C64::new(f, 0.0),
            &s[2] + &k[2] * C64::new(f, 0.0),
        ]
    };
    for step in 0..steps {
        let k1 = field(&state)?;
        let k2 = field(&advance(&state, &k1, 0.5 * h))?;
        let k3 = field(&advance(&state, &k2, 0.5 * h))?;
        let k4 = field(&advance(&state, &k3, h))?;
        for c in 0..3 {
            state[c] = &state[c]
                + (&k1[c] + &k2[c] * C64::new(2.0, 0.0) + &k3[c] * C64::new(2.0, 0.0) + &k4[c])
                    * C64::new(h / 6.0, 0.0);
            if state[c].norm() > POLE_NORM {
                return Err(Error::PoleEncountered(POLE_NORM));
            }
        }
        times.push(t0 + (step + 1) as f64 * h);
        samples.push(state.clone());
    }

    if h < 0.0 {
        times.reverse();
        samples.reverse();
    }
    let n = times.len();
    let t = [
        (0..n).map(|_| t0mat.clone()).collect::<Vec<_>>(),
        samples.iter().map(|s| s[0].clone()).collect(),
        samples.iter().map(|s| s[1].clone()).collect(),
        samples.iter().map(|s| s[2].clone()).collect(),
    ];
    NahmData::new(times, t, 1e-6)
}

/// The standard anti-Hermitian 2x2 triple with [e_j, e_k] = e_i cyclically.
pub fn su2_triple() -> [DMatrix<C64>; 3] {
    let i = C64::new(0.0, 1.0);
    let h = C64::new(0.5, 0.0);
    [
        DMatrix::from_row_slice(
            2,
            2,
            &[C64::new(0.0, 0.0), -i * h, -i * h, C64::new(0.0, 0.0)],
        ),
        DMatrix::from_row_slice(2, 2, &[C64::new(0.0, 0.0), -h, h, C64::new(0.0, 0.0)]),
        DMatrix::from_row_slice(
            2,
            2,
            &[-i * h, C64::new(0.0, 0.0), C64::new(0.0, 0.0), i * h],
        ),
    ]
}

/// Samples of the exact inverse-time solution T_i(t) = -e_i / t on a uniform
/// grid, with the zeroth component zero.
pub fn inverse_time_solution(t0: f64, t1: f64, samples: usize) -> NahmData {
    let triple = su2_triple();
    let grid: Vec<f64> = (0..samples)
        .map(|m| t0 + (t1 - t0) * m as f64 / (samples - 1) as f64)
        .collect();
    let t = [
        grid.iter()
            .map(|_| DMatrix::zeros(2, 2))
            .collect::<Vec<_>>(),
        grid.iter()
            .map(|&x| &triple[0] * C64::new(-1.0 / x, 0.0))
            .collect(),
        grid.iter()
            .map(|&x| &triple[1] * C64::new(-1.0 / x, 0.0))
            .collect(),
        grid.iter()
            .map(|&x| &triple[2] * C64::new(-1.0 / x, 0.0))
            .collect(),
    ];
    NahmData::new(grid, t, 1e-12).expect("exact solution data is well-formed")
}
