//! The full-flag quiver: complex and real moment maps, gauge action, a
//! gradient-descent solver for the real moment equations, nilpotency of the
//! end matrix, and the Weyl involution on the n = 2 data.

use nalgebra::{DMatrix, RowVector2, Vector2};
use num_complex::Complex64;

use crate::error::{Error, Result};

type C64 = Complex64;

/// Chain of linear maps along the flag 0 <-> C <-> C^2 <-> ... <-> C^n,
/// with the zero maps at the left end left implicit.
#[derive(Debug, Clone, PartialEq)]
pub struct QuiverRep {
    n: usize,
    /// alphas[k] = alpha_{k+1}: a (k+2) x (k+1) map up the chain.
    alphas: Vec<DMatrix<C64>>,
    /// betas[k] = beta_{k+1}: a (k+1) x (k+2) map down the chain.
    betas: Vec<DMatrix<C64>>,
}

/// Scalar levels of the complex moment map, one per vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct LambdaVector(pub Vec<C64>);

/// Which gauge group the real moment map refers to. The special-unitary mode
/// drops the trace part at every vertex and skips the trivial vertex of
/// dimension one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GaugeMode {
    Su,
    U,
}

/// An n = 2 representation: a column alpha and a row beta.
#[derive(Debug, Clone, PartialEq)]
pub struct Sl2Pair {
    pub alpha: Vector2<C64>,
    pub beta: RowVector2<C64>,
}

impl Sl2Pair {
    pub fn new(alpha: Vector2<C64>, beta: RowVector2<C64>) -> Sl2Pair {
        Sl2Pair { alpha, beta }
    }

    pub fn zero() -> Sl2Pair {
        Sl2Pair {
            alpha: Vector2::zeros(),
            beta: RowVector2::zeros(),
        }
    }

    /// The scalar beta . alpha, the moment of the circle action.
    pub fn scalar_moment(&self) -> C64 {
        (self.beta * self.alpha)[(0, 0)]
    }

    /// Traceless part of alpha . beta, the moment of the group action.
    pub fn group_moment(&self) -> nalgebra::Matrix2<C64> {
        let m = self.alpha * self.beta;
        let half_tr = m.trace() * C64::new(0.5, 0.0);
        m - nalgebra::Matrix2::identity() * half_tr
    }
}

/// Result of a successful real-moment solve.
#[derive(Debug, Clone)]
pub struct SolveOutcome {
    pub rep: QuiverRep,
    pub iterations: usize,
    pub residual: f64,
}

fn is_finite(m: &DMatrix<C64>) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// exp(scale * h) for Hermitian h, via eigendecomposition. Traceless h with
/// any scale lands in the special linear group exactly up to rounding.
fn herm_exp(h: &DMatrix<C64>, scale: f64) -> DMatrix<C64> {
    let eig = h.clone().symmetric_eigen();
    let d = DMatrix::from_diagonal(&eig.eigenvalues.map(|l| C64::new((scale * l).exp(), 0.0)));
    &eig.eigenvectors * d * eig.eigenvectors.adjoint()
}

impl QuiverRep {
    pub fn new(n: usize, alphas: Vec<DMatrix<C64>>, betas: Vec<DMatrix<C64>>) -> Result<QuiverRep> {
        if n < 2 {
            return Err(Error::ShapeMismatch(format!("flag length {n} < 2")));
        }
        if alphas.len() != n - 1 || betas.len() != n - 1 {
            return Err(Error::ShapeMismatch(format!(
                "expected {} maps per direction, got {} and {}",
                n - 1,
                alphas.len(),
                betas.len()
            )));
        }
        for (k, (a, b)) in alphas.iter().zip(&betas).enumerate() {
            if a.nrows() != k + 2 || a.ncols() != k + 1 {
                return Err(Error::ShapeMismatch(format!(
                    "alpha_{} must be {}x{}, got {}x{}",
                    k + 1,
                    k + 2,
                    k + 1,
                    a.nrows(),
                    a.ncols()
                )));
            }
            if b.nrows() != k + 1 || b.ncols() != k + 2 {
                return Err(Error::ShapeMismatch(format!(
                    "beta_{} must be {}x{}, got {}x{}",
                    k + 1,
                    k + 1,
                    k + 2,
                    b.nrows(),
                    b.ncols()
                )));
            }
            if !is_finite(a) || !is_finite(b) {
                return Err(Error::ShapeMismatch("non-finite entry".into()));
            }
        }
        Ok(QuiverRep { n, alphas, betas })
    }

    pub fn zero(n: usize) -> QuiverRep {
        let alphas = (0..n - 1).map(|k| DMatrix::zeros(k + 2, k + 1)).collect();
        let betas = (0..n - 1).map(|k| DMatrix::zeros(k + 1, k + 2)).collect();
        QuiverRep { n, alphas, betas }
    }

    /// Canonical representation on the zero level of both moment systems:
    /// every alpha is the bottom inclusion and every beta the front
    /// projection, so alpha_{i-1} beta_{i-1} = beta_i alpha_i exactly and the
    /// end matrix is a regular nilpotent Jordan block.
    pub fn nilpotent_chain(n: usize) -> QuiverRep {
        let alphas = (0..n - 1)
            .map(|k| {
                DMatrix::from_fn(k + 2, k + 1, |r, c| {
                    if r == c + 1 {
                        C64::new(1.0, 0.0)
                    } else {
                        C64::new(0.0, 0.0)
                    }
                })
            })
            .collect();
        let betas = (0..n - 1)
            .map(|k| {
                DMatrix::from_fn(k + 1, k + 2, |r, c| {
                    if r == c {
                        C64::new(1.0, 0.0)
                    } else {
                        C64::new(0.0, 0.0)
                    }
                })
            })
            .collect();
        QuiverRep { n, alphas, betas }
    }

    /// Worked three-step configuration: alpha_1 includes the line, beta_1 is
    /// `c` times the dual projection, alpha_2 includes the plane, and beta_2
    /// hits the far corner. At c = 0 it sits on the zero complex level with
    /// all scalar levels zero.
    pub fn three_step(c: f64) -> QuiverRep {
        let one = C64::new(1.0, 0.0);
        let zero = C64::new(0.0, 0.0);
        let alpha1 = DMatrix::from_column_slice(2, 1, &[one, zero]);
        let beta1 = DMatrix::from_row_slice(1, 2, &[C64::new(c, 0.0), zero]);
        let alpha2 = DMatrix::from_row_slice(3, 2, &[one, zero, zero, one, zero, zero]);
        let beta2 = DMatrix::from_row_slice(2, 3, &[zero, zero, one, zero, zero, zero]);
        QuiverRep {
            n: 3,
            alphas: vec![alpha1, alpha2],
            betas: vec![beta1, beta2],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alphas(&self) -> &[DMatrix<C64>] {
        &self.alphas
    }

    pub fn betas(&self) -> &[DMatrix<C64>] {
        &self.betas
    }

    /// alpha_{i-1} beta_{i-1} - beta_i alpha_i at vertex i (1-based).
    fn complex_vertex_moment(&self, i: usize) -> DMatrix<C64> {
        let mut m = DMatrix::zeros(i, i);
        if i >= 2 {
            m += &self.alphas[i - 2] * &self.betas[i - 2];
        }
        m -= &self.betas[i - 1] * &self.alphas[i - 1];
        m
    }

    /// Scalar levels extracted by trace division, with the Frobenius norm of
    /// the traceless remainder as the residual at each vertex.
    pub fn complex_moment(&self) -> (LambdaVector, Vec<f64>) {
        let mut lambdas = Vec::with_capacity(self.n - 1);
        let mut residuals = Vec::with_capacity(self.n - 1);
        for i in 1..self.n {
            let m = self.complex_vertex_moment(i);
            let lambda = m.trace() / C64::new(i as f64, 0.0);
            let traceless = &m - DMatrix::identity(i, i) * lambda;
            lambdas.push(lambda);
            residuals.push(traceless.norm());
        }
        (LambdaVector(lambdas), residuals)
    }

    /// Gauge action by invertible matrices g_1..g_{n-1}; the flag top carries
    /// no gauge factor.
    pub fn act(&self, gs: &[DMatrix<C64>]) -> Result<QuiverRep> {
        if gs.len() != self.n - 1 {
            return Err(Error::ShapeMismatch(format!(
                "expected {} gauge matrices, got {}",
                self.n - 1,
                gs.len()
            )));
        }
        let mut invs = Vec::with_capacity(gs.len());
        for (k, g) in gs.iter().enumerate() {
            if g.nrows() != k + 1 || g.ncols() != k + 1 {
                return Err(Error::ShapeMismatch(format!(
                    "gauge matrix {} must be {}x{}",
                    k + 1,
                    k + 1,
                    k + 1
                )));
            }
            let inv = g.clone().try_inverse().ok_or(Error::SingularGauge(k + 1))?;
            invs.push(inv);
        }
        let alphas = (0..self.n - 1)
            .map(|k| {
                // alpha_{k+1}: g_{k+2} alpha g_{k+1}^{-1}, with g_n = I.
                let left = if k + 1 < self.n - 1 {
                    &gs[k + 1] * &self.alphas[k]
                } else {
                    self.alphas[k].clone()
                };
                left * &invs[k]
            })
            .collect();
        let betas = (0..self.n - 1)
            .map(|k| {
                let right = if k + 1 < self.n - 1 {
                    &self.betas[k] * &invs[k + 1]
                } else {
                    self.betas[k].clone()
                };
                &gs[k] * right
            })
            .collect();
        Ok(QuiverRep {
            n: self.n,
            alphas,
            betas,
        })
    }

    /// Hermitian real-moment matrix at vertex i (1-based).
    fn real_vertex_moment(&self, i: usize) -> DMatrix<C64> {
        let mut m = DMatrix::zeros(i, i);
        if i >= 2 {
            m += &self.alphas[i - 2] * self.alphas[i - 2].adjoint();
            m -= self.betas[i - 2].adjoint() * &self.betas[i - 2];
        }
        m -= self.alphas[i - 1].adjoint() * &self.alphas[i - 1];
        m += &self.betas[i - 1] * self.betas[i - 1].adjoint();
        m
    }

    fn mode_vertices(&self, mode: GaugeMode) -> std::ops::Range<usize> {
        match mode {
            GaugeMode::Su => 2..self.n,
            GaugeMode::U => 1..self.n,
        }
    }

    /// Real-moment matrices per gauge vertex (traceless in Su mode).
    pub fn real_moment_matrices(&self, mode: GaugeMode) -> Vec<(usize, DMatrix<C64>)> {
        self.mode_vertices(mode)
            .map(|i| {
                let mut m = self.real_vertex_moment(i);
                if mode == GaugeMode::Su {
                    let shift = m.trace() / C64::new(i as f64, 0.0);
                    m -= DMatrix::identity(i, i) * shift;
                }
                (i, m)
            })
            .collect()
    }

    /// Frobenius residual per gauge vertex.
    pub fn real_moment(&self, mode: GaugeMode) -> Vec<f64> {
        self.real_moment_matrices(mode)
            .iter()
            .map(|(_, m)| m.norm())
            .collect()
    }

    /// Gradient descent on the squared real-moment norm over the complexified
    /// gauge orbit, with a step-halving line search. The flow preserves the
    /// complex levels; it fails with `NoConvergence` where the orbit cannot
    /// reach the zero level within the iteration budget.
    pub fn solve_real_moment(
        &self,
        mode: GaugeMode,
        max_iter: usize,
        tol: f64,
    ) -> Result<SolveOutcome> {
        let (_, cres) = self.complex_moment();
        if let Some(&bad) = cres.iter().find(|&&r| r >= tol.max(1e-12)) {
            return Err(Error::Precondition(format!(
                "complex moment residual {bad:.3e} not below tolerance"
            )));
        }

        let objective = |rep: &QuiverRep| -> (f64, f64) {
            let mats = rep.real_moment_matrices(mode);
            let sq: f64 = mats.iter().map(|(_, m)| m.norm_squared()).sum();
            let max = mats.iter().map(|(_, m)| m.norm()).fold(0.0, f64::max);
            (sq, max)
        };

        let mut rep = self.clone();
        let (mut value, mut residual) = objective(&rep);
        if residual < tol {
            return Ok(SolveOutcome {
                rep,
                iterations: 0,
                residual,
            });
        }

        let mut step = 0.25;
        const MAX_STEP: f64 = 1.0;
        for it in 1..=max_iter {
            let mats = rep.real_moment_matrices(mode);
            let mut accepted = false;
            while step > 1e-18 {
                let gs: Vec<DMatrix<C64>> = (0..self.n - 1)
                    .map(|k| {
                        let vertex = k + 1;
                        match mats.iter().find(|(i, _)| *i == vertex) {
                            Some((_, m)) => herm_exp(m, -step),
                            None => DMatrix::identity(vertex, vertex),
                        }
                    })
                    .collect();
                let cand = rep.act(&gs)?;
                let (cand_value, cand_residual) = objective(&cand);
                if cand_value < value {
                    rep = cand;
                    value = cand_value;
                    residual = cand_residual;
                    step = (step * 2.0).min(MAX_STEP);
                    accepted = true;
                    break;
                }
                step *= 0.5;
            }
            if residual < tol {
                return Ok(SolveOutcome {
                    rep,
                    iterations: it,
                    residual,
                });
            }
            if !accepted {
                return Err(Error::NoConvergence {
                    residual,
                    iterations: it,
                });
            }
        }
        Err(Error::NoConvergence {
            residual,
            iterations: max_iter,
        })
    }

    /// The end matrix alpha_{n-1} beta_{n-1} and whether it is nilpotent
    /// relative to its scale. Under the preconditions this is an algebraic
    /// identity: the n-th power telescopes through the zero map at the far
    /// end of the chain.
    pub fn end_matrix_nilpotency(&self, tol: f64) -> Result<(DMatrix<C64>, bool)> {
        let (LambdaVector(lambdas), cres) = self.complex_moment();
        if cres.iter().any(|&r| r >= tol.max(1e-12)) {
            return Err(Error::Precondition(
                "complex moment residual not below tolerance".into(),
            ));
        }
        if lambdas.iter().any(|l| l.norm() >= tol.max(1e-12)) {
            return Err(Error::Precondition("lambda not at zero".into()));
        }
        let x = &self.alphas[self.n - 2] * &self.betas[self.n - 2];
        let scale = x.norm();
        if scale == 0.0 {
            return Ok((x, true));
        }
        let mut power = x.clone();
        for _ in 1..self.n {
            power = &power * &x;
        }
        let nilpotent = power.norm() < tol * scale.powi(self.n as i32 - 1);
        Ok((x, nilpotent))
    }
}

/// The Weyl involution on n = 2 data, written out from the symplectic form.
pub fn sl2_gamma(p: &Sl2Pair) -> Sl2Pair {
    Sl2Pair {
        alpha: Vector2::new(-p.beta[(0, 1)], p.beta[(0, 0)]),
        beta: RowVector2::new(p.alpha[1], -p.alpha[0]),
    }
}
