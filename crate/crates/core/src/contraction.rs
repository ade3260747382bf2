//! The rank-one contraction suite: the closed-form collapse of the special
//! linear group onto its singular-matrix degeneration, the numerical
//! gradient-Hamiltonian flow along the determinant fibration, the quotient
//! map from cotangent data to outer-product invariants, the set-theoretic
//! equivalence it separates, invariants of pairs of implosion points, the
//! Borel-resolved analogue of the quotient map, and the Weyl involution on
//! the 4x4 invariant matrices.

use nalgebra::{Matrix2, Matrix4, RowVector2, Vector2};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quiver::Sl2Pair;

type C64 = Complex64;

/// Default validation tolerance.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Minimal singular-value gap for the numerical flow; below it the field
/// degenerates at the endpoint and the closed form covers that locus.
pub const GH_MIN_GAP: f64 = 0.1;

fn czero() -> C64 {
    C64::new(0.0, 0.0)
}

fn cone() -> C64 {
    C64::new(1.0, 0.0)
}

/// A special linear 2x2 matrix, validated on construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Sl2c(Matrix2<C64>);

impl Sl2c {
    pub fn new(m: Matrix2<C64>, tol: f64) -> Result<Sl2c> {
        let dev = (m.determinant() - cone()).norm();
        if dev > tol {
            return Err(Error::NonUnitDeterminant(dev));
        }
        Ok(Sl2c(m))
    }

    pub fn matrix(&self) -> &Matrix2<C64> {
        &self.0
    }
}

/// A point of the cotangent bundle of the compact group: a special unitary
/// `k` and a traceless anti-Hermitian `v`.
#[derive(Debug, Clone, PartialEq)]
pub struct CotangentPoint {
    pub k: Matrix2<C64>,
    pub v: Matrix2<C64>,
}

impl CotangentPoint {
    pub fn new(k: Matrix2<C64>, v: Matrix2<C64>, tol: f64) -> Result<CotangentPoint> {
        if (k.adjoint() * k - Matrix2::identity()).norm() > tol {
            return Err(Error::Precondition("k is not unitary".into()));
        }
        if (k.determinant() - cone()).norm() > tol {
            return Err(Error::Precondition("k has non-unit determinant".into()));
        }
        if v.trace().norm() > tol {
            return Err(Error::Precondition("v has nonzero trace".into()));
        }
        if (v + v.adjoint()).norm() > tol {
            return Err(Error::Precondition("v is not anti-Hermitian".into()));
        }
        Ok(CotangentPoint { k, v })
    }
}

/// Rank-at-most-one 2x2 invariant matrix; the quadric entry relation is its
/// defining equation.
#[derive(Debug, Clone, PartialEq)]
pub struct InvariantMatrix2(pub Matrix2<C64>);

impl InvariantMatrix2 {
    /// |XW - YZ| for the entries (X, Y; Z, W).
    pub fn quadric_residual(&self) -> f64 {
        (self.0[(0, 0)] * self.0[(1, 1)] - self.0[(0, 1)] * self.0[(1, 0)]).norm()
    }
}

/// 4x4 outer-product invariant matrix; all 2x2 minors vanish, and on the
/// zero torus level it is traceless and squares to zero.
#[derive(Debug, Clone, PartialEq)]
pub struct InvariantMatrix4(pub Matrix4<C64>);

impl InvariantMatrix4 {
    pub fn max_minor(&self) -> f64 {
        let m = &self.0;
        let mut worst: f64 = 0.0;
        for i in 0..4 {
            for k in i + 1..4 {
                for j in 0..4 {
                    for l in j + 1..4 {
                        let minor = m[(i, j)] * m[(k, l)] - m[(i, l)] * m[(k, j)];
                        worst = worst.max(minor.norm());
                    }
                }
            }
        }
        worst
    }

    pub fn trace_norm(&self) -> f64 {
        self.0.trace().norm()
    }

    pub fn square_norm(&self) -> f64 {
        (self.0 * self.0).norm()
    }
}

/// Eigen-data of a Hermitian 2x2 matrix: (lambda_max, lambda_min, unit
/// eigenvector for lambda_max). Closed form, exact for the sizes at hand.
fn hermitian2_eigen(h: &Matrix2<C64>) -> (f64, f64, Vector2<C64>) {
    let h11 = h[(0, 0)].re;
    let h22 = h[(1, 1)].re;
    let h12 = h[(0, 1)];
    let mean = 0.5 * (h11 + h22);
    let delta = 0.5 * (h11 - h22);
    let disc = (delta * delta + h12.norm_sqr()).sqrt();
    let l1 = mean + disc;
    let l2 = mean - disc;
    // (H - l1) annihilates the eigenvector; the larger of the two candidate
    // columns is the numerically safe choice.
    let cand1 = Vector2::new(h12, C64::new(l1 - h11, 0.0));
    let cand2 = Vector2::new(C64::new(l1 - h22, 0.0), h12.conj());
    let u = if cand1.norm() >= cand2.norm() {
        cand1
    } else {
        cand2
    };
    let n = u.norm();
    let u = if n > 0.0 {
        u / C64::new(n, 0.0)
    } else {
        Vector2::new(cone(), czero())
    };
    (l1, l2, u)
}

/// Singular-value gap of a 2x2 matrix with unit determinant.
pub fn singular_gap(b: &Matrix2<C64>) -> f64 {
    let h = b.adjoint() * b;
    let (l1, l2, _) = hermitian2_eigen(&h);
    l1.max(0.0).sqrt() - l2.max(0.0).sqrt()
}

/// Unit-time contraction collapse in closed form: split off the polar factor
/// and shift the Hermitian part down by the smallest eigenvalue of the
/// squared modulus. Every special unitary input lands on the zero matrix,
/// and every output is singular.
pub fn su2_flow_closed_form(b: &Sl2c) -> Matrix2<C64> {
    let m = b.matrix();
    let h = m.adjoint() * m;
    let (l1, l2, u1) = hermitian2_eigen(&h);
    let spread = l1 - l2;
    if spread <= 1e-14 {
        return Matrix2::zeros();
    }
    // B H^{-1/2} (H - l2)^{1/2} collapses the small eigendirection, leaving
    // sqrt((l1 - l2)/l1) times the projection onto the top one.
    let factor = C64::new((spread / l1).sqrt(), 0.0);
    let proj = u1 * u1.adjoint();
    m * proj * factor
}

/// Output of the numerical gradient-Hamiltonian flow.
#[derive(Debug, Clone)]
pub struct GhFlow {
    pub matrix: Matrix2<C64>,
    /// Largest deviation of the imaginary part of the determinant from its
    /// initial value along the trajectory.
    pub im_det_drift: f64,
    /// Determinant samples (time, value) along the trajectory.
    pub dets: Vec<(f64, C64)>,
}

fn gh_field(a: &Matrix2<C64>) -> Result<Matrix2<C64>> {
    // Gradient of Re(det) in the flat metric: the conjugated cofactor
    // matrix. Its squared norm equals the squared Frobenius norm of `a`.
    let grad = Matrix2::new(
        a[(1, 1)].conj(),
        -a[(1, 0)].conj(),
        -a[(0, 1)].conj(),
        a[(0, 0)].conj(),
    );
    let nsq = grad.norm_squared();
    if nsq < 1e-8 {
        return Err(Error::DegenerateFlow);
    }
    Ok(-grad / C64::new(nsq, 0.0))
}

/// Integrate the gradient-Hamiltonian field of the determinant fibration for
/// unit time with fixed-step fourth-order stepping. The real part of the
/// determinant decreases linearly from 1 to 0 and the imaginary part is
/// conserved; both are monitored. Inputs closer than [`GH_MIN_GAP`] to the
/// unitary locus are rejected, since the field degenerates there.
pub fn gh_flow_numeric(b: &Sl2c, steps: usize) -> Result<GhFlow> {
    if singular_gap(b.matrix()) < GH_MIN_GAP - 1e-9 {
        return Err(Error::DegenerateFlow);
    }
    let steps = steps.max(16);
    let h = 1.0 / steps as f64;
    let mut a = *b.matrix();
    let im0 = a.determinant().im;
    let mut drift: f64 = 0.0;
    let mut dets = vec![(0.0, a.determinant())];
    for s in 0..steps {
        let k1 = gh_field(&a)?;
        let k2 = gh_field(&(a + k1 * C64::new(0.5 * h, 0.0)))?;
        let k3 = gh_field(&(a + k2 * C64::new(0.5 * h, 0.0)))?;
        let k4 = gh_field(&(a + k3 * C64::new(h, 0.0)))?;
        a += (k1 + k2 * C64::new(2.0, 0.0) + k3 * C64::new(2.0, 0.0) + k4) * C64::new(h / 6.0, 0.0);
        let det = a.determinant();
        drift = drift.max((det.im - im0).abs());
        dets.push(((s + 1) as f64 * h, det));
    }
    Ok(GhFlow {
        matrix: a,
        im_det_drift: drift,
        dets,
    })
}

/// Implosion of a group element at a closed-chamber coordinate: scale the
/// first column by sqrt(2 lam), so the torus moment of the flat target is
/// exactly lam.
pub fn implode_su2(k: &Matrix2<C64>, lam: f64) -> Result<Vector2<C64>> {
    if lam < 0.0 {
        return Err(Error::NegativeChamberCoordinate(lam));
    }
    Ok(k.column(0) * C64::new((2.0 * lam).sqrt(), 0.0))
}

/// Diagonalize `v` as lam * diag(i, -i) by a special unitary `h` with
/// lam >= 0; returns (lam, h).
fn chamber_frame(v: &Matrix2<C64>) -> (f64, Matrix2<C64>) {
    // -i v is Hermitian traceless; its top eigenvector carries +lam.
    let a = v * C64::new(0.0, -1.0);
    let (lam, _, u) = hermitian2_eigen(&a);
    // h maps u to e1; the orthogonal completion keeps det h = 1.
    let h = Matrix2::new(u[0].conj(), u[1].conj(), -u[1], u[0]);
    (lam.max(0.0), h)
}

/// The quotient map from cotangent data to the 2x2 invariant matrix: implode
/// the frame against the chamber coordinate on both sides and take the outer
/// product. Independent of the diagonalizing frame, and rank at most one.
pub fn phi(x: &CotangentPoint) -> InvariantMatrix2 {
    let (lam, h) = chamber_frame(&x.v);
    let z = implode_su2(&(x.k * h.adjoint()), lam).expect("chamber coordinate is nonnegative");
    let w = (h.row(0) * C64::new((2.0 * lam).sqrt(), 0.0)).transpose();
    InvariantMatrix2(Matrix2::from_fn(|i, j| z[i] * w[j]))
}

/// The set-theoretic equivalence the quotient map separates: equal momenta,
/// and equal frames unless the momentum vanishes (the stabilizer of a
/// nonzero momentum is abelian, while at zero the whole group collapses).
pub fn equivalent(x: &CotangentPoint, y: &CotangentPoint, tol: f64) -> bool {
    if (x.v - y.v).norm() > tol {
        return false;
    }
    x.v.norm() <= tol || (x.k - y.k).norm() <= tol
}

/// Group a pair of implosion points by torus weight and form the 4x4 outer
/// product. `p1` is the right-implosion record, `p2` the left one; the
/// weight -1 vector collects alpha of the right copy and beta of the left.
pub fn complex_invariants(p1: &Sl2Pair, p2: &Sl2Pair, tol: f64) -> Result<InvariantMatrix4> {
    let v = [p1.alpha[0], p1.alpha[1], p2.beta[(0, 0)], p2.beta[(0, 1)]];
    let w = [p1.beta[(0, 0)], p1.beta[(0, 1)], p2.alpha[0], p2.alpha[1]];
    let level: C64 = (0..4).map(|i| v[i] * w[i]).sum();
    if level.norm() > tol {
        return Err(Error::TorusLevelNonzero(level.norm()));
    }
    Ok(InvariantMatrix4(Matrix4::from_fn(|i, j| v[i] * w[j])))
}

/// Image of the Borel-resolved quotient map.
#[derive(Debug, Clone)]
pub struct PsiImage {
    pub right: Sl2Pair,
    pub left: Sl2Pair,
    pub invariants: InvariantMatrix4,
}

fn inverse_sl2(m: &Matrix2<C64>) -> Matrix2<C64> {
    let det = m.determinant();
    Matrix2::new(m[(1, 1)], -m[(0, 1)], -m[(1, 0)], m[(0, 0)]) / det
}

/// Implosion coordinates of a group element paired with an upper-triangular
/// traceless `b`: the first column of `g` against the row (2 mu, nu) moved by
/// the inverse. Unipotent changes of frame fix both coordinates, and torus
/// changes rescale them oppositely.
fn borel_pair(g: &Matrix2<C64>, b: &Matrix2<C64>) -> Sl2Pair {
    let mu = b[(0, 0)];
    let nu = b[(0, 1)];
    let alpha = Vector2::new(g[(0, 0)], g[(1, 0)]);
    let ginv = inverse_sl2(g);
    let row = RowVector2::new(mu * 2.0, nu) * ginv;
    Sl2Pair::new(alpha, row)
}

/// Swap the roles of the two coordinates, matching the inverted torus weight
/// carried by the left implosion inside the contraction.
fn swap_pair(p: &Sl2Pair) -> Sl2Pair {
    Sl2Pair::new(
        Vector2::new(p.beta[(0, 0)], p.beta[(0, 1)]),
        RowVector2::new(p.alpha[0], p.alpha[1]),
    )
}

/// The Borel-resolved quotient map with an explicit frame `h` carrying the
/// chosen line to the first coordinate line. Exposed so the frame ambiguity
/// can be exercised directly; [`psi_sl2`] picks a unitary frame.
pub fn psi_sl2_with(
    g: &Matrix2<C64>,
    v: &Matrix2<C64>,
    h: &Matrix2<C64>,
    tol: f64,
) -> Result<PsiImage> {
    let dev = (g.determinant() - cone()).norm();
    if dev > tol.max(1e-9) {
        return Err(Error::NonUnitDeterminant(dev));
    }
    let hinv = inverse_sl2(h);
    let mut b = h * v * hinv;
    let scale = 1.0 + v.norm();
    if b[(1, 0)].norm() > 1e-8 * scale {
        return Err(Error::NotInBorel);
    }
    b[(1, 0)] = czero();
    // Symmetrize the trace away; the input was traceless up to rounding.
    let mu = (b[(0, 0)] - b[(1, 1)]) * C64::new(0.5, 0.0);
    b[(0, 0)] = mu;
    b[(1, 1)] = -mu;

    let right = borel_pair(&(g * hinv), &b);
    let left = swap_pair(&borel_pair(&hinv, &(-b)));
    let invariants = complex_invariants(&right, &left, 1e-7 * scale.powi(2).max(1.0))?;
    Ok(PsiImage {
        right,
        left,
        invariants,
    })
}

/// The Borel-resolved quotient map: requires the traceless `v` to preserve
/// the given line, builds the unitary frame sending the line to the first
/// coordinate axis, and emits the two implosion records with their invariant
/// matrix.
pub fn psi_sl2(
    g: &Matrix2<C64>,
    v: &Matrix2<C64>,
    line: &Vector2<C64>,
    tol: f64,
) -> Result<PsiImage> {
    let n = line.norm();
    if n < 1e-12 {
        return Err(Error::Precondition("line vector is zero".into()));
    }
    if v.trace().norm() > tol.max(1e-9) * (1.0 + v.norm()) {
        return Err(Error::Precondition("v has nonzero trace".into()));
    }
    let u = line / C64::new(n, 0.0);
    let vu = v * u;
    let cross = (vu[0] * u[1] - vu[1] * u[0]).norm();
    if cross > tol.max(1e-9) * (1.0 + v.norm()) {
        return Err(Error::NotInBorel);
    }
    // Unitary with determinant one sending u to e1.
    let h = Matrix2::new(u[0].conj(), u[1].conj(), -u[1], u[0]);
    psi_sl2_with(g, v, &h, tol)
}

/// The Weyl involution on invariant matrices: conjugate the transpose by the
/// block symplectic form.
pub fn swann_weyl(m: &InvariantMatrix4) -> InvariantMatrix4 {
    let j = Matrix2::new(czero(), cone(), -cone(), czero());
    let mut jt = Matrix4::zeros();
    jt.fixed_view_mut::<2, 2>(0, 0).copy_from(&j);
    jt.fixed_view_mut::<2, 2>(2, 2).copy_from(&j);
    InvariantMatrix4(jt * m.0.transpose() * jt)
}

/// Whether the circle moment beta . alpha is nonzero, the locus over which
/// the resolved quotient map is onto.
pub fn q_circ_membership(p: &Sl2Pair, tol: f64) -> bool {
    p.scalar_moment().norm() > tol
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::Sampler;
    use approx::assert_abs_diff_eq;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn diag(x: f64, y: f64) -> Sl2c {
        Sl2c::new(Matrix2::new(c(x), czero(), czero(), c(y)), 1e-9).unwrap()
    }

    #[test]
    fn sl2c_validation() {
        assert!(Sl2c::new(Matrix2::identity() * c(2.0), 1e-9).is_err());
        assert!(Sl2c::new(Matrix2::identity(), 1e-9).is_ok());
    }

    #[test]
    fn closed_form_diagonal_branches() {
        let out = su2_flow_closed_form(&diag(2.0, 0.5));
        assert_abs_diff_eq!(out[(0, 0)].re, 3.75f64.sqrt(), epsilon = 1e-12);
        assert!(out[(1, 1)].norm() < 1e-12);
        assert!(out[(0, 1)].norm() + out[(1, 0)].norm() < 1e-12);

        let out = su2_flow_closed_form(&diag(0.5, 2.0));
        assert_abs_diff_eq!(out[(1, 1)].re, 3.75f64.sqrt(), epsilon = 1e-12);
        assert!(out[(0, 0)].norm() < 1e-12);
    }

    #[test]
    fn closed_form_collapses_unitary_locus() {
        let mut s = Sampler::new(5);
        for _ in 0..32 {
            let k = Sl2c::new(s.su2(), 1e-9).unwrap();
            assert!(su2_flow_closed_form(&k).norm() < 1e-9);
        }
    }

    #[test]
    fn closed_form_outputs_singular() {
        let mut s = Sampler::new(6);
        for _ in 0..64 {
            let b = Sl2c::new(s.sl2c(), 1e-8).unwrap();
            let out = su2_flow_closed_form(&b);
            assert!(out.determinant().norm() < 1e-9, "det {}", out.determinant());
        }
    }

    #[test]
    fn closed_form_equivariance() {
        let mut s = Sampler::new(7);
        for _ in 0..50 {
            let b = s.sl2c();
            let k1 = s.su2();
            let k2 = s.su2();
            let lhs = su2_flow_closed_form(&Sl2c::new(k1 * b * k2, 1e-8).unwrap());
            let rhs = k1 * su2_flow_closed_form(&Sl2c::new(b, 1e-8).unwrap()) * k2;
            assert!(
                (lhs - rhs).norm() < 1e-8,
                "deviation {}",
                (lhs - rhs).norm()
            );
        }
    }

    #[test]
    fn gh_flow_matches_closed_form() {
        let b = diag(2.0, 0.5);
        let flow = gh_flow_numeric(&b, 512).unwrap();
        let closed = su2_flow_closed_form(&b);
        assert!((flow.matrix - closed).norm() < 1e-4);
        assert!(flow.im_det_drift < 1e-6);

        let x: f64 = 1.2;
        let b = diag(x, 1.0 / x);
        let flow = gh_flow_numeric(&b, 512).unwrap();
        let expect = (x.powi(2) - x.powi(-2)).sqrt();
        assert_abs_diff_eq!(flow.matrix[(0, 0)].re, expect, epsilon = 1e-4);
        assert!(flow.matrix[(1, 1)].norm() < 1e-4);
    }

    #[test]
    fn gh_flow_det_decreases_linearly() {
        let b = diag(2.0, 0.5);
        let flow = gh_flow_numeric(&b, 256).unwrap();
        for (t, det) in &flow.dets {
            assert_abs_diff_eq!(det.re, 1.0 - t, epsilon = 1e-6);
        }
    }

    #[test]
    fn gh_flow_rejects_degenerate_locus() {
        let b = Sl2c::new(Matrix2::identity(), 1e-9).unwrap();
        assert!(matches!(
            gh_flow_numeric(&b, 256),
            Err(Error::DegenerateFlow)
        ));
    }

    #[test]
    fn implode_examples() {
        let z = implode_su2(&Matrix2::identity(), 0.0).unwrap();
        assert_eq!(z.norm(), 0.0);

        let z = implode_su2(&Matrix2::identity(), 0.5).unwrap();
        assert_abs_diff_eq!(z[0].re, 1.0, epsilon = 1e-14);
        assert!(z[1].norm() < 1e-14);

        let theta: f64 = 0.7;
        let k = Matrix2::new(
            C64::from_polar(1.0, theta),
            czero(),
            czero(),
            C64::from_polar(1.0, -theta),
        );
        let z = implode_su2(&k, 2.0).unwrap();
        assert_abs_diff_eq!(z[0].norm(), 2.0, epsilon = 1e-13);
        assert_abs_diff_eq!(z[0].arg(), theta, epsilon = 1e-13);

        assert!(matches!(
            implode_su2(&Matrix2::identity(), -0.1),
            Err(Error::NegativeChamberCoordinate(_))
        ));
    }

    fn v_diag(lam: f64) -> Matrix2<C64> {
        Matrix2::new(C64::new(0.0, lam), czero(), czero(), C64::new(0.0, -lam))
    }

    #[test]
    fn phi_examples() {
        let x = CotangentPoint::new(Matrix2::identity(), v_diag(0.5), 1e-9).unwrap();
        let m = phi(&x).0;
        assert_abs_diff_eq!(m[(0, 0)].re, 1.0, epsilon = 1e-12);
        assert!(m[(0, 1)].norm() + m[(1, 0)].norm() + m[(1, 1)].norm() < 1e-12);

        let mut s = Sampler::new(8);
        let x = CotangentPoint::new(s.su2(), Matrix2::zeros(), 1e-9).unwrap();
        assert!(phi(&x).0.norm() < 1e-14);

        let j = Matrix2::new(czero(), cone(), -cone(), czero());
        let x = CotangentPoint::new(j, v_diag(0.5), 1e-9).unwrap();
        let m = phi(&x).0;
        assert_abs_diff_eq!(m[(1, 0)].re, -1.0, epsilon = 1e-12);
        assert!(m[(0, 0)].norm() + m[(0, 1)].norm() + m[(1, 1)].norm() < 1e-12);
    }

    #[test]
    fn phi_outputs_satisfy_quadric() {
        let mut s = Sampler::new(9);
        for _ in 0..100 {
            let x = CotangentPoint::new(s.su2(), s.traceless_anti_hermitian2(1.0), 1e-9).unwrap();
            assert!(phi(&x).quadric_residual() < 1e-12);
        }
    }

    #[test]
    fn phi_separates_exactly_the_equivalence() {
        let mut s = Sampler::new(10);
        let close = |a: &InvariantMatrix2, b: &InvariantMatrix2| (a.0 - b.0).norm() < 1e-8;
        for _ in 0..200 {
            let k = s.su2();
            let v = s.traceless_anti_hermitian2(1.0);
            let x = CotangentPoint::new(k, v, 1e-9).unwrap();

            // Same point: equal on both sides.
            let y = x.clone();
            assert!(equivalent(&x, &y, 1e-9) && close(&phi(&x), &phi(&y)));

            // Zero momentum identifies all frames.
            let x0 = CotangentPoint::new(k, Matrix2::zeros(), 1e-9).unwrap();
            let y0 = CotangentPoint::new(s.su2(), Matrix2::zeros(), 1e-9).unwrap();
            assert!(equivalent(&x0, &y0, 1e-9) && close(&phi(&x0), &phi(&y0)));

            // A genuine torus translate of the frame separates.
            let theta = s.uniform(0.3, 2.8);
            let t = Matrix2::new(
                C64::from_polar(1.0, theta),
                czero(),
                czero(),
                C64::from_polar(1.0, -theta),
            );
            let yt = CotangentPoint::new(k * t, v, 1e-9).unwrap();
            assert!(!equivalent(&x, &yt, 1e-9));
            assert!(!close(&phi(&x), &phi(&yt)));

            // Independent random points separate.
            let z = CotangentPoint::new(s.su2(), s.traceless_anti_hermitian2(1.0), 1e-9).unwrap();
            assert_eq!(equivalent(&x, &z, 1e-9), close(&phi(&x), &phi(&z)));
        }
    }

    #[test]
    fn complex_invariants_examples() {
        let p1 = Sl2Pair::new(
            Vector2::new(c(1.0), czero()),
            RowVector2::new(czero(), c(1.0)),
        );
        let p2 = Sl2Pair::new(
            Vector2::new(czero(), c(1.0)),
            RowVector2::new(c(1.0), czero()),
        );
        let m = complex_invariants(&p1, &p2, 1e-9).unwrap();
        assert!(m.trace_norm() < 1e-14);
        assert!(m.square_norm() < 1e-14);
        assert!(m.max_minor() < 1e-14);

        // Beta-only pattern embeds the rank-one quadric in the corner block.
        let p1 = Sl2Pair::new(Vector2::zeros(), RowVector2::new(c(2.0), c(3.0)));
        let p2 = Sl2Pair::new(Vector2::zeros(), RowVector2::new(c(5.0), c(-1.0)));
        let m = complex_invariants(&p1, &p2, 1e-9).unwrap().0;
        for i in 0..4 {
            for j in 0..4 {
                if i >= 2 && j < 2 {
                    continue;
                }
                assert!(m[(i, j)].norm() < 1e-14, "entry ({i},{j})");
            }
        }
        let block = Matrix2::new(m[(2, 0)], m[(2, 1)], m[(3, 0)], m[(3, 1)]);
        assert!(block.determinant().norm() < 1e-12);
        assert!(block.norm() > 1.0);

        let p1 = Sl2Pair::new(
            Vector2::new(c(1.0), czero()),
            RowVector2::new(c(1.0), czero()),
        );
        let p2 = Sl2Pair::zero();
        assert!(matches!(
            complex_invariants(&p1, &p2, 1e-9),
            Err(Error::TorusLevelNonzero(_))
        ));
    }

    #[test]
    fn psi_examples() {
        // Regular semisimple at the standard line with the identity frame.
        let v = Matrix2::new(c(1.0), czero(), czero(), c(-1.0));
        let line = Vector2::new(cone(), czero());
        let img = psi_sl2(&Matrix2::identity(), &v, &line, 1e-9).unwrap();
        assert!(q_circ_membership(&img.right, 1e-9));
        assert!(q_circ_membership(&img.left, 1e-9));
        assert!(img.invariants.trace_norm() < 1e-12);
        assert!(img.invariants.square_norm() < 1e-12);

        // Nilpotent case is accepted as-is.
        let v = Matrix2::new(czero(), cone(), czero(), czero());
        let img = psi_sl2(&Matrix2::identity(), &v, &line, 1e-9).unwrap();
        assert!(!q_circ_membership(&img.right, 1e-9));

        // A vector moving the line is rejected.
        let v = Matrix2::new(czero(), czero(), cone(), czero());
        assert!(matches!(
            psi_sl2(&Matrix2::identity(), &v, &line, 1e-9),
            Err(Error::NotInBorel)
        ));
    }

    #[test]
    fn psi_frame_ambiguity_unipotent_exact() {
        let mut s = Sampler::new(11);
        for _ in 0..50 {
            let g = s.sl2c();
            let line = Vector2::new(s.complex_normal(), s.complex_normal());
            // Build v preserving the line: conjugate an upper-triangular seed.
            let n = line.norm();
            let u = line / C64::new(n, 0.0);
            let frame = Matrix2::new(u[0].conj(), u[1].conj(), -u[1], u[0]);
            let mu = s.complex_normal();
            let nu = s.complex_normal();
            let seed = Matrix2::new(mu, nu, czero(), -mu);
            let v = inverse_sl2(&frame) * seed * frame;

            let base = psi_sl2(&g, &v, &Vector2::new(u[0], u[1]), 1e-8).unwrap();
            for _ in 0..20 {
                let b = s.unipotent_sl2();
                let h2 = b * frame;
                let img = psi_sl2_with(&g, &v, &h2, 1e-8).unwrap();
                let dev = (img.invariants.0 - base.invariants.0).norm();
                assert!(
                    dev < 1e-9,
                    "unipotent reambiguation moved invariants by {dev}"
                );
            }
            for _ in 0..20 {
                let b = s.borel_sl2();
                let h2 = b * frame;
                let img = psi_sl2_with(&g, &v, &h2, 1e-8).unwrap();
                let dev = (img.invariants.0 - base.invariants.0).norm();
                assert!(dev < 1e-9, "borel reambiguation moved invariants by {dev}");
            }
        }
    }

    #[test]
    fn swann_weyl_involution() {
        let mut s = Sampler::new(12);
        for _ in 0..32 {
            let p1 = s.sl2_pair();
            // Balance the level so the invariants exist.
            let mut p2 = s.sl2_pair();
            let target = -p1.scalar_moment();
            let current = p2.scalar_moment();
            let bnorm = p2.beta.norm_squared();
            let shift = (target - current) / C64::new(bnorm, 0.0);
            p2.alpha[0] += p2.beta[(0, 0)].conj() * shift;
            p2.alpha[1] += p2.beta[(0, 1)].conj() * shift;
            let m = complex_invariants(&p1, &p2, 1e-8).unwrap();

            let twice = swann_weyl(&swann_weyl(&m));
            assert!((twice.0 - m.0).norm() < 1e-12);
            let once = swann_weyl(&m);
            assert!((once.0.trace() - m.0.trace()).norm() < 1e-12);
            // Rank is preserved: both have a single dominant singular value.
            let sv1 = m.0.singular_values();
            let sv2 = once.0.singular_values();
            assert!(sv1[1] < 1e-10 && sv2[1] < 1e-10);
            assert_abs_diff_eq!(sv1[0], sv2[0], epsilon = 1e-9);
        }
    }

    #[test]
    fn q_circ_examples() {
        let p = Sl2Pair::new(
            Vector2::new(c(1.0), czero()),
            RowVector2::new(c(1.0), czero()),
        );
        assert!(q_circ_membership(&p, 1e-9));
        let p = Sl2Pair::new(
            Vector2::new(c(1.0), czero()),
            RowVector2::new(czero(), c(1.0)),
        );
        assert!(!q_circ_membership(&p, 1e-9));
        assert!(!q_circ_membership(&Sl2Pair::zero(), 1e-9));
    }
}
