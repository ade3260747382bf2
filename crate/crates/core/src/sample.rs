//! Deterministic seeded sampling for the property suites and tests.
//!
//! Every harness owns its own generator, so concurrent runs never share
//! state and identical seeds reproduce identical samples byte for byte.

use nalgebra::{DMatrix, Matrix2, RowVector2, Vector2};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arrangement::{Arrangement, BroadSet};
use crate::error::{Error, Result};
use crate::hypertoric::{kernel_lattice, HypertoricPoint};
use crate::quiver::Sl2Pair;

type C64 = Complex64;

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Sampler {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.rng.random::<f64>()
    }

    /// Standard normal via Box-Muller.
    pub fn normal(&mut self) -> f64 {
        let u: f64 = 1.0 - self.rng.random::<f64>();
        let v: f64 = self.rng.random::<f64>();
        (-2.0 * u.ln()).sqrt() * (std::f64::consts::TAU * v).cos()
    }

    pub fn complex_normal(&mut self) -> C64 {
        C64::new(self.normal(), self.normal())
    }

    /// Complex number with modulus in [0.5, 2] and random phase; useful as a
    /// generic torus coordinate.
    pub fn unit_scale_complex(&mut self) -> C64 {
        let r = self.uniform(0.5, 2.0);
        let phi = self.uniform(0.0, std::f64::consts::TAU);
        C64::from_polar(r, phi)
    }

    /// Complex normal re-drawn until its modulus exceeds `floor`.
    fn complex_bounded(&mut self, floor: f64) -> C64 {
        loop {
            let z = self.complex_normal();
            if z.norm() >= floor && z.norm() <= 20.0 {
                return z;
            }
        }
    }

    /// Haar-ish element of the special unitary 2x2 group.
    pub fn su2(&mut self) -> Matrix2<C64> {
        loop {
            let a = self.complex_normal();
            let b = self.complex_normal();
            let n = (a.norm_sqr() + b.norm_sqr()).sqrt();
            if n > 1e-3 {
                let (a, b) = (a / n, b / n);
                return Matrix2::new(a, -b.conj(), b, a.conj());
            }
        }
    }

    /// Traceless anti-Hermitian 2x2 matrix with entries at the given scale.
    pub fn traceless_anti_hermitian2(&mut self, scale: f64) -> Matrix2<C64> {
        let x = scale * self.normal();
        let y = scale * self.normal();
        let z = scale * self.normal();
        // i * (x sigma_1 + y sigma_2 + z sigma_3)
        Matrix2::new(
            C64::new(0.0, z),
            C64::new(y, x),
            C64::new(-y, x),
            C64::new(0.0, -z),
        )
    }

    /// Random element of the special linear 2x2 group.
    pub fn sl2c(&mut self) -> Matrix2<C64> {
        loop {
            let m = Matrix2::new(
                self.complex_normal(),
                self.complex_normal(),
                self.complex_normal(),
                self.complex_normal(),
            );
            let d = m.determinant();
            if d.norm() > 1e-3 {
                return m / d.sqrt();
            }
        }
    }

    /// Special linear 2x2 matrix whose singular values differ by at least
    /// `min_gap`.
    pub fn sl2c_with_gap(&mut self, min_gap: f64) -> Matrix2<C64> {
        loop {
            let b = self.sl2c();
            let h = b.adjoint() * b;
            let mean = 0.5 * h.trace().re;
            let disc = (mean * mean - 1.0).max(0.0).sqrt();
            let gap = (mean + disc).sqrt() - (mean - disc).max(0.0).sqrt();
            if gap >= min_gap {
                return b;
            }
        }
    }

    /// Upper-triangular element of the special linear 2x2 group with a
    /// moderate torus part.
    pub fn borel_sl2(&mut self) -> Matrix2<C64> {
        let tau = C64::from_polar(
            self.uniform(0.5, 2.0),
            self.uniform(0.0, std::f64::consts::TAU),
        );
        let c = self.complex_normal() * 0.5;
        Matrix2::new(tau, c, C64::new(0.0, 0.0), C64::new(1.0, 0.0) / tau)
    }

    /// Unipotent upper-triangular 2x2 matrix.
    pub fn unipotent_sl2(&mut self) -> Matrix2<C64> {
        Matrix2::new(
            C64::new(1.0, 0.0),
            self.complex_normal() * 0.5,
            C64::new(0.0, 0.0),
            C64::new(1.0, 0.0),
        )
    }

    pub fn sl2_pair(&mut self) -> Sl2Pair {
        Sl2Pair::new(
            Vector2::new(self.complex_normal(), self.complex_normal()),
            RowVector2::new(self.complex_normal(), self.complex_normal()),
        )
    }

    /// Pair of records whose circle moments cancel, so their joint torus
    /// level is zero.
    pub fn zero_level_pair(&mut self) -> (Sl2Pair, Sl2Pair) {
        loop {
            let p1 = self.sl2_pair();
            let mut p2 = self.sl2_pair();
            let bnorm = p2.beta.norm_squared();
            if bnorm < 0.1 {
                continue;
            }
            let shift = (-p1.scalar_moment() - p2.scalar_moment()) / C64::new(bnorm, 0.0);
            p2.alpha[0] += p2.beta[(0, 0)].conj() * shift;
            p2.alpha[1] += p2.beta[(0, 1)].conj() * shift;
            return (p1, p2);
        }
    }

    pub fn ginibre(&mut self, rows: usize, cols: usize) -> DMatrix<C64> {
        DMatrix::from_fn(rows, cols, |_, _| self.complex_normal())
    }

    /// Random unitary via QR of a Ginibre matrix.
    pub fn unitary(&mut self, n: usize) -> DMatrix<C64> {
        self.ginibre(n, n).qr().q()
    }

    /// Well-conditioned determinant-one matrix near the identity.
    pub fn special_linear(&mut self, n: usize) -> DMatrix<C64> {
        loop {
            let m = DMatrix::identity(n, n) + self.ginibre(n, n) * C64::new(0.3, 0.0);
            let d = m.determinant();
            if d.norm() > 0.3 {
                return m * d.powf(-1.0 / n as f64);
            }
        }
    }

    /// Gauge tuple g_1..g_{n-1} of well-conditioned determinant-one matrices
    /// for a flag of length n.
    pub fn gauge_tuple(&mut self, n: usize) -> Vec<DMatrix<C64>> {
        (1..n).map(|k| self.special_linear(k)).collect()
    }

    /// Point on the zero level of both kernel-torus moment maps, with every
    /// coordinate bounded away from zero. Supports kernel rank at most one,
    /// which covers the rank-one and rank-two Weyl arrangements in type A.
    pub fn hyper_zero_level(&mut self, arr: &Arrangement) -> Result<HypertoricPoint> {
        let lattice = kernel_lattice(arr)?;
        let n = arr.num_hyperplanes();
        match lattice.basis.len() {
            0 => {
                let a = (0..n).map(|_| self.complex_bounded(0.2)).collect();
                let b = (0..n).map(|_| self.complex_bounded(0.2)).collect();
                HypertoricPoint::new(a, b)
            }
            1 => {
                let l = &lattice.basis[0];
                let t = l
                    .iter()
                    .rposition(|&x| x != 0)
                    .expect("kernel generator is nonzero");
                loop {
                    let mut a: Vec<C64> = (0..n).map(|_| self.complex_bounded(0.3)).collect();
                    let mut b: Vec<C64> = (0..n).map(|_| self.complex_bounded(0.3)).collect();
                    let partial: C64 = (0..n)
                        .filter(|&i| i != t)
                        .map(|i| a[i] * b[i] * l[i] as f64)
                        .sum();
                    b[t] = -partial / (a[t] * l[t] as f64);
                    if b[t].norm() < 0.05 || b[t].norm() > 20.0 {
                        continue;
                    }
                    let offset: f64 = (0..n)
                        .filter(|&i| i != t)
                        .map(|i| 0.5 * l[i] as f64 * (a[i].norm_sqr() - b[i].norm_sqr()))
                        .sum();
                    let lt = l[t] as f64;
                    let asq = a[t].norm_sqr();
                    let bsq = b[t].norm_sqr();
                    let disc = (offset * offset + lt * lt * asq * bsq).sqrt();
                    let u = if lt > 0.0 {
                        (-offset + disc) / (lt * asq)
                    } else {
                        (-offset - disc) / (lt * asq)
                    };
                    if !(u.is_finite() && u > 1e-6) {
                        continue;
                    }
                    let s = u.sqrt();
                    a[t] *= s;
                    b[t] /= s;
                    let p = HypertoricPoint::new(a, b)?;
                    debug_assert!({
                        let (cx, re) = crate::hypertoric::l_moment_residuals(arr, &p)?;
                        cx.iter().all(|z| z.norm() < 1e-9) && re.iter().all(|&x| x.abs() < 1e-9)
                    });
                    return Ok(p);
                }
            }
            _ => Err(Error::Precondition(
                "zero-level sampler supports kernel rank at most one".into(),
            )),
        }
    }

    /// Point of the extended-core component of a broad set, on the zero level
    /// of both kernel moment maps, with the surviving coordinates bounded
    /// away from zero.
    pub fn extended_core_point(
        &mut self,
        arr: &Arrangement,
        v: &BroadSet,
    ) -> Result<HypertoricPoint> {
        let lattice = kernel_lattice(arr)?;
        if lattice.basis.len() > 1 {
            return Err(Error::Precondition(
                "core sampler supports kernel rank at most one".into(),
            ));
        }
        let n = arr.num_hyperplanes();
        for _ in 0..256 {
            let mut p = HypertoricPoint::zeros(n);
            for i in 0..n {
                if v.contains(i) {
                    p.a[i] = self.complex_bounded(0.3);
                } else {
                    p.b[i] = self.complex_bounded(0.3);
                }
            }
            let Some(l) = lattice.basis.first() else {
                return Ok(p);
            };
            // One real constraint on the squared magnitudes; fix it by
            // adjusting a single coordinate with a usable coefficient.
            let coeff = |i: usize| -> f64 {
                if v.contains(i) {
                    0.5 * l[i] as f64
                } else {
                    -0.5 * l[i] as f64
                }
            };
            let magnitude = |p: &HypertoricPoint, i: usize| -> f64 {
                if v.contains(i) {
                    p.a[i].norm_sqr()
                } else {
                    p.b[i].norm_sqr()
                }
            };
            let level: f64 = (0..n).map(|i| coeff(i) * magnitude(&p, i)).sum();
            if level.abs() < 1e-12 {
                return Ok(p);
            }
            let Some(pivot) = (0..n).find(|&i| {
                let c = coeff(i);
                c != 0.0 && magnitude(&p, i) - level / c > 0.04
            }) else {
                continue;
            };
            let m_old = magnitude(&p, pivot);
            let m_new = m_old - level / coeff(pivot);
            let s = (m_new / m_old).sqrt();
            if v.contains(pivot) {
                p.a[pivot] *= s;
            } else {
                p.b[pivot] *= s;
            }
            debug_assert!({
                let (cx, re) = crate::hypertoric::l_moment_residuals(arr, &p)?;
                cx.iter().all(|z| z.norm() < 1e-9) && re.iter().all(|&x| x.abs() < 1e-9)
            });
            return Ok(p);
        }
        Err(Error::Precondition(
            "could not balance the core-point level".into(),
        ))
    }
}
