//! Numerical points on affine hypertoric varieties: kernel lattice of the
//! torus map, moment residuals for the reduced torus, the residual-torus
//! moment map, the signed-swap Weyl action on coordinate pairs, extended-core
//! projections, and the record of torus moments together with one core
//! component per Weyl element.
//!
//! Convention for the Weyl action: where a sign flips, a coordinate pair
//! `(a, b)` becomes `(b, -a)` rather than the plain swap. The plain swap
//! would leave the complex moment map invariant on the rank-one arrangement,
//! while the signed swap makes both moment maps genuinely equivariant and
//! matches the explicit rank-one involution; its square acts as the torus
//! element -1, so the realized symmetry group is a central extension of the
//! semidirect product.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::arrangement::{Arrangement, BroadSet};
use crate::error::{Error, Result};
use crate::intlin;
use crate::quiver::Sl2Pair;
use crate::rootsys::{RootSystem, WeylElement};

type C64 = Complex64;

/// Consistency threshold for the least-squares extraction of torus moments.
pub const LS_TOL: f64 = 1e-9;

/// Coordinate tolerance for chart membership.
pub const CHART_TOL: f64 = 1e-12;

/// A point of the ambient space, as paired complex coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct HypertoricPoint {
    pub a: Vec<C64>,
    pub b: Vec<C64>,
}

impl HypertoricPoint {
    pub fn new(a: Vec<C64>, b: Vec<C64>) -> Result<HypertoricPoint> {
        if a.len() != b.len() {
            return Err(Error::DimensionMismatch {
                expected: a.len(),
                got: b.len(),
            });
        }
        Ok(HypertoricPoint { a, b })
    }

    pub fn zeros(n: usize) -> HypertoricPoint {
        HypertoricPoint {
            a: vec![C64::new(0.0, 0.0); n],
            b: vec![C64::new(0.0, 0.0); n],
        }
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    fn check_len(&self, n: usize) -> Result<()> {
        if self.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: self.len(),
            });
        }
        Ok(())
    }
}

/// Integer basis of the kernel of the map from the coordinate torus onto the
/// ambient torus determined by the arrangement normals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelLattice {
    pub basis: Vec<Vec<i64>>,
}

/// Torus moments of a point together with its core component for every Weyl
/// element, each lying in the chart pattern of the dominant component.
#[derive(Debug, Clone)]
pub struct EmbeddingRecord {
    pub mu_complex: Vec<C64>,
    pub mu_real: Vec<f64>,
    pub components: Vec<(WeylElement, HypertoricPoint)>,
}

/// Kernel of e_i -> n_i as an integer lattice. Errors when the normals do
/// not span, since then the quotient torus is not a torus of the right rank.
pub fn kernel_lattice(arr: &Arrangement) -> Result<KernelLattice> {
    let rows: Vec<Vec<i64>> = (0..arr.rank())
        .map(|k| arr.normals().iter().map(|n| n[k]).collect())
        .collect();
    if intlin::rank(&rows, arr.num_hyperplanes()) != arr.rank() {
        return Err(Error::TorusMapNotSurjective);
    }
    Ok(KernelLattice {
        basis: intlin::integer_kernel(&rows, arr.num_hyperplanes()),
    })
}

/// Complex and real moment residuals for the kernel torus at level zero.
pub fn l_moment_residuals(arr: &Arrangement, p: &HypertoricPoint) -> Result<(Vec<C64>, Vec<f64>)> {
    p.check_len(arr.num_hyperplanes())?;
    let lattice = kernel_lattice(arr)?;
    let complex = lattice
        .basis
        .iter()
        .map(|l| {
            l.iter()
                .enumerate()
                .map(|(i, &li)| p.a[i] * p.b[i] * li as f64)
                .sum()
        })
        .collect();
    let real = lattice
        .basis
        .iter()
        .map(|l| {
            l.iter()
                .enumerate()
                .map(|(i, &li)| 0.5 * li as f64 * (p.a[i].norm_sqr() - p.b[i].norm_sqr()))
                .sum()
        })
        .collect();
    Ok((complex, real))
}

fn normal_matrix(arr: &Arrangement) -> DMatrix<f64> {
    DMatrix::from_fn(arr.num_hyperplanes(), arr.rank(), |i, k| {
        arr.normals()[i][k] as f64
    })
}

fn least_squares(m: &DMatrix<f64>, rhs: &DVector<f64>) -> (DVector<f64>, f64) {
    let svd = m.clone().svd(true, true);
    let x = svd
        .solve(rhs, 1e-13)
        .expect("svd of a real matrix always yields a least-squares solution");
    let residual = (m * &x - rhs).amax();
    (x, residual)
}

/// Moment of the residual torus: the unique dual vector pairing to a_i b_i
/// (complex side) and half the norm difference (real side) against every
/// normal, both by least squares.
///
/// The gate is the complex system: it is consistent exactly on the zero
/// complex level of the kernel torus, and inconsistency beyond `LS_TOL` is an
/// error. The real system's consistency residual is returned alongside the
/// solution instead, since several chart computations only constrain the
/// holomorphic side.
pub fn t_moment(arr: &Arrangement, p: &HypertoricPoint) -> Result<(Vec<C64>, Vec<f64>)> {
    p.check_len(arr.num_hyperplanes())?;
    let m = normal_matrix(arr);
    let n = arr.num_hyperplanes();
    let re = DVector::from_fn(n, |i, _| (p.a[i] * p.b[i]).re);
    let im = DVector::from_fn(n, |i, _| (p.a[i] * p.b[i]).im);
    let real = DVector::from_fn(n, |i, _| 0.5 * (p.a[i].norm_sqr() - p.b[i].norm_sqr()));
    let (xre, r1) = least_squares(&m, &re);
    let (xim, r2) = least_squares(&m, &im);
    let (xr, _) = least_squares(&m, &real);
    let worst = r1.max(r2);
    if worst > LS_TOL {
        return Err(Error::NotOnZeroLevel(worst));
    }
    let xi_complex = (0..arr.rank()).map(|k| C64::new(xre[k], xim[k])).collect();
    let xi_real = xr.iter().copied().collect();
    Ok((xi_complex, xi_real))
}

fn expect_weyl_arrangement(rs: &RootSystem, arr: &Arrangement) -> Result<()> {
    if *arr != Arrangement::weyl(rs) {
        return Err(Error::MismatchedArrangement);
    }
    Ok(())
}

/// Weyl action on coordinate pairs: permute by sigma, signed swap where the
/// sign is negative.
pub fn weyl_act(
    rs: &RootSystem,
    arr: &Arrangement,
    w: &WeylElement,
    p: &HypertoricPoint,
) -> Result<HypertoricPoint> {
    expect_weyl_arrangement(rs, arr)?;
    p.check_len(arr.num_hyperplanes())?;
    let n = p.len();
    let mut q = HypertoricPoint::zeros(n);
    for i in 0..n {
        let target = w.sigma[i];
        if w.signs[i] > 0 {
            q.a[target] = p.a[i];
            q.b[target] = p.b[i];
        } else {
            q.a[target] = p.b[i];
            q.b[target] = -p.a[i];
        }
    }
    Ok(q)
}

/// Project onto the extended-core component of a broad set: zero the b side
/// on the set and the a side off it. Defined on the chart where at most one
/// of the surviving coordinates vanishes; idempotent, and the identity on
/// points already in the component.
pub fn core_projection(
    arr: &Arrangement,
    v: &BroadSet,
    p: &HypertoricPoint,
    tol: f64,
) -> Result<HypertoricPoint> {
    p.check_len(arr.num_hyperplanes())?;
    let n = p.len();
    let zeros = (0..n)
        .filter(|&i| {
            if v.contains(i) {
                p.a[i].norm() <= tol
            } else {
                p.b[i].norm() <= tol
            }
        })
        .count();
    if zeros > 1 {
        return Err(Error::OutsideCotangentChart);
    }
    let mut q = p.clone();
    for i in 0..n {
        if v.contains(i) {
            q.b[i] = C64::new(0.0, 0.0);
        } else {
            q.a[i] = C64::new(0.0, 0.0);
        }
    }
    Ok(q)
}

/// Torus moments plus, for each Weyl element, the dominant-core projection of
/// the translated point. Fails when some translate leaves the chart, naming
/// the offending element.
pub fn universal_components(
    rs: &RootSystem,
    arr: &Arrangement,
    p: &HypertoricPoint,
) -> Result<EmbeddingRecord> {
    expect_weyl_arrangement(rs, arr)?;
    let (mu_complex, mu_real) = t_moment(arr, p)?;
    let omega = BroadSet::full(arr.num_hyperplanes());
    let mut components = Vec::new();
    for w in rs.weyl_elements() {
        let moved = weyl_act(rs, arr, &w, p)?;
        let projected = core_projection(arr, &omega, &moved, CHART_TOL).map_err(|e| match e {
            Error::OutsideCotangentChart => Error::ChartViolationAt {
                word: w.word.clone(),
            },
            other => other,
        })?;
        components.push((w, projected));
    }
    Ok(EmbeddingRecord {
        mu_complex,
        mu_real,
        components,
    })
}

/// Embed a rank-one point into the n = 2 flag quiver. This embedding is not
/// equivariant for the two Weyl involutions, which is checked in the tests.
pub fn sl2_embed_quiver(p: &HypertoricPoint) -> Result<Sl2Pair> {
    if p.len() != 1 {
        return Err(Error::MismatchedArrangement);
    }
    Ok(Sl2Pair::new(
        nalgebra::Vector2::new(p.a[0], C64::new(0.0, 0.0)),
        nalgebra::RowVector2::new(p.b[0], C64::new(0.0, 0.0)),
    ))
}
