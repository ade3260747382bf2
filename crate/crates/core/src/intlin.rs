//! Exact integer and rational linear algebra for the combinatorial modules.
//!
//! Everything here works over `i64` vectors with `Ratio<i128>` elimination,
//! so flat closures, kernel lattices and cone feasibility are decided without
//! floating error. Sizes are tiny (rank <= 8, at most 24 normals), so no
//! attention is paid to asymptotics.

use num_integer::Integer;
use num_rational::Ratio;

use crate::error::{Error, Result};

type Q = Ratio<i128>;

fn to_q(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&x| Q::from_integer(x as i128)).collect()
}

/// gcd of absolute values; 0 for the zero vector.
pub fn gcd_vec(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| g.gcd(&x.abs()))
}

/// Divide by the gcd of the entries. Returns `None` for the zero vector.
pub fn primitivize(v: &[i64]) -> Option<Vec<i64>> {
    let g = gcd_vec(v);
    if g == 0 {
        return None;
    }
    Some(v.iter().map(|&x| x / g).collect())
}

/// Sign-normalize so the first nonzero entry is positive.
pub fn sign_normalize(mut v: Vec<i64>) -> Vec<i64> {
    if let Some(&lead) = v.iter().find(|&&x| x != 0) {
        if lead < 0 {
            for x in &mut v {
                *x = -*x;
            }
        }
    }
    v
}

/// Reduced row echelon form over Q. Returns (rref, pivot columns).
#[allow(clippy::needless_range_loop)] // elimination reads one row, writes another
fn rref(rows: &[Vec<i64>], cols: usize) -> (Vec<Vec<Q>>, Vec<usize>) {
    let mut m: Vec<Vec<Q>> = rows.iter().map(|r| to_q(r)).collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..m.len()).find(|&r| m[r][col] != Q::from_integer(0)) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for x in &mut m[row] {
            *x *= inv;
        }
        for r in 0..m.len() {
            if r != row && m[r][col] != Q::from_integer(0) {
                let f = m[r][col];
                for c in 0..cols {
                    let sub = f * m[row][c];
                    m[r][c] -= sub;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    (m, pivots)
}

/// Rank over Q of the matrix with the given rows.
pub fn rank(rows: &[Vec<i64>], cols: usize) -> usize {
    rref(rows, cols).1.len()
}

/// Whether `v` lies in the rational row span of `rows`.
pub fn in_row_span(rows: &[Vec<i64>], v: &[i64], cols: usize) -> bool {
    let base = rank(rows, cols);
    let mut extended: Vec<Vec<i64>> = rows.to_vec();
    extended.push(v.to_vec());
    rank(&extended, cols) == base
}

/// Integer basis of the kernel { x : A x = 0 } of the matrix with the given
/// rows. Each basis vector is primitive with positive leading entry; the
/// ordering follows the free columns of the RREF.
pub fn integer_kernel(rows: &[Vec<i64>], cols: usize) -> Vec<Vec<i64>> {
    let (m, pivots) = rref(rows, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v = vec![Q::from_integer(0); cols];
        v[f] = Q::from_integer(1);
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -m[r][f];
        }
        let lcm = v.iter().fold(1i128, |acc, q| acc.lcm(q.denom()));
        let ints: Vec<i64> = v
            .iter()
            .map(|q| i64::try_from(q.numer() * (lcm / q.denom())).expect("kernel entry overflow"))
            .collect();
        let prim = primitivize(&ints).expect("kernel vector is nonzero");
        basis.push(sign_normalize(prim));
    }
    basis
}

/// Coordinates of `v` in the basis given by `rows` (assumed independent).
/// Returns `None` when `v` is outside the span.
#[allow(clippy::needless_range_loop)] // elimination reads one row, writes another
pub fn coords_in_basis(rows: &[Vec<i64>], v: &[i64], cols: usize) -> Option<Vec<Q>> {
    // Solve c^T rows = v by elimination on the transposed system.
    let k = rows.len();
    let mut aug: Vec<Vec<Q>> = (0..cols)
        .map(|c| {
            let mut row: Vec<Q> = rows.iter().map(|r| Q::from_integer(r[c] as i128)).collect();
            row.push(Q::from_integer(v[c] as i128));
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..k {
        let Some(p) = (row..aug.len()).find(|&r| aug[r][col] != Q::from_integer(0)) else {
            continue;
        };
        aug.swap(row, p);
        let inv = aug[row][col].recip();
        for x in &mut aug[row] {
            *x *= inv;
        }
        for r in 0..aug.len() {
            if r != row && aug[r][col] != Q::from_integer(0) {
                let f = aug[r][col];
                for c in 0..=k {
                    let sub = f * aug[row][c];
                    aug[r][c] -= sub;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    // Inconsistent if a zero coefficient row has nonzero rhs.
    for r in &aug {
        if r[..k].iter().all(|q| *q == Q::from_integer(0)) && r[k] != Q::from_integer(0) {
            return None;
        }
    }
    if pivots.len() < k {
        return None; // basis not independent; caller misuse
    }
    let mut out = vec![Q::from_integer(0); k];
    for (r, &p) in pivots.iter().enumerate() {
        out[p] = aug[r][k];
    }
    Some(out)
}

/// Clear denominators and primitivize, preserving the direction.
pub fn rational_to_primitive(coords: &[Q]) -> Vec<i64> {
    let lcm = coords.iter().fold(1i128, |acc, q| acc.lcm(q.denom()));
    let ints: Vec<i64> = coords
        .iter()
        .map(|q| i64::try_from(q.numer() * (lcm / q.denom())).expect("coordinate overflow"))
        .collect();
    primitivize(&ints).unwrap_or(ints)
}

const FM_CONSTRAINT_CAP: usize = 200_000;

/// Exact strict-cone feasibility: does an x exist with `row . x >= 1` for
/// every row? Decided by Fourier-Motzkin elimination over the integers
/// (margin 1 keeps the test scale-invariant for cones).
pub fn cone_interior_feasible(rows: &[Vec<i64>], dim: usize) -> Result<bool> {
    // Constraint: coeffs . x >= rhs, all integer.
    let mut cons: Vec<(Vec<i128>, i128)> = rows
        .iter()
        .map(|r| (r.iter().map(|&x| x as i128).collect(), 1i128))
        .collect();
    for var in 0..dim {
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        let mut rest = Vec::new();
        for (c, rhs) in cons {
            match c[var].signum() {
                1 => pos.push((c, rhs)),
                -1 => neg.push((c, rhs)),
                _ => rest.push((c, rhs)),
            }
        }
        let mut next = rest;
        for (pc, prhs) in &pos {
            for (nc, nrhs) in &neg {
                let a = pc[var];
                let b = -nc[var];
                let mut c: Vec<i128> = (0..dim).map(|j| b * pc[j] + a * nc[j]).collect();
                let mut rhs = b * prhs + a * nrhs;
                debug_assert_eq!(c[var], 0);
                let g = c.iter().fold(rhs.abs(), |acc, &x| acc.gcd(&x.abs()));
                if g > 1 {
                    for x in &mut c {
                        *x /= g;
                    }
                    rhs /= g;
                }
                if c.iter().all(|&x| x == 0) {
                    if rhs > 0 {
                        return Ok(false);
                    }
                } else {
                    next.push((c, rhs));
                }
            }
        }
        next.sort();
        next.dedup();
        if next.len() > FM_CONSTRAINT_CAP {
            return Err(Error::ArrangementTooLarge);
        }
        cons = next;
    }
    Ok(cons.iter().all(|(_, rhs)| *rhs <= 0))
}
