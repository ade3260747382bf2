//! Central hyperplane arrangements: flats, broad subsets, stratum lookup and
//! restriction/localization.
//!
//! Normals are primitive integer vectors paired against points by the dot
//! product. For Weyl arrangements the normals are the primitivized coroots of
//! the positive roots, expressed in the simple-coroot basis, so points carry
//! fundamental-weight coordinates (see [`crate::rootsys`]). Flipping normal
//! orientations permutes the broad subsets but leaves flats unchanged.
//!
//! All combinatorial decisions are exact: flat closures via rational rank,
//! broad subsets via integer Fourier-Motzkin feasibility with margin 1.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::intlin;
use crate::rootsys::RootSystem;

/// Exhaustive enumeration cap on the number of hyperplanes.
pub const MAX_HYPERPLANES: usize = 24;

/// Default coordinate tolerance when classifying strata of numerical points.
pub const STRATUM_TOL: f64 = 1e-10;

/// Central arrangement of distinct hyperplanes through the origin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement {
    rank: usize,
    normals: Vec<Vec<i64>>,
}

/// A flat: an index set closed under containment of the common intersection.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Flat {
    /// 0-based hyperplane indices, sorted.
    pub indices: Vec<usize>,
    /// Dimension of the intersection subspace H_F.
    pub subspace_dim: usize,
}

/// A sign pattern whose cone is top-dimensional.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BroadSet {
    /// 0-based indices i with the constraint `n_i . x >= 0`; the complement
    /// carries `n_i . x <= 0`.
    pub indices: Vec<usize>,
}

impl BroadSet {
    /// The full index set Omega, whose cone is the dominant chamber for a
    /// Weyl arrangement.
    pub fn full(n: usize) -> BroadSet {
        BroadSet {
            indices: (0..n).collect(),
        }
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }
}

/// Stratum classification flags for a numerical point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StratumFlags {
    /// At most one coordinate pair vanishes, so the point avoids the locus
    /// where the variety can be singular.
    pub in_mg: bool,
    /// No coordinate pair vanishes.
    pub in_open_stratum: bool,
}

impl Arrangement {
    /// Validate and primitivize a set of normals.
    pub fn from_normals(rank: usize, vectors: &[Vec<i64>]) -> Result<Arrangement> {
        let mut normals: Vec<Vec<i64>> = Vec::with_capacity(vectors.len());
        for v in vectors {
            if v.len() != rank {
                return Err(Error::DimensionMismatch {
                    expected: rank,
                    got: v.len(),
                });
            }
            let prim = intlin::primitivize(v).ok_or(Error::DegenerateNormal)?;
            let neg: Vec<i64> = prim.iter().map(|x| -x).collect();
            if normals.iter().any(|n| *n == prim || *n == neg) {
                return Err(Error::RepeatedHyperplane);
            }
            normals.push(prim);
        }
        Ok(Arrangement { rank, normals })
    }

    /// Weyl arrangement of a root system: one hyperplane per positive root,
    /// oriented by the primitivized coroot.
    pub fn weyl(rs: &RootSystem) -> Arrangement {
        let normals = (0..rs.num_positive_roots())
            .map(|i| rs.coroot_normal(i))
            .collect();
        Arrangement {
            rank: rs.rank(),
            normals,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn num_hyperplanes(&self) -> usize {
        self.normals.len()
    }

    pub fn normals(&self) -> &[Vec<i64>] {
        &self.normals
    }

    /// Evaluate normal `i` against a point in dual coordinates.
    pub fn pair(&self, i: usize, x: &[f64]) -> f64 {
        self.normals[i]
            .iter()
            .zip(x)
            .map(|(&n, &v)| n as f64 * v)
            .sum()
    }

    pub fn pair_complex(&self, i: usize, x: &[Complex64]) -> Complex64 {
        self.normals[i]
            .iter()
            .zip(x)
            .map(|(&n, &v)| v * n as f64)
            .sum()
    }

    fn guard_size(&self) -> Result<()> {
        if self.normals.len() > MAX_HYPERPLANES {
            return Err(Error::ArrangementTooLarge);
        }
        Ok(())
    }

    fn rows(&self, indices: &[usize]) -> Vec<Vec<i64>> {
        indices.iter().map(|&i| self.normals[i].clone()).collect()
    }

    /// Closure of an index set: all i with H_i containing the intersection,
    /// i.e. with n_i in the rational span of the selected normals.
    pub fn closure(&self, indices: &[usize]) -> Vec<usize> {
        let rows = self.rows(indices);
        (0..self.normals.len())
            .filter(|&i| intlin::in_row_span(&rows, &self.normals[i], self.rank))
            .collect()
    }

    fn flat_of_closure(&self, closed: Vec<usize>) -> Flat {
        let rows = self.rows(&closed);
        let subspace_dim = self.rank - intlin::rank(&rows, self.rank);
        Flat {
            indices: closed,
            subspace_dim,
        }
    }

    pub fn is_flat(&self, indices: &[usize]) -> bool {
        let mut sorted = indices.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        self.closure(&sorted) == sorted
    }

    /// Validate an index set as a flat and compute its subspace dimension.
    pub fn flat(&self, indices: &[usize]) -> Result<Flat> {
        let mut sorted = indices.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if self.closure(&sorted) != sorted {
            return Err(Error::NotAFlat(sorted));
        }
        Ok(self.flat_of_closure(sorted))
    }

    /// All flats. Every flat is the closure of at most `rank` independent
    /// normals, so subsets up to that size are enumerated exhaustively.
    pub fn flats(&self) -> Result<Vec<Flat>> {
        self.guard_size()?;
        let n = self.normals.len();
        let depth = self.rank.min(n);
        let mut stack: Vec<Vec<usize>> = vec![Vec::new()];
        let mut subsets: Vec<Vec<usize>> = Vec::new();
        while let Some(s) = stack.pop() {
            subsets.push(s.clone());
            if s.len() < depth {
                let start = s.last().map_or(0, |&l| l + 1);
                for i in start..n {
                    let mut t = s.clone();
                    t.push(i);
                    stack.push(t);
                }
            }
        }
        let mut flats: Vec<Flat> = Vec::new();
        let mut seen_closures = std::collections::BTreeSet::new();
        for s in subsets {
            let closed = self.closure(&s);
            if seen_closures.insert(closed.clone()) {
                flats.push(self.flat_of_closure(closed));
            }
        }
        flats.sort_by_key(|f| (self.rank - f.subspace_dim, f.indices.clone()));
        Ok(flats)
    }

    /// All broad subsets: sign patterns V whose cone has nonempty interior.
    pub fn broad_subsets(&self) -> Result<Vec<BroadSet>> {
        self.guard_size()?;
        let n = self.normals.len();
        let mut out = Vec::new();
        for mask in 0u64..(1u64 << n) {
            let rows: Vec<Vec<i64>> = (0..n)
                .map(|i| {
                    let s = if mask >> i & 1 == 1 { 1 } else { -1 };
                    self.normals[i].iter().map(|&x| s * x).collect()
                })
                .collect();
            if intlin::cone_interior_feasible(&rows, self.rank)? {
                out.push(BroadSet {
                    indices: (0..n).filter(|&i| mask >> i & 1 == 1).collect(),
                });
            }
        }
        Ok(out)
    }

    /// Flat of the stratum containing a numerical point, with regularity
    /// flags. `a` and `b` are the paired coordinates of a hypertoric point.
    pub fn stratum_of(
        &self,
        a: &[Complex64],
        b: &[Complex64],
        tol: f64,
    ) -> Result<(Flat, StratumFlags)> {
        let n = self.normals.len();
        if a.len() != n || b.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: a.len().max(b.len()),
            });
        }
        let zero_pairs: Vec<usize> = (0..n)
            .filter(|&i| a[i].norm() <= tol && b[i].norm() <= tol)
            .collect();
        let flat = self.flat_of_closure(self.closure(&zero_pairs));
        let flags = StratumFlags {
            in_mg: flat.indices.len() <= 1,
            in_open_stratum: flat.indices.is_empty(),
        };
        Ok((flat, flags))
    }

    /// Complex codimension of the stratum attached to a flat.
    pub fn stratum_codim(&self, flat: &Flat) -> usize {
        2 * (self.rank - flat.subspace_dim)
    }

    /// Restriction A^F (hyperplanes H_i ∩ H_F for i outside F, living on H_F)
    /// and localization A_F (hyperplanes indexed by F in the quotient space).
    pub fn restriction_localization(&self, flat: &Flat) -> Result<(Arrangement, Arrangement)> {
        if !self.is_flat(&flat.indices) {
            return Err(Error::NotAFlat(flat.indices.clone()));
        }
        let f_rows = self.rows(&flat.indices);

        // Basis of H_F = { x : n_i . x = 0 for i in F }.
        let kernel = intlin::integer_kernel(&f_rows, self.rank);
        let sub_rank = kernel.len();
        let mut restricted: Vec<Vec<i64>> = Vec::new();
        for (i, normal) in self.normals.iter().enumerate() {
            if flat.indices.contains(&i) {
                continue;
            }
            let projected: Vec<i64> = kernel
                .iter()
                .map(|k| k.iter().zip(normal).map(|(&a, &b)| a * b).sum())
                .collect();
            let prim = intlin::primitivize(&projected)
                .expect("normals outside the flat project to nonzero functionals");
            let neg: Vec<i64> = prim.iter().map(|x| -x).collect();
            if !restricted.iter().any(|m| *m == prim || *m == neg) {
                restricted.push(prim);
            }
        }
        let restriction = Arrangement {
            rank: sub_rank,
            normals: restricted,
        };

        // Localization: express the F-normals in a maximal independent
        // subset of themselves, giving coordinates on t* / H_F.
        let mut basis: Vec<Vec<i64>> = Vec::new();
        for row in &f_rows {
            if !intlin::in_row_span(&basis, row, self.rank) {
                basis.push(row.clone());
            }
        }
        let localized: Vec<Vec<i64>> = f_rows
            .iter()
            .map(|row| {
                let coords = intlin::coords_in_basis(&basis, row, self.rank)
                    .expect("flat normals lie in the span of the chosen basis");
                intlin::rational_to_primitive(&coords)
            })
            .collect();
        let localization = Arrangement {
            rank: basis.len(),
            normals: localized,
        };
        Ok((restriction, localization))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::Family;

    fn a2() -> Arrangement {
        Arrangement::weyl(&RootSystem::new(Family::A, 2).unwrap())
    }

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    // Independent oracle: closure over every subset, with rank decided by
    // floating Gaussian elimination instead of the exact path.
    #[allow(clippy::needless_range_loop)]
    fn oracle_flats(normals: &[Vec<i64>], rank: usize) -> Vec<Vec<usize>> {
        let n = normals.len();
        let float_rank = |rows: &[Vec<f64>]| -> usize {
            let mut m: Vec<Vec<f64>> = rows.to_vec();
            let mut r = 0;
            for col in 0..rank {
                let Some(p) = (r..m.len()).find(|&i| m[i][col].abs() > 1e-9) else {
                    continue;
                };
                m.swap(r, p);
                for i in 0..m.len() {
                    if i != r {
                        let f = m[i][col] / m[r][col];
                        for cidx in 0..rank {
                            m[i][cidx] -= f * m[r][cidx];
                        }
                    }
                }
                r += 1;
            }
            r
        };
        let to_f = |idx: &[usize]| -> Vec<Vec<f64>> {
            idx.iter()
                .map(|&i| normals[i].iter().map(|&x| x as f64).collect())
                .collect()
        };
        let mut seen = std::collections::BTreeSet::new();
        for mask in 0u32..(1 << n) {
            let s: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            let base = float_rank(&to_f(&s));
            let closed: Vec<usize> = (0..n)
                .filter(|&i| {
                    let mut ext = s.clone();
                    ext.push(i);
                    float_rank(&to_f(&ext)) == base
                })
                .collect();
            seen.insert(closed);
        }
        seen.into_iter().collect()
    }

    #[test]
    fn from_normals_primitivizes() {
        let arr = Arrangement::from_normals(1, &[vec![2]]).unwrap();
        assert_eq!(arr.normals(), &[vec![1]]);
    }

    #[test]
    fn from_normals_rejects_duplicates_and_zero() {
        assert!(matches!(
            Arrangement::from_normals(2, &[vec![1, 0], vec![2, 0]]),
            Err(Error::RepeatedHyperplane)
        ));
        assert!(matches!(
            Arrangement::from_normals(2, &[vec![1, 0], vec![-1, 0]]),
            Err(Error::RepeatedHyperplane)
        ));
        assert!(matches!(
            Arrangement::from_normals(2, &[vec![0, 0]]),
            Err(Error::DegenerateNormal)
        ));
    }

    #[test]
    fn weyl_a2_normals() {
        assert_eq!(a2().normals(), &[vec![1, 0], vec![0, 1], vec![1, 1]]);
    }

    #[test]
    fn a1_flats() {
        let arr = Arrangement::weyl(&RootSystem::new(Family::A, 1).unwrap());
        let flats = arr.flats().unwrap();
        let idx: Vec<Vec<usize>> = flats.iter().map(|f| f.indices.clone()).collect();
        assert_eq!(idx, vec![vec![], vec![0]]);
    }

    #[test]
    fn a2_flats_match_oracle() {
        let arr = a2();
        let flats = arr.flats().unwrap();
        let mut idx: Vec<Vec<usize>> = flats.iter().map(|f| f.indices.clone()).collect();
        idx.sort();
        assert_eq!(idx, oracle_flats(arr.normals(), 2));
        assert_eq!(flats.len(), 5);
        // {0,1} is not closed: H_0 ∩ H_1 = {0} lies in H_2 as well.
        assert_eq!(arr.closure(&[0, 1]), vec![0, 1, 2]);
        assert!(!arr.is_flat(&[0, 1]));
    }

    #[test]
    fn rank_two_weyl_flat_counts() {
        // Any central rank-two arrangement of N >= 2 distinct lines has the
        // empty flat, N singletons, and the full set: N + 2 flats.
        for (family, n) in [(Family::B, 4), (Family::C, 4), (Family::G, 6)] {
            let arr = Arrangement::weyl(&RootSystem::new(family, 2).unwrap());
            assert_eq!(arr.num_hyperplanes(), n);
            let flats = arr.flats().unwrap();
            assert_eq!(flats.len(), n + 2, "{family}2");
            let mut idx: Vec<Vec<usize>> = flats.iter().map(|f| f.indices.clone()).collect();
            idx.sort();
            assert_eq!(idx, oracle_flats(arr.normals(), 2));
        }
    }

    #[test]
    fn coordinate_lines_flats() {
        let arr = Arrangement::from_normals(2, &[vec![1, 0], vec![0, 1]]).unwrap();
        let flats = arr.flats().unwrap();
        assert_eq!(flats.len(), 4);
        let mut idx: Vec<Vec<usize>> = flats.iter().map(|f| f.indices.clone()).collect();
        idx.sort();
        assert_eq!(idx, oracle_flats(arr.normals(), 2));
    }

    #[test]
    fn flats_closed_under_union_closure() {
        for arr in [
            a2(),
            Arrangement::weyl(&RootSystem::new(Family::B, 2).unwrap()),
            Arrangement::weyl(&RootSystem::new(Family::G, 2).unwrap()),
        ] {
            let flats = arr.flats().unwrap();
            let all: std::collections::BTreeSet<Vec<usize>> =
                flats.iter().map(|f| f.indices.clone()).collect();
            for f1 in &flats {
                for f2 in &flats {
                    let mut union: Vec<usize> = f1.indices.clone();
                    union.extend(&f2.indices);
                    union.sort_unstable();
                    union.dedup();
                    assert!(all.contains(&arr.closure(&union)));
                }
            }
        }
    }

    #[test]
    fn a2_broad_subsets() {
        let arr = a2();
        let broad = arr.broad_subsets().unwrap();
        assert_eq!(broad.len(), 6);
        let got: std::collections::BTreeSet<Vec<usize>> =
            broad.iter().map(|b| b.indices.clone()).collect();
        // Hand-enumerated chambers of the lines x=0, y=0, x+y=0.
        let want: std::collections::BTreeSet<Vec<usize>> = [
            vec![0, 1, 2],
            vec![0, 2],
            vec![0],
            vec![],
            vec![1],
            vec![1, 2],
        ]
        .into_iter()
        .collect();
        assert_eq!(got, want);
    }

    #[test]
    fn a1_and_coordinate_broad_subsets() {
        let a1 = Arrangement::weyl(&RootSystem::new(Family::A, 1).unwrap());
        assert_eq!(a1.broad_subsets().unwrap().len(), 2);
        let coords = Arrangement::from_normals(2, &[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(coords.broad_subsets().unwrap().len(), 4);
    }

    #[test]
    fn broad_complementarity() {
        for arr in [
            a2(),
            Arrangement::weyl(&RootSystem::new(Family::B, 2).unwrap()),
        ] {
            let broad = arr.broad_subsets().unwrap();
            let got: std::collections::BTreeSet<Vec<usize>> =
                broad.iter().map(|b| b.indices.clone()).collect();
            for b in &broad {
                let complement: Vec<usize> = (0..arr.num_hyperplanes())
                    .filter(|i| !b.indices.contains(i))
                    .collect();
                assert!(got.contains(&complement));
            }
        }
    }

    #[test]
    fn broad_count_matches_weyl_order() {
        for (family, rank) in [
            (Family::A, 1),
            (Family::A, 2),
            (Family::B, 2),
            (Family::G, 2),
        ] {
            let rs = RootSystem::new(family, rank).unwrap();
            let arr = Arrangement::weyl(&rs);
            assert_eq!(
                arr.broad_subsets().unwrap().len(),
                rs.weyl_elements().len(),
                "{family}{rank}"
            );
        }
    }

    #[test]
    fn stratum_classification() {
        let arr = a2();
        let (flat, flags) = arr
            .stratum_of(
                &[c(1.0), c(0.0), c(2.0)],
                &[c(1.0), c(0.0), c(1.0)],
                STRATUM_TOL,
            )
            .unwrap();
        assert_eq!(flat.indices, vec![1]);
        assert!(flags.in_mg);
        assert!(!flags.in_open_stratum);

        let zeros = [c(0.0), c(0.0), c(0.0)];
        let (flat, flags) = arr.stratum_of(&zeros, &zeros, STRATUM_TOL).unwrap();
        assert_eq!(flat.indices, vec![0, 1, 2]);
        assert!(!flags.in_mg);

        let (flat, flags) = arr
            .stratum_of(
                &[c(1.0), c(2.0), c(3.0)],
                &[c(4.0), c(5.0), c(6.0)],
                STRATUM_TOL,
            )
            .unwrap();
        assert!(flat.indices.is_empty());
        assert!(flags.in_open_stratum);
    }

    #[test]
    fn stratum_codim_even_and_mg_cutoff() {
        for arr in [
            a2(),
            Arrangement::weyl(&RootSystem::new(Family::G, 2).unwrap()),
        ] {
            for flat in arr.flats().unwrap() {
                let codim = arr.stratum_codim(&flat);
                assert_eq!(codim % 2, 0);
                // in_mg keeps exactly the strata with at most one vanishing pair.
                if flat.indices.len() >= 2 {
                    assert!(codim >= 4);
                }
            }
        }
    }

    #[test]
    fn restriction_localization_cases() {
        let arr = a2();
        let flats = arr.flats().unwrap();

        let empty = flats.iter().find(|f| f.indices.is_empty()).unwrap();
        let (restr, local) = arr.restriction_localization(empty).unwrap();
        assert_eq!(restr, arr);
        assert_eq!(local.num_hyperplanes(), 0);

        let single = flats.iter().find(|f| f.indices == vec![1]).unwrap();
        let (restr, _) = arr.restriction_localization(single).unwrap();
        assert_eq!(restr.rank(), 1);
        assert!(restr.num_hyperplanes() <= 2);

        let full = flats.iter().find(|f| f.indices.len() == 3).unwrap();
        let (restr, local) = arr.restriction_localization(full).unwrap();
        assert_eq!(restr.num_hyperplanes(), 0);
        assert_eq!(local, arr);

        assert!(matches!(
            arr.restriction_localization(&Flat {
                indices: vec![0, 1],
                subspace_dim: 0
            }),
            Err(Error::NotAFlat(_))
        ));
    }

    #[test]
    fn size_guard() {
        let normals: Vec<Vec<i64>> = (0..25).map(|i| vec![1, i]).collect();
        let arr = Arrangement::from_normals(2, &normals).unwrap();
        assert!(matches!(arr.flats(), Err(Error::ArrangementTooLarge)));
        assert!(matches!(
            arr.broad_subsets(),
            Err(Error::ArrangementTooLarge)
        ));
    }
}
