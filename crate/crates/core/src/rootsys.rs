//! Root-system tables and Weyl-group enumeration.
//!
//! Coordinate conventions used across the crate:
//!
//! * Roots are integer vectors in the **simple-root basis**, so the simple
//!   roots are the standard basis vectors and all Weyl arithmetic is exact.
//! * Points of the dual space carry **fundamental-weight coordinates**: the
//!   pairing of a point `x` against the coroot of simple root `j` is just
//!   `x[j]`. The closed dominant chamber is the nonnegative orthant in these
//!   coordinates.
//! * Each Weyl element stores two integer matrices: `matrix` acts on
//!   root-basis coordinates and `weight_matrix` on fundamental-weight
//!   coordinates. Words are the shortest found by breadth-first closure over
//!   simple reflections (not guaranteed reduced in the Coxeter sense).

use std::collections::HashMap;
use std::fmt;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerance for chamber-membership tests on real input.
pub const CHAMBER_TOL: f64 = 1e-10;

/// Dynkin family letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::G => 'G',
        }
    }

    pub fn from_letter(c: char) -> Option<Family> {
        match c.to_ascii_uppercase() {
            'A' => Some(Family::A),
            'B' => Some(Family::B),
            'C' => Some(Family::C),
            'D' => Some(Family::D),
            'G' => Some(Family::G),
            _ => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Crystallographic root system with positive roots enumerated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSystem {
    family: Family,
    rank: usize,
    /// Simple roots in the simple-root basis (the standard basis vectors).
    simple_roots: Vec<DVector<i64>>,
    /// All positive roots, simple roots first, then by height and lex order.
    positive_roots: Vec<DVector<i64>>,
    /// cartan[(i, j)] = <alpha_i, alpha_j^vee>.
    cartan: DMatrix<i64>,
    /// Symmetrizers d_i = (alpha_i, alpha_i) / 2 up to overall scale.
    symmetrizers: Vec<i64>,
    /// Lookup from root coordinates to positive-root index.
    index: HashMap<Vec<i64>, usize>,
}

/// Weyl-group element with its signed-permutation action on positive roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylElement {
    /// Action on root-basis coordinates.
    pub matrix: DMatrix<i64>,
    /// Action on fundamental-weight coordinates (the dual action).
    pub weight_matrix: DMatrix<i64>,
    /// 0-based permutation: w(alpha_i) = signs[i] * alpha_{sigma[i]}.
    pub sigma: Vec<usize>,
    pub signs: Vec<i8>,
    /// Simple-reflection indices (0-based), composed left to right.
    pub word: Vec<usize>,
}

impl WeylElement {
    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    pub fn apply_root(&self, v: &DVector<i64>) -> DVector<i64> {
        &self.matrix * v
    }

    /// Apply the dual action to a real vector in fundamental-weight coordinates.
    pub fn apply_weight(&self, x: &[f64]) -> Vec<f64> {
        let r = self.weight_matrix.nrows();
        (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| self.weight_matrix[(i, j)] as f64 * x[j])
                    .sum()
            })
            .collect()
    }

    pub fn apply_weight_complex(&self, x: &[Complex64]) -> Vec<Complex64> {
        let r = self.weight_matrix.nrows();
        (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| x[j] * self.weight_matrix[(i, j)] as f64)
                    .sum()
            })
            .collect()
    }
}

fn cartan_matrix(family: Family, rank: usize) -> Option<DMatrix<i64>> {
    match (family, rank) {
        (Family::A, r) if (1..=4).contains(&r) => Some(DMatrix::from_fn(r, r, |i, j| {
            if i == j {
                2
            } else if i.abs_diff(j) == 1 {
                -1
            } else {
                0
            }
        })),
        (Family::B, 2) => Some(DMatrix::from_row_slice(2, 2, &[2, -2, -1, 2])),
        (Family::C, 2) => Some(DMatrix::from_row_slice(2, 2, &[2, -1, -2, 2])),
        (Family::G, 2) => Some(DMatrix::from_row_slice(2, 2, &[2, -1, -3, 2])),
        _ => None,
    }
}

fn symmetrizers(family: Family, rank: usize) -> Vec<i64> {
    match family {
        Family::B => vec![2, 1],
        Family::C => vec![1, 2],
        Family::G => vec![1, 3],
        _ => vec![1; rank],
    }
}

impl RootSystem {
    /// Build a supported root system (A1..A4, B2, C2, G2).
    pub fn new(family: Family, rank: usize) -> Result<RootSystem> {
        let cartan = cartan_matrix(family, rank).ok_or(Error::UnsupportedRootSystem {
            family: family.letter(),
            rank,
        })?;
        let symmetrizers = symmetrizers(family, rank);
        let simple_roots: Vec<DVector<i64>> = (0..rank)
            .map(|i| DVector::from_fn(rank, |k, _| i64::from(k == i)))
            .collect();

        // Close the simple roots under simple reflections, then keep the
        // positive half (all coordinates nonnegative in the root basis).
        let mut roots: Vec<DVector<i64>> = simple_roots.clone();
        let mut seen: std::collections::HashSet<Vec<i64>> =
            roots.iter().map(|v| v.as_slice().to_vec()).collect();
        let mut head = 0;
        while head < roots.len() {
            let v = roots[head].clone();
            head += 1;
            for j in 0..rank {
                // s_j(v) = v - <v, alpha_j^vee> alpha_j
                let pairing: i64 = (0..rank).map(|i| v[i] * cartan[(i, j)]).sum();
                let mut w = v.clone();
                w[j] -= pairing;
                if seen.insert(w.as_slice().to_vec()) {
                    roots.push(w);
                }
            }
        }
        let mut higher: Vec<DVector<i64>> = roots
            .into_iter()
            .filter(|v| v.iter().all(|&x| x >= 0) && v.iter().sum::<i64>() > 1)
            .collect();
        higher.sort_by_key(|v| {
            let height: i64 = v.iter().sum();
            (height, v.as_slice().to_vec())
        });
        let mut positive = simple_roots.clone();
        positive.extend(higher);

        let index = positive
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_slice().to_vec(), i))
            .collect();
        Ok(RootSystem {
            family,
            rank,
            simple_roots,
            positive_roots: positive,
            cartan,
            symmetrizers,
            index,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn simple_roots(&self) -> &[DVector<i64>] {
        &self.simple_roots
    }

    pub fn positive_roots(&self) -> &[DVector<i64>] {
        &self.positive_roots
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn cartan_matrix(&self) -> &DMatrix<i64> {
        &self.cartan
    }

    /// Gram matrix of the simple roots: gram[(i, j)] = (alpha_i, alpha_j).
    pub fn gram(&self) -> DMatrix<i64> {
        DMatrix::from_fn(self.rank, self.rank, |i, j| {
            self.cartan[(j, i)] * self.symmetrizers[i]
        })
    }

    /// Index of `v` among the positive roots, with the sign making it positive.
    pub fn positive_root_index(&self, v: &DVector<i64>) -> Option<(usize, i8)> {
        if let Some(&i) = self.index.get(v.as_slice()) {
            return Some((i, 1));
        }
        let neg: Vec<i64> = v.iter().map(|&x| -x).collect();
        self.index.get(neg.as_slice()).map(|&i| (i, -1))
    }

    /// Coordinates in the simple-coroot basis of the coroot of the positive
    /// root with index `i`, as a primitive integer vector. This orients the
    /// Weyl arrangement by the positive roots.
    pub fn coroot_normal(&self, i: usize) -> Vec<i64> {
        let c = &self.positive_roots[i];
        let scaled: Vec<i64> = (0..self.rank)
            .map(|k| self.symmetrizers[k] * c[k])
            .collect();
        crate::intlin::primitivize(&scaled).expect("roots are nonzero")
    }

    fn simple_reflection_root_matrix(&self, j: usize) -> DMatrix<i64> {
        // Column i of s_j is e_i - cartan[(i, j)] e_j.
        DMatrix::from_fn(self.rank, self.rank, |k, i| {
            i64::from(k == i) - i64::from(k == j) * self.cartan[(i, j)]
        })
    }

    fn simple_reflection_weight_matrix(&self, j: usize) -> DMatrix<i64> {
        // (s_j x)_k = x_k - cartan[(j, k)] x_j in weight coordinates.
        DMatrix::from_fn(self.rank, self.rank, |k, l| {
            i64::from(k == l) - i64::from(l == j) * self.cartan[(j, k)]
        })
    }

    /// Enumerate the full Weyl group by breadth-first closure over simple
    /// reflections. The identity comes first; elements are deduplicated by
    /// their root-basis matrix.
    pub fn weyl_elements(&self) -> Vec<WeylElement> {
        let r = self.rank;
        let root_gens: Vec<DMatrix<i64>> = (0..r)
            .map(|j| self.simple_reflection_root_matrix(j))
            .collect();
        let weight_gens: Vec<DMatrix<i64>> = (0..r)
            .map(|j| self.simple_reflection_weight_matrix(j))
            .collect();

        let mut elems: Vec<(DMatrix<i64>, DMatrix<i64>, Vec<usize>)> =
            vec![(DMatrix::identity(r, r), DMatrix::identity(r, r), Vec::new())];
        let mut seen: std::collections::HashSet<Vec<i64>> =
            std::iter::once(elems[0].0.as_slice().to_vec()).collect();
        let mut head = 0;
        while head < elems.len() {
            let (m, wm, word) = elems[head].clone();
            head += 1;
            for j in 0..r {
                let nm = &m * &root_gens[j];
                if seen.insert(nm.as_slice().to_vec()) {
                    let nwm = &wm * &weight_gens[j];
                    let mut nword = word.clone();
                    nword.push(j);
                    elems.push((nm, nwm, nword));
                }
            }
        }

        elems
            .into_iter()
            .map(|(matrix, weight_matrix, word)| {
                let n = self.positive_roots.len();
                let mut sigma = vec![0usize; n];
                let mut signs = vec![0i8; n];
                for i in 0..n {
                    let img = &matrix * &self.positive_roots[i];
                    let (idx, s) = self
                        .positive_root_index(&img)
                        .expect("Weyl image of a root is a root");
                    sigma[i] = idx;
                    signs[i] = s;
                }
                WeylElement {
                    matrix,
                    weight_matrix,
                    sigma,
                    signs,
                    word,
                }
            })
            .collect()
    }

    /// Closed (or open) dominant-chamber membership for a point in
    /// fundamental-weight coordinates.
    pub fn chamber_membership(&self, xi: &[f64], closed: bool) -> Result<bool> {
        if xi.len() != self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                got: xi.len(),
            });
        }
        Ok(if closed {
            xi.iter().all(|&x| x >= -CHAMBER_TOL)
        } else {
            xi.iter().all(|&x| x > CHAMBER_TOL)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Classical positive-root tables, frozen independently of the
    // reflection-closure enumeration.
    fn frozen_positive_roots(family: Family, rank: usize) -> Vec<Vec<i64>> {
        match (family, rank) {
            (Family::A, 1) => vec![vec![1]],
            (Family::A, 2) => vec![vec![1, 0], vec![0, 1], vec![1, 1]],
            (Family::A, 3) => vec![
                vec![1, 0, 0],
                vec![0, 1, 0],
                vec![0, 0, 1],
                vec![1, 1, 0],
                vec![0, 1, 1],
                vec![1, 1, 1],
            ],
            (Family::B, 2) => vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![1, 2]],
            (Family::C, 2) => vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![2, 1]],
            (Family::G, 2) => vec![
                vec![1, 0],
                vec![0, 1],
                vec![1, 1],
                vec![2, 1],
                vec![3, 1],
                vec![3, 2],
            ],
            _ => panic!("no frozen table"),
        }
    }

    #[test]
    fn positive_roots_match_frozen_tables() {
        for (family, rank) in [
            (Family::A, 1),
            (Family::A, 2),
            (Family::A, 3),
            (Family::B, 2),
            (Family::C, 2),
            (Family::G, 2),
        ] {
            let rs = RootSystem::new(family, rank).unwrap();
            let mut got: Vec<Vec<i64>> = rs
                .positive_roots()
                .iter()
                .map(|v| v.as_slice().to_vec())
                .collect();
            let mut want = frozen_positive_roots(family, rank);
            got.sort();
            want.sort();
            assert_eq!(got, want, "{family}{rank}");
        }
    }

    #[test]
    fn a4_has_ten_positive_roots() {
        let rs = RootSystem::new(Family::A, 4).unwrap();
        assert_eq!(rs.num_positive_roots(), 10);
    }

    #[test]
    fn unsupported_systems_rejected() {
        assert!(matches!(
            RootSystem::new(Family::A, 5),
            Err(Error::UnsupportedRootSystem { .. })
        ));
        assert!(RootSystem::new(Family::D, 4).is_err());
        assert!(RootSystem::new(Family::B, 3).is_err());
    }

    #[test]
    fn positive_roots_are_nonnegative_combinations() {
        for (family, rank) in [(Family::A, 3), (Family::B, 2), (Family::G, 2)] {
            let rs = RootSystem::new(family, rank).unwrap();
            for root in rs.positive_roots() {
                assert!(root.iter().all(|&c| c >= 0));
            }
            assert_eq!(&rs.positive_roots()[..rank], rs.simple_roots());
        }
    }

    #[test]
    fn cartan_shape_invariants() {
        for (family, rank) in [
            (Family::A, 4),
            (Family::B, 2),
            (Family::C, 2),
            (Family::G, 2),
        ] {
            let rs = RootSystem::new(family, rank).unwrap();
            let c = rs.cartan_matrix();
            for i in 0..rank {
                assert_eq!(c[(i, i)], 2);
                for j in 0..rank {
                    if i != j {
                        assert!(c[(i, j)] <= 0);
                    }
                }
            }
            // Gram matrix must come out symmetric.
            let g = rs.gram();
            assert_eq!(g.transpose(), g);
        }
    }

    #[test]
    fn weyl_group_orders() {
        for (family, rank, order) in [
            (Family::A, 1, 2),
            (Family::A, 2, 6),
            (Family::A, 3, 24),
            (Family::A, 4, 120),
            (Family::B, 2, 8),
            (Family::C, 2, 8),
            (Family::G, 2, 12),
        ] {
            let rs = RootSystem::new(family, rank).unwrap();
            assert_eq!(rs.weyl_elements().len(), order, "{family}{rank}");
        }
    }

    #[test]
    fn identity_element_first() {
        let rs = RootSystem::new(Family::A, 2).unwrap();
        let w = rs.weyl_elements();
        assert!(w[0].is_identity());
        assert_eq!(w[0].matrix, DMatrix::identity(2, 2));
        assert!((0..3).all(|i| w[0].sigma[i] == i && w[0].signs[i] == 1));
    }

    #[test]
    fn a2_simple_reflection_signed_permutation() {
        let rs = RootSystem::new(Family::A, 2).unwrap();
        let elems = rs.weyl_elements();
        let s1 = elems.iter().find(|w| w.word == vec![0]).unwrap();
        // s1 fixes index 0 with a sign flip and swaps alpha_2 with alpha_1+alpha_2.
        assert_eq!(s1.sigma, vec![0, 2, 1]);
        assert_eq!(s1.signs, vec![-1, 1, 1]);
    }

    #[test]
    fn signed_permutation_matches_matrix_action() {
        for (family, rank) in [(Family::A, 2), (Family::B, 2), (Family::G, 2)] {
            let rs = RootSystem::new(family, rank).unwrap();
            for w in rs.weyl_elements() {
                for (i, root) in rs.positive_roots().iter().enumerate() {
                    let img = w.apply_root(root);
                    let expect = rs.positive_roots()[w.sigma[i]].map(|x| x * i64::from(w.signs[i]));
                    assert_eq!(img, expect);
                }
            }
        }
    }

    #[test]
    fn weyl_matrices_orthogonal_for_gram() {
        for (family, rank) in [(Family::A, 3), (Family::B, 2), (Family::G, 2)] {
            let rs = RootSystem::new(family, rank).unwrap();
            let g = rs.gram();
            for w in rs.weyl_elements() {
                assert_eq!(w.matrix.transpose() * &g * &w.matrix, g);
            }
        }
    }

    #[test]
    fn cocycle_identity_exhaustive() {
        for (family, rank) in [(Family::A, 2), (Family::B, 2), (Family::G, 2)] {
            let rs = RootSystem::new(family, rank).unwrap();
            let elems = rs.weyl_elements();
            let by_matrix: HashMap<Vec<i64>, usize> = elems
                .iter()
                .enumerate()
                .map(|(i, w)| (w.matrix.as_slice().to_vec(), i))
                .collect();
            for w1 in &elems {
                for w2 in &elems {
                    let prod = &w1.matrix * &w2.matrix;
                    let w12 = &elems[by_matrix[prod.as_slice()]];
                    for i in 0..rs.num_positive_roots() {
                        assert_eq!(w12.sigma[i], w1.sigma[w2.sigma[i]]);
                        assert_eq!(w12.signs[i], w1.signs[w2.sigma[i]] * w2.signs[i]);
                    }
                }
            }
        }
    }

    #[test]
    fn weight_and_root_actions_are_dual() {
        // weight coords x = C^T c for root coords c, so W_weight C^T = C^T W_root.
        for (family, rank) in [(Family::A, 2), (Family::B, 2), (Family::G, 2)] {
            let rs = RootSystem::new(family, rank).unwrap();
            let ct = rs.cartan_matrix().transpose();
            for w in rs.weyl_elements() {
                assert_eq!(&w.weight_matrix * &ct, &ct * &w.matrix);
            }
        }
    }

    #[test]
    fn chamber_membership_examples() {
        let a1 = RootSystem::new(Family::A, 1).unwrap();
        assert!(a1.chamber_membership(&[0.5], true).unwrap());
        assert!(a1.chamber_membership(&[0.0], true).unwrap());
        assert!(!a1.chamber_membership(&[0.0], false).unwrap());

        let a2 = RootSystem::new(Family::A, 2).unwrap();
        // Minus the first fundamental coweight pairs to -1 against alpha_1.
        assert!(!a2.chamber_membership(&[-1.0, 0.0], true).unwrap());
        assert!(matches!(
            a2.chamber_membership(&[1.0], true),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn coroot_normals_primitive() {
        let g2 = RootSystem::new(Family::G, 2).unwrap();
        let normals: Vec<Vec<i64>> = (0..6).map(|i| g2.coroot_normal(i)).collect();
        assert_eq!(
            normals,
            vec![
                vec![1, 0],
                vec![0, 1],
                vec![1, 3],
                vec![2, 3],
                vec![1, 1],
                vec![1, 2],
            ]
        );
    }
}
