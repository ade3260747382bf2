//! Property tests over randomized inputs, complementing the seeded suites.

use nalgebra::{Matrix2, RowVector2, Vector2};
use num_complex::Complex64;
use proptest::prelude::*;

use symkit::contraction::{su2_flow_closed_form, swann_weyl, InvariantMatrix4, Sl2c};
use symkit::mtcat::{compose, GroupObject, MtMorphism};
use symkit::nahm::{inverse_time_solution, NahmSymmetry};
use symkit::quiver::{sl2_gamma, Sl2Pair};

type C64 = Complex64;

fn cx() -> impl Strategy<Value = C64> {
    (-3.0..3.0f64, -3.0..3.0f64).prop_map(|(re, im)| C64::new(re, im))
}

fn su2() -> impl Strategy<Value = Matrix2<C64>> {
    (cx(), cx())
        .prop_filter("nonzero", |(a, b)| (a.norm_sqr() + b.norm_sqr()) > 1e-2)
        .prop_map(|(a, b)| {
            let n = (a.norm_sqr() + b.norm_sqr()).sqrt();
            let (a, b) = (a / n, b / n);
            Matrix2::new(a, -b.conj(), b, a.conj())
        })
}

fn sl2c() -> impl Strategy<Value = Matrix2<C64>> {
    (cx(), cx(), cx(), cx())
        .prop_map(|(a, b, c, d)| Matrix2::new(a, b, c, d))
        .prop_filter("invertible", |m| m.determinant().norm() > 1e-2)
        .prop_map(|m| m / m.determinant().sqrt())
}

fn pair() -> impl Strategy<Value = Sl2Pair> {
    (cx(), cx(), cx(), cx())
        .prop_map(|(a1, a2, b1, b2)| Sl2Pair::new(Vector2::new(a1, a2), RowVector2::new(b1, b2)))
}

proptest! {
    #[test]
    fn gamma_is_an_involution_negating_the_scalar_moment(p in pair()) {
        let g = sl2_gamma(&p);
        let gg = sl2_gamma(&g);
        prop_assert!((gg.alpha - p.alpha).norm() < 1e-12);
        prop_assert!((gg.beta - p.beta).norm() < 1e-12);
        prop_assert!((g.scalar_moment() + p.scalar_moment()).norm() < 1e-12);
        prop_assert!((g.group_moment() - p.group_moment()).norm() < 1e-12);
    }

    #[test]
    fn closed_form_flow_equivariant_and_singular(b in sl2c(), k1 in su2(), k2 in su2()) {
        let lhs = su2_flow_closed_form(&Sl2c::new(k1 * b * k2, 1e-6).unwrap());
        let rhs = k1 * su2_flow_closed_form(&Sl2c::new(b, 1e-6).unwrap()) * k2;
        prop_assert!((lhs - rhs).norm() < 1e-8, "deviation {}", (lhs - rhs).norm());
        prop_assert!(lhs.determinant().norm() < 1e-9);
    }

    #[test]
    fn swann_involution_preserves_rank_one_structure(
        v in proptest::array::uniform4(cx()),
        w in proptest::array::uniform4(cx()),
    ) {
        // Outer products on the zero level, the locus the invariant
        // matrices live on: project w against v.
        let vnorm: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        prop_assume!(vnorm > 1e-2);
        let level: C64 = (0..4).map(|i| v[i] * w[i]).sum();
        let s = level / vnorm;
        let w: Vec<C64> = (0..4).map(|i| w[i] - v[i].conj() * s).collect();
        let m = InvariantMatrix4(nalgebra::Matrix4::from_fn(|i, j| v[i] * w[j]));
        let once = swann_weyl(&m);
        let twice = swann_weyl(&once);
        prop_assert!((twice.0 - m.0).norm() < 1e-12);
        prop_assert!((once.0.trace() - m.0.trace()).norm() < 1e-10);
        prop_assert!(once.max_minor() < 1e-10 * (1.0 + m.0.norm_squared()));
    }

    #[test]
    fn composition_dimension_is_associative(
        dx in 0i64..40, dy in 0i64..40, dz in 0i64..40,
        mid1 in 1i64..6, mid2 in 1i64..6,
    ) {
        let g1 = GroupObject::new("G1", mid1 + 1, 1, false).unwrap();
        let g2 = GroupObject::new("G2", mid2 + 1, 1, false).unwrap();
        let x = MtMorphism::new("X", GroupObject::trivial(), g1.clone(), dx);
        let y = MtMorphism::new("Y", g1, g2.clone(), dy);
        let z = MtMorphism::new("Z", g2, GroupObject::trivial(), dz);
        let l = compose(&compose(&x, &y).unwrap(), &z).unwrap();
        let r = compose(&x, &compose(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(l.complex_dimension, r.complex_dimension);
    }

    #[test]
    fn nahm_scaling_keeps_residual_within_quadratic_bound(c in 0.2..4.0f64) {
        let data = inverse_time_solution(1.0, 2.0, 64);
        let eps = data.residual().unwrap().max(1e-14);
        let scaled = data.symmetry_transform(NahmSymmetry::Scale(c)).unwrap();
        let r = scaled.residual().unwrap();
        prop_assert!(r <= 2.0 * c * c * eps, "residual {} bound {}", r, 2.0 * c * c * eps);
    }
}
