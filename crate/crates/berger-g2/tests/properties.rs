use berger_g2::berger::{gamma_fiber, point_from, rho2};
use berger_g2::forms::InvariantForm;
use berger_g2::g2::{cone_membership, cube_point, phi, ThreePlane};
use berger_g2::liealg::{gamma_matrix, omega_matrix, So5};
use berger_g2::linalg::{dot, expm, Matrix};
use berger_g2::rep::{rotation, so3_element, veronese, HarmonicModule};
use berger_g2::{FieldScalar, Scalar};
use proptest::prelude::*;

const SURDS: [u32; 7] = [2, 3, 5, 6, 10, 15, 30];

fn field_element() -> impl Strategy<Value = FieldScalar> {
    (prop::collection::vec((-6i64..=6, 1i64..=4), 8)).prop_map(|c| {
        let mut x = FieldScalar::from_ratio(c[0].0, c[0].1);
        for (k, &(n, d)) in c[1..].iter().enumerate() {
            x += FieldScalar::radical(n, d, SURDS[k]);
        }
        x
    })
}

fn sparse_field_element() -> impl Strategy<Value = FieldScalar> {
    (-5i64..=5, 1i64..=3, -3i64..=3, 0usize..7).prop_map(|(a, d, b, k)| FieldScalar::from_ratio(a, d) + FieldScalar::radical(b, 2, SURDS[k]))
}

fn vec7() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0f64..1.0, 7)
}

fn axis_angle() -> impl Strategy<Value = [f64; 3]> {
    [-3.0f64..3.0, -3.0f64..3.0, -3.0f64..3.0]
}

/// A random form of fixed degree on so(5) with small integer coefficients.
fn so5_form(degree: usize) -> impl Strategy<Value = InvariantForm<f64>> {
    prop::collection::vec((prop::sample::subsequence((0..10).collect::<Vec<_>>(), degree), -3i32..=3), 1..4).prop_map(
        move |terms| {
            let mut f = InvariantForm::zero(10);
            for (idx, c) in terms {
                f = f.add(&InvariantForm::monomial(10, &idx, c as f64));
            }
            f
        },
    )
}

fn sub7(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn field_ring_axioms(a in field_element(), b in field_element(), c in field_element()) {
        prop_assert_eq!((a.clone() + b.clone()) * c.clone(), a.clone() * c.clone() + b.clone() * c.clone());
        prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c));
        prop_assert_eq!(a.clone() - a.clone(), FieldScalar::zero());
    }

    #[test]
    fn field_inverse_is_involutive(a in sparse_field_element()) {
        prop_assume!(!a.is_zero());
        let inv = a.inv().unwrap();
        prop_assert_eq!(a.clone() * inv.clone(), FieldScalar::one());
        prop_assert_eq!(inv.inv().unwrap(), a);
    }

    #[test]
    fn float_embedding_is_a_homomorphism(a in field_element(), b in field_element()) {
        let prod = (a.clone() * b.clone()).embed_float();
        let scale = 1.0 + a.embed_float().abs() * b.embed_float().abs();
        prop_assert!((prod - a.embed_float() * b.embed_float()).abs() < 1e-9 * scale);
    }

    #[test]
    fn ce_differential_is_an_antiderivation(p in 1usize..4, a in so5_form(1), b in so5_form(2), c in so5_form(3)) {
        let a = match p { 1 => a, 2 => b.clone(), _ => c };
        let so5 = So5::<f64>::new();
        let lhs = so5.ce_d(&a.wedge(&b));
        let sign = if p % 2 == 0 { 1.0 } else { -1.0 };
        let rhs = so5.ce_d(&a).wedge(&b).add(&a.wedge(&so5.ce_d(&b)).scale(&sign));
        prop_assert!(lhs.sub(&rhs).max_abs() < 1e-12);
    }

    #[test]
    fn ce_differential_squares_to_zero(a in so5_form(2), b in so5_form(3)) {
        let so5 = So5::<f64>::new();
        prop_assert!(so5.ce_d(&so5.ce_d(&a)).max_abs() < 1e-12);
        prop_assert!(so5.ce_d(&so5.ce_d(&b)).max_abs() < 1e-12);
    }

    #[test]
    fn gamma_bracket_preserves_omega(g in [-2i64..=2, -2i64..=2, -2i64..=2], w in prop::collection::vec(-2i64..=2, 7)) {
        let so5 = So5::<FieldScalar>::new();
        let gm = gamma_matrix(&g.map(FieldScalar::from_int));
        let w: [FieldScalar; 7] = std::array::from_fn(|i| FieldScalar::from_int(w[i]));
        let coords = so5.coords(&gm.commutator(&omega_matrix(&w)));
        prop_assert!(coords[..3].iter().all(Scalar::is_zero));
    }

    #[test]
    fn calibration_value_is_bounded(u1 in vec7(), u2 in vec7(), u3 in vec7()) {
        let plane = ThreePlane::new(u1, u2, u3);
        prop_assume!(plane.gram_det() > 1e-6);
        prop_assert!(plane.calibration_value().abs() <= 1.0 + 1e-12);
    }

    #[test]
    fn rho3_preserves_phi_and_flip_negates(u1 in vec7(), u2 in vec7(), u3 in vec7(), r in axis_angle()) {
        let plane = ThreePlane::new(u1, u2, u3);
        prop_assume!(plane.gram_det() > 1e-6);
        let g = HarmonicModule::<f64>::new(3).rho(&rotation(r));
        let v = plane.calibration_value();
        prop_assert!((plane.transform(&g).calibration_value() - v).abs() < 1e-10);
        prop_assert!((plane.flipped().calibration_value() + v).abs() < 1e-12);
    }

    #[test]
    fn phi_is_rho3_invariant(v1 in vec7(), v2 in vec7(), v3 in vec7(), r in axis_angle()) {
        let g = HarmonicModule::<f64>::new(3).rho(&rotation(r));
        let base = phi::<f64>().evaluate(&[v1.clone(), v2.clone(), v3.clone()]);
        let moved = phi::<f64>().evaluate(&[g.mul_vec(&v1), g.mul_vec(&v2), g.mul_vec(&v3)]);
        prop_assert!((base - moved).abs() < 1e-10);
    }

    #[test]
    fn cube_cone_is_rotation_invariant(a in [-1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0], r in axis_angle()) {
        prop_assume!(dot(&a, &a) > 0.05);
        let g = rotation(r);
        let v = cube_point(&a);
        prop_assert!(cone_membership(&v, 1e-8).member);
        let moved = HarmonicModule::<f64>::new(3).rho(&g).mul_vec(&v);
        prop_assert!(cone_membership(&moved, 1e-8).member);
        let ga: [f64; 3] = std::array::from_fn(|i| g.row(i).iter().zip(&a).map(|(x, y)| x * y).sum());
        prop_assert!(sub7(&moved, &cube_point(&ga)) < 1e-10);
    }

    #[test]
    fn point_from_is_constant_on_cosets(x in prop::collection::vec(-1.0f64..1.0, 10), r in axis_angle()) {
        let so5 = So5::<f64>::new();
        let g = expm(&so5.element(&x));
        let h = g.mul(&rho2(&rotation(r)));
        prop_assert!(point_from(&g).distance(&point_from(&h)) < 1e-10);
    }

    #[test]
    fn gamma_fiber_contains_the_contact_data(u in [-1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0], x in prop::collection::vec(-0.6f64..0.6, 10)) {
        let n = dot(&u, &u).sqrt();
        prop_assume!(n > 0.2);
        let u = u.map(|c| c / n);
        let g = expm(&So5::<f64>::new().element(&x));
        let base = point_from(&g);
        let p = g.mul_vec(&veronese(&u));
        prop_assert!(base.contains(&p, 1e-10));
        let t = base.tangent_plane_at(&p);
        for s in gamma_fiber(&p, &[t.column(0), t.column(1)], 6) {
            prop_assert!(s.containment_residual < 1e-8, "containment {}", s.containment_residual);
            prop_assert!(s.tangent_residual < 1e-8, "tangent {}", s.tangent_residual);
        }
    }

    #[test]
    fn so3_exponential_is_a_rotation(r in axis_angle()) {
        let m = expm(&so3_element(&r));
        let err = m.transpose().mul(&m).sub(&Matrix::identity(3)).max_abs();
        prop_assert!(err < 1e-12);
        prop_assert!((m.determinant() - 1.0).abs() < 1e-12);
    }
}
