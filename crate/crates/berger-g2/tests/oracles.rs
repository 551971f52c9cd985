//! Values frozen from independent evaluation (direct expansion, sympy).

use berger_g2::berger::{circle_element, h_ico, point_from, rho2};
use berger_g2::g2::{cone_membership, nearest_associative, planes, ThreePlane};
use berger_g2::linalg::{expm, Matrix};
use berger_g2::rep::{axis_rotation, g_form, upsilon, veronese, veronese_membership};
use berger_g2::scalar::exact_cos_sin;
use berger_g2::{FieldScalar as F, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn e(n: usize, i: usize) -> Vec<F> {
    (0..n).map(|k| if k == i { F::one() } else { F::zero() }).collect()
}

#[test]
fn exact_inverse_matches_sympy() {
    let x = F::one() + F::surd(2) + F::surd(3) + F::surd(5);
    let expected = F::from_ratio(93, 71) - F::radical(61, 71, 2) - F::radical(55, 71, 3) + F::radical(46, 71, 6)
        + F::radical(53, 71, 5)
        - F::radical(34, 71, 10)
        - F::radical(26, 71, 15)
        + F::radical(14, 71, 30);
    assert_eq!(x.inv().unwrap(), expected);
}

#[test]
fn exact_cube_matches_sympy() {
    let x = F::surd(2) + F::surd(3) + F::surd(5);
    let expected = F::radical(26, 1, 2) + F::radical(24, 1, 3) + F::radical(20, 1, 5) + F::radical(6, 1, 30);
    assert_eq!(x.clone() * x.clone() * x, expected);
}

#[test]
fn upsilon_at_basis_vectors() {
    assert_eq!(upsilon(&e(5, 0)), F::one());
    assert_eq!(g_form(&e(5, 0)), F::one());
    assert_eq!(upsilon(&e(5, 3)), F::zero());
}

#[test]
fn veronese_at_coordinate_axes() {
    assert_eq!(veronese(&[F::one(), F::zero(), F::zero()]).to_vec(), e(5, 0));
    let v = veronese(&[F::zero(), F::one(), F::zero()]);
    assert_eq!(v.to_vec(), vec![F::from_ratio(-1, 2), F::zero(), F::zero(), F::radical(1, 2, 3), F::zero()]);
}

#[test]
fn veronese_membership_on_random_points_and_e4() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let u: [f64; 3] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        let n = u.iter().map(|x| x * x).sum::<f64>().sqrt();
        let m = veronese_membership(&veronese(&u.map(|x| x / n)), 1e-12);
        assert!(m.member);
        assert!((m.upsilon - 1.0).abs() < 1e-12);
    }
    let e4 = veronese_membership(&e(5, 3), 0.0);
    assert!(!e4.member);
    let h = 3f64.sqrt() / 2.0;
    for (a, b) in e4.eigenvalues.iter().zip([-h, 0.0, h]) {
        assert!((a - b).abs() < 1e-14);
    }
}

#[test]
fn rho2_of_x_rotation_is_the_one_two_circle() {
    for (k, n) in [(1, 6), (1, 4), (2, 3), (5, 6)] {
        let (c, s) = exact_cos_sin(k, n).unwrap();
        let (c2, s2) = exact_cos_sin(2 * k, n).unwrap();
        let m = rho2(&axis_rotation(0, c.clone(), s.clone()));
        assert_eq!(m[(0, 0)], F::one());
        let block = |i: usize| (m[(i, i)].clone(), m[(i + 1, i)].clone(), m[(i, i + 1)].clone(), m[(i + 1, i + 1)].clone());
        let (a, b, cc, d) = block(1);
        assert_eq!((a, d), (c.clone(), c.clone()));
        assert_eq!(b.clone() * b.clone(), s.clone() * s.clone());
        assert_eq!(cc, -b);
        let (a, b, cc, d) = block(3);
        assert_eq!((a, d), (c2.clone(), c2));
        assert_eq!(b.clone() * b.clone(), s2.clone() * s2);
        assert_eq!(cc, -b);
        let alpha = std::f64::consts::PI * k as f64 / n as f64;
        let numeric = m.map(F::embed_float);
        let on_circle = [alpha, -alpha].iter().any(|&t| numeric.sub(&circle_element(1, 2, t)).max_abs() < 1e-14);
        assert!(on_circle, "{k}π/{n}");
    }
}

#[test]
fn special_plane_values() {
    let w = planes::w_oct::<F>();
    assert!(!w.gram_det().is_zero());
    assert_eq!(w.phi_raw(), F::zero());
    assert_eq!(ThreePlane::<F>::coordinate(4, 5, 6).phi_raw(), F::zero());
    assert_eq!(planes::a123::<F>().phi_raw(), F::one());
}

#[test]
fn cube_cone_membership() {
    let e1: Vec<f64> = (0..7).map(|i| if i == 0 { 1.0 } else { 0.0 }).collect();
    let m = cone_membership(&e1, 1e-8);
    assert!(m.member);
    assert!(m.witness[1].abs() < 1e-8 && m.witness[2].abs() < 1e-8 && m.witness[0].abs() > 0.5);
    let e2: Vec<f64> = (0..7).map(|i| if i == 1 { 1.0 } else { 0.0 }).collect();
    let m = cone_membership(&e2, 1e-8);
    assert!(!m.member);
    assert!(m.residual > 1e-3);
}

#[test]
fn ascent_recovers_a_perturbed_associative() {
    let mut gen = Matrix::<f64>::zeros(7, 7);
    gen[(0, 3)] = -0.1;
    gen[(3, 0)] = 0.1;
    let plane = planes::a123::<f64>().transform(&expm(&gen));
    assert!((plane.calibration_value() - 1.0).abs() > 1e-4);
    let r = nearest_associative(&plane).unwrap();
    assert!((r.plane.calibration_value() - 1.0).abs() < 1e-10);
}

#[test]
fn icosahedral_frame_moves_the_base_point() {
    let base = point_from(&Matrix::<f64>::identity(5));
    assert!(point_from(&h_ico::<f64>()).distance(&base) > 1e-3);
}
