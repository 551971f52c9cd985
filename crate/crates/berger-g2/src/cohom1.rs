//! The cohomogeneity-one action of SO(4) ⊂ SO(5) on the Berger space: the pullback of the
//! coframe along the normal geodesic `t ↦ u(t)`, the SU(3)-structure `(Ω, ℜΥ)` induced on
//! principal orbits and its torsion.

use crate::forms::{proportionality, InvariantForm, MatrixLieAlgebra, Proportionality};
use crate::g2::{calibrated_ascent, phi, star_phi, ThreePlane};
use crate::linalg::{dot, symmetric_eigen, Matrix};
use crate::liealg::So5;
use crate::rep::{matrix_of, so3_element, HarmonicModule};
use crate::scalar::{exact_cos_sin, FieldScalar, RealScalar, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Cohom1Error {
    #[error("the orbit at t = {0} is singular (pullback rank {1})")]
    SingularOrbit(f64, usize),
    #[error("the plane is not tangent to the orbit")]
    NotTangent,
}

/// Orbit variables: `μ₁, μ₂, μ₃, ν₁, ν₂, ν₃`.
pub const ORBIT_DIM: usize = 6;
pub const ORBIT_NAMES: [&str; ORBIT_DIM] = ["μ1", "μ2", "μ3", "ν1", "ν2", "ν3"];
/// Pullback columns: `dt` followed by the orbit variables.
pub const PULLBACK_NAMES: [&str; 7] = ["dt", "μ1", "μ2", "μ3", "ν1", "ν2", "ν3"];

/// `(cos t, sin t)` in a chosen scalar type.
#[derive(Clone, Debug)]
pub struct Angle<S> {
    pub t: f64,
    pub cos: S,
    pub sin: S,
}

impl Angle<f64> {
    pub fn float(t: f64) -> Self {
        Angle {
            t,
            cos: t.cos(),
            sin: t.sin(),
        }
    }
}

impl Angle<FieldScalar> {
    /// `t = kπ/n` with `n` dividing 12.
    pub fn exact(k: i64, n: i64) -> Option<Self> {
        let (cos, sin) = exact_cos_sin(k, n)?;
        Some(Angle {
            t: k as f64 * std::f64::consts::PI / n as f64,
            cos,
            sin,
        })
    }
}

/// The so(4) element with coordinates `(μ, ν)` in the su(2) ⊕ su(2) splitting.
pub fn so4_element<S: Scalar>(mu: &[S; 3], nu: &[S; 3]) -> Matrix<S> {
    let [m1, m2, m3] = mu.clone();
    let [n1, n2, n3] = nu.clone();
    let z = S::zero;
    let rows = vec![
        vec![z(), z(), z(), z(), z()],
        vec![z(), z(), n1.clone() - m1.clone(), n2.clone() - m2.clone(), n3.clone() - m3.clone()],
        vec![z(), m1.clone() - n1.clone(), z(), -m3.clone() - n3.clone(), m2.clone() + n2.clone()],
        vec![z(), m2.clone() - n2.clone(), m3.clone() + n3.clone(), z(), -m1.clone() - n1.clone()],
        vec![z(), m3 - n3, -m2 - n2, m1 + n1, z()],
    ];
    Matrix::from_rows(rows).scale(&S::from_ratio(1, 2))
}

/// so(4) with the basis dual to `(μ₁, μ₂, μ₃, ν₁, ν₂, ν₃)`.
pub struct So4Coframe<S: Scalar> {
    pub algebra: MatrixLieAlgebra<S>,
}

impl<S: Scalar> So4Coframe<S> {
    pub fn new() -> Self {
        let basis = (0..ORBIT_DIM)
            .map(|k| {
                let e = |i: usize| -> [S; 3] { std::array::from_fn(|j| if j == i { S::one() } else { S::zero() }) };
                let zero = std::array::from_fn(|_| S::zero());
                if k < 3 {
                    so4_element(&e(k), &zero)
                } else {
                    so4_element(&zero, &e(k - 3))
                }
            })
            .collect();
        So4Coframe {
            algebra: MatrixLieAlgebra::new(basis),
        }
    }

    pub fn d(&self, f: &InvariantForm<S>) -> InvariantForm<S> {
        self.algebra.ce_d(f)
    }
}

impl<S: Scalar> Default for So4Coframe<S> {
    fn default() -> Self {
        Self::new()
    }
}

/// The geodesic section `u(t)`: a rotation by `t` in the `(e₁, e₄)` plane.
pub fn section<S: Scalar>(angle: &Angle<S>) -> Matrix<S> {
    let mut u = Matrix::identity(5);
    u[(0, 0)] = angle.cos.clone();
    u[(0, 3)] = -angle.sin.clone();
    u[(3, 0)] = angle.sin.clone();
    u[(3, 3)] = angle.cos.clone();
    u
}

/// `u⁻¹u′`.
pub fn section_velocity<S: Scalar>() -> Matrix<S> {
    let mut g = Matrix::zeros(5, 5);
    g[(3, 0)] = S::one();
    g[(0, 3)] = -S::one();
    g
}

/// Coefficients of `ω₁, …, ω₇` (rows) on `dt, μ₁, …, ν₃` (columns).
#[derive(Clone, Debug, PartialEq)]
pub struct Pullback<S: Scalar> {
    pub coeffs: Matrix<S>,
}

impl<S: Scalar> Pullback<S> {
    pub fn max_difference(&self, other: &Self) -> f64 {
        self.coeffs.sub(&other.coeffs).max_abs()
    }

    /// `ωₖ` (0-based `k`) restricted to the orbit, as a form in the orbit variables.
    pub fn orbit_form(&self, k: usize) -> InvariantForm<S> {
        InvariantForm::one_form(&self.coeffs.row(k)[1..])
    }

    /// The 6×6 block of the orbit directions `ω₁, ω₂, ω₃, ω₅, ω₆, ω₇` over `μ, ν`.
    pub fn orbit_block(&self) -> Matrix<S> {
        let rows = [0, 1, 2, 4, 5, 6].iter().map(|&k| self.coeffs.row(k)[1..].to_vec()).collect();
        Matrix::from_rows(rows)
    }

    /// Rank of [`Self::orbit_block`]; 6 on principal orbits.
    pub fn orbit_rank(&self, tol: f64) -> usize {
        self.orbit_block().rank(tol)
    }
}

/// The pullback of `ω₁, …, ω₇` to `ℝ × SO(4)` under `(t, A) ↦ A·u(t)`, from
/// `u⁻¹(A⁻¹dA)u + u⁻¹u′ dt`.
pub fn pullback_coframe<S: Scalar>(angle: &Angle<S>) -> Pullback<S> {
    let so5 = So5::<S>::new();
    let so4 = So4Coframe::<S>::new();
    let u = section(angle);
    let ut = u.transpose();
    let mut columns = vec![so5.omega_part(&section_velocity())];
    columns.extend(so4.algebra.basis().iter().map(|y| so5.omega_part(&ut.mul(y).mul(&u))));
    Pullback {
        coeffs: Matrix::from_columns(&columns),
    }
}

/// Which sign to use in the `ω₅` row of the closed-form pullback.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Omega5Sign {
    /// `−(3√5/20) sin t (μ₁ + ν₁)`, which agrees with the computed pullback.
    Corrected,
    /// `−(3√5/20) sin t (μ₁ − ν₁)`.
    Printed,
}

/// The closed-form pullback, using `√7 cos(t ∓ φ) = √3 cos t ± 2 sin t` for
/// `φ = arctan(2/√3)`.
pub fn closed_form_pullback<S: Scalar>(angle: &Angle<S>, omega5: Omega5Sign) -> Pullback<S> {
    let (c, s) = (angle.cos.clone(), angle.sin.clone());
    let q = |n: i64, d: i64| S::from_ratio(n, d);
    let r3 = S::surd(3);
    let one = S::one();
    let two = S::from_int(2);
    let minus = r3.clone() * c.clone() + two.clone() * s.clone();
    let plus = r3.clone() * c.clone() - two.clone() * s.clone();
    let mut m = Matrix::zeros(7, 7);
    let k1 = q(3, 20);
    m[(0, 1)] = k1.clone() * (two.clone() - c.clone());
    m[(0, 4)] = -(k1 * (two + c.clone()));
    let k2 = S::radical(3, 40, 2);
    m[(1, 2)] = k2.clone() * (r3.clone() - minus.clone());
    m[(1, 5)] = k2.clone() * (r3.clone() + minus);
    m[(2, 3)] = k2.clone() * (r3.clone() - plus.clone());
    m[(2, 6)] = -(k2 * (r3 + plus));
    m[(3, 0)] = S::radical(3, 10, 5);
    let k5 = -(S::radical(3, 20, 5) * s);
    m[(4, 1)] = k5.clone();
    m[(4, 4)] = match omega5 {
        Omega5Sign::Corrected => k5,
        Omega5Sign::Printed => -k5,
    };
    let k6 = S::radical(3, 40, 10);
    m[(5, 2)] = k6.clone() * (one.clone() + c.clone());
    m[(5, 5)] = k6.clone() * (one.clone() - c.clone());
    m[(6, 3)] = k6.clone() * (-one.clone() - c.clone());
    m[(6, 6)] = k6 * (one - c);
    Pullback { coeffs: m }
}

/// Per-row deviation of the computed pullback from the closed form.
pub fn pullback_row_residuals<S: Scalar>(angle: &Angle<S>, omega5: Omega5Sign) -> [f64; 7] {
    let a = pullback_coframe(angle).coeffs;
    let b = closed_form_pullback(angle, omega5).coeffs;
    std::array::from_fn(|k| a.row(k).iter().zip(b.row(k)).map(|(x, y)| (x.clone() - y).magnitude()).fold(0.0, f64::max))
}

/// `Ω = −ω₁₅ − ω₂₆ − ω₃₇` on `ℝ⁷`.
pub fn omega7<S: Scalar>() -> InvariantForm<S> {
    let m = |i: usize, j: usize| InvariantForm::monomial(7, &[i - 1, j - 1], -S::one());
    m(1, 5).add(&m(2, 6)).add(&m(3, 7))
}

/// `ℜΥ = ω₁₂₃ − ω₁₆₇ + ω₂₅₇ − ω₃₅₆` on `ℝ⁷`.
pub fn re_upsilon7<S: Scalar>() -> InvariantForm<S> {
    let m = |i: usize, j: usize, k: usize, c: i64| InvariantForm::monomial(7, &[i - 1, j - 1, k - 1], S::from_int(c));
    m(1, 2, 3, 1).add(&m(1, 6, 7, -1)).add(&m(2, 5, 7, 1)).add(&m(3, 5, 6, -1))
}

/// `ℑΥ = e₄ ⌟ ∗φ` on `ℝ⁷`.
pub fn im_upsilon7<S: Scalar>() -> InvariantForm<S> {
    star_phi::<S>().interior_basis(3)
}

/// How `(Ω, ℜΥ)` sit inside the ambient G₂-structure with unit normal `e₄`.
#[derive(Clone, Debug)]
pub struct AmbientIdentities {
    /// `e₄ ⌟ φ = Ω`.
    pub omega_is_normal_contraction: bool,
    /// `φ` restricted to `e₄⊥` is `ℜΥ`.
    pub re_upsilon_is_restriction: bool,
    /// `φ = ω₄∧Ω + ℜΥ`.
    pub phi_splits: bool,
}

pub fn ambient_identities() -> AmbientIdentities {
    let phi = phi::<FieldScalar>();
    let omega = omega7::<FieldScalar>();
    let re = re_upsilon7::<FieldScalar>();
    let restriction = phi.filter(|m| m & (1 << 3) == 0);
    let e4 = InvariantForm::basis(7, 3);
    AmbientIdentities {
        omega_is_normal_contraction: phi.interior_basis(3).sub(&omega).is_zero(),
        re_upsilon_is_restriction: restriction.sub(&re).is_zero(),
        phi_splits: e4.wedge(&omega).add(&re).sub(&phi).is_zero(),
    }
}

/// The SU(3)-structure induced on the principal orbit at `t`, in the orbit variables.
#[derive(Clone, Debug)]
pub struct OrbitStructure<S: Scalar> {
    pub t: f64,
    pub omega: InvariantForm<S>,
    pub re_upsilon: InvariantForm<S>,
    pub im_upsilon: InvariantForm<S>,
}

impl<S: Scalar> OrbitStructure<S> {
    /// `Ω³`, a multiple of `μ₁₂₃ν₁₂₃`.
    pub fn omega_cubed(&self) -> S {
        self.omega.wedge(&self.omega).wedge(&self.omega).coeff((1 << ORBIT_DIM) - 1)
    }
}

pub fn orbit_su3<S: Scalar>(angle: &Angle<S>) -> Result<OrbitStructure<S>, Cohom1Error> {
    let pb = pullback_coframe(angle);
    let rank = pb.orbit_rank(1e-9);
    if rank < ORBIT_DIM {
        return Err(Cohom1Error::SingularOrbit(angle.t, rank));
    }
    let images: Vec<InvariantForm<S>> = (0..7).map(|k| pb.orbit_form(k)).collect();
    Ok(OrbitStructure {
        t: angle.t,
        omega: omega7::<S>().substitute(&images),
        re_upsilon: re_upsilon7::<S>().substitute(&images),
        im_upsilon: im_upsilon7::<S>().substitute(&images),
    })
}

/// `dℜΥ = c·Ω∧Ω` on the orbit, with the intrinsic differential of so(4).
pub fn verify_nearly_half_flat<S: Scalar>(
    so4: &So4Coframe<S>,
    angle: &Angle<S>,
    tol: f64,
) -> Result<Proportionality<S>, Cohom1Error> {
    let st = orbit_su3(angle)?;
    Ok(proportionality(&so4.d(&st.re_upsilon), &st.omega.wedge(&st.omega), tol))
}

/// Distance of `dΩ` from `span(ℜΥ, ℑΥ)` on the orbit; zero exactly when the orbit is nearly
/// Kähler up to the choice of phase and scale.
pub fn nearly_kahler_defect<S: RealScalar>(so4: &So4Coframe<S>, angle: &Angle<S>) -> Result<f64, Cohom1Error> {
    let st = orbit_su3(angle)?;
    let d_omega = so4.d(&st.omega);
    let masks: Vec<u32> = (0u32..1 << ORBIT_DIM).filter(|m| m.count_ones() == 3).collect();
    let vec_of = |f: &InvariantForm<S>| -> Vec<f64> { masks.iter().map(|&m| f.coeff(m).to_f64()).collect() };
    let target = vec_of(&d_omega);
    let span = crate::linalg::orthonormalize(&[vec_of(&st.re_upsilon), vec_of(&st.im_upsilon)]);
    let mut residual = target.clone();
    for b in &span {
        let c = dot(&target, b);
        for (r, x) in residual.iter_mut().zip(b) {
            *r -= c * x;
        }
    }
    Ok(dot(&residual, &residual).sqrt())
}

/// The SO(4)-stabilizer of `π(u(t))`, computed as the SO(3)-stabilizer of `u(t)⁻¹e₁ ∈ H₂`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrbitStabilizer {
    /// A conjugate of O(2).
    Circle,
    /// A finite group of the given order.
    Finite(usize),
}

pub fn orbit_stabilizer(t: f64, tol: f64) -> OrbitStabilizer {
    let u = section(&Angle::float(t));
    let v = u.transpose().column(0);
    let h2 = HarmonicModule::<f64>::new(2);
    let tangent: Vec<Vec<f64>> = (0..3)
        .map(|i| {
            let mut x = [0.0; 3];
            x[i] = 1.0;
            h2.drho(&so3_element(&x)).mul_vec(&v)
        })
        .collect();
    if Matrix::from_columns(&tangent).rank(tol) < 3 {
        return OrbitStabilizer::Circle;
    }
    // Distinct eigenvalues: the stabilizer is the diagonal sign group of the eigenframe.
    let (_, frame) = symmetric_eigen(&matrix_of(&v));
    let mut order = 0;
    for signs in 0..8u32 {
        let d: Vec<f64> = (0..3).map(|i| if signs >> i & 1 == 1 { -1.0 } else { 1.0 }).collect();
        let r = frame.mul(&Matrix::diag(&d)).mul(&frame.transpose());
        if r.determinant() > 0.0 && h2.rho(&r).mul_vec(&v).iter().zip(&v).all(|(a, b)| (a - b).abs() <= tol) {
            order += 1;
        }
    }
    OrbitStabilizer::Finite(order)
}

/// Parameters in `[0, 2π)` where the orbit block of the pullback drops rank, found by sign
/// changes of its determinant and bisection.
pub fn singular_parameters(samples: usize) -> Vec<f64> {
    let det = |t: f64| pullback_coframe(&Angle::float(t)).orbit_block().determinant();
    let step = std::f64::consts::TAU / samples as f64;
    let mut out = Vec::new();
    for i in 0..samples {
        let (mut a, mut b) = (i as f64 * step, (i + 1) as f64 * step);
        let (mut fa, fb) = (det(a), det(b));
        if fa == 0.0 || fa.abs() < 1e-15 {
            out.push(a);
            continue;
        }
        if fa * fb > 0.0 {
            continue;
        }
        for _ in 0..60 {
            let m = 0.5 * (a + b);
            let fm = det(m);
            if fa * fm <= 0.0 {
                b = m;
            } else {
                a = m;
                fa = fm;
            }
        }
        let root = 0.5 * (a + b);
        if root < std::f64::consts::TAU - 1e-9 && out.last().is_none_or(|&r: &f64| (root - r).abs() > 1e-9) {
            out.push(root);
        }
    }
    out
}

/// The orbit space: the interval between the first two singular parameters.
pub fn orbit_space(samples: usize) -> Option<(f64, f64)> {
    let s = singular_parameters(samples);
    (s.len() >= 2).then(|| (s[0], s[1]))
}

/// Orbit tangent directions in the `ω`-coordinates of `ℝ⁷`.
const ORBIT_AXES: [usize; 6] = [0, 1, 2, 4, 5, 6];

/// `(ℜΥ(E) = 1, φ(E) = 1)` for an orbit-tangent 3-plane `E`.
pub fn slag_implies_assoc(angle: &Angle<f64>, e: &ThreePlane<f64>, tol: f64) -> Result<(bool, bool), Cohom1Error> {
    let pb = pullback_coframe(angle);
    if pb.orbit_rank(1e-9) < ORBIT_DIM {
        return Err(Cohom1Error::SingularOrbit(angle.t, pb.orbit_rank(1e-9)));
    }
    let image = pb.coeffs.mul(&Matrix::from_fn(7, 6, |r, c| if r == c + 1 { 1.0 } else { 0.0 }));
    let span_rank = image.rank(1e-9);
    for v in &e.basis {
        let mut cols = image.columns();
        cols.push(v.clone());
        if Matrix::from_columns(&cols).rank(1e-9) != span_rank {
            return Err(Cohom1Error::NotTangent);
        }
    }
    let on = e.orthonormal();
    let re = re_upsilon7::<f64>().evaluate(&on.basis);
    let ph = phi::<f64>().evaluate(&on.basis);
    Ok(((re - 1.0).abs() <= tol, (ph - 1.0).abs() <= tol))
}

/// Outcome of a sweep over random orbit-tangent planes.
#[derive(Clone, Debug)]
pub struct SlagSweep {
    pub samples: usize,
    pub calibrated: usize,
    pub counterexamples: usize,
}

/// Random planes in `e₄⊥`, each pushed to a ℜΥ-calibrated plane by gradient ascent.
pub fn slag_sweep(angle: &Angle<f64>, samples: usize, seed: u64, tol: f64) -> Result<SlagSweep, Cohom1Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let re6 = re_upsilon7::<f64>().substitute(
        &(0..7)
            .map(|k| match ORBIT_AXES.iter().position(|&a| a == k) {
                Some(i) => InvariantForm::basis(6, i),
                None => InvariantForm::zero(6),
            })
            .collect::<Vec<_>>(),
    );
    let embed = |v: &[f64]| -> Vec<f64> {
        let mut w = vec![0.0; 7];
        for (i, &a) in ORBIT_AXES.iter().enumerate() {
            w[a] = v[i];
        }
        w
    };
    let mut out = SlagSweep {
        samples,
        calibrated: 0,
        counterexamples: 0,
    };
    for _ in 0..samples {
        let start: [Vec<f64>; 3] = std::array::from_fn(|_| (0..6).map(|_| rng.gen_range(-1.0..1.0)).collect());
        let mut basis = start.clone();
        if re6.evaluate(&crate::linalg::orthonormalize(&basis)) < 0.0 {
            basis[0] = basis[0].iter().map(|x| -x).collect();
        }
        let plane = match calibrated_ascent(&re6, &basis, 2000, 1e-13) {
            Ok(r) => ThreePlane::new(embed(&r.plane.basis[0]), embed(&r.plane.basis[1]), embed(&r.plane.basis[2])),
            Err(_) => ThreePlane::new(embed(&basis[0]), embed(&basis[1]), embed(&basis[2])),
        };
        let (is_slag, is_assoc) = slag_implies_assoc(angle, &plane, tol)?;
        if is_slag {
            out.calibrated += 1;
        }
        if is_slag && !is_assoc {
            out.counterexamples += 1;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn section_velocity_generates_section() {
        let t = 0.37;
        let u = section(&Angle::float(t));
        let v = crate::linalg::expm(&section_velocity::<f64>().scale(&t));
        assert!(u.sub(&v).max_abs() < 1e-14);
    }

    #[test]
    fn closed_form_identity_for_shifted_cosine() {
        let phi = (2.0 / 3f64.sqrt()).atan();
        for t in [0.0, 0.4, 1.3, 2.9] {
            let lhs = 7f64.sqrt() * (t - phi).cos();
            let rhs = 3f64.sqrt() * t.cos() + 2.0 * t.sin();
            assert!((lhs - rhs).abs() < 1e-14);
        }
    }

    #[test]
    fn ambient_forms_split_phi() {
        let a = ambient_identities();
        assert!(a.omega_is_normal_contraction && a.re_upsilon_is_restriction && a.phi_splits);
    }
}
