//! The flag manifold Gr₂⁺(TS⁴) = SO(5)/T²: the complex coframe `ζ₁…ζ₄, ρ₁, ρ₂`, the almost
//! complex structure J, the nearly Kähler forms on CP³ and the immersion criterion for
//! ruled associatives.

use crate::forms::{antiderivation, complex_ce, complexify, proportionality, InvariantForm, Proportionality};
use crate::liealg::{So5, DIM};
use crate::linalg::Matrix;
use crate::scalar::{ComplexScalar, Scalar};

type C<S> = ComplexScalar<S>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FlagError {
    #[error("|W₁|² + |W₂|² + |W₃|² + |W₄|² = {0}, expected 1")]
    NotNormalized(f64),
}

/// Index of `ζᵢ` (1-based `i`) in the complex coframe.
pub const fn zeta(i: usize) -> usize {
    i - 1
}

/// Index of `ζ̄ᵢ`.
pub const fn zeta_bar(i: usize) -> usize {
    i + 3
}

pub const RHO1: usize = 8;
pub const RHO2: usize = 9;

/// Mask of the ideal generated by `ζ₁, …, ζ₄`.
pub const ZETA_IDEAL: u32 = 0b1111;

/// Mask of the u(2) directions `ζ₄, ζ̄₄, ρ₁, ρ₂`.
pub const U2_DIRECTIONS: u32 = (1 << 3) | (1 << 7) | (1 << RHO1) | (1 << RHO2);

pub const NAMES: [&str; 10] = ["ζ1", "ζ2", "ζ3", "ζ4", "ζ̄1", "ζ̄2", "ζ̄3", "ζ̄4", "ρ1", "ρ2"];

/// The complex coframe `(ζ₁…ζ₄, ζ̄₁…ζ̄₄, ρ₁, ρ₂)` of so(5) and the change of basis to
/// `(γ₁, γ₂, γ₃, ω₁, …, ω₇)`.
pub struct FlagCoframe<S: Scalar> {
    pub so5: So5<S>,
    /// Row `j` is the `j`-th complex 1-form in the `(γ, ω)` basis.
    pub t: Matrix<C<S>>,
    pub t_inv: Matrix<C<S>>,
}

impl<S: Scalar> FlagCoframe<S> {
    pub fn new() -> Self {
        let so5 = So5::<S>::new();
        let mu = |a: usize, b: usize| -> Vec<C<S>> {
            so5.basis().iter().map(|m| C::real(m[(a - 1, b - 1)].clone())).collect()
        };
        let i = C::<S>::i();
        let lin = |terms: &[(&Vec<C<S>>, C<S>)]| -> Vec<C<S>> {
            (0..DIM)
                .map(|k| terms.iter().fold(C::zero(), |acc, (v, c)| acc + v[k].clone() * c.clone()))
                .collect()
        };
        let r2 = C::real(S::radical(1, 2, 2));
        let half = C::real(S::from_ratio(1, 2));
        let (m12, m13, m14, m15) = (mu(1, 2), mu(1, 3), mu(1, 4), mu(1, 5));
        let (m23, m24, m25, m34, m35, m45) = (mu(2, 3), mu(2, 4), mu(2, 5), mu(3, 4), mu(3, 5), mu(4, 5));
        let neg = |c: &C<S>| -c.clone();
        let z1 = lin(&[(&m12, r2.clone()), (&m13, neg(&(r2.clone() * i.clone())))]);
        let z2 = lin(&[(&m14, r2.clone()), (&m15, neg(&(r2.clone() * i.clone())))]);
        let hi = half.clone() * i.clone();
        let z3 = lin(&[(&m24, half.clone()), (&m35, neg(&half)), (&m25, hi.clone()), (&m34, hi.clone())]);
        let z4 = lin(&[(&m24, half.clone()), (&m35, half.clone()), (&m25, neg(&hi)), (&m34, hi.clone())]);
        let rho1 = lin(&[(&m23, half.clone()), (&m45, half.clone())]);
        let rho2 = lin(&[(&m23, neg(&half)), (&m45, half)]);
        let conj = |v: &Vec<C<S>>| v.iter().map(Scalar::conj).collect::<Vec<_>>();
        let rows = vec![
            z1.clone(),
            z2.clone(),
            z3.clone(),
            z4.clone(),
            conj(&z1),
            conj(&z2),
            conj(&z3),
            conj(&z4),
            rho1,
            rho2,
        ];
        let t = Matrix::from_rows(rows);
        let t_inv = t.inverse().expect("the complex coframe is a basis");
        FlagCoframe { so5, t, t_inv }
    }

    /// A 1-form of the complex coframe (`NAMES[index]`), in the flag basis.
    pub fn form(&self, index: usize) -> InvariantForm<C<S>> {
        InvariantForm::basis(DIM, index)
    }

    /// Re-express a form on the `(γ, ω)` basis in the flag basis.
    pub fn to_flag(&self, f: &InvariantForm<C<S>>) -> InvariantForm<C<S>> {
        let images: Vec<InvariantForm<C<S>>> = (0..DIM).map(|k| InvariantForm::one_form(&self.t_inv.row(k))).collect();
        f.substitute(&images)
    }

    /// Re-express a form on the flag basis in the `(γ, ω)` basis.
    pub fn to_standard(&self, f: &InvariantForm<C<S>>) -> InvariantForm<C<S>> {
        let images: Vec<InvariantForm<C<S>>> = (0..DIM).map(|j| InvariantForm::one_form(&self.t.row(j))).collect();
        f.substitute(&images)
    }

    /// Exterior derivative of a form written in the flag basis.
    pub fn d(&self, f: &InvariantForm<C<S>>) -> InvariantForm<C<S>> {
        let ce = complex_ce(&self.so5.algebra);
        self.to_flag(&ce(&self.to_standard(f)))
    }

    /// Complex conjugation in the flag basis (swaps `ζᵢ ↔ ζ̄ᵢ`, fixes `ρ₁, ρ₂`).
    pub fn conj(&self, f: &InvariantForm<C<S>>) -> InvariantForm<C<S>> {
        let images: Vec<InvariantForm<C<S>>> = (0..DIM)
            .map(|j| {
                let k = match j {
                    0..=3 => j + 4,
                    4..=7 => j - 4,
                    _ => j,
                };
                InvariantForm::basis(DIM, k)
            })
            .collect();
        f.conj().substitute(&images)
    }

    /// Real part `(f + f̄)/2` written in the flag basis.
    pub fn re(&self, f: &InvariantForm<C<S>>) -> InvariantForm<C<S>> {
        f.add(&self.conj(f)).scale(&C::real(S::from_ratio(1, 2)))
    }

    /// Imaginary part `(f − f̄)/2i` written in the flag basis.
    pub fn im(&self, f: &InvariantForm<C<S>>) -> InvariantForm<C<S>> {
        f.sub(&self.conj(f)).scale(&C::new(S::zero(), S::from_ratio(-1, 2)))
    }

    /// The Maurer–Cartan entry `μ_ab` (1-based) in the flag basis.
    pub fn mu(&self, a: usize, b: usize) -> InvariantForm<C<S>> {
        self.to_flag(&complexify(&self.so5.mc_entry(a - 1, b - 1)))
    }
}

impl<S: Scalar> Default for FlagCoframe<S> {
    fn default() -> Self {
        Self::new()
    }
}

/// Outcome of one identity check.
#[derive(Clone, Debug)]
pub struct IdentityCheck {
    pub name: String,
    pub holds: bool,
    /// Largest coefficient of the residual.
    pub residual: f64,
    pub detail: String,
}

fn check<S: Scalar>(name: &str, residual: &InvariantForm<C<S>>, tol: f64) -> IdentityCheck {
    IdentityCheck {
        name: name.to_string(),
        holds: residual.negligible(tol),
        residual: residual.max_abs(),
        detail: if residual.is_empty() {
            String::new()
        } else {
            residual.display_with(&NAMES).to_string()
        },
    }
}

fn ideal_check<S: Scalar>(name: &str, f: &InvariantForm<C<S>>, tol: f64) -> IdentityCheck {
    let outside = f.filter(|m| m & ZETA_IDEAL == 0);
    IdentityCheck {
        name: name.to_string(),
        holds: outside.negligible(tol),
        residual: outside.max_abs(),
        detail: if outside.is_empty() {
            String::new()
        } else {
            outside.display_with(&NAMES).to_string()
        },
    }
}

/// The congruences `dζ₁ ≡ ζ̄₂∧ζ̄₃`, `dζ₂ ≡ ζ̄₃∧ζ̄₁`, `dζ₃ ≡ ζ̄₁∧ζ̄₂`, `dζ₄ ≡ 0` modulo
/// `ζ₁…ζ₄`, plus the negative control that `dζ₁` alone is not in the ideal.
pub fn verify_jstruct<S: Scalar>(fc: &FlagCoframe<S>, tol: f64) -> Vec<IdentityCheck> {
    let z = |i| fc.form(zeta(i));
    let zb = |i| fc.form(zeta_bar(i));
    let mut out = vec![
        ideal_check("dζ1 - ζ̄2∧ζ̄3", &fc.d(&z(1)).sub(&zb(2).wedge(&zb(3))), tol),
        ideal_check("dζ2 - ζ̄3∧ζ̄1", &fc.d(&z(2)).sub(&zb(3).wedge(&zb(1))), tol),
        ideal_check("dζ3 - ζ̄1∧ζ̄2", &fc.d(&z(3)).sub(&zb(1).wedge(&zb(2))), tol),
        ideal_check("dζ4", &fc.d(&z(4)), tol),
    ];
    let mut control = ideal_check("negative control dζ1", &fc.d(&z(1)), tol);
    control.holds = !control.holds;
    out.push(control);
    out
}

/// The 4×4 matrix relating `(ω₂+iω₃, ω₄+iω₅, ω₆−iω₇, γ₂−iγ₃)` to `(ζ₁, …, ζ₄)`.
pub fn omegazeta_matrix<S: Scalar>() -> Matrix<C<S>> {
    let r = |n: i64, p: u32| C::real(S::radical(n, 10, p));
    let ri = |n: i64, p: u32| C::new(S::zero(), S::radical(n, 10, p));
    let z = C::<S>::zero;
    Matrix::from_rows(vec![
        vec![r(-6, 1), z(), z(), r(3, 6)],
        vec![z(), r(-3, 10), z(), z()],
        vec![z(), z(), r(-3, 10), z()],
        vec![ri(2, 6), z(), z(), ri(4, 1)],
    ])
}

pub fn verify_omegazeta<S: Scalar>(fc: &FlagCoframe<S>, tol: f64) -> Vec<IdentityCheck> {
    let i = C::<S>::i();
    let th = |k: usize| complexify(&fc.so5.coframe(k));
    let w = |n: usize| th(n + 2);
    let g = |n: usize| th(n - 1);
    let lhs = [
        w(2).add(&w(3).scale(&i)),
        w(4).add(&w(5).scale(&i)),
        w(6).sub(&w(7).scale(&i)),
        g(2).sub(&g(3).scale(&i)),
    ];
    let m = omegazeta_matrix::<S>();
    let names = ["ω2+iω3", "ω4+iω5", "ω6-iω7", "γ2-iγ3"];
    (0..4)
        .map(|r| {
            let rhs = (0..4).fold(InvariantForm::zero(DIM), |acc, c| acc.add(&fc.form(zeta(c + 1)).scale(&m[(r, c)])));
            check(names[r], &fc.to_flag(&lhs[r]).sub(&rhs), tol)
        })
        .collect()
}

/// The closed-form right-hand sides of `dζ₁, …, dζ₄, dρ₁, dρ₂`.
pub fn structflag_rhs<S: Scalar>(fc: &FlagCoframe<S>) -> [InvariantForm<C<S>>; 6] {
    let z = |i| fc.form(zeta(i));
    let zb = |i| fc.form(zeta_bar(i));
    let r1 = fc.form(RHO1);
    let r2 = fc.form(RHO2);
    let ci = |re: i64, im: i64| C::new(S::from_int(re), S::from_int(im));
    let half_i = |k: i64| C::new(S::zero(), S::from_ratio(k, 2));
    [
        r1.sub(&r2).wedge(&z(1)).scale(&ci(0, -1)).add(&z(2).wedge(&zb(4))).add(&zb(2).wedge(&zb(3))),
        r1.add(&r2).wedge(&z(2)).scale(&ci(0, -1)).sub(&z(1).wedge(&z(4))).add(&zb(3).wedge(&zb(1))),
        r1.wedge(&z(3)).scale(&ci(0, 2)).add(&zb(1).wedge(&zb(2))),
        r2.wedge(&z(4)).scale(&ci(0, -2)).add(&zb(1).wedge(&z(2))),
        z(1).wedge(&zb(1))
            .add(&z(2).wedge(&zb(2)))
            .sub(&z(3).wedge(&zb(3)).scale(&ci(2, 0)))
            .scale(&half_i(-1)),
        z(1).wedge(&zb(1))
            .scale(&ci(-1, 0))
            .add(&z(2).wedge(&zb(2)))
            .add(&z(4).wedge(&zb(4)).scale(&ci(2, 0)))
            .scale(&half_i(-1)),
    ]
}

pub fn verify_structflag<S: Scalar>(fc: &FlagCoframe<S>, tol: f64) -> Vec<IdentityCheck> {
    let rhs = structflag_rhs(fc);
    let lhs = [zeta(1), zeta(2), zeta(3), zeta(4), RHO1, RHO2];
    let names = ["dζ1", "dζ2", "dζ3", "dζ4", "dρ1", "dρ2"];
    (0..6).map(|k| check(names[k], &fc.d(&fc.form(lhs[k])).sub(&rhs[k]), tol)).collect()
}

/// `d² = 0` for the antiderivation defined by the closed-form structure equations alone.
pub fn structflag_d_squared<S: Scalar>(fc: &FlagCoframe<S>) -> f64 {
    let rhs = structflag_rhs(fc);
    let table: Vec<InvariantForm<C<S>>> = (0..DIM)
        .map(|j| match j {
            0..=3 => rhs[j].clone(),
            4..=7 => fc.conj(&rhs[j - 4]),
            RHO1 => rhs[4].clone(),
            _ => rhs[5].clone(),
        })
        .collect();
    table
        .iter()
        .map(|f| antiderivation(f, &table).max_abs())
        .fold(0.0, f64::max)
}

/// Proportionality constants of the nearly Kähler pair `(Ω, Ψ)`.
#[derive(Clone, Debug)]
pub struct NkConstants<S: Scalar> {
    /// `dΩ = c·ℜΨ`.
    pub d_omega_re_psi: Proportionality<C<S>>,
    /// `dΩ = c·ℑΨ`.
    pub d_omega_im_psi: Proportionality<C<S>>,
    /// `dℜΨ = c·Ω∧Ω`.
    pub d_re_psi_omega2: Proportionality<C<S>>,
    /// `dℑΨ = c·Ω∧Ω`.
    pub d_im_psi_omega2: Proportionality<C<S>>,
}

/// The nearly Kähler structure on CP³ = SO(5)/U(2).
#[derive(Clone, Debug)]
pub struct NearlyKahlerReport<S: Scalar> {
    /// Constants for `Ψ = ζ₁∧ζ₂∧ζ₃`.
    pub psi: NkConstants<S>,
    /// Constants for the phase-rotated form `iΨ`.
    pub i_psi: NkConstants<S>,
    /// Largest coefficient of `dΩ` and `dΨ` involving a u(2) direction.
    pub u2_leakage: f64,
    /// Largest coefficient of `Ω∧Ψ`.
    pub omega_wedge_psi: f64,
}

/// `Ω = (i/2)Σ ζₖ∧ζ̄ₖ` and `Ψ = ζ₁∧ζ₂∧ζ₃` over `k = 1, 2, 3`.
pub fn nk_forms<S: Scalar>(fc: &FlagCoframe<S>) -> (InvariantForm<C<S>>, InvariantForm<C<S>>) {
    let omega = (1..=3)
        .fold(InvariantForm::zero(DIM), |acc, k| acc.add(&fc.form(zeta(k)).wedge(&fc.form(zeta_bar(k)))))
        .scale(&C::new(S::zero(), S::from_ratio(1, 2)));
    let psi = fc.form(zeta(1)).wedge(&fc.form(zeta(2))).wedge(&fc.form(zeta(3)));
    (omega, psi)
}

fn nk_constants<S: Scalar>(
    fc: &FlagCoframe<S>,
    omega: &InvariantForm<C<S>>,
    psi: &InvariantForm<C<S>>,
    tol: f64,
) -> NkConstants<S> {
    let d_omega = fc.d(omega);
    let d_psi = fc.d(psi);
    let omega2 = omega.wedge(omega);
    NkConstants {
        d_omega_re_psi: proportionality(&d_omega, &fc.re(psi), tol),
        d_omega_im_psi: proportionality(&d_omega, &fc.im(psi), tol),
        d_re_psi_omega2: proportionality(&fc.re(&d_psi), &omega2, tol),
        d_im_psi_omega2: proportionality(&fc.im(&d_psi), &omega2, tol),
    }
}

pub fn verify_nk_cp3<S: Scalar>(fc: &FlagCoframe<S>, tol: f64) -> NearlyKahlerReport<S> {
    let (omega, psi) = nk_forms(fc);
    let d_omega = fc.d(&omega);
    let d_psi = fc.d(&psi);
    let leak = d_omega
        .filter(|m| m & U2_DIRECTIONS != 0)
        .max_abs()
        .max(d_psi.filter(|m| m & U2_DIRECTIONS != 0).max_abs());
    NearlyKahlerReport {
        psi: nk_constants(fc, &omega, &psi, tol),
        i_psi: nk_constants(fc, &omega, &psi.scale(&C::i()), tol),
        u2_leakage: leak,
        omega_wedge_psi: omega.wedge(&psi).max_abs(),
    }
}

/// Pointwise data `ζᵢ = Wᵢσ` of a J-holomorphic curve.
pub type RuledPointData = [ComplexScalar<f64>; 4];

/// Whether the ruled associative attached to the data is immersed at the point: false
/// exactly when `2W₁ − √6W₄`, `W₂` and `W₃` all vanish.
pub fn immersion_criterion(w: &RuledPointData, tol: f64) -> Result<bool, FlagError> {
    let total: f64 = w.iter().map(|x| x.norm_sqr()).sum();
    if (total - 1.0).abs() > tol.max(1e-12) {
        return Err(FlagError::NotNormalized(total));
    }
    let a = w[0].scale(&2.0) - w[3].scale(&6f64.sqrt());
    Ok(!(a.magnitude() <= tol && w[1].magnitude() <= tol && w[2].magnitude() <= tol))
}

/// The Gauss lift of the Veronese surface: `W = (√(3/5), 0, 0, √(2/5))`.
pub fn veronese_gauss_lift_data() -> RuledPointData {
    let z = ComplexScalar::new(0.0, 0.0);
    [ComplexScalar::new(0.6f64.sqrt(), 0.0), z.clone(), z.clone(), ComplexScalar::new(0.4f64.sqrt(), 0.0)]
}

/// Normal-lift data `W = (0, cos θ, −i sin θ, 0)`.
pub fn normal_lift_data(theta: f64) -> RuledPointData {
    let z = ComplexScalar::new(0.0, 0.0);
    [z.clone(), ComplexScalar::new(theta.cos(), 0.0), ComplexScalar::new(0.0, -theta.sin()), z]
}

/// The conditions `ζ₁ = ζ₄ = 0` and the resulting Maurer–Cartan pattern.
#[derive(Clone, Debug)]
pub struct NormalLiftCheck {
    /// `span(ℜζ₁, ℑζ₁, ℜζ₄, ℑζ₄) = span(μ₁₂, μ₁₃, μ₂₄+μ₃₅, μ₂₅−μ₃₄)`.
    pub annihilator_matches: bool,
    /// Largest deviation of the reduced Maurer–Cartan matrix from the closed-form pattern.
    pub pattern_residual: f64,
    pub pattern_matches: bool,
}

/// The closed-form Maurer–Cartan matrix on frames with `ζ₁ = ζ₄ = 0`.
pub fn normal_lift_pattern<S: Scalar>(fc: &FlagCoframe<S>) -> Vec<Vec<InvariantForm<C<S>>>> {
    let z2 = fc.form(zeta(2));
    let z3 = fc.form(zeta(3));
    let (re2, im2) = (fc.re(&z2), fc.im(&z2));
    let (re3, im3) = (fc.re(&z3), fc.im(&z3));
    let r1 = fc.form(RHO1);
    let r2 = fc.form(RHO2);
    let r2c = C::real(S::surd(2));
    let zero = InvariantForm::zero(DIM);
    let a = r1.sub(&r2);
    let b = r1.add(&r2);
    vec![
        vec![zero.clone(), zero.clone(), zero.clone(), re2.scale(&r2c), im2.scale(&-r2c.clone())],
        vec![zero.clone(), zero.clone(), a.clone(), re3.clone(), im3.clone()],
        vec![zero.clone(), a.neg(), zero.clone(), im3.clone(), re3.neg()],
        vec![re2.scale(&-r2c.clone()), re3.neg(), im3.neg(), zero.clone(), b.clone()],
        vec![im2.scale(&r2c), im3.neg(), re3.clone(), b.neg(), zero],
    ]
}

pub fn z5_normal_lift_check<S: Scalar>(fc: &FlagCoframe<S>, tol: f64) -> NormalLiftCheck {
    // Coefficient vectors, in (γ, ω) coordinates, of the real and imaginary parts of ζ₁, ζ₄.
    let parts = |row: usize| -> [Vec<S>; 2] {
        let r = fc.t.row(row);
        [r.iter().map(|c| c.re.clone()).collect(), r.iter().map(|c| c.im.clone()).collect()]
    };
    let [a, b] = parts(zeta(1));
    let [c, d] = parts(zeta(4));
    let mc = |i: usize, j: usize| -> Vec<S> { fc.so5.basis().iter().map(|m| m[(i - 1, j - 1)].clone()).collect() };
    let sum = |x: Vec<S>, y: Vec<S>, sign: S| -> Vec<S> { x.into_iter().zip(y).map(|(p, q)| p + sign.clone() * q).collect() };
    let target = vec![
        mc(1, 2),
        mc(1, 3),
        sum(mc(2, 4), mc(3, 5), S::one()),
        sum(mc(2, 5), mc(3, 4), -S::one()),
    ];
    let ours = vec![a, b, c, d];
    let rank = |v: &[Vec<S>]| Matrix::from_rows(v.to_vec()).rank(tol);
    let mut both = ours.clone();
    both.extend(target.clone());
    let annihilator_matches = rank(&ours) == 4 && rank(&target) == 4 && rank(&both) == 4;
    let pattern = normal_lift_pattern(fc);
    let killed = (1u32 << zeta(1)) | (1u32 << zeta_bar(1)) | (1u32 << zeta(4)) | (1u32 << zeta_bar(4));
    let mut worst = 0.0f64;
    for (i, row) in pattern.iter().enumerate() {
        for (j, expected) in row.iter().enumerate() {
            let reduced = fc.mu(i + 1, j + 1).filter(|m| m & killed == 0);
            worst = worst.max(reduced.sub(expected).max_abs());
        }
    }
    NormalLiftCheck {
        annihilator_matches,
        pattern_residual: worst,
        pattern_matches: worst <= tol,
    }
}

/// `ζᵢ(X)` for an element `X` of so(5), from its matrix entries.
pub fn zeta_values<S: Scalar>(fc: &FlagCoframe<S>, x: &Matrix<S>) -> [C<S>; 4] {
    let coords: Vec<C<S>> = fc.so5.coords(x).into_iter().map(C::real).collect();
    std::array::from_fn(|k| crate::linalg::dot(&fc.t.row(k), &coords))
}

/// Determinant of the complex matrix in the `(ω, γ) ↔ ζ` relation.
pub fn omegazeta_determinant<S: Scalar>() -> C<S> {
    omegazeta_matrix::<S>().determinant()
}

/// Determinant of the real change of basis from `(γ, ω)` to `(ℜζ₁…ℜζ₄, ℑζ₁…ℑζ₄, ρ₁, ρ₂)`.
pub fn real_frame_determinant<S: Scalar>(fc: &FlagCoframe<S>) -> S {
    let mut rows: Vec<Vec<S>> = (0..4).map(|k| fc.t.row(k).iter().map(|c| c.re.clone()).collect()).collect();
    rows.extend((0..4).map(|k| fc.t.row(k).iter().map(|c| c.im.clone()).collect::<Vec<_>>()));
    rows.push(fc.t.row(RHO1).iter().map(|c| c.re.clone()).collect());
    rows.push(fc.t.row(RHO2).iter().map(|c| c.re.clone()).collect());
    Matrix::from_rows(rows).determinant()
}

/// Largest `|ζ₁|, |ζ₄|` over the directions `hXh⁻¹`, `X ∈ k`, of a homogeneous orbit with frame `h`.
pub fn orbit_zeta_defect<S: Scalar>(fc: &FlagCoframe<S>, k: &[Matrix<S>], h: &Matrix<S>) -> f64 {
    let h_inv = h.inverse().expect("invertible frame");
    k.iter()
        .map(|x| {
            let z = zeta_values(fc, &h.mul(x).mul(&h_inv));
            z[0].magnitude().max(z[3].magnitude())
        })
        .fold(0.0, f64::max)
}

/// `|W₂|² + |W₃|²` for normalized data with `W₁ = W₄ = 0`.
pub fn normal_lift_norm(w: &RuledPointData) -> Option<f64> {
    (w[0].magnitude() == 0.0 && w[3].magnitude() == 0.0).then(|| w[1].norm_sqr() + w[2].norm_sqr())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coframe_round_trip() {
        let fc = FlagCoframe::<f64>::new();
        let f = fc.form(zeta(2)).wedge(&fc.form(RHO1));
        assert!(fc.to_flag(&fc.to_standard(&f)).sub(&f).negligible(1e-12));
        assert!(fc.conj(&fc.conj(&f)).sub(&f).negligible(1e-12));
    }

    #[test]
    fn immersion_examples() {
        assert!(!immersion_criterion(&veronese_gauss_lift_data(), 1e-12).unwrap());
        assert!(immersion_criterion(&normal_lift_data(0.7), 1e-12).unwrap());
        let one = ComplexScalar::new(1.0, 0.0);
        let z = ComplexScalar::new(0.0, 0.0);
        assert!(immersion_criterion(&[one.clone(), z.clone(), z.clone(), z.clone()], 1e-12).unwrap());
        assert!(immersion_criterion(&[one.clone(), one, z.clone(), z], 1e-12).is_err());
    }
}
