//! The SO(3)-invariant G₂-structure on `H₃`, associative 3-planes and the cone of
//! harmonic parts of cubes of linear forms.
//!
//! `φ` and `∗φ` are written in the coframe `(ω₁, …, ω₇)`, stored here with indices `0..7`.

use crate::forms::{mask_of, InvariantForm};
use crate::liealg::{omega, So5, DIM};
use crate::linalg::{dot, norm, orthonormalize, Matrix};
use crate::poly::{monomials, Poly};
use crate::rep::{harmonic_part_cubic, HarmonicModule};
use crate::scalar::{RealScalar, Scalar};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum G2Error {
    #[error("calibration value {0} is not positive; ascent needs a positively oriented start")]
    NonPositiveStart(f64),
    #[error("plane basis is degenerate")]
    Degenerate,
}

/// Signed index triples of `φ` (1-based).
pub const PHI_TERMS: [(i8, [usize; 3]); 7] = [
    (1, [1, 2, 3]),
    (1, [1, 4, 5]),
    (-1, [1, 6, 7]),
    (1, [2, 4, 6]),
    (1, [2, 5, 7]),
    (1, [3, 4, 7]),
    (-1, [3, 5, 6]),
];

/// Signed index quadruples of `∗φ` (1-based).
pub const STAR_PHI_TERMS: [(i8, [usize; 4]); 7] = [
    (1, [4, 5, 6, 7]),
    (1, [2, 3, 6, 7]),
    (-1, [2, 3, 4, 5]),
    (1, [1, 3, 5, 7]),
    (1, [1, 3, 4, 6]),
    (1, [1, 2, 5, 6]),
    (-1, [1, 2, 4, 7]),
];

fn from_terms<S: Scalar, const K: usize>(terms: &[(i8, [usize; K])]) -> InvariantForm<S> {
    let mut f = InvariantForm::zero(7);
    for (s, idx) in terms {
        let idx0: Vec<usize> = idx.iter().map(|i| i - 1).collect();
        f = f.add(&InvariantForm::monomial(7, &idx0, S::from_int(*s as i64)));
    }
    f
}

pub fn phi<S: Scalar>() -> InvariantForm<S> {
    from_terms(&PHI_TERMS)
}

pub fn star_phi<S: Scalar>() -> InvariantForm<S> {
    from_terms(&STAR_PHI_TERMS)
}

/// Regard a form in `(ω₁, …, ω₇)` as a form on so(5).
pub fn lift_to_so5<S: Scalar>(f: &InvariantForm<S>) -> InvariantForm<S> {
    let mut g = InvariantForm::zero(DIM);
    for (m, c) in f.terms() {
        g.add_term(m << omega(1), c.clone());
    }
    g
}

#[derive(Clone, Debug)]
pub struct NearlyParallelReport {
    /// Largest coefficient of `dφ − 4∗φ`.
    pub dphi_residual: f64,
    /// Largest coefficient of `⋆φ − ∗φ` for the Hodge star of the orthonormal coframe.
    pub hodge_residual: f64,
    /// Largest coefficient of `d∗φ`.
    pub d_star_phi: f64,
    pub holds: bool,
}

pub fn verify_nearly_parallel<S: Scalar>(so5: &So5<S>, tol: f64) -> NearlyParallelReport {
    let p = lift_to_so5(&phi::<S>());
    let sp = lift_to_so5(&star_phi::<S>());
    let diff = so5.ce_d(&p).sub(&sp.scale(&S::from_int(4)));
    let hodge = phi::<S>().hodge().sub(&star_phi());
    let dsp = so5.ce_d(&sp);
    NearlyParallelReport {
        dphi_residual: diff.max_abs(),
        hodge_residual: hodge.max_abs(),
        d_star_phi: dsp.max_abs(),
        holds: diff.negligible(tol) && hodge.negligible(tol),
    }
}

/// An oriented 3-plane in `H₃ ≅ R⁷`, given by a (not necessarily orthonormal) basis.
#[derive(Clone, Debug, PartialEq)]
pub struct ThreePlane<S: Scalar> {
    pub basis: [Vec<S>; 3],
}

impl<S: Scalar> ThreePlane<S> {
    pub fn new(u1: Vec<S>, u2: Vec<S>, u3: Vec<S>) -> Self {
        ThreePlane { basis: [u1, u2, u3] }
    }

    /// Coordinate plane `span(e_i, e_j, e_k)` (1-based indices, in the given order).
    pub fn coordinate(i: usize, j: usize, k: usize) -> Self {
        let e = |n: usize| crate::linalg::unit_vector::<S>(7, n - 1);
        Self::new(e(i), e(j), e(k))
    }

    /// `φ(u₁, u₂, u₃)` on the given basis.
    pub fn phi_raw(&self) -> S {
        phi::<S>().evaluate(&self.basis)
    }

    pub fn gram_det(&self) -> S {
        Matrix::from_fn(3, 3, |i, j| dot(&self.basis[i], &self.basis[j])).determinant()
    }

    /// The plane with reversed orientation.
    pub fn flipped(&self) -> Self {
        let [a, b, c] = self.basis.clone();
        Self::new(b, a, c)
    }

    /// Associativity `φ(u)² = det Gram(u)`, exact for exact scalars.
    pub fn is_associative(&self, tol: f64) -> bool {
        let p = self.phi_raw();
        (p.clone() * p - self.gram_det()).negligible(tol)
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T + Copy) -> ThreePlane<T> {
        let m = |v: &Vec<S>| v.iter().map(f).collect::<Vec<T>>();
        ThreePlane::new(m(&self.basis[0]), m(&self.basis[1]), m(&self.basis[2]))
    }

    /// Image under a linear map of `H₃`.
    pub fn transform(&self, m: &Matrix<S>) -> Self {
        Self::new(
            m.mul_vec(&self.basis[0]),
            m.mul_vec(&self.basis[1]),
            m.mul_vec(&self.basis[2]),
        )
    }

    pub fn basis_matrix(&self) -> Matrix<S> {
        Matrix::from_columns(&self.basis)
    }
}

impl<S: RealScalar> ThreePlane<S> {
    pub fn to_f64(&self) -> ThreePlane<f64> {
        self.map(|x| x.to_f64())
    }

    /// `φ` on an oriented orthonormal basis of the plane; `|value| ≤ 1` with equality
    /// exactly on associative planes.
    pub fn calibration_value(&self) -> f64 {
        let f = self.to_f64();
        let q = orthonormalize(&f.basis);
        phi::<f64>().evaluate(&q)
    }
}

impl ThreePlane<f64> {
    pub fn orthonormal(&self) -> ThreePlane<f64> {
        let q = orthonormalize(&self.basis);
        ThreePlane::new(q[0].clone(), q[1].clone(), q[2].clone())
    }

    /// Orthonormal basis as the columns of a 7×3 matrix.
    pub fn frame(&self) -> Matrix<f64> {
        Matrix::from_columns(&self.orthonormal().basis)
    }
}

/// Build a vector `Σ cᵢ eᵢ` from 1-based index/coefficient pairs.
fn vec7<S: Scalar>(pairs: &[(usize, S)]) -> Vec<S> {
    let mut v = vec![S::zero(); 7];
    for (i, c) in pairs {
        v[i - 1] += c.clone();
    }
    v
}

pub mod planes {
    //! The named 3-planes and subspaces of `H₃`.
    use super::*;

    pub fn a123<S: Scalar>() -> ThreePlane<S> {
        ThreePlane::coordinate(1, 2, 3)
    }

    pub fn a145<S: Scalar>() -> ThreePlane<S> {
        ThreePlane::coordinate(1, 4, 5)
    }

    pub fn a167<S: Scalar>() -> ThreePlane<S> {
        ThreePlane::coordinate(1, 7, 6)
    }

    /// The icosahedral associative plane.
    pub fn a_ico<S: Scalar>() -> ThreePlane<S> {
        let r3 = S::surd(3);
        let r5 = S::surd(5);
        let one = S::one();
        let three = S::from_int(3);
        ThreePlane::new(
            vec7(&[(1, one.clone()), (5, r3.clone())]),
            vec7(&[(2, r3.clone() * (r5.clone() - one.clone())), (6, -(three.clone() + r5.clone()))]),
            vec7(&[(3, r3 * (one + r5.clone())), (7, three - r5)]),
        )
    }

    /// The 4-dimensional Ico-invariant complement of [`a_ico`].
    pub fn c_ico<S: Scalar>() -> Vec<Vec<S>> {
        let r3 = S::surd(3);
        let r5 = S::surd(5);
        let one = S::one();
        let three = S::from_int(3);
        vec![
            vec7(&[(4, one.clone())]),
            vec7(&[(1, r3.clone()), (5, -one.clone())]),
            vec7(&[(2, three.clone() + r5.clone()), (6, r3.clone() * (r5.clone() - one.clone()))]),
            vec7(&[(3, r5.clone() - three), (7, r3 * (one + r5))]),
        ]
    }

    /// The octahedral associative plane.
    pub fn a_oct<S: Scalar>() -> ThreePlane<S> {
        let r3 = S::surd(3);
        let r5 = S::surd(5);
        ThreePlane::new(
            vec7(&[(1, S::one())]),
            vec7(&[(2, r3.clone()), (6, r5.clone())]),
            vec7(&[(3, r3), (7, -r5)]),
        )
    }

    /// The octahedral non-associative plane.
    pub fn w_oct<S: Scalar>() -> ThreePlane<S> {
        let r3 = S::surd(3);
        let r5 = S::surd(5);
        ThreePlane::new(
            vec7(&[(5, S::one())]),
            vec7(&[(2, r5.clone()), (6, -r3.clone())]),
            vec7(&[(3, r5), (7, r3)]),
        )
    }

    /// `span(e₄)`, the octahedral invariant line.
    pub fn e4_line<S: Scalar>() -> Vec<Vec<S>> {
        vec![vec7(&[(4, S::one())])]
    }

    /// Tetrahedral family: the graph of the Tet-intertwiner `A_Oct → W` at angle θ.
    /// On it `φ = cos 3θ`.
    pub fn p_theta(theta: f64) -> ThreePlane<f64> {
        let (s, c) = theta.sin_cos();
        p_theta_at(c, s)
    }

    /// [`p_theta`] from `(cos θ, sin θ)` in any scalar type.
    pub fn p_theta_at<S: Scalar>(c: S, s: S) -> ThreePlane<S> {
        let a = a_oct::<S>();
        let w = w_oct::<S>();
        let mix = |x: &Vec<S>, y: &Vec<S>, sign: S| -> Vec<S> {
            x.iter().zip(y).map(|(p, q)| c.clone() * p.clone() + sign.clone() * s.clone() * q.clone()).collect()
        };
        ThreePlane::new(
            mix(&a.basis[0], &w.basis[0], S::one()),
            mix(&a.basis[1], &w.basis[1], -S::one()),
            mix(&a.basis[2], &w.basis[2], S::one()),
        )
    }

    pub fn q5(theta: f64) -> ThreePlane<f64> {
        let (s, c) = theta.sin_cos();
        ThreePlane::new(vec7(&[(1, 1.0)]), vec7(&[(4, c), (7, s)]), vec7(&[(5, c), (6, s)]))
    }

    pub fn q4a(theta: f64) -> ThreePlane<f64> {
        let (s, c) = theta.sin_cos();
        ThreePlane::new(vec7(&[(1, 1.0)]), vec7(&[(2, c), (7, s)]), vec7(&[(3, c), (6, s)]))
    }

    pub fn q4b(psi: f64, theta: f64) -> ThreePlane<f64> {
        let (sp, cp) = psi.sin_cos();
        let (s, c) = theta.sin_cos();
        ThreePlane::new(vec7(&[(4, cp), (5, sp)]), vec7(&[(2, c), (7, s)]), vec7(&[(3, c), (6, s)]))
    }

    pub fn q3(theta: f64, a: [f64; 3]) -> ThreePlane<f64> {
        let (s, c) = theta.sin_cos();
        ThreePlane::new(
            vec7(&[(1, a[0]), (6, a[1]), (7, a[2])]),
            vec7(&[(2, c), (5, s)]),
            vec7(&[(3, c), (4, s)]),
        )
    }

    /// The associative member of the `Q3` family at angle θ.
    pub fn q3_associative(theta: f64) -> ThreePlane<f64> {
        q3(theta, [(2.0 * theta).cos(), (2.0 * theta).sin(), 0.0])
    }
}

/// Named families and isolated planes of the classification.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PlaneFamily {
    A123,
    A145,
    A167,
    AIco,
    AOct,
    W,
    P(f64),
    Q5(f64),
    Q4a(f64),
    Q4b(f64, f64),
    Q3(f64, [f64; 3]),
}

impl PlaneFamily {
    pub fn plane(&self) -> ThreePlane<f64> {
        use planes::*;
        match *self {
            PlaneFamily::A123 => a123(),
            PlaneFamily::A145 => a145(),
            PlaneFamily::A167 => a167(),
            PlaneFamily::AIco => a_ico(),
            PlaneFamily::AOct => a_oct(),
            PlaneFamily::W => w_oct(),
            PlaneFamily::P(t) => p_theta(t),
            PlaneFamily::Q5(t) => q5(t),
            PlaneFamily::Q4a(t) => q4a(t),
            PlaneFamily::Q4b(p, t) => q4b(p, t),
            PlaneFamily::Q3(t, a) => q3(t, a),
        }
    }
}

/// Trigonometric fit of `θ ↦ φ(P_θ)` (a real trigonometric polynomial of degree 3),
/// returned as `(a₀, [a₁, a₂, a₃], [b₁, b₂, b₃])`.
fn p_theta_fourier() -> (f64, [f64; 3], [f64; 3]) {
    let n = 16;
    let samples: Vec<f64> = (0..n)
        .map(|k| planes::p_theta(2.0 * std::f64::consts::PI * k as f64 / n as f64).calibration_value())
        .collect();
    let mut a = [0.0; 3];
    let mut b = [0.0; 3];
    let a0 = samples.iter().sum::<f64>() / n as f64;
    for m in 1..=3 {
        for (k, v) in samples.iter().enumerate() {
            let t = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
            a[m - 1] += 2.0 * v * (m as f64 * t).cos() / n as f64;
            b[m - 1] += 2.0 * v * (m as f64 * t).sin() / n as f64;
        }
    }
    (a0, a, b)
}

/// Angles in `[0, 2π)` where `φ(P_θ) = 1`, located by a grid scan and refined by
/// Newton's method on the derivative of the fitted trigonometric polynomial.
pub fn p_theta_roots() -> Vec<f64> {
    let (a0, a, b) = p_theta_fourier();
    let f = |t: f64| a0 + (1..=3).map(|m| a[m - 1] * (m as f64 * t).cos() + b[m - 1] * (m as f64 * t).sin()).sum::<f64>();
    let df = |t: f64| (1..=3).map(|m| m as f64 * (-a[m - 1] * (m as f64 * t).sin() + b[m - 1] * (m as f64 * t).cos())).sum::<f64>();
    let d2f = |t: f64| (1..=3).map(|m| -((m * m) as f64) * (a[m - 1] * (m as f64 * t).cos() + b[m - 1] * (m as f64 * t).sin())).sum::<f64>();
    let two_pi = 2.0 * std::f64::consts::PI;
    let grid = 720;
    let mut roots: Vec<f64> = Vec::new();
    for k in 0..grid {
        let t = two_pi * k as f64 / grid as f64;
        let prev = f(t - two_pi / grid as f64);
        let next = f(t + two_pi / grid as f64);
        let v = f(t);
        if v >= prev && v >= next && v > 0.99 {
            let mut x = t;
            for _ in 0..50 {
                let step = df(x) / d2f(x);
                x -= step;
                if step.abs() < 1e-16 {
                    break;
                }
            }
            let x = x.rem_euclid(two_pi);
            let x = if two_pi - x < 1e-12 { 0.0 } else { x };
            if (1.0 - planes::p_theta(x).calibration_value()).abs() < 1e-12
                && roots.iter().all(|r| (r - x).abs() > 1e-6 && (two_pi - (r - x).abs()) > 1e-6)
            {
                roots.push(x);
            }
        }
    }
    roots.sort_by(f64::total_cmp);
    roots
}

/// Coordinates in `H₃` of the harmonic parts of the monomials `x^α`, `|α| = 3`.
pub struct CubeCone {
    exps: Vec<Vec<u8>>,
    multinomial: Vec<f64>,
    images: Vec<Vec<f64>>,
}

impl CubeCone {
    pub fn new() -> Self {
        let h3 = HarmonicModule::<f64>::new(3);
        let exps = monomials(3, 3);
        let fact = |n: u8| (1..=n as u32).product::<u32>() as f64;
        let multinomial = exps
            .iter()
            .map(|e| 6.0 / (fact(e[0]) * fact(e[1]) * fact(e[2])))
            .collect();
        let images = exps
            .iter()
            .map(|e| h3.coords(&harmonic_part_cubic(&Poly::monomial(e.clone(), 1.0))))
            .collect();
        CubeCone {
            exps,
            multinomial,
            images,
        }
    }

    /// The harmonic part of `(a·x)³` in `H₃` coordinates.
    pub fn point(&self, a: &[f64; 3]) -> Vec<f64> {
        let mut v = vec![0.0; 7];
        for ((e, m), img) in self.exps.iter().zip(&self.multinomial).zip(&self.images) {
            let mono = a[0].powi(e[0] as i32) * a[1].powi(e[1] as i32) * a[2].powi(e[2] as i32);
            for (vi, ii) in v.iter_mut().zip(img) {
                *vi += m * mono * ii;
            }
        }
        v
    }

    /// Jacobian `∂ point / ∂a` as three columns.
    fn jacobian(&self, a: &[f64; 3]) -> [Vec<f64>; 3] {
        let mut cols = [vec![0.0; 7], vec![0.0; 7], vec![0.0; 7]];
        for ((e, m), img) in self.exps.iter().zip(&self.multinomial).zip(&self.images) {
            for (j, col) in cols.iter_mut().enumerate() {
                if e[j] == 0 {
                    continue;
                }
                let mut d = m * e[j] as f64;
                for (k, &p) in e.iter().enumerate() {
                    let p = if k == j { p - 1 } else { p };
                    d *= a[k].powi(p as i32);
                }
                for (ci, ii) in col.iter_mut().zip(img) {
                    *ci += d * ii;
                }
            }
        }
        cols
    }
}

impl Default for CubeCone {
    fn default() -> Self {
        Self::new()
    }
}

/// Exact harmonic part of `(a·x)³` in `H₃` coordinates.
pub fn cube_point<S: Scalar>(a: &[S; 3]) -> Vec<S> {
    let lin = Poly::linear(a);
    HarmonicModule::<S>::new(3).coords(&harmonic_part_cubic(&lin.pow(3)))
}

#[derive(Clone, Debug)]
pub struct ConeMembership {
    pub member: bool,
    /// `a` with `harmonic part of (a·x)³ ≈ v`.
    pub witness: [f64; 3],
    /// `|v − point(a)| / max(|v|, 1)`.
    pub residual: f64,
}

/// Whether `v` is the harmonic part of the cube of a linear form.
pub fn cone_membership(v: &[f64], threshold: f64) -> ConeMembership {
    cone_membership_with(&CubeCone::new(), v, threshold)
}

pub fn cone_membership_with(cone: &CubeCone, v: &[f64], threshold: f64) -> ConeMembership {
    let nv = norm(v);
    if nv == 0.0 {
        return ConeMembership {
            member: true,
            witness: [0.0; 3],
            residual: 0.0,
        };
    }
    // Grid search over S² (Fibonacci lattice); the radial scale is solved in closed form.
    let n = 10_000;
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    let mut best = (f64::INFINITY, [1.0, 0.0, 0.0]);
    for k in 0..n {
        let z = 1.0 - 2.0 * (k as f64 + 0.5) / n as f64;
        let r = (1.0 - z * z).sqrt();
        let t = golden * k as f64;
        let u = [z, r * t.cos(), r * t.sin()];
        let c = cone.point(&u);
        let cc = dot(&c, &c);
        let vc = dot(v, &c);
        let res = nv * nv - vc * vc / cc;
        if res < best.0 {
            let scale = (vc / cc).cbrt();
            best = (res, [u[0] * scale, u[1] * scale, u[2] * scale]);
        }
    }
    // Gauss–Newton refinement on a ∈ R³.
    let mut a = best.1;
    for _ in 0..20 {
        let c = cone.point(&a);
        let r: Vec<f64> = c.iter().zip(v).map(|(x, y)| x - y).collect();
        let j = cone.jacobian(&a);
        let jtj = Matrix::from_fn(3, 3, |p, q| dot(&j[p], &j[q]));
        let jtr: Vec<f64> = (0..3).map(|p| -dot(&j[p], &r)).collect();
        let Ok(step) = jtj.solve(&jtr) else { break };
        for (ai, si) in a.iter_mut().zip(&step) {
            *ai += si;
        }
        if norm(&step) < 1e-15 {
            break;
        }
    }
    let c = cone.point(&a);
    let res = norm(&c.iter().zip(v).map(|(x, y)| x - y).collect::<Vec<_>>()) / nv.max(1.0);
    ConeMembership {
        member: res < threshold,
        witness: a,
        residual: res,
    }
}

#[derive(Clone, Debug)]
pub struct AscentResult {
    pub plane: ThreePlane<f64>,
    pub value: f64,
    pub iterations: usize,
}

/// Gradient of `U ↦ form(u₁, u₂, u₃)` with respect to each column.
fn form_gradient(form: &InvariantForm<f64>, u: &[Vec<f64>]) -> [Vec<f64>; 3] {
    let n = u[0].len();
    let mut g = [vec![0.0; n], vec![0.0; n], vec![0.0; n]];
    for (slot, gs) in g.iter_mut().enumerate() {
        for (i, gi) in gs.iter_mut().enumerate() {
            let mut w: Vec<Vec<f64>> = u.to_vec();
            w[slot] = crate::linalg::unit_vector(n, i);
            *gi = form.evaluate(&w);
        }
    }
    g
}

/// Maximize a 3-form over oriented 3-planes of `Rⁿ` (Euclidean metric) by projected gradient
/// ascent with QR retraction.
pub fn calibrated_ascent(
    form: &InvariantForm<f64>,
    start: &[Vec<f64>; 3],
    max_iter: usize,
    tol: f64,
) -> Result<AscentResult, G2Error> {
    let mut u = orthonormalize(start);
    if u.iter().any(|c| c.iter().any(|x| !x.is_finite())) {
        return Err(G2Error::Degenerate);
    }
    let mut value = form.evaluate(&u);
    if value <= 0.0 {
        return Err(G2Error::NonPositiveStart(value));
    }
    let n = u[0].len();
    let mut iterations = 0;
    while iterations < max_iter && 1.0 - value > tol {
        let g = form_gradient(form, &u);
        // Project onto the horizontal space (orthogonal complement of the plane).
        let h: Vec<Vec<f64>> = g
            .iter()
            .map(|gi| {
                let mut p = gi.clone();
                for q in &u {
                    let d = dot(gi, q);
                    for k in 0..n {
                        p[k] -= d * q[k];
                    }
                }
                p
            })
            .collect();
        let gnorm: f64 = h.iter().map(|x| dot(x, x)).sum::<f64>().sqrt();
        if gnorm < 1e-15 {
            break;
        }
        let mut step = 0.1;
        let mut accepted = false;
        while step > 1e-12 {
            let trial: Vec<Vec<f64>> = u
                .iter()
                .zip(&h)
                .map(|(q, d)| q.iter().zip(d).map(|(a, b)| a + step * b).collect())
                .collect();
            let trial = orthonormalize(&trial);
            let v = form.evaluate(&trial);
            if v > value {
                u = trial;
                value = v;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        iterations += 1;
        if !accepted {
            break;
        }
    }
    Ok(AscentResult {
        plane: ThreePlane::new(u[0].clone(), u[1].clone(), u[2].clone()),
        value,
        iterations,
    })
}

/// Ascend from `plane` to a nearby associative plane.
pub fn nearest_associative(plane: &ThreePlane<f64>) -> Result<AscentResult, G2Error> {
    calibrated_ascent(&phi::<f64>(), &plane.basis, 500, 1e-14)
}

/// Mask of the coordinate triple `(i, j, k)` (1-based) in a 7-dimensional form.
pub fn triple_mask(i: usize, j: usize, k: usize) -> u32 {
    mask_of(&[i - 1, j - 1, k - 1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::FieldScalar;

    #[test]
    fn every_pair_occurs_once_in_phi() {
        let mut seen = std::collections::HashSet::new();
        for (_, [a, b, c]) in PHI_TERMS {
            for p in [(a, b), (a, c), (b, c)] {
                assert!(seen.insert(p));
            }
        }
        assert_eq!(seen.len(), 21);
    }

    #[test]
    fn isolated_planes_are_exactly_associative() {
        assert!(planes::a123::<FieldScalar>().is_associative(0.0));
        assert!(planes::a_ico::<FieldScalar>().is_associative(0.0));
        assert!(planes::a_oct::<FieldScalar>().is_associative(0.0));
        assert!(!planes::w_oct::<FieldScalar>().is_associative(0.0));
    }

    #[test]
    fn cube_of_x_is_e1() {
        let p = cube_point(&[FieldScalar::one(), FieldScalar::zero(), FieldScalar::zero()]);
        assert_eq!(p, crate::linalg::unit_vector(7, 0));
    }
}
