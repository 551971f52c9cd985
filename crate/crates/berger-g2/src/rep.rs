//! The real irreducible SO(3)-modules `H₁ = R³`, `H₂`, `H₃` of harmonic polynomials.
//!
//! SO(3) acts by `(g·p)(x) = p(g⁻¹x)`. The bases below are orthonormal for
//! the invariant inner products, so `ρₙ(g)` is an orthogonal matrix.

use crate::linalg::{Extractor, Matrix};
use crate::poly::{coefficient_vector, Poly};
use crate::scalar::{RealScalar, Scalar};

fn xyz<S: Scalar>() -> [Poly<S>; 3] {
    [Poly::var(3, 0), Poly::var(3, 1), Poly::var(3, 2)]
}

/// Basis of `H₂`: `x² − ½y² − ½z², √3xy, √3xz, (√3/2)(y² − z²), √3yz`.
pub fn h2_basis<S: Scalar>() -> Vec<Poly<S>> {
    let [x, y, z] = xyz::<S>();
    let r3 = S::surd(3);
    let half = S::from_ratio(1, 2);
    vec![
        x.mul(&x).sub(&y.mul(&y).scale(&half)).sub(&z.mul(&z).scale(&half)),
        x.mul(&y).scale(&r3),
        x.mul(&z).scale(&r3),
        y.mul(&y).sub(&z.mul(&z)).scale(&(r3.clone() * half)),
        y.mul(&z).scale(&r3),
    ]
}

/// Basis of `H₃`.
pub fn h3_basis<S: Scalar>() -> Vec<Poly<S>> {
    let [x, y, z] = xyz::<S>();
    let c = |n: i64, d: i64| S::from_int(n).div(&S::from_int(d)).unwrap();
    let (x2, y2, z2) = (x.mul(&x), y.mul(&y), z.mul(&z));
    let q = |a: i64, b: i64, cc: i64| x2.scale(&c(a, 1)).add(&y2.scale(&c(b, 1))).add(&z2.scale(&c(cc, 1)));
    vec![
        x.mul(&q(2, -3, -3)).scale(&S::from_ratio(1, 5)),
        z.mul(&q(4, -1, -1)).scale(&S::radical(1, 10, 6)),
        y.mul(&q(4, -1, -1)).scale(&S::radical(1, 10, 6)),
        x.mul(&y).mul(&z).scale(&S::radical(2, 5, 15)),
        x.mul(&y2.sub(&z2)).scale(&S::radical(1, 5, 15)),
        z.mul(&y2.scale(&c(3, 1)).sub(&z2)).scale(&S::radical(1, 10, 10)),
        y.mul(&y2.sub(&z2.scale(&c(3, 1)))).scale(&S::radical(1, 10, 10)),
    ]
}

/// Harmonic polynomials of degree `n ∈ {1, 2, 3}` in a fixed basis, with coordinate extraction.
#[derive(Clone, Debug)]
pub struct HarmonicModule<S: Scalar> {
    degree: u8,
    basis: Vec<Poly<S>>,
    extractor: Extractor<S>,
}

impl<S: Scalar> HarmonicModule<S> {
    pub fn new(degree: u8) -> Self {
        let basis = match degree {
            1 => xyz::<S>().to_vec(),
            2 => h2_basis(),
            3 => h3_basis(),
            _ => panic!("only degrees 1, 2, 3 are modelled"),
        };
        let cols: Vec<Vec<S>> = basis.iter().map(|p| coefficient_vector(p, degree)).collect();
        let extractor = Extractor::new(&Matrix::from_columns(&cols));
        HarmonicModule {
            degree,
            basis,
            extractor,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Poly<S>] {
        &self.basis
    }

    /// Coordinates of a polynomial lying in the module.
    pub fn coords(&self, p: &Poly<S>) -> Vec<S> {
        self.extractor.coords(&coefficient_vector(p, self.degree))
    }

    pub fn polynomial(&self, v: &[S]) -> Poly<S> {
        v.iter()
            .zip(&self.basis)
            .fold(Poly::zero(3), |acc, (c, b)| acc.add(&b.scale(c)))
    }

    /// `ρₙ(g)`: column `j` holds the coordinates of `p_j(gᵀx)` (`g` orthogonal).
    pub fn rho(&self, g: &Matrix<S>) -> Matrix<S> {
        let gt = g.transpose();
        let cols: Vec<Vec<S>> = self
            .basis
            .iter()
            .map(|p| self.coords(&p.substitute_linear(&gt)))
            .collect();
        Matrix::from_columns(&cols)
    }

    /// The differential `ρₙ'(X)` for `X ∈ so(3)`.
    pub fn drho(&self, x: &Matrix<S>) -> Matrix<S> {
        let cols: Vec<Vec<S>> = self
            .basis
            .iter()
            .map(|p| self.coords(&p.lie_derivative(x)))
            .collect();
        Matrix::from_columns(&cols)
    }
}

/// Standard basis of so(3): `Lᵢ` generates rotations about the `i`-th axis.
pub fn so3_basis<S: Scalar>() -> [Matrix<S>; 3] {
    let e = |i, j| crate::liealg::elementary::<S>(3, i, j, S::one());
    [e(1, 2), e(2, 0), e(0, 1)]
}

/// `X = Σ xᵢ Lᵢ`.
pub fn so3_element<S: Scalar>(x: &[S; 3]) -> Matrix<S> {
    let b = so3_basis::<S>();
    b[0].scale(&x[0]).add(&b[1].scale(&x[1])).add(&b[2].scale(&x[2]))
}

/// The irreducible embedding so(3) → so(5) (the differential of `ρ₂`).
pub fn lambda_so3<S: Scalar>(x: &[S; 3]) -> Matrix<S> {
    crate::liealg::gamma_matrix(x)
}

/// Rotation about the x-axis by angle `a`.
pub fn rotation_x(a: f64) -> Matrix<f64> {
    let (s, c) = a.sin_cos();
    Matrix::from_rows(vec![vec![1.0, 0.0, 0.0], vec![0.0, c, -s], vec![0.0, s, c]])
}

/// Rotation exp(Σ aᵢLᵢ).
pub fn rotation(axis_angle: [f64; 3]) -> Matrix<f64> {
    crate::linalg::expm(&so3_element(&axis_angle))
}

/// Rodrigues-free exact rotation from `(cos, sin)` about a coordinate axis.
pub fn axis_rotation<S: Scalar>(axis: usize, c: S, s: S) -> Matrix<S> {
    let mut m = Matrix::identity(3);
    let (i, j) = ((axis + 1) % 3, (axis + 2) % 3);
    m[(i, i)] = c.clone();
    m[(j, j)] = c;
    m[(j, i)] = s.clone();
    m[(i, j)] = -s;
    m
}

/// The invariant quadratic `g(v) = |v|²`.
pub fn g_form<S: Scalar>(v: &[S]) -> S {
    crate::linalg::dot(v, v)
}

/// The invariant cubic `Υ` on `H₂`, normalized so that `Υ(e₁) = 1`.
pub fn upsilon_poly<S: Scalar>() -> Poly<S> {
    let v: Vec<Poly<S>> = (0..5).map(|i| Poly::var(5, i)).collect();
    let c = |n: i64, d: i64| S::from_ratio(n, d);
    let sq = |i: usize| v[i].mul(&v[i]);
    let inner = sq(0)
        .add(&sq(1).scale(&c(3, 2)))
        .add(&sq(2).scale(&c(3, 2)))
        .sub(&sq(3).scale(&c(3, 1)))
        .sub(&sq(4).scale(&c(3, 1)));
    v[0].mul(&inner)
        .add(&v[3].mul(&sq(1).sub(&sq(2))).scale(&S::radical(3, 2, 3)))
        .add(&v[1].mul(&v[2]).mul(&v[4]).scale(&S::radical(3, 1, 3)))
}

pub fn upsilon<S: Scalar>(v: &[S]) -> S {
    upsilon_poly::<S>().eval(v)
}

/// The traceless symmetric matrix of `v ∈ H₂`, with `Υ(v) = 4 det`.
pub fn matrix_of<S: Scalar>(v: &[S]) -> Matrix<S> {
    let r3 = S::surd(3);
    let half = S::from_ratio(1, 2);
    let two = S::from_int(2);
    let m = Matrix::from_rows(vec![
        vec![two * v[0].clone(), r3.clone() * v[1].clone(), r3.clone() * v[2].clone()],
        vec![
            r3.clone() * v[1].clone(),
            -v[0].clone() + r3.clone() * v[3].clone(),
            r3.clone() * v[4].clone(),
        ],
        vec![
            r3.clone() * v[2].clone(),
            r3.clone() * v[4].clone(),
            -v[0].clone() - r3 * v[3].clone(),
        ],
    ]);
    m.scale(&half)
}

/// The Borůvka map `S² → S⁴ ⊂ H₂`, `u ↦ ν(u)`, whose image is the Veronese surface Σ₀.
pub fn veronese<S: Scalar>(u: &[S; 3]) -> [S; 5] {
    let r3 = S::surd(3);
    let half = S::from_ratio(1, 2);
    let [u1, u2, u3] = u.clone();
    [
        u1.clone() * u1.clone() - half.clone() * u2.clone() * u2.clone() - half.clone() * u3.clone() * u3.clone(),
        r3.clone() * u1.clone() * u2.clone(),
        r3.clone() * u1 * u3.clone(),
        r3.clone() * half * (u2.clone() * u2.clone() - u3.clone() * u3.clone()),
        r3 * u2 * u3,
    ]
}

#[derive(Clone, Debug, PartialEq)]
pub struct VeroneseMembership {
    pub member: bool,
    /// `Υ(v)` (equal to 1 on Σ₀ for unit `v`).
    pub upsilon: f64,
    /// Eigenvalues of `matrix_of(v)`, ascending.
    pub eigenvalues: [f64; 3],
    /// `|1 − Υ| + |1 − g|`, zero exactly on Σ₀.
    pub residual: f64,
}

/// Whether `v` lies on the Veronese surface Σ₀ = SO(3)·e₁ ⊂ S⁴.
///
/// Exact scalars decide membership by `g(v) = 1` and `Υ(v) = 1`, which on the unit
/// sphere single out the maximum of the cubic. Floats use the same test within `tol`.
/// On Σ₀ the matrix `matrix_of(v)` has a simple eigenvalue `1` and a
/// repeated eigenvalue `−½`.
pub fn veronese_membership<S: RealScalar>(v: &[S], tol: f64) -> VeroneseMembership {
    let ups = upsilon(v);
    let gv = g_form(v);
    let one = S::one();
    let member = (ups.clone() - one.clone()).negligible(tol) && (gv.clone() - one).negligible(tol);
    let vf: Vec<f64> = v.iter().map(RealScalar::to_f64).collect();
    let (ev, _) = crate::linalg::symmetric_eigen(&matrix_of(&vf));
    VeroneseMembership {
        member,
        upsilon: ups.to_f64(),
        eigenvalues: [ev[0], ev[1], ev[2]],
        residual: (1.0 - ups.to_f64()).abs() + (1.0 - gv.to_f64()).abs(),
    }
}

/// Eigenvalue criterion for Σ₀ on unit vectors: the repeated eigenvalue is `−½`.
pub fn veronese_eigen_residual(v: &[f64]) -> f64 {
    let (ev, _) = crate::linalg::symmetric_eigen(&matrix_of(v));
    (ev[0] + 0.5).abs() + (ev[1] + 0.5).abs() + (ev[2] - 1.0).abs()
}

/// Harmonic part of a cubic polynomial, `p − (1/10) r² Δp`.
pub fn harmonic_part_cubic<S: Scalar>(p: &Poly<S>) -> Poly<S> {
    let [x, y, z] = xyz::<S>();
    let r2 = x.mul(&x).add(&y.mul(&y)).add(&z.mul(&z));
    p.sub(&r2.mul(&p.laplacian()).scale(&S::from_ratio(1, 10)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::FieldScalar;

    #[test]
    fn upsilon_matches_determinant() {
        let v = [0.3, -0.2, 0.5, 0.1, 0.7];
        let d = matrix_of(&v).determinant();
        assert!((upsilon(&v) - 4.0 * d).abs() < 1e-14);
    }

    #[test]
    fn harmonic_bases_are_harmonic() {
        for p in h3_basis::<FieldScalar>() {
            assert!(p.laplacian().is_zero());
        }
        for p in h2_basis::<FieldScalar>() {
            assert!(p.laplacian().is_zero());
        }
    }
}
