//! The Berger space as the space of Veronese surfaces in S⁴: points as pushed-forward
//! cubics, C-curves, the Γ correspondence, homogeneous associative orbits, the
//! dodecahedron intersection and group intersections.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::g2::{cone_membership, ConeMembership, ThreePlane};
use crate::liealg::{So5, Subalgebra};
use crate::linalg::{expm, norm, orthonormal_span, orthonormalize, subspace_distance, symmetric_eigen, Matrix};
use crate::poly::{coefficient_vector, Poly};
use crate::rep::{matrix_of, rotation, upsilon_poly, veronese, HarmonicModule};
use crate::scalar::Scalar;
use crate::stab::{lie_stabilizer_dim, rho3_all, stabilizer_contains, CatalogueGroup, FiniteGroup};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum BergerError {
    #[error("orbit tangent space has dimension {0}, expected 3")]
    DegenerateOrbit(usize),
    #[error("unknown homogeneous case `{0}`")]
    UnknownCase(String),
}

/// A point of B, stored as the cubic `g·Υ = Υ(gᵀ x)` on R⁵.
#[derive(Clone, Debug, PartialEq)]
pub struct BergerPoint<S: Scalar> {
    pub cubic: Poly<S>,
}

impl<S: Scalar> BergerPoint<S> {
    /// The 35 coefficients against the lexicographic cubic monomials.
    pub fn coefficients(&self) -> Vec<S> {
        coefficient_vector(&self.cubic, 3)
    }

    /// Largest coefficient difference.
    pub fn distance(&self, other: &Self) -> f64 {
        self.cubic.sub(&other.cubic).max_abs_coeff()
    }

    /// Whether `v` lies on the Veronese surface of this point: `|v| = 1` and the cubic takes
    /// its maximum value `1` there.
    pub fn contains(&self, v: &[S], tol: f64) -> bool {
        (self.cubic.eval(v) - S::one()).negligible(tol) && (crate::linalg::dot(v, v) - S::one()).negligible(tol)
    }
}

impl BergerPoint<f64> {
    /// Tangent plane of the Veronese surface at a point `p` on it, read off the cubic: the
    /// kernel of the Hessian of `C − |x|³` on `p^⊥`.
    pub fn tangent_plane_at(&self, p: &[f64]) -> Matrix<f64> {
        let n = 5;
        let hess = Matrix::from_fn(n, n, |i, j| {
            let c = self.cubic.derivative(i).derivative(j).eval(p);
            let sphere = 3.0 * (if i == j { 1.0 } else { 0.0 }) + 3.0 * p[i] * p[j];
            c - sphere
        });
        let proj = Matrix::from_fn(n, n, |i, j| (if i == j { 1.0 } else { 0.0 }) - p[i] * p[j]);
        // Shift p out of the kernel so that the two tangent directions are the only zero modes.
        let shift = Matrix::from_fn(n, n, |i, j| 100.0 * p[i] * p[j]);
        let restricted = proj.mul(&hess).mul(&proj).add(&shift);
        let (vals, vecs) = symmetric_eigen(&restricted);
        let mut idx: Vec<usize> = (0..n).collect();
        idx.sort_by(|&a, &b| vals[a].abs().total_cmp(&vals[b].abs()));
        Matrix::from_columns(&[vecs.column(idx[0]), vecs.column(idx[1])])
    }
}

/// `g·Υ` for `g ∈ SO(5)`.
pub fn point_from<S: Scalar>(g: &Matrix<S>) -> BergerPoint<S> {
    BergerPoint {
        cubic: upsilon_poly::<S>().substitute_linear(&g.transpose()),
    }
}

/// `ρ₂(r)` for `r ∈ SO(3)`.
pub fn rho2<S: Scalar>(r: &Matrix<S>) -> Matrix<S> {
    HarmonicModule::<S>::new(2).rho(r)
}

/// Recover `r ∈ SO(3)` with `ρ₂(r) = m`, if `m` lies in `ρ₂(SO(3))`.
pub fn reconstruct_rotation(m: &Matrix<f64>, tol: f64) -> Option<Matrix<f64>> {
    let axis = |u: [f64; 3]| -> Vec<f64> {
        // ν(r u) = m ν(u); the surface point determines ±r u as the top eigenvector.
        let img = m.mul_vec(&veronese(&u));
        let (_, vecs) = symmetric_eigen(&matrix_of(&img));
        vecs.column(2)
    };
    let c1 = axis([1.0, 0.0, 0.0]);
    let c2 = axis([0.0, 1.0, 0.0]);
    for s1 in [1.0, -1.0] {
        for s2 in [1.0, -1.0] {
            let a: Vec<f64> = c1.iter().map(|x| s1 * x).collect();
            let b: Vec<f64> = c2.iter().map(|x| s2 * x).collect();
            let c = vec![a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]];
            let r = Matrix::from_columns(&[a, b, c]);
            if rho2(&r).sub(m).max_abs() < tol {
                return Some(r);
            }
        }
    }
    None
}

/// `exp(s·X)` for the generator `X` of the circle `S¹₍p,q₎`.
pub fn circle_element(p: i64, q: i64, s: f64) -> Matrix<f64> {
    let x = Subalgebra::Circle(p, q).basis::<f64>().remove(0);
    expm(&x.scale(&s))
}

/// The torus element of the D-surface through the identity frame, rotating
/// `(f₂, f₃)` by `θ + 2φ` and `(f₄, f₅)` by `2θ − φ`.
pub fn d_surface_element(theta: f64, phi: f64) -> Matrix<f64> {
    let mut m = Matrix::identity(5);
    for (i, a) in [(1usize, theta + 2.0 * phi), (3, 2.0 * theta - phi)] {
        let (s, c) = a.sin_cos();
        m[(i, i)] = c;
        m[(i + 1, i)] = s;
        m[(i, i + 1)] = -s;
        m[(i + 1, i + 1)] = c;
    }
    m
}

/// Period of a C-curve in B: `S¹₍₋₂,₁₎ ∩ S¹₍₁,₂₎` has order 5.
pub const C_CURVE_PERIOD: f64 = 2.0 * std::f64::consts::PI / 5.0;

/// `n` samples of the C-curve through `frame`, over one period, endpoints included.
pub fn c_curve(frame: &Matrix<f64>, n: usize) -> Vec<BergerPoint<f64>> {
    assert!(n >= 2, "need at least two samples");
    (0..n)
        .map(|k| {
            let s = C_CURVE_PERIOD * k as f64 / (n - 1) as f64;
            point_from(&frame.mul(&circle_element(-2, 1, s)))
        })
        .collect()
}

/// C-curve parameter of the point of the D-surface at `(θ, φ)`.
pub fn d_surface_curve_parameter(theta: f64, phi: f64) -> f64 {
    // D-surface angles (a, b) equal the maximal-torus angles (−a, −b) = x(1,2) + y(−2,1).
    let (a, b) = (theta + 2.0 * phi, 2.0 * theta - phi);
    (2.0 * a - b) / 5.0
}

/// The ω-coordinates of the C-curve direction.
pub fn c_curve_tangent() -> Vec<f64> {
    let so5 = So5::<f64>::new();
    so5.omega_part(&Subalgebra::Circle(-2, 1).basis::<f64>()[0])
}

pub fn c_curve_tangent_cone() -> ConeMembership {
    cone_membership(&c_curve_tangent(), 1e-8)
}

/// A frame with `f₁ = p` and `(f₂, f₃)` an oriented orthonormal basis of `E`.
pub fn adapted_frame(p: &[f64], e: &[Vec<f64>; 2]) -> Matrix<f64> {
    let q = orthonormalize(&[p.to_vec(), e[0].clone(), e[1].clone()]);
    let known = Matrix::from_columns(&q);
    let rest = known.transpose().nullspace(1e-10);
    let rest = orthonormalize(&rest);
    let mut cols = q;
    cols.extend(rest);
    let mut f = Matrix::from_columns(&cols);
    if f.determinant() < 0.0 {
        for r in 0..5 {
            f[(r, 4)] = -f[(r, 4)];
        }
    }
    f
}

/// One sample of a Γ-fiber with its containment diagnostics.
#[derive(Clone, Debug)]
pub struct FiberSample {
    pub parameter: f64,
    pub frame: Matrix<f64>,
    pub point: BergerPoint<f64>,
    /// `|C(p) − 1|`.
    pub containment_residual: f64,
    /// Subspace distance between the surface's tangent plane at `p` and `E`.
    pub tangent_residual: f64,
}

/// The C-curve `Γ(p, E)` of Veronese surfaces through `p` with tangent plane `E` there.
pub fn gamma_fiber(p: &[f64], e: &[Vec<f64>; 2], n: usize) -> Vec<FiberSample> {
    let frame = adapted_frame(p, e);
    let e_frame = orthonormal_span(&Matrix::from_columns(&[e[0].clone(), e[1].clone()]), 1e-12);
    (0..n)
        .map(|k| {
            let s = C_CURVE_PERIOD * k as f64 / n as f64;
            let f = frame.mul(&circle_element(-2, 1, s));
            let point = point_from(&f);
            let tangent = point.tangent_plane_at(p);
            FiberSample {
                parameter: s,
                containment_residual: (point.cubic.eval(p) - 1.0).abs(),
                tangent_residual: subspace_distance(&tangent, &e_frame),
                frame: f,
                point,
            }
        })
        .collect()
}

/// Angles `(a, b)` of a block rotation of `(e₂, e₃)` and `(e₄, e₅)` fixing `e₁`, in the
/// convention of [`d_surface_element`]; `None` if `m` is not such a matrix.
pub fn torus_angles(m: &Matrix<f64>, tol: f64) -> Option<(f64, f64)> {
    let a = m[(2, 1)].atan2(m[(1, 1)]);
    let b = m[(4, 3)].atan2(m[(3, 3)]);
    let rebuilt = d_surface_element_ab(a, b);
    (rebuilt.sub(m).max_abs() < tol).then_some((a, b))
}

fn d_surface_element_ab(a: f64, b: f64) -> Matrix<f64> {
    // Inverse of (θ, φ) ↦ (θ + 2φ, 2θ − φ).
    d_surface_element((a + 2.0 * b) / 5.0, (2.0 * a - b) / 5.0)
}

/// The homogeneous associative examples, indexed by their Gauss-map orbit and branch.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HomogeneousCase {
    /// `SO(2)×SO(3)_std`-orbit with tangent planes in O₁₂₃.
    O123a,
    /// `U(2)`-orbit with tangent planes in O₁₂₃.
    O123b,
    O145,
    O167,
    Ico,
    /// Irreducible SO(3)-orbit on the `a = −½` branch.
    Oct1,
    /// `SO(3)_std`-orbit on the `a = ⅓` branch.
    Oct2,
}

/// How the stabilizer of a tangent plane is certified.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StabilizerClass {
    /// Contains a circle: `lie_stabilizer_dim = 1`.
    Circle,
    /// Contains the catalogued finite group and has no continuous part.
    Finite(CatalogueGroup),
}

impl HomogeneousCase {
    pub const ALL: [HomogeneousCase; 7] = [
        Self::O123a,
        Self::O123b,
        Self::O145,
        Self::O167,
        Self::Ico,
        Self::Oct1,
        Self::Oct2,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Self::O123a => "o123a",
            Self::O123b => "o123b",
            Self::O145 => "o145",
            Self::O167 => "o167",
            Self::Ico => "ico",
            Self::Oct1 => "oct1",
            Self::Oct2 => "oct2",
        }
    }

    pub fn parse(s: &str) -> Result<Self, BergerError> {
        Self::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| BergerError::UnknownCase(s.to_string()))
    }

    pub fn subalgebra(&self) -> Subalgebra {
        match self {
            Self::O123a | Self::O145 => Subalgebra::So2xSo3Std,
            Self::O123b | Self::O167 => Subalgebra::U2,
            Self::Ico | Self::Oct1 => Subalgebra::So3Irr,
            Self::Oct2 => Subalgebra::So3Std,
        }
    }

    /// The matrix `h` with the orbit through `h⁻¹·Σ₀`.
    pub fn frame<S: Scalar>(&self) -> Matrix<S> {
        let int = |rows: &[&[i64]]| Matrix::<S>::from_int_rows(rows);
        match self {
            Self::O123a => int(&[
                &[0, 0, 1, 0, 0],
                &[0, 0, 0, 1, 0],
                &[0, 0, 0, 0, 1],
                &[1, 0, 0, 0, 0],
                &[0, 1, 0, 0, 0],
            ]),
            Self::O123b => Matrix::identity(5),
            Self::O145 => int(&[
                &[0, 0, 1, 0, 0],
                &[1, 0, 0, 0, 0],
                &[0, 1, 0, 0, 0],
                &[0, 0, 0, 1, 0],
                &[0, 0, 0, 0, 1],
            ]),
            Self::O167 | Self::Oct1 => Matrix::diag(&[-S::one(), S::one(), S::one(), -S::one(), S::one()]),
            Self::Ico => h_ico(),
            Self::Oct2 => int(&[
                &[-1, 0, 0, 0, 0],
                &[0, 0, 0, 0, 1],
                &[0, 0, 0, 1, 0],
                &[0, 1, 0, 0, 0],
                &[0, 0, 1, 0, 0],
            ]),
        }
    }

    pub fn expected_stabilizer(&self) -> StabilizerClass {
        match self {
            Self::Ico => StabilizerClass::Finite(CatalogueGroup::Ico),
            Self::Oct1 | Self::Oct2 => StabilizerClass::Finite(CatalogueGroup::Oct),
            _ => StabilizerClass::Circle,
        }
    }
}

/// The frame of the icosahedral example: a rotation in the `(e₁, e₄)` plane with cosine `−¼`.
pub fn h_ico<S: Scalar>() -> Matrix<S> {
    let mut m = Matrix::identity(5);
    let c = S::from_ratio(-1, 4);
    let s = S::radical(1, 4, 15);
    m[(0, 0)] = c.clone();
    m[(3, 3)] = c;
    m[(0, 3)] = -s.clone();
    m[(3, 0)] = s;
    m
}

/// The tangent space at `g·o` of the orbit of `K`, left-translated to the identity coset.
#[derive(Clone, Debug)]
pub struct OrbitTangent<S: Scalar> {
    /// `ω(Ad(g⁻¹)X)` for each basis element `X` of `K`.
    pub vectors: Vec<Vec<S>>,
    pub rank: usize,
    pub plane: ThreePlane<S>,
    /// Combinations of the `K` basis that fix the point.
    pub stabilizer_directions: Vec<Vec<S>>,
}

/// Tangent plane of the `K`-orbit through `g·o`; for the orbit through `h⁻¹·Σ₀`
/// pass `g = h⁻¹`, giving `ω(Ad(h)X)`.
pub fn orbit_tangent_plane<S: Scalar>(k: &[Matrix<S>], g: &Matrix<S>, tol: f64) -> Result<OrbitTangent<S>, BergerError> {
    let so5 = So5::<S>::new();
    let g_inv = g.inverse().expect("invertible frame");
    let vectors: Vec<Vec<S>> = k.iter().map(|x| so5.omega_part(&g_inv.mul(x).mul(g))).collect();
    let m = Matrix::from_columns(&vectors);
    let rank = m.rank(tol);
    if rank != 3 {
        return Err(BergerError::DegenerateOrbit(rank));
    }
    let mut chosen: Vec<Vec<S>> = Vec::new();
    for v in &vectors {
        let mut trial = chosen.clone();
        trial.push(v.clone());
        if Matrix::from_columns(&trial).rank(tol) == trial.len() {
            chosen = trial;
        }
        if chosen.len() == 3 {
            break;
        }
    }
    let [a, b, c]: [Vec<S>; 3] = chosen.try_into().expect("three independent vectors");
    Ok(OrbitTangent {
        stabilizer_directions: m.nullspace(tol),
        vectors,
        rank,
        plane: ThreePlane::new(a, b, c),
    })
}

/// Result of checking one homogeneous example.
#[derive(Clone, Debug)]
pub struct HomogeneousReport {
    pub case: HomogeneousCase,
    /// `|φ|` on the tangent plane at the base point.
    pub base_value: f64,
    /// Smallest `|φ|` over the translated sample points.
    pub min_translated_value: f64,
    /// Largest `|1 − |φ||` over all points.
    pub max_defect: f64,
    pub stabilizer_verified: bool,
    pub lie_stabilizer_dim: usize,
    /// Agreement of `ω(Ad(g⁻¹)X)` with finite differences of `point_from(exp(tX)g)`.
    pub finite_difference_residual: f64,
    /// The same comparison under the opposite translation convention `ω(Ad(g)X)`.
    pub opposite_convention_residual: f64,
}

impl HomogeneousReport {
    pub fn passed(&self, tol: f64) -> bool {
        self.max_defect < tol && self.stabilizer_verified && self.finite_difference_residual < 1e-6
    }
}

/// Infinitesimal action on `g·Υ` of the so(5) element `w` acting on the right of `g`.
fn cubic_velocity(g: &Matrix<f64>, w: &Matrix<f64>) -> Poly<f64> {
    upsilon_poly::<f64>().lie_derivative(w).substitute_linear(&g.transpose())
}

/// Compare the translated tangent with a central difference of `point_from(exp(tX)g)`.
pub fn finite_difference_check(k: &[Matrix<f64>], g: &Matrix<f64>, step: f64) -> (f64, f64) {
    let so5 = So5::<f64>::new();
    let g_inv = g.inverse().expect("invertible frame");
    let mut worst = 0.0f64;
    let mut worst_opposite = 0.0f64;
    for x in k {
        let plus = point_from(&expm(&x.scale(&step)).mul(g));
        let minus = point_from(&expm(&x.scale(&-step)).mul(g));
        let fd = plus.cubic.sub(&minus.cubic).scale(&(0.5 / step));
        let omega_only = |w: &Matrix<f64>| {
            let mut c = vec![0.0; 3];
            c.extend(so5.omega_part(w));
            so5.element(&c)
        };
        let predicted = cubic_velocity(g, &omega_only(&g_inv.mul(x).mul(g)));
        let opposite = cubic_velocity(g, &omega_only(&g.mul(x).mul(&g_inv)));
        worst = worst.max(fd.sub(&predicted).max_abs_coeff());
        worst_opposite = worst_opposite.max(fd.sub(&opposite).max_abs_coeff());
    }
    (worst, worst_opposite)
}

/// Check the tangent planes of one homogeneous example at its base point and at
/// `samples` random points `exp(Y)·h⁻¹·ρ₂(r)` of the orbit.
pub fn verify_homogeneous_case(case: HomogeneousCase, samples: usize, seed: u64) -> Result<HomogeneousReport, BergerError> {
    let k = case.subalgebra().basis::<f64>();
    let h = case.frame::<f64>();
    let h_inv = h.transpose();
    let base = orbit_tangent_plane(&k, &h_inv, 1e-9)?;
    let base_value = base.plane.calibration_value().abs();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut min_translated = f64::INFINITY;
    let mut max_defect = (1.0 - base_value).abs();
    let mut fd = 0.0f64;
    let mut fd_opposite = 0.0f64;
    for i in 0..samples {
        let y: Vec<f64> = (0..k.len()).map(|_| rng.gen_range(-1.5..1.5)).collect();
        let mut gen = Matrix::zeros(5, 5);
        for (c, x) in y.iter().zip(&k) {
            gen = gen.add(&x.scale(c));
        }
        let axis: [f64; 3] = std::array::from_fn(|_| rng.gen_range(-2.0..2.0));
        let g = expm(&gen).mul(&h_inv).mul(&rho2(&rotation(axis)));
        let t = orbit_tangent_plane(&k, &g, 1e-9)?;
        let v = t.plane.calibration_value().abs();
        min_translated = min_translated.min(v);
        max_defect = max_defect.max((1.0 - v).abs());
        if i < 3 {
            let (a, b) = finite_difference_check(&k, &g, 1e-5);
            fd = fd.max(a);
            fd_opposite = fd_opposite.max(b);
        }
    }
    let lie_dim = lie_stabilizer_dim(&base.plane, 1e-8);
    let stabilizer_verified = match case.expected_stabilizer() {
        StabilizerClass::Circle => lie_dim == 1,
        StabilizerClass::Finite(group) => {
            let rhos = rho3_all(&group.elements_f64());
            lie_dim == 0 && stabilizer_contains(&base.plane, &rhos, 1e-8)
        }
    };
    Ok(HomogeneousReport {
        case,
        base_value,
        min_translated_value: min_translated,
        max_defect,
        stabilizer_verified,
        lie_stabilizer_dim: lie_dim,
        finite_difference_residual: fd,
        opposite_convention_residual: fd_opposite,
    })
}

pub fn verify_homogeneous_catalogue(samples: usize, seed: u64) -> Vec<Result<HomogeneousReport, BergerError>> {
    HomogeneousCase::ALL
        .par_iter()
        .enumerate()
        .map(|(i, &c)| verify_homogeneous_case(c, samples, seed.wrapping_add(i as u64)))
        .collect()
}

/// The twenty reference dodecahedron vertices, normalized.
pub fn dodecahedron_vertices() -> Vec<[f64; 3]> {
    let tau = (1.0 + 5f64.sqrt()) / 2.0;
    let r3 = 3f64.sqrt();
    let mut out = Vec::new();
    for s in [[1.0, 1.0, 1.0]] {
        for a in [-1.0, 1.0] {
            for b in [-1.0, 1.0] {
                for c in [-1.0, 1.0] {
                    out.push([a * s[0] / r3, b * s[1] / r3, c * s[2] / r3]);
                }
            }
        }
    }
    for a in [-1.0, 1.0] {
        for b in [-1.0, 1.0] {
            let (x, y) = (a * tau / r3, b / (tau * r3));
            out.push([0.0, x, y]);
            out.push([y, 0.0, x]);
            out.push([x, y, 0.0]);
        }
    }
    out
}

/// Solutions of `ν(u) ∈ Σ₀ ∩ h⁻¹·Σ₀`, i.e. `Υ(h ν(u)) = 1`.
#[derive(Clone, Debug)]
pub struct DodecaIntersection {
    pub points: Vec<[f64; 3]>,
    /// Largest `|1 − Υ(hν(u))|` over the solutions.
    pub max_residual: f64,
    /// Largest eigenvalue-criterion residual of `hν(u)`.
    pub max_eigen_residual: f64,
}

impl DodecaIntersection {
    /// Number of distinct `ν`-images.
    pub fn nu_images(&self) -> usize {
        let mut images: Vec<[f64; 5]> = Vec::new();
        for u in &self.points {
            let v = veronese(u);
            if !images.iter().any(|w| w.iter().zip(&v).all(|(a, b)| (a - b).abs() < 1e-6)) {
                images.push(v);
            }
        }
        images.len()
    }
}

fn sphere_newton(f: &Poly<f64>, grad: &[Poly<f64>; 3], hess: &[[Poly<f64>; 3]; 3], mut u: [f64; 3]) -> [f64; 3] {
    for _ in 0..60 {
        let g: Vec<f64> = grad.iter().map(|p| p.eval(&u)).collect();
        let ug: f64 = (0..3).map(|i| u[i] * g[i]).sum();
        let rg: Vec<f64> = (0..3).map(|i| g[i] - ug * u[i]).collect();
        if norm(&rg) < 1e-15 {
            break;
        }
        // Orthonormal tangent basis.
        let seed = if u[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
        let t = orthonormalize(&[u.to_vec(), seed.to_vec()]);
        let t1 = t[1].clone();
        let t2 = vec![u[1] * t1[2] - u[2] * t1[1], u[2] * t1[0] - u[0] * t1[2], u[0] * t1[1] - u[1] * t1[0]];
        let h: Vec<Vec<f64>> = (0..3).map(|i| (0..3).map(|j| hess[i][j].eval(&u)).collect()).collect();
        let quad = |a: &[f64], b: &[f64]| -> f64 {
            let mut s = 0.0;
            for i in 0..3 {
                for j in 0..3 {
                    s += a[i] * h[i][j] * b[j];
                }
            }
            s - ug * crate::linalg::dot(a, b)
        };
        let (h11, h12, h22) = (quad(&t1, &t1), quad(&t1, &t2), quad(&t2, &t2));
        let (b1, b2) = (crate::linalg::dot(&rg, &t1), crate::linalg::dot(&rg, &t2));
        let det = h11 * h22 - h12 * h12;
        let (d1, d2) = if det.abs() > 1e-14 && h11 < 0.0 && det > 0.0 {
            (-(h22 * b1 - h12 * b2) / det, -(h11 * b2 - h12 * b1) / det)
        } else {
            (0.1 * b1, 0.1 * b2)
        };
        let mut next = [0.0; 3];
        for i in 0..3 {
            next[i] = u[i] + d1 * t1[i] + d2 * t2[i];
        }
        let n = norm(&next);
        let cand = next.map(|x| x / n);
        if f.eval(&cand) + 1e-15 < f.eval(&u) && det > 0.0 && h11 < 0.0 {
            // Newton overshoot: fall back to a short gradient step.
            for i in 0..3 {
                next[i] = u[i] + 0.05 * rg[i];
            }
            let n = norm(&next);
            u = next.map(|x| x / n);
        } else {
            u = cand;
        }
    }
    u
}

/// Grid search plus Newton refinement for the maxima `Υ(hν(u)) = 1` on S².
pub fn dodeca_intersection(h: &Matrix<f64>, grid: (usize, usize)) -> DodecaIntersection {
    let nu: Vec<Poly<f64>> = {
        let x: Vec<Poly<f64>> = (0..3).map(|i| Poly::var(3, i)).collect();
        let r3 = 3f64.sqrt();
        vec![
            x[0].mul(&x[0]).sub(&x[1].mul(&x[1]).scale(&0.5)).sub(&x[2].mul(&x[2]).scale(&0.5)),
            x[0].mul(&x[1]).scale(&r3),
            x[0].mul(&x[2]).scale(&r3),
            x[1].mul(&x[1]).sub(&x[2].mul(&x[2])).scale(&(r3 / 2.0)),
            x[1].mul(&x[2]).scale(&r3),
        ]
    };
    let hnu: Vec<Poly<f64>> = (0..5)
        .map(|i| (0..5).fold(Poly::zero(3), |acc, j| acc.add(&nu[j].scale(&h[(i, j)]))))
        .collect();
    let f = upsilon_poly::<f64>().compose(&hnu);
    let grad: [Poly<f64>; 3] = std::array::from_fn(|i| f.derivative(i));
    let hess: [[Poly<f64>; 3]; 3] = std::array::from_fn(|i| std::array::from_fn(|j| grad[i].derivative(j)));
    let (nt, np) = grid;
    let point = |i: usize, j: usize| -> [f64; 3] {
        let theta = std::f64::consts::PI * (i as f64 + 0.5) / nt as f64;
        let phi = 2.0 * std::f64::consts::PI * j as f64 / np as f64;
        [theta.cos(), theta.sin() * phi.cos(), theta.sin() * phi.sin()]
    };
    let values: Vec<Vec<f64>> = (0..nt)
        .into_par_iter()
        .map(|i| (0..np).map(|j| f.eval(&point(i, j))).collect())
        .collect();
    let mut seeds = Vec::new();
    for i in 0..nt {
        for j in 0..np {
            let v = values[i][j];
            if v < 0.9 {
                continue;
            }
            let mut is_max = true;
            for di in [-1i64, 0, 1] {
                for dj in [-1i64, 0, 1] {
                    let ii = i as i64 + di;
                    if (di, dj) == (0, 0) || ii < 0 || ii >= nt as i64 {
                        continue;
                    }
                    let jj = (j as i64 + dj).rem_euclid(np as i64) as usize;
                    if values[ii as usize][jj] > v {
                        is_max = false;
                    }
                }
            }
            if is_max {
                seeds.push(point(i, j));
            }
        }
    }
    let refined: Vec<[f64; 3]> = seeds.par_iter().map(|&u| sphere_newton(&f, &grad, &hess, u)).collect();
    let mut points: Vec<[f64; 3]> = Vec::new();
    for u in refined {
        if (1.0 - f.eval(&u)).abs() > 1e-9 {
            continue;
        }
        if !points.iter().any(|q| norm(&[u[0] - q[0], u[1] - q[1], u[2] - q[2]]) < 1e-6) {
            points.push(u);
        }
    }
    points.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    let max_residual = points.iter().map(|u| (1.0 - f.eval(u)).abs()).fold(0.0, f64::max);
    let max_eigen_residual = points
        .iter()
        .map(|u| crate::rep::veronese_eigen_residual(&h.mul_vec(&veronese(u))))
        .fold(0.0, f64::max);
    DodecaIntersection {
        points,
        max_residual,
        max_eigen_residual,
    }
}

/// Largest distance from a point of `a` to its nearest point in `b`, and vice versa.
pub fn point_set_distance(a: &[[f64; 3]], b: &[[f64; 3]]) -> f64 {
    let one_way = |x: &[[f64; 3]], y: &[[f64; 3]]| {
        x.iter()
            .map(|p| {
                y.iter()
                    .map(|q| norm(&[p[0] - q[0], p[1] - q[1], p[2] - q[2]]))
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max)
    };
    one_way(a, b).max(one_way(b, a))
}

/// Whether `points` is exactly one orbit of the group acting on R³.
pub fn is_single_orbit(points: &[[f64; 3]], group: &FiniteGroup<f64>, tol: f64) -> bool {
    let Some(first) = points.first() else {
        return true;
    };
    let orbit: Vec<[f64; 3]> = group
        .elements
        .iter()
        .map(|g| {
            let v = g.mul_vec(first);
            [v[0], v[1], v[2]]
        })
        .collect();
    point_set_distance(points, &orbit) < tol
}

/// Target subgroup of SO(5) in a group-intersection count.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IntersectionTarget {
    /// `ρ₂(SO(3))`, the stabilizer of Υ.
    Irreducible,
    /// `SO(3)_std`, fixing `e₁` and `e₂`.
    Standard,
}

/// Number of `r` in the candidate group with `h⁻¹ρ₂(r)h` in the target subgroup.
pub fn group_intersection_order<S: Scalar>(
    candidate: &FiniteGroup<S>,
    h: &Matrix<S>,
    target: IntersectionTarget,
    tol: f64,
) -> usize {
    let h_inv = h.inverse().expect("invertible frame");
    let base = point_from(&Matrix::<S>::identity(5));
    let module = HarmonicModule::<S>::new(2);
    candidate
        .elements
        .iter()
        .filter(|r| {
            let m = h_inv.mul(&module.rho(r)).mul(h);
            match target {
                IntersectionTarget::Irreducible => point_from(&m).cubic.sub(&base.cubic).max_abs_coeff() <= tol,
                IntersectionTarget::Standard => (0..5).all(|i| {
                    (0..2).all(|j| {
                        let expected = if i == j { S::one() } else { S::zero() };
                        (m[(i, j)].clone() - expected).negligible(tol)
                    })
                }),
            }
        })
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::FieldScalar;

    #[test]
    fn identity_point_is_upsilon() {
        let p = point_from(&Matrix::<FieldScalar>::identity(5));
        assert_eq!(p.cubic, upsilon_poly());
        assert_eq!(p.coefficients().len(), 35);
    }

    #[test]
    fn ico_frame_is_orthogonal_and_moves_the_point() {
        let h = h_ico::<FieldScalar>();
        assert!(h.mul(&h.transpose()).sub(&Matrix::identity(5)).is_zero());
        assert_eq!(h.determinant(), FieldScalar::one());
        assert_ne!(point_from(&h), point_from(&Matrix::identity(5)));
    }

    #[test]
    fn rotation_reconstruction() {
        let r = rotation([0.3, -0.7, 1.1]);
        let back = reconstruct_rotation(&rho2(&r), 1e-9).unwrap();
        assert!(back.sub(&r).max_abs() < 1e-9);
        assert!(reconstruct_rotation(&circle_element(-2, 1, 0.4), 1e-6).is_none());
    }

    #[test]
    fn case_names_round_trip() {
        for c in HomogeneousCase::ALL {
            assert_eq!(HomogeneousCase::parse(c.name()).unwrap(), c);
        }
        assert!(HomogeneousCase::parse("nope").is_err());
    }

    #[test]
    fn torus_angles_round_trip() {
        let m = d_surface_element(0.3, 0.2);
        let (a, b) = torus_angles(&m, 1e-12).unwrap();
        assert!((a - 0.7).abs() < 1e-12 && (b - 0.4).abs() < 1e-12);
    }
}
