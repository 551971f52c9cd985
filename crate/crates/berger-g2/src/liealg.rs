//! The Lie algebra so(5) = so(3) ⊕ H₃ with the coframe (γ₁, γ₂, γ₃, ω₁, …, ω₇).
//!
//! The Maurer–Cartan form splits as `μ = γ + ω`. Here `γ` is the
//! so(3)-valued part, which is irreducibly embedded through `H₂`, and `ω`
//! takes values in the 7-dimensional complement.

use crate::forms::{InvariantForm, MatrixLieAlgebra};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

pub const DIM: usize = 10;
pub const NAMES: [&str; 10] = ["γ1", "γ2", "γ3", "ω1", "ω2", "ω3", "ω4", "ω5", "ω6", "ω7"];

/// Index of `γᵢ` (1-based `i`) in the coframe.
pub const fn gamma(i: usize) -> usize {
    i - 1
}

/// Index of `ωᵢ` (1-based `i`) in the coframe.
pub const fn omega(i: usize) -> usize {
    i + 2
}

/// Antisymmetric `n × n` matrix with `+c` at `(j, i)` and `−c` at `(i, j)` (0-based), i.e. `c·(eⱼ eᵢᵀ − eᵢ eⱼᵀ)`.
pub fn elementary<S: Scalar>(n: usize, i: usize, j: usize, c: S) -> Matrix<S> {
    let mut m = Matrix::zeros(n, n);
    m[(j, i)] = c.clone();
    m[(i, j)] = -c;
    m
}

/// The so(3)-valued part `γ` of the Maurer–Cartan form, evaluated at `(g₁, g₂, g₃)`.
pub fn gamma_matrix<S: Scalar>(g: &[S; 3]) -> Matrix<S> {
    let r3 = S::surd(3);
    let [g1, g2, g3] = g.clone();
    let z = S::zero;
    let two = S::from_int(2);
    Matrix::from_rows(vec![
        vec![z(), -(r3.clone() * g3.clone()), r3.clone() * g2.clone(), z(), z()],
        vec![r3.clone() * g3.clone(), z(), -g1.clone(), -g3.clone(), g2.clone()],
        vec![-(r3 * g2.clone()), g1.clone(), z(), -g2.clone(), -g3.clone()],
        vec![z(), g3.clone(), g2.clone(), z(), -(two.clone() * g1.clone())],
        vec![z(), -g2, g3, two * g1, z()],
    ])
}

/// The H₃-valued part `ω` of the Maurer–Cartan form, evaluated at `(w₁, …, w₇)`.
pub fn omega_matrix<S: Scalar>(w: &[S; 7]) -> Matrix<S> {
    let [w1, w2, w3, w4, w5, w6, w7] = w.clone();
    let r = |n: u32| S::surd(n);
    let two = || S::from_int(2);
    let z = S::zero;
    let m = Matrix::from_rows(vec![
        vec![z(), -(two() * w2.clone()), two() * w3.clone(), -(r(10) * w4.clone()), r(10) * w5.clone()],
        vec![
            two() * w2.clone(),
            z(),
            -(two() * r(2) * w1.clone()),
            r(3) * w2.clone() - r(5) * w6.clone(),
            -(r(3) * w3.clone()) + r(5) * w7.clone(),
        ],
        vec![
            -(two() * w3.clone()),
            two() * r(2) * w1.clone(),
            z(),
            r(3) * w3.clone() + r(5) * w7.clone(),
            r(3) * w2.clone() + r(5) * w6.clone(),
        ],
        vec![
            r(10) * w4.clone(),
            -(r(3) * w2.clone()) + r(5) * w6.clone(),
            -(r(3) * w3.clone()) - r(5) * w7.clone(),
            z(),
            r(2) * w1.clone(),
        ],
        vec![
            -(r(10) * w5),
            r(3) * w3 - r(5) * w7,
            -(r(3) * w2) - r(5) * w6,
            -(r(2) * w1),
            z(),
        ],
    ]);
    m.scale(&S::radical(1, 3, 2))
}

/// so(5) with the basis dual to (γ₁, γ₂, γ₃, ω₁, …, ω₇).
#[derive(Clone, Debug)]
pub struct So5<S: Scalar> {
    pub algebra: MatrixLieAlgebra<S>,
}

impl<S: Scalar> So5<S> {
    pub fn new() -> Self {
        let mut basis = Vec::with_capacity(DIM);
        for i in 0..3 {
            let mut g: [S; 3] = std::array::from_fn(|_| S::zero());
            g[i] = S::one();
            basis.push(gamma_matrix(&g));
        }
        for i in 0..7 {
            let mut w: [S; 7] = std::array::from_fn(|_| S::zero());
            w[i] = S::one();
            basis.push(omega_matrix(&w));
        }
        So5 {
            algebra: MatrixLieAlgebra::new(basis),
        }
    }

    pub fn basis(&self) -> &[Matrix<S>] {
        self.algebra.basis()
    }

    /// Values `(γ₁…γ₃, ω₁…ω₇)` of the coframe on an element of so(5).
    pub fn coords(&self, m: &Matrix<S>) -> Vec<S> {
        self.algebra.coords(m)
    }

    /// The H₃-part `(ω₁, …, ω₇)` of an element.
    pub fn omega_part(&self, m: &Matrix<S>) -> Vec<S> {
        self.coords(m)[3..].to_vec()
    }

    pub fn element(&self, coords: &[S]) -> Matrix<S> {
        self.algebra.element(coords)
    }

    pub fn ce_d(&self, f: &InvariantForm<S>) -> InvariantForm<S> {
        self.algebra.ce_d(f)
    }

    /// The 1-form `μ_{ab}` (0-based entry of the Maurer–Cartan matrix) in the coframe.
    pub fn mc_entry(&self, a: usize, b: usize) -> InvariantForm<S> {
        let coeffs: Vec<S> = self.basis().iter().map(|m| m[(a, b)].clone()).collect();
        InvariantForm::one_form(&coeffs)
    }

    /// The 1-form `γᵢ` or `ωᵢ` as an [`InvariantForm`].
    pub fn coframe(&self, index: usize) -> InvariantForm<S> {
        InvariantForm::basis(DIM, index)
    }

    /// The 2-forms `θⁱ∧θʲ`, `i < j`.
    pub fn basis_two_forms(&self) -> Vec<InvariantForm<S>> {
        let mut out = Vec::new();
        for i in 0..DIM {
            for j in i + 1..DIM {
                out.push(InvariantForm::monomial(DIM, &[i, j], S::one()));
            }
        }
        out
    }
}

impl<S: Scalar> Default for So5<S> {
    fn default() -> Self {
        Self::new()
    }
}

/// Named subalgebras of so(5) used for the homogeneous examples.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subalgebra {
    /// The irreducible so(3), i.e. the `γ` directions.
    So3Irr,
    /// Stabilizer of `e₁`.
    So4,
    /// Stabilizer of `e₁` and of `e²³ + e⁴⁵`.
    U2,
    /// Stabilizer of `e₁` and of `(e₂ + ie₃)∧(e₄ + ie₅)`.
    Su2,
    /// Rotations of span(e₃, e₄, e₅).
    So3Std,
    /// Rotations of span(e₁, e₂) plus rotations of span(e₃, e₄, e₅).
    So2xSo3Std,
    /// The maximal torus rotating the (e₂, e₃) and (e₄, e₅) planes.
    T2,
    /// The circle `θ·(e₂ + ie₃, e₄ + ie₅) = (e^{ipθ}(e₂ + ie₃), e^{iqθ}(e₄ + ie₅))`.
    Circle(i64, i64),
}

impl Subalgebra {
    pub fn parse(name: &str) -> Option<Self> {
        Some(match name {
            "so3_irr" => Self::So3Irr,
            "so4" => Self::So4,
            "u2" => Self::U2,
            "su2" => Self::Su2,
            "so3_std" => Self::So3Std,
            "so2xso3_std" | "so2×so3_std" => Self::So2xSo3Std,
            "t2" => Self::T2,
            _ => {
                let inner = name.strip_prefix("s1(")?.strip_suffix(')')?;
                let (p, q) = inner.split_once(',')?;
                Self::Circle(p.trim().parse().ok()?, q.trim().parse().ok()?)
            }
        })
    }

    pub fn basis<S: Scalar>(&self) -> Vec<Matrix<S>> {
        let e = |i: usize, j: usize| elementary::<S>(5, i, j, S::one());
        match *self {
            Self::So3Irr => So5::<S>::new().basis()[..3].to_vec(),
            Self::So4 => {
                let mut v = Vec::new();
                for i in 1..5 {
                    for j in i + 1..5 {
                        v.push(e(i, j));
                    }
                }
                v
            }
            // Commutant of J = e²³ + e⁴⁵ in so(4): J itself and the su(2) it contains.
            Self::U2 => vec![
                e(1, 2).add(&e(3, 4)),
                e(1, 2).sub(&e(3, 4)),
                e(1, 3).add(&e(2, 4)),
                e(1, 4).sub(&e(2, 3)),
            ],
            Self::Su2 => vec![
                e(1, 2).sub(&e(3, 4)),
                e(1, 3).add(&e(2, 4)),
                e(1, 4).sub(&e(2, 3)),
            ],
            Self::So3Std => vec![e(2, 3), e(2, 4), e(3, 4)],
            Self::So2xSo3Std => vec![e(0, 1), e(2, 3), e(2, 4), e(3, 4)],
            Self::T2 => vec![e(1, 2), e(3, 4)],
            Self::Circle(p, q) => {
                vec![elementary(5, 2, 1, S::from_int(p)).add(&elementary(5, 4, 3, S::from_int(q)))]
            }
        }
    }
}

/// One row of the structure-equation comparison: the computed differential of a
/// coframe element against its closed-form right-hand side.
#[derive(Clone, Debug)]
pub struct StructureRow {
    pub form: &'static str,
    pub residual: f64,
    pub exact_zero: bool,
}

fn term<S: Scalar>(c: S, i: usize, j: usize) -> InvariantForm<S> {
    InvariantForm::monomial(DIM, &[i, j], c)
}

/// The right-hand sides of the structure equations of the coframe.
///
/// For `ω` they are `dω = −Γ∧ω + (2/3)Q(ω)`, and for `γ` they are
/// `dγ₁ = −γ₂∧γ₃ + (2/9)(2ω₂₃ + 4ω₄₅ + 6ω₆₇)` together with its two cyclic companions.
pub fn expected_structure<S: Scalar>() -> Vec<InvariantForm<S>> {
    let g = gamma;
    let w = omega;
    let q = |n: i64, d: i64| S::from_ratio(n, d);
    let rad = |n: i64, d: i64, s: u32| S::radical(n, d, s);

    // Γ as a 7×7 array of (coefficient, γ index) pairs.
    let r6 = |n: i64, d: i64| rad(n, d, 6);
    let r10 = |n: i64, d: i64| rad(n, d, 10);
    type Entry<S> = Option<(S, usize)>;
    let mut big: Vec<Vec<Entry<S>>> = vec![vec![None; 7]; 7];
    let mut set = |r: usize, c: usize, v: S, gi: usize| big[r - 1][c - 1] = Some((v, g(gi)));
    set(1, 2, r6(1, 1), 2);
    set(1, 3, r6(-1, 1), 3);
    set(2, 1, r6(-1, 1), 2);
    set(2, 3, q(1, 1), 1);
    set(2, 4, r10(-1, 2), 3);
    set(2, 5, r10(-1, 2), 2);
    set(3, 1, r6(1, 1), 3);
    set(3, 2, q(-1, 1), 1);
    set(3, 4, r10(1, 2), 2);
    set(3, 5, r10(-1, 2), 3);
    set(4, 2, r10(1, 2), 3);
    set(4, 3, r10(-1, 2), 2);
    set(4, 5, q(2, 1), 1);
    set(4, 6, r6(-1, 2), 3);
    set(4, 7, r6(-1, 2), 2);
    set(5, 2, r10(1, 2), 2);
    set(5, 3, r10(1, 2), 3);
    set(5, 4, q(-2, 1), 1);
    set(5, 6, r6(1, 2), 2);
    set(5, 7, r6(-1, 2), 3);
    set(6, 4, r6(1, 2), 3);
    set(6, 5, r6(-1, 2), 2);
    set(6, 7, q(3, 1), 1);
    set(7, 4, r6(1, 2), 2);
    set(7, 5, r6(1, 2), 3);
    set(7, 6, q(-3, 1), 1);

    let quad: [[(i64, usize, usize); 3]; 7] = [
        [(-1, 2, 3), (-1, 4, 5), (1, 6, 7)],
        [(1, 1, 3), (-1, 4, 6), (-1, 5, 7)],
        [(-1, 1, 2), (1, 5, 6), (-1, 4, 7)],
        [(1, 1, 5), (1, 2, 6), (1, 3, 7)],
        [(-1, 1, 4), (-1, 3, 6), (1, 2, 7)],
        [(-1, 1, 7), (-1, 2, 4), (1, 3, 5)],
        [(1, 1, 6), (-1, 2, 5), (-1, 3, 4)],
    ];

    let mut out = Vec::with_capacity(DIM);

    // γ equations.
    let two9 = || q(2, 9);
    let mut d1 = term(q(-1, 1), g(2), g(3));
    d1 = d1.add(&term(two9() * q(2, 1), w(2), w(3)));
    d1 = d1.add(&term(two9() * q(4, 1), w(4), w(5)));
    d1 = d1.add(&term(two9() * q(6, 1), w(6), w(7)));
    out.push(d1);

    let mut d2 = term(q(-1, 1), g(3), g(1));
    d2 = d2.add(&term(two9() * r6(2, 1), w(1), w(2)));
    d2 = d2.add(&term(two9() * r10(-1, 1), w(2), w(5)));
    d2 = d2.add(&term(two9() * r10(1, 1), w(3), w(4)));
    d2 = d2.add(&term(two9() * r6(-1, 1), w(4), w(7)));
    d2 = d2.add(&term(two9() * r6(1, 1), w(5), w(6)));
    out.push(d2);

    let mut d3 = term(q(-1, 1), g(1), g(2));
    d3 = d3.add(&term(two9() * r6(-2, 1), w(1), w(3)));
    d3 = d3.add(&term(two9() * r10(-1, 1), w(2), w(4)));
    d3 = d3.add(&term(two9() * r10(-1, 1), w(3), w(5)));
    d3 = d3.add(&term(two9() * r6(-1, 1), w(4), w(6)));
    d3 = d3.add(&term(two9() * r6(-1, 1), w(5), w(7)));
    out.push(d3);

    for r in 0..7 {
        let mut f = InvariantForm::zero(DIM);
        for (c, entry) in big[r].iter().enumerate() {
            if let Some((v, gi)) = entry {
                f = f.sub(&term(v.clone(), *gi, w(c + 1)));
            }
        }
        for &(s, i, j) in &quad[r] {
            f = f.add(&term(q(2 * s, 3), w(i), w(j)));
        }
        out.push(f);
    }
    out
}

/// Compare `d` of each coframe element with the expected right-hand side.
pub fn verify_berger_structure<S: Scalar>(so5: &So5<S>, tol: f64) -> Vec<StructureRow> {
    let expected = expected_structure::<S>();
    (0..DIM)
        .map(|k| {
            let diff = so5.ce_d(&so5.coframe(k)).sub(&expected[k]);
            StructureRow {
                form: NAMES[k],
                residual: diff.max_abs(),
                exact_zero: diff.negligible(tol),
            }
        })
        .collect()
}

/// Largest coefficient of `d(dα)` over all coframe 1-forms and basis 2-forms.
pub fn d_squared_residual<S: Scalar>(so5: &So5<S>) -> f64 {
    let mut worst = 0.0f64;
    for k in 0..DIM {
        worst = worst.max(so5.ce_d(&so5.ce_d(&so5.coframe(k))).max_abs());
    }
    for f in so5.basis_two_forms() {
        worst = worst.max(so5.ce_d(&so5.ce_d(&f)).max_abs());
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::FieldScalar;

    #[test]
    fn coordinates_round_trip() {
        let so5 = So5::<FieldScalar>::new();
        for (i, b) in so5.basis().iter().enumerate() {
            let c = so5.coords(b);
            for (j, x) in c.iter().enumerate() {
                assert_eq!(x.is_zero(), i != j);
            }
        }
    }

    #[test]
    fn subalgebra_names_parse() {
        assert_eq!(Subalgebra::parse("s1(-2,1)"), Some(Subalgebra::Circle(-2, 1)));
        assert_eq!(Subalgebra::parse("u2"), Some(Subalgebra::U2));
        assert_eq!(Subalgebra::parse("nope"), None);
    }
}
