//! Left-invariant exterior forms on a matrix Lie group and the Chevalley–Eilenberg differential.
//!
//! A monomial `θ^{i₁}∧…∧θ^{i_k}` with `i₁ < … < i_k` is stored as the bitmask of
//! its indices.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use crate::linalg::{Extractor, Matrix};
use crate::scalar::{ComplexScalar, Scalar};

#[derive(Clone, PartialEq)]
pub struct InvariantForm<S> {
    dim: usize,
    terms: BTreeMap<u32, S>,
}

/// Sign of `θ^a ∧ θ^b` relative to the sorted monomial, zero if they overlap.
pub fn wedge_sign(a: u32, b: u32) -> i32 {
    if a & b != 0 {
        return 0;
    }
    let mut inversions = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        rest &= rest - 1;
        let above = if j >= 31 { 0 } else { a & !((1u32 << (j + 1)) - 1) };
        inversions += above.count_ones();
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn indices_of(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask & (1 << i) != 0).collect()
}

pub fn mask_of(indices: &[usize]) -> u32 {
    indices.iter().fold(0, |m, &i| m | (1 << i))
}

/// Sign of the permutation sorting `indices`; zero on repeats.
pub fn sort_sign(indices: &[usize]) -> i32 {
    let mut sign = 1;
    for i in 0..indices.len() {
        for j in i + 1..indices.len() {
            match indices[i].cmp(&indices[j]) {
                std::cmp::Ordering::Equal => return 0,
                std::cmp::Ordering::Greater => sign = -sign,
                std::cmp::Ordering::Less => {}
            }
        }
    }
    sign
}

impl<S: Scalar> InvariantForm<S> {
    pub fn zero(dim: usize) -> Self {
        assert!(dim <= 32);
        InvariantForm {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, c: S) -> Self {
        let mut f = Self::zero(dim);
        f.add_term(0, c);
        f
    }

    /// The basis 1-form `θ^i`.
    pub fn basis(dim: usize, i: usize) -> Self {
        Self::monomial(dim, &[i], S::one())
    }

    /// `c · θ^{i₁}∧…∧θ^{i_k}` for indices in any order.
    pub fn monomial(dim: usize, indices: &[usize], c: S) -> Self {
        let mut f = Self::zero(dim);
        let sign = sort_sign(indices);
        if sign != 0 {
            let c = if sign < 0 { -c } else { c };
            f.add_term(mask_of(indices), c);
        }
        f
    }

    /// 1-form with the given coefficients.
    pub fn one_form(coeffs: &[S]) -> Self {
        let mut f = Self::zero(coeffs.len());
        for (i, c) in coeffs.iter().enumerate() {
            f.add_term(1 << i, c.clone());
        }
        f
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &S)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, mask: u32) -> S {
        self.terms.get(&mask).cloned().unwrap_or_else(S::zero)
    }

    /// Coefficient of `θ^{i₁}∧…` for indices in any order.
    pub fn coeff_of(&self, indices: &[usize]) -> S {
        let c = self.coeff(mask_of(indices));
        match sort_sign(indices) {
            0 => S::zero(),
            1 => c,
            _ => -c,
        }
    }

    pub fn add_term(&mut self, mask: u32, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mask) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Whether every coefficient is negligible at `tol` (exactly zero for exact scalars).
    pub fn negligible(&self, tol: f64) -> bool {
        self.terms.values().all(|c| c.negligible(tol))
    }

    pub fn max_abs(&self) -> f64 {
        self.terms.values().map(Scalar::magnitude).fold(0.0, f64::max)
    }

    pub fn norm(&self) -> f64 {
        self.terms
            .values()
            .map(|c| c.magnitude().powi(2))
            .sum::<f64>()
            .sqrt()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut f = self.clone();
        for (k, v) in &other.terms {
            f.add_term(*k, v.clone());
        }
        f
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut f = self.clone();
        for (k, v) in &other.terms {
            f.add_term(*k, -v.clone());
        }
        f
    }

    pub fn scale(&self, s: &S) -> Self {
        let mut f = Self::zero(self.dim);
        for (k, v) in &self.terms {
            f.add_term(*k, v.clone() * s.clone());
        }
        f
    }

    pub fn neg(&self) -> Self {
        self.scale(&-S::one())
    }

    pub fn wedge(&self, other: &Self) -> Self {
        let mut f = Self::zero(self.dim.max(other.dim));
        for (ka, va) in &self.terms {
            for (kb, vb) in &other.terms {
                let s = wedge_sign(*ka, *kb);
                if s == 0 {
                    continue;
                }
                let p = va.clone() * vb.clone();
                f.add_term(ka | kb, if s > 0 { p } else { -p });
            }
        }
        f
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> InvariantForm<T> {
        let mut g = InvariantForm::zero(self.dim);
        for (k, v) in &self.terms {
            g.add_term(*k, f(v));
        }
        g
    }

    pub fn conj(&self) -> Self {
        self.map(Scalar::conj)
    }

    /// Keep only monomials satisfying `keep`.
    pub fn filter(&self, keep: impl Fn(u32) -> bool) -> Self {
        let mut g = Self::zero(self.dim);
        for (k, v) in &self.terms {
            if keep(*k) {
                g.add_term(*k, v.clone());
            }
        }
        g
    }

    /// Whether every monomial contains at least one index from `ideal`.
    pub fn in_ideal(&self, ideal: u32) -> bool {
        self.terms.keys().all(|k| k & ideal != 0)
    }

    /// Substitute each basis 1-form `θ^i` by the form `images[i]`.
    pub fn substitute(&self, images: &[InvariantForm<S>]) -> Self {
        let dim = images.first().map_or(self.dim, |f| f.dim);
        let mut out = Self::zero(dim);
        for (k, v) in &self.terms {
            let mut acc = Self::constant(dim, v.clone());
            for i in indices_of(*k) {
                acc = acc.wedge(&images[i]);
            }
            out = out.add(&acc);
        }
        out
    }

    /// Evaluate a `k`-form on `k` vectors (`(α∧β)(X,Y) = α(X)β(Y) − α(Y)β(X)`).
    pub fn evaluate(&self, vectors: &[Vec<S>]) -> S {
        let k = vectors.len();
        let mut acc = S::zero();
        for (mask, c) in &self.terms {
            if mask.count_ones() as usize != k {
                continue;
            }
            let idx = indices_of(*mask);
            let m = Matrix::from_fn(k, k, |r, col| vectors[col][idx[r]].clone());
            acc += c.clone() * m.determinant();
        }
        acc
    }

    /// Interior product with the basis vector dual to `θ^i`.
    pub fn interior_basis(&self, i: usize) -> Self {
        let mut f = Self::zero(self.dim);
        for (k, v) in &self.terms {
            if k & (1 << i) == 0 {
                continue;
            }
            let below = (k & ((1u32 << i) - 1)).count_ones();
            let c = if below.is_multiple_of(2) { v.clone() } else { -v.clone() };
            f.add_term(k & !(1 << i), c);
        }
        f
    }

    /// Hodge star for the metric making the basis orthonormal, volume `θ^0∧…∧θ^{n−1}`.
    pub fn hodge(&self) -> Self {
        let full = if self.dim == 32 { u32::MAX } else { (1u32 << self.dim) - 1 };
        let mut f = Self::zero(self.dim);
        for (k, v) in &self.terms {
            let comp = full & !k;
            let s = wedge_sign(*k, comp);
            f.add_term(comp, if s > 0 { v.clone() } else { -v.clone() });
        }
        f
    }
}

impl<S: Scalar> InvariantForm<ComplexScalar<S>> {
    pub fn real_part(&self) -> InvariantForm<S> {
        let mut f = InvariantForm::zero(self.dim);
        for (k, v) in &self.terms {
            f.add_term(*k, v.re.clone());
        }
        f
    }

    pub fn imag_part(&self) -> InvariantForm<S> {
        let mut f = InvariantForm::zero(self.dim);
        for (k, v) in &self.terms {
            f.add_term(*k, v.im.clone());
        }
        f
    }
}

pub fn complexify<S: Scalar>(f: &InvariantForm<S>) -> InvariantForm<ComplexScalar<S>> {
    f.map(|c| ComplexScalar::real(c.clone()))
}

impl<S: Scalar> fmt::Debug for InvariantForm<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, &[])
    }
}

impl<S: Scalar> InvariantForm<S> {
    fn fmt_with(&self, f: &mut fmt::Formatter<'_>, names: &[&str]) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, v) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let idx: Vec<String> = indices_of(*k)
                .iter()
                .map(|&i| names.get(i).map_or_else(|| format!("θ{i}"), |s| s.to_string()))
                .collect();
            write!(f, "({v:?})·{}", idx.join("∧"))?;
        }
        Ok(())
    }

    /// Render with named basis 1-forms.
    pub fn display_with<'a>(&'a self, names: &'a [&'a str]) -> impl fmt::Display + 'a {
        struct D<'a, S>(&'a InvariantForm<S>, &'a [&'a str]);
        impl<S: Scalar> fmt::Display for D<'_, S> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.fmt_with(f, self.1)
            }
        }
        D(self, names)
    }
}

/// The degree-one antiderivation with `d(θ^k) = differentials[k]`.
pub fn antiderivation<S: Scalar>(form: &InvariantForm<S>, differentials: &[InvariantForm<S>]) -> InvariantForm<S> {
    let n = differentials.len();
    let mut out = InvariantForm::zero(n);
    for (mask, c) in form.terms() {
        let idx = indices_of(mask);
        for (pos, &k) in idx.iter().enumerate() {
            let left = mask_of(&idx[..pos]);
            let right = mask_of(&idx[pos + 1..]);
            let sign_pos = if pos % 2 == 0 { c.clone() } else { -c.clone() };
            for (dm, dc) in differentials[k].terms() {
                let s1 = wedge_sign(left, dm);
                if s1 == 0 {
                    continue;
                }
                let s2 = wedge_sign(left | dm, right);
                if s2 == 0 {
                    continue;
                }
                let v = sign_pos.clone() * dc.clone();
                out.add_term(left | dm | right, if s1 * s2 > 0 { v } else { -v });
            }
        }
    }
    out
}

/// Proportionality `a = c·b` with the measured constant.
#[derive(Clone, Debug)]
pub struct Proportionality<S: Scalar> {
    pub constant: Option<S>,
    pub residual: f64,
}

/// Measure `c` with `a = c·b` from the largest coefficient of `b`.
pub fn proportionality<S: Scalar>(a: &InvariantForm<S>, b: &InvariantForm<S>, tol: f64) -> Proportionality<S> {
    let Some((mask, bc)) = b.terms().max_by(|x, y| x.1.magnitude().total_cmp(&y.1.magnitude())) else {
        return Proportionality {
            constant: None,
            residual: a.max_abs(),
        };
    };
    let c = a.coeff(mask).div(bc).expect("largest coefficient is nonzero");
    let residual = a.sub(&b.scale(&c)).max_abs();
    Proportionality {
        constant: (residual <= tol).then_some(c),
        residual,
    }
}

/// A Lie algebra of matrices with a chosen basis, its dual coframe and structure constants.
#[derive(Clone, Debug)]
pub struct MatrixLieAlgebra<S: Scalar> {
    basis: Vec<Matrix<S>>,
    extractor: Extractor<S>,
    /// `dθ^k` for each basis 1-form.
    differentials: Vec<InvariantForm<S>>,
}

impl<S: Scalar> MatrixLieAlgebra<S> {
    /// Builds the algebra from basis matrices; the bracket must close on their span.
    pub fn new(basis: Vec<Matrix<S>>) -> Self {
        let cols: Vec<Vec<S>> = basis.iter().map(|m| m.entries().to_vec()).collect();
        let extractor = Extractor::new(&Matrix::from_columns(&cols));
        let n = basis.len();
        let mut differentials = vec![InvariantForm::zero(n); n];
        for i in 0..n {
            for j in i + 1..n {
                let c = extractor.coords(basis[i].commutator(&basis[j]).entries());
                for (k, ck) in c.into_iter().enumerate() {
                    differentials[k].add_term((1 << i) | (1 << j), -ck);
                }
            }
        }
        MatrixLieAlgebra {
            basis,
            extractor,
            differentials,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Matrix<S>] {
        &self.basis
    }

    /// Coordinates of a matrix in the span of the basis (the values of the coframe on it).
    pub fn coords(&self, m: &Matrix<S>) -> Vec<S> {
        self.extractor.coords(m.entries())
    }

    pub fn element(&self, coords: &[S]) -> Matrix<S> {
        let n = self.basis[0].rows();
        let mut m = Matrix::zeros(n, n);
        for (c, b) in coords.iter().zip(&self.basis) {
            if !c.is_zero() {
                m = m.add(&b.scale(c));
            }
        }
        m
    }

    /// Whether `m` lies in the span of the basis.
    pub fn contains(&self, m: &Matrix<S>, tol: f64) -> bool {
        self.element(&self.coords(m)).sub(m).negligible(tol)
    }

    /// `c_{ij}^k` with `[X_i, X_j] = Σ_k c_{ij}^k X_k`.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> S {
        -self.differentials[k].coeff_of(&[i, j])
    }

    pub fn bracket_coords(&self, i: usize, j: usize) -> Vec<S> {
        self.coords(&self.basis[i].commutator(&self.basis[j]))
    }

    /// `dθ^k`.
    pub fn d_basis(&self, k: usize) -> &InvariantForm<S> {
        &self.differentials[k]
    }

    /// The Chevalley–Eilenberg differential, `dα(X,Y) = −α([X,Y])` on 1-forms, extended as an antiderivation.
    pub fn ce_d(&self, form: &InvariantForm<S>) -> InvariantForm<S> {
        antiderivation(form, &self.differentials)
    }

    /// Jacobi identity residual over all basis triples.
    pub fn jacobi_residual(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (a, b, c) = (&self.basis[i], &self.basis[j], &self.basis[k]);
                    let s = a
                        .commutator(&b.commutator(c))
                        .add(&b.commutator(&c.commutator(a)))
                        .add(&c.commutator(&a.commutator(b)));
                    worst = worst.max(s.max_abs());
                }
            }
        }
        worst
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T + Copy) -> MatrixLieAlgebra<T> {
        MatrixLieAlgebra::new(self.basis.iter().map(|m| m.map(f)).collect())
    }
}

/// The same algebra with complex coefficients (for forms like `ζ = θ¹ − iθ²`).
pub fn complex_ce<S: Scalar>(
    alg: &MatrixLieAlgebra<S>,
) -> impl Fn(&InvariantForm<ComplexScalar<S>>) -> InvariantForm<ComplexScalar<S>> + '_ {
    move |f| {
        let re = alg.ce_d(&f.real_part());
        let im = alg.ce_d(&f.imag_part());
        let mut out = complexify(&re);
        for (k, v) in im.terms() {
            out.add_term(k, ComplexScalar::new(S::zero(), v.clone()));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wedge_signs() {
        assert_eq!(wedge_sign(0b001, 0b010), 1);
        assert_eq!(wedge_sign(0b010, 0b001), -1);
        assert_eq!(wedge_sign(0b110, 0b001), 1);
        assert_eq!(wedge_sign(0b011, 0b010), 0);
    }

    #[test]
    fn antisymmetry_of_one_forms() {
        let a = InvariantForm::<f64>::basis(3, 0);
        let b = InvariantForm::<f64>::basis(3, 2);
        assert_eq!(a.wedge(&b), b.wedge(&a).neg());
        assert!(a.wedge(&a).is_zero());
    }

    #[test]
    fn hodge_star_of_volume_pieces() {
        let f = InvariantForm::<f64>::monomial(3, &[0], 1.0);
        assert_eq!(f.hodge(), InvariantForm::monomial(3, &[1, 2], 1.0));
        let g = InvariantForm::<f64>::monomial(3, &[1], 1.0);
        assert_eq!(g.hodge(), InvariantForm::monomial(3, &[0, 2], -1.0));
    }

    #[test]
    fn so3_structure() {
        let e = |i: usize, j: usize| {
            let mut m = Matrix::<f64>::zeros(3, 3);
            m[(j, i)] = 1.0;
            m[(i, j)] = -1.0;
            m
        };
        let alg = MatrixLieAlgebra::new(vec![e(1, 2), e(2, 0), e(0, 1)]);
        assert_eq!(alg.structure_constant(0, 1, 2), 1.0);
        assert_eq!(alg.jacobi_residual(), 0.0);
        for k in 0..3 {
            assert!(alg.ce_d(alg.d_basis(k)).is_zero());
        }
    }
}
