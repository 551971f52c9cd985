//! Small dense matrices over any [`Scalar`], plus `f64` helpers backed by nalgebra.

use std::ops::{Index, IndexMut};

use nalgebra::DMatrix;

use crate::scalar::{Scalar, ScalarError};

#[derive(Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> std::fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        write!(f, "]")
    }
}

impl<S> Index<(usize, usize)> for Matrix<S> {
    type Output = S;
    fn index(&self, (r, c): (usize, usize)) -> &S {
        &self.data[r * self.cols + c]
    }
}

impl<S> IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut S {
        &mut self.data[r * self.cols + c]
    }
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<S>]) -> Self {
        let n = cols.first().map_or(0, Vec::len);
        Self::from_fn(n, cols.len(), |r, c| cols[c][r].clone())
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| S::from_int(x)).collect())
                .collect(),
        )
    }

    pub fn diag(entries: &[S]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> Vec<S> {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn column(&self, c: usize) -> Vec<S> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<S>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn entries(&self) -> &[S] {
        &self.data
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut m = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    m[(i, j)] += a.clone() * b.clone();
                }
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = S::zero();
                for (k, x) in v.iter().enumerate() {
                    let a = &self[(i, k)];
                    if !a.is_zero() && !x.is_zero() {
                        acc += a.clone() * x.clone();
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a.clone() - b.clone())
    }

    pub fn scale(&self, s: &S) -> Self {
        self.map(|a| a.clone() * s.clone())
    }

    fn zip(&self, other: &Self, f: impl Fn(&S, &S) -> S) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn trace(&self) -> S {
        let mut t = S::zero();
        for i in 0..self.rows.min(self.cols) {
            t += self[(i, i)].clone();
        }
        t
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(Scalar::magnitude).fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn negligible(&self, tol: f64) -> bool {
        self.data.iter().all(|x| x.negligible(tol))
    }

    /// Row echelon reduction in place; returns pivot columns.
    /// Exact scalars pivot on any nonzero entry, floats on the largest entry above `tol`.
    fn echelon(&mut self, tol: f64) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let mut best: Option<(usize, f64)> = None;
            for i in r..self.rows {
                let x = &self[(i, c)];
                if x.negligible(tol) {
                    continue;
                }
                let m = x.magnitude();
                if best.is_none_or(|(_, bm)| m > bm) {
                    best = Some((i, m));
                }
            }
            let Some((p, _)) = best else { continue };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = self[(r, c)].inv().expect("nonzero pivot");
            for j in c..self.cols {
                let v = self[(r, j)].clone() * inv.clone();
                self[(r, j)] = v;
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self[(i, c)].clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    let v = self[(r, j)].clone();
                    if !v.is_zero() {
                        self[(i, j)] -= f.clone() * v;
                    }
                }
                self[(i, c)] = S::zero();
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, tol: f64) -> usize {
        self.clone().echelon(tol).len()
    }

    pub fn inverse(&self) -> Result<Self, ScalarError> {
        assert_eq!(self.rows, self.cols, "inverse of non-square matrix");
        let n = self.rows;
        let mut aug = Self::from_fn(n, 2 * n, |r, c| {
            if c < n {
                self[(r, c)].clone()
            } else if c - n == r {
                S::one()
            } else {
                S::zero()
            }
        });
        let pivots = aug.echelon(0.0);
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::from_fn(n, n, |r, c| aug[(r, c + n)].clone()))
    }

    /// Solve `self · x = b` for square invertible `self`.
    pub fn solve(&self, b: &[S]) -> Result<Vec<S>, ScalarError> {
        Ok(self.inverse()?.mul_vec(b))
    }

    /// Basis of the right null space.
    pub fn nullspace(&self, tol: f64) -> Vec<Vec<S>> {
        let mut m = self.clone();
        let pivots = m.echelon(tol);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![S::zero(); self.cols];
                v[f] = S::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -m[(r, f)].clone();
                }
                v
            })
            .collect()
    }

    pub fn determinant(&self) -> S {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut det = S::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return S::zero();
            };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            let pivot = m[(c, c)].clone();
            det *= pivot.clone();
            let inv = pivot.inv().expect("nonzero pivot");
            for i in c + 1..n {
                let f = m[(i, c)].clone() * inv.clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = m[(c, j)].clone();
                    m[(i, j)] -= f.clone() * v;
                }
            }
        }
        det
    }

    /// Block-embed into an `n × n` identity with top-left corner at `offset`.
    pub fn embed(&self, n: usize, offset: usize) -> Self {
        let mut m = Self::identity(n);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m[(r + offset, c + offset)] = self[(r, c)].clone();
            }
        }
        m
    }
}

/// Left inverse built from a set of pivot rows: recovers coefficients `x` from
/// `B·x` whenever the vector lies in the column span of `B`.
#[derive(Clone, Debug)]
pub struct Extractor<S: Scalar> {
    pivot_rows: Vec<usize>,
    inv: Matrix<S>,
}

impl<S: Scalar> Extractor<S> {
    /// `basis` has the spanning vectors as columns and must have full column rank.
    pub fn new(basis: &Matrix<S>) -> Self {
        let t = basis.transpose();
        let mut work = t.clone();
        let pivot_rows = work.echelon(1e-12);
        assert_eq!(pivot_rows.len(), basis.cols(), "basis is rank deficient");
        let sub = Matrix::from_fn(basis.cols(), basis.cols(), |r, c| {
            basis[(pivot_rows[r], c)].clone()
        });
        let inv = sub.inverse().expect("pivot block invertible");
        Extractor { pivot_rows, inv }
    }

    pub fn coords(&self, v: &[S]) -> Vec<S> {
        let picked: Vec<S> = self.pivot_rows.iter().map(|&r| v[r].clone()).collect();
        self.inv.mul_vec(&picked)
    }
}

pub fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    let mut acc = S::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x.clone() * y.clone();
        }
    }
    acc
}

pub fn axpy<S: Scalar>(a: &S, x: &[S], y: &[S]) -> Vec<S> {
    x.iter().zip(y).map(|(xi, yi)| a.clone() * xi.clone() + yi.clone()).collect()
}

pub fn scale_vec<S: Scalar>(a: &S, x: &[S]) -> Vec<S> {
    x.iter().map(|xi| a.clone() * xi.clone()).collect()
}

pub fn unit_vector<S: Scalar>(n: usize, i: usize) -> Vec<S> {
    let mut v = vec![S::zero(); n];
    v[i] = S::one();
    v
}

pub fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub fn to_f64_matrix<S: crate::scalar::RealScalar>(m: &Matrix<S>) -> Matrix<f64> {
    m.map(|x| x.to_f64())
}

pub fn to_nalgebra(m: &Matrix<f64>) -> DMatrix<f64> {
    DMatrix::from_fn(m.rows(), m.cols(), |r, c| m[(r, c)])
}

pub fn from_nalgebra(m: &DMatrix<f64>) -> Matrix<f64> {
    Matrix::from_fn(m.nrows(), m.ncols(), |r, c| m[(r, c)])
}

/// Orthonormal basis (as columns) of the span of the columns of `m`, with singular-value cutoff `tol`.
pub fn orthonormal_span(m: &Matrix<f64>, tol: f64) -> Matrix<f64> {
    let a = to_nalgebra(m);
    let svd = a.svd(true, false);
    let u = svd.u.expect("left singular vectors");
    let keep: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&i| svd.singular_values[i] > tol)
        .collect();
    Matrix::from_fn(m.rows(), keep.len(), |r, c| u[(r, keep[c])])
}

/// Orientation-preserving Gram–Schmidt (QR with positive diagonal).
pub fn orthonormalize(cols: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = Vec::with_capacity(cols.len());
    for v in cols {
        let mut w = v.clone();
        for _ in 0..2 {
            for q in &out {
                let d = dot(&w, q);
                for (wi, qi) in w.iter_mut().zip(q) {
                    *wi -= d * qi;
                }
            }
        }
        let n = norm(&w);
        out.push(w.iter().map(|x| x / n).collect());
    }
    out
}

/// Distance between two subspaces given by orthonormal column bases: the
/// operator norm of the difference of orthogonal projectors.
pub fn subspace_distance(a: &Matrix<f64>, b: &Matrix<f64>) -> f64 {
    if a.cols() != b.cols() {
        return f64::INFINITY;
    }
    let pa = a.mul(&a.transpose());
    let pb = b.mul(&b.transpose());
    let d = to_nalgebra(&pa.sub(&pb));
    d.singular_values().iter().cloned().fold(0.0, f64::max)
}

/// Symmetric eigen-decomposition with eigenvalues ascending.
pub fn symmetric_eigen(m: &Matrix<f64>) -> (Vec<f64>, Matrix<f64>) {
    let n = m.rows();
    let e = to_nalgebra(m).symmetric_eigen();
    let scale = m.max_abs().max(1.0);
    let accurate = (0..n).all(|k| {
        let v = e.eigenvectors.column(k);
        let r = to_nalgebra(m) * v - v * e.eigenvalues[k];
        r.norm() <= 1e-12 * scale
    });
    let (values, vectors) = if accurate {
        (e.eigenvalues.iter().copied().collect::<Vec<_>>(), from_nalgebra(&e.eigenvectors))
    } else {
        jacobi_eigen(m)
    };
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
    let vals = idx.iter().map(|&i| values[i]).collect();
    let vecs = Matrix::from_fn(n, n, |r, c| vectors[(r, idx[c])]);
    (vals, vecs)
}

/// Cyclic Jacobi rotations, used when the QR-based solver loses accuracy on clustered spectra.
fn jacobi_eigen(m: &Matrix<f64>) -> (Vec<f64>, Matrix<f64>) {
    let n = m.rows();
    let mut a = m.clone();
    let mut v = Matrix::<f64>::identity(n);
    for _ in 0..100 {
        let off: f64 = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).map(|(i, j)| a[(i, j)] * a[(i, j)]).sum();
        if off <= 1e-30 * m.max_abs().max(1.0).powi(2) {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[(p, q)] == 0.0 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * a[(p, q)]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[(k, p)], a[(k, q)]);
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[(p, k)], a[(q, k)]);
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }
    ((0..n).map(|i| a[(i, i)]).collect(), v)
}

/// Exponential of a real matrix by scaling and squaring with a Taylor series.
pub fn expm(a: &Matrix<f64>) -> Matrix<f64> {
    let n = a.rows();
    let norm = a.max_abs() * n as f64;
    let mut k = 0;
    let mut s = 1.0;
    while norm / s > 0.25 {
        s *= 2.0;
        k += 1;
    }
    let b = a.scale(&(1.0 / s));
    let mut term = Matrix::identity(n);
    let mut sum = Matrix::identity(n);
    for i in 1..20 {
        term = term.mul(&b).scale(&(1.0 / i as f64));
        sum = sum.add(&term);
    }
    for _ in 0..k {
        sum = sum.mul(&sum);
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::FieldScalar;

    #[test]
    fn jacobi_matches_spectrum_on_clustered_matrix() {
        let q = expm(&Matrix::from_fn(5, 5, |i, j| if i < j { 0.3 * (i + 2 * j) as f64 } else if i > j { -0.3 * (j + 2 * i) as f64 } else { 0.0 }));
        let m = q.mul(&Matrix::diag(&[-9.0, -9.0, 1e-15, -1e-15, 100.0])).mul(&q.transpose());
        let (vals, vecs) = jacobi_eigen(&m);
        for (k, val) in vals.iter().enumerate() {
            let v = vecs.column(k);
            let r: Vec<f64> = m.mul_vec(&v).iter().zip(&v).map(|(a, b)| a - val * b).collect();
            assert!(norm(&r) < 1e-12);
        }
        assert!(vecs.transpose().mul(&vecs).sub(&Matrix::identity(5)).max_abs() < 1e-13);
    }

    #[test]
    fn exact_inverse_and_determinant() {
        let m: Matrix<FieldScalar> = Matrix::from_rows(vec![
            vec![FieldScalar::surd(2), FieldScalar::one()],
            vec![FieldScalar::one(), FieldScalar::surd(2)],
        ]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
        assert_eq!(m.determinant(), FieldScalar::one());
    }

    #[test]
    fn nullspace_dimension() {
        let m: Matrix<f64> = Matrix::from_rows(vec![vec![1.0, 2.0, 3.0], vec![2.0, 4.0, 6.0]]);
        let ns = m.nullspace(1e-12);
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(m.mul_vec(&v).iter().all(|x| x.abs() < 1e-12));
        }
    }

    #[test]
    fn exponential_of_rotation_generator() {
        let a = Matrix::from_rows(vec![vec![0.0, -1.0], vec![1.0, 0.0]]);
        let r = expm(&a.scale(&0.7));
        assert!((r[(0, 0)] - 0.7f64.cos()).abs() < 1e-14);
        assert!((r[(1, 0)] - 0.7f64.sin()).abs() < 1e-14);
    }
}
