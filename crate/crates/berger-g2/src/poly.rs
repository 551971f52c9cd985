//! Sparse multivariate polynomials with a fixed number of variables.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use crate::linalg::Matrix;
use crate::scalar::Scalar;

pub type Exponent = Vec<u8>;

#[derive(Clone, Debug, PartialEq)]
pub struct Poly<S> {
    nvars: usize,
    terms: BTreeMap<Exponent, S>,
}

impl<S: Scalar> Poly<S> {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: S) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, S::one())
    }

    pub fn monomial(exp: Exponent, c: S) -> Self {
        let mut p = Self::zero(exp.len());
        p.add_term(exp, c);
        p
    }

    /// Linear form `Σ cᵢ xᵢ`.
    pub fn linear(coeffs: &[S]) -> Self {
        let mut p = Self::zero(coeffs.len());
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; coeffs.len()];
            e[i] = 1;
            p.add_term(e, c.clone());
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &S)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &[u8]) -> S {
        self.terms.get(exp).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exp: Exponent, c: S) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(exp.len(), self.nvars);
        match self.terms.entry(exp) {
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

    pub fn add(&self, other: &Self) -> Self {
        let mut p = self.clone();
        for (e, c) in &other.terms {
            p.add_term(e.clone(), c.clone());
        }
        p
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-S::one()))
    }

    pub fn scale(&self, s: &S) -> Self {
        let mut p = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            p.add_term(e.clone(), c.clone() * s.clone());
        }
        p
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut p = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponent = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                p.add_term(e, ca.clone() * cb.clone());
            }
        }
        p
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut p = Self::constant(self.nvars, S::one());
        for _ in 0..k {
            p = p.mul(self);
        }
        p
    }

    pub fn derivative(&self, i: usize) -> Self {
        let mut p = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut f = e.clone();
            f[i] -= 1;
            p.add_term(f, c.clone() * S::from_int(e[i] as i64));
        }
        p
    }

    pub fn laplacian(&self) -> Self {
        (0..self.nvars).fold(Self::zero(self.nvars), |acc, i| {
            acc.add(&self.derivative(i).derivative(i))
        })
    }

    /// `p(A x)`: substitute `xᵢ ↦ Σⱼ Aᵢⱼ xⱼ`.
    pub fn substitute_linear(&self, a: &Matrix<S>) -> Self {
        let lin: Vec<Poly<S>> = (0..self.nvars).map(|i| Poly::linear(&a.row(i))).collect();
        self.compose(&lin)
    }

    /// `p(q₁, …, qₙ)` for polynomials `qᵢ` sharing a common variable count.
    pub fn compose(&self, images: &[Poly<S>]) -> Poly<S> {
        assert_eq!(images.len(), self.nvars, "one image per variable");
        let m = images.first().map_or(0, Poly::nvars);
        let mut powers: Vec<Vec<Poly<S>>> = images.iter().map(|q| vec![Poly::constant(m, S::one()), q.clone()]).collect();
        let mut p = Poly::zero(m);
        for (e, c) in &self.terms {
            let mut term = Poly::constant(m, c.clone());
            for (i, &k) in e.iter().enumerate() {
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap().mul(&images[i]);
                    powers[i].push(next);
                }
                if k > 0 {
                    term = term.mul(&powers[i][k as usize]);
                }
            }
            p = p.add(&term);
        }
        p
    }

    /// Apply the vector field `x ↦ −X x` as a derivation: `p ↦ −∇p · (X x)`.
    pub fn lie_derivative(&self, x: &Matrix<S>) -> Self {
        let n = self.nvars;
        let mut p = Self::zero(n);
        for i in 0..n {
            let flow = Poly::linear(&x.row(i));
            p = p.sub(&self.derivative(i).mul(&flow));
        }
        p
    }

    pub fn eval(&self, x: &[S]) -> S {
        let mut acc = S::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &k) in x.iter().zip(e) {
                for _ in 0..k {
                    t *= xi.clone();
                }
            }
            acc += t;
        }
        acc
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Poly<T> {
        let mut p = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            p.add_term(e.clone(), f(c));
        }
        p
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().map(Scalar::magnitude).fold(0.0, f64::max)
    }
}

/// All exponent vectors of total degree `d` in `n` variables, in lexicographic order.
pub fn monomials(n: usize, d: u8) -> Vec<Exponent> {
    fn rec(n: usize, d: u8, prefix: &mut Exponent, out: &mut Vec<Exponent>) {
        if prefix.len() == n - 1 {
            let used: u8 = prefix.iter().sum();
            let mut e = prefix.clone();
            e.push(d - used);
            out.push(e);
            return;
        }
        let used: u8 = prefix.iter().sum();
        for k in (0..=d - used).rev() {
            prefix.push(k);
            rec(n, d, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, d, &mut Vec::new(), &mut out);
    out
}

/// Coefficient vector of a homogeneous polynomial against [`monomials`].
pub fn coefficient_vector<S: Scalar>(p: &Poly<S>, d: u8) -> Vec<S> {
    monomials(p.nvars(), d).iter().map(|e| p.coeff(e)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_count() {
        assert_eq!(monomials(3, 3).len(), 10);
        assert_eq!(monomials(5, 3).len(), 35);
    }

    #[test]
    fn substitution_and_derivative() {
        let x: Poly<f64> = Poly::var(2, 0);
        let y: Poly<f64> = Poly::var(2, 1);
        let p = x.mul(&y);
        let swap = Matrix::from_rows(vec![vec![0.0, 1.0], vec![1.0, 0.0]]);
        assert_eq!(p.substitute_linear(&swap), p);
        assert_eq!(p.derivative(0), y);
        assert_eq!(x.pow(3).laplacian(), x.scale(&6.0));
    }
}
