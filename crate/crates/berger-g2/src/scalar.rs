//! Scalars: the exact field Q(√2, √3, √5), `f64`, and complexifications of both.
//!
//! Every algebraic routine in the crate is generic over [`Scalar`], so the same
//! code path runs exactly or in floating point.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse field element: {0}")]
    Parse(String),
    #[error("square root of {0} is not in the field")]
    NotInField(u32),
}

/// Whether a computation runs in exact arithmetic or in `f64` with a tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ScalarMode {
    Exact,
    Float { tol: f64 },
}

impl ScalarMode {
    pub const DEFAULT_FLOAT: ScalarMode = ScalarMode::Float { tol: 1e-9 };

    pub fn tol(&self) -> f64 {
        match self {
            ScalarMode::Exact => 0.0,
            ScalarMode::Float { tol } => *tol,
        }
    }
}

pub trait Scalar:
    Clone
    + fmt::Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    /// `√n` for a squarefree `n` built from the primes 2, 3, 5.
    fn surd(n: u32) -> Self;
    /// Exact zero test (`== 0.0` for floats).
    fn is_zero(&self) -> bool;
    fn inv(&self) -> Result<Self, ScalarError>;
    /// Absolute value (modulus for complex scalars) as `f64`.
    fn magnitude(&self) -> f64;
    fn conj(&self) -> Self {
        self.clone()
    }
    /// Exact scalars ignore `tol`.
    fn negligible(&self, tol: f64) -> bool {
        self.is_zero() || self.magnitude() <= tol
    }
    fn from_int(n: i64) -> Self {
        Self::from_ratio(n, 1)
    }
    /// `(num/den)·√n`.
    fn radical(num: i64, den: i64, n: u32) -> Self {
        Self::from_ratio(num, den) * Self::surd(n)
    }
    fn div(&self, other: &Self) -> Result<Self, ScalarError> {
        Ok(self.clone() * other.inv()?)
    }
}

/// Real scalars that embed into `f64`.
pub trait RealScalar: Scalar + PartialOrd {
    fn to_f64(&self) -> f64;
}

const PRIMES: [u32; 3] = [2, 3, 5];

/// Position of each basis surd in the serialized order {1, √2, √3, √5, √6, √10, √15, √30}.
const SERIAL_ORDER: [usize; 8] = [0, 1, 2, 4, 3, 5, 6, 7];
const SURD_NAMES: [&str; 8] = ["1", "√2", "√3", "√6", "√5", "√10", "√15", "√30"];

fn mask_product(mask: usize) -> u32 {
    (0..3).filter(|b| mask & (1 << b) != 0).map(|b| PRIMES[b]).product()
}

fn surd_mask(n: u32) -> Option<usize> {
    let mut m = n;
    let mut mask = 0;
    for (b, p) in PRIMES.iter().enumerate() {
        if m.is_multiple_of(*p) {
            m /= p;
            mask |= 1 << b;
        }
    }
    (m == 1).then_some(mask)
}

/// An element of Q(√2, √3, √5), stored as rational coefficients indexed by
/// the bitmask of primes under the root (bit 0 ↔ 2, bit 1 ↔ 3, bit 2 ↔ 5).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldScalar {
    c: [BigRational; 8],
}

impl FieldScalar {
    pub fn rational(r: BigRational) -> Self {
        let mut s = Self::zero_value();
        s.c[0] = r;
        s
    }

    fn zero_value() -> Self {
        FieldScalar {
            c: std::array::from_fn(|_| BigRational::zero()),
        }
    }

    /// Coefficients in the order {1, √2, √3, √5, √6, √10, √15, √30}.
    pub fn coefficients(&self) -> [BigRational; 8] {
        std::array::from_fn(|i| self.c[SERIAL_ORDER[i]].clone())
    }

    pub fn from_coefficients(coeffs: [BigRational; 8]) -> Self {
        let mut s = Self::zero_value();
        for (i, c) in coeffs.into_iter().enumerate() {
            s.c[SERIAL_ORDER[i]] = c;
        }
        s
    }

    pub fn is_rational(&self) -> bool {
        self.c[1..].iter().all(Zero::is_zero)
    }

    /// The rational part when the element is rational.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then(|| &self.c[0])
    }

    /// Galois conjugation flipping the sign of `√p`.
    pub fn conjugate_at(&self, prime_bit: usize) -> Self {
        let mut s = self.clone();
        for (m, c) in s.c.iter_mut().enumerate() {
            if m & (1 << prime_bit) != 0 {
                *c = -c.clone();
            }
        }
        s
    }

    pub fn embed_float(&self) -> f64 {
        self.c
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| c.to_f64().unwrap_or(f64::NAN) * (mask_product(m) as f64).sqrt())
            .sum()
    }

    /// The golden ratio (1 + √5)/2.
    pub fn golden() -> Self {
        Self::from_ratio(1, 2) + Self::radical(1, 2, 5)
    }

    /// Sign of a nonzero element, decided by interval refinement of the
    /// float embedding (exact for rationals).
    pub fn signum(&self) -> i32 {
        if self.is_zero() {
            return 0;
        }
        if let Some(r) = self.as_rational() {
            return if r.is_positive() { 1 } else { -1 };
        }
        let v = self.embed_float();
        if v.abs() > 1e-6 * self.scale() {
            return if v > 0.0 { 1 } else { -1 };
        }
        // Close to zero: the norm is a nonzero rational, so the product with the
        // remaining conjugates has a definite sign.
        let others = self.inv().expect("nonzero") * Self::rational(self.norm());
        let sign_norm = if self.norm().is_positive() { 1 } else { -1 };
        let so = others.embed_float();
        if so > 0.0 {
            sign_norm
        } else {
            -sign_norm
        }
    }

    fn scale(&self) -> f64 {
        self.c
            .iter()
            .map(|c| c.to_f64().unwrap_or(0.0).abs())
            .fold(1e-300, f64::max)
    }

    /// Field norm down to Q: the product of all eight conjugates.
    pub fn norm(&self) -> BigRational {
        let mut x = self.clone();
        for b in 0..3 {
            x = x.clone() * x.conjugate_at(b);
        }
        x.c[0].clone()
    }

    pub fn parse_coefficient(s: &str) -> Result<BigRational, ScalarError> {
        let err = || ScalarError::Parse(s.to_string());
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let n: BigInt = n.parse().map_err(|_| err())?;
        let d: BigInt = d.parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        Ok(BigRational::new(n, d))
    }
}

impl Scalar for FieldScalar {
    fn zero() -> Self {
        Self::zero_value()
    }
    fn one() -> Self {
        Self::rational(BigRational::one())
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Self::rational(BigRational::new(num.into(), den.into()))
    }
    fn surd(n: u32) -> Self {
        let mask = surd_mask(n).unwrap_or_else(|| panic!("√{n} is not a basis surd"));
        let mut s = Self::zero_value();
        s.c[mask] = BigRational::one();
        s
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }
    fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        // a⁻¹ = σ₂(a)·σ₃(b)·σ₅(c) / N(a) with b = a·σ₂(a), c = b·σ₃(b).
        let s2 = self.conjugate_at(0);
        let b = self.clone() * s2.clone();
        let s3 = b.conjugate_at(1);
        let c = b * s3.clone();
        let s5 = c.conjugate_at(2);
        let n = (c * s5.clone()).c[0].clone();
        let mut r = s2 * s3 * s5;
        let ninv = n.recip();
        for x in r.c.iter_mut() {
            *x *= &ninv;
        }
        Ok(r)
    }
    fn magnitude(&self) -> f64 {
        self.embed_float().abs()
    }
    fn negligible(&self, _tol: f64) -> bool {
        self.is_zero()
    }
}

impl RealScalar for FieldScalar {
    fn to_f64(&self) -> f64 {
        self.embed_float()
    }
}

impl PartialOrd for FieldScalar {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some((self.clone() - other.clone()).signum().cmp(&0))
    }
}

impl Add for FieldScalar {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self += rhs;
        self
    }
}

impl AddAssign for FieldScalar {
    fn add_assign(&mut self, rhs: Self) {
        for (a, b) in self.c.iter_mut().zip(rhs.c) {
            if !b.is_zero() {
                *a += b;
            }
        }
    }
}

impl Sub for FieldScalar {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        self -= rhs;
        self
    }
}

impl SubAssign for FieldScalar {
    fn sub_assign(&mut self, rhs: Self) {
        for (a, b) in self.c.iter_mut().zip(rhs.c) {
            if !b.is_zero() {
                *a -= b;
            }
        }
    }
}

impl Neg for FieldScalar {
    type Output = Self;
    fn neg(mut self) -> Self {
        for a in self.c.iter_mut() {
            if !a.is_zero() {
                *a = -a.clone();
            }
        }
        self
    }
}

impl Mul for FieldScalar {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<'a> Mul<&'a FieldScalar> for &'a FieldScalar {
    type Output = FieldScalar;
    fn mul(self, rhs: &FieldScalar) -> FieldScalar {
        let mut r = FieldScalar::zero_value();
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let k = mask_product(i & j);
                let mut p = a * b;
                if k != 1 {
                    p *= BigRational::from_integer(k.into());
                }
                r.c[i ^ j] += p;
            }
        }
        r
    }
}

impl MulAssign for FieldScalar {
    fn mul_assign(&mut self, rhs: Self) {
        *self = &*self * &rhs;
    }
}

impl fmt::Debug for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for &m in SERIAL_ORDER.iter() {
            let c = &self.c[m];
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let name = SURD_NAMES[m];
            if m == 0 {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{name}")?;
            } else if a.denom().is_one() {
                write!(f, "{}{name}", a.numer())?;
            } else if a.numer().is_one() {
                write!(f, "{name}/{}", a.denom())?;
            } else {
                write!(f, "{}{name}/{}", a.numer(), a.denom())?;
            }
        }
        Ok(())
    }
}

impl Serialize for FieldScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let strings: Vec<String> = self
            .coefficients()
            .iter()
            .map(|r| format!("{}/{}", r.numer(), r.denom()))
            .collect();
        strings.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FieldScalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let strings: Vec<String> = Vec::deserialize(deserializer)?;
        if strings.len() != 8 {
            return Err(serde::de::Error::custom("expected 8 coefficients"));
        }
        let mut coeffs: [BigRational; 8] = std::array::from_fn(|_| BigRational::zero());
        for (c, s) in coeffs.iter_mut().zip(&strings) {
            *c = FieldScalar::parse_coefficient(s).map_err(serde::de::Error::custom)?;
        }
        Ok(FieldScalar::from_coefficients(coeffs))
    }
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }
    fn surd(n: u32) -> Self {
        (n as f64).sqrt()
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn inv(&self) -> Result<Self, ScalarError> {
        if *self == 0.0 {
            Err(ScalarError::DivisionByZero)
        } else {
            Ok(1.0 / self)
        }
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl RealScalar for f64 {
    fn to_f64(&self) -> f64 {
        *self
    }
}

/// `re + i·im` over a real scalar type.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ComplexScalar<S> {
    pub re: S,
    pub im: S,
}

impl<S: Scalar> ComplexScalar<S> {
    pub fn new(re: S, im: S) -> Self {
        ComplexScalar { re, im }
    }
    pub fn real(re: S) -> Self {
        ComplexScalar { re, im: S::zero() }
    }
    pub fn i() -> Self {
        ComplexScalar {
            re: S::zero(),
            im: S::one(),
        }
    }
    pub fn scale(&self, s: &S) -> Self {
        ComplexScalar {
            re: self.re.clone() * s.clone(),
            im: self.im.clone() * s.clone(),
        }
    }
    pub fn norm_sqr(&self) -> S {
        self.re.clone() * self.re.clone() + self.im.clone() * self.im.clone()
    }
}

impl<S: Scalar> fmt::Debug for ComplexScalar<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}) + i({:?})", self.re, self.im)
    }
}

impl<S: Scalar> Scalar for ComplexScalar<S> {
    fn zero() -> Self {
        Self::real(S::zero())
    }
    fn one() -> Self {
        Self::real(S::one())
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Self::real(S::from_ratio(num, den))
    }
    fn surd(n: u32) -> Self {
        Self::real(S::surd(n))
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn inv(&self) -> Result<Self, ScalarError> {
        let n = self.norm_sqr().inv()?;
        Ok(ComplexScalar {
            re: self.re.clone() * n.clone(),
            im: -(self.im.clone() * n),
        })
    }
    fn magnitude(&self) -> f64 {
        self.re.magnitude().hypot(self.im.magnitude())
    }
    fn conj(&self) -> Self {
        ComplexScalar {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }
    fn negligible(&self, tol: f64) -> bool {
        self.re.negligible(tol) && self.im.negligible(tol)
    }
}

impl<S: Scalar> Add for ComplexScalar<S> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        ComplexScalar {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl<S: Scalar> AddAssign for ComplexScalar<S> {
    fn add_assign(&mut self, rhs: Self) {
        self.re += rhs.re;
        self.im += rhs.im;
    }
}

impl<S: Scalar> Sub for ComplexScalar<S> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        ComplexScalar {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
        }
    }
}

impl<S: Scalar> SubAssign for ComplexScalar<S> {
    fn sub_assign(&mut self, rhs: Self) {
        self.re -= rhs.re;
        self.im -= rhs.im;
    }
}

impl<S: Scalar> Neg for ComplexScalar<S> {
    type Output = Self;
    fn neg(self) -> Self {
        ComplexScalar {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl<S: Scalar> Mul for ComplexScalar<S> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let re_zero = self.im.is_zero() && rhs.im.is_zero();
        if re_zero {
            return Self::real(self.re * rhs.re);
        }
        ComplexScalar {
            re: self.re.clone() * rhs.re.clone() - self.im.clone() * rhs.im.clone(),
            im: self.re * rhs.im + self.im * rhs.re,
        }
    }
}

impl<S: Scalar> MulAssign for ComplexScalar<S> {
    fn mul_assign(&mut self, rhs: Self) {
        *self = self.clone() * rhs;
    }
}

/// Exact `(cos, sin)` of `k·π/n` when both lie in the field (`n` dividing 12).
pub fn exact_cos_sin(k: i64, n: i64) -> Option<(FieldScalar, FieldScalar)> {
    if n <= 0 || 12 % n != 0 {
        return None;
    }
    let m = (k * (12 / n)).rem_euclid(24);
    // cos(j·π/12) for j = 0..6.
    let table = |j: i64| -> FieldScalar {
        match j {
            0 => FieldScalar::one(),
            1 => FieldScalar::radical(1, 4, 6) + FieldScalar::radical(1, 4, 2),
            2 => FieldScalar::radical(1, 2, 3),
            3 => FieldScalar::radical(1, 2, 2),
            4 => FieldScalar::from_ratio(1, 2),
            5 => FieldScalar::radical(1, 4, 6) - FieldScalar::radical(1, 4, 2),
            6 => FieldScalar::zero(),
            _ => unreachable!(),
        }
    };
    let cos = |j: i64| -> FieldScalar {
        let j = j.rem_euclid(24);
        match j {
            0..=6 => table(j),
            7..=12 => -table(12 - j),
            13..=18 => -table(j - 12),
            _ => table(24 - j),
        }
    };
    Some((cos(m), cos(m - 6)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fs(num: i64, den: i64, n: u32) -> FieldScalar {
        FieldScalar::radical(num, den, n)
    }

    #[test]
    fn surd_products() {
        assert_eq!(fs(1, 1, 2) * fs(1, 1, 3), fs(1, 1, 6));
        assert_eq!(fs(1, 1, 10) * fs(1, 1, 15), fs(5, 1, 6));
        let a = FieldScalar::one() + fs(1, 1, 2);
        let b = FieldScalar::one() - fs(1, 1, 2);
        assert_eq!(a * b, FieldScalar::from_int(-1));
    }

    #[test]
    fn golden_ratio_identities() {
        let t = FieldScalar::golden();
        assert_eq!(t.clone() * t.clone(), t.clone() + FieldScalar::one());
        assert_eq!(t.inv().unwrap(), t - FieldScalar::one());
    }

    #[test]
    fn inverse_of_root_five() {
        assert_eq!(fs(1, 1, 5).inv().unwrap(), fs(1, 5, 5));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(FieldScalar::zero().inv(), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn serialization_order() {
        let x = FieldScalar::from_ratio(1, 2) + fs(-3, 1, 15);
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(json, r#"["1/2","0/1","0/1","0/1","0/1","0/1","-3/1","0/1"]"#);
        let back: FieldScalar = serde_json::from_str(&json).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn display_is_readable() {
        let x = FieldScalar::from_ratio(-1, 2) + fs(3, 4, 30);
        assert_eq!(x.to_string(), "-1/2 + 3√30/4");
    }

    #[test]
    fn sign_of_tiny_elements() {
        // 99/70 - √2 ≈ 7.2e-5 > 0, and 1393/985 - √2 ≈ -3.6e-7 < 0.
        let a = FieldScalar::from_ratio(99, 70) - fs(1, 1, 2);
        let b = FieldScalar::from_ratio(1393, 985) - fs(1, 1, 2);
        assert_eq!(a.signum(), 1);
        assert_eq!(b.signum(), -1);
        assert_eq!((-b).signum(), 1);
    }

    #[test]
    fn exact_angles() {
        for k in 0..24 {
            let (c, s) = exact_cos_sin(k, 12).unwrap();
            let t = k as f64 * std::f64::consts::PI / 12.0;
            assert!((c.embed_float() - t.cos()).abs() < 1e-14);
            assert!((s.embed_float() - t.sin()).abs() < 1e-14);
            assert_eq!(c.clone() * c + s.clone() * s, FieldScalar::one());
        }
        assert!(exact_cos_sin(1, 5).is_none());
    }

    #[test]
    fn complex_inverse() {
        let z = ComplexScalar::new(FieldScalar::from_int(1), fs(1, 1, 3));
        assert_eq!(z.clone() * z.inv().unwrap(), ComplexScalar::one());
    }
}
