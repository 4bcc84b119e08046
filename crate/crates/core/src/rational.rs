//! Exact scalars: rationals, polynomials in a central parameter `u`, and the
//! [`Coeff`] trait shared by every coefficient-carrying structure.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number.
pub type Q = BigRational;

pub fn q(numer: i64, denom: i64) -> Q {
    Q::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_big(n: BigInt) -> Q {
    Q::from_integer(n)
}

/// `(-1)^e` for a possibly negative exponent.
pub fn sign(e: i64) -> Q {
    if e.rem_euclid(2) == 0 {
        Q::one()
    } else {
        -Q::one()
    }
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Canonical wire form: `p/q` in lowest terms with `q > 0`, or `p` when `q = 1`.
pub fn format_q(value: &Q) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

pub fn parse_q(text: &str) -> Result<Q> {
    let s = text.trim();
    let bad = || Error::InvalidRational(text.to_string());
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

/// Serde adapter storing a [`Q`] as its canonical string.
pub mod serde_q {
    use super::*;

    pub fn serialize<S: Serializer>(value: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_q(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Q, D::Error> {
        let text = String::deserialize(d)?;
        parse_q(&text).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter storing a [`BigInt`] as a decimal string.
pub mod serde_bigint {
    use super::*;

    pub fn serialize<S: Serializer>(value: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&value.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigInt, D::Error> {
        let text = String::deserialize(d)?;
        BigInt::from_str(text.trim()).map_err(serde::de::Error::custom)
    }
}

/// Polynomial in a single central parameter `u` with rational coefficients.
///
/// Stored densely by ascending degree; trailing zeros are trimmed so the
/// zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    coeffs: Vec<Q>,
}

impl UPoly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: Q) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The parameter `u` itself.
    pub fn u() -> Self {
        Self::from_coeffs(vec![Q::zero(), Q::one()])
    }

    pub fn monomial(c: Q, degree: usize) -> Self {
        let mut coeffs = vec![Q::zero(); degree + 1];
        coeffs[degree] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, u: &Q) -> Q {
        self.coeffs
            .iter()
            .rev()
            .fold(Q::zero(), |acc, c| acc * u + c)
    }

    /// Substitutes `u -> -u`.
    pub fn reflect(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
            .collect();
        Self::from_coeffs(coeffs)
    }

    /// `binom(u, k) = u (u-1) ... (u-k+1) / k!`.
    pub fn binom_u(k: usize) -> Self {
        let mut acc = Self::constant(Q::one());
        for j in 0..k {
            let factor = Self::from_coeffs(vec![-qi(j as i64), Q::one()]);
            acc = acc.mul_ref(&factor);
        }
        acc.scale(&Q::from_integer(factorial(k)).recip())
    }

    /// `binom(-u, k)`.
    pub fn binom_neg_u(k: usize) -> Self {
        Self::binom_u(k).reflect()
    }

    /// `u^k`.
    pub fn pow_u(k: usize) -> Self {
        Self::monomial(Q::one(), k)
    }
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            match k {
                0 => write!(f, "{}", format_q(&mag))?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{}*", format_q(&mag))?;
                    }
                    if k == 1 {
                        write!(f, "u")?
                    } else {
                        write!(f, "u^{k}")?
                    }
                }
            }
        }
        Ok(())
    }
}

impl Serialize for UPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let strings: Vec<String> = self.coeffs.iter().map(format_q).collect();
        strings.serialize(s)
    }
}

impl<'de> Deserialize<'de> for UPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let strings = Vec::<String>::deserialize(d)?;
        let coeffs = strings
            .iter()
            .map(|s| parse_q(s))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        Ok(Self::from_coeffs(coeffs))
    }
}

/// Coefficient ring for polynomials, series, operators and NSym elements.
///
/// Implemented for [`Q`] and for [`UPoly`] (the ring `Q[u]`).
pub trait Coeff: Clone + PartialEq + fmt::Debug + Zero + One + Send + Sync + 'static {
    fn add_assign_ref(&mut self, other: &Self);
    fn sub_assign_ref(&mut self, other: &Self);
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn scale(&self, factor: &Q) -> Self;
    fn from_q(value: Q) -> Self;
    /// Wire form used by the JSON encoders.
    fn to_json(&self) -> serde_json::Value;
    fn from_json(value: &serde_json::Value) -> Result<Self>;
    /// Human-readable form, parenthesized when it is a sum.
    fn render(&self) -> String;
}

impl Coeff for Q {
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn sub_assign_ref(&mut self, other: &Self) {
        *self -= other;
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn scale(&self, factor: &Q) -> Self {
        self * factor
    }
    fn from_q(value: Q) -> Self {
        value
    }
    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::String(format_q(self))
    }
    fn from_json(value: &serde_json::Value) -> Result<Self> {
        match value {
            serde_json::Value::String(s) => parse_q(s),
            serde_json::Value::Number(n) => parse_q(&n.to_string()),
            other => Err(Error::InvalidRational(other.to_string())),
        }
    }
    fn render(&self) -> String {
        format_q(self)
    }
}

impl Zero for UPoly {
    fn zero() -> Self {
        UPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for UPoly {
    fn one() -> Self {
        UPoly::constant(Q::one())
    }
}

impl std::ops::Add for UPoly {
    type Output = UPoly;
    fn add(mut self, rhs: UPoly) -> UPoly {
        self.add_assign_ref(&rhs);
        self
    }
}

impl std::ops::Sub for UPoly {
    type Output = UPoly;
    fn sub(mut self, rhs: UPoly) -> UPoly {
        self.sub_assign_ref(&rhs);
        self
    }
}

impl std::ops::Mul for UPoly {
    type Output = UPoly;
    fn mul(self, rhs: UPoly) -> UPoly {
        self.mul_ref(&rhs)
    }
}

impl std::ops::Neg for UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        self.neg_ref()
    }
}

impl Coeff for UPoly {
    fn add_assign_ref(&mut self, other: &Self) {
        if other.coeffs.len() > self.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), Q::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
        *self = Self::from_coeffs(std::mem::take(&mut self.coeffs));
    }
    fn sub_assign_ref(&mut self, other: &Self) {
        self.add_assign_ref(&other.neg_ref());
    }
    fn mul_ref(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::zero();
        }
        let mut out = vec![Q::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if Zero::is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::from_coeffs(out)
    }
    fn neg_ref(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
    fn scale(&self, factor: &Q) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c * factor).collect())
    }
    fn from_q(value: Q) -> Self {
        Self::constant(value)
    }
    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.coeffs
                .iter()
                .map(|c| serde_json::Value::String(format_q(c)))
                .collect(),
        )
    }
    fn from_json(value: &serde_json::Value) -> Result<Self> {
        match value {
            serde_json::Value::Array(items) => Ok(Self::from_coeffs(
                items
                    .iter()
                    .map(<Q as Coeff>::from_json)
                    .collect::<Result<Vec<_>>>()?,
            )),
            scalar => Ok(Self::constant(<Q as Coeff>::from_json(scalar)?)),
        }
    }
    fn render(&self) -> String {
        let nonzero = self.coeffs.iter().filter(|c| !Zero::is_zero(*c)).count();
        if nonzero <= 1 {
            self.to_string()
        } else {
            format!("({self})")
        }
    }
}
