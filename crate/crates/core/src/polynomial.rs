//! Dense univariate polynomials over arbitrary-precision integers and
//! rationals.
//!
//! [`IntPolynomial`] is the value type for every Chow, characteristic,
//! Eulerian and derangement polynomial in the crate. [`RatPolynomial`] only
//! shows up where Euclidean division is needed (gcds and Sturm chains).
//!
//! Both types keep their coefficient vector in canonical form: index is the
//! exponent and there are no trailing zeros, so the zero polynomial is the
//! empty vector.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("reference degree {reference} is below the polynomial degree {degree}")]
    DegreeTooLarge { degree: usize, reference: usize },
    #[error("polynomial is not palindromic in degree {0}")]
    NotPalindromic(usize),
    #[error("division by (t - 1) left remainder {0}")]
    NonExactDivision(BigInt),
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
}

/// Polynomial with [`BigInt`] coefficients, `coeffs[i]` multiplying `t^i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

fn trim<T: Zero>(v: &mut Vec<T>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        trim(&mut coeffs);
        IntPolynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c * t^exp`.
    pub fn monomial(c: BigInt, exp: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); exp + 1];
        coeffs[exp] = c;
        Self::new(coeffs)
    }

    /// The indeterminate `t`.
    pub fn t() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    /// `1 + t + ... + t^(m-1)`; zero for `m = 0`.
    pub fn geometric(m: usize) -> Self {
        IntPolynomial { coeffs: vec![BigInt::one(); m] }
    }

    /// `(1 + t)^m`.
    pub fn one_plus_t_pow(m: usize) -> Self {
        let mut row = vec![BigInt::one()];
        for _ in 0..m {
            let mut next = vec![BigInt::one(); row.len() + 1];
            for i in 1..row.len() {
                next[i] = &row[i - 1] + &row[i];
            }
            row = next;
        }
        IntPolynomial { coeffs: row }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPolynomial { coeffs }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// `t^d p(1/t)`: coefficient `i` of the result is coefficient `d - i`
    /// of `self`.
    pub fn reverse(&self, d: usize) -> Result<Self, PolyError> {
        match self.degree() {
            Some(deg) if deg > d => Err(PolyError::DegreeTooLarge { degree: deg, reference: d }),
            _ => Ok(Self::new((0..=d).map(|i| self.coeff(d - i)).collect())),
        }
    }

    pub fn is_palindromic(&self, d: usize) -> bool {
        self.reverse(d).is_ok_and(|r| &r == self)
    }

    /// Coefficients weakly rise then weakly fall.
    pub fn is_unimodal(&self) -> bool {
        let mut falling = false;
        for w in self.coeffs.windows(2) {
            if w[1] < w[0] {
                falling = true;
            } else if w[1] > w[0] && falling {
                return false;
            }
        }
        true
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// Coordinates `γ_i` with `p = Σ γ_i t^i (1+t)^(d-2i)`.
    ///
    /// Works from `i = 0` upwards: the basis element `t^i (1+t)^(d-2i)` is
    /// the only one still contributing to `t^i` once lower terms are gone.
    pub fn gamma_vector(&self, d: usize) -> Result<Vec<BigInt>, PolyError> {
        if !self.is_palindromic(d) {
            return Err(PolyError::NotPalindromic(d));
        }
        let mut rest = self.clone();
        let mut gamma = Vec::with_capacity(d / 2 + 1);
        for i in 0..=d / 2 {
            let g = rest.coeff(i);
            if !g.is_zero() {
                rest = &rest - &Self::one_plus_t_pow(d - 2 * i).shift(i).scale(&g);
            }
            gamma.push(g);
        }
        debug_assert!(rest.is_zero());
        Ok(gamma)
    }

    /// Coordinates `h_i` with `p = Σ_{i=0}^{k} h_i t^i (1+t)^(k-i)`.
    pub fn h_expansion(&self, k: usize) -> Result<Vec<BigInt>, PolyError> {
        if let Some(deg) = self.degree().filter(|&deg| deg > k) {
            return Err(PolyError::DegreeTooLarge { degree: deg, reference: k });
        }
        let mut rest = self.clone();
        let mut h = Vec::with_capacity(k + 1);
        for i in 0..=k {
            let c = rest.coeff(i);
            if !c.is_zero() {
                rest = &rest - &Self::one_plus_t_pow(k - i).shift(i).scale(&c);
            }
            h.push(c);
        }
        debug_assert!(rest.is_zero());
        Ok(h)
    }

    pub fn eval_rational(&self, r: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * r + BigRational::from_integer(c.clone()))
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Exact quotient by `t - 1` via synthetic division. A nonzero remainder
    /// is returned as an error, never dropped.
    pub fn div_t_minus_one(&self) -> Result<Self, PolyError> {
        let Some(deg) = self.degree() else {
            return Ok(Self::zero());
        };
        let mut q = vec![BigInt::zero(); deg];
        let mut carry = BigInt::zero();
        for i in (1..=deg).rev() {
            carry += &self.coeffs[i];
            q[i - 1] = carry.clone();
        }
        let remainder = carry + &self.coeffs[0];
        if !remainder.is_zero() {
            return Err(PolyError::NonExactDivision(remainder));
        }
        Ok(Self::new(q))
    }

    /// Gcd of the coefficients, nonnegative.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divide by the content and make the leading coefficient positive.
    pub fn primitive(&self) -> Self {
        let g = self.content();
        if g.is_zero() {
            return Self::zero();
        }
        let g = if self.coeffs.last().unwrap().is_negative() { -g } else { g };
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    pub fn to_rational(&self) -> RatPolynomial {
        RatPolynomial::new(self.coeffs.iter().cloned().map(BigRational::from_integer).collect())
    }

    /// Largest bit length among the coefficients.
    pub fn max_coeff_bits(&self) -> u64 {
        self.coeffs.iter().map(|c| c.bits()).max().unwrap_or(0)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("polynomial serializes")
    }
}

impl From<BigInt> for IntPolynomial {
    fn from(c: BigInt) -> Self {
        Self::constant(c)
    }
}

fn zip_coeffs<T: Clone + Zero>(a: &[T], b: &[T], f: impl Fn(&T, &T) -> T) -> Vec<T> {
    let n = a.len().max(b.len());
    let zero = T::zero();
    (0..n)
        .map(|i| f(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
        .collect()
}

fn convolve<T: Clone + Zero>(a: &[T], b: &[T]) -> Vec<T>
where
    for<'x> &'x T: Mul<&'x T, Output = T>,
{
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![T::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].clone() + x * y;
        }
    }
    out
}

macro_rules! ring_ops {
    ($ty:ident) => {
        impl Add<&$ty> for &$ty {
            type Output = $ty;
            fn add(self, rhs: &$ty) -> $ty {
                $ty::new(zip_coeffs(&self.coeffs, &rhs.coeffs, |a, b| a + b))
            }
        }
        impl Sub<&$ty> for &$ty {
            type Output = $ty;
            fn sub(self, rhs: &$ty) -> $ty {
                $ty::new(zip_coeffs(&self.coeffs, &rhs.coeffs, |a, b| a - b))
            }
        }
        impl Mul<&$ty> for &$ty {
            type Output = $ty;
            fn mul(self, rhs: &$ty) -> $ty {
                $ty::new(convolve(&self.coeffs, &rhs.coeffs))
            }
        }
        impl Neg for &$ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                $ty { coeffs: self.coeffs.iter().map(|c| -c).collect() }
            }
        }
        impl Neg for $ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                -&self
            }
        }
        impl Add for $ty {
            type Output = $ty;
            fn add(self, rhs: $ty) -> $ty {
                &self + &rhs
            }
        }
        impl Sub for $ty {
            type Output = $ty;
            fn sub(self, rhs: $ty) -> $ty {
                &self - &rhs
            }
        }
        impl Mul for $ty {
            type Output = $ty;
            fn mul(self, rhs: $ty) -> $ty {
                &self * &rhs
            }
        }
        impl std::iter::Sum for $ty {
            fn sum<I: Iterator<Item = $ty>>(iter: I) -> $ty {
                iter.fold($ty::zero(), |a, b| &a + &b)
            }
        }
    };
}

ring_ops!(IntPolynomial);
ring_ops!(RatPolynomial);

fn write_terms<T: fmt::Display + Signed + One + PartialEq>(
    f: &mut fmt::Formatter<'_>,
    coeffs: &[T],
) -> fmt::Result {
    let mut first = true;
    for (e, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if first {
            if c.is_negative() {
                write!(f, "-")?;
            }
        } else if c.is_negative() {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        first = false;
        if e == 0 || !mag.is_one() {
            write!(f, "{mag}")?;
        }
        match e {
            0 => {}
            1 => write!(f, "t")?,
            _ => write!(f, "t^{e}")?,
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.coeffs)
    }
}

/// Accepts human text (`1 + 4t + t^2`, `3*t^2 - t`) or a JSON coefficient
/// array (`[1, "4", 1]`).
impl FromStr for IntPolynomial {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.starts_with('[') {
            return serde_json::from_str(s).map_err(|e| PolyError::Parse(e.to_string()));
        }
        parse_expr(s)
    }
}

fn parse_expr(s: &str) -> Result<IntPolynomial, PolyError> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(PolyError::Parse("empty expression".into()));
    }
    let bad = |msg: &str| PolyError::Parse(format!("{msg} in {s:?}"));
    let mut acc = IntPolynomial::zero();
    let bytes = compact.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let mut negative = false;
        if bytes[i] == b'+' || bytes[i] == b'-' {
            negative = bytes[i] == b'-';
            i += 1;
        } else if i != 0 {
            return Err(bad("expected '+' or '-'"));
        }
        let start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        let coeff = if i > start {
            compact[start..i].parse::<BigInt>().map_err(|e| bad(&e.to_string()))?
        } else {
            BigInt::one()
        };
        let had_coeff = i > start;
        if i < bytes.len() && bytes[i] == b'*' {
            i += 1;
        }
        let mut exp = 0usize;
        if i < bytes.len() && (bytes[i] == b't' || bytes[i] == b'x') {
            i += 1;
            exp = 1;
            if i < bytes.len() && bytes[i] == b'^' {
                i += 1;
                let es = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if es == i {
                    return Err(bad("missing exponent"));
                }
                exp = compact[es..i].parse().map_err(|_| bad("exponent overflow"))?;
            }
        } else if !had_coeff {
            return Err(bad("empty term"));
        }
        let coeff = if negative { -coeff } else { coeff };
        acc = &acc + &IntPolynomial::monomial(coeff, exp);
    }
    Ok(acc)
}

impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            seq.serialize_element(&c.to_string())?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for IntPolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct CoeffVisitor;

        impl<'de> Visitor<'de> for CoeffVisitor {
            type Value = IntPolynomial;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an array of integers or decimal strings")
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Self::Value, A::Error> {
                let mut coeffs = Vec::new();
                while let Some(v) = seq.next_element::<serde_json::Value>()? {
                    let c = match &v {
                        serde_json::Value::String(s) => s.parse::<BigInt>().ok(),
                        serde_json::Value::Number(n) if n.is_i64() || n.is_u64() => {
                            n.to_string().parse::<BigInt>().ok()
                        }
                        _ => None,
                    };
                    coeffs.push(c.ok_or_else(|| de::Error::custom(format!("bad coefficient {v}")))?);
                }
                Ok(IntPolynomial::new(coeffs))
            }
        }

        deserializer.deserialize_seq(CoeffVisitor)
    }
}

/// Polynomial with [`BigRational`] coefficients, used for Euclidean division.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct RatPolynomial {
    coeffs: Vec<BigRational>,
}

impl RatPolynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        trim(&mut coeffs);
        RatPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        RatPolynomial { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn eval(&self, r: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * r + c)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree().filter(|&nd| nd >= dd) else {
            return (Self::zero(), self.clone());
        };
        let mut quot = vec![BigRational::zero(); nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let c = &rem[i + dd] / &lead;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = &rem[i + j] - &c * d;
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            Some(lc) => {
                let inv = lc.recip();
                self.scale(&inv)
            }
            None => Self::zero(),
        }
    }

    /// Monic gcd; zero only if both inputs are zero.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r.to_primitive_rational();
        }
        a.monic()
    }

    /// Positive rational multiple with coprime integer coefficients. Keeps
    /// the sign pattern, which is all a Sturm chain cares about.
    pub fn to_primitive_rational(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.to_integer_multiple().primitive_keep_sign().to_rational()
    }

    /// Clears denominators by the (positive) lcm of denominators.
    pub fn to_integer_multiple(&self) -> IntPolynomial {
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        IntPolynomial::new(
            self.coeffs
                .iter()
                .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
                .collect(),
        )
    }

    /// Integer polynomial proportional to `self` with a positive factor.
    pub fn to_primitive_int(&self) -> IntPolynomial {
        self.to_integer_multiple().primitive_keep_sign()
    }
}

impl IntPolynomial {
    fn primitive_keep_sign(&self) -> IntPolynomial {
        let g = self.content();
        if g.is_zero() {
            return IntPolynomial::zero();
        }
        IntPolynomial::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Exact polynomial division over the integers; `None` if `divisor`
    /// does not divide `self` with an integer quotient.
    pub fn div_exact(&self, divisor: &IntPolynomial) -> Option<IntPolynomial> {
        let (q, r) = self.to_rational().div_rem(&divisor.to_rational());
        if !r.is_zero() || q.coeffs.iter().any(|c| !c.is_integer()) {
            return None;
        }
        Some(IntPolynomial::new(q.coeffs.iter().map(|c| c.to_integer()).collect()))
    }
}

impl fmt::Display for RatPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.coeffs)
    }
}
