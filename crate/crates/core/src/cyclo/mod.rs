//! Exact arithmetic in cyclotomic fields Q(ζ_n).
//!
//! A [`Cyclotomic`] is always kept in canonical form: its coefficient vector is
//! reduced modulo Φ_n in the power basis `1, ζ_n, ..., ζ_n^(φ(n)-1)`, the
//! conductor `n` is the smallest one whose field contains the value, and zero
//! coefficients are dropped. Two values are equal iff their canonical forms are
//! identical, so `Eq` and `Hash` are structural.

mod poly;
mod serial;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::numtheory::lcm;

pub use serial::parse_rational;

/// Largest conductor accepted by the checked operations unless a caller asks otherwise.
pub const DEFAULT_CONDUCTOR_LIMIT: u64 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycloError {
    #[error("conductor {conductor} exceeds the limit {limit}")]
    ConductorLimit { conductor: u64, limit: u64 },
    #[error("conductor must be positive")]
    ZeroConductor,
    #[error("malformed cyclotomic literal: {0}")]
    Parse(String),
}

/// An exact element of a cyclotomic field, in canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    conductor: u64,
    terms: Vec<(u64, BigRational)>,
}

/// An exponent/coefficient mapping with a declared conductor, not yet reduced.
///
/// Exponents are taken modulo the conductor, repeated exponents are summed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawCyclotomic {
    pub conductor: u64,
    pub terms: Vec<(u64, BigRational)>,
}

impl RawCyclotomic {
    pub fn canonicalize(&self) -> Result<Cyclotomic, CycloError> {
        self.canonicalize_with_limit(DEFAULT_CONDUCTOR_LIMIT)
    }

    pub fn canonicalize_with_limit(&self, limit: u64) -> Result<Cyclotomic, CycloError> {
        let n = self.conductor;
        if n == 0 {
            return Err(CycloError::ZeroConductor);
        }
        check_limit(n, limit)?;
        let mut dense = vec![BigRational::zero(); n as usize];
        for (k, c) in &self.terms {
            dense[(k % n) as usize] += c;
        }
        Ok(Cyclotomic::from_dense(n, dense))
    }
}

fn check_limit(n: u64, limit: u64) -> Result<(), CycloError> {
    if n > limit {
        Err(CycloError::ConductorLimit { conductor: n, limit })
    } else {
        Ok(())
    }
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Cyclotomic { conductor: 1, terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(i: impl Into<BigInt>) -> Self {
        Self::from_rational(BigRational::from_integer(i.into()))
    }

    pub fn from_rational(q: BigRational) -> Self {
        let terms = if q.is_zero() { Vec::new() } else { vec![(0, q)] };
        Cyclotomic { conductor: 1, terms }
    }

    /// ζ_n^k.
    pub fn root_of_unity(n: u64, k: u64) -> Result<Self, CycloError> {
        RawCyclotomic { conductor: n, terms: vec![(k, BigRational::one())] }.canonicalize()
    }

    /// Canonical form of Σ coeff·ζ_n^k over the given terms.
    pub fn from_terms(
        n: u64,
        terms: impl IntoIterator<Item = (u64, BigRational)>,
    ) -> Result<Self, CycloError> {
        RawCyclotomic { conductor: n, terms: terms.into_iter().collect() }.canonicalize()
    }

    /// Builds the canonical form from a dense vector indexed by exponent mod `n`.
    fn from_dense(n: u64, dense: Vec<BigRational>) -> Self {
        let reduced = poly::reduce_dense(n, dense);
        let (n, v) = poly::minimize_conductor(n, reduced);
        let terms = v
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k as u64, c))
            .collect();
        Cyclotomic { conductor: n, terms }
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Nonzero `(exponent, coefficient)` pairs of the canonical form, ascending.
    pub fn terms(&self) -> &[(u64, BigRational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_rational(&self) -> bool {
        self.conductor == 1
    }

    /// Canonical forms are fixed points; this exists so callers holding a
    /// value of unknown provenance can normalize it explicitly.
    pub fn canonicalize(&self) -> Cyclotomic {
        RawCyclotomic { conductor: self.conductor, terms: self.terms.clone() }
            .canonicalize_with_limit(u64::MAX)
            .expect("limit not enforced")
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        match (self.conductor, self.terms.as_slice()) {
            (1, []) => Some(BigRational::zero()),
            (1, [(0, q)]) => Some(q.clone()),
            _ => None,
        }
    }

    /// The value as a rational integer, if it is one.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational().filter(|q| q.is_integer()).map(|q| q.to_integer())
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self, CycloError> {
        self.checked_add_with_limit(rhs, DEFAULT_CONDUCTOR_LIMIT)
    }

    pub fn checked_add_with_limit(&self, rhs: &Self, limit: u64) -> Result<Self, CycloError> {
        if self.is_rational() && rhs.is_rational() {
            let q = self.as_rational().unwrap() + rhs.as_rational().unwrap();
            return Ok(Self::from_rational(q));
        }
        let n = lcm(self.conductor, rhs.conductor);
        check_limit(n, limit)?;
        let mut dense = vec![BigRational::zero(); n as usize];
        for x in [self, rhs] {
            let step = n / x.conductor;
            for (k, c) in &x.terms {
                dense[(k * step) as usize] += c;
            }
        }
        Ok(Self::from_dense(n, dense))
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self, CycloError> {
        self.checked_add(&-rhs)
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self, CycloError> {
        self.checked_mul_with_limit(rhs, DEFAULT_CONDUCTOR_LIMIT)
    }

    pub fn checked_mul_with_limit(&self, rhs: &Self, limit: u64) -> Result<Self, CycloError> {
        if let Some(q) = self.as_rational() {
            return Ok(rhs.scale(&q));
        }
        if let Some(q) = rhs.as_rational() {
            return Ok(self.scale(&q));
        }
        Self::sum_of_products_with_limit([(self, rhs)], limit)
    }

    /// Multiplies by a rational scalar; canonical form is preserved termwise.
    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Cyclotomic {
            conductor: self.conductor,
            terms: self.terms.iter().map(|(k, c)| (*k, c * q)).collect(),
        }
    }

    /// Σ a_i·b_i, lifted once to the common conductor and reduced once.
    pub fn sum_of_products<'a>(
        pairs: impl IntoIterator<Item = (&'a Cyclotomic, &'a Cyclotomic)>,
    ) -> Result<Self, CycloError> {
        Self::sum_of_products_with_limit(pairs, DEFAULT_CONDUCTOR_LIMIT)
    }

    pub fn sum_of_products_with_limit<'a>(
        pairs: impl IntoIterator<Item = (&'a Cyclotomic, &'a Cyclotomic)>,
        limit: u64,
    ) -> Result<Self, CycloError> {
        let pairs: Vec<_> = pairs.into_iter().filter(|(a, b)| !a.is_zero() && !b.is_zero()).collect();
        let n = pairs
            .iter()
            .fold(1, |acc, (a, b)| lcm(acc, lcm(a.conductor, b.conductor)));
        check_limit(n, limit)?;
        if n == 1 {
            let q = pairs.iter().fold(BigRational::zero(), |acc, (a, b)| {
                acc + &a.terms[0].1 * &b.terms[0].1
            });
            return Ok(Self::from_rational(q));
        }
        let mut dense = vec![BigRational::zero(); n as usize];
        for (a, b) in pairs {
            let sa = n / a.conductor;
            let sb = n / b.conductor;
            for (ka, ca) in &a.terms {
                for (kb, cb) in &b.terms {
                    dense[((ka * sa + kb * sb) % n) as usize] += ca * cb;
                }
            }
        }
        Ok(Self::from_dense(n, dense))
    }

    /// Complex conjugation, ζ_n ↦ ζ_n^(n-1).
    pub fn conj(&self) -> Self {
        if self.is_rational() {
            return self.clone();
        }
        let n = self.conductor;
        let mut dense = vec![BigRational::zero(); n as usize];
        for (k, c) in &self.terms {
            dense[((n - k) % n) as usize] += c;
        }
        Self::from_dense(n, dense)
    }

    /// Floating-point value at ζ_n = e^(2πi/n), as `(re, im)`.
    pub fn to_complex(&self) -> (f64, f64) {
        let n = self.conductor as f64;
        self.terms.iter().fold((0.0, 0.0), |(re, im), (k, c)| {
            let c = c.to_f64().unwrap_or(f64::NAN);
            let t = std::f64::consts::TAU * (*k as f64) / n;
            (re + c * t.cos(), im + c * t.sin())
        })
    }
}

impl Default for Cyclotomic {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for Cyclotomic {
    fn from(i: i64) -> Self {
        Self::from_integer(i)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            conductor: self.conductor,
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

// The operator impls panic past DEFAULT_CONDUCTOR_LIMIT; use the checked_* methods
// where inputs are untrusted.
macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Cyclotomic> for &Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &Cyclotomic) -> Cyclotomic {
                self.$checked(rhs).expect("cyclotomic conductor limit exceeded")
            }
        }
        impl $tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            match (*k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (k, true) => write!(f, "z{}^{}", self.conductor, k)?,
                (k, false) => write!(f, "{mag}*z{}^{}", self.conductor, k)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic({})", self)
    }
}
