//! Exact field arithmetic.
//!
//! Every computation in the crate is generic over a [`Field`], which is a
//! small context object (it knows the modulus of a prime field, or the
//! cyclotomic polynomial) handing out and combining plain element values.

mod prime;
mod rational;

#[cfg(feature = "cyclotomic")]
mod cyclotomic;

pub use prime::PrimeField;
pub use rational::{Rational, Rationals};

#[cfg(feature = "cyclotomic")]
pub use cyclotomic::{CycElem, Cyclotomic};

use std::cmp::Ordering;
use std::fmt::{self, Debug};
use std::hash::Hash;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("cyclotomic order must be at least 1")]
    ZeroCyclotomicOrder,
    #[error("cannot parse scalar {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("field {0} is not supported in this build")]
    Unsupported(String),
}

/// Which field a computation runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
    Cyclotomic(u32),
}

impl FieldSpec {
    /// Parses the command-line spelling: `Q`, `F5`, `Fp5`, `cyclotomic-8`.
    pub fn parse(s: &str) -> Result<FieldSpec, ScalarError> {
        let t = s.trim();
        let bad = |reason: &str| ScalarError::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        if t == "Q" || t.eq_ignore_ascii_case("rationals") {
            return Ok(FieldSpec::Rationals);
        }
        if let Some(rest) = t.strip_prefix("cyclotomic-") {
            let n: u32 = rest.parse().map_err(|_| bad("bad cyclotomic order"))?;
            return Ok(FieldSpec::Cyclotomic(n));
        }
        let digits = t
            .strip_prefix("Fp")
            .or_else(|| t.strip_prefix('F'))
            .ok_or_else(|| bad("expected Q, Fp or cyclotomic-n"))?;
        let p: u64 = digits.parse().map_err(|_| bad("bad prime"))?;
        Ok(FieldSpec::Prime(p))
    }

    /// Checks the invariants (p prime, n >= 1), canonicalising cyclotomic(1)
    /// to the rationals.
    pub fn validate(self) -> Result<FieldSpec, ScalarError> {
        match self {
            FieldSpec::Prime(p) => {
                if is_prime(p) && p < (1 << 32) {
                    Ok(self)
                } else {
                    Err(ScalarError::NotPrime(p))
                }
            }
            FieldSpec::Cyclotomic(0) => Err(ScalarError::ZeroCyclotomicOrder),
            FieldSpec::Cyclotomic(1) => Ok(FieldSpec::Rationals),
            _ => Ok(self),
        }
    }

    pub fn characteristic(self) -> u64 {
        match self {
            FieldSpec::Prime(p) => p,
            _ => 0,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "F{p}"),
            FieldSpec::Cyclotomic(n) => write!(f, "cyclotomic-{n}"),
        }
    }
}

/// Generic code run once the field is known at runtime.
pub trait FieldVisitor {
    type Output;
    fn visit<F: Field>(self, field: F) -> Self::Output;
}

/// Instantiates the field named by `spec` and hands it to `visitor`.
pub fn with_field<V: FieldVisitor>(spec: FieldSpec, visitor: V) -> Result<V::Output, ScalarError> {
    match spec.validate()? {
        FieldSpec::Rationals => Ok(visitor.visit(Rationals)),
        FieldSpec::Prime(p) => Ok(visitor.visit(PrimeField::new(p)?)),
        #[cfg(feature = "cyclotomic")]
        FieldSpec::Cyclotomic(n) => Ok(visitor.visit(Cyclotomic::new(n)?)),
        #[cfg(not(feature = "cyclotomic"))]
        spec @ FieldSpec::Cyclotomic(_) => Err(ScalarError::Unsupported(spec.to_string())),
    }
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut k = 2u64;
    while k * k <= p {
        if p % k == 0 {
            return false;
        }
        k += 1;
    }
    true
}

/// A field together with its element representation.
///
/// Elements are plain values; all arithmetic goes through the field so that
/// prime fields and cyclotomic fields can carry their modulus once.
pub trait Field: Clone + Debug + Send + Sync + 'static {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Send + Sync;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem, ScalarError>;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn parse(&self, s: &str) -> Result<Self::Elem, ScalarError>;
    fn format(&self, a: &Self::Elem) -> String;
    /// Total order used for deterministic tie-breaking (not a field order).
    fn cmp_canonical(&self, a: &Self::Elem, b: &Self::Elem) -> Ordering;

    /// Roots of `coeffs[0] + coeffs[1] x + ...` lying in the field, without
    /// multiplicity, sorted canonically. `None` when the field has no root
    /// finder for this polynomial.
    fn roots(&self, coeffs: &[Self::Elem]) -> Option<Vec<Self::Elem>>;

    fn characteristic(&self) -> u64 {
        self.spec().characteristic()
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, ScalarError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn add_assign(&self, acc: &mut Self::Elem, b: &Self::Elem) {
        *acc = self.add(acc, b);
    }

    /// `acc += a * b`
    fn mul_add_assign(&self, acc: &mut Self::Elem, a: &Self::Elem, b: &Self::Elem) {
        let p = self.mul(a, b);
        self.add_assign(acc, &p);
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

/// Evaluates a polynomial given by ascending coefficients.
pub fn eval_poly<F: Field>(field: &F, coeffs: &[F::Elem], x: &F::Elem) -> F::Elem {
    let mut acc = field.zero();
    for c in coeffs.iter().rev() {
        acc = field.mul(&acc, x);
        field.add_assign(&mut acc, c);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_specs() {
        assert_eq!(FieldSpec::parse("Q").unwrap(), FieldSpec::Rationals);
        assert_eq!(FieldSpec::parse("F5").unwrap(), FieldSpec::Prime(5));
        assert_eq!(FieldSpec::parse("Fp7").unwrap(), FieldSpec::Prime(7));
        assert_eq!(FieldSpec::parse("cyclotomic-8").unwrap(), FieldSpec::Cyclotomic(8));
        assert!(FieldSpec::parse("R").is_err());
    }

    #[test]
    fn validate_specs() {
        assert!(FieldSpec::Prime(6).validate().is_err());
        assert!(FieldSpec::Prime(1).validate().is_err());
        assert!(FieldSpec::Cyclotomic(0).validate().is_err());
        assert_eq!(FieldSpec::Cyclotomic(1).validate().unwrap(), FieldSpec::Rationals);
        assert_eq!(FieldSpec::Prime(101).validate().unwrap(), FieldSpec::Prime(101));
    }
}
