use std::cmp::Ordering;

use super::{Field, FieldSpec, ScalarError};

/// The prime field F_p for a prime `p < 2^32`; elements are canonical
/// representatives `0..p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

/// Largest modulus for which root finding enumerates the whole field.
const ROOT_SCAN_LIMIT: u64 = 1 << 24;

impl PrimeField {
    pub fn new(p: u64) -> Result<PrimeField, ScalarError> {
        FieldSpec::Prime(p).validate()?;
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime(self.p)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        (a * b) % self.p
    }
    fn mul_add_assign(&self, acc: &mut u64, a: &u64, b: &u64) {
        *acc = (*acc + a * b) % self.p;
    }
    fn inv(&self, a: &u64) -> Result<u64, ScalarError> {
        if *a == 0 {
            return Err(ScalarError::DivisionByZero);
        }
        // extended Euclid
        let (mut r0, mut r1) = (self.p as i64, *a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Ok(t0.rem_euclid(self.p as i64) as u64)
    }
    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
    fn parse(&self, s: &str) -> Result<u64, ScalarError> {
        let t = s.trim();
        let bad = |reason: &str| ScalarError::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        // accept "a/b" as well so presentation files can be shared with Q
        let (n, d) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let reduce = |x: &str| -> Result<u64, ScalarError> {
            let v: num_bigint::BigInt = x.parse().map_err(|_| bad("not an integer"))?;
            let m = num_bigint::BigInt::from(self.p);
            let r = ((v % &m) + &m) % &m;
            Ok(r.try_into().expect("residue fits in u64"))
        };
        let n = reduce(n)?;
        let d = reduce(d)?;
        let dinv = self.inv(&d).map_err(|_| bad("denominator divisible by p"))?;
        Ok(self.mul(&n, &dinv))
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
    fn cmp_canonical(&self, a: &u64, b: &u64) -> Ordering {
        a.cmp(b)
    }
    fn roots(&self, coeffs: &[u64]) -> Option<Vec<u64>> {
        if self.p > ROOT_SCAN_LIMIT {
            return None;
        }
        if coeffs.iter().all(|c| *c == 0) {
            return None;
        }
        Some((0..self.p).filter(|x| super::eval_poly(self, coeffs, x) == 0).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modular_reduction() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!(f.add(&2, &4), 1);
        assert_eq!(f.sub(&1, &3), 3);
        assert_eq!(f.from_i64(-1), 4);
    }

    #[test]
    fn inverses() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.inv(&3).unwrap(), 5);
        let f5 = PrimeField::new(5).unwrap();
        assert_eq!(f5.inv(&0), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn rejects_composite() {
        assert_eq!(PrimeField::new(9), Err(ScalarError::NotPrime(9)));
    }

    #[test]
    fn parse_fraction() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!(f.parse("1/2").unwrap(), 3);
        assert_eq!(f.parse("-1").unwrap(), 4);
        assert!(f.parse("1/5").is_err());
    }

    #[test]
    fn roots_by_scan() {
        let f = PrimeField::new(7).unwrap();
        // x^2 - 1
        assert_eq!(f.roots(&[6, 0, 1]).unwrap(), vec![1, 6]);
    }
}
