use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Field, FieldSpec, ScalarError};

/// Exact rational number.
///
/// Values whose reduced numerator and denominator fit in an `i64` are kept
/// inline; everything else is promoted to a big rational. The representation
/// is canonical (denominator positive, gcd 1, small whenever possible), so
/// derived equality and hashing are value equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Rational {
    Small(i64, i64),
    Big(Box<BigRational>),
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rational {
    pub fn zero() -> Rational {
        Rational::Small(0, 1)
    }

    pub fn one() -> Rational {
        Rational::Small(1, 1)
    }

    pub fn from_int(n: i64) -> Rational {
        Rational::Small(n, 1)
    }

    /// Builds `num/den` from 128-bit parts, reducing and promoting as needed.
    fn from_i128(num: i128, den: i128) -> Rational {
        debug_assert!(den != 0);
        let (mut n, mut d) = if den < 0 { (-num, -den) } else { (num, den) };
        if n == 0 {
            return Rational::zero();
        }
        let g = gcd_u128(n.unsigned_abs(), d as u128) as i128;
        if g > 1 {
            n /= g;
            d /= g;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Rational::Small(n, d),
            _ => Rational::Big(Box::new(BigRational::new_raw(BigInt::from(n), BigInt::from(d)))),
        }
    }

    pub fn from_big(r: BigRational) -> Rational {
        // BigRational::new normalises; new_raw callers must pass reduced values.
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) => Rational::Small(n, d),
            _ => Rational::Big(Box::new(r)),
        }
    }

    pub fn new(num: BigInt, den: BigInt) -> Result<Rational, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Rational::from_big(BigRational::new(num, den)))
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Rational::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Rational::Big(b) => (**b).clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match self {
            Rational::Small(n, _) => BigInt::from(*n),
            Rational::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match self {
            Rational::Small(_, d) => BigInt::from(*d),
            Rational::Big(b) => b.denom().clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Rational::Small(0, _))
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Rational::Small(_, d) => *d == 1,
            Rational::Big(b) => b.is_integer(),
        }
    }

    pub fn add(&self, other: &Rational) -> Rational {
        match (self, other) {
            (Rational::Small(a, 1), Rational::Small(b, 1)) => match a.checked_add(*b) {
                Some(s) => Rational::Small(s, 1),
                None => Rational::from_i128(*a as i128 + *b as i128, 1),
            },
            (Rational::Small(an, ad), Rational::Small(bn, bd)) => {
                if ad == bd {
                    Rational::from_i128(*an as i128 + *bn as i128, *ad as i128)
                } else {
                    let (an, ad, bn, bd) = (*an as i128, *ad as i128, *bn as i128, *bd as i128);
                    match an
                        .checked_mul(bd)
                        .and_then(|x| bn.checked_mul(ad).and_then(|y| x.checked_add(y)))
                    {
                        Some(num) => Rational::from_i128(num, ad * bd),
                        None => Rational::from_big(self.to_big() + other.to_big()),
                    }
                }
            }
            _ => Rational::from_big(self.to_big() + other.to_big()),
        }
    }

    pub fn neg(&self) -> Rational {
        match self {
            Rational::Small(n, d) => match n.checked_neg() {
                Some(m) => Rational::Small(m, *d),
                None => Rational::from_i128(-(*n as i128), *d as i128),
            },
            Rational::Big(b) => Rational::from_big(-(**b).clone()),
        }
    }

    pub fn mul(&self, other: &Rational) -> Rational {
        match (self, other) {
            (Rational::Small(0, _), _) | (_, Rational::Small(0, _)) => Rational::zero(),
            (Rational::Small(a, 1), Rational::Small(b, 1)) => match a.checked_mul(*b) {
                Some(p) => Rational::Small(p, 1),
                None => Rational::from_i128(*a as i128 * *b as i128, 1),
            },
            (Rational::Small(an, ad), Rational::Small(bn, bd)) => {
                // |i64 * i64| < 2^126, so the products never overflow i128.
                Rational::from_i128(*an as i128 * *bn as i128, *ad as i128 * *bd as i128)
            }
            _ => Rational::from_big(self.to_big() * other.to_big()),
        }
    }

    pub fn inv(&self) -> Result<Rational, ScalarError> {
        match self {
            Rational::Small(0, _) => Err(ScalarError::DivisionByZero),
            Rational::Small(n, d) => Ok(Rational::from_i128(*d as i128, *n as i128)),
            Rational::Big(b) => Ok(Rational::from_big(b.recip())),
        }
    }

    pub fn signum(&self) -> i32 {
        match self {
            Rational::Small(n, _) => n.signum() as i32,
            Rational::Big(b) => {
                if b.is_positive() {
                    1
                } else if b.is_negative() {
                    -1
                } else {
                    0
                }
            }
        }
    }

    pub fn parse(s: &str) -> Result<Rational, ScalarError> {
        let t = s.trim();
        let bad = |reason: &str| ScalarError::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let (n, d) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad("bad numerator"))?;
        let d: BigInt = d.parse().map_err(|_| bad("bad denominator"))?;
        if d.is_zero() {
            return Err(bad("zero denominator"));
        }
        Ok(Rational::from_big(BigRational::new(n, d)))
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Rational::Small(an, ad), Rational::Small(bn, bd)) => {
                (*an as i128 * *bd as i128).cmp(&(*bn as i128 * *ad as i128))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rational::Small(n, 1) => write!(f, "{n}"),
            Rational::Small(n, d) => write!(f, "{n}/{d}"),
            Rational::Big(b) if b.is_integer() => write!(f, "{}", b.numer()),
            Rational::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The field of rational numbers.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = Rational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }
    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a.add(b)
    }
    fn neg(&self, a: &Rational) -> Rational {
        a.neg()
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a.mul(b)
    }
    fn inv(&self, a: &Rational) -> Result<Rational, ScalarError> {
        a.inv()
    }
    fn from_i64(&self, n: i64) -> Rational {
        Rational::from_int(n)
    }
    fn parse(&self, s: &str) -> Result<Rational, ScalarError> {
        Rational::parse(s)
    }
    fn format(&self, a: &Rational) -> String {
        a.to_string()
    }
    fn cmp_canonical(&self, a: &Rational, b: &Rational) -> Ordering {
        a.cmp(b)
    }
    fn roots(&self, coeffs: &[Rational]) -> Option<Vec<Rational>> {
        rational_roots(coeffs)
    }
}

const DIVISOR_LIMIT: u64 = 1 << 40;

fn divisors(n: &BigInt) -> Option<Vec<u64>> {
    let n = n.abs().to_u64()?;
    if n == 0 || n > DIVISOR_LIMIT {
        return None;
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut k = 1u64;
    while k * k <= n {
        if n % k == 0 {
            small.push(k);
            if k * k != n {
                large.push(n / k);
            }
        }
        k += 1;
    }
    large.reverse();
    small.extend(large);
    Some(small)
}

/// Rational roots by the rational root theorem.
fn rational_roots(coeffs: &[Rational]) -> Option<Vec<Rational>> {
    let mut c: Vec<BigRational> = coeffs.iter().map(|x| x.to_big()).collect();
    while c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
    if c.len() <= 1 {
        // constant polynomial: no roots (the zero polynomial is not expected here)
        return Some(Vec::new());
    }
    let mut roots = Vec::new();
    let lead_zeros = c.iter().take_while(|x| x.is_zero()).count();
    if lead_zeros > 0 {
        roots.push(Rational::zero());
        c.drain(..lead_zeros);
    }
    if c.len() > 1 {
        let lcm = c.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> = c.iter().map(|x| (x * &lcm).to_integer()).collect();
        let p_div = divisors(&ints[0])?;
        let q_div = divisors(ints.last().unwrap())?;
        let as_rat: Vec<Rational> = c.iter().map(|x| Rational::from_big(x.clone())).collect();
        let mut seen = std::collections::HashSet::new();
        for p in &p_div {
            for q in &q_div {
                for sign in [1i64, -1] {
                    let r = Rational::new(BigInt::from(*p) * sign, BigInt::from(*q)).ok()?;
                    if !seen.insert(r.clone()) {
                        continue;
                    }
                    if super::eval_poly(&Rationals, &as_rat, &r).is_zero() {
                        roots.push(r);
                    }
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    Some(roots)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        Rational::parse(s).unwrap()
    }

    #[test]
    fn add_thirds_and_sixths() {
        assert_eq!(Rationals.add(&q("1/3"), &q("1/6")), q("1/2"));
    }

    #[test]
    fn invert_negative() {
        assert_eq!(Rationals.inv(&q("-2/3")).unwrap(), q("-3/2"));
        assert_eq!(Rationals.inv(&q("0")), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn promotes_and_demotes() {
        let big = q("9223372036854775807");
        let sum = big.add(&Rational::one());
        assert!(matches!(sum, Rational::Big(_)));
        assert_eq!(sum.add(&Rational::from_int(-1)), big);
        assert!(matches!(sum.add(&Rational::from_int(-1)), Rational::Small(..)));
        let m = Rational::from_int(i64::MIN);
        assert_eq!(m.neg().neg(), m);
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(q("4/-6").to_string(), "-2/3");
        assert_eq!(q(" 10 ").to_string(), "10");
        assert!(Rational::parse("1/0").is_err());
        assert!(Rational::parse("x").is_err());
    }

    #[test]
    fn roots_of_quadratic() {
        // 2x^2 - 3x + 1 = (2x - 1)(x - 1)
        let r = Rationals.roots(&[q("1"), q("-3"), q("2")]).unwrap();
        assert_eq!(r, vec![q("1/2"), q("1")]);
        // x^3 - x = x(x-1)(x+1)
        let r = Rationals.roots(&[q("0"), q("-1"), q("0"), q("1")]).unwrap();
        assert_eq!(r, vec![q("-1"), q("0"), q("1")]);
        // x^2 + 1 has none
        assert!(Rationals.roots(&[q("1"), q("0"), q("1")]).unwrap().is_empty());
    }
}
