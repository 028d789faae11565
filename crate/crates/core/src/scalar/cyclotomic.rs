use std::cmp::Ordering;

use super::rational::Rational;
use super::{Field, FieldSpec, ScalarError};

/// Element of Q(zeta_n): coefficients of a polynomial in zeta of degree
/// below phi(n), reduced modulo the n-th cyclotomic polynomial.
pub type CycElem = Vec<Rational>;

/// The cyclotomic field Q(zeta_n).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cyclotomic {
    n: u32,
    /// Monic minimal polynomial, ascending integer coefficients, length phi(n)+1.
    modulus: Vec<i64>,
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    // den is monic
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![0i64; num.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        if c != 0 {
            for (j, dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|x| *x == 0));
    quot
}

pub(crate) fn cyclotomic_poly(n: u32) -> Vec<i64> {
    // x^n - 1 divided by Phi_d for every proper divisor d
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = poly_div_exact(&p, &cyclotomic_poly(d));
        }
    }
    p
}

impl Cyclotomic {
    pub fn new(n: u32) -> Result<Cyclotomic, ScalarError> {
        if n == 0 {
            return Err(ScalarError::ZeroCyclotomicOrder);
        }
        Ok(Cyclotomic { n, modulus: cyclotomic_poly(n) })
    }

    pub fn order(&self) -> u32 {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    /// The primitive root zeta itself.
    pub fn zeta(&self) -> CycElem {
        let mut x = vec![Rational::zero(); self.degree()];
        if self.degree() == 1 {
            // Q(zeta_1) = Q(zeta_2) = Q; zeta is the root of the linear modulus
            x[0] = Rational::from_int(-self.modulus[0]);
        } else {
            x[1] = Rational::one();
        }
        x
    }

    fn reduce(&self, mut c: Vec<Rational>) -> CycElem {
        let deg = self.degree();
        for i in (deg..c.len()).rev() {
            let lead = std::mem::replace(&mut c[i], Rational::zero());
            if lead.is_zero() {
                continue;
            }
            for (j, mj) in self.modulus[..deg].iter().enumerate() {
                if *mj != 0 {
                    let t = lead.mul(&Rational::from_int(*mj));
                    c[i - deg + j] = c[i - deg + j].add(&t.neg());
                }
            }
        }
        c.truncate(deg);
        c.resize(deg, Rational::zero());
        c
    }

    fn from_rational(&self, r: Rational) -> CycElem {
        let mut x = vec![Rational::zero(); self.degree()];
        x[0] = r;
        x
    }
}

impl Field for Cyclotomic {
    type Elem = CycElem;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Cyclotomic(self.n)
    }
    fn zero(&self) -> CycElem {
        vec![Rational::zero(); self.degree()]
    }
    fn one(&self) -> CycElem {
        self.from_rational(Rational::one())
    }
    fn is_zero(&self, a: &CycElem) -> bool {
        a.iter().all(|c| c.is_zero())
    }
    fn add(&self, a: &CycElem, b: &CycElem) -> CycElem {
        a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
    }
    fn neg(&self, a: &CycElem) -> CycElem {
        a.iter().map(|x| x.neg()).collect()
    }
    fn mul(&self, a: &CycElem, b: &CycElem) -> CycElem {
        let mut c = vec![Rational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    c[i + j] = c[i + j].add(&x.mul(y));
                }
            }
        }
        self.reduce(c)
    }
    fn inv(&self, a: &CycElem) -> Result<CycElem, ScalarError> {
        if self.is_zero(a) {
            return Err(ScalarError::DivisionByZero);
        }
        // Solve a * x = 1 through the multiplication matrix of a.
        let deg = self.degree();
        let mut rows: Vec<Vec<Rational>> = vec![vec![Rational::zero(); deg + 1]; deg];
        for j in 0..deg {
            let mut basis = vec![Rational::zero(); deg];
            basis[j] = Rational::one();
            let col = self.mul(a, &basis);
            for i in 0..deg {
                rows[i][j] = col[i].clone();
            }
        }
        rows[0][deg] = Rational::one();
        for col in 0..deg {
            let piv = (col..deg)
                .find(|&r| !rows[r][col].is_zero())
                .ok_or(ScalarError::DivisionByZero)?;
            rows.swap(col, piv);
            let inv = rows[col][col].inv()?;
            for x in rows[col].iter_mut() {
                *x = x.mul(&inv);
            }
            for r in 0..deg {
                if r != col && !rows[r][col].is_zero() {
                    let f = rows[r][col].clone();
                    for k in col..=deg {
                        let t = f.mul(&rows[col][k]);
                        rows[r][k] = rows[r][k].add(&t.neg());
                    }
                }
            }
        }
        Ok(rows.into_iter().map(|r| r[deg].clone()).collect())
    }
    fn from_i64(&self, n: i64) -> CycElem {
        self.from_rational(Rational::from_int(n))
    }
    fn parse(&self, s: &str) -> Result<CycElem, ScalarError> {
        let t = s.trim();
        match t.strip_prefix('[').and_then(|x| x.strip_suffix(']')) {
            Some(inner) => {
                let parts: Vec<Rational> = if inner.trim().is_empty() {
                    Vec::new()
                } else {
                    inner.split(',').map(Rational::parse).collect::<Result<_, _>>()?
                };
                if parts.len() > self.degree() {
                    // allow unreduced input
                    return Ok(self.reduce(parts));
                }
                let mut v = parts;
                v.resize(self.degree(), Rational::zero());
                Ok(v)
            }
            None => Ok(self.from_rational(Rational::parse(t)?)),
        }
    }
    fn format(&self, a: &CycElem) -> String {
        let parts: Vec<String> = a.iter().map(|x| x.to_string()).collect();
        format!("[{}]", parts.join(","))
    }
    fn cmp_canonical(&self, a: &CycElem, b: &CycElem) -> Ordering {
        a.cmp(b)
    }

    /// Only roots of unity (up to sign), zero and rational roots are tried;
    /// the answer is returned only when those account for the full degree.
    fn roots(&self, coeffs: &[CycElem]) -> Option<Vec<CycElem>> {
        let mut p: Vec<CycElem> = coeffs.to_vec();
        while p.last().is_some_and(|c| self.is_zero(c)) {
            p.pop();
        }
        if p.is_empty() {
            return None;
        }
        let mut candidates = vec![self.zero()];
        let z = self.zeta();
        let mut power = self.one();
        for _ in 0..self.n.max(2) {
            candidates.push(power.clone());
            candidates.push(self.neg(&power));
            power = self.mul(&power, &z);
        }
        if p.iter().all(|c| c[1..].iter().all(|x| x.is_zero())) {
            let rat: Vec<Rational> = p.iter().map(|c| c[0].clone()).collect();
            if let Some(rs) = super::Rationals.roots(&rat) {
                candidates.extend(rs.into_iter().map(|r| self.from_rational(r)));
            }
        }
        let mut found = Vec::new();
        for c in candidates {
            if found.contains(&c) {
                continue;
            }
            let mut hit = false;
            // synthetic division by (x - c) while it divides
            loop {
                if p.len() <= 1 {
                    break;
                }
                let mut q = vec![self.zero(); p.len() - 1];
                let mut carry = self.zero();
                for i in (0..p.len()).rev() {
                    let v = self.add(&p[i], &self.mul(&carry, &c));
                    if i == 0 {
                        carry = v;
                    } else {
                        q[i - 1] = v.clone();
                        carry = v;
                    }
                }
                if self.is_zero(&carry) {
                    p = q;
                    hit = true;
                } else {
                    break;
                }
            }
            if hit {
                found.push(c);
            }
        }
        if p.len() > 1 {
            return None;
        }
        found.sort();
        Some(found)
    }
}
