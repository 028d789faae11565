//! Words in the generators `s = (0 -1; 1 0)`, `t = (1 1; 0 1)` of
//! `SL(2,Z)` and their evaluation in a projective representation.

use serde::Serialize;

use super::ModularRep;
use crate::error::{Error, Result};
use crate::scalar::Field;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Letter {
    #[serde(rename = "s")]
    S,
    #[serde(rename = "t")]
    T,
    #[serde(rename = "s^-1")]
    SInv,
    #[serde(rename = "t^-1")]
    TInv,
}

impl Letter {
    fn matrix(self) -> [[i128; 2]; 2] {
        match self {
            Letter::S => [[0, -1], [1, 0]],
            Letter::T => [[1, 1], [0, 1]],
            Letter::SInv => [[0, 1], [-1, 0]],
            Letter::TInv => [[1, -1], [0, 1]],
        }
    }
}

impl std::fmt::Display for Letter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Letter::S => "s",
            Letter::T => "t",
            Letter::SInv => "s^-1",
            Letter::TInv => "t^-1",
        })
    }
}

fn mul2(a: [[i128; 2]; 2], b: [[i128; 2]; 2]) -> [[i128; 2]; 2] {
    let mut c = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    c
}

/// Product of the generator matrices, left to right.
pub fn sl2z_multiply(word: &[Letter]) -> [[i128; 2]; 2] {
    word.iter().fold([[1, 0], [0, 1]], |acc, l| mul2(acc, l.matrix()))
}

fn push_power(word: &mut Vec<Letter>, q: i128) {
    let letter = if q >= 0 { Letter::T } else { Letter::TInv };
    word.extend(std::iter::repeat_n(letter, q.unsigned_abs() as usize));
}

/// A word whose product is `m`, by the Euclidean algorithm on the first
/// column: each step writes `M = t^q s M'` with a strictly smaller lower
/// left entry.
pub fn sl2z_word(m: [[i64; 2]; 2]) -> Result<Vec<Letter>> {
    let [[a, b], [c, d]] = m.map(|r| r.map(i128::from));
    if a * d - b * c != 1 {
        return Err(Error::Invalid(format!("determinant of {m:?} is {}, not 1", a * d - b * c)));
    }
    let mut cur = [[a, b], [c, d]];
    let mut word = Vec::new();
    while cur[1][0] != 0 {
        let q = cur[0][0].div_euclid(cur[1][0]);
        push_power(&mut word, q);
        word.push(Letter::S);
        // M' = s^-1 t^-q M
        cur = mul2(Letter::SInv.matrix(), mul2([[1, -q], [0, 1]], cur));
    }
    // upper triangular with diagonal +-1
    if cur[0][0] == 1 {
        push_power(&mut word, cur[0][1]);
    } else {
        word.extend([Letter::S, Letter::S]);
        push_power(&mut word, -cur[0][1]);
    }
    debug_assert_eq!(sl2z_multiply(&word), [[a, b], [c, d]]);
    Ok(word)
}

/// The image of `m` applied to a class given in the representative basis.
/// The result is determined up to the scalars recorded in `rep`.
pub fn act<F: Field>(m: [[i64; 2]; 2], class: &[F::Elem], rep: &ModularRep<F>) -> Result<(Vec<F::Elem>, String)> {
    let f = rep.s_bar.field();
    if class.len() != rep.dim {
        return Err(Error::DimensionMismatch(format!("class of length {} in HH^{} of dimension {}", class.len(), rep.degree, rep.dim)));
    }
    let word = sl2z_word(m)?;
    let mut s_inv = None;
    let mut x = class.to_vec();
    for letter in word.iter().rev() {
        let g = match letter {
            Letter::S => &rep.s_bar,
            Letter::SInv => s_inv.get_or_insert(
                rep.s_bar.inverse()?.ok_or_else(|| Error::Verification("S-bar is not invertible".into()))?,
            ),
            Letter::T => rep.t_bar.as_ref().ok_or_else(|| Error::Unsupported("no ribbon element: T-bar is undefined".into()))?,
            Letter::TInv => {
                rep.t_bar_inv.as_ref().ok_or_else(|| Error::Unsupported("no ribbon element: T-bar is undefined".into()))?
            }
        };
        x = g.apply(&x);
    }
    let fmt = |v: &Option<F::Elem>| v.as_ref().map_or("unverified".to_string(), |s| f.format(s));
    let note = format!(
        "word {}; projective: defined up to powers of rho(v) = {} and omega^2 = {}",
        if word.is_empty() { "1".into() } else { word.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ") },
        fmt(&rep.sigma_sts),
        fmt(&rep.sigma_s4)
    );
    Ok((x, note))
}
