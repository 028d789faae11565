//! Built-in presets and presentation files.

mod double;
mod file;

pub use double::build_drinfeld_double;
pub use file::{load_presentation, Bundle, Decoded, FieldEntry, PresentationFile, Provenance};

use crate::error::{Error, Result};
use crate::hopf::{AlgebraPresentation, HopfPresentation};
use crate::scalar::Field;

/// Group algebra `kG` from a multiplication table (`table[g][h] = gh`).
pub fn build_group_algebra<F: Field>(field: &F, table: &[Vec<usize>]) -> Result<HopfPresentation<F>> {
    let n = table.len();
    if n == 0 || table.iter().any(|r| r.len() != n || r.iter().any(|x| *x >= n)) {
        return Err(Error::Invalid("group table must be a square table of element indices".into()));
    }
    let identity = (0..n)
        .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
        .ok_or_else(|| Error::Invalid("group table has no identity".into()))?;
    let mut inverse = vec![0; n];
    for g in 0..n {
        inverse[g] = (0..n)
            .find(|&h| table[g][h] == identity && table[h][g] == identity)
            .ok_or_else(|| Error::Invalid(format!("element {g} has no inverse")))?;
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if table[table[a][b]][c] != table[a][table[b][c]] {
                    return Err(Error::Invalid(format!("group table is not associative at ({a}, {b}, {c})")));
                }
            }
        }
    }
    let one = field.one();
    let mut unit = vec![field.zero(); n];
    unit[identity] = one.clone();
    let mult = (0..n).flat_map(|g| (0..n).map(move |h| (g, h))).map(|(g, h)| (g, h, table[g][h], one.clone()));
    let alg = AlgebraPresentation::new(field, n, mult.collect::<Vec<_>>(), unit)?;
    HopfPresentation::new(
        alg,
        (0..n).map(|g| (g, g, g, one.clone())).collect::<Vec<_>>(),
        vec![one.clone(); n],
        (0..n).map(|g| (g, inverse[g], one.clone())).collect::<Vec<_>>(),
    )
}

pub fn cyclic_table(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect()
}

/// Multiplication table of `S_3`, elements in lexicographic order of their
/// one-line notation; `(p q)(i) = p(q(i))`.
pub fn s3_table() -> Vec<Vec<usize>> {
    let perms: Vec<[usize; 3]> =
        vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).expect("permutation");
    perms
        .iter()
        .map(|p| perms.iter().map(|q| index([p[q[0]], p[q[1]], p[q[2]]])).collect())
        .collect()
}

/// Sweedler's four-dimensional Hopf algebra on the basis `1, g, x, gx` with
/// `g^2 = 1`, `x^2 = 0`, `xg = -gx`, `x` skew-primitive
/// (`Delta(x) = x (x) 1 + g (x) x`) and `S(x) = -gx`.
pub fn build_sweedler<F: Field>(field: &F) -> Result<HopfPresentation<F>> {
    if field.characteristic() == 2 {
        return Err(Error::Unsupported("the Sweedler algebra needs characteristic different from 2".into()));
    }
    let one = field.one();
    let m1 = field.from_i64(-1);
    let (e, g, x, gx) = (0, 1, 2, 3);
    let mult = vec![
        (e, e, e, one.clone()),
        (e, g, g, one.clone()),
        (e, x, x, one.clone()),
        (e, gx, gx, one.clone()),
        (g, e, g, one.clone()),
        (g, g, e, one.clone()),
        (g, x, gx, one.clone()),
        (g, gx, x, one.clone()),
        (x, e, x, one.clone()),
        (x, g, gx, m1.clone()),
        (gx, e, gx, one.clone()),
        (gx, g, x, m1.clone()),
    ];
    let mut unit = vec![field.zero(); 4];
    unit[e] = one.clone();
    let alg = AlgebraPresentation::new(field, 4, mult, unit)?;
    let comult = vec![
        (e, e, e, one.clone()),
        (g, g, g, one.clone()),
        (x, x, e, one.clone()),
        (x, g, x, one.clone()),
        (gx, gx, g, one.clone()),
        (gx, e, gx, one.clone()),
    ];
    let counit = vec![one.clone(), one.clone(), field.zero(), field.zero()];
    let antipode = vec![(e, e, one.clone()), (g, g, one.clone()), (x, gx, m1), (gx, x, one)];
    HopfPresentation::new(alg, comult, counit, antipode)
}

/// Names accepted by [`preset`].
pub const PRESETS: &[&str] = &["kZ2", "kZ3", "kS3", "sweedler", "D-kZ2", "D-kZ3", "D-sweedler"];

/// A preset Hopf algebra, with its R-matrix when it is a double.
pub fn preset<F: Field>(name: &str, field: &F) -> Result<(HopfPresentation<F>, Option<Vec<F::Elem>>)> {
    let plain = |h: HopfPresentation<F>| (h, None);
    match name {
        "kZ2" => build_group_algebra(field, &cyclic_table(2)).map(plain),
        "kZ3" => build_group_algebra(field, &cyclic_table(3)).map(plain),
        "kS3" => build_group_algebra(field, &s3_table()).map(plain),
        "sweedler" => build_sweedler(field).map(plain),
        "D-kZ2" | "D-kZ3" | "D-sweedler" => {
            let (base, _) = preset(&name[2..], field)?;
            let (d, r) = build_drinfeld_double(&base)?;
            Ok((d, Some(r)))
        }
        _ => Err(Error::Invalid(format!("unknown preset {name:?}; known presets: {}", PRESETS.join(", ")))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::{center_basis, verify_hopf};
    use crate::scalar::{PrimeField, Rationals};

    #[test]
    fn group_algebras_are_hopf() {
        for table in [cyclic_table(2), cyclic_table(3), s3_table()] {
            let h = build_group_algebra(&Rationals, &table).unwrap();
            assert!(verify_hopf(&h).is_ok());
        }
    }

    #[test]
    fn s3_center_has_dimension_three() {
        let h = build_group_algebra(&Rationals, &s3_table()).unwrap();
        assert_eq!(center_basis(h.algebra()).dim(), 3);
    }

    #[test]
    fn bad_tables_rejected() {
        assert!(build_group_algebra(&Rationals, &[vec![0, 0], vec![0, 1]]).is_err());
        assert!(build_group_algebra(&Rationals, &[vec![1, 0], vec![0, 0]]).is_err());
    }

    #[test]
    fn sweedler_axioms_and_char_two() {
        let h = build_sweedler(&Rationals).unwrap();
        assert!(verify_hopf(&h).is_ok(), "{}", verify_hopf(&h));
        assert!(build_sweedler(&PrimeField::new(2).unwrap()).is_err());
        assert!(build_sweedler(&PrimeField::new(3).unwrap()).is_ok());
    }

    #[test]
    fn radical_of_f2_z2() {
        let f2 = PrimeField::new(2).unwrap();
        let h = build_group_algebra(&f2, &cyclic_table(2)).unwrap();
        let a = h.algebra();
        // g - e squares to zero over F2
        let y = vec![1u64, 1u64];
        assert!(a.mul(&y, &y).iter().all(|c| *c == 0));
    }
}
