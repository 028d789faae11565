use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use hochmod::linalg::{kernel_basis, solve, tensor_index, tensor_unflatten, Matrix};
use hochmod::modular::{sl2z_multiply, sl2z_word};
use hochmod::scalar::{Cyclotomic, Field, PrimeField, Rational, Rationals};

fn axioms<F: Field>(f: &F, a: &F::Elem, b: &F::Elem, c: &F::Elem) {
    assert_eq!(f.add(a, b), f.add(b, a));
    assert_eq!(f.mul(a, b), f.mul(b, a));
    assert_eq!(f.add(&f.add(a, b), c), f.add(a, &f.add(b, c)));
    assert_eq!(f.mul(&f.mul(a, b), c), f.mul(a, &f.mul(b, c)));
    assert_eq!(f.mul(a, &f.add(b, c)), f.add(&f.mul(a, b), &f.mul(a, c)));
    assert!(f.is_zero(&f.add(a, &f.neg(a))));
    assert_eq!(f.mul(a, &f.one()), *a);
    if !f.is_zero(a) {
        assert!(f.is_one(&f.mul(a, &f.inv(a).unwrap())));
    } else {
        assert!(f.inv(a).is_err());
    }
    assert_eq!(f.parse(&f.format(a)).unwrap(), *a);
}

fn rational(n: i64, d: i64) -> Rational {
    Rationals.div(&Rationals.from_i64(n), &Rationals.from_i64(d)).unwrap()
}

proptest! {
    #[test]
    fn rational_axioms(a in any::<i64>(), b in 1..i64::MAX, c in any::<i64>(), d in 1..1000i64, e in -1000..1000i64) {
        let (x, y, z) = (rational(a, b), rational(c, d), Rationals.from_i64(e));
        axioms(&Rationals, &x, &y, &z);
    }

    #[test]
    fn rational_normal_form(n in any::<i64>(), d in any::<i64>().prop_filter("nonzero", |d| *d != 0)) {
        let r = rational(n, d);
        let big = BigRational::new(BigInt::from(n), BigInt::from(d));
        prop_assert_eq!(&r, &Rational::from_big(big.clone()));
        prop_assert_eq!(r.to_big(), big);
        if let Rational::Small(p, q) = r {
            prop_assert!(q > 0);
            prop_assert_eq!(num_integer::gcd(p, q), 1);
        }
    }

    #[test]
    fn prime_axioms(p in prop::sample::select(vec![2u64, 3, 5, 7, 101, 65521]), a in any::<u64>(), b in any::<u64>(), c in any::<i64>()) {
        let f = PrimeField::new(p).unwrap();
        let (x, y, z) = (a % p, b % p, f.from_i64(c));
        axioms(&f, &x, &y, &z);
    }

    #[test]
    fn cyclotomic_axioms(n in prop::sample::select(vec![3u32, 4, 5, 8, 12]), cs in prop::collection::vec(-9..9i64, 12)) {
        let f = Cyclotomic::new(n).unwrap();
        let elem = |k: usize| -> Vec<Rational> {
            let text = format!("[{}]", cs[k * 4..k * 4 + 4].iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","));
            f.parse(&text).unwrap()
        };
        axioms(&f, &elem(0), &elem(1), &elem(2));
    }

    #[test]
    fn rank_plus_nullity(rows in 1..7usize, cols in 1..7usize, seed in prop::collection::vec(-3..4i64, 49)) {
        for f in [PrimeField::new(3).unwrap(), PrimeField::new(65521).unwrap()] {
            let data: Vec<Vec<i64>> = (0..rows).map(|i| seed[i * 7..i * 7 + cols].to_vec()).collect();
            let m = Matrix::from_i64(&f, &data);
            let k = kernel_basis(&m);
            prop_assert_eq!(m.rank() + k.dim(), cols);
            for v in k.basis() {
                prop_assert!(m.mul_sparse(v).is_empty());
            }
        }
        let data: Vec<Vec<i64>> = (0..rows).map(|i| seed[i * 7..i * 7 + cols].to_vec()).collect();
        let m = Matrix::from_i64(&Rationals, &data);
        prop_assert_eq!(m.rank() + kernel_basis(&m).dim(), cols);
    }

    #[test]
    fn solve_finds_preimages(rows in 1..6usize, cols in 1..6usize, seed in prop::collection::vec(-5..6i64, 36), x in prop::collection::vec(-5..6i64, 6)) {
        let f = Rationals;
        let data: Vec<Vec<i64>> = (0..rows).map(|i| seed[i * 6..i * 6 + cols].to_vec()).collect();
        let m = Matrix::from_i64(&f, &data);
        let x: Vec<Rational> = x[..cols].iter().map(|c| f.from_i64(*c)).collect();
        let b = m.mul_vec(&x).unwrap();
        let y = solve(&m, &b).unwrap().expect("consistent system");
        prop_assert_eq!(m.mul_vec(&y).unwrap(), b);
    }

    #[test]
    fn tensor_index_round_trip(d in 1..6usize, n in 0..5usize, seed in any::<u64>()) {
        let size = d.pow(n as u32);
        let idx = (seed as usize) % size.max(1);
        let digits = tensor_unflatten(idx, n, d);
        prop_assert_eq!(tensor_index(&digits, d).unwrap(), idx);
    }

    #[test]
    fn sl2z_round_trip(a in -50..=50i64, c in -50..=50i64, k in -3..=3i64) {
        prop_assume!(num_integer::gcd(a, c) == 1);
        let e = num_integer::Integer::extended_gcd(&a, &c);
        let (b, d) = (-e.y * e.gcd + k * a, e.x * e.gcd + k * c);
        let m = [[a, b], [c, d]];
        let w = sl2z_word(m).unwrap();
        prop_assert_eq!(sl2z_multiply(&w), m.map(|r| r.map(i128::from)));
    }
}
