use super::*;
use crate::builders::{build_group_algebra, build_sweedler, cyclic_table, preset};
use crate::hopf::{center_basis, dual_bimodule, twist_s2inv};
use crate::linalg::{densify, sparsify};
use crate::ribbon::class_functions;
use crate::scalar::{PrimeField, Rationals};
use rand::{Rng, SeedableRng};

fn kz2() -> Complex<Rationals> {
    Complex::regular(build_group_algebra(&Rationals, &cyclic_table(2)).unwrap().algebra())
}

#[test]
fn coface_examples() {
    let c = kz2();
    let a = c.algebra();
    // n = 1, i = 0: m -> (a -> a m)
    let m0 = c.coface_matrix(1, 0).unwrap();
    let m1 = c.coface_matrix(1, 1).unwrap();
    for x in 0..2 {
        for s in 0..2 {
            let col = m0.column(s);
            assert_eq!(col[x * 2..x * 2 + 2].to_vec(), a.mul(&a.basis(x), &a.basis(s)));
            let col = m1.column(s);
            assert_eq!(col[x * 2..x * 2 + 2].to_vec(), a.mul(&a.basis(s), &a.basis(x)));
        }
    }
    // n = 2, i = 1: f -> (a (x) b -> f(ab))
    let m = c.coface_matrix(2, 1).unwrap();
    for x in 0..2 {
        for y in 0..2 {
            for r in 0..2 {
                let row = m.row((x * 2 + y) * 2 + r);
                assert_eq!(row, &[(((x + y) % 2) * 2 + r, Rationals.one())]);
            }
        }
    }
    assert!(c.coface_matrix(1, 2).is_err());
}

#[test]
fn d0_is_commutator_and_kernel_is_center() {
    for name in ["kS3", "sweedler", "D-kZ3"] {
        let (h, _) = preset(name, &Rationals).unwrap();
        let c = Complex::regular(h.algebra());
        let d0 = c.differential_matrix(0).unwrap();
        let a = h.algebra();
        for s in 0..h.dim() {
            let col = d0.column(s);
            for x in 0..h.dim() {
                let l = a.mul(&a.basis(x), &a.basis(s));
                let r = a.mul(&a.basis(s), &a.basis(x));
                let want: Vec<_> = l.iter().zip(&r).map(|(p, q)| Rationals.sub(p, q)).collect();
                assert_eq!(col[x * h.dim()..(x + 1) * h.dim()].to_vec(), want);
            }
        }
        assert_eq!(kernel_basis(&d0), center_basis(a));
    }
}

#[test]
fn dd_vanishes_streaming_and_materialised() {
    let c = kz2();
    for n in 0..3 {
        let dd = c.differential_matrix(n + 1).unwrap().mul(&c.differential_matrix(n).unwrap()).unwrap();
        assert!(dd.is_zero());
        assert_eq!(c.first_nonzero_dd_row(n), None);
    }
    let h = build_sweedler(&Rationals).unwrap();
    let twisted = Complex::new(h.algebra(), &dual_bimodule(&twist_s2inv(&h))).unwrap();
    for n in 0..3 {
        assert_eq!(twisted.first_nonzero_dd_row(n), None);
    }
}

#[test]
fn apply_matches_matrix() {
    let h = build_sweedler(&Rationals).unwrap();
    let c = Complex::regular(h.algebra());
    let mut rng = rand::rngs::StdRng::seed_from_u64(7);
    let x: Vec<_> = (0..c.cochain_dim(2)).map(|_| Rationals.from_i64(rng.gen_range(-3..4))).collect();
    assert_eq!(c.apply_differential(2, &x).unwrap(), c.differential_matrix(2).unwrap().apply(&x));
}

/// `d h + h d = L_c - R_c` on `C^n`.
fn homotopy_holds<F: Field>(c: &Complex<F>, z: &[F::Elem], n: usize) -> bool {
    let dim = c.cochain_dim(n);
    let mut lhs = c.homotopy_matrix(z, n + 1).unwrap().mul(&c.differential_matrix(n).unwrap()).unwrap();
    if n > 0 {
        let dh = c.differential_matrix(n - 1).unwrap().mul(&c.homotopy_matrix(z, n).unwrap()).unwrap();
        lhs = lhs.add(&dh).unwrap();
    }
    let rhs = c.left_action_matrix(z, n).unwrap().sub(&c.right_action_matrix(z, n).unwrap()).unwrap();
    assert_eq!((lhs.rows(), lhs.cols()), (dim, dim));
    lhs == rhs
}

#[test]
fn homotopy_identity() {
    let (h, _) = preset("D-kZ2", &Rationals).unwrap();
    let c = Complex::regular(h.algebra());
    let z = center_basis(h.algebra());
    let mut rng = rand::rngs::StdRng::seed_from_u64(11);
    for _ in 0..2 {
        let mut elt = vec![Rationals.zero(); h.dim()];
        for b in z.basis_dense() {
            let k = Rationals.from_i64(rng.gen_range(-5..6));
            for (e, x) in elt.iter_mut().zip(&b) {
                Rationals.mul_add_assign(e, &k, x);
            }
        }
        for n in 0..3 {
            assert!(homotopy_holds(&c, &elt, n));
        }
    }
    // c = 1 makes both sides vanish
    let one = h.algebra().unit().to_vec();
    let dh = c.differential_matrix(0).unwrap().mul(&c.homotopy_matrix(&one, 1).unwrap()).unwrap();
    let hd = c.homotopy_matrix(&one, 2).unwrap().mul(&c.differential_matrix(1).unwrap()).unwrap();
    assert!(dh.add(&hd).unwrap().is_zero());
}

#[test]
fn h1_is_evaluation() {
    let (h, _) = preset("D-kZ3", &Rationals).unwrap();
    let c = Complex::regular(h.algebra());
    let z = densify(&Rationals, &center_basis(h.algebra()).basis()[3], 9);
    let h1 = c.homotopy_matrix(&z, 1).unwrap();
    let mut f = vec![Rationals.zero(); 81];
    f[2 * 9 + 5] = Rationals.one(); // f(e_2) = e_5
    let want: Vec<_> = (0..9).map(|r| if r == 5 { z[2].clone() } else { Rationals.zero() }).collect();
    assert_eq!(h1.apply(&f), want);
}

#[test]
fn non_central_rejected() {
    let h = build_sweedler(&Rationals).unwrap();
    let c = Complex::regular(h.algebra());
    assert!(matches!(c.homotopy_matrix(&h.algebra().basis(1), 2), Err(Error::NotCentral)));
}

#[test]
fn semisimple_double_vanishes() {
    let (h, _) = preset("D-kZ2", &Rationals).unwrap();
    let c = Complex::regular(h.algebra());
    assert_eq!(c.cohomology(0).unwrap().dim(), 4);
    assert_eq!(c.cohomology(1).unwrap().dim(), 0);
    assert_eq!(c.cohomology(2).unwrap().dim(), 0);
}

/// `k[x]/(x^2)` has the 2-periodic bimodule resolution with maps
/// `x (x) 1 - 1 (x) x` and `x (x) 1 + 1 (x) x`; applying `Hom(-, A)` gives
/// multiplication by `0` and by `2x` on `A` alternately.
fn periodic_oracle(p: u64, n: usize) -> usize {
    let f = PrimeField::new(p).unwrap();
    let mul_x = Matrix::from_dense(&f, &[vec![0, 0], vec![1, 0]]);
    let zero = Matrix::zeros(&f, 2, 2);
    let two_x = mul_x.scale(&f.from_i64(2));
    let out = if n % 2 == 0 { &zero } else { &two_x };
    let inc = match n {
        0 => None,
        _ if n % 2 == 1 => Some(&zero),
        _ => Some(&two_x),
    };
    2 - out.rank() - inc.map_or(0, |m| m.rank())
}

#[test]
fn f2_z2_against_periodic_resolution() {
    let f2 = PrimeField::new(2).unwrap();
    let h = build_group_algebra(&f2, &cyclic_table(2)).unwrap();
    let c = Complex::regular(h.algebra());
    for n in 0..3 {
        assert_eq!(c.cohomology(n).unwrap().dim(), periodic_oracle(2, n));
        assert_eq!(periodic_oracle(2, n), 2);
    }
}

#[test]
fn hh0_of_dual_twist_is_class_functions() {
    for name in ["sweedler", "kS3", "D-kZ2"] {
        let (h, _) = preset(name, &Rationals).unwrap();
        let c = Complex::new(h.algebra(), &dual_bimodule(&twist_s2inv(&h))).unwrap();
        assert_eq!(c.cohomology(0).unwrap().cocycles, class_functions(&h), "{name}");
    }
}

#[test]
fn induced_maps() {
    let (h, _) = preset("sweedler", &Rationals).unwrap();
    let c = Complex::regular(h.algebra());
    for n in 0..3 {
        let hh = c.cohomology(n).unwrap();
        let id = Matrix::identity(&Rationals, c.cochain_dim(n));
        assert_eq!(hh.induced_map(&id, &hh).unwrap(), Matrix::identity(&Rationals, hh.dim()));
    }
    let (h, _) = preset("D-kZ3", &Rationals).unwrap();
    let c = Complex::regular(h.algebra());
    let z = densify(&Rationals, &center_basis(h.algebra()).basis()[4], 9);
    let hh = c.cohomology(0).unwrap();
    let l = hh.induced_map(&c.left_action_matrix(&z, 0).unwrap(), &hh).unwrap();
    let r = hh.induced_map(&c.right_action_matrix(&z, 0).unwrap(), &hh).unwrap();
    assert_eq!(l, r);
    let rep = sparsify(&Rationals, &z);
    assert!(hh.class_of(&rep).unwrap().is_some());
}

#[test]
fn memory_cap_is_enforced() {
    let (h, _) = preset("D-kZ3", &Rationals).unwrap();
    let c = Complex::regular(h.algebra());
    assert!(matches!(c.differential_matrix(6), Err(Error::ResourceCap { .. })));
}
