use super::*;
use crate::builders::{build_group_algebra, cyclic_table, preset};
use crate::hopf::center_basis;
use crate::scalar::{PrimeField, Rationals};

fn trivial_r<F: Field>(h: &HopfPresentation<F>) -> Vec<F::Elem> {
    let f = h.field();
    let u = h.algebra().unit();
    let d = h.dim();
    let mut r = vec![f.zero(); d * d];
    for i in 0..d {
        for j in 0..d {
            r[i * d + j] = f.mul(&u[i], &u[j]);
        }
    }
    r
}

#[test]
fn trivial_r_is_quasitriangular_not_factorizable() {
    let h = build_group_algebra(&Rationals, &cyclic_table(2)).unwrap();
    let r = trivial_r(&h);
    assert!(verify_quasitriangular(&h, &r).is_ok());
    assert_eq!(monodromy(&h, &r), r);
    assert_eq!(verify_factorizable(&h, &r), (false, 1));
    let (u, _) = drinfeld_element(&h, &r).unwrap();
    assert_eq!(u, h.algebra().unit().to_vec());
    let ribbons = find_ribbon_elements(&h, &r).unwrap();
    assert!(ribbons.contains(&h.algebra().unit().to_vec()));
}

#[test]
fn zero_r_is_not_invertible() {
    let h = build_group_algebra(&Rationals, &cyclic_table(2)).unwrap();
    let rep = verify_quasitriangular(&h, &vec![Rationals.zero(); 4]);
    assert!(rep.failed_checks().iter().any(|c| c == "R invertible"));
}

#[test]
fn doubles_are_factorizable() {
    for (name, rank) in [("D-kZ2", 4), ("D-kZ3", 9)] {
        let (h, r) = preset(name, &Rationals).unwrap();
        let r = r.unwrap();
        let rep = verify_quasitriangular(&h, &r);
        assert!(rep.is_ok(), "{name}: {rep}");
        assert_eq!(verify_factorizable(&h, &r), (true, rank));
        let (u, ui) = drinfeld_element(&h, &r).unwrap();
        assert!(verify_drinfeld_element(&h, &u, &ui).is_ok());
    }
}

#[test]
fn group_algebra_integral() {
    let h = build_group_algebra(&Rationals, &crate::builders::s3_table()).unwrap();
    let (space, conv) = find_right_integrals(&h).unwrap();
    assert_eq!(conv, IntegralConvention::Right);
    assert_eq!(space.basis(), &[vec![(0, Rationals.one())]]);
    assert_eq!(class_functions(&h).dim(), 3);
    let rho = densify(&Rationals, &space.basis()[0], 6);
    assert_eq!(radford_matrix(&h, &rho).rank(), 6);
}

#[test]
fn sweedler_integral_is_one_dimensional() {
    let h = crate::builders::build_sweedler(&Rationals).unwrap();
    let (space, _) = find_right_integrals(&h).unwrap();
    assert_eq!(space.dim(), 1);
}

#[test]
fn grouplikes_of_group_algebra_and_double() {
    let h = build_group_algebra(&Rationals, &cyclic_table(3)).unwrap();
    assert_eq!(grouplikes(&h).unwrap().len(), 3);
    let (d, _) = preset("D-kZ2", &Rationals).unwrap();
    assert_eq!(grouplikes(&d).unwrap().len(), 4);
}

#[test]
fn ribbon_normalize_cases() {
    let f = Rationals;
    let rho = vec![f.from_i64(2), f.zero()];
    let v = vec![f.one(), f.zero()];
    assert_eq!(ribbon_normalize(&f, &rho, &v).unwrap(), vec![f.one(), f.zero()]);
    assert!(ribbon_normalize(&f, &[f.zero(), f.one()], &v).is_err());
}

fn full_pipeline<F: Field>(name: &str, field: &F) {
    let (h, r) = preset(name, field).unwrap();
    let r = r.unwrap();
    let data = RibbonData::compute(&h, &r, None, None).unwrap();
    let tw = data.twist.clone().unwrap();
    assert!(field.is_one(&tw.rho_v));
    let rel = check_center_relations(&h, &data).unwrap();
    assert!(rel.report.is_ok(), "{name}: {} {:?}", rel.report, rel.report.violations.iter().map(|v| (&v.check, &v.lhs, &v.rhs)).collect::<Vec<_>>());
    assert_eq!(rel.s.rank(), h.dim());
    assert_eq!(class_functions(&h).dim(), center_basis(h.algebra()).dim());
    let sinv = rel.sigma_s4.clone().unwrap();
    assert_eq!(sinv, field.mul(&data.omega, &data.omega));
    assert_eq!(rel.sigma_sts.clone().unwrap(), tw.rho_v);
}

#[test]
fn center_relations_on_doubles() {
    full_pipeline("D-kZ2", &Rationals);
    full_pipeline("D-kZ3", &Rationals);
}

#[test]
fn u_is_a_ribbon_element_of_d_kz2() {
    let (h, r) = preset("D-kZ2", &Rationals).unwrap();
    let r = r.unwrap();
    let (u, _) = drinfeld_element(&h, &r).unwrap();
    let q = monodromy(&h, &r);
    assert!(verify_ribbon_element(&h, &q, &u, &u).is_ok());
    assert_eq!(h.algebra().mul(&u, &u), h.algebra().mul(&u, &h.s(&u)));
    assert!(find_ribbon_elements(&h, &r).unwrap().contains(&u));
}

/// Exhaustive search over every central, `S`-fixed element with `eps = 1`.
fn brute_force_ribbon_count(p: u64, flip_r: bool) -> usize {
    let fp = PrimeField::new(p).unwrap();
    let (h, r) = preset("D-sweedler", &fp).unwrap();
    let mut r = r.unwrap();
    let d = h.dim();
    if flip_r {
        let ri = tensor_inverse(&h, &sparsify(&fp, &r)).unwrap().unwrap();
        r = densify(&fp, &flip::<PrimeField>(d, &ri), d * d);
        assert!(verify_quasitriangular(&h, &r).is_ok());
    }
    let q = monodromy(&h, &r);
    let (u, _) = drinfeld_element(&h, &r).unwrap();
    let a = h.algebra();
    let mut blocks: Vec<Matrix<PrimeField>> =
        (0..d).map(|i| a.left_matrix(i).sub(a.right_matrix(i)).unwrap()).collect();
    blocks.push(h.antipode().sub(&Matrix::identity(&fp, d)).unwrap());
    let basis = kernel_basis(&Matrix::vstack(&fp, d, &blocks).unwrap()).basis_dense();
    let mut hits = 0;
    for code in 0..p.pow(basis.len() as u32) {
        let mut c = code;
        let mut v = vec![0u64; d];
        for b in &basis {
            let k = c % p;
            c /= p;
            for t in 0..d {
                v[t] = fp.add(&v[t], &fp.mul(&k, &b[t]));
            }
        }
        if fp.is_one(&h.eps(&v)) && verify_ribbon_element(&h, &q, &u, &v).is_ok() {
            hits += 1;
        }
    }
    hits
}

#[test]
fn sweedler_double_has_no_ribbon_element() {
    for p in [3, 5] {
        assert_eq!(brute_force_ribbon_count(p, false), 0);
        assert_eq!(brute_force_ribbon_count(p, true), 0);
    }
    let f5 = PrimeField::new(5).unwrap();
    let (h, r) = preset("D-sweedler", &f5).unwrap();
    let r = r.unwrap();
    assert!(find_ribbon_elements(&h, &r).unwrap().is_empty());
    let data = RibbonData::compute(&h, &r, None, None).unwrap();
    assert!(data.twist.is_none());
    let rel = check_center_relations(&h, &data).unwrap();
    let failed = rel.report.failed_checks();
    assert_eq!(failed.len(), 3, "{failed:?}");
    assert!(failed.iter().all(|c| c.contains("STS") || c.contains("v") || c.contains("sts")));
}
