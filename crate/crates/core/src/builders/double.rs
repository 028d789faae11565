use crate::error::{Error, Result};
use crate::hopf::{canonical, AlgebraPresentation, HopfPresentation};
use crate::linalg::{Matrix, SparseVec};
use crate::scalar::Field;

/// Largest `dim(H)^2` accepted for a double.
const DOUBLE_CAP: usize = 1024;

/// The Drinfeld double `D(H) = H^{*cop} |><| H` on the basis
/// `phi_i |><| e_j` (index `i * d + j`, `phi` the dual basis), with
///
/// * `(f |><| a)(g |><| b) = f g(S^{-1}(a_(3)) ? a_(1)) |><| a_(2) b`
/// * `Delta(f |><| a) = (f_(2) |><| a_(1)) (x) (f_(1) |><| a_(2))`
/// * `S(f |><| a) = (eps |><| S(a)) (f o S^{-1} |><| 1)`
/// * `R = sum_i (eps |><| e_i) (x) (phi_i |><| 1)`.
///
/// Returns the double and its R-matrix over the `dim(D)^2` tensor basis.
pub fn build_drinfeld_double<F: Field>(h: &HopfPresentation<F>) -> Result<(HopfPresentation<F>, Vec<F::Elem>)> {
    let f = h.field().clone();
    let a = h.algebra();
    let d = h.dim();
    let dd = d * d;
    if dd > DOUBLE_CAP {
        return Err(Error::ResourceCap { what: "Drinfeld double".into(), required: dd as u128, cap: DOUBLE_CAP as u128 });
    }
    let delta3 = h.iterated_coproduct_basis(3);
    let s_inv = h.antipode_inv();
    let idx = |i: usize, j: usize| i * d + j;

    // dual product: (phi_i phi_b)_t = Delta(e_t)[i, b]
    let dual_mul = |i: usize, g: &[F::Elem]| -> Vec<F::Elem> {
        (0..d)
            .map(|t| {
                let mut acc = f.zero();
                for (ab, c) in h.comult(t) {
                    if ab / d == i && !f.is_zero(&g[ab % d]) {
                        f.mul_add_assign(&mut acc, c, &g[ab % d]);
                    }
                }
                acc
            })
            .collect()
    };

    // (phi_i |><| e_j)(phi_k |><| e_l)
    let product = |i: usize, j: usize, k: usize, l: usize| -> SparseVec<F::Elem> {
        let mut out: SparseVec<F::Elem> = Vec::new();
        for (pqs, c) in &delta3[j] {
            let (p, q, s) = (pqs / dd, (pqs / d) % d, pqs % d);
            let sinv_s = s_inv.column(s);
            // g'(x) = phi_k(S^{-1}(e_s) x e_p)
            let gprime: Vec<F::Elem> = (0..d)
                .map(|t| {
                    let y = a.mul(&a.mul(&sinv_s, &a.basis(t)), &a.basis(p));
                    y[k].clone()
                })
                .collect();
            if gprime.iter().all(|x| f.is_zero(x)) {
                continue;
            }
            let fg = dual_mul(i, &gprime);
            for (u, cu) in a.product(q, l) {
                for (t, ct) in fg.iter().enumerate() {
                    if !f.is_zero(ct) {
                        out.push((idx(t, *u), f.mul(c, &f.mul(ct, cu))));
                    }
                }
            }
        }
        canonical(&f, out)
    };

    let mut table: Vec<SparseVec<F::Elem>> = Vec::with_capacity(dd * dd);
    for x in 0..dd {
        for y in 0..dd {
            table.push(product(x / d, x % d, y / d, y % d));
        }
    }
    let mut unit = vec![f.zero(); dd];
    for i in 0..d {
        for j in 0..d {
            unit[idx(i, j)] = f.mul(&h.counit()[i], &a.unit()[j]);
        }
    }
    let alg = AlgebraPresentation::from_table(&f, dd, table, unit)?;

    // Delta(phi_i) = sum m_ab^i phi_a (x) phi_b where e_a e_b contains m_ab^i e_i
    let mut comult: Vec<SparseVec<F::Elem>> = vec![Vec::new(); dd];
    for aa in 0..d {
        for bb in 0..d {
            for (i, m) in a.product(aa, bb) {
                for j in 0..d {
                    for (pq, c) in h.comult(j) {
                        let (p, q) = (pq / d, pq % d);
                        let left = idx(bb, p);
                        let right = idx(aa, q);
                        comult[idx(*i, j)].push((left * dd + right, f.mul(m, c)));
                    }
                }
            }
        }
    }
    let comult: Vec<SparseVec<F::Elem>> = comult.into_iter().map(|v| canonical(&f, v)).collect();

    let mut counit = vec![f.zero(); dd];
    for i in 0..d {
        for j in 0..d {
            counit[idx(i, j)] = f.mul(&a.unit()[i], &h.counit()[j]);
        }
    }

    // S(phi_i |><| e_j) = (eps |><| S(e_j)) (phi_i o S^{-1} |><| 1)
    let eps_tensor = |x: &[F::Elem]| -> Vec<F::Elem> {
        let mut v = vec![f.zero(); dd];
        for i in 0..d {
            for j in 0..d {
                v[idx(i, j)] = f.mul(&h.counit()[i], &x[j]);
            }
        }
        v
    };
    let tensor_one = |phi: &[F::Elem]| -> Vec<F::Elem> {
        let mut v = vec![f.zero(); dd];
        for i in 0..d {
            for j in 0..d {
                v[idx(i, j)] = f.mul(&phi[i], &a.unit()[j]);
            }
        }
        v
    };
    let mut cols: Vec<Vec<F::Elem>> = Vec::with_capacity(dd);
    for i in 0..d {
        let phi_sinv: Vec<F::Elem> = (0..d).map(|t| s_inv.get(i, t)).collect();
        let right = tensor_one(&phi_sinv);
        for j in 0..d {
            let left = eps_tensor(&h.antipode().column(j));
            cols.push(alg.mul(&left, &right));
        }
    }
    let antipode = Matrix::from_columns(&f, dd, &cols);
    let double = HopfPresentation::from_parts(alg, comult, counit, antipode)?;

    let mut r = vec![f.zero(); dd * dd];
    for i in 0..d {
        let left = eps_tensor(&a.basis(i));
        let right = tensor_one(&a.basis(i));
        for (x, cx) in left.iter().enumerate() {
            if f.is_zero(cx) {
                continue;
            }
            for (y, cy) in right.iter().enumerate() {
                if !f.is_zero(cy) {
                    f.mul_add_assign(&mut r[x * dd + y], cx, cy);
                }
            }
        }
    }
    Ok((double, r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{build_sweedler, preset};
    use crate::hopf::{center_basis, verify_hopf};
    use crate::scalar::Rationals;

    #[test]
    fn doubles_are_hopf_algebras() {
        for name in ["D-kZ2", "D-kZ3"] {
            let (h, _) = preset(name, &Rationals).unwrap();
            let rep = verify_hopf(&h);
            assert!(rep.is_ok(), "{name}: {rep}");
        }
    }

    #[test]
    fn double_of_abelian_group_is_commutative() {
        let (h, _) = preset("D-kZ2", &Rationals).unwrap();
        assert!(h.algebra().is_commutative());
        assert_eq!(center_basis(h.algebra()).dim(), 4);
        let (h3, _) = preset("D-kZ3", &Rationals).unwrap();
        assert!(h3.algebra().is_commutative());
    }

    #[test]
    fn double_of_sweedler() {
        let s = build_sweedler(&Rationals).unwrap();
        let (d, _) = build_drinfeld_double(&s).unwrap();
        assert_eq!(d.dim(), 16);
        let rep = verify_hopf(&d);
        assert!(rep.is_ok(), "{rep}");
    }
}
