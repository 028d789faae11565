use super::{BimodulePresentation, HopfPresentation};
use crate::linalg::Matrix;
use crate::scalar::Field;

/// `M^*` with `(a.phi.b)(m) = phi(b.m.a)` in dual-basis coordinates: the left
/// action of `a` is the transpose of the right action of `a` on `M`, and
/// vice versa.
pub fn dual_bimodule<F: Field>(m: &BimodulePresentation<F>) -> BimodulePresentation<F> {
    let left = m.right_all().iter().map(|x| x.transpose()).collect();
    let right = m.left_all().iter().map(|x| x.transpose()).collect();
    BimodulePresentation::new(m.field(), m.dim(), left, right).expect("shapes preserved")
}

/// `A_{S^{-2}}`: `A` with left multiplication and right action
/// `b.a = b S^{-2}(a)`.
pub fn twist_s2inv<F: Field>(h: &HopfPresentation<F>) -> BimodulePresentation<F> {
    let a = h.algebra();
    let s2 = h.s2_inv_matrix();
    let d = a.dim();
    let left = (0..d).map(|i| a.left_matrix(i).clone()).collect();
    let right = (0..d).map(|i| a.right_mult(&s2.column(i))).collect();
    BimodulePresentation::new(a.field(), d, left, right).expect("shapes")
}

fn eps_left<F: Field>(h: &HopfPresentation<F>, m: usize) -> Vec<Matrix<F>> {
    h.counit().iter().map(|e| Matrix::scalar(h.field(), m, e)).collect()
}

/// `^eps(M_ad)`: trivial left action through the counit, right adjoint
/// action `m.a = S(a_(1)).m.a_(2)`.
pub fn twist_eps_ad<F: Field>(h: &HopfPresentation<F>, m: &BimodulePresentation<F>) -> BimodulePresentation<F> {
    let f = h.field();
    let d = h.dim();
    let s = h.antipode();
    let right = (0..d)
        .map(|i| {
            let terms: Vec<(F::Elem, Matrix<F>)> = h
                .comult(i)
                .iter()
                .map(|(jk, c)| {
                    let (j, k) = (jk / d, jk % d);
                    let l = m.left_of(&s.column(j));
                    (c.clone(), m.right(k).mul(&l).expect("square"))
                })
                .collect();
            Matrix::linear_combination(f, m.dim(), m.dim(), terms.iter().map(|(c, x)| (c, x)))
        })
        .collect();
    BimodulePresentation::new(f, m.dim(), eps_left(h, m.dim()), right).expect("shapes")
}

/// `^eps(M_cad)`: trivial left action, right action
/// `m.a = S^{-1}(a_(2)).m.a_(1)`.
pub fn twist_eps_cad<F: Field>(h: &HopfPresentation<F>, m: &BimodulePresentation<F>) -> BimodulePresentation<F> {
    let f = h.field();
    let d = h.dim();
    let s_inv = h.antipode_inv();
    let right = (0..d)
        .map(|i| {
            let terms: Vec<(F::Elem, Matrix<F>)> = h
                .comult(i)
                .iter()
                .map(|(jk, c)| {
                    let (j, k) = (jk / d, jk % d);
                    let l = m.left_of(&s_inv.column(k));
                    (c.clone(), m.right(j).mul(&l).expect("square"))
                })
                .collect();
            Matrix::linear_combination(f, m.dim(), m.dim(), terms.iter().map(|(c, x)| (c, x)))
        })
        .collect();
    BimodulePresentation::new(f, m.dim(), eps_left(h, m.dim()), right).expect("shapes")
}

/// Matrix of `phi -> coad(phi (x) e_a)` on dual coordinates, where
/// `coad(phi (x) a)(x) = phi(a_(2) x S^{-1}(a_(1)))`.
pub fn coadjoint_action_matrix<F: Field>(h: &HopfPresentation<F>, a: usize) -> Matrix<F> {
    let alg = h.algebra();
    let f = h.field();
    let d = h.dim();
    // entry (r, s) = coefficient of e_s in a_(2) e_r S^{-1}(a_(1))
    let mut dense = vec![vec![f.zero(); d]; d];
    for (jk, c) in h.comult(a) {
        let (j, k) = (jk / d, jk % d);
        let sj = h.s_inv(&alg.basis(j));
        for (r, row) in dense.iter_mut().enumerate() {
            let x = alg.mul(&alg.mul(&alg.basis(k), &alg.basis(r)), &sj);
            for (s, v) in x.iter().enumerate() {
                if !f.is_zero(v) {
                    f.mul_add_assign(&mut row[s], c, v);
                }
            }
        }
    }
    Matrix::from_dense(f, &dense)
}
