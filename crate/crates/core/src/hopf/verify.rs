use super::{AlgebraPresentation, BimodulePresentation, HopfPresentation, Report};
use crate::linalg::{kernel_basis, sparsify, Matrix, SparseVec, Subspace};
use crate::scalar::Field;

pub(crate) fn fmt_dense<F: Field>(f: &F, v: &[F::Elem]) -> String {
    let parts: Vec<String> = v.iter().map(|x| f.format(x)).collect();
    format!("[{}]", parts.join(", "))
}

pub(crate) fn fmt_sparse<F: Field>(f: &F, v: &[(usize, F::Elem)]) -> String {
    if v.is_empty() {
        return "0".into();
    }
    let parts: Vec<String> = v.iter().map(|(j, x)| format!("{}*e{}", f.format(x), j)).collect();
    parts.join(" + ")
}

/// Associativity on all basis triples and both unit laws.
pub fn verify_algebra<F: Field>(a: &AlgebraPresentation<F>) -> Report {
    let f = a.field();
    let d = a.dim();
    let mut rep = Report::new("algebra");
    for i in 0..d {
        for j in 0..d {
            let ij = a.product(i, j);
            for k in 0..d {
                let lhs = right_times(a, ij, k);
                let rhs = left_times(a, i, a.product(j, k));
                rep.check(lhs == rhs, "associativity", &[i, j, k], || {
                    (fmt_sparse(f, &lhs), fmt_sparse(f, &rhs))
                });
            }
        }
    }
    for i in 0..d {
        let e = a.basis(i);
        let l = a.mul(a.unit(), &e);
        rep.check(l == e, "left unit", &[i], || (fmt_dense(f, &l), fmt_dense(f, &e)));
        let r = a.mul(&e, a.unit());
        rep.check(r == e, "right unit", &[i], || (fmt_dense(f, &r), fmt_dense(f, &e)));
    }
    rep
}

/// `x e_k` for sparse `x`
fn right_times<F: Field>(a: &AlgebraPresentation<F>, x: &[(usize, F::Elem)], k: usize) -> SparseVec<F::Elem> {
    let f = a.field();
    let mut out = a.zero();
    for (l, c) in x {
        for (t, v) in a.product(*l, k) {
            f.mul_add_assign(&mut out[*t], c, v);
        }
    }
    sparsify(f, &out)
}

/// `e_i x` for sparse `x`
fn left_times<F: Field>(a: &AlgebraPresentation<F>, i: usize, x: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
    let f = a.field();
    let mut out = a.zero();
    for (l, c) in x {
        for (t, v) in a.product(i, *l) {
            f.mul_add_assign(&mut out[*t], c, v);
        }
    }
    sparsify(f, &out)
}

/// Unitality, associativity of both actions and their commutation.
pub fn verify_bimodule<F: Field>(a: &AlgebraPresentation<F>, m: &BimodulePresentation<F>) -> Report {
    let f = a.field();
    let d = a.dim();
    let mut rep = Report::new("bimodule");
    if m.algebra_dim() != d {
        rep.fail("action count", &[], || (m.algebra_dim().to_string(), d.to_string()));
        return rep;
    }
    let id = Matrix::identity(f, m.dim());
    let lu = m.left_of(a.unit());
    rep.check(lu == id, "left unit", &[], || (format!("{lu:?}"), "identity".into()));
    let ru = m.right_of(a.unit());
    rep.check(ru == id, "right unit", &[], || (format!("{ru:?}"), "identity".into()));
    for i in 0..d {
        for j in 0..d {
            let prod = crate::linalg::densify(f, a.product(i, j), d);
            let lhs = m.left_of(&prod);
            let rhs = m.left(i).mul(m.left(j)).expect("square");
            rep.check(lhs == rhs, "left associativity", &[i, j], || (format!("{lhs:?}"), format!("{rhs:?}")));
            let lhs = m.right_of(&prod);
            let rhs = m.right(j).mul(m.right(i)).expect("square");
            rep.check(lhs == rhs, "right associativity", &[i, j], || (format!("{lhs:?}"), format!("{rhs:?}")));
            let lr = m.left(i).mul(m.right(j)).expect("square");
            let rl = m.right(j).mul(m.left(i)).expect("square");
            rep.check(lr == rl, "actions commute", &[i, j], || (format!("{lr:?}"), format!("{rl:?}")));
        }
    }
    rep
}

/// Coassociativity, counit laws, multiplicativity of `Delta` and `eps`, the
/// antipode axioms and invertibility of `S`, on all basis elements.
pub fn verify_hopf<F: Field>(h: &HopfPresentation<F>) -> Report {
    let a = h.algebra();
    let f = a.field();
    let d = a.dim();
    let mut rep = verify_algebra(a);
    rep.name = "hopf".into();
    let id = Matrix::identity(f, d);

    let left3 = h.iterated_coproduct_basis(3);
    let right3 = h.iterated_coproduct_basis_right(3);
    for i in 0..d {
        rep.check(left3[i] == right3[i], "coassociativity", &[i], || {
            (fmt_sparse(f, &left3[i]), fmt_sparse(f, &right3[i]))
        });
        let e = vec![(i, f.one())];
        let l = counit_contract(f, d, h.counit(), h.comult(i), true);
        rep.check(l == e, "left counit", &[i], || (fmt_sparse(f, &l), fmt_sparse(f, &e)));
        let r = counit_contract(f, d, h.counit(), h.comult(i), false);
        rep.check(r == e, "right counit", &[i], || (fmt_sparse(f, &r), fmt_sparse(f, &e)));
    }

    let one_one = a.tensor_unit(2);
    let du = h.coproduct(a.unit());
    rep.check(du == one_one, "coproduct of unit", &[], || (fmt_sparse(f, &du), fmt_sparse(f, &one_one)));
    let eu = h.eps(a.unit());
    rep.check(f.is_one(&eu), "counit of unit", &[], || (f.format(&eu), "1".into()));
    for i in 0..d {
        for j in 0..d {
            let prod = crate::linalg::densify(f, a.product(i, j), d);
            let lhs = h.coproduct(&prod);
            let rhs = a.tensor_mul(2, h.comult(i), h.comult(j));
            rep.check(lhs == rhs, "coproduct multiplicative", &[i, j], || {
                (fmt_sparse(f, &lhs), fmt_sparse(f, &rhs))
            });
            let el = h.eps(&prod);
            let er = f.mul(&h.counit()[i], &h.counit()[j]);
            rep.check(el == er, "counit multiplicative", &[i, j], || (f.format(&el), f.format(&er)));
        }
    }

    for i in 0..d {
        let mut l = a.zero();
        let mut r = a.zero();
        for (jk, c) in h.comult(i) {
            let (j, k) = (jk / d, jk % d);
            let sj = h.s(&a.basis(j));
            let sk = h.s(&a.basis(k));
            let x = a.mul(&sj, &a.basis(k));
            let y = a.mul(&a.basis(j), &sk);
            for t in 0..d {
                f.mul_add_assign(&mut l[t], c, &x[t]);
                f.mul_add_assign(&mut r[t], c, &y[t]);
            }
        }
        let expect: Vec<F::Elem> = a.unit().iter().map(|u| f.mul(u, &h.counit()[i])).collect();
        rep.check(l == expect, "antipode S(a1)a2 = eps(a)1", &[i], || (fmt_dense(f, &l), fmt_dense(f, &expect)));
        rep.check(r == expect, "antipode a1S(a2) = eps(a)1", &[i], || (fmt_dense(f, &r), fmt_dense(f, &expect)));
    }
    let si = h.antipode().mul(h.antipode_inv()).expect("square");
    rep.check(si == id, "antipode invertible", &[], || (format!("{si:?}"), "identity".into()));
    rep
}

/// `(eps (x) id)(x)` when `eps_first`, else `(id (x) eps)(x)`.
fn counit_contract<F: Field>(f: &F, d: usize, counit: &[F::Elem], x: &[(usize, F::Elem)], eps_first: bool) -> SparseVec<F::Elem> {
    let mut out = vec![f.zero(); d];
    for (jk, c) in x {
        let (j, k) = (jk / d, jk % d);
        let (e, slot) = if eps_first { (&counit[j], k) } else { (&counit[k], j) };
        f.mul_add_assign(&mut out[slot], c, e);
    }
    sparsify(f, &out)
}

/// Centre of the algebra: the joint kernel of `z -> e_i z - z e_i`.
pub fn center_basis<F: Field>(a: &AlgebraPresentation<F>) -> Subspace<F> {
    let f = a.field();
    let d = a.dim();
    let blocks: Vec<Matrix<F>> = (0..d)
        .map(|i| a.left_matrix(i).sub(a.right_matrix(i)).expect("same shape"))
        .collect();
    let stacked = Matrix::vstack(f, d, &blocks).expect("same width");
    kernel_basis(&stacked)
}

