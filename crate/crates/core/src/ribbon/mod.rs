//! Quasitriangular and ribbon structure, integrals, and the Drinfeld,
//! Radford and modular maps on `A` itself.

mod center;
mod grouplike;

pub use center::{check_center_relations, CenterRelations};
pub(crate) use center::{fmt_matrix, scalar_ratio};
pub use grouplike::grouplikes;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hopf::{apply_slotwise, flip, twist_eps_ad, BimodulePresentation, Elem, HopfPresentation, Report};
use crate::linalg::{densify, kernel_basis, solve, sparsify, Matrix, SparseVec, Subspace};
use crate::scalar::Field;

/// Which defining identity the computed integral satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum IntegralConvention {
    /// `rho(a_(1)) a_(2) = rho(a) 1`
    Right,
    /// `a_(1) rho(a_(2)) = rho(a) 1`
    Mirrored,
}

/// Whether a component was read from input or solved for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Source {
    Supplied,
    Solved,
}

fn fmt_vec<F: Field>(f: &F, v: &[F::Elem]) -> String {
    crate::hopf::fmt_dense(f, v)
}

/// Left multiplication by `x` on `A (x) A`, as a `d^2 x d^2` matrix.
fn tensor_left_mult<F: Field>(h: &HopfPresentation<F>, x: &[(usize, F::Elem)]) -> Matrix<F> {
    let a = h.algebra();
    let dd = h.dim() * h.dim();
    let cols: Vec<Vec<F::Elem>> = (0..dd)
        .map(|y| densify(h.field(), &a.tensor_mul(2, x, &[(y, h.field().one())]), dd))
        .collect();
    Matrix::from_columns(h.field(), dd, &cols)
}

/// Inverse of an element of `A (x) A`, if any.
pub fn tensor_inverse<F: Field>(h: &HopfPresentation<F>, x: &[(usize, F::Elem)]) -> Result<Option<SparseVec<F::Elem>>> {
    let a = h.algebra();
    let dd = h.dim() * h.dim();
    let one = a.tensor_unit(2);
    let Some(y) = solve(&tensor_left_mult(h, x), &densify(h.field(), &one, dd))? else {
        return Ok(None);
    };
    let y = sparsify(h.field(), &y);
    Ok((a.tensor_mul(2, &y, x) == one).then_some(y))
}

/// Checks invertibility of `R`, `Delta^cop(a) R = R Delta(a)`,
/// `(Delta (x) id)(R) = R13 R23`, `(id (x) Delta)(R) = R13 R12`,
/// `(S (x) S)(R) = R` and `(S (x) id)(R) = R^{-1}`.
pub fn verify_quasitriangular<F: Field>(h: &HopfPresentation<F>, r: &[F::Elem]) -> Report {
    let f = h.field();
    let a = h.algebra();
    let d = h.dim();
    let mut rep = Report::new("quasitriangular");
    if r.len() != d * d {
        rep.fail("R dimension", &[], || (r.len().to_string(), (d * d).to_string()));
        return rep;
    }
    let rs = sparsify(f, r);
    let fs = |v: &[(usize, F::Elem)]| crate::hopf::fmt_sparse(f, v);
    let r_inv = match tensor_inverse(h, &rs) {
        Ok(Some(x)) => {
            rep.check(true, "R invertible", &[], || unreachable!());
            Some(x)
        }
        _ => {
            rep.fail("R invertible", &[], || (fs(&rs), "an invertible element".into()));
            None
        }
    };
    for i in 0..d {
        let delta = h.comult(i);
        let lhs = a.tensor_mul(2, &flip::<F>(d, delta), &rs);
        let rhs = a.tensor_mul(2, &rs, delta);
        rep.check(lhs == rhs, "Delta^cop(a) R = R Delta(a)", &[i], || (fs(&lhs), fs(&rhs)));
    }
    let unit = sparsify(f, a.unit());
    let mut r13 = Vec::new();
    let mut r12 = Vec::new();
    let mut r23 = Vec::new();
    let mut delta_id = Vec::new();
    let mut id_delta = Vec::new();
    for (ij, c) in &rs {
        let (i, j) = (ij / d, ij % d);
        for (t, u) in &unit {
            let cu = f.mul(c, u);
            r13.push(((i * d + t) * d + j, cu.clone()));
            r12.push(((i * d + j) * d + t, cu.clone()));
            r23.push(((t * d + i) * d + j, cu));
        }
        for (pq, w) in h.comult(i) {
            delta_id.push((pq * d + j, f.mul(c, w)));
        }
        for (pq, w) in h.comult(j) {
            id_delta.push((i * d * d + pq, f.mul(c, w)));
        }
    }
    let canon = |v: Vec<(usize, F::Elem)>| crate::hopf::canonical(f, v);
    let (r13, r12, r23) = (canon(r13), canon(r12), canon(r23));
    let (delta_id, id_delta) = (canon(delta_id), canon(id_delta));
    let rhs = a.tensor_mul(3, &r13, &r23);
    rep.check(delta_id == rhs, "(Delta x id)(R) = R13 R23", &[], || (fs(&delta_id), fs(&rhs)));
    let rhs = a.tensor_mul(3, &r13, &r12);
    rep.check(id_delta == rhs, "(id x Delta)(R) = R13 R12", &[], || (fs(&id_delta), fs(&rhs)));
    let s = h.antipode();
    let id = Matrix::identity(f, d);
    let ss = apply_slotwise(f, d, &[s, s], &rs);
    rep.check(ss == rs, "(S x S)(R) = R", &[], || (fs(&ss), fs(&rs)));
    if let Some(ri) = r_inv {
        let sid = apply_slotwise(f, d, &[s, &id], &rs);
        rep.check(sid == ri, "(S x id)(R) = R^-1", &[], || (fs(&sid), fs(&ri)));
    }
    rep
}

/// `Q = tau(R) R`.
pub fn monodromy<F: Field>(h: &HopfPresentation<F>, r: &[F::Elem]) -> Vec<F::Elem> {
    let d = h.dim();
    let rs = sparsify(h.field(), r);
    let q = h.algebra().tensor_mul(2, &flip::<F>(d, &rs), &rs);
    densify(h.field(), &q, d * d)
}

/// `u = S(R_2) R_1` and its inverse.
pub fn drinfeld_element<F: Field>(h: &HopfPresentation<F>, r: &[F::Elem]) -> Result<(Elem<F>, Elem<F>)> {
    let f = h.field();
    let a = h.algebra();
    let d = h.dim();
    let mut u = a.zero();
    for (ij, c) in r.iter().enumerate() {
        if f.is_zero(c) {
            continue;
        }
        let (i, j) = (ij / d, ij % d);
        let x = a.mul(&h.antipode().column(j), &a.basis(i));
        for (t, v) in x.iter().enumerate() {
            f.mul_add_assign(&mut u[t], c, v);
        }
    }
    let u_inv = a
        .inverse(&u)?
        .ok_or_else(|| Error::Verification("the Drinfeld element is not invertible".into()))?;
    Ok((u, u_inv))
}

/// `u a u^{-1} = S^2(a)` on every basis element.
pub fn verify_drinfeld_element<F: Field>(h: &HopfPresentation<F>, u: &[F::Elem], u_inv: &[F::Elem]) -> Report {
    let f = h.field();
    let a = h.algebra();
    let mut rep = Report::new("drinfeld element");
    for i in 0..h.dim() {
        let e = a.basis(i);
        let lhs = a.mul(&a.mul(u, &e), u_inv);
        let rhs = h.s(&h.s(&e));
        rep.check(lhs == rhs, "u a u^-1 = S^2(a)", &[i], || (fmt_vec(f, &lhs), fmt_vec(f, &rhs)));
    }
    rep
}

/// Matrix of the Drinfeld map `phi -> phi(Q_1) Q_2` from dual coordinates.
pub fn drinfeld_matrix<F: Field>(h: &HopfPresentation<F>, q: &[F::Elem]) -> Matrix<F> {
    let d = h.dim();
    let rows: Vec<Vec<F::Elem>> = (0..d).map(|j| (0..d).map(|i| q[i * d + j].clone()).collect()).collect();
    Matrix::from_dense(h.field(), &rows)
}

pub fn drinfeld_map<F: Field>(h: &HopfPresentation<F>, r: &[F::Elem], phi: &[F::Elem]) -> Elem<F> {
    drinfeld_matrix(h, &monodromy(h, r)).apply(phi)
}

/// Rank of the Drinfeld map; factorizable iff it equals `dim A`.
pub fn verify_factorizable<F: Field>(h: &HopfPresentation<F>, r: &[F::Elem]) -> (bool, usize) {
    let rank = drinfeld_matrix(h, &monodromy(h, r)).rank();
    (rank == h.dim(), rank)
}

/// Generalised class functions `{phi : phi(b S^{-2}(a)) = phi(ab)}`.
pub fn class_functions<F: Field>(h: &HopfPresentation<F>) -> Subspace<F> {
    let f = h.field();
    let a = h.algebra();
    let d = h.dim();
    let s2 = h.s2_inv_matrix();
    let mut rows = Vec::with_capacity(d * d);
    for i in 0..d {
        let si = s2.column(i);
        for j in 0..d {
            let lhs = a.mul(&a.basis(j), &si);
            let rhs = densify(f, a.product(i, j), d);
            let w: Vec<F::Elem> = lhs.iter().zip(&rhs).map(|(x, y)| f.sub(x, y)).collect();
            rows.push(w);
        }
    }
    kernel_basis(&Matrix::from_dense(f, &rows))
}

fn integral_space<F: Field>(h: &HopfPresentation<F>, conv: IntegralConvention) -> Subspace<F> {
    let f = h.field();
    let d = h.dim();
    let unit = h.algebra().unit();
    // one equation per (basis element a, output coordinate k)
    let mut rows: Vec<SparseVec<F::Elem>> = Vec::with_capacity(d * d);
    for a in 0..d {
        let mut eqs: Vec<Vec<(usize, F::Elem)>> = vec![Vec::new(); d];
        for (ij, c) in h.comult(a) {
            let (i, j) = (ij / d, ij % d);
            match conv {
                IntegralConvention::Right => eqs[j].push((i, c.clone())),
                IntegralConvention::Mirrored => eqs[i].push((j, c.clone())),
            }
        }
        for (k, mut eq) in eqs.into_iter().enumerate() {
            if !f.is_zero(&unit[k]) {
                eq.push((a, f.neg(&unit[k])));
            }
            rows.push(eq);
        }
    }
    kernel_basis(&Matrix::from_sparse_rows(f, d, rows))
}

/// Space of right integrals `rho(a_(1)) a_(2) = rho(a) 1`. On unimodular
/// input the result has to lie in the class functions; when it does not,
/// the mirrored identity is tried. Errors unless the space is
/// one-dimensional.
pub fn find_right_integrals<F: Field>(h: &HopfPresentation<F>) -> Result<(Subspace<F>, IntegralConvention)> {
    let cf = class_functions(h);
    let right = integral_space(h, IntegralConvention::Right);
    if right.dim() == 1 && cf.contains(&right.basis()[0]) {
        return Ok((right, IntegralConvention::Right));
    }
    let mirrored = integral_space(h, IntegralConvention::Mirrored);
    if mirrored.dim() == 1 && cf.contains(&mirrored.basis()[0]) {
        return Ok((mirrored, IntegralConvention::Mirrored));
    }
    // not unimodular: no integral is a class function
    if right.dim() == 1 {
        return Ok((right, IntegralConvention::Right));
    }
    Err(Error::Verification(format!("the right integral space has dimension {}, expected 1", right.dim())))
}

/// Matrix of the Radford map `a -> rho(a ?)` into dual coordinates.
pub fn radford_matrix<F: Field>(h: &HopfPresentation<F>, rho: &[F::Elem]) -> Matrix<F> {
    let f = h.field();
    let a = h.algebra();
    let d = h.dim();
    let mut rows = vec![vec![f.zero(); d]; d];
    for s in 0..d {
        for t in 0..d {
            let mut acc = f.zero();
            for (k, c) in a.product(s, t) {
                f.mul_add_assign(&mut acc, c, &rho[*k]);
            }
            rows[t][s] = acc;
        }
    }
    Matrix::from_dense(f, &rows)
}

pub fn radford_map<F: Field>(h: &HopfPresentation<F>, rho: &[F::Elem], a: &[F::Elem]) -> Elem<F> {
    radford_matrix(h, rho).apply(a)
}

/// `rho / rho(v)`.
pub fn ribbon_normalize<F: Field>(f: &F, rho: &[F::Elem], v: &[F::Elem]) -> Result<Elem<F>> {
    let rv = pair(f, rho, v);
    if f.is_zero(&rv) {
        return Err(Error::Verification("rho(v) = 0; the ribbon data is inconsistent".into()));
    }
    let inv = f.inv(&rv)?;
    Ok(rho.iter().map(|x| f.mul(x, &inv)).collect())
}

/// `phi(a)`
pub fn pair<F: Field>(f: &F, phi: &[F::Elem], a: &[F::Elem]) -> F::Elem {
    let mut acc = f.zero();
    for (x, y) in phi.iter().zip(a) {
        f.mul_add_assign(&mut acc, x, y);
    }
    acc
}

/// `(rho (x) rho)(Q)`
pub fn omega<F: Field>(f: &F, d: usize, rho: &[F::Elem], q: &[F::Elem]) -> F::Elem {
    let mut acc = f.zero();
    for (ij, c) in q.iter().enumerate() {
        if !f.is_zero(c) {
            f.mul_add_assign(&mut acc, c, &f.mul(&rho[ij / d], &rho[ij % d]));
        }
    }
    acc
}

/// The five ribbon conditions for `v`: central, `S(v) = v`, `eps(v) = 1`,
/// `v^2 u S(u) = 1` and `Delta(v) = Q (v (x) v)`.
pub fn verify_ribbon_element<F: Field>(
    h: &HopfPresentation<F>,
    q: &[F::Elem],
    u: &[F::Elem],
    v: &[F::Elem],
) -> Report {
    let f = h.field();
    let a = h.algebra();
    let d = h.dim();
    let mut rep = Report::new("ribbon element");
    for i in 0..d {
        let e = a.basis(i);
        let l = a.mul(v, &e);
        let r = a.mul(&e, v);
        rep.check(l == r, "v central", &[i], || (fmt_vec(f, &l), fmt_vec(f, &r)));
    }
    let sv = h.s(v);
    rep.check(sv == v, "S(v) = v", &[], || (fmt_vec(f, &sv), fmt_vec(f, v)));
    let ev = h.eps(v);
    rep.check(f.is_one(&ev), "eps(v) = 1", &[], || (f.format(&ev), "1".into()));
    let lhs = a.mul_all(&[v, v, u, &h.s(u)]);
    rep.check(lhs == a.unit(), "v^2 u S(u) = 1", &[], || (fmt_vec(f, &lhs), fmt_vec(f, a.unit())));
    let vs = sparsify(f, v);
    let lhs = h.coproduct(v);
    let rhs = a.tensor_mul(2, &sparsify(f, q), &crate::hopf::tensor_product(f, d, &vs, &vs));
    rep.check(lhs == rhs, "Delta(v) = Q (v (x) v)", &[], || {
        (crate::hopf::fmt_sparse(f, &lhs), crate::hopf::fmt_sparse(f, &rhs))
    });
    rep
}

/// All ribbon elements, sorted lexicographically by coordinates.
///
/// For a ribbon element `v`, `u v` is grouplike, so every ribbon element is
/// `G u^{-1}` for a grouplike `G`; each such candidate is tested against the
/// five conditions.
pub fn find_ribbon_elements<F: Field>(h: &HopfPresentation<F>, r: &[F::Elem]) -> Result<Vec<Elem<F>>> {
    let f = h.field();
    let a = h.algebra();
    let q = monodromy(h, r);
    let (u, u_inv) = drinfeld_element(h, r)?;
    let mut found: Vec<Elem<F>> = Vec::new();
    for g in grouplikes(h)? {
        let v = a.mul(&g, &u_inv);
        if verify_ribbon_element(h, &q, &u, &v).is_ok() && !found.contains(&v) {
            found.push(v);
        }
    }
    found.sort_by(|x, y| {
        x.iter().zip(y).map(|(p, q)| f.cmp_canonical(p, q)).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(found)
}

/// Matrix of `S o Phi o iota`, cross-checked against the contraction
/// `a -> rho(a Q_1) S(Q_2)`.
pub fn frak_s_matrix<F: Field>(h: &HopfPresentation<F>, q: &[F::Elem], rho: &[F::Elem]) -> Result<Matrix<F>> {
    let f = h.field();
    let a = h.algebra();
    let d = h.dim();
    let composite = Matrix::chain(&[h.antipode(), &drinfeld_matrix(h, q), &radford_matrix(h, rho)])?;
    let mut cols = Vec::with_capacity(d);
    for s in 0..d {
        let mut col = a.zero();
        for (ij, c) in q.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            let (i, j) = (ij / d, ij % d);
            let mut w = f.zero();
            for (k, x) in a.product(s, i) {
                f.mul_add_assign(&mut w, x, &rho[*k]);
            }
            if f.is_zero(&w) {
                continue;
            }
            let cw = f.mul(c, &w);
            for (t, y) in h.antipode().column(j).iter().enumerate() {
                f.mul_add_assign(&mut col[t], &cw, y);
            }
        }
        cols.push(col);
    }
    let explicit = Matrix::from_columns(f, d, &cols);
    if let Some(column) = composite.first_differing_column(&explicit) {
        return Err(Error::InternalMismatch { what: "S-map composite and contraction".into(), degree: 0, column });
    }
    Ok(explicit)
}

pub fn frak_s<F: Field>(h: &HopfPresentation<F>, q: &[F::Elem], rho: &[F::Elem], a: &[F::Elem]) -> Result<Elem<F>> {
    Ok(frak_s_matrix(h, q, rho)?.apply(a))
}

/// Left multiplication by `v`.
pub fn frak_t_matrix<F: Field>(h: &HopfPresentation<F>, v: &[F::Elem]) -> Matrix<F> {
    h.algebra().left_mult(v)
}

pub fn frak_t<F: Field>(h: &HopfPresentation<F>, v: &[F::Elem], a: &[F::Elem]) -> Elem<F> {
    h.algebra().mul(v, a)
}

/// The transmutation antipode, evaluated as
/// `S(S(R_1(1)) a R_1(2)) R_2` and as `R_1 S(a) S(R_2) S(u^{-1})`; the two
/// must agree.
pub fn transmutation_antipode<F: Field>(h: &HopfPresentation<F>, r: &[F::Elem], u_inv: &[F::Elem]) -> Result<Matrix<F>> {
    let f = h.field();
    let alg = h.algebra();
    let d = h.dim();
    let s_uinv = h.s(u_inv);
    let mut first = Vec::with_capacity(d);
    let mut second = Vec::with_capacity(d);
    for s in 0..d {
        let e = alg.basis(s);
        let se = h.s(&e);
        let mut x1 = alg.zero();
        let mut x2 = alg.zero();
        for (ij, c) in r.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            let (i, j) = (ij / d, ij % d);
            let ej = alg.basis(j);
            for (kl, w) in h.comult(i) {
                let (k, l) = (kl / d, kl % d);
                let inner = alg.mul_all(&[&h.s(&alg.basis(k)), &e, &alg.basis(l)]);
                let y = alg.mul(&h.s(&inner), &ej);
                let cw = f.mul(c, w);
                for (t, z) in y.iter().enumerate() {
                    f.mul_add_assign(&mut x1[t], &cw, z);
                }
            }
            let y = alg.mul_all(&[&alg.basis(i), &se, &h.s(&ej), &s_uinv]);
            for (t, z) in y.iter().enumerate() {
                f.mul_add_assign(&mut x2[t], c, z);
            }
        }
        first.push(x1);
        second.push(x2);
    }
    let m1 = Matrix::from_columns(f, d, &first);
    let m2 = Matrix::from_columns(f, d, &second);
    if let Some(column) = m1.first_differing_column(&m2) {
        return Err(Error::InternalMismatch { what: "transmutation antipode formulas".into(), degree: 0, column });
    }
    Ok(m1)
}

/// Matrix of `a -> ad(a (x) x) = S(x_(1)) a x_(2)`.
pub fn adjoint_matrix<F: Field>(h: &HopfPresentation<F>, x: &[F::Elem]) -> Matrix<F> {
    twist_eps_ad(h, &BimodulePresentation::regular(h.algebra())).right_of(x)
}

/// A ribbon element together with the scalars it determines.
#[derive(Clone, Debug)]
pub struct Twist<F: Field> {
    pub v: Vec<F::Elem>,
    pub v_inv: Vec<F::Elem>,
    pub rho_v: F::Elem,
    pub rho_vinv: F::Elem,
    pub source: Source,
}

/// Everything the modular constructions need about a factorizable
/// quasitriangular Hopf algebra. `twist` is `None` when no ribbon element
/// exists; the maps that do not involve `v` remain available.
#[derive(Clone, Debug)]
pub struct RibbonData<F: Field> {
    pub r: Vec<F::Elem>,
    pub q: Vec<F::Elem>,
    pub u: Vec<F::Elem>,
    pub u_inv: Vec<F::Elem>,
    pub rho: Vec<F::Elem>,
    pub omega: F::Elem,
    pub convention: IntegralConvention,
    pub rho_source: Source,
    pub ribbon_candidates: usize,
    pub twist: Option<Twist<F>>,
}

impl<F: Field> RibbonData<F> {
    /// Solves for whatever is not supplied. A solved `rho` is ribbon
    /// normalised when a ribbon element exists; a supplied one is checked to
    /// be an integral and kept.
    pub fn compute(
        h: &HopfPresentation<F>,
        r: &[F::Elem],
        v: Option<&[F::Elem]>,
        rho: Option<&[F::Elem]>,
    ) -> Result<Self> {
        let f = h.field();
        let d = h.dim();
        let qt = verify_quasitriangular(h, r);
        if !qt.is_ok() {
            return Err(Error::Verification(qt.to_string()));
        }
        let (fact, rank) = verify_factorizable(h, r);
        if !fact {
            return Err(Error::Verification(format!("not factorizable: Drinfeld map has rank {rank} < {d}")));
        }
        let q = monodromy(h, r);
        let (u, u_inv) = drinfeld_element(h, r)?;
        let (v, v_source, ribbon_candidates) = match v {
            Some(v) => {
                let rep = verify_ribbon_element(h, &q, &u, v);
                if !rep.is_ok() {
                    return Err(Error::Verification(rep.to_string()));
                }
                (Some(v.to_vec()), Source::Supplied, 1)
            }
            None => {
                let all = find_ribbon_elements(h, r)?;
                (all.first().cloned(), Source::Solved, all.len())
            }
        };
        let (space, convention) = find_right_integrals(h)?;
        let (rho, rho_source) = match rho {
            Some(p) => {
                if !space.contains(&sparsify(f, p)) || p.iter().all(|x| f.is_zero(x)) {
                    return Err(Error::Verification("supplied rho is not a nonzero right integral".into()));
                }
                (p.to_vec(), Source::Supplied)
            }
            None => {
                let base = densify(f, &space.basis()[0], d);
                match &v {
                    Some(v) => (ribbon_normalize(f, &base, v)?, Source::Solved),
                    None => (base, Source::Solved),
                }
            }
        };
        let twist = match v {
            Some(v) => {
                let v_inv = h
                    .algebra()
                    .inverse(&v)?
                    .ok_or_else(|| Error::Verification("ribbon element is not invertible".into()))?;
                let rho_v = pair(f, &rho, &v);
                if f.is_zero(&rho_v) {
                    return Err(Error::Verification("rho(v) = 0".into()));
                }
                let rho_vinv = pair(f, &rho, &v_inv);
                Some(Twist { v, v_inv, rho_v, rho_vinv, source: v_source })
            }
            None => None,
        };
        let omega = omega(f, d, &rho, &q);
        Ok(RibbonData { r: r.to_vec(), q, u, u_inv, rho, omega, convention, rho_source, ribbon_candidates, twist })
    }
}

#[cfg(test)]
mod tests;
