//! Per-slot factors of the `Omega`-type isomorphisms and the closed-form
//! assembly of cochain maps given by a Sweedler-leg formula.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::Result;
use crate::hopf::{canonical, BimodulePresentation, Elem, HopfPresentation};
use crate::linalg::{sparsify, Matrix, SparseVec};
use crate::scalar::Field;

/// Which leg of `Delta(a_k)` acts on the value and which is fed to `f`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum SlotKind {
    /// `a_(1) . f(.. a_(2) ..)`
    Ad,
    /// `S(a_(1)) . f(.. a_(2) ..)`
    AdInverse,
    /// `a_(2) . f(.. a_(1) ..)`
    Cad,
    /// `S^{-1}(a_(2)) . f(.. a_(1) ..)`
    CadInverse,
}

/// The factor acting on slot `k` (0-based) of `C^n(A, M)`.
pub(crate) fn slot_factor<F: Field>(
    h: &HopfPresentation<F>,
    module: &BimodulePresentation<F>,
    n: usize,
    k: usize,
    kind: SlotKind,
) -> Matrix<F> {
    let f = h.field();
    let (d, m) = (h.dim(), module.dim());
    let acting: Vec<Matrix<F>> = match kind {
        SlotKind::Ad | SlotKind::Cad => module.left_all().to_vec(),
        SlotKind::AdInverse => (0..d).map(|p| module.left_of(&h.antipode().column(p))).collect(),
        SlotKind::CadInverse => (0..d).map(|p| module.left_of(&h.antipode_inv().column(p))).collect(),
    };
    let low = d.pow((n - 1 - k) as u32);
    let rows: Vec<SparseVec<F::Elem>> = (0..m * d.pow(n as u32))
        .into_par_iter()
        .map(|row| {
            let (j, t) = (row / m, row % m);
            let a = (j / low) % d;
            let (prefix, suffix) = (j / (low * d), j % low);
            let mut out = Vec::new();
            for (pq, c) in h.comult(a) {
                let (p, q) = (pq / d, pq % d);
                let (act, slot) = match kind {
                    SlotKind::Ad | SlotKind::AdInverse => (p, q),
                    SlotKind::Cad | SlotKind::CadInverse => (q, p),
                };
                let jj = (prefix * d + slot) * low + suffix;
                for (s, x) in acting[act].row(t) {
                    out.push((jj * m + s, f.mul(c, x)));
                }
            }
            canonical(f, out)
        })
        .collect();
    Matrix::from_sparse_rows(f, m * d.pow(n as u32), rows)
}

/// `F_0 F_1 ... F_k`, multiplied from the right.
pub(crate) fn chain_product<F: Field>(field: &F, dim: usize, factors: &[Matrix<F>]) -> Result<Matrix<F>> {
    let mut it = factors.iter().rev();
    let Some(last) = it.next() else {
        return Ok(Matrix::identity(field, dim));
    };
    let mut p = last.clone();
    for m in it {
        p = m.mul(&p)?;
    }
    Ok(p)
}

/// `Omega^n = T_1 ... T_n` (ad) or `Omega'^n = T'_1 ... T'_n` (cad), and
/// their inverses `U_n ... U_1`.
pub(crate) fn omega_matrix<F: Field>(
    h: &HopfPresentation<F>,
    module: &BimodulePresentation<F>,
    n: usize,
    kind: SlotKind,
) -> Result<Matrix<F>> {
    let factors: Vec<Matrix<F>> = match kind {
        SlotKind::Ad | SlotKind::Cad => (0..n).map(|k| slot_factor(h, module, n, k, kind)).collect(),
        SlotKind::AdInverse | SlotKind::CadInverse => (0..n).rev().map(|k| slot_factor(h, module, n, k, kind)).collect(),
    };
    chain_product(h.field(), module.dim() * h.dim().pow(n as u32), &factors)
}

/// A closed formula of the shape
/// `F(f)(a_1..a_n) = B(x, y) f(a_{1(l)} .. a_{n(l)})`, where `l` is the
/// `f_leg` of the three-fold coproduct, `x` is the product of the images
/// under `x_map` of the `x_leg` factors (reversed when `x_reverse`), `y` the
/// product of the `y_leg` factors, and `B` is bilinear, given on basis
/// pairs by `blocks[i * d + j]` (`m_out x m_in`).
pub(crate) struct LegFormula<'a, F: Field> {
    pub f_leg: usize,
    pub x_leg: usize,
    pub x_reverse: bool,
    pub x_map: Option<&'a Matrix<F>>,
    pub y_leg: usize,
    pub m_in: usize,
    pub m_out: usize,
    pub blocks: Vec<Matrix<F>>,
}

fn tuple_products<F: Field>(h: &HopfPresentation<F>, n: usize, map: Option<&Matrix<F>>, reverse: bool) -> Vec<SparseVec<F::Elem>> {
    let a = h.algebra();
    let d = h.dim();
    let factor: Vec<Elem<F>> = (0..d).map(|i| map.map_or_else(|| a.basis(i), |m| m.column(i))).collect();
    (0..d.pow(n as u32))
        .map(|k| {
            let mut digits: Vec<usize> = (0..n).map(|s| (k / d.pow((n - 1 - s) as u32)) % d).collect();
            if reverse {
                digits.reverse();
            }
            let mut x = a.unit().to_vec();
            for i in digits {
                x = a.mul(&x, &factor[i]);
            }
            sparsify(h.field(), &x)
        })
        .collect()
}

impl<F: Field> LegFormula<'_, F> {
    pub(crate) fn assemble(&self, h: &HopfPresentation<F>, n: usize) -> Matrix<F> {
        let f = h.field();
        let d = h.dim();
        let dn = d.pow(n as u32);
        let delta3: Vec<Vec<([usize; 3], F::Elem)>> = h
            .iterated_coproduct_basis(3)
            .into_iter()
            .map(|v| v.into_iter().map(|(idx, c)| ([idx / (d * d), (idx / d) % d, idx % d], c)).collect())
            .collect();
        let xs = tuple_products(h, n, self.x_map, self.x_reverse);
        let ys = tuple_products(h, n, None, false);
        let rows: Vec<Vec<SparseVec<F::Elem>>> = (0..dn)
            .into_par_iter()
            .map(|j| {
                // (tuple for f, tuple for x, tuple for y) -> coefficient
                let mut terms: HashMap<(usize, usize, usize), F::Elem> = HashMap::new();
                let mut stack: Vec<(usize, [usize; 3], F::Elem)> = vec![(0, [0; 3], f.one())];
                while let Some((slot, idx, c)) = stack.pop() {
                    if slot == n {
                        let key = (idx[self.f_leg], idx[self.x_leg], idx[self.y_leg]);
                        let e = terms.entry(key).or_insert_with(|| f.zero());
                        f.add_assign(e, &c);
                        continue;
                    }
                    let a = (j / d.pow((n - 1 - slot) as u32)) % d;
                    for (legs, w) in &delta3[a] {
                        let next = [idx[0] * d + legs[0], idx[1] * d + legs[1], idx[2] * d + legs[2]];
                        stack.push((slot + 1, next, f.mul(&c, w)));
                    }
                }
                let mut out: Vec<SparseVec<F::Elem>> = vec![Vec::new(); self.m_out];
                let mut keys: Vec<_> = terms.into_iter().filter(|(_, c)| !f.is_zero(c)).collect();
                keys.sort_by_key(|(k, _)| *k);
                for ((kf, kx, ky), c) in keys {
                    for (i, xi) in &xs[kx] {
                        let cx = f.mul(&c, xi);
                        for (jj, yj) in &ys[ky] {
                            let cxy = f.mul(&cx, yj);
                            let block = &self.blocks[i * d + jj];
                            for (t, row) in out.iter_mut().enumerate() {
                                for (r, b) in block.row(t) {
                                    row.push((kf * self.m_in + r, f.mul(&cxy, b)));
                                }
                            }
                        }
                    }
                }
                out.into_iter().map(|r| canonical(f, r)).collect()
            })
            .collect();
        Matrix::from_sparse_rows(f, self.m_in * dn, rows.into_iter().flatten().collect())
    }
}
