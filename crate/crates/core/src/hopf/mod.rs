//! Algebras, bimodules and Hopf algebras given by structure constants.
//!
//! Elements of `A` are dense coordinate vectors of length `d`. Elements of
//! `A^{(x)k}` are sparse vectors over the row-major tensor index.

mod report;
mod twist;
mod verify;

pub use report::{Report, Violation};
pub use twist::{coadjoint_action_matrix, dual_bimodule, twist_eps_ad, twist_eps_cad, twist_s2inv};
pub use verify::{center_basis, verify_algebra, verify_bimodule, verify_hopf};
pub(crate) use verify::{fmt_dense, fmt_sparse};

use crate::error::{Error, Result};
use crate::linalg::{tensor_unflatten, Accumulator, Matrix, SparseVec, Subspace};
use crate::scalar::Field;

/// Dense coordinates of an element of a `d`-dimensional algebra.
pub type Elem<F> = Vec<<F as Field>::Elem>;

#[derive(Clone)]
pub struct AlgebraPresentation<F: Field> {
    field: F,
    dim: usize,
    /// `e_i e_j` at position `i * dim + j`
    table: Vec<SparseVec<F::Elem>>,
    unit: Vec<F::Elem>,
    left: Vec<Matrix<F>>,
    right: Vec<Matrix<F>>,
}

impl<F: Field> PartialEq for AlgebraPresentation<F> {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.table == other.table && self.unit == other.unit
    }
}

impl<F: Field> std::fmt::Debug for AlgebraPresentation<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "AlgebraPresentation(dim {} over {})", self.dim, self.field.spec())
    }
}

impl<F: Field> AlgebraPresentation<F> {
    /// Builds from quadruples `(i, j, k, c)` meaning `e_i e_j` contains
    /// `c e_k`; repeated quadruples add up.
    pub fn new(
        field: &F,
        dim: usize,
        mult: impl IntoIterator<Item = (usize, usize, usize, F::Elem)>,
        unit: Vec<F::Elem>,
    ) -> Result<Self> {
        let mut raw: Vec<SparseVec<F::Elem>> = vec![Vec::new(); dim * dim];
        for (i, j, k, c) in mult {
            for idx in [i, j, k] {
                if idx >= dim {
                    return Err(Error::IndexOutOfRange { index: idx, bound: dim });
                }
            }
            raw[i * dim + j].push((k, c));
        }
        let table = raw.into_iter().map(|v| canonical(field, v)).collect();
        Self::from_table(field, dim, table, unit)
    }

    pub(crate) fn from_table(
        field: &F,
        dim: usize,
        table: Vec<SparseVec<F::Elem>>,
        unit: Vec<F::Elem>,
    ) -> Result<Self> {
        if unit.len() != dim || table.len() != dim * dim {
            return Err(Error::DimensionMismatch(format!(
                "algebra of dimension {dim}: unit has length {}",
                unit.len()
            )));
        }
        let mut left = Vec::with_capacity(dim);
        let mut right = Vec::with_capacity(dim);
        for i in 0..dim {
            let mut lrows: Vec<SparseVec<F::Elem>> = vec![Vec::new(); dim];
            let mut rrows: Vec<SparseVec<F::Elem>> = vec![Vec::new(); dim];
            for j in 0..dim {
                for (k, c) in &table[i * dim + j] {
                    lrows[*k].push((j, c.clone()));
                }
                for (k, c) in &table[j * dim + i] {
                    rrows[*k].push((j, c.clone()));
                }
            }
            left.push(Matrix::from_sparse_rows(field, dim, lrows));
            right.push(Matrix::from_sparse_rows(field, dim, rrows));
        }
        Ok(AlgebraPresentation { field: field.clone(), dim, table, unit, left, right })
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn unit(&self) -> &[F::Elem] {
        &self.unit
    }

    pub fn basis(&self, i: usize) -> Elem<F> {
        let mut v = vec![self.field.zero(); self.dim];
        v[i] = self.field.one();
        v
    }

    pub fn zero(&self) -> Elem<F> {
        vec![self.field.zero(); self.dim]
    }

    /// `e_i e_j`
    pub fn product(&self, i: usize, j: usize) -> &[(usize, F::Elem)] {
        &self.table[i * self.dim + j]
    }

    pub fn mul(&self, a: &[F::Elem], b: &[F::Elem]) -> Elem<F> {
        let f = &self.field;
        let mut out = self.zero();
        for (i, x) in a.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if f.is_zero(y) {
                    continue;
                }
                let c = f.mul(x, y);
                for (k, v) in self.product(i, j) {
                    f.mul_add_assign(&mut out[*k], &c, v);
                }
            }
        }
        out
    }

    /// Product of several elements, left to right.
    pub fn mul_all(&self, xs: &[&[F::Elem]]) -> Elem<F> {
        xs.iter().fold(self.unit.clone(), |acc, x| self.mul(&acc, x))
    }

    /// Matrix of `x -> e_i x`.
    pub fn left_matrix(&self, i: usize) -> &Matrix<F> {
        &self.left[i]
    }

    /// Matrix of `x -> x e_i`.
    pub fn right_matrix(&self, i: usize) -> &Matrix<F> {
        &self.right[i]
    }

    pub fn left_mult(&self, a: &[F::Elem]) -> Matrix<F> {
        Matrix::linear_combination(&self.field, self.dim, self.dim, a.iter().zip(&self.left))
    }

    pub fn right_mult(&self, a: &[F::Elem]) -> Matrix<F> {
        Matrix::linear_combination(&self.field, self.dim, self.dim, a.iter().zip(&self.right))
    }

    /// Nonzero structure constants in `(i, j, k)` order.
    pub fn mult_entries(&self) -> Vec<(usize, usize, usize, F::Elem)> {
        let d = self.dim;
        let mut out = Vec::new();
        for (ij, v) in self.table.iter().enumerate() {
            for (k, c) in v {
                out.push((ij / d, ij % d, *k, c.clone()));
            }
        }
        out
    }

    pub fn is_commutative(&self) -> bool {
        let d = self.dim;
        (0..d).all(|i| (i..d).all(|j| self.product(i, j) == self.product(j, i)))
    }

    /// Inverse of `a`, solving `a x = 1`; `None` if `a` is not invertible.
    pub fn inverse(&self, a: &[F::Elem]) -> Result<Option<Elem<F>>> {
        let Some(x) = crate::linalg::solve(&self.left_mult(a), &self.unit)? else {
            return Ok(None);
        };
        // one-sided inverses agree in finite dimension, but check anyway
        Ok((self.mul(&x, a) == self.unit).then_some(x))
    }

    /// Product in `A^{(x)k}` of sparse tensors.
    pub fn tensor_mul(&self, k: usize, x: &[(usize, F::Elem)], y: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
        let f = &self.field;
        let d = self.dim;
        let size = d.pow(k as u32);
        let mut acc = Accumulator::new(f, size);
        let mut partial: Vec<(usize, F::Elem)> = Vec::new();
        let mut next: Vec<(usize, F::Elem)> = Vec::new();
        for (ix, cx) in x {
            let xi = tensor_unflatten(*ix, k, d);
            for (iy, cy) in y {
                let yi = tensor_unflatten(*iy, k, d);
                partial.clear();
                partial.push((0, f.mul(cx, cy)));
                for s in 0..k {
                    next.clear();
                    let prod = self.product(xi[s], yi[s]);
                    for (idx, c) in &partial {
                        for (t, v) in prod {
                            next.push((idx * d + t, f.mul(c, v)));
                        }
                    }
                    std::mem::swap(&mut partial, &mut next);
                }
                for (idx, c) in &partial {
                    acc.add(f, *idx, c);
                }
            }
        }
        acc.drain(f)
    }

    /// Unit of `A^{(x)k}`.
    pub fn tensor_unit(&self, k: usize) -> SparseVec<F::Elem> {
        let mut v: SparseVec<F::Elem> = vec![(0, self.field.one())];
        for _ in 0..k {
            v = tensor_product(&self.field, self.dim, &v, &crate::linalg::sparsify(&self.field, &self.unit));
        }
        v
    }
}

/// Sorts, merges duplicates and drops zeros.
pub(crate) fn canonical<F: Field>(f: &F, mut v: SparseVec<F::Elem>) -> SparseVec<F::Elem> {
    v.sort_by_key(|(j, _)| *j);
    let mut out: SparseVec<F::Elem> = Vec::with_capacity(v.len());
    for (j, c) in v {
        match out.last_mut() {
            Some((k, acc)) if *k == j => f.add_assign(acc, &c),
            _ => out.push((j, c)),
        }
    }
    out.retain(|(_, c)| !f.is_zero(c));
    out
}

/// `x (x) y` where `y` lives in a `width`-dimensional space.
pub(crate) fn tensor_product<F: Field>(
    f: &F,
    width: usize,
    x: &[(usize, F::Elem)],
    y: &[(usize, F::Elem)],
) -> SparseVec<F::Elem> {
    let mut out = Vec::with_capacity(x.len() * y.len());
    for (i, a) in x {
        for (j, b) in y {
            out.push((i * width + j, f.mul(a, b)));
        }
    }
    out
}

/// Applies `maps[s]` to tensor factor `s` of `x` (each map `d x d`).
pub(crate) fn apply_slotwise<F: Field>(
    f: &F,
    d: usize,
    maps: &[&Matrix<F>],
    x: &[(usize, F::Elem)],
) -> SparseVec<F::Elem> {
    let k = maps.len();
    let cols: Vec<Vec<SparseVec<F::Elem>>> = maps
        .iter()
        .map(|m| {
            let t = m.transpose();
            t.into_rows()
        })
        .collect();
    let mut acc = Accumulator::new(f, d.pow(k as u32));
    for (idx, c) in x {
        let legs = tensor_unflatten(*idx, k, d);
        let mut partial: SparseVec<F::Elem> = vec![(0, c.clone())];
        for s in 0..k {
            partial = tensor_product(f, d, &partial, &cols[s][legs[s]]);
        }
        for (j, v) in &partial {
            acc.add(f, *j, v);
        }
    }
    acc.drain(f)
}

/// Swaps the two factors of an element of `A (x) A`.
pub(crate) fn flip<F: Field>(d: usize, x: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
    let mut out: SparseVec<F::Elem> = x.iter().map(|(idx, c)| ((idx % d) * d + idx / d, c.clone())).collect();
    out.sort_by_key(|(j, _)| *j);
    out
}

/// An `A`-bimodule of dimension `m`, stored as one `m x m` matrix per basis
/// element of `A` for each side.
#[derive(Clone)]
pub struct BimodulePresentation<F: Field> {
    field: F,
    algebra_dim: usize,
    dim: usize,
    left: Vec<Matrix<F>>,
    right: Vec<Matrix<F>>,
}

impl<F: Field> PartialEq for BimodulePresentation<F> {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.left == other.left && self.right == other.right
    }
}

impl<F: Field> std::fmt::Debug for BimodulePresentation<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BimodulePresentation(dim {} over an algebra of dim {})", self.dim, self.algebra_dim)
    }
}

impl<F: Field> BimodulePresentation<F> {
    pub fn new(field: &F, dim: usize, left: Vec<Matrix<F>>, right: Vec<Matrix<F>>) -> Result<Self> {
        if left.len() != right.len() {
            return Err(Error::DimensionMismatch("left and right action counts differ".into()));
        }
        for m in left.iter().chain(&right) {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "action matrix {}x{} on a module of dimension {dim}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(BimodulePresentation { field: field.clone(), algebra_dim: left.len(), dim, left, right })
    }

    /// `A` acting on itself by multiplication.
    pub fn regular(alg: &AlgebraPresentation<F>) -> Self {
        BimodulePresentation {
            field: alg.field.clone(),
            algebra_dim: alg.dim,
            dim: alg.dim,
            left: alg.left.clone(),
            right: alg.right.clone(),
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn algebra_dim(&self) -> usize {
        self.algebra_dim
    }
    pub fn left(&self, i: usize) -> &Matrix<F> {
        &self.left[i]
    }
    pub fn right(&self, i: usize) -> &Matrix<F> {
        &self.right[i]
    }
    pub fn left_all(&self) -> &[Matrix<F>] {
        &self.left
    }
    pub fn right_all(&self) -> &[Matrix<F>] {
        &self.right
    }

    /// Matrix of `m -> a.m`.
    pub fn left_of(&self, a: &[F::Elem]) -> Matrix<F> {
        Matrix::linear_combination(&self.field, self.dim, self.dim, a.iter().zip(&self.left))
    }

    /// Matrix of `m -> m.a`.
    pub fn right_of(&self, a: &[F::Elem]) -> Matrix<F> {
        Matrix::linear_combination(&self.field, self.dim, self.dim, a.iter().zip(&self.right))
    }
}

/// A Hopf algebra: an algebra with comultiplication, counit and antipode.
#[derive(Clone)]
pub struct HopfPresentation<F: Field> {
    alg: AlgebraPresentation<F>,
    /// `Delta(e_i)` as a sparse vector over `d^2`
    comult: Vec<SparseVec<F::Elem>>,
    counit: Vec<F::Elem>,
    /// column `i` is `S(e_i)`
    antipode: Matrix<F>,
    antipode_inv: Matrix<F>,
}

impl<F: Field> PartialEq for HopfPresentation<F> {
    fn eq(&self, other: &Self) -> bool {
        self.alg == other.alg
            && self.comult == other.comult
            && self.counit == other.counit
            && self.antipode == other.antipode
    }
}

impl<F: Field> std::fmt::Debug for HopfPresentation<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "HopfPresentation(dim {} over {})", self.alg.dim, self.alg.field.spec())
    }
}

impl<F: Field> HopfPresentation<F> {
    /// `comult` holds quadruples `(i, j, k, c)`: `Delta(e_i)` contains
    /// `c e_j (x) e_k`. `antipode` holds `(i, k, c)`: `S(e_i)` contains `c e_k`.
    pub fn new(
        alg: AlgebraPresentation<F>,
        comult: impl IntoIterator<Item = (usize, usize, usize, F::Elem)>,
        counit: Vec<F::Elem>,
        antipode: impl IntoIterator<Item = (usize, usize, F::Elem)>,
    ) -> Result<Self> {
        let d = alg.dim;
        let f = alg.field.clone();
        let mut raw: Vec<SparseVec<F::Elem>> = vec![Vec::new(); d];
        for (i, j, k, c) in comult {
            for idx in [i, j, k] {
                if idx >= d {
                    return Err(Error::IndexOutOfRange { index: idx, bound: d });
                }
            }
            raw[i].push((j * d + k, c));
        }
        let comult = raw.into_iter().map(|v| canonical(&f, v)).collect();
        let mut rows: Vec<SparseVec<F::Elem>> = vec![Vec::new(); d];
        for (i, k, c) in antipode {
            if i >= d || k >= d {
                return Err(Error::IndexOutOfRange { index: i.max(k), bound: d });
            }
            rows[k].push((i, c));
        }
        let antipode = Matrix::from_sparse_rows(&f, d, rows);
        Self::from_parts(alg, comult, counit, antipode)
    }

    pub(crate) fn from_parts(
        alg: AlgebraPresentation<F>,
        comult: Vec<SparseVec<F::Elem>>,
        counit: Vec<F::Elem>,
        antipode: Matrix<F>,
    ) -> Result<Self> {
        let d = alg.dim;
        if counit.len() != d || comult.len() != d || antipode.rows() != d || antipode.cols() != d {
            return Err(Error::DimensionMismatch(format!("Hopf structure maps do not match dimension {d}")));
        }
        let antipode_inv = antipode
            .inverse()?
            .ok_or_else(|| Error::Invalid("the antipode is not invertible".into()))?;
        Ok(HopfPresentation { alg, comult, counit, antipode, antipode_inv })
    }

    pub fn algebra(&self) -> &AlgebraPresentation<F> {
        &self.alg
    }
    pub fn field(&self) -> &F {
        &self.alg.field
    }
    pub fn dim(&self) -> usize {
        self.alg.dim
    }
    pub fn counit(&self) -> &[F::Elem] {
        &self.counit
    }
    pub fn antipode(&self) -> &Matrix<F> {
        &self.antipode
    }
    pub fn antipode_inv(&self) -> &Matrix<F> {
        &self.antipode_inv
    }

    /// `Delta(e_i)` over the `d^2` tensor basis.
    pub fn comult(&self, i: usize) -> &[(usize, F::Elem)] {
        &self.comult[i]
    }

    pub fn coproduct(&self, a: &[F::Elem]) -> SparseVec<F::Elem> {
        let f = self.field();
        let mut acc = Accumulator::new(f, self.dim() * self.dim());
        for (i, c) in a.iter().enumerate() {
            if !f.is_zero(c) {
                acc.axpy(f, c, &self.comult[i]);
            }
        }
        acc.drain(f)
    }

    pub fn eps(&self, a: &[F::Elem]) -> F::Elem {
        let f = self.field();
        let mut acc = f.zero();
        for (x, e) in a.iter().zip(&self.counit) {
            f.mul_add_assign(&mut acc, x, e);
        }
        acc
    }

    pub fn s(&self, a: &[F::Elem]) -> Elem<F> {
        self.antipode.apply(a)
    }

    pub fn s_inv(&self, a: &[F::Elem]) -> Elem<F> {
        self.antipode_inv.apply(a)
    }

    /// Comultiplication quadruples, for serialisation.
    pub fn comult_entries(&self) -> Vec<(usize, usize, usize, F::Elem)> {
        let d = self.dim();
        let mut out = Vec::new();
        for (i, v) in self.comult.iter().enumerate() {
            for (jk, c) in v {
                out.push((i, jk / d, jk % d, c.clone()));
            }
        }
        out
    }

    pub fn antipode_entries(&self) -> Vec<(usize, usize, F::Elem)> {
        let mut out = Vec::new();
        let t = self.antipode.transpose();
        for i in 0..self.dim() {
            for (k, c) in t.row(i) {
                out.push((i, *k, c.clone()));
            }
        }
        out
    }

    /// `Delta^{(k)}(e_i)` for every basis element, as sparse vectors over
    /// `d^k`; `k = 0` is the counit, `k = 1` the identity, and larger `k`
    /// splits the first factor again: `(Delta (x) id^{k-2}) Delta^{(k-1)}`.
    pub fn iterated_coproduct_basis(&self, k: usize) -> Vec<SparseVec<F::Elem>> {
        let d = self.dim();
        let f = self.field();
        match k {
            0 => self.counit.iter().map(|e| if f.is_zero(e) { vec![] } else { vec![(0, e.clone())] }).collect(),
            1 => (0..d).map(|i| vec![(i, f.one())]).collect(),
            _ => {
                let prev = self.iterated_coproduct_basis(k - 1);
                let tail = d.pow(k as u32 - 2);
                prev.iter()
                    .map(|v| {
                        let mut acc = Accumulator::new(f, d.pow(k as u32));
                        for (idx, c) in v {
                            let (head, rest) = (idx / tail, idx % tail);
                            for (jk, w) in &self.comult[head] {
                                acc.add_scaled(f, jk * tail + rest, c, w);
                            }
                        }
                        acc.drain(f)
                    })
                    .collect()
            }
        }
    }

    /// Same as [`Self::iterated_coproduct_basis`] but splitting the last
    /// factor: `(id^{k-2} (x) Delta) Delta^{(k-1)}`.
    pub fn iterated_coproduct_basis_right(&self, k: usize) -> Vec<SparseVec<F::Elem>> {
        if k < 2 {
            return self.iterated_coproduct_basis(k);
        }
        let d = self.dim();
        let f = self.field();
        let prev = self.iterated_coproduct_basis_right(k - 1);
        prev.iter()
            .map(|v| {
                let mut acc = Accumulator::new(f, d.pow(k as u32));
                for (idx, c) in v {
                    let (front, last) = (idx / d, idx % d);
                    for (jk, w) in &self.comult[last] {
                        acc.add_scaled(f, front * d * d + jk, c, w);
                    }
                }
                let mut out = acc.drain(f);
                out.sort_by_key(|(j, _)| *j);
                out
            })
            .collect()
    }

    /// Matrix of `Delta^{(k)}: K^d -> K^{d^k}`.
    pub fn iterated_coproduct(&self, k: usize) -> Matrix<F> {
        let cols = self.iterated_coproduct_basis(k);
        let rows = self.dim().pow(k as u32);
        let mut data: Vec<SparseVec<F::Elem>> = vec![Vec::new(); rows];
        for (i, col) in cols.iter().enumerate() {
            for (r, c) in col {
                data[*r].push((i, c.clone()));
            }
        }
        Matrix::from_sparse_rows(self.field(), self.dim(), data)
    }

    /// `S^{-2}`
    pub fn s2_inv_matrix(&self) -> Matrix<F> {
        self.antipode_inv.mul(&self.antipode_inv).expect("square")
    }

    pub fn center_basis(&self) -> Subspace<F> {
        center_basis(&self.alg)
    }
}
