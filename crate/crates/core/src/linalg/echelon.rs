use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::{Accumulator, Matrix, SparseVec};
use crate::error::{Error, Result};
use crate::scalar::Field;

/// Below this size elimination runs on a dense copy.
const DENSE_LIMIT: usize = 64;

/// Reduced row echelon form and pivot columns (ascending). The returned
/// matrix has the same shape as the input; zero rows come last.
pub fn rref<F: Field>(m: &Matrix<F>) -> (Matrix<F>, Vec<usize>) {
    let (rows, pivots) = if m.rows() <= DENSE_LIMIT && m.cols() <= DENSE_LIMIT {
        dense_rref(m)
    } else {
        sparse_rref(m.field(), m.cols(), m.row_vecs().iter().cloned())
    };
    let mut data = rows;
    data.resize(m.rows().max(data.len()), Vec::new());
    (Matrix::from_canonical_rows(m.field(), m.cols(), data), pivots)
}

pub fn rank<F: Field>(m: &Matrix<F>) -> usize {
    if m.rows() <= DENSE_LIMIT && m.cols() <= DENSE_LIMIT {
        dense_rref(m).1.len()
    } else {
        let mut e = Eliminator::new(m.field(), m.cols());
        for r in m.row_vecs() {
            if e.pivot_count() == m.cols() {
                break;
            }
            e.insert(r.clone());
        }
        e.pivot_count()
    }
}

fn dense_rref<F: Field>(m: &Matrix<F>) -> (Vec<SparseVec<F::Elem>>, Vec<usize>) {
    let f = m.field();
    let mut a = m.to_dense();
    let (nr, nc) = (m.rows(), m.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..nc {
        if r == nr {
            break;
        }
        let Some(p) = (r..nr).find(|&i| !f.is_zero(&a[i][c])) else {
            continue;
        };
        a.swap(r, p);
        let inv = f.inv(&a[r][c]).expect("nonzero pivot");
        for x in a[r][c..].iter_mut() {
            *x = f.mul(x, &inv);
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && !f.is_zero(&row[c]) {
                let factor = f.neg(&row[c]);
                for k in c..nc {
                    if !f.is_zero(&pivot_row[k]) {
                        f.mul_add_assign(&mut row[k], &factor, &pivot_row[k]);
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let rows = a
        .into_iter()
        .take(r)
        .map(|row| super::sparsify(f, &row))
        .collect();
    (rows, pivots)
}

/// Incremental sparse Gaussian elimination. Pivot rows are normalised
/// (leading coefficient 1) but only reduced below their lead until
/// [`Eliminator::finish`] back-substitutes.
struct Eliminator<F: Field> {
    field: F,
    pivot_of_col: Vec<Option<usize>>,
    pivots: Vec<(usize, SparseVec<F::Elem>)>,
    acc: Accumulator<F>,
}

impl<F: Field> Eliminator<F> {
    fn new(field: &F, cols: usize) -> Self {
        Eliminator {
            field: field.clone(),
            pivot_of_col: vec![None; cols],
            pivots: Vec::new(),
            acc: Accumulator::new(field, cols),
        }
    }

    fn pivot_count(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `row` against the current pivots; adds it as a pivot row when
    /// it does not vanish. Returns the new pivot column, if any.
    fn insert(&mut self, row: SparseVec<F::Elem>) -> Option<usize> {
        if row.is_empty() {
            return None;
        }
        let f = &self.field;
        let mut heap: BinaryHeap<Reverse<usize>> = BinaryHeap::with_capacity(row.len());
        for (j, v) in &row {
            self.acc.add(f, *j, v);
            heap.push(Reverse(*j));
        }
        let mut lead = None;
        while let Some(Reverse(c)) = heap.pop() {
            let v = match self.acc.get(c) {
                Some(v) if !f.is_zero(v) => v.clone(),
                _ => continue,
            };
            match self.pivot_of_col[c] {
                Some(p) => {
                    let neg = f.neg(&v);
                    for (j, w) in &self.pivots[p].1 {
                        if self.acc.get(*j).is_none() {
                            heap.push(Reverse(*j));
                        }
                        self.acc.add_scaled(f, *j, &neg, w);
                    }
                }
                None => {
                    lead = Some(c);
                    break;
                }
            }
        }
        let reduced = self.acc.drain(f);
        let lead = lead?;
        debug_assert_eq!(reduced.first().map(|x| x.0), Some(lead));
        let inv = f.inv(&reduced[0].1).expect("nonzero lead");
        let normalized: SparseVec<F::Elem> =
            reduced.into_iter().map(|(j, v)| (j, f.mul(&v, &inv))).collect();
        self.pivot_of_col[lead] = Some(self.pivots.len());
        self.pivots.push((lead, normalized));
        Some(lead)
    }

    /// Back-substitutes and returns the fully reduced rows sorted by pivot.
    fn finish(mut self) -> (Vec<SparseVec<F::Elem>>, Vec<usize>) {
        let f = self.field.clone();
        let mut order: Vec<usize> = (0..self.pivots.len()).collect();
        order.sort_by_key(|&i| self.pivots[i].0);
        let mut reduced: Vec<Option<SparseVec<F::Elem>>> = vec![None; self.pivots.len()];
        for &i in order.iter().rev() {
            let (lead, row) = &self.pivots[i];
            let needs = row
                .iter()
                .any(|(c, _)| *c != *lead && self.pivot_of_col[*c].is_some());
            if !needs {
                reduced[i] = Some(row.clone());
                continue;
            }
            for (c, v) in row {
                self.acc.add(&f, *c, v);
            }
            for (c, v) in row {
                if *c == *lead {
                    continue;
                }
                if let Some(p) = self.pivot_of_col[*c] {
                    let neg = f.neg(v);
                    let prow = reduced[p].as_ref().expect("higher pivot reduced first");
                    self.acc.axpy(&f, &neg, prow);
                }
            }
            reduced[i] = Some(self.acc.drain(&f));
        }
        let rows = order.iter().map(|&i| reduced[i].take().unwrap()).collect();
        let pivots = order.iter().map(|&i| self.pivots[i].0).collect();
        (rows, pivots)
    }
}

fn sparse_rref<F: Field>(
    field: &F,
    cols: usize,
    rows: impl Iterator<Item = SparseVec<F::Elem>>,
) -> (Vec<SparseVec<F::Elem>>, Vec<usize>) {
    let mut e = Eliminator::new(field, cols);
    for r in rows {
        if e.pivot_count() == cols {
            break;
        }
        e.insert(r);
    }
    e.finish()
}

/// A linear subspace of `K^ambient`, stored by its reduced row echelon
/// basis, which makes equality of subspaces equality of bases.
#[derive(Clone)]
pub struct Subspace<F: Field> {
    field: F,
    ambient: usize,
    basis: Vec<SparseVec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> PartialEq for Subspace<F> {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.basis == other.basis
    }
}

impl<F: Field> std::fmt::Debug for Subspace<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subspace(dim {} in {})", self.dim(), self.ambient)
    }
}

impl<F: Field> Subspace<F> {
    pub fn zero(field: &F, ambient: usize) -> Self {
        Subspace { field: field.clone(), ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: &F, ambient: usize) -> Self {
        Subspace {
            field: field.clone(),
            ambient,
            basis: (0..ambient).map(|i| vec![(i, field.one())]).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    /// Span of arbitrary (possibly dependent) sparse vectors.
    pub fn span(field: &F, ambient: usize, vectors: impl IntoIterator<Item = SparseVec<F::Elem>>) -> Self {
        let (basis, pivots) = sparse_rref(field, ambient, vectors.into_iter());
        Subspace { field: field.clone(), ambient, basis, pivots }
    }

    pub fn span_dense(field: &F, ambient: usize, vectors: &[Vec<F::Elem>]) -> Self {
        Self::span(field, ambient, vectors.iter().map(|v| super::sparsify(field, v)))
    }

    /// Column space of a matrix.
    pub fn column_space(m: &Matrix<F>) -> Self {
        Self::span(m.field(), m.rows(), m.transpose().into_rows())
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn ambient(&self) -> usize {
        self.ambient
    }
    pub fn basis(&self) -> &[SparseVec<F::Elem>] {
        &self.basis
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_dense(&self) -> Vec<Vec<F::Elem>> {
        self.basis.iter().map(|b| super::densify(&self.field, b, self.ambient)).collect()
    }

    /// Basis vectors as the columns of an `ambient x dim` matrix.
    pub fn basis_matrix(&self) -> Matrix<F> {
        Matrix::from_canonical_rows(&self.field, self.ambient, self.basis.clone()).transpose()
    }

    /// Residue of `v` after subtracting its component along the pivots.
    pub fn reduce(&self, v: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
        let f = &self.field;
        let mut acc = Accumulator::new(f, self.ambient);
        for (j, x) in v {
            acc.add(f, *j, x);
        }
        for (b, p) in self.basis.iter().zip(&self.pivots) {
            let coeff = match v.binary_search_by_key(p, |(j, _)| *j) {
                Ok(pos) => v[pos].1.clone(),
                Err(_) => continue,
            };
            acc.axpy(f, &f.neg(&coeff), b);
        }
        acc.drain(f)
    }

    pub fn contains(&self, v: &[(usize, F::Elem)]) -> bool {
        self.reduce(v).is_empty()
    }

    pub fn contains_dense(&self, v: &[F::Elem]) -> bool {
        self.contains(&super::sparsify(&self.field, v))
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.basis.iter().all(|b| other.contains(b))
    }

    /// Coordinates of a member in the echelon basis.
    pub fn coordinates(&self, v: &[(usize, F::Elem)]) -> Option<Vec<F::Elem>> {
        if !self.contains(v) {
            return None;
        }
        let f = &self.field;
        Some(
            self.pivots
                .iter()
                .map(|p| match v.binary_search_by_key(p, |(j, _)| *j) {
                    Ok(pos) => v[pos].1.clone(),
                    Err(_) => f.zero(),
                })
                .collect(),
        )
    }

    /// Image of the subspace under a linear map.
    pub fn image(&self, m: &Matrix<F>) -> Self {
        let imgs: Vec<SparseVec<F::Elem>> = self.basis.iter().map(|b| m.mul_sparse(b)).collect();
        Self::span(&self.field, m.rows(), imgs)
    }
}

/// Basis of `{x : Mx = 0}`.
pub fn kernel_basis<F: Field>(m: &Matrix<F>) -> Subspace<F> {
    let f = m.field();
    let cols = m.cols();
    let (rows, pivots) = if m.rows() <= DENSE_LIMIT && cols <= DENSE_LIMIT {
        dense_rref(m)
    } else {
        sparse_rref(f, cols, m.row_vecs().iter().cloned())
    };
    let mut is_pivot = vec![false; cols];
    for p in &pivots {
        is_pivot[*p] = true;
    }
    let mut slot = vec![usize::MAX; cols];
    let mut vecs: Vec<SparseVec<F::Elem>> = Vec::new();
    for j in 0..cols {
        if !is_pivot[j] {
            slot[j] = vecs.len();
            vecs.push(vec![(j, f.one())]);
        }
    }
    for (row, p) in rows.iter().zip(&pivots) {
        for (c, v) in row {
            if *c != *p {
                vecs[slot[*c]].push((*p, f.neg(v)));
            }
        }
    }
    for v in vecs.iter_mut() {
        v.sort_by_key(|(j, _)| *j);
    }
    Subspace::span(f, cols, vecs)
}

/// Some `x` with `Mx = b`, or `None` when the system is inconsistent. Free
/// variables are set to zero.
pub fn solve<F: Field>(m: &Matrix<F>, b: &[F::Elem]) -> Result<Option<Vec<F::Elem>>> {
    if b.len() != m.rows() {
        return Err(Error::DimensionMismatch(format!(
            "solve: {} rows, right-hand side of length {}",
            m.rows(),
            b.len()
        )));
    }
    let f = m.field();
    let cols = m.cols();
    let aug = m.row_vecs().iter().zip(b).map(|(r, bi)| {
        let mut row = r.clone();
        if !f.is_zero(bi) {
            row.push((cols, bi.clone()));
        }
        row
    });
    let (rows, pivots) = sparse_rref(f, cols + 1, aug);
    if pivots.last() == Some(&cols) {
        return Ok(None);
    }
    let mut x = vec![f.zero(); cols];
    for (row, p) in rows.iter().zip(&pivots) {
        if let Some((c, v)) = row.last() {
            if *c == cols {
                x[*p] = v.clone();
            }
        }
    }
    Ok(Some(x))
}

/// Expresses vectors modulo a subspace in terms of a fixed list of vectors
/// that are independent modulo it.
pub struct QuotientReducer<F: Field> {
    modulo: Subspace<F>,
    count: usize,
    /// fully reduced rows: (pivot column, vector, coefficients in the basis)
    rows: Vec<(usize, SparseVec<F::Elem>, Vec<F::Elem>)>,
}

impl<F: Field> QuotientReducer<F> {
    pub fn new(modulo: &Subspace<F>, basis: &[SparseVec<F::Elem>]) -> Result<Self> {
        let f = modulo.field().clone();
        let k = basis.len();
        let mut rows: Vec<(usize, SparseVec<F::Elem>, Vec<F::Elem>)> = Vec::new();
        for (idx, b) in basis.iter().enumerate() {
            let mut w = modulo.reduce(b);
            let mut tag = vec![f.zero(); k];
            tag[idx] = f.one();
            for (p, rv, rt) in &rows {
                if let Ok(pos) = w.binary_search_by_key(p, |(j, _)| *j) {
                    let c = f.neg(&w[pos].1);
                    w = super::merge_axpy(&f, &w, &c, rv);
                    for (t, s) in tag.iter_mut().zip(rt) {
                        f.mul_add_assign(t, &c, s);
                    }
                }
            }
            let Some((lead, lv)) = w.first().cloned() else {
                return Err(Error::DimensionMismatch(format!(
                    "quotient basis vector {idx} is dependent modulo the subspace"
                )));
            };
            let inv = f.inv(&lv)?;
            let w: SparseVec<F::Elem> = w.into_iter().map(|(j, v)| (j, f.mul(&v, &inv))).collect();
            let tag: Vec<F::Elem> = tag.iter().map(|t| f.mul(t, &inv)).collect();
            for (_, rv, rt) in rows.iter_mut() {
                if let Ok(pos) = rv.binary_search_by_key(&lead, |(j, _)| *j) {
                    let c = f.neg(&rv[pos].1);
                    *rv = super::merge_axpy(&f, rv, &c, &w);
                    for (t, s) in rt.iter_mut().zip(&tag) {
                        f.mul_add_assign(t, &c, s);
                    }
                }
            }
            rows.push((lead, w, tag));
        }
        Ok(QuotientReducer { modulo: modulo.clone(), count: k, rows })
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    /// Coordinates `c` with `w = sum c_j basis_j` modulo the subspace, or
    /// `None` if `w` is outside `span(basis) + subspace`.
    pub fn coordinates(&self, w: &[(usize, F::Elem)]) -> Result<Option<Vec<F::Elem>>> {
        if w.last().is_some_and(|(j, _)| *j >= self.modulo.ambient()) {
            return Err(Error::DimensionMismatch("vector outside the ambient space".into()));
        }
        let f = self.modulo.field();
        let mut r = self.modulo.reduce(w);
        let mut coords = vec![f.zero(); self.count];
        for (p, rv, rt) in &self.rows {
            if let Ok(pos) = r.binary_search_by_key(p, |(j, _)| *j) {
                let c = r[pos].1.clone();
                for (x, t) in coords.iter_mut().zip(rt) {
                    f.mul_add_assign(x, &c, t);
                }
                r = super::merge_axpy(f, &r, &f.neg(&c), rv);
            }
        }
        Ok(r.is_empty().then_some(coords))
    }
}

/// One-shot form of [`QuotientReducer`]: coordinates for each vector, with
/// `None` marking an inconsistent one.
pub fn quotient_representation<F: Field>(
    vectors: &[SparseVec<F::Elem>],
    modulo: &Subspace<F>,
    basis: &[SparseVec<F::Elem>],
) -> Result<Vec<Option<Vec<F::Elem>>>> {
    let red = QuotientReducer::new(modulo, basis)?;
    vectors.iter().map(|v| red.coordinates(v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Field, PrimeField, Rationals};

    fn q(n: i64) -> crate::scalar::Rational {
        Rationals.from_i64(n)
    }

    #[test]
    fn rref_examples() {
        let (r, p) = rref(&Matrix::from_i64(&Rationals, &[vec![1, 1], vec![1, 1]]));
        assert_eq!(r, Matrix::from_i64(&Rationals, &[vec![1, 1], vec![0, 0]]));
        assert_eq!(p, vec![0]);
        let id = Matrix::identity(&Rationals, 3);
        assert_eq!(rref(&id), (id.clone(), vec![0, 1, 2]));
        let f5 = PrimeField::new(5).unwrap();
        let (r, p) = rref(&Matrix::from_i64(&f5, &[vec![2]]));
        assert_eq!(r, Matrix::from_i64(&f5, &[vec![1]]));
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn kernel_examples() {
        let k = kernel_basis(&Matrix::from_i64(&Rationals, &[vec![1, 1], vec![1, 1]]));
        assert_eq!(k.basis_dense(), vec![vec![q(1), q(-1)]]);
        assert_eq!(kernel_basis(&Matrix::zeros(&Rationals, 2, 3)).dim(), 3);
        assert_eq!(kernel_basis(&Matrix::from_i64(&Rationals, &[vec![1, 2], vec![3, 4]])).dim(), 0);
    }

    #[test]
    fn solve_examples() {
        let m = Matrix::from_i64(&Rationals, &[vec![1, 0], vec![0, 2]]);
        let x = solve(&m, &[q(1), q(1)]).unwrap().unwrap();
        assert_eq!(x, vec![q(1), Rationals.parse("1/2").unwrap()]);
        let s = Matrix::from_i64(&Rationals, &[vec![1, 1], vec![1, 1]]);
        assert!(solve(&s, &[q(1), q(0)]).unwrap().is_none());
        let empty = Matrix::zeros(&Rationals, 0, 3);
        assert_eq!(solve(&empty, &[]).unwrap().unwrap(), vec![q(0); 3]);
        assert!(solve(&m, &[q(1)]).is_err());
    }

    #[test]
    fn quotient_examples() {
        let f = Rationals;
        let modulo = Subspace::span(&f, 2, vec![vec![(1, q(1))]]);
        let basis = vec![vec![(0, q(1))]];
        let out = quotient_representation(&[vec![(0, q(3)), (1, q(7))]], &modulo, &basis).unwrap();
        assert_eq!(out, vec![Some(vec![q(3)])]);
        let out = quotient_representation(&[vec![(1, q(5))]], &modulo, &basis).unwrap();
        assert_eq!(out, vec![Some(vec![q(0)])]);
        let zero = Subspace::zero(&f, 2);
        let out = quotient_representation(&[vec![(1, q(1))]], &zero, &basis).unwrap();
        assert_eq!(out, vec![None]);
    }

    #[test]
    fn dense_and_sparse_paths_agree() {
        // 70 columns forces the sparse path
        let f = PrimeField::new(7).unwrap();
        let rows: Vec<Vec<i64>> = (0..70)
            .map(|i| (0..70).map(|j| ((i * 31 + j * 17 + i * j) % 7) as i64).collect())
            .collect();
        let m = Matrix::from_i64(&f, &rows);
        let (r, p) = rref(&m);
        // compare with dense elimination on a copy
        let (dr, dp) = dense_rref(&m);
        assert_eq!(p, dp);
        for (a, b) in r.row_vecs().iter().zip(&dr) {
            assert_eq!(a, b);
        }
    }
}
