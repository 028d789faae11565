//! Exact sparse matrices over a [`Field`], elimination, kernels, quotients,
//! and the tensor-power index convention.

mod echelon;
mod tensor;

pub use echelon::{kernel_basis, quotient_representation, rank, rref, solve, QuotientReducer, Subspace};
pub use tensor::{tensor_index, tensor_unflatten, TensorShape};

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalar::Field;

/// Sparse vector: strictly increasing indices, no stored zeros.
pub type SparseVec<E> = Vec<(usize, E)>;

/// Dense scratch vector that remembers which slots were touched, used to
/// accumulate sparse linear combinations.
pub(crate) struct Accumulator<F: Field> {
    values: Vec<F::Elem>,
    occupied: Vec<bool>,
    touched: Vec<usize>,
}

impl<F: Field> Accumulator<F> {
    pub(crate) fn new(field: &F, len: usize) -> Self {
        Accumulator {
            values: vec![field.zero(); len],
            occupied: vec![false; len],
            touched: Vec::new(),
        }
    }

    #[inline]
    pub(crate) fn add(&mut self, field: &F, idx: usize, v: &F::Elem) {
        if !self.occupied[idx] {
            self.occupied[idx] = true;
            self.touched.push(idx);
            self.values[idx] = v.clone();
        } else {
            field.add_assign(&mut self.values[idx], v);
        }
    }

    #[inline]
    pub(crate) fn add_scaled(&mut self, field: &F, idx: usize, c: &F::Elem, v: &F::Elem) {
        if !self.occupied[idx] {
            self.occupied[idx] = true;
            self.touched.push(idx);
            self.values[idx] = field.mul(c, v);
        } else {
            field.mul_add_assign(&mut self.values[idx], c, v);
        }
    }

    pub(crate) fn axpy(&mut self, field: &F, c: &F::Elem, row: &[(usize, F::Elem)]) {
        for (j, v) in row {
            self.add_scaled(field, *j, c, v);
        }
    }

    pub(crate) fn get(&self, idx: usize) -> Option<&F::Elem> {
        self.occupied[idx].then(|| &self.values[idx])
    }

    /// Empties the accumulator, returning its nonzero entries sorted.
    pub(crate) fn drain(&mut self, field: &F) -> SparseVec<F::Elem> {
        self.touched.sort_unstable();
        let mut out = Vec::with_capacity(self.touched.len());
        for &j in &self.touched {
            self.occupied[j] = false;
            let v = std::mem::replace(&mut self.values[j], field.zero());
            if !field.is_zero(&v) {
                out.push((j, v));
            }
        }
        self.touched.clear();
        out
    }
}

/// A rows x cols matrix stored as sparse rows.
#[derive(Clone)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<SparseVec<F::Elem>>,
}

impl<F: Field> PartialEq for Matrix<F> {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field.spec())?;
        if self.rows <= 16 && self.cols <= 16 {
            for row in self.to_dense() {
                let cells: Vec<String> = row.iter().map(|x| self.field.format(x)).collect();
                writeln!(f, "  [{}]", cells.join(", "))?;
            }
        } else {
            writeln!(f, "  ({} nonzeros)", self.nnz())?;
        }
        Ok(())
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Matrix { field: field.clone(), rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows: n,
            cols: n,
            data: (0..n).map(|i| vec![(i, field.one())]).collect(),
        }
    }

    pub fn scalar(field: &F, n: usize, c: &F::Elem) -> Self {
        if field.is_zero(c) {
            return Self::zeros(field, n, n);
        }
        Matrix {
            field: field.clone(),
            rows: n,
            cols: n,
            data: (0..n).map(|i| vec![(i, c.clone())]).collect(),
        }
    }

    /// Builds from sparse rows; entries are sorted, merged and zero-filtered.
    pub fn from_sparse_rows(field: &F, cols: usize, rows: Vec<SparseVec<F::Elem>>) -> Self {
        let data = rows
            .into_iter()
            .map(|mut r| {
                r.sort_by_key(|(j, _)| *j);
                let mut out: SparseVec<F::Elem> = Vec::with_capacity(r.len());
                for (j, v) in r {
                    assert!(j < cols, "column {j} out of range {cols}");
                    match out.last_mut() {
                        Some((k, acc)) if *k == j => field.add_assign(acc, &v),
                        _ => out.push((j, v)),
                    }
                }
                out.retain(|(_, v)| !field.is_zero(v));
                out
            })
            .collect::<Vec<_>>();
        Matrix { field: field.clone(), rows: data.len(), cols, data }
    }

    pub(crate) fn from_canonical_rows(field: &F, cols: usize, data: Vec<SparseVec<F::Elem>>) -> Self {
        Matrix { field: field.clone(), rows: data.len(), cols, data }
    }

    pub fn from_dense(field: &F, rows: &[Vec<F::Elem>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "ragged dense matrix");
                r.iter()
                    .enumerate()
                    .filter(|(_, v)| !field.is_zero(v))
                    .map(|(j, v)| (j, v.clone()))
                    .collect()
            })
            .collect();
        Matrix { field: field.clone(), rows: rows.len(), cols, data }
    }

    pub fn from_i64(field: &F, rows: &[Vec<i64>]) -> Self {
        let dense: Vec<Vec<F::Elem>> =
            rows.iter().map(|r| r.iter().map(|x| field.from_i64(*x)).collect()).collect();
        Self::from_dense(field, &dense)
    }

    /// Matrix whose columns are the given dense vectors.
    pub fn from_columns(field: &F, rows: usize, columns: &[Vec<F::Elem>]) -> Self {
        let mut data: Vec<SparseVec<F::Elem>> = vec![Vec::new(); rows];
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, v) in col.iter().enumerate() {
                if !field.is_zero(v) {
                    data[i].push((j, v.clone()));
                }
            }
        }
        Matrix { field: field.clone(), rows, cols: columns.len(), data }
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn row(&self, i: usize) -> &[(usize, F::Elem)] {
        &self.data[i]
    }
    pub fn row_vecs(&self) -> &[SparseVec<F::Elem>] {
        &self.data
    }
    pub fn into_rows(self) -> Vec<SparseVec<F::Elem>> {
        self.data
    }
    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_empty())
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> F::Elem {
        match self.data[i].binary_search_by_key(&j, |(k, _)| *k) {
            Ok(pos) => self.data[i][pos].1.clone(),
            Err(_) => self.field.zero(),
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<F::Elem>> {
        self.data
            .iter()
            .map(|r| {
                let mut d = vec![self.field.zero(); self.cols];
                for (j, v) in r {
                    d[*j] = v.clone();
                }
                d
            })
            .collect()
    }

    pub fn column(&self, j: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data: Vec<SparseVec<F::Elem>> = vec![Vec::new(); self.cols];
        for (i, r) in self.data.iter().enumerate() {
            for (j, v) in r {
                data[*j].push((i, v.clone()));
            }
        }
        Matrix { field: self.field.clone(), rows: self.cols, cols: self.rows, data }
    }

    fn check_same_shape(&self, other: &Self, op: &str) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{op}: {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    /// `self + c * other`
    pub fn add_scaled(&self, c: &F::Elem, other: &Self) -> Result<Self> {
        self.check_same_shape(other, "add")?;
        let f = &self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| merge_axpy(f, a, c, b))
            .collect();
        Ok(Matrix { field: f.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.add_scaled(&self.field.one(), other)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add_scaled(&self.field.from_i64(-1), other)
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        if f.is_zero(c) {
            return Self::zeros(f, self.rows, self.cols);
        }
        let data = self
            .data
            .iter()
            .map(|r| r.iter().map(|(j, v)| (*j, f.mul(c, v))).collect())
            .collect();
        Matrix { field: f.clone(), rows: self.rows, cols: self.cols, data }
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "mul: {}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let width = other.cols;
        let compute = |acc: &mut Accumulator<F>, row: &SparseVec<F::Elem>| {
            for (k, a) in row {
                acc.axpy(f, a, &other.data[*k]);
            }
            acc.drain(f)
        };
        let data: Vec<SparseVec<F::Elem>> = if self.nnz() > 4096 {
            self.data
                .par_iter()
                .map_init(|| Accumulator::new(f, width), |acc, row| compute(acc, row))
                .collect()
        } else {
            let mut acc = Accumulator::new(f, width);
            self.data.iter().map(|row| compute(&mut acc, row)).collect()
        };
        Ok(Matrix { field: f.clone(), rows: self.rows, cols: width, data })
    }

    /// Product of a chain of matrices, left to right.
    pub fn chain(mats: &[&Self]) -> Result<Self> {
        let (first, rest) = mats.split_first().expect("empty chain");
        let mut acc = (*first).clone();
        for m in rest {
            acc = acc.mul(m)?;
        }
        Ok(acc)
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = Self::identity(&self.field, self.rows);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn mul_vec(&self, x: &[F::Elem]) -> Result<Vec<F::Elem>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "mul_vec: {} columns, vector of length {}",
                self.cols,
                x.len()
            )));
        }
        let f = &self.field;
        Ok(self
            .data
            .iter()
            .map(|r| {
                let mut acc = f.zero();
                for (j, v) in r {
                    f.mul_add_assign(&mut acc, v, &x[*j]);
                }
                acc
            })
            .collect())
    }

    /// Applies the matrix to a sparse vector.
    pub fn mul_sparse(&self, x: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
        // column access through rows: fine for the small widths this is used on
        let f = &self.field;
        let mut out = Vec::new();
        for (i, r) in self.data.iter().enumerate() {
            let mut acc = f.zero();
            let (mut a, mut b) = (0, 0);
            while a < r.len() && b < x.len() {
                match r[a].0.cmp(&x[b].0) {
                    std::cmp::Ordering::Less => a += 1,
                    std::cmp::Ordering::Greater => b += 1,
                    std::cmp::Ordering::Equal => {
                        f.mul_add_assign(&mut acc, &r[a].1, &x[b].1);
                        a += 1;
                        b += 1;
                    }
                }
            }
            if !f.is_zero(&acc) {
                out.push((i, acc));
            }
        }
        out
    }

    /// Block-diagonal matrix with `count` copies of `block`.
    pub fn block_diagonal(block: &Self, count: usize) -> Self {
        let (br, bc) = (block.rows, block.cols);
        let mut data = Vec::with_capacity(br * count);
        for b in 0..count {
            for r in &block.data {
                data.push(r.iter().map(|(j, v)| (b * bc + j, v.clone())).collect());
            }
        }
        Matrix { field: block.field.clone(), rows: br * count, cols: bc * count, data }
    }

    /// Vertical concatenation.
    pub fn vstack(field: &F, cols: usize, blocks: &[Self]) -> Result<Self> {
        let mut data = Vec::new();
        for b in blocks {
            if b.cols != cols {
                return Err(Error::DimensionMismatch("vstack: column counts differ".into()));
            }
            data.extend(b.data.iter().cloned());
        }
        Ok(Matrix { field: field.clone(), rows: data.len(), cols, data })
    }

    /// First (row, col) at which two equally shaped matrices differ.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize)> {
        if self.rows != other.rows || self.cols != other.cols {
            return Some((usize::MAX, usize::MAX));
        }
        for (i, (a, b)) in self.data.iter().zip(&other.data).enumerate() {
            if a != b {
                let n = a.len().min(b.len());
                for k in 0..n {
                    if a[k] != b[k] {
                        return Some((i, a[k].0.min(b[k].0)));
                    }
                }
                let j = if a.len() > n { a[n].0 } else { b[n].0 };
                return Some((i, j));
            }
        }
        None
    }

    /// Column index of the first column differing between the matrices.
    pub fn first_differing_column(&self, other: &Self) -> Option<usize> {
        let diff = self.sub(other).ok()?;
        diff.data.iter().filter_map(|r| r.first().map(|(j, _)| *j)).min()
    }

    pub fn rank(&self) -> usize {
        rank(self)
    }

    /// `sum c_i M_i` over equally shaped matrices.
    pub fn linear_combination<'a>(
        field: &F,
        rows: usize,
        cols: usize,
        terms: impl IntoIterator<Item = (&'a F::Elem, &'a Self)>,
    ) -> Self
    where
        F::Elem: 'a,
    {
        let mut data: Vec<SparseVec<F::Elem>> = vec![Vec::new(); rows];
        for (c, m) in terms {
            if field.is_zero(c) {
                continue;
            }
            assert_eq!((m.rows, m.cols), (rows, cols), "linear_combination shape");
            for (dst, src) in data.iter_mut().zip(&m.data) {
                if !src.is_empty() {
                    *dst = merge_axpy(field, dst, c, src);
                }
            }
        }
        Matrix { field: field.clone(), rows, cols, data }
    }

    /// Kronecker product `self (x) other`, row-major in both index pairs.
    pub fn kron(&self, other: &Self) -> Self {
        let f = &self.field;
        let mut data = Vec::with_capacity(self.rows * other.rows);
        for ra in &self.data {
            for rb in &other.data {
                let mut row = Vec::with_capacity(ra.len() * rb.len());
                for (ja, va) in ra {
                    for (jb, vb) in rb {
                        row.push((ja * other.cols + jb, f.mul(va, vb)));
                    }
                }
                data.push(row);
            }
        }
        Matrix { field: f.clone(), rows: self.rows * other.rows, cols: self.cols * other.cols, data }
    }

    /// Applies the matrix to a dense vector given as a sparse column.
    pub fn apply(&self, x: &[F::Elem]) -> Vec<F::Elem> {
        self.mul_vec(x).expect("apply: length mismatch")
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Result<Option<Self>> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let f = &self.field;
        let aug_rows: Vec<SparseVec<F::Elem>> = self
            .data
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut row = r.clone();
                row.push((n + i, f.one()));
                row
            })
            .collect();
        let aug = Matrix { field: f.clone(), rows: n, cols: 2 * n, data: aug_rows };
        let (r, pivots) = rref(&aug);
        if pivots.len() < n || pivots.iter().take(n).enumerate().any(|(i, p)| *p != i) {
            return Ok(None);
        }
        let data = r
            .data
            .into_iter()
            .take(n)
            .map(|row| row.into_iter().filter(|(j, _)| *j >= n).map(|(j, v)| (j - n, v)).collect())
            .collect();
        Ok(Some(Matrix { field: f.clone(), rows: n, cols: n, data }))
    }
}

/// `a + c * b` on sparse vectors.
pub(crate) fn merge_axpy<F: Field>(
    f: &F,
    a: &[(usize, F::Elem)],
    c: &F::Elem,
    b: &[(usize, F::Elem)],
) -> SparseVec<F::Elem> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut k) = (0, 0);
    while i < a.len() || k < b.len() {
        let take_a = k >= b.len() || (i < a.len() && a[i].0 < b[k].0);
        let take_b = i >= a.len() || (k < b.len() && b[k].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            let v = f.mul(c, &b[k].1);
            if !f.is_zero(&v) {
                out.push((b[k].0, v));
            }
            k += 1;
        } else {
            let mut v = a[i].1.clone();
            f.mul_add_assign(&mut v, c, &b[k].1);
            if !f.is_zero(&v) {
                out.push((a[i].0, v));
            }
            i += 1;
            k += 1;
        }
    }
    out
}

/// Converts a dense vector to sparse form.
pub fn sparsify<F: Field>(f: &F, v: &[F::Elem]) -> SparseVec<F::Elem> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !f.is_zero(x))
        .map(|(j, x)| (j, x.clone()))
        .collect()
}

pub fn densify<F: Field>(f: &F, v: &[(usize, F::Elem)], len: usize) -> Vec<F::Elem> {
    let mut d = vec![f.zero(); len];
    for (j, x) in v {
        d[*j] = x.clone();
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{PrimeField, Rationals};

    #[test]
    fn product_and_transpose() {
        let a = Matrix::from_i64(&Rationals, &[vec![1, 2], vec![0, 1]]);
        let b = Matrix::from_i64(&Rationals, &[vec![1, 0], vec![3, 1]]);
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab, Matrix::from_i64(&Rationals, &[vec![7, 2], vec![3, 1]]));
        assert_eq!(ab.transpose().transpose(), ab);
        assert!(a.mul(&Matrix::identity(&Rationals, 3)).is_err());
    }

    #[test]
    fn inverse_small() {
        let f = PrimeField::new(7).unwrap();
        let a = Matrix::from_i64(&f, &[vec![2, 1], vec![1, 1]]);
        let inv = a.inverse().unwrap().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), Matrix::identity(&f, 2));
        let sing = Matrix::from_i64(&f, &[vec![1, 1], vec![1, 1]]);
        assert!(sing.inverse().unwrap().is_none());
    }

    #[test]
    fn block_diagonal_shape() {
        let b = Matrix::from_i64(&Rationals, &[vec![1, 2]]);
        let m = Matrix::block_diagonal(&b, 3);
        assert_eq!((m.rows(), m.cols()), (3, 6));
        assert_eq!(m.get(2, 5), Rationals.from_i64(2));
    }
}
