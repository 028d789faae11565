//! The Hochschild cochain complex `C^n(A, M) = Hom(A^{(x)n}, M)`.
//!
//! A cochain `f` of degree `n` is stored as a vector of length `m d^n`,
//! entry `J * m + r` holding coordinate `r` of `f(e_J)`, where `J` is the
//! row-major tensor index of `e_{a_1} (x) ... (x) e_{a_n}`.

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hopf::{canonical, AlgebraPresentation, BimodulePresentation};
use crate::linalg::{kernel_basis, Matrix, QuotientReducer, SparseVec, Subspace};
use crate::scalar::Field;

const DEFAULT_CAP: u128 = 1_000_000;

static CAP_OVERRIDE: AtomicU64 = AtomicU64::new(0);

/// Largest cochain space (`m d^n` entries) a computation may touch:
/// [`set_memory_cap`], else `HOCHMOD_MEMORY_CAP`, else one million.
pub fn memory_cap() -> u128 {
    match CAP_OVERRIDE.load(Ordering::Relaxed) {
        0 => std::env::var("HOCHMOD_MEMORY_CAP").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_CAP),
        c => c as u128,
    }
}

/// Process-wide cap; `None` restores the default lookup.
pub fn set_memory_cap(cap: Option<u64>) {
    CAP_OVERRIDE.store(cap.unwrap_or(0), Ordering::Relaxed);
}

/// An algebra together with a bimodule over it.
#[derive(Clone, Debug)]
pub struct Complex<F: Field> {
    alg: AlgebraPresentation<F>,
    module: BimodulePresentation<F>,
}

impl<F: Field> Complex<F> {
    pub fn new(alg: &AlgebraPresentation<F>, module: &BimodulePresentation<F>) -> Result<Self> {
        if module.algebra_dim() != alg.dim() {
            return Err(Error::DimensionMismatch(format!(
                "bimodule is over a {}-dimensional algebra, not {}",
                module.algebra_dim(),
                alg.dim()
            )));
        }
        Ok(Complex { alg: alg.clone(), module: module.clone() })
    }

    pub fn regular(alg: &AlgebraPresentation<F>) -> Self {
        Complex { alg: alg.clone(), module: BimodulePresentation::regular(alg) }
    }

    pub fn algebra(&self) -> &AlgebraPresentation<F> {
        &self.alg
    }

    pub fn module(&self) -> &BimodulePresentation<F> {
        &self.module
    }

    pub fn field(&self) -> &F {
        self.alg.field()
    }

    fn d(&self) -> usize {
        self.alg.dim()
    }

    fn m(&self) -> usize {
        self.module.dim()
    }

    /// `m d^n` as an exact count.
    pub fn size(&self, n: usize) -> u128 {
        (self.m() as u128).saturating_mul((self.d() as u128).saturating_pow(n as u32))
    }

    pub fn cochain_dim(&self, n: usize) -> usize {
        self.m() * self.d().pow(n as u32)
    }

    /// Errors when `C^n` exceeds the memory cap.
    pub fn guard(&self, what: &str, n: usize) -> Result<()> {
        let cap = memory_cap();
        let required = self.size(n);
        if required > cap {
            return Err(Error::ResourceCap { what: format!("{what} (C^{n} has {required} entries)"), required, cap });
        }
        Ok(())
    }

    /// Row `row` of the coface map `C^{n-1} -> C^n` with index `i`, scaled by `sign`.
    fn push_coface_row(&self, n: usize, i: usize, row: usize, sign: &F::Elem, out: &mut SparseVec<F::Elem>) {
        let f = self.field();
        let (d, m) = (self.d(), self.m());
        let (j, r) = (row / m, row % m);
        if i == 0 {
            let lead = d.pow(n as u32 - 1);
            let (a, rest) = (j / lead, j % lead);
            for (s, c) in self.module.left(a).row(r) {
                out.push((rest * m + s, f.mul(sign, c)));
            }
        } else if i == n {
            let (rest, a) = (j / d, j % d);
            for (s, c) in self.module.right(a).row(r) {
                out.push((rest * m + s, f.mul(sign, c)));
            }
        } else {
            // digits a_i, a_{i+1} (1-based) sit at powers d^{n-i} and d^{n-i-1}
            let low = d.pow((n - i - 1) as u32);
            let suffix = j % low;
            let pair = (j / low) % (d * d);
            let prefix = j / (low * d * d);
            for (k, c) in self.alg.product(pair / d, pair % d) {
                let jj = (prefix * d + k) * low + suffix;
                out.push((jj * m + r, f.mul(sign, c)));
            }
        }
    }

    /// Matrix of the coface map `C^{n-1} -> C^n` with index `i` (`0 <= i <= n`).
    pub fn coface_matrix(&self, n: usize, i: usize) -> Result<Matrix<F>> {
        if n == 0 || i > n {
            return Err(Error::IndexOutOfRange { index: i, bound: n + 1 });
        }
        self.guard("coface matrix", n)?;
        let one = self.field().one();
        let rows = (0..self.cochain_dim(n))
            .map(|row| {
                let mut v = Vec::new();
                self.push_coface_row(n, i, row, &one, &mut v);
                canonical(self.field(), v)
            })
            .collect();
        Ok(Matrix::from_sparse_rows(self.field(), self.cochain_dim(n - 1), rows))
    }

    /// Row `row` of `d^n : C^n -> C^{n+1}`.
    pub fn differential_row(&self, n: usize, row: usize) -> SparseVec<F::Elem> {
        let f = self.field();
        let mut out = Vec::new();
        let mut sign = f.one();
        for i in 0..=n + 1 {
            self.push_coface_row(n + 1, i, row, &sign, &mut out);
            sign = f.neg(&sign);
        }
        canonical(f, out)
    }

    /// `d^n = sum_i (-1)^i coface_i : C^n -> C^{n+1}`.
    pub fn differential_matrix(&self, n: usize) -> Result<Matrix<F>> {
        self.guard("differential", n + 1)?;
        let rows: Vec<SparseVec<F::Elem>> =
            (0..self.cochain_dim(n + 1)).into_par_iter().map(|row| self.differential_row(n, row)).collect();
        Ok(Matrix::from_sparse_rows(self.field(), self.cochain_dim(n), rows))
    }

    /// `d^n f` without materialising the matrix.
    pub fn apply_differential(&self, n: usize, x: &[F::Elem]) -> Result<Vec<F::Elem>> {
        if x.len() != self.cochain_dim(n) {
            return Err(Error::DimensionMismatch(format!("cochain of length {} in degree {n}", x.len())));
        }
        let f = self.field();
        Ok((0..self.cochain_dim(n + 1))
            .into_par_iter()
            .map(|row| {
                let mut acc = f.zero();
                for (j, c) in self.differential_row(n, row) {
                    f.mul_add_assign(&mut acc, &c, &x[j]);
                }
                acc
            })
            .collect())
    }

    /// First row of `d^{n+1} d^n` that is nonzero, streaming over rows so
    /// neither matrix is stored.
    pub fn first_nonzero_dd_row(&self, n: usize) -> Option<usize> {
        let f = self.field();
        (0..self.cochain_dim(n + 2)).into_par_iter().find_first(|&row| {
            let mut acc = Vec::new();
            for (k, c) in self.differential_row(n + 1, row) {
                for (j, x) in self.differential_row(n, k) {
                    acc.push((j, f.mul(&c, &x)));
                }
            }
            !canonical(f, acc).is_empty()
        })
    }

    /// `h^n : C^n -> C^{n-1}`, `h^n(f)(a_1..a_{n-1}) = sum_j (-1)^j f(a_1..a_j, c, a_{j+1}..)`.
    /// Zero for `n = 0`. Rejects non-central `c`.
    pub fn homotopy_matrix(&self, c: &[F::Elem], n: usize) -> Result<Matrix<F>> {
        let f = self.field();
        let (d, m) = (self.d(), self.m());
        if c.len() != d {
            return Err(Error::DimensionMismatch(format!("element of length {} in a {d}-dimensional algebra", c.len())));
        }
        for i in 0..d {
            let e = self.alg.basis(i);
            if self.alg.mul(c, &e) != self.alg.mul(&e, c) {
                return Err(Error::NotCentral);
            }
        }
        if n == 0 {
            return Ok(Matrix::zeros(f, 0, m));
        }
        self.guard("homotopy", n)?;
        let cs: Vec<(usize, F::Elem)> = c.iter().enumerate().filter(|(_, x)| !f.is_zero(x)).map(|(k, x)| (k, x.clone())).collect();
        let rows = (0..self.cochain_dim(n - 1))
            .map(|row| {
                let (j, r) = (row / m, row % m);
                let mut out = Vec::new();
                let mut sign = f.one();
                for pos in 0..n {
                    let low = d.pow((n - 1 - pos) as u32);
                    let (prefix, suffix) = (j / low, j % low);
                    for (k, x) in &cs {
                        let jj = (prefix * d + k) * low + suffix;
                        out.push((jj * m + r, f.mul(&sign, x)));
                    }
                    sign = f.neg(&sign);
                }
                canonical(f, out)
            })
            .collect();
        Ok(Matrix::from_sparse_rows(f, self.cochain_dim(n), rows))
    }

    /// `f -> c.f` on `C^n`.
    pub fn left_action_matrix(&self, c: &[F::Elem], n: usize) -> Result<Matrix<F>> {
        self.guard("left action", n)?;
        Ok(Matrix::block_diagonal(&self.module.left_of(c), self.d().pow(n as u32)))
    }

    /// `f -> f.c` on `C^n`.
    pub fn right_action_matrix(&self, c: &[F::Elem], n: usize) -> Result<Matrix<F>> {
        self.guard("right action", n)?;
        Ok(Matrix::block_diagonal(&self.module.right_of(c), self.d().pow(n as u32)))
    }

    /// `HH^n(A, M)` with deterministic representatives.
    pub fn cohomology(&self, n: usize) -> Result<CohomologySpace<F>> {
        self.guard("cohomology", n + 1)?;
        let f = self.field();
        let dim = self.cochain_dim(n);
        let cocycles = kernel_basis(&self.differential_matrix(n)?);
        let coboundaries = if n == 0 {
            Subspace::zero(f, dim)
        } else {
            Subspace::column_space(&self.differential_matrix(n - 1)?)
        };
        // kernel vectors reduced against the image, then echelonised
        let residues = cocycles.basis().iter().map(|b| coboundaries.reduce(b));
        let representatives = Subspace::span(f, dim, residues).basis().to_vec();
        let reducer = QuotientReducer::new(&coboundaries, &representatives)?;
        Ok(CohomologySpace { degree: n, cochain_dim: dim, cocycles, coboundaries, representatives, reducer })
    }
}

/// `HH^n(A, M)`: cocycles, coboundaries and a basis of representatives.
pub struct CohomologySpace<F: Field> {
    pub degree: usize,
    pub cochain_dim: usize,
    pub cocycles: Subspace<F>,
    pub coboundaries: Subspace<F>,
    pub representatives: Vec<SparseVec<F::Elem>>,
    reducer: QuotientReducer<F>,
}

impl<F: Field> CohomologySpace<F> {
    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    /// Class of a cocycle in the representative basis; `None` when `w` is
    /// not a cocycle.
    pub fn class_of(&self, w: &[(usize, F::Elem)]) -> Result<Option<Vec<F::Elem>>> {
        if !self.cocycles.contains(w) {
            return Ok(None);
        }
        self.reducer.coordinates(w)
    }

    /// Matrix of the map induced by `f_n : C^n(src) -> C^n(tgt)`, taking
    /// `self` as the source and `tgt` as the target cohomology.
    pub fn induced_map(&self, f_n: &Matrix<F>, tgt: &CohomologySpace<F>) -> Result<Matrix<F>> {
        let field = f_n.field();
        if f_n.cols() != self.cochain_dim || f_n.rows() != tgt.cochain_dim {
            return Err(Error::DimensionMismatch(format!(
                "map is {}x{}, cohomology lives in {} and {}",
                f_n.rows(),
                f_n.cols(),
                tgt.cochain_dim,
                self.cochain_dim
            )));
        }
        let mut cols = Vec::with_capacity(self.dim());
        for (k, rep) in self.representatives.iter().enumerate() {
            let image = f_n.mul_sparse(rep);
            let c = tgt.class_of(&image)?.ok_or_else(|| {
                Error::Verification(format!("image of representative {k} in degree {} is not a cocycle", self.degree))
            })?;
            cols.push(c);
        }
        Ok(Matrix::from_columns(field, tgt.dim(), &cols))
    }
}

impl<F: Field> std::fmt::Debug for CohomologySpace<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "HH^{} (dim {} in C^{} of dim {})", self.degree, self.dim(), self.degree, self.cochain_dim)
    }
}

/// `F^{n+1} d^n = d^n F^n` for maps between two complexes; returns the
/// first differing column.
pub fn cochain_map_defect<F: Field>(
    src: &Complex<F>,
    tgt: &Complex<F>,
    n: usize,
    f_n: &Matrix<F>,
    f_next: &Matrix<F>,
) -> Result<Option<usize>> {
    let lhs = f_next.mul(&src.differential_matrix(n)?)?;
    let rhs = tgt.differential_matrix(n)?.mul(f_n)?;
    Ok(lhs.first_differing_column(&rhs))
}

#[cfg(test)]
mod tests;
