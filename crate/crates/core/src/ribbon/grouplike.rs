use crate::error::{Error, Result};
use crate::hopf::{Elem, HopfPresentation};
use crate::linalg::{solve, Matrix, SparseVec, Subspace};
use crate::scalar::Field;

/// Product in the dual algebra: `(phi_i phi_j)` has coordinate
/// `Delta(e_k)[i, j]` on `phi_k`. Returned as `dual[i][j] = sparse vector`.
fn dual_table<F: Field>(h: &HopfPresentation<F>) -> Vec<Vec<SparseVec<F::Elem>>> {
    let d = h.dim();
    let mut t: Vec<Vec<SparseVec<F::Elem>>> = vec![vec![Vec::new(); d]; d];
    for k in 0..d {
        for (ij, c) in h.comult(k) {
            t[ij / d][ij % d].push((k, c.clone()));
        }
    }
    t
}

fn dual_mul<F: Field>(f: &F, table: &[Vec<SparseVec<F::Elem>>], x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
    let d = x.len();
    let mut out = vec![f.zero(); d];
    for (i, a) in x.iter().enumerate() {
        if f.is_zero(a) {
            continue;
        }
        for (j, b) in y.iter().enumerate() {
            if f.is_zero(b) {
                continue;
            }
            let ab = f.mul(a, b);
            for (k, c) in &table[i][j] {
                f.mul_add_assign(&mut out[*k], &ab, c);
            }
        }
    }
    out
}

/// Ascending coefficients of the minimal polynomial of `x` in the dual
/// algebra (unit `eps`).
fn minimal_polynomial<F: Field>(
    h: &HopfPresentation<F>,
    table: &[Vec<SparseVec<F::Elem>>],
    x: &[F::Elem],
) -> Result<Vec<F::Elem>> {
    let f = h.field();
    let d = h.dim();
    let mut powers: Vec<Vec<F::Elem>> = vec![h.counit().to_vec()];
    loop {
        let next = dual_mul(f, table, x, powers.last().expect("nonempty"));
        let span = Subspace::span_dense(f, d, &powers);
        if span.contains_dense(&next) {
            let m = Matrix::from_columns(f, d, &powers);
            let c = solve(&m, &next)?.ok_or_else(|| Error::Invalid("minimal polynomial solve".into()))?;
            let mut poly: Vec<F::Elem> = c.iter().map(|v| f.neg(v)).collect();
            poly.push(f.one());
            return Ok(poly);
        }
        powers.push(next);
    }
}

/// All grouplike elements (`Delta(g) = g (x) g`, `eps(g) = 1`).
///
/// A grouplike `g` is a character `phi -> phi(g)` of the dual algebra, so its
/// coordinate `g_i = phi_i(g)` is a root of the minimal polynomial of
/// `phi_i`. Coordinates are fixed one at a time; each choice adds the linear
/// conditions `sum_k Delta(e_k)[i, l] g_k = g_i g_l`, and branches whose
/// linear system becomes inconsistent are dropped.
pub fn grouplikes<F: Field>(h: &HopfPresentation<F>) -> Result<Vec<Elem<F>>> {
    let f = h.field();
    let d = h.dim();
    let table = dual_table(h);
    let mut candidates: Vec<Vec<F::Elem>> = Vec::with_capacity(d);
    for i in 0..d {
        let mut phi = vec![f.zero(); d];
        phi[i] = f.one();
        let poly = minimal_polynomial(h, &table, &phi)?;
        let roots = f.roots(&poly).ok_or_else(|| {
            Error::Unsupported(format!("cannot find roots of a degree {} polynomial over {}", poly.len() - 1, f.spec()))
        })?;
        candidates.push(roots);
    }
    let mut base_rows: Vec<SparseVec<F::Elem>> = Vec::new();
    let mut base_rhs: Vec<F::Elem> = Vec::new();
    base_rows.push(h.counit().iter().enumerate().filter(|(_, c)| !f.is_zero(c)).map(|(k, c)| (k, c.clone())).collect());
    base_rhs.push(f.one());
    let mut out = Vec::new();
    let mut assigned: Vec<F::Elem> = Vec::with_capacity(d);
    search(f, d, &table, &candidates, &mut assigned, &mut base_rows, &mut base_rhs, &mut out)?;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn search<F: Field>(
    f: &F,
    d: usize,
    table: &[Vec<SparseVec<F::Elem>>],
    candidates: &[Vec<F::Elem>],
    assigned: &mut Vec<F::Elem>,
    rows: &mut Vec<SparseVec<F::Elem>>,
    rhs: &mut Vec<F::Elem>,
    out: &mut Vec<Elem<F>>,
) -> Result<()> {
    let m = Matrix::from_sparse_rows(f, d, rows.clone());
    if solve(&m, rhs)?.is_none() {
        return Ok(());
    }
    let i = assigned.len();
    if i == d {
        out.push(assigned.clone());
        return Ok(());
    }
    for lambda in &candidates[i] {
        let before = rows.len();
        rows.push(vec![(i, f.one())]);
        rhs.push(lambda.clone());
        // g L_i = lambda g, coordinate by coordinate
        for l in 0..d {
            let mut row: SparseVec<F::Elem> = table[i][l].clone();
            row.push((l, f.neg(lambda)));
            rows.push(row);
            rhs.push(f.zero());
        }
        assigned.push(lambda.clone());
        search(f, d, table, candidates, assigned, rows, rhs, out)?;
        assigned.pop();
        rows.truncate(before);
        rhs.truncate(before);
    }
    Ok(())
}
