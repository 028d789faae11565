use serde::Serialize;

use super::{adjoint_matrix, frak_s_matrix, frak_t_matrix, transmutation_antipode, RibbonData};
use crate::error::{Error, Result};
use crate::hopf::{center_basis, HopfPresentation, Report};
use crate::linalg::{Matrix, Subspace};
use crate::scalar::Field;

/// `lambda` with `x = lambda y`, if one exists (`y` nonzero).
pub(crate) fn scalar_ratio<F: Field>(x: &Matrix<F>, y: &Matrix<F>) -> Option<F::Elem> {
    let f = x.field();
    let (i, row) = y.row_vecs().iter().enumerate().find(|(_, r)| !r.is_empty())?;
    let (j, c) = &row[0];
    let lambda = f.div(&x.get(i, *j), c).ok()?;
    (y.scale(&lambda) == *x).then_some(lambda)
}

pub(crate) fn fmt_matrix<F: Field>(m: &Matrix<F>) -> String {
    let f = m.field();
    let rows: Vec<String> = m
        .to_dense()
        .iter()
        .map(|r| format!("[{}]", r.iter().map(|x| f.format(x)).collect::<Vec<_>>().join(", ")))
        .collect();
    format!("[{}]", rows.join(", "))
}

/// Restriction of `m` to an invariant subspace, in coordinates of its basis.
pub(crate) fn restrict<F: Field>(m: &Matrix<F>, space: &Subspace<F>) -> Result<Matrix<F>> {
    let f = m.field();
    let mut cols = Vec::with_capacity(space.dim());
    for b in space.basis() {
        let image = m.mul_sparse(b);
        let c = space
            .coordinates(&image)
            .ok_or_else(|| Error::Verification("map does not preserve the subspace".into()))?;
        cols.push(c);
    }
    Ok(Matrix::from_columns(f, space.dim(), &cols))
}

/// Outcome of the center-level modular relations.
#[derive(Debug, Clone)]
pub struct CenterRelations<F: Field> {
    pub report: Report,
    pub s: Matrix<F>,
    pub t: Matrix<F>,
    pub transmutation: Matrix<F>,
    pub center: Subspace<F>,
    /// Restrictions of the S- and T-maps to the center, in its basis.
    pub s_bar: Matrix<F>,
    pub t_bar: Matrix<F>,
    pub sigma_sts: Option<F::Elem>,
    pub sigma_s4: Option<F::Elem>,
    pub linear: bool,
}

#[derive(Serialize)]
struct Scalars {
    sigma_sts: Option<String>,
    sigma_s4: Option<String>,
}

impl<F: Field> CenterRelations<F> {
    pub fn scalars_json(&self) -> serde_json::Value {
        let f = self.s.field();
        serde_json::to_value(Scalars {
            sigma_sts: self.sigma_sts.as_ref().map(|x| f.format(x)),
            sigma_s4: self.sigma_s4.as_ref().map(|x| f.format(x)),
        })
        .expect("serializable")
    }
}

/// `S T S = rho(v) T^-1 S T^-1`, `S^2 = omega transmutation^-1`, the
/// transmutation antipode squared is `ad(- (x) v)` and agrees with `S` on
/// the center, and the projective action on the center. Without a ribbon
/// element the relations involving `v` are reported as failed.
pub fn check_center_relations<F: Field>(h: &HopfPresentation<F>, data: &RibbonData<F>) -> Result<CenterRelations<F>> {
    let f = h.field();
    let d = h.dim();
    let mut rep = Report::new("center relations");
    let s = frak_s_matrix(h, &data.q, &data.rho)?;
    let st = transmutation_antipode(h, &data.r, &data.u_inv)?;
    let st_inv = st
        .inverse()?
        .ok_or_else(|| Error::Verification("transmutation antipode is not invertible".into()))?;

    let s2 = s.mul(&s)?;
    let rhs = st_inv.scale(&data.omega);
    rep.check(s2 == rhs, "S^2 = omega transmutation^-1", &[], || (fmt_matrix(&s2), fmt_matrix(&rhs)));
    if let Some(lambda) = scalar_ratio(&s2, &st_inv) {
        rep.check(lambda == data.omega, "S^2 scalar = (rho x rho)(Q)", &[], || {
            (f.format(&lambda), f.format(&data.omega))
        });
    }
    let s4 = s2.mul(&s2)?;
    let rhs = st_inv.mul(&st_inv)?.scale(&f.mul(&data.omega, &data.omega));
    rep.check(s4 == rhs, "S^4 = omega^2 transmutation^-2", &[], || (fmt_matrix(&s4), fmt_matrix(&rhs)));

    let center = center_basis(h.algebra());
    for (k, z) in center.basis().iter().enumerate() {
        let a = st.mul_sparse(z);
        let b = h.antipode().mul_sparse(z);
        rep.check(a == b, "transmutation = S on the center", &[k], || {
            (crate::hopf::fmt_sparse(f, &a), crate::hopf::fmt_sparse(f, &b))
        });
    }
    let s_bar = restrict(&s, &center)?;
    let n = center.dim();
    let s_bar4 = s_bar.pow(4)?;
    let sigma_s4 = scalar_ratio(&s_bar4, &Matrix::identity(f, n));
    rep.check(sigma_s4.is_some(), "s^4 ~ id on the center", &[], || (fmt_matrix(&s_bar4), "a scalar matrix".into()));

    let one = f.one();
    let m1 = f.neg(&one);
    let pm = |x: &F::Elem| *x == one || *x == m1;
    let linear = pm(&data.omega);
    let Some(tw) = &data.twist else {
        for check in ["STS = rho(v) T^-1 S T^-1", "transmutation^2 = ad(- x v)", "sts ~ t^-1 s t^-1 on the center"] {
            rep.fail(check, &[], || ("no ribbon element".into(), "a ribbon element".into()));
        }
        let t = Matrix::identity(f, d);
        let t_bar = Matrix::identity(f, n);
        return Ok(CenterRelations { report: rep, s, t, transmutation: st, center, s_bar, t_bar, sigma_sts: None, sigma_s4, linear });
    };
    let t = frak_t_matrix(h, &tw.v);
    let t_inv = frak_t_matrix(h, &tw.v_inv);
    let lhs = Matrix::chain(&[&s, &t, &s])?;
    let rhs = Matrix::chain(&[&t_inv, &s, &t_inv])?.scale(&tw.rho_v);
    rep.check(lhs == rhs, "STS = rho(v) T^-1 S T^-1", &[], || (fmt_matrix(&lhs), fmt_matrix(&rhs)));
    let st2 = st.mul(&st)?;
    let ad_v = adjoint_matrix(h, &tw.v);
    rep.check(st2 == ad_v, "transmutation^2 = ad(- x v)", &[], || (fmt_matrix(&st2), fmt_matrix(&ad_v)));

    let t_bar = restrict(&t, &center)?;
    let t_bar_inv = restrict(&t_inv, &center)?;
    let lhs = Matrix::chain(&[&s_bar, &t_bar, &s_bar])?;
    let rhs = Matrix::chain(&[&t_bar_inv, &s_bar, &t_bar_inv])?;
    let sigma_sts = scalar_ratio(&lhs, &rhs);
    rep.check(sigma_sts.is_some(), "sts ~ t^-1 s t^-1 on the center", &[], || (fmt_matrix(&lhs), fmt_matrix(&rhs)));
    if f.is_one(&tw.rho_v) {
        rep.check(linear == pm(&tw.rho_vinv), "omega = +-1 iff rho(v^-1) = +-1", &[], || {
            (f.format(&data.omega), f.format(&tw.rho_vinv))
        });
    }
    Ok(CenterRelations { report: rep, s, t, transmutation: st, center, s_bar, t_bar, sigma_sts, sigma_s4, linear })
}
