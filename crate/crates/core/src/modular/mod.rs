//! Cochain-level modular maps on `C(A, A)` and the projective `SL(2,Z)`
//! action they induce on Hochschild cohomology.

mod factors;
mod sl2z;

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hochschild::{cochain_map_defect, Complex};
use crate::hopf::{
    coadjoint_action_matrix, dual_bimodule, twist_eps_ad, twist_eps_cad, twist_s2inv, BimodulePresentation,
    HopfPresentation, Report,
};
use crate::linalg::{solve, Matrix};
use crate::ribbon::{fmt_matrix, scalar_ratio};
use crate::ribbon::{adjoint_matrix, drinfeld_matrix, frak_s_matrix, frak_t_matrix, radford_matrix, RibbonData};
use crate::scalar::Field;

use factors::{omega_matrix, slot_factor, LegFormula, SlotKind};
pub use sl2z::{act, sl2z_multiply, sl2z_word, Letter};

type Builder<F> = Box<dyn Fn(usize) -> Result<Matrix<F>> + Send + Sync>;

/// Per-degree matrices of a cochain map `C(A, M) -> C(A, N)`, built on
/// demand and cached.
pub struct CochainMapFamily<F: Field> {
    name: String,
    path: String,
    source: Arc<Complex<F>>,
    target: Arc<Complex<F>>,
    build: Builder<F>,
    cache: Mutex<BTreeMap<usize, Arc<Matrix<F>>>>,
}

impl<F: Field> std::fmt::Debug for CochainMapFamily<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let degrees: Vec<usize> = self.cache.lock().map(|c| c.keys().copied().collect()).unwrap_or_default();
        write!(f, "{} [{}] cached degrees {:?}", self.name, self.path, degrees)
    }
}

impl<F: Field> CochainMapFamily<F> {
    pub fn new(
        name: impl Into<String>,
        path: impl Into<String>,
        source: Arc<Complex<F>>,
        target: Arc<Complex<F>>,
        build: impl Fn(usize) -> Result<Matrix<F>> + Send + Sync + 'static,
    ) -> Self {
        CochainMapFamily {
            name: name.into(),
            path: path.into(),
            source,
            target,
            build: Box::new(build),
            cache: Mutex::new(BTreeMap::new()),
        }
    }

    /// `block` applied to every value, i.e. `phi_*`.
    pub fn pushforward(name: &str, source: Arc<Complex<F>>, target: Arc<Complex<F>>, block: Matrix<F>) -> Self {
        let d = source.algebra().dim();
        Self::new(name, "composition on values", source, target, move |n| {
            Ok(Matrix::block_diagonal(&block, d.pow(n as u32)))
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn path(&self) -> &str {
        &self.path
    }

    pub fn source(&self) -> &Arc<Complex<F>> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Complex<F>> {
        &self.target
    }

    pub fn matrix(&self, n: usize) -> Result<Arc<Matrix<F>>> {
        if let Some(m) = self.cache.lock().expect("cache lock").get(&n) {
            return Ok(m.clone());
        }
        self.source.guard(&self.name, n)?;
        self.target.guard(&self.name, n)?;
        let m = (self.build)(n)?;
        let (rows, cols) = (self.target.cochain_dim(n), self.source.cochain_dim(n));
        if m.rows() != rows || m.cols() != cols {
            return Err(Error::DimensionMismatch(format!(
                "{} in degree {n} is {}x{}, expected {rows}x{cols}",
                self.name,
                m.rows(),
                m.cols()
            )));
        }
        let m = Arc::new(m);
        self.cache.lock().expect("cache lock").insert(n, m.clone());
        Ok(m)
    }

    /// First column where `F^{n+1} d^n` and `d^n F^n` differ.
    pub fn cochain_defect(&self, n: usize) -> Result<Option<usize>> {
        self.target.guard("differential", n + 1)?;
        self.source.guard("differential", n + 1)?;
        cochain_map_defect(&self.source, &self.target, n, &*self.matrix(n)?, &*self.matrix(n + 1)?)
    }

    /// Cochain-map property in degrees `0..=max`.
    pub fn verify_cochain(&self, max: usize) -> Result<Report> {
        let mut rep = Report::new(format!("{} is a cochain map", self.name));
        for n in 0..=max {
            let defect = self.cochain_defect(n)?;
            rep.check(defect.is_none(), "F d = d F", &[n], || {
                (format!("degree {n}, column {}", defect.unwrap_or(0)), "equal".into())
            });
        }
        Ok(rep)
    }

    pub fn clear_cache(&self) {
        self.cache.lock().expect("cache lock").clear();
    }
}

/// Exact equality or a fatal mismatch naming the first differing column.
fn agree<F: Field>(what: &str, n: usize, a: &Matrix<F>, b: &Matrix<F>) -> Result<()> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(Error::InternalMismatch { what: what.into(), degree: n, column: 0 });
    }
    match a.first_differing_column(b) {
        Some(column) => Err(Error::InternalMismatch { what: what.into(), degree: n, column }),
        None => Ok(()),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Ad,
    Cad,
}

/// `Omega` (ad) or `Omega'` (cad) from `C(A, ^eps M_var)` to `C(A, M)`,
/// and its inverse built from the inverse formula.
pub fn omega_family<F: Field>(
    h: &HopfPresentation<F>,
    m: &BimodulePresentation<F>,
    variant: Variant,
) -> Result<(CochainMapFamily<F>, CochainMapFamily<F>)> {
    let twisted = match variant {
        Variant::Ad => twist_eps_ad(h, m),
        Variant::Cad => twist_eps_cad(h, m),
    };
    let src = Arc::new(Complex::new(h.algebra(), &twisted)?);
    let tgt = Arc::new(Complex::new(h.algebra(), m)?);
    Ok(omega_family_on(h, m, variant, src, tgt))
}

fn omega_family_on<F: Field>(
    h: &HopfPresentation<F>,
    m: &BimodulePresentation<F>,
    variant: Variant,
    src: Arc<Complex<F>>,
    tgt: Arc<Complex<F>>,
) -> (CochainMapFamily<F>, CochainMapFamily<F>) {
    let (fwd, inv, name) = match variant {
        Variant::Ad => (SlotKind::Ad, SlotKind::AdInverse, "Omega"),
        Variant::Cad => (SlotKind::Cad, SlotKind::CadInverse, "Omega'"),
    };
    let (h1, m1) = (h.clone(), m.clone());
    let forward = CochainMapFamily::new(name, "product of per-slot factors", src.clone(), tgt.clone(), move |n| {
        omega_matrix(&h1, &m1, n, fwd)
    });
    let (h2, m2) = (h.clone(), m.clone());
    let inverse = CochainMapFamily::new(format!("{name}^-1"), "inverse formula", tgt, src, move |n| {
        omega_matrix(&h2, &m2, n, inv)
    });
    (forward, inverse)
}

/// `T_k U_k = U_k T_k = id` for every slot of `C^n`, which makes the
/// inverse formula a two-sided inverse of `Omega^n` without forming it.
pub fn verify_omega_factors<F: Field>(
    h: &HopfPresentation<F>,
    m: &BimodulePresentation<F>,
    variant: Variant,
    n: usize,
) -> Result<Report> {
    let (fwd, inv) = match variant {
        Variant::Ad => (SlotKind::Ad, SlotKind::AdInverse),
        Variant::Cad => (SlotKind::Cad, SlotKind::CadInverse),
    };
    let mut rep = Report::new(format!("{variant:?} slot factors invert, degree {n}"));
    let dim = m.dim() * h.dim().pow(n as u32);
    let id = Matrix::identity(h.field(), dim);
    for k in 0..n {
        let t = slot_factor(h, m, n, k, fwd);
        let u = slot_factor(h, m, n, k, inv);
        let tu = t.mul(&u)?;
        rep.check(tu == id, "T_k U_k = id", &[k], || (format!("column {:?}", tu.first_differing_column(&id)), "id".into()));
        let ut = u.mul(&t)?;
        rep.check(ut == id, "U_k T_k = id", &[k], || (format!("column {:?}", ut.first_differing_column(&id)), "id".into()));
    }
    Ok(rep)
}

/// The twisted left/right action matrices of `^eps((A_{S^-2})^*)_ad`
/// against the coadjoint action.
pub fn verify_coadjoint_identification<F: Field>(h: &HopfPresentation<F>) -> Report {
    let f = h.field();
    let d = h.dim();
    let tw = twist_eps_ad(h, &dual_bimodule(&twist_s2inv(h)));
    let mut rep = Report::new("^eps((A_{S^-2})^*)_ad = ^eps(A^*)_coad");
    for a in 0..d {
        let coad = coadjoint_action_matrix(h, a);
        rep.check(*tw.right(a) == coad, "right action", &[a], || (fmt_matrix(tw.right(a)), fmt_matrix(&coad)));
        let eps = Matrix::scalar(f, d, &h.counit()[a]);
        rep.check(*tw.left(a) == eps, "left action", &[a], || (fmt_matrix(tw.left(a)), fmt_matrix(&eps)));
    }
    rep
}

/// `phi` commutes with both actions.
pub fn verify_bimodule_map<F: Field>(
    name: &str,
    phi: &Matrix<F>,
    src: &BimodulePresentation<F>,
    tgt: &BimodulePresentation<F>,
) -> Result<Report> {
    let mut rep = Report::new(name);
    for a in 0..src.algebra_dim() {
        for (side, s, t) in [("left", src.left(a), tgt.left(a)), ("right", src.right(a), tgt.right(a))] {
            let lhs = phi.mul(s)?;
            let rhs = t.mul(phi)?;
            rep.check(lhs == rhs, side, &[a], || (fmt_matrix(&lhs), fmt_matrix(&rhs)));
        }
    }
    Ok(rep)
}

fn drinfeld_blocks<F: Field>(h: &HopfPresentation<F>, q: &[F::Elem]) -> Vec<Matrix<F>> {
    let f = h.field();
    let a = h.algebra();
    let d = h.dim();
    let qs: Vec<(usize, usize, &F::Elem)> =
        q.iter().enumerate().filter(|(_, c)| !f.is_zero(c)).map(|(k, c)| (k / d, k % d, c)).collect();
    let mut blocks = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            let mut acc = vec![vec![f.zero(); d]; d];
            for (p, s, c) in &qs {
                for (r, x) in a.product(*p, i) {
                    let cx = f.mul(c, x);
                    for (t, y) in a.product(j, *s) {
                        f.mul_add_assign(&mut acc[*t][*r], &cx, y);
                    }
                }
            }
            blocks.push(Matrix::from_dense(f, &acc));
        }
    }
    blocks
}

fn antipode_blocks<F: Field>(h: &HopfPresentation<F>) -> Vec<Matrix<F>> {
    let a = h.algebra();
    let d = h.dim();
    let mut blocks = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            let cols: Vec<Vec<F::Elem>> =
                (0..d).map(|r| a.mul_all(&[&a.basis(i), &h.antipode().column(r), &a.basis(j)])).collect();
            blocks.push(Matrix::from_columns(h.field(), d, &cols));
        }
    }
    blocks
}

fn frak_s_blocks<F: Field>(h: &HopfPresentation<F>, q: &[F::Elem], rho: &[F::Elem]) -> Vec<Matrix<F>> {
    let f = h.field();
    let a = h.algebra();
    let d = h.dim();
    // rho(e_k e_p)
    let pairing: Vec<Vec<F::Elem>> = (0..d)
        .map(|k| (0..d).map(|p| a.product(k, p).iter().fold(f.zero(), |acc, (t, c)| f.add(&acc, &f.mul(c, &rho[*t])))).collect())
        .collect();
    let qs: Vec<(usize, usize, &F::Elem)> =
        q.iter().enumerate().filter(|(_, c)| !f.is_zero(c)).map(|(k, c)| (k / d, k % d, c)).collect();
    let s_cols: Vec<Vec<F::Elem>> = (0..d).map(|b| h.antipode().column(b)).collect();
    let mut blocks = Vec::with_capacity(d * d);
    for i in 0..d {
        // rho(e_i e_r e_p) for all r, p
        let triple: Vec<Vec<F::Elem>> = (0..d)
            .map(|r| {
                (0..d)
                    .map(|p| a.product(i, r).iter().fold(f.zero(), |acc, (k, c)| f.add(&acc, &f.mul(c, &pairing[*k][p]))))
                    .collect()
            })
            .collect();
        for j in 0..d {
            let tails: Vec<Vec<F::Elem>> = s_cols.iter().map(|sb| a.mul(&a.basis(j), sb)).collect();
            let mut acc = vec![vec![f.zero(); d]; d];
            for (p, b, c) in &qs {
                for r in 0..d {
                    let w = f.mul(c, &triple[r][*p]);
                    if f.is_zero(&w) {
                        continue;
                    }
                    for (t, y) in tails[*b].iter().enumerate() {
                        if !f.is_zero(y) {
                            f.mul_add_assign(&mut acc[t][r], &w, y);
                        }
                    }
                }
            }
            blocks.push(Matrix::from_dense(f, &acc));
        }
    }
    blocks
}

/// Closed formula for `Phi-bar^n : C(A, (A_{S^-2})^*) -> C(A, A)`.
pub fn drinfeld_explicit<F: Field>(h: &HopfPresentation<F>, q: &[F::Elem], n: usize) -> Matrix<F> {
    let d = h.dim();
    LegFormula {
        f_leg: 1,
        x_leg: 0,
        x_reverse: true,
        x_map: Some(h.antipode_inv()),
        y_leg: 2,
        m_in: d,
        m_out: d,
        blocks: drinfeld_blocks(h, q),
    }
    .assemble(h, n)
}

/// Closed formula for `S^n : C(A, A) -> C(A, A)`.
pub fn antipode_explicit<F: Field>(h: &HopfPresentation<F>, n: usize) -> Matrix<F> {
    let d = h.dim();
    LegFormula { f_leg: 1, x_leg: 0, x_reverse: false, x_map: None, y_leg: 2, m_in: d, m_out: d, blocks: antipode_blocks(h) }
        .assemble(h, n)
}

/// Closed formula for the modular `S`-map on `C^n(A, A)`.
pub fn frak_s_explicit<F: Field>(h: &HopfPresentation<F>, q: &[F::Elem], rho: &[F::Elem], n: usize) -> Matrix<F> {
    let d = h.dim();
    LegFormula {
        f_leg: 2,
        x_leg: 1,
        x_reverse: true,
        x_map: Some(h.antipode()),
        y_leg: 0,
        m_in: d,
        m_out: d,
        blocks: frak_s_blocks(h, q, rho),
    }
    .assemble(h, n)
}

/// All complexes and cochain maps of the modular construction for one
/// factorizable quasitriangular Hopf algebra.
pub struct ModularCochains<F: Field> {
    pub hopf: HopfPresentation<F>,
    pub data: RibbonData<F>,
    /// `C(A, A)`
    pub regular: Arc<Complex<F>>,
    /// `C(A, ^eps A_ad)`
    pub adjoint: Arc<Complex<F>>,
    /// `C(A, ^eps A_cad)`
    pub coadjoint_twist: Arc<Complex<F>>,
    /// `C(A, (A_{S^-2})^*)`
    pub dual: Arc<Complex<F>>,
    /// `C(A, ^eps((A_{S^-2})^*)_ad)`
    pub dual_adjoint: Arc<Complex<F>>,
    pub omega: Arc<CochainMapFamily<F>>,
    pub omega_inv: Arc<CochainMapFamily<F>>,
    pub omega_cad: Arc<CochainMapFamily<F>>,
    pub omega_cad_inv: Arc<CochainMapFamily<F>>,
    pub omega_dual: Arc<CochainMapFamily<F>>,
    pub omega_dual_inv: Arc<CochainMapFamily<F>>,
    /// `iota^n : C(A, A) -> C(A, (A_{S^-2})^*)`
    pub radford: Arc<CochainMapFamily<F>>,
    /// `iota_*` between the ad-twisted complexes
    pub radford_twisted: Arc<CochainMapFamily<F>>,
    pub drinfeld_twisted: Arc<CochainMapFamily<F>>,
    pub drinfeld: Arc<CochainMapFamily<F>>,
    pub antipode_twisted: Arc<CochainMapFamily<F>>,
    pub antipode: Arc<CochainMapFamily<F>>,
    pub frak_s_twisted: Arc<CochainMapFamily<F>>,
    pub frak_s: Arc<CochainMapFamily<F>>,
    pub frak_t: Option<Arc<CochainMapFamily<F>>>,
    pub frak_t_inv: Option<Arc<CochainMapFamily<F>>>,
    pub frak_t_twisted: Option<Arc<CochainMapFamily<F>>>,
}

impl<F: Field> ModularCochains<F> {
    pub fn new(h: &HopfPresentation<F>, data: &RibbonData<F>) -> Result<Self> {
        let alg = h.algebra();
        let d = h.dim();
        let reg_mod = BimodulePresentation::regular(alg);
        let dual_mod = dual_bimodule(&twist_s2inv(h));
        let regular = Arc::new(Complex::regular(alg));
        let adjoint = Arc::new(Complex::new(alg, &twist_eps_ad(h, &reg_mod))?);
        let coadjoint_twist = Arc::new(Complex::new(alg, &twist_eps_cad(h, &reg_mod))?);
        let dual = Arc::new(Complex::new(alg, &dual_mod)?);
        let dual_adjoint = Arc::new(Complex::new(alg, &twist_eps_ad(h, &dual_mod))?);

        let (o, oi) = omega_family_on(h, &reg_mod, Variant::Ad, adjoint.clone(), regular.clone());
        let (oc, oci) = omega_family_on(h, &reg_mod, Variant::Cad, coadjoint_twist.clone(), regular.clone());
        let (od, odi) = omega_family_on(h, &dual_mod, Variant::Ad, dual_adjoint.clone(), dual.clone());
        let (omega, omega_inv) = (Arc::new(o), Arc::new(oi));
        let (omega_cad, omega_cad_inv) = (Arc::new(oc), Arc::new(oci));
        let (mut od, mut odi) = (od, odi);
        od.name = "Omega''".into();
        odi.name = "Omega''^-1".into();
        let (omega_dual, omega_dual_inv) = (Arc::new(od), Arc::new(odi));

        let iota = radford_matrix(h, &data.rho);
        if iota.inverse()?.is_none() {
            return Err(Error::Verification("Radford map is not bijective".into()));
        }
        let radford = Arc::new(CochainMapFamily::pushforward("iota", regular.clone(), dual.clone(), iota.clone()));
        let radford_twisted = Arc::new(CochainMapFamily::pushforward("iota_*", adjoint.clone(), dual_adjoint.clone(), iota));

        let phi = drinfeld_matrix(h, &data.q);
        let drinfeld_twisted =
            Arc::new(CochainMapFamily::pushforward("Phi-bar_*", dual_adjoint.clone(), coadjoint_twist.clone(), phi));
        let drinfeld = {
            let (h, q) = (h.clone(), data.q.clone());
            let (a, b, c) = (omega_cad.clone(), drinfeld_twisted.clone(), omega_dual_inv.clone());
            Arc::new(CochainMapFamily::new("Phi-bar", "Omega' Phi-bar_* Omega''^-1 = closed formula", dual.clone(), regular.clone(), move |n| {
                let composite = Matrix::chain(&[&*a.matrix(n)?, &*b.matrix(n)?, &*c.matrix(n)?])?;
                let explicit = drinfeld_explicit(&h, &q, n);
                agree("Phi-bar composite and closed formula", n, &composite, &explicit)?;
                Ok(explicit)
            }))
        };

        let antipode_twisted = Arc::new(CochainMapFamily::pushforward(
            "S_*",
            coadjoint_twist.clone(),
            adjoint.clone(),
            h.antipode().clone(),
        ));
        let antipode = {
            let hh = h.clone();
            let (a, b, c) = (omega.clone(), antipode_twisted.clone(), omega_cad_inv.clone());
            Arc::new(CochainMapFamily::new("S", "Omega S_* Omega'^-1 = closed formula", regular.clone(), regular.clone(), move |n| {
                let composite = Matrix::chain(&[&*a.matrix(n)?, &*b.matrix(n)?, &*c.matrix(n)?])?;
                let explicit = antipode_explicit(&hh, n);
                agree("S composite and closed formula", n, &composite, &explicit)?;
                Ok(explicit)
            }))
        };

        let s0 = frak_s_matrix(h, &data.q, &data.rho)?;
        let frak_s_twisted = Arc::new(CochainMapFamily::pushforward("frak-S_*", adjoint.clone(), adjoint.clone(), s0));
        let frak_s = {
            let (hh, q, rho) = (h.clone(), data.q.clone(), data.rho.clone());
            let (s, phi, iota) = (antipode.clone(), drinfeld.clone(), radford.clone());
            let (o, st, oi) = (omega.clone(), frak_s_twisted.clone(), omega_inv.clone());
            Arc::new(CochainMapFamily::new(
                "frak-S",
                "S Phi-bar iota = closed formula = Omega frak-S_* Omega^-1",
                regular.clone(),
                regular.clone(),
                move |n| {
                    let composite = Matrix::chain(&[&*s.matrix(n)?, &*phi.matrix(n)?, &*iota.matrix(n)?])?;
                    let explicit = frak_s_explicit(&hh, &q, &rho, n);
                    let conjugate = Matrix::chain(&[&*o.matrix(n)?, &*st.matrix(n)?, &*oi.matrix(n)?])?;
                    agree("frak-S composite and closed formula", n, &composite, &explicit)?;
                    agree("frak-S closed formula and conjugation", n, &explicit, &conjugate)?;
                    Ok(explicit)
                },
            ))
        };

        let (frak_t, frak_t_inv, frak_t_twisted) = match &data.twist {
            Some(tw) => (
                Some(Arc::new(CochainMapFamily::pushforward("frak-T", regular.clone(), regular.clone(), frak_t_matrix(h, &tw.v)))),
                Some(Arc::new(CochainMapFamily::pushforward(
                    "frak-T^-1",
                    regular.clone(),
                    regular.clone(),
                    frak_t_matrix(h, &tw.v_inv),
                ))),
                Some(Arc::new(CochainMapFamily::pushforward("frak-T_*", adjoint.clone(), adjoint.clone(), frak_t_matrix(h, &tw.v)))),
            ),
            None => (None, None, None),
        };
        debug_assert_eq!(regular.algebra().dim(), d);
        Ok(ModularCochains {
            hopf: h.clone(),
            data: data.clone(),
            regular,
            adjoint,
            coadjoint_twist,
            dual,
            dual_adjoint,
            omega,
            omega_inv,
            omega_cad,
            omega_cad_inv,
            omega_dual,
            omega_dual_inv,
            radford,
            radford_twisted,
            drinfeld_twisted,
            drinfeld,
            antipode_twisted,
            antipode,
            frak_s_twisted,
            frak_s,
            frak_t,
            frak_t_inv,
            frak_t_twisted,
        })
    }

    fn twist_families(&self) -> Result<(&CochainMapFamily<F>, &CochainMapFamily<F>)> {
        match (&self.frak_t, &self.frak_t_inv) {
            (Some(t), Some(ti)) => Ok((t, ti)),
            _ => Err(Error::Unsupported("no ribbon element: the T-map is undefined".into())),
        }
    }

    /// Bimodule-map properties of the degree-0 maps: `Phi-bar` from coad
    /// to cad, `S` from cad to ad, `iota` from `A` to `(A_{S^-2})^*`, and
    /// the modular `S`-map on `^eps A_ad`.
    pub fn verify_bimodule_maps(&self) -> Result<Report> {
        let mut rep = Report::new("degree-0 bimodule isomorphisms");
        let pairs: [(&CochainMapFamily<F>, &str); 4] = [
            (&self.drinfeld_twisted, "Phi-bar: coad -> cad"),
            (&self.antipode_twisted, "S: cad -> ad"),
            (&self.radford, "iota: A -> (A_{S^-2})^*"),
            (&self.frak_s_twisted, "frak-S: ad -> ad"),
        ];
        for (fam, name) in pairs {
            let m = fam.matrix(0)?;
            rep.merge(verify_bimodule_map(name, &m, fam.source().module(), fam.target().module())?);
        }
        Ok(rep)
    }

    /// `Omega'' iota_* = iota Omega` in degrees `0..=max`.
    pub fn verify_radford_square(&self, max: usize) -> Result<Report> {
        let mut rep = Report::new("Omega'' iota_* = iota Omega");
        for n in 0..=max {
            let lhs = self.omega_dual.matrix(n)?.mul(&*self.radford_twisted.matrix(n)?)?;
            let rhs = self.radford.matrix(n)?.mul(&*self.omega.matrix(n)?)?;
            rep.check(lhs == rhs, "square commutes", &[n], || (format!("column {:?}", lhs.first_differing_column(&rhs)), "equal".into()));
        }
        Ok(rep)
    }

    /// `T Omega = Omega T_*` in degrees `0..=max`.
    pub fn verify_twist_square(&self, max: usize) -> Result<Report> {
        let mut rep = Report::new("frak-T Omega = Omega frak-T_*");
        let (t, _) = self.twist_families()?;
        let tt = self.frak_t_twisted.as_ref().expect("present with frak_t");
        for n in 0..=max {
            let lhs = t.matrix(n)?.mul(&*self.omega.matrix(n)?)?;
            let rhs = self.omega.matrix(n)?.mul(&*tt.matrix(n)?)?;
            rep.check(lhs == rhs, "square commutes", &[n], || (format!("column {:?}", lhs.first_differing_column(&rhs)), "equal".into()));
        }
        Ok(rep)
    }

    /// `S T S = rho(v) T^-1 S T^-1` on `C^n(A, A)` for `n = 0..=max`.
    pub fn verify_sts_cochain(&self, max: usize) -> Result<Report> {
        let f = self.hopf.field();
        let (t, ti) = self.twist_families()?;
        let rho_v = &self.data.twist.as_ref().expect("twist present").rho_v;
        let mut rep = Report::new(format!("S T S = rho(v) T^-1 S T^-1 on C^n, n = 0..={max}"));
        for n in 0..=max {
            let (s, t, ti) = (self.frak_s.matrix(n)?, t.matrix(n)?, ti.matrix(n)?);
            let lhs = Matrix::chain(&[&s, &t, &s])?;
            let rhs = Matrix::chain(&[&ti, &s, &ti])?.scale(rho_v);
            rep.check(lhs == rhs, "S T S = rho(v) T^-1 S T^-1", &[n], || {
                (format!("degree {n}, column {:?}", lhs.first_differing_column(&rhs)), format!("rho(v) = {}", f.format(rho_v)))
            });
        }
        Ok(rep)
    }

    /// The central element `c` with `S-bar^-2 = (- <| c)` on `^eps A_ad`
    /// and `eps(c) = 1`: `v^-1` when a ribbon element is known, otherwise
    /// solved for linearly.
    pub fn inverse_twist_element(&self) -> Result<Vec<F::Elem>> {
        if let Some(tw) = &self.data.twist {
            return Ok(tw.v_inv.clone());
        }
        let h = &self.hopf;
        let f = h.field();
        let d = h.dim();
        let st = crate::ribbon::transmutation_antipode(h, &self.data.r, &self.data.u_inv)?;
        let target = st
            .mul(&st)?
            .inverse()?
            .ok_or_else(|| Error::Verification("transmutation antipode is not invertible".into()))?;
        // unknowns c_k: sum_k c_k ad(e_k) = target, c central, eps(c) = 1
        let ads: Vec<Vec<Vec<F::Elem>>> = (0..d).map(|k| adjoint_matrix(h, &h.algebra().basis(k)).to_dense()).collect();
        let tgt = target.to_dense();
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for r in 0..d {
            for c in 0..d {
                rows.push((0..d).map(|k| ads[k][r][c].clone()).collect::<Vec<_>>());
                rhs.push(tgt[r][c].clone());
            }
        }
        let entries = h.algebra().mult_entries();
        // c e_i - e_i c = 0
        let mut comm = vec![vec![vec![f.zero(); d]; d]; d];
        for (i, j, k, x) in entries {
            // e_i e_j = sum x e_k contributes +x for c = e_i (left) and -x for c = e_j (right)
            for (slot, var, sign) in [(j, i, f.one()), (i, j, f.neg(&f.one()))] {
                f.mul_add_assign(&mut comm[slot][k][var], &sign, &x);
            }
        }
        for block in comm {
            for row in block {
                rows.push(row);
                rhs.push(f.zero());
            }
        }
        rows.push(h.counit().to_vec());
        rhs.push(f.one());
        let m = Matrix::from_dense(f, &rows);
        solve(&m, &rhs)?.ok_or_else(|| Error::Unsupported("S-bar^-2 is not the adjoint action of a central element".into()))
    }

    /// `K^n = -omega^2 Omega^{n-1} h^n_c (Omega^n)^-1` with `c` from
    /// [`Self::inverse_twist_element`], checked against
    /// `S^4 - omega^2 id = d K + K d` for `n = 0..=max` and on cohomology.
    pub fn s4_homotopy_witness(&self, max: usize) -> Result<Witness<F>> {
        let h = &self.hopf;
        let f = h.field();
        let c = self.inverse_twist_element()?;
        let w2 = f.mul(&self.data.omega, &self.data.omega);
        let scale = f.neg(&w2);
        let mut k = Vec::with_capacity(max + 2);
        for n in 0..=max + 1 {
            let hn = self.adjoint.homotopy_matrix(&c, n)?;
            k.push(if n == 0 {
                hn
            } else {
                Matrix::chain(&[&*self.omega.matrix(n - 1)?, &hn, &*self.omega_inv.matrix(n)?])?.scale(&scale)
            });
        }
        let mut rep = Report::new(format!("S^4 - omega^2 id = dK + Kd, n = 0..={max}"));
        for n in 0..=max {
            let s = self.frak_s.matrix(n)?;
            let dim = s.rows();
            let lhs = s.pow(4)?.sub(&Matrix::scalar(f, dim, &w2))?;
            let mut rhs = k[n + 1].mul(&self.regular.differential_matrix(n)?)?;
            if n > 0 {
                rhs = rhs.add(&self.regular.differential_matrix(n - 1)?.mul(&k[n])?)?;
            }
            rep.check(lhs == rhs, "witness identity", &[n], || {
                (format!("degree {n}, column {:?}", lhs.first_differing_column(&rhs)), "equal".into())
            });
            let hh = self.regular.cohomology(n)?;
            let induced = hh.induced_map(&s.pow(4)?, &hh)?;
            let expect = Matrix::scalar(f, hh.dim(), &w2);
            rep.check(induced == expect, "S^4 = omega^2 id on HH^n", &[n], || (fmt_matrix(&induced), fmt_matrix(&expect)));
        }
        k.truncate(max + 1);
        Ok(Witness { k, central: c, report: rep })
    }

    /// The induced action on `HH^n(A, A)`.
    pub fn modular_rep(&self, n: usize) -> Result<ModularRep<F>> {
        let f = self.hopf.field();
        let hh = self.regular.cohomology(n)?;
        let dim = hh.dim();
        let s_bar = hh.induced_map(&*self.frak_s.matrix(n)?, &hh)?;
        let id = Matrix::identity(f, dim);
        let w2 = f.mul(&self.data.omega, &self.data.omega);
        let mut rep = Report::new(format!("projective SL(2,Z) relations on HH^{n}"));
        let s4 = s_bar.pow(4)?;
        let s4_ok = s4 == id.scale(&w2);
        rep.check(s4_ok, "S^4 = omega^2 id", &[n], || (fmt_matrix(&s4), format!("{} id", f.format(&w2))));
        let mut out = ModularRep {
            degree: n,
            dim,
            representatives: hh.representatives.clone(),
            s_bar,
            t_bar: None,
            t_bar_inv: None,
            sigma_sts: None,
            sigma_s4: s4_ok.then_some(w2),
            linear: false,
            report: rep,
        };
        let Some(tw) = &self.data.twist else {
            out.report.fail("S T S = rho(v) T^-1 S T^-1", &[n], || ("no ribbon element".into(), "a ribbon element".into()));
            return Ok(out);
        };
        let (t, ti) = self.twist_families()?;
        let t_bar = hh.induced_map(&*t.matrix(n)?, &hh)?;
        let t_bar_inv = hh.induced_map(&*ti.matrix(n)?, &hh)?;
        let lhs = Matrix::chain(&[&out.s_bar, &t_bar, &out.s_bar])?;
        let rhs = Matrix::chain(&[&t_bar_inv, &out.s_bar, &t_bar_inv])?;
        let sts_ok = lhs == rhs.scale(&tw.rho_v);
        out.report.check(sts_ok, "S T S = rho(v) T^-1 S T^-1", &[n], || (fmt_matrix(&lhs), fmt_matrix(&rhs)));
        if dim > 0 {
            debug_assert!(!sts_ok || scalar_ratio(&lhs, &rhs).as_ref() == Some(&tw.rho_v));
        }
        out.sigma_sts = sts_ok.then(|| tw.rho_v.clone());
        let pm = |x: &F::Elem| f.is_one(x) || f.is_one(&f.neg(x));
        out.linear = f.is_one(&tw.rho_v) && pm(&tw.rho_vinv);
        out.t_bar = Some(t_bar);
        out.t_bar_inv = Some(t_bar_inv);
        Ok(out)
    }
}

/// Explicit null-homotopy of `S^4 - omega^2 id`.
#[derive(Debug)]
pub struct Witness<F: Field> {
    /// `K^n : C^n -> C^{n-1}` for `n = 0..=max`
    pub k: Vec<Matrix<F>>,
    /// the central element whose homotopy was transported
    pub central: Vec<F::Elem>,
    pub report: Report,
}

/// `S-bar`, `T-bar` on `HH^n(A, A)` in the basis of `representatives`.
#[derive(Debug, Clone)]
pub struct ModularRep<F: Field> {
    pub degree: usize,
    pub dim: usize,
    pub representatives: Vec<crate::linalg::SparseVec<F::Elem>>,
    pub s_bar: Matrix<F>,
    pub t_bar: Option<Matrix<F>>,
    pub t_bar_inv: Option<Matrix<F>>,
    /// `rho(v)` once `S T S = rho(v) T^-1 S T^-1` holds
    pub sigma_sts: Option<F::Elem>,
    /// `omega^2` once `S^4 = omega^2 id` holds
    pub sigma_s4: Option<F::Elem>,
    /// `rho` is ribbon-normalised and `rho(v^-1) = +-1`
    pub linear: bool,
    pub report: Report,
}

#[cfg(test)]
mod tests;
