//! The `hochmod` command line: argument definitions, the JSON run report
//! and the three commands.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::builders::{Bundle, PresentationFile};
use crate::error::{Error, Result};
use crate::hochschild::Complex;
use crate::hopf::{dual_bimodule, twist_eps_ad, twist_eps_cad, twist_s2inv, BimodulePresentation, Report};
use crate::linalg::Matrix;
use crate::modular::{act, verify_coadjoint_identification, ModularCochains};
use crate::ribbon::{check_center_relations, verify_drinfeld_element, verify_factorizable, IntegralConvention};
use crate::scalar::{with_field, Field, FieldSpec, FieldVisitor};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Parser, Debug, Clone)]
#[command(name = "hochmod", version, about = "Hochschild cohomology of finite-dimensional Hopf algebras and its SL(2,Z) action")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Check the Hopf, quasitriangular and ribbon structure.
    Verify(Common),
    /// Dimensions of HH^n(A, M) for n = 0..=degree.
    Hh {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 2)]
        degree: usize,
        #[arg(long, value_enum, default_value_t = ModuleChoice::Regular)]
        module: ModuleChoice,
    },
    /// Cochain-level modular maps and the projective action on HH^n(A, A).
    Modular {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1)]
        degree: usize,
        /// SL(2,Z) element as a,b,c,d
        #[arg(long, allow_hyphen_values = true)]
        act: Option<String>,
        /// class coordinates (comma separated) in the HH basis of --act-degree
        #[arg(long, allow_hyphen_values = true)]
        class: Option<String>,
        #[arg(long, default_value_t = 0)]
        act_degree: usize,
    },
    /// Write a preset as a presentation file.
    Export(Common),
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    #[arg(long, conflicts_with = "input")]
    pub preset: Option<String>,
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Q, Fp (e.g. F5) or cyclotomic-n
    #[arg(long)]
    pub field: Option<String>,
    #[arg(long)]
    pub no_timing: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModuleChoice {
    Regular,
    S2invDual,
    EpsAd,
    EpsCad,
}

impl Command {
    pub fn common(&self) -> &Common {
        match self {
            Command::Verify(c) | Command::Export(c) => c,
            Command::Hh { common, .. } | Command::Modular { common, .. } => common,
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Command::Verify(_) => "verify",
            Command::Hh { .. } => "hh",
            Command::Modular { .. } => "modular",
            Command::Export(_) => "export",
        }
    }
}

#[derive(Serialize)]
struct CheckEntry {
    name: String,
    ok: bool,
    checked: usize,
    violation_count: usize,
    violations: Vec<crate::hopf::Violation>,
}

impl From<&Report> for CheckEntry {
    fn from(r: &Report) -> Self {
        CheckEntry {
            name: r.name.clone(),
            ok: r.is_ok(),
            checked: r.checked,
            violation_count: r.violation_count,
            violations: r.violations.clone(),
        }
    }
}

/// Accumulates the report while a command runs.
struct Run {
    timing: bool,
    start: Instant,
    checks: Vec<CheckEntry>,
    fields: serde_json::Map<String, Value>,
    phases: Vec<(String, f64)>,
}

impl Run {
    fn new(timing: bool) -> Self {
        Run { timing, start: Instant::now(), checks: Vec::new(), fields: serde_json::Map::new(), phases: Vec::new() }
    }

    fn check(&mut self, r: &Report) {
        self.checks.push(r.into());
    }

    fn set(&mut self, key: &str, v: Value) {
        self.fields.insert(key.into(), v);
    }

    fn phase(&mut self, name: &str, since: Instant) {
        self.phases.push((name.into(), since.elapsed().as_secs_f64()));
    }

    fn all_ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }
}

/// Exit code and JSON text of one invocation.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub code: i32,
    pub report: String,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Verification(_) | Error::InternalMismatch { .. } | Error::NotCentral => 1,
        _ => 2,
    }
}

fn fmt_matrix<F: Field>(m: &Matrix<F>) -> Value {
    let f = m.field();
    Value::Array(m.to_dense().iter().map(|r| Value::Array(r.iter().map(|x| Value::String(f.format(x))).collect())).collect())
}

fn fmt_vec<F: Field>(f: &F, v: &[F::Elem]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(f.format(x))).collect())
}

fn resolve_field(common: &Common) -> Result<FieldSpec> {
    let requested = common.field.as_deref().map(FieldSpec::parse).transpose()?.map(|s| s.validate()).transpose()?;
    match (&common.input, requested) {
        (Some(path), req) => {
            let file_spec = PresentationFile::read(path)?.field_spec()?;
            match req {
                Some(r) if r != file_spec => Err(Error::Invalid(format!("--field {r} but {} is over {file_spec}", path.display()))),
                _ => Ok(file_spec),
            }
        }
        (None, req) => Ok(req.unwrap_or(FieldSpec::Rationals)),
    }
}

struct Dispatch<'a> {
    command: &'a Command,
    run: &'a mut Run,
}

impl FieldVisitor for Dispatch<'_> {
    type Output = Result<()>;
    fn visit<F: Field>(self, field: F) -> Result<()> {
        let common = self.command.common();
        let t = Instant::now();
        let bundle = match (&common.preset, &common.input) {
            (Some(name), None) => Bundle::from_preset(name, &field)?,
            (None, Some(path)) => Bundle::from_file(path, &field)?,
            _ => return Err(Error::Invalid("exactly one of --preset and --input is required".into())),
        };
        self.run.phase("load", t);
        self.run.set("input", serde_json::to_value(&bundle.provenance).expect("serializable"));
        self.run.set("dim", json!(bundle.hopf.dim()));
        for r in &bundle.reports {
            self.run.check(r);
        }
        if !bundle.is_ok() {
            return Ok(());
        }
        match self.command {
            Command::Verify(_) => verify(&bundle, self.run),
            Command::Hh { degree, module, .. } => hh(&bundle, *degree, *module, self.run),
            Command::Modular { degree, act, class, act_degree, .. } => {
                modular(&bundle, *degree, act.as_deref(), class.as_deref(), *act_degree, self.run)
            }
            Command::Export(_) => export(&bundle, common, self.run),
        }
    }
}

fn conventions<F: Field>(b: &Bundle<F>, run: &mut Run) {
    let Some(data) = &b.ribbon else { return };
    let f = b.hopf.field();
    run.set(
        "conventions",
        json!({
            "integral": match data.convention { IntegralConvention::Right => "right", IntegralConvention::Mirrored => "mirrored" },
            "ribbon_relations": "v^2 u S(u) = 1, Delta(v) = Q (v (x) v), Q = tau(R) R",
            "ribbon_candidates": data.ribbon_candidates,
            "ribbon_element": data.twist.as_ref().map(|t| fmt_vec(f, &t.v)),
            "rho": fmt_vec(f, &data.rho),
        }),
    );
    let tw = data.twist.as_ref();
    run.set(
        "scalars",
        json!({
            "omega": f.format(&data.omega),
            "omega_squared": f.format(&f.mul(&data.omega, &data.omega)),
            "rho_v": tw.map(|t| f.format(&t.rho_v)),
            "rho_v_inverse": tw.map(|t| f.format(&t.rho_vinv)),
        }),
    );
}

fn verify<F: Field>(b: &Bundle<F>, run: &mut Run) -> Result<()> {
    let Some(r) = &b.r else {
        run.set("structure", json!("Hopf algebra without R-matrix"));
        return Ok(());
    };
    let h = &b.hopf;
    let (fact, rank) = verify_factorizable(h, r);
    let mut rep = Report::new("factorizable");
    rep.check(fact, "Drinfeld map bijective", &[], || (format!("rank {rank}"), format!("rank {}", h.dim())));
    run.check(&rep);
    let Some(data) = &b.ribbon else {
        if let Some(msg) = &b.ribbon_error {
            run.set("ribbon_error", json!(msg));
        }
        return Ok(());
    };
    conventions(b, run);
    run.check(&verify_drinfeld_element(h, &data.u, &data.u_inv));
    let mut ribbon = Report::new("ribbon element");
    ribbon.check(data.twist.is_some(), "a ribbon element exists", &[], || ("none".into(), "v".into()));
    run.check(&ribbon);
    let t = Instant::now();
    let center = check_center_relations(h, data)?;
    run.phase("center relations", t);
    run.check(&center.report);
    run.check(&verify_coadjoint_identification(h));
    let mc = ModularCochains::new(h, data)?;
    run.check(&mc.verify_bimodule_maps()?);
    run.set("center_dim", json!(center.center.dim()));
    Ok(())
}

fn hh<F: Field>(b: &Bundle<F>, degree: usize, module: ModuleChoice, run: &mut Run) -> Result<()> {
    let h = &b.hopf;
    let reg = BimodulePresentation::regular(h.algebra());
    let m = match module {
        ModuleChoice::Regular => reg,
        ModuleChoice::S2invDual => dual_bimodule(&twist_s2inv(h)),
        ModuleChoice::EpsAd => twist_eps_ad(h, &reg),
        ModuleChoice::EpsCad => twist_eps_cad(h, &reg),
    };
    let complex = Complex::new(h.algebra(), &m)?;
    complex.guard("cohomology", degree + 1)?;
    run.set("module", serde_json::to_value(module).expect("serializable"));
    let mut rows = Vec::new();
    let mut dd = Report::new("d d = 0");
    for n in 0..=degree {
        let t = Instant::now();
        let hn = complex.cohomology(n)?;
        run.phase(&format!("HH^{n}"), t);
        if n >= 1 {
            let first = complex.first_nonzero_dd_row(n - 1);
            dd.check(first.is_none(), "d^n d^(n-1) = 0", &[n - 1], || (format!("row {first:?}"), "zero".into()));
        }
        rows.push(json!({
            "degree": n,
            "dim": hn.dim(),
            "cochain_dim": hn.cochain_dim,
            "cocycles": hn.cocycles.dim(),
            "coboundaries": hn.coboundaries.dim(),
        }));
    }
    run.check(&dd);
    run.set("dims", Value::Array(rows.iter().map(|r| r["dim"].clone()).collect()));
    run.set("degrees", Value::Array(rows));
    Ok(())
}

fn parse_act(s: &str) -> Result<[[i64; 2]; 2]> {
    let v: Vec<i64> = s
        .split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|e| Error::Invalid(format!("--act {s:?}: {e}"))))
        .collect::<Result<_>>()?;
    match v.as_slice() {
        [a, b, c, d] => Ok([[*a, *b], [*c, *d]]),
        _ => Err(Error::Invalid(format!("--act {s:?}: expected four integers a,b,c,d"))),
    }
}

fn modular<F: Field>(
    b: &Bundle<F>,
    degree: usize,
    act_m: Option<&str>,
    class: Option<&str>,
    act_degree: usize,
    run: &mut Run,
) -> Result<()> {
    let h = &b.hopf;
    let f = h.field();
    if b.r.is_none() {
        return Err(Error::Invalid("the modular action needs an R-matrix".into()));
    }
    let data = match (&b.ribbon, &b.ribbon_error) {
        (Some(d), _) => d,
        (None, msg) => {
            let (fact, rank) = verify_factorizable(h, b.r.as_ref().expect("checked"));
            run.set("factorizable", json!({ "ok": fact, "drinfeld_rank": rank, "dim": h.dim() }));
            return Err(Error::Verification(msg.clone().unwrap_or_else(|| "no ribbon data".into())));
        }
    };
    conventions(b, run);
    Complex::regular(h.algebra()).guard("modular", degree + 1)?;
    let mc = ModularCochains::new(h, data)?;
    run.check(&verify_coadjoint_identification(h));
    run.check(&mc.verify_bimodule_maps()?);
    let t = Instant::now();
    for n in 0..=degree {
        mc.frak_s.matrix(n)?;
    }
    run.phase("frak-S families (three paths)", t);
    run.check(&Report {
        name: format!("Phi-bar, S, frak-S agree with their closed formulas, degrees 0..={degree}"),
        checked: 3 * (degree + 1),
        violation_count: 0,
        violations: Vec::new(),
    });
    let t = Instant::now();
    run.check(&mc.verify_radford_square(degree)?);
    if degree >= 1 {
        for fam in [&mc.omega, &mc.omega_cad, &mc.drinfeld, &mc.antipode, &mc.frak_s] {
            run.check(&fam.verify_cochain(degree - 1)?);
        }
    }
    run.phase("cochain maps", t);
    if data.twist.is_some() {
        let t = Instant::now();
        run.check(&mc.verify_sts_cochain(degree)?);
        run.check(&mc.verify_twist_square(degree)?);
        run.phase("S T S relation", t);
    }
    let t = Instant::now();
    let witness = mc.s4_homotopy_witness(degree)?;
    run.phase("S^4 witness", t);
    run.check(&witness.report);
    run.set("witness_central_element", fmt_vec(f, &witness.central));
    let mut reps = Vec::new();
    let mut act_rep = None;
    for n in 0..=degree {
        let t = Instant::now();
        let rep = mc.modular_rep(n)?;
        run.phase(&format!("rep HH^{n}"), t);
        run.check(&rep.report);
        reps.push(json!({
            "degree": n,
            "dim": rep.dim,
            "s_bar": fmt_matrix(&rep.s_bar),
            "t_bar": rep.t_bar.as_ref().map(fmt_matrix),
            "sigma_sts": rep.sigma_sts.as_ref().map(|x| f.format(x)),
            "sigma_s4": rep.sigma_s4.as_ref().map(|x| f.format(x)),
            "linear": rep.linear,
        }));
        if n == act_degree {
            act_rep = Some(rep);
        }
    }
    run.set("representations", Value::Array(reps));
    if let Some(m) = act_m {
        let m = parse_act(m)?;
        let rep = match act_rep {
            Some(r) => r,
            None => mc.modular_rep(act_degree)?,
        };
        let coords: Vec<F::Elem> = match class {
            Some(c) => c.split(',').map(|x| f.parse(x).map_err(Error::from)).collect::<Result<_>>()?,
            None => return Err(Error::Invalid("--act needs --class".into())),
        };
        let (image, note) = act(m, &coords, &rep)?;
        let word = crate::modular::sl2z_word(m)?;
        run.set(
            "action",
            json!({
                "matrix": m,
                "degree": act_degree,
                "word": word,
                "class": fmt_vec(f, &coords),
                "image": fmt_vec(f, &image),
                "note": note,
            }),
        );
    }
    Ok(())
}

fn export<F: Field>(b: &Bundle<F>, common: &Common, run: &mut Run) -> Result<()> {
    let file = PresentationFile::encode(&b.hopf, b.r.as_deref(), None, None, Some(&b.labels));
    let text = file.to_json_string();
    match &common.out {
        Some(p) => {
            std::fs::write(p, &text)?;
            run.set("written", json!(p.display().to_string()));
        }
        None => run.set("presentation", serde_json::from_str(&text).expect("valid json")),
    }
    Ok(())
}

/// Runs one command and renders its report.
pub fn execute(cli: &Cli) -> Outcome {
    let common = cli.command.common();
    let mut run = Run::new(!common.no_timing);
    let result = resolve_field(common).and_then(|spec| {
        with_field(spec, Dispatch { command: &cli.command, run: &mut run })?
    });
    let (code, status, error) = match &result {
        Ok(()) if run.all_ok() => (0, "ok", None),
        Ok(()) => (1, "verification failure", None),
        Err(e) => (exit_code(e), if exit_code(e) == 1 { "verification failure" } else { "error" }, Some(e.to_string())),
    };
    let mut out = serde_json::Map::new();
    out.insert("schema_version".into(), json!(SCHEMA_VERSION));
    out.insert("command".into(), json!(cli.command.name()));
    out.insert("status".into(), json!(status));
    if let Some(e) = error {
        out.insert("error".into(), json!(e));
    }
    let fields = std::mem::take(&mut run.fields);
    out.extend(fields);
    out.insert("checks".into(), serde_json::to_value(&run.checks).expect("serializable"));
    if run.timing {
        let phases: serde_json::Map<String, Value> = run.phases.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
        out.insert(
            "timing".into(),
            json!({ "total_seconds": run.start.elapsed().as_secs_f64(), "phases": phases, "threads": rayon::current_num_threads() }),
        );
    }
    let report = serde_json::to_string_pretty(&Value::Object(out)).expect("serializable") + "\n";
    Outcome { code, report }
}

/// Parses `args` (including the program name), runs, and writes the report.
pub fn main_with_args<I: IntoIterator<Item = String>>(args: I) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let outcome = execute(&cli);
    let out_path = match &cli.command {
        Command::Export(_) => None,
        c => c.common().out.clone(),
    };
    match out_path {
        Some(p) => {
            if let Err(e) = std::fs::write(&p, &outcome.report) {
                eprintln!("cannot write {}: {e}", p.display());
                return 2;
            }
        }
        None => print!("{}", outcome.report),
    }
    outcome.code
}
