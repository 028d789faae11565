//! JSON presentation files and validated input bundles.

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::hopf::{verify_algebra, verify_hopf, AlgebraPresentation, HopfPresentation, Report};
use crate::ribbon::{verify_quasitriangular, RibbonData, Source};
use crate::scalar::{Field, FieldSpec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldEntry {
    Named(String),
    Prime {
        #[serde(rename = "Fp")]
        fp: u64,
    },
    Cyclotomic {
        cyclotomic: u32,
    },
}

impl FieldEntry {
    pub fn spec(&self) -> Result<FieldSpec> {
        let spec = match self {
            FieldEntry::Named(s) if s == "Q" => FieldSpec::Rationals,
            FieldEntry::Named(s) => return Err(Error::Invalid(format!("field {s:?}: expected \"Q\", {{\"Fp\": p}} or {{\"cyclotomic\": n}}"))),
            FieldEntry::Prime { fp } => FieldSpec::Prime(*fp),
            FieldEntry::Cyclotomic { cyclotomic } => FieldSpec::Cyclotomic(*cyclotomic),
        };
        Ok(spec.validate()?)
    }

    pub fn from_spec(spec: FieldSpec) -> Self {
        match spec {
            FieldSpec::Rationals => FieldEntry::Named("Q".into()),
            FieldSpec::Prime(p) => FieldEntry::Prime { fp: p },
            FieldSpec::Cyclotomic(n) => FieldEntry::Cyclotomic { cyclotomic: n },
        }
    }
}

/// On-disk form of a Hopf algebra: sparse structure constants with scalars
/// as strings. Absent entries are zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationFile {
    pub field: FieldEntry,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub mult: Vec<(usize, usize, usize, String)>,
    pub unit: Vec<(usize, String)>,
    /// `[i, j, k, c]`: `Delta(e_i)` contains `c e_j (x) e_k`
    pub comult: Vec<(usize, usize, usize, String)>,
    pub counit: Vec<(usize, String)>,
    /// `[i, k, c]`: `S(e_i)` contains `c e_k`
    pub antipode: Vec<(usize, usize, String)>,
    #[serde(rename = "R", default, skip_serializing_if = "Option::is_none")]
    pub r: Option<Vec<(usize, usize, String)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v: Option<Vec<(usize, String)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho: Option<Vec<(usize, String)>>,
}

/// The structures a file describes, before verification.
#[derive(Clone, Debug)]
pub struct Decoded<F: Field> {
    pub labels: Vec<String>,
    pub hopf: HopfPresentation<F>,
    pub r: Option<Vec<F::Elem>>,
    pub v: Option<Vec<F::Elem>>,
    pub rho: Option<Vec<F::Elem>>,
}

fn parse_error(origin: &str, e: &serde_json::Error) -> Error {
    let text = e.to_string();
    let msg = text.rsplit_once(" at line ").map_or(text.as_str(), |(m, _)| m);
    Error::Parse { line: e.line(), col: e.column(), msg: format!("{origin}: {msg}") }
}

struct Ctx<'a, F: Field> {
    field: &'a F,
    origin: &'a str,
    dim: usize,
}

impl<F: Field> Ctx<'_, F> {
    fn scalar(&self, at: &str, s: &str) -> Result<F::Elem> {
        self.field.parse(s).map_err(|e| Error::Invalid(format!("{}: {at}: {e}", self.origin)))
    }

    fn index(&self, at: &str, i: usize, bound: usize) -> Result<usize> {
        if i >= bound {
            return Err(Error::Invalid(format!("{}: {at}: index {i} out of range (bound {bound})", self.origin)));
        }
        Ok(i)
    }

    fn vector(&self, key: &str, entries: &[(usize, String)], len: usize) -> Result<Vec<F::Elem>> {
        let mut out = vec![self.field.zero(); len];
        for (n, (i, c)) in entries.iter().enumerate() {
            let at = format!("{key}[{n}]");
            let i = self.index(&at, *i, len)?;
            let c = self.scalar(&at, c)?;
            self.field.add_assign(&mut out[i], &c);
        }
        Ok(out)
    }
}

fn sparse_entries<F: Field>(f: &F, v: &[F::Elem]) -> Vec<(usize, String)> {
    v.iter().enumerate().filter(|(_, c)| !f.is_zero(c)).map(|(i, c)| (i, f.format(c))).collect()
}

impl PresentationFile {
    pub fn parse_str(text: &str, origin: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| parse_error(origin, &e))
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))?;
        Self::parse_str(&text, &path.display().to_string())
    }

    pub fn field_spec(&self) -> Result<FieldSpec> {
        self.field.spec()
    }

    /// Builds the structures over `field`, which must be the file's field.
    pub fn decode<F: Field>(&self, field: &F, origin: &str) -> Result<Decoded<F>> {
        let spec = self.field_spec()?;
        if spec != field.spec() {
            return Err(Error::Invalid(format!("{origin}: file is over {spec}, requested {}", field.spec())));
        }
        let d = self.dim;
        if d == 0 {
            return Err(Error::Invalid(format!("{origin}: dim must be positive")));
        }
        let cx = Ctx { field, origin, dim: d };
        let labels = match &self.labels {
            Some(l) if l.len() != d => {
                return Err(Error::Invalid(format!("{origin}: labels: {} labels for dimension {d}", l.len())));
            }
            Some(l) => l.clone(),
            None => (0..d).map(|i| format!("e{i}")).collect(),
        };
        let mut mult = Vec::with_capacity(self.mult.len());
        for (n, (i, j, k, c)) in self.mult.iter().enumerate() {
            let at = format!("mult[{n}]");
            mult.push((cx.index(&at, *i, d)?, cx.index(&at, *j, d)?, cx.index(&at, *k, d)?, cx.scalar(&at, c)?));
        }
        let unit = cx.vector("unit", &self.unit, d)?;
        let alg = AlgebraPresentation::new(field, d, mult, unit)?;
        let mut comult = Vec::with_capacity(self.comult.len());
        for (n, (i, j, k, c)) in self.comult.iter().enumerate() {
            let at = format!("comult[{n}]");
            comult.push((cx.index(&at, *i, d)?, cx.index(&at, *j, d)?, cx.index(&at, *k, d)?, cx.scalar(&at, c)?));
        }
        let counit = cx.vector("counit", &self.counit, d)?;
        let mut antipode = Vec::with_capacity(self.antipode.len());
        for (n, (i, k, c)) in self.antipode.iter().enumerate() {
            let at = format!("antipode[{n}]");
            antipode.push((cx.index(&at, *i, d)?, cx.index(&at, *k, d)?, cx.scalar(&at, c)?));
        }
        let hopf = HopfPresentation::new(alg, comult, counit, antipode)
            .map_err(|e| Error::Invalid(format!("{origin}: {e}")))?;
        let r = match &self.r {
            Some(entries) => {
                let flat: Vec<(usize, String)> = entries
                    .iter()
                    .enumerate()
                    .map(|(n, (i, j, c))| {
                        let at = format!("R[{n}]");
                        Ok((cx.index(&at, *i, d)? * d + cx.index(&at, *j, d)?, c.clone()))
                    })
                    .collect::<Result<_>>()?;
                Some(cx.vector("R", &flat, d * d)?)
            }
            None => None,
        };
        let v = self.v.as_ref().map(|e| cx.vector("v", e, cx.dim)).transpose()?;
        let rho = self.rho.as_ref().map(|e| cx.vector("rho", e, cx.dim)).transpose()?;
        Ok(Decoded { labels, hopf, r, v, rho })
    }

    /// Canonical file for the given structures; entries appear in index order.
    pub fn encode<F: Field>(
        h: &HopfPresentation<F>,
        r: Option<&[F::Elem]>,
        v: Option<&[F::Elem]>,
        rho: Option<&[F::Elem]>,
        labels: Option<&[String]>,
    ) -> Self {
        let f = h.field();
        let d = h.dim();
        let a = h.algebra();
        let mut antipode: Vec<(usize, usize, String)> =
            h.antipode_entries().into_iter().map(|(i, k, c)| (i, k, f.format(&c))).collect();
        antipode.sort_by_key(|x| (x.0, x.1));
        PresentationFile {
            field: FieldEntry::from_spec(f.spec()),
            dim: d,
            labels: labels.map(|l| l.to_vec()),
            mult: a.mult_entries().into_iter().map(|(i, j, k, c)| (i, j, k, f.format(&c))).collect(),
            unit: sparse_entries(f, a.unit()),
            comult: h.comult_entries().into_iter().map(|(i, j, k, c)| (i, j, k, f.format(&c))).collect(),
            counit: sparse_entries(f, h.counit()),
            antipode,
            r: r.map(|r| sparse_entries(f, r).into_iter().map(|(ij, c)| (ij / d, ij % d, c)).collect()),
            v: v.map(|v| sparse_entries(f, v)),
            rho: rho.map(|p| sparse_entries(f, p)),
        }
    }

    /// Deterministic JSON: one key per line, one entry per line.
    pub fn to_json_string(&self) -> String {
        let value = serde_json::to_value(self).expect("serializable");
        let Value::Object(map) = value else { unreachable!() };
        let order = ["field", "dim", "labels", "mult", "unit", "comult", "counit", "antipode", "R", "v", "rho"];
        let mut lines = Vec::new();
        for key in order {
            let Some(v) = map.get(key) else { continue };
            let body = match v {
                Value::Array(items) if items.iter().any(|x| x.is_array()) => {
                    let rows: Vec<String> = items.iter().map(|x| format!("    {x}")).collect();
                    format!("[\n{}\n  ]", rows.join(",\n"))
                }
                other => other.to_string(),
            };
            lines.push(format!("  {}: {body}", Value::String(key.into())));
        }
        format!("{{\n{}\n}}\n", lines.join(",\n"))
    }
}

/// Where each component of a bundle came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub input: String,
    pub field: String,
    pub r: String,
    pub v: String,
    pub rho: String,
}

fn source_name(s: Source) -> String {
    match s {
        Source::Supplied => "supplied".into(),
        Source::Solved => "solved".into(),
    }
}

/// A verified input: structure reports, and ribbon data when an R-matrix is
/// present and factorizable.
#[derive(Debug)]
pub struct Bundle<F: Field> {
    pub labels: Vec<String>,
    pub hopf: HopfPresentation<F>,
    pub r: Option<Vec<F::Elem>>,
    pub reports: Vec<Report>,
    pub ribbon: Option<RibbonData<F>>,
    /// why `ribbon` is absent although `r` is present
    pub ribbon_error: Option<String>,
    pub provenance: Provenance,
}

impl<F: Field> Bundle<F> {
    /// Runs every verifier and solves what was not supplied.
    pub fn assemble(input: &str, decoded: Decoded<F>, r_origin: &str) -> Result<Self> {
        let Decoded { labels, hopf, r, v, rho } = decoded;
        let f = hopf.field().clone();
        if r.is_none() && (v.is_some() || rho.is_some()) {
            return Err(Error::Invalid(format!("{input}: v and rho need an R-matrix")));
        }
        let mut reports = vec![verify_algebra(hopf.algebra()), verify_hopf(&hopf)];
        if let Some(r) = &r {
            reports.push(verify_quasitriangular(&hopf, r));
        }
        let structural = reports.iter().all(Report::is_ok);
        let (mut ribbon, mut ribbon_error) = (None, None);
        if let (Some(r), true) = (&r, structural) {
            match RibbonData::compute(&hopf, r, v.as_deref(), rho.as_deref()) {
                Ok(data) => ribbon = Some(data),
                Err(Error::Verification(msg)) => ribbon_error = Some(msg),
                Err(e) => return Err(e),
            }
        }
        let component = |supplied: bool, solved: Option<Source>, none: &str| match (supplied, solved) {
            (_, Some(s)) => source_name(s),
            (true, None) => "supplied".to_string(),
            (false, None) => none.to_string(),
        };
        let provenance = Provenance {
            input: input.to_string(),
            field: f.spec().to_string(),
            r: if r.is_some() { r_origin.to_string() } else { "absent".into() },
            v: component(v.is_some(), ribbon.as_ref().and_then(|d| d.twist.as_ref().map(|t| t.source)), if ribbon.is_some() { "none exists" } else { "absent" }),
            rho: component(rho.is_some(), ribbon.as_ref().map(|d| d.rho_source), "absent"),
        };
        Ok(Bundle { labels, hopf, r, reports, ribbon, ribbon_error, provenance })
    }

    pub fn from_preset(name: &str, field: &F) -> Result<Self> {
        let (hopf, r) = super::preset(name, field)?;
        let labels = (0..hopf.dim()).map(|i| format!("e{i}")).collect();
        Self::assemble(&format!("preset:{name}"), Decoded { labels, hopf, r, v: None, rho: None }, "built-in")
    }

    pub fn from_file(path: &Path, field: &F) -> Result<Self> {
        let file = PresentationFile::read(path)?;
        let origin = path.display().to_string();
        let decoded = file.decode(field, &origin)?;
        Self::assemble(&origin, decoded, "supplied")
    }

    pub fn is_ok(&self) -> bool {
        self.reports.iter().all(Report::is_ok)
    }
}

/// Reads, decodes and verifies a presentation file; any failed verifier is
/// an error carrying the full report.
pub fn load_presentation<F: Field>(path: &Path, field: &F) -> Result<Bundle<F>> {
    let b = Bundle::from_file(path, field)?;
    if !b.is_ok() {
        let text: Vec<String> = b.reports.iter().filter(|r| !r.is_ok()).map(|r| r.to_string()).collect();
        return Err(Error::Verification(text.join("\n")));
    }
    if let Some(msg) = &b.ribbon_error {
        return Err(Error::Verification(msg.clone()));
    }
    Ok(b)
}
