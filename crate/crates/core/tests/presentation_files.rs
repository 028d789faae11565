use std::path::PathBuf;

use hochmod::builders::{load_presentation, preset, Bundle, PresentationFile, PRESETS};
use hochmod::error::Error;
use hochmod::ribbon::Source;
use hochmod::scalar::{Field, PrimeField, Rationals};

fn shipped() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/D-kZ2.json")
}

#[test]
fn shipped_double_matches_builtin() {
    let b = load_presentation(&shipped(), &Rationals).unwrap();
    let p = Bundle::from_preset("D-kZ2", &Rationals).unwrap();
    assert_eq!(b.hopf, p.hopf);
    assert_eq!(b.r, p.r);
    let (x, y) = (b.ribbon.unwrap(), p.ribbon.unwrap());
    assert_eq!(x.rho, y.rho);
    assert_eq!(x.twist.unwrap().v, y.twist.unwrap().v);
    assert_eq!(b.provenance.r, "supplied");
    assert_eq!(b.provenance.v, "solved");
}

#[test]
fn round_trip_is_bit_identical() {
    let f5 = PrimeField::new(5).unwrap();
    for name in PRESETS {
        let (h, r) = preset(name, &f5).unwrap();
        let text = PresentationFile::encode(&h, r.as_deref(), None, None, None).to_json_string();
        let file = PresentationFile::parse_str(&text, name).unwrap();
        assert_eq!(file.to_json_string(), text);
        let back = file.decode(&f5, name).unwrap();
        assert_eq!(back.hopf, h, "{name}");
        assert_eq!(back.r, r);
    }
    let text = std::fs::read_to_string(shipped()).unwrap();
    assert_eq!(PresentationFile::parse_str(&text, "shipped").unwrap().to_json_string(), text);
}

#[test]
fn corrupted_associativity_names_the_triple() {
    let text = std::fs::read_to_string(shipped()).unwrap();
    let mut file = PresentationFile::parse_str(&text, "x").unwrap();
    // e1 e1 = e0 becomes e1 e1 = e0 + e3
    file.mult.push((1, 1, 3, "1".into()));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    std::fs::write(&path, file.to_json_string()).unwrap();
    let b = Bundle::from_file(&path, &Rationals).unwrap();
    assert!(!b.is_ok());
    let alg = &b.reports[0];
    assert!(!alg.is_ok());
    let v = alg.violations.iter().find(|v| v.check.contains("assoc")).unwrap();
    assert_eq!(v.basis.len(), 3);
    match load_presentation(&path, &Rationals) {
        Err(Error::Verification(msg)) => assert!(msg.contains("assoc") || msg.contains("unit"), "{msg}"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn parse_errors_carry_position() {
    let err = PresentationFile::parse_str("{\n  \"field\": \"Q\",\n  \"dim\": ,\n}", "bad.json").unwrap_err();
    match err {
        Error::Parse { line, col, msg } => {
            assert_eq!(line, 3);
            assert!(col > 0);
            assert!(msg.starts_with("bad.json"));
        }
        e => panic!("{e:?}"),
    }
    let text = std::fs::read_to_string(shipped()).unwrap().replace("[3,3,2,\"1\"]", "[3,3,2,\"1/0\"]");
    let file = PresentationFile::parse_str(&text, "f").unwrap();
    let e = file.decode(&Rationals, "f").unwrap_err().to_string();
    assert!(e.contains("mult[7]"), "{e}");
}

#[test]
fn pinned_ribbon_element_is_validated() {
    let (h, r) = preset("D-kZ3", &Rationals).unwrap();
    let r = r.unwrap();
    let solved = Bundle::from_preset("D-kZ3", &Rationals).unwrap().ribbon.unwrap();
    let v = solved.twist.as_ref().unwrap().v.clone();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pinned.json");
    let file = PresentationFile::encode(&h, Some(&r), Some(&v), None, None);
    std::fs::write(&path, file.to_json_string()).unwrap();
    let b = load_presentation(&path, &Rationals).unwrap();
    let tw = b.ribbon.as_ref().unwrap().twist.as_ref().unwrap();
    assert_eq!(tw.source, Source::Supplied);
    assert_eq!(b.provenance.v, "supplied");
    // a central grouplike that is not ribbon is rejected
    let bad: Vec<_> = h.algebra().unit().to_vec();
    let file = PresentationFile::encode(&h, Some(&r), Some(&bad), None, None);
    std::fs::write(&path, file.to_json_string()).unwrap();
    assert!(matches!(load_presentation(&path, &Rationals), Err(Error::Verification(_))));
    assert!(Rationals.is_one(&tw.rho_v));
}
