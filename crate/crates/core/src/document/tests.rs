use super::*;
use crate::random::{self, trial_rng};

const F5: Domain = Domain::Prime(5);

#[test]
fn disc_round_trip() {
    let d = NComplex::disc(3, F5, 1, 3, 1).unwrap();
    let text = complex_to_string(&d);
    assert_eq!(parse_complex(&text).unwrap(), d);
    assert_eq!(canonicalize(&text).unwrap(), text);
}

#[test]
fn canonical_text() {
    let d = NComplex::disc(2, F5, 0, 2, 1).unwrap();
    let expected = r#"{
  "format_version": "1",
  "N": 2,
  "coeff": "Fp:5",
  "objects": {
    "-1": 1,
    "0": 1
  },
  "diff": {
    "-1": [
      [
        1
      ]
    ]
  }
}
"#;
    assert_eq!(complex_to_string(&d), expected);
}

#[test]
fn non_nilpotent_document_is_rejected() {
    let text = r#"{"format_version": "1", "N": 2, "coeff": "Fp:2",
        "objects": {"0": 1, "1": 1, "2": 1}, "diff": {"0": [[1]], "1": [[1]]}}"#;
    assert_eq!(parse_complex(text), Err(Error::NotNilpotent { degree: 0, n: 2 }));
}

#[test]
fn rationals_are_reduced() {
    let text = r#"{"format_version": "1", "N": 2, "coeff": "Q",
        "objects": {"0": 2, "1": 1}, "diff": {"0": [["6/4", "-2/-4"]]}}"#;
    let x = parse_complex(text).unwrap();
    assert_eq!(x.diff(0).entry_string(0, 0), "3/2");
    assert_eq!(x.diff(0).entry_string(0, 1), "1/2");
    assert!(complex_to_string(&x).contains("\"3/2\""));
}

#[test]
fn diagnostics() {
    let bad_shape = r#"{"format_version": "1", "N": 3, "coeff": "Q",
        "objects": {"0": 1, "1": 2}, "diff": {"0": [[1, 2]]}}"#;
    let err = parse_complex(bad_shape).unwrap_err().to_string();
    assert!(err.contains("degree 0"), "{err}");
    let bad_entry = r#"{"format_version": "1", "N": 3, "coeff": "Q",
        "objects": {"0": 1, "1": 1}, "diff": {"0": [["x"]]}}"#;
    let err = parse_complex(bad_entry).unwrap_err().to_string();
    assert!(err.contains("degree 0") && err.contains("row 0"), "{err}");
    let bad_json = "{\n  \"N\": 3,\n  oops\n}";
    let err = parse_complex(bad_json).unwrap_err().to_string();
    assert!(err.contains("line 3"), "{err}");
    assert!(parse_complex(r#"{"format_version": "1", "N": 3, "coeff": "Fp:4"}"#).is_err());
    assert!(parse_complex(r#"{"format_version": "1", "N": 3, "coeff": "Z", "objects": {"0": 1, "1": 1}, "diff": {"0": [["1/2"]]}}"#).is_err());
    assert!(parse_complex(r#"{"format_version": "2", "N": 3, "coeff": "Q"}"#).is_err());
    assert!(parse_complex(r#"{"format_version": "1", "N": 1, "coeff": "Q"}"#).is_err());
}

#[test]
fn random_round_trips() {
    for trial in 0..40 {
        let mut rng = trial_rng(40, trial);
        let n = 2 + trial as usize % 4;
        let x = random::random_complex(&mut rng, n, random::FIELDS[trial as usize % 4]);
        let y = random::random_complex(&mut rng, n, x.domain());
        assert_eq!(parse_complex(&complex_to_string(&x)).unwrap(), x);
        let f = random::random_chain_map(&mut rng, &x, &y);
        let text = map_to_string(&f);
        assert_eq!(parse_map(&text).unwrap(), f);
        assert_eq!(map_to_string(&parse_map(&text).unwrap()), text);
    }
}

#[test]
fn map_documents_check_commutation() {
    let x = NComplex::disc(3, F5, 1, 2, 1).unwrap();
    let mut doc = MapDocument::from_map(&ChainMap::identity(&x));
    doc.components.remove(&0);
    assert_eq!(doc.to_map(), Err(Error::NotAChainMap { degree: 0 }));
}
