//! Replays the checked-in fuzz seeds through the parsers; none may panic
//! and every accepted input must satisfy the same post-conditions the fuzz
//! targets assert.

use std::fs;
use std::path::PathBuf;

use celldual::io::{parse_complex, parse_filter};
use celldual::repalg::parse_module;
use celldual::{fixtures, FieldSpec, PrimeField, EMPTY};

fn seeds(target: &str) -> Vec<String> {
    let dir: PathBuf = [
        env!("CARGO_MANIFEST_DIR"),
        "..",
        "..",
        "fuzz",
        "corpus",
        target,
    ]
    .iter()
    .collect();
    let mut out: Vec<String> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| fs::read_to_string(e.unwrap().path()).unwrap())
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn complex_seeds() {
    let mut accepted = 0;
    for text in seeds("facet_file").into_iter().chain(seeds("poset_json")) {
        if let Ok(c) = parse_complex(&text) {
            c.validate().unwrap();
            accepted += 1;
        }
    }
    assert!(accepted >= 7);
}

#[test]
fn module_seeds() {
    let f = PrimeField::new(3).unwrap();
    for spec in seeds("module_spec") {
        for c in [fixtures::disc2(), fixtures::triangle_boundary()] {
            if let Ok(m) = parse_module(&f, &c, &spec) {
                m.check_path_independence().unwrap();
            }
        }
    }
}

#[test]
fn filter_seeds() {
    for spec in seeds("filter_spec") {
        for c in [fixtures::disc2(), fixtures::simplex2()] {
            for closure in [false, true] {
                if let Ok(psi) = parse_filter(&c, &spec, closure) {
                    assert!(!psi.contains(EMPTY));
                    assert!(c.poset().check_filter(psi.cells()).is_ok());
                }
            }
        }
    }
}

#[test]
fn field_seeds() {
    let parsed: Vec<Option<FieldSpec>> =
        seeds("field_spec").iter().map(|s| s.parse().ok()).collect();
    assert!(parsed.iter().any(Option::is_none));
    for spec in parsed.into_iter().flatten() {
        assert_eq!(spec.to_string().parse::<FieldSpec>().unwrap(), spec);
    }
}
