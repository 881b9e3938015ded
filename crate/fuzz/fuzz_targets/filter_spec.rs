#![no_main]

use celldual::fixtures;
use celldual::io::parse_filter;
use celldual::EMPTY;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|spec: &str| {
    for c in [fixtures::disc2(), fixtures::simplex2()] {
        for closure in [false, true] {
            if let Ok(psi) = parse_filter(&c, spec, closure) {
                assert!(!psi.contains(EMPTY));
                assert!(c.poset().check_filter(psi.cells()).is_ok());
            }
        }
    }
});
