#![no_main]

use celldual::io::parse_poset_json;
use celldual::CellComplex;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    let Ok(file) = parse_poset_json(text) else { return };
    if let Ok(c) = CellComplex::from_poset_file(&file) {
        c.validate().expect("accepted complexes are valid");
        // signs must round-trip through the solver's gauge class
        assert!(c.with_epsilon(c.epsilon().to_vec()).is_ok());
    }
});
