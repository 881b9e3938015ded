#![no_main]

use celldual::{FieldSpec, PrimeField};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    if let Ok(spec) = text.parse::<FieldSpec>() {
        let again: FieldSpec = spec.to_string().parse().expect("display round-trips");
        assert_eq!(again, spec);
        if let FieldSpec::Prime(p) = spec {
            assert!(PrimeField::new(p).is_ok());
        }
    }
});
