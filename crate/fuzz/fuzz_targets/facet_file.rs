#![no_main]

use celldual::io::{parse_complex, parse_facets};
use celldual::{PrimeField, Region};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    if parse_facets(text).is_err() {
        return;
    }
    if let Ok(c) = parse_complex(text) {
        c.validate().expect("accepted complexes are valid");
        if c.len() <= 256 {
            let f = PrimeField::new(2).unwrap();
            let h = c.cellular_homology(&f, &Region::Closed(c.whole()), false).unwrap();
            let chi: i64 = h
                .reduced
                .iter()
                .map(|(&d, &v)| if d % 2 == 0 { v as i64 } else { -(v as i64) })
                .sum();
            assert_eq!(chi, c.reduced_euler_characteristic());
        }
    }
});
