#![no_main]

use celldual::fixtures;
use celldual::repalg::parse_module;
use celldual::PrimeField;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|spec: &str| {
    let f = PrimeField::new(3).unwrap();
    for c in [fixtures::disc2(), fixtures::triangle_boundary()] {
        if let Ok(m) = parse_module(&f, &c, spec) {
            m.check_path_independence().expect("accepted modules are modules");
        }
    }
});
