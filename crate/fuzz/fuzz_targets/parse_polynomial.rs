#![no_main]

use cotangent_core::ring::parse::parse_polynomial;
use cotangent_core::ring::Field;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    let vars: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
    for field in [Field::Rational, Field::prime(7).unwrap()] {
        if let Ok(p) = parse_polynomial(text, &field, &vars) {
            let printed = p.format(&vars, Default::default());
            let again = parse_polynomial(&printed, &field, &vars).expect("printed polynomial parses");
            assert_eq!(again, p, "{printed}");
        }
    }
});
