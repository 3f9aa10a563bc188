#![no_main]

use cotangent_core::ring::parse::{format_hom, parse_hom};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    if let Ok(spec) = parse_hom(text) {
        let printed = format_hom(&spec);
        assert_eq!(parse_hom(&printed).expect("printed hom parses"), spec);
    }
});
