#![no_main]

use cotangent_core::ring::parse::{format_algebra, parse_algebra};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    if let Ok(spec) = parse_algebra(text) {
        let printed = format_algebra(&spec);
        assert_eq!(parse_algebra(&printed).expect("printed algebra parses"), spec);
    }
});
