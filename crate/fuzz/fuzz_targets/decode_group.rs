#![no_main]

use cotangent_core::io;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    let Ok(v) = io::parse_json(text) else { return };
    if let Ok(g) = io::group_from_json(&v) {
        let out = io::group_to_json(&g);
        assert_eq!(io::group_to_json(&io::group_from_json(&out).unwrap()), out);
    }
    if let Ok(h) = io::abhom_from_json(&v) {
        let out = io::abhom_to_json(&h);
        assert_eq!(io::abhom_to_json(&io::abhom_from_json(&out).unwrap()), out);
    }
});
