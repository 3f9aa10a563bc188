#![no_main]

use cotangent_core::io;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    let Ok(v) = io::parse_json(text) else { return };
    if let Ok(m) = io::fpmodule_from_json(&v) {
        let out = io::fpmodule_to_json(&m);
        assert_eq!(io::fpmodule_to_json(&io::fpmodule_from_json(&out).unwrap()), out);
    }
});
