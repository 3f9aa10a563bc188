#![no_main]

use cotangent_core::io::{self, MonoidInput};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    let Ok(v) = io::parse_json(text) else { return };
    match io::monoid_input_from_json(&v) {
        Ok(MonoidInput::Monoid(m)) => {
            assert_eq!(io::monoid_from_json(&io::monoid_to_json(&m)).unwrap(), m);
        }
        Ok(MonoidInput::Hom(f)) => {
            assert_eq!(io::monoid_hom_from_json(&io::monoid_hom_to_json(&f)).unwrap(), f);
        }
        Err(_) => {}
    }
    if let Ok(m) = io::monoid_module_from_json(&v) {
        let out = io::monoid_module_to_json(&m);
        assert_eq!(io::monoid_module_to_json(&io::monoid_module_from_json(&out).unwrap()), out);
    }
});
