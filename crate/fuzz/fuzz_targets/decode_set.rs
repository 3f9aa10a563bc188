#![no_main]

use cotangent_core::io::{self, SetInput};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    let Ok(v) = io::parse_json(text) else { return };
    match io::set_input_from_json(&v) {
        Ok(SetInput::Set(x)) => {
            assert_eq!(io::set_from_json(&io::set_to_json(&x)).unwrap(), x);
        }
        Ok(SetInput::Map(f)) => {
            assert_eq!(io::map_from_json(&io::map_to_json(&f)).unwrap(), f);
        }
        Err(_) => {}
    }
    if let Ok(m) = io::set_module_from_json(&v) {
        let out = io::set_module_to_json(&m);
        assert_eq!(io::set_module_to_json(&io::set_module_from_json(&out).unwrap()), out);
    }
});
