#![no_main]

use libfuzzer_sys::fuzz_target;
use mlconv::cli::{format_function_spec, parse_function_spec};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(f) = parse_function_spec(text) {
        assert!(f.is_finite());
        let again = parse_function_spec(&format_function_spec(&f)).expect("formatted spec parses");
        assert_eq!(again, f);
    }
});
