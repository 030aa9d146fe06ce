#![no_main]

use libfuzzer_sys::fuzz_target;
use mlconv::cli::parse_complex;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(z) = parse_complex(text) {
            assert!(z.re.is_finite() && z.im.is_finite());
        }
    }
});
