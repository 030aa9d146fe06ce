#![no_main]

use libfuzzer_sys::fuzz_target;
use mlconv::cli::parse_coeff_list;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(list) = parse_coeff_list(text) {
            assert!(list.iter().all(|z| z.re.is_finite() && z.im.is_finite()));
        }
    }
});
