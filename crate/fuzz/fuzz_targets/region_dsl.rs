#![no_main]

use gtx_core::classification_sl3::parse_region;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(expr) = parse_region(s) {
        for m in -2..=2 {
            for n in -2..=2 {
                let _ = expr.contains(m, n, 0, 1);
            }
        }
    }
});
