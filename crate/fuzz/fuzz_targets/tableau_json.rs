#![no_main]

use gtx_core::tableaux::Tableau;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(t) = Tableau::from_json(s) {
        let back = Tableau::from_json(&t.to_json()).expect("serialized tableau parses");
        assert_eq!(back, t);
    }
});
