#![no_main]

use gtx_core::gt_action::TableauVector;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(v) = TableauVector::from_json(s) {
        let back = TableauVector::from_json(&v.to_json()).expect("serialized vector parses");
        assert_eq!(back, v);
    }
});
