#![no_main]

use gtx_core::modules_generic::{enumerate_basis, ModuleSpec, Window};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(spec) = ModuleSpec::from_json(s) {
        let back = ModuleSpec::from_json(&spec.to_json()).expect("serialized spec parses");
        assert_eq!(back, spec);
        // Small windows only; rank 4 already has six coordinates.
        if spec.n() <= 4 {
            let _ = enumerate_basis(&spec, &Window::symmetric(spec.n(), 1));
        }
    }
});
