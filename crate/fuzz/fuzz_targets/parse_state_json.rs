#![no_main]

use libfuzzer_sys::fuzz_target;
use qtele_core::canonical::canonicalize;
use qtele_core::qstate::{parse_state_json, state_to_json};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(spec) = parse_state_json(text) else {
        return;
    };
    let Ok(rho) = spec.into_density() else {
        return;
    };
    // Anything accepted must survive a write/read cycle unchanged.
    let back = parse_state_json(&state_to_json(&rho))
        .expect("own output parses")
        .into_density()
        .expect("own output validates");
    assert_eq!(back.matrix(), rho.matrix());

    let c = canonicalize(&rho);
    assert!(c.t_abs.iter().all(|t| t.is_finite()));
});
