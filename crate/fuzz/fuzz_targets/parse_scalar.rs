#![no_main]

use libfuzzer_sys::fuzz_target;
use qtele_core::qstate::parse_scalar;

fuzz_target!(|data: &str| {
    if let Ok(x) = parse_scalar(data) {
        assert!(x.is_finite());
        assert_eq!(parse_scalar(&x.to_string()).unwrap(), x);
    }
});
