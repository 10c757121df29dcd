#![no_main]

use libfuzzer_sys::fuzz_target;
use qtele_core::qstate::parse_vector3;

fuzz_target!(|data: &str| {
    if let Ok(v) = parse_vector3(data) {
        assert!(v.iter().all(|x| x.is_finite()));
        let text = format!("{},{},{}", v[0], v[1], v[2]);
        assert_eq!(parse_vector3(&text).unwrap(), v);
    }
});
