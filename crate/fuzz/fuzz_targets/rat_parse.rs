#![no_main]

use atomcert_core::algebra::Rat;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if s.len() > 4096 {
        return;
    }
    if let Ok(r) = s.parse::<Rat>() {
        // Canonical display must parse back to the same value.
        let back: Rat = r.to_string().parse().expect("display round-trips");
        assert_eq!(back, r);
    }
});
