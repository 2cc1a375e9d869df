//! Instance files are read from user-supplied paths; parsing must reject
//! malformed text with an error, never a panic.
//!
//! ```bash
//! cargo +nightly fuzz run instance_parse fuzz/corpus/instance_parse
//! ```

#![no_main]

use atomcert_core::instance::parse_instance;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if text.len() > 64 * 1024 {
        return;
    }
    if let Ok(inst) = parse_instance(text) {
        // A validated instance must yield a usable ring and eigenbasis.
        let ring = inst.ambient_ring();
        let basis = ring.build_eigenbasis();
        assert_eq!(
            basis.symmetric.len() + basis.antisymmetric.len(),
            ring.dimension()
        );
    }
});
