#![no_main]

use libfuzzer_sys::fuzz_target;
use lkvr::proofs::{parse_proof, verify};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(lines) = parse_proof(text) {
        let _ = verify(&lines);
    }
});
