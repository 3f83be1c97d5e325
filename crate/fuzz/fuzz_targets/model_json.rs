#![no_main]

use libfuzzer_sys::fuzz_target;
use lkvr::Model;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(m) = Model::from_json(text) {
        let json = m.to_json();
        let back = Model::from_json(&json).expect("written model reads back");
        assert_eq!(back.to_json(), json);
    }
});
