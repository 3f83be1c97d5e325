#![no_main]

use libfuzzer_sys::fuzz_target;
use lkvr::ValueToken;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(token) = text.parse::<ValueToken>() {
        let printed = token.to_string();
        assert_eq!(printed.parse::<ValueToken>().as_ref(), Ok(&token));
    }
});
