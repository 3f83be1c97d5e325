#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    // Accepted input must survive a print/parse round trip.
    if let Ok(f) = lkvr::parse(text) {
        let printed = f.print();
        let again = lkvr::parse(&printed).expect("printed formula parses");
        assert_eq!(again, f);
        assert_eq!(again.print(), printed);
    }
});
