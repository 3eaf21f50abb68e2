#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(f) = fosep::parse_ltl(text) {
        let printed = f.to_string();
        assert_eq!(fosep::parse_ltl(&printed).unwrap(), f, "{printed}");
    }
});
