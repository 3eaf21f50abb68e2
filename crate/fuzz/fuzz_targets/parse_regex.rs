#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let alphabet = fosep::Alphabet::new(["a", "b", "{}", "{p}"]).unwrap();
    if let Ok(r) = fosep::parse_regex(text, &alphabet) {
        let _ = fosep::Nfa::from_regex(&r, &alphabet);
    }
});
