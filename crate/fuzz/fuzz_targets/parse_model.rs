#![no_main]

use std::collections::BTreeSet;

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let _ = fosep::TemporalModel::parse(text, &BTreeSet::new());
    let alphabet = fosep::Alphabet::new(["a", "b", "{}", "{p}"]).unwrap();
    let _ = alphabet.parse_word(text);
});
