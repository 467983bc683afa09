#![no_main]

use feasint::fo::{parse_sentence, Interpretation};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if data.len() > 1024 {
        return;
    }
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(s) = parse_sentence(text) {
        let interp = Interpretation::new([("s", 2), ("t", 2), ("v", 2)]);
        let _ = s.translate(&interp);
        let _ = s.translate_folded(&interp);
    }
});
