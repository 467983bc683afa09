#![no_main]

use feasint::Circuit;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(c) = Circuit::parse(text) {
        let back = Circuit::parse(&c.to_text()).unwrap();
        assert_eq!(back.to_text(), c.to_text());
        if c.inputs() <= 64 {
            let w: Vec<bool> = (0..c.inputs()).map(|i| i % 2 == 0).collect();
            let _ = c.eval(&w);
        }
    }
});
