#![no_main]

use feasint::Sequent;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(s) = Sequent::parse(text) {
        assert_eq!(Sequent::parse(&s.to_text()).unwrap(), s);
    }
});
