#![no_main]

use feasint::Formula;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(f) = Formula::parse(text) {
        let printed = f.to_sexpr();
        assert_eq!(Formula::parse(&printed).unwrap(), f);
        if let Ok(g) = f.to_nnf() {
            assert!(g.is_nnf());
        }
    }
});
