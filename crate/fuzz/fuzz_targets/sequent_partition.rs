#![no_main]

use feasint::classical::Partition;
use feasint::{Formula, Sequent};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let s = Sequent::new(
        vec![Formula::and(Formula::atom(1), Formula::atom(2)), Formula::atom(3)],
        vec![Formula::or(Formula::atom(1), Formula::atom(4))],
    );
    if let Ok(part) = Partition::parse(text, &s) {
        assert_eq!(Partition::parse(&part.to_text(), &s).unwrap(), part);
    }
});
