#![no_main]

use feasint::generators::ClauseSet;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(set) = ClauseSet::parse_dimacs(text) {
        let back = ClauseSet::parse_dimacs(&set.to_dimacs("")).unwrap();
        assert_eq!(back.clauses, set.clauses);
    }
});
