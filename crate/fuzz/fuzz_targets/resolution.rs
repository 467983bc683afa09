#![no_main]

use feasint::generators::{Clause, ClauseSet, Lit};
use feasint::kernel::{check_resolution, ResolutionRefutation};
use feasint::AtomTable;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(r) = ResolutionRefutation::parse(text) {
        let set = ClauseSet::new(
            vec![
                Clause::new(vec![Lit::pos(1), Lit::neg(2)]),
                Clause::new(vec![Lit::neg(1)]),
                Clause::new(vec![Lit::pos(2)]),
            ],
            AtomTable::default(),
        );
        let _ = check_resolution(&set, &r);
        assert_eq!(ResolutionRefutation::parse(&r.to_text()).unwrap().to_text(), r.to_text());
    }
});
