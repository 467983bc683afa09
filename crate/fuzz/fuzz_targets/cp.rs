#![no_main]

use feasint::generators::{Clause, ClauseSet, Lit};
use feasint::kernel::{check_cp, CpRefutation};
use feasint::AtomTable;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if data.len() > 8192 {
        return;
    }
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(r) = CpRefutation::parse(text) {
        let set = ClauseSet::new(
            vec![
                Clause::new(vec![Lit::pos(1), Lit::neg(2)]),
                Clause::new(vec![Lit::neg(1)]),
                Clause::new(vec![Lit::pos(2)]),
            ],
            AtomTable::default(),
        );
        let _ = check_cp(&set, &r);
        assert_eq!(CpRefutation::parse(&r.to_text()).unwrap().to_text(), r.to_text());
    }
});
