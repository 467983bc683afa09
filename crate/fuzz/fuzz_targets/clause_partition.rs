#![no_main]

use feasint::generators::{Clause, ClauseSet, Lit, SplitClauseSet};
use feasint::AtomTable;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let set = ClauseSet::new(
        vec![
            Clause::new(vec![Lit::pos(1), Lit::neg(2)]),
            Clause::new(vec![Lit::neg(1)]),
            Clause::new(vec![Lit::pos(2)]),
        ],
        AtomTable::default(),
    );
    if let Ok(split) = SplitClauseSet::parse_partition(set.clone(), text) {
        assert_eq!(SplitClauseSet::parse_partition(set, &split.partition_text()).unwrap(), split);
    }
});
