#![no_main]

use feasint::generators::{Clause, ClauseSet, Lit};
use feasint::kernel::{check_ns, NsCertificate};
use feasint::AtomTable;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if data.len() > 4096 {
        return;
    }
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(cert) = NsCertificate::parse(text) {
        let set = ClauseSet::new(
            vec![
                Clause::new(vec![Lit::pos(1), Lit::neg(2)]),
                Clause::new(vec![Lit::neg(1)]),
                Clause::new(vec![Lit::pos(2)]),
            ],
            AtomTable::default(),
        );
        let _ = check_ns(&set, &cert, cert.field);
        assert_eq!(NsCertificate::parse(&cert.to_text()).unwrap().to_text(), cert.to_text());
    }
});
