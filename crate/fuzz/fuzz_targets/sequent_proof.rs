#![no_main]

use feasint::kernel::{check_sequent_proof, SequentProof};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if data.len() > 8192 {
        return;
    }
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(p) = SequentProof::parse(text) {
        let verdict = check_sequent_proof(&p);
        let again = SequentProof::parse(&p.to_text()).unwrap();
        assert_eq!(check_sequent_proof(&again).accepted(), verdict.accepted());
    }
});
