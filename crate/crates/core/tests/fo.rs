mod support;

use feasint::fo::{fold_canonical, for_each_tuple, parse_sentence, Interpretation};
use feasint::formula::AtomId;
use support::*;

#[test]
fn malformed_sentences_are_rejected() {
    for text in [
        "",
        "(forall (x s) (rel R x))",
        "(rel R s) (forall (x s) (rel R y))",
        "(rel R s) (rel R s) (forall (x s) (rel R x))",
        "(rel R s) (forall (x s) (frob (rel R x)))",
        "(rel R s) (forall (x s)",
    ] {
        assert!(parse_sentence(text).is_err(), "{text:?}");
    }
}

#[test]
fn missing_or_empty_domains_are_errors() {
    let s = parse_sentence("(rel R s) (forall (x s) (rel R x))").unwrap();
    assert!(s.translate(&Interpretation::new([("t", 2)])).is_err());
    assert!(s.translate(&Interpretation::new([("s", 0)])).is_err());
}

#[test]
fn tuples_are_lexicographic() {
    let mut seen = Vec::new();
    for_each_tuple(&[2, 3], |t| seen.push(t.to_vec()));
    assert_eq!(seen.len(), 6);
    assert_eq!(seen.first().unwrap(), &vec![1, 1]);
    assert_eq!(seen[1], vec![1, 2]);
    assert_eq!(seen.last().unwrap(), &vec![2, 3]);
    let mut none = 0;
    for_each_tuple(&[2, 0], |_| none += 1);
    assert_eq!(none, 0);
}

/// A symmetric, irreflexive relation with no isolated point, checked
/// against direct model checking on every extension.
#[test]
fn graph_sentence_matches_model_checking() {
    let s = parse_sentence(
        "(rel E v v) (and (forall (x v) (not (rel E x x))) \
         (and (forall (x v) (y v) (imp (rel E x y) (rel E y x))) (forall (x v) (exists (y v) (rel E x y)))))",
    )
    .unwrap();
    for n in 1..=3u32 {
        let interp = Interpretation::new([("v", n)]);
        let (f, table) = s.translate(&interp).unwrap();
        let folded = fold_canonical(&f).unwrap();
        assert!(folded.is_nnf());
        for ext in 0..1u64 << (n * n) {
            let e = |x: u32, y: u32| ext >> ((x - 1) * n + y - 1) & 1 == 1;
            let val = |p: AtomId| {
                let (x, y) = (1..=n).flat_map(|x| (1..=n).map(move |y| (x, y))).find(|(x, y)| table.get("E", &[*x, *y]) == p).unwrap();
                e(x, y)
            };
            let want = (1..=n).all(|x| !e(x, x))
                && (1..=n).all(|x| (1..=n).all(|y| !e(x, y) || e(y, x)))
                && (1..=n).all(|x| (1..=n).any(|y| e(x, y)));
            assert_eq!(ev(&f, &val), want, "n={n} ext={ext:#b}");
            assert_eq!(ev(&folded, &val), want, "folded n={n} ext={ext:#b}");
        }
    }
}
