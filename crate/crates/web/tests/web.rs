use knotq_web::{curve_summary, lemma_text, q_summary, CurveSummary};

#[test]
fn trefoil_summary() {
    let s = q_summary("X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)").unwrap();
    assert_eq!(s.q, "2z^2+2z-3");
    assert_eq!((s.maxdeg, s.m, s.crossings, s.bridge_length), (2, 1, 3, 1));
    assert_eq!(
        s.terms,
        vec![(2, "2".into()), (1, "2".into()), (0, "-3".into())]
    );
}

#[test]
fn unknot_and_errors() {
    let s = q_summary("").unwrap();
    assert_eq!((s.q.as_str(), s.maxdeg, s.m), ("1", 0, 0));
    assert!(q_summary("X(1,2,3").is_err());
}

#[test]
fn curves() {
    assert_eq!(
        curve_summary("a b a b").unwrap(),
        CurveSummary {
            crossings: 2,
            regions: 3,
            distance: 1
        }
    );
    assert!(curve_summary("1 2 1 3 2 3").is_err());
    assert!(lemma_text(2).unwrap().starts_with("c\t"));
    assert!(lemma_text(9).is_err());
}
