use palwords::harness::{manifest, return_claim, run_all, run_claim, check_claim, ClaimVerdict, Status};
use palwords::word::w;

#[test]
fn verdicts_are_deterministic() {
    for id in ["non-rich-length-12", "returns-baabaab", "stream-psi-F", "ten-palindrome-classes"] {
        let a = run_claim(id, 1).unwrap().without_timing();
        let b = run_claim(id, 1).unwrap().without_timing();
        assert_eq!(a, b, "{id}");
    }
}

#[test]
fn worker_count_does_not_change_verdicts() {
    for id in ["minpal-ternary-9", "nine-palindrome-squares", "ten-palindrome-classes-rotations"] {
        let serial = run_claim(id, 1).unwrap().without_timing();
        let parallel = run_claim(id, 4).unwrap().without_timing();
        assert_eq!(serial, parallel, "{id}");
    }
}

#[test]
fn run_all_covers_the_manifest_in_order() {
    let verdicts = run_all(3).unwrap();
    let ids: Vec<String> = verdicts.iter().map(|v| v.claim_id.clone()).collect();
    let expected: Vec<String> = manifest().into_iter().map(|c| c.id).collect();
    assert_eq!(ids, expected);
    for v in &verdicts {
        match v.status {
            Status::Refuted => assert!(v.refutations().any(|w| !w.words.is_empty()), "{v}"),
            Status::Verified => assert_eq!(v.refutations().count(), 0),
            Status::VerifiedUpToBound => {
                assert_eq!(v.refutations().count(), 0);
                assert!(!v.bound.is_empty(), "{} has no bound", v.claim_id);
            }
        }
    }
    let refuted: Vec<&str> = verdicts.iter().filter(|v| v.is_refuted()).map(|v| v.claim_id.as_str()).collect();
    assert_eq!(refuted, ["nine-palindrome-squares", "ten-palindrome-classes", "ten-palindrome-extensions"]);
}

#[test]
fn verdict_json_round_trips() {
    let v = run_claim("returns-abaaab", 1).unwrap();
    let text = serde_json::to_string(&v).unwrap();
    let back: ClaimVerdict = serde_json::from_str(&text).unwrap();
    assert_eq!(back, v);
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(value["status"], "verified-up-to-bound");
    assert_eq!(value["bound"]["length"], 36);
}

#[test]
fn refutations_replay() {
    let original = return_claim("returns-abaaab").unwrap();
    let mut loose = original.clone();
    loose.constraints.pal_budget = Some(13);
    let v = check_claim("loose", &loose).unwrap();
    assert!(v.is_refuted());
    for witness in v.refutations() {
        assert_eq!(witness.words.len(), 2);
        assert!(loose.replay_violation(&witness.words[0], &witness.words[1]));
        assert!(!original.replay_violation(&witness.words[0], &witness.words[1]));
    }
    assert!(v
        .refutations()
        .any(|r| r.words[1] == w("abaaabbabaabaaab")));
}

#[test]
fn excluded_repeat_counts_are_reported() {
    let mut claim = return_claim("returns-baabaab").unwrap();
    for family in &mut claim.families {
        family.min_repeats = 2;
    }
    let v = check_claim("narrow", &claim).unwrap();
    assert!(v.is_refuted());
    assert!(v.refutations().all(|r| r.role.starts_with("return at an excluded repeat count")));
}
