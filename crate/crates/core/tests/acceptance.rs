//! Acceptance criteria. Prints one PASS/FAIL line per criterion, plus
//! indented notes, and exits non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use palwords::harness::{fixtures, return_claim, run_claim, check_claim, ClaimVerdict, Status};
use palwords::pal::{prefix_pal_set, Stability};
use palwords::word::{w, Alphabet};
use palwords::{pal_set, reversal_closure_check, stabilized_pal_set, PrefixStream, Word};

type Outcome = Result<Vec<String>, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn claim(id: &str) -> ClaimVerdict {
    run_claim(id, 1).unwrap_or_else(|e| panic!("{id}: {e}"))
}

fn num(v: &ClaimVerdict, key: &str) -> u64 {
    v.finding(key)
        .and_then(|x| x.as_u64())
        .unwrap_or_else(|| panic!("{}: no numeric finding {key}", v.claim_id))
}

fn set(words: &[&str]) -> BTreeSet<Word> {
    fixtures::word_set(words)
}

fn stabilized(name: &str) -> palwords::StabilizedPalSet {
    let s = PrefixStream::resolve(name).unwrap();
    stabilized_pal_set(&s, 64, 16384).unwrap()
}

fn paperfolding() -> Outcome {
    let stable = stabilized("paperfolding");
    let r = &stable.report;
    ensure(stable.stability == Stability::Stable, "stabilizer hit its cap")?;
    ensure(r.palindromes.contains(&Word::empty()), "ε missing from the set")?;
    ensure(r.count == 29, format!("{} palindromes", r.count))?;
    ensure(r.longest.len() == 13, format!("longest {}", r.longest.len()))?;
    let fixed = prefix_pal_set(&PrefixStream::resolve("paperfolding").unwrap(), 8192);
    ensure(fixed.count == 29, format!("{} palindromes in the 8192 prefix", fixed.count))?;
    Ok(vec![format!(
        "29 including ε, longest {}; stable from length {}",
        r.longest, stable.stable_horizon
    )])
}

fn phi_f() -> Outcome {
    let r = stabilized("phi-F").report;
    ensure(r.set() == set(fixtures::PHI_F_SET), format!("set {:?}", r.palindromes))?;
    ensure(r.count == 5, format!("{} palindromes", r.count))?;
    let closure = reversal_closure_check(&PrefixStream::resolve("phi-F").unwrap(), 2, 4096).unwrap();
    ensure(closure.missing(&w("bc")), "reversal of bc not reported missing")?;
    Ok(vec![])
}

fn berstel() -> Outcome {
    let r = stabilized("berstel4").report;
    ensure(r.set() == set(fixtures::BERSTEL_SET), format!("set {:?}", r.palindromes))?;
    let closure = reversal_closure_check(&PrefixStream::resolve("berstel4").unwrap(), 6, 4096).unwrap();
    ensure(closure.witness_missing.is_empty(), format!("{} missing reversals", closure.witness_missing.len()))?;
    Ok(vec![])
}

fn binary_length_9() -> Outcome {
    let v = claim("binary-min-nine");
    ensure(v.status == Status::Verified, format!("status {}", v.status))?;
    ensure(num(&v, "min_palindromes") == 9, "minimum is not 9")?;
    let attaining = &v.witness("attains the minimum").unwrap().words;
    ensure(attaining.contains(&w("aababbaab")), "aababbaab does not attain 9")?;
    Ok(vec![])
}

fn nine_palindrome_squares() -> Outcome {
    let v = claim("nine-palindrome-squares");
    let nine = &v.witness("exactly 9 palindromes").unwrap().words;
    let rotations = claim("nine-palindrome-squares-rotations");
    let notes = vec![
        format!(
            "{} length-12 words have exactly 9 palindromes; [aababb] gives 2 squares",
            nine.len()
        ),
        format!(
            "reading [aababb] as closed under rotation: {}",
            rotations.status
        ),
    ];
    let nine_set = set(fixtures::NINE_SET);
    ensure(nine.iter().all(|x| pal_set(x).set() == nine_set), "a 9-palindrome word has another set")
        .map_err(|e| format!("{e}; {}", notes.join("; ")))?;
    ensure(v.status == Status::Verified && nine.len() == 2, format!("status {}", v.status))
        .map_err(|e| format!("{e}; {}", notes.join("; ")))?;
    Ok(notes)
}

fn ten_palindrome_classes() -> Outcome {
    let classes = claim("ten-palindrome-classes");
    let extensions = claim("ten-palindrome-extensions");
    let rot = claim("ten-palindrome-classes-rotations");
    let amended = claim("ten-palindrome-extensions-amended");
    let notes = vec![
        format!(
            "as stated: {} of {} words classified, {} in more than one set (T1 = T2: {}), extensions {}",
            num(&classes, "classified"),
            num(&classes, "ten_palindrome_words"),
            num(&classes, "in_several_sets"),
            classes.finding("t1_equals_t2").unwrap(),
            extensions.status
        ),
        format!(
            "rotation-closed sets: classification {} ({} unclassified, T1/T3/T4 overlap {}), amended extensions {}",
            rot.status,
            num(&rot, "unclassified"),
            num(&rot, "overlap_between_t1_t3_t4"),
            amended.status
        ),
    ];
    let check = || -> Result<(), String> {
        ensure(classes.status == Status::Verified, format!("classification {}", classes.status))?;
        ensure(num(&classes, "in_several_sets") == 0, "words lie in more than one of T1..T4")?;
        ensure(extensions.status == Status::Verified, format!("extension cases {}", extensions.status))
    };
    check().map_err(|e| format!("{e}; {}", notes.join("; ")))?;
    Ok(notes)
}

fn psi_f() -> Outcome {
    let r = stabilized("psi-F").report;
    ensure(r.set() == set(fixtures::PSI_F_SET), format!("set {:?}", r.palindromes))?;
    ensure(r.count == 11, format!("{} palindromes", r.count))?;
    let closure = reversal_closure_check(&PrefixStream::resolve("psi-F").unwrap(), 5, 4096).unwrap();
    ensure(closure.missing(&w("abaaa")), "reversal of abaaa not reported missing")?;
    Ok(vec![])
}

fn tau_p() -> Outcome {
    let stable = stabilized("tau-P");
    ensure(stable.stability == Stability::Stable, "stabilizer hit its cap")?;
    ensure(stable.report.count == 17, format!("{} palindromes", stable.report.count))?;
    Ok(vec![format!("longest {}", stable.report.longest)])
}

fn short_palindromes() -> Outcome {
    let periodic = stabilized("pow:aabbab").report;
    ensure(periodic.longest.len() == 4, format!("(aabbab)^∞ longest {}", periodic.longest.len()))?;
    let closed = stabilized("closed-15").report;
    ensure(closed.set() == set(fixtures::CLOSED_15_SET), format!("closed-15 set {:?}", closed.palindromes))?;
    ensure(closed.longest.len() == 5, format!("closed-15 longest {}", closed.longest.len()))?;
    let v = claim("short-palindrome-bounds");
    ensure(v.status == Status::VerifiedUpToBound, format!("status {}", v.status))?;
    let bound = num(&v, "longest_avoiding_over_3") as usize;
    ensure(bound == fixtures::LONGEST_AVOIDING_PALINDROMES_OVER_3, format!("bound {bound}"))?;
    Ok(vec![format!("longest binary word with no palindrome longer than 3 has length {bound}")])
}

fn closed_13() -> Outcome {
    let v = claim("reversal-closed-13");
    ensure(v.status == Status::VerifiedUpToBound, format!("status {}", v.status))?;
    ensure(num(&v, "missing_reversals") == 0, "missing reversals reported")?;
    Ok(vec![])
}

fn non_rich() -> Outcome {
    let v = claim("non-rich-length-12");
    ensure(v.status == Status::Verified, format!("status {}", v.status))?;
    ensure(num(&v, "non_rich_words") == 850, format!("{} non-rich words", num(&v, "non_rich_words")))?;
    ensure(num(&v, "exceptional_sets") == 4, "not four exceptional sets")?;
    ensure(
        pal_set(&w("aaababaabaaa")).set() == set(fixtures::SET_D),
        "aaababaabaaa does not give D",
    )?;
    Ok(vec![format!("850 counts raw words ({} isomorphism classes)", num(&v, "non_rich_classes"))])
}

fn first_returns() -> Outcome {
    let mut notes = Vec::new();
    for id in ["returns-abaaab", "returns-baabaab", "returns-ababa", "returns-baaab"] {
        let v = claim(id);
        ensure(v.status == Status::VerifiedUpToBound, format!("{id}: {}", v.status))?;
        notes.push(format!("{id}: {} windows, {} distinct returns", num(&v, "windows"), num(&v, "distinct_returns")));
    }

    let original = return_claim("returns-baaab").unwrap();
    let mut weakened = original.clone();
    weakened.constraints.allowed_by_length.clear();
    let v = check_claim("returns-baaab-any-length-5", &weakened).unwrap();
    ensure(v.is_refuted(), "dropping the length-5 restriction did not refute")?;
    for witness in v.refutations() {
        let (window, ret) = (&witness.words[0], &witness.words[1]);
        ensure(weakened.replay_violation(window, ret), "witness does not replay")?;
        ensure(!original.replay_violation(window, ret), "witness also violates the original claim")?;
    }
    let first = v.refutations().next().unwrap();
    notes.push(format!(
        "without the length-5 restriction: {} counterexamples, e.g. window {} with return {}",
        v.refutations().count(),
        first.words[0],
        first.words[1]
    ));

    let original = return_claim("returns-abaaab").unwrap();
    let mut weakened = original.clone();
    weakened.constraints.pal_budget = Some(13);
    let v = check_claim("returns-abaaab-budget-13", &weakened).unwrap();
    ensure(v.is_refuted(), "raising the budget to 13 did not refute")?;
    let witness = v.refutations().next().unwrap();
    ensure(weakened.replay_violation(&witness.words[0], &witness.words[1]), "witness does not replay")?;

    let mut no_bbb = return_claim("returns-baaab").unwrap();
    no_bbb.constraints.forbidden_factors.remove(&w("bbb"));
    let v = check_claim("returns-baaab-bbb-allowed", &no_bbb).unwrap();
    notes.push(format!("allowing bbb in returns-baaab: {}", v.status));
    Ok(notes)
}

fn minpal_ladder() -> Outcome {
    let b9 = claim("minpal-binary-9");
    let b12 = claim("minpal-binary-12");
    let t9 = claim("minpal-ternary-9");
    ensure(num(&b9, "min_palindromes") == 9, "binary 9")?;
    ensure(num(&b12, "min_palindromes") == 9, "binary 12")?;
    ensure(num(&t9, "min_palindromes") == 4, "ternary 9")?;
    for v in [&b9, &b12, &t9] {
        ensure(v.status == Status::VerifiedUpToBound, format!("{} {}", v.claim_id, v.status))?;
    }
    let abc = PrefixStream::resolve("pow:abc").unwrap().prefix(12);
    let periodic = t9
        .witness("attains the minimum")
        .unwrap()
        .words
        .iter()
        .all(|x| x.least_period() == Ok(3) && palwords::canonical_class(x) == palwords::canonical_class(&abc.factor(0, 9)));
    ensure(periodic, "ternary minimum attained by a non-(abc)-periodic word")?;
    Ok(vec![format!("binary length 12 minimum attained by {} words", num(&b12, "attaining"))])
}

fn naive_pal_set(x: &Word) -> BTreeSet<Word> {
    let mut out = BTreeSet::from([Word::empty()]);
    for i in 0..x.len() {
        for j in i + 1..=x.len() {
            let f = x.factor(i, j - i);
            if f.is_palindrome() {
                out.insert(f);
            }
        }
    }
    out
}

fn oracle_equivalence() -> Outcome {
    let mut checked = 0u64;
    for n in 0..=14 {
        for x in palwords::harness::enumerate_words(Alphabet::BINARY, n, palwords::harness::Dedupe::None).unwrap() {
            let report = pal_set(&x);
            ensure(report.set() == naive_pal_set(&x), format!("mismatch on {x}"))?;
            ensure(report.count == report.palindromes.len(), format!("count mismatch on {x}"))?;
            checked += 1;
        }
    }
    Ok(vec![format!("{checked} words")])
}

fn main() {
    let criteria: &[Criterion] = &[
        ("paperfolding word has 29 palindromes including ε, longest 13", paperfolding),
        ("phi-F has {ε,a,b,c,aa}; reversal of bc missing", phi_f),
        ("berstel4 has {ε,a,b,c,d}; no missing reversal at k=6", berstel),
        ("binary length-9 words with both letters have at least 9 palindromes", binary_length_9),
        ("9-palindrome binary length-12 words are exactly the 2 squares over [aababb]", nine_palindrome_squares),
        ("10-palindrome length-14 words lie in exactly one of T1..T4; longest <= 6; extension cases hold", ten_palindrome_classes),
        ("psi-F has the 11 listed palindromes; reversal of abaaa missing", psi_f),
        ("tau-P has 17 palindromes", tau_p),
        ("(aabbab)^∞ longest 4; closed-15 set and longest 5; bounded avoidance of palindromes over 3", short_palindromes),
        ("closed-13 levels 2..=8 share the 13-set; closed under reversal", closed_13),
        ("850 non-rich length-12 words; exceptional sets A..D of size 12", non_rich),
        ("first-return claims verified at L=36; weakened constraints refute with replayable witnesses", first_returns),
        ("least palindrome counts: binary 9 -> 9, binary 12 -> 9, ternary 9 -> 4", minpal_ladder),
        ("palindrome sets agree with the naive oracle on binary words up to length 14", oracle_equivalence),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|panic| {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let ms = started.elapsed().as_millis();
        match outcome {
            Ok(notes) => {
                println!("PASS criterion {:>2}: {name} ({ms} ms)", i + 1);
                for note in notes {
                    println!("        {note}");
                }
            }
            Err(reason) => {
                failed += 1;
                println!("FAIL criterion {:>2}: {name} ({ms} ms)", i + 1);
                for part in reason.split("; ") {
                    println!("        {part}");
                }
            }
        }
    }
    println!("\n{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
