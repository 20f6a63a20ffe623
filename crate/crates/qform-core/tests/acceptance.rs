//! Acceptance gate: six end-to-end criteria, each printing one PASS/FAIL
//! line (visible with `cargo test --test acceptance -- --nocapture`).
//!
//! 1. The 152-form classification tables are reproduced exactly by
//!    exception scan up to 10 000 in under 5 minutes.
//! 2. All 18 halving-transform relations hold with explicit unimodular
//!    isometry witnesses, the halving containment holds to 2 000, and the
//!    diagonal discriminant-80 pair halves its exception set exactly
//!    ({24} ↔ {12}), in under 1 minute.
//! 3. The ternary-core lemmas hold with zero counterexamples up to 3 000
//!    (the parity-split lemma in both directions) in under 2 minutes.
//! 4. The closed-form local predicates agree with the digit-by-digit
//!    p-adic procedure up to 3 000, and the procedure is stable one digit
//!    past its sufficient depth on 500 seeded random cases.
//! 5. Every transcribed case table assembles witnesses across
//!    [100 000, 100 500], its guards partition [100 000, 110 000], the
//!    parametric family members also work just above their own
//!    thresholds, and certified exceptions fail assembly, in under
//!    3 minutes.
//! 6. The pruned enumerator agrees with the naive box oracle on 200
//!    seeded random (form, n) pairs, and isometric lattices have matching
//!    representation counts for all n ≤ 16.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qform_core::enumerate::{naive_vectors_with_norm, vectors_with_norm};
use qform_core::forms::embedded_corpus;
use qform_core::isometry::is_isometric;
use qform_core::matrix;
use qform_core::transform::lambda2;
use qform_core::verify::{
    check_closed_form_oracle_agreement, check_hensel_depth_stability,
    check_n10_genus_to_class, check_n3_outer_odd_witnesses, check_n4_genus_to_class,
    check_n5_parity_split, check_n7_witness_parities, check_scaled_binary_substitution,
    check_watson_suite, reproduce_tables, run_suite, Suite, SuiteConfig, VerificationReport,
    WATSON_PAIRS,
};

fn conclude(criterion: &str, description: &str, failures: &[String], started: Instant, limit: Option<Duration>) {
    let elapsed = started.elapsed();
    let over_time = limit.is_some_and(|l| elapsed > l);
    let ok = failures.is_empty() && !over_time;
    let verdict = if ok { "PASS" } else { "FAIL" };
    println!(
        "{verdict} {criterion}: {description} [{}ms{}]",
        elapsed.as_millis(),
        limit.map_or(String::new(), |l| format!(" / limit {}ms", l.as_millis())),
    );
    for f in failures.iter().take(10) {
        println!("  counterexample: {f}");
    }
    assert!(
        !over_time,
        "{criterion} exceeded its time limit: {}ms",
        elapsed.as_millis()
    );
    assert!(failures.is_empty(), "{criterion}: {:?}", &failures[..failures.len().min(10)]);
}

fn collect_failures(reports: &[VerificationReport]) -> Vec<String> {
    reports
        .iter()
        .filter(|r| !r.passed)
        .flat_map(|r| {
            r.counterexamples
                .iter()
                .map(|c| format!("{}: {c}", r.check_id))
        })
        .collect()
}

#[test]
fn criterion_1_classification_tables_reproduced() {
    let started = Instant::now();
    let report = reproduce_tables(10_000).expect("table scan runs");
    let failures = collect_failures(std::slice::from_ref(&report));
    conclude(
        "criterion 1",
        "152 exception sets reproduced exactly by scan to 10000",
        &failures,
        started,
        Some(Duration::from_secs(300)),
    );
}

#[test]
fn criterion_2_halving_transform_relations() {
    let started = Instant::now();
    let reports = check_watson_suite(2000).expect("halving suite runs");
    let mut failures = collect_failures(&reports);
    assert_eq!(reports.len(), 18);
    for r in &reports {
        if r.passed && !r.notes.iter().any(|n| n.contains("unimodular witness")) {
            failures.push(format!("{}: no recorded unimodular witness", r.check_id));
        }
    }
    let diagonal_pair = reports
        .iter()
        .find(|r| r.check_id == "watson:Q80^1->Q20^2")
        .expect("diagonal pair is in the suite");
    let halved_exactly = diagonal_pair
        .notes
        .iter()
        .any(|n| n.contains("halve exactly") && n.contains("[24]") && n.contains("[12]"));
    if !halved_exactly {
        failures.push("Q80^1/Q20^2 exception sets did not halve as {24} ↔ {12}".into());
    }
    conclude(
        "criterion 2",
        "18 halving relations with unimodular witnesses, containment to 2000, {24}↔{12}",
        &failures,
        started,
        Some(Duration::from_secs(60)),
    );
}

#[test]
fn criterion_3_ternary_core_lemmas() {
    let started = Instant::now();
    let reports = vec![
        check_n3_outer_odd_witnesses(3000).expect("runs"),
        check_n5_parity_split(3000).expect("runs"),
        check_n7_witness_parities(3000).expect("runs"),
        check_n4_genus_to_class(3000).expect("runs"),
        check_n10_genus_to_class(3000).expect("runs"),
        check_scaled_binary_substitution(3000).expect("runs"),
    ];
    let failures = collect_failures(&reports);
    conclude(
        "criterion 3",
        "core lemmas to 3000 with zero counterexamples (parity split two-sided)",
        &failures,
        started,
        Some(Duration::from_secs(120)),
    );
}

#[test]
fn criterion_4_local_oracle_agreement() {
    let started = Instant::now();
    let reports = vec![
        check_closed_form_oracle_agreement(3000).expect("runs"),
        check_hensel_depth_stability(500, 20_260_814).expect("runs"),
    ];
    let failures = collect_failures(&reports);
    conclude(
        "criterion 4",
        "closed-form local predicates ≡ digit procedure to 3000; depth stable on 500 cases",
        &failures,
        started,
        None,
    );
}

#[test]
fn criterion_5_case_table_campaign() {
    let started = Instant::now();
    let reports = run_suite(Suite::Recipes, &SuiteConfig::default()).expect("recipe suite runs");
    let mut failures = collect_failures(&reports);
    // The suite must include the assembly windows, the guard partitions,
    // and the certified-exception probe of the diagonal form.
    let assemblies = reports
        .iter()
        .filter(|r| r.check_id.ends_with(":assembly"))
        .count();
    let partitions = reports
        .iter()
        .filter(|r| r.check_id.ends_with(":partition"))
        .count();
    if partitions != 37 {
        failures.push(format!("expected 37 partition checks, got {partitions}"));
    }
    if assemblies < 37 {
        failures.push(format!("expected ≥ 37 assembly checks, got {assemblies}"));
    }
    if !reports
        .iter()
        .any(|r| r.check_id == "recipe:Q80^1:certified-exceptions")
    {
        failures.push("missing the certified-exception probe of the diagonal form".into());
    }
    conclude(
        "criterion 5",
        "37 case tables assemble on [100000,100500], partition [100000,110000], exception fails",
        &failures,
        started,
        Some(Duration::from_secs(180)),
    );
}

#[test]
fn criterion_6_enumeration_cross_validation() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let corpus = embedded_corpus();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..200 {
        let record = &corpus[rng.gen_range(0..corpus.len())];
        let n = rng.gen_range(0..=200i64);
        let lat = record.lattice();
        let fast = vectors_with_norm(&lat, n).expect("pruned enumeration runs");
        let naive = naive_vectors_with_norm(&lat, n).expect("box enumeration runs");
        if fast != naive {
            failures.push(format!(
                "{} at n={n}: pruned found {} vectors, box found {}",
                record.id,
                fast.len(),
                naive.len()
            ));
        }
    }
    for (source_id, target_id) in WATSON_PAIRS {
        let src = qform_core::corpus_record(source_id).unwrap().lattice();
        let tgt = qform_core::corpus_record(target_id).unwrap().lattice();
        let halved = lambda2(&src).expect("halving transform runs");
        match is_isometric(&halved, &tgt).expect("isometry decision runs") {
            Some(witness) => {
                let conj = matrix::conjugate(halved.gram(), &witness).expect("conjugation");
                if conj != *tgt.gram() {
                    failures.push(format!(
                        "witness for λ₂({source_id}) ≅ {target_id} fails UᵀGU = G'"
                    ));
                }
            }
            None => {
                failures.push(format!("λ₂({source_id}) not isometric to {target_id}"));
                continue;
            }
        }
        for n in 0..=16 {
            let a = vectors_with_norm(&halved, n).expect("runs").len();
            let b = vectors_with_norm(&tgt, n).expect("runs").len();
            if a != b {
                failures.push(format!(
                    "λ₂({source_id}) and {target_id} disagree at n={n}: {a} vs {b} vectors"
                ));
            }
        }
    }
    conclude(
        "criterion 6",
        "enumerator ≡ box oracle on 200 seeded cases; isometric pairs match rep counts n ≤ 16",
        &failures,
        started,
        None,
    );
}
