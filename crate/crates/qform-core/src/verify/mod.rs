//! The verification campaign: machine checks for every load-bearing claim
//! in the classification of primitively universal quaternary forms.
//!
//! Each check produces a [`VerificationReport`]: a stable identifier, the
//! parameters it ran with, an exhaustive list of counterexamples (empty on
//! success), and free-form notes. Checks only return `Err` for internal
//! faults (missing corpus records, arithmetic overflow); a falsified claim
//! is a *passing run with counterexamples*, reported, never panicked.

pub mod recipes;

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::enumerate::{exception_scan, Enumerator};
use crate::error::{Error, Result};
use crate::forms::{core_gram, corpus_record, embedded_corpus, CoreLabel};
use crate::isometry::is_isometric;
use crate::local::{
    core_gen_predicate, genus_represents, primitively_represented_over_zp_with_slack,
    satisfies_reduction_hypothesis,
};
use crate::matrix;
use crate::transform::lambda2;
use recipes::{RecipeKind, TheoremRecipe};

/// Outcome of one verification check.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    /// Stable identifier, e.g. `watson:Q80^1->Q20^2`.
    pub check_id: String,
    /// Human-readable parameters the check ran with.
    pub params: String,
    /// True iff `counterexamples` is empty.
    pub passed: bool,
    /// Exhaustive list of violations found, empty on success.
    pub counterexamples: Vec<String>,
    /// Informational notes (witness summaries, counts).
    pub notes: Vec<String>,
    /// Wall-clock time of the check.
    pub wall_time_ms: u128,
}

impl VerificationReport {
    fn finish(
        check_id: impl Into<String>,
        params: impl Into<String>,
        counterexamples: Vec<String>,
        notes: Vec<String>,
        started: Instant,
    ) -> VerificationReport {
        VerificationReport {
            check_id: check_id.into(),
            params: params.into(),
            passed: counterexamples.is_empty(),
            counterexamples,
            notes,
            wall_time_ms: started.elapsed().as_millis(),
        }
    }

    /// One-line `PASS`/`FAIL` rendering.
    pub fn summary_line(&self) -> String {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        let detail = if self.passed {
            String::new()
        } else {
            format!(" ({} counterexamples)", self.counterexamples.len())
        };
        format!(
            "{verdict} {} [{}] {}ms{detail}",
            self.check_id, self.params, self.wall_time_ms
        )
    }
}

/// The 18 halving-transform relations: `λ₂(source) ≅ target`, both corpus
/// forms. The first 14 targets are primitively universal; the last 4 are
/// almost universal, and there the exception sets determine each other
/// exactly (`E(target) = {m : 2m ∈ E(source)}`).
pub const WATSON_PAIRS: [(&str, &str); 18] = [
    ("Q24^6", "Q6^3"),
    ("Q40^2", "Q10^2"),
    ("Q40^1", "Q10^3"),
    ("Q52^3", "Q13^2"),
    ("Q56^1", "Q14^3"),
    ("Q68^3", "Q17^3"),
    ("Q72^1", "Q18^3"),
    ("Q72^3", "Q18^5"),
    ("Q80^3", "Q20^4"),
    ("Q88^1", "Q22^2"),
    ("Q88^3", "Q22^4"),
    ("Q92^2", "Q23^2"),
    ("Q96^2", "Q24^3"),
    ("Q104^1", "Q26^2"),
    ("Q24^1", "Q6^1"),
    ("Q28^1", "Q7^1"),
    ("Q60^1", "Q15^3"),
    ("Q80^1", "Q20^2"),
];

fn record_or_err(id: &str) -> Result<&'static crate::forms::FormRecord> {
    corpus_record(id).ok_or_else(|| Error::Corpus(format!("no corpus record named {id}")))
}

/// Verify one halving-transform relation.
///
/// Four facts are checked: the source satisfies the index-two reduction
/// hypothesis; `λ₂(source)` is isometric to the target via an explicit
/// unimodular witness; the scanned primitive exceptions obey the halving
/// containment `E(target) ⊆ {m : 2m ∈ E(source)}` (target scanned to
/// `bound`, source to `2·bound`); and both scans reproduce the corpus
/// exception sets. When source and target are both almost universal the
/// containment is promoted to exact equality.
pub fn check_watson_pair(source_id: &str, target_id: &str, bound: i64) -> Result<VerificationReport> {
    let started = Instant::now();
    let source = record_or_err(source_id)?;
    let target = record_or_err(target_id)?;
    let src_lat = source.lattice();
    let tgt_lat = target.lattice();
    let mut bad = Vec::new();
    let mut notes = Vec::new();

    if !satisfies_reduction_hypothesis(&src_lat) {
        bad.push(format!(
            "{source_id} fails the reduction hypothesis (2-adic unimodular rank > 2)"
        ));
    }

    let halved = lambda2(&src_lat)?;
    match is_isometric(&halved, &tgt_lat)? {
        Some(witness) => {
            let d = matrix::det(&witness)?;
            if d != 1 && d != -1 {
                bad.push(format!(
                    "isometry witness for λ₂({source_id}) ≅ {target_id} has det {d}"
                ));
            } else {
                // is_isometric already verified Uᵀ·G·U exactly; re-derive
                // here so the report stands on its own.
                let conj = matrix::conjugate(halved.gram(), &witness)?;
                if conj != *tgt_lat.gram() {
                    bad.push(format!(
                        "witness conjugation mismatch for λ₂({source_id}) ≅ {target_id}"
                    ));
                } else {
                    notes.push(format!(
                        "λ₂({source_id}) ≅ {target_id} via unimodular witness {witness:?}"
                    ));
                }
            }
        }
        None => bad.push(format!("λ₂({source_id}) is not isometric to {target_id}")),
    }

    let e_src = exception_scan(&src_lat, 2 * bound)?.missing;
    let e_tgt = exception_scan(&tgt_lat, bound)?.missing;
    for &m in &e_tgt {
        if !e_src.contains(&(2 * m)) {
            bad.push(format!(
                "halving containment fails: {m} ∈ E({target_id}) but {} ∉ E({source_id})",
                2 * m
            ));
        }
    }
    let expect_src: Vec<i64> = source
        .exception_set
        .iter()
        .copied()
        .filter(|&n| n <= 2 * bound)
        .collect();
    let expect_tgt: Vec<i64> = target
        .exception_set
        .iter()
        .copied()
        .filter(|&n| n <= bound)
        .collect();
    if e_src != expect_src {
        bad.push(format!(
            "E({source_id}) ∩ [1,{}] = {e_src:?}, corpus says {expect_src:?}",
            2 * bound
        ));
    }
    if e_tgt != expect_tgt {
        bad.push(format!(
            "E({target_id}) ∩ [1,{bound}] = {e_tgt:?}, corpus says {expect_tgt:?}"
        ));
    }
    let both_almost = !source.status.is_primitively_universal()
        && !target.status.is_primitively_universal();
    if both_almost {
        let halved_set: Vec<i64> = e_src
            .iter()
            .filter(|&&n| n % 2 == 0 && n / 2 <= bound)
            .map(|&n| n / 2)
            .collect();
        if halved_set != e_tgt {
            bad.push(format!(
                "exact halving fails: {{m : 2m ∈ E({source_id})}} = {halved_set:?} but \
                 E({target_id}) = {e_tgt:?}"
            ));
        } else {
            notes.push(format!(
                "exception sets halve exactly: E({source_id}) = {e_src:?} ↔ \
                 E({target_id}) = {e_tgt:?}"
            ));
        }
    } else {
        notes.push(format!(
            "E({source_id}) ∩ [1,{}] = {e_src:?}; E({target_id}) ∩ [1,{bound}] = {e_tgt:?}",
            2 * bound
        ));
    }

    Ok(VerificationReport::finish(
        format!("watson:{source_id}->{target_id}"),
        format!("bound={bound} (source scanned to {})", 2 * bound),
        bad,
        notes,
        started,
    ))
}

/// Run all 18 halving-transform checks.
pub fn check_watson_suite(bound: i64) -> Result<Vec<VerificationReport>> {
    WATSON_PAIRS
        .par_iter()
        .map(|&(s, t)| check_watson_pair(s, t, bound))
        .collect()
}

/// Every `n ≡ 4, 6 (mod 8)` up to the bound has a `⟨1,2,3⟩`-witness whose
/// outer coordinates (the `y²` and `3w²` slots) are both odd.
pub fn check_n3_outer_odd_witnesses(bound: i64) -> Result<VerificationReport> {
    let started = Instant::now();
    let core = Enumerator::new(&core_gram(CoreLabel::N3))?;
    let bad: Vec<String> = (1..=bound)
        .into_par_iter()
        .filter(|n| matches!(n % 8, 4 | 6))
        .map(|n| -> Result<Option<String>> {
            let hit = core.first_witness_where(n, |c| {
                c[0].rem_euclid(2) == 1 && c[2].rem_euclid(2) == 1
            })?;
            Ok(match hit {
                Some(_) => None,
                None => Some(format!("n={n} has no witness with both outer coordinates odd")),
            })
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok(VerificationReport::finish(
        "lemma:n3-outer-odd-witnesses",
        format!("core=N3 ⟨1,2,3⟩, n ≡ 4,6 (mod 8), n ≤ {bound}"),
        bad,
        vec![],
        started,
    ))
}

/// Parity dichotomy for the even slot of `⟨1,2,4⟩`: a represented `n` has
/// witnesses with the `4z²`-coordinate of *both* parities exactly when
/// `n ≡ 4 (mod 8)`, `n ≡ 6 (mod 16)`, or `n ≡ 8, 16 (mod 32)`. Checked in
/// both directions for every represented `n ≤ bound`, and the classes on
/// the right are checked to be represented at all.
pub fn check_n5_parity_split(bound: i64) -> Result<VerificationReport> {
    let started = Instant::now();
    let core = Enumerator::new(&core_gram(CoreLabel::N5))?;
    let bad: Vec<String> = (1..=bound)
        .into_par_iter()
        .map(|n| -> Result<Option<String>> {
            let classes =
                n % 8 == 4 || n % 16 == 6 || n % 32 == 8 || n % 32 == 16;
            let even = core
                .first_witness_where(n, |c| c[2].rem_euclid(2) == 0)?
                .is_some();
            let odd = core
                .first_witness_where(n, |c| c[2].rem_euclid(2) == 1)?
                .is_some();
            if classes && !(even && odd) {
                return Ok(Some(format!(
                    "n={n} lies in the split classes but has parities (even={even}, odd={odd})"
                )));
            }
            if !classes && even && odd {
                return Ok(Some(format!(
                    "n={n} has witnesses of both parities outside the split classes"
                )));
            }
            Ok(None)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok(VerificationReport::finish(
        "lemma:n5-parity-split",
        format!("core=N5 ⟨1,2,4⟩, two-sided, n ≤ {bound}"),
        bad,
        vec![],
        started,
    ))
}

/// Witness parities over `⟨1,2,5⟩` for `n` its genus represents: if
/// `8 | n` there is an all-odd witness; if `n ≡ 6 (mod 8)` there is a
/// witness with pattern (odd, even, odd).
pub fn check_n7_witness_parities(bound: i64) -> Result<VerificationReport> {
    let started = Instant::now();
    let core = Enumerator::new(&core_gram(CoreLabel::N7))?;
    let excluded = |n: i64| {
        // 5-adic obstruction: n = 5^{2s+1}·u with u ≡ ±2 (mod 5).
        let mut v = 0;
        let mut u = n;
        while u % 5 == 0 {
            u /= 5;
            v += 1;
        }
        v % 2 == 1 && matches!(u % 5, 2 | 3)
    };
    let bad: Vec<String> = (1..=bound)
        .into_par_iter()
        .filter(|&n| !excluded(n) && matches!(n % 8, 0 | 6))
        .map(|n| -> Result<Option<String>> {
            let want_even_middle = n % 8 == 6;
            let hit = core.first_witness_where(n, |c| {
                let p0 = c[0].rem_euclid(2) == 1;
                let p1 = c[1].rem_euclid(2) == 1;
                let p2 = c[2].rem_euclid(2) == 1;
                if want_even_middle {
                    p0 && !p1 && p2
                } else {
                    p0 && p1 && p2
                }
            })?;
            Ok(match hit {
                Some(_) => None,
                None => Some(format!(
                    "n={n} (n mod 8 = {}) has no witness with the required parities",
                    n % 8
                )),
            })
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok(VerificationReport::finish(
        "lemma:n7-witness-parities",
        format!("core=N7 ⟨1,2,5⟩, n ≡ 0,6 (mod 8) minus 5-adic exclusions, n ≤ {bound}"),
        bad,
        vec![],
        started,
    ))
}

/// Genus-to-class principle on selected congruence classes: for the given
/// core, every `n ≤ bound` in one of the listed classes that the genus
/// represents is represented by the core itself.
fn check_genus_to_class(
    check_id: &str,
    label: CoreLabel,
    classes: &[(i64, i64)],
    bound: i64,
) -> Result<VerificationReport> {
    let started = Instant::now();
    let gram = core_gram(label);
    let core = Enumerator::new(&gram)?;
    let in_classes = |n: i64| classes.iter().any(|&(m, r)| n.rem_euclid(m) == r);
    let bad: Vec<String> = (1..=bound)
        .into_par_iter()
        .filter(|&n| in_classes(n))
        .map(|n| -> Result<Option<String>> {
            if genus_represents(&gram, n)? && !core.represents(n)? {
                Ok(Some(format!(
                    "genus of {label:?} represents n={n} but the class itself does not"
                )))
            } else {
                Ok(None)
            }
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let classes_desc: Vec<String> = classes
        .iter()
        .map(|(m, r)| format!("n≡{r}({m})"))
        .collect();
    Ok(VerificationReport::finish(
        check_id,
        format!("core={label:?}, classes {}, n ≤ {bound}", classes_desc.join("∪")),
        bad,
        vec![],
        started,
    ))
}

/// Genus-to-class classes for the asymmetric discriminant-7 core: `n ≡ 0,2
/// (mod 3)` and `n ≡ 0,1 (mod 4)`.
pub fn check_n4_genus_to_class(bound: i64) -> Result<VerificationReport> {
    check_genus_to_class(
        "lemma:n4-genus-to-class",
        CoreLabel::N4,
        &[(3, 0), (3, 2), (4, 0), (4, 1)],
        bound,
    )
}

/// Genus-to-class classes for the discriminant-45 core: `n ≡ 0,2 (mod 3)`
/// and `n ≡ 0,3 (mod 4)`.
pub fn check_n10_genus_to_class(bound: i64) -> Result<VerificationReport> {
    check_genus_to_class(
        "lemma:n10-genus-to-class",
        CoreLabel::N10,
        &[(3, 0), (3, 2), (4, 0), (4, 3)],
        bound,
    )
}

/// Substitution in the binary form `2u² + v²`: whenever `m = 2u² + v²`
/// with both `u` and `v` divisible by 3, the same `m` is also `2b₁² + b₃²`
/// with neither coordinate divisible by 3.
pub fn check_scaled_binary_substitution(bound: i64) -> Result<VerificationReport> {
    let started = Instant::now();
    let mut targets = std::collections::BTreeSet::new();
    let mut u = 0i64;
    while 2 * u * u <= bound {
        let mut v = 0i64;
        while 2 * u * u + v * v <= bound {
            targets.insert(2 * u * u + v * v);
            v += 3;
        }
        u += 3;
    }
    targets.remove(&0);
    let mut bad = Vec::new();
    for &m in &targets {
        let mut found = false;
        let mut b1 = 1i64;
        'outer: while 2 * b1 * b1 <= m {
            if b1 % 3 != 0 {
                let rest = m - 2 * b1 * b1;
                let b3 = (rest as f64).sqrt().round() as i64;
                for c in [b3 - 1, b3, b3 + 1] {
                    if c > 0 && c * c == rest && c % 3 != 0 {
                        found = true;
                        break 'outer;
                    }
                }
            }
            b1 += 1;
        }
        if !found {
            bad.push(format!(
                "m={m} = 2u²+v² with 3|u, 3|v but no coprime-to-3 representation"
            ));
        }
    }
    let count = targets.len();
    Ok(VerificationReport::finish(
        "lemma:scaled-binary-substitution",
        format!("m = 2u²+v² ≤ {bound}, 3|u, 3|v"),
        bad,
        vec![format!("{count} target values checked")],
        started,
    ))
}

/// Regularity of the discriminant-34 core: for `n ≤ bound`, the core
/// represents `n` exactly when its genus does.
pub fn check_n9_regularity(bound: i64) -> Result<VerificationReport> {
    let started = Instant::now();
    let gram = core_gram(CoreLabel::N9);
    let core = Enumerator::new(&gram)?;
    let bad: Vec<String> = (1..=bound)
        .into_par_iter()
        .map(|n| -> Result<Option<String>> {
            let global = core.represents(n)?;
            let local = genus_represents(&gram, n)?;
            Ok(if global != local {
                Some(format!("n={n}: class represents = {global}, genus represents = {local}"))
            } else {
                None
            })
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok(VerificationReport::finish(
        "local:n9-regularity",
        format!("core=N9, n ≤ {bound}"),
        bad,
        vec![],
        started,
    ))
}

/// Class-number-one cores: representation by the core agrees with
/// representation by its genus everywhere up to the bound. This is both a
/// fact about the seven listed cores and a cross-check of the exact
/// enumeration engine against the p-adic decision procedure.
pub fn check_class_number_one_agreement(bound: i64) -> Result<VerificationReport> {
    let started = Instant::now();
    let labels = [
        CoreLabel::N1,
        CoreLabel::N2,
        CoreLabel::N3,
        CoreLabel::N5,
        CoreLabel::N6,
        CoreLabel::N7,
        CoreLabel::N8,
    ];
    let mut bad = Vec::new();
    for label in labels {
        let gram = core_gram(label);
        let core = Enumerator::new(&gram)?;
        let mut chunk: Vec<String> = (1..=bound)
            .into_par_iter()
            .map(|n| -> Result<Option<String>> {
                let global = core.represents(n)?;
                let local = genus_represents(&gram, n)?;
                Ok(if global != local {
                    Some(format!(
                        "core {label:?}, n={n}: class = {global}, genus = {local}"
                    ))
                } else {
                    None
                })
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
        bad.append(&mut chunk);
    }
    Ok(VerificationReport::finish(
        "local:class-number-one-agreement",
        format!("cores N1,N2,N3,N5,N6,N7,N8, n ≤ {bound}"),
        bad,
        vec![],
        started,
    ))
}

/// The closed-form congruence descriptions of the cores' genus-missed sets
/// agree with the digit-by-digit p-adic decision procedure.
pub fn check_closed_form_oracle_agreement(bound: i64) -> Result<VerificationReport> {
    let started = Instant::now();
    let labels = [
        CoreLabel::N1,
        CoreLabel::N3,
        CoreLabel::N4,
        CoreLabel::N5,
        CoreLabel::N7,
        CoreLabel::N9,
        CoreLabel::N10,
    ];
    let mut bad = Vec::new();
    for label in labels {
        let gram = core_gram(label);
        let mut chunk: Vec<String> = (1..=bound)
            .into_par_iter()
            .map(|n| -> Result<Option<String>> {
                let closed = core_gen_predicate(label, n)?;
                let digits = genus_represents(&gram, n)?;
                Ok(if closed != digits {
                    Some(format!(
                        "core {label:?}, n={n}: closed form = {closed}, digit procedure = {digits}"
                    ))
                } else {
                    None
                })
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
        bad.append(&mut chunk);
    }
    Ok(VerificationReport::finish(
        "local:closed-form-oracle-agreement",
        format!("cores N1,N3,N4,N5,N7,N9,N10, n ≤ {bound}"),
        bad,
        vec![],
        started,
    ))
}

/// The p-adic decision procedure is stable in its digit depth: exploring
/// one level deeper than the sufficient bound never changes the answer.
/// Randomized over cores, targets, and the primes dividing `2·det`.
pub fn check_hensel_depth_stability(cases: usize, seed: u64) -> Result<VerificationReport> {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = Vec::new();
    let mut checked = 0usize;
    for _ in 0..cases {
        let label = CoreLabel::NAMED[rng.gen_range(0..CoreLabel::NAMED.len())];
        let gram = core_gram(label);
        let n = rng.gen_range(1..=5000i64);
        let mut primes = vec![2i64];
        let mut d = gram.discriminant().unsigned_abs();
        while d % 2 == 0 {
            d /= 2;
        }
        let mut p = 3u128;
        while p * p <= d {
            if d % p == 0 {
                primes.push(p as i64);
                while d % p == 0 {
                    d /= p;
                }
            }
            p += 2;
        }
        if d > 1 {
            primes.push(d as i64);
        }
        for p in primes {
            let base = primitively_represented_over_zp_with_slack(&gram, n, p, 0)?;
            let deeper = primitively_represented_over_zp_with_slack(&gram, n, p, 1)?;
            checked += 1;
            if base != deeper {
                bad.push(format!(
                    "core {label:?}, n={n}, p={p}: depth K says {base}, depth K+1 says {deeper}"
                ));
            }
        }
    }
    Ok(VerificationReport::finish(
        "local:hensel-depth-stability",
        format!("{cases} random cases, seed={seed}"),
        bad,
        vec![format!("{checked} (core, n, p) triples compared")],
        started,
    ))
}

/// Reproduce the classification tables: scan every corpus form up to the
/// bound and compare the primitive exceptions found against the corpus
/// exception sets (empty for the 107 primitively universal forms, the
/// certified finite sets for the 45 almost universal ones).
pub fn reproduce_tables(bound: i64) -> Result<VerificationReport> {
    let started = Instant::now();
    let mut bad = Vec::new();
    let mut universal = 0usize;
    let mut almost = 0usize;
    for record in embedded_corpus() {
        let scanned = exception_scan(&record.lattice(), bound)?.missing;
        let expected: Vec<i64> = record
            .exception_set
            .iter()
            .copied()
            .filter(|&n| n <= bound)
            .collect();
        if scanned != expected {
            bad.push(format!(
                "{}: scan found exceptions {scanned:?}, corpus says {expected:?}",
                record.id
            ));
        }
        if record.status.is_primitively_universal() {
            universal += 1;
        } else {
            almost += 1;
        }
    }
    let total = embedded_corpus().len();
    Ok(VerificationReport::finish(
        "tables:exception-sets",
        format!("{total} forms, n ≤ {bound}"),
        bad,
        vec![format!(
            "{universal} primitively universal + {almost} almost universal forms reproduced"
        )],
        started,
    ))
}

/// Run one case table over a window: every non-exception `n` in
/// `[max(lo, threshold), hi]` must assemble a primitive witness, and every
/// certified exception in the window must fail to.
pub fn check_theorem_recipe(
    recipe: &TheoremRecipe,
    lo: i64,
    hi: i64,
) -> Result<VerificationReport> {
    let started = Instant::now();
    let lo = lo.max(recipe.threshold).max(1);
    let bad: Vec<String> = (lo..=hi)
        .into_par_iter()
        .map(|n| -> Result<Option<String>> {
            let assembled = recipe.try_assemble(n)?;
            let expected_exception = recipe.known_exceptions.contains(&n);
            Ok(match (assembled, expected_exception) {
                (Some(_), true) => Some(format!(
                    "n={n} is a certified exception but the table assembled a witness"
                )),
                (None, false) => Some(format!("n={n} failed to assemble")),
                _ => None,
            })
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok(VerificationReport::finish(
        format!("recipe:{}:assembly", recipe.form_id),
        format!("window [{lo},{hi}]"),
        bad,
        vec![],
        started,
    ))
}

/// The guards of a transcribed table partition the integers: over the
/// window, every `n` matches exactly one branch.
pub fn check_guard_partition(
    recipe: &TheoremRecipe,
    lo: i64,
    hi: i64,
) -> Result<VerificationReport> {
    let started = Instant::now();
    let mut bad = Vec::new();
    if recipe.kind == RecipeKind::Transcribed {
        for n in lo.max(1)..=hi {
            let hits = recipe.matching_branches(n);
            if hits.len() != 1 {
                bad.push(format!("n={n} matches {} branches", hits.len()));
            }
        }
    }
    Ok(VerificationReport::finish(
        format!("recipe:{}:partition", recipe.form_id),
        format!("window [{},{hi}]", lo.max(1)),
        bad,
        vec![],
        started,
    ))
}

/// Certified exceptions of recipe-checked forms must fail assembly (the
/// expected-failure probe; for the diagonal discriminant-80 form this is
/// `n = 24`, whose branch leaves a negative core target).
pub fn check_recipe_exceptions(recipe: &TheoremRecipe) -> Result<Option<VerificationReport>> {
    if recipe.known_exceptions.is_empty() {
        return Ok(None);
    }
    let started = Instant::now();
    let mut bad = Vec::new();
    for &n in &recipe.known_exceptions {
        if recipe.try_assemble(n)?.is_some() {
            bad.push(format!(
                "certified exception n={n} unexpectedly assembled a witness"
            ));
        }
    }
    Ok(Some(VerificationReport::finish(
        format!("recipe:{}:certified-exceptions", recipe.form_id),
        format!("exceptions {:?}", recipe.known_exceptions),
        bad,
        vec![],
        started,
    )))
}

/// Which groups of checks to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    /// The 18 halving-transform relations.
    Watson,
    /// Ternary-core lemmas and local-arithmetic cross-checks.
    Lemmas,
    /// Case-table assembly, partition, and exception probes.
    Recipes,
    /// Classification-table reproduction by exception scan.
    Tables,
    /// Everything, in the order above.
    All,
}

impl std::str::FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Suite> {
        match s {
            "watson" => Ok(Suite::Watson),
            "lemmas" => Ok(Suite::Lemmas),
            "recipes" => Ok(Suite::Recipes),
            "tables" => Ok(Suite::Tables),
            "all" => Ok(Suite::All),
            other => Err(Error::Parse(format!(
                "unknown suite {other:?} (expected watson, lemmas, recipes, tables, or all)"
            ))),
        }
    }
}

/// Optional overrides for suite defaults.
#[derive(Clone, Copy, Debug, Default)]
pub struct SuiteConfig {
    /// Override the scan/lemma bound of the suite.
    pub bound: Option<i64>,
    /// Override the assembly window of the recipes suite.
    pub window: Option<(i64, i64)>,
}

const DEFAULT_WATSON_BOUND: i64 = 2000;
const DEFAULT_LEMMA_BOUND: i64 = 3000;
const DEFAULT_TABLES_BOUND: i64 = 10_000;
const DEFAULT_RECIPE_WINDOW: (i64, i64) = (100_000, 100_500);
const PARTITION_SPAN: i64 = 10_000;
const FAMILY_NEAR_THRESHOLD_SPAN: i64 = 200;
const HENSEL_CASES: usize = 500;
const HENSEL_SEED: u64 = 20_260_814;

fn run_watson(config: &SuiteConfig) -> Result<Vec<VerificationReport>> {
    check_watson_suite(config.bound.unwrap_or(DEFAULT_WATSON_BOUND))
}

fn run_lemmas(config: &SuiteConfig) -> Result<Vec<VerificationReport>> {
    let bound = config.bound.unwrap_or(DEFAULT_LEMMA_BOUND);
    Ok(vec![
        check_n3_outer_odd_witnesses(bound)?,
        check_n5_parity_split(bound)?,
        check_n7_witness_parities(bound)?,
        check_n4_genus_to_class(bound)?,
        check_n10_genus_to_class(bound)?,
        check_scaled_binary_substitution(bound)?,
        check_n9_regularity(bound)?,
        check_class_number_one_agreement(bound)?,
        check_closed_form_oracle_agreement(bound)?,
        check_hensel_depth_stability(HENSEL_CASES, HENSEL_SEED)?,
    ])
}

fn run_recipes(config: &SuiteConfig) -> Result<Vec<VerificationReport>> {
    let (lo, hi) = config.window.unwrap_or(DEFAULT_RECIPE_WINDOW);
    let mut reports = Vec::new();
    for recipe in recipes::all_transcribed_recipes()? {
        reports.push(check_theorem_recipe(&recipe, lo, hi)?);
        if recipe.threshold + FAMILY_NEAR_THRESHOLD_SPAN < lo {
            // Exercise the table just above its own claim threshold too
            // (the parametric family members have small thresholds).
            reports.push(check_theorem_recipe(
                &recipe,
                recipe.threshold,
                recipe.threshold + FAMILY_NEAR_THRESHOLD_SPAN,
            )?);
        }
        reports.push(check_guard_partition(&recipe, lo, lo + PARTITION_SPAN)?);
        if let Some(probe) = check_recipe_exceptions(&recipe)? {
            reports.push(probe);
        }
    }
    Ok(reports)
}

fn run_tables(config: &SuiteConfig) -> Result<Vec<VerificationReport>> {
    Ok(vec![reproduce_tables(
        config.bound.unwrap_or(DEFAULT_TABLES_BOUND),
    )?])
}

/// Run a suite and return its reports in a fixed, deterministic order.
pub fn run_suite(suite: Suite, config: &SuiteConfig) -> Result<Vec<VerificationReport>> {
    match suite {
        Suite::Watson => run_watson(config),
        Suite::Lemmas => run_lemmas(config),
        Suite::Recipes => run_recipes(config),
        Suite::Tables => run_tables(config),
        Suite::All => {
            let mut all = run_watson(config)?;
            all.extend(run_lemmas(config)?);
            all.extend(run_recipes(config)?);
            all.extend(run_tables(config)?);
            Ok(all)
        }
    }
}
