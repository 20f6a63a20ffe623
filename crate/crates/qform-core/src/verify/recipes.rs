//! Branch-table certificates for the quaternary universality arguments.
//!
//! Each quaternary form under test splits as `core ⟂ ℤg` with a ternary core
//! and a rank-1 complement of norm `k`. Its universality argument picks, for
//! every congruence class of `n`, a fixed complement multiplier `u` so that
//! `ñ = n − k·u²` lands in the represented set of the core, imposes a parity
//! or residue side condition on the ternary witness, and reassembles a
//! primitive rank-4 witness of `n`. This module transcribes those case
//! tables and re-runs them mechanically over windows of integers.

use crate::enumerate::{coords_gcd, Enumerator};
use crate::error::{Error, Result};
use crate::forms::{corpus_record, CoreLabel, FormRecord, GramLattice, Sextuple};
use crate::transform::core_decomposition;

/// Congruence guard: `n` matches iff `n mod modulus` lies in `residues`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Guard {
    pub modulus: i64,
    pub residues: Vec<i64>,
}

impl Guard {
    fn new(modulus: i64, residues: &[i64]) -> Guard {
        Guard {
            modulus,
            residues: residues.to_vec(),
        }
    }

    /// True iff `n` lies in one of the guard's residue classes.
    pub fn matches(&self, n: i64) -> bool {
        self.residues.contains(&n.rem_euclid(self.modulus))
    }
}

/// Side condition imposed on the ternary core witness `(a₁, a₂, a₃)`.
///
/// Coordinate indices are 0-based positions in the core basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SideCondition {
    /// Any witness is acceptable.
    None,
    /// The ternary witness itself must be primitive (used when the
    /// complement multiplier is 0 or 2 and the argument cites a primitive
    /// local representation).
    Primitive,
    /// The indexed coordinate must be even.
    Even(usize),
    /// The indexed coordinate must be odd.
    Odd(usize),
    /// All three coordinates must be odd.
    AllOdd,
    /// Both indexed coordinates must be odd.
    BothOdd(usize, usize),
    /// The indexed coordinates must not both be even.
    NotBothEven(usize, usize),
}

impl SideCondition {
    /// True iff `coords` satisfies the condition.
    pub fn accepts(&self, coords: &[i64]) -> bool {
        let odd = |i: usize| coords[i].rem_euclid(2) == 1;
        match *self {
            SideCondition::None => true,
            SideCondition::Primitive => coords_gcd(coords) == 1,
            SideCondition::Even(i) => !odd(i),
            SideCondition::Odd(i) => odd(i),
            SideCondition::AllOdd => (0..coords.len()).all(odd),
            SideCondition::BothOdd(i, j) => odd(i) && odd(j),
            SideCondition::NotBothEven(i, j) => odd(i) || odd(j),
        }
    }
}

/// One row of a case table. All guards must match (conjunction). On match,
/// the checker subtracts `k·multiplier²` (then `k·alt²` if the first choice
/// yields no assembly and an alternative is offered) and searches the core
/// for a witness passing `side` whose reassembly with the complement is
/// primitive.
#[derive(Clone, Debug)]
pub struct Branch {
    pub guards: Vec<Guard>,
    pub multiplier: i64,
    pub alt_multiplier: Option<i64>,
    pub side: SideCondition,
}

impl Branch {
    fn matches(&self, n: i64) -> bool {
        self.guards.iter().all(|g| g.matches(n))
    }

    fn multipliers(&self) -> impl Iterator<Item = i64> + '_ {
        std::iter::once(self.multiplier).chain(self.alt_multiplier)
    }
}

/// How the branch data was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RecipeKind {
    /// Case table transcribed from a written argument.
    Transcribed,
    /// Same-core fallback for forms whose written arguments are only
    /// sketched: try multipliers `u = 0, 1, 2, …` while `k·u² ≤ n` with no
    /// side condition. Not part of the verification campaign.
    Analogous,
}

/// A case table bound to a corpus form, ready to check.
pub struct TheoremRecipe {
    pub form_id: String,
    pub core_label: Option<CoreLabel>,
    pub kind: RecipeKind,
    /// Smallest `n` the table claims to cover.
    pub threshold: i64,
    pub branches: Vec<Branch>,
    /// Exceptions the corpus certifies; the checker expects assembly to
    /// fail exactly there.
    pub known_exceptions: Vec<i64>,
    host: GramLattice,
    core_basis: Vec<Vec<i64>>,
    complement_gen: Vec<i64>,
    complement_norm: i64,
    core_enum: Enumerator,
}

/// A fully assembled primitive witness produced by a recipe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assembly {
    /// Multiplier used on the complement generator.
    pub multiplier: i64,
    /// Ternary core witness.
    pub core_coords: Vec<i64>,
    /// Reassembled ambient coordinates (gcd 1, norm `n`).
    pub ambient_coords: Vec<i64>,
}

impl TheoremRecipe {
    fn bind(
        form_id: &str,
        kind: RecipeKind,
        threshold: i64,
        branches: Vec<Branch>,
    ) -> Result<TheoremRecipe> {
        let record = corpus_record(form_id)
            .ok_or_else(|| Error::Recipe(format!("no corpus record named {form_id}")))?;
        Self::bind_record(record, kind, threshold, branches)
    }

    fn bind_record(
        record: &FormRecord,
        kind: RecipeKind,
        threshold: i64,
        branches: Vec<Branch>,
    ) -> Result<TheoremRecipe> {
        let dec = core_decomposition(record)?;
        let host = record.lattice();
        let core_lat = dec.core.lattice()?;
        Ok(TheoremRecipe {
            form_id: record.id.to_string(),
            core_label: dec.label,
            kind,
            threshold,
            branches,
            known_exceptions: record.exception_set.clone(),
            core_enum: Enumerator::new(&core_lat)?,
            core_basis: dec.core.basis.clone(),
            complement_gen: dec.complement_gen.clone(),
            complement_norm: dec.complement_norm,
            host,
        })
    }

    /// Norm of the rank-1 complement (`k` in `ñ = n − k·u²`).
    pub fn complement_norm(&self) -> i64 {
        self.complement_norm
    }

    /// Branches of the table matching `n`.
    pub fn matching_branches(&self, n: i64) -> Vec<usize> {
        self.branches
            .iter()
            .enumerate()
            .filter(|(_, b)| b.matches(n))
            .map(|(i, _)| i)
            .collect()
    }

    /// Map a core witness and complement multiplier to ambient coordinates.
    fn assemble_coords(&self, core: &[i64], u: i64) -> Vec<i64> {
        let m = self.complement_gen.len();
        let mut x = vec![0i64; m];
        for (a, row) in core.iter().zip(&self.core_basis) {
            for (xi, ri) in x.iter_mut().zip(row) {
                *xi += a * ri;
            }
        }
        for (xi, gi) in x.iter_mut().zip(&self.complement_gen) {
            *xi += u * gi;
        }
        x
    }

    /// Search one multiplier for a side-conditioned core witness of `ñ`
    /// whose reassembly is primitive, verifying the reassembled norm.
    fn try_multiplier(&self, n: i64, u: i64, side: SideCondition) -> Result<Option<Assembly>> {
        let nt = n - self.complement_norm * u * u;
        if nt < 0 {
            return Ok(None);
        }
        if nt == 0 {
            let x = self.assemble_coords(&[0, 0, 0], u);
            if coords_gcd(&x) == 1 && self.host.quadratic(&x)? == i128::from(n) {
                return Ok(Some(Assembly {
                    multiplier: u,
                    core_coords: vec![0, 0, 0],
                    ambient_coords: x,
                }));
            }
            return Ok(None);
        }
        let mut assembled: Option<(Vec<i64>, Vec<i64>)> = None;
        let found = self.core_enum.first_witness_where(nt, |coords| {
            if !side.accepts(coords) {
                return false;
            }
            let x = self.assemble_coords(coords, u);
            if coords_gcd(&x) == 1 {
                assembled = Some((coords.to_vec(), x));
                true
            } else {
                false
            }
        })?;
        match (found, assembled) {
            (Some(_), Some((core, x))) => {
                if self.host.quadratic(&x)? != i128::from(n) {
                    return Err(Error::Recipe(format!(
                        "{}: reassembly of n={n} has wrong norm",
                        self.form_id
                    )));
                }
                Ok(Some(Assembly {
                    multiplier: u,
                    core_coords: core,
                    ambient_coords: x,
                }))
            }
            _ => Ok(None),
        }
    }

    /// Run the case table on a single `n`.
    ///
    /// For a transcribed table, exactly one branch must match `n` (anything
    /// else is a transcription bug and errors); the result is the branch's
    /// assembly, or `None` when no witness passes, which for an `n` in the
    /// form's certified exception set is the expected outcome.
    pub fn try_assemble(&self, n: i64) -> Result<Option<Assembly>> {
        if n < 1 {
            return Err(Error::Recipe(format!(
                "{}: recipes cover positive integers, got {n}",
                self.form_id
            )));
        }
        if self.kind == RecipeKind::Analogous {
            let mut u = 0;
            while self.complement_norm * u * u <= n {
                if let Some(a) = self.try_multiplier(n, u, SideCondition::None)? {
                    return Ok(Some(a));
                }
                u += 1;
            }
            return Ok(None);
        }
        let hits = self.matching_branches(n);
        if hits.len() != 1 {
            return Err(Error::Recipe(format!(
                "{}: guards match n={n} {} times (must be exactly 1)",
                self.form_id,
                hits.len()
            )));
        }
        let branch = &self.branches[hits[0]];
        for u in branch.multipliers() {
            if let Some(a) = self.try_multiplier(n, u, branch.side)? {
                return Ok(Some(a));
            }
        }
        Ok(None)
    }
}

fn g(modulus: i64, residues: &[i64]) -> Guard {
    Guard::new(modulus, residues)
}

fn branch(guards: Vec<Guard>, multiplier: i64, side: SideCondition) -> Branch {
    Branch {
        guards,
        multiplier,
        alt_multiplier: None,
        side,
    }
}

fn branch_alt(guards: Vec<Guard>, multiplier: i64, alt: i64) -> Branch {
    Branch {
        guards,
        multiplier,
        alt_multiplier: Some(alt),
        side: SideCondition::None,
    }
}

/// Default window start for the individually argued forms: their tables
/// assume `n` at least this large so every `ñ` stays positive.
pub const DEFAULT_THRESHOLD: i64 = 100_000;

const NOT_0_MOD_17: [i64; 16] = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16];
const NOT_4_MOD_17: [i64; 16] = [0, 1, 2, 3, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16];
const NOT_16_MOD_17: [i64; 16] = [0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15];
const NOT_0_MOD_7: [i64; 6] = [1, 2, 3, 4, 5, 6];
const NOT_0_MOD_5: [i64; 4] = [1, 2, 3, 4];

/// Case table for the discriminant-34 unit-extension of the even core:
/// `u` is chosen by `n mod 8` and `n mod 17` so that `ñ` is even and prime
/// to 17 (the accompanying prose lists multiplier 7 where the table uses 8;
/// the table value is transcribed).
pub fn recipe_q34_3() -> Result<TheoremRecipe> {
    use SideCondition::None as Free;
    let branches = vec![
        branch(vec![g(2, &[1]), g(17, &[0])], 1, Free),
        branch(vec![g(2, &[1]), g(17, &NOT_0_MOD_17)], 17, Free),
        branch(vec![g(8, &[0]), g(17, &NOT_4_MOD_17)], 2, Free),
        branch(vec![g(8, &[0]), g(17, &[4])], 34, Free),
        branch(vec![g(8, &[2, 4, 6]), g(17, &NOT_16_MOD_17)], 4, Free),
        branch(vec![g(8, &[2, 4, 6]), g(17, &[16])], 8, Free),
    ];
    TheoremRecipe::bind("Q34^3", RecipeKind::Transcribed, DEFAULT_THRESHOLD, branches)
}

/// Case table for the discriminant-45 unit-extension: each class offers two
/// candidate multipliers and the argument only claims one of the two
/// resulting `ñ` values is represented, so branches carry an alternative.
pub fn recipe_q45_1() -> Result<TheoremRecipe> {
    let branches = vec![
        branch_alt(vec![g(3, &[0])], 1, 5),
        branch_alt(vec![g(3, &[2])], 3, 9),
        branch_alt(vec![g(12, &[1])], 3, 9),
        branch_alt(vec![g(12, &[4])], 3, 9),
        branch_alt(vec![g(12, &[7])], 6, 12),
        branch_alt(vec![g(36, &[10])], 8, 64),
        branch_alt(vec![g(36, &[22])], 2, 16),
        branch_alt(vec![g(36, &[34])], 4, 32),
    ];
    TheoremRecipe::bind("Q45^1", RecipeKind::Transcribed, DEFAULT_THRESHOLD, branches)
}

/// Case table for the discriminant-15 form over the core `⟨1,1,2⟩` with
/// complement norm 30.
pub fn recipe_q15_1() -> Result<TheoremRecipe> {
    use SideCondition::*;
    let branches = vec![
        branch(vec![g(2, &[1])], 1, None),
        branch(vec![g(8, &[2])], 1, None),
        branch(vec![g(8, &[0])], 1, Even(2)),
        branch(vec![g(8, &[4])], 2, AllOdd),
        branch(vec![g(16, &[14])], 2, Odd(2)),
        branch(vec![g(16, &[6])], 4, Odd(2)),
    ];
    TheoremRecipe::bind("Q15^1", RecipeKind::Transcribed, DEFAULT_THRESHOLD, branches)
}

/// Case table for the discriminant-19 form over the core `⟨1,2,3⟩` with
/// complement norm 114.
pub fn recipe_q19_2() -> Result<TheoremRecipe> {
    use SideCondition::*;
    let branches = vec![
        branch(vec![g(2, &[1])], 1, None),
        branch(vec![g(8, &[0])], 1, BothOdd(0, 2)),
        branch(vec![g(8, &[4])], 2, BothOdd(0, 2)),
        branch(vec![g(8, &[6])], 1, Even(1)),
        branch(vec![g(16, &[10])], 2, Odd(1)),
        branch(vec![g(16, &[2])], 4, Odd(1)),
    ];
    TheoremRecipe::bind("Q19^2", RecipeKind::Transcribed, DEFAULT_THRESHOLD, branches)
}

/// Case table for the discriminant-47 form over the asymmetric core of
/// discriminant 7 with complement norm 329. The multiplier depends on
/// `n mod 3` and, when `n = 7k`, on `k mod 7` (encoded below as classes of
/// `n mod 49`); the witness may not have both of its last two coordinates
/// even.
pub fn recipe_q47_1() -> Result<TheoremRecipe> {
    let nbe = SideCondition::NotBothEven(1, 2);
    let branches = vec![
        branch(vec![g(3, &[1]), g(7, &NOT_0_MOD_7)], 1, nbe),
        branch(vec![g(3, &[1]), g(49, &[0, 14, 42])], 1, nbe),
        branch(vec![g(3, &[1]), g(49, &[7, 21])], 2, nbe),
        branch(vec![g(3, &[1]), g(49, &[28, 35])], 4, nbe),
        branch(vec![g(3, &[0, 2]), g(7, &NOT_0_MOD_7)], 3, nbe),
        branch(vec![g(3, &[0, 2]), g(49, &[0, 28, 35])], 3, nbe),
        branch(vec![g(3, &[0, 2]), g(49, &[14, 42])], 6, nbe),
        branch(vec![g(3, &[0, 2]), g(49, &[7, 21])], 12, nbe),
    ];
    TheoremRecipe::bind("Q47^1", RecipeKind::Transcribed, DEFAULT_THRESHOLD, branches)
}

/// Case table for the discriminant-31 form: its core spans coordinates
/// 0, 1, 3 and the complement has norm 279; every class needs no side
/// condition beyond primitive reassembly.
pub fn recipe_q31_2() -> Result<TheoremRecipe> {
    use SideCondition::None as Free;
    let branches = vec![
        branch(vec![g(4, &[0])], 1, Free),
        branch(vec![g(4, &[1])], 1, Free),
        branch(vec![g(4, &[2])], 2, Free),
        branch(vec![g(8, &[3])], 4, Free),
        branch(vec![g(8, &[7])], 2, Free),
    ];
    TheoremRecipe::bind("Q31^2", RecipeKind::Transcribed, DEFAULT_THRESHOLD, branches)
}

/// Case table for the discriminant-27 form over the core `⟨1,2,5⟩` with
/// complement norm 270: multipliers split on `n mod 5` (then `n mod 25`)
/// and on divisibility by 8.
pub fn recipe_q27_3() -> Result<TheoremRecipe> {
    use SideCondition::*;
    let not_div_8: [i64; 7] = [1, 2, 3, 4, 5, 6, 7];
    let branches = vec![
        branch(vec![g(5, &NOT_0_MOD_5), g(4, &[1, 2, 3])], 1, None),
        branch(vec![g(5, &NOT_0_MOD_5), g(8, &[4])], 1, Even(1)),
        branch(vec![g(5, &NOT_0_MOD_5), g(8, &[0])], 2, AllOdd),
        branch(vec![g(25, &[0]), g(8, &not_div_8)], 1, None),
        branch(vec![g(25, &[0]), g(8, &[0])], 2, AllOdd),
        branch(vec![g(25, &[5, 20]), g(8, &not_div_8)], 5, None),
        branch(vec![g(25, &[5, 20]), g(8, &[0])], 10, AllOdd),
        branch(vec![g(25, &[10]), g(8, &not_div_8)], 3, None),
        branch(vec![g(25, &[10]), g(8, &[0])], 2, AllOdd),
        branch(vec![g(25, &[15]), g(8, &not_div_8)], 1, None),
        branch(vec![g(25, &[15]), g(8, &[0])], 6, AllOdd),
    ];
    TheoremRecipe::bind("Q27^3", RecipeKind::Transcribed, DEFAULT_THRESHOLD, branches)
}

/// Case table for the diagonal discriminant-80 form `⟨1,2,4,10⟩`, the one
/// almost-universal member of its core family: its table covers every
/// positive integer, and assembly must fail exactly at the certified
/// exception 24.
pub fn recipe_q80_1() -> Result<TheoremRecipe> {
    use SideCondition::*;
    let branches = vec![
        branch(vec![g(2, &[1])], 0, Primitive),
        branch(vec![g(16, &[2, 6, 10])], 0, Primitive),
        branch(vec![g(16, &[14])], 2, Primitive),
        branch(vec![g(8, &[4])], 2, Odd(2)),
        branch(vec![g(32, &[0])], 1, None),
        branch(vec![g(32, &[24])], 2, Odd(2)),
        branch(vec![g(32, &[8, 16])], 4, Odd(2)),
    ];
    // Largest deficit in the table is k·u² = 10·16 = 160, so every ñ is
    // nonnegative from 161 on; below that, the certified exception 24 is
    // caught by its branch's assembly coming up empty (ñ = 24 − 40 < 0).
    TheoremRecipe::bind("Q80^1", RecipeKind::Transcribed, 161, branches)
}

/// Parameters of one member of the parametric family
/// `x² + 2y² + 4z² + cw² + 2b·zw + 2a·yw` over the core `⟨1,2,4⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FamilyParams {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    /// Scaling of the complement generator: 2 when `b` is odd, 1 when
    /// `a ≡ c ≡ 0 (mod 2)` and `b ≡ 2 (mod 4)`.
    pub s: i64,
    /// `t = 4c − 2a² − b²`; the complement norm is `s²t ≡ 4 (mod 8)` and
    /// the table covers all `n > 4s²t`.
    pub t: i64,
    /// True when the corpus record stores the family form with its last
    /// two coordinates exchanged (the `4z²` slot third instead of second).
    pub swapped: bool,
}

fn family_params_from(a: i64, b: i64, c: i64, swapped: bool) -> Option<FamilyParams> {
    let s = if b.rem_euclid(2) == 1 {
        2
    } else if a % 2 == 0 && c % 2 == 0 && b.rem_euclid(4) == 2 {
        1
    } else {
        return None;
    };
    let t = 4 * c - 2 * a * a - b * b;
    Some(FamilyParams { a, b, c, s, t, swapped })
}

/// Extract family parameters from a corpus record, when its sextuple has
/// the family shape (in either coordinate orientation) and satisfies one
/// of the two parity hypotheses.
pub fn family_params(record: &FormRecord) -> Option<FamilyParams> {
    let Sextuple(s0, s1, s2, d, e, f) = record.sextuple;
    if s0 != 2 || d % 2 != 0 {
        return None;
    }
    if s1 == 4 && f == 0 && e % 2 == 0 {
        // x² + 2y² + 4z² + c·w² + 2b·zw + 2a·yw.
        if let Some(p) = family_params_from(e / 2, d / 2, s2, false) {
            return Some(p);
        }
    }
    if s2 == 4 && e == 0 && f % 2 == 0 {
        // Same form with z and w exchanged:
        // x² + 2y² + c·z² + 4w² + 2b·zw + 2a·yz.
        if let Some(p) = family_params_from(f / 2, d / 2, s1, true) {
            return Some(p);
        }
    }
    None
}

/// Bind the parametric family table to one corpus member.
///
/// Construction cross-checks the derived complement: the decomposition's
/// generator must be `(0, as, bs/2, −2s)` with norm `s²t ≡ 4 (mod 8)`.
pub fn family_recipe(record: &FormRecord) -> Result<TheoremRecipe> {
    use SideCondition::*;
    let p = family_params(record).ok_or_else(|| {
        Error::Recipe(format!(
            "{} does not satisfy the parametric family hypotheses",
            record.id
        ))
    })?;
    let branches = vec![
        branch(vec![g(2, &[1])], 1, None),
        branch(vec![g(8, &[0])], 1, Even(2)),
        branch(vec![g(16, &[14])], 1, None),
        branch(vec![g(8, &[2])], 2, None),
        branch(vec![g(8, &[4])], 2, Odd(2)),
        branch(vec![g(16, &[6])], 2, None),
    ];
    let k = p.s * p.s * p.t;
    let recipe =
        TheoremRecipe::bind_record(record, RecipeKind::Transcribed, 4 * k + 1, branches)?;
    let mut expected_gen = if p.swapped {
        vec![0, p.a * p.s, -2 * p.s, p.b * p.s / 2]
    } else {
        vec![0, p.a * p.s, p.b * p.s / 2, -2 * p.s]
    };
    if expected_gen.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
        for x in &mut expected_gen {
            *x = -*x;
        }
    }
    if recipe.complement_gen != expected_gen
        || recipe.complement_norm != k
        || k.rem_euclid(8) != 4
    {
        return Err(Error::Recipe(format!(
            "{}: derived complement {:?} (norm {}) disagrees with the family \
             form ({:?}, norm {})",
            record.id, recipe.complement_gen, recipe.complement_norm, expected_gen, k
        )));
    }
    Ok(recipe)
}

/// All corpus members the parametric family covers: primitively universal
/// records with the `⟨1,2,4⟩` core satisfying the family hypotheses.
/// Exactly 29 forms qualify.
pub fn family_recipes() -> Result<Vec<TheoremRecipe>> {
    let mut out = Vec::new();
    for record in crate::forms::embedded_corpus() {
        if record.core_label == Some(CoreLabel::N5)
            && record.status.is_primitively_universal()
            && family_params(record).is_some()
        {
            out.push(family_recipe(record)?);
        }
    }
    if out.len() != 29 {
        return Err(Error::Recipe(format!(
            "expected 29 parametric family members, found {}",
            out.len()
        )));
    }
    Ok(out)
}

/// The eight individually argued case tables, in a fixed order.
pub fn transcribed_recipes() -> Result<Vec<TheoremRecipe>> {
    Ok(vec![
        recipe_q34_3()?,
        recipe_q45_1()?,
        recipe_q15_1()?,
        recipe_q19_2()?,
        recipe_q47_1()?,
        recipe_q31_2()?,
        recipe_q27_3()?,
        recipe_q80_1()?,
    ])
}

/// Every transcribed table: the eight individual ones followed by the 29
/// parametric family members, in a fixed order.
pub fn all_transcribed_recipes() -> Result<Vec<TheoremRecipe>> {
    let mut all = transcribed_recipes()?;
    all.extend(family_recipes()?);
    Ok(all)
}

/// Same-core fallback recipe for any corpus form with a derivable core:
/// tries every multiplier with no side conditions. This mirrors how the
/// classification treats forms "similar" to an argued representative; it is
/// exercised by unit tests, while the verification campaign checks such
/// forms by direct exception scan instead.
pub fn analogous_recipe(form_id: &str) -> Result<TheoremRecipe> {
    TheoremRecipe::bind(form_id, RecipeKind::Analogous, 1, Vec::new())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn side_conditions_read_parities_of_negative_coordinates() {
        assert!(SideCondition::Odd(0).accepts(&[-3, 0, 0]));
        assert!(SideCondition::Even(1).accepts(&[1, -2, 5]));
        assert!(SideCondition::AllOdd.accepts(&[-1, 3, -5]));
        assert!(!SideCondition::NotBothEven(1, 2).accepts(&[1, -2, 4]));
        assert!(SideCondition::BothOdd(0, 2).accepts(&[-1, 2, 3]));
    }

    #[test]
    fn guards_use_euclidean_remainders() {
        let guard = g(8, &[6]);
        assert!(guard.matches(14));
        assert!(!guard.matches(-6));
        assert!(guard.matches(-2));
    }

    #[test]
    fn every_transcribed_recipe_binds_and_names_its_core() {
        let recipes = transcribed_recipes().unwrap();
        assert_eq!(recipes.len(), 8);
        for r in &recipes {
            assert!(r.core_label.is_some(), "{} lost its core label", r.form_id);
            assert!(!r.branches.is_empty());
        }
        let norms: Vec<i64> = recipes.iter().map(|r| r.complement_norm()).collect();
        assert_eq!(norms, vec![1, 1, 30, 114, 329, 279, 270, 10]);
    }

    #[test]
    fn family_covers_exactly_the_29_advertised_members() {
        let family = family_recipes().unwrap();
        assert_eq!(family.len(), 29);
        for r in &family {
            assert_eq!(r.core_label, Some(CoreLabel::N5));
            assert_eq!(r.complement_norm().rem_euclid(8), 4);
            assert!(r.threshold == 4 * r.complement_norm() + 1);
        }
        // Spot checks: the smallest and one scaled-by-1 member.
        let ids: Vec<&str> = family.iter().map(|r| r.form_id.as_str()).collect();
        assert!(ids.contains(&"Q22^3"));
        assert!(ids.contains(&"Q24^6"));
        let q24_6 = family.iter().find(|r| r.form_id == "Q24^6").unwrap();
        assert_eq!(q24_6.complement_norm(), 12);
        let q22_3 = family.iter().find(|r| r.form_id == "Q22^3").unwrap();
        assert_eq!(q22_3.complement_norm(), 44);
    }

    #[test]
    fn family_rejects_the_diagonal_almost_universal_member() {
        // ⟨1,2,4,10⟩ has the right core but satisfies neither parity
        // hypothesis, which is exactly why it needs its own table.
        let record = corpus_record("Q80^1").unwrap();
        assert!(family_params(record).is_none());
    }

    #[test]
    fn unit_extension_table_assembles_small_cases() {
        let recipe = recipe_q34_3().unwrap();
        for n in [100_000, 100_001, 100_002, 100_004, 100_008, 100_013] {
            let a = recipe.try_assemble(n).unwrap().unwrap_or_else(|| {
                panic!("n = {n} should assemble");
            });
            assert_eq!(coords_gcd(&a.ambient_coords), 1);
        }
    }

    #[test]
    fn almost_universal_table_certifies_its_exception() {
        let recipe = recipe_q80_1().unwrap();
        assert!(recipe.try_assemble(24).unwrap().is_none());
        for n in [23, 25, 32, 56, 161, 168, 184, 192] {
            assert!(
                recipe.try_assemble(n).unwrap().is_some(),
                "n = {n} should assemble"
            );
        }
    }

    #[test]
    fn analogous_fallback_assembles_a_sketched_form() {
        // A core-labeled form with no individual table.
        let record = crate::forms::embedded_corpus()
            .iter()
            .find(|r| {
                r.core_label == Some(CoreLabel::N3)
                    && r.status.is_primitively_universal()
                    && r.id.to_string() != "Q19^2"
            })
            .expect("corpus has another form over the ⟨1,2,3⟩ core");
        let recipe = analogous_recipe(&record.id.to_string()).unwrap();
        assert_eq!(recipe.kind, RecipeKind::Analogous);
        // Split-shape witnesses (core vector plus complement multiple) are
        // only promised for large n; probe well above the usual thresholds.
        for n in 100_000..100_008 {
            assert!(
                recipe.try_assemble(n).unwrap().is_some(),
                "{} should assemble a split witness of {n}",
                recipe.form_id
            );
        }
    }

    #[test]
    fn overlapping_guards_are_rejected_as_transcription_bugs() {
        let branches = vec![
            branch(vec![g(2, &[0])], 1, SideCondition::None),
            branch(vec![g(4, &[0])], 2, SideCondition::None),
        ];
        let recipe =
            TheoremRecipe::bind("Q15^1", RecipeKind::Transcribed, 1, branches).unwrap();
        assert!(matches!(recipe.try_assemble(8), Err(Error::Recipe(_))));
    }
}
