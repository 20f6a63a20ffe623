//! Form and lattice data types plus corpus ingestion.
//!
//! A quaternary form is written as a sextuple `(a,b,c,d,e,f)` standing for
//! `x² + ay² + bz² + cw² + dzw + eyw + fyz`; its Gram matrix in the fixed
//! basis order `(x, y, z, w)` is `diag(1,a,b,c)` with `B(y,z)=f/2`,
//! `B(y,w)=e/2`, `B(z,w)=d/2` and `x` orthogonal to the rest. The shipped
//! corpus is a JSON-lines file with one record per classified form: 107
//! primitively universal and 45 primitively almost universal quaternary
//! forms, the latter carrying their finite exception sets.
//!
//! The ten named ternary core lattices (and the rank-3 unit extension used by
//! `Q96^2`) are provided as Gram-matrix constants; they have no sextuple
//! notation of their own.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{self, Mat};

/// Embedded JSON-lines corpus (one record per classified form).
const CORPUS_JSONL: &str = include_str!("corpus/forms.jsonl");

// ---------------------------------------------------------------------------
// Sextuple
// ---------------------------------------------------------------------------

/// Coefficients `(a,b,c,d,e,f)` of `x² + ay² + bz² + cw² + dzw + eyw + fyz`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Sextuple(pub i64, pub i64, pub i64, pub i64, pub i64, pub i64);

impl Sextuple {
    /// Validate and build a sextuple: `a,b,c ≥ 1`, the cross coefficients
    /// `d,e,f` even and nonnegative, and the induced Gram matrix positive
    /// definite.
    pub fn new(a: i64, b: i64, c: i64, d: i64, e: i64, f: i64) -> Result<Self> {
        if a < 1 || b < 1 || c < 1 {
            return Err(Error::InvalidForm(format!(
                "diagonal coefficients must be positive, got ({a},{b},{c})"
            )));
        }
        for (name, v) in [("d", d), ("e", e), ("f", f)] {
            if v < 0 || v % 2 != 0 {
                return Err(Error::InvalidForm(format!(
                    "cross coefficient {name}={v} must be even and nonnegative"
                )));
            }
        }
        let s = Sextuple(a, b, c, d, e, f);
        let gram = s.gram_rows();
        let minors = matrix::leading_minors(&gram)?;
        if minors.iter().any(|&m| m <= 0) {
            return Err(Error::InvalidForm(format!(
                "form {s} is not positive definite"
            )));
        }
        Ok(s)
    }

    fn gram_rows(&self) -> Mat {
        let Sextuple(a, b, c, d, e, f) = *self;
        vec![
            vec![1, 0, 0, 0],
            vec![0, a, f / 2, e / 2],
            vec![0, f / 2, b, d / 2],
            vec![0, e / 2, d / 2, c],
        ]
    }

    /// The six coefficients in order.
    pub fn coefficients(&self) -> [i64; 6] {
        [self.0, self.1, self.2, self.3, self.4, self.5]
    }

    /// Render in the table notation, e.g. `"2 4 6 4 0 2"`.
    pub fn render(&self) -> String {
        self.coefficients()
            .iter()
            .map(i64::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for Sextuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.render().replace(' ', ","))
    }
}

/// Parse `"a b c d e f"` (whitespace- or comma-separated) into a validated
/// [`Sextuple`].
pub fn parse_sextuple(text: &str) -> Result<Sextuple> {
    let parts: Vec<&str> = text
        .split(|ch: char| ch.is_whitespace() || ch == ',')
        .filter(|s| !s.is_empty())
        .collect();
    if parts.len() != 6 {
        return Err(Error::Parse(format!(
            "expected six integers, got {} in {text:?}",
            parts.len()
        )));
    }
    let mut vals = [0i64; 6];
    for (slot, part) in vals.iter_mut().zip(&parts) {
        *slot = part
            .parse::<i64>()
            .map_err(|e| Error::Parse(format!("bad integer {part:?}: {e}")))?;
        if *slot < 0 {
            return Err(Error::Parse(format!("negative coefficient {part:?}")));
        }
    }
    Sextuple::new(vals[0], vals[1], vals[2], vals[3], vals[4], vals[5])
}

/// Build the 4×4 Gram lattice of a sextuple in basis order `(x,y,z,w)`.
pub fn gram_from_sextuple(s: Sextuple) -> GramLattice {
    // Validity of the sextuple guarantees the matrix is admissible.
    GramLattice::new(s.gram_rows()).expect("validated sextuple yields a valid lattice")
}

// ---------------------------------------------------------------------------
// GramLattice
// ---------------------------------------------------------------------------

/// A positive-definite integral lattice given by its exact Gram matrix
/// (entries `B(x_i, x_j)`; diagonal `Q(x_i)`), rank 1–6.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GramLattice {
    rank: usize,
    gram: Mat,
}

impl GramLattice {
    /// Validate symmetry, rank 1–6 and positive definiteness.
    pub fn new(gram: Mat) -> Result<Self> {
        let rank = gram.len();
        if rank == 0 || rank > 6 {
            return Err(Error::InvalidForm(format!(
                "rank {rank} outside supported range 1..=6"
            )));
        }
        if !matrix::is_symmetric(&gram) {
            return Err(Error::InvalidForm("gram matrix is not symmetric".into()));
        }
        let minors = matrix::leading_minors(&gram)?;
        if minors.iter().any(|&m| m <= 0) {
            return Err(Error::InvalidForm(
                "gram matrix is not positive definite".into(),
            ));
        }
        Ok(GramLattice { rank, gram })
    }

    /// Diagonal lattice `⟨d₁, …, d_r⟩`.
    pub fn diagonal(diag: &[i64]) -> Result<Self> {
        let rank = diag.len();
        let gram = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| if i == j { diag[i] } else { 0 })
                    .collect()
            })
            .collect();
        GramLattice::new(gram)
    }

    /// Lattice rank.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Borrow the Gram matrix rows.
    pub fn gram(&self) -> &Mat {
        &self.gram
    }

    /// Exact determinant of the Gram matrix (positive by definiteness).
    pub fn discriminant(&self) -> i128 {
        matrix::det(&self.gram).expect("validated lattice determinant fits i128")
    }

    /// `(s, n)`: generator of the scale ideal (gcd of all Gram entries) and
    /// of the norm ideal (gcd of the diagonal together with `2s`).
    pub fn scale_and_norm(&self) -> (i64, i64) {
        let mut s = 0i64;
        for row in &self.gram {
            for &x in row {
                s = num_integer::gcd(s, x.abs());
            }
        }
        let mut n = 2 * s;
        for i in 0..self.rank {
            n = num_integer::gcd(n, self.gram[i][i].abs());
        }
        (s, n)
    }

    /// Exact value `Q(v) = vᵀ G v`.
    pub fn quadratic(&self, v: &[i64]) -> Result<i128> {
        matrix::quadratic_value(&self.gram, v)
    }

    /// Exact pairing `B(u, v) = uᵀ G v`.
    pub fn bilinear(&self, u: &[i64], v: &[i64]) -> Result<i128> {
        let gv = matrix::mat_vec(&self.gram, v)?;
        let mut acc: i128 = 0;
        for (x, y) in u.iter().zip(&gv) {
            acc = acc
                .checked_add((*x as i128) * (*y as i128))
                .ok_or(Error::Overflow("bilinear pairing"))?;
        }
        Ok(acc)
    }
}

// ---------------------------------------------------------------------------
// Residue classes
// ---------------------------------------------------------------------------

/// Arithmetic progression `A_{u,r} = { uk + r : k ≥ 0 }`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResidueClass {
    /// Modulus `u ≥ 1`.
    pub modulus: i64,
    /// Residue `0 ≤ r < u`.
    pub residue: i64,
}

impl ResidueClass {
    /// Build `A_{u,r}`; requires `u ≥ 1` and `0 ≤ r < u`.
    pub fn new(modulus: i64, residue: i64) -> Result<Self> {
        if modulus < 1 || residue < 0 || residue >= modulus {
            return Err(Error::InvalidForm(format!(
                "invalid residue class A_{{{modulus},{residue}}}"
            )));
        }
        Ok(ResidueClass { modulus, residue })
    }

    /// Membership: `n ≥ r` and `n ≡ r (mod u)`.
    pub fn contains(&self, n: i64) -> bool {
        n >= self.residue && n.rem_euclid(self.modulus) == self.residue
    }
}

// ---------------------------------------------------------------------------
// Corpus records
// ---------------------------------------------------------------------------

/// Identifier `Q_d^k`: the `k`-th classified universal quaternary form of
/// discriminant `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FormId {
    /// Discriminant of the form.
    pub d: i64,
    /// Position index among forms of this discriminant.
    pub k: u32,
}

impl fmt::Display for FormId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q{}^{}", self.d, self.k)
    }
}

impl FromStr for FormId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s
            .strip_prefix('Q')
            .ok_or_else(|| Error::Parse(format!("form id {s:?} must start with 'Q'")))?;
        let (d, k) = body
            .split_once('^')
            .ok_or_else(|| Error::Parse(format!("form id {s:?} must contain '^'")))?;
        Ok(FormId {
            d: d.parse()
                .map_err(|e| Error::Parse(format!("bad discriminant in {s:?}: {e}")))?,
            k: k.parse()
                .map_err(|e| Error::Parse(format!("bad index in {s:?}: {e}")))?,
        })
    }
}

/// Classification status of a corpus record.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Status {
    /// Primitively universal, previously known.
    #[serde(rename = "PU_known")]
    PuKnown,
    /// Primitively universal, type 0 (handled by the λ₂ transform).
    #[serde(rename = "PU_type0")]
    PuType0,
    /// Primitively universal, type 1 (unit splits off).
    #[serde(rename = "PU_type1")]
    PuType1,
    /// Primitively universal, type 2 (proper ternary core).
    #[serde(rename = "PU_type2")]
    PuType2,
    /// Primitively almost universal, type 0.
    #[serde(rename = "APU_type0")]
    ApuType0,
    /// Primitively almost universal, type 2.
    #[serde(rename = "APU_type2")]
    ApuType2,
}

impl Status {
    /// True for the primitively universal statuses.
    pub fn is_primitively_universal(&self) -> bool {
        matches!(self, Status::PuKnown | Status::PuType0 | Status::PuType1 | Status::PuType2)
    }

    /// True for the primitively almost universal statuses.
    pub fn is_almost_universal(&self) -> bool {
        !self.is_primitively_universal()
    }
}

/// Label of a named ternary core lattice (or the rank-3 unit extension used
/// by `Q96^2`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[allow(missing_docs)]
pub enum CoreLabel {
    N1,
    N2,
    N3,
    N4,
    N5,
    N6,
    N7,
    N8,
    N9,
    N10,
    #[serde(rename = "unit_extension")]
    UnitExtension,
}

impl CoreLabel {
    /// All ten named cores (without the unit extension).
    pub const NAMED: [CoreLabel; 10] = [
        CoreLabel::N1,
        CoreLabel::N2,
        CoreLabel::N3,
        CoreLabel::N4,
        CoreLabel::N5,
        CoreLabel::N6,
        CoreLabel::N7,
        CoreLabel::N8,
        CoreLabel::N9,
        CoreLabel::N10,
    ];
}

impl fmt::Display for CoreLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            CoreLabel::N1 => "N1",
            CoreLabel::N2 => "N2",
            CoreLabel::N3 => "N3",
            CoreLabel::N4 => "N4",
            CoreLabel::N5 => "N5",
            CoreLabel::N6 => "N6",
            CoreLabel::N7 => "N7",
            CoreLabel::N8 => "N8",
            CoreLabel::N9 => "N9",
            CoreLabel::N10 => "N10",
            CoreLabel::UnitExtension => "unit_extension",
        };
        write!(f, "{name}")
    }
}

/// Gram matrix of a named core lattice.
pub fn core_gram(label: CoreLabel) -> GramLattice {
    let rows: Mat = match label {
        CoreLabel::N1 => vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 2]],
        CoreLabel::N2 => vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 3]],
        CoreLabel::N3 => vec![vec![1, 0, 0], vec![0, 2, 0], vec![0, 0, 3]],
        CoreLabel::N4 => vec![vec![1, 0, 0], vec![0, 2, 1], vec![0, 1, 4]],
        CoreLabel::N5 => vec![vec![1, 0, 0], vec![0, 2, 0], vec![0, 0, 4]],
        CoreLabel::N6 => vec![vec![1, 0, 0], vec![0, 2, 1], vec![0, 1, 5]],
        CoreLabel::N7 => vec![vec![1, 0, 0], vec![0, 2, 0], vec![0, 0, 5]],
        CoreLabel::N8 => vec![vec![1, 0, 0], vec![0, 2, 1], vec![0, 1, 6]],
        CoreLabel::N9 => vec![vec![2, 1, 0], vec![1, 4, 2], vec![0, 2, 6]],
        CoreLabel::N10 => vec![vec![2, 1, 1], vec![1, 4, 0], vec![1, 0, 7]],
        CoreLabel::UnitExtension => vec![vec![1, 0, 0], vec![0, 4, 2], vec![0, 2, 13]],
    };
    GramLattice::new(rows).expect("core gram matrices are valid")
}

/// One corpus entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormRecord {
    /// Identifier `Q_d^k`.
    pub id: FormId,
    /// The form's sextuple.
    pub sextuple: Sextuple,
    /// Classification status.
    pub status: Status,
    /// Named core lattice, when the classification proof names one.
    pub core_label: Option<CoreLabel>,
    /// Claimed finite exception set (empty for primitively universal forms).
    pub exception_set: Vec<i64>,
}

impl FormRecord {
    /// Gram lattice of the record's form.
    pub fn lattice(&self) -> GramLattice {
        gram_from_sextuple(self.sextuple)
    }
}

#[derive(Serialize, Deserialize)]
struct RawRecord {
    id: String,
    d: i64,
    k: u32,
    sextuple: [i64; 6],
    status: Status,
    core: Option<CoreLabel>,
    exceptions: Vec<i64>,
}

/// Parse and validate a JSON-lines corpus stream.
///
/// Every record is checked structurally (valid sextuple, discriminant of the
/// induced Gram matrix equal to the id's `d`, exception sets only on almost
/// universal records); the stream as a whole must contain the classification
/// counts 107 + 45 = 152.
pub fn load_corpus(bytes: &[u8]) -> Result<Vec<FormRecord>> {
    let text =
        std::str::from_utf8(bytes).map_err(|e| Error::Corpus(format!("not UTF-8: {e}")))?;
    let mut records = Vec::new();
    let mut seen = BTreeSet::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let raw: RawRecord = serde_json::from_str(line)
            .map_err(|e| Error::Corpus(format!("line {}: {e}", lineno + 1)))?;
        let id: FormId = raw
            .id
            .parse()
            .map_err(|e| Error::Corpus(format!("record {}: {e}", raw.id)))?;
        if id.d != raw.d || id.k != raw.k {
            return Err(Error::Corpus(format!(
                "record {}: id disagrees with fields d={}, k={}",
                raw.id, raw.d, raw.k
            )));
        }
        let [a, b, c, d, e, f] = raw.sextuple;
        let sextuple = Sextuple::new(a, b, c, d, e, f)
            .map_err(|err| Error::Corpus(format!("record {}: {err}", raw.id)))?;
        let disc = gram_from_sextuple(sextuple).discriminant();
        if disc != i128::from(id.d) {
            return Err(Error::Corpus(format!(
                "record {}: sextuple {} has discriminant {disc}, id claims {}",
                raw.id, sextuple, id.d
            )));
        }
        if raw.status.is_primitively_universal() && !raw.exceptions.is_empty() {
            return Err(Error::Corpus(format!(
                "record {}: primitively universal but has exceptions {:?}",
                raw.id, raw.exceptions
            )));
        }
        if raw.status.is_almost_universal() && raw.exceptions.is_empty() {
            return Err(Error::Corpus(format!(
                "record {}: almost universal but exception set is empty",
                raw.id
            )));
        }
        if !seen.insert(raw.id.clone()) {
            return Err(Error::Corpus(format!("duplicate record {}", raw.id)));
        }
        let mut exception_set = raw.exceptions;
        exception_set.sort_unstable();
        records.push(FormRecord {
            id,
            sextuple,
            status: raw.status,
            core_label: raw.core,
            exception_set,
        });
    }
    let pu = records
        .iter()
        .filter(|r| r.status.is_primitively_universal())
        .count();
    let apu = records.len() - pu;
    if (pu, apu) != (107, 45) {
        return Err(Error::Corpus(format!(
            "expected 107 + 45 records, found {pu} + {apu}"
        )));
    }
    Ok(records)
}

/// The corpus shipped with the crate (parsed once, then shared).
pub fn embedded_corpus() -> &'static [FormRecord] {
    static CORPUS: OnceLock<Vec<FormRecord>> = OnceLock::new();
    CORPUS.get_or_init(|| {
        load_corpus(CORPUS_JSONL.as_bytes()).expect("embedded corpus is valid")
    })
}

/// Raw bytes of the embedded corpus (for re-serialization or export).
pub fn embedded_corpus_bytes() -> &'static [u8] {
    CORPUS_JSONL.as_bytes()
}

/// Find an embedded corpus record by display id, e.g. `"Q34^3"`.
pub fn corpus_record(id: &str) -> Option<&'static FormRecord> {
    let id: FormId = id.parse().ok()?;
    embedded_corpus().iter().find(|r| r.id == id)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_accepts_table_notation() {
        assert_eq!(
            parse_sextuple("2 4 6 4 0 2").unwrap(),
            Sextuple(2, 4, 6, 4, 0, 2)
        );
        assert_eq!(
            parse_sextuple("2,4,6,4,0,2").unwrap(),
            Sextuple(2, 4, 6, 4, 0, 2)
        );
        assert_eq!(
            parse_sextuple("1 1 1 0 0 0").unwrap(),
            Sextuple(1, 1, 1, 0, 0, 0)
        );
    }

    #[test]
    fn parse_rejects_odd_cross_terms_and_garbage() {
        assert!(matches!(
            parse_sextuple("1 1 1 1 0 0"),
            Err(Error::InvalidForm(_))
        ));
        assert!(matches!(parse_sextuple("1 2 3"), Err(Error::Parse(_))));
        assert!(matches!(parse_sextuple("a b c d e f"), Err(Error::Parse(_))));
        // Even cross terms can still break positive definiteness.
        assert!(matches!(
            parse_sextuple("1 1 1 4 0 0"),
            Err(Error::InvalidForm(_))
        ));
    }

    #[test]
    fn gram_matches_sextuple_definition() {
        let g = gram_from_sextuple(Sextuple(2, 4, 6, 4, 0, 2));
        assert_eq!(
            g.gram(),
            &vec![
                vec![1, 0, 0, 0],
                vec![0, 2, 1, 0],
                vec![0, 1, 4, 2],
                vec![0, 0, 2, 6],
            ]
        );
        let g15 = gram_from_sextuple(Sextuple(1, 2, 8, 2, 0, 0));
        assert_eq!(
            g15.gram(),
            &vec![
                vec![1, 0, 0, 0],
                vec![0, 1, 0, 0],
                vec![0, 0, 2, 1],
                vec![0, 0, 1, 8],
            ]
        );
        assert_eq!(
            gram_from_sextuple(Sextuple(1, 1, 1, 0, 0, 0)).gram(),
            &matrix::identity(4)
        );
    }

    #[test]
    fn discriminants_match_ids() {
        assert_eq!(gram_from_sextuple(Sextuple(2, 4, 6, 4, 0, 2)).discriminant(), 34);
        assert_eq!(
            GramLattice::diagonal(&[1, 2, 4, 10]).unwrap().discriminant(),
            80
        );
        assert_eq!(
            GramLattice::new(matrix::identity(4)).unwrap().discriminant(),
            1
        );
    }

    #[test]
    fn scale_and_norm_examples() {
        assert_eq!(
            GramLattice::diagonal(&[2, 4, 6]).unwrap().scale_and_norm(),
            (2, 2)
        );
        assert_eq!(
            GramLattice::new(matrix::identity(4)).unwrap().scale_and_norm(),
            (1, 1)
        );
        let b = GramLattice::new(vec![vec![2, 1], vec![1, 8]]).unwrap();
        assert_eq!(b.scale_and_norm(), (1, 2));
    }

    #[test]
    fn core_grams_have_expected_determinants() {
        let want = [
            (CoreLabel::N1, 2),
            (CoreLabel::N2, 3),
            (CoreLabel::N3, 6),
            (CoreLabel::N4, 7),
            (CoreLabel::N5, 8),
            (CoreLabel::N6, 9),
            (CoreLabel::N7, 10),
            (CoreLabel::N8, 11),
            (CoreLabel::N9, 34),
            (CoreLabel::N10, 45),
            (CoreLabel::UnitExtension, 48),
        ];
        for (label, det) in want {
            assert_eq!(core_gram(label).discriminant(), det, "{label:?}");
        }
    }

    #[test]
    fn corpus_loads_with_classification_counts() {
        let records = embedded_corpus();
        assert_eq!(records.len(), 152);
        let pu = records
            .iter()
            .filter(|r| r.status.is_primitively_universal())
            .count();
        assert_eq!(pu, 107);
        assert_eq!(records.len() - pu, 45);
        // Exception multiplicity column: 26 + 13 + 1 + 1 + 2 + 1 + 1 = 45.
        let sizes: Vec<usize> = records
            .iter()
            .filter(|r| r.status.is_almost_universal())
            .map(|r| r.exception_set.len())
            .collect();
        assert_eq!(sizes.iter().filter(|&&s| s == 1).count(), 41);
        assert_eq!(sizes.iter().filter(|&&s| s == 2).count(), 3);
        assert_eq!(sizes.iter().filter(|&&s| s == 3).count(), 1);
    }

    #[test]
    fn corpus_spot_checks() {
        let q20 = corpus_record("Q20^2").unwrap();
        assert_eq!(q20.exception_set, vec![12]);
        let q80 = corpus_record("Q80^1").unwrap();
        assert_eq!(q80.exception_set, vec![24]);
        assert_eq!(q80.sextuple, Sextuple(2, 4, 10, 0, 0, 0));
        let q95 = corpus_record("Q95^1").unwrap();
        assert_eq!(q95.exception_set, vec![4, 12, 25]);
        let q34 = corpus_record("Q34^3").unwrap();
        assert_eq!(q34.core_label, Some(CoreLabel::N9));
        assert_eq!(q34.status, Status::PuType1);
    }

    #[test]
    fn corpus_q26_1_sextuple_is_discriminant_consistent() {
        // The only N1-family record with d=26: its cross coefficient must be
        // zero for the discriminant to come out as 26 (a nonzero zw cross
        // term would give 25).
        let q26 = corpus_record("Q26^1").unwrap();
        assert_eq!(q26.sextuple, Sextuple(1, 2, 13, 0, 0, 0));
        assert_eq!(q26.lattice().discriminant(), 26);
        let wrong = Sextuple::new(1, 2, 13, 2, 0, 0).unwrap();
        assert_eq!(gram_from_sextuple(wrong).discriminant(), 25);
    }

    #[test]
    fn corpus_rejects_discriminant_mismatch() {
        let line = br#"{"id":"Q9^1","d":9,"k":1,"sextuple":[1,1,2,0,0,0],"status":"PU_known","core":null,"exceptions":[]}"#;
        assert!(matches!(load_corpus(line), Err(Error::Corpus(_))));
    }

    #[test]
    fn residue_class_membership() {
        let a = ResidueClass::new(8, 3).unwrap();
        assert!(a.contains(3) && a.contains(11) && !a.contains(5));
        assert!(!a.contains(-5));
        assert!(ResidueClass::new(4, 4).is_err());
    }

    #[test]
    fn form_id_round_trips() {
        let id: FormId = "Q34^3".parse().unwrap();
        assert_eq!(id, FormId { d: 34, k: 3 });
        assert_eq!(id.to_string(), "Q34^3");
        assert!("34^3".parse::<FormId>().is_err());
        assert!("Q34".parse::<FormId>().is_err());
    }

    proptest! {
        #[test]
        fn parse_render_round_trip(a in 1i64..8, b in 1i64..8, c in 1i64..8,
                                   d in 0i64..4, e in 0i64..4, f in 0i64..4) {
            if let Ok(s) = Sextuple::new(a, b, c, 2 * d, 2 * e, 2 * f) {
                prop_assert_eq!(parse_sextuple(&s.render()).unwrap(), s);
            }
        }

        #[test]
        fn gram_from_sextuple_is_injective(a1 in 1i64..6, b1 in 1i64..6, c1 in 1i64..6,
                                           a2 in 1i64..6, b2 in 1i64..6, c2 in 1i64..6,
                                           d in 0i64..3, e in 0i64..3, f in 0i64..3) {
            let s1 = Sextuple::new(a1, b1, c1, 2 * d, 2 * e, 2 * f);
            let s2 = Sextuple::new(a2, b2, c2, 2 * d, 2 * e, 2 * f);
            if let (Ok(s1), Ok(s2)) = (s1, s2) {
                if s1 != s2 {
                    let (l1, l2) = (gram_from_sextuple(s1), gram_from_sextuple(s2));
                    prop_assert_ne!(l1.gram(), l2.gram());
                }
            }
        }
    }
}
