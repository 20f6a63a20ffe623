//! Sublattice constructions: the even-value sublattice `Λ₂`, its rescaling
//! `λ₂`, orthogonal complements, and core/complement splittings.
//!
//! # Algorithm
//!
//! `Λ₂(L)` is the kernel of the parity functional `v ↦ Q(v) mod 2`, which on
//! the standard basis reads `Σ vᵢ·Gᵢᵢ (mod 2)`. Its index is 1 when every
//! diagonal entry is even, else 2; in the latter case an explicit generator
//! set (doubling one odd-diagonal vector, pairing it with the others) is
//! brought to a canonical basis by row Hermite normal form. `λ₂(L)` divides
//! the resulting Gram matrix by its full 2-power content, which is the
//! rescaling under which the corpus's rank-≤-2 relations hold.
//!
//! Orthogonal complements are kernels of the bilinear pairing against a
//! sublattice basis, again HNF-canonicalized, so complement generators are
//! deterministic (first nonzero coordinate positive).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::forms::{core_gram, CoreLabel, FormRecord, GramLattice, Status};
use crate::isometry;
use crate::matrix::{self, Mat};

/// A sublattice of an ambient lattice, carried as basis rows (in ambient
/// coordinates) together with the Gram matrix in that basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Sublattice {
    /// Basis vectors as rows, in ambient coordinates.
    pub basis: Mat,
    /// Gram matrix `B·G·Bᵀ` of the sublattice in the `basis` rows.
    pub gram: Mat,
}

impl Sublattice {
    /// Number of basis vectors.
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// The sublattice as a standalone lattice (requires positive rank).
    pub fn lattice(&self) -> Result<GramLattice> {
        GramLattice::new(self.gram.clone())
    }

    /// Index in the ambient lattice for full-rank sublattices:
    /// `√(det(sub)/det(ambient))`.
    pub fn index_in(&self, ambient: &GramLattice) -> Result<i128> {
        if self.rank() != ambient.rank() {
            return Err(Error::InvalidForm(
                "index is defined for full-rank sublattices only".into(),
            ));
        }
        let ratio = matrix::det(&self.gram)? / ambient.discriminant();
        let root = num_integer::Roots::sqrt(&ratio);
        if root * root != ratio {
            return Err(Error::InvalidForm(
                "determinant ratio of a full-rank sublattice must be a square".into(),
            ));
        }
        Ok(root)
    }
}

fn sublattice_from_rows(l: &GramLattice, rows: &[Vec<i64>]) -> Result<Sublattice> {
    let basis = matrix::hnf_rows(rows)?;
    let gram = matrix::conjugate(l.gram(), &matrix::transpose(&basis))?;
    Ok(Sublattice { basis, gram })
}

/// The even-value sublattice `Λ₂(L) = {v : Q(v) ≡ 0 (mod 2)}` with its
/// HNF-canonical basis.
pub fn lambda2_sublattice(l: &GramLattice) -> Result<Sublattice> {
    let m = l.rank();
    let g = l.gram();
    let odd: Vec<usize> = (0..m).filter(|&i| g[i][i] % 2 != 0).collect();
    let mut rows: Vec<Vec<i64>> = Vec::with_capacity(m);
    let unit = |i: usize| -> Vec<i64> {
        let mut e = vec![0i64; m];
        e[i] = 1;
        e
    };
    match odd.first() {
        None => {
            // Parity functional vanishes: Λ₂ = L.
            for i in 0..m {
                rows.push(unit(i));
            }
        }
        Some(&j0) => {
            for i in 0..m {
                if g[i][i] % 2 == 0 {
                    rows.push(unit(i));
                }
            }
            let mut twice = vec![0i64; m];
            twice[j0] = 2;
            rows.push(twice);
            for &j in &odd[1..] {
                let mut pair = unit(j0);
                pair[j] = 1;
                rows.push(pair);
            }
        }
    }
    sublattice_from_rows(l, &rows)
}

/// Largest power of two dividing every entry of a nonzero integer matrix.
fn two_power_content(m: &Mat) -> u32 {
    m.iter()
        .flatten()
        .filter(|&&x| x != 0)
        .map(|&x| x.trailing_zeros())
        .min()
        .unwrap_or(0)
}

/// The `λ₂`-transform: the Gram matrix of `Λ₂(L)` divided by its full
/// 2-power content.
pub fn lambda2(l: &GramLattice) -> Result<GramLattice> {
    let sub = lambda2_sublattice(l)?;
    let shift = two_power_content(&sub.gram);
    let gram: Mat = sub
        .gram
        .iter()
        .map(|row| row.iter().map(|&x| x >> shift).collect())
        .collect();
    GramLattice::new(gram)
}

/// Orthogonal complement `{v ∈ L : B(v, s) = 0 for all rows s of `sub_basis`}`
/// as a saturated sublattice with HNF-canonical basis.
pub fn orthogonal_complement(l: &GramLattice, sub_basis: &Mat) -> Result<Sublattice> {
    // Constraint matrix: rows are G·sᵀ pairings, i.e. A = sub_basis · G.
    let a = matrix::mat_mul(sub_basis, l.gram())?;
    let kernel = matrix::kernel_basis(&a)?;
    let gram = matrix::conjugate(l.gram(), &matrix::transpose(&kernel))?;
    Ok(Sublattice {
        basis: kernel,
        gram,
    })
}

/// A corpus form split as `core ⟂ complement` with the core isometric to its
/// named ternary lattice (when the record names one).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoreDecomposition {
    /// The named core, when the record carries a label.
    pub label: Option<CoreLabel>,
    /// Rank-3 core sublattice; for labeled records its Gram matrix equals
    /// the named core's matrix exactly.
    pub core: Sublattice,
    /// Rank-1 orthogonal complement of the core.
    pub complement: Sublattice,
    /// The primitive complement generator (ambient coordinates, first
    /// nonzero coordinate positive).
    pub complement_gen: Vec<i64>,
    /// Its norm `k = Q(g)`: the form restricted to the complement is `k·u²`.
    pub complement_norm: i64,
}

/// Split a corpus record as `core ⟂ k·u²`.
///
/// Labeled records are matched against their named core first on plain
/// coordinate triples of the basis (which covers the whole corpus), then by
/// a general embedding search. Unlabeled rank-4 records of the
/// one-exception family split off their leading unit coordinate. Records of
/// families that don't define a core yield [`Error::CoreNotFound`].
pub fn core_decomposition(record: &FormRecord) -> Result<CoreDecomposition> {
    let l = record.lattice();
    let m = l.rank();
    let g = l.gram();
    let (label, core_rows): (Option<CoreLabel>, Mat) = match record.core_label {
        Some(label) => {
            let core_lat = core_gram(label);
            let target = core_lat.gram();
            let k = target.len();
            let mut found: Option<Mat> = None;
            // All index triples i₁ < … < i_k of the ambient basis.
            let mut combo: Vec<usize> = (0..k).collect();
            loop {
                let sub: Mat = combo
                    .iter()
                    .map(|&i| combo.iter().map(|&j| g[i][j]).collect())
                    .collect();
                if sub == *target {
                    let rows: Mat = combo
                        .iter()
                        .map(|&i| {
                            let mut e = vec![0i64; m];
                            e[i] = 1;
                            e
                        })
                        .collect();
                    found = Some(rows);
                    break;
                }
                // Next combination.
                let mut pos = k;
                while pos > 0 {
                    pos -= 1;
                    if combo[pos] < m - (k - pos) {
                        combo[pos] += 1;
                        for t in pos + 1..k {
                            combo[t] = combo[t - 1] + 1;
                        }
                        break;
                    }
                    if pos == 0 {
                        pos = usize::MAX;
                        break;
                    }
                }
                if pos == usize::MAX {
                    break;
                }
            }
            let rows = match found {
                Some(rows) => rows,
                None => {
                    // General embedding: columns are images of core basis
                    // vectors; transpose to rows.
                    match isometry::embeds(&core_lat, &l)? {
                        Some(u) => matrix::transpose(&u),
                        None => {
                            return Err(Error::CoreNotFound(format!(
                                "record {} does not contain its named core",
                                record.id
                            )))
                        }
                    }
                }
            };
            (Some(label), rows)
        }
        None => {
            if record.status == Status::PuType1 && m == 4 && (1..m).all(|j| g[0][j] == 0) {
                // Unit splitting: core is the ternary section on
                // coordinates 1..3.
                let rows: Mat = (1..m)
                    .map(|i| {
                        let mut e = vec![0i64; m];
                        e[i] = 1;
                        e
                    })
                    .collect();
                (None, rows)
            } else {
                return Err(Error::CoreNotFound(format!(
                    "record {} does not define a core splitting",
                    record.id
                )));
            }
        }
    };
    let core_gram_found = matrix::conjugate(g, &matrix::transpose(&core_rows))?;
    let complement = orthogonal_complement(&l, &core_rows)?;
    if complement.rank() != 1 {
        return Err(Error::CoreNotFound(format!(
            "complement of the core of {} is not rank 1",
            record.id
        )));
    }
    let gen = complement.basis[0].clone();
    let norm = i64::try_from(l.quadratic(&gen)?)
        .map_err(|_| Error::Overflow("complement norm"))?;
    Ok(CoreDecomposition {
        label,
        core: Sublattice {
            basis: core_rows,
            gram: core_gram_found,
        },
        complement,
        complement_gen: gen,
        complement_norm: norm,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{corpus_record, embedded_corpus};
    use proptest::prelude::*;

    fn lat(diag: &[i64]) -> GramLattice {
        GramLattice::diagonal(diag).unwrap()
    }

    #[test]
    fn even_sublattice_of_mixed_parity_diagonal() {
        // diag(1,1,2,12): parity functional is v₀+v₁ mod 2.
        let l = lat(&[1, 1, 2, 12]);
        let sub = lambda2_sublattice(&l).unwrap();
        assert_eq!(
            sub.basis,
            vec![
                vec![1, 1, 0, 0],
                vec![0, 2, 0, 0],
                vec![0, 0, 1, 0],
                vec![0, 0, 0, 1]
            ]
        );
        assert_eq!(
            sub.gram,
            vec![
                vec![2, 2, 0, 0],
                vec![2, 4, 0, 0],
                vec![0, 0, 2, 0],
                vec![0, 0, 0, 12]
            ]
        );
        assert_eq!(sub.index_in(&l).unwrap(), 2);
        assert_eq!(matrix::det(&sub.gram).unwrap(), 96);
        // λ₂ divides out the content 2; the result is equivalent to
        // diag(1,1,1,6).
        let lam = lambda2(&l).unwrap();
        assert_eq!(lam.discriminant(), 6);
        let target = lat(&[1, 1, 1, 6]);
        assert!(isometry::is_isometric(&lam, &target).unwrap().is_some());
    }

    #[test]
    fn even_lattice_is_its_own_even_sublattice() {
        let l = lat(&[2, 4, 6]);
        let sub = lambda2_sublattice(&l).unwrap();
        assert_eq!(sub.basis, matrix::identity(3));
        assert_eq!(sub.index_in(&l).unwrap(), 1);
        let lam = lambda2(&l).unwrap();
        assert_eq!(lam.gram(), lat(&[1, 2, 3]).gram());
    }

    #[test]
    fn lambda2_of_ten_eighty_family_member() {
        // diag(1,2,4,10) transforms to a form equivalent to the listed
        // discriminant-20 target.
        let l = corpus_record("Q80^1").unwrap().lattice();
        let lam = lambda2(&l).unwrap();
        assert_eq!(lam.discriminant(), 20);
        let target = corpus_record("Q20^2").unwrap().lattice();
        assert!(isometry::is_isometric(&lam, &target).unwrap().is_some());
    }

    #[test]
    fn complement_examples_match_expected_generators() {
        let cases = [
            ("Q15^1", vec![0, 0, 1, -2], 30),
            ("Q19^2", vec![0, 3, 2, -6], 114),
            ("Q27^3", vec![0, 5, -10, 4], 270),
            ("Q31^2", vec![0, 5, -9, -1], 279),
            ("Q47^1", vec![0, 1, -2, 7], 329),
            ("Q34^3", vec![1, 0, 0, 0], 1),
            ("Q45^1", vec![1, 0, 0, 0], 1),
            ("Q80^1", vec![0, 0, 0, 1], 10),
            ("Q96^2", vec![0, 1, 0, 0], 2),
        ];
        for (id, gen, norm) in cases {
            let record = corpus_record(id).unwrap();
            let dec = core_decomposition(record).unwrap();
            assert_eq!(dec.complement_gen, gen, "{id}");
            assert_eq!(dec.complement_norm, norm, "{id}");
        }
    }

    #[test]
    fn every_labeled_record_contains_its_core_exactly() {
        for record in embedded_corpus() {
            let Some(label) = record.core_label else {
                continue;
            };
            let dec = core_decomposition(record).unwrap();
            assert_eq!(&dec.core.gram, core_gram(label).gram(), "{}", record.id);
            assert_eq!(dec.complement.rank(), 1, "{}", record.id);
            assert!(dec.complement_norm > 0, "{}", record.id);
            // Core and complement really are orthogonal.
            let l = record.lattice();
            for row in &dec.core.basis {
                assert_eq!(
                    matrix::bilinear_value(l.gram(), row, &dec.complement_gen).unwrap(),
                    0,
                    "{}",
                    record.id
                );
            }
        }
    }

    #[test]
    fn unlabeled_one_exception_records_split_off_the_unit() {
        for record in embedded_corpus() {
            if record.core_label.is_some() || record.status != Status::PuType1 {
                continue;
            }
            let dec = core_decomposition(record).unwrap();
            assert_eq!(dec.label, None);
            assert_eq!(dec.complement_gen, vec![1, 0, 0, 0], "{}", record.id);
            assert_eq!(dec.complement_norm, 1, "{}", record.id);
        }
    }

    #[test]
    fn records_without_core_are_rejected() {
        let record = corpus_record("Q2^1").unwrap();
        assert!(matches!(
            core_decomposition(record),
            Err(Error::CoreNotFound(_))
        ));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn even_sublattice_invariants(seed in 0u64..5_000) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let rank = rng.gen_range(2..=4usize);
            let mut r = vec![vec![0i64; rank]; rank];
            for i in 0..rank {
                r[i][i] = rng.gen_range(1..=2);
                for j in i + 1..rank {
                    r[i][j] = rng.gen_range(-1..=1i64);
                }
            }
            let g = matrix::mat_mul(&matrix::transpose(&r), &r).unwrap();
            let l = GramLattice::new(g).unwrap();
            let sub = lambda2_sublattice(&l).unwrap();
            // All basis vectors have even norm.
            for row in &sub.basis {
                prop_assert_eq!(l.quadratic(row).unwrap() % 2, 0);
            }
            // Index is 1 or 2 and the determinant scales by its square.
            let index = sub.index_in(&l).unwrap();
            prop_assert!(index == 1 || index == 2);
            prop_assert_eq!(
                matrix::det(&sub.gram).unwrap(),
                l.discriminant() * index * index
            );
            // λ₂ keeps integrality and positive definiteness.
            let lam = lambda2(&l).unwrap();
            prop_assert!(lam.discriminant() > 0);
        }
    }
}
