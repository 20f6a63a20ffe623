//! Integral isometry testing and lattice embeddings.
//!
//! # Algorithm
//!
//! Backtracking over Gram-compatible images. To embed a lattice `S` into a
//! lattice `L`, basis vectors of `S` are mapped one at a time to vectors of
//! `L` of the correct norm (produced by the exact enumeration engine, in its
//! deterministic order); a partial assignment survives only if every pairwise
//! inner product matches the corresponding entry of the Gram matrix of `S`.
//! An isometry is an embedding between lattices of equal rank and
//! determinant: any such embedding is automatically surjective, since its
//! matrix has determinant `±1`.
//!
//! Before the search, both Gram matrices pass through a greedy integral
//! size-reduction (norm-sorted, pairwise `bᵢ ← bᵢ − μ·bⱼ` steps), which keeps
//! candidate norms small; witnesses are mapped back through the recorded
//! unimodular base changes, and every returned witness is re-verified
//! exactly.
//!
//! Cheap invariants (rank, determinant, counts of vectors of norm ≤ 16)
//! reject most non-isometric pairs before any search starts.

use std::collections::HashMap;

use crate::enumerate::Enumerator;
use crate::error::{Error, Result};
use crate::forms::GramLattice;
use crate::matrix::{self, Mat};

/// Column matrix of an isometry or embedding: column `j` holds the image of
/// the `j`-th basis vector of the source lattice, in target coordinates.
pub type IsometryWitness = Mat;

/// Greedy integral size reduction. Returns `(G', T)` with `G' = Tᵀ·G·T`
/// unimodularly equivalent to `G`, diagonal sorted ascending, and every
/// off-diagonal entry `|G'ᵢⱼ| ≤ ½·G'ⱼⱼ` where the reduction step helps.
pub fn reduce(gram: &Mat) -> Result<(Mat, Mat)> {
    let m = gram.len();
    let mut g = gram.clone();
    let mut t = matrix::identity(m);
    // Column operation: basis vector i ← basis vector i − μ · basis vector j.
    let apply = |g: &mut Mat, t: &mut Mat, i: usize, j: usize, mu: i64| -> Result<()> {
        for r in 0..m {
            t[r][i] = t[r][i]
                .checked_sub(mu.checked_mul(t[r][j]).ok_or(Error::Overflow("reduction"))?)
                .ok_or(Error::Overflow("reduction"))?;
        }
        // G ← Eᵀ G E for E = I − μ·eⱼeᵢᵀ: row/col i shift by row/col j.
        for r in 0..m {
            g[r][i] = g[r][i]
                .checked_sub(mu.checked_mul(g[r][j]).ok_or(Error::Overflow("reduction"))?)
                .ok_or(Error::Overflow("reduction"))?;
        }
        for c in 0..m {
            g[i][c] = g[i][c]
                .checked_sub(mu.checked_mul(g[j][c]).ok_or(Error::Overflow("reduction"))?)
                .ok_or(Error::Overflow("reduction"))?;
        }
        Ok(())
    };
    loop {
        let mut improved = false;
        for i in 0..m {
            for j in 0..m {
                if i == j || g[j][j] == 0 {
                    continue;
                }
                // Nearest integer to G[i][j] / G[j][j].
                let (p, q) = (g[i][j], g[j][j]);
                let mu = (2 * p + q).div_euclid(2 * q);
                if mu == 0 {
                    continue;
                }
                // New norm: Q(bᵢ) − 2μ·B(bᵢ,bⱼ) + μ²·Q(bⱼ).
                let new_norm = g[i][i] - 2 * mu * p + mu * mu * q;
                if new_norm < g[i][i] {
                    apply(&mut g, &mut t, i, j, mu)?;
                    improved = true;
                }
            }
        }
        if !improved {
            break;
        }
    }
    // Sort basis by norm (stable), folding the permutation into T.
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&i| g[i][i]);
    let perm: Mat = (0..m)
        .map(|r| (0..m).map(|c| i64::from(order[c] == r)).collect())
        .collect();
    let g = matrix::conjugate(&g, &perm)?;
    let t = matrix::mat_mul(&t, &perm)?;
    Ok((g, t))
}

/// Backtracking image search: find columns `u₀,…` in `target` with
/// `B(uᵢ,uⱼ) = source_gram[i][j]`. Both Grams must already be reduced if
/// speed matters; correctness holds regardless.
fn find_embedding(target: &GramLattice, source_gram: &Mat) -> Result<Option<Mat>> {
    let k = source_gram.len();
    let enumerator = Enumerator::new(target)?;
    // Candidate vectors per distinct source norm.
    let mut pools: HashMap<i64, Vec<Vec<i64>>> = HashMap::new();
    for j in 0..k {
        let norm = source_gram[j][j];
        if norm <= 0 {
            return Ok(None); // positive definite sources only
        }
        if !pools.contains_key(&norm) {
            let vs = enumerator
                .vectors_with_norm(norm)?
                .into_iter()
                .map(|w| w.coords)
                .collect::<Vec<_>>();
            pools.insert(norm, vs);
        }
        if pools[&norm].is_empty() {
            return Ok(None);
        }
    }
    let gram_t = target.gram();
    let mut chosen: Vec<Vec<i64>> = Vec::with_capacity(k);
    fn dfs(
        j: usize,
        k: usize,
        gram_t: &Mat,
        source_gram: &Mat,
        pools: &HashMap<i64, Vec<Vec<i64>>>,
        chosen: &mut Vec<Vec<i64>>,
    ) -> Result<bool> {
        if j == k {
            return Ok(true);
        }
        'cand: for v in &pools[&source_gram[j][j]] {
            for (i, u) in chosen.iter().enumerate() {
                if matrix::bilinear_value(gram_t, u, v)? != i128::from(source_gram[i][j]) {
                    continue 'cand;
                }
            }
            chosen.push(v.clone());
            if dfs(j + 1, k, gram_t, source_gram, pools, chosen)? {
                return Ok(true);
            }
            chosen.pop();
        }
        Ok(false)
    }
    if dfs(0, k, gram_t, source_gram, &pools, &mut chosen)? {
        // Columns = images of source basis vectors.
        let m = target.rank();
        let mat: Mat = (0..m)
            .map(|r| (0..k).map(|c| chosen[c][r]).collect())
            .collect();
        Ok(Some(mat))
    } else {
        Ok(None)
    }
}

/// Counts of lattice vectors of each norm `1..=max` (a cheap isometry
/// invariant).
pub fn theta_prefix(lattice: &GramLattice, max: i64) -> Result<Vec<usize>> {
    let enumerator = Enumerator::new(lattice)?;
    (1..=max)
        .map(|n| Ok(enumerator.vectors_with_norm(n)?.len()))
        .collect()
}

/// Decide whether `small` embeds isometrically into `big`; on success return
/// the column matrix `U` (rank(big) × rank(small)) with `Uᵀ·G_big·U =
/// G_small`. The witness is exact-verified before it is returned.
pub fn embeds(small: &GramLattice, big: &GramLattice) -> Result<Option<IsometryWitness>> {
    if small.rank() > big.rank() {
        return Ok(None);
    }
    let (small_r, t_small) = reduce(small.gram())?;
    let (big_r, t_big) = reduce(big.gram())?;
    let big_r = GramLattice::new(big_r)?;
    let Some(u_r) = find_embedding(&big_r, &small_r)? else {
        return Ok(None);
    };
    // Map back: columns are images of `small_r` basis vectors in `big_r`
    // coordinates; conjugate by the two base changes.
    let t_small_inv = matrix::unimodular_inverse(&t_small)?;
    let u = matrix::mat_mul(&matrix::mat_mul(&t_big, &u_r)?, &t_small_inv)?;
    if matrix::conjugate(big.gram(), &u)? != *small.gram() {
        return Err(Error::InvalidForm(
            "internal error: embedding witness failed verification".into(),
        ));
    }
    Ok(Some(u))
}

/// Decide whether two lattices are isometric; on success return the
/// unimodular column matrix `U` with `Uᵀ·G_a·U = G_b`.
pub fn is_isometric(a: &GramLattice, b: &GramLattice) -> Result<Option<IsometryWitness>> {
    if a.rank() != b.rank() || a.discriminant() != b.discriminant() {
        return Ok(None);
    }
    let theta_cap = 16;
    if theta_prefix(a, theta_cap)? != theta_prefix(b, theta_cap)? {
        return Ok(None);
    }
    // Equal rank and determinant force any embedding to be unimodular.
    embeds(b, a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{gram_from_sextuple, parse_sextuple};
    use proptest::prelude::*;

    fn lat(diag: &[i64]) -> GramLattice {
        GramLattice::diagonal(diag).unwrap()
    }

    #[test]
    fn diagonal_reordering_is_an_isometry() {
        let a = lat(&[1, 2]);
        let b = lat(&[2, 1]);
        let u = is_isometric(&a, &b).unwrap().unwrap();
        assert_eq!(matrix::conjugate(a.gram(), &u).unwrap(), *b.gram());
    }

    #[test]
    fn determinant_mismatch_is_rejected() {
        assert!(is_isometric(&lat(&[1, 2]), &lat(&[1, 3])).unwrap().is_none());
    }

    #[test]
    fn equal_determinant_non_isometric_pair() {
        // ⟨1,16⟩ and ⟨4,4⟩ share rank and determinant but differ in minima.
        assert!(is_isometric(&lat(&[1, 16]), &lat(&[4, 4]))
            .unwrap()
            .is_none());
    }

    #[test]
    fn off_diagonal_equivalent_form() {
        // [[2,1],[1,2]] is not isometric to diag(2,2) (det 3 vs 4) but is
        // isometric to itself under a nontrivial base change.
        let a = GramLattice::new(vec![vec![2, 1], vec![1, 2]]).unwrap();
        let b = GramLattice::new(vec![vec![2, -1], vec![-1, 2]]).unwrap();
        let u = is_isometric(&a, &b).unwrap().unwrap();
        assert_eq!(matrix::conjugate(a.gram(), &u).unwrap(), *b.gram());
    }

    #[test]
    fn five_does_not_embed_into_one_two() {
        // x² + 2y² never equals 5.
        assert!(embeds(&lat(&[5]), &lat(&[1, 2])).unwrap().is_none());
        // ⟨3⟩ ↪ ⟨1,2⟩ via (1,1).
        let u = embeds(&lat(&[3]), &lat(&[1, 2])).unwrap().unwrap();
        assert_eq!(matrix::conjugate(lat(&[1, 2]).gram(), &u).unwrap(), *lat(&[3]).gram());
    }

    #[test]
    fn named_core_embeds_into_its_host() {
        // The ternary core [[2,1,0],[1,4,2],[0,2,6]] sits inside the host
        // with sextuple (2,4,6,4,0,2) on basis coordinates 1..3.
        let core = GramLattice::new(vec![vec![2, 1, 0], vec![1, 4, 2], vec![0, 2, 6]]).unwrap();
        let host = gram_from_sextuple(parse_sextuple("2 4 6 4 0 2").unwrap());
        let u = embeds(&core, &host).unwrap().unwrap();
        assert_eq!(matrix::conjugate(host.gram(), &u).unwrap(), *core.gram());
    }

    #[test]
    fn reduce_preserves_equivalence() {
        let g = vec![vec![2, 2, 0, 0], vec![2, 4, 0, 0], vec![0, 0, 2, 0], vec![0, 0, 0, 12]];
        let (g_r, t) = reduce(&g).unwrap();
        assert_eq!(matrix::conjugate(&g, &t).unwrap(), g_r);
        assert_eq!(matrix::det(&g_r).unwrap(), matrix::det(&g).unwrap());
        // The reduced form of this Λ₂-style Gram is diag(2,2,2,12).
        assert_eq!(g_r, vec![vec![2, 0, 0, 0], vec![0, 2, 0, 0], vec![0, 0, 2, 0], vec![0, 0, 0, 12]]);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn random_conjugates_are_isometric(seed in 0u64..5_000) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let rank = rng.gen_range(2..=3usize);
            // Random small PD Gram.
            let mut r = vec![vec![0i64; rank]; rank];
            for i in 0..rank {
                r[i][i] = rng.gen_range(1..=2);
                for j in i + 1..rank {
                    r[i][j] = rng.gen_range(-1..=1i64);
                }
            }
            let g = matrix::mat_mul(&matrix::transpose(&r), &r).unwrap();
            let a = GramLattice::new(g.clone()).unwrap();
            // Random unimodular conjugate (product of elementary column ops).
            let mut t = matrix::identity(rank);
            for _ in 0..4 {
                let i = rng.gen_range(0..rank);
                let mut j = rng.gen_range(0..rank);
                if i == j { j = (j + 1) % rank; }
                let mu = rng.gen_range(-2..=2i64);
                for row in 0..rank {
                    t[row][i] += mu * t[row][j];
                }
            }
            let b = GramLattice::new(matrix::conjugate(&g, &t).unwrap()).unwrap();
            // Symmetric witnesses both directions.
            let u = is_isometric(&a, &b).unwrap().unwrap();
            prop_assert_eq!(&matrix::conjugate(a.gram(), &u).unwrap(), b.gram());
            let v = is_isometric(&b, &a).unwrap().unwrap();
            prop_assert_eq!(&matrix::conjugate(b.gram(), &v).unwrap(), a.gram());
            // Reflexivity.
            prop_assert!(is_isometric(&a, &a).unwrap().is_some());
        }
    }
}
