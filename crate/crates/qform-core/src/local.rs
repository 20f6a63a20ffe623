//! `p`-adic representability of integers by positive-definite lattices.
//!
//! # Algorithm
//!
//! A primitive vector `x ∈ ℤₚᵐ` with `Q(x) = n` is searched digit by digit.
//! At depth `j` the partial vector is known mod `p^j` and must satisfy the
//! necessary congruence `Q(x) ≡ n (mod p^j)` for odd `p`, or
//! `(mod 2^{j+1})` for `p = 2` (perturbing `x` by `p^j·δ` cannot change the
//! value below those moduli). The search stops at depth `T = 2e + 1` with
//! `e = v_p(2·det G)`: a primitive partial solution surviving to that depth
//! lifts to an exact `p`-adic solution by Hensel's lemma, because
//! `adj(G)·(2Gx) = 2·det(G)·x` forces some gradient coordinate of a
//! primitive `x` to have valuation at most `e`, and the surviving congruence
//! is sharper than the classical `v_p(Q(x) − n) > 2·v_p(∇Q(x))` threshold.
//!
//! Depth-first order makes representable `(n, p)` cheap (first surviving
//! chain wins); only locally non-represented `n` exhaust the pruned tree.
//!
//! Non-primitive representability descends through `n ↦ n/p²`, since an
//! imprimitive witness is `p` times a witness of `n/p²`. Genus-level
//! representability reduces to finitely many primes: for rank ≥ 3 only
//! `p | 2·det` can obstruct; for rank ≤ 2 also the primes dividing `n`.

use crate::error::{Error, Result};
use crate::forms::{core_gram, CoreLabel, GramLattice};
use crate::matrix;

/// `v_p(n)` for `n ≠ 0`.
fn val_p(mut n: i128, p: i64) -> u32 {
    debug_assert!(n != 0);
    let p = i128::from(p);
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// Ascending list of distinct primes dividing `n` (trial division).
fn prime_divisors(mut n: i128) -> Vec<i64> {
    let mut out = Vec::new();
    n = n.abs();
    let mut p: i128 = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p as i64);
            while n % p == 0 {
                n /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(i64::try_from(n).expect("prime factor fits i64"));
    }
    out
}

fn validate(n: i64, p: i64) -> Result<()> {
    if n < 1 {
        return Err(Error::InvalidForm(format!(
            "local representability is defined for n ≥ 1, got {n}"
        )));
    }
    if p < 2 || !is_prime(p) {
        return Err(Error::InvalidForm(format!("{p} is not a prime")));
    }
    Ok(())
}

fn is_prime(p: i64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Primitive representability of `n` by `lattice` over `ℤₚ`, searched with
/// `slack` extra digit levels beyond the Hensel depth `2·v_p(2·det) + 1`
/// (the answer must not depend on `slack`; regression suites vary it).
pub fn primitively_represented_over_zp_with_slack(
    lattice: &GramLattice,
    n: i64,
    p: i64,
    slack: u32,
) -> Result<bool> {
    validate(n, p)?;
    let g = lattice.gram();
    let m = lattice.rank();
    let e = val_p(2 * lattice.discriminant(), p);
    let depth = 2 * e + 1 + slack;
    // Digit DFS over x mod p^depth.
    let mut x = vec![0i64; m];
    let accepted = extend(g, m, n, p, 1, depth, &mut x)?;
    Ok(accepted)
}

/// Try all digit vectors at level `j` (x is complete mod `p^{j-1}`).
fn extend(
    g: &matrix::Mat,
    m: usize,
    n: i64,
    p: i64,
    j: u32,
    depth: u32,
    x: &mut Vec<i64>,
) -> Result<bool> {
    let step = (p as i128).checked_pow(j - 1).ok_or(Error::Overflow("p-adic digit step"))?;
    let step = i64::try_from(step).map_err(|_| Error::Overflow("p-adic digit step"))?;
    // Congruence modulus at this level.
    let modulus = if p == 2 {
        i128::from(step) * i128::from(p) * 2
    } else {
        i128::from(step) * i128::from(p)
    };
    let target = i128::from(n).rem_euclid(modulus);
    // Odometer over digit vectors d ∈ {0..p-1}^m, one local to each level.
    let mut digits = vec![0i64; m];
    loop {
        // Apply digits, test, recurse.
        for i in 0..m {
            x[i] += digits[i] * step;
        }
        let admissible = (j > 1 || x.iter().any(|&c| c % p != 0))
            && matrix::quadratic_value(g, x)?.rem_euclid(modulus) == target;
        if admissible {
            if j == depth {
                return Ok(true);
            }
            if extend(g, m, n, p, j + 1, depth, x)? {
                return Ok(true);
            }
        }
        for i in 0..m {
            x[i] -= digits[i] * step;
        }
        // Next digit vector.
        let mut pos = 0;
        while pos < m {
            digits[pos] += 1;
            if digits[pos] < p {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
        if pos == m {
            return Ok(false);
        }
    }
}

/// Primitive representability of `n ≥ 1` by `lattice` over `ℤₚ`.
pub fn primitively_represented_over_zp(lattice: &GramLattice, n: i64, p: i64) -> Result<bool> {
    primitively_represented_over_zp_with_slack(lattice, n, p, 0)
}

/// Representability (primitive or not) of `n ≥ 1` over `ℤₚ`: a witness of
/// gcd `p^k` is `p^k` times a primitive witness of `n / p^{2k}`.
pub fn represented_over_zp(lattice: &GramLattice, n: i64, p: i64) -> Result<bool> {
    validate(n, p)?;
    let mut m = n;
    loop {
        if primitively_represented_over_zp(lattice, m, p)? {
            return Ok(true);
        }
        if m % (p * p) != 0 {
            return Ok(false);
        }
        m /= p * p;
    }
}

/// Representability of `n ≥ 1` by the genus of `lattice` (equivalently: over
/// every `ℤₚ`; positive-definiteness covers the real place).
pub fn genus_represents(lattice: &GramLattice, n: i64) -> Result<bool> {
    if n < 1 {
        return Err(Error::InvalidForm(format!(
            "genus representability is defined for n ≥ 1, got {n}"
        )));
    }
    let mut primes = prime_divisors(2 * lattice.discriminant());
    if lattice.rank() <= 2 {
        // Low rank: primes dividing n can also obstruct.
        for p in prime_divisors(i128::from(n)) {
            if !primes.contains(&p) {
                primes.push(p);
            }
        }
        primes.sort_unstable();
    }
    for p in primes {
        if !represented_over_zp(lattice, n, p)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Hypothesis of the base-change relation `λ₂`: the 2-adic unimodular Jordan
/// block has rank ≤ 2, which for an integral Gram matrix is its rank mod 2.
pub fn satisfies_reduction_hypothesis(lattice: &GramLattice) -> bool {
    matrix::rank_mod2(lattice.gram()) <= 2
}

/// Closed-form genus-representability for the named ternary cores; the two
/// cores without a transcribed closed form fall back to the direct local
/// computation.
///
/// Excluded sets (everything else is represented):
/// - N1, N5: `v₂(n)` odd and odd part ≡ 7 (mod 8)
/// - N3: `v₂(n)` odd and odd part ≡ 5 (mod 8)
/// - N6: `v₂(n)` even and odd part ≡ 7 (mod 8)
/// - N7: `v₅(n)` odd and 5-unit ≡ ±2 (mod 5)
/// - N4: `v₇(n)` odd and 7-unit a non-residue (3, 5, 6 mod 7)
/// - N9: `n` odd, or `v₁₇(n/2)` odd with 17-unit a residue
///   (enumeration confirms the residue orientation: the smallest evens the
///   core misses are 34, 68, 136, 272, 306, whose 17-units are all squares,
///   while 102 = 2·17·3 with non-residue unit 3 is represented)
/// - N10: `v₃(n) = 1`, or `v₅(n)` odd with 5-unit ≡ ±1 (mod 5)
pub fn core_gen_predicate(label: CoreLabel, n: i64) -> Result<bool> {
    if n < 1 {
        return Err(Error::InvalidForm(format!(
            "genus representability is defined for n ≥ 1, got {n}"
        )));
    }
    let nn = i128::from(n);
    let unit_and_val = |p: i64| -> (i64, u32) {
        let v = val_p(nn, p);
        let u = nn / i128::from(p).pow(v);
        ((u % i128::from(p)) as i64, v)
    };
    let excluded = match label {
        CoreLabel::N1 | CoreLabel::N5 => {
            let (_, v2) = unit_and_val(2);
            let odd = nn >> v2;
            v2 % 2 == 1 && odd % 8 == 7
        }
        CoreLabel::N3 => {
            let (_, v2) = unit_and_val(2);
            let odd = nn >> v2;
            v2 % 2 == 1 && odd % 8 == 5
        }
        CoreLabel::N6 => {
            let (_, v2) = unit_and_val(2);
            let odd = nn >> v2;
            v2 % 2 == 0 && odd % 8 == 7
        }
        CoreLabel::N7 => {
            let (u5, v5) = unit_and_val(5);
            v5 % 2 == 1 && (u5 == 2 || u5 == 3)
        }
        CoreLabel::N4 => {
            let (u7, v7) = unit_and_val(7);
            v7 % 2 == 1 && [3, 5, 6].contains(&u7)
        }
        CoreLabel::N9 => {
            if n % 2 == 1 {
                true // the core is an even lattice
            } else {
                let half = nn / 2;
                let v17 = if half == 0 { 0 } else { val_p(half, 17) };
                let unit = (half / i128::from(17).pow(v17) % 17) as i64;
                const RESIDUES_17: [i64; 8] = [1, 2, 4, 8, 9, 13, 15, 16];
                v17 % 2 == 1 && RESIDUES_17.contains(&unit)
            }
        }
        CoreLabel::N10 => {
            let v3 = val_p(nn, 3);
            let (u5, v5) = unit_and_val(5);
            v3 == 1 || (v5 % 2 == 1 && (u5 == 1 || u5 == 4))
        }
        CoreLabel::N2 | CoreLabel::N8 | CoreLabel::UnitExtension => {
            return genus_represents(&core_gram(label), n)
        }
    };
    Ok(!excluded)
}
