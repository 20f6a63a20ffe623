//! Small exact integer-matrix kernel used by every other module.
//!
//! Matrices are dense `Vec<Vec<i64>>` rows at rank ≤ 6; every product or
//! determinant runs in `i128` with checked arithmetic and reports
//! [`Error::Overflow`](crate::error::Error::Overflow) instead of wrapping.
//!
//! # Algorithms
//! * determinant — fraction-free Bareiss elimination (all intermediates are
//!   minors, so exact division never truncates);
//! * Hermite normal form — integer row reduction with Euclidean pivot steps,
//!   pivots positive, entries above each pivot reduced into `[0, pivot)`;
//! * integer kernel — unimodular column reduction of the constraint matrix,
//!   returning the columns of the accumulated transform that map to zero;
//! * 𝔽₂ rank — plain Gaussian elimination on the parity pattern.

use crate::error::{Error, Result};

/// Dense row-major integer matrix.
pub type Mat = Vec<Vec<i64>>;

/// `n × n` identity matrix.
pub fn identity(n: usize) -> Mat {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

/// True iff `m` is square and symmetric.
pub fn is_symmetric(m: &[Vec<i64>]) -> bool {
    let n = m.len();
    m.iter().all(|r| r.len() == n)
        && (0..n).all(|i| (0..n).all(|j| m[i][j] == m[j][i]))
}

/// Transpose of an arbitrary rectangular matrix.
pub fn transpose(m: &[Vec<i64>]) -> Mat {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len())
        .map(|j| m.iter().map(|row| row[j]).collect())
        .collect()
}

fn checked_dot(a: impl Iterator<Item = (i64, i64)>) -> Result<i128> {
    let mut acc: i128 = 0;
    for (x, y) in a {
        let term = (x as i128)
            .checked_mul(y as i128)
            .ok_or(Error::Overflow("matrix product"))?;
        acc = acc
            .checked_add(term)
            .ok_or(Error::Overflow("matrix product"))?;
    }
    Ok(acc)
}

fn to_i64(v: i128, what: &'static str) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::Overflow(what))
}

/// Checked matrix product `a · b`.
pub fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Result<Mat> {
    let cols = if b.is_empty() { 0 } else { b[0].len() };
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let dot = checked_dot(row.iter().copied().zip(b.iter().map(|r| r[j])))?;
                    to_i64(dot, "matrix product")
                })
                .collect()
        })
        .collect()
}

/// Checked conjugation `uᵀ · g · u` (the Gram matrix of the sublattice whose
/// basis vectors are the columns of `u`).
pub fn conjugate(g: &[Vec<i64>], u: &[Vec<i64>]) -> Result<Mat> {
    let ut = transpose(u);
    mat_mul(&mat_mul(&ut, g)?, u)
}

/// Matrix–vector product `m · v` with checked arithmetic.
pub fn mat_vec(m: &[Vec<i64>], v: &[i64]) -> Result<Vec<i64>> {
    m.iter()
        .map(|row| {
            let dot = checked_dot(row.iter().copied().zip(v.iter().copied()))?;
            to_i64(dot, "matrix-vector product")
        })
        .collect()
}

/// Evaluate the quadratic map `vᵀ · g · v` exactly.
pub fn quadratic_value(g: &[Vec<i64>], v: &[i64]) -> Result<i128> {
    let mut acc: i128 = 0;
    for (i, row) in g.iter().enumerate() {
        for (j, &gij) in row.iter().enumerate() {
            let term = (gij as i128)
                .checked_mul((v[i] as i128).checked_mul(v[j] as i128).ok_or(
                    Error::Overflow("quadratic evaluation"),
                )?)
                .ok_or(Error::Overflow("quadratic evaluation"))?;
            acc = acc
                .checked_add(term)
                .ok_or(Error::Overflow("quadratic evaluation"))?;
        }
    }
    Ok(acc)
}

/// Evaluate the symmetric bilinear map `uᵀ · g · v` exactly.
pub fn bilinear_value(g: &[Vec<i64>], u: &[i64], v: &[i64]) -> Result<i128> {
    let mut acc: i128 = 0;
    for (i, row) in g.iter().enumerate() {
        if u[i] == 0 {
            continue;
        }
        for (j, &gij) in row.iter().enumerate() {
            let term = (gij as i128)
                .checked_mul((u[i] as i128).checked_mul(v[j] as i128).ok_or(
                    Error::Overflow("bilinear evaluation"),
                )?)
                .ok_or(Error::Overflow("bilinear evaluation"))?;
            acc = acc
                .checked_add(term)
                .ok_or(Error::Overflow("bilinear evaluation"))?;
        }
    }
    Ok(acc)
}

/// Exact determinant by fraction-free Bareiss elimination.
pub fn det(m: &[Vec<i64>]) -> Result<i128> {
    let n = m.len();
    if n == 0 {
        return Ok(1);
    }
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut sign: i128 = 1;
    let mut prev: i128 = 1;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| a[i][k] != 0) else {
                return Ok(0);
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let lhs = a[k][k]
                    .checked_mul(a[i][j])
                    .ok_or(Error::Overflow("determinant"))?;
                let rhs = a[i][k]
                    .checked_mul(a[k][j])
                    .ok_or(Error::Overflow("determinant"))?;
                let num = lhs.checked_sub(rhs).ok_or(Error::Overflow("determinant"))?;
                a[i][j] = num / prev; // exact: Bareiss quotients are minors
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    Ok(sign * a[n - 1][n - 1])
}

/// Leading principal minors `det(m[..k][..k])` for `k = 1..=n`.
pub fn leading_minors(m: &[Vec<i64>]) -> Result<Vec<i128>> {
    (1..=m.len())
        .map(|k| {
            let sub: Mat = m[..k].iter().map(|r| r[..k].to_vec()).collect();
            det(&sub)
        })
        .collect()
}

/// Diagonal entries of the adjugate: `adj(m)[i][i]` is the cofactor obtained
/// by deleting row and column `i`. For a positive-definite `g` this gives the
/// exact coordinate bound `v_i² ≤ n · adj(g)[i][i] / det(g)` for `Q(v) = n`.
pub fn adjugate_diagonal(m: &[Vec<i64>]) -> Result<Vec<i128>> {
    let n = m.len();
    (0..n)
        .map(|i| {
            let sub: Mat = (0..n)
                .filter(|&r| r != i)
                .map(|r| {
                    (0..n)
                        .filter(|&c| c != i)
                        .map(|c| m[r][c])
                        .collect()
                })
                .collect();
            det(&sub)
        })
        .collect()
}

fn rows_to_i64(rows: Vec<Vec<i128>>, what: &'static str) -> Result<Mat> {
    rows.into_iter()
        .map(|r| r.into_iter().map(|x| to_i64(x, what)).collect())
        .collect()
}

/// Row-style Hermite normal form of the lattice spanned by `rows`.
///
/// Zero rows are dropped; each returned row has a positive pivot strictly to
/// the right of the previous row's pivot, and every entry above a pivot is
/// reduced into `[0, pivot)`. The result is the canonical basis of the
/// row span, so two generating sets span the same lattice iff their HNFs are
/// equal.
pub fn hnf_rows(rows: &[Vec<i64>]) -> Result<Mat> {
    if rows.is_empty() {
        return Ok(Vec::new());
    }
    let cols = rows[0].len();
    let mut a: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut pivot_row = 0usize;
    for col in 0..cols {
        // Euclidean reduction: shrink entries in this column below the pivot
        // until only one nonzero remains.
        loop {
            let mut best: Option<usize> = None;
            for i in pivot_row..a.len() {
                if a[i][col] != 0
                    && best.is_none_or(|b| a[i][col].abs() < a[b][col].abs())
                {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            a.swap(pivot_row, b);
            let mut again = false;
            for i in pivot_row + 1..a.len() {
                if a[i][col] != 0 {
                    let q = a[i][col].div_euclid(a[pivot_row][col]);
                    for j in 0..cols {
                        let sub = q
                            .checked_mul(a[pivot_row][j])
                            .ok_or(Error::Overflow("hnf"))?;
                        a[i][j] = a[i][j].checked_sub(sub).ok_or(Error::Overflow("hnf"))?;
                    }
                    again = a[i][col] != 0;
                }
            }
            if !again {
                break;
            }
        }
        if a[pivot_row][col] != 0 {
            if a[pivot_row][col] < 0 {
                for j in 0..cols {
                    a[pivot_row][j] = -a[pivot_row][j];
                }
            }
            let p = a[pivot_row][col];
            for i in 0..pivot_row {
                let q = a[i][col].div_euclid(p);
                if q != 0 {
                    for j in 0..cols {
                        let sub = q
                            .checked_mul(a[pivot_row][j])
                            .ok_or(Error::Overflow("hnf"))?;
                        a[i][j] = a[i][j].checked_sub(sub).ok_or(Error::Overflow("hnf"))?;
                    }
                }
            }
            pivot_row += 1;
            if pivot_row == a.len() {
                break;
            }
        }
    }
    a.truncate(pivot_row);
    rows_to_i64(a, "hnf")
}

/// Basis of the integer kernel `{x ∈ ℤᵐ : a · x = 0}` (as rows).
///
/// The kernel of an integer matrix is saturated, so this is also a basis of
/// the kernel sublattice. Computed by accumulating unimodular column
/// operations that bring `a` to column echelon form; the transform columns
/// over the vanished part of `a` span the kernel.
pub fn kernel_basis(a: &[Vec<i64>]) -> Result<Mat> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    if cols == 0 {
        return Ok(Vec::new());
    }
    let mut w: Vec<Vec<i128>> = a
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut u: Vec<Vec<i128>> = (0..cols)
        .map(|i| (0..cols).map(|j| i128::from(i == j)).collect())
        .collect();
    let mut pivot_col = 0usize;
    for row in 0..rows {
        loop {
            let mut best: Option<usize> = None;
            for j in pivot_col..cols {
                if w[row][j] != 0
                    && best.is_none_or(|b| w[row][j].abs() < w[row][b].abs())
                {
                    best = Some(j);
                }
            }
            let Some(b) = best else { break };
            for r in &mut w {
                r.swap(pivot_col, b);
            }
            for r in &mut u {
                r.swap(pivot_col, b);
            }
            let mut again = false;
            for j in pivot_col + 1..cols {
                if w[row][j] != 0 {
                    let q = w[row][j].div_euclid(w[row][pivot_col]);
                    for r in &mut w {
                        let sub = q
                            .checked_mul(r[pivot_col])
                            .ok_or(Error::Overflow("kernel"))?;
                        r[j] = r[j].checked_sub(sub).ok_or(Error::Overflow("kernel"))?;
                    }
                    for r in &mut u {
                        let sub = q
                            .checked_mul(r[pivot_col])
                            .ok_or(Error::Overflow("kernel"))?;
                        r[j] = r[j].checked_sub(sub).ok_or(Error::Overflow("kernel"))?;
                    }
                    again = w[row][j] != 0;
                }
            }
            if !again {
                break;
            }
        }
        if pivot_col < cols && w[row][pivot_col] != 0 {
            pivot_col += 1;
        }
    }
    let kernel: Vec<Vec<i128>> = (pivot_col..cols)
        .map(|j| (0..cols).map(|i| u[i][j]).collect())
        .collect();
    hnf_rows(&rows_to_i64(kernel, "kernel")?)
}

/// Rank of `m` over 𝔽₂ (reduce entries mod 2, then Gaussian elimination).
pub fn rank_mod2(m: &[Vec<i64>]) -> usize {
    let mut bits: Vec<Vec<u8>> = m
        .iter()
        .map(|r| r.iter().map(|&x| (x & 1) as u8).collect())
        .collect();
    let rows = bits.len();
    let cols = if rows == 0 { 0 } else { bits[0].len() };
    let mut rank = 0usize;
    for col in 0..cols {
        if let Some(p) = (rank..rows).find(|&i| bits[i][col] == 1) {
            bits.swap(rank, p);
            for i in 0..rows {
                if i != rank && bits[i][col] == 1 {
                    for j in 0..cols {
                        bits[i][j] ^= bits[rank][j];
                    }
                }
            }
            rank += 1;
        }
    }
    rank
}

/// Inverse of a unimodular integer matrix (determinant ±1), via the adjugate.
pub fn unimodular_inverse(m: &[Vec<i64>]) -> Result<Mat> {
    let n = m.len();
    let d = det(m)?;
    if d != 1 && d != -1 {
        return Err(Error::InvalidForm(format!(
            "matrix is not unimodular (det {d})"
        )));
    }
    let mut inv = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            // cofactor C_ji = (-1)^{i+j} det(minor with row j, col i removed)
            let sub: Mat = (0..n)
                .filter(|&r| r != j)
                .map(|r| (0..n).filter(|&c| c != i).map(|c| m[r][c]).collect())
                .collect();
            let mut c = det(&sub)?;
            if (i + j) % 2 == 1 {
                c = -c;
            }
            inv[i][j] = to_i64(c * d, "inverse")?; // divide by det = multiply by ±1
        }
    }
    Ok(inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_matches_cofactor_expansion() {
        let m = vec![vec![2, 1, 0], vec![1, 4, 2], vec![0, 2, 6]];
        assert_eq!(det(&m).unwrap(), 34);
        let id = identity(4);
        assert_eq!(det(&id).unwrap(), 1);
        let singular = vec![vec![1, 2], vec![2, 4]];
        assert_eq!(det(&singular).unwrap(), 0);
    }

    #[test]
    fn det_handles_zero_leading_pivot() {
        let m = vec![vec![0, 1], vec![1, 0]];
        assert_eq!(det(&m).unwrap(), -1);
    }

    #[test]
    fn hnf_is_canonical_for_even_sum_lattice() {
        // Generators of {a : a1 + a2 even} in Z^4.
        let gens = vec![
            vec![2, 0, 0, 0],
            vec![1, 1, 0, 0],
            vec![0, 0, 1, 0],
            vec![0, 0, 0, 1],
        ];
        let h = hnf_rows(&gens).unwrap();
        assert_eq!(
            h,
            vec![
                vec![1, 1, 0, 0],
                vec![0, 2, 0, 0],
                vec![0, 0, 1, 0],
                vec![0, 0, 0, 1],
            ]
        );
        // A different generating set of the same lattice gives the same HNF.
        let gens2 = vec![
            vec![1, -1, 0, 0],
            vec![1, 1, 0, 0],
            vec![3, 1, 1, 0],
            vec![0, 2, 0, 1],
            vec![2, 0, 0, 0],
        ];
        assert_eq!(hnf_rows(&gens2).unwrap(), h);
    }

    #[test]
    fn kernel_of_orthogonality_constraints() {
        // x orthogonal to (2,0,1) and (0,3,1) under the identity form.
        let a = vec![vec![2, 0, 1], vec![0, 3, 1]];
        let k = kernel_basis(&a).unwrap();
        assert_eq!(k.len(), 1);
        for row in &a {
            let dot: i64 = row.iter().zip(&k[0]).map(|(x, y)| x * y).sum();
            assert_eq!(dot, 0);
        }
        // The kernel generator of a rank-1 kernel is primitive.
        let g = k[0].iter().fold(0i64, |acc, &x| num_integer::gcd(acc, x.abs()));
        assert_eq!(g, 1);
    }

    #[test]
    fn rank_mod2_counts_odd_diagonal_block() {
        let g = vec![
            vec![1, 0, 0, 0],
            vec![0, 1, 0, 0],
            vec![0, 0, 2, 0],
            vec![0, 0, 0, 12],
        ];
        assert_eq!(rank_mod2(&g), 2);
        assert_eq!(rank_mod2(&identity(4)), 4);
        let even = vec![vec![2, 0], vec![0, 4]];
        assert_eq!(rank_mod2(&even), 0);
    }

    #[test]
    fn unimodular_inverse_round_trips() {
        let u = vec![vec![1, 2, 0], vec![0, 1, 3], vec![0, 0, 1]];
        let inv = unimodular_inverse(&u).unwrap();
        assert_eq!(mat_mul(&u, &inv).unwrap(), identity(3));
    }

    #[test]
    fn quadratic_value_matches_direct_expansion() {
        // x^2 + 2y^2 + 3z^2 + 2·(z·w term) style check on a 4×4 gram.
        let g = vec![
            vec![1, 0, 0, 0],
            vec![0, 2, 1, 0],
            vec![0, 1, 4, 2],
            vec![0, 0, 2, 6],
        ];
        let v = vec![1, -1, 2, 1];
        // 1 + 2 + 16 + 6 + 2*(1*(-1)*2) + 2*(2*2*1) = 25 - 4 + 8 = 29
        assert_eq!(quadratic_value(&g, &v).unwrap(), 29);
    }

    #[test]
    fn overflow_is_reported_not_wrapped() {
        let big = vec![vec![i64::MAX, 1], vec![1, i64::MAX]];
        // The determinant of this matrix fits i128, but conjugating by a
        // large matrix does not fit i64 output entries.
        let u = vec![vec![i64::MAX, 0], vec![0, 1]];
        assert!(matches!(
            conjugate(&big, &u),
            Err(crate::error::Error::Overflow(_))
        ));
    }
}
