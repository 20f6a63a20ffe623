//! Exhaustive lattice-vector enumeration at a prescribed norm.
//!
//! # Algorithm
//!
//! A Fincke–Pohst style depth-first search over an exact rational Cholesky
//! decomposition. For a positive-definite Gram matrix `G` we precompute
//! `Q(v) = Σᵢ dᵢ (vᵢ + Σ_{j>i} rᵢⱼ vⱼ)²` with `dᵢ > 0` and `rᵢⱼ` exact
//! rationals; the search assigns coordinates one at a time, bounding each
//! coordinate by an integer-square-root computation on the remaining budget,
//! and solves the innermost coordinate exactly. There is no floating point
//! anywhere, so no admissibility risk: every vector of the requested norm is
//! visited exactly once.
//!
//! The decomposition is taken on the *reversed* coordinate order so that the
//! outermost search level is coordinate 0 of the original basis. Candidate
//! values at every level are tried in the order `0, 1, −1, 2, −2, …`
//! (absolute value first, positive before negative). Leaves therefore stream
//! in a canonical order on the original coordinates, and the first primitive
//! leaf found is the canonical least primitive witness — which lets
//! representability queries stop at the first hit.
//!
//! All fraction arithmetic is checked `i128`; overflow surfaces as
//! [`Error::Overflow`] rather than wrapping.

use std::ops::ControlFlow;

use num_integer::Roots;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::forms::GramLattice;
use crate::matrix;

// ---------------------------------------------------------------------------
// Checked exact fractions
// ---------------------------------------------------------------------------

/// Reduced fraction over checked `i128` arithmetic (denominator positive).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Frac {
    num: i128,
    den: i128,
}

const OVERFLOW: Error = Error::Overflow("enumeration arithmetic");

impl Frac {
    const ZERO: Frac = Frac { num: 0, den: 1 };

    fn from_int(x: i128) -> Frac {
        Frac { num: x, den: 1 }
    }

    fn new(num: i128, den: i128) -> Result<Frac> {
        if den == 0 {
            return Err(OVERFLOW);
        }
        let g = num_integer::gcd(num, den).abs().max(1);
        let sign = if den < 0 { -1 } else { 1 };
        Ok(Frac {
            num: sign * (num / g),
            den: sign * (den / g),
        })
    }

    fn add(self, o: Frac) -> Result<Frac> {
        let lhs = self.num.checked_mul(o.den).ok_or(OVERFLOW)?;
        let rhs = o.num.checked_mul(self.den).ok_or(OVERFLOW)?;
        Frac::new(
            lhs.checked_add(rhs).ok_or(OVERFLOW)?,
            self.den.checked_mul(o.den).ok_or(OVERFLOW)?,
        )
    }

    fn sub(self, o: Frac) -> Result<Frac> {
        self.add(Frac {
            num: -o.num,
            den: o.den,
        })
    }

    fn mul(self, o: Frac) -> Result<Frac> {
        Frac::new(
            self.num.checked_mul(o.num).ok_or(OVERFLOW)?,
            self.den.checked_mul(o.den).ok_or(OVERFLOW)?,
        )
    }

    fn div(self, o: Frac) -> Result<Frac> {
        if o.num == 0 {
            return Err(OVERFLOW);
        }
        Frac::new(
            self.num.checked_mul(o.den).ok_or(OVERFLOW)?,
            self.den.checked_mul(o.num).ok_or(OVERFLOW)?,
        )
    }

    fn is_negative(self) -> bool {
        self.num < 0
    }

    fn is_zero(self) -> bool {
        self.num == 0
    }
}

// ---------------------------------------------------------------------------
// Witnesses and scans
// ---------------------------------------------------------------------------

/// An integer vector attaining `Q(coords) = norm`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// Coordinates in the owning lattice's basis order.
    pub coords: Vec<i64>,
    /// The attained value `Q(coords)`.
    pub norm: i64,
    /// True iff the gcd of the coordinates is 1.
    pub primitive: bool,
}

/// gcd of the absolute coordinate values (0 for the zero vector).
pub fn coords_gcd(coords: &[i64]) -> i64 {
    coords
        .iter()
        .fold(0i64, |acc, &x| num_integer::gcd(acc, x.abs()))
}

impl Witness {
    fn new(coords: Vec<i64>, norm: i64) -> Witness {
        let primitive = coords_gcd(&coords) == 1;
        Witness {
            coords,
            norm,
            primitive,
        }
    }
}

/// Result of scanning `[1, bound]` for integers with no primitive witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExceptionScan {
    /// Inclusive scan bound.
    pub bound: i64,
    /// Ascending list of `n ≤ bound` with no primitive representation.
    pub missing: Vec<i64>,
}

// ---------------------------------------------------------------------------
// Canonical candidate order
// ---------------------------------------------------------------------------

/// Integers of `[lo, hi]` in the order `0, 1, −1, 2, −2, …` (values outside
/// the interval skipped).
struct CanonicalValues {
    lo: i64,
    hi: i64,
    k: i64,
    neg_pending: bool,
}

impl CanonicalValues {
    fn new(lo: i64, hi: i64) -> CanonicalValues {
        // Start at the smallest absolute value the interval can contain.
        let k = if lo > 0 {
            lo
        } else if hi < 0 {
            -hi
        } else {
            0
        };
        CanonicalValues {
            lo,
            hi,
            k,
            neg_pending: false,
        }
    }
}

impl Iterator for CanonicalValues {
    type Item = i64;

    fn next(&mut self) -> Option<i64> {
        loop {
            if self.lo > self.hi || self.k > self.hi.abs().max(self.lo.abs()) {
                return None;
            }
            if self.k == 0 {
                self.k = 1;
                if self.lo <= 0 && 0 <= self.hi {
                    return Some(0);
                }
                continue;
            }
            if !self.neg_pending {
                self.neg_pending = true;
                if self.k >= self.lo && self.k <= self.hi {
                    return Some(self.k);
                }
            } else {
                self.neg_pending = false;
                let v = -self.k;
                self.k += 1;
                if v >= self.lo && v <= self.hi {
                    return Some(v);
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// The enumerator
// ---------------------------------------------------------------------------

/// Reusable enumeration engine for one lattice (the rational Cholesky data is
/// computed once and shared across queries; the type is `Sync`, so scans can
/// run the same enumerator from several workers).
///
/// The decomposition data is stored with a *fixed* denominator per search
/// level, so the inner search loop runs on plain checked `i128` integers —
/// no fraction reduction on the hot path:
///
/// - `rᵢⱼ = rn[i][j] / q[i]` (one common denominator per level),
/// - `dᵢ = dn[i] / dd[i]`,
/// - the budget entering level `i` is an integer over the constant
///   denominator `w[i]` (built as an lcm telescope from the top level down).
#[derive(Clone, Debug)]
pub struct Enumerator {
    rank: usize,
    /// `dᵢ` numerators.
    dn: Vec<i128>,
    /// Level common denominators `q[i]` for the row `rᵢⱼ`.
    q: Vec<i128>,
    /// `rᵢⱼ · q[i]` (integers), j > i.
    rn: Vec<Vec<i128>>,
    /// Budget denominator at each level.
    w: Vec<i128>,
    /// `dd[i] · q[i]²` — numerator factor of the level bound.
    nf: Vec<i128>,
    /// `w[i] · dn[i]` — denominator factor of the level bound.
    df: Vec<i128>,
    /// `w[i−1] / w[i]` — budget rescale when descending from level i.
    up_budget: Vec<i128>,
    /// `w[i−1] / (dd[i] · q[i]²)` — spent-term rescale when descending.
    up_term: Vec<i128>,
}

fn checked_lcm(a: i128, b: i128) -> Result<i128> {
    let g = num_integer::gcd(a, b);
    (a / g).checked_mul(b).ok_or(OVERFLOW)
}

impl Enumerator {
    /// Precompute the exact Cholesky data for `lattice`.
    pub fn new(lattice: &GramLattice) -> Result<Enumerator> {
        let m = lattice.rank();
        let g = lattice.gram();
        // Reversed Gram: level m-1 of the search is original coordinate 0.
        let mut a = vec![vec![Frac::ZERO; m]; m];
        for i in 0..m {
            for j in 0..m {
                a[i][j] = Frac::from_int(g[m - 1 - i][m - 1 - j] as i128);
            }
        }
        let mut d = vec![Frac::ZERO; m];
        let mut r = vec![vec![Frac::ZERO; m]; m];
        for i in 0..m {
            d[i] = a[i][i];
            if d[i].is_zero() || d[i].is_negative() {
                return Err(Error::InvalidForm(
                    "gram matrix is not positive definite".into(),
                ));
            }
            for j in i + 1..m {
                r[i][j] = a[i][j].div(d[i])?;
            }
            for k in i + 1..m {
                for l in i + 1..m {
                    // a[k][l] -= a[k][i] * a[i][l] / d[i]
                    let t = a[k][i].mul(a[i][l])?.div(d[i])?;
                    a[k][l] = a[k][l].sub(t)?;
                }
            }
        }
        // Integer-scaled tables with fixed per-level denominators.
        let mut q = vec![1i128; m];
        let mut rn = vec![vec![0i128; m]; m];
        for i in 0..m {
            for j in i + 1..m {
                q[i] = checked_lcm(q[i], r[i][j].den)?;
            }
            for j in i + 1..m {
                rn[i][j] = r[i][j].num.checked_mul(q[i] / r[i][j].den).ok_or(OVERFLOW)?;
            }
        }
        let mut w = vec![1i128; m];
        for i in (1..m).rev() {
            let term_den = d[i]
                .den
                .checked_mul(q[i].checked_mul(q[i]).ok_or(OVERFLOW)?)
                .ok_or(OVERFLOW)?;
            w[i - 1] = checked_lcm(w[i], term_den)?;
        }
        let mut nf = vec![0i128; m];
        let mut df = vec![0i128; m];
        let mut up_budget = vec![1i128; m];
        let mut up_term = vec![1i128; m];
        for i in 0..m {
            let q2 = q[i].checked_mul(q[i]).ok_or(OVERFLOW)?;
            nf[i] = d[i].den.checked_mul(q2).ok_or(OVERFLOW)?;
            df[i] = w[i].checked_mul(d[i].num).ok_or(OVERFLOW)?;
            if i > 0 {
                up_budget[i] = w[i - 1] / w[i];
                up_term[i] = w[i - 1] / nf[i];
            }
        }
        Ok(Enumerator {
            rank: m,
            dn: d.iter().map(|f| f.num).collect(),
            q,
            rn,
            w,
            nf,
            df,
            up_budget,
            up_term,
        })
    }

    /// Lattice rank.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Numerator of `cᵢ = Σ_{j>i} rᵢⱼ uⱼ` over the fixed denominator `q[i]`.
    fn offset_num(&self, level: usize, u: &[i64]) -> Result<i128> {
        let mut c: i128 = 0;
        let row = &self.rn[level];
        for j in level + 1..self.rank {
            if u[j] != 0 {
                c = c
                    .checked_add(row[j].checked_mul(u[j] as i128).ok_or(OVERFLOW)?)
                    .ok_or(OVERFLOW)?;
            }
        }
        Ok(c)
    }

    /// Visit every `v` with `Q(v) = n`, streaming leaves in canonical order
    /// (original coordinate 0 varies slowest; each coordinate runs through
    /// `0, 1, −1, 2, −2, …`). The callback may stop the search early by
    /// returning `ControlFlow::Break`.
    pub fn visit_vectors(
        &self,
        n: i64,
        visit: &mut dyn FnMut(&[i64]) -> ControlFlow<()>,
    ) -> Result<ControlFlow<()>> {
        if n < 0 {
            return Ok(ControlFlow::Continue(()));
        }
        let mut u = vec![0i64; self.rank];
        let mut coords = vec![0i64; self.rank];
        let top = self.rank - 1;
        let budget = (n as i128).checked_mul(self.w[top]).ok_or(OVERFLOW)?;
        self.descend(top, budget, &mut u, &mut coords, visit)
    }

    fn descend(
        &self,
        level: usize,
        budget_num: i128, // budget · w[level], always ≥ 0
        u: &mut [i64],
        coords: &mut [i64],
        visit: &mut dyn FnMut(&[i64]) -> ControlFlow<()>,
    ) -> Result<ControlFlow<()>> {
        let c = self.offset_num(level, u)?;
        let q = self.q[level];
        if level == 0 {
            // Solve d₀ (u₀ + c/q)² = budget exactly:
            // (q·u₀ + c)² = budget_num · nf[0] / df[0].
            let num = budget_num.checked_mul(self.nf[0]).ok_or(OVERFLOW)?;
            if num % self.df[0] != 0 {
                return Ok(ControlFlow::Continue(()));
            }
            let target = num / self.df[0];
            let s = target.sqrt();
            if s.checked_mul(s) != Some(target) {
                return Ok(ControlFlow::Continue(()));
            }
            // Canonical order at the leaf: smaller |u₀| first, positive
            // before negative on ties of absolute value.
            let mut first: Option<i64> = None;
            let mut second: Option<i64> = None;
            for root in [s, -s] {
                let num = root - c;
                if num % q == 0 {
                    let v = i64::try_from(num / q).map_err(|_| OVERFLOW)?;
                    if first != Some(v) {
                        if first.is_none() {
                            first = Some(v);
                        } else {
                            second = Some(v);
                        }
                    }
                }
            }
            if let (Some(a), Some(b)) = (first, second) {
                if (b.abs(), b < 0) < (a.abs(), a < 0) {
                    (first, second) = (Some(b), Some(a));
                }
            }
            for v in [first, second].into_iter().flatten() {
                u[0] = v;
                for k in 0..self.rank {
                    coords[k] = u[self.rank - 1 - k];
                }
                if visit(coords).is_break() {
                    u[0] = 0;
                    return Ok(ControlFlow::Break(()));
                }
            }
            u[0] = 0;
            return Ok(ControlFlow::Continue(()));
        }
        // |uᵢ + c/q| ≤ √(budget / dᵢ), i.e. (q·uᵢ + c)² ≤ budget_num·nf/df.
        let s = (budget_num.checked_mul(self.nf[level]).ok_or(OVERFLOW)? / self.df[level]).sqrt();
        // q·uᵢ ∈ [−c − s, −c + s] ⇒ uᵢ ∈ [⌈(−c−s)/q⌉, ⌊(−c+s)/q⌋].
        let lo_num = (-c).checked_sub(s).ok_or(OVERFLOW)?;
        let hi_num = (-c).checked_add(s).ok_or(OVERFLOW)?;
        let lo = i64::try_from(lo_num.div_euclid(q) + i128::from(lo_num.rem_euclid(q) != 0))
            .map_err(|_| OVERFLOW)?;
        let hi = i64::try_from(hi_num.div_euclid(q)).map_err(|_| OVERFLOW)?;
        let up_b = self.up_budget[level];
        let up_t = self.up_term[level];
        let dn = self.dn[level];
        for v in CanonicalValues::new(lo, hi) {
            u[level] = v;
            let shifted = q.checked_mul(v as i128).ok_or(OVERFLOW)?.checked_add(c).ok_or(OVERFLOW)?;
            // rest·w[level−1] = budget_num·up_b − dₙ·(q·v+c)²·up_t
            let spent = dn
                .checked_mul(shifted.checked_mul(shifted).ok_or(OVERFLOW)?)
                .ok_or(OVERFLOW)?
                .checked_mul(up_t)
                .ok_or(OVERFLOW)?;
            let rest = budget_num
                .checked_mul(up_b)
                .ok_or(OVERFLOW)?
                .checked_sub(spent)
                .ok_or(OVERFLOW)?;
            if rest < 0 {
                continue; // bound was floored; exact budget went negative
            }
            if self
                .descend(level - 1, rest, u, coords, visit)?
                .is_break()
            {
                u[level] = 0;
                return Ok(ControlFlow::Break(()));
            }
        }
        u[level] = 0;
        Ok(ControlFlow::Continue(()))
    }

    /// Visit exactly one of `±v` for every `v ≠ 0` with `Q(v) ≤ bound` (the
    /// representative whose first nonzero coordinate is positive), passing
    /// the exact norm alongside the coordinates.
    pub fn visit_vectors_up_to(
        &self,
        bound: i64,
        gram: &matrix::Mat,
        visit: &mut dyn FnMut(&[i64], i64) -> ControlFlow<()>,
    ) -> Result<ControlFlow<()>> {
        if bound < 1 {
            return Ok(ControlFlow::Continue(()));
        }
        let mut u = vec![0i64; self.rank];
        let mut coords = vec![0i64; self.rank];
        let top = self.rank - 1;
        let budget = (bound as i128).checked_mul(self.w[top]).ok_or(OVERFLOW)?;
        self.sweep(top, budget, true, &mut u, &mut coords, gram, visit)
    }

    fn sweep(
        &self,
        level: usize,
        budget_num: i128,
        prefix_zero: bool, // all coordinates assigned so far are 0
        u: &mut [i64],
        coords: &mut [i64],
        gram: &matrix::Mat,
        visit: &mut dyn FnMut(&[i64], i64) -> ControlFlow<()>,
    ) -> Result<ControlFlow<()>> {
        let c = self.offset_num(level, u)?;
        let q = self.q[level];
        let s = (budget_num.checked_mul(self.nf[level]).ok_or(OVERFLOW)? / self.df[level]).sqrt();
        let lo_num = (-c).checked_sub(s).ok_or(OVERFLOW)?;
        let hi_num = (-c).checked_add(s).ok_or(OVERFLOW)?;
        let mut lo = i64::try_from(lo_num.div_euclid(q) + i128::from(lo_num.rem_euclid(q) != 0))
            .map_err(|_| OVERFLOW)?;
        let hi = i64::try_from(hi_num.div_euclid(q)).map_err(|_| OVERFLOW)?;
        if prefix_zero {
            // Of each ± pair keep the vector whose first nonzero coordinate
            // (in original order — the assignment order) is positive.
            lo = lo.max(0);
        }
        if level == 0 {
            for v in CanonicalValues::new(lo, hi) {
                if prefix_zero && v == 0 {
                    continue; // the zero vector
                }
                u[0] = v;
                for k in 0..self.rank {
                    coords[k] = u[self.rank - 1 - k];
                }
                let norm = i64::try_from(matrix::quadratic_value(gram, coords)?)
                    .map_err(|_| OVERFLOW)?;
                if visit(coords, norm).is_break() {
                    u[0] = 0;
                    return Ok(ControlFlow::Break(()));
                }
            }
            u[0] = 0;
            return Ok(ControlFlow::Continue(()));
        }
        let up_b = self.up_budget[level];
        let up_t = self.up_term[level];
        let dn = self.dn[level];
        for v in CanonicalValues::new(lo, hi) {
            u[level] = v;
            let shifted = q
                .checked_mul(v as i128)
                .ok_or(OVERFLOW)?
                .checked_add(c)
                .ok_or(OVERFLOW)?;
            let spent = dn
                .checked_mul(shifted.checked_mul(shifted).ok_or(OVERFLOW)?)
                .ok_or(OVERFLOW)?
                .checked_mul(up_t)
                .ok_or(OVERFLOW)?;
            let rest = budget_num
                .checked_mul(up_b)
                .ok_or(OVERFLOW)?
                .checked_sub(spent)
                .ok_or(OVERFLOW)?;
            if rest < 0 {
                continue;
            }
            if self
                .sweep(level - 1, rest, prefix_zero && v == 0, u, coords, gram, visit)?
                .is_break()
            {
                u[level] = 0;
                return Ok(ControlFlow::Break(()));
            }
        }
        u[level] = 0;
        Ok(ControlFlow::Continue(()))
    }

    /// Complete, duplicate-free, lexicographically sorted list of vectors of
    /// norm `n` (both `v` and `−v`). For `n = 0`, the zero vector.
    pub fn vectors_with_norm(&self, n: i64) -> Result<Vec<Witness>> {
        if n == 0 {
            return Ok(vec![Witness::new(vec![0; self.rank], 0)]);
        }
        let mut out = Vec::new();
        let _ = self.visit_vectors(n, &mut |coords| {
            out.push(coords.to_vec());
            ControlFlow::Continue(())
        })?;
        out.sort();
        Ok(out.into_iter().map(|c| Witness::new(c, n)).collect())
    }

    /// First witness (in canonical order) satisfying `accept`, if any.
    pub fn first_witness_where(
        &self,
        n: i64,
        mut accept: impl FnMut(&[i64]) -> bool,
    ) -> Result<Option<Witness>> {
        if n < 1 {
            return Ok(None);
        }
        let mut found: Option<Vec<i64>> = None;
        let _ = self.visit_vectors(n, &mut |coords| {
            if accept(coords) {
                found = Some(coords.to_vec());
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        })?;
        Ok(found.map(|c| Witness::new(c, n)))
    }

    /// Canonical least primitive witness of `n ≥ 1`, if one exists.
    pub fn first_primitive(&self, n: i64) -> Result<Option<Witness>> {
        self.first_witness_where(n, |coords| coords_gcd(coords) == 1)
    }

    /// Any witness of `n ≥ 1` (no primitivity constraint), if one exists.
    pub fn first_witness(&self, n: i64) -> Result<Option<Witness>> {
        self.first_witness_where(n, |_| true)
    }

    /// True iff `n ≥ 1` is represented at all.
    pub fn represents(&self, n: i64) -> Result<bool> {
        Ok(self.first_witness(n)?.is_some())
    }
}

// ---------------------------------------------------------------------------
// One-shot helpers
// ---------------------------------------------------------------------------

/// Complete lexicographic list of vectors of norm `n` (see
/// [`Enumerator::vectors_with_norm`]).
pub fn vectors_with_norm(lattice: &GramLattice, n: i64) -> Result<Vec<Witness>> {
    Enumerator::new(lattice)?.vectors_with_norm(n)
}

/// Canonical least primitive witness of `n ≥ 1` by `lattice`, if any.
/// `n ≤ 0` is rejected (universality statements quantify over positive
/// integers only), yielding `None`.
pub fn represents_primitively(lattice: &GramLattice, n: i64) -> Result<Option<Witness>> {
    Enumerator::new(lattice)?.first_primitive(n)
}

/// Block size for sharding scans across workers: fixed so that results are
/// merged in a deterministic order regardless of worker count.
const SCAN_BLOCK: i64 = 512;

/// Scan `[1, bound]` and report every integer with no primitive witness.
///
/// The scan shards into fixed 512-integer blocks processed in parallel and
/// merged in order, so output is deterministic for any worker count.
///
/// When coordinate 0 is orthogonal to the rest of the basis (every corpus
/// form is `a₀x² ⟂ g(y,z,w)`), the scan first sweeps all section vectors
/// with `g ≤ bound` once, recording for each value `m` the set of coordinate
/// gcds attained; `n` then has a primitive witness iff some `x` with
/// `a₀x² ≤ n` leaves `m = n − a₀x²` attainable with a gcd coprime to `x`.
/// Other shapes fall back to one early-exit search per `n`.
pub fn exception_scan(lattice: &GramLattice, bound: i64) -> Result<ExceptionScan> {
    if bound < 1 {
        return Err(Error::InvalidForm(format!("scan bound {bound} must be ≥ 1")));
    }
    if let Some(scan) = split_corner_scan(lattice, bound)? {
        return Ok(scan);
    }
    let enumerator = Enumerator::new(lattice)?;
    let blocks: Vec<i64> = (0..)
        .map(|b| 1 + b * SCAN_BLOCK)
        .take_while(|&lo| lo <= bound)
        .collect();
    let missing_blocks: Vec<Result<Vec<i64>>> = blocks
        .par_iter()
        .map(|&lo| {
            let hi = (lo + SCAN_BLOCK - 1).min(bound);
            let mut missing = Vec::new();
            for n in lo..=hi {
                if enumerator.first_primitive(n)?.is_none() {
                    missing.push(n);
                }
            }
            Ok(missing)
        })
        .collect();
    let mut missing = Vec::new();
    for block in missing_blocks {
        missing.extend(block?);
    }
    Ok(ExceptionScan { bound, missing })
}

/// Gcd-profile fast path of [`exception_scan`] for lattices whose first
/// basis vector is orthogonal to the rest. Returns `None` when the shape
/// doesn't apply (then the caller falls back to per-`n` searches).
fn split_corner_scan(lattice: &GramLattice, bound: i64) -> Result<Option<ExceptionScan>> {
    let m = lattice.rank();
    let g = lattice.gram();
    // Section-vector gcds are stored in a u128 bitset, so they must stay
    // below 128; an integral PD section forces gcd² ≤ norm ≤ bound.
    if m < 2 || bound >= 127 * 127 {
        return Ok(None);
    }
    if (1..m).any(|j| g[0][j] != 0) {
        return Ok(None);
    }
    let a0 = g[0][0];
    let section_gram: matrix::Mat = (1..m)
        .map(|i| (1..m).map(|j| g[i][j]).collect())
        .collect();
    let section = GramLattice::new(section_gram)?;
    let enumerator = Enumerator::new(&section)?;
    // gcd_sets[v] = bitset of coordinate gcds over section vectors of norm v.
    let mut gcd_sets = vec![0u128; bound as usize + 1];
    let _ = enumerator.visit_vectors_up_to(bound, section.gram(), &mut |coords, norm| {
        if norm <= bound {
            let d = coords_gcd(coords);
            debug_assert!((1..128).contains(&d));
            gcd_sets[norm as usize] |= 1u128 << (d as u32 & 127);
        }
        ControlFlow::Continue(())
    })?;
    let represented = |n: i64| -> bool {
        let mut x = 0i64;
        while a0 * x * x <= n {
            let rest = n - a0 * x * x;
            if rest == 0 {
                if x == 1 {
                    return true; // witness (1, 0, …, 0)
                }
            } else {
                let mut set = gcd_sets[rest as usize];
                if x == 1 {
                    if set != 0 {
                        return true;
                    }
                } else {
                    while set != 0 {
                        let d = set.trailing_zeros() as i64;
                        if num_integer::gcd(d, x) == 1 {
                            return true;
                        }
                        set &= set - 1;
                    }
                }
            }
            x += 1;
        }
        false
    };
    let blocks: Vec<i64> = (0..)
        .map(|b| 1 + b * SCAN_BLOCK)
        .take_while(|&lo| lo <= bound)
        .collect();
    let missing: Vec<i64> = blocks
        .par_iter()
        .flat_map_iter(|&lo| {
            let hi = (lo + SCAN_BLOCK - 1).min(bound);
            (lo..=hi).filter(|&n| !represented(n)).collect::<Vec<i64>>()
        })
        .collect();
    Ok(Some(ExceptionScan { bound, missing }))
}

/// Reference oracle: enumerate the full coordinate box
/// `|vᵢ| ≤ √(n · adj(G)ᵢᵢ / det G)` (the exact per-coordinate bound for
/// `Q(v) = n`) and filter by exact evaluation. Exponential in rank — used by
/// the test suites to validate the pruned search, not for production queries.
pub fn naive_vectors_with_norm(lattice: &GramLattice, n: i64) -> Result<Vec<Witness>> {
    if n == 0 {
        return Ok(vec![Witness::new(vec![0; lattice.rank()], 0)]);
    }
    if n < 0 {
        return Ok(Vec::new());
    }
    let g = lattice.gram();
    let det = lattice.discriminant();
    let adj = matrix::adjugate_diagonal(g)?;
    let mut bounds = Vec::with_capacity(lattice.rank());
    let mut volume: i128 = 1;
    for &a in &adj {
        let b = ((n as i128).checked_mul(a).ok_or(OVERFLOW)? / det).sqrt() + 1;
        let width = 2 * b + 1;
        volume = volume.checked_mul(width).ok_or(OVERFLOW)?;
        if volume > 100_000_000 {
            return Err(Error::Overflow("naive box search volume"));
        }
        bounds.push(i64::try_from(b).map_err(|_| OVERFLOW)?);
    }
    let mut out = Vec::new();
    let mut v: Vec<i64> = bounds.iter().map(|&b| -b).collect();
    'odometer: loop {
        if lattice.quadratic(&v)? == i128::from(n) {
            out.push(Witness::new(v.clone(), n));
        }
        for i in (0..v.len()).rev() {
            if v[i] < bounds[i] {
                v[i] += 1;
                continue 'odometer;
            }
            v[i] = -bounds[i];
        }
        break;
    }
    out.sort_by(|a, b| a.coords.cmp(&b.coords));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{gram_from_sextuple, parse_sextuple, GramLattice};
    use proptest::prelude::*;

    fn lat(diag: &[i64]) -> GramLattice {
        GramLattice::diagonal(diag).unwrap()
    }

    #[test]
    fn canonical_values_cover_ranges_in_order() {
        let seq: Vec<i64> = CanonicalValues::new(-2, 3).collect();
        assert_eq!(seq, vec![0, 1, -1, 2, -2, 3]);
        let seq: Vec<i64> = CanonicalValues::new(2, 4).collect();
        assert_eq!(seq, vec![2, 3, 4]);
        let seq: Vec<i64> = CanonicalValues::new(-4, -2).collect();
        assert_eq!(seq, vec![-2, -3, -4]);
        let seq: Vec<i64> = CanonicalValues::new(1, 0).collect();
        assert!(seq.is_empty());
    }

    #[test]
    fn unit_vectors_of_identity() {
        let id = lat(&[1, 1, 1, 1]);
        let ws = vectors_with_norm(&id, 1).unwrap();
        assert_eq!(ws.len(), 8);
        assert!(ws.iter().all(|w| w.primitive));
        // Lexicographic order includes both signs.
        assert_eq!(ws[0].coords, vec![-1, 0, 0, 0]);
        assert_eq!(ws[7].coords, vec![1, 0, 0, 0]);
    }

    #[test]
    fn norm_zero_yields_zero_vector() {
        let id = lat(&[1, 1, 1, 1]);
        let ws = vectors_with_norm(&id, 0).unwrap();
        assert_eq!(ws.len(), 1);
        assert_eq!(ws[0].coords, vec![0, 0, 0, 0]);
        assert!(!ws[0].primitive);
        assert!(represents_primitively(&id, 0).unwrap().is_none());
    }

    #[test]
    fn n5_misses_fourteen() {
        let n5 = lat(&[1, 2, 4]);
        assert!(vectors_with_norm(&n5, 14).unwrap().is_empty());
    }

    #[test]
    fn four_squares_canonical_witness() {
        let id = lat(&[1, 1, 1, 1]);
        let w = represents_primitively(&id, 4).unwrap().unwrap();
        assert_eq!(w.coords, vec![1, 1, 1, 1]);
        assert!(w.primitive);
    }

    #[test]
    fn q6_1_misses_four_primitively() {
        let l = gram_from_sextuple(parse_sextuple("1 1 6 0 0 0").unwrap());
        assert!(represents_primitively(&l, 4).unwrap().is_none());
        // ...but represents 4 imprimitively.
        assert!(!vectors_with_norm(&l, 4).unwrap().is_empty());
    }

    #[test]
    fn q80_1_misses_twenty_four() {
        let l = lat(&[1, 2, 4, 10]);
        assert!(represents_primitively(&l, 24).unwrap().is_none());
        let scan = exception_scan(&l, 1000).unwrap();
        assert_eq!(scan.missing, vec![24]);
    }

    #[test]
    fn q95_1_scan_matches_claimed_exceptions() {
        let l = gram_from_sextuple(parse_sextuple("2 5 10 0 2 0").unwrap());
        let scan = exception_scan(&l, 1000).unwrap();
        assert_eq!(scan.missing, vec![4, 12, 25]);
    }

    #[test]
    fn four_squares_misses_exactly_multiples_of_eight() {
        // Classical: x²+y²+z²+w² represents every n ≥ 1, but primitively
        // exactly when 8 ∤ n.
        let id = lat(&[1, 1, 1, 1]);
        let scan = exception_scan(&id, 100).unwrap();
        let expected: Vec<i64> = (1..=100).filter(|n| n % 8 == 0).collect();
        assert_eq!(scan.missing, expected);
    }

    #[test]
    fn exceptional_values_decompose_imprimitively() {
        // At every claimed exception, all witnesses share a divisor g > 1 and
        // n/g² is represented.
        for record in crate::forms::embedded_corpus() {
            if record.exception_set.is_empty() {
                continue;
            }
            let l = record.lattice();
            let en = Enumerator::new(&l).unwrap();
            for &n in &record.exception_set {
                let ws = en.vectors_with_norm(n).unwrap();
                for w in &ws {
                    assert!(!w.primitive, "{} at {n}", record.id);
                    let g = coords_gcd(&w.coords);
                    assert!(g > 1);
                    assert!(en.represents(n / (g * g)).unwrap(), "{} at {n}", record.id);
                }
            }
        }
    }

    #[test]
    fn scan_fast_path_agrees_with_per_n_search() {
        for id in ["Q15^1", "Q80^1", "Q95^1"] {
            let l = crate::forms::corpus_record(id).unwrap().lattice();
            let scan = exception_scan(&l, 600).unwrap();
            let en = Enumerator::new(&l).unwrap();
            let slow: Vec<i64> = (1..=600)
                .filter(|&n| en.first_primitive(n).unwrap().is_none())
                .collect();
            assert_eq!(scan.missing, slow, "{id}");
        }
    }

    #[test]
    fn rank_one_enumeration() {
        let l = lat(&[5]);
        assert_eq!(vectors_with_norm(&l, 5).unwrap().len(), 2);
        assert!(vectors_with_norm(&l, 7).unwrap().is_empty());
        assert_eq!(vectors_with_norm(&l, 20).unwrap().len(), 2); // ±2
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn agrees_with_naive_box_oracle(
            seed in 0u64..10_000,
            n in 1i64..60,
        ) {
            // Random small positive-definite lattice G = Rᵀ R with unit
            // diagonal R, entries bounded.
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let rank = rng.gen_range(1..=4usize);
            let mut r = vec![vec![0i64; rank]; rank];
            for i in 0..rank {
                r[i][i] = rng.gen_range(1..=2);
                for j in i + 1..rank {
                    r[i][j] = rng.gen_range(-2..=2i64);
                }
            }
            let g = crate::matrix::mat_mul(&crate::matrix::transpose(&r), &r).unwrap();
            let l = GramLattice::new(g).unwrap();
            let fast = vectors_with_norm(&l, n).unwrap();
            let naive = naive_vectors_with_norm(&l, n).unwrap();
            prop_assert_eq!(&fast, &naive);
            // Negation closure and even count.
            for w in &fast {
                let neg: Vec<i64> = w.coords.iter().map(|x| -x).collect();
                prop_assert!(fast.iter().any(|o| o.coords == neg));
            }
            prop_assert_eq!(fast.len() % 2, 0);
            // Primitive filter is a sub-stream of the full list.
            if let Some(w) = represents_primitively(&l, n).unwrap() {
                prop_assert!(fast.iter().any(|o| o.coords == w.coords && o.primitive));
            } else {
                prop_assert!(fast.iter().all(|o| !o.primitive));
            }
        }
    }
}
