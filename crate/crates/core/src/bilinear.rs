//! Counting solutions of `ad + bc = p` with `(a, b, c, d)` in `[n]^4`.
//!
//! For `n < √p` every solution has `gcd(a, b) = gcd(c, d) = 1` and
//! `a + b >= p/n`, so the count splits over the visible lattice points of a
//! triangle `T`: for each `(a, b)` in `T` the equation `ax + by = p` has at
//! most one solution `(x, y)` in `T`, found from one modular inverse. The
//! brute-force counters in this module do not use any of that structure and
//! serve as oracles.

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{gcd, inverse_unchecked, is_prime, isqrt};
use crate::{Error, Result};

/// Largest `n` accepted by [`count_bruteforce`] (about `10^7` pairs).
pub const BRUTE_MAX_N: u64 = 3_200;

/// Largest `p` accepted by [`verify_ac_conclusion`].
pub const AC_MAX_P: u64 = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Brute,
    Fast,
}

/// `N(p, n)` together with the method that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SolutionCount {
    pub p: u64,
    pub n: u64,
    pub value: u64,
    pub method: Method,
}

fn ensure_prime(p: u64) -> Result<()> {
    if p < 3 || !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(())
}

fn ensure_below_sqrt(p: u64, n: u64) -> Result<()> {
    if n.saturating_mul(n) > p {
        return Err(Error::domain(format!(
            "n = {n} is not below sqrt(p) for p = {p}; use the brute-force counter"
        )));
    }
    Ok(())
}

/// Brute-force `N(p, n)` from the histogram of products `ad`:
/// `N = Σ_k h(k) h(p - k)`. Independent of any coprimality argument.
pub fn count_bruteforce(p: u64, n: u64) -> Result<SolutionCount> {
    if n == 0 {
        return Err(Error::domain("n must be positive"));
    }
    if n > BRUTE_MAX_N {
        return Err(Error::Capacity {
            what: "brute-force side length",
            value: n,
            limit: BRUTE_MAX_N,
        });
    }
    let mut hist = vec![0u64; p as usize];
    for a in 1..=n {
        for d in 1..=n {
            let k = a * d;
            if k >= p {
                break;
            }
            hist[k as usize] += 1;
        }
    }
    let value = (1..p as usize).map(|k| hist[k] * hist[p as usize - k]).sum();
    Ok(SolutionCount { p, n, value, method: Method::Brute })
}

/// Brute-force `N(p, n)` by looping over `(a, d, b)` and solving for `c`.
/// Cubic in `n`; a second oracle for small instances.
pub fn count_triple_loop(p: u64, n: u64) -> u64 {
    let mut count = 0;
    for a in 1..=n {
        for d in 1..=n {
            let ad = a * d;
            if ad >= p {
                break;
            }
            let rest = p - ad;
            for b in 1..=n {
                if rest.is_multiple_of(b) && (1..=n).contains(&(rest / b)) {
                    count += 1;
                }
            }
        }
    }
    count
}

/// The visible lattice points `(a, b)` with `1 <= a, b <= n`,
/// `a + b >= p/n` and `gcd(a, b) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TriangleRegion {
    p: u64,
    n: u64,
    sum_min: u64,
}

impl TriangleRegion {
    /// Requires `p` an odd prime and `n^2 < p`.
    pub fn new(p: u64, n: u64) -> Result<Self> {
        ensure_prime(p)?;
        if n == 0 {
            return Err(Error::domain("n must be positive"));
        }
        ensure_below_sqrt(p, n)?;
        Ok(TriangleRegion { p, n, sum_min: p.div_ceil(n) })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// Smallest admissible `a + b`, i.e. `ceil(p / n)`.
    pub fn sum_min(&self) -> u64 {
        self.sum_min
    }

    pub fn is_empty(&self) -> bool {
        2 * self.n < self.sum_min
    }

    pub fn contains(&self, a: u64, b: u64) -> bool {
        (1..=self.n).contains(&a)
            && (1..=self.n).contains(&b)
            && a + b >= self.sum_min
            && gcd(a, b) == 1
    }

    /// Values of `b` with a nonempty row.
    pub fn row_range(&self) -> std::ops::RangeInclusive<u64> {
        if self.is_empty() {
            #[allow(clippy::reversed_empty_ranges)]
            return 1..=0;
        }
        self.sum_min.saturating_sub(self.n).max(1)..=self.n
    }

    /// Members `a` of the row at height `b`, ascending.
    pub fn row(&self, b: u64) -> impl Iterator<Item = u64> + '_ {
        let lo = self.sum_min.saturating_sub(b).max(1);
        let hi = if self.is_empty() { 0 } else { self.n };
        (lo..=hi).filter(move |&a| gcd(a, b) == 1)
    }

    /// All members, grouped by `b` ascending.
    pub fn iter(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.row_range().flat_map(move |b| self.row(b).map(move |a| (a, b)))
    }

    pub fn len(&self) -> usize {
        self.row_range().map(|b| self.row(b).count()).sum()
    }
}

/// The rows of `T` for `(p, n)`; empty when `n < √(p/2)` or `n > √p`.
pub fn enumerate_region(p: u64, n: u64) -> Result<Vec<(u64, Vec<u64>)>> {
    ensure_prime(p)?;
    if n == 0 || n.saturating_mul(n) > p {
        return Ok(Vec::new());
    }
    let region = TriangleRegion::new(p, n)?;
    Ok(region
        .row_range()
        .map(|b| (b, region.row(b).collect::<Vec<_>>()))
        .filter(|(_, row)| !row.is_empty())
        .collect())
}

/// Result of solving `ax + by = p` inside `T` for one `(a, b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PairOutcome {
    pub a: u64,
    pub b: u64,
    pub solution: Option<(u64, u64)>,
}

/// The residue `x0 = p·(a^{-1} mod b) mod b`; every integer solution of
/// `ax + by = p` has `x ≡ x0 (mod b)`.
#[inline]
fn base_residue(a: u64, b: u64, p: u64) -> u64 {
    if b == 1 {
        return 0;
    }
    let x0 = (p % b) * inverse_unchecked(a, b) % b;
    debug_assert_ne!(x0, 0, "p·inv(a) ≡ 0 mod {b}");
    x0
}

/// Smallest admissible `x`: `x <= n` is required directly and `y <= n`
/// forces `x >= (p - bn)/a`.
#[inline]
fn first_candidate(a: u64, b: u64, p: u64, n: u64) -> u64 {
    let lower = if p > b * n { (p - b * n).div_ceil(a) } else { 1 };
    let lower = lower.max(1);
    let x0 = base_residue(a, b, p);
    lower + (x0 + b - lower % b) % b
}

/// The unique candidate solution for `(a, b)` without membership checks.
#[inline]
fn solve_pair(a: u64, b: u64, p: u64, n: u64) -> Option<(u64, u64)> {
    let x = first_candidate(a, b, p, n);
    if x > n {
        return None;
    }
    let y = (p - a * x) / b;
    debug_assert_eq!(a * x + b * y, p);
    debug_assert!((1..=n).contains(&y));
    debug_assert_eq!(gcd(x, y), 1);
    debug_assert!(x + y >= p.div_ceil(n));
    Some((x, y))
}

/// The solution `(x, y)` of `ax + by = p` in `T`, if any.
pub fn per_pair_solution(a: u64, b: u64, p: u64, n: u64) -> Result<PairOutcome> {
    let region = TriangleRegion::new(p, n)?;
    if !region.contains(a, b) {
        return Err(Error::domain(format!("({a}, {b}) is not in T for p = {p}, n = {n}")));
    }
    Ok(PairOutcome { a, b, solution: solve_pair(a, b, p, n) })
}

/// Every `(x, y)` in `[n]^2` with `ax + by = p`, found by stepping through the
/// whole residue class `x ≡ x0 (mod b)`. Used to check that at most one exists.
pub fn solutions_in_box(a: u64, b: u64, p: u64, n: u64) -> Vec<(u64, u64)> {
    let x0 = base_residue(a, b, p);
    let start = if x0 == 0 { b } else { x0 };
    (start..=n)
        .step_by(b as usize)
        .filter_map(|x| {
            let ax = a * x;
            (ax < p && (p - ax).is_multiple_of(b))
                .then(|| (x, (p - ax) / b))
                .filter(|&(_, y)| (1..=n).contains(&y))
        })
        .collect()
}

/// `N(p, n)` for `n < √p` as the number of pairs of `T` whose equation has a
/// solution in `T`. Rows are processed in parallel and summed exactly.
pub fn count_fast(p: u64, n: u64) -> Result<SolutionCount> {
    let region = TriangleRegion::new(p, n)?;
    let value = region
        .row_range()
        .into_par_iter()
        .map(|b| {
            region
                .row(b)
                .filter(|&a| solve_pair(a, b, p, n).is_some())
                .count() as u64
        })
        .sum();
    Ok(SolutionCount { p, n, value, method: Method::Fast })
}

/// The pairs of `T` whose equation `ax + by = p` is solvable in `T`.
pub fn solvable_pairs(p: u64, n: u64) -> Result<Vec<(u64, u64)>> {
    let region = TriangleRegion::new(p, n)?;
    let rows: Vec<Vec<(u64, u64)>> = region
        .row_range()
        .into_par_iter()
        .map(|b| {
            region
                .row(b)
                .filter(|&a| solve_pair(a, b, p, n).is_some())
                .map(|a| (a, b))
                .collect()
        })
        .collect();
    Ok(rows.into_iter().flatten().collect())
}

/// Side length used for the small-solution pair count: `floor(√p)`.
pub fn small_solution_side(p: u64) -> u64 {
    isqrt(p)
}

/// Number of `(a, b)` in `T` with `n = floor(√p)` whose equation
/// `ax + by = p` has a (necessarily unique) solution in `T`.
pub fn small_solution_pairs(p: u64) -> Result<u64> {
    ensure_prime(p)?;
    Ok(count_fast(p, small_solution_side(p))?.value)
}

/// The three aggregate sums whose combination gives `N(p, n)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BreakdownTerms {
    /// `n Σ_T (1/a + 1/b)`
    pub main1: f64,
    /// `p Σ_T 1/(ab)`
    pub main2: f64,
    /// `Σ_T ({(n - p·inv_b(a))/b} + {(n - p·inv_a(b))/a} - 1)`
    pub frac_sum: f64,
    pub total: u64,
    pub pairs: u64,
}

/// `(n - p·inv(a mod b)) mod b`, the numerator of the fractional term with
/// denominator `b` (zero when `b = 1`).
#[inline]
fn frac_numerator(a: u64, b: u64, p: u64, n: u64) -> u64 {
    if b == 1 {
        return 0;
    }
    let x0 = base_residue(a, b, p);
    (n % b + b - x0) % b
}

/// Checks, for every pair of `T`, the integer identity
/// `count · ab = nb + na - p - (a·r1 + b·r2 - ab)`, where `r1/b` and `r2/a` are
/// the two fractional terms, and aggregates the three sums.
pub fn breakdown_terms(p: u64, n: u64) -> Result<BreakdownTerms> {
    let region = TriangleRegion::new(p, n)?;
    struct Acc {
        main1: f64,
        main2: f64,
        frac: f64,
        total: u64,
        pairs: u64,
        fault: Option<(u64, u64)>,
    }
    let zero = || Acc { main1: 0.0, main2: 0.0, frac: 0.0, total: 0, pairs: 0, fault: None };
    let rows: Vec<Acc> = region
        .row_range()
        .into_par_iter()
        .map(|b| {
            let mut acc = zero();
            for a in region.row(b) {
                let count = solve_pair(a, b, p, n).is_some() as i128;
                let r1 = frac_numerator(a, b, p, n) as i128;
                let r2 = frac_numerator(b, a, p, n) as i128;
                let (ai, bi, ni, pi) = (a as i128, b as i128, n as i128, p as i128);
                let lhs = count * ai * bi;
                let rhs = ni * bi + ni * ai - pi - (ai * r1 + bi * r2 - ai * bi);
                if lhs != rhs && acc.fault.is_none() {
                    acc.fault = Some((a, b));
                }
                let (af, bf) = (a as f64, b as f64);
                acc.main1 += 1.0 / af + 1.0 / bf;
                acc.main2 += 1.0 / (af * bf);
                acc.frac += r1 as f64 / bf + r2 as f64 / af - 1.0;
                acc.total += count as u64;
                acc.pairs += 1;
            }
            acc
        })
        .collect();
    let mut out = zero();
    for r in rows {
        out.main1 += r.main1;
        out.main2 += r.main2;
        out.frac += r.frac;
        out.total += r.total;
        out.pairs += r.pairs;
        out.fault = out.fault.or(r.fault);
    }
    if let Some((a, b)) = out.fault {
        return Err(Error::Consistency(format!(
            "per-pair count identity fails at (a, b) = ({a}, {b}) for p = {p}, n = {n}"
        )));
    }
    Ok(BreakdownTerms {
        main1: n as f64 * out.main1,
        main2: p as f64 * out.main2,
        frac_sum: out.frac,
        total: out.total,
        pairs: out.pairs,
    })
}

/// `Σ_T ({(n - p·inv_b(a))/b} - 1/2)`. Each row is summed exactly as an
/// integer numerator over `b` before conversion to `f64`.
pub fn fractional_sum_diagnostic(p: u64, n: u64) -> Result<f64> {
    let region = TriangleRegion::new(p, n)?;
    let rows: Vec<f64> = region
        .row_range()
        .into_par_iter()
        .map(|b| {
            let (mut num, mut cnt) = (0u64, 0u64);
            for a in region.row(b) {
                num += frac_numerator(a, b, p, n);
                cnt += 1;
            }
            num as f64 / b as f64 - cnt as f64 / 2.0
        })
        .collect();
    Ok(rows.iter().sum())
}

/// Whether every congruence `ax + by ≡ c (mod p)` has a nonzero solution
/// with `|x|, |y| <= √p`.
///
/// With `b` invertible the reachable set is `b·{rx + y}` for `r = a/b`, so
/// for each `x` the values of `y` sweep the window `[rx - s, rx + s]`; the
/// residues are all covered iff the sorted window starts leave no gap wider
/// than a window. Residue 0 additionally needs a solution with `x != 0`.
pub fn verify_ac_conclusion(a: i64, b: i64, p: u64) -> Result<bool> {
    if p > AC_MAX_P {
        return Err(Error::Capacity { what: "congruence modulus", value: p, limit: AC_MAX_P });
    }
    ensure_prime(p)?;
    let pi = p as i64;
    let (ar, br) = (a.rem_euclid(pi) as u64, b.rem_euclid(pi) as u64);
    let (ar, br) = match (ar, br) {
        (0, 0) => return Err(Error::domain("gcd(a, b, p) must be 1")),
        (x, 0) => (0, x),
        other => other,
    };
    let r = ar * inverse_unchecked(br, p) % p;
    let s = isqrt(p);
    let width = 2 * s + 1;

    let zero_ok = (1..=s).any(|x| {
        let v = r * x % p;
        v <= s || p - v <= s
    });
    if !zero_ok {
        return Ok(false);
    }
    if width >= p {
        return Ok(true);
    }
    let mut starts: Vec<u64> = (0..width)
        .map(|i| {
            let x = i as i64 - s as i64;
            ((r as i64 * x - s as i64).rem_euclid(pi)) as u64
        })
        .collect();
    starts.sort_unstable();
    let wrap_gap = starts[0] + p - starts[starts.len() - 1];
    let max_gap = starts.windows(2).map(|w| w[1] - w[0]).chain([wrap_gap]).max().unwrap();
    Ok(max_gap <= width)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quadruple_loop(p: u64, n: u64) -> u64 {
        let mut count = 0;
        for a in 1..=n {
            for b in 1..=n {
                for c in 1..=n {
                    for d in 1..=n {
                        count += (a * d + b * c == p) as u64;
                    }
                }
            }
        }
        count
    }

    fn marking_oracle(a: i64, b: i64, p: u64) -> bool {
        let s = isqrt(p) as i64;
        let mut hit = vec![false; p as usize];
        for x in -s..=s {
            for y in -s..=s {
                if x == 0 && y == 0 {
                    continue;
                }
                hit[(a * x + b * y).rem_euclid(p as i64) as usize] = true;
            }
        }
        hit.iter().all(|&h| h)
    }

    #[test]
    fn small_counts() {
        assert_eq!(quadruple_loop(5, 2), 2);
        assert_eq!(quadruple_loop(11, 3), 4);
        assert_eq!(quadruple_loop(11, 2), 0);
        assert_eq!(count_bruteforce(5, 2).unwrap().value, 2);
        assert_eq!(count_bruteforce(11, 3).unwrap().value, 4);
        assert_eq!(count_bruteforce(11, 2).unwrap().value, 0);
        assert_eq!(count_fast(5, 2).unwrap().value, 2);
        assert_eq!(count_fast(11, 3).unwrap().value, 4);
        assert_eq!(count_fast(11, 2).unwrap().value, 0);
    }

    #[test]
    fn brute_methods_agree() {
        for p in [5u64, 7, 11, 13, 29, 31, 97, 101, 211] {
            for n in 1..=12 {
                let q = quadruple_loop(p, n);
                assert_eq!(count_triple_loop(p, n), q, "p = {p}, n = {n}");
                assert_eq!(count_bruteforce(p, n).unwrap().value, q, "p = {p}, n = {n}");
            }
        }
    }

    #[test]
    fn brute_errors() {
        assert!(matches!(count_bruteforce(5, 0), Err(Error::Domain(_))));
        assert!(matches!(count_bruteforce(10_007, BRUTE_MAX_N + 1), Err(Error::Capacity { .. })));
    }

    #[test]
    fn fast_guards() {
        assert!(matches!(count_fast(11, 4), Err(Error::Domain(_))));
        assert!(matches!(count_fast(12, 3), Err(Error::NotPrime(12))));
        assert!(matches!(count_fast(2, 1), Err(Error::NotPrime(2))));
    }

    #[test]
    fn region_examples() {
        let t = TriangleRegion::new(5, 2).unwrap();
        let members: Vec<_> = t.iter().collect();
        assert_eq!(members, vec![(2, 1), (1, 2)]);
        assert_eq!(t.sum_min(), 3);
        let t = TriangleRegion::new(11, 3).unwrap();
        assert!(t.contains(3, 1));
        assert!(!t.contains(3, 3));
        assert!(TriangleRegion::new(101, 7).unwrap().is_empty());
        assert_eq!(TriangleRegion::new(101, 7).unwrap().iter().count(), 0);
        assert!(enumerate_region(101, 7).unwrap().is_empty());
        assert!(enumerate_region(101, 11).unwrap().is_empty());
        assert_eq!(enumerate_region(5, 2).unwrap(), vec![(1, vec![2]), (2, vec![1])]);
    }

    #[test]
    fn region_matches_direct_filter() {
        for p in [101u64, 211, 1009] {
            for n in 1..=isqrt(p) {
                let t = TriangleRegion::new(p, n).unwrap();
                let mut direct = Vec::new();
                for b in 1..=n {
                    for a in 1..=n {
                        if (a + b) as f64 * n as f64 >= p as f64 && gcd(a, b) == 1 {
                            direct.push((a, b));
                        }
                    }
                }
                assert_eq!(t.iter().collect::<Vec<_>>(), direct, "p = {p}, n = {n}");
                assert_eq!(t.len(), direct.len());
            }
        }
    }

    #[test]
    fn pair_examples() {
        assert_eq!(per_pair_solution(1, 2, 5, 2).unwrap().solution, Some((1, 2)));
        assert_eq!(per_pair_solution(2, 1, 5, 2).unwrap().solution, Some((2, 1)));
        assert!(per_pair_solution(2, 2, 5, 2).is_err());
        // (3, 2) in T(11, 3): 3x + 2y = 11 has (1, 4), (3, 1); only (3, 1) fits
        assert_eq!(per_pair_solution(3, 2, 11, 3).unwrap().solution, Some((3, 1)));
        assert_eq!(solutions_in_box(3, 2, 11, 3), vec![(3, 1)]);
        // (3, 1) in T(11, 3): 3x + y = 11 needs y = 11 - 3x <= 3, so x >= 3 → (3, 2)
        assert_eq!(per_pair_solution(3, 1, 11, 3).unwrap().solution, Some((3, 2)));
        // (2, 3): 2x + 3y = 11 → (1, 3), (4, 1); x = 4 > 3 leaves (1, 3)
        assert_eq!(per_pair_solution(2, 3, 11, 3).unwrap().solution, Some((1, 3)));
    }

    #[test]
    fn at_most_one_and_symmetry() {
        for p in [101u64, 211, 503, 1009, 1999] {
            for n in 1..=isqrt(p) {
                let t = TriangleRegion::new(p, n).unwrap();
                for (a, b) in t.iter() {
                    let all = solutions_in_box(a, b, p, n);
                    assert!(all.len() <= 1, "p = {p}, n = {n}, ({a}, {b}): {all:?}");
                    let sol = per_pair_solution(a, b, p, n).unwrap().solution;
                    assert_eq!(sol, all.first().copied());
                    assert!(t.contains(b, a));
                    let swapped = per_pair_solution(b, a, p, n).unwrap().solution;
                    assert_eq!(swapped, sol.map(|(x, y)| (y, x)));
                    if let Some((x, y)) = sol {
                        assert_eq!(gcd(x, y), 1);
                        assert!(t.contains(x, y));
                    }
                }
            }
        }
    }

    #[test]
    fn vanishes_below_half_sqrt() {
        for p in [101u64, 1009, 10_007] {
            let mut n = 1;
            while 2 * n * n < p {
                assert_eq!(count_fast(p, n).unwrap().value, 0);
                n += 1;
            }
        }
    }

    #[test]
    fn breakdown_small() {
        let t = breakdown_terms(5, 2).unwrap();
        assert_eq!(t.total, 2);
        assert_eq!(t.pairs, 2);
        assert!((t.main1 - t.main2 - t.frac_sum - t.total as f64).abs() < 1e-12);
        assert_eq!(frac_numerator(7, 1, 13, 3), 0);
        let t = breakdown_terms(1009, 25).unwrap();
        assert_eq!(t.total, count_fast(1009, 25).unwrap().value);
        assert_eq!(t.total, count_bruteforce(1009, 25).unwrap().value);
    }

    #[test]
    fn fractional_sum_small() {
        assert_eq!(fractional_sum_diagnostic(101, 7).unwrap(), 0.0);
        // T(5, 2) = {(2, 1), (1, 2)}: b = 1 term is -1/2; for (1, 2):
        // (2 - 5·1) mod 2 = 1 → 1/2 - 1/2 = 0
        assert_eq!(fractional_sum_diagnostic(5, 2).unwrap(), -0.5);
    }

    #[test]
    fn fractional_sum_matches_rational_oracle() {
        let (p, n) = (1009u64, 25u64);
        let t = TriangleRegion::new(p, n).unwrap();
        // exact: Σ (r/b - 1/2) summed over a common denominator lcm-free by doubling
        let mut num = num_rational::Ratio::<i128>::from_integer(0);
        for (a, b) in t.iter() {
            let frac = if b == 1 {
                num_rational::Ratio::from_integer(0)
            } else {
                let inv = (1..b).find(|v| a * v % b == 1).unwrap();
                let v = num_rational::Ratio::new(n as i128 - (p * inv) as i128, b as i128);
                v - v.floor()
            };
            num += frac - num_rational::Ratio::new(1, 2);
        }
        let expected = *num.numer() as f64 / *num.denom() as f64;
        let got = fractional_sum_diagnostic(p, n).unwrap();
        assert!((got - expected).abs() < 1e-9, "{got} vs {expected}");
    }

    #[test]
    fn small_solution_pairs_relation() {
        for p in [5u64, 7, 101, 1009] {
            let n = isqrt(p);
            assert_eq!(small_solution_pairs(p).unwrap(), count_fast(p, n).unwrap().value);
        }
        let five = small_solution_pairs(5).unwrap();
        assert_eq!(five, 2);
    }

    #[test]
    fn ac_cover_matches_marking() {
        for p in [3u64, 5, 7, 11, 13, 17, 97, 101, 211, 401] {
            for a in 0..p as i64 {
                for b in 0..p as i64 {
                    if a == 0 && b == 0 {
                        continue;
                    }
                    assert_eq!(
                        verify_ac_conclusion(a, b, p).unwrap(),
                        marking_oracle(a, b, p),
                        "p = {p}, (a, b) = ({a}, {b})"
                    );
                }
            }
        }
        // x + y only reaches 4·floor(√p) + 1 residues
        for p in [5u64, 7, 11, 13, 17] {
            assert!(verify_ac_conclusion(1, 1, p).unwrap(), "p = {p}");
        }
        assert!(!verify_ac_conclusion(1, 1, 1009).unwrap());
        assert!(verify_ac_conclusion(0, 0, 11).is_err());
        assert!(matches!(verify_ac_conclusion(1, 1, 100_003), Err(Error::Capacity { .. })));
    }

    #[test]
    fn ac_survey_records_failures() {
        // not every pair has the covering property; the survey only records this
        let p = 1009;
        let fails = (1..=31i64)
            .flat_map(|a| (1..=31i64).map(move |b| (a, b)))
            .filter(|&(a, b)| !verify_ac_conclusion(a, b, p).unwrap())
            .count();
        assert!(fails < 31 * 31);
    }
}
