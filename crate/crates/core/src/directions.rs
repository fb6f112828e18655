//! Direction censuses for `[n]^2` over `F_p` and over `Q`.
//!
//! Over `F_p` the directions live in `F_p ∪ {∞}`, which is encoded as the
//! integers `0..p` for finite slopes and [`infinity`]`(p) = p` for the
//! vertical direction.

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{is_prime, mobius_table};
use crate::bilinear::count_fast;
use crate::{Error, Result};

/// Encoding of the vertical direction in a census bitmap of size `p + 1`.
pub const fn infinity(p: u64) -> u64 {
    p
}

/// Exact direction counts for `[n]^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DirectionCensus {
    pub p: u64,
    pub n: u64,
    /// Distinct directions in `F_p ∪ {∞}`.
    pub count_fp: u64,
    pub count_q: u64,
    pub positive_q: u64,
    pub negative_q: u64,
    /// Slopes that are simultaneously `a/b` and `-c/d` in `F_p` with
    /// `a, b, c, d` in `[n-1]`.
    pub overlap_fp: u64,
}

fn ensure_odd_prime(p: u64) -> Result<()> {
    if p < 3 || !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(())
}

/// Presence bitmap over `F_p ∪ {∞}` shared across worker threads.
struct Bitmap(Vec<AtomicU64>);

impl Bitmap {
    fn new(bits: u64) -> Self {
        Bitmap((0..bits.div_ceil(64)).map(|_| AtomicU64::new(0)).collect())
    }

    #[inline]
    fn set(&self, i: u64) {
        self.0[(i / 64) as usize].fetch_or(1 << (i % 64), Ordering::Relaxed);
    }

    fn words(self) -> Vec<u64> {
        self.0.into_iter().map(AtomicU64::into_inner).collect()
    }
}

fn popcount(words: &[u64]) -> u64 {
    words.iter().map(|w| w.count_ones() as u64).sum()
}

/// Inverses of `1..=m` modulo `p`, with index 0 unused.
fn inverse_table(m: u64, p: u64) -> Vec<u64> {
    let mut inv = vec![0u64; m as usize + 1];
    if m >= 1 {
        inv[1] = 1;
    }
    for k in 2..=m as usize {
        // inv[k] = -(p / k) · inv[p mod k] mod p
        let q = p / k as u64;
        let r = (p % k as u64) as usize;
        inv[k] = (p - q % p) * inv[r] % p;
    }
    inv
}

/// Marks every slope `u / v` with `-(n-1) <= u, v <= n-1`, `(u, v) != (0, 0)`.
/// Since `u/v = (-u)/(-v)` only `v >= 0` is enumerated.
fn direction_bitmap(p: u64, n: u64) -> Vec<u64> {
    let bitmap = Bitmap::new(p + 1);
    if n >= 2 {
        bitmap.set(infinity(p));
        bitmap.set(0);
        let m = n - 1;
        let inv = inverse_table(m, p);
        (1..=m).into_par_iter().for_each(|v| {
            let iv = inv[v as usize];
            for u in 1..=m {
                let s = u % p * iv % p;
                bitmap.set(s);
                bitmap.set((p - s) % p);
            }
        });
    }
    bitmap.words()
}

/// `|D_n(F_p)|` by marking every slope in a bitmap of size `p + 1`.
pub fn directions_fp_bruteforce(p: u64, n: u64) -> Result<u64> {
    ensure_odd_prime(p)?;
    if n > p {
        return Err(Error::domain(format!("n = {n} exceeds p = {p}")));
    }
    Ok(popcount(&direction_bitmap(p, n)))
}

fn signed_direction_bitmaps(p: u64, n: u64) -> (Vec<u64>, Vec<u64>) {
    let words = (p + 1).div_ceil(64) as usize;
    let (mut pos, mut neg) = (vec![0u64; words], vec![0u64; words]);
    if n < 2 {
        return (pos, neg);
    }
    let m = n - 1;
    let inv = inverse_table(m, p);
    for b in 1..=m {
        for a in 1..=m {
            let s = a % p * inv[b as usize] % p;
            let t = (p - s) % p;
            pos[(s / 64) as usize] |= 1 << (s % 64);
            neg[(t / 64) as usize] |= 1 << (t % 64);
        }
    }
    (pos, neg)
}

/// Full census computed by enumeration: `count_fp` from the bitmap of all
/// slopes, `overlap_fp` from intersecting the positive and negative slope
/// sets directly.
pub fn census_bruteforce(p: u64, n: u64) -> Result<DirectionCensus> {
    let count_fp = directions_fp_bruteforce(p, n)?;
    let (pos, neg) = signed_direction_bitmaps(p, n);
    let overlap_fp = pos.iter().zip(&neg).map(|(a, b)| (a & b).count_ones() as u64).sum();
    let half = coprime_pairs(n.saturating_sub(1));
    Ok(DirectionCensus {
        p,
        n,
        count_fp,
        count_q: directions_q(n),
        positive_q: half,
        negative_q: half,
        overlap_fp,
    })
}

/// Number of distinct positive slopes `a/b` in `F_p` with `a, b` in `[n-1]`.
pub fn positive_directions_fp(p: u64, n: u64) -> Result<u64> {
    ensure_odd_prime(p)?;
    if n > p {
        return Err(Error::domain(format!("n = {n} exceeds p = {p}")));
    }
    Ok(popcount(&signed_direction_bitmaps(p, n).0))
}

/// `#{(a, b) in [m]^2 : gcd(a, b) = 1}` as `Σ_{d <= m} μ(d) floor(m/d)^2`.
pub fn coprime_pairs(m: u64) -> u64 {
    if m == 0 {
        return 0;
    }
    let mu = mobius_table(m as usize).expect("coprime pair limit within sieve range");
    let total: i128 = (1..=m)
        .map(|d| {
            let q = (m / d) as i128;
            mu[d as usize] as i128 * q * q
        })
        .sum();
    total as u64
}

/// `|D_n(Q)|`: positive and negative slopes plus `0` and `∞`.
pub fn directions_q(n: u64) -> u64 {
    if n < 2 {
        0
    } else {
        2 * coprime_pairs(n - 1) + 2
    }
}

/// Census from `|D_n(F_p)| = 2|D^+_n(Q)| + 2 - N(p, n-1)`. Differences of
/// points of `[n]^2` lie in `[n-1]`, so this needs only `n - 1 < √p`.
pub fn directions_fp_fast(p: u64, n: u64) -> Result<DirectionCensus> {
    ensure_odd_prime(p)?;
    if n < 2 {
        return Err(Error::domain("fast direction census needs n >= 2"));
    }
    if (n - 1).saturating_mul(n - 1) > p {
        return Err(Error::domain(format!(
            "n - 1 = {} is not below sqrt(p) for p = {p}; use the brute-force census",
            n - 1
        )));
    }
    let half = coprime_pairs(n - 1);
    let overlap = count_fast(p, n - 1)?.value;
    Ok(DirectionCensus {
        p,
        n,
        count_fp: 2 * half + 2 - overlap,
        count_q: 2 * half + 2,
        positive_q: half,
        negative_q: half,
        overlap_fp: overlap,
    })
}
