//! Equidistribution of `p·inv_b(a) / b mod 1` over reduced residues `a`.
//!
//! Sequences are stored as integer numerators over one common denominator,
//! so discrepancies and fractional-part identities are evaluated exactly.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_rational::Ratio;
use rand_xoshiro::rand_core::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{divisor_count_of, divisors_of, gcd, inverse_unchecked, is_prime, isqrt, mobius_of};
use crate::{Error, Result};

pub type Rational = Ratio<i128>;

/// Where an inverse sequence came from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Provenance {
    pub b: u64,
    pub p: u64,
    pub x: f64,
}

/// Points `numerators[i] / denominator` in `[0, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FracSequence {
    numerators: Vec<u64>,
    denominator: u64,
    provenance: Option<Provenance>,
}

impl FracSequence {
    pub fn new(numerators: Vec<u64>, denominator: u64) -> Result<Self> {
        if denominator == 0 {
            return Err(Error::domain("denominator must be positive"));
        }
        if let Some(&bad) = numerators.iter().find(|&&k| k >= denominator) {
            return Err(Error::domain(format!("point {bad}/{denominator} is not in [0, 1)")));
        }
        Ok(FracSequence { numerators, denominator, provenance: None })
    }

    pub fn len(&self) -> usize {
        self.numerators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.numerators.is_empty()
    }

    pub fn numerators(&self) -> &[u64] {
        &self.numerators
    }

    pub fn denominator(&self) -> u64 {
        self.denominator
    }

    pub fn provenance(&self) -> Option<Provenance> {
        self.provenance
    }

    pub fn points(&self) -> Vec<f64> {
        let d = self.denominator as f64;
        self.numerators.iter().map(|&k| k as f64 / d).collect()
    }
}

/// `{(p·inv_b(a) mod b) / b : 1 <= a <= X, gcd(a, b) = 1}` in order of `a`.
pub fn inverse_sequence(b: u64, p: u64, x: f64) -> Result<FracSequence> {
    if b < 2 {
        return Err(Error::domain("modulus b must be at least 2"));
    }
    if gcd(p, b) != 1 {
        return Err(Error::domain(format!("gcd(p, b) = gcd({p}, {b}) is not 1")));
    }
    if !(x > 0.0 && x <= b as f64) {
        return Err(Error::domain(format!("X = {x} must lie in (0, b]")));
    }
    let top = x.floor() as u64;
    let pb = p % b;
    let numerators = (1..=top)
        .filter(|&a| gcd(a, b) == 1)
        .map(|a| pb * inverse_unchecked(a, b) % b)
        .collect();
    Ok(FracSequence {
        numerators,
        denominator: b,
        provenance: Some(Provenance { b, p, x }),
    })
}

/// `sup_{0<=α<=β<=1} |#{u_i in [α, β]} - N(β-α)|` over closed intervals.
///
/// With `F(e) = #{u <= e} - Ne` and `G(e) = #{u < e} - Ne` on the endpoint set
/// `{0, 1} ∪ points`, the excess is `max_{α<=β} F(β) - G(α)` and the deficit
/// (intervals shrinking onto open gaps) is `max_{α<β} F(α) - G(β)`. Both are
/// single sweeps after sorting, carried out in integers scaled by the
/// denominator.
pub fn discrepancy_exact(seq: &FracSequence) -> Result<f64> {
    if seq.is_empty() {
        return Err(Error::domain("discrepancy of an empty sequence"));
    }
    let den = seq.denominator as i128;
    let n = seq.len() as i128;
    let mut sorted = seq.numerators.clone();
    sorted.sort_unstable();

    // endpoints (value, #{u < e}, #{u <= e}) ascending, including 0 and 1
    let mut ends: Vec<(i128, i128, i128)> = Vec::with_capacity(sorted.len() + 2);
    let mut i = 0;
    if sorted[0] != 0 {
        ends.push((0, 0, 0));
    }
    while i < sorted.len() {
        let v = sorted[i];
        let mut j = i;
        while j < sorted.len() && sorted[j] == v {
            j += 1;
        }
        ends.push((v as i128, i as i128, j as i128));
        i = j;
    }
    ends.push((den, n, n));

    let f = |e: &(i128, i128, i128)| e.2 * den - n * e.0;
    let g = |e: &(i128, i128, i128)| e.1 * den - n * e.0;
    let mut best = i128::MIN;
    let mut min_g = i128::MAX;
    let mut max_f_before = i128::MIN;
    for e in &ends {
        min_g = min_g.min(g(e));
        best = best.max(f(e) - min_g);
        if max_f_before != i128::MIN {
            best = best.max(max_f_before - g(e));
        }
        max_f_before = max_f_before.max(f(e));
    }
    Ok(best as f64 / den as f64)
}

/// `Σ_i e(t·u_i)` evaluated from the exact residues `t·k mod den`.
fn exponential_sum(seq: &FracSequence, t: u64) -> Complex64 {
    let den = seq.denominator;
    let tr = t % den;
    seq.numerators
        .iter()
        .map(|&k| {
            let r = (tr as u128 * k as u128 % den as u128) as f64;
            Complex64::from_polar(1.0, 2.0 * PI * r / den as f64)
        })
        .sum()
}

/// `N/(K+1) + 3 Σ_{t<=K} |Σ_i e(t u_i)| / t`.
pub fn erdos_turan_bound(seq: &FracSequence, k: u64) -> Result<f64> {
    if k == 0 {
        return Err(Error::domain("K must be positive"));
    }
    let tail: f64 = (1..=k).map(|t| exponential_sum(seq, t).norm() / t as f64).sum();
    Ok(seq.len() as f64 / (k + 1) as f64 + 3.0 * tail)
}

/// An incomplete Kloosterman sum and its size relative to
/// `√(m·gcd(t, m))·τ(m)·log m`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KloostermanSample {
    pub m: u64,
    pub t: i64,
    pub terms: u64,
    pub magnitude: f64,
    pub normalizer: f64,
    pub ratio: f64,
}

/// `|Σ_{y<k<=z, gcd(k,m)=1} e(t·inv_m(k)/m)|` by direct summation.
pub fn kloosterman_incomplete(m: u64, t: i64, y: f64, z: f64) -> Result<KloostermanSample> {
    if m < 2 {
        return Err(Error::domain("modulus must be at least 2"));
    }
    if !(z - y > 0.0 && z - y <= m as f64) {
        return Err(Error::domain(format!("interval ({y}, {z}] must have length in (0, m]")));
    }
    let tr = t.rem_euclid(m as i64) as u64;
    let lo = y.floor() as i64 + 1;
    let hi = z.floor() as i64;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut terms = 0;
    for k in lo..=hi {
        let kr = k.rem_euclid(m as i64) as u64;
        if gcd(kr, m) != 1 {
            continue;
        }
        let phase = (tr as u128 * inverse_unchecked(kr, m) as u128 % m as u128) as f64;
        sum += Complex64::from_polar(1.0, 2.0 * PI * phase / m as f64);
        terms += 1;
    }
    let g = if tr == 0 { m } else { gcd(tr, m) };
    let normalizer = ((m * g) as f64).sqrt() * divisor_count_of(m) as f64 * (m as f64).ln();
    let magnitude = sum.norm();
    Ok(KloostermanSample { m, t, terms, magnitude, normalizer, ratio: magnitude / normalizer })
}

fn frac(x: Rational) -> Rational {
    x - x.floor()
}

/// Checks `Σ_{k=1}^q ({α - k/q} - 1/2) = {αq} - 1/2` exactly.
pub fn bernoulli_identity_check(alpha: Rational, q: u64) -> bool {
    if q == 0 {
        return false;
    }
    let half = Rational::new(1, 2);
    let qi = q as i128;
    let lhs: Rational = (1..=qi).map(|k| frac(alpha - Rational::new(k, qi)) - half).sum();
    lhs == frac(alpha * Rational::from_integer(qi)) - half
}

/// `Σ_{1<=a<=b, gcd(a,b)=1} ({α - a/b} - 1/2)`, computed directly and via
/// `Σ_{d|b} μ(d)({αb/d} - 1/2)`; the two must agree exactly.
pub fn reduced_residue_fracsum(alpha: Rational, b: u64) -> Result<Rational> {
    if b == 0 {
        return Err(Error::domain("b must be positive"));
    }
    let half = Rational::new(1, 2);
    let bi = b as i128;
    let direct: Rational = (1..=b)
        .filter(|&a| gcd(a, b) == 1)
        .map(|a| frac(alpha - Rational::new(a as i128, bi)) - half)
        .sum();
    let mobius: Rational = divisors_of(b)
        .into_iter()
        .map(|d| {
            let mu = mobius_of(d) as i128;
            Rational::from_integer(mu) * (frac(alpha * Rational::new(bi, d as i128)) - half)
        })
        .sum();
    if direct != mobius {
        return Err(Error::Consistency(format!(
            "reduced-residue sum for b = {b}, α = {alpha}: direct {direct} != Möbius form {mobius}"
        )));
    }
    Ok(direct)
}

/// Discrepancy of the inverse sequence truncated at one `X`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiscrepancyRow {
    pub x: f64,
    pub len: u64,
    pub discrepancy: f64,
    /// Smallest Erdős–Turán bound over `K in {1, ceil(√N), N}`.
    pub et_bound: f64,
    /// `discrepancy / (τ(b)^{3/2} p^{1/4} log² p)`
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquidistReport {
    pub p: u64,
    pub b: u64,
    pub tau_b: u64,
    pub normalizer: f64,
    pub rows: Vec<DiscrepancyRow>,
    /// Erdős–Turán bounds for the full sequence (`X = b`), as `(K, bound)`.
    pub et_bounds: Vec<(u64, f64)>,
    /// `(t, |Σ_{a in R_b(b)} e(t·p·inv_b(a)/b)|)`.
    pub kloosterman: Vec<(u64, f64)>,
    pub max_ratio: f64,
}

/// Seed used when none is supplied.
pub const DEFAULT_SEED: u64 = 0x00D1_F5EE_D000_2019;

/// `count` moduli drawn from `[2, floor(√p)]` with SplitMix64 seeded by
/// `seed`: `b = 2 + next_u64() mod (floor(√p) - 1)`. Sorted, duplicates
/// removed.
pub fn sample_moduli(p: u64, count: usize, seed: u64) -> Result<Vec<u64>> {
    let top = isqrt(p);
    if top < 2 {
        return Err(Error::domain(format!("no modulus b in [2, sqrt(p)] for p = {p}")));
    }
    let span = top - 1;
    let mut rng = SplitMix64::seed_from_u64(seed);
    let mut out: Vec<u64> = (0..count).map(|_| 2 + rng.next_u64() % span).collect();
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Truncation points used by [`estfrac_survey`], as fractions of `b`.
pub const SURVEY_FRACTIONS: [f64; 3] = [0.25, 0.5, 1.0];

/// Number of `t` values recorded in each report's Kloosterman list.
pub const SURVEY_KLOOSTERMAN_TERMS: u64 = 8;

fn best_et_bound(seq: &FracSequence) -> Result<f64> {
    let n = seq.len() as u64;
    let mut best = f64::INFINITY;
    for k in [1, (n as f64).sqrt().ceil() as u64, n] {
        best = best.min(erdos_turan_bound(seq, k.max(1))?);
    }
    Ok(best)
}

fn survey_one(p: u64, b: u64) -> Result<EquidistReport> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if b < 2 || b >= p {
        return Err(Error::domain(format!("b = {b} must satisfy 2 <= b < p, p = {p}")));
    }
    let tau_b = divisor_count_of(b);
    let lp = (p as f64).ln();
    let normalizer = (tau_b as f64).powf(1.5) * (p as f64).powf(0.25) * lp * lp;
    let mut rows = Vec::with_capacity(SURVEY_FRACTIONS.len());
    for frac in SURVEY_FRACTIONS {
        let x = b as f64 * frac;
        let seq = inverse_sequence(b, p, x)?;
        let (discrepancy, et_bound) = if seq.is_empty() {
            (0.0, 0.0)
        } else {
            (discrepancy_exact(&seq)?, best_et_bound(&seq)?)
        };
        rows.push(DiscrepancyRow {
            x,
            len: seq.len() as u64,
            discrepancy,
            et_bound,
            ratio: discrepancy / normalizer,
        });
    }
    let full = inverse_sequence(b, p, b as f64)?;
    let mut ks = vec![1, b];
    let mid = (b as f64).sqrt().ceil() as u64;
    if mid > 1 && mid < b {
        ks.insert(1, mid);
    }
    let et_bounds = ks
        .into_iter()
        .map(|k| erdos_turan_bound(&full, k).map(|v| (k, v)))
        .collect::<Result<Vec<_>>>()?;
    let kloosterman = (1..=SURVEY_KLOOSTERMAN_TERMS.min(b))
        .map(|t| (t, exponential_sum(&full, t).norm()))
        .collect();
    let max_ratio = rows.iter().map(|r| r.ratio).fold(0.0, f64::max);
    Ok(EquidistReport { p, b, tau_b, normalizer, rows, et_bounds, kloosterman, max_ratio })
}

/// Discrepancy survey of `D_b(X)` for `X in {b/4, b/2, b}` over each `b`.
/// The normalizer is the one of the `b < √p` bound; larger `b` are accepted
/// and reported the same way.
pub fn estfrac_survey(p: u64, b_samples: &[u64]) -> Result<Vec<EquidistReport>> {
    b_samples.par_iter().map(|&b| survey_one(p, b)).collect()
}
