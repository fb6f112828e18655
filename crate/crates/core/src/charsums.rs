//! Counts of `uab ≡ cd (mod p)` over `[n]^4` and the even/odd split of the
//! fourth moment of short character sums.
//!
//! The combinatorial route gives the moments exactly:
//! `N_1 + N_{-1} = 2·even` and `N_1 - N_{-1} = 2·odd`, where `even` (`odd`)
//! is `(1/(p-1)) Σ |Σ_{m<=n} χ(m)|^4` over even (odd) characters. The
//! character-table oracle evaluates the same moments from explicit
//! characters for small `p`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{factorize, is_prime, pow_mod};
use crate::{Error, Result};

/// Largest modulus accepted by [`oracle_moments`].
pub const ORACLE_MAX_P: u64 = 2_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MomentReport {
    pub p: u64,
    pub n: u64,
    pub n1: u64,
    pub n_minus1: u64,
    pub even_moment: f64,
    pub odd_moment: f64,
}

fn check_instance(p: u64, n: u64) -> Result<()> {
    if p < 3 || !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n == 0 || n >= p {
        return Err(Error::domain(format!("n = {n} must lie in [1, p-1] for p = {p}")));
    }
    Ok(())
}

/// `h[r] = #{(a, b) in [n]^2 : ab ≡ r (mod p)}`.
fn product_histogram(p: u64, n: u64) -> Vec<u64> {
    (1..=n)
        .into_par_iter()
        .fold(
            || vec![0u64; p as usize],
            |mut h, a| {
                let mut r = 0u64;
                for _ in 1..=n {
                    r += a;
                    if r >= p {
                        r -= p;
                    }
                    h[r as usize] += 1;
                }
                h
            },
        )
        .reduce(
            || vec![0u64; p as usize],
            |mut x, y| {
                x.iter_mut().zip(y).for_each(|(s, v)| *s += v);
                x
            },
        )
}

fn correlate(h: &[u64], u: u64, p: u64) -> u64 {
    (1..p).map(|r| h[r as usize] * h[(u * r % p) as usize]).sum()
}

/// `N_u(p, n) = #{(a, b, c, d) in [n]^4 : uab ≡ cd (mod p)}`.
pub fn count_congruence(u: u64, p: u64, n: u64) -> Result<u64> {
    check_instance(p, n)?;
    if u.is_multiple_of(p) {
        return Err(Error::domain("u must be nonzero modulo p"));
    }
    Ok(correlate(&product_histogram(p, n), u % p, p))
}

/// Even and odd fourth moments from `N_1` and `N_{-1}`.
pub fn parity_moments(p: u64, n: u64) -> Result<MomentReport> {
    check_instance(p, n)?;
    let h = product_histogram(p, n);
    let n1 = correlate(&h, 1, p);
    let n_minus1 = correlate(&h, p - 1, p);
    Ok(MomentReport {
        p,
        n,
        n1,
        n_minus1,
        even_moment: (n1 + n_minus1) as f64 / 2.0,
        odd_moment: (n1 - n_minus1) as f64 / 2.0,
    })
}

/// Smallest primitive root modulo the odd prime `p`.
pub fn primitive_root(p: u64) -> u64 {
    let order = p - 1;
    let qs: Vec<u64> = factorize(order).into_iter().map(|(q, _)| q).collect();
    (2..p)
        .find(|&g| qs.iter().all(|&q| pow_mod(g, order / q, p) != 1))
        .unwrap_or(1)
}

/// Character sums `S_j = Σ_{m<=n} χ_j(m)` for `j = 0..p-1`, where
/// `χ_j(g^k) = e(jk/(p-1))` for the primitive root `g`, together with the
/// discrete-log table. `χ_j(-1) = (-1)^j` because `-1 = g^{(p-1)/2}`.
struct CharacterTable {
    sums: Vec<Complex64>,
    ind: Vec<u64>,
}

fn character_table(p: u64, n: u64) -> CharacterTable {
    let order = p - 1;
    let g = primitive_root(p);
    let mut ind = vec![0u64; p as usize];
    let mut x = 1u64;
    for k in 0..order {
        ind[x as usize] = k;
        x = x * g % p;
    }
    let sums = (0..order)
        .map(|j| {
            (1..=n)
                .map(|m| {
                    let phase = (j * ind[m as usize]) % order;
                    Complex64::from_polar(1.0, 2.0 * PI * phase as f64 / order as f64)
                })
                .sum()
        })
        .collect();
    CharacterTable { sums, ind }
}

fn ensure_oracle_scale(p: u64, n: u64) -> Result<()> {
    check_instance(p, n)?;
    if p > ORACLE_MAX_P {
        return Err(Error::Capacity { what: "character oracle modulus", value: p, limit: ORACLE_MAX_P });
    }
    Ok(())
}

/// Moments evaluated directly from the character table (`O(p·n)` complex
/// work). `n1` and `n_minus1` are the nearest integers to `even ± odd`.
pub fn oracle_moments(p: u64, n: u64) -> Result<MomentReport> {
    ensure_oracle_scale(p, n)?;
    let table = character_table(p, n);
    let scale = 1.0 / (p - 1) as f64;
    let (mut even, mut odd) = (0.0, 0.0);
    for (j, s) in table.sums.iter().enumerate() {
        let fourth = s.norm_sqr().powi(2);
        if j % 2 == 0 {
            even += fourth;
        } else {
            odd += fourth;
        }
    }
    let (even, odd) = (even * scale, odd * scale);
    Ok(MomentReport {
        p,
        n,
        n1: (even + odd).round() as u64,
        n_minus1: (even - odd).round().max(0.0) as u64,
        even_moment: even,
        odd_moment: odd,
    })
}

/// `(1/(p-1)) Σ_χ χ(u) |S_χ|^4` from the character table.
pub fn oracle_congruence(u: u64, p: u64, n: u64) -> Result<f64> {
    ensure_oracle_scale(p, n)?;
    if u.is_multiple_of(p) {
        return Err(Error::domain("u must be nonzero modulo p"));
    }
    let order = p - 1;
    let table = character_table(p, n);
    let iu = table.ind[(u % p) as usize];
    let total: Complex64 = table
        .sums
        .iter()
        .enumerate()
        .map(|(j, s)| {
            let phase = (j as u64 * iu) % order;
            Complex64::from_polar(1.0, 2.0 * PI * phase as f64 / order as f64) * s.norm_sqr().powi(2)
        })
        .sum();
    Ok(total.re / order as f64)
}

/// Reference main terms `(12/π² n² log n, 6/π² n² log n)` for `N_1` and for
/// each parity moment when `n < √p`.
pub fn acz_reference(p: u64, n: u64) -> Result<(f64, f64)> {
    if n == 0 || n.saturating_mul(n) > p {
        return Err(Error::domain(format!("n = {n} must satisfy 1 <= n < sqrt(p), p = {p}")));
    }
    let nf = n as f64;
    let base = nf * nf * nf.ln() / (PI * PI);
    Ok((12.0 * base, 6.0 * base))
}
