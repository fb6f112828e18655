//! Number-theoretic primitives shared by the rest of the crate.
//!
//! Bulk queries (μ, τ, φ for every `k` up to some bound) go through a
//! [`FactorSieve`]; isolated queries on large arguments use the sieve-free
//! trial-division path ([`factorize`], [`mobius_of`], ...).

use num_integer::Integer;

use crate::{Error, Result};

/// Largest limit accepted by [`build_sieve`]. The table stores one `u32` per
/// integer, so this is about 512 MiB.
pub const MAX_SIEVE_LIMIT: usize = 1 << 27;

/// Smallest-prime-factor table for `2..=limit`.
#[derive(Debug, Clone)]
pub struct FactorSieve {
    limit: usize,
    spf: Vec<u32>,
    primes: Vec<u32>,
}

/// Builds the smallest-prime-factor table with a linear sieve.
pub fn build_sieve(limit: usize) -> Result<FactorSieve> {
    if limit < 2 {
        return Err(Error::domain(format!("sieve limit must be at least 2, got {limit}")));
    }
    if limit > MAX_SIEVE_LIMIT {
        return Err(Error::Capacity {
            what: "sieve limit",
            value: limit as u64,
            limit: MAX_SIEVE_LIMIT as u64,
        });
    }
    let mut spf = vec![0u32; limit + 1];
    let mut primes = Vec::new();
    for i in 2..=limit {
        if spf[i] == 0 {
            spf[i] = i as u32;
            primes.push(i as u32);
        }
        let si = spf[i];
        for &q in &primes {
            let m = i * q as usize;
            if q > si || m > limit {
                break;
            }
            spf[m] = q;
        }
    }
    Ok(FactorSieve { limit, spf, primes })
}

impl FactorSieve {
    pub fn limit(&self) -> usize {
        self.limit
    }

    /// Smallest prime factor of `k` (`None` for 0 and 1, or beyond the limit).
    pub fn spf(&self, k: usize) -> Option<u32> {
        match self.spf.get(k) {
            Some(&0) | None => None,
            Some(&q) => Some(q),
        }
    }

    pub fn primes(&self) -> &[u32] {
        &self.primes
    }

    fn check(&self, k: u64) -> Result<usize> {
        if k == 0 {
            return Err(Error::domain("argument must be positive"));
        }
        if k > self.limit as u64 {
            return Err(Error::Capacity {
                what: "sieve query",
                value: k,
                limit: self.limit as u64,
            });
        }
        Ok(k as usize)
    }

    /// Prime factorisation of `k` as `(prime, exponent)` pairs, ascending.
    pub fn factorize(&self, k: u64) -> Result<Vec<(u64, u32)>> {
        let mut k = self.check(k)?;
        let mut out: Vec<(u64, u32)> = Vec::new();
        while k > 1 {
            let q = self.spf[k] as usize;
            let mut e = 0;
            while k % q == 0 {
                k /= q;
                e += 1;
            }
            out.push((q as u64, e));
        }
        Ok(out)
    }

    pub fn mobius(&self, k: u64) -> Result<i8> {
        Ok(mobius_from(&self.factorize(k)?))
    }

    pub fn divisor_count(&self, k: u64) -> Result<u64> {
        Ok(divisor_count_from(&self.factorize(k)?))
    }

    pub fn euler_phi(&self, k: u64) -> Result<u64> {
        Ok(euler_phi_from(k, &self.factorize(k)?))
    }

    /// `μ(k)` for every `0 <= k <= limit` (index 0 holds 0).
    pub fn mobius_table(&self) -> Vec<i8> {
        let mut mu = vec![0i8; self.limit + 1];
        mu[1] = 1;
        for k in 2..=self.limit {
            let q = self.spf[k] as usize;
            let r = k / q;
            mu[k] = if r.is_multiple_of(q) { 0 } else { -mu[r] };
        }
        mu
    }
}

/// `μ(k)` for `0 <= k <= limit`, built from a fresh sieve. Small limits
/// (0 or 1) are handled without sieving.
pub fn mobius_table(limit: usize) -> Result<Vec<i8>> {
    if limit < 2 {
        let mut mu = vec![0i8; limit + 1];
        if limit == 1 {
            mu[1] = 1;
        }
        return Ok(mu);
    }
    Ok(build_sieve(limit)?.mobius_table())
}

fn mobius_from(factors: &[(u64, u32)]) -> i8 {
    if factors.iter().any(|&(_, e)| e > 1) {
        0
    } else if factors.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn divisor_count_from(factors: &[(u64, u32)]) -> u64 {
    factors.iter().map(|&(_, e)| e as u64 + 1).product()
}

fn euler_phi_from(k: u64, factors: &[(u64, u32)]) -> u64 {
    factors.iter().fold(k, |acc, &(q, _)| acc / q * (q - 1))
}

/// Trial-division factorisation; fine for isolated inputs up to ~10^12.
pub fn factorize(mut k: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut q = 2u64;
    while q * q <= k {
        if k.is_multiple_of(q) {
            let mut e = 0;
            while k.is_multiple_of(q) {
                k /= q;
                e += 1;
            }
            out.push((q, e));
        }
        q += if q == 2 { 1 } else { 2 };
    }
    if k > 1 {
        out.push((k, 1));
    }
    out
}

pub fn mobius_of(k: u64) -> i8 {
    mobius_from(&factorize(k))
}

pub fn divisor_count_of(k: u64) -> u64 {
    divisor_count_from(&factorize(k))
}

pub fn euler_phi_of(k: u64) -> u64 {
    euler_phi_from(k, &factorize(k))
}

/// All positive divisors of `k`, ascending.
pub fn divisors_of(k: u64) -> Vec<u64> {
    let mut divs = vec![1u64];
    for (q, e) in factorize(k) {
        let len = divs.len();
        let mut pw = 1;
        for _ in 0..e {
            pw *= q;
            for i in 0..len {
                divs.push(divs[i] * pw);
            }
        }
    }
    divs.sort_unstable();
    divs
}

/// A residue `value` modulo `modulus`, always reduced into `[0, modulus)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ResidueClass {
    value: u64,
    modulus: u64,
}

impl ResidueClass {
    pub fn new(value: i64, modulus: u64) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::domain(format!("modulus must be at least 2, got {modulus}")));
        }
        let value = (value as i128).rem_euclid(modulus as i128) as u64;
        Ok(ResidueClass { value, modulus })
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }
}

/// Inverse of `x` modulo `m` via the extended Euclidean algorithm; the
/// representative lies in `[1, m-1]`.
pub fn mod_inverse(x: i64, m: u64) -> Result<ResidueClass> {
    if m < 2 {
        return Err(Error::domain(format!("modulus must be at least 2, got {m}")));
    }
    let xr = (x as i128).rem_euclid(m as i128);
    let egcd = xr.extended_gcd(&(m as i128));
    if egcd.gcd != 1 {
        return Err(Error::NonInvertible { x, modulus: m });
    }
    ResidueClass::new(egcd.x.rem_euclid(m as i128) as i64, m)
}

/// Inverse of `x` modulo `m` as a bare integer, for hot loops where `x` and
/// `m` are known coprime and `m >= 2`.
#[inline]
pub(crate) fn inverse_unchecked(x: u64, m: u64) -> u64 {
    let (mut r0, mut r1) = (m as i64, (x % m) as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1, "{x} not invertible mod {m}");
    t0.rem_euclid(m as i64) as u64
}

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin; the first twelve primes as witnesses are
/// sufficient for every `k < 2^64`.
pub fn is_prime(k: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if k < 2 {
        return false;
    }
    for &w in &WITNESSES {
        if k.is_multiple_of(w) {
            return k == w;
        }
    }
    let s = (k - 1).trailing_zeros();
    let d = (k - 1) >> s;
    'witness: for &w in &WITNESSES {
        let mut x = pow_mod(w, d, k);
        if x == 1 || x == k - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, k);
            if x == k - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Smallest prime `>= k`. Panics if no such prime fits in a `u64`.
pub fn next_prime_at_least(k: u64) -> u64 {
    let mut c = k.max(2);
    while !is_prime(c) {
        c = c.checked_add(1).expect("no prime >= k fits in u64");
    }
    c
}

/// `floor(sqrt(k))`, exact for every `u64`.
pub fn isqrt(k: u64) -> u64 {
    let mut r = (k as f64).sqrt() as u64;
    while r.checked_mul(r).is_none_or(|sq| sq > k) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|sq| sq <= k) {
        r += 1;
    }
    r
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_spf(k: usize) -> u32 {
        (2..=k).find(|d| k.is_multiple_of(*d)).unwrap() as u32
    }

    fn brute_is_prime(k: u64) -> bool {
        k >= 2 && (2..).take_while(|d| d * d <= k).all(|d| !k.is_multiple_of(d))
    }

    #[test]
    fn sieve_small_table() {
        let s = build_sieve(10).unwrap();
        let want = [2, 3, 2, 5, 2, 7, 2, 3, 2];
        for (k, &w) in (2..=10).zip(want.iter()) {
            assert_eq!(s.spf(k), Some(w), "spf[{k}]");
        }
        assert_eq!(s.spf(0), None);
        assert_eq!(s.spf(1), None);
        assert_eq!(build_sieve(2).unwrap().spf(2), Some(2));
    }

    #[test]
    fn sieve_matches_trial_division() {
        let s = build_sieve(100).unwrap();
        assert_eq!(s.spf(91), Some(7));
        for k in 2..=100 {
            assert_eq!(s.spf(k), Some(trial_spf(k)));
        }
    }

    #[test]
    fn sieve_limits() {
        assert!(matches!(build_sieve(1), Err(Error::Domain(_))));
        assert!(matches!(build_sieve(MAX_SIEVE_LIMIT + 1), Err(Error::Capacity { .. })));
        let s = build_sieve(10).unwrap();
        assert!(matches!(s.mobius(11), Err(Error::Capacity { .. })));
        assert!(matches!(s.euler_phi(0), Err(Error::Domain(_))));
    }

    #[test]
    fn mobius_examples() {
        let s = build_sieve(100).unwrap();
        assert_eq!(s.mobius(1).unwrap(), 1);
        assert_eq!(s.mobius(12).unwrap(), 0);
        assert_eq!(s.mobius(30).unwrap(), -1);
        assert_eq!(mobius_of(30), -1);
    }

    #[test]
    fn tau_phi_examples() {
        let s = build_sieve(100).unwrap();
        assert_eq!(s.divisor_count(1).unwrap(), 1);
        assert_eq!(s.euler_phi(1).unwrap(), 1);
        assert_eq!(s.divisor_count(12).unwrap(), 6);
        assert_eq!(s.euler_phi(10).unwrap(), 4);
    }

    #[test]
    fn mobius_divisor_sum_vanishes() {
        let s = build_sieve(10_000).unwrap();
        let mu = s.mobius_table();
        let mut sums = vec![0i64; 10_001];
        for (d, &v) in mu.iter().enumerate().skip(1) {
            for m in (d..=10_000).step_by(d) {
                sums[m] += v as i64;
            }
        }
        for k in 1..=10_000 {
            assert_eq!(sums[k], (k == 1) as i64, "k = {k}");
            assert_eq!(mu[k], s.mobius(k as u64).unwrap());
        }
    }

    #[test]
    fn tau_phi_match_enumeration() {
        let s = build_sieve(10_000).unwrap();
        for k in 1..=10_000u64 {
            let tau = (1..=k).filter(|d| k % d == 0).count() as u64;
            let phi = (1..=k).filter(|&a| gcd(a, k) == 1).count() as u64;
            assert_eq!(s.divisor_count(k).unwrap(), tau, "tau({k})");
            assert_eq!(s.euler_phi(k).unwrap(), phi, "phi({k})");
            if k % 97 == 0 {
                assert_eq!(divisor_count_of(k), tau);
                assert_eq!(euler_phi_of(k), phi);
                assert_eq!(divisors_of(k).len() as u64, tau);
            }
        }
    }

    #[test]
    fn mobius_square_sum_approaches_six_over_pi_squared() {
        let mu = mobius_table(10_000).unwrap();
        let target = 6.0 / std::f64::consts::PI.powi(2);
        for x in [100usize, 1_000, 10_000] {
            let s: f64 = (1..=x).map(|d| mu[d] as f64 / (d * d) as f64).sum();
            assert!((s - target).abs() <= 2.0 / x as f64, "x = {x}: {s}");
        }
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(mod_inverse(1, 7).unwrap().value(), 1);
        let want = (1..7).find(|v| 3 * v % 7 == 1).unwrap();
        assert_eq!(mod_inverse(3, 7).unwrap().value(), want);
        assert_eq!(want, 5);
        assert_eq!(mod_inverse(2, 4), Err(Error::NonInvertible { x: 2, modulus: 4 }));
        assert_eq!(mod_inverse(-3, 7).unwrap().value(), 2);
        assert!(matches!(mod_inverse(1, 1), Err(Error::Domain(_))));
    }

    #[test]
    fn inverses_are_inverses() {
        for m in 2..=1000u64 {
            for x in 2..=1000u64 {
                if gcd(x, m) != 1 {
                    continue;
                }
                let v = mod_inverse(x as i64, m).unwrap().value();
                assert!((1..m).contains(&v));
                assert_eq!(x * v % m, 1 % m);
                assert_eq!(inverse_unchecked(x, m), v);
            }
        }
    }

    #[test]
    fn primality() {
        assert!(is_prime(2));
        assert!(!is_prime(1));
        assert!(!is_prime(0));
        assert!(is_prime(1_000_003));
        assert!(brute_is_prime(1_000_003));
        assert_eq!(next_prime_at_least(1_000_000), 1_000_003);
        for k in 0..20_000u64 {
            assert_eq!(is_prime(k), brute_is_prime(k), "k = {k}");
        }
        // strong pseudoprime to bases 2..=37 would be > 3.3e24; check known hard cases
        assert!(!is_prime(3_215_031_751));
        assert!(!is_prime(341_550_071_728_321));
        assert!(is_prime(18_446_744_073_709_551_557));
        assert!(!is_prime(u64::MAX));
    }

    #[test]
    fn integer_sqrt() {
        for k in 0..10_000u64 {
            let r = isqrt(k);
            assert!(r * r <= k && (r + 1) * (r + 1) > k);
        }
        assert_eq!(isqrt(u64::MAX), u32::MAX as u64);
    }
}
