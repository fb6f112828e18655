//! C ABI over `dirfp`.
//!
//! Every fallible function returns a [`DirfpStatus`] and writes its result
//! through an out-pointer, which is left untouched on failure. Sieves and
//! fractional-part sequences are opaque handles owned by the caller and
//! released with their `_free` function. Panics never cross the boundary;
//! they surface as `DIRFP_STATUS_PANIC`.

use std::ffi::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};

use dirfp::arith::{build_sieve, is_prime, mod_inverse, FactorSieve};
use dirfp::bilinear::{count_bruteforce, count_fast, verify_ac_conclusion};
use dirfp::charsums::parity_moments;
use dirfp::directions::{census_bruteforce, directions_fp_fast};
use dirfp::equidist::{discrepancy_exact, erdos_turan_bound, inverse_sequence, FracSequence};
use dirfp::special::{density, dilog, Lambda};
use dirfp::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DirfpStatus {
    Ok = 0,
    NullPointer = 1,
    NotPrime = 2,
    Domain = 3,
    Capacity = 4,
    NonInvertible = 5,
    Consistency = 6,
    Panic = 7,
}

impl From<&Error> for DirfpStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Capacity { .. } => DirfpStatus::Capacity,
            Error::NonInvertible { .. } => DirfpStatus::NonInvertible,
            Error::NotPrime(_) => DirfpStatus::NotPrime,
            Error::Domain(_) => DirfpStatus::Domain,
            Error::Consistency(_) => DirfpStatus::Consistency,
        }
    }
}

/// Counting method for solution counts and direction censuses.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DirfpMethod {
    /// Visible-point triangle; needs `n < √p` (`n - 1 < √p` for censuses).
    Fast = 0,
    /// Enumeration.
    Brute = 1,
}

/// Direction census of `[n]^2` in `F_p^2`.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DirfpCensus {
    pub p: u64,
    pub n: u64,
    pub count_fp: u64,
    pub count_q: u64,
    pub positive_q: u64,
    pub negative_q: u64,
    pub overlap_fp: u64,
}

/// `N_1`, `N_{-1}` and the even/odd fourth moments.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct DirfpMoments {
    pub p: u64,
    pub n: u64,
    pub n1: u64,
    pub n_minus1: u64,
    pub even_moment: f64,
    pub odd_moment: f64,
}

/// Opaque smallest-prime-factor sieve.
pub struct DirfpSieve(FactorSieve);

/// Opaque fractional-part sequence.
pub struct DirfpSequence(FracSequence);

fn guard<T>(out: *mut T, f: impl FnOnce() -> Result<T, Error>) -> DirfpStatus {
    if out.is_null() {
        return DirfpStatus::NullPointer;
    }
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(v)) => {
            // SAFETY: `out` is non-null and the caller promises it is writable.
            unsafe { out.write(v) };
            DirfpStatus::Ok
        }
        Ok(Err(e)) => DirfpStatus::from(&e),
        Err(_) => DirfpStatus::Panic,
    }
}

/// Static description of `status`; never NULL, never freed.
#[no_mangle]
pub extern "C" fn dirfp_status_message(status: DirfpStatus) -> *const c_char {
    let s: &'static std::ffi::CStr = match status {
        DirfpStatus::Ok => c"ok",
        DirfpStatus::NullPointer => c"null pointer argument",
        DirfpStatus::NotPrime => c"modulus is not prime",
        DirfpStatus::Domain => c"argument outside the domain of the operation",
        DirfpStatus::Capacity => c"argument exceeds the supported scale",
        DirfpStatus::NonInvertible => c"value is not invertible",
        DirfpStatus::Consistency => c"internal consistency check failed",
        DirfpStatus::Panic => c"internal error",
    };
    s.as_ptr()
}

/// Deterministic primality test for 64-bit integers.
#[no_mangle]
pub extern "C" fn dirfp_is_prime(k: u64) -> bool {
    is_prime(k)
}

/// Inverse of `x` modulo `m` in `[0, m)`.
///
/// # Safety
/// `out` must be NULL or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn dirfp_mod_inverse(x: i64, m: u64, out: *mut u64) -> DirfpStatus {
    guard(out, || mod_inverse(x, m).map(|r| r.value()))
}

/// Number of `(a, b, c, d)` in `[n]^4` with `ad + bc = p`.
///
/// # Safety
/// `out` must be NULL or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn dirfp_count_solutions(
    p: u64,
    n: u64,
    method: DirfpMethod,
    out: *mut u64,
) -> DirfpStatus {
    guard(out, || {
        let c = match method {
            DirfpMethod::Fast => count_fast(p, n)?,
            DirfpMethod::Brute => {
                if p < 3 || !is_prime(p) {
                    return Err(Error::NotPrime(p));
                }
                count_bruteforce(p, n)?
            }
        };
        Ok(c.value)
    })
}

/// Direction census of `[n]^2` over `F_p`.
///
/// # Safety
/// `out` must be NULL or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn dirfp_directions_census(
    p: u64,
    n: u64,
    method: DirfpMethod,
    out: *mut DirfpCensus,
) -> DirfpStatus {
    guard(out, || {
        let c = match method {
            DirfpMethod::Fast => directions_fp_fast(p, n)?,
            DirfpMethod::Brute => census_bruteforce(p, n)?,
        };
        Ok(DirfpCensus {
            p: c.p,
            n: c.n,
            count_fp: c.count_fp,
            count_q: c.count_q,
            positive_q: c.positive_q,
            negative_q: c.negative_q,
            overlap_fp: c.overlap_fp,
        })
    })
}

/// Limiting direction density `D(λ)` for `λ > 0`.
///
/// # Safety
/// `out` must be NULL or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn dirfp_density(lambda: f64, out: *mut f64) -> DirfpStatus {
    guard(out, || Lambda::new(lambda).map(density))
}

/// Dilogarithm `Li_2(x)` for `x` in `[0, 1]`.
///
/// # Safety
/// `out` must be NULL or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn dirfp_dilog(x: f64, out: *mut f64) -> DirfpStatus {
    guard(out, || dilog(x))
}

/// Even and odd fourth moments of character sums of length `n` mod `p`.
///
/// # Safety
/// `out` must be NULL or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn dirfp_parity_moments(p: u64, n: u64, out: *mut DirfpMoments) -> DirfpStatus {
    guard(out, || {
        let r = parity_moments(p, n)?;
        Ok(DirfpMoments {
            p: r.p,
            n: r.n,
            n1: r.n1,
            n_minus1: r.n_minus1,
            even_moment: r.even_moment,
            odd_moment: r.odd_moment,
        })
    })
}

/// Whether every `ax + by ≡ c (mod p)` has a nonzero solution with
/// `|x|, |y| <= √p`.
///
/// # Safety
/// `out` must be NULL or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn dirfp_verify_ac_conclusion(
    a: i64,
    b: i64,
    p: u64,
    out: *mut bool,
) -> DirfpStatus {
    guard(out, || verify_ac_conclusion(a, b, p))
}

/// Builds a sieve on `[0, limit]`.
///
/// # Safety
/// `out` must be NULL or valid for writes. The handle written to `*out` must
/// be released with [`dirfp_sieve_free`].
#[no_mangle]
pub unsafe extern "C" fn dirfp_sieve_new(limit: usize, out: *mut *mut DirfpSieve) -> DirfpStatus {
    guard(out, || build_sieve(limit).map(|s| Box::into_raw(Box::new(DirfpSieve(s)))))
}

/// # Safety
/// `sieve` must be NULL or a handle from [`dirfp_sieve_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dirfp_sieve_free(sieve: *mut DirfpSieve) {
    if !sieve.is_null() {
        drop(Box::from_raw(sieve));
    }
}

fn with_sieve<T>(
    sieve: *const DirfpSieve,
    out: *mut T,
    f: impl FnOnce(&FactorSieve) -> Result<T, Error>,
) -> DirfpStatus {
    if sieve.is_null() {
        return DirfpStatus::NullPointer;
    }
    // SAFETY: non-null handles come from `dirfp_sieve_new`.
    let s = unsafe { &(*sieve).0 };
    guard(out, || f(s))
}

/// Number of primes up to the sieve limit.
///
/// # Safety
/// `sieve` must be NULL or a live handle; `out` NULL or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn dirfp_sieve_prime_count(sieve: *const DirfpSieve, out: *mut usize) -> DirfpStatus {
    with_sieve(sieve, out, |s| Ok(s.primes().len()))
}

/// Möbius function `μ(k)` for `1 <= k <= limit`.
///
/// # Safety
/// `sieve` must be NULL or a live handle; `out` NULL or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn dirfp_sieve_mobius(sieve: *const DirfpSieve, k: u64, out: *mut i8) -> DirfpStatus {
    with_sieve(sieve, out, |s| s.mobius(k))
}

/// Number of divisors `τ(k)`.
///
/// # Safety
/// `sieve` must be NULL or a live handle; `out` NULL or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn dirfp_sieve_divisor_count(
    sieve: *const DirfpSieve,
    k: u64,
    out: *mut u64,
) -> DirfpStatus {
    with_sieve(sieve, out, |s| s.divisor_count(k))
}

/// Euler's totient `φ(k)`.
///
/// # Safety
/// `sieve` must be NULL or a live handle; `out` NULL or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn dirfp_sieve_euler_phi(sieve: *const DirfpSieve, k: u64, out: *mut u64) -> DirfpStatus {
    with_sieve(sieve, out, |s| s.euler_phi(k))
}

/// The sequence `p·inv_b(a)/b mod 1` over `a <= x` coprime to `b`.
///
/// # Safety
/// `out` must be NULL or valid for writes. The handle written to `*out` must
/// be released with [`dirfp_sequence_free`].
#[no_mangle]
pub unsafe extern "C" fn dirfp_sequence_inverse(
    b: u64,
    p: u64,
    x: f64,
    out: *mut *mut DirfpSequence,
) -> DirfpStatus {
    guard(out, || inverse_sequence(b, p, x).map(|s| Box::into_raw(Box::new(DirfpSequence(s)))))
}

/// The sequence `numerators[i] / denominator`; numerators must be below the
/// denominator.
///
/// # Safety
/// `numerators` must point to `len` readable values (or be NULL when `len`
/// is 0); `out` must be NULL or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn dirfp_sequence_new(
    numerators: *const u64,
    len: usize,
    denominator: u64,
    out: *mut *mut DirfpSequence,
) -> DirfpStatus {
    if numerators.is_null() && len > 0 {
        return DirfpStatus::NullPointer;
    }
    let nums = if len == 0 { Vec::new() } else { std::slice::from_raw_parts(numerators, len).to_vec() };
    guard(out, || {
        FracSequence::new(nums, denominator).map(|s| Box::into_raw(Box::new(DirfpSequence(s))))
    })
}

/// # Safety
/// `seq` must be NULL or a handle from a `dirfp_sequence_*` constructor not
/// yet freed.
#[no_mangle]
pub unsafe extern "C" fn dirfp_sequence_free(seq: *mut DirfpSequence) {
    if !seq.is_null() {
        drop(Box::from_raw(seq));
    }
}

fn with_sequence<T>(
    seq: *const DirfpSequence,
    out: *mut T,
    f: impl FnOnce(&FracSequence) -> Result<T, Error>,
) -> DirfpStatus {
    if seq.is_null() {
        return DirfpStatus::NullPointer;
    }
    // SAFETY: non-null handles come from a sequence constructor.
    let s = unsafe { &(*seq).0 };
    guard(out, || f(s))
}

/// Number of points.
///
/// # Safety
/// `seq` must be NULL or a live handle; `out` NULL or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn dirfp_sequence_len(seq: *const DirfpSequence, out: *mut usize) -> DirfpStatus {
    with_sequence(seq, out, |s| Ok(s.len()))
}

/// Exact closed-interval discrepancy.
///
/// # Safety
/// `seq` must be NULL or a live handle; `out` NULL or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn dirfp_sequence_discrepancy(seq: *const DirfpSequence, out: *mut f64) -> DirfpStatus {
    with_sequence(seq, out, discrepancy_exact)
}

/// Erdős–Turán upper bound with `k` frequencies.
///
/// # Safety
/// `seq` must be NULL or a live handle; `out` NULL or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn dirfp_sequence_erdos_turan(
    seq: *const DirfpSequence,
    k: u64,
    out: *mut f64,
) -> DirfpStatus {
    with_sequence(seq, out, |s| erdos_turan_bound(s, k))
}
