#ifndef DIRFP_H
#define DIRFP_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum DirfpStatus {
  DIRFP_STATUS_OK = 0,
  DIRFP_STATUS_NULL_POINTER = 1,
  DIRFP_STATUS_NOT_PRIME = 2,
  DIRFP_STATUS_DOMAIN = 3,
  DIRFP_STATUS_CAPACITY = 4,
  DIRFP_STATUS_NON_INVERTIBLE = 5,
  DIRFP_STATUS_CONSISTENCY = 6,
  DIRFP_STATUS_PANIC = 7,
} DirfpStatus;

/**
 * Counting method for solution counts and direction censuses.
 */
typedef enum DirfpMethod {
  /**
   * Visible-point triangle; needs `n < √p` (`n - 1 < √p` for censuses).
   */
  DIRFP_METHOD_FAST = 0,
  /**
   * Enumeration.
   */
  DIRFP_METHOD_BRUTE = 1,
} DirfpMethod;

/**
 * Opaque fractional-part sequence.
 */
typedef struct DirfpSequence DirfpSequence;

/**
 * Opaque smallest-prime-factor sieve.
 */
typedef struct DirfpSieve DirfpSieve;

/**
 * Direction census of `[n]^2` in `F_p^2`.
 */
typedef struct DirfpCensus {
  uint64_t p;
  uint64_t n;
  uint64_t count_fp;
  uint64_t count_q;
  uint64_t positive_q;
  uint64_t negative_q;
  uint64_t overlap_fp;
} DirfpCensus;

/**
 * `N_1`, `N_{-1}` and the even/odd fourth moments.
 */
typedef struct DirfpMoments {
  uint64_t p;
  uint64_t n;
  uint64_t n1;
  uint64_t n_minus1;
  double even_moment;
  double odd_moment;
} DirfpMoments;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static description of `status`; never NULL, never freed.
 */
const char *dirfp_status_message(enum DirfpStatus status);

/**
 * Deterministic primality test for 64-bit integers.
 */
bool dirfp_is_prime(uint64_t k);

/**
 * Inverse of `x` modulo `m` in `[0, m)`.
 *
 * # Safety
 * `out` must be NULL or valid for writes.
 */
enum DirfpStatus dirfp_mod_inverse(int64_t x, uint64_t m, uint64_t *out);

/**
 * Number of `(a, b, c, d)` in `[n]^4` with `ad + bc = p`.
 *
 * # Safety
 * `out` must be NULL or valid for writes.
 */
enum DirfpStatus dirfp_count_solutions(uint64_t p,
                                       uint64_t n,
                                       enum DirfpMethod method,
                                       uint64_t *out);

/**
 * Direction census of `[n]^2` over `F_p`.
 *
 * # Safety
 * `out` must be NULL or valid for writes.
 */
enum DirfpStatus dirfp_directions_census(uint64_t p,
                                         uint64_t n,
                                         enum DirfpMethod method,
                                         struct DirfpCensus *out);

/**
 * Limiting direction density `D(λ)` for `λ > 0`.
 *
 * # Safety
 * `out` must be NULL or valid for writes.
 */
enum DirfpStatus dirfp_density(double lambda, double *out);

/**
 * Dilogarithm `Li_2(x)` for `x` in `[0, 1]`.
 *
 * # Safety
 * `out` must be NULL or valid for writes.
 */
enum DirfpStatus dirfp_dilog(double x, double *out);

/**
 * Even and odd fourth moments of character sums of length `n` mod `p`.
 *
 * # Safety
 * `out` must be NULL or valid for writes.
 */
enum DirfpStatus dirfp_parity_moments(uint64_t p, uint64_t n, struct DirfpMoments *out);

/**
 * Whether every `ax + by ≡ c (mod p)` has a nonzero solution with
 * `|x|, |y| <= √p`.
 *
 * # Safety
 * `out` must be NULL or valid for writes.
 */
enum DirfpStatus dirfp_verify_ac_conclusion(int64_t a, int64_t b, uint64_t p, bool *out);

/**
 * Builds a sieve on `[0, limit]`.
 *
 * # Safety
 * `out` must be NULL or valid for writes. The handle written to `*out` must
 * be released with [`dirfp_sieve_free`].
 */
enum DirfpStatus dirfp_sieve_new(size_t limit, struct DirfpSieve **out);

/**
 * # Safety
 * `sieve` must be NULL or a handle from [`dirfp_sieve_new`] not yet freed.
 */
void dirfp_sieve_free(struct DirfpSieve *sieve);

/**
 * Number of primes up to the sieve limit.
 *
 * # Safety
 * `sieve` must be NULL or a live handle; `out` NULL or valid for writes.
 */
enum DirfpStatus dirfp_sieve_prime_count(const struct DirfpSieve *sieve, size_t *out);

/**
 * Möbius function `μ(k)` for `1 <= k <= limit`.
 *
 * # Safety
 * `sieve` must be NULL or a live handle; `out` NULL or valid for writes.
 */
enum DirfpStatus dirfp_sieve_mobius(const struct DirfpSieve *sieve, uint64_t k, int8_t *out);

/**
 * Number of divisors `τ(k)`.
 *
 * # Safety
 * `sieve` must be NULL or a live handle; `out` NULL or valid for writes.
 */
enum DirfpStatus dirfp_sieve_divisor_count(const struct DirfpSieve *sieve,
                                           uint64_t k,
                                           uint64_t *out);

/**
 * Euler's totient `φ(k)`.
 *
 * # Safety
 * `sieve` must be NULL or a live handle; `out` NULL or valid for writes.
 */
enum DirfpStatus dirfp_sieve_euler_phi(const struct DirfpSieve *sieve, uint64_t k, uint64_t *out);

/**
 * The sequence `p·inv_b(a)/b mod 1` over `a <= x` coprime to `b`.
 *
 * # Safety
 * `out` must be NULL or valid for writes. The handle written to `*out` must
 * be released with [`dirfp_sequence_free`].
 */
enum DirfpStatus dirfp_sequence_inverse(uint64_t b,
                                        uint64_t p,
                                        double x,
                                        struct DirfpSequence **out);

/**
 * The sequence `numerators[i] / denominator`; numerators must be below the
 * denominator.
 *
 * # Safety
 * `numerators` must point to `len` readable values (or be NULL when `len`
 * is 0); `out` must be NULL or valid for writes.
 */
enum DirfpStatus dirfp_sequence_new(const uint64_t *numerators,
                                    size_t len,
                                    uint64_t denominator,
                                    struct DirfpSequence **out);

/**
 * # Safety
 * `seq` must be NULL or a handle from a `dirfp_sequence_*` constructor not
 * yet freed.
 */
void dirfp_sequence_free(struct DirfpSequence *seq);

/**
 * Number of points.
 *
 * # Safety
 * `seq` must be NULL or a live handle; `out` NULL or valid for writes.
 */
enum DirfpStatus dirfp_sequence_len(const struct DirfpSequence *seq, size_t *out);

/**
 * Exact closed-interval discrepancy.
 *
 * # Safety
 * `seq` must be NULL or a live handle; `out` NULL or valid for writes.
 */
enum DirfpStatus dirfp_sequence_discrepancy(const struct DirfpSequence *seq, double *out);

/**
 * Erdős–Turán upper bound with `k` frequencies.
 *
 * # Safety
 * `seq` must be NULL or a live handle; `out` NULL or valid for writes.
 */
enum DirfpStatus dirfp_sequence_erdos_turan(const struct DirfpSequence *seq,
                                            uint64_t k,
                                            double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DIRFP_H */
