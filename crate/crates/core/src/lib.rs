//! Exact and asymptotic counting tools for the direction set of `[n] x [n]`
//! inside the finite plane `F_p^2`, and for the bilinear equation
//! `ad + bc = p` with all variables in `[n]`.
//!
//! The crate is organised bottom-up:
//!
//! * [`arith`]: sieves, Möbius/divisor/totient functions, modular inverses,
//!   deterministic 64-bit primality.
//! * [`special`]: the dilogarithm and the limiting direction density `D(λ)`.
//! * [`directions`]: brute-force and fast direction censuses over `F_p` and `Q`.
//! * [`bilinear`]: solution counts for `ad + bc = p` over the visible-point
//!   triangle, with per-pair diagnostics.
//! * [`charsums`]: `uab ≡ cd (mod p)` counts and parity-split character moments.
//! * [`equidist`]: fractional-part sequences of modular inverses, discrepancy,
//!   Erdős–Turán bounds and incomplete Kloosterman sums.
//! * [`verify`]: the acceptance suites.
//! * [`cli`]: the `dirfp` command-line front end.

pub mod arith;
pub mod bilinear;
pub mod charsums;
pub mod cli;
pub mod directions;
pub mod equidist;
mod error;
pub mod special;
pub mod verify;

pub use error::{Error, Result};
