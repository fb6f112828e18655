//! The dilogarithm and the limiting direction density `D(λ)`.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use serde::Serialize;

use crate::{Error, Result};

const PI2_6: f64 = PI * PI / 6.0;

/// `Li_2(x) = -∫_0^x log(1-t)/t dt` for `x` in `[0, 1]`.
///
/// Uses the power series `Σ x^k / k^2` on `[0, 1/2]` and the reflection
/// `Li_2(x) = π²/6 - log x · log(1-x) - Li_2(1-x)` above it.
pub fn dilog(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::domain(format!("dilog argument {x} outside [0, 1]")));
    }
    if x == 1.0 {
        return Ok(PI2_6);
    }
    if x <= 0.5 {
        Ok(dilog_series(x))
    } else {
        let y = 1.0 - x;
        Ok(PI2_6 - x.ln() * y.ln() - dilog_series(y))
    }
}

fn dilog_series(x: f64) -> f64 {
    let mut sum = 0.0;
    let mut pw = x;
    let mut k = 1.0f64;
    while pw > 1e-18 * k * k {
        sum += pw / (k * k);
        pw *= x;
        k += 1.0;
    }
    sum
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    /// `λ <= 1/√2`: no coincidences between positive and negative directions.
    Low,
    Mid,
    /// `λ >= 1`: every direction occurs.
    High,
}

/// The shape parameter `λ = n / √p`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Lambda(f64);

impl Lambda {
    pub fn new(value: f64) -> Result<Self> {
        if value.is_finite() && value > 0.0 {
            Ok(Lambda(value))
        } else {
            Err(Error::domain(format!("lambda must be positive and finite, got {value}")))
        }
    }

    pub fn from_instance(p: u64, n: u64) -> Result<Self> {
        Lambda::new(n as f64 / (p as f64).sqrt())
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn regime(self) -> Regime {
        if self.0 <= FRAC_1_SQRT_2 {
            Regime::Low
        } else if self.0 < 1.0 {
            Regime::Mid
        } else {
            Regime::High
        }
    }
}

/// The limiting proportion `D(λ)` of the `p + 1` directions that `[n]^2`
/// determines when `n = λ√p`.
pub fn density(lambda: Lambda) -> f64 {
    let l = lambda.value();
    match lambda.regime() {
        Regime::Low => 12.0 / (PI * PI) * l * l,
        Regime::High => 1.0,
        Regime::Mid => {
            let l2 = l * l;
            let eps = 1.0 - l2;
            if eps < 1e-8 {
                // expansion about λ = 1: D = 1 + (6/π²)(ε² log ε - 3ε²/2) + O(ε³ log ε)
                return 1.0 + 6.0 / (PI * PI) * (eps * eps * eps.ln() - 1.5 * eps * eps);
            }
            let li = dilog(l2).expect("λ² in (1/2, 1)");
            let log_l2 = l2.ln();
            let inner = 2.0 * li + log_l2 * log_l2 - 2.0 * eps * (eps / l2).ln() + 2.0 * eps;
            6.0 / (PI * PI) * inner - 1.0
        }
    }
}

/// Main terms of the direction count and of the solution count `N(p, n)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Prediction {
    pub directions_main: f64,
    pub nsolutions_main: f64,
    pub regime: Regime,
}

/// Main terms for the instance `(p, n)`; error terms are not modelled.
pub fn predict(p: u64, n: u64) -> Result<Prediction> {
    if n == 0 {
        return Err(Error::domain("n must be positive"));
    }
    let lambda = Lambda::from_instance(p, n)?;
    let d = density(lambda);
    let pf = p as f64;
    let l2 = (n as f64) * (n as f64) / pf;
    let nsol = match lambda.regime() {
        Regime::Low => 0.0,
        _ => ((12.0 / (PI * PI) * l2 - d) * pf).max(0.0),
    };
    Ok(Prediction {
        directions_main: d * pf,
        nsolutions_main: nsol,
        regime: lambda.regime(),
    })
}

/// One sample of the density curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvePoint {
    pub lambda: f64,
    pub d_lambda: f64,
    pub lambda_squared: f64,
}

/// Right end of the sampled range of `λ`.
pub const CURVE_MAX_LAMBDA: f64 = 1.2;

/// `D(λ)` and `λ²` on the grid `λ = k·step` in `(0, 1.2]`, with the branch
/// points `1/√2` and `1` always included.
pub fn curve(step: f64) -> Result<Vec<CurvePoint>> {
    if !(step > 0.0 && step <= 0.1) {
        return Err(Error::domain(format!("grid step {step} must lie in (0, 0.1]")));
    }
    let mut lambdas: Vec<f64> = (1..)
        .map(|k| k as f64 * step)
        .take_while(|&l| l <= CURVE_MAX_LAMBDA + 1e-12)
        .collect();
    lambdas.extend([FRAC_1_SQRT_2, 1.0]);
    lambdas.sort_by(f64::total_cmp);
    lambdas.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    lambdas
        .into_iter()
        .map(|l| {
            Ok(CurvePoint {
                lambda: l,
                d_lambda: density(Lambda::new(l)?),
                lambda_squared: l * l,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Simpson's rule on the defining integral; only used for x <= 0.9.
    fn dilog_quadrature(x: f64) -> f64 {
        let f = |t: f64| if t == 0.0 { 1.0 } else { -(1.0 - t).ln() / t };
        let simpson = |a: f64, b: f64, n: usize, g: &dyn Fn(f64) -> f64| {
            let h = (b - a) / n as f64;
            let mut s = g(a) + g(b);
            for i in 1..n {
                let w = if i % 2 == 1 { 4.0 } else { 2.0 };
                s += w * g(a + i as f64 * h);
            }
            s * h / 3.0
        };
        simpson(0.0, x, 20_000, &f)
    }

    #[test]
    fn dilog_endpoints() {
        assert_eq!(dilog(0.0).unwrap(), 0.0);
        assert!((dilog(1.0).unwrap() - 1.644_934_066_848_226_4).abs() < 1e-15);
        assert!(dilog(-0.1).is_err());
        assert!(dilog(1.1).is_err());
        assert!(dilog(f64::NAN).is_err());
    }

    #[test]
    fn dilog_half() {
        let ln2 = std::f64::consts::LN_2;
        let closed = PI * PI / 12.0 - ln2 * ln2 / 2.0;
        assert!((dilog(0.5).unwrap() - closed).abs() < 1e-14);
        assert!((dilog_quadrature(0.5) - closed).abs() < 1e-12);
        assert!((closed - 0.582_240_526_5).abs() < 1e-10);
    }

    #[test]
    fn dilog_against_quadrature() {
        for i in 1..=18 {
            let x = i as f64 * 0.05;
            let q = dilog_quadrature(x);
            assert!((dilog(x).unwrap() - q).abs() < 1e-11, "x = {x}");
        }
    }

    #[test]
    fn reflection_residual() {
        for i in 1..1000 {
            let z = i as f64 / 1000.0;
            let r = dilog(z).unwrap() + dilog(1.0 - z).unwrap() - PI2_6 + z.ln() * (1.0 - z).ln();
            assert!(r.abs() <= 1e-12, "z = {z}: {r}");
        }
    }

    fn mid_formula_with(li: f64, l: f64) -> f64 {
        let l2 = l * l;
        6.0 / (PI * PI)
            * (2.0 * li + l2.ln().powi(2) - 2.0 * (1.0 - l2) * (1.0 / l2 - 1.0).ln() + 2.0 * (1.0 - l2))
            - 1.0
    }

    #[test]
    fn density_fixtures() {
        let at_branch = density(Lambda::new(FRAC_1_SQRT_2).unwrap());
        assert!((at_branch - 6.0 / (PI * PI)).abs() < 1e-15);
        assert!((at_branch - 0.607_927_101_9).abs() < 1e-10);
        assert_eq!(density(Lambda::new(1.0).unwrap()), 1.0);
        assert_eq!(density(Lambda::new(3.0).unwrap()), 1.0);

        let l = 0.85;
        let oracle = mid_formula_with(dilog_quadrature(l * l), l);
        let got = density(Lambda::new(l).unwrap());
        assert!((got - oracle).abs() < 1e-10, "{got} vs {oracle}");
        assert!((got - 0.853_620_931_734_56).abs() < 1e-12, "{got}");
    }

    #[test]
    fn near_one_expansion_agrees_with_direct_formula() {
        for eps in [1e-4, 1e-5, 1e-6] {
            let l = (1.0f64 - eps).sqrt();
            let direct = mid_formula_with(dilog(l * l).unwrap(), l);
            let series = 1.0 + 6.0 / (PI * PI) * (eps * eps * eps.ln() - 1.5 * eps * eps);
            assert!((direct - series).abs() < 1e-9, "eps = {eps}");
        }
        let l = (1.0f64 - 1e-10).sqrt();
        assert!((density(Lambda::new(l).unwrap()) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn branch_continuity() {
        let e = 1e-7;
        let lo = density(Lambda::new(FRAC_1_SQRT_2 - e).unwrap());
        let hi = density(Lambda::new(FRAC_1_SQRT_2 + e).unwrap());
        assert!((lo - hi).abs() <= 1e-6);
        assert!((density(Lambda::new(1.0 - e).unwrap()) - 1.0).abs() <= 1e-4);
    }

    #[test]
    fn dominates_lambda_squared_and_is_monotone() {
        let mut prev = 0.0;
        for i in 1..=1000 {
            let l = i as f64 / 1000.0;
            let d = density(Lambda::new(l).unwrap());
            assert!(d >= l * l, "λ = {l}");
            assert!(d >= prev, "λ = {l}");
            prev = d;
        }
    }

    #[test]
    fn regimes() {
        assert_eq!(Lambda::new(0.5).unwrap().regime(), Regime::Low);
        assert_eq!(Lambda::new(FRAC_1_SQRT_2).unwrap().regime(), Regime::Low);
        assert_eq!(Lambda::new(0.9).unwrap().regime(), Regime::Mid);
        assert_eq!(Lambda::new(1.0).unwrap().regime(), Regime::High);
        assert!(Lambda::new(0.0).is_err());
        assert!(Lambda::new(-1.0).is_err());
    }

    #[test]
    fn curve_grid() {
        let c = curve(0.01).unwrap();
        assert!(c.iter().any(|r| r.lambda == FRAC_1_SQRT_2 && (r.d_lambda - 6.0 / (PI * PI)).abs() < 1e-15));
        assert!(c.iter().any(|r| r.lambda == 1.0 && r.d_lambda == 1.0));
        let r = c.iter().find(|r| (r.lambda - 1.1).abs() < 1e-9).unwrap();
        assert_eq!(r.d_lambda, 1.0);
        assert!((c.last().unwrap().lambda - 1.2).abs() < 1e-9);
        assert!(c.windows(2).all(|w| w[0].lambda < w[1].lambda));
        assert!(c.iter().all(|r| r.lambda > 1.0 || r.d_lambda >= r.lambda_squared));
        assert!(curve(0.0).is_err());
        assert!(curve(0.2).is_err());
        assert_eq!(curve(0.1).unwrap().len(), 13);
    }

    #[test]
    fn predictions() {
        let p = 1_000_003;
        let low = predict(p, 700).unwrap();
        assert_eq!(low.nsolutions_main, 0.0);
        assert_eq!(low.regime, Regime::Low);
        let mid = predict(p, 850).unwrap();
        let d = density(Lambda::from_instance(p, 850).unwrap());
        assert_eq!(mid.directions_main, d * p as f64);
        assert!(mid.nsolutions_main > 0.0);
        let high = predict(p, 1001).unwrap();
        assert_eq!(high.directions_main, p as f64);
        assert!(predict(p, 0).is_err());
    }
}
