//! Closed-form constants and root-finding: eta(c), the fixed points of the
//! map Phi_c and lambda_KS, the gamma / gamma-dagger Poisson means, 2-core
//! parameters (lambda_2, nonsingularity probability, mu), truncated-Poisson
//! calibration, and subcritical cycle-census means.
//!
//! All scalar solving is bisection (200 iterations, 1e-12 interval tolerance)
//! on monotone brackets; fixed-point iteration is used for Phi_c, whose
//! extreme fixed points attract iterates started from 0 and 1.

use std::collections::BTreeMap;
use std::f64::consts::E;

use serde::Serialize;

use crate::error::{Error, Result};

/// Guard band around the critical density c = e.
pub const CRITICAL_GUARD: f64 = 1e-9;

const BISECT_ITERS: usize = 200;
const BISECT_TOL: f64 = 1e-12;

/// Largest degree tabulated in [`TruncatedPoissonStats::rho`].
pub const RHO_T_MAX: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Subcritical,
    Supercritical,
}

/// The Poisson means governing the limiting corank laws at density c,
/// together with the intermediate quantities they are built from.
#[derive(Debug, Clone, Serialize)]
pub struct PoissonParams {
    pub c: f64,
    pub regime: Regime,
    /// eta with eta * e^eta = c (subcritical only).
    pub eta: Option<f64>,
    /// Smallest fixed point of Phi_c (supercritical only).
    pub alpha_lo: Option<f64>,
    /// Largest fixed point of Phi_c (supercritical only).
    pub alpha_hi: Option<f64>,
    /// lambda_KS = c (alpha_hi - alpha_lo) (supercritical only).
    pub lambda_ks: Option<f64>,
    pub gamma_b: f64,
    pub gamma_a: f64,
    pub gamma_a_dagger: f64,
}

/// Statistics of Z ~ Poisson(lambda) conditioned on Z >= 2.
#[derive(Debug, Clone, Serialize)]
pub struct TruncatedPoissonStats {
    pub lambda: f64,
    /// E[Z | Z >= 2].
    pub mean: f64,
    /// rho[t] = Pr[Z = t | Z >= 2] for t = 0..=RHO_T_MAX (zero for t < 2).
    pub rho: Vec<f64>,
    /// Conditional mass beyond RHO_T_MAX.
    pub tail: f64,
    /// E[binom(Z, 2) | Z >= 2].
    pub e2: f64,
}

/// Parameters of the 2-core of the giant component at density c > 1.
#[derive(Debug, Clone, Serialize)]
pub struct TwoCoreParams {
    pub c: f64,
    /// Solution of lambda / (1 - e^{-lambda}) = c.
    pub lambda2: f64,
    /// Limiting probability that the giant 2-core adjacency matrix is
    /// nonsingular.
    pub nonsingular_prob: f64,
    /// The corank is asymptotically Poisson(mu); e^{-mu} = nonsingular_prob.
    pub mu: f64,
}

fn bisect(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> f64) -> f64 {
    // pre: f(lo) <= 0 <= f(hi)
    for _ in 0..BISECT_ITERS {
        let mid = 0.5 * (lo + hi);
        if f(mid) <= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < BISECT_TOL {
            break;
        }
    }
    0.5 * (lo + hi)
}

fn check_critical(c: f64) -> Result<()> {
    if (c - E).abs() < CRITICAL_GUARD {
        return Err(Error::CriticalPoint(c));
    }
    Ok(())
}

/// The unique eta in [0, 1] with eta * e^eta = c, for 0 <= c < e.
pub fn solve_eta(c: f64) -> Result<f64> {
    check_critical(c)?;
    if !(0.0..=E).contains(&c) {
        return Err(Error::OutOfRange(c, "solve_eta requires 0 <= c < e"));
    }
    if c == 0.0 {
        return Ok(0.0);
    }
    Ok(bisect(0.0, 1.0, |x| x * x.exp() - c))
}

/// The map whose fixed points describe the Karp-Sipser process at density c.
pub fn phi(c: f64, alpha: f64) -> f64 {
    1.0 - (-c * (-c * (1.0 - alpha)).exp()).exp()
}

/// Smallest and largest fixed points of Phi_c, and lambda_KS = c (a* - a_*),
/// for supercritical c > e. Phi_c is increasing in alpha, so iteration from 0
/// converges monotonically up to the smallest fixed point and iteration from
/// 1 converges down to the largest.
pub fn ks_fixed_points(c: f64) -> Result<(f64, f64, f64)> {
    check_critical(c)?;
    if c < E {
        return Err(Error::OutOfRange(c, "ks_fixed_points requires c > e"));
    }
    let iterate = |start: f64| {
        let mut a = start;
        for _ in 0..100_000 {
            let next = phi(c, a);
            if (next - a).abs() < 1e-13 {
                return next;
            }
            a = next;
        }
        a
    };
    let alpha_lo = iterate(0.0);
    let alpha_hi = iterate(1.0);
    if alpha_hi - alpha_lo < 1e-9 {
        return Err(Error::NoSeparation(c));
    }
    Ok((alpha_lo, alpha_hi, c * (alpha_hi - alpha_lo)))
}

/// gamma(lambda) = -1/4 log(1 - (lambda / (e^{l/2} - e^{-l/2}))^4) and
/// gamma_dagger(lambda) = -1/8 log(1 - (lambda / (e^l - 1))^4).
pub fn gamma_pair(lambda: f64) -> Result<(f64, f64)> {
    if lambda <= 0.0 {
        return Err(Error::NonPositiveLambda(lambda));
    }
    let r1 = lambda / (2.0 * (lambda / 2.0).sinh());
    let r2 = lambda / lambda.exp_m1();
    // ln_1p keeps precision when r^4 underflows toward 0 at large lambda
    let g = -0.25 * (-r1.powi(4)).ln_1p();
    let gd = -0.125 * (-r2.powi(4)).ln_1p();
    if !(g.is_finite() && gd.is_finite()) {
        return Err(Error::OutOfRange(lambda, "gamma evaluation lost precision"));
    }
    debug_assert!(g > 2.0 * gd);
    Ok((g, gd))
}

/// The Poisson means gamma_B, gamma_A, gamma_A_dagger at density c, in both
/// regimes.
pub fn corank_distribution_params(c: f64) -> Result<PoissonParams> {
    check_critical(c)?;
    if c < 0.0 {
        return Err(Error::OutOfRange(c, "density must be nonnegative"));
    }
    if c < E {
        let eta = solve_eta(c)?;
        let gamma_b = -0.25 * (1.0 - eta.powi(4)).ln();
        Ok(PoissonParams {
            c,
            regime: Regime::Subcritical,
            eta: Some(eta),
            alpha_lo: None,
            alpha_hi: None,
            lambda_ks: None,
            gamma_b,
            gamma_a: 0.0,
            gamma_a_dagger: gamma_b / 2.0,
        })
    } else {
        let (alpha_lo, alpha_hi, lambda_ks) = ks_fixed_points(c)?;
        let (gamma_b, gamma_a_dagger) = gamma_pair(lambda_ks)?;
        Ok(PoissonParams {
            c,
            regime: Regime::Supercritical,
            eta: None,
            alpha_lo: Some(alpha_lo),
            alpha_hi: Some(alpha_hi),
            lambda_ks: Some(lambda_ks),
            gamma_b,
            gamma_a: gamma_b - 2.0 * gamma_a_dagger,
            gamma_a_dagger,
        })
    }
}

/// lambda_2, the nonsingularity probability of the giant 2-core, and its
/// Poisson corank mean mu, at density c > 1.
pub fn two_core_params(c: f64) -> Result<TwoCoreParams> {
    if c <= 1.0 {
        return Err(Error::OutOfRange(c, "two_core_params requires c > 1"));
    }
    // lambda / (1 - e^{-lambda}) increases from 1 (at 0+) and exceeds c at
    // lambda = c.
    let lambda2 = bisect(f64::MIN_POSITIVE, c, |l| l / (1.0 - (-l).exp()) - c);
    let r1 = lambda2 / (2.0 * (lambda2 / 2.0).sinh());
    let r2 = lambda2 / lambda2.exp_m1();
    let nonsingular_prob = ((1.0 - r1.powi(4)) / (1.0 - r2.powi(4))).powf(0.25);
    Ok(TwoCoreParams { c, lambda2, nonsingular_prob, mu: -nonsingular_prob.ln() })
}

impl TruncatedPoissonStats {
    /// Statistics of Poisson(lambda) conditioned on being at least 2.
    pub fn from_lambda(lambda: f64) -> Result<Self> {
        if lambda <= 0.0 {
            return Err(Error::NonPositiveLambda(lambda));
        }
        let p_ge2 = -((-lambda).exp_m1()) - lambda * (-lambda).exp();
        let mean = lambda * (-(-lambda).exp_m1()) / p_ge2;
        let mut rho = vec![0.0; RHO_T_MAX + 1];
        // Pr[Z = t] = e^{-lambda} lambda^t / t!, built up iteratively
        let mut pt = (-lambda).exp() * lambda * lambda / 2.0;
        let mut covered = 0.0;
        for t in 2..=RHO_T_MAX {
            rho[t] = pt / p_ge2;
            covered += rho[t];
            pt *= lambda / (t as f64 + 1.0);
        }
        let e2 = (lambda * lambda / 2.0) / p_ge2;
        Ok(TruncatedPoissonStats { lambda, mean, rho, tail: (1.0 - covered).max(0.0), e2 })
    }
}

/// Calibrate lambda so that E[Z | Z >= 2] = alpha (alpha > 2); the map is
/// increasing from 2 (at lambda -> 0) to infinity.
pub fn truncated_poisson_from_mean(alpha: f64) -> Result<TruncatedPoissonStats> {
    if alpha <= 2.0 {
        return Err(Error::OutOfRange(alpha, "truncated mean must exceed 2"));
    }
    let mean_of = |l: f64| {
        let p_ge2 = -((-l).exp_m1()) - l * (-l).exp();
        l * (-(-l).exp_m1()) / p_ge2
    };
    let mut hi = 1.0;
    while mean_of(hi) < alpha {
        hi *= 2.0;
    }
    let lambda = bisect(1e-12, hi, |l| mean_of(l) - alpha);
    TruncatedPoissonStats::from_lambda(lambda)
}

/// Expected numbers of isolated cycles by length in the subcritical regime:
/// eta^l / (2l) for l = 3..=l_max (graph mode) or eta^l / l for even
/// l = 4..=l_max (bipartite mode, where l = 2k and the mean is eta^{2k}/(2k)).
pub fn subcritical_cycle_means(c: f64, l_max: usize, bipartite: bool) -> Result<BTreeMap<usize, f64>> {
    let eta = solve_eta(c)?;
    let mut out = BTreeMap::new();
    if bipartite {
        for l in (4..=l_max).step_by(2) {
            out.insert(l, eta.powi(l as i32) / l as f64);
        }
    } else {
        for l in 3..=l_max {
            out.insert(l, eta.powi(l as i32) / (2.0 * l as f64));
        }
    }
    Ok(out)
}

/// Partial sum (k = 1..=terms) of the combinatorial series for gamma and
/// gamma_dagger, expressed via truncated-Poisson statistics. Term by term it
/// equals the log-series expansion of the closed forms; summed to
/// convergence it equals [`gamma_pair`].
pub fn series_partial_sums(lambda: f64, terms: i32) -> Result<(f64, f64)> {
    let st = TruncatedPoissonStats::from_lambda(lambda)?;
    let p2 = st.rho[2];
    let ezz1 = 2.0 * st.e2; // E[Z(Z-1) | Z >= 2]
    let x_a = (2.0 * p2 * ezz1) / (st.mean * st.mean);
    let x_b = 2.0 * p2 / st.mean;
    let mut a = 0.0;
    let mut b = 0.0;
    for k in 1..=terms {
        a += x_a.powi(2 * k) / (4.0 * k as f64);
        b += x_b.powi(4 * k) / (8.0 * k as f64);
    }
    Ok((a, b))
}

/// Matching truncations of the log-series expansions of the gamma and
/// gamma_dagger closed forms.
pub fn log_series_partial_sums(lambda: f64, terms: i32) -> Result<(f64, f64)> {
    if lambda <= 0.0 {
        return Err(Error::NonPositiveLambda(lambda));
    }
    let r1 = lambda / (2.0 * (lambda / 2.0).sinh());
    let r2 = lambda / lambda.exp_m1();
    let mut a = 0.0;
    let mut b = 0.0;
    for k in 1..=terms {
        a += r1.powi(4 * k) / (4.0 * k as f64);
        b += r2.powi(4 * k) / (8.0 * k as f64);
    }
    Ok((a, b))
}
