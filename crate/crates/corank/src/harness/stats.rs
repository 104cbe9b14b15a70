//! Goodness-of-fit statistics for the Poisson / compound-Poisson corank laws.

use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::error::{Error, Result};

/// Chi-square goodness-of-fit report against a Poisson(mu) or compound
/// Y + 2 Y-dagger law.
#[derive(Debug, Clone, Serialize)]
pub struct GofReport {
    /// Observed counts by value (dense from 0).
    pub observed: Vec<u64>,
    /// Mean of Y (equals mu in plain mode).
    pub mean_y: f64,
    /// Mean of Y-dagger (0 in plain mode).
    pub mean_y_dagger: f64,
    pub chi_square: f64,
    pub dof: usize,
    pub p_value: f64,
    /// z-score of the sample mean against the model mean.
    pub mean_z: f64,
    /// Standard error used for the mean comparison.
    pub se_mean: f64,
}

fn poisson_pmf(mean: f64, len: usize) -> Vec<f64> {
    let mut pmf = vec![0.0; len];
    if len == 0 {
        return pmf;
    }
    pmf[0] = (-mean).exp();
    for k in 1..len {
        pmf[k] = pmf[k - 1] * mean / k as f64;
    }
    pmf
}

/// pmf of Y + 2 Y-dagger with Y ~ Poisson(mean_y), Y-dagger ~
/// Poisson(mean_y_dagger) independent, truncated once the tail mass drops
/// below 1e-12.
pub fn compound_pmf(mean_y: f64, mean_y_dagger: f64, len: usize) -> Vec<f64> {
    let py = poisson_pmf(mean_y, len);
    let pyd = poisson_pmf(mean_y_dagger, len / 2 + 1);
    let mut pmf = vec![0.0; len];
    for (v, slot) in pmf.iter_mut().enumerate() {
        let mut total = 0.0;
        for (j, &pj) in pyd.iter().enumerate().take(v / 2 + 1) {
            total += py[v - 2 * j] * pj;
        }
        *slot = total;
    }
    pmf
}

/// Chi-square GoF of integer draws against Poisson(mu), or against the law
/// of Y + 2 Y-dagger when `compound = Some((mean_Y, mean_Y_dagger))`. Cells
/// are pooled from the upper tail downward until every expected count is at
/// least 5; the degrees of freedom are cells - 1 (the means are given, not
/// fitted).
pub fn poisson_gof(values: &[usize], mu: f64, compound: Option<(f64, f64)>) -> Result<GofReport> {
    if values.is_empty() {
        return Err(Error::EmptyInput);
    }
    let n = values.len() as f64;
    let (mean_y, mean_y_dagger) = compound.unwrap_or((mu, 0.0));
    let model_mean = mean_y + 2.0 * mean_y_dagger;
    let model_var = mean_y + 4.0 * mean_y_dagger;

    let max_val = *values.iter().max().unwrap();
    // extend the support until the model tail mass is below 1e-12
    let mut len = max_val + 2;
    let mut pmf;
    loop {
        pmf = if compound.is_some() {
            compound_pmf(mean_y, mean_y_dagger, len)
        } else {
            poisson_pmf(mu, len)
        };
        let mass: f64 = pmf.iter().sum();
        if 1.0 - mass < 1e-12 || len > max_val + 2048 {
            break;
        }
        len *= 2;
    }

    let mut observed = vec![0u64; max_val + 1];
    for &v in values {
        observed[v] += 1;
    }

    // expected counts per value, with all model mass beyond max_val assigned
    // to the top cell
    let mut expected: Vec<f64> = pmf.iter().take(max_val + 1).map(|&p| p * n).collect();
    let tail_mass: f64 = pmf.iter().skip(max_val + 1).sum::<f64>() + (1.0 - pmf.iter().sum::<f64>()).max(0.0);
    *expected.last_mut().unwrap() += tail_mass * n;

    // pool cells from the upper tail downward until every cell expects >= 5
    let mut cells: Vec<(f64, f64)> = Vec::new(); // (observed, expected)
    let mut acc_obs = 0.0;
    let mut acc_exp = 0.0;
    for v in (0..=max_val).rev() {
        acc_obs += observed[v] as f64;
        acc_exp += expected[v];
        if acc_exp >= 5.0 {
            cells.push((acc_obs, acc_exp));
            acc_obs = 0.0;
            acc_exp = 0.0;
        }
    }
    if acc_exp > 0.0 || acc_obs > 0.0 {
        // leftover low cells: merge into the last (lowest-value) cell
        if let Some(last) = cells.last_mut() {
            last.0 += acc_obs;
            last.1 += acc_exp;
        } else {
            cells.push((acc_obs, acc_exp));
        }
    }

    let chi_square: f64 = cells
        .iter()
        .filter(|(_, e)| *e > 0.0)
        .map(|(o, e)| (o - e) * (o - e) / e)
        .sum();
    let dof = cells.len().saturating_sub(1);
    let p_value = if dof == 0 {
        1.0
    } else {
        1.0 - ChiSquared::new(dof as f64).expect("dof >= 1").cdf(chi_square)
    };

    let sample_mean = values.iter().sum::<usize>() as f64 / n;
    let se_mean = (model_var / n).sqrt();
    let mean_z = if se_mean > 0.0 {
        (sample_mean - model_mean) / se_mean
    } else {
        0.0
    };

    Ok(GofReport {
        observed,
        mean_y,
        mean_y_dagger,
        chi_square,
        dof,
        p_value,
        mean_z,
        se_mean,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    fn sample_poisson(mean: f64, rng: &mut ChaCha12Rng) -> usize {
        // inversion; fine for small means
        let target: f64 = rng.gen();
        let mut k = 0;
        let mut p = (-mean).exp();
        let mut cum = p;
        while cum < target && k < 1000 {
            k += 1;
            p *= mean / k as f64;
            cum += p;
        }
        k
    }

    #[test]
    fn all_zero_perfect_fit() {
        let r = poisson_gof(&[0; 100], 0.0, None).unwrap();
        assert_eq!(r.chi_square, 0.0);
        assert_eq!(r.p_value, 1.0);
        assert_eq!(r.mean_z, 0.0);
    }

    #[test]
    fn empty_input_rejected() {
        assert!(matches!(poisson_gof(&[], 0.5, None), Err(Error::EmptyInput)));
    }

    #[test]
    fn self_simulated_poisson_fits() {
        let mut rng = ChaCha12Rng::seed_from_u64(1);
        let values: Vec<usize> = (0..100_000).map(|_| sample_poisson(0.2, &mut rng)).collect();
        let r = poisson_gof(&values, 0.2, None).unwrap();
        assert!(r.mean_z.abs() < 4.0, "z = {}", r.mean_z);
        assert!(r.p_value > 0.001, "p = {}", r.p_value);
    }

    #[test]
    fn degenerate_compound_is_plain_poisson() {
        let pmf_c = compound_pmf(0.7, 0.0, 32);
        let pmf_p = poisson_pmf(0.7, 32);
        for (a, b) in pmf_c.iter().zip(&pmf_p) {
            assert!((a - b).abs() < 1e-15);
        }
        let values = vec![0, 1, 0, 2, 0, 1, 0, 0, 1, 0];
        let a = poisson_gof(&values, 0.7, None).unwrap();
        let b = poisson_gof(&values, 0.0, Some((0.7, 0.0))).unwrap();
        assert!((a.chi_square - b.chi_square).abs() < 1e-12);
    }

    #[test]
    fn compound_pmf_normalizes_and_has_even_shift_mass() {
        let pmf = compound_pmf(0.3, 0.1, 64);
        let mass: f64 = pmf.iter().sum();
        assert!((mass - 1.0).abs() < 1e-12);
        // P[X = 0] = e^{-0.3} e^{-0.1}
        assert!((pmf[0] - (-0.4f64).exp()).abs() < 1e-12);
        // P[X = 2] has both the Y=2 and the Y-dagger=1 contribution
        let expect = (-0.4f64).exp() * (0.3f64.powi(2) / 2.0 + 0.1);
        assert!((pmf[2] - expect).abs() < 1e-12);
    }

    #[test]
    fn self_simulated_compound_fits() {
        let mut rng = ChaCha12Rng::seed_from_u64(5);
        let (gy, gyd) = (0.18, 0.02);
        let values: Vec<usize> = (0..50_000)
            .map(|_| sample_poisson(gy, &mut rng) + 2 * sample_poisson(gyd, &mut rng))
            .collect();
        let r = poisson_gof(&values, 0.0, Some((gy, gyd))).unwrap();
        assert!(r.mean_z.abs() < 4.0, "z = {}", r.mean_z);
        assert!(r.p_value > 0.001, "p = {}", r.p_value);
    }
}
