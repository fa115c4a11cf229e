//! Latent-space primitives: the reparameterization trick and the closed-form
//! KL divergence between a diagonal Gaussian and the standard normal.

use super::{NnError, NnResult, Scalar};

/// z = mu + exp(logvar / 2) * eps, elementwise. `eps` is standard-normal
/// noise drawn by the caller.
pub fn reparameterize<F: Scalar>(mu: &[F], logvar: &[F], eps: &[F]) -> NnResult<Vec<F>> {
    if mu.len() != logvar.len() || mu.len() != eps.len() {
        return Err(NnError::Shape {
            layer: "reparameterize".into(),
            expected: format!("three vectors of length {}", mu.len()),
            got: format!("mu {}, logvar {}, eps {}", mu.len(), logvar.len(), eps.len()),
        });
    }
    let half = F::from_f64(0.5);
    Ok(mu
        .iter()
        .zip(logvar)
        .zip(eps)
        .map(|((&m, &lv), &e)| m + (lv * half).exp() * e)
        .collect())
}

/// KL(N(mu, diag(exp(logvar))) || N(0, I)) = 0.5 * sum(mu^2 + exp(logvar) - 1 - logvar).
pub fn kl_diag_gaussian<F: Scalar>(mu: &[F], logvar: &[F]) -> NnResult<F> {
    if mu.len() != logvar.len() {
        return Err(NnError::Shape {
            layer: "kl_diag_gaussian".into(),
            expected: format!("two vectors of length {}", mu.len()),
            got: format!("mu {}, logvar {}", mu.len(), logvar.len()),
        });
    }
    let mut acc = F::zero();
    for (&m, &lv) in mu.iter().zip(logvar) {
        if !m.is_finite() || !lv.is_finite() {
            return Err(NnError::NonFinite {
                context: "kl_diag_gaussian input".into(),
            });
        }
        acc += m * m + lv.exp() - F::one() - lv;
    }
    Ok(acc * F::from_f64(0.5))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn reparameterize_zero_eps_returns_mu() {
        let mu = [0.3f64, -1.0, 2.5];
        let lv = [0.7, -0.2, 1.1];
        let eps = [0.0, 0.0, 0.0];
        assert_eq!(reparameterize(&mu, &lv, &eps).unwrap(), mu.to_vec());
    }

    #[test]
    fn reparameterize_unit_variance_adds_eps() {
        let mu = [0.5f64, 1.5];
        let lv = [0.0, 0.0];
        let eps = [0.25, -0.75];
        assert_eq!(
            reparameterize(&mu, &lv, &eps).unwrap(),
            vec![0.75, 0.75]
        );
    }

    #[test]
    fn reparameterize_length_mismatch_errors() {
        assert!(reparameterize(&[0.0f64], &[0.0, 0.0], &[0.0]).is_err());
    }

    #[test]
    fn reparameterize_sample_mean_concentrates_on_mu() {
        // mu = 0, logvar = 0: mean of each coordinate over 1e5 samples is
        // within 4/sqrt(1e5) of 0.
        let n = 100_000usize;
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut sums = [0.0f64; 3];
        for _ in 0..n {
            let eps: Vec<f64> = (0..3).map(|_| standard_normal(&mut rng)).collect();
            let z = reparameterize(&[0.0; 3], &[0.0; 3], &eps).unwrap();
            for (s, v) in sums.iter_mut().zip(z) {
                *s += v;
            }
        }
        let bound = 4.0 / (n as f64).sqrt();
        for s in sums {
            assert!((s / n as f64).abs() < bound, "{} vs {}", s / n as f64, bound);
        }
    }

    fn standard_normal(rng: &mut ChaCha8Rng) -> f64 {
        // Box-Muller
        let u1: f64 = rng.random_range(f64::MIN_POSITIVE..1.0);
        let u2: f64 = rng.random_range(0.0..1.0);
        (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
    }

    #[test]
    fn kl_zero_for_standard_normal() {
        assert_eq!(kl_diag_gaussian(&[0.0f64; 8], &[0.0; 8]).unwrap(), 0.0);
    }

    #[test]
    fn kl_closed_form_values() {
        // mu = 1, logvar = 0: 0.5 * (1 + 1 - 1 - 0) = 0.5
        let v = kl_diag_gaussian(&[1.0f64], &[0.0]).unwrap();
        assert!((v - 0.5).abs() < 1e-12);
        // mu = 0, logvar = ln 4: 0.5 * (4 - 1 - ln 4)
        let v = kl_diag_gaussian(&[0.0f64], &[4.0f64.ln()]).unwrap();
        let expect = 0.5 * (4.0 - 1.0 - 4.0f64.ln());
        assert!((v - expect).abs() < 1e-12);
        assert!((v - 0.806_852_819_440_054_7).abs() < 1e-9);
    }

    #[test]
    fn kl_monte_carlo_agreement() {
        // Monte Carlo estimate of KL for mu = 0, logvar = ln 4 agrees with the
        // closed form within 0.01: E_q[log q(z) - log p(z)].
        let mu = 0.0f64;
        let var = 4.0f64;
        let n = 100_000usize;
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut acc = 0.0;
        for _ in 0..n {
            let z = mu + var.sqrt() * standard_normal(&mut rng);
            let log_q = -0.5 * ((z - mu) * (z - mu) / var + var.ln() + (2.0 * std::f64::consts::PI).ln());
            let log_p = -0.5 * (z * z + (2.0 * std::f64::consts::PI).ln());
            acc += log_q - log_p;
        }
        let mc = acc / n as f64;
        let closed = kl_diag_gaussian(&[mu], &[var.ln()]).unwrap();
        assert!((mc - closed).abs() < 0.01, "mc {mc} vs closed {closed}");
    }

    #[test]
    fn kl_rejects_non_finite() {
        assert!(kl_diag_gaussian(&[f64::NAN], &[0.0]).is_err());
        assert!(kl_diag_gaussian(&[0.0], &[f64::INFINITY]).is_err());
    }

    #[test]
    fn kl_non_negative_over_random_inputs() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..10_000 {
            let d = rng.random_range(1..6);
            let mu: Vec<f64> = (0..d).map(|_| rng.random_range(-3.0..3.0)).collect();
            let lv: Vec<f64> = (0..d).map(|_| rng.random_range(-3.0..3.0)).collect();
            let v = kl_diag_gaussian(&mu, &lv).unwrap();
            assert!(v >= 0.0, "kl {v} for mu {mu:?} lv {lv:?}");
        }
    }
}
