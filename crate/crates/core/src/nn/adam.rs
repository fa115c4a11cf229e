//! Adam optimizer with bias correction and a multiplicative per-epoch
//! learning-rate decay.

use super::{layers::Gradients, layers::Parameters, NnError, NnResult, Scalar, Tensor};

#[derive(Debug, Clone, Copy)]
pub struct AdamConfig {
    pub lr0: f64,
    /// Learning rate is lr0 * decay^epoch.
    pub decay_per_epoch: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub eps: f64,
}

impl Default for AdamConfig {
    fn default() -> Self {
        AdamConfig {
            lr0: 5e-5,
            decay_per_epoch: 0.97,
            beta1: 0.9,
            beta2: 0.999,
            eps: 1e-8,
        }
    }
}

/// First/second moment estimates per parameter plus the step counter and the
/// learning-rate schedule.
#[derive(Debug, Clone)]
pub struct AdamState<F> {
    pub cfg: AdamConfig,
    pub step: u64,
    m: Vec<Tensor<F>>,
    v: Vec<Tensor<F>>,
}

impl<F: Scalar> AdamState<F> {
    pub fn new(params: &Parameters<F>, cfg: AdamConfig) -> Self {
        let m = params.iter().map(|(_, t)| Tensor::zeros(t.dims())).collect();
        let v = params.iter().map(|(_, t)| Tensor::zeros(t.dims())).collect();
        AdamState { cfg, step: 0, m, v }
    }

    /// Learning rate for a given epoch under the configured decay.
    pub fn lr_at_epoch(&self, epoch: usize) -> f64 {
        self.cfg.lr0 * self.cfg.decay_per_epoch.powi(epoch as i32)
    }

    /// One Adam update with bias correction. `lr` is the rate for the current
    /// epoch (see [`Self::lr_at_epoch`]).
    pub fn step(
        &mut self,
        params: &mut Parameters<F>,
        grads: &Gradients<F>,
        lr: f64,
    ) -> NnResult<()> {
        if grads.slots().len() != self.m.len() {
            return Err(NnError::Shape {
                layer: "adam".into(),
                expected: format!("{} gradient slots", self.m.len()),
                got: format!("{}", grads.slots().len()),
            });
        }
        self.step += 1;
        let t = self.step as f64;
        let b1 = F::from_f64(self.cfg.beta1);
        let b2 = F::from_f64(self.cfg.beta2);
        let one = F::one();
        let bc1 = F::from_f64(1.0 - self.cfg.beta1.powf(t));
        let bc2 = F::from_f64(1.0 - self.cfg.beta2.powf(t));
        let lr_f = F::from_f64(lr);
        let eps = F::from_f64(self.cfg.eps);

        for idx in 0..self.m.len() {
            let g = grads.get(idx);
            let p = params.get_mut(idx);
            if g.dims() != p.dims() {
                return Err(NnError::Shape {
                    layer: format!("adam slot {idx}"),
                    expected: format!("{:?}", p.dims()),
                    got: format!("{:?}", g.dims()),
                });
            }
            let m = self.m[idx].data_mut();
            let v = self.v[idx].data_mut();
            let pd = p.data_mut();
            let gd = g.data();
            for i in 0..pd.len() {
                m[i] = b1 * m[i] + (one - b1) * gd[i];
                v[i] = b2 * v[i] + (one - b2) * gd[i] * gd[i];
                let mhat = m[i] / bc1;
                let vhat = v[i] / bc2;
                pd[i] -= lr_f * mhat / (vhat.sqrt() + eps);
            }
        }
        Ok(())
    }
}
