//! Feed-forward layers: embedding lookup, 1-D convolution, global max
//! pooling, dense, dropout, Gaussian noise.
//!
//! Each layer exposes `forward` returning the output plus a cache of
//! whatever the matching `backward` needs. Parameters are immutable
//! during a pass; backward writes into caller-owned gradient
//! accumulators, so independent examples can run concurrently against
//! shared parameters.

use crate::error::{Error, Result};
use crate::rng::SeededRng;
use crate::tensor::Tensor;

/// Forward-pass mode. Dropout and noise are active only in `Train`;
/// in `Infer` they are bitwise identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Train,
    Infer,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Activation {
    Relu,
    Sigmoid,
    None,
}

pub(crate) fn sigmoid(x: f64) -> f64 {
    1.0 / (1.0 + (-x).exp())
}

fn glorot_limit(fan_in: usize, fan_out: usize) -> f64 {
    (6.0 / (fan_in + fan_out) as f64).sqrt()
}

// ---------------------------------------------------------------------------
// Embedding

/// Token-index lookup table, trained jointly with the network.
#[derive(Debug, Clone)]
pub struct Embedding {
    /// `[rows, dim]`; row 0 is the padding slot, row 1 the OOV slot.
    pub table: Tensor,
}

impl Embedding {
    pub fn new(rows: usize, dim: usize, rng: &mut SeededRng) -> Self {
        let limit = glorot_limit(rows, dim);
        let mut table = Tensor::zeros(&[rows, dim]);
        table.fill_uniform(rng, -limit, limit);
        Embedding { table }
    }

    pub fn dim(&self) -> usize {
        self.table.cols()
    }

    /// Gathers `table[seq[t]]` into row `t` of the output.
    pub fn forward(&self, seq: &[usize]) -> Result<Tensor> {
        let rows = self.table.rows();
        let dim = self.table.cols();
        let mut out = Tensor::zeros(&[seq.len(), dim]);
        for (t, &idx) in seq.iter().enumerate() {
            if idx >= rows {
                return Err(Error::data(format!(
                    "embedding index {idx} out of bounds for table with {rows} rows"
                )));
            }
            out.row_mut(t).copy_from_slice(self.table.row(idx));
        }
        Ok(out)
    }

    /// Scatters upstream rows back onto the looked-up table rows.
    pub fn backward(&self, seq: &[usize], upstream: &Tensor, grad_table: &mut Tensor) {
        assert_eq!(grad_table.shape(), self.table.shape(), "embedding grad shape");
        for (t, &idx) in seq.iter().enumerate() {
            let dy = upstream.row(t);
            let row = grad_table.row_mut(idx);
            for (g, d) in row.iter_mut().zip(dy) {
                *g += d;
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Conv1d

/// Valid (no padding) 1-D convolution over time with fused ReLU.
#[derive(Debug, Clone)]
pub struct Conv1d {
    /// `[kernel, in, out]`.
    pub kernel: Tensor,
    /// `[out]`.
    pub bias: Tensor,
}

pub struct Conv1dCache {
    input: Tensor,
    /// Pre-activation `[T-k+1, out]`; ReLU derivative comes from its sign.
    z: Tensor,
}

impl Conv1d {
    pub fn new(kernel_size: usize, in_dim: usize, out_dim: usize, rng: &mut SeededRng) -> Self {
        let limit = glorot_limit(kernel_size * in_dim, kernel_size * out_dim);
        let mut kernel = Tensor::zeros(&[kernel_size, in_dim, out_dim]);
        kernel.fill_uniform(rng, -limit, limit);
        Conv1d { kernel, bias: Tensor::zeros(&[out_dim]) }
    }

    pub fn kernel_size(&self) -> usize {
        self.kernel.shape()[0]
    }

    pub fn in_dim(&self) -> usize {
        self.kernel.shape()[1]
    }

    pub fn out_dim(&self) -> usize {
        self.kernel.shape()[2]
    }

    fn kernel_row(&self, k: usize, a: usize) -> &[f64] {
        let (cin, cout) = (self.in_dim(), self.out_dim());
        let start = (k * cin + a) * cout;
        &self.kernel.data()[start..start + cout]
    }

    pub fn forward(&self, x: &Tensor) -> Result<(Tensor, Conv1dCache)> {
        let (t_in, cin) = (x.rows(), x.cols());
        let k = self.kernel_size();
        assert_eq!(cin, self.in_dim(), "conv input width");
        if t_in < k {
            return Err(Error::data(format!(
                "sequence too short for convolution: {t_in} < kernel {k}"
            )));
        }
        let t_out = t_in - k + 1;
        let cout = self.out_dim();
        let mut z = Tensor::zeros(&[t_out, cout]);
        for t in 0..t_out {
            let row = z.row_mut(t);
            row.copy_from_slice(self.bias.data());
            for ki in 0..k {
                let xr = x.row(t + ki);
                for a in 0..cin {
                    let xv = xr[a];
                    if xv == 0.0 {
                        continue;
                    }
                    let kr = self.kernel_row(ki, a);
                    for (o, w) in row.iter_mut().zip(kr) {
                        *o += xv * w;
                    }
                }
            }
        }
        let mut out = z.clone();
        for v in out.data_mut() {
            if *v < 0.0 {
                *v = 0.0;
            }
        }
        Ok((out, Conv1dCache { input: x.clone(), z }))
    }

    /// Returns the input gradient; accumulates kernel/bias gradients.
    pub fn backward(
        &self,
        cache: &Conv1dCache,
        upstream: &Tensor,
        grad_kernel: &mut Tensor,
        grad_bias: &mut Tensor,
    ) -> Tensor {
        let (t_out, cout) = (cache.z.rows(), cache.z.cols());
        assert_eq!(upstream.shape(), cache.z.shape(), "conv upstream shape");
        let (k, cin) = (self.kernel_size(), self.in_dim());
        let x = &cache.input;
        let mut dx = Tensor::zeros(&[x.rows(), cin]);
        let mut dz_row = vec![0.0; cout];
        for t in 0..t_out {
            let zr = cache.z.row(t);
            let ur = upstream.row(t);
            for j in 0..cout {
                dz_row[j] = if zr[j] > 0.0 { ur[j] } else { 0.0 };
            }
            for (gb, d) in grad_bias.data_mut().iter_mut().zip(&dz_row) {
                *gb += d;
            }
            for ki in 0..k {
                let xr = x.row(t + ki);
                let dxr = dx.row_mut(t + ki);
                for a in 0..cin {
                    let xv = xr[a];
                    let kr_start = (ki * cin + a) * cout;
                    let gk = &mut grad_kernel.data_mut()[kr_start..kr_start + cout];
                    let kr = &self.kernel.data()[kr_start..kr_start + cout];
                    let mut acc = 0.0;
                    for j in 0..cout {
                        gk[j] += xv * dz_row[j];
                        acc += kr[j] * dz_row[j];
                    }
                    dxr[a] += acc;
                }
            }
        }
        dx
    }
}

// ---------------------------------------------------------------------------
// Global max pooling

pub struct MaxPoolCache {
    /// Earliest argmax timestep per channel.
    argmax: Vec<usize>,
    t_len: usize,
}

/// Elementwise maximum over the time axis of `[T, c]`.
pub fn global_max_pool(x: &Tensor) -> (Tensor, MaxPoolCache) {
    let (t_len, c) = (x.rows(), x.cols());
    assert!(t_len >= 1, "max pool needs at least one timestep");
    let mut out = Tensor::zeros(&[c]);
    out.data_mut().copy_from_slice(x.row(0));
    let mut argmax = vec![0usize; c];
    for t in 1..t_len {
        let row = x.row(t);
        let o = out.data_mut();
        for j in 0..c {
            if row[j] > o[j] {
                o[j] = row[j];
                argmax[j] = t;
            }
        }
    }
    (out, MaxPoolCache { argmax, t_len })
}

/// Routes each channel's gradient to its (earliest) argmax timestep.
pub fn global_max_pool_backward(cache: &MaxPoolCache, upstream: &Tensor) -> Tensor {
    let c = cache.argmax.len();
    assert_eq!(upstream.len(), c, "max pool upstream width");
    let mut dx = Tensor::zeros(&[cache.t_len, c]);
    for (j, (&t, &d)) in cache.argmax.iter().zip(upstream.data()).enumerate() {
        dx.row_mut(t)[j] = d;
    }
    dx
}

// ---------------------------------------------------------------------------
// Dense

#[derive(Debug, Clone)]
pub struct Dense {
    /// `[in, out]`.
    pub weight: Tensor,
    /// `[out]`.
    pub bias: Tensor,
    pub activation: Activation,
}

pub struct DenseCache {
    input: Tensor,
    /// Post-activation output; enough to differentiate ReLU and sigmoid.
    output: Tensor,
}

impl Dense {
    pub fn new(in_dim: usize, out_dim: usize, activation: Activation, rng: &mut SeededRng) -> Self {
        let limit = glorot_limit(in_dim, out_dim);
        let mut weight = Tensor::zeros(&[in_dim, out_dim]);
        weight.fill_uniform(rng, -limit, limit);
        Dense { weight, bias: Tensor::zeros(&[out_dim]), activation }
    }

    pub fn in_dim(&self) -> usize {
        self.weight.rows()
    }

    pub fn out_dim(&self) -> usize {
        self.weight.cols()
    }

    pub fn forward(&self, x: &Tensor) -> (Tensor, DenseCache) {
        assert_eq!(x.len(), self.in_dim(), "dense input width");
        let mut z = Tensor::zeros(&[self.out_dim()]);
        z.data_mut().copy_from_slice(self.bias.data());
        for (a, &xv) in x.data().iter().enumerate() {
            if xv == 0.0 {
                continue;
            }
            let wr = self.weight.row(a);
            for (o, w) in z.data_mut().iter_mut().zip(wr) {
                *o += xv * w;
            }
        }
        let mut y = z;
        match self.activation {
            Activation::Relu => {
                for v in y.data_mut() {
                    if *v < 0.0 {
                        *v = 0.0;
                    }
                }
            }
            Activation::Sigmoid => {
                for v in y.data_mut() {
                    *v = sigmoid(*v);
                }
            }
            Activation::None => {}
        }
        (y.clone(), DenseCache { input: x.clone(), output: y })
    }

    pub fn backward(
        &self,
        cache: &DenseCache,
        upstream: &Tensor,
        grad_weight: &mut Tensor,
        grad_bias: &mut Tensor,
    ) -> Tensor {
        let out_dim = self.out_dim();
        assert_eq!(upstream.len(), out_dim, "dense upstream width");
        let mut dz = vec![0.0; out_dim];
        let y = cache.output.data();
        for j in 0..out_dim {
            let d = match self.activation {
                Activation::Relu => {
                    if y[j] > 0.0 {
                        1.0
                    } else {
                        0.0
                    }
                }
                Activation::Sigmoid => y[j] * (1.0 - y[j]),
                Activation::None => 1.0,
            };
            dz[j] = upstream.data()[j] * d;
        }
        for (gb, d) in grad_bias.data_mut().iter_mut().zip(&dz) {
            *gb += d;
        }
        let mut dx = Tensor::zeros(&[self.in_dim()]);
        for (a, xv) in cache.input.data().iter().enumerate() {
            let gw = grad_weight.row_mut(a);
            let wr = self.weight.row(a);
            let mut acc = 0.0;
            for j in 0..out_dim {
                gw[j] += xv * dz[j];
                acc += wr[j] * dz[j];
            }
            dx.data_mut()[a] = acc;
        }
        dx
    }
}

// ---------------------------------------------------------------------------
// Dropout

/// Inverted dropout: surviving activations are scaled by `1/(1-rate)`
/// during training so inference needs no rescaling.
#[derive(Debug, Clone)]
pub struct Dropout {
    pub rate: f64,
}

pub struct DropoutCache {
    /// Scaled keep mask; `None` when the layer acted as identity.
    mask: Option<Tensor>,
}

impl Dropout {
    pub fn new(rate: f64) -> Self {
        assert!((0.0..1.0).contains(&rate), "dropout rate must be in [0, 1)");
        Dropout { rate }
    }

    pub fn forward(&self, x: &Tensor, mode: Mode, rng: &mut SeededRng) -> (Tensor, DropoutCache) {
        if mode == Mode::Infer || self.rate == 0.0 {
            return (x.clone(), DropoutCache { mask: None });
        }
        let keep_scale = 1.0 / (1.0 - self.rate);
        let mut mask = Tensor::zeros(&[x.len()]);
        for m in mask.data_mut() {
            *m = if rng.uniform(0.0, 1.0) < self.rate { 0.0 } else { keep_scale };
        }
        let mut y = x.clone();
        for (v, m) in y.data_mut().iter_mut().zip(mask.data()) {
            *v *= m;
        }
        (y, DropoutCache { mask: Some(mask) })
    }

    pub fn backward(&self, cache: &DropoutCache, upstream: &Tensor) -> Tensor {
        match &cache.mask {
            None => upstream.clone(),
            Some(mask) => {
                let mut dx = upstream.clone();
                for (v, m) in dx.data_mut().iter_mut().zip(mask.data()) {
                    *v *= m;
                }
                dx
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Gaussian noise

/// Adds zero-mean Gaussian noise during training; identity at inference.
#[derive(Debug, Clone)]
pub struct GaussianNoise {
    pub stddev: f64,
}

impl GaussianNoise {
    pub fn new(stddev: f64) -> Self {
        assert!(stddev >= 0.0, "noise stddev must be nonnegative");
        GaussianNoise { stddev }
    }

    pub fn forward(&self, x: &Tensor, mode: Mode, rng: &mut SeededRng) -> Tensor {
        if mode == Mode::Infer || self.stddev == 0.0 {
            return x.clone();
        }
        let mut y = x.clone();
        for v in y.data_mut() {
            *v += self.stddev * rng.normal();
        }
        y
    }

    /// Additive noise passes gradients through unchanged.
    pub fn backward(&self, upstream: &Tensor) -> Tensor {
        upstream.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Stream;

    fn rng(seed: u64) -> SeededRng {
        SeededRng::for_stream(seed, Stream::Init)
    }

    fn tensor2(rows: usize, cols: usize, vals: &[f64]) -> Tensor {
        Tensor::from_vec(&[rows, cols], vals.to_vec()).unwrap()
    }

    #[test]
    fn embedding_gathers_rows() {
        let mut table = Tensor::zeros(&[3, 2]);
        table.row_mut(2).copy_from_slice(&[1.0, -1.0]);
        let emb = Embedding { table };
        let out = emb.forward(&[0]).unwrap();
        assert_eq!(out.row(0), &[0.0, 0.0]);
        let out = emb.forward(&[2, 2]).unwrap();
        assert_eq!(out.row(0), out.row(1));
    }

    #[test]
    fn embedding_rejects_out_of_bounds() {
        let emb = Embedding { table: Tensor::zeros(&[3, 2]) };
        assert!(emb.forward(&[3]).is_err());
    }

    #[test]
    fn embedding_backward_routes_rows() {
        let emb = Embedding { table: Tensor::zeros(&[5, 3]) };
        let upstream = tensor2(2, 3, &[1.0; 6]);
        let mut grad = Tensor::zeros(&[5, 3]);
        emb.backward(&[2, 3], &upstream, &mut grad);
        assert_eq!(grad.row(2), &[1.0, 1.0, 1.0]);
        assert_eq!(grad.row(3), &[1.0, 1.0, 1.0]);
        assert_eq!(grad.row(0), &[0.0, 0.0, 0.0]);
        assert_eq!(grad.row(4), &[0.0, 0.0, 0.0]);
    }

    #[test]
    fn conv_output_length() {
        let conv = Conv1d::new(3, 4, 5, &mut rng(1));
        let x = Tensor::zeros(&[10, 4]);
        let (y, _) = conv.forward(&x).unwrap();
        assert_eq!(y.shape(), &[8, 5]);
    }

    #[test]
    fn conv_zero_kernel_zero_output() {
        let conv = Conv1d { kernel: Tensor::zeros(&[3, 2, 4]), bias: Tensor::zeros(&[4]) };
        let mut x = Tensor::zeros(&[6, 2]);
        x.fill_uniform(&mut rng(2), -1.0, 1.0);
        let (y, _) = conv.forward(&x).unwrap();
        assert!(y.data().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn conv_too_short_errors() {
        let conv = Conv1d::new(3, 2, 2, &mut rng(3));
        let x = Tensor::zeros(&[2, 2]);
        assert!(conv.forward(&x).is_err());
    }

    #[test]
    fn conv_matches_reference_loops() {
        let conv = Conv1d::new(3, 4, 5, &mut rng(4));
        let mut x = Tensor::zeros(&[7, 4]);
        x.fill_uniform(&mut rng(5), -1.0, 1.0);
        let (y, _) = conv.forward(&x).unwrap();

        // Independent direct computation, different loop nesting.
        for t in 0..5 {
            for j in 0..5 {
                let mut acc = conv.bias.data()[j];
                for ki in 0..3 {
                    for a in 0..4 {
                        acc += x.row(t + ki)[a] * conv.kernel.data()[(ki * 4 + a) * 5 + j];
                    }
                }
                let expect = acc.max(0.0);
                assert!((y.row(t)[j] - expect).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn max_pool_examples() {
        let x = tensor2(3, 2, &[1.0, 4.0, 3.0, 2.0, 0.0, 0.0]);
        let (y, _) = global_max_pool(&x);
        assert_eq!(y.data(), &[3.0, 4.0]);

        let single = tensor2(1, 3, &[5.0, -1.0, 2.0]);
        let (y, _) = global_max_pool(&single);
        assert_eq!(y.data(), &[5.0, -1.0, 2.0]);
    }

    #[test]
    fn max_pool_permutation_invariant() {
        let x = tensor2(4, 2, &[0.3, -2.0, 1.5, 0.2, -0.4, 0.9, 1.5, -0.1]);
        let perm = tensor2(4, 2, &[1.5, -0.1, 0.3, -2.0, -0.4, 0.9, 1.5, 0.2]);
        assert_eq!(global_max_pool(&x).0, global_max_pool(&perm).0);
    }

    #[test]
    fn max_pool_backward_preserves_mass_and_prefers_earliest() {
        let x = tensor2(3, 2, &[2.0, 1.0, 2.0, 3.0, 0.0, 3.0]);
        let (_, cache) = global_max_pool(&x);
        let upstream = Tensor::from_vec(&[2], vec![0.7, -0.3]).unwrap();
        let dx = global_max_pool_backward(&cache, &upstream);
        // Channel 0 ties at t=0 and t=1: earliest wins.
        assert_eq!(dx.row(0)[0], 0.7);
        assert_eq!(dx.row(1)[0], 0.0);
        // Channel 1 ties at t=1 and t=2.
        assert_eq!(dx.row(1)[1], -0.3);
        let mass: f64 = dx.data().iter().sum();
        let upstream_mass: f64 = upstream.data().iter().sum();
        assert!((mass - upstream_mass).abs() < 1e-15);
    }

    #[test]
    fn dense_identity_relu_passes_positive_input() {
        let n = 3;
        let mut weight = Tensor::zeros(&[n, n]);
        for i in 0..n {
            weight.row_mut(i)[i] = 1.0;
        }
        let dense = Dense { weight, bias: Tensor::zeros(&[n]), activation: Activation::Relu };
        let x = Tensor::from_vec(&[3], vec![0.5, 1.0, 2.0]).unwrap();
        let (y, _) = dense.forward(&x);
        assert_eq!(y.data(), x.data());
    }

    #[test]
    fn dense_zero_sigmoid_is_half() {
        let dense = Dense {
            weight: Tensor::zeros(&[4, 2]),
            bias: Tensor::zeros(&[2]),
            activation: Activation::Sigmoid,
        };
        let x = Tensor::from_vec(&[4], vec![1.0, -2.0, 0.3, 0.0]).unwrap();
        let (y, _) = dense.forward(&x);
        assert_eq!(y.data(), &[0.5, 0.5]);
    }

    #[test]
    fn dense_gradient_matches_finite_differences() {
        let mut dense = Dense::new(4, 3, Activation::Sigmoid, &mut rng(6));
        let mut x = Tensor::zeros(&[4]);
        x.fill_uniform(&mut rng(7), -1.0, 1.0);
        let mut probe = Tensor::zeros(&[3]);
        probe.fill_uniform(&mut rng(8), -1.0, 1.0);

        // Objective: dot(probe, forward(x)).
        let objective = |d: &Dense, x: &Tensor| -> f64 {
            let (y, _) = d.forward(x);
            y.data().iter().zip(probe.data()).map(|(a, b)| a * b).sum()
        };

        let (_, cache) = dense.forward(&x);
        let mut gw = Tensor::zeros(&[4, 3]);
        let mut gb = Tensor::zeros(&[3]);
        let dx = dense.backward(&cache, &probe, &mut gw, &mut gb);

        let h = 1e-5;
        for i in 0..dense.weight.len() {
            let orig = dense.weight.data()[i];
            dense.weight.data_mut()[i] = orig + h;
            let up = objective(&dense, &x);
            dense.weight.data_mut()[i] = orig - h;
            let down = objective(&dense, &x);
            dense.weight.data_mut()[i] = orig;
            let numeric = (up - down) / (2.0 * h);
            let analytic = gw.data()[i];
            let denom = analytic.abs().max(numeric.abs()).max(1e-8);
            assert!((analytic - numeric).abs() / denom < 1e-4, "weight {i}");
        }
        for i in 0..x.len() {
            let orig = x.data()[i];
            x.data_mut()[i] = orig + h;
            let up = objective(&dense, &x);
            x.data_mut()[i] = orig - h;
            let down = objective(&dense, &x);
            x.data_mut()[i] = orig;
            let numeric = (up - down) / (2.0 * h);
            let denom = dx.data()[i].abs().max(numeric.abs()).max(1e-8);
            assert!((dx.data()[i] - numeric).abs() / denom < 1e-4, "input {i}");
        }
    }

    #[test]
    fn dropout_infer_is_bitwise_identity() {
        let drop = Dropout::new(0.5);
        let mut x = Tensor::zeros(&[64]);
        x.fill_uniform(&mut rng(9), -3.0, 3.0);
        let (y, _) = drop.forward(&x, Mode::Infer, &mut rng(10));
        assert_eq!(x.data(), y.data());
    }

    #[test]
    fn dropout_rate_zero_is_identity_in_train() {
        let drop = Dropout::new(0.0);
        let mut x = Tensor::zeros(&[64]);
        x.fill_uniform(&mut rng(11), -3.0, 3.0);
        let (y, _) = drop.forward(&x, Mode::Train, &mut rng(12));
        assert_eq!(x.data(), y.data());
    }

    #[test]
    fn dropout_preserves_mean_statistically() {
        let n = 100_000;
        let drop = Dropout::new(0.5);
        let x = Tensor::from_vec(&[n], vec![1.0; n]).unwrap();
        let mut r = rng(13);
        let (y, _) = drop.forward(&x, Mode::Train, &mut r);
        let mean = y.data().iter().sum::<f64>() / n as f64;
        assert!((mean - 1.0).abs() < 0.01, "mean {mean}");
    }

    #[test]
    fn dropout_backward_reuses_mask() {
        let drop = Dropout::new(0.5);
        let x = Tensor::from_vec(&[8], vec![1.0; 8]).unwrap();
        let mut r = rng(14);
        let (y, cache) = drop.forward(&x, Mode::Train, &mut r);
        let upstream = Tensor::from_vec(&[8], vec![1.0; 8]).unwrap();
        let dx = drop.backward(&cache, &upstream);
        assert_eq!(dx.data(), y.data());
    }

    #[test]
    fn noise_stddev_zero_and_infer_are_identity() {
        let x = Tensor::from_vec(&[4], vec![1.0, -1.0, 0.25, 3.0]).unwrap();
        let silent = GaussianNoise::new(0.0);
        let a = silent.forward(&x, Mode::Train, &mut rng(15));
        assert_eq!(a.data(), x.data());
        let noisy = GaussianNoise::new(0.75);
        let b = noisy.forward(&x, Mode::Infer, &mut rng(16));
        assert_eq!(b.data(), x.data());
    }

    #[test]
    fn noise_stddev_matches_statistically() {
        let n = 100_000;
        let noise = GaussianNoise::new(0.75);
        let x = Tensor::zeros(&[n]);
        let mut r = rng(17);
        let y = noise.forward(&x, Mode::Train, &mut r);
        let mean = y.data().iter().sum::<f64>() / n as f64;
        let var = y.data().iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n as f64;
        let stddev = var.sqrt();
        assert!((stddev - 0.75).abs() / 0.75 < 0.02, "stddev {stddev}");
    }

    #[test]
    fn train_mode_is_reproducible_with_fixed_stream() {
        let drop = Dropout::new(0.3);
        let mut x = Tensor::zeros(&[32]);
        x.fill_uniform(&mut rng(18), -1.0, 1.0);
        let (a, _) = drop.forward(&x, Mode::Train, &mut rng(19));
        let (b, _) = drop.forward(&x, Mode::Train, &mut rng(19));
        assert_eq!(a.data(), b.data());
    }
}
