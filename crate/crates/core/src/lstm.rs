//! Bidirectional LSTM with backpropagation through time.
//!
//! Standard gate equations: sigmoid input/forget/output gates, tanh
//! candidate and cell activation. The two directions hold independent
//! parameters; per-timestep outputs are concatenated, forward half first.

use crate::rng::SeededRng;
use crate::tensor::Tensor;

fn sigmoid(x: f64) -> f64 {
    crate::layers::sigmoid(x)
}

/// Parameters for one scan direction. Gate blocks are laid out
/// `[input | forget | candidate | output]` along the `4H` axis.
#[derive(Debug, Clone)]
pub struct LstmDirection {
    /// `[in, 4H]`.
    pub w_x: Tensor,
    /// `[H, 4H]`.
    pub w_h: Tensor,
    /// `[4H]`.
    pub bias: Tensor,
}

impl LstmDirection {
    fn new(in_dim: usize, hidden: usize, rng: &mut SeededRng) -> Self {
        let gates = 4 * hidden;
        let limit_x = (6.0 / (in_dim + gates) as f64).sqrt();
        let limit_h = (6.0 / (hidden + gates) as f64).sqrt();
        let mut w_x = Tensor::zeros(&[in_dim, gates]);
        w_x.fill_uniform(rng, -limit_x, limit_x);
        let mut w_h = Tensor::zeros(&[hidden, gates]);
        w_h.fill_uniform(rng, -limit_h, limit_h);
        let mut bias = Tensor::zeros(&[gates]);
        // Forget gate opens at init so early gradients reach back in time.
        bias.data_mut()[hidden..2 * hidden].fill(1.0);
        LstmDirection { w_x, w_h, bias }
    }
}

#[derive(Debug, Clone)]
pub struct BiLstm {
    pub fwd: LstmDirection,
    pub bwd: LstmDirection,
}

/// Per-direction activations indexed by original timestep.
struct DirectionCache {
    i: Vec<f64>,
    f: Vec<f64>,
    g: Vec<f64>,
    o: Vec<f64>,
    c: Vec<f64>,
    tanh_c: Vec<f64>,
    h: Vec<f64>,
}

pub struct BiLstmCache {
    input: Tensor,
    fwd: DirectionCache,
    bwd: DirectionCache,
}

/// Gradient accumulators for one direction, shapes mirror the parameters.
pub struct LstmDirectionGrads<'a> {
    pub w_x: &'a mut Tensor,
    pub w_h: &'a mut Tensor,
    pub bias: &'a mut Tensor,
}

impl BiLstm {
    pub fn new(in_dim: usize, hidden: usize, rng: &mut SeededRng) -> Self {
        BiLstm {
            fwd: LstmDirection::new(in_dim, hidden, rng),
            bwd: LstmDirection::new(in_dim, hidden, rng),
        }
    }

    pub fn in_dim(&self) -> usize {
        self.fwd.w_x.rows()
    }

    pub fn hidden(&self) -> usize {
        self.fwd.w_h.rows()
    }

    /// Runs both directions over `[T, in]` and concatenates per-timestep
    /// hidden states into `[T, 2H]`, forward half first.
    pub fn forward(&self, x: &Tensor) -> (Tensor, BiLstmCache) {
        let (t_len, in_dim) = (x.rows(), x.cols());
        assert_eq!(in_dim, self.in_dim(), "lstm input width");
        assert!(t_len >= 1, "lstm needs at least one timestep");
        let hidden = self.hidden();

        let fwd = run_direction(&self.fwd, x, false);
        let bwd = run_direction(&self.bwd, x, true);

        let mut out = Tensor::zeros(&[t_len, 2 * hidden]);
        for t in 0..t_len {
            let row = out.row_mut(t);
            row[..hidden].copy_from_slice(&fwd.h[t * hidden..(t + 1) * hidden]);
            row[hidden..].copy_from_slice(&bwd.h[t * hidden..(t + 1) * hidden]);
        }
        (out, BiLstmCache { input: x.clone(), fwd, bwd })
    }

    /// Backpropagates `[T, 2H]` through both directions; returns the
    /// input gradient `[T, in]`.
    pub fn backward(
        &self,
        cache: &BiLstmCache,
        upstream: &Tensor,
        fwd_grads: LstmDirectionGrads,
        bwd_grads: LstmDirectionGrads,
    ) -> Tensor {
        let t_len = cache.input.rows();
        let hidden = self.hidden();
        assert_eq!(upstream.shape(), &[t_len, 2 * hidden], "lstm upstream shape");

        let mut dx = Tensor::zeros(&[t_len, self.in_dim()]);
        backward_direction(&self.fwd, &cache.fwd, &cache.input, upstream, 0, false, fwd_grads, &mut dx);
        backward_direction(&self.bwd, &cache.bwd, &cache.input, upstream, hidden, true, bwd_grads, &mut dx);
        dx
    }
}

fn run_direction(params: &LstmDirection, x: &Tensor, reverse: bool) -> DirectionCache {
    let t_len = x.rows();
    let in_dim = x.cols();
    let hidden = params.w_h.rows();
    let gates = 4 * hidden;

    let mut cache = DirectionCache {
        i: vec![0.0; t_len * hidden],
        f: vec![0.0; t_len * hidden],
        g: vec![0.0; t_len * hidden],
        o: vec![0.0; t_len * hidden],
        c: vec![0.0; t_len * hidden],
        tanh_c: vec![0.0; t_len * hidden],
        h: vec![0.0; t_len * hidden],
    };

    let mut h_prev = vec![0.0; hidden];
    let mut c_prev = vec![0.0; hidden];
    let mut z = vec![0.0; gates];

    for step in 0..t_len {
        let t = if reverse { t_len - 1 - step } else { step };
        z.copy_from_slice(params.bias.data());
        let xr = x.row(t);
        for a in 0..in_dim {
            let xv = xr[a];
            if xv == 0.0 {
                continue;
            }
            let wr = params.w_x.row(a);
            for (acc, w) in z.iter_mut().zip(wr) {
                *acc += xv * w;
            }
        }
        for a in 0..hidden {
            let hv = h_prev[a];
            if hv == 0.0 {
                continue;
            }
            let wr = params.w_h.row(a);
            for (acc, w) in z.iter_mut().zip(wr) {
                *acc += hv * w;
            }
        }

        let base = t * hidden;
        for j in 0..hidden {
            let i = sigmoid(z[j]);
            let f = sigmoid(z[hidden + j]);
            let g = z[2 * hidden + j].tanh();
            let o = sigmoid(z[3 * hidden + j]);
            let c = f * c_prev[j] + i * g;
            let tanh_c = c.tanh();
            let h = o * tanh_c;
            cache.i[base + j] = i;
            cache.f[base + j] = f;
            cache.g[base + j] = g;
            cache.o[base + j] = o;
            cache.c[base + j] = c;
            cache.tanh_c[base + j] = tanh_c;
            cache.h[base + j] = h;
            h_prev[j] = h;
            c_prev[j] = c;
        }
    }
    cache
}

#[allow(clippy::too_many_arguments)]
fn backward_direction(
    params: &LstmDirection,
    cache: &DirectionCache,
    x: &Tensor,
    upstream: &Tensor,
    upstream_offset: usize,
    reverse: bool,
    grads: LstmDirectionGrads,
    dx: &mut Tensor,
) {
    let t_len = x.rows();
    let in_dim = x.cols();
    let hidden = params.w_h.rows();
    let gates = 4 * hidden;

    let mut dh_carry = vec![0.0; hidden];
    let mut dc_carry = vec![0.0; hidden];
    let mut dz = vec![0.0; gates];

    // Visit timesteps in the reverse of the forward scan order.
    for step in (0..t_len).rev() {
        let t = if reverse { t_len - 1 - step } else { step };
        let prev_t = if step > 0 {
            Some(if reverse { t_len - step } else { step - 1 })
        } else {
            None
        };
        let base = t * hidden;

        for j in 0..hidden {
            let i = cache.i[base + j];
            let f = cache.f[base + j];
            let g = cache.g[base + j];
            let o = cache.o[base + j];
            let tanh_c = cache.tanh_c[base + j];
            let c_prev = prev_t.map_or(0.0, |p| cache.c[p * hidden + j]);

            let dh = upstream.row(t)[upstream_offset + j] + dh_carry[j];
            let dc = dh * o * (1.0 - tanh_c * tanh_c) + dc_carry[j];

            dz[j] = dc * g * i * (1.0 - i);
            dz[hidden + j] = dc * c_prev * f * (1.0 - f);
            dz[2 * hidden + j] = dc * i * (1.0 - g * g);
            dz[3 * hidden + j] = dh * tanh_c * o * (1.0 - o);

            dc_carry[j] = dc * f;
        }

        for (gb, d) in grads.bias.data_mut().iter_mut().zip(&dz) {
            *gb += d;
        }

        let xr = x.row(t);
        let dxr = dx.row_mut(t);
        for a in 0..in_dim {
            let xv = xr[a];
            let gw = grads.w_x.row_mut(a);
            let wr = params.w_x.row(a);
            let mut acc = 0.0;
            for j in 0..gates {
                gw[j] += xv * dz[j];
                acc += wr[j] * dz[j];
            }
            dxr[a] += acc;
        }

        for a in 0..hidden {
            let hv = prev_t.map_or(0.0, |p| cache.h[p * hidden + a]);
            let gw = grads.w_h.row_mut(a);
            let wr = params.w_h.row(a);
            let mut acc = 0.0;
            for j in 0..gates {
                gw[j] += hv * dz[j];
                acc += wr[j] * dz[j];
            }
            dh_carry[a] = acc;
        }
    }
}
