use std::sync::OnceLock;

use num_complex::Complex64;

use super::kronrod::{WGK, XGK};
use crate::exec;

const NODES: usize = 21;

/// Composite Filon-type rule on `[-half_width, half_width]` holding the
/// samples of one function, so that many transforms `int f(x) exp(ikx) dx`
/// can be taken without re-sampling `f`.
///
/// Panels are uniform and `0` is always a panel edge. On each panel `f` is
/// replaced by its degree-20 interpolant through the 21 Kronrod nodes and the
/// product with `exp(ikx)` is integrated exactly, so the panel width only has
/// to resolve `f`, not the oscillation. At `k = 0` the rule is the composite
/// Gauss-Kronrod rule.
#[derive(Debug, Clone)]
pub struct FourierRule {
    first_center: f64,
    width: f64,
    samples: Vec<[f64; NODES]>,
}

impl FourierRule {
    pub fn new(f: impl Fn(f64) -> f64 + Sync, half_width: f64, max_panel_width: f64) -> Self {
        let per_side = (half_width / max_panel_width).ceil().max(1.0) as usize;
        let width = half_width / per_side as f64;
        let panels = 2 * per_side;
        let first_center = -half_width + 0.5 * width;
        let nodes = nodes();

        let samples = exec::map_range(panels, |p| {
            let center = first_center + p as f64 * width;
            std::array::from_fn(|j| f(center + 0.5 * width * nodes[j]))
        });

        FourierRule {
            first_center,
            width,
            samples,
        }
    }

    /// Same as [`FourierRule::new`] for an even `f`, sampling only `x >= 0`.
    pub fn even(f: impl Fn(f64) -> f64 + Sync, half_width: f64, max_panel_width: f64) -> Self {
        let per_side = (half_width / max_panel_width).ceil().max(1.0) as usize;
        let width = half_width / per_side as f64;
        let nodes = nodes();
        let right: Vec<[f64; NODES]> = exec::map_range(per_side, |p| {
            let center = (p as f64 + 0.5) * width;
            std::array::from_fn(|j| f(center + 0.5 * width * nodes[j]))
        });
        // Nodes come in (-t, t) pairs, so mirroring a panel swaps each pair.
        let mirror = |panel: &[f64; NODES]| -> [f64; NODES] {
            std::array::from_fn(|j| if j == NODES - 1 { panel[j] } else { panel[j ^ 1] })
        };
        let mut samples: Vec<[f64; NODES]> = right.iter().rev().map(mirror).collect();
        samples.extend(right);
        FourierRule {
            first_center: -half_width + 0.5 * width,
            width,
            samples,
        }
    }

    pub fn panel_width(&self) -> f64 {
        self.width
    }

    /// `int f dx` by the composite Kronrod rule.
    pub fn integral(&self) -> f64 {
        let weights = kronrod_weights();
        let sum: f64 = self
            .samples
            .iter()
            .map(|panel| panel.iter().zip(weights.iter()).map(|(f, w)| f * w).sum::<f64>())
            .sum();
        0.5 * self.width * sum
    }

    /// `int f(x) exp(ikx) dx` over the sampled range.
    pub fn transform(&self, k: f64) -> Complex64 {
        let weights = oscillatory_weights(0.5 * k * self.width);
        let step = Complex64::from_polar(1.0, k * self.width);
        let mut phase = Complex64::from_polar(1.0, k * self.first_center);
        let mut total = Complex64::new(0.0, 0.0);
        for (p, panel) in self.samples.iter().enumerate() {
            // Re-anchor the phase now and then so rounding does not build up.
            if p % 64 == 0 {
                phase = Complex64::from_polar(1.0, k * (self.first_center + p as f64 * self.width));
            }
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..NODES {
                acc += weights[j] * panel[j];
            }
            total += phase * acc;
            phase *= step;
        }
        0.5 * self.width * total
    }
}

/// Kronrod nodes on `[-1, 1]`, the centre last.
fn nodes() -> [f64; NODES] {
    let mut x = [0.0; NODES];
    for j in 0..10 {
        x[2 * j] = -XGK[j];
        x[2 * j + 1] = XGK[j];
    }
    x
}

fn kronrod_weights() -> [f64; NODES] {
    let mut w = [0.0; NODES];
    for j in 0..10 {
        w[2 * j] = WGK[j];
        w[2 * j + 1] = WGK[j];
    }
    w[20] = WGK[10];
    w
}

/// Row `n` maps node values to the Legendre coefficient of `P_n` of the
/// interpolant.
fn legendre_from_nodes() -> &'static [[f64; NODES]; NODES] {
    static TABLE: OnceLock<[[f64; NODES]; NODES]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let x = nodes();
        // v[i][n] = P_n(x_i); invert by Gauss-Jordan with partial pivoting.
        let mut v = [[0.0; NODES]; NODES];
        for (i, row) in v.iter_mut().enumerate() {
            row[0] = 1.0;
            row[1] = x[i];
            for n in 1..NODES - 1 {
                row[n + 1] = ((2 * n + 1) as f64 * x[i] * row[n] - n as f64 * row[n - 1]) / (n + 1) as f64;
            }
        }
        let mut inv = [[0.0; NODES]; NODES];
        for (i, row) in inv.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        for col in 0..NODES {
            let pivot = (col..NODES)
                .max_by(|&a, &b| v[a][col].abs().total_cmp(&v[b][col].abs()))
                .unwrap();
            v.swap(col, pivot);
            inv.swap(col, pivot);
            let scale = 1.0 / v[col][col];
            for j in 0..NODES {
                v[col][j] *= scale;
                inv[col][j] *= scale;
            }
            for row in 0..NODES {
                if row != col {
                    let factor = v[row][col];
                    if factor != 0.0 {
                        for j in 0..NODES {
                            v[row][j] -= factor * v[col][j];
                            inv[row][j] -= factor * inv[col][j];
                        }
                    }
                }
            }
        }
        // inv is V^{-1}: coefficient n = sum_i inv[n][i] f(x_i).
        inv
    })
}

/// `w_i` with `int_{-1}^{1} p(t) exp(i omega t) dt = sum_i w_i p(x_i)` for
/// every polynomial `p` of degree below 21.
fn oscillatory_weights(omega: f64) -> [Complex64; NODES] {
    if omega == 0.0 {
        return kronrod_weights().map(|w| Complex64::new(w, 0.0));
    }
    let bessel = spherical_bessel(omega);
    // int P_n(t) exp(i omega t) dt = 2 i^n j_n(omega)
    let moments: [Complex64; NODES] = std::array::from_fn(|n| {
        let m = 2.0 * bessel[n];
        match n % 4 {
            0 => Complex64::new(m, 0.0),
            1 => Complex64::new(0.0, m),
            2 => Complex64::new(-m, 0.0),
            _ => Complex64::new(0.0, -m),
        }
    });
    let table = legendre_from_nodes();
    std::array::from_fn(|i| (0..NODES).map(|n| moments[n] * table[n][i]).sum())
}

/// `j_0 .. j_20` at `x != 0`.
fn spherical_bessel(x: f64) -> [f64; NODES] {
    let mut out = [0.0; NODES];
    let ax = x.abs();
    if ax < 1.0 {
        // j_n(x) = x^n / (2n+1)!! sum_m (-x^2/2)^m / (m! (2n+3)(2n+5)...(2n+2m+1))
        let mut lead = 1.0;
        for (n, slot) in out.iter_mut().enumerate() {
            if n > 0 {
                lead *= x / (2 * n + 1) as f64;
            }
            let mut term = 1.0;
            let mut sum = 1.0;
            for m in 1..30 {
                term *= -0.5 * x * x / (m as f64 * (2 * n + 2 * m + 1) as f64);
                sum += term;
                if term.abs() < 1e-17 * sum.abs() {
                    break;
                }
            }
            *slot = lead * sum;
        }
        return out;
    }
    let j0 = x.sin() / x;
    let j1 = x.sin() / (x * x) - x.cos() / x;
    if ax > NODES as f64 {
        // Upward recurrence is stable once x exceeds the order.
        out[0] = j0;
        out[1] = j1;
        for n in 1..NODES - 1 {
            out[n + 1] = (2 * n + 1) as f64 / x * out[n] - out[n - 1];
        }
        return out;
    }
    // Downward recurrence from well above the order, normalized afterwards.
    let start = NODES + 30 + ax as usize;
    let mut values = vec![0.0f64; start + 2];
    values[start] = 1e-30;
    for n in (1..=start).rev() {
        values[n - 1] = (2 * n + 1) as f64 / x * values[n] - values[n + 1];
        if values[n - 1].abs() > 1e250 {
            for v in values[n - 1..].iter_mut() {
                *v *= 1e-250;
            }
        }
    }
    out.copy_from_slice(&values[..NODES]);
    let scale = if j0.abs() > j1.abs() { j0 / out[0] } else { j1 / out[1] };
    out.map(|v| v * scale)
}
