use crate::error::{Error, Result};
use crate::geometry::Contour;
use crate::metric::LabeledDataset;

/// Flattened coordinates `x0, y0, x1, y1, ...`.
pub fn features(c: &Contour) -> Vec<f64> {
    c.points().iter().flat_map(|p| [p.x, p.y]).collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StepRule {
    Fixed(f64),
    /// Armijo backtracking: halve until the loss decreases sufficiently,
    /// then try a doubled step on the next iteration.
    Backtracking { initial: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogisticOptions {
    /// Weight of `(1/2) |W|^2` added to the summed cross-entropy. The
    /// biases are not penalized.
    pub penalty: f64,
    pub iters: usize,
    pub step: StepRule,
}

impl Default for LogisticOptions {
    fn default() -> Self {
        LogisticOptions {
            penalty: 1.0,
            iters: 500,
            step: StepRule::Backtracking { initial: 1.0 },
        }
    }
}

/// Multinomial logistic regression: `p(k | x) = softmax(W x + b)_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct LogisticModel {
    pub classes: usize,
    pub dim: usize,
    /// Row-major `classes x dim`.
    pub weights: Vec<f64>,
    pub bias: Vec<f64>,
    /// Objective value after each accepted iteration.
    pub loss_history: Vec<f64>,
}

impl LogisticModel {
    pub fn probabilities(&self, x: &[f64]) -> Vec<f64> {
        let mut z = logits(&self.weights, &self.bias, self.dim, x);
        softmax_in_place(&mut z);
        z
    }

    pub fn predict(&self, x: &[f64]) -> usize {
        let z = logits(&self.weights, &self.bias, self.dim, x);
        (0..z.len())
            .max_by(|&a, &b| z[a].total_cmp(&z[b]).then(b.cmp(&a)))
            .unwrap()
    }

    pub fn predict_dataset(&self, d: &LabeledDataset) -> Vec<usize> {
        d.contours.iter().map(|c| self.predict(&features(c))).collect()
    }
}

fn logits(w: &[f64], b: &[f64], dim: usize, x: &[f64]) -> Vec<f64> {
    b.iter()
        .enumerate()
        .map(|(k, bk)| bk + w[k * dim..(k + 1) * dim].iter().zip(x).map(|(a, c)| a * c).sum::<f64>())
        .collect()
}

/// Turns logits into probabilities and returns `log sum exp`.
fn softmax_in_place(z: &mut [f64]) -> f64 {
    let m = z.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut s = 0.0;
    for v in z.iter_mut() {
        *v = (*v - m).exp();
        s += *v;
    }
    for v in z.iter_mut() {
        *v /= s;
    }
    m + s.ln()
}

/// Objective and its gradients with respect to `weights` and `bias`.
pub fn loss_and_gradient(
    x: &[Vec<f64>],
    labels: &[usize],
    classes: usize,
    weights: &[f64],
    bias: &[f64],
    penalty: f64,
) -> (f64, Vec<f64>, Vec<f64>) {
    let dim = weights.len() / classes;
    let mut gw: Vec<f64> = weights.iter().map(|w| penalty * w).collect();
    let mut gb = vec![0.0; classes];
    let mut loss = 0.5 * penalty * weights.iter().map(|w| w * w).sum::<f64>();
    for (xi, &yi) in x.iter().zip(labels) {
        let mut z = logits(weights, bias, dim, xi);
        let raw = z[yi];
        loss += softmax_in_place(&mut z) - raw;
        z[yi] -= 1.0;
        for k in 0..classes {
            gb[k] += z[k];
            let row = &mut gw[k * dim..(k + 1) * dim];
            for (g, xv) in row.iter_mut().zip(xi) {
                *g += z[k] * xv;
            }
        }
    }
    (loss, gw, gb)
}

pub fn logistic_train(train: &LabeledDataset, opts: &LogisticOptions) -> Result<LogisticModel> {
    let x: Vec<Vec<f64>> = train.contours.iter().map(features).collect();
    fit(&x, &train.labels, train.class_count, opts)
}

/// Full-batch gradient descent from zero weights.
pub fn fit(x: &[Vec<f64>], labels: &[usize], classes: usize, opts: &LogisticOptions) -> Result<LogisticModel> {
    if x.is_empty() {
        return Err(Error::InvalidDataset("no training samples".into()));
    }
    if x.len() != labels.len() {
        return Err(Error::LengthMismatch(x.len(), labels.len()));
    }
    let dim = x[0].len();
    if let Some(row) = x.iter().find(|r| r.len() != dim) {
        return Err(Error::LengthMismatch(dim, row.len()));
    }
    let mut w = vec![0.0; classes * dim];
    let mut b = vec![0.0; classes];
    let (mut loss, mut gw, mut gb) = loss_and_gradient(x, labels, classes, &w, &b, opts.penalty);
    let mut history = vec![loss];
    let mut step = match opts.step {
        StepRule::Fixed(s) | StepRule::Backtracking { initial: s } => s,
    };

    for _ in 0..opts.iters {
        let gnorm: f64 = gw.iter().chain(&gb).map(|g| g * g).sum();
        if gnorm == 0.0 {
            break;
        }
        let mut accepted = None;
        for _ in 0..80 {
            let w2: Vec<f64> = w.iter().zip(&gw).map(|(a, g)| a - step * g).collect();
            let b2: Vec<f64> = b.iter().zip(&gb).map(|(a, g)| a - step * g).collect();
            let (l2, gw2, gb2) = loss_and_gradient(x, labels, classes, &w2, &b2, opts.penalty);
            match opts.step {
                StepRule::Fixed(_) => {
                    if !l2.is_finite() {
                        return Err(Error::NonFiniteLoss);
                    }
                    accepted = Some((w2, b2, l2, gw2, gb2));
                    break;
                }
                StepRule::Backtracking { .. } => {
                    if l2.is_finite() && l2 <= loss - 1e-4 * step * gnorm {
                        accepted = Some((w2, b2, l2, gw2, gb2));
                        break;
                    }
                    step *= 0.5;
                }
            }
        }
        let Some((w2, b2, l2, gw2, gb2)) = accepted else {
            // No step decreases the loss any further.
            break;
        };
        w = w2;
        b = b2;
        loss = l2;
        gw = gw2;
        gb = gb2;
        history.push(loss);
        if matches!(opts.step, StepRule::Backtracking { .. }) {
            step *= 2.0;
        }
    }
    if !loss.is_finite() {
        return Err(Error::NonFiniteLoss);
    }
    Ok(LogisticModel {
        classes,
        dim,
        weights: w,
        bias: b,
        loss_history: history,
    })
}
