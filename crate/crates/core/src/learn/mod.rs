//! Choosing a parameterization by cluster separation, and classifying
//! canonical contours.

mod grid;
mod knn;
mod logistic;
mod split;

pub use grid::{grid_search, GridCell, GridResult, GridSpec};
pub use knn::knn_classify;
pub use logistic::{
    features, fit, logistic_train, loss_and_gradient, LogisticModel, LogisticOptions, StepRule,
};
pub use split::{split_dataset, SplitSpec};

use crate::error::{Error, Result};
use crate::geometry::Contour;
use crate::metric::LabeledDataset;
use crate::normalize::{apply_plan, NormalizationPlan};
use crate::reparam::{canonical_resample, ParamFamily};

/// Normalizes with `plan`, then resamples with `fam`.
pub fn canonicalize(
    c: &Contour,
    plan: &NormalizationPlan,
    fam: &ParamFamily,
    smoothing: f64,
) -> Result<Contour> {
    let c = apply_plan(c, plan)?;
    canonical_resample(&c, fam, smoothing).map_err(|e| Error::Step {
        step: "reparameterize",
        source: Box::new(e),
    })
}

pub fn canonicalize_dataset(
    d: &LabeledDataset,
    plan: &NormalizationPlan,
    fam: &ParamFamily,
    smoothing: f64,
) -> Result<LabeledDataset> {
    d.try_map(|c| canonicalize(c, plan, fam, smoothing))
}

/// Fraction of positions where `pred` equals `truth`.
pub fn accuracy(truth: &[usize], pred: &[usize]) -> Result<f64> {
    if truth.len() != pred.len() {
        return Err(Error::LengthMismatch(truth.len(), pred.len()));
    }
    if truth.is_empty() {
        return Err(Error::InvalidDataset("accuracy of an empty set".into()));
    }
    let hits = truth.iter().zip(pred).filter(|(a, b)| a == b).count();
    Ok(hits as f64 / truth.len() as f64)
}
