use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::metric::{dunn_index, LabeledDataset};
use crate::normalize::{apply_plan, NormalizationPlan};
use crate::reparam::{reparameterize, reference_point, Lambda, ParamFamily};

/// Axes of a search over `(lambda, n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    pub lambdas: Vec<Lambda>,
    pub sectors: Vec<usize>,
    /// Nominal sample count. A cell with `n` sectors uses the largest
    /// multiple of `n` not above it.
    pub samples: usize,
}

impl GridSpec {
    pub fn validate(&self) -> Result<()> {
        if self.lambdas.is_empty() || self.sectors.is_empty() {
            return Err(Error::InvalidFamily("grid axes must be nonempty".into()));
        }
        let max_n = self.sectors.iter().copied().max().unwrap_or(0);
        if self.samples < 3 || self.samples < max_n {
            return Err(Error::InvalidFamily(format!(
                "grid sample count {} is below 3 or below the largest sector count {max_n}",
                self.samples
            )));
        }
        for &lam in &self.lambdas {
            ParamFamily::new(lam, 0, self.samples)?;
        }
        Ok(())
    }

    pub fn samples_for(&self, sectors: usize) -> usize {
        if sectors == 0 {
            self.samples
        } else {
            self.samples - self.samples % sectors
        }
    }

    pub fn family(&self, lambda: Lambda, sectors: usize) -> Result<ParamFamily> {
        ParamFamily::new(lambda, sectors, self.samples_for(sectors))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridCell {
    pub lambda: Lambda,
    pub sectors: usize,
    pub samples: usize,
    /// Dunn index, or the message of the error that stopped the cell.
    pub outcome: std::result::Result<f64, String>,
}

/// Dunn index per grid cell, stored row-major with one row per sector
/// count and one column per lambda.
#[derive(Debug, Clone, PartialEq)]
pub struct GridResult {
    pub lambdas: Vec<Lambda>,
    pub sectors: Vec<usize>,
    pub cells: Vec<GridCell>,
}

impl GridResult {
    pub fn cell(&self, row: usize, col: usize) -> &GridCell {
        &self.cells[row * self.lambdas.len() + col]
    }

    /// Best successful cell. Ties prefer the larger lambda, then the
    /// smaller sector count.
    pub fn argmax(&self) -> Option<&GridCell> {
        self.cells
            .iter()
            .filter(|c| c.outcome.is_ok())
            .max_by(|a, b| {
                let (va, vb) = (a.outcome.as_ref().unwrap(), b.outcome.as_ref().unwrap());
                va.total_cmp(vb)
                    .then(a.lambda.total_cmp(b.lambda))
                    .then(b.sectors.cmp(&a.sectors))
            })
    }
}

/// Normalizes every contour with `plan`, then evaluates the Dunn index of
/// the dataset resampled with each `(lambda, n)` in `grid`.
///
/// A failing cell is recorded and does not stop the search. Normalization
/// failures are fatal because they affect every cell.
pub fn grid_search(
    raw: &LabeledDataset,
    plan: &NormalizationPlan,
    grid: &GridSpec,
    smoothing: f64,
) -> Result<GridResult> {
    grid.validate()?;
    let normalized = raw.try_map(|c| apply_plan(c, plan))?;
    let needs_reference = grid.sectors.iter().any(|&n| n > 0);
    let references = if needs_reference {
        normalized
            .contours
            .par_iter()
            .map(|c| reference_point(c).map(Some).map_err(|e| e.to_string()))
            .collect::<Vec<_>>()
    } else {
        vec![Ok(None); normalized.len()]
    };

    let coords: Vec<(usize, Lambda)> = grid
        .sectors
        .iter()
        .flat_map(|&n| grid.lambdas.iter().map(move |&l| (n, l)))
        .collect();
    let cells = coords
        .par_iter()
        .map(|&(sectors, lambda)| {
            let samples = grid.samples_for(sectors);
            let outcome = evaluate_cell(&normalized, &references, grid, lambda, sectors, smoothing);
            if let Err(msg) = &outcome {
                log::warn!("grid cell n={sectors} lambda={lambda} failed: {msg}");
            }
            GridCell {
                lambda,
                sectors,
                samples,
                outcome,
            }
        })
        .collect();
    Ok(GridResult {
        lambdas: grid.lambdas.clone(),
        sectors: grid.sectors.clone(),
        cells,
    })
}

fn evaluate_cell(
    normalized: &LabeledDataset,
    references: &[std::result::Result<Option<crate::point::Point>, String>],
    grid: &GridSpec,
    lambda: Lambda,
    sectors: usize,
    smoothing: f64,
) -> std::result::Result<f64, String> {
    let fam = grid.family(lambda, sectors).map_err(|e| e.to_string())?;
    let contours = normalized
        .contours
        .par_iter()
        .zip(references)
        .zip(&normalized.ids)
        .map(|((c, r), id)| {
            let r = r.clone().map_err(|e| format!("{id}: {e}"))?;
            reparameterize(c, &fam, r, smoothing)
                .map(|res| res.contour)
                .map_err(|e| format!("{id}: {e}"))
        })
        .collect::<std::result::Result<Vec<_>, String>>()?;
    let resampled = LabeledDataset {
        contours,
        ..normalized.clone()
    };
    dunn_index(&resampled).map_err(|e| e.to_string())
}
