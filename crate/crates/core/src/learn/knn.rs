use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::metric::{l2_distance, LabeledDataset};

/// Majority vote among the `k` nearest training contours.
///
/// Neighbors at equal distance are ranked by training index. A tied vote
/// goes to the class whose voters have the smallest mean distance, then to
/// the smallest class id.
pub fn knn_classify(train: &LabeledDataset, test: &LabeledDataset, k: usize) -> Result<Vec<usize>> {
    if k == 0 || k > train.len() {
        return Err(Error::InvalidDataset(format!(
            "k = {k} needs between 1 and {} training samples",
            train.len()
        )));
    }
    let classes = train.class_count.max(test.class_count);
    test.contours
        .par_iter()
        .map(|query| {
            let mut dists = train
                .contours
                .iter()
                .enumerate()
                .map(|(i, c)| Ok((l2_distance(query, c)?, i)))
                .collect::<Result<Vec<_>>>()?;
            dists.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
            let mut votes = vec![0usize; classes];
            let mut total = vec![0.0; classes];
            for &(d, i) in &dists[..k] {
                votes[train.labels[i]] += 1;
                total[train.labels[i]] += d;
            }
            let best = (0..classes)
                .filter(|&c| votes[c] > 0)
                .min_by(|&a, &b| {
                    votes[b].cmp(&votes[a]).then(
                        (total[a] / votes[a] as f64).total_cmp(&(total[b] / votes[b] as f64)),
                    )
                })
                .unwrap();
            Ok(best)
        })
        .collect()
}
