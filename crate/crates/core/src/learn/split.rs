use crate::error::{Error, Result};
use crate::metric::LabeledDataset;

/// Per-class train/test split by sorted sample id.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplitSpec {
    pub train_per_class: usize,
}

impl Default for SplitSpec {
    fn default() -> Self {
        SplitSpec { train_per_class: 50 }
    }
}

/// The first `train_per_class` members of each class (ordered by id) form
/// the training set; the rest form the test set. Both keep dataset order.
pub fn split_dataset(d: &LabeledDataset, spec: SplitSpec) -> Result<(LabeledDataset, LabeledDataset)> {
    let mut is_train = vec![false; d.len()];
    for k in 0..d.class_count {
        let mut members = d.members(k);
        if members.len() < spec.train_per_class {
            return Err(Error::InvalidDataset(format!(
                "class {} has {} samples, fewer than the {} requested for training",
                d.class_names[k],
                members.len(),
                spec.train_per_class
            )));
        }
        members.sort_by(|&a, &b| d.ids[a].cmp(&d.ids[b]).then(a.cmp(&b)));
        for &i in &members[..spec.train_per_class] {
            is_train[i] = true;
        }
    }
    let (train, test): (Vec<usize>, Vec<usize>) = (0..d.len()).partition(|&i| is_train[i]);
    Ok((d.subset(&train), d.subset(&test)))
}
