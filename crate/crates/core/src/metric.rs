//! Point-by-point L2 distance between resampled contours, class centroids
//! and the Dunn cluster-separation index.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::Contour;
use crate::point::Point;

/// Contours with integer class labels in `[0, class_count)`.
#[derive(Debug, Clone)]
pub struct LabeledDataset {
    pub contours: Vec<Contour>,
    pub labels: Vec<usize>,
    pub class_count: usize,
    /// Per-sample identifier, typically the source path.
    pub ids: Vec<String>,
    pub class_names: Vec<String>,
}

impl LabeledDataset {
    pub fn new(contours: Vec<Contour>, labels: Vec<usize>, class_count: usize) -> Result<Self> {
        if contours.len() != labels.len() {
            return Err(Error::LengthMismatch(contours.len(), labels.len()));
        }
        if let Some(&bad) = labels.iter().find(|&&l| l >= class_count) {
            return Err(Error::InvalidDataset(format!(
                "label {bad} out of range for {class_count} classes"
            )));
        }
        let ids = (0..contours.len()).map(|i| i.to_string()).collect();
        let class_names = (0..class_count).map(|k| k.to_string()).collect();
        Ok(LabeledDataset {
            contours,
            labels,
            class_count,
            ids,
            class_names,
        })
    }

    pub fn with_ids(mut self, ids: Vec<String>) -> Result<Self> {
        if ids.len() != self.contours.len() {
            return Err(Error::LengthMismatch(self.contours.len(), ids.len()));
        }
        self.ids = ids;
        Ok(self)
    }

    pub fn with_class_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.class_count {
            return Err(Error::LengthMismatch(self.class_count, names.len()));
        }
        self.class_names = names;
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.contours.len()
    }

    pub fn is_empty(&self) -> bool {
        self.contours.is_empty()
    }

    /// Indices of the members of class `k`, in dataset order.
    pub fn members(&self, k: usize) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.labels[i] == k).collect()
    }

    /// The samples at `indices`, keeping class ids and names.
    pub fn subset(&self, indices: &[usize]) -> Self {
        LabeledDataset {
            contours: indices.iter().map(|&i| self.contours[i].clone()).collect(),
            labels: indices.iter().map(|&i| self.labels[i]).collect(),
            class_count: self.class_count,
            ids: indices.iter().map(|&i| self.ids[i].clone()).collect(),
            class_names: self.class_names.clone(),
        }
    }

    /// Applies `f` to every contour in parallel. The first failure in
    /// dataset order is returned, tagged with the sample id.
    pub fn try_map<F>(&self, f: F) -> Result<Self>
    where
        F: Fn(&Contour) -> Result<Contour> + Sync,
    {
        let mapped: Vec<Result<Contour>> = self.contours.par_iter().map(&f).collect();
        let mut contours = Vec::with_capacity(mapped.len());
        for (i, r) in mapped.into_iter().enumerate() {
            contours.push(r.map_err(|e| Error::Sample {
                id: self.ids[i].clone(),
                source: Box::new(e),
            })?);
        }
        Ok(LabeledDataset {
            contours,
            labels: self.labels.clone(),
            class_count: self.class_count,
            ids: self.ids.clone(),
            class_names: self.class_names.clone(),
        })
    }

    /// Common vertex count, or an error if contours differ.
    pub fn sample_count(&self) -> Result<usize> {
        let n = self.contours.first().map_or(0, Contour::len);
        for c in &self.contours {
            if c.len() != n {
                return Err(Error::LengthMismatch(n, c.len()));
            }
        }
        Ok(n)
    }
}

/// `sqrt((1/N) sum_i |a_i - b_i|^2)`.
///
/// Differences are rescaled by their largest component before squaring, so
/// the result is zero only for vertex-wise equal contours.
pub fn l2_distance(a: &Contour, b: &Contour) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    let (a, b) = (a.points(), b.points());
    let big = a
        .iter()
        .zip(b)
        .map(|(p, q)| (p.x - q.x).abs().max((p.y - q.y).abs()))
        .fold(0.0, f64::max);
    if big == 0.0 || !big.is_finite() {
        return Ok(big);
    }
    let sum: f64 = a.iter().zip(b).map(|(p, q)| ((*p - *q) / big).norm_sq()).sum();
    Ok(big * (sum / a.len() as f64).sqrt())
}

/// Symmetric matrix of pairwise distances, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    size: usize,
    data: Vec<f64>,
}

impl DistanceMatrix {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.size + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.size..(i + 1) * self.size]
    }
}

pub fn distance_matrix(contours: &[Contour]) -> Result<DistanceMatrix> {
    let size = contours.len();
    if let Some(first) = contours.first() {
        if let Some(bad) = contours.iter().find(|c| c.len() != first.len()) {
            return Err(Error::LengthMismatch(first.len(), bad.len()));
        }
    }
    let upper: Vec<Vec<f64>> = (0..size)
        .into_par_iter()
        .map(|i| {
            (i + 1..size)
                .map(|j| l2_distance(&contours[i], &contours[j]).unwrap())
                .collect()
        })
        .collect();
    let mut data = vec![0.0; size * size];
    for (i, row) in upper.iter().enumerate() {
        for (off, &d) in row.iter().enumerate() {
            let j = i + 1 + off;
            data[i * size + j] = d;
            data[j * size + i] = d;
        }
    }
    Ok(DistanceMatrix { size, data })
}

/// Vertex-wise mean of the members of class `k`.
pub fn class_centroid(d: &LabeledDataset, k: usize) -> Result<Contour> {
    let members = d.members(k);
    if members.is_empty() {
        return Err(Error::EmptyClass(k));
    }
    let n = d.contours[members[0]].len();
    let mut acc = vec![Point::ORIGIN; n];
    for &i in &members {
        let c = &d.contours[i];
        if c.len() != n {
            return Err(Error::LengthMismatch(n, c.len()));
        }
        for (a, p) in acc.iter_mut().zip(c.points()) {
            *a += *p;
        }
    }
    let m = members.len() as f64;
    Ok(Contour::from_raw(acc.into_iter().map(|p| p / m).collect()))
}

/// Parts of the Dunn index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DunnIndex {
    /// Smallest distance between two class centroids.
    pub inter: f64,
    /// Largest distance between two members of the same class.
    pub intra: f64,
    pub value: f64,
}

pub fn dunn_index(d: &LabeledDataset) -> Result<f64> {
    Ok(dunn_components(d)?.value)
}

pub fn dunn_components(d: &LabeledDataset) -> Result<DunnIndex> {
    if d.class_count < 2 {
        return Err(Error::TooFewClasses(d.class_count));
    }
    d.sample_count()?;
    let groups: Vec<Vec<usize>> = (0..d.class_count).map(|k| d.members(k)).collect();
    for (k, g) in groups.iter().enumerate() {
        if g.len() < 2 {
            return Err(Error::TooFewMembers(k));
        }
    }
    let centroids = (0..d.class_count)
        .into_par_iter()
        .map(|k| class_centroid(d, k))
        .collect::<Result<Vec<_>>>()?;

    let mut inter = f64::INFINITY;
    for a in 0..centroids.len() {
        for b in a + 1..centroids.len() {
            inter = inter.min(l2_distance(&centroids[a], &centroids[b])?);
        }
    }

    let intra = groups
        .par_iter()
        .map(|g| {
            let mut diam: f64 = 0.0;
            for (x, &i) in g.iter().enumerate() {
                for &j in &g[x + 1..] {
                    let dist = l2_distance(&d.contours[i], &d.contours[j]).unwrap();
                    diam = diam.max(dist);
                }
            }
            diam
        })
        .reduce(|| 0.0, f64::max);
    if intra <= 0.0 {
        return Err(Error::DegenerateClustering);
    }
    Ok(DunnIndex {
        inter,
        intra,
        value: inter / intra,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_contour(rng: &mut ChaCha8Rng, n: usize) -> Contour {
        Contour::from_raw(
            (0..n)
                .map(|_| Point::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect(),
        )
    }

    #[test]
    fn distance_examples() {
        let c = synth::regular_polygon(64, 1.0, Point::ORIGIN);
        assert_eq!(l2_distance(&c, &c).unwrap(), 0.0);
        let moved = c.translated(Point::new(3.0, 0.0));
        assert!((l2_distance(&c, &moved).unwrap() - 3.0).abs() < 1e-9);

        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let a = random_contour(&mut rng, 50);
        let b = random_contour(&mut rng, 50);
        let mut s = 0.0;
        for i in 0..50 {
            let dx = a.points()[i].x - b.points()[i].x;
            let dy = a.points()[i].y - b.points()[i].y;
            s += dx * dx + dy * dy;
        }
        let oracle = (s / 50.0).sqrt();
        assert!((l2_distance(&a, &b).unwrap() - oracle).abs() < 1e-12);

        let short = random_contour(&mut rng, 49);
        assert!(matches!(
            l2_distance(&a, &short),
            Err(Error::LengthMismatch(50, 49))
        ));
    }

    #[test]
    fn matrix_examples() {
        let c = synth::regular_polygon(16, 1.0, Point::ORIGIN);
        let m = distance_matrix(std::slice::from_ref(&c)).unwrap();
        assert_eq!(m.size(), 1);
        assert_eq!(m.get(0, 0), 0.0);

        let shifted: Vec<Contour> = (0..3)
            .map(|k| c.translated(Point::new(k as f64, 0.0)))
            .collect();
        let m = distance_matrix(&shifted).unwrap();
        let expected = [[0.0, 1.0, 2.0], [1.0, 0.0, 1.0], [2.0, 1.0, 0.0]];
        for i in 0..3 {
            for j in 0..3 {
                assert!((m.get(i, j) - expected[i][j]).abs() < 1e-12);
            }
        }

        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let set: Vec<Contour> = (0..10).map(|_| random_contour(&mut rng, 30)).collect();
        let m = distance_matrix(&set).unwrap();
        for i in 0..10 {
            assert_eq!(m.get(i, i), 0.0);
            for j in 0..10 {
                assert_eq!(m.get(i, j), l2_distance(&set[i], &set[j]).unwrap());
                assert_eq!(m.get(i, j), m.get(j, i));
            }
        }
    }

    #[test]
    fn centroid_examples() {
        let c = synth::regular_polygon(16, 1.0, Point::ORIGIN);
        let d = LabeledDataset::new(vec![c.clone(), c.clone(), c.clone()], vec![0, 0, 0], 1).unwrap();
        let mean = class_centroid(&d, 0).unwrap();
        assert!(mean.points().iter().zip(c.points()).all(|(p, q)| p.dist(*q) < 1e-15));

        let sq = synth::square(Point::ORIGIN, 1.0, 2);
        let d = LabeledDataset::new(
            vec![
                sq.translated(Point::new(-1.0, 0.0)),
                sq.translated(Point::new(1.0, 0.0)),
            ],
            vec![0, 0],
            1,
        )
        .unwrap();
        let mid = class_centroid(&d, 0).unwrap();
        for (p, q) in mid.points().iter().zip(sq.points()) {
            assert!(p.dist(*q) < 1e-15);
        }

        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let set: Vec<Contour> = (0..5).map(|_| random_contour(&mut rng, 20)).collect();
        let d = LabeledDataset::new(set.clone(), vec![1; 5], 2).unwrap();
        let mean = class_centroid(&d, 1).unwrap();
        for i in 0..20 {
            let (mut sx, mut sy) = (0.0, 0.0);
            for c in &set {
                sx += c.points()[i].x;
                sy += c.points()[i].y;
            }
            assert!((mean.points()[i].x - sx / 5.0).abs() < 1e-15);
            assert!((mean.points()[i].y - sy / 5.0).abs() < 1e-15);
        }
        assert!(matches!(class_centroid(&d, 0), Err(Error::EmptyClass(0))));
    }

    #[test]
    fn dunn_examples() {
        let c = synth::regular_polygon(32, 1.0, Point::ORIGIN);
        let at = |x: f64| c.translated(Point::new(x, 0.0));

        let d = LabeledDataset::new(vec![at(0.0), at(0.0), at(1.0), at(1.0)], vec![0, 0, 1, 1], 2).unwrap();
        assert!(matches!(dunn_index(&d), Err(Error::DegenerateClustering)));

        let d = LabeledDataset::new(vec![at(0.0), at(1.0), at(5.0), at(6.0)], vec![0, 0, 1, 1], 2).unwrap();
        let parts = dunn_components(&d).unwrap();
        assert!((parts.inter - 5.0).abs() < 1e-12);
        assert!((parts.intra - 1.0).abs() < 1e-12);
        assert!((parts.value - 5.0).abs() < 1e-12);

        let lonely = LabeledDataset::new(vec![at(0.0), at(1.0), at(5.0)], vec![0, 0, 1], 2).unwrap();
        assert!(matches!(dunn_index(&lonely), Err(Error::TooFewMembers(1))));
        let single = LabeledDataset::new(vec![at(0.0), at(1.0)], vec![0, 0], 1).unwrap();
        assert!(matches!(dunn_index(&single), Err(Error::TooFewClasses(1))));
    }

    #[test]
    fn dunn_ignores_offsets_and_scale() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let set: Vec<Contour> = (0..9).map(|_| random_contour(&mut rng, 25)).collect();
        let labels = vec![0, 0, 0, 1, 1, 1, 2, 2, 2];
        let base = dunn_index(&LabeledDataset::new(set.clone(), labels.clone(), 3).unwrap()).unwrap();
        let offset = Point::new(2.5, -4.0);
        let moved: Vec<Contour> = set.iter().map(|c| c.translated(offset)).collect();
        let scaled: Vec<Contour> = set.iter().map(|c| c.scaled(3.7)).collect();
        for variant in [moved, scaled] {
            let v = dunn_index(&LabeledDataset::new(variant, labels.clone(), 3).unwrap()).unwrap();
            assert!((v - base).abs() < 1e-12 * base.max(1.0));
        }
    }

    #[test]
    fn dataset_validation() {
        let c = synth::regular_polygon(8, 1.0, Point::ORIGIN);
        assert!(LabeledDataset::new(vec![c.clone()], vec![2], 2).is_err());
        assert!(LabeledDataset::new(vec![c.clone()], vec![], 2).is_err());
        let d = LabeledDataset::new(vec![c.clone(), c], vec![1, 0], 2).unwrap();
        let s = d.subset(&[1]);
        assert_eq!(s.labels, vec![0]);
        assert_eq!(s.ids, vec!["1".to_string()]);
    }
}
