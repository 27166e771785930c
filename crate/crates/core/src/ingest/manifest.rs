//! Dataset manifests: `path,class_id,class_name`, one row per sample.

use std::collections::{BTreeMap, HashSet};
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::Contour;
use crate::ingest::csvio::read_contour_csv;
use crate::ingest::mask::binarize;
use crate::ingest::pgm::read_pgm;
use crate::ingest::trace::trace_boundary;
use crate::metric::LabeledDataset;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifestEntry {
    /// Path as written in the manifest.
    pub path: String,
    pub class_id: usize,
    pub class_name: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DatasetManifest {
    pub entries: Vec<ManifestEntry>,
    /// Directory that relative entry paths are resolved against.
    pub base_dir: PathBuf,
}

impl DatasetManifest {
    /// Checks unique paths, dense class ids and one name per class.
    pub fn new(entries: Vec<ManifestEntry>, base_dir: PathBuf) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut names: BTreeMap<usize, &str> = BTreeMap::new();
        for e in &entries {
            if !seen.insert(e.path.as_str()) {
                return Err(Error::InvalidDataset(format!("duplicate path {}", e.path)));
            }
            match names.get(&e.class_id) {
                Some(&n) if n != e.class_name => {
                    return Err(Error::InvalidDataset(format!(
                        "class {} is named both {n:?} and {:?}",
                        e.class_id, e.class_name
                    )))
                }
                _ => {
                    names.insert(e.class_id, &e.class_name);
                }
            }
        }
        if let Some((k, _)) = names.iter().enumerate().find(|(k, (id, _))| *k != **id) {
            return Err(Error::InvalidDataset(format!(
                "class ids must be 0..K without gaps; class {k} is missing"
            )));
        }
        Ok(DatasetManifest { entries, base_dir })
    }

    pub fn class_count(&self) -> usize {
        self.entries.iter().map(|e| e.class_id + 1).max().unwrap_or(0)
    }

    pub fn class_names(&self) -> Vec<String> {
        let mut names = vec![String::new(); self.class_count()];
        for e in &self.entries {
            names[e.class_id].clone_from(&e.class_name);
        }
        names
    }

    pub fn class_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.class_count()];
        for e in &self.entries {
            counts[e.class_id] += 1;
        }
        counts
    }

    pub fn resolve(&self, entry: &ManifestEntry) -> PathBuf {
        let p = Path::new(&entry.path);
        if p.is_absolute() {
            p.to_path_buf()
        } else {
            self.base_dir.join(p)
        }
    }
}

pub fn read_manifest(path: &Path) -> Result<DatasetManifest> {
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(file);
    let header = rdr
        .headers()
        .map_err(|e| Error::parse(path, 1, e.to_string()))?
        .clone();
    if header.iter().collect::<Vec<_>>() != ["path", "class_id", "class_name"] {
        return Err(Error::parse(path, 1, "expected header path,class_id,class_name"));
    }
    let mut entries = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let line = i + 2;
        let rec = rec.map_err(|e| Error::parse(path, line, e.to_string()))?;
        let class_id = rec[1]
            .parse()
            .map_err(|_| Error::parse(path, line, format!("bad class id {:?}", &rec[1])))?;
        entries.push(ManifestEntry {
            path: rec[0].to_string(),
            class_id,
            class_name: rec[2].to_string(),
        });
    }
    let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
    DatasetManifest::new(entries, base)
}

pub fn write_manifest(m: &DatasetManifest, path: &Path) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(|e| Error::io(path, e.into()))?;
    let io = |e: csv::Error| Error::io(path, e.into());
    w.write_record(["path", "class_id", "class_name"]).map_err(io)?;
    for e in &m.entries {
        w.write_record([e.path.as_str(), &e.class_id.to_string(), e.class_name.as_str()])
            .map_err(io)?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

/// Loads one sample: `.pgm` files are binarized and traced, anything else
/// is read as contour CSV.
pub fn load_contour(path: &Path, threshold: u8) -> Result<Contour> {
    let is_pgm = path
        .extension()
        .and_then(|e| e.to_str())
        .is_some_and(|e| e.eq_ignore_ascii_case("pgm"));
    if is_pgm {
        let img = read_pgm(path)?;
        trace_boundary(&binarize(&img, threshold)?)
    } else {
        read_contour_csv(path)
    }
}

/// Loads every manifest entry, sorted by path.
pub fn load_dataset(manifest_path: &Path, threshold: u8) -> Result<LabeledDataset> {
    let m = read_manifest(manifest_path)?;
    let mut entries = m.entries.clone();
    entries.sort_by(|a, b| a.path.cmp(&b.path));
    let counts = m.class_counts();
    if counts.windows(2).any(|w| w[0] != w[1]) {
        log::warn!("unequal class sizes in {}: {counts:?}", manifest_path.display());
    }
    let contours = entries
        .par_iter()
        .map(|e| {
            load_contour(&m.resolve(e), threshold).map_err(|err| Error::Sample {
                id: e.path.clone(),
                source: Box::new(err),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    LabeledDataset::new(contours, entries.iter().map(|e| e.class_id).collect(), m.class_count())?
        .with_ids(entries.iter().map(|e| e.path.clone()).collect())?
        .with_class_names(m.class_names())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::csvio::write_contour_csv;
    use crate::ingest::pgm::{write_pgm, GrayImage};
    use crate::point::Point;
    use crate::synth;

    fn entry(path: &str, id: usize, name: &str) -> ManifestEntry {
        ManifestEntry {
            path: path.into(),
            class_id: id,
            class_name: name.into(),
        }
    }

    #[test]
    fn validation() {
        let ok = DatasetManifest::new(vec![entry("a", 0, "x"), entry("b", 1, "y")], PathBuf::new());
        assert!(ok.is_ok());
        let dup = DatasetManifest::new(vec![entry("a", 0, "x"), entry("a", 1, "y")], PathBuf::new());
        assert!(dup.is_err());
        let gap = DatasetManifest::new(vec![entry("a", 0, "x"), entry("b", 2, "y")], PathBuf::new());
        assert!(gap.is_err());
        let names = DatasetManifest::new(vec![entry("a", 0, "x"), entry("b", 0, "y")], PathBuf::new());
        assert!(names.is_err());
    }

    #[test]
    fn loads_mixed_sources_in_path_order() {
        let dir = tempfile::tempdir().unwrap();
        let root = dir.path();
        write_contour_csv(&synth::regular_polygon(20, 3.0, Point::ORIGIN), &root.join("b.csv")).unwrap();
        write_contour_csv(&synth::square(Point::ORIGIN, 2.0, 4), &root.join("c.csv")).unwrap();
        let img = GrayImage::from_fn(40, 40, |c, r| {
            let (dx, dy) = (c as f64 - 20.0, r as f64 - 20.0);
            if dx * dx + dy * dy < 100.0 { 0 } else { 255 }
        })
        .unwrap();
        write_pgm(&img, &root.join("a.pgm")).unwrap();
        let m = DatasetManifest::new(
            vec![entry("c.csv", 1, "square"), entry("b.csv", 0, "round"), entry("a.pgm", 0, "round")],
            root.to_path_buf(),
        )
        .unwrap();
        let mpath = root.join("manifest.csv");
        write_manifest(&m, &mpath).unwrap();
        assert_eq!(read_manifest(&mpath).unwrap(), m);

        let d = load_dataset(&mpath, 128).unwrap();
        assert_eq!(d.len(), 3);
        assert_eq!(d.class_count, 2);
        assert_eq!(d.ids, vec!["a.pgm", "b.csv", "c.csv"]);
        assert_eq!(d.labels, vec![0, 0, 1]);
        assert_eq!(d.class_names, vec!["round", "square"]);
        assert!(d.contours[0].len() > 20);
    }

    #[test]
    fn missing_file_names_the_sample() {
        let dir = tempfile::tempdir().unwrap();
        let m = DatasetManifest::new(vec![entry("nope.csv", 0, "x")], dir.path().to_path_buf()).unwrap();
        let mpath = dir.path().join("m.csv");
        write_manifest(&m, &mpath).unwrap();
        let err = load_dataset(&mpath, 128).unwrap_err();
        assert!(err.to_string().contains("nope.csv"));
        assert!(!err.is_numerical());
    }

    #[test]
    fn bad_header() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("m.csv");
        std::fs::write(&p, "file,label\na,0\n").unwrap();
        assert!(matches!(read_manifest(&p), Err(Error::Parse { line: 1, .. })));
    }
}
