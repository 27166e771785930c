//! Reading images, tracing outlines and loading labeled contour datasets.

mod csvio;
mod manifest;
mod mask;
mod pgm;
mod trace;

pub use csvio::{format_contour_csv, parse_contour_csv, read_contour_csv, write_contour_csv};
pub use manifest::{
    load_contour, load_dataset, read_manifest, write_manifest, DatasetManifest, ManifestEntry,
};
pub use mask::{binarize, Mask};
pub use pgm::{decode_pgm, read_pgm, write_pgm, GrayImage};
pub use trace::{prune_collinear, trace_boundary};
