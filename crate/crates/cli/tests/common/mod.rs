#![allow(dead_code)]

use std::f64::consts::PI;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use shapesection::ingest::{write_contour_csv, write_pgm, GrayImage};
use shapesection::{synth, Contour, Point};

pub fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_shapesection"))
}

pub fn run(args: &[&str]) -> Output {
    let out = bin().args(args).output().expect("binary runs");
    if std::env::var_os("SHOW_CLI_OUTPUT").is_some() {
        eprintln!("{}", String::from_utf8_lossy(&out.stderr));
    }
    out
}

pub fn write_manifest(dir: &Path, rows: &[(String, usize, &str)]) -> PathBuf {
    let mut s = String::from("path,class_id,class_name\n");
    for (p, k, name) in rows {
        s.push_str(&format!("{p},{k},{name}\n"));
    }
    let path = dir.join("manifest.csv");
    std::fs::write(&path, s).unwrap();
    path
}

/// Dark disk of radius `r` on a white background.
pub fn disk_image(size: usize, r: f64) -> GrayImage {
    let c = (size as f64 - 1.0) / 2.0;
    GrayImage::from_fn(size, size, |col, row| {
        let (dx, dy) = (col as f64 - c, row as f64 - c);
        if dx * dx + dy * dy < r * r {
            20
        } else {
            235
        }
    })
    .unwrap()
}

pub fn write_disks(dir: &Path, radii: &[f64]) -> PathBuf {
    std::fs::create_dir_all(dir.join("img")).unwrap();
    let rows: Vec<(String, usize, &str)> = radii
        .iter()
        .enumerate()
        .map(|(i, &r)| {
            let rel = format!("img/disk{i}.pgm");
            write_pgm(&disk_image(2 * r as usize + 20, r), &dir.join(&rel)).unwrap();
            (rel, 0, "disk")
        })
        .collect();
    write_manifest(dir, &rows)
}

/// Circles and squares with a small smooth wobble, each under a random
/// similarity transform and start index.
pub fn circles_and_squares(per_class: usize, seed: u64) -> Vec<(Contour, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for class in 0..2 {
        for _ in 0..per_class {
            let base = if class == 0 {
                synth::regular_polygon(160, 1.0, Point::ORIGIN)
            } else {
                synth::square(Point::new(-1.0, -1.0), 2.0, 40)
            };
            let (eps, phase) = (rng.gen_range(0.0..0.02), rng.gen_range(0.0..2.0 * PI));
            let wobbled = base.map(|p| p * (1.0 + eps * (3.0 * p.angle() + phase).cos()));
            let c = wobbled
                .rotated_about(Point::ORIGIN, rng.gen_range(0.0..2.0 * PI))
                .scaled(rng.gen_range(0.5..3.0))
                .translated(Point::new(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0)))
                .with_start(rng.gen_range(0..160));
            let c = if rng.gen_bool(0.5) { c.reversed() } else { c };
            out.push((c, class));
        }
    }
    out
}

pub fn write_contours(dir: &Path, set: &[(Contour, usize)]) -> PathBuf {
    std::fs::create_dir_all(dir.join("shapes")).unwrap();
    let names = ["circle", "square"];
    let rows: Vec<(String, usize, &str)> = set
        .iter()
        .enumerate()
        .map(|(i, (c, k))| {
            let rel = format!("shapes/{}_{i:03}.csv", names[*k]);
            write_contour_csv(c, &dir.join(&rel)).unwrap();
            (rel, *k, names[*k])
        })
        .collect();
    write_manifest(dir, &rows)
}

/// SHA-256 of every file under `root`, keyed by relative path.
pub fn tree_hashes(root: &Path) -> Vec<(String, String)> {
    let mut out = Vec::new();
    let mut stack = vec![root.to_path_buf()];
    while let Some(dir) = stack.pop() {
        for entry in std::fs::read_dir(&dir).unwrap() {
            let p = entry.unwrap().path();
            if p.is_dir() {
                stack.push(p);
            } else {
                let digest = Sha256::digest(std::fs::read(&p).unwrap());
                let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
                out.push((p.strip_prefix(root).unwrap().display().to_string(), hex));
            }
        }
    }
    out.sort();
    out
}
