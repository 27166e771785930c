mod common;

use std::f64::consts::PI;

use common::*;
use shapesection::geometry::{signed_area, Contour};
use shapesection::ingest::read_contour_csv;

fn stdout(o: &std::process::Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn extract_disks() {
    let dir = tempfile::tempdir().unwrap();
    let radii = [50.0, 60.0, 70.0];
    let manifest = write_disks(dir.path(), &radii);
    let out = dir.path().join("out");
    let o = run(&["extract", "--manifest", manifest.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o).lines().count(), 3);
    for (i, r) in radii.iter().enumerate() {
        let c = read_contour_csv(&out.join(format!("contours/img/disk{i}.csv"))).unwrap();
        Contour::new_simple(c.points().to_vec()).unwrap();
        let area = signed_area(&c).abs();
        let disk = PI * r * r;
        assert!((area - disk).abs() < 0.02 * disk, "radius {r}: area {area} vs {disk}");
    }
    // The written manifest loads the extracted contours directly.
    let o = run(&[
        "pipeline",
        "--manifest",
        out.join("manifest.csv").to_str().unwrap(),
        "--out",
        dir.path().join("p").to_str().unwrap(),
    ]);
    // A single class has no Dunn index; that is an input problem.
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("at least 2 classes"));
    assert!(dir.path().join("p/distmat.csv").exists());
}

#[test]
fn extract_continues_past_unreadable_files() {
    let dir = tempfile::tempdir().unwrap();
    write_disks(dir.path(), &[15.0, 25.0]);
    let manifest = write_manifest(
        dir.path(),
        &[
            ("img/disk0.pgm".into(), 0, "disk"),
            ("img/missing.pgm".into(), 0, "disk"),
            ("img/disk1.pgm".into(), 1, "big"),
        ],
    );
    let out = dir.path().join("out");
    let o = run(&["extract", "--manifest", manifest.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(out.join("contours/img/disk0.csv").exists());
    assert!(out.join("contours/img/disk1.csv").exists());
    assert!(stdout(&o).contains("img/missing.pgm: failed"));
}

#[test]
fn identity_dataset_is_degenerate() {
    let dir = tempfile::tempdir().unwrap();
    let c = shapesection::synth::ellipse(2.0, 1.0, 90);
    let set: Vec<_> = (0..6).map(|i| (c.clone(), i % 2)).collect();
    let manifest = write_contours(dir.path(), &set);
    let o = run(&[
        "pipeline",
        "--manifest",
        manifest.to_str().unwrap(),
        "--out",
        dir.path().join("out").to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("intra-class diameter"));
}

#[test]
fn pipeline_outputs_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = write_contours(dir.path(), &circles_and_squares(5, 3));
    let config = dir.path().join("run.conf");
    std::fs::write(
        &config,
        "manifest = manifest.csv\nfamily.lambda = 1000\nfamily.sectors = 3\nfamily.samples = 300\n",
    )
    .unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    for out in [&a, &b] {
        let o = run(&["pipeline", "--config", config.to_str().unwrap(), "--out", out.to_str().unwrap()]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let ha = tree_hashes(&a);
    assert_eq!(ha, tree_hashes(&b));
    assert_eq!(ha.iter().filter(|(p, _)| p.starts_with("contours")).count(), 10);

    let dm = std::fs::read_to_string(a.join("distmat.csv")).unwrap();
    let rows: Vec<Vec<f64>> = dm
        .lines()
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 10);
    for i in 0..10 {
        assert_eq!(rows[i][i], 0.0);
        for j in 0..10 {
            assert_eq!(rows[i][j], rows[j][i]);
        }
    }
    let dunn = std::fs::read_to_string(a.join("dunn.txt")).unwrap();
    let value: f64 = dunn.split_whitespace().nth(2).unwrap().parse().unwrap();
    assert!(value > 1.0, "{dunn}");
    let c = read_contour_csv(&a.join("contours/shapes/circle_000.csv")).unwrap();
    assert_eq!(c.len(), 300);
    let _ = manifest;
}

#[test]
fn classify_separable_shapes() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = write_contours(dir.path(), &circles_and_squares(10, 11));
    let config = dir.path().join("run.conf");
    std::fs::write(&config, "split.train_per_class = 6\nfamily.samples = 200\nknn.k = 3\n").unwrap();
    let out = dir.path().join("out");
    let o = run(&[
        "classify",
        "--config",
        config.to_str().unwrap(),
        "--manifest",
        manifest.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let accs: Vec<f64> = text
        .lines()
        .map(|l| l.rsplit(' ').next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(accs, vec![1.0, 1.0], "{text}");
    for clf in ["knn", "logistic"] {
        let p = std::fs::read_to_string(out.join(clf).join("predictions.csv")).unwrap();
        let mut lines = p.lines();
        assert_eq!(lines.next(), Some("path,true,pred"));
        assert_eq!(lines.count(), 8);
    }
}

#[test]
fn gridsearch_table() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = write_contours(dir.path(), &circles_and_squares(4, 5));
    let config = dir.path().join("run.conf");
    std::fs::write(
        &config,
        format!(
            "manifest = {}\ngrid.lambdas = 1, inf\ngrid.sectors = 0, 3, 5\ngrid.samples = 200\n",
            manifest.display()
        ),
    )
    .unwrap();
    let out = dir.path().join("out");
    let o = run(&["gridsearch", "--config", config.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let grid = std::fs::read_to_string(out.join("grid.csv")).unwrap();
    let lines: Vec<&str> = grid.lines().collect();
    assert_eq!(lines[0], "n,1,inf");
    assert_eq!(lines.len(), 4);
    for l in &lines[1..] {
        for v in l.split(',').skip(1) {
            assert!(v.parse::<f64>().unwrap() > 1.0, "{l}");
        }
    }
    assert!(stdout(&o).lines().last().unwrap().starts_with("argmax n = "));
}

#[test]
fn bad_config_names_the_key() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("run.conf");
    std::fs::write(&config, "plan.rotate = ellipse_axes\nplan.rotation = none\n").unwrap();
    let o = run(&["pipeline", "--config", config.to_str().unwrap(), "--out", "unused"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("plan.rotation"));

    let o = run(&["pipeline", "--out", "unused"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("manifest"));

    let o = run(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(1));
}
