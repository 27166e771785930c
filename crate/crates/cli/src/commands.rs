use std::fmt::Write as _;
use std::io::Write;
use std::path::{Component, Path, PathBuf};

use rayon::prelude::*;

use shapesection::geometry::Contour;
use shapesection::ingest::{load_contour, load_dataset, read_manifest, write_contour_csv, write_manifest};
use shapesection::ingest::{DatasetManifest, ManifestEntry};
use shapesection::learn::{
    accuracy, canonicalize_dataset, grid_search, knn_classify, logistic_train, split_dataset, GridResult,
};
use shapesection::metric::{distance_matrix, dunn_components, LabeledDataset};

use crate::config::{RunConfig, Subset};
use crate::error::{CliError, CliResult};
use crate::format::{field, lambda, num};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Extract,
    Pipeline,
    Gridsearch,
    Classify,
}

pub fn run(cmd: Command, cfg: &RunConfig, stdout: &mut dyn Write) -> CliResult<()> {
    match cmd {
        Command::Extract => extract(cfg, stdout),
        Command::Pipeline => pipeline(cfg, stdout),
        Command::Gridsearch => gridsearch(cfg, stdout),
        Command::Classify => classify(cfg, stdout),
    }
}

/// Relative output path mirroring a manifest path, with a `.csv` extension.
/// Root, prefix and `..` components are dropped so the result stays inside
/// the output directory.
pub fn mirrored_csv(path: &str) -> PathBuf {
    let mut out: PathBuf = Path::new(path)
        .components()
        .filter_map(|c| match c {
            Component::Normal(s) => Some(s),
            _ => None,
        })
        .collect();
    out.set_extension("csv");
    out
}

fn write_text(path: &Path, text: &str) -> CliResult<()> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    }
    std::fs::write(path, text).map_err(|e| CliError::io(path, e))
}

fn say(stdout: &mut dyn Write, line: &str) {
    // A closed stdout should not turn a finished run into a failure.
    let _ = writeln!(stdout, "{line}");
}

fn contour_text(c: &Contour) -> String {
    let mut s = String::from("x,y\n");
    for p in c.points() {
        let _ = writeln!(s, "{},{}", num(p.x), num(p.y));
    }
    s
}

/// Traces every image in the manifest and writes one contour CSV per
/// entry, plus a manifest for the written contours.
pub fn extract(cfg: &RunConfig, stdout: &mut dyn Write) -> CliResult<()> {
    let manifest = read_manifest(cfg.require_manifest()?)?;
    let out = cfg.require_out()?;
    let mut entries = manifest.entries.clone();
    entries.sort_by(|a, b| a.path.cmp(&b.path));

    let results: Vec<CliResult<(ManifestEntry, usize)>> = entries
        .par_iter()
        .map(|e| {
            let c = load_contour(&manifest.resolve(e), cfg.threshold)?;
            let rel = Path::new("contours").join(mirrored_csv(&e.path));
            let dest = out.join(&rel);
            if let Some(dir) = dest.parent() {
                std::fs::create_dir_all(dir).map_err(|err| CliError::io(dir, err))?;
            }
            write_contour_csv(&c, &dest)?;
            let written = ManifestEntry {
                path: rel.to_string_lossy().replace('\\', "/"),
                ..e.clone()
            };
            Ok((written, c.len()))
        })
        .collect();

    let mut ok = Vec::new();
    let mut failed = 0;
    for (e, r) in entries.iter().zip(results) {
        match r {
            Ok((written, n)) => {
                say(stdout, &format!("{}: {n} vertices", e.path));
                ok.push(written);
            }
            Err(err) => {
                log::error!("{}: {err}", e.path);
                say(stdout, &format!("{}: failed: {err}", e.path));
                failed += 1;
            }
        }
    }
    match DatasetManifest::new(ok, out.to_path_buf()) {
        Ok(m) => {
            std::fs::create_dir_all(out).map_err(|e| CliError::io(out, e))?;
            write_manifest(&m, &out.join("manifest.csv"))?;
        }
        Err(e) => log::warn!("no manifest written for the extracted contours: {e}"),
    }
    if failed > 0 {
        return Err(CliError::PartialFailure {
            failed,
            total: entries.len(),
        });
    }
    Ok(())
}

fn load(cfg: &RunConfig) -> CliResult<LabeledDataset> {
    let manifest = cfg.require_manifest()?;
    let data = load_dataset(manifest, cfg.threshold)?;
    log::info!("loaded {} contours in {} classes", data.len(), data.class_count);
    Ok(match cfg.subset {
        Subset::All => data,
        Subset::Train => split_dataset(&data, cfg.split)?.0,
        Subset::Test => split_dataset(&data, cfg.split)?.1,
    })
}

fn describe(cfg: &RunConfig, data: &LabeledDataset, command: &str) -> String {
    let manifest = cfg.manifest.as_deref().unwrap_or(Path::new("")).display();
    format!(
        "command = {command}\nmanifest = {manifest}\nsubset = {}\nsamples = {}\nclasses = {}\nplan = {}\nsmoothing = {}\n",
        cfg.subset,
        data.len(),
        data.class_count,
        cfg.plan,
        num(cfg.smoothing),
    )
}

fn family_line(cfg: &RunConfig) -> String {
    let f = cfg.family;
    format!("family = lambda {} sectors {} samples {}\n", lambda(f.lambda), f.sectors, f.samples)
}

/// Normalizes and resamples the dataset, then writes the canonical
/// contours, the distance matrix and the Dunn index.
pub fn pipeline(cfg: &RunConfig, stdout: &mut dyn Write) -> CliResult<()> {
    let out = cfg.require_out()?;
    let data = load(cfg)?;
    let canon = canonicalize_dataset(&data, &cfg.plan, &cfg.family, cfg.smoothing)?;

    let texts: Vec<(PathBuf, String)> = canon
        .contours
        .par_iter()
        .zip(&canon.ids)
        .map(|(c, id)| (out.join("contours").join(mirrored_csv(id)), contour_text(c)))
        .collect();
    for (path, text) in &texts {
        write_text(path, text)?;
    }

    let mut samples = String::from("index,path,class_id,class_name\n");
    for i in 0..canon.len() {
        let k = canon.labels[i];
        let _ = writeln!(samples, "{i},{},{k},{}", field(&canon.ids[i]), field(&canon.class_names[k]));
    }
    write_text(&out.join("samples.csv"), &samples)?;

    let dm = distance_matrix(&canon.contours)?;
    let mut text = String::new();
    for i in 0..dm.size() {
        let row: Vec<String> = dm.row(i).iter().map(|&v| num(v)).collect();
        text.push_str(&row.join(","));
        text.push('\n');
    }
    write_text(&out.join("distmat.csv"), &text)?;

    let mut report = describe(cfg, &canon, "pipeline") + &family_line(cfg);
    let dunn = match dunn_components(&canon) {
        Ok(d) => d,
        Err(e) => {
            report.push_str(&format!("dunn = failed: {e}\n"));
            write_text(&out.join("report.txt"), &report)?;
            return Err(e.into());
        }
    };
    let line = format!("dunn = {} inter = {} intra = {}", num(dunn.value), num(dunn.inter), num(dunn.intra));
    write_text(&out.join("dunn.txt"), &format!("{line}\n"))?;
    report.push_str(&line);
    report.push('\n');
    write_text(&out.join("report.txt"), &report)?;
    say(stdout, &line);
    Ok(())
}

/// Table with one row per sector count and one column per lambda. Failed
/// cells read `failed`.
pub fn grid_csv(res: &GridResult) -> String {
    let mut s = String::from("n");
    for &l in &res.lambdas {
        s.push(',');
        s.push_str(&lambda(l));
    }
    s.push('\n');
    for (row, n) in res.sectors.iter().enumerate() {
        s.push_str(&n.to_string());
        for col in 0..res.lambdas.len() {
            s.push(',');
            match &res.cell(row, col).outcome {
                Ok(v) => s.push_str(&num(*v)),
                Err(_) => s.push_str("failed"),
            }
        }
        s.push('\n');
    }
    s
}

pub fn gridsearch(cfg: &RunConfig, stdout: &mut dyn Write) -> CliResult<()> {
    let out = cfg.require_out()?;
    let data = load(cfg)?;
    let grid = cfg.grid_spec();
    let res = grid_search(&data, &cfg.plan, &grid, cfg.smoothing)?;

    let table = grid_csv(&res);
    write_text(&out.join("grid.csv"), &table)?;
    let mut report = describe(cfg, &data, "gridsearch") + &format!("grid samples = {}\n", grid.samples);
    for cell in res.cells.iter() {
        if let Err(msg) = &cell.outcome {
            report.push_str(&format!(
                "failed n = {} lambda = {}: {msg}\n",
                cell.sectors,
                lambda(cell.lambda)
            ));
        }
    }
    let best = res.argmax();
    let line = match best {
        Some(c) => format!(
            "argmax n = {} lambda = {} dunn = {}",
            c.sectors,
            lambda(c.lambda),
            num(*c.outcome.as_ref().unwrap())
        ),
        None => "argmax none: every cell failed".to_string(),
    };
    report.push_str(&line);
    report.push('\n');
    write_text(&out.join("report.txt"), &report)?;
    for l in table.lines() {
        say(stdout, l);
    }
    say(stdout, &line);
    match best {
        Some(_) => Ok(()),
        None => Err(shapesection::Error::DegenerateClustering.into()),
    }
}

fn predictions_csv(test: &LabeledDataset, pred: &[usize]) -> String {
    let mut s = String::from("path,true,pred\n");
    for ((id, t), p) in test.ids.iter().zip(&test.labels).zip(pred) {
        let _ = writeln!(s, "{},{t},{p}", field(id));
    }
    s
}

/// Trains on the training split and reports test accuracy for KNN and
/// logistic regression.
pub fn classify(cfg: &RunConfig, stdout: &mut dyn Write) -> CliResult<()> {
    let out = cfg.require_out()?;
    let data = load_dataset(cfg.require_manifest()?, cfg.threshold)?;
    let (train, test) = split_dataset(&data, cfg.split)?;
    let train = canonicalize_dataset(&train, &cfg.plan, &cfg.family, cfg.smoothing)?;
    let test = canonicalize_dataset(&test, &cfg.plan, &cfg.family, cfg.smoothing)?;

    let knn = knn_classify(&train, &test, cfg.knn_k)?;
    let knn_acc = accuracy(&test.labels, &knn)?;
    write_text(&out.join("knn").join("predictions.csv"), &predictions_csv(&test, &knn))?;

    let model = logistic_train(&train, &cfg.logistic)?;
    let logit = model.predict_dataset(&test);
    let logit_acc = accuracy(&test.labels, &logit)?;
    write_text(&out.join("logistic").join("predictions.csv"), &predictions_csv(&test, &logit))?;

    let lines = [
        format!("knn k = {} accuracy = {}", cfg.knn_k, num(knn_acc)),
        format!(
            "logistic penalty = {} iterations = {} accuracy = {}",
            num(cfg.logistic.penalty),
            model.loss_history.len() - 1,
            num(logit_acc)
        ),
    ];
    let mut report = format!(
        "command = classify\nmanifest = {}\ntrain = {}\ntest = {}\nclasses = {}\nplan = {}\nsmoothing = {}\n",
        cfg.manifest.as_deref().unwrap_or(Path::new("")).display(),
        train.len(),
        test.len(),
        train.class_count,
        cfg.plan,
        num(cfg.smoothing),
    ) + &family_line(cfg);
    for l in &lines {
        report.push_str(l);
        report.push('\n');
        say(stdout, l);
    }
    write_text(&out.join("report.txt"), &report)?;
    Ok(())
}
