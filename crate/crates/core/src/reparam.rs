//! Canonical parameterizations of closed curves.
//!
//! Every family is realized as a resampling of the input polyline to `N`
//! points. A parameterization is described by a monotone cumulative weight
//! `W(s)` over the arc length `s` of the input; resampling places points at
//! the preimages of a uniform grid of weight values. Arc length uses
//! `W(s) = s`; the curvature-weighted family uses
//! `W'(s) = lambda * Length + |kappa(s)|`. The clock family cuts the curve
//! into `n` arcs subtending equal angles at an interior reference point and
//! applies the weight rule inside each arc independently.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::geometry::{self, Contour};
use crate::point::Point;

/// Minimum resolution of the arc-length resampling used to estimate
/// curvature before weighting.
pub const FINE_SAMPLES: usize = 1000;

/// Curvature weight `lambda`. `Infinite` drops the curvature term entirely
/// and reduces the family to arc-length parameterization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Lambda {
    Finite(f64),
    Infinite,
}

impl Lambda {
    pub fn is_infinite(self) -> bool {
        matches!(self, Lambda::Infinite)
    }

    /// Orders finite values numerically with `Infinite` above all of them.
    pub fn total_cmp(self, other: Lambda) -> std::cmp::Ordering {
        use std::cmp::Ordering::*;
        match (self, other) {
            (Lambda::Infinite, Lambda::Infinite) => Equal,
            (Lambda::Infinite, _) => Greater,
            (_, Lambda::Infinite) => Less,
            (Lambda::Finite(a), Lambda::Finite(b)) => a.total_cmp(&b),
        }
    }
}

impl fmt::Display for Lambda {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Lambda::Finite(v) => write!(f, "{v}"),
            Lambda::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Lambda {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        match s.to_ascii_lowercase().as_str() {
            "inf" | "+inf" | "infinity" | "+infinity" | "∞" | "+∞" => Ok(Lambda::Infinite),
            _ => {
                let v: f64 = s.parse().map_err(|_| format!("invalid lambda {s:?}"))?;
                if v.is_infinite() && v > 0.0 {
                    Ok(Lambda::Infinite)
                } else if v.is_finite() && v >= 0.0 {
                    Ok(Lambda::Finite(v))
                } else {
                    Err(format!("lambda must be nonnegative, got {s:?}"))
                }
            }
        }
    }
}

/// One member `(lambda, n)` of the curvature-weighted clock family, sampled
/// with `samples` points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamFamily {
    pub lambda: Lambda,
    /// Number of clock sectors; 0 disables the clock subdivision.
    pub sectors: usize,
    pub samples: usize,
}

impl ParamFamily {
    pub fn new(lambda: Lambda, sectors: usize, samples: usize) -> Result<Self> {
        let fam = ParamFamily {
            lambda,
            sectors,
            samples,
        };
        fam.validate()?;
        Ok(fam)
    }

    pub fn arc_length(samples: usize) -> Self {
        ParamFamily {
            lambda: Lambda::Infinite,
            sectors: 0,
            samples,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.samples < 3 {
            return Err(Error::InvalidFamily(format!(
                "samples must be at least 3, got {}",
                self.samples
            )));
        }
        if let Lambda::Finite(v) = self.lambda {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidFamily(format!(
                    "lambda must be positive, got {v}"
                )));
            }
        }
        if self.sectors > 0 && !self.samples.is_multiple_of(self.sectors) {
            return Err(Error::InvalidFamily(format!(
                "samples ({}) must be a multiple of sectors ({})",
                self.samples, self.sectors
            )));
        }
        Ok(())
    }
}

/// A resampled contour together with the monotone map `Phi(t_i)` evaluated
/// at each source vertex (plus the closing value `Phi(1) = 1`).
#[derive(Debug, Clone)]
pub struct ReparamResult {
    pub contour: Contour,
    pub phi: Vec<f64>,
}

/// Cumulative arc length at each vertex of a closed polyline.
#[derive(Debug, Clone)]
pub(crate) struct ArcTable {
    cum: Vec<f64>,
}

impl ArcTable {
    pub(crate) fn new(c: &Contour) -> Self {
        let mut cum = Vec::with_capacity(c.len() + 1);
        let mut acc = 0.0;
        cum.push(0.0);
        for len in c.edge_lengths() {
            acc += len;
            cum.push(acc);
        }
        ArcTable { cum }
    }

    pub(crate) fn total(&self) -> f64 {
        *self.cum.last().unwrap()
    }

    /// Arc length of vertex `i` (`i == N` is the closing vertex).
    pub(crate) fn at_vertex(&self, i: usize) -> f64 {
        self.cum[i]
    }

    pub(crate) fn at_edge(&self, edge: usize, frac: f64) -> f64 {
        self.cum[edge] + frac * (self.cum[edge + 1] - self.cum[edge])
    }

    /// Point at arc length `s`, clamped to `[0, Length]`.
    pub(crate) fn point_at(&self, c: &Contour, s: f64) -> Point {
        let n = c.len();
        let s = s.clamp(0.0, self.total());
        let upper = self.cum.partition_point(|&v| v <= s);
        let edge = upper.saturating_sub(1).min(n - 1);
        let len = self.cum[edge + 1] - self.cum[edge];
        let frac = if len > 0.0 {
            ((s - self.cum[edge]) / len).clamp(0.0, 1.0)
        } else {
            0.0
        };
        if frac == 0.0 {
            return c.point(edge);
        }
        c.point(edge).lerp(c.point(edge + 1), frac)
    }
}

/// Cumulative weight `W(s)` as a monotone function of arc length.
enum WeightProfile {
    Arc,
    /// Knot `j` sits at arc length `j * step`; `cum[j]` is the weight there.
    Curvature { step: f64, cum: Vec<f64> },
}

impl WeightProfile {
    fn build(c: &Contour, arc: &ArcTable, lambda: Lambda, smoothing: f64) -> Result<Self> {
        let Lambda::Finite(_) = lambda else {
            return Ok(WeightProfile::Arc);
        };
        let knots = FINE_SAMPLES.max(c.len());
        let fine = arclength_resample(c, knots);
        let fine = geometry::smooth_gaussian(&fine, smoothing);
        let cum = prefix_weights(&fine, lambda)?;
        Ok(WeightProfile::Curvature {
            step: arc.total() / knots as f64,
            cum,
        })
    }

    fn weight_at(&self, s: f64) -> f64 {
        match self {
            WeightProfile::Arc => s,
            WeightProfile::Curvature { step, cum } => {
                let x = (s / step).max(0.0);
                let j = (x.floor() as usize).min(cum.len() - 2);
                let frac = (x - j as f64).clamp(0.0, 1.0);
                cum[j] + frac * (cum[j + 1] - cum[j])
            }
        }
    }

    fn arc_at(&self, w: f64) -> f64 {
        match self {
            WeightProfile::Arc => w,
            WeightProfile::Curvature { step, cum } => {
                let upper = cum.partition_point(|&v| v <= w);
                let j = upper.saturating_sub(1).min(cum.len() - 2);
                let dw = cum[j + 1] - cum[j];
                let frac = if dw > 0.0 {
                    ((w - cum[j]) / dw).clamp(0.0, 1.0)
                } else {
                    0.0
                };
                (j as f64 + frac) * step
            }
        }
    }
}

/// Unnormalized prefix sums of `(lambda * L + |kappa_j|) * edgelen_j`, one
/// value per vertex plus the closing total.
fn prefix_weights(c: &Contour, lambda: Lambda) -> Result<Vec<f64>> {
    let edges = c.edge_lengths();
    let mut out = Vec::with_capacity(edges.len() + 1);
    out.push(0.0);
    let mut acc = 0.0;
    match lambda {
        Lambda::Infinite => {
            for len in edges {
                acc += len;
                out.push(acc);
            }
        }
        Lambda::Finite(lam) => {
            let base = lam * edges.iter().sum::<f64>();
            let kappa = geometry::discrete_curvature(c);
            for (len, k) in edges.iter().zip(kappa) {
                acc += (base + k.abs()) * len;
                out.push(acc);
            }
        }
    }
    if acc.is_nan() || acc <= 0.0 {
        return Err(Error::UndefinedWeight);
    }
    Ok(out)
}

/// Discrete `Phi_lambda(t_i)` at each vertex, normalized so the closing
/// value is 1. The returned vector has `N + 1` entries.
///
/// `Lambda::Finite(0.0)` gives the curvature-only map, which is flat along
/// straight runs.
pub fn cumulative_weight(c: &Contour, lambda: Lambda) -> Result<Vec<f64>> {
    let mut w = prefix_weights(c, lambda)?;
    let total = *w.last().unwrap();
    for v in &mut w {
        *v /= total;
    }
    *w.last_mut().unwrap() = 1.0;
    Ok(w)
}

/// `samples` points at equal arc-length spacing, starting at vertex 0.
///
/// # Panics
///
/// If `samples < 3`.
pub fn arclength_resample(c: &Contour, samples: usize) -> Contour {
    assert!(samples >= 3, "need at least 3 samples");
    let arc = ArcTable::new(c);
    let step = arc.total() / samples as f64;
    Contour::from_raw(
        (0..samples)
            .map(|i| arc.point_at(c, i as f64 * step))
            .collect(),
    )
}

/// Points at the `Phi_lambda` preimages of the uniform grid `i / N`.
pub fn curvature_weighted_resample(c: &Contour, lambda: Lambda, samples: usize) -> Result<Contour> {
    let fam = ParamFamily::new(lambda, 0, samples)?;
    Ok(reparameterize(c, &fam, None, 0.0)?.contour)
}

/// Cumulative angle swept at `reference` by a point travelling along the
/// contour, starting at 0.
///
/// The raw angle can regress on contours that are not star-shaped with
/// respect to `reference`, so the running maximum (running minimum for a
/// clockwise contour) is returned, capped at the full turn. The vector has
/// `N + 1` entries; the last is `±2pi`.
pub fn angle_function(c: &Contour, reference: Point) -> Result<Vec<f64>> {
    let raw = raw_angles(c, reference)?;
    Ok(monotone_angles(&raw))
}

fn raw_angles(c: &Contour, reference: Point) -> Result<Vec<f64>> {
    let wn = geometry::winding_number(c, reference)?;
    if wn.abs() != 1 {
        return Err(Error::ExteriorReference);
    }
    let n = c.len();
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = 0.0;
    out.push(0.0);
    for i in 0..n {
        let a = c.point(i) - reference;
        let b = c.point(i + 1) - reference;
        acc += a.cross(b).atan2(a.dot(b));
        out.push(acc);
    }
    *out.last_mut().unwrap() = 2.0 * PI * wn as f64;
    Ok(out)
}

fn monotone_angles(raw: &[f64]) -> Vec<f64> {
    let sign = raw.last().unwrap().signum();
    let full = 2.0 * PI;
    let mut best = 0.0_f64;
    raw.iter()
        .map(|&a| {
            best = best.max(sign * a).min(full);
            sign * best
        })
        .collect()
}

/// A clock keypoint: the first point where the swept angle reaches
/// `2pi k / n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClockKeypoint {
    /// Index parameter `(edge + frac) / N`.
    pub t: f64,
    pub edge: usize,
    pub frac: f64,
    /// Arc length from vertex 0.
    pub arc: f64,
    pub position: Point,
}

pub fn clock_keypoints(c: &Contour, n: usize, reference: Point) -> Result<Vec<ClockKeypoint>> {
    if n == 0 {
        return Err(Error::InvalidFamily("clock needs at least 1 sector".into()));
    }
    let raw = raw_angles(c, reference)?;
    let mono = monotone_angles(&raw);
    let arc = ArcTable::new(c);
    let big_n = c.len();
    let sign = raw.last().unwrap().signum();
    let start_angle = (c.point(0) - reference).angle();

    let mut out = Vec::with_capacity(n);
    out.push(ClockKeypoint {
        t: 0.0,
        edge: 0,
        frac: 0.0,
        arc: 0.0,
        position: c.point(0),
    });
    let mut i = 1;
    for k in 1..n {
        let target = 2.0 * PI * k as f64 / n as f64;
        while sign * mono[i] < target {
            i += 1;
        }
        let edge = i - 1;
        let a = c.point(edge) - reference;
        let e = c.point(edge + 1) - c.point(edge);
        let ray = Point::new(1.0, 0.0).rotate(start_angle + sign * target);
        let denom = ray.cross(e);
        let frac = if denom != 0.0 {
            (-ray.cross(a) / denom).clamp(0.0, 1.0)
        } else {
            let (lo, hi) = (sign * raw[edge], sign * raw[edge + 1]);
            ((target - lo) / (hi - lo)).clamp(0.0, 1.0)
        };
        out.push(ClockKeypoint {
            t: (edge as f64 + frac) / big_n as f64,
            edge,
            frac,
            arc: arc.at_edge(edge, frac),
            position: c.point(edge).lerp(c.point(edge + 1), frac),
        });
    }
    Ok(out)
}

/// Clock parameterization: `n` equal-angle arcs, each sampled with `N / n`
/// arc-length uniform points.
pub fn clock_resample(c: &Contour, n: usize, samples: usize, reference: Point) -> Result<Contour> {
    let fam = ParamFamily::new(Lambda::Infinite, n, samples)?;
    curvature_clock_resample(c, &fam, reference)
}

/// Curvature-weighted clock parameterization. `reference` is ignored when
/// `fam.sectors == 0`.
pub fn curvature_clock_resample(c: &Contour, fam: &ParamFamily, reference: Point) -> Result<Contour> {
    Ok(reparameterize(c, fam, Some(reference), 0.0)?.contour)
}

/// General entry point behind all resampling functions.
///
/// `smoothing` is the Gaussian window (in fine samples) applied before
/// estimating curvature; 0 disables it.
pub fn reparameterize(
    c: &Contour,
    fam: &ParamFamily,
    reference: Option<Point>,
    smoothing: f64,
) -> Result<ReparamResult> {
    fam.validate()?;
    let arc = ArcTable::new(c);
    let total = arc.total();
    let profile = WeightProfile::build(c, &arc, fam.lambda, smoothing)?;

    let mut bounds = Vec::with_capacity(fam.sectors.max(1) + 1);
    if fam.sectors > 0 {
        let reference = match reference {
            Some(p) => p,
            None => reference_point(c)?,
        };
        bounds.extend(
            clock_keypoints(c, fam.sectors, reference)?
                .iter()
                .map(|k| k.arc),
        );
    } else {
        bounds.push(0.0);
    }
    bounds.push(total);
    let sector_count = bounds.len() - 1;
    let per_sector = fam.samples / sector_count;
    let bound_weights: Vec<f64> = bounds.iter().map(|&s| profile.weight_at(s)).collect();

    let mut points = Vec::with_capacity(fam.samples);
    for k in 0..sector_count {
        let (w0, w1) = (bound_weights[k], bound_weights[k + 1]);
        points.push(arc.point_at(c, bounds[k]));
        for j in 1..per_sector {
            let w = w0 + (w1 - w0) * j as f64 / per_sector as f64;
            points.push(arc.point_at(c, profile.arc_at(w)));
        }
    }

    let mut phi = Vec::with_capacity(c.len() + 1);
    let mut k = 0;
    for i in 0..c.len() {
        let s = arc.at_vertex(i);
        while k + 1 < sector_count && s >= bounds[k + 1] {
            k += 1;
        }
        let (w0, w1) = (bound_weights[k], bound_weights[k + 1]);
        let local = if w1 > w0 {
            ((profile.weight_at(s) - w0) / (w1 - w0)).clamp(0.0, 1.0)
        } else {
            0.0
        };
        phi.push((k as f64 + local) / sector_count as f64);
    }
    phi.push(1.0);

    Ok(ReparamResult {
        contour: Contour::from_raw(points),
        phi,
    })
}

/// Resamples with the family, computing the clock reference point when
/// needed.
pub fn canonical_resample(c: &Contour, fam: &ParamFamily, smoothing: f64) -> Result<Contour> {
    let reference = if fam.sectors > 0 {
        Some(reference_point(c)?)
    } else {
        None
    };
    Ok(reparameterize(c, fam, reference, smoothing)?.contour)
}

/// Interior anchor for the clock construction.
///
/// Returns the area centroid when it lies inside the contour. Otherwise
/// takes the vertex closest to the centroid and scans triangles formed with
/// the vertices at symmetric index offsets `±d`, `d = 1, 2, ...`, returning
/// the first triangle centroid that is inside.
pub fn reference_point(c: &Contour) -> Result<Point> {
    let g = geometry::area_centroid(c)?;
    if is_interior(c, g) {
        return Ok(g);
    }
    let n = c.len();
    let closest = (0..n)
        .min_by(|&a, &b| {
            c.point(a)
                .dist(g)
                .total_cmp(&c.point(b).dist(g))
                .then(a.cmp(&b))
        })
        .unwrap();
    for d in 1..=n / 2 {
        let (lo, hi) = ((closest + n - d) % n, (closest + d) % n);
        if lo == hi {
            continue;
        }
        let candidate = (c.point(closest) + c.point(lo) + c.point(hi)) / 3.0;
        if is_interior(c, candidate) {
            return Ok(candidate);
        }
    }
    Err(Error::NoInteriorReference)
}

fn is_interior(c: &Contour, p: Point) -> bool {
    matches!(geometry::winding_number(c, p), Ok(w) if w.abs() == 1)
}
