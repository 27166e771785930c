//! Synthetic shapes for tests, demos and sanity checks.
//!
//! All generators are deterministic functions of their arguments.

use std::f64::consts::PI;

use crate::geometry::Contour;
use crate::point::Point;

/// Regular `n`-gon inscribed in a circle, counterclockwise, vertex 0 at
/// angle 0.
pub fn regular_polygon(n: usize, radius: f64, center: Point) -> Contour {
    radial(&vec![radius; n], center)
}

/// Axis-aligned ellipse with semi-axes `a` (x) and `b` (y), sampled at
/// uniform parameter values.
pub fn ellipse(a: f64, b: f64, n: usize) -> Contour {
    Contour::from_raw(
        (0..n)
            .map(|i| {
                let t = 2.0 * PI * i as f64 / n as f64;
                Point::new(a * t.cos(), b * t.sin())
            })
            .collect(),
    )
}

/// Star-shaped polygon: vertex `i` at angle `2 pi i / n` and distance
/// `radii[i]` from `center`. Simple whenever every radius is positive.
pub fn radial(radii: &[f64], center: Point) -> Contour {
    let n = radii.len();
    Contour::from_raw(
        radii
            .iter()
            .enumerate()
            .map(|(i, &r)| {
                let t = 2.0 * PI * i as f64 / n as f64;
                center + Point::new(r * t.cos(), r * t.sin())
            })
            .collect(),
    )
}

/// Axis-aligned square with corner `origin` and the given side, with
/// `per_side` points along each side.
pub fn square(origin: Point, side: f64, per_side: usize) -> Contour {
    let corners = [
        origin,
        origin + Point::new(side, 0.0),
        origin + Point::new(side, side),
        origin + Point::new(0.0, side),
    ];
    let mut pts = Vec::with_capacity(4 * per_side);
    for k in 0..4 {
        let (a, b) = (corners[k], corners[(k + 1) % 4]);
        for j in 0..per_side {
            pts.push(a.lerp(b, j as f64 / per_side as f64));
        }
    }
    Contour::from_raw(pts)
}

/// Leaf silhouette with a rounded base at the origin and a pointed tip at
/// `(0, height)`. `skew` bends the blade sideways. The tip is the unique
/// highest vertex for moderate skew.
pub fn leaf(width: f64, height: f64, skew: f64, per_side: usize) -> Contour {
    let half = |u: f64| width * u.sqrt() * (1.0 - u);
    let bend = |u: f64| skew * u * u * (1.0 - u);
    let mut pts = Vec::with_capacity(2 * per_side);
    for j in 0..=per_side {
        let u = j as f64 / per_side as f64;
        pts.push(Point::new(half(u) + bend(u), height * u));
    }
    for j in (1..per_side).rev() {
        let u = j as f64 / per_side as f64;
        pts.push(Point::new(-half(u) + bend(u), height * u));
    }
    Contour::from_raw(pts)
}

/// Unit disk centered at the origin with a straight stalk of the given
/// length and width hanging below it. Vertex 0 is the top of the disk.
pub fn disk_with_stalk(stalk: f64, width: f64, arc_points: usize) -> Contour {
    let hw = 0.5 * width;
    let a0 = -PI / 2.0 + hw.asin();
    let a1 = 3.0 * PI / 2.0 - hw.asin();
    // Start at the top so vertex 0 is the maximum-y point.
    let mut pts = Vec::new();
    let top = PI / 2.0;
    for i in 0..=arc_points {
        let t = top + (a1 - top) * i as f64 / arc_points as f64;
        pts.push(Point::new(t.cos(), t.sin()));
    }
    let join = pts.last().unwrap().y;
    let side_points = ((stalk / 0.02).ceil() as usize).max(2);
    for i in 1..=side_points {
        pts.push(Point::new(-hw, join - stalk * i as f64 / side_points as f64));
    }
    let tip = join - stalk;
    for i in 1..8 {
        let t = PI + PI * i as f64 / 8.0;
        pts.push(Point::new(hw * t.cos(), tip + hw * t.sin()));
    }
    for i in 0..side_points {
        pts.push(Point::new(hw, tip + stalk * i as f64 / side_points as f64));
    }
    let rest = arc_points.max(2);
    for i in 0..rest {
        let t = a0 + (top - a0) * i as f64 / rest as f64;
        pts.push(Point::new(t.cos(), t.sin()));
    }
    Contour::from_raw(pts)
}
