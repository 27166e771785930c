//! Discrete geometric invariants of closed plane curves.
//!
//! A [`Contour`] is a closed polyline: vertex `N - 1` connects back to
//! vertex `0`, and vertex `i` sits at parameter `t_i = i / N` of the
//! circle `R/Z`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::point::Point;

/// Closed polyline with at least three vertices and no zero-length edges.
#[derive(Debug, Clone, PartialEq)]
pub struct Contour {
    points: Vec<Point>,
}

impl Contour {
    /// Validates vertex count, finiteness and edge lengths. Simplicity is
    /// not checked here, see [`Contour::new_simple`].
    pub fn new(points: Vec<Point>) -> Result<Self> {
        let n = points.len();
        if n < 3 {
            return Err(Error::TooFewPoints(n));
        }
        if let Some(i) = points.iter().position(|p| !p.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        for i in 0..n {
            let j = (i + 1) % n;
            if points[i] == points[j] {
                return Err(Error::ZeroLengthEdge(i, j));
            }
        }
        Ok(Contour { points })
    }

    /// Like [`Contour::new`], and additionally rejects self-intersecting
    /// polylines. Used on ingestion.
    pub fn new_simple(points: Vec<Point>) -> Result<Self> {
        let c = Contour::new(points)?;
        if let Some((i, j)) = c.find_self_intersection() {
            return Err(Error::SelfIntersecting(i, j));
        }
        Ok(c)
    }

    /// Wraps a point sequence without any validation.
    ///
    /// Meant for derived point sequences such as class means, which are
    /// only ever used as raw samples for distance computations.
    pub fn from_raw(points: Vec<Point>) -> Self {
        Contour { points }
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn into_points(self) -> Vec<Point> {
        self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    #[inline]
    pub fn point(&self, i: usize) -> Point {
        self.points[i % self.points.len()]
    }

    /// `edge_lengths()[i]` is the length of the edge from vertex `i` to `i + 1`.
    pub fn edge_lengths(&self) -> Vec<f64> {
        let n = self.points.len();
        (0..n)
            .map(|i| self.points[i].dist(self.points[(i + 1) % n]))
            .collect()
    }

    /// Applies `f` to every vertex.
    pub fn map(&self, f: impl Fn(Point) -> Point) -> Contour {
        Contour {
            points: self.points.iter().map(|&p| f(p)).collect(),
        }
    }

    pub fn translated(&self, offset: Point) -> Contour {
        self.map(|p| p + offset)
    }

    pub fn scaled(&self, factor: f64) -> Contour {
        self.map(|p| p * factor)
    }

    pub fn rotated_about(&self, center: Point, angle: f64) -> Contour {
        let (s, c) = angle.sin_cos();
        self.map(|p| {
            let d = p - center;
            Point::new(c * d.x - s * d.y, s * d.x + c * d.y) + center
        })
    }

    /// Reverses the direction of travel, keeping vertex 0 in place.
    pub fn reversed(&self) -> Contour {
        let n = self.points.len();
        Contour {
            points: (0..n).map(|i| self.points[(n - i) % n]).collect(),
        }
    }

    /// Cyclic shift so that the old vertex `start` becomes vertex 0.
    pub fn with_start(&self, start: usize) -> Contour {
        let mut points = self.points.clone();
        points.rotate_left(start % self.points.len());
        Contour { points }
    }

    /// Axis-aligned bounding box as `(min, max)` corners.
    pub fn bounding_box(&self) -> (Point, Point) {
        let mut lo = Point::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in &self.points {
            lo.x = lo.x.min(p.x);
            lo.y = lo.y.min(p.y);
            hi.x = hi.x.max(p.x);
            hi.y = hi.y.max(p.y);
        }
        (lo, hi)
    }

    /// Returns the first pair of intersecting edges, if any.
    ///
    /// Non-adjacent edges may not touch at all; adjacent edges may not fold
    /// back onto each other. Edges are swept in order of their leftmost x so
    /// that only pairs with overlapping x-extent get an exact test.
    pub fn find_self_intersection(&self) -> Option<(usize, usize)> {
        let n = self.points.len();
        if n < 3 {
            return None;
        }
        for i in 0..n {
            let a = self.point(i);
            let b = self.point(i + 1);
            let c = self.point(i + 2);
            let (u, v) = (b - a, c - b);
            if u.cross(v) == 0.0 && u.dot(v) < 0.0 {
                return Some((i, (i + 1) % n));
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        let xmin = |i: usize| self.point(i).x.min(self.point(i + 1).x);
        order.sort_by(|&a, &b| xmin(a).total_cmp(&xmin(b)).then(a.cmp(&b)));
        for (k, &i) in order.iter().enumerate() {
            let (p1, p2) = (self.point(i), self.point(i + 1));
            let xmax = p1.x.max(p2.x);
            let (ylo, yhi) = (p1.y.min(p2.y), p1.y.max(p2.y));
            for &j in &order[k + 1..] {
                if xmin(j) > xmax {
                    break;
                }
                if j == (i + 1) % n || i == (j + 1) % n {
                    continue;
                }
                let (p3, p4) = (self.point(j), self.point(j + 1));
                if p3.y.max(p4.y) < ylo || p3.y.min(p4.y) > yhi {
                    continue;
                }
                if segments_intersect(p1, p2, p3, p4) {
                    return Some((i.min(j), i.max(j)));
                }
            }
        }
        None
    }
}

fn orient(a: Point, b: Point, c: Point) -> f64 {
    (b - a).cross(c - a)
}

fn on_segment(a: Point, b: Point, p: Point) -> bool {
    p.x >= a.x.min(b.x) && p.x <= a.x.max(b.x) && p.y >= a.y.min(b.y) && p.y <= a.y.max(b.y)
}

/// Closed-segment intersection test (touching counts).
pub(crate) fn segments_intersect(p1: Point, p2: Point, p3: Point, p4: Point) -> bool {
    let d1 = orient(p3, p4, p1);
    let d2 = orient(p3, p4, p2);
    let d3 = orient(p1, p2, p3);
    let d4 = orient(p1, p2, p4);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    (d1 == 0.0 && on_segment(p3, p4, p1))
        || (d2 == 0.0 && on_segment(p3, p4, p2))
        || (d3 == 0.0 && on_segment(p1, p2, p3))
        || (d4 == 0.0 && on_segment(p1, p2, p4))
}

/// Perimeter, closing edge included.
pub fn length(c: &Contour) -> f64 {
    c.edge_lengths().iter().sum()
}

/// Shoelace area; positive iff the contour runs counterclockwise.
pub fn signed_area(c: &Contour) -> f64 {
    let n = c.len();
    let mut twice = 0.0;
    for i in 0..n {
        let (p, q) = (c.points[i], c.points[(i + 1) % n]);
        twice += p.cross(q);
    }
    0.5 * twice
}

/// Arc-length weighted mean of the curve (center of mass of the wire).
pub fn contour_centroid(c: &Contour) -> Point {
    let n = c.len();
    let mut acc = Point::ORIGIN;
    let mut total = 0.0;
    for i in 0..n {
        let (p, q) = (c.points[i], c.points[(i + 1) % n]);
        let len = p.dist(q);
        acc += (p + q) * (0.5 * len);
        total += len;
    }
    acc / total
}

/// Centroid of the enclosed region. Independent of orientation.
pub fn area_centroid(c: &Contour) -> Result<Point> {
    let n = c.len();
    let (lo, hi) = c.bounding_box();
    // Moments are taken about the box corner to keep the sums well scaled.
    let mut twice_area = 0.0;
    let mut mx = 0.0;
    let mut my = 0.0;
    for i in 0..n {
        let p = c.points[i] - lo;
        let q = c.points[(i + 1) % n] - lo;
        let w = p.cross(q);
        twice_area += w;
        mx += (p.x + q.x) * w;
        my += (p.y + q.y) * w;
    }
    let scale = (hi - lo).norm_sq();
    if twice_area.abs() <= 1e-12 * scale || scale == 0.0 {
        return Err(Error::DegenerateArea);
    }
    Ok(Point::new(mx / (3.0 * twice_area), my / (3.0 * twice_area)) + lo)
}

/// Exterior turning angle at each vertex, in `(-pi, pi]`; positive for
/// left turns.
pub fn turning_angles(c: &Contour) -> Vec<f64> {
    let n = c.len();
    (0..n)
        .map(|i| {
            let prev = c.points[(i + n - 1) % n];
            let cur = c.points[i];
            let next = c.points[(i + 1) % n];
            let (u, v) = (cur - prev, next - cur);
            u.cross(v).atan2(u.dot(v))
        })
        .collect()
}

/// Mean of the two edge lengths adjacent to each vertex.
pub fn vertex_lengths(c: &Contour) -> Vec<f64> {
    let edges = c.edge_lengths();
    let n = edges.len();
    (0..n)
        .map(|i| 0.5 * (edges[(i + n - 1) % n] + edges[i]))
        .collect()
}

/// Signed curvature per vertex: turning angle over the mean adjacent edge
/// length.
pub fn discrete_curvature(c: &Contour) -> Vec<f64> {
    turning_angles(c)
        .into_iter()
        .zip(vertex_lengths(c))
        .map(|(theta, ds)| theta / ds)
        .collect()
}

/// Circular Gaussian smoothing of the vertex coordinates over the index.
///
/// `sigma` is measured in vertices; `sigma <= 0` returns the input unchanged.
pub fn smooth_gaussian(c: &Contour, sigma: f64) -> Contour {
    if sigma <= 0.0 {
        return c.clone();
    }
    let n = c.len() as isize;
    let half = ((3.0 * sigma).ceil() as isize).min((n - 1) / 2);
    let kernel: Vec<f64> = (-half..=half)
        .map(|k| (-(k * k) as f64 / (2.0 * sigma * sigma)).exp())
        .collect();
    let norm: f64 = kernel.iter().sum();
    let points = (0..n)
        .map(|i| {
            let mut acc = Point::ORIGIN;
            for (w, k) in kernel.iter().zip(-half..=half) {
                acc += c.points[(i + k).rem_euclid(n) as usize] * *w;
            }
            acc / norm
        })
        .collect();
    Contour { points }
}

/// Principal axes of a contour's arc-length weighted second moments.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipseFrame {
    pub center: Point,
    pub major_axis: Point,
    pub minor_axis: Point,
    pub major_len: f64,
    pub minor_len: f64,
}

impl EllipseFrame {
    /// Direction of the major axis in `(-pi/2, pi/2]`.
    pub fn major_angle(&self) -> f64 {
        let a = self.major_axis.angle();
        if a > PI / 2.0 {
            a - PI
        } else if a <= -PI / 2.0 {
            a + PI
        } else {
            a
        }
    }
}

/// Relative eigenvalue gap below which the ellipse is considered isotropic.
const ISOTROPY_TOL: f64 = 1e-9;

pub fn best_fit_ellipse(c: &Contour) -> Result<EllipseFrame> {
    let center = contour_centroid(c);
    let n = c.len();
    let (mut sxx, mut sxy, mut syy, mut total) = (0.0, 0.0, 0.0, 0.0);
    for i in 0..n {
        let a = c.points[i] - center;
        let b = c.points[(i + 1) % n] - center;
        let len = a.dist(b);
        // Exact integral of the outer product along the segment.
        sxx += len * (a.x * a.x + a.x * b.x + b.x * b.x) / 3.0;
        syy += len * (a.y * a.y + a.y * b.y + b.y * b.y) / 3.0;
        sxy += len * (2.0 * a.x * a.y + a.x * b.y + b.x * a.y + 2.0 * b.x * b.y) / 6.0;
        total += len;
    }
    let (sxx, sxy, syy) = (sxx / total, sxy / total, syy / total);
    let mean = 0.5 * (sxx + syy);
    let gap = (0.25 * (sxx - syy) * (sxx - syy) + sxy * sxy).sqrt();
    if gap <= ISOTROPY_TOL * mean {
        return Err(Error::AmbiguousEllipse);
    }
    let theta = 0.5 * (2.0 * sxy).atan2(sxx - syy);
    let major_axis = Point::new(theta.cos(), theta.sin());
    let minor_axis = Point::new(-major_axis.y, major_axis.x);
    Ok(EllipseFrame {
        center,
        major_axis,
        minor_axis,
        major_len: (mean + gap).sqrt(),
        minor_len: (mean - gap).max(0.0).sqrt(),
    })
}

fn point_segment_dist(p: Point, a: Point, b: Point) -> f64 {
    let ab = b - a;
    let t = ((p - a).dot(ab) / ab.norm_sq()).clamp(0.0, 1.0);
    p.dist(a + ab * t)
}

/// Signed winding number of the contour around `p`.
///
/// Points within `1e-9` times the bounding-box diagonal of an edge are
/// rejected as boundary points.
pub fn winding_number(c: &Contour, p: Point) -> Result<i32> {
    let (lo, hi) = c.bounding_box();
    let tol = 1e-9 * lo.dist(hi);
    let n = c.len();
    let mut wn = 0;
    for i in 0..n {
        let a = c.points[i];
        let b = c.points[(i + 1) % n];
        if point_segment_dist(p, a, b) <= tol {
            return Err(Error::BoundaryPoint);
        }
        if a.y <= p.y {
            if b.y > p.y && orient(a, b, p) > 0.0 {
                wn += 1;
            }
        } else if b.y <= p.y && orient(a, b, p) < 0.0 {
            wn -= 1;
        }
    }
    Ok(wn)
}
