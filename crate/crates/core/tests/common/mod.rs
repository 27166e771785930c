#![allow(dead_code)]

use std::f64::consts::PI;

use proptest::prelude::*;
use shapesection::{Contour, Point};

/// Smooth radial profile `1 + sum a_k cos(k t + phase_k)`, k = 2, 3, ...
#[derive(Debug, Clone)]
pub struct Wobble(pub Vec<(f64, f64)>);

impl Wobble {
    pub fn radius(&self, t: f64) -> f64 {
        1.0 + self
            .0
            .iter()
            .enumerate()
            .map(|(i, &(a, ph))| a * ((i as f64 + 2.0) * t + ph).cos())
            .sum::<f64>()
    }

    pub fn at(&self, t: f64) -> Point {
        let r = self.radius(t);
        Point::new(r * t.cos(), r * t.sin())
    }

    /// Vertices at `t = warp(u_i)` for uniform `u_i`.
    pub fn sample_with(&self, n: usize, warp: impl Fn(f64) -> f64) -> Contour {
        Contour::new(
            (0..n)
                .map(|i| self.at(warp(2.0 * PI * i as f64 / n as f64)))
                .collect(),
        )
        .unwrap()
    }

    pub fn sample(&self, n: usize) -> Contour {
        self.sample_with(n, |u| u)
    }
}

pub fn wobble() -> impl Strategy<Value = Wobble> {
    prop::collection::vec((-0.08f64..0.08, 0.0f64..2.0 * PI), 1..5).prop_map(Wobble)
}

/// Star-shaped polygon with random radii around the origin.
pub fn star_polygon() -> impl Strategy<Value = Contour> {
    prop::collection::vec(0.3f64..1.5, 5..60).prop_map(|r| shapesection::synth::radial(&r, Point::ORIGIN))
}

pub fn max_dist(a: &Contour, b: &Contour) -> f64 {
    assert_eq!(a.len(), b.len());
    a.points()
        .iter()
        .zip(b.points())
        .map(|(p, q)| p.dist(*q))
        .fold(0.0, f64::max)
}

/// Symmetric Hausdorff distance between vertex sets.
pub fn hausdorff(a: &Contour, b: &Contour) -> f64 {
    let one_way = |x: &Contour, y: &Contour| {
        x.points()
            .iter()
            .map(|p| y.points().iter().map(|q| p.dist(*q)).fold(f64::MAX, f64::min))
            .fold(0.0, f64::max)
    };
    one_way(a, b).max(one_way(b, a))
}

pub fn diameter(c: &Contour) -> f64 {
    let (lo, hi) = c.bounding_box();
    (hi - lo).norm()
}
