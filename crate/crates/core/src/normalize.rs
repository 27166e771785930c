//! Standardization over orientation, start point, scale, translation and
//! rotation.
//!
//! A [`NormalizationPlan`] picks one variant per step. Steps always run in
//! the order direction, start, scale, translate, rotate. Every step also
//! has a pass-through variant so partial plans can be compared.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::geometry::{self, Contour};
use crate::point::Point;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Ccw,
    Keep,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Start {
    MaxY,
    Keep,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scale {
    UnitLength,
    UnitArea,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Translate {
    StartOrigin,
    ContourCentroid,
    AreaCentroid,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rotate {
    EllipseAxes,
    TipVertical,
    None,
}

macro_rules! named_variants {
    ($ty:ident { $($variant:ident => $name:literal),+ $(,)? }) => {
        impl $ty {
            pub const NAMES: &'static [&'static str] = &[$($name),+];

            pub fn name(self) -> &'static str {
                match self {
                    $($ty::$variant => $name),+
                }
            }
        }

        impl FromStr for $ty {
            type Err = String;

            fn from_str(s: &str) -> std::result::Result<Self, String> {
                match s.trim() {
                    $($name => Ok($ty::$variant),)+
                    other => Err(format!(
                        "unknown value {other:?}, expected one of: {}",
                        Self::NAMES.join(", ")
                    )),
                }
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.name())
            }
        }
    };
}

named_variants!(Direction { Ccw => "ccw", Keep => "keep" });
named_variants!(Start { MaxY => "max_y", Keep => "keep" });
named_variants!(Scale {
    UnitLength => "unit_length",
    UnitArea => "unit_area",
    None => "none",
});
named_variants!(Translate {
    StartOrigin => "start_origin",
    ContourCentroid => "contour_centroid",
    AreaCentroid => "area_centroid",
    None => "none",
});
named_variants!(Rotate {
    EllipseAxes => "ellipse_axes",
    TipVertical => "tip_vertical",
    None => "none",
});

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NormalizationPlan {
    pub direction: Direction,
    pub start: Start,
    pub scale: Scale,
    pub translate: Translate,
    pub rotate: Rotate,
}

impl NormalizationPlan {
    /// Leaves contours untouched.
    pub const IDENTITY: NormalizationPlan = NormalizationPlan {
        direction: Direction::Keep,
        start: Start::Keep,
        scale: Scale::None,
        translate: Translate::None,
        rotate: Rotate::None,
    };
}

impl Default for NormalizationPlan {
    /// Counterclockwise, starting at the highest point, unit length, area
    /// centroid at the origin, tip straight above it.
    fn default() -> Self {
        NormalizationPlan {
            direction: Direction::Ccw,
            start: Start::MaxY,
            scale: Scale::UnitLength,
            translate: Translate::AreaCentroid,
            rotate: Rotate::TipVertical,
        }
    }
}

impl fmt::Display for NormalizationPlan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}/{}/{}/{}/{}",
            self.direction, self.start, self.scale, self.translate, self.rotate
        )
    }
}

fn area_tolerance(c: &Contour) -> f64 {
    let (lo, hi) = c.bounding_box();
    1e-12 * (hi - lo).norm_sq()
}

/// Returns the contour traversed counterclockwise, reversing it (with
/// vertex 0 fixed) if its signed area is negative.
pub fn ensure_ccw(c: &Contour) -> Result<Contour> {
    let a = geometry::signed_area(c);
    if a.abs() <= area_tolerance(c) {
        return Err(Error::DegenerateArea);
    }
    Ok(if a > 0.0 { c.clone() } else { c.reversed() })
}

/// Index of the highest vertex; ties go to the smallest x, then the smallest
/// index.
pub fn max_y_index(c: &Contour) -> usize {
    let pts = c.points();
    let mut best = 0;
    for (i, p) in pts.iter().enumerate().skip(1) {
        let b = pts[best];
        if p.y > b.y || (p.y == b.y && p.x < b.x) {
            best = i;
        }
    }
    best
}

/// Rotates indices so vertex 0 is the highest vertex.
pub fn set_start_max_y(c: &Contour) -> Contour {
    c.with_start(max_y_index(c))
}

pub fn scale_normalize(c: &Contour, mode: Scale) -> Result<Contour> {
    match mode {
        Scale::None => Ok(c.clone()),
        Scale::UnitLength => Ok(c.scaled(1.0 / geometry::length(c))),
        Scale::UnitArea => {
            let a = geometry::signed_area(c).abs();
            if a <= area_tolerance(c) {
                return Err(Error::DegenerateArea);
            }
            Ok(c.scaled(1.0 / a.sqrt()))
        }
    }
}

/// The point that `translate_normalize` moves to the origin.
pub fn translation_anchor(c: &Contour, mode: Translate) -> Result<Point> {
    match mode {
        Translate::None => Ok(Point::ORIGIN),
        Translate::StartOrigin => Ok(c.point(0)),
        Translate::ContourCentroid => Ok(geometry::contour_centroid(c)),
        Translate::AreaCentroid => geometry::area_centroid(c),
    }
}

pub fn translate_normalize(c: &Contour, mode: Translate) -> Result<Contour> {
    let anchor = translation_anchor(c, mode)?;
    Ok(c.translated(-anchor))
}

/// Rotation step.
///
/// `EllipseAxes` turns the contour about the origin (the translation anchor
/// once the translate step has run) until the major axis of its best-fit
/// ellipse is vertical. Of the two candidate orientations the one with at
/// least as much of the contour above the origin as below it is kept.
///
/// `TipVertical` turns the contour about its area centroid until vertex 0
/// lies straight above the centroid.
pub fn rotate_normalize(c: &Contour, mode: Rotate) -> Result<Contour> {
    match mode {
        Rotate::None => Ok(c.clone()),
        Rotate::EllipseAxes => {
            let frame = geometry::best_fit_ellipse(c)?;
            let turned = c.rotated_about(Point::ORIGIN, PI / 2.0 - frame.major_angle());
            let (lo, hi) = turned.bounding_box();
            if hi.y >= -lo.y {
                Ok(turned)
            } else {
                Ok(turned.rotated_about(Point::ORIGIN, PI))
            }
        }
        Rotate::TipVertical => {
            let g = geometry::area_centroid(c)?;
            let v = c.point(0) - g;
            let (lo, hi) = c.bounding_box();
            if v.norm() <= 1e-12 * (hi - lo).norm() {
                return Err(Error::CoincidentTip);
            }
            Ok(c.rotated_about(g, PI / 2.0 - v.angle()))
        }
    }
}

/// Applies every step of `plan` in order. Failures carry the name of the
/// step that raised them.
pub fn apply_plan(c: &Contour, plan: &NormalizationPlan) -> Result<Contour> {
    let step = |name: &'static str| move |e: Error| Error::Step {
        step: name,
        source: Box::new(e),
    };
    let c = match plan.direction {
        Direction::Ccw => ensure_ccw(c).map_err(step("direction"))?,
        Direction::Keep => c.clone(),
    };
    let c = match plan.start {
        Start::MaxY => set_start_max_y(&c),
        Start::Keep => c,
    };
    let c = scale_normalize(&c, plan.scale).map_err(step("scale"))?;
    let c = translate_normalize(&c, plan.translate).map_err(step("translate"))?;
    rotate_normalize(&c, plan.rotate).map_err(step("rotate"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth;

    fn unit_square() -> Contour {
        Contour::new(vec![
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(1.0, 1.0),
            Point::new(0.0, 1.0),
        ])
        .unwrap()
    }

    fn max_dist(a: &Contour, b: &Contour) -> f64 {
        assert_eq!(a.len(), b.len());
        a.points()
            .iter()
            .zip(b.points())
            .map(|(p, q)| p.dist(*q))
            .fold(0.0, f64::max)
    }

    #[test]
    fn variant_names_round_trip() {
        for name in Scale::NAMES {
            assert_eq!(name.parse::<Scale>().unwrap().name(), *name);
        }
        for name in Translate::NAMES {
            assert_eq!(name.parse::<Translate>().unwrap().name(), *name);
        }
        for name in Rotate::NAMES {
            assert_eq!(name.parse::<Rotate>().unwrap().name(), *name);
        }
        assert!("sideways".parse::<Rotate>().is_err());
        assert_eq!(
            NormalizationPlan::default().to_string(),
            "ccw/max_y/unit_length/area_centroid/tip_vertical"
        );
    }

    #[test]
    fn ccw_examples() {
        let sq = unit_square();
        assert_eq!(ensure_ccw(&sq).unwrap(), sq);
        let cw = sq.reversed();
        let fixed = ensure_ccw(&cw).unwrap();
        assert!(geometry::signed_area(&fixed) > 0.0);
        assert_eq!(fixed.point(0), cw.point(0));
        assert_eq!(ensure_ccw(&fixed).unwrap(), fixed);

        let flat = Contour::from_raw(vec![
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(2.0, 0.0),
            Point::new(1.0, 0.0),
        ]);
        assert!(matches!(ensure_ccw(&flat), Err(Error::DegenerateArea)));
    }

    #[test]
    fn start_examples() {
        let s = set_start_max_y(&unit_square());
        assert_eq!(s.point(0), Point::new(0.0, 1.0));
        let leaf = synth::leaf(0.5, 2.0, 0.2, 40);
        let apex = set_start_max_y(&leaf);
        assert_eq!(set_start_max_y(&apex), apex);
        for shift in 0..leaf.len() {
            assert_eq!(set_start_max_y(&leaf.with_start(shift)), apex);
        }
    }

    #[test]
    fn scale_examples() {
        let sq = unit_square().scaled(2.0);
        let u = scale_normalize(&sq, Scale::UnitLength).unwrap();
        assert!((geometry::length(&u) - 1.0).abs() < 1e-15);
        assert!((u.point(1).x - 0.25).abs() < 1e-15);
        let a = scale_normalize(&sq, Scale::UnitArea).unwrap();
        assert!((geometry::signed_area(&a) - 1.0).abs() < 1e-15);
        assert!((a.point(1).x - 1.0).abs() < 1e-15);

        let blob = synth::radial(&[1.0, 1.7, 0.8, 1.3, 2.1, 0.9], Point::new(3.0, -1.0));
        for mode in [Scale::UnitLength, Scale::UnitArea] {
            let once = scale_normalize(&blob, mode).unwrap();
            let twice = scale_normalize(&once, mode).unwrap();
            assert!(max_dist(&once, &twice) < 1e-12);
        }
    }

    #[test]
    fn translate_examples() {
        let blob = synth::radial(&[1.0, 1.7, 0.8, 1.3, 2.1, 0.9], Point::new(3.0, -1.0));
        let t = translate_normalize(&blob, Translate::StartOrigin).unwrap();
        assert_eq!(t.point(0), Point::ORIGIN);

        let circle = synth::regular_polygon(64, 1.0, Point::ORIGIN);
        for mode in [Translate::ContourCentroid, Translate::AreaCentroid] {
            let t = translate_normalize(&circle, mode).unwrap();
            assert!(max_dist(&t, &circle) < 1e-12);
        }

        // A longer stalk drags the contour centroid much further than the
        // area centroid.
        let anchors = |stalk: f64| {
            let c = synth::disk_with_stalk(stalk, 0.06, 400);
            (
                geometry::area_centroid(&c).unwrap(),
                geometry::contour_centroid(&c),
            )
        };
        let (a1, c1) = anchors(1.0);
        let (a2, c2) = anchors(3.0);
        assert!(a1.dist(a2) < c1.dist(c2));
    }

    #[test]
    fn ellipse_axes_rotation() {
        let e = synth::ellipse(2.0, 1.0, 400).rotated_about(Point::ORIGIN, PI / 6.0);
        let r = rotate_normalize(&e, Rotate::EllipseAxes).unwrap();
        let frame = geometry::best_fit_ellipse(&r).unwrap();
        assert!((frame.major_axis.x).abs() < 1e-9, "{:?}", frame.major_axis);
        assert!((frame.minor_axis.y).abs() < 1e-9);

        // The heavier end of an egg ends up on top.
        let egg = synth::leaf(0.8, 2.0, 0.0, 80);
        let egg = translate_normalize(&egg, Translate::AreaCentroid).unwrap();
        let flipped = egg.rotated_about(Point::ORIGIN, PI);
        let a = rotate_normalize(&egg, Rotate::EllipseAxes).unwrap();
        let b = rotate_normalize(&flipped, Rotate::EllipseAxes).unwrap();
        assert!(max_dist(&a, &b) < 1e-9);
        let (lo, hi) = a.bounding_box();
        assert!(hi.y >= -lo.y);

        let circle = synth::regular_polygon(90, 1.0, Point::ORIGIN);
        assert!(matches!(
            rotate_normalize(&circle, Rotate::EllipseAxes),
            Err(Error::AmbiguousEllipse)
        ));
    }

    #[test]
    fn tip_vertical_rotation() {
        let leaf = synth::leaf(0.6, 2.0, 0.4, 50).rotated_about(Point::new(1.0, 1.0), 0.4);
        let leaf = set_start_max_y(&leaf);
        let r = rotate_normalize(&leaf, Rotate::TipVertical).unwrap();
        let g = geometry::area_centroid(&r).unwrap();
        assert!((r.point(0).x - g.x).abs() < 1e-12);
        assert!(r.point(0).y > g.y);

        let direct = rotate_normalize(&leaf, Rotate::TipVertical).unwrap();
        for theta in [-1.0, -0.3, 0.7, 2.5] {
            let turned = leaf.rotated_about(Point::new(-2.0, 0.5), theta);
            let r = rotate_normalize(&turned, Rotate::TipVertical).unwrap();
            let shift = geometry::area_centroid(&direct).unwrap() - geometry::area_centroid(&r).unwrap();
            assert!(max_dist(&r.translated(shift), &direct) < 1e-9);
        }
    }

    #[test]
    fn plan_postconditions() {
        let leaf = synth::leaf(0.7, 2.5, 0.5, 70)
            .reversed()
            .rotated_about(Point::ORIGIN, 0.2)
            .scaled(13.0)
            .translated(Point::new(40.0, -7.0))
            .with_start(17);
        let plan = NormalizationPlan::default();
        let out = apply_plan(&leaf, &plan).unwrap();
        assert!((geometry::length(&out) - 1.0).abs() < 1e-12);
        assert!(geometry::signed_area(&out) > 0.0);
        assert!(geometry::area_centroid(&out).unwrap().norm() < 1e-12);
        assert!(out.point(0).x.abs() < 1e-12);
        assert!(out.point(0).y > 0.0);
        assert_eq!(max_y_index(&out), 0);

        let again = apply_plan(&out, &plan).unwrap();
        assert!(max_dist(&out, &again) < 1e-9);
    }

    #[test]
    fn plan_errors_name_the_step() {
        let circle = synth::regular_polygon(90, 1.0, Point::ORIGIN);
        let plan = NormalizationPlan {
            rotate: Rotate::EllipseAxes,
            ..NormalizationPlan::default()
        };
        let err = apply_plan(&circle, &plan).unwrap_err();
        assert!(matches!(err, Error::Step { step: "rotate", .. }));
        assert!(err.is_numerical());
        assert!(err.to_string().starts_with("rotate"));
    }

    #[test]
    fn identity_plan_is_identity() {
        let blob = synth::radial(&[1.0, 1.7, 0.8, 1.3, 2.1, 0.9], Point::new(3.0, -1.0));
        assert_eq!(apply_plan(&blob, &NormalizationPlan::IDENTITY).unwrap(), blob);
    }
}
