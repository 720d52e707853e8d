//! Complete geodesic metric spaces used as spatial factors.

use std::fmt;

use crate::error::{domain, structural, Result};

/// Slack allowed when an arclength argument overshoots its range through rounding.
pub const ARCLENGTH_SLACK: f64 = 1e-9;

/// A metric on some element type.
pub trait Metric {
    type Element;

    fn dist(&self, a: &Self::Element, b: &Self::Element) -> Result<f64>;
}

/// A point of a backend: a coordinate vector, or a single arc position for the circle.
#[derive(Debug, Clone, PartialEq, PartialOrd)]
pub struct Point(Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Self {
        Point(coords)
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.0
    }
}

impl From<Vec<f64>> for Point {
    fn from(v: Vec<f64>) -> Self {
        Point(v)
    }
}

impl<const N: usize> From<[f64; N]> for Point {
    fn from(v: [f64; N]) -> Self {
        Point(v.to_vec())
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// The spatial factor `(X, d)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Backend {
    /// `R^n` with the Euclidean norm.
    Euclidean(usize),
    /// `R^n` with the L1 norm.
    Taxicab(usize),
    /// Circle of circumference `C` with arc-length distance; points are positions in `[0, C)`.
    Circle(f64),
}

impl Backend {
    pub fn circle(circumference: f64) -> Result<Self> {
        if !(circumference.is_finite() && circumference > 0.0) {
            return domain(format!("circle circumference must be positive, got {circumference}"));
        }
        Ok(Backend::Circle(circumference))
    }

    /// Number of coordinates of a point.
    pub fn dim(&self) -> usize {
        match *self {
            Backend::Euclidean(n) | Backend::Taxicab(n) => n,
            Backend::Circle(_) => 1,
        }
    }

    pub fn name(&self) -> String {
        match *self {
            Backend::Euclidean(n) => format!("euclidean({n})"),
            Backend::Taxicab(n) => format!("taxicab({n})"),
            Backend::Circle(c) => format!("circle({c})"),
        }
    }

    /// Validates coordinates and builds a point. Circle positions are wrapped into `[0, C)`.
    pub fn point(&self, coords: impl Into<Vec<f64>>) -> Result<Point> {
        let coords = coords.into();
        if coords.len() != self.dim() {
            return structural(format!("{} expects {} coordinates, got {}", self.name(), self.dim(), coords.len()));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return domain("point coordinates must be finite");
        }
        match *self {
            Backend::Circle(c) => Ok(Point(vec![wrap(coords[0], c)])),
            _ => Ok(Point(coords)),
        }
    }

    /// Checks that `p` belongs to this backend.
    pub fn check(&self, p: &Point) -> Result<()> {
        if p.dim() != self.dim() {
            return structural(format!("point of dimension {} used with {}", p.dim(), self.name()));
        }
        if let Backend::Circle(c) = *self {
            let x = p.0[0];
            if !(0.0..c).contains(&x) {
                return structural(format!("arc position {x} outside [0, {c})"));
            }
        }
        Ok(())
    }

    fn check_pair(&self, a: &Point, b: &Point) -> Result<()> {
        self.check(a)?;
        self.check(b)
    }

    pub fn dist(&self, a: &Point, b: &Point) -> Result<f64> {
        self.check_pair(a, b)?;
        Ok(self.dist_unchecked(a, b))
    }

    pub(crate) fn dist_unchecked(&self, a: &Point, b: &Point) -> f64 {
        match *self {
            Backend::Euclidean(_) => a.0.iter().zip(&b.0).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt(),
            Backend::Taxicab(_) => a.0.iter().zip(&b.0).map(|(x, y)| (x - y).abs()).sum(),
            Backend::Circle(c) => {
                // Positions lie in [0, c), so |a - b| < c; symmetric by construction.
                let gap = (b.0[0] - a.0[0]).abs();
                gap.min(c - gap)
            }
        }
    }

    /// The point at arclength `s` along the canonical geodesic from `a` to `b`.
    ///
    /// Taxicab geodesics exhaust coordinate 0 first, then 1, and so on. Circle
    /// geodesics take the shorter arc, counterclockwise on antipodal ties.
    pub fn geodesic_point(&self, a: &Point, b: &Point, s: f64) -> Result<Point> {
        self.check_pair(a, b)?;
        let d = self.dist_unchecked(a, b);
        if !(s >= -ARCLENGTH_SLACK && s <= d + ARCLENGTH_SLACK) {
            return domain(format!("arclength {s} outside [0, {d}]"));
        }
        if s <= 0.0 {
            return Ok(a.clone());
        }
        if s >= d {
            return Ok(b.clone());
        }
        Ok(match *self {
            Backend::Euclidean(_) => {
                let lambda = s / d;
                Point(a.0.iter().zip(&b.0).map(|(x, y)| x + lambda * (y - x)).collect())
            }
            Backend::Taxicab(_) => {
                let mut remaining = s;
                let coords =
                    a.0.iter()
                        .zip(&b.0)
                        .map(|(&x, &y)| {
                            let gap = (y - x).abs();
                            if remaining >= gap {
                                remaining -= gap;
                                y
                            } else {
                                let moved = x + remaining.copysign(y - x);
                                remaining = 0.0;
                                moved
                            }
                        })
                        .collect();
                Point(coords)
            }
            Backend::Circle(c) => {
                let ccw = (b.0[0] - a.0[0]).rem_euclid(c);
                let step = if ccw <= c - ccw { s } else { -s };
                Point(vec![wrap(a.0[0] + step, c)])
            }
        })
    }

    /// A point equidistant from `a` and `b` at half their distance.
    pub fn midpoint(&self, a: &Point, b: &Point) -> Result<Point> {
        let d = self.dist(a, b)?;
        self.geodesic_point(a, b, d / 2.0)
    }

    /// The point at fraction `lambda` of the way from `a` to `b`.
    ///
    /// Vector backends use the affine combination, which is a geodesic for both
    /// the Euclidean and the L1 norm and keeps distances convex in `lambda`.
    /// The circle follows its canonical arc.
    pub fn interpolate(&self, a: &Point, b: &Point, lambda: f64) -> Result<Point> {
        self.check_pair(a, b)?;
        if !(0.0..=1.0).contains(&lambda) {
            return domain(format!("interpolation fraction {lambda} outside [0, 1]"));
        }
        if lambda == 0.0 {
            return Ok(a.clone());
        }
        if lambda == 1.0 {
            return Ok(b.clone());
        }
        match *self {
            Backend::Euclidean(_) | Backend::Taxicab(_) => {
                Ok(Point(a.0.iter().zip(&b.0).map(|(x, y)| x + lambda * (y - x)).collect()))
            }
            Backend::Circle(_) => {
                let d = self.dist_unchecked(a, b);
                self.geodesic_point(a, b, lambda * d)
            }
        }
    }
}

impl Metric for Backend {
    type Element = Point;

    fn dist(&self, a: &Point, b: &Point) -> Result<f64> {
        Backend::dist(self, a, b)
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

fn wrap(x: f64, c: f64) -> f64 {
    let w = x.rem_euclid(c);
    if w >= c {
        0.0
    } else {
        w
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn p(c: &[f64]) -> Point {
        Point::new(c.to_vec())
    }

    #[test]
    fn distances_per_backend() {
        assert_eq!(Backend::Euclidean(2).dist(&p(&[0., 0.]), &p(&[3., 4.])).unwrap(), 5.0);
        assert_eq!(Backend::Taxicab(2).dist(&p(&[0., 0.]), &p(&[3., 4.])).unwrap(), 7.0);
        assert_eq!(Backend::Circle(10.0).dist(&p(&[1.]), &p(&[9.])).unwrap(), 2.0);
    }

    #[test]
    fn geodesic_points_follow_canonical_rules() {
        let e = Backend::Euclidean(2);
        assert_eq!(e.geodesic_point(&p(&[0., 0.]), &p(&[3., 4.]), 2.5).unwrap(), p(&[1.5, 2.0]));
        assert_eq!(e.geodesic_point(&p(&[0., 0.]), &p(&[3., 4.]), 0.0).unwrap(), p(&[0., 0.]));
        let t = Backend::Taxicab(2);
        assert_eq!(t.geodesic_point(&p(&[0., 0.]), &p(&[3., 4.]), 3.0).unwrap(), p(&[3., 0.]));
        assert_eq!(t.midpoint(&p(&[0., 0.]), &p(&[3., 4.])).unwrap(), p(&[3., 0.5]));
        assert_eq!(t.geodesic_point(&p(&[0., 0.]), &p(&[-3., -4.]), 5.0).unwrap(), p(&[-3., -2.]));
        let c = Backend::Circle(10.0);
        assert_eq!(c.midpoint(&p(&[0.]), &p(&[5.])).unwrap(), p(&[2.5]));
        assert_eq!(c.midpoint(&p(&[1.]), &p(&[9.])).unwrap(), p(&[0.]));
        assert_eq!(e.midpoint(&p(&[0., 0.]), &p(&[2., 0.])).unwrap(), p(&[1., 0.]));
    }

    #[test]
    fn mismatched_points_are_structural_errors() {
        let e = Backend::Euclidean(2);
        assert!(matches!(e.dist(&p(&[0.]), &p(&[1., 1.])), Err(Error::Structural(_))));
        let c = Backend::Circle(10.0);
        assert!(matches!(c.dist(&p(&[12.]), &p(&[1.])), Err(Error::Structural(_))));
        assert!(matches!(e.point(vec![1.0]), Err(Error::Structural(_))));
    }

    #[test]
    fn arclength_out_of_range_is_domain_error() {
        let e = Backend::Euclidean(2);
        assert!(matches!(e.geodesic_point(&p(&[0., 0.]), &p(&[3., 4.]), 5.5), Err(Error::Domain(_))));
        assert!(matches!(e.geodesic_point(&p(&[0., 0.]), &p(&[3., 4.]), -1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn circle_points_wrap_into_range() {
        let c = Backend::circle(10.0).unwrap();
        assert_eq!(c.point(vec![12.5]).unwrap(), p(&[2.5]));
        assert_eq!(c.point(vec![-1.0]).unwrap(), p(&[9.0]));
        assert!(Backend::circle(0.0).is_err());
    }

    #[test]
    fn zero_dimensional_euclidean_is_a_single_point() {
        let e = Backend::Euclidean(0);
        assert_eq!(e.dist(&p(&[]), &p(&[])).unwrap(), 0.0);
        assert_eq!(e.midpoint(&p(&[]), &p(&[])).unwrap(), p(&[]));
    }
}
