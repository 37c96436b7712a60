//! Planar convex geometry: hulls, intrinsic volumes and support functions.
//!
//! Perimeter follows the intrinsic-volume convention for flat sets: a segment
//! has perimeter twice its length, a point has perimeter zero. With that
//! convention the Steiner formula `area(A + rB) = area(A) + r*perimeter(A) + pi*r^2`
//! holds for every compact convex set, degenerate or not.

use std::f64::consts::PI;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative tolerance for the collinearity test in hull construction.
pub const ORIENT_RTOL: f64 = 1e-12;

/// Angles used by [`hausdorff`] in addition to the edge normals.
pub const HAUSDORFF_ANGLES: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    #[inline]
    pub const fn new(x: f64, y: f64) -> Self {
        Vec2 { x, y }
    }

    /// Checked constructor rejecting NaN and infinities.
    pub fn try_new(x: f64, y: f64) -> Result<Self> {
        if x.is_finite() && y.is_finite() {
            Ok(Vec2 { x, y })
        } else {
            Err(Error::NonFinite(x, y))
        }
    }

    /// Unit vector at angle `theta` (radians, anticlockwise from the x axis).
    #[inline]
    pub fn from_angle(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Vec2 { x: c, y: s }
    }

    #[inline]
    pub fn dot(self, o: Vec2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the 3-d cross product.
    #[inline]
    pub fn cross(self, o: Vec2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    #[inline]
    pub fn norm(self) -> f64 {
        // hypot is several times slower and its overflow guard is not needed here
        (self.x * self.x + self.y * self.y).sqrt()
    }

    #[inline]
    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    /// Rotation by +pi/2.
    #[inline]
    pub fn perp(self) -> Vec2 {
        Vec2::new(-self.y, self.x)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    #[inline]
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    #[inline]
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    #[inline]
    fn mul(self, k: f64) -> Vec2 {
        Vec2::new(self.x * k, self.y * k)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    #[inline]
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Degeneracy {
    Point,
    Segment,
    FullDim,
}

/// Extreme points of a compact convex set in counter-clockwise order.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexPolygon {
    vertices: Vec<Vec2>,
    degeneracy: Degeneracy,
}

impl ConvexPolygon {
    /// Builds a polygon from vertices already known to be in convex position.
    ///
    /// The degeneracy tag is derived from the vertex count.
    pub(crate) fn from_ccw_unchecked(vertices: Vec<Vec2>) -> Self {
        let degeneracy = match vertices.len() {
            1 => Degeneracy::Point,
            2 => Degeneracy::Segment,
            _ => Degeneracy::FullDim,
        };
        ConvexPolygon {
            vertices,
            degeneracy,
        }
    }

    pub fn vertices(&self) -> &[Vec2] {
        &self.vertices
    }

    pub fn degeneracy(&self) -> Degeneracy {
        self.degeneracy
    }

    /// Directed edges `(v_i, v_{i+1})`, closing back to the first vertex.
    /// A segment yields its two opposite edges, a point none.
    pub fn edges(&self) -> impl Iterator<Item = (Vec2, Vec2)> + '_ {
        let n = self.vertices.len();
        let count = if n < 2 { 0 } else { n };
        (0..count).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    pub fn diameter(&self) -> f64 {
        diameter(&self.vertices)
    }

    /// Membership with an absolute tolerance of `1e-9` times the polygon's size.
    pub fn contains(&self, p: Vec2) -> bool {
        let scale = self
            .diameter()
            .max(
                self.vertices
                    .iter()
                    .map(|v| v.x.abs().max(v.y.abs()))
                    .fold(0.0, f64::max),
            )
            .max(p.x.abs().max(p.y.abs()));
        let tol = 1e-9 * scale;
        match self.degeneracy {
            Degeneracy::Point => (p - self.vertices[0]).norm() <= tol,
            Degeneracy::Segment => {
                point_segment_distance(p, self.vertices[0], self.vertices[1]) <= tol
            }
            Degeneracy::FullDim => self.edges().all(|(a, b)| {
                let d = b - a;
                // signed distance of p to the left of edge a->b
                d.cross(p - a) / d.norm() >= -tol
            }),
        }
    }
}

pub fn diameter(points: &[Vec2]) -> f64 {
    let mut best = 0.0f64;
    for (i, a) in points.iter().enumerate() {
        for b in &points[i + 1..] {
            best = best.max((*a - *b).norm_sq());
        }
    }
    best.sqrt()
}

/// Andrew's monotone chain. Collinear and duplicate points are dropped.
pub fn convex_hull(points: &[Vec2]) -> Result<ConvexPolygon> {
    if points.is_empty() {
        return Err(Error::EmptyInput);
    }
    if let Some(bad) = points.iter().find(|p| !p.is_finite()) {
        return Err(Error::NonFinite(bad.x, bad.y));
    }
    let mut pts = points.to_vec();
    // partial_cmp is total on finite values and, unlike total_cmp, treats -0.0 == 0.0
    pts.sort_by(|a, b| {
        a.x.partial_cmp(&b.x)
            .unwrap()
            .then(a.y.partial_cmp(&b.y).unwrap())
    });
    pts.dedup();
    if pts.len() == 1 {
        return Ok(ConvexPolygon::from_ccw_unchecked(pts));
    }

    let scale = pts
        .iter()
        .map(|p| p.x.abs().max(p.y.abs()))
        .fold(0.0, f64::max);
    let tol = ORIENT_RTOL * scale * scale;
    let turns_left = |a: Vec2, b: Vec2, c: Vec2| (b - a).cross(c - a) > tol;

    let mut hull: Vec<Vec2> = Vec::with_capacity(pts.len() + 1);
    for &p in &pts {
        while hull.len() >= 2 && !turns_left(hull[hull.len() - 2], hull[hull.len() - 1], p) {
            hull.pop();
        }
        hull.push(p);
    }
    let lower_len = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower_len && !turns_left(hull[hull.len() - 2], hull[hull.len() - 1], p)
        {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    Ok(ConvexPolygon::from_ccw_unchecked(hull))
}

pub fn perimeter(poly: &ConvexPolygon) -> f64 {
    match poly.degeneracy {
        Degeneracy::Point => 0.0,
        // both directed edges of the segment are counted
        Degeneracy::Segment | Degeneracy::FullDim => {
            poly.edges().map(|(a, b)| (b - a).norm()).sum()
        }
    }
}

pub fn area(poly: &ConvexPolygon) -> f64 {
    match poly.degeneracy {
        Degeneracy::Point | Degeneracy::Segment => 0.0,
        Degeneracy::FullDim => {
            let twice: f64 = poly.edges().map(|(a, b)| a.cross(b)).sum();
            (0.5 * twice).max(0.0)
        }
    }
}

/// Support function `h(e) = max_v v.e`; `dir` must be a unit vector.
pub fn support(poly: &ConvexPolygon, dir: Vec2) -> Result<f64> {
    let norm = dir.norm();
    if (norm - 1.0).abs() > 1e-12 {
        return Err(Error::NonUnitDirection(norm));
    }
    Ok(support_unchecked(poly.vertices(), dir))
}

#[inline]
fn support_unchecked(vertices: &[Vec2], dir: Vec2) -> f64 {
    vertices
        .iter()
        .map(|v| v.dot(dir))
        .fold(f64::NEG_INFINITY, f64::max)
}

fn outward_normal_angles(poly: &ConvexPolygon) -> impl Iterator<Item = f64> + '_ {
    poly.edges().filter_map(|(a, b)| {
        let d = b - a;
        (d.norm() > 0.0).then(|| d.y.atan2(d.x) - 0.5 * PI)
    })
}

/// Hausdorff distance as the sup-norm distance of support functions, sampled
/// on a uniform angle grid together with every outward edge normal.
pub fn hausdorff(a: &ConvexPolygon, b: &ConvexPolygon) -> f64 {
    let grid = (0..HAUSDORFF_ANGLES).map(|k| 2.0 * PI * k as f64 / HAUSDORFF_ANGLES as f64);
    grid.chain(outward_normal_angles(a))
        .chain(outward_normal_angles(b))
        .map(|theta| {
            let e = Vec2::from_angle(theta);
            (support_unchecked(a.vertices(), e) - support_unchecked(b.vertices(), e)).abs()
        })
        .fold(0.0, f64::max)
}

/// Perimeter of `hull(points)` by Cauchy's formula, integrating the projected
/// width over `[0, pi)` with the midpoint rule. Independent of [`convex_hull`].
pub fn cauchy_perimeter(points: &[Vec2], n_angles: usize) -> Result<f64> {
    if points.is_empty() {
        return Err(Error::EmptyInput);
    }
    if n_angles < 4 {
        return Err(Error::InvalidArgument(format!("n_angles = {n_angles} < 4")));
    }
    let h = PI / n_angles as f64;
    let total: f64 = (0..n_angles)
        .map(|j| {
            let e = Vec2::from_angle((j as f64 + 0.5) * h);
            let (lo, hi) = points
                .iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
                    let t = p.dot(e);
                    (lo.min(t), hi.max(t))
                });
            hi - lo
        })
        .sum();
    Ok(total * h)
}

pub fn point_segment_distance(p: Vec2, a: Vec2, b: Vec2) -> f64 {
    let d = b - a;
    let len_sq = d.norm_sq();
    if len_sq == 0.0 {
        return (p - a).norm();
    }
    let t = ((p - a).dot(d) / len_sq).clamp(0.0, 1.0);
    (p - (a + d * t)).norm()
}

/// Distance from the origin to the boundary of a polygon containing it.
pub fn dist_origin_to_boundary(poly: &ConvexPolygon) -> Result<f64> {
    if !poly.contains(Vec2::ZERO) {
        return Err(Error::OriginOutside);
    }
    Ok(match poly.degeneracy {
        // a flat set is all boundary
        Degeneracy::Point | Degeneracy::Segment => 0.0,
        Degeneracy::FullDim => poly
            .edges()
            .map(|(a, b)| point_segment_distance(Vec2::ZERO, a, b))
            .fold(f64::INFINITY, f64::min),
    })
}

/// Area of the triangle spanned by `u` and `v`.
#[inline]
pub fn triangle_area(u: Vec2, v: Vec2) -> f64 {
    0.5 * u.cross(v).abs()
}

/// Area of the parallel body `poly + r B(0,1)`.
pub fn steiner_area(poly: &ConvexPolygon, r: f64) -> Result<f64> {
    if !(r >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "parallel radius {r} must be >= 0"
        )));
    }
    Ok(area(poly) + r * perimeter(poly) + PI * r * r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: f64, y: f64) -> Vec2 {
        Vec2::new(x, y)
    }

    fn unit_square() -> ConvexPolygon {
        convex_hull(&[v(0.0, 0.0), v(1.0, 0.0), v(1.0, 1.0), v(0.0, 1.0)]).unwrap()
    }

    #[test]
    fn hull_drops_interior_point() {
        let h = convex_hull(&[
            v(0.0, 0.0),
            v(1.0, 0.0),
            v(1.0, 1.0),
            v(0.0, 1.0),
            v(0.5, 0.5),
        ])
        .unwrap();
        assert_eq!(h.degeneracy(), Degeneracy::FullDim);
        assert_eq!(h.vertices().len(), 4);
        assert!(!h.vertices().contains(&v(0.5, 0.5)));
        let n = h.vertices().len();
        for i in 0..n {
            let (a, b, c) = (
                h.vertices()[i],
                h.vertices()[(i + 1) % n],
                h.vertices()[(i + 2) % n],
            );
            assert!((b - a).cross(c - a) > 0.0);
        }
    }

    #[test]
    fn collinear_points_give_segment() {
        let h = convex_hull(&[v(0.0, 0.0), v(1.0, 0.0), v(2.0, 0.0)]).unwrap();
        assert_eq!(h.degeneracy(), Degeneracy::Segment);
        assert_eq!(h.vertices(), &[v(0.0, 0.0), v(2.0, 0.0)]);
        assert_eq!(perimeter(&h), 4.0);
        assert_eq!(area(&h), 0.0);
    }

    #[test]
    fn repeated_point_gives_point() {
        let h = convex_hull(&[v(0.0, 0.0); 5]).unwrap();
        assert_eq!(h.degeneracy(), Degeneracy::Point);
        assert_eq!(h.vertices(), &[v(0.0, 0.0)]);
        assert_eq!(perimeter(&h), 0.0);
        assert_eq!(area(&h), 0.0);
    }

    #[test]
    fn signed_zero_does_not_split_a_vertex() {
        let h = convex_hull(&[v(-0.0, 1.0), v(0.0, 0.0), v(0.0, 0.5)]).unwrap();
        assert_eq!(h.degeneracy(), Degeneracy::Segment);
        assert_eq!(perimeter(&h), 2.0);
    }

    #[test]
    fn hull_errors() {
        assert_eq!(convex_hull(&[]), Err(Error::EmptyInput));
        assert!(matches!(
            convex_hull(&[v(f64::NAN, 0.0)]),
            Err(Error::NonFinite(..))
        ));
        assert!(Vec2::try_new(f64::INFINITY, 0.0).is_err());
    }

    #[test]
    fn square_and_triangle_measures() {
        let sq = unit_square();
        assert_eq!(perimeter(&sq), 4.0);
        assert_eq!(area(&sq), 1.0);
        let tri = convex_hull(&[v(0.0, 0.0), v(1.0, 0.0), v(0.0, 1.0)]).unwrap();
        assert_eq!(area(&tri), 0.5);
    }

    #[test]
    fn support_values() {
        let sq = unit_square();
        assert_eq!(support(&sq, v(1.0, 0.0)).unwrap(), 1.0);
        assert_eq!(support(&sq, v(-1.0, 0.0)).unwrap(), 0.0);
        let p = convex_hull(&[v(2.0, -3.0)]).unwrap();
        let e = Vec2::from_angle(0.7);
        assert!((support(&p, e).unwrap() - (2.0 * e.x - 3.0 * e.y)).abs() < 1e-15);
        assert!(matches!(
            support(&sq, v(2.0, 0.0)),
            Err(Error::NonUnitDirection(_))
        ));
    }

    #[test]
    fn hausdorff_examples() {
        let sq = unit_square();
        assert_eq!(hausdorff(&sq, &sq), 0.0);
        let shifted = convex_hull(&[v(1.0, 0.0), v(2.0, 0.0), v(2.0, 1.0), v(1.0, 1.0)]).unwrap();
        assert!((hausdorff(&sq, &shifted) - 1.0).abs() < 1e-6);

        // r-parallel body of the square, corners replaced by sampled arcs
        let r = 0.3;
        let mut pts = Vec::new();
        for &c in sq.vertices() {
            for k in 0..=2048 {
                pts.push(c + Vec2::from_angle(2.0 * PI * k as f64 / 2048.0) * r);
            }
        }
        let body = convex_hull(&pts).unwrap();
        assert!((hausdorff(&sq, &body) - r).abs() < 1e-6);
    }

    #[test]
    fn cauchy_examples() {
        let sq = [v(0.0, 0.0), v(1.0, 0.0), v(1.0, 1.0), v(0.0, 1.0)];
        assert!((cauchy_perimeter(&sq, 4096).unwrap() - 4.0).abs() < 5e-3);
        let seg = [v(0.0, 0.0), v(1.0, 0.0)];
        assert!((cauchy_perimeter(&seg, 4096).unwrap() - 2.0).abs() < 5e-3);
        assert_eq!(cauchy_perimeter(&[v(3.0, 4.0)], 4096).unwrap(), 0.0);
        assert_eq!(cauchy_perimeter(&[], 4096), Err(Error::EmptyInput));
        assert!(cauchy_perimeter(&sq, 3).is_err());
    }

    #[test]
    fn origin_distance_examples() {
        let centred =
            convex_hull(&[v(-0.5, -0.5), v(0.5, -0.5), v(0.5, 0.5), v(-0.5, 0.5)]).unwrap();
        assert!((dist_origin_to_boundary(&centred).unwrap() - 0.5).abs() < 1e-15);
        assert_eq!(dist_origin_to_boundary(&unit_square()).unwrap(), 0.0);
        let seg = convex_hull(&[v(-1.0, -1.0), v(2.0, 2.0)]).unwrap();
        assert_eq!(dist_origin_to_boundary(&seg).unwrap(), 0.0);
        let away = convex_hull(&[v(1.0, 1.0), v(2.0, 1.0), v(1.0, 2.0)]).unwrap();
        assert_eq!(dist_origin_to_boundary(&away), Err(Error::OriginOutside));
    }

    #[test]
    fn triangle_area_examples() {
        assert_eq!(triangle_area(v(1.0, 0.0), v(0.0, 1.0)), 0.5);
        assert_eq!(triangle_area(v(1.5, -2.0), v(3.0, -4.0)), 0.0);
        assert_eq!(triangle_area(v(2.0, 0.0), v(0.0, 3.0)), 3.0);
    }

    #[test]
    fn steiner_examples() {
        assert!((steiner_area(&unit_square(), 1.0).unwrap() - (5.0 + PI)).abs() < 1e-14);
        let p = convex_hull(&[v(1.0, 1.0)]).unwrap();
        assert!((steiner_area(&p, 1.0).unwrap() - PI).abs() < 1e-15);
        let s = convex_hull(&[v(0.0, 0.0), v(1.0, 0.0)]).unwrap();
        assert!((steiner_area(&s, 0.5).unwrap() - (1.0 + 0.25 * PI)).abs() < 1e-15);
        assert!(steiner_area(&s, -1.0).is_err());
    }
}
