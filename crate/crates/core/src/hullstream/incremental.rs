//! Insertion-only convex hull kept as two monotone chains.
//!
//! The upper chain holds the highest point at each x, sorted by x, and is
//! kept strictly concave; the lower chain is stored as the upper chain of the
//! reflected points `(x, -y)`. Edge lengths and shoelace terms are updated as
//! edges appear and disappear, so perimeter and area are available in O(1)
//! after each insertion. Chains are sorted vectors: a walk hull has few
//! vertices, so binary search plus a short shift beats a tree.

use crate::geom2d::{point_segment_distance, ConvexPolygon, Vec2};

#[derive(Debug, Clone, Copy)]
struct Vertex {
    p: Vec2,
    // length and cross term of the edge to the next vertex, 0 for the last
    next_len: f64,
    next_cross: f64,
}

impl Vertex {
    #[inline]
    fn link(&mut self, next: Option<Vec2>) {
        match next {
            Some(q) => {
                self.next_len = (q - self.p).norm();
                self.next_cross = self.p.cross(q);
            }
            None => {
                self.next_len = 0.0;
                self.next_cross = 0.0;
            }
        }
    }
}

#[derive(Debug, Clone, Default)]
struct Chain {
    // strictly increasing x
    pts: Vec<Vertex>,
    length: f64,
    // sum of cross(p_i, p_{i+1}) along the chain, left to right
    cross: f64,
}

impl Chain {
    /// Inserts `p` if it lies strictly above the chain. Returns whether the
    /// chain changed.
    #[inline]
    fn insert(&mut self, p: Vec2) -> bool {
        let pts = &self.pts;
        let n = pts.len();
        // a drifting walk mostly extends the right end
        let i = match pts.last() {
            Some(v) if v.p.x < p.x => n,
            _ => pts.partition_point(|v| v.p.x < p.x),
        };
        let mut r = i;
        if i < n && pts[i].p.x == p.x {
            if p.y <= pts[i].p.y {
                return false;
            }
            r = i + 1;
        } else if i > 0 && i < n {
            let (a, b) = (pts[i - 1].p, pts[i].p);
            if (b - a).cross(p - a) <= 0.0 {
                return false;
            }
        }

        // vertices j..r are no longer strictly above the chain through p
        let mut j = i;
        while j >= 2 && (p - pts[j - 2].p).cross(pts[j - 1].p - pts[j - 2].p) <= 0.0 {
            j -= 1;
        }
        while r + 1 < n && (pts[r + 1].p - p).cross(pts[r].p - p) <= 0.0 {
            r += 1;
        }

        // edges (k, k+1) for k in j-1..r leave the chain
        for v in &pts[j.saturating_sub(1)..r.min(n)] {
            self.length -= v.next_len;
            self.cross -= v.next_cross;
        }
        let right = pts.get(r).map(|v| v.p);
        let mut mid = Vertex {
            p,
            next_len: 0.0,
            next_cross: 0.0,
        };
        mid.link(right);
        self.length += mid.next_len;
        self.cross += mid.next_cross;
        if j > 0 {
            let left = &mut self.pts[j - 1];
            left.link(Some(p));
            self.length += left.next_len;
            self.cross += left.next_cross;
        }
        self.pts.splice(j..r, std::iter::once(mid));
        true
    }

    fn first(&self) -> Option<Vec2> {
        self.pts.first().map(|v| v.p)
    }

    fn last(&self) -> Option<Vec2> {
        self.pts.last().map(|v| v.p)
    }
}

#[inline]
fn reflect(p: Vec2) -> Vec2 {
    Vec2::new(p.x, -p.y)
}

/// Convex hull of a growing point set with running perimeter and area.
#[derive(Debug, Clone, Default)]
pub struct IncrementalHull {
    upper: Chain,
    lower: Chain,
    count: usize,
}

impl IncrementalHull {
    pub fn new() -> Self {
        Self::default()
    }

    /// Number of points pushed so far.
    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    #[inline]
    pub fn push(&mut self, p: Vec2) {
        self.count += 1;
        self.upper.insert(p);
        self.lower.insert(reflect(p));
    }

    fn ends(&self) -> Option<(Vec2, Vec2, Vec2, Vec2)> {
        Some((
            self.upper.first()?,
            self.upper.last()?,
            reflect(self.lower.first()?),
            reflect(self.lower.last()?),
        ))
    }

    /// Perimeter with the flat-set convention (twice the length of a segment).
    pub fn perimeter(&self) -> f64 {
        match self.ends() {
            None => 0.0,
            Some((u_min, u_max, l_min, l_max)) => {
                self.upper.length
                    + self.lower.length
                    + (u_max - l_max).norm()
                    + (u_min - l_min).norm()
            }
        }
    }

    pub fn area(&self) -> f64 {
        match self.ends() {
            None => 0.0,
            Some((u_min, u_max, l_min, l_max)) => {
                // counter-clockwise: lower chain, right wall, upper chain reversed, left wall
                let twice =
                    -self.lower.cross + l_max.cross(u_max) - self.upper.cross + u_min.cross(l_min);
                (0.5 * twice).max(0.0)
            }
        }
    }

    /// Boundary vertices in counter-clockwise order starting from the
    /// leftmost-lowest point, without repeats.
    pub fn boundary(&self) -> Vec<Vec2> {
        let mut out: Vec<Vec2> = Vec::with_capacity(self.upper.pts.len() + self.lower.pts.len());
        for v in &self.lower.pts {
            out.push(reflect(v.p));
        }
        for p in self.upper.pts.iter().rev().map(|v| v.p) {
            if out.last() != Some(&p) {
                out.push(p);
            }
        }
        if out.len() > 1 && out.first() == out.last() {
            out.pop();
        }
        out
    }

    pub fn polygon(&self) -> Option<ConvexPolygon> {
        if self.count == 0 {
            return None;
        }
        Some(ConvexPolygon::from_ccw_unchecked(self.boundary()))
    }

    /// Distance from the origin to the hull boundary. Assumes the origin is
    /// one of the pushed points, as it is for a walk started at 0.
    pub fn inradius(&self) -> f64 {
        let b = self.boundary();
        if b.len() < 3 {
            return 0.0;
        }
        let n = b.len();
        (0..n)
            .map(|i| point_segment_distance(Vec2::ZERO, b[i], b[(i + 1) % n]))
            .fold(f64::INFINITY, f64::min)
    }

    /// Recomputes the running sums from the stored chains; used to bound drift
    /// in long runs and in tests.
    pub fn resync(&mut self) {
        for chain in [&mut self.upper, &mut self.lower] {
            chain.length = 0.0;
            chain.cross = 0.0;
            for k in 0..chain.pts.len() {
                let next = chain.pts.get(k + 1).map(|v| v.p);
                let v = &mut chain.pts[k];
                v.link(next);
                chain.length += v.next_len;
                chain.cross += v.next_cross;
            }
        }
    }
}
