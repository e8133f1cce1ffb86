//! Planar lattice point configurations, affine relation spaces and circuits.
//!
//! A [`PointConfiguration`] is the set of lattice points of a convex lattice
//! polygon, stored in lexicographic order. Every vector in this crate that is
//! indexed by points uses that order.

use std::fmt;
use std::ops::{Deref, DerefMut};

use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::linalg::{self, Matrix};
use crate::rational::{int, one, serde_rational_vec, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint {
    pub i: i64,
    pub j: i64,
}

impl LatticePoint {
    pub const fn new(i: i64, j: i64) -> Self {
        LatticePoint { i, j }
    }

    /// Sort key of the canonical point order: by row `j`, then by `i`.
    pub fn row_major(self) -> (i64, i64) {
        (self.j, self.i)
    }

    pub fn sub(self, other: LatticePoint) -> (i64, i64) {
        (self.i - other.i, self.j - other.j)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.i, self.j)
    }
}

impl Serialize for LatticePoint {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.i, self.j].serialize(s)
    }
}

impl<'de> Deserialize<'de> for LatticePoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [i, j] = <[i64; 2]>::deserialize(d)?;
        Ok(LatticePoint { i, j })
    }
}

/// Twice the signed area of the triangle `o, a, b`.
pub fn cross(o: LatticePoint, a: LatticePoint, b: LatticePoint) -> i128 {
    let (ax, ay) = a.sub(o);
    let (bx, by) = b.sub(o);
    ax as i128 * by as i128 - ay as i128 * bx as i128
}

/// Number of lattice segments between two lattice points.
pub fn lattice_length(a: LatticePoint, b: LatticePoint) -> i64 {
    let (dx, dy) = b.sub(a);
    num_integer::gcd(dx, dy)
}

/// Primitive integer vector in the direction of `(dx, dy)`.
pub fn primitive(dx: i64, dy: i64) -> (i64, i64) {
    let g = num_integer::gcd(dx, dy);
    if g == 0 {
        (0, 0)
    } else {
        (dx / g, dy / g)
    }
}

/// Twice the area of a simple polygon given as a CCW cycle.
pub fn twice_area(poly: &[LatticePoint]) -> i128 {
    if poly.len() < 3 {
        return 0;
    }
    let o = poly[0];
    poly.windows(2).skip(1).map(|w| cross(o, w[0], w[1])).sum()
}

/// Convex hull as a CCW cycle without collinear vertices, starting at the
/// lexicographically smallest vertex.
pub fn convex_hull(points: &[LatticePoint]) -> Vec<LatticePoint> {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<LatticePoint> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<LatticePoint> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Inclusive containment test for a CCW convex polygon.
pub fn in_convex_polygon(p: LatticePoint, poly: &[LatticePoint]) -> bool {
    match poly.len() {
        0 => false,
        1 => poly[0] == p,
        2 => on_segment(p, poly[0], poly[1]),
        n => (0..n).all(|k| cross(poly[k], poly[(k + 1) % n], p) >= 0),
    }
}

/// Whether `p` lies on the closed segment `[a, b]`.
pub fn on_segment(p: LatticePoint, a: LatticePoint, b: LatticePoint) -> bool {
    cross(a, b, p) == 0
        && p.i >= a.i.min(b.i)
        && p.i <= a.i.max(b.i)
        && p.j >= a.j.min(b.j)
        && p.j <= a.j.max(b.j)
}

/// Whether the given points are affinely independent.
pub fn affinely_independent(points: &[LatticePoint]) -> bool {
    match points.len() {
        0 | 1 => true,
        2 => points[0] != points[1],
        3 => cross(points[0], points[1], points[2]) != 0,
        _ => false,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("a point configuration needs at least three points")]
    TooFewPoints,
    #[error("point {0} occurs twice")]
    Duplicate(LatticePoint),
    #[error("the points are collinear; the polygon is degenerate")]
    Degenerate,
    #[error("lattice point {0} of the polygon is missing from the configuration")]
    MissingLatticePoint(LatticePoint),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointConfiguration {
    points: Vec<LatticePoint>,
    polygon: Vec<LatticePoint>,
    complete: bool,
}

impl PointConfiguration {
    /// All lattice points of a convex lattice polygon. Rejects point sets that
    /// miss some lattice point of their convex hull.
    pub fn new(points: impl IntoIterator<Item = LatticePoint>) -> Result<Self, ConfigError> {
        let cfg = Self::relaxed(points)?;
        if let Some(missing) = cfg
            .lattice_points_of_hull()
            .into_iter()
            .find(|p| cfg.index_of(*p).is_none())
        {
            return Err(ConfigError::MissingLatticePoint(missing));
        }
        Ok(PointConfiguration {
            complete: true,
            ..cfg
        })
    }

    /// Any non-degenerate planar point set, not necessarily all lattice
    /// points of its hull. Results computed on such configurations are not
    /// covered by the classification for full polygons.
    pub fn relaxed(points: impl IntoIterator<Item = LatticePoint>) -> Result<Self, ConfigError> {
        let mut pts: Vec<LatticePoint> = points.into_iter().collect();
        pts.sort_by_key(|p| p.row_major());
        if let Some(w) = pts.windows(2).find(|w| w[0] == w[1]) {
            return Err(ConfigError::Duplicate(w[0]));
        }
        if pts.len() < 3 {
            return Err(ConfigError::TooFewPoints);
        }
        let polygon = convex_hull(&pts);
        if polygon.len() < 3 {
            return Err(ConfigError::Degenerate);
        }
        let complete = false;
        let mut cfg = PointConfiguration {
            points: pts,
            polygon,
            complete,
        };
        cfg.complete = cfg
            .lattice_points_of_hull()
            .into_iter()
            .all(|p| cfg.index_of(p).is_some());
        Ok(cfg)
    }

    /// All lattice points of the convex hull of `vertices`.
    pub fn from_polygon(vertices: &[LatticePoint]) -> Result<Self, ConfigError> {
        let hull = convex_hull(vertices);
        if hull.len() < 3 {
            return Err(ConfigError::Degenerate);
        }
        Self::new(lattice_points_in(&hull))
    }

    pub fn from_pairs(pairs: &[(i64, i64)]) -> Result<Self, ConfigError> {
        Self::new(pairs.iter().map(|&(i, j)| LatticePoint::new(i, j)))
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    pub fn point(&self, k: usize) -> LatticePoint {
        self.points[k]
    }

    /// Vertices of the convex hull, CCW from the smallest vertex.
    pub fn polygon(&self) -> &[LatticePoint] {
        &self.polygon
    }

    /// Whether the configuration contains every lattice point of its hull.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn index_of(&self, p: LatticePoint) -> Option<usize> {
        self.points
            .binary_search_by_key(&p.row_major(), |q| q.row_major())
            .ok()
    }

    pub fn twice_area(&self) -> i128 {
        twice_area(&self.polygon)
    }

    /// Whether `p` lies on the boundary of the polygon.
    pub fn on_boundary(&self, p: LatticePoint) -> bool {
        let n = self.polygon.len();
        (0..n).any(|k| on_segment(p, self.polygon[k], self.polygon[(k + 1) % n]))
    }

    /// Index of a polygon edge containing all given points, if any.
    pub fn boundary_edge_containing(&self, pts: &[LatticePoint]) -> Option<usize> {
        let n = self.polygon.len();
        (0..n).find(|&k| {
            pts.iter()
                .all(|&p| on_segment(p, self.polygon[k], self.polygon[(k + 1) % n]))
        })
    }

    fn lattice_points_of_hull(&self) -> Vec<LatticePoint> {
        lattice_points_in(&self.polygon)
    }

    /// The 3×s matrix with rows `(1,…,1)`, the i-coordinates and the j-coordinates.
    pub fn affine_matrix(&self) -> Matrix {
        Matrix::from_rows(vec![
            vec![one(); self.len()],
            self.points.iter().map(|p| int(p.i)).collect(),
            self.points.iter().map(|p| int(p.j)).collect(),
        ])
    }

    pub fn x_coordinates(&self) -> RationalVector {
        RationalVector(self.points.iter().map(|p| int(p.i)).collect())
    }

    pub fn y_coordinates(&self) -> RationalVector {
        RationalVector(self.points.iter().map(|p| int(p.j)).collect())
    }
}

/// Lattice points of a CCW convex polygon, in lexicographic order.
pub fn lattice_points_in(poly: &[LatticePoint]) -> Vec<LatticePoint> {
    let (lo_i, hi_i) = (
        poly.iter().map(|p| p.i).min().unwrap_or(0),
        poly.iter().map(|p| p.i).max().unwrap_or(-1),
    );
    let (lo_j, hi_j) = (
        poly.iter().map(|p| p.j).min().unwrap_or(0),
        poly.iter().map(|p| p.j).max().unwrap_or(-1),
    );
    let mut out = Vec::new();
    for i in lo_i..=hi_i {
        for j in lo_j..=hi_j {
            let p = LatticePoint::new(i, j);
            if in_convex_polygon(p, poly) {
                out.push(p);
            }
        }
    }
    out
}

/// A vector of exact rationals indexed by configuration points.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct RationalVector(pub Vec<Rational>);

impl RationalVector {
    pub fn zeros(n: usize) -> Self {
        RationalVector(vec![Rational::zero(); n])
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        RationalVector(vec![c; n])
    }

    pub fn from_i64(v: &[i64]) -> Self {
        RationalVector(v.iter().map(|&x| int(x)).collect())
    }

    pub fn add(&self, other: &RationalVector) -> RationalVector {
        assert_eq!(self.len(), other.len());
        RationalVector(self.iter().zip(other.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &RationalVector) -> RationalVector {
        assert_eq!(self.len(), other.len());
        RationalVector(self.iter().zip(other.iter()).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: &Rational) -> RationalVector {
        RationalVector(self.iter().map(|a| a * c).collect())
    }

    /// `self + c·other`
    pub fn add_scaled(&self, c: &Rational, other: &RationalVector) -> RationalVector {
        self.add(&other.scale(c))
    }

    pub fn into_inner(self) -> Vec<Rational> {
        self.0
    }
}

impl Deref for RationalVector {
    type Target = Vec<Rational>;
    fn deref(&self) -> &Self::Target {
        &self.0
    }
}

impl DerefMut for RationalVector {
    fn deref_mut(&mut self) -> &mut Self::Target {
        &mut self.0
    }
}

impl From<Vec<Rational>> for RationalVector {
    fn from(v: Vec<Rational>) -> Self {
        RationalVector(v)
    }
}

impl Serialize for RationalVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serde_rational_vec::serialize(&self.0, s)
    }
}

impl<'de> Deserialize<'de> for RationalVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        serde_rational_vec::deserialize(d).map(RationalVector)
    }
}

/// A linear subspace of affine relations `λ` with `Σλ_k·m_k = 0` and `Σλ_k = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineRelationSpace {
    pub basis: Vec<RationalVector>,
}

impl AffineRelationSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        let basis: Vec<Vec<Rational>> = self.basis.iter().map(|b| b.0.clone()).collect();
        if basis.is_empty() {
            return v.iter().all(Zero::is_zero);
        }
        linalg::in_span(&basis, v)
    }

    /// Equality as subspaces.
    pub fn span_eq(&self, other: &AffineRelationSpace) -> bool {
        self.dim() == other.dim() && other.basis.iter().all(|b| self.contains(b))
    }

    /// The subspace sum, with a reduced echelon basis.
    pub fn sum<'a>(
        spaces: impl IntoIterator<Item = &'a AffineRelationSpace>,
    ) -> AffineRelationSpace {
        let rows: Vec<Vec<Rational>> = spaces
            .into_iter()
            .flat_map(|s| s.basis.iter().map(|b| b.0.clone()))
            .collect();
        if rows.is_empty() {
            return AffineRelationSpace { basis: Vec::new() };
        }
        AffineRelationSpace {
            basis: Matrix::from_rows(rows)
                .row_space()
                .into_iter()
                .map(RationalVector)
                .collect(),
        }
    }
}

/// Affine relations among the points indexed by `support`, embedded in `ℚ^s`.
pub fn affine_relation_space(
    config: &PointConfiguration,
    support: &[usize],
) -> AffineRelationSpace {
    let mut support = support.to_vec();
    support.sort_unstable();
    support.dedup();
    let sub = config.affine_matrix().select_columns(&support);
    let basis = sub
        .kernel()
        .into_iter()
        .map(|k| {
            let mut v = vec![Rational::zero(); config.len()];
            for (slot, val) in support.iter().zip(k) {
                v[*slot] = val;
            }
            RationalVector(v)
        })
        .collect();
    AffineRelationSpace { basis }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CircuitKind {
    /// A triangle with one point in its interior.
    #[serde(rename = "A")]
    TriangleWithInterior,
    /// Four points in convex position, no three collinear.
    #[serde(rename = "B")]
    Quadrangle,
    /// Three collinear points.
    #[serde(rename = "C")]
    Collinear,
}

/// An inclusion-minimal affinely dependent set of configuration points.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Circuit {
    pub indices: Vec<usize>,
    pub kind: CircuitKind,
}

impl Circuit {
    /// Recognizes `indices` as a circuit of `config`, if it is one.
    pub fn recognize(config: &PointConfiguration, indices: &[usize]) -> Option<Circuit> {
        let mut idx = indices.to_vec();
        idx.sort_unstable();
        idx.dedup();
        let pts: Vec<LatticePoint> = idx.iter().map(|&k| config.point(k)).collect();
        let kind = match pts.len() {
            3 if cross(pts[0], pts[1], pts[2]) == 0 => CircuitKind::Collinear,
            4 => {
                let no_three_collinear = (0..4).all(|skip| {
                    let rest: Vec<LatticePoint> =
                        (0..4).filter(|&k| k != skip).map(|k| pts[k]).collect();
                    affinely_independent(&rest)
                });
                if !no_three_collinear {
                    return None;
                }
                if convex_hull(&pts).len() == 3 {
                    CircuitKind::TriangleWithInterior
                } else {
                    CircuitKind::Quadrangle
                }
            }
            _ => return None,
        };
        Some(Circuit { indices: idx, kind })
    }

    pub fn points(&self, config: &PointConfiguration) -> Vec<LatticePoint> {
        self.indices.iter().map(|&k| config.point(k)).collect()
    }

    /// For collinear circuits, whether they lie on the boundary of the polygon.
    pub fn on_boundary(&self, config: &PointConfiguration) -> bool {
        self.kind == CircuitKind::Collinear
            && config
                .boundary_edge_containing(&self.points(config))
                .is_some()
    }

    /// The line through a collinear circuit.
    pub fn line(&self, config: &PointConfiguration) -> Option<LatticeLine> {
        (self.kind == CircuitKind::Collinear).then(|| {
            let pts = self.points(config);
            LatticeLine::through(pts[0], pts[2])
        })
    }
}

/// A rational line through lattice points, with a primitive direction and a
/// primitive normal so that `(direction, normal)` is a lattice basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LatticeLine {
    pub base: LatticePoint,
    pub direction: (i64, i64),
    pub normal: (i64, i64),
}

impl LatticeLine {
    pub fn through(a: LatticePoint, b: LatticePoint) -> LatticeLine {
        let (dx, dy) = b.sub(a);
        let mut d = primitive(dx, dy);
        if d.0 < 0 || (d.0 == 0 && d.1 < 0) {
            d = (-d.0, -d.1);
        }
        LatticeLine {
            base: a,
            direction: d,
            normal: (-d.1, d.0),
        }
    }

    /// Signed lattice distance from the line.
    pub fn level(&self, p: LatticePoint) -> i64 {
        let (dx, dy) = p.sub(self.base);
        self.normal.0 * dx + self.normal.1 * dy
    }

    /// Coordinate along the line, so that `(position, level)` are unimodular coordinates.
    pub fn position(&self, p: LatticePoint) -> i64 {
        let (dx, dy) = p.sub(self.base);
        let (a, b) = self.direction;
        // u·a + v·b = 1, so det[(u, v); normal] = 1
        let (u, v) = bezout(a, b);
        u * dx + v * dy
    }

    /// Reverses the normal so that `p` has positive level.
    pub fn oriented_towards(mut self, p: LatticePoint) -> LatticeLine {
        if self.level(p) < 0 {
            self.normal = (-self.normal.0, -self.normal.1);
        }
        self
    }
}

/// `(u, v)` with `u·a + v·b = gcd(a, b)`.
pub fn bezout(a: i64, b: i64) -> (i64, i64) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i64, 0i64);
    let (mut old_t, mut t) = (0i64, 1i64);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_s, -old_t)
    } else {
        (old_s, old_t)
    }
}

/// All circuits of the configuration, sorted by their index lists.
pub fn circuits(config: &PointConfiguration) -> Vec<Circuit> {
    let n = config.len();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if let Some(z) = Circuit::recognize(config, &[a, b, c]) {
                    out.push(z);
                }
                for d in c + 1..n {
                    if let Some(z) = Circuit::recognize(config, &[a, b, c, d]) {
                        out.push(z);
                    }
                }
            }
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[(i64, i64)]) -> Vec<LatticePoint> {
        v.iter().map(|&(i, j)| LatticePoint::new(i, j)).collect()
    }

    #[test]
    fn canonical_order_and_polygon() {
        let cfg = PointConfiguration::from_pairs(&[(1, 2), (0, 0), (2, 0), (1, 0), (1, 1), (0, 1)])
            .unwrap();
        assert_eq!(
            cfg.points(),
            pts(&[(0, 0), (1, 0), (2, 0), (0, 1), (1, 1), (1, 2)]).as_slice()
        );
        assert_eq!(
            cfg.polygon(),
            pts(&[(0, 0), (2, 0), (1, 2), (0, 1)]).as_slice()
        );
        assert!(cfg.is_complete());
    }

    #[test]
    fn rejections() {
        assert_eq!(
            PointConfiguration::from_pairs(&[(0, 0), (1, 0), (2, 0)]),
            Err(ConfigError::Degenerate)
        );
        assert_eq!(
            PointConfiguration::from_pairs(&[(0, 0), (2, 0), (0, 2)]),
            Err(ConfigError::MissingLatticePoint(LatticePoint::new(0, 1)))
        );
        assert_eq!(
            PointConfiguration::from_pairs(&[(0, 0), (0, 0), (1, 0), (0, 1)]),
            Err(ConfigError::Duplicate(LatticePoint::new(0, 0)))
        );
        let relaxed = PointConfiguration::relaxed(pts(&[(0, 0), (2, 0), (0, 2)])).unwrap();
        assert!(!relaxed.is_complete());
    }

    #[test]
    fn from_polygon_collects_lattice_points() {
        let cfg = PointConfiguration::from_polygon(&pts(&[(0, 0), (2, 1), (1, 2)])).unwrap();
        assert_eq!(
            cfg.points(),
            pts(&[(0, 0), (1, 1), (2, 1), (1, 2)]).as_slice()
        );
        assert_eq!(cfg.twice_area(), 3);
    }

    #[test]
    fn relation_space_of_unit_triangle_is_zero() {
        let cfg = PointConfiguration::from_pairs(&[(0, 0), (1, 0), (0, 1)]).unwrap();
        assert_eq!(affine_relation_space(&cfg, &[0, 1, 2]).dim(), 0);
    }

    #[test]
    fn relation_space_of_partial_support() {
        // canonical order: (0,0) (1,0) (0,1) (1,1) (1,2)
        let cfg =
            PointConfiguration::from_pairs(&[(0, 0), (1, 0), (0, 1), (1, 1), (1, 2)]).unwrap();
        // the unit square: (0,0) + (1,1) = (1,0) + (0,1)
        let sq = affine_relation_space(&cfg, &[0, 1, 2, 3]);
        assert_eq!(sq.dim(), 1);
        assert!(sq.contains(&RationalVector::from_i64(&[1, -1, -1, 1, 0])));
        // the collinear triple on x = 1
        let line = affine_relation_space(&cfg, &[1, 3, 4]);
        assert_eq!(line.dim(), 1);
        assert!(line.contains(&RationalVector::from_i64(&[0, 1, 0, -2, 1])));
        for b in &sq.basis {
            assert!(cfg.affine_matrix().mul_vec(b).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn circuit_kinds() {
        let line = PointConfiguration::from_pairs(&[(0, 0), (1, 0), (2, 0), (0, 1)]).unwrap();
        let z = circuits(&line);
        assert_eq!(z.len(), 1);
        assert_eq!(z[0].kind, CircuitKind::Collinear);
        assert!(z[0].on_boundary(&line));

        let square = PointConfiguration::from_pairs(&[(0, 0), (1, 0), (0, 1), (1, 1)]).unwrap();
        let z = circuits(&square);
        assert_eq!(
            z,
            vec![Circuit {
                indices: vec![0, 1, 2, 3],
                kind: CircuitKind::Quadrangle
            }]
        );

        let tri = PointConfiguration::from_pairs(&[(0, 0), (2, 1), (1, 2), (1, 1)]).unwrap();
        let z = circuits(&tri);
        assert_eq!(z.len(), 1);
        assert_eq!(z[0].kind, CircuitKind::TriangleWithInterior);
    }

    #[test]
    fn lattice_line_coordinates_are_unimodular() {
        let line = LatticeLine::through(LatticePoint::new(1, 0), LatticePoint::new(3, 2));
        assert_eq!(line.direction, (1, 1));
        let e = [LatticePoint::new(2, 0), LatticePoint::new(1, 1)];
        let m = [
            [
                line.position(e[0]) - line.position(line.base),
                line.level(e[0]),
            ],
            [
                line.position(e[1]) - line.position(line.base),
                line.level(e[1]),
            ],
        ];
        assert_eq!((m[0][0] * m[1][1] - m[0][1] * m[1][0]).abs(), 1);
        assert_eq!(line.level(LatticePoint::new(5, 4)), 0);
        assert_eq!(line.level(LatticePoint::new(1, 1)).abs(), 1);
    }
}
