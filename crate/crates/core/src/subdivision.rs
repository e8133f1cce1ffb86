//! Regular marked subdivisions and their cones in the secondary fan.

use std::collections::BTreeSet;
use std::ops::{Deref, DerefMut};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{
    affine_relation_space, convex_hull, cross, in_convex_polygon, on_segment, twice_area,
    AffineRelationSpace, Circuit, CircuitKind, LatticeLine, LatticePoint, PointConfiguration,
    RationalVector,
};
use crate::rational::{int, Rational};
use crate::subset::IndexSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubdivisionError {
    #[error("expected {expected} heights, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("point {0} is not in the configuration")]
    UnknownPoint(LatticePoint),
    #[error("the cone has codimension {0}, expected 1")]
    WrongCodimension(usize),
    #[error("the circuit is not a face of the induced subdivision")]
    NotContained,
    #[error("the cone is excluded: the triangle on the boundary circuit has its third vertex at minimal distance")]
    NotInUnion,
    #[error("invalid subdivision: {0}")]
    Invalid(String),
}

/// Heights `u_ij`, one per configuration point, in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HeightVector(pub RationalVector);

impl HeightVector {
    pub fn new(config: &PointConfiguration, u: Vec<Rational>) -> Result<Self, SubdivisionError> {
        if u.len() != config.len() {
            return Err(SubdivisionError::LengthMismatch {
                expected: config.len(),
                got: u.len(),
            });
        }
        Ok(HeightVector(RationalVector(u)))
    }

    pub fn from_i64(v: &[i64]) -> Self {
        HeightVector(RationalVector::from_i64(v))
    }

    /// Heights given per point, in any order.
    pub fn by_point(
        config: &PointConfiguration,
        pairs: impl IntoIterator<Item = (LatticePoint, Rational)>,
    ) -> Result<Self, SubdivisionError> {
        let mut u: Vec<Option<Rational>> = vec![None; config.len()];
        for (p, h) in pairs {
            let k = config
                .index_of(p)
                .ok_or(SubdivisionError::UnknownPoint(p))?;
            u[k] = Some(h);
        }
        let got = u.iter().filter(|h| h.is_some()).count();
        if got != config.len() {
            return Err(SubdivisionError::LengthMismatch {
                expected: config.len(),
                got,
            });
        }
        Ok(HeightVector(RationalVector(
            u.into_iter().flatten().collect(),
        )))
    }

    /// `u + c_x·x + c_y·y + c_1·(1,…,1)`
    pub fn shifted(
        &self,
        config: &PointConfiguration,
        c_x: &Rational,
        c_y: &Rational,
        c_1: &Rational,
    ) -> HeightVector {
        HeightVector(RationalVector(
            self.iter()
                .zip(config.points())
                .map(|(h, p)| h + c_x * int(p.i) + c_y * int(p.j) + c_1)
                .collect(),
        ))
    }
}

impl Deref for HeightVector {
    type Target = RationalVector;
    fn deref(&self) -> &RationalVector {
        &self.0
    }
}

impl DerefMut for HeightVector {
    fn deref_mut(&mut self) -> &mut RationalVector {
        &mut self.0
    }
}

/// An affine function `a·i + b·j + c`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AffineFunction {
    #[serde(with = "crate::rational::serde_rational")]
    pub a: Rational,
    #[serde(with = "crate::rational::serde_rational")]
    pub b: Rational,
    #[serde(with = "crate::rational::serde_rational")]
    pub c: Rational,
}

impl AffineFunction {
    pub fn eval(&self, p: LatticePoint) -> Rational {
        &self.a * int(p.i) + &self.b * int(p.j) + &self.c
    }

    /// The affine function through three lifted, non-collinear points.
    pub fn through(pts: [LatticePoint; 3], h: [&Rational; 3]) -> Option<AffineFunction> {
        let det = cross(pts[0], pts[1], pts[2]);
        if det == 0 {
            return None;
        }
        let (dx1, dy1) = pts[1].sub(pts[0]);
        let (dx2, dy2) = pts[2].sub(pts[0]);
        let dh1 = h[1] - h[0];
        let dh2 = h[2] - h[0];
        let det = Rational::from_integer((det as i64).into());
        let a = (&dh1 * int(dy2) - &dh2 * int(dy1)) / &det;
        let b = (&dh2 * int(dx1) - &dh1 * int(dx2)) / &det;
        let c = h[0] - &a * int(pts[0].i) - &b * int(pts[0].j);
        Some(AffineFunction { a, b, c })
    }
}

/// A cell of a marked subdivision.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    /// Vertex indices, CCW, starting at the lexicographically smallest vertex.
    pub vertices: Vec<usize>,
    /// Marked indices, sorted; always contains the vertices.
    pub marked: Vec<usize>,
}

impl Cell {
    /// The cell spanned by the given marked points.
    pub fn from_marked(config: &PointConfiguration, marked: &[usize]) -> Cell {
        let mut marked = marked.to_vec();
        marked.sort_unstable();
        marked.dedup();
        let pts: Vec<LatticePoint> = marked.iter().map(|&k| config.point(k)).collect();
        let vertices = convex_hull(&pts)
            .into_iter()
            .map(|p| {
                config
                    .index_of(p)
                    .expect("hull vertex is a configuration point")
            })
            .collect();
        Cell { vertices, marked }
    }

    pub fn polygon(&self, config: &PointConfiguration) -> Vec<LatticePoint> {
        self.vertices.iter().map(|&k| config.point(k)).collect()
    }

    /// Twice the Euclidean area, i.e. the normalized lattice area.
    pub fn twice_area(&self, config: &PointConfiguration) -> i128 {
        twice_area(&self.polygon(config))
    }

    /// Configuration points inside the closed cell.
    pub fn lattice_points(&self, config: &PointConfiguration) -> Vec<usize> {
        let poly = self.polygon(config);
        (0..config.len())
            .filter(|&k| in_convex_polygon(config.point(k), &poly))
            .collect()
    }

    pub fn marked_set(&self) -> IndexSet {
        self.marked.iter().copied().collect()
    }

    /// Directed edges `(v_k, v_{k+1})` of the vertex cycle.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |k| (self.vertices[k], self.vertices[(k + 1) % n]))
    }

    /// Whether the marked points contain all of `indices`.
    pub fn marks_all(&self, indices: &[usize]) -> bool {
        indices.iter().all(|k| self.marked.binary_search(k).is_ok())
    }
}

/// An edge of a subdivision with the cells on either side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubdivisionEdge {
    /// Endpoint indices with `ends.0 < ends.1`.
    pub ends: (usize, usize),
    /// Indices of the cells containing the edge; one cell for boundary edges.
    pub cells: Vec<usize>,
    /// Marked points on the closed edge, sorted.
    pub marked: Vec<usize>,
}

impl SubdivisionEdge {
    pub fn is_boundary(&self) -> bool {
        self.cells.len() == 1
    }

    pub fn lattice_length(&self, config: &PointConfiguration) -> i64 {
        crate::lattice::lattice_length(config.point(self.ends.0), config.point(self.ends.1))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkedSubdivision {
    pub cells: Vec<Cell>,
}

/// A subdivision with the markings forgotten.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SubdivisionType {
    /// Vertex cycles of the cells, sorted.
    pub cells: Vec<Vec<LatticePoint>>,
}

impl MarkedSubdivision {
    /// Builds a subdivision from marked point sets, one per cell.
    pub fn from_marked_sets(config: &PointConfiguration, sets: &[Vec<usize>]) -> Self {
        let mut cells: Vec<Cell> = sets.iter().map(|s| Cell::from_marked(config, s)).collect();
        cells.sort();
        MarkedSubdivision { cells }
    }

    pub fn marked_points(&self) -> IndexSet {
        self.cells
            .iter()
            .fold(IndexSet::EMPTY, |acc, c| acc.union(c.marked_set()))
    }

    /// Points marked in no cell.
    pub fn white_points(&self, config: &PointConfiguration) -> Vec<usize> {
        let marked = self.marked_points();
        (0..config.len()).filter(|&k| !marked.contains(k)).collect()
    }

    pub fn subdivision_type(&self, config: &PointConfiguration) -> SubdivisionType {
        let mut cells: Vec<Vec<LatticePoint>> =
            self.cells.iter().map(|c| c.polygon(config)).collect();
        cells.sort();
        SubdivisionType { cells }
    }

    /// All edges, sorted by endpoints.
    pub fn edges(&self, config: &PointConfiguration) -> Vec<SubdivisionEdge> {
        let mut out: Vec<SubdivisionEdge> = Vec::new();
        for (ci, cell) in self.cells.iter().enumerate() {
            for (a, b) in cell.edges() {
                let ends = (a.min(b), a.max(b));
                let (pa, pb) = (config.point(ends.0), config.point(ends.1));
                let marked: Vec<usize> = cell
                    .marked
                    .iter()
                    .copied()
                    .filter(|&k| on_segment(config.point(k), pa, pb))
                    .collect();
                match out.iter_mut().find(|e| e.ends == ends) {
                    Some(e) => {
                        e.cells.push(ci);
                        e.marked.extend(marked);
                        e.marked.sort_unstable();
                        e.marked.dedup();
                    }
                    None => out.push(SubdivisionEdge {
                        ends,
                        cells: vec![ci],
                        marked,
                    }),
                }
            }
        }
        out.sort_by_key(|e| e.ends);
        out
    }

    /// Index of a cell whose marked points contain `indices`.
    pub fn cell_marking(&self, indices: &[usize]) -> Option<usize> {
        self.cells.iter().position(|c| c.marks_all(indices))
    }

    /// Checks covering, face-to-face intersections and marking agreement.
    pub fn validate(&self, config: &PointConfiguration) -> Result<(), SubdivisionError> {
        let bad = |m: String| Err(SubdivisionError::Invalid(m));
        let total: i128 = self.cells.iter().map(|c| c.twice_area(config)).sum();
        if total != config.twice_area() {
            return bad(format!(
                "cell areas sum to {total}, polygon has {}",
                config.twice_area()
            ));
        }
        for (ci, cell) in self.cells.iter().enumerate() {
            if cell.vertices.len() < 3 || cell.twice_area(config) <= 0 {
                return bad(format!("cell {ci} is degenerate"));
            }
            if !cell.marks_all(&cell.vertices) {
                return bad(format!("cell {ci} does not mark its vertices"));
            }
            let inside = cell.lattice_points(config);
            if cell.marked.iter().any(|k| !inside.contains(k)) {
                return bad(format!("cell {ci} marks a point outside it"));
            }
        }
        for e in self.edges(config) {
            let (pa, pb) = (config.point(e.ends.0), config.point(e.ends.1));
            match e.cells.as_slice() {
                [c] => {
                    if config.boundary_edge_containing(&[pa, pb]).is_none() {
                        return bad(format!("edge {pa}–{pb} of cell {c} is unmatched"));
                    }
                }
                [c1, c2] => {
                    let side = |c: usize| {
                        let cell = &self.cells[c];
                        let far = cell
                            .vertices
                            .iter()
                            .map(|&k| cross(pa, pb, config.point(k)))
                            .find(|&s| s != 0)
                            .unwrap_or(0);
                        far.signum()
                    };
                    if side(*c1) == side(*c2) {
                        return bad(format!("cells {c1} and {c2} overlap along {pa}–{pb}"));
                    }
                    let on_edge = |c: usize| -> Vec<usize> {
                        self.cells[c]
                            .marked
                            .iter()
                            .copied()
                            .filter(|&k| on_segment(config.point(k), pa, pb))
                            .collect()
                    };
                    if on_edge(*c1) != on_edge(*c2) {
                        return bad(format!("markings disagree on {pa}–{pb}"));
                    }
                }
                _ => return bad(format!("edge {pa}–{pb} lies in more than two cells")),
            }
        }
        Ok(())
    }
}

/// The marked subdivision induced by the upper hull of the lifted points.
pub fn regular_subdivision(
    config: &PointConfiguration,
    u: &HeightVector,
) -> Result<MarkedSubdivision, SubdivisionError> {
    Ok(regular_subdivision_with_planes(config, u)?.0)
}

/// Like [`regular_subdivision`], also returning the supporting affine function of each cell.
pub fn regular_subdivision_with_planes(
    config: &PointConfiguration,
    u: &HeightVector,
) -> Result<(MarkedSubdivision, Vec<AffineFunction>), SubdivisionError> {
    let n = config.len();
    if u.len() != n {
        return Err(SubdivisionError::LengthMismatch {
            expected: n,
            got: u.len(),
        });
    }
    let pts = config.points();
    let mut seen: BTreeSet<u64> = BTreeSet::new();
    let mut found: Vec<(Cell, AffineFunction)> = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let Some(plane) =
                    AffineFunction::through([pts[a], pts[b], pts[c]], [&u[a], &u[b], &u[c]])
                else {
                    continue;
                };
                let mut on = IndexSet::EMPTY;
                let mut upper = true;
                for k in 0..n {
                    let diff = plane.eval(pts[k]) - &u[k];
                    if diff.is_negative() {
                        upper = false;
                        break;
                    }
                    if diff.is_zero() {
                        on.insert(k);
                    }
                }
                if upper && seen.insert(on.bits()) {
                    found.push((Cell::from_marked(config, &on.to_vec()), plane));
                }
            }
        }
    }
    found.sort_by(|x, y| x.0.cmp(&y.0));
    let (cells, planes) = found.into_iter().unzip();
    Ok((MarkedSubdivision { cells }, planes))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeInfo {
    pub codimension: usize,
    pub lt_dim: usize,
    pub lt: AffineRelationSpace,
    pub white_points: Vec<usize>,
}

/// Codimension of the secondary cone of `ms`, computed as `dim Σ L_{𝒜_l}`.
pub fn cone_info(config: &PointConfiguration, ms: &MarkedSubdivision) -> ConeInfo {
    let spaces: Vec<AffineRelationSpace> = ms
        .cells
        .iter()
        .map(|c| affine_relation_space(config, &c.marked))
        .collect();
    let lt = AffineRelationSpace::sum(&spaces);
    ConeInfo {
        codimension: lt.dim(),
        lt_dim: lt.dim(),
        lt,
        white_points: ms.white_points(config),
    }
}

/// The x- and y-coordinate vectors, which together with `(1,…,1)` span the lineality space.
pub fn lineality_basis(config: &PointConfiguration) -> (RationalVector, RationalVector) {
    (config.x_coordinates(), config.y_coordinates())
}

/// The circuit of a codimension one subdivision: the support of the relation spanning `L_T`.
pub fn unique_circuit(
    config: &PointConfiguration,
    ms: &MarkedSubdivision,
) -> Result<Circuit, SubdivisionError> {
    let info = cone_info(config, ms);
    if info.codimension != 1 {
        return Err(SubdivisionError::WrongCodimension(info.codimension));
    }
    let support: Vec<usize> = info.lt.basis[0]
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(k, _)| k)
        .collect();
    Circuit::recognize(config, &support)
        .ok_or_else(|| SubdivisionError::Invalid("relation support is not a circuit".into()))
}

/// `u = u_wc + c_x·x + c_y·y + c_1·(1,…,1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub u_wc: HeightVector,
    #[serde(with = "crate::rational::serde_rational")]
    pub c_x: Rational,
    #[serde(with = "crate::rational::serde_rational")]
    pub c_y: Rational,
    #[serde(with = "crate::rational::serde_rational")]
    pub c_1: Rational,
    /// Set when the two tied off-line maxima can only be reached by points on
    /// a line parallel to the circuit; the result then need not lie in a
    /// weight class of the collinear case.
    pub parallel_pair: bool,
}

impl Decomposition {
    pub fn reconstruct(&self, config: &PointConfiguration) -> HeightVector {
        self.u_wc.shifted(config, &self.c_x, &self.c_y, &self.c_1)
    }
}

fn circuit_top(u: &HeightVector, z: &Circuit) -> bool {
    let h = &u[z.indices[0]];
    z.indices.iter().all(|&k| &u[k] == h) && u.iter().all(|v| v <= h)
}

/// Splits `u` into a lineality part and a vector whose circuit heights are
/// equal and maximal; for collinear circuits the maximum off the circuit line
/// is moreover attained on two different parallel lines.
pub fn decompose_weightclass_lineality(
    config: &PointConfiguration,
    u: &HeightVector,
    z: &Circuit,
) -> Result<Decomposition, SubdivisionError> {
    let (ms, planes) = regular_subdivision_with_planes(config, u)?;
    let cell = ms
        .cell_marking(&z.indices)
        .ok_or(SubdivisionError::NotContained)?;
    let zero = Rational::zero();
    match z.kind {
        CircuitKind::TriangleWithInterior | CircuitKind::Quadrangle => {
            if circuit_top(u, z) {
                return Ok(Decomposition {
                    u_wc: u.clone(),
                    c_x: zero.clone(),
                    c_y: zero.clone(),
                    c_1: zero,
                    parallel_pair: false,
                });
            }
            let plane = &planes[cell];
            let neg = Rational::zero() - &plane.c;
            let u_wc = u.shifted(config, &-&plane.a, &-&plane.b, &neg);
            Ok(Decomposition {
                u_wc,
                c_x: plane.a.clone(),
                c_y: plane.b.clone(),
                c_1: plane.c.clone(),
                parallel_pair: false,
            })
        }
        CircuitKind::Collinear => decompose_collinear(config, u, z),
    }
}

fn decompose_collinear(
    config: &PointConfiguration,
    u: &HeightVector,
    z: &Circuit,
) -> Result<Decomposition, SubdivisionError> {
    let line = z.line(config).expect("collinear circuit");
    let mut line = line;
    if z.on_boundary(config) {
        if let Some(p) = config.points().iter().find(|&&p| line.level(p) != 0) {
            line = line.oriented_towards(*p);
        }
    }
    let (e_dual, n) = dual_pair(&line);
    let zp = z.points(config);
    // step 1: make the circuit heights equal using the coordinate along the line
    let pos = |p: LatticePoint| int(e_dual.0 * p.i + e_dual.1 * p.j);
    let (h0, h1) = (&u[z.indices[0]], &u[z.indices[2]]);
    let (t0, t1) = (pos(zp[0]), pos(zp[2]));
    let beta = (h1 - h0) / (&t1 - &t0);
    let c0 = h0 - &beta * &t0;
    if &beta * pos(zp[1]) + &c0 != u[z.indices[1]] {
        return Err(SubdivisionError::NotContained);
    }
    let u1: Vec<Rational> = config
        .points()
        .iter()
        .zip(u.iter())
        .map(|(&p, h)| h - &beta * pos(p) - &c0)
        .collect();
    // step 2: rotate about the circuit line
    let off: Vec<(i64, &Rational)> = config
        .points()
        .iter()
        .zip(u1.iter())
        .filter_map(|(&p, h)| {
            let k = line.level(p);
            (k != 0).then_some((k, h))
        })
        .collect();
    let mut levels: Vec<(i64, Rational)> = Vec::new();
    for (k, h) in &off {
        match levels.iter_mut().find(|(l, _)| l == k) {
            Some((_, o)) if *o < **h => *o = (*h).clone(),
            Some(_) => {}
            None => levels.push((*k, (*h).clone())),
        }
    }
    let value = |alpha: &Rational, k: i64, o: &Rational| o - alpha * int(k);
    let feasible = |alpha: &Rational| {
        levels
            .iter()
            .all(|(k, o)| !value(alpha, *k, o).is_positive())
    };
    let mut best: Option<Rational> = None;
    for (x, (k, o)) in levels.iter().enumerate() {
        for (l, p) in &levels[x + 1..] {
            let alpha = (o - p) / int(k - l);
            if !feasible(&alpha) {
                continue;
            }
            let top = levels
                .iter()
                .map(|(m, q)| value(&alpha, *m, q))
                .max()
                .expect("nonempty");
            if value(&alpha, *k, o) != top {
                continue;
            }
            let better = match &best {
                None => true,
                Some(b) => (alpha.abs(), &alpha) < (b.abs(), b),
            };
            if better {
                best = Some(alpha);
            }
        }
    }
    let alpha = best.ok_or(SubdivisionError::NotInUnion)?;
    let top = levels
        .iter()
        .map(|(m, q)| value(&alpha, *m, q))
        .max()
        .expect("nonempty");
    let parallel_pair = levels.iter().any(|(k, o)| {
        value(&alpha, *k, o) == top && off.iter().filter(|(l, h)| l == k && *h == o).count() >= 2
    });
    // u = u_wc + β·pos + c0 + α·level, level(p) = <n, p> - <n, base>
    let base_level = int(n.0 * line.base.i + n.1 * line.base.j);
    let c_x = &beta * int(e_dual.0) + &alpha * int(n.0);
    let c_y = &beta * int(e_dual.1) + &alpha * int(n.1);
    let c_1 = &c0 - &alpha * base_level;
    let u_wc = u.shifted(config, &-&c_x, &-&c_y, &-&c_1);
    Ok(Decomposition {
        u_wc,
        c_x,
        c_y,
        c_1,
        parallel_pair,
    })
}

/// Linear forms `(e, n)` with `<e, d> = 1`, `<n, d> = 0` for the direction `d`
/// of the line, with `n` its oriented normal.
fn dual_pair(line: &LatticeLine) -> ((i64, i64), (i64, i64)) {
    let (a, b) = line.direction;
    let e = crate::lattice::bezout(a, b);
    debug_assert_eq!(a * e.0 + b * e.1, 1);
    (e, line.normal)
}

/// Whether a codimension one cone meets the tropical discriminant, i.e. is
/// not one of the excluded boundary-circuit cones.
pub fn is_discriminant_cone(
    config: &PointConfiguration,
    ms: &MarkedSubdivision,
) -> Result<bool, SubdivisionError> {
    let z = unique_circuit(config, ms)?;
    if z.kind != CircuitKind::Collinear || !z.on_boundary(config) {
        return Ok(true);
    }
    let line = z.line(config).expect("collinear");
    let cell = ms
        .cell_marking(&z.indices)
        .ok_or(SubdivisionError::NotContained)?;
    let far = ms.cells[cell]
        .vertices
        .iter()
        .map(|&k| line.level(config.point(k)).abs())
        .max()
        .unwrap_or(0);
    Ok(far != 1)
}
