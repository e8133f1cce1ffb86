//! Plane tropical curves dual to regular marked subdivisions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{lattice_length, primitive, LatticePoint, PointConfiguration};
use crate::linalg::{positive_kernel_point, Matrix};
use crate::rational::{int, Point2, Rational};
use crate::subdivision::{
    regular_subdivision_with_planes, HeightVector, MarkedSubdivision, SubdivisionError,
    SubdivisionType,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveVertex {
    pub point: Point2,
    /// Index of the dual cell in the subdivision.
    pub cell: usize,
    /// Vertex cycle of the dual cell.
    pub dual: Vec<LatticePoint>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveEdge {
    pub from: usize,
    pub to: usize,
    pub weight: i64,
    /// Primitive direction from `from` towards `to`.
    pub direction: (i64, i64),
    pub dual: (LatticePoint, LatticePoint),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveRay {
    pub vertex: usize,
    pub direction: (i64, i64),
    pub weight: i64,
    pub dual: (LatticePoint, LatticePoint),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TropicalCurve {
    pub vertices: Vec<CurveVertex>,
    pub edges: Vec<CurveEdge>,
    pub rays: Vec<CurveRay>,
    pub subdivision: MarkedSubdivision,
}

/// Where a point sits on a curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Location {
    Vertex(usize),
    /// Relative interior of a bounded edge, at lattice distance `from_start`
    /// from its `from` vertex.
    Edge {
        edge: usize,
        from_start: Rational,
    },
    /// Relative interior of a ray, at lattice distance `from_start` from its vertex.
    Ray {
        ray: usize,
        from_start: Rational,
    },
    Off,
}

impl TropicalCurve {
    pub fn translated(&self, dx: &Rational, dy: &Rational) -> TropicalCurve {
        let mut c = self.clone();
        for v in &mut c.vertices {
            v.point = v.point.translate(dx, dy);
        }
        c
    }

    /// Valence of a vertex: the number of incident edges and rays.
    pub fn valence(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|e| e.from == v || e.to == v)
            .count()
            + self.rays.iter().filter(|r| r.vertex == v).count()
    }

    /// Outgoing `(weight, primitive direction)` pairs at a vertex, with the
    /// directions of bounded edges recomputed from the vertex coordinates.
    pub fn outgoing(&self, v: usize) -> Vec<(i64, (i64, i64))> {
        let mut out = Vec::new();
        for e in &self.edges {
            let (a, b) = match (e.from == v, e.to == v) {
                (true, _) => (e.from, e.to),
                (_, true) => (e.to, e.from),
                _ => continue,
            };
            let d = primitive_of(&self.vertices[a].point, &self.vertices[b].point);
            out.push((e.weight, d));
        }
        out.extend(
            self.rays
                .iter()
                .filter(|r| r.vertex == v)
                .map(|r| (r.weight, r.direction)),
        );
        out
    }

    /// Whether every vertex satisfies the balancing condition.
    pub fn is_balanced(&self) -> bool {
        (0..self.vertices.len()).all(|v| {
            let (sx, sy) = self
                .outgoing(v)
                .into_iter()
                .fold((0i64, 0i64), |(sx, sy), (w, (dx, dy))| {
                    (sx + w * dx, sy + w * dy)
                });
            sx == 0 && sy == 0
        })
    }

    /// Cycle rank of the graph of vertices and bounded edges.
    pub fn genus(&self) -> usize {
        let n = self.vertices.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        let mut cycles = 0;
        for e in &self.edges {
            let (a, b) = (find(&mut parent, e.from), find(&mut parent, e.to));
            if a == b {
                cycles += 1;
            } else {
                parent[a] = b;
            }
        }
        cycles
    }

    pub fn locate(&self, p: &Point2) -> Location {
        if let Some(k) = self.vertices.iter().position(|v| &v.point == p) {
            return Location::Vertex(k);
        }
        for (k, e) in self.edges.iter().enumerate() {
            let (a, b) = (&self.vertices[e.from].point, &self.vertices[e.to].point);
            if let Some(s) = param_along(a, e.direction, p) {
                let total = param_along(a, e.direction, b).expect("edge endpoints are aligned");
                if s.is_positive() && s < total {
                    return Location::Edge {
                        edge: k,
                        from_start: s,
                    };
                }
            }
        }
        for (k, r) in self.rays.iter().enumerate() {
            if let Some(s) = param_along(&self.vertices[r.vertex].point, r.direction, p) {
                if s.is_positive() {
                    return Location::Ray {
                        ray: k,
                        from_start: s,
                    };
                }
            }
        }
        Location::Off
    }

    /// Lattice length of a bounded edge.
    pub fn edge_length(&self, e: usize) -> Rational {
        let e = &self.edges[e];
        param_along(
            &self.vertices[e.from].point,
            e.direction,
            &self.vertices[e.to].point,
        )
        .expect("edge endpoints are aligned")
    }

    pub fn curve_type(&self) -> CurveType {
        let mut cells: Vec<Vec<LatticePoint>> =
            self.vertices.iter().map(|v| v.dual.clone()).collect();
        cells.sort();
        CurveType {
            subdivision_type: SubdivisionType { cells },
            b: self.edges.len(),
            g: self.genus(),
        }
    }
}

/// `s` with `p = a + s·d`, if `p` is on the line through `a` in direction `d`.
pub fn param_along(a: &Point2, d: (i64, i64), p: &Point2) -> Option<Rational> {
    let dx = &p.x - &a.x;
    let dy = &p.y - &a.y;
    if &dx * int(d.1) != &dy * int(d.0) {
        return None;
    }
    Some(if d.0 != 0 {
        dx / int(d.0)
    } else {
        dy / int(d.1)
    })
}

/// Primitive integer direction of `b - a`.
fn primitive_of(a: &Point2, b: &Point2) -> (i64, i64) {
    let dx = &b.x - &a.x;
    let dy = &b.y - &a.y;
    let l = dx.denom().lcm(dy.denom());
    let ix: BigInt = (dx * Rational::from_integer(l.clone())).to_integer();
    let iy: BigInt = (dy * Rational::from_integer(l)).to_integer();
    let g = ix.gcd(&iy);
    if g.is_zero() {
        return (0, 0);
    }
    let to_i64 = |v: BigInt| i64::try_from(v).expect("direction fits in i64");
    (to_i64(ix / &g), to_i64(iy / &g))
}

/// Primitive outward normal of the edge `a → b` of a CCW polygon.
pub fn outward_normal(a: LatticePoint, b: LatticePoint) -> (i64, i64) {
    let (dx, dy) = b.sub(a);
    primitive(dy, -dx)
}

/// The tropical curve of `max{u_ij + i·x + j·y}`.
pub fn dual_curve(
    config: &PointConfiguration,
    u: &HeightVector,
) -> Result<TropicalCurve, SubdivisionError> {
    let (ms, planes) = regular_subdivision_with_planes(config, u)?;
    let vertices = ms
        .cells
        .iter()
        .zip(&planes)
        .enumerate()
        .map(|(k, (cell, plane))| CurveVertex {
            point: Point2::new(-plane.a.clone(), -plane.b.clone()),
            cell: k,
            dual: cell.polygon(config),
        })
        .collect();
    let mut edges = Vec::new();
    let mut rays = Vec::new();
    for e in ms.edges(config) {
        let (pa, pb) = (config.point(e.ends.0), config.point(e.ends.1));
        let weight = lattice_length(pa, pb);
        let c0 = e.cells[0];
        // orient the dual edge counterclockwise in the first cell
        let ccw = ms.cells[c0].edges().any(|(x, y)| (x, y) == e.ends);
        let (s, t) = if ccw { (pa, pb) } else { (pb, pa) };
        let direction = outward_normal(s, t);
        match e.cells.as_slice() {
            [_] => rays.push(CurveRay {
                vertex: c0,
                direction,
                weight,
                dual: (pa, pb),
            }),
            [_, c1] => edges.push(CurveEdge {
                from: c0,
                to: *c1,
                weight,
                direction,
                dual: (pa, pb),
            }),
            _ => unreachable!("an edge lies in at most two cells of a regular subdivision"),
        }
    }
    Ok(TropicalCurve {
        vertices,
        edges,
        rays,
        subdivision: ms,
    })
}

/// Normalized lattice area of the cell dual to a vertex.
pub fn vertex_multiplicity(curve: &TropicalCurve, v: usize) -> i64 {
    crate::lattice::twice_area(&curve.vertices[v].dual) as i64
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CurveType {
    pub subdivision_type: SubdivisionType,
    pub b: usize,
    pub g: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("the type admits no positive edge lengths")]
    NotRealizable,
    #[error("the type is not a subdivision of the configuration: {0}")]
    Invalid(String),
}

/// Dimension of the space of curves of the given combinatorial type.
///
/// Unknowns are the vertex positions and the bounded edge lengths; every
/// bounded edge forces its endpoints to differ by its length times its
/// direction. For a connected dual graph this is `2 + b - rank` of the
/// loop closure conditions.
pub fn type_dimension(config: &PointConfiguration, t: &CurveType) -> Result<usize, CurveError> {
    let cells = &t.subdivision_type.cells;
    let nv = cells.len();
    // interior edges: pairs of cells sharing an edge, oriented from the first cell
    let mut bounded: Vec<(usize, usize, (i64, i64))> = Vec::new();
    for (c0, poly) in cells.iter().enumerate() {
        let n = poly.len();
        for k in 0..n {
            let (a, b) = (poly[k], poly[(k + 1) % n]);
            let other = cells.iter().enumerate().find(|(c1, q)| {
                *c1 > c0 && {
                    let m = q.len();
                    (0..m).any(|l| q[l] == b && q[(l + 1) % m] == a)
                }
            });
            if let Some((c1, _)) = other {
                bounded.push((c0, c1, outward_normal(a, b)));
            } else if config.boundary_edge_containing(&[a, b]).is_none()
                && !cells.iter().enumerate().any(|(c1, q)| {
                    c1 < c0 && {
                        let m = q.len();
                        (0..m).any(|l| q[l] == b && q[(l + 1) % m] == a)
                    }
                })
            {
                return Err(CurveError::Invalid(format!("edge {a}–{b} is unmatched")));
            }
        }
    }
    let b = bounded.len();
    if b != t.b {
        return Err(CurveError::Invalid(format!(
            "type records {} bounded edges, cells give {b}",
            t.b
        )));
    }
    // equations p_to - p_from - l_e d_e = 0, unknowns (p_0, …, p_{nv-1}, l_0, …, l_{b-1})
    let ncols = 2 * nv + b;
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for (e, &(from, to, d)) in bounded.iter().enumerate() {
        for (coord, dc) in [(0usize, d.0), (1usize, d.1)] {
            let mut row = vec![Rational::zero(); ncols];
            row[2 * to + coord] += int(1);
            row[2 * from + coord] -= int(1);
            row[2 * nv + e] = int(-dc);
            rows.push(row);
        }
    }
    let rank = if rows.is_empty() {
        0
    } else {
        Matrix::from_rows(rows.clone()).rank()
    };
    // positive lengths: eliminate positions through the loop conditions
    if b > 0 {
        let closure = loop_conditions(nv, &bounded);
        if !closure.is_empty() && positive_kernel_point(&Matrix::from_rows(closure)).is_none() {
            return Err(CurveError::NotRealizable);
        }
    }
    Ok(ncols - rank)
}

/// Two rows per fundamental cycle: the signed sum of `l_e·d_e` around the cycle.
fn loop_conditions(nv: usize, bounded: &[(usize, usize, (i64, i64))]) -> Vec<Vec<Rational>> {
    let b = bounded.len();
    // spanning forest by BFS, remembering the tree path to each vertex as a signed edge vector
    let mut path: Vec<Option<Vec<i64>>> = vec![None; nv];
    let mut tree = vec![false; b];
    for root in 0..nv {
        if path[root].is_some() {
            continue;
        }
        path[root] = Some(vec![0; b]);
        let mut queue = vec![root];
        while let Some(v) = queue.pop() {
            for (e, &(from, to, _)) in bounded.iter().enumerate() {
                let (w, sign) = if from == v {
                    (to, 1)
                } else if to == v {
                    (from, -1)
                } else {
                    continue;
                };
                if path[w].is_none() {
                    let mut p = path[v].clone().expect("visited");
                    p[e] += sign;
                    path[w] = Some(p);
                    tree[e] = true;
                    queue.push(w);
                }
            }
        }
    }
    let mut rows = Vec::new();
    for (e, &(from, to, _)) in bounded.iter().enumerate() {
        if tree[e] {
            continue;
        }
        // path(from) + e - path(to) is a cycle
        let pf = path[from].as_ref().expect("visited");
        let pt = path[to].as_ref().expect("visited");
        let mut cyc: Vec<i64> = pf.iter().zip(pt).map(|(a, b)| a - b).collect();
        cyc[e] += 1;
        for coord in 0..2 {
            rows.push(
                cyc.iter()
                    .zip(bounded)
                    .map(|(&s, &(_, _, d))| int(s * if coord == 0 { d.0 } else { d.1 }))
                    .collect(),
            );
        }
    }
    rows
}
