//! Classification of tropical curves singular at a fixed point.
//!
//! The point is the origin, which is the tropicalization of `(1, 1)`; a
//! singular point elsewhere in the torus is handled by translating the
//! heights with the lineality space. The non-torus point `(1, 0)` has its own
//! coefficient matrix and classification.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curve::{dual_curve, vertex_multiplicity, Location, TropicalCurve};
use crate::lattice::{
    lattice_length, Circuit, CircuitKind, LatticeLine, LatticePoint, PointConfiguration,
};
use crate::linalg::Matrix;
use crate::matroid::{coefficient_matrix, CircuitOracle, CoefficientMatrix};
use crate::rational::{int, one, serde_rational_opt, Point2, Rational};
use crate::subdivision::{cone_info, HeightVector, SubdivisionError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SingularityError {
    #[error(transparent)]
    Subdivision(#[from] SubdivisionError),
    #[error("need at least three points on y = 0 and two on y = 1, found {bottom} and {next}")]
    InsufficientBoundaryPoints { bottom: usize, next: usize },
    #[error("point {0} has a negative y-coordinate")]
    NegativeExponent(LatticePoint),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SingularityKind {
    TypeA3,
    TypeA4,
    TypeB1,
    TypeB2Interior,
    TypeB2Boundary,
    FatEnd,
    NonMaximal,
    NotSingularAtOrigin,
    NonGeneric,
}

/// Outcome of a classification with the locally verified witness data.
///
/// Heights are normalized as in the metric formulas: for `TypeB1` the gray
/// height is `λ = 0`; for `TypeB2Interior` the triangle apex has `ν = 0`; for
/// `TypeB2Boundary` the gray height is `λ = 0`. Distances `l1`, `l2` are
/// lattice lengths along the edge through the singular point; for
/// `TypeB2Interior` `l1` belongs to the 4-valent and `l2` to the 3-valent vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularityReport {
    pub kind: SingularityKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub codimension: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex: Option<Point2>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multiplicity: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub valence: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dual_cell: Option<Vec<LatticePoint>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edge: Option<[Point2; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ray_direction: Option<(i64, i64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub circuit: Option<Vec<LatticePoint>>,
    #[serde(
        default,
        skip_serializing_if = "Option::is_none",
        with = "serde_rational_opt"
    )]
    pub l1: Option<Rational>,
    #[serde(
        default,
        skip_serializing_if = "Option::is_none",
        with = "serde_rational_opt"
    )]
    pub l2: Option<Rational>,
    #[serde(
        default,
        skip_serializing_if = "Option::is_none",
        with = "serde_rational_opt"
    )]
    pub lambda: Option<Rational>,
    #[serde(
        default,
        skip_serializing_if = "Option::is_none",
        with = "serde_rational_opt"
    )]
    pub mu: Option<Rational>,
    #[serde(
        default,
        skip_serializing_if = "Option::is_none",
        with = "serde_rational_opt"
    )]
    pub nu: Option<Rational>,
    /// For fat ends: whether the adjacent vertex is at least 4-valent, which
    /// is the maximal dimensional situation.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub four_valent: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl SingularityReport {
    pub fn bare(kind: SingularityKind) -> Self {
        SingularityReport {
            kind,
            codimension: None,
            vertex: None,
            multiplicity: None,
            valence: None,
            dual_cell: None,
            edge: None,
            ray_direction: None,
            weight: None,
            circuit: None,
            l1: None,
            l2: None,
            lambda: None,
            mu: None,
            nu: None,
            four_valent: None,
            detail: None,
        }
    }

    fn with_detail(kind: SingularityKind, detail: impl Into<String>) -> Self {
        SingularityReport {
            detail: Some(detail.into()),
            ..Self::bare(kind)
        }
    }

    /// Moves every point of the witness by `(dx, dy)`.
    pub fn translated(mut self, dx: &Rational, dy: &Rational) -> Self {
        if let Some(v) = &mut self.vertex {
            *v = v.translate(dx, dy);
        }
        if let Some(e) = &mut self.edge {
            e[0] = e[0].translate(dx, dy);
            e[1] = e[1].translate(dx, dy);
        }
        self
    }
}

/// Classifies the curve of `u` at the origin.
pub fn classify_singularity(
    config: &PointConfiguration,
    u: &HeightVector,
) -> Result<SingularityReport, SingularityError> {
    let curve = dual_curve(config, u)?;
    let a = coefficient_matrix(config, &one(), &one()).expect("(1, 1) lies in the torus");
    Ok(classify_curve(config, u, &curve, &CircuitOracle::new(&a)))
}

/// Classifies the curve of `u` at an arbitrary point of the plane.
pub fn classify_singularity_at(
    config: &PointConfiguration,
    u: &HeightVector,
    point: &Point2,
) -> Result<SingularityReport, SingularityError> {
    let shifted = u.shifted(config, &point.x, &point.y, &Rational::zero());
    Ok(classify_singularity(config, &shifted)?.translated(&point.x, &point.y))
}

/// Classification against a precomputed circuit oracle of `A(1, 1)`.
pub fn classify_curve(
    config: &PointConfiguration,
    u: &HeightVector,
    curve: &TropicalCurve,
    oracle: &CircuitOracle,
) -> SingularityReport {
    use SingularityKind::*;
    let origin = Point2::origin();
    let location = curve.locate(&origin);
    if location == Location::Off {
        return SingularityReport::with_detail(
            NotSingularAtOrigin,
            "the origin is not on the curve",
        );
    }
    if !oracle.contains(u) {
        return SingularityReport::with_detail(
            NotSingularAtOrigin,
            "the heights are not in the tropicalization of ker A",
        );
    }
    let ms = &curve.subdivision;
    let info = cone_info(config, ms);
    let codim = info.codimension;
    if !info.white_points.is_empty() {
        return SingularityReport {
            codimension: Some(codim),
            ..SingularityReport::with_detail(NonMaximal, "the subdivision has white points")
        };
    }
    let fallback = |why: &str| SingularityReport {
        codimension: Some(codim),
        ..SingularityReport::with_detail(if codim <= 2 { NonGeneric } else { NonMaximal }, why)
    };
    let too_big = |allowed: usize| SingularityReport {
        codimension: Some(codim),
        ..SingularityReport::with_detail(
            NonMaximal,
            format!("codimension {codim} exceeds {allowed} for this local structure"),
        )
    };
    match location {
        Location::Vertex(v) => {
            let cell = &ms.cells[curve.vertices[v].cell];
            let area = cell.twice_area(config);
            let kind = match (cell.vertices.len(), cell.marked.len(), area) {
                (3, 4, 3) => TypeA3,
                (4, 4, 2) => TypeA4,
                _ => {
                    return fallback("the vertex at the origin is not dual to a four-point circuit")
                }
            };
            if codim > 1 {
                return too_big(1);
            }
            SingularityReport {
                codimension: Some(codim),
                vertex: Some(curve.vertices[v].point.clone()),
                multiplicity: Some(vertex_multiplicity(curve, v)),
                valence: Some(curve.valence(v)),
                dual_cell: Some(curve.vertices[v].dual.clone()),
                circuit: Some(cell.marked.iter().map(|&k| config.point(k)).collect()),
                ..SingularityReport::bare(kind)
            }
        }
        Location::Edge { edge, from_start } => {
            let e = &curve.edges[edge];
            if e.weight != 2 {
                return fallback("the origin lies on an edge of weight other than two");
            }
            let total = curve.edge_length(edge);
            let (from, to) = (e.from, e.to);
            let line = LatticeLine::through(e.dual.0, e.dual.1);
            let circuit_idx = circuit_on(config, e.dual);
            let mu = u[circuit_idx[0]].clone();
            let shape_from = side_shape(config, u, curve, from, &line);
            let shape_to = side_shape(config, u, curve, to, &line);
            let points: Vec<LatticePoint> = circuit_idx.iter().map(|&k| config.point(k)).collect();
            let edge_pts = [
                curve.vertices[from].point.clone(),
                curve.vertices[to].point.clone(),
            ];
            let gray_first = matches!(shape_from, Some(Side::Gray(_)));
            match (shape_from, shape_to) {
                (Some(Side::Apex(h1)), Some(Side::Apex(h2))) => {
                    if codim > 1 {
                        return too_big(1);
                    }
                    let l1 = from_start.clone();
                    let l2 = &total - &from_start;
                    debug_assert_eq!(l1, &mu - &h1);
                    debug_assert_eq!(l2, &mu - &h2);
                    if l1 != l2 {
                        return SingularityReport::with_detail(
                            NotSingularAtOrigin,
                            "the origin is not the midpoint of the weight two edge",
                        );
                    }
                    SingularityReport {
                        codimension: Some(codim),
                        edge: Some(edge_pts),
                        weight: Some(2),
                        circuit: Some(points.clone()),
                        l1: Some(l1),
                        l2: Some(l2),
                        lambda: Some(Rational::zero()),
                        mu: Some(&mu - &h1),
                        ..SingularityReport::bare(TypeB1)
                    }
                }
                (Some(Side::Apex(nu)), Some(Side::Gray(lambda)))
                | (Some(Side::Gray(lambda)), Some(Side::Apex(nu))) => {
                    if codim > 2 {
                        return too_big(2);
                    }

                    let (d4, d3) = if gray_first {
                        (from_start.clone(), &total - &from_start)
                    } else {
                        (&total - &from_start, from_start.clone())
                    };
                    let lam = &lambda - &nu;
                    let m = &mu - &nu;
                    debug_assert_eq!(d3, m);
                    debug_assert_eq!(d4, &m - &lam);
                    if !lam.is_positive() {
                        return SingularityReport {
                            codimension: Some(codim),
                            lambda: Some(lam),
                            mu: Some(m),
                            nu: Some(Rational::zero()),
                            ..SingularityReport::with_detail(
                                NonGeneric,
                                "gray height does not exceed the apex height",
                            )
                        };
                    }
                    let (v4, v3) = if gray_first { (from, to) } else { (to, from) };
                    SingularityReport {
                        codimension: Some(codim),
                        edge: Some([
                            curve.vertices[v4].point.clone(),
                            curve.vertices[v3].point.clone(),
                        ]),
                        weight: Some(2),
                        circuit: Some(points.clone()),
                        l1: Some(d4),
                        l2: Some(d3),
                        lambda: Some(lam),
                        mu: Some(m),
                        nu: Some(Rational::zero()),
                        valence: Some(curve.valence(v4)),
                        ..SingularityReport::bare(TypeB2Interior)
                    }
                }
                _ => fallback("the cells along the weight two edge are not of the expected shape"),
            }
        }
        Location::Ray { ray, from_start } => {
            let r = &curve.rays[ray];
            if r.weight != 2 {
                return fallback("the origin lies on a ray of weight other than two");
            }
            let line = LatticeLine::through(r.dual.0, r.dual.1);
            let circuit_idx = circuit_on(config, r.dual);
            let mu = u[circuit_idx[0]].clone();
            match side_shape(config, u, curve, r.vertex, &line) {
                Some(Side::Gray(lambda)) => {
                    if codim > 2 {
                        return too_big(2);
                    }
                    let m = &mu - &lambda;
                    debug_assert_eq!(from_start, m);
                    SingularityReport {
                        codimension: Some(codim),
                        vertex: Some(curve.vertices[r.vertex].point.clone()),
                        valence: Some(curve.valence(r.vertex)),
                        ray_direction: Some(r.direction),
                        weight: Some(2),
                        circuit: Some(circuit_idx.iter().map(|&k| config.point(k)).collect()),
                        l1: Some(from_start),
                        lambda: Some(Rational::zero()),
                        mu: Some(m),
                        ..SingularityReport::bare(TypeB2Boundary)
                    }
                }
                _ => fallback("the ray through the origin does not end at a trapezoid vertex"),
            }
        }
        Location::Off => unreachable!("handled above"),
    }
}

/// Configuration indices on the closed segment, which for a weight two edge is a collinear circuit.
fn circuit_on(config: &PointConfiguration, (a, b): (LatticePoint, LatticePoint)) -> Vec<usize> {
    (0..config.len())
        .filter(|&k| crate::lattice::on_segment(config.point(k), a, b))
        .collect()
}

/// Shape of a cell next to a weight two edge.
enum Side {
    /// A triangle whose apex is at lattice distance one, with the apex height.
    Apex(Rational),
    /// A trapezoid with two marked points at distance one on a parallel line,
    /// with their common height.
    Gray(Rational),
}

fn side_shape(
    config: &PointConfiguration,
    u: &HeightVector,
    curve: &TropicalCurve,
    v: usize,
    line: &LatticeLine,
) -> Option<Side> {
    let cell = &curve.subdivision.cells[curve.vertices[v].cell];
    let off: Vec<usize> = cell
        .marked
        .iter()
        .copied()
        .filter(|&k| line.level(config.point(k)) != 0)
        .collect();
    let on = cell.marked.len() - off.len();
    if on != 3 || off.iter().any(|&k| line.level(config.point(k)).abs() != 1) {
        return None;
    }
    match off.as_slice() {
        [p] if cell.vertices.len() == 3 => Some(Side::Apex(u[*p].clone())),
        [c, e]
            if cell.vertices.len() == 4
                && lattice_length(config.point(*c), config.point(*e)) == 1
                && u[*c] == u[*e] =>
        {
            Some(Side::Gray(u[*c].clone()))
        }
        _ => None,
    }
}

/// Blocks of the non-torus matrix: points on `y = 0`, on `y = 1`, and above.
pub fn non_torus_blocks(config: &PointConfiguration) -> Result<[Vec<usize>; 3], SingularityError> {
    if let Some(p) = config.points().iter().find(|p| p.j < 0) {
        return Err(SingularityError::NegativeExponent(*p));
    }
    let pick = |f: &dyn Fn(i64) -> bool| -> Vec<usize> {
        (0..config.len())
            .filter(|&k| f(config.point(k).j))
            .collect()
    };
    let mut bottom = pick(&|j| j == 0);
    let mut next = pick(&|j| j == 1);
    bottom.sort_by_key(|&k| config.point(k).i);
    next.sort_by_key(|&k| config.point(k).i);
    let rest = pick(&|j| j > 1);
    if bottom.len() < 3 || next.len() < 2 {
        return Err(SingularityError::InsufficientBoundaryPoints {
            bottom: bottom.len(),
            next: next.len(),
        });
    }
    Ok([bottom, next, rest])
}

/// The 3×s matrix of the conditions for a singular point at `(1, 0)`, columns in block order.
pub fn coefficient_matrix_non_torus(
    config: &PointConfiguration,
) -> Result<CoefficientMatrix, SingularityError> {
    let [bottom, next, rest] = non_torus_blocks(config)?;
    let columns: Vec<usize> = bottom.iter().chain(&next).chain(&rest).copied().collect();
    let n = columns.len();
    let mut m = Matrix::zeros(3, n);
    for (pos, &k) in columns.iter().enumerate() {
        if pos < bottom.len() {
            m.set(0, pos, one());
            m.set(1, pos, int(config.point(k).i));
        } else if pos < bottom.len() + next.len() {
            m.set(2, pos, one());
        }
    }
    Ok(CoefficientMatrix { matrix: m, columns })
}

/// Classification for the singular point `(1, 0)`, whose tropicalization
/// `(0, -∞)` shows up as a fat end on the line `x = 0`.
pub fn classify_non_torus(
    config: &PointConfiguration,
    u: &HeightVector,
) -> Result<SingularityReport, SingularityError> {
    use SingularityKind::*;
    let [bottom, next, _] = non_torus_blocks(config)?;
    let curve = dual_curve(config, u)?;
    let attained = |block: &[usize]| {
        let top = block.iter().map(|&k| &u[k]).max().expect("nonempty block");
        block.iter().filter(|&&k| &u[k] == top).count()
    };
    let (on_bottom, on_next) = (attained(&bottom), attained(&next));
    if on_bottom < 3 || on_next < 2 {
        return Ok(SingularityReport::with_detail(
            NotSingularAtOrigin,
            format!("maxima attained {on_bottom} times on y = 0 and {on_next} times on y = 1"),
        ));
    }
    let a = coefficient_matrix_non_torus(config)?;
    debug_assert!(CircuitOracle::new(&a).contains(u));
    let codim = cone_info(config, &curve.subdivision).codimension;
    let fat = curve.rays.iter().find(|r| {
        r.direction == (0, -1) && r.weight >= 2 && curve.vertices[r.vertex].point.x.is_zero()
    });
    let Some(r) = fat else {
        return Ok(SingularityReport {
            codimension: Some(codim),
            ..SingularityReport::with_detail(NonGeneric, "no fat end on x = 0")
        });
    };
    let valence = curve.valence(r.vertex);
    let multiplicity = vertex_multiplicity(&curve, r.vertex);
    let four_valent = valence >= 4;
    if !four_valent && multiplicity < 4 {
        return Ok(SingularityReport {
            codimension: Some(codim),
            ..SingularityReport::with_detail(
                NonGeneric,
                "the fat end meets a vertex of small multiplicity",
            )
        });
    }
    let top = bottom.iter().map(|&k| &u[k]).max().expect("nonempty block");
    let maximal: Vec<usize> = bottom.iter().copied().filter(|&k| &u[k] == top).collect();
    let circuit = Circuit::recognize(config, &maximal[..3]);
    debug_assert!(circuit
        .as_ref()
        .is_some_and(|z| z.kind == CircuitKind::Collinear));
    Ok(SingularityReport {
        codimension: Some(codim),
        vertex: Some(curve.vertices[r.vertex].point.clone()),
        valence: Some(valence),
        multiplicity: Some(multiplicity),
        dual_cell: Some(curve.vertices[r.vertex].dual.clone()),
        ray_direction: Some(r.direction),
        weight: Some(r.weight),
        circuit: circuit.map(|z| z.points(config)),
        four_valent: Some(four_valent),
        ..SingularityReport::bare(FatEnd)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subdivision::HeightVector;

    #[test]
    fn unit_square_is_a4() {
        let cfg = PointConfiguration::from_pairs(&[(0, 0), (1, 0), (0, 1), (1, 1)]).unwrap();
        let r = classify_singularity(&cfg, &HeightVector::from_i64(&[0, 0, 0, 0])).unwrap();
        assert_eq!(r.kind, SingularityKind::TypeA4);
        assert_eq!(r.valence, Some(4));
    }

    #[test]
    fn triangle_with_interior_point_is_a3() {
        let cfg = PointConfiguration::from_pairs(&[(0, 0), (2, 1), (1, 2), (1, 1)]).unwrap();
        let r = classify_singularity(&cfg, &HeightVector::from_i64(&[0, 0, 0, 0])).unwrap();
        assert_eq!(r.kind, SingularityKind::TypeA3);
        assert_eq!(r.multiplicity, Some(3));
    }

    #[test]
    fn off_the_curve() {
        let cfg = PointConfiguration::from_pairs(&[(0, 0), (1, 0), (0, 1)]).unwrap();
        let r = classify_singularity(&cfg, &HeightVector::from_i64(&[5, 0, 0])).unwrap();
        assert_eq!(r.kind, SingularityKind::NotSingularAtOrigin);
    }

    #[test]
    fn non_torus_needs_enough_bottom_points() {
        let cfg = PointConfiguration::from_pairs(&[(0, 0), (1, 0), (0, 1), (1, 1)]).unwrap();
        assert_eq!(
            coefficient_matrix_non_torus(&cfg),
            Err(SingularityError::InsufficientBoundaryPoints { bottom: 2, next: 2 })
        );
    }
}
