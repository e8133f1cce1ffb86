//! Exact tropical geometry of plane curves with a singular point.
//!
//! Heights on the lattice points of a polygon induce a regular marked
//! subdivision and a dual tropical curve. The crate computes both, the
//! secondary cone of the subdivision, the matroid whose Bergman fan describes
//! curves singular at a fixed point, the classification of such singular
//! points, and random polynomials over generalized power series realizing
//! them. All arithmetic is over the rationals.

pub mod curve;
pub mod io;
pub mod lattice;
pub mod linalg;
pub mod matroid;
pub mod puiseux;
pub mod rational;
pub mod singularity;
pub mod subdivision;
pub mod subset;
pub mod svg;

pub use curve::{
    dual_curve, type_dimension, vertex_multiplicity, CurveError, CurveType, TropicalCurve,
};
pub use lattice::{
    affine_relation_space, circuits, AffineRelationSpace, Circuit, CircuitKind, ConfigError,
    LatticePoint, PointConfiguration, RationalVector,
};
pub use linalg::Matrix;
pub use matroid::{
    bergman_member_circuit_oracle, bergman_member_loopfree, classify_flag, coefficient_matrix,
    flag_from_weight, gale_dual, in_weight_class_union, weight_class_sample, CircuitOracle,
    CoefficientMatrix, FlagClass, FlagOfFlats, GaleDual, Matroid, MatroidError, WeightClass,
};
pub use puiseux::{
    neg_val_vector, refine_substitution, sample_singular_lift, verify_singular_at_one_one,
    LiftError, LiftSample, PuiseuxPolynomial, PuiseuxScalar,
};
pub use rational::{Point2, Rational};
pub use singularity::{
    classify_non_torus, classify_singularity, classify_singularity_at,
    coefficient_matrix_non_torus, SingularityError, SingularityKind, SingularityReport,
};
pub use subdivision::{
    cone_info, decompose_weightclass_lineality, is_discriminant_cone, regular_subdivision, Cell,
    ConeInfo, Decomposition, HeightVector, MarkedSubdivision, SubdivisionError,
};
pub use subset::IndexSet;
pub use svg::{render_curve, render_pair, render_subdivision, SvgOptions};
