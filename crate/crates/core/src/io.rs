//! JSON jobs and results for the command line driver.
//!
//! Every document carries `"schema": "tropsing/1"` and every rational is an
//! exact string such as `"-3/2"`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curve::{dual_curve, type_dimension, CurveError, TropicalCurve};
use crate::lattice::{Circuit, ConfigError, LatticePoint, PointConfiguration, RationalVector};
use crate::linalg::Matrix;
use crate::matroid::{
    classify_flag, coefficient_matrix, flag_from_weight, gale_dual, FlagClass, FlagOfFlats,
    Matroid, MatroidError, DEFAULT_FLAG_LIMIT,
};
use crate::puiseux::{
    neg_val_vector, refine_substitution, sample_singular_lift, verify_singular_at_one_one,
    LiftError, LiftSample, PuiseuxPolynomial,
};
use crate::rational::{one, Point2};
use crate::singularity::{
    classify_non_torus, classify_singularity, classify_singularity_at, SingularityError,
    SingularityReport,
};
use crate::subdivision::{
    cone_info, decompose_weightclass_lineality, is_discriminant_cone,
    regular_subdivision_with_planes, unique_circuit, AffineFunction, Cell, ConeInfo, Decomposition,
    HeightVector, SubdivisionError,
};
use crate::subset::IndexSet;
use crate::svg::{render_pair, SvgOptions};

pub const SCHEMA: &str = "tropsing/1";

fn schema() -> String {
    SCHEMA.to_string()
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobOptions {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Largest configuration whose flags may be enumerated.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub limit: Option<usize>,
    /// Pivot columns of the Gale dual.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pivots: Option<[usize; 3]>,
}

/// Input of every command. Fields a command does not use are ignored.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    #[serde(default = "schema")]
    pub schema: String,
    /// Lattice points `[i, j]`; defaults to the support of `polynomial`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<LatticePoint>>,
    /// One height per point; defaults to `-val` of the coefficients of `polynomial`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub heights: Option<HeightVector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polynomial: Option<PuiseuxPolynomial>,
    /// Flats of a flag, as lists of point indices.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flag: Option<Vec<IndexSet>>,
    /// Circuit selector for `discriminant`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub circuit: Option<Vec<usize>>,
    /// Positive gaps between consecutive block heights for `lift`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gaps: Option<RationalVector>,
    /// Point of the tropical plane at which `classify` looks for a singularity.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub at: Option<Point2>,
    /// Classify at the non-torus point `(1, 0)` instead.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub non_torus: bool,
    /// Torus point `(p, q)` of the coefficient matrix for `flags`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub torus_point: Option<Point2>,
    /// Accept configurations missing some lattice points of their hull.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub relaxed: bool,
    #[serde(default)]
    pub options: JobOptions,
}

impl JobSpec {
    pub fn new(points: Vec<LatticePoint>) -> Self {
        JobSpec {
            schema: schema(),
            points: Some(points),
            heights: None,
            polynomial: None,
            flag: None,
            circuit: None,
            gaps: None,
            at: None,
            non_torus: false,
            torus_point: None,
            relaxed: false,
            options: JobOptions::default(),
        }
    }

    pub fn with_heights(mut self, heights: HeightVector) -> Self {
        self.heights = Some(heights);
        self
    }

    pub fn from_json(text: &str) -> Result<Self, ParseError> {
        let job: JobSpec = serde_json::from_str(text)?;
        if job.schema != SCHEMA {
            return Err(ParseError::Schema(job.schema));
        }
        Ok(job)
    }

    pub fn config(&self) -> Result<PointConfiguration, JobError> {
        let points = match (&self.points, &self.polynomial) {
            (Some(p), _) => p.clone(),
            (None, Some(f)) => f.support(),
            (None, None) => return Err(JobError::Missing("points")),
        };
        Ok(if self.relaxed {
            PointConfiguration::relaxed(points)?
        } else {
            PointConfiguration::new(points)?
        })
    }

    pub fn heights(&self, config: &PointConfiguration) -> Result<HeightVector, JobError> {
        match (&self.heights, &self.polynomial) {
            (Some(h), _) => Ok(HeightVector::new(config, h.0 .0.clone())?),
            (None, Some(f)) => Ok(neg_val_vector(config, f)?),
            (None, None) => Err(JobError::Missing("heights")),
        }
    }
}

#[derive(Debug, Error)]
pub enum ParseError {
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("unsupported schema {0:?}, expected {SCHEMA:?}")]
    Schema(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JobError {
    #[error("job is missing {0:?}")]
    Missing(&'static str),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Subdivision(#[from] SubdivisionError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error(transparent)]
    Singularity(#[from] SingularityError),
    #[error(transparent)]
    Lift(#[from] LiftError),
}

impl JobError {
    pub fn kind(&self) -> &'static str {
        match self {
            JobError::Missing(_) => "missing",
            JobError::Config(_) => "config",
            JobError::Subdivision(_) => "subdivision",
            JobError::Curve(_) => "curve",
            JobError::Matroid(_) => "matroid",
            JobError::Singularity(_) => "singularity",
            JobError::Lift(_) => "lift",
        }
    }
}

/// A result document: the schema tag followed by the payload's fields.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Envelope<T> {
    pub schema: String,
    #[serde(flatten)]
    pub body: T,
}

impl<T> Envelope<T> {
    pub fn new(body: T) -> Self {
        Envelope {
            schema: schema(),
            body,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorBody {
    pub kind: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorOutput {
    pub error: ErrorBody,
}

impl ErrorOutput {
    pub fn new(kind: impl Into<String>, message: impl Into<String>) -> Envelope<ErrorOutput> {
        Envelope::new(ErrorOutput {
            error: ErrorBody {
                kind: kind.into(),
                message: message.into(),
            },
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubdivideOutput {
    pub cells: Vec<Cell>,
    /// The upper support plane of each cell.
    pub planes: Vec<AffineFunction>,
    pub cone: ConeInfo,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveOutput {
    pub curve: TropicalCurve,
    pub balanced: bool,
    pub genus: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub type_dimension: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    /// Configuration index of each column.
    pub columns: Vec<usize>,
    pub rows: Vec<RationalVector>,
}

impl MatrixJson {
    pub fn new(m: &Matrix, columns: &[usize]) -> Self {
        MatrixJson {
            columns: columns.to_vec(),
            rows: m.to_rows().into_iter().map(RationalVector).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagEntry {
    pub flats: Vec<IndexSet>,
    pub blocks: Vec<IndexSet>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class: Option<FlagClass>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagsOutput {
    pub coefficient_matrix: MatrixJson,
    pub gale_dual: MatrixJson,
    /// Pivot column positions of the Gale dual.
    pub pivots: [usize; 3],
    pub loops: IndexSet,
    pub flags: Vec<FlagEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscriminantOutput {
    pub codimension: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub circuit: Option<Circuit>,
    /// Whether the secondary cone lies in the tropical discriminant; decided
    /// for cones of codimension at most one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub in_discriminant: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<Decomposition>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftOutput {
    #[serde(flatten)]
    pub sample: LiftSample,
    pub singular_at_one_one: bool,
    /// `f(x, y + 1)`, which moves the singular point to `(1, 0)`.
    pub refined: PuiseuxPolynomial,
}

pub fn subdivide(job: &JobSpec) -> Result<SubdivideOutput, JobError> {
    let config = job.config()?;
    let u = job.heights(&config)?;
    let (ms, planes) = regular_subdivision_with_planes(&config, &u)?;
    let cone = cone_info(&config, &ms);
    Ok(SubdivideOutput {
        cells: ms.cells,
        planes,
        cone,
    })
}

pub fn curve(job: &JobSpec) -> Result<CurveOutput, JobError> {
    let config = job.config()?;
    let u = job.heights(&config)?;
    let curve = dual_curve(&config, &u)?;
    let type_dimension = type_dimension(&config, &curve.curve_type()).ok();
    Ok(CurveOutput {
        balanced: curve.is_balanced(),
        genus: curve.genus(),
        type_dimension,
        curve,
    })
}

pub fn flags(job: &JobSpec) -> Result<FlagsOutput, JobError> {
    let config = job.config()?;
    let (p, q) = match &job.torus_point {
        Some(pt) => (pt.x.clone(), pt.y.clone()),
        None => (one(), one()),
    };
    let a = coefficient_matrix(&config, &p, &q)?;
    let b = gale_dual(&a, job.options.pivots)?;
    let m = Matroid::of_gale_dual(&b);
    let limit = job.options.limit.unwrap_or(DEFAULT_FLAG_LIMIT);
    let flags = m
        .enumerate_flags(limit)?
        .into_iter()
        .map(|f| {
            let (class, error) = match classify_flag(&f, &config) {
                Ok(c) => (Some(c), None),
                Err(e) => (None, Some(e.to_string())),
            };
            FlagEntry {
                blocks: f.blocks(),
                flats: f.flats,
                class,
                error,
            }
        })
        .collect();
    Ok(FlagsOutput {
        coefficient_matrix: MatrixJson::new(&a.matrix, &a.columns),
        gale_dual: MatrixJson::new(&b.matrix, &b.columns),
        pivots: b.pivots,
        loops: m.loops(),
        flags,
    })
}

pub fn classify(job: &JobSpec) -> Result<SingularityReport, JobError> {
    let config = job.config()?;
    let u = job.heights(&config)?;
    let report = if job.non_torus {
        classify_non_torus(&config, &u)?
    } else {
        match &job.at {
            Some(p) => classify_singularity_at(&config, &u, p)?,
            None => classify_singularity(&config, &u)?,
        }
    };
    Ok(report)
}

pub fn discriminant(job: &JobSpec) -> Result<DiscriminantOutput, JobError> {
    let config = job.config()?;
    let u = job.heights(&config)?;
    let (ms, _) = regular_subdivision_with_planes(&config, &u)?;
    let codimension = cone_info(&config, &ms).codimension;
    let mut out = DiscriminantOutput {
        codimension,
        circuit: None,
        in_discriminant: None,
        decomposition: None,
        detail: None,
    };
    match codimension {
        0 => out.in_discriminant = Some(false),
        1 => {
            let z = match &job.circuit {
                Some(ix) => Circuit::recognize(&config, ix)
                    .ok_or_else(|| SubdivisionError::Invalid(format!("{ix:?} is not a circuit")))?,
                None => unique_circuit(&config, &ms)?,
            };
            let inside = is_discriminant_cone(&config, &ms)?;
            out.in_discriminant = Some(inside);
            if inside {
                match decompose_weightclass_lineality(&config, &u, &z) {
                    Ok(d) => out.decomposition = Some(d),
                    Err(e) => out.detail = Some(e.to_string()),
                }
            }
            out.circuit = Some(z);
        }
        _ => {
            out.detail =
                Some("membership is only decided for cones of codimension at most one".into())
        }
    }
    Ok(out)
}

pub fn lift(job: &JobSpec) -> Result<LiftOutput, JobError> {
    let config = job.config()?;
    let a = coefficient_matrix(&config, &one(), &one())?;
    let b = gale_dual(&a, job.options.pivots)?;
    let m = Matroid::of_gale_dual(&b);
    let flag = match (&job.flag, &job.heights) {
        (Some(flats), _) => FlagOfFlats {
            flats: flats.clone(),
        },
        (None, Some(u)) => {
            let wf = flag_from_weight(&m, u);
            if !wf.is_flag_of_flats {
                return Err(MatroidError::MalformedFlag(
                    "heights do not induce a flag of flats".into(),
                )
                .into());
            }
            FlagOfFlats { flats: wf.flag }
        }
        (None, None) => return Err(JobError::Missing("flag")),
    };
    if !flag.is_valid(&m) {
        return Err(MatroidError::MalformedFlag(format!(
            "{:?} is not a maximal chain of flats",
            flag.flats
        ))
        .into());
    }
    let gaps = job.gaps.as_ref().map(|g| g.0.as_slice());
    let sample = sample_singular_lift(&config, &flag, gaps, job.options.seed.unwrap_or(0))?;
    Ok(LiftOutput {
        singular_at_one_one: verify_singular_at_one_one(&sample.f),
        refined: refine_substitution(&sample.f)?,
        sample,
    })
}

/// The curve of the job with an SVG of it next to its subdivision. The
/// singular point drawn is `at`, or the origin when the curve passes through it.
pub fn plot(job: &JobSpec, opts: &SvgOptions) -> Result<(CurveOutput, String), JobError> {
    let out = curve(job)?;
    let config = job.config()?;
    let mut opts = opts.clone();
    if opts.singular_point.is_none() {
        let p = job.at.clone().unwrap_or_else(Point2::origin);
        if out.curve.locate(&p) != crate::curve::Location::Off {
            opts.singular_point = Some(p);
        }
    }
    let svg = render_pair(&config, &out.curve, &opts);
    Ok((out, svg))
}
