//! The singularity matrix, its Gale dual, the matroid of the Gale dual and
//! the Bergman fan of `ker A`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Mutex;

use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{Circuit, CircuitKind, LatticeLine, PointConfiguration, RationalVector};
use crate::linalg::Matrix;
use crate::rational::{int, one, pow, ratio, Rational};
use crate::subdivision::HeightVector;
use crate::subset::IndexSet;

/// Flag enumeration refuses configurations with more points than this by default.
pub const DEFAULT_FLAG_LIMIT: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatroidError {
    #[error("the singular point must lie in the torus")]
    ZeroTorusCoordinate,
    #[error("pivot columns {0:?} are dependent")]
    DependentPivots([usize; 3]),
    #[error("pivot column {0} is out of range")]
    PivotOutOfRange(usize),
    #[error("{s} points exceed the enumeration limit {limit}")]
    TooLarge { s: usize, limit: usize },
    #[error("flag is neither of the four-point nor of the collinear kind: {0}")]
    MalformedFlag(String),
    #[error("order must be a permutation of the configuration indices")]
    BadOrder,
}

/// The 3×s matrix whose kernel is the family of polynomials singular at a fixed point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientMatrix {
    pub matrix: Matrix,
    /// Configuration index of each column.
    pub columns: Vec<usize>,
}

impl CoefficientMatrix {
    /// The same matrix with columns rearranged into `order` (configuration indices).
    pub fn reordered(&self, order: &[usize]) -> Result<CoefficientMatrix, MatroidError> {
        let mut check = order.to_vec();
        check.sort_unstable();
        let mut expected = self.columns.clone();
        expected.sort_unstable();
        if check != expected {
            return Err(MatroidError::BadOrder);
        }
        let positions: Vec<usize> = order
            .iter()
            .map(|k| self.columns.iter().position(|c| c == k).expect("checked"))
            .collect();
        Ok(CoefficientMatrix {
            matrix: self.matrix.select_columns(&positions),
            columns: order.to_vec(),
        })
    }

    pub fn ncols(&self) -> usize {
        self.columns.len()
    }
}

/// `A(p, q)`: rows `(1,…,1)`, `(i)`, `(j)` with column `(i, j)` scaled by `p^i q^j`.
pub fn coefficient_matrix(
    config: &PointConfiguration,
    p: &Rational,
    q: &Rational,
) -> Result<CoefficientMatrix, MatroidError> {
    if p.is_zero() || q.is_zero() {
        return Err(MatroidError::ZeroTorusCoordinate);
    }
    let scale: Vec<Rational> = config
        .points()
        .iter()
        .map(|m| pow(p, m.i) * pow(q, m.j))
        .collect();
    let rows = vec![
        scale.clone(),
        config
            .points()
            .iter()
            .zip(&scale)
            .map(|(m, s)| int(m.i) * s)
            .collect(),
        config
            .points()
            .iter()
            .zip(&scale)
            .map(|(m, s)| int(m.j) * s)
            .collect(),
    ];
    Ok(CoefficientMatrix {
        matrix: Matrix::from_rows(rows),
        columns: (0..config.len()).collect(),
    })
}

/// A basis of `ker A` as the rows of an `(s-3)×s` matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaleDual {
    pub matrix: Matrix,
    /// Pivot column positions.
    pub pivots: [usize; 3],
    /// Configuration index of each column.
    pub columns: Vec<usize>,
    /// `A_1^{-1}·A` for the pivot block `A_1`.
    pub transformed: Matrix,
}

/// Gale dual from the pivot transformation: `Ã = A_1^{-1} A`, and one row per
/// non-pivot column `k` with `1` at `k` and `-Ã[r][k]` at pivot `r`.
pub fn gale_dual(
    a: &CoefficientMatrix,
    pivots: Option<[usize; 3]>,
) -> Result<GaleDual, MatroidError> {
    let n = a.ncols();
    let pivots = match pivots {
        Some(p) => {
            if let Some(&bad) = p.iter().find(|&&k| k >= n) {
                return Err(MatroidError::PivotOutOfRange(bad));
            }
            p
        }
        None => {
            first_independent_triple(&a.matrix).ok_or(MatroidError::DependentPivots([0, 1, 2]))?
        }
    };
    let a1 = a.matrix.select_columns(&pivots);
    if a1.det().is_zero() {
        return Err(MatroidError::DependentPivots(pivots));
    }
    let mut transformed = Matrix::zeros(3, n);
    for k in 0..n {
        let col = a1
            .solve(&a.matrix.column(k))
            .expect("pivot block is invertible");
        for (r, v) in col.into_iter().enumerate() {
            transformed.set(r, k, v);
        }
    }
    if a.matrix.row(0).iter().all(One::is_one) {
        for k in 0..n {
            let sum: Rational = (0..3).map(|r| transformed.get(r, k).clone()).sum();
            assert!(sum.is_one(), "transformed points lie on t + x + y = 1");
        }
    }
    let rest: Vec<usize> = (0..n).filter(|k| !pivots.contains(k)).collect();
    let mut b = Matrix::zeros(rest.len(), n);
    for (row, &k) in rest.iter().enumerate() {
        b.set(row, k, one());
        for (r, &p) in pivots.iter().enumerate() {
            b.set(row, p, -transformed.get(r, k).clone());
        }
    }
    Ok(GaleDual {
        matrix: b,
        pivots,
        columns: a.columns.clone(),
        transformed,
    })
}

fn first_independent_triple(m: &Matrix) -> Option<[usize; 3]> {
    let n = m.ncols();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if !m.select_columns(&[a, b, c]).det().is_zero() {
                    return Some([a, b, c]);
                }
            }
        }
    }
    None
}

/// The matroid of a vector configuration, given by an exact rank oracle.
/// Ground set elements are configuration indices.
pub struct Matroid {
    vectors: Vec<Vec<Rational>>,
    rank: usize,
    cache: Mutex<HashMap<u64, usize>>,
}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Matroid")
            .field("size", &self.vectors.len())
            .field("rank", &self.rank)
            .finish()
    }
}

impl Matroid {
    /// `vectors[k]` is the vector of ground set element `k`.
    pub fn from_vectors(vectors: Vec<Vec<Rational>>) -> Matroid {
        assert!(
            vectors.len() <= 64,
            "ground sets are limited to 64 elements"
        );
        let mut m = Matroid {
            vectors,
            rank: 0,
            cache: Mutex::new(HashMap::new()),
        };
        m.rank = m.rank_of(IndexSet::full(m.size()));
        m
    }

    /// The matroid of the columns of a Gale dual.
    pub fn of_gale_dual(b: &GaleDual) -> Matroid {
        Matroid::of_columns(&b.matrix, &b.columns)
    }

    /// The matroid of the columns of a coefficient matrix.
    pub fn of_coefficient_matrix(a: &CoefficientMatrix) -> Matroid {
        Matroid::of_columns(&a.matrix, &a.columns)
    }

    fn of_columns(m: &Matrix, columns: &[usize]) -> Matroid {
        let mut vectors = vec![Vec::new(); columns.len()];
        for (pos, &k) in columns.iter().enumerate() {
            vectors[k] = m.column(pos);
        }
        Matroid::from_vectors(vectors)
    }

    pub fn size(&self) -> usize {
        self.vectors.len()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ground_set(&self) -> IndexSet {
        IndexSet::full(self.size())
    }

    pub fn rank_of(&self, set: IndexSet) -> usize {
        if set.is_empty() {
            return 0;
        }
        if let Some(&r) = self.cache.lock().expect("rank cache").get(&set.bits()) {
            return r;
        }
        let rows: Vec<Vec<Rational>> = set.iter().map(|k| self.vectors[k].clone()).collect();
        let r = if rows[0].is_empty() {
            0
        } else {
            Matrix::from_rows(rows).rank()
        };
        self.cache.lock().expect("rank cache").insert(set.bits(), r);
        r
    }

    pub fn is_independent(&self, set: IndexSet) -> bool {
        self.rank_of(set) == set.len()
    }

    pub fn closure(&self, set: IndexSet) -> IndexSet {
        let r = self.rank_of(set);
        (0..self.size())
            .filter(|&k| set.contains(k) || self.rank_of(set.with(k)) == r)
            .collect::<IndexSet>()
            .union(set)
    }

    /// Whether the span of `set` contains no vector outside `set`.
    pub fn is_flat(&self, set: IndexSet) -> bool {
        self.closure(set) == set
    }

    pub fn loops(&self) -> IndexSet {
        self.closure(IndexSet::EMPTY)
    }

    /// Maximal chains of flats, canonically ordered by their blocks.
    pub fn enumerate_flags(&self, limit: usize) -> Result<Vec<FlagOfFlats>, MatroidError> {
        if self.size() > limit {
            return Err(MatroidError::TooLarge {
                s: self.size(),
                limit,
            });
        }
        let mut out = Vec::new();
        let mut chain = Vec::new();
        self.extend_flags(self.loops(), &mut chain, &mut out);
        out.sort_by_key(|f: &FlagOfFlats| f.blocks());
        Ok(out)
    }

    fn extend_flags(&self, flat: IndexSet, chain: &mut Vec<IndexSet>, out: &mut Vec<FlagOfFlats>) {
        if flat == self.ground_set() {
            out.push(FlagOfFlats {
                flats: chain.clone(),
            });
            return;
        }
        let mut covers = BTreeSet::new();
        for k in 0..self.size() {
            if !flat.contains(k) {
                covers.insert(self.closure(flat.with(k)).bits());
            }
        }
        for bits in covers {
            let next = IndexSet::from_bits(bits);
            chain.push(next);
            self.extend_flags(next, chain, out);
            chain.pop();
        }
    }

    /// Whether every ground set element lies in some `w`-minimal basis.
    ///
    /// An element misses every minimal basis exactly when it is the strict
    /// maximum of a circuit, so this is the test "the maximum of `w` on every
    /// circuit is attained twice" of the max convention.
    pub fn bergman_member(&self, w: &[Rational]) -> bool {
        assert_eq!(w.len(), self.size());
        let mut order: Vec<usize> = (0..self.size()).collect();
        order.sort_by(|&a, &b| w[a].cmp(&w[b]).then(a.cmp(&b)));
        let greedy = |start: Option<usize>| -> Option<Rational> {
            let mut basis = IndexSet::EMPTY;
            if let Some(e) = start {
                if !self.is_independent(IndexSet::singleton(e)) {
                    return None;
                }
                basis.insert(e);
            }
            for &k in &order {
                if !basis.contains(k) && self.is_independent(basis.with(k)) {
                    basis.insert(k);
                }
            }
            Some(basis.iter().map(|k| w[k].clone()).sum())
        };
        let best = greedy(None).expect("unconstrained greedy succeeds");
        (0..self.size()).all(|e| greedy(Some(e)).as_ref() == Some(&best))
    }
}

/// Maximal chain `F_1 ⊊ … ⊊ F_r` of flats, `F_r` the ground set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FlagOfFlats {
    pub flats: Vec<IndexSet>,
}

impl FlagOfFlats {
    /// `F_i ∖ F_{i-1}`, with `F_0 = ∅`.
    pub fn blocks(&self) -> Vec<IndexSet> {
        let mut prev = IndexSet::EMPTY;
        self.flats
            .iter()
            .map(|&f| {
                let b = f.difference(prev);
                prev = f;
                b
            })
            .collect()
    }

    pub fn weight_class(&self) -> WeightClass {
        WeightClass {
            blocks: self.blocks(),
        }
    }

    /// Whether each `F_i` is a flat of rank `i`.
    pub fn is_valid(&self, m: &Matroid) -> bool {
        self.flats.len() == m.rank()
            && self.flats.last() == Some(&m.ground_set())
            && self
                .flats
                .iter()
                .enumerate()
                .all(|(i, &f)| m.is_flat(f) && m.rank_of(f) == i + 1)
    }

    /// Whether `w` lies in the closure of the weight class: constant on
    /// blocks and weakly increasing from block to block.
    pub fn closure_contains(&self, w: &[Rational]) -> bool {
        let mut prev: Option<&Rational> = None;
        for b in self.blocks() {
            let mut it = b.iter();
            let Some(first) = it.next() else { continue };
            let h = &w[first];
            if it.any(|k| &w[k] != h) {
                return false;
            }
            if prev.is_some_and(|p| p > h) {
                return false;
            }
            prev = Some(h);
        }
        true
    }
}

/// Ordered partition of the ground set, blocks in increasing height.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightClass {
    pub blocks: Vec<IndexSet>,
}

impl WeightClass {
    /// Cumulative unions of the blocks.
    pub fn flag(&self) -> Vec<IndexSet> {
        let mut acc = IndexSet::EMPTY;
        self.blocks
            .iter()
            .map(|&b| {
                acc = acc.union(b);
                acc
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "case")]
pub enum FlagClass {
    CaseA {
        circuit: Circuit,
    },
    CaseB {
        circuit: Circuit,
        pair: [usize; 2],
        tail_on_line: bool,
    },
}

impl FlagClass {
    pub fn circuit(&self) -> &Circuit {
        match self {
            FlagClass::CaseA { circuit } | FlagClass::CaseB { circuit, .. } => circuit,
        }
    }
}

/// Sorts a flag into the four-point case or the collinear case.
pub fn classify_flag(
    flag: &FlagOfFlats,
    config: &PointConfiguration,
) -> Result<FlagClass, MatroidError> {
    let blocks = flag.blocks();
    let malformed = |why: &str| {
        Err(MatroidError::MalformedFlag(format!(
            "{why}; blocks {blocks:?}"
        )))
    };
    let Some(last) = blocks.last() else {
        return malformed("empty flag");
    };
    let head = &blocks[..blocks.len() - 1];
    match last.len() {
        4 => {
            if head.iter().any(|b| b.len() != 1) {
                return malformed("four-point last block with a non-singleton earlier block");
            }
            match Circuit::recognize(config, &last.to_vec()) {
                Some(z) if z.kind != CircuitKind::Collinear => Ok(FlagClass::CaseA { circuit: z }),
                _ => malformed("last block is not a four-point circuit"),
            }
        }
        3 => {
            let z = match Circuit::recognize(config, &last.to_vec()) {
                Some(z) if z.kind == CircuitKind::Collinear => z,
                _ => return malformed("last block is not collinear"),
            };
            let line: LatticeLine = z.line(config).expect("collinear");
            let pairs: Vec<usize> = (0..head.len()).filter(|&j| head[j].len() == 2).collect();
            if pairs.len() != 1 || head.iter().any(|b| b.len() > 2) {
                return malformed("expected exactly one block of size two");
            }
            let j = pairs[0];
            let pair = head[j].to_vec();
            let on_line = |k: usize| line.level(config.point(k)) == 0;
            let tail_on_line = head[j + 1..].iter().all(|b| b.iter().all(on_line));
            Ok(FlagClass::CaseB {
                circuit: z,
                pair: [pair[0], pair[1]],
                tail_on_line,
            })
        }
        _ => malformed("last block has neither three nor four elements"),
    }
}

/// The level sets of a weight vector and the chain of their cumulative unions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightFlag {
    pub class: WeightClass,
    pub flag: Vec<IndexSet>,
    pub is_flag_of_flats: bool,
}

/// Groups equal heights into blocks sorted increasingly and checks that the
/// resulting chain consists of flats.
pub fn flag_from_weight(m: &Matroid, u: &[Rational]) -> WeightFlag {
    let mut levels: Vec<&Rational> = u.iter().collect();
    levels.sort();
    levels.dedup();
    let blocks: Vec<IndexSet> = levels
        .iter()
        .map(|h| (0..u.len()).filter(|&k| &u[k] == *h).collect())
        .collect();
    let class = WeightClass { blocks };
    let flag = class.flag();
    let is_flag_of_flats = flag.iter().all(|&f| m.is_flat(f));
    WeightFlag {
        class,
        flag,
        is_flag_of_flats,
    }
}

/// A point of the weight class: block `k` sits at height `gap_1 + … + gap_k`.
/// Without gaps every gap is one.
pub fn weight_class_sample(flag: &FlagOfFlats, gaps: Option<&[Rational]>) -> HeightVector {
    let blocks = flag.blocks();
    let n = blocks.iter().map(|b| b.len()).sum();
    let mut u = vec![Rational::zero(); n];
    let mut h = Rational::zero();
    for (k, b) in blocks.iter().enumerate() {
        h += gaps.map_or_else(one, |g| g[k].clone());
        for i in b.iter() {
            u[i] = h.clone();
        }
    }
    HeightVector(RationalVector(u))
}

/// Random positive gaps `p/q` with `1 ≤ p ≤ 20`, `1 ≤ q ≤ 6`.
pub fn random_gaps<R: Rng>(rng: &mut R, n: usize) -> Vec<Rational> {
    (0..n)
        .map(|_| ratio(rng.random_range(1..=20), rng.random_range(1..=6)))
        .collect()
}

/// Membership in the tropicalization of `ker B^⊥`, via minimal bases.
pub fn bergman_member_loopfree(b: &GaleDual, w: &[Rational]) -> bool {
    Matroid::of_gale_dual(b).bergman_member(w)
}

/// The circuits of the matroid of the Gale dual, read off the row space of `A`:
/// complements of hyperplanes of the column matroid of `A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircuitOracle {
    pub supports: Vec<IndexSet>,
}

impl CircuitOracle {
    /// `A` must have rank three, which holds for every non-degenerate configuration.
    pub fn new(a: &CoefficientMatrix) -> CircuitOracle {
        let n = a.ncols();
        assert_eq!(a.matrix.nrows(), 3);
        let cols: Vec<Vec<Rational>> = (0..n).map(|k| a.matrix.column(k)).collect();
        let mut supports = BTreeSet::new();
        // every hyperplane of the column matroid of A is spanned by two columns;
        // their cross product y gives the row space vector y·A vanishing on it
        for i in 0..n {
            for j in i + 1..n {
                let y = cross3(&cols[i], &cols[j]);
                if y.iter().all(Zero::is_zero) {
                    continue;
                }
                let support: IndexSet = (0..n)
                    .filter(|&k| !dot(&y, &cols[k]).is_zero())
                    .map(|pos| a.columns[pos])
                    .collect();
                supports.insert(support.bits());
            }
        }
        let supports = supports.into_iter().map(IndexSet::from_bits).collect();
        CircuitOracle { supports }
    }

    pub fn contains(&self, w: &[Rational]) -> bool {
        self.supports.iter().all(|s| {
            let top = s.iter().map(|k| &w[k]).max().expect("nonempty support");
            s.iter().filter(|&k| &w[k] == top).count() >= 2
        })
    }
}

fn cross3(a: &[Rational], b: &[Rational]) -> [Rational; 3] {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// For every circuit of the Gale dual matroid, the maximum of `w` on it is attained twice.
pub fn bergman_member_circuit_oracle(a: &CoefficientMatrix, w: &[Rational]) -> bool {
    CircuitOracle::new(a).contains(w)
}

/// Whether `w` lies in the closure of the weight class of one of the flags.
pub fn in_weight_class_union(flags: &[FlagOfFlats], w: &[Rational]) -> bool {
    flags.iter().any(|f| f.closure_contains(w))
}
