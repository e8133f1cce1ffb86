//! Finite generalized power series in `t` with rational exponents, and
//! polynomials over them.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::lattice::{LatticePoint, PointConfiguration, RationalVector};
use crate::matroid::{
    coefficient_matrix, gale_dual, random_gaps, weight_class_sample, FlagOfFlats, GaleDual, Matroid,
};
use crate::rational::{self, int, one, pow, ratio, Rational};
use crate::subdivision::HeightVector;
use crate::subset::IndexSet;

/// Bound on resampling when coefficient cancellations move a valuation.
pub const MAX_RETRIES: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LiftError {
    #[error("cannot parse series {literal:?}: {reason}")]
    Parse { literal: String, reason: String },
    #[error("coefficient of {0} is zero")]
    ZeroCoefficient(LatticePoint),
    #[error("monomial {0} has a negative y-exponent, so f(x, y + 1) is not a polynomial")]
    NegativeExponent(LatticePoint),
    #[error("no lift in the weight class after {0} attempts")]
    RetryExhausted(usize),
    #[error("no three affinely independent points to use as pivots")]
    NoPivots,
}

/// `Σ c_k t^{q_k}` with strictly increasing exponents and nonzero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PuiseuxScalar {
    terms: Vec<(Rational, Rational)>,
}

impl PuiseuxScalar {
    pub fn zero() -> Self {
        PuiseuxScalar { terms: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, Rational::zero())
    }

    /// `c·t^q`
    pub fn monomial(c: Rational, q: Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        PuiseuxScalar {
            terms: vec![(q, c)],
        }
    }

    /// Builds a series from arbitrary `(exponent, coefficient)` pairs.
    pub fn from_terms(pairs: impl IntoIterator<Item = (Rational, Rational)>) -> Self {
        let mut acc: BTreeMap<Rational, Rational> = BTreeMap::new();
        for (q, c) in pairs {
            *acc.entry(q).or_insert_with(Rational::zero) += c;
        }
        PuiseuxScalar {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> &[(Rational, Rational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Least exponent; `None` stands for the valuation `+∞` of zero.
    pub fn val(&self) -> Option<&Rational> {
        self.terms.first().map(|(q, _)| q)
    }

    /// Leading coefficient.
    pub fn lc(&self) -> Option<&Rational> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        PuiseuxScalar {
            terms: self.terms.iter().map(|(q, a)| (q.clone(), a * c)).collect(),
        }
    }
}

impl Add for &PuiseuxScalar {
    type Output = PuiseuxScalar;
    fn add(self, rhs: &PuiseuxScalar) -> PuiseuxScalar {
        PuiseuxScalar::from_terms(self.terms.iter().chain(&rhs.terms).cloned())
    }
}

impl Sub for &PuiseuxScalar {
    type Output = PuiseuxScalar;
    fn sub(self, rhs: &PuiseuxScalar) -> PuiseuxScalar {
        self + &-rhs
    }
}

impl Neg for &PuiseuxScalar {
    type Output = PuiseuxScalar;
    fn neg(self) -> PuiseuxScalar {
        PuiseuxScalar {
            terms: self.terms.iter().map(|(q, c)| (q.clone(), -c)).collect(),
        }
    }
}

impl Mul for &PuiseuxScalar {
    type Output = PuiseuxScalar;
    fn mul(self, rhs: &PuiseuxScalar) -> PuiseuxScalar {
        PuiseuxScalar::from_terms(
            self.terms
                .iter()
                .flat_map(|(q, c)| rhs.terms.iter().map(move |(r, d)| (q + r, c * d))),
        )
    }
}

impl fmt::Display for PuiseuxScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (q, c)) in self.terms.iter().enumerate() {
            let c = match (k, c.is_negative()) {
                (0, _) => c.clone(),
                (_, true) => {
                    write!(f, " - ")?;
                    -c
                }
                (_, false) => {
                    write!(f, " + ")?;
                    c.clone()
                }
            };
            if q.is_zero() {
                write!(f, "{}", rational::to_string(&c))?;
            } else {
                write!(
                    f,
                    "{}*t^{}",
                    rational::to_string(&c),
                    rational::to_string(q)
                )?;
            }
        }
        Ok(())
    }
}

impl FromStr for PuiseuxScalar {
    type Err = LiftError;

    /// Accepts sums of terms `c`, `c*t^q`, `c*t`, `t^q` and `t` with rational
    /// `c` and `q`, separated by `+` or `-`; exponents may be parenthesized.
    fn from_str(s: &str) -> Result<Self, LiftError> {
        let err = |reason: &str| LiftError::Parse {
            literal: s.to_string(),
            reason: reason.to_string(),
        };
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if text.is_empty() {
            return Err(err("empty series"));
        }
        // split at binary + and -, keeping signs; a sign right after ^, ( or * is unary
        let mut pieces: Vec<String> = Vec::new();
        let mut cur = String::new();
        let mut depth = 0;
        for ch in text.chars() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                _ => {}
            }
            let splits = (ch == '+' || ch == '-')
                && depth == 0
                && !cur.is_empty()
                && cur != "+"
                && cur != "-"
                && !cur.ends_with(['^', '*', '(']);
            if splits {
                pieces.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        pieces.push(cur);
        let mut terms = Vec::new();
        for piece in pieces {
            let mut neg = false;
            let mut body = piece.as_str();
            while let Some(rest) = body.strip_prefix(['+', '-']) {
                neg ^= body.starts_with('-');
                body = rest;
            }
            if body.is_empty() {
                return Err(err("dangling sign"));
            }
            let (coef, exp) = match body.find('t') {
                None => (body, None),
                Some(pos) => {
                    let coef = body[..pos].strip_suffix('*').unwrap_or(&body[..pos]);
                    let rest = &body[pos + 1..];
                    let exp = if rest.is_empty() {
                        "1"
                    } else {
                        rest.strip_prefix('^')
                            .ok_or_else(|| err("expected ^ after t"))?
                    };
                    let exp = exp
                        .strip_prefix('(')
                        .and_then(|e| e.strip_suffix(')'))
                        .unwrap_or(exp);
                    (coef, Some(exp))
                }
            };
            let c = if coef.is_empty() {
                one()
            } else {
                rational::parse(coef).map_err(|e| err(&e.to_string()))?
            };
            let q = match exp {
                None => Rational::zero(),
                Some(e) => rational::parse(e).map_err(|x| err(&x.to_string()))?,
            };
            terms.push((q, if neg { -c } else { c }));
        }
        Ok(PuiseuxScalar::from_terms(terms))
    }
}

impl Serialize for PuiseuxScalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for PuiseuxScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `Σ a_m x^{m_1} y^{m_2}` with series coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PuiseuxPolynomial {
    #[serde(with = "coefficient_list")]
    pub coefficients: BTreeMap<LatticePoint, PuiseuxScalar>,
}

mod coefficient_list {
    use super::*;

    #[derive(Serialize, Deserialize)]
    struct Entry {
        point: LatticePoint,
        coefficient: PuiseuxScalar,
    }

    pub fn serialize<S: Serializer>(
        m: &BTreeMap<LatticePoint, PuiseuxScalar>,
        s: S,
    ) -> Result<S::Ok, S::Error> {
        let v: Vec<Entry> = m
            .iter()
            .map(|(p, c)| Entry {
                point: *p,
                coefficient: c.clone(),
            })
            .collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> Result<BTreeMap<LatticePoint, PuiseuxScalar>, D::Error> {
        let v = Vec::<Entry>::deserialize(d)?;
        Ok(v.into_iter()
            .filter(|e| !e.coefficient.is_zero())
            .map(|e| (e.point, e.coefficient))
            .collect())
    }
}

impl PuiseuxPolynomial {
    pub fn new(terms: impl IntoIterator<Item = (LatticePoint, PuiseuxScalar)>) -> Self {
        let mut coefficients: BTreeMap<LatticePoint, PuiseuxScalar> = BTreeMap::new();
        for (m, c) in terms {
            let sum = match coefficients.get(&m) {
                Some(prev) => prev + &c,
                None => c,
            };
            if sum.is_zero() {
                coefficients.remove(&m);
            } else {
                coefficients.insert(m, sum);
            }
        }
        PuiseuxPolynomial { coefficients }
    }

    /// Parses `(point, series)` pairs.
    pub fn parse(terms: &[((i64, i64), &str)]) -> Result<Self, LiftError> {
        let parsed: Result<Vec<_>, _> = terms
            .iter()
            .map(|&((i, j), s)| Ok((LatticePoint::new(i, j), s.parse()?)))
            .collect();
        Ok(Self::new(parsed?))
    }

    /// The coefficient vector over a configuration, zero off the support.
    pub fn on_config(&self, config: &PointConfiguration) -> Vec<PuiseuxScalar> {
        config
            .points()
            .iter()
            .map(|p| self.coefficients.get(p).cloned().unwrap_or_default())
            .collect()
    }

    pub fn from_config(config: &PointConfiguration, coefficients: Vec<PuiseuxScalar>) -> Self {
        Self::new(config.points().iter().copied().zip(coefficients))
    }

    pub fn support(&self) -> Vec<LatticePoint> {
        self.coefficients.keys().copied().collect()
    }

    /// `f(x, y)` for rational `x`, `y`.
    pub fn evaluate(&self, x: &Rational, y: &Rational) -> PuiseuxScalar {
        self.coefficients
            .iter()
            .map(|(m, c)| c.scale(&(pow(x, m.i) * pow(y, m.j))))
            .fold(PuiseuxScalar::zero(), |acc, v| &acc + &v)
    }

    /// `∂f/∂x`
    pub fn derivative_x(&self) -> Self {
        Self::new(
            self.coefficients
                .iter()
                .filter(|(m, _)| m.i != 0)
                .map(|(m, c)| (LatticePoint::new(m.i - 1, m.j), c.scale(&int(m.i)))),
        )
    }

    /// `∂f/∂y`
    pub fn derivative_y(&self) -> Self {
        Self::new(
            self.coefficients
                .iter()
                .filter(|(m, _)| m.j != 0)
                .map(|(m, c)| (LatticePoint::new(m.i, m.j - 1), c.scale(&int(m.j)))),
        )
    }
}

/// `-val(a_m)` per configuration point; fails on a zero coefficient.
pub fn neg_val_vector(
    config: &PointConfiguration,
    f: &PuiseuxPolynomial,
) -> Result<HeightVector, LiftError> {
    neg_val_partial(config, f)
        .into_iter()
        .zip(config.points())
        .map(|(v, p)| v.ok_or(LiftError::ZeroCoefficient(*p)))
        .collect::<Result<Vec<_>, _>>()
        .map(|v| HeightVector(RationalVector(v)))
}

/// `-val(a_m)` per configuration point, `None` where the coefficient vanishes.
pub fn neg_val_partial(
    config: &PointConfiguration,
    f: &PuiseuxPolynomial,
) -> Vec<Option<Rational>> {
    f.on_config(config)
        .iter()
        .map(|c| c.val().map(|q| -q))
        .collect()
}

/// `f`, `∂f/∂x` and `∂f/∂y` at `(1, 1)`.
pub fn values_at_one_one(f: &PuiseuxPolynomial) -> [PuiseuxScalar; 3] {
    let one = one();
    [
        f.evaluate(&one, &one),
        f.derivative_x().evaluate(&one, &one),
        f.derivative_y().evaluate(&one, &one),
    ]
}

/// Whether `(1, 1)` is a singular point of `f`, by exact evaluation.
pub fn verify_singular_at_one_one(f: &PuiseuxPolynomial) -> bool {
    values_at_one_one(f).iter().all(PuiseuxScalar::is_zero)
}

/// `f(x, y + 1)`, expanded and collected by monomial.
pub fn refine_substitution(f: &PuiseuxPolynomial) -> Result<PuiseuxPolynomial, LiftError> {
    let mut terms = Vec::new();
    for (m, c) in &f.coefficients {
        if m.j < 0 {
            return Err(LiftError::NegativeExponent(*m));
        }
        let mut binom = Rational::one();
        for k in 0..=m.j {
            terms.push((LatticePoint::new(m.i, k), c.scale(&binom)));
            binom = binom * int(m.j - k) / int(k + 1);
        }
    }
    Ok(PuiseuxPolynomial::new(terms))
}

/// `Σ_k γ_k t^{λ_k} b_k` for the rows `b_k` of a Gale dual, as a polynomial on the configuration.
pub fn lift_from_gale(
    config: &PointConfiguration,
    b: &GaleDual,
    exponents: &[Rational],
    gammas: &[Rational],
) -> PuiseuxPolynomial {
    let mut coeffs = vec![PuiseuxScalar::zero(); config.len()];
    for (row, (q, g)) in exponents.iter().zip(gammas).enumerate() {
        for (pos, &k) in b.columns.iter().enumerate() {
            let entry = b.matrix.get(row, pos);
            if !entry.is_zero() {
                coeffs[k] = &coeffs[k] + &PuiseuxScalar::monomial(g * entry, q.clone());
            }
        }
    }
    PuiseuxPolynomial::from_config(config, coeffs)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftSample {
    pub f: PuiseuxPolynomial,
    /// The height vector aimed at, a point of the weight class.
    pub target: HeightVector,
    pub neg_val: HeightVector,
    pub in_weight_class: bool,
    pub pivots: [usize; 3],
    pub attempts: usize,
}

/// A random polynomial singular at `(1, 1)` whose tropicalization lies in the
/// weight class of `flag`.
///
/// The target heights come from the weight class (random gaps unless given).
/// The pivots are the complement of a basis of minimal target weight in the
/// Gale dual matroid; every other coefficient is `γ·t^{-u}` and the pivot
/// coefficients are forced by `A·a = 0`. Random `γ` are redrawn when a
/// cancellation moves a valuation.
pub fn sample_singular_lift(
    config: &PointConfiguration,
    flag: &FlagOfFlats,
    gaps: Option<&[Rational]>,
    seed: u64,
) -> Result<LiftSample, LiftError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let owned;
    let gaps = match gaps {
        Some(g) => g,
        None => {
            owned = random_gaps(&mut rng, flag.flats.len());
            &owned
        }
    };
    let target = weight_class_sample(flag, Some(gaps));
    let a = coefficient_matrix(config, &one(), &one()).expect("(1, 1) lies in the torus");
    let pivots = pivots_for(config, &Matroid::of_coefficient_matrix(&a), &target)?;
    let b = gale_dual(&a, Some(pivots)).expect("pivots are affinely independent");
    let non_pivots: Vec<usize> = (0..config.len()).filter(|k| !pivots.contains(k)).collect();
    let exponents: Vec<Rational> = non_pivots.iter().map(|&k| -&target[k]).collect();
    for attempt in 1..=MAX_RETRIES {
        let gammas: Vec<Rational> = non_pivots
            .iter()
            .map(|_| {
                let p = loop {
                    let p: i64 = rng.random_range(-9..=9);
                    if p != 0 {
                        break p;
                    }
                };
                ratio(p, rng.random_range(1..=5))
            })
            .collect();
        let f = lift_from_gale(config, &b, &exponents, &gammas);
        let Ok(neg_val) = neg_val_vector(config, &f) else {
            continue;
        };
        let in_weight_class = flag.closure_contains(&neg_val);
        if in_weight_class {
            return Ok(LiftSample {
                f,
                target,
                neg_val,
                in_weight_class,
                pivots,
                attempts: attempt,
            });
        }
    }
    Err(LiftError::RetryExhausted(MAX_RETRIES))
}

/// Three affinely independent points, greedily by decreasing height: a basis
/// of the column matroid of `A` of maximal weight.
fn pivots_for(
    config: &PointConfiguration,
    m_a: &Matroid,
    u: &[Rational],
) -> Result<[usize; 3], LiftError> {
    let mut order: Vec<usize> = (0..config.len()).collect();
    order.sort_by(|&x, &y| u[y].cmp(&u[x]).then(x.cmp(&y)));
    let mut basis = IndexSet::EMPTY;
    for k in order {
        if m_a.is_independent(basis.with(k)) {
            basis.insert(k);
        }
    }
    let v = basis.to_vec();
    match v.as_slice() {
        [p, q, r] => Ok([*p, *q, *r]),
        _ => Err(LiftError::NoPivots),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> PuiseuxScalar {
        x.parse().unwrap()
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(s("t + t^3").val(), Some(&int(1)));
        assert_eq!(s("2 + t^3").val(), Some(&int(0)));
        assert_eq!(s("-1/2*t^(-1/3) + 4").to_string(), "-1/2*t^-1/3 + 4");
        assert_eq!(s("-t^-1/3"), PuiseuxScalar::monomial(int(-1), ratio(-1, 3)));
        assert_eq!(s("t - t"), PuiseuxScalar::zero());
        assert_eq!(s("0").val(), None);
        assert!("1/0*t".parse::<PuiseuxScalar>().is_err());
        assert!("t^".parse::<PuiseuxScalar>().is_err());
        let x = s("3*t^2 - 1/2*t + 5");
        assert_eq!(x.to_string().parse::<PuiseuxScalar>().unwrap(), x);
    }

    #[test]
    fn arithmetic() {
        let a = s("1 + t");
        let b = s("1 - t");
        assert_eq!(&a * &b, s("1 - t^2"));
        assert_eq!(&(&a + &b) - &s("2"), PuiseuxScalar::zero());
    }

    #[test]
    fn non_singular_line() {
        // x + y - 2 vanishes at (1, 1) but its x-derivative does not
        let f = PuiseuxPolynomial::parse(&[((1, 0), "1"), ((0, 1), "1"), ((0, 0), "-2")]).unwrap();
        let [v, fx, _] = values_at_one_one(&f);
        assert!(v.is_zero());
        assert_eq!(fx, s("1"));
        assert!(!verify_singular_at_one_one(&f));
    }

    #[test]
    fn substitution_of_y_free_polynomial_is_identity() {
        let f = PuiseuxPolynomial::parse(&[((2, 0), "t"), ((0, 0), "3")]).unwrap();
        assert_eq!(refine_substitution(&f).unwrap(), f);
        let g = PuiseuxPolynomial::parse(&[((0, -1), "1")]).unwrap();
        assert!(refine_substitution(&g).is_err());
    }

    #[test]
    fn unit_square_lift() {
        let cfg = PointConfiguration::from_pairs(&[(0, 0), (1, 0), (0, 1), (1, 1)]).unwrap();
        let a = coefficient_matrix(&cfg, &one(), &one()).unwrap();
        let b = gale_dual(&a, None).unwrap();
        let f = lift_from_gale(&cfg, &b, &[int(0)], &[int(3)]);
        assert!(verify_singular_at_one_one(&f));
        assert_eq!(f.coefficients.len(), 4);
    }
}
