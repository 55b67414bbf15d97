//! Exact rational distance-geometry predicates.
//!
//! A [`DistanceMatrix`] holds the pairwise distances of `m` labeled points.
//! All predicates evaluate the bordered determinant (`gamma_value`) or its
//! inner block (`delta_value`) numerically by fraction-free elimination on
//! the evaluated matrix (never by expanding the symbolic determinant), so
//! they work far beyond the symbolic dimension cap.
//!
//! Every result carries a certificate: the exact determinant value that
//! decided it. There is no floating point and no tolerance anywhere; the
//! predicates are sign and zero tests on exact rationals.
//!
//! Internally the matrix stores *squared* distances. Every computation
//! consumes only the squares, and some classical configurations (a unit
//! square with its irrational diagonal) have rational squared distances but
//! irrational distances; storing squares makes them representable exactly.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::rational::Rational;

mod format;
mod numeric;

pub use format::{parse_distance_matrix, write_distance_matrix, DmParseError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeometryError {
    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("{points} points need {expected} upper-triangle entries, got {got}")]
    WrongEntryCount {
        points: usize,
        expected: usize,
        got: usize,
    },
    #[error("distance between points {i} and {j} must be positive")]
    NonPositiveDistance { i: usize, j: usize },
    #[error("degenerate simplex: the bordered determinant vanishes and the circumradius formula divides by zero")]
    DegenerateSimplex,
    #[error("apex distance at position {index} must be positive")]
    NonPositiveTau { index: usize },
    #[error("scale factor must be positive")]
    NonPositiveScale,
    #[error("direct evaluation {direct} disagrees with the recurrence value {recurrence}")]
    AuditMismatch {
        direct: Box<Rational>,
        recurrence: Box<Rational>,
    },
}

/// Exact pairwise distances of `m >= 1` labeled points, stored as the upper
/// triangle of squared distances in row-major order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DistanceMatrix {
    m: usize,
    sq: Vec<Rational>,
}

fn triangle_len(m: usize) -> usize {
    m * (m - 1) / 2
}

impl DistanceMatrix {
    /// Builds from distances `d[i][j] > 0` for `0 <= i < j < m`, given in
    /// row-major upper-triangle order `(0,1), (0,2), ..., (m-2, m-1)`.
    pub fn from_distances(m: usize, d: Vec<Rational>) -> Result<DistanceMatrix, GeometryError> {
        // check signs before squaring erases them
        validate_shape(m, &d)?;
        let sq = d.into_iter().map(|x| &x * &x).collect();
        Ok(DistanceMatrix { m, sq })
    }

    /// Builds from squared distances in the same order.
    pub fn from_squared_distances(
        m: usize,
        sq: Vec<Rational>,
    ) -> Result<DistanceMatrix, GeometryError> {
        validate_shape(m, &sq)?;
        Ok(DistanceMatrix { m, sq })
    }

    pub fn points(&self) -> usize {
        self.m
    }

    /// The squared distance between points `i` and `j` (zero when `i == j`).
    pub fn squared_distance(&self, i: usize, j: usize) -> Rational {
        assert!(i < self.m && j < self.m, "point index out of range");
        if i == j {
            return Rational::zero();
        }
        let (a, b) = (i.min(j), i.max(j));
        self.sq[index(self.m, a, b)].clone()
    }

    /// Iterates the squared upper triangle in row-major order.
    pub fn squared_entries(&self) -> impl Iterator<Item = &Rational> {
        self.sq.iter()
    }

    /// All distances multiplied by `s > 0`.
    pub fn scale(&self, s: &Rational) -> Result<DistanceMatrix, GeometryError> {
        if !s.is_positive() {
            return Err(GeometryError::NonPositiveScale);
        }
        let s2 = s * s;
        Ok(DistanceMatrix {
            m: self.m,
            sq: self.sq.iter().map(|x| x * &s2).collect(),
        })
    }

    /// Relabels the points: new point `i` is old point `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> DistanceMatrix {
        assert_eq!(perm.len(), self.m, "permutation length mismatch");
        let mut sq = Vec::with_capacity(self.sq.len());
        for i in 0..self.m {
            for j in i + 1..self.m {
                sq.push(self.squared_distance(perm[i], perm[j]));
            }
        }
        DistanceMatrix { m: self.m, sq }
    }
}

fn validate_shape(m: usize, entries: &[Rational]) -> Result<(), GeometryError> {
    if m < 1 {
        return Err(GeometryError::TooFewPoints { needed: 1, got: m });
    }
    if entries.len() != triangle_len(m) {
        return Err(GeometryError::WrongEntryCount {
            points: m,
            expected: triangle_len(m),
            got: entries.len(),
        });
    }
    for (idx, value) in entries.iter().enumerate() {
        if !value.is_positive() {
            let (i, j) = unindex(m, idx);
            return Err(GeometryError::NonPositiveDistance { i, j });
        }
    }
    Ok(())
}

fn index(m: usize, i: usize, j: usize) -> usize {
    i * (2 * m - i - 1) / 2 + (j - i - 1)
}

fn unindex(m: usize, mut idx: usize) -> (usize, usize) {
    for i in 0..m {
        let row = m - i - 1;
        if idx < row {
            return (i, i + 1 + idx);
        }
        idx -= row;
    }
    unreachable!("index out of triangle")
}

/// A value with the determinant evaluation that decided it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GeometryResult<T> {
    pub value: T,
    pub certificate: Rational,
}

fn require_points(dm: &DistanceMatrix, needed: usize) -> Result<(), GeometryError> {
    if dm.points() < needed {
        return Err(GeometryError::TooFewPoints {
            needed,
            got: dm.points(),
        });
    }
    Ok(())
}

/// The bordered determinant of the `m = n + 1` points, evaluated exactly.
pub fn gamma_value(dm: &DistanceMatrix) -> Result<Rational, GeometryError> {
    require_points(dm, 2)?;
    let m = dm.points();
    let order = m + 1;
    let one = Rational::one();
    let rows: Vec<Vec<Rational>> = (0..order)
        .map(|r| {
            (0..order)
                .map(|c| {
                    if r == 0 && c == 0 {
                        Rational::zero()
                    } else if r == 0 || c == 0 {
                        one.clone()
                    } else {
                        dm.squared_distance(r - 1, c - 1)
                    }
                })
                .collect()
        })
        .collect();
    Ok(numeric::det_rational(&rows))
}

/// The inner-block determinant of the `m` points, evaluated exactly.
pub fn delta_value(dm: &DistanceMatrix) -> Result<Rational, GeometryError> {
    require_points(dm, 2)?;
    let m = dm.points();
    let rows: Vec<Vec<Rational>> = (0..m)
        .map(|r| (0..m).map(|c| dm.squared_distance(r, c)).collect())
        .collect();
    Ok(numeric::det_rational(&rows))
}

/// `(-1)^(n+1) / (2^n (n!)^2)`, the factor relating the bordered
/// determinant to the squared volume.
fn volume_factor(n: usize) -> Rational {
    let mut factorial = BigInt::one();
    for k in 2..=n {
        factorial *= k;
    }
    let denom = (BigInt::one() << n) * (&factorial * &factorial);
    let numer = if n.is_multiple_of(2) {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    Rational::new(numer, denom)
}

/// Squared `n`-volume of the simplex on `m = n + 1` points.
pub fn volume_squared(dm: &DistanceMatrix) -> Result<GeometryResult<Rational>, GeometryError> {
    require_points(dm, 2)?;
    let gamma = gamma_value(dm)?;
    let n = dm.points() - 1;
    Ok(GeometryResult {
        value: &gamma * &volume_factor(n),
        certificate: gamma,
    })
}

/// Whether the points lie in a proper affine subspace (bordered determinant
/// zero).
pub fn is_degenerate(dm: &DistanceMatrix) -> Result<GeometryResult<bool>, GeometryError> {
    let gamma = gamma_value(dm)?;
    Ok(GeometryResult {
        value: gamma.is_zero(),
        certificate: gamma,
    })
}

/// Whether the distances occur as the edge lengths of a nondegenerate
/// `n`-simplex.
///
/// The test walks the nested point prefixes `0..=k` and requires
/// `(-1)^(k+1) gamma_k > 0` for every `k <= n`. By the bordered-determinant
/// identity `gamma_k = (-1)^(k+1) 2^k det(G_k)` this chain is Sylvester's
/// criterion on the Gram form, i.e. positive definiteness, which is exactly
/// embeddability. The sign condition on the full determinant alone is
/// necessary but **not** sufficient: distance data with an indefinite Gram
/// form of positive determinant satisfies it while embedding nowhere (see
/// [`realizable_sign_condition`]).
///
/// The certificate is the first prefix determinant violating the chain, or
/// the full determinant when the chain holds.
pub fn is_realizable(dm: &DistanceMatrix) -> Result<GeometryResult<bool>, GeometryError> {
    require_points(dm, 2)?;
    let n = dm.points() - 1;
    let mut certificate = Rational::zero();
    for k in 1..=n {
        let gamma = gamma_value(&prefix_matrix(dm, k + 1))?;
        let positive = if k.is_multiple_of(2) {
            gamma.is_negative()
        } else {
            gamma.is_positive()
        };
        certificate = gamma;
        if !positive {
            return Ok(GeometryResult {
                value: false,
                certificate,
            });
        }
    }
    Ok(GeometryResult {
        value: true,
        certificate,
    })
}

/// The single-determinant sign test `(-1)^(n+1) gamma > 0` on its own.
///
/// This is the classical necessary condition for realizability; it is not
/// sufficient (an indefinite Gram form with positive determinant passes it),
/// which is why [`is_realizable`] checks the full nested chain instead. Kept
/// public so the gap between the two predicates stays observable.
pub fn realizable_sign_condition(
    dm: &DistanceMatrix,
) -> Result<GeometryResult<bool>, GeometryError> {
    let gamma = gamma_value(dm)?;
    let n = dm.points() - 1;
    let value = if n.is_multiple_of(2) {
        gamma.is_negative()
    } else {
        gamma.is_positive()
    };
    Ok(GeometryResult {
        value,
        certificate: gamma,
    })
}

/// The sub-matrix of the first `count` points.
fn prefix_matrix(dm: &DistanceMatrix, count: usize) -> DistanceMatrix {
    debug_assert!(count >= 1 && count <= dm.points());
    let mut sq = Vec::with_capacity(triangle_len(count));
    for i in 0..count {
        for j in i + 1..count {
            sq.push(dm.squared_distance(i, j));
        }
    }
    DistanceMatrix { m: count, sq }
}

/// Squared circumradius `-delta / (2 gamma)` of a nondegenerate simplex.
pub fn circumradius_squared(
    dm: &DistanceMatrix,
) -> Result<GeometryResult<Rational>, GeometryError> {
    let gamma = gamma_value(dm)?;
    if gamma.is_zero() {
        return Err(GeometryError::DegenerateSimplex);
    }
    let delta = delta_value(dm)?;
    let value = -&delta / (Rational::from_integer(BigInt::from(2)) * &gamma);
    Ok(GeometryResult {
        value,
        certificate: gamma,
    })
}

/// Whether `m = n + 2` points of an `n`-dimensional space lie on a common
/// sphere or hyperplane: the inner determinant of all `m` points vanishes.
pub fn is_cospherical(dm: &DistanceMatrix) -> Result<GeometryResult<bool>, GeometryError> {
    require_points(dm, 3)?;
    let delta = delta_value(dm)?;
    Ok(GeometryResult {
        value: delta.is_zero(),
        certificate: delta,
    })
}

/// Independent realizability and volume check through the Gram matrix
/// `G[i][j] = (sq(0,i) + sq(0,j) - sq(i,j)) / 2`: realizable iff `G` is
/// positive definite (leading principal minors all positive, computed
/// fraction-free), and `det(G) = (n!)^2 Vol^2`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GramOracleResult {
    pub realizable: bool,
    /// `det(G) / (n!)^2`; equals the squared volume exactly when realizable.
    pub volume_squared: Rational,
}

pub fn gram_oracle(dm: &DistanceMatrix) -> Result<GramOracleResult, GeometryError> {
    require_points(dm, 2)?;
    let n = dm.points() - 1;
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let rows: Vec<Vec<Rational>> = (1..=n)
        .map(|i| {
            (1..=n)
                .map(|j| {
                    let s = dm.squared_distance(0, i) + dm.squared_distance(0, j)
                        - dm.squared_distance(i, j);
                    &s * &half
                })
                .collect()
        })
        .collect();
    let (cleared, scale) = numeric::clear_rows(&rows);
    let minors = numeric::leading_principal_minors(cleared.clone());
    let realizable = minors.len() == n && minors.iter().all(|x| x.is_positive());
    let det = if minors.len() == n {
        Rational::new(minors.last().expect("n >= 1").clone(), scale)
    } else {
        Rational::new(numeric::det_bigint(cleared), scale)
    };
    let mut factorial = BigInt::one();
    for k in 2..=n {
        factorial *= k;
    }
    Ok(GramOracleResult {
        realizable,
        volume_squared: det / Rational::from_integer(&factorial * &factorial),
    })
}

/// The distance matrix of the tower simplex: the base points, then one
/// vertex per entry of `taus`, each equidistant (at that entry) from every
/// earlier point.
pub fn tower_matrix(
    base: &DistanceMatrix,
    taus: &[Rational],
) -> Result<DistanceMatrix, GeometryError> {
    for (index, tau) in taus.iter().enumerate() {
        if !tau.is_positive() {
            return Err(GeometryError::NonPositiveTau { index });
        }
    }
    let p = base.points() - 1;
    let m = base.points() + taus.len();
    let mut sq = Vec::with_capacity(triangle_len(m));
    for i in 0..m {
        for j in i + 1..m {
            if j <= p {
                sq.push(base.squared_distance(i, j));
            } else {
                let tau = &taus[j - p - 1];
                sq.push(tau * tau);
            }
        }
    }
    DistanceMatrix::from_squared_distances(m, sq)
}

/// The bordered determinant of the tower simplex, evaluated directly.
pub fn lambda_value(base: &DistanceMatrix, taus: &[Rational]) -> Result<Rational, GeometryError> {
    require_points(base, 2)?;
    gamma_value(&tower_matrix(base, taus)?)
}

/// The same value through the recurrence
/// `L(k) = -2 L(k-1) t_k^2 - L(k-2) t_{k-1}^4`, seeded by the base
/// determinants. An independent route used to audit [`lambda_value`].
pub fn lambda_value_by_recurrence(
    base: &DistanceMatrix,
    taus: &[Rational],
) -> Result<Rational, GeometryError> {
    require_points(base, 2)?;
    for (index, tau) in taus.iter().enumerate() {
        if !tau.is_positive() {
            return Err(GeometryError::NonPositiveTau { index });
        }
    }
    let gamma_base = gamma_value(base)?;
    if taus.is_empty() {
        return Ok(gamma_base);
    }
    let delta_base = delta_value(base)?;
    let two = Rational::from_integer(BigInt::from(2));
    // one apex: lambda = -2 gamma t^2 - delta
    let t1 = &taus[0] * &taus[0];
    let mut prev = gamma_base; // lambda with no apex
    let mut last = -(&two * &prev * &t1) - &delta_base;
    for k in 1..taus.len() {
        let tk2 = &taus[k] * &taus[k];
        let tprev4 = {
            let s = &taus[k - 1] * &taus[k - 1];
            &s * &s
        };
        let next = -(&two * &last * &tk2) - &(&prev * &tprev4);
        prev = last;
        last = next;
    }
    Ok(last)
}

/// Squared volume of the tower simplex over `base` with apex distances
/// `taus`, from the direct determinant evaluation.
pub fn isosceles_volume_squared(
    base: &DistanceMatrix,
    taus: &[Rational],
) -> Result<GeometryResult<Rational>, GeometryError> {
    let lambda = lambda_value(base, taus)?;
    let n = base.points() - 1 + taus.len();
    Ok(GeometryResult {
        value: &lambda * &volume_factor(n),
        certificate: lambda,
    })
}

/// As [`isosceles_volume_squared`], but recomputes the determinant through
/// the recurrence and fails on any disagreement.
pub fn isosceles_volume_squared_audited(
    base: &DistanceMatrix,
    taus: &[Rational],
) -> Result<GeometryResult<Rational>, GeometryError> {
    let result = isosceles_volume_squared(base, taus)?;
    let recurrence = lambda_value_by_recurrence(base, taus)?;
    if recurrence != result.certificate {
        return Err(GeometryError::AuditMismatch {
            direct: Box::new(result.certificate),
            recurrence: Box::new(recurrence),
        });
    }
    Ok(result)
}
