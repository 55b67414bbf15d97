//! The symbolic Cayley-Menger determinant families.
//!
//! `gamma(n)` is the determinant of the bordered squared-distance matrix of
//! `n + 1` points; `delta(n)` the determinant of its inner block;
//! `lambda(n, p)` the specialization of `gamma(n)` in which every vertex
//! past `p` sits at a single apex distance (the isosceles tower). A
//! [`CmCache`] owns the dimension cap and memoizes computed determinants, so
//! repeated identity checks share one copy of each polynomial.
//!
//! The cap bounds the matrix order, not `n` itself: with cap `c`, `gamma`
//! accepts `n <= c`, `delta` accepts `n <= c + 1` and `x_det` accepts
//! `n <= c + 2`, all of which stop at matrices of order `c + 2`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_traits::One;
use thiserror::Error;

use crate::poly::{PolyError, Polynomial, VarId};

mod det;
mod matrix;

pub use det::{det_bareiss, det_laplace};
pub use matrix::{a_matrix, cm_matrix, delta_matrix, x_matrix, SymbolicMatrix};

/// Default bound on the symbolic dimension; term counts grow combinatorially
/// past it.
pub const DEFAULT_SYMBOLIC_CAP: u32 = 6;

#[derive(Debug, Error)]
pub enum CmError {
    #[error("{what}: {detail}")]
    InvalidDimension { what: &'static str, detail: String },
    #[error("{what} with n = {n} needs a matrix of order {order}, beyond the symbolic cap {cap} (largest allowed order {max_order})")]
    CapExceeded {
        what: &'static str,
        n: u32,
        order: u32,
        cap: u32,
        max_order: u32,
    },
    #[error("parity normalization of {what} with n = {n} failed: {source}")]
    ParityDivision {
        what: &'static str,
        n: u32,
        source: PolyError,
    },
}

/// Thread-safe cache of computed determinants with a configurable cap.
pub struct CmCache {
    cap: u32,
    gammas: Mutex<HashMap<u32, Arc<Polynomial>>>,
    deltas: Mutex<HashMap<u32, Arc<Polynomial>>>,
    x_dets: Mutex<HashMap<u32, Arc<Polynomial>>>,
}

impl Default for CmCache {
    fn default() -> Self {
        CmCache::new()
    }
}

impl CmCache {
    pub fn new() -> CmCache {
        CmCache::with_cap(DEFAULT_SYMBOLIC_CAP)
    }

    pub fn with_cap(cap: u32) -> CmCache {
        CmCache {
            cap,
            gammas: Mutex::new(HashMap::new()),
            deltas: Mutex::new(HashMap::new()),
            x_dets: Mutex::new(HashMap::new()),
        }
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    fn check_range(&self, what: &'static str, n: u32, max_n: u32, order: u32) -> Result<(), CmError> {
        if n < 1 {
            return Err(CmError::InvalidDimension {
                what,
                detail: format!("requires n >= 1, got n = {n}"),
            });
        }
        if n > max_n {
            return Err(CmError::CapExceeded {
                what,
                n,
                order,
                cap: self.cap,
                max_order: self.cap + 2,
            });
        }
        Ok(())
    }

    fn cached(
        slot: &Mutex<HashMap<u32, Arc<Polynomial>>>,
        n: u32,
        compute: impl FnOnce() -> Polynomial,
    ) -> Arc<Polynomial> {
        if let Some(hit) = slot.lock().unwrap().get(&n) {
            return hit.clone();
        }
        let value = Arc::new(compute());
        // first writer wins if another thread raced us here
        slot.lock()
            .unwrap()
            .entry(n)
            .or_insert(value)
            .clone()
    }

    /// The Cayley-Menger determinant of `n + 1` points, `1 <= n <= cap`.
    pub fn gamma(&self, n: u32) -> Result<Arc<Polynomial>, CmError> {
        self.check_range("gamma", n, self.cap, n + 2)?;
        let m = cm_matrix(n)?;
        Ok(Self::cached(&self.gammas, n, || det_laplace(&m)))
    }

    /// The inner-block determinant, `1 <= n <= cap + 1`.
    pub fn delta(&self, n: u32) -> Result<Arc<Polynomial>, CmError> {
        self.check_range("delta", n, self.cap + 1, n + 1)?;
        let m = delta_matrix(n)?;
        Ok(Self::cached(&self.deltas, n, || det_laplace(&m)))
    }

    /// Determinant of the general symmetric zero-diagonal matrix of order
    /// `n`, `1 <= n <= cap + 2`.
    pub fn x_det(&self, n: u32) -> Result<Arc<Polynomial>, CmError> {
        self.check_range("x_det", n, self.cap + 2, n)?;
        let m = x_matrix(n)?;
        Ok(Self::cached(&self.x_dets, n, || det_laplace(&m)))
    }

    /// Determinant of the general antisymmetric matrix of order `n`.
    pub fn a_det(&self, n: u32) -> Result<Polynomial, CmError> {
        self.check_range("a_det", n, self.cap + 2, n)?;
        Ok(det_laplace(&a_matrix(n)?))
    }

    /// The isosceles-tower specialization: `gamma(n)` with `d_i_l` replaced
    /// by `t_l` for every `l > p` and `0 <= i < l`. `lambda(n, n)` is
    /// `gamma(n)` itself.
    pub fn lambda(&self, n: u32, p: u32) -> Result<Polynomial, CmError> {
        if !(1..=n).contains(&p) {
            return Err(CmError::InvalidDimension {
                what: "lambda",
                detail: format!("requires 1 <= p <= n, got n = {n}, p = {p}"),
            });
        }
        let gamma = self.gamma(n)?;
        Ok(gamma.substitute(&lambda_map(n, p)))
    }

    /// `gamma(n)` for even `n`, `gamma(n)/2` for odd `n`; content 1 either way.
    pub fn normalized_gamma(&self, n: u32) -> Result<Polynomial, CmError> {
        let g = self.gamma(n)?;
        if n.is_multiple_of(2) {
            Ok((*g).clone())
        } else {
            halve("gamma", n, &g)
        }
    }

    /// `delta(n)/2` for even `n`, `delta(n)` for odd `n`; content 1 either way.
    pub fn normalized_delta(&self, n: u32) -> Result<Polynomial, CmError> {
        let d = self.delta(n)?;
        if n.is_multiple_of(2) {
            halve("delta", n, &d)
        } else {
            Ok((*d).clone())
        }
    }

    /// `x_det(n)` for even `n`, `x_det(n)/2` for odd `n`.
    pub fn normalized_x(&self, n: u32) -> Result<Polynomial, CmError> {
        let x = self.x_det(n)?;
        if n.is_multiple_of(2) {
            Ok((*x).clone())
        } else {
            halve("x_det", n, &x)
        }
    }
}

fn halve(what: &'static str, n: u32, p: &Polynomial) -> Result<Polynomial, CmError> {
    p.exact_divide(&Polynomial::constant(2))
        .map_err(|source| CmError::ParityDivision { what, n, source })
}

/// The substitution map defining `lambda(n, p)`.
fn lambda_map(n: u32, p: u32) -> BTreeMap<VarId, Polynomial> {
    let mut map = BTreeMap::new();
    for level in p + 1..=n {
        let image = Polynomial::variable(VarId::tau(level));
        for i in 0..level {
            map.insert(VarId::dist(i, level), image.clone());
        }
    }
    map
}

/// Applies a permutation of the point labels to the `Dist` variable indices.
///
/// `perm[i]` is the new label of point `i`; variables whose indices lie
/// outside `perm` and all `Tau` variables are left unchanged.
pub fn relabel_points(p: &Polynomial, perm: &[u32]) -> Polynomial {
    let len = perm.len() as u32;
    let mut map = BTreeMap::new();
    for v in p.variables() {
        if let VarId::Dist(i, j) = v {
            if i < len && j < len {
                let (a, b) = (perm[i as usize], perm[j as usize]);
                map.insert(v, Polynomial::variable(VarId::dist(a.min(b), a.max(b))));
            }
        }
    }
    p.substitute(&map)
}

/// Content divided out: `p / content(p)`, with the sign left untouched.
pub fn primitive_part(p: &Polynomial) -> Polynomial {
    let c = p.content();
    if c.is_one() || p.is_zero() {
        return p.clone();
    }
    p.exact_divide(&Polynomial::constant(c))
        .expect("content divides every coefficient")
}
