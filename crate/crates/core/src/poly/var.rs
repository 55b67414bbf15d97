use std::fmt;

/// Identifier for a polynomial variable.
///
/// `Dist(i, j)` is the distance variable between labeled points `i < j`;
/// `Tau(k)` is the apex-distance variable of the `k`-th adjoined vertex,
/// `k >= 2`.
///
/// The derived order is the canonical one: every `Dist` precedes every
/// `Tau`, `Dist` is ordered lexicographically by `(i, j)`, and `Tau` by `k`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum VarId {
    Dist(u32, u32),
    Tau(u32),
}

impl VarId {
    /// The distance variable `d_i_j`. Panics unless `i < j`.
    pub fn dist(i: u32, j: u32) -> VarId {
        assert!(i < j, "distance variable requires i < j, got ({i}, {j})");
        VarId::Dist(i, j)
    }

    /// The apex variable `t_k`. Panics unless `k >= 2`.
    pub fn tau(k: u32) -> VarId {
        assert!(k >= 2, "tau variable requires k >= 2, got {k}");
        VarId::Tau(k)
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarId::Dist(i, j) => write!(f, "d_{i}_{j}"),
            VarId::Tau(k) => write!(f, "t_{k}"),
        }
    }
}

/// Total or group degree of a polynomial.
///
/// The zero polynomial has degree `MinusInfinity`, which compares below
/// every finite degree.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Degree {
    MinusInfinity,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::MinusInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::MinusInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}
