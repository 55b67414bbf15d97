use crate::poly::{Polynomial, VarId};

use super::CmError;

/// A square matrix of polynomials.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymbolicMatrix {
    order: usize,
    entries: Vec<Polynomial>,
}

impl SymbolicMatrix {
    /// Builds an `order x order` matrix from an entry function.
    pub fn from_fn<F: FnMut(usize, usize) -> Polynomial>(order: usize, mut f: F) -> SymbolicMatrix {
        assert!(order >= 1, "matrix order must be at least 1");
        let mut entries = Vec::with_capacity(order * order);
        for r in 0..order {
            for c in 0..order {
                entries.push(f(r, c));
            }
        }
        SymbolicMatrix { order, entries }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn at(&self, row: usize, col: usize) -> &Polynomial {
        assert!(row < self.order && col < self.order, "index out of range");
        &self.entries[row * self.order + col]
    }

    /// The matrix with `row` and `col` deleted.
    pub fn minor(&self, row: usize, col: usize) -> SymbolicMatrix {
        assert!(self.order >= 2, "minor of a 1x1 matrix");
        SymbolicMatrix::from_fn(self.order - 1, |r, c| {
            let rr = if r < row { r } else { r + 1 };
            let cc = if c < col { c } else { c + 1 };
            self.at(rr, cc).clone()
        })
    }
}

fn squared_dist(a: usize, b: usize) -> Polynomial {
    let (i, j) = if a < b { (a, b) } else { (b, a) };
    Polynomial::variable(VarId::dist(i as u32, j as u32)).pow(2)
}

fn require_dimension(what: &'static str, n: u32) -> Result<(), CmError> {
    if n < 1 {
        return Err(CmError::InvalidDimension {
            what,
            detail: format!("requires n >= 1, got n = {n}"),
        });
    }
    Ok(())
}

/// The bordered Cayley-Menger matrix of order `n + 2`: row and column 0 are
/// `(0, 1, 1, ..., 1)` and the inner block holds the squared distances
/// `d_i_j^2` with zero diagonal.
pub fn cm_matrix(n: u32) -> Result<SymbolicMatrix, CmError> {
    require_dimension("cm_matrix", n)?;
    let order = n as usize + 2;
    Ok(SymbolicMatrix::from_fn(order, |r, c| {
        if r == 0 && c == 0 {
            Polynomial::zero()
        } else if r == 0 || c == 0 {
            Polynomial::one()
        } else if r == c {
            Polynomial::zero()
        } else {
            squared_dist(r - 1, c - 1)
        }
    }))
}

/// The inner squared-distance matrix of order `n + 1` (the (1,1)-minor of
/// the bordered matrix).
pub fn delta_matrix(n: u32) -> Result<SymbolicMatrix, CmError> {
    require_dimension("delta_matrix", n)?;
    let order = n as usize + 1;
    Ok(SymbolicMatrix::from_fn(order, |r, c| {
        if r == c {
            Polynomial::zero()
        } else {
            squared_dist(r, c)
        }
    }))
}

/// The general symmetric matrix of order `n` with zero diagonal. Its
/// off-diagonal variables are first-degree and use 1-based indices, so the
/// `(0, 1)` entry is the variable `d_1_2`.
pub fn x_matrix(n: u32) -> Result<SymbolicMatrix, CmError> {
    require_dimension("x_matrix", n)?;
    Ok(SymbolicMatrix::from_fn(n as usize, |r, c| {
        if r == c {
            Polynomial::zero()
        } else {
            let (i, j) = if r < c { (r, c) } else { (c, r) };
            Polynomial::variable(VarId::dist(i as u32 + 1, j as u32 + 1))
        }
    }))
}

/// The general antisymmetric matrix of order `n`: `x_matrix` with the lower
/// triangle negated.
pub fn a_matrix(n: u32) -> Result<SymbolicMatrix, CmError> {
    require_dimension("a_matrix", n)?;
    Ok(SymbolicMatrix::from_fn(n as usize, |r, c| {
        if r == c {
            Polynomial::zero()
        } else {
            let v = Polynomial::variable(VarId::dist(
                r.min(c) as u32 + 1,
                r.max(c) as u32 + 1,
            ));
            if r < c {
                v
            } else {
                -v
            }
        }
    }))
}
