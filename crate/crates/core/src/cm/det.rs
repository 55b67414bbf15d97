//! Two independent exact determinant algorithms over polynomial entries.
//!
//! `det_laplace` expands cofactors along rows, memoizing on the set of
//! columns that remain: rows are consumed top-down, so the remaining-column
//! bitmask determines the subproblem and the table holds at most `2^order`
//! entries. `det_bareiss` is fraction-free elimination; every division it
//! performs is exact in the polynomial ring. The two share no code, which is
//! what makes cross-checking them meaningful.

use std::collections::HashMap;

use crate::poly::Polynomial;

use super::matrix::SymbolicMatrix;

/// Exact determinant by memoized cofactor expansion.
pub fn det_laplace(m: &SymbolicMatrix) -> Polynomial {
    let order = m.order();
    assert!(order <= 31, "laplace expansion limited to order 31");
    let full: u32 = (1u32 << order) - 1;
    let mut memo: HashMap<u32, Polynomial> = HashMap::new();
    subdet(m, full, &mut memo)
}

fn subdet(m: &SymbolicMatrix, mask: u32, memo: &mut HashMap<u32, Polynomial>) -> Polynomial {
    if mask == 0 {
        return Polynomial::one();
    }
    if let Some(hit) = memo.get(&mask) {
        return hit.clone();
    }
    let order = m.order();
    let row = order - mask.count_ones() as usize;
    let mut acc = Polynomial::zero();
    let mut position = 0u32;
    for col in 0..order {
        if mask & (1 << col) == 0 {
            continue;
        }
        let entry = m.at(row, col);
        if !entry.is_zero() {
            let sub = subdet(m, mask & !(1 << col), memo);
            let cofactor = entry * &sub;
            if position.is_multiple_of(2) {
                acc += &cofactor;
            } else {
                acc -= &cofactor;
            }
        }
        position += 1;
    }
    memo.insert(mask, acc.clone());
    acc
}

/// Exact determinant by fraction-free (Bareiss) elimination.
///
/// Pivots are chosen as the first nonzero entry in column order; if every
/// candidate pivot in a column is zero the determinant is zero. The interior
/// update divides by the previous pivot, which is always exact here; a failed
/// division would be a bug, not an input condition.
pub fn det_bareiss(m: &SymbolicMatrix) -> Polynomial {
    let order = m.order();
    let mut a: Vec<Vec<Polynomial>> = (0..order)
        .map(|r| (0..order).map(|c| m.at(r, c).clone()).collect())
        .collect();
    let mut negate = false;
    let mut prev = Polynomial::one();
    for k in 0..order - 1 {
        if a[k][k].is_zero() {
            let Some(r) = (k + 1..order).find(|&r| !a[r][k].is_zero()) else {
                return Polynomial::zero();
            };
            a.swap(k, r);
            negate = !negate;
        }
        for i in k + 1..order {
            for j in k + 1..order {
                let numer = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = numer
                    .exact_divide(&prev)
                    .expect("fraction-free elimination divides exactly");
            }
            a[i][k] = Polynomial::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[order - 1][order - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}
