//! Fraction-free numeric determinants.
//!
//! Rational matrices are cleared to integers row by row (each row times the
//! lcm of its denominators), eliminated fraction-free over `BigInt`, and the
//! accumulated scale is divided back out at the end. All divisions inside
//! the elimination are exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::rational::Rational;

/// Exact integer determinant by fraction-free elimination with row pivoting.
pub(crate) fn det_bigint(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let m = a.len();
    if m == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..m - 1 {
        if a[k][k].is_zero() {
            let Some(r) = (k + 1..m).find(|&r| !a[r][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, r);
            negate = !negate;
        }
        for i in k + 1..m {
            for j in k + 1..m {
                let numer = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                a[i][j] = exact_div(numer, &prev);
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let det = std::mem::take(&mut a[m - 1][m - 1]);
    if negate {
        -det
    } else {
        det
    }
}

fn exact_div(numer: BigInt, denom: &BigInt) -> BigInt {
    let (q, r) = numer.div_rem(denom);
    debug_assert!(r.is_zero(), "fraction-free update must divide exactly");
    q
}

/// Leading principal minors of orders `1..=m`, computed as the pivots of a
/// swap-free fraction-free elimination.
///
/// A zero minor stops the elimination: the returned vector then ends with
/// that zero and is shorter than `m`, unless the zero was the full-order
/// minor itself.
pub(crate) fn leading_principal_minors(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let m = a.len();
    let mut minors = Vec::with_capacity(m);
    let mut prev = BigInt::one();
    for k in 0..m {
        if a[k][k].is_zero() {
            minors.push(BigInt::zero());
            return minors;
        }
        minors.push(a[k][k].clone());
        if k + 1 == m {
            break;
        }
        for i in k + 1..m {
            for j in k + 1..m {
                let numer = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                a[i][j] = exact_div(numer, &prev);
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    minors
}

/// Multiplies each row by the lcm of its denominators. Returns the integer
/// matrix and the product of all row factors (the determinant scale).
pub(crate) fn clear_rows(rows: &[Vec<Rational>]) -> (Vec<Vec<BigInt>>, BigInt) {
    let mut scale = BigInt::one();
    let cleared = rows
        .iter()
        .map(|row| {
            let lcm = row
                .iter()
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            scale *= &lcm;
            row.iter()
                .map(|x| x.numer() * (&lcm / x.denom()))
                .collect()
        })
        .collect();
    (cleared, scale)
}

/// Exact determinant of a rational matrix.
pub(crate) fn det_rational(rows: &[Vec<Rational>]) -> Rational {
    let (cleared, scale) = clear_rows(rows);
    Rational::new(det_bigint(cleared), scale)
}
