//! Shared helpers for the integration tests: an independent determinant
//! oracle (bare Leibniz expansion over all permutations, no elimination and
//! no memoization) and small matrix generators.

use cmdet::cm::SymbolicMatrix;
use cmdet::Polynomial;
use num_bigint::BigInt;
use rand::Rng;

/// Sum over all permutations of signed entry products. Exponential, an
/// oracle only; shares nothing with the production algorithms.
pub fn det_leibniz(m: &SymbolicMatrix) -> Polynomial {
    let order = m.order();
    let mut det = Polynomial::zero();
    for_each_permutation(order, &mut |perm, parity| {
        let mut product = Polynomial::one();
        for (row, &col) in perm.iter().enumerate() {
            if m.at(row, col).is_zero() {
                return;
            }
            product = &product * m.at(row, col);
        }
        if parity {
            det -= &product;
        } else {
            det += &product;
        }
    });
    det
}

/// Visits every permutation of `0..n` with its parity (`true` = odd).
pub fn for_each_permutation<F: FnMut(&[usize], bool)>(n: usize, f: &mut F) {
    let mut chosen = Vec::with_capacity(n);
    let mut used = vec![false; n];
    walk(n, &mut chosen, &mut used, false, f);
}

fn walk<F: FnMut(&[usize], bool)>(
    n: usize,
    chosen: &mut Vec<usize>,
    used: &mut [bool],
    parity: bool,
    f: &mut F,
) {
    if chosen.len() == n {
        f(chosen, parity);
        return;
    }
    for value in 0..n {
        if used[value] {
            continue;
        }
        // appending `value` adds one inversion per larger element already placed
        let added = chosen.iter().filter(|&&u| u > value).count();
        let next_parity = parity ^ (added % 2 == 1);
        used[value] = true;
        chosen.push(value);
        walk(n, chosen, used, next_parity, f);
        chosen.pop();
        used[value] = false;
    }
}

/// A dense matrix of small random integer constants.
pub fn random_int_matrix<R: Rng>(rng: &mut R, order: usize) -> SymbolicMatrix {
    let entries: Vec<i64> = (0..order * order).map(|_| rng.gen_range(-9..=9)).collect();
    SymbolicMatrix::from_fn(order, |r, c| {
        Polynomial::constant(BigInt::from(entries[r * order + c]))
    })
}
