//! The geometric predicates against their independent oracles: the Gram
//! construction, the symbolic determinant route, scaling and relabeling
//! laws, and the tower recurrence.

use std::collections::BTreeMap;

use cmdet::cm::CmCache;
use cmdet::geometry::{
    circumradius_squared, delta_value, gamma_value, gram_oracle, is_cospherical, is_degenerate,
    is_realizable, isosceles_volume_squared, isosceles_volume_squared_audited,
    lambda_value_by_recurrence, realizable_sign_condition, volume_squared, DistanceMatrix,
};
use cmdet::{Rational, VarId};
use num_bigint::BigInt;
use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Random distances in quarter steps over [1/4, 4]; returns the distances
/// alongside the matrix so the symbolic route can reuse them.
fn random_instance<R: Rng>(rng: &mut R, points: usize) -> (Vec<Rational>, DistanceMatrix) {
    let d: Vec<Rational> = (0..points * (points - 1) / 2)
        .map(|_| q(rng.gen_range(1..=16), 4))
        .collect();
    let dm = DistanceMatrix::from_distances(points, d.clone()).unwrap();
    (d, dm)
}

#[test]
fn gram_oracle_agreement_on_random_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut realizable_seen = 0;
    let mut unrealizable_seen = 0;
    for round in 0..60 {
        let points = rng.gen_range(3..=6);
        let (_, dm) = random_instance(&mut rng, points);
        let gram = gram_oracle(&dm).unwrap();
        let realizable = is_realizable(&dm).unwrap().value;
        assert_eq!(realizable, gram.realizable, "round {round}: {dm:?}");
        // the determinant identity behind the volume formula holds whether
        // or not the instance embeds
        assert_eq!(
            volume_squared(&dm).unwrap().value,
            gram.volume_squared,
            "round {round}"
        );
        if realizable {
            realizable_seen += 1;
        } else {
            unrealizable_seen += 1;
        }
    }
    // the generator must exercise both outcomes for the test to mean anything
    assert!(realizable_seen > 0 && unrealizable_seen > 0);
}

#[test]
fn numeric_route_matches_symbolic_evaluation() {
    let cache = CmCache::new();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 2u32..=4 {
        let (d, dm) = random_instance(&mut rng, n as usize + 1);
        let mut point = BTreeMap::new();
        let mut idx = 0;
        for i in 0..=n {
            for j in i + 1..=n {
                point.insert(VarId::dist(i, j), d[idx].clone());
                idx += 1;
            }
        }
        let symbolic_gamma = cache.gamma(n).unwrap().evaluate(&point).unwrap();
        assert_eq!(gamma_value(&dm).unwrap(), symbolic_gamma, "gamma n={n}");
        let symbolic_delta = cache.delta(n).unwrap().evaluate(&point).unwrap();
        assert_eq!(delta_value(&dm).unwrap(), symbolic_delta, "delta n={n}");
    }
}

#[test]
fn scaling_law() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..10 {
        let points = rng.gen_range(3..=5);
        let n = points - 1;
        let (_, dm) = random_instance(&mut rng, points);
        for s in [q(1, 2), rat(3), q(7, 5)] {
            let scaled = dm.scale(&s).unwrap();
            let mut s2n = Rational::one();
            for _ in 0..2 * n {
                s2n *= &s;
            }
            assert_eq!(
                volume_squared(&scaled).unwrap().value,
                volume_squared(&dm).unwrap().value * &s2n
            );
            if !is_degenerate(&dm).unwrap().value {
                assert_eq!(
                    circumradius_squared(&scaled).unwrap().value,
                    circumradius_squared(&dm).unwrap().value * (&s * &s)
                );
            }
        }
    }
}

#[test]
fn predicates_are_label_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..15 {
        let points = rng.gen_range(3..=6);
        let (_, dm) = random_instance(&mut rng, points);
        let mut perm: Vec<usize> = (0..points).collect();
        for i in (1..points).rev() {
            perm.swap(i, rng.gen_range(0..=i));
        }
        let permuted = dm.permute(&perm);
        assert_eq!(
            volume_squared(&permuted).unwrap().value,
            volume_squared(&dm).unwrap().value
        );
        assert_eq!(
            is_realizable(&permuted).unwrap().value,
            is_realizable(&dm).unwrap().value
        );
        assert_eq!(
            is_degenerate(&permuted).unwrap().value,
            is_degenerate(&dm).unwrap().value
        );
        assert_eq!(
            is_cospherical(&permuted).unwrap().value,
            is_cospherical(&dm).unwrap().value
        );
        if !is_degenerate(&dm).unwrap().value {
            assert_eq!(
                circumradius_squared(&permuted).unwrap().value,
                circumradius_squared(&dm).unwrap().value
            );
        }
    }
}

#[test]
fn circumradius_dominates_longest_edge() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut checked = 0;
    for _ in 0..80 {
        let points = rng.gen_range(3..=5);
        let (_, dm) = random_instance(&mut rng, points);
        if !is_realizable(&dm).unwrap().value {
            continue;
        }
        let rho2 = circumradius_squared(&dm).unwrap().value;
        let max_sq = dm
            .squared_entries()
            .max()
            .expect("at least one entry")
            .clone();
        // the longest edge is a chord of the circumsphere: rho^2 >= d^2/4
        assert!(&rho2 * rat(4) >= max_sq, "violated for {dm:?}");
        checked += 1;
    }
    assert!(checked > 5, "too few realizable instances to be meaningful");
}

/// The top-level sign condition alone admits false positives; the chain
/// predicate must reject them in agreement with the Gram oracle. The seeded
/// walk below reliably finds such an instance (an indefinite Gram form with
/// positive determinant), keeping the gap between the two tests on record.
#[test]
fn single_sign_condition_is_not_sufficient() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for _ in 0..200 {
        let points = rng.gen_range(3..=6);
        let (_, dm) = random_instance(&mut rng, points);
        let sign_only = realizable_sign_condition(&dm).unwrap().value;
        let gram = gram_oracle(&dm).unwrap().realizable;
        assert_eq!(is_realizable(&dm).unwrap().value, gram);
        if sign_only && !gram {
            return; // found the documented discrepancy
        }
        assert_eq!(sign_only, gram, "sign-only test can never be stricter");
    }
    panic!("expected the seeded walk to exhibit a sign-only false positive");
}

#[test]
fn tower_recurrence_matches_direct_evaluation() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let base_points = rng.gen_range(2..=4);
        let (_, base) = random_instance(&mut rng, base_points);
        let taus: Vec<Rational> = (0..rng.gen_range(1..=3))
            .map(|_| q(rng.gen_range(1..=12), 2))
            .collect();
        let audited = isosceles_volume_squared_audited(&base, &taus).unwrap();
        assert_eq!(
            audited.certificate,
            lambda_value_by_recurrence(&base, &taus).unwrap()
        );
    }
}

#[test]
fn tall_tower_volume_approaches_prism_law() {
    // over a unit equilateral base, vol_n^2 * n^2 / tau^2 tends to the
    // squared base area; at tau = 10^6 the relative gap is far below 1e-5
    let base = DistanceMatrix::from_distances(3, vec![rat(1); 3]).unwrap();
    let tau = rat(1_000_000);
    let tower = isosceles_volume_squared(&base, std::slice::from_ref(&tau))
        .unwrap()
        .value;
    let scaled = tower * rat(9) / (&tau * &tau);
    let base_area_sq = volume_squared(&base).unwrap().value;
    let relative_gap = ((&scaled - &base_area_sq) / &base_area_sq).abs();
    assert!(relative_gap <= q(1, 100_000), "gap {relative_gap}");
}

#[test]
fn landmark_values() {
    // the equilateral triangle as a tower over a segment
    let segment = DistanceMatrix::from_distances(2, vec![rat(1)]).unwrap();
    let triangle = isosceles_volume_squared(&segment, &[rat(1)]).unwrap();
    assert_eq!(triangle.value, q(3, 16));
    // the regular 3-simplex as a tower over that triangle
    let equilateral = DistanceMatrix::from_distances(3, vec![rat(1); 3]).unwrap();
    assert_eq!(
        isosceles_volume_squared(&equilateral, &[rat(1)]).unwrap().value,
        q(1, 72)
    );
}
