//! Library results against the reference implementations in `common`.

mod common;

use common::*;
use intiles::polyring::{cyclotomic, cyclotomic_divides_mask, euler_phi};
use intiles::search::{find_complement, minimal_tiling_period, SearchConfig};
use intiles::tilingset::is_tiling;
use num_bigint::BigInt;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn cyclotomic_matches_mobius_product() {
    for n in 1..=300u64 {
        let expected: Vec<BigInt> = mobius_cyclotomic(n).into_iter().map(BigInt::from).collect();
        assert_eq!(cyclotomic(n).coeffs(), &expected[..], "Φ_{n}");
        assert_eq!(expected.len() as u64 - 1, euler_phi(n));
    }
}

#[test]
fn divisibility_matches_root_evaluation() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..400 {
        let len = rng.gen_range(1..=8);
        let mut v: Vec<u64> = sample(&mut rng, 40, len).into_iter().map(|x| x as u64).collect();
        v.sort_unstable();
        for s in 1..=48u64 {
            assert_eq!(
                cyclotomic_divides_mask(s, &v),
                numeric_root_divides(s, &v),
                "s = {s}, exponents {v:?}"
            );
        }
    }
}

fn check_complement(a: &[u64], m: u64) {
    let all = all_complements(a, m);
    let set = intiles::IntegerSet::new(a.to_vec()).unwrap();
    match find_complement(&set, m) {
        Some(b) => {
            assert!(
                all.iter().any(|c| c == b.elements()),
                "A = {a:?}, M = {m}: {b} not in the enumeration"
            );
            assert!(is_tiling(&set, &b, m).unwrap().tiles);
        }
        None => assert!(all.is_empty(), "A = {a:?}, M = {m}: missed {:?}", all[0]),
    }
}

#[test]
fn complements_exhaustive_small() {
    for m in 1..=12u64 {
        for mask in 0u64..1 << (m - 1) {
            let a = set_from_mask(mask);
            if a.len() <= 4 && m % a.len() as u64 == 0 {
                check_complement(a.elements(), m);
            }
        }
    }
}

#[test]
fn complements_sampled_up_to_24() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for m in 13..=24u64 {
        for k in (2..=4u64).filter(|k| m % k == 0) {
            for _ in 0..25 {
                let mut a: Vec<u64> = std::iter::once(0)
                    .chain(
                        sample(&mut rng, m as usize - 1, k as usize - 1)
                            .into_iter()
                            .map(|x| x as u64 + 1),
                    )
                    .collect();
                a.sort_unstable();
                check_complement(&a, m);
            }
        }
    }
}

#[test]
fn min_period_matches_scan_on_random_sets() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let cfg = SearchConfig {
        parallelism: 1,
        ..Default::default()
    };
    for _ in 0..300 {
        let d = rng.gen_range(1..=13u64);
        let mask: u64 = rng.gen_range(0..1u64 << d) | 1 << (d - 1);
        let a = set_from_mask(mask);
        let got = minimal_tiling_period(&a, &cfg);
        assert_eq!(got.period(), scan_min_period(&a), "A = {a}");
        if let Some(b) = got.complement() {
            assert!(naive_tiles(a.elements(), b.elements(), got.period().unwrap()));
        }
    }
}

#[test]
fn scan_oracle_sanity() {
    assert_eq!(scan_min_period(&set(&[0])), Some(1));
    assert_eq!(scan_min_period(&set(&[0, 2])), Some(4));
    assert_eq!(scan_min_period(&set(&[0, 1, 3])), None);
    assert_eq!(scan_min_period(&set(&[0, 1, 4, 5])), Some(8));
    assert_eq!(mobius(30), -1);
    assert_eq!(mobius(12), 0);
    assert_eq!(mobius_cyclotomic(6), vec![1, -1, 1]);
}
