//! Cross-module checks through the public API only.

use levelforge::arith::{teichmuller, PadicRing, Ring};
use levelforge::ext3::{full_rank_count, g3_candidate_rank, gl_elements, partial_level_ideal};
use levelforge::km::{km_vs_primitive, mu_is_cyclotomic};
use levelforge::level::{expected_rank, gl2_order, truncated_level_rank, verify_flatness, Flavor};

#[test]
fn group_orders_agree() {
    for p in [2u64, 3, 5] {
        assert_eq!(gl2_order(p), expected_rank(p));
        assert_eq!(gl_elements(p, 2).len(), expected_rank(p));
    }
    assert_eq!(gl2_order(4), 96);
    assert_eq!(full_rank_count(2, 3, 3), gl_elements(2, 3).len());
}

#[test]
fn flat_fibers_match_group_order() {
    let r = verify_flatness(2, 4).unwrap();
    assert!(r.pass);
    // (0,0), three (s,0) and three (0,t) over F_4
    assert_eq!(r.fibers.len(), 7);
    assert!(r.fibers.iter().all(|f| f.rank == 6 && f.field == "F_4"));
}

#[test]
fn truncated_ranks_are_group_orders() {
    for flavor in [Flavor::Multiplicative, Flavor::Constant] {
        assert_eq!(truncated_level_rank(2, 2, flavor).unwrap(), gl2_order(4));
        assert_eq!(truncated_level_rank(3, 1, flavor).unwrap(), gl2_order(3));
    }
}

#[test]
fn teichmuller_lifts_are_roots_of_unity() {
    for (p, n) in [(3u64, 3u32), (5, 2), (7, 2)] {
        let ring = PadicRing::new(p, n).unwrap();
        for j in 1..p {
            let x = teichmuller(j, p, n).unwrap();
            assert_eq!(ring.pow(&x, p - 1), ring.one());
            assert_eq!(x % p, j);
        }
    }
}

#[test]
fn partial_levels_and_km() {
    for p in [2u64, 3] {
        let r = partial_level_ideal(p).unwrap();
        assert_eq!(r.rank, full_rank_count(p, 2, 3));
    }
    let g3 = g3_candidate_rank(2, true).unwrap();
    assert!(g3.rank >= g3.gl3_order);
    for p in [2u64, 3, 5, 7] {
        assert_eq!(mu_is_cyclotomic(p).unwrap(), (true, p as usize - 1));
    }
    let c = km_vs_primitive(2).unwrap();
    assert!(c.level_flat() && c.km_deviates());
}
