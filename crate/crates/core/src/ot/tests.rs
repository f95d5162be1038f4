use proptest::prelude::*;

use super::*;
use crate::arith::{ExtField, FiniteField, PrimeField};
use crate::poly::MonomialOrder;

fn fp(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn symbolic(p: u64) -> Arc<OtGroup<PrimeField>> {
    OtGroup::new(OtParams::char_p(fp(p), Chart::Symbolic).unwrap()).unwrap()
}

fn fiber(p: u64, s: i64, t: i64) -> Arc<OtGroup<PrimeField>> {
    let k = fp(p);
    OtGroup::new(OtParams::char_p(k, Chart::Fiber { s: k.from_i64(s), t: k.from_i64(t) }).unwrap()).unwrap()
}

#[test]
fn p2_over_q_is_mu2() {
    let q = Rationals;
    let g = OtGroup::new(OtParams::p2_exact(Chart::Fiber { s: q.from_i64(1), t: q.from_i64(2) }).unwrap()).unwrap();
    let m2 = crate::hopf::mu(q, 2).unwrap();
    // y = 1 - x identifies the two Hopf algebras
    let to_mu = RingMap::parse(g.ring().clone(), m2.ring().clone(), &["1 - y"]).unwrap();
    let from_mu = RingMap::parse(m2.ring().clone(), g.ring().clone(), &["1 - x"]).unwrap();
    assert!(to_mu.then(&from_mu).unwrap().same_as(&RingMap::parse(g.ring().clone(), g.ring().clone(), &["x"]).unwrap()));
    let tg = &g.hopf().tensor().ring;
    let tm = &m2.tensor().ring;
    let tt = RingMap::parse(tg.clone(), tm.clone(), &["1 - y_1", "1 - y_2"]).unwrap();
    let x = g.ring().var(0);
    assert!(tm.equal(&tt.apply(&g.hopf().comultiply(&x)), &m2.comultiply(&to_mu.apply(&x))));
    // points x ∈ {0, 2}
    let pt = PresentedRing::build(q, &[] as &[&str], MonomialOrder::DegRevLex, &[]).unwrap();
    let pr = PointRing::new(g.clone(), pt.clone(), vec![]).unwrap();
    assert!(pr.is_point(&pt.from_int(2)) && !pr.is_point(&pt.from_int(1)));
    assert!(pt.is_zero(&pr.dotplus(&pt.from_int(2), &pt.from_int(2)).unwrap()));
    assert!(OtParams::p2_exact(Chart::Fiber { s: q.from_i64(1), t: q.from_i64(1) }).is_err());
    // symbolic chart over Q with st = 2
    OtGroup::new(OtParams::p2_exact(Chart::Symbolic).unwrap()).unwrap();
}

#[test]
fn char_p_groups() {
    for p in [2, 3, 5] {
        symbolic(p);
    }
    // s = t = 0 over F_2 is α_2
    let a2 = fiber(2, 0, 0);
    assert_eq!(a2.params().fiber_point(), Some((Some(&0), &0)));
    let x = a2.ring().var(0);
    assert_eq!(a2.hopf().tensor().ring.format(&a2.hopf().comultiply(&x)), "x_1 + x_2");
    // the fiber s*t = 1 is not on the characteristic-p chart
    assert!(OtParams::char_p(fp(3), Chart::Fiber { s: 1, t: 1 }).is_err());
    // composite characteristic is rejected
    assert!(OtParams::char_p(PadicRing::new(3, 2).unwrap(), Chart::Symbolic).is_err());
}

#[test]
fn dotplus_closed_forms() {
    let g = fiber(2, 1, 0);
    let pr = g.product_ring(&["a", "b"]).unwrap();
    let (a, b) = (pr.ring().var(0), pr.ring().var(1));
    assert_eq!(pr.ring().format(&pr.dotplus(&a, &b).unwrap()), "a*b + a + b");

    let g = symbolic(3);
    let pr = g.product_ring(&["a", "b"]).unwrap();
    let r = pr.ring();
    let (a, b) = (r.var(0), r.var(1));
    let expected = r.parse("a + b + 2*s*(a*b^2 + a^2*b)").unwrap();
    assert!(r.equal(&pr.dotplus(&a, &b).unwrap(), &expected));
    assert!(matches!(pr.dotplus(&r.one(), &a), Err(OtError::PointCondition(_))));

    // s = 0: plain addition
    let g = fiber(5, 0, 1);
    let pr = g.product_ring(&["a", "b"]).unwrap();
    let r = pr.ring();
    assert!(r.equal(&pr.dotplus(&r.var(0), &r.var(1)).unwrap(), &r.parse("a + b").unwrap()));
}

#[test]
fn universal_ring_shapes() {
    let (pr, m) = symbolic(2).universal_hom_ring().unwrap();
    assert_eq!(pr.ring().names(), &["a", "b", "c", "d", "s", "t"]);
    assert_eq!(pr.ring().format(&m[3]), "d");
    let (pr, _) = fiber(3, 0, 0).universal_hom_ring().unwrap();
    assert_eq!(pr.ring().dimension(), Some(81));
    let (pr, m) = fiber(2, 1, 0).universal_hom_ring().unwrap();
    assert_eq!(pr.ring().dimension(), Some(16));
    assert_eq!(pr.ring().format(&pr.dotplus(&m[0], &m[1]).unwrap()), "a*b + a + b");
}

#[test]
fn scalar_identity() {
    assert!(verify_scalar_identity(&symbolic(3), 2).unwrap());
    assert!(verify_scalar_identity(&symbolic(2), 1).unwrap());
    assert!(verify_scalar_identity(&fiber(5, 0, 1), 4).unwrap());
    for p in [2u64, 3, 5] {
        let g = symbolic(p);
        for m in 0..=p + 1 {
            assert!(verify_scalar_identity(&g, m).unwrap(), "p = {p}, m = {m}");
        }
    }
}

#[test]
fn p_torsion() {
    for p in [2u64, 3, 5] {
        let g = symbolic(p);
        let pr = g.product_ring(&["a"]).unwrap();
        let a = pr.ring().var(0);
        assert!(pr.ring().is_zero(&pr.scale(p, &a).unwrap()), "p = {p}");
        assert!(pr.ring().is_zero(&pr.as_group_point(&a).unwrap().scale(p).unwrap().coords()[0]));
    }
}

#[test]
fn dotplus_matches_point_add_symbolically() {
    for p in [2u64, 3, 5] {
        let g = symbolic(p);
        let pr = g.product_ring(&["a", "b"]).unwrap();
        let (a, b) = (pr.ring().var(0), pr.ring().var(1));
        let generic = pr.as_group_point(&a).unwrap().add(&pr.as_group_point(&b).unwrap()).unwrap();
        assert!(pr.ring().equal(&generic.coords()[0], &pr.dotplus(&a, &b).unwrap()), "p = {p}");
        assert!(pr.ring().equal(&pr.dotplus(&a, &b).unwrap(), &pr.dotplus(&b, &a).unwrap()));
    }
}

#[test]
fn dotplus_matches_point_add_on_fibers() {
    for p in [2u64, 3, 5] {
        let k = fp(p);
        for (s, t) in [(0, 0), (1, 0), (0, 1), (2 % p as i64, 0), (0, 2 % p as i64)] {
            let g = fiber(p, s, t);
            let pt = PresentedRing::build(k, &[] as &[&str], MonomialOrder::DegRevLex, &[]).unwrap();
            let pr = PointRing::new(g.clone(), pt.clone(), vec![]).unwrap();
            let points: Vec<_> = k.elements().into_iter().map(|e| pt.constant(e)).filter(|f| pr.is_point(f)).collect();
            for f in &points {
                for h in &points {
                    let closed = pr.dotplus(f, h).unwrap();
                    let generic = pr.as_group_point(f).unwrap().add(&pr.as_group_point(h).unwrap()).unwrap();
                    assert!(pt.equal(&closed, &generic.coords()[0]));
                    assert!(pr.is_point(&closed));
                }
            }
        }
    }
}

#[test]
fn dotplus_is_associative() {
    for p in [2u64, 3] {
        let g = symbolic(p);
        let pr = g.product_ring(&["a", "b", "c"]).unwrap();
        let r = pr.ring();
        let (a, b, c) = (r.var(0), r.var(1), r.var(2));
        let l = pr.dotplus(&pr.dotplus(&a, &b).unwrap(), &c).unwrap();
        let rr = pr.dotplus(&a, &pr.dotplus(&b, &c).unwrap()).unwrap();
        assert!(r.equal(&l, &rr), "p = {p}");
    }
}

#[test]
fn group_constants() {
    let gc = solve_group_constants(2, 3).unwrap();
    assert_eq!(gc.c, vec![6]);
    // the full system mod 9 forces c_1 = c_2 = 3
    let gc = solve_group_constants(3, 2).unwrap();
    assert_eq!(gc.c, vec![3, 3]);
    for p in [2u64, 3, 5, 7] {
        for n in 1..=6 {
            let gc = solve_group_constants(p, n).unwrap();
            for (i, c) in gc.c.iter().enumerate() {
                assert_eq!(*c, gc.c[gc.c.len() - 1 - i]);
                assert!(congruence_holds(p, n, i as u64 + 1, *c));
            }
        }
    }
}

#[test]
fn constant_iso_examples() {
    let iso = constant_iso(2, 3).unwrap();
    let b = iso.constant.ring();
    assert_eq!(b.format(&iso.forward.images()[0]), "e1");
    let a = iso.group.ring();
    assert_eq!(a.format(&iso.backward.images()[0]), "x");
    // e_0 = 1 - e_1 ↦ -(x - 1)
    let e0 = b.sub(&b.one(), &b.var(0));
    assert!(a.equal(&iso.backward.apply(&e0), &a.parse("-(x - 1)").unwrap()));
    for p in [3, 5] {
        for n in 1..=4 {
            constant_iso(p, n).unwrap();
        }
    }
}

#[test]
fn lambda_scaling_over_prime_and_quadratic_fields() {
    for p in [2u64, 3, 5] {
        let g = symbolic(p);
        for l in 1..p {
            g.lambda_scaling(&(l as u32)).unwrap();
        }
        let k = ExtField::new(p, 2).unwrap();
        let g = OtGroup::new(OtParams::char_p(k.clone(), Chart::Symbolic).unwrap()).unwrap();
        for l in k.elements().into_iter().filter(|e| !k.is_zero(e)) {
            g.lambda_scaling(&l).unwrap();
        }
        assert!(g.lambda_scaling(&k.zero()).is_err());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn random_fiber_points_commute_and_associate(p_idx in 0usize..3, s in 0i64..5, seed in any::<u64>()) {
        let p = [2u64, 3, 5][p_idx];
        let g = fiber(p, s % p as i64, 0);
        let pr = g.product_ring(&["a", "b", "c"]).unwrap();
        let r = pr.ring();
        // random points: scalar multiples of the universal points
        let pick = |shift: u32, v: usize| pr.scale((seed >> shift) % p, &r.var(v)).unwrap();
        let (x, y, z) = (pick(0, 0), pick(8, 1), pick(16, 2));
        prop_assert!(r.equal(&pr.dotplus(&x, &y).unwrap(), &pr.dotplus(&y, &x).unwrap()));
        let l = pr.dotplus(&pr.dotplus(&x, &y).unwrap(), &z).unwrap();
        let rr = pr.dotplus(&x, &pr.dotplus(&y, &z).unwrap()).unwrap();
        prop_assert!(r.equal(&l, &rr));
    }
}
