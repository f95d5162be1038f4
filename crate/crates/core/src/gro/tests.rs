use proptest::prelude::*;

use super::linear::FiniteAlgebra;
use super::*;
use crate::arith::{PrimeField, Rationals};
use crate::poly::{MonomialOrder, PresentedRing};

fn fp(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn fmt_basis<R: Ring>(i: &Ideal<R>) -> Vec<String> {
    i.groebner().unwrap().iter().map(|g| i.ambient().format(g)).collect()
}

fn alpha2_sq() -> RingRef<PrimeField> {
    PresentedRing::build(fp(2), &["a", "b", "c", "d"], MonomialOrder::DegRevLex, &["a^2", "b^2", "c^2", "d^2"]).unwrap()
}

#[test]
fn groebner_hand_example() {
    let r = PresentedRing::build(Rationals, &["x", "y"], MonomialOrder::Lex, &[]).unwrap();
    let i = Ideal::parse(r, &["x^2 - 1", "x*y - 1"]).unwrap();
    assert_eq!(fmt_basis(&i), ["y^2 - 1", "x - y"]);
}

#[test]
fn groebner_in_quotient() {
    let r = PresentedRing::build(fp(2), &["x"], MonomialOrder::DegRevLex, &["x^2"]).unwrap();
    let i = Ideal::parse(r, &["x"]).unwrap();
    assert_eq!(i.basis_in_ring().unwrap().len(), 1);
    assert_eq!(fmt_basis(&i), ["x"]);
}

#[test]
fn alpha2_level_ideal_has_six_standard_monomials() {
    let i = Ideal::parse(alpha2_sq(), &["a*b", "a*c", "b*d", "c*d", "a*d + b*c"]).unwrap();
    let sm: Vec<String> = i
        .standard_monomials()
        .unwrap()
        .iter()
        .map(|m| m.with_names(i.ambient().names()).to_string())
        .collect();
    assert_eq!(sm.len(), 6);
    for m in ["1", "a", "b", "c", "d"] {
        assert!(sm.contains(&m.to_string()), "{sm:?}");
    }
    // ad ≡ bc: exactly one of them survives
    assert_eq!(sm.iter().filter(|m| *m == "a*d" || *m == "b*c").count(), 1);
}

#[test]
fn sum_and_product() {
    let r = PresentedRing::build(Rationals, &["x", "y"], MonomialOrder::DegRevLex, &[]).unwrap();
    let x = Ideal::parse(r.clone(), &["x"]).unwrap();
    let y = Ideal::parse(r.clone(), &["y"]).unwrap();
    assert!(x.product(&y).unwrap().equal(&Ideal::parse(r.clone(), &["x*y"]).unwrap()).unwrap());
    assert!(x.sum(&y).unwrap().equal(&Ideal::parse(r.clone(), &["x", "y"]).unwrap()).unwrap());
    let a = Ideal::parse(r.clone(), &["x - 2"]).unwrap();
    let b = Ideal::parse(r.clone(), &["y - 2"]).unwrap();
    assert!(a.product(&b).unwrap().equal(&Ideal::parse(r, &["(x-2)*(y-2)"]).unwrap()).unwrap());
}

#[test]
fn intersections() {
    let r = PresentedRing::build(Rationals, &["x", "y"], MonomialOrder::DegRevLex, &[]).unwrap();
    let x = Ideal::parse(r.clone(), &["x"]).unwrap();
    let y = Ideal::parse(r.clone(), &["y"]).unwrap();
    assert!(x.intersect(&y).unwrap().equal(&Ideal::parse(r, &["x*y"]).unwrap()).unwrap());

    let r = PresentedRing::build(Rationals, &["x"], MonomialOrder::DegRevLex, &[]).unwrap();
    let a = Ideal::parse(r.clone(), &["x - 1"]).unwrap();
    let b = Ideal::parse(r.clone(), &["x + 1"]).unwrap();
    assert!(a.intersect(&b).unwrap().equal(&Ideal::parse(r, &["x^2 - 1"]).unwrap()).unwrap());

    let r = PresentedRing::build(fp(3), &["t", "x", "y"], MonomialOrder::DegRevLex, &["x^3 - t*x", "y^3 - t*y"]).unwrap();
    let a = Ideal::parse(r.clone(), &["x^2 - t"]).unwrap();
    let b = Ideal::parse(r.clone(), &["y^2 - t"]).unwrap();
    let meet = a.intersect(&b).unwrap();
    assert!(meet.equal(&Ideal::parse(r, &["(x^2 - t)*(y^2 - t)"]).unwrap()).unwrap());
}

#[test]
fn quotients() {
    let r = PresentedRing::build(Rationals, &["x"], MonomialOrder::DegRevLex, &[]).unwrap();
    let i = Ideal::parse(r.clone(), &["x^2"]).unwrap();
    let q = i.quotient(&r.parse("x").unwrap()).unwrap();
    assert!(q.equal(&Ideal::parse(r, &["x"]).unwrap()).unwrap());

    let r = PresentedRing::build(fp(3), &["x"], MonomialOrder::DegRevLex, &["x^3"]).unwrap();
    let q = Ideal::zero(r.clone()).quotient(&r.parse("x").unwrap()).unwrap();
    assert!(q.equal(&Ideal::parse(r, &["x^2"]).unwrap()).unwrap());

    let r = PresentedRing::build(fp(3), &["x"], MonomialOrder::DegRevLex, &["x^3 - x"]).unwrap();
    let q = Ideal::zero(r.clone()).quotient(&r.parse("x").unwrap()).unwrap();
    assert!(q.equal(&Ideal::parse(r, &["x^2 - 1"]).unwrap()).unwrap());
}

#[test]
fn annihilators() {
    let r = PresentedRing::build(fp(3), &["x"], MonomialOrder::DegRevLex, &["x^3 - x"]).unwrap();
    let ann = annihilator(&r, &Ideal::parse(r.clone(), &["x"]).unwrap()).unwrap();
    assert_eq!(fmt_basis(&ann), ["x^2 - 1"]);

    let r = PresentedRing::build(Rationals, &["y"], MonomialOrder::DegRevLex, &["y^3 - 1"]).unwrap();
    let ann = annihilator(&r, &Ideal::parse(r.clone(), &["y - 1"]).unwrap()).unwrap();
    assert_eq!(fmt_basis(&ann), ["y^2 + y + 1"]);

    // functions on Z/2 via idempotents: e0 + e1 = 1, e0*e1 = 0
    let r = PresentedRing::build(fp(2), &["e0", "e1"], MonomialOrder::DegRevLex, &["e0 + e1 - 1", "e0*e1"]).unwrap();
    let ann = annihilator(&r, &Ideal::parse(r.clone(), &["e1"]).unwrap()).unwrap();
    assert!(ann.equal(&Ideal::parse(r, &["e0"]).unwrap()).unwrap());
}

#[test]
fn quotient_dimensions() {
    let r = PresentedRing::build(Rationals, &["y"], MonomialOrder::DegRevLex, &["y^3 - 1"]).unwrap();
    assert_eq!(Ideal::zero(r).quotient_dimension().unwrap(), 3);
    let r = PresentedRing::build(fp(3), &["x"], MonomialOrder::DegRevLex, &["x^3"]).unwrap();
    assert_eq!(Ideal::parse(r, &["x^2"]).unwrap().quotient_dimension().unwrap(), 2);
    let r = PresentedRing::build(Rationals, &["x", "y"], MonomialOrder::DegRevLex, &[]).unwrap();
    assert_eq!(Ideal::parse(r, &["x"]).unwrap().quotient_dimension(), Err(GroError::NotZeroDimensional));
}

#[test]
fn equality() {
    let r = PresentedRing::build(Rationals, &["x", "y"], MonomialOrder::DegRevLex, &[]).unwrap();
    assert!(Ideal::parse(r.clone(), &["x", "y"]).unwrap().equal(&Ideal::parse(r.clone(), &["y", "x"]).unwrap()).unwrap());
    assert!(!Ideal::parse(r.clone(), &["x"]).unwrap().equal(&Ideal::parse(r, &["x^2"]).unwrap()).unwrap());
}

#[test]
fn budget_is_enforced() {
    let r = PresentedRing::build(Rationals, &["x", "y", "z"], MonomialOrder::Lex, &[]).unwrap();
    let i = Ideal::parse(r, &["x^3 - y*z", "y^3 - x*z", "z^3 - x*y"]).unwrap().with_budget(Budget::default().with_pairs(1));
    assert!(matches!(i.groebner(), Err(GroError::BudgetExceeded { .. })));
}

#[test]
fn linear_engine_agrees_on_alpha2() {
    let r = alpha2_sq();
    let alg = FiniteAlgebra::new(r.clone()).unwrap();
    assert_eq!(alg.dim(), 16);
    let gens = ["a*b", "a*c", "b*d", "c*d", "a*d + b*c"];
    let i = Ideal::parse(r, &gens).unwrap();
    let s = alg.from_ideal(&i);
    assert_eq!(alg.quotient_dimension(&s), 6);
}

#[test]
fn linear_intersection_matches_elimination() {
    let r = PresentedRing::build(fp(3), &["x", "y"], MonomialOrder::DegRevLex, &["x^3 - x", "y^3 - y"]).unwrap();
    let a = Ideal::parse(r.clone(), &["x^2 - 1"]).unwrap();
    let b = Ideal::parse(r.clone(), &["y^2 - 1", "x*y"]).unwrap();
    let alg = FiniteAlgebra::new(r).unwrap();
    let meet = a.intersect(&b).unwrap();
    let lin = alg.from_ideal(&a).intersect(&alg.from_ideal(&b));
    assert!(lin.equal(&alg.from_ideal(&meet)));
    assert_eq!(alg.quotient_dimension(&lin), meet.quotient_dimension().unwrap());
}

/// Small random ideals in F_3[x,y,z]/(x^3, y^3, z^3 - z).
fn small_ring() -> RingRef<PrimeField> {
    PresentedRing::build(fp(3), &["x", "y", "z"], MonomialOrder::DegRevLex, &["x^3", "y^3", "z^3 - z"]).unwrap()
}

fn arb_gen() -> impl Strategy<Value = Vec<([u32; 3], u32)>> {
    prop::collection::vec(([0u32..3, 0u32..3, 0u32..3], 1u32..3), 1..4)
}

fn build(r: &RingRef<PrimeField>, spec: &[([u32; 3], u32)]) -> Poly<u32> {
    r.nf(&r.poly().from_terms(spec.iter().map(|(e, c)| (Monomial::from_exponents(e), *c))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn reduced_basis_is_order_of_generators_independent(gs in prop::collection::vec(arb_gen(), 1..4), scale in 1u32..3) {
        let r = small_ring();
        let polys: Vec<_> = gs.iter().map(|g| build(&r, g)).collect();
        let i = Ideal::new(r.clone(), polys.clone());
        let mut rev = polys.clone();
        rev.reverse();
        // invertible recombination: g0 -> g0 + scale*g_last
        if rev.len() > 1 {
            let last = rev[rev.len() - 1].clone();
            rev[0] = r.add(&rev[0], &r.scale(&last, &scale));
        }
        let j = Ideal::new(r.clone(), rev);
        prop_assert_eq!(i.groebner().unwrap(), j.groebner().unwrap());
        for g in &polys {
            prop_assert!(i.contains(g).unwrap());
        }
    }

    #[test]
    fn dimension_is_order_independent(gs in prop::collection::vec(arb_gen(), 1..4)) {
        let r = small_ring();
        let polys: Vec<_> = gs.iter().map(|g| build(&r, g)).collect();
        let d1 = Ideal::new(r.clone(), polys.clone()).quotient_dimension().unwrap();
        let lex = PresentedRing::build(fp(3), &["x", "y", "z"], MonomialOrder::Lex, &["x^3", "y^3", "z^3 - z"]).unwrap();
        let moved: Vec<_> = polys.iter().map(|p| lex.poly().adopt(p.clone())).collect();
        let d2 = Ideal::new(lex, moved).quotient_dimension().unwrap();
        prop_assert_eq!(d1, d2);
        let alg = FiniteAlgebra::new(r.clone()).unwrap();
        prop_assert_eq!(alg.quotient_dimension(&alg.ideal(&polys)), d1);
    }

    #[test]
    fn intersection_bounds(a in arb_gen(), b in arb_gen()) {
        let r = small_ring();
        let i = Ideal::new(r.clone(), [build(&r, &a)]);
        let j = Ideal::new(r.clone(), [build(&r, &b)]);
        let meet = i.intersect(&j).unwrap();
        prop_assert!(i.contains_ideal(&meet).unwrap());
        prop_assert!(j.contains_ideal(&meet).unwrap());
        prop_assert!(meet.contains_ideal(&i.product(&j).unwrap()).unwrap());
    }
}
