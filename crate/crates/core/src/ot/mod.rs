//! Oort–Tate group schemes of rank `p` on the `(s, t)` chart.
//!
//! Over a base with parameters `s, t` and `st = w_p`, the group is
//! `Spec B[x]/(x^p - t x)` with
//!
//! ```text
//! Δ(x) = x⊗1 + 1⊗x + (1/(1-p)) Σ_{i=1}^{p-1} s x^i ⊗ x^{p-i} / (w_i w_{p-i}).
//! ```
//!
//! Only the constants `k_i = 1/((1-p) w_i w_{p-i})` enter the group law, so a
//! chart is described by them: `w_i = i!` in characteristic `p`, `w = (1, 2)`
//! exactly for `p = 2` over `Q`, and for odd `p` over `Z/p^N` the products
//! `c_i = w_p k_i` solved from the Teichmüller identity
//! `χ(j+k) = χ(j) + χ(k) + Σ c_i χ(j)^i χ(k)^{p-i}`.

use std::sync::Arc;

use thiserror::Error;

use crate::arith::{teichmuller, ArithError, PadicRing, Rationals, Ring};
use crate::hopf::{constant_group, GroupPoint, HopfAlgebra, HopfError};
use crate::poly::{Poly, PolyError, PolyRing, PresentedRing, RingMap, RingRef};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OtError {
    #[error("`{0}` does not satisfy the point condition f^p = t*f")]
    PointCondition(String),
    #[error("chart is invalid: {0}")]
    BadChart(String),
    #[error("group-constant system mod {p}^{n} is inconsistent")]
    InconsistentSystem { p: u64, n: u32 },
    #[error("group-constant system mod {p}^{n} does not determine c_{index}")]
    Underdetermined { p: u64, n: u32, index: usize },
    #[error("verification failed on `{0}`")]
    VerificationFailed(String),
    #[error(transparent)]
    Hopf(#[from] HopfError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// Where the group lives: over the whole chart `st = w_p` with `s, t`
/// symbolic, or over a single point `(s, t)` of it.
#[derive(Debug, Clone, PartialEq)]
pub enum Chart<E> {
    Symbolic,
    Fiber { s: E, t: E },
}

/// How the `w`-constants are obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WMode {
    /// Characteristic `p`: `w_i = i!`, `w_p = 0`.
    CharP,
    /// `p = 2` over `Q`: `w_1 = 1`, `w_2 = 2`.
    P2Exact,
    /// Constants solved over `Z/p^N`; only the fiber `(s, t) = (w_p, 1)`.
    Solved(u32),
}

#[derive(Debug, Clone)]
enum Law<E> {
    /// `Δ`-coefficients are `k_i · s`.
    Symbolic { wp: E, k: Vec<E> },
    /// `Δ`-coefficients are constants.
    Fiber { s: Option<E>, t: E, law: Vec<E> },
}

#[derive(Debug, Clone)]
pub struct OtParams<R: Ring> {
    coeffs: R,
    p: u32,
    wmode: WMode,
    law: Law<R::Elem>,
}

fn factorial<R: Ring>(k: &R, n: u32) -> R::Elem {
    (1..=n as i64).fold(k.one(), |acc, i| k.mul(&acc, &k.from_i64(i)))
}

impl<R: Ring> OtParams<R> {
    /// Characteristic-`p` chart over a field (or ring) of characteristic `p`.
    pub fn char_p(coeffs: R, chart: Chart<R::Elem>) -> Result<Self, OtError> {
        let p = coeffs.characteristic();
        if !crate::arith::is_prime(p) {
            return Err(OtError::BadChart(format!("{} does not have prime characteristic", coeffs.name())));
        }
        let p = p as u32;
        let k: Vec<R::Elem> = (1..p)
            .map(|i| {
                let d = coeffs.mul(&factorial(&coeffs, i), &factorial(&coeffs, p - i));
                coeffs.inv(&d).expect("i!(p-i)! is a unit mod p")
            })
            .collect();
        let law = Self::specialise(&coeffs, chart, coeffs.zero(), k)?;
        Ok(Self { coeffs, p, wmode: WMode::CharP, law })
    }

    fn specialise(coeffs: &R, chart: Chart<R::Elem>, wp: R::Elem, k: Vec<R::Elem>) -> Result<Law<R::Elem>, OtError> {
        Ok(match chart {
            Chart::Symbolic => Law::Symbolic { wp, k },
            Chart::Fiber { s, t } => {
                if coeffs.mul(&s, &t) != wp {
                    return Err(OtError::BadChart(format!(
                        "s*t = {} but w_p = {}",
                        coeffs.format(&coeffs.mul(&s, &t)),
                        coeffs.format(&wp)
                    )));
                }
                let law = k.iter().map(|c| coeffs.mul(c, &s)).collect();
                Law::Fiber { s: Some(s), t, law }
            }
        })
    }

    pub fn coeffs(&self) -> &R {
        &self.coeffs
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn wmode(&self) -> WMode {
        self.wmode
    }

    pub fn is_symbolic(&self) -> bool {
        matches!(self.law, Law::Symbolic { .. })
    }

    /// `(s, t)` on a fiber; `s` is `None` when it is the unknown `w_p`.
    pub fn fiber_point(&self) -> Option<(Option<&R::Elem>, &R::Elem)> {
        match &self.law {
            Law::Symbolic { .. } => None,
            Law::Fiber { s, t, .. } => Some((s.as_ref(), t)),
        }
    }
}

impl OtParams<Rationals> {
    /// `p = 2` over `Q` with `w = (1, 2)`, so `Δ(x) = x⊗1 + 1⊗x - s x⊗x`.
    pub fn p2_exact(chart: Chart<<Rationals as Ring>::Elem>) -> Result<Self, OtError> {
        let q = Rationals;
        let law = Self::specialise(&q, chart, q.from_i64(2), vec![q.from_i64(-1)])?;
        Ok(Self { coeffs: q, p: 2, wmode: WMode::P2Exact, law })
    }
}

impl OtParams<PadicRing> {
    /// The fiber `(s, t) = (w_p, 1)` over `Z/p^N`, with constants from
    /// [`solve_group_constants`]. This is the group `Z/p^N[x]/(x^p - x)`.
    pub fn solved(p: u32, n: u32) -> Result<Self, OtError> {
        let gc = solve_group_constants(p as u64, n)?;
        let ring = PadicRing::new(p as u64, n)?;
        Ok(Self { coeffs: ring, p, wmode: WMode::Solved(n), law: Law::Fiber { s: None, t: 1, law: gc.c } })
    }
}

/// An Oort–Tate group with its Hopf algebra. The coordinate ring has
/// variables `x` and, on the symbolic chart, trailing base parameters `s, t`.
#[derive(Debug, Clone)]
pub struct OtGroup<R: Ring> {
    params: OtParams<R>,
    hopf: Arc<HopfAlgebra<R>>,
    /// Law coefficients and `t` as elements of the coordinate ring.
    law: Vec<Poly<R::Elem>>,
    t: Poly<R::Elem>,
}

/// Builds `coeffs[names.., s, t]/(st - w_p, v^p - t v)` for every listed
/// variable `v` (or without `s, t` on a fiber).
fn power_ring<R: Ring, S: AsRef<str>>(params: &OtParams<R>, names: &[S]) -> Result<RingRef<R>, OtError> {
    let k = &params.coeffs;
    let mut all: Vec<String> = names.iter().map(|n| n.as_ref().to_string()).collect();
    let symbolic = params.is_symbolic();
    if symbolic {
        all.extend(["s".to_string(), "t".to_string()]);
    }
    let poly = PolyRing::new(k.clone(), &all, Default::default())?;
    let n = names.len();
    let mut rels = Vec::new();
    let t = match &params.law {
        Law::Symbolic { wp, .. } => {
            rels.push(poly.sub(&poly.mul(&poly.var(n), &poly.var(n + 1)), &poly.constant(wp.clone())));
            poly.var(n + 1)
        }
        Law::Fiber { t, .. } => poly.constant(t.clone()),
    };
    for v in 0..n {
        let x = poly.var(v);
        rels.push(poly.sub(&poly.pow(&x, params.p), &poly.mul(&t, &x)));
    }
    Ok(PresentedRing::new(poly, if symbolic { 2 } else { 0 }, rels)?)
}

impl<R: Ring> OtGroup<R> {
    /// The group `F[x]/(x^p - t x)` with the Oort–Tate comultiplication; the
    /// Hopf axioms are verified on construction.
    pub fn new(params: OtParams<R>) -> Result<Arc<Self>, OtError> {
        let ring = power_ring(&params, &["x"])?;
        let (law, t) = match &params.law {
            Law::Symbolic { k, .. } => (k.iter().map(|c| ring.scale(&ring.var(1), c)).collect(), ring.var(2)),
            Law::Fiber { t, law, .. } => (law.iter().map(|c| ring.constant(c.clone())).collect(), ring.constant(t.clone())),
        };
        let p = params.p;
        let law_ref: &Vec<Poly<R::Elem>> = &law;
        let hopf = HopfAlgebra::new(
            &format!("OT_{p}"),
            ring.clone(),
            |ts| {
                let x1 = ts.ring.var(0);
                let x2 = ts.ring.var(1);
                let mut d = ts.ring.add(&x1, &x2);
                for (i, c) in law_ref.iter().enumerate() {
                    let i = i as u64 + 1;
                    let term = ts.ring.product([&ts.left.apply(c), &ts.ring.pow(&x1, i), &ts.ring.pow(&x2, p as u64 - i)]);
                    d = ts.ring.add(&d, &term);
                }
                vec![d]
            },
            |b| vec![b.zero()],
        )?;
        Ok(Arc::new(Self { params, hopf, law, t }))
    }

    pub fn params(&self) -> &OtParams<R> {
        &self.params
    }

    pub fn hopf(&self) -> &Arc<HopfAlgebra<R>> {
        &self.hopf
    }

    pub fn ring(&self) -> &RingRef<R> {
        self.hopf.ring()
    }

    pub fn p(&self) -> u32 {
        self.params.p
    }

    /// Rings of points: `G^k` as `F[names.., s, t]/(…)` with its points.
    pub fn product_ring<S: AsRef<str>>(self: &Arc<Self>, names: &[S]) -> Result<PointRing<R>, OtError> {
        let ring = power_ring(&self.params, names)?;
        let n = names.len();
        let base = (n..ring.nvars()).map(|i| ring.var(i)).collect();
        let pr = PointRing::new(self.clone(), ring.clone(), base)?;
        Ok(pr)
    }

    /// The universal homomorphism ring `F[a, b, c, d, (s, t)]` representing
    /// `Hom((Z/p)^2, G^2) = G^4`, with the matrix `(a, b; c, d)`.
    pub fn universal_hom_ring(self: &Arc<Self>) -> Result<(PointRing<R>, [Poly<R::Elem>; 4]), OtError> {
        let pr = self.product_ring(&["a", "b", "c", "d"])?;
        let m = [0, 1, 2, 3].map(|i| pr.ring.var(i));
        Ok((pr, m))
    }

    /// The `λ`-scaling automorphism of the symbolic chart:
    /// `x ↦ λx`, `s ↦ λ^{1-p} s`, `t ↦ λ^{p-1} t`. Verified to be an
    /// invertible map compatible with comultiplication and counit.
    pub fn lambda_scaling(&self, lambda: &R::Elem) -> Result<RingMap<R>, OtError> {
        if !self.params.is_symbolic() {
            return Err(OtError::BadChart("λ-scaling acts on the symbolic chart".into()));
        }
        let k = &self.params.coeffs;
        let inv = k.inv(lambda).ok_or_else(|| OtError::BadChart("λ must be a unit".into()))?;
        let p = self.params.p as u64;
        let map_for = |l: &R::Elem, li: &R::Elem| -> Result<RingMap<R>, OtError> {
            let r = self.ring();
            let images = vec![r.scale(&r.var(0), l), r.scale(&r.var(1), &k.pow(li, p - 1)), r.scale(&r.var(2), &k.pow(l, p - 1))];
            Ok(RingMap::new(r.clone(), r.clone(), images)?)
        };
        let phi = map_for(lambda, &inv)?;
        let back = map_for(&inv, lambda)?;
        let id = RingMap::new(self.ring().clone(), self.ring().clone(), (0..3).map(|i| self.ring().var(i)).collect())?;
        if !phi.then(&back)?.same_as(&id) {
            return Err(OtError::VerificationFailed("λ-scaling inverse".into()));
        }
        let ts = self.hopf.tensor();
        let r2 = &ts.ring;
        let tensor_phi = RingMap::new(
            r2.clone(),
            r2.clone(),
            vec![
                r2.scale(&r2.var(0), lambda),
                r2.scale(&r2.var(1), lambda),
                r2.scale(&r2.var(2), &k.pow(&inv, p - 1)),
                r2.scale(&r2.var(3), &k.pow(lambda, p - 1)),
            ],
        )?;
        if !self.hopf.comult().then(&tensor_phi)?.same_as(&phi.then(self.hopf.comult())?) {
            return Err(OtError::VerificationFailed("Δ(x) under λ-scaling".into()));
        }
        let x = self.ring().var(0);
        if !self.ring().equal(&self.hopf.counit_in_ring(&phi.apply(&x)), &phi.apply(&self.hopf.counit_in_ring(&x))) {
            return Err(OtError::VerificationFailed("ε(x) under λ-scaling".into()));
        }
        Ok(phi)
    }
}

/// A ring `T` over the base of an Oort–Tate group, in which points are
/// elements `f` with `f^p = t f`.
#[derive(Debug, Clone)]
pub struct PointRing<R: Ring> {
    group: Arc<OtGroup<R>>,
    ring: RingRef<R>,
    base: Vec<Poly<R::Elem>>,
    law: Vec<Poly<R::Elem>>,
    t: Poly<R::Elem>,
}

impl<R: Ring> PointRing<R> {
    /// `base` gives the images of the chart parameters `s, t` (empty on a fiber).
    pub fn new(group: Arc<OtGroup<R>>, ring: RingRef<R>, base: Vec<Poly<R::Elem>>) -> Result<Self, OtError> {
        // well-definedness of the base map
        RingMap::new(group.hopf.base().clone(), ring.clone(), base.clone())?;
        let images: Vec<Poly<R::Elem>> = std::iter::once(ring.zero()).chain(base.iter().cloned()).collect();
        let eval = |f: &Poly<R::Elem>| group.ring().substitute(f, &ring, &images);
        let law = group.law.iter().map(eval).collect();
        let t = eval(&group.t);
        Ok(Self { group, ring, base, law, t })
    }

    pub fn ring(&self) -> &RingRef<R> {
        &self.ring
    }

    pub fn group(&self) -> &Arc<OtGroup<R>> {
        &self.group
    }

    pub fn base_images(&self) -> &[Poly<R::Elem>] {
        &self.base
    }

    /// Image of `t`.
    pub fn t(&self) -> &Poly<R::Elem> {
        &self.t
    }

    pub fn is_point(&self, f: &Poly<R::Elem>) -> bool {
        let r = &self.ring;
        r.equal(&r.pow(f, self.group.p() as u64), &r.mul(&self.t, f))
    }

    fn check(&self, f: &Poly<R::Elem>) -> Result<(), OtError> {
        if self.is_point(f) {
            Ok(())
        } else {
            Err(OtError::PointCondition(self.ring.format(f)))
        }
    }

    /// Closed-form group law `f +̇ g = f + g + Σ k_i s f^i g^{p-i}`.
    pub fn dotplus(&self, f: &Poly<R::Elem>, g: &Poly<R::Elem>) -> Result<Poly<R::Elem>, OtError> {
        self.check(f)?;
        self.check(g)?;
        Ok(self.dotplus_unchecked(f, g))
    }

    fn dotplus_unchecked(&self, f: &Poly<R::Elem>, g: &Poly<R::Elem>) -> Poly<R::Elem> {
        let r = &self.ring;
        let p = self.group.p() as u64;
        let mut out = r.add(f, g);
        for (i, c) in self.law.iter().enumerate() {
            let i = i as u64 + 1;
            out = r.add(&out, &r.product([c, &r.pow(f, i), &r.pow(g, p - i)]));
        }
        out
    }

    /// `[m] f` by repeated closed-form addition.
    pub fn scale(&self, m: u64, f: &Poly<R::Elem>) -> Result<Poly<R::Elem>, OtError> {
        self.check(f)?;
        let mut acc = self.ring.zero();
        for _ in 0..m {
            acc = self.dotplus_unchecked(&acc, f);
        }
        Ok(acc)
    }

    /// The same element as a generic point of the Hopf algebra.
    pub fn as_group_point(&self, f: &Poly<R::Elem>) -> Result<GroupPoint<R>, OtError> {
        Ok(GroupPoint::new(self.group.hopf.clone(), self.ring.clone(), vec![f.clone()], self.base.clone())?)
    }
}

/// `[m]a = m·a` for the universal point `a` of a characteristic-`p` chart.
pub fn verify_scalar_identity<R: Ring>(group: &Arc<OtGroup<R>>, m: u64) -> Result<bool, OtError> {
    if group.params.wmode != WMode::CharP {
        return Err(OtError::BadChart("the scalar identity is checked on characteristic-p charts".into()));
    }
    let pr = group.product_ring(&["a"])?;
    let a = pr.ring.var(0);
    let scaled = pr.as_group_point(&a)?.scale(m)?;
    let expected = pr.ring.scale(&a, &group.params.coeffs.from_i64(m as i64));
    Ok(pr.ring.equal(&scaled.coords()[0], &expected))
}

/// Products `c_i = w_p / ((1-p) w_i w_{p-i})` modulo `p^N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupConstants {
    pub p: u64,
    pub n: u32,
    /// `c_1 .. c_{p-1}` as residues in `[0, p^N)`.
    pub c: Vec<u64>,
}

impl GroupConstants {
    /// `χ(j) + χ(k) + Σ c_i χ(j)^i χ(k)^{p-i} - χ(j+k)`, zero when the
    /// identity holds.
    pub fn residual(&self, j: u64, k: u64) -> u64 {
        let ring = PadicRing::new(self.p, self.n).expect("validated");
        let chi = |a: u64| teichmuller(a % self.p, self.p, self.n).expect("validated");
        let (x, y) = (chi(j), chi(k));
        let mut lhs = ring.add(&x, &y);
        for (i, c) in self.c.iter().enumerate() {
            let i = i as u64 + 1;
            lhs = ring.add(&lhs, &ring.mul(c, &ring.mul(&ring.pow(&x, i), &ring.pow(&y, self.p - i))));
        }
        ring.sub(&lhs, &chi(j + k))
    }
}

/// Solves the Teichmüller identity for `c_1 .. c_{p-1}` as a linear system
/// over `Z/p^N` with one equation per pair `(j, k)`, `1 <= j, k < p`.
///
/// Checks afterwards that every equation holds, that `c_i = c_{p-i}`, and the
/// congruence forced by `w_p = p w_{p-1}`, `w_i ≡ i!`: `c_i ≡ 0 (mod p)` and
/// `c_i / p ≡ -1/(i!(p-i)!) (mod p)`.
pub fn solve_group_constants(p: u64, n: u32) -> Result<GroupConstants, OtError> {
    let ring = PadicRing::new(p, n)?;
    let m = (p - 1) as usize;
    let chi: Vec<u64> = (0..p).map(|j| teichmuller(j, p, n)).collect::<Result<_, _>>()?;
    let mut rows: Vec<(Vec<u64>, u64)> = Vec::new();
    for j in 1..p {
        for k in 1..p {
            let (x, y) = (chi[j as usize], chi[k as usize]);
            let coeffs = (1..p).map(|i| ring.mul(&ring.pow(&x, i), &ring.pow(&y, p - i))).collect();
            let rhs = ring.sub(&chi[((j + k) % p) as usize], &ring.add(&x, &y));
            rows.push((coeffs, rhs));
        }
    }
    // Gauss–Jordan with unit pivots only
    let mut rank = 0;
    for col in 0..m {
        let piv = (rank..rows.len()).find(|&r| !rows[r].0[col].is_multiple_of(p)).ok_or(OtError::Underdetermined { p, n, index: col + 1 })?;
        rows.swap(rank, piv);
        let inv = ring.inv(&rows[rank].0[col]).expect("unit pivot");
        let (coeffs, rhs) = &mut rows[rank];
        coeffs.iter_mut().for_each(|c| *c = ring.mul(c, &inv));
        *rhs = ring.mul(rhs, &inv);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row.0[col] == 0 {
                continue;
            }
            let f = row.0[col];
            for (a, b) in row.0.iter_mut().zip(&pivot.0) {
                *a = ring.sub(a, &ring.mul(&f, b));
            }
            row.1 = ring.sub(&row.1, &ring.mul(&f, &pivot.1));
        }
        rank += 1;
    }
    if rows[rank..].iter().any(|(_, rhs)| *rhs != 0) {
        return Err(OtError::InconsistentSystem { p, n });
    }
    let c: Vec<u64> = rows[..m].iter().map(|(_, rhs)| *rhs).collect();
    let gc = GroupConstants { p, n, c };
    for j in 0..p {
        for k in 0..p {
            if gc.residual(j, k) != 0 {
                return Err(OtError::InconsistentSystem { p, n });
            }
        }
    }
    for i in 1..p as usize {
        if gc.c[i - 1] != gc.c[p as usize - i - 1] {
            return Err(OtError::VerificationFailed(format!("symmetry c_{i} = c_{}", p as usize - i)));
        }
        if !congruence_holds(p, n, i as u64, gc.c[i - 1]) {
            return Err(OtError::VerificationFailed(format!("c_{i} mod p")));
        }
    }
    Ok(gc)
}

fn congruence_holds(p: u64, n: u32, i: u64, c: u64) -> bool {
    if !c.is_multiple_of(p) {
        return false;
    }
    if n < 2 {
        return true;
    }
    let fp = PadicRing::new(p, 1).expect("prime");
    let d = fp.mul(&factorial(&fp, i as u32), &factorial(&fp, (p - i) as u32));
    let expected = fp.neg(&fp.inv(&d).expect("unit"));
    (c / p) % p == expected
}

/// The isomorphism between `Z/p^N[x]/(x^p - x)` (the fiber `(w_p, 1)`) and
/// the functions on the constant group `Z/p`.
#[derive(Debug, Clone)]
pub struct ConstantIso {
    pub group: Arc<OtGroup<PadicRing>>,
    pub constant: Arc<HopfAlgebra<PadicRing>>,
    /// `x ↦ Σ χ(i) e_i`.
    pub forward: RingMap<PadicRing>,
    /// `e_i ↦ λ(i) Π_{j≠i} (x - χ(j))`, `λ(0) = -1`, `λ(i) = 1/(p-1)`.
    pub backward: RingMap<PadicRing>,
}

/// Builds both maps and verifies that they are mutually inverse algebra maps
/// intertwining comultiplications and counits.
pub fn constant_iso(p: u32, n: u32) -> Result<ConstantIso, OtError> {
    let group = OtGroup::new(OtParams::solved(p, n)?)?;
    let k = *group.params.coeffs();
    let constant = constant_group(k, p)?;
    let a = group.ring().clone();
    let b = constant.ring().clone();
    let pp = p as u64;
    let chi: Vec<u64> = (0..pp).map(|j| teichmuller(j, pp, n)).collect::<Result<_, _>>()?;

    let x_image = (1..p as usize).fold(b.zero(), |acc, i| b.add(&acc, &b.scale(&b.var(i - 1), &chi[i])));
    let forward = RingMap::new(a.clone(), b.clone(), vec![x_image])?;

    let x = a.var(0);
    let lambda = |i: usize| if i == 0 { k.from_i64(-1) } else { k.inv(&k.from_i64(p as i64 - 1)).expect("unit") };
    let idem = |i: usize| {
        let factors: Vec<Poly<u64>> = (0..p as usize).filter(|&j| j != i).map(|j| a.sub(&x, &a.from_int(chi[j] as i64))).collect();
        a.scale(&a.product(factors.iter()), &lambda(i))
    };
    let backward = RingMap::new(b.clone(), a.clone(), (1..p as usize).map(idem).collect())?;

    let id_a = RingMap::new(a.clone(), a.clone(), vec![x.clone()])?;
    if !forward.then(&backward)?.same_as(&id_a) {
        return Err(OtError::VerificationFailed("x".into()));
    }
    let id_b = RingMap::new(b.clone(), b.clone(), (0..b.nvars()).map(|i| b.var(i)).collect())?;
    let round = backward.then(&forward)?;
    if let Some(i) = (0..b.nvars()).find(|&i| !b.equal(&round.images()[i], &id_b.images()[i])) {
        return Err(OtError::VerificationFailed(b.names()[i].clone()));
    }

    // (f ⊗ f) ∘ Δ_A = Δ_B ∘ f on x, and ε_B ∘ f = ε_A
    let ta = &group.hopf().tensor().ring;
    let tb = &constant.tensor().ring;
    let m = b.nvars();
    let lift = |side: usize| (1..p as usize).fold(tb.zero(), |acc, i| tb.add(&acc, &tb.scale(&tb.var(side * m + i - 1), &chi[i])));
    let ff = RingMap::new(ta.clone(), tb.clone(), vec![lift(0), lift(1)])?;
    let lhs = ff.apply(&group.hopf().comultiply(&x));
    let rhs = constant.comultiply(&forward.images()[0]);
    if !tb.equal(&lhs, &rhs) {
        return Err(OtError::VerificationFailed("Δ(x)".into()));
    }
    if !b.equal(&constant.counit_in_ring(&forward.images()[0]), &forward.apply(&group.hopf().counit_in_ring(&x))) {
        return Err(OtError::VerificationFailed("ε(x)".into()));
    }
    Ok(ConstantIso { group, constant, forward, backward })
}

#[cfg(test)]
mod tests;
