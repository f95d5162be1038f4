//! Full level structures on `G × G`: the ideal cutting out homomorphisms
//! `(Z/p)^2 → G^2` whose nonzero row and column combinations are primitive,
//! and the checks built on it (fiber ranks, group actions, the
//! characteristic-`p` unit factorisation, truncated groups, and the failure
//! of invariance under all automorphisms of `α_p^2`).

use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use thiserror::Error;

use crate::arith::{ExtField, FiniteField, PrimeField, Rationals, Ring};
use crate::gro::{GroError, Ideal};
use crate::hopf::{constant_group, mu, GroupPoint, HopfAlgebra, HopfError};
use crate::ot::{Chart, OtError, OtGroup, OtParams, PointRing};
use crate::poly::{Poly, PolyError, PolyRing, RingMap, RingRef};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LevelError {
    #[error("{0} is not divisible by x + y")]
    DivisionFailed(String),
    #[error("unsupported parameters: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Ot(#[from] OtError),
    #[error(transparent)]
    Hopf(#[from] HopfError),
    #[error(transparent)]
    Gro(#[from] GroError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Which addition combines the universal points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Addition {
    /// The group law `+̇`.
    Group,
    /// Plain addition in the coordinate ring (valid in characteristic `p`
    /// after the unit factorisation).
    Plain,
}

/// `|GL_2(Z/n)|` by enumerating all matrices.
pub fn gl2_order(n: u64) -> usize {
    let mut count = 0;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let det = (a * d + n * n - b * c) % n;
                    if gcd(det, n) == 1 {
                        count += 1;
                    }
                }
            }
        }
    }
    count
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `(p^2 - 1)(p^2 - p)`.
pub fn expected_rank(p: u64) -> usize {
    ((p * p - 1) * (p * p - p)) as usize
}

/// The ideal of full level structures inside the universal ring
/// `F[a, b, c, d, (s, t)]` for the matrix `(a, b; c, d)`.
#[derive(Debug, Clone)]
pub struct LevelIdeal<R: Ring> {
    pub points: PointRing<R>,
    pub matrix: [Poly<R::Elem>; 4],
    /// Row generators then column generators, in `(m, n)` order.
    pub generators: Vec<Poly<R::Elem>>,
    pub ideal: Ideal<R>,
}

impl<R: Ring> LevelIdeal<R> {
    pub fn ring(&self) -> &RingRef<R> {
        self.points.ring()
    }
}

/// Nonzero `(m, n) ∈ F_p^2` in lexicographic order.
pub fn nonzero_pairs(p: u64) -> Vec<(u64, u64)> {
    (0..p).flat_map(|m| (0..p).map(move |n| (m, n))).filter(|&mn| mn != (0, 0)).collect()
}

/// `f^{p-1} - t`.
pub(crate) fn primitivity<R: Ring>(pr: &PointRing<R>, f: &Poly<R::Elem>) -> Poly<R::Elem> {
    let r = pr.ring();
    r.sub(&r.pow(f, pr.group().p() as u64 - 1), pr.t())
}

/// `[m] f +̇ [n] g` (or `m f + n g`).
pub(crate) fn combine<R: Ring>(
    pr: &PointRing<R>,
    add: Addition,
    m: u64,
    f: &Poly<R::Elem>,
    n: u64,
    g: &Poly<R::Elem>,
) -> Result<Poly<R::Elem>, LevelError> {
    let r = pr.ring();
    Ok(match add {
        Addition::Group => pr.dotplus(&pr.scale(m, f)?, &pr.scale(n, g)?)?,
        Addition::Plain => {
            let k = r.coeffs();
            r.add(&r.scale(f, &k.from_i64(m as i64)), &r.scale(g, &k.from_i64(n as i64)))
        }
    })
}

/// Level-ideal generators for the matrix `(a, b; c, d)` in `pr`.
pub fn level_generators<R: Ring>(
    pr: &PointRing<R>,
    matrix: &[Poly<R::Elem>; 4],
    add: Addition,
) -> Result<Vec<Poly<R::Elem>>, LevelError> {
    let r = pr.ring();
    let p = pr.group().p() as u64;
    let [a, b, c, d] = matrix;
    let mut rows = Vec::new();
    let mut cols = Vec::new();
    for (m, n) in nonzero_pairs(p) {
        let row = r.mul(&primitivity(pr, &combine(pr, add, m, a, n, b)?), &primitivity(pr, &combine(pr, add, m, c, n, d)?));
        let col = r.mul(&primitivity(pr, &combine(pr, add, m, a, n, c)?), &primitivity(pr, &combine(pr, add, m, b, n, d)?));
        rows.push(row);
        cols.push(col);
    }
    rows.extend(cols);
    Ok(rows)
}

/// The full level ideal of `G^2` for an Oort–Tate group `G`.
pub fn full_level_ideal<R: Ring>(group: &Arc<OtGroup<R>>, add: Addition) -> Result<LevelIdeal<R>, LevelError> {
    let (points, matrix) = group.universal_hom_ring()?;
    let generators = level_generators(&points, &matrix, add)?;
    let ideal = Ideal::new(points.ring().clone(), generators.iter().cloned());
    Ok(LevelIdeal { points, matrix, generators, ideal })
}

pub(crate) fn char_p_group<R: Ring>(coeffs: R, chart: Chart<R::Elem>) -> Result<Arc<OtGroup<R>>, LevelError> {
    Ok(OtGroup::new(OtParams::char_p(coeffs, chart)?)?)
}

/// Rank of the level scheme over the fiber `(s, t)` (with `st = 0`).
pub fn fiber_rank<R: Ring>(coeffs: R, s: R::Elem, t: R::Elem) -> Result<usize, LevelError> {
    let g = char_p_group(coeffs, Chart::Fiber { s, t })?;
    Ok(full_level_ideal(&g, Addition::Group)?.ideal.quotient_dimension()?)
}

/// One fiber of a flatness report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberRank {
    pub s: String,
    pub t: String,
    pub field: String,
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatnessReport {
    pub p: u64,
    pub q: u64,
    pub expected: usize,
    pub fibers: Vec<FiberRank>,
    /// `p = 2` only: the fiber `(1, 2)` over `Q`.
    pub char0: Option<FiberRank>,
    pub pass: bool,
    pub elapsed_ms: u128,
}

/// All `F_q`-points of `{st = 0}`, ordered `(0, 0)`, then `(s, 0)`, then `(0, t)`.
pub fn axis_points<K: FiniteField>(k: &K) -> Vec<(K::Elem, K::Elem)> {
    let nonzero: Vec<K::Elem> = k.elements().into_iter().filter(|e| !k.is_zero(e)).collect();
    let mut pts = vec![(k.zero(), k.zero())];
    pts.extend(nonzero.iter().map(|e| (e.clone(), k.zero())));
    pts.extend(nonzero.iter().map(|e| (k.zero(), e.clone())));
    pts
}

/// Ranks of every fiber over `F_q`, `q ∈ {p, p^2}`, against `|GL_2(F_p)|`;
/// fibers are computed in parallel and reported in `axis_points` order.
pub fn verify_flatness(p: u64, q: u64) -> Result<FlatnessReport, LevelError> {
    let start = Instant::now();
    let k = if q == p {
        1
    } else if q == p * p {
        2
    } else {
        return Err(LevelError::Unsupported(format!("q = {q} must be p or p^2")));
    };
    let field = ExtField::new(p, k).map_err(|e| LevelError::Unsupported(e.to_string()))?;
    let expected = expected_rank(p);
    let fibers = axis_points(&field)
        .into_par_iter()
        .map(|(s, t)| {
            let rank = fiber_rank(field.clone(), s, t)?;
            Ok(FiberRank { s: field.format(&s), t: field.format(&t), field: field.name(), rank })
        })
        .collect::<Result<Vec<_>, LevelError>>()?;
    let char0 = if p == 2 {
        let q = Rationals;
        let g = OtGroup::new(OtParams::p2_exact(Chart::Fiber { s: q.from_i64(1), t: q.from_i64(2) })?)?;
        let rank = full_level_ideal(&g, Addition::Group)?.ideal.quotient_dimension()?;
        Some(FiberRank { s: "1".into(), t: "2".into(), field: q.name(), rank })
    } else {
        None
    };
    let pass = fibers.iter().chain(&char0).all(|f| f.rank == expected);
    Ok(FlatnessReport { p, q, expected, fibers, char0, pass, elapsed_ms: start.elapsed().as_millis() })
}

/// A 2×2 matrix `(g11, g12; g21, g22)`.
pub type Mat2<E> = [E; 4];

/// Generators of `GL_2(F_p)`: a transvection, a diagonal matrix with a
/// primitive root, and the coordinate swap.
pub fn gl2_generators(p: u64) -> Vec<Mat2<u64>> {
    let w = PrimeField::new(p).map(|f| f.primitive_root() as u64).unwrap_or(1);
    vec![[1, 1, 0, 1], [w, 0, 0, 1], [0, 1, 1, 0]]
}

/// Every element of `GL_2(F_p)`.
pub fn gl2_elements(p: u64) -> Vec<Mat2<u64>> {
    let mut out = Vec::new();
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                for d in 0..p {
                    if !(a * d + p * p - b * c).is_multiple_of(p) {
                        out.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    out
}

/// Precomposition `h ↦ h ∘ g` on the universal matrix: the new rows are
/// `g11·row1 +̇ g12·row2` and `g21·row1 +̇ g22·row2`.
pub fn precompose_map<R: Ring>(level: &LevelIdeal<R>, g: &Mat2<u64>) -> Result<RingMap<R>, LevelError> {
    let pr = &level.points;
    let r = pr.ring();
    let [a, b, c, d] = &level.matrix;
    let [g11, g12, g21, g22] = *g;
    let mut images = vec![
        combine(pr, Addition::Group, g11, a, g12, c)?,
        combine(pr, Addition::Group, g11, b, g12, d)?,
        combine(pr, Addition::Group, g21, a, g22, c)?,
        combine(pr, Addition::Group, g21, b, g22, d)?,
    ];
    images.extend(pr.base_images().iter().cloned());
    Ok(RingMap::new(r.clone(), r.clone(), images)?)
}

/// Whether precomposition by every `g` in `mats` maps the level ideal into
/// itself.
pub fn gl2_precompose_invariance<R: Ring>(level: &LevelIdeal<R>, mats: &[Mat2<u64>]) -> Result<bool, LevelError> {
    for g in mats {
        let phi = precompose_map(level, g)?;
        for gen in &level.generators {
            if !level.ideal.contains(&phi.apply(gen))? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// In `F_p[a, b, s, t]/(st, a^p - ta, b^p - tb)`: with
/// `g(x, y) = Σ x^i y^{p-i}/(i!(p-i)!) = (x + y) g'(x, y)` and
/// `u = 1 + s g'(ma, nb)` (for `p = 2`, `u = 1 + s m a`), checks `u^p = 1`
/// and `(ma +̇ nb)^{p-1} - t = u^{p-1} ((ma + nb)^{p-1} - t)` for all
/// `(m, n) ≠ (0, 0)`.
pub fn unit_factorization_check(p: u64) -> Result<bool, LevelError> {
    let k = PrimeField::new(p).map_err(|e| LevelError::Unsupported(e.to_string()))?;
    let g = char_p_group(k, Chart::Symbolic)?;
    let pr = g.product_ring(&["a", "b"])?;
    let r = pr.ring();
    let (a, b, s) = (r.var(0), r.var(1), r.var(2));
    let xy = PolyRing::new(k, &["x", "y"], Default::default())?;
    let gprime = if p == 2 {
        None
    } else {
        let mut gxy = xy.zero();
        for i in 1..p {
            let c = k.inv(&k.mul(&fact(&k, i), &fact(&k, p - i))).expect("unit");
            let term = xy.mul(&xy.pow(&xy.var(0), i as u32), &xy.pow(&xy.var(1), (p - i) as u32));
            gxy = xy.add(&gxy, &xy.scale(&term, &c));
        }
        let lin = xy.add(&xy.var(0), &xy.var(1));
        Some(xy.div_exact(&gxy, &lin).map_err(|_| LevelError::DivisionFailed(xy.format(&gxy)))?)
    };
    for (m, n) in nonzero_pairs(p) {
        let ma = r.scale(&a, &k.from_i64(m as i64));
        let nb = r.scale(&b, &k.from_i64(n as i64));
        let u = match &gprime {
            None => r.add(&r.one(), &r.mul(&s, &ma)),
            Some(gp) => {
                let val = xy.substitute(gp, r.poly(), &[ma.clone(), nb.clone()]);
                r.add(&r.one(), &r.mul(&s, &r.nf(&val)))
            }
        };
        if !r.equal(&r.pow(&u, p), &r.one()) {
            return Ok(false);
        }
        let lhs = primitivity(&pr, &pr.dotplus(&ma, &nb)?);
        let rhs = r.mul(&r.pow(&u, p - 1), &primitivity(&pr, &r.add(&ma, &nb)));
        if !r.equal(&lhs, &rhs) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn fact<R: Ring>(k: &R, n: u64) -> R::Elem {
    (1..=n as i64).fold(k.one(), |acc, i| k.mul(&acc, &k.from_i64(i)))
}

/// The level ideal built with `+̇` equals the one built with plain `+` on
/// the symbolic characteristic-`p` chart.
pub fn s_independence_check(p: u64) -> Result<bool, LevelError> {
    let k = PrimeField::new(p).map_err(|e| LevelError::Unsupported(e.to_string()))?;
    let g = char_p_group(k, Chart::Symbolic)?;
    let with = full_level_ideal(&g, Addition::Group)?;
    let plain = full_level_ideal(&g, Addition::Plain)?;
    Ok(with.ideal.equal(&plain.ideal)?)
}

/// Level ideal of `H^2` for any finite Hopf algebra over a field, with
/// primitivity pulled back from `H`'s primitive ideal along each row and
/// column combination (computed by convolution).
pub fn hopf_level_ideal<R: Ring>(h: &Arc<HopfAlgebra<R>>, p: u64) -> Result<(RingRef<R>, Vec<Poly<R::Elem>>), LevelError> {
    let (ring, incls) = h.ring().tensor_power(4)?;
    let n = h.ngens();
    let pts = incls
        .iter()
        .map(|i| GroupPoint::new(h.clone(), ring.clone(), i.images()[..n].to_vec(), i.images()[n..].to_vec()))
        .collect::<Result<Vec<_>, _>>()?;
    let prim = h.primitive_ideal()?;
    let prim_gens = prim.basis_in_ring()?;
    let condition = |q: &GroupPoint<R>| -> Vec<Poly<R::Elem>> { prim_gens.iter().map(|f| q.map().apply(f)).collect() };
    let combo = |m: u64, x: &GroupPoint<R>, k: u64, y: &GroupPoint<R>| -> Result<GroupPoint<R>, HopfError> { x.scale(m)?.add(&y.scale(k)?) };
    let mut gens = Vec::new();
    let mut push_products = |u: Vec<Poly<R::Elem>>, v: Vec<Poly<R::Elem>>| {
        for f in &u {
            for g in &v {
                gens.push(ring.mul(f, g));
            }
        }
    };
    let (a, b, c, d) = (&pts[0], &pts[1], &pts[2], &pts[3]);
    for (m, k) in nonzero_pairs(p) {
        push_products(condition(&combo(m, a, k, b)?), condition(&combo(m, c, k, d)?));
        push_products(condition(&combo(m, a, k, c)?), condition(&combo(m, b, k, d)?));
    }
    Ok((ring, gens))
}

/// Split models of a truncated group of height one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flavor {
    /// `μ_{p^l}` over `F_p`.
    Multiplicative,
    /// The constant group `Z/p^l` over `F_p`.
    Constant,
}

/// Rank of the truncated level scheme of `G^2`, `G = μ_{p^l}` or `Z/p^l`:
/// the level ideal of `G[p]^2` pulled back along `p^{l-1}: G^4 → G[p]^4`.
pub fn truncated_level_rank(p: u64, l: u32, flavor: Flavor) -> Result<usize, LevelError> {
    let k = PrimeField::new(p).map_err(|e| LevelError::Unsupported(e.to_string()))?;
    let big = p.pow(l) as u32;
    let (g, gp) = match flavor {
        Flavor::Multiplicative => (mu(k, big)?, mu(k, p as u32)?),
        Flavor::Constant => (constant_group(k, big)?, constant_group(k, p as u32)?),
    };
    let (small_ring, gens) = hopf_level_ideal(&gp, p)?;
    let (big_ring, _) = g.ring().tensor_power(4)?;
    let shrink = p.pow(l - 1);
    let images: Vec<Poly<<PrimeField as Ring>::Elem>> = match flavor {
        Flavor::Multiplicative => (0..4).map(|j| big_ring.pow(&big_ring.var(j), shrink)).collect(),
        Flavor::Constant => {
            // e'_r (r ∈ Z/p) pulls back to the indicator of {x : p^{l-1} x = r p^{l-1}} = {x ≡ r mod p}
            let per = big as usize - 1;
            let mut out = Vec::new();
            for j in 0..4 {
                for r in 1..p as usize {
                    let sum = (1..big as usize)
                        .filter(|x| x % p as usize == r)
                        .fold(big_ring.zero(), |acc, x| big_ring.add(&acc, &big_ring.var(j * per + x - 1)));
                    out.push(sum);
                }
            }
            out
        }
    };
    let pull = RingMap::new(small_ring, big_ring.clone(), images)?;
    let ideal = Ideal::new(big_ring, gens.iter().map(|f| pull.apply(f)));
    Ok(ideal.quotient_dimension()?)
}

/// Orientation of the `GL_2` action on the point matrix `M = (a, b; c, d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `M ↦ M g` (automorphisms of `G^2`).
    Right,
    /// `M ↦ g M`.
    Left,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StackReport {
    pub p: u64,
    pub side: Side,
    pub field: String,
    /// First matrix (row-major) not preserving the ideal, if any.
    pub witness: Option<[String; 4]>,
    /// Matrices examined before stopping.
    pub searched: usize,
    /// Every `λ·id`, `λ ∈ F_{p^2}^×`, preserves the ideal.
    pub scalars_preserve: bool,
    /// `GL_2(F_p)` precomposition preserves the ideal.
    pub precompose_preserve: bool,
}

impl StackReport {
    pub fn pass(&self) -> bool {
        self.witness.is_some() && self.scalars_preserve && self.precompose_preserve
    }
}

/// Linear substitution of the point matrix by `g` on the given side.
pub fn matrix_action<R: Ring>(level: &LevelIdeal<R>, g: &Mat2<R::Elem>, side: Side) -> Result<RingMap<R>, LevelError> {
    let r = level.ring();
    let [a, b, c, d] = &level.matrix;
    let [g11, g12, g21, g22] = g;
    let lin = |x: &Poly<R::Elem>, cx: &R::Elem, y: &Poly<R::Elem>, cy: &R::Elem| r.add(&r.scale(x, cx), &r.scale(y, cy));
    let mut images = match side {
        Side::Right => vec![lin(a, g11, b, g21), lin(a, g12, b, g22), lin(c, g11, d, g21), lin(c, g12, d, g22)],
        Side::Left => vec![lin(a, g11, c, g12), lin(b, g11, d, g12), lin(a, g21, c, g22), lin(b, g21, d, g22)],
    };
    images.extend(level.points.base_images().iter().cloned());
    Ok(RingMap::new(r.clone(), r.clone(), images)?)
}

/// Since `g` acts by an automorphism, `g·I = I` iff `g·I ⊆ I`.
fn preserves<R: Ring>(level: &LevelIdeal<R>, phi: &RingMap<R>) -> Result<bool, LevelError> {
    for gen in &level.generators {
        if !level.ideal.contains(&phi.apply(gen))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Searches `GL_2(F_{p^2})` for an automorphism of `α_p^2` that does not
/// preserve the level ideal. Matrices `(1, θ; 0, 1)` with `θ ∉ F_p` are
/// tried first, then every invertible matrix with an entry outside `F_p`.
pub fn stack_counterexample(p: u64, side: Side) -> Result<StackReport, LevelError> {
    let field = ExtField::new(p, 2).map_err(|e| LevelError::Unsupported(e.to_string()))?;
    let group = char_p_group(field.clone(), Chart::Fiber { s: 0, t: 0 })?;
    let level = full_level_ideal(&group, Addition::Plain)?;
    let elems = field.elements();
    let outside: Vec<u32> = elems.iter().copied().filter(|e| !field.in_prime_field(e)).collect();
    let (zero, one) = (field.zero(), field.one());
    let mut candidates: Vec<Mat2<u32>> = outside.iter().map(|&th| [one, th, zero, one]).collect();
    for &a in &elems {
        for &b in &elems {
            for &c in &elems {
                for &d in &elems {
                    let det = field.sub(&field.mul(&a, &d), &field.mul(&b, &c));
                    if !field.is_zero(&det) && [a, b, c, d].iter().any(|e| !field.in_prime_field(e)) {
                        candidates.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    let mut witness = None;
    let mut searched = 0;
    for g in &candidates {
        searched += 1;
        let phi = matrix_action(&level, g, side)?;
        if !preserves(&level, &phi)? {
            let image = level.ideal.map(&phi)?;
            debug_assert!(!image.equal(&level.ideal)?);
            witness = Some(g.map(|e| field.format(&e)));
            break;
        }
    }
    let mut scalars_preserve = true;
    for &l in elems.iter().filter(|e| !field.is_zero(e)) {
        if !preserves(&level, &matrix_action(&level, &[l, zero, zero, l], side)?)? {
            scalars_preserve = false;
        }
    }
    let precompose_preserve = gl2_precompose_invariance(&level, &gl2_generators(p))?;
    Ok(StackReport { p, side, field: field.name(), witness, searched, scalars_preserve, precompose_preserve })
}
