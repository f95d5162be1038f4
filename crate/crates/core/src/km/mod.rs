//! Katz–Mazur "full set of sections" conditions on homomorphisms
//! `(Z/p)^g → H`, via the norm identity: for a generic element
//! `f = Σ u_j e_j` of `O_H`, the universal homomorphism is a
//! ×-homomorphism when `Π_x f(h(x)) = N(f)` identically in the `u_j`.

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::arith::{PrimeField, Rationals, Ring};
use crate::gro::linear::FiniteAlgebra;
use crate::gro::{GroError, Ideal};
use crate::hopf::{alpha, mu, GroupPoint, HopfAlgebra, HopfError};
use crate::level::{char_p_group, expected_rank, fiber_rank, LevelError};
use crate::ot::Chart;
use crate::poly::{MonomialOrder, Poly, PolyError, PolyRing, RingMap, RingRef};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KmError {
    #[error("source (Z/{p})^{g} has {order} elements but O_H has rank {rank}")]
    RankMismatch { p: u64, g: usize, order: usize, rank: usize },
    #[error("a basis of O_H needs {expected} elements, got {got}")]
    BasisSize { expected: usize, got: usize },
    #[error(transparent)]
    Hopf(#[from] HopfError),
    #[error(transparent)]
    Gro(#[from] GroError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Level(#[from] LevelError),
}

/// `N(Σ u_j e_j) = det(multiplication by Σ u_j e_j)` on `O_H`.
#[derive(Debug, Clone)]
pub struct NormForm<R: Ring> {
    pub host: Arc<HopfAlgebra<R>>,
    pub basis: Vec<Poly<R::Elem>>,
    /// `F[u_1, …, u_n]`.
    pub u: PolyRing<R>,
    pub norm: Poly<R::Elem>,
}

impl<R: Ring> NormForm<R> {
    /// `N` at the element with coordinates `a` in `basis`.
    pub fn eval(&self, a: &[R::Elem]) -> R::Elem {
        self.u.evaluate(&self.norm, a)
    }
}

/// Fraction-free (Bareiss) determinant over a polynomial ring.
pub fn bareiss_det<R: Ring>(ring: &PolyRing<R>, mut m: Vec<Vec<Poly<R::Elem>>>) -> Result<Poly<R::Elem>, PolyError> {
    let n = m.len();
    if n == 0 {
        return Ok(ring.one());
    }
    let mut negate = false;
    let mut prev = ring.one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(i) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else { return Ok(ring.zero()) };
            m.swap(k, i);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = ring.sub(&ring.mul(&m[i][j], &m[k][k]), &ring.mul(&m[i][k], &m[k][j]));
                m[i][j] = ring.div_exact(&num, &prev)?;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    Ok(if negate { ring.neg(&d) } else { d })
}

/// The norm form of `O_H` in `basis` (default: the standard monomials).
pub fn norm_form<R: Ring>(host: &Arc<HopfAlgebra<R>>, basis: Option<Vec<Poly<R::Elem>>>) -> Result<NormForm<R>, KmError> {
    let ring = host.ring();
    let alg = FiniteAlgebra::new(ring.clone())?;
    let n = alg.dim();
    let k = ring.coeffs().clone();
    let monos: Vec<Poly<R::Elem>> = alg.monomials().iter().map(|m| ring.poly().term(*m, k.one())).collect();
    let basis = basis.unwrap_or_else(|| monos.clone());
    if basis.len() != n {
        return Err(KmError::BasisSize { expected: n, got: basis.len() });
    }
    let names: Vec<String> = (1..=n).map(|j| format!("u{j}")).collect();
    let u = PolyRing::new(k.clone(), &names, MonomialOrder::DegRevLex)?;
    let mut m = vec![vec![u.zero(); n]; n];
    for (j, e) in basis.iter().enumerate() {
        for (c, mono) in monos.iter().enumerate() {
            for (r, x) in alg.to_vec(&ring.mul(e, mono)).into_iter().enumerate() {
                if !k.is_zero(&x) {
                    m[r][c] = u.add(&m[r][c], &u.scale(&u.var(j), &x));
                }
            }
        }
    }
    let norm = bareiss_det(&u, m)?;
    Ok(NormForm { host: host.clone(), basis, u, norm })
}

/// The Katz–Mazur ideal inside the universal ring `O_H^{⊗g}`.
#[derive(Debug, Clone)]
pub struct KmIdeal<R: Ring> {
    pub ring: RingRef<R>,
    /// The universal points `h(e_1), …, h(e_g)`.
    pub points: Vec<GroupPoint<R>>,
    pub norm: NormForm<R>,
    /// Coefficients of `Π_x f(h(x)) − N(f)`, one per `u`-monomial.
    pub generators: Vec<Poly<R::Elem>>,
    pub ideal: Ideal<R>,
}

/// Elements of `(Z/p)^g` in lexicographic order.
fn source_elements(p: u64, g: usize) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for _ in 0..g {
        out = out.into_iter().flat_map(|v: Vec<u64>| (0..p).map(move |a| [v.clone(), vec![a]].concat())).collect();
    }
    out
}

pub fn km_ideal<R: Ring>(host: &Arc<HopfAlgebra<R>>, g: usize, p: u64) -> Result<KmIdeal<R>, KmError> {
    km_ideal_with_basis(host, g, p, None)
}

pub fn km_ideal_with_basis<R: Ring>(
    host: &Arc<HopfAlgebra<R>>,
    g: usize,
    p: u64,
    basis: Option<Vec<Poly<R::Elem>>>,
) -> Result<KmIdeal<R>, KmError> {
    let norm = norm_form(host, basis)?;
    let n = norm.basis.len();
    let order = (p as usize).pow(g as u32);
    if order != n {
        return Err(KmError::RankMismatch { p, g, order, rank: n });
    }
    let (ring, incls) = host.ring().tensor_power(g)?;
    let ng = host.ngens();
    let points = incls
        .iter()
        .map(|i| GroupPoint::new(host.clone(), ring.clone(), i.images()[..ng].to_vec(), i.images()[ng..].to_vec()))
        .collect::<Result<Vec<_>, _>>()?;
    let base: Vec<Poly<R::Elem>> = incls[0].images()[ng..].to_vec();

    // Π_x Σ_j u_j e_j(h(x)), keyed by the exponent vector of u
    let mut product: BTreeMap<Vec<u32>, Poly<R::Elem>> = BTreeMap::new();
    product.insert(vec![0; n], ring.one());
    for x in source_elements(p, g) {
        let mut pt = GroupPoint::identity(host.clone(), ring.clone(), base.clone())?;
        for (xi, hi) in x.iter().zip(&points) {
            pt = pt.add(&hi.scale(*xi)?)?;
        }
        let values: Vec<Poly<R::Elem>> = norm.basis.iter().map(|e| pt.map().apply(e)).collect();
        let mut next: BTreeMap<Vec<u32>, Poly<R::Elem>> = BTreeMap::new();
        for (e, c) in &product {
            for (j, v) in values.iter().enumerate() {
                if ring.is_zero(v) {
                    continue;
                }
                let mut e2 = e.clone();
                e2[j] += 1;
                let term = ring.mul(c, v);
                let slot = next.entry(e2).or_insert_with(|| ring.zero());
                *slot = ring.add(slot, &term);
            }
        }
        product = next;
    }
    for (m, c) in norm.norm.terms() {
        let e = m.exponents(n);
        let slot = product.entry(e).or_insert_with(|| ring.zero());
        *slot = ring.sub(slot, &ring.constant(c.clone()));
    }
    let generators: Vec<Poly<R::Elem>> = product.into_values().filter(|f| !ring.is_zero(f)).collect();
    let ideal = Ideal::new(ring.clone(), generators.iter().cloned());
    Ok(KmIdeal { ring, points, norm, generators, ideal })
}

/// Whether the KM ideal of `(Z/p) → μ_p` over `Q` is `(Φ_p(y))`; also
/// returns its quotient dimension.
pub fn mu_is_cyclotomic(p: u64) -> Result<(bool, usize), KmError> {
    let h = mu(Rationals, p as u32)?;
    let km = km_ideal(&h, 1, p)?;
    let r = &km.ring;
    let phi = (0..p).fold(r.zero(), |acc, k| r.add(&acc, &r.pow(&r.var(0), k)));
    let equal = km.ideal.equal(&Ideal::new(r.clone(), [phi]))?;
    Ok((equal, km.ideal.quotient_dimension()?))
}

/// The map swapping the universal matrix with its transpose, for
/// `g` points of a `g`-dimensional group (one coordinate per factor).
pub fn transpose_map<R: Ring>(ring: &RingRef<R>, g: usize) -> Result<RingMap<R>, PolyError> {
    let images = (0..ring.nvars())
        .map(|v| if v < g * g { ring.var((v % g) * g + v / g) } else { ring.var(v) })
        .collect();
    RingMap::new(ring.clone(), ring.clone(), images)
}

/// Rank of the KM+D scheme of `(Z/2)^2 → α_2^2` over `F_2`: the KM ideal
/// of the universal homomorphism plus that of its dual, which under the
/// self-duality of `α_2` is the transpose.
pub fn kmd_rank_alpha2() -> Result<usize, KmError> {
    let k = PrimeField::new(2).expect("2 is prime");
    let h = alpha(k)?.power(2)?;
    let km = km_ideal(&h, 2, 2)?;
    let dual = km.ideal.map(&transpose_map(&km.ring, 2)?)?;
    Ok(km.ideal.sum(&dual)?.quotient_dimension()?)
}

/// One fiber of the KM versus primitive-combination comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KmFiber {
    pub name: &'static str,
    pub s: u64,
    pub t: u64,
    pub km_rank: usize,
    pub level_rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KmComparison {
    pub p: u64,
    pub expected: usize,
    pub fibers: Vec<KmFiber>,
}

impl KmComparison {
    pub fn level_flat(&self) -> bool {
        self.fibers.iter().all(|f| f.level_rank == self.expected)
    }

    pub fn km_deviates(&self) -> bool {
        self.fibers.iter().any(|f| f.km_rank != self.expected)
    }
}

/// KM ideal of `G^2` (with `g = 2`) against the level ideal on the
/// multiplicative, additive and étale fibers of the characteristic-`p`
/// Oort–Tate family.
pub fn km_vs_primitive(p: u64) -> Result<KmComparison, KmError> {
    let k = PrimeField::new(p).map_err(|e| LevelError::Unsupported(e.to_string()))?;
    let mut fibers = Vec::new();
    for (name, s, t) in [("mu_p^2", 1, 0), ("alpha_p^2", 0, 0), ("etale", 0, 1)] {
        let chart = Chart::Fiber { s: k.from_i64(s as i64), t: k.from_i64(t as i64) };
        let g = char_p_group(k, chart)?;
        let h = g.hopf().power(2)?;
        let km_rank = km_ideal(&h, 2, p)?.ideal.quotient_dimension()?;
        let level_rank = fiber_rank(k, k.from_i64(s as i64), k.from_i64(t as i64))?;
        fibers.push(KmFiber { name, s, t, km_rank, level_rank });
    }
    Ok(KmComparison { p, expected: expected_rank(p), fibers })
}
