use std::fmt;
use std::sync::Arc;

use super::{Monomial, MonomialOrder, Poly, PolyError, PolyRing};
use crate::arith::Ring;
use crate::gro::{self, Budget};

pub type RingRef<R> = Arc<PresentedRing<R>>;

/// A quotient `k[vars]/(relations)` with unique normal forms.
///
/// Over a field the relations are replaced by their reduced Groebner basis.
/// Over a non-field (`Z/p^N`) the relations must have unit leading
/// coefficients and already form a Groebner basis; this is verified.
///
/// The last `base_vars` variables are parameters of the base ring; they are
/// shared rather than duplicated by [`PresentedRing::tensor_power`]. Keeping
/// them last makes `x^p` rather than `t*x` the leading term of `x^p - t*x`
/// under degrevlex.
#[derive(Debug, Clone)]
pub struct PresentedRing<R: Ring> {
    poly: PolyRing<R>,
    base_vars: usize,
    relations: Vec<Poly<R::Elem>>,
    basis: Vec<Poly<R::Elem>>,
    standard: Option<Vec<Monomial>>,
}

impl<R: Ring> PartialEq for PresentedRing<R> {
    fn eq(&self, other: &Self) -> bool {
        self.poly == other.poly && self.base_vars == other.base_vars && self.basis == other.basis
    }
}

impl<R: Ring> PresentedRing<R> {
    pub fn new(poly: PolyRing<R>, base_vars: usize, relations: Vec<Poly<R::Elem>>) -> Result<RingRef<R>, PolyError> {
        let n = poly.nvars();
        assert!(base_vars <= n);
        for r in &relations {
            if r.monomials().any(|m| m.involves_range(n, super::MAX_VARS)) {
                return Err(PolyError::UnknownVariable(format!("index >= {n} in {}", poly.format(r))));
            }
        }
        let relations: Vec<_> = relations.into_iter().filter(|r| !r.is_zero()).collect();
        let basis = if poly.coeffs().is_field() {
            gro::groebner(&poly, &relations, &Budget::default()).map_err(|e| PolyError::Groebner(e.to_string()))?
        } else {
            monic_basis(&poly, &relations)?
        };
        let standard = if poly.coeffs().is_field() {
            gro::standard_monomials(n, basis.iter().map(|g| g.lm()))
        } else {
            None
        };
        Ok(Arc::new(Self { poly, base_vars, relations, basis, standard }))
    }

    /// Convenience constructor from variable names and relation strings.
    pub fn build<S: AsRef<str>>(
        coeffs: R,
        names: &[S],
        order: MonomialOrder,
        relations: &[&str],
    ) -> Result<RingRef<R>, PolyError> {
        Self::build_with_base(coeffs, names, 0, order, relations)
    }

    pub fn build_with_base<S: AsRef<str>>(
        coeffs: R,
        names: &[S],
        base_vars: usize,
        order: MonomialOrder,
        relations: &[&str],
    ) -> Result<RingRef<R>, PolyError> {
        let poly = PolyRing::new(coeffs, names, order)?;
        let rels = relations.iter().map(|s| poly.parse(s)).collect::<Result<Vec<_>, _>>()?;
        Self::new(poly, base_vars, rels)
    }

    pub fn poly(&self) -> &PolyRing<R> {
        &self.poly
    }

    pub fn coeffs(&self) -> &R {
        self.poly.coeffs()
    }

    pub fn names(&self) -> &[String] {
        self.poly.names()
    }

    pub fn nvars(&self) -> usize {
        self.poly.nvars()
    }

    pub fn base_vars(&self) -> usize {
        self.base_vars
    }

    pub fn order(&self) -> MonomialOrder {
        self.poly.order()
    }

    pub fn relations(&self) -> &[Poly<R::Elem>] {
        &self.relations
    }

    /// Groebner basis of the relation ideal.
    pub fn basis(&self) -> &[Poly<R::Elem>] {
        &self.basis
    }

    /// Whether the ring is a finite-dimensional vector space over a field.
    pub fn is_finite_dim(&self) -> bool {
        self.standard.is_some()
    }

    /// Standard monomials, a vector-space basis when finite-dimensional.
    pub fn standard_monomials(&self) -> Option<&[Monomial]> {
        self.standard.as_deref()
    }

    pub fn dimension(&self) -> Option<usize> {
        self.standard.as_ref().map(Vec::len)
    }

    pub fn nf(&self, f: &Poly<R::Elem>) -> Poly<R::Elem> {
        gro::reduce(&self.poly, f, &self.basis)
    }

    pub fn zero(&self) -> Poly<R::Elem> {
        Poly::zero()
    }

    pub fn one(&self) -> Poly<R::Elem> {
        self.nf(&self.poly.one())
    }

    pub fn var(&self, i: usize) -> Poly<R::Elem> {
        self.nf(&self.poly.var(i))
    }

    pub fn var_named(&self, name: &str) -> Result<Poly<R::Elem>, PolyError> {
        Ok(self.nf(&self.poly.var_named(name)?))
    }

    pub fn constant(&self, c: R::Elem) -> Poly<R::Elem> {
        self.nf(&self.poly.constant(c))
    }

    pub fn from_int(&self, n: i64) -> Poly<R::Elem> {
        self.nf(&self.poly.from_int(n))
    }

    pub fn add(&self, f: &Poly<R::Elem>, g: &Poly<R::Elem>) -> Poly<R::Elem> {
        self.poly.add(f, g)
    }

    pub fn sub(&self, f: &Poly<R::Elem>, g: &Poly<R::Elem>) -> Poly<R::Elem> {
        self.poly.sub(f, g)
    }

    pub fn neg(&self, f: &Poly<R::Elem>) -> Poly<R::Elem> {
        self.poly.neg(f)
    }

    pub fn scale(&self, f: &Poly<R::Elem>, c: &R::Elem) -> Poly<R::Elem> {
        self.poly.scale(f, c)
    }

    pub fn mul(&self, f: &Poly<R::Elem>, g: &Poly<R::Elem>) -> Poly<R::Elem> {
        self.nf(&self.poly.mul(f, g))
    }

    pub fn pow(&self, f: &Poly<R::Elem>, mut e: u64) -> Poly<R::Elem> {
        let mut base = self.nf(f);
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    pub fn product<'a>(&self, factors: impl IntoIterator<Item = &'a Poly<R::Elem>>) -> Poly<R::Elem>
    where
        R::Elem: 'a,
    {
        factors.into_iter().fold(self.one(), |acc, f| self.mul(&acc, f))
    }

    /// Equality in the quotient ring.
    pub fn equal(&self, f: &Poly<R::Elem>, g: &Poly<R::Elem>) -> bool {
        self.nf(&self.sub(f, g)).is_zero()
    }

    pub fn is_zero(&self, f: &Poly<R::Elem>) -> bool {
        self.nf(f).is_zero()
    }

    pub fn parse(&self, s: &str) -> Result<Poly<R::Elem>, PolyError> {
        Ok(self.nf(&self.poly.parse(s)?))
    }

    pub fn format(&self, f: &Poly<R::Elem>) -> String {
        self.poly.format(f)
    }

    /// Evaluates `f` (an element of `self`) at `images` in `target`, reducing
    /// after every multiplication.
    pub fn substitute(&self, f: &Poly<R::Elem>, target: &PresentedRing<R>, images: &[Poly<R::Elem>]) -> Poly<R::Elem> {
        let mut powers: Vec<Vec<Poly<R::Elem>>> = vec![vec![target.one()]; self.nvars()];
        let mut acc = target.zero();
        for (m, c) in f.terms() {
            let mut t = target.constant(c.clone());
            for (i, pw) in powers.iter_mut().enumerate() {
                let e = m.exp(i) as usize;
                if e == 0 {
                    continue;
                }
                while pw.len() <= e {
                    let next = target.mul(pw.last().unwrap(), &images[i]);
                    pw.push(next);
                }
                t = target.mul(&t, &pw[e]);
                if t.is_zero() {
                    break;
                }
            }
            acc = target.add(&acc, &t);
        }
        acc
    }

    /// The base ring: the trailing parameter variables with the relations
    /// that involve only them, together with its inclusion into `self`.
    pub fn base_ring(self: &Arc<Self>) -> Result<(RingRef<R>, RingMap<R>), PolyError> {
        let b = self.base_vars;
        let gens = self.nvars() - b;
        let poly = PolyRing::new(self.coeffs().clone(), &self.names()[gens..], self.order())?;
        let down: Vec<usize> = (0..self.nvars()).map(|i| i.saturating_sub(gens)).collect();
        let rels = self
            .basis
            .iter()
            .filter(|r| !r.involves_range(0, gens))
            .map(|r| self.poly.rename(r, &poly, &down))
            .collect();
        let base = PresentedRing::new(poly, b, rels)?;
        let images = (gens..self.nvars()).map(|i| self.var(i)).collect();
        let incl = RingMap::new(base.clone(), self.clone(), images)?;
        Ok((base, incl))
    }

    /// Tensor power over the base: the non-base variables are copied `k`
    /// times (named `v_1 .. v_k`), base variables and purely-base relations
    /// are shared. Returns the ring and the `k` inclusion maps.
    pub fn tensor_power(self: &Arc<Self>, k: usize) -> Result<(RingRef<R>, Vec<RingMap<R>>), PolyError> {
        let b = self.base_vars;
        let gens = self.nvars() - b;
        let mut names: Vec<String> = Vec::with_capacity(k * gens + b);
        for j in 1..=k {
            names.extend(self.names()[..gens].iter().map(|v| format!("{v}_{j}")));
        }
        names.extend(self.names()[gens..].iter().cloned());
        let poly = PolyRing::new(self.coeffs().clone(), &names, self.order())?;
        let copy_map = |j: usize| -> Vec<usize> { (0..gens).map(|g| j * gens + g).chain((0..b).map(|i| k * gens + i)).collect() };
        let mut rels = Vec::new();
        for r in &self.basis {
            if r.involves_range(0, gens) {
                for j in 0..k {
                    rels.push(self.poly.rename(r, &poly, &copy_map(j)));
                }
            } else {
                rels.push(self.poly.rename(r, &poly, &copy_map(0)));
            }
        }
        let target = PresentedRing::new(poly, b, rels)?;
        let maps = (0..k)
            .map(|j| {
                let images = copy_map(j).iter().map(|&v| target.var(v)).collect();
                RingMap::new(self.clone(), target.clone(), images)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok((target, maps))
    }

    pub fn tensor_square(self: &Arc<Self>) -> Result<(RingRef<R>, RingMap<R>, RingMap<R>), PolyError> {
        let (t, mut maps) = self.tensor_power(2)?;
        let right = maps.pop().expect("two inclusions");
        let left = maps.pop().expect("two inclusions");
        Ok((t, left, right))
    }
}

impl<R: Ring> fmt::Display for PresentedRing<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.coeffs().name(), self.names().join(","))?;
        if !self.basis.is_empty() {
            let rels: Vec<String> = self.basis.iter().map(|r| self.format(r)).collect();
            write!(f, "/({})", rels.join(", "))?;
        }
        Ok(())
    }
}

fn monic_basis<R: Ring>(poly: &PolyRing<R>, relations: &[Poly<R::Elem>]) -> Result<Vec<Poly<R::Elem>>, PolyError> {
    let mut basis = Vec::with_capacity(relations.len());
    for r in relations {
        if poly.coeffs().inv(r.lc()).is_none() {
            return Err(PolyError::NonMonicRelation(poly.format(r)));
        }
        basis.push(poly.make_monic(r));
    }
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let (f, g) = (&basis[i], &basis[j]);
            if f.lm().is_coprime(&g.lm()) {
                continue;
            }
            let l = f.lm().lcm(&g.lm());
            let s = poly.sub_mul_term(
                &poly.mul_term(f, l.div(&f.lm()), &poly.coeffs().one()),
                &poly.coeffs().one(),
                l.div(&g.lm()),
                g,
            );
            let r = gro::reduce(poly, &s, &basis);
            if !r.is_zero() {
                return Err(PolyError::NotAGroebnerBasis(poly.format(&r)));
            }
        }
    }
    Ok(basis)
}

/// A ring homomorphism given by the images of the source variables.
#[derive(Debug, Clone)]
pub struct RingMap<R: Ring> {
    source: RingRef<R>,
    target: RingRef<R>,
    images: Vec<Poly<R::Elem>>,
}

impl<R: Ring> RingMap<R> {
    /// Checks that every source relation maps to zero.
    pub fn new(source: RingRef<R>, target: RingRef<R>, images: Vec<Poly<R::Elem>>) -> Result<Self, PolyError> {
        if images.len() != source.nvars() {
            return Err(PolyError::ImageCount { expected: source.nvars(), got: images.len() });
        }
        if source.coeffs() != target.coeffs() {
            return Err(PolyError::RingMismatch("different coefficient rings".into()));
        }
        let images: Vec<_> = images.iter().map(|f| target.nf(f)).collect();
        let map = Self { source, target, images };
        for r in map.source.relations() {
            let img = map.apply(r);
            if !img.is_zero() {
                return Err(PolyError::WellDefinedness {
                    relation: map.source.format(r),
                    image: map.target.format(&img),
                });
            }
        }
        Ok(map)
    }

    /// Parses images in the target ring's text format.
    pub fn parse(source: RingRef<R>, target: RingRef<R>, images: &[&str]) -> Result<Self, PolyError> {
        let images = images.iter().map(|s| target.parse(s)).collect::<Result<Vec<_>, _>>()?;
        Self::new(source, target, images)
    }

    pub fn source(&self) -> &RingRef<R> {
        &self.source
    }

    pub fn target(&self) -> &RingRef<R> {
        &self.target
    }

    pub fn images(&self) -> &[Poly<R::Elem>] {
        &self.images
    }

    pub fn apply(&self, f: &Poly<R::Elem>) -> Poly<R::Elem> {
        self.source.substitute(f, &self.target, &self.images)
    }

    /// `other ∘ self`: first `self`, then `other`.
    pub fn then(&self, other: &RingMap<R>) -> Result<RingMap<R>, PolyError> {
        if *self.target != *other.source {
            return Err(PolyError::RingMismatch("composition of incompatible maps".into()));
        }
        let images = self.images.iter().map(|f| other.apply(f)).collect();
        Ok(RingMap { source: self.source.clone(), target: other.target.clone(), images })
    }

    /// Whether two maps with the same source and target agree on generators.
    pub fn same_as(&self, other: &RingMap<R>) -> bool {
        self.images.len() == other.images.len()
            && self.images.iter().zip(&other.images).all(|(a, b)| self.target.equal(a, b))
    }
}
