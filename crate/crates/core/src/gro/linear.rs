//! Linear-algebra view of a finite-dimensional quotient ring.
//!
//! Over a field, an ideal of a finite-dimensional algebra is the same thing
//! as a subspace closed under multiplication by the generators. This gives an
//! engine that is independent of Buchberger's algorithm; it is used both to
//! cross-check Groebner computations and for orbit closures where
//! intersections of large ideals would be expensive by elimination.

use std::collections::{HashMap, VecDeque};

use super::{GroError, Ideal};
use crate::arith::Ring;
use crate::poly::{Monomial, Poly, RingMap, RingRef};

type SparseCol<E> = Vec<(usize, E)>;

/// A linear endomorphism given by the images of the basis vectors.
#[derive(Debug, Clone)]
pub struct LinearMap<E> {
    cols: Vec<SparseCol<E>>,
}

impl<E: Clone> LinearMap<E> {
    pub fn columns(&self) -> &[SparseCol<E>] {
        &self.cols
    }
}

/// A finite-dimensional presented ring with a fixed monomial basis.
#[derive(Debug, Clone)]
pub struct FiniteAlgebra<R: Ring> {
    ring: RingRef<R>,
    monos: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    mult: Vec<LinearMap<R::Elem>>,
}

impl<R: Ring> FiniteAlgebra<R> {
    pub fn new(ring: RingRef<R>) -> Result<Self, GroError> {
        if !ring.coeffs().is_field() {
            return Err(GroError::NotAField(ring.coeffs().name()));
        }
        let monos = ring.standard_monomials().ok_or(GroError::NotZeroDimensional)?.to_vec();
        let index: HashMap<Monomial, usize> = monos.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let mut alg = Self { ring, monos, index, mult: Vec::new() };
        let n = alg.ring.nvars();
        alg.mult = (0..n)
            .map(|v| {
                let x = alg.ring.var(v);
                let cols = alg
                    .monos
                    .iter()
                    .map(|m| {
                        let p = alg.ring.mul(&x, &alg.ring.poly().term(*m, alg.ring.coeffs().one()));
                        alg.sparse(&p)
                    })
                    .collect();
                LinearMap { cols }
            })
            .collect();
        Ok(alg)
    }

    pub fn ring(&self) -> &RingRef<R> {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.monos.len()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monos
    }

    fn sparse(&self, f: &Poly<R::Elem>) -> SparseCol<R::Elem> {
        let f = self.ring.nf(f);
        f.terms().iter().map(|(m, c)| (self.index[m], c.clone())).collect()
    }

    pub fn to_vec(&self, f: &Poly<R::Elem>) -> Vec<R::Elem> {
        let mut v = vec![self.ring.coeffs().zero(); self.dim()];
        for (i, c) in self.sparse(f) {
            v[i] = c;
        }
        v
    }

    pub fn to_poly(&self, v: &[R::Elem]) -> Poly<R::Elem> {
        let k = self.ring.coeffs();
        let terms = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !k.is_zero(c))
            .map(|(i, c)| (self.monos[i], c.clone()));
        self.ring.poly().from_terms(terms)
    }

    /// Matrix of a ring endomorphism `phi` of this algebra.
    pub fn linear_map(&self, phi: &RingMap<R>) -> LinearMap<R::Elem> {
        assert!(**phi.source() == *self.ring && **phi.target() == *self.ring, "endomorphism expected");
        let one = self.ring.coeffs().one();
        let cols = self.monos.iter().map(|m| self.sparse(&phi.apply(&self.ring.poly().term(*m, one.clone())))).collect();
        LinearMap { cols }
    }

    pub fn apply(&self, map: &LinearMap<R::Elem>, v: &[R::Elem]) -> Vec<R::Elem> {
        let k = self.ring.coeffs();
        let mut out = vec![k.zero(); self.dim()];
        for (j, c) in v.iter().enumerate() {
            if k.is_zero(c) {
                continue;
            }
            for (i, x) in &map.cols[j] {
                out[*i] = k.add(&out[*i], &k.mul(c, x));
            }
        }
        out
    }

    pub fn mul_var(&self, var: usize, v: &[R::Elem]) -> Vec<R::Elem> {
        self.apply(&self.mult[var], v)
    }

    pub fn empty(&self) -> Subspace<R> {
        Subspace { k: self.ring.coeffs().clone(), dim: self.dim(), rows: Vec::new(), pivots: Vec::new() }
    }

    /// Smallest ideal containing `seeds` that is also stable under `maps`.
    pub fn closure(&self, space: &mut Subspace<R>, seeds: Vec<Vec<R::Elem>>, maps: &[LinearMap<R::Elem>]) {
        let mut queue: VecDeque<Vec<R::Elem>> = VecDeque::new();
        for s in seeds {
            if let Some(r) = space.insert(s) {
                queue.push_back(r);
            }
        }
        while let Some(v) = queue.pop_front() {
            let images = (0..self.mult.len()).map(|i| self.mul_var(i, &v)).chain(maps.iter().map(|m| self.apply(m, &v)));
            for w in images.collect::<Vec<_>>() {
                if let Some(r) = space.insert(w) {
                    queue.push_back(r);
                }
            }
        }
    }

    pub fn ideal(&self, gens: &[Poly<R::Elem>]) -> Subspace<R> {
        self.invariant_ideal(gens, &[])
    }

    pub fn invariant_ideal(&self, gens: &[Poly<R::Elem>], maps: &[LinearMap<R::Elem>]) -> Subspace<R> {
        let mut s = self.empty();
        let seeds: Vec<Vec<R::Elem>> = gens.iter().map(|g| self.to_vec(g)).collect();
        self.closure(&mut s, seeds, maps);
        s
    }

    pub fn from_ideal(&self, ideal: &Ideal<R>) -> Subspace<R> {
        self.ideal(ideal.gens())
    }

    /// Ideal product: spanned by products of the two spanning sets' elements;
    /// generated as an ideal by products of generators.
    pub fn product(&self, a: &[Poly<R::Elem>], b: &[Poly<R::Elem>]) -> Subspace<R> {
        let prods: Vec<Poly<R::Elem>> = a.iter().flat_map(|f| b.iter().map(move |g| (f, g))).map(|(f, g)| self.ring.mul(f, g)).collect();
        self.ideal(&prods)
    }

    pub fn quotient_dimension(&self, space: &Subspace<R>) -> usize {
        self.dim() - space.rank()
    }

    pub fn basis_polys(&self, space: &Subspace<R>) -> Vec<Poly<R::Elem>> {
        space.rows.iter().map(|r| self.to_poly(r)).collect()
    }
}

/// A subspace kept in semi-echelon form: each row has a pivot (its first
/// nonzero entry, normalized to 1) that is zero in every later row.
#[derive(Debug, Clone)]
pub struct Subspace<R: Ring> {
    k: R,
    dim: usize,
    rows: Vec<Vec<R::Elem>>,
    pivots: Vec<usize>,
}

impl<R: Ring> Subspace<R> {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[Vec<R::Elem>] {
        &self.rows
    }

    pub fn reduce(&self, mut v: Vec<R::Elem>) -> Vec<R::Elem> {
        let k = &self.k;
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if k.is_zero(&v[p]) {
                continue;
            }
            let c = v[p].clone();
            for (x, y) in v[p..].iter_mut().zip(&row[p..]) {
                if !k.is_zero(y) {
                    *x = k.sub(x, &k.mul(&c, y));
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[R::Elem]) -> bool {
        self.reduce(v.to_vec()).iter().all(|x| self.k.is_zero(x))
    }

    /// Adds `v`; returns the new row if the span grew.
    pub fn insert(&mut self, v: Vec<R::Elem>) -> Option<Vec<R::Elem>> {
        assert_eq!(v.len(), self.dim);
        let mut v = self.reduce(v);
        let p = v.iter().position(|x| !self.k.is_zero(x))?;
        let inv = self.k.inv(&v[p]).expect("field coefficients");
        for x in v[p..].iter_mut() {
            *x = self.k.mul(x, &inv);
        }
        self.rows.push(v.clone());
        self.pivots.push(p);
        Some(v)
    }

    pub fn contains_space(&self, other: &Subspace<R>) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    pub fn equal(&self, other: &Subspace<R>) -> bool {
        self.rank() == other.rank() && self.contains_space(other)
    }

    pub fn sum(&self, other: &Subspace<R>) -> Subspace<R> {
        let mut out = self.clone();
        for r in &other.rows {
            out.insert(r.clone());
        }
        out
    }

    /// Zassenhaus: echelonize `[u | u]` and `[v | 0]`; rows of the form
    /// `[0 | w]` span the intersection.
    pub fn intersect(&self, other: &Subspace<R>) -> Subspace<R> {
        let n = self.dim;
        let mut big = Subspace { k: self.k.clone(), dim: 2 * n, rows: Vec::new(), pivots: Vec::new() };
        for r in &self.rows {
            let mut v = r.clone();
            v.extend(r.iter().cloned());
            big.insert(v);
        }
        for r in &other.rows {
            let mut v = r.clone();
            v.extend(std::iter::repeat_n(self.k.zero(), n));
            big.insert(v);
        }
        let mut out = Subspace { k: self.k.clone(), dim: n, rows: Vec::new(), pivots: Vec::new() };
        for (row, &p) in big.rows.iter().zip(&big.pivots) {
            if p >= n {
                out.insert(row[n..].to_vec());
            }
        }
        out
    }
}
