//! Groebner bases and ideal arithmetic in presented rings.

mod buchberger;
pub mod linear;

use std::sync::{Arc, OnceLock};

use thiserror::Error;

pub use buchberger::{groebner, intersect_free, reduce, standard_monomials};

use crate::arith::Ring;
use crate::poly::{Monomial, Poly, PolyError, RingMap, RingRef};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroError {
    #[error("budget exceeded: more than {limit} {what}")]
    BudgetExceeded { what: &'static str, limit: u64 },
    #[error("Groebner bases need field coefficients, got {0}")]
    NotAField(String),
    #[error("quotient is not zero-dimensional")]
    NotZeroDimensional,
    #[error("ideals live in different rings")]
    AmbientMismatch,
    #[error("too many variables ({0})")]
    TooManyVariables(usize),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Limits for a single Groebner computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_pairs: usize,
    pub max_degree: u32,
}

impl Default for Budget {
    fn default() -> Self {
        Self { max_pairs: 200_000, max_degree: 120 }
    }
}

impl Budget {
    pub const ENV_PAIRS: &'static str = "LEVELFORGE_BUDGET_PAIRS";
    pub const ENV_DEGREE: &'static str = "LEVELFORGE_BUDGET_DEGREE";

    /// Default budget, with limits overridden by the environment.
    pub fn from_env() -> Self {
        let mut b = Self::default();
        if let Some(n) = std::env::var(Self::ENV_PAIRS).ok().and_then(|v| v.trim().parse().ok()) {
            b.max_pairs = n;
        }
        if let Some(n) = std::env::var(Self::ENV_DEGREE).ok().and_then(|v| v.trim().parse().ok()) {
            b.max_degree = n;
        }
        b
    }

    pub fn with_pairs(mut self, n: usize) -> Self {
        self.max_pairs = n;
        self
    }
}

/// An ideal of a presented ring. The ring's relations are implicitly part of
/// the ideal; the Groebner basis (which includes them) is computed once.
#[derive(Debug, Clone)]
pub struct Ideal<R: Ring> {
    ambient: RingRef<R>,
    gens: Vec<Poly<R::Elem>>,
    budget: Budget,
    gb: OnceLock<Vec<Poly<R::Elem>>>,
}

fn same_ring<R: Ring>(a: &RingRef<R>, b: &RingRef<R>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl<R: Ring> Ideal<R> {
    /// Generators are reduced modulo the ring relations; zeros and
    /// duplicates are dropped.
    pub fn new(ambient: RingRef<R>, gens: impl IntoIterator<Item = Poly<R::Elem>>) -> Self {
        let mut out: Vec<Poly<R::Elem>> = Vec::new();
        for g in gens {
            let g = ambient.nf(&g);
            if !g.is_zero() && !out.contains(&g) {
                out.push(g);
            }
        }
        Self { ambient, gens: out, budget: Budget::from_env(), gb: OnceLock::new() }
    }

    pub fn parse(ambient: RingRef<R>, gens: &[&str]) -> Result<Self, PolyError> {
        let gens = gens.iter().map(|s| ambient.parse(s)).collect::<Result<Vec<_>, _>>()?;
        Ok(Self::new(ambient, gens))
    }

    pub fn zero(ambient: RingRef<R>) -> Self {
        Self::new(ambient, [])
    }

    pub fn unit(ambient: RingRef<R>) -> Self {
        let one = ambient.one();
        Self::new(ambient, [one])
    }

    pub fn with_budget(mut self, budget: Budget) -> Self {
        self.budget = budget;
        self
    }

    pub fn ambient(&self) -> &RingRef<R> {
        &self.ambient
    }

    pub fn gens(&self) -> &[Poly<R::Elem>] {
        &self.gens
    }

    pub fn budget(&self) -> Budget {
        self.budget
    }

    fn derived(&self, gens: impl IntoIterator<Item = Poly<R::Elem>>) -> Self {
        Self::new(self.ambient.clone(), gens).with_budget(self.budget)
    }

    /// Reduced Groebner basis of `generators + relations` in the free ring.
    pub fn groebner(&self) -> Result<&[Poly<R::Elem>], GroError> {
        if let Some(gb) = self.gb.get() {
            return Ok(gb);
        }
        let mut all = self.ambient.basis().to_vec();
        all.extend(self.gens.iter().cloned());
        let gb = groebner(self.ambient.poly(), &all, &self.budget)?;
        Ok(self.gb.get_or_init(|| gb))
    }

    /// The reduced basis with the ring relations removed: the canonical
    /// description of the ideal inside the quotient ring.
    pub fn basis_in_ring(&self) -> Result<Vec<Poly<R::Elem>>, GroError> {
        Ok(self.groebner()?.iter().filter(|g| !self.ambient.is_zero(g)).cloned().collect())
    }

    pub fn reduce(&self, f: &Poly<R::Elem>) -> Result<Poly<R::Elem>, GroError> {
        Ok(reduce(self.ambient.poly(), f, self.groebner()?))
    }

    pub fn contains(&self, f: &Poly<R::Elem>) -> Result<bool, GroError> {
        Ok(self.reduce(f)?.is_zero())
    }

    pub fn contains_ideal(&self, other: &Ideal<R>) -> Result<bool, GroError> {
        self.check(other)?;
        for g in &other.gens {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_unit(&self) -> Result<bool, GroError> {
        Ok(self.groebner()?.iter().any(|g| g.lm().is_one()))
    }

    fn check(&self, other: &Ideal<R>) -> Result<(), GroError> {
        if same_ring(&self.ambient, &other.ambient) {
            Ok(())
        } else {
            Err(GroError::AmbientMismatch)
        }
    }

    pub fn sum(&self, other: &Ideal<R>) -> Result<Ideal<R>, GroError> {
        self.check(other)?;
        Ok(self.derived(self.gens.iter().chain(&other.gens).cloned()))
    }

    pub fn product(&self, other: &Ideal<R>) -> Result<Ideal<R>, GroError> {
        self.check(other)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for f in &self.gens {
            for g in &other.gens {
                gens.push(self.ambient.mul(f, g));
            }
        }
        Ok(self.derived(gens))
    }

    /// Intersection via an auxiliary variable and block elimination.
    pub fn intersect(&self, other: &Ideal<R>) -> Result<Ideal<R>, GroError> {
        self.check(other)?;
        let rel = self.ambient.basis();
        let f: Vec<_> = rel.iter().chain(&self.gens).cloned().collect();
        let g: Vec<_> = rel.iter().chain(&other.gens).cloned().collect();
        let gens = intersect_free(self.ambient.poly(), &f, &g, &self.budget)?;
        Ok(self.derived(gens))
    }

    /// `(I : f) = {g : g*f ∈ I}`.
    pub fn quotient(&self, f: &Poly<R::Elem>) -> Result<Ideal<R>, GroError> {
        let f = self.ambient.nf(f);
        if self.contains(&f)? {
            return Ok(Ideal::unit(self.ambient.clone()).with_budget(self.budget));
        }
        let poly = self.ambient.poly();
        let lhs: Vec<_> = self.ambient.basis().iter().chain(&self.gens).cloned().collect();
        let meet = intersect_free(poly, &lhs, std::slice::from_ref(&f), &self.budget)?;
        let gens = meet.iter().map(|h| poly.div_exact(h, &f)).collect::<Result<Vec<_>, _>>()?;
        Ok(self.derived(gens))
    }

    pub fn equal(&self, other: &Ideal<R>) -> Result<bool, GroError> {
        self.check(other)?;
        Ok(self.groebner()? == other.groebner()?)
    }

    pub fn standard_monomials(&self) -> Result<Vec<Monomial>, GroError> {
        let gb = self.groebner()?;
        standard_monomials(self.ambient.nvars(), gb.iter().map(|g| g.lm())).ok_or(GroError::NotZeroDimensional)
    }

    /// Vector-space dimension of the quotient ring by this ideal.
    pub fn quotient_dimension(&self) -> Result<usize, GroError> {
        Ok(self.standard_monomials()?.len())
    }

    /// The ideal generated by the images of the generators.
    pub fn map(&self, phi: &RingMap<R>) -> Result<Ideal<R>, GroError> {
        if !same_ring(&self.ambient, phi.source()) {
            return Err(GroError::AmbientMismatch);
        }
        Ok(Ideal::new(phi.target().clone(), self.gens.iter().map(|g| phi.apply(g))).with_budget(self.budget))
    }

    pub fn format(&self) -> String {
        let parts: Vec<String> = self.gens.iter().map(|g| self.ambient.format(g)).collect();
        format!("({})", parts.join(", "))
    }
}

/// `∩_g (0 : g)` over the generators `g` of `j`.
pub fn annihilator<R: Ring>(ring: &RingRef<R>, j: &Ideal<R>) -> Result<Ideal<R>, GroError> {
    if !same_ring(ring, j.ambient()) {
        return Err(GroError::AmbientMismatch);
    }
    let zero = Ideal::zero(ring.clone()).with_budget(j.budget());
    let mut acc: Option<Ideal<R>> = None;
    for g in j.gens() {
        let part = zero.quotient(g)?;
        acc = Some(match acc {
            None => part,
            Some(a) => a.intersect(&part)?,
        });
    }
    Ok(acc.unwrap_or_else(|| Ideal::unit(ring.clone()).with_budget(j.budget())))
}

#[cfg(test)]
mod tests;
