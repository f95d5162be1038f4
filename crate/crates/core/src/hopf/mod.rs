//! Finite commutative Hopf algebras over a presented base, their points and
//! primitive elements.
//!
//! All axioms are checked on generators only. That suffices because every
//! map involved (comultiplication, counit, their tensor products) is an
//! algebra homomorphism — a fact verified when each `RingMap` is built — and
//! algebra maps agreeing on generators agree everywhere.

use std::sync::Arc;

use thiserror::Error;

use crate::arith::Ring;
use crate::gro::{annihilator, GroError, Ideal};
use crate::poly::{Poly, PolyError, PresentedRing, RingMap, RingRef};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HopfError {
    #[error("{axiom} fails on generator `{generator}`")]
    Axiom { axiom: &'static str, generator: String },
    #[error("expected {expected} images, got {got}")]
    ImageCount { expected: usize, got: usize },
    #[error("points live on different schemes or over different rings")]
    Mismatch,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Gro(#[from] GroError),
}

/// `B ⊗ B` over the base with its two inclusions.
#[derive(Debug, Clone)]
pub struct TensorSquare<R: Ring> {
    pub ring: RingRef<R>,
    pub left: RingMap<R>,
    pub right: RingMap<R>,
}

#[derive(Debug, Clone)]
pub struct HopfAlgebra<R: Ring> {
    name: String,
    ring: RingRef<R>,
    base: RingRef<R>,
    base_incl: RingMap<R>,
    tensor: TensorSquare<R>,
    comult: RingMap<R>,
    counit: RingMap<R>,
}

impl<R: Ring> HopfAlgebra<R> {
    /// Builds a Hopf algebra on `ring`, whose trailing `base_vars` variables
    /// are base parameters. `comult` gives `Δ(g)` in the tensor square for
    /// every non-base generator `g`; `counit` gives `ε(g)` in the base.
    pub fn new(
        name: &str,
        ring: RingRef<R>,
        comult: impl FnOnce(&TensorSquare<R>) -> Vec<Poly<R::Elem>>,
        counit: impl FnOnce(&RingRef<R>) -> Vec<Poly<R::Elem>>,
    ) -> Result<Arc<Self>, HopfError> {
        let (tring, left, right) = ring.tensor_square()?;
        let tensor = TensorSquare { ring: tring, left, right };
        let (base, base_incl) = ring.base_ring()?;
        let gens = ring.nvars() - ring.base_vars();
        let delta = comult(&tensor);
        if delta.len() != gens {
            return Err(HopfError::ImageCount { expected: gens, got: delta.len() });
        }
        let eps = counit(&base);
        if eps.len() != gens {
            return Err(HopfError::ImageCount { expected: gens, got: eps.len() });
        }
        let tb = tensor.ring.nvars() - ring.base_vars();
        let delta_full = delta.into_iter().chain((0..ring.base_vars()).map(|i| tensor.ring.var(tb + i))).collect();
        let eps_full = eps.into_iter().chain((0..ring.base_vars()).map(|i| base.var(i))).collect();
        let comult = RingMap::new(ring.clone(), tensor.ring.clone(), delta_full)?;
        let counit = RingMap::new(ring.clone(), base.clone(), eps_full)?;
        let h = Self { name: name.to_string(), ring, base, base_incl, tensor, comult, counit };
        h.check_axioms()?;
        Ok(Arc::new(h))
    }

    /// Convenience constructor with images written in the text format; the
    /// tensor square names the copies of `x` as `x_1`, `x_2`.
    pub fn from_strs(name: &str, ring: RingRef<R>, comult: &[&str], counit: &[&str]) -> Result<Arc<Self>, HopfError> {
        let err = std::cell::RefCell::new(None);
        let parse_all = |r: &RingRef<R>, items: &[&str]| -> Vec<Poly<R::Elem>> {
            items.iter().filter_map(|s| r.parse(s).map_err(|e| *err.borrow_mut() = Some(e)).ok()).collect()
        };
        let h = Self::new(name, ring, |t| parse_all(&t.ring, comult), |b| parse_all(b, counit));
        if let Some(e) = err.into_inner() {
            return Err(e.into());
        }
        h
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ring(&self) -> &RingRef<R> {
        &self.ring
    }

    pub fn base(&self) -> &RingRef<R> {
        &self.base
    }

    pub fn tensor(&self) -> &TensorSquare<R> {
        &self.tensor
    }

    pub fn comult(&self) -> &RingMap<R> {
        &self.comult
    }

    pub fn counit(&self) -> &RingMap<R> {
        &self.counit
    }

    /// Number of non-base generators.
    pub fn ngens(&self) -> usize {
        self.ring.nvars() - self.ring.base_vars()
    }

    pub fn comultiply(&self, f: &Poly<R::Elem>) -> Poly<R::Elem> {
        self.comult.apply(f)
    }

    /// `ε(f)` as an element of the algebra (through the base inclusion).
    pub fn counit_in_ring(&self, f: &Poly<R::Elem>) -> Poly<R::Elem> {
        self.base_incl.apply(&self.counit.apply(f))
    }

    fn check_axioms(&self) -> Result<(), HopfError> {
        let n = self.ngens();
        let b = self.ring.base_vars();
        let (t3, _) = self.ring.tensor_power(3)?;
        let t2 = &self.tensor.ring;
        // slot maps T2 -> T3
        let slot = |first: usize, second: usize| -> Vec<usize> {
            (0..n).map(|g| first * n + g).chain((0..n).map(|g| second * n + g)).chain((0..b).map(|i| 3 * n + i)).collect()
        };
        let into_t3 = |f: &Poly<R::Elem>, first: usize, second: usize| t3.nf(&t2.poly().rename(f, t3.poly(), &slot(first, second)));
        let deltas: Vec<Poly<R::Elem>> = (0..n).map(|g| self.comult.images()[g].clone()).collect();
        let base_t3: Vec<Poly<R::Elem>> = (0..b).map(|i| t3.var(3 * n + i)).collect();
        // (Δ⊗id): x_1 ↦ Δ(x) in slots (1,2), x_2 ↦ x_3
        let mut left_images: Vec<Poly<R::Elem>> = deltas.iter().map(|d| into_t3(d, 0, 1)).collect();
        left_images.extend((0..n).map(|g| t3.var(2 * n + g)));
        left_images.extend(base_t3.iter().cloned());
        // (id⊗Δ): x_1 ↦ x_1, x_2 ↦ Δ(x) in slots (2,3)
        let mut right_images: Vec<Poly<R::Elem>> = (0..n).map(|g| t3.var(g)).collect();
        right_images.extend(deltas.iter().map(|d| into_t3(d, 1, 2)));
        right_images.extend(base_t3.iter().cloned());
        let dl = RingMap::new(t2.clone(), t3.clone(), left_images)?;
        let dr = RingMap::new(t2.clone(), t3.clone(), right_images)?;
        for (g, d) in deltas.iter().enumerate() {
            if !t3.equal(&dl.apply(d), &dr.apply(d)) {
                return Err(HopfError::Axiom { axiom: "coassociativity", generator: self.ring.names()[g].clone() });
            }
        }
        // (ε⊗id)∘Δ = id = (id⊗ε)∘Δ
        let eps: Vec<Poly<R::Elem>> = (0..n).map(|g| self.counit_in_ring(&self.ring.var(g))).collect();
        let base_r: Vec<Poly<R::Elem>> = (0..b).map(|i| self.ring.var(n + i)).collect();
        let gens_r: Vec<Poly<R::Elem>> = (0..n).map(|g| self.ring.var(g)).collect();
        let el = RingMap::new(t2.clone(), self.ring.clone(), [eps.clone(), gens_r.clone(), base_r.clone()].concat())?;
        let er = RingMap::new(t2.clone(), self.ring.clone(), [gens_r.clone(), eps, base_r].concat())?;
        for (g, d) in deltas.iter().enumerate() {
            if !self.ring.equal(&el.apply(d), &gens_r[g]) {
                return Err(HopfError::Axiom { axiom: "left counit", generator: self.ring.names()[g].clone() });
            }
            if !self.ring.equal(&er.apply(d), &gens_r[g]) {
                return Err(HopfError::Axiom { axiom: "right counit", generator: self.ring.names()[g].clone() });
            }
        }
        Ok(())
    }

    /// The augmentation ideal `(g - ε(g))`.
    pub fn augmentation_ideal(&self) -> Ideal<R> {
        let gens = (0..self.ngens()).map(|g| {
            let x = self.ring.var(g);
            self.ring.sub(&x, &self.counit_in_ring(&x))
        });
        Ideal::new(self.ring.clone(), gens)
    }

    /// Annihilator of the augmentation ideal: the scheme of primitive points.
    pub fn primitive_ideal(&self) -> Result<Ideal<R>, HopfError> {
        Ok(annihilator(&self.ring, &self.augmentation_ideal())?)
    }

    /// `H^{⊗k}` with the componentwise Hopf structure (the group `G^k`).
    pub fn power(self: &Arc<Self>, k: usize) -> Result<Arc<HopfAlgebra<R>>, HopfError> {
        let (pk, incls) = self.ring.tensor_power(k)?;
        let n = self.ngens();
        Self::new(
            &format!("{}^{k}", self.name),
            pk.clone(),
            |t| {
                // copy j of Δ(x): Δ's slots 1,2 go to copy j of t's left/right halves
                let mut out = Vec::with_capacity(n * k);
                for incl in &incls {
                    let to_left = incl.then(&t.left).expect("compatible");
                    let to_right = incl.then(&t.right).expect("compatible");
                    for g in 0..n {
                        let d = &self.comult.images()[g];
                        let images: Vec<Poly<R::Elem>> = (0..n)
                            .map(|h| to_left.images()[h].clone())
                            .chain((0..n).map(|h| to_right.images()[h].clone()))
                            .chain((0..self.ring.base_vars()).map(|i| to_left.images()[n + i].clone()))
                            .collect();
                        out.push(self.tensor.ring.substitute(d, &t.ring, &images));
                    }
                }
                out
            },
            |b| {
                let mut out = Vec::with_capacity(n * k);
                for _ in 0..k {
                    for g in 0..n {
                        let e = &self.counit.images()[g];
                        let images: Vec<Poly<R::Elem>> = (0..self.base.nvars()).map(|i| b.var(i)).collect();
                        out.push(self.base.substitute(e, b, &images));
                    }
                }
                out
            },
        )
    }
}

/// A `T`-valued point: an algebra map `O_G → O_T` over the base.
#[derive(Debug, Clone)]
pub struct GroupPoint<R: Ring> {
    host: Arc<HopfAlgebra<R>>,
    map: RingMap<R>,
}

impl<R: Ring> GroupPoint<R> {
    /// `coords` are the images of the non-base generators, `base` the images
    /// of the base parameters. Relations of the host are checked.
    pub fn new(
        host: Arc<HopfAlgebra<R>>,
        target: RingRef<R>,
        coords: Vec<Poly<R::Elem>>,
        base: Vec<Poly<R::Elem>>,
    ) -> Result<Self, HopfError> {
        if coords.len() != host.ngens() {
            return Err(HopfError::ImageCount { expected: host.ngens(), got: coords.len() });
        }
        let images = coords.into_iter().chain(base).collect();
        let map = RingMap::new(host.ring.clone(), target, images)?;
        Ok(Self { host, map })
    }

    /// The identity point: `g ↦ ε(g)`, with the given base images.
    pub fn identity(host: Arc<HopfAlgebra<R>>, target: RingRef<R>, base: Vec<Poly<R::Elem>>) -> Result<Self, HopfError> {
        let bmap = RingMap::new(host.base.clone(), target.clone(), base.clone())?;
        let coords = host.counit.images()[..host.ngens()].iter().map(|e| bmap.apply(e)).collect();
        Self::new(host, target, coords, base)
    }

    pub fn host(&self) -> &Arc<HopfAlgebra<R>> {
        &self.host
    }

    pub fn target(&self) -> &RingRef<R> {
        self.map.target()
    }

    pub fn coords(&self) -> &[Poly<R::Elem>] {
        &self.map.images()[..self.host.ngens()]
    }

    pub fn base_images(&self) -> &[Poly<R::Elem>] {
        &self.map.images()[self.host.ngens()..]
    }

    pub fn map(&self) -> &RingMap<R> {
        &self.map
    }

    fn compatible(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.host, &other.host)
            && **self.target() == **other.target()
            && self.base_images().iter().zip(other.base_images()).all(|(a, b)| self.target().equal(a, b))
    }

    /// Convolution `(P ⊗ Q) ∘ Δ`.
    pub fn add(&self, other: &Self) -> Result<Self, HopfError> {
        if !self.compatible(other) {
            return Err(HopfError::Mismatch);
        }
        let images: Vec<Poly<R::Elem>> =
            self.coords().iter().chain(other.coords()).chain(self.base_images()).cloned().collect();
        let pq = RingMap::new(self.host.tensor.ring.clone(), self.target().clone(), images)?;
        let coords = self.host.comult.images()[..self.host.ngens()].iter().map(|d| pq.apply(d)).collect();
        Self::new(self.host.clone(), self.target().clone(), coords, self.base_images().to_vec())
    }

    /// `[m]P`, the `m`-fold sum; `[0]P` is the identity.
    pub fn scale(&self, m: u64) -> Result<Self, HopfError> {
        let mut acc = Self::identity(self.host.clone(), self.target().clone(), self.base_images().to_vec())?;
        for _ in 0..m {
            acc = acc.add(self)?;
        }
        Ok(acc)
    }

    pub fn equal(&self, other: &Self) -> bool {
        self.compatible(other) && self.coords().iter().zip(other.coords()).all(|(a, b)| self.target().equal(a, b))
    }
}

/// `μ_n = Spec k[y]/(y^n - 1)` with `Δ(y) = y⊗y`.
pub fn mu<R: Ring>(coeffs: R, n: u32) -> Result<Arc<HopfAlgebra<R>>, HopfError> {
    let rel = format!("y^{n} - 1");
    let ring = PresentedRing::build(coeffs, &["y"], Default::default(), &[&rel])?;
    HopfAlgebra::from_strs(&format!("mu_{n}"), ring, &["y_1*y_2"], &["1"])
}

/// `α_p = Spec F_p[x]/(x^p)` with `Δ(x) = x⊗1 + 1⊗x`.
pub fn alpha<R: Ring>(coeffs: R) -> Result<Arc<HopfAlgebra<R>>, HopfError> {
    let p = coeffs.characteristic();
    let rel = format!("x^{p}");
    let ring = PresentedRing::build(coeffs, &["x"], Default::default(), &[&rel])?;
    HopfAlgebra::from_strs(&format!("alpha_{p}"), ring, &["x_1 + x_2"], &["0"])
}

/// The constant group `Z/n` as functions on `n` points: idempotents
/// `e1 .. e{n-1}` with `e0 = 1 - Σ e_i` implicit, `Δ(e_k) = Σ_{i+j≡k} e_i⊗e_j`.
pub fn constant_group<R: Ring>(coeffs: R, n: u32) -> Result<Arc<HopfAlgebra<R>>, HopfError> {
    assert!(n >= 2, "constant group of order at least 2");
    let m = n as usize - 1;
    let names: Vec<String> = (1..=m).map(|i| format!("e{i}")).collect();
    let poly = crate::poly::PolyRing::new(coeffs, &names, Default::default())?;
    let mut rels = Vec::new();
    for i in 0..m {
        let ei = poly.var(i);
        rels.push(poly.sub(&poly.mul(&ei, &ei), &ei));
        for j in i + 1..m {
            rels.push(poly.mul(&ei, &poly.var(j)));
        }
    }
    let ring = PresentedRing::new(poly, 0, rels)?;
    HopfAlgebra::new(
        &format!("Z/{n}"),
        ring,
        |t| {
            let idem = |k: usize, offset: usize| -> Poly<R::Elem> {
                if k == 0 {
                    (0..m).fold(t.ring.one(), |acc, i| t.ring.sub(&acc, &t.ring.var(offset + i)))
                } else {
                    t.ring.var(offset + k - 1)
                }
            };
            let n = n as usize;
            (1..n)
                .map(|k| {
                    (0..n).fold(t.ring.zero(), |acc, i| t.ring.add(&acc, &t.ring.mul(&idem(i, 0), &idem((k + n - i) % n, m))))
                })
                .collect()
        },
        |b| vec![b.zero(); m],
    )
}
