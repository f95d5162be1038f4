//! Sparse multivariate polynomials, presented quotient rings and ring maps.

mod monomial;
mod parse;
mod presented;

use std::cmp::Ordering;
use std::collections::HashMap;

pub use monomial::{InnerOrder, Monomial, MonomialOrder, MAX_VARS};
pub use presented::{PresentedRing, RingMap, RingRef};

use crate::arith::Ring;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("too many variables ({0}, at most {MAX_VARS})")]
    TooManyVariables(usize),
    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),
    #[error("ring map is not well defined: relation `{relation}` maps to `{image}`")]
    WellDefinedness { relation: String, image: String },
    #[error("expected {expected} images, got {got}")]
    ImageCount { expected: usize, got: usize },
    #[error("relation `{0}` has a non-invertible leading coefficient")]
    NonMonicRelation(String),
    #[error("relations do not form a Groebner basis over a non-field: S-pair leaves `{0}`")]
    NotAGroebnerBasis(String),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("division by `{0}` is not exact")]
    InexactDivision(String),
    #[error("Groebner computation failed: {0}")]
    Groebner(String),
}

/// A polynomial: terms sorted by decreasing monomial under the owning
/// ring's order, with no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<E> {
    terms: Vec<(Monomial, E)>,
}

impl<E> Default for Poly<E> {
    fn default() -> Self {
        Poly { terms: Vec::new() }
    }
}

impl<E> Poly<E> {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Monomial, E)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&(Monomial, E)> {
        self.terms.first()
    }

    /// Leading monomial; panics on the zero polynomial.
    pub fn lm(&self) -> Monomial {
        self.terms[0].0
    }

    pub fn lc(&self) -> &E {
        &self.terms[0].1
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.iter().map(|(m, _)| m)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    /// Whether any of the variables `lo..hi` occurs.
    pub fn involves_range(&self, lo: usize, hi: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.involves_range(lo, hi))
    }

    pub fn into_terms(self) -> Vec<(Monomial, E)> {
        self.terms
    }

    /// Wraps terms that are already sorted, nonzero and distinct.
    pub(crate) fn from_sorted(terms: Vec<(Monomial, E)>) -> Self {
        Poly { terms }
    }
}

/// A free polynomial ring: coefficient ring, variable names, monomial order.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyRing<R: Ring> {
    coeffs: R,
    names: Vec<String>,
    order: MonomialOrder,
}

impl<R: Ring> PolyRing<R> {
    pub fn new<S: AsRef<str>>(coeffs: R, names: &[S], order: MonomialOrder) -> Result<Self, PolyError> {
        if names.len() > MAX_VARS {
            return Err(PolyError::TooManyVariables(names.len()));
        }
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(PolyError::DuplicateVariable(n.clone()));
            }
        }
        Ok(Self { coeffs, names, order })
    }

    pub fn coeffs(&self) -> &R {
        &self.coeffs
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn with_order(&self, order: MonomialOrder) -> Self {
        Self { coeffs: self.coeffs.clone(), names: self.names.clone(), order }
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp(a, b)
    }

    pub fn zero(&self) -> Poly<R::Elem> {
        Poly::zero()
    }

    pub fn one(&self) -> Poly<R::Elem> {
        self.constant(self.coeffs.one())
    }

    pub fn constant(&self, c: R::Elem) -> Poly<R::Elem> {
        self.term(Monomial::ONE, c)
    }

    pub fn from_int(&self, n: i64) -> Poly<R::Elem> {
        self.constant(self.coeffs.from_i64(n))
    }

    pub fn term(&self, m: Monomial, c: R::Elem) -> Poly<R::Elem> {
        if self.coeffs.is_zero(&c) {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    pub fn var(&self, i: usize) -> Poly<R::Elem> {
        assert!(i < self.nvars(), "variable index {i} out of range");
        self.term(Monomial::var(i), self.coeffs.one())
    }

    pub fn var_named(&self, name: &str) -> Result<Poly<R::Elem>, PolyError> {
        self.var_index(name)
            .map(|i| self.var(i))
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(&self, terms: impl IntoIterator<Item = (Monomial, R::Elem)>) -> Poly<R::Elem> {
        let mut acc: HashMap<Monomial, R::Elem> = HashMap::new();
        for (m, c) in terms {
            let entry = acc.entry(m).or_insert_with(|| self.coeffs.zero());
            *entry = self.coeffs.add(entry, &c);
        }
        let mut terms: Vec<(Monomial, R::Elem)> =
            acc.into_iter().filter(|(_, c)| !self.coeffs.is_zero(c)).collect();
        terms.sort_by(|a, b| self.cmp(&b.0, &a.0));
        Poly { terms }
    }

    /// Re-sorts a polynomial that was built under another order.
    pub fn adopt(&self, f: Poly<R::Elem>) -> Poly<R::Elem> {
        let mut terms = f.terms;
        terms.sort_by(|a, b| self.cmp(&b.0, &a.0));
        Poly { terms }
    }

    fn merge(
        &self,
        f: &Poly<R::Elem>,
        g: &Poly<R::Elem>,
        gmul: impl Fn(&R::Elem) -> R::Elem,
        gshift: Monomial,
    ) -> Poly<R::Elem> {
        let k = &self.coeffs;
        let mut out = Vec::with_capacity(f.terms.len() + g.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < f.terms.len() && j < g.terms.len() {
            let gm = g.terms[j].0.mul(&gshift);
            match self.cmp(&f.terms[i].0, &gm) {
                Ordering::Greater => {
                    out.push(f.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((gm, gmul(&g.terms[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = k.add(&f.terms[i].1, &gmul(&g.terms[j].1));
                    if !k.is_zero(&c) {
                        out.push((gm, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&f.terms[i..]);
        out.extend(g.terms[j..].iter().map(|(m, c)| (m.mul(&gshift), gmul(c))));
        Poly { terms: out }
    }

    pub fn add(&self, f: &Poly<R::Elem>, g: &Poly<R::Elem>) -> Poly<R::Elem> {
        self.merge(f, g, |c| c.clone(), Monomial::ONE)
    }

    pub fn sub(&self, f: &Poly<R::Elem>, g: &Poly<R::Elem>) -> Poly<R::Elem> {
        self.merge(f, g, |c| self.coeffs.neg(c), Monomial::ONE)
    }

    /// `f - c * m * g`.
    pub fn sub_mul_term(&self, f: &Poly<R::Elem>, c: &R::Elem, m: Monomial, g: &Poly<R::Elem>) -> Poly<R::Elem> {
        let nc = self.coeffs.neg(c);
        self.merge(f, g, |x| self.coeffs.mul(&nc, x), m)
    }

    pub fn neg(&self, f: &Poly<R::Elem>) -> Poly<R::Elem> {
        Poly { terms: f.terms.iter().map(|(m, c)| (*m, self.coeffs.neg(c))).collect() }
    }

    pub fn scale(&self, f: &Poly<R::Elem>, c: &R::Elem) -> Poly<R::Elem> {
        Poly {
            terms: f
                .terms
                .iter()
                .map(|(m, x)| (*m, self.coeffs.mul(x, c)))
                .filter(|(_, x)| !self.coeffs.is_zero(x))
                .collect(),
        }
    }

    pub fn mul_term(&self, f: &Poly<R::Elem>, m: Monomial, c: &R::Elem) -> Poly<R::Elem> {
        Poly {
            terms: f
                .terms
                .iter()
                .map(|(fm, x)| (fm.mul(&m), self.coeffs.mul(x, c)))
                .filter(|(_, x)| !self.coeffs.is_zero(x))
                .collect(),
        }
    }

    pub fn mul(&self, f: &Poly<R::Elem>, g: &Poly<R::Elem>) -> Poly<R::Elem> {
        let (small, large) = if f.len() <= g.len() { (f, g) } else { (g, f) };
        if small.is_zero() {
            return Poly::zero();
        }
        if small.len() <= 4 {
            let mut acc = Poly::zero();
            for (m, c) in &small.terms {
                let part = self.mul_term(large, *m, c);
                acc = self.add(&acc, &part);
            }
            return acc;
        }
        let mut acc: HashMap<Monomial, R::Elem> = HashMap::with_capacity(f.len() * 2);
        for (m1, c1) in &small.terms {
            for (m2, c2) in &large.terms {
                let m = m1.mul(m2);
                let prod = self.coeffs.mul(c1, c2);
                match acc.get_mut(&m) {
                    Some(x) => *x = self.coeffs.add(x, &prod),
                    None => {
                        acc.insert(m, prod);
                    }
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !self.coeffs.is_zero(c)).collect();
        terms.sort_by(|a, b| self.cmp(&b.0, &a.0));
        Poly { terms }
    }

    /// Unreduced power in the free ring.
    pub fn pow(&self, f: &Poly<R::Elem>, e: u32) -> Poly<R::Elem> {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, f);
        }
        acc
    }

    /// Divides by the leading coefficient. Panics if it is not a unit.
    pub fn make_monic(&self, f: &Poly<R::Elem>) -> Poly<R::Elem> {
        match f.lead() {
            None => Poly::zero(),
            Some((_, c)) if self.coeffs.is_one(c) => f.clone(),
            Some((_, c)) => {
                let inv = self.coeffs.inv(c).expect("leading coefficient must be a unit");
                self.scale(f, &inv)
            }
        }
    }

    /// Exact division `f / g` in the free polynomial ring.
    pub fn div_exact(&self, f: &Poly<R::Elem>, g: &Poly<R::Elem>) -> Result<Poly<R::Elem>, PolyError> {
        let err = || PolyError::InexactDivision(self.format(g));
        let (gm, gc) = g.lead().ok_or_else(err)?;
        let gc_inv = self.coeffs.inv(gc).ok_or_else(err)?;
        let mut rem = f.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.lead().cloned() {
            let q = m.checked_div(gm).ok_or_else(err)?;
            let qc = self.coeffs.mul(&c, &gc_inv);
            rem = self.sub_mul_term(&rem, &qc, q, g);
            quot.push((q, qc));
        }
        Ok(Poly { terms: quot })
    }

    /// Substitutes `images[i]` (polynomials of `target`) for variable `i`,
    /// without reduction.
    pub fn substitute(&self, f: &Poly<R::Elem>, target: &PolyRing<R>, images: &[Poly<R::Elem>]) -> Poly<R::Elem> {
        let mut powers: Vec<Vec<Poly<R::Elem>>> = vec![vec![target.one()]; self.nvars()];
        let mut acc = target.zero();
        for (m, c) in &f.terms {
            let mut t = target.constant(c.clone());
            for (i, pw) in powers.iter_mut().enumerate() {
                let e = m.exp(i) as usize;
                while pw.len() <= e {
                    let next = target.mul(pw.last().unwrap(), &images[i]);
                    pw.push(next);
                }
                if e > 0 {
                    t = target.mul(&t, &pw[e]);
                }
            }
            acc = target.add(&acc, &t);
        }
        acc
    }

    /// Moves variable `i` to variable `map[i]` of `target`.
    pub fn rename(&self, f: &Poly<R::Elem>, target: &PolyRing<R>, map: &[usize]) -> Poly<R::Elem> {
        target.adopt(Poly { terms: f.terms.iter().map(|(m, c)| (m.remap(map), c.clone())).collect() })
    }

    /// Evaluates each term of `f` in the coefficient ring.
    pub fn evaluate(&self, f: &Poly<R::Elem>, point: &[R::Elem]) -> R::Elem {
        let k = &self.coeffs;
        let mut acc = k.zero();
        for (m, c) in &f.terms {
            let mut t = c.clone();
            for (i, x) in point.iter().enumerate() {
                let e = m.exp(i);
                if e > 0 {
                    t = k.mul(&t, &k.pow(x, e as u64));
                }
            }
            acc = k.add(&acc, &t);
        }
        acc
    }

    /// Coefficient of a monomial.
    pub fn coeff(&self, f: &Poly<R::Elem>, m: &Monomial) -> R::Elem {
        f.terms
            .binary_search_by(|(x, _)| self.cmp(m, x))
            .map(|i| f.terms[i].1.clone())
            .unwrap_or_else(|_| self.coeffs.zero())
    }

    /// Canonical text: terms in decreasing order, `*` between factors.
    pub fn format(&self, f: &Poly<R::Elem>) -> String {
        if f.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in f.terms.iter().enumerate() {
            let cs = self.coeffs.format(c);
            let (neg, cs) = match cs.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, cs),
            };
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                out.push_str(&cs);
            } else {
                if cs != "1" {
                    out.push_str(&cs);
                    out.push('*');
                }
                out.push_str(&m.with_names(&self.names).to_string());
            }
        }
        out
    }

    /// Parses the text format (integers, `n/m` literals, `+ - * ^` and parentheses).
    pub fn parse(&self, s: &str) -> Result<Poly<R::Elem>, PolyError> {
        parse::Parser::new(self, s).parse()
    }
}
