use std::cmp::Ordering;
use std::collections::BTreeMap;

use super::{Budget, GroError};
use crate::arith::Ring;
use crate::poly::{InnerOrder, Monomial, MonomialOrder, Poly, PolyRing, MAX_VARS};

/// `f - c*m*g` where the leading term of `c*m*g` is known to cancel the
/// leading term of `f[start..]`.
fn cancel_lead<R: Ring>(
    ring: &PolyRing<R>,
    f: &[(Monomial, R::Elem)],
    c: &R::Elem,
    m: Monomial,
    g: &[(Monomial, R::Elem)],
) -> Vec<(Monomial, R::Elem)> {
    let k = ring.coeffs();
    let nc = k.neg(c);
    let (f, g) = (&f[1..], &g[1..]);
    let mut out = Vec::with_capacity(f.len() + g.len());
    let (mut i, mut j) = (0, 0);
    while i < f.len() && j < g.len() {
        let gm = g[j].0.mul(&m);
        match ring.cmp(&f[i].0, &gm) {
            Ordering::Greater => {
                out.push(f[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((gm, k.mul(&nc, &g[j].1)));
                j += 1;
            }
            Ordering::Equal => {
                let x = k.add(&f[i].1, &k.mul(&nc, &g[j].1));
                if !k.is_zero(&x) {
                    out.push((gm, x));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&f[i..]);
    out.extend(g[j..].iter().map(|(gm, x)| (gm.mul(&m), k.mul(&nc, x))));
    out
}

/// Full normal form of `f` with respect to `basis` (every element must have
/// a unit leading coefficient). Over a field and with a Groebner basis the
/// result is the unique normal form.
pub fn reduce<R: Ring>(ring: &PolyRing<R>, f: &Poly<R::Elem>, basis: &[Poly<R::Elem>]) -> Poly<R::Elem> {
    if basis.is_empty() || f.is_zero() {
        return f.clone();
    }
    let k = ring.coeffs();
    let lms: Vec<Monomial> = basis.iter().map(|g| g.lm()).collect();
    let inv_lcs: Vec<Option<R::Elem>> =
        basis.iter().map(|g| if k.is_one(g.lc()) { None } else { Some(k.inv(g.lc()).expect("unit leading coefficient")) }).collect();
    let mut rem: Vec<(Monomial, R::Elem)> = f.terms().to_vec();
    let mut out = Vec::new();
    while let Some((m, c)) = rem.first().cloned() {
        match lms.iter().position(|l| l.divides(&m)) {
            Some(idx) => {
                let q = m.div(&lms[idx]);
                let c = match &inv_lcs[idx] {
                    Some(inv) => k.mul(&c, inv),
                    None => c,
                };
                rem = cancel_lead(ring, &rem, &c, q, basis[idx].terms());
            }
            None => {
                out.push((m, c));
                // Peel off all leading irreducible terms at once.
                let mut n = 1;
                while n < rem.len() && !lms.iter().any(|l| l.divides(&rem[n].0)) {
                    out.push(rem[n].clone());
                    n += 1;
                }
                rem.drain(..n);
            }
        }
    }
    Poly::from_sorted(out)
}

#[derive(Debug, Clone, Copy)]
struct Pair {
    lcm: Monomial,
}

struct State<'a, R: Ring> {
    ring: &'a PolyRing<R>,
    polys: Vec<Poly<R::Elem>>,
    active: Vec<bool>,
    pairs: BTreeMap<(u32, usize, usize), Pair>,
}

impl<R: Ring> State<'_, R> {
    fn active_basis(&self) -> Vec<Poly<R::Elem>> {
        self.polys.iter().zip(&self.active).filter(|(_, a)| **a).map(|(p, _)| p.clone()).collect()
    }

    /// Gebauer–Möller update with a new (monic, reduced) element.
    fn update(&mut self, h: Poly<R::Elem>) {
        let k = self.polys.len();
        let hm = h.lm();
        // Candidate pairs (i, k).
        let mut cand: Vec<(usize, Monomial, bool)> = (0..k)
            .filter(|&i| self.active[i])
            .map(|i| {
                let gm = self.polys[i].lm();
                (i, gm.lcm(&hm), gm.is_coprime(&hm))
            })
            .collect();
        // Criterion M: drop pairs whose lcm is a proper multiple of another's.
        let lcms: Vec<Monomial> = cand.iter().map(|c| c.1).collect();
        cand.retain(|c| !lcms.iter().any(|l| *l != c.1 && l.divides(&c.1)));
        // Criterion F: one pair per lcm; a coprime member kills the class.
        let mut by_lcm: BTreeMap<Monomial, (usize, bool)> = BTreeMap::new();
        for (i, l, coprime) in &cand {
            let e = by_lcm.entry(*l).or_insert((*i, false));
            e.1 |= *coprime;
        }
        // Criterion B on existing pairs.
        self.pairs.retain(|&(_, i, j), p| {
            !(hm.divides(&p.lcm)
                && self.polys[i].lm().lcm(&hm) != p.lcm
                && self.polys[j].lm().lcm(&hm) != p.lcm)
        });
        for (i, active) in self.active.iter_mut().enumerate() {
            if *active && hm.divides(&self.polys[i].lm()) {
                *active = false;
            }
        }
        self.polys.push(h);
        self.active.push(true);
        for (l, (i, coprime)) in by_lcm {
            if !coprime {
                self.pairs.insert((l.degree(), i, k), Pair { lcm: l });
            }
        }
    }

    fn spoly(&self, i: usize, j: usize, l: Monomial) -> Poly<R::Elem> {
        let (f, g) = (&self.polys[i], &self.polys[j]);
        let one = self.ring.coeffs().one();
        let a = self.ring.mul_term(f, l.div(&f.lm()), &one);
        Poly::from_sorted(cancel_lead(self.ring, a.terms(), &one, l.div(&g.lm()), g.terms()))
    }
}

/// Reduced Groebner basis of the ideal generated by `gens`, sorted by
/// increasing leading monomial. Pairs are processed by the normal strategy
/// (smallest lcm degree, then smallest indices).
pub fn groebner<R: Ring>(
    ring: &PolyRing<R>,
    gens: &[Poly<R::Elem>],
    budget: &Budget,
) -> Result<Vec<Poly<R::Elem>>, GroError> {
    if !ring.coeffs().is_field() {
        return Err(GroError::NotAField(ring.coeffs().name()));
    }
    let mut input: Vec<Poly<R::Elem>> = gens.iter().filter(|g| !g.is_zero()).map(|g| ring.make_monic(g)).collect();
    input.sort_by(|a, b| ring.cmp(&a.lm(), &b.lm()).then(a.len().cmp(&b.len())));
    input.dedup();
    let mut st = State { ring, polys: Vec::new(), active: Vec::new(), pairs: BTreeMap::new() };
    for g in input {
        let basis = st.active_basis();
        let r = reduce(ring, &g, &basis);
        if r.is_zero() {
            continue;
        }
        if r.lm().is_one() {
            return Ok(vec![ring.one()]);
        }
        st.update(ring.make_monic(&r));
    }
    let mut processed = 0usize;
    let mut basis = st.active_basis();
    let mut stale = false;
    while let Some(((deg, i, j), pair)) = st.pairs.pop_first() {
        processed += 1;
        if processed > budget.max_pairs {
            return Err(GroError::BudgetExceeded { what: "pairs", limit: budget.max_pairs as u64 });
        }
        if deg > budget.max_degree {
            return Err(GroError::BudgetExceeded { what: "degree", limit: budget.max_degree as u64 });
        }
        if stale {
            basis = st.active_basis();
            stale = false;
        }
        let s = st.spoly(i, j, pair.lcm);
        let r = reduce(ring, &s, &basis);
        if r.is_zero() {
            continue;
        }
        if r.lm().is_one() {
            return Ok(vec![ring.one()]);
        }
        st.update(ring.make_monic(&r));
        stale = true;
    }
    let minimal = st.active_basis();
    let mut out = Vec::with_capacity(minimal.len());
    for (idx, g) in minimal.iter().enumerate() {
        let others: Vec<Poly<R::Elem>> =
            minimal.iter().enumerate().filter(|(j, _)| *j != idx).map(|(_, p)| p.clone()).collect();
        out.push(reduce(ring, g, &others));
    }
    out.sort_by(|a, b| ring.cmp(&a.lm(), &b.lm()));
    Ok(out)
}

/// Generators of `(f) ∩ (g)` in the free polynomial ring, via `u*F + (1-u)*G`
/// and elimination of `u`.
pub fn intersect_free<R: Ring>(
    ring: &PolyRing<R>,
    f: &[Poly<R::Elem>],
    g: &[Poly<R::Elem>],
    budget: &Budget,
) -> Result<Vec<Poly<R::Elem>>, GroError> {
    let n = ring.nvars();
    if n + 1 > MAX_VARS {
        return Err(GroError::TooManyVariables(n + 1));
    }
    let mut names = vec!["_u".to_string()];
    names.extend(ring.names().iter().cloned());
    let inner = match ring.order() {
        MonomialOrder::Lex => InnerOrder::Lex,
        other => other.inner(),
    };
    let big = PolyRing::new(ring.coeffs().clone(), &names, MonomialOrder::Block { elim: 1, inner })?;
    let up: Vec<usize> = (1..=n).collect();
    let down: Vec<usize> = std::iter::once(0).chain(0..n).collect();
    let u = big.var(0);
    let one_minus_u = big.sub(&big.one(), &u);
    let mut gens = Vec::with_capacity(f.len() + g.len());
    for p in f {
        gens.push(big.mul(&u, &ring.rename(p, &big, &up)));
    }
    for p in g {
        gens.push(big.mul(&one_minus_u, &ring.rename(p, &big, &up)));
    }
    let gb = groebner(&big, &gens, budget)?;
    Ok(gb.into_iter().filter(|p| !p.involves_range(0, 1)).map(|p| big.rename(&p, ring, &down[..n + 1])).collect())
}

/// Standard monomials of a zero-dimensional leading-term ideal in `n`
/// variables, or `None` if some variable has no pure power among `lms`.
pub fn standard_monomials(n: usize, lms: impl IntoIterator<Item = Monomial>) -> Option<Vec<Monomial>> {
    let lms: Vec<Monomial> = lms.into_iter().collect();
    if lms.iter().any(|m| m.is_one()) {
        return Some(Vec::new());
    }
    let mut bound = vec![u32::MAX; n];
    for m in &lms {
        if let Some(i) = m.pure_power_var() {
            if i < n {
                bound[i] = bound[i].min(m.exp(i));
            }
        }
    }
    if bound.contains(&u32::MAX) {
        return None;
    }
    let mut out = Vec::new();
    fn walk(var: usize, cur: Monomial, bound: &[u32], lms: &[Monomial], out: &mut Vec<Monomial>) {
        if var == bound.len() {
            out.push(cur);
            return;
        }
        let mut m = cur;
        for e in 0..bound[var] {
            if e > 0 {
                m = m.mul(&Monomial::var(var));
                if lms.iter().any(|l| l.divides(&m)) {
                    break;
                }
            }
            walk(var + 1, m, bound, lms, out);
        }
    }
    walk(0, Monomial::ONE, &bound, &lms, &mut out);
    out.sort_by_key(|m| (m.degree(), *m));
    Some(out)
}
