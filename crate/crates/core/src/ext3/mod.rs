//! Level-type conditions on `μ_p^3`: the partial level structure on
//! homomorphisms `(Z/p)^2 → μ_p^3` and the candidate ideal for
//! `(Z/p)^3 → μ_p^3` built from its `2 × 3` blocks.
//!
//! Over `F_p` the coordinate ring of `Hom((Z/p)^r, μ_p^c)` is the group
//! algebra `F_p[M]` of the exponent matrices `M = Mat_{r×c}(F_p)`: the entry
//! `y_ij` is the basis element of the unit matrix `e_ij`, the point
//! `[m]y +̇ [n]y'` is the monomial `y^m y'^n`, and the primitivity generator
//! `Φ_p(y^v) = Σ_k [k v]` is the norm element of the line through `v`. The
//! group actions `h ↦ g h g'` permute this basis, so transformed ideals come
//! for free once one representative has been computed.

mod packed;

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use thiserror::Error;

pub use packed::PackedSpace;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Ext3Error {
    #[error("unsupported prime {0}: only p = 2 and p = 3 are implemented")]
    UnsupportedPrime(u64),
}

/// A sparse group-algebra element: basis index → coefficient.
pub type Sparse = BTreeMap<usize, u8>;

/// `F_p[Mat_{rows×cols}(F_p)]`, basis indexed by `Σ E_k p^k` over the
/// row-major entries `E_k` of an exponent matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAlgebra {
    p: u64,
    rows: usize,
    cols: usize,
}

impl GroupAlgebra {
    pub fn new(p: u64, rows: usize, cols: usize) -> Self {
        GroupAlgebra { p, rows, cols }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Number of matrix entries.
    pub fn entries(&self) -> usize {
        self.rows * self.cols
    }

    pub fn dim(&self) -> usize {
        (self.p as usize).pow(self.entries() as u32)
    }

    pub fn entry(&self, i: usize, j: usize) -> usize {
        i * self.cols + j
    }

    pub fn index(&self, e: &[u64]) -> usize {
        e.iter().rev().fold(0, |acc, &x| acc * self.p as usize + (x % self.p) as usize)
    }

    pub fn digits(&self, mut idx: usize) -> Vec<u64> {
        let p = self.p as usize;
        (0..self.entries())
            .map(|_| {
                let d = idx % p;
                idx /= p;
                d as u64
            })
            .collect()
    }

    fn add_indices(&self, a: usize, b: usize) -> usize {
        let (x, y) = (self.digits(a), self.digits(b));
        self.index(&x.iter().zip(&y).map(|(u, v)| u + v).collect::<Vec<_>>())
    }

    /// `Φ_p(y^v) = Σ_k [k v]`; zero for `v = 0` (where it equals `p`).
    pub fn line_norm(&self, v: &[u64]) -> Sparse {
        let mut out = Sparse::new();
        if v.iter().all(|x| x % self.p == 0) {
            return out;
        }
        for k in 0..self.p {
            let kv: Vec<u64> = v.iter().map(|x| k * x).collect();
            out.insert(self.index(&kv), 1);
        }
        out
    }

    pub fn mul(&self, a: &Sparse, b: &Sparse) -> Sparse {
        let mut out = Sparse::new();
        for (&i, &x) in a {
            for (&j, &y) in b {
                let e = out.entry(self.add_indices(i, j)).or_insert(0);
                *e = ((*e as u64 + x as u64 * y as u64) % self.p) as u8;
            }
        }
        out.retain(|_, c| *c != 0);
        out
    }

    pub fn dense(&self, a: &Sparse) -> Vec<u8> {
        let mut v = vec![0u8; self.dim()];
        for (&i, &c) in a {
            v[i] = c;
        }
        v
    }

    /// Multiplication by each `y_ij`, as permutations of the basis.
    pub fn translations(&self) -> Vec<Vec<u32>> {
        (0..self.entries())
            .map(|k| {
                let mut unit = vec![0u64; self.entries()];
                unit[k] = 1;
                let u = self.index(&unit);
                (0..self.dim()).map(|i| self.add_indices(i, u) as u32).collect()
            })
            .collect()
    }

    /// The ring map sending `y_k` (entry `k`) to the monomial with exponent
    /// vector `images[k]` in `target`, as a map on basis indices.
    pub fn substitution(&self, target: &GroupAlgebra, images: &[Vec<u64>]) -> Vec<u32> {
        (0..self.dim())
            .map(|i| {
                let e = self.digits(i);
                let mut f = vec![0u64; target.entries()];
                for (k, ek) in e.iter().enumerate() {
                    for (fj, ij) in f.iter_mut().zip(&images[k]) {
                        *fj += ek * ij;
                    }
                }
                target.index(&f) as u32
            })
            .collect()
    }

    /// Unit exponent vector of entry `(i, j)` scaled by `c`.
    fn unit(&self, i: usize, j: usize, c: u64) -> Vec<u64> {
        let mut v = vec![0u64; self.entries()];
        v[self.entry(i, j)] = c % self.p;
        v
    }
}

/// Image of `v` under a basis map.
pub fn permute(v: &[u8], map: &[u32], target_dim: usize) -> Vec<u8> {
    let mut w = vec![0u8; target_dim];
    for (i, &c) in v.iter().enumerate() {
        if c != 0 {
            w[map[i] as usize] = c;
        }
    }
    w
}

fn add_vec(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| (x + y) % p).collect()
}

fn scale_vec(p: u64, c: u64, a: &[u64]) -> Vec<u64> {
    a.iter().map(|x| c * x % p).collect()
}

/// Nonzero vectors of `F_p^n` in lexicographic order.
pub fn nonzero_vectors(p: u64, n: usize) -> Vec<Vec<u64>> {
    let total = (p as usize).pow(n as u32);
    (1..total)
        .map(|mut i| {
            let mut v = vec![0u64; n];
            for x in v.iter_mut().rev() {
                *x = (i % p as usize) as u64;
                i /= p as usize;
            }
            v
        })
        .collect()
}

/// Rank of an `r × c` matrix over `F_p` (row-major).
pub fn matrix_rank(p: u64, m: &[u64], r: usize, c: usize) -> usize {
    let mut a: Vec<Vec<u64>> = (0..r).map(|i| m[i * c..(i + 1) * c].iter().map(|x| x % p).collect()).collect();
    let mut rank = 0;
    for col in 0..c {
        let Some(piv) = (rank..r).find(|&i| a[i][col] != 0) else { continue };
        a.swap(rank, piv);
        let inv = (1..p).find(|x| x * a[rank][col] % p == 1).unwrap();
        for i in 0..r {
            if i != rank && a[i][col] != 0 {
                let f = a[i][col] * inv % p;
                let pivot = a[rank].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot) {
                    *x = (*x + p * p - f * y) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// All invertible `n × n` matrices over `F_p` (row-major).
pub fn gl_elements(p: u64, n: usize) -> Vec<Vec<u64>> {
    let total = (p as usize).pow((n * n) as u32);
    (0..total)
        .map(|mut i| {
            (0..n * n)
                .map(|_| {
                    let d = (i % p as usize) as u64;
                    i /= p as usize;
                    d
                })
                .collect::<Vec<_>>()
        })
        .filter(|m| matrix_rank(p, m, n, n) == n)
        .collect()
}

/// `|Mat*_{r×c}(F_p)|`, the number of matrices of full rank `min(r, c)`,
/// by enumeration.
pub fn full_rank_count(p: u64, r: usize, c: usize) -> usize {
    let total = (p as usize).pow((r * c) as u32);
    (0..total)
        .filter(|&i| {
            let mut i = i;
            let m: Vec<u64> = (0..r * c)
                .map(|_| {
                    let d = (i % p as usize) as u64;
                    i /= p as usize;
                    d
                })
                .collect();
            matrix_rank(p, &m, r, c) == r.min(c)
        })
        .count()
}

/// Canonical form (reduced row echelon basis) of the span of `vs`.
fn span_key(p: u64, vs: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let n = vs[0].len();
    let mut a: Vec<Vec<u64>> = vs.iter().map(|v| v.iter().map(|x| x % p).collect()).collect();
    let mut rank = 0;
    for col in 0..n {
        let Some(piv) = (rank..a.len()).find(|&i| a[i][col] != 0) else { continue };
        a.swap(rank, piv);
        let inv = (1..p).find(|x| x * a[rank][col] % p == 1).unwrap();
        a[rank] = scale_vec(p, inv, &a[rank]);
        for i in 0..a.len() {
            if i != rank && a[i][col] != 0 {
                let f = p - a[i][col];
                a[i] = add_vec(p, &a[i], &scale_vec(p, f, &a[rank]));
            }
        }
        rank += 1;
    }
    a.truncate(rank);
    a
}

fn check_prime(p: u64) -> Result<(), Ext3Error> {
    if p == 2 || p == 3 {
        Ok(())
    } else {
        Err(Ext3Error::UnsupportedPrime(p))
    }
}

fn space(p: u64, width: usize) -> PackedSpace {
    PackedSpace::new(p, width).expect("prime checked")
}

/// The ideal generated by `gens`: closes the span under the translations.
pub fn ideal_closure(alg: &GroupAlgebra, gens: &[Sparse], translations: &[Vec<u32>]) -> PackedSpace {
    let mut out = space(alg.p, alg.dim());
    let mut queue: Vec<Vec<u8>> = Vec::new();
    for g in gens {
        let v = alg.dense(g);
        if out.insert(&v) {
            queue.push(v);
        }
    }
    while let Some(v) = queue.pop() {
        for t in translations {
            let w = permute(&v, t, alg.dim());
            if out.insert(&w) {
                queue.push(w);
            }
        }
    }
    out
}

/// Full-level generators of the `2 × 2` block with entries `[a, b; c, d]`
/// (given as entry indices): for `(m, n) ≠ 0`, the products
/// `Φ(y_a^m y_b^n) Φ(y_c^m y_d^n)` and `Φ(y_a^m y_c^n) Φ(y_b^m y_d^n)`.
pub fn block_generators(alg: &GroupAlgebra, block: [usize; 4]) -> Vec<Sparse> {
    let p = alg.p;
    let n = alg.entries();
    let comb = |m: u64, x: usize, k: u64, y: usize| {
        let mut v = vec![0u64; n];
        v[x] = (v[x] + m) % p;
        v[y] = (v[y] + k) % p;
        alg.line_norm(&v)
    };
    let [a, b, c, d] = block;
    let pairs: Vec<(u64, u64)> = nonzero_vectors(p, 2).into_iter().map(|v| (v[0], v[1])).collect();
    let mut rows: Vec<Sparse> = pairs.iter().map(|&(m, k)| alg.mul(&comb(m, a, k, b), &comb(m, c, k, d))).collect();
    let cols: Vec<Sparse> = pairs.iter().map(|&(m, k)| alg.mul(&comb(m, a, k, c), &comb(m, b, k, d))).collect();
    rows.extend(cols);
    rows
}

/// Condition (i) on an `r × c` universal matrix: every nonzero combination
/// of rows (a point of `μ_p^c`) and of columns (a point of `μ_p^r`) is
/// primitive, i.e. the product of the primitivity generators of its
/// entries vanishes.
pub fn combination_generators(alg: &GroupAlgebra) -> Vec<Sparse> {
    let p = alg.p;
    let (r, c) = (alg.rows, alg.cols);
    let product = |entries: Vec<Vec<u64>>| {
        let mut acc: Sparse = [(0usize, 1u8)].into_iter().collect();
        for v in entries {
            acc = alg.mul(&acc, &alg.line_norm(&v));
        }
        acc
    };
    let mut out = Vec::new();
    for m in nonzero_vectors(p, r) {
        // row combination Σ m_i row_i: entry j is Σ_i m_i y_ij
        out.push(product((0..c).map(|j| (0..r).fold(vec![0; r * c], |v, i| add_vec(p, &v, &alg.unit(i, j, m[i])))).collect()));
    }
    if r == c {
        for n in nonzero_vectors(p, c) {
            out.push(product((0..r).map(|i| (0..c).fold(vec![0; r * c], |v, j| add_vec(p, &v, &alg.unit(i, j, n[j])))).collect()));
        }
    }
    out
}

/// The three `2 × 2` column blocks of the universal `2 × 3` matrix and the
/// full level ideals `I_1, I_2, I_3` they define.
#[derive(Debug, Clone)]
pub struct BlockIdealTriple {
    pub algebra: GroupAlgebra,
    /// Column pairs `(0, 1)`, `(0, 2)`, `(1, 2)`.
    pub columns: [(usize, usize); 3],
    pub generators: [Vec<Sparse>; 3],
    pub ideals: [PackedSpace; 3],
}

pub fn block_ideal_triple(p: u64) -> Result<BlockIdealTriple, Ext3Error> {
    check_prime(p)?;
    let alg = GroupAlgebra::new(p, 2, 3);
    let tr = alg.translations();
    let columns = [(0, 1), (0, 2), (1, 2)];
    let generators = columns.map(|(j, k)| block_generators(&alg, [alg.entry(0, j), alg.entry(0, k), alg.entry(1, j), alg.entry(1, k)]));
    let ideals = [0, 1, 2].map(|i| ideal_closure(&alg, &generators[i], &tr));
    Ok(BlockIdealTriple { algebra: alg, columns, generators, ideals })
}

impl BlockIdealTriple {
    /// `I_a I_b`, generated by the pairwise products of generators.
    pub fn product(&self, a: usize, b: usize) -> PackedSpace {
        let alg = &self.algebra;
        let gens: Vec<Sparse> = self.generators[a]
            .iter()
            .flat_map(|f| self.generators[b].iter().map(move |g| alg.mul(f, g)))
            .filter(|f| !f.is_empty())
            .collect();
        ideal_closure(alg, &gens, &alg.translations())
    }

    /// "One of the three blocks is a full level structure":
    /// `I_1 I_2 ∩ I_1 I_3 ∩ I_2 I_3`.
    pub fn one_of_three(&self) -> PackedSpace {
        self.product(0, 1).intersect(&self.product(0, 2)).intersect(&self.product(1, 2))
    }
}

/// Exponent images of the entries of `g h g'` (with `g` `r × r`, `g'`
/// `c × c`) in terms of the universal `h`.
pub fn action_images(alg: &GroupAlgebra, g: &[u64], gp: &[u64]) -> Vec<Vec<u64>> {
    let (r, c, p) = (alg.rows, alg.cols, alg.p);
    let mut out = Vec::with_capacity(r * c);
    for k in 0..r {
        for l in 0..c {
            let mut f = vec![0u64; r * c];
            for i in 0..r {
                for j in 0..c {
                    f[alg.entry(i, j)] = g[k * r + i] * gp[j * c + l] % p;
                }
            }
            out.push(f);
        }
    }
    out
}

/// The ideal of the partial level structure on `(Z/p)^2 → μ_p^3`.
#[derive(Debug, Clone)]
pub struct PartialLevel {
    pub p: u64,
    pub algebra: GroupAlgebra,
    pub ideal: PackedSpace,
    pub rank: usize,
    /// Rank of the condition-(i) ideal alone.
    pub combinations_rank: usize,
    /// Distinct transformed `J_{g,g'}` summed.
    pub representatives: usize,
    pub expected: usize,
    pub elapsed_ms: u128,
}

impl PartialLevel {
    pub fn pass(&self) -> bool {
        self.rank == self.expected
    }
}

/// Right `GL_3` representatives for the sum over `J_{g,g'}`. The block
/// ideals are invariant under `GL_2` acting on either side of a block, so
/// `J_{g,g'}` depends only on the three planes spanned by pairs of columns
/// of `g'`; one `g'` per plane triple is kept.
pub fn partial_representatives(p: u64) -> Vec<Vec<u64>> {
    let mut seen = BTreeSet::new();
    let mut reps = Vec::new();
    for gp in gl_elements(p, 3) {
        let col = |j: usize| (0..3).map(|i| gp[i * 3 + j]).collect::<Vec<u64>>();
        let mut key: Vec<Vec<Vec<u64>>> = [(0, 1), (0, 2), (1, 2)].iter().map(|&(a, b)| span_key(p, &[col(a), col(b)])).collect();
        key.sort();
        if seen.insert(key) {
            reps.push(gp);
        }
    }
    reps
}

pub fn identity(n: usize) -> Vec<u64> {
    (0..n * n).map(|i| u64::from(i / n == i % n)).collect()
}

/// Sum of `φ_{g,g'}(J)` over the given pairs, plus `base`.
pub fn transformed_sum(alg: &GroupAlgebra, base: &PackedSpace, j: &PackedSpace, pairs: &[(Vec<u64>, Vec<u64>)]) -> PackedSpace {
    let jb = j.basis();
    let mut out = base.clone();
    for (g, gp) in pairs {
        let map = alg.substitution(alg, &action_images(alg, g, gp));
        out.extend(jb.iter().map(|v| permute(v, &map, alg.dim())));
    }
    out
}

pub fn partial_level_ideal(p: u64) -> Result<PartialLevel, Ext3Error> {
    let start = Instant::now();
    let triple = block_ideal_triple(p)?;
    let alg = triple.algebra.clone();
    let j = triple.one_of_three();
    let combos = ideal_closure(&alg, &combination_generators(&alg), &alg.translations());
    let reps: Vec<(Vec<u64>, Vec<u64>)> = partial_representatives(p).into_iter().map(|gp| (identity(2), gp)).collect();
    let ideal = transformed_sum(&alg, &combos, &j, &reps);
    Ok(PartialLevel {
        p,
        rank: ideal.codim(),
        combinations_rank: combos.codim(),
        representatives: reps.len(),
        expected: full_rank_count(p, 2, 3),
        ideal,
        algebra: alg,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

/// Result of the `(Z/p)^3 → μ_p^3` candidate computation.
#[derive(Debug, Clone)]
pub struct G3Report {
    pub p: u64,
    pub include_dual: bool,
    pub rank: usize,
    pub gl3_order: usize,
    pub ambient: usize,
    /// Distinct block embeddings summed.
    pub images: usize,
    pub elapsed_ms: u128,
}

/// Exponent images of the `2 × 3` block `u h` (or `u hᵀ` when `transpose`)
/// of the universal `3 × 3` matrix, for `u` with rows `u[0]`, `u[1]`.
pub fn block_images(big: &GroupAlgebra, u: &[Vec<u64>], transpose: bool) -> Vec<Vec<u64>> {
    let p = big.p;
    let mut out = Vec::with_capacity(6);
    for uk in u.iter().take(2) {
        for l in 0..3 {
            let mut f = vec![0u64; 9];
            for (i, &c) in uk.iter().enumerate() {
                let e = if transpose { big.entry(l, i) } else { big.entry(i, l) };
                f[e] = c % p;
            }
            out.push(f);
        }
    }
    out
}

/// Exponent vectors spanning a complement of `span(images)` in `F_p^n`,
/// enumerated as all their combinations.
fn complement_elements(p: u64, n: usize, images: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let mut basis = span_key(p, images);
    let mut extra = Vec::new();
    for i in 0..n {
        let mut e = vec![0u64; n];
        e[i] = 1;
        let mut trial = basis.clone();
        trial.push(e.clone());
        if span_key(p, &trial).len() > basis.len() {
            basis = span_key(p, &trial);
            extra.push(e);
        }
    }
    let mut out = vec![vec![0u64; n]];
    for e in &extra {
        out = out.iter().flat_map(|v| (0..p).map(move |k| add_vec(p, v, &scale_vec(p, k, e)))).collect();
    }
    out
}

/// The ideal generated in `F_p[Mat_{3×3}]` by `ψ(P)`, where `ψ` embeds the
/// `2 × 3` ring through `block`: a basis is `ψ(P) · y^c` over a complement.
pub fn embedded_ideal_vectors(small: &GroupAlgebra, big: &GroupAlgebra, basis: &[Vec<u8>], block: &[Vec<u64>]) -> Vec<Vec<u8>> {
    let psi = small.substitution(big, block);
    let shifts: Vec<usize> = complement_elements(big.p, big.entries(), block).iter().map(|c| big.index(c)).collect();
    let mut out = Vec::with_capacity(basis.len() * shifts.len());
    for v in basis {
        let img = permute(v, &psi, big.dim());
        let support: Vec<(usize, u8)> = img.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (i, c)).collect();
        for &s in &shifts {
            let mut w = vec![0u8; big.dim()];
            for &(i, c) in &support {
                w[big.add_indices(i, s)] = c;
            }
            out.push(w);
        }
    }
    out
}

/// Planes of `F_p^3`, each as a basis of two rows.
pub fn planes(p: u64) -> Vec<Vec<Vec<u64>>> {
    let mut seen = BTreeSet::new();
    for u in nonzero_vectors(p, 3) {
        for v in nonzero_vectors(p, 3) {
            let k = span_key(p, &[u.clone(), v.clone()]);
            if k.len() == 2 {
                seen.insert(k);
            }
        }
    }
    seen.into_iter().collect()
}

/// The candidate ideal for `(Z/p)^3 → μ_p^3`: after any `GL_3 × GL_3`
/// action (and, with `include_dual`, transposition) every `2 × 3` row block
/// lies in the partial level structure. The partial ideal is invariant
/// under `GL_2` on its rows and `GL_3` on its columns, so each condition
/// depends only on the row plane of the block (and the transposition flag).
pub fn g3_candidate_ideal(p: u64, include_dual: bool, partial: &PartialLevel) -> Result<(PackedSpace, usize), Ext3Error> {
    check_prime(p)?;
    let small = &partial.algebra;
    let big = GroupAlgebra::new(p, 3, 3);
    let basis = partial.ideal.basis();
    let mut out = space(p, big.dim());
    let mut images = 0;
    for transpose in [false, true] {
        if transpose && !include_dual {
            continue;
        }
        for plane in planes(p) {
            let block = block_images(&big, &plane, transpose);
            out.extend(embedded_ideal_vectors(small, &big, &basis, &block));
            images += 1;
        }
    }
    Ok((out, images))
}

pub fn g3_candidate_rank(p: u64, include_dual: bool) -> Result<G3Report, Ext3Error> {
    let start = Instant::now();
    let partial = partial_level_ideal(p)?;
    let (ideal, images) = g3_candidate_ideal(p, include_dual, &partial)?;
    Ok(G3Report {
        p,
        include_dual,
        rank: ideal.codim(),
        gl3_order: gl_elements(p, 3).len(),
        ambient: ideal.width(),
        images,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

#[cfg(test)]
mod tests;
