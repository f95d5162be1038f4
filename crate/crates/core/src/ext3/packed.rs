//! Dense linear algebra over `F_2` and `F_3` with bitsliced rows.
//!
//! A row over `F_2` is one bit plane; over `F_3` it is two disjoint planes
//! (`is 1`, `is 2`), so additions run 64 coordinates per word. Spaces are kept
//! in (unreduced) echelon form with leading coefficient 1.

use rayon::prelude::*;

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone)]
pub struct PackedSpace {
    p: u64,
    width: usize,
    words: usize,
    rows: Vec<Vec<u64>>,
    leads: Vec<usize>,
    pivot_of: Vec<u32>,
}

impl PackedSpace {
    /// The zero subspace of `F_p^width`; `None` unless `p ∈ {2, 3}`.
    pub fn new(p: u64, width: usize) -> Option<Self> {
        if p != 2 && p != 3 {
            return None;
        }
        Some(PackedSpace { p, width, words: width.div_ceil(64), rows: Vec::new(), leads: Vec::new(), pivot_of: vec![NONE; width] })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn codim(&self) -> usize {
        self.width - self.rows.len()
    }

    fn planes(&self) -> usize {
        if self.p == 2 {
            1
        } else {
            2
        }
    }

    pub fn pack(&self, v: &[u8]) -> Vec<u64> {
        debug_assert_eq!(v.len(), self.width);
        let mut r = vec![0u64; self.planes() * self.words];
        for (i, &x) in v.iter().enumerate() {
            match x as u64 % self.p {
                0 => {}
                1 => r[i / 64] |= 1 << (i % 64),
                _ => r[self.words + i / 64] |= 1 << (i % 64),
            }
        }
        r
    }

    pub fn unpack(&self, r: &[u64]) -> Vec<u8> {
        (0..self.width).map(|i| self.get(r, i)).collect()
    }

    fn get(&self, r: &[u64], i: usize) -> u8 {
        let (w, b) = (i / 64, i % 64);
        if r[w] >> b & 1 == 1 {
            1
        } else if self.p == 3 && r[self.words + w] >> b & 1 == 1 {
            2
        } else {
            0
        }
    }

    fn first_nonzero(&self, r: &[u64], from_word: usize) -> Option<usize> {
        for w in from_word..self.words {
            let mut x = r[w];
            if self.p == 3 {
                x |= r[self.words + w];
            }
            if x != 0 {
                return Some(w * 64 + x.trailing_zeros() as usize);
            }
        }
        None
    }

    /// `r += c · q` on the words from `from` on.
    fn axpy(&self, r: &mut [u64], q: &[u64], c: u8, from: usize) {
        let n = self.words;
        if self.p == 2 {
            for w in from..n {
                r[w] ^= q[w];
            }
            return;
        }
        let (rp, rm) = r.split_at_mut(n);
        let (qp, qm) = if c == 1 { (&q[..n], &q[n..]) } else { (&q[n..], &q[..n]) };
        for w in from..n {
            let (ap, am, bp, bm) = (rp[w], rm[w], qp[w], qm[w]);
            let az = !(ap | am);
            let bz = !(bp | bm);
            rp[w] = (az & bp) | (ap & bz) | (am & bm);
            rm[w] = (az & bm) | (am & bz) | (ap & bp);
        }
    }

    /// Eliminates pivot columns from the front; returns the leading column
    /// of what is left.
    fn reduce_packed(&self, r: &mut [u64]) -> Option<usize> {
        let mut from = 0;
        loop {
            let c = self.first_nonzero(r, from)?;
            let k = self.pivot_of[c];
            if k == NONE {
                return Some(c);
            }
            let e = self.get(r, c);
            self.axpy(r, &self.rows[k as usize], (self.p as u8) - e, c / 64);
            from = c / 64;
        }
    }

    fn push(&mut self, mut r: Vec<u64>, lead: usize) {
        if self.get(&r, lead) == 2 {
            let n = self.words;
            let (a, b) = r.split_at_mut(n);
            a.swap_with_slice(b);
        }
        self.pivot_of[lead] = self.rows.len() as u32;
        self.rows.push(r);
        self.leads.push(lead);
    }

    fn insert_packed(&mut self, mut r: Vec<u64>) -> bool {
        match self.reduce_packed(&mut r) {
            Some(lead) => {
                self.push(r, lead);
                true
            }
            None => false,
        }
    }

    /// Adds `v`; returns whether the span grew.
    pub fn insert(&mut self, v: &[u8]) -> bool {
        let r = self.pack(v);
        self.insert_packed(r)
    }

    /// Adds many vectors, pre-reducing batches in parallel.
    pub fn extend(&mut self, vectors: impl IntoIterator<Item = Vec<u8>>) {
        let mut batch = Vec::with_capacity(256);
        for v in vectors {
            batch.push(v);
            if batch.len() == 256 {
                self.extend_batch(std::mem::take(&mut batch));
            }
        }
        self.extend_batch(batch);
    }

    fn extend_batch(&mut self, batch: Vec<Vec<u8>>) {
        if self.codim() == 0 {
            return;
        }
        let this = &*self;
        let reduced: Vec<Vec<u64>> = batch
            .into_par_iter()
            .filter_map(|v| {
                let mut r = this.pack(&v);
                this.reduce_packed(&mut r).map(|_| r)
            })
            .collect();
        for r in reduced {
            self.insert_packed(r);
        }
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        let mut r = self.pack(v);
        self.reduce_packed(&mut r).is_none()
    }

    /// The echelon basis, unpacked.
    pub fn basis(&self) -> Vec<Vec<u8>> {
        self.rows.iter().map(|r| self.unpack(r)).collect()
    }

    pub fn contains_space(&self, other: &PackedSpace) -> bool {
        other.rows.iter().all(|r| {
            let mut r = r.clone();
            self.reduce_packed(&mut r).is_none()
        })
    }

    pub fn equal(&self, other: &PackedSpace) -> bool {
        self.rank() == other.rank() && self.contains_space(other)
    }

    pub fn sum(&self, other: &PackedSpace) -> PackedSpace {
        let mut out = self.clone();
        for r in &other.rows {
            out.insert_packed(r.clone());
        }
        out
    }

    /// Zassenhaus: echelonise `(u | u)` and `(v | 0)`; rows led in the second
    /// half are `(0 | w)` with `w` running over a basis of the intersection.
    pub fn intersect(&self, other: &PackedSpace) -> PackedSpace {
        let n = self.width;
        let mut big = PackedSpace::new(self.p, 2 * n).expect("same field");
        let zero = vec![0u8; n];
        for u in self.basis() {
            big.insert(&[u.as_slice(), u.as_slice()].concat());
        }
        for v in other.basis() {
            big.insert(&[v.as_slice(), zero.as_slice()].concat());
        }
        let mut out = PackedSpace::new(self.p, n).expect("same field");
        for (r, &lead) in big.rows.iter().zip(&big.leads) {
            if lead >= n {
                out.insert(&big.unpack(r)[n..]);
            }
        }
        out
    }
}
