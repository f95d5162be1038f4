use std::sync::Arc;

use super::{check_prime, inv_mod, ArithError, FiniteField, Ring, MAX_FIELD_SIZE};

/// Dense univariate polynomials over `F_p`, lowest degree first, no trailing zeros.
type UPoly = Vec<u64>;

fn trim(mut f: UPoly) -> UPoly {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

fn upoly_rem(mut f: UPoly, g: &[u64], p: u64) -> UPoly {
    let dg = g.len() - 1;
    let lead_inv = inv_mod(g[dg], p).expect("nonzero leading coefficient");
    f = trim(f);
    while f.len() > dg {
        let df = f.len() - 1;
        let c = f[df] * lead_inv % p;
        for (i, gi) in g.iter().enumerate() {
            let idx = df - dg + i;
            f[idx] = (f[idx] + p - c * gi % p) % p;
        }
        f = trim(f);
    }
    f
}

fn upoly_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + ai * bj) % p;
        }
    }
    upoly_rem(out, m, p)
}

fn upoly_powmod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> UPoly {
    let mut acc = vec![1u64];
    let mut b = upoly_rem(base.to_vec(), m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = upoly_mulmod(&acc, &b, m, p);
        }
        b = upoly_mulmod(&b, &b, m, p);
        e >>= 1;
    }
    upoly_rem(acc, m, p)
}

fn upoly_gcd(a: UPoly, b: UPoly, p: u64) -> UPoly {
    let (mut a, mut b) = (trim(a), trim(b));
    while !b.is_empty() {
        let r = upoly_rem(a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn has_root(f: &[u64], p: u64) -> bool {
    (0..p).any(|x| {
        let mut acc = 0u64;
        for c in f.iter().rev() {
            acc = (acc * x + c) % p;
        }
        acc == 0
    })
}

/// Irreducibility of a monic polynomial of degree `k` over `F_p`.
///
/// Degrees up to 3 are irreducible iff rootless; beyond that the
/// distinct-degree test `gcd(x^(p^i) - x, f) = 1` for `i <= k/2` is used.
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let k = f.len() - 1;
    if k == 1 {
        return true;
    }
    if k <= 3 {
        return !has_root(f, p);
    }
    let x = vec![0, 1];
    let mut xp = x.clone();
    for _ in 1..=k / 2 {
        xp = upoly_powmod(&xp, p, f, p);
        let mut diff = xp.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        let g = upoly_gcd(f.to_vec(), trim(diff), p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

#[derive(Debug)]
struct Tables {
    p: u64,
    k: u32,
    size: u64,
    modulus: Vec<u64>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// The finite field `F_{p^k}` realised as `F_p[z]/(m(z))` for the
/// lexicographically least monic irreducible `m` of degree `k`.
///
/// Elements are encoded as integers `sum c_i p^i` where `c_i` is the
/// coefficient of `z^i`; multiplication goes through discrete-log tables.
#[derive(Debug, Clone)]
pub struct ExtField {
    t: Arc<Tables>,
}

impl PartialEq for ExtField {
    fn eq(&self, other: &Self) -> bool {
        self.t.p == other.t.p && self.t.modulus == other.t.modulus
    }
}

impl ExtField {
    pub fn new(p: u64, k: u32) -> Result<Self, ArithError> {
        check_prime(p)?;
        if k == 0 {
            return Err(ArithError::ZeroDegree);
        }
        let size = p
            .checked_pow(k)
            .filter(|&q| q <= MAX_FIELD_SIZE)
            .ok_or(ArithError::FieldTooLarge { p, k })?;
        let modulus = (0..p.pow(k))
            .map(|n| {
                let mut f: Vec<u64> = (0..k).map(|i| n / p.pow(i) % p).collect();
                f.push(1);
                f
            })
            .find(|f| is_irreducible(f, p))
            .expect("an irreducible polynomial of every degree exists");
        Ok(Self::with_modulus(p, k, size, modulus))
    }

    fn with_modulus(p: u64, k: u32, size: u64, modulus: Vec<u64>) -> Self {
        let decode = |e: u64| -> UPoly { trim((0..k).map(|i| e / p.pow(i) % p).collect()) };
        let encode =
            |f: &[u64]| -> u32 { f.iter().enumerate().map(|(i, c)| c * p.pow(i as u32)).sum::<u64>() as u32 };
        let order = size - 1;
        let factors: Vec<u64> = (2..=order).filter(|&r| order.is_multiple_of(r) && super::is_prime(r)).collect();
        let generator = (1..size)
            .find(|&g| {
                let gp = decode(g);
                factors
                    .iter()
                    .all(|r| upoly_powmod(&gp, order / r, &modulus, p) != vec![1u64])
            })
            .expect("multiplicative group is cyclic");
        let gp = decode(generator);
        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![0u32; size as usize];
        let mut cur = vec![1u64];
        for i in 0..order {
            let e = encode(&cur);
            exp.push(e);
            log[e as usize] = i as u32;
            cur = upoly_mulmod(&cur, &gp, &modulus, p);
        }
        Self {
            t: Arc::new(Tables { p, k, size, modulus, exp, log }),
        }
    }

    pub fn degree(&self) -> u32 {
        self.t.k
    }

    /// Monic modulus, lowest coefficient first.
    pub fn modulus(&self) -> &[u64] {
        &self.t.modulus
    }

    /// The class of `z`, a root of the modulus.
    pub fn generator(&self) -> u32 {
        if self.t.k == 1 {
            // z is a root of the degree-one modulus z + c0
            (self.t.p - self.t.modulus[0]) as u32 % self.t.p as u32
        } else {
            self.t.p as u32
        }
    }

    /// A generator of the multiplicative group.
    pub fn primitive_element(&self) -> u32 {
        self.t.exp[1 % self.t.exp.len()]
    }

    pub fn to_coeffs(&self, a: u32) -> Vec<u64> {
        (0..self.t.k).map(|i| a as u64 / self.t.p.pow(i) % self.t.p).collect()
    }

    pub fn from_coeffs(&self, c: &[u64]) -> u32 {
        c.iter()
            .take(self.t.k as usize)
            .enumerate()
            .map(|(i, x)| (x % self.t.p) * self.t.p.pow(i as u32))
            .sum::<u64>() as u32
    }

    /// The Frobenius map `a -> a^p`.
    pub fn frobenius(&self, a: &u32) -> u32 {
        self.pow(a, self.t.p)
    }

    fn digitwise(&self, a: u32, b: u32, f: impl Fn(u64, u64) -> u64) -> u32 {
        let p = self.t.p;
        let (mut a, mut b) = (a as u64, b as u64);
        let (mut out, mut scale) = (0u64, 1u64);
        for _ in 0..self.t.k {
            out += f(a % p, b % p) % p * scale;
            a /= p;
            b /= p;
            scale *= p;
        }
        out as u32
    }
}

impl Ring for ExtField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn from_i64(&self, n: i64) -> u32 {
        n.rem_euclid(self.t.p as i64) as u32
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        if self.t.k == 1 {
            return ((a + b) as u64 % self.t.p) as u32;
        }
        self.digitwise(*a, *b, |x, y| x + y)
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        let p = self.t.p;
        self.digitwise(*a, *b, |x, y| x + p - y)
    }
    fn neg(&self, a: &u32) -> u32 {
        self.sub(&0, a)
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        if *a == 0 || *b == 0 {
            return 0;
        }
        let n = self.t.exp.len();
        let idx = (self.t.log[*a as usize] as usize + self.t.log[*b as usize] as usize) % n;
        self.t.exp[idx]
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        let n = self.t.exp.len();
        let l = self.t.log[*a as usize] as usize;
        Some(self.t.exp[(n - l) % n])
    }
    fn is_field(&self) -> bool {
        true
    }
    fn characteristic(&self) -> u64 {
        self.t.p
    }
    fn format(&self, a: &u32) -> String {
        let p = self.t.p as u32;
        if *a < p {
            return if *a > p / 2 { format!("-{}", p - a) } else { a.to_string() };
        }
        let terms: Vec<String> = self
            .to_coeffs(*a)
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "z".to_string(),
                (1, c) => format!("{c}*z"),
                (i, 1) => format!("z^{i}"),
                (i, c) => format!("{c}*z^{i}"),
            })
            .collect();
        format!("({})", terms.join("+"))
    }
    fn name(&self) -> String {
        format!("F_{}", self.t.size)
    }
}

impl FiniteField for ExtField {
    fn size(&self) -> u64 {
        self.t.size
    }
    fn prime(&self) -> u64 {
        self.t.p
    }
    fn elements(&self) -> Vec<u32> {
        (0..self.t.size as u32).collect()
    }
    fn in_prime_field(&self, a: &u32) -> bool {
        (*a as u64) < self.t.p
    }
}
