use super::{check_prime, inv_mod, ArithError, Ring};

/// Truncated p-adic integers `Z/p^N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PadicRing {
    p: u64,
    n: u32,
    modulus: u64,
}

impl PadicRing {
    pub fn new(p: u64, n: u32) -> Result<Self, ArithError> {
        check_prime(p)?;
        let modulus = p
            .checked_pow(n)
            .filter(|&m| n >= 1 && m < (1 << 48))
            .ok_or(ArithError::BadPrecision(n))?;
        Ok(Self { p, n, modulus })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.n
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// p-adic valuation of a residue, `None` for zero.
    pub fn valuation(&self, a: u64) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let mut v = 0;
        let mut a = a;
        while a.is_multiple_of(self.p) {
            a /= self.p;
            v += 1;
        }
        Some(v)
    }

    /// Reduce to `Z/p`.
    pub fn reduce(&self, a: u64) -> u64 {
        a % self.p
    }
}

impl Ring for PadicRing {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.modulus as i64) as u64
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.modulus
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.modulus - b) % self.modulus
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.modulus - a) % self.modulus
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.modulus as u128) as u64
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        inv_mod(*a, self.modulus)
    }
    fn is_field(&self) -> bool {
        self.n == 1
    }
    fn characteristic(&self) -> u64 {
        self.modulus
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
    fn name(&self) -> String {
        format!("Z/{}^{}", self.p, self.n)
    }
}

/// Teichmüller lift of `j` modulo `p^N`: the unique `w` with `w^p = w` and
/// `w = j (mod p)`, found by iterating `w -> w^p` to its fixed point.
pub fn teichmuller(j: u64, p: u64, n: u32) -> Result<u64, ArithError> {
    let ring = PadicRing::new(p, n)?;
    if j >= p {
        return Err(ArithError::ResidueOutOfRange { j, p });
    }
    let mut w = j;
    for _ in 0..=n {
        let next = ring.pow(&w, p);
        if next == w {
            return Ok(w);
        }
        w = next;
    }
    unreachable!("Frobenius iteration stabilises after N steps")
}
