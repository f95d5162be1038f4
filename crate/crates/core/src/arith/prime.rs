use super::{check_prime, inv_mod, ArithError, FiniteField, Ring};

/// The prime field `F_p` for a prime `p <= 97`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, ArithError> {
        check_prime(p)?;
        Ok(Self { p: p as u32 })
    }

    pub fn p(&self) -> u64 {
        self.p as u64
    }

    /// Smallest generator of the multiplicative group.
    pub fn primitive_root(&self) -> u32 {
        let p = self.p;
        (1..p)
            .find(|&g| {
                let mut x = 1u32;
                for k in 1..p {
                    x = x * g % p;
                    if x == 1 {
                        return k == p - 1;
                    }
                }
                false
            })
            .expect("every prime field has a primitive root")
    }
}

impl Ring for PrimeField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1 % self.p
    }
    fn from_i64(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        a * b % self.p
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            None
        } else {
            inv_mod(*a as u64, self.p as u64).map(|x| x as u32)
        }
    }
    fn is_field(&self) -> bool {
        true
    }
    fn characteristic(&self) -> u64 {
        self.p as u64
    }
    /// Symmetric residues, so that `p - 1` prints as `-1`.
    fn format(&self, a: &u32) -> String {
        if *a > self.p / 2 {
            format!("-{}", self.p - a)
        } else {
            a.to_string()
        }
    }
    fn name(&self) -> String {
        format!("F_{}", self.p)
    }
}

impl FiniteField for PrimeField {
    fn size(&self) -> u64 {
        self.p as u64
    }
    fn prime(&self) -> u64 {
        self.p as u64
    }
    fn elements(&self) -> Vec<u32> {
        (0..self.p).collect()
    }
    fn in_prime_field(&self, _: &u32) -> bool {
        true
    }
}
