//! Exact coefficient arithmetic.
//!
//! Every coefficient ring implements [`Ring`]. Ring values are lightweight
//! descriptors (a modulus, a table handle); elements are plain data and all
//! operations go through the descriptor, so polynomials never carry their
//! coefficient ring around.

mod ext;
mod padic;
mod prime;
mod rational;

use std::fmt::Debug;
use std::hash::Hash;

pub use ext::ExtField;
pub use padic::{teichmuller, PadicRing};
pub use prime::PrimeField;
pub use rational::Rationals;

use thiserror::Error;

/// Largest prime accepted for any modulus.
pub const MAX_PRIME: u64 = 97;
/// Largest field size accepted for extension fields.
pub const MAX_FIELD_SIZE: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("{0} is not a prime in [2, {MAX_PRIME}]")]
    NotPrime(u64),
    #[error("field of size {p}^{k} exceeds the supported limit")]
    FieldTooLarge { p: u64, k: u32 },
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("precision must satisfy 1 <= N and p^N < 2^48 (got N = {0})")]
    BadPrecision(u32),
    #[error("residue {j} is not in [0, {p})")]
    ResidueOutOfRange { j: u64, p: u64 },
}

/// A commutative coefficient ring with exact arithmetic.
pub trait Ring: Clone + Debug + PartialEq + Send + Sync {
    type Elem: Clone + PartialEq + Eq + Hash + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// Multiplicative inverse of a unit, `None` for non-units.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    /// Whether every nonzero element is a unit.
    fn is_field(&self) -> bool;

    /// Characteristic; 0 for the rationals, `p^N` for `Z/p^N`.
    fn characteristic(&self) -> u64;

    /// Human readable rendering used by the polynomial printer.
    fn format(&self, a: &Self::Elem) -> String;

    /// Short name such as `F_3`, `F_9`, `Q`, `Z/27`.
    fn name(&self) -> String;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// `a / b`, `None` if `b` is not a unit.
    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }
}

/// A finite field whose elements can be listed.
pub trait FiniteField: Ring {
    fn size(&self) -> u64;
    fn prime(&self) -> u64;
    fn elements(&self) -> Vec<Self::Elem>;
    /// Whether the element lies in the prime subfield.
    fn in_prime_field(&self, a: &Self::Elem) -> bool;
}

/// Trial-division primality for the small moduli used here.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn check_prime(p: u64) -> Result<(), ArithError> {
    if p > MAX_PRIME || !is_prime(p) {
        return Err(ArithError::NotPrime(p));
    }
    Ok(())
}

/// Modular inverse by the extended Euclidean algorithm, `None` if not coprime.
pub(crate) fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(m as i128) as u64)
}
