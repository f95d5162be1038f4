use std::cmp::Ordering;
use std::fmt;

/// Maximum number of variables of any polynomial ring.
pub const MAX_VARS: usize = 16;

const HIGH: u128 = 0x8080_8080_8080_8080_8080_8080_8080_8080;
const LOW7: u128 = !HIGH;

/// A monomial with up to [`MAX_VARS`] variables, one byte per exponent.
///
/// Exponents are kept below 128 so that divisibility and multiplication can
/// be done on the packed representation without unpacking.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Monomial(u128);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn var(i: usize) -> Self {
        Self::var_pow(i, 1)
    }

    pub fn var_pow(i: usize, e: u32) -> Self {
        assert!(i < MAX_VARS, "variable index {i} out of range");
        assert!(e < 128, "exponent {e} exceeds 127");
        Monomial((e as u128) << (8 * i))
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS);
        let mut m = 0u128;
        for (i, &e) in exps.iter().enumerate() {
            assert!(e < 128, "exponent {e} exceeds 127");
            m |= (e as u128) << (8 * i);
        }
        Monomial(m)
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u32 {
        ((self.0 >> (8 * i)) & 0xff) as u32
    }

    pub fn exponents(&self, nvars: usize) -> Vec<u32> {
        (0..nvars).map(|i| self.exp(i)).collect()
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        self.0 == 0
    }

    /// Total degree.
    #[inline]
    pub fn degree(&self) -> u32 {
        let x = self.0;
        let x = (x & 0x00ff_00ff_00ff_00ff_00ff_00ff_00ff_00ff) + ((x >> 8) & 0x00ff_00ff_00ff_00ff_00ff_00ff_00ff_00ff);
        let x = (x & 0x0000_ffff_0000_ffff_0000_ffff_0000_ffff) + ((x >> 16) & 0x0000_ffff_0000_ffff_0000_ffff_0000_ffff);
        let x = (x & 0x0000_0000_ffff_ffff_0000_0000_ffff_ffff) + ((x >> 32) & 0x0000_0000_ffff_ffff_0000_0000_ffff_ffff);
        ((x & 0xffff_ffff_ffff_ffff) + (x >> 64)) as u32
    }

    /// Degree in the variables `lo..hi`.
    pub fn partial_degree(&self, lo: usize, hi: usize) -> u32 {
        Monomial(self.0 & range_mask(lo, hi)).degree()
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let s = self.0 + other.0;
        assert!(s & HIGH == 0, "monomial exponent overflow");
        Monomial(s)
    }

    /// Whether `self` divides `other`.
    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        ((other.0 | HIGH).wrapping_sub(self.0)) & HIGH == HIGH
    }

    /// `self / other`; caller guarantees divisibility.
    #[inline]
    pub fn div(&self, other: &Monomial) -> Monomial {
        debug_assert!(other.divides(self));
        Monomial(self.0 - other.0)
    }

    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        other.divides(self).then(|| Monomial(self.0 - other.0))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        // bytewise max: where a - b borrows, take b
        let diff = (self.0 | HIGH).wrapping_sub(other.0);
        let ge = (diff & HIGH) >> 7; // 1 in each byte where a >= b
        let mask = ge * 0xff;
        Monomial((self.0 & mask) | (other.0 & !mask & LOW7))
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let diff = (self.0 | HIGH).wrapping_sub(other.0);
        let ge = (diff & HIGH) >> 7;
        let mask = ge * 0xff;
        Monomial((other.0 & mask) | (self.0 & !mask & LOW7))
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.gcd(other).is_one()
    }

    /// Whether the monomial is a pure power of a single variable, and which.
    pub fn pure_power_var(&self) -> Option<usize> {
        if self.is_one() {
            return None;
        }
        let lowest = self.0.trailing_zeros() as usize / 8;
        (self.0 >> (8 * lowest) <= 0xff).then_some(lowest)
    }

    /// Whether any of the variables `lo..hi` occurs.
    pub fn involves_range(&self, lo: usize, hi: usize) -> bool {
        (lo..hi).any(|i| self.exp(i) != 0)
    }

    /// Moves the exponent of variable `i` to `map[i]`.
    pub fn remap(&self, map: &[usize]) -> Monomial {
        let mut out = 0u128;
        for (i, &j) in map.iter().enumerate() {
            let e = (self.0 >> (8 * i)) & 0xff;
            if e != 0 {
                out += e << (8 * j);
            }
        }
        assert!(out & HIGH == 0, "monomial exponent overflow");
        Monomial(out)
    }

    pub fn with_names<'a>(&'a self, names: &'a [String]) -> MonomialDisplay<'a> {
        MonomialDisplay { m: self, names }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = (0..MAX_VARS).rev().find(|&i| self.exp(i) != 0).map_or(0, |i| i + 1);
        write!(f, "{:?}", self.exponents(n))
    }
}

pub struct MonomialDisplay<'a> {
    m: &'a Monomial,
    names: &'a [String],
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, name) in self.names.iter().enumerate() {
            let e = self.m.exp(i);
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Ordering used inside the blocks of a block order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InnerOrder {
    DegRevLex,
    Lex,
}

/// Monomial orders. All of them are well-orders compatible with multiplication.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[derive(Default)]
pub enum MonomialOrder {
    #[default]
    DegRevLex,
    Lex,
    /// The first `elim` variables are compared first (by degree, then reverse
    /// lexicographically); ties are broken by `inner` on the remaining ones.
    Block { elim: usize, inner: InnerOrder },
}


#[inline]
fn range_mask(lo: usize, hi: usize) -> u128 {
    let top = if hi >= MAX_VARS { u128::MAX } else { (1u128 << (8 * hi)) - 1 };
    let bottom = if lo == 0 { 0 } else { (1u128 << (8 * lo)) - 1 };
    top & !bottom
}

// Comparing packed words as integers compares exponents from the last
// variable down, so reverse-lex is a reversed integer comparison and lex is an
// integer comparison after a byte swap.
#[inline]
fn revlex(a: &Monomial, b: &Monomial, lo: usize, hi: usize) -> Ordering {
    let mask = range_mask(lo, hi);
    (b.0 & mask).cmp(&(a.0 & mask))
}

#[inline]
fn lex(a: &Monomial, b: &Monomial, lo: usize, hi: usize) -> Ordering {
    let mask = range_mask(lo, hi);
    (a.0 & mask).swap_bytes().cmp(&(b.0 & mask).swap_bytes())
}

impl MonomialOrder {
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        if a == b {
            return Ordering::Equal;
        }
        match *self {
            MonomialOrder::DegRevLex => a
                .degree()
                .cmp(&b.degree())
                .then_with(|| revlex(a, b, 0, MAX_VARS)),
            MonomialOrder::Lex => lex(a, b, 0, MAX_VARS),
            MonomialOrder::Block { elim, inner } => a
                .partial_degree(0, elim)
                .cmp(&b.partial_degree(0, elim))
                .then_with(|| revlex(a, b, 0, elim))
                .then_with(|| match inner {
                    InnerOrder::DegRevLex => a
                        .partial_degree(elim, MAX_VARS)
                        .cmp(&b.partial_degree(elim, MAX_VARS))
                        .then_with(|| revlex(a, b, elim, MAX_VARS)),
                    InnerOrder::Lex => lex(a, b, elim, MAX_VARS),
                }),
        }
    }

    /// The order used for the variables after an elimination block.
    pub fn inner(&self) -> InnerOrder {
        match *self {
            MonomialOrder::Lex => InnerOrder::Lex,
            MonomialOrder::DegRevLex => InnerOrder::DegRevLex,
            MonomialOrder::Block { inner, .. } => inner,
        }
    }

    /// Whether every monomial is compared by total degree first.
    pub fn is_graded(&self) -> bool {
        matches!(self, MonomialOrder::DegRevLex)
    }

    pub fn name(&self) -> String {
        match self {
            MonomialOrder::DegRevLex => "degrevlex".into(),
            MonomialOrder::Lex => "lex".into(),
            MonomialOrder::Block { elim, inner } => format!("block({elim},{inner:?})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mono() -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u32..6, 5).prop_map(|e| Monomial::from_exponents(&e))
    }

    const ORDERS: [MonomialOrder; 4] = [
        MonomialOrder::DegRevLex,
        MonomialOrder::Lex,
        MonomialOrder::Block { elim: 1, inner: InnerOrder::DegRevLex },
        MonomialOrder::Block { elim: 2, inner: InnerOrder::Lex },
    ];

    proptest! {
        #[test]
        fn packed_ops_match_exponentwise(a in mono(), b in mono()) {
            let (ea, eb) = (a.exponents(5), b.exponents(5));
            let lcm: Vec<u32> = ea.iter().zip(&eb).map(|(x, y)| *x.max(y)).collect();
            let gcd: Vec<u32> = ea.iter().zip(&eb).map(|(x, y)| *x.min(y)).collect();
            prop_assert_eq!(a.lcm(&b), Monomial::from_exponents(&lcm));
            prop_assert_eq!(a.gcd(&b), Monomial::from_exponents(&gcd));
            prop_assert_eq!(a.divides(&b), ea.iter().zip(&eb).all(|(x, y)| x <= y));
            prop_assert_eq!(a.degree(), ea.iter().sum::<u32>());
            prop_assert_eq!(a.mul(&b).div(&b), a);
        }

        #[test]
        fn orders_are_multiplicative(a in mono(), b in mono(), c in mono()) {
            for o in ORDERS {
                prop_assert_eq!(o.cmp(&a, &b), o.cmp(&a.mul(&c), &b.mul(&c)));
                prop_assert_ne!(o.cmp(&Monomial::ONE, &a), Ordering::Greater);
                prop_assert_eq!(o.cmp(&a, &b), o.cmp(&b, &a).reverse());
            }
        }
    }

    #[test]
    fn degrevlex_small_cases() {
        let o = MonomialOrder::DegRevLex;
        let x = Monomial::var(0);
        let y = Monomial::var(1);
        let z = Monomial::var(2);
        assert_eq!(o.cmp(&x, &y), Ordering::Greater);
        // x*z < y^2 in degrevlex
        assert_eq!(o.cmp(&x.mul(&z), &y.mul(&y)), Ordering::Less);
        assert_eq!(MonomialOrder::Lex.cmp(&x.mul(&z), &y.mul(&y)), Ordering::Greater);
    }

    #[test]
    fn block_order_eliminates_first_block() {
        let o = MonomialOrder::Block { elim: 1, inner: InnerOrder::DegRevLex };
        let u = Monomial::var(0);
        let big = Monomial::from_exponents(&[0, 9, 9]);
        assert_eq!(o.cmp(&u, &big), Ordering::Greater);
    }

    #[test]
    fn pure_powers() {
        assert_eq!(Monomial::var_pow(3, 5).pure_power_var(), Some(3));
        assert_eq!(Monomial::from_exponents(&[1, 1]).pure_power_var(), None);
        assert_eq!(Monomial::ONE.pure_power_var(), None);
    }
}
