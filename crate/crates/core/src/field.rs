//! Arithmetic in the prime field `F_p`.

use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

/// Largest supported modulus (exclusive).
pub const MAX_MODULUS: u32 = 1 << 16;

/// Returns true when `p` is a prime in the supported range `2 <= p < 2^16`.
pub fn is_supported_prime(p: u32) -> bool {
    if !(2..MAX_MODULUS).contains(&p) {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[inline]
pub(crate) fn add_mod(a: u32, b: u32, p: u32) -> u32 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub(crate) fn sub_mod(a: u32, b: u32, p: u32) -> u32 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub(crate) fn neg_mod(a: u32, p: u32) -> u32 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

#[inline]
pub(crate) fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

pub(crate) fn pow_mod(mut a: u32, mut e: u64, p: u32) -> u32 {
    let mut acc = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

/// Multiplicative inverse; `a` must be nonzero mod `p`.
#[inline]
pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p), "inverse of zero");
    pow_mod(a, (p - 2) as u64, p)
}

/// Reduces a signed integer into `[0, p)`.
pub fn reduce_signed(v: i64, p: u32) -> u32 {
    v.rem_euclid(p as i64) as u32
}

/// An element of `F_p`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Fp {
    value: u32,
    p: u32,
}

impl Fp {
    pub fn new(value: u32, p: u32) -> Self {
        assert!(is_supported_prime(p), "modulus {p} is not a supported prime");
        Fp { value: value % p, p }
    }

    pub fn from_i64(value: i64, p: u32) -> Self {
        Fp::new(reduce_signed(value, p), p)
    }

    pub fn zero(p: u32) -> Self {
        Fp::new(0, p)
    }

    pub fn one(p: u32) -> Self {
        Fp::new(1, p)
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.p
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    /// `None` for zero.
    pub fn inv(self) -> Option<Self> {
        if self.value == 0 {
            None
        } else {
            Some(Fp { value: inv_mod(self.value, self.p), p: self.p })
        }
    }

    pub fn pow(self, e: u64) -> Self {
        Fp { value: pow_mod(self.value, e, self.p), p: self.p }
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.p)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        assert_eq!(self.p, rhs.p, "mixed moduli");
        Fp { value: add_mod(self.value, rhs.value, self.p), p: self.p }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        assert_eq!(self.p, rhs.p, "mixed moduli");
        Fp { value: sub_mod(self.value, rhs.value, self.p), p: self.p }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        assert_eq!(self.p, rhs.p, "mixed moduli");
        Fp { value: mul_mod(self.value, rhs.value, self.p), p: self.p }
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp { value: neg_mod(self.value, self.p), p: self.p }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        assert!(is_supported_prime(2));
        assert!(is_supported_prime(3));
        assert!(is_supported_prime(65521));
        assert!(!is_supported_prime(1));
        assert!(!is_supported_prime(4));
        assert!(!is_supported_prime(65537));
    }

    #[test]
    fn every_nonzero_element_is_invertible() {
        for p in [2u32, 3, 5, 7, 13] {
            for a in 1..p {
                let x = Fp::new(a, p);
                assert_eq!(x * x.inv().unwrap(), Fp::one(p));
            }
            assert!(Fp::zero(p).inv().is_none());
        }
    }

    #[test]
    fn signed_reduction() {
        assert_eq!(Fp::from_i64(-1, 3).value(), 2);
        assert_eq!(Fp::from_i64(-7, 5).value(), 3);
    }
}
