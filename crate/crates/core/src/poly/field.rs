//! Coefficient fields: exact rationals and prime fields.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Default characteristic for the prime-field fast path.
pub const DEFAULT_PRIME: u32 = 32003;

/// A coefficient field. Elements of prime fields carry their modulus, so
/// constants are built from an explicit [`Field::Context`].
pub trait Field: Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    type Context: Clone + fmt::Debug + PartialEq + Send + Sync;

    fn from_i64(ctx: &Self::Context, v: i64) -> Self;
    fn context(&self) -> Self::Context;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;

    fn zero(ctx: &Self::Context) -> Self {
        Self::from_i64(ctx, 0)
    }

    fn one(ctx: &Self::Context) -> Self {
        Self::from_i64(ctx, 1)
    }

    fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    /// Whether the element prints with a leading minus sign.
    fn is_negative(&self) -> bool {
        false
    }
}

/// Exact rational numbers.
pub type Rational = BigRational;

impl Field for BigRational {
    type Context = ();

    fn from_i64(_: &(), v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn context(&self) {}

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn is_one(&self) -> bool {
        One::is_one(self)
    }

    fn add(&self, other: &Self) -> Self {
        self + other
    }

    fn sub(&self, other: &Self) -> Self {
        self - other
    }

    fn mul(&self, other: &Self) -> Self {
        self * other
    }

    fn neg(&self) -> Self {
        -self
    }

    fn inv(&self) -> Self {
        assert!(!Zero::is_zero(self), "inverse of zero");
        self.recip()
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

/// An element of `Z/pZ` for a prime `p < 2^31`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u32,
    modulus: u32,
}

/// The characteristic of a prime field.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeModulus(u32);

impl PrimeModulus {
    /// Returns `None` unless `p` is a prime in `[2, 2^31)`.
    pub fn new(p: u32) -> Option<Self> {
        (p >= 2 && p < (1 << 31) && is_prime(p)).then_some(PrimeModulus(p))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

impl Default for PrimeModulus {
    fn default() -> Self {
        PrimeModulus(DEFAULT_PRIME)
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Fp {
    pub fn value(&self) -> u32 {
        self.value
    }

    fn make(value: u64, modulus: u32) -> Self {
        Fp {
            value: (value % modulus as u64) as u32,
            modulus,
        }
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.modulus)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Field for Fp {
    type Context = PrimeModulus;

    fn from_i64(ctx: &PrimeModulus, v: i64) -> Self {
        let m = ctx.0 as i64;
        Fp::make(v.rem_euclid(m) as u64, ctx.0)
    }

    fn context(&self) -> PrimeModulus {
        PrimeModulus(self.modulus)
    }

    fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn is_one(&self) -> bool {
        self.value == 1
    }

    fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.modulus, other.modulus);
        Fp::make(self.value as u64 + other.value as u64, self.modulus)
    }

    fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.modulus, other.modulus);
        Fp::make(self.value as u64 + (self.modulus - other.value) as u64, self.modulus)
    }

    fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.modulus, other.modulus);
        Fp::make(self.value as u64 * other.value as u64, self.modulus)
    }

    fn neg(&self) -> Self {
        Fp::make((self.modulus - self.value) as u64, self.modulus)
    }

    fn inv(&self) -> Self {
        assert!(self.value != 0, "inverse of zero");
        // Fermat: a^(p-2)
        let m = self.modulus as u64;
        let (mut base, mut exp, mut acc) = (self.value as u64, m - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % m;
            }
            base = base * base % m;
            exp >>= 1;
        }
        Fp::make(acc, self.modulus)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let ctx = PrimeModulus::default();
        let a = Fp::from_i64(&ctx, -1);
        assert_eq!(a.value(), DEFAULT_PRIME - 1);
        assert!(a.add(&Fp::one(&ctx)).is_zero());
        let b = Fp::from_i64(&ctx, 12345);
        assert!(b.mul(&b.inv()).is_one());
        assert_eq!(b.sub(&b), Fp::zero(&ctx));
        assert_eq!(b.neg().add(&b), Fp::zero(&ctx));
    }

    #[test]
    fn modulus_must_be_prime() {
        assert!(PrimeModulus::new(32003).is_some());
        assert!(PrimeModulus::new(32004).is_none());
        assert!(PrimeModulus::new(1).is_none());
        assert!(PrimeModulus::new(2).is_some());
    }

    #[test]
    fn rational_arithmetic() {
        let half = Rational::from_i64(&(), 1).div(&Rational::from_i64(&(), 2));
        assert_eq!(half.to_string(), "1/2");
        assert!(Field::is_one(&Field::add(&half, &half)));
        assert!(Field::is_negative(&Field::neg(&half)));
    }
}
