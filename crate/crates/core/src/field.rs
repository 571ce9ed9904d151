//! Arithmetic in the prime field `F_p`.
//!
//! Elements are stored as canonical residues in `[0, p)`; the modulus is a
//! runtime value carried by every ring context.

use std::fmt;

use thiserror::Error;

/// Largest modulus accepted (exclusive).
pub const MAX_MODULUS: u64 = 1 << 31;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("modulus {0} out of range: need 2 < p < 2^31")]
    ModulusOutOfRange(u64),
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("inversion of zero")]
    InversionOfZero,
}

/// An odd prime `p` with `2 < p < 2^31`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeModulus(u32);

/// A canonical residue modulo some [`PrimeModulus`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar(u32);

impl Scalar {
    pub const ZERO: Scalar = Scalar(0);
    pub const ONE: Scalar = Scalar(1);

    #[inline]
    pub fn value(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl PrimeModulus {
    /// Validates `p`. Trial division is exact and fast below `2^31`.
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if p <= 2 || p >= MAX_MODULUS {
            return Err(FieldError::ModulusOutOfRange(p));
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(PrimeModulus(p as u32))
    }

    #[inline]
    pub fn value(self) -> u32 {
        self.0
    }

    /// Reduces an arbitrary non-negative integer into the field.
    #[inline]
    pub fn scalar(self, v: u64) -> Scalar {
        Scalar((v % self.0 as u64) as u32)
    }

    /// Reduces a signed integer into the field.
    pub fn scalar_signed(self, v: i64) -> Scalar {
        Scalar(v.rem_euclid(self.0 as i64) as u32)
    }

    #[inline]
    pub fn add(self, a: Scalar, b: Scalar) -> Scalar {
        debug_assert!(a.0 < self.0 && b.0 < self.0);
        let s = a.0 as u64 + b.0 as u64;
        let p = self.0 as u64;
        Scalar(if s >= p { s - p } else { s } as u32)
    }

    #[inline]
    pub fn neg(self, a: Scalar) -> Scalar {
        if a.0 == 0 {
            a
        } else {
            Scalar(self.0 - a.0)
        }
    }

    #[inline]
    pub fn sub(self, a: Scalar, b: Scalar) -> Scalar {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(self, a: Scalar, b: Scalar) -> Scalar {
        debug_assert!(a.0 < self.0 && b.0 < self.0);
        Scalar(((a.0 as u64 * b.0 as u64) % self.0 as u64) as u32)
    }

    /// Multiplicative inverse by the extended Euclidean algorithm.
    pub fn inv(self, a: Scalar) -> Result<Scalar, FieldError> {
        if a.0 == 0 {
            return Err(FieldError::InversionOfZero);
        }
        let (mut r0, mut r1) = (self.0 as i64, a.0 as i64);
        let (mut s0, mut s1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        debug_assert_eq!(r0, 1);
        Ok(self.scalar_signed(s0))
    }

    /// `a / b`; fails only when `b` is zero.
    pub fn div(self, a: Scalar, b: Scalar) -> Result<Scalar, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }
}

impl fmt::Display for PrimeModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}
