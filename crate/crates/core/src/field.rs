//! Coefficient fields.
//!
//! Two fields are provided: the rationals [`Q`] (arbitrary precision) and the
//! prime field [`Fp`] with `p = 2^31 - 1`, used for modular runs.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::AlgebraError;

pub trait Field: Clone + PartialEq + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static {
    /// Short tag used in reports.
    const NAME: &'static str;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_rational(r: &BigRational) -> Result<Self, AlgebraError>;

    fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    /// Field-specific Groebner basis algorithm; `None` defers to the generic
    /// engine.
    fn groebner_basis_hook(
        _ring: &std::sync::Arc<crate::ring::Ring>,
        _gens: &[crate::poly::Poly<Self>],
    ) -> Option<Result<Vec<crate::poly::Poly<Self>>, AlgebraError>> {
        None
    }

    /// `Some(true)` when the coefficient is printed with a leading minus sign.
    fn is_negative(&self) -> bool {
        false
    }
}

/// Rational numbers with arbitrary-precision numerator and denominator.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Q(pub BigRational);

impl Q {
    pub fn new(num: i64, den: i64) -> Self {
        Q(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn to_i64(&self) -> Option<i64> {
        if self.0.is_integer() {
            self.0.numer().to_i64()
        } else {
            None
        }
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Field for Q {
    const NAME: &'static str = "rational";

    fn zero() -> Self {
        Q(BigRational::zero())
    }
    fn one() -> Self {
        Q(BigRational::one())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn is_one(&self) -> bool {
        self.0.is_one()
    }
    fn add(&self, other: &Self) -> Self {
        Q(&self.0 + &other.0)
    }
    fn sub(&self, other: &Self) -> Self {
        Q(&self.0 - &other.0)
    }
    fn mul(&self, other: &Self) -> Self {
        Q(&self.0 * &other.0)
    }
    fn neg(&self) -> Self {
        Q(-&self.0)
    }
    fn inv(&self) -> Self {
        assert!(!self.0.is_zero(), "inverse of zero");
        Q(self.0.recip())
    }
    fn from_i64(v: i64) -> Self {
        Q(BigRational::from_integer(BigInt::from(v)))
    }
    fn from_rational(r: &BigRational) -> Result<Self, AlgebraError> {
        Ok(Q(r.clone()))
    }
    fn is_negative(&self) -> bool {
        self.0.is_negative()
    }
    fn groebner_basis_hook(
        ring: &std::sync::Arc<crate::ring::Ring>,
        gens: &[crate::poly::Poly<Self>],
    ) -> Option<Result<Vec<crate::poly::Poly<Self>>, AlgebraError>> {
        crate::modular::groebner_basis_q(ring, gens)
    }
}

/// Prime field modulo `2^31 - 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Fp(u32);

impl Fp {
    pub const MODULUS: u64 = 2_147_483_647;

    pub fn value(self) -> u32 {
        self.0
    }

    fn reduce(v: u64) -> Self {
        Fp((v % Self::MODULUS) as u32)
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self.0 as u64;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % Self::MODULUS;
            }
            base = base * base % Self::MODULUS;
            e >>= 1;
        }
        Fp(acc as u32)
    }

    fn from_bigint(v: &BigInt) -> Self {
        let m = BigInt::from(Self::MODULUS);
        let r = v.mod_floor(&m);
        Fp(r.to_u32().expect("residue fits in u32"))
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // symmetric representative reads better for small integers
        let v = self.0 as i64;
        let m = Self::MODULUS as i64;
        if v > m / 2 {
            write!(f, "{}", v - m)
        } else {
            write!(f, "{}", v)
        }
    }
}

impl Field for Fp {
    const NAME: &'static str = "modular";

    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn is_one(&self) -> bool {
        self.0 == 1
    }
    fn add(&self, other: &Self) -> Self {
        Self::reduce(self.0 as u64 + other.0 as u64)
    }
    fn sub(&self, other: &Self) -> Self {
        Self::reduce(self.0 as u64 + Self::MODULUS - other.0 as u64)
    }
    fn mul(&self, other: &Self) -> Self {
        Self::reduce(self.0 as u64 * other.0 as u64)
    }
    fn neg(&self) -> Self {
        if self.0 == 0 {
            *self
        } else {
            Fp((Self::MODULUS - self.0 as u64) as u32)
        }
    }
    fn inv(&self) -> Self {
        assert!(self.0 != 0, "inverse of zero");
        self.pow(Self::MODULUS - 2)
    }
    fn from_i64(v: i64) -> Self {
        Fp(v.rem_euclid(Self::MODULUS as i64) as u32)
    }
    fn from_rational(r: &BigRational) -> Result<Self, AlgebraError> {
        let den = Self::from_bigint(r.denom());
        if den.is_zero() {
            return Err(AlgebraError::UnluckyPrime);
        }
        Ok(Self::from_bigint(r.numer()).div(&den))
    }
    fn is_negative(&self) -> bool {
        self.0 as u64 > Self::MODULUS / 2
    }
}
