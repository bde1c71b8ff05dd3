use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::hp::HpComplex;

/// Commutative ring arithmetic shared by polynomials, determinants and
/// point evaluation.
///
/// `Ctx` carries whatever a value needs to be built from a rational: nothing
/// for `BigRational` and polynomials, the radicand for quadratic numbers,
/// the working precision for `HpComplex`.
pub trait Ring: Clone + Debug + Send + Sync {
    type Ctx: Clone + Debug + Send + Sync;

    fn from_rational(q: &BigRational, ctx: &Self::Ctx) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero_elem(&self) -> bool;

    fn zero_of(ctx: &Self::Ctx) -> Self {
        Self::from_rational(&BigRational::zero(), ctx)
    }

    fn one_of(ctx: &Self::Ctx) -> Self {
        Self::from_rational(&BigRational::one(), ctx)
    }

    fn from_int(n: i64, ctx: &Self::Ctx) -> Self {
        Self::from_rational(&BigRational::from_integer(BigInt::from(n)), ctx)
    }

    fn scale(&self, q: &BigRational, ctx: &Self::Ctx) -> Self {
        self.mul(&Self::from_rational(q, ctx))
    }
}

/// Ring elements that denote complex numbers.
pub trait Scalar: Ring {
    fn to_complex(&self, prec: u32) -> HpComplex;
}

pub trait FieldScalar: Scalar {
    fn inv(&self) -> Option<Self>;

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.mul(&i))
    }
}

impl Ring for BigRational {
    type Ctx = ();

    fn from_rational(q: &BigRational, _: &()) -> Self {
        q.clone()
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
    fn is_zero_elem(&self) -> bool {
        Zero::is_zero(self)
    }
}

impl Scalar for BigRational {
    fn to_complex(&self, prec: u32) -> HpComplex {
        HpComplex::from_rational(self, prec)
    }
}

impl FieldScalar for BigRational {
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// Formats a rational as `p` or `p/q`.
pub fn rational_string(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(BigRational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}
