//! Exact arithmetic in a quadratic field ℚ(√d).

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::hp::HpComplex;
use super::scalar::{rational_string, FieldScalar, Ring, Scalar};

/// `a + b·√d` for a square-free integer `d ≠ 1` carried as the ring context.
///
/// For negative `d` the square root is `i·√|d|`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QElem {
    pub a: BigRational,
    pub b: BigRational,
    pub d: BigInt,
}

impl QElem {
    pub fn new(a: BigRational, b: BigRational, d: BigInt) -> Self {
        QElem { a, b, d }
    }

    pub fn rational(a: BigRational, d: BigInt) -> Self {
        QElem { a, b: BigRational::zero(), d }
    }

    pub fn sqrt_d(d: BigInt) -> Self {
        QElem { a: BigRational::zero(), b: BigRational::one(), d }
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn conj(&self) -> Self {
        QElem { a: self.a.clone(), b: -&self.b, d: self.d.clone() }
    }

    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.b * &self.b * BigRational::from_integer(self.d.clone())
    }

    /// Primitive integer minimal polynomial, coefficients lowest first.
    pub fn minpoly(&self) -> Vec<BigInt> {
        use super::univariate::UniPoly;
        if self.is_rational() {
            return UniPoly::linear_root(&self.a).primitive_integer();
        }
        let two = BigRational::from_integer(BigInt::from(2));
        UniPoly::new(vec![self.norm(), -(&self.a * two), BigRational::one()]).primitive_integer()
    }

    fn check(&self, o: &Self) {
        debug_assert!(self.d == o.d || self.b.is_zero() || o.b.is_zero(), "mixed quadratic fields");
    }

    fn field(&self, o: &Self) -> BigInt {
        if self.b.is_zero() {
            o.d.clone()
        } else {
            self.d.clone()
        }
    }
}

impl fmt::Display for QElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", rational_string(&self.a));
        }
        let root = format!("sqrt({})", self.d);
        let b = if self.b.abs().is_one() { root } else { format!("{}*{root}", rational_string(&self.b.abs())) };
        if self.a.is_zero() {
            if self.b.is_negative() {
                write!(f, "-{b}")
            } else {
                write!(f, "{b}")
            }
        } else {
            write!(f, "{} {} {b}", rational_string(&self.a), if self.b.is_negative() { "-" } else { "+" })
        }
    }
}

impl fmt::Debug for QElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Ring for QElem {
    type Ctx = BigInt;

    fn from_rational(q: &BigRational, d: &BigInt) -> Self {
        QElem::rational(q.clone(), d.clone())
    }
    fn add(&self, o: &Self) -> Self {
        self.check(o);
        QElem { a: &self.a + &o.a, b: &self.b + &o.b, d: self.field(o) }
    }
    fn sub(&self, o: &Self) -> Self {
        self.check(o);
        QElem { a: &self.a - &o.a, b: &self.b - &o.b, d: self.field(o) }
    }
    fn mul(&self, o: &Self) -> Self {
        self.check(o);
        let d = self.field(o);
        let dq = BigRational::from_integer(d.clone());
        QElem { a: &self.a * &o.a + &self.b * &o.b * dq, b: &self.a * &o.b + &self.b * &o.a, d }
    }
    fn neg(&self) -> Self {
        QElem { a: -&self.a, b: -&self.b, d: self.d.clone() }
    }
    fn is_zero_elem(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl Scalar for QElem {
    fn to_complex(&self, prec: u32) -> HpComplex {
        let a = HpComplex::from_rational(&self.a, prec);
        if self.b.is_zero() {
            return a;
        }
        let root = HpComplex::from_rational(&BigRational::from_integer(self.d.clone()), prec).sqrt(prec);
        a.hp_add(&HpComplex::from_rational(&self.b, prec).hp_mul(&root))
    }
}

impl FieldScalar for QElem {
    fn inv(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        Some(QElem { a: &self.a / &n, b: -&self.b / &n, d: self.d.clone() })
    }
}

/// Splits `n ≠ 0` as `k²·d` with `d` square-free; returns `(k, d)`.
pub fn square_free_split(n: &BigInt) -> (BigInt, BigInt) {
    let mut rest = n.abs();
    let mut k = BigInt::one();
    let mut d = if n.is_negative() { -BigInt::one() } else { BigInt::one() };
    let mut p = BigInt::from(2);
    while &p * &p <= rest {
        let mut e = 0u32;
        while (&rest % &p).is_zero() {
            rest /= &p;
            e += 1;
        }
        for _ in 0..e / 2 {
            k *= &p;
        }
        if e % 2 == 1 {
            d *= &p;
        }
        p += 1;
    }
    d *= rest;
    (k, d)
}
