//! Fixed-point complex numbers with a configurable number of fractional bits.
//!
//! A value is `(re + i·im) · 2^-prec` with big-integer mantissas. Binary
//! operations work at the larger of the two operand precisions, so exact
//! small integers can be carried at precision 0.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::scalar::{FieldScalar, Ring, Scalar};

pub const DEFAULT_PRECISION: u32 = 256;

/// Magnitude below which a high-precision value counts as zero.
pub const ZERO_THRESHOLD: f64 = 1e-20;

#[derive(Clone, PartialEq, Eq)]
pub struct HpComplex {
    re: BigInt,
    im: BigInt,
    prec: u32,
}

fn shift_down_round(x: &BigInt, bits: u32) -> BigInt {
    if bits == 0 {
        return x.clone();
    }
    let half = BigInt::from(1) << (bits - 1);
    (x + half) >> bits
}

fn div_round(n: &BigInt, d: &BigInt) -> BigInt {
    let (q, r) = n.div_mod_floor(d);
    // r has the sign of d; round half away from the floor
    let twice = &r * 2;
    if d.is_positive() {
        if twice >= *d {
            q + 1
        } else {
            q
        }
    } else if twice <= *d {
        q + 1
    } else {
        q
    }
}

fn big_to_f64_scaled(x: &BigInt, prec: u32) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let bits = x.bits();
    // keep 64 significant bits before converting
    if bits > 64 {
        let drop = bits - 64;
        let top = (x >> drop).to_f64().unwrap_or(0.0);
        top * 2f64.powi(drop as i32 - prec as i32)
    } else {
        x.to_f64().unwrap_or(0.0) * 2f64.powi(-(prec as i32))
    }
}

impl HpComplex {
    pub fn zero() -> Self {
        HpComplex { re: BigInt::zero(), im: BigInt::zero(), prec: 0 }
    }

    pub fn from_parts(re: BigInt, im: BigInt, prec: u32) -> Self {
        HpComplex { re, im, prec }
    }

    pub fn from_int(n: i64) -> Self {
        HpComplex { re: BigInt::from(n), im: BigInt::zero(), prec: 0 }
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> Self {
        let n = q.numer() << prec;
        HpComplex { re: div_round(&n, q.denom()), im: BigInt::zero(), prec }
    }

    pub fn from_rational_parts(re: &BigRational, im: &BigRational, prec: u32) -> Self {
        let r = Self::from_rational(re, prec);
        let i = Self::from_rational(im, prec);
        HpComplex { re: r.re, im: i.re, prec }
    }

    pub fn from_f64(re: f64, im: f64, prec: u32) -> Self {
        let conv = |v: f64| -> BigInt {
            if v == 0.0 || !v.is_finite() {
                return BigInt::zero();
            }
            // v = m · 2^e with 53-bit integer m
            let bits = v.to_bits();
            let exp = ((bits >> 52) & 0x7ff) as i64;
            let mant = if exp == 0 { (bits & 0xf_ffff_ffff_ffff) << 1 } else { (bits & 0xf_ffff_ffff_ffff) | 0x10_0000_0000_0000 };
            let e = exp - 1075 + prec as i64;
            let m = BigInt::from(mant);
            let m = if e >= 0 { m << e as u64 } else { shift_down_round(&m, (-e) as u32) };
            if v < 0.0 {
                -m
            } else {
                m
            }
        };
        HpComplex { re: conv(re), im: conv(im), prec }
    }

    pub fn from_c64(z: Complex64, prec: u32) -> Self {
        Self::from_f64(z.re, z.im, prec)
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        match prec.cmp(&self.prec) {
            Ordering::Equal => self.clone(),
            Ordering::Greater => {
                let s = prec - self.prec;
                HpComplex { re: &self.re << s, im: &self.im << s, prec }
            }
            Ordering::Less => {
                let s = self.prec - prec;
                HpComplex { re: shift_down_round(&self.re, s), im: shift_down_round(&self.im, s), prec }
            }
        }
    }

    fn aligned(&self, other: &Self) -> (HpComplex, HpComplex) {
        let p = self.prec.max(other.prec);
        (self.with_prec(p), other.with_prec(p))
    }

    pub fn re_f64(&self) -> f64 {
        big_to_f64_scaled(&self.re, self.prec)
    }

    pub fn im_f64(&self) -> f64 {
        big_to_f64_scaled(&self.im, self.prec)
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re_f64(), self.im_f64())
    }

    pub fn abs_f64(&self) -> f64 {
        self.re_f64().hypot(self.im_f64())
    }

    /// log2 of an upper bound on |z|; `None` for exact zero.
    pub fn log2_abs(&self) -> Option<f64> {
        let r = self.re.magnitude().bits().max(self.im.magnitude().bits());
        if r == 0 {
            return None;
        }
        let z = self.to_c64();
        let a = z.norm();
        if a > 0.0 && a.is_finite() {
            Some(a.log2())
        } else {
            Some(r as f64 - self.prec as f64)
        }
    }

    pub fn conj(&self) -> Self {
        HpComplex { re: self.re.clone(), im: -&self.im, prec: self.prec }
    }

    pub fn re_part(&self) -> HpComplex {
        HpComplex { re: self.re.clone(), im: BigInt::zero(), prec: self.prec }
    }

    pub fn im_part(&self) -> HpComplex {
        HpComplex { re: self.im.clone(), im: BigInt::zero(), prec: self.prec }
    }

    pub fn is_exact_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn hp_add(&self, o: &Self) -> Self {
        let (a, b) = self.aligned(o);
        HpComplex { re: a.re + b.re, im: a.im + b.im, prec: a.prec }
    }

    pub fn hp_sub(&self, o: &Self) -> Self {
        let (a, b) = self.aligned(o);
        HpComplex { re: a.re - b.re, im: a.im - b.im, prec: a.prec }
    }

    pub fn hp_mul(&self, o: &Self) -> Self {
        let p = self.prec.max(o.prec);
        let re = &self.re * &o.re - &self.im * &o.im;
        let im = &self.re * &o.im + &self.im * &o.re;
        let total = self.prec + o.prec;
        HpComplex { re: shift_down_round(&re, total - p), im: shift_down_round(&im, total - p), prec: p }
    }

    pub fn hp_neg(&self) -> Self {
        HpComplex { re: -&self.re, im: -&self.im, prec: self.prec }
    }

    pub fn hp_div(&self, o: &Self) -> Option<Self> {
        if o.is_exact_zero() {
            return None;
        }
        let p = self.prec.max(o.prec);
        // (a+bi)/(c+di) = (a+bi)(c-di) / (c²+d²)
        let nre = &self.re * &o.re + &self.im * &o.im;
        let nim = &self.im * &o.re - &self.re * &o.im;
        let den = &o.re * &o.re + &o.im * &o.im;
        // value = n·2^-(p1+p2) / (den·2^-2p2); raw result at precision p
        let sh = p + o.prec - self.prec;
        let re = div_round(&(nre << sh), &den);
        let im = div_round(&(nim << sh), &den);
        Some(HpComplex { re, im, prec: p })
    }

    pub fn mul_int(&self, k: i64) -> Self {
        HpComplex { re: &self.re * k, im: &self.im * k, prec: self.prec }
    }

    /// Principal square root, computed at precision `prec`.
    pub fn sqrt(&self, prec: u32) -> Self {
        let z = self.with_prec(prec);
        if z.is_exact_zero() {
            return z;
        }
        let mut w = HpComplex::from_c64(z.to_c64().sqrt(), prec);
        if w.is_exact_zero() {
            w = HpComplex::from_f64(1e-300, 0.0, prec);
        }
        let half = HpComplex::from_rational(&BigRational::new(1.into(), 2.into()), prec);
        for _ in 0..(4 + (prec / 32)) {
            let q = match z.hp_div(&w) {
                Some(q) => q,
                None => break,
            };
            let next = w.hp_add(&q).hp_mul(&half);
            if next == w {
                break;
            }
            w = next;
        }
        // keep the principal branch
        if w.re.is_negative() || (w.re.is_zero() && w.im.is_negative()) {
            w = w.hp_neg();
        }
        w
    }

    /// Re and Im as exact rationals (dyadic).
    pub fn to_rational_parts(&self) -> (BigRational, BigRational) {
        let d = BigInt::from(1) << self.prec;
        (BigRational::new(self.re.clone(), d.clone()), BigRational::new(self.im.clone(), d))
    }

    pub fn max_abs_component_f64(&self) -> f64 {
        self.re_f64().abs().max(self.im_f64().abs())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = HpComplex::from_int(1);
        for _ in 0..e {
            acc = acc.hp_mul(self);
        }
        acc
    }
}

impl fmt::Debug for HpComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.17e}{:+.17e}i", self.re_f64(), self.im_f64())
    }
}

impl fmt::Display for HpComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = (self.re_f64(), self.im_f64());
        if im == 0.0 {
            write!(f, "{}", re)
        } else {
            write!(f, "{}{:+}i", re, im)
        }
    }
}

impl Ring for HpComplex {
    type Ctx = u32;

    fn from_rational(q: &BigRational, prec: &u32) -> Self {
        HpComplex::from_rational(q, *prec)
    }
    fn add(&self, other: &Self) -> Self {
        self.hp_add(other)
    }
    fn sub(&self, other: &Self) -> Self {
        self.hp_sub(other)
    }
    fn mul(&self, other: &Self) -> Self {
        self.hp_mul(other)
    }
    fn neg(&self) -> Self {
        self.hp_neg()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_exact_zero() || self.max_abs_component_f64() < ZERO_THRESHOLD
    }
}

impl Scalar for HpComplex {
    fn to_complex(&self, prec: u32) -> HpComplex {
        self.with_prec(prec)
    }
}

impl FieldScalar for HpComplex {
    fn inv(&self) -> Option<Self> {
        if Ring::is_zero_elem(self) {
            return None;
        }
        HpComplex::from_int(1).with_prec(self.prec).hp_div(self)
    }
}
