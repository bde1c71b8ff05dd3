use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::hp::{HpComplex, DEFAULT_PRECISION};
use super::quadratic::{square_free_split, QElem};
use super::scalar::{rational_string, Scalar};
use super::univariate::UniPoly;

/// An algebraic number given by its minimal polynomial and an isolating
/// approximation.
///
/// `minpoly` is `None` for values only known numerically.
#[derive(Clone, Debug)]
pub struct AlgebraicNumber {
    minpoly: Option<Vec<BigInt>>,
    approx: HpComplex,
    radius: f64,
}

#[derive(Serialize, Deserialize)]
struct AlgebraicJson {
    minpoly: Option<Vec<i64>>,
    approx: [f64; 2],
    radius: f64,
}

impl AlgebraicNumber {
    pub fn new(minpoly: Vec<BigInt>, approx: HpComplex, radius: f64) -> Self {
        AlgebraicNumber { minpoly: Some(minpoly), approx, radius }
    }

    pub fn numeric(approx: HpComplex, radius: f64) -> Self {
        AlgebraicNumber { minpoly: None, approx, radius }
    }

    pub fn rational(q: &BigRational) -> Self {
        AlgebraicNumber {
            minpoly: Some(UniPoly::linear_root(q).primitive_integer()),
            approx: HpComplex::from_rational(q, DEFAULT_PRECISION),
            radius: 0.0,
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::rational(&BigRational::from_integer(BigInt::from(n)))
    }

    pub fn quadratic(x: &QElem) -> Self {
        if x.is_rational() {
            return Self::rational(&x.a);
        }
        AlgebraicNumber { minpoly: Some(x.minpoly()), approx: x.to_complex(DEFAULT_PRECISION), radius: 0.0 }
    }

    pub fn minpoly(&self) -> Option<&[BigInt]> {
        self.minpoly.as_deref()
    }

    pub fn approx(&self) -> &HpComplex {
        &self.approx
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn degree(&self) -> Option<usize> {
        self.minpoly.as_ref().map(|m| m.len() - 1)
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        match self.minpoly.as_deref() {
            Some([c0, c1]) => Some(BigRational::new(-c0.clone(), c1.clone())),
            _ => None,
        }
    }

    /// The number as `a + b√d` when its minimal polynomial is quadratic,
    /// with the branch picked by the approximation.
    pub fn as_quadratic(&self) -> Option<QElem> {
        let [c0, c1, c2] = self.minpoly.as_deref()? else {
            return None;
        };
        let disc = c1 * c1 - BigInt::from(4) * c0 * c2;
        let (k, d) = square_free_split(&disc);
        let two_c2 = BigInt::from(2) * c2;
        let a = BigRational::new(-c1.clone(), two_c2.clone());
        let b = BigRational::new(k, two_c2);
        let plus = QElem::new(a.clone(), b.clone(), d.clone());
        let minus = QElem::new(a, -b, d);
        let dp = plus.to_complex(DEFAULT_PRECISION).hp_sub(&self.approx).abs_f64();
        let dm = minus.to_complex(DEFAULT_PRECISION).hp_sub(&self.approx).abs_f64();
        Some(if dp <= dm { plus } else { minus })
    }

    /// Closed form for rational and quadratic values, else the approximation.
    pub fn describe(&self) -> String {
        if let Some(q) = self.as_rational() {
            return rational_string(&q);
        }
        if let Some(x) = self.as_quadratic() {
            return x.to_string();
        }
        match &self.minpoly {
            Some(m) => format!("Root({}) ≈ {}", UniPoly::from_bigints(m), self.approx),
            None => format!("≈ {}", self.approx),
        }
    }

    /// `true` when `z` is within the isolating radius plus `tol`.
    pub fn is_close(&self, z: &HpComplex, tol: f64) -> bool {
        self.approx.hp_sub(z).abs_f64() <= self.radius + tol
    }
}

impl PartialEq for AlgebraicNumber {
    fn eq(&self, other: &Self) -> bool {
        self.minpoly == other.minpoly && self.approx.hp_sub(&other.approx).abs_f64() <= (self.radius + other.radius).max(1e-30)
    }
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.describe())
    }
}

fn to_i64(v: &BigInt) -> Option<i64> {
    use num_traits::ToPrimitive;
    v.to_i64()
}

impl Serialize for AlgebraicNumber {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let minpoly = match &self.minpoly {
            Some(m) => Some(
                m.iter()
                    .map(|c| to_i64(c).ok_or_else(|| serde::ser::Error::custom("minimal polynomial coefficient exceeds 64 bits")))
                    .collect::<Result<Vec<_>, _>>()?,
            ),
            None => None,
        };
        AlgebraicJson { minpoly, approx: [self.approx.re_f64(), self.approx.im_f64()], radius: self.radius }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for AlgebraicNumber {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = AlgebraicJson::deserialize(d)?;
        if let Some(m) = &j.minpoly {
            if m.len() < 2 || m.last().is_some_and(|c| *c <= 0) {
                return Err(serde::de::Error::custom("minimal polynomial needs degree ≥ 1 and positive leading coefficient"));
            }
        }
        let minpoly = j.minpoly.map(|m| m.into_iter().map(BigInt::from).collect::<Vec<_>>());
        // exact values are rebuilt from the polynomial so they keep full precision
        let approx = HpComplex::from_f64(j.approx[0], j.approx[1], DEFAULT_PRECISION);
        let mut out = AlgebraicNumber { minpoly, approx, radius: j.radius };
        if let Some(q) = out.as_rational() {
            out = AlgebraicNumber::rational(&q);
        } else if out.radius.is_zero() {
            if let Some(x) = out.as_quadratic() {
                out.approx = x.to_complex(DEFAULT_PRECISION);
            }
        }
        Ok(out)
    }
}

/// Conversion of a ring element to an [`AlgebraicNumber`].
pub trait ToAlgebraic {
    fn to_algebraic(&self) -> AlgebraicNumber;
}

impl ToAlgebraic for BigRational {
    fn to_algebraic(&self) -> AlgebraicNumber {
        AlgebraicNumber::rational(self)
    }
}

impl ToAlgebraic for QElem {
    fn to_algebraic(&self) -> AlgebraicNumber {
        AlgebraicNumber::quadratic(self)
    }
}

/// Numeric values carry no minimal polynomial.
impl ToAlgebraic for HpComplex {
    fn to_algebraic(&self) -> AlgebraicNumber {
        AlgebraicNumber::numeric(self.clone(), NUMERIC_RADIUS)
    }
}

/// Error bound attached to values computed at the default precision.
pub const NUMERIC_RADIUS: f64 = 1e-40;

/// Integer polynomial value at a rational, used in tests and checks.
pub fn eval_integer_poly(coeffs: &[BigInt], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in coeffs.iter().rev() {
        acc = acc * x + BigRational::from_integer(c.clone());
    }
    acc
}
