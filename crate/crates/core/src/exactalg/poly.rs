//! Sparse multivariate polynomials over ℚ in pair variables.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::pairvar::PairVar;
use super::scalar::{int, parse_rational, rational_string, Ring};
use super::AlgError;

/// A power product of pair variables, stored sorted by variable with
/// positive exponents.
///
/// Ordering is lex with the default variable order (`x[1,2]` highest).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(PairVar, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: PairVar) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn from_powers(powers: impl IntoIterator<Item = (PairVar, u32)>) -> Self {
        let mut map: BTreeMap<PairVar, u32> = BTreeMap::new();
        for (v, e) in powers {
            *map.entry(v).or_insert(0) += e;
        }
        Monomial(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn powers(&self) -> &[(PairVar, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn degree_in(&self, v: PairVar) -> u32 {
        self.0.iter().find(|&&(w, _)| w == v).map_or(0, |&(_, e)| e)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut a, mut b) = (0, 0);
        while a < self.0.len() || b < other.0.len() {
            match (self.0.get(a), other.0.get(b)) {
                (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Less => {
                        out.push((va, ea));
                        a += 1;
                    }
                    Ordering::Greater => {
                        out.push((vb, eb));
                        b += 1;
                    }
                    Ordering::Equal => {
                        out.push((va, ea + eb));
                        a += 1;
                        b += 1;
                    }
                },
                (Some(&t), None) => {
                    out.push(t);
                    a += 1;
                }
                (None, Some(&t)) => {
                    out.push(t);
                    b += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Monomial(out)
    }

    /// Splits off the power of `v`.
    pub fn without(&self, v: PairVar) -> (Monomial, u32) {
        let e = self.degree_in(v);
        (Monomial(self.0.iter().copied().filter(|&(w, _)| w != v).collect()), e)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let (mut a, mut b) = (0, 0);
        loop {
            match (self.0.get(a), other.0.get(b)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(va, ea)), Some(&(vb, eb))) => {
                    if va < vb {
                        return Ordering::Greater;
                    }
                    if vb < va {
                        return Ordering::Less;
                    }
                    if ea != eb {
                        return ea.cmp(&eb);
                    }
                    a += 1;
                    b += 1;
                }
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (n, (v, e)) in self.0.iter().enumerate() {
            if n > 0 {
                write!(f, " * ")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, BigRational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = MultiPoly::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(int(n))
    }

    pub fn var(v: PairVar) -> Self {
        Self::monomial(Monomial::var(v), BigRational::one())
    }

    /// `x[a,b]`, or the constant 2 when `a == b`.
    pub fn pair(a: usize, b: usize) -> Self {
        match PairVar::try_new(a, b) {
            Some(v) => Self::var(v),
            None => Self::from_int(2),
        }
    }

    pub fn monomial(m: Monomial, c: BigRational) -> Self {
        let mut p = MultiPoly::zero();
        p.add_term(m, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, BigRational)>) -> Self {
        let mut p = MultiPoly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn constant_value(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn variables(&self) -> BTreeSet<PairVar> {
        self.terms.keys().flat_map(|m| m.0.iter().map(|&(v, _)| v)).collect()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: PairVar) -> u32 {
        self.terms.keys().map(|m| m.degree_in(v)).max().unwrap_or(0)
    }

    /// Leading term in the default lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &BigRational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly { terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &BigRational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly { terms: self.terms.iter().map(|(t, k)| (t.mul(m), k * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut out = MultiPoly::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    pub fn substitute(&self, v: PairVar, value: &MultiPoly) -> MultiPoly {
        let mut map = HashMap::new();
        map.insert(v, value.clone());
        self.substitute_all(&map)
    }

    /// Replaces every variable in `map` simultaneously.
    pub fn substitute_all(&self, map: &HashMap<PairVar, MultiPoly>) -> MultiPoly {
        let mut powers: HashMap<(PairVar, u32), MultiPoly> = HashMap::new();
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut acc = MultiPoly::constant(c.clone());
            for &(v, e) in &m.0 {
                match map.get(&v) {
                    Some(p) => {
                        let pe = powers.entry((v, e)).or_insert_with(|| p.pow(e));
                        acc = &acc * &*pe;
                    }
                    None => kept.push((v, e)),
                }
            }
            if acc.is_zero() {
                continue;
            }
            let km = Monomial(kept);
            for (t, k) in acc.terms {
                out.add_term(t.mul(&km), k);
            }
        }
        out
    }

    /// Evaluates with `value(v)` supplying each variable.
    pub fn evaluate<T: Ring>(
        &self,
        value: impl Fn(PairVar) -> Option<T>,
        ctx: &T::Ctx,
    ) -> Result<T, AlgError> {
        let mut cache: HashMap<PairVar, Vec<T>> = HashMap::new();
        let mut total = T::zero_of(ctx);
        for (m, c) in &self.terms {
            let mut term = T::from_rational(c, ctx);
            for &(v, e) in &m.0 {
                if !cache.contains_key(&v) {
                    let x = value(v).ok_or(AlgError::MissingVar(v))?;
                    cache.insert(v, vec![T::one_of(ctx), x]);
                }
                let pows = cache.get_mut(&v).expect("cached");
                while pows.len() <= e as usize {
                    let next = pows.last().expect("nonempty").mul(&pows[1]);
                    pows.push(next);
                }
                term = term.mul(&pows[e as usize]);
            }
            total = total.add(&term);
        }
        Ok(total)
    }

    pub fn evaluate_map<T: Ring>(&self, values: &BTreeMap<PairVar, T>, ctx: &T::Ctx) -> Result<T, AlgError> {
        self.evaluate(|v| values.get(&v).cloned(), ctx)
    }

    /// Primitive integer multiple with positive leading coefficient.
    pub fn canonical(&self) -> MultiPoly {
        if self.is_zero() {
            return MultiPoly::zero();
        }
        let mut l = BigInt::one();
        for c in self.terms.values() {
            l = l.lcm(c.denom());
        }
        let cleared = self.scale(&BigRational::from_integer(l));
        let mut g = BigInt::zero();
        for c in cleared.terms.values() {
            g = g.gcd(c.numer());
        }
        if cleared.leading_term().expect("nonzero").1.is_negative() {
            g = -g;
        }
        cleared.scale(&BigRational::new(BigInt::one(), g))
    }

    /// Terms in descending lex order, the order used for text and JSON.
    fn terms_desc(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter().rev()
    }

    pub fn to_json_terms(&self) -> Vec<TermJson> {
        self.terms_desc()
            .map(|(m, c)| TermJson {
                coeff: rational_string(c),
                monomial: m.0.iter().map(|&(v, e)| (v.key(), e)).collect(),
            })
            .collect()
    }

    pub fn from_json_terms(terms: &[TermJson]) -> Result<MultiPoly, AlgError> {
        let mut p = MultiPoly::zero();
        for t in terms {
            let c = parse_rational(&t.coeff).ok_or_else(|| AlgError::Parse(format!("bad coefficient `{}`", t.coeff)))?;
            let mut powers = Vec::new();
            for (k, &e) in &t.monomial {
                let v = PairVar::from_key(k).ok_or_else(|| AlgError::Parse(format!("bad variable key `{k}`")))?;
                powers.push((v, e));
            }
            p.add_term(Monomial::from_powers(powers), c);
        }
        Ok(p)
    }
}

/// One polynomial term in the JSON form `{coeff:"p/q", monomial:{"i,j":e}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub monomial: BTreeMap<String, u32>,
}

impl Serialize for MultiPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json_terms().serialize(s)
    }
}

impl<'de> Deserialize<'de> for MultiPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let terms = Vec::<TermJson>::deserialize(d)?;
        MultiPoly::from_json_terms(&terms).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms_desc().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if n == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{}", rational_string(&a))?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{} * {m}", rational_string(&a))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_term(text: &str) -> Result<(Monomial, BigRational), AlgError> {
    let mut coeff = BigRational::one();
    let mut powers = Vec::new();
    for factor in text.split('*') {
        let factor = factor.trim();
        if factor.is_empty() {
            return Err(AlgError::Parse(format!("empty factor in `{text}`")));
        }
        if factor.starts_with('x') {
            let (var, exp) = match factor.split_once('^') {
                Some((v, e)) => (v, e.trim().parse::<u32>().map_err(|_| AlgError::Parse(format!("bad exponent in `{factor}`")))?),
                None => (factor, 1),
            };
            let v: PairVar = var.parse().map_err(AlgError::Parse)?;
            powers.push((v, exp));
        } else {
            let c = parse_rational(factor).ok_or_else(|| AlgError::Parse(format!("bad coefficient `{factor}`")))?;
            coeff *= c;
        }
    }
    Ok((Monomial::from_powers(powers), coeff))
}

impl FromStr for MultiPoly {
    type Err = AlgError;

    /// Parses the text form produced by `Display`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(AlgError::Parse("empty polynomial".into()));
        }
        let mut p = MultiPoly::zero();
        let mut sign = 1;
        let mut current = String::new();
        let mut depth = 0;
        let flush = |cur: &mut String, sign: i32, p: &mut MultiPoly| -> Result<(), AlgError> {
            let t = cur.trim();
            if t.is_empty() {
                return Err(AlgError::Parse(format!("dangling sign in `{s}`")));
            }
            let (m, c) = parse_term(t)?;
            p.add_term(m, if sign < 0 { -c } else { c });
            cur.clear();
            Ok(())
        };
        let mut started = false;
        for ch in s.chars() {
            match ch {
                '[' => {
                    depth += 1;
                    current.push(ch);
                }
                ']' => {
                    depth -= 1;
                    current.push(ch);
                }
                '+' | '-' if depth == 0 => {
                    if started && !current.trim().is_empty() {
                        flush(&mut current, sign, &mut p)?;
                        sign = if ch == '-' { -1 } else { 1 };
                    } else if ch == '-' {
                        sign = -sign;
                    }
                }
                _ => {
                    if !ch.is_whitespace() {
                        started = true;
                    }
                    current.push(ch);
                }
            }
        }
        flush(&mut current, sign, &mut p)?;
        Ok(p)
    }
}

impl<'b> ops::Add<&'b MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &'b MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'b> ops::Sub<&'b MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &'b MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl<'b> ops::Mul<&'b MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &'b MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl ops::Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl ops::Add for MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: MultiPoly) -> MultiPoly {
        &self + &rhs
    }
}

impl ops::Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        &self - &rhs
    }
}

impl ops::Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

impl ops::Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl Ring for MultiPoly {
    type Ctx = ();

    fn from_rational(q: &BigRational, _: &()) -> Self {
        MultiPoly::constant(q.clone())
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
        self.terms.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::scalar::rat;

    fn x(i: usize, j: usize) -> MultiPoly {
        MultiPoly::pair(i, j)
    }

    #[test]
    fn square_minus_substitution() {
        let v = PairVar::new(1, 2);
        let p = &x(1, 2) * &x(1, 2);
        let s = p.substitute(v, &MultiPoly::from_int(2));
        assert_eq!(s, MultiPoly::from_int(4));
    }

    #[test]
    fn ghost_point_value() {
        let a = PairVar::new(1, 2);
        let b = PairVar::new(1, 3);
        let p: MultiPoly = "x[1,2]^4 * x[1,3] - x[1,2]^4 - 3 * x[1,2]^2 * x[1,3]^2 + 4 * x[1,2]^2 * x[1,3] + x[1,3]^3 - 3 * x[1,3]"
            .parse()
            .unwrap();
        let mut m = HashMap::new();
        m.insert(a, MultiPoly::from_int(-1));
        m.insert(b, MultiPoly::from_int(1));
        assert_eq!(p.substitute_all(&m), MultiPoly::from_int(-1));
    }

    #[test]
    fn abelian_point_value() {
        let p: MultiPoly = "x[1,2]^5 - 4 * x[1,2]^3 * x[1,3] + 3 * x[1,2]^3 + 3 * x[1,2] * x[1,3]^2 - 2 * x[1,2] * x[1,3] - 3 * x[1,2]"
            .parse()
            .unwrap();
        let mut vals = BTreeMap::new();
        vals.insert(PairVar::new(1, 2), int(2));
        vals.insert(PairVar::new(1, 3), int(2));
        assert_eq!(p.evaluate_map(&vals, &()).unwrap(), int(2));
    }

    #[test]
    fn diagonal_pair_is_two() {
        assert_eq!(MultiPoly::pair(3, 3), MultiPoly::from_int(2));
    }

    #[test]
    fn text_round_trip() {
        let p = &(&x(1, 2) * &x(3, 4)).scale(&rat(-3, 2)) + &(&x(1, 3).pow(3) - &MultiPoly::from_int(7));
        let text = p.to_string();
        assert_eq!(text, "-3/2 * x[1,2] * x[3,4] + x[1,3]^3 - 7");
        let q: MultiPoly = text.parse().unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn json_round_trip() {
        let p = &x(1, 12).pow(2) - &x(2, 3).scale(&rat(5, 3));
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"[{"coeff":"1","monomial":{"1,12":2}},{"coeff":"-5/3","monomial":{"2,3":1}}]"#);
        let q: MultiPoly = serde_json::from_str(&json).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn canonical_is_primitive_with_positive_lead() {
        let p = &x(1, 2).scale(&rat(-2, 3)) + &MultiPoly::constant(rat(4, 9));
        assert_eq!(p.canonical().to_string(), "3 * x[1,2] - 2");
    }

    #[test]
    fn lex_order_prefers_lower_indices() {
        let a = Monomial::var(PairVar::new(1, 2));
        let b = Monomial::from_powers([(PairVar::new(1, 3), 5)]);
        assert!(a > b);
        assert!(Monomial::from_powers([(PairVar::new(1, 2), 2)]) > a);
    }
}
