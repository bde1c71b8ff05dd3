use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A pair variable `x[i,j]` with `i < j`.
///
/// `x[j,i]` is the same variable and `x[i,i]` is the constant 2, so it is not
/// a variable at all.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PairVar {
    i: usize,
    j: usize,
}

impl PairVar {
    /// Panics when `a == b`; use [`PairVar::try_new`] for untrusted input.
    pub fn new(a: usize, b: usize) -> Self {
        Self::try_new(a, b).unwrap_or_else(|| panic!("x[{a},{a}] is the constant 2, not a variable"))
    }

    pub fn try_new(a: usize, b: usize) -> Option<Self> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Some(PairVar { i: a, j: b }),
            std::cmp::Ordering::Greater => Some(PairVar { i: b, j: a }),
            std::cmp::Ordering::Equal => None,
        }
    }

    pub fn i(&self) -> usize {
        self.i
    }

    pub fn j(&self) -> usize {
        self.j
    }

    /// Key used in JSON maps: `"i,j"`.
    pub fn key(&self) -> String {
        format!("{},{}", self.i, self.j)
    }

    pub fn from_key(s: &str) -> Option<Self> {
        let (a, b) = s.split_once(',')?;
        Self::try_new(a.trim().parse().ok()?, b.trim().parse().ok()?)
    }

    pub fn contains(&self, a: usize) -> bool {
        self.i == a || self.j == a
    }

    /// All pair variables over arcs `1..=n` in the default order.
    pub fn all(n: usize) -> Vec<PairVar> {
        let mut out = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                out.push(PairVar { i, j });
            }
        }
        out
    }
}

impl fmt::Display for PairVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x[{},{}]", self.i, self.j)
    }
}

impl fmt::Debug for PairVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x[{},{}]", self.i, self.j)
    }
}

impl FromStr for PairVar {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let inner = s
            .strip_prefix("x[")
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| format!("expected x[i,j], got `{s}`"))?;
        PairVar::from_key(inner).ok_or_else(|| format!("bad pair variable `{s}`"))
    }
}

impl Serialize for PairVar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.key())
    }
}

impl<'de> Deserialize<'de> for PairVar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        PairVar::from_key(&s).ok_or_else(|| serde::de::Error::custom(format!("bad pair key `{s}`")))
    }
}
