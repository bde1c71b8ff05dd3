//! Braid words, their closure diagrams and Wirtinger presentations.
//!
//! Arcs of the closure are numbered with the left-edge arcs `1..=m` by
//! position, then one new arc per crossing in braid order. An under-strand
//! that leaves its last crossing and runs to the right edge is the same arc
//! as the left-edge arc at that position, so such crossings ("closure
//! crossings") create no new id.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BraidError {
    #[error("malformed braid text `{0}`; expected `m: s1 s2 ...` or `torus p q`")]
    Malformed(String),
    #[error("bad letter `{0}`")]
    BadToken(String),
    #[error("letter {letter} out of range for {strands} strands")]
    OutOfRange { letter: i64, strands: usize },
    #[error("the closure is a {components}-component link, not a knot")]
    Link { components: usize },
    #[error("strand starting at position {0} never passes under a crossing; this diagram has no arc numbering of the required form")]
    OverOnlyStrand(usize),
}

/// A braid on `strands` strands; letter `±s` is `σ_s^{±1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i64>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i64>) -> Result<Self, BraidError> {
        if strands == 0 {
            return Err(BraidError::Malformed("0 strands".into()));
        }
        for &l in &letters {
            if l == 0 || l.unsigned_abs() as usize >= strands {
                return Err(BraidError::OutOfRange { letter: l, strands });
            }
        }
        let w = BraidWord { strands, letters };
        let comps = w.closure_components();
        if comps != 1 {
            return Err(BraidError::Link { components: comps });
        }
        Ok(w)
    }

    /// The torus knot braid `(σ₁⋯σ_{p−1})^q` on `p` strands.
    pub fn torus(p: usize, q: usize) -> Result<Self, BraidError> {
        let mut letters = Vec::new();
        for _ in 0..q {
            letters.extend(1..p as i64);
        }
        Self::new(p, letters)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i64] {
        &self.letters
    }

    /// `perm[p]` is the right-end position of the strand entering at `p`
    /// (0-based).
    pub fn permutation(&self) -> Vec<usize> {
        // track which starting strand sits at each position
        let mut at: Vec<usize> = (0..self.strands).collect();
        for &l in &self.letters {
            let s = l.unsigned_abs() as usize - 1;
            at.swap(s, s + 1);
        }
        let mut perm = vec![0; self.strands];
        for (pos, &start) in at.iter().enumerate() {
            perm[start] = pos;
        }
        perm
    }

    fn closure_components(&self) -> usize {
        let perm = self.permutation();
        let mut seen = vec![false; self.strands];
        let mut count = 0;
        for s in 0..self.strands {
            if !seen[s] {
                count += 1;
                let mut p = s;
                while !seen[p] {
                    seen[p] = true;
                    p = perm[p];
                }
            }
        }
        count
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.strands)?;
        for l in &self.letters {
            write!(f, " {l}")?;
        }
        Ok(())
    }
}

/// Parses `m: s1 s2 ...` or `torus p q`.
pub fn parse_braid(text: &str) -> Result<BraidWord, BraidError> {
    let t = text.trim();
    if let Some(rest) = t.strip_prefix("torus") {
        let nums: Vec<&str> = rest.split_whitespace().collect();
        if nums.len() != 2 {
            return Err(BraidError::Malformed(text.into()));
        }
        let p: usize = nums[0].parse().map_err(|_| BraidError::BadToken(nums[0].into()))?;
        let q: usize = nums[1].parse().map_err(|_| BraidError::BadToken(nums[1].into()))?;
        return BraidWord::torus(p, q);
    }
    let (m, word) = t.split_once(':').ok_or_else(|| BraidError::Malformed(text.into()))?;
    let strands: usize = m.trim().parse().map_err(|_| BraidError::BadToken(m.trim().into()))?;
    let letters = word
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<i64>().map_err(|_| BraidError::BadToken(s.into())))
        .collect::<Result<Vec<_>, _>>()?;
    BraidWord::new(strands, letters)
}

/// A crossing with its Wirtinger triple `(over, under_in, under_out)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Crossing {
    pub over: usize,
    #[serde(rename = "in")]
    pub under_in: usize,
    #[serde(rename = "out")]
    pub under_out: usize,
    pub sign: i8,
    /// Index of the letter in the braid word.
    #[serde(skip)]
    pub position: usize,
}

impl Crossing {
    pub fn triple(&self) -> (usize, usize, usize) {
        (self.over, self.under_in, self.under_out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    strands: usize,
    arc_count: usize,
    crossings: Vec<Crossing>,
    closure_permutation: Vec<usize>,
}

enum Label {
    Left(usize),
    New(usize),
}

/// Builds the closure diagram with the arc numbering described in the
/// module docs.
pub fn build_diagram(braid: &BraidWord) -> Result<Diagram, BraidError> {
    let m = braid.strands();
    let mut at: Vec<Label> = (1..=m).map(Label::Left).collect();
    // raw crossings with labels still provisional
    let mut raw: Vec<(Label, Label, usize, i8)> = Vec::new();
    for (k, &l) in braid.letters().iter().enumerate() {
        let s = l.unsigned_abs() as usize - 1;
        let sign: i8 = if l > 0 { 1 } else { -1 };
        let copy = |x: &Label| match *x {
            Label::Left(a) => Label::Left(a),
            Label::New(a) => Label::New(a),
        };
        if sign > 0 {
            let over = copy(&at[s]);
            let under = copy(&at[s + 1]);
            at[s + 1] = copy(&over);
            at[s] = Label::New(k);
            raw.push((over, under, k, sign));
        } else {
            let over = copy(&at[s + 1]);
            let under = copy(&at[s]);
            at[s] = copy(&over);
            at[s + 1] = Label::New(k);
            raw.push((over, under, k, sign));
        }
    }
    // crossings whose out-arc reaches the right edge close up to a left arc
    let mut closes_to: Vec<Option<usize>> = vec![None; raw.len()];
    for (pos, label) in at.iter().enumerate() {
        match *label {
            Label::New(k) => closes_to[k] = Some(pos + 1),
            Label::Left(a) if m > 1 || a != pos + 1 => return Err(BraidError::OverOnlyStrand(a)),
            Label::Left(_) => {}
        }
    }
    let mut ids = vec![0usize; raw.len()];
    let mut next = m + 1;
    for k in 0..raw.len() {
        ids[k] = match closes_to[k] {
            Some(p) => p,
            None => {
                next += 1;
                next - 1
            }
        };
    }
    let resolve = |l: &Label| match *l {
        Label::Left(a) => a,
        Label::New(k) => ids[k],
    };
    let crossings = raw
        .iter()
        .map(|(o, u, k, sign)| Crossing { over: resolve(o), under_in: resolve(u), under_out: ids[*k], sign: *sign, position: *k })
        .collect();
    Ok(Diagram { strands: m, arc_count: next - 1, crossings, closure_permutation: braid.permutation().iter().map(|p| p + 1).collect() })
}

impl Diagram {
    /// Number of left-edge arcs `m`.
    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn arc_count(&self) -> usize {
        self.arc_count
    }

    /// Crossings in braid order.
    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    /// 1-based closure permutation of the strand positions.
    pub fn closure_permutation(&self) -> &[usize] {
        &self.closure_permutation
    }

    pub fn is_closure(&self, c: &Crossing) -> bool {
        c.under_out <= self.strands
    }

    /// The crossing whose out-arc is `arc`.
    pub fn crossing_creating(&self, arc: usize) -> Option<&Crossing> {
        self.crossings.iter().find(|c| c.under_out == arc)
    }

    /// Crossings in relator order: non-closure crossings in braid order,
    /// then closure crossings by ascending out-arc.
    pub fn relator_order(&self) -> Vec<Crossing> {
        let mut out: Vec<Crossing> = self.crossings.iter().copied().filter(|c| !self.is_closure(c)).collect();
        let mut closure: Vec<Crossing> = self.crossings.iter().copied().filter(|c| self.is_closure(c)).collect();
        closure.sort_by_key(|c| c.under_out);
        out.extend(closure);
        out
    }
}

/// A freely reduced word; letters are `(generator, ±1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GroupWord {
    letters: Vec<(usize, i8)>,
}

impl GroupWord {
    pub fn new(letters: impl IntoIterator<Item = (usize, i8)>) -> Self {
        let mut out: Vec<(usize, i8)> = Vec::new();
        for (g, e) in letters {
            debug_assert!(e == 1 || e == -1);
            if out.last().is_some_and(|&(h, f)| h == g && f == -e) {
                out.pop();
            } else {
                out.push((g, e));
            }
        }
        GroupWord { letters: out }
    }

    pub fn identity() -> Self {
        GroupWord::default()
    }

    pub fn gen(g: usize) -> Self {
        GroupWord { letters: vec![(g, 1)] }
    }

    pub fn letters(&self) -> &[(usize, i8)] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        GroupWord { letters: self.letters.iter().rev().map(|&(g, e)| (g, -e)).collect() }
    }

    pub fn concat(&self, other: &GroupWord) -> Self {
        GroupWord::new(self.letters.iter().chain(other.letters.iter()).copied())
    }

    /// `g^e · self · g^-e`
    pub fn conjugate_by(&self, g: usize, e: i8) -> Self {
        GroupWord::new(std::iter::once((g, e)).chain(self.letters.iter().copied()).chain(std::iter::once((g, -e))))
    }

    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|&(_, e)| e as i64).sum()
    }

    /// Exponent sum of generator `g`.
    pub fn exponent_of(&self, g: usize) -> i64 {
        self.letters.iter().filter(|&&(h, _)| h == g).map(|&(_, e)| e as i64).sum()
    }

    pub fn occurrences(&self, g: usize) -> usize {
        self.letters.iter().filter(|&&(h, _)| h == g).count()
    }

    /// Removes matching letters at the two ends.
    pub fn cyclically_reduced(&self) -> Self {
        let mut l = self.letters.as_slice();
        while l.len() >= 2 {
            let (a, b) = (l[0], l[l.len() - 1]);
            if a.0 == b.0 && a.1 == -b.1 {
                l = &l[1..l.len() - 1];
            } else {
                break;
            }
        }
        GroupWord { letters: l.to_vec() }
    }

    /// Replaces each letter `g^e` by `image(g)^e`.
    pub fn substitute(&self, image: impl Fn(usize) -> GroupWord) -> GroupWord {
        let mut out = Vec::new();
        for &(g, e) in &self.letters {
            let w = image(g);
            if e > 0 {
                out.extend(w.letters.iter().copied());
            } else {
                out.extend(w.inverse().letters);
            }
        }
        GroupWord::new(out)
    }

    /// Text form with generator names, e.g. `x y^-1 z`.
    pub fn display_with(&self, name: impl Fn(usize) -> String) -> String {
        if self.letters.is_empty() {
            return "1".into();
        }
        self.letters
            .iter()
            .map(|&(g, e)| if e > 0 { name(g) } else { format!("{}^-1", name(g)) })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(|g| format!("m{g}")))
    }
}

impl Serialize for GroupWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.letters.iter().map(|&(g, e)| (g, e as i64)).collect::<Vec<_>>().serialize(s)
    }
}

impl<'de> Deserialize<'de> for GroupWord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<(usize, i64)>::deserialize(d)?;
        if v.iter().any(|&(_, e)| e != 1 && e != -1) {
            return Err(serde::de::Error::custom("exponents must be ±1"));
        }
        Ok(GroupWord::new(v.into_iter().map(|(g, e)| (g, e as i8))))
    }
}

/// A finitely presented group on generators `generators` (ids).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupPresentation {
    pub generators: Vec<usize>,
    pub relators: Vec<GroupWord>,
}

impl GroupPresentation {
    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }
}

/// The Wirtinger relator of a crossing: `m_i m_j m_i⁻¹ m_k⁻¹` for a positive
/// crossing, `m_i⁻¹ m_j m_i m_k⁻¹` for a negative one.
pub fn wirtinger_relator(c: &Crossing) -> GroupWord {
    let e = c.sign;
    GroupWord::new([(c.over, e), (c.under_in, 1), (c.over, -e), (c.under_out, -1)])
}

/// Wirtinger presentation with relators in [`Diagram::relator_order`];
/// `drop_last` removes the final one, which follows from the rest.
pub fn wirtinger_presentation(d: &Diagram, drop_last: bool) -> GroupPresentation {
    let mut relators: Vec<GroupWord> = d.relator_order().iter().map(wirtinger_relator).collect();
    if drop_last {
        relators.pop();
    }
    GroupPresentation { generators: (1..=d.arc_count()).collect(), relators }
}

/// Wirtinger presentation without the relator of the crossing creating
/// `arc`.
pub fn wirtinger_presentation_dropping(d: &Diagram, arc: usize) -> Option<GroupPresentation> {
    let order = d.relator_order();
    let idx = order.iter().position(|c| c.under_out == arc)?;
    let relators = order.iter().enumerate().filter(|&(k, _)| k != idx).map(|(_, c)| wirtinger_relator(c)).collect();
    Some(GroupPresentation { generators: (1..=d.arc_count()).collect(), relators })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramJson {
    pub arcs: usize,
    pub crossings: Vec<Crossing>,
    pub relators: Vec<GroupWord>,
}

impl DiagramJson {
    pub fn new(d: &Diagram) -> Self {
        DiagramJson { arcs: d.arc_count(), crossings: d.crossings().to_vec(), relators: wirtinger_presentation(d, false).relators }
    }
}
