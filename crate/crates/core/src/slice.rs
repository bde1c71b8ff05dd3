//! Fundamental relations, elimination to pair variables over the left-edge
//! arcs, and the hexagon and rectangle data of a point.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::braid::Diagram;
use crate::exactalg::algebraic::ToAlgebraic;
use crate::exactalg::solve::{residual, ExactCoords};
use crate::exactalg::{
    det, groebner_lex, AlgError, AlgebraicNumber, HpComplex, MultiPoly, PairVar, QElem, Ring, SolutionPoint,
    DEFAULT_PRECISION,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SliceError {
    #[error("malformed diagram: {0}")]
    Malformed(String),
    #[error("point does not satisfy the presentation: {0}")]
    NotOnVariety(String),
    #[error(transparent)]
    Alg(#[from] AlgError),
}

/// `x[a,k] = x[i,j]·x[a,i] − x[a,j]` for every spectator `a`, from the
/// crossing with triple `(i, j, k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RewriteRule {
    pub target: usize,
    pub over: usize,
    pub under: usize,
    /// Position of the crossing in the braid word.
    pub crossing: usize,
    pub closure: bool,
}

impl RewriteRule {
    /// Right-hand side at spectator `a`, in all-arc variables.
    pub fn template(&self, a: usize) -> MultiPoly {
        &(&MultiPoly::pair(self.over, self.under) * &MultiPoly::pair(a, self.over)) - &MultiPoly::pair(a, self.under)
    }
}

impl fmt::Display for RewriteRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (i, j, k) = (self.over, self.under, self.target);
        write!(f, "x[a,{k}] = x[{},{}] * x[a,{i}] - x[a,{j}]", i.min(j), i.max(j))
    }
}

/// One rule per crossing: non-closure rules by descending target, then
/// closure rules by descending target.
pub fn fundamental_rules(d: &Diagram) -> Vec<RewriteRule> {
    let rule = |c: &crate::braid::Crossing| RewriteRule {
        target: c.under_out,
        over: c.over,
        under: c.under_in,
        crossing: c.position,
        closure: d.is_closure(c),
    };
    let mut inner: Vec<RewriteRule> = d.crossings().iter().filter(|c| !d.is_closure(c)).map(rule).collect();
    let mut closure: Vec<RewriteRule> = d.crossings().iter().filter(|c| d.is_closure(c)).map(rule).collect();
    inner.sort_by(|a, b| b.target.cmp(&a.target));
    closure.sort_by(|a, b| b.target.cmp(&a.target));
    inner.extend(closure);
    inner
}

/// `F₂(K)` in base variables together with the rewriting of every pair
/// variable into them.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct F2Presentation {
    pub m: usize,
    pub n: usize,
    pub base_vars: Vec<PairVar>,
    pub equations: Vec<MultiPoly>,
    #[serde(with = "table_serde")]
    pub rewrite_table: BTreeMap<PairVar, MultiPoly>,
    pub rules: Vec<RewriteRule>,
}

mod table_serde {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(t: &BTreeMap<PairVar, MultiPoly>, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(Some(t.len()))?;
        for (v, p) in t {
            m.serialize_entry(&v.key(), p)?;
        }
        m.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<PairVar, MultiPoly>, D::Error> {
        let raw = BTreeMap::<String, MultiPoly>::deserialize(d)?;
        raw.into_iter()
            .map(|(k, p)| PairVar::from_key(&k).map(|v| (v, p)).ok_or_else(|| serde::de::Error::custom(format!("bad key `{k}`"))))
            .collect()
    }
}

impl F2Presentation {
    /// Rewriting of `x[a,b]`, with `x[a,a] = 2`.
    pub fn rewrite(&self, a: usize, b: usize) -> MultiPoly {
        match PairVar::try_new(a, b) {
            Some(v) => self.rewrite_table.get(&v).cloned().unwrap_or_else(|| MultiPoly::var(v)),
            None => MultiPoly::from_int(2),
        }
    }

    /// `x[a,k] − (x[i,j]·x[a,i] − x[a,j])` rewritten into base variables.
    pub fn instance(&self, rule: &RewriteRule, a: usize) -> MultiPoly {
        let rhs = &(&self.rewrite(rule.over, rule.under) * &self.rewrite(a, rule.over)) - &self.rewrite(a, rule.under);
        &self.rewrite(a, rule.target) - &rhs
    }
}

/// Eliminates every arc above `m`, leaving equations in `x[i,j]`,
/// `1 ≤ i < j ≤ m`.
///
/// Arc `b > m` is created by exactly one non-closure crossing `(i, j, b)`
/// with `i, j < b`, so the table is filled for `b = m+1..=n` in turn.
pub fn eliminate(d: &Diagram) -> Result<F2Presentation, SliceError> {
    let (m, n) = (d.strands(), d.arc_count());
    let rules = fundamental_rules(d);
    let mut table: BTreeMap<PairVar, MultiPoly> = BTreeMap::new();
    for v in PairVar::all(m) {
        table.insert(v, MultiPoly::var(v));
    }
    let get = |t: &BTreeMap<PairVar, MultiPoly>, a: usize, b: usize| -> Option<MultiPoly> {
        match PairVar::try_new(a, b) {
            None => Some(MultiPoly::from_int(2)),
            Some(v) => t.get(&v).cloned(),
        }
    };
    for b in m + 1..=n {
        let r = rules
            .iter()
            .find(|r| !r.closure && r.target == b)
            .ok_or_else(|| SliceError::Malformed(format!("arc {b} is not created by any crossing")))?;
        if r.over >= b || r.under >= b {
            return Err(SliceError::Malformed(format!("rule for arc {b} refers to a later arc, substitution would not terminate")));
        }
        let ij = get(&table, r.over, r.under).expect("earlier arcs");
        for a in 1..b {
            let ai = get(&table, a, r.over).expect("earlier arcs");
            let aj = get(&table, a, r.under).expect("earlier arcs");
            table.insert(PairVar::new(a, b), &(&ij * &ai) - &aj);
        }
    }
    let mut pres = F2Presentation { m, n, base_vars: PairVar::all(m), equations: Vec::new(), rewrite_table: table, rules: rules.clone() };
    let mut equations: Vec<MultiPoly> = Vec::new();
    for r in rules.iter().filter(|r| r.closure) {
        for a in 1..=m {
            let eq = pres.instance(r, a).canonical();
            if !eq.is_zero() && !equations.contains(&eq) {
                equations.push(eq);
            }
        }
    }
    pres.equations = equations;
    Ok(pres)
}

/// Outcome of [`symmetry_reduce`].
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetryOutcome {
    pub presentation: F2Presentation,
    pub applied: bool,
    pub diagnostic: Option<String>,
}

/// Identifies `x[i,j]` with `x[π(i),π(j)]` after checking that every such
/// identity lies in the ideal of the equations.
///
/// Each orbit is represented by its smallest variable. If an identity
/// cannot be derived the input comes back unchanged with a diagnostic.
pub fn symmetry_reduce(pres: &F2Presentation, perm: &[usize]) -> SymmetryOutcome {
    let unchanged = |msg: Option<String>| SymmetryOutcome { presentation: pres.clone(), applied: false, diagnostic: msg };
    let m = pres.m;
    if perm.len() != m || (1..=m).any(|k| !perm.contains(&k)) {
        return unchanged(Some(format!("{perm:?} is not a permutation of 1..{m}")));
    }
    let image = |v: PairVar| PairVar::new(perm[v.i() - 1], perm[v.j() - 1]);
    if pres.base_vars.iter().all(|&v| image(v) == v) {
        return unchanged(None);
    }
    let gb = groebner_lex(&pres.equations, &pres.base_vars);
    for &v in &pres.base_vars {
        let w = image(v);
        if !pres.base_vars.contains(&w) {
            return unchanged(Some(format!("{w} is not a base variable")));
        }
        let identity = &MultiPoly::var(v) - &MultiPoly::var(w);
        if !gb.contains(&identity) {
            return unchanged(Some(format!("{v} = {w} does not follow from the equations; symmetry not applied")));
        }
    }
    // orbit representatives
    let mut rep: HashMap<PairVar, PairVar> = HashMap::new();
    for &v in &pres.base_vars {
        let mut orbit = vec![v];
        let mut w = image(v);
        while w != v {
            orbit.push(w);
            w = image(w);
        }
        let min = *orbit.iter().min().expect("nonempty");
        rep.insert(v, min);
    }
    let subst: HashMap<PairVar, MultiPoly> =
        rep.iter().filter(|(v, r)| v != r).map(|(&v, &r)| (v, MultiPoly::var(r))).collect();
    let mut equations: Vec<MultiPoly> = Vec::new();
    for e in &pres.equations {
        let q = e.substitute_all(&subst).canonical();
        if !q.is_zero() && !equations.contains(&q) {
            equations.push(q);
        }
    }
    let mut base_vars: Vec<PairVar> = rep.values().copied().collect();
    base_vars.sort();
    base_vars.dedup();
    let rewrite_table = pres.rewrite_table.iter().map(|(&v, p)| (v, p.substitute_all(&subst))).collect();
    SymmetryOutcome {
        presentation: F2Presentation { m, n: pres.n, base_vars, equations, rewrite_table, rules: pres.rules.clone() },
        applied: true,
        diagnostic: None,
    }
}

/// All pair coordinates of a point over arcs `1..=n`, in a ring `T`.
#[derive(Clone, Debug, PartialEq)]
pub struct FullPoint<T: Ring> {
    pub n: usize,
    pub ctx: T::Ctx,
    pub values: BTreeMap<PairVar, T>,
}

impl<T: Ring> FullPoint<T> {
    /// `x[a,b]`, with `x[a,a] = 2`.
    pub fn x(&self, a: usize, b: usize) -> T {
        match PairVar::try_new(a, b) {
            Some(v) => self.values[&v].clone(),
            None => T::from_int(2, &self.ctx),
        }
    }

    pub fn restrict(&self, m: usize) -> BTreeMap<PairVar, T> {
        self.values.iter().filter(|(v, _)| v.j() <= m).map(|(v, x)| (*v, x.clone())).collect()
    }
}

impl<T: Ring + ToAlgebraic> FullPoint<T> {
    pub fn to_algebraic(&self) -> BTreeMap<PairVar, AlgebraicNumber> {
        self.values.iter().map(|(v, x)| (*v, x.to_algebraic())).collect()
    }
}

/// A full point in the most exact arithmetic its base point allows.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyFullPoint {
    Rational(FullPoint<BigRational>),
    Quadratic(FullPoint<QElem>),
    Numeric(FullPoint<HpComplex>),
}

impl AnyFullPoint {
    pub fn mode(&self) -> &'static str {
        match self {
            AnyFullPoint::Rational(_) => "exact-rational",
            AnyFullPoint::Quadratic(_) => "exact-quadratic",
            AnyFullPoint::Numeric(_) => "numeric",
        }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, AnyFullPoint::Numeric(_))
    }

    pub fn n(&self) -> usize {
        match self {
            AnyFullPoint::Rational(p) => p.n,
            AnyFullPoint::Quadratic(p) => p.n,
            AnyFullPoint::Numeric(p) => p.n,
        }
    }

    pub fn coords(&self) -> BTreeMap<PairVar, AlgebraicNumber> {
        match self {
            AnyFullPoint::Rational(p) => p.to_algebraic(),
            AnyFullPoint::Quadratic(p) => p.to_algebraic(),
            AnyFullPoint::Numeric(p) => p.to_algebraic(),
        }
    }

    pub fn numeric(&self, a: usize, b: usize) -> HpComplex {
        use crate::exactalg::Scalar;
        match self {
            AnyFullPoint::Rational(p) => p.x(a, b).to_complex(DEFAULT_PRECISION),
            AnyFullPoint::Quadratic(p) => p.x(a, b).to_complex(DEFAULT_PRECISION),
            AnyFullPoint::Numeric(p) => p.x(a, b),
        }
    }
}

fn evaluate_table<T: Ring>(pres: &F2Presentation, base: &BTreeMap<PairVar, T>, ctx: &T::Ctx) -> Result<FullPoint<T>, SliceError> {
    let values = pres
        .rewrite_table
        .par_iter()
        .map(|(&v, p)| p.evaluate_map(base, ctx).map(|x| (v, x)))
        .collect::<Result<BTreeMap<_, _>, _>>()?;
    Ok(FullPoint { n: pres.n, ctx: ctx.clone(), values })
}

/// Evaluates the rewrite table at a base point after checking the point
/// satisfies every equation.
pub fn extend_point(pres: &F2Presentation, base: &SolutionPoint) -> Result<AnyFullPoint, SliceError> {
    for e in &pres.equations {
        let r = residual(e, base)?;
        if !r.vanishes() {
            return Err(SliceError::NotOnVariety(format!("{e} gives {r:?}")));
        }
    }
    Ok(match base.exact_coords() {
        ExactCoords::Rational(r) => AnyFullPoint::Rational(evaluate_table(pres, &r, &())?),
        ExactCoords::Quadratic(d, q) => AnyFullPoint::Quadratic(evaluate_table(pres, &q, &d)?),
        ExactCoords::Numeric(h) => AnyFullPoint::Numeric(evaluate_table(pres, &h, &DEFAULT_PRECISION)?),
    })
}

/// Triples `i < j < k` over arcs `1..=n` in lexicographic order.
pub fn triples(n: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                out.push([i, j, k]);
            }
        }
    }
    out
}

/// `D[I][J] = ½·det(x[I_a, J_b])` over all triples, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct DMatrix<T> {
    pub triples: Vec<[usize; 3]>,
    pub entries: Vec<Vec<T>>,
}

impl<T: Ring> DMatrix<T> {
    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i][j]
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn index_of(&self, t: [usize; 3]) -> Option<usize> {
        self.triples.iter().position(|&u| u == t)
    }
}

pub fn hexagon_entry<T: Ring>(p: &FullPoint<T>, i: [usize; 3], j: [usize; 3]) -> T {
    let m: Vec<Vec<T>> = i.iter().map(|&a| j.iter().map(|&b| p.x(a, b)).collect()).collect();
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    det(&m, &p.ctx).expect("3x3").scale(&half, &p.ctx)
}

/// All of `D`, sharing the 2×2 minors of `x` between entries and filling
/// the lower triangle by symmetry.
pub fn hexagon_data<T: Ring>(p: &FullPoint<T>) -> DMatrix<T> {
    let n = p.n;
    let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|a| (a + 1..=n).map(move |b| (a, b))).collect();
    let mut pair_index = vec![vec![usize::MAX; n + 1]; n + 1];
    for (k, &(a, b)) in pairs.iter().enumerate() {
        pair_index[a][b] = k;
    }
    let minors: Vec<Vec<T>> = pairs
        .par_iter()
        .map(|&(a, b)| pairs.iter().map(|&(c, d)| p.x(a, c).mul(&p.x(b, d)).sub(&p.x(a, d).mul(&p.x(b, c)))).collect())
        .collect();
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let ts = triples(n);
    let upper: Vec<Vec<T>> = ts
        .par_iter()
        .enumerate()
        .map(|(ii, &[i1, i2, i3])| {
            let rows = &minors[pair_index[i2][i3]];
            ts[ii..]
                .iter()
                .map(|&[j1, j2, j3]| {
                    let t1 = p.x(i1, j1).mul(&rows[pair_index[j2][j3]]);
                    let t2 = p.x(i1, j2).mul(&rows[pair_index[j1][j3]]);
                    let t3 = p.x(i1, j3).mul(&rows[pair_index[j1][j2]]);
                    t1.sub(&t2).add(&t3).scale(&half, &p.ctx)
                })
                .collect()
        })
        .collect();
    let entries = (0..ts.len())
        .map(|i| (0..ts.len()).map(|j| if j >= i { upper[i][j - i].clone() } else { upper[j][i - j].clone() }).collect())
        .collect();
    DMatrix { triples: ts, entries }
}

/// A rectangle determinant: rows and columns `indices`, diagonal 2.
#[derive(Clone, Debug, PartialEq)]
pub struct RectangleValue<T> {
    pub indices: [usize; 4],
    pub value: T,
}

pub fn rectangle_entry<T: Ring>(p: &FullPoint<T>, idx: [usize; 4]) -> T {
    let m: Vec<Vec<T>> = idx.iter().map(|&a| idx.iter().map(|&b| p.x(a, b)).collect()).collect();
    det(&m, &p.ctx).expect("4x4")
}

/// The family `(1, 2, a, b)` for `3 ≤ a < b ≤ n`, or every 4-subset when
/// `exhaustive` is set.
pub fn rectangle_values<T: Ring>(p: &FullPoint<T>, exhaustive: bool) -> Vec<RectangleValue<T>> {
    let n = p.n;
    let mut sets = Vec::new();
    if exhaustive {
        for a in 1..=n {
            for b in a + 1..=n {
                for c in b + 1..=n {
                    for d in c + 1..=n {
                        sets.push([a, b, c, d]);
                    }
                }
            }
        }
    } else {
        for a in 3..=n {
            for b in a + 1..=n {
                sets.push([1, 2, a, b]);
            }
        }
    }
    sets.into_par_iter().map(|idx| RectangleValue { indices: idx, value: rectangle_entry(p, idx) }).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FullPointJson {
    pub mode: String,
    #[serde(with = "coord_serde")]
    pub coords: BTreeMap<PairVar, AlgebraicNumber>,
}

pub mod coord_serde {
    use super::*;
    use serde::ser::SerializeMap;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(t: &BTreeMap<PairVar, AlgebraicNumber>, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(t.len()))?;
        for (v, a) in t {
            m.serialize_entry(&v.key(), a)?;
        }
        m.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<PairVar, AlgebraicNumber>, D::Error> {
        let raw = BTreeMap::<String, AlgebraicNumber>::deserialize(d)?;
        raw.into_iter()
            .map(|(k, a)| PairVar::from_key(&k).map(|v| (v, a)).ok_or_else(|| serde::de::Error::custom(format!("bad key `{k}`"))))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::{build_diagram, parse_braid, BraidWord};
    use crate::exactalg::{int, solve_zero_dim};

    fn t45() -> Diagram {
        build_diagram(&BraidWord::torus(4, 5).unwrap()).unwrap()
    }

    fn poly(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    #[test]
    fn t45_rules_in_order() {
        let rules = fundamental_rules(&t45());
        assert_eq!(rules.len(), 15);
        let first = rules[0];
        assert_eq!((first.over, first.under, first.target, first.closure), (11, 8, 15, false));
        let closure: Vec<_> = rules.iter().filter(|r| r.closure).map(|r| (r.over, r.under, r.target)).collect();
        assert_eq!(closure, vec![(11, 12, 4), (4, 11, 3), (4, 15, 2), (4, 14, 1)]);
        assert_eq!(rules.iter().find(|r| r.target == 1).unwrap().to_string(), "x[a,1] = x[4,14] * x[a,4] - x[a,14]");
    }

    #[test]
    fn trefoil_presentation() {
        let d = build_diagram(&parse_braid("2: 1 1 1").unwrap()).unwrap();
        let p = eliminate(&d).unwrap();
        assert_eq!(p.base_vars, vec![PairVar::new(1, 2)]);
        let pts = solve_zero_dim(&p.equations, &p.base_vars).unwrap();
        let xs: Vec<_> = pts.iter().map(|q| q.get(PairVar::new(1, 2)).unwrap().as_rational().unwrap()).collect();
        assert_eq!(xs, vec![int(-1), int(2)]);
    }

    #[test]
    fn t45_elimination_and_symmetry() {
        let d = t45();
        let p = eliminate(&d).unwrap();
        assert_eq!(p.base_vars.len(), 6);
        assert_eq!(p.equations.len(), 16);
        let out = symmetry_reduce(&p, d.closure_permutation());
        assert!(out.applied, "{:?}", out.diagnostic);
        let r = out.presentation;
        assert_eq!(r.base_vars, vec![PairVar::new(1, 2), PairVar::new(1, 3)]);
        let a = "x[1,2]";
        let b = "x[1,3]";
        let stated = [
            ("2", format!("{a}^5 - 4*{a}^3*{b} + 3*{a}^3 + 3*{a}*{b}^2 - 2*{a}*{b} - 3*{a}")),
            (a, format!("{a}^6 - 4*{a}^4*{b} + 2*{a}^4 + 3*{a}^2*{b}^2 + {a}^2*{b} - 5*{a}^2 - {b}^2 + 2")),
            (a, format!("{a}^4*{b} - {a}^4 - 3*{a}^2*{b}^2 + 4*{a}^2*{b} + {b}^3 - 3*{b}")),
            (b, format!("{a}^5*{b} - {a}^5 - 4*{a}^3*{b}^2 + 6*{a}^3*{b} + 3*{a}*{b}^3 - {a}^3 - 3*{a}*{b}^2 - 5*{a}*{b} + 3*{a}")),
            (b, format!("{a}^5 - 3*{a}^3*{b} + {a}^3 + {a}*{b}^2 + 2*{a}*{b} - 3*{a}")),
        ];
        for (lhs, rhs) in &stated {
            let e = (&poly(lhs) - &poly(rhs)).canonical();
            assert!(r.equations.contains(&e), "missing {lhs} = {rhs}");
        }
        let pts = solve_zero_dim(&r.equations, &r.base_vars).unwrap();
        assert_eq!(pts.len(), 6);
        let ghost = pts.iter().find(|q| q.rational_coords() == Some([(PairVar::new(1, 2), int(-1)), (PairVar::new(1, 3), int(1))].into())).unwrap();
        let full = extend_point(&r, ghost).unwrap();
        let AnyFullPoint::Rational(fp) = full else { panic!("rational point expected") };
        let restricted: Vec<_> = fp.restrict(4).into_values().collect();
        assert_eq!(restricted, vec![int(-1), int(1), int(-1), int(-1), int(1), int(-1)]);
        let rects = rectangle_values(&fp, false);
        let r34 = rects.iter().find(|v| v.indices == [1, 2, 3, 4]).unwrap();
        assert_eq!(r34.value, int(5));
    }

    #[test]
    fn figure_eight_symmetry_not_derivable() {
        let d = build_diagram(&parse_braid("3: 1 -2 1 -2").unwrap()).unwrap();
        let p = eliminate(&d).unwrap();
        let out = symmetry_reduce(&p, d.closure_permutation());
        assert!(!out.applied);
        assert!(out.diagnostic.is_some());
        assert_eq!(out.presentation, p);
    }

    #[test]
    fn instances_vanish_on_the_variety() {
        let d = build_diagram(&parse_braid("3: 1 -2 1 -2").unwrap()).unwrap();
        let p = eliminate(&d).unwrap();
        let gb = groebner_lex(&p.equations, &p.base_vars);
        for r in &p.rules {
            for a in 1..=p.n {
                assert!(gb.contains(&p.instance(r, a)), "{r} at {a}");
            }
        }
    }

    #[test]
    fn hexagon_matrix_is_symmetric() {
        let d = build_diagram(&parse_braid("2: 1 1 1").unwrap()).unwrap();
        let p = eliminate(&d).unwrap();
        let pts = solve_zero_dim(&p.equations, &p.base_vars).unwrap();
        let AnyFullPoint::Rational(fp) = extend_point(&p, &pts[0]).unwrap() else { panic!() };
        let dm = hexagon_data(&fp);
        assert_eq!(dm.len(), 1);
        assert_eq!(dm.get(0, 0), &hexagon_entry(&fp, [1, 2, 3], [1, 2, 3]));
    }

    #[test]
    fn presentation_json_round_trip() {
        let d = build_diagram(&parse_braid("3: 1 -2 1 -2").unwrap()).unwrap();
        let p = eliminate(&d).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        let back: F2Presentation = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        assert_eq!(serde_json::to_string(&back).unwrap(), s);
    }
}
