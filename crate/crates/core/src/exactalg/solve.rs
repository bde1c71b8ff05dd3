//! Solution sets of zero-dimensional polynomial systems.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::algebraic::AlgebraicNumber;
use super::groebner::{groebner_lex, GroebnerBasis};
use super::hp::{HpComplex, DEFAULT_PRECISION, ZERO_THRESHOLD};
use super::pairvar::PairVar;
use super::poly::{Monomial, MultiPoly};
use super::quadratic::QElem;
use super::roots::{cmp_complex, factor_with_roots};
use super::scalar::Ring;
use super::univariate::UniPoly;
use super::AlgError;

/// Working precision for root finding; extra bits over the default keep the
/// final values accurate to the default precision.
const ROOT_PRECISION: u32 = DEFAULT_PRECISION + 64;

/// A point of a zero-dimensional variety.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SolutionPoint {
    pub coords: BTreeMap<PairVar, AlgebraicNumber>,
}

/// How a point's coordinates can be handled exactly.
#[derive(Clone, Debug, PartialEq)]
pub enum ExactCoords {
    Rational(BTreeMap<PairVar, BigRational>),
    /// All coordinates in one field ℚ(√d).
    Quadratic(BigInt, BTreeMap<PairVar, QElem>),
    Numeric(BTreeMap<PairVar, HpComplex>),
}

impl SolutionPoint {
    pub fn get(&self, v: PairVar) -> Option<&AlgebraicNumber> {
        self.coords.get(&v)
    }

    pub fn rational_coords(&self) -> Option<BTreeMap<PairVar, BigRational>> {
        self.coords.iter().map(|(&v, a)| a.as_rational().map(|q| (v, q))).collect()
    }

    pub fn is_rational(&self) -> bool {
        self.rational_coords().is_some()
    }

    pub fn numeric_coords(&self, prec: u32) -> BTreeMap<PairVar, HpComplex> {
        self.coords.iter().map(|(&v, a)| (v, a.approx().with_prec(prec))).collect()
    }

    /// Rational if possible, else one quadratic field, else numeric.
    pub fn exact_coords(&self) -> ExactCoords {
        if let Some(r) = self.rational_coords() {
            return ExactCoords::Rational(r);
        }
        if let Some((d, coords)) = self.quadratic_coords() {
            return ExactCoords::Quadratic(d, coords);
        }
        ExactCoords::Numeric(self.numeric_coords(DEFAULT_PRECISION))
    }

    fn quadratic_coords(&self) -> Option<(BigInt, BTreeMap<PairVar, QElem>)> {
        let mut field: Option<BigInt> = None;
        for a in self.coords.values() {
            if a.as_rational().is_some() {
                continue;
            }
            let x = a.as_quadratic()?;
            match &field {
                Some(d) if *d != x.d => return None,
                _ => field = Some(x.d),
            }
        }
        let d = field?;
        let coords = self
            .coords
            .iter()
            .map(|(&v, a)| match a.as_rational() {
                Some(q) => (v, QElem::rational(q, d.clone())),
                None => (v, a.as_quadratic().expect("checked above")),
            })
            .collect();
        Some((d, coords))
    }

    /// Coordinate approximations in `order`, as `(re, im)` pairs.
    pub fn approx_in(&self, order: &[PairVar]) -> Vec<(f64, f64)> {
        order
            .iter()
            .filter_map(|v| self.coords.get(v))
            .map(|a| (a.approx().re_f64(), a.approx().im_f64()))
            .collect()
    }
}

/// Value of `p` at `point`: exact zero test when possible, else the
/// magnitude at high precision.
pub fn residual(p: &MultiPoly, point: &SolutionPoint) -> Result<Residual, AlgError> {
    match point.exact_coords() {
        ExactCoords::Rational(r) => Ok(Residual::Exact(p.evaluate_map(&r, &())?.is_zero_elem())),
        ExactCoords::Quadratic(d, q) => Ok(Residual::Exact(p.evaluate_map(&q, &d)?.is_zero_elem())),
        ExactCoords::Numeric(n) => Ok(Residual::Numeric(p.evaluate_map(&n, &DEFAULT_PRECISION)?.abs_f64())),
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Residual {
    Exact(bool),
    Numeric(f64),
}

impl Residual {
    pub fn vanishes(&self) -> bool {
        match *self {
            Residual::Exact(z) => z,
            Residual::Numeric(v) => v < ZERO_THRESHOLD,
        }
    }
}

/// Minimal polynomial of multiplication by `v` on the quotient ring, found
/// from the first linear dependency among the normal forms of `v^k`.
pub fn eliminant(gb: &GroebnerBasis, v: PairVar, max_degree: usize) -> Option<UniPoly> {
    // rows: (normal form, combination of powers), echelonized on pivots
    let mut rows: Vec<(BTreeMap<Monomial, BigRational>, Vec<BigRational>)> = Vec::new();
    let x = MultiPoly::var(v);
    let mut power = MultiPoly::one();
    for k in 0..=max_degree {
        let nf = gb.reduce(&power);
        let mut vec: BTreeMap<Monomial, BigRational> = nf.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        let mut combo = vec![BigRational::zero(); k + 1];
        combo[k] = BigRational::one();
        for (rv, rc) in &rows {
            let pivot = rv.keys().next_back().expect("nonzero row");
            if let Some(c) = vec.get(pivot).cloned() {
                let f = c / &rv[pivot];
                for (m, a) in rv {
                    let e = vec.entry(m.clone()).or_insert_with(BigRational::zero);
                    *e -= &f * a;
                    if e.is_zero() {
                        vec.remove(m);
                    }
                }
                for (i, a) in rc.iter().enumerate() {
                    combo[i] -= &f * a;
                }
            }
        }
        if vec.is_empty() {
            return Some(UniPoly::new(combo).monic());
        }
        // keep rows sorted so each pivot is absent from later rows' pivots
        let pivot = vec.keys().next_back().expect("nonzero").clone();
        for (rv, rc) in rows.iter_mut() {
            if let Some(c) = rv.get(&pivot).cloned() {
                let f = c / &vec[&pivot];
                for (m, a) in &vec {
                    let e = rv.entry(m.clone()).or_insert_with(BigRational::zero);
                    *e -= &f * a;
                    if e.is_zero() {
                        rv.remove(m);
                    }
                }
                rc.resize(k + 1, BigRational::zero());
                for (i, a) in combo.iter().enumerate() {
                    rc[i] -= &f * a;
                }
            }
        }
        rows.push((vec, combo));
        power = &power * &x;
    }
    None
}

fn is_zero_dimensional(gb: &GroebnerBasis) -> Result<(), AlgError> {
    let leads = gb.leading_exponents();
    for (k, v) in gb.order().iter().enumerate() {
        let pure = leads.iter().any(|e| e[k] > 0 && e.iter().enumerate().all(|(i, &x)| i == k || x == 0));
        if !pure {
            return Err(AlgError::PositiveDimensional(v.to_string()));
        }
    }
    Ok(())
}

fn coefficient_scale(p: &MultiPoly, values: &BTreeMap<PairVar, HpComplex>) -> f64 {
    p.terms()
        .map(|(m, c)| {
            let c = num_traits::ToPrimitive::to_f64(c).unwrap_or(f64::MAX).abs();
            m.powers().iter().fold(c, |acc, &(v, e)| acc * values[&v].abs_f64().max(1.0).powi(e as i32))
        })
        .sum()
}

/// All complex solutions of a zero-dimensional system, as a set.
///
/// Variables are ordered by `vars`, followed by any others in the default
/// order. Points are sorted by their coordinate approximations in that order.
pub fn solve_zero_dim(system: &[MultiPoly], vars: &[PairVar]) -> Result<Vec<SolutionPoint>, AlgError> {
    let gb = groebner_lex(system, vars);
    solve_with_basis(system, &gb)
}

pub fn solve_with_basis(system: &[MultiPoly], gb: &GroebnerBasis) -> Result<Vec<SolutionPoint>, AlgError> {
    if gb.is_unit() {
        return Ok(Vec::new());
    }
    let order = gb.order().to_vec();
    if order.is_empty() {
        return Ok(vec![SolutionPoint { coords: BTreeMap::new() }]);
    }
    is_zero_dimensional(gb)?;

    let mut candidates: Vec<Vec<AlgebraicNumber>> = Vec::with_capacity(order.len());
    for &v in &order {
        let elim = eliminant(gb, v, 512).ok_or_else(|| AlgError::PositiveDimensional(v.to_string()))?;
        let factors = factor_with_roots(&elim, ROOT_PRECISION)?;
        let mut vals = Vec::new();
        for f in factors {
            for r in f.roots {
                let num = if f.minpoly.len() == 2 {
                    AlgebraicNumber::rational(&BigRational::new(-f.minpoly[0].clone(), f.minpoly[1].clone()))
                } else {
                    AlgebraicNumber::new(f.minpoly.clone(), r.z.with_prec(DEFAULT_PRECISION), r.radius)
                };
                vals.push(num);
            }
        }
        candidates.push(vals);
    }

    // each basis element is checked once all of its variables are assigned;
    // assignment runs from the last variable to the first
    let levels: Vec<(usize, &MultiPoly)> = gb
        .polys()
        .iter()
        .map(|g| {
            let first = g.variables().iter().map(|v| order.iter().position(|w| w == v).expect("in order")).min().unwrap_or(0);
            (first, g)
        })
        .collect();

    let mut points = Vec::new();
    let mut current: BTreeMap<PairVar, HpComplex> = BTreeMap::new();
    let mut chosen: Vec<usize> = vec![0; order.len()];
    search(order.len(), &order, &candidates, &levels, &mut current, &mut chosen, &mut |ch| {
        let coords = order.iter().enumerate().map(|(k, &v)| (v, candidates[k][ch[k]].clone())).collect();
        points.push(SolutionPoint { coords });
    });

    for pt in &points {
        for p in system {
            let r = residual(p, pt)?;
            if !r.vanishes() {
                return Err(AlgError::Verification(format!("{p} does not vanish at a computed point ({r:?})")));
            }
        }
    }
    points.sort_by(|a, b| {
        for v in &order {
            let o = cmp_complex(a.coords[v].approx(), b.coords[v].approx());
            if o != std::cmp::Ordering::Equal {
                return o;
            }
        }
        std::cmp::Ordering::Equal
    });
    Ok(points)
}

fn search(
    depth: usize,
    order: &[PairVar],
    candidates: &[Vec<AlgebraicNumber>],
    levels: &[(usize, &MultiPoly)],
    current: &mut BTreeMap<PairVar, HpComplex>,
    chosen: &mut Vec<usize>,
    emit: &mut dyn FnMut(&[usize]),
) {
    if depth == 0 {
        emit(chosen);
        return;
    }
    let k = depth - 1;
    let v = order[k];
    for (idx, cand) in candidates[k].iter().enumerate() {
        current.insert(v, cand.approx().clone());
        let ok = levels.iter().filter(|(lvl, _)| *lvl == k).all(|(_, g)| {
            let val = g.evaluate_map(current, &DEFAULT_PRECISION).expect("all variables assigned");
            val.abs_f64() <= 1e-40 * coefficient_scale(g, current).max(1.0)
        });
        if ok {
            chosen[k] = idx;
            search(k, order, candidates, levels, current, chosen, emit);
        }
    }
    current.remove(&v);
}

/// Variables of a system in the default order.
pub fn system_variables(system: &[MultiPoly]) -> Vec<PairVar> {
    let set: BTreeSet<PairVar> = system.iter().flat_map(MultiPoly::variables).collect();
    set.into_iter().collect()
}
