//! Lift decisions for points of `F₂(K)` and the braid-to-ghost pipeline.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::braid::{build_diagram, BraidError, BraidWord};
use crate::exactalg::solve::solve_with_basis;
use crate::exactalg::{groebner_lex, AlgError, AlgebraicNumber, HpComplex, Scalar, SolutionPoint, ToAlgebraic, DEFAULT_PRECISION};
use crate::slice::{
    coord_serde, eliminate, extend_point, hexagon_data, rectangle_values, symmetry_reduce, AnyFullPoint, DMatrix,
    F2Presentation, FullPoint, SliceError,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GhostError {
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error(transparent)]
    Slice(#[from] SliceError),
    #[error(transparent)]
    Alg(#[from] AlgError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Lifts,
    Ghost,
}

/// Outcome of [`hexagon_consistent`]. Triples are indices into the
/// D-matrix's triple list.
#[derive(Clone, Debug, PartialEq)]
pub enum Hexagon {
    /// `x_I` with `x_I·x_J = D[I][J]` for every pair.
    Witness(Vec<HpComplex>),
    /// `D[I][J]` cannot equal `x_I·x_J` for any assignment.
    Failure(usize, usize),
}

/// Decides whether `D` is `x xᵀ` for some vector `x`.
///
/// With a nonzero diagonal entry `D[I₀][I₀]` this is the rank-one test
/// `D[I₀][I₀]·D[J][K] = D[I₀][J]·D[I₀][K]`, carried out in `T`.
pub fn hexagon_consistent<T: Scalar>(d: &DMatrix<T>) -> Hexagon {
    let n = d.len();
    let Some(i0) = (0..n).find(|&i| !d.get(i, i).is_zero_elem()) else {
        for j in 0..n {
            for k in j..n {
                if !d.get(j, k).is_zero_elem() {
                    return Hexagon::Failure(j, k);
                }
            }
        }
        return Hexagon::Witness(vec![HpComplex::zero(); n]);
    };
    let d00 = d.get(i0, i0);
    let bad = (0..n).into_par_iter().find_map_first(|j| {
        (j..n).find(|&k| !d00.mul(d.get(j, k)).sub(&d.get(i0, j).mul(d.get(i0, k))).is_zero_elem()).map(|k| (j, k))
    });
    if let Some((j, k)) = bad {
        return Hexagon::Failure(j, k);
    }
    let root = d00.to_complex(DEFAULT_PRECISION).sqrt(DEFAULT_PRECISION);
    let witness = (0..n)
        .map(|j| d.get(i0, j).to_complex(DEFAULT_PRECISION).hp_div(&root).expect("nonzero diagonal"))
        .collect();
    Hexagon::Witness(witness)
}

/// A rectangle determinant that does not vanish.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FailingRectangle {
    pub rows: [usize; 4],
    pub value: AlgebraicNumber,
}

impl FailingRectangle {
    /// `(a, b)` for the rectangle on arcs `1, 2, a, b`.
    pub fn pair(&self) -> Option<(usize, usize)> {
        (self.rows[0] == 1 && self.rows[1] == 2).then_some((self.rows[2], self.rows[3]))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LiftCertificate {
    pub verdict: Verdict,
    /// Arithmetic used: `exact-rational`, `exact-quadratic` or `numeric`.
    pub arithmetic: String,
    pub failing_rectangles: Vec<FailingRectangle>,
    /// Nonzero `x_I` keyed by `"i,j,k"`; absent triples are zero.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hexagon_witness: Option<BTreeMap<String, [f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hexagon_failure: Option<([usize; 3], [usize; 3])>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ClassifyOptions {
    /// Check every 4-subset of arcs instead of the `(1, 2, a, b)` family.
    pub all_rectangles: bool,
}

fn triple_key(t: [usize; 3]) -> String {
    format!("{},{},{}", t[0], t[1], t[2])
}

fn certify<T: Scalar + ToAlgebraic>(p: &FullPoint<T>, mode: &str, opts: ClassifyOptions) -> (LiftCertificate, Hexagon, DMatrix<T>) {
    let failing_rectangles: Vec<FailingRectangle> = rectangle_values(p, opts.all_rectangles)
        .into_iter()
        .filter(|r| !r.value.is_zero_elem())
        .map(|r| FailingRectangle { rows: r.indices, value: r.value.to_algebraic() })
        .collect();
    let d = hexagon_data(p);
    let hex = hexagon_consistent(&d);
    let (hexagon_witness, hexagon_failure) = match &hex {
        Hexagon::Witness(w) => {
            let map = d
                .triples
                .iter()
                .zip(w)
                .filter(|(_, x)| x.abs_f64() > 0.0)
                .map(|(&t, x)| (triple_key(t), [x.re_f64(), x.im_f64()]))
                .collect();
            (Some(map), None)
        }
        Hexagon::Failure(i, j) => (None, Some((d.triples[*i], d.triples[*j]))),
    };
    let verdict = if failing_rectangles.is_empty() && hexagon_failure.is_none() { Verdict::Lifts } else { Verdict::Ghost };
    let cert = LiftCertificate { verdict, arithmetic: mode.to_string(), failing_rectangles, hexagon_witness, hexagon_failure };
    (cert, hex, d)
}

/// Everything computed while classifying a point, for callers that want to
/// re-verify the certificate.
#[derive(Clone, Debug)]
pub struct Classification {
    pub full: AnyFullPoint,
    pub certificate: LiftCertificate,
    pub hexagon: Hexagon,
    /// `D[I][J]` at working precision.
    pub d_numeric: DMatrix<HpComplex>,
}

fn to_numeric<T: Scalar>(d: DMatrix<T>) -> DMatrix<HpComplex> {
    DMatrix {
        entries: d.entries.iter().map(|row| row.iter().map(|x| x.to_complex(DEFAULT_PRECISION)).collect()).collect(),
        triples: d.triples,
    }
}

pub fn classify_point_detailed(pres: &F2Presentation, base: &SolutionPoint, opts: ClassifyOptions) -> Result<Classification, GhostError> {
    let full = extend_point(pres, base)?;
    let (certificate, hexagon, d_numeric) = match &full {
        AnyFullPoint::Rational(p) => {
            let (c, h, d) = certify(p, full.mode(), opts);
            (c, h, to_numeric(d))
        }
        AnyFullPoint::Quadratic(p) => {
            let (c, h, d) = certify(p, full.mode(), opts);
            (c, h, to_numeric(d))
        }
        AnyFullPoint::Numeric(p) => certify(p, full.mode(), opts),
    };
    Ok(Classification { full, certificate, hexagon, d_numeric })
}

/// Extends `base`, evaluates rectangle values and hexagon consistency.
pub fn classify_point(pres: &F2Presentation, base: &SolutionPoint, opts: ClassifyOptions) -> Result<LiftCertificate, GhostError> {
    classify_point_detailed(pres, base, opts).map(|c| c.certificate)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GhostOptions {
    pub symmetry: bool,
    pub classify: ClassifyOptions,
}

impl Default for GhostOptions {
    fn default() -> Self {
        GhostOptions { symmetry: true, classify: ClassifyOptions::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassifiedPoint {
    #[serde(with = "coord_serde")]
    pub coords: BTreeMap<crate::exactalg::PairVar, AlgebraicNumber>,
    #[serde(flatten)]
    pub certificate: LiftCertificate,
}

impl ClassifiedPoint {
    pub fn point(&self) -> SolutionPoint {
        SolutionPoint { coords: self.coords.clone() }
    }

    pub fn is_ghost(&self) -> bool {
        self.certificate.verdict == Verdict::Ghost
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GhostReport {
    pub presentation: F2Presentation,
    pub symmetry_applied: bool,
    pub diagnostics: Vec<String>,
    pub points: Vec<ClassifiedPoint>,
}

impl GhostReport {
    pub fn ghosts(&self) -> impl Iterator<Item = &ClassifiedPoint> {
        self.points.iter().filter(|p| p.is_ghost())
    }
}

/// The reduced presentation used by the pipeline.
pub fn presentation_for(braid: &BraidWord, symmetry: bool) -> Result<(F2Presentation, bool, Option<String>), GhostError> {
    let d = build_diagram(braid)?;
    let pres = eliminate(&d)?;
    if !symmetry {
        return Ok((pres, false, None));
    }
    let out = symmetry_reduce(&pres, d.closure_permutation());
    Ok((out.presentation, out.applied, out.diagnostic))
}

/// eliminate, optionally reduce by the closure symmetry, solve, classify.
pub fn find_ghosts(braid: &BraidWord, opts: GhostOptions) -> Result<GhostReport, GhostError> {
    let (pres, applied, diag) = presentation_for(braid, opts.symmetry)?;
    let gb = groebner_lex(&pres.equations, &pres.base_vars);
    let points = solve_with_basis(&pres.equations, &gb)?;
    let classified = points
        .par_iter()
        .map(|p| {
            classify_point(&pres, p, opts.classify).map(|certificate| ClassifiedPoint { coords: p.coords.clone(), certificate })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(GhostReport { presentation: pres, symmetry_applied: applied, diagnostics: diag.into_iter().collect(), points: classified })
}
