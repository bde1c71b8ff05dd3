//! Numerical checks of SL₂(ℂ) representations of cover presentations,
//! trace coordinates and the polynomial form of Φ̂.

use std::collections::BTreeMap;

use num_bigint::BigInt;
pub use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::braid::GroupWord;
use crate::cover::CoverPresentation;
use crate::exactalg::roots::certified_roots;
use crate::exactalg::solve::residual;
use crate::exactalg::{AlgError, AlgebraicNumber, HpComplex, PairVar, Ring, SolutionPoint, UniPoly};
use crate::slice::F2Presentation;

/// Default residual tolerance for double-precision checks.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RepError {
    #[error("generator `{0}` has no matrix")]
    Unassigned(String),
    #[error("matrix given for x{0}, which is not a generator of this cover")]
    Extraneous(usize),
    #[error("matrix for `{generator}` has |det - 1| = {error:e}")]
    NotSl2 { generator: String, error: f64 },
    #[error("representation input: {0}")]
    Parse(String),
    #[error("traces {0} match no point of F2")]
    NoMatch(String),
    #[error("snapped point fails the F2 equations: {0}")]
    Inconsistent(String),
    #[error("missing coordinate {0}")]
    MissingCoordinate(String),
    #[error(transparent)]
    Alg(#[from] AlgError),
}

impl Ring for Complex64 {
    type Ctx = ();

    fn from_rational(q: &BigRational, _: &()) -> Self {
        Complex64::new(q.to_f64().unwrap_or(f64::NAN), 0.0)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    /// Exact zero only; tolerances are applied by callers.
    fn is_zero_elem(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
}

/// Double-precision view of an entry.
pub trait Approx {
    fn approx(&self) -> Complex64;
}

impl Approx for Complex64 {
    fn approx(&self) -> Complex64 {
        *self
    }
}

impl Approx for HpComplex {
    fn approx(&self) -> Complex64 {
        self.to_c64()
    }
}

/// `[[a, b], [c, d]]`
#[derive(Clone, Debug, PartialEq)]
pub struct Mat2<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
}

impl<T: Ring> Mat2<T> {
    pub fn new(a: T, b: T, c: T, d: T) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn identity(ctx: &T::Ctx) -> Self {
        Mat2::new(T::one_of(ctx), T::zero_of(ctx), T::zero_of(ctx), T::one_of(ctx))
    }

    pub fn diagonal(l: T, r: T, ctx: &T::Ctx) -> Self {
        Mat2::new(l, T::zero_of(ctx), T::zero_of(ctx), r)
    }

    pub fn mul(&self, o: &Self) -> Self {
        Mat2 {
            a: self.a.mul(&o.a).add(&self.b.mul(&o.c)),
            b: self.a.mul(&o.b).add(&self.b.mul(&o.d)),
            c: self.c.mul(&o.a).add(&self.d.mul(&o.c)),
            d: self.c.mul(&o.b).add(&self.d.mul(&o.d)),
        }
    }

    pub fn det(&self) -> T {
        self.a.mul(&self.d).sub(&self.b.mul(&self.c))
    }

    pub fn trace(&self) -> T {
        self.a.add(&self.d)
    }

    /// Inverse assuming determinant one.
    pub fn sl2_inverse(&self) -> Self {
        Mat2 { a: self.d.clone(), b: self.b.neg(), c: self.c.neg(), d: self.a.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Mat2 { a: self.a.sub(&o.a), b: self.b.sub(&o.b), c: self.c.sub(&o.c), d: self.d.sub(&o.d) }
    }
}

impl<T: Ring + Approx> Mat2<T> {
    pub fn to_c64(&self) -> Mat2<Complex64> {
        Mat2::new(self.a.approx(), self.b.approx(), self.c.approx(), self.d.approx())
    }

    /// Largest singular value.
    pub fn operator_norm(&self) -> f64 {
        let m = self.to_c64();
        let fro = m.a.norm_sqr() + m.b.norm_sqr() + m.c.norm_sqr() + m.d.norm_sqr();
        let det = m.det().norm();
        ((fro + (fro * fro - 4.0 * det * det).max(0.0).sqrt()) / 2.0).sqrt()
    }
}

/// `|tr(AB) − tr(A)tr(B) + tr(AB⁻¹)|`
pub fn trace_identity_check<T: Ring + Approx>(a: &Mat2<T>, b: &Mat2<T>) -> f64 {
    let lhs = a.mul(b).trace();
    let rhs = a.trace().mul(&b.trace()).sub(&a.mul(&b.sl2_inverse()).trace());
    lhs.sub(&rhs).approx().norm()
}

/// Matrices for cover generators `x_i`, keyed by `i`.
#[derive(Clone, Debug, PartialEq)]
pub struct Representation<T: Ring> {
    pub ctx: T::Ctx,
    pub generators: BTreeMap<usize, Mat2<T>>,
}

impl<T: Ring + Approx> Representation<T> {
    /// Image of a word in cover generators; `x₁` is the identity.
    pub fn evaluate(&self, w: &GroupWord, cover: &CoverPresentation) -> Result<Mat2<T>, RepError> {
        let mut acc = Mat2::identity(&self.ctx);
        for &(g, e) in w.letters() {
            if g == 1 {
                continue;
            }
            let m = self.generators.get(&g).ok_or_else(|| RepError::Unassigned(cover.name(g)))?;
            acc = acc.mul(&if e > 0 { m.clone() } else { m.sl2_inverse() });
        }
        Ok(acc)
    }

    fn matrix(&self, i: usize) -> Option<Mat2<T>> {
        if i == 1 {
            return Some(Mat2::identity(&self.ctx));
        }
        self.generators.get(&i).cloned()
    }

    /// Largest `|det − 1|` over the assigned matrices, with its generator.
    pub fn det_error(&self) -> Option<(usize, f64)> {
        self.generators
            .iter()
            .map(|(&g, m)| (g, (m.det().approx() - Complex64::new(1.0, 0.0)).norm()))
            .max_by(|a, b| a.1.total_cmp(&b.1))
    }

    /// Max over relators of `‖ρ(r) − I‖`. Fails on unassigned generators
    /// or matrices outside SL₂ by more than `tolerance`.
    pub fn verify(&self, cover: &CoverPresentation, tolerance: f64) -> Result<f64, RepError> {
        for &g in &cover.generators {
            if !self.generators.contains_key(&g) {
                return Err(RepError::Unassigned(cover.name(g)));
            }
        }
        if let Some(&g) = self.generators.keys().find(|g| !cover.generators.contains(g)) {
            return Err(RepError::Extraneous(g));
        }
        if let Some((g, error)) = self.det_error() {
            if error > tolerance {
                return Err(RepError::NotSl2 { generator: cover.name(g), error });
            }
        }
        let id = Mat2::identity(&self.ctx);
        let mut worst: f64 = 0.0;
        for r in &cover.relators {
            worst = worst.max(self.evaluate(r, cover)?.sub(&id).operator_norm());
        }
        Ok(worst)
    }

    pub fn trace(&self, w: &GroupWord, cover: &CoverPresentation) -> Result<Complex64, RepError> {
        Ok(self.evaluate(w, cover)?.trace().approx())
    }

    /// Traces of the generators in order.
    pub fn generator_traces(&self) -> Vec<(usize, Complex64)> {
        self.generators.iter().map(|(&g, m)| (g, m.trace().approx())).collect()
    }

    /// `tr(x_i⁻¹ x_j)`, the trace of `m_i m_j`.
    pub fn pair_trace(&self, i: usize, j: usize) -> Option<Complex64> {
        Some(self.matrix(i)?.sl2_inverse().mul(&self.matrix(j)?).trace().approx())
    }
}

impl Representation<HpComplex> {
    pub fn to_c64(&self) -> Representation<Complex64> {
        Representation { ctx: (), generators: self.generators.iter().map(|(&g, m)| (g, m.to_c64())).collect() }
    }
}

/// `{generators: {name: [[re, im] × 4]}}`, row-major entries.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RepresentationJson {
    pub generators: BTreeMap<String, [[f64; 2]; 4]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub presentation: Option<serde_json::Value>,
}

impl RepresentationJson {
    pub fn from_rep<T: Ring + Approx>(rep: &Representation<T>, cover: &CoverPresentation) -> Self {
        let entry = |z: &T| {
            let c = z.approx();
            [c.re, c.im]
        };
        RepresentationJson {
            generators: rep
                .generators
                .iter()
                .map(|(&g, m)| (cover.name(g), [entry(&m.a), entry(&m.b), entry(&m.c), entry(&m.d)]))
                .collect(),
            presentation: None,
        }
    }

    pub fn to_rep(&self, cover: &CoverPresentation) -> Result<Representation<Complex64>, RepError> {
        let mut generators = BTreeMap::new();
        for (name, e) in &self.generators {
            let g = cover
                .generators
                .iter()
                .copied()
                .find(|&g| cover.name(g) == *name)
                .ok_or_else(|| RepError::Parse(format!("`{name}` is not a generator of the presentation")))?;
            let z = |k: usize| Complex64::new(e[k][0], e[k][1]);
            generators.insert(g, Mat2::new(z(0), z(1), z(2), z(3)));
        }
        Ok(Representation { ctx: (), generators })
    }
}

/// A root of the integer polynomial `coeffs` (lowest first) chosen by `pick`.
pub fn root_of(coeffs: &[i64], prec: u32, pick: impl Fn(Complex64) -> bool) -> HpComplex {
    let roots = certified_roots(&UniPoly::from_ints(coeffs), prec).expect("squarefree constant polynomial");
    roots.into_iter().map(|r| r.z).find(|z| pick(z.to_c64())).expect("root selection matches a root")
}

fn hp(n: i64, prec: u32) -> HpComplex {
    HpComplex::from_int(n).with_prec(prec)
}

fn frac(n: i64, d: i64, prec: u32) -> HpComplex {
    HpComplex::from_rational(&BigRational::new(BigInt::from(n), BigInt::from(d)), prec)
}

/// The representation of the (4,5) torus knot's cover with traces
/// `(−1, 1, −1)`; `alpha_root` picks the root of `2α² + α + 2` with
/// negative (0) or positive (1) imaginary part.
pub fn alpha_representation(alpha_root: usize, prec: u32) -> Representation<HpComplex> {
    let omega = root_of(&[1, 1, 1], prec, |z| z.im > 0.0);
    let alpha = root_of(&[2, 1, 2], prec, |z| if alpha_root == 0 { z.im < 0.0 } else { z.im > 0.0 });
    // i/√3
    let s = root_of(&[1, 0, 3], prec, |z| z.im > 0.0);
    let e_plus = hp(1, prec).hp_add(&omega);
    let e_minus = omega.hp_neg();
    let one = hp(1, prec);
    let x = Mat2::diagonal(omega.clone(), omega.conj(), &prec);
    let y = Mat2::new(s.hp_mul(&e_plus).hp_neg(), frac(-2, 3, prec), one.clone(), s.hp_mul(&e_minus));
    let corner = one.hp_add(&alpha.mul_int(2)).hp_mul(&frac(1, 3, prec));
    let z = Mat2::new(s.hp_mul(&e_plus), corner, alpha, s.hp_mul(&e_minus).hp_neg());
    Representation { ctx: prec, generators: BTreeMap::from([(2, x), (3, y), (4, z)]) }
}

/// `x = z = diag(ζ^k, ζ^−k)` with `ζ = e^{2πi/5}`, `y = I`.
pub fn diagonal_representation(k: u32, prec: u32) -> Representation<HpComplex> {
    let zeta = root_of(&[1, 1, 1, 1, 1], prec, |z| z.re > 0.0 && z.im > 0.0);
    let zk = zeta.pow(k % 5);
    let zk_inv = zk.conj();
    let d = Mat2::diagonal(zk, zk_inv, &prec);
    Representation { ctx: prec, generators: BTreeMap::from([(2, d.clone()), (3, Mat2::identity(&prec)), (4, d)]) }
}

/// The family with traces `((3 + s√5)/2, 1 + s√5)`, `s = sqrt5_sign`,
/// and `β = ±√(−2 + 6s√5)` with sign `beta_sign`.
pub fn beta_representation(sqrt5_sign: i64, beta_sign: i64, prec: u32) -> Representation<HpComplex> {
    let r5 = root_of(&[-5, 0, 1], prec, |z| (z.re > 0.0) == (sqrt5_sign > 0));
    let target = -2.0 + 6.0 * r5.re_f64();
    // β⁴ + 4β² − 176 = 0
    let beta = root_of(&[-176, 0, 4, 0, 1], prec, |z| {
        let sq = z * z;
        (sq.re - target).abs() < 1e-6 && if target > 0.0 { (z.re > 0.0) == (beta_sign > 0) } else { (z.im > 0.0) == (beta_sign > 0) }
    });
    let b3 = beta.pow(3);
    let off = hp(1, prec).hp_add(&r5.mul_int(3)).hp_mul(&frac(1, 11, prec));
    let one = hp(1, prec);
    let c132 = frac(1, 132, prec);
    let c4 = frac(1, 4, prec);
    let base_x = hp(3, prec).hp_add(&r5);
    let x = Mat2::diagonal(base_x.hp_add(&beta).hp_mul(&c4), base_x.hp_sub(&beta).hp_mul(&c4), &prec);
    let y0 = hp(1, prec).hp_add(&r5).mul_int(66);
    let y1 = beta.mul_int(26).hp_add(&b3);
    let y = Mat2::new(y0.hp_add(&y1).hp_mul(&c132), off.clone(), one.clone(), y0.hp_sub(&y1).hp_mul(&c132));
    let z0 = hp(3, prec).hp_add(&r5).mul_int(33);
    let z1 = b3.hp_sub(&beta.mul_int(7));
    let z = Mat2::new(z0.hp_add(&z1).hp_mul(&c132), off, one, z0.hp_sub(&z1).hp_mul(&c132));
    Representation { ctx: prec, generators: BTreeMap::from([(2, x), (3, y), (4, z)]) }
}

/// The nearest rational with denominator at most `max_den`, if within `tol`.
pub fn snap_rational(z: Complex64, max_den: i64, tol: f64) -> Option<BigRational> {
    if z.im.abs() > tol {
        return None;
    }
    (1..=max_den).find_map(|q| {
        let p = (z.re * q as f64).round();
        ((z.re - p / q as f64).abs() < tol).then(|| BigRational::new(BigInt::from(p as i64), BigInt::from(q)))
    })
}

/// A representation's base pair traces and the exact point they snap to.
#[derive(Clone, Debug, PartialEq)]
pub struct SnappedPoint {
    pub traces: BTreeMap<PairVar, Complex64>,
    pub point: SolutionPoint,
    /// `rational` or `matched` (against a known solution point).
    pub how: &'static str,
}

/// `t(x_i⁻¹x_j)` over the base variables, snapped to a rational point or
/// to one of `known` within `tol`, then checked against the equations.
pub fn rep_to_f2_point<T: Ring + Approx>(
    rep: &Representation<T>,
    pres: &F2Presentation,
    known: &[SolutionPoint],
    tol: f64,
) -> Result<SnappedPoint, RepError> {
    let mut traces = BTreeMap::new();
    for &v in &pres.base_vars {
        let t = rep.pair_trace(v.i(), v.j()).ok_or_else(|| RepError::Unassigned(format!("x{}", v.j().max(v.i()))))?;
        traces.insert(v, t);
    }
    let show = || traces.iter().map(|(v, t)| format!("{v}={:.6}{:+.6}i", t.re, t.im)).collect::<Vec<_>>().join(", ");
    let rational: Option<BTreeMap<PairVar, AlgebraicNumber>> =
        traces.iter().map(|(&v, &t)| snap_rational(t, 64, tol).map(|q| (v, AlgebraicNumber::rational(&q)))).collect();
    let (point, how) = match rational {
        Some(coords) => (SolutionPoint { coords }, "rational"),
        None => {
            let hit = known.iter().find(|p| {
                traces.iter().all(|(v, t)| p.get(*v).is_some_and(|a| (a.approx().to_c64() - t).norm() < tol))
            });
            (hit.cloned().ok_or_else(|| RepError::NoMatch(show()))?, "matched")
        }
    };
    for e in &pres.equations {
        if !residual(e, &point)?.vanishes() {
            return Err(RepError::Inconsistent(format!("{e} at {}", show())));
        }
    }
    Ok(SnappedPoint { traces, point, how })
}

/// Pair and triple coordinates of a trace-free character; `x` is minus
/// the trace.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceFreeCharacter<T: Ring> {
    pub ctx: T::Ctx,
    /// Arcs are `1..=arcs`.
    pub arcs: usize,
    pub pairs: BTreeMap<PairVar, T>,
    pub triples: BTreeMap<[usize; 3], T>,
}

impl<T: Ring> TraceFreeCharacter<T> {
    fn x(&self, a: usize, b: usize) -> Result<T, RepError> {
        match PairVar::try_new(a, b) {
            None => Ok(T::from_int(2, &self.ctx)),
            Some(v) => self.pairs.get(&v).cloned().ok_or_else(|| RepError::MissingCoordinate(v.to_string())),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoverCharacterCoordinates<T> {
    /// Passed through from the character.
    pub z_pairs: BTreeMap<PairVar, T>,
    /// `z_{1cde}` keyed by `[1, c, d, e]`.
    pub z_quads: BTreeMap<[usize; 4], T>,
}

/// `z_ab = x_ab`, `z_1cde = ½(x_1c x_de + x_1e x_cd − x_1d x_ce)` for
/// `2 ≤ c < d < e ≤ arcs`.
pub fn phi_hat<T: Ring>(chi: &TraceFreeCharacter<T>) -> Result<CoverCharacterCoordinates<T>, RepError> {
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let mut z_quads = BTreeMap::new();
    for c in 2..=chi.arcs {
        for d in c + 1..=chi.arcs {
            for e in d + 1..=chi.arcs {
                let v = chi
                    .x(1, c)?
                    .mul(&chi.x(d, e)?)
                    .add(&chi.x(1, e)?.mul(&chi.x(c, d)?))
                    .sub(&chi.x(1, d)?.mul(&chi.x(c, e)?));
                z_quads.insert([1, c, d, e], v.scale(&half, &chi.ctx));
            }
        }
    }
    Ok(CoverCharacterCoordinates { z_pairs: chi.pairs.clone(), z_quads })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::cover_for_braid;
    use crate::braid::BraidWord;

    const PREC: u32 = 256;

    fn t45_cover() -> CoverPresentation {
        cover_for_braid(&BraidWord::torus(4, 5).unwrap(), None).unwrap().cover
    }

    fn close(z: Complex64, re: f64, im: f64, tol: f64) -> bool {
        (z - Complex64::new(re, im)).norm() < tol
    }

    #[test]
    fn alpha_representation_both_roots() {
        let cover = t45_cover();
        for root in 0..2 {
            let rep = alpha_representation(root, PREC);
            assert!(rep.det_error().unwrap().1 < 1e-40);
            assert!(rep.verify(&cover, 1e-12).unwrap() < 1e-40);
            let t: Vec<_> = rep.generator_traces().into_iter().map(|(_, t)| t).collect();
            assert!(close(t[0], -1.0, 0.0, 1e-12) && close(t[1], 1.0, 0.0, 1e-12) && close(t[2], -1.0, 0.0, 1e-12));
            let dbl = rep.to_c64();
            assert!(dbl.verify(&cover, DEFAULT_TOLERANCE).unwrap() < 1e-9);
        }
    }

    #[test]
    fn printed_corner_entry_is_not_sl2() {
        let cover = t45_cover();
        let mut rep = alpha_representation(0, PREC);
        let alpha = rep.generators[&4].c.clone();
        let i = root_of(&[1, 0, 1], PREC, |z| z.im > 0.0);
        rep.generators.get_mut(&4).unwrap().b = i.hp_add(&alpha.mul_int(2)).hp_mul(&frac(1, 3, PREC));
        let (g, err) = rep.det_error().unwrap();
        assert_eq!(g, 4);
        assert!(err > 0.1);
        assert!(matches!(rep.to_c64().verify(&cover, DEFAULT_TOLERANCE), Err(RepError::NotSl2 { .. })));
    }

    #[test]
    fn diagonal_family() {
        let cover = t45_cover();
        for k in 0..5 {
            assert!(diagonal_representation(k, PREC).verify(&cover, 1e-12).unwrap() < 1e-40);
        }
    }

    #[test]
    fn beta_family() {
        let cover = t45_cover();
        for s in [1, -1] {
            for b in [1, -1] {
                let rep = beta_representation(s, b, PREC);
                assert!(rep.verify(&cover, 1e-12).unwrap() < 1e-40, "s={s} b={b}");
                let r5 = s as f64 * 5f64.sqrt();
                let t: Vec<_> = rep.generator_traces().into_iter().map(|(_, t)| t).collect();
                assert!(close(t[0], (3.0 + r5) / 2.0, 0.0, 1e-9));
                assert!(close(t[1], 1.0 + r5, 0.0, 1e-9));
            }
        }
    }

    #[test]
    fn identity_representation() {
        let cover = t45_cover();
        let rep: Representation<Complex64> =
            Representation { ctx: (), generators: cover.generators.iter().map(|&g| (g, Mat2::identity(&()))).collect() };
        assert_eq!(rep.verify(&cover, 1e-9).unwrap(), 0.0);
        assert!(rep.generator_traces().iter().all(|(_, t)| *t == Complex64::new(2.0, 0.0)));
    }

    #[test]
    fn unassigned_and_non_sl2() {
        let cover = t45_cover();
        let mut rep = diagonal_representation(1, PREC).to_c64();
        rep.generators.remove(&3);
        assert_eq!(rep.verify(&cover, 1e-9), Err(RepError::Unassigned("y".into())));
        let mut rep = diagonal_representation(1, PREC).to_c64();
        rep.generators.insert(3, Mat2::diagonal(Complex64::new(2.0, 0.0), Complex64::new(1.0, 0.0), &()));
        assert!(matches!(rep.verify(&cover, 1e-9), Err(RepError::NotSl2 { .. })));
        let mut rep = diagonal_representation(1, PREC).to_c64();
        rep.generators.insert(7, Mat2::identity(&()));
        assert_eq!(rep.verify(&cover, 1e-9), Err(RepError::Extraneous(7)));
    }

    #[test]
    fn trace_identity_diagonal() {
        let (l, m) = (Complex64::new(2.0, 0.0), Complex64::new(0.0, 3.0));
        let a = Mat2::diagonal(l, l.inv(), &());
        let b = Mat2::diagonal(m, m.inv(), &());
        assert!(trace_identity_check(&a, &b) < 1e-14);
        assert_eq!(trace_identity_check(&Mat2::<Complex64>::identity(&()), &Mat2::identity(&())), 0.0);
    }

    #[test]
    fn phi_hat_examples() {
        let two = BigRational::from_integer(BigInt::from(2));
        let zero = BigRational::from_integer(BigInt::from(0));
        let all_two: BTreeMap<PairVar, BigRational> = PairVar::all(4).into_iter().map(|v| (v, two.clone())).collect();
        let chi = TraceFreeCharacter { ctx: (), arcs: 4, pairs: all_two.clone(), triples: BTreeMap::new() };
        let z = phi_hat(&chi).unwrap();
        assert_eq!(z.z_pairs, all_two);
        assert_eq!(z.z_quads[&[1, 2, 3, 4]], two);
        let mut block = BTreeMap::new();
        for v in PairVar::all(4) {
            let val = if v == PairVar::new(1, 2) || v == PairVar::new(3, 4) { two.clone() } else { zero.clone() };
            block.insert(v, val);
        }
        let chi = TraceFreeCharacter { ctx: (), arcs: 4, pairs: block, triples: BTreeMap::new() };
        assert_eq!(phi_hat(&chi).unwrap().z_quads[&[1, 2, 3, 4]], two);
    }

    #[test]
    fn snapping() {
        assert_eq!(snap_rational(Complex64::new(-0.5 + 1e-12, 1e-13), 64, 1e-9), Some(BigRational::new((-1).into(), 2.into())));
        assert_eq!(snap_rational(Complex64::new(0.618033988, 0.0), 64, 1e-9), None);
    }
}
