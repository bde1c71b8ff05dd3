//! Certified complex roots and factorization over ℚ of univariate
//! polynomials.
//!
//! Roots are found with Aberth iteration in double precision, polished by
//! Newton steps in high precision and certified with the inclusion disk
//! `|z - ζ| ≤ d·|p(z)/p'(z)|`; pairwise disjoint disks isolate the roots.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::hp::HpComplex;
use super::univariate::UniPoly;
use super::AlgError;

/// Largest number of non-rational roots searched for a factor by
/// recombination; beyond this a square-free factor is kept whole.
pub const MAX_RECOMBINATION_ROOTS: usize = 16;

#[derive(Clone, Debug)]
pub struct CertifiedRoot {
    pub z: HpComplex,
    pub radius: f64,
}

/// An irreducible factor with primitive integer coefficients and its roots.
#[derive(Clone, Debug)]
pub struct Factor {
    pub minpoly: Vec<BigInt>,
    pub roots: Vec<CertifiedRoot>,
    /// False when the factor was too large to split and may be reducible.
    pub proven_irreducible: bool,
}

fn horner_c64(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Aberth–Ehrlich iteration on a polynomial with nonzero leading coefficient.
fn aberth(coeffs: &[f64]) -> Vec<Complex64> {
    let d = coeffs.len() - 1;
    let lc = coeffs[d];
    let c: Vec<Complex64> = coeffs.iter().map(|&x| Complex64::new(x / lc, 0.0)).collect();
    // Cauchy-type bound for the initial circle
    let bound = 1.0 + c[..d].iter().map(|x| x.norm()).fold(0.0, f64::max);
    let r = bound.min(1e6).max(0.5) * 0.5 + 0.1;
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| Complex64::from_polar(r, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / d as f64 + 0.4))
        .collect();
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for k in 0..d {
            let (p, dp) = horner_c64(&c, z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..d).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if w.is_finite() {
                z[k] -= w;
                moved = moved.max(w.norm() / (1.0 + z[k].norm()));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

fn eval_hp(p: &UniPoly, z: &HpComplex, prec: u32) -> HpComplex {
    p.eval(z, &prec)
}

fn newton_polish(p: &UniPoly, dp: &UniPoly, start: Complex64, prec: u32) -> HpComplex {
    let mut z = HpComplex::from_c64(start, prec);
    let tiny = 2f64.powi(-(prec as i32) + 16);
    for _ in 0..64 {
        let v = eval_hp(p, &z, prec);
        let dv = eval_hp(dp, &z, prec);
        let step = match v.hp_div(&dv) {
            Some(s) => s,
            None => break,
        };
        z = z.hp_sub(&step);
        if step.abs_f64() <= tiny * (1.0 + z.abs_f64()) {
            break;
        }
    }
    z
}

/// All roots of a square-free polynomial, certified and isolated.
pub fn certified_roots(p: &UniPoly, prec: u32) -> Result<Vec<CertifiedRoot>, AlgError> {
    let d = p.degree();
    if d == 0 {
        return Ok(Vec::new());
    }
    let f64s: Vec<f64> = p.coeffs().iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect();
    if f64s.iter().any(|x| !x.is_finite()) {
        return Err(AlgError::RootIsolation(format!("coefficients of {p} overflow double precision")));
    }
    let dp = p.derivative();
    let starts = if d == 1 {
        vec![Complex64::new(-f64s[0] / f64s[1], 0.0)]
    } else {
        aberth(&f64s)
    };
    let mut roots = Vec::with_capacity(d);
    for s in starts {
        let z = newton_polish(p, &dp, s, prec);
        let v = eval_hp(p, &z, prec).abs_f64();
        let dv = eval_hp(&dp, &z, prec).abs_f64();
        if dv == 0.0 {
            return Err(AlgError::RootIsolation(format!("vanishing derivative at a root of {p}")));
        }
        let floor = 2f64.powi(-(prec as i32) + 8) * (1.0 + z.abs_f64());
        let radius = (d as f64 * v / dv).max(floor);
        roots.push(CertifiedRoot { z, radius });
    }
    for a in 0..roots.len() {
        for b in a + 1..roots.len() {
            let gap = roots[a].z.hp_sub(&roots[b].z).abs_f64();
            if gap <= roots[a].radius + roots[b].radius {
                return Err(AlgError::RootIsolation(format!("inclusion disks overlap for {p}")));
            }
        }
    }
    Ok(roots)
}

fn round_big(q: &BigRational) -> BigInt {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    (q + half).floor().to_integer()
}

/// Tries to read `lc·∏(z - r)` as an integer polynomial dividing `g`.
fn candidate_factor(g: &UniPoly, subset: &[&CertifiedRoot], prec: u32) -> Option<UniPoly> {
    let lc = HpComplex::from_rational(&g.leading(), prec);
    let mut prod = vec![lc];
    for r in subset {
        let mut next = vec![HpComplex::zero(); prod.len() + 1];
        for (k, c) in prod.iter().enumerate() {
            next[k + 1] = next[k + 1].hp_add(c);
            next[k] = next[k].hp_sub(&c.hp_mul(&r.z));
        }
        prod = next;
    }
    let mut coeffs = Vec::with_capacity(prod.len());
    for c in &prod {
        if c.im_f64().abs() > 1e-12 * (1.0 + c.abs_f64()) {
            return None;
        }
        let re = c.to_rational_parts().0;
        let n = round_big(&re);
        if (BigRational::from_integer(n.clone()) - re).abs() > BigRational::new(BigInt::one(), BigInt::from(1_000_000)) {
            return None;
        }
        coeffs.push(BigRational::from_integer(n));
    }
    let cand = UniPoly::new(coeffs).primitive();
    if cand.degree() != subset.len() {
        return None;
    }
    g.exact_div(&cand).map(|_| cand)
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for pos in (0..k).rev() {
        if idx[pos] < n - k + pos {
            idx[pos] += 1;
            for q in pos + 1..k {
                idx[q] = idx[q - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Factors the square-free part of `p` into irreducibles over ℚ, each with
/// its certified roots.
pub fn factor_with_roots(p: &UniPoly, prec: u32) -> Result<Vec<Factor>, AlgError> {
    if p.is_zero() {
        return Err(AlgError::RootIsolation("zero polynomial has no finite root set".into()));
    }
    let f = p.square_free_part().primitive();
    if f.degree() == 0 {
        return Ok(Vec::new());
    }
    let roots = certified_roots(&f, prec)?;
    let mut factors = Vec::new();
    let mut rest = f.clone();
    let lc = f.leading();
    let mut others: Vec<CertifiedRoot> = Vec::new();
    for r in roots {
        let rational = if r.z.im_f64().abs() <= r.radius.max(1e-30) {
            let n = round_big(&(&lc * r.z.to_rational_parts().0));
            let q = BigRational::new(n, lc.to_integer());
            let inside = HpComplex::from_rational(&q, prec).hp_sub(&r.z).abs_f64() <= r.radius;
            (inside && f.eval(&q, &()).is_zero()).then_some(q)
        } else {
            None
        };
        match rational {
            Some(q) => {
                let lin = UniPoly::linear_root(&q);
                rest = rest
                    .exact_div(&lin)
                    .ok_or_else(|| AlgError::RootIsolation(format!("rational root {q} found twice in {f}")))?;
                factors.push(Factor { minpoly: lin.primitive_integer(), roots: vec![r], proven_irreducible: true });
            }
            None => others.push(r),
        }
    }

    let mut proven = others.len() <= MAX_RECOMBINATION_ROOTS;
    if proven {
        let mut k = 2;
        while 2 * k <= others.len() {
            let n = others.len();
            let mut idx: Vec<usize> = (0..k).collect();
            let mut found = false;
            loop {
                let subset: Vec<&CertifiedRoot> = idx.iter().map(|&i| &others[i]).collect();
                if let Some(g) = candidate_factor(&rest, &subset, prec) {
                    rest = rest.exact_div(&g).expect("checked");
                    factors.push(Factor {
                        minpoly: g.primitive_integer(),
                        roots: subset.into_iter().cloned().collect(),
                        proven_irreducible: true,
                    });
                    let mut keep = Vec::new();
                    for (i, r) in others.drain(..).enumerate() {
                        if !idx.contains(&i) {
                            keep.push(r);
                        }
                    }
                    others = keep;
                    found = true;
                    break;
                }
                if !next_combination(&mut idx, n) {
                    break;
                }
            }
            if !found {
                k += 1;
            }
        }
    } else {
        proven = false;
    }
    if !others.is_empty() {
        factors.push(Factor { minpoly: rest.primitive_integer(), roots: others, proven_irreducible: proven });
    }
    for fac in &mut factors {
        fac.roots.sort_by(|a, b| cmp_complex(&a.z, &b.z));
    }
    factors.sort_by(|a, b| a.minpoly.len().cmp(&b.minpoly.len()).then_with(|| cmp_complex(&a.roots[0].z, &b.roots[0].z)));
    Ok(factors)
}

/// Orders complex approximations by real part, then imaginary part.
pub fn cmp_complex(a: &HpComplex, b: &HpComplex) -> std::cmp::Ordering {
    let (ar, br) = (a.re_f64(), b.re_f64());
    if (ar - br).abs() > 1e-12 * (1.0 + ar.abs().max(br.abs())) {
        return ar.partial_cmp(&br).unwrap_or(std::cmp::Ordering::Equal);
    }
    a.im_f64().partial_cmp(&b.im_f64()).unwrap_or(std::cmp::Ordering::Equal)
}
