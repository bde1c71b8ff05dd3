use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use anyhow::{anyhow, Context};
use serde::Serialize;
use serde_json::{json, Value};

use ghostchar_core::braid::{build_diagram, parse_braid, BraidWord, Diagram, DiagramJson};
use ghostchar_core::cover::{cover_for_braid, CoverError};
use ghostchar_core::exactalg::solve::solve_with_basis;
use ghostchar_core::exactalg::{groebner_lex, HpComplex, Ring, SolutionPoint, ToAlgebraic};
use ghostchar_core::ghost::{classify_point, FailingRectangle, find_ghosts, presentation_for, ClassifyOptions, GhostError, GhostOptions};
use ghostchar_core::repcheck::{
    alpha_representation, beta_representation, diagonal_representation, phi_hat, rep_to_f2_point, Approx, Complex64,
    Mat2, RepError, Representation, RepresentationJson, TraceFreeCharacter,
};
use ghostchar_core::slice::{extend_point, AnyFullPoint, F2Presentation, FullPoint};

use crate::{Common, SliceArgs};

pub enum Failure {
    /// Bad input: exit status 1.
    Usage(anyhow::Error),
    /// Positive-dimensional systems, failed verification: exit status 2.
    Math { report: Option<String>, error: anyhow::Error },
}

impl Failure {
    fn math(e: impl Into<anyhow::Error>) -> Self {
        Failure::Math { report: None, error: e.into() }
    }
}

impl From<GhostError> for Failure {
    fn from(e: GhostError) -> Self {
        match e {
            GhostError::Braid(b) => Failure::Usage(b.into()),
            other => Failure::math(other),
        }
    }
}

impl From<CoverError> for Failure {
    fn from(e: CoverError) -> Self {
        match e {
            CoverError::Braid(_) | CoverError::NoSuchRelator(_) => Failure::Usage(e.into()),
            other => Failure::math(other),
        }
    }
}

type Outcome = Result<String, Failure>;

/// Canonical JSON: object keys sorted, so re-serializing a parsed report
/// gives the same bytes.
pub fn canonical_json<T: Serialize>(v: &T) -> String {
    let value: Value = serde_json::to_value(v).expect("reports serialize");
    serde_json::to_string_pretty(&value).expect("values serialize")
}

fn provenance(module: &str, arithmetic: &str) -> Value {
    json!({ "module": module, "arithmetic": arithmetic })
}

fn braid_of(common: &Common) -> Result<(BraidWord, Diagram), Failure> {
    let braid = parse_braid(&common.braid).map_err(|e| Failure::Usage(e.into()))?;
    let diagram = build_diagram(&braid).map_err(|e| Failure::Usage(e.into()))?;
    Ok((braid, diagram))
}

fn point_text(p: &SolutionPoint) -> String {
    p.coords.iter().map(|(v, a)| format!("{v} = {a}")).collect::<Vec<_>>().join(", ")
}

fn point_mode(p: &SolutionPoint) -> &'static str {
    use ghostchar_core::exactalg::solve::ExactCoords;
    match p.exact_coords() {
        ExactCoords::Rational(_) => "exact-rational",
        ExactCoords::Quadratic(..) => "exact-quadratic",
        ExactCoords::Numeric(_) => "numeric",
    }
}

pub fn diagram(common: &Common) -> Outcome {
    let (braid, d) = braid_of(common)?;
    if common.json {
        let report = json!({
            "provenance": provenance("braid_diagram", "combinatorial"),
            "braid": braid.to_string(),
            "strands": d.strands(),
            "closure_permutation": d.closure_permutation(),
            "diagram": DiagramJson::new(&d),
        });
        return Ok(canonical_json(&report));
    }
    let mut out = String::new();
    let _ = writeln!(out, "braid {braid}: {} strands, {} arcs", d.strands(), d.arc_count());
    let _ = writeln!(out, "crossings (over, in, out):");
    for (c, r) in d.crossings().iter().zip(DiagramJson::new(&d).relators) {
        let tag = if d.is_closure(c) { "  closure" } else { "" };
        let _ = writeln!(out, "  ({}, {}, {}) {:+}  {r}{tag}", c.over, c.under_in, c.under_out, c.sign);
    }
    Ok(out.trim_end().to_string())
}

fn presentation(braid: &BraidWord, slice: &SliceArgs) -> Result<(F2Presentation, bool, Option<String>), Failure> {
    Ok(presentation_for(braid, !slice.no_symmetry)?)
}

pub fn f2(common: &Common, slice: &SliceArgs) -> Outcome {
    let (braid, _) = braid_of(common)?;
    let (pres, applied, diag) = presentation(&braid, slice)?;
    if common.json {
        let report = json!({
            "provenance": provenance("slice", "exact-rational"),
            "braid": braid.to_string(),
            "symmetry": { "applied": applied, "diagnostic": diag },
            "presentation": pres,
        });
        return Ok(canonical_json(&report));
    }
    let mut out = String::new();
    let vars: Vec<String> = pres.base_vars.iter().map(|v| v.to_string()).collect();
    let _ = writeln!(out, "F2 of {braid}: {} equations in {}", pres.equations.len(), vars.join(", "));
    if applied {
        let _ = writeln!(out, "closure symmetry applied");
    }
    if let Some(d) = diag {
        let _ = writeln!(out, "note: {d}");
    }
    for e in &pres.equations {
        let _ = writeln!(out, "  {e} = 0");
    }
    Ok(out.trim_end().to_string())
}

fn solve_points(pres: &F2Presentation) -> Result<Vec<SolutionPoint>, Failure> {
    let gb = groebner_lex(&pres.equations, &pres.base_vars);
    solve_with_basis(&pres.equations, &gb).map_err(Failure::math)
}

pub fn solve(common: &Common, slice: &SliceArgs) -> Outcome {
    let (braid, _) = braid_of(common)?;
    let (pres, applied, _) = presentation(&braid, slice)?;
    let points = solve_points(&pres)?;
    if common.json {
        let report = json!({
            "provenance": provenance("exactalg", "exact"),
            "braid": braid.to_string(),
            "symmetry_applied": applied,
            "base_vars": pres.base_vars,
            "points": points.iter().map(|p| json!({ "coords": p, "arithmetic": point_mode(p) })).collect::<Vec<_>>(),
        });
        return Ok(canonical_json(&report));
    }
    let mut out = format!("{} points of F2 for {braid}:\n", points.len());
    for p in &points {
        let _ = writeln!(out, "  {}  [{}]", point_text(p), point_mode(p));
    }
    Ok(out.trim_end().to_string())
}

fn rectangle_summary(failing: &[FailingRectangle]) -> String {
    match failing {
        [] => String::new(),
        [r] => format!("; rectangle {:?} = {}", r.rows, r.value),
        [r, rest @ ..] => format!("; rectangle {:?} = {} (and {} more nonzero)", r.rows, r.value, rest.len()),
    }
}

pub fn ghosts(common: &Common, slice: &SliceArgs, all_rectangles: bool) -> Outcome {
    let (braid, _) = braid_of(common)?;
    let opts = GhostOptions { symmetry: !slice.no_symmetry, classify: ClassifyOptions { all_rectangles } };
    let report = find_ghosts(&braid, opts)?;
    let ghost_count = report.ghosts().count();
    if common.json {
        let value = json!({
            "provenance": provenance("ghost", "per point, see arithmetic"),
            "braid": braid.to_string(),
            "symmetry_applied": report.symmetry_applied,
            "diagnostics": report.diagnostics,
            "rectangles": if all_rectangles { "all 4-subsets" } else { "1,2,a,b" },
            "points": report.points,
            "ghost_count": ghost_count,
        });
        return Ok(canonical_json(&value));
    }
    let mut out = format!("{} points of F2 for {braid}:\n", report.points.len());
    for p in &report.points {
        let cert = &p.certificate;
        let verdict = if p.is_ghost() { "GHOST" } else { "lifts" };
        let _ = write!(out, "  {}  {verdict} [{}]", point_text(&p.point()), cert.arithmetic);
        out.push_str(&rectangle_summary(&cert.failing_rectangles));
        if let Some((i, j)) = cert.hexagon_failure {
            let _ = write!(out, "; hexagon fails at {i:?}, {j:?}");
        }
        out.push('\n');
    }
    for d in &report.diagnostics {
        let _ = writeln!(out, "note: {d}");
    }
    let _ = write!(out, "ghost characters: {ghost_count}");
    Ok(out)
}

pub fn cover(common: &Common, drop: Option<usize>) -> Outcome {
    let braid = parse_braid(&common.braid).map_err(|e| Failure::Usage(e.into()))?;
    let c = cover_for_braid(&braid, drop)?;
    if common.json {
        let value = json!({
            "provenance": provenance("cover", "combinatorial"),
            "braid": braid.to_string(),
            "tietze": {
                "generators": c.reduced.presentation.generators,
                "relators": c.reduced.presentation.relators.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
                "diagnostic": c.reduced.diagnostic,
            },
            "cover": c.cover,
        });
        return Ok(canonical_json(&value));
    }
    let mut out = String::new();
    let _ = writeln!(out, "knot group after Tietze reduction: generators {:?}", c.reduced.presentation.generators);
    for r in &c.reduced.presentation.relators {
        let _ = writeln!(out, "  {r}");
    }
    if let Some(d) = &c.reduced.diagnostic {
        let _ = writeln!(out, "note: {d}");
    }
    let names: Vec<String> = c.cover.generators.iter().map(|&g| format!("{} = m1 m{g}", c.cover.name(g))).collect();
    let _ = writeln!(out, "branched cover generators: {}", names.join(", "));
    for (k, r) in c.cover.relators.iter().enumerate() {
        let _ = writeln!(out, "  w{} = {}", k + 1, c.cover.display_relator(r));
    }
    Ok(out.trim_end().to_string())
}

fn builtin_rep(name: &str, prec: u32) -> Result<Representation<HpComplex>, Failure> {
    let rep = match name {
        "alpha0" => alpha_representation(0, prec),
        "alpha1" => alpha_representation(1, prec),
        "beta++" => beta_representation(1, 1, prec),
        "beta+-" => beta_representation(1, -1, prec),
        "beta-+" => beta_representation(-1, 1, prec),
        "beta--" => beta_representation(-1, -1, prec),
        _ => match name.strip_prefix("diag").and_then(|k| k.parse::<u32>().ok()) {
            Some(k) if k < 5 => diagonal_representation(k, prec),
            _ => return Err(Failure::Usage(anyhow!("unknown built-in representation `{name}`"))),
        },
    };
    Ok(rep)
}

fn c64_pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

fn check_rep<T: Ring + Approx>(
    braid: &BraidWord,
    rep: &Representation<T>,
    tolerance: f64,
    arithmetic: &str,
    json_out: bool,
) -> Outcome {
    let c = cover_for_braid(braid, None)?;
    let residual = rep.verify(&c.cover, tolerance).map_err(|e| match e {
        RepError::Unassigned(_) | RepError::Extraneous(_) | RepError::Parse(_) => Failure::Usage(e.into()),
        other => Failure::math(other),
    })?;
    let traces: BTreeMap<String, [f64; 2]> =
        rep.generator_traces().into_iter().map(|(g, t)| (c.cover.name(g), c64_pair(t))).collect();
    let verified = residual <= tolerance;
    let (pres, _, _) = presentation_for(braid, true)?;
    let mut snapped = None;
    let mut snap_error = None;
    if verified {
        let known = solve_points(&pres)?;
        match rep_to_f2_point(rep, &pres, &known, tolerance) {
            Ok(s) => {
                let cert = classify_point(&pres, &s.point, ClassifyOptions::default())?;
                snapped = Some((s, cert));
            }
            Err(e) => snap_error = Some(e),
        }
    }
    let report = if json_out {
        let value = json!({
            "provenance": provenance("repcheck", arithmetic),
            "braid": braid.to_string(),
            "residual": residual,
            "tolerance": tolerance,
            "verified": verified,
            "traces": traces,
            "f2_point": snapped.as_ref().map(|(s, _)| json!({
                "coords": s.point,
                "snapped": s.how,
                "pair_traces": s.traces.iter().map(|(v, t)| (v.key(), c64_pair(*t))).collect::<BTreeMap<_, _>>(),
            })),
            "verdict": snapped.as_ref().map(|(_, cert)| cert),
        });
        canonical_json(&value)
    } else {
        let mut out = String::new();
        let _ = writeln!(out, "max relator residual {residual:.3e} ({arithmetic}, tolerance {tolerance:e})");
        for (name, t) in &traces {
            let _ = writeln!(out, "  tr {name} = {:.12} {:+.12}i", t[0], t[1]);
        }
        if let Some((s, cert)) = &snapped {
            let _ = writeln!(out, "F2 point ({}): {}", s.how, point_text(&s.point));
            let verdict = if cert.verdict == ghostchar_core::ghost::Verdict::Ghost { "GHOST character" } else { "lifts" };
            let _ = write!(out, "verdict: {verdict}");
            out.push_str(&rectangle_summary(&cert.failing_rectangles));
        }
        out.trim_end().to_string()
    };
    if !verified {
        return Err(Failure::Math { report: Some(report), error: anyhow!("relator residual {residual:e} exceeds {tolerance:e}") });
    }
    if let Some(e) = snap_error {
        return Err(Failure::Math { report: Some(report), error: e.into() });
    }
    Ok(report)
}

pub fn repcheck(common: &Common, rep: Option<&Path>, builtin: Option<&str>, tolerance: f64, precision: Option<u32>) -> Outcome {
    if !(tolerance > 0.0) {
        return Err(Failure::Usage(anyhow!("tolerance must be positive")));
    }
    let (braid, _) = braid_of(common)?;
    let hp_rep = match (rep, builtin) {
        (_, Some(name)) => builtin_rep(name, precision.unwrap_or(ghostchar_core::exactalg::DEFAULT_PRECISION))?,
        (Some(path), None) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display())).map_err(Failure::Usage)?;
            let parsed: RepresentationJson =
                serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display())).map_err(Failure::Usage)?;
            let c = cover_for_braid(&braid, None)?;
            let dbl = parsed.to_rep(&c.cover).map_err(|e| Failure::Usage(e.into()))?;
            match precision {
                None => return check_rep(&braid, &dbl, tolerance, "double", common.json),
                Some(p) => Representation {
                    ctx: p,
                    generators: dbl
                        .generators
                        .iter()
                        .map(|(&g, m)| {
                            let h = |z: &Complex64| HpComplex::from_c64(*z, p);
                            (g, Mat2::new(h(&m.a), h(&m.b), h(&m.c), h(&m.d)))
                        })
                        .collect(),
                },
            }
        }
        (None, None) => return Err(Failure::Usage(anyhow!("one of --rep or --builtin is required"))),
    };
    match precision {
        Some(p) => check_rep(&braid, &hp_rep, tolerance, &format!("{p}-bit"), common.json),
        None => check_rep(&braid, &hp_rep.to_c64(), tolerance, "double", common.json),
    }
}

/// `base` supplies exact values for its own coordinates.
fn phi_of<T: Ring + ToAlgebraic>(p: &FullPoint<T>, base: &SolutionPoint, m: usize) -> Result<Value, Failure> {
    let chi = TraceFreeCharacter { ctx: p.ctx.clone(), arcs: m, pairs: p.restrict(m), triples: BTreeMap::new() };
    let z = phi_hat(&chi).map_err(Failure::math)?;
    let pairs: BTreeMap<String, _> = z.z_pairs.iter().map(|(v, x)| (v.key(), base.get(*v).cloned().unwrap_or_else(|| x.to_algebraic()))).collect();
    let quads: BTreeMap<String, _> = z
        .z_quads
        .iter()
        .map(|(k, x)| (k.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(","), x.to_algebraic()))
        .collect();
    Ok(json!({ "z_pairs": pairs, "z_quads": quads }))
}

pub fn phihat(common: &Common, slice: &SliceArgs) -> Outcome {
    let (braid, d) = braid_of(common)?;
    let (pres, _, _) = presentation(&braid, slice)?;
    let points = solve_points(&pres)?;
    let mut rows = Vec::new();
    for p in &points {
        let full = extend_point(&pres, p).map_err(Failure::math)?;
        let z = match &full {
            AnyFullPoint::Rational(f) => phi_of(f, p, d.strands())?,
            AnyFullPoint::Quadratic(f) => phi_of(f, p, d.strands())?,
            AnyFullPoint::Numeric(f) => phi_of(f, p, d.strands())?,
        };
        rows.push((p, full.mode(), z));
    }
    if common.json {
        let value = json!({
            "provenance": provenance("repcheck", "per point, see arithmetic"),
            "braid": braid.to_string(),
            "points": rows.iter().map(|(p, mode, z)| json!({ "coords": p, "arithmetic": mode, "phi_hat": z })).collect::<Vec<_>>(),
        });
        return Ok(canonical_json(&value));
    }
    let mut out = String::new();
    for (p, mode, z) in &rows {
        let _ = writeln!(out, "{}  [{mode}]", point_text(p));
        if let Some(q) = z["z_quads"].as_object() {
            for (k, v) in q {
                let val: ghostchar_core::exactalg::AlgebraicNumber = serde_json::from_value(v.clone()).expect("round trip");
                let _ = writeln!(out, "  z[{k}] = {val}");
            }
        }
    }
    Ok(out.trim_end().to_string())
}
