//! Presentations of the fundamental group of the 2-fold branched cover.
//!
//! Cover generators are `x_i = m₁m_i`; `x₁` is the identity.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::braid::{build_diagram, wirtinger_presentation, wirtinger_presentation_dropping, BraidError, BraidWord, GroupPresentation, GroupWord};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoverError {
    #[error("word of odd length {0} cannot be paired")]
    OddLength(usize),
    #[error("presentation has no generator m1")]
    NoBaseGenerator,
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("arc {0} has no relator to drop")]
    NoSuchRelator(usize),
    #[error(transparent)]
    Braid(#[from] BraidError),
}

/// Result of [`tietze_reduce`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TietzeOutcome {
    pub presentation: GroupPresentation,
    /// Generators that could not be eliminated.
    pub diagnostic: Option<String>,
}

/// Eliminates generators above `keep`, highest first.
///
/// For generator `g` the relator ending in `g⁻¹` is used if `g` occurs in
/// it once; otherwise the shortest relator containing `g` exactly once.
/// Writing that relator as `u g^e v` gives `g^e = u⁻¹v⁻¹`.
pub fn tietze_reduce(pres: &GroupPresentation, keep: usize) -> TietzeOutcome {
    let mut generators = pres.generators.clone();
    let mut relators = pres.relators.clone();
    let mut stuck = Vec::new();
    let mut targets: Vec<usize> = generators.iter().copied().filter(|&g| g > keep).collect();
    targets.sort_unstable_by(|a, b| b.cmp(a));
    for g in targets {
        let defining = relators.iter().position(|r| r.letters().last() == Some(&(g, -1)) && r.occurrences(g) == 1);
        let chosen = defining.or_else(|| {
            relators.iter().enumerate().filter(|(_, r)| r.occurrences(g) == 1).min_by_key(|(_, r)| r.len()).map(|(k, _)| k)
        });
        let Some(k) = chosen else {
            stuck.push(g);
            continue;
        };
        let r = relators.remove(k);
        let p = r.letters().iter().position(|&(h, _)| h == g).expect("occurs once");
        let e = r.letters()[p].1;
        let u = GroupWord::new(r.letters()[..p].iter().copied());
        let v = GroupWord::new(r.letters()[p + 1..].iter().copied());
        let power = u.inverse().concat(&v.inverse());
        let image = if e > 0 { power } else { power.inverse() };
        relators = relators.iter().map(|w| w.substitute(|h| if h == g { image.clone() } else { GroupWord::gen(h) })).collect();
        generators.retain(|&h| h != g);
    }
    relators.retain(|r| !r.is_empty());
    let diagnostic = (!stuck.is_empty()).then(|| format!("no relator eliminates generator(s) {stuck:?}"));
    TietzeOutcome { presentation: GroupPresentation { generators, relators }, diagnostic }
}

/// Pairs consecutive letters: `(m_a^ε, m_b^δ) ↦ x_a⁻¹ x_b` with `x₁ = 1`.
///
/// The result is a word in cover generator indices.
pub fn fox_rewrite(word: &GroupWord) -> Result<GroupWord, CoverError> {
    let l = word.letters();
    if l.len() % 2 == 1 {
        return Err(CoverError::OddLength(l.len()));
    }
    let mut out = Vec::with_capacity(l.len());
    for pair in l.chunks(2) {
        let (a, b) = (pair[0].0, pair[1].0);
        if a != 1 {
            out.push((a, -1));
        }
        if b != 1 {
            out.push((b, 1));
        }
    }
    Ok(GroupWord::new(out))
}

/// `⟨x_i | relators⟩` with `x_i = m₁m_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "CoverJson", try_from = "CoverJson")]
pub struct CoverPresentation {
    /// Indices `i` of the generators `x_i`, ascending.
    pub generators: Vec<usize>,
    pub relators: Vec<GroupWord>,
}

#[derive(Serialize, Deserialize)]
struct CoverJson {
    generators: Vec<String>,
    relators: Vec<Vec<(String, i64)>>,
}

impl CoverPresentation {
    /// `x`, `y`, `z` for up to three generators, otherwise `x2`, `x3`, ...
    pub fn name(&self, i: usize) -> String {
        let short = self.generators.len() <= 3;
        match self.generators.iter().position(|&g| g == i) {
            Some(k) if short => ["x", "y", "z"][k].to_string(),
            _ => format!("x{i}"),
        }
    }

    fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().copied().find(|&g| self.name(g) == name)
    }

    pub fn display_relator(&self, w: &GroupWord) -> String {
        w.display_with(|g| self.name(g))
    }
}

impl From<CoverPresentation> for CoverJson {
    fn from(c: CoverPresentation) -> Self {
        CoverJson {
            generators: c.generators.iter().map(|&g| c.name(g)).collect(),
            relators: c.relators.iter().map(|r| r.letters().iter().map(|&(g, e)| (c.name(g), e as i64)).collect()).collect(),
        }
    }
}

impl TryFrom<CoverJson> for CoverPresentation {
    type Error = CoverError;

    fn try_from(j: CoverJson) -> Result<Self, Self::Error> {
        let generators = j
            .generators
            .iter()
            .enumerate()
            .map(|(k, name)| match name.as_str() {
                "x" | "y" | "z" if j.generators.len() <= 3 => Ok(k + 2),
                _ => name.strip_prefix('x').and_then(|s| s.parse().ok()).ok_or_else(|| CoverError::UnknownGenerator(name.clone())),
            })
            .collect::<Result<Vec<usize>, _>>()?;
        let shell = CoverPresentation { generators, relators: Vec::new() };
        let relators = j
            .relators
            .iter()
            .map(|r| {
                r.iter()
                    .map(|(name, e)| match (shell.index_of(name), *e) {
                        (Some(g), 1) => Ok((g, 1)),
                        (Some(g), -1) => Ok((g, -1)),
                        _ => Err(CoverError::UnknownGenerator(format!("{name}^{e}"))),
                    })
                    .collect::<Result<Vec<_>, _>>()
                    .map(GroupWord::new)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CoverPresentation { relators, ..shell })
    }
}

/// `fox_rewrite(r)` for every relator, then `fox_rewrite(m₁ r m₁⁻¹)`;
/// cyclically reduced, trivial and repeated relators removed.
pub fn branched_cover_presentation(pres: &GroupPresentation) -> Result<CoverPresentation, CoverError> {
    if !pres.generators.contains(&1) {
        return Err(CoverError::NoBaseGenerator);
    }
    let generators: Vec<usize> = pres.generators.iter().copied().filter(|&g| g != 1).collect();
    let mut relators: Vec<GroupWord> = Vec::new();
    let images = pres
        .relators
        .iter()
        .map(fox_rewrite)
        .chain(pres.relators.iter().map(|r| fox_rewrite(&r.conjugate_by(1, 1))));
    for w in images {
        let w = w?.cyclically_reduced();
        if !w.is_empty() && !relators.contains(&w) {
            relators.push(w);
        }
    }
    Ok(CoverPresentation { generators, relators })
}

/// Everything `ghostchar cover` reports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverComputation {
    pub wirtinger: GroupPresentation,
    pub reduced: TietzeOutcome,
    pub cover: CoverPresentation,
}

/// Wirtinger presentation without the relator creating arc `drop`
/// (default: the last one), Tietze-reduced to `m₁..m_m`, then rewritten.
pub fn cover_for_braid(braid: &BraidWord, drop: Option<usize>) -> Result<CoverComputation, CoverError> {
    let d = build_diagram(braid)?;
    let wirtinger = match drop {
        None => wirtinger_presentation(&d, true),
        Some(arc) => wirtinger_presentation_dropping(&d, arc).ok_or(CoverError::NoSuchRelator(arc))?,
    };
    let reduced = tietze_reduce(&wirtinger, d.strands());
    let cover = branched_cover_presentation(&reduced.presentation)?;
    Ok(CoverComputation { wirtinger, reduced, cover })
}
