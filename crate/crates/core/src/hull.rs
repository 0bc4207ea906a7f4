//! Free hulls of finite sets, plain and θ-invariant.
//!
//! A submonoid `M` is free iff it is stable: `u, v, uw, wv ∈ M` imply
//! `w ∈ M`. The hull is reached by a closure loop. While `M` is not stable,
//! the shortest offending `w` is added to the generators, and in the
//! θ-variant the images `θ(g)` are added as well. Both steps stay inside
//! every free (θ-invariant) submonoid containing `X`, so the fixpoint is
//! the smallest one. Termination is not proven in general; a cap guards
//! the loop.

use crate::analysis::sardinas_patterson;
use crate::automata::RegularLanguage;
use crate::error::{Error, Result};
use crate::theta::ThetaMap;
use crate::words::{FiniteLanguage, Word};

pub const HULL_ITERATION_CAP: usize = 1000;

/// A finitely generated submonoid `generators*`.
#[derive(Clone, Debug)]
pub struct Submonoid {
    pub generators: FiniteLanguage,
    pub language: RegularLanguage,
}

impl Submonoid {
    pub fn new(generators: FiniteLanguage) -> Result<Self> {
        let language = RegularLanguage::from_finite(&generators).star()?;
        Ok(Self { generators, language })
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.language.contains(w)
    }
}

#[derive(Clone, Debug)]
pub struct HullResult {
    pub base: FiniteLanguage,
    pub language: RegularLanguage,
    pub theta_invariant: bool,
    pub input_is_code: bool,
    /// `|base| ≤ |X| − 1` when the input is not a code; vacuous otherwise.
    pub defect_ok: bool,
    pub iterations: usize,
}

/// Minimal generating set `(M∖ε) ∖ (M∖ε)²`. It is a subset of the
/// generators, so enumeration up to their maximal length is exact.
pub fn submonoid_base(m: &Submonoid) -> Result<FiniteLanguage> {
    let alphabet = m.generators.alphabet();
    let plus = m.language.difference(&RegularLanguage::epsilon(alphabet))?;
    let base = plus.difference(&plus.concat(&plus)?)?;
    FiniteLanguage::new(alphabet.clone(), base.words_up_to(m.generators.max_len()))
}

/// Shortest `w ∉ M` with `uw, wv ∈ M` for some `u, v ∈ M`.
pub fn stability_witness(m: &Submonoid) -> Result<Option<Word>> {
    let l = &m.language;
    let candidates = l.left_quotient_by(l)?.intersection(&l.right_quotient_by(l)?)?;
    Ok(candidates.difference(l)?.shortest_word())
}

pub fn free_hull(x: &FiniteLanguage) -> Result<HullResult> {
    closure(x, None)
}

/// Smallest θ-invariant free submonoid containing a θ-invariant `X`.
pub fn theta_free_hull(x: &FiniteLanguage, t: &ThetaMap) -> Result<HullResult> {
    if x.alphabet() != t.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    if t.apply_finite(x)? != *x {
        return Err(Error::NotThetaInvariant);
    }
    closure(x, Some(t))
}

fn closure(x: &FiniteLanguage, t: Option<&ThetaMap>) -> Result<HullResult> {
    x.require_epsilon_free()?;
    if x.is_empty() {
        return Err(Error::EmptyLanguage);
    }
    let bound = x.max_len();
    let alphabet = x.alphabet();
    let mut m = Submonoid::new(x.clone())?;
    m = Submonoid::new(submonoid_base(&m)?)?;
    for iteration in 1..=HULL_ITERATION_CAP {
        let mut extra: Vec<Word> = Vec::new();
        if let Some(w) = stability_witness(&m)? {
            extra.push(w);
        } else if let Some(t) = t {
            extra.extend(t.apply_finite(&m.generators)?.iter().filter(|g| !m.contains(g)).cloned());
        }
        if extra.is_empty() {
            let base = m.generators.clone();
            let input_is_code = sardinas_patterson(x)?.is_code;
            let theta_invariant = match t {
                Some(t) => t.apply_finite(&base)? == base,
                None => true,
            };
            return Ok(HullResult {
                defect_ok: input_is_code || base.len() < x.len(),
                base,
                language: m.language,
                theta_invariant,
                input_is_code,
                iterations: iteration,
            });
        }
        if let Some(long) = extra.iter().find(|w| w.len() > bound) {
            return Err(Error::HullBound { word: alphabet.render(long), bound });
        }
        let mut gens = m.generators.clone();
        for w in extra {
            gens.insert(w);
        }
        m = Submonoid::new(submonoid_base(&Submonoid::new(gens)?)?)?;
    }
    Err(Error::IterationCap { what: "free hull closure", cap: HULL_ITERATION_CAP })
}
