//! Generators for concrete complete and non-complete invariant codes, each
//! with its designated map and the properties it is expected to have.

use std::fmt;
use std::str::FromStr;

use crate::automata::RegularLanguage;
use crate::error::{Error, Result};
use crate::theta::{Kind, ThetaMap};
use crate::words::{Alphabet, FiniteLanguage, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// `A^n` over `{a,b}`.
    Uniform,
    /// `⋃_{1≤i<n} {a^i b, b^i a} ∪ {a^n, b^n}`, a prefix non-suffix code.
    E00,
    /// Shape `(A^n ∖ (AW ∪ WA)) ∪ W ∪ AWA` with `W = {a^k b^k}`, `n = 2k+1`.
    E2,
    /// Same shape with `W = {a^k b^k a^k}`, `n = 3k+1`.
    E21,
    /// Over `{a,b,c}`: `W` the orbit of `a^k b^k`, `n = 2k+1`. Not a code
    /// for `k = 1`, where `W` is not separated from `AW`.
    E22a,
    /// Over `{a,b,c}`: `W` the orbit of `a^k b^k a^k`, `n = 3k+1`.
    E22b,
    /// The nine-word complete bifix code.
    C72,
    /// `{aa, ab, aab, abb, bb}`, complete and neither prefix nor suffix.
    E3,
    /// `{aa, b}`, bifix and not completable within finite bifix codes.
    E33x,
    /// `b | ab*a`, an infinite complete bifix code.
    E33z,
}

pub const ALL_FAMILIES: [Family; 10] = [
    Family::Uniform,
    Family::E00,
    Family::E2,
    Family::E21,
    Family::E22a,
    Family::E22b,
    Family::C72,
    Family::E3,
    Family::E33x,
    Family::E33z,
];

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Uniform => "uniform",
            Family::E00 => "e00",
            Family::E2 => "e2",
            Family::E21 => "e21",
            Family::E22a => "e22a",
            Family::E22b => "e22b",
            Family::C72 => "c72",
            Family::E3 => "e3",
            Family::E33x => "e33x",
            Family::E33z => "e33z",
        }
    }

    /// `Some('n')` or `Some('k')` for parameterized families.
    pub fn param_name(self) -> Option<char> {
        match self {
            Family::Uniform | Family::E00 => Some('n'),
            Family::E2 | Family::E21 | Family::E22a | Family::E22b => Some('k'),
            _ => None,
        }
    }

    fn min_param(self) -> usize {
        match self {
            Family::E00 => 3,
            _ => 1,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ALL_FAMILIES
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::BadParams(format!("unknown family '{s}'")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub family: Family,
    pub param: Option<usize>,
}

impl FamilySpec {
    pub fn new(family: Family, param: Option<usize>) -> Self {
        Self { family, param }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Expected {
    pub code: bool,
    pub prefix: bool,
    pub suffix: bool,
    pub complete: bool,
    pub theta_invariant: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySet {
    Finite(FiniteLanguage),
    Regex { alphabet: Alphabet, text: String },
}

#[derive(Clone, Debug)]
pub struct Generated {
    pub spec: FamilySpec,
    pub set: FamilySet,
    pub theta: ThetaMap,
    pub expected: Expected,
    /// The word set `W` of the shaped families.
    pub w: Option<FiniteLanguage>,
}

impl Generated {
    pub fn alphabet(&self) -> &Alphabet {
        self.theta.alphabet()
    }

    pub fn language(&self) -> Result<RegularLanguage> {
        match &self.set {
            FamilySet::Finite(x) => Ok(RegularLanguage::from_finite(x)),
            FamilySet::Regex { alphabet, text } => RegularLanguage::parse_regex(text, alphabet),
        }
    }
}

const COMPLETE_BIFIX: Expected =
    Expected { code: true, prefix: true, suffix: true, complete: true, theta_invariant: true };

pub fn generate(spec: FamilySpec) -> Result<Generated> {
    let family = spec.family;
    let param = match (family.param_name(), spec.param) {
        (Some(name), None) => return Err(Error::BadParams(format!("{family} needs -{name}"))),
        (None, Some(_)) => return Err(Error::BadParams(format!("{family} takes no parameter"))),
        (Some(name), Some(p)) if p < family.min_param() => {
            return Err(Error::BadParams(format!("{family} needs {name} >= {}", family.min_param())))
        }
        (_, p) => p.unwrap_or(0),
    };
    let ab = Alphabet::ab();
    let abc: Alphabet = "abc".parse()?;
    let swap_anti = ThetaMap::swap(&ab, Kind::Antimorphism);
    let finite = |alphabet: &Alphabet, words: Vec<Word>| FiniteLanguage::new(alphabet.clone(), words);
    let (set, theta, expected, w) = match family {
        Family::Uniform => (finite(&ab, ab.words_of_length(param))?, swap_anti, COMPLETE_BIFIX, None),
        Family::E00 => {
            let mut words = vec![Word::power(0, param), Word::power(1, param)];
            for i in 1..param {
                words.push(Word::power(0, i).concat(&Word::power(1, 1)));
                words.push(Word::power(1, i).concat(&Word::power(0, 1)));
            }
            let expected = Expected { suffix: false, ..COMPLETE_BIFIX };
            (finite(&ab, words)?, ThetaMap::swap(&ab, Kind::Morphism), expected, None)
        }
        Family::E2 => {
            let w = finite(&ab, vec![blocks(&[(0, param), (1, param)])])?;
            (shaped(2 * param + 1, &w)?, swap_anti, COMPLETE_BIFIX, Some(w))
        }
        Family::E21 => {
            let w = finite(&ab, vec![blocks(&[(0, param), (1, param), (0, param)])])?;
            (shaped(3 * param + 1, &w)?, ThetaMap::mirror(&ab), COMPLETE_BIFIX, Some(w))
        }
        Family::E22a | Family::E22b => {
            let cycle = ThetaMap::cycle(&abc, Kind::Antimorphism);
            let (seed, n) = if family == Family::E22a {
                (blocks(&[(0, param), (1, param)]), 2 * param + 1)
            } else {
                (blocks(&[(0, param), (1, param), (0, param)]), 3 * param + 1)
            };
            let w = cycle.orbit(&seed)?;
            // For e22a with k = 1 the words of W occur as prefixes of AW
            // (aba = a·ba), the construction breaks and X is not a code.
            let expected = if separated(&w) {
                COMPLETE_BIFIX
            } else {
                Expected { code: false, prefix: false, suffix: false, ..COMPLETE_BIFIX }
            };
            (shaped(n, &w)?, cycle, expected, Some(w))
        }
        Family::C72 => {
            let words = ["aaa", "ab", "aaba", "aabb", "baa", "baba", "babb", "bba", "bbb"];
            (FiniteLanguage::parse(&ab, &words)?, swap_anti, COMPLETE_BIFIX, None)
        }
        Family::E3 => {
            let expected = Expected { prefix: false, suffix: false, ..COMPLETE_BIFIX };
            (FiniteLanguage::parse(&ab, &["aa", "ab", "aab", "abb", "bb"])?, swap_anti, expected, None)
        }
        Family::E33x => {
            let expected = Expected { complete: false, ..COMPLETE_BIFIX };
            (FiniteLanguage::parse(&ab, &["aa", "b"])?, ThetaMap::mirror(&ab), expected, None)
        }
        Family::E33z => {
            let set = FamilySet::Regex { alphabet: ab.clone(), text: "b|ab*a".into() };
            return Ok(Generated { spec, set, theta: ThetaMap::mirror(&ab), expected: COMPLETE_BIFIX, w: None });
        }
    };
    Ok(Generated { spec, set: FamilySet::Finite(set), theta, expected, w })
}

fn blocks(runs: &[(u8, usize)]) -> Word {
    Word::concat_all(&runs.iter().map(|&(a, n)| Word::power(a, n)).collect::<Vec<_>>())
}

/// No word of `W` is a prefix of a word in `AW` or a suffix of one in `WA`.
pub fn separated(w: &FiniteLanguage) -> bool {
    let letters = w.alphabet().words_of_length(1);
    w.iter().all(|v| w.iter().all(|u| letters.iter().all(|a| !a.concat(u).starts_with(v) && !u.concat(a).ends_with(v))))
}

/// `(A^n ∖ (AW ∪ WA)) ∪ W ∪ AWA`.
fn shaped(n: usize, w: &FiniteLanguage) -> Result<FiniteLanguage> {
    let alphabet = w.alphabet();
    let letters: Vec<Word> = alphabet.words_of_length(1);
    let mut aw = FiniteLanguage::empty(alphabet.clone());
    let mut awa = FiniteLanguage::empty(alphabet.clone());
    for v in w.iter() {
        for a in &letters {
            aw.insert(a.concat(v));
            aw.insert(v.concat(a));
            for b in &letters {
                awa.insert(Word::concat_all([a, v, b]));
            }
        }
    }
    let mut x =
        FiniteLanguage::new(alphabet.clone(), alphabet.words_of_length(n).into_iter().filter(|u| !aw.contains(u)))?;
    for v in w.iter().chain(awa.iter()) {
        x.insert(v.clone());
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn words(g: &Generated) -> Vec<String> {
        match &g.set {
            FamilySet::Finite(x) => x.rendered(),
            FamilySet::Regex { text, .. } => vec![text.clone()],
        }
    }

    #[test]
    fn e2_k1_is_the_nine_word_code() {
        let e2 = generate(FamilySpec::new(Family::E2, Some(1))).unwrap();
        let c72 = generate(FamilySpec::new(Family::C72, None)).unwrap();
        assert_eq!(words(&e2), words(&c72));
        assert_eq!(words(&e2).len(), 9);
    }

    #[test]
    fn sizes() {
        let size = |f, p| match generate(FamilySpec::new(f, p)).unwrap().set {
            FamilySet::Finite(x) => x.len(),
            FamilySet::Regex { .. } => 0,
        };
        assert_eq!(size(Family::E00, Some(3)), 6);
        assert_eq!(size(Family::E00, Some(4)), 8);
        assert_eq!(size(Family::Uniform, Some(2)), 4);
        assert_eq!(size(Family::E3, None), 5);
        let e22a = generate(FamilySpec::new(Family::E22a, Some(1))).unwrap();
        assert_eq!(e22a.w.unwrap().rendered(), ["ab", "ac", "ba", "bc", "ca", "cb"]);
        let e22b = generate(FamilySpec::new(Family::E22b, Some(1))).unwrap();
        assert_eq!(e22b.w.unwrap().rendered(), ["aba", "bcb", "cac"]);
        assert_eq!(generate(FamilySpec::new(Family::E22b, Some(2))).unwrap().w.unwrap().len(), 3);
    }

    #[test]
    fn e22a_needs_k_at_least_two() {
        let g = generate(FamilySpec::new(Family::E22a, Some(1))).unwrap();
        assert!(!separated(g.w.as_ref().unwrap()));
        assert!(!g.expected.code);
        for k in 2..=3 {
            let g = generate(FamilySpec::new(Family::E22a, Some(k))).unwrap();
            assert!(separated(g.w.as_ref().unwrap()) && g.expected.code);
        }
        let g = generate(FamilySpec::new(Family::E22b, Some(1))).unwrap();
        assert!(separated(g.w.as_ref().unwrap()) && g.expected.code);
    }

    #[test]
    fn parameter_validation() {
        assert!(generate(FamilySpec::new(Family::E00, Some(2))).is_err());
        assert!(generate(FamilySpec::new(Family::E2, None)).is_err());
        assert!(generate(FamilySpec::new(Family::C72, Some(1))).is_err());
        assert!(generate(FamilySpec::new(Family::E21, Some(0))).is_err());
        assert!("e7".parse::<Family>().is_err());
        assert_eq!("e22b".parse::<Family>().unwrap(), Family::E22b);
    }
}
