//! Alphabets, words, finite languages and the overlap relation.
//!
//! Words store letter indices into their [`Alphabet`], so the derived
//! ordering of indices is the alphabet order. [`Word`] orders by length
//! first and lexicographically second; every "shortest" choice in the crate
//! relies on that order.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Letters reserved by the regex and file syntaxes.
const RESERVED: &[char] = &['|', '*', '+', '(', ')', '_', '~', '#', ':', '=', '-', '>', '/'];

/// Maximum number of letters in an alphabet.
pub const MAX_LETTERS: usize = 64;

/// A letter, stored as its index in the alphabet.
pub type Letter = u8;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    letters: Vec<char>,
}

impl Alphabet {
    pub fn new(letters: impl IntoIterator<Item = char>) -> Result<Self> {
        let letters: Vec<char> = letters.into_iter().collect();
        if letters.is_empty() {
            return Err(Error::InvalidAlphabet("empty".into()));
        }
        if letters.len() > MAX_LETTERS {
            return Err(Error::InvalidAlphabet(format!("{} letters, at most {MAX_LETTERS} allowed", letters.len())));
        }
        for (i, c) in letters.iter().enumerate() {
            if c.is_whitespace() || RESERVED.contains(c) {
                return Err(Error::InvalidAlphabet(format!("reserved symbol '{c}'")));
            }
            if letters[..i].contains(c) {
                return Err(Error::InvalidAlphabet(format!("duplicate letter '{c}'")));
            }
        }
        Ok(Self { letters })
    }

    /// The binary alphabet `{a, b}` used by most examples.
    pub fn ab() -> Self {
        Self { letters: vec!['a', 'b'] }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[char] {
        &self.letters
    }

    pub fn char_of(&self, letter: Letter) -> char {
        self.letters[letter as usize]
    }

    pub fn index_of(&self, c: char) -> Option<Letter> {
        self.letters.iter().position(|&l| l == c).map(|i| i as Letter)
    }

    pub fn letter(&self, c: char) -> Result<Letter> {
        self.index_of(c).ok_or(Error::ForeignLetter(c))
    }

    /// Parses a word written as letters without separators. The token `eps`
    /// and the empty string both denote the empty word.
    pub fn parse_word(&self, s: &str) -> Result<Word> {
        let s = s.trim();
        if s == "eps" || s.is_empty() {
            return Ok(Word::empty());
        }
        s.chars().map(|c| self.letter(c)).collect::<Result<Vec<_>>>().map(Word::from)
    }

    /// Renders a word; the empty word renders as `eps`.
    pub fn render(&self, w: &Word) -> String {
        if w.is_empty() {
            return "eps".to_string();
        }
        w.letters().iter().map(|&l| self.char_of(l)).collect()
    }

    pub fn contains_word(&self, w: &Word) -> bool {
        w.letters().iter().all(|&l| (l as usize) < self.len())
    }

    /// All words of exactly `len` letters, in lexicographic order.
    pub fn words_of_length(&self, len: usize) -> Vec<Word> {
        let k = self.len();
        let mut out = Vec::with_capacity(k.pow(len as u32));
        let mut cur = vec![0 as Letter; len];
        loop {
            out.push(Word::from(cur.clone()));
            let mut i = len;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if (cur[i] as usize) + 1 < k {
                    cur[i] += 1;
                    break;
                }
                cur[i] = 0;
            }
        }
    }

    /// All words up to `max_len` letters, in length-lex order.
    pub fn words_up_to(&self, max_len: usize) -> Vec<Word> {
        (0..=max_len).flat_map(|n| self.words_of_length(n)).collect()
    }
}

impl FromStr for Alphabet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Alphabet::new(s.chars().filter(|c| !c.is_whitespace()))
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.letters.iter().try_for_each(|c| write!(f, "{c}"))
    }
}

/// A finite word, as a sequence of letter indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// `letter^n`.
    pub fn power(letter: Letter, n: usize) -> Self {
        Word(vec![letter; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn concat_all<'a>(parts: impl IntoIterator<Item = &'a Word>) -> Word {
        Word(parts.into_iter().flat_map(|w| w.0.iter().copied()).collect())
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn prefix(&self, n: usize) -> Word {
        Word(self.0[..n].to_vec())
    }

    pub fn suffix_from(&self, n: usize) -> Word {
        Word(self.0[n..].to_vec())
    }

    pub fn starts_with(&self, other: &Word) -> bool {
        self.0.starts_with(&other.0)
    }

    pub fn ends_with(&self, other: &Word) -> bool {
        self.0.ends_with(&other.0)
    }

    /// True when `other` occurs as a factor of `self`.
    pub fn contains_factor(&self, other: &Word) -> bool {
        other.is_empty() || self.0.windows(other.len()).any(|w| w == other.0.as_slice())
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A finite set of words over a declared alphabet, kept in length-lex order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteLanguage {
    alphabet: Alphabet,
    words: BTreeSet<Word>,
}

impl FiniteLanguage {
    pub fn new(alphabet: Alphabet, words: impl IntoIterator<Item = Word>) -> Result<Self> {
        let words: BTreeSet<Word> = words.into_iter().collect();
        if words.iter().any(|w| !alphabet.contains_word(w)) {
            return Err(Error::BadParams("word uses a letter outside the alphabet".into()));
        }
        Ok(Self { alphabet, words })
    }

    /// Builds a language from textual words (`eps` for the empty word).
    pub fn parse<S: AsRef<str>>(alphabet: &Alphabet, words: &[S]) -> Result<Self> {
        let words = words.iter().map(|w| alphabet.parse_word(w.as_ref())).collect::<Result<Vec<_>>>()?;
        Self::new(alphabet.clone(), words)
    }

    pub fn empty(alphabet: Alphabet) -> Self {
        Self { alphabet, words: BTreeSet::new() }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn words(&self) -> &BTreeSet<Word> {
        &self.words
    }

    pub fn iter(&self) -> impl Iterator<Item = &Word> {
        self.words.iter()
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.words.contains(w)
    }

    pub fn contains_epsilon(&self) -> bool {
        self.words.contains(&Word::empty())
    }

    pub fn max_len(&self) -> usize {
        self.words.iter().map(Word::len).max().unwrap_or(0)
    }

    pub fn total_len(&self) -> usize {
        self.words.iter().map(Word::len).sum()
    }

    pub fn insert(&mut self, w: Word) -> bool {
        debug_assert!(self.alphabet.contains_word(&w));
        self.words.insert(w)
    }

    pub fn union(&self, other: &FiniteLanguage) -> Result<FiniteLanguage> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        Ok(Self { alphabet: self.alphabet.clone(), words: self.words.union(&other.words).cloned().collect() })
    }

    pub fn is_subset(&self, other: &FiniteLanguage) -> bool {
        self.words.is_subset(&other.words)
    }

    /// Fails with [`Error::EpsilonInCode`] when ε belongs to the set.
    pub fn require_epsilon_free(&self) -> Result<()> {
        if self.contains_epsilon() {
            Err(Error::EpsilonInCode)
        } else {
            Ok(())
        }
    }

    /// Words rendered with the alphabet, in canonical order.
    pub fn rendered(&self) -> Vec<String> {
        self.words.iter().map(|w| self.alphabet.render(w)).collect()
    }
}

impl fmt::Display for FiniteLanguage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.rendered().join(","))
    }
}

/// Decides whether the pair `(w, w2)` overlaps: some nonempty proper prefix
/// of one word is a proper suffix of the other.
pub fn overlaps(w: &Word, w2: &Word) -> Result<bool> {
    if w.is_empty() || w2.is_empty() {
        return Err(Error::EmptyWord);
    }
    let (a, b) = (w.letters(), w2.letters());
    // u·w2 = w·v with 1 <= |u| <= |w|-1, 1 <= |v| <= |w2|-1: a proper suffix
    // of w of length |w|-|u| is a proper prefix of w2.
    let suffix_of_w_prefix_of_w2 =
        (1..a.len()).map(|u| a.len() - u).filter(|&m| m < b.len()).any(|m| a[a.len() - m..] == b[..m]);
    // w2·u = v·w, symmetric case.
    let suffix_of_w2_prefix_of_w =
        (1..a.len()).map(|u| a.len() - u).filter(|&m| m < b.len()).any(|m| b[b.len() - m..] == a[..m]);
    Ok(suffix_of_w_prefix_of_w2 || suffix_of_w2_prefix_of_w)
}

/// A word is overlapping-free when it does not overlap itself.
pub fn is_overlapping_free(w: &Word) -> Result<bool> {
    overlaps(w, w).map(|o| !o)
}

/// Prefix, suffix and factor closures of a finite set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffixSets {
    pub prefixes: FiniteLanguage,
    pub suffixes: FiniteLanguage,
    pub factors: FiniteLanguage,
}

pub fn affix_sets(x: &FiniteLanguage) -> AffixSets {
    let mut p = BTreeSet::new();
    let mut s = BTreeSet::new();
    let mut f = BTreeSet::new();
    for w in x.iter() {
        let n = w.len();
        for i in 0..=n {
            p.insert(w.prefix(i));
            s.insert(w.suffix_from(i));
            for j in i..=n {
                f.insert(Word::from(w.letters()[i..j].to_vec()));
            }
        }
    }
    let alphabet = x.alphabet().clone();
    AffixSets {
        prefixes: FiniteLanguage { alphabet: alphabet.clone(), words: p },
        suffixes: FiniteLanguage { alphabet: alphabet.clone(), words: s },
        factors: FiniteLanguage { alphabet, words: f },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Alphabet::ab().parse_word(s).unwrap()
    }

    /// Enumerates every pair (u, v) allowed by the overlap definition.
    fn overlaps_brute(x: &Word, y: &Word) -> bool {
        let ab = Alphabet::ab();
        let us: Vec<Word> = (1..x.len()).flat_map(|n| ab.words_of_length(n)).collect();
        let vs: Vec<Word> = (1..y.len()).flat_map(|n| ab.words_of_length(n)).collect();
        us.iter().any(|u| vs.iter().any(|v| u.concat(y) == x.concat(v) || y.concat(u) == v.concat(x)))
    }

    #[test]
    fn overlap_examples() {
        assert!(overlaps(&w("ab"), &w("ba")).unwrap());
        assert!(!overlaps(&w("aa"), &w("bb")).unwrap());
        let z = w("aaaaaaabbaaababbbbbbb");
        assert!(!overlaps(&z, &z).unwrap());
        assert!(is_overlapping_free(&z).unwrap());
        assert_eq!(overlaps(&Word::empty(), &w("a")), Err(Error::EmptyWord));
    }

    #[test]
    fn overlap_matches_split_enumeration() {
        let words = Alphabet::ab().words_up_to(4);
        for x in words.iter().filter(|x| !x.is_empty()) {
            for y in words.iter().filter(|y| !y.is_empty()) {
                assert_eq!(overlaps(x, y).unwrap(), overlaps_brute(x, y), "{x:?} {y:?}");
                assert_eq!(overlaps(x, y).unwrap(), overlaps(&y.reversed(), &x.reversed()).unwrap());
            }
        }
    }

    #[test]
    fn affix_examples() {
        let ab = Alphabet::ab();
        let sets = affix_sets(&FiniteLanguage::parse(&ab, &["ab"]).unwrap());
        assert_eq!(sets.prefixes.rendered(), ["eps", "a", "ab"]);
        assert_eq!(sets.suffixes.rendered(), ["eps", "b", "ab"]);
        assert_eq!(sets.factors.rendered(), ["eps", "a", "b", "ab"]);

        let eps = affix_sets(&FiniteLanguage::parse(&ab, &["eps"]).unwrap());
        assert_eq!(eps.prefixes.rendered(), ["eps"]);
        assert_eq!(eps.suffixes.rendered(), ["eps"]);
        assert_eq!(eps.factors.rendered(), ["eps"]);

        let f = affix_sets(&FiniteLanguage::parse(&ab, &["aa", "b"]).unwrap()).factors;
        assert_eq!(f.rendered(), ["eps", "a", "b", "aa"]);
    }

    #[test]
    fn affix_closure_laws() {
        let ab = Alphabet::ab();
        let x = FiniteLanguage::parse(&ab, &["abba", "bab", "a"]).unwrap();
        let sets = affix_sets(&x);
        assert!(x.is_subset(&sets.prefixes) && sets.prefixes.is_subset(&sets.factors));
        assert!(sets.prefixes.len() <= 1 + x.total_len());
        assert_eq!(affix_sets(&sets.prefixes).factors, sets.factors);
        assert_eq!(affix_sets(&sets.suffixes).factors, sets.factors);
    }

    #[test]
    fn alphabet_validation() {
        assert!(Alphabet::new("".chars()).is_err());
        assert!(Alphabet::new("aa".chars()).is_err());
        assert!(Alphabet::new("a|".chars()).is_err());
        assert_eq!("ab".parse::<Alphabet>().unwrap(), Alphabet::ab());
        assert_eq!(Alphabet::ab().parse_word("ac"), Err(Error::ForeignLetter('c')));
    }

    #[test]
    fn canonical_order_is_length_then_lex() {
        let mut v = vec![w("b"), w("aa"), w("a"), w("ab"), w("eps")];
        v.sort();
        assert_eq!(v, [w("eps"), w("a"), w("b"), w("aa"), w("ab")]);
        assert_eq!(Alphabet::ab().words_up_to(2).len(), 7);
    }
}
