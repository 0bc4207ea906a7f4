//! Embedding a non-complete θ-invariant regular code into a complete one.
//!
//! Starting from a word `y ∉ F(X*)` whose first letter `a` differs from its
//! last letter `ā`:
//!
//! ```text
//! z = ā^|y| y a^|y|      Z = { θ^i(z) }
//! W = ZA* ∩ A*Z          T = W ∖ (W∪X)(W∪X)⁺
//! ```
//!
//! and `X ∪ T` is a complete θ-invariant code. Every run re-checks the
//! result and the lemmas behind it on the automata it built.

use crate::analysis::{affix_class, is_code_regular, is_complete, is_theta_invariant};
use crate::automata::RegularLanguage;
use crate::error::{Error, Result};
use crate::theta::ThetaMap;
use crate::words::{is_overlapping_free, Alphabet, FiniteLanguage, Letter, Word};

/// Postconditions of one completion run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletionChecks {
    pub code: bool,
    pub theta_invariant: bool,
    pub complete: bool,
    pub contains_x: bool,
    /// `W ⊆ (X∪T)⁺`.
    pub decomposable: bool,
}

impl CompletionChecks {
    pub fn all_pass(&self) -> bool {
        self.code && self.theta_invariant && self.complete && self.contains_x && self.decomposable
    }

    pub fn lines(&self) -> Vec<(&'static str, bool)> {
        vec![
            ("code", self.code),
            ("theta_invariant", self.theta_invariant),
            ("complete", self.complete),
            ("contains_x", self.contains_x),
            ("decomposable", self.decomposable),
        ]
    }
}

#[derive(Clone, Debug)]
pub struct CompletionTrace {
    /// The witness before normalization.
    pub y_initial: Word,
    pub y: Word,
    pub z: Word,
    pub z_set: FiniteLanguage,
    pub w: RegularLanguage,
    pub t: RegularLanguage,
    /// `X ∪ T`.
    pub completed: RegularLanguage,
    pub checks: CompletionChecks,
}

/// Shortest (length-lex) word outside `F(X*)`.
pub fn find_witness(x: &RegularLanguage) -> Result<Word> {
    if x.alphabet().len() < 2 {
        return Err(Error::UnaryAlphabet);
    }
    is_complete(x)?.1.ok_or(Error::AlreadyComplete)
}

/// Accepts a caller-supplied witness if it is outside `F(X*)`.
pub fn validate_witness(x: &RegularLanguage, y: &Word) -> Result<()> {
    if !x.alphabet().contains_word(y) {
        return Err(Error::BadParams("witness uses a letter outside the alphabet".into()));
    }
    if x.star()?.factor_closure()?.contains(y) {
        return Err(Error::InvalidWitness(x.alphabet().render(y)));
    }
    Ok(())
}

/// Makes the end letters distinct: `y ↦ a·y·ā` when `y` starts and ends
/// with the same letter (or is a single letter).
pub fn normalize_witness(alphabet: &Alphabet, y: &Word) -> Result<Word> {
    let (first, last) = match (y.first(), y.last()) {
        (Some(f), Some(l)) => (f, l),
        _ => return Err(Error::EmptyWord),
    };
    if first != last {
        return Ok(y.clone());
    }
    let letters = 0..alphabet.len() as Letter;
    let a = letters.clone().find(|&c| c != last).ok_or(Error::UnaryAlphabet)?;
    let a_bar = letters.clone().find(|&c| c != a).ok_or(Error::UnaryAlphabet)?;
    Ok(Word::power(a, 1).concat(y).concat(&Word::power(a_bar, 1)))
}

/// Prepends the first letter until the word is overlapping-free. Once the
/// leading run is longer than every other run of that letter no border can
/// exist, so this stops within `|y|` steps.
pub fn overlap_free_extension(y: &Word) -> Result<Word> {
    let first = y.first().ok_or(Error::EmptyWord)?;
    let mut w = y.clone();
    for _ in 0..=y.len() {
        if is_overlapping_free(&w)? {
            return Ok(w);
        }
        w = Word::power(first, 1).concat(&w);
    }
    Err(Error::Verification("overlap-free extension did not stop".into()))
}

/// `z = last(y)^|y| · y · first(y)^|y|`.
pub fn build_z(y: &Word) -> Result<Word> {
    match (y.first(), y.last()) {
        (Some(f), Some(l)) if f != l => {
            let n = y.len();
            Ok(Word::power(l, n).concat(y).concat(&Word::power(f, n)))
        }
        _ => Err(Error::EqualEndLetters),
    }
}

/// Orbit of `z` under θ. Each member must have the block shape
/// `c^n · d⋯c · d^n` with `c ≠ d` and `3n = |z|`.
pub fn orbit_z(z: &Word, t: &ThetaMap) -> Result<FiniteLanguage> {
    let orbit = t.orbit(z)?;
    for w in orbit.iter() {
        if !has_block_shape(w) {
            return Err(Error::Verification(format!("{} lacks the end-block shape", t.alphabet().render(w))));
        }
    }
    Ok(orbit)
}

fn has_block_shape(w: &Word) -> bool {
    let s = w.letters();
    if !s.len().is_multiple_of(3) || s.len() < 6 {
        return false;
    }
    let n = s.len() / 3;
    let (c, d) = (s[0], s[3 * n - 1]);
    c != d && s[..n].iter().all(|&x| x == c) && s[2 * n..].iter().all(|&x| x == d) && s[n] == d && s[2 * n - 1] == c
}

/// `W = ZA* ∩ A*Z`.
pub fn build_w(z_set: &FiniteLanguage) -> Result<RegularLanguage> {
    let z = RegularLanguage::from_finite(z_set);
    let all = RegularLanguage::universal(z_set.alphabet());
    z.concat(&all)?.intersection(&all.concat(&z)?)
}

/// `T = W ∖ (W∪X)(W∪X)⁺`.
pub fn build_t(w: &RegularLanguage, x: &RegularLanguage) -> Result<RegularLanguage> {
    let wx = w.union(x)?;
    w.difference(&wx.concat(&wx.plus()?)?)
}

/// Runs the construction and records its postconditions without failing
/// on them.
pub fn build_completion(
    x: &RegularLanguage,
    t: &ThetaMap,
    witness: Option<&Word>,
    overlap_free: bool,
) -> Result<CompletionTrace> {
    if x.alphabet() != t.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    if x.alphabet().len() < 2 {
        return Err(Error::UnaryAlphabet);
    }
    if !is_code_regular(x, false)?.is_code {
        return Err(Error::NotACode);
    }
    if !is_theta_invariant(x, t)? {
        return Err(Error::NotThetaInvariant);
    }
    let y_initial = match witness {
        Some(y) => {
            if is_complete(x)?.0 {
                return Err(Error::AlreadyComplete);
            }
            validate_witness(x, y)?;
            y.clone()
        }
        None => find_witness(x)?,
    };
    let mut y = normalize_witness(x.alphabet(), &y_initial)?;
    if overlap_free {
        y = overlap_free_extension(&y)?;
    }
    let z = build_z(&y)?;
    let z_set = orbit_z(&z, t)?;
    let w = build_w(&z_set)?;
    let tt = build_t(&w, x)?;
    let completed = x.union(&tt)?;
    let checks = CompletionChecks {
        code: is_code_regular(&completed, false)?.is_code,
        theta_invariant: is_theta_invariant(&completed, t)?,
        complete: is_complete(&completed)?.0,
        contains_x: x.is_subset(&completed)?,
        decomposable: w.is_subset(&completed.plus()?)?,
    };
    Ok(CompletionTrace { y_initial, y, z, z_set, w, t: tt, completed, checks })
}

/// Embeds `X` into the complete θ-invariant code `X ∪ T`; fails if any
/// postcondition does not hold.
pub fn complete_code(
    x: &RegularLanguage,
    t: &ThetaMap,
    witness: Option<&Word>,
    overlap_free: bool,
) -> Result<CompletionTrace> {
    let trace = build_completion(x, t, witness, overlap_free)?;
    if let Some((name, _)) = trace.checks.lines().into_iter().find(|(_, ok)| !ok) {
        return Err(Error::Verification(format!("completion check '{name}' failed")));
    }
    Ok(trace)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaReport {
    /// Every overlap of two members of `Z` is a block `b^k` with
    /// `k ≤ |y|`, leaving `|u| ≥ 2|y|`.
    pub overlap_shape: bool,
    /// `A⁺ZA⁺ ∩ ZX*Z = ∅`.
    pub internal_factor: bool,
    /// `X*Z` is a prefix code.
    pub xstar_z_prefix: bool,
}

impl LemmaReport {
    pub fn all_pass(&self) -> bool {
        self.overlap_shape && self.internal_factor && self.xstar_z_prefix
    }

    pub fn lines(&self) -> Vec<(&'static str, bool)> {
        vec![
            ("overlap_shape", self.overlap_shape),
            ("internal_factor", self.internal_factor),
            ("xstar_z_prefix", self.xstar_z_prefix),
        ]
    }
}

pub fn verify_lemmas(trace: &CompletionTrace, x: &RegularLanguage) -> Result<LemmaReport> {
    let alphabet = x.alphabet();
    let n = trace.y.len();
    let mut overlap_shape = true;
    for z1 in trace.z_set.iter() {
        for z2 in trace.z_set.iter() {
            if z1.len() != z2.len() {
                overlap_shape = false;
                continue;
            }
            for u in 1..z1.len() {
                let tail = &z1.letters()[u..];
                if !z2.letters().starts_with(tail) {
                    continue;
                }
                let single = tail.iter().all(|&c| c == tail[0]);
                if !(single && tail.len() <= n && u >= 2 * n) {
                    overlap_shape = false;
                }
            }
        }
    }
    let z = RegularLanguage::from_finite(&trace.z_set);
    let plus = RegularLanguage::nonempty_words(alphabet);
    let inner = RegularLanguage::concat_all(&[&plus, &z, &plus])?;
    let xstar = x.star()?;
    let zxz = RegularLanguage::concat_all(&[&z, &xstar, &z])?;
    let internal_factor = inner.intersection(&zxz)?.is_empty();
    let xstar_z_prefix = affix_class(&xstar.concat(&z)?)?.prefix;
    Ok(LemmaReport { overlap_shape, internal_factor, xstar_z_prefix })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theta::Kind;

    fn ab() -> Alphabet {
        Alphabet::ab()
    }

    fn w(s: &str) -> Word {
        ab().parse_word(s).unwrap()
    }

    fn reg(words: &[&str]) -> RegularLanguage {
        RegularLanguage::from_finite(&FiniteLanguage::parse(&ab(), words).unwrap())
    }

    /// Bounded search for a factorization of `w` into at least two pieces
    /// of `l`.
    fn splits_in_two_or_more(word: &Word, l: &RegularLanguage) -> bool {
        let s = word.letters();
        let n = s.len();
        // reach[i][c]: prefix of length i is a concatenation of c pieces (c capped at 2).
        let mut reach = vec![[false; 3]; n + 1];
        reach[0][0] = true;
        for i in 0..n {
            for c in 0..3 {
                if !reach[i][c] {
                    continue;
                }
                for j in i + 1..=n {
                    if l.contains(&Word::from(s[i..j].to_vec())) {
                        reach[j][(c + 1).min(2)] = true;
                    }
                }
            }
        }
        reach[n][2]
    }

    #[test]
    fn witness_examples() {
        assert_eq!(find_witness(&reg(&["aa", "b"])).unwrap(), w("bab"));
        let x8 = reg(&["aaaa", "aabb", "aabbbb", "aaaabb", "ba", "baaaa", "bbbba", "bbbb"]);
        assert!(validate_witness(&x8, &w("bbaaaba")).is_ok());
        assert!(validate_witness(&x8, &w("baaaba")).is_ok());
        assert!(matches!(validate_witness(&x8, &w("aaaa")), Err(Error::InvalidWitness(_))));
        assert_eq!(find_witness(&reg(&["aa", "ab", "ba", "bb"])), Err(Error::AlreadyComplete));
        let unary: Alphabet = "a".parse().unwrap();
        let x = RegularLanguage::from_finite(&FiniteLanguage::parse(&unary, &["aa"]).unwrap());
        assert_eq!(find_witness(&x), Err(Error::UnaryAlphabet));
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize_witness(&ab(), &w("bbaaaba")).unwrap(), w("bbaaaba"));
        assert_eq!(normalize_witness(&ab(), &w("bab")).unwrap(), w("ababb"));
        assert_eq!(normalize_witness(&ab(), &w("ab")).unwrap(), w("ab"));
        assert_eq!(normalize_witness(&ab(), &w("a")).unwrap(), w("baa"));
        // The normalized word still avoids F({aa,b}*).
        let f = reg(&["aa", "b"]).star().unwrap().factor_closure().unwrap();
        assert!(!f.contains(&w("ababb")));
    }

    #[test]
    fn overlap_free_extension_examples() {
        assert_eq!(overlap_free_extension(&w("baaaba")).unwrap(), w("bbaaaba"));
        assert_eq!(overlap_free_extension(&w("ab")).unwrap(), w("ab"));
        assert_eq!(overlap_free_extension(&w("abab")).unwrap(), w("aabab"));
        for y in ab().words_up_to(7) {
            if y.len() >= 2 && y.first() != y.last() {
                let e = overlap_free_extension(&y).unwrap();
                assert!(is_overlapping_free(&e).unwrap() && e.ends_with(&y) && e.len() <= 2 * y.len());
            }
        }
    }

    #[test]
    fn z_examples() {
        assert_eq!(build_z(&w("bbaaaba")).unwrap(), w("aaaaaaabbaaababbbbbbb"));
        assert_eq!(build_z(&w("ab")).unwrap(), w("bbabaa"));
        assert_eq!(build_z(&w("ba")).unwrap(), w("aababb"));
        assert_eq!(build_z(&w("aba")), Err(Error::EqualEndLetters));
        assert_eq!(build_z(&w("a")), Err(Error::EqualEndLetters));
    }

    #[test]
    fn orbit_examples() {
        let swap = ThetaMap::swap(&ab(), Kind::Antimorphism);
        let z = orbit_z(&w("aaaaaaabbaaababbbbbbb"), &swap).unwrap();
        assert_eq!(z.rendered(), ["aaaaaaababbbaabbbbbbb", "aaaaaaabbaaababbbbbbb"]);
        assert_eq!(orbit_z(&w("bbabaa"), &ThetaMap::identity(&ab())).unwrap().len(), 1);
        let z = orbit_z(&w("bbabaa"), &ThetaMap::mirror(&ab())).unwrap();
        assert_eq!(z.rendered(), ["aababb", "bbabaa"]);
        assert!(orbit_z(&w("aaaaaa"), &swap).is_err());
    }

    #[test]
    fn w_and_t_examples() {
        let x = reg(&["aa", "b"]);
        let y = normalize_witness(&ab(), &find_witness(&x).unwrap()).unwrap();
        let z = build_z(&y).unwrap();
        let z_set = orbit_z(&z, &ThetaMap::mirror(&ab())).unwrap();
        let wl = build_w(&z_set).unwrap();
        let t = build_t(&wl, &x).unwrap();
        for zi in z_set.iter() {
            assert!(wl.contains(zi));
            assert!(t.contains(zi));
            assert!(!splits_in_two_or_more(zi, &wl.union(&x).unwrap()));
        }
        let (z1, z2) = (z_set.iter().next().unwrap(), z_set.iter().last().unwrap());
        assert!(wl.contains(&Word::concat_all([z1, &w("abba"), z2])));
        for short in ab().words_up_to(z.len() - 1) {
            assert!(!wl.contains(&short));
        }
        let zz = z.concat(&z);
        assert!(wl.contains(&zz) && !t.contains(&zz));
        let zxz = Word::concat_all([&z, &w("aa"), &z]);
        assert!(wl.contains(&zxz) && !t.contains(&zxz));
        assert!(splits_in_two_or_more(&zxz, &wl.union(&x).unwrap()));
    }

    #[test]
    fn mirror_completion() {
        let x = reg(&["aa", "b"]);
        let mirror = ThetaMap::mirror(&ab());
        let trace = complete_code(&x, &mirror, None, false).unwrap();
        assert!(trace.checks.all_pass());
        assert_eq!(trace.y_initial, w("bab"));
        assert_eq!(trace.z.len(), 3 * trace.y.len());
        assert!(verify_lemmas(&trace, &x).unwrap().all_pass());
        let again = complete_code(&x, &mirror, None, false).unwrap();
        assert_eq!(again.completed, trace.completed);
    }

    #[test]
    fn corrupted_z_fails_lemmas() {
        let x = reg(&["aa", "b"]);
        let mut trace = complete_code(&x, &ThetaMap::mirror(&ab()), None, false).unwrap();
        let n = trace.y.len();
        trace.z_set = FiniteLanguage::new(ab(), [Word::power(0, 3 * n)]).unwrap();
        let report = verify_lemmas(&trace, &x).unwrap();
        assert!(!report.all_pass());
        assert!(!report.overlap_shape);
    }

    #[test]
    fn precondition_errors() {
        let swap = ThetaMap::swap(&ab(), Kind::Antimorphism);
        let a2 = reg(&["aa", "ab", "ba", "bb"]);
        assert_eq!(complete_code(&a2, &swap, None, false).err(), Some(Error::AlreadyComplete));
        assert_eq!(
            complete_code(&reg(&["a", "ab", "ba"]), &ThetaMap::mirror(&ab()), None, false).err(),
            Some(Error::NotACode)
        );
        assert_eq!(
            complete_code(&reg(&["ab"]), &ThetaMap::mirror(&ab()), None, false).err(),
            Some(Error::NotThetaInvariant)
        );
    }
}
