//! Corpus generators and brute-force oracles shared by integration tests.
//! The oracles work on words directly and never touch the automata engine.

#![allow(dead_code)]

use std::collections::HashSet;

use codekit::analysis::sardinas_patterson;
use codekit::{Alphabet, FiniteLanguage, Kind, Letter, ThetaMap, Word};
use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;

pub const X8: [&str; 8] = ["aaaa", "aabb", "aabbbb", "aaaabb", "ba", "baaaa", "bbbba", "bbbb"];

pub fn ab() -> Alphabet {
    Alphabet::ab()
}

pub fn abc() -> Alphabet {
    "abc".parse().unwrap()
}

pub fn fin(alphabet: &Alphabet, words: &[&str]) -> FiniteLanguage {
    FiniteLanguage::parse(alphabet, words).unwrap()
}

pub fn random_alphabet(rng: &mut StdRng) -> Alphabet {
    if rng.gen_bool(0.5) {
        ab()
    } else {
        abc()
    }
}

pub fn random_theta(rng: &mut StdRng, alphabet: &Alphabet) -> ThetaMap {
    let mut perm: Vec<Letter> = (0..alphabet.len() as Letter).collect();
    perm.shuffle(rng);
    let kind = if rng.gen_bool(0.5) { Kind::Morphism } else { Kind::Antimorphism };
    ThetaMap::new(alphabet.clone(), perm, kind).unwrap()
}

pub fn random_word(rng: &mut StdRng, alphabet: &Alphabet, min_len: usize, max_len: usize) -> Word {
    let len = rng.gen_range(min_len..=max_len);
    Word::from((0..len).map(|_| rng.gen_range(0..alphabet.len() as Letter)).collect::<Vec<_>>())
}

/// Orbit union of a few random seeds; `None` if it exceeds `max_words`.
pub fn random_invariant_set(
    rng: &mut StdRng,
    t: &ThetaMap,
    seeds: usize,
    max_len: usize,
    max_words: usize,
) -> Option<FiniteLanguage> {
    let alphabet = t.alphabet();
    let words: Vec<Word> = (0..seeds).map(|_| random_word(rng, alphabet, 1, max_len)).collect();
    let x = t.orbit_union(&FiniteLanguage::new(alphabet.clone(), words).unwrap()).unwrap();
    (x.len() <= max_words).then_some(x)
}

/// θ-closed finite non-codes: at most 6 words of length at most 6.
pub fn defect_corpus(count: usize, seed: u64) -> Vec<(FiniteLanguage, ThetaMap)> {
    let mut rng = rand::SeedableRng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    while out.len() < count {
        let alphabet = random_alphabet(&mut rng);
        let t = random_theta(&mut rng, &alphabet);
        let seeds = rng.gen_range(1..=4);
        let Some(x) = random_invariant_set(&mut rng, &t, seeds, 6, 6) else { continue };
        if sardinas_patterson(&x).unwrap().is_code || !seen.insert(x.rendered()) {
            continue;
        }
        out.push((x, t));
    }
    out
}

/// θ-invariant finite codes with short words, not necessarily incomplete.
pub fn invariant_code_corpus(count: usize, seed: u64, max_len: usize) -> Vec<(FiniteLanguage, ThetaMap)> {
    let mut rng: StdRng = rand::SeedableRng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    while out.len() < count {
        let alphabet = random_alphabet(&mut rng);
        let t = random_theta(&mut rng, &alphabet);
        let seeds = rng.gen_range(1..=3);
        let Some(x) = random_invariant_set(&mut rng, &t, seeds, max_len, 6) else { continue };
        if !sardinas_patterson(&x).unwrap().is_code || !seen.insert((x.rendered(), t.to_string())) {
            continue;
        }
        out.push((x, t));
    }
    out
}

/// All subsets with at most `max_size` of the nonempty words of length at
/// most `max_len`.
pub fn small_subsets(alphabet: &Alphabet, max_len: usize, max_size: usize) -> Vec<FiniteLanguage> {
    let words: Vec<Word> = alphabet.words_up_to(max_len).into_iter().skip(1).collect();
    let mut out = Vec::new();
    let mut pick: Vec<usize> = Vec::new();
    fn rec(
        words: &[Word],
        from: usize,
        pick: &mut Vec<usize>,
        max: usize,
        alphabet: &Alphabet,
        out: &mut Vec<FiniteLanguage>,
    ) {
        if !pick.is_empty() {
            out.push(FiniteLanguage::new(alphabet.clone(), pick.iter().map(|&i| words[i].clone())).unwrap());
        }
        if pick.len() == max {
            return;
        }
        for i in from..words.len() {
            pick.push(i);
            rec(words, i + 1, pick, max, alphabet, out);
            pick.pop();
        }
    }
    rec(&words, 0, &mut pick, max_size, alphabet, &mut out);
    out
}

/// No word is a proper prefix of another.
pub fn is_prefix_brute(x: &FiniteLanguage) -> bool {
    x.iter().all(|u| x.iter().all(|v| u == v || !v.starts_with(u)))
}

pub fn is_suffix_brute(x: &FiniteLanguage) -> bool {
    x.iter().all(|u| x.iter().all(|v| u == v || !v.ends_with(u)))
}

/// Number of factorizations of `w` over `x`, saturating at `cap`.
pub fn factorization_count(x: &FiniteLanguage, w: &[Letter], cap: usize) -> usize {
    let n = w.len();
    let mut ways = vec![0usize; n + 1];
    ways[0] = 1;
    for i in 0..n {
        if ways[i] == 0 {
            continue;
        }
        for u in x.iter() {
            if w[i..].starts_with(u.letters()) {
                ways[i + u.len()] = (ways[i + u.len()] + ways[i]).min(cap);
            }
        }
    }
    ways[n]
}

/// Shortest word of length at most `bound` with two factorizations.
pub fn first_ambiguous_word(x: &FiniteLanguage, bound: usize) -> Option<Word> {
    x.alphabet().words_up_to(bound).into_iter().skip(1).find(|w| factorization_count(x, w.letters(), 2) >= 2)
}

/// Breadth-first scan, in length-lex order, for the first word of length at
/// most `bound` that is not a factor of `X*`. Positions `(i, j)` mean "inside
/// word i after j letters"; a finished word restarts at every word.
pub fn first_non_factor_of_star(x: &FiniteLanguage, bound: usize) -> Option<Word> {
    let words: Vec<&Word> = x.iter().filter(|w| !w.is_empty()).collect();
    let all: Vec<(usize, usize)> =
        words.iter().enumerate().flat_map(|(i, w)| (0..w.len()).map(move |j| (i, j))).collect();
    let k = x.alphabet().len() as Letter;
    type Frontier = Vec<(Vec<Letter>, Vec<(usize, usize)>)>;
    let mut level: Frontier = vec![(Vec::new(), all)];
    for _ in 0..bound {
        let mut next = Vec::new();
        for (prefix, positions) in &level {
            for c in 0..k {
                let mut set: HashSet<(usize, usize)> = HashSet::new();
                for &(i, j) in positions {
                    if words[i].letters()[j] == c {
                        if j + 1 == words[i].len() {
                            set.extend((0..words.len()).map(|i2| (i2, 0)));
                        } else {
                            set.insert((i, j + 1));
                        }
                    }
                }
                let mut w = prefix.clone();
                w.push(c);
                if set.is_empty() {
                    return Some(Word::from(w));
                }
                let mut set: Vec<_> = set.into_iter().collect();
                set.sort_unstable();
                next.push((w, set));
            }
        }
        level = next;
    }
    None
}

pub fn measure_oracle(x: &FiniteLanguage, weights: &[BigRational]) -> BigRational {
    x.iter().map(|w| w.letters().iter().map(|&a| weights[a as usize].clone()).product::<BigRational>()).sum()
}
