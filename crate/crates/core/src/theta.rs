//! (Anti-)automorphisms of `A*` determined by a permutation of the alphabet.
//!
//! A morphism maps `w = w1⋯wn` to `π(w1)⋯π(wn)`; an antimorphism maps it to
//! `π(wn)⋯π(w1)`. Odd powers of an antimorphism are antimorphisms, so over
//! two or more letters its order is the least even multiple of the
//! permutation order. Negative powers are taken modulo the order.

use std::fmt;

use crate::automata::RegularLanguage;
use crate::error::{Error, Result};
use crate::words::{Alphabet, FiniteLanguage, Letter, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Morphism,
    Antimorphism,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Morphism => "morphism",
            Kind::Antimorphism => "antimorphism",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ThetaMap {
    alphabet: Alphabet,
    perm: Vec<Letter>,
    kind: Kind,
}

impl ThetaMap {
    pub fn new(alphabet: Alphabet, perm: Vec<Letter>, kind: Kind) -> Result<Self> {
        let k = alphabet.len();
        let mut hit = vec![false; k];
        for &b in &perm {
            if b as usize >= k || std::mem::replace(&mut hit[b as usize], true) {
                return Err(Error::BadParams("letter map is not a bijection".into()));
            }
        }
        if perm.len() != k {
            return Err(Error::BadParams("letter map must cover the alphabet".into()));
        }
        Ok(Self { alphabet, perm, kind })
    }

    /// Builds a map from `(from, to)` character pairs; unlisted letters are
    /// fixed.
    pub fn from_pairs(alphabet: &Alphabet, pairs: &[(char, char)], kind: Kind) -> Result<Self> {
        let mut perm: Vec<Letter> = (0..alphabet.len() as Letter).collect();
        let mut set = vec![false; alphabet.len()];
        for &(from, to) in pairs {
            let a = alphabet.letter(from)?;
            if std::mem::replace(&mut set[a as usize], true) {
                return Err(Error::BadParams(format!("letter '{from}' mapped twice")));
            }
            perm[a as usize] = alphabet.letter(to)?;
        }
        Self::new(alphabet.clone(), perm, kind)
    }

    pub fn identity(alphabet: &Alphabet) -> Self {
        Self { alphabet: alphabet.clone(), perm: (0..alphabet.len() as Letter).collect(), kind: Kind::Morphism }
    }

    /// Mirror image: identity letters, reversed order.
    pub fn mirror(alphabet: &Alphabet) -> Self {
        Self { kind: Kind::Antimorphism, ..Self::identity(alphabet) }
    }

    /// Exchanges the first two letters, fixing the rest.
    pub fn swap(alphabet: &Alphabet, kind: Kind) -> Self {
        let mut perm: Vec<Letter> = (0..alphabet.len() as Letter).collect();
        if perm.len() >= 2 {
            perm.swap(0, 1);
        }
        Self { alphabet: alphabet.clone(), perm, kind }
    }

    /// Cyclic shift `a0 → a1 → … → a(n-1) → a0`.
    pub fn cycle(alphabet: &Alphabet, kind: Kind) -> Self {
        let n = alphabet.len() as Letter;
        Self { alphabet: alphabet.clone(), perm: (0..n).map(|a| (a + 1) % n).collect(), kind }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn perm(&self) -> &[Letter] {
        &self.perm
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    /// Over a one-letter alphabet reversal is trivial, so both kinds act as
    /// morphisms.
    pub fn effective_kind(&self) -> Kind {
        if self.alphabet.len() == 1 {
            Kind::Morphism
        } else {
            self.kind
        }
    }

    pub fn apply_letter(&self, a: Letter) -> Letter {
        self.perm[a as usize]
    }

    pub fn apply_word(&self, w: &Word) -> Result<Word> {
        if !self.alphabet.contains_word(w) {
            return Err(Error::BadParams("word uses a letter outside the alphabet".into()));
        }
        Ok(self.map_word(w))
    }

    fn map_word(&self, w: &Word) -> Word {
        let image = w.letters().iter().map(|&a| self.perm[a as usize]);
        match self.effective_kind() {
            Kind::Morphism => Word::from(image.collect::<Vec<_>>()),
            Kind::Antimorphism => Word::from(image.rev().collect::<Vec<_>>()),
        }
    }

    fn permutation_order(&self) -> usize {
        let mut seen = vec![false; self.perm.len()];
        let mut order = 1;
        for start in 0..self.perm.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut a = start;
            while !seen[a] {
                seen[a] = true;
                a = self.perm[a] as usize;
                len += 1;
            }
            order = lcm(order, len);
        }
        order
    }

    /// Least `k ≥ 1` with `θ^k = id`.
    pub fn order(&self) -> usize {
        let p = self.permutation_order();
        match self.effective_kind() {
            Kind::Morphism => p,
            Kind::Antimorphism => lcm(p, 2),
        }
    }

    /// `θ^i`, for any integer `i`.
    pub fn power(&self, i: i64) -> ThetaMap {
        let k = self.order() as i64;
        let e = i.rem_euclid(k) as usize;
        let mut perm: Vec<Letter> = (0..self.perm.len() as Letter).collect();
        for _ in 0..e {
            perm = perm.iter().map(|&a| self.perm[a as usize]).collect();
        }
        let kind =
            if self.effective_kind() == Kind::Antimorphism && e % 2 == 1 { Kind::Antimorphism } else { Kind::Morphism };
        ThetaMap { alphabet: self.alphabet.clone(), perm, kind }
    }

    pub fn inverse(&self) -> ThetaMap {
        self.power(-1)
    }

    pub fn is_identity(&self) -> bool {
        self.order() == 1
    }

    /// `{ θ^i(w) : 0 ≤ i < order }`.
    pub fn orbit(&self, w: &Word) -> Result<FiniteLanguage> {
        let mut out = FiniteLanguage::empty(self.alphabet.clone());
        let mut cur = self.apply_word(w)?;
        out.insert(w.clone());
        for _ in 1..self.order() {
            out.insert(cur.clone());
            cur = self.map_word(&cur);
        }
        Ok(out)
    }

    /// `θ(X)` for a finite set.
    pub fn apply_finite(&self, x: &FiniteLanguage) -> Result<FiniteLanguage> {
        self.check_alphabet(x.alphabet())?;
        FiniteLanguage::new(self.alphabet.clone(), x.iter().map(|w| self.map_word(w)))
    }

    /// `⋃_i θ^i(X)` for a finite set.
    pub fn orbit_union(&self, x: &FiniteLanguage) -> Result<FiniteLanguage> {
        self.check_alphabet(x.alphabet())?;
        let mut out = FiniteLanguage::empty(self.alphabet.clone());
        for w in x.iter() {
            for v in self.orbit(w)?.iter() {
                out.insert(v.clone());
            }
        }
        Ok(out)
    }

    /// Image of a regular language: relabeling, followed by reversal for
    /// antimorphisms.
    pub fn apply_regular(&self, l: &RegularLanguage) -> Result<RegularLanguage> {
        self.check_alphabet(l.alphabet())?;
        let relabeled = l.relabel(&self.perm)?;
        match self.effective_kind() {
            Kind::Morphism => Ok(relabeled),
            Kind::Antimorphism => relabeled.reverse(),
        }
    }

    /// `⋃_{0≤i<k} θ^i(L)`.
    pub fn orbit_union_regular(&self, l: &RegularLanguage) -> Result<RegularLanguage> {
        let mut acc = l.clone();
        let mut cur = l.clone();
        for _ in 1..self.order() {
            cur = self.apply_regular(&cur)?;
            acc = acc.union(&cur)?;
        }
        Ok(acc)
    }

    fn check_alphabet(&self, alphabet: &Alphabet) -> Result<()> {
        if *alphabet == self.alphabet {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch)
        }
    }
}

impl fmt::Display for ThetaMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ", self.kind)?;
        let pairs: Vec<String> = (0..self.perm.len() as Letter)
            .map(|a| format!("{}->{}", self.alphabet.char_of(a), self.alphabet.char_of(self.perm[a as usize])))
            .collect();
        write!(f, "{}", pairs.join(","))
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}
