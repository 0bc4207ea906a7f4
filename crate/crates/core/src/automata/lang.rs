use std::collections::VecDeque;
use std::fmt;

use super::dfa::Dfa;
use super::nfa::Nfa;
use super::regex::RegexAst;
use super::state_cap;
use crate::error::{Error, Result};
use crate::words::{Alphabet, FiniteLanguage, Letter, Word};

/// A regular language, held as its minimal DFA in canonical numbering.
///
/// Derived equality and hashing therefore coincide with language equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RegularLanguage {
    dfa: Dfa,
}

impl fmt::Debug for RegularLanguage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RegularLanguage({} states)", self.state_count())
    }
}

impl RegularLanguage {
    pub fn from_dfa(dfa: &Dfa) -> Self {
        Self { dfa: dfa.minimize() }
    }

    pub fn from_nfa(nfa: &Nfa) -> Result<Self> {
        nfa.determinize().map(|d| Self::from_dfa(&d))
    }

    pub fn from_finite(lang: &FiniteLanguage) -> Self {
        // The prefix tree is already deterministic, so the state cap does
        // not apply here.
        let alphabet = lang.alphabet();
        let mut table: Vec<Vec<Option<u32>>> = vec![vec![None; alphabet.len()]];
        let mut finals = vec![false];
        for w in lang.iter() {
            let mut q = 0;
            for &a in w.letters() {
                q = match table[q][a as usize] {
                    Some(next) => next as usize,
                    None => {
                        table.push(vec![None; alphabet.len()]);
                        finals.push(false);
                        let next = table.len() - 1;
                        table[q][a as usize] = Some(next as u32);
                        next
                    }
                };
            }
            finals[q] = true;
        }
        Self::from_dfa(&Dfa::from_table(alphabet.clone(), &table, &finals, 0).expect("well-formed trie"))
    }

    pub fn from_regex(ast: &RegexAst, alphabet: &Alphabet) -> Result<Self> {
        Self::from_nfa(&ast.to_nfa(alphabet))
    }

    pub fn parse_regex(text: &str, alphabet: &Alphabet) -> Result<Self> {
        Self::from_regex(&RegexAst::parse(text, alphabet)?, alphabet)
    }

    pub fn empty(alphabet: &Alphabet) -> Self {
        let k = alphabet.len();
        Self { dfa: Dfa::from_parts(alphabet.clone(), vec![0; k], vec![false], 0) }
    }

    /// `A*`.
    pub fn universal(alphabet: &Alphabet) -> Self {
        Self { dfa: Dfa::from_parts(alphabet.clone(), vec![0; alphabet.len()], vec![true], 0) }
    }

    /// `A^+`.
    pub fn nonempty_words(alphabet: &Alphabet) -> Self {
        Self::universal(alphabet).difference(&Self::epsilon(alphabet)).expect("same alphabet")
    }

    pub fn epsilon(alphabet: &Alphabet) -> Self {
        Self::word(alphabet, &Word::empty())
    }

    pub fn word(alphabet: &Alphabet, w: &Word) -> Self {
        let lang = FiniteLanguage::new(alphabet.clone(), [w.clone()]).expect("word over alphabet");
        Self::from_finite(&lang)
    }

    /// The alphabet `A` as a language of one-letter words.
    pub fn letters(alphabet: &Alphabet) -> Self {
        let words = (0..alphabet.len() as Letter).map(|a| Word::from(vec![a]));
        Self::from_finite(&FiniteLanguage::new(alphabet.clone(), words).expect("letters"))
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.dfa.alphabet()
    }

    pub fn dfa(&self) -> &Dfa {
        &self.dfa
    }

    /// States of the minimal complete DFA, sink included.
    pub fn state_count(&self) -> usize {
        self.dfa.state_count()
    }

    fn check_alphabet(&self, other: &Self) -> Result<()> {
        if self.alphabet() == other.alphabet() {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch)
        }
    }

    // ---- boolean combinations ----

    pub fn union(&self, other: &Self) -> Result<Self> {
        Ok(Self::from_dfa(&self.dfa.product(&other.dfa, |a, b| a || b)?))
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        Ok(Self::from_dfa(&self.dfa.product(&other.dfa, |a, b| a && b)?))
    }

    pub fn difference(&self, other: &Self) -> Result<Self> {
        Ok(Self::from_dfa(&self.dfa.product(&other.dfa, |a, b| a && !b)?))
    }

    pub fn complement(&self) -> Self {
        Self::from_dfa(&self.dfa.complemented())
    }

    // ---- rational operations ----

    pub fn concat(&self, other: &Self) -> Result<Self> {
        self.check_alphabet(other)?;
        let left = Nfa::from_dfa(&self.dfa);
        let right = Nfa::from_dfa(&other.dfa);
        if left.initials.is_empty() || right.initials.is_empty() {
            return Ok(Self::empty(self.alphabet()));
        }
        let mut nfa = left.clone();
        let offset = nfa.state_count() as u32;
        for q in 0..right.state_count() {
            nfa.add_state(right.finals[q]);
        }
        for q in 0..right.state_count() {
            for &(a, r) in &right.trans[q] {
                nfa.add_transition(q as u32 + offset, a, r + offset);
            }
        }
        let right_start = right.initials[0] + offset;
        for q in 0..left.state_count() {
            if left.finals[q] {
                nfa.set_final(q as u32, false);
                nfa.add_epsilon(q as u32, right_start);
            }
        }
        Self::from_nfa(&nfa)
    }

    /// Concatenation of several languages, left to right.
    pub fn concat_all(parts: &[&Self]) -> Result<Self> {
        let (first, rest) = parts.split_first().ok_or(Error::EmptyLanguage)?;
        rest.iter().try_fold((*first).clone(), |acc, l| acc.concat(l))
    }

    pub fn star(&self) -> Result<Self> {
        let mut nfa = Nfa::from_dfa(&self.dfa);
        let hub = nfa.add_state(true);
        if let Some(&s) = nfa.initials.first() {
            nfa.add_epsilon(hub, s);
        }
        for q in 0..nfa.state_count() as u32 - 1 {
            if nfa.finals[q as usize] {
                nfa.add_epsilon(q, hub);
            }
        }
        nfa.initials = vec![hub];
        Self::from_nfa(&nfa)
    }

    pub fn plus(&self) -> Result<Self> {
        self.concat(&self.star()?)
    }

    pub fn reverse(&self) -> Result<Self> {
        Self::from_nfa(&Nfa::from_dfa(&self.dfa).reversed())
    }

    /// Image under the letter permutation `perm` (letter `a` becomes
    /// `perm[a]`).
    pub fn relabel(&self, perm: &[Letter]) -> Result<Self> {
        let k = self.alphabet().len();
        let mut seen = vec![false; k];
        if perm.len() != k || perm.iter().any(|&b| (b as usize) >= k || std::mem::replace(&mut seen[b as usize], true))
        {
            return Err(Error::BadParams("relabeling is not a permutation of the alphabet".into()));
        }
        Ok(Self::from_dfa(&self.dfa.relabeled(perm)))
    }

    /// Language recognized from the useful states of `self` with the given
    /// initial/final selections.
    fn reinitialized(&self, all_initial: bool, all_final: bool) -> Result<Self> {
        let mut nfa = Nfa::from_dfa(&self.dfa);
        if nfa.initials.is_empty() {
            return Ok(Self::empty(self.alphabet()));
        }
        let n = nfa.state_count() as u32;
        if all_initial {
            nfa.initials = (0..n).collect();
        }
        if all_final {
            for q in 0..n {
                nfa.set_final(q, true);
            }
        }
        Self::from_nfa(&nfa)
    }

    /// `F(L)`: all factors of words of `L`.
    pub fn factor_closure(&self) -> Result<Self> {
        self.reinitialized(true, true)
    }

    /// `P(L)`.
    pub fn prefix_closure(&self) -> Result<Self> {
        Ok(Self::from_dfa(&self.dfa.with_finals(self.dfa.live_states())))
    }

    /// `S(L)`.
    pub fn suffix_closure(&self) -> Result<Self> {
        self.reinitialized(true, false)
    }

    /// `other⁻¹ self = { w : ∃u ∈ other, uw ∈ self }`.
    pub fn left_quotient_by(&self, other: &Self) -> Result<Self> {
        self.check_alphabet(other)?;
        let (d, q2) = (&self.dfa, &other.dfa);
        let k = self.alphabet().len();
        let n = d.state_count();
        let n2 = q2.state_count();
        if n * n2 > state_cap().saturating_mul(16) {
            return Err(Error::StateCap { cap: state_cap() });
        }
        // Forward search over (state of other, state of self).
        let mut seen = vec![false; n * n2];
        let mut reached = vec![false; n];
        let mut queue = VecDeque::new();
        seen[q2.start() as usize * n + d.start() as usize] = true;
        queue.push_back((q2.start(), d.start()));
        while let Some((p, q)) = queue.pop_front() {
            if q2.is_final(p) {
                reached[q as usize] = true;
            }
            for a in 0..k as Letter {
                let (pp, qq) = (q2.next(p, a), d.next(q, a));
                let idx = pp as usize * n + qq as usize;
                if !seen[idx] {
                    seen[idx] = true;
                    queue.push_back((pp, qq));
                }
            }
        }
        self.with_start_set(&reached)
    }

    /// Language accepted by `self`'s automaton started from any state in the
    /// set.
    fn with_start_set(&self, starts: &[bool]) -> Result<Self> {
        let d = &self.dfa;
        let live = d.live_states();
        let mut nfa = Nfa::new(self.alphabet().clone());
        for q in 0..d.state_count() {
            nfa.add_state(d.is_final(q as u32));
        }
        for q in 0..d.state_count() as u32 {
            if !live[q as usize] {
                continue;
            }
            for a in 0..self.alphabet().len() as Letter {
                let r = d.next(q, a);
                if live[r as usize] {
                    nfa.add_transition(q, a, r);
                }
            }
            if starts[q as usize] {
                nfa.add_initial(q);
            }
        }
        Self::from_nfa(&nfa)
    }

    /// `self other⁻¹ = { w : ∃u ∈ other, wu ∈ self }`.
    pub fn right_quotient_by(&self, other: &Self) -> Result<Self> {
        self.check_alphabet(other)?;
        let (d, o) = (&self.dfa, &other.dfa);
        let k = self.alphabet().len();
        let n = d.state_count();
        let n2 = o.state_count();
        if n * n2 > state_cap().saturating_mul(16) {
            return Err(Error::StateCap { cap: state_cap() });
        }
        let pd = d.predecessors();
        let po = o.predecessors();
        // Backward search from (final, final) pairs.
        let mut good = vec![false; n * n2];
        let mut stack = Vec::new();
        for p in 0..n {
            for q in 0..n2 {
                if d.is_final(p as u32) && o.is_final(q as u32) {
                    good[p * n2 + q] = true;
                    stack.push((p as u32, q as u32));
                }
            }
        }
        while let Some((p, q)) = stack.pop() {
            for a in 0..k {
                for &pp in &pd[a][p as usize] {
                    for &qq in &po[a][q as usize] {
                        let idx = pp as usize * n2 + qq as usize;
                        if !good[idx] {
                            good[idx] = true;
                            stack.push((pp, qq));
                        }
                    }
                }
            }
        }
        let finals = (0..n).map(|p| good[p * n2 + o.start() as usize]).collect();
        Ok(Self::from_dfa(&d.with_finals(finals)))
    }

    // ---- decisions ----

    pub fn is_empty(&self) -> bool {
        !self.dfa.live_states()[self.dfa.start() as usize]
    }

    /// `L = A*`.
    pub fn is_universal(&self) -> bool {
        self.complement().is_empty()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.dfa.accepts(w)
    }

    pub fn contains_epsilon(&self) -> bool {
        self.dfa.is_final(self.dfa.start())
    }

    pub fn is_subset(&self, other: &Self) -> Result<bool> {
        Ok(self.difference(other)?.is_empty())
    }

    /// Finite iff the useful part of the automaton is acyclic.
    pub fn is_finite(&self) -> bool {
        let useful = self.dfa.useful_states();
        let n = self.dfa.state_count();
        let k = self.alphabet().len();
        // 0 = unvisited, 1 = on stack, 2 = done
        let mut color = vec![0u8; n];
        for root in 0..n {
            if !useful[root] || color[root] != 0 {
                continue;
            }
            let mut stack = vec![(root as u32, 0usize)];
            color[root] = 1;
            while let Some(&mut (q, ref mut a)) = stack.last_mut() {
                if *a == k {
                    color[q as usize] = 2;
                    stack.pop();
                    continue;
                }
                let r = self.dfa.next(q, *a as Letter) as usize;
                *a += 1;
                if !useful[r] {
                    continue;
                }
                match color[r] {
                    0 => {
                        color[r] = 1;
                        stack.push((r as u32, 0));
                    }
                    1 => return false,
                    _ => {}
                }
            }
        }
        true
    }

    /// Length-lex least member.
    pub fn shortest_word(&self) -> Option<Word> {
        let d = &self.dfa;
        let n = d.state_count();
        let mut parent: Vec<Option<(u32, Letter)>> = vec![None; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        seen[d.start() as usize] = true;
        queue.push_back(d.start());
        while let Some(q) = queue.pop_front() {
            if d.is_final(q) {
                let mut letters = Vec::new();
                let mut cur = q;
                while let Some((p, a)) = parent[cur as usize] {
                    letters.push(a);
                    cur = p;
                }
                letters.reverse();
                return Some(Word::from(letters));
            }
            for a in 0..self.alphabet().len() as Letter {
                let r = d.next(q, a);
                if !seen[r as usize] {
                    seen[r as usize] = true;
                    parent[r as usize] = Some((q, a));
                    queue.push_back(r);
                }
            }
        }
        None
    }

    /// Up to `limit` least members in length-lex order.
    pub fn sample(&self, limit: usize, max_len: usize) -> Vec<Word> {
        let live = self.dfa.live_states();
        let mut out = Vec::new();
        let mut layer = vec![(self.dfa.start(), Vec::<Letter>::new())];
        for _ in 0..=max_len {
            for (q, w) in &layer {
                if self.dfa.is_final(*q) {
                    out.push(Word::from(w.clone()));
                    if out.len() == limit {
                        return out;
                    }
                }
            }
            let mut next = Vec::new();
            for (q, w) in &layer {
                for a in 0..self.alphabet().len() as Letter {
                    let r = self.dfa.next(*q, a);
                    if live[r as usize] {
                        let mut w2 = w.clone();
                        w2.push(a);
                        next.push((r, w2));
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            layer = next;
        }
        out
    }

    /// All members of length at most `max_len`, in length-lex order.
    pub fn words_up_to(&self, max_len: usize) -> Vec<Word> {
        self.sample(usize::MAX, max_len)
    }

    /// The members as a finite language, when the language is finite.
    pub fn to_finite(&self) -> Option<FiniteLanguage> {
        if !self.is_finite() {
            return None;
        }
        let bound = self.dfa.state_count();
        let words = self.words_up_to(bound);
        Some(FiniteLanguage::new(self.alphabet().clone(), words).expect("same alphabet"))
    }

    pub fn dump(&self) -> String {
        self.dfa.dump()
    }
}

impl From<&FiniteLanguage> for RegularLanguage {
    fn from(lang: &FiniteLanguage) -> Self {
        Self::from_finite(lang)
    }
}

/// Binary operations of [`combine`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinaryOp {
    Union,
    Intersection,
    Difference,
    Concat,
}

pub fn combine(op: BinaryOp, l1: &RegularLanguage, l2: &RegularLanguage) -> Result<RegularLanguage> {
    match op {
        BinaryOp::Union => l1.union(l2),
        BinaryOp::Intersection => l1.intersection(l2),
        BinaryOp::Difference => l1.difference(l2),
        BinaryOp::Concat => l1.concat(l2),
    }
}

/// Unary transformations of [`transform`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Transform {
    Star,
    Plus,
    Complement,
    Reverse,
    Relabel(Vec<Letter>),
    FactorClosure,
    PrefixClosure,
    SuffixClosure,
    LeftQuotientBy(RegularLanguage),
    RightQuotientBy(RegularLanguage),
}

pub fn transform(op: &Transform, l: &RegularLanguage) -> Result<RegularLanguage> {
    match op {
        Transform::Star => l.star(),
        Transform::Plus => l.plus(),
        Transform::Complement => Ok(l.complement()),
        Transform::Reverse => l.reverse(),
        Transform::Relabel(perm) => l.relabel(perm),
        Transform::FactorClosure => l.factor_closure(),
        Transform::PrefixClosure => l.prefix_closure(),
        Transform::SuffixClosure => l.suffix_closure(),
        Transform::LeftQuotientBy(q) => l.left_quotient_by(q),
        Transform::RightQuotientBy(q) => l.right_quotient_by(q),
    }
}

/// Decision queries of [`decide`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Query {
    Empty,
    Universal,
    Equal(RegularLanguage),
    Member(Word),
    Finite,
}

pub fn decide(query: &Query, l: &RegularLanguage) -> bool {
    match query {
        Query::Empty => l.is_empty(),
        Query::Universal => l.is_universal(),
        Query::Equal(other) => l == other,
        Query::Member(w) => l.contains(w),
        Query::Finite => l.is_finite(),
    }
}
