use std::collections::{HashMap, VecDeque};
use std::fmt::Write;

use super::state_cap;
use crate::error::{Error, Result};
use crate::words::{Alphabet, Letter, Word};

/// Complete deterministic automaton with a dense transition table.
///
/// Two minimized automata produced by [`Dfa::minimize`] are structurally
/// equal exactly when they accept the same language: states are numbered in
/// breadth-first order from the initial state, letters taken in alphabet
/// order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dfa {
    alphabet: Alphabet,
    trans: Vec<u32>,
    finals: Vec<bool>,
    start: u32,
}

impl Dfa {
    pub(crate) fn from_parts(alphabet: Alphabet, trans: Vec<u32>, finals: Vec<bool>, start: u32) -> Self {
        debug_assert_eq!(trans.len(), finals.len() * alphabet.len());
        debug_assert!(trans.iter().all(|&t| (t as usize) < finals.len()));
        Self { alphabet, trans, finals, start }
    }

    /// Builds a DFA from a successor function, completing missing
    /// transitions with a fresh sink.
    pub fn from_table(alphabet: Alphabet, table: &[Vec<Option<u32>>], finals: &[bool], start: u32) -> Result<Self> {
        let n = finals.len();
        let k = alphabet.len();
        if table.len() != n || table.iter().any(|row| row.len() != k) || start as usize >= n {
            return Err(Error::BadParams("malformed transition table".into()));
        }
        let needs_sink = table.iter().flatten().any(Option::is_none);
        let sink = n as u32;
        let mut trans = Vec::with_capacity((n + 1) * k);
        for row in table {
            for t in row {
                match t {
                    Some(q) if (*q as usize) < n => trans.push(*q),
                    Some(_) => return Err(Error::BadParams("transition to undeclared state".into())),
                    None => trans.push(sink),
                }
            }
        }
        let mut finals = finals.to_vec();
        if needs_sink {
            trans.extend(std::iter::repeat_n(sink, k));
            finals.push(false);
        }
        Ok(Self::from_parts(alphabet, trans, finals, start))
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.finals.len()
    }

    pub fn start(&self) -> u32 {
        self.start
    }

    #[inline]
    pub fn next(&self, q: u32, a: Letter) -> u32 {
        self.trans[q as usize * self.alphabet.len() + a as usize]
    }

    #[inline]
    pub fn is_final(&self, q: u32) -> bool {
        self.finals[q as usize]
    }

    pub fn run_from(&self, q: u32, w: &Word) -> u32 {
        w.letters().iter().fold(q, |q, &a| self.next(q, a))
    }

    pub fn accepts(&self, w: &Word) -> bool {
        self.is_final(self.run_from(self.start, w))
    }

    pub(crate) fn reachable_states(&self) -> Vec<bool> {
        let k = self.alphabet.len();
        let mut seen = vec![false; self.state_count()];
        let mut stack = vec![self.start];
        seen[self.start as usize] = true;
        while let Some(q) = stack.pop() {
            for a in 0..k {
                let r = self.trans[q as usize * k + a];
                if !seen[r as usize] {
                    seen[r as usize] = true;
                    stack.push(r);
                }
            }
        }
        seen
    }

    /// Predecessor lists indexed by `[letter][state]`.
    pub(crate) fn predecessors(&self) -> Vec<Vec<Vec<u32>>> {
        let k = self.alphabet.len();
        let n = self.state_count();
        let mut preds = vec![vec![Vec::new(); n]; k];
        for q in 0..n {
            for (a, pa) in preds.iter_mut().enumerate() {
                pa[self.trans[q * k + a] as usize].push(q as u32);
            }
        }
        preds
    }

    /// States from which some final state is reachable.
    pub(crate) fn live_states(&self) -> Vec<bool> {
        let k = self.alphabet.len();
        let n = self.state_count();
        let mut rev: Vec<Vec<u32>> = vec![Vec::new(); n];
        for q in 0..n {
            for a in 0..k {
                rev[self.trans[q * k + a] as usize].push(q as u32);
            }
        }
        let mut live = self.finals.clone();
        let mut stack: Vec<u32> = (0..n as u32).filter(|&q| live[q as usize]).collect();
        while let Some(q) = stack.pop() {
            for &p in &rev[q as usize] {
                if !live[p as usize] {
                    live[p as usize] = true;
                    stack.push(p);
                }
            }
        }
        live
    }

    /// States both reachable and live.
    pub(crate) fn useful_states(&self) -> Vec<bool> {
        let reach = self.reachable_states();
        let live = self.live_states();
        reach.iter().zip(&live).map(|(&r, &l)| r && l).collect()
    }

    /// Minimal complete DFA in canonical numbering (Moore partition
    /// refinement after removing unreachable states).
    pub fn minimize(&self) -> Dfa {
        let k = self.alphabet.len();
        let reach = self.reachable_states();
        let states: Vec<u32> = (0..self.state_count() as u32).filter(|&q| reach[q as usize]).collect();

        let mut class = vec![u32::MAX; self.state_count()];
        for &q in &states {
            class[q as usize] = u32::from(self.finals[q as usize]);
        }
        let mut count = {
            let has_final = states.iter().any(|&q| self.finals[q as usize]);
            let has_other = states.iter().any(|&q| !self.finals[q as usize]);
            usize::from(has_final) + usize::from(has_other)
        };
        let mut sig_ids: HashMap<Vec<u32>, u32> = HashMap::new();
        let mut sig = Vec::with_capacity(k + 1);
        loop {
            sig_ids.clear();
            let mut next = vec![u32::MAX; self.state_count()];
            for &q in &states {
                sig.clear();
                sig.push(class[q as usize]);
                for a in 0..k {
                    sig.push(class[self.trans[q as usize * k + a] as usize]);
                }
                let fresh = sig_ids.len() as u32;
                let id = *sig_ids.entry(sig.clone()).or_insert(fresh);
                next[q as usize] = id;
            }
            let new_count = sig_ids.len();
            class = next;
            if new_count == count {
                break;
            }
            count = new_count;
        }

        // Canonical renumbering: BFS over classes from the start class.
        let mut repr = vec![u32::MAX; count];
        for &q in &states {
            let c = class[q as usize] as usize;
            if repr[c] == u32::MAX {
                repr[c] = q;
            }
        }
        let mut order = vec![u32::MAX; count];
        let mut queue = VecDeque::new();
        let start_class = class[self.start as usize];
        order[start_class as usize] = 0;
        queue.push_back(start_class);
        let mut trans = Vec::with_capacity(count * k);
        let mut finals = Vec::with_capacity(count);
        let mut next_id = 1u32;
        while let Some(c) = queue.pop_front() {
            let q = repr[c as usize];
            finals.push(self.finals[q as usize]);
            for a in 0..k {
                let d = class[self.trans[q as usize * k + a] as usize];
                if order[d as usize] == u32::MAX {
                    order[d as usize] = next_id;
                    next_id += 1;
                    queue.push_back(d);
                }
                trans.push(order[d as usize]);
            }
        }
        Dfa::from_parts(self.alphabet.clone(), trans, finals, 0)
    }

    /// Synchronous product; the acceptance condition combines the two
    /// component flags.
    pub fn product(&self, other: &Dfa, accept: impl Fn(bool, bool) -> bool) -> Result<Dfa> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let cap = state_cap();
        let k = self.alphabet.len();
        let mut ids: HashMap<(u32, u32), u32> = HashMap::new();
        let mut pairs = vec![(self.start, other.start)];
        ids.insert((self.start, other.start), 0);
        let mut trans = Vec::new();
        let mut finals = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            let (p, q) = pairs[i];
            finals.push(accept(self.is_final(p), other.is_final(q)));
            for a in 0..k as Letter {
                let pair = (self.next(p, a), other.next(q, a));
                let id = match ids.get(&pair) {
                    Some(&id) => id,
                    None => {
                        if pairs.len() >= cap {
                            return Err(Error::StateCap { cap });
                        }
                        let id = pairs.len() as u32;
                        ids.insert(pair, id);
                        pairs.push(pair);
                        id
                    }
                };
                trans.push(id);
            }
            i += 1;
        }
        Ok(Dfa::from_parts(self.alphabet.clone(), trans, finals, 0))
    }

    pub(crate) fn with_finals(&self, finals: Vec<bool>) -> Dfa {
        Dfa::from_parts(self.alphabet.clone(), self.trans.clone(), finals, self.start)
    }

    pub(crate) fn complemented(&self) -> Dfa {
        self.with_finals(self.finals.iter().map(|f| !f).collect())
    }

    /// Applies a letter permutation: a transition on `a` becomes a
    /// transition on `perm[a]`.
    pub(crate) fn relabeled(&self, perm: &[Letter]) -> Dfa {
        let k = self.alphabet.len();
        let mut trans = vec![0; self.trans.len()];
        for q in 0..self.state_count() {
            for a in 0..k {
                trans[q * k + perm[a] as usize] = self.trans[q * k + a];
            }
        }
        Dfa::from_parts(self.alphabet.clone(), trans, self.finals.clone(), self.start)
    }

    /// Line-oriented dump: `state q`, `init q`, `final q`, `trans q a q'`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for q in 0..self.state_count() {
            let _ = writeln!(out, "state {q}");
        }
        let _ = writeln!(out, "init {}", self.start);
        for q in 0..self.state_count() {
            if self.finals[q] {
                let _ = writeln!(out, "final {q}");
            }
        }
        for q in 0..self.state_count() as u32 {
            for a in 0..self.alphabet.len() as Letter {
                let _ = writeln!(out, "trans {q} {} {}", self.alphabet.char_of(a), self.next(q, a));
            }
        }
        out
    }

    /// Parses the format produced by [`Dfa::dump`]. Missing transitions go
    /// to an added sink.
    pub fn parse_dump(alphabet: &Alphabet, text: &str) -> Result<Dfa> {
        let mut names: HashMap<String, u32> = HashMap::new();
        let mut finals = Vec::new();
        let mut start = None;
        let mut edges = Vec::new();
        let parse_err = |line: usize, message: &str| Error::Parse { line, message: message.into() };
        let mut intern = |name: &str, finals: &mut Vec<bool>| -> u32 {
            let n = names.len() as u32;
            *names.entry(name.to_string()).or_insert_with(|| {
                finals.push(false);
                n
            })
        };
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            match parts.as_slice() {
                ["state", q] => {
                    intern(q, &mut finals);
                }
                ["init", q] => start = Some(intern(q, &mut finals)),
                ["final", q] => {
                    let id = intern(q, &mut finals);
                    finals[id as usize] = true;
                }
                ["trans", p, a, q] => {
                    let mut chars = a.chars();
                    let c = chars.next().ok_or_else(|| parse_err(i + 1, "missing letter"))?;
                    if chars.next().is_some() {
                        return Err(parse_err(i + 1, "letters are single characters"));
                    }
                    let letter = alphabet.letter(c)?;
                    let p = intern(p, &mut finals);
                    let q = intern(q, &mut finals);
                    edges.push((i + 1, p, letter, q));
                }
                _ => return Err(parse_err(i + 1, "unrecognized record")),
            }
        }
        let start = start.ok_or_else(|| parse_err(0, "missing init record"))?;
        let mut table = vec![vec![None; alphabet.len()]; finals.len()];
        for (line, p, a, q) in edges {
            let slot = &mut table[p as usize][a as usize];
            if slot.is_some_and(|r| r != q) {
                return Err(parse_err(line, "nondeterministic transition"));
            }
            *slot = Some(q);
        }
        Dfa::from_table(alphabet.clone(), &table, &finals, start)
    }
}
