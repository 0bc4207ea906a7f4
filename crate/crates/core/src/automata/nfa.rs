use std::collections::{HashMap, VecDeque};

use super::dfa::Dfa;
use super::state_cap;
use crate::error::{Error, Result};
use crate::words::{Alphabet, FiniteLanguage, Letter, Word};

/// Nondeterministic automaton with optional ε-moves and several initial
/// states.
#[derive(Clone, Debug)]
pub struct Nfa {
    pub(crate) alphabet: Alphabet,
    pub(crate) trans: Vec<Vec<(Letter, u32)>>,
    pub(crate) eps: Vec<Vec<u32>>,
    pub(crate) initials: Vec<u32>,
    pub(crate) finals: Vec<bool>,
}

impl Nfa {
    pub fn new(alphabet: Alphabet) -> Self {
        Self { alphabet, trans: Vec::new(), eps: Vec::new(), initials: Vec::new(), finals: Vec::new() }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.finals.len()
    }

    pub fn add_state(&mut self, is_final: bool) -> u32 {
        self.trans.push(Vec::new());
        self.eps.push(Vec::new());
        self.finals.push(is_final);
        (self.finals.len() - 1) as u32
    }

    pub fn add_transition(&mut self, from: u32, letter: Letter, to: u32) {
        debug_assert!((letter as usize) < self.alphabet.len());
        self.trans[from as usize].push((letter, to));
    }

    pub fn add_epsilon(&mut self, from: u32, to: u32) {
        self.eps[from as usize].push(to);
    }

    pub fn add_initial(&mut self, q: u32) {
        self.initials.push(q);
    }

    pub fn set_final(&mut self, q: u32, is_final: bool) {
        self.finals[q as usize] = is_final;
    }

    /// Prefix tree acceptor of a finite language.
    pub fn from_finite(lang: &FiniteLanguage) -> Self {
        let mut nfa = Nfa::new(lang.alphabet().clone());
        let root = nfa.add_state(false);
        nfa.add_initial(root);
        let mut children: HashMap<(u32, Letter), u32> = HashMap::new();
        for w in lang.iter() {
            let mut q = root;
            for &a in w.letters() {
                q = match children.get(&(q, a)) {
                    Some(&next) => next,
                    None => {
                        let next = nfa.add_state(false);
                        nfa.add_transition(q, a, next);
                        children.insert((q, a), next);
                        next
                    }
                };
            }
            nfa.set_final(q, true);
        }
        nfa
    }

    /// Copies the useful part of a DFA: unreachable and dead states are
    /// dropped.
    pub fn from_dfa(dfa: &Dfa) -> Self {
        let useful = dfa.useful_states();
        let mut index = vec![u32::MAX; dfa.state_count()];
        let mut nfa = Nfa::new(dfa.alphabet().clone());
        for q in 0..dfa.state_count() {
            if useful[q] {
                index[q] = nfa.add_state(dfa.is_final(q as u32));
            }
        }
        for q in 0..dfa.state_count() {
            if !useful[q] {
                continue;
            }
            for a in 0..dfa.alphabet().len() as Letter {
                let r = dfa.next(q as u32, a) as usize;
                if useful[r] {
                    nfa.add_transition(index[q], a, index[r]);
                }
            }
        }
        if useful[dfa.start() as usize] {
            nfa.add_initial(index[dfa.start() as usize]);
        }
        nfa
    }

    /// Mirror automaton: accepts the reversal of every accepted word.
    pub fn reversed(&self) -> Self {
        let n = self.state_count();
        let mut rev = Nfa::new(self.alphabet.clone());
        for q in 0..n {
            rev.add_state(self.initials.contains(&(q as u32)));
        }
        for q in 0..n {
            for &(a, r) in &self.trans[q] {
                rev.add_transition(r, a, q as u32);
            }
            for &r in &self.eps[q] {
                rev.add_epsilon(r, q as u32);
            }
            if self.finals[q] {
                rev.add_initial(q as u32);
            }
        }
        rev
    }

    fn closure(&self, set: &mut Vec<u32>, mark: &mut [bool]) {
        let mut stack: Vec<u32> = set.clone();
        while let Some(q) = stack.pop() {
            for &r in &self.eps[q as usize] {
                if !mark[r as usize] {
                    mark[r as usize] = true;
                    set.push(r);
                    stack.push(r);
                }
            }
        }
        for &q in set.iter() {
            mark[q as usize] = false;
        }
        set.sort_unstable();
        set.dedup();
    }

    pub fn accepts(&self, w: &Word) -> bool {
        let mut mark = vec![false; self.state_count()];
        let mut cur = self.initials.clone();
        for &q in &cur {
            mark[q as usize] = true;
        }
        self.closure(&mut cur, &mut mark);
        for &a in w.letters() {
            let mut next = Vec::new();
            for &q in &cur {
                for &(b, r) in &self.trans[q as usize] {
                    if b == a && !mark[r as usize] {
                        mark[r as usize] = true;
                        next.push(r);
                    }
                }
            }
            self.closure(&mut next, &mut mark);
            cur = next;
        }
        cur.iter().any(|&q| self.finals[q as usize])
    }

    /// Subset construction. The result is complete; the empty subset plays
    /// the role of the sink. Fails once more than the configured state cap
    /// of subsets has been discovered.
    pub fn determinize(&self) -> Result<Dfa> {
        let cap = state_cap();
        let k = self.alphabet.len();
        let n = self.state_count();
        let mut mark = vec![false; n];

        let mut start: Vec<u32> = self.initials.clone();
        start.sort_unstable();
        start.dedup();
        for &q in &start {
            mark[q as usize] = true;
        }
        self.closure(&mut start, &mut mark);

        let mut ids: HashMap<Vec<u32>, u32> = HashMap::new();
        let mut subsets: Vec<Vec<u32>> = Vec::new();
        let mut trans: Vec<u32> = Vec::new();
        let mut finals: Vec<bool> = Vec::new();
        let mut queue = VecDeque::new();

        ids.insert(start.clone(), 0);
        finals.push(start.iter().any(|&q| self.finals[q as usize]));
        subsets.push(start);
        queue.push_back(0u32);

        while let Some(id) = queue.pop_front() {
            trans.resize(subsets.len() * k, u32::MAX);
            for a in 0..k as Letter {
                let mut target: Vec<u32> = Vec::new();
                for &q in &subsets[id as usize] {
                    for &(b, r) in &self.trans[q as usize] {
                        if b == a && !mark[r as usize] {
                            mark[r as usize] = true;
                            target.push(r);
                        }
                    }
                }
                self.closure(&mut target, &mut mark);
                let next = match ids.get(&target) {
                    Some(&t) => t,
                    None => {
                        if subsets.len() >= cap {
                            return Err(Error::StateCap { cap });
                        }
                        let t = subsets.len() as u32;
                        finals.push(target.iter().any(|&q| self.finals[q as usize]));
                        ids.insert(target.clone(), t);
                        subsets.push(target);
                        queue.push_back(t);
                        t
                    }
                };
                trans[id as usize * k + a as usize] = next;
            }
        }
        trans.resize(subsets.len() * k, u32::MAX);
        Ok(Dfa::from_parts(self.alphabet.clone(), trans, finals, 0))
    }
}
