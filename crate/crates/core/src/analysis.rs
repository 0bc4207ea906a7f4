//! Code tests and property checks on finite and regular languages.
//!
//! The code test is Sardinas–Patterson in two forms. The finite version
//! walks dangling suffixes and keeps the two partial factorizations, so a
//! failure comes with a witness. The regular version iterates remainder
//! languages as minimal automata and stops on `ε`, on the empty set, or on
//! a repeated remainder. Remainders are unions of residuals of `X`, so the
//! sequence is eventually periodic.

use std::collections::{HashSet, VecDeque};

use crate::automata::RegularLanguage;
use crate::error::{Error, Result};
use crate::theta::{Kind, ThetaMap};
use crate::words::{Alphabet, FiniteLanguage, Letter, Word};

pub const SP_ITERATION_CAP: usize = 10_000;

/// Two distinct factorizations of one word over `X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorizations {
    pub left: Vec<Word>,
    pub right: Vec<Word>,
}

impl Factorizations {
    /// Orders the pair so `left` starts with the longer first word.
    fn new(a: Vec<Word>, b: Vec<Word>) -> Self {
        let key = |f: &[Word]| f.first().map_or(0, Word::len);
        if key(&a) >= key(&b) {
            Self { left: a, right: b }
        } else {
            Self { left: b, right: a }
        }
    }

    pub fn word(&self) -> Word {
        Word::concat_all(&self.left)
    }

    /// Both sides spell the same word, use only words of `x`, and differ.
    pub fn is_valid_for(&self, x: &RegularLanguage) -> bool {
        !self.left.is_empty()
            && self.left != self.right
            && Word::concat_all(&self.left) == Word::concat_all(&self.right)
            && self.left.iter().chain(&self.right).all(|w| !w.is_empty() && x.contains(w))
    }

    pub fn render(&self, alphabet: &Alphabet) -> (String, String) {
        let show = |f: &[Word]| f.iter().map(|w| alphabet.render(w)).collect::<Vec<_>>().join(" ");
        (show(&self.left), show(&self.right))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeVerdict {
    pub is_code: bool,
    pub witness: Option<Factorizations>,
}

impl CodeVerdict {
    fn code() -> Self {
        Self { is_code: true, witness: None }
    }
}

fn check_code_input(x: &RegularLanguage) -> Result<()> {
    if x.contains_epsilon() {
        return Err(Error::EpsilonInCode);
    }
    if x.is_empty() {
        return Err(Error::EmptyLanguage);
    }
    Ok(())
}

/// Sardinas–Patterson on a finite set, with a witness on failure.
pub fn sardinas_patterson(x: &FiniteLanguage) -> Result<CodeVerdict> {
    x.require_epsilon_free()?;
    if x.is_empty() {
        return Err(Error::EmptyLanguage);
    }
    // Each entry: dangling suffix d with top = bottom · d.
    let mut queue: VecDeque<(Word, Vec<Word>, Vec<Word>)> = VecDeque::new();
    let mut seen: HashSet<Word> = HashSet::new();
    for x1 in x.iter() {
        for x2 in x.iter() {
            if x1.len() > x2.len() && x1.starts_with(x2) {
                let d = x1.suffix_from(x2.len());
                if seen.insert(d.clone()) {
                    queue.push_back((d, vec![x1.clone()], vec![x2.clone()]));
                }
            }
        }
    }
    while let Some((d, top, bottom)) = queue.pop_front() {
        for w in x.iter() {
            if *w == d {
                let mut bottom = bottom.clone();
                bottom.push(w.clone());
                return Ok(CodeVerdict { is_code: false, witness: Some(Factorizations::new(top, bottom)) });
            }
            if w.len() > d.len() && w.starts_with(&d) {
                let e = w.suffix_from(d.len());
                if seen.insert(e.clone()) {
                    let mut new_top = bottom.clone();
                    new_top.push(w.clone());
                    queue.push_back((e, new_top, top.clone()));
                }
            } else if d.len() > w.len() && d.starts_with(w) {
                let e = d.suffix_from(w.len());
                if seen.insert(e.clone()) {
                    let mut new_bottom = bottom.clone();
                    new_bottom.push(w.clone());
                    queue.push_back((e, top.clone(), new_bottom));
                }
            }
        }
    }
    Ok(CodeVerdict::code())
}

/// Sardinas–Patterson on a regular language. The verdict is exact; a
/// witness is extracted only when `with_witness` is set.
pub fn is_code_regular(x: &RegularLanguage, with_witness: bool) -> Result<CodeVerdict> {
    check_code_input(x)?;
    let eps = RegularLanguage::epsilon(x.alphabet());
    let mut u = x.left_quotient_by(x)?.difference(&eps)?;
    let mut seen: HashSet<RegularLanguage> = HashSet::new();
    let mut is_code = None;
    for _ in 0..SP_ITERATION_CAP {
        if u.contains_epsilon() {
            is_code = Some(false);
            break;
        }
        if u.is_empty() || !seen.insert(u.clone()) {
            is_code = Some(true);
            break;
        }
        u = u.left_quotient_by(x)?.union(&x.left_quotient_by(&u)?)?;
    }
    let is_code = is_code.ok_or(Error::IterationCap { what: "Sardinas-Patterson", cap: SP_ITERATION_CAP })?;
    if is_code || !with_witness {
        return Ok(CodeVerdict { is_code, witness: None });
    }
    match ambiguity_witness(x) {
        Some(f) => Ok(CodeVerdict { is_code: false, witness: Some(f) }),
        None => Err(Error::Verification("remainder test and factorization search disagree".into())),
    }
}

/// Shortest word of `X⁺` with two factorizations, found by a breadth-first
/// search over pairs of runs of the minimal automaton of `X`. Each run may
/// cut back to the start after a final state; the pair diverges once the
/// runs cut at different positions. `None` means `X` is a code.
pub fn ambiguity_witness(x: &RegularLanguage) -> Option<Factorizations> {
    let dfa = x.dfa();
    let k = x.alphabet().len();
    let n = dfa.state_count();
    let start = dfa.start();
    let live = dfa.live_states();
    let index = |p: u32, q: u32, div: bool| ((p as usize * n + q as usize) << 1) | div as usize;
    // parent: (previous node, letter, cut on first track, cut on second track)
    let mut parent: Vec<Option<(usize, Letter, bool, bool)>> = vec![None; n * n * 2];
    let root = index(start, start, false);
    let mut visited = vec![false; n * n * 2];
    visited[root] = true;
    let mut queue = VecDeque::from([(start, start, false)]);
    while let Some((p, q, div)) = queue.pop_front() {
        let from = index(p, q, div);
        for a in 0..k as Letter {
            let (p2, q2) = (dfa.next(p, a), dfa.next(q, a));
            if !live[p2 as usize] || !live[q2 as usize] {
                continue;
            }
            for cut1 in [false, true] {
                if cut1 && !dfa.is_final(p2) {
                    continue;
                }
                for cut2 in [false, true] {
                    if cut2 && !dfa.is_final(q2) {
                        continue;
                    }
                    let div2 = div || cut1 != cut2;
                    let np = if cut1 { start } else { p2 };
                    let nq = if cut2 { start } else { q2 };
                    let node = index(np, nq, div2);
                    if cut1 && cut2 && div2 {
                        parent[node] = Some((from, a, cut1, cut2));
                        return Some(rebuild(&parent, node, root));
                    }
                    if !visited[node] {
                        visited[node] = true;
                        parent[node] = Some((from, a, cut1, cut2));
                        queue.push_back((np, nq, div2));
                    }
                }
            }
        }
    }
    None
}

fn rebuild(parent: &[Option<(usize, Letter, bool, bool)>], mut node: usize, root: usize) -> Factorizations {
    let mut steps = Vec::new();
    while node != root {
        let (prev, a, c1, c2) = parent[node].expect("search tree is connected");
        steps.push((a, c1, c2));
        node = prev;
    }
    steps.reverse();
    let split = |pick: fn(&(Letter, bool, bool)) -> bool| {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        for s in &steps {
            cur.push(s.0);
            if pick(s) {
                out.push(Word::from(std::mem::take(&mut cur)));
            }
        }
        out
    };
    Factorizations::new(split(|s| s.1), split(|s| s.2))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AffixClass {
    pub prefix: bool,
    pub suffix: bool,
}

impl AffixClass {
    pub fn bifix(&self) -> bool {
        self.prefix && self.suffix
    }
}

pub fn affix_class(x: &RegularLanguage) -> Result<AffixClass> {
    if x.contains_epsilon() {
        return Err(Error::EpsilonInCode);
    }
    let plus = RegularLanguage::nonempty_words(x.alphabet());
    let prefix = x.intersection(&x.concat(&plus)?)?.is_empty();
    let suffix = x.intersection(&plus.concat(x)?)?.is_empty();
    Ok(AffixClass { prefix, suffix })
}

/// Whether `F(X*) = A*`; otherwise the shortest word outside `F(X*)`.
pub fn is_complete(x: &RegularLanguage) -> Result<(bool, Option<Word>)> {
    let f = x.star()?.factor_closure()?;
    let witness = f.complement().shortest_word();
    Ok((witness.is_none(), witness))
}

/// Whether `F(X) ≠ A*`, with the shortest word outside `F(X)`.
pub fn is_thin(x: &RegularLanguage) -> Result<(bool, Option<Word>)> {
    let witness = x.factor_closure()?.complement().shortest_word();
    Ok((witness.is_some(), witness))
}

pub fn is_theta_invariant(x: &RegularLanguage, t: &ThetaMap) -> Result<bool> {
    Ok(t.apply_regular(x)? == *x)
}

/// Code test on the union of all θ-powers of `X`.
pub fn is_theta_code(x: &RegularLanguage, t: &ThetaMap, with_witness: bool) -> Result<CodeVerdict> {
    check_code_input(x)?;
    is_code_regular(&t.orbit_union_regular(x)?, with_witness)
}

/// For a thin θ-invariant code, maximality among θ-invariant codes is
/// equivalent to completeness.
pub fn is_maximal_thin(x: &RegularLanguage, t: &ThetaMap) -> Result<bool> {
    if !is_thin(x)?.0 {
        return Err(Error::NotThin);
    }
    if !is_code_regular(x, false)?.is_code {
        return Err(Error::NotACode);
    }
    if !is_theta_invariant(x, t)? {
        return Err(Error::NotThetaInvariant);
    }
    Ok(is_complete(x)?.0)
}

/// Trie of a finite set: nodes are the prefixes, edges `(u, a, ua)`.
#[derive(Clone, Debug)]
pub struct PrefixTree {
    pub nodes: FiniteLanguage,
    pub edges: Vec<(Word, Letter, Word)>,
}

impl PrefixTree {
    pub fn new(x: &FiniteLanguage) -> Self {
        let mut nodes = FiniteLanguage::empty(x.alphabet().clone());
        for w in x.iter() {
            for i in 0..=w.len() {
                nodes.insert(w.prefix(i));
            }
        }
        let edges = nodes
            .iter()
            .filter(|w| !w.is_empty())
            .map(|w| (w.prefix(w.len() - 1), w.letters()[w.len() - 1], w.clone()))
            .collect();
        Self { nodes, edges }
    }

    pub fn leaves(&self) -> Vec<&Word> {
        self.nodes.iter().filter(|u| !self.edges.iter().any(|(p, _, _)| p == *u)).collect()
    }
}

/// Edge-wise invariance of the trie of a prefix code under an automorphism.
pub fn tree_theta_invariant(x: &FiniteLanguage, t: &ThetaMap) -> Result<bool> {
    if t.effective_kind() != Kind::Morphism {
        return Err(Error::NotMorphism);
    }
    if !affix_class(&RegularLanguage::from_finite(x))?.prefix {
        return Err(Error::NotPrefix);
    }
    let tree = PrefixTree::new(x);
    let edges: HashSet<&(Word, Letter, Word)> = tree.edges.iter().collect();
    let leaves_ok = tree.leaves().into_iter().all(|u| x.contains(u));
    for (u, a, ua) in &tree.edges {
        let image = (t.apply_word(u)?, t.apply_letter(*a), t.apply_word(ua)?);
        if !edges.contains(&image) {
            return Ok(false);
        }
    }
    // A prefix code is the leaf set of its trie, so edge invariance carries
    // over to the set.
    Ok(leaves_ok)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layer {
    pub length: usize,
    pub words: FiniteLanguage,
    pub theta_invariant: bool,
}

/// Splits a finite set by word length and tests each layer against `t`.
pub fn uniform_decomposition(x: &FiniteLanguage, t: &ThetaMap) -> Result<Vec<Layer>> {
    let mut layers: Vec<Layer> = Vec::new();
    for w in x.iter() {
        match layers.last_mut() {
            Some(l) if l.length == w.len() => {
                l.words.insert(w.clone());
            }
            _ => {
                let mut words = FiniteLanguage::empty(x.alphabet().clone());
                words.insert(w.clone());
                layers.push(Layer { length: w.len(), words, theta_invariant: false });
            }
        }
    }
    for l in &mut layers {
        l.theta_invariant = t.apply_finite(&l.words)? == l.words;
    }
    Ok(layers)
}
