//! Positive Bernoulli distributions and the measure `π(X) = Σ_{x∈X} π(x)`,
//! computed exactly over the rationals.
//!
//! For a regular language the value at each state `s` of the trimmed
//! minimal automaton satisfies `v(s) = [s final] + Σ_a π(a)·v(δ(s,a))`.
//! The transition matrix is substochastic, so the system is singular
//! exactly when some strongly connected part keeps all its mass, and then
//! the series diverges. A regular system has spectral radius below one and
//! its solution is the measure. The result is cross-checked against
//! partial sums by length before being reported.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::automata::RegularLanguage;
use crate::error::{Error, Result};
use crate::words::{Alphabet, FiniteLanguage, Letter, Word};

/// Length up to which partial sums are compared with the solved value.
pub const PARTIAL_SUM_LENGTH: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BernoulliDist {
    alphabet: Alphabet,
    weights: Vec<BigRational>,
}

impl BernoulliDist {
    pub fn new(alphabet: Alphabet, weights: Vec<BigRational>) -> Result<Self> {
        if weights.len() != alphabet.len() {
            return Err(Error::BadDistribution("one weight per letter is required".into()));
        }
        if let Some(i) = weights.iter().position(|w| !w.is_positive()) {
            return Err(Error::BadDistribution(format!(
                "weight of '{}' must be positive",
                alphabet.char_of(i as Letter)
            )));
        }
        let total: BigRational = weights.iter().sum();
        if !total.is_one() {
            return Err(Error::BadDistribution(format!("weights sum to {total}, not 1")));
        }
        Ok(Self { alphabet, weights })
    }

    pub fn uniform(alphabet: &Alphabet) -> Self {
        let w = BigRational::new(BigInt::one(), BigInt::from(alphabet.len()));
        Self { alphabet: alphabet.clone(), weights: vec![w; alphabet.len()] }
    }

    /// Weights given as `(numerator, denominator)` pairs in alphabet order.
    pub fn from_fractions(alphabet: &Alphabet, fractions: &[(i64, i64)]) -> Result<Self> {
        if fractions.iter().any(|&(_, q)| q == 0) {
            return Err(Error::BadDistribution("zero denominator".into()));
        }
        let weights = fractions.iter().map(|&(p, q)| BigRational::new(p.into(), q.into())).collect();
        Self::new(alphabet.clone(), weights)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn weight(&self, a: Letter) -> &BigRational {
        &self.weights[a as usize]
    }

    pub fn weights(&self) -> &[BigRational] {
        &self.weights
    }

    pub fn word(&self, w: &Word) -> BigRational {
        w.letters().iter().map(|&a| self.weights[a as usize].clone()).product()
    }

    /// The distribution seen through a relabeling: letter `perm[a]` gets
    /// the weight of `a`.
    pub fn permuted(&self, perm: &[Letter]) -> Self {
        let mut weights = self.weights.clone();
        for (a, &b) in perm.iter().enumerate() {
            weights[b as usize] = self.weights[a].clone();
        }
        Self { alphabet: self.alphabet.clone(), weights }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Measure {
    Rational(BigRational),
    Divergent,
    Undetermined,
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Measure::Rational(r) => write!(f, "{r}"),
            Measure::Divergent => f.write_str("divergent"),
            Measure::Undetermined => f.write_str("undetermined"),
        }
    }
}

pub fn measure_finite(x: &FiniteLanguage, d: &BernoulliDist) -> Result<BigRational> {
    if x.alphabet() != d.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    Ok(x.iter().map(|w| d.word(w)).sum())
}

pub fn measure_regular(l: &RegularLanguage, d: &BernoulliDist) -> Result<Measure> {
    if l.alphabet() != d.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    let dfa = l.dfa();
    let useful = dfa.useful_states();
    if !useful[dfa.start() as usize] {
        return Ok(Measure::Rational(BigRational::zero()));
    }
    let states: Vec<u32> = (0..dfa.state_count() as u32).filter(|&q| useful[q as usize]).collect();
    let mut index = vec![usize::MAX; dfa.state_count()];
    for (i, &q) in states.iter().enumerate() {
        index[q as usize] = i;
    }
    let n = states.len();
    let k = l.alphabet().len();
    // step[i][j] = total weight of letters leading from state i to state j.
    let mut step = vec![vec![BigRational::zero(); n]; n];
    for (i, &q) in states.iter().enumerate() {
        for a in 0..k as Letter {
            let r = dfa.next(q, a);
            if useful[r as usize] {
                step[i][index[r as usize]] += d.weight(a);
            }
        }
    }
    let finals: Vec<BigRational> =
        states.iter().map(|&q| if dfa.is_final(q) { BigRational::one() } else { BigRational::zero() }).collect();

    let mut system: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() } - &step[i][j]).collect())
        .collect();
    let solution = match solve(&mut system, finals.clone()) {
        Some(v) => v,
        None => return Ok(Measure::Divergent),
    };
    if solution.iter().any(|v| v.is_negative()) {
        return Ok(Measure::Undetermined);
    }
    let value = solution[index[dfa.start() as usize]].clone();

    // Partial sums by length must increase toward the value without
    // overshooting it.
    let mut dist = vec![BigRational::zero(); n];
    dist[index[dfa.start() as usize]] = BigRational::one();
    let mut partial = BigRational::zero();
    for _ in 0..=PARTIAL_SUM_LENGTH {
        partial += dist.iter().zip(&finals).map(|(p, f)| p * f).sum::<BigRational>();
        if partial > value {
            return Ok(Measure::Undetermined);
        }
        let mut next = vec![BigRational::zero(); n];
        for (i, p) in dist.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            for (j, s) in step[i].iter().enumerate() {
                if !s.is_zero() {
                    next[j] += p * s;
                }
            }
        }
        dist = next;
    }
    Ok(Measure::Rational(value))
}

/// Solves `m·x = b` by Gauss–Jordan elimination; `None` when singular.
fn solve(m: &mut [Vec<BigRational>], mut b: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        b.swap(col, pivot);
        let inv = m[col][col].recip();
        for v in &mut m[col][col..] {
            *v = &*v * &inv;
        }
        b[col] = &b[col] * &inv;
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            let pivot_row = m[col].clone();
            for (v, p) in m[r][col..].iter_mut().zip(&pivot_row[col..]) {
                *v -= &factor * p;
            }
            let delta = &factor * &b[col];
            b[r] -= delta;
        }
    }
    Some(b)
}
