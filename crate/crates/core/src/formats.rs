//! Line-oriented text formats.
//!
//! Set file:
//! ```text
//! alphabet: ab
//! # comment
//! aab
//! eps
//! regex: b|ab*a
//! ```
//! Words and `regex:` lines may be mixed; the set is their union.
//!
//! Map file: `kind: morphism` or `kind: antimorphism`, then `a->b` lines;
//! unlisted letters are fixed.
//!
//! Distribution file: `a = 1/2` lines, or the single keyword `uniform`.

use num_rational::BigRational;

use crate::automata::RegularLanguage;
use crate::error::{Error, Result};
use crate::measure::BernoulliDist;
use crate::theta::{Kind, ThetaMap};
use crate::words::{Alphabet, FiniteLanguage, Letter};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetFile {
    pub alphabet: Alphabet,
    pub words: FiniteLanguage,
    pub regexes: Vec<String>,
}

impl SetFile {
    /// The finite set, when no regex lines are present.
    pub fn finite(&self) -> Option<&FiniteLanguage> {
        self.regexes.is_empty().then_some(&self.words)
    }

    pub fn language(&self) -> Result<RegularLanguage> {
        let mut l = RegularLanguage::from_finite(&self.words);
        for r in &self.regexes {
            l = l.union(&RegularLanguage::parse_regex(r, &self.alphabet)?)?;
        }
        Ok(l)
    }
}

/// Content lines with comments stripped, paired with 1-based numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

/// Re-tags a library error with the line it came from.
fn at_line(line: usize) -> impl Fn(Error) -> Error {
    move |e| match e {
        Error::Parse { .. } => e,
        other => parse_error(line, other.to_string()),
    }
}

pub fn parse_set_file(text: &str) -> Result<SetFile> {
    let mut lines = content_lines(text);
    let (line, header) = lines.next().ok_or_else(|| parse_error(1, "missing 'alphabet:' line"))?;
    let letters = header
        .strip_prefix("alphabet:")
        .ok_or_else(|| parse_error(line, "first line must be 'alphabet: <letters>'"))?;
    let alphabet: Alphabet = letters.trim().parse().map_err(at_line(line))?;
    let mut words = FiniteLanguage::empty(alphabet.clone());
    let mut regexes = Vec::new();
    for (line, content) in lines {
        if let Some(r) = content.strip_prefix("regex:") {
            RegularLanguage::parse_regex(r.trim(), &alphabet).map_err(at_line(line))?;
            regexes.push(r.trim().to_string());
        } else {
            words.insert(alphabet.parse_word(content).map_err(at_line(line))?);
        }
    }
    Ok(SetFile { alphabet, words, regexes })
}

pub fn write_set_file(x: &FiniteLanguage) -> String {
    let mut out = format!("alphabet: {}\n", x.alphabet());
    for w in x.rendered() {
        out.push_str(&w);
        out.push('\n');
    }
    out
}

pub fn write_regex_set_file(alphabet: &Alphabet, regex: &str) -> String {
    format!("alphabet: {alphabet}\nregex: {regex}\n")
}

pub fn parse_theta_file(text: &str, alphabet: &Alphabet) -> Result<ThetaMap> {
    let mut kind = None;
    let mut pairs = Vec::new();
    let mut last_line = 1;
    for (line, content) in content_lines(text) {
        last_line = line;
        if let Some(k) = content.strip_prefix("kind:") {
            kind = Some(match k.trim() {
                "morphism" => Kind::Morphism,
                "antimorphism" => Kind::Antimorphism,
                other => return Err(parse_error(line, format!("unknown kind '{other}'"))),
            });
        } else if let Some((from, to)) = content.split_once("->") {
            let single = |s: &str| {
                let mut chars = s.trim().chars();
                match (chars.next(), chars.next()) {
                    (Some(c), None) => Ok(c),
                    _ => Err(parse_error(line, format!("expected a single letter, got '{}'", s.trim()))),
                }
            };
            pairs.push((single(from)?, single(to)?));
        } else {
            return Err(parse_error(line, format!("unrecognized line '{content}'")));
        }
    }
    let kind = kind.ok_or_else(|| parse_error(last_line, "missing 'kind:' line"))?;
    ThetaMap::from_pairs(alphabet, &pairs, kind).map_err(at_line(last_line))
}

pub fn write_theta_file(t: &ThetaMap) -> String {
    let mut out = format!("kind: {}\n", t.kind());
    let alphabet = t.alphabet();
    for a in 0..alphabet.len() as Letter {
        out.push_str(&format!("{}->{}\n", alphabet.char_of(a), alphabet.char_of(t.apply_letter(a))));
    }
    out
}

pub fn parse_distribution_file(text: &str, alphabet: &Alphabet) -> Result<BernoulliDist> {
    let lines: Vec<(usize, &str)> = content_lines(text).collect();
    if let [(_, "uniform")] = lines.as_slice() {
        return Ok(BernoulliDist::uniform(alphabet));
    }
    let mut weights: Vec<Option<BigRational>> = vec![None; alphabet.len()];
    for &(line, content) in &lines {
        let (letter, value) = content
            .split_once('=')
            .ok_or_else(|| parse_error(line, format!("expected '<letter> = <rational>', got '{content}'")))?;
        let mut chars = letter.trim().chars();
        let c = match (chars.next(), chars.next()) {
            (Some(c), None) => c,
            _ => return Err(parse_error(line, format!("expected a single letter, got '{}'", letter.trim()))),
        };
        let a = alphabet.letter(c).map_err(at_line(line))?;
        let value: BigRational =
            value.trim().parse().map_err(|_| parse_error(line, format!("invalid rational '{}'", value.trim())))?;
        if weights[a as usize].replace(value).is_some() {
            return Err(parse_error(line, format!("letter '{c}' given twice")));
        }
    }
    let weights = weights
        .into_iter()
        .enumerate()
        .map(|(a, w)| {
            w.ok_or_else(|| Error::BadDistribution(format!("no weight for '{}'", alphabet.char_of(a as Letter))))
        })
        .collect::<Result<Vec<_>>>()?;
    BernoulliDist::new(alphabet.clone(), weights)
}
