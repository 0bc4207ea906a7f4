//! Regular expression syntax.
//!
//! Letters stand for themselves, juxtaposition concatenates, `|` is union,
//! postfix `*` and `+` are star and plus, `_` is the empty word and `~` the
//! empty set. Whitespace is ignored.

use std::fmt;

use super::nfa::Nfa;
use crate::error::{Error, Result};
use crate::words::{Alphabet, Letter};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RegexAst {
    Letter(Letter),
    Epsilon,
    Empty,
    Union(Box<RegexAst>, Box<RegexAst>),
    Concat(Box<RegexAst>, Box<RegexAst>),
    Star(Box<RegexAst>),
    Plus(Box<RegexAst>),
}

impl RegexAst {
    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<RegexAst> {
        let tokens: Vec<(usize, char)> = text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
        let mut parser = Parser { tokens: &tokens, pos: 0, alphabet, end: text.len() };
        if tokens.is_empty() {
            return Err(parser.error("empty expression"));
        }
        let ast = parser.union()?;
        if parser.pos < tokens.len() {
            return Err(parser.error("unexpected symbol"));
        }
        Ok(ast)
    }

    pub fn union(a: RegexAst, b: RegexAst) -> RegexAst {
        RegexAst::Union(Box::new(a), Box::new(b))
    }

    pub fn concat(a: RegexAst, b: RegexAst) -> RegexAst {
        RegexAst::Concat(Box::new(a), Box::new(b))
    }

    pub fn star(a: RegexAst) -> RegexAst {
        RegexAst::Star(Box::new(a))
    }

    pub fn plus(a: RegexAst) -> RegexAst {
        RegexAst::Plus(Box::new(a))
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        match self {
            RegexAst::Letter(_) | RegexAst::Epsilon | RegexAst::Empty => 1,
            RegexAst::Union(a, b) | RegexAst::Concat(a, b) => 1 + a.size() + b.size(),
            RegexAst::Star(a) | RegexAst::Plus(a) => 1 + a.size(),
        }
    }

    /// Thompson construction.
    pub fn to_nfa(&self, alphabet: &Alphabet) -> Nfa {
        let mut nfa = Nfa::new(alphabet.clone());
        let (s, f) = self.build(&mut nfa);
        nfa.add_initial(s);
        nfa.set_final(f, true);
        nfa
    }

    fn build(&self, nfa: &mut Nfa) -> (u32, u32) {
        match self {
            RegexAst::Letter(a) => {
                let s = nfa.add_state(false);
                let f = nfa.add_state(false);
                nfa.add_transition(s, *a, f);
                (s, f)
            }
            RegexAst::Epsilon => {
                let s = nfa.add_state(false);
                let f = nfa.add_state(false);
                nfa.add_epsilon(s, f);
                (s, f)
            }
            RegexAst::Empty => (nfa.add_state(false), nfa.add_state(false)),
            RegexAst::Union(a, b) => {
                let s = nfa.add_state(false);
                let (sa, fa) = a.build(nfa);
                let (sb, fb) = b.build(nfa);
                let f = nfa.add_state(false);
                nfa.add_epsilon(s, sa);
                nfa.add_epsilon(s, sb);
                nfa.add_epsilon(fa, f);
                nfa.add_epsilon(fb, f);
                (s, f)
            }
            RegexAst::Concat(a, b) => {
                let (sa, fa) = a.build(nfa);
                let (sb, fb) = b.build(nfa);
                nfa.add_epsilon(fa, sb);
                (sa, fb)
            }
            RegexAst::Star(a) | RegexAst::Plus(a) => {
                let s = nfa.add_state(false);
                let (sa, fa) = a.build(nfa);
                let f = nfa.add_state(false);
                nfa.add_epsilon(s, sa);
                nfa.add_epsilon(fa, sa);
                nfa.add_epsilon(fa, f);
                if matches!(self, RegexAst::Star(_)) {
                    nfa.add_epsilon(s, f);
                }
                (s, f)
            }
        }
    }

    /// Renders with the alphabet's letters, parenthesizing only where needed.
    pub fn render(&self, alphabet: &Alphabet) -> String {
        Rendered { ast: self, alphabet }.to_string()
    }

    fn precedence(&self) -> u8 {
        match self {
            RegexAst::Union(..) => 0,
            RegexAst::Concat(..) => 1,
            RegexAst::Star(_) | RegexAst::Plus(_) => 2,
            _ => 3,
        }
    }
}

struct Rendered<'a> {
    ast: &'a RegexAst,
    alphabet: &'a Alphabet,
}

impl fmt::Display for Rendered<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let alphabet = self.alphabet;
        let sub = |ast: &RegexAst, min: u8, f: &mut fmt::Formatter<'_>| -> fmt::Result {
            let r = Rendered { ast, alphabet };
            if ast.precedence() < min {
                write!(f, "({r})")
            } else {
                write!(f, "{r}")
            }
        };
        match self.ast {
            RegexAst::Letter(a) => write!(f, "{}", self.alphabet.char_of(*a)),
            RegexAst::Epsilon => write!(f, "_"),
            RegexAst::Empty => write!(f, "~"),
            RegexAst::Union(a, b) => {
                sub(a, 0, f)?;
                write!(f, "|")?;
                sub(b, 0, f)
            }
            RegexAst::Concat(a, b) => {
                sub(a, 1, f)?;
                sub(b, 2, f)
            }
            RegexAst::Star(a) => {
                sub(a, 3, f)?;
                write!(f, "*")
            }
            RegexAst::Plus(a) => {
                sub(a, 3, f)?;
                write!(f, "+")
            }
        }
    }
}

struct Parser<'a> {
    tokens: &'a [(usize, char)],
    pos: usize,
    alphabet: &'a Alphabet,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.tokens.get(self.pos).map(|&(_, c)| c)
    }

    fn error(&self, message: &str) -> Error {
        let offset = self.tokens.get(self.pos).map_or(self.end, |&(o, _)| o);
        Error::Regex { offset, message: message.into() }
    }

    fn union(&mut self) -> Result<RegexAst> {
        let mut ast = self.concat()?;
        while self.peek() == Some('|') {
            self.pos += 1;
            let rhs = self.concat()?;
            ast = RegexAst::union(ast, rhs);
        }
        Ok(ast)
    }

    fn concat(&mut self) -> Result<RegexAst> {
        let mut ast: Option<RegexAst> = None;
        while let Some(c) = self.peek() {
            if c == '|' || c == ')' {
                break;
            }
            let item = self.postfix()?;
            ast = Some(match ast {
                None => item,
                Some(prev) => RegexAst::concat(prev, item),
            });
        }
        ast.ok_or_else(|| self.error("empty alternative (use _ for the empty word)"))
    }

    fn postfix(&mut self) -> Result<RegexAst> {
        let mut ast = self.atom()?;
        loop {
            match self.peek() {
                Some('*') => ast = RegexAst::star(ast),
                Some('+') => ast = RegexAst::plus(ast),
                _ => return Ok(ast),
            }
            self.pos += 1;
        }
    }

    fn atom(&mut self) -> Result<RegexAst> {
        let c = self.peek().ok_or_else(|| self.error("unexpected end of expression"))?;
        let ast = match c {
            '(' => {
                self.pos += 1;
                let inner = self.union()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                inner
            }
            '_' => RegexAst::Epsilon,
            '~' => RegexAst::Empty,
            '*' | '+' | ')' | '|' => return Err(self.error("unexpected operator")),
            c => RegexAst::Letter(
                self.alphabet.index_of(c).ok_or_else(|| self.error(&format!("letter '{c}' is not in the alphabet")))?,
            ),
        };
        self.pos += 1;
        Ok(ast)
    }
}
