//! A one-line expression language for commutative regular languages.
//!
//! ```text
//! expr    := term { "|" term }
//! term    := shuffle { "&" shuffle }
//! shuffle := unary { "<>" unary }
//! unary   := "!" unary | primary
//! primary := atom | "(" expr ")"
//!          | ("up" | "down" | "upint" | "downint") "(" expr ")"
//!          | "proj{" letters "}(" expr ")"
//! atom    := LETTER "{" NAT "}" | LETTER "{" NAT "+" NAT "}"
//!          | "[" NAT { "," NAT } "]" | "sigma*" | "empty" | "eps"
//! ```
//!
//! `a{3}` is `{aaa}`, `a{1+2}` is `a(aa)*` and `[2,1]` is every word with two
//! `a`s and one `b`. Letter atoms constrain only their letter; every other
//! letter has count zero.

use std::fmt;
use std::ops::Range;

use comreg_core::{GridAutomaton, ParikhVector, UnarySet};
use thiserror::Error;

/// The declared alphabet; letter `j` is the `j`-th character.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet(Vec<char>);

impl Alphabet {
    pub fn new(letters: &str) -> Result<Self, ParseError> {
        let chars: Vec<char> = letters.chars().collect();
        if chars.is_empty() {
            return Err(ParseError::new(0, "alphabet is empty"));
        }
        for (n, c) in chars.iter().enumerate() {
            if !c.is_ascii_alphabetic() {
                return Err(ParseError::new(
                    n,
                    format!("letter {c:?} is not an ASCII letter"),
                ));
            }
            if chars[..n].contains(c) {
                return Err(ParseError::new(n, format!("letter {c:?} declared twice")));
            }
        }
        Ok(Alphabet(chars))
    }

    pub fn size(&self) -> usize {
        self.0.len()
    }

    pub fn letter(&self, j: usize) -> char {
        self.0[j]
    }

    pub fn index_of(&self, c: char) -> Option<usize> {
        self.0.iter().position(|&x| x == c)
    }

    pub fn letters(&self) -> &[char] {
        &self.0
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|c| write!(f, "{c}"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at column {}: {message}", .position + 1)]
pub struct ParseError {
    /// Character offset into the input.
    pub position: usize,
    pub message: String,
}

impl ParseError {
    fn new(position: usize, message: impl Into<String>) -> Self {
        ParseError {
            position,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot evaluate columns {}..{}: {source}", .span.start + 1, .span.end)]
pub struct EvalError {
    pub span: Range<usize>,
    pub source: comreg_core::Error,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Node {
    /// Count of one letter drawn from a unary set.
    Unary {
        letter: usize,
        counts: UnarySet,
    },
    Word(ParikhVector),
    SigmaStar,
    Empty,
    Epsilon,
    Complement(Box<LangExpr>),
    Shuffle(Box<LangExpr>, Box<LangExpr>),
    Intersection(Box<LangExpr>, Box<LangExpr>),
    Union(Box<LangExpr>, Box<LangExpr>),
    UpClose(Box<LangExpr>),
    DownClose(Box<LangExpr>),
    UpInterior(Box<LangExpr>),
    DownInterior(Box<LangExpr>),
    Projection(Vec<usize>, Box<LangExpr>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LangExpr {
    pub node: Node,
    pub span: Range<usize>,
}

pub fn parse(text: &str, alphabet: &Alphabet) -> Result<LangExpr, ParseError> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
        alphabet,
    };
    p.skip_ws();
    if p.at_end() {
        return Err(ParseError::new(0, "empty expression"));
    }
    let e = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.error(format!("unexpected {:?}", p.chars[p.pos])));
    }
    Ok(e)
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    alphabet: &'a Alphabet,
}

impl Parser<'_> {
    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::new(self.pos, message)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        let end = self.pos + token.chars().count();
        if end <= self.chars.len() && self.chars[self.pos..end].iter().copied().eq(token.chars()) {
            self.pos = end;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), ParseError> {
        if self.eat(token) {
            Ok(())
        } else {
            self.skip_ws();
            let found = match self.peek() {
                Some(c) => format!("{c:?}"),
                None => "end of input".to_string(),
            };
            Err(self.error(format!("expected {token:?}, found {found}")))
        }
    }

    fn binary(
        &mut self,
        token: &str,
        next: fn(&mut Self) -> Result<LangExpr, ParseError>,
        build: fn(Box<LangExpr>, Box<LangExpr>) -> Node,
    ) -> Result<LangExpr, ParseError> {
        let mut left = next(self)?;
        while self.eat(token) {
            let right = next(self)?;
            let span = left.span.start..right.span.end;
            left = LangExpr {
                node: build(Box::new(left), Box::new(right)),
                span,
            };
        }
        Ok(left)
    }

    fn expr(&mut self) -> Result<LangExpr, ParseError> {
        self.binary("|", Self::term, Node::Union)
    }

    fn term(&mut self) -> Result<LangExpr, ParseError> {
        self.binary("&", Self::shuffle, Node::Intersection)
    }

    fn shuffle(&mut self) -> Result<LangExpr, ParseError> {
        self.binary("<>", Self::unary, Node::Shuffle)
    }

    fn unary(&mut self) -> Result<LangExpr, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if self.eat("!") {
            let inner = self.unary()?;
            let span = start..inner.span.end;
            return Ok(LangExpr {
                node: Node::Complement(Box::new(inner)),
                span,
            });
        }
        self.primary()
    }

    fn word(&mut self) -> String {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_alphanumeric()) {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn nat(&mut self) -> Result<usize, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        digits
            .parse()
            .map_err(|_| ParseError::new(start, format!("number {digits} is too large")))
    }

    fn primary(&mut self) -> Result<LangExpr, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let done = |node: Node, p: &Self| LangExpr {
            node,
            span: start..p.pos,
        };
        match self.peek() {
            None => Err(self.error("unexpected end of input")),
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(")")?;
                Ok(LangExpr {
                    node: inner.node,
                    span: start..self.pos,
                })
            }
            Some('[') => {
                self.pos += 1;
                let mut counts = vec![self.nat()?];
                while self.eat(",") {
                    counts.push(self.nat()?);
                }
                self.expect("]")?;
                if counts.len() != self.alphabet.size() {
                    return Err(ParseError::new(
                        start,
                        format!(
                            "vector has {} entries but the alphabet has {} letters",
                            counts.len(),
                            self.alphabet.size()
                        ),
                    ));
                }
                Ok(done(Node::Word(ParikhVector::new(counts)), self))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let word = self.word();
                match word.as_str() {
                    "sigma" => {
                        self.expect("*")?;
                        Ok(done(Node::SigmaStar, self))
                    }
                    "empty" => Ok(done(Node::Empty, self)),
                    "eps" => Ok(done(Node::Epsilon, self)),
                    "up" | "down" | "upint" | "downint" => {
                        self.expect("(")?;
                        let inner = Box::new(self.expr()?);
                        self.expect(")")?;
                        let node = match word.as_str() {
                            "up" => Node::UpClose(inner),
                            "down" => Node::DownClose(inner),
                            "upint" => Node::UpInterior(inner),
                            _ => Node::DownInterior(inner),
                        };
                        Ok(done(node, self))
                    }
                    "proj" => {
                        self.expect("{")?;
                        let mut letters = Vec::new();
                        loop {
                            self.skip_ws();
                            match self.peek() {
                                Some('}') => break,
                                Some(',') => self.pos += 1,
                                Some(c) => {
                                    let j = self.alphabet.index_of(c).ok_or_else(|| {
                                        self.error(format!("unknown letter {c:?}"))
                                    })?;
                                    letters.push(j);
                                    self.pos += 1;
                                }
                                None => return Err(self.error("unclosed letter set")),
                            }
                        }
                        self.expect("}")?;
                        letters.sort_unstable();
                        letters.dedup();
                        self.expect("(")?;
                        let inner = Box::new(self.expr()?);
                        self.expect(")")?;
                        Ok(done(Node::Projection(letters, inner), self))
                    }
                    _ if word.chars().count() == 1 => {
                        let letter = self.alphabet.index_of(c).ok_or_else(|| {
                            ParseError::new(start, format!("unknown letter {c:?}"))
                        })?;
                        self.expect("{")?;
                        let first = self.nat()?;
                        let counts = if self.eat("+") {
                            let period = self.nat()?;
                            UnarySet::progression(first, period)
                                .map_err(|_| self.error("period must be positive"))?
                        } else {
                            UnarySet::singleton(first)
                        };
                        self.expect("}")?;
                        Ok(done(Node::Unary { letter, counts }, self))
                    }
                    _ => Err(ParseError::new(start, format!("unknown keyword {word:?}"))),
                }
            }
            Some(c) => Err(self.error(format!("unexpected {c:?}"))),
        }
    }
}

/// Evaluates an expression to a canonical grid over the declared alphabet.
/// Projections keep the full alphabet: the erased letters get count zero.
pub fn eval(e: &LangExpr, alphabet: &Alphabet) -> Result<GridAutomaton, EvalError> {
    let k = alphabet.size();
    let at = |source: comreg_core::Error| EvalError {
        span: e.span.clone(),
        source,
    };
    let sub = |x: &LangExpr| eval(x, alphabet);
    Ok(match &e.node {
        Node::Unary { letter, counts } => {
            GridAutomaton::letter_language(k, *letter, counts.clone()).map_err(at)?
        }
        Node::Word(v) => GridAutomaton::word_class(v),
        Node::SigmaStar => GridAutomaton::sigma_star(k),
        Node::Empty => GridAutomaton::empty(k),
        Node::Epsilon => GridAutomaton::epsilon(k),
        Node::Complement(x) => sub(x)?.complement(),
        Node::Shuffle(x, y) => sub(x)?.shuffle(&sub(y)?).map_err(at)?,
        Node::Intersection(x, y) => sub(x)?.intersection(&sub(y)?).map_err(at)?,
        Node::Union(x, y) => sub(x)?.union(&sub(y)?).map_err(at)?,
        Node::UpClose(x) => sub(x)?.upward_closure(),
        Node::DownClose(x) => sub(x)?.downward_closure(),
        Node::UpInterior(x) => sub(x)?.upward_interior(),
        Node::DownInterior(x) => sub(x)?.downward_interior(),
        Node::Projection(letters, x) => {
            embed(&sub(x)?.project(letters).map_err(at)?, letters, k).map_err(at)?
        }
    })
}

/// Reads a grid over the letters `letters` as a language over `k` letters.
pub fn embed(g: &GridAutomaton, letters: &[usize], k: usize) -> comreg_core::Result<GridAutomaton> {
    let summands = g.decompose().into_iter().map(|parts| {
        let mut full = vec![UnarySet::singleton(0); k];
        for (set, &j) in parts.into_iter().zip(letters) {
            full[j] = set;
        }
        full
    });
    GridAutomaton::from_products(k, summands)
}

pub fn parse_and_eval(text: &str, alphabet: &Alphabet) -> Result<GridAutomaton, crate::Error> {
    let e = parse(text, alphabet)?;
    Ok(eval(&e, alphabet)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use comreg_core::dfa::grids_equivalent;

    fn ab() -> Alphabet {
        Alphabet::new("ab").unwrap()
    }

    fn grid(text: &str) -> GridAutomaton {
        parse_and_eval(text, &ab()).unwrap()
    }

    #[test]
    fn parity_language() {
        let g = grid("a{0+2} <> b{0+2} | a{0+4} <> b{0+1}");
        let v = g.index_period();
        assert_eq!(v.index_vector, vec![0, 0]);
        assert_eq!(v.period_vector, vec![4, 2]);
    }

    #[test]
    fn precedence() {
        assert_eq!(
            grid("a{1} | a{2} <> b{1} & a{2} <> b{0+1}"),
            grid("a{1} | ((a{2} <> b{1}) & (a{2} <> b{0+1}))")
        );
        assert_eq!(grid("!a{1} <> b{1}"), grid("(!a{1}) <> b{1}"));
        assert_eq!(grid("!!a{1}"), grid("a{1}"));
    }

    #[test]
    fn atoms() {
        assert_eq!(grid("eps"), GridAutomaton::epsilon(2));
        assert_eq!(grid("empty"), GridAutomaton::empty(2));
        assert_eq!(grid("sigma*"), GridAutomaton::sigma_star(2));
        assert_eq!(grid("[1,1]"), grid("a{1} <> b{1}"));
        assert_eq!(grid("a{0}"), GridAutomaton::epsilon(2));
    }

    #[test]
    fn projection_stays_in_the_alphabet() {
        assert_eq!(grid("proj{a}(sigma*)"), grid("a{0+1}"));
        assert_eq!(grid("proj{a,b}(a{1} <> b{2})"), grid("a{1} <> b{2}"));
        let l = grid("a{0+2} <> b{0+2} | a{0+4} <> b{0+1}");
        assert_eq!(
            grid("proj{b}(a{0+2} <> b{0+2} | a{0+4} <> b{0+1})"),
            grid("b{0+1}")
        );
        assert_eq!(
            grid("proj{a}(a{0+2} <> b{0+2} | a{0+4} <> b{0+1})"),
            grid("a{0+2}")
        );
        assert!(l.alphabet_size() == 2);
    }

    #[test]
    fn closures() {
        let up = grid("up(b{2+2} | b{1} <> a{1+2})");
        let expected = grid("b{2+1} | b{1+1} <> a{1+1}");
        assert!(grids_equivalent(&up, &expected).unwrap());
        assert_eq!(grid("upint(b{2+2} | b{1} <> a{1+2})"), grid("empty"));
        assert_eq!(grid("downint(sigma*)"), grid("sigma*"));
        assert_eq!(grid("down(a{3})"), grid("a{0} | a{1} | a{2} | a{3}"));
    }

    #[test]
    fn errors_carry_positions() {
        let err = |t: &str| parse(t, &ab()).unwrap_err();
        assert_eq!(err("").message, "empty expression");
        assert_eq!(err("c{1}").position, 0);
        assert_eq!(err("a{1} | c{1}").position, 7);
        assert_eq!(err("a{1").position, 3);
        assert_eq!(err("a{1+0}").position, 5);
        assert_eq!(err("a{1} b{2}").position, 5);
        assert_eq!(err("[1,2,3]").position, 0);
        assert_eq!(err("foo(a{1})").position, 0);
        assert!(err("up(a{1}").message.contains("\")\""));
        assert_eq!(
            err("a{1} |").to_string(),
            "parse error at column 7: unexpected end of input"
        );
    }

    #[test]
    fn alphabets() {
        assert!(Alphabet::new("").is_err());
        assert!(Alphabet::new("aa").is_err());
        assert!(Alphabet::new("a1").is_err());
        assert_eq!(Alphabet::new("xyz").unwrap().to_string(), "xyz");
    }
}
