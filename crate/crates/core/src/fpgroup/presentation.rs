use std::fmt;
use std::str::FromStr;

use super::FpGroupError;

/// A word over signed generator letters: generator `i` (0-based) is written
/// `i + 1` and its inverse `-(i + 1)`.
pub type Word = Vec<i32>;

/// Generators and relators. Relator powers are stored expanded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generator_names: Vec<String>,
    relators: Vec<Word>,
}

const DEFAULT_NAMES: [&str; 6] = ["x", "y", "z", "w", "u", "v"];

impl Presentation {
    /// Builds a presentation with generators named `x, y, z, ...`.
    pub fn new(generator_count: usize, relators: Vec<Word>) -> Result<Self, FpGroupError> {
        let names = (0..generator_count)
            .map(|i| {
                DEFAULT_NAMES
                    .get(i)
                    .map(|s| s.to_string())
                    .unwrap_or_else(|| format!("g{i}"))
            })
            .collect();
        Self::with_names(names, relators)
    }

    pub fn with_names(generator_names: Vec<String>, relators: Vec<Word>) -> Result<Self, FpGroupError> {
        if generator_names.is_empty() {
            return Err(FpGroupError::NoGenerators);
        }
        let n = generator_names.len() as i32;
        for r in &relators {
            if r.is_empty() {
                return Err(FpGroupError::EmptyRelator);
            }
            if let Some(&bad) = r.iter().find(|&&l| l == 0 || l.abs() > n) {
                return Err(FpGroupError::GeneratorOutOfRange(bad));
            }
        }
        Ok(Self {
            generator_names,
            relators,
        })
    }

    pub fn generator_count(&self) -> usize {
        self.generator_names.len()
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    fn render_word(&self, w: &Word) -> String {
        let mut parts = Vec::new();
        let mut i = 0;
        while i < w.len() {
            let letter = w[i];
            let mut run = 1;
            while i + run < w.len() && w[i + run] == letter {
                run += 1;
            }
            let name = &self.generator_names[(letter.unsigned_abs() - 1) as usize];
            let exp = if letter < 0 { -(run as i64) } else { run as i64 };
            parts.push(if exp == 1 { name.clone() } else { format!("{name}^{exp}") });
            i += run;
        }
        parts.join("*")
    }
}

/// Renders as `<x,y | x^4, y^3, ...>` with repeated letters collapsed into
/// powers. Bracketed powers of longer subwords are not recovered.
impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|w| self.render_word(w)).collect();
        write!(f, "<{} | {}>", self.generator_names.join(","), rels.join(", "))
    }
}

impl FromStr for Presentation {
    type Err = FpGroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Parser::new(s).presentation()
    }
}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
    names: Vec<String>,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Self {
            src,
            bytes: src.as_bytes(),
            pos: 0,
            names: Vec::new(),
        }
    }

    fn err(&self, message: impl Into<String>) -> FpGroupError {
        FpGroupError::Parse {
            position: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), FpGroupError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected `{}`", c as char)))
        }
    }

    fn ident(&mut self) -> Result<String, FpGroupError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len()
            && (self.bytes[self.pos].is_ascii_alphanumeric() || self.bytes[self.pos] == b'_')
        {
            self.pos += 1;
        }
        if start == self.pos || self.bytes[start].is_ascii_digit() {
            self.pos = start;
            return Err(self.err("expected a generator name"));
        }
        Ok(self.src[start..self.pos].to_string())
    }

    fn integer(&mut self) -> Result<i64, FpGroupError> {
        self.skip_ws();
        let start = self.pos;
        if self.bytes.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        self.src[start..self.pos].parse().map_err(|_| {
            self.pos = start;
            self.err("expected an integer exponent")
        })
    }

    fn presentation(mut self) -> Result<Presentation, FpGroupError> {
        self.expect(b'<')?;
        loop {
            let name = self.ident()?;
            if self.names.contains(&name) {
                return Err(self.err(format!("duplicate generator `{name}`")));
            }
            self.names.push(name);
            match self.peek() {
                Some(b',') => self.pos += 1,
                _ => break,
            }
        }
        self.expect(b'|')?;
        let mut relators = Vec::new();
        if self.peek() != Some(b'>') {
            loop {
                let start = self.pos;
                let word = self.term()?;
                if word.is_empty() {
                    self.pos = start;
                    return Err(self.err("relator expands to the empty word"));
                }
                relators.push(word);
                match self.peek() {
                    Some(b',') => self.pos += 1,
                    _ => break,
                }
            }
        }
        self.expect(b'>')?;
        if self.peek().is_some() {
            return Err(self.err("trailing input"));
        }
        Presentation::with_names(self.names, relators)
    }

    fn term(&mut self) -> Result<Word, FpGroupError> {
        let mut word = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            word.extend(self.factor()?);
        }
        Ok(word)
    }

    fn factor(&mut self) -> Result<Word, FpGroupError> {
        let base = if self.peek() == Some(b'(') {
            self.pos += 1;
            let w = self.term()?;
            self.expect(b')')?;
            w
        } else {
            let name = self.ident()?;
            let idx = self
                .names
                .iter()
                .position(|n| *n == name)
                .ok_or_else(|| self.err(format!("unknown generator `{name}`")))?;
            vec![idx as i32 + 1]
        };
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let exp = self.integer()?;
        let unit: Word = if exp < 0 {
            base.iter().rev().map(|l| -l).collect()
        } else {
            base
        };
        let mut out = Vec::with_capacity(unit.len() * exp.unsigned_abs() as usize);
        for _ in 0..exp.unsigned_abs() {
            out.extend_from_slice(&unit);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_powers_and_brackets() {
        let p: Presentation = "<x,y | x^4, y^3, (x*y)^8, x^2*(x*y)^4>".parse().unwrap();
        assert_eq!(p.generator_count(), 2);
        assert_eq!(p.relators()[0], vec![1, 1, 1, 1]);
        assert_eq!(p.relators()[2].len(), 16);
        assert_eq!(p.relators()[3], vec![1, 1, 1, 2, 1, 2, 1, 2, 1, 2]);
    }

    #[test]
    fn negative_exponents_invert() {
        let p: Presentation = "<x,y | y*x^2*y^-1*x^2, (x*y)^-2>".parse().unwrap();
        assert_eq!(p.relators()[0], vec![2, 1, 1, -2, 1, 1]);
        assert_eq!(p.relators()[1], vec![-2, -1, -2, -1]);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!("<x | y^2>".parse::<Presentation>(), Err(FpGroupError::Parse { .. })));
        assert!(matches!("<x | x^0>".parse::<Presentation>(), Err(FpGroupError::Parse { .. })));
        assert!(matches!("<x | x^2".parse::<Presentation>(), Err(FpGroupError::Parse { .. })));
        assert!(matches!("<x,x | x>".parse::<Presentation>(), Err(FpGroupError::Parse { .. })));
        assert!(matches!("x | x".parse::<Presentation>(), Err(FpGroupError::Parse { .. })));
    }

    #[test]
    fn constructor_validates_words() {
        assert_eq!(Presentation::new(1, vec![vec![]]).unwrap_err(), FpGroupError::EmptyRelator);
        assert_eq!(
            Presentation::new(1, vec![vec![2]]).unwrap_err(),
            FpGroupError::GeneratorOutOfRange(2)
        );
        assert_eq!(Presentation::new(0, vec![]).unwrap_err(), FpGroupError::NoGenerators);
    }

    #[test]
    fn display_collapses_runs() {
        let p: Presentation = "<x,y | x^4, y*x^2*y^-1*x^2>".parse().unwrap();
        assert_eq!(p.to_string(), "<x,y | x^4, y*x^2*y^-1*x^2>");
    }
}
