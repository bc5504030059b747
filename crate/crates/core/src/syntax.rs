//! Text syntax for objects.
//!
//! ```text
//! object  := [ "push:" | "pull:" ] sum
//! sum     := term { "+" term }
//! term    := ( "(" sum ")" | product ) [ "@" int ]
//! product := [ uint "*" ] factor { "*" factor }
//! factor  := "O" | "0" | "U[" weight "]" | "Q[" weight "]"
//! ```
//!
//! Weights use the canonical comma syntax and are padded with zeros to the
//! rank of `U` or `Q`. `@s` shifts by `s`. Whitespace is ignored.

use crate::error::{Error, Result};
use crate::homspaces::{GrObject, TotObject};
use crate::tensor::BundleExpression;
use crate::young::Weight;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParsedObject {
    Gr(GrObject),
    Tot(TotObject),
}

pub fn parse_object(s: &str, k: usize, n: usize) -> Result<ParsedObject> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if let Some(rest) = compact.strip_prefix("push:") {
        return Ok(ParsedObject::Tot(TotObject::pushforward(parse_gr_object(rest, k, n)?)));
    }
    if let Some(rest) = compact.strip_prefix("pull:") {
        return Ok(ParsedObject::Tot(TotObject::pullback(parse_gr_object(rest, k, n)?)));
    }
    Ok(ParsedObject::Gr(parse_gr_object(&compact, k, n)?))
}

/// Parses an object on the Grassmannian; `push:`/`pull:` are rejected.
pub fn parse_gr_object(s: &str, k: usize, n: usize) -> Result<GrObject> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut p = Parser {
        src: compact.as_bytes(),
        pos: 0,
        k,
        n,
    };
    let obj = p.sum()?;
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(obj)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    k: usize,
    n: usize,
}

impl Parser<'_> {
    fn error(&self, what: &str) -> Error {
        let src = String::from_utf8_lossy(self.src);
        Error::Parse(format!("{what} at position {} in object '{src}'", self.pos))
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn sum(&mut self) -> Result<GrObject> {
        let mut acc = self.term()?;
        while self.eat(b'+') {
            acc = acc.direct_sum(&self.term()?)?;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<GrObject> {
        let obj = if self.eat(b'(') {
            let inner = self.sum()?;
            self.expect(b')')?;
            inner
        } else {
            GrObject::new(self.product()?, 0)
        };
        if self.eat(b'@') {
            let s = self.integer()?;
            return Ok(obj.shifted(s));
        }
        Ok(obj)
    }

    fn product(&mut self) -> Result<BundleExpression> {
        let digits = self.src[self.pos..].iter().take_while(|c| c.is_ascii_digit()).count();
        let mult = if digits > 0 && self.src.get(self.pos + digits) == Some(&b'*') {
            let m = self.integer()?;
            self.expect(b'*')?;
            Some(u64::try_from(m).map_err(|_| self.error("negative multiplicity"))?)
        } else {
            None
        };
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = acc.tensor(&self.factor()?)?;
        }
        match mult {
            Some(m) => acc.scale(m),
            None => Ok(acc),
        }
    }

    fn factor(&mut self) -> Result<BundleExpression> {
        let (k, n) = (self.k, self.n);
        match self.peek() {
            Some(b'O') => {
                self.pos += 1;
                BundleExpression::trivial(k, n)
            }
            Some(b'0') => {
                self.pos += 1;
                BundleExpression::zero(k, n)
            }
            Some(b'U') => {
                self.pos += 1;
                let w = self.bracketed_weight(k)?;
                BundleExpression::u_schur(k, n, w)
            }
            Some(b'Q') => {
                self.pos += 1;
                let w = self.bracketed_weight(n - k)?;
                BundleExpression::q_schur(k, n, w)
            }
            _ => Err(self.error("expected O, 0, U[...] or Q[...]")),
        }
    }

    fn bracketed_weight(&mut self, rank: usize) -> Result<Weight> {
        self.expect(b'[')?;
        let start = self.pos;
        while self.peek().is_some_and(|c| c != b']') {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii slice");
        self.expect(b']')?;
        Weight::parse_padded(text, rank)
    }

    fn integer(&mut self) -> Result<i64> {
        let start = self.pos;
        if self.peek() == Some(b'-') {
            self.pos += 1;
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii slice");
        text.parse().map_err(|_| self.error("expected an integer"))
    }
}
