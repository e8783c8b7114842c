//! Series literals.
//!
//! Tensor series: `1/2*X0.X1 + -3*X2 + 1` (words are dot-separated letters).
//! Commutative series: `3/2*X0^2*X1 + 1`. A bare word or monomial has
//! coefficient one, and `-` may separate terms. Extension elements are
//! written `(x, m)` with two commutative literals.

use num::{BigInt, One};

use crate::comm::CommSeries;
use crate::error::{Error, Result};
use crate::extension::ExtElement;
use crate::index::{ExponentIndex, Word};
use crate::tensor::{TensorSeries, TruncationCtx};
use crate::Rational;

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Cursor {
            src: s.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
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
            Err(self.error(format!("expected '{}'", c as char)))
        }
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn digits(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits"))
    }

    fn usize(&mut self) -> Result<usize> {
        let d = self.digits()?;
        d.parse().map_err(|_| self.error(format!("index {d} out of range")))
    }

    fn rational(&mut self) -> Result<Rational> {
        let p: BigInt = self.digits()?.parse().expect("digits");
        if self.eat(b'/') {
            let q: BigInt = self.digits()?.parse().expect("digits");
            if q == BigInt::from(0) {
                return Err(self.error("zero denominator"));
            }
            Ok(Rational::new(p, q))
        } else {
            Ok(Rational::from_integer(p))
        }
    }

    /// `X<int>`
    fn letter(&mut self) -> Result<usize> {
        self.expect(b'X')?;
        self.usize()
    }

    fn word(&mut self) -> Result<Word> {
        let mut letters = vec![self.letter()?];
        while self.eat(b'.') {
            letters.push(self.letter()?);
        }
        Ok(Word::new(letters))
    }

    fn factor(&mut self) -> Result<(usize, u32)> {
        let j = self.letter()?;
        let e = if self.eat(b'^') {
            let d = self.digits()?;
            d.parse().map_err(|_| self.error(format!("exponent {d} out of range")))?
        } else {
            1
        };
        Ok((j, e))
    }

    fn monomial(&mut self) -> Result<ExponentIndex> {
        let mut pairs = vec![self.factor()?];
        while self.eat(b'*') {
            pairs.push(self.factor()?);
        }
        Ok(ExponentIndex::from_pairs(pairs))
    }

    /// Runs `term` over `[sign] term ((+|-) [sign] term)*`.
    fn series<T>(
        &mut self,
        mut term: impl FnMut(&mut Self) -> Result<(T, Rational)>,
        stop: Option<u8>,
    ) -> Result<Vec<(T, Rational)>> {
        let mut out = Vec::new();
        let mut negate = false;
        loop {
            while self.eat(b'-') {
                negate = !negate;
            }
            let (t, c) = term(self)?;
            out.push((t, if negate { -c } else { c }));
            negate = false;
            if self.eat(b'+') {
                continue;
            }
            if self.eat(b'-') {
                negate = true;
                continue;
            }
            if self.at_end() || (stop.is_some() && self.peek() == stop) {
                return Ok(out);
            }
            return Err(self.error("expected '+', '-' or end of literal"));
        }
    }
}

fn tensor_term(c: &mut Cursor<'_>) -> Result<(Word, Rational)> {
    if c.peek() == Some(b'X') {
        return Ok((c.word()?, Rational::one()));
    }
    let coeff = c.rational()?;
    if c.eat(b'*') {
        Ok((c.word()?, coeff))
    } else {
        Ok((Word::empty(), coeff))
    }
}

fn comm_term(c: &mut Cursor<'_>) -> Result<(ExponentIndex, Rational)> {
    if c.peek() == Some(b'X') {
        return Ok((c.monomial()?, Rational::one()));
    }
    let coeff = c.rational()?;
    if c.eat(b'*') {
        Ok((c.monomial()?, coeff))
    } else {
        Ok((ExponentIndex::one(), coeff))
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let mut c = Cursor::new(s);
    let negative = c.eat(b'-');
    let r = c.rational()?;
    if !c.at_end() {
        return Err(c.error("trailing input after rational"));
    }
    Ok(if negative { -r } else { r })
}

pub fn parse_tensor_terms(s: &str) -> Result<Vec<(Word, Rational)>> {
    Cursor::new(s).series(tensor_term, None)
}

pub fn parse_comm_terms(s: &str) -> Result<Vec<(ExponentIndex, Rational)>> {
    Cursor::new(s).series(comm_term, None)
}

/// Parses a tensor literal; terms outside `ctx` are truncated away unless
/// `strict`.
pub fn parse_tensor(ctx: TruncationCtx, s: &str, strict: bool) -> Result<TensorSeries> {
    let terms = parse_tensor_terms(s)?;
    if strict {
        TensorSeries::try_from_terms(ctx, terms)
    } else {
        Ok(TensorSeries::from_terms(ctx, terms))
    }
}

pub fn parse_comm(ctx: TruncationCtx, s: &str, strict: bool) -> Result<CommSeries> {
    let terms = parse_comm_terms(s)?;
    if strict {
        CommSeries::try_from_terms(ctx, terms)
    } else {
        Ok(CommSeries::from_terms(ctx, terms))
    }
}

/// `(x, m)`
pub fn parse_ext(ctx: TruncationCtx, s: &str, strict: bool) -> Result<ExtElement> {
    let mut c = Cursor::new(s);
    c.expect(b'(')?;
    let x = c.series(comm_term, Some(b','))?;
    c.expect(b',')?;
    let m = c.series(comm_term, Some(b')'))?;
    c.expect(b')')?;
    if !c.at_end() {
        return Err(c.error("trailing input after extension element"));
    }
    let build = |terms| {
        if strict {
            CommSeries::try_from_terms(ctx, terms)
        } else {
            Ok(CommSeries::from_terms(ctx, terms))
        }
    };
    Ok(ExtElement::new(build(x)?, build(m)?))
}

/// Replaces every `{N}` placeholder with `n`.
pub fn substitute_index(template: &str, n: usize) -> String {
    template.replace("{N}", &n.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn ctx() -> TruncationCtx {
        TruncationCtx::new(5, 4)
    }

    #[test]
    fn tensor_literals() {
        let a = parse_tensor(ctx(), "1/2*X0.X1 + -3*X2 + 1", false).unwrap();
        assert_eq!(a.coeff(&Word::from([0, 1])), rat(1, 2));
        assert_eq!(a.coeff(&Word::from([2])), rat(-3, 1));
        assert_eq!(a.coeff(&Word::empty()), rat(1, 1));
        let b = parse_tensor(ctx(), "X3 - X1", false).unwrap();
        assert_eq!(b.coeff(&Word::letter(1)), rat(-1, 1));
        assert_eq!(parse_tensor(ctx(), "0", false).unwrap(), TensorSeries::zero(ctx()));
    }

    #[test]
    fn comm_literals() {
        let a = parse_comm(ctx(), "3/2*X0^2*X1 + 1", false).unwrap();
        assert_eq!(a.coeff(&ExponentIndex::from_pairs([(0, 2), (1, 1)])), rat(3, 2));
        assert_eq!(a.constant_term(), rat(1, 1));
        let b = parse_comm(ctx(), "X1*X0*X1", false).unwrap();
        assert_eq!(b.coeff(&ExponentIndex::from_pairs([(0, 1), (1, 2)])), rat(1, 1));
    }

    #[test]
    fn ext_literals() {
        let e = parse_ext(ctx(), "(X1 - X4, 1)", false).unwrap();
        assert_eq!(e.m, CommSeries::one(ctx()));
        assert_eq!(e.x.coeff(&ExponentIndex::var(4)), rat(-1, 1));
        assert!(parse_ext(ctx(), "(X1, 1", false).is_err());
    }

    #[test]
    fn strict_mode_rejects_out_of_window_terms() {
        assert!(parse_tensor(ctx(), "X9", true).is_err());
        assert!(parse_tensor(ctx(), "X9", false).unwrap().is_zero());
        assert!(parse_comm(ctx(), "X0^5", true).is_err());
    }

    #[test]
    fn errors_carry_positions() {
        match parse_tensor(ctx(), "2*Y", false) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_tensor(ctx(), "1/0", false).is_err());
        assert!(parse_tensor(ctx(), "X1 X2", false).is_err());
        assert!(parse_rational("3/4x").is_err());
        assert_eq!(parse_rational("-3/4").unwrap(), rat(-3, 4));
    }

    #[test]
    fn placeholder_substitution() {
        let s = substitute_index("X{N} - X1", 7);
        assert_eq!(s, "X7 - X1");
    }

    mod props {
        use super::*;
        use crate::random::SampleGen;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn print_parse_round_trip(seed in any::<u64>()) {
                let mut g = SampleGen::new(seed);
                let a = g.tensor(ctx(), 4, 6);
                let printed = a.to_string();
                let back = parse_tensor(ctx(), &printed, true).unwrap();
                prop_assert_eq!(&back, &a);
                prop_assert_eq!(back.to_string(), printed);

                let c = g.comm(ctx(), 4, 6);
                let printed = c.to_string();
                let back = parse_comm(ctx(), &printed, true).unwrap();
                prop_assert_eq!(&back, &c);
                prop_assert_eq!(back.to_string(), printed);
            }
        }
    }
}
