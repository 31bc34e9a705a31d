//! Human-readable polynomial syntax: `3/2*x1^2*x3 - x2 + 7`, variables `x1..xn`.

use super::{Monomial, Polynomial, Rational};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed};
use std::fmt;

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms().iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono = format_monomial(m);
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{a}*{mono}")?;
            }
        }
        Ok(())
    }
}

fn format_monomial(m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(format!("x{}", i + 1)),
            _ => parts.push(format!("x{}^{}", i + 1, e)),
        }
    }
    parts.join("*")
}

impl Polynomial {
    /// Parses the text syntax in `n` variables.
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        let toks = tokenize(s)?;
        let mut pos = 0;
        let mut terms = Vec::new();
        if toks.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        loop {
            let mut sign = Rational::one();
            while let Some(Tok::Sign(neg)) = toks.get(pos) {
                if *neg {
                    sign = -sign;
                }
                pos += 1;
            }
            let (m, c) = parse_term(n, &toks, &mut pos)?;
            terms.push((m, c * sign));
            match toks.get(pos) {
                None => break,
                Some(Tok::Sign(_)) => continue,
                Some(t) => return Err(Error::Parse(format!("unexpected token {t:?}"))),
            }
        }
        Ok(Polynomial::from_terms(n, terms))
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Var(usize),
    Sign(bool),
    Star,
    Caret,
    Slash,
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let b = s.as_bytes();
    let mut i = 0;
    let mut out = Vec::new();
    let digits = |i: &mut usize| {
        let st = *i;
        while *i < b.len() && b[*i].is_ascii_digit() {
            *i += 1;
        }
        &s[st..*i]
    };
    while i < b.len() {
        match b[i] {
            b' ' | b'\t' | b'\n' => i += 1,
            b'+' => {
                out.push(Tok::Sign(false));
                i += 1
            }
            b'-' => {
                out.push(Tok::Sign(true));
                i += 1
            }
            b'*' => {
                out.push(Tok::Star);
                i += 1
            }
            b'^' => {
                out.push(Tok::Caret);
                i += 1
            }
            b'/' => {
                out.push(Tok::Slash);
                i += 1
            }
            b'x' => {
                i += 1;
                let d = digits(&mut i);
                let k: usize = d
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad variable at byte {i}")))?;
                if k == 0 {
                    return Err(Error::Parse("variables are numbered from x1".into()));
                }
                out.push(Tok::Var(k - 1));
            }
            c if c.is_ascii_digit() => {
                let d = digits(&mut i);
                out.push(Tok::Num(d.parse().expect("digits")));
            }
            c => return Err(Error::Parse(format!("unexpected character {:?}", c as char))),
        }
    }
    Ok(out)
}

fn parse_term(n: usize, toks: &[Tok], pos: &mut usize) -> Result<(Monomial, Rational)> {
    let mut m = Monomial::one(n);
    let mut c = Rational::one();
    loop {
        match toks.get(*pos) {
            Some(Tok::Num(a)) => {
                *pos += 1;
                let mut q = Rational::from_integer(a.clone());
                if let Some(Tok::Slash) = toks.get(*pos) {
                    *pos += 1;
                    match toks.get(*pos) {
                        Some(Tok::Num(d)) if !num_traits::Zero::is_zero(d) => {
                            q = Rational::new(a.clone(), d.clone());
                            *pos += 1;
                        }
                        _ => return Err(Error::Parse("bad denominator".into())),
                    }
                }
                c *= q;
            }
            Some(Tok::Var(k)) => {
                let k = *k;
                if k >= n {
                    return Err(Error::Parse(format!("variable x{} out of range for n = {n}", k + 1)));
                }
                *pos += 1;
                let mut e = 1u32;
                if let Some(Tok::Caret) = toks.get(*pos) {
                    *pos += 1;
                    match toks.get(*pos) {
                        Some(Tok::Num(d)) => {
                            e = d.try_into().map_err(|_| Error::Parse("exponent too large".into()))?;
                            *pos += 1;
                        }
                        _ => return Err(Error::Parse("missing exponent".into())),
                    }
                }
                m.set_exp(k, m.exp(k) + e);
            }
            t => return Err(Error::Parse(format!("expected a factor, found {t:?}"))),
        }
        match toks.get(*pos) {
            Some(Tok::Star) => *pos += 1,
            Some(Tok::Var(_)) => {}
            _ => return Ok((m, c)),
        }
    }
}
