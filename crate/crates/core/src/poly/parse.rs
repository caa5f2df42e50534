//! Text form of polynomials: `-121/48*x1 + x2^2`, `x0*x1*x2`, `3`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::rat::Rat;
use super::{Monomial, MultiPoly, PolyError};

struct Cursor<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn error(&self, reason: impl Into<String>) -> PolyError {
        PolyError::Parse {
            input: self.src.to_string(),
            reason: format!("{} at byte {}", reason.into(), self.pos),
        }
    }

    fn digits(&mut self) -> Result<&'a str, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        Ok(&self.src[start..self.pos])
    }
}

impl MultiPoly {
    /// Parses the canonical text form. With `nvars = None` the arity is one
    /// more than the largest variable index mentioned (at least 1).
    pub fn parse(text: &str, nvars: Option<usize>) -> Result<MultiPoly, PolyError> {
        let mut cur = Cursor {
            src: text,
            bytes: text.as_bytes(),
            pos: 0,
        };
        let mut raw: Vec<(Vec<u32>, Rat)> = Vec::new();
        let mut sign = Rat::one();
        match cur.peek() {
            Some(b'-') => {
                sign = -sign;
                cur.pos += 1;
            }
            Some(b'+') => cur.pos += 1,
            None => return Err(cur.error("empty polynomial")),
            _ => {}
        }
        loop {
            let (exps, coeff) = parse_term(&mut cur)?;
            raw.push((exps, coeff * &sign));
            match cur.peek() {
                None => break,
                Some(b'+') => sign = Rat::one(),
                Some(b'-') => sign = -Rat::one(),
                Some(_) => return Err(cur.error("expected '+' or '-'")),
            }
            cur.pos += 1;
        }
        let used = raw.iter().map(|(e, _)| e.len()).max().unwrap_or(0);
        let n = match nvars {
            Some(n) if used > n => {
                return Err(PolyError::Parse {
                    input: text.to_string(),
                    reason: format!("variable x{} outside {n} variables", used - 1),
                })
            }
            Some(n) => n,
            None => used.max(1),
        };
        let terms = raw.into_iter().map(|(mut e, c)| {
            e.resize(n, 0);
            (Monomial::new(e), c)
        });
        Ok(MultiPoly::from_terms(n, terms))
    }
}

fn parse_term(cur: &mut Cursor<'_>) -> Result<(Vec<u32>, Rat), PolyError> {
    let mut exps: Vec<u32> = Vec::new();
    let mut coeff = Rat::one();
    loop {
        match cur.peek() {
            Some(b'x') => {
                cur.pos += 1;
                let idx: usize = cur
                    .digits()?
                    .parse()
                    .map_err(|_| cur.error("bad variable index"))?;
                let mut e: u32 = 1;
                if cur.peek() == Some(b'^') {
                    cur.pos += 1;
                    e = cur.digits()?.parse().map_err(|_| cur.error("bad exponent"))?;
                }
                if exps.len() <= idx {
                    exps.resize(idx + 1, 0);
                }
                exps[idx] += e;
            }
            Some(c) if c.is_ascii_digit() => {
                let num: BigInt = cur.digits()?.parse().expect("digits");
                let mut value = Rat::from_integer(num);
                if cur.peek() == Some(b'/') {
                    cur.pos += 1;
                    let den: BigInt = cur.digits()?.parse().expect("digits");
                    if den.is_zero() {
                        return Err(cur.error("zero denominator"));
                    }
                    value /= Rat::from_integer(den);
                }
                coeff *= value;
            }
            _ => return Err(cur.error("expected a coefficient or variable")),
        }
        if cur.peek() == Some(b'*') {
            cur.pos += 1;
        } else {
            return Ok((exps, coeff));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::rat::rat;
    use super::*;

    #[test]
    fn parses_fractions_and_powers() {
        let p = MultiPoly::parse("-121/48*x1 + x2^2", None).unwrap();
        assert_eq!(p.nvars(), 3);
        assert_eq!(p.coeff(&Monomial::new(vec![0, 1, 0])), rat(-121, 48));
        assert_eq!(p.to_string(), "x2^2 - 121/48*x1");
    }

    #[test]
    fn collects_like_terms() {
        let p = MultiPoly::parse("x0*x1 + x1*x0 - 2*x0*x1 + 5", Some(2)).unwrap();
        assert_eq!(p.to_string(), "5");
    }

    #[test]
    fn rejects_garbage() {
        assert!(MultiPoly::parse("", None).is_err());
        assert!(MultiPoly::parse("x0 +", None).is_err());
        assert!(MultiPoly::parse("y1", None).is_err());
        assert!(MultiPoly::parse("1/0*x0", None).is_err());
        assert!(MultiPoly::parse("x3", Some(2)).is_err());
    }
}
