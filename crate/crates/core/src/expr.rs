//! Parser for the scalar and polynomial text syntax.
//!
//! ```text
//! expr   := [+|-] term ((+|-) term)*
//! term   := factor (* factor)*
//! factor := atom [^ uint]
//! atom   := INT [/ INT] | zeta(INT) | x | y | z | ( expr )
//! ```

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{HomPoly, Mono};
use crate::scalar::CycScalar;

/// Sparse trivariate polynomial without a homogeneity constraint.
pub(crate) type Sparse = BTreeMap<Mono, CycScalar>;

fn constant(c: CycScalar) -> Sparse {
    let mut s = Sparse::new();
    if !c.is_zero() {
        s.insert([0, 0, 0], c);
    }
    s
}

fn add_into(acc: &mut Sparse, other: &Sparse, negate: bool) {
    for (m, c) in other {
        let c = if negate { c.neg() } else { c.clone() };
        let sum = match acc.get(m) {
            Some(old) => old.add(&c),
            None => c,
        };
        if sum.is_zero() {
            acc.remove(m);
        } else {
            acc.insert(*m, sum);
        }
    }
}

fn mul(a: &Sparse, b: &Sparse) -> Sparse {
    let mut out = Sparse::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let m = [ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2]];
            let term = constant_term(m, ca.mul(cb));
            add_into(&mut out, &term, false);
        }
    }
    out
}

fn constant_term(m: Mono, c: CycScalar) -> Sparse {
    let mut s = Sparse::new();
    if !c.is_zero() {
        s.insert(m, c);
    }
    s
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.to_string() })
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

    fn eat(&mut self, ch: u8) -> bool {
        if self.peek() == Some(ch) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, ch: u8) -> Result<()> {
        if self.eat(ch) {
            Ok(())
        } else {
            self.err(&format!("expected '{}'", ch as char))
        }
    }

    fn uint(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        let text = core::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(text.parse::<BigInt>().unwrap())
    }

    fn small_uint(&mut self) -> Result<u32> {
        let start = self.pos;
        let v = self.uint()?;
        u32::try_from(v).or_else(|_| {
            self.pos = start;
            self.err("integer too large")
        })
    }

    fn expr(&mut self) -> Result<Sparse> {
        let mut acc = Sparse::new();
        let mut negate = false;
        if self.eat(b'-') {
            negate = true;
        } else {
            self.eat(b'+');
        }
        loop {
            let t = self.term()?;
            add_into(&mut acc, &t, negate);
            if self.eat(b'+') {
                negate = false;
            } else if self.eat(b'-') {
                negate = true;
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Sparse> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            let f = self.factor()?;
            acc = mul(&acc, &f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Sparse> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let e = self.small_uint()?;
            let mut acc = constant(CycScalar::one());
            for _ in 0..e {
                acc = mul(&acc, &base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Sparse> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.uint()?;
                let den = if self.eat(b'/') {
                    let at = self.pos;
                    let d = self.uint()?;
                    if d.is_zero() {
                        self.pos = at;
                        return self.err("zero denominator");
                    }
                    d
                } else {
                    BigInt::from(1)
                };
                Ok(constant(CycScalar::from_rational(BigRational::new(num, den))))
            }
            Some(b'x') | Some(b'y') | Some(b'z') => {
                let c = self.src[self.pos];
                // reject identifiers such as "xy" or "zeta" handled below
                if self.src.get(self.pos + 1).is_some_and(|b| b.is_ascii_alphanumeric()) {
                    if self.src[self.pos..].starts_with(b"zeta") {
                        return self.zeta();
                    }
                    return self.err("unknown identifier");
                }
                self.pos += 1;
                let mut m = [0, 0, 0];
                m[(c - b'x') as usize] = 1;
                Ok(constant_term(m, CycScalar::one()))
            }
            Some(_) => self.err("unexpected character"),
            None => self.err("unexpected end of input"),
        }
    }

    fn zeta(&mut self) -> Result<Sparse> {
        self.pos += 4;
        self.expect(b'(')?;
        let at = self.pos;
        let n = self.small_uint()?;
        if n == 0 {
            self.pos = at;
            return self.err("zeta order must be positive");
        }
        self.expect(b')')?;
        Ok(constant(CycScalar::root_of_unity(n)?))
    }
}

pub(crate) fn parse_sparse(s: &str) -> Result<Sparse> {
    let mut p = Parser { src: s.as_bytes(), pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(e)
}

pub(crate) fn parse_scalar(s: &str) -> Result<CycScalar> {
    let e = parse_sparse(s)?;
    let mut out = CycScalar::zero();
    for (m, c) in e {
        if m != [0, 0, 0] {
            return Err(Error::Parse { pos: 0, msg: String::from("scalar contains a variable") });
        }
        out = c;
    }
    Ok(out)
}

pub(crate) fn parse_hom(s: &str) -> Result<HomPoly> {
    let e = parse_sparse(s)?;
    HomPoly::from_terms(e)
}
