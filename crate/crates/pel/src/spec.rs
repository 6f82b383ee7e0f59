//! The group-spec mini-language: `sym:n`, `alt:n`, `psl2:q`, `pgl2:q`,
//! `pgammal2:q`, `m10`, `xt:t`, `yt:t`, `meta:q,m,p,n`, `dp:(SPEC),t` and
//! `prod:(SPEC),(SPEC)`.

use std::fmt;
use std::str::FromStr;

use pel_core::arith::{is_prime, prime_power};
use pel_core::classical::{classical_group, m10};
use pel_core::constructions::{
    alternating, direct_power, direct_product, metacyclic_affine, subdirect_x_t, symmetric,
    wreath_y_t, MAX_AFFINE_DEGREE, MAX_BLOCK_DEGREE,
};
use pel_core::{ClassicalKind, GroupHandle};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    Sym(u64),
    Alt(u64),
    Classical(ClassicalKind, u64),
    M10,
    Xt(u32),
    Yt(u32),
    Meta { q: u64, m: u32, p: u64, n: u32 },
    DirectPower(Box<GroupSpec>, u32),
    Product(Box<GroupSpec>, Box<GroupSpec>),
}

/// A parse failure at a byte offset of the input.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid group spec at byte {offset}: {message}")]
pub struct SpecError {
    pub offset: usize,
    pub message: String,
}

fn fail<T>(offset: usize, message: impl Into<String>) -> Result<T, SpecError> {
    Err(SpecError {
        offset,
        message: message.into(),
    })
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<u8> {
        self.src.as_bytes().get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), SpecError> {
        match self.peek() {
            Some(x) if x == c => {
                self.pos += 1;
                Ok(())
            }
            Some(x) => fail(self.pos, format!("expected '{}', found '{}'", c as char, x as char)),
            None => fail(self.pos, format!("expected '{}', found end of input", c as char)),
        }
    }

    fn number(&mut self) -> Result<(usize, u64), SpecError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return fail(start, "expected a number");
        }
        match self.src[start..self.pos].parse() {
            Ok(v) => Ok((start, v)),
            Err(_) => fail(start, "number too large"),
        }
    }

    fn small(&mut self) -> Result<(usize, u32), SpecError> {
        let (at, v) = self.number()?;
        match u32::try_from(v) {
            Ok(v) => Ok((at, v)),
            Err(_) => fail(at, "number too large"),
        }
    }

    fn nested(&mut self) -> Result<GroupSpec, SpecError> {
        self.expect(b'(')?;
        let inner = self.spec()?;
        self.expect(b')')?;
        Ok(inner)
    }

    fn spec(&mut self) -> Result<GroupSpec, SpecError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_alphanumeric()) {
            self.pos += 1;
        }
        let family = &self.src[start..self.pos];
        if family == "m10" {
            return Ok(GroupSpec::M10);
        }
        let known = [
            "sym", "alt", "psl2", "pgl2", "pgammal2", "xt", "yt", "meta", "dp", "prod",
        ];
        if !known.contains(&family) {
            return fail(start, format!("unknown family '{family}'"));
        }
        self.expect(b':')?;
        let spec = match family {
            "sym" | "alt" => {
                let (at, n) = self.number()?;
                if n == 0 || n > MAX_BLOCK_DEGREE as u64 {
                    return fail(at, format!("degree must lie in 1..={MAX_BLOCK_DEGREE}"));
                }
                if family == "sym" {
                    GroupSpec::Sym(n)
                } else {
                    GroupSpec::Alt(n)
                }
            }
            "psl2" | "pgl2" | "pgammal2" => {
                let (at, q) = self.number()?;
                let kind = match family {
                    "psl2" => ClassicalKind::Psl2,
                    "pgl2" => ClassicalKind::Pgl2,
                    _ => ClassicalKind::PGammaL2,
                };
                if prime_power(q).is_none() || q < 4 {
                    return fail(at, format!("q = {q} is not a prime power >= 4"));
                }
                if q % 2 == 0 && kind != ClassicalKind::Psl2 {
                    return fail(at, format!("{family} needs odd q"));
                }
                GroupSpec::Classical(kind, q)
            }
            "xt" => {
                let (at, t) = self.small()?;
                if t == 0 || 10 * t as usize > MAX_BLOCK_DEGREE {
                    return fail(at, format!("t must lie in 1..={}", MAX_BLOCK_DEGREE / 10));
                }
                GroupSpec::Xt(t)
            }
            "yt" => {
                let (at, t) = self.small()?;
                if t > 6 {
                    return fail(at, "t must lie in 0..=6");
                }
                GroupSpec::Yt(t)
            }
            "meta" => {
                let (qa, q) = self.number()?;
                self.expect(b',')?;
                let (ma, m) = self.small()?;
                self.expect(b',')?;
                let (pa, p) = self.number()?;
                self.expect(b',')?;
                let (na, n) = self.small()?;
                if !is_prime(q) || q == 2 {
                    return fail(qa, format!("q = {q} must be an odd prime"));
                }
                if m == 0 || q.checked_pow(m).is_none_or(|qm| qm > MAX_AFFINE_DEGREE) {
                    return fail(ma, format!("need 1 <= m and q^m <= {MAX_AFFINE_DEGREE}"));
                }
                if !is_prime(p) {
                    return fail(pa, format!("p = {p} is not prime"));
                }
                match p.checked_pow(n) {
                    Some(pn) if (q - 1) % pn == 0 => {}
                    _ => return fail(na, format!("{p}^{n} does not divide {q} - 1")),
                }
                GroupSpec::Meta { q, m, p, n }
            }
            "dp" => {
                let inner = self.nested()?;
                self.expect(b',')?;
                let (at, t) = self.small()?;
                if t == 0 || inner.degree().saturating_mul(t as usize) > MAX_BLOCK_DEGREE {
                    return fail(at, format!("need t >= 1 and total degree <= {MAX_BLOCK_DEGREE}"));
                }
                GroupSpec::DirectPower(Box::new(inner), t)
            }
            _ => {
                let a = self.nested()?;
                self.expect(b',')?;
                let at = self.pos;
                let b = self.nested()?;
                if a.degree() + b.degree() > MAX_BLOCK_DEGREE {
                    return fail(at, format!("total degree exceeds {MAX_BLOCK_DEGREE}"));
                }
                GroupSpec::Product(Box::new(a), Box::new(b))
            }
        };
        Ok(spec)
    }
}

impl GroupSpec {
    pub fn parse(s: &str) -> Result<Self, SpecError> {
        let mut p = Parser { src: s, pos: 0 };
        let spec = p.spec()?;
        if p.pos != s.len() {
            return fail(p.pos, "unexpected trailing input");
        }
        Ok(spec)
    }

    /// Number of points acted on.
    pub fn degree(&self) -> usize {
        match self {
            GroupSpec::Sym(n) | GroupSpec::Alt(n) => *n as usize,
            GroupSpec::Classical(_, q) => *q as usize + 1,
            GroupSpec::M10 => 10,
            GroupSpec::Xt(t) => 10 * *t as usize,
            GroupSpec::Yt(t) => 10 << t,
            GroupSpec::Meta { q, m, .. } => q.pow(*m) as usize,
            GroupSpec::DirectPower(g, t) => g.degree() * *t as usize,
            GroupSpec::Product(a, b) => a.degree() + b.degree(),
        }
    }

    pub fn build(&self) -> pel_core::Result<GroupHandle> {
        match self {
            GroupSpec::Sym(n) => symmetric(*n as usize),
            GroupSpec::Alt(n) => alternating(*n as usize),
            GroupSpec::Classical(kind, q) => classical_group(*kind, *q),
            GroupSpec::M10 => Ok(m10()?.group),
            GroupSpec::Xt(t) => {
                let m = m10()?;
                subdirect_x_t(&m.group, &m.socle, *t)
            }
            GroupSpec::Yt(t) => {
                let m = m10()?;
                wreath_y_t(&m.socle, &m.outer, *t)
            }
            GroupSpec::Meta { q, m, p, n } => metacyclic_affine(*q, *m, *p, *n),
            GroupSpec::DirectPower(g, t) => direct_power(&g.build()?, *t),
            GroupSpec::Product(a, b) => direct_product(&a.build()?, &b.build()?),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Sym(n) => write!(f, "sym:{n}"),
            GroupSpec::Alt(n) => write!(f, "alt:{n}"),
            GroupSpec::Classical(ClassicalKind::Psl2, q) => write!(f, "psl2:{q}"),
            GroupSpec::Classical(ClassicalKind::Pgl2, q) => write!(f, "pgl2:{q}"),
            GroupSpec::Classical(ClassicalKind::PGammaL2, q) => write!(f, "pgammal2:{q}"),
            GroupSpec::M10 => f.write_str("m10"),
            GroupSpec::Xt(t) => write!(f, "xt:{t}"),
            GroupSpec::Yt(t) => write!(f, "yt:{t}"),
            GroupSpec::Meta { q, m, p, n } => write!(f, "meta:{q},{m},{p},{n}"),
            GroupSpec::DirectPower(g, t) => write!(f, "dp:({g}),{t}"),
            GroupSpec::Product(a, b) => write!(f, "prod:({a}),({b})"),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = SpecError;

    fn from_str(s: &str) -> Result<Self, SpecError> {
        GroupSpec::parse(s)
    }
}
