//! A small language for unions of integer inequality systems over `(m, n, k)`.
//!
//! Grammar:
//!
//! ```text
//! region := system ('|' system)*
//! system := 'full' | chain (';' chain)*
//! chain  := expr (cmp expr)+
//! expr   := ['+' | '-'] atom (('+' | '-') atom)*
//! atom   := INT [var] | var
//! var    := 'm' | 'n' | 'k' | 't'
//! cmp    := '<' | '<=' | '>' | '>='
//! ```
//!
//! `a <= b < c` is read as `a <= b` and `b < c`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError, Result};
use crate::tableaux::ShiftVector;

/// `cm*m + cn*n + ck*k + ct*t + c`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct AffineForm {
    pub m: i64,
    pub n: i64,
    pub k: i64,
    pub t: i64,
    pub c: i64,
}

impl AffineForm {
    fn checked_combine(self, other: AffineForm, sign: i64) -> Option<AffineForm> {
        Some(AffineForm {
            m: self.m.checked_add(other.m.checked_mul(sign)?)?,
            n: self.n.checked_add(other.n.checked_mul(sign)?)?,
            k: self.k.checked_add(other.k.checked_mul(sign)?)?,
            t: self.t.checked_add(other.t.checked_mul(sign)?)?,
            c: self.c.checked_add(other.c.checked_mul(sign)?)?,
        })
    }

    fn eval(&self, m: i64, n: i64, k: i64, t: i64) -> i128 {
        self.m as i128 * m as i128
            + self.n as i128 * n as i128
            + self.k as i128 * k as i128
            + self.t as i128 * t as i128
            + self.c as i128
    }
}

/// `form < 0` when strict, `form <= 0` otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Inequality {
    pub form: AffineForm,
    pub strict: bool,
}

impl Inequality {
    pub fn holds(&self, m: i64, n: i64, k: i64, t: i64) -> bool {
        let v = self.form.eval(m, n, k, t);
        if self.strict {
            v < 0
        } else {
            v <= 0
        }
    }
}

/// A union of systems; each system is a conjunction of inequalities.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RegionExpr {
    pub systems: Vec<Vec<Inequality>>,
}

impl RegionExpr {
    pub fn contains(&self, m: i64, n: i64, k: i64, t: i64) -> bool {
        self.systems.iter().any(|sys| sys.iter().all(|ineq| ineq.holds(m, n, k, t)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Tok {
    Var(char),
    Int(i64),
    Plus,
    Minus,
    Lt,
    Le,
    Gt,
    Ge,
    Semi,
    Bar,
    Full,
}

fn err(pos: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Region { pos, msg: msg.into() }
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'm' | b'n' | b'k' | b't' => {
                out.push((start, Tok::Var(c as char)));
                i += 1;
            }
            b'f' => {
                if src[i..].starts_with("full") {
                    out.push((start, Tok::Full));
                    i += 4;
                } else {
                    return Err(err(start, "unexpected identifier"));
                }
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let v: i64 = src[start..i].parse().map_err(|_| err(start, "integer literal out of range"))?;
                out.push((start, Tok::Int(v)));
            }
            b'+' => {
                out.push((start, Tok::Plus));
                i += 1;
            }
            b'-' => {
                out.push((start, Tok::Minus));
                i += 1;
            }
            b'<' | b'>' => {
                let eq = bytes.get(i + 1) == Some(&b'=');
                let tok = match (c, eq) {
                    (b'<', false) => Tok::Lt,
                    (b'<', true) => Tok::Le,
                    (_, false) => Tok::Gt,
                    (_, true) => Tok::Ge,
                };
                out.push((start, tok));
                i += if eq { 2 } else { 1 };
            }
            b';' => {
                out.push((start, Tok::Semi));
                i += 1;
            }
            b'|' => {
                out.push((start, Tok::Bar));
                i += 1;
            }
            _ => {
                let ch = src[i..].chars().next().unwrap_or('?');
                return Err(err(start, format!("unexpected character {ch:?}")));
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<Tok> {
        self.toks.get(self.pos).map(|&(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |&(p, _)| p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.peek();
        self.pos += 1;
        t
    }

    fn region(&mut self) -> Result<RegionExpr, ParseError> {
        let mut systems = vec![self.system()?];
        while self.peek() == Some(Tok::Bar) {
            self.bump();
            systems.push(self.system()?);
        }
        if self.pos < self.toks.len() {
            return Err(err(self.here(), "unexpected trailing input"));
        }
        Ok(RegionExpr { systems })
    }

    fn system(&mut self) -> Result<Vec<Inequality>, ParseError> {
        if self.peek() == Some(Tok::Full) {
            self.bump();
            return Ok(Vec::new());
        }
        let mut out = self.chain()?;
        while self.peek() == Some(Tok::Semi) {
            self.bump();
            out.extend(self.chain()?);
        }
        Ok(out)
    }

    fn chain(&mut self) -> Result<Vec<Inequality>, ParseError> {
        let mut lhs = self.expr()?;
        let mut out = Vec::new();
        while let Some(op @ (Tok::Lt | Tok::Le | Tok::Gt | Tok::Ge)) = self.peek() {
            let at = self.here();
            self.bump();
            let rhs = self.expr()?;
            let overflow = || err(at, "coefficient overflow");
            let ineq = match op {
                Tok::Lt | Tok::Le => {
                    Inequality { form: lhs.checked_combine(rhs, -1).ok_or_else(overflow)?, strict: op == Tok::Lt }
                }
                _ => Inequality { form: rhs.checked_combine(lhs, -1).ok_or_else(overflow)?, strict: op == Tok::Gt },
            };
            out.push(ineq);
            lhs = rhs;
        }
        if out.is_empty() {
            return Err(err(self.here(), "expected a comparison"));
        }
        Ok(out)
    }

    fn expr(&mut self) -> Result<AffineForm, ParseError> {
        let mut sign = 1;
        match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                sign = -1;
            }
            Some(Tok::Plus) => {
                self.bump();
            }
            _ => {}
        }
        let at = self.here();
        let mut acc =
            AffineForm::default().checked_combine(self.atom()?, sign).ok_or_else(|| err(at, "coefficient overflow"))?;
        loop {
            let sign = match self.peek() {
                Some(Tok::Plus) => 1,
                Some(Tok::Minus) => -1,
                _ => return Ok(acc),
            };
            self.bump();
            let at = self.here();
            acc = acc.checked_combine(self.atom()?, sign).ok_or_else(|| err(at, "coefficient overflow"))?;
        }
    }

    fn atom(&mut self) -> Result<AffineForm, ParseError> {
        let at = self.here();
        match self.bump() {
            Some(Tok::Int(v)) => {
                if let Some(Tok::Var(c)) = self.peek() {
                    self.bump();
                    Ok(var_form(c, v))
                } else {
                    Ok(AffineForm { c: v, ..AffineForm::default() })
                }
            }
            Some(Tok::Var(c)) => Ok(var_form(c, 1)),
            Some(_) => Err(err(at, "expected an integer or one of m, n, k, t")),
            None => Err(err(at, "unexpected end of input")),
        }
    }
}

fn var_form(c: char, coeff: i64) -> AffineForm {
    let mut f = AffineForm::default();
    match c {
        'm' => f.m = coeff,
        'n' => f.n = coeff,
        'k' => f.k = coeff,
        _ => f.t = coeff,
    }
    f
}

/// Parses a region expression such as `-t<n<=0; m<=0 | full`.
pub fn parse_region(src: &str) -> Result<RegionExpr, ParseError> {
    let toks = tokenize(src)?;
    if toks.is_empty() {
        return Err(err(0, "empty region"));
    }
    Parser { toks, pos: 0, end: src.len() }.region()
}

/// A parsed region with its parameter `t` fixed.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawRegion", into = "RawRegion")]
pub struct RegionPredicate {
    source: String,
    t: i64,
    expr: RegionExpr,
}

#[derive(Serialize, Deserialize)]
struct RawRegion {
    region: String,
    t: i64,
}

impl TryFrom<RawRegion> for RegionPredicate {
    type Error = Error;
    fn try_from(raw: RawRegion) -> Result<Self> {
        RegionPredicate::new(&raw.region, raw.t)
    }
}

impl From<RegionPredicate> for RawRegion {
    fn from(r: RegionPredicate) -> Self {
        RawRegion { region: r.source, t: r.t }
    }
}

impl RegionPredicate {
    pub fn new(src: &str, t: i64) -> Result<Self> {
        let expr = parse_region(src)?;
        Ok(RegionPredicate { source: src.to_string(), t, expr })
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn t(&self) -> i64 {
        self.t
    }

    pub fn expr(&self) -> &RegionExpr {
        &self.expr
    }

    pub fn contains(&self, m: i64, n: i64, k: i64) -> bool {
        self.expr.contains(m, n, k, self.t)
    }

    /// Membership of a rank-3 shift read as `(m, n, k) = (z21, z22, z11)`.
    pub fn contains_point(&self, z: &ShiftVector) -> bool {
        let (m, n, k) = z.mnk();
        self.contains(m, n, k)
    }
}

impl fmt::Debug for RegionPredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Region({:?}, t = {})", self.source, self.t)
    }
}
