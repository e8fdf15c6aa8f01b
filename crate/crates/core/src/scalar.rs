//! Exact scalar rings: rationals and Laurent polynomials ℚ[s, s⁻¹].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(k: i64) -> Rational {
    Rational::from_integer(BigInt::from(k))
}

/// Commutative ring with exact equality, as needed by the matrix code.
pub trait Ring:
    Clone
    + PartialEq
    + Eq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn try_inverse(&self) -> Option<Self>;

    fn from_rational(q: Rational) -> Self;

    fn from_int(k: i64) -> Self {
        Self::from_rational(int(k))
    }
}

impl Ring for Rational {
    fn try_inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn from_rational(q: Rational) -> Self {
        q
    }
}

/// A Laurent polynomial with rational coefficients. Zero coefficients are
/// never stored, so structural equality is ring equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Laurent {
    terms: BTreeMap<i32, Rational>,
}

impl Laurent {
    pub fn constant(q: Rational) -> Self {
        Self::monomial(q, 0)
    }

    pub fn monomial(c: Rational, exponent: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exponent, c);
        }
        Self { terms }
    }

    /// The variable itself.
    pub fn var() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    /// `c·s^k`
    pub fn term(c: i64, exponent: i32) -> Self {
        Self::monomial(int(c), exponent)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &Rational)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn coefficient(&self, exponent: i32) -> Rational {
        self.terms.get(&exponent).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn min_exponent(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// The constant term, if the limit at zero exists.
    /// `Err(e)` carries the most negative exponent otherwise.
    pub fn limit_at_zero(&self) -> std::result::Result<Rational, i32> {
        match self.min_exponent() {
            Some(e) if e < 0 => Err(e),
            _ => Ok(self.coefficient(0)),
        }
    }

    /// The rational value, when the polynomial has no non-constant terms.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    pub fn evaluate(&self, at: &Rational) -> Option<Rational> {
        if at.is_zero() {
            return self.limit_at_zero().ok();
        }
        let mut acc = Rational::zero();
        for (&e, c) in &self.terms {
            acc += c * pow(at, e);
        }
        Some(acc)
    }

    /// Substitute `s = t²`: every exponent is doubled.
    pub fn double_exponents(&self) -> Self {
        Self { terms: self.terms.iter().map(|(&e, c)| (2 * e, c.clone())).collect() }
    }

    /// Evaluate a polynomial in `t` at a point where `t² = square`. Only
    /// defined when every exponent is even.
    pub fn evaluate_at_square(&self, square: &Rational) -> Option<Rational> {
        if self.terms.keys().any(|e| e % 2 != 0) {
            return None;
        }
        let halved = Self { terms: self.terms.iter().map(|(&e, c)| (e / 2, c.clone())).collect() };
        halved.evaluate(square)
    }

    fn insert_add(&mut self, e: i32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }
}

fn pow(x: &Rational, e: i32) -> Rational {
    let base = if e < 0 { x.recip() } else { x.clone() };
    num_traits::pow(base, e.unsigned_abs() as usize)
}

impl Add for Laurent {
    type Output = Laurent;

    fn add(mut self, rhs: Laurent) -> Laurent {
        for (e, c) in rhs.terms {
            self.insert_add(e, c);
        }
        self
    }
}

impl Sub for Laurent {
    type Output = Laurent;

    fn sub(self, rhs: Laurent) -> Laurent {
        self + (-rhs)
    }
}

impl Neg for Laurent {
    type Output = Laurent;

    fn neg(self) -> Laurent {
        Laurent { terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect() }
    }
}

impl Mul for Laurent {
    type Output = Laurent;

    fn mul(self, rhs: Laurent) -> Laurent {
        let mut out = Laurent::default();
        for (&a, x) in &self.terms {
            for (&b, y) in &rhs.terms {
                out.insert_add(a + b, x * y);
            }
        }
        out
    }
}

impl Zero for Laurent {
    fn zero() -> Self {
        Laurent::default()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for Laurent {
    fn one() -> Self {
        Laurent::constant(Rational::one())
    }
}

impl Ring for Laurent {
    fn try_inverse(&self) -> Option<Self> {
        if !self.is_monomial() {
            return None;
        }
        let (&e, c) = self.terms.iter().next()?;
        Some(Laurent::monomial(c.recip(), -e))
    }

    fn from_rational(q: Rational) -> Self {
        Laurent::constant(q)
    }
}

impl serde::Serialize for Laurent {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl From<Rational> for Laurent {
    fn from(q: Rational) -> Self {
        Laurent::constant(q)
    }
}

fn fmt_term(c: &Rational, e: i32, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let power = match e {
        0 => String::new(),
        1 => "s".to_string(),
        _ => format!("s^{e}"),
    };
    if e == 0 {
        write!(f, "{c}")
    } else if c.is_one() {
        write!(f, "{power}")
    } else {
        write!(f, "{c}*{power}")
    }
}

/// Terms in descending exponent order: `s^2 - s + 1/2`, `-s`, `3/2*s^-1`.
impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (&e, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            fmt_term(&c.abs(), e, f)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Laurent({self})")
    }
}

fn parse_rational(s: &str) -> Result<Rational> {
    let bad = |_| Error::Parse(format!("bad rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(bad)?;
            let d: BigInt = d.trim().parse().map_err(bad)?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.trim().parse().map_err(bad)?)),
    }
}

fn parse_term(s: &str) -> Result<(i32, Rational)> {
    let s = s.trim();
    let Some(spos) = s.find('s') else {
        return Ok((0, parse_rational(s)?));
    };
    let coeff = match s[..spos].trim().strip_suffix('*') {
        Some(c) => parse_rational(c)?,
        None if s[..spos].trim().is_empty() => Rational::one(),
        None => return Err(Error::Parse(format!("bad term {s:?}"))),
    };
    let rest = &s[spos + 1..];
    let e = if rest.is_empty() {
        1
    } else {
        rest.strip_prefix('^')
            .and_then(|x| x.parse::<i32>().ok())
            .ok_or_else(|| Error::Parse(format!("bad exponent in {s:?}")))?
    };
    Ok((e, coeff))
}

impl FromStr for Laurent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (mut sign, mut rest) = match s.strip_prefix('-') {
            Some(r) => (-1, r.trim_start()),
            None => (1, s),
        };
        let mut out = Laurent::zero();
        loop {
            let plus = rest.find(" + ");
            let minus = rest.find(" - ");
            let cut = match (plus, minus) {
                (Some(p), Some(m)) => Some(p.min(m)),
                (p, m) => p.or(m),
            };
            let (head, next) = match cut {
                Some(c) => (&rest[..c], Some((&rest[c + 1..c + 2], &rest[c + 3..]))),
                None => (rest, None),
            };
            let (e, c) = parse_term(head)?;
            out.insert_add(e, if sign < 0 { -c } else { c });
            match next {
                Some((op, tail)) => {
                    sign = if op == "-" { -1 } else { 1 };
                    rest = tail;
                }
                None => break,
            }
        }
        Ok(out)
    }
}

pub fn parse_rational_str(s: &str) -> Result<Rational> {
    parse_rational(s)
}
