//! The field ℂ(x) at desk scale: quotients of Gaussian-rational polynomials
//! in canonical reduced form, with the involution that conjugates
//! coefficients and fixes x.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::gaussian::{gaussian, rational, Gaussian};
use super::poly::Poly;
use crate::error::{Error, Result};

/// Canonical fraction: `gcd(num, den) = 1`, `den` monic and nonzero; the
/// zero element is `0/1`.  Canonical forms are unique, so `==` decides
/// equality in the field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    fn canonical(num: Poly, den: Poly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return RationalFunction { num: Poly::zero(), den: Poly::one() };
        }
        let g = Poly::gcd(&num, &den);
        let num = num.divrem(&g).expect("gcd of a nonzero pair is nonzero").0;
        let den = den.divrem(&g).expect("gcd of a nonzero pair is nonzero").0;
        let lead_inv = den.leading().expect("denominator is nonzero").inv();
        RationalFunction { num: num.scale(&lead_inv), den: den.scale(&lead_inv) }
    }

    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::RationalDivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    pub fn from_poly(p: Poly) -> Self {
        RationalFunction { num: p, den: Poly::one() }
    }

    pub fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    pub fn x() -> Self {
        Self::from_poly(Poly::x())
    }

    /// The imaginary unit as a constant function.
    pub fn i() -> Self {
        Self::constant(gaussian(0, 1))
    }

    pub fn constant(c: Gaussian) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn integer(n: i64) -> Self {
        Self::constant(gaussian(n, 0))
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.degree().map_or(true, |d| d == 0) && self.den.is_one()
    }

    pub fn constant_value(&self) -> Option<Gaussian> {
        self.is_constant().then(|| self.num.coeff(0))
    }

    /// Coefficient conjugation in numerator and denominator.
    pub fn involution(&self) -> Self {
        Self::canonical(self.num.conj(), self.den.conj())
    }

    pub fn is_self_adjoint(&self) -> bool {
        self.involution() == *self
    }

    /// Quotient rule, exact.
    pub fn derivative(&self) -> Self {
        let num = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::canonical(num, &self.den * &self.den)
    }

    pub fn scale(&self, c: &Gaussian) -> Self {
        Self::canonical(self.num.scale(c), self.den.clone())
    }

    pub fn recip(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::RationalDivisionByZero);
        }
        Ok(Self::canonical(&self.num * &other.den, &self.den * &other.num))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// The self-adjoint decomposition `f = s₁ + i·s₂` with `sⱼ* = sⱼ`.
    pub fn re_im_split(&self) -> (Self, Self) {
        let star = self.involution();
        let half = Gaussian::from(rational(1, 2));
        let minus_half_i = Gaussian::new(BigRational::zero(), rational(-1, 2));
        let s1 = (self + &star).scale(&half);
        let s2 = (self - &star).scale(&minus_half_i);
        (s1, s2)
    }
}

impl Add<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RationalFunction::canonical(num, &self.den * &rhs.den)
    }
}

impl Sub<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        let num = &(&self.num * &rhs.den) - &(&rhs.num * &self.den);
        RationalFunction::canonical(num, &self.den * &rhs.den)
    }
}

impl Mul<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::canonical(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        // single-term pieces bind tighter than '/' once '^' is applied, so
        // only multi-term polynomials need the parentheses
        let num = if self.num.term_count() > 1 {
            format!("({})", self.num)
        } else {
            self.num.to_string()
        };
        let den = if self.den.term_count() > 1 {
            format!("({})", self.den)
        } else {
            self.den.to_string()
        };
        write!(f, "{num}/{den}")
    }
}

const MAX_EXPONENT: u32 = 512;

struct Parser<'a> {
    input: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, reason: impl Into<String>) -> Error {
        Error::ParseRational { input: self.input.to_string(), reason: reason.into() }
    }

    fn peek(&mut self) -> Option<u8> {
        while self.bytes.get(self.pos).map_or(false, u8::is_ascii_whitespace) {
            self.pos += 1;
        }
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) {
        self.pos += 1;
    }

    fn expr(&mut self) -> Result<RationalFunction> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RationalFunction> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Some(b'/') => {
                    self.bump();
                    acc = acc.div(&self.unary()?)?;
                }
                // juxtaposition multiplies: `3i`, `2x`, `(1+i)x`
                Some(c) if c == b'(' || c == b'i' || c == b'x' || c.is_ascii_digit() => {
                    acc = &acc * &self.unary()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RationalFunction> {
        match self.peek() {
            Some(b'-') => {
                self.bump();
                Ok(-&self.unary()?)
            }
            Some(b'+') => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RationalFunction> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.bump();
            let digits = self.digits()?;
            let e: u32 = digits
                .parse()
                .ok()
                .filter(|e| *e <= MAX_EXPONENT)
                .ok_or_else(|| self.err(format!("exponent `{digits}` is out of range")))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RationalFunction> {
        match self.peek() {
            Some(b'i') => {
                self.bump();
                Ok(RationalFunction::i())
            }
            Some(b'x') => {
                self.bump();
                Ok(RationalFunction::x())
            }
            Some(b'(') => {
                self.bump();
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("missing closing parenthesis"));
                }
                self.bump();
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.digits()?;
                let n: BigInt = digits.parse().expect("digit run parses as an integer");
                Ok(RationalFunction::constant(Gaussian::from(BigRational::from_integer(n))))
            }
            Some(c) => Err(self.err(format!("unexpected character `{}`", c as char))),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn digits(&mut self) -> Result<String> {
        if !self.peek().map_or(false, |c| c.is_ascii_digit()) {
            return Err(self.err("expected digits"));
        }
        let start = self.pos;
        while self.bytes.get(self.pos).map_or(false, u8::is_ascii_digit) {
            self.pos += 1;
        }
        Ok(self.input[start..self.pos].to_string())
    }
}

impl FromStr for RationalFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser { input: s, bytes: s.as_bytes(), pos: 0 };
        let value = p.expr()?;
        if p.peek().is_some() {
            return Err(p.err(format!("unexpected trailing input at position {}", p.pos)));
        }
        Ok(value)
    }
}
