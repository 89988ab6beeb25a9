//! Univariate polynomials over the Gaussian rationals: exact Euclidean
//! arithmetic, derivatives, and the coefficient-conjugation involution.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::gaussian::{format_gaussian, is_compound, Gaussian};
use crate::error::{Error, Result};

/// Coefficients in ascending degree order with no trailing zeros; the zero
/// polynomial is the empty list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Gaussian>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Gaussian>) -> Self {
        while coeffs.last().map_or(false, Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Gaussian::one())
    }

    pub fn constant(c: Gaussian) -> Self {
        Poly::new(vec![c])
    }

    pub fn x() -> Self {
        Poly::new(vec![Gaussian::zero(), Gaussian::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Gaussian {
        self.coeffs.get(k).cloned().unwrap_or_else(Gaussian::zero)
    }

    pub fn coeffs(&self) -> &[Gaussian] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&Gaussian> {
        self.coeffs.last()
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// Coefficient-wise conjugation; the involution of ℂ[x] fixing x.
    pub fn conj(&self) -> Poly {
        Poly::new(self.coeffs.iter().map(Gaussian::conj).collect())
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &Gaussian::from(BigRational::from_integer(BigInt::from(k))))
                .collect(),
        )
    }

    pub fn scale(&self, s: &Gaussian) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(lead) => self.scale(&lead.inv()),
        }
    }

    pub fn eval(&self, at: &Gaussian) -> Gaussian {
        self.coeffs.iter().rev().fold(Gaussian::zero(), |acc, c| &(&acc * at) + c)
    }

    /// Exact Euclidean division: `self = q·d + r` with `deg r < deg d`.
    pub fn divrem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        if d.is_zero() {
            return Err(Error::RationalDivisionByZero);
        }
        let dd = d.coeffs.len() - 1;
        let lead_inv = d.coeffs.last().unwrap().inv();
        let mut q = vec![Gaussian::zero(); self.coeffs.len().saturating_sub(dd)];
        let mut r = self.coeffs.clone();
        let trim = |v: &mut Vec<Gaussian>| {
            while v.last().map_or(false, Zero::is_zero) {
                v.pop();
            }
        };
        trim(&mut r);
        while r.len() > dd {
            let shift = r.len() - 1 - dd;
            let factor = r.last().unwrap() * &lead_inv;
            for (j, c) in d.coeffs.iter().enumerate() {
                let term = c * &factor;
                r[shift + j] = &r[shift + j] - &term;
            }
            q[shift] = factor;
            trim(&mut r);
        }
        Ok((Poly::new(q), Poly::new(r)))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).expect("divisor is nonzero").1;
            a = b;
            b = r;
        }
        a.monic()
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect())
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| &self.coeff(k) - &rhs.coeff(k)).collect())
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Gaussian::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let term = a * b;
                out[i + j] = &out[i + j] + &term;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Gaussian::one())
    }
}

/// One printed term, parseable on its own; `-x^2`, `(2+3i)*x`, `1/2`, ...
fn term_string(c: &Gaussian, k: usize) -> String {
    if k == 0 {
        let s = format_gaussian(c);
        return if is_compound(c) { format!("({s})") } else { s };
    }
    let var = if k == 1 { "x".to_string() } else { format!("x^{k}") };
    if c.is_one() {
        var
    } else if (-c).is_one() {
        format!("-{var}")
    } else if is_compound(c) {
        format!("({})*{var}", format_gaussian(c))
    } else {
        format!("{}*{var}", format_gaussian(c))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let term = term_string(c, k);
            if out.is_empty() {
                out = term;
            } else if let Some(rest) = term.strip_prefix('-') {
                out.push('-');
                out.push_str(rest);
            } else {
                out.push('+');
                out.push_str(&term);
            }
        }
        write!(f, "{out}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::gaussian::gaussian;

    fn p(coeffs: &[(i64, i64)]) -> Poly {
        Poly::new(coeffs.iter().map(|&(re, im)| gaussian(re, im)).collect())
    }

    fn battery() -> Vec<Poly> {
        vec![
            Poly::zero(),
            Poly::one(),
            Poly::x(),
            p(&[(3, 0), (0, 1)]),
            p(&[(-1, 2), (0, 0), (1, 0)]),
            p(&[(0, 0), (2, -3), (0, 0), (1, 1)]),
        ]
    }

    #[test]
    fn division_reconstructs_and_shrinks_the_remainder() {
        for a in battery() {
            for b in battery() {
                if b.is_zero() {
                    assert!(matches!(a.divrem(&b), Err(Error::RationalDivisionByZero)));
                    continue;
                }
                let (q, r) = a.divrem(&b).unwrap();
                assert_eq!(&(&q * &b) + &r, a);
                assert!(r.degree() < b.degree() || r.is_zero());
            }
        }
    }

    #[test]
    fn gcd_is_monic_and_divides_both_inputs() {
        let f = p(&[(-1, 0), (0, 0), (1, 0)]); // x^2 - 1
        let g = p(&[(-1, 0), (1, 0)]); // x - 1
        assert_eq!(Poly::gcd(&f, &g), g);
        let h = p(&[(0, -1), (1, 0)]); // x - i
        let a = &f * &h;
        let b = &g * &h;
        let d = Poly::gcd(&a, &b);
        assert_eq!(d, (&g * &h).monic());
        assert!(a.divrem(&d).unwrap().1.is_zero());
        assert!(b.divrem(&d).unwrap().1.is_zero());
        assert_eq!(Poly::gcd(&Poly::zero(), &f), f.monic());
        assert!(Poly::gcd(&Poly::zero(), &Poly::zero()).is_zero());
    }

    #[test]
    fn derivative_satisfies_the_product_rule() {
        for a in battery() {
            for b in battery() {
                let lhs = (&a * &b).derivative();
                let rhs = &(&a.derivative() * &b) + &(&a * &b.derivative());
                assert_eq!(lhs, rhs);
            }
        }
        assert_eq!(p(&[(1, 0), (0, 0), (1, 0)]).derivative(), p(&[(0, 0), (2, 0)]));
    }

    #[test]
    fn conjugation_is_an_involution_commuting_with_everything() {
        for a in battery() {
            assert_eq!(a.conj().conj(), a);
            assert_eq!(a.conj().derivative(), a.derivative().conj());
            for b in battery() {
                assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
                assert_eq!((&a + &b).conj(), &a.conj() + &b.conj());
            }
        }
    }

    #[test]
    fn display_renders_signs_and_powers() {
        assert_eq!(Poly::zero().to_string(), "0");
        assert_eq!(p(&[(-1, 2)]).to_string(), "(-1+2i)");
        assert_eq!(p(&[(3, 0), (-1, 0), (1, 0)]).to_string(), "x^2-x+3");
        assert_eq!(p(&[(0, 0), (0, 1)]).to_string(), "i*x");
        assert_eq!(p(&[(1, 0), (2, 3)]).to_string(), "(2+3i)*x+1");
    }
}
