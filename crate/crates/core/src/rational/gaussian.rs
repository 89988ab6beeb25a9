//! Gaussian-rational scalars: complex numbers whose real and imaginary
//! parts are arbitrary-precision rationals.  All arithmetic is exact.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::Zero;

pub type Gaussian = Complex<BigRational>;

/// `n/d` as an exact rational; `d` must be nonzero.
pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Exact complex scalar from integer real and imaginary parts.
pub fn gaussian(re: i64, im: i64) -> Gaussian {
    Complex::new(
        BigRational::from_integer(BigInt::from(re)),
        BigRational::from_integer(BigInt::from(im)),
    )
}

pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// `im·i` rendered so the expression parser reads it back; may start with
/// a minus sign.  Non-integer parts keep their sign inside the parentheses.
fn imaginary_string(im: &BigRational) -> String {
    let one = BigRational::from_integer(BigInt::from(1));
    if *im == one {
        "i".into()
    } else if *im == -&one {
        "-i".into()
    } else if im.is_integer() {
        format!("{}i", im.numer())
    } else {
        format!("({})i", format_rational(im))
    }
}

/// Plain-text form accepted by the rational-function parser: `3`, `-1/2`,
/// `i`, `2i`, `(1/2)i`, `2+3i`, `1/2-i`, ...
pub fn format_gaussian(c: &Gaussian) -> String {
    match (c.re.is_zero(), c.im.is_zero()) {
        (true, true) => "0".into(),
        (false, true) => format_rational(&c.re),
        (true, false) => imaginary_string(&c.im),
        (false, false) => {
            if c.im < BigRational::zero() {
                let tail = imaginary_string(&-&c.im);
                format!("{}-{}", format_rational(&c.re), tail)
            } else {
                format!("{}+{}", format_rational(&c.re), imaginary_string(&c.im))
            }
        }
    }
}

/// True when both parts are nonzero, i.e. the printed form contains an
/// interior sign and needs parentheses inside a larger expression.
pub fn is_compound(c: &Gaussian) -> bool {
    !c.re.is_zero() && !c.im.is_zero()
}
