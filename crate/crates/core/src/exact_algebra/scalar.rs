use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// A Gaussian rational `re + im·i` with arbitrary-precision parts.
///
/// Both parts are kept in lowest terms with positive denominators, so
/// structural equality is mathematical equality.
///
/// ```
/// use nahmkit::exact_algebra::GaussScalar;
///
/// let a: GaussScalar = "1/2+3/4i".parse().unwrap();
/// let b = a.conj();
/// assert_eq!((&a * &b).to_string(), "13/16");
/// ```
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussScalar {
    re: BigRational,
    im: BigRational,
}

impl GaussScalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussScalar { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        GaussScalar { re, im: BigRational::zero() }
    }

    pub fn from_i64(v: i64) -> Self {
        Self::real(BigRational::from_integer(BigInt::from(v)))
    }

    /// The rational `num/den`. Panics if `den == 0`.
    pub fn frac(num: i64, den: i64) -> Self {
        Self::real(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_parts(re: i64, im: i64) -> Self {
        GaussScalar {
            re: BigRational::from_integer(BigInt::from(re)),
            im: BigRational::from_integer(BigInt::from(im)),
        }
    }

    pub fn i() -> Self {
        Self::from_parts(0, 1)
    }

    pub fn zero() -> Self {
        GaussScalar::default()
    }

    pub fn one() -> Self {
        Self::from_i64(1)
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.im.is_zero() && self.re.is_one()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussScalar { re: self.re.clone(), im: -&self.im }
    }

    /// `|z|²`, always a nonnegative rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.im.is_zero() {
            return Some(Self::real(self.re.recip()));
        }
        let n = self.norm_sqr();
        Some(GaussScalar { re: &self.re / &n, im: -&self.im / &n })
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (ratio_to_f64(&self.re), ratio_to_f64(&self.im))
    }
}

fn ratio_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

fn write_ratio(f: &mut fmt::Formatter<'_>, r: &BigRational) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GaussScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_ratio(f, &self.re)?;
        if !self.im.is_zero() {
            f.write_str(if self.im.is_negative() { "-" } else { "+" })?;
            write_ratio(f, &self.im.abs())?;
            f.write_str("i")?;
        }
        Ok(())
    }
}

impl fmt::Debug for GaussScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_ratio(s: &str) -> Result<BigRational, Error> {
    let bad = || Error::Parse(format!("bad rational literal {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.trim().parse().map_err(|_| bad())?;
    let d: BigInt = d.trim().parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(n, d))
}

fn parse_imag(s: &str) -> Result<BigRational, Error> {
    // `s` has the trailing `i` and is either empty, a sign, or a rational.
    match s {
        "" | "+" => Ok(BigRational::one()),
        "-" => Ok(-BigRational::one()),
        _ => parse_ratio(s),
    }
}

impl FromStr for GaussScalar {
    type Err = Error;

    /// Accepts `a`, `a/b`, `ci`, `c/di`, `i`, `-i` and `a/b±c/di`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty scalar literal".into()));
        }
        let Some(body) = s.strip_suffix('i') else {
            return Ok(Self::real(parse_ratio(&s)?));
        };
        // split at the last sign that is not the leading one
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(p, _)| p)
            .last();
        match split {
            Some(p) => Ok(GaussScalar { re: parse_ratio(&body[..p])?, im: parse_imag(&body[p..])? }),
            None => Ok(GaussScalar { re: BigRational::zero(), im: parse_imag(body)? }),
        }
    }
}

impl From<i64> for GaussScalar {
    fn from(v: i64) -> Self {
        Self::from_i64(v)
    }
}

impl From<BigRational> for GaussScalar {
    fn from(v: BigRational) -> Self {
        Self::real(v)
    }
}

impl<'a> Add<&'a GaussScalar> for &'a GaussScalar {
    type Output = GaussScalar;
    fn add(self, o: &GaussScalar) -> GaussScalar {
        GaussScalar { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl<'a> Sub<&'a GaussScalar> for &'a GaussScalar {
    type Output = GaussScalar;
    fn sub(self, o: &GaussScalar) -> GaussScalar {
        GaussScalar { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl<'a> Mul<&'a GaussScalar> for &'a GaussScalar {
    type Output = GaussScalar;
    fn mul(self, o: &GaussScalar) -> GaussScalar {
        if self.is_zero() || o.is_zero() {
            return GaussScalar::zero();
        }
        if self.im.is_zero() && o.im.is_zero() {
            return GaussScalar::real(&self.re * &o.re);
        }
        GaussScalar {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl<'a> Div<&'a GaussScalar> for &'a GaussScalar {
    type Output = GaussScalar;
    /// Panics on division by zero, like integer division.
    fn div(self, o: &GaussScalar) -> GaussScalar {
        if o.im.is_zero() {
            if o.re.is_zero() {
                panic!("division by zero GaussScalar");
            }
            return GaussScalar { re: &self.re / &o.re, im: &self.im / &o.re };
        }
        self * &o.inv().expect("nonzero")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<GaussScalar> for GaussScalar {
            type Output = GaussScalar;
            fn $m(self, o: GaussScalar) -> GaussScalar {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a GaussScalar> for GaussScalar {
            type Output = GaussScalar;
            fn $m(self, o: &GaussScalar) -> GaussScalar {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<GaussScalar> for &'a GaussScalar {
            type Output = GaussScalar;
            fn $m(self, o: GaussScalar) -> GaussScalar {
                self.$m(&o)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for GaussScalar {
    type Output = GaussScalar;
    fn neg(self) -> GaussScalar {
        GaussScalar { re: -self.re, im: -self.im }
    }
}

impl Neg for &GaussScalar {
    type Output = GaussScalar;
    fn neg(self) -> GaussScalar {
        GaussScalar { re: -&self.re, im: -&self.im }
    }
}

impl AddAssign<&GaussScalar> for GaussScalar {
    fn add_assign(&mut self, o: &GaussScalar) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl SubAssign<&GaussScalar> for GaussScalar {
    fn sub_assign(&mut self, o: &GaussScalar) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
}

impl MulAssign<&GaussScalar> for GaussScalar {
    fn mul_assign(&mut self, o: &GaussScalar) {
        *self = &*self * o;
    }
}

impl std::iter::Sum for GaussScalar {
    fn sum<I: Iterator<Item = GaussScalar>>(iter: I) -> Self {
        let mut acc = GaussScalar::zero();
        for x in iter {
            acc += &x;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_form_round_trips() {
        for s in ["0", "-3", "1/2", "1/2+3/4i", "-1-2i", "0+1i", "5/3-1/7i"] {
            let v: GaussScalar = s.parse().unwrap();
            assert_eq!(v.to_string(), s);
        }
    }

    #[test]
    fn accepts_loose_imaginary_forms() {
        assert_eq!("i".parse::<GaussScalar>().unwrap(), GaussScalar::i());
        assert_eq!("-i".parse::<GaussScalar>().unwrap(), -GaussScalar::i());
        assert_eq!("2/4i".parse::<GaussScalar>().unwrap().to_string(), "0+1/2i");
        assert_eq!("1+i".parse::<GaussScalar>().unwrap(), GaussScalar::from_parts(1, 1));
        assert_eq!("-1/2-i".parse::<GaussScalar>().unwrap().to_string(), "-1/2-1i");
    }

    #[test]
    fn rejects_garbage() {
        assert!("".parse::<GaussScalar>().is_err());
        assert!("1/0".parse::<GaussScalar>().is_err());
        assert!("z".parse::<GaussScalar>().is_err());
    }

    #[test]
    fn field_ops() {
        let a = GaussScalar::from_parts(1, 2);
        let b = GaussScalar::from_parts(3, -1);
        assert_eq!(&a * &b, GaussScalar::from_parts(5, 5));
        assert_eq!(&(&a / &b) * &b, a);
        assert_eq!(a.inv().unwrap() * &a, GaussScalar::one());
        assert!(GaussScalar::zero().inv().is_none());
    }
}
