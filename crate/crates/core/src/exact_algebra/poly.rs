use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Signed;

use super::mat::Mat;
use super::scalar::GaussScalar;
use crate::error::Error;

/// Univariate polynomial in `z` with Gaussian-rational coefficients.
///
/// Coefficients are stored in ascending order with no trailing zeros, so the
/// zero polynomial is the empty list and has degree `None` (read: −∞).
///
/// ```
/// use nahmkit::exact_algebra::Poly;
///
/// let p: Poly = "z^2 - 3z + 2".parse().unwrap();
/// assert_eq!(p.degree(), Some(2));
/// assert_eq!(Poly::zero().degree(), None);
/// ```
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<GaussScalar>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(GaussScalar::one())
    }

    /// The polynomial `z`.
    pub fn z() -> Self {
        Poly::monomial(GaussScalar::one(), 1)
    }

    pub fn constant(c: GaussScalar) -> Self {
        Poly::from_coeffs(vec![c])
    }

    pub fn monomial(c: GaussScalar, deg: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![GaussScalar::zero(); deg + 1];
        coeffs[deg] = c;
        Poly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<GaussScalar>) -> Self {
        while coeffs.last().is_some_and(GaussScalar::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        Poly::from_coeffs(cs.iter().map(|&c| GaussScalar::from_i64(c)).collect())
    }

    pub fn coeffs(&self) -> &[GaussScalar] {
        &self.coeffs
    }

    /// Coefficient of `z^i`; zero beyond the degree.
    pub fn coeff(&self, i: usize) -> GaussScalar {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// Ascending coefficients padded with zeros to length `len`.
    pub fn padded(&self, len: usize) -> Vec<GaussScalar> {
        (0..len).map(|i| self.coeff(i)).collect()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree as a signed integer with −1 for the zero polynomial.
    pub fn degree_or_neg(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(GaussScalar::is_one)
    }

    pub fn leading(&self) -> Option<&GaussScalar> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &GaussScalar) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Multiply by `z^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![GaussScalar::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(lc) => {
                let inv = lc.inv().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    pub fn conj(&self) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(GaussScalar::conj).collect())
    }

    pub fn derivative(&self) -> Poly {
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &GaussScalar::from_i64(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &GaussScalar) -> GaussScalar {
        let mut acc = GaussScalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// Matrix substitution `p(M)` by Horner's rule.
    pub fn eval_mat(&self, m: &Mat) -> Mat {
        assert!(m.is_square(), "matrix substitution needs a square matrix");
        let n = m.rows();
        let mut acc = Mat::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * m) + &Mat::identity(n).scale(c);
        }
        acc
    }

    /// Euclidean division: `self = q·d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly), Error> {
        let dd = d.degree().ok_or_else(|| Error::Domain("polynomial division by zero".into()))?;
        let lc_inv = d.leading().and_then(GaussScalar::inv).expect("nonzero");
        let mut r = self.coeffs.clone();
        let Some(sd) = self.degree() else {
            return Ok((Poly::zero(), Poly::zero()));
        };
        if sd < dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut q = vec![GaussScalar::zero(); sd - dd + 1];
        for k in (0..=sd - dd).rev() {
            let c = &r[k + dd] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k + j] -= &(&c * dc);
            }
            q[k] = c;
        }
        r.truncate(dd);
        Ok((Poly::from_coeffs(q), Poly::from_coeffs(r)))
    }

    pub fn rem(&self, d: &Poly) -> Result<Poly, Error> {
        Ok(self.div_rem(d)?.1)
    }

    /// Exact quotient; errors if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Poly) -> Result<Poly, Error> {
        let (q, r) = self.div_rem(d)?;
        if !r.is_zero() {
            return Err(Error::Domain("inexact polynomial division".into()));
        }
        Ok(q)
    }

    /// Monic gcd of two polynomials (zero only if both are zero).
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }
}

/// Monic gcd of a list of polynomials.
///
/// ```
/// use nahmkit::exact_algebra::{poly_gcd_many, Poly};
///
/// let g = poly_gcd_many(&[Poly::from_i64s(&[-1, 0, 1]), Poly::from_i64s(&[-1, 1])]).unwrap();
/// assert_eq!(g, Poly::from_i64s(&[-1, 1]));
/// ```
pub fn poly_gcd_many(ps: &[Poly]) -> Result<Poly, Error> {
    let g = ps.iter().fold(Poly::zero(), |g, p| Poly::gcd(&g, p));
    if g.is_zero() {
        return Err(Error::Domain("gcd of an all-zero list".into()));
    }
    Ok(g)
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| &self.coeff(i) + &o.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| &self.coeff(i) - &o.coeff(i)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![GaussScalar::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Poly::from_coeffs(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! poly_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, o: Poly) -> Poly {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a Poly> for Poly {
            type Output = Poly;
            fn $m(self, o: &Poly) -> Poly {
                (&self).$m(o)
            }
        }
    };
}

poly_owned!(Add, add);
poly_owned!(Sub, sub);
poly_owned!(Mul, mul);

impl fmt::Display for Poly {
    /// Human form, e.g. `z^2 - 3z + 2` or `(1+2i)z - 1/2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = if c.is_real() && c.re().is_negative() {
                (true, -c)
            } else {
                (false, c.clone())
            };
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let body = if mag.is_real() { mag.to_string() } else { format!("({mag})") };
            match d {
                0 => f.write_str(&body)?,
                _ => {
                    if !mag.is_one() {
                        f.write_str(&body)?;
                    }
                    f.write_str("z")?;
                    if d > 1 {
                        write!(f, "^{d}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl std::str::FromStr for Poly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Poly, Error> {
        super::parse::parse_poly(s)
    }
}
