use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use super::mat::Mat;
use super::scalar::GaussScalar;

/// Matrix-valued Laurent polynomial in `z^{1/2}`.
///
/// Exponents are stored doubled, so key `3` means `z^{3/2}` and key `-2`
/// means `z^{-1}`. Terms with a zero coefficient matrix are never stored.
/// `z` is a formal real variable: conjugate transposition acts on the
/// coefficients only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentMat {
    rows: usize,
    cols: usize,
    terms: BTreeMap<i64, Mat>,
}

impl LaurentMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        LaurentMat { rows, cols, terms: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        LaurentMat::monomial(Mat::identity(n), 0)
    }

    pub fn monomial(m: Mat, exp2: i64) -> Self {
        let mut out = LaurentMat::zero(m.rows(), m.cols());
        if !m.is_zero() {
            out.terms.insert(exp2, m);
        }
        out
    }

    /// Build from `(row, col, coefficient, doubled exponent)` entries;
    /// repeated positions and exponents add up.
    pub fn from_entries(
        rows: usize,
        cols: usize,
        entries: impl IntoIterator<Item = (usize, usize, GaussScalar, i64)>,
    ) -> Self {
        let mut out = LaurentMat::zero(rows, cols);
        for (r, c, v, e) in entries {
            let m = out.terms.entry(e).or_insert_with(|| Mat::zeros(rows, cols));
            let nv = m.get(r, c) + &v;
            m.set(r, c, nv);
        }
        out.prune();
        out
    }

    fn prune(&mut self) {
        self.terms.retain(|_, m| !m.is_zero());
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Mat)> {
        self.terms.iter().map(|(&e, m)| (e, m))
    }

    /// Coefficient matrix of `z^{exp2/2}`.
    pub fn coeff(&self, exp2: i64) -> Mat {
        self.terms.get(&exp2).cloned().unwrap_or_else(|| Mat::zeros(self.rows, self.cols))
    }

    pub fn min_exp2(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// Drop every term with doubled exponent above `max_exp2`.
    pub fn truncate(&self, max_exp2: i64) -> Self {
        LaurentMat {
            rows: self.rows,
            cols: self.cols,
            terms: self.terms.range(..=max_exp2).map(|(&e, m)| (e, m.clone())).collect(),
        }
    }

    pub fn scale(&self, s: &GaussScalar) -> Self {
        let mut out = LaurentMat {
            rows: self.rows,
            cols: self.cols,
            terms: self.terms.iter().map(|(&e, m)| (e, m.scale(s))).collect(),
        };
        out.prune();
        out
    }

    pub fn transpose(&self) -> Self {
        LaurentMat {
            rows: self.cols,
            cols: self.rows,
            terms: self.terms.iter().map(|(&e, m)| (e, m.transpose())).collect(),
        }
    }

    pub fn conj_transpose(&self) -> Self {
        LaurentMat {
            rows: self.cols,
            cols: self.rows,
            terms: self.terms.iter().map(|(&e, m)| (e, m.conj_transpose())).collect(),
        }
    }

    /// Formal derivative in `z`.
    pub fn derivative(&self) -> Self {
        let mut out = LaurentMat::zero(self.rows, self.cols);
        for (&e, m) in &self.terms {
            if e != 0 {
                out.terms.insert(e - 2, m.scale(&GaussScalar::frac(e, 2)));
            }
        }
        out
    }

    /// Product keeping only terms with doubled exponent at most `max_exp2`.
    pub fn mul_truncated(&self, o: &LaurentMat, max_exp2: i64) -> Self {
        assert_eq!(self.cols, o.rows, "Laurent matrix product dimension mismatch");
        let mut out = LaurentMat::zero(self.rows, o.cols);
        for (&ea, a) in &self.terms {
            for (&eb, b) in &o.terms {
                if ea + eb > max_exp2 {
                    continue;
                }
                let p = a * b;
                let slot = out.terms.entry(ea + eb).or_insert_with(|| Mat::zeros(self.rows, o.cols));
                *slot = &*slot + &p;
            }
        }
        out.prune();
        out
    }

    pub fn commutator(a: &LaurentMat, b: &LaurentMat) -> LaurentMat {
        &(a * b) - &(b * a)
    }
}

impl Mul for &LaurentMat {
    type Output = LaurentMat;
    fn mul(self, o: &LaurentMat) -> LaurentMat {
        self.mul_truncated(o, i64::MAX)
    }
}

impl Add for &LaurentMat {
    type Output = LaurentMat;
    fn add(self, o: &LaurentMat) -> LaurentMat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let mut out = self.clone();
        for (&e, m) in &o.terms {
            let slot = out.terms.entry(e).or_insert_with(|| Mat::zeros(self.rows, self.cols));
            *slot = &*slot + m;
        }
        out.prune();
        out
    }
}

impl Sub for &LaurentMat {
    type Output = LaurentMat;
    fn sub(self, o: &LaurentMat) -> LaurentMat {
        self + &(-o)
    }
}

impl Neg for &LaurentMat {
    type Output = LaurentMat;
    fn neg(self) -> LaurentMat {
        LaurentMat {
            rows: self.rows,
            cols: self.cols,
            terms: self.terms.iter().map(|(&e, m)| (e, -m)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_powers_multiply() {
        let a = LaurentMat::monomial(Mat::identity(2), 1);
        let p = &a * &a;
        assert_eq!(p.coeff(2), Mat::identity(2));
        assert_eq!(p.terms().count(), 1);
    }

    #[test]
    fn derivative_of_half_power() {
        // d/dz z^{3/2} = 3/2 z^{1/2}
        let a = LaurentMat::monomial(Mat::identity(1), 3);
        assert_eq!(a.derivative().coeff(1), Mat::identity(1).scale(&GaussScalar::frac(3, 2)));
        assert!(LaurentMat::identity(2).derivative().is_zero());
    }

    #[test]
    fn cancellation_prunes() {
        let a = LaurentMat::monomial(Mat::identity(2), -2);
        assert!((&a - &a).is_zero());
    }
}
