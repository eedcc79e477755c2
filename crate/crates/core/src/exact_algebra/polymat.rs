use std::ops::{Add, Mul, Sub};

use super::mat::Mat;
use super::poly::Poly;
use super::scalar::GaussScalar;
use crate::error::Error;

/// Dense matrix with polynomial entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMat {
    rows: usize,
    cols: usize,
    data: Vec<Poly>,
}

impl PolyMat {
    pub fn zeros(rows: usize, cols: usize) -> PolyMat {
        PolyMat { rows, cols, data: vec![Poly::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> PolyMat {
        PolyMat::from_fn(n, n, |r, c| if r == c { Poly::one() } else { Poly::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Poly) -> PolyMat {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        PolyMat { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Poly>>) -> Result<PolyMat, Error> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged polynomial matrix".into()));
        }
        Ok(PolyMat { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// `zI − M` for a constant square `M`.
    pub fn z_minus(m: &Mat) -> PolyMat {
        PolyMat::from_fn(m.rows(), m.cols(), |r, c| {
            let mut p = Poly::constant(-m.get(r, c));
            if r == c {
                p = &p + &Poly::z();
            }
            p
        })
    }

    pub fn constant(m: &Mat) -> PolyMat {
        PolyMat::from_fn(m.rows(), m.cols(), |r, c| Poly::constant(m.get(r, c).clone()))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Poly {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, p: Poly) {
        self.data[r * self.cols + c] = p;
    }

    pub fn to_rows(&self) -> Vec<Vec<Poly>> {
        (0..self.rows)
            .map(|r| self.data[r * self.cols..(r + 1) * self.cols].to_vec())
            .collect()
    }

    pub fn scale(&self, p: &Poly) -> PolyMat {
        PolyMat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * p).collect() }
    }

    pub fn eval(&self, x: &GaussScalar) -> Mat {
        Mat::from_fn(self.rows, self.cols, |r, c| self.get(r, c).eval(x))
    }

    /// Determinant by Bareiss elimination over the polynomial ring; every
    /// division is exact.
    pub fn det(&self) -> Result<Poly, Error> {
        if self.rows != self.cols {
            return Err(Error::Dimension("det of a non-square polynomial matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Poly::one());
        }
        let mut m = self.clone();
        let mut prev = Poly::one();
        let mut neg = false;
        for k in 0..n - 1 {
            let Some(p) = (k..n).find(|&i| !m.get(i, k).is_zero()) else {
                return Ok(Poly::zero());
            };
            if p != k {
                for c in 0..n {
                    m.data.swap(p * n + c, k * n + c);
                }
                neg = !neg;
            }
            let pivot = m.get(k, k).clone();
            for i in k + 1..n {
                let mik = m.get(i, k).clone();
                for j in k + 1..n {
                    let num = &(m.get(i, j) * &pivot) - &(&mik * m.get(k, j));
                    m.set(i, j, num.exact_div(&prev)?);
                }
                m.set(i, k, Poly::zero());
            }
            prev = pivot;
        }
        let d = m.get(n - 1, n - 1).clone();
        Ok(if neg { -&d } else { d })
    }
}

impl Mul for &PolyMat {
    type Output = PolyMat;
    fn mul(self, o: &PolyMat) -> PolyMat {
        assert_eq!(self.cols, o.rows, "polynomial matrix product dimension mismatch");
        PolyMat::from_fn(self.rows, o.cols, |r, c| {
            (0..self.cols).fold(Poly::zero(), |acc, k| &acc + &(self.get(r, k) * o.get(k, c)))
        })
    }
}

impl Add for &PolyMat {
    type Output = PolyMat;
    fn add(self, o: &PolyMat) -> PolyMat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        PolyMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &PolyMat {
    type Output = PolyMat;
    fn sub(self, o: &PolyMat) -> PolyMat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        PolyMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_of_z_minus_matches_charpoly() {
        let m = Mat::from_i64_rows(&[&[0, 2, 1], &[1, -1, 0], &[3, 0, 2]]);
        assert_eq!(PolyMat::z_minus(&m).det().unwrap(), m.charpoly().unwrap());
    }

    #[test]
    fn det_with_zero_leading_pivot() {
        // [[0, 1], [1, z]] has determinant −1
        let pm = PolyMat::from_rows(vec![
            vec![Poly::zero(), Poly::one()],
            vec![Poly::one(), Poly::z()],
        ])
        .unwrap();
        assert_eq!(pm.det().unwrap(), Poly::from_i64s(&[-1]));
    }
}
