use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::poly::Poly;
use super::polymat::PolyMat;
use super::scalar::GaussScalar;
use crate::error::Error;

/// Dense matrix of Gaussian rationals in row-major order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<GaussScalar>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Mat {
        Mat { rows, cols, data: vec![GaussScalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = GaussScalar::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> GaussScalar) -> Mat {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<GaussScalar>>) -> Result<Mat, Error> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged matrix rows".into()));
        }
        Ok(Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Mat {
        Mat::from_rows(
            rows.iter().map(|r| r.iter().map(|&v| GaussScalar::from_i64(v)).collect()).collect(),
        )
        .expect("rectangular literal")
    }

    pub fn diag(entries: &[GaussScalar]) -> Mat {
        let n = entries.len();
        let mut m = Mat::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m.data[i * n + i] = e.clone();
        }
        m
    }

    pub fn column(v: &[GaussScalar]) -> Mat {
        Mat { rows: v.len(), cols: 1, data: v.to_vec() }
    }

    pub fn row_vector(v: &[GaussScalar]) -> Mat {
        Mat { rows: 1, cols: v.len(), data: v.to_vec() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &GaussScalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: GaussScalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> Vec<GaussScalar> {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn col(&self, c: usize) -> Vec<GaussScalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<GaussScalar>> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(GaussScalar::is_zero)
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn conj_transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |r, c| self.get(c, r).conj())
    }

    pub fn scale(&self, s: &GaussScalar) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn trace(&self) -> GaussScalar {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn mul_vec(&self, v: &[GaussScalar]) -> Vec<GaussScalar> {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|r| {
                let mut acc = GaussScalar::zero();
                for (c, x) in v.iter().enumerate() {
                    let a = self.get(r, c);
                    if !a.is_zero() && !x.is_zero() {
                        acc += &(a * x);
                    }
                }
                acc
            })
            .collect()
    }

    /// Row vector times matrix.
    pub fn vec_mul(v: &[GaussScalar], m: &Mat) -> Vec<GaussScalar> {
        assert_eq!(v.len(), m.rows, "vector-matrix dimension mismatch");
        (0..m.cols)
            .map(|c| {
                let mut acc = GaussScalar::zero();
                for (r, x) in v.iter().enumerate() {
                    let a = m.get(r, c);
                    if !a.is_zero() && !x.is_zero() {
                        acc += &(x * a);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn checked_mul(&self, o: &Mat) -> Result<Mat, Error> {
        if self.cols != o.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        Ok(self * o)
    }

    pub fn pow(&self, e: usize) -> Mat {
        assert!(self.is_square());
        let mut acc = Mat::identity(self.rows);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn commutator(a: &Mat, b: &Mat) -> Mat {
        &(a * b) - &(b * a)
    }

    /// Kronecker product with row-major block layout.
    pub fn kron(a: &Mat, b: &Mat) -> Mat {
        Mat::from_fn(a.rows * b.rows, a.cols * b.cols, |r, c| {
            a.get(r / b.rows, c / b.cols) * b.get(r % b.rows, c % b.cols)
        })
    }

    pub fn submatrix(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> Mat {
        Mat::from_fn(nr, nc, |r, c| self.get(r0 + r, c0 + c).clone())
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Mat) {
        for r in 0..b.rows {
            for c in 0..b.cols {
                self.set(r0 + r, c0 + c, b.get(r, c).clone());
            }
        }
    }

    pub fn hstack(blocks: &[Mat]) -> Result<Mat, Error> {
        let rows = blocks.first().map_or(0, |b| b.rows);
        if blocks.iter().any(|b| b.rows != rows) {
            return Err(Error::Dimension("hstack row mismatch".into()));
        }
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Mat::zeros(rows, cols);
        let mut c0 = 0;
        for b in blocks {
            out.set_block(0, c0, b);
            c0 += b.cols;
        }
        Ok(out)
    }

    pub fn vstack(blocks: &[Mat]) -> Result<Mat, Error> {
        let cols = blocks.first().map_or(0, |b| b.cols);
        if blocks.iter().any(|b| b.cols != cols) {
            return Err(Error::Dimension("vstack column mismatch".into()));
        }
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut out = Mat::zeros(rows, cols);
        let mut r0 = 0;
        for b in blocks {
            out.set_block(r0, 0, b);
            r0 += b.rows;
        }
        Ok(out)
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    let rv = m.get(r, j);
                    if rv.is_zero() {
                        continue;
                    }
                    let v = m.get(i, j) - &(&f * rv);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Exact basis of the right kernel, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<GaussScalar>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![GaussScalar::zero(); self.cols];
                v[f] = GaussScalar::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(row, f);
                }
                v
            })
            .collect()
    }

    /// Basis of row vectors `y` with `y·M = 0`.
    pub fn left_nullspace(&self) -> Vec<Vec<GaussScalar>> {
        self.transpose().nullspace()
    }

    /// Determinant by fraction-free (Bareiss) elimination with row pivoting.
    pub fn det(&self) -> Result<GaussScalar, Error> {
        if !self.is_square() {
            return Err(Error::Dimension(format!("det of non-square {}x{}", self.rows, self.cols)));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(GaussScalar::one());
        }
        let mut m = self.clone();
        let mut prev = GaussScalar::one();
        let mut neg = false;
        for k in 0..n - 1 {
            let Some(p) = (k..n).find(|&i| !m.get(i, k).is_zero()) else {
                return Ok(GaussScalar::zero());
            };
            if p != k {
                m.swap_rows(p, k);
                neg = !neg;
            }
            let pivot = m.get(k, k).clone();
            for i in k + 1..n {
                let mik = m.get(i, k).clone();
                for j in k + 1..n {
                    let v = &(&(m.get(i, j) * &pivot) - &(&mik * m.get(k, j))) / &prev;
                    m.set(i, j, v);
                }
                m.set(i, k, GaussScalar::zero());
            }
            prev = pivot;
        }
        let d = m.get(n - 1, n - 1).clone();
        Ok(if neg { -d } else { d })
    }

    pub fn inverse(&self) -> Result<Mat, Error> {
        if !self.is_square() {
            return Err(Error::Dimension("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let aug = Mat::hstack(&[self.clone(), Mat::identity(n)])?;
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Domain("matrix is singular".into()));
        }
        Ok(r.submatrix(0, n, n, n))
    }

    /// Faddeev–LeVerrier recursion. Returns the coefficient list of
    /// `det(zI − M)` (ascending) and the matrices `N_0..N_{n−1}` with
    /// `adj(zI − M) = Σ_k N_k z^{n−1−k}`.
    fn faddeev_leverrier(&self) -> (Vec<GaussScalar>, Vec<Mat>) {
        let n = self.rows;
        let mut c = vec![GaussScalar::zero(); n + 1];
        c[n] = GaussScalar::one();
        let mut ns = Vec::with_capacity(n);
        let mut mk = Mat::zeros(n, n);
        for k in 1..=n {
            // M_k = A·M_{k−1} + c_{n−k+1}·I
            let mut next = self * &mk;
            for i in 0..n {
                let v = next.get(i, i) + &c[n - k + 1];
                next.set(i, i, v);
            }
            let t = (self * &next).trace();
            c[n - k] = -(&t / &GaussScalar::from_i64(k as i64));
            ns.push(next.clone());
            mk = next;
        }
        (c, ns)
    }

    pub fn charpoly(&self) -> Result<Poly, Error> {
        if !self.is_square() {
            return Err(Error::Dimension("charpoly of a non-square matrix".into()));
        }
        Ok(Poly::from_coeffs(self.faddeev_leverrier().0))
    }

    /// `adj(zI − M)` as a matrix of polynomials.
    pub fn resolvent_numerator(&self) -> Result<PolyMat, Error> {
        if !self.is_square() {
            return Err(Error::Dimension("resolvent of a non-square matrix".into()));
        }
        let n = self.rows;
        let (_, ns) = self.faddeev_leverrier();
        Ok(PolyMat::from_fn(n, n, |r, c| {
            // coefficient of z^{n−1−k} is N_k[r][c]
            Poly::from_coeffs((0..n).map(|d| ns[n - 1 - d].get(r, c).clone()).collect())
        }))
    }

    /// Classical adjugate, read off `adj(zI − M)` at `z = 0`.
    pub fn adjugate(&self) -> Result<Mat, Error> {
        if !self.is_square() {
            return Err(Error::Dimension("adjugate of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Mat::zeros(0, 0));
        }
        let neg = self.scale(&GaussScalar::from_i64(-1));
        let (_, ns) = neg.faddeev_leverrier();
        // adj(0·I − (−M)) = adj(M)
        Ok(ns[n - 1].clone())
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        write!(f, "]")
    }
}

impl<'a> Mul<&'a Mat> for &'a Mat {
    type Output = Mat;
    fn mul(self, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.rows, "matrix product dimension mismatch");
        let mut out = Mat::zeros(self.rows, o.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..o.cols {
                    let b = o.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    out.data[r * o.cols + c] += &(a * b);
                }
            }
        }
        out
    }
}

impl<'a> Add<&'a Mat> for &'a Mat {
    type Output = Mat;
    fn add(self, o: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "matrix sum dimension mismatch");
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a Mat> for &'a Mat {
    type Output = Mat;
    fn sub(self, o: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "matrix difference dimension mismatch");
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &Mat {
    type Output = Mat;
    fn neg(self) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x).collect() }
    }
}

macro_rules! mat_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Mat> for Mat {
            type Output = Mat;
            fn $m(self, o: Mat) -> Mat {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a Mat> for Mat {
            type Output = Mat;
            fn $m(self, o: &Mat) -> Mat {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<Mat> for &'a Mat {
            type Output = Mat;
            fn $m(self, o: Mat) -> Mat {
                self.$m(&o)
            }
        }
    };
}

mat_owned!(Mul, mul);
mat_owned!(Add, add);
mat_owned!(Sub, sub);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_examples() {
        assert_eq!(Mat::identity(3).det().unwrap(), GaussScalar::one());
        assert_eq!(Mat::from_i64_rows(&[&[0, 1], &[1, 0]]).det().unwrap(), GaussScalar::from_i64(-1));
        assert_eq!(Mat::from_i64_rows(&[&[2, 1], &[1, 1]]).det().unwrap(), GaussScalar::one());
        assert!(Mat::zeros(2, 3).det().is_err());
    }

    #[test]
    fn det_needs_pivoting() {
        let m = Mat::from_i64_rows(&[&[0, 2, 1], &[0, 1, 3], &[4, 1, 1]]);
        // cofactor expansion along the first column: 4·(2·3 − 1·1)
        assert_eq!(m.det().unwrap(), GaussScalar::from_i64(20));
    }

    #[test]
    fn nullspace_examples() {
        assert!(Mat::identity(2).nullspace().is_empty());
        let ns = Mat::from_i64_rows(&[&[1, 1]]).nullspace();
        assert_eq!(ns, vec![vec![GaussScalar::from_i64(-1), GaussScalar::one()]]);
        assert_eq!(Mat::zeros(2, 2).nullspace().len(), 2);
    }

    #[test]
    fn inverse_and_adjugate() {
        let m = Mat::from_i64_rows(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, Mat::identity(3));
        let adj = m.adjugate().unwrap();
        assert_eq!(&m * &adj, Mat::identity(3).scale(&m.det().unwrap()));
        assert!(Mat::from_i64_rows(&[&[1, 2], &[2, 4]]).inverse().is_err());
    }

    #[test]
    fn charpoly_examples() {
        assert_eq!(Mat::zeros(1, 1).charpoly().unwrap(), Poly::from_i64s(&[0, 1]));
        assert_eq!(
            Mat::from_i64_rows(&[&[0, 1], &[0, 0]]).charpoly().unwrap(),
            Poly::from_i64s(&[0, 0, 1])
        );
        // (z − 1)(z − 2)
        let oracle = &Poly::from_i64s(&[-1, 1]) * &Poly::from_i64s(&[-2, 1]);
        assert_eq!(Mat::from_i64_rows(&[&[1, 0], &[0, 2]]).charpoly().unwrap(), oracle);
    }

    #[test]
    fn resolvent_examples() {
        let p = |c: &[i64]| Poly::from_i64s(c);
        let r = Mat::zeros(1, 1).resolvent_numerator().unwrap();
        assert_eq!(r.get(0, 0), &p(&[1]));
        let r = Mat::from_i64_rows(&[&[0, 1], &[0, 0]]).resolvent_numerator().unwrap();
        assert_eq!(r.to_rows(), vec![vec![p(&[0, 1]), p(&[1])], vec![p(&[]), p(&[0, 1])]]);
        let r = Mat::from_i64_rows(&[&[1, 0], &[0, 2]]).resolvent_numerator().unwrap();
        assert_eq!(r.to_rows(), vec![vec![p(&[-2, 1]), p(&[])], vec![p(&[]), p(&[-1, 1])]]);
    }

    #[test]
    fn kron_shape() {
        let a = Mat::from_i64_rows(&[&[1, 2], &[3, 4]]);
        let k = Mat::kron(&a, &Mat::identity(2));
        assert_eq!(k.get(2, 0), &GaussScalar::from_i64(3));
        assert_eq!(k.get(3, 3), &GaussScalar::from_i64(4));
        assert_eq!(k.get(0, 1), &GaussScalar::zero());
    }
}
