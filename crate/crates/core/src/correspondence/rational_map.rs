use super::pair::MatrixPair;
use crate::error::Error;
use crate::exact_algebra::{poly_gcd_many, resolvent_numerator, GaussScalar, Mat, Poly};

/// A based rational map `[Q : P₁ : … : Pₙ]` with `Q` monic of degree `m`,
/// `deg Pᵢ < m` and no common zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMapData {
    q: Poly,
    p: Vec<Poly>,
}

impl RationalMapData {
    pub fn new(q: Poly, p: Vec<Poly>) -> Result<Self, Error> {
        let m = match q.degree() {
            Some(d) if d >= 1 => d,
            _ => return Err(Error::Domain(format!("Q = {q} must have degree at least 1"))),
        };
        if !q.is_monic() {
            return Err(Error::Domain(format!("Q = {q} is not monic")));
        }
        if p.is_empty() {
            return Err(Error::Domain("at least one P_i is required".into()));
        }
        if let Some((i, pi)) = p.iter().enumerate().find(|(_, pi)| pi.degree().is_some_and(|d| d >= m)) {
            return Err(Error::Domain(format!("deg P_{} = {} is not below m = {m}", i + 1, pi.degree().unwrap())));
        }
        let mut all = vec![q.clone()];
        all.extend(p.iter().cloned());
        let g = poly_gcd_many(&all)?;
        if g.degree() != Some(0) {
            return Err(Error::Domain(format!("Q, P_1, ..., P_n share the factor {g}")));
        }
        Ok(RationalMapData { q, p })
    }

    pub fn q(&self) -> &Poly {
        &self.q
    }

    pub fn p(&self) -> &[Poly] {
        &self.p
    }

    pub fn m(&self) -> usize {
        self.q.degree().expect("validated")
    }

    pub fn n(&self) -> usize {
        self.p.len()
    }

    /// The row `(Q, P₁, …, Pₙ)`.
    pub fn components(&self) -> Vec<Poly> {
        let mut v = vec![self.q.clone()];
        v.extend(self.p.iter().cloned());
        v
    }
}

/// `Q = det(zI − B)`, `Pᵢ = w₁ adj(zI − B) w_{i+1}`.
///
/// A common factor of the result means `det M(k) = 0` for every `k`, so it is
/// reported as an error rather than divided out.
pub fn to_rational_map(p: &MatrixPair) -> Result<RationalMapData, Error> {
    let q = p.b().charpoly()?;
    let adj = resolvent_numerator(p.b())?;
    let m = p.m();
    let ps: Vec<Poly> = p
        .w()
        .iter()
        .map(|w| {
            let mut acc = Poly::zero();
            for r in 0..m {
                if p.w1()[r].is_zero() {
                    continue;
                }
                for (c, wc) in w.iter().enumerate() {
                    if wc.is_zero() {
                        continue;
                    }
                    acc = &acc + &adj.get(r, c).scale(&(&p.w1()[r] * wc));
                }
            }
            acc
        })
        .collect();
    let mut all = vec![q.clone()];
    all.extend(ps.iter().cloned());
    let g = poly_gcd_many(&all)?;
    if g.degree() != Some(0) {
        return Err(Error::Domain(format!(
            "pair is invalid: gcd(Q, P_1, ..., P_n) = {g} is not 1, so det M(k) = 0 for every k"
        )));
    }
    RationalMapData::new(q, ps)
}

/// `Σ_{ν ∈ Z(Q)} res_ν(πσ/Q dt)`, evaluated as the coefficient of `t^{m−1}`
/// in `πσ mod Q`.
pub fn residue_pairing(pi: &Poly, sigma: &Poly, q: &Poly) -> Result<GaussScalar, Error> {
    let m = match q.degree() {
        Some(d) if d >= 1 && q.is_monic() => d,
        _ => return Err(Error::Domain(format!("residue pairing needs monic Q of degree >= 1, got {q}"))),
    };
    Ok((pi * sigma).rem(q)?.coeff(m - 1))
}

/// The pair on `ℂ[t]/⟨Q⟩` in the basis `(1, t, …, t^{m−1})`: `B` is
/// multiplication by `t`, `w₁` is the pairing against `[1]` and `w_{i+1}`
/// is the class of `Pᵢ`.
///
/// ```
/// use nahmkit::correspondence::{from_rational_map, RationalMapData};
/// use nahmkit::exact_algebra::{Mat, Poly};
///
/// let f = RationalMapData::new(Poly::from_i64s(&[0, 0, 1]), vec![Poly::one()]).unwrap();
/// let p = from_rational_map(&f);
/// assert_eq!(p.b(), &Mat::from_i64_rows(&[&[0, 0], &[1, 0]]));
/// ```
pub fn from_rational_map(f: &RationalMapData) -> MatrixPair {
    let m = f.m();
    let q = f.q();
    let b = Mat::from_fn(m, m, |r, c| {
        if c + 1 < m {
            if r == c + 1 {
                GaussScalar::one()
            } else {
                GaussScalar::zero()
            }
        } else {
            -&q.coeff(r)
        }
    });
    let one = Poly::one();
    let w1 = (0..m)
        .map(|j| {
            residue_pairing(&one, &Poly::monomial(GaussScalar::one(), j), q).expect("Q validated")
        })
        .collect();
    let w = f.p().iter().map(|pi| pi.padded(m)).collect();
    MatrixPair::new(b, w1, w).expect("dimensions consistent")
}

/// Gram matrix of the residue pairing in the basis `(1, …, t^{m−1})`.
pub fn residue_gram(q: &Poly) -> Result<Mat, Error> {
    let m = q.degree().unwrap_or(0);
    let basis: Vec<Poly> = (0..m).map(|j| Poly::monomial(GaussScalar::one(), j)).collect();
    let mut rows = Vec::with_capacity(m);
    for a in &basis {
        rows.push(basis.iter().map(|b| residue_pairing(a, b, q)).collect::<Result<Vec<_>, _>>()?);
    }
    Mat::from_rows(rows)
}
