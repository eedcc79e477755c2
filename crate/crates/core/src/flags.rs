//! Syzygy bases of `(Q, P₁, …, Pₙ)` and the lift to flags of subbundles.

use serde::Serialize;

use crate::correspondence::{bounded_syzygy_matrix, decode_syzygy, membership_rk, ChargeVector, RationalMapData};
use crate::error::Error;
use crate::exact_algebra::{poly_gcd_many, GaussScalar, Mat, Poly, PolyMat};

/// A tuple `(s, t₁, …, tₙ)` with `sQ + Σ tᵢPᵢ = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyzygyTuple {
    pub s: Poly,
    pub t: Vec<Poly>,
}

impl SyzygyTuple {
    /// `max deg tᵢ`; `None` for the zero tuple.
    pub fn degree(&self) -> Option<usize> {
        self.t.iter().filter_map(Poly::degree).max()
    }

    /// Coefficients of `z^d` in the `t`-components, `d = degree()`.
    pub fn leading_vector(&self) -> Vec<GaussScalar> {
        let d = self.degree().unwrap_or(0);
        self.t.iter().map(|p| p.coeff(d)).collect()
    }

    pub fn annihilates(&self, f: &RationalMapData) -> bool {
        let mut acc = &self.s * f.q();
        for (t, p) in self.t.iter().zip(f.p()) {
            acc = &acc + &(t * p);
        }
        acc.is_zero()
    }

    /// The components have no common factor.
    pub fn is_saturated(&self) -> bool {
        let mut all = vec![self.s.clone()];
        all.extend(self.t.iter().cloned());
        poly_gcd_many(&all).map(|g| g.degree() == Some(0)).unwrap_or(false)
    }

    fn shift(&self, e: usize) -> SyzygyTuple {
        SyzygyTuple { s: self.s.shift(e), t: self.t.iter().map(|p| p.shift(e)).collect() }
    }

    fn scale(&self, c: &GaussScalar) -> SyzygyTuple {
        SyzygyTuple { s: self.s.scale(c), t: self.t.iter().map(|p| p.scale(c)).collect() }
    }

    fn sub(&self, o: &SyzygyTuple) -> SyzygyTuple {
        SyzygyTuple { s: &self.s - &o.s, t: self.t.iter().zip(&o.t).map(|(a, b)| a - b).collect() }
    }

    fn add(&self, o: &SyzygyTuple) -> SyzygyTuple {
        SyzygyTuple { s: &self.s + &o.s, t: self.t.iter().zip(&o.t).map(|(a, b)| a + b).collect() }
    }

    /// Coordinates in the level-`d` system (`deg s < d`, `deg tᵢ ≤ d`).
    fn level_vector(&self, d: usize) -> Vec<GaussScalar> {
        let mut out = Vec::new();
        for e in (0..d).rev() {
            out.push(self.s.coeff(e));
        }
        for t in &self.t {
            for e in (0..=d).rev() {
                out.push(t.coeff(e));
            }
        }
        out
    }
}

/// Minimal syzygy basis ordered by increasing degree, together with the
/// nested partial spans `E₁ ⊂ … ⊂ Eₙ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagData {
    pub basis: Vec<SyzygyTuple>,
    /// `d₁ ≤ … ≤ dₙ`.
    pub degrees: Vec<usize>,
}

impl FlagData {
    /// `deg Eᵢ = −(d₁ + … + dᵢ)`.
    pub fn piece_degrees(&self) -> Vec<i64> {
        self.degrees
            .iter()
            .scan(0i64, |acc, &d| {
                *acc -= d as i64;
                Some(*acc)
            })
            .collect()
    }
}

#[derive(Serialize)]
struct TupleJson {
    s: Vec<String>,
    t: Vec<Vec<String>>,
}

#[derive(Serialize)]
pub struct FlagJson {
    basis: Vec<TupleJson>,
    degrees: Vec<usize>,
    piece_degrees: Vec<i64>,
}

impl From<&FlagData> for FlagJson {
    fn from(f: &FlagData) -> FlagJson {
        let coeffs = |p: &Poly| p.coeffs().iter().map(ToString::to_string).collect();
        FlagJson {
            basis: f.basis.iter().map(|b| TupleJson { s: coeffs(&b.s), t: b.t.iter().map(coeffs).collect() }).collect(),
            degrees: f.degrees.clone(),
            piece_degrees: f.piece_degrees(),
        }
    }
}

/// `(m₁, …, mₙ)` with `mᵢ = Σ_{j≥i} kⱼ`.
pub fn flag_degree_vector(k: &ChargeVector) -> Vec<usize> {
    let mut t = k.tail_sums();
    t.pop();
    t
}

/// Degree sweep: at each level `d`, keep the null vectors that are not
/// combinations of shifts of the elements already found. Ties are broken by
/// the pivot order of the reduced row echelon form, so the result is
/// deterministic.
fn greedy_basis(f: &RationalMapData) -> Vec<SyzygyTuple> {
    let n = f.n();
    let mut basis: Vec<SyzygyTuple> = Vec::new();
    for d in 0..=f.m() {
        if basis.len() == n {
            break;
        }
        let t_lens = vec![d + 1; n];
        let null = bounded_syzygy_matrix(f, d, &t_lens).expect("bounds match n").left_nullspace();
        let mut span: Vec<Vec<GaussScalar>> = basis
            .iter()
            .flat_map(|b| {
                let bd = b.degree().expect("nonzero");
                (0..=d - bd).map(move |e| b.shift(e))
            })
            .map(|b| b.level_vector(d))
            .collect();
        let mut rank = if span.is_empty() { 0 } else { Mat::from_rows(span.clone()).unwrap().rank() };
        for y in null {
            span.push(y.clone());
            let r = Mat::from_rows(span.clone()).unwrap().rank();
            if r > rank {
                rank = r;
                let (s, t) = decode_syzygy(&y, d, &t_lens);
                basis.push(SyzygyTuple { s, t });
            } else {
                span.pop();
            }
        }
    }
    basis
}

/// Degrees of the leading vectors fit the anti-standard flag: the elements
/// of degree `≤ d` have leading vectors spanning the last `#{dᵢ ≤ d}`
/// coordinates.
fn fits_antistandard(basis: &[SyzygyTuple]) -> bool {
    let n = basis.first().map_or(0, |b| b.t.len());
    for b in basis {
        let d = b.degree().expect("nonzero");
        let j = basis.iter().filter(|o| o.degree().expect("nonzero") <= d).count();
        if b.leading_vector()[..n - j].iter().any(|c| !c.is_zero()) {
            return false;
        }
    }
    true
}

/// Make the element of `t`-index `i` have leading vector `eᵢ`, by reducing
/// each degree group against lower groups and inverting its leading block.
fn normalize(basis: Vec<SyzygyTuple>) -> Vec<SyzygyTuple> {
    let n = basis.first().map_or(0, |b| b.t.len());
    let mut done: Vec<(usize, SyzygyTuple)> = Vec::new();
    let mut idx = 0;
    while idx < basis.len() {
        let d = basis[idx].degree().expect("nonzero");
        let end = basis[idx..].iter().position(|b| b.degree() != Some(d)).map_or(basis.len(), |p| idx + p);
        let mut group: Vec<SyzygyTuple> = basis[idx..end].to_vec();
        for g in group.iter_mut() {
            for (i, e) in &done {
                let c = g.t[*i].coeff(d);
                if !c.is_zero() {
                    let ed = e.degree().expect("nonzero");
                    *g = g.sub(&e.shift(d - ed).scale(&c));
                }
            }
        }
        let lo = n - end;
        let hi = n - idx;
        let lead = Mat::from_fn(group.len(), hi - lo, |r, c| group[r].t[lo + c].coeff(d));
        let inv = lead.inverse().expect("leading block invertible for based maps");
        // element c is row c of inv·group, with leading vector e_{lo+c}
        for c in 0..hi - lo {
            let mut acc = SyzygyTuple { s: Poly::zero(), t: vec![Poly::zero(); n] };
            for (r, g) in group.iter().enumerate() {
                acc = acc.add(&g.scale(inv.get(c, r)));
            }
            done.push((lo + c, acc));
        }
        idx = end;
    }
    done.sort_by_key(|(i, _)| std::cmp::Reverse(*i));
    done.into_iter().map(|(_, b)| b).collect()
}

/// Minimal basis of the syzygy module, ordered by increasing degree.
///
/// For based maps it is normalized at infinity: the element whose degree is
/// `kᵢ` has leading vector `eᵢ`. Otherwise the sweep order is kept.
///
/// ```
/// use nahmkit::correspondence::RationalMapData;
/// use nahmkit::exact_algebra::Poly;
/// use nahmkit::flags::minimal_syzygy_basis;
///
/// let f = RationalMapData::new(Poly::from_i64s(&[0, 0, 1]), vec![Poly::one(), Poly::zero()]).unwrap();
/// let basis = minimal_syzygy_basis(&f);
/// assert_eq!(basis[0].t, vec![Poly::zero(), Poly::one()]);
/// assert_eq!(basis[1].t[0], Poly::from_i64s(&[0, 0, 1]));
/// ```
pub fn minimal_syzygy_basis(f: &RationalMapData) -> Vec<SyzygyTuple> {
    let mut basis = greedy_basis(f);
    basis.sort_by_key(|b| b.degree());
    if fits_antistandard(&basis) {
        normalize(basis)
    } else {
        basis
    }
}

/// The syzygy flag agrees with the anti-standard flag at infinity.
pub fn based_check(f: &RationalMapData) -> bool {
    let mut basis = greedy_basis(f);
    basis.sort_by_key(|b| b.degree());
    fits_antistandard(&basis)
}

/// `syz` is a polynomial combination of `basis`.
pub fn module_contains(basis: &[SyzygyTuple], syz: &SyzygyTuple) -> bool {
    let Some(d) = syz.degree() else { return true };
    let rows: Vec<Vec<GaussScalar>> = basis
        .iter()
        .filter(|b| b.degree().is_some_and(|bd| bd <= d))
        .flat_map(|b| (0..=d - b.degree().unwrap()).map(move |e| b.shift(e).level_vector(d)))
        .collect();
    if rows.is_empty() {
        return false;
    }
    let base = Mat::from_rows(rows.clone()).unwrap().rank();
    let mut with = rows;
    with.push(syz.level_vector(d));
    Mat::from_rows(with).unwrap().rank() == base
}

/// The flag of `F ∈ R_k`.
pub fn flag_lift(f: &RationalMapData, k: &ChargeVector) -> Result<FlagData, Error> {
    if !membership_rk(f, k)? {
        return Err(Error::Domain(format!("F is not in R_k for k = {k}")));
    }
    let basis = minimal_syzygy_basis(f);
    let degrees = basis.iter().map(|b| b.degree().expect("nonzero")).collect();
    Ok(FlagData { basis, degrees })
}

/// Recover `F` as the annihilator of the full span: component `c` of
/// `(Q, P)` is `(−1)^c` times the minor of the `n×(n+1)` syzygy matrix with
/// column `c` removed, scaled so that `Q` is monic.
pub fn flag_to_map(flag: &FlagData) -> Result<RationalMapData, Error> {
    let n = flag.basis.len();
    if n == 0 {
        return Err(Error::Domain("empty flag".into()));
    }
    let full: Vec<Vec<Poly>> = flag
        .basis
        .iter()
        .map(|b| std::iter::once(b.s.clone()).chain(b.t.iter().cloned()).collect())
        .collect();
    let mut comps = Vec::with_capacity(n + 1);
    for c in 0..=n {
        let minor = PolyMat::from_fn(n, n, |r, cc| full[r][if cc < c { cc } else { cc + 1 }].clone());
        let d = minor.det()?;
        comps.push(if c % 2 == 0 { d } else { -&d });
    }
    let lead = comps[0].leading().cloned().ok_or_else(|| Error::Domain("annihilator has Q = 0".into()))?;
    let inv = lead.inv().expect("nonzero");
    let mut comps: Vec<Poly> = comps.iter().map(|p| p.scale(&inv)).collect();
    let p = comps.split_off(1);
    RationalMapData::new(comps.pop().unwrap(), p)
}
