use super::layout::BlockLayout;
use crate::correspondence::{ChargeVector, MatrixPair};
use crate::error::Error;
use crate::exact_algebra::{GaussScalar, Mat};

/// Normal form data `(k, q, C)` with `q ∈ ℂ^m` and `C` an `m×n` matrix.
///
/// Column `J` of `C` fills the last column of block-column `J`. In a lower
/// block `(I, J)`, `I > J`, only the first `k_{N−J}` local rows may be
/// nonzero; the remaining entries of `C` are forced to vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalFormData {
    k: ChargeVector,
    q: Vec<GaussScalar>,
    c: Mat,
}

impl NormalFormData {
    pub fn new(k: ChargeVector, q: Vec<GaussScalar>, c: Mat) -> Result<Self, Error> {
        if q.len() != k.m() {
            return Err(Error::Dimension(format!("q has length {} but m = {}", q.len(), k.m())));
        }
        check_c(&c, &k)?;
        Ok(NormalFormData { k, q, c })
    }

    pub fn k(&self) -> &ChargeVector {
        &self.k
    }

    pub fn q(&self) -> &[GaussScalar] {
        &self.q
    }

    pub fn c(&self) -> &Mat {
        &self.c
    }

    pub fn block_b(&self) -> Mat {
        hurtubise_block_b(&self.c, &self.k).expect("validated on construction")
    }

    /// `(B, e₁ᵀ, w)` with `w_{i+1} = e_{m_{i+1}+1}`, or `w_{i+1} = 0` when
    /// `kᵢ = 0`; for this choice `M(k)` is the identity.
    pub fn canonical_pair(&self) -> MatrixPair {
        canonical_pair(self.block_b(), &self.k)
    }
}

/// Attach the canonical framing vectors to a patterned `B`.
pub fn canonical_pair(b: Mat, k: &ChargeVector) -> MatrixPair {
    let m = k.m();
    let tails = k.tail_sums();
    let unit = |p: usize| (0..m).map(|r| if r == p { GaussScalar::one() } else { GaussScalar::zero() }).collect();
    let w1: Vec<GaussScalar> = unit(0);
    let w = (0..k.n())
        .map(|i| if k.as_slice()[i] == 0 { vec![GaussScalar::zero(); m] } else { unit(tails[i + 1]) })
        .collect();
    MatrixPair::new(b, w1, w).expect("dimensions follow k")
}

/// Positions `(row, col)` of `C` that must vanish.
pub fn forced_zero_positions(k: &ChargeVector) -> Vec<(usize, usize)> {
    let l = BlockLayout::new(k);
    let mut out = Vec::new();
    for jb in 1..=l.n() {
        let b = l.size(jb);
        for ib in 1..=l.n() {
            for r in 0..l.size(ib) {
                if b == 0 || (ib > jb && r >= b) {
                    out.push((l.offset(ib) + r, jb - 1));
                }
            }
        }
    }
    out
}

fn check_c(c: &Mat, k: &ChargeVector) -> Result<(), Error> {
    if c.rows() != k.m() || c.cols() != k.n() {
        return Err(Error::Dimension(format!(
            "C is {}x{} but k = {k} needs {}x{}",
            c.rows(),
            c.cols(),
            k.m(),
            k.n()
        )));
    }
    if let Some((r, col)) = forced_zero_positions(k).into_iter().find(|&(r, col)| !c.get(r, col).is_zero()) {
        return Err(Error::Domain(format!(
            "C[{}][{}] = {} must vanish for k = {k}",
            r + 1,
            col + 1,
            c.get(r, col)
        )));
    }
    Ok(())
}

/// Block companion matrix: companion `(I, I)` blocks, last-column `(I, J)`
/// blocks for `I < J`, and last-column blocks truncated to `k_{N−J}` rows for
/// `I > J`, all filled from the columns of `C`.
///
/// ```
/// use nahmkit::correspondence::ChargeVector;
/// use nahmkit::exact_algebra::Mat;
/// use nahmkit::normal_forms::hurtubise_block_b;
///
/// let c = Mat::from_i64_rows(&[&[3], &[5]]);
/// let b = hurtubise_block_b(&c, &ChargeVector::new(vec![2]).unwrap()).unwrap();
/// assert_eq!(b, Mat::from_i64_rows(&[&[0, 3], &[1, 5]]));
/// ```
pub fn hurtubise_block_b(c: &Mat, k: &ChargeVector) -> Result<Mat, Error> {
    check_c(c, k)?;
    let l = BlockLayout::new(k);
    let mut b = Mat::zeros(k.m(), k.m());
    for ib in 1..=l.n() {
        for r in 1..l.size(ib) {
            b.set(l.offset(ib) + r, l.offset(ib) + r - 1, GaussScalar::one());
        }
    }
    for jb in 1..=l.n() {
        let bs = l.size(jb);
        if bs == 0 {
            continue;
        }
        let col = l.offset(jb) + bs - 1;
        for row in 0..k.m() {
            let v = c.get(row, jb - 1);
            if !v.is_zero() {
                b.set(row, col, v.clone());
            }
        }
    }
    Ok(b)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum BlockShape {
    Companion,
    LastColumn,
    Truncated,
    FirstRow,
}

/// Named block-sparsity families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pattern {
    /// Input of step `(i, j)`: earlier steps already reduced.
    GbSource(usize, usize),
    /// Output of step `(i, j)`.
    GbTarget(usize, usize),
    HurtubiseSource,
    HurtubiseTarget,
}

impl Pattern {
    /// Accepted ids: `hurtubise-source` (same as `gB-source:2,1`),
    /// `hurtubise-target`, `gB-source:i,j` and `gB-target:i,j`.
    pub fn parse(id: &str) -> Result<Pattern, Error> {
        let step = |rest: &str| -> Result<(usize, usize), Error> {
            let (a, b) = rest.split_once(',').ok_or_else(|| Error::Parse(format!("pattern id {id:?} needs i,j")))?;
            let i = a.trim().parse().map_err(|_| Error::Parse(format!("bad i in pattern id {id:?}")))?;
            let j = b.trim().parse().map_err(|_| Error::Parse(format!("bad j in pattern id {id:?}")))?;
            Ok((i, j))
        };
        match id {
            "hurtubise-source" => Ok(Pattern::HurtubiseSource),
            "hurtubise-target" => Ok(Pattern::HurtubiseTarget),
            _ => {
                if let Some(rest) = id.strip_prefix("gB-source:") {
                    let (i, j) = step(rest)?;
                    Ok(Pattern::GbSource(i, j))
                } else if let Some(rest) = id.strip_prefix("gB-target:") {
                    let (i, j) = step(rest)?;
                    Ok(Pattern::GbTarget(i, j))
                } else {
                    Err(Error::Parse(format!("unknown pattern id {id:?}")))
                }
            }
        }
    }

    /// Number of schedule steps already applied.
    fn done(&self, l: &BlockLayout) -> Result<usize, Error> {
        let sched = l.schedule();
        let pos = |i: usize, j: usize| {
            sched
                .iter()
                .position(|&s| s == (i, j))
                .ok_or_else(|| Error::Domain(format!("step ({i},{j}) needs n >= i > j >= 1, n = {}", l.n())))
        };
        match *self {
            Pattern::HurtubiseSource => Ok(0),
            Pattern::HurtubiseTarget => Ok(sched.len()),
            Pattern::GbSource(i, j) => pos(i, j),
            Pattern::GbTarget(i, j) => Ok(pos(i, j)? + 1),
        }
    }
}

fn block_ok(m: &Mat, l: &BlockLayout, ib: usize, jb: usize, shape: BlockShape) -> bool {
    let (a, b) = (l.size(ib), l.size(jb));
    let (r0, c0) = (l.offset(ib), l.offset(jb));
    for r in 0..a {
        for c in 0..b {
            let v = m.get(r0 + r, c0 + c);
            let ok = match shape {
                BlockShape::Companion if c + 1 < b => {
                    if r == c + 1 {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                }
                BlockShape::Companion | BlockShape::LastColumn => c + 1 == b || v.is_zero(),
                BlockShape::Truncated => (c + 1 == b && r < b) || v.is_zero(),
                BlockShape::FirstRow => r == 0 || v.is_zero(),
            };
            if !ok {
                return false;
            }
        }
    }
    true
}

/// Membership of `m` in a named pattern family for charge `k`.
pub fn block_pattern_validate(m: &Mat, k: &ChargeVector, pattern_id: &str) -> Result<bool, Error> {
    let pattern = Pattern::parse(pattern_id)?;
    let l = BlockLayout::new(k);
    let done = pattern.done(&l)?;
    Ok(matches_pattern(m, &l, done))
}

fn matches_pattern(m: &Mat, l: &BlockLayout, done: usize) -> bool {
    if m.rows() != l.m() || m.cols() != l.m() {
        return false;
    }
    let reduced = &l.schedule()[..done];
    for ib in 1..=l.n() {
        for jb in 1..=l.n() {
            let shape = if ib == jb {
                BlockShape::Companion
            } else if ib < jb {
                BlockShape::LastColumn
            } else if reduced.contains(&(ib, jb)) {
                BlockShape::FirstRow
            } else {
                BlockShape::Truncated
            };
            if !block_ok(m, l, ib, jb, shape) {
                return false;
            }
        }
    }
    true
}

/// `I + N` with `N` supported on block `(i, j)`, `N_{r, r+t} = νₜ`.
fn g_from_nu(l: &BlockLayout, i: usize, j: usize, nu: &[GaussScalar], sign: i64) -> Mat {
    let mut g = Mat::identity(l.m());
    let b = l.size(j);
    let s = GaussScalar::from_i64(sign);
    for (t0, v) in nu.iter().enumerate() {
        let t = t0 + 1;
        for r in 0..b.saturating_sub(t) {
            g.set(l.offset(i) + r, l.offset(j) + r + t, v * &s);
        }
    }
    g
}

/// One reduction step: `B' = g_B B g_B⁻¹` has a first-row-only `(i, j)` block.
///
/// With `c` the last column of block `(i, j)` and `d` the last column of
/// block `(j, j)` (local indices `1..=b`, `b = k_{N−j}`),
/// `ν₁ = c_b` and `ν_{i'} = c_{b+1−i'} + Σ_{j'<i'} ν_{i'−j'} d_{b+1−j'}`.
pub fn gb_transform(b: &Mat, k: &ChargeVector, i: usize, j: usize) -> Result<(Mat, Mat), Error> {
    let l = BlockLayout::new(k);
    let done = Pattern::GbSource(i, j).done(&l)?;
    if !matches_pattern(b, &l, done) {
        return Err(Error::Domain(format!("B does not have the gB-source:{i},{j} pattern for k = {k}")));
    }
    let bs = l.size(j);
    if bs == 0 || l.size(i) == 0 {
        return Ok((Mat::identity(l.m()), b.clone()));
    }
    let last = l.offset(j) + bs - 1;
    let c = |r: usize| b.get(l.offset(i) + r - 1, last).clone();
    let d = |r: usize| b.get(l.offset(j) + r - 1, last).clone();
    let mut nu: Vec<GaussScalar> = Vec::with_capacity(bs - 1);
    for ip in 1..bs {
        let mut v = c(bs + 1 - ip);
        for jp in 1..ip {
            v += &(&nu[ip - jp - 1] * &d(bs + 1 - jp));
        }
        nu.push(v);
    }
    let g = g_from_nu(&l, i, j, &nu, 1);
    let gi = g_from_nu(&l, i, j, &nu, -1);
    let out = &(&g * b) * &gi;
    if !matches_pattern(&out, &l, done + 1) {
        return Err(Error::Domain(format!("conjugated matrix misses the gB-target:{i},{j} pattern")));
    }
    Ok((g, out))
}

/// Undo [`gb_transform`]: `ν` is read off the first row of block `(i, j)`.
pub fn gb_inverse_transform(bp: &Mat, k: &ChargeVector, i: usize, j: usize) -> Result<Mat, Error> {
    let l = BlockLayout::new(k);
    let done = Pattern::GbTarget(i, j).done(&l)?;
    if !matches_pattern(bp, &l, done) {
        return Err(Error::Domain(format!("B' does not have the gB-target:{i},{j} pattern for k = {k}")));
    }
    let bs = l.size(j);
    if bs == 0 || l.size(i) == 0 {
        return Ok(bp.clone());
    }
    let nu: Vec<GaussScalar> = (0..bs - 1).map(|q| bp.get(l.offset(i), l.offset(j) + q).clone()).collect();
    let g = g_from_nu(&l, i, j, &nu, 1);
    let gi = g_from_nu(&l, i, j, &nu, -1);
    let out = &(&gi * bp) * &g;
    if !matches_pattern(&out, &l, done - 1) {
        return Err(Error::Domain(format!("reconstructed matrix misses the gB-source:{i},{j} pattern")));
    }
    Ok(out)
}

/// Apply every step in schedule order; returns `(g, B_H)` with `B_H = g B g⁻¹`.
pub fn to_hurtubise_form(b: &Mat, k: &ChargeVector) -> Result<(Mat, Mat), Error> {
    let l = BlockLayout::new(k);
    if !matches_pattern(b, &l, 0) {
        return Err(Error::Domain(format!("B does not have the hurtubise-source pattern for k = {k}")));
    }
    let mut g = Mat::identity(k.m());
    let mut cur = b.clone();
    for (i, j) in l.schedule() {
        let (gs, next) = gb_transform(&cur, k, i, j)?;
        g = &gs * &g;
        cur = next;
    }
    Ok((g, cur))
}

/// Inverse of [`to_hurtubise_form`]; returns `(g, B)` with `B_H = g B g⁻¹`.
pub fn from_hurtubise_form(bh: &Mat, k: &ChargeVector) -> Result<(Mat, Mat), Error> {
    let l = BlockLayout::new(k);
    if !matches_pattern(bh, &l, l.schedule().len()) {
        return Err(Error::Domain(format!("B_H does not have the hurtubise-target pattern for k = {k}")));
    }
    let mut cur = bh.clone();
    for (i, j) in l.schedule().into_iter().rev() {
        cur = gb_inverse_transform(&cur, k, i, j)?;
    }
    let (g, _) = to_hurtubise_form(&cur, k)?;
    Ok((g, cur))
}
