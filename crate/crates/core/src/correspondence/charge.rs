use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Weakly decreasing nonnegative tuple `k = (k₁ ≥ … ≥ kₙ)` with `m = Σkᵢ ≥ 1`.
///
/// Zero entries are allowed; they describe maps whose image lies in a
/// proper linear subspace.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct ChargeVector(Vec<usize>);

impl ChargeVector {
    pub fn new(k: Vec<usize>) -> Result<Self, Error> {
        if k.is_empty() {
            return Err(Error::Domain("charge vector must have at least one entry".into()));
        }
        if k.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Domain(format!("charge vector {k:?} is not weakly decreasing")));
        }
        if k.iter().sum::<usize>() == 0 {
            return Err(Error::Domain("charge vector must have positive sum".into()));
        }
        Ok(ChargeVector(k))
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn m(&self) -> usize {
        self.0.iter().sum()
    }

    /// `kᵢ` with the 1-based index used throughout the docs.
    pub fn k(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    /// `m_i = Σ_{j ≥ i} k_j` for `i = 1..=N` (so the last entry is `m_N = 0`).
    pub fn tail_sums(&self) -> Vec<usize> {
        let mut out = vec![0; self.n() + 1];
        for i in (0..self.n()).rev() {
            out[i] = out[i + 1] + self.0[i];
        }
        out
    }

    /// Every weakly decreasing `n`-tuple of nonnegative integers with sum `m`.
    pub fn all_with(m: usize, n: usize) -> Vec<ChargeVector> {
        fn rec(left: usize, slots: usize, cap: usize, cur: &mut Vec<usize>, out: &mut Vec<ChargeVector>) {
            if slots == 0 {
                if left == 0 {
                    out.push(ChargeVector(cur.clone()));
                }
                return;
            }
            let hi = cap.min(left);
            for v in (0..=hi).rev() {
                if v * slots < left {
                    break;
                }
                cur.push(v);
                rec(left - v, slots - 1, v, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if m > 0 && n > 0 {
            rec(m, n, m, &mut Vec::new(), &mut out);
        }
        out
    }
}

impl TryFrom<Vec<usize>> for ChargeVector {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self, Error> {
        ChargeVector::new(v)
    }
}

impl From<ChargeVector> for Vec<usize> {
    fn from(k: ChargeVector) -> Vec<usize> {
        k.0
    }
}

impl fmt::Debug for ChargeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for ChargeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_vectors() {
        assert!(ChargeVector::new(vec![1, 2]).is_err());
        assert!(ChargeVector::new(vec![0, 0]).is_err());
        assert!(ChargeVector::new(vec![]).is_err());
        assert!(ChargeVector::new(vec![2, 0]).is_ok());
    }

    #[test]
    fn tail_sums_match_definition() {
        let k = ChargeVector::new(vec![2, 1]).unwrap();
        assert_eq!(k.tail_sums(), vec![3, 1, 0]);
    }

    #[test]
    fn enumeration() {
        let all = ChargeVector::all_with(4, 2);
        let got: Vec<Vec<usize>> = all.into_iter().map(Into::into).collect();
        assert_eq!(got, vec![vec![4, 0], vec![3, 1], vec![2, 2]]);
        assert_eq!(ChargeVector::all_with(5, 3).len(), 5);
    }
}
