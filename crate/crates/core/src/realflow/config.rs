use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::linalg::CMat;
use super::path::Grid;
use super::solver::{RealFlowProblem, SolveOptions};
use crate::error::Error;

/// Matrices are lists of rows, each entry a `[re, im]` pair.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RealFlowConfig {
    pub m: usize,
    #[serde(rename = "L")]
    pub length: f64,
    pub grid: usize,
    pub tol: f64,
    pub beta0: Vec<Vec<[f64; 2]>>,
    pub h_minus: Vec<Vec<[f64; 2]>>,
    pub h_plus: Vec<Vec<[f64; 2]>>,
    #[serde(default)]
    pub seed: u64,
}

pub fn matrix_from_json(rows: &[Vec<[f64; 2]>], m: usize, name: &str) -> Result<CMat, Error> {
    if rows.len() != m || rows.iter().any(|r| r.len() != m) {
        return Err(Error::Dimension(format!("{name} must be {m}x{m}")));
    }
    Ok(CMat::from_fn(m, m, |r, c| Complex64::new(rows[r][c][0], rows[r][c][1])))
}

impl RealFlowConfig {
    pub fn from_json(s: &str) -> Result<Self, Error> {
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("realflow config: {e}")))
    }

    pub fn problem(&self) -> Result<RealFlowProblem, Error> {
        if self.m == 0 {
            return Err(Error::Domain("m must be positive".into()));
        }
        let grid = Grid::new(self.length, self.grid)?;
        RealFlowProblem::new(
            matrix_from_json(&self.beta0, self.m, "beta0")?,
            matrix_from_json(&self.h_minus, self.m, "h_minus")?,
            matrix_from_json(&self.h_plus, self.m, "h_plus")?,
            grid,
            self.tol,
        )
    }

    pub fn options(&self) -> SolveOptions {
        SolveOptions { seed: self.seed, ..SolveOptions::default() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_validate() {
        let ok = r#"{"m":1,"L":1.0,"grid":16,"tol":1e-8,"beta0":[[[1,0]]],"h_minus":[[[1,0]]],"h_plus":[[[2,0]]]}"#;
        let cfg = RealFlowConfig::from_json(ok).unwrap();
        assert_eq!(cfg.seed, 0);
        assert!(cfg.problem().is_ok());
        let small = ok.replace("\"grid\":16", "\"grid\":4");
        assert!(matches!(RealFlowConfig::from_json(&small).unwrap().problem(), Err(Error::Domain(_))));
        assert!(matches!(RealFlowConfig::from_json("{"), Err(Error::Parse(_))));
        let neg = ok.replace("[[[2,0]]]", "[[[-2,0]]]");
        assert!(RealFlowConfig::from_json(&neg).unwrap().problem().is_err());
    }
}
