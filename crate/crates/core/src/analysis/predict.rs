use super::moments::path_moments;
use super::qfunc::q;
use super::threshold::gaussian_gate;
use crate::code::CodeParams;
use crate::decoder::{unit_of, Algorithm, UnitKind};
use crate::error::{Result, RmError};
use crate::path::{enumerate_paths, BitString, Path};

/// Paths decided at one end node, with the string whose variance governs them.
#[derive(Clone, Debug, PartialEq)]
pub struct AnalysisUnit {
    pub kind: UnitKind,
    pub key: BitString,
    /// Paths of the unit in lexicographic order.
    pub paths: Vec<Path>,
}

/// Decision units of `algorithm` in decoding order.
pub fn analysis_units(params: CodeParams, algorithm: Algorithm) -> Vec<AnalysisUnit> {
    let mut units: Vec<AnalysisUnit> = Vec::new();
    for path in enumerate_paths(params) {
        let (kind, key) = unit_of(&path, params, algorithm);
        match units.last_mut() {
            Some(u) if u.key == key && u.kind == kind => u.paths.push(path),
            _ => units.push(AnalysisUnit { kind, key, paths: vec![path] }),
        }
    }
    units
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PredictionMethod {
    /// Normal approximation `Q(μ^{-1/2})`.
    Gaussian,
    /// Chebyshev bound `μ`.
    Chebyshev,
}

#[derive(Clone, Debug, PartialEq)]
pub struct UnitPrediction {
    pub unit: AnalysisUnit,
    pub mean: f64,
    pub variance: f64,
    pub method: PredictionMethod,
    /// Error probability of one decision of the unit, conditioned on
    /// correct earlier decisions. `Psi` units give a point estimate
    /// (`lower == upper`); `Phi` first-order nodes give the interval between
    /// the single-rival probability and the union bound over `2l - 1` rivals.
    pub lower: f64,
    pub upper: f64,
}

impl UnitPrediction {
    /// Number of decisions the unit contributes to the block union bound.
    pub fn decisions(&self) -> usize {
        match self.unit.kind {
            UnitKind::Symbol { h } => 1 << h,
            _ => 1,
        }
    }

    /// Prediction reported for each of the unit's paths.
    pub fn per_path(&self) -> f64 {
        self.upper
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Prediction {
    pub algorithm: Algorithm,
    pub epsilon: f64,
    pub units: Vec<UnitPrediction>,
    /// Weakest-unit lower value.
    pub block_lower: f64,
    /// Union bound over all decisions, capped at 1.
    pub block_upper: f64,
}

impl Prediction {
    pub fn per_path(&self) -> impl Iterator<Item = (Path, f64)> + '_ {
        self.units.iter().flat_map(|u| u.unit.paths.iter().map(move |&p| (p, u.per_path())))
    }

    pub fn unit(&self, key: BitString) -> Option<&UnitPrediction> {
        self.units.iter().find(|u| u.unit.key == key)
    }
}

pub fn predict_errors(params: CodeParams, epsilon: f64, algorithm: Algorithm) -> Result<Prediction> {
    if algorithm == Algorithm::Phi && params.r() == 0 {
        return Err(RmError::PhiNeedsOrderOne);
    }
    let gate = gaussian_gate(params);
    let units = analysis_units(params, algorithm)
        .into_iter()
        .map(|unit| {
            let pm = path_moments(unit.key, epsilon)?;
            let mu = pm.variance;
            let gaussian = !matches!(unit.kind, UnitKind::Symbol { .. }) && unit.kind.g() >= gate;
            let method = if gaussian { PredictionMethod::Gaussian } else { PredictionMethod::Chebyshev };
            let single = match method {
                PredictionMethod::Gaussian => gauss_tail(mu),
                PredictionMethod::Chebyshev => mu.min(1.0),
            };
            let (lower, upper) = match unit.kind {
                UnitKind::Biorthogonal { g } => {
                    let rivals = (1u64 << (g + 2)) as f64 - 1.0;
                    let lower = if gaussian { single } else { 0.0 };
                    (lower, (rivals * single).min(1.0))
                }
                _ => (single, single),
            };
            Ok(UnitPrediction { unit, mean: pm.mean, variance: mu, method, lower, upper })
        })
        .collect::<Result<Vec<_>>>()?;

    let weakest = units
        .iter()
        .max_by(|a, b| a.variance.total_cmp(&b.variance))
        .expect("every code has at least one unit");
    let block_lower = weakest.lower;
    let block_upper = units.iter().map(|u| u.upper * u.decisions() as f64).sum::<f64>().min(1.0);
    Ok(Prediction { algorithm, epsilon, units, block_lower, block_upper })
}

fn gauss_tail(mu: f64) -> f64 {
    if mu <= 0.0 {
        0.0
    } else {
        q(mu.powf(-0.5))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{epsilon_psi, mu_star, weakest_path, weakest_prefix};

    fn p(m: u32, r: u32) -> CodeParams {
        CodeParams::new(m, r).unwrap()
    }

    #[test]
    fn units_partition_paths() {
        for (m, r) in [(5, 2), (8, 3), (6, 6), (7, 1)] {
            for alg in [Algorithm::Psi, Algorithm::Phi] {
                let units = analysis_units(p(m, r), alg);
                let total: usize = units.iter().map(|u| u.paths.len()).sum();
                assert_eq!(total, p(m, r).k());
            }
        }
    }

    #[test]
    fn weakest_unit_is_leftmost() {
        for (m, r) in [(8, 2), (10, 2), (12, 1), (9, 4)] {
            let params = p(m, r);
            let eps = 0.7;
            let pr = predict_errors(params, eps, Algorithm::Psi).unwrap();
            let w = pr.units.iter().max_by(|a, b| a.variance.total_cmp(&b.variance)).unwrap();
            assert_eq!(w.unit.key, weakest_path(params).bits());
            assert!((w.variance - mu_star(params, eps, Algorithm::Psi).unwrap()).abs() < 1e-12 * w.variance);
            let pr = predict_errors(params, eps, Algorithm::Phi).unwrap();
            let w = pr.units.iter().max_by(|a, b| a.variance.total_cmp(&b.variance)).unwrap();
            assert_eq!(w.unit.key, weakest_prefix(params, Algorithm::Phi).unwrap());
        }
    }

    #[test]
    fn block_bounds_are_ordered() {
        for (m, r) in [(4, 1), (7, 2), (8, 3), (10, 2), (12, 6)] {
            for eps in [0.2, 0.5, 0.8, 0.99] {
                for alg in [Algorithm::Psi, Algorithm::Phi] {
                    let pr = predict_errors(p(m, r), eps, alg).unwrap();
                    assert!(pr.block_lower <= pr.block_upper);
                    assert!(pr.units.iter().all(|u| u.lower <= u.upper && u.upper <= 1.0));
                }
            }
        }
    }

    /// At the residual, the weakest-path estimate is close to
    /// `m^{-r} / sqrt(4 pi r ln m)` for long codes.
    #[test]
    fn estimate_at_residual_matches_asymptote() {
        for (m, r) in [(20, 1), (24, 1), (20, 2), (26, 2)] {
            let params = p(m, r);
            let eps = epsilon_psi(params).unwrap();
            let pr = predict_errors(params, eps, Algorithm::Psi).unwrap();
            let w = pr.unit(weakest_path(params).bits()).unwrap();
            assert_eq!(w.method, PredictionMethod::Gaussian);
            let (mf, rf) = (m as f64, r as f64);
            let asym = mf.powf(-rf) / (4.0 * std::f64::consts::PI * rf * mf.ln()).sqrt();
            let ratio = w.upper / asym;
            assert!(ratio > 0.8 && ratio < 1.0, "m={m} r={r} ratio={ratio}");
        }
    }
}
