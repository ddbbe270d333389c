//! Parameter sweeps: spectra over detuning, the (R, ω) regime map, group
//! index against pump rate, and the closed-form-vs-dynamics validation run.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dynamics;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::model::{self, RegimeClass, SusceptibilitySample};
use crate::params::SystemParams;

/// `n` evenly spaced points from `min` to `max` inclusive.
///
/// Points are computed as `min + (max − min)·i/(n − 1)`, so both ends are
/// exact and a symmetric range with odd `n` contains 0 exactly.
pub fn linspace(min: f64, max: f64, n: usize) -> Result<Vec<f64>> {
    if !(min.is_finite() && max.is_finite()) {
        return Err(Error::InvalidGrid(format!("non-finite range [{min}, {max}]")));
    }
    match n {
        0 => Err(Error::InvalidGrid("grid needs at least one point".into())),
        1 if min == max => Ok(vec![min]),
        1 => Err(Error::InvalidGrid(format!("a single point needs min == max, got [{min}, {max}]"))),
        _ if min >= max => Err(Error::InvalidGrid(format!("need min < max, got [{min}, {max}]"))),
        _ => {
            let span = max - min;
            let last = (n - 1) as f64;
            let grid: Vec<f64> = (0..n).map(|i| min + span * (i as f64 / last)).collect();
            if grid.windows(2).all(|w| w[1] > w[0]) {
                Ok(grid)
            } else {
                Err(Error::InvalidGrid(format!("{n} points do not resolve [{min}, {max}]")))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumSeries {
    pub params: SystemParams,
    pub grid: Vec<f64>,
    pub samples: Vec<SusceptibilitySample>,
}

/// Regime classes over an (R, ω) grid. Cells are stored row-major with ω as
/// the outer index.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegimeGrid {
    /// Parameters held fixed across the map; `r1`, `r2` and `omega` are
    /// overwritten per cell.
    pub base: SystemParams,
    pub r_axis: Vec<f64>,
    pub omega_axis: Vec<f64>,
    pub cells: Vec<RegimeClass>,
}

impl RegimeGrid {
    pub fn cell(&self, ir: usize, iomega: usize) -> RegimeClass {
        self.cells[iomega * self.r_axis.len() + ir]
    }

    /// `(r, omega, class)` in storage order.
    pub fn iter(&self) -> impl Iterator<Item = (f64, f64, RegimeClass)> + '_ {
        let nr = self.r_axis.len();
        self.cells.iter().enumerate().map(move |(k, &c)| (self.r_axis[k % nr], self.omega_axis[k / nr], c))
    }

    pub fn count(&self, class: RegimeClass) -> usize {
        self.cells.iter().filter(|&&c| c == class).count()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupIndexCurve {
    pub omega: f64,
    pub r_axis: Vec<f64>,
    /// n_g − 1 per pump rate.
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationCase {
    pub case_id: usize,
    pub params: SystemParams,
    pub delta_p: f64,
    pub chi_analytic: Complex64,
    pub chi_numeric: Complex64,
    pub abs_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseFailure {
    pub case_id: usize,
    pub params: SystemParams,
    pub message: String,
}

/// Closed form against the numeric steady state, both in units of α.
///
/// `pass` holds when every case evaluated and the largest deviation is
/// within `tolerance`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub cases: Vec<ValidationCase>,
    pub failures: Vec<CaseFailure>,
    pub max_error: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Runs sweeps with a chosen [`Execution`] strategy.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Scanner {
    pub execution: Execution,
}

impl Scanner {
    pub fn new(execution: Execution) -> Self {
        Self { execution }
    }

    pub fn sequential() -> Self {
        Self::new(Execution::Sequential)
    }

    pub fn spectrum(
        &self,
        params: &SystemParams,
        delta_min: f64,
        delta_max: f64,
        n_points: usize,
    ) -> Result<SpectrumSeries> {
        if n_points < 2 {
            return Err(Error::InvalidGrid(format!("spectrum needs at least 2 points, got {n_points}")));
        }
        let grid = linspace(delta_min, delta_max, n_points)?;
        // Fail on bad parameters once, before fanning out.
        model::closed_form(params, grid[0])?;
        let samples = self
            .execution
            .map(grid.len(), |i| model::closed_form(params, grid[i]))
            .into_iter()
            .collect::<Result<Vec<_>>>()?;
        Ok(SpectrumSeries { params: *params, grid, samples })
    }

    pub fn regime_map(
        &self,
        base: &SystemParams,
        (r_min, r_max, n_r): (f64, f64, usize),
        (omega_min, omega_max, n_omega): (f64, f64, usize),
    ) -> Result<RegimeGrid> {
        let r_axis = linspace(r_min, r_max, n_r)?;
        let omega_axis = linspace(omega_min, omega_max, n_omega)?;
        let cells = self
            .execution
            .map(n_r * n_omega, |k| {
                let p = base.with_rate(r_axis[k % n_r]).with_omega(omega_axis[k / n_r]);
                p.validate().and_then(|()| model::classify_regime(&p))
            })
            .into_iter()
            .collect::<Result<Vec<_>>>()?;
        Ok(RegimeGrid { base: *base, r_axis, omega_axis, cells })
    }

    pub fn group_index(
        &self,
        base: &SystemParams,
        omegas: &[f64],
        r_min: f64,
        r_max: f64,
        n_r: usize,
    ) -> Result<Vec<GroupIndexCurve>> {
        let r_axis = linspace(r_min, r_max, n_r)?;
        let values = self
            .execution
            .map(omegas.len() * n_r, |k| {
                let p = base.with_omega(omegas[k / n_r]).with_rate(r_axis[k % n_r]);
                p.validate().and_then(|()| model::group_index(&p))
            })
            .into_iter()
            .collect::<Result<Vec<_>>>()?;
        Ok(omegas
            .iter()
            .zip(values.chunks(n_r))
            .map(|(&omega, chunk)| GroupIndexCurve { omega, r_axis: r_axis.clone(), values: chunk.to_vec() })
            .collect())
    }

    pub fn validate(
        &self,
        param_cases: &[SystemParams],
        delta_grid: &[f64],
        tolerance: f64,
    ) -> Result<ValidationReport> {
        if tolerance.is_nan() || tolerance <= 0.0 {
            return Err(Error::param("tolerance", format!("must be > 0, got {tolerance}")));
        }
        let nd = delta_grid.len();
        let evaluated = self.execution.map(param_cases.len() * nd, |k| {
            let (case_id, delta_p) = (k / nd, delta_grid[k % nd]);
            let params = param_cases[case_id];
            let analytic = model::closed_form(&params, delta_p)?.chi();
            let numeric = dynamics::chi_numeric(&params, delta_p)?;
            Ok(ValidationCase {
                case_id,
                params,
                delta_p,
                chi_analytic: analytic,
                chi_numeric: numeric,
                abs_error: (analytic - numeric).norm(),
            })
        });

        let mut cases = Vec::with_capacity(evaluated.len());
        let mut failures: Vec<CaseFailure> = Vec::new();
        for (k, outcome) in evaluated.into_iter().enumerate() {
            match outcome {
                Ok(case) => cases.push(case),
                Err(e) => {
                    let case_id = k / nd;
                    if failures.last().map(|f| f.case_id) != Some(case_id) {
                        failures.push(CaseFailure {
                            case_id,
                            params: param_cases[case_id],
                            message: Error::to_string(&e),
                        });
                    }
                }
            }
        }
        let max_error = cases.iter().map(|c| c.abs_error).fold(0.0_f64, f64::max);
        let pass = failures.is_empty() && max_error <= tolerance;
        Ok(ValidationReport { cases, failures, max_error, tolerance, pass })
    }
}

pub fn spectrum_scan(params: &SystemParams, delta_min: f64, delta_max: f64, n_points: usize) -> Result<SpectrumSeries> {
    Scanner::default().spectrum(params, delta_min, delta_max, n_points)
}

pub fn regime_map(
    base: &SystemParams,
    r_range: (f64, f64, usize),
    omega_range: (f64, f64, usize),
) -> Result<RegimeGrid> {
    Scanner::default().regime_map(base, r_range, omega_range)
}

pub fn group_index_scan(
    base: &SystemParams,
    omegas: &[f64],
    r_min: f64,
    r_max: f64,
    n_r: usize,
) -> Result<Vec<GroupIndexCurve>> {
    Scanner::default().group_index(base, omegas, r_min, r_max, n_r)
}

pub fn validate_run(param_cases: &[SystemParams], delta_grid: &[f64], tolerance: f64) -> Result<ValidationReport> {
    Scanner::default().validate(param_cases, delta_grid, tolerance)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linspace_edges() {
        let g = linspace(-3.0, 3.0, 1601).unwrap();
        assert_eq!(g[800], 0.0);
        assert_eq!((g[0], g[1600]), (-3.0, 3.0));
        assert_eq!(linspace(2.0, 2.0, 1).unwrap(), vec![2.0]);
        assert!(linspace(1.0, 0.0, 5).is_err());
        assert!(linspace(0.0, 1.0, 0).is_err());
        assert!(linspace(0.0, 1.0, 1).is_err());
        assert!(linspace(0.0, f64::INFINITY, 3).is_err());
    }

    #[test]
    fn spectrum_rejects_bad_grids() {
        let p = SystemParams::lambda(1.0, 0.5, 1.0);
        assert!(matches!(spectrum_scan(&p, -1.0, 1.0, 1), Err(Error::InvalidGrid(_))));
        assert!(matches!(spectrum_scan(&p, 1.0, -1.0, 11), Err(Error::InvalidGrid(_))));
        assert!(spectrum_scan(&p.with_rabi(1.0), -1.0, 1.0, 11).is_err());
    }

    #[test]
    fn regime_grid_layout() {
        let base = SystemParams::lambda(1.0, 0.0, 0.0);
        let g = regime_map(&base, (0.5, 2.0, 2), (1.0, 8.0, 2)).unwrap();
        assert_eq!(g.cells.len(), 4);
        let rows: Vec<_> = g.iter().collect();
        assert_eq!(rows[0], (0.5, 1.0, RegimeClass::SuperluminalAbsorption));
        assert_eq!(rows[1], (2.0, 1.0, RegimeClass::SubluminalGain));
        assert_eq!(rows[2], (0.5, 8.0, RegimeClass::SubluminalAbsorption));
        assert_eq!(rows[3], (2.0, 8.0, RegimeClass::SuperluminalGain));
        assert_eq!(g.cell(1, 1), RegimeClass::SuperluminalGain);
    }

    #[test]
    fn empty_validation_passes() {
        let r = validate_run(&[], &[0.0, 1.0], 1e-3).unwrap();
        assert!(r.pass);
        assert_eq!(r.max_error, 0.0);
        assert!(r.cases.is_empty());
        assert!(validate_run(&[], &[0.0], 0.0).is_err());
    }

    #[test]
    fn validation_records_failures_per_case() {
        let cases = [
            SystemParams::lambda(1.0, 0.0, 1.0),
            SystemParams::lambda(1.0, 2.0, 1.0),
            SystemParams::vee(1.0, 2.0, 1.0),
        ];
        let r = validate_run(&cases, &[-1.0, 0.0, 1.0], 1e-3).unwrap();
        assert_eq!(r.failures.iter().map(|f| f.case_id).collect::<Vec<_>>(), vec![0, 2]);
        assert_eq!(r.cases.len(), 3);
        assert!(r.max_error < 1e-3);
        assert!(!r.pass);
    }
}
