//! Closed-form weak-probe steady state and the optical response built on it.
//!
//! Two routes to the susceptibility are kept separate on purpose:
//! [`susceptibility`] assembles χ from the complex probe coherences of the
//! general Λ steady state, while [`susceptibility_symmetric`] and
//! [`susceptibility_vee`] evaluate the real two-Lorentzian expressions
//! directly. Whenever both apply they must agree to rounding.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};
use crate::params::{Scheme, SystemParams};

/// |inversion| below this is treated as saturation.
pub const INVERSION_TIE: f64 = 1e-12;
/// |slope(0)| below this (units of α/γ²) is a sub/superluminal tie.
pub const SLOPE_TIE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Populations {
    pub rho11: f64,
    pub rho22: f64,
    pub rho33: f64,
}

/// Linear probe response at one detuning, in units of α.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SusceptibilitySample {
    /// Probe detuning from the line centre, angular, units of γ.
    pub delta_p: f64,
    /// Re χ / α (dispersion).
    pub chi_re: f64,
    /// Im χ / α; positive is attenuation, negative is gain.
    pub chi_im: f64,
    /// ∂(Re χ/α)/∂δ_p.
    pub slope: f64,
}

impl SusceptibilitySample {
    pub fn chi(&self) -> Complex64 {
        Complex64::new(self.chi_re, self.chi_im)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RegimeClass {
    SubluminalAbsorption,
    SubluminalGain,
    SuperluminalAbsorption,
    SuperluminalGain,
    Saturated,
}

impl RegimeClass {
    pub const ALL: [RegimeClass; 5] = [
        RegimeClass::SubluminalAbsorption,
        RegimeClass::SubluminalGain,
        RegimeClass::SuperluminalAbsorption,
        RegimeClass::SuperluminalGain,
        RegimeClass::Saturated,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RegimeClass::SubluminalAbsorption => "subluminal-absorption",
            RegimeClass::SubluminalGain => "subluminal-gain",
            RegimeClass::SuperluminalAbsorption => "superluminal-absorption",
            RegimeClass::SuperluminalGain => "superluminal-gain",
            RegimeClass::Saturated => "saturated",
        }
    }

    pub fn is_superluminal(self) -> bool {
        matches!(self, RegimeClass::SuperluminalAbsorption | RegimeClass::SuperluminalGain)
    }

    pub fn has_gain(self) -> bool {
        matches!(self, RegimeClass::SubluminalGain | RegimeClass::SuperluminalGain)
    }
}

impl fmt::Display for RegimeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for RegimeClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        RegimeClass::ALL.into_iter().find(|c| c.as_str() == s).ok_or_else(|| format!("unknown regime class `{s}`"))
    }
}

fn require_lambda(p: &SystemParams, op: &str) -> Result<()> {
    match p.scheme {
        Scheme::Lambda => Ok(()),
        Scheme::Vee => Err(Error::Precondition(format!("{op} needs the Λ scheme"))),
    }
}

fn require_symmetric(p: &SystemParams, op: &str) -> Result<()> {
    if p.is_symmetric() {
        Ok(())
    } else {
        Err(Error::Precondition(format!("{op} needs r1 == r2 and gamma1 == gamma2")))
    }
}

/// Steady-state populations of the Λ system to zeroth order in the probe.
///
/// With both pumps off the exact expressions are 0/0; the R₁ = R₂ → 0 limit
/// (γ₁, γ₂)/(γ₁+γ₂) is returned instead and a warning is logged.
pub fn steady_populations(p: &SystemParams) -> Result<Populations> {
    require_lambda(p, "steady_populations")?;
    p.validate_weak_probe()?;
    let (g1, g2, r1, r2) = (p.gamma1, p.gamma2, p.r1, p.r2);
    if p.is_unpumped() {
        log::warn!("both pump rates are zero; using the R -> 0 limit of the populations");
        let total = g1 + g2;
        return Ok(Populations { rho11: g1 / total, rho22: g2 / total, rho33: 0.0 });
    }
    let denom = r1 * r2 + r1 * g2 + r2 * g1;
    Ok(Populations { rho11: r2 * g1 / denom, rho22: r1 * g2 / denom, rho33: r1 * r2 / denom })
}

/// ρ₃₃ − ρ₁₁ for R₁ = R₂ = `r` and γ₁ = γ₂ = `gamma`.
pub fn inversion_symmetric(r: f64, gamma: f64) -> f64 {
    (r - gamma) / (r + 2.0 * gamma)
}

/// Probe coherences (ρ₃₁, ρ₃₂) to first order in the (real) Rabi frequency.
pub fn steady_coherences(p: &SystemParams, delta_p: f64) -> Result<(Complex64, Complex64)> {
    let pops = steady_populations(p)?;
    let rates = p.effective_rates();
    let rabi = Complex64::new(p.omega_p_rabi, 0.0);
    let half = 0.5 * p.omega;
    let rho31 = rabi.conj() * (pops.rho33 - pops.rho11) / Complex64::new(delta_p + half, rates.gamma31);
    let rho32 = rabi.conj() * (pops.rho33 - pops.rho22) / Complex64::new(delta_p - half, rates.gamma32);
    Ok((rho31, rho32))
}

/// χ/α = (ρ₃₁ + ρ₃₂)/Ω_p for a general (possibly asymmetric) Λ system.
pub fn susceptibility(p: &SystemParams, delta_p: f64) -> Result<SusceptibilitySample> {
    require_lambda(p, "susceptibility")?;
    p.validate_weak_probe()?;
    if p.omega_p_rabi <= 0.0 {
        return Err(Error::param("omega_p_rabi", "must be > 0 to normalise the coherences"));
    }
    let (rho31, rho32) = steady_coherences(p, delta_p)?;
    let chi = (rho31 + rho32) / p.omega_p_rabi;
    Ok(SusceptibilitySample { delta_p, chi_re: chi.re, chi_im: chi.im, slope: dispersion_slope(p, delta_p)? })
}

/// Two-Lorentzian closed form for the symmetric Λ system.
///
/// Lines sit at δ_p = ±ω/2 with half width γ_r = γ + R/2, scaled by the
/// inversion (R − γ)/(R + 2γ).
pub fn susceptibility_symmetric(p: &SystemParams, delta_p: f64) -> Result<SusceptibilitySample> {
    require_lambda(p, "susceptibility_symmetric")?;
    require_symmetric(p, "susceptibility_symmetric")?;
    p.validate_weak_probe()?;
    let (gamma, rate) = (p.gamma(), p.rate());
    let gamma_r = gamma + 0.5 * rate;
    let inversion = inversion_symmetric(rate, gamma);
    Ok(lorentzian_pair(inversion, gamma_r, p.omega, delta_p))
}

/// Two-Lorentzian closed form for the symmetric V system.
pub fn susceptibility_vee(p: &SystemParams, delta_p: f64) -> Result<SusceptibilitySample> {
    if p.scheme != Scheme::Vee {
        return Err(Error::Precondition("susceptibility_vee needs the V scheme".into()));
    }
    p.validate_weak_probe()?;
    let (gamma, rate) = (p.gamma1, p.rate());
    let gamma_r = 0.5 * (gamma + rate);
    let inversion = (rate - gamma) / (2.0 * rate + gamma);
    Ok(lorentzian_pair(inversion, gamma_r, p.omega, delta_p))
}

fn lorentzian_pair(prefactor: f64, gamma_r: f64, omega: f64, delta_p: f64) -> SusceptibilitySample {
    let g2 = gamma_r * gamma_r;
    let plus = delta_p + 0.5 * omega;
    let minus = delta_p - 0.5 * omega;
    let dp = plus * plus + g2;
    let dm = minus * minus + g2;
    SusceptibilitySample {
        delta_p,
        chi_re: prefactor * (plus / dp + minus / dm),
        chi_im: -prefactor * (gamma_r / dp + gamma_r / dm),
        slope: prefactor * ((g2 - plus * plus) / (dp * dp) + (g2 - minus * minus) / (dm * dm)),
    }
}

/// The closed form appropriate to `p`: the V expression, the symmetric Λ
/// expression, or the general coherence-based Λ route.
pub fn closed_form(p: &SystemParams, delta_p: f64) -> Result<SusceptibilitySample> {
    match p.scheme {
        Scheme::Vee => susceptibility_vee(p, delta_p),
        Scheme::Lambda if p.is_symmetric() => susceptibility_symmetric(p, delta_p),
        Scheme::Lambda => susceptibility(p, delta_p),
    }
}

/// Population-difference prefactor of a symmetric configuration.
pub fn inversion_prefactor(p: &SystemParams) -> Result<f64> {
    require_symmetric(p, "inversion_prefactor")?;
    let (gamma, rate) = (p.gamma(), p.rate());
    Ok(match p.scheme {
        Scheme::Lambda => inversion_symmetric(rate, gamma),
        Scheme::Vee => (rate - gamma) / (2.0 * rate + gamma),
    })
}

/// Analytic ∂(Re χ/α)/∂δ_p.
///
/// Each line P·x/(x² + Γ²) differentiates to P·(Γ² − x²)/(x² + Γ²)². For an
/// asymmetric Λ system the two lines carry their own inversion and width.
pub fn dispersion_slope(p: &SystemParams, delta_p: f64) -> Result<f64> {
    p.validate()?;
    let line = |inv: f64, width: f64, x: f64| {
        let w2 = width * width;
        let d = x * x + w2;
        inv * (w2 - x * x) / (d * d)
    };
    let half = 0.5 * p.omega;
    match p.scheme {
        Scheme::Lambda if !p.is_symmetric() => {
            let pops = steady_populations(p)?;
            let rates = p.effective_rates();
            Ok(line(pops.rho33 - pops.rho11, rates.gamma31, delta_p + half)
                + line(pops.rho33 - pops.rho22, rates.gamma32, delta_p - half))
        }
        _ => {
            let inv = inversion_prefactor(p)?;
            let width = p.effective_rates().gamma_r;
            Ok(line(inv, width, delta_p + half) + line(inv, width, delta_p - half))
        }
    }
}

/// Group index minus one, n_g − 1, at δ_p = 0.
///
/// δ_p is an angular detuning while ν_p is an ordinary frequency, so
/// ∂χ′/∂ν_p = 2π ∂χ′/∂δ_p. The result includes the α scale.
pub fn group_index(p: &SystemParams) -> Result<f64> {
    let s = closed_form(p, 0.0)?;
    let two_pi = 2.0 * PI;
    Ok(p.alpha * (two_pi * s.chi_re + two_pi * p.nu_p * (two_pi * s.slope)))
}

/// Regime at δ_p = 0, between the two lines.
///
/// Negative dispersion slope is superluminal, positive Im χ is absorption.
/// A vanishing inversion is [`RegimeClass::Saturated`]; a vanishing slope
/// with nonzero inversion gives n_g = 1 and is reported as subluminal.
pub fn classify_regime(p: &SystemParams) -> Result<RegimeClass> {
    let inversion = inversion_prefactor(p)?;
    if inversion.abs() < INVERSION_TIE {
        return Ok(RegimeClass::Saturated);
    }
    let s = closed_form(p, 0.0)?;
    let superluminal = s.slope < -SLOPE_TIE;
    let gain = s.chi_im < 0.0;
    Ok(match (superluminal, gain) {
        (true, true) => RegimeClass::SuperluminalGain,
        (true, false) => RegimeClass::SuperluminalAbsorption,
        (false, true) => RegimeClass::SubluminalGain,
        (false, false) => RegimeClass::SubluminalAbsorption,
    })
}
