use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Default probe Rabi frequency, well inside the weak-probe regime, in units of γ.
pub const DEFAULT_RABI: f64 = 0.01;

/// Probe carrier frequency ν_p = γ/2π, so that 2πν_p = γ.
pub const DEFAULT_NU_P: f64 = 1.0 / (2.0 * PI);

/// The weak-probe regime requires Ω_p ≤ WEAK_PROBE_RATIO · min(γ₁, γ₂).
pub const WEAK_PROBE_RATIO: f64 = 0.1;

/// Relative tolerance when deciding whether two rates are "equal" for the
/// symmetric closed forms.
const SYMMETRY_RTOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    /// Two lower levels |1⟩, |2⟩ sharing the upper level |3⟩.
    #[default]
    Lambda,
    /// One ground level coupled to two upper levels.
    Vee,
}

impl Scheme {
    pub fn as_str(self) -> &'static str {
        match self {
            Scheme::Lambda => "lambda",
            Scheme::Vee => "vee",
        }
    }
}

/// Rate and energy parameters of one configuration, all in units of γ.
///
/// For [`Scheme::Vee`], `gamma1` is the common upper-level decay γ′, `gamma2`
/// is ignored, `omega` is the upper-level splitting ω′ and the pump must be
/// symmetric (`r1 == r2`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SystemParams {
    pub scheme: Scheme,
    pub gamma1: f64,
    pub gamma2: f64,
    pub r1: f64,
    pub r2: f64,
    pub omega: f64,
    pub omega_p_rabi: f64,
    pub alpha: f64,
    pub nu_p: f64,
}

impl Default for SystemParams {
    fn default() -> Self {
        Self {
            scheme: Scheme::Lambda,
            gamma1: 1.0,
            gamma2: 1.0,
            r1: 0.0,
            r2: 0.0,
            omega: 0.0,
            omega_p_rabi: DEFAULT_RABI,
            alpha: 1.0,
            nu_p: DEFAULT_NU_P,
        }
    }
}

impl SystemParams {
    /// Symmetric Λ system: γ₁ = γ₂ = `gamma`, R₁ = R₂ = `rate`.
    pub fn lambda(gamma: f64, rate: f64, omega: f64) -> Self {
        Self { gamma1: gamma, gamma2: gamma, r1: rate, r2: rate, omega, ..Self::default() }
    }

    /// Symmetric V system with upper-level decay γ′ and splitting ω′.
    pub fn vee(gamma: f64, rate: f64, omega: f64) -> Self {
        Self { scheme: Scheme::Vee, ..Self::lambda(gamma, rate, omega) }
    }

    pub fn with_rabi(mut self, rabi: f64) -> Self {
        self.omega_p_rabi = rabi;
        self
    }

    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn with_nu_p(mut self, nu_p: f64) -> Self {
        self.nu_p = nu_p;
        self
    }

    /// Sets both pump rates.
    pub fn with_rate(mut self, rate: f64) -> Self {
        self.r1 = rate;
        self.r2 = rate;
        self
    }

    pub fn with_omega(mut self, omega: f64) -> Self {
        self.omega = omega;
        self
    }

    /// Checks the domain of every field. Does not check the weak-probe flag.
    pub fn validate(&self) -> Result<()> {
        fn finite(name: &'static str, v: f64) -> Result<()> {
            if v.is_finite() {
                Ok(())
            } else {
                Err(Error::param(name, format!("must be finite, got {v}")))
            }
        }
        fn positive(name: &'static str, v: f64) -> Result<()> {
            finite(name, v)?;
            if v > 0.0 {
                Ok(())
            } else {
                Err(Error::param(name, format!("must be > 0, got {v}")))
            }
        }
        fn non_negative(name: &'static str, v: f64) -> Result<()> {
            finite(name, v)?;
            if v >= 0.0 {
                Ok(())
            } else {
                Err(Error::param(name, format!("must be >= 0, got {v}")))
            }
        }

        positive("gamma1", self.gamma1)?;
        if self.scheme == Scheme::Lambda {
            positive("gamma2", self.gamma2)?;
        }
        non_negative("r1", self.r1)?;
        non_negative("r2", self.r2)?;
        non_negative("omega", self.omega)?;
        non_negative("omega_p_rabi", self.omega_p_rabi)?;
        positive("alpha", self.alpha)?;
        positive("nu_p", self.nu_p)?;
        if self.scheme == Scheme::Vee && !approx_eq(self.r1, self.r2) {
            return Err(Error::param("r2", "the V scheme requires r1 == r2"));
        }
        Ok(())
    }

    /// Largest Rabi frequency for which the weak-probe closed forms apply.
    pub fn weak_probe_limit(&self) -> f64 {
        let gamma_min = match self.scheme {
            Scheme::Lambda => self.gamma1.min(self.gamma2),
            Scheme::Vee => self.gamma1,
        };
        WEAK_PROBE_RATIO * gamma_min
    }

    pub fn is_weak_probe(&self) -> bool {
        self.omega_p_rabi <= self.weak_probe_limit()
    }

    /// Validates the fields and the weak-probe flag.
    pub fn validate_weak_probe(&self) -> Result<()> {
        self.validate()?;
        if self.is_weak_probe() {
            Ok(())
        } else {
            Err(Error::WeakProbeViolated { rabi: self.omega_p_rabi, limit: self.weak_probe_limit() })
        }
    }

    /// True when both pumps and both decays coincide (or for any valid V
    /// configuration, which is symmetric by construction).
    pub fn is_symmetric(&self) -> bool {
        match self.scheme {
            Scheme::Lambda => approx_eq(self.r1, self.r2) && approx_eq(self.gamma1, self.gamma2),
            Scheme::Vee => approx_eq(self.r1, self.r2),
        }
    }

    /// R₁ = R₂ = 0: the closed-form populations fall back to their R → 0 limit.
    pub fn is_unpumped(&self) -> bool {
        self.r1 == 0.0 && self.r2 == 0.0
    }

    /// Common pump rate of a symmetric configuration.
    pub(crate) fn rate(&self) -> f64 {
        0.5 * (self.r1 + self.r2)
    }

    /// Common decay rate of a symmetric configuration.
    pub(crate) fn gamma(&self) -> f64 {
        match self.scheme {
            Scheme::Lambda => 0.5 * (self.gamma1 + self.gamma2),
            Scheme::Vee => self.gamma1,
        }
    }

    pub fn effective_rates(&self) -> EffectiveRates {
        EffectiveRates::of(self)
    }
}

fn approx_eq(a: f64, b: f64) -> bool {
    (a - b).abs() <= SYMMETRY_RTOL * a.abs().max(b.abs())
}

/// Coherence damping rates, units of γ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EffectiveRates {
    /// Damping of ρ₃₁.
    pub gamma31: f64,
    /// Damping of ρ₃₂.
    pub gamma32: f64,
    /// Damping of the lower-level coherence ρ₂₁.
    pub gamma21: f64,
    /// Half width of each Lorentzian line. For Λ this is γ + R/2 (the mean
    /// of `gamma31` and `gamma32` when the pumps differ); for V it is
    /// (γ′ + R)/2.
    pub gamma_r: f64,
}

impl EffectiveRates {
    pub fn of(p: &SystemParams) -> Self {
        match p.scheme {
            Scheme::Lambda => {
                let gamma31 = 0.5 * (p.gamma1 + p.gamma2 + p.r1);
                let gamma32 = 0.5 * (p.gamma1 + p.gamma2 + p.r2);
                Self { gamma31, gamma32, gamma21: 0.5 * (p.r1 + p.r2), gamma_r: 0.5 * (gamma31 + gamma32) }
            }
            Scheme::Vee => {
                // Only the line width enters the V closed form.
                let gamma_r = 0.5 * (p.gamma1 + p.rate());
                Self { gamma31: gamma_r, gamma32: gamma_r, gamma21: p.rate(), gamma_r }
            }
        }
    }
}
