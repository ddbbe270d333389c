//! Full density-matrix equations of motion for the Λ system.
//!
//! The probe terms are kept to all orders, so this module is an independent
//! check on the weak-probe closed forms in [`crate::model`]. Nothing here
//! calls into that module.

use nalgebra::{SMatrix, SVector};
use num_complex::Complex64;
use std::ops::{Add, Index, IndexMut, Mul};

use crate::error::{Error, Result};
use crate::model::SusceptibilitySample;
use crate::params::{Scheme, SystemParams};

pub const HERMITIAN_TOL: f64 = 1e-12;
pub const TRACE_TOL: f64 = 1e-10;
pub const POPULATION_FLOOR: f64 = -1e-10;

/// Drift of any invariant beyond this aborts an integration.
pub const DRIFT_LIMIT: f64 = 1e-8;

/// dt must not exceed this fraction of the inverse fastest rate.
pub const STEP_FRACTION: f64 = 0.01;

/// Detuning step of the finite-difference dispersion slope.
pub const FD_STEP: f64 = 1e-4;

/// Relative residual accepted from the steady-state linear solve.
pub const SOLVE_RESIDUAL: f64 = 1e-12;

const I: Complex64 = Complex64::new(0.0, 1.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// 3×3 complex matrix indexed from 0, so `rho[(2, 0)]` is ρ₃₁.
///
/// The same type carries time derivatives, which have zero rather than unit
/// trace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix {
    m: [[Complex64; 3]; 3],
}

impl DensityMatrix {
    pub fn zeros() -> Self {
        Self { m: [[ZERO; 3]; 3] }
    }

    pub fn diagonal(p1: f64, p2: f64, p3: f64) -> Self {
        let mut rho = Self::zeros();
        rho.m[0][0] = p1.into();
        rho.m[1][1] = p2.into();
        rho.m[2][2] = p3.into();
        rho
    }

    /// All population in |1⟩.
    pub fn ground() -> Self {
        Self::diagonal(1.0, 0.0, 0.0)
    }

    pub fn from_array(m: [[Complex64; 3]; 3]) -> Self {
        Self { m }
    }

    pub fn as_array(&self) -> &[[Complex64; 3]; 3] {
        &self.m
    }

    pub fn trace(&self) -> Complex64 {
        self.m[0][0] + self.m[1][1] + self.m[2][2]
    }

    /// Populations (ρ₁₁, ρ₂₂, ρ₃₃), real parts of the diagonal.
    pub fn populations(&self) -> [f64; 3] {
        [self.m[0][0].re, self.m[1][1].re, self.m[2][2].re]
    }

    /// max |ρᵢⱼ − ρⱼᵢ*| over all entries, diagonal included.
    pub fn hermiticity_error(&self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..3 {
            for j in i..3 {
                worst = worst.max((self.m[i][j] - self.m[j][i].conj()).norm());
            }
        }
        worst
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..3 {
            for j in 0..3 {
                worst = worst.max((self.m[i][j] - other.m[i][j]).norm());
            }
        }
        worst
    }

    pub fn is_finite(&self) -> bool {
        self.m.iter().flatten().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Checks Hermiticity, unit trace and non-negative populations.
    pub fn check(&self) -> Result<()> {
        self.check_with(HERMITIAN_TOL, TRACE_TOL, POPULATION_FLOOR)
    }

    fn check_with(&self, herm: f64, trace: f64, floor: f64) -> Result<()> {
        let bad = |reason: String| Err(Error::param("rho", reason));
        if !self.is_finite() {
            return bad("non-finite entry".into());
        }
        let h = self.hermiticity_error();
        if h > herm {
            return bad(format!("not Hermitian (error {h:e})"));
        }
        let t = (self.trace() - 1.0).norm();
        if t > trace {
            return bad(format!("trace differs from 1 by {t:e}"));
        }
        if let Some(p) = self.populations().into_iter().find(|&p| p < floor) {
            return bad(format!("negative population {p:e}"));
        }
        Ok(())
    }

    fn scaled_add(&self, k: f64, other: &Self) -> Self {
        let mut out = *self;
        for i in 0..3 {
            for j in 0..3 {
                out.m[i][j] += other.m[i][j] * k;
            }
        }
        out
    }
}

impl Index<(usize, usize)> for DensityMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.m[i][j]
    }
}

impl IndexMut<(usize, usize)> for DensityMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.m[i][j]
    }
}

impl Add for DensityMatrix {
    type Output = DensityMatrix;

    fn add(self, rhs: Self) -> Self {
        self.scaled_add(1.0, &rhs)
    }
}

impl Mul<f64> for DensityMatrix {
    type Output = DensityMatrix;

    fn mul(self, k: f64) -> Self {
        DensityMatrix::zeros().scaled_add(k, &self)
    }
}

fn require_lambda(p: &SystemParams) -> Result<()> {
    match p.scheme {
        Scheme::Lambda => Ok(()),
        Scheme::Vee => Err(Error::Precondition("the equations of motion cover the Λ scheme only".into())),
    }
}

/// dρ/dt in the rotating frame.
///
/// Every entry, including ρ₃₃ and the upper triangle, is evolved from its own
/// equation, so unit trace and Hermiticity are properties of the dynamics
/// rather than of the storage. The probe Rabi frequency is taken as real and
/// common to both transitions.
pub fn eom_rhs(p: &SystemParams, rho: &DensityMatrix, delta_p: f64) -> Result<DensityMatrix> {
    require_lambda(p)?;
    Ok(rhs(p, rho, delta_p))
}

fn rhs(p: &SystemParams, rho: &DensityMatrix, delta_p: f64) -> DensityMatrix {
    let rates = p.effective_rates();
    let (g1, g2, r1, r2) = (p.gamma1, p.gamma2, p.r1, p.r2);
    let o1 = Complex64::new(p.omega_p_rabi, 0.0);
    let o2 = o1;
    let w = p.omega;
    let d31 = delta_p + 0.5 * w;
    let d32 = delta_p - 0.5 * w;

    let r = &rho.m;
    let (r11, r22, r33) = (r[0][0], r[1][1], r[2][2]);
    let (r21, r31, r32) = (r[1][0], r[2][0], r[2][1]);
    let (r12, r13, r23) = (r[0][1], r[0][2], r[1][2]);

    let mut out = DensityMatrix::zeros();
    let m = &mut out.m;
    m[0][0] = I * o1 * r31 - I * o1.conj() * r13 + g1 * r33 - r1 * r11;
    m[1][1] = I * o2 * r32 - I * o2.conj() * r23 + g2 * r33 - r2 * r22;
    m[2][2] = -I * o1 * r31 + I * o1.conj() * r13 - I * o2 * r32 + I * o2.conj() * r23 - (g1 + g2) * r33
        + r1 * r11
        + r2 * r22;

    m[1][0] = (I * w - rates.gamma21) * r21 + I * o2 * r31 - I * o1.conj() * r23;
    m[2][0] = (I * d31 - rates.gamma31) * r31 + I * o2.conj() * r21 - I * o1.conj() * (r33 - r11);
    m[2][1] = (I * d32 - rates.gamma32) * r32 + I * o1.conj() * r12 - I * o2.conj() * (r33 - r22);

    m[0][1] = (-I * w - rates.gamma21) * r12 - I * o2.conj() * r13 + I * o1 * r32;
    m[0][2] = (-I * d31 - rates.gamma31) * r13 - I * o2 * r12 + I * o1 * (r33 - r11);
    m[1][2] = (-I * d32 - rates.gamma32) * r23 - I * o1 * r21 + I * o2 * (r33 - r22);
    out
}

/// Time points and states of an integration run.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<DensityMatrix>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn final_state(&self) -> &DensityMatrix {
        self.states.last().expect("trajectory always holds the initial state")
    }
}

/// Largest admissible fixed step for `p` at `delta_p`.
pub fn max_step(p: &SystemParams, delta_p: f64) -> f64 {
    let rates = p.effective_rates();
    let fastest = [
        p.gamma1,
        p.gamma2,
        p.r1,
        p.r2,
        rates.gamma21,
        rates.gamma31,
        rates.gamma32,
        p.omega.abs(),
        delta_p.abs(),
        p.omega_p_rabi,
    ]
    .into_iter()
    .fold(0.0_f64, f64::max);
    STEP_FRACTION / fastest
}

/// Fixed-step classical RK4 from t = 0 to `t_end`, recording every step.
pub fn integrate(p: &SystemParams, rho0: &DensityMatrix, delta_p: f64, t_end: f64, dt: f64) -> Result<Trajectory> {
    integrate_sampled(p, rho0, delta_p, t_end, dt, 1)
}

/// As [`integrate`], keeping every `stride`-th state plus the final one.
///
/// The step count is ⌈t_end/dt⌉ and the step itself is shrunk to land on
/// `t_end` exactly.
pub fn integrate_sampled(
    p: &SystemParams,
    rho0: &DensityMatrix,
    delta_p: f64,
    t_end: f64,
    dt: f64,
    stride: usize,
) -> Result<Trajectory> {
    require_lambda(p)?;
    p.validate()?;
    rho0.check()?;
    if !(t_end > 0.0 && t_end.is_finite()) {
        return Err(Error::param("t_end", format!("must be positive and finite, got {t_end}")));
    }
    if stride == 0 {
        return Err(Error::param("stride", "must be at least 1"));
    }
    let limit = max_step(p, delta_p);
    if dt.is_nan() || dt <= 0.0 || dt > limit {
        return Err(Error::StepTooLarge { dt, limit });
    }

    let steps = (t_end / dt).ceil().max(1.0) as usize;
    let h = t_end / steps as f64;
    let f = |state: &DensityMatrix| rhs(p, state, delta_p);

    let capacity = steps / stride + 2;
    let mut times = Vec::with_capacity(capacity);
    let mut states = Vec::with_capacity(capacity);
    times.push(0.0);
    states.push(*rho0);

    let mut rho = *rho0;
    for k in 1..=steps {
        let k1 = f(&rho);
        let k2 = f(&rho.scaled_add(0.5 * h, &k1));
        let k3 = f(&rho.scaled_add(0.5 * h, &k2));
        let k4 = f(&rho.scaled_add(h, &k3));
        rho = rho.scaled_add(h / 6.0, &k1).scaled_add(h / 3.0, &k2).scaled_add(h / 3.0, &k3).scaled_add(h / 6.0, &k4);

        let t = t_end * (k as f64 / steps as f64);
        if let Err(e) = rho.check_with(DRIFT_LIMIT, DRIFT_LIMIT, -DRIFT_LIMIT) {
            return Err(Error::IntegrationFailure { time: t, reason: e.to_string() });
        }
        if k % stride == 0 || k == steps {
            times.push(t);
            states.push(rho);
        }
    }
    Ok(Trajectory { times, states })
}

// Real unknowns: ρ₁₁, ρ₂₂, then (Re, Im) of ρ₂₁, ρ₃₁, ρ₃₂; ρ₃₃ = 1 − ρ₁₁ − ρ₂₂.
type Unknowns = SVector<f64, 8>;

fn unpack(x: &Unknowns) -> DensityMatrix {
    let mut rho = DensityMatrix::diagonal(x[0], x[1], 1.0 - x[0] - x[1]);
    for (k, (i, j)) in [(1, 0), (2, 0), (2, 1)].into_iter().enumerate() {
        let z = Complex64::new(x[2 + 2 * k], x[3 + 2 * k]);
        rho.m[i][j] = z;
        rho.m[j][i] = z.conj();
    }
    rho
}

fn pack(d: &DensityMatrix) -> Unknowns {
    let m = &d.m;
    Unknowns::from([m[0][0].re, m[1][1].re, m[1][0].re, m[1][0].im, m[2][0].re, m[2][0].im, m[2][1].re, m[2][1].im])
}

/// Solves dρ/dt = 0 with unit trace directly.
///
/// The generator is affine in the eight real unknowns, so its matrix is read
/// off by evaluating [`eom_rhs`] on the zero vector and on each unit vector,
/// then the 8×8 system is solved by LU with partial pivoting.
pub fn steady_state_numeric(p: &SystemParams, delta_p: f64) -> Result<DensityMatrix> {
    require_lambda(p)?;
    p.validate()?;
    if p.is_unpumped() {
        return Err(Error::NonUniqueSteadyState(
            "both pump rates are zero; at least one of r1, r2 must be positive".into(),
        ));
    }
    let f = |x: &Unknowns| pack(&rhs(p, &unpack(x), delta_p));
    let offset = f(&Unknowns::zeros());
    let mut a = SMatrix::<f64, 8, 8>::zeros();
    for j in 0..8 {
        let col = f(&Unknowns::ith(j, 1.0)) - offset;
        a.set_column(j, &col);
    }
    let rhs_vec = -offset;
    let x =
        a.lu().solve(&rhs_vec).ok_or_else(|| Error::NonUniqueSteadyState("singular steady-state generator".into()))?;

    let residual = (a * x - rhs_vec).amax();
    let scale = a.amax() * x.amax() + rhs_vec.amax();
    if residual > SOLVE_RESIDUAL * scale || !residual.is_finite() {
        return Err(Error::InaccurateSolve { residual: residual / scale, limit: SOLVE_RESIDUAL });
    }
    Ok(unpack(&x))
}

/// χ/α = (ρ₃₁ + ρ₃₂)/Ω_p from the numeric steady state.
pub fn chi_numeric(p: &SystemParams, delta_p: f64) -> Result<Complex64> {
    p.validate_weak_probe()?;
    if p.omega_p_rabi <= 0.0 {
        return Err(Error::param("omega_p_rabi", "must be > 0 for the numeric susceptibility"));
    }
    let rho = steady_state_numeric(p, delta_p)?;
    Ok((rho[(2, 0)] + rho[(2, 1)]) / p.omega_p_rabi)
}

/// [`chi_numeric`] plus a central-difference slope with step [`FD_STEP`].
pub fn susceptibility_numeric(p: &SystemParams, delta_p: f64) -> Result<SusceptibilitySample> {
    let chi = |delta: f64| chi_numeric(p, delta);
    let centre = chi(delta_p)?;
    let slope = (chi(delta_p + FD_STEP)?.re - chi(delta_p - FD_STEP)?.re) / (2.0 * FD_STEP);
    Ok(SusceptibilitySample { delta_p, chi_re: centre.re, chi_im: centre.im, slope })
}
