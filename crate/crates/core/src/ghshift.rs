//! Goos-Hänchen phases and lateral shifts.
//!
//! Every shift follows the stationary-phase rule
//! `p·y/ħ = −(1/cos θ)·∂(arg R)/∂θ`. Writing `R = |R|·exp(−2i·phase)` gives
//! `p·y/ħ = (2/cos θ)·∂phase/∂θ`, which is the familiar form above the
//! critical angle. Below critical the pure quaternionic reflection is
//! `|R|·exp(i(Φnum − Φden))`, so the half-phase is `(Φden − Φnum)/2`.
//!
//! [`Method::Analytic`] differentiates the arctan expressions exactly (chain
//! rule through a dual number); [`Method::FiniteDifference`] differentiates
//! `arg R` of the closed-form reflection numerically.

use std::f64::consts::FRAC_PI_2;
use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::media::{PotentialKind, ScatterScenario};
use crate::qnum::ComplexNum;
use crate::scatter;

/// `|sin θ − N|` below this classifies the incidence as critical.
pub const CRITICAL_EPSILON: f64 = 1e-9;
/// Base central-difference step (radians).
pub const FD_STEP: f64 = 1e-6;
/// Relative disagreement between the `h` and `h/2` estimates that triggers Richardson extrapolation.
pub const RICHARDSON_TRIGGER: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    BelowCritical,
    Critical,
    AboveCritical,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::BelowCritical => "below",
            Self::Critical => "critical",
            Self::AboveCritical => "above",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Analytic,
    FiniteDifference,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShiftResult {
    pub regime: Regime,
    /// Half-phase at θ: `R = |R|·exp(−2i·phase)`.
    pub phase: f64,
    /// `p·y_GH/ħ`; `+∞` when `regime` is [`Regime::Critical`].
    pub shift_adim: f64,
    pub method: Method,
}

pub fn regime(scenario: &ScatterScenario) -> Regime {
    let d = scenario.theta().sin() - scenario.index();
    if d.abs() < CRITICAL_EPSILON {
        Regime::Critical
    } else if d < 0.0 {
        Regime::BelowCritical
    } else {
        Regime::AboveCritical
    }
}

/// Value and θ-derivative carried together.
#[derive(Debug, Clone, Copy)]
struct Dual {
    v: f64,
    d: f64,
}

impl Dual {
    fn angle(theta: f64) -> (Self, Self) {
        let (s, c) = theta.sin_cos();
        (Self { v: s, d: c }, Self { v: c, d: -s })
    }

    fn constant(v: f64) -> Self {
        Self { v, d: 0.0 }
    }

    fn sqrt(self) -> Self {
        let r = self.v.sqrt();
        Self {
            v: r,
            d: self.d / (2.0 * r),
        }
    }

    fn atan2(self, x: Self) -> Self {
        Self {
            v: self.v.atan2(x.v),
            d: (x.v * self.d - self.v * x.d) / (x.v * x.v + self.v * self.v),
        }
    }
}

impl Add for Dual {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self {
            v: self.v + o.v,
            d: self.d + o.d,
        }
    }
}

impl Sub for Dual {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self {
            v: self.v - o.v,
            d: self.d - o.d,
        }
    }
}

impl Mul for Dual {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self {
            v: self.v * o.v,
            d: self.d * o.v + self.v * o.d,
        }
    }
}

impl Mul<Dual> for f64 {
    type Output = Dual;
    fn mul(self, o: Dual) -> Dual {
        Dual {
            v: self * o.v,
            d: self * o.d,
        }
    }
}

fn require_kind(scenario: &ScatterScenario, expected: PotentialKind) -> Result<()> {
    if scenario.kind() == expected {
        Ok(())
    } else {
        Err(Error::KindMismatch {
            expected,
            found: scenario.kind(),
        })
    }
}

fn require_above(scenario: &ScatterScenario) -> Result<()> {
    if scenario.theta().sin() > scenario.index() {
        Ok(())
    } else {
        Err(Error::Regime(format!(
            "theta = {} is not above the critical angle",
            scenario.theta()
        )))
    }
}

fn require_below(scenario: &ScatterScenario) -> Result<()> {
    if scenario.theta().sin() < scenario.index() {
        Ok(())
    } else {
        Err(Error::Regime(format!(
            "theta = {} is not below the critical angle",
            scenario.theta()
        )))
    }
}

/// `ψ_GH = arctan(sqrt(sin²θ − n²)/cos θ)` for a complex step above critical.
pub fn phase_complex(scenario: &ScatterScenario) -> Result<f64> {
    require_kind(scenario, PotentialKind::Complex)?;
    require_above(scenario)?;
    let (s, c) = scenario.theta().sin_cos();
    Ok((s * s - scenario.index_sq()).sqrt().atan2(c))
}

/// Closed-form complex shift `2 tan θ / sqrt(sin²θ − n²)`.
pub fn shift_complex(scenario: &ScatterScenario) -> Result<ShiftResult> {
    require_kind(scenario, PotentialKind::Complex)?;
    match regime(scenario) {
        Regime::Critical => Err(Error::CriticalDivergence {
            theta: scenario.theta(),
        }),
        Regime::BelowCritical => Err(Error::Regime(format!(
            "theta = {} is below the critical angle",
            scenario.theta()
        ))),
        Regime::AboveCritical => {
            let theta = scenario.theta();
            let s = theta.sin();
            Ok(ShiftResult {
                regime: Regime::AboveCritical,
                phase: phase_complex(scenario)?,
                shift_adim: 2.0 * theta.tan() / (s * s - scenario.index_sq()).sqrt(),
                method: Method::Analytic,
            })
        }
    }
}

fn psi_gh_dual(theta: f64, n2: f64) -> Dual {
    let (sin_t, pz) = Dual::angle(theta);
    let sin2 = sin_t * sin_t;
    let a = (sin2 - Dual::constant(n2)).sqrt();
    let b = (sin2 + Dual::constant(n2)).sqrt();
    let (wp, wm) = (1.0 + n2, 1.0 - n2);
    let num = wp * (a * (pz + b)) - wm * (b * (pz + a));
    let den = wp * (pz * (pz + b)) - wm * (pz * (pz + a));
    num.atan2(den)
}

fn phi_below_dual(theta: f64, n2: f64) -> (Dual, Dual) {
    let (sin_t, pz) = Dual::angle(theta);
    let sin2 = sin_t * sin_t;
    let q = (Dual::constant(n2) - sin2).sqrt();
    let b = (sin2 + Dual::constant(n2)).sqrt();
    let (wp, wm) = (1.0 + n2, 1.0 - n2);
    let pz2 = pz * pz;
    let num_y = wm * ((q + b) * pz);
    let num_x = wp * ((pz - q) * (b + pz)) - wm * (pz2 - q * b);
    let den_y = wm * ((q - b) * pz);
    let den_x = wp * ((pz + q) * (b + pz)) - wm * (pz2 + q * b);
    (num_y.atan2(num_x), den_y.atan2(den_x))
}

/// `Ψ_GH` with `R_> = exp(−2iΨ_GH)` for a pure quaternionic step above critical.
pub fn phase_quat_above(scenario: &ScatterScenario) -> Result<f64> {
    require_kind(scenario, PotentialKind::PureQuaternionic)?;
    require_above(scenario)?;
    Ok(psi_gh_dual(scenario.theta(), scenario.index_sq()).v)
}

/// `(Φnum, Φden)` with `arg R_< = Φnum − Φden` for a pure quaternionic step below critical.
pub fn phases_quat_below(scenario: &ScatterScenario) -> Result<(f64, f64)> {
    require_kind(scenario, PotentialKind::PureQuaternionic)?;
    require_below(scenario)?;
    let (num, den) = phi_below_dual(scenario.theta(), scenario.index_sq());
    Ok((num.v, den.v))
}

/// Stationary-phase lateral shift.
///
/// Complex potentials below critical give exactly 0. General potentials only
/// support [`Method::FiniteDifference`].
pub fn shift_stationary_phase(scenario: &ScatterScenario, method: Method) -> Result<ShiftResult> {
    let theta = scenario.theta();
    let regime = regime(scenario);
    if regime == Regime::Critical {
        return Err(Error::CriticalDivergence { theta });
    }
    let cos_t = theta.cos();
    let result = |phase: f64, shift_adim: f64| ShiftResult {
        regime,
        phase,
        // fold −0.0 into 0.0
        shift_adim: shift_adim + 0.0,
        method,
    };

    match (scenario.kind(), regime, method) {
        (PotentialKind::Complex, Regime::BelowCritical, _) => Ok(result(0.0, 0.0)),
        (PotentialKind::Complex, _, Method::Analytic) => shift_complex(scenario),
        (PotentialKind::Complex, _, Method::FiniteDifference) => {
            let d = arg_reflection_derivative(scenario)?;
            Ok(result(phase_complex(scenario)?, -d / cos_t))
        }
        (PotentialKind::PureQuaternionic, Regime::AboveCritical, Method::Analytic) => {
            let psi = psi_gh_dual(theta, scenario.index_sq());
            Ok(result(psi.v, 2.0 * psi.d / cos_t))
        }
        (PotentialKind::PureQuaternionic, Regime::BelowCritical, Method::Analytic) => {
            let (num, den) = phi_below_dual(theta, scenario.index_sq());
            Ok(result(0.5 * (den.v - num.v), (den.d - num.d) / cos_t))
        }
        (PotentialKind::PureQuaternionic, _, Method::FiniteDifference) => {
            let d = arg_reflection_derivative(scenario)?;
            Ok(result(gh_phase(scenario)?, -d / cos_t))
        }
        (PotentialKind::General, _, Method::Analytic) => {
            Err(Error::UnsupportedMethod(PotentialKind::General))
        }
        (PotentialKind::General, _, Method::FiniteDifference) => {
            let d = arg_reflection_derivative(scenario)?;
            Ok(result(gh_phase(scenario)?, -d / cos_t))
        }
        (_, Regime::Critical, _) => unreachable!("handled above"),
    }
}

/// Like [`shift_stationary_phase`] but reports critical incidence as a
/// flagged [`Regime::Critical`] result with an infinite shift.
pub fn evaluate_shift(scenario: &ScatterScenario, method: Method) -> Result<ShiftResult> {
    match shift_stationary_phase(scenario, method) {
        Err(Error::CriticalDivergence { .. }) => Ok(ShiftResult {
            regime: Regime::Critical,
            phase: gh_phase(scenario)?,
            shift_adim: f64::INFINITY,
            method,
        }),
        other => other,
    }
}

/// Regime-appropriate half-phase, `R = |R|·exp(−2i·phase)`.
pub fn gh_phase(scenario: &ScatterScenario) -> Result<f64> {
    let regime = regime(scenario);
    match (scenario.kind(), regime) {
        (PotentialKind::Complex, Regime::AboveCritical) => phase_complex(scenario),
        (PotentialKind::Complex, _) => Ok(0.0),
        (PotentialKind::PureQuaternionic, Regime::AboveCritical) => phase_quat_above(scenario),
        (PotentialKind::PureQuaternionic, Regime::BelowCritical) => {
            let (num, den) = phases_quat_below(scenario)?;
            Ok(0.5 * (den - num))
        }
        _ => Ok(-0.5 * scatter::reflection(scenario)?.arg()),
    }
}

/// Central difference of `arg R(θ)` with a wrapped (two-point unwrapped)
/// difference and one optional Richardson refinement.
fn arg_reflection_derivative(scenario: &ScatterScenario) -> Result<f64> {
    let theta = scenario.theta();
    let mut h = FD_STEP.max(FD_STEP * theta);
    if let Some(theta_c) = scenario.critical_angle() {
        h = h.min(0.5 * (theta - theta_c).abs());
    }
    h = h.min(0.5 * (FRAC_PI_2 - theta));

    // R depends on θ only through sin²θ and cos θ, so R(−θ) = R(θ)
    let reflect =
        |t: f64| -> Result<ComplexNum> { scatter::reflection(&scenario.with_theta(t.abs())?) };
    let central = |h: f64| -> Result<f64> {
        let ratio = reflect(theta + h)? * reflect(theta - h)?.conj();
        Ok(ratio.arg() / (2.0 * h))
    };
    let coarse = central(h)?;
    let fine = central(0.5 * h)?;
    if (coarse - fine).abs() > RICHARDSON_TRIGGER * fine.abs() {
        Ok((4.0 * fine - coarse) / 3.0)
    } else {
        Ok(fine)
    }
}

/// Removes `2π` jumps larger than `π` between consecutive samples, in place.
pub fn unwrap_phases(phases: &mut [f64]) {
    use std::f64::consts::TAU;
    for i in 1..phases.len() {
        let jump = phases[i] - phases[i - 1];
        phases[i] -= TAU * (jump / TAU).round();
    }
}
