//! Step potentials, refractive indices and the momentum components on both
//! sides of the interface.
//!
//! Units: E = 1, ħ = 1, m = 1/2. Potentials are given as ratios V/E and the
//! incident momentum `p` is free, so every momentum below scales with `p`.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qnum::{ComplexNum, Quaternion};

/// Relative width of the band around `sin θ = N` inside which `Q_z` is taken
/// to be exactly zero.
const QZ_SNAP: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PotentialKind {
    /// `v2 = v3 = 0`.
    Complex,
    /// `v1 = 0`, `(v2, v3) ≠ 0`.
    PureQuaternionic,
    General,
}

impl PotentialKind {
    fn classify(v1: f64, v2: f64, v3: f64) -> Self {
        if v2 == 0.0 && v3 == 0.0 {
            Self::Complex
        } else if v1 == 0.0 {
            Self::PureQuaternionic
        } else {
            Self::General
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Complex => "complex",
            Self::PureQuaternionic => "purequat",
            Self::General => "general",
        }
    }
}

/// Step potential `i·V1 + j·V2 + k·V3` for `z > 0`, stored as ratios to E.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PotentialSpec {
    v1: f64,
    v2: f64,
    v3: f64,
    kind: PotentialKind,
}

impl PotentialSpec {
    /// Classifies the kind from the exact zero pattern of the inputs.
    pub fn new(v1: f64, v2: f64, v3: f64) -> Result<Self> {
        if !(v1.is_finite() && v2.is_finite() && v3.is_finite()) {
            return Err(Error::Domain(format!(
                "potential components must be finite, got ({v1}, {v2}, {v3})"
            )));
        }
        if v2 * v2 + v3 * v3 >= 1.0 {
            return Err(Error::Domain(format!(
                "v2² + v3² = {} must be < 1 for a real refractive index",
                v2 * v2 + v3 * v3
            )));
        }
        Ok(Self {
            v1,
            v2,
            v3,
            kind: PotentialKind::classify(v1, v2, v3),
        })
    }

    pub fn complex(v1: f64) -> Result<Self> {
        Self::new(v1, 0.0, 0.0)
    }

    /// `V2 + i·V3 = vmod·exp(i·vphase)`, `V1 = 0`.
    pub fn pure_quaternionic(vmod: f64, vphase: f64) -> Result<Self> {
        Self::from_polar(0.0, vmod, vphase)
    }

    /// `V1 = v1`, `V2 + i·V3 = vmod·exp(i·vphase)`.
    pub fn from_polar(v1: f64, vmod: f64, vphase: f64) -> Result<Self> {
        if vmod < 0.0 {
            return Err(Error::Domain(format!(
                "vmod must be non-negative, got {vmod}"
            )));
        }
        let (s, c) = vphase.sin_cos();
        Self::new(v1, vmod * c, vmod * s)
    }

    pub fn v1(&self) -> f64 {
        self.v1
    }

    pub fn v2(&self) -> f64 {
        self.v2
    }

    pub fn v3(&self) -> f64 {
        self.v3
    }

    pub fn kind(&self) -> PotentialKind {
        self.kind
    }

    /// `(V2 + i·V3)/E`. Its phase enters the mixing coefficients individually.
    pub fn coupling(&self) -> ComplexNum {
        ComplexNum::new(self.v2, self.v3)
    }

    /// `h·V/E = i·v1 + j·v2 + k·v3`.
    pub fn as_quaternion(&self) -> Quaternion {
        Quaternion::new(0.0, self.v1, self.v2, self.v3)
    }

    /// `sqrt(1 − v2² − v3²)`; exactly 1 for complex potentials.
    pub fn quaternionic_root(&self) -> f64 {
        if self.kind == PotentialKind::Complex {
            1.0
        } else {
            (1.0 - self.v2 * self.v2 - self.v3 * self.v3).sqrt()
        }
    }

    /// `N² = sqrt(1 − v2² − v3²) − v1`, the squared index of the propagating channel.
    pub fn index_sq(&self) -> Result<f64> {
        let n2 = self.quaternionic_root() - self.v1;
        if n2 > 0.0 {
            Ok(n2)
        } else {
            Err(Error::Domain(format!(
                "refractive index radicand {n2} is not positive: no propagating channel"
            )))
        }
    }

    /// `sqrt(1 − v2² − v3²) + v1`, so that `|Q̃_z|² = p²(this + sin²θ)`.
    pub fn evanescent_index_sq(&self) -> f64 {
        self.quaternionic_root() + self.v1
    }
}

/// `n = sqrt(1 − V1/E)` for a complex potential.
pub fn refractive_index_complex(potential: &PotentialSpec) -> Result<f64> {
    if potential.kind() != PotentialKind::Complex {
        return Err(Error::KindMismatch {
            expected: PotentialKind::Complex,
            found: potential.kind(),
        });
    }
    if potential.v1() >= 1.0 {
        return Err(Error::Domain(format!(
            "v1 = {} ≥ 1 leaves no propagating channel",
            potential.v1()
        )));
    }
    Ok((1.0 - potential.v1()).sqrt())
}

/// `N = sqrt(sqrt(1 − (V2² + V3²)/E²) − V1/E)`.
pub fn refractive_index_quat(potential: &PotentialSpec) -> Result<f64> {
    potential.index_sq().map(f64::sqrt)
}

pub fn critical_angle(index: f64) -> Result<f64> {
    if !(index > 0.0 && index <= 1.0) {
        return Err(Error::Domain(format!(
            "critical angle needs 0 < index ≤ 1, got {index}"
        )));
    }
    Ok(index.asin())
}

/// Refraction angle from `sin θ = index·sin φ`; `None` in the total-reflection regime.
pub fn snell_refraction_angle(theta: f64, index: f64) -> Option<f64> {
    let s = theta.sin() / index;
    (s <= 1.0).then(|| s.asin())
}

/// Normal wavenumber in units of `p`: `sqrt(index² − sin²θ)`, on the branch
/// `+i·sqrt(sin²θ − index²)` above critical and snapped to 0 at critical.
pub(crate) fn normal_wavenumber(index_sq: f64, sin_theta: f64) -> ComplexNum {
    let d = index_sq - sin_theta * sin_theta;
    if d.abs() <= QZ_SNAP * index_sq {
        ComplexNum::new(0.0, 0.0)
    } else if d > 0.0 {
        ComplexNum::new(d.sqrt(), 0.0)
    } else {
        ComplexNum::new(0.0, (-d).sqrt())
    }
}

/// Energy-normalized incidence setup.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScatterScenario {
    theta: f64,
    p: f64,
    potential: PotentialSpec,
}

impl ScatterScenario {
    /// Rejects angles outside `[0, π/2)`, non-positive `p` and potentials
    /// without a real propagating index.
    pub fn new(theta: f64, p: f64, potential: PotentialSpec) -> Result<Self> {
        if !(0.0..FRAC_PI_2).contains(&theta) {
            return Err(Error::Domain(format!(
                "theta = {theta} must lie in [0, π/2)"
            )));
        }
        if !(p > 0.0 && p.is_finite()) {
            return Err(Error::Domain(format!(
                "p = {p} must be positive and finite"
            )));
        }
        potential.index_sq()?;
        let sin_t = theta.sin();
        if potential.evanescent_index_sq() + sin_t * sin_t <= 0.0 {
            return Err(Error::Domain(format!(
                "j-channel is not evanescent for v1 = {} at theta = {theta}",
                potential.v1()
            )));
        }
        Ok(Self {
            theta,
            p,
            potential,
        })
    }

    pub fn with_theta(&self, theta: f64) -> Result<Self> {
        Self::new(theta, self.p, self.potential)
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn potential(&self) -> &PotentialSpec {
        &self.potential
    }

    pub fn kind(&self) -> PotentialKind {
        self.potential.kind
    }

    /// Energy in normalized units (`p² = 2mE` with `2m = 1`).
    pub fn energy(&self) -> f64 {
        self.p * self.p
    }

    pub fn index_sq(&self) -> f64 {
        self.potential
            .index_sq()
            .expect("validated at construction")
    }

    pub fn index(&self) -> f64 {
        self.index_sq().sqrt()
    }

    /// `arcsin N`, or `None` when `N ≥ 1` and total reflection never occurs.
    pub fn critical_angle(&self) -> Option<f64> {
        critical_angle(self.index()).ok()
    }
}

/// Momentum components on both sides of `z = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Kinematics {
    pub p_y: f64,
    pub p_z: f64,
    /// Propagating (real, ≥ 0) or evanescent (`+i|Q_z|`) normal momentum in region II.
    pub q_z: ComplexNum,
    /// `|Q̃_z|`, decay constant of the always-evanescent channel.
    pub qt_abs: f64,
}

pub fn kinematics(scenario: &ScatterScenario) -> Kinematics {
    let p = scenario.p();
    let (sin_t, cos_t) = scenario.theta().sin_cos();
    let q_z = normal_wavenumber(scenario.index_sq(), sin_t) * p;
    let qt_sq = scenario.potential().evanescent_index_sq() + sin_t * sin_t;
    Kinematics {
        p_y: p * sin_t,
        p_z: p * cos_t,
        q_z,
        qt_abs: p * qt_sq.sqrt(),
    }
}
