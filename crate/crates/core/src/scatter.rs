//! Matching at the `z = 0` discontinuity.
//!
//! Two independent routes to the reflection amplitude live here: the closed
//! forms ([`reflection_complex`], [`reflection_quat_general`],
//! [`reflection_quat_pure`]) and [`solve_matching`], which assembles the four
//! continuity equations as a 4×4 complex system and solves it directly. The
//! solver never evaluates a closed form, so it serves as the oracle for them.
//!
//! Wavefunctions (ħ = 1):
//!
//! ```text
//! Ψ_I  = { e^{i p_z z} + R e^{−i p_z z} + j R̃ e^{p_z z} } e^{i p_y y}                 (z < 0)
//! Ψ_II = { (1 + jβ) T e^{i Q_z z} + (α + j) T̃ e^{−|Q̃_z| z} } e^{i p_y y}             (z > 0)
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::media::{
    kinematics, normal_wavenumber, Kinematics, PotentialKind, PotentialSpec, ScatterScenario,
};
use crate::qnum::ComplexNum;

/// Below this `|den|/p²` a closed-form reflection coefficient is reported as degenerate.
pub const DEGENERATE_DENOMINATOR: f64 = 1e-14;

/// Relative pivot size below which the matching system counts as singular.
pub const SINGULAR_PIVOT: f64 = 1e-14;

const I: ComplexNum = ComplexNum::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AmplitudeSet {
    /// Propagating reflection.
    pub r: ComplexNum,
    /// Reflected j-channel amplitude `R̃`.
    pub rt: ComplexNum,
    /// Propagating transmission.
    pub t: ComplexNum,
    /// Evanescent transmitted amplitude `T̃`.
    pub tt: ComplexNum,
    pub alpha: ComplexNum,
    pub beta: ComplexNum,
}

/// Channel mixing coefficients `(α, β)` of the region-II plane waves.
///
/// `α = i(v2 + i v3)/D`, `β = −i(v2 − i v3)/D` with `D = 1 + sqrt(1 − v2² − v3²)`.
/// `D` equals `1 + N²` whenever `v1 = 0`; for `v1 ≠ 0` only this `D` makes
/// the plane waves solve the quaternionic equation.
pub fn mixing_coefficients(potential: &PotentialSpec) -> Result<(ComplexNum, ComplexNum)> {
    potential.index_sq()?;
    if potential.kind() == PotentialKind::Complex {
        let zero = ComplexNum::new(0.0, 0.0);
        return Ok((zero, zero));
    }
    let d = 1.0 + potential.quaternionic_root();
    let w = potential.coupling();
    Ok((I * w / d, -I * w.conj() / d))
}

/// Solves the four continuity equations for `(R, R̃, T, T̃)`.
///
/// Complex part: `1 + R = T + αT̃`, `p_z(1 − R) = Q_z T + i|Q̃_z| α T̃`.
/// j part: `R̃ = βT + T̃`, `p_z R̃ = iβ Q_z T − |Q̃_z| T̃`.
pub fn solve_matching(scenario: &ScatterScenario) -> Result<AmplitudeSet> {
    let k = kinematics(scenario);
    let (alpha, beta) = mixing_coefficients(scenario.potential())?;
    let x = solve_matching_system(&k, alpha, beta)?;
    Ok(AmplitudeSet {
        r: x[0],
        rt: x[1],
        t: x[2],
        tt: x[3],
        alpha,
        beta,
    })
}

fn solve_matching_system(
    k: &Kinematics,
    alpha: ComplexNum,
    beta: ComplexNum,
) -> Result<[ComplexNum; 4]> {
    let c = |re: f64| ComplexNum::new(re, 0.0);
    let zero = c(0.0);
    let pz = c(k.p_z);
    let qt = c(k.qt_abs);
    // unknowns: R, R̃, T, T̃
    let mut a = [
        [c(1.0), zero, c(-1.0), -alpha],
        [-pz, zero, -k.q_z, -I * qt * alpha],
        [zero, c(1.0), -beta, c(-1.0)],
        [zero, pz, -I * beta * k.q_z, qt],
    ];
    let mut b = [c(-1.0), -pz, zero, zero];
    linsolve::solve(&mut a, &mut b)?;
    Ok(b)
}

mod linsolve {
    use super::{ComplexNum, Error, Result, SINGULAR_PIVOT};

    /// Gaussian elimination with partial pivoting; the solution overwrites `b`.
    #[allow(clippy::needless_range_loop)]
    pub(super) fn solve<const N: usize>(
        a: &mut [[ComplexNum; N]; N],
        b: &mut [ComplexNum; N],
    ) -> Result<()> {
        let scale = a
            .iter()
            .flat_map(|row| row.iter())
            .map(|v| v.norm())
            .fold(0.0, f64::max);
        if scale == 0.0 {
            return Err(Error::SingularMatching { pivot: 0.0 });
        }
        for col in 0..N {
            let (piv, piv_abs) =
                (col..N)
                    .map(|r| (r, a[r][col].norm()))
                    .fold(
                        (col, -1.0),
                        |best, cur| if cur.1 > best.1 { cur } else { best },
                    );
            if piv_abs <= SINGULAR_PIVOT * scale {
                return Err(Error::SingularMatching { pivot: piv_abs });
            }
            a.swap(col, piv);
            b.swap(col, piv);
            for r in col + 1..N {
                let f = a[r][col] / a[col][col];
                if f == ComplexNum::new(0.0, 0.0) {
                    continue;
                }
                for cc in col..N {
                    let delta = f * a[col][cc];
                    a[r][cc] -= delta;
                }
                let delta = f * b[col];
                b[r] -= delta;
            }
        }
        for row in (0..N).rev() {
            let mut acc = b[row];
            for cc in row + 1..N {
                acc -= a[row][cc] * b[cc];
            }
            b[row] = acc / a[row][row];
        }
        Ok(())
    }

    #[cfg(test)]
    mod tests {
        use super::*;

        #[test]
        fn solves_permuted_system() {
            let c = |re, im| ComplexNum::new(re, im);
            // zero leading pivot forces a row swap
            let mut a = [
                [c(0.0, 0.0), c(2.0, 1.0), c(1.0, 0.0)],
                [c(1.0, -1.0), c(0.0, 0.0), c(3.0, 0.0)],
                [c(2.0, 0.0), c(1.0, 1.0), c(0.0, 2.0)],
            ];
            let x = [c(1.0, 2.0), c(-0.5, 0.0), c(0.0, 1.0)];
            let mut b = [c(0.0, 0.0); 3];
            for r in 0..3 {
                for k in 0..3 {
                    b[r] += a[r][k] * x[k];
                }
            }
            solve(&mut a, &mut b).unwrap();
            for k in 0..3 {
                assert!((b[k] - x[k]).norm() < 1e-14);
            }
        }

        #[test]
        fn flags_singular() {
            let c = |re| ComplexNum::new(re, 0.0);
            let mut a = [[c(1.0), c(2.0)], [c(2.0), c(4.0)]];
            let mut b = [c(1.0), c(2.0)];
            assert!(matches!(
                solve(&mut a, &mut b),
                Err(Error::SingularMatching { .. })
            ));
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

/// `r = (cos θ − sqrt(n² − sin²θ)) / (cos θ + sqrt(n² − sin²θ))`.
pub fn reflection_complex(scenario: &ScatterScenario) -> Result<ComplexNum> {
    require_kind(scenario, PotentialKind::Complex)?;
    let (sin_t, cos_t) = scenario.theta().sin_cos();
    let q = normal_wavenumber(scenario.index_sq(), sin_t);
    Ok((cos_t - q) / (cos_t + q))
}

/// `t = 2 p_z / (p_z + q_z)`.
pub fn transmission_complex(scenario: &ScatterScenario) -> Result<ComplexNum> {
    require_kind(scenario, PotentialKind::Complex)?;
    let (sin_t, cos_t) = scenario.theta().sin_cos();
    let q = normal_wavenumber(scenario.index_sq(), sin_t);
    Ok(2.0 * cos_t / (cos_t + q))
}

/// Reflection coefficient for an arbitrary quaternionic step.
pub fn reflection_quat_general(scenario: &ScatterScenario) -> Result<ComplexNum> {
    let k = kinematics(scenario);
    let (alpha, beta) = mixing_coefficients(scenario.potential())?;
    let ab = alpha * beta;
    let (pz, qz, qt) = (k.p_z, k.q_z, k.qt_abs);
    let num = (pz - qz) * (qt + pz) + ab * (I * qz - pz) * (pz - I * qt);
    let den = (pz + qz) * (qt + pz) + ab * (I * qz - pz) * (pz + I * qt);
    let p2 = scenario.p() * scenario.p();
    if den.norm() < DEGENERATE_DENOMINATOR * p2 {
        return Err(Error::DegenerateDenominator {
            magnitude: den.norm() / p2,
        });
    }
    Ok(num / den)
}

/// Reflection coefficient for a pure quaternionic step, written with the
/// equal-index weights `(1 ± n²)`.
///
/// Below critical `Q_z` is real; above critical the explicit `R_>` form with
/// `Q_z = i|Q_z|` is used.
pub fn reflection_quat_pure(scenario: &ScatterScenario) -> Result<ComplexNum> {
    require_kind(scenario, PotentialKind::PureQuaternionic)?;
    let n2 = scenario.index_sq();
    let (sin_t, pz) = scenario.theta().sin_cos();
    let qt = (n2 + sin_t * sin_t).sqrt();
    let qz = normal_wavenumber(n2, sin_t);
    let (wp, wm) = (1.0 + n2, 1.0 - n2);

    let (num, den) = if qz.im > 0.0 {
        let a = qz.im;
        let num = wp * (pz - I * a) * (qt + pz) - wm * (pz + a) * (pz - I * qt);
        let den = wp * (pz + I * a) * (qt + pz) - wm * (pz + a) * (pz + I * qt);
        (num, den)
    } else {
        let num = wp * (pz - qz) * (qt + pz) + wm * (I * qz - pz) * (pz - I * qt);
        let den = wp * (pz + qz) * (qt + pz) + wm * (I * qz - pz) * (pz + I * qt);
        (num, den)
    };
    if den.norm() < DEGENERATE_DENOMINATOR {
        return Err(Error::DegenerateDenominator {
            magnitude: den.norm(),
        });
    }
    Ok(num / den)
}

/// Closed-form ratio `T̃/T = β (i Q_z − p_z)/(|Q̃_z| + p_z)` from the j-channel equations.
pub fn evanescent_ratio(scenario: &ScatterScenario) -> Result<ComplexNum> {
    let k = kinematics(scenario);
    let (_, beta) = mixing_coefficients(scenario.potential())?;
    Ok(beta * (I * k.q_z - k.p_z) / (k.qt_abs + k.p_z))
}

/// Closed-form reflection appropriate to the scenario's potential kind.
pub fn reflection(scenario: &ScatterScenario) -> Result<ComplexNum> {
    match scenario.kind() {
        PotentialKind::Complex => reflection_complex(scenario),
        PotentialKind::PureQuaternionic => reflection_quat_pure(scenario),
        PotentialKind::General => reflection_quat_general(scenario),
    }
}
