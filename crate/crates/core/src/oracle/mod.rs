//! Independent verification: continuity residuals, Schrödinger residuals,
//! closed form vs. matching solve, and phase/amplitude consistency.
//!
//! Nothing here evaluates a closed-form reflection coefficient except as the
//! object under test. Wavefunctions are rebuilt from plane waves and
//! differentiated analytically.

pub mod rng;

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ghshift::{self, Regime};
use crate::media::{kinematics, PotentialKind, PotentialSpec, ScatterScenario};
use crate::qnum::{ComplexNum, Quaternion};
use crate::scatter::{self, AmplitudeSet};

use self::rng::SplitMix64;

pub const CONTINUITY_TOL: f64 = 1e-11;
pub const SCHRODINGER_TOL: f64 = 1e-10;
pub const CLOSED_FORM_TOL: f64 = 1e-11;
pub const J_CHANNEL_TOL: f64 = 1e-12;
pub const UNIMODULAR_TOL: f64 = 1e-12;
pub const PHASE_TOL: f64 = 1e-10;

/// Seed of the fixed sample points used by [`verify_schrodinger`].
const SAMPLE_SEED: u64 = 0x5EED_CAFE;
const SCHRODINGER_POINTS: usize = 16;
const CONTINUITY_POINTS: usize = 8;
/// Half-width of the excluded band around the critical angle when drawing θ.
const CRITICAL_GAP: f64 = 1e-3;

const I: ComplexNum = ComplexNum::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    /// Free region, `z < 0`.
    I,
    /// Potential region, `z > 0`.
    II,
}

/// `coefficient · exp(i(k_y y + k_z z))`, the exponential multiplying from the right.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneWave {
    pub coefficient: Quaternion,
    pub k_y: f64,
    pub k_z: ComplexNum,
}

impl PlaneWave {
    pub fn new(coefficient: Quaternion, k_y: f64, k_z: ComplexNum) -> Self {
        Self {
            coefficient,
            k_y,
            k_z,
        }
    }

    fn phase_factor(&self, y: f64, z: f64) -> ComplexNum {
        (I * (self.k_y * y + self.k_z * z)).exp()
    }

    pub fn value(&self, y: f64, z: f64) -> Quaternion {
        self.coefficient * self.phase_factor(y, z)
    }

    pub fn dz(&self, y: f64, z: f64) -> Quaternion {
        self.coefficient * (self.phase_factor(y, z) * I * self.k_z)
    }

    /// `(∂_yy + ∂_zz)` of the wave.
    pub fn laplacian(&self, y: f64, z: f64) -> Quaternion {
        let k2 = self.k_z * self.k_z + self.k_y * self.k_y;
        self.coefficient * (-k2 * self.phase_factor(y, z))
    }
}

/// Plane-wave basis of one region, unweighted by the matching amplitudes.
/// Complex potentials never excite the `j` channel, so their basis stops
/// after the complex waves.
pub fn basis_waves(scenario: &ScatterScenario, region: Region) -> Result<Vec<PlaneWave>> {
    let k = kinematics(scenario);
    let mut waves = match region {
        Region::I => vec![
            PlaneWave::new(Quaternion::ONE, k.p_y, ComplexNum::new(k.p_z, 0.0)),
            PlaneWave::new(Quaternion::ONE, k.p_y, ComplexNum::new(-k.p_z, 0.0)),
            // j e^{p_z z}: k_z = −i p_z
            PlaneWave::new(Quaternion::J, k.p_y, ComplexNum::new(0.0, -k.p_z)),
        ],
        Region::II => {
            let (alpha, beta) = scatter::mixing_coefficients(scenario.potential())?;
            let one = ComplexNum::new(1.0, 0.0);
            vec![
                PlaneWave::new(Quaternion::from_split(one, beta), k.p_y, k.q_z),
                PlaneWave::new(
                    Quaternion::from_split(alpha, one),
                    k.p_y,
                    ComplexNum::new(0.0, k.qt_abs),
                ),
            ]
        }
    };
    if scenario.kind() == PotentialKind::Complex {
        waves.retain(|w| w.coefficient.y == 0.0 && w.coefficient.z == 0.0);
    }
    Ok(waves)
}

/// Amplitude-weighted wavefunction of one region.
pub fn wavefunction(
    scenario: &ScatterScenario,
    amplitudes: &AmplitudeSet,
    region: Region,
) -> Result<Vec<PlaneWave>> {
    let basis = basis_waves(scenario, region)?;
    let weights: &[ComplexNum] = match region {
        Region::I => &[ComplexNum::new(1.0, 0.0), amplitudes.r, amplitudes.rt],
        Region::II => &[amplitudes.t, amplitudes.tt],
    };
    Ok(basis
        .into_iter()
        .zip(weights)
        .map(|(w, &c)| PlaneWave {
            coefficient: w.coefficient * c,
            ..w
        })
        .collect())
}

fn sum_at(waves: &[PlaneWave], f: impl Fn(&PlaneWave) -> Quaternion) -> Quaternion {
    waves.iter().map(f).fold(Quaternion::ZERO, |a, b| a + b)
}

/// Max over 8 values of `y` of the value and (p-scaled) derivative mismatch at `z = 0`.
pub fn verify_continuity(amplitudes: &AmplitudeSet, scenario: &ScatterScenario) -> Result<f64> {
    let left = wavefunction(scenario, amplitudes, Region::I)?;
    let right = wavefunction(scenario, amplitudes, Region::II)?;
    let p = scenario.p();
    let residual = (0..CONTINUITY_POINTS)
        .map(|i| (i as f64 - 3.5) * 0.9 / p)
        .map(|y| {
            let dv = sum_at(&left, |w| w.value(y, 0.0)) - sum_at(&right, |w| w.value(y, 0.0));
            let dd = sum_at(&left, |w| w.dz(y, 0.0)) - sum_at(&right, |w| w.dz(y, 0.0));
            dv.norm().max(dd.norm() / p)
        })
        .fold(0.0, f64::max);
    Ok(residual)
}

fn sample_points(region: Region, p: f64) -> Vec<(f64, f64)> {
    let mut rng = SplitMix64::new(SAMPLE_SEED);
    (0..SCHRODINGER_POINTS)
        .map(|_| {
            let y = rng.uniform(-4.0, 4.0) / p;
            let depth = rng.uniform(1e-3, 2.0) / p;
            let z = match region {
                Region::I => -depth,
                Region::II => depth,
            };
            (y, z)
        })
        .collect()
}

/// Max over sample points of `|A_H w − E w i| / E` for each wave.
///
/// `A_H = −i(∂_yy + ∂_zz) + h·V` in units `ħ²/2m = 1`, `E = p²`.
pub fn schrodinger_residual(
    scenario: &ScatterScenario,
    region: Region,
    waves: &[PlaneWave],
) -> f64 {
    let energy = scenario.energy();
    let hv = match region {
        Region::I => Quaternion::ZERO,
        Region::II => scenario.potential().as_quaternion() * energy,
    };
    let points = sample_points(region, scenario.p());
    let mut worst: f64 = 0.0;
    for wave in waves {
        for &(y, z) in &points {
            let psi = wave.value(y, z);
            let applied = -wave.laplacian(y, z).left_mul_i() + hv * psi;
            let expected = psi.right_mul_i() * energy;
            worst = worst.max((applied - expected).norm() / energy);
        }
    }
    worst
}

/// Applies the region's Hamiltonian to each plane-wave basis element.
pub fn verify_schrodinger(scenario: &ScatterScenario, region: Region) -> Result<f64> {
    Ok(schrodinger_residual(
        scenario,
        region,
        &basis_waves(scenario, region)?,
    ))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub scenario: String,
    #[serde(serialize_with = "ser_real", deserialize_with = "de_real")]
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl Check {
    pub fn new(name: &str, scenario: &str, residual: f64, tolerance: f64) -> Self {
        Self {
            name: name.to_owned(),
            scenario: scenario.to_owned(),
            residual,
            tolerance,
            // NaN fails
            passed: residual <= tolerance,
        }
    }
}

/// Non-finite residuals travel as the strings "inf", "-inf", "nan".
fn ser_real<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if x.is_finite() {
        s.serialize_f64(*x)
    } else {
        s.serialize_str(non_finite_token(*x))
    }
}

fn de_real<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<f64, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Real {
        Num(f64),
        Tok(String),
    }
    match Real::deserialize(d)? {
        Real::Num(x) => Ok(x),
        Real::Tok(t) => match t.as_str() {
            "inf" => Ok(f64::INFINITY),
            "-inf" => Ok(f64::NEG_INFINITY),
            "nan" => Ok(f64::NAN),
            other => Err(serde::de::Error::custom(format!(
                "bad real token {other:?}"
            ))),
        },
    }
}

pub(crate) fn non_finite_token(x: f64) -> &'static str {
    if x.is_nan() {
        "nan"
    } else if x > 0.0 {
        "inf"
    } else {
        "-inf"
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub seed: u64,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is always serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::InvalidArgument(e.to_string()))
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let failed = self.failures().count();
        write!(
            f,
            "seed {}: {} checks, {} failed",
            self.seed,
            self.checks.len(),
            failed
        )
    }
}

/// Compact, deterministic description of a scenario for report rows.
pub fn scenario_digest(s: &ScatterScenario) -> String {
    let v = s.potential();
    format!(
        "{} theta={:?} p={:?} v=({:?},{:?},{:?})",
        s.kind().as_str(),
        s.theta(),
        s.p(),
        v.v1(),
        v.v2(),
        v.v3()
    )
}

fn draw_theta(rng: &mut SplitMix64, theta_c: Option<f64>) -> f64 {
    loop {
        let theta = rng.uniform(0.0, FRAC_PI_2 - CRITICAL_GAP);
        if theta_c.is_none_or(|c| (theta - c).abs() >= CRITICAL_GAP) {
            return theta;
        }
    }
}

/// `count` random scenarios per potential kind (complex, pure quaternionic,
/// general, in that order), `p = 1`, `N² ∈ [0.1, 0.9]`.
pub fn random_scenarios(seed: u64, count: usize) -> Vec<ScatterScenario> {
    let mut rng = SplitMix64::new(seed);
    let mut out = Vec::with_capacity(3 * count);
    for kind in [
        PotentialKind::Complex,
        PotentialKind::PureQuaternionic,
        PotentialKind::General,
    ] {
        for _ in 0..count {
            let n2 = rng.uniform(0.1, 0.9);
            let potential = match kind {
                PotentialKind::Complex => PotentialSpec::complex(1.0 - n2),
                PotentialKind::PureQuaternionic => {
                    let phase = rng.uniform(0.0, TAU);
                    PotentialSpec::pure_quaternionic((1.0 - n2 * n2).sqrt(), phase)
                }
                PotentialKind::General => {
                    let vmod = rng.uniform(0.1, 0.8);
                    let phase = rng.uniform(0.0, TAU);
                    PotentialSpec::from_polar((1.0 - vmod * vmod).sqrt() - n2, vmod, phase)
                }
            }
            .expect("drawn parameters are in range");
            let theta = draw_theta(&mut rng, Some(n2.sqrt().asin()));
            out.push(ScatterScenario::new(theta, 1.0, potential).expect("drawn scenario is valid"));
        }
    }
    out
}

fn wrap(phase: f64) -> f64 {
    (phase + PI).rem_euclid(TAU) - PI
}

fn error_check(name: &str, digest: &str, tolerance: f64) -> Check {
    Check::new(name, digest, f64::INFINITY, tolerance)
}

/// Runs every verification on one scenario. `perturbation` is added to the
/// solved `R` first, to exercise the failure path.
pub fn check_scenario(s: &ScatterScenario, perturbation: f64) -> Vec<Check> {
    let digest = scenario_digest(s);
    let d = digest.as_str();
    let mut checks = Vec::new();

    let mut amps = match scatter::solve_matching(s) {
        Ok(a) => a,
        Err(_) => return vec![error_check("matching_solve", d, 0.0)],
    };
    amps.r += perturbation;
    let k = kinematics(s);

    let cont = verify_continuity(&amps, s).unwrap_or(f64::INFINITY);
    checks.push(Check::new("continuity", d, cont, CONTINUITY_TOL));

    let j1 = (amps.rt - (amps.beta * amps.t + amps.tt)).norm();
    let j2 =
        (k.p_z * amps.rt - (I * amps.beta * amps.t * k.q_z - amps.tt * k.qt_abs)).norm() / s.p();
    checks.push(Check::new(
        "j_channel_consistency",
        d,
        j1.max(j2),
        J_CHANNEL_TOL,
    ));

    for (name, region) in [
        ("schrodinger_region_ii", Region::II),
        ("schrodinger_region_i", Region::I),
    ] {
        let r = verify_schrodinger(s, region).unwrap_or(f64::INFINITY);
        checks.push(Check::new(name, d, r, SCHRODINGER_TOL));
    }

    let vs_solver = |r: Result<ComplexNum>, target: ComplexNum| {
        r.map_or(f64::INFINITY, |r| (r - target).norm())
    };
    checks.push(Check::new(
        "reflection_general_vs_matching",
        d,
        vs_solver(scatter::reflection_quat_general(s), amps.r),
        CLOSED_FORM_TOL,
    ));
    match s.kind() {
        PotentialKind::Complex => {
            checks.push(Check::new(
                "reflection_complex_vs_matching",
                d,
                vs_solver(scatter::reflection_complex(s), amps.r),
                CLOSED_FORM_TOL,
            ));
            checks.push(Check::new(
                "transmission_complex_vs_matching",
                d,
                vs_solver(scatter::transmission_complex(s), amps.t),
                CLOSED_FORM_TOL,
            ));
        }
        PotentialKind::PureQuaternionic => checks.push(Check::new(
            "reflection_pure_vs_matching",
            d,
            vs_solver(scatter::reflection_quat_pure(s), amps.r),
            CLOSED_FORM_TOL,
        )),
        PotentialKind::General => {}
    }
    if s.kind() != PotentialKind::Complex {
        let r = scatter::evanescent_ratio(s)
            .map_or(f64::INFINITY, |ratio| (amps.tt - ratio * amps.t).norm());
        checks.push(Check::new(
            "evanescent_ratio_vs_matching",
            d,
            r,
            CLOSED_FORM_TOL,
        ));
    }

    let regime = ghshift::regime(s);
    if regime == Regime::AboveCritical {
        checks.push(Check::new(
            "unimodularity",
            d,
            (amps.r.norm() - 1.0).abs(),
            UNIMODULAR_TOL,
        ));
    }
    if let Some(residual) = phase_amplitude_residual(s, regime) {
        checks.push(Check::new("phase_amplitude", d, residual, PHASE_TOL));
    }
    checks
}

/// Compares the closed-form GH phases against the closed-form reflection they
/// were derived from. `None` where no phase formula exists (General kind, critical band).
pub fn phase_amplitude_residual(s: &ScatterScenario, regime: Regime) -> Option<f64> {
    let residual = match (s.kind(), regime) {
        (PotentialKind::Complex, Regime::AboveCritical) => {
            let r = scatter::reflection_complex(s).ok()?;
            let e = ComplexNum::from_polar(1.0, -2.0 * ghshift::phase_complex(s).ok()?);
            (e.re - r.re).abs().max((e.im - r.im).abs())
        }
        (PotentialKind::Complex, Regime::BelowCritical) => {
            scatter::reflection_complex(s).ok()?.arg().abs()
        }
        (PotentialKind::PureQuaternionic, Regime::AboveCritical) => {
            let r = scatter::reflection_quat_pure(s).ok()?;
            let e = ComplexNum::from_polar(1.0, -2.0 * ghshift::phase_quat_above(s).ok()?);
            (e.re - r.re).abs().max((e.im - r.im).abs())
        }
        (PotentialKind::PureQuaternionic, Regime::BelowCritical) => {
            let r = scatter::reflection_quat_pure(s).ok()?;
            let (num, den) = ghshift::phases_quat_below(s).ok()?;
            wrap(r.arg() - (num - den)).abs()
        }
        _ => return None,
    };
    Some(residual)
}

/// Seeded verification suite over `count` scenarios per potential kind.
pub fn run_suite(seed: u64, count: usize) -> Result<VerificationReport> {
    run_suite_perturbed(seed, count, 0.0)
}

/// [`run_suite`] with `perturbation` added to every solved `R`.
pub fn run_suite_perturbed(
    seed: u64,
    count: usize,
    perturbation: f64,
) -> Result<VerificationReport> {
    if count == 0 {
        return Err(Error::InvalidArgument("count must be at least 1".into()));
    }
    let scenarios = random_scenarios(seed, count);
    let checks = scenarios
        .par_iter()
        .map(|s| check_scenario(s, perturbation))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    Ok(VerificationReport { seed, checks })
}
