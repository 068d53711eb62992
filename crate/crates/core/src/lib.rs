//! Reflection amplitudes and Goos-Hänchen lateral shifts for planar
//! scattering off complex and quaternionic step potentials.
//!
//! Modules, bottom-up:
//!
//! - [`qnum`]: quaternions and the complex subalgebra.
//! - [`media`]: potentials, refractive indices, Snell's law, kinematics.
//! - [`scatter`]: closed-form reflection coefficients and the 4×4 matching solve.
//! - [`ghshift`]: GH phases and stationary-phase shifts.
//! - [`oracle`]: residual checks and the seeded verification suite.
//! - [`cli`]: the `point` / `sweep` / `verify` front end.

pub mod cli;
pub mod error;
pub mod ghshift;
pub mod media;
pub mod oracle;
pub mod qnum;
pub mod scatter;

pub use error::{Error, Result};
pub use ghshift::{Method, Regime, ShiftResult};
pub use media::{Kinematics, PotentialKind, PotentialSpec, ScatterScenario};
pub use qnum::{ComplexNum, Quaternion};
pub use scatter::AmplitudeSet;
