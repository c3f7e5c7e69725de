//! Scattering amplitudes and Wigner phase (tunneling) times for rectangular
//! barriers, in three flavours:
//!
//! * [`single_channel`] — a real barrier of height `v0` and width `L`, where
//!   the delay saturates with width (the Hartman effect),
//! * [`absorbing`] — an optical-model barrier `V = v0 (1 - i lambda)`, where
//!   absorption makes the delay grow linearly with width,
//! * [`two_channel`] — a unitary elastic/inelastic pair of channels coupled
//!   inside the barrier, where saturation survives or dies depending on
//!   whether both interior modes are evanescent.
//!
//! Everything is computed in natural units `hbar = 1`, `2m = 1` (see
//! [`units`]). Amplitudes come from boundary-matching linear systems and
//! overflow-safe closed forms; delays come from differentiating continuously
//! unwrapped transmission phases; and [`packet`] rebuilds the transmitted
//! wave packet by quadrature as an independent, brute-force check of every
//! delay this crate reports.
//!
//! Parameter sweeps and the named verification recipes live in [`sweep`] and
//! [`verify`]; both evaluate their grids in parallel when the `parallel`
//! feature (on by default) is enabled.

pub mod absorbing;
pub mod error;
mod exec;
pub mod linsolve;
pub mod numerics;
pub mod packet;
pub mod scaled;
pub mod single_channel;
pub mod sweep;
pub mod two_channel;
pub mod units;
pub mod verify;

pub use absorbing::AbsorbingBarrierSpec;
pub use error::Error;
pub use scaled::{complex_sqrt_branch, scaled_exp_pair, ScaledComplex};
pub use single_channel::BarrierSpec;
pub use two_channel::TwoChannelSpec;
