//! Magnetic blind beamforming for batteryless receivers.
//!
//! A tri-axis transmitter coil cycles through a set of current vectors so
//! that, whatever the orientation of a small receiver coil, some vector in
//! the set drives its induced voltage above the rectifier threshold.
//!
//! * [`fieldcore`]: near-field channel model and induced voltage
//! * [`sdpsolve`]: small dense SDP solver
//! * [`beamform`]: current-vector design by semidefinite relaxation
//! * [`chargesim`]: charging cycles, receiver sampling, Monte Carlo CDFs

pub mod beamform;
pub mod chargesim;
pub mod error;
pub mod fieldcore;
mod par;
pub mod sdpsolve;

pub use error::{MagbbError, Result};

/// Whether Monte Carlo runs and current-set designs use the rayon pool.
pub const PARALLEL: bool = cfg!(feature = "parallel");
