//! Geometric measure of quantum discord (GMQD) for a two-parameter family of
//! qubit-qutrit states under dissipative Kraus channels.
//!
//! ```
//! use gmqd::channels::{apply_scenario, ChannelKind, NoiseScenario};
//! use gmqd::gmqd::{gmqd_closed_form, gmqd_numeric};
//! use gmqd::states::{initial_state, TwoParamState};
//!
//! let state = TwoParamState::from_bc(0.2, 0.1).unwrap();
//! let scenario = NoiseScenario::multi_local(ChannelKind::Dephasing, 0.5, 0.5).unwrap();
//! let rho = apply_scenario(&initial_state(&state), &scenario).unwrap();
//! let numeric = gmqd_numeric(&rho).value;
//! assert!((numeric - gmqd_closed_form(&scenario, 0.2, 0.1)).abs() < 1e-10);
//! ```

pub mod channels;
pub mod dynamics;
mod error;
pub mod gmqd;
pub mod matrix;
pub mod optim;
pub mod states;

pub use error::{Error, Result};
