//! Quantum game theory on finite Hilbert spaces.
//!
//! Two players pick unit vectors in `ℂⁿ`; a coordinator correlates them with a
//! fixed two-body unitary and each player is paid the expectation value of a
//! Hermitian payoff operator in the resulting joint state.
//!
//! * [`linalg`]: dense complex vectors and matrices on `ℂⁿ ⊗ ℂⁿ`.
//! * [`correlation`]: the swap/convert/twist operators, the entangler `J(γ)`,
//!   SU(2) rotations and Schmidt-parametrized states.
//! * [`payoff`]: diagonal games, the pseudo-classical/interference split and
//!   the altruism reading of the pseudo-classical family.
//! * [`equilibrium`]: alternating best-response Nash search with first-order
//!   certificates, plus a classical 2×2 support-enumeration oracle.
//! * [`bell`]: the spin-correlation coordination game and its Nash payoff.
//! * [`cli`]: the `qgame` command set (JSON/CSV in and out).
//!
//! Runnable walkthroughs live in `examples/`; `cargo run --example` lists them.

pub mod bell;
pub mod cli;
pub mod correlation;
pub mod equilibrium;
pub mod error;
pub mod linalg;
pub mod payoff;

pub use error::{Error, Result};
