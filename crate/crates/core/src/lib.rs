//! Simulation and analysis of the planar (2+1) Dirac oscillator through its
//! exact chiral-mode reduction to Jaynes-Cummings-type spin-boson models.
//!
//! The crate provides:
//!
//! * [`fockspace`] — truncated one- and two-mode Fock spaces, Cartesian and
//!   circular ladder operators, angular momentum, coherent states and
//!   displacement sequences;
//! * [`dirac2d`] — the oscillator Hamiltonian in Cartesian and chiral
//!   (JC / anti-JC) forms plus every closed-form result: doublet spectra,
//!   Zitterbewegung traces, the nonrelativistic expansion and the
//!   collapse/revival series;
//! * [`propagator`] — an independent eigendecomposition-based evolution
//!   oracle used to cross-check the closed forms;
//! * [`iontrap`] — translation between oscillator physics and trapped-ion
//!   laser parameters, the four-pulse configuration table and
//!   electron-shelving readout;
//! * [`verify`] — the analytic-vs-oracle equivalence suite with pinned
//!   tolerances.
//!
//! Everything is built from immutable values and pure functions; all types
//! are safe to share across threads.

pub mod dirac2d;
pub mod error;
pub mod fockspace;
pub mod iontrap;
pub mod linalg;
pub mod propagator;
pub mod spin;
pub mod verify;

pub use error::{Error, Result};

#[cfg(test)]
mod tests {
    fn assert_send_sync<T: Send + Sync>() {}

    #[test]
    fn core_types_are_shareable_across_threads() {
        assert_send_sync::<crate::fockspace::FockSpace>();
        assert_send_sync::<crate::fockspace::OperatorMatrix>();
        assert_send_sync::<crate::fockspace::SpinorState>();
        assert_send_sync::<crate::dirac2d::HamiltonianMatrix>();
        assert_send_sync::<crate::dirac2d::ObservableTrace>();
        assert_send_sync::<crate::propagator::EigenDecomposition>();
        assert_send_sync::<crate::iontrap::IonTrapParams>();
    }
}
