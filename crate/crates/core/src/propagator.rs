//! Numerical time-evolution oracle.
//!
//! Any Hermitian Hamiltonian is diagonalized once and the decomposition is
//! reused for every requested time, state and observable. This module never
//! evaluates the closed-form solutions it is used to cross-check; the
//! equivalence between the two routes is asserted only in test code.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;

use crate::dirac2d::{HamiltonianForm, HamiltonianMatrix, ObservableTrace};
use crate::error::{Error, Result};
use crate::fockspace::{OperatorMatrix, SpinorState};
use crate::linalg;

/// Inputs are rejected, not symmetrized, beyond this max-entry deviation.
pub const HERMITICITY_TOL: f64 = 1e-12;

/// Expectation values must be real to this tolerance before the imaginary
/// part is discarded.
pub const IMAG_TOL: f64 = 1e-12;

/// Eigendecomposition H = VΛV† with real ascending eigenvalues.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomposition {
    eigenvalues: DVector<f64>,
    eigenvectors: DMatrix<C64>,
    hbar: f64,
    source_form: Option<HamiltonianForm>,
}

impl EigenDecomposition {
    /// Decompose an arbitrary Hermitian matrix with the given action scale.
    pub fn of_hermitian(matrix: &DMatrix<C64>, hbar: f64) -> Result<Self> {
        if !hbar.is_finite() || hbar <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "hbar must be positive, got {hbar}"
            )));
        }
        linalg::check_hermitian(matrix, HERMITICITY_TOL)?;
        let (eigenvalues, eigenvectors) = linalg::hermitian_eigen(matrix);
        Ok(EigenDecomposition {
            eigenvalues,
            eigenvectors,
            hbar,
            source_form: None,
        })
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &DVector<f64> {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &DMatrix<C64> {
        &self.eigenvectors
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn source_form(&self) -> Option<HamiltonianForm> {
        self.source_form
    }

    /// VΛV†, for reconstruction-residual checks.
    pub fn reconstruction(&self) -> DMatrix<C64> {
        let lambda = DMatrix::from_diagonal(&self.eigenvalues.map(|x| C64::new(x, 0.0)));
        &self.eigenvectors * lambda * self.eigenvectors.adjoint()
    }

    fn evolve_vector(&self, psi: &DVector<C64>, t: f64) -> DVector<C64> {
        let i = C64::new(0.0, 1.0);
        let mut modal = self.eigenvectors.adjoint() * psi;
        for (k, amp) in modal.iter_mut().enumerate() {
            *amp *= (-i * self.eigenvalues[k] * t / self.hbar).exp();
        }
        &self.eigenvectors * modal
    }
}

/// Diagonalize a Hamiltonian, carrying its form tag and action scale along.
pub fn diagonalize(h: &HamiltonianMatrix) -> Result<EigenDecomposition> {
    let mut decomp = EigenDecomposition::of_hermitian(h.entries(), h.params().hbar())?;
    decomp.source_form = Some(h.form());
    Ok(decomp)
}

/// ψ(t) = V·exp(−iΛt/ħ)·V†·ψ₀; the norm is preserved within 1e-12.
pub fn evolve(decomp: &EigenDecomposition, psi0: &SpinorState, t: f64) -> Result<SpinorState> {
    if decomp.dim() != psi0.amplitudes().len() {
        return Err(Error::DimensionMismatch {
            left: decomp.dim(),
            right: psi0.amplitudes().len(),
        });
    }
    SpinorState::new(psi0.space(), decomp.evolve_vector(psi0.amplitudes(), t))
}

/// ⟨ψ|O|ψ⟩ for Hermitian O; the imaginary part is checked against
/// [`IMAG_TOL`] and only then discarded, so Hermiticity bugs surface
/// instead of being averaged away.
pub fn expectation(psi: &SpinorState, op: &OperatorMatrix) -> Result<f64> {
    linalg::check_hermitian(op.entries(), HERMITICITY_TOL)?;
    if op.dim() != psi.amplitudes().len() {
        return Err(Error::DimensionMismatch {
            left: op.dim(),
            right: psi.amplitudes().len(),
        });
    }
    let value = psi.amplitudes().dotc(&(op.entries() * psi.amplitudes()));
    if value.im.abs() >= IMAG_TOL {
        return Err(Error::ResidualImaginary {
            imaginary: value.im,
        });
    }
    Ok(value.re)
}

/// Expectation values of several operators along one trajectory; the single
/// diagonalization is amortized across every time point. Returns one series
/// per operator.
pub fn trajectory(
    decomp: &EigenDecomposition,
    psi0: &SpinorState,
    ops: &[&OperatorMatrix],
    times: &[f64],
) -> Result<Vec<Vec<f64>>> {
    if decomp.dim() != psi0.amplitudes().len() {
        return Err(Error::DimensionMismatch {
            left: decomp.dim(),
            right: psi0.amplitudes().len(),
        });
    }
    for op in ops {
        linalg::check_hermitian(op.entries(), HERMITICITY_TOL)?;
        if op.dim() != psi0.amplitudes().len() {
            return Err(Error::DimensionMismatch {
                left: op.dim(),
                right: psi0.amplitudes().len(),
            });
        }
    }
    let mut series = vec![Vec::with_capacity(times.len()); ops.len()];
    for &t in times {
        let psi_t = decomp.evolve_vector(psi0.amplitudes(), t);
        for (op, out) in ops.iter().zip(series.iter_mut()) {
            let value = psi_t.dotc(&(op.entries() * &psi_t));
            if value.im.abs() >= IMAG_TOL {
                return Err(Error::ResidualImaginary {
                    imaginary: value.im,
                });
            }
            out.push(value.re);
        }
    }
    Ok(series)
}

/// Angular-momentum trace along a trajectory: expectation values of the
/// given L_z and S_z operators (already in units of ħ), with jz recorded as
/// their pointwise sum.
pub fn observable_trace(
    decomp: &EigenDecomposition,
    psi0: &SpinorState,
    lz_op: &OperatorMatrix,
    sz_op: &OperatorMatrix,
    times: &[f64],
) -> Result<ObservableTrace> {
    let series = trajectory(decomp, psi0, &[lz_op, sz_op], times)?;
    let lz = series[0].clone();
    let sz = series[1].clone();
    let jz: Vec<f64> = lz.iter().zip(&sz).map(|(l, s)| l + s).collect();
    ObservableTrace::new(times.to_vec(), lz, sz, jz)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dirac2d::{build_hamiltonian_jc, PhysParams};
    use crate::fockspace::{spin_z, FockSpace};
    use crate::linalg::max_abs_diff;
    use crate::spin::Spin;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_hermitian(n: usize, rng: &mut impl Rng) -> DMatrix<C64> {
        let raw = DMatrix::from_fn(n, n, |_, _| {
            C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)
        });
        (&raw + raw.adjoint()).scale(0.5)
    }

    fn random_state(space: FockSpace, rng: &mut impl Rng) -> SpinorState {
        let v = DVector::from_fn(space.spinor_dim(), |_, _| {
            C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)
        });
        SpinorState::normalized(space, v).unwrap()
    }

    #[test]
    fn rest_hamiltonian_spectrum_is_two_level() {
        let space = FockSpace::single_left(5).unwrap();
        let params = PhysParams::natural(0.0).unwrap();
        let h = build_hamiltonian_jc(params, space).unwrap();
        let decomp = diagonalize(&h).unwrap();
        let dim = space.dim();
        for (k, &e) in decomp.eigenvalues().iter().enumerate() {
            let expected = if k < dim { -1.0 } else { 1.0 };
            assert!((e - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn jc_spectrum_contains_closed_form_energy() {
        let space = FockSpace::single_left(8).unwrap();
        let h = build_hamiltonian_jc(PhysParams::natural(2.0).unwrap(), space).unwrap();
        let decomp = diagonalize(&h).unwrap();
        let hit = decomp
            .eigenvalues()
            .iter()
            .any(|&e| (e - 3.0).abs() < 1e-10);
        assert!(hit, "eigenvalue 3 missing: {:?}", decomp.eigenvalues());
    }

    #[test]
    fn reconstruction_residual_small() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let h = random_hermitian(50, &mut rng);
        let decomp = EigenDecomposition::of_hermitian(&h, 1.0).unwrap();
        assert!(max_abs_diff(&h, &decomp.reconstruction()) < 1e-10);
        let gram = decomp.eigenvectors().adjoint() * decomp.eigenvectors();
        assert!(max_abs_diff(&gram, &DMatrix::identity(50, 50)) < 1e-10);
    }

    #[test]
    fn non_hermitian_rejected() {
        let mut m = DMatrix::<C64>::zeros(3, 3);
        m[(0, 1)] = C64::new(1.0, 0.0);
        assert!(matches!(
            EigenDecomposition::of_hermitian(&m, 1.0),
            Err(Error::NonHermitian { .. })
        ));
    }

    #[test]
    fn evolve_identity_and_stationary_phase() {
        let space = FockSpace::single_left(6).unwrap();
        let params = PhysParams::natural(1.5).unwrap();
        let h = build_hamiltonian_jc(params, space).unwrap();
        let decomp = diagonalize(&h).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let psi0 = random_state(space, &mut rng);

        let at0 = evolve(&decomp, &psi0, 0.0).unwrap();
        assert!(psi0.distance(&at0) < 1e-14);

        // eigenstate stays put up to a phase
        let d = crate::dirac2d::spectrum(params, 2).unwrap();
        let eig = d.eigenstate_plus(space).unwrap();
        let evolved = evolve(&decomp, &eig, 0.83).unwrap();
        let fidelity = eig.overlap(&evolved).unwrap().norm();
        assert!((fidelity - 1.0).abs() < 1e-12);
    }

    #[test]
    fn jc_evolution_matches_closed_form_state() {
        // from |0⟩|χ↓⟩ at ξ = 2, t = π/6 the oracle reproduces the scalar
        // solution including its phases
        let space = FockSpace::single_left(8).unwrap();
        let params = PhysParams::natural(2.0).unwrap();
        let decomp = diagonalize(&build_hamiltonian_jc(params, space).unwrap()).unwrap();
        let start = SpinorState::basis_state(space, Spin::Down, 0);
        let t = std::f64::consts::FRAC_PI_6;
        let numeric = evolve(&decomp, &start, t).unwrap();
        let analytic = crate::dirac2d::evolve_closed_form(params, 1, t)
            .unwrap()
            .embed(space)
            .unwrap();
        assert!(numeric.distance(&analytic) < 1e-9);
    }

    #[test]
    fn unitarity_composition_time_reversal() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let n_max = rng.gen_range(1..=30);
            let space = FockSpace::single_left(n_max).unwrap();
            let h = random_hermitian(space.spinor_dim(), &mut rng);
            let decomp = EigenDecomposition::of_hermitian(&h, 1.0).unwrap();
            let psi0 = random_state(space, &mut rng);
            let t1 = rng.gen_range(-5.0..5.0);
            let t2 = rng.gen_range(-5.0..5.0);

            let one_step = evolve(&decomp, &psi0, t1 + t2).unwrap();
            assert!((one_step.norm() - 1.0).abs() < 1e-12);

            let two_step = evolve(&decomp, &evolve(&decomp, &psi0, t1).unwrap(), t2).unwrap();
            assert!(one_step.distance(&two_step) < 1e-10);

            let back = evolve(&decomp, &evolve(&decomp, &psi0, t1).unwrap(), -t1).unwrap();
            assert!(psi0.distance(&back) < 1e-10);
        }
    }

    #[test]
    fn expectation_basics() {
        let space = FockSpace::two_mode(4).unwrap();
        let hbar = 1.0;
        // S_z on |χ↓⟩ ⊗ anything is −ħ/2
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let boson = DVector::from_fn(space.dim(), |_, _| {
            C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)
        });
        let boson =
            crate::fockspace::BosonState::new(space, boson.clone() / C64::new(boson.norm(), 0.0))
                .unwrap();
        let psi = boson.with_spin(Spin::Down);
        let sz = expectation(&psi, &spin_z(space)).unwrap();
        assert!((sz + 0.5 * hbar).abs() < 1e-12);

        // L_z on a_l†|vac⟩ is −ħ
        let one_left =
            crate::fockspace::chiral_number_state(space, crate::fockspace::Chirality::Left, 1)
                .unwrap()
                .with_spin(Spin::Up);
        let lz_op = crate::fockspace::angular_momentum_lz(space, hbar)
            .unwrap()
            .spin_extended()
            .unwrap();
        assert!((expectation(&one_left, &lz_op).unwrap() + hbar).abs() < 1e-12);
    }

    #[test]
    fn trajectory_edge_cases() {
        let space = FockSpace::single_left(3).unwrap();
        let h = build_hamiltonian_jc(PhysParams::natural(0.4).unwrap(), space).unwrap();
        let decomp = diagonalize(&h).unwrap();
        let psi0 = SpinorState::basis_state(space, Spin::Down, 0);

        let empty = trajectory(&decomp, &psi0, &[], &[]).unwrap();
        assert!(empty.is_empty());

        let eye = OperatorMatrix::new(
            space,
            "1",
            DMatrix::identity(space.spinor_dim(), space.spinor_dim()),
        )
        .unwrap();
        let ones = trajectory(&decomp, &psi0, &[&eye], &[0.0, 0.5, 1.0]).unwrap();
        assert_eq!(ones[0].len(), 3);
        for v in &ones[0] {
            assert!((v - 1.0).abs() < 1e-12);
        }
    }
}
