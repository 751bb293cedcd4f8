//! The planar Dirac oscillator and its chiral-coupling forms.
//!
//! The Hamiltonian couples a spin-half doublet to the two-dimensional
//! oscillator through a term linear in both position and momentum. Written
//! in circular (chiral) modes it reduces to a single-mode spin-boson
//! exchange of the Jaynes-Cummings family: the spin-raising operator pairs
//! with the left-quantum raising operator, so each doublet
//! {|n_l⟩|↑⟩, |n_l−1⟩|↓⟩} is invariant and the whole spectrum comes in
//! closed form. The chiral partner (oscillator coupling reversed) couples
//! the right mode with the conjugate pairing.
//!
//! Conventions:
//! * spinor component 1 is spin-up and carries +mc² of rest energy;
//! * the left-chiral number state |n⟩ carries orbital angular momentum −nħ
//!   (so "n_l" names both the quantum number and the magnitude of a
//!   negative L_z eigenvalue);
//! * observable traces are reported in units of ħ;
//! * closed-form evaluators are pure scalar formulas and never touch
//!   matrices, keeping the numerical propagator a genuinely independent
//!   cross-check.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::fockspace::{
    chiral_annihilator, chiral_number_state, Chirality, FockSpace, SpinorState,
};
use crate::linalg;
use crate::spin::{self, Spin};

/// Max-entry Hermiticity tolerance enforced on every assembled Hamiltonian.
pub const HAMILTONIAN_HERMITICITY_TOL: f64 = 1e-12;

/// Poisson-weight tail that a collapse/revival series truncation must beat.
pub const REVIVAL_TAIL_TOL: f64 = 1e-12;

/// Physical scales of the oscillator: mass, light speed, trap frequency and
/// the action scale. All derived quantities are computed on demand so they
/// can never fall out of sync with the base fields.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysParams {
    m: f64,
    c: f64,
    omega: f64,
    hbar: f64,
}

impl PhysParams {
    pub fn new(m: f64, c: f64, omega: f64, hbar: f64) -> Result<Self> {
        for (name, value) in [("m", m), ("c", c), ("hbar", hbar)] {
            if !value.is_finite() || value <= 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be positive and finite, got {value}"
                )));
            }
        }
        if !omega.is_finite() || omega < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "omega must be non-negative and finite, got {omega}"
            )));
        }
        Ok(PhysParams { m, c, omega, hbar })
    }

    /// Natural units m = c = ħ = 1, where the coupling ξ equals ω.
    pub fn natural(xi: f64) -> Result<Self> {
        Self::new(1.0, 1.0, xi, 1.0)
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn mc2(&self) -> f64 {
        self.m * self.c * self.c
    }

    /// Dimensionless coupling ξ = ħω/(mc²); ξ ≪ 1 is the nonrelativistic
    /// regime, ω = 0 the free particle.
    pub fn xi(&self) -> f64 {
        self.hbar * self.omega / self.mc2()
    }

    /// Ground-state oscillator width Δ = √(ħ/(mω)); infinite at ω = 0.
    pub fn delta_width(&self) -> f64 {
        if self.omega == 0.0 {
            f64::INFINITY
        } else {
            (self.hbar / (self.m * self.omega)).sqrt()
        }
    }

    /// Spin-orbit coupling g = 2i·mc²√ξ/ħ of the chiral-form Hamiltonian.
    pub fn coupling_g(&self) -> C64 {
        C64::new(0.0, 2.0 * self.mc2() * self.xi().sqrt() / self.hbar)
    }

    /// Doublet energy E_n = mc²√(1 + 4ξn).
    pub fn doublet_energy(&self, n_l: usize) -> f64 {
        self.mc2() * (1.0 + 4.0 * self.xi() * n_l as f64).sqrt()
    }

    /// Zitterbewegung angular frequency ω_n = E_n/ħ.
    pub fn zitter_frequency(&self, n_l: usize) -> f64 {
        self.doublet_energy(n_l) / self.hbar
    }

    /// First-order oscillation frequency Ω_n = mc²(1 + 2ξn)/ħ of the
    /// nonrelativistic expansion.
    pub fn nonrel_frequency(&self, n_l: usize) -> f64 {
        self.mc2() * (1.0 + 2.0 * self.xi() * n_l as f64) / self.hbar
    }

    /// Relative weight of the oscillating part of the doublet dynamics,
    /// 4ξn/(1 + 4ξn).
    fn oscillation_amplitude(&self, n_l: usize) -> f64 {
        let x = 4.0 * self.xi() * n_l as f64;
        x / (1.0 + x)
    }
}

/// Which algebraic form a Hamiltonian matrix was assembled in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HamiltonianForm {
    Cartesian,
    JcLeft,
    AjcRight,
}

/// A Hermitian Hamiltonian on the (fock ⊗ spin) space, tagged with its
/// construction form and parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct HamiltonianMatrix {
    entries: DMatrix<C64>,
    form: HamiltonianForm,
    params: PhysParams,
    space: FockSpace,
}

impl HamiltonianMatrix {
    fn assemble(
        entries: DMatrix<C64>,
        form: HamiltonianForm,
        params: PhysParams,
        space: FockSpace,
    ) -> Result<Self> {
        if entries.nrows() != space.spinor_dim() {
            return Err(Error::DimensionMismatch {
                left: entries.nrows(),
                right: space.spinor_dim(),
            });
        }
        linalg::check_hermitian(&entries, HAMILTONIAN_HERMITICITY_TOL)?;
        Ok(HamiltonianMatrix {
            entries,
            form,
            params,
            space,
        })
    }

    pub fn entries(&self) -> &DMatrix<C64> {
        &self.entries
    }

    pub fn form(&self) -> HamiltonianForm {
        self.form
    }

    pub fn params(&self) -> PhysParams {
        self.params
    }

    pub fn space(&self) -> FockSpace {
        self.space
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }
}

fn rest_energy_term(params: PhysParams, space: FockSpace) -> DMatrix<C64> {
    let eye = DMatrix::<C64>::identity(space.dim(), space.dim());
    spin::spin_boson(&spin::sigma_z(), &eye).scale(params.mc2())
}

/// Shared Cartesian assembly; `omega_sign` = −1 builds the chiral partner.
///
/// Position and momentum appear only through the products c·p_j and mωc·r_j,
/// whose coefficients in the oscillator-width basis both reduce to
/// κ = mc²√(ξ/2); writing them that way keeps ω = 0 regular.
fn cartesian_form(
    params: PhysParams,
    space: FockSpace,
    omega_sign: f64,
) -> Result<HamiltonianMatrix> {
    if !space.is_two_mode() {
        return Err(Error::UnsupportedLayout {
            got: space.layout(),
            reason: "the Cartesian build drives both modes",
        });
    }
    if space.n_max() < 2 {
        return Err(Error::CutoffTooSmall {
            min: 2,
            got: space.n_max(),
        });
    }
    let (a_x, a_y) = crate::fockspace::cartesian_operators(space)?;
    let kappa = params.mc2() * (params.xi() / 2.0).sqrt();
    let i = C64::new(0.0, 1.0);

    let mut h = rest_energy_term(params, space);
    for (sigma_j, a_j) in [(spin::sigma_x(), &a_x), (spin::sigma_y(), &a_y)] {
        let a = a_j.entries();
        let momentum = (a.adjoint() - a) * (i * kappa); // c·p_j
        let position = (a.adjoint() + a) * C64::new(omega_sign * kappa, 0.0); // mωc·r_j
        h += spin::spin_boson(&sigma_j, &momentum);
        h += spin::spin_boson(&(&sigma_j * spin::sigma_z()), &position) * (-i);
    }
    HamiltonianMatrix::assemble(h, HamiltonianForm::Cartesian, params, space)
}

/// The Cartesian-form Hamiltonian
/// H = Σ_j c·σ_j(p_j − i·mωσ_z r_j) + mc²σ_z on a two-mode space.
pub fn build_hamiltonian_cartesian(
    params: PhysParams,
    space: FockSpace,
) -> Result<HamiltonianMatrix> {
    cartesian_form(params, space, 1.0)
}

/// The chiral partner: the Cartesian build with the oscillator coupling
/// reversed (ω → −ω). Must agree with the anti-JC form after the chiral
/// basis change.
pub fn build_hamiltonian_cartesian_reversed(
    params: PhysParams,
    space: FockSpace,
) -> Result<HamiltonianMatrix> {
    cartesian_form(params, space, -1.0)
}

/// The left-chiral (JC-form) Hamiltonian
/// H = ħ g σ⁺a_l† + ħ g* σ⁻a_l + mc²σ_z with g = 2i·mc²√ξ/ħ.
///
/// The raise-raise pairing is what the Cartesian form reduces to: it leaves
/// each doublet {|n⟩|↑⟩, |n−1⟩|↓⟩} invariant and drives the spin-orbital
/// exchange of the Zitterbewegung solution. The unpaired states are
/// |0⟩|↓⟩ at −mc² and |0⟩|↑⟩ at +mc².
pub fn build_hamiltonian_jc(params: PhysParams, space: FockSpace) -> Result<HamiltonianMatrix> {
    let a_l = chiral_annihilator(space, Chirality::Left)?;
    let g = params.coupling_g();
    let hbar_g = g * params.hbar();

    let mut h = rest_energy_term(params, space);
    h += spin::spin_boson(&spin::sigma_plus(), &a_l.entries().adjoint()) * hbar_g;
    h += spin::spin_boson(&spin::sigma_minus(), a_l.entries()) * hbar_g.conj();
    HamiltonianMatrix::assemble(h, HamiltonianForm::JcLeft, params, space)
}

/// The right-chiral (anti-JC-form) Hamiltonian
/// H = ħ g σ⁻a_r† + ħ g* σ⁺a_r + mc²σ_z.
///
/// Equals the reversed Cartesian build after the chiral basis change; its
/// doublets pair |n−1⟩|↑⟩ with |n⟩|↓⟩ and the spectrum mirrors the JC case
/// with right quanta in place of left.
pub fn build_hamiltonian_ajc(params: PhysParams, space: FockSpace) -> Result<HamiltonianMatrix> {
    let a_r = chiral_annihilator(space, Chirality::Right)?;
    let g = params.coupling_g();
    let hbar_g = g * params.hbar();

    let mut h = rest_energy_term(params, space);
    h += spin::spin_boson(&spin::sigma_minus(), &a_r.entries().adjoint()) * hbar_g;
    h += spin::spin_boson(&spin::sigma_plus(), a_r.entries()) * hbar_g.conj();
    HamiltonianMatrix::assemble(h, HamiltonianForm::AjcRight, params, space)
}

/// The JC form written directly in chiral-number coordinates
/// (index = n_l·(n_max+1) + n_r, the left mode outermost), for cross-checks
/// against the Cartesian build through the chiral basis change.
pub fn build_hamiltonian_jc_chiral_grid(
    params: PhysParams,
    space: FockSpace,
) -> Result<HamiltonianMatrix> {
    if !space.is_two_mode() {
        return Err(Error::UnsupportedLayout {
            got: space.layout(),
            reason: "the chiral-grid form reuses the two-mode index grid",
        });
    }
    // on the chiral grid the left mode has the a_x matrix structure
    let (a_l_grid, _) = crate::fockspace::cartesian_operators(space)?;
    let g = params.coupling_g();
    let hbar_g = g * params.hbar();

    let mut h = rest_energy_term(params, space);
    h += spin::spin_boson(&spin::sigma_plus(), &a_l_grid.entries().adjoint()) * hbar_g;
    h += spin::spin_boson(&spin::sigma_minus(), a_l_grid.entries()) * hbar_g.conj();
    HamiltonianMatrix::assemble(h, HamiltonianForm::JcLeft, params, space)
}

/// The anti-JC form on the same chiral-number grid (right mode innermost).
pub fn build_hamiltonian_ajc_chiral_grid(
    params: PhysParams,
    space: FockSpace,
) -> Result<HamiltonianMatrix> {
    if !space.is_two_mode() {
        return Err(Error::UnsupportedLayout {
            got: space.layout(),
            reason: "the chiral-grid form reuses the two-mode index grid",
        });
    }
    let (_, a_r_grid) = crate::fockspace::cartesian_operators(space)?;
    let g = params.coupling_g();
    let hbar_g = g * params.hbar();

    let mut h = rest_energy_term(params, space);
    h += spin::spin_boson(&spin::sigma_minus(), &a_r_grid.entries().adjoint()) * hbar_g;
    h += spin::spin_boson(&spin::sigma_plus(), a_r_grid.entries()) * hbar_g.conj();
    HamiltonianMatrix::assemble(h, HamiltonianForm::AjcRight, params, space)
}

/// Max interior-restricted entry difference between two spin-extended
/// matrices on the same space: only rows and columns whose bosonic part has
/// total quanta ≤ n_max − 1 enter the comparison.
pub fn spinor_interior_max_diff(space: FockSpace, a: &DMatrix<C64>, b: &DMatrix<C64>) -> f64 {
    assert_eq!(a.shape(), b.shape());
    assert_eq!(a.nrows(), space.spinor_dim());
    let interior = space.interior_indices();
    let mut worst = 0.0f64;
    for spin_r in 0..2 {
        for spin_c in 0..2 {
            for &br in &interior {
                let r = spin_r * space.dim() + br;
                for &bc in &interior {
                    let c = spin_c * space.dim() + bc;
                    worst = worst.max((a[(r, c)] - b[(r, c)]).norm());
                }
            }
        }
    }
    worst
}

/// One doublet of the closed-form spectrum: energies ±mc²√(1+4ξn_l) and the
/// real mixing amplitudes α = √((E+mc²)/2E), β = √((E−mc²)/2E).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DoubletEigensystem {
    n_l: usize,
    energy_plus: f64,
    energy_minus: f64,
    alpha: f64,
    beta: f64,
}

impl DoubletEigensystem {
    pub fn n_l(&self) -> usize {
        self.n_l
    }

    pub fn energy_plus(&self) -> f64 {
        self.energy_plus
    }

    pub fn energy_minus(&self) -> f64 {
        self.energy_minus
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// |+E⟩ = α|n_l⟩|↑⟩ − iβ|n_l−1⟩|↓⟩ embedded in `space`.
    pub fn eigenstate_plus(&self, space: FockSpace) -> Result<SpinorState> {
        self.embed(space, C64::new(self.alpha, 0.0), C64::new(0.0, -self.beta))
    }

    /// |−E⟩ = β|n_l⟩|↑⟩ + iα|n_l−1⟩|↓⟩ embedded in `space`.
    pub fn eigenstate_minus(&self, space: FockSpace) -> Result<SpinorState> {
        self.embed(space, C64::new(self.beta, 0.0), C64::new(0.0, self.alpha))
    }

    fn embed(&self, space: FockSpace, up: C64, down: C64) -> Result<SpinorState> {
        let upper = chiral_number_state(space, Chirality::Left, self.n_l)?;
        let lower = chiral_number_state(space, Chirality::Left, self.n_l - 1)?;
        let amplitudes = upper.with_spin(Spin::Up).amplitudes() * up
            + lower.with_spin(Spin::Down).amplitudes() * down;
        SpinorState::new(space, amplitudes)
    }
}

/// Closed-form doublet spectrum; n_l ≥ 1 (the unpaired ground state is not
/// a doublet and is reachable only through the matrix Hamiltonians).
pub fn spectrum(params: PhysParams, n_l: usize) -> Result<DoubletEigensystem> {
    if n_l == 0 {
        return Err(Error::InvalidDoubletIndex);
    }
    let energy = params.doublet_energy(n_l);
    let mc2 = params.mc2();
    Ok(DoubletEigensystem {
        n_l,
        energy_plus: energy,
        energy_minus: -energy,
        alpha: ((energy + mc2) / (2.0 * energy)).sqrt(),
        beta: ((energy - mc2) / (2.0 * energy)).sqrt(),
    })
}

/// Closed-form state of one evolving doublet, started from |n_l−1⟩|↓⟩.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DoubletState {
    n_l: usize,
    up: C64,
    down: C64,
}

impl DoubletState {
    pub fn n_l(&self) -> usize {
        self.n_l
    }

    /// Amplitude on |n_l⟩|↑⟩.
    pub fn up(&self) -> C64 {
        self.up
    }

    /// Amplitude on |n_l−1⟩|↓⟩.
    pub fn down(&self) -> C64 {
        self.down
    }

    pub fn norm(&self) -> f64 {
        (self.up.norm_sqr() + self.down.norm_sqr()).sqrt()
    }

    /// Expand the two scalar amplitudes over a concrete space.
    pub fn embed(&self, space: FockSpace) -> Result<SpinorState> {
        let upper = chiral_number_state(space, Chirality::Left, self.n_l)?;
        let lower = chiral_number_state(space, Chirality::Left, self.n_l - 1)?;
        let amplitudes = upper.with_spin(Spin::Up).amplitudes() * self.up
            + lower.with_spin(Spin::Down).amplitudes() * self.down;
        SpinorState::new(space, amplitudes)
    }
}

/// Closed-form evolution of the initial state |n_l−1⟩|↓⟩:
/// the spin-down amplitude is cos(ωt) + i·sin(ωt)/√(1+4ξn_l) and the
/// spin-up amplitude √(4ξn_l/(1+4ξn_l))·sin(ωt), with ω = ω_{n_l}.
pub fn evolve_closed_form(params: PhysParams, n_l: usize, t: f64) -> Result<DoubletState> {
    if n_l == 0 {
        return Err(Error::InvalidDoubletIndex);
    }
    let root = (1.0 + 4.0 * params.xi() * n_l as f64).sqrt();
    let phase = params.zitter_frequency(n_l) * t;
    let (sin, cos) = phase.sin_cos();
    Ok(DoubletState {
        n_l,
        up: C64::new(params.oscillation_amplitude(n_l).sqrt() * sin, 0.0),
        down: C64::new(cos, sin / root),
    })
}

/// Time series of ⟨L_z⟩, ⟨S_z⟩ and ⟨J_z⟩ in units of ħ; the total angular
/// momentum is conserved, so jz − (lz + sz) is checked to vanish.
#[derive(Debug, Clone, PartialEq)]
pub struct ObservableTrace {
    times: Vec<f64>,
    lz: Vec<f64>,
    sz: Vec<f64>,
    jz: Vec<f64>,
}

impl ObservableTrace {
    pub fn new(times: Vec<f64>, lz: Vec<f64>, sz: Vec<f64>, jz: Vec<f64>) -> Result<Self> {
        let n = times.len();
        for (name, v) in [("lz", &lz), ("sz", &sz), ("jz", &jz)] {
            if v.len() != n {
                return Err(Error::InvalidParameter(format!(
                    "{name} has {} entries for {n} times",
                    v.len()
                )));
            }
        }
        for k in 0..n {
            let gap = (jz[k] - (lz[k] + sz[k])).abs();
            if gap > 1e-10 {
                return Err(Error::InvalidParameter(format!(
                    "jz deviates from lz + sz by {gap:.3e} at index {k}"
                )));
            }
        }
        Ok(ObservableTrace { times, lz, sz, jz })
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn lz(&self) -> &[f64] {
        &self.lz
    }

    pub fn sz(&self) -> &[f64] {
        &self.sz
    }

    pub fn jz(&self) -> &[f64] {
        &self.jz
    }
}

/// Zitterbewegung observables of the |n_l−1⟩|↓⟩ doublet (units of ħ):
/// lz = −(n_l−1) − A sin²(ω_{n_l}t), sz = −1/2 + A sin²(ω_{n_l}t) with
/// A = 4ξn_l/(1+4ξn_l), and the conserved jz = 1/2 − n_l.
pub fn zitterbewegung_trace(
    params: PhysParams,
    n_l: usize,
    times: &[f64],
) -> Result<ObservableTrace> {
    if n_l == 0 {
        return Err(Error::InvalidDoubletIndex);
    }
    if times.is_empty() {
        return Err(Error::InvalidParameter("empty time grid".into()));
    }
    let amplitude = params.oscillation_amplitude(n_l);
    let omega = params.zitter_frequency(n_l);
    let lz_rest = -((n_l - 1) as f64);
    let jz_value = 0.5 - n_l as f64;

    let mut lz = Vec::with_capacity(times.len());
    let mut sz = Vec::with_capacity(times.len());
    let mut jz = Vec::with_capacity(times.len());
    for &t in times {
        let osc = amplitude * (omega * t).sin().powi(2);
        lz.push(lz_rest - osc);
        sz.push(-0.5 + osc);
        jz.push(jz_value);
    }
    ObservableTrace::new(times.to_vec(), lz, sz, jz)
}

/// Gap between the exact oscillation and its first-order nonrelativistic
/// expansion at time t, maximized over the (L_z, S_z) pair; both carry the
/// same oscillating term, so the two gaps coincide. Scales as O(ξ²) inside
/// the ξ < 1/4 expansion regime (larger ξ is allowed but sits outside it).
pub fn nonrelativistic_residual(params: PhysParams, n_l: usize, t: f64) -> Result<f64> {
    if n_l == 0 {
        return Err(Error::InvalidDoubletIndex);
    }
    let exact =
        params.oscillation_amplitude(n_l) * (params.zitter_frequency(n_l) * t).sin().powi(2);
    let first_order =
        4.0 * params.xi() * n_l as f64 * (params.nonrel_frequency(n_l) * t).sin().powi(2);
    Ok((exact - first_order).abs())
}

/// Smallest series length whose Poisson weight tail beats the revival
/// tolerance for a circular coherent state of amplitude z.
pub fn poisson_series_cutoff(z: C64) -> Result<usize> {
    crate::fockspace::poisson_cutoff(z.norm_sqr(), REVIVAL_TAIL_TOL)
}

/// Collapse/revival traces for the circular coherent start |z⟩|↓⟩ (units
/// of ħ): both series share the weighted oscillation
/// Σ_n w_n·A_{n+1}·sin²(ω_{n+1}t) with Poisson weights w_n, entering sz with
/// +1 and lz with −1, so jz = −|z|² − 1/2 holds term by term.
pub fn collapse_revival_trace(
    params: PhysParams,
    z: C64,
    times: &[f64],
    n_terms: usize,
) -> Result<ObservableTrace> {
    let lambda = z.norm_sqr();
    let tail = crate::fockspace::poisson_tail_bound(lambda, n_terms);
    if tail >= REVIVAL_TAIL_TOL {
        return Err(Error::TailTooLarge {
            tail,
            cutoff: n_terms,
            bound: REVIVAL_TAIL_TOL,
        });
    }

    // per-term weight w_n·A_{n+1} and frequency ω_{n+1}
    let mut weights = Vec::with_capacity(n_terms + 1);
    let mut frequencies = Vec::with_capacity(n_terms + 1);
    let mut w = (-lambda).exp();
    for n in 0..=n_terms {
        if n > 0 {
            w *= lambda / n as f64;
        }
        weights.push(w * params.oscillation_amplitude(n + 1));
        frequencies.push(params.zitter_frequency(n + 1));
    }

    let jz_value = -lambda - 0.5;
    let mut lz = Vec::with_capacity(times.len());
    let mut sz = Vec::with_capacity(times.len());
    let mut jz = Vec::with_capacity(times.len());
    for &t in times {
        let mut osc = 0.0;
        for (wa, omega) in weights.iter().zip(&frequencies) {
            osc += wa * (omega * t).sin().powi(2);
        }
        lz.push(-lambda - osc);
        sz.push(-0.5 + osc);
        jz.push(jz_value);
    }
    ObservableTrace::new(times.to_vec(), lz, sz, jz)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fockspace::chiral_basis_change;
    use crate::linalg::max_abs_diff;

    const TAU: f64 = std::f64::consts::TAU;

    fn grid(t_end: f64, n: usize) -> Vec<f64> {
        (0..n).map(|k| t_end * k as f64 / (n - 1) as f64).collect()
    }

    #[test]
    fn params_validation() {
        assert!(PhysParams::new(0.0, 1.0, 1.0, 1.0).is_err());
        assert!(PhysParams::new(1.0, 1.0, -0.1, 1.0).is_err());
        let p = PhysParams::natural(2.0).unwrap();
        assert!((p.xi() - 2.0).abs() < 1e-15);
        assert!((p.delta_width() - (1.0 / 2.0f64).sqrt()).abs() < 1e-15);
        assert!(PhysParams::natural(0.0)
            .unwrap()
            .delta_width()
            .is_infinite());
    }

    #[test]
    fn spectrum_examples() {
        // free limit
        let free = spectrum(PhysParams::natural(0.0).unwrap(), 3).unwrap();
        assert!((free.energy_plus() - 1.0).abs() < 1e-15);
        assert!((free.alpha() - 1.0).abs() < 1e-15);
        assert!(free.beta().abs() < 1e-15);

        // ξ = 2, n_l = 1: E = ±3, α = √(2/3), β = √(1/3)
        let d = spectrum(PhysParams::natural(2.0).unwrap(), 1).unwrap();
        assert!((d.energy_plus() - 3.0).abs() < 1e-14);
        assert!((d.energy_minus() + 3.0).abs() < 1e-14);
        assert!((d.alpha() - (2.0f64 / 3.0).sqrt()).abs() < 1e-14);
        assert!((d.beta() - (1.0f64 / 3.0).sqrt()).abs() < 1e-14);

        // ξ = 0.25, n_l = 2: E = ±√3
        let d2 = spectrum(PhysParams::natural(0.25).unwrap(), 2).unwrap();
        assert!((d2.energy_plus() - 3.0f64.sqrt()).abs() < 1e-14);

        assert!(matches!(
            spectrum(PhysParams::natural(1.0).unwrap(), 0),
            Err(Error::InvalidDoubletIndex)
        ));
    }

    #[test]
    fn doublet_amplitudes_normalized_and_ordered() {
        for xi in [0.0, 0.05, 0.5, 2.0, 10.0] {
            let params = PhysParams::natural(xi).unwrap();
            for n_l in 1..=6 {
                let d = spectrum(params, n_l).unwrap();
                assert!((d.alpha().powi(2) + d.beta().powi(2) - 1.0).abs() < 1e-12);
                assert!(d.alpha() >= d.beta() && d.beta() >= 0.0);
                assert!((d.energy_plus() + d.energy_minus()).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn cartesian_hermitian_and_free_limit() {
        let space = FockSpace::two_mode(8).unwrap();
        let params = PhysParams::new(1.0, 1.0, 0.5, 1.0).unwrap();
        let h = build_hamiltonian_cartesian(params, space).unwrap();
        assert!(linalg::hermiticity_deviation(h.entries()) < 1e-12);

        // ω = 0: the oscillator coupling vanishes and, in the oscillator-width
        // basis, so do the momentum matrix elements: only the rest term stays
        let free = build_hamiltonian_cartesian(PhysParams::natural(0.0).unwrap(), space).unwrap();
        assert!(
            max_abs_diff(
                free.entries(),
                &rest_energy_term(PhysParams::natural(0.0).unwrap(), space)
            ) < 1e-15
        );

        assert!(build_hamiltonian_cartesian(params, FockSpace::single_left(8).unwrap()).is_err());
        assert!(build_hamiltonian_cartesian(params, FockSpace::two_mode(1).unwrap()).is_err());
    }

    #[test]
    fn jc_equals_cartesian_directly() {
        // in Cartesian coordinates the chiral recombination is exact linear
        // algebra, so the two builds agree on the whole space
        let space = FockSpace::two_mode(8).unwrap();
        for omega in [0.0, 0.3, 1.0, 2.0] {
            let params = PhysParams::natural(omega).unwrap();
            let h_cart = build_hamiltonian_cartesian(params, space).unwrap();
            let h_jc = build_hamiltonian_jc(params, space).unwrap();
            assert!(max_abs_diff(h_cart.entries(), h_jc.entries()) < 1e-12);

            let h_cart_rev = build_hamiltonian_cartesian_reversed(params, space).unwrap();
            let h_ajc = build_hamiltonian_ajc(params, space).unwrap();
            assert!(max_abs_diff(h_cart_rev.entries(), h_ajc.entries()) < 1e-12);
        }
    }

    #[test]
    fn jc_equals_cartesian_after_basis_change() {
        let space = FockSpace::two_mode(8).unwrap();
        let params = PhysParams::natural(0.5).unwrap();
        let u = chiral_basis_change(space).unwrap();
        let u_full = spin::spin_boson(&DMatrix::identity(2, 2), u.entries());

        let h_cart = build_hamiltonian_cartesian(params, space).unwrap();
        let h_grid = build_hamiltonian_jc_chiral_grid(params, space).unwrap();
        let pulled_back = &u_full * h_grid.entries() * u_full.adjoint();
        let gap = spinor_interior_max_diff(space, h_cart.entries(), &pulled_back);
        assert!(gap < 1e-10, "interior gap {gap:.3e}");

        let h_cart_rev = build_hamiltonian_cartesian_reversed(params, space).unwrap();
        let h_ajc_grid = build_hamiltonian_ajc_chiral_grid(params, space).unwrap();
        let pulled_back_ajc = &u_full * h_ajc_grid.entries() * u_full.adjoint();
        let gap_ajc = spinor_interior_max_diff(space, h_cart_rev.entries(), &pulled_back_ajc);
        assert!(gap_ajc < 1e-10, "interior AJC gap {gap_ajc:.3e}");
    }

    #[test]
    fn jc_zero_coupling_is_diagonal() {
        let space = FockSpace::single_left(6).unwrap();
        let params = PhysParams::natural(0.0).unwrap();
        let h = build_hamiltonian_jc(params, space).unwrap();
        assert!(max_abs_diff(h.entries(), &rest_energy_term(params, space)) < 1e-15);
    }

    #[test]
    fn cartesian_diagonalization_hits_closed_form() {
        // the n_l = 1 doublet energies ±√(1+4ξ) show up in the two-mode
        // Cartesian spectrum
        let space = FockSpace::two_mode(6).unwrap();
        let params = PhysParams::natural(0.8).unwrap();
        let h = build_hamiltonian_cartesian(params, space).unwrap();
        let decomp = crate::propagator::diagonalize(&h).unwrap();
        let target = (1.0f64 + 4.0 * 0.8).sqrt();
        for want in [target, -target] {
            let nearest = decomp
                .eigenvalues()
                .iter()
                .map(|&e| (e - want).abs())
                .fold(f64::INFINITY, f64::min);
            assert!(
                nearest < 1e-9,
                "missing eigenvalue {want}: gap {nearest:.3e}"
            );
        }
    }

    #[test]
    fn ajc_spectrum_mirrors_jc_with_right_quanta() {
        let space = FockSpace::single_right(8).unwrap();
        let params = PhysParams::natural(0.6).unwrap();
        let h = build_hamiltonian_ajc(params, space).unwrap();
        let decomp = crate::propagator::diagonalize(&h).unwrap();
        for n_r in 1..=5 {
            let energy = params.doublet_energy(n_r);
            for want in [energy, -energy] {
                let nearest = decomp
                    .eigenvalues()
                    .iter()
                    .map(|&e| (e - want).abs())
                    .fold(f64::INFINITY, f64::min);
                assert!(nearest < 1e-10, "n_r={n_r}: gap {nearest:.3e}");
            }
        }
    }

    #[test]
    fn jc_rejects_wrong_chirality_layout() {
        let params = PhysParams::natural(1.0).unwrap();
        assert!(build_hamiltonian_jc(params, FockSpace::single_right(4).unwrap()).is_err());
        assert!(build_hamiltonian_ajc(params, FockSpace::single_left(4).unwrap()).is_err());
    }

    #[test]
    fn eigenstates_satisfy_eigen_equation() {
        let space = FockSpace::single_left(10).unwrap();
        for xi in [0.05, 0.5, 2.0] {
            let params = PhysParams::natural(xi).unwrap();
            let h = build_hamiltonian_jc(params, space).unwrap();
            for n_l in 1..=4 {
                let d = spectrum(params, n_l).unwrap();
                for (state, energy) in [
                    (d.eigenstate_plus(space).unwrap(), d.energy_plus()),
                    (d.eigenstate_minus(space).unwrap(), d.energy_minus()),
                ] {
                    let hv = h.entries() * state.amplitudes();
                    let residual = (hv - state.amplitudes() * C64::new(energy, 0.0)).norm();
                    assert!(residual < 1e-10, "xi={xi} n={n_l}: residual {residual:.3e}");
                }
            }
        }
    }

    #[test]
    fn closed_form_initial_condition_and_norm() {
        let params = PhysParams::natural(0.7).unwrap();
        let at0 = evolve_closed_form(params, 2, 0.0).unwrap();
        assert_eq!(at0.up(), C64::new(0.0, 0.0));
        assert_eq!(at0.down(), C64::new(1.0, 0.0));

        for k in 0..100 {
            let t = -7.0 + 0.143 * k as f64;
            let state = evolve_closed_form(params, 1, t).unwrap();
            assert!((state.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn closed_form_peak_amplitude() {
        // ξ = 2, n_l = 1, ω₁ = 3: at ω₁t = π/2 the up amplitude is √(8/9)
        let params = PhysParams::natural(2.0).unwrap();
        let t = std::f64::consts::FRAC_PI_2 / 3.0;
        let state = evolve_closed_form(params, 1, t).unwrap();
        assert!((state.up().re - (8.0f64 / 9.0).sqrt()).abs() < 1e-12);
        assert!(state.up().im.abs() < 1e-15);
    }

    #[test]
    fn zitter_trace_values() {
        let params = PhysParams::natural(2.0).unwrap();
        // ω₁ = 3, so t = π/6 puts the phase at π/2: sz peaks at 7/18
        let trace = zitterbewegung_trace(params, 1, &[0.0, std::f64::consts::FRAC_PI_6]).unwrap();
        assert!((trace.lz()[0] - 0.0).abs() < 1e-15);
        assert!((trace.sz()[0] + 0.5).abs() < 1e-15);
        assert!((trace.jz()[0] + 0.5).abs() < 1e-15);
        assert!((trace.sz()[1] - 7.0 / 18.0).abs() < 1e-12);

        // jz stays put on a long grid
        let times = grid(15.0, 500);
        let long = zitterbewegung_trace(params, 3, &times).unwrap();
        for &j in long.jz() {
            assert!((j - (0.5 - 3.0)).abs() < 1e-12);
        }

        assert!(zitterbewegung_trace(params, 1, &[]).is_err());
        assert!(zitterbewegung_trace(params, 0, &[0.0]).is_err());
    }

    #[test]
    fn nonrel_residual_scaling() {
        let params0 = PhysParams::natural(0.0).unwrap();
        assert_eq!(nonrelativistic_residual(params0, 1, 1.3).unwrap(), 0.0);

        // maximum residual over one exact period, for two couplings
        let max_residual = |xi: f64| {
            let params = PhysParams::natural(xi).unwrap();
            let period = TAU / params.zitter_frequency(1);
            grid(period, 2001)
                .into_iter()
                .map(|t| nonrelativistic_residual(params, 1, t).unwrap())
                .fold(0.0, f64::max)
        };
        let coarse = max_residual(0.02);
        let fine = max_residual(0.01);
        let ratio = coarse / fine;
        assert!((3.5..=4.5).contains(&ratio), "O(ξ²) ratio {ratio}");

        // empirical envelope: residual < 4ξ²n²·C with C = 10
        assert!(fine < 10.0 * 4.0 * 0.01f64.powi(2));
    }

    #[test]
    fn collapse_revival_limits() {
        let params = PhysParams::natural(0.1).unwrap();
        let z = C64::new(2.0, 0.0);
        let n_terms = poisson_series_cutoff(z).unwrap();
        let times = grid(40.0, 200);

        let trace = collapse_revival_trace(params, z, &times, n_terms).unwrap();
        assert!((trace.sz()[0] + 0.5).abs() < 1e-12);
        assert!((trace.lz()[0] + 4.0).abs() < 1e-10);
        for k in 0..times.len() {
            let sum = trace.lz()[k] + trace.sz()[k];
            assert!((sum - (-4.0 - 0.5)).abs() < 1e-10);
            assert!(trace.sz()[k] >= -0.5 - 1e-12 && trace.sz()[k] <= 0.5 + 1e-12);
        }

        // z = 0 collapses the series to the single-frequency law
        let z0 = C64::new(0.0, 0.0);
        let single = collapse_revival_trace(params, z0, &times, 0).unwrap();
        let doublet = zitterbewegung_trace(params, 1, &times).unwrap();
        for k in 0..times.len() {
            assert!((single.sz()[k] - doublet.sz()[k]).abs() < 1e-14);
            assert!((single.lz()[k] - (doublet.lz()[k])).abs() < 1e-14);
        }

        // too few terms for z = 2 must be rejected
        assert!(matches!(
            collapse_revival_trace(params, z, &times, 4),
            Err(Error::TailTooLarge { .. })
        ));
    }
}
