//! Truncated bosonic Fock spaces and the operator matrices living on them:
//! Cartesian and chiral (circular) ladder operators, orbital angular
//! momentum, circular coherent states, and displacement sequences.
//!
//! Basis-ordering contract, fixed across the crate:
//!
//! * two-mode spaces index the bosonic basis as `n_x * (n_max + 1) + n_y`;
//! * single-mode chiral spaces index directly by the chiral occupation;
//! * the spin factor, when present, is outermost with order (up, down), so a
//!   spinor amplitude vector stores the whole spin-up block first:
//!   `global = spin.index() * dim + bosonic_index`.
//!
//! Truncation policy: ladder-operator identities (canonical commutators,
//! vanishing cross-mode commutators) hold exactly only on the interior
//! subspace of total quanta ≤ n_max − 1; the boundary row is a truncation
//! artifact and is excluded from all asserted identities.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::linalg;
use crate::spin::{self, Spin};

/// How the bosonic degrees of freedom are laid out.
///
/// `TwoModeCartesian` is the ground truth for cross-form checks; the
/// single-chiral layouts are an optimization path for Hamiltonians that only
/// touch one circular mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeLayout {
    TwoModeCartesian,
    SingleChiralLeft,
    SingleChiralRight,
}

/// Circular-mode handedness. A left quantum carries orbital angular
/// momentum −ħ, a right quantum +ħ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Chirality {
    Left,
    Right,
}

/// A truncated bosonic Hilbert space with a fixed basis ordering.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FockSpace {
    n_max: usize,
    layout: ModeLayout,
    dim: usize,
}

impl FockSpace {
    /// Two Cartesian modes, each truncated at `n_max` quanta.
    pub fn two_mode(n_max: usize) -> Result<Self> {
        if n_max < 1 {
            return Err(Error::CutoffTooSmall { min: 1, got: n_max });
        }
        Ok(FockSpace {
            n_max,
            layout: ModeLayout::TwoModeCartesian,
            dim: (n_max + 1) * (n_max + 1),
        })
    }

    /// A single circular mode truncated at `n_max` quanta.
    pub fn single_chiral(n_max: usize, chirality: Chirality) -> Result<Self> {
        if n_max < 1 {
            return Err(Error::CutoffTooSmall { min: 1, got: n_max });
        }
        let layout = match chirality {
            Chirality::Left => ModeLayout::SingleChiralLeft,
            Chirality::Right => ModeLayout::SingleChiralRight,
        };
        Ok(FockSpace {
            n_max,
            layout,
            dim: n_max + 1,
        })
    }

    pub fn single_left(n_max: usize) -> Result<Self> {
        Self::single_chiral(n_max, Chirality::Left)
    }

    pub fn single_right(n_max: usize) -> Result<Self> {
        Self::single_chiral(n_max, Chirality::Right)
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn layout(&self) -> ModeLayout {
        self.layout
    }

    /// Bosonic dimension: (n_max+1)² for two modes, n_max+1 for one.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Dimension of the spin ⊗ boson product space.
    pub fn spinor_dim(&self) -> usize {
        2 * self.dim
    }

    pub fn is_two_mode(&self) -> bool {
        self.layout == ModeLayout::TwoModeCartesian
    }

    /// Bosonic index of |n_x, n_y⟩ on a two-mode space.
    pub fn index_of_xy(&self, n_x: usize, n_y: usize) -> usize {
        assert!(self.is_two_mode(), "index_of_xy requires a two-mode layout");
        assert!(
            n_x <= self.n_max && n_y <= self.n_max,
            "occupation beyond cutoff"
        );
        n_x * (self.n_max + 1) + n_y
    }

    /// (n_x, n_y) labels of a two-mode bosonic index.
    pub fn xy_of_index(&self, index: usize) -> (usize, usize) {
        assert!(self.is_two_mode(), "xy_of_index requires a two-mode layout");
        assert!(index < self.dim, "bosonic index out of range");
        (index / (self.n_max + 1), index % (self.n_max + 1))
    }

    /// Total occupation of the basis state behind a bosonic index.
    pub fn total_quanta(&self, index: usize) -> usize {
        match self.layout {
            ModeLayout::TwoModeCartesian => {
                let (n_x, n_y) = self.xy_of_index(index);
                n_x + n_y
            }
            _ => {
                assert!(index < self.dim, "bosonic index out of range");
                index
            }
        }
    }

    /// Whether the basis state sits strictly below the truncation boundary.
    pub fn is_interior(&self, index: usize) -> bool {
        self.total_quanta(index) < self.n_max
    }

    /// All bosonic indices with total quanta ≤ n_max − 1.
    pub fn interior_indices(&self) -> Vec<usize> {
        (0..self.dim).filter(|&b| self.is_interior(b)).collect()
    }

    /// Global index of |spin⟩ ⊗ |bosonic⟩ under the spin-outermost ordering.
    pub fn spinor_index(&self, spin: Spin, bosonic: usize) -> usize {
        assert!(bosonic < self.dim, "bosonic index out of range");
        spin.index() * self.dim + bosonic
    }

    /// Inverse of [`spinor_index`](Self::spinor_index).
    pub fn spinor_labels(&self, index: usize) -> (Spin, usize) {
        assert!(index < self.spinor_dim(), "spinor index out of range");
        if index < self.dim {
            (Spin::Up, index)
        } else {
            (Spin::Down, index - self.dim)
        }
    }
}

/// A dense complex operator tied to the space it acts on. Bosonic-only
/// operators have dimension `space.dim()`, spin-extended ones twice that.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    entries: DMatrix<C64>,
    space: FockSpace,
    label: String,
}

impl OperatorMatrix {
    pub fn new(space: FockSpace, label: impl Into<String>, entries: DMatrix<C64>) -> Result<Self> {
        if entries.nrows() != entries.ncols() {
            return Err(Error::DimensionMismatch {
                left: entries.nrows(),
                right: entries.ncols(),
            });
        }
        let n = entries.nrows();
        if n != space.dim() && n != space.spinor_dim() {
            return Err(Error::DimensionMismatch {
                left: n,
                right: space.dim(),
            });
        }
        Ok(OperatorMatrix {
            entries,
            space,
            label: label.into(),
        })
    }

    pub fn entries(&self) -> &DMatrix<C64> {
        &self.entries
    }

    pub fn into_entries(self) -> DMatrix<C64> {
        self.entries
    }

    pub fn space(&self) -> FockSpace {
        self.space
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn is_spin_extended(&self) -> bool {
        self.entries.nrows() == self.space.spinor_dim()
    }

    /// Conjugate transpose, labelled with a trailing dagger.
    pub fn dagger(&self) -> OperatorMatrix {
        OperatorMatrix {
            entries: self.entries.adjoint(),
            space: self.space,
            label: format!("{}^†", self.label),
        }
    }

    /// Lift a bosonic-only operator to the spin ⊗ boson space as 1 ⊗ O.
    pub fn spin_extended(&self) -> Result<OperatorMatrix> {
        if self.is_spin_extended() {
            return Err(Error::DimensionMismatch {
                left: self.entries.nrows(),
                right: self.space.dim(),
            });
        }
        let eye = DMatrix::<C64>::identity(2, 2);
        OperatorMatrix::new(
            self.space,
            self.label.clone(),
            spin::spin_boson(&eye, &self.entries),
        )
    }

    pub fn hermiticity_deviation(&self) -> f64 {
        linalg::hermiticity_deviation(&self.entries)
    }
}

/// Normalized bosonic amplitude vector (no spin factor).
#[derive(Debug, Clone, PartialEq)]
pub struct BosonState {
    amplitudes: DVector<C64>,
    space: FockSpace,
}

impl BosonState {
    /// Wrap amplitudes that are already unit-norm (within 1e-12).
    pub fn new(space: FockSpace, amplitudes: DVector<C64>) -> Result<Self> {
        if amplitudes.len() != space.dim() {
            return Err(Error::DimensionMismatch {
                left: amplitudes.len(),
                right: space.dim(),
            });
        }
        let norm = amplitudes.norm();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!(
                "boson state norm {norm} deviates from 1 beyond 1e-12"
            )));
        }
        Ok(BosonState { amplitudes, space })
    }

    pub fn vacuum(space: FockSpace) -> Self {
        let mut amplitudes = DVector::zeros(space.dim());
        amplitudes[0] = C64::new(1.0, 0.0);
        BosonState { amplitudes, space }
    }

    pub fn amplitudes(&self) -> &DVector<C64> {
        &self.amplitudes
    }

    pub fn space(&self) -> FockSpace {
        self.space
    }

    /// Place the bosonic vector in one spin block of a spinor state.
    pub fn with_spin(&self, spin: Spin) -> SpinorState {
        let dim = self.space.dim();
        let mut amplitudes = DVector::zeros(2 * dim);
        let offset = spin.index() * dim;
        amplitudes.rows_mut(offset, dim).copy_from(&self.amplitudes);
        SpinorState {
            amplitudes,
            space: self.space,
        }
    }
}

/// Normalized state vector over (fock ⊗ spin), unit norm within 1e-12 after
/// any construction or evolution step.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinorState {
    amplitudes: DVector<C64>,
    space: FockSpace,
}

impl SpinorState {
    pub fn new(space: FockSpace, amplitudes: DVector<C64>) -> Result<Self> {
        if amplitudes.len() != space.spinor_dim() {
            return Err(Error::DimensionMismatch {
                left: amplitudes.len(),
                right: space.spinor_dim(),
            });
        }
        let norm = amplitudes.norm();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!(
                "spinor norm {norm} deviates from 1 beyond 1e-12"
            )));
        }
        Ok(SpinorState { amplitudes, space })
    }

    /// Rescale arbitrary amplitudes to unit norm.
    pub fn normalized(space: FockSpace, amplitudes: DVector<C64>) -> Result<Self> {
        if amplitudes.len() != space.spinor_dim() {
            return Err(Error::DimensionMismatch {
                left: amplitudes.len(),
                right: space.spinor_dim(),
            });
        }
        let norm = amplitudes.norm();
        if norm == 0.0 {
            return Err(Error::InvalidParameter(
                "cannot normalize the zero vector".into(),
            ));
        }
        Ok(SpinorState {
            amplitudes: amplitudes / C64::new(norm, 0.0),
            space,
        })
    }

    /// The product basis state |spin⟩ ⊗ |bosonic⟩.
    pub fn basis_state(space: FockSpace, spin: Spin, bosonic: usize) -> Self {
        let mut amplitudes = DVector::zeros(space.spinor_dim());
        amplitudes[space.spinor_index(spin, bosonic)] = C64::new(1.0, 0.0);
        SpinorState { amplitudes, space }
    }

    pub fn amplitudes(&self) -> &DVector<C64> {
        &self.amplitudes
    }

    pub fn space(&self) -> FockSpace {
        self.space
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    pub fn amplitude(&self, spin: Spin, bosonic: usize) -> C64 {
        self.amplitudes[self.space.spinor_index(spin, bosonic)]
    }

    /// ⟨self|other⟩.
    pub fn overlap(&self, other: &SpinorState) -> Result<C64> {
        if self.amplitudes.len() != other.amplitudes.len() {
            return Err(Error::DimensionMismatch {
                left: self.amplitudes.len(),
                right: other.amplitudes.len(),
            });
        }
        Ok(self.amplitudes.dotc(&other.amplitudes))
    }

    /// Euclidean distance ‖self − other‖ between amplitude vectors.
    pub fn distance(&self, other: &SpinorState) -> f64 {
        (&self.amplitudes - &other.amplitudes).norm()
    }
}

/// Single-mode annihilation matrix: a[n-1, n] = √n for 1 ≤ n ≤ n_max.
fn ladder_matrix(n_max: usize) -> DMatrix<C64> {
    let d = n_max + 1;
    DMatrix::from_fn(d, d, |row, col| {
        if col == row + 1 {
            C64::new((col as f64).sqrt(), 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

/// Single-mode annihilation/creation pair on an (n_max+1)-dimensional mode.
///
/// The matrices are layout-agnostic building blocks; they come tagged with a
/// left-chiral single-mode space for bookkeeping.
pub fn build_ladder(n_max: usize) -> Result<(OperatorMatrix, OperatorMatrix)> {
    if n_max < 1 {
        // no dynamics possible in a vacuum-only space
        return Err(Error::CutoffTooSmall { min: 1, got: n_max });
    }
    let space = FockSpace::single_left(n_max)?;
    let a = ladder_matrix(n_max);
    let a_dagger = a.adjoint();
    Ok((
        OperatorMatrix::new(space, "a", a)?,
        OperatorMatrix::new(space, "a^†", a_dagger)?,
    ))
}

fn require_two_mode(space: FockSpace, reason: &'static str) -> Result<()> {
    if !space.is_two_mode() {
        return Err(Error::UnsupportedLayout {
            got: space.layout(),
            reason,
        });
    }
    Ok(())
}

/// Cartesian mode operators (a_x, a_y) on a two-mode space.
pub fn cartesian_operators(space: FockSpace) -> Result<(OperatorMatrix, OperatorMatrix)> {
    require_two_mode(space, "Cartesian mode operators need two modes")?;
    let a = ladder_matrix(space.n_max());
    let eye = DMatrix::<C64>::identity(space.n_max() + 1, space.n_max() + 1);
    let a_x = a.kronecker(&eye);
    let a_y = eye.kronecker(&a);
    Ok((
        OperatorMatrix::new(space, "a_x", a_x)?,
        OperatorMatrix::new(space, "a_y", a_y)?,
    ))
}

/// Chiral (circular) mode operators a_l = (a_x + i a_y)/√2 and
/// a_r = (a_x − i a_y)/√2; daggered versions follow by conjugate transpose.
pub fn chiral_operators(space: FockSpace) -> Result<(OperatorMatrix, OperatorMatrix)> {
    require_two_mode(space, "the chiral transform is undefined on one mode")?;
    let (a_x, a_y) = cartesian_operators(space)?;
    let i = C64::new(0.0, 1.0);
    let inv_rt2 = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let a_l = (a_x.entries() + a_y.entries() * i) * inv_rt2;
    let a_r = (a_x.entries() - a_y.entries() * i) * inv_rt2;
    Ok((
        OperatorMatrix::new(space, "a_l", a_l)?,
        OperatorMatrix::new(space, "a_r", a_r)?,
    ))
}

/// Annihilator of the requested chirality on any layout that carries it.
pub fn chiral_annihilator(space: FockSpace, chirality: Chirality) -> Result<OperatorMatrix> {
    match (space.layout(), chirality) {
        (ModeLayout::TwoModeCartesian, _) => {
            let (a_l, a_r) = chiral_operators(space)?;
            Ok(match chirality {
                Chirality::Left => a_l,
                Chirality::Right => a_r,
            })
        }
        (ModeLayout::SingleChiralLeft, Chirality::Left) => {
            let label = "a_l";
            OperatorMatrix::new(space, label, ladder_matrix(space.n_max()))
        }
        (ModeLayout::SingleChiralRight, Chirality::Right) => {
            let label = "a_r";
            OperatorMatrix::new(space, label, ladder_matrix(space.n_max()))
        }
        (layout, _) => Err(Error::UnsupportedLayout {
            got: layout,
            reason: "this layout does not carry the requested chiral mode",
        }),
    }
}

/// Orbital angular momentum L_z = ħ(a_r†a_r − a_l†a_l), diagonal in the
/// chiral number basis. Integer spectrum (in units of ħ) is guaranteed on
/// the complete graded sector of total quanta ≤ n_max.
pub fn angular_momentum_lz(space: FockSpace, hbar: f64) -> Result<OperatorMatrix> {
    require_two_mode(space, "L_z needs both circular modes")?;
    let (a_l, a_r) = chiral_operators(space)?;
    let n_r = a_r.entries().adjoint() * a_r.entries();
    let n_l = a_l.entries().adjoint() * a_l.entries();
    OperatorMatrix::new(space, "L_z", (n_r - n_l).scale(hbar))
}

/// Total occupation operator on any layout.
pub fn number_operator(space: FockSpace) -> OperatorMatrix {
    let entries = DMatrix::from_fn(space.dim(), space.dim(), |row, col| {
        if row == col {
            C64::new(space.total_quanta(row) as f64, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    OperatorMatrix {
        entries,
        space,
        label: "N".into(),
    }
}

/// Occupation operator of one chirality: a_c†a_c on two modes, the plain
/// number operator on the matching single-mode layout.
pub fn chiral_number_operator(space: FockSpace, chirality: Chirality) -> Result<OperatorMatrix> {
    match space.layout() {
        ModeLayout::TwoModeCartesian => {
            let a_c = chiral_annihilator(space, chirality)?;
            let n_c = a_c.entries().adjoint() * a_c.entries();
            let label = match chirality {
                Chirality::Left => "n_l",
                Chirality::Right => "n_r",
            };
            OperatorMatrix::new(space, label, n_c)
        }
        _ => {
            chiral_annihilator(space, chirality)?; // layout/chirality agreement
            Ok(number_operator(space))
        }
    }
}

/// Spin projection S_z in units of ħ, lifted to the spin ⊗ boson space.
pub fn spin_z(space: FockSpace) -> OperatorMatrix {
    let eye = DMatrix::<C64>::identity(space.dim(), space.dim());
    OperatorMatrix {
        entries: spin::spin_boson(&spin::sigma_z().scale(0.5), &eye),
        space,
        label: "S_z/ħ".into(),
    }
}

/// The chiral number state |n⟩ of the requested handedness.
pub fn chiral_number_state(space: FockSpace, chirality: Chirality, n: usize) -> Result<BosonState> {
    if n > space.n_max() {
        return Err(Error::CutoffTooSmall {
            min: n,
            got: space.n_max(),
        });
    }
    match space.layout() {
        ModeLayout::TwoModeCartesian => {
            let raise = chiral_annihilator(space, chirality)?.dagger();
            let mut v = BosonState::vacuum(space).amplitudes().clone();
            for k in 1..=n {
                v = raise.entries() * v;
                v /= C64::new((k as f64).sqrt(), 0.0);
            }
            BosonState::new(space, v)
        }
        _ => {
            chiral_annihilator(space, chirality)?; // layout/chirality agreement
            let mut v = DVector::zeros(space.dim());
            v[n] = C64::new(1.0, 0.0);
            BosonState::new(space, v)
        }
    }
}

/// Upper bound on the Poisson tail Σ_{n>n_keep} e^{-λ} λ^n / n!.
///
/// The leading omitted term is computed by recurrence and the rest bounded
/// geometrically; returns 1 when no geometric bound applies.
pub(crate) fn poisson_tail_bound(lambda: f64, n_keep: usize) -> f64 {
    if lambda <= 0.0 {
        return 0.0;
    }
    let mut w = (-lambda).exp();
    for k in 1..=(n_keep + 1) {
        w *= lambda / k as f64;
    }
    let ratio = lambda / (n_keep + 2) as f64;
    if ratio >= 1.0 {
        return 1.0;
    }
    (w / (1.0 - ratio)).min(1.0)
}

/// Smallest cutoff whose Poisson tail bound drops below `tol`.
pub(crate) fn poisson_cutoff(lambda: f64, tol: f64) -> Result<usize> {
    for n in 0..100_000 {
        if poisson_tail_bound(lambda, n) < tol {
            return Ok(n);
        }
    }
    Err(Error::InvalidParameter(format!(
        "no Poisson cutoff below 100000 terms for weight {lambda}"
    )))
}

/// Tolerance on the coherent-state weight left beyond the cutoff.
pub const COHERENT_TAIL_TOL: f64 = 1e-10;

/// Circular coherent state with amplitude z on the requested chiral mode,
/// renormalized to unit norm after truncation so downstream expectation
/// values need no norm correction.
pub fn coherent_state(z: C64, space: FockSpace, chirality: Chirality) -> Result<BosonState> {
    let lambda = z.norm_sqr();
    let tail = poisson_tail_bound(lambda, space.n_max());
    if tail >= COHERENT_TAIL_TOL {
        return Err(Error::TailTooLarge {
            tail,
            cutoff: space.n_max(),
            bound: COHERENT_TAIL_TOL,
        });
    }
    let n_max = space.n_max();
    // amplitudes ∝ z^n/√(n!) on chiral number states
    match space.layout() {
        ModeLayout::TwoModeCartesian => {
            let raise = chiral_annihilator(space, chirality)?.dagger();
            let mut total: DVector<C64> = DVector::zeros(space.dim());
            let mut number_state = BosonState::vacuum(space).amplitudes().clone();
            let mut coeff = C64::new(1.0, 0.0);
            total += &number_state * coeff;
            for n in 1..=n_max {
                number_state = raise.entries() * number_state;
                number_state /= C64::new((n as f64).sqrt(), 0.0);
                coeff *= z / C64::new((n as f64).sqrt(), 0.0);
                total += &number_state * coeff;
            }
            let norm = total.norm();
            BosonState::new(space, total / C64::new(norm, 0.0))
        }
        _ => {
            chiral_annihilator(space, chirality)?; // layout/chirality agreement
            let mut amplitudes = DVector::zeros(space.dim());
            let mut coeff = C64::new(1.0, 0.0);
            amplitudes[0] = coeff;
            for n in 1..=n_max {
                coeff *= z / C64::new((n as f64).sqrt(), 0.0);
                amplitudes[n] = coeff;
            }
            let norm = amplitudes.norm();
            BosonState::new(space, amplitudes / C64::new(norm, 0.0))
        }
    }
}

/// Single-mode displacement block exp(w a† − w* a).
fn displacement_block(w: C64, n_max: usize) -> Result<DMatrix<C64>> {
    let a = ladder_matrix(n_max);
    let generator = a.adjoint() * w - &a * w.conj();
    linalg::exp_anti_hermitian(&generator)
}

/// The two-pulse displacement sequence D_x(z/√2)·D_y(−iz/√2) that prepares
/// the left-chiral coherent state of amplitude z from the two-mode vacuum.
///
/// The two Cartesian displacements carry a relative phase of −i, so the
/// right circular mode stays in vacuum while the left one receives the full
/// amplitude; the √2 split per mode is what makes the prepared amplitude
/// equal z (the in-phase quadratures add coherently). Each pulse is the
/// exponential of its truncated generator, so the returned matrix is
/// unitary to machine precision; applied to the vacuum it reproduces
/// [`coherent_state`] up to the Poisson weight the cutoff cannot hold.
pub fn displacement_sequence(z: C64, space: FockSpace) -> Result<OperatorMatrix> {
    require_two_mode(
        space,
        "the displacement sequence drives both Cartesian modes",
    )?;
    let lambda = z.norm_sqr();
    let tail = poisson_tail_bound(lambda, space.n_max());
    if tail >= COHERENT_TAIL_TOL {
        return Err(Error::TailTooLarge {
            tail,
            cutoff: space.n_max(),
            bound: COHERENT_TAIL_TOL,
        });
    }
    let d = space.n_max() + 1;
    let eye = DMatrix::<C64>::identity(d, d);
    let i = C64::new(0.0, 1.0);
    let w = z * C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let d_x = displacement_block(w, space.n_max())?;
    let d_y = displacement_block(-i * w, space.n_max())?;
    let product = d_x.kronecker(&eye) * eye.kronecker(&d_y);
    OperatorMatrix::new(space, "D_x(z/√2)·D_y(-iz/√2)", product)
}

/// Unitary change of basis from chiral to Cartesian coordinates on a
/// two-mode space.
///
/// Column `n_l·(n_max+1) + n_r` holds the chiral number state |n_l, n_r⟩
/// expanded over the Cartesian |n_x, n_y⟩ basis. Columns with total quanta
/// ≤ n_max are exact (the map is an isometry there); columns beyond that
/// grade are truncation remnants and must not be relied on.
pub fn chiral_basis_change(space: FockSpace) -> Result<OperatorMatrix> {
    require_two_mode(space, "the chiral basis change needs two modes")?;
    let n_max = space.n_max();
    let per = n_max + 1;
    let (a_l, a_r) = chiral_operators(space)?;
    let raise_l = a_l.entries().adjoint();
    let raise_r = a_r.entries().adjoint();
    let mut u = DMatrix::zeros(space.dim(), space.dim());

    // first the pure-right column family, then raise n_l along each
    let mut right_chain = BosonState::vacuum(space).amplitudes().clone();
    for n_r in 0..per {
        if n_r > 0 {
            right_chain = &raise_r * &right_chain;
            right_chain /= C64::new((n_r as f64).sqrt(), 0.0);
        }
        let mut column = right_chain.clone();
        u.set_column(n_r, &column);
        for n_l in 1..per {
            column = &raise_l * &column;
            column /= C64::new((n_l as f64).sqrt(), 0.0);
            u.set_column(n_l * per + n_r, &column);
        }
    }
    OperatorMatrix::new(space, "U_chiral", u)
}
