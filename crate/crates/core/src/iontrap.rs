//! Translation between oscillator physics and trapped-ion laser settings.
//!
//! The correspondence reads c = √2·η·Ω̃·Δ̃, mc² = ħδ and mωc = √2·ħ·η·Ω̃/Δ̃,
//! which makes the dimensionless coupling ξ = 2(ηΩ̃/δ)² and pins the
//! single-quantum oscillation frequency to ω₁ = δ√(1+4ξ). All
//! frequency-like inputs (Ω̃, δ, ν) are angular frequencies in s⁻¹; the
//! `_hz` key names of the parameter-file format are kept as-is. Derived
//! oscillator parameters come out in trap-natural units with ħ = 1.
//!
//! The internal-state Pauli operators of the engineered Hamiltonian follow
//! the standard definitions σ_x = |g⟩⟨e| + |e⟩⟨g|,
//! σ_y = −i(|e⟩⟨g| − |g⟩⟨e|), σ_z = |e⟩⟨e| − |g⟩⟨g|.

use std::fmt;

use crate::dirac2d::PhysParams;
use crate::error::{Error, Result};

/// CODATA reduced Planck constant, J·s; used only for SI-unit consistency
/// checks between η, the wave number and the trap frequency.
pub const HBAR_SI: f64 = 1.054_571_817e-34;

/// Upper end of the quoted hardware range for Ω̃ and δ.
pub const QUOTED_RANGE_MAX_HZ: f64 = 1e6;

/// Laser and trap quantities for one ion driving both radial modes
/// isotropically (η := η_i, Ω̃ := Ω̃_i for i = x, y).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IonTrapParams {
    eta: f64,
    omega_rabi: f64,
    delta: f64,
    delta_width: f64,
    nu: Option<(f64, f64)>,
    ion_mass: Option<f64>,
    wave_number: Option<f64>,
}

impl IonTrapParams {
    /// Lamb-Dicke parameter η, sideband coupling Ω̃ and JC detuning δ; the
    /// motional width defaults to 1 (normalized units), which leaves every
    /// simulated observable untouched — only ξ and δ reach the dynamics.
    pub fn new(eta: f64, omega_rabi: f64, delta: f64) -> Result<Self> {
        let params = IonTrapParams {
            eta,
            omega_rabi,
            delta,
            delta_width: 1.0,
            nu: None,
            ion_mass: None,
            wave_number: None,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn with_motional_width(mut self, delta_width: f64) -> Result<Self> {
        self.delta_width = delta_width;
        self.validate()?;
        Ok(self)
    }

    pub fn with_trap_frequencies(mut self, nu_x: f64, nu_y: f64) -> Result<Self> {
        self.nu = Some((nu_x, nu_y));
        self.validate()?;
        Ok(self)
    }

    pub fn with_ion(mut self, mass_kg: f64, wave_number_per_m: f64) -> Result<Self> {
        self.ion_mass = Some(mass_kg);
        self.wave_number = Some(wave_number_per_m);
        self.validate()?;
        Ok(self)
    }

    fn validate(&self) -> Result<()> {
        if !self.eta.is_finite() || self.eta <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "eta must be positive, got {}",
                self.eta
            )));
        }
        if !self.omega_rabi.is_finite() || self.omega_rabi < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "omega_rabi must be non-negative, got {}",
                self.omega_rabi
            )));
        }
        if !self.delta.is_finite() || self.delta < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "delta must be non-negative, got {}",
                self.delta
            )));
        }
        if !self.delta_width.is_finite() || self.delta_width <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "delta_width must be positive, got {}",
                self.delta_width
            )));
        }
        if let Some((nu_x, nu_y)) = self.nu {
            if !nu_x.is_finite() || nu_x <= 0.0 || !nu_y.is_finite() || nu_y <= 0.0 {
                return Err(Error::InvalidParameter(
                    "trap frequencies must be positive".into(),
                ));
            }
            // isotropy contract: one η and one Ω̃ serve both axes
            if (nu_x - nu_y).abs() > 1e-9 * nu_x.max(nu_y) {
                return Err(Error::InvalidParameter(format!(
                    "anisotropic trap (nu_x = {nu_x}, nu_y = {nu_y}) breaks the single-η mapping"
                )));
            }
        }
        match (self.ion_mass, self.wave_number) {
            (None, None) => {}
            (Some(mass), Some(k)) => {
                if !mass.is_finite() || mass <= 0.0 || !k.is_finite() || k <= 0.0 {
                    return Err(Error::InvalidParameter(
                        "ion mass and wave number must be positive".into(),
                    ));
                }
                if let Some((nu_x, nu_y)) = self.nu {
                    for nu in [nu_x, nu_y] {
                        let eta_expected = k * (HBAR_SI / (2.0 * mass * nu)).sqrt();
                        if (self.eta - eta_expected).abs() > 1e-9 * eta_expected {
                            return Err(Error::InvalidParameter(format!(
                                "eta = {} disagrees with k√(ħ/2Mν) = {} beyond 1e-9 relative",
                                self.eta, eta_expected
                            )));
                        }
                    }
                }
            }
            _ => {
                return Err(Error::InvalidParameter(
                    "ion mass and wave number must be given together".into(),
                ));
            }
        }
        Ok(())
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn omega_rabi(&self) -> f64 {
        self.omega_rabi
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn delta_width(&self) -> f64 {
        self.delta_width
    }

    pub fn nu(&self) -> Option<(f64, f64)> {
        self.nu
    }

    pub fn ion_mass(&self) -> Option<f64> {
        self.ion_mass
    }

    pub fn wave_number(&self) -> Option<f64> {
        self.wave_number
    }

    /// The coupling the trap settings realize: ξ = 2(ηΩ̃/δ)².
    pub fn xi(&self) -> Result<f64> {
        if self.delta == 0.0 {
            return Err(Error::InvalidParameter(
                "delta = 0 leaves xi undefined".into(),
            ));
        }
        let r = self.eta * self.omega_rabi / self.delta;
        Ok(2.0 * r * r)
    }

    /// Single-quantum oscillation frequency ω₁ = δ√(1+4ξ).
    pub fn zitter_frequency(&self) -> Result<f64> {
        Ok(self.delta * (1.0 + 4.0 * self.xi()?).sqrt())
    }
}

/// Oscillator parameters realized by a set of trap settings (ħ = 1 units).
///
/// At zero sideband coupling only the product mc² = ħδ is physical; the
/// split into m and c is then fixed by normalizing c = 1. For Ω̃ > 0 the
/// derived oscillator width √(ħ/mω) reproduces the motional width Δ̃
/// exactly — the two length scales coincide under this mapping.
pub fn dirac_from_trap(trap: &IonTrapParams) -> Result<PhysParams> {
    if trap.delta == 0.0 {
        return Err(Error::InvalidParameter(
            "delta = 0 maps to an infinite-mass oscillator; the correspondence needs mc² = ħδ > 0"
                .into(),
        ));
    }
    let hbar = 1.0;
    if trap.omega_rabi == 0.0 {
        // free limit: ξ = 0, ω = 0, c normalized to 1
        let c = 1.0;
        let m = hbar * trap.delta / (c * c);
        return PhysParams::new(m, c, 0.0, hbar);
    }
    let c = 2.0f64.sqrt() * trap.eta * trap.omega_rabi * trap.delta_width;
    let m = hbar * trap.delta / (c * c);
    let omega = 2.0 * trap.eta * trap.eta * trap.omega_rabi * trap.omega_rabi / trap.delta;
    PhysParams::new(m, c, omega, hbar)
}

/// A quantity that exceeds the quoted hardware range; advisory, not fatal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeasibilityWarning {
    pub quantity: &'static str,
    pub value: f64,
    pub quoted_max: f64,
}

impl fmt::Display for FeasibilityWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} = {:.6e} Hz exceeds the quoted range (0..{:.0e} Hz)",
            self.quantity, self.value, self.quoted_max
        )
    }
}

/// Trap settings plus any feasibility warnings they carry.
#[derive(Debug, Clone, PartialEq)]
pub struct TrapDesign {
    pub params: IonTrapParams,
    pub warnings: Vec<FeasibilityWarning>,
}

/// Solve the correspondence for (δ, Ω̃) from a target coupling and
/// single-quantum frequency at a hardware-set η:
/// δ = ω₁/√(1+4ξ), Ω̃ = δ√(ξ/2)/η.
///
/// The inverse is under-determined by one knob, so η stays caller-supplied.
/// Settings outside the quoted hardware range come back as warnings rather
/// than failures.
pub fn trap_from_dirac(target_xi: f64, target_omega1: f64, eta: f64) -> Result<TrapDesign> {
    if !target_xi.is_finite() || target_xi <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "target xi must be positive, got {target_xi}"
        )));
    }
    if !target_omega1.is_finite() || target_omega1 <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "target omega1 must be positive, got {target_omega1}"
        )));
    }
    let delta = target_omega1 / (1.0 + 4.0 * target_xi).sqrt();
    let omega_rabi = delta * (target_xi / 2.0).sqrt() / eta;
    let params = IonTrapParams::new(eta, omega_rabi, delta)?;
    let mut warnings = Vec::new();
    for (quantity, value) in [("delta", delta), ("omega_rabi", omega_rabi)] {
        if value > QUOTED_RANGE_MAX_HZ {
            warnings.push(FeasibilityWarning {
                quantity,
                value,
                quoted_max: QUOTED_RANGE_MAX_HZ,
            });
        }
    }
    Ok(TrapDesign { params, warnings })
}

/// Which radial mode a pulse pair drives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PulseAxis {
    X,
    Y,
}

impl fmt::Display for PulseAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PulseAxis::X => write!(f, "x"),
            PulseAxis::Y => write!(f, "y"),
        }
    }
}

/// Symbolic tag for one term of the engineered Hamiltonian
/// c[σ_x p_x + σ_y p_y] + mωc[σ_x y − σ_y x] + mc²σ_z.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum EffectiveTerm {
    SigmaXPx,
    SigmaYPy,
    SigmaYX,
    SigmaXY,
    SigmaZ,
}

impl fmt::Display for EffectiveTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EffectiveTerm::SigmaXPx => write!(f, "c σx px"),
            EffectiveTerm::SigmaYPy => write!(f, "c σy py"),
            EffectiveTerm::SigmaYX => write!(f, "mωc σy x"),
            EffectiveTerm::SigmaXY => write!(f, "mωc σx y"),
            EffectiveTerm::SigmaZ => write!(f, "mc² σz"),
        }
    }
}

/// The five term tags of the engineered Hamiltonian, for sum checks.
pub fn engineered_terms() -> [EffectiveTerm; 5] {
    [
        EffectiveTerm::SigmaXPx,
        EffectiveTerm::SigmaYPy,
        EffectiveTerm::SigmaYX,
        EffectiveTerm::SigmaXY,
        EffectiveTerm::SigmaZ,
    ]
}

/// One simultaneous red/blue sideband pulse pair and the effective terms it
/// contributes; phases are the red (φ) and blue (ϕ) sideband phases.
#[derive(Debug, Clone, PartialEq)]
pub struct PulseSetting {
    pub axis: PulseAxis,
    pub detuning: f64,
    pub phase_red: f64,
    pub phase_blue: f64,
    pub produced_terms: Vec<EffectiveTerm>,
}

/// The four pulse pairs that assemble the full oscillator Hamiltonian.
/// Exactly the first row is detuned (it contributes the mc²σ_z term); the
/// order is fixed and deterministic.
pub fn pulse_table(trap: &IonTrapParams) -> [PulseSetting; 4] {
    use std::f64::consts::{FRAC_PI_2, PI};
    [
        PulseSetting {
            axis: PulseAxis::X,
            detuning: trap.delta(),
            phase_red: 3.0 * FRAC_PI_2,
            phase_blue: FRAC_PI_2,
            produced_terms: vec![EffectiveTerm::SigmaXPx, EffectiveTerm::SigmaZ],
        },
        PulseSetting {
            axis: PulseAxis::Y,
            detuning: 0.0,
            phase_red: 0.0,
            phase_blue: PI,
            produced_terms: vec![EffectiveTerm::SigmaYPy],
        },
        PulseSetting {
            axis: PulseAxis::X,
            detuning: 0.0,
            phase_red: FRAC_PI_2,
            phase_blue: FRAC_PI_2,
            produced_terms: vec![EffectiveTerm::SigmaYX],
        },
        PulseSetting {
            axis: PulseAxis::Y,
            detuning: 0.0,
            phase_red: 0.0,
            phase_blue: 0.0,
            produced_terms: vec![EffectiveTerm::SigmaXY],
        },
    ]
}

/// Electron-shelving readout: invert ⟨S_z⟩ = (ħ/2)(2P_e − 1) for the
/// excited-state population. Input and output are dimensionless; ⟨S_z⟩ is
/// given in units of ħ and must lie in [−1/2, +1/2].
pub fn shelving_probability(sz_in_hbar: f64) -> Result<f64> {
    if !sz_in_hbar.is_finite() || sz_in_hbar.abs() > 0.5 + 1e-12 {
        return Err(Error::InvalidParameter(format!(
            "⟨S_z⟩/ħ = {sz_in_hbar} outside [-1/2, +1/2]"
        )));
    }
    Ok((sz_in_hbar + 0.5).clamp(0.0, 1.0))
}

const PARAM_KEYS: [&str; 8] = [
    "eta",
    "omega_rabi_hz",
    "delta_hz",
    "delta_width",
    "nu_x_hz",
    "nu_y_hz",
    "ion_mass_kg",
    "wave_number_per_m",
];

/// Parse the flat `key = value` trap-parameter format (SI units, one pair
/// per line, `#` comments allowed). Required keys: eta, omega_rabi_hz,
/// delta_hz.
pub fn parse_param_file(text: &str) -> Result<IonTrapParams> {
    let mut values: std::collections::BTreeMap<&str, f64> = Default::default();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::InvalidParameter(format!("line {}: expected `key = value`", lineno + 1))
        })?;
        let key = key.trim();
        let Some(&canonical) = PARAM_KEYS.iter().find(|&&k| k == key) else {
            return Err(Error::InvalidParameter(format!(
                "line {}: unknown key `{key}`",
                lineno + 1
            )));
        };
        let value: f64 = value.trim().parse().map_err(|_| {
            Error::InvalidParameter(format!("line {}: unparsable value for `{key}`", lineno + 1))
        })?;
        if values.insert(canonical, value).is_some() {
            return Err(Error::InvalidParameter(format!(
                "line {}: duplicate key `{key}`",
                lineno + 1
            )));
        }
    }
    let require = |key: &str| {
        values
            .get(key)
            .copied()
            .ok_or_else(|| Error::InvalidParameter(format!("missing required key `{key}`")))
    };
    let mut params = IonTrapParams::new(
        require("eta")?,
        require("omega_rabi_hz")?,
        require("delta_hz")?,
    )?;
    if let Some(&width) = values.get("delta_width") {
        params = params.with_motional_width(width)?;
    }
    match (values.get("nu_x_hz"), values.get("nu_y_hz")) {
        (Some(&x), Some(&y)) => params = params.with_trap_frequencies(x, y)?,
        (None, None) => {}
        _ => {
            return Err(Error::InvalidParameter(
                "nu_x_hz and nu_y_hz must be given together".into(),
            ))
        }
    }
    match (values.get("ion_mass_kg"), values.get("wave_number_per_m")) {
        (Some(&mass), Some(&k)) => params = params.with_ion(mass, k)?,
        (None, None) => {}
        _ => {
            return Err(Error::InvalidParameter(
                "ion_mass_kg and wave_number_per_m must be given together".into(),
            ))
        }
    }
    Ok(params)
}

/// Emit the flat `key = value` format; optional fields are written only
/// when present.
pub fn format_param_file(trap: &IonTrapParams) -> String {
    let mut out = String::new();
    let mut push = |key: &str, value: f64| {
        out.push_str(&format!("{key} = {value}\n"));
    };
    push("eta", trap.eta());
    push("omega_rabi_hz", trap.omega_rabi());
    push("delta_hz", trap.delta());
    push("delta_width", trap.delta_width());
    if let Some((nu_x, nu_y)) = trap.nu() {
        push("nu_x_hz", nu_x);
        push("nu_y_hz", nu_y);
    }
    if let (Some(mass), Some(k)) = (trap.ion_mass(), trap.wave_number()) {
        push("ion_mass_kg", mass);
        push("wave_number_per_m", k);
    }
    out
}
