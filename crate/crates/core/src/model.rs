//! Two Unruh-DeWitt detectors sharing `(|01⟩ + |10⟩)/√2`, one of them
//! uniformly accelerated.
//!
//! After first-order interaction with the field and tracing the field out,
//! the detector pair is
//!
//! ```text
//!        |00⟩ |01⟩ |10⟩ |11⟩
//! ρ =  [  γ    0    0    0  ]
//!      [  0    α    α    0  ]
//!      [  0    α    α    0  ]
//!      [  0    0    0    β  ]
//! ```
//!
//! with `D = 2(1−q) + ν²(1+q)`, `α = (1−q)/D`, `β = ν²q/D`, `γ = ν²/D`,
//! `q = exp(−2πΩ/a)` and `ν² = ε²ΩΔ exp(−Ω²κ²)/(2π)`.

use std::f64::consts::PI;
use std::fmt;

use crate::coherence::product_surrogate;
use crate::coherence::{coherence_triple, sqrt_radicand, CoherenceTriple};
use crate::entropy::shannon_entropy;
use crate::error::{Error, Result};
use crate::matrix::{
    equal_mixture, maximally_mixed, ComplexMatrix, DensityMatrix, Spectrum, DEFAULT_TOLERANCE,
};

pub const TWO_QUBITS: [usize; 2] = [2, 2];

/// ν² above this is flagged as outside the perturbative regime.
pub const STRONG_COUPLING_THRESHOLD: f64 = 0.1;
/// Ω·Δ below this is flagged as too short an interaction window.
pub const SHORT_INTERACTION_THRESHOLD: f64 = 10.0;

const POPULATION_SUM_TOLERANCE: f64 = 1e-10;

/// Conditions under which the model's formulas still evaluate but its
/// derivation no longer holds.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ValidityWarning {
    StrongCoupling { nu_squared: f64 },
    ShortInteraction { omega_delta: f64 },
}

impl fmt::Display for ValidityWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::StrongCoupling { nu_squared } => write!(
                f,
                "nu^2 = {nu_squared} exceeds {STRONG_COUPLING_THRESHOLD}; \
                 first-order perturbation theory needs nu^2 << 1"
            ),
            Self::ShortInteraction { omega_delta } => write!(
                f,
                "omega*delta = {omega_delta} is below {SHORT_INTERACTION_THRESHOLD}; \
                 the effective coupling assumes 1/omega << delta"
            ),
        }
    }
}

/// Dimensionless model parameters: parametrized acceleration `q ∈ [0, 1]`
/// and effective coupling `ν ≥ 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModelParams {
    q: f64,
    nu: f64,
}

impl ModelParams {
    pub fn new(q: f64, nu: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&q) {
            return Err(Error::Domain(format!("q = {q} must lie in [0, 1]")));
        }
        if !(nu >= 0.0 && nu.is_finite()) {
            return Err(Error::Domain(format!(
                "nu = {nu} must be finite and non-negative"
            )));
        }
        Ok(Self { q, nu })
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn nu_squared(&self) -> f64 {
        self.nu * self.nu
    }

    pub fn warnings(&self) -> Vec<ValidityWarning> {
        let nu_squared = self.nu_squared();
        if nu_squared > STRONG_COUPLING_THRESHOLD {
            vec![ValidityWarning::StrongCoupling { nu_squared }]
        } else {
            Vec::new()
        }
    }
}

/// Physical inputs: energy gap Ω, proper acceleration a, coupling ε,
/// interaction time Δ and Gaussian width κ (natural units).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhysicalParams {
    pub omega: f64,
    pub accel: f64,
    pub eps: f64,
    pub delta: f64,
    pub kappa: f64,
}

impl PhysicalParams {
    pub fn validate(&self) -> Result<()> {
        let check = |ok: bool, what: &str| {
            if ok {
                Ok(())
            } else {
                Err(Error::Domain(what.to_string()))
            }
        };
        check(
            self.omega > 0.0 && self.omega.is_finite(),
            "omega must be positive and finite",
        )?;
        check(self.accel >= 0.0, "accel must be non-negative")?;
        check(
            self.eps >= 0.0 && self.eps.is_finite(),
            "eps must be non-negative and finite",
        )?;
        check(
            self.delta > 0.0 && self.delta.is_finite(),
            "delta must be positive and finite",
        )?;
        check(self.kappa >= 0.0, "kappa must be non-negative")
    }
}

/// Effective coupling estimate together with any validity warnings.
#[derive(Clone, Debug, PartialEq)]
pub struct CouplingEstimate {
    pub nu_squared: f64,
    pub warnings: Vec<ValidityWarning>,
}

/// `q = exp(−2πΩ/a)`, with `q = 0` at `a = 0` and `q = 1` at `a = ∞`.
pub fn q_from_acceleration(omega: f64, accel: f64) -> Result<f64> {
    if !(omega > 0.0 && omega.is_finite()) {
        return Err(Error::Domain(format!(
            "omega = {omega} must be positive and finite"
        )));
    }
    if accel.is_nan() || accel < 0.0 {
        return Err(Error::Domain(format!(
            "accel = {accel} must be non-negative"
        )));
    }
    if accel == 0.0 {
        return Ok(0.0);
    }
    Ok((-2.0 * PI * omega / accel).exp())
}

/// `ν² = ε²ΩΔ exp(−Ω²κ²)/(2π)`.
pub fn nu_squared_from_physical(p: &PhysicalParams) -> Result<CouplingEstimate> {
    p.validate()?;
    let nu_squared =
        p.eps * p.eps * p.omega * p.delta * (-(p.omega * p.kappa).powi(2)).exp() / (2.0 * PI);
    let mut warnings = Vec::new();
    if nu_squared > STRONG_COUPLING_THRESHOLD {
        warnings.push(ValidityWarning::StrongCoupling { nu_squared });
    }
    let omega_delta = p.omega * p.delta;
    if omega_delta < SHORT_INTERACTION_THRESHOLD {
        warnings.push(ValidityWarning::ShortInteraction { omega_delta });
    }
    Ok(CouplingEstimate {
        nu_squared,
        warnings,
    })
}

/// Populations of the detector state: `α` on the `{|01⟩, |10⟩}` block, `β`
/// at `|11⟩`, `γ` at `|00⟩`; `2α + β + γ = 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Populations {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl Populations {
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        if [alpha, beta, gamma]
            .iter()
            .any(|&x| !(0.0..=1.0).contains(&x))
        {
            return Err(Error::Domain(format!(
                "populations ({alpha}, {beta}, {gamma}) must lie in [0, 1]"
            )));
        }
        let sum = 2.0 * alpha + beta + gamma;
        if (sum - 1.0).abs() > POPULATION_SUM_TOLERANCE {
            return Err(Error::Domain(format!(
                "2*alpha + beta + gamma = {sum}, expected 1"
            )));
        }
        Ok(Self { alpha, beta, gamma })
    }

    /// Diagonal of each single-detector reduction: `(γ+α, α+β)`.
    pub fn reduced_diagonal(&self) -> [f64; 2] {
        [self.gamma + self.alpha, self.alpha + self.beta]
    }
}

pub fn abg_from_params(p: &ModelParams) -> Result<Populations> {
    let (q, nu2) = (p.q, p.nu_squared());
    let denom = 2.0 * (1.0 - q) + nu2 * (1.0 + q);
    if denom <= 0.0 {
        return Err(Error::DegenerateLimit);
    }
    Ok(Populations {
        alpha: (1.0 - q) / denom,
        beta: nu2 * q / denom,
        gamma: nu2 / denom,
    })
}

/// A parameter point together with its detector state.
#[derive(Clone, Debug, PartialEq)]
pub struct ModelPoint {
    pub params: ModelParams,
    pub populations: Populations,
    pub state: DensityMatrix,
}

pub fn state_from_populations(pop: &Populations) -> Result<DensityMatrix> {
    let Populations {
        alpha: a,
        beta: b,
        gamma: g,
    } = *pop;
    DensityMatrix::with_tolerance(
        ComplexMatrix::from_real_rows(&[
            &[g, 0.0, 0.0, 0.0],
            &[0.0, a, a, 0.0],
            &[0.0, a, a, 0.0],
            &[0.0, 0.0, 0.0, b],
        ])?,
        DEFAULT_TOLERANCE,
    )
}

pub fn detector_state(p: &ModelParams) -> Result<ModelPoint> {
    let populations = abg_from_params(p)?;
    let state = state_from_populations(&populations)?;
    Ok(ModelPoint {
        params: *p,
        populations,
        state,
    })
}

/// Spectra of the five states entering the three coherence measures.
#[derive(Clone, Debug, PartialEq)]
pub struct ClosedFormSpectra {
    /// `(ρ + I/4)/2`
    pub midpoint_total: Spectrum,
    /// `ρ`
    pub state: Spectrum,
    /// `(ρ + π_ρ)/2`
    pub midpoint_collective: Spectrum,
    /// `π_ρ`
    pub product: Spectrum,
    /// `(π_ρ + I/4)/2`
    pub midpoint_localized: Spectrum,
}

impl ClosedFormSpectra {
    pub const LABELS: [&'static str; 5] = ["(rho+I/4)/2", "rho", "(rho+pi)/2", "pi", "(pi+I/4)/2"];

    pub fn as_array(&self) -> [&Spectrum; 5] {
        [
            &self.midpoint_total,
            &self.state,
            &self.midpoint_collective,
            &self.product,
            &self.midpoint_localized,
        ]
    }

    /// Largest entrywise gap over all five spectra.
    pub fn max_gap(&self, other: &ClosedFormSpectra) -> Result<f64> {
        self.as_array()
            .iter()
            .zip(other.as_array())
            .try_fold(0.0_f64, |acc, (a, b)| Ok(acc.max(a.max_gap(b)?)))
    }
}

/// Eigenvalues of the five model matrices in closed form.
pub fn closed_form_spectra(alpha: f64, beta: f64, gamma: f64) -> Result<ClosedFormSpectra> {
    let pop = Populations::new(alpha, beta, gamma)?;
    let (a, b, g) = (pop.alpha, pop.beta, pop.gamma);
    // both reductions are diag(a+g, a+b)
    let up = a + g;
    let down = a + b;
    Ok(ClosedFormSpectra {
        midpoint_total: Spectrum::new(vec![
            1.0 / 8.0,
            (1.0 + 8.0 * a) / 8.0,
            (1.0 + 4.0 * b) / 8.0,
            (1.0 + 4.0 * g) / 8.0,
        ])?,
        state: Spectrum::new(vec![0.0, 2.0 * a, b, g])?,
        midpoint_collective: Spectrum::new(vec![
            (b + down * down) / 2.0,
            down * up / 2.0,
            (2.0 * a + down * up) / 2.0,
            (g + up * up) / 2.0,
        ])?,
        product: Spectrum::new(vec![down * down, down * up, down * up, up * up])?,
        midpoint_localized: Spectrum::new(vec![
            (1.0 + 4.0 * down * down) / 8.0,
            (1.0 + 4.0 * down * up) / 8.0,
            (1.0 + 4.0 * down * up) / 8.0,
            (1.0 + 4.0 * up * up) / 8.0,
        ])?,
    })
}

/// The same five spectra, obtained by diagonalizing the explicit matrices.
pub fn numeric_spectra(point: &ModelPoint) -> Result<ClosedFormSpectra> {
    let rho = &point.state;
    let mixed = maximally_mixed(4)?;
    let pi = product_surrogate(rho, &TWO_QUBITS)?;
    Ok(ClosedFormSpectra {
        midpoint_total: equal_mixture(rho, &mixed)?.eigenvalues()?,
        state: rho.eigenvalues()?,
        midpoint_collective: equal_mixture(rho, &pi)?.eigenvalues()?,
        product: pi.eigenvalues()?,
        midpoint_localized: equal_mixture(&pi, &mixed)?.eigenvalues()?,
    })
}

/// Coherence measures from the closed-form spectra alone.
pub fn coherence_closed_form(p: &ModelParams) -> Result<CoherenceTriple> {
    let pop = abg_from_params(p)?;
    let s = closed_form_spectra(pop.alpha, pop.beta, pop.gamma)?;
    let h = |sp: &Spectrum| shannon_entropy(sp.values());
    let (s_eta, s_lambda, s_zeta, s_theta, s_xi) = (
        h(&s.midpoint_total)?,
        h(&s.state)?,
        h(&s.midpoint_collective)?,
        h(&s.product)?,
        h(&s.midpoint_localized)?,
    );
    // log₂ 4 = 2, halved
    Ok(CoherenceTriple::new(
        sqrt_radicand(s_eta - 0.5 * s_lambda - 1.0)?,
        sqrt_radicand(s_zeta - 0.5 * s_lambda - 0.5 * s_theta)?,
        sqrt_radicand(s_xi - 0.5 * s_theta - 1.0)?,
    ))
}

/// Coherence measures through the generic density-matrix path.
pub fn coherence_numeric(p: &ModelParams) -> Result<CoherenceTriple> {
    coherence_triple(&detector_state(p)?.state, &TWO_QUBITS)
}
