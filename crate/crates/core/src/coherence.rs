//! Basis-independent coherence measures.
//!
//! All three measures share one kernel, the square root of the quantum
//! Jensen–Shannon divergence `√(S((a+b)/2) − (S(a)+S(b))/2)` in bits:
//!
//! * total coherence compares ρ with the maximally mixed state `I/d`,
//! * collective coherence compares ρ with its product surrogate `π_ρ`,
//! * localized coherence compares `π_ρ` with `I/d`.

use crate::entropy::von_neumann_entropy;
use crate::error::{Error, Result};
use crate::matrix::{equal_mixture, maximally_mixed, DensityMatrix};

/// Radicands at or above `-RADICAND_TOLERANCE` clamp to zero.
pub const RADICAND_TOLERANCE: f64 = 1e-9;
/// States closer than this entrywise are the same state; their divergence
/// is exactly zero rather than the square root of entropy round-off.
pub const IDENTICAL_STATE_TOLERANCE: f64 = 1e-14;

/// The three coherence measures at one state, plus `C_C + C_L − C_T`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoherenceTriple {
    pub c_total: f64,
    pub c_collective: f64,
    pub c_localized: f64,
    pub triangle_slack: f64,
}

impl CoherenceTriple {
    pub fn new(c_total: f64, c_collective: f64, c_localized: f64) -> Self {
        Self {
            c_total,
            c_collective,
            c_localized,
            triangle_slack: c_collective + c_localized - c_total,
        }
    }

    /// Largest componentwise gap between two triples (slack excluded, it
    /// follows from the other three).
    pub fn max_gap(&self, other: &CoherenceTriple) -> f64 {
        [
            self.c_total - other.c_total,
            self.c_collective - other.c_collective,
            self.c_localized - other.c_localized,
        ]
        .into_iter()
        .map(f64::abs)
        .fold(0.0, f64::max)
    }
}

/// Square root of a Jensen–Shannon-type radicand, clamping round-off.
pub fn sqrt_radicand(radicand: f64) -> Result<f64> {
    if radicand.is_nan() || radicand < -RADICAND_TOLERANCE {
        return Err(Error::NumericalConsistency { radicand });
    }
    Ok(radicand.max(0.0).sqrt())
}

/// `√(S((a+b)/2) − (S(a)+S(b))/2)`.
pub fn divergence_sqrt(a: &DensityMatrix, b: &DensityMatrix) -> Result<f64> {
    if a.matrix().max_abs_diff(b.matrix())? <= IDENTICAL_STATE_TOLERANCE {
        return Ok(0.0);
    }
    let mid = equal_mixture(a, b)?;
    let radicand =
        von_neumann_entropy(&mid)? - 0.5 * (von_neumann_entropy(a)? + von_neumann_entropy(b)?);
    sqrt_radicand(radicand)
}

/// `π_ρ`: tensor product of every single-subsystem reduction of ρ.
pub fn product_surrogate(rho: &DensityMatrix, dims: &[usize]) -> Result<DensityMatrix> {
    let mut factors = (0..dims.len()).map(|k| rho.partial_trace(k, dims));
    let first = factors
        .next()
        .ok_or_else(|| Error::Dimension("at least one subsystem is required".into()))??;
    factors.try_fold(first, |acc, f| Ok(acc.tensor(&f?)))
}

pub fn coherence_total(rho: &DensityMatrix) -> Result<f64> {
    divergence_sqrt(rho, &maximally_mixed(rho.dim())?)
}

pub fn coherence_collective(rho: &DensityMatrix, dims: &[usize]) -> Result<f64> {
    divergence_sqrt(rho, &product_surrogate(rho, dims)?)
}

pub fn coherence_localized(rho: &DensityMatrix, dims: &[usize]) -> Result<f64> {
    divergence_sqrt(&product_surrogate(rho, dims)?, &maximally_mixed(rho.dim())?)
}

/// All three measures, sharing one `π_ρ` and one `I/d`.
pub fn coherence_triple(rho: &DensityMatrix, dims: &[usize]) -> Result<CoherenceTriple> {
    let surrogate = product_surrogate(rho, dims)?;
    let mixed = maximally_mixed(rho.dim())?;
    Ok(CoherenceTriple::new(
        divergence_sqrt(rho, &mixed)?,
        divergence_sqrt(rho, &surrogate)?,
        divergence_sqrt(&surrogate, &mixed)?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::ComplexMatrix;

    const TWO_QUBITS: [usize; 2] = [2, 2];
    // √(1/8 − (5/8) log₂(5/8)), evaluated independently with mpmath/numpy
    const SINGLET_VALUE: f64 = 0.740_806_952_380_577;
    // √(S(diag(3/4,1/4,1/4,3/4)/2) − 1/2 − 1), S = 1.811278124459133
    const INFINITE_ACCEL_VALUE: f64 = 0.557_923_045_284_144;

    fn diag(v: &[f64]) -> DensityMatrix {
        DensityMatrix::new(ComplexMatrix::diagonal(v).unwrap()).unwrap()
    }

    fn model_like(alpha: f64, beta: f64, gamma: f64) -> DensityMatrix {
        DensityMatrix::new(
            ComplexMatrix::from_real_rows(&[
                &[gamma, 0.0, 0.0, 0.0],
                &[0.0, alpha, alpha, 0.0],
                &[0.0, alpha, alpha, 0.0],
                &[0.0, 0.0, 0.0, beta],
            ])
            .unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn identical_states_have_zero_divergence() {
        let rho = model_like(0.3, 0.15, 0.25);
        assert_eq!(divergence_sqrt(&rho, &rho).unwrap(), 0.0);
    }

    #[test]
    fn singlet_against_identity() {
        let d = divergence_sqrt(&DensityMatrix::singlet(), &maximally_mixed(4).unwrap()).unwrap();
        assert!((d - SINGLET_VALUE).abs() < 1e-12, "{d}");
    }

    #[test]
    fn orthogonal_pure_qubits_give_one() {
        let d = divergence_sqrt(&diag(&[1.0, 0.0]), &diag(&[0.0, 1.0])).unwrap();
        assert!((d - 1.0).abs() < 1e-14);
    }

    #[test]
    fn radicand_clamping() {
        assert_eq!(sqrt_radicand(-1e-13).unwrap(), 0.0);
        assert!(matches!(
            sqrt_radicand(-1e-6),
            Err(Error::NumericalConsistency { .. })
        ));
        assert!(matches!(
            sqrt_radicand(f64::NAN),
            Err(Error::NumericalConsistency { .. })
        ));
    }

    #[test]
    fn surrogate_of_singlet_is_maximally_mixed() {
        let pi = product_surrogate(&DensityMatrix::singlet(), &TWO_QUBITS).unwrap();
        assert!(
            pi.matrix()
                .max_abs_diff(maximally_mixed(4).unwrap().matrix())
                .unwrap()
                < 1e-15
        );
    }

    #[test]
    fn surrogate_fixes_product_states() {
        let prod = diag(&[0.8, 0.2]).tensor(&diag(&[0.35, 0.65]));
        let pi = product_surrogate(&prod, &TWO_QUBITS).unwrap();
        assert!(pi.matrix().max_abs_diff(prod.matrix()).unwrap() < 1e-12);
    }

    #[test]
    fn surrogate_of_weak_coupling_inertial_state() {
        // (α, β, γ) = (1/3, 0, 1/3): each reduction is diag(2/3, 1/3)
        let rho = model_like(1.0 / 3.0, 0.0, 1.0 / 3.0);
        let pi = product_surrogate(&rho, &TWO_QUBITS).unwrap();
        let expect =
            ComplexMatrix::diagonal(&[4.0 / 9.0, 2.0 / 9.0, 2.0 / 9.0, 1.0 / 9.0]).unwrap();
        assert!(pi.matrix().max_abs_diff(&expect).unwrap() < 1e-15);
    }

    #[test]
    fn total_coherence_examples() {
        assert!(coherence_total(&maximally_mixed(4).unwrap()).unwrap().abs() < 1e-12);
        let ct = coherence_total(&DensityMatrix::singlet()).unwrap();
        assert!((ct - SINGLET_VALUE).abs() < 1e-12);
        let ct = coherence_total(&diag(&[0.5, 0.0, 0.0, 0.5])).unwrap();
        assert!((ct - INFINITE_ACCEL_VALUE).abs() < 1e-12);
    }

    #[test]
    fn collective_coherence_examples() {
        let prod = diag(&[0.8, 0.2]).tensor(&diag(&[0.35, 0.65]));
        assert!(coherence_collective(&prod, &TWO_QUBITS).unwrap().abs() < 1e-9);
        let cc = coherence_collective(&DensityMatrix::singlet(), &TWO_QUBITS).unwrap();
        assert!((cc - SINGLET_VALUE).abs() < 1e-12);
        let cc = coherence_collective(&diag(&[0.5, 0.0, 0.0, 0.5]), &TWO_QUBITS).unwrap();
        assert!((cc - INFINITE_ACCEL_VALUE).abs() < 1e-12);
    }

    #[test]
    fn localized_coherence_examples() {
        assert!(coherence_localized(&DensityMatrix::singlet(), &TWO_QUBITS).unwrap() < 1e-9);
        assert!(coherence_localized(&model_like(0.0, 0.5, 0.5), &TWO_QUBITS).unwrap() < 1e-9);
        // π = diag(4/9,2/9,2/9,1/9); oracle: √(S((π+I/4)/2) − (S(π)+2)/2)
        let cl = coherence_localized(&model_like(1.0 / 3.0, 0.0, 1.0 / 3.0), &TWO_QUBITS).unwrap();
        assert!((cl - 0.202_122_156_724_639).abs() < 1e-9, "{cl}");
    }

    #[test]
    fn triple_equality_cases() {
        let t = coherence_triple(&DensityMatrix::singlet(), &TWO_QUBITS).unwrap();
        assert!((t.c_total - SINGLET_VALUE).abs() < 1e-12);
        assert!((t.c_collective - SINGLET_VALUE).abs() < 1e-12);
        assert!(t.c_localized.abs() < 1e-9);
        assert!(t.triangle_slack.abs() < 1e-9);

        let t = coherence_triple(&diag(&[0.5, 0.0, 0.0, 0.5]), &TWO_QUBITS).unwrap();
        assert!((t.c_total - INFINITE_ACCEL_VALUE).abs() < 1e-12);
        assert!(t.triangle_slack.abs() < 1e-9);
    }

    #[test]
    fn triple_strict_slack_at_interior_point() {
        // (q, ν) = (1/2, 1/2) gives (α, β, γ) = (4/11, 1/11, 2/11)
        let t =
            coherence_triple(&model_like(4.0 / 11.0, 1.0 / 11.0, 2.0 / 11.0), &TWO_QUBITS).unwrap();
        assert!(t.triangle_slack > 1e-3, "{t:?}");
    }
}
