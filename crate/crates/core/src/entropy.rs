//! Entropies in bits.

use crate::error::{Error, Result};
use crate::matrix::DensityMatrix;

/// Negative probabilities at or above this are treated as round-off and
/// clipped to zero; anything lower is rejected.
pub const NEGATIVITY_TOLERANCE: f64 = 1e-9;

/// Shannon entropy `-Σ p log₂ p` of a probability list, with `0 log 0 = 0`.
pub fn shannon_entropy(probabilities: &[f64]) -> Result<f64> {
    let mut h = 0.0;
    for &p in probabilities {
        if p < -NEGATIVITY_TOLERANCE || !p.is_finite() {
            return Err(Error::NotPositive { value: p });
        }
        if p > 0.0 {
            h -= p * p.log2();
        }
    }
    // -0.0 from an all-zero-or-one list
    Ok(h.max(0.0))
}

/// `S(ρ) = -tr ρ log₂ ρ`, computed from the eigenvalues.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    shannon_entropy(rho.eigenvalues()?.values())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{maximally_mixed, ComplexMatrix};

    #[test]
    fn maximally_mixed_two_qubits() {
        let s = von_neumann_entropy(&maximally_mixed(4).unwrap()).unwrap();
        assert!((s - 2.0).abs() < 1e-14);
    }

    #[test]
    fn pure_singlet_has_zero_entropy() {
        let s = von_neumann_entropy(&DensityMatrix::singlet()).unwrap();
        assert!(s.abs() < 1e-12, "{s}");
    }

    #[test]
    fn uniform_rank_two() {
        let rho =
            DensityMatrix::new(ComplexMatrix::diagonal(&[0.5, 0.0, 0.0, 0.5]).unwrap()).unwrap();
        assert!((von_neumann_entropy(&rho).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn round_off_negatives_are_clipped() {
        assert_eq!(shannon_entropy(&[1.0, -1e-13]).unwrap(), 0.0);
        assert_eq!(shannon_entropy(&[1.0, -5e-10]).unwrap(), 0.0);
    }

    #[test]
    fn genuine_negatives_are_errors() {
        assert!(matches!(
            shannon_entropy(&[1.1, -0.1]),
            Err(Error::NotPositive { .. })
        ));
        assert!(matches!(
            shannon_entropy(&[1.0, -2e-9]),
            Err(Error::NotPositive { .. })
        ));
    }
}
