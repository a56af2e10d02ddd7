//! Mohar's and Lu's closed-form lower bounds on λ₂.
//!
//! Both are pure functions of order, size and diameter so they can be
//! compared against scores computed from the same diameter.

use crate::error::{Error, Result};

/// `4 / (n · D_max)`.
pub fn mohar_bound(n: usize, diameter: usize) -> f64 {
    4.0 / (n as f64 * diameter as f64)
}

/// `2n / (2 + (n − 1)·n·D_max − 2·|E|·D_max)`.
pub fn lu_bound(n: usize, edge_count: usize, diameter: usize) -> Result<f64> {
    let (n, m, d) = (n as f64, edge_count as f64, diameter as f64);
    let denominator = 2.0 + (n - 1.0) * n * d - 2.0 * m * d;
    if denominator <= 0.0 {
        return Err(Error::NonPositiveDenominator { denominator });
    }
    Ok(2.0 * n / denominator)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mohar_examples() {
        assert_eq!(mohar_bound(10, 2), 0.2);
        assert_eq!(mohar_bound(4, 1), 1.0);
        assert_eq!(mohar_bound(5, 2), 8.0 / 20.0);
    }

    #[test]
    fn lu_examples() {
        assert_eq!(lu_bound(10, 15, 2).unwrap(), 20.0 / 122.0);
        assert_eq!(lu_bound(6, 15, 1).unwrap(), 6.0);
        assert_eq!(lu_bound(5, 4, 2).unwrap(), 5.0 / 13.0);
    }

    #[test]
    fn lu_outside_scope() {
        // more edges than a simple graph can hold
        assert!(matches!(
            lu_bound(4, 10, 1),
            Err(Error::NonPositiveDenominator { .. })
        ));
    }
}
