//! Upper bounds for `dim M(L)` of a non-abelian nilpotent Lie algebra in terms
//! of `n = dim L`, `m = dim L²` and the class `c`.

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundError {
    #[error("invalid bound inputs (n={n}, m={m}, c={c:?}): {reason}")]
    InvalidInputs {
        n: usize,
        m: usize,
        c: Option<usize>,
        reason: &'static str,
    },
}

/// `(n, m, c)` of a non-abelian nilpotent algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BoundInputs {
    pub n: usize,
    pub m: usize,
    pub c: usize,
}

impl BoundInputs {
    pub fn new(n: usize, m: usize, c: usize) -> Result<Self, BoundError> {
        check_nm(n, m, Some(c))?;
        let invalid = |reason| BoundError::InvalidInputs {
            n,
            m,
            c: Some(c),
            reason,
        };
        if c < 2 {
            return Err(invalid("class must be at least 2"));
        }
        if c > n - 1 {
            return Err(invalid("class cannot exceed n - 1"));
        }
        Ok(Self { n, m, c })
    }

    pub fn generators(&self) -> usize {
        self.n - self.m
    }
}

fn check_nm(n: usize, m: usize, c: Option<usize>) -> Result<(), BoundError> {
    let invalid = |reason| BoundError::InvalidInputs { n, m, c, reason };
    if m < 1 {
        return Err(invalid("derived subalgebra must be nonzero"));
    }
    if n < m + 2 {
        return Err(invalid("need at least two generators (n >= m + 2)"));
    }
    Ok(())
}

/// `½(n+m−2)(n−m−1) + 1`.
pub fn bound_e1(n: usize, m: usize) -> Result<usize, BoundError> {
    check_nm(n, m, None)?;
    Ok((n + m - 2) * (n - m - 1) / 2 + 1)
}

/// `Σ_{i=2}^{min(d, c)} (d − i)` with `d = n − m`; empty sums are 0.
pub fn class_correction(d: usize, c: usize) -> usize {
    (2..=d.min(c)).map(|i| d - i).sum()
}

/// `½(n−m−1)(n+m) − Σ_{i=2}^{min(n−m, c)} (n−m−i)`.
pub fn bound_e2(n: usize, m: usize, c: usize) -> Result<usize, BoundError> {
    let inputs = BoundInputs::new(n, m, c)?;
    Ok((n - m - 1) * (n + m) / 2 - class_correction(inputs.generators(), c))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_bound_values() {
        assert_eq!(bound_e1(3, 1), Ok(2));
        assert_eq!(bound_e1(5, 2), Ok(6));
        assert_eq!(bound_e1(6, 3), Ok(8));
        // ½·4·1 + 1
        assert_eq!(bound_e1(4, 2), Ok(3));
    }

    #[test]
    fn second_bound_values() {
        assert_eq!(bound_e2(5, 2, 2), Ok(6));
        assert_eq!(bound_e2(6, 3, 2), Ok(8));
        assert_eq!(bound_e2(5, 3, 4), Ok(4));
        assert_eq!(bound_e2(4, 2, 3), Ok(3));
        for n in 4..12 {
            for c in 2..n {
                assert_eq!(bound_e2(n, n - 2, c), Ok(n - 1));
            }
        }
    }

    #[test]
    fn invalid_inputs_are_rejected() {
        assert!(bound_e1(3, 0).is_err());
        assert!(bound_e1(3, 2).is_err());
        assert!(bound_e2(5, 2, 1).is_err());
        assert!(bound_e2(5, 2, 5).is_err());
    }
}
