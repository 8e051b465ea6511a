//! Second-cohomology arithmetic of building blocks.
//!
//! Intersection forms are never materialised. A block is described by its Betti
//! numbers and, for negative definite blocks, optionally by the coordinates of a
//! characteristic vector in a diagonal basis.

use crate::{Error, Result};

/// Betti-number profile of a closed 4-manifold.
///
/// `b_minus` is optional: for several catalog blocks only `b1` and `b_plus` are
/// pinned down by the data we carry, and nothing downstream needs the rest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TopProfile {
    pub b1: u64,
    pub b_plus: u64,
    pub b_minus: Option<u64>,
}

impl TopProfile {
    pub fn new(b1: u64, b_plus: u64, b_minus: u64) -> Self {
        TopProfile {
            b1,
            b_plus,
            b_minus: Some(b_minus),
        }
    }

    pub fn partial(b1: u64, b_plus: u64) -> Self {
        TopProfile {
            b1,
            b_plus,
            b_minus: None,
        }
    }

    /// `b_plus - b_minus`, when `b_minus` is known.
    pub fn signature(&self) -> Option<i64> {
        let bm = self.b_minus?;
        let bp = i64::try_from(self.b_plus).ok()?;
        let bm = i64::try_from(bm).ok()?;
        bp.checked_sub(bm)
    }
}

/// A spin^c structure, reduced to the self-intersection of its Chern class.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SpinC {
    pub c_square: i64,
    pub c_coords: Option<Vec<i64>>,
}

impl SpinC {
    pub fn from_square(c_square: i64) -> Self {
        SpinC {
            c_square,
            c_coords: None,
        }
    }

    /// Characteristic vector on the diagonal form `-I_r`, given by its coordinates.
    ///
    /// Every coordinate must be odd (`c·x ≡ x·x mod 2` on basis vectors); the
    /// square is `-Σ cᵢ²`.
    pub fn from_diagonal_coords(coords: Vec<i64>) -> Result<Self> {
        let mut sum: i64 = 0;
        for (i, &x) in coords.iter().enumerate() {
            if x.rem_euclid(2) != 1 {
                return Err(Error::InvalidCharacteristic(format!(
                    "coordinate {i} is {x}, characteristic vectors of a diagonal form have odd coordinates"
                )));
            }
            let sq = x.checked_mul(x).ok_or(Error::Overflow("c²"))?;
            sum = sum.checked_add(sq).ok_or(Error::Overflow("c²"))?;
        }
        Ok(SpinC {
            c_square: -sum,
            c_coords: Some(coords),
        })
    }

    /// The characteristic vector with all coordinates 1 on `-I_rank`; `c² = -rank`.
    pub fn unit_diagonal(rank: u64) -> Result<Self> {
        let len = usize::try_from(rank).map_err(|_| Error::Overflow("rank"))?;
        SpinC::from_diagonal_coords(vec![1; len])
    }

    /// Checks `c² ≡ σ (mod 8)` against a profile whose signature is known, and the
    /// coordinate count when coordinates are present on a negative definite profile.
    pub fn validate_for(&self, profile: &TopProfile) -> Result<()> {
        if let Some(coords) = &self.c_coords {
            if profile.b_plus != 0 || profile.b_minus != Some(coords.len() as u64) {
                return Err(Error::InvalidCharacteristic(format!(
                    "{} coordinates do not match a diagonal negative definite form of rank {:?}",
                    coords.len(),
                    profile.b_minus
                )));
            }
        }
        if let Some(sig) = profile.signature() {
            dirac_index(self.c_square, sig)?;
        }
        Ok(())
    }
}

/// Complex index of the twisted Dirac operator, `d = (c² - σ) / 8`.
pub fn dirac_index(c_square: i64, signature: i64) -> Result<i64> {
    let diff = c_square
        .checked_sub(signature)
        .ok_or(Error::Overflow("c² - σ"))?;
    if diff.rem_euclid(8) != 0 {
        return Err(Error::IndexNotIntegral {
            c_square,
            signature,
        });
    }
    Ok(diff / 8)
}

/// Virtual dimension `k = 2d - (b⁺ - b₁ + 1)` of the monopole moduli space.
pub fn expected_dimension(d: i64, b_plus: i64, b1: i64) -> Result<i64> {
    let two_d = d.checked_mul(2).ok_or(Error::Overflow("2d"))?;
    let rhs = b_plus
        .checked_sub(b1)
        .and_then(|x| x.checked_add(1))
        .ok_or(Error::Overflow("b⁺ - b₁ + 1"))?;
    two_d
        .checked_sub(rhs)
        .ok_or(Error::Overflow("expected dimension"))
}

/// A stably almost complex structure is almost complex exactly when `k = 0`.
pub fn is_almost_complex_profile(d: i64, b_plus: i64, b1: i64) -> Result<bool> {
    Ok(expected_dimension(d, b_plus, b1)? == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    // brute force over rank-1 characteristic vectors: c = x·e with x odd
    fn rank_one_index_oracle(x: i64) -> i64 {
        let c_square = -(x * x);
        assert_eq!((c_square + 1) % 8, 0);
        (c_square + 1) / 8
    }

    #[test]
    fn dirac_index_examples() {
        assert_eq!(dirac_index(0, -16).unwrap(), 2);
        assert_eq!(dirac_index(0, 0).unwrap(), 0);
        assert_eq!(rank_one_index_oracle(3), -1);
        assert_eq!(dirac_index(-9, -1).unwrap(), -1);
    }

    #[test]
    fn dirac_index_rejects_non_characteristic() {
        assert_eq!(
            dirac_index(1, 0),
            Err(Error::IndexNotIntegral {
                c_square: 1,
                signature: 0
            })
        );
        assert!(dirac_index(-4, -1).is_err());
    }

    #[test]
    fn dirac_index_overflow_is_an_error() {
        assert_eq!(dirac_index(i64::MIN, 1), Err(Error::Overflow("c² - σ")));
    }

    #[test]
    fn expected_dimension_examples() {
        assert_eq!(expected_dimension(2, 3, 0).unwrap(), 0);
        assert_eq!(expected_dimension(0, 0, 0).unwrap(), -1);
        // four almost complex summands with b⁺ = 3: Σ d = 8, Σ b⁺ = 12, k = n - 1
        let (d, b): (i64, i64) = (0..4)
            .map(|_| (2, 3))
            .fold((0, 0), |a, x| (a.0 + x.0, a.1 + x.1));
        assert_eq!(expected_dimension(d, b, 0).unwrap(), 3);
        assert_eq!(expected_dimension(8, 12, 0).unwrap(), 3);
    }

    #[test]
    fn almost_complex_examples() {
        assert!(is_almost_complex_profile(2, 3, 0).unwrap());
        assert!(!is_almost_complex_profile(0, 0, 0).unwrap());
        assert!(is_almost_complex_profile(4, 7, 0).unwrap());
    }

    #[test]
    fn diagonal_coords_collapse_to_square() {
        let s = SpinC::from_diagonal_coords(vec![3]).unwrap();
        assert_eq!(s.c_square, -9);
        let s = SpinC::from_diagonal_coords(vec![1, -1, 3]).unwrap();
        assert_eq!(s.c_square, -11);
        assert!(SpinC::from_diagonal_coords(vec![1, 2]).is_err());
        assert_eq!(SpinC::unit_diagonal(5).unwrap().c_square, -5);
    }

    #[test]
    fn validate_against_profile() {
        let k3 = TopProfile::new(0, 3, 19);
        assert_eq!(k3.signature(), Some(-16));
        assert!(SpinC::from_square(0).validate_for(&k3).is_ok());
        assert!(SpinC::from_square(4).validate_for(&k3).is_err());
        let nd = TopProfile::new(0, 0, 2);
        assert!(SpinC::from_diagonal_coords(vec![1, 1])
            .unwrap()
            .validate_for(&nd)
            .is_ok());
        assert!(SpinC::from_diagonal_coords(vec![1])
            .unwrap()
            .validate_for(&nd)
            .is_err());
        // unknown signature: nothing to check
        assert!(SpinC::from_square(5)
            .validate_for(&TopProfile::partial(0, 5))
            .is_ok());
    }

    proptest! {
        #[test]
        fn index_reconstructs_c_square(d in -10_000i64..10_000, sig in -10_000i64..10_000) {
            let c_square = 8 * d + sig;
            let got = dirac_index(c_square, sig).unwrap();
            prop_assert_eq!(8 * got + sig, c_square);
        }

        #[test]
        fn expected_dimension_is_affine(d in -1000i64..1000, bp in 0i64..1000, b1 in 0i64..1000) {
            let k = expected_dimension(d, bp, b1).unwrap();
            prop_assert_eq!(expected_dimension(d + 1, bp, b1).unwrap() - k, 2);
            prop_assert_eq!(expected_dimension(d, bp + 1, b1).unwrap() - k, -1);
            prop_assert_eq!(expected_dimension(d, bp, b1 + 1).unwrap() - k, 1);
            prop_assert_eq!(k, 2 * d - (bp - b1 + 1));
        }

        #[test]
        fn diagonal_negative_definite_index_is_nonpositive(
            half in proptest::collection::vec(-20i64..20, 0..=10)
        ) {
            let coords: Vec<i64> = half.iter().map(|h| 2 * h + 1).collect();
            let rank = coords.len() as i64;
            let s = SpinC::from_diagonal_coords(coords).unwrap();
            prop_assert!(s.c_square <= -rank);
            prop_assert!(dirac_index(s.c_square, -rank).unwrap() <= 0);
        }
    }
}
