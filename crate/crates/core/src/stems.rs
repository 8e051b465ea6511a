//! Stable stems π₀..π₃ of the sphere spectrum, as far as Hopf powers reach.
//!
//! π₀ = ℤ, π₁ = ℤ/2·η, π₂ = ℤ/2·η², and η³ ≠ 0 in π₃. Negative stems vanish and
//! η⁴ = 0. Anything else in degree ≥ 3 is outside the model and appears as
//! [`StemElement::Unknown`].

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::TriState;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum StemElement {
    /// An element of π₀ = ℤ.
    IntegerClass(BigInt),
    /// ηʲ for `j ∈ {1, 2, 3}`.
    HopfPower(u8),
    /// The zero element of the given stem.
    Zero(i64),
    /// An element of the given stem the model cannot pin down.
    Unknown(i64),
}

impl StemElement {
    pub fn one() -> Self {
        StemElement::IntegerClass(BigInt::one())
    }

    pub fn integer(v: impl Into<BigInt>) -> Self {
        StemElement::IntegerClass(v.into())
    }

    pub fn eta() -> Self {
        StemElement::HopfPower(1)
    }

    /// ηʲ, collapsing η⁰ to 1 and ηʲ (j ≥ 4) to zero.
    pub fn hopf_power(j: u32) -> Self {
        match j {
            0 => StemElement::one(),
            1..=3 => StemElement::HopfPower(j as u8),
            _ => StemElement::Zero(i64::from(j)),
        }
    }

    /// An unknown element of stem `degree`; negative stems are zero.
    pub fn unknown(degree: i64) -> Self {
        if degree < 0 {
            StemElement::Zero(degree)
        } else {
            StemElement::Unknown(degree)
        }
    }

    pub fn degree(&self) -> i64 {
        match self {
            StemElement::IntegerClass(_) => 0,
            StemElement::HopfPower(j) => i64::from(*j),
            StemElement::Zero(d) | StemElement::Unknown(d) => *d,
        }
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, StemElement::Unknown(_))
    }
}

impl fmt::Display for StemElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StemElement::IntegerClass(v) => write!(f, "{v}"),
            StemElement::HopfPower(1) => write!(f, "η"),
            StemElement::HopfPower(2) => write!(f, "η²"),
            StemElement::HopfPower(3) => write!(f, "η³"),
            StemElement::HopfPower(j) => write!(f, "η^{j}"),
            StemElement::Zero(_) => write!(f, "0"),
            StemElement::Unknown(_) => write!(f, "?"),
        }
    }
}

/// Product in the stable stems. Degrees add; η has order 2; η⁴ = 0.
pub fn smash(x: &StemElement, y: &StemElement) -> StemElement {
    use StemElement::*;

    let degree = x.degree().saturating_add(y.degree());
    if degree < 0 {
        return Zero(degree);
    }
    match (x, y) {
        (Unknown(_), _) | (_, Unknown(_)) => Unknown(degree),
        (Zero(_), _) | (_, Zero(_)) => Zero(degree),
        (IntegerClass(a), IntegerClass(b)) => IntegerClass(a * b),
        (IntegerClass(v), HopfPower(j)) | (HopfPower(j), IntegerClass(v)) => {
            if v.is_odd() {
                HopfPower(*j)
            } else {
                Zero(degree)
            }
        }
        (HopfPower(i), HopfPower(j)) => StemElement::hopf_power(u32::from(*i) + u32::from(*j)),
    }
}

pub fn is_nonzero(x: &StemElement) -> TriState {
    match x {
        StemElement::IntegerClass(v) => TriState::from_bool(!v.is_zero()),
        StemElement::HopfPower(_) => TriState::Yes,
        StemElement::Zero(_) => TriState::No,
        StemElement::Unknown(_) => TriState::Unknown,
    }
}

/// Whether the top cell of ℂP^{d-1}, pulled back along S^{2d-1} → ℂP^{d-1}, is the
/// Hopf map: `Sq²(z^{d-1}) = (d-1)·z^d` is nonzero iff `d` is even.
///
/// Panics if `d == 0`.
pub fn sq2_detects_hopf(d: u64) -> bool {
    assert!(d >= 1, "sq2_detects_hopf needs d >= 1");
    d.is_multiple_of(2)
}
