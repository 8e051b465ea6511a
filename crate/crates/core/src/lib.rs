//! # swcalc
//!
//! Exact bookkeeping for the stable cohomotopy refinement of Seiberg-Witten
//! invariants on connected sums of closed 4-manifolds.
//!
//! The crate is organised bottom-up:
//!
//! - [`lattice`]: Dirac index, expected dimension and the spin^c data they consume.
//! - [`blocks`]: the catalog of building blocks (elliptic surfaces, K3, generic
//!   symplectic and Kähler surfaces, negative definite manifolds, homotopy spheres)
//!   together with the basic-class tables of simply connected minimal elliptic surfaces.
//! - [`stems`]: the stable stems π₀..π₃ with Hopf-power arithmetic.
//! - [`cohomotopy`]: the invariant engine for connected sums (multiplicativity,
//!   nonvanishing criteria, blowups, splitting obstructions).
//! - [`recognize`]: recovery of elliptic-surface parameters from the pattern of
//!   classes with odd Seiberg-Witten invariant.
//!
//! All arithmetic is exact. Machine integers are checked and overflow surfaces as
//! [`Error::Overflow`]; Seiberg-Witten values of elliptic surfaces are arbitrary precision.
//!
//! ```
//! use swcalc::blocks::BuildingBlock;
//! use swcalc::cohomotopy::{invariant, ConnectedSum};
//! use swcalc::stems::StemElement;
//! use swcalc::TriState;
//!
//! let sum = ConnectedSum::of_blocks(vec![BuildingBlock::K3, BuildingBlock::K3]).unwrap();
//! let inv = invariant(&sum).unwrap();
//! assert_eq!(inv.stem_degree, 2);
//! assert_eq!(inv.nonequiv_class, StemElement::HopfPower(2));
//! assert_eq!(inv.equivariant_nonzero, TriState::Yes);
//! ```

pub mod blocks;
pub mod cohomotopy;
pub mod lattice;
pub mod recognize;
pub mod stems;

use std::fmt;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("Dirac index is not integral: c² = {c_square}, signature = {signature} (c² - σ must be divisible by 8)")]
    IndexNotIntegral { c_square: i64, signature: i64 },

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("invalid characteristic vector: {0}")]
    InvalidCharacteristic(String),

    #[error("invalid building block: {0}")]
    InvalidBlock(String),

    #[error("invalid elliptic parameters (p_g={p_g}, m={m}, n={n}): {reason}")]
    InvalidParameters {
        p_g: u64,
        m: u64,
        n: u64,
        reason: String,
    },

    #[error("basic-class tables are only defined for p_g >= 1 (got p_g = 0)")]
    DolgachevUnsupported,

    #[error("no Seiberg-Witten data for {block} at class {class}")]
    UnknownSw { block: String, class: String },

    #[error("spin^c choice {choice} does not apply to {block}")]
    InvalidSpinC { block: String, choice: String },

    #[error("negative definite summand with positive Dirac index d = {d} (c² = {c_square}, rank = {rank})")]
    PositiveIndexOnNegativeDefinite { d: i64, c_square: i64, rank: u64 },

    #[error("connected sum must have at least one summand")]
    EmptySum,

    #[error("invalid split query: {0}")]
    InvalidQuery(String),

    #[error("splitting analysis needs a nonzero Hopf power η² or η³, found {0}")]
    PreconditionNotMet(String),

    #[error("invalid pattern: {0}")]
    InvalidPattern(String),

    #[error("not an elliptic pattern: {0}")]
    NotAnEllipticPattern(String),

    #[error("oracle bounds must be positive")]
    InvalidBounds,
}

/// Three-valued verdict used wherever a criterion only decides inside its regime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TriState {
    Yes,
    No,
    Unknown,
}

impl TriState {
    pub fn from_bool(b: bool) -> Self {
        if b {
            TriState::Yes
        } else {
            TriState::No
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            TriState::Yes => "yes",
            TriState::No => "no",
            TriState::Unknown => "unknown",
        }
    }
}

impl fmt::Display for TriState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TriState::Yes => "YES",
            TriState::No => "NO",
            TriState::Unknown => "UNKNOWN",
        })
    }
}

/// Parity of an integer Seiberg-Witten value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of_i64(v: i64) -> Self {
        if v.rem_euclid(2) == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}
