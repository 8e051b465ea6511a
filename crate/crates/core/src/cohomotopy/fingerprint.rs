//! The odd basic-class fingerprint of a connected sum of Kähler blocks.
//!
//! For a connected sum of Kähler surfaces the nonzero stable cohomotopy invariants
//! pick out tuples of classes, one per summand, each with odd Seiberg-Witten
//! invariant. Diffeomorphisms preserve these basic sets, so the multiset of
//! per-summand basic sets is a diffeomorphism invariant.

use std::fmt;

use super::ConnectedSum;
use crate::blocks::{recognizable_set, BuildingBlock, LabelledClass};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FingerprintEntry {
    /// Recognizable multiples of the fiber class of an elliptic summand.
    Elliptic(Vec<i64>),
    /// Declared odd basic set of a generic Kähler summand, sorted.
    Declared(Vec<LabelledClass>),
}

impl fmt::Display for FingerprintEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FingerprintEntry::Elliptic(keys) => {
                let s: Vec<String> = keys.iter().map(i64::to_string).collect();
                write!(f, "[{}]", s.join(", "))
            }
            FingerprintEntry::Declared(classes) => {
                let s: Vec<String> = classes
                    .iter()
                    .map(|c| format!("{} (c² = {})", c.label, c.c_square))
                    .collect();
                write!(f, "{{{}}}", s.join(", "))
            }
        }
    }
}

/// Canonically sorted multiset of per-summand basic sets.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Fingerprint(pub Vec<FingerprintEntry>);

impl Fingerprint {
    pub fn entries(&self) -> &[FingerprintEntry] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

pub fn odd_basic_fingerprint(sum: &ConnectedSum) -> Result<Fingerprint> {
    let mut entries = Vec::new();
    for s in sum.summands() {
        match &s.block {
            BuildingBlock::HomotopySphereLike => {}
            BuildingBlock::K3 | BuildingBlock::EllipticSurface { .. } => {
                let (p_g, m, n) = s.block.elliptic_triple().expect("elliptic block");
                let keys = recognizable_set(p_g, m, n).map_err(|e| match e {
                    Error::DolgachevUnsupported => Error::UnknownSw {
                        block: s.block.to_string(),
                        class: "basic set".into(),
                    },
                    other => other,
                })?;
                entries.push(FingerprintEntry::Elliptic(keys));
            }
            BuildingBlock::KaehlerGeneric { odd_basic, .. } => {
                let mut classes = odd_basic.clone();
                classes.sort();
                entries.push(FingerprintEntry::Declared(classes));
            }
            other => {
                return Err(Error::UnknownSw {
                    block: other.to_string(),
                    class: "basic set".into(),
                })
            }
        }
    }
    entries.sort();
    Ok(Fingerprint(entries))
}
