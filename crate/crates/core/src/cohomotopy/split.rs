//! Splitting obstructions.
//!
//! Suppose `X ≅ X₁ # X₂` with `b₁ = 0` on both sides and the nonequivariant
//! invariant of `X` is `ηʲ ≠ 0`, `j ∈ {2, 3}`. Degrees `jᵢ = 2dᵢ - b⁺(Xᵢ)` add up to
//! `j` and satisfy `jᵢ ≡ b⁺(Xᵢ) (mod 2)`. Each candidate decomposition is tested
//! against:
//!
//! - R1: negative stems vanish, so `jᵢ ≥ 0`;
//! - R2: a nonzero product has nonzero factors;
//! - R3: a nonzero factor in stem 1 comes from an almost complex `Xᵢ` whose
//!   invariant is η, forcing `b⁺(Xᵢ) ≡ 3 (mod 4)`;
//! - R4: a factor in stem 0 with `b⁺(Xᵢ) > 0` has nonequivariant degree 0, so it
//!   is zero; a surviving stem-0 factor needs `b⁺(Xᵢ) = 0`.

use std::fmt;

use super::{invariant, ConnectedSum};
use crate::stems::StemElement;
use crate::{Error, Result};

/// Congruence `b⁺(X₁) ≡ residue (mod modulus)` on a hypothetical summand with `b₁ = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SplitQuery {
    modulus: u8,
    residue: u8,
}

impl SplitQuery {
    pub fn new(modulus: u8, residue: u8) -> Result<Self> {
        if modulus != 2 && modulus != 4 {
            return Err(Error::InvalidQuery(format!(
                "modulus must be 2 or 4, got {modulus}"
            )));
        }
        if residue >= modulus {
            return Err(Error::InvalidQuery(format!(
                "residue {residue} is not reduced mod {modulus}"
            )));
        }
        Ok(SplitQuery { modulus, residue })
    }

    pub fn modulus(&self) -> u8 {
        self.modulus
    }

    pub fn residue(&self) -> u8 {
        self.residue
    }
}

impl fmt::Display for SplitQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "b⁺(X₁) ≡ {} (mod {})", self.residue, self.modulus)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SplitVerdict {
    /// No decomposition is compatible with the query.
    Impossible {
        trace: Vec<String>,
    },
    /// Every compatible decomposition has `b⁺(X₂) = 0`.
    ForcesNegativeDefiniteComplement {
        trace: Vec<String>,
    },
    Unknown {
        reason: String,
        trace: Vec<String>,
    },
}

impl SplitVerdict {
    pub fn trace(&self) -> &[String] {
        match self {
            SplitVerdict::Impossible { trace }
            | SplitVerdict::ForcesNegativeDefiniteComplement { trace }
            | SplitVerdict::Unknown { trace, .. } => trace,
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Decomposition {
    j1: i64,
    j2: i64,
    b1: u64,
    b2: u64,
}

/// The first rule violated by a decomposition, if any.
fn violated_rule(dec: &Decomposition) -> Option<String> {
    for (name, j, b) in [("X₁", dec.j1, dec.b1), ("X₂", dec.j2, dec.b2)] {
        if j < 0 {
            return Some(format!("R1: {name} would sit in the negative stem {j}"));
        }
        if j == 1 && b % 4 != 3 {
            return Some(format!(
                "R3: {name} in stem 1 must be almost complex with invariant η, so b⁺ ≡ 3 (mod 4), but b⁺ = {b}"
            ));
        }
        if j == 0 && b > 0 {
            return Some(format!(
                "R4: {name} in stem 0 with b⁺ = {b} > 0 has nonequivariant degree 0, killing the product (R2)"
            ));
        }
    }
    None
}

/// Values of `b⁺(X₁)` worth testing. The rules only see `b⁺ mod 4` and whether
/// `b⁺` vanishes, so values within 8 of either end cover every outcome.
fn candidate_b1(total: u64, modulus: u64, residue: u64) -> Vec<u64> {
    const WINDOW: u64 = 8;
    let mut out: Vec<u64> = (residue..=total.min(WINDOW))
        .step_by(modulus as usize)
        .collect();
    if total >= residue {
        let top = total - (total - residue) % modulus;
        let mut b1 = top;
        while b1 + WINDOW >= total && b1 > WINDOW {
            out.push(b1);
            match b1.checked_sub(modulus) {
                Some(next) if next >= residue => b1 = next,
                _ => break,
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

pub fn split_verdict(sum: &ConnectedSum, query: SplitQuery) -> Result<SplitVerdict> {
    let inv = invariant(sum)?;
    let j = match inv.nonequiv_class {
        StemElement::HopfPower(j @ (2 | 3)) => i64::from(j),
        ref other => {
            return Err(Error::PreconditionNotMet(format!(
                "{other} in stem {}",
                inv.stem_degree
            )))
        }
    };
    let total = inv.total_b_plus;
    let modulus = u64::from(query.modulus);
    let residue = u64::from(query.residue);
    let mut trace = vec![format!(
        "invariant of X is η^{j} ≠ 0 with b⁺(X) = {total}; query {query}"
    )];

    let mut survivors = Vec::new();
    for b1 in candidate_b1(total, modulus, residue) {
        let b2 = total - b1;
        for j1 in (0..=j).filter(|j1| (*j1 as u64) % 2 == b1 % 2) {
            let dec = Decomposition {
                j1,
                j2: j - j1,
                b1,
                b2,
            };
            match violated_rule(&dec) {
                Some(rule) => trace.push(format!(
                    "stems ({}, {}) with b⁺ = ({b1}, {b2}): ruled out by {rule}",
                    dec.j1, dec.j2
                )),
                None => {
                    trace.push(format!(
                        "stems ({}, {}) with b⁺ = ({b1}, {b2}): consistent",
                        dec.j1, dec.j2
                    ));
                    survivors.push(dec);
                }
            }
        }
    }
    if residue > total {
        trace.push(format!("b⁺ is additive and b⁺(X) = {total} < {residue}"));
    }

    if survivors.is_empty() {
        trace.push("every decomposition is contradictory: X does not split this way".into());
        return Ok(SplitVerdict::Impossible { trace });
    }
    if survivors.iter().all(|d| d.b2 == 0) {
        trace.push("only decompositions with b⁺(X₂) = 0 survive: X₂ is negative definite".into());
        return Ok(SplitVerdict::ForcesNegativeDefiniteComplement { trace });
    }
    let reason = if survivors.iter().all(|d| d.b1 == 0) {
        "surviving decompositions force b⁺(X₁) = 0 (X₁ negative definite), X₂ unconstrained"
            .to_string()
    } else {
        let list: Vec<String> = survivors
            .iter()
            .map(|d| format!("stems ({}, {}) b⁺ = ({}, {})", d.j1, d.j2, d.b1, d.b2))
            .collect();
        format!(
            "{} consistent decomposition(s): {}",
            survivors.len(),
            list.join("; ")
        )
    };
    Ok(SplitVerdict::Unknown { reason, trace })
}
