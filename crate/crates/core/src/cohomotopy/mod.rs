//! The connected-sum invariant engine.
//!
//! The stable cohomotopy invariant of `X₀ # X₁` is the smash product of the
//! invariants of the summands. With `b₁ = 0` throughout, forgetting equivariance
//! lands the invariant of a sum in the stable stem of degree `2d - b⁺`, where `d`
//! and `b⁺` are additive over summands. The engine tracks:
//!
//! - almost complex summands (`k = 0`), whose nonequivariant class is η exactly when
//!   `b⁺ ≡ 3 (mod 4)` and the Seiberg-Witten invariant is odd;
//! - negative definite summands, which contribute `γ(ℂ)^{|d|}` with `d ≤ 0`;
//! - homotopy spheres, which are neutral.
//!
//! Every verdict is three-valued and carries a trace of the rules that produced it.

mod fingerprint;
mod split;

pub use fingerprint::{odd_basic_fingerprint, Fingerprint, FingerprintEntry};
pub use split::{split_verdict, SplitQuery, SplitVerdict};

use num_traits::Zero;

use crate::blocks::{max_key, profile, sw_value, BuildingBlock, SpinCChoice, SwValue};
use crate::lattice::{dirac_index, expected_dimension, is_almost_complex_profile, SpinC};
use crate::stems::{is_nonzero, smash, sq2_detects_hopf, StemElement};
use crate::{Error, Parity, Result, TriState};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Summand {
    pub block: BuildingBlock,
    pub spin_c: SpinCChoice,
}

impl Summand {
    pub fn new(block: BuildingBlock, spin_c: SpinCChoice) -> Self {
        Summand { block, spin_c }
    }

    pub fn canonical(block: BuildingBlock) -> Self {
        Summand::new(block, SpinCChoice::Canonical)
    }
}

/// A nonempty connected sum of validated catalog blocks.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConnectedSum {
    summands: Vec<Summand>,
}

impl ConnectedSum {
    pub fn new(summands: Vec<Summand>) -> Result<Self> {
        if summands.is_empty() {
            return Err(Error::EmptySum);
        }
        for s in &summands {
            s.block.validate()?;
        }
        Ok(ConnectedSum { summands })
    }

    /// Each block with its canonical spin^c structure.
    pub fn of_blocks(blocks: Vec<BuildingBlock>) -> Result<Self> {
        ConnectedSum::new(blocks.into_iter().map(Summand::canonical).collect())
    }

    pub fn summands(&self) -> &[Summand] {
        &self.summands
    }
}

/// The invariant of a connected sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantClass {
    pub total_d: i64,
    pub total_b_plus: u64,
    /// `2·total_d - total_b_plus`.
    pub stem_degree: i64,
    pub nonequiv_class: StemElement,
    pub equivariant_nonzero: TriState,
    /// Number of `γ(ℂ)` factors contributed by negative definite summands.
    pub gamma_power: u64,
    pub trace: Vec<String>,
}

impl InvariantClass {
    /// Equality of everything except the trace.
    pub fn same_class(&self, other: &InvariantClass) -> bool {
        self.total_d == other.total_d
            && self.total_b_plus == other.total_b_plus
            && self.stem_degree == other.stem_degree
            && self.nonequiv_class == other.nonequiv_class
            && self.equivariant_nonzero == other.equivariant_nonzero
            && self.gamma_power == other.gamma_power
    }

    /// Expected dimension `k = 2d - (b⁺ + 1)` of the sum (`b₁ = 0`).
    pub fn expected_dimension(&self) -> Result<i64> {
        let b_plus = i64::try_from(self.total_b_plus).map_err(|_| Error::Overflow("b⁺"))?;
        expected_dimension(self.total_d, b_plus, 0)
    }
}

/// Outcome of the nonvanishing criteria on a connected sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Criterion {
    pub verdict: TriState,
    /// Number of almost complex summands the criteria were applied to.
    pub summands: usize,
    pub trace: Vec<String>,
}

/// Data of one almost complex summand with its canonical-type spin^c structure.
#[derive(Debug, Clone)]
struct AlmostComplexPart {
    index: usize,
    b_plus: u64,
    d: i64,
    sw: Option<SwValue>,
}

impl AlmostComplexPart {
    fn parity(&self) -> Option<Parity> {
        self.sw.as_ref().map(SwValue::parity)
    }

    fn hopf_detected(&self) -> bool {
        sq2_detects_hopf(self.d as u64)
    }

    /// η if the summand's invariant is the Hopf map, zero if it provably is not.
    fn contribution(&self) -> StemElement {
        if !self.hopf_detected() {
            return StemElement::Zero(1);
        }
        match self.parity() {
            Some(Parity::Odd) => StemElement::eta(),
            Some(Parity::Even) => StemElement::Zero(1),
            None => StemElement::Unknown(1),
        }
    }
}

enum Part {
    Neutral(String),
    AlmostComplex(AlmostComplexPart),
    Gamma { d: i64 },
}

struct Analysis {
    total_d: i64,
    total_b_plus: u64,
    gamma_power: u64,
    almost_complex: Vec<AlmostComplexPart>,
    trace: Vec<String>,
}

fn invalid_choice(s: &Summand) -> Error {
    Error::InvalidSpinC {
        block: s.block.to_string(),
        choice: s.spin_c.to_string(),
    }
}

/// Dirac index of a negative definite block of the given rank at `spin_c`,
/// checked against `d ≤ 0`.
fn negative_definite_index(rank: u64, spin_c: &SpinC) -> Result<i64> {
    if let Some(coords) = &spin_c.c_coords {
        if coords.len() as u64 != rank {
            return Err(Error::InvalidCharacteristic(format!(
                "{} coordinates for a rank {rank} form",
                coords.len()
            )));
        }
    }
    let signature = -i64::try_from(rank).map_err(|_| Error::Overflow("rank"))?;
    let d = dirac_index(spin_c.c_square, signature)?;
    if d > 0 {
        return Err(Error::PositiveIndexOnNegativeDefinite {
            d,
            c_square: spin_c.c_square,
            rank,
        });
    }
    Ok(d)
}

fn analyse_summand(index: usize, s: &Summand) -> Result<Part> {
    let block = &s.block;
    match block {
        BuildingBlock::HomotopySphereLike => match s.spin_c {
            SpinCChoice::Canonical => Ok(Part::Neutral(format!(
                "summand {index} ({block}): b₁ = b₂ = 0, invariant is the identity; dropped"
            ))),
            _ => Err(invalid_choice(s)),
        },
        BuildingBlock::NegativeDefinite { rank } => {
            let spin_c = match &s.spin_c {
                SpinCChoice::Canonical => SpinC::unit_diagonal(*rank)?,
                SpinCChoice::Characteristic(c) => c.clone(),
                _ => return Err(invalid_choice(s)),
            };
            let d = negative_definite_index(*rank, &spin_c)?;
            if d == 0 {
                Ok(Part::Neutral(format!(
                    "summand {index} ({block}, c² = {}): d = 0, γ(ℂ)⁰ is the identity; dropped",
                    spin_c.c_square
                )))
            } else {
                Ok(Part::Gamma { d })
            }
        }
        _ => {
            let applies = matches!(
                (&s.block, &s.spin_c),
                (_, SpinCChoice::Canonical)
                    | (
                        BuildingBlock::K3 | BuildingBlock::EllipticSurface { .. },
                        SpinCChoice::FiberMultiple(_)
                    )
                    | (
                        BuildingBlock::KaehlerGeneric { .. },
                        SpinCChoice::Labelled(_)
                    )
            );
            if !applies {
                return Err(invalid_choice(s));
            }
            if let (SpinCChoice::FiberMultiple(key), Some((p_g, m, n))) =
                (&s.spin_c, block.elliptic_triple())
            {
                // κ·f is characteristic iff κ ≡ κ_max (mod 2)
                if p_g > 0 && (key - max_key(p_g, m, n)?).rem_euclid(2) != 0 {
                    return Err(Error::InvalidSpinC {
                        block: block.to_string(),
                        choice: format!("{} (not characteristic)", s.spin_c),
                    });
                }
            }
            let top = profile(block);
            if top.b1 != 0 {
                // the catalog has no such blocks; kept for hand-built profiles
                return Err(Error::InvalidBlock(format!(
                    "{block}: b₁ > 0 is not supported"
                )));
            }
            let b_plus = i64::try_from(top.b_plus).map_err(|_| Error::Overflow("b⁺"))?;
            let d = (b_plus + 1) / 2;
            debug_assert!(is_almost_complex_profile(d, b_plus, 0)?);
            let sw = match sw_value(block, &s.spin_c) {
                Ok(v) => Some(v),
                Err(Error::UnknownSw { .. }) => None,
                Err(e) => return Err(e),
            };
            Ok(Part::AlmostComplex(AlmostComplexPart {
                index,
                b_plus: top.b_plus,
                d,
                sw,
            }))
        }
    }
}

fn analyse(sum: &ConnectedSum) -> Result<Analysis> {
    let mut a = Analysis {
        total_d: 0,
        total_b_plus: 0,
        gamma_power: 0,
        almost_complex: Vec::new(),
        trace: Vec::new(),
    };
    for (i, s) in sum.summands().iter().enumerate() {
        match analyse_summand(i, s)? {
            Part::Neutral(msg) => a.trace.push(msg),
            Part::Gamma { d } => {
                a.total_d = a.total_d.checked_add(d).ok_or(Error::Overflow("total d"))?;
                a.gamma_power = a
                    .gamma_power
                    .checked_add(d.unsigned_abs())
                    .ok_or(Error::Overflow("γ power"))?;
                a.trace.push(format!(
                    "summand {i} ({}): d = {d} ≤ 0, contributes γ(ℂ)^{}",
                    s.block,
                    d.unsigned_abs()
                ));
            }
            Part::AlmostComplex(part) => {
                a.total_d = a
                    .total_d
                    .checked_add(part.d)
                    .ok_or(Error::Overflow("total d"))?;
                a.total_b_plus = a
                    .total_b_plus
                    .checked_add(part.b_plus)
                    .ok_or(Error::Overflow("total b⁺"))?;
                let sw = match &part.sw {
                    Some(v) => format!("SW = {v}"),
                    None => "SW unknown".to_string(),
                };
                a.trace.push(format!(
                    "summand {i} ({}): almost complex, b⁺ = {}, d = {}, {sw}; Sq² {} the Hopf map; contributes {}",
                    s.block,
                    part.b_plus,
                    part.d,
                    if part.hopf_detected() { "detects" } else { "does not detect" },
                    part.contribution()
                ));
                a.almost_complex.push(part);
            }
        }
    }
    Ok(a)
}

fn criteria_of(a: &Analysis) -> Criterion {
    let n = a.almost_complex.len();
    let mut trace = Vec::new();
    let verdict = if a.gamma_power > 0 {
        trace
            .push("γ(ℂ) factors present: outside the almost complex regime of the criteria".into());
        TriState::Unknown
    } else if n == 0 {
        trace.push("no almost complex summands: the invariant is the identity".into());
        TriState::Yes
    } else if n >= 5 {
        trace.push(format!(
            "n = {n} ≥ 5: the invariant is a torsion element of a torsion-free group, hence zero"
        ));
        TriState::No
    } else {
        let mut failed = false;
        let mut undecided = false;
        for p in &a.almost_complex {
            let b_ok = p.b_plus % 4 == 3;
            match (b_ok, p.parity()) {
                (false, _) => {
                    failed = true;
                    trace.push(format!(
                        "summand {}: b⁺ = {} ≢ 3 (mod 4)",
                        p.index, p.b_plus
                    ));
                }
                (true, Some(Parity::Even)) => {
                    failed = true;
                    trace.push(format!(
                        "summand {}: Seiberg-Witten invariant is even",
                        p.index
                    ));
                }
                (true, None) => {
                    undecided = true;
                    trace.push(format!(
                        "summand {}: Seiberg-Witten parity unknown",
                        p.index
                    ));
                }
                (true, Some(Parity::Odd)) => trace.push(format!(
                    "summand {}: b⁺ = {} ≡ 3 (mod 4) and SW odd",
                    p.index, p.b_plus
                )),
            }
        }
        if failed {
            TriState::No
        } else if undecided {
            TriState::Unknown
        } else if n == 4 {
            let r = a.total_b_plus % 8;
            trace.push(format!(
                "n = 4: total b⁺ = {} ≡ {r} (mod 8), nonvanishing requires ≡ 4",
                a.total_b_plus
            ));
            trace.push(format!(
                "note: with 2d = b⁺ + 4 (total d = {}) the congruence b⁺ ≡ 4 (mod 8) reads d ≡ 0 (mod 4); \
                 the stronger reading d ≡ 0 (mod 8) is not used",
                a.total_d
            ));
            TriState::from_bool(r == 4)
        } else {
            TriState::Yes
        }
    };
    trace.push(format!(
        "nonvanishing criteria over {n} almost complex summand(s): {verdict}"
    ));
    Criterion {
        verdict,
        summands: n,
        trace,
    }
}

/// Applies the nonvanishing criteria for sums of `n` almost complex summands with
/// `b₁ = 0`:
///
/// - `n = 1`: η iff `b⁺ ≡ 3 (mod 4)` and SW odd (nonequivariantly);
/// - `n ∈ {2, 3}`: nonzero iff every summand satisfies both conditions;
/// - `n = 4`: additionally the total `b⁺ ≡ 4 (mod 8)`;
/// - `n ≥ 5`: always zero.
pub fn nonvanishing_criteria(sum: &ConnectedSum) -> Result<Criterion> {
    Ok(criteria_of(&analyse(sum)?))
}

/// The invariant of a connected sum, assembled multiplicatively from its summands.
pub fn invariant(sum: &ConnectedSum) -> Result<InvariantClass> {
    let a = analyse(sum)?;
    let b_plus = i64::try_from(a.total_b_plus).map_err(|_| Error::Overflow("b⁺"))?;
    let stem_degree = a
        .total_d
        .checked_mul(2)
        .and_then(|x| x.checked_sub(b_plus))
        .ok_or(Error::Overflow("stem degree"))?;
    let criterion = criteria_of(&a);
    let mut trace = a.trace.clone();
    let n = a.almost_complex.len();

    let (class, equivariant) = if a.gamma_power > 0 {
        let eq = if n == 0 {
            trace.push(
                "only negative definite summands: γ(ℂ)^k is the inclusion, not nullhomotopic"
                    .into(),
            );
            TriState::Yes
        } else {
            trace.push(
                "almost complex part smashed with γ(ℂ) factors: no formula, status unknown".into(),
            );
            TriState::Unknown
        };
        (StemElement::unknown(stem_degree), eq)
    } else {
        let class = a
            .almost_complex
            .iter()
            .fold(StemElement::one(), |acc, p| smash(&acc, &p.contribution()));
        trace.push(format!(
            "smash of contributions: {class} in stem {stem_degree}"
        ));
        match n {
            0 => (class, TriState::Yes),
            1 => {
                let eq = match &a.almost_complex[0].sw {
                    Some(SwValue::Integer(v)) => TriState::from_bool(!v.is_zero()),
                    Some(SwValue::Parity(Parity::Odd)) => TriState::Yes,
                    _ => TriState::Unknown,
                };
                trace.push(format!(
                    "single summand: invariant is SW·κ_d, nonzero: {eq}"
                ));
                (class, eq)
            }
            _ => {
                trace.extend(criterion.trace.iter().cloned());
                let class = if criterion.verdict == TriState::No {
                    StemElement::Zero(stem_degree)
                } else {
                    class
                };
                (class, criterion.verdict)
            }
        }
    };

    debug_assert!(class.degree() == stem_degree);
    debug_assert!(is_nonzero(&class) != TriState::Yes || equivariant != TriState::No);
    Ok(InvariantClass {
        total_d: a.total_d,
        total_b_plus: a.total_b_plus,
        stem_degree,
        nonequiv_class: class,
        equivariant_nonzero: equivariant,
        gamma_power: a.gamma_power,
        trace,
    })
}

/// Result of connect-summing a negative definite block onto an invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Blowup {
    pub invariant: InvariantClass,
    /// `Yes` when the integer Seiberg-Witten invariant is certified unchanged.
    pub sw_preserved: TriState,
}

/// `μ_{X#N} = μ_X ∧ γ(ℂ)^{|d|}` for a negative definite `N` with `b₁ = 0`.
///
/// The integer invariant is certified unchanged when `2|d|` does not exceed the
/// expected dimension of `X`.
pub fn blowup(inv: &InvariantClass, block: &BuildingBlock, spin_c: &SpinC) -> Result<Blowup> {
    let BuildingBlock::NegativeDefinite { rank } = block else {
        return Err(Error::InvalidBlock(format!(
            "{block} is not negative definite; blowups need b⁺ = b₁ = 0"
        )));
    };
    let d = negative_definite_index(*rank, spin_c)?;
    let k = inv.expected_dimension()?;
    let mut out = inv.clone();
    if d == 0 {
        out.trace.push(format!(
            "blowup by {block} (c² = {}): d = 0, invariant unchanged",
            spin_c.c_square
        ));
        return Ok(Blowup {
            invariant: out,
            sw_preserved: TriState::Yes,
        });
    }
    let gap = d.unsigned_abs();
    out.gamma_power = out
        .gamma_power
        .checked_add(gap)
        .ok_or(Error::Overflow("γ power"))?;
    out.total_d = out
        .total_d
        .checked_add(d)
        .ok_or(Error::Overflow("total d"))?;
    out.stem_degree = out
        .stem_degree
        .checked_add(d.checked_mul(2).ok_or(Error::Overflow("stem degree"))?)
        .ok_or(Error::Overflow("stem degree"))?;
    out.nonequiv_class = StemElement::unknown(out.stem_degree);
    out.equivariant_nonzero = if inv.total_b_plus == 0 && inv.equivariant_nonzero == TriState::Yes {
        TriState::Yes
    } else {
        TriState::Unknown
    };
    let sw_preserved = if i128::from(gap) * 2 <= i128::from(k) {
        TriState::Yes
    } else {
        TriState::Unknown
    };
    out.trace.push(format!(
        "blowup by {block} (c² = {}): d = {d}, smash with γ(ℂ)^{gap}; 2|d| = {} vs k = {k}: SW preserved {sw_preserved}",
        spin_c.c_square,
        2 * gap
    ));
    Ok(Blowup {
        invariant: out,
        sw_preserved,
    })
}
