//! Catalog of building blocks and their Seiberg-Witten data.
//!
//! The Seiberg-Witten basic classes of a simply connected minimal elliptic surface
//! `E(p_g; m, n)` are multiples `κ·f` of an indivisible class `f`, with
//!
//! ```text
//! κ = (p_g-1-2a)·mn + (m-2b-1)·n + (n-2c-1)·m,   0 ≤ a < p_g, 0 ≤ b < m, 0 ≤ c < n,
//! SW(κ·f) = C(p_g-1, a).
//! ```
//!
//! For coprime `m, n` the map `(a, b, c) ↦ a·mn + b·n + c·m` is injective on that
//! box, so every multiple comes from exactly one triple and values are assigned,
//! never summed.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::lattice::{SpinC, TopProfile};
use crate::{Error, Parity, Result};

/// A class declared to have odd Seiberg-Witten invariant on a generic Kähler block.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabelledClass {
    pub label: String,
    pub c_square: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BuildingBlock {
    /// Simply connected minimal elliptic surface with geometric genus `p_g` and
    /// coprime multiple fibers `m ≤ n`.
    EllipticSurface { p_g: u64, m: u64, n: u64 },
    /// The K3 surface, `E(1; 1, 1)`.
    K3,
    /// Simply connected symplectic 4-manifold, `b₁ = 0`, `b⁺` odd.
    SymplecticGeneric { b_plus: u64 },
    /// Simply connected Kähler surface with its declared basic set (the classes
    /// with odd Seiberg-Witten invariant).
    KaehlerGeneric {
        b_plus: u64,
        odd_basic: Vec<LabelledClass>,
    },
    /// Negative definite, `b₁ = 0`, with diagonal intersection form `-I_rank`.
    NegativeDefinite { rank: u64 },
    /// `b₁ = b₂ = 0`; neutral for connected sums.
    HomotopySphereLike,
}

/// Which spin^c structure of a block is meant.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub enum SpinCChoice {
    /// The canonical class of an almost complex block; the all-ones
    /// characteristic vector on a negative definite block.
    #[default]
    Canonical,
    /// `κ·f` on an elliptic surface.
    FiberMultiple(i64),
    /// A named class of a Kähler block.
    Labelled(String),
    /// An explicit characteristic class (negative definite blocks).
    Characteristic(SpinC),
}

impl fmt::Display for SpinCChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpinCChoice::Canonical => write!(f, "canonical"),
            SpinCChoice::FiberMultiple(k) => write!(f, "{k}·f"),
            SpinCChoice::Labelled(l) => write!(f, "class '{l}'"),
            SpinCChoice::Characteristic(s) => write!(f, "characteristic c² = {}", s.c_square),
        }
    }
}

/// A Seiberg-Witten value: an exact integer when the catalog knows it, otherwise
/// only its parity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SwValue {
    Integer(BigInt),
    Parity(Parity),
}

impl SwValue {
    pub fn parity(&self) -> Parity {
        match self {
            SwValue::Integer(v) => {
                if v.is_odd() {
                    Parity::Odd
                } else {
                    Parity::Even
                }
            }
            SwValue::Parity(p) => *p,
        }
    }
}

impl fmt::Display for SwValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SwValue::Integer(v) => write!(f, "{v}"),
            SwValue::Parity(p) => write!(f, "{p}"),
        }
    }
}

impl BuildingBlock {
    /// Validated elliptic surface. `(n, m)` input with `m > n` is swapped.
    pub fn elliptic(p_g: u64, m: u64, n: u64) -> Result<Self> {
        let (m, n) = normalize_multiplicities(p_g, m, n)?;
        Ok(BuildingBlock::EllipticSurface { p_g, m, n })
    }

    pub fn symplectic(b_plus: u64) -> Result<Self> {
        check_odd_b_plus(b_plus)?;
        Ok(BuildingBlock::SymplecticGeneric { b_plus })
    }

    pub fn kaehler(b_plus: u64, odd_basic: Vec<LabelledClass>) -> Result<Self> {
        let block = BuildingBlock::KaehlerGeneric { b_plus, odd_basic };
        block.validate()?;
        Ok(block)
    }

    pub fn negative_definite(rank: u64) -> Self {
        BuildingBlock::NegativeDefinite { rank }
    }

    /// Checks the catalog invariants of a (possibly hand-built) block.
    pub fn validate(&self) -> Result<()> {
        match self {
            BuildingBlock::EllipticSurface { p_g, m, n } => {
                check_multiplicities(*p_g, *m, *n)?;
                if m > n {
                    return Err(Error::InvalidParameters {
                        p_g: *p_g,
                        m: *m,
                        n: *n,
                        reason: "multiplicities must satisfy m <= n".into(),
                    });
                }
                Ok(())
            }
            BuildingBlock::SymplecticGeneric { b_plus } => check_odd_b_plus(*b_plus),
            BuildingBlock::KaehlerGeneric { b_plus, odd_basic } => {
                check_odd_b_plus(*b_plus)?;
                let mut labels: Vec<&str> = odd_basic.iter().map(|c| c.label.as_str()).collect();
                labels.sort_unstable();
                if let Some(w) = labels.windows(2).find(|w| w[0] == w[1]) {
                    return Err(Error::InvalidBlock(format!(
                        "duplicate basic class label '{}'",
                        w[0]
                    )));
                }
                // every class with nonzero invariant has k = 0, so c² = 8d + σ is fixed
                if let Some(first) = odd_basic.first() {
                    if let Some(other) = odd_basic.iter().find(|c| c.c_square != first.c_square) {
                        return Err(Error::InvalidBlock(format!(
                            "basic classes must share c²: '{}' has {} but '{}' has {}",
                            first.label, first.c_square, other.label, other.c_square
                        )));
                    }
                }
                Ok(())
            }
            BuildingBlock::K3
            | BuildingBlock::NegativeDefinite { .. }
            | BuildingBlock::HomotopySphereLike => Ok(()),
        }
    }

    /// `(p_g, m, n)` for elliptic blocks, with K3 as `(1, 1, 1)`.
    pub fn elliptic_triple(&self) -> Option<(u64, u64, u64)> {
        match self {
            BuildingBlock::K3 => Some((1, 1, 1)),
            BuildingBlock::EllipticSurface { p_g, m, n } => Some((*p_g, *m, *n)),
            _ => None,
        }
    }

    /// Blocks whose canonical spin^c structure comes from an almost complex structure.
    pub fn is_almost_complex(&self) -> bool {
        matches!(
            self,
            BuildingBlock::EllipticSurface { .. }
                | BuildingBlock::K3
                | BuildingBlock::SymplecticGeneric { .. }
                | BuildingBlock::KaehlerGeneric { .. }
        )
    }
}

impl fmt::Display for BuildingBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BuildingBlock::EllipticSurface { p_g, m, n } => write!(f, "E(p_g={p_g}; {m}, {n})"),
            BuildingBlock::K3 => write!(f, "K3"),
            BuildingBlock::SymplecticGeneric { b_plus } => write!(f, "symplectic(b⁺={b_plus})"),
            BuildingBlock::KaehlerGeneric { b_plus, .. } => write!(f, "kaehler(b⁺={b_plus})"),
            BuildingBlock::NegativeDefinite { rank } => write!(f, "negative-definite(rank {rank})"),
            BuildingBlock::HomotopySphereLike => write!(f, "S⁴"),
        }
    }
}

fn check_odd_b_plus(b_plus: u64) -> Result<()> {
    if b_plus % 2 == 1 {
        Ok(())
    } else {
        Err(Error::InvalidBlock(format!(
            "b⁺ = {b_plus}: simply connected almost complex blocks have odd positive b⁺"
        )))
    }
}

fn check_multiplicities(p_g: u64, m: u64, n: u64) -> Result<()> {
    let invalid = |reason: &str| Error::InvalidParameters {
        p_g,
        m,
        n,
        reason: reason.into(),
    };
    if m == 0 || n == 0 {
        return Err(invalid("multiplicities must be at least 1"));
    }
    if m.gcd(&n) != 1 {
        return Err(invalid("multiplicities must be coprime"));
    }
    Ok(())
}

/// Returns `(min(m, n), max(m, n))` after checking `m, n ≥ 1` and coprimality.
pub fn normalize_multiplicities(p_g: u64, m: u64, n: u64) -> Result<(u64, u64)> {
    check_multiplicities(p_g, m, n)?;
    if m > n {
        log::warn!("elliptic multiplicities ({m}, {n}) swapped to ({n}, {m})");
        Ok((n, m))
    } else {
        Ok((m, n))
    }
}

/// Betti numbers of a catalog block.
///
/// `b_minus` is reported only where it is pinned down: K3 (19), negative definite
/// blocks and homotopy spheres.
pub fn profile(block: &BuildingBlock) -> TopProfile {
    match block {
        BuildingBlock::K3 | BuildingBlock::EllipticSurface { p_g: 1, m: 1, n: 1 } => {
            TopProfile::new(0, 3, 19)
        }
        BuildingBlock::EllipticSurface { p_g, .. } => {
            TopProfile::partial(0, p_g.saturating_mul(2).saturating_add(1))
        }
        BuildingBlock::SymplecticGeneric { b_plus }
        | BuildingBlock::KaehlerGeneric { b_plus, .. } => TopProfile::partial(0, *b_plus),
        BuildingBlock::NegativeDefinite { rank } => TopProfile::new(0, 0, *rank),
        BuildingBlock::HomotopySphereLike => TopProfile::new(0, 0, 0),
    }
}

/// `true` iff `C(n, k)` is odd: by Lucas' theorem, iff the bits of `k` are a subset
/// of the bits of `n`. `k > n` always fails the subset test.
pub fn odd_binomial(n: u64, k: u64) -> bool {
    k & n == k
}

/// Exact binomial coefficient.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// The basic-class table of `E(p_g; m, n)`: multiples of `f` mapped to their
/// Seiberg-Witten values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasicClassTable {
    pub p_g: u64,
    pub m: u64,
    pub n: u64,
    entries: BTreeMap<i64, BigUint>,
}

impl BasicClassTable {
    /// Value at `key·f`; zero for multiples outside the table.
    pub fn get(&self, key: i64) -> BigUint {
        self.entries.get(&key).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries in ascending key order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &BigUint)> + '_ {
        self.entries.iter().map(|(k, v)| (*k, v))
    }

    pub fn max_key(&self) -> Option<i64> {
        self.entries.keys().next_back().copied()
    }
}

fn check_table_params(p_g: u64, m: u64, n: u64) -> Result<()> {
    if p_g == 0 {
        return Err(Error::DolgachevUnsupported);
    }
    check_multiplicities(p_g, m, n)?;
    if m > n {
        return Err(Error::InvalidParameters {
            p_g,
            m,
            n,
            reason: "multiplicities must satisfy m <= n".into(),
        });
    }
    Ok(())
}

/// Precomputed constants for the key formula, in `i128` so the intermediate
/// products are exact; results are narrowed to `i64` with an overflow check.
struct KeyFormula {
    mn: i128,
    m: i128,
    n: i128,
    top: i128,
}

impl KeyFormula {
    fn new(p_g: u64, m: u64, n: u64) -> Result<Self> {
        let ovf = || Error::Overflow("basic class multiple");
        let (p, m, n) = (p_g as i128, m as i128, n as i128);
        let mn = m.checked_mul(n).ok_or_else(ovf)?;
        let top = (p - 1)
            .checked_mul(mn)
            .and_then(|x| x.checked_add((m - 1).checked_mul(n)?))
            .and_then(|x| x.checked_add((n - 1).checked_mul(m)?))
            .ok_or_else(ovf)?;
        i64::try_from(top).map_err(|_| ovf())?;
        Ok(KeyFormula { mn, m, n, top })
    }

    /// `(p_g-1-2a)mn + (m-2b-1)n + (n-2c-1)m = top - 2(a·mn + b·n + c·m)`.
    fn key(&self, a: u64, b: u64, c: u64) -> i64 {
        let offset = a as i128 * self.mn + b as i128 * self.n + c as i128 * self.m;
        // |key| <= top, so the narrowing cannot fail once `top` fits
        (self.top - 2 * offset) as i64
    }
}

/// Largest multiple `(p_g-1)mn + (m-1)n + (n-1)m`, attained at `a = b = c = 0`.
pub fn max_key(p_g: u64, m: u64, n: u64) -> Result<i64> {
    check_table_params(p_g, m, n)?;
    Ok(KeyFormula::new(p_g, m, n)?.top as i64)
}

pub fn basic_class_table(p_g: u64, m: u64, n: u64) -> Result<BasicClassTable> {
    check_table_params(p_g, m, n)?;
    let formula = KeyFormula::new(p_g, m, n)?;
    let mut entries = BTreeMap::new();
    let mut value = BigUint::one();
    for a in 0..p_g {
        if a > 0 {
            value = value * (p_g - a) / a;
        }
        for b in 0..m {
            for c in 0..n {
                let prev = entries.insert(formula.key(a, b, c), value.clone());
                debug_assert!(prev.is_none(), "basic class multiples collide");
            }
        }
    }
    Ok(BasicClassTable { p_g, m, n, entries })
}

/// Multiples of `f` carrying an odd Seiberg-Witten invariant, ascending.
pub fn recognizable_set(p_g: u64, m: u64, n: u64) -> Result<Vec<i64>> {
    check_table_params(p_g, m, n)?;
    let formula = KeyFormula::new(p_g, m, n)?;
    let mut keys = Vec::new();
    for a in (0..p_g).filter(|&a| odd_binomial(p_g - 1, a)) {
        for b in 0..m {
            for c in 0..n {
                keys.push(formula.key(a, b, c));
            }
        }
    }
    keys.sort_unstable();
    Ok(keys)
}

/// Value of the elliptic table at `key`, located by decomposing the offset from the
/// top class instead of materialising the table.
fn elliptic_value(p_g: u64, m: u64, n: u64, key: i64) -> Result<BigUint> {
    let formula = KeyFormula::new(p_g, m, n)?;
    let gap = formula.top - key as i128;
    if gap < 0 || gap % 2 != 0 {
        return Ok(BigUint::zero());
    }
    let offset = gap / 2;
    for a in 0..p_g {
        let r = offset - a as i128 * formula.mn;
        if r < 0 {
            break;
        }
        for b in 0..m {
            let s = r - b as i128 * formula.n;
            if s < 0 {
                break;
            }
            if s % formula.m == 0 && s / formula.m < formula.n {
                return Ok(binomial(p_g - 1, a));
            }
        }
    }
    Ok(BigUint::zero())
}

/// Seiberg-Witten value of a catalog block at a chosen spin^c structure.
///
/// The canonical class of a symplectic block carries `+1` (the sign convention
/// is fixed once; all parity logic is independent of it). Blocks with `b⁺ = 1`
/// have chamber-dependent invariants and report [`Error::UnknownSw`] unless their
/// data is declared.
pub fn sw_value(block: &BuildingBlock, choice: &SpinCChoice) -> Result<SwValue> {
    let unknown = || Error::UnknownSw {
        block: block.to_string(),
        class: choice.to_string(),
    };
    match (block, choice) {
        (BuildingBlock::K3 | BuildingBlock::EllipticSurface { .. }, _) => {
            let (p_g, m, n) = block.elliptic_triple().expect("elliptic block");
            if p_g == 0 {
                return Err(unknown());
            }
            match choice {
                SpinCChoice::Canonical => Ok(SwValue::Integer(BigInt::one())),
                SpinCChoice::FiberMultiple(k) => {
                    let (m, n) = (m.min(n), m.max(n));
                    Ok(SwValue::Integer(elliptic_value(p_g, m, n, *k)?.into()))
                }
                _ => Err(unknown()),
            }
        }
        (BuildingBlock::SymplecticGeneric { b_plus }, SpinCChoice::Canonical) if *b_plus > 1 => {
            Ok(SwValue::Integer(BigInt::one()))
        }
        (BuildingBlock::KaehlerGeneric { b_plus, .. }, SpinCChoice::Canonical) if *b_plus > 1 => {
            Ok(SwValue::Integer(BigInt::one()))
        }
        (BuildingBlock::KaehlerGeneric { odd_basic, .. }, SpinCChoice::Labelled(label)) => {
            let odd = odd_basic.iter().any(|c| &c.label == label);
            Ok(SwValue::Parity(if odd {
                Parity::Odd
            } else {
                Parity::Even
            }))
        }
        _ => Err(unknown()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    // Pascal's triangle, independent of the multiplicative formula
    fn pascal(n: usize) -> Vec<Vec<BigUint>> {
        let mut rows: Vec<Vec<BigUint>> = vec![vec![BigUint::one()]];
        for i in 1..=n {
            let prev = &rows[i - 1];
            let mut row = vec![BigUint::one(); i + 1];
            for k in 1..i {
                row[k] = &prev[k - 1] + &prev[k];
            }
            rows.push(row);
        }
        rows
    }

    // straight triple enumeration of the key formula in i64
    fn table_oracle(p_g: i64, m: i64, n: i64) -> BTreeMap<i64, BigUint> {
        let row = &pascal(p_g as usize - 1)[p_g as usize - 1];
        let mut out: BTreeMap<i64, BigUint> = BTreeMap::new();
        for a in 0..p_g {
            for b in 0..m {
                for c in 0..n {
                    let key = (p_g - 1 - 2 * a) * m * n + (m - 2 * b - 1) * n + (n - 2 * c - 1) * m;
                    *out.entry(key).or_default() += &row[a as usize];
                }
            }
        }
        out
    }

    fn table_map(t: &BasicClassTable) -> BTreeMap<i64, BigUint> {
        t.iter().map(|(k, v)| (k, v.clone())).collect()
    }

    fn big(v: u32) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn k3_profile_matches_index() {
        let p = profile(&BuildingBlock::K3);
        assert_eq!(p, TopProfile::new(0, 3, 19));
        assert_eq!(p.signature(), Some(-16));
        let d = crate::lattice::dirac_index(0, -16).unwrap();
        assert_eq!(crate::lattice::expected_dimension(d, 3, 0).unwrap(), 0);
        assert_eq!(
            profile(&BuildingBlock::EllipticSurface { p_g: 1, m: 1, n: 1 }),
            p
        );
    }

    #[test]
    fn simple_profiles() {
        assert_eq!(
            profile(&BuildingBlock::HomotopySphereLike),
            TopProfile::new(0, 0, 0)
        );
        let nd = profile(&BuildingBlock::NegativeDefinite { rank: 1 });
        assert_eq!(nd, TopProfile::new(0, 0, 1));
        assert_eq!(nd.signature(), Some(-1));
        let e = profile(&BuildingBlock::elliptic(3, 1, 2).unwrap());
        assert_eq!((e.b1, e.b_plus, e.b_minus), (0, 7, None));
    }

    #[test]
    fn table_examples() {
        let t = basic_class_table(1, 1, 1).unwrap();
        assert_eq!(table_map(&t), BTreeMap::from([(0, big(1))]));

        let t = basic_class_table(3, 1, 1).unwrap();
        assert_eq!(table_map(&t), table_oracle(3, 1, 1));
        assert_eq!(
            table_map(&t),
            BTreeMap::from([(2, big(1)), (0, big(2)), (-2, big(1))])
        );

        let t = basic_class_table(1, 1, 2).unwrap();
        assert_eq!(table_map(&t), BTreeMap::from([(1, big(1)), (-1, big(1))]));
    }

    #[test]
    fn table_rejects_bad_parameters() {
        assert!(matches!(
            basic_class_table(3, 2, 4),
            Err(Error::InvalidParameters { .. })
        ));
        assert!(matches!(
            basic_class_table(3, 3, 2),
            Err(Error::InvalidParameters { .. })
        ));
        assert!(matches!(
            basic_class_table(3, 0, 2),
            Err(Error::InvalidParameters { .. })
        ));
        assert_eq!(basic_class_table(0, 1, 1), Err(Error::DolgachevUnsupported));
    }

    #[test]
    fn recognizable_examples() {
        assert_eq!(recognizable_set(3, 1, 1).unwrap(), vec![-2, 2]);
        assert_eq!(recognizable_set(1, 1, 1).unwrap(), vec![0]);
        assert_eq!(
            recognizable_set(1, 2, 3).unwrap(),
            vec![-7, -3, -1, 1, 3, 7]
        );
    }

    #[test]
    fn odd_binomial_examples() {
        assert!(!odd_binomial(2, 1));
        assert!(odd_binomial(0, 0));
        // C(10, 2) = 45
        assert_eq!(pascal(10)[10][2], big(45));
        assert!(odd_binomial(10, 2));
        assert!(!odd_binomial(3, 4));
    }

    #[test]
    fn odd_binomial_matches_pascal_exhaustively() {
        let rows = pascal(30);
        for n in 0..=30u64 {
            for k in 0..=n {
                let exact = &rows[n as usize][k as usize];
                assert_eq!(odd_binomial(n, k), exact.bit(0), "C({n},{k})");
                assert_eq!(&binomial(n, k), exact);
            }
        }
    }

    #[test]
    fn sw_value_examples() {
        assert_eq!(
            sw_value(&BuildingBlock::K3, &SpinCChoice::FiberMultiple(0)).unwrap(),
            SwValue::Integer(BigInt::one())
        );
        let e = BuildingBlock::elliptic(3, 1, 1).unwrap();
        assert_eq!(
            sw_value(&e, &SpinCChoice::FiberMultiple(0)).unwrap(),
            SwValue::Integer(BigInt::from(2))
        );
        assert_eq!(
            sw_value(&e, &SpinCChoice::FiberMultiple(4)).unwrap(),
            SwValue::Integer(BigInt::zero())
        );
        assert_eq!(
            sw_value(
                &BuildingBlock::symplectic(7).unwrap(),
                &SpinCChoice::Canonical
            )
            .unwrap(),
            SwValue::Integer(BigInt::one())
        );
    }

    #[test]
    fn sw_value_unknowns() {
        let s = BuildingBlock::symplectic(7).unwrap();
        assert!(matches!(
            sw_value(&s, &SpinCChoice::FiberMultiple(1)),
            Err(Error::UnknownSw { .. })
        ));
        let s1 = BuildingBlock::symplectic(1).unwrap();
        assert!(matches!(
            sw_value(&s1, &SpinCChoice::Canonical),
            Err(Error::UnknownSw { .. })
        ));
        let dolgachev = BuildingBlock::elliptic(0, 2, 3).unwrap();
        assert!(matches!(
            sw_value(&dolgachev, &SpinCChoice::Canonical),
            Err(Error::UnknownSw { .. })
        ));
        assert!(matches!(
            sw_value(&BuildingBlock::HomotopySphereLike, &SpinCChoice::Canonical),
            Err(Error::UnknownSw { .. })
        ));
    }

    #[test]
    fn kaehler_parities_come_from_declared_set() {
        let k = BuildingBlock::kaehler(
            5,
            vec![LabelledClass {
                label: "K".into(),
                c_square: 3,
            }],
        )
        .unwrap();
        assert_eq!(
            sw_value(&k, &SpinCChoice::Labelled("K".into()))
                .unwrap()
                .parity(),
            Parity::Odd
        );
        assert_eq!(
            sw_value(&k, &SpinCChoice::Labelled("L".into()))
                .unwrap()
                .parity(),
            Parity::Even
        );
    }

    #[test]
    fn block_validation() {
        assert_eq!(
            BuildingBlock::elliptic(3, 3, 2).unwrap(),
            BuildingBlock::EllipticSurface { p_g: 3, m: 2, n: 3 }
        );
        assert!(BuildingBlock::elliptic(3, 2, 4).is_err());
        assert!(BuildingBlock::symplectic(4).is_err());
        assert!(BuildingBlock::symplectic(0).is_err());
        let dup = vec![
            LabelledClass {
                label: "a".into(),
                c_square: 1,
            },
            LabelledClass {
                label: "a".into(),
                c_square: 1,
            },
        ];
        assert!(BuildingBlock::kaehler(3, dup).is_err());
        let mixed = vec![
            LabelledClass {
                label: "a".into(),
                c_square: 1,
            },
            LabelledClass {
                label: "b".into(),
                c_square: 9,
            },
        ];
        assert!(BuildingBlock::kaehler(3, mixed).is_err());
        assert!(BuildingBlock::EllipticSurface { p_g: 1, m: 3, n: 2 }
            .validate()
            .is_err());
    }

    #[test]
    fn sw_lookup_agrees_with_table() {
        for (p, m, n) in [(3, 1, 1), (5, 2, 3), (4, 3, 4), (7, 1, 5)] {
            let t = basic_class_table(p, m, n).unwrap();
            let block = BuildingBlock::elliptic(p, m, n).unwrap();
            let top = t.max_key().unwrap();
            for key in -top - 3..=top + 3 {
                let SwValue::Integer(v) =
                    sw_value(&block, &SpinCChoice::FiberMultiple(key)).unwrap()
                else {
                    panic!("elliptic values are integers")
                };
                assert_eq!(v, BigInt::from(t.get(key)), "E({p};{m},{n}) at {key}");
            }
        }
    }

    #[test]
    fn key_overflow_is_reported() {
        assert_eq!(
            max_key(u64::MAX, 1, 2),
            Err(Error::Overflow("basic class multiple"))
        );
    }

    fn coprime_triples() -> impl Strategy<Value = (u64, u64, u64)> {
        (1u64..=40, 1u64..=12, 1u64..=12)
            .prop_filter("coprime, p_g·m·n ≤ 5000", |(p, m, n)| {
                m.gcd(n) == 1 && p * m * n <= 5000
            })
            .prop_map(|(p, m, n)| (p, m.min(n), m.max(n)))
    }

    proptest! {
        #[test]
        fn table_structure((p, m, n) in coprime_triples()) {
            let t = basic_class_table(p, m, n).unwrap();
            prop_assert_eq!(t.len() as u64, p * m * n);
            for (k, v) in t.iter() {
                prop_assert_eq!(&t.get(-k), v);
            }
            let top = ((p - 1) * m * n + (m - 1) * n + (n - 1) * m) as i64;
            prop_assert_eq!(t.max_key(), Some(top));
            prop_assert_eq!(t.get(top), BigUint::one());
            prop_assert_eq!(max_key(p, m, n).unwrap(), top);
        }

        #[test]
        fn recognizable_is_odd_filter((p, m, n) in coprime_triples()) {
            let t = basic_class_table(p, m, n).unwrap();
            let filtered: Vec<i64> = t.iter().filter(|(_, v)| v.bit(0)).map(|(k, _)| k).collect();
            prop_assert_eq!(recognizable_set(p, m, n).unwrap(), filtered);
        }

        #[test]
        fn expected_dimension_constant_on_table((p, m, n) in coprime_triples()) {
            // every basic class has k = 0, which pins d = (b⁺ + 1)/2 = p_g + 1
            let b_plus = profile(&BuildingBlock::elliptic(p, m, n).unwrap()).b_plus as i64;
            let d = (b_plus + 1) / 2;
            prop_assert_eq!(d, p as i64 + 1);
            let t = basic_class_table(p, m, n).unwrap();
            for _ in t.iter() {
                prop_assert_eq!(crate::lattice::expected_dimension(d, b_plus, 0).unwrap(), 0);
            }
        }
    }

    #[test]
    fn offsets_are_injective_on_grid() {
        for p in 1..=15u64 {
            for n in 1..=9u64 {
                for m in (1..=n).filter(|m| m.gcd(&n) == 1) {
                    let mut seen = std::collections::HashSet::new();
                    for a in 0..p {
                        for b in 0..m {
                            for c in 0..n {
                                assert!(seen.insert(a * m * n + b * n + c * m), "({p},{m},{n})");
                            }
                        }
                    }
                }
            }
        }
    }
}
