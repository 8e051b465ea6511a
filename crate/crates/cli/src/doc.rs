//! The manifold description format.
//!
//! A strict JSON dialect: unknown keys are rejected everywhere so a misspelled
//! field can never silently change a verdict.
//!
//! ```json
//! {
//!   "name": "K3 # K3",
//!   "summands": [
//!     {"type": "k3"},
//!     {"type": "elliptic", "p_g": 3, "m": 1, "n": 1, "class": 2},
//!     {"type": "symplectic", "b_plus": 7},
//!     {"type": "kaehler", "b_plus": 5, "odd_basic": [{"label": "K", "c_square": 4}], "class": "K"},
//!     {"type": "negative_definite", "rank": 2, "c": [1, 3]},
//!     {"type": "s4"}
//!   ]
//! }
//! ```

use serde::{Deserialize, Serialize};
use swcalc::blocks::{BuildingBlock, LabelledClass, SpinCChoice};
use swcalc::cohomotopy::{ConnectedSum, Summand};
use swcalc::lattice::SpinC;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("summand {index}: {message}")]
    Semantic { index: usize, message: String },
    #[error("{0}")]
    Document(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifoldDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub notes: Option<String>,
    pub summands: Vec<BlockDescriptor>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassDescriptor {
    pub label: String,
    pub c_square: i64,
}

/// One summand. `class` selects a spin^c structure; it defaults to the canonical one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum BlockDescriptor {
    Elliptic {
        p_g: u64,
        m: u64,
        n: u64,
        /// Multiple κ of the fiber class.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        class: Option<i64>,
    },
    K3 {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        class: Option<i64>,
    },
    Symplectic {
        b_plus: u64,
    },
    Kaehler {
        b_plus: u64,
        odd_basic: Vec<ClassDescriptor>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        class: Option<String>,
    },
    NegativeDefinite {
        rank: u64,
        /// Coordinates of the characteristic vector in the diagonal basis.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        c: Option<Vec<i64>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        c_square: Option<i64>,
    },
    S4 {},
}

impl BlockDescriptor {
    pub fn to_summand(&self) -> swcalc::Result<Summand> {
        let canonical_or = |choice: Option<SpinCChoice>| choice.unwrap_or_default();
        Ok(match self {
            BlockDescriptor::Elliptic { p_g, m, n, class } => Summand::new(
                BuildingBlock::elliptic(*p_g, *m, *n)?,
                canonical_or(class.map(SpinCChoice::FiberMultiple)),
            ),
            BlockDescriptor::K3 { class } => Summand::new(
                BuildingBlock::K3,
                canonical_or(class.map(SpinCChoice::FiberMultiple)),
            ),
            BlockDescriptor::Symplectic { b_plus } => {
                Summand::canonical(BuildingBlock::symplectic(*b_plus)?)
            }
            BlockDescriptor::Kaehler {
                b_plus,
                odd_basic,
                class,
            } => {
                let classes = odd_basic
                    .iter()
                    .map(|c| LabelledClass {
                        label: c.label.clone(),
                        c_square: c.c_square,
                    })
                    .collect();
                Summand::new(
                    BuildingBlock::kaehler(*b_plus, classes)?,
                    canonical_or(class.clone().map(SpinCChoice::Labelled)),
                )
            }
            BlockDescriptor::NegativeDefinite { rank, c, c_square } => {
                let spin_c = match (c, c_square) {
                    (Some(_), Some(_)) => {
                        return Err(swcalc::Error::InvalidCharacteristic(
                            "give either \"c\" or \"c_square\", not both".into(),
                        ))
                    }
                    (Some(coords), None) => SpinC::from_diagonal_coords(coords.clone())?,
                    (None, Some(sq)) => SpinC::from_square(*sq),
                    (None, None) => SpinC::unit_diagonal(*rank)?,
                };
                Summand::new(
                    BuildingBlock::negative_definite(*rank),
                    SpinCChoice::Characteristic(spin_c),
                )
            }
            BlockDescriptor::S4 {} => Summand::canonical(BuildingBlock::HomotopySphereLike),
        })
    }

    /// Notes about normalisations applied when the block is built.
    pub fn warnings(&self) -> Option<String> {
        match self {
            BlockDescriptor::Elliptic { m, n, .. } if m > n => Some(format!(
                "elliptic multiplicities given as ({m}, {n}); using ({n}, {m})"
            )),
            _ => None,
        }
    }
}

pub fn parse_manifold(text: &str) -> Result<ManifoldDoc, ParseError> {
    let doc: ManifoldDoc = serde_json::from_str(text).map_err(|e| ParseError::Syntax {
        line: e.line(),
        column: e.column(),
        message: strip_position(&e.to_string()),
    })?;
    doc.connected_sum()?;
    Ok(doc)
}

fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg.to_string(),
    }
}

impl ManifoldDoc {
    pub fn connected_sum(&self) -> Result<ConnectedSum, ParseError> {
        if self.summands.is_empty() {
            return Err(ParseError::Document(
                "\"summands\" must not be empty".into(),
            ));
        }
        let mut summands = Vec::with_capacity(self.summands.len());
        for (index, d) in self.summands.iter().enumerate() {
            let semantic = |e: swcalc::Error| ParseError::Semantic {
                index,
                message: e.to_string(),
            };
            let s = d.to_summand().map_err(semantic)?;
            s.block.validate().map_err(semantic)?;
            summands.push(s);
        }
        ConnectedSum::new(summands).map_err(|e| ParseError::Document(e.to_string()))
    }

    pub fn blocks(&self) -> Result<Vec<BuildingBlock>, ParseError> {
        Ok(self
            .connected_sum()?
            .summands()
            .iter()
            .map(|s| s.block.clone())
            .collect())
    }

    pub fn warnings(&self) -> Vec<String> {
        self.summands
            .iter()
            .enumerate()
            .filter_map(|(i, d)| d.warnings().map(|w| format!("summand {i}: {w}")))
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("ManifoldDoc serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn documented_examples() {
        let doc = parse_manifold(r#"{"summands":[{"type":"k3"}]}"#).unwrap();
        assert_eq!(doc.summands, vec![BlockDescriptor::K3 { class: None }]);

        let err = parse_manifold(r#"{"summands":[{"type":"elliptic","p_g":3,"m":2,"n":4}]}"#)
            .unwrap_err();
        assert!(
            matches!(err, ParseError::Semantic { index: 0, .. }),
            "{err:?}"
        );

        let doc = parse_manifold(r#"{"summands":[{"type":"negative_definite","rank":1,"c":[3]}]}"#)
            .unwrap();
        let sum = doc.connected_sum().unwrap();
        match &sum.summands()[0].spin_c {
            SpinCChoice::Characteristic(s) => assert_eq!(s.c_square, -9),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unknown_keys_are_rejected() {
        for text in [
            r#"{"summands":[{"type":"k3","p_g":1}]}"#,
            r#"{"summands":[{"type":"s4","rank":1}]}"#,
            r#"{"summands":[{"type":"symplectic","bplus":3}]}"#,
            r#"{"summands":[{"type":"kaehler","b_plus":3,"odd_basic":[{"label":"K","c_sq":0}]}]}"#,
            r#"{"summands":[],"extra":1}"#,
            r#"{"summands":[{"type":"torus"}]}"#,
        ] {
            assert!(
                matches!(parse_manifold(text), Err(ParseError::Syntax { .. })),
                "{text}"
            );
        }
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err =
            parse_manifold("{\n  \"summands\": [\n    {\"type\": \"k3\",}\n  ]\n}").unwrap_err();
        match err {
            ParseError::Syntax { line, column, .. } => {
                assert_eq!(line, 3);
                assert!(column > 0);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn semantic_errors_carry_index() {
        let err = parse_manifold(
            r#"{"summands":[{"type":"k3"},{"type":"s4"},{"type":"symplectic","b_plus":4}]}"#,
        )
        .unwrap_err();
        assert!(
            matches!(err, ParseError::Semantic { index: 2, .. }),
            "{err:?}"
        );
        let err = parse_manifold(
            r#"{"summands":[{"type":"negative_definite","rank":1,"c":[1],"c_square":-1}]}"#,
        )
        .unwrap_err();
        assert!(matches!(err, ParseError::Semantic { index: 0, .. }));
        assert!(matches!(
            parse_manifold(r#"{"summands":[]}"#),
            Err(ParseError::Document(_))
        ));
    }

    #[test]
    fn swapped_multiplicities_warn() {
        let doc =
            parse_manifold(r#"{"summands":[{"type":"elliptic","p_g":1,"m":3,"n":2}]}"#).unwrap();
        assert_eq!(doc.warnings().len(), 1);
        assert_eq!(doc.blocks().unwrap()[0].elliptic_triple(), Some((1, 2, 3)));
    }
}
