//! JSON documents, streams and built-in fixtures.

use serde::{Deserialize, Serialize};

use crate::algebra::{ElementId, FiniteAlgebra};
use crate::error::{Error, Result};
use crate::limits::Limits;

/// Wire form: `arrow[i][j]` names `elements[i] -> elements[j]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub elements: Vec<String>,
    pub one: String,
    pub zero: String,
    pub arrow: Vec<Vec<String>>,
}

impl AlgebraDocument {
    pub fn from_algebra(alg: &FiniteAlgebra) -> Self {
        AlgebraDocument {
            name: alg.label_name().map(str::to_string),
            elements: alg.elements().to_vec(),
            one: alg.name(alg.one()).to_string(),
            zero: alg.name(alg.zero()).to_string(),
            arrow: alg
                .ids()
                .map(|x| {
                    alg.ids()
                        .map(|y| alg.name(alg.imp(x, y)).to_string())
                        .collect()
                })
                .collect(),
        }
    }

    pub fn into_algebra(self, limits: &Limits) -> Result<FiniteAlgebra> {
        let n = self.elements.len();
        if n > limits.max_elements {
            return Err(Error::TooLarge {
                n,
                cap: limits.max_elements,
            });
        }
        if n < 2 {
            return Err(Error::Trivial);
        }
        for (i, e) in self.elements.iter().enumerate() {
            if self.elements[..i].contains(e) {
                return Err(Error::DuplicateElement(e.clone()));
            }
        }
        let lookup = |field: String, name: &str| {
            self.elements
                .iter()
                .position(|e| e == name)
                .map(ElementId)
                .ok_or_else(|| Error::UnknownElement {
                    field,
                    name: name.to_string(),
                })
        };
        let one = lookup("one".into(), &self.one)?;
        let zero = lookup("zero".into(), &self.zero)?;
        if self.arrow.len() != n {
            return Err(Error::Dimension(format!(
                "arrow has {} rows, expected {n}",
                self.arrow.len()
            )));
        }
        let mut flat = Vec::with_capacity(n * n);
        for (i, row) in self.arrow.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Dimension(format!(
                    "arrow[{i}] has {} entries, expected {n}",
                    row.len()
                )));
            }
            for (j, v) in row.iter().enumerate() {
                flat.push(lookup(format!("arrow[{i}][{j}]"), v)?);
            }
        }
        FiniteAlgebra::from_flat(self.name.clone(), self.elements.clone(), flat, one, zero)
    }
}

/// Parses one document with the given caps.
pub fn parse_algebra_with(text: &str, limits: &Limits) -> Result<FiniteAlgebra> {
    let doc: AlgebraDocument = serde_json::from_str(text).map_err(|e| Error::Malformed {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    doc.into_algebra(limits)
}

/// Parses one document with default caps.
pub fn parse_algebra(text: &str) -> Result<FiniteAlgebra> {
    parse_algebra_with(text, &Limits::default())
}

/// Parses a stream of one document per non-blank line.
pub fn parse_stream(text: &str, limits: &Limits) -> Result<Vec<FiniteAlgebra>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            parse_algebra_with(l, limits).map_err(|e| match e {
                Error::Malformed {
                    column, message, ..
                } => Error::Malformed {
                    line: i + 1,
                    column,
                    message,
                },
                other => other,
            })
        })
        .collect()
}

/// Single-line canonical JSON.
pub fn serialize_algebra(alg: &FiniteAlgebra) -> String {
    serde_json::to_string(&AlgebraDocument::from_algebra(alg)).expect("document serializes")
}

/// One document per line.
pub fn serialize_stream<'a>(algs: impl IntoIterator<Item = &'a FiniteAlgebra>) -> String {
    algs.into_iter()
        .map(|a| serialize_algebra(a) + "\n")
        .collect()
}

const FIXTURES: &[(&str, &str)] = &[
    ("benzene6", include_str!("../fixtures/benzene6.json")),
    ("ioml10", include_str!("../fixtures/ioml10.json")),
    ("ioml6-full", include_str!("../fixtures/ioml6-full.json")),
    ("sasaki6", include_str!("../fixtures/sasaki6.json")),
    ("boolean4", include_str!("../fixtures/boolean4.json")),
];

pub fn fixture_names() -> Vec<&'static str> {
    FIXTURES.iter().map(|(n, _)| *n).collect()
}

pub fn fixture(name: &str) -> Result<FiniteAlgebra> {
    let (_, text) = FIXTURES
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::UnknownFixture(name.to_string()))?;
    parse_algebra(text)
}

/// Raw fixture document text.
pub fn fixture_text(name: &str) -> Result<&'static str> {
    FIXTURES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| *t)
        .ok_or_else(|| Error::UnknownFixture(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_roundtrip_byte_stable() {
        for name in fixture_names() {
            let text = fixture_text(name).unwrap();
            let alg = fixture(name).unwrap();
            assert_eq!(serialize_algebra(&alg) + "\n", text, "{name}");
        }
    }

    #[test]
    fn rejects_bad_documents() {
        let cases = [
            (
                r#"{"elements":["0"],"one":"0","zero":"0","arrow":[["0"]]}"#,
                "trivial",
            ),
            (
                r#"{"elements":["0","0"],"one":"0","zero":"0","arrow":[]}"#,
                "duplicate",
            ),
            (
                r#"{"elements":["0","1"],"one":"1","zero":"0","arrow":[["1","1"]]}"#,
                "rows",
            ),
            (
                r#"{"elements":["0","1"],"one":"1","zero":"0","arrow":[["1","q"],["0","1"]]}"#,
                "arrow[0][1]",
            ),
            (
                r#"{"elements":["0","1"],"one":"1","zero":"0","arrow":[["1","1"],["1","1"]]}"#,
                "BE3",
            ),
            (
                r#"{"elements":["0","1"],"one":"1","zero":"0","arrow":[["0","1"],["0","1"]]}"#,
                "lower bound",
            ),
            (r#"{"elements":["0","1"], "one":"1""#, "line 1"),
        ];
        for (text, needle) in cases {
            let err = parse_algebra(text).unwrap_err().to_string();
            assert!(err.contains(needle), "{err} lacks {needle}");
        }
    }

    #[test]
    fn element_cap_applies() {
        let limits = Limits {
            max_elements: 5,
            ..Limits::default()
        };
        let err = parse_algebra_with(fixture_text("benzene6").unwrap(), &limits).unwrap_err();
        assert_eq!(err, Error::TooLarge { n: 6, cap: 5 });
    }
}
