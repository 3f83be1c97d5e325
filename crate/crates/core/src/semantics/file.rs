//! JSON model files.
//!
//! ```json
//! { "worlds": ["w0", "w1"], "root": "w0",
//!   "relations": { "1": [["w0", "w1"]] },
//!   "valuation": { "w1": ["p"] },
//!   "values": { "w1": { "d": "bullet" } } }
//! ```

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Model, ModelError, TokenParseError, ValueToken};
use crate::formula::Agent;

#[derive(Debug, Error)]
pub enum ModelFileError {
    #[error("malformed model file: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("agent key {0:?} is not a positive integer")]
    BadAgent(String),
    #[error("world {world:?}, value name {name:?}: {source}")]
    BadToken {
        world: String,
        name: String,
        #[source]
        source: TokenParseError,
    },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelFile {
    worlds: Vec<String>,
    root: String,
    #[serde(default)]
    relations: BTreeMap<String, Vec<(String, String)>>,
    #[serde(default)]
    valuation: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    values: BTreeMap<String, BTreeMap<String, String>>,
}

impl Model {
    pub fn from_json(text: &str) -> Result<Model, ModelFileError> {
        let file: ModelFile = serde_json::from_str(text)?;
        let mut m = Model::new(file.worlds)?;
        m.set_root(&file.root)?;
        for (key, edges) in &file.relations {
            let agent = key
                .parse::<u32>()
                .ok()
                .and_then(Agent::new)
                .ok_or_else(|| ModelFileError::BadAgent(key.clone()))?;
            for (s, t) in edges {
                m.add_edge(agent, s, t)?;
            }
        }
        for (w, props) in file.valuation {
            for p in props {
                m.set_true(&w, p)?;
            }
        }
        for (w, entries) in file.values {
            for (name, text) in entries {
                let token =
                    text.parse::<ValueToken>()
                        .map_err(|source| ModelFileError::BadToken {
                            world: w.clone(),
                            name: name.clone(),
                            source,
                        })?;
                m.set_value(&w, name, token)?;
            }
        }
        Ok(m)
    }

    /// Pretty-printed JSON; equal models serialise to identical bytes.
    pub fn to_json(&self) -> String {
        let name = |i: usize| self.worlds[i].clone();
        let relations = self
            .relations
            .iter()
            .map(|(agent, succ)| {
                let edges = succ
                    .iter()
                    .enumerate()
                    .flat_map(|(s, ts)| ts.iter().map(move |&t| (s, t)))
                    .map(|(s, t)| (name(s), name(t)))
                    .collect();
                (agent.to_string(), edges)
            })
            .collect();
        let valuation = (0..self.len())
            .map(|w| (name(w), self.true_props(w).iter().cloned().collect()))
            .collect();
        let values = (0..self.len())
            .filter(|&w| !self.explicit_values(w).is_empty())
            .map(|w| {
                let entries = self
                    .explicit_values(w)
                    .iter()
                    .map(|(d, t)| (d.clone(), t.to_string()))
                    .collect();
                (name(w), entries)
            })
            .collect();
        let file = ModelFile {
            worlds: self.worlds.clone(),
            root: self.root().to_string(),
            relations,
            valuation,
            values,
        };
        let mut out = serde_json::to_string_pretty(&file).expect("model serialisation");
        out.push('\n');
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    const SAMPLE: &str = r#"{
        "worlds": ["w", "t1", "t2"], "root": "w",
        "relations": { "1": [["w", "t1"], ["w", "t2"]] },
        "valuation": { "t1": ["p"], "t2": ["p"] },
        "values": { "t1": { "d": "bullet" }, "t2": { "d": "circ" } }
    }"#;

    #[test]
    fn reads_sample() {
        let m = Model::from_json(SAMPLE).unwrap();
        assert_eq!(m.root(), "w");
        assert!(!m.satisfies(&parse("Kv1(p, d)").unwrap()));
        assert!(m.satisfies(&parse("[1]p").unwrap()));
    }

    #[test]
    fn json_round_trip_is_stable() {
        let m = Model::from_json(SAMPLE).unwrap();
        let text = m.to_json();
        let again = Model::from_json(&text).unwrap();
        assert_eq!(m, again);
        assert_eq!(text, again.to_json());
    }

    #[test]
    fn rejects_bad_files() {
        assert!(Model::from_json("{").is_err());
        assert!(Model::from_json(r#"{"worlds": [], "root": "w"}"#).is_err());
        assert!(Model::from_json(r#"{"worlds": ["w"], "root": "x"}"#).is_err());
        assert!(matches!(
            Model::from_json(r#"{"worlds": ["w"], "root": "w", "relations": {"0": []}}"#),
            Err(ModelFileError::BadAgent(_))
        ));
        assert!(matches!(
            Model::from_json(r#"{"worlds": ["w"], "root": "w", "values": {"w": {"d": "nope"}}}"#),
            Err(ModelFileError::BadToken { .. })
        ));
        assert!(Model::from_json(
            r#"{"worlds": ["w"], "root": "w", "relations": {"1": [["w", "v"]]}}"#
        )
        .is_err());
        assert!(Model::from_json(r#"{"worlds": ["w"], "root": "w", "extra": 1}"#).is_err());
    }
}
