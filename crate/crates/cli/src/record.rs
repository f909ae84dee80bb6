use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA_VERSION: &str = "1";

/// One line of output. Maps are ordered so serialization is canonical.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub command: String,
    pub inputs: BTreeMap<String, Value>,
    pub outputs: BTreeMap<String, Value>,
    pub version: String,
    pub elapsed_ms: u64,
    #[serde(default)]
    pub cache_hit: bool,
}

impl ResultRecord {
    pub fn new(command: &str, inputs: BTreeMap<String, Value>) -> Self {
        ResultRecord {
            command: command.to_owned(),
            inputs,
            outputs: BTreeMap::new(),
            version: SCHEMA_VERSION.to_owned(),
            elapsed_ms: 0,
            cache_hit: false,
        }
    }

    /// `(command, canonical inputs, schema version)`.
    pub fn cache_key(&self) -> String {
        cache_key(&self.command, &self.inputs)
    }
}

pub fn cache_key(command: &str, inputs: &BTreeMap<String, Value>) -> String {
    let inputs = serde_json::to_string(inputs).expect("json values serialize");
    format!("{command}\u{1f}{inputs}\u{1f}{SCHEMA_VERSION}")
}

/// Builds an ordered key/value map from `key => value` pairs.
#[macro_export]
macro_rules! kv {
    ($($k:expr => $v:expr),* $(,)?) => {{
        let mut m = std::collections::BTreeMap::<String, serde_json::Value>::new();
        $( m.insert($k.to_string(), serde_json::to_value($v).expect("serializable")); )*
        m
    }};
}

#[cfg(test)]
mod tests {
    use super::*;
    use qmass_core::{GaussianInt, MatGamma, Rational};

    #[test]
    fn round_trips_through_json() {
        let mut rec = ResultRecord::new("dyadic", kv!("n" => 3));
        rec.outputs = kv!(
            "density" => Rational::new(3, 2),
            "matrix" => MatGamma::new(1, GaussianInt::new(-2, 1), 1, GaussianInt::new(-1, 1)),
            "det" => GaussianInt::ONE,
        );
        let line = serde_json::to_string(&rec).unwrap();
        let back: ResultRecord = serde_json::from_str(&line).unwrap();
        assert_eq!(back, rec);
        assert!(line.contains(r#""density":{"num":3,"den":2}"#), "{line}");
        let r: Rational = serde_json::from_value(back.outputs["density"].clone()).unwrap();
        assert_eq!(r, Rational::new(3, 2));
    }
}
