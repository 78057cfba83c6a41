//! JSON reports emitted by the command line.
//!
//! Field order is fixed by the struct definitions and maps are sorted, so identical
//! inputs give byte-identical output.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::automaton::Automaton;
use crate::format;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AutomatonRef {
    pub name: String,
    /// SHA-256 of the automaton printed in the text format.
    pub sha256: String,
}

impl AutomatonRef {
    pub fn of(automaton: &Automaton) -> Self {
        AutomatonRef {
            name: automaton.name().to_string(),
            sha256: fingerprint(automaton),
        }
    }
}

pub fn fingerprint(automaton: &Automaton) -> String {
    let digest = Sha256::digest(format::print(automaton).as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Inputs {
    pub automata: Vec<AutomatonRef>,
    pub params: BTreeMap<String, Value>,
}

/// Whether a result covers the whole object (`closed`) or only a bounded part of it.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Budget {
    pub closed: Option<bool>,
    pub bounded: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub version: String,
    pub inputs: Inputs,
    pub result: Value,
    pub budget: Budget,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            version: VERSION.to_string(),
            inputs: Inputs::default(),
            result: Value::Null,
            budget: Budget::default(),
        }
    }

    pub fn automaton(mut self, automaton: &Automaton) -> Self {
        self.inputs.automata.push(AutomatonRef::of(automaton));
        self
    }

    pub fn param(mut self, key: &str, value: impl Serialize) -> Self {
        self.inputs
            .params
            .insert(key.to_string(), serde_json::to_value(value).unwrap_or(Value::Null));
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}
