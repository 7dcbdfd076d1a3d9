use serde::{Deserialize, Serialize};

/// How the choice between `a` and its shadow is written in an update program.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum AbdEncoding {
    /// `a :- not a'.` and `a' :- not a.`
    #[default]
    NafPair,
    /// `a ; a'.`
    DisjunctiveFact,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EngineConfig {
    /// Upper bound on the number of ground rules produced by one grounding.
    pub max_ground_rules: usize,
    /// Upper bound on the literals left undecided when the answer-set search
    /// starts, after propagation.
    pub max_universe: usize,
    pub encoding: AbdEncoding,
    /// Upper bound on abducible instances for the brute-force oracle.
    pub oracle_cap: usize,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            max_ground_rules: 5000,
            max_universe: 18,
            encoding: AbdEncoding::NafPair,
            oracle_cap: 12,
        }
    }
}

impl EngineConfig {
    pub fn with_encoding(mut self, encoding: AbdEncoding) -> Self {
        self.encoding = encoding;
        self
    }

    pub fn with_max_universe(mut self, max_universe: usize) -> Self {
        self.max_universe = max_universe;
        self
    }
}
