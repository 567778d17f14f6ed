use std::fmt;

use thiserror::Error;

/// Which clause of the triplication-table definition a raw pairing breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TableClause {
    /// Element multiplicities: 3 for every nonzero color, 2 for zero.
    Multiplicity,
    /// Special pair at index 0 plus the row directed-difference layout.
    RowStructure,
    /// Pair-sum multiplicities: at most 3 per nonzero sum, at most 2 for zero.
    SumMultiplicity,
    /// No two identical ordered pairs.
    DistinctPairs,
}

impl TableClause {
    pub fn roman(self) -> &'static str {
        match self {
            TableClause::Multiplicity => "i",
            TableClause::RowStructure => "ii",
            TableClause::SumMultiplicity => "iii",
            TableClause::DistinctPairs => "iv",
        }
    }
}

impl fmt::Display for TableClause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.roman())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("order {m} exceeds the enumeration guard ({limit}); pass an explicit override")]
    OrderTooLarge { m: u32, limit: u32 },

    #[error("not a triplication table: clause {clause} violated: {detail}")]
    NotATable { clause: TableClause, detail: String },

    #[error("input is not a strong starter: {0}")]
    InputNotStrongStarter(String),

    #[error("pseudostarters do not form a special pair: {0}")]
    SpecialPairViolation(String),

    #[error("base pairings are not consistently ordered: {0}")]
    InconsistentOrdering(String),

    #[error("key {key} is not admissible for this base")]
    KeyNotAdmissible { key: u32 },

    #[error("multiplier {mu} - 1 is not invertible modulo {m}")]
    MultiplierNotInvertible { mu: u32, m: u32 },

    #[error("incompatible residues: {u} mod {m} and {big_u} mod {h} disagree modulo {d}")]
    IncompatibleResidues { u: u64, m: u64, big_u: u64, h: u64, d: u64 },

    #[error("scenario is for m = {scenario_m} but the table has m = {table_m}")]
    ScenarioMismatch { scenario_m: u32, table_m: u32 },

    #[error("table is not congruous: {0}")]
    NotCongruous(String),

    #[error("internal verification failure: {0}")]
    InternalVerificationFailure(String),

    #[error("search aborted after {nodes} nodes (budget exhausted)")]
    Aborted { nodes: u64 },

    #[error("solution enumeration exceeded the limit of {limit} solutions")]
    TooManySolutions { limit: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
