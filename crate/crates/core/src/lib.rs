//! Strong starters of order `3m` built by triplication.
//!
//! A triplication table over `Z_m` is the mod-`m` shadow of a strong starter
//! in `Z_{3m}`. Tables come from explicit templates ([`template`]) or random
//! sampling ([`msp::random_tt`]); lifting one back to `Z_{3m}` means solving a
//! small 3-valued constraint problem ([`msp`]) and decoding the result
//! ([`recovery`]) under one of two discrimination scenarios ([`scenario`]).

pub mod error;
pub mod modular;
pub mod msp;
pub mod pairing;
pub mod recovery;
pub mod scenario;
pub mod table;
pub mod template;

pub use error::{Error, Result, TableClause};
pub use msp::{
    check_congruous, compile, random_tt, CongruenceReport, CongruousTable, MspInstance,
    SolveOutcome, SolveReport, SolveStats, SolverConfig, ValueOrder,
};
pub use pairing::{classify, Pairing, StarterClass, StarterKind};
pub use recovery::{crt_general, recover_starter, round_trip, CrtProblem, RecoveredStarter};
pub use scenario::{Encoded, Scenario, ScenarioKind};
pub use table::{induce_from_starter, TriplicationTable};
pub use template::{admissible_keys, build_template, Base, KeySet, TemplateSpec};
