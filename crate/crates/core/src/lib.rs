//! On-line permissive supervisory control of discrete event systems under
//! syntactically co-safe LTL specifications.
//!
//! The pipeline runs from a formula to a minimal DFA, through the product with
//! a plant, to a ranking function and finally an on-line supervisor.

pub mod des;
pub mod dfa;
pub mod error;
pub mod formula;
pub mod harness;
pub mod product;
pub mod ranking;
pub mod supervisor;

#[cfg(test)]
mod testutil;

pub use des::{
    load_des, load_des_str, save_des, save_des_string, synchronous_product, Des, EventId, EventInfo, History,
};
pub use dfa::{export_dfa, export_dfa_string, import_dfa, import_dfa_str, translate, translate_with, Dfa, ImportMode};
pub use error::{Error, Result};
pub use formula::{is_good_prefix, parse_formula, satisfies_lasso, Formula, Letter, Vocabulary};
pub use harness::surveillance::{build_surveillance_example, SurveillanceExample};
pub use harness::{simulate_batch, simulate_run, BatchSummary, RunRecord, SimulationConfig};
pub use product::{build_product, ProductAutomaton, ProductState};
pub use ranking::{classify, compute_ranking, verify_ranking, RankingFunction, TransitionClass};
pub use supervisor::{
    ControlPattern, LinearSchedule, Permissiveness, Session, Supervisor, TabulatedSchedule, TranscriptRecord,
};
