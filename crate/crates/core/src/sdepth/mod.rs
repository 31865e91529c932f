//! Exact Stanley depth of `I` and `S/I` by searching for interval partitions
//! of the characteristic poset, under a node budget.

mod poset;
mod search;

pub use poset::{CharacteristicPoset, IntervalPartition, POSET_BOX_CAP};
pub use search::{sdepth_decision, sdepth_exact, Decision, SdepthOutcome, DEFAULT_BUDGET};
