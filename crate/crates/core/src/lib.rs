//! Random-contraction algorithms for cut problems on hypergraphs with several
//! cost or weight functions, together with exhaustive oracles used to check
//! them on small instances.
//!
//! * [`multiobjective`]: budgeted multicriteria min-cuts, enumeration of all
//!   multiobjective min-cuts and pareto-optimal cuts.
//! * [`node_budget`]: min-cuts whose small side respects vertex-weight budgets.
//! * [`size_constrained`]: min-k-cuts with lower bounds on part weights.
//! * [`oracle`]: brute-force ground truth.
//! * [`harness`]: Monte-Carlo estimation of success probabilities.

pub mod analysis;
pub mod contraction;
pub mod cut;
pub mod error;
pub mod harness;
pub mod hypergraph;
pub mod instance;
pub mod multiobjective;
pub mod node_budget;
pub mod oracle;
pub mod sampling;
pub mod size_constrained;

pub use contraction::ContractionState;
pub use cut::{cost_vector, cut_cost, delta_of_side, delta_partition, Cut, KPartition, SidedCut};
pub use error::{Error, Result};
pub use hypergraph::{EdgeId, Hypergraph, VertexId};
pub use instance::{instance_digest, load_instance, save_instance};
pub use multiobjective::{BudgetVector, Criteria};
pub use node_budget::{NbOutcome, NodeBudgetVector};
pub use size_constrained::{KCutOutcome, SizeVector, TraceStep};
