pub mod cycle;
pub mod fixtures;
pub mod graph;
pub mod group;
pub mod invariants;
pub mod laufer;
pub mod pgseries;
pub mod rational;
pub mod seifert;

pub use cycle::QCycle;
pub use graph::{ClassElt, Graph, GraphError, GraphInput};
pub use group::ClassKey;
pub use rational::Rational;
