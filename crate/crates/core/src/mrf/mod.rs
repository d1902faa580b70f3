//! Markov chains and pairwise binary Markov random fields.

mod chain;
mod format;
mod network;

pub use chain::{transition_counts, transition_matrix, TransitionMatrix};
pub use format::{network_from_toml, network_to_toml};
pub use network::{mrf_to_qubo, MarkovNetwork, PairPotential};
