//! Exact enumeration and a seeded simulated-annealing sampler.

mod anneal;
mod dense;
mod enumerate;
mod sampleset;

pub use anneal::{read_rng, simulated_annealing, SaParams};
pub use enumerate::{
    brute_force, restricted_enumerate, Group, BRUTE_FORCE_LIMIT, FREE_COMPONENT_LIMIT,
};
pub use sampleset::{model_fingerprint, SampleSet};
