//! From constrained integer programs to QUBO.
//!
//! The pipeline is: inequalities to equalities via slack variables, bounded
//! integers to binaries, constraints to penalty terms, and finally
//! quadratization of any term of degree three or more.

mod encoding;
mod format;
mod ilp;
mod penalty;
mod poly;
mod quadratize;

pub use encoding::{binarize, binary_coefficients, BinaryEncoding};
pub use format::{ilp_from_toml, ilp_to_toml, varmap_from_toml, varmap_to_toml};
pub use ilp::{
    compile, decode, to_equality, CompileConfig, Compiled, Constraint, ConstraintReport, Decoded,
    Hardness, IlpModel, IntVar, LinearExpr, Objective, ObjectiveTerm, SlackEncoding, VarMap,
};
pub use penalty::{penalty_pattern, squared_penalty, Relation};
pub use poly::PolyExpr;
pub use quadratize::{quadratize, rosenberg_gadget, rosenberg_penalty, AuxVar};
