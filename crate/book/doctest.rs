// mdbook cannot test snippets that depend on a workspace crate, so each
// chapter is pulled in as a module doc and `cargo test --doc` runs them.

#[doc = include_str!("src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("src/qubo.md")]
pub mod qubo {}
#[doc = include_str!("src/compiling.md")]
pub mod compiling {}
#[doc = include_str!("src/solvers.md")]
pub mod solvers {}
#[doc = include_str!("src/mrf.md")]
pub mod mrf {}
#[doc = include_str!("src/music.md")]
pub mod music {}
#[doc = include_str!("src/cli.md")]
pub mod cli {}
