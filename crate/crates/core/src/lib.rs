//! Hardy-type nonlocality witnesses for bipartite quantum states.
//!
//! * [`qcore`]: states, projective observables, Born-rule probabilities.
//! * [`witness`]: q-vectors, the generalized Hardy expression, the
//!   Clauser–Horne expression and their classification.
//! * [`lhv`]: set-measure bounds, deterministic strategies and LP
//!   feasibility of local hidden-variable models.
//! * [`search`]: Hardy constructions, violation search and state sweeps.
//! * [`cli`]: the `nonlocality` command-line front end.

pub mod cli;
pub mod error;
pub mod lhv;
pub mod qcore;
pub mod search;
pub mod witness;

pub use error::{Error, Result};
