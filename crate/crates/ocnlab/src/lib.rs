//! Decision procedures for two-way one-counter nets (2-OCNs).
//!
//! A 2-OCN is a finite automaton with a read-only two-way head between
//! end-markers and a single nonnegative counter that cannot be zero-tested.
//! This crate provides:
//!
//! * the machine model with a text file format, run semantics and structural
//!   classification ([`ocn`], [`format`]),
//! * polynomial-time membership plus a brute-force bounded oracle
//!   ([`membership`]),
//! * a VASS engine with freeze-copy elimination of bounded zero-tests and a
//!   cap-bounded reachability explorer ([`vass`]),
//! * emptiness checking for bounded-language and sweeping nets by reduction
//!   to VASS reachability ([`reduction`]),
//! * lower-bound compilers from two-counter machines and from VASS
//!   reachability instances ([`hardness`]),
//! * a compiler from quantifier-free segment-length constraints to sweeping
//!   nets, and the example-automata corpus ([`semilinear`], [`corpus`]),
//! * pumping analysis for deterministic nets ([`pumping`]).

pub mod corpus;
pub mod format;
pub mod hardness;
pub mod membership;
pub mod ocn;
pub mod pumping;
pub mod reduction;
pub mod rng;
pub mod semilinear;
pub mod subset_dfa;
pub mod vass;

pub use ocn::{Config, CounterNet, Run, StructureReport, Termination, Transition};
