//! Bijections between half-plane and quarter-plane lattice walks.
//!
//! The library works with words over a handful of step alphabets (Motzkin-style
//! height alphabets, quarter-plane step sets, a bicoloured alphabet and its
//! symmetric six-step counterpart) and realizes length-preserving bijections
//! between the corresponding walk classes in three interchangeable ways:
//!
//! * counter transducers that fold a word in a single pass ([`transducer`],
//!   [`sixstep`]),
//! * explicit two-stack pushdown transducers ([`pda`]),
//! * raising algorithms that grow the output word step by step ([`raising`]).
//!
//! The [`oracle`] module enumerates every walk class by pruned depth-first
//! search and cross-checks the three realizations against each other, against
//! counting laws, and against the stack/raising correspondence lemmas.
//! [`parameters`] provides the additive-weight calculus used to state and
//! verify the per-transition bookkeeping tables.
//!
//! All positions reported in traces, events, and histories are 1-based.

pub mod oracle;
pub mod parameters;
pub mod pda;
pub mod raising;
pub mod sixstep;
pub mod transducer;
pub mod words;

pub use words::{AlphabetSpec, LatticePoint, Letter, WalkClass, Word};
