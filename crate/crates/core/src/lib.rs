//! Maximal order types of well partial orders built from ordinals and
//! finite posets by disjoint union, lexicographic sum and lexicographic
//! product.
//!
//! ```
//! use otype::WpoTerm;
//!
//! let t: WpoTerm = "ord(w+1) . antichain(2)".parse().unwrap();
//! assert_eq!(t.o().to_string(), "w*2+2");
//! ```

pub mod check;
pub mod gen;
pub mod ordinal;
pub mod poset;
pub mod syntax;
pub mod term;
pub mod witness;

pub use check::{Suite, SuiteReport};
pub use ordinal::{Ordinal, OrdinalError};
pub use poset::{FinitePoset, PosetError};
pub use syntax::{parse_term, SyntaxError};
pub use term::{delta_mk, max_count, o_of, proof_trace, vialard, DeltaMK, TermError, WpoTerm};
pub use witness::{validate_witness, Segment, Witness, WitnessError, WitnessReport};
