//! Pure virtual braid groups VPₙ.
//!
//! Braid words over the λ-generators, the defining relations as rewriting
//! moves with a bounded equivalence search, linking invariants, combing into
//! the normal form `w₂ w₃ … wₙ`, and the normal subgroup of braids homotopic
//! to the identity.

pub mod cli;
pub mod combing;
pub mod diagram;
pub mod error;
pub mod homotopy;
pub mod invariants;
pub mod presentation;
pub mod search;
pub mod text;
pub mod word;

pub use error::BraidError;
pub use invariants::{exponent_vector, linking_matrix, ExponentVector, LinkingMatrix};
pub use presentation::{MoveCertificate, Presentation, RelationMove};
pub use search::{equivalent_bounded, EquivalenceVerdict, SearchBudget};
pub use text::{format_word, parse_word};
pub use word::{BraidWord, Lambda, Sign, Strand};
