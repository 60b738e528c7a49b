//! Exact classification of primitive vectors in lattices of the form
//! `B(2) ⊕ U`, with the Enriques anti-invariant lattice
//! `Λ⁻ = E8(2) ⊕ U(2) ⊕ U` as the main instance.
//!
//! All arithmetic is on machine integers with overflow checks, or on
//! arbitrary precision rationals where elimination needs them.

pub mod classify;
pub mod dilatation;
pub mod enumerate;
pub mod error;
pub mod isometry;
pub mod lattice;
pub mod matrix;
pub mod oracle;
pub mod union_find;
pub mod vector;

pub use classify::{
    classify, embed_minus, embed_plus, even_witness, heegner_report, heegner_report_by_norm, is_even_type,
    representative, representative_in, verify_witness, ClassificationReport, HeegnerReport, OrbitLabel,
    WitnessOutcome,
};
pub use dilatation::{phi, phi_inverse, HalfVector};
pub use error::{LatticeError, Result};
pub use isometry::{sample_word, GeneratorSet, Isometry};
pub use lattice::{builtin, Lattice, Signature};
pub use vector::{LatticeVector, VectorType};
