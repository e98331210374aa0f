//! Central trinomial-type sequences, exact and modulo primes.
//!
//! A sequence is selected by a quadratic `P(x) = 1 + a x + b x^2` and has
//! generating function `P(x)^(-1/2)`; `a = -2, b = -3` gives the central
//! trinomial coefficients and `a = -6, b = 1` the central Delannoy numbers.
//!
//! The crate builds the first `p` residues of such a sequence in two
//! independent ways (a P-recursive recurrence and the expansion of
//! `P(x)^((p-1)/2)`), evaluates `R_n mod p` for huge `n` through base-p
//! digit products, and checks that the zero pattern of the first `p`
//! residues is a palindrome whenever `p` does not divide `3R_1^2 - 2R_2`.

pub mod analysis;
pub mod cli;
pub mod lucas;
pub mod modmath;
pub mod polymod;
pub mod report;
pub mod sequences;

pub use analysis::{
    is_palindrome, lucas_condition, mirror_check, verify_prime, verify_theorem, zero_pattern,
    AnalysisError, VerificationRecord, ZeroPattern,
};
pub use lucas::{
    base_p_digits, lucas_eval, lucas_eval_decimal, verify_lucas, DigitVector, LucasError,
    LucasReport,
};
pub use modmath::{is_prime, primes_in_range, ModError, Modulus, Residue};
pub use polymod::{DensePoly, PolyError};
pub use sequences::{
    cached_table, exact_terms, table_via_poly_pow, table_via_recurrence, trinomial_expand_oracle,
    ExactSequence, Preset, Provenance, QuadraticSpec, ResidueTable, SequenceError,
};
