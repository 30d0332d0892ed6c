//! Braid groups, the parenthesized braid operad and coherence checks.

mod coherence;
mod pab;
mod word;

pub use crate::perm::Permutation;
pub use coherence::{coherence_check, CheckOptions, CoherenceKind, CoherenceReport};
pub use pab::PaBMorphism;
pub use word::{artin_equal, artin_equal_with_cap, BraidWord, DEFAULT_WORD_CAP};

/// `g ∘_p h` in the permutation operad.
pub fn perm_compose(g: &Permutation, p: usize, h: &Permutation) -> crate::Result<Permutation> {
    g.compose(p, h)
}
