//! Exact-arithmetic combinatorics of Iwahori-double cosets in loop groups of
//! split semisimple groups.
//!
//! The crate computes generic Newton points of elements of the extended
//! affine Weyl group by two independent routes — a brute-force maximum over
//! Bruhat lower sets, and a closed formula reading minimal-path weights off
//! the quantum Bruhat graph — and classifies elements as cordial or not.
//! All arithmetic is exact: integer vectors for roots and coroots, rationals
//! for Newton points. No floating point anywhere.
//!
//! Module map:
//! - [`rootsys`]: Cartan data, roots, coroots, pairings, the weight `2ρ`.
//! - [`weyl`]: finite Weyl group kernel (enumeration, Bruhat order, reduced
//!   words, reflection length, factor containment, classifier predicates).
//! - [`qbg`]: the quantum Bruhat graph with validated minimal-path weights.
//! - [`affine`]: the extended affine Weyl group, lengths, dominant
//!   decompositions, the eta map, reduced words and Bruhat lower sets.
//! - [`newton`]: Newton points, dominance order, generic Newton points by
//!   oracle and by graph formula, defect, virtual dimension, chain lengths.
//! - [`cordial`]: the cordiality predicate, family classifiers and surveys.

#![forbid(unsafe_code)]

pub mod affine;
pub mod cordial;
pub mod newton;
pub mod qbg;
pub mod rootsys;
pub mod weyl;

pub use affine::{AffineElement, AffineGroup, DominantDecomposition};
pub use cordial::{CordialityChecker, CordialityReport, Families, Method, Verdict};
pub use newton::{Defect, NewtonPoint, SigmaClassInvariants};
pub use qbg::QuantumBruhatGraph;
pub use rootsys::{Coroot, Coweight, LatticeMode, Root, RootSystem};
pub use weyl::{WeylElement, WeylGroup};

pub use num_rational::Rational64;

#[cfg(test)]
mod shared_state {
    // The computation contexts are immutable after construction and are
    // shared read-only across worker threads.
    fn assert_send_sync<T: Send + Sync>() {}

    #[test]
    fn contexts_are_shareable() {
        assert_send_sync::<crate::RootSystem>();
        assert_send_sync::<crate::WeylGroup>();
        assert_send_sync::<crate::QuantumBruhatGraph>();
        assert_send_sync::<crate::AffineGroup>();
    }
}
