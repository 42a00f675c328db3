//! A differential algebra kernel for partial differential fields over ℚ.
//!
//! The crate implements characteristic-set methods for partial differential
//! polynomial systems: rankings, Ritt reduction with multiplier certificates,
//! coherence, Wu–Ritt zero decomposition into coherent irreducible autoreduced
//! sets, Kolchin differential dimension polynomials, decision and computation
//! of Lüroth generators for finitely generated subfields of F⟨u₁,…,uₙ⟩, and
//! proper re-parametrization of unirational differential curves.
//!
//! All arithmetic is exact (big rationals); values are immutable and the
//! operations are pure functions, so everything here is `Send + Sync`.

pub mod algfactor;
pub mod decompose;
pub mod error;
pub mod kolchin;
pub mod luroth;
pub mod operator;
pub mod poly;
pub mod ranking;
pub mod ratfunc;
pub mod reduction;
pub mod reparam;
pub mod symbol;

pub use error::{Error, Result};
pub use operator::{DerivativeOperator, DerivativeVariable};
pub use poly::{DiffPolynomial, Monomial};
pub use ranking::{Ranking, RankingKind, RankedPolynomialView};
pub use ratfunc::{Bindings, DiffRationalFunction};
pub use reduction::{AutoreducedSet, ReductionCertificate};
pub use symbol::Symbol;

#[cfg(test)]
mod thread_safety {
    fn assert_send_sync<T: Send + Sync>() {}

    #[test]
    fn values_are_shareable_across_threads() {
        assert_send_sync::<crate::Symbol>();
        assert_send_sync::<crate::DerivativeVariable>();
        assert_send_sync::<crate::DiffPolynomial>();
        assert_send_sync::<crate::DiffRationalFunction>();
        assert_send_sync::<crate::Ranking>();
        assert_send_sync::<crate::AutoreducedSet>();
        assert_send_sync::<crate::kolchin::NumericalPolynomial>();
        assert_send_sync::<crate::decompose::DecompositionComponent>();
        assert_send_sync::<crate::luroth::LurothOutcome>();
        assert_send_sync::<crate::reparam::Pdrpe>();
    }
}
