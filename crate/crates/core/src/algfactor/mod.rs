//! Commutative-algebra subroutines: gcd, content/primitive parts, squarefree
//! decomposition, factorization over ℚ, and irreducibility over the towers
//! that triangular sets define.

pub mod gcd;
pub mod multivariate;
pub mod tower;
pub mod univariate;

pub use gcd::{content_in, divides, exact_div, gcd as poly_gcd, gcd_list, primitive_in, squarefree_part};
pub use multivariate::{factor, is_irreducible, Factorization};
pub use tower::is_delta_irreducible;
