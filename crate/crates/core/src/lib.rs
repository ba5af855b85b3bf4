//! Romanovski complementary polynomials `Q_nu^(alpha,-a)`: exact construction
//! over the rationals, identity checks, and the orthogonality integrals.

pub mod auxiliary;
pub mod classical;
pub mod error;
pub mod exact;
pub mod family;
pub mod quad;
pub mod sample;
pub mod verify;
pub mod weight;

pub use error::{Error, Result};
pub use exact::{parse_rational, Params, Poly, Rational};
pub use family::{three_term_q, QFamily};
pub use weight::{rodrigues_q, WeightedElement};
