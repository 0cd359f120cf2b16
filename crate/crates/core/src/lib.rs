//! Exact verification of the arithmetic behind a Picard modular ball quotient
//! whose Baily–Borel compactification is the nodal complete intersection
//!
//! ```text
//! X0 X1 X2 = X3 X4 X5,    X0³ + X1³ + X2³ = X3³ + X4³ + X5³   in P⁵
//! ```
//!
//! Everything except [`ballmodel`] works over `Z[ζ]`, `Q(ζ)` or `Z[ζ]/3`
//! without floating point.

pub mod autgroup;
pub mod ballmodel;
pub mod cyclo;
pub mod divisor;
pub mod error;
pub mod hermitian;
pub mod hilbert;
pub mod linalg;
pub mod poly;
pub mod resgroup;
pub mod variety;
pub mod verifier;

pub use autgroup::{CharacterValue, MonomialAut};
pub use cyclo::{CycRat, EisensteinInt};
pub use divisor::{Divisor, LaurentWord};
pub use error::{Error, Result};
pub use hermitian::{HermMatrix, HermVector, MirrorTable};
pub use resgroup::{FiniteMatrixGroup, Mod3Residue, ResidueMatrix};
pub use variety::ProjPoint;
pub use verifier::{CheckResult, CheckStatus, Report};
