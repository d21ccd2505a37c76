//! Exact symbolic engine for the quantum groups U_q(sl2) and U_q(sl3) over Q(q).
//!
//! The crate is organised bottom-up:
//!
//! * [`scalar`]: the coefficient field Q(q) and q-integers.
//! * [`rootdata`]: root systems A1/A2, Weyl words, convex orders.
//! * [`pbw`]: PBW monomials, straightening multiplication, triangular projections, ω.
//! * [`hopf`]: coproduct, counit, tensor normal forms, slicing functionals.
//! * [`subalgebra`]: bounded-degree spans and the right-coideal verifier.
//! * [`rcs`]: homogeneous and character-shifted constructions.
//! * [`leading`]: leading terms, the M-order and the mixed-term reduction.
//! * [`catalog`]: machine-readable RCS lists with batch verification.
//! * [`repr`]: simple U_q(sl2)-modules.
//! * [`expr`]: expression language and printing.

pub mod catalog;
pub mod error;
pub mod expr;
pub mod hopf;
pub mod json;
pub mod leading;
pub mod pbw;
pub mod rcs;
pub mod repr;
pub mod rootdata;
pub mod scalar;
pub mod subalgebra;

pub use error::{Error, Result};
pub use hopf::TensorElement;
pub use pbw::{Algebra, ExpVec, Generator, PBWMonomial, UElement};
pub use rootdata::{RootSystem, SystemKind, Weight, WeylWord};
pub use scalar::{IntPoly, QRat};
