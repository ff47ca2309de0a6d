//! Exact modular invariant theory of 2x2 matrix groups over `F_q` acting on
//! `F_q[x1, x2, y1, y2]`, a vector in `x` and a covector in `y`.
//!
//! Modules build bottom-up: field arithmetic ([`gf`]), polynomials ([`poly`]),
//! group actions ([`group`]), named invariants and bases ([`invariants`]),
//! dense linear algebra ([`linalg`]), graded computations ([`ringcalc`]) and
//! Hilbert series ([`hilbert`]).

pub mod gf;
pub mod group;
pub mod hilbert;
pub mod invariants;
pub mod linalg;
pub mod poly;
pub mod ringcalc;

pub use gf::{Fe, FieldElem, FieldSpec, GfError};
pub use group::{ActionSpec, Group, GroupError, GroupKind, Mat2};
pub use hilbert::{HilbertError, HilbertSeries};
pub use invariants::{
    BasisCatalog, BasisId, IdentityReport, IdentityTag, Inv, InvariantCatalog, InvariantError, Status,
};
pub use linalg::{LinalgError, MatrixFq};
pub use poly::{Monomial, Poly, PolyError, Var};
pub use ringcalc::{DimensionTable, FreeBasisReport, GeneratorReport, NonmembershipReport, RingError};
