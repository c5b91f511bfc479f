//! Exact classification of hyperplane sections of the projectivized tangent
//! bundle of the projective plane.
//!
//! The flag threefold F = {(point, line) : point on line} sits in P^7 via the
//! Segre embedding restricted to the incidence relation, and its hyperplane
//! sections correspond to twisted vector fields on the plane: a 3x3 matrix A
//! (taken modulo scalar multiples of the identity) defines a section of the
//! tangent bundle whose zero scheme is cut out by the 2x2 minors of
//!
//! ```text
//! | X  Y  Z  |
//! | f1 f2 f3 |        (f1, f2, f3) = (X, Y, Z) * A^T
//! ```
//!
//! The crate classifies these zero schemes into five types by exact
//! eigenvalue analysis, re-derives each verdict through an independent
//! Groebner-basis oracle, and checks the induced point-count identity
//! `|H ∩ F| = q^2 + q + 1 + q*N` over finite fields.
//!
//! Modules:
//! - [`exactalg`]: exact field arithmetic (Q and F_{p^k}, k <= 3), univariate
//!   polynomials, 3x3 matrices.
//! - [`multipoly`]: dense homogeneous polynomials in X, Y, Z, Buchberger
//!   Groebner bases, Hilbert functions, point enumeration, the ideal oracle.
//! - [`sections`]: section matrices, parsing/rendering, the P^7 hyperplane
//!   correspondence.
//! - [`classify`]: the five-type classification by eigenstructure.
//! - [`flagcount`]: flag enumeration over F_q and the count identity.
//! - [`cli`]: command-line front end.

pub mod classify;
pub mod cli;
pub mod error;
pub mod exactalg;
pub mod flagcount;
pub mod multipoly;
pub mod sections;

pub use classify::{HyperplaneVerdict, SurfaceKind, ZeroSchemeReport, ZeroSchemeType};
pub use error::{Error, Result};
pub use exactalg::{Field, FieldElem};
pub use flagcount::{CountReport, SweepMode, SweepSummary};
pub use multipoly::{HomPoly, MinorTriple, ProjPoint};
pub use sections::{HyperplaneP7, SectionMatrix};
