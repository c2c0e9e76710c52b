//! Exact-arithmetic verification of fixed-point data, trace averages and
//! Seiberg–Witten lattices for finite symplectic symmetries of homotopy K3
//! surfaces.
//!
//! Every computation is exact: integers, rationals and small cyclotomic
//! fields. Nothing here uses floating point, so results are identical on
//! every platform and under every thread count.
//!
//! Module map:
//!
//! * [`groups`]: the maximal symplectic K3 groups and their subgroups, with
//!   conjugacy classes, centralizers, normalizers and commutator data.
//! * [`cyclo`]: arithmetic in `Q(ζ_n)`, cotangent sums, signature defects and
//!   spin-number contributions.
//! * [`index_solver`]: enumeration of fixed-point profiles satisfying the
//!   Lefschetz and G-signature equations, plus declarative exclusion filters.
//! * [`dynkin`]: affine Dynkin components, order-3 yields and the `b₂⁻` rank
//!   budget.
//! * [`lattice`]: integer matrices, Smith normal form, primitive closures and
//!   intersection-form checks.
//! * [`swcalc`]: Laurent polynomials, Alexander polynomials and the knot
//!   surgery formula for basic classes.
//! * [`kummer`]: the `(Z₂)³`-equivariant Kummer model with its twelve tori.
//! * [`cohomology`]: Lefschetz traces, `μ(G)` and the `r_X` bound.
//! * [`report`]: target-by-target verification reports with canonical JSON.

pub mod cohomology;
pub mod cyclo;
pub mod dynkin;
mod error;
pub mod groups;
pub mod index_solver;
pub mod kummer;
pub mod lattice;
pub mod par;
pub mod rational;
pub mod report;
pub mod swcalc;

pub use error::{Error, Result};
pub use rational::Rational;
