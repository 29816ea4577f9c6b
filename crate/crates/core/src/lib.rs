//! Exact norms and cube constructions for finite atomic measures under a
//! growth condition, together with a verification harness that checks the
//! associated inequalities and norm equivalences on desk-scale instances.
//!
//! The library is organised around a few small pieces:
//!
//! * [`geometry`] — axis-parallel closed cubes, dilation, concentric hulls;
//! * [`measure`] — finite atomic measures with exact `mu(Q)` queries and
//!   radial step profiles;
//! * [`families`] — explicit finite cube families, including an exact
//!   membership-pattern enumerator for `d = 1` that turns every supremum
//!   into a finite maximum;
//! * [`doubling`] — doubling-cube predicates, the `Q*` search, ascending
//!   doubling chains and Besicovitch selection;
//! * [`coefficients`] — closed-form evaluation of the scale coefficients
//!   `delta(Q,R)`, `K_{Q,R}` and the `K^{(alpha)}` variant;
//! * [`functionals`] — Morrey, doubling-type, Campanato, RBMO, sharp-maximal
//!   and vector-valued norms, all evaluated as maxima over a supplied family;
//! * [`verify`] — seeded corpora, per-inequality reports and regression
//!   baselines for the non-explicit constants.
//!
//! All suprema are maxima over an explicit [`families::CubeFamily`]; for
//! one-dimensional measures the `exact_1d` family makes those maxima exact.

pub mod coefficients;
pub mod doubling;
pub mod exec;
pub mod families;
pub mod functionals;
pub mod geometry;
pub mod instance;
pub mod measure;
pub mod verify;

mod error;

pub use error::Error;

pub type Result<T> = std::result::Result<T, Error>;
