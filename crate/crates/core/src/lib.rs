//! Exact commutation structure of the generalized Pauli group of a single
//! `d`-dimensional qudit, read off from the projective line over `Z_d`.
//!
//! - [`ring`]: arithmetic in `Z_d`, power representations, CRT.
//! - [`symplectic`]: the alternating form on `Z_d²`, degrees, perp-sets and
//!   `GL₂(Z_d)` canonical forms.
//! - [`proj_line`]: points of `P₁(Z_d)`, points through a vector, and the
//!   union `U(b,c)` compared to the perp-set.
//! - [`pauli`]: normal-form group arithmetic, commuting counts, degree
//!   layers and maximal commuting sets.
//! - [`oracle`]: dense clock and shift matrices for numerical cross-checks.
//!
//! Every counting result is available in closed form and, for small `d`, by
//! enumeration.
//!
//! ```
//! use pauli_line::{proj_line, symplectic, Modulus, Vec2};
//!
//! let m = Modulus::new(4).unwrap();
//! let v = Vec2::new(2, 0, &m);
//! assert_eq!(symplectic::perp_cardinality(&m, v), 8);
//! assert_eq!(proj_line::count_points_through(&m, v), 2);
//! assert_eq!(proj_line::u_size(&m, v), Ok(6));
//! assert!(!proj_line::u_equals_perp(&m, v));
//! ```

pub mod error;
pub mod oracle;
pub mod pauli;
pub mod proj_line;
pub mod ring;
pub mod symplectic;

pub use error::{Error, Result};
pub use pauli::PauliOp;
pub use proj_line::{LineCatalog, Point};
pub use ring::Modulus;
pub use symplectic::{Degree, Mat2, Vec2};

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
struct ReadmeDoctests;
