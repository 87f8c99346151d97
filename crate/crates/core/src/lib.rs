//! Hadamard matrices of order `q(q+1)` from order `q+1`, for prime powers
//! `q ≡ 3 (mod 4)`.
//!
//! The pieces, bottom-up:
//!
//! * [`gf`]: arithmetic in GF(p^k) and the quadratic character;
//! * [`hmat`]: bit-packed {+1, -1} matrices, normalization and cores;
//! * [`paley`]: order `q+1` inputs from the quadratic character;
//! * [`scarpis`]: the `q+1 → q(q+1)` extension for a labeling of GF(q);
//! * [`verify`]: exact orthogonality checks;
//! * [`io`]: `+`/`-` and `1`/`-1` text formats.
//!
//! ```
//! use hadamard_core::{check_hadamard, paley_hadamard, scarpis_extend, ConstructionParams, FieldSpec};
//!
//! let field = FieldSpec::new(3, 3).unwrap();
//! let a = paley_hadamard(&field).unwrap();
//! let b = scarpis_extend(&a, &ConstructionParams::canonical(&field).unwrap()).unwrap();
//! assert_eq!(b.rows(), 756);
//! assert!(check_hadamard(&b).unwrap().is_hadamard);
//! ```

pub mod error;
pub mod gf;
pub mod hmat;
pub mod io;
pub mod paley;
pub mod scarpis;
pub mod verify;

pub use error::{Error, Result};
pub use gf::{FieldDescriptor, FieldElement, FieldSpec, SquareTable};
pub use hmat::{Sign, SignMatrix};
pub use io::{Format, Provenance};
pub use paley::paley_hadamard;
pub use scarpis::{scarpis_extend, ConstructionParams, Labeling, RowPermutation};
pub use verify::{check_core_invariants, check_hadamard, VerificationReport, Violation};
