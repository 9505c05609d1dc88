//! Exact computations around the E8 root lattice and uniquely trigonal
//! genus-4 curves with a marked ramification point.
//!
//! The crate is organised bottom-up:
//!
//! * [`exact`]: rational linear algebra, polynomials, binary forms.
//! * [`root_system`]: Dynkin classification of simply laced root systems.
//! * [`picard`]: the rank-9 Picard lattice of a degree-1 del Pezzo surface,
//!   its E8 sublattice, roots and characters.
//! * [`two_torsion`]: `Λ/2Λ`, its quadratic form and the central extension.
//! * [`alcove`]: affine Weyl groups, alcoves, the fundamental group and Kac
//!   coordinates for simply laced types.
//! * [`chevalley`]: a Chevalley basis of e8 with the involution of trace -8.
//! * [`cubic`]: nodal and cuspidal plane cubics and their re-embeddings.
//! * [`delpezzo`]: character to point configuration to weighted sextic.
//! * [`trigonal`]: ramification, smoothness and invariants of the branch curve.
//! * [`records`]: JSON schemas for characters and curves.
//!
//! The numeric core is generic over [`scalar::Field`]; the aliases below fix
//! the rational field used by the geometric modules.

pub mod alcove;
pub mod chevalley;
pub mod cubic;
pub mod delpezzo;
pub mod error;
pub mod exact;
pub mod picard;
pub mod records;
pub mod root_system;
pub mod scalar;
pub mod trigonal;
pub mod two_torsion;

pub use error::{Error, Result};
pub use scalar::{Field, Rational};

/// Multivariate polynomial over the rationals.
pub type Polynomial = exact::Poly<Rational>;
/// Binary form over the rationals.
pub type BinaryForm = exact::BinForm<Rational>;
/// Rational matrix.
pub type QMatrix = exact::Matrix<Rational>;

/// Element of e8 over the rationals.
pub type LieElement = chevalley::LieVector<Rational>;
