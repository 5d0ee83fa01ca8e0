//! Exact symbolic computation for the Sergeev superalgebra and the queer Lie
//! superalgebra q_N.
//!
//! The crate covers the full chain from combinatorics to operator algebra:
//!
//! - [`scalar`]: exact arithmetic in Q and in the real multiquadratic field
//!   Q(sqrt 2, sqrt 3, sqrt 5, ...), plus its Gaussian extension.
//! - [`shifted`]: strict partitions, shifted diagrams, standard barred
//!   tableaux and marked shifted tableaux, with the counting formulas.
//! - [`poly`]: multivariate polynomials over the scalar field and the
//!   supersymmetry (cancellation) predicate.
//! - [`schur_q`]: Schur Q-polynomials and their factorial deformations by
//!   tableau summation, with the vanishing characterization oracle.
//! - [`sergeev`]: the Sergeev superalgebra S_n in the basis sigma c^eps,
//!   Jucys-Murphy elements, barred-tableau idempotents, Clifford idempotents
//!   and the explicit modules.
//! - [`tensor`]: sparse parity-graded operators on tensor superspaces and the
//!   Sergeev duality action on (C^{N|N})^{tensor n}.
//! - [`uqn`]: U(q_N) in PBW normal form, quantum immanants, Capelli elements,
//!   centrality and Harish-Chandra images.
//! - [`weyl`]: the polynomial superalgebra, its differential operators, the
//!   X/D matrix factorizations and the universal Capelli identities.
//! - [`verify`]: named verification suites shared by the tests and the CLI.

pub mod linalg;
pub mod poly;
pub mod scalar;
pub mod schur_q;
pub mod sergeev;

pub mod shifted;
pub mod tensor;
pub mod uqn;
pub mod verify;
pub mod weyl;





pub use scalar::{GaussianSurd, Rational, Surd};
pub use shifted::{BarredStandardTableau, MarkedShiftedTableau, ShiftedBox, StrictPartition};
