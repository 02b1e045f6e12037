//! Exact algebra for constructing and certifying Zariski-pair curve families.
pub mod afield;
pub mod error;
pub mod fpgroup;
pub mod ideal;
pub mod pencil;
pub mod plane;
pub mod poly;
pub mod rng;
pub mod series;

pub use afield::{make_field, Field, FieldElement, Quad, Rational};
pub use error::{Error, Result};
pub use fpgroup::{Abelianization, FinitePresentation, IntegerMatrix, PermutationAssignment};
pub use ideal::{IdealBasis, MonomialOrder, ProjectivePoint};
pub use pencil::{ConditionId, ConditionReport, DivisorOnHyperplane, Pencil, Witness};
pub use plane::{IntersectionMultiplicity, JacobianCertificate, LocalTypeEvidence, SingularPointRecord, SingularPoints};
pub use poly::{DegreeInfo, Monomial, MultiPoly};
pub use series::{CurveBundle, FamilyDerivation, Provenance, SeriesSelector, SingularVerification};
