//! Exact computations with representations of the Kronecker quiver: canonical
//! decomposition of matrix pencils, Hom and Ext, torsion pairs, hearts of the
//! tilted t-structures, and their simple objects and atom spectra.

pub mod error;
pub mod exactlin;
pub mod heart;
pub mod homalg;
pub mod json;
pub mod kronrep;
pub mod pencil;
pub mod spectrum;
pub mod tfat;
pub mod torsion;

pub use error::{KronError, Result};
pub use exactlin::{FieldSpec, Matrix, Polynomial, Scalar};
pub use heart::{HeartMorphism, HeartObject};
pub use kronrep::{ClosedPoint, DimVector, IndecompDescriptor, KronModule, ModuleMap};
pub use pencil::{decompose, invariants_from_ranks, Decomposition};
pub use spectrum::{report, SpectrumReport, SymbolicObject};
pub use tfat::Verdict;
pub use torsion::{classify_indec, torsion_radical, Class, SubsetSpec, TorsionPairSpec};
