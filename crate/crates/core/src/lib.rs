//! Exact computations with complex matroids: phirotopes over `S^1 ∪ {0}`,
//! phased circuits and cocircuits, duality, minors and the cryptomorphisms
//! between these descriptions.

pub mod cli;
pub mod demo;
pub mod error;
pub mod gauss;
pub mod io;
pub mod linalg;
pub mod matroid;
pub mod phase;
pub mod phirotope;
pub mod reconstruct;
pub mod set;
pub mod signature;

pub use error::{Error, Result};
pub use gauss::GaussRational;
pub use linalg::GaussMatrix;
pub use matroid::Matroid;
pub use phase::{Phase, PhaseVector};
pub use phirotope::Phirotope;
pub use set::ElemSet;
pub use signature::{PhasedSignature, SignatureKind};
