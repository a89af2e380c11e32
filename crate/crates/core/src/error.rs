use thiserror::Error;

use crate::set::ElemSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("arity mismatch: {0}")]
    Arity(String),

    #[error("cannot invert the zero phase")]
    ZeroPhaseInverse,

    #[error("matrix has rank {rank} but {rows} rows")]
    RankDeficient { rank: usize, rows: usize },

    #[error("ground set of {0} elements exceeds the supported maximum of 12")]
    GroundTooLarge(usize),

    #[error("bases have unequal sizes ({0} vs {1})")]
    UnequalBases(ElemSet, ElemSet),

    #[error("basis family is empty")]
    NoBases,

    #[error("basis exchange fails: B1={b1}, B2={b2}, e={}", e + 1)]
    ExchangeViolation { b1: ElemSet, b2: ElemSet, e: usize },

    #[error("{0} is not a circuit")]
    NotACircuit(ElemSet),

    #[error("element {} lies in the basis {basis}", element + 1)]
    ElementInBasis { element: usize, basis: ElemSet },

    #[error("set {set} is not contained in the ground set {ground}")]
    OutsideGround { set: ElemSet, ground: ElemSet },

    #[error("phirotope is identically zero")]
    ZeroPhirotope,

    #[error("two members share the support {0} but are not unit multiples")]
    SupportConflict(ElemSet),

    #[error("phase vector is zero")]
    ZeroVector,

    #[error("no member supported on {0}")]
    MissingMember(ElemSet),

    #[error("edge labels are inconsistent around the cycle {}", fmt_cycle(.0))]
    CycleInconsistency(Vec<ElemSet>),

    #[error("orthogonality constraints on {0} are contradictory")]
    UnphaseableSupport(ElemSet),

    #[error("internal invariant breached: {0}")]
    Internal(String),
}

fn fmt_cycle(c: &[ElemSet]) -> String {
    c.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(" -> ")
}

pub type Result<T> = std::result::Result<T, Error>;
