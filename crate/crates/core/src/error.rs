use thiserror::Error;

use crate::emknot::{Clause, HandlebodyKnot, Params};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("integer overflow in exact arithmetic")]
    Overflow,

    #[error("0/0 is not a projective rational")]
    Indeterminate,

    #[error("∞ has no residue modulo ℤ")]
    InfiniteResidue,

    #[error("unexpected ∞ in {0}")]
    UnexpectedInfinity(&'static str),

    #[error("parameters {params} violate {}", clause_list(.violations))]
    InvalidParams {
        params: Params,
        violations: Vec<Clause>,
    },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("no rotation identity applies to {0}")]
    NoRotation(HandlebodyKnot),

    #[error("operation is only defined for type K handlebody-knots")]
    RequiresTypeK,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

fn clause_list(cs: &[Clause]) -> String {
    cs.iter()
        .map(|c| c.label())
        .collect::<Vec<_>>()
        .join(", ")
}
