use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("operands live in different ambient groups")]
    AmbientMismatch,
    #[error("subgroup is not contained in the would-be supergroup")]
    NotContained,
    #[error("subgroup is not a direct summand")]
    NotASummand,
    #[error("element has no preimage in the given subgroup")]
    NoPreimage,

    #[error("invalid poset: {0}")]
    InvalidPoset(String),
    #[error("poset has {0} elements; at most 64 join-irreducibles are supported")]
    PosetTooLarge(usize),
    #[error("lattice has more than {0} elements")]
    ElementBoundExceeded(usize),
    #[error("invalid semilattice: {0}")]
    InvalidSemilattice(String),
    #[error("not distributive: {0}")]
    NotDistributive(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("family violates condition ({condition}): {detail}")]
    FamilyInvalid { condition: String, detail: String },
    #[error("the lattice homomorphism does not satisfy the purity condition: {0}")]
    PurityRequired(String),
    #[error("the homomorphism takes non-torsion values")]
    TorsionRequired,
    #[error("subgroup is not pure")]
    NotPure,

    #[error("invalid monoid: {0}")]
    InvalidMonoid(String),
    #[error("monoid is not regular: {0}")]
    NotRegular(String),
    #[error("invalid element: {0}")]
    InvalidElement(String),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("element is not in the monoid: {0}")]
    ElementNotInMonoid(String),
    #[error("index semilattice is not a distributive lattice: {0}")]
    NotALattice(String),
    #[error("purity failure: {0}")]
    PurityFailure(String),
    #[error("bad block specification: {0}")]
    BadSpec(String),

    #[error("not a block: {0}")]
    NotABlock(String),
    #[error("stage {stage} is not a finite direct sum of blocks: {detail}")]
    StageNotInBbar { stage: usize, detail: String },
    #[error("map {map} is not a monoid homomorphism: {detail}")]
    MapNotHomomorphism { map: usize, detail: String },
    #[error("map {map} does not send the order-unit to the order-unit: {detail}")]
    MapNotNormalized { map: usize, detail: String },

    #[error("oracle budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("internal invariant broken: {0}")]
    Internal(String),
}
