use thiserror::Error;

use crate::model::{Length, OrderId};

/// Errors raised while building or evaluating model values.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("deckle width must be positive")]
    ZeroDeckle,
    #[error("trim allowance {allowance} must be smaller than the nominal width {nominal}")]
    AllowanceTooLarge { nominal: Length, allowance: Length },
    #[error("order {0}: width must be positive")]
    NonPositiveWidth(OrderId),
    #[error("order {0}: roll count must be at least 1")]
    ZeroCount(OrderId),
    #[error("order {0}: weight must be a non-negative number")]
    InvalidWeight(OrderId),
    #[error("duplicate order id {0}")]
    DuplicateId(OrderId),
    #[error("total demand width overflows")]
    Overflow,
    #[error("order {id} is {width} wide but the effective deckle width is only {effective_width}")]
    Unsatisfiable {
        id: OrderId,
        width: Length,
        effective_width: Length,
    },
    #[error("unknown order id {0}")]
    UnknownOrder(OrderId),
    #[error("cutting pattern has no rolls")]
    EmptyPattern,
    #[error("cutting pattern must be repeated on at least one reel")]
    ZeroReels,
    #[error("order {0}: roll count in a slot or pattern must be at least 1")]
    ZeroMultiplicity(OrderId),
    #[error("cutting pattern uses {used} of an effective width of {effective_width}")]
    PatternOverCapacity { used: Length, effective_width: Length },
    #[error("slot {slot} exceeds the effective width by {excess}")]
    Capacity { slot: usize, excess: Length },
}

/// Errors raised by the solvers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("pool must contain at least one order")]
    EmptyPool,
    #[error("instance has {rolls} rolls; the exact search is limited to {limit}")]
    InstanceTooLarge { rolls: u64, limit: u64 },
    #[error("search budget must be positive")]
    ZeroBudget,
}

impl SolveError {
    /// True when the pool holds an order that cannot fit on any reel.
    pub fn is_unsatisfiable(&self) -> bool {
        matches!(self, SolveError::Model(ModelError::Unsatisfiable { .. }))
    }
}
