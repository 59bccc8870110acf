use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("work budget exceeded: more than {budget} partitions examined")]
    BudgetExceeded { budget: u64 },

    #[error("partition {partition} does not fit in a {rows}x{cols} box")]
    OutsideBox {
        partition: String,
        rows: usize,
        cols: usize,
    },

    #[error("variance is zero at s = {s}")]
    ZeroVariance { s: usize },

    #[error("no fit for moment {k} with polynomial degree up to {max_degree}")]
    NoFit { k: usize, max_degree: usize },

    #[error("underdetermined system for moment {k}: rank {rank} < {unknowns} unknowns")]
    Underdetermined {
        k: usize,
        rank: usize,
        unknowns: usize,
    },

    #[error("variance leading coefficient {0} is not positive")]
    NonPositiveVariance(String),
}

pub(crate) fn require_positive_s(s: usize) -> Result<()> {
    if s == 0 {
        Err(Error::InvalidArgument("s must be at least 1".into()))
    } else {
        Ok(())
    }
}
