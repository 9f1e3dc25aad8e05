use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse term `{term}`: {reason}")]
    Parse { term: String, reason: String },

    #[error("{what} = {value} exceeds the configured bound {bound}")]
    BoundExceeded {
        what: &'static str,
        value: usize,
        bound: usize,
    },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid list assignment: {0}")]
    InvalidAssignment(String),

    #[error("coloring is not total: vertex {0} has no color")]
    PartialColoring(usize),

    #[error("invalid grouping witness: {0}")]
    InvalidWitness(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("undecided: {0}")]
    Undecided(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn bound(what: &'static str, value: usize, bound: usize) -> Result<()> {
    if value > bound {
        Err(Error::BoundExceeded { what, value, bound })
    } else {
        Ok(())
    }
}
