use thiserror::Error;

/// Errors produced by the solver and its building blocks.
#[derive(Debug, Error)]
pub enum Error {
    /// A caller-supplied value violates a documented precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The normalisation factor of a polynomial-annihilation stencil vanishes,
    /// so the jump approximation is undefined for this stencil/point pair.
    #[error("degenerate stencil: |q_m| = {magnitude:.3e} is below 1e-14")]
    DegenerateStencil { magnitude: f64 },

    /// The element does not carry enough nodes for the requested sensor order.
    #[error("element sensor of order {order} needs at least {order} + 1 nodes, got {nodes}")]
    UnsupportedOrder { order: usize, nodes: usize },

    /// A matrix required to be invertible is numerically singular.
    #[error("matrix is numerically singular")]
    SingularMatrix,

    /// A nodal value became non-finite during time integration.
    #[error("solution blew up at t = {time:.6e} in element {element}")]
    BlowUp { time: f64, element: usize },

    /// The characteristic reference solver failed to converge; the
    /// finite-volume oracle should be used instead at this time.
    #[error(
        "characteristic solver did not converge at x = {x}, t = {t}; \
         use the finite-volume reference"
    )]
    OracleDiverged { x: f64, t: f64 },

    /// An experiment configuration failed validation or parsing.
    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
