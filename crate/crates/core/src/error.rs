use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("rate mismatch: {left} vs {right}")]
    RateMismatch { left: String, right: String },
    #[error("exponential rate must be positive, got {0}")]
    NonPositiveRate(String),
    #[error("Laurent exponent {0} is below the floor of -4")]
    ExponentFloorExceeded(i32),
    #[error("integral diverges at the origin (combined exponent {0})")]
    DivergentAtOrigin(i32),
    #[error("potential {0} does not keep p(rho)e^(-a rho) closed under the Hamiltonian")]
    NonPolynomialPotential(String),
    #[error("right-hand side has a component {0} along the normalizable homogeneous solution")]
    ResonanceUnprojected(String),
    #[error("no polynomial solution of degree <= {0} exists")]
    NoPolynomialSolution(i32),
    #[error("polynomial ansatz leaves {0} free parameter(s); solution is not unique")]
    AmbiguousSolution(usize),
    #[error("overlap normalization {0} has no rational square root")]
    IrrationalNormalization(String),
    #[error("invalid quantum numbers n={n}, l={l}")]
    InvalidQuantumNumbers { n: i64, l: i64 },
    #[error("minus channel does not exist for l = 0")]
    NoMinusChannel,
    #[error("continuum wave has l={wave}, expected l={expected}")]
    ChannelMismatch { wave: i64, expected: i64 },
    #[error("wavenumber must be positive, got {0}")]
    NonPositiveQ(f64),
    #[error("grid too short: asymptotic envelope did not settle ({0})")]
    GridTooShort(String),
    #[error("quadrature did not converge: {0}")]
    QuadratureNotConverged(String),
    #[error("sum rule of order {j} diverges for l={l}")]
    DivergentSumRule { j: i64, l: i64 },
    #[error("expectation value diverges: {0}")]
    DivergentExpectation(String),
    #[error("order {0} is outside the supported range")]
    InvalidOrder(i64),
    #[error("J={j} is outside the validity range J >= {min}")]
    OutOfValidityRange { j: i64, min: i64 },
    #[error("invalid potential: {0}")]
    InvalidPotential(String),
    #[error("no bound state: {0}")]
    NoBoundState(String),
    #[error("eigenvalue search did not converge: {0}")]
    NotConverged(String),
    #[error("singular derivative: {0}")]
    SingularDerivative(String),
    #[error("scale parameters must be positive: {0}")]
    NonPositiveScale(String),
}
