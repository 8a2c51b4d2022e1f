use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("polynomial must have degree at least {min}, got {degree}")]
    DegreeTooLow { degree: isize, min: usize },
    #[error("leading coefficient is zero or negligible")]
    DegenerateLeadingCoefficient,
    #[error("zero leading coefficient in the elimination variable")]
    ZeroLeadingCoefficient,
    #[error("root finder did not converge after {iterations} iterations (worst residual {residual:e})")]
    NonConvergence { iterations: usize, residual: f64 },
    #[error("interpolation nodes are not pairwise distinct")]
    DuplicateNodes,
    #[error("not invertible modulo φ: gcd has degree {gcd_degree}")]
    NotInvertible { gcd_degree: usize },
    #[error("roots of φ are not distinct")]
    NonDistinctRoots,
    #[error("coset representatives have different moduli")]
    ModulusMismatch,
    #[error("admissibility guard violated: {0}")]
    GuardViolation(String),
    #[error("back-substitution denominator {value:e} is below tolerance")]
    BackSubSingular { value: f64 },
    #[error("source point is too close to a caustic ({0})")]
    NearCaustic(String),
    #[error("{what}: {value:e} exceeds tolerance {tol:e}")]
    ToleranceExceeded { what: String, value: f64, tol: f64 },
    #[error("resultant is not proportional to φ for {0}")]
    NotProportional(String),
    #[error("multiplier identity fails for {label}: residual {residual}")]
    IdentityFailure { label: String, residual: String },
    #[error("gradient equivalence fails for {0}")]
    EquivalenceFailure(String),
    #[error("Jacobian/Hessian sign is not constant for {0}")]
    InconsistentSign(String),
    #[error("inconsistent scan: {0}")]
    InconsistentScan(String),
    #[error("no maximal-image region found (best real count {best})")]
    NotFound { best: usize },
    #[error("catalog: {0}")]
    Catalog(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}
