use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// The first condition a candidate seed pair violates.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeedError {
    #[error("seed sequence is identically zero")]
    ZeroSequence,
    #[error("seed sequence has degree >= ell0")]
    DegreeTooLarge,
    #[error("autocorrelations do not cancel at shift {0}")]
    NotGolay(i64),
    #[error("zero-shift energies of x0 and y0 differ")]
    EnergyMismatch,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid seed: {0}")]
    SeedInvalid(#[from] SeedError),
    #[error("memory budget exceeded: need {required} cells, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u64 },
    #[error("sequence has zero length")]
    ZeroLength,
    #[error("shift {shift} is outside [0, {period})")]
    ShiftOutOfRange { shift: i64, period: i64 },
    #[error("iteration depth t={t} is not in 0 < t < n={n}")]
    LevelTooSmall { n: u32, t: u32 },
    #[error("the two-level recursion does not cover shift 0")]
    ShiftZero,
    #[error("division by zero")]
    DivisionByZero,
    #[error("element is rational; its minimal polynomial is not cubic")]
    RationalInput,
    #[error("polynomial total degree {0} exceeds the cap of 24")]
    DegreeCapExceeded(u32),
    #[error("seed has non-real coefficients")]
    SeedNotRational,
    #[error("shift {s0} has not entered the support (|s0| >= ell0 = {ell0})")]
    ShiftNotEntered { s0: i64, ell0: i64 },
    #[error("value is not a rational number")]
    NotRational,
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
