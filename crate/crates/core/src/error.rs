use core::fmt;

use num_bigint::BigInt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Square root of a negative number.
    NegativeSqrt(BigInt),
    /// Factorization or divisor enumeration of zero.
    Zero,
    /// Trial division stopped at its limit and the cofactor could not be
    /// certified prime.
    IncompleteFactorization {
        cofactor: BigInt,
    },
    /// Operation needs `c != s^3`.
    Degenerate,
    /// Linear equation with a zero coefficient.
    ZeroCoefficient,
    UnknownFormat(alloc::string::String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NegativeSqrt(n) => write!(f, "square root of negative number {n}"),
            Error::Zero => f.write_str("zero has no finite factorization"),
            Error::IncompleteFactorization { cofactor } => {
                write!(
                    f,
                    "incomplete factorization: cofactor {cofactor} not certified prime"
                )
            }
            Error::Degenerate => {
                f.write_str("degenerate system (c = s^3) has infinitely many solutions")
            }
            Error::ZeroCoefficient => f.write_str("coefficient of X must be nonzero"),
            Error::UnknownFormat(name) => write!(f, "unknown trace format `{name}`"),
        }
    }
}

impl core::error::Error for Error {}
