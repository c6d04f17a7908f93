use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("a coefficient has a pole at x = 1/2")]
    PoleAtHalf,

    #[error("no closed formula for family {family} with exponent {exp}")]
    UnsupportedFamilyExponent { family: String, exp: u32 },

    #[error("exponent {exp} is outside the supported range for {kind}")]
    UnsupportedExponent { kind: String, exp: i64 },

    #[error("quadrature did not reach the target: level {level}, last inter-level delta 2^{log2_delta:.1}")]
    PrecisionUnreachable { level: u32, log2_delta: f64 },

    #[error("closed form for {context} has unexpected monomial {key}")]
    UnexpectedMonomial { context: String, key: String },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
