use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u64),
    #[error("generator name `{0}` appears more than once")]
    DuplicateGeneratorName(String),
    #[error("generator name `{0}` is reserved")]
    ReservedName(String),
    #[error("`{0}` is not a valid generator name")]
    InvalidName(String),
    #[error("operands belong to different fields or rings")]
    FieldMismatch,
    #[error("the polynomial is an element of the coefficient field")]
    ElementOfK,
    #[error("the polynomial is zero")]
    ZeroPolynomial,
    #[error("the separant is zero")]
    ZeroSeparant,
    #[error("expected a single differential indeterminate")]
    MultivariateInput,
    #[error("order of the input exceeds the order of the divisor")]
    OrderTooHigh,
    #[error("irreducibility could not be established; pass an explicit assertion or an irreducible factor")]
    IrreducibilityUnknown,
    #[error("the polynomial is reducible; factor found: {0}")]
    Reducible(String),
    #[error("the class is zero in the quotient field")]
    DivisionByZeroClass,
    #[error("operands belong to different saturated ideals")]
    MixedIdeals,
    #[error("the inequation does not have lower rank than the equation")]
    OrderNotLower,
    #[error("input polynomial is zero")]
    ZeroInput,
    #[error("no non-vanishing point found within {0} candidates")]
    Exhausted(usize),
    #[error("`{0}` is not a constant generator of the presentation")]
    NotAConstantGenerator(String),
    #[error("a derivative variable of positive order is present")]
    DerivativeVariablePresent,
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
}

impl Error {
    /// Stable identifier used in reports.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NonPrimeCharacteristic(_) => "NonPrimeCharacteristic",
            Error::DuplicateGeneratorName(_) => "DuplicateGeneratorName",
            Error::ReservedName(_) => "ReservedName",
            Error::InvalidName(_) => "InvalidName",
            Error::FieldMismatch => "FieldMismatch",
            Error::ElementOfK => "ElementOfK",
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::ZeroSeparant => "ZeroSeparant",
            Error::MultivariateInput => "MultivariateInput",
            Error::OrderTooHigh => "OrderTooHigh",
            Error::IrreducibilityUnknown => "IrreducibilityUnknown",
            Error::Reducible(_) => "Reducible",
            Error::DivisionByZeroClass => "DivisionByZeroClass",
            Error::MixedIdeals => "MixedIdeals",
            Error::OrderNotLower => "OrderNotLower",
            Error::ZeroInput => "ZeroInput",
            Error::Exhausted(_) => "Exhausted",
            Error::NotAConstantGenerator(_) => "NotAConstantGenerator",
            Error::DerivativeVariablePresent => "DerivativeVariablePresent",
            Error::ArityMismatch { .. } => "ArityMismatch",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
