use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("odd order required: p = 2 is not supported")]
    EvenCharacteristic,
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("invalid ring parameter: {0}")]
    BadParameter(&'static str),
    #[error("the integers-mod-p^n family requires r = 1")]
    ZmodNeedsPrimeField,
    #[error("bad modulus polynomial: {0}")]
    BadModulus(&'static str),
    #[error("ring too large for this implementation")]
    TooLarge,
    #[error("non-unit has no inverse")]
    NonUnit,
    #[error("element index {0} out of range")]
    OutOfRange(u64),
    #[error("ideal exponent {k} out of range 0..={n}")]
    IdealOutOfRange { k: u32, n: u32 },
    #[error("cannot parse ring spec {0:?}: expected \"zmod:p^n\" or \"polyq:p^r^n\"")]
    SpecGrammar(alloc::string::String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatError {
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("not nilpotent")]
    NotNilpotent,
    #[error("enumeration of {required} matrices exceeds the cap of {cap}")]
    CapExceeded { required: u64, cap: u64 },
    #[error(transparent)]
    Ring(#[from] RingError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("malformed element {0:?}")]
    Element(alloc::string::String),
    #[error("malformed matrix {0:?}: expected [[a,b],[c,d]]")]
    Matrix(alloc::string::String),
    #[error("malformed quaternion {0:?}: expected r1+r2*i+r3*j+r4*k")]
    Quaternion(alloc::string::String),
    #[error(transparent)]
    Ring(#[from] RingError),
}
