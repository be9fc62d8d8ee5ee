use thiserror::Error;

/// Everything that can go wrong when evaluating or certifying.
///
/// Every variant names the violated precondition so frontends can echo it
/// verbatim.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parameter `{name}` = {value} is outside its domain: {expected}")]
    Domain {
        name: &'static str,
        value: String,
        expected: &'static str,
    },
    #[error("s = 1 is a pole; use the regularized coefficient routines")]
    Pole,
    #[error("the principal character is not allowed here")]
    PrincipalCharacter,
    #[error("a primitive character is required (conductor {conductor}, modulus {modulus})")]
    NotPrimitive { conductor: u64, modulus: u64 },
    #[error("integral does not converge: {0}")]
    Divergent(&'static str),
    #[error("modulus {0} has no primitive characters")]
    NoPrimitiveCharacter(u64),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T: std::fmt::Display>(
    name: &'static str,
    value: T,
    expected: &'static str,
) -> Error {
    Error::Domain {
        name,
        value: value.to_string(),
        expected,
    }
}
