//! Hurwitz, Lerch and Dirichlet L-function derivatives for `Re(s) > 0`
//! through explicit Euler-summation representations, their expansion
//! coefficients at `s = 1` and `s = 0`, and numeric checks of the explicit
//! bounds those representations give.

pub mod afe;
pub mod bounds;
pub mod characters;
pub mod coefficients;
pub mod error;
pub mod logpoly;
pub mod quad;
pub mod sawtooth;
pub mod summation;
pub mod zeta;

pub use error::{Error, Result};
pub use sawtooth::{EvalResult, TailIntegralSpec};

#[cfg(doctest)]
pub mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/sawtooth.md")]
    pub mod sawtooth {}
    #[doc = include_str!("../../../book/src/evaluation.md")]
    pub mod evaluation {}
    #[doc = include_str!("../../../book/src/characters.md")]
    pub mod characters {}
    #[doc = include_str!("../../../book/src/coefficients.md")]
    pub mod coefficients {}
    #[doc = include_str!("../../../book/src/bounds.md")]
    pub mod bounds {}
    #[doc = include_str!("../../../book/src/afe.md")]
    pub mod afe {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
    #[doc = include_str!("../../../book/src/validation.md")]
    pub mod validation {}
}
