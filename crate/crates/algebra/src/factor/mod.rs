//! Factorization of squarefree polynomials over the exact domains.
//!
//! Over the rationals the Zassenhaus method is used. Over the Gaussian
//! rationals a squarefree norm (Trager) reduces to the rational case. Both
//! refuse, with [`AlgebraError::FactorizationIncomplete`], rather than return
//! an unproven factor.
//!
//! [`AlgebraError::FactorizationIncomplete`]: crate::AlgebraError::FactorizationIncomplete

pub(crate) mod gaussian;
pub(crate) mod modp;
pub(crate) mod rational;

/// Largest degree accepted by the factorization routines.
pub const MAX_DEGREE: usize = 64;

/// Largest number of modular factors accepted for subset recombination.
pub const MAX_MODULAR_FACTORS: usize = 20;
