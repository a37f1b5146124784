//! Exact rational arithmetic, square classes of ℚ*, places of ℚ and Hilbert
//! symbols.

mod factor;
mod hilbert;
mod rational;
mod square_class;

pub use factor::{factor_bound, factorize, DEFAULT_FACTOR_BOUND, FACTOR_BOUND_ENV};
pub use hilbert::{hilbert_symbol, is_local_square, relevant_places, Place};
pub use rational::{parse_rational, rat, Rational};
pub use square_class::{square_class, SquareClass};
