//! Arithmetic in `F_q` and `F_q[t]`.

pub mod factor;
pub mod field;
pub mod poly;
pub mod prime;
pub mod ratfunc;
pub mod text;

pub use factor::{factor, Factorization};
pub use field::{Elem, FiniteField};
pub use poly::Poly;
pub use prime::{enumerate_primes, Prime, ResidueField};
pub use ratfunc::RatFunc;
