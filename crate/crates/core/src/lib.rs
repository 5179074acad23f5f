//! Exact computations around nilpotent orbits of Sp(2n): symplectic
//! partitions and their expansions, sl2-triples and gradings, characters and
//! Heisenberg polarizations, root-exchange certification, and isotropy of the
//! stabilizer quadratic forms over the rationals.

pub mod exchange;
pub mod fourier;
pub mod liealg;
pub mod partitions;
pub mod poly;
pub mod scalar;
pub mod stabilizer;

pub use scalar::Rational;
