//! Root-exchange quadruples, Weyl sorting of cocharacters, and the Levi
//! conjugations that move characters between shapes.

mod levi_conj;
mod quadruple;
mod weyl;

use thiserror::Error;

pub use levi_conj::{epsilon_bar_check, epsilon_check, fold_entries, render, EpsilonCheck, SymbolicTerm};
pub use quadruple::{
    certify_corollary24, heisenberg_quadruple, validate_quadruple, ConditionResult,
    ExchangeQuadruple, Halves, QuadrupleReport, UnipotentGroupSpec, Witness,
};
pub use weyl::{conjugate_nilpotent, levi_embed, weyl_sorter, SignedPermutation, TieBreak};

use crate::fourier::FourierError;
use crate::liealg::{LieError, RootLabel};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExchangeError {
    #[error("groups of rank {found} in a quadruple of rank {expected}")]
    RankMismatch { expected: usize, found: usize },
    #[error("conjugating matrix is not symplectic")]
    NotSymplectic,
    #[error("Levi block of size {0} does not fit in rank {1}")]
    BadLeviBlock(usize, usize),
    #[error("Levi block is singular")]
    Singular,
    #[error("root span is not nilpotent (contains {0} with its negative or a non-terminating series)")]
    NotNilpotent(RootLabel),
    #[error(transparent)]
    Fourier(#[from] FourierError),
    #[error(transparent)]
    Lie(#[from] LieError),
}
