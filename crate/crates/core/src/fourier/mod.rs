//! Characters of `V_{p,2}`, the Heisenberg structure on `g_1`, and its
//! polarization.

mod character;
mod heisenberg;
mod polarization;

use thiserror::Error;

pub use character::{character_data, entry_terms, mirror, CharacterFunctional, EntryTerm};
pub use heisenberg::{
    heisenberg_form, nondegeneracy_instance, nontrivial_sample, pairing_identities,
    pairing_identities_symbolic, polarization_scale, verify_lemma21, HeisenbergReport,
    NondegeneracyInstance, NondegeneracySummary, PairingCheck, PairingReport, NONTRIVIAL_SAMPLE,
};
pub use polarization::{lagrangian_polarization, polarization_roots, MatchedPair, PairCase, PolarizationRoots};

use crate::liealg::LieError;
use crate::partitions::PartitionError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FourierError {
    #[error("no square class for block {0}")]
    MissingSquareClass(usize),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    Lie(#[from] LieError),
}
