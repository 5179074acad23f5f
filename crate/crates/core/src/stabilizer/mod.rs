//! Quadratic forms attached to the stabilizer of a character, and their
//! isotropy over Q.

mod hilbert;
mod isotropy;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use hilbert::{hilbert_symbol, is_local_square, is_prime, prime_factors, Place};
pub use isotropy::{
    decide_isotropy, find_witness, is_isotropic_rational, DiagonalQuadraticForm,
    IsotropyDecision, LocalDatum, WITNESS_BUDGET, WITNESS_HEIGHT,
};

use crate::partitions::{PartitionError, SquareClassAssignment, SymplecticPartition};
use crate::scalar::SquareClassError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StabilizerError {
    #[error("{0} is not a prime")]
    BadPlace(u64),
    #[error("cannot parse place {0:?}")]
    BadPlaceName(String),
    #[error("quadratic form coefficients must be non-zero")]
    ZeroCoefficient,
    #[error("no square class for block {0}")]
    MissingSquareClass(usize),
    #[error("odd part {0} present; expected all parts even")]
    OddPartPresent(u32),
    #[error(transparent)]
    SquareClass(#[from] SquareClassError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
}

/// One orthogonal block per distinct even part, in decreasing part order, and
/// one symplectic rank per distinct odd part.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizerShape {
    pub even_parts: Vec<u32>,
    pub orthogonal_blocks: Vec<DiagonalQuadraticForm>,
    pub odd_parts: Vec<u32>,
    pub symplectic_ranks: Vec<usize>,
}

impl StabilizerShape {
    pub fn total_orthogonal_dim(&self) -> usize {
        self.orthogonal_blocks.iter().map(DiagonalQuadraticForm::dim).sum()
    }
}

pub fn stabilizer_forms(
    p: &SymplecticPartition,
    a: &SquareClassAssignment,
) -> Result<StabilizerShape, StabilizerError> {
    let blocks = p.blocks().blocks;
    let mut even_parts: Vec<u32> = Vec::new();
    let mut coeffs: Vec<Vec<i64>> = Vec::new();
    let mut odd_parts: Vec<u32> = Vec::new();
    let mut symplectic_ranks: Vec<usize> = Vec::new();
    for (i, b) in blocks.iter().enumerate() {
        if b.is_even() {
            let c = a.get(i).ok_or(StabilizerError::MissingSquareClass(i))?;
            if even_parts.last() == Some(&b.part) {
                coeffs.last_mut().expect("group exists").push(c);
            } else {
                even_parts.push(b.part);
                coeffs.push(vec![c]);
            }
        } else if odd_parts.last() == Some(&b.part) {
            *symplectic_ranks.last_mut().expect("group exists") += 1;
        } else {
            odd_parts.push(b.part);
            symplectic_ranks.push(1);
        }
    }
    let orthogonal_blocks = coeffs
        .into_iter()
        .map(DiagonalQuadraticForm::new)
        .collect::<Result<_, _>>()?;
    Ok(StabilizerShape {
        even_parts,
        orthogonal_blocks,
        odd_parts,
        symplectic_ranks,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizerReport {
    pub shape: StabilizerShape,
    pub block_decisions: Vec<IsotropyDecision>,
    pub anisotropic: bool,
    /// Odd-part blocks are present and left out of the verdict.
    pub odd_blocks_excluded: bool,
    /// Echo of the caller's assertion that the orbit data is a single
    /// partition; nothing here can check it.
    pub unique_partition_asserted: bool,
}

pub fn stabilizer_report(
    p: &SymplecticPartition,
    a: &SquareClassAssignment,
    unique_partition_asserted: bool,
) -> Result<StabilizerReport, StabilizerError> {
    let shape = stabilizer_forms(p, a)?;
    let block_decisions: Vec<IsotropyDecision> =
        shape.orthogonal_blocks.iter().map(decide_isotropy).collect();
    let anisotropic = block_decisions.iter().all(|d| !d.isotropic);
    Ok(StabilizerReport {
        odd_blocks_excluded: !shape.odd_parts.is_empty(),
        shape,
        block_decisions,
        anisotropic,
        unique_partition_asserted,
    })
}

/// Every orthogonal block anisotropic over Q.
pub fn is_anisotropic_stabilizer(
    p: &SymplecticPartition,
    a: &SquareClassAssignment,
) -> Result<bool, StabilizerError> {
    Ok(stabilizer_forms(p, a)?
        .orthogonal_blocks
        .iter()
        .all(|f| !is_isotropic_rational(f)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImaginaryCheck {
    pub accepted: bool,
    /// `(part, multiplicity)` with multiplicity at least 5.
    pub violators: Vec<(u32, usize)>,
}

/// Over a totally imaginary field a form of dimension 5 or more is isotropic,
/// so an anisotropic stabilizer needs every even multiplicity at most 4.
pub fn totally_imaginary_constraint(p: &SymplecticPartition) -> Result<ImaginaryCheck, StabilizerError> {
    if let Some(&odd) = p.parts().iter().find(|&&x| x % 2 == 1) {
        return Err(StabilizerError::OddPartPresent(odd));
    }
    let violators: Vec<(u32, usize)> = p.multiplicities().into_iter().filter(|&(_, s)| s > 4).collect();
    Ok(ImaginaryCheck {
        accepted: violators.is_empty(),
        violators,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(parts: &[u32]) -> SymplecticPartition {
        SymplecticPartition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn shapes() {
        let p = sp(&[4, 4, 2, 2]);
        let a = SquareClassAssignment::for_partition(&p, &[1, -1, 1, 1]).unwrap();
        let s = stabilizer_forms(&p, &a).unwrap();
        assert_eq!(s.even_parts, vec![4, 2]);
        assert_eq!(s.orthogonal_blocks[0].coefficients(), &[1, -1]);
        assert_eq!(s.orthogonal_blocks[1].coefficients(), &[1, 1]);
        assert!(!is_anisotropic_stabilizer(&p, &a).unwrap());

        let p = sp(&[2, 2]);
        assert!(is_anisotropic_stabilizer(&p, &SquareClassAssignment::ones(&p)).unwrap());
        let p = sp(&[6]);
        assert!(is_anisotropic_stabilizer(&p, &SquareClassAssignment::ones(&p)).unwrap());

        let p = sp(&[4, 3, 3, 3, 3, 1, 1]);
        let s = stabilizer_forms(&p, &SquareClassAssignment::ones(&p)).unwrap();
        assert_eq!(s.odd_parts, vec![3, 1]);
        assert_eq!(s.symplectic_ranks, vec![2, 1]);
        assert_eq!(s.total_orthogonal_dim(), p.even_count());
    }

    #[test]
    fn imaginary_constraint() {
        let r = totally_imaginary_constraint(&sp(&[2, 2, 2, 2, 2])).unwrap();
        assert!(!r.accepted);
        assert_eq!(r.violators, vec![(2, 5)]);
        assert!(totally_imaginary_constraint(&sp(&[6, 6, 4, 4, 4, 4, 2, 2])).unwrap().accepted);
        assert!(totally_imaginary_constraint(&sp(&[4])).unwrap().accepted);
        assert_eq!(
            totally_imaginary_constraint(&sp(&[3, 3])),
            Err(StabilizerError::OddPartPresent(3))
        );
    }
}
