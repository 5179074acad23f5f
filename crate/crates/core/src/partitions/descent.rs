//! Partition bookkeeping for the descent `[p₁ p₂ … p_r] -> [p₂ … p_r]`.

use serde::{Deserialize, Serialize};

use super::{PartitionError, SymplecticPartition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupKind {
    #[serde(rename = "sp")]
    Linear,
    #[serde(rename = "mp")]
    Metaplectic,
}

impl GroupKind {
    pub fn toggle(self) -> Self {
        match self {
            GroupKind::Linear => GroupKind::Metaplectic,
            GroupKind::Metaplectic => GroupKind::Linear,
        }
    }
}

pub fn descend(
    p: &SymplecticPartition,
    kind: GroupKind,
) -> Result<(SymplecticPartition, GroupKind), PartitionError> {
    descend_raw(p.parts(), kind)
}

/// Like [`descend`] but takes parts in the order given, so an unsorted
/// leading part is reported rather than silently re-sorted.
pub fn descend_raw(
    parts: &[u32],
    kind: GroupKind,
) -> Result<(SymplecticPartition, GroupKind), PartitionError> {
    let (&lead, rest) = parts.split_first().ok_or(PartitionError::Empty)?;
    if lead == 0 || rest.contains(&0) {
        return Err(PartitionError::NonPositivePart);
    }
    if lead % 2 == 1 {
        return Err(PartitionError::OddLeadingPart(lead));
    }
    if let Some(&other) = rest.iter().find(|&&x| x > lead) {
        return Err(PartitionError::LeadingNotMaximal { leading: lead, other });
    }
    let tail = SymplecticPartition::new(rest.to_vec())?;
    Ok((tail, kind.toggle()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(parts: &[u32]) -> SymplecticPartition {
        SymplecticPartition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn descent_chain() {
        assert_eq!(
            descend(&sp(&[4, 2]), GroupKind::Linear),
            Ok((sp(&[2]), GroupKind::Metaplectic))
        );
        assert_eq!(
            descend(&sp(&[2]), GroupKind::Metaplectic),
            Ok((SymplecticPartition::empty(), GroupKind::Linear))
        );
        assert_eq!(
            descend(&sp(&[6, 4, 2]), GroupKind::Linear),
            Ok((sp(&[4, 2]), GroupKind::Metaplectic))
        );
    }

    #[test]
    fn descent_errors() {
        assert_eq!(
            descend(&sp(&[3, 3]), GroupKind::Linear),
            Err(PartitionError::OddLeadingPart(3))
        );
        assert_eq!(
            descend_raw(&[2, 4], GroupKind::Linear),
            Err(PartitionError::LeadingNotMaximal { leading: 2, other: 4 })
        );
    }
}
