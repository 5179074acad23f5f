//! Symplectic partitions: validation, enumeration, dominance, specialness.

mod composite;
mod descent;
mod expansion;

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::scalar::{squarefree_part, SquareClassError};

pub use composite::{composite_rewrite, CompositePartition, RewriteOutcome, RewriteRule, Stage};
pub use descent::{descend, descend_raw, GroupKind};
pub use expansion::{expansion_via_steps, sp_expansion, RewriteStep};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartitionError {
    #[error("partition has no parts")]
    Empty,
    #[error("parts must be positive")]
    NonPositivePart,
    #[error("total {0} is odd")]
    OddTotal(u64),
    #[error("odd part {part} occurs {count} times")]
    OddMultiplicity { part: u32, count: usize },
    #[error("totals differ: {0} vs {1}")]
    MismatchedTotal(u32, u32),
    #[error("leading part {0} is odd")]
    OddLeadingPart(u32),
    #[error("leading part {leading} is smaller than part {other}")]
    LeadingNotMaximal { leading: u32, other: u32 },
    #[error("expected {expected} square classes (one per even part), got {got}")]
    SquareClassCount { expected: usize, got: usize },
    #[error("no square class for block {0}")]
    MissingSquareClass(usize),
    #[error("bad square class: {0}")]
    BadSquareClass(#[from] SquareClassError),
    #[error("composite stages do not chain: {0}")]
    BadComposite(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
}

/// Non-increasing positive parts, odd values with even multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymplecticPartition {
    parts: Vec<u32>,
}

pub fn validate_symplectic(parts: &[i64]) -> Result<SymplecticPartition, PartitionError> {
    if parts.is_empty() {
        return Err(PartitionError::Empty);
    }
    if parts.iter().any(|&p| p <= 0 || p > u32::MAX as i64) {
        return Err(PartitionError::NonPositivePart);
    }
    SymplecticPartition::new(parts.iter().map(|&p| p as u32).collect())
}

impl SymplecticPartition {
    /// Sorts and checks; the empty partition is allowed here (rank zero).
    pub fn new(mut parts: Vec<u32>) -> Result<Self, PartitionError> {
        if parts.contains(&0) {
            return Err(PartitionError::NonPositivePart);
        }
        let total: u64 = parts.iter().map(|&p| p as u64).sum();
        if total % 2 == 1 {
            return Err(PartitionError::OddTotal(total));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        for (part, count) in multiplicities(&parts) {
            if part % 2 == 1 && count % 2 == 1 {
                return Err(PartitionError::OddMultiplicity { part, count });
            }
        }
        Ok(SymplecticPartition { parts })
    }

    pub fn empty() -> Self {
        SymplecticPartition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn total(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn n(&self) -> usize {
        self.total() as usize / 2
    }

    pub fn even_parts(&self) -> impl Iterator<Item = u32> + '_ {
        self.parts.iter().copied().filter(|p| p % 2 == 0)
    }

    pub fn even_count(&self) -> usize {
        self.even_parts().count()
    }

    /// (value, count) in decreasing value order.
    pub fn multiplicities(&self) -> Vec<(u32, usize)> {
        multiplicities(&self.parts)
    }

    pub fn is_all_even(&self) -> bool {
        self.parts.iter().all(|p| p % 2 == 0)
    }

    pub fn blocks(&self) -> BlockForm {
        BlockForm::of(self)
    }
}

fn multiplicities(sorted: &[u32]) -> Vec<(u32, usize)> {
    let mut out: Vec<(u32, usize)> = Vec::new();
    for &p in sorted {
        match out.last_mut() {
            Some((v, c)) if *v == p => *c += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

impl fmt::Display for SymplecticPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self
            .multiplicities()
            .into_iter()
            .map(|(p, c)| if c == 1 { p.to_string() } else { format!("{p}^{c}") })
            .collect();
        write!(f, "[{}]", body.join(" "))
    }
}

impl Serialize for SymplecticPartition {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.parts.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SymplecticPartition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let parts = Vec::<u32>::deserialize(d)?;
        SymplecticPartition::new(parts).map_err(serde::de::Error::custom)
    }
}

/// One chunk of the normalized block form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Block {
    pub part: u32,
    /// 1 for an even part, 2 for a pair of equal odd parts.
    pub e: u32,
    /// Number of coordinates among 1..n owned by the block.
    pub q: usize,
    /// Coordinates `offset+1 ..= offset+q` (1-based) belong to the block.
    pub offset: usize,
}

impl Block {
    pub fn is_even(&self) -> bool {
        self.e == 1
    }

    /// Last coordinate of the block, 1-based.
    pub fn last(&self) -> usize {
        self.offset + self.q
    }

    pub fn coords(&self) -> std::ops::RangeInclusive<usize> {
        self.offset + 1..=self.offset + self.q
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockForm {
    pub blocks: Vec<Block>,
}

impl BlockForm {
    pub fn of(p: &SymplecticPartition) -> Self {
        let mut blocks = Vec::new();
        let mut offset = 0;
        let mut k = 0;
        let parts = p.parts();
        while k < parts.len() {
            let part = parts[k];
            let (e, q) = if part % 2 == 0 {
                k += 1;
                (1, part as usize / 2)
            } else {
                k += 2;
                (2, part as usize)
            };
            blocks.push(Block { part, e, q, offset });
            offset += q;
        }
        BlockForm { blocks }
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().map(|b| b.q).sum()
    }

    pub fn even_block_indices(&self) -> Vec<usize> {
        (0..self.blocks.len()).filter(|&i| self.blocks[i].is_even()).collect()
    }
}

/// Square classes `a_i` for the even blocks, canonicalized squarefree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareClassAssignment {
    values: BTreeMap<usize, i64>,
}

impl SquareClassAssignment {
    /// `classes` lists one nonzero integer per even part, in part order.
    pub fn for_partition(p: &SymplecticPartition, classes: &[i64]) -> Result<Self, PartitionError> {
        let idx = p.blocks().even_block_indices();
        if idx.len() != classes.len() {
            return Err(PartitionError::SquareClassCount {
                expected: idx.len(),
                got: classes.len(),
            });
        }
        let mut values = BTreeMap::new();
        for (i, &c) in idx.into_iter().zip(classes) {
            values.insert(i, squarefree_part(c)?);
        }
        Ok(SquareClassAssignment { values })
    }

    pub fn ones(p: &SymplecticPartition) -> Self {
        let values = p.blocks().even_block_indices().into_iter().map(|i| (i, 1)).collect();
        SquareClassAssignment { values }
    }

    /// Every even block gets the same class.
    pub fn constant(p: &SymplecticPartition, c: i64) -> Result<Self, PartitionError> {
        let n = p.even_count();
        Self::for_partition(p, &vec![c; n])
    }

    pub fn from_map(values: BTreeMap<usize, i64>) -> Self {
        SquareClassAssignment { values }
    }

    pub fn get(&self, block: usize) -> Option<i64> {
        self.values.get(&block).copied()
    }

    /// Values in part order.
    pub fn values(&self) -> Vec<i64> {
        self.values.values().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Checks that every even block of `p` has a class.
    pub fn check(&self, p: &SymplecticPartition) -> Result<(), PartitionError> {
        for i in p.blocks().even_block_indices() {
            if !self.values.contains_key(&i) {
                return Err(PartitionError::MissingSquareClass(i));
            }
        }
        Ok(())
    }
}

impl Serialize for SquareClassAssignment {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.values().serialize(s)
    }
}

pub fn enumerate_symplectic(two_n: u32) -> Result<Vec<SymplecticPartition>, PartitionError> {
    if two_n == 0 {
        return Err(PartitionError::Empty);
    }
    if two_n % 2 == 1 {
        return Err(PartitionError::OddTotal(two_n as u64));
    }
    let mut out = Vec::new();
    let mut cur = Vec::new();
    gen_partitions(two_n, two_n, &mut cur, &mut |parts| {
        if let Ok(p) = SymplecticPartition::new(parts.to_vec()) {
            out.push(p);
        }
    });
    Ok(out)
}

/// All partitions of `rest` with parts ≤ `max`, lexicographically descending.
fn gen_partitions(rest: u32, max: u32, cur: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
    if rest == 0 {
        f(cur);
        return;
    }
    for p in (1..=max.min(rest)).rev() {
        cur.push(p);
        gen_partitions(rest - p, p, cur, f);
        cur.pop();
    }
}

/// Every odd value has an even number of even parts above it.
pub fn is_special(p: &SymplecticPartition) -> bool {
    let odd: BTreeSet<u32> = p.parts().iter().copied().filter(|x| x % 2 == 1).collect();
    odd.iter()
        .all(|&o| p.even_parts().filter(|&e| e > o).count() % 2 == 0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PartitionOrdering {
    Less,
    Greater,
    Equal,
    Incomparable,
}

pub fn dominance_compare(
    p: &SymplecticPartition,
    q: &SymplecticPartition,
) -> Result<PartitionOrdering, PartitionError> {
    if p.total() != q.total() {
        return Err(PartitionError::MismatchedTotal(p.total(), q.total()));
    }
    let len = p.len().max(q.len());
    let (mut sp, mut sq) = (0u32, 0u32);
    let (mut ge, mut le) = (true, true);
    for k in 0..len {
        sp += p.parts().get(k).copied().unwrap_or(0);
        sq += q.parts().get(k).copied().unwrap_or(0);
        match sp.cmp(&sq) {
            Ordering::Greater => le = false,
            Ordering::Less => ge = false,
            Ordering::Equal => {}
        }
    }
    Ok(match (ge, le) {
        (true, true) => PartitionOrdering::Equal,
        (true, false) => PartitionOrdering::Greater,
        (false, true) => PartitionOrdering::Less,
        (false, false) => PartitionOrdering::Incomparable,
    })
}

/// `p ≥ q` in dominance order.
pub fn dominates(p: &SymplecticPartition, q: &SymplecticPartition) -> bool {
    matches!(
        dominance_compare(p, q),
        Ok(PartitionOrdering::Greater | PartitionOrdering::Equal)
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MaximalReport {
    pub maximal: Vec<SymplecticPartition>,
    /// Maximal elements that are not special.
    pub non_special: Vec<SymplecticPartition>,
}

pub fn maximal_elements(set: &[SymplecticPartition]) -> Result<MaximalReport, PartitionError> {
    let uniq: BTreeSet<&SymplecticPartition> = set.iter().collect();
    let uniq: Vec<&SymplecticPartition> = uniq.into_iter().rev().collect();
    if let Some(first) = uniq.first() {
        if let Some(bad) = uniq.iter().find(|q| q.total() != first.total()) {
            return Err(PartitionError::MismatchedTotal(first.total(), bad.total()));
        }
    }
    let mut maximal = Vec::new();
    for p in &uniq {
        let dominated = uniq
            .iter()
            .any(|q| dominance_compare(q, p) == Ok(PartitionOrdering::Greater));
        if !dominated {
            maximal.push((*p).clone());
        }
    }
    let non_special = maximal.iter().filter(|p| !is_special(p)).cloned().collect();
    Ok(MaximalReport {
        maximal,
        non_special,
    })
}
