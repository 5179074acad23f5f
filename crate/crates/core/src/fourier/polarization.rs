//! Root lists splitting `g_1` into two halves, one pair of blocks at a time.

use serde::{Deserialize, Serialize};

use crate::liealg::RootLabel;
use crate::partitions::{Block, SymplecticPartition};

/// Which of the two parity patterns a block pair falls under.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairCase {
    /// Earlier block even, later block odd.
    EvenOdd,
    /// Earlier block odd, later block even.
    OddEven,
}

/// An x-side root matched with a y-side root, whose bracket lands on the
/// support of the character.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchedPair {
    pub block_i: usize,
    pub block_j: usize,
    pub case: PairCase,
    pub x_root: RootLabel,
    pub y_root: RootLabel,
    /// The pair that meets the long root `-2e` of the even block.
    pub long: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolarizationRoots {
    pub x_roots: Vec<RootLabel>,
    pub y_roots: Vec<RootLabel>,
    pub pairs: Vec<MatchedPair>,
}

fn e_plus(i: usize, j: usize) -> RootLabel {
    RootLabel::sum(i, j, false)
}

fn e_minus(i: usize, j: usize) -> RootLabel {
    RootLabel::EiMinusEj(i, j)
}

fn neg_plus(i: usize, j: usize) -> RootLabel {
    RootLabel::sum(i, j, true)
}

fn pair_roots(bi: usize, bj: usize, i: &Block, j: &Block) -> Vec<MatchedPair> {
    let c = ((i.part - j.part - 1) / 2) as usize;
    let ni = i.offset;
    let nj = j.offset;
    let last_j = j.last();
    let mut out = Vec::new();
    let mut push = |case, x_root, y_root, long| {
        out.push(MatchedPair {
            block_i: bi,
            block_j: bj,
            case,
            x_root,
            y_root,
            long,
        })
    };
    if i.is_even() {
        let pj = j.part as usize;
        let top = (pj + 1) / 2;
        for l in 1..top {
            let alpha = e_plus(ni + c + l, last_j - l + 1);
            let delta = neg_plus(last_j - l + 1, ni + c + l + 1);
            push(PairCase::EvenOdd, delta, alpha, false);
            let beta = e_minus(ni + c + l, nj + l);
            let gamma = e_minus(nj + l, ni + c + l + 1);
            push(PairCase::EvenOdd, gamma, beta, false);
        }
        let alpha = e_plus(ni + c + top, last_j - top + 1);
        let gamma = e_minus(ni + c + top, nj + top);
        push(PairCase::EvenOdd, gamma, alpha, true);
    } else {
        let half = (j.part / 2) as usize;
        for l in 1..=half {
            let alpha = e_minus(ni + c + l, nj + l);
            let gamma = e_minus(nj + l, ni + c + l + 1);
            push(PairCase::OddEven, gamma, alpha, false);
            let beta = e_plus(ni + c + half + l, last_j - l + 1);
            let delta = neg_plus(last_j - l + 1, ni + c + half + l + 1);
            push(PairCase::OddEven, delta, beta, false);
        }
    }
    out
}

/// The literal lists are not isotropic on the x side when an even part sits
/// above an odd part of size at least 3: consecutive `γ_l`, `γ_{top}` bracket
/// onto a root where the character is non-trivial. Swapping the sides of the
/// `(δ, α)` pairs and of the long pair for such block pairs repairs this while
/// keeping every root and every matched pair.
pub fn lagrangian_polarization(p: &SymplecticPartition) -> PolarizationRoots {
    let blocks = p.blocks().blocks;
    let mut pol = polarization_roots(p);
    for m in &mut pol.pairs {
        let swap = m.case == PairCase::EvenOdd
            && blocks[m.block_j].part >= 3
            && !matches!(m.x_root, RootLabel::EiMinusEj(..) if !m.long);
        if swap {
            std::mem::swap(&mut m.x_root, &mut m.y_root);
        }
    }
    pol.x_roots = pol.pairs.iter().map(|m| m.x_root).collect();
    pol.y_roots = pol.pairs.iter().map(|m| m.y_root).collect();
    pol
}

pub fn polarization_roots(p: &SymplecticPartition) -> PolarizationRoots {
    let blocks = p.blocks().blocks;
    let mut pairs = Vec::new();
    for bi in 0..blocks.len() {
        for bj in bi + 1..blocks.len() {
            if blocks[bi].part % 2 != blocks[bj].part % 2 {
                pairs.extend(pair_roots(bi, bj, &blocks[bi], &blocks[bj]));
            }
        }
    }
    PolarizationRoots {
        x_roots: pairs.iter().map(|m| m.x_root).collect(),
        y_roots: pairs.iter().map(|m| m.y_root).collect(),
        pairs,
    }
}
