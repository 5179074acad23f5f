//! The Sp-expansion, directly and as a chain of elementary rewrites.

use serde::Serialize;

use super::{is_special, SymplecticPartition};

/// Direct recipe: at each 1-based index `i` with `p_{2i} = p_{2i+1}` odd and
/// `p_{2i-1} != p_{2i}`, replace the pair by `(p_{2i}+1, p_{2i+1}-1)`.
pub fn sp_expansion(p: &SymplecticPartition) -> SymplecticPartition {
    let parts = p.parts();
    let at = |k: usize| -> u32 { if k >= 1 && k <= parts.len() { parts[k - 1] } else { 0 } };
    let mut out = parts.to_vec();
    let mut i = 1;
    while 2 * i + 1 <= parts.len() {
        let (a, b, c) = (at(2 * i - 1), at(2 * i), at(2 * i + 1));
        if b == c && b % 2 == 1 && a != b {
            out[2 * i - 1] += 1;
            out[2 * i] -= 1;
        }
        i += 1;
    }
    out.retain(|&x| x > 0);
    SymplecticPartition::new(out).expect("expansion preserves the symplectic condition")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RewriteStep {
    pub before: SymplecticPartition,
    pub after: SymplecticPartition,
    /// The offending odd part `2n₂+1`.
    pub odd_part: u32,
    /// Its multiplicity `2k`.
    pub odd_multiplicity: usize,
    /// The even part `2n₁` sitting just above the odd run.
    pub even_part: u32,
}

/// Largest odd part with an odd number of even parts strictly above it.
fn offending_odd(p: &SymplecticPartition) -> Option<u32> {
    p.multiplicities()
        .into_iter()
        .map(|(v, _)| v)
        .filter(|v| v % 2 == 1)
        .find(|&o| p.even_parts().filter(|&e| e > o).count() % 2 == 1)
}

/// One rewrite `(2n₁)(o)^{2k} -> (2n₁)(o+1)(o)^{2k-2}(o-1)`.
fn step(p: &SymplecticPartition) -> Option<RewriteStep> {
    let o = offending_odd(p)?;
    let parts = p.parts();
    let start = parts.iter().position(|&x| x == o)?;
    let count = parts.iter().filter(|&&x| x == o).count();
    // An odd count of larger even parts means at least one exists; the
    // smallest of them is the nearest even part above the run.
    let even_part = parts[..start].iter().rev().copied().find(|x| x % 2 == 0)?;
    let mut out = parts.to_vec();
    out[start] = o + 1;
    out[start + count - 1] = o - 1;
    out.retain(|&x| x > 0);
    let after = SymplecticPartition::new(out).expect("rewrite preserves the symplectic condition");
    Some(RewriteStep {
        before: p.clone(),
        after,
        odd_part: o,
        odd_multiplicity: count,
        even_part,
    })
}

pub fn expansion_via_steps(p: &SymplecticPartition) -> (SymplecticPartition, Vec<RewriteStep>) {
    let mut cur = p.clone();
    let mut steps = Vec::new();
    while let Some(s) = step(&cur) {
        cur = s.after.clone();
        steps.push(s);
    }
    debug_assert!(is_special(&cur));
    (cur, steps)
}
