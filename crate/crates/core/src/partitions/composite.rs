//! Composite partitions `p₁ ∘ p₂ ∘ …` and the rewrites between them and
//! ordinary partitions.

use serde::{Deserialize, Deserializer, Serialize};

use super::{PartitionError, SquareClassAssignment, SymplecticPartition};
use crate::scalar::squarefree_part;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stage {
    pub partition: SymplecticPartition,
    pub classes: SquareClassAssignment,
}

impl Stage {
    pub fn new(parts: Vec<u32>, classes: &[i64]) -> Result<Self, PartitionError> {
        let partition = SymplecticPartition::new(parts)?;
        let classes = SquareClassAssignment::for_partition(&partition, classes)?;
        Ok(Stage { partition, classes })
    }

    /// Sum of the parts other than 1.
    fn nontrivial(&self) -> u32 {
        self.partition.parts().iter().filter(|&&x| x > 1).sum()
    }

    fn ones(&self) -> usize {
        self.partition.parts().iter().filter(|&&x| x == 1).count()
    }

    /// Parts other than 1, in order.
    fn head(&self) -> Vec<u32> {
        self.partition.parts().iter().copied().filter(|&x| x > 1).collect()
    }
}

#[derive(Serialize, Deserialize)]
struct StageDoc {
    partition: Vec<u32>,
    square_classes: Vec<i64>,
}

impl Serialize for Stage {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        StageDoc {
            partition: self.partition.parts().to_vec(),
            square_classes: self.classes.values(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Stage {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let doc = StageDoc::deserialize(d)?;
        Stage::new(doc.partition, &doc.square_classes).map_err(serde::de::Error::custom)
    }
}

/// Stages of shrinking total: each stage's total equals the previous total
/// minus the previous stage's parts other than 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct CompositePartition {
    stages: Vec<Stage>,
}

impl CompositePartition {
    pub fn new(stages: Vec<Stage>) -> Result<Self, PartitionError> {
        if stages.is_empty() {
            return Err(PartitionError::BadComposite("no stages".into()));
        }
        for (k, w) in stages.windows(2).enumerate() {
            let want = w[0].partition.total() - w[0].nontrivial();
            if w[1].partition.total() != want {
                return Err(PartitionError::BadComposite(format!(
                    "stage {} has total {}, expected {}",
                    k + 2,
                    w[1].partition.total(),
                    want
                )));
            }
        }
        Ok(CompositePartition { stages })
    }

    pub fn stages(&self) -> &[Stage] {
        &self.stages
    }
}

impl<'de> Deserialize<'de> for CompositePartition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let stages = Vec::<Stage>::deserialize(d)?;
        CompositePartition::new(stages).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RewriteRule {
    MergeLeadingEven,
    SplitLeadingEven,
    Prop32Merge,
    Prop33Merge,
    Lemma43Step,
}

impl std::str::FromStr for RewriteRule {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "MergeLeadingEven" | "merge-leading-even" => RewriteRule::MergeLeadingEven,
            "SplitLeadingEven" | "split-leading-even" => RewriteRule::SplitLeadingEven,
            "Prop32Merge" | "prop32-merge" => RewriteRule::Prop32Merge,
            "Prop33Merge" | "prop33-merge" => RewriteRule::Prop33Merge,
            "Lemma43Step" | "lemma43-step" => RewriteRule::Lemma43Step,
            _ => return Err(format!("unknown rule {s:?}")),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RewriteOutcome {
    Composite(CompositePartition),
    Partition(Stage),
}

fn violated(msg: impl Into<String>) -> PartitionError {
    PartitionError::HypothesisViolated(msg.into())
}

fn finish(mut prefix: Vec<Stage>, tail: Vec<Stage>) -> Result<RewriteOutcome, PartitionError> {
    prefix.extend(tail);
    if prefix.len() == 1 {
        Ok(RewriteOutcome::Partition(prefix.pop().unwrap()))
    } else {
        Ok(RewriteOutcome::Composite(CompositePartition::new(prefix)?))
    }
}

fn last_two(c: &CompositePartition) -> Result<(Vec<Stage>, &Stage, &Stage), PartitionError> {
    let s = c.stages();
    if s.len() < 2 {
        return Err(violated("rule needs at least two stages"));
    }
    Ok((s[..s.len() - 2].to_vec(), &s[s.len() - 2], &s[s.len() - 1]))
}

/// Applies `rule` to the trailing stage(s) of `c`.
pub fn composite_rewrite(
    c: &CompositePartition,
    rule: RewriteRule,
) -> Result<RewriteOutcome, PartitionError> {
    match rule {
        RewriteRule::SplitLeadingEven => {
            let s = c.stages();
            let (prefix, last) = (s[..s.len() - 1].to_vec(), &s[s.len() - 1]);
            let parts = last.partition.parts();
            let lead = *parts.first().ok_or_else(|| violated("empty stage"))?;
            if lead % 2 == 1 {
                return Err(violated(format!("leading part {lead} is odd")));
            }
            if parts.len() < 2 {
                return Err(violated("nothing follows the leading part"));
            }
            if parts[1] > lead {
                return Err(violated(format!("2n1 = {lead} < p2 = {}", parts[1])));
            }
            let classes = last.classes.values();
            let total = last.partition.total();
            let mut first = vec![lead];
            first.extend(std::iter::repeat(1).take((total - lead) as usize));
            let a = Stage::new(first, &classes[..1])?;
            let b = Stage::new(parts[1..].to_vec(), &classes[1..])?;
            finish(prefix, vec![a, b])
        }
        RewriteRule::MergeLeadingEven => {
            let (prefix, s1, s2) = last_two(c)?;
            let head = s1.head();
            if head.len() != 1 || head[0] % 2 == 1 {
                return Err(violated(format!(
                    "first stage {} is not of the form [(2n1) 1^m]",
                    s1.partition
                )));
            }
            let lead = head[0];
            if let Some(&p2) = s2.partition.parts().first() {
                if p2 > lead {
                    return Err(violated(format!("2n1 = {lead} < p2 = {p2}")));
                }
            }
            let mut parts = vec![lead];
            parts.extend_from_slice(s2.partition.parts());
            let mut classes = s1.classes.values();
            classes.extend(s2.classes.values());
            finish(prefix, vec![Stage::new(parts, &classes)?])
        }
        RewriteRule::Prop32Merge => {
            let (prefix, s1, s2) = last_two(c)?;
            let (h1, h2) = (s1.head(), s2.head());
            if h1.len() != 1 || h1[0] % 2 == 1 {
                return Err(violated(format!("first stage {} is not [(2k) 1^m]", s1.partition)));
            }
            let two_k = h1[0];
            if h2 != [two_k + 2] {
                return Err(violated(format!(
                    "second stage {} is not [({}) 1^m]",
                    s2.partition,
                    two_k + 2
                )));
            }
            let alpha = s1.classes.values()[0];
            let beta = s2.classes.values()[0];
            if squarefree_part(-alpha)? != beta {
                return Err(violated(format!(
                    "beta = {beta} is not -alpha = {} modulo squares",
                    -alpha
                )));
            }
            let mut parts = vec![two_k + 1, two_k + 1];
            parts.extend(std::iter::repeat(1).take(s2.ones()));
            finish(prefix, vec![Stage::new(parts, &[])?])
        }
        RewriteRule::Prop33Merge => {
            let (prefix, s1, s2) = last_two(c)?;
            let h1 = s1.head();
            if h1.len() != 2 || h1[0] != h1[1] || h1[0] % 2 == 0 {
                return Err(violated(format!(
                    "first stage {} is not [(2k+1)^2 1^m]",
                    s1.partition
                )));
            }
            let odd = h1[0];
            if let Some(&p1) = s2.partition.parts().first() {
                if p1 > odd {
                    return Err(violated(format!("2k+1 = {odd} < p1 = {p1}")));
                }
            }
            let mut parts = vec![odd, odd];
            parts.extend_from_slice(s2.partition.parts());
            finish(prefix, vec![Stage::new(parts, &s2.classes.values())?])
        }
        RewriteRule::Lemma43Step => {
            let s = c.stages();
            let (prefix, last) = (s[..s.len() - 1].to_vec(), &s[s.len() - 1]);
            let parts = last.partition.parts();
            let lead = *parts.first().ok_or_else(|| violated("empty stage"))?;
            if lead % 2 == 1 {
                return Err(violated(format!("leading part {lead} is odd")));
            }
            let odd = *parts.get(1).ok_or_else(|| violated("no odd run after 2n1"))?;
            if odd % 2 == 0 {
                return Err(violated(format!("part after 2n1 is {odd}, not odd")));
            }
            let run = parts[1..].iter().take_while(|&&x| x == odd).count();
            // run is even because odd parts come in pairs, so k = run/2 ≥ 1.
            if lead < odd + 1 {
                return Err(violated(format!("2n1 = {lead} < 2n2+2 = {}", odd + 1)));
            }
            let tail = &parts[1 + run..];
            let mut out = vec![lead, odd + 1];
            out.extend(std::iter::repeat(odd).take(run - 2));
            if odd > 1 {
                out.push(odd - 1);
            }
            out.extend_from_slice(tail);
            // The two new even parts carry the trivial class.
            let old = last.classes.values();
            let mut classes = vec![old[0], 1];
            if odd > 1 {
                classes.push(1);
            }
            classes.extend_from_slice(&old[1..]);
            finish(prefix, vec![Stage::new(out, &classes)?])
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn comp(stages: &[(&[u32], &[i64])]) -> CompositePartition {
        CompositePartition::new(
            stages
                .iter()
                .map(|(p, a)| Stage::new(p.to_vec(), a).unwrap())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn split_and_merge_leading_even() {
        let c = comp(&[(&[4, 2], &[1, 1])]);
        let split = composite_rewrite(&c, RewriteRule::SplitLeadingEven).unwrap();
        let want = comp(&[(&[4, 1, 1], &[1]), (&[2], &[1])]);
        assert_eq!(split, RewriteOutcome::Composite(want.clone()));
        let back = composite_rewrite(&want, RewriteRule::MergeLeadingEven).unwrap();
        assert_eq!(back, RewriteOutcome::Partition(Stage::new(vec![4, 2], &[1, 1]).unwrap()));
    }

    #[test]
    fn single_merge() {
        let c = comp(&[(&[2, 1, 1, 1, 1, 1, 1], &[1]), (&[4, 1, 1], &[-1])]);
        let r = composite_rewrite(&c, RewriteRule::Prop32Merge).unwrap();
        assert_eq!(r, RewriteOutcome::Partition(Stage::new(vec![3, 3, 1, 1], &[]).unwrap()));
        let bad = comp(&[(&[2, 1, 1, 1, 1, 1, 1], &[1]), (&[4, 1, 1], &[1])]);
        assert!(matches!(
            composite_rewrite(&bad, RewriteRule::Prop32Merge),
            Err(PartitionError::HypothesisViolated(_))
        ));
        // -1 and -4 are the same class.
        let c = comp(&[(&[2, 1, 1, 1, 1, 1, 1], &[1]), (&[4, 1, 1], &[-4])]);
        assert!(composite_rewrite(&c, RewriteRule::Prop32Merge).is_ok());
    }

    #[test]
    fn stages_must_chain() {
        let s1 = Stage::new(vec![2, 1, 1, 1, 1], &[1]).unwrap();
        let s2 = Stage::new(vec![4, 1, 1], &[-1]).unwrap();
        assert!(matches!(
            CompositePartition::new(vec![s1, s2]),
            Err(PartitionError::BadComposite(_))
        ));
    }

    #[test]
    fn double_merge() {
        let c = comp(&[(&[3, 3, 1, 1, 1, 1], &[]), (&[2, 2], &[1, 3])]);
        let r = composite_rewrite(&c, RewriteRule::Prop33Merge).unwrap();
        assert_eq!(r, RewriteOutcome::Partition(Stage::new(vec![3, 3, 2, 2], &[1, 3]).unwrap()));
        let c = comp(&[(&[3, 3, 1, 1, 1, 1], &[]), (&[4], &[1])]);
        assert!(composite_rewrite(&c, RewriteRule::Prop33Merge).is_err());
    }

    #[test]
    fn descent_step() {
        let c = comp(&[(&[6, 3, 3, 3, 3, 2], &[5, 7])]);
        let r = composite_rewrite(&c, RewriteRule::Lemma43Step).unwrap();
        assert_eq!(
            r,
            RewriteOutcome::Partition(Stage::new(vec![6, 4, 3, 3, 2, 2], &[5, 1, 1, 7]).unwrap())
        );
        let c = comp(&[(&[4, 3, 3], &[1])]);
        assert!(composite_rewrite(&c, RewriteRule::Lemma43Step).is_ok());
        let c = comp(&[(&[2, 3, 3], &[1])]);
        assert!(composite_rewrite(&c, RewriteRule::Lemma43Step).is_err());
    }
}
