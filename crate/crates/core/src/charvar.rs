//! GL and SL character varieties of closed genus-g surfaces.
//!
//! Genus one goes through the symmetric-product model, where the generic
//! formulas do not apply.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::quiver::{DimVector, ParamSet, Quiver};
use crate::variety::VarietyDescriptor;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Group {
    GL,
    SL,
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Group::GL => "gl",
            Group::SL => "sl",
        })
    }
}

impl FromStr for Group {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "gl" => Ok(Group::GL),
            "sl" => Ok(Group::SL),
            other => Err(Error::InvalidArgument(format!("unknown group {other:?}, expected gl or sl"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SurfaceVariety {
    pub n: i64,
    pub g: i64,
    pub group: Group,
}

impl SurfaceVariety {
    pub fn new(n: i64, g: i64, group: Group) -> Result<Self> {
        if n < 1 || g < 1 {
            return Err(Error::InvalidArgument(format!("rank and genus must be at least 1, got n={n}, g={g}")));
        }
        Ok(SurfaceVariety { n, g, group })
    }
}

pub fn dimension_char(s: &SurfaceVariety) -> i64 {
    let SurfaceVariety { n, g, group } = *s;
    match (group, g) {
        (Group::GL, 1) => 2 * n,
        (Group::SL, 1) => 2 * (n - 1),
        (Group::GL, _) => 2 * n * n * (g - 1) + 2,
        (Group::SL, _) => 2 * (g - 1) * (n * n - 1),
    }
}

/// One block of a weighted partition: `mult` copies of a stable summand of
/// rank `rank`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct WeightedPart {
    pub mult: i64,
    pub rank: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharStratum {
    pub partition: Vec<WeightedPart>,
    pub dim: i64,
    pub codim: i64,
}

/// All multisets of blocks `(mult, rank)` with `sum mult * rank = n`, each
/// sorted, in lexicographic order. `max_rank` caps the block rank.
pub fn weighted_partitions(n: i64, max_rank: i64) -> Vec<Vec<WeightedPart>> {
    let mut blocks = Vec::new();
    for mult in 1..=n {
        for rank in 1..=max_rank.min(n / mult) {
            blocks.push(WeightedPart { mult, rank });
        }
    }
    fn go(blocks: &[WeightedPart], start: usize, left: i64, cur: &mut Vec<WeightedPart>, out: &mut Vec<Vec<WeightedPart>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..blocks.len() {
            let b = blocks[i];
            if b.mult * b.rank <= left {
                cur.push(b);
                go(blocks, i, left - b.mult * b.rank, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    if n >= 0 {
        go(&blocks, 0, n, &mut Vec::new(), &mut out);
    }
    out.sort();
    out
}

/// Strata by the type of the semisimple representation. GL only.
pub fn strata_char(s: &SurfaceVariety) -> Result<Vec<CharStratum>> {
    if s.group != Group::GL {
        return Err(Error::Precondition("strata are enumerated for GL only".into()));
    }
    let total = dimension_char(s);
    let max_rank = if s.g == 1 { 1 } else { s.n };
    let mut strata: Vec<CharStratum> = weighted_partitions(s.n, max_rank)
        .into_iter()
        .map(|partition| {
            let k = partition.len() as i64;
            let dim = if s.g == 1 {
                2 * k
            } else {
                2 * (k + (s.g - 1) * partition.iter().map(|b| b.rank * b.rank).sum::<i64>())
            };
            CharStratum { partition, dim, codim: total - dim }
        })
        .collect();
    strata.sort_by(|a, b| a.codim.cmp(&b.codim).then_with(|| a.partition.cmp(&b.partition)));
    Ok(strata)
}

/// Ranks `n'` labelling the components of the singular locus.
pub fn singular_components_char(s: &SurfaceVariety) -> Vec<i64> {
    if s.g == 1 {
        return if s.n >= 2 { vec![1] } else { Vec::new() };
    }
    (1..=s.n / 2).collect()
}

/// Quiver and dimension vector whose zero-parameter variety is the tangent
/// cone at a point of type `nu`.
pub fn local_quiver_char(g: i64, nu: &[WeightedPart]) -> Result<(Quiver, DimVector)> {
    if g < 1 || nu.is_empty() || nu.iter().any(|b| b.mult < 1 || b.rank < 1) {
        return Err(Error::InvalidArgument("need g >= 1 and a nonempty partition with positive blocks".into()));
    }
    let mut arrows = Vec::new();
    for (i, a) in nu.iter().enumerate() {
        let loops = (g - 1) * a.rank * a.rank + 1;
        arrows.extend(std::iter::repeat_n((i, i), loops as usize));
        for (j, b) in nu.iter().enumerate().skip(i + 1) {
            let count = (2 * g - 2) * a.rank * b.rank;
            arrows.extend(std::iter::repeat_n((i, j), count as usize));
        }
    }
    let e = DimVector::new(nu.iter().map(|b| b.mult).collect())?;
    Ok((Quiver::new(nu.len(), arrows)?, e))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CharMethod {
    Smooth,
    HilbertScheme,
    Blowup,
    Obstructed,
}

impl CharMethod {
    pub fn label(self) -> &'static str {
        match self {
            CharMethod::Smooth => "smooth",
            CharMethod::HilbertScheme => "hilbert-scheme",
            CharMethod::Blowup => "blowup",
            CharMethod::Obstructed => "obstructed",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharVerdict {
    pub resolvable: bool,
    pub method: CharMethod,
}

pub fn resolution_verdict_char(s: &SurfaceVariety) -> CharVerdict {
    let method = if s.n == 1 {
        CharMethod::Smooth
    } else if s.g == 1 {
        CharMethod::HilbertScheme
    } else if (s.n, s.g) == (2, 2) {
        CharMethod::Blowup
    } else {
        CharMethod::Obstructed
    };
    CharVerdict { resolvable: method != CharMethod::Obstructed, method }
}

/// The quiver variety of `n`-dimensional representations of the one-vertex
/// quiver with `d` loops.
pub fn char_as_quiver(n: i64, d: i64) -> Result<VarietyDescriptor> {
    if n < 1 || d < 1 {
        return Err(Error::InvalidArgument(format!("need n, d >= 1, got n={n}, d={d}")));
    }
    VarietyDescriptor::new(Quiver::jordan(d as usize), DimVector::new(vec![n])?, ParamSet::zero(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::variety::StratumPart;

    fn gl(n: i64, g: i64) -> SurfaceVariety {
        SurfaceVariety::new(n, g, Group::GL).unwrap()
    }

    fn sl(n: i64, g: i64) -> SurfaceVariety {
        SurfaceVariety::new(n, g, Group::SL).unwrap()
    }

    fn wp(blocks: &[(i64, i64)]) -> Vec<WeightedPart> {
        blocks.iter().map(|&(mult, rank)| WeightedPart { mult, rank }).collect()
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(dimension_char(&sl(2, 2)), 6);
        assert_eq!(dimension_char(&gl(2, 2)), 10);
        assert_eq!(dimension_char(&sl(3, 1)), 4);
        assert_eq!(dimension_char(&gl(3, 1)), 6);
        assert!(SurfaceVariety::new(0, 2, Group::GL).is_err());
    }

    fn dims(s: &SurfaceVariety) -> Vec<(Vec<WeightedPart>, i64, i64)> {
        strata_char(s).unwrap().into_iter().map(|c| (c.partition, c.dim, c.codim)).collect()
    }

    #[test]
    fn strata_examples() {
        assert_eq!(
            dims(&gl(2, 2)),
            vec![(wp(&[(1, 2)]), 10, 0), (wp(&[(1, 1), (1, 1)]), 8, 2), (wp(&[(2, 1)]), 4, 6)]
        );
        let s = dims(&gl(2, 3));
        assert!(s.contains(&(wp(&[(1, 1), (1, 1)]), 12, 6)));
        assert_eq!(dims(&gl(2, 1)), vec![(wp(&[(1, 1), (1, 1)]), 4, 0), (wp(&[(2, 1)]), 2, 2)]);
        assert!(strata_char(&sl(2, 2)).is_err());
    }

    #[test]
    fn partition_counts() {
        // Euler transform of the divisor-count sequence
        let counts: Vec<usize> = (1..=5).map(|n| weighted_partitions(n, n).len()).collect();
        assert_eq!(counts, vec![1, 3, 5, 11, 17]);
        let ordinary: Vec<usize> = (1..=6).map(|n| weighted_partitions(n, 1).len()).collect();
        assert_eq!(ordinary, vec![1, 2, 3, 5, 7, 11]);
    }

    #[test]
    fn singular_component_examples() {
        assert_eq!(singular_components_char(&gl(4, 2)), vec![1, 2]);
        for g in 1..4 {
            assert!(singular_components_char(&gl(1, g)).is_empty());
        }
        assert_eq!(singular_components_char(&gl(2, 3)), vec![1]);
        assert_eq!(singular_components_char(&gl(3, 1)), vec![1]);
    }

    #[test]
    fn local_quiver_examples() {
        let (q, e) = local_quiver_char(2, &wp(&[(2, 1)])).unwrap();
        assert_eq!((q, e.to_vec()), (Quiver::jordan(2), vec![2]));
        let (q, e) = local_quiver_char(2, &wp(&[(1, 1), (1, 1)])).unwrap();
        assert_eq!((q.vertex_count(), q.loop_count(0), q.loop_count(1), q.edge_count(0, 1)), (2, 2, 2, 2));
        assert_eq!(e.to_vec(), vec![1, 1]);
        for n in 1..5 {
            let (q, e) = local_quiver_char(1, &wp(&[(n, 1)])).unwrap();
            assert_eq!((q, e.to_vec()), (Quiver::jordan(1), vec![n]));
        }
    }

    #[test]
    fn verdict_examples() {
        assert_eq!(resolution_verdict_char(&sl(2, 2)), CharVerdict { resolvable: true, method: CharMethod::Blowup });
        assert!(!resolution_verdict_char(&sl(2, 3)).resolvable);
        assert_eq!(
            resolution_verdict_char(&gl(3, 1)),
            CharVerdict { resolvable: true, method: CharMethod::HilbertScheme }
        );
        assert_eq!(resolution_verdict_char(&gl(1, 1)).method, CharMethod::Smooth);
    }

    #[test]
    fn char_as_quiver_examples() {
        let v = char_as_quiver(2, 2).unwrap();
        assert_eq!((v.quiver().clone(), v.alpha().to_vec()), (Quiver::jordan(2), vec![2]));
        for n in 1..5 {
            assert_eq!(char_as_quiver(n, 1).unwrap().dimension().unwrap(), 2 * n);
        }
        for d in 1..5 {
            assert_eq!(char_as_quiver(1, d).unwrap().dimension().unwrap(), 2 * d);
        }
    }

    #[test]
    fn bundle_relation() {
        for n in 1..=5 {
            for g in 1..=5 {
                assert_eq!(dimension_char(&gl(n, g)) - dimension_char(&sl(n, g)), 2 * g);
            }
        }
    }

    #[test]
    fn agrees_with_quiver_side() {
        for n in 1..=4 {
            for g in 1..=4 {
                let v = char_as_quiver(n, g).unwrap();
                assert_eq!(dimension_char(&gl(n, g)), v.dimension().unwrap());
                let quiver_side: Vec<(Vec<StratumPart>, i64)> =
                    v.enumerate_strata().unwrap().iter().map(|s| (s.parts.clone(), s.dim)).collect();
                let char_side: Vec<(Vec<(i64, Vec<i64>)>, i64)> = strata_char(&gl(n, g))
                    .unwrap()
                    .into_iter()
                    .map(|c| (c.partition.iter().map(|b| (b.mult, vec![b.rank])).collect(), c.dim))
                    .collect();
                let quiver_sig: Vec<(Vec<(i64, Vec<i64>)>, i64)> = quiver_side
                    .into_iter()
                    .map(|(parts, d)| (parts.iter().map(|c| (c.mult, c.root.vector.to_vec())).collect(), d))
                    .collect();
                assert_eq!(char_side, quiver_sig, "n={n} g={g}");
                for c in strata_char(&gl(n, g)).unwrap() {
                    let (q, e) = local_quiver_char(g, &c.partition).unwrap();
                    for (i, a) in c.partition.iter().enumerate() {
                        for (j, b) in c.partition.iter().enumerate() {
                            if i != j {
                                assert_eq!(-q.cartan(i, j), (2 * g - 2) * a.rank * b.rank);
                            }
                        }
                    }
                    assert_eq!(q.p(&e), Quiver::jordan(g as usize).p(&[n]));
                }
                if g > 1 {
                    assert_eq!(
                        resolution_verdict_char(&gl(n, g)).resolvable,
                        v.resolution_verdict().unwrap().resolvable
                    );
                }
            }
        }
    }
}
