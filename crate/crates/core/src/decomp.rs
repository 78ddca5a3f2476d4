//! Restricted roots, the set Σ of stable dimension vectors, and the
//! canonical decomposition.
//!
//! All three are computed by one dynamic program over the box `[0, bound]`:
//!
//! * `max_p[v]` is the largest p-sum over decompositions of `v` into roots
//!   killed by every parameter covector (undefined when `v` has none);
//! * a restricted root `r` is in Σ when `p(r)` beats `p(g) + max_p[r - g]`
//!   for every restricted root `g < r`;
//! * the canonical decomposition of `a` is the unique Σ-decomposition with
//!   the largest p-sum. Every Σ-decomposition refines it, and splitting a Σ
//!   part strictly lowers the p-sum, so the maximizer is unique and the
//!   order in which parts are peeled off during reconstruction is irrelevant.

use serde::{Deserialize, Serialize};

use crate::quiver::{kills, DimVector, ParamSet, Quiver};
use crate::roots::{BoxShape, RootInfo, RootTable};
use crate::{Error, Result};

/// Roots in the box that pair to zero with every parameter covector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictedRootSet {
    pub params: ParamSet,
    pub bound: DimVector,
    pub members: Vec<RootInfo>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalPart {
    pub mult: i64,
    pub root: RootInfo,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CanonicalDecomposition {
    pub parts: Vec<CanonicalPart>,
    pub total: DimVector,
}

impl CanonicalDecomposition {
    /// `sum n_i p(sigma_i)`, half the dimension of the variety.
    pub fn p_sum(&self) -> i64 {
        self.parts.iter().map(|c| c.mult * c.root.p).sum()
    }

    /// Each summand repeated according to its multiplicity.
    pub fn expanded(&self) -> Vec<&RootInfo> {
        self.parts.iter().flat_map(|c| std::iter::repeat_n(&c.root, c.mult as usize)).collect()
    }
}

/// Everything the dynamic program produces, in a form that can be stored and
/// reloaded without recomputation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableSnapshot {
    pub p: Vec<Option<i64>>,
    pub max_p: Vec<Option<i64>>,
    pub sigma: Vec<bool>,
    pub sigma_best: Vec<Option<i64>>,
}

/// Root classification, restricted roots, `max_p` and Σ over one box, for one
/// quiver and parameter set. Immutable once built.
#[derive(Debug, Clone)]
pub struct SigmaTable {
    quiver: Quiver,
    params: ParamSet,
    bound: DimVector,
    roots: RootTable,
    restricted: Vec<usize>,
    max_p: Vec<Option<i64>>,
    sigma: Vec<bool>,
    sigma_list: Vec<usize>,
    sigma_best: Vec<Option<i64>>,
}

struct Part {
    idx: usize,
    vector: Vec<i64>,
    p: i64,
}

fn fits(part: &[i64], v: &[i64]) -> bool {
    part.iter().zip(v).all(|(a, b)| a <= b)
}

/// Best p-sum of decompositions of every box vector using `parts`, with at
/// least one part (the zero vector gets 0).
fn best_sums(shape: &BoxShape, parts: &[Part]) -> Vec<Option<i64>> {
    let mut best: Vec<Option<i64>> = vec![None; shape.volume()];
    best[0] = Some(0);
    for (idx, v) in shape.iter().enumerate().skip(1) {
        let mut b: Option<i64> = None;
        for part in parts {
            if part.idx > idx || !fits(&part.vector, &v) {
                continue;
            }
            if let Some(rest) = best[idx - part.idx] {
                let cand = part.p + rest;
                if b.is_none_or(|x| cand > x) {
                    b = Some(cand);
                }
            }
        }
        best[idx] = b;
    }
    best
}

impl SigmaTable {
    pub fn build(q: &Quiver, params: &ParamSet, bound: &DimVector) -> Result<Self> {
        q.check_len(bound)?;
        params.check_len(q.vertex_count())?;
        let roots = RootTable::build(q, bound)?;
        let shape = roots.shape().clone();
        let rows = params.integral_rows();
        let restricted: Vec<usize> =
            roots.root_indices().filter(|&i| kills(&rows, &shape.vector(i))).collect();
        let parts: Vec<Part> = restricted
            .iter()
            .map(|&idx| Part { idx, vector: shape.vector(idx), p: roots.p_at(idx).unwrap() })
            .collect();
        let max_p = best_sums(&shape, &parts);

        let mut sigma = vec![false; shape.volume()];
        for r in &parts {
            let mut best_split: Option<i64> = None;
            for g in &parts {
                if g.idx >= r.idx || !fits(&g.vector, &r.vector) {
                    continue;
                }
                if let Some(rest) = max_p[r.idx - g.idx] {
                    let cand = g.p + rest;
                    if best_split.is_none_or(|x| cand > x) {
                        best_split = Some(cand);
                    }
                }
            }
            sigma[r.idx] = best_split.is_none_or(|s| r.p > s);
        }
        let sigma_parts: Vec<Part> = parts.into_iter().filter(|r| sigma[r.idx]).collect();
        let sigma_list = sigma_parts.iter().map(|r| r.idx).collect();
        let sigma_best = best_sums(&shape, &sigma_parts);

        Ok(SigmaTable {
            quiver: q.clone(),
            params: params.clone(),
            bound: bound.clone(),
            roots,
            restricted,
            max_p,
            sigma,
            sigma_list,
            sigma_best,
        })
    }

    pub fn from_snapshot(q: &Quiver, params: &ParamSet, bound: &DimVector, snap: TableSnapshot) -> Result<Self> {
        q.check_len(bound)?;
        params.check_len(q.vertex_count())?;
        let roots = RootTable::from_parts(bound, snap.p)?;
        let shape = roots.shape().clone();
        let vol = shape.volume();
        if snap.max_p.len() != vol || snap.sigma.len() != vol || snap.sigma_best.len() != vol {
            return Err(Error::InvalidArgument("snapshot sizes do not match the box".into()));
        }
        let rows = params.integral_rows();
        let restricted: Vec<usize> =
            roots.root_indices().filter(|&i| kills(&rows, &shape.vector(i))).collect();
        let sigma_list = (0..vol).filter(|&i| snap.sigma[i]).collect();
        Ok(SigmaTable {
            quiver: q.clone(),
            params: params.clone(),
            bound: bound.clone(),
            roots,
            restricted,
            max_p: snap.max_p,
            sigma: snap.sigma,
            sigma_list,
            sigma_best: snap.sigma_best,
        })
    }

    pub fn snapshot(&self) -> TableSnapshot {
        TableSnapshot {
            p: self.roots.p_values().to_vec(),
            max_p: self.max_p.clone(),
            sigma: self.sigma.clone(),
            sigma_best: self.sigma_best.clone(),
        }
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn params(&self) -> &ParamSet {
        &self.params
    }

    pub fn bound(&self) -> &DimVector {
        &self.bound
    }

    pub fn root_table(&self) -> &RootTable {
        &self.roots
    }

    fn shape(&self) -> &BoxShape {
        self.roots.shape()
    }

    fn info(&self, idx: usize) -> RootInfo {
        RootInfo::new(DimVector::from_vec_unchecked(self.shape().vector(idx)), self.roots.p_at(idx).unwrap())
    }

    fn locate(&self, a: &[i64]) -> Result<usize> {
        self.quiver.check_len(a)?;
        if !self.shape().contains(a) {
            return Err(Error::InvalidArgument(format!(
                "{} lies outside the table bound {}",
                DimVector::from_vec_unchecked(a.to_vec()),
                self.bound
            )));
        }
        Ok(self.shape().index(a))
    }

    pub fn restricted_roots(&self) -> RestrictedRootSet {
        RestrictedRootSet {
            params: self.params.clone(),
            bound: self.bound.clone(),
            members: self.restricted.iter().map(|&i| self.info(i)).collect(),
        }
    }

    pub fn is_restricted_root(&self, a: &[i64]) -> bool {
        self.locate(a).is_ok_and(|i| self.restricted.binary_search(&i).is_ok())
    }

    pub fn max_p(&self, a: &[i64]) -> Result<Option<i64>> {
        Ok(self.max_p[self.locate(a)?])
    }

    /// Best p-sum over decompositions into Σ elements only.
    pub fn sigma_max_p(&self, a: &[i64]) -> Result<Option<i64>> {
        Ok(self.sigma_best[self.locate(a)?])
    }

    pub fn is_sigma(&self, a: &[i64]) -> bool {
        self.locate(a).is_ok_and(|i| self.sigma[i])
    }

    pub fn sigma_roots(&self) -> Vec<RootInfo> {
        self.sigma_list.iter().map(|&i| self.info(i)).collect()
    }

    /// Σ elements that are `<= a`.
    pub fn sigma_roots_below(&self, a: &[i64]) -> Vec<RootInfo> {
        self.sigma_list
            .iter()
            .map(|&i| self.info(i))
            .filter(|r| fits(&r.vector, a))
            .collect()
    }

    /// `None` means `a` is not a sum of restricted roots (the variety is empty).
    pub fn canonical(&self, a: &[i64]) -> Result<Option<CanonicalDecomposition>> {
        let top = self.locate(a)?;
        let Some(mut remaining_best) = self.sigma_best[top] else {
            if self.max_p[top].is_some() {
                return Err(Error::Internal("vector decomposes into roots but not into Σ elements".into()));
            }
            return Ok(None);
        };
        let mut v = a.to_vec();
        let mut idx = top;
        let mut picked: Vec<usize> = Vec::new();
        while idx != 0 {
            let next = self.sigma_list.iter().rev().copied().find(|&s| {
                s <= idx
                    && fits(&self.shape().vector(s), &v)
                    && self.sigma_best[idx - s] == Some(remaining_best - self.roots.p_at(s).unwrap())
            });
            let Some(s) = next else {
                return Err(Error::Internal("canonical reconstruction stalled".into()));
            };
            let sv = self.shape().vector(s);
            for (x, y) in v.iter_mut().zip(&sv) {
                *x -= y;
            }
            remaining_best -= self.roots.p_at(s).unwrap();
            idx -= s;
            picked.push(s);
        }
        picked.sort_unstable();
        let mut parts: Vec<CanonicalPart> = Vec::new();
        for s in picked {
            match parts.last_mut() {
                Some(last) if self.shape().index(&last.root.vector) == s => last.mult += 1,
                _ => parts.push(CanonicalPart { mult: 1, root: self.info(s) }),
            }
        }
        Ok(Some(CanonicalDecomposition { parts, total: DimVector::from_vec_unchecked(a.to_vec()) }))
    }

    /// True iff `s` admits no decomposition into two or more Σ elements.
    pub fn is_minimal(&self, s: &[i64]) -> Result<bool> {
        let idx = self.locate(s)?;
        if !self.sigma[idx] {
            return Err(Error::NotInSigma(DimVector::from_vec_unchecked(s.to_vec()).to_string()));
        }
        let splits = self.sigma_list.iter().any(|&g| {
            g < idx && fits(&self.shape().vector(g), s) && self.sigma_best[idx - g].is_some()
        });
        Ok(!splits)
    }
}

fn table_for(q: &Quiver, params: &ParamSet, a: &[i64]) -> Result<SigmaTable> {
    let bound = DimVector::new(a.to_vec())?;
    SigmaTable::build(q, params, &bound)
}

pub fn restricted_roots(q: &Quiver, params: &ParamSet, bound: &DimVector) -> Result<RestrictedRootSet> {
    Ok(SigmaTable::build(q, params, bound)?.restricted_roots())
}

pub fn max_p(q: &Quiver, params: &ParamSet, a: &DimVector) -> Result<Option<i64>> {
    table_for(q, params, a)?.max_p(a)
}

pub fn sigma_member(q: &Quiver, params: &ParamSet, a: &DimVector) -> Result<bool> {
    Ok(table_for(q, params, a)?.is_sigma(a))
}

pub fn sigma_enumerate(q: &Quiver, params: &ParamSet, bound: &DimVector) -> Result<Vec<RootInfo>> {
    Ok(SigmaTable::build(q, params, bound)?.sigma_roots())
}

/// `Ok(None)` is the empty variety.
pub fn canonical_decomposition(
    q: &Quiver,
    params: &ParamSet,
    a: &DimVector,
) -> Result<Option<CanonicalDecomposition>> {
    q.check_len(a)?;
    params.check_len(q.vertex_count())?;
    if let Err(v) = q.validate_params(a, params) {
        return Err(Error::NotAnnihilated(v.to_string()));
    }
    table_for(q, params, a)?.canonical(a)
}

pub fn is_minimal(q: &Quiver, params: &ParamSet, s: &RootInfo) -> Result<bool> {
    table_for(q, params, &s.vector)?.is_minimal(&s.vector)
}
