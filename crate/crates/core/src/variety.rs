//! Verdicts for a single quiver variety: emptiness, dimension, smoothness,
//! resolutions, strata by representation type and their local quivers.

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize, Serializer};

use crate::decomp::{CanonicalDecomposition, SigmaTable};
use crate::quiver::{Covector, DimVector, ParamSet, Quiver};
use crate::roots::{RootInfo, RootKind, RootTable};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "point")]
    Point,
    #[serde(rename = "variation-of-GIT")]
    VariationOfGit,
    #[serde(rename = "framing-symmetric-power")]
    FramingSymmetricPower,
    #[serde(rename = "ogrady-blowup")]
    OgradyBlowup,
    #[serde(rename = "obstructed")]
    Obstructed,
}

impl Method {
    pub fn label(self) -> &'static str {
        match self {
            Method::Point => "point",
            Method::VariationOfGit => "variation-of-GIT",
            Method::FramingSymmetricPower => "framing-symmetric-power",
            Method::OgradyBlowup => "ogrady-blowup",
            Method::Obstructed => "obstructed",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// True when `v = 2w` with `p(w) = 2`, the one divisible case that still
/// resolves.
pub(crate) fn is_double_of_p2(q: &Quiver, v: &[i64]) -> bool {
    let g = v.iter().fold(0, |acc, &x| num_integer::gcd(acc, x));
    g == 2 && q.p(&v.iter().map(|x| x / 2).collect::<Vec<_>>()) == 2
}

/// How the factor of a canonical summand `root` gets resolved.
pub fn part_method(q: &Quiver, root: &RootInfo) -> Method {
    match root.kind {
        RootKind::Real => Method::Point,
        RootKind::Isotropic => Method::FramingSymmetricPower,
        RootKind::NonIsotropic if root.gcd() == 1 => Method::VariationOfGit,
        RootKind::NonIsotropic if is_double_of_p2(q, &root.vector) => Method::OgradyBlowup,
        RootKind::NonIsotropic => Method::Obstructed,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartVerdict {
    pub root: RootInfo,
    pub gcd: i64,
    pub method: Method,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionVerdict {
    pub resolvable: bool,
    pub per_part: Vec<PartVerdict>,
    pub witness: Option<PartVerdict>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FormalResolvability {
    Resolvable,
    NotResolvable,
    NotApplicable,
}

impl FormalResolvability {
    fn from_bool(b: bool) -> Self {
        if b {
            FormalResolvability::Resolvable
        } else {
            FormalResolvability::NotResolvable
        }
    }

    pub fn as_bool(self) -> Option<bool> {
        match self {
            FormalResolvability::Resolvable => Some(true),
            FormalResolvability::NotResolvable => Some(false),
            FormalResolvability::NotApplicable => None,
        }
    }
}

impl Serialize for FormalResolvability {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.as_bool() {
            Some(b) => s.serialize_bool(b),
            None => s.serialize_str("not-applicable"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct StratumPart {
    pub mult: i64,
    pub root: RootInfo,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Stratum {
    pub parts: Vec<StratumPart>,
    pub dim: i64,
    pub codim: i64,
    pub gcd_tau: i64,
    pub is_open: bool,
    pub formally_resolvable: FormalResolvability,
}

impl Stratum {
    /// `(mult, vector)` pairs, handy for comparing representation types.
    pub fn signature(&self) -> Vec<(i64, Vec<i64>)> {
        self.parts.iter().map(|c| (c.mult, c.root.vector.to_vec())).collect()
    }
}

fn type_dim(parts: &[StratumPart]) -> i64 {
    2 * parts.iter().map(|c| c.root.p).sum::<i64>()
}

fn mult_gcd(parts: &[StratumPart]) -> i64 {
    parts.iter().fold(0, |acc, c| num_integer::gcd(acc, c.mult))
}

/// A quiver variety given symbolically by its quiver, dimension vector and
/// parameters. Derived data is computed on first use and cached.
#[derive(Debug, Clone)]
pub struct VarietyDescriptor {
    quiver: Quiver,
    alpha: DimVector,
    params: ParamSet,
    table: OnceLock<SigmaTable>,
    canonical: OnceLock<Result<Option<CanonicalDecomposition>>>,
    strata: OnceLock<Result<Vec<Stratum>>>,
}

impl VarietyDescriptor {
    pub fn new(quiver: Quiver, alpha: DimVector, params: ParamSet) -> Result<Self> {
        quiver.check_len(&alpha)?;
        params.check_len(quiver.vertex_count())?;
        if let Err(v) = quiver.validate_params(&alpha, &params) {
            return Err(Error::NotAnnihilated(v.to_string()));
        }
        Ok(VarietyDescriptor {
            quiver,
            alpha,
            params,
            table: OnceLock::new(),
            canonical: OnceLock::new(),
            strata: OnceLock::new(),
        })
    }

    /// Reuse a table built elsewhere (for instance loaded from disk). Its
    /// bound must be `alpha`.
    pub fn with_table(quiver: Quiver, alpha: DimVector, params: ParamSet, table: SigmaTable) -> Result<Self> {
        if table.bound() != &alpha || table.quiver() != &quiver || table.params() != &params {
            return Err(Error::InvalidArgument("table was built for different data".into()));
        }
        let v = Self::new(quiver, alpha, params)?;
        let _ = v.table.set(table);
        Ok(v)
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn alpha(&self) -> &DimVector {
        &self.alpha
    }

    pub fn params(&self) -> &ParamSet {
        &self.params
    }

    pub fn table(&self) -> &SigmaTable {
        self.table.get_or_init(|| {
            SigmaTable::build(&self.quiver, &self.params, &self.alpha).expect("inputs checked by the constructor")
        })
    }

    /// `None` when the variety is empty.
    pub fn canonical(&self) -> Result<Option<&CanonicalDecomposition>> {
        self.canonical
            .get_or_init(|| self.table().canonical(&self.alpha))
            .as_ref()
            .map(Option::as_ref)
            .map_err(Clone::clone)
    }

    fn nonempty(&self) -> Result<&CanonicalDecomposition> {
        self.canonical()?.ok_or(Error::EmptyVariety)
    }

    pub fn is_empty(&self) -> Result<bool> {
        Ok(self.canonical()?.is_none())
    }

    pub fn alpha_in_sigma(&self) -> bool {
        !self.alpha.is_zero() && self.table().is_sigma(&self.alpha)
    }

    pub fn alpha_p(&self) -> i64 {
        self.quiver.p(&self.alpha)
    }

    pub fn dimension(&self) -> Result<i64> {
        Ok(2 * self.nonempty()?.p_sum())
    }

    pub fn is_smooth(&self) -> Result<bool> {
        let c = self.nonempty()?;
        for part in &c.parts {
            if part.root.kind.is_imaginary() && part.mult > 1 {
                return Ok(false);
            }
            if !self.table().is_minimal(&part.root.vector)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn resolution_verdict(&self) -> Result<ResolutionVerdict> {
        let c = self.nonempty()?;
        let per_part: Vec<PartVerdict> = c
            .parts
            .iter()
            .map(|part| PartVerdict {
                root: part.root.clone(),
                gcd: part.root.gcd(),
                method: part_method(&self.quiver, &part.root),
            })
            .collect();
        let witness = per_part.iter().find(|v| v.method == Method::Obstructed).cloned();
        Ok(ResolutionVerdict { resolvable: witness.is_none(), per_part, witness })
    }

    /// The representation type of the open stratum.
    pub fn open_type(&self) -> Result<Vec<StratumPart>> {
        let c = self.nonempty()?;
        let mut parts = Vec::new();
        for part in &c.parts {
            if part.root.kind.is_imaginary() {
                for _ in 0..part.mult {
                    parts.push(StratumPart { mult: 1, root: part.root.clone() });
                }
            } else {
                parts.push(StratumPart { mult: part.mult, root: part.root.clone() });
            }
        }
        parts.sort();
        Ok(parts)
    }

    fn formal_for(&self, gcd_tau: i64) -> FormalResolvability {
        if !self.alpha_in_sigma() || self.alpha_p() < 2 {
            return FormalResolvability::NotApplicable;
        }
        if is_double_of_p2(&self.quiver, &self.alpha) {
            return FormalResolvability::Resolvable;
        }
        FormalResolvability::from_bool(gcd_tau == 1)
    }

    pub fn enumerate_strata(&self) -> Result<&[Stratum]> {
        self.strata
            .get_or_init(|| self.compute_strata())
            .as_deref()
            .map_err(Clone::clone)
    }

    fn compute_strata(&self) -> Result<Vec<Stratum>> {
        let dim = self.dimension()?;
        let open = self.open_type()?;
        let table = self.table();
        let candidates: Vec<StratumPart> = table
            .sigma_roots_below(&self.alpha)
            .into_iter()
            .flat_map(|root| {
                let max_mult = root
                    .vector
                    .iter()
                    .zip(self.alpha.iter())
                    .filter(|(&r, _)| r > 0)
                    .map(|(&r, &a)| a / r)
                    .min()
                    .unwrap_or(0);
                (1..=max_mult).map(move |mult| StratumPart { mult, root: root.clone() })
            })
            .collect();
        let mut types = Vec::new();
        let mut chosen = Vec::new();
        collect_types(table, &candidates, 0, self.alpha.to_vec(), &mut chosen, &mut types);

        let mut strata: Vec<Stratum> = types
            .into_iter()
            .map(|mut parts| {
                parts.sort();
                let d = type_dim(&parts);
                let gcd_tau = mult_gcd(&parts);
                Stratum {
                    is_open: parts == open,
                    dim: d,
                    codim: dim - d,
                    gcd_tau,
                    formally_resolvable: self.formal_for(gcd_tau),
                    parts,
                }
            })
            .collect();
        strata.sort_by(|a, b| a.codim.cmp(&b.codim).then_with(|| a.parts.cmp(&b.parts)));
        let opens: Vec<&Stratum> = strata.iter().filter(|s| s.is_open).collect();
        if opens.len() != 1 || opens[0].codim != 0 || strata.iter().filter(|s| s.codim <= 0).count() != 1 {
            return Err(Error::Internal("the open stratum is not the unique top-dimensional one".into()));
        }
        Ok(strata)
    }

    fn check_stratum(&self, tau: &Stratum) -> Result<()> {
        let mut total = DimVector::zero(self.quiver.vertex_count());
        for part in &tau.parts {
            if part.mult < 1 || !self.table().is_sigma(&part.root.vector) {
                return Err(Error::InvalidArgument(format!(
                    "{} is not a valid stratum part",
                    part.root.vector
                )));
            }
            total.add_scaled(&part.root.vector, part.mult);
        }
        if total != self.alpha {
            return Err(Error::InvalidArgument(format!("stratum parts sum to {total}, not {}", self.alpha)));
        }
        Ok(())
    }

    /// The quiver whose zero-parameter variety models the formal
    /// neighbourhood of a point of `tau`, with its dimension vector.
    pub fn local_quiver(&self, tau: &Stratum) -> Result<(Quiver, DimVector)> {
        self.check_stratum(tau)?;
        let k = tau.parts.len();
        if k == 0 {
            return Err(Error::Precondition("the zero vector has no local quiver".into()));
        }
        let mut arrows = Vec::new();
        for (i, a) in tau.parts.iter().enumerate() {
            for _ in 0..a.root.p {
                arrows.push((i, i));
            }
            for (j, b) in tau.parts.iter().enumerate().skip(i + 1) {
                let count = -self.quiver.pair(&a.root.vector, &b.root.vector);
                if count < 0 {
                    return Err(Error::Internal(format!(
                        "parts {} and {} pair positively",
                        a.root.vector, b.root.vector
                    )));
                }
                arrows.extend(std::iter::repeat_n((i, j), count as usize));
            }
        }
        let e = DimVector::new(tau.parts.iter().map(|c| c.mult).collect())?;
        Ok((Quiver::new(k, arrows)?, e))
    }

    pub fn formally_resolvable(&self, tau: &Stratum) -> Result<FormalResolvability> {
        self.check_stratum(tau)?;
        Ok(self.formal_for(mult_gcd(&tau.parts)))
    }
}

fn collect_types(
    table: &SigmaTable,
    candidates: &[StratumPart],
    start: usize,
    remaining: Vec<i64>,
    chosen: &mut Vec<StratumPart>,
    out: &mut Vec<Vec<StratumPart>>,
) {
    if remaining.iter().all(|&x| x == 0) {
        out.push(chosen.clone());
        return;
    }
    if table.sigma_max_p(&remaining).ok().flatten().is_none() {
        return;
    }
    for (i, cand) in candidates.iter().enumerate().skip(start) {
        let next: Vec<i64> = remaining.iter().zip(cand.root.vector.iter()).map(|(r, v)| r - cand.mult * v).collect();
        if next.iter().any(|&x| x < 0) {
            continue;
        }
        let resume = if cand.root.kind.is_imaginary() {
            i
        } else {
            i + candidates[i..].iter().take_while(|c| c.root.vector == cand.root.vector).count()
        };
        chosen.push(cand.clone());
        collect_types(table, candidates, resume, next, chosen, out);
        chosen.pop();
    }
}

/// True iff `theta` pairs nonzero with every root `0 < b <= a` that is not a
/// rational multiple of `a`.
pub fn is_generic_stability(q: &Quiver, theta: &Covector, a: &DimVector) -> Result<bool> {
    q.check_len(a)?;
    if theta.len() != q.vertex_count() {
        return Err(Error::SizeMismatch { expected: q.vertex_count(), got: theta.len() });
    }
    let table = RootTable::build(q, a)?;
    let parallel = |b: &[i64]| {
        (0..b.len()).all(|i| (0..b.len()).all(|j| b[i] as i128 * a[j] as i128 == b[j] as i128 * a[i] as i128))
    };
    Ok(table.roots().iter().all(|r| parallel(&r.vector) || !theta.annihilates(&r.vector)))
}
