//! Codimension-two leaves via isotropic decompositions, recognition of
//! simply-laced affine Dynkin diagrams, and the finite Weyl factors attached
//! to each leaf.

use std::fmt;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::quiver::{DimVector, Quiver};
use crate::roots::RootInfo;
use crate::variety::{is_double_of_p2, Stratum, VarietyDescriptor};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    D,
    E,
}

impl Family {
    fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::D => 'D',
            Family::E => 'E',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineType {
    pub family: Family,
    pub rank: usize,
    pub delta: DimVector,
}

impl AffineType {
    /// Finite type obtained by deleting an extending vertex.
    pub fn weyl_label(&self) -> String {
        format!("{}{}", self.family.letter(), self.rank)
    }
}

impl fmt::Display for AffineType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}~{}", self.family.letter(), self.rank)
    }
}

impl Serialize for AffineType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RejectReason {
    Malformed,
    Disconnected,
    NotInCatalog,
    MultsNotDelta,
}

impl fmt::Display for RejectReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RejectReason::Malformed => "matrix is not symmetric with diagonal 2 and nonpositive off-diagonal",
            RejectReason::Disconnected => "diagram is disconnected",
            RejectReason::NotInCatalog => "diagram is not a simply-laced affine Dynkin diagram",
            RejectReason::MultsNotDelta => "multiplicities are not the minimal imaginary root",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartsCartan {
    pub matrix: Vec<Vec<i64>>,
    /// Set when two distinct parts pair positively.
    pub non_dynkin: bool,
}

pub fn build_cartan(parts: &[DimVector], q: &Quiver) -> Result<PartsCartan> {
    if parts.is_empty() {
        return Err(Error::Precondition("need at least one part".into()));
    }
    for p in parts {
        q.check_len(p)?;
    }
    let k = parts.len();
    let mut matrix = vec![vec![2; k]; k];
    let mut non_dynkin = false;
    for i in 0..k {
        for j in 0..k {
            if i != j {
                matrix[i][j] = q.pair(&parts[i], &parts[j]);
                non_dynkin |= matrix[i][j] > 0;
            }
        }
    }
    Ok(PartsCartan { matrix, non_dynkin })
}

fn well_formed(a: &[Vec<i64>]) -> bool {
    let k = a.len();
    a.iter().all(|row| row.len() == k)
        && (0..k).all(|i| a[i][i] == 2 && (0..k).all(|j| a[i][j] == a[j][i] && (i == j || a[i][j] <= 0)))
}

fn neighbours(a: &[Vec<i64>], i: usize) -> Vec<usize> {
    (0..a.len()).filter(|&j| j != i && a[i][j] != 0).collect()
}

fn connected(a: &[Vec<i64>]) -> bool {
    let k = a.len();
    let mut seen = vec![false; k];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for j in neighbours(a, i) {
            if !seen[j] {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Vertices on the path leaving `from` through `first`, away from `from`.
fn arm_length(a: &[Vec<i64>], from: usize, first: usize) -> Option<usize> {
    let (mut prev, mut cur, mut len) = (from, first, 1);
    loop {
        let next: Vec<usize> = neighbours(a, cur).into_iter().filter(|&j| j != prev).collect();
        match next.as_slice() {
            [] => return Some(len),
            [n] => {
                prev = cur;
                cur = *n;
                len += 1;
            }
            _ => return None,
        }
    }
}

fn match_catalog(a: &[Vec<i64>]) -> Option<(Family, usize)> {
    let k = a.len();
    if k == 2 {
        return (a[0][1] == -2).then_some((Family::A, 1));
    }
    if k < 3 || a.iter().flatten().any(|&x| x < -1) {
        return None;
    }
    let degree: Vec<usize> = (0..k).map(|i| neighbours(a, i).len()).collect();
    let edges = degree.iter().sum::<usize>() / 2;
    if degree.iter().all(|&d| d == 2) {
        return Some((Family::A, k - 1));
    }
    if edges != k - 1 || degree.iter().any(|&d| d > 4) {
        return None;
    }
    let branch: Vec<usize> = (0..k).filter(|&i| degree[i] >= 3).collect();
    let leaf_neighbours = |i: usize| neighbours(a, i).into_iter().filter(|&j| degree[j] == 1).count();
    match branch.as_slice() {
        [c] if degree[*c] == 4 => (k == 5).then_some((Family::D, 4)),
        [c] => {
            let mut arms: Vec<usize> =
                neighbours(a, *c).into_iter().map(|j| arm_length(a, *c, j)).collect::<Option<_>>()?;
            arms.sort_unstable();
            match arms.as_slice() {
                [2, 2, 2] => Some((Family::E, 6)),
                [1, 3, 3] => Some((Family::E, 7)),
                [1, 2, 5] => Some((Family::E, 8)),
                _ => None,
            }
        }
        [b1, b2] if degree[*b1] == 3 && degree[*b2] == 3 && leaf_neighbours(*b1) == 2 && leaf_neighbours(*b2) == 2 => {
            Some((Family::D, k - 1))
        }
        _ => None,
    }
}

/// Basis of the rational kernel of `a`, each vector scaled to a primitive
/// integer vector.
pub fn integer_radical(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<BigRational>> =
        a.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, pr);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let d = &f * &m[r][j];
                    m[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); cols];
            v[f] = BigRational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[row][f].clone();
            }
            let lcm = v.iter().fold(num_bigint::BigInt::one(), |acc, x| acc.lcm(x.denom()));
            let ints: Vec<num_bigint::BigInt> = v.iter().map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer()).collect();
            let g = ints.iter().fold(num_bigint::BigInt::zero(), |acc, x| acc.gcd(x));
            ints.iter().map(|x| (x / &g).to_i64().expect("radical entries fit in i64")).collect()
        })
        .collect()
}

pub fn affine_classify(a: &[Vec<i64>], mults: &[i64]) -> std::result::Result<AffineType, RejectReason> {
    if a.is_empty() || !well_formed(a) || mults.len() != a.len() {
        return Err(RejectReason::Malformed);
    }
    if !connected(a) {
        return Err(RejectReason::Disconnected);
    }
    let (family, rank) = match_catalog(a).ok_or(RejectReason::NotInCatalog)?;
    let radical = integer_radical(a);
    let [delta] = radical.as_slice() else {
        return Err(RejectReason::NotInCatalog);
    };
    let delta: Vec<i64> = if delta.iter().all(|&x| x <= 0) { delta.iter().map(|x| -x).collect() } else { delta.clone() };
    if delta.iter().any(|&x| x <= 0) {
        return Err(RejectReason::NotInCatalog);
    }
    if delta != mults {
        return Err(RejectReason::MultsNotDelta);
    }
    Ok(AffineType { family, rank, delta: DimVector::from_vec_unchecked(delta) })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Mode {
    /// Imaginary parts pairwise distinct.
    #[default]
    Strict,
    /// Imaginary parts may repeat.
    Permissive,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RealPart {
    pub mult: i64,
    pub root: RootInfo,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsotropicDecomposition {
    pub imag_parts: Vec<RootInfo>,
    pub real_parts: Vec<RealPart>,
    pub qpp_cartan: Vec<Vec<i64>>,
    pub affine: AffineType,
}

impl IsotropicDecomposition {
    /// The representation type `(1, imag...; m, real...)` as sorted
    /// `(mult, vector)` pairs.
    pub fn signature(&self) -> Vec<(i64, Vec<i64>)> {
        let mut sig: Vec<(i64, Vec<i64>)> = self
            .imag_parts
            .iter()
            .map(|r| (1, r.vector.to_vec()))
            .chain(self.real_parts.iter().map(|r| (r.mult, r.root.vector.to_vec())))
            .collect();
        sig.sort();
        sig
    }

    /// Dimension vectors in matrix order: imaginary parts, then real ones.
    pub fn part_vectors(&self) -> Vec<DimVector> {
        self.imag_parts.iter().map(|r| r.vector.clone()).chain(self.real_parts.iter().map(|r| r.root.vector.clone())).collect()
    }

    pub fn multiplicities(&self) -> Vec<i64> {
        self.imag_parts.iter().map(|_| 1).chain(self.real_parts.iter().map(|r| r.mult)).collect()
    }
}

fn sub(a: &[i64], b: &[i64], m: i64) -> Option<Vec<i64>> {
    let v: Vec<i64> = a.iter().zip(b).map(|(x, y)| x - m * y).collect();
    v.iter().all(|&x| x >= 0).then_some(v)
}

struct Search<'a> {
    q: &'a Quiver,
    imag: Vec<RootInfo>,
    real: Vec<RootInfo>,
    mode: Mode,
    out: Vec<IsotropicDecomposition>,
}

impl Search<'_> {
    fn imag_step(&mut self, start: usize, budget: i64, remaining: Vec<i64>, chosen: &mut Vec<RootInfo>) {
        if budget == 0 {
            self.real_step(0, remaining, chosen, &mut Vec::new());
            return;
        }
        for i in start..self.imag.len() {
            let cand = self.imag[i].clone();
            if cand.p > budget {
                continue;
            }
            let Some(next) = sub(&remaining, &cand.vector, 1) else { continue };
            let resume = if self.mode == Mode::Strict { i + 1 } else { i };
            chosen.push(cand.clone());
            self.imag_step(resume, budget - cand.p, next, chosen);
            chosen.pop();
        }
    }

    fn real_step(&mut self, start: usize, remaining: Vec<i64>, imag: &[RootInfo], real: &mut Vec<RealPart>) {
        if remaining.iter().all(|&x| x == 0) {
            self.accept(imag, real);
            return;
        }
        for i in start..self.real.len() {
            let cand = self.real[i].clone();
            let mut m = 1;
            while let Some(next) = sub(&remaining, &cand.vector, m) {
                real.push(RealPart { mult: m, root: cand.clone() });
                self.real_step(i + 1, next, imag, real);
                real.pop();
                m += 1;
            }
        }
    }

    fn accept(&mut self, imag: &[RootInfo], real: &[RealPart]) {
        if imag.len() + real.len() < 2 {
            return;
        }
        let vectors: Vec<DimVector> =
            imag.iter().map(|r| r.vector.clone()).chain(real.iter().map(|r| r.root.vector.clone())).collect();
        let Ok(cartan) = build_cartan(&vectors, self.q) else { return };
        if cartan.non_dynkin {
            return;
        }
        let mults: Vec<i64> = imag.iter().map(|_| 1).chain(real.iter().map(|r| r.mult)).collect();
        if let Ok(affine) = affine_classify(&cartan.matrix, &mults) {
            self.out.push(IsotropicDecomposition {
                imag_parts: imag.to_vec(),
                real_parts: real.to_vec(),
                qpp_cartan: cartan.matrix,
                affine,
            });
        }
    }
}

fn require_imaginary_sigma(v: &VarietyDescriptor) -> Result<()> {
    if !v.alpha_in_sigma() {
        return Err(Error::NotInSigma(v.alpha().to_string()));
    }
    if v.alpha_p() < 1 {
        return Err(Error::Precondition(format!("{} is a real root", v.alpha())));
    }
    Ok(())
}

pub fn isotropic_decompositions(v: &VarietyDescriptor, mode: Mode) -> Result<Vec<IsotropicDecomposition>> {
    require_imaginary_sigma(v)?;
    let (imag, real): (Vec<RootInfo>, Vec<RootInfo>) =
        v.table().sigma_roots_below(v.alpha()).into_iter().partition(|r| r.kind.is_imaginary());
    let mut search = Search { q: v.quiver(), imag, real, mode, out: Vec::new() };
    search.imag_step(0, v.alpha_p() - 1, v.alpha().to_vec(), &mut Vec::new());
    let mut out = search.out;
    out.sort_by_key(|a| a.signature());
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Leaf {
    pub decomposition: IsotropicDecomposition,
    pub stratum: Stratum,
}

pub fn codim2_leaves(v: &VarietyDescriptor, mode: Mode) -> Result<Vec<Leaf>> {
    let decomps = isotropic_decompositions(v, mode)?;
    let strata = v.enumerate_strata()?;
    decomps
        .into_iter()
        .map(|d| {
            let sig = d.signature();
            let stratum = strata
                .iter()
                .find(|s| s.signature() == sig)
                .ok_or_else(|| Error::Internal(format!("no stratum for isotropic decomposition {sig:?}")))?;
            if stratum.codim != 2 {
                return Err(Error::Internal(format!("leaf stratum {sig:?} has codimension {}", stratum.codim)));
            }
            Ok(Leaf { decomposition: d, stratum: stratum.clone() })
        })
        .collect()
}

pub fn namikawa_factors(v: &VarietyDescriptor, mode: Mode) -> Result<Vec<String>> {
    let mut labels: Vec<String> = codim2_leaves(v, mode)?.iter().map(|l| l.decomposition.affine.weyl_label()).collect();
    labels.sort();
    Ok(labels)
}

/// Whether strict and permissive searches can disagree for this variety:
/// exactly when `alpha = 2b` with `p(b) = 2`.
pub fn modes_may_differ(v: &VarietyDescriptor) -> bool {
    is_double_of_p2(v.quiver(), v.alpha())
}

/// Leaves found only when imaginary parts may repeat.
pub fn permissive_only_leaves(v: &VarietyDescriptor) -> Result<Vec<Leaf>> {
    let strict = codim2_leaves(v, Mode::Strict)?;
    Ok(codim2_leaves(v, Mode::Permissive)?
        .into_iter()
        .filter(|l| !strict.iter().any(|s| s.decomposition.signature() == l.decomposition.signature()))
        .collect())
}

/// Multiplicity-vector check used by the radical identity `k^T A k = 0`.
pub fn quadratic_form(a: &[Vec<i64>], k: &[i64]) -> i64 {
    let mut s = 0;
    for (i, row) in a.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            s += k[i] * x * k[j];
        }
    }
    s
}
