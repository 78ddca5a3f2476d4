//! Quivers, dimension vectors, parameter covectors and the bilinear forms.
//!
//! The doubled quiver is never built. The Ringel form is read off the arrow
//! list directly and its symmetrization (the Cartan pairing) is cached as a
//! dense matrix, since every other module only ever needs loop counts and
//! undirected edge multiplicities.

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

/// A finite quiver, loops and multiple arrows allowed. Vertices are
/// `0..vertex_count`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertex_count: usize,
    arrows: Vec<(usize, usize)>,
    loops: Vec<u32>,
    cartan: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct QuiverJson {
    vertices: usize,
    arrows: Vec<[usize; 2]>,
}

impl Quiver {
    pub fn new(vertex_count: usize, arrows: Vec<(usize, usize)>) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::NoVertices);
        }
        let n = vertex_count;
        let mut loops = vec![0u32; n];
        let mut cartan = vec![0i64; n * n];
        for i in 0..n {
            cartan[i * n + i] = 2;
        }
        for &(t, h) in &arrows {
            for v in [t, h] {
                if v >= n {
                    return Err(Error::InvalidVertex { vertex: v, vertices: n });
                }
            }
            if t == h {
                loops[t] += 1;
                cartan[t * n + t] -= 2;
            } else {
                cartan[t * n + h] -= 1;
                cartan[h * n + t] -= 1;
            }
        }
        Ok(Quiver { vertex_count, arrows, loops, cartan })
    }

    /// One vertex with `d` loops.
    pub fn jordan(d: usize) -> Self {
        Quiver::new(1, vec![(0, 0); d]).expect("one vertex is valid")
    }

    /// Linearly oriented path with `n` vertices (type A_n).
    pub fn path(n: usize) -> Result<Self> {
        Quiver::new(n, (1..n).map(|i| (i - 1, i)).collect())
    }

    /// Oriented cycle on `n >= 2` vertices; for `n = 2` this is the Kronecker
    /// quiver (two arrows 0 -> 1).
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument("a cycle needs at least two vertices".into()));
        }
        if n == 2 {
            return Quiver::new(2, vec![(0, 1), (0, 1)]);
        }
        Quiver::new(n, (0..n).map(|i| (i, (i + 1) % n)).collect())
    }

    /// Star with centre 0 and `k` leaves `1..=k`, one arrow leaf -> centre each.
    pub fn star(k: usize) -> Self {
        Quiver::new(k + 1, (1..=k).map(|i| (i, 0)).collect()).expect("star is valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn loop_count(&self, i: usize) -> u32 {
        self.loops[i]
    }

    pub fn is_loopfree(&self, i: usize) -> bool {
        self.loops[i] == 0
    }

    /// Number of non-loop arrows between `i` and `j`, either direction.
    pub fn edge_count(&self, i: usize, j: usize) -> u32 {
        if i == j {
            0
        } else {
            (-self.cartan[i * self.vertex_count + j]) as u32
        }
    }

    /// The Cartan value `(e_i, e_j)`.
    #[inline]
    pub fn cartan(&self, i: usize, j: usize) -> i64 {
        self.cartan[i * self.vertex_count + j]
    }

    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        (0..self.vertex_count)
            .map(|i| (0..self.vertex_count).map(|j| self.cartan(i, j)).collect())
            .collect()
    }

    pub(crate) fn check_len(&self, v: &[i64]) -> Result<()> {
        if v.len() != self.vertex_count {
            return Err(Error::SizeMismatch { expected: self.vertex_count, got: v.len() });
        }
        Ok(())
    }

    /// `<a, b> = sum_i a_i b_i - sum_{t -> h} a_t b_h`, loops included.
    pub fn ringel_form(&self, a: &[i64], b: &[i64]) -> Result<i64> {
        self.check_len(a)?;
        self.check_len(b)?;
        let diag: i64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
        let off: i64 = self.arrows.iter().map(|&(t, h)| a[t] * b[h]).sum();
        Ok(diag - off)
    }

    /// `(a, b) = <a, b> + <b, a>`.
    pub fn cartan_pairing(&self, a: &[i64], b: &[i64]) -> Result<i64> {
        self.check_len(a)?;
        self.check_len(b)?;
        Ok(self.pair(a, b))
    }

    #[inline]
    pub(crate) fn pair(&self, a: &[i64], b: &[i64]) -> i64 {
        let n = self.vertex_count;
        let mut s = 0;
        for i in 0..n {
            if a[i] == 0 {
                continue;
            }
            let row = &self.cartan[i * n..(i + 1) * n];
            s += a[i] * row.iter().zip(b).map(|(c, y)| c * y).sum::<i64>();
        }
        s
    }

    /// `(a, e_i)`.
    #[inline]
    pub(crate) fn pair_simple(&self, a: &[i64], i: usize) -> i64 {
        let n = self.vertex_count;
        self.cartan[i * n..(i + 1) * n].iter().zip(a).map(|(c, x)| c * x).sum()
    }

    /// `p(a) = 1 - <a, a>`.
    pub fn p_value(&self, a: &[i64]) -> Result<i64> {
        self.check_len(a)?;
        Ok(self.p(a))
    }

    #[inline]
    pub(crate) fn p(&self, a: &[i64]) -> i64 {
        1 - self.pair(a, a) / 2
    }

    /// `s_i(a) = a - (a, e_i) e_i`. The result may have negative entries.
    pub fn reflect(&self, i: usize, a: &[i64]) -> Result<Vec<i64>> {
        self.check_len(a)?;
        if i >= self.vertex_count {
            return Err(Error::InvalidVertex { vertex: i, vertices: self.vertex_count });
        }
        if !self.is_loopfree(i) {
            return Err(Error::LoopVertex(i));
        }
        let mut out = a.to_vec();
        out[i] -= self.pair_simple(a, i);
        Ok(out)
    }

    /// Adjoin a framing vertex with `framing[i]` arrows into each vertex `i`.
    /// The framing vertex is appended last, the dimension vector gets a 1
    /// there, and the stability gets the unique value making it annihilate
    /// the extended dimension vector.
    pub fn frame(
        &self,
        a: &DimVector,
        theta: &Covector,
        framing: &DimVector,
    ) -> Result<(Quiver, DimVector, Covector)> {
        self.check_len(a)?;
        self.check_len(framing)?;
        if theta.len() != self.vertex_count {
            return Err(Error::SizeMismatch { expected: self.vertex_count, got: theta.len() });
        }
        let inf = self.vertex_count;
        let mut arrows = self.arrows.clone();
        for (i, &f) in framing.iter().enumerate() {
            arrows.extend(std::iter::repeat_n((inf, i), f as usize));
        }
        let quiver = Quiver::new(inf + 1, arrows)?;
        let mut dims = a.0.clone();
        dims.push(1);
        let mut entries = theta.0.clone();
        entries.push(-theta.dot(a));
        Ok((quiver, DimVector(dims), Covector(entries)))
    }

    /// Report every covector among `params` that does not annihilate `a`.
    pub fn validate_params(&self, a: &[i64], params: &ParamSet) -> Result<(), ParamViolation> {
        let mut failing = Vec::new();
        for (k, l) in params.lambdas.iter().enumerate() {
            if l.len() != a.len() || !l.annihilates(a) {
                failing.push(CovectorRef::Lambda(k));
            }
        }
        if params.theta.len() != a.len() || !params.theta.annihilates(a) {
            failing.push(CovectorRef::Theta);
        }
        if failing.is_empty() {
            Ok(())
        } else {
            Err(ParamViolation { failing })
        }
    }
}

impl fmt::Debug for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Quiver({} vertices, arrows {:?})", self.vertex_count, self.arrows)
    }
}

impl Serialize for Quiver {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        QuiverJson {
            vertices: self.vertex_count,
            arrows: self.arrows.iter().map(|&(t, h)| [t, h]).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Quiver {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = QuiverJson::deserialize(d)?;
        Quiver::new(raw.vertices, raw.arrows.into_iter().map(|[t, h]| (t, h)).collect())
            .map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CovectorRef {
    Lambda(usize),
    Theta,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamViolation {
    pub failing: Vec<CovectorRef>,
}

impl fmt::Display for ParamViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self
            .failing
            .iter()
            .map(|c| match c {
                CovectorRef::Lambda(k) => format!("lambda[{k}]"),
                CovectorRef::Theta => "theta".to_string(),
            })
            .collect();
        write!(f, "{}", names.join(", "))
    }
}

/// A dimension vector: nonnegative integers indexed by vertices, ordered
/// lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct DimVector(Vec<i64>);

impl DimVector {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if let Some((index, &value)) = entries.iter().enumerate().find(|(_, &x)| x < 0) {
            return Err(Error::NegativeEntry { index, value });
        }
        Ok(DimVector(entries))
    }

    pub fn zero(n: usize) -> Self {
        DimVector(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        DimVector(v)
    }

    pub(crate) fn from_vec_unchecked(entries: Vec<i64>) -> Self {
        debug_assert!(entries.iter().all(|&x| x >= 0));
        DimVector(entries)
    }

    pub fn into_vec(self) -> Vec<i64> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn is_sincere(&self) -> bool {
        self.0.iter().all(|&x| x > 0)
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] > 0).collect()
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    /// gcd of the entries; 0 for the zero vector.
    pub fn gcd(&self) -> i64 {
        self.0.iter().fold(0i64, |g, &x| g.gcd(&x))
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &DimVector) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn scaled(&self, m: i64) -> DimVector {
        DimVector(self.0.iter().map(|x| x * m).collect())
    }

    /// `self / k`, when every entry is divisible by `k`.
    pub fn divided(&self, k: i64) -> Option<DimVector> {
        if k <= 0 || self.0.iter().any(|x| x % k != 0) {
            return None;
        }
        Some(DimVector(self.0.iter().map(|x| x / k).collect()))
    }

    pub fn checked_sub(&self, other: &DimVector) -> Option<DimVector> {
        if !other.le(self) {
            return None;
        }
        Some(DimVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    pub fn add_scaled(&mut self, other: &DimVector, m: i64) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a += m * b;
        }
    }
}

impl Deref for DimVector {
    type Target = [i64];
    fn deref(&self) -> &[i64] {
        &self.0
    }
}

impl fmt::Debug for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for DimVector {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let entries = parse_int_list(s)?;
        DimVector::new(entries)
    }
}

impl TryFrom<Vec<i64>> for DimVector {
    type Error = Error;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        DimVector::new(v)
    }
}

impl Serialize for DimVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for DimVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<i64>::deserialize(d)?;
        DimVector::new(v).map_err(serde::de::Error::custom)
    }
}

fn parse_int_list(s: &str) -> Result<Vec<i64>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| Error::InvalidArgument(format!("bad integer {t:?}"))))
        .collect()
}

/// Parse `"p/q"` or `"n"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    let bad = || Error::BadRational(s.to_string());
    match t.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(t.parse().map_err(|_| bad())?)),
    }
}

pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// An exact-rational covector on the vertex set.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Covector(Vec<BigRational>);

impl Covector {
    pub fn new(entries: Vec<BigRational>) -> Self {
        Covector(entries)
    }

    pub fn zero(n: usize) -> Self {
        Covector(vec![BigRational::zero(); n])
    }

    pub fn from_ints(entries: &[i64]) -> Self {
        Covector(entries.iter().map(|&x| BigRational::from_integer(x.into())).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }

    pub fn dot(&self, v: &[i64]) -> BigRational {
        self.0
            .iter()
            .zip(v)
            .fold(BigRational::zero(), |acc, (c, &x)| acc + c * BigRational::from_integer(x.into()))
    }

    pub fn annihilates(&self, v: &[i64]) -> bool {
        self.dot(v).is_zero()
    }

    /// The same hyperplane with integer coefficients (scaled by the lcm of
    /// the denominators).
    pub fn to_integral(&self) -> Vec<BigInt> {
        let lcm = self.0.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        self.0.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect()
    }
}

impl fmt::Debug for Covector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Covector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(format_rational).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl FromStr for Covector {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Covector(Vec::new()));
        }
        s.split(',').map(parse_rational).collect::<Result<Vec<_>>>().map(Covector)
    }
}

impl Serialize for Covector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<String> = self.0.iter().map(format_rational).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Covector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()
            .map(Covector)
            .map_err(serde::de::Error::custom)
    }
}

/// Deformation and stability parameters. A complex deformation parameter is
/// encoded by the list of rational covectors whose common kernel is its
/// vanishing pattern; a vector "pairs to zero with lambda" when every listed
/// covector kills it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct ParamSet {
    pub lambdas: Vec<Covector>,
    pub theta: Covector,
}

impl ParamSet {
    pub fn zero(n: usize) -> Self {
        ParamSet { lambdas: Vec::new(), theta: Covector::zero(n) }
    }

    pub fn new(lambdas: Vec<Covector>, theta: Covector) -> Self {
        ParamSet { lambdas, theta }
    }

    pub fn check_len(&self, n: usize) -> Result<()> {
        for c in self.lambdas.iter().chain(std::iter::once(&self.theta)) {
            if c.len() != n {
                return Err(Error::SizeMismatch { expected: n, got: c.len() });
            }
        }
        Ok(())
    }

    pub fn annihilates(&self, v: &[i64]) -> bool {
        self.theta.annihilates(v) && self.lambdas.iter().all(|l| l.annihilates(v))
    }

    /// Nonzero covectors scaled to integers, for fast repeated filtering.
    pub(crate) fn integral_rows(&self) -> Vec<Vec<i64>> {
        self.lambdas
            .iter()
            .chain(std::iter::once(&self.theta))
            .filter(|c| !c.is_zero())
            .map(|c| {
                c.to_integral()
                    .into_iter()
                    .map(|x| i64::try_from(x).expect("covector coefficients fit in i64"))
                    .collect()
            })
            .collect()
    }
}

/// Integer kernel test against pre-scaled covectors, using i128 to stay exact.
pub(crate) fn kills(rows: &[Vec<i64>], v: &[i64]) -> bool {
    rows.iter().all(|r| r.iter().zip(v).map(|(&c, &x)| c as i128 * x as i128).sum::<i128>() == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn affa1() -> Quiver {
        Quiver::cycle(2).unwrap()
    }

    fn d4_star() -> Quiver {
        Quiver::star(4)
    }

    #[test]
    fn ringel_examples() {
        let a2 = Quiver::path(2).unwrap();
        assert_eq!(a2.ringel_form(&[1, 0], &[0, 1]).unwrap(), -1);
        assert_eq!(Quiver::jordan(2).ringel_form(&[1], &[1]).unwrap(), -1);
        assert_eq!(affa1().ringel_form(&[1, 1], &[1, 1]).unwrap(), 0);
    }

    #[test]
    fn ringel_size_mismatch() {
        let a2 = Quiver::path(2).unwrap();
        assert_eq!(
            a2.ringel_form(&[1], &[0, 1]),
            Err(Error::SizeMismatch { expected: 2, got: 1 })
        );
        assert!(a2.cartan_pairing(&[1, 0, 0], &[0, 1]).is_err());
        assert!(a2.p_value(&[1, 0, 0]).is_err());
    }

    #[test]
    fn cartan_examples() {
        let a2 = Quiver::path(2).unwrap();
        assert_eq!(a2.cartan_pairing(&[1, 0], &[0, 1]).unwrap(), -1);
        assert_eq!(affa1().cartan_pairing(&[1, 0], &[0, 1]).unwrap(), -2);
        let delta = [2, 1, 1, 1, 1];
        assert_eq!(d4_star().cartan_pairing(&delta, &delta).unwrap(), 0);
    }

    #[test]
    fn p_examples() {
        for d in 1..5i64 {
            for n in 1..5i64 {
                assert_eq!(Quiver::jordan(d as usize).p_value(&[n]).unwrap(), n * n * (d - 1) + 1);
            }
        }
        assert_eq!(Quiver::path(3).unwrap().p_value(&[0, 1, 0]).unwrap(), 0);
        assert_eq!(d4_star().p_value(&[2, 1, 1, 1, 1]).unwrap(), 1);
    }

    #[test]
    fn reflect_examples() {
        assert_eq!(affa1().reflect(0, &[2, 1]).unwrap(), vec![0, 1]);
        assert_eq!(affa1().reflect(1, &[0, 1]).unwrap(), vec![0, -1]);
        let a2 = Quiver::path(2).unwrap();
        assert_eq!(a2.reflect(0, &[0, 1]).unwrap(), vec![1, 1]);
        assert_eq!(Quiver::jordan(1).reflect(0, &[1]), Err(Error::LoopVertex(0)));
    }

    #[test]
    fn frame_examples() {
        let j1 = Quiver::jordan(1);
        let (q, a, t) = j1
            .frame(&DimVector::new(vec![3]).unwrap(), &Covector::zero(1), &DimVector::new(vec![1]).unwrap())
            .unwrap();
        assert_eq!(q.vertex_count(), 2);
        assert_eq!(q.loop_count(0), 1);
        assert_eq!(q.edge_count(0, 1), 1);
        assert_eq!(&*a, &[3, 1]);
        assert_eq!(t, Covector::from_ints(&[0, 0]));

        let a2 = Quiver::path(2).unwrap();
        let (_, _, t) = a2
            .frame(&DimVector::new(vec![1, 1]).unwrap(), &Covector::from_ints(&[1, -1]), &DimVector::new(vec![1, 0]).unwrap())
            .unwrap();
        assert_eq!(t, Covector::from_ints(&[1, -1, 0]));

        let (_, a, t) = affa1()
            .frame(&DimVector::new(vec![1, 1]).unwrap(), &Covector::from_ints(&[2, -1]), &DimVector::new(vec![0, 1]).unwrap())
            .unwrap();
        assert_eq!(t, Covector::from_ints(&[2, -1, -1]));
        assert!(t.annihilates(&a));
    }

    #[test]
    fn validate_examples() {
        let q = affa1();
        let ok = ParamSet::new(vec![Covector::from_ints(&[1, -1])], Covector::zero(2));
        assert!(q.validate_params(&[1, 1], &ok).is_ok());
        let bad = ParamSet::new(vec![Covector::from_ints(&[1, 0])], Covector::zero(2));
        assert_eq!(
            q.validate_params(&[1, 1], &bad),
            Err(ParamViolation { failing: vec![CovectorRef::Lambda(0)] })
        );
        assert!(Quiver::jordan(2).validate_params(&[2], &ParamSet::zero(1)).is_ok());
    }

    #[test]
    fn quiver_rejects_bad_vertex() {
        assert_eq!(Quiver::new(2, vec![(0, 2)]), Err(Error::InvalidVertex { vertex: 2, vertices: 2 }));
        assert_eq!(Quiver::new(0, vec![]), Err(Error::NoVertices));
    }

    #[test]
    fn rationals_parse() {
        assert_eq!(format_rational(&parse_rational("6/4").unwrap()), "3/2");
        assert_eq!(format_rational(&parse_rational("-2").unwrap()), "-2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        let c: Covector = "1/2,-1/2".parse().unwrap();
        assert!(c.annihilates(&[3, 3]));
        assert_eq!(c.to_integral(), vec![BigInt::from(1), BigInt::from(-1)]);
    }

    fn small_quiver() -> impl Strategy<Value = Quiver> {
        (1usize..4).prop_flat_map(|n| {
            prop::collection::vec((0..n, 0..n), 0..5).prop_map(move |arrows| Quiver::new(n, arrows).unwrap())
        })
    }

    fn quiver_and_vectors() -> impl Strategy<Value = (Quiver, Vec<i64>, Vec<i64>, Vec<i64>)> {
        small_quiver().prop_flat_map(|q| {
            let n = q.vertex_count();
            let v = || prop::collection::vec(-4i64..5, n);
            (Just(q), v(), v(), v())
        })
    }

    proptest! {
        #[test]
        fn cartan_is_symmetric_bilinear((q, a, b, c) in quiver_and_vectors(), k in -3i64..4) {
            prop_assert_eq!(q.cartan_pairing(&a, &b).unwrap(), q.cartan_pairing(&b, &a).unwrap());
            let ab: Vec<i64> = a.iter().zip(&b).map(|(x, y)| x + k * y).collect();
            prop_assert_eq!(
                q.cartan_pairing(&ab, &c).unwrap(),
                q.cartan_pairing(&a, &c).unwrap() + k * q.cartan_pairing(&b, &c).unwrap()
            );
            prop_assert_eq!(
                q.ringel_form(&ab, &c).unwrap(),
                q.ringel_form(&a, &c).unwrap() + k * q.ringel_form(&b, &c).unwrap()
            );
            prop_assert_eq!(
                q.ringel_form(&c, &ab).unwrap(),
                q.ringel_form(&c, &a).unwrap() + k * q.ringel_form(&c, &b).unwrap()
            );
            prop_assert_eq!(
                q.cartan_pairing(&a, &b).unwrap(),
                q.ringel_form(&a, &b).unwrap() + q.ringel_form(&b, &a).unwrap()
            );
        }

        #[test]
        fn reflection_is_involutive_isometry((q, a, b, _) in quiver_and_vectors(), i in 0usize..3) {
            prop_assume!(i < q.vertex_count() && q.is_loopfree(i));
            let sa = q.reflect(i, &a).unwrap();
            let sb = q.reflect(i, &b).unwrap();
            prop_assert_eq!(q.reflect(i, &sa).unwrap(), a.clone());
            prop_assert_eq!(q.cartan_pairing(&sa, &sb).unwrap(), q.cartan_pairing(&a, &b).unwrap());
            prop_assert_eq!(q.p_value(&sa).unwrap(), q.p_value(&a).unwrap());
        }

        #[test]
        fn cartan_diagonal_tracks_loops(q in small_quiver()) {
            for i in 0..q.vertex_count() {
                prop_assert_eq!(q.cartan(i, i), 2 - 2 * q.loop_count(i) as i64);
                prop_assert_eq!(q.cartan(i, i) == 2, q.is_loopfree(i));
                for j in 0..q.vertex_count() {
                    if i != j {
                        let between = q.arrows().iter().filter(|&&(t, h)| (t, h) == (i, j) || (t, h) == (j, i)).count();
                        prop_assert_eq!(q.cartan(i, j), -(between as i64));
                    }
                }
            }
        }

        #[test]
        fn framing_annihilates(
            (q, a, _, _) in quiver_and_vectors(),
            theta in prop::collection::vec(-3i64..4, 3),
            framing in prop::collection::vec(0i64..3, 3),
        ) {
            let n = q.vertex_count();
            let a = DimVector::new(a.iter().map(|x| x.abs()).collect()).unwrap();
            let theta = Covector::from_ints(&theta[..n]);
            let framing = DimVector::new(framing[..n].to_vec()).unwrap();
            let (fq, fa, ft) = q.frame(&a, &theta, &framing).unwrap();
            prop_assert!(ft.annihilates(&fa));
            prop_assert_eq!(fq.vertex_count(), n + 1);
            prop_assert_eq!(fq.arrows().len(), q.arrows().len() + framing.iter().sum::<i64>() as usize);
        }

        #[test]
        fn quiver_json_roundtrip(q in small_quiver()) {
            let s = serde_json::to_string(&q).unwrap();
            let back: Quiver = serde_json::from_str(&s).unwrap();
            prop_assert_eq!(back, q);
        }
    }
}
