//! Positive roots of the Kac–Moody root system attached to a quiver.
//!
//! A vector is tested by reflection descent: while some loopfree vertex `i`
//! has `(b, e_i) > 0`, either `b = e_i` (a real root) or `b` is replaced by
//! `s_i(b)`, which strictly lowers the height. A negative entry means `b` was
//! not a root. When the descent stops, `b` is an imaginary root exactly when
//! it lies in the fundamental region.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::quiver::{DimVector, Quiver};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RootKind {
    Real,
    Isotropic,
    NonIsotropic,
}

impl RootKind {
    pub fn from_p(p: i64) -> RootKind {
        match p {
            0 => RootKind::Real,
            1 => RootKind::Isotropic,
            _ => RootKind::NonIsotropic,
        }
    }

    pub fn is_imaginary(self) -> bool {
        self != RootKind::Real
    }

    pub fn label(self) -> &'static str {
        match self {
            RootKind::Real => "real",
            RootKind::Isotropic => "isotropic",
            RootKind::NonIsotropic => "non-isotropic",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RootInfo {
    pub vector: DimVector,
    pub kind: RootKind,
    pub p: i64,
}

impl RootInfo {
    pub(crate) fn new(vector: DimVector, p: i64) -> Self {
        RootInfo { vector, kind: RootKind::from_p(p), p }
    }

    pub fn gcd(&self) -> i64 {
        self.vector.gcd()
    }
}

/// True iff the full subquiver on `{i : b_i > 0}` is connected.
pub fn support_connected(q: &Quiver, b: &[i64]) -> Result<bool> {
    q.check_len(b)?;
    if b.iter().all(|&x| x == 0) {
        return Err(Error::ZeroVector);
    }
    Ok(connected_support(q, b))
}

pub(crate) fn connected_support(q: &Quiver, b: &[i64]) -> bool {
    let n = q.vertex_count();
    let support: Vec<usize> = (0..n).filter(|&i| b[i] > 0).collect();
    let Some(&start) = support.first() else {
        return false;
    };
    let mut seen = vec![false; n];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    let mut reached = 1;
    while let Some(i) = queue.pop_front() {
        for &j in &support {
            if !seen[j] && q.edge_count(i, j) > 0 {
                seen[j] = true;
                reached += 1;
                queue.push_back(j);
            }
        }
    }
    reached == support.len()
}

/// `b > 0`, connected support, and `(b, e_i) <= 0` at every vertex.
pub fn in_fundamental_region(q: &Quiver, b: &[i64]) -> bool {
    if q.check_len(b).is_err() || b.iter().any(|&x| x < 0) || b.iter().all(|&x| x == 0) {
        return false;
    }
    connected_support(q, b) && (0..q.vertex_count()).all(|i| q.pair_simple(b, i) <= 0)
}

/// Classify a nonnegative vector: `Some(root)` if it is a positive root,
/// `None` otherwise.
pub fn classify(q: &Quiver, b: &[i64]) -> Result<Option<RootInfo>> {
    q.check_len(b)?;
    let original = DimVector::new(b.to_vec())?;
    if original.is_zero() {
        return Err(Error::ZeroVector);
    }
    let mut v = b.to_vec();
    'descent: loop {
        for i in 0..q.vertex_count() {
            if !q.is_loopfree(i) {
                continue;
            }
            let c = q.pair_simple(&v, i);
            if c <= 0 {
                continue;
            }
            if v[i] == 1 && v.iter().enumerate().all(|(j, &x)| j == i || x == 0) {
                return Ok(Some(RootInfo::new(original, 0)));
            }
            v[i] -= c;
            if v[i] < 0 {
                return Ok(None);
            }
            continue 'descent;
        }
        break;
    }
    if connected_support(q, &v) {
        Ok(Some(RootInfo::new(original, q.p(b))))
    } else {
        Ok(None)
    }
}

/// The integer box `[0, bound]`, indexed so that index order is
/// lexicographic order on vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxShape {
    bound: Vec<i64>,
    strides: Vec<usize>,
    volume: usize,
}

impl BoxShape {
    pub fn new(bound: &[i64]) -> Self {
        let mut strides = vec![0; bound.len()];
        let mut vol = 1usize;
        for i in (0..bound.len()).rev() {
            strides[i] = vol;
            vol *= (bound[i].max(0) + 1) as usize;
        }
        BoxShape { bound: bound.to_vec(), strides, volume: vol }
    }

    pub fn bound(&self) -> &[i64] {
        &self.bound
    }

    pub fn volume(&self) -> usize {
        self.volume
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        v.len() == self.bound.len() && v.iter().zip(&self.bound).all(|(&x, &b)| 0 <= x && x <= b)
    }

    #[inline]
    pub fn index(&self, v: &[i64]) -> usize {
        v.iter().zip(&self.strides).map(|(&x, &s)| x as usize * s).sum()
    }

    pub fn vector(&self, mut idx: usize) -> Vec<i64> {
        self.strides
            .iter()
            .map(|&s| {
                let x = idx / s;
                idx %= s;
                x as i64
            })
            .collect()
    }

    /// All vectors of the box in index order.
    pub fn iter(&self) -> impl Iterator<Item = Vec<i64>> + '_ {
        let mut cur: Option<Vec<i64>> = Some(vec![0; self.bound.len()]);
        std::iter::from_fn(move || {
            let out = cur.take()?;
            let mut next = out.clone();
            let mut i = next.len();
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                if next[i] < self.bound[i] {
                    next[i] += 1;
                    cur = Some(next);
                    break;
                }
                next[i] = 0;
            }
            Some(out)
        })
    }
}

/// Classification of every vector in a box, built bottom-up so that each
/// reflection step is a table lookup.
#[derive(Debug, Clone)]
pub struct RootTable {
    shape: BoxShape,
    p: Vec<Option<i64>>,
}

impl RootTable {
    pub fn build(q: &Quiver, bound: &DimVector) -> Result<Self> {
        q.check_len(bound)?;
        let shape = BoxShape::new(bound);
        let mut p: Vec<Option<i64>> = Vec::with_capacity(shape.volume());
        for v in shape.iter() {
            let entry = if v.iter().all(|&x| x == 0) { None } else { Self::descend_once(q, &shape, &p, &v) };
            p.push(entry);
        }
        Ok(RootTable { shape, p })
    }

    fn descend_once(q: &Quiver, shape: &BoxShape, done: &[Option<i64>], v: &[i64]) -> Option<i64> {
        for i in 0..q.vertex_count() {
            if !q.is_loopfree(i) {
                continue;
            }
            let c = q.pair_simple(v, i);
            if c <= 0 {
                continue;
            }
            if v[i] == 1 && v.iter().enumerate().all(|(j, &x)| j == i || x == 0) {
                return Some(0);
            }
            if v[i] < c {
                return None;
            }
            let mut w = v.to_vec();
            w[i] -= c;
            return done[shape.index(&w)];
        }
        connected_support(q, v).then(|| q.p(v))
    }

    /// Rebuild from previously computed p-values (one per box vector in
    /// index order, `None` for non-roots).
    pub fn from_parts(bound: &DimVector, p: Vec<Option<i64>>) -> Result<Self> {
        let shape = BoxShape::new(bound);
        if p.len() != shape.volume() {
            return Err(Error::InvalidArgument(format!(
                "root table has {} entries, box has {}",
                p.len(),
                shape.volume()
            )));
        }
        Ok(RootTable { shape, p })
    }

    pub fn shape(&self) -> &BoxShape {
        &self.shape
    }

    pub fn p_values(&self) -> &[Option<i64>] {
        &self.p
    }

    #[inline]
    pub fn p_at(&self, idx: usize) -> Option<i64> {
        self.p[idx]
    }

    pub fn get(&self, v: &[i64]) -> Option<RootInfo> {
        if !self.shape.contains(v) {
            return None;
        }
        self.p[self.shape.index(v)].map(|p| RootInfo::new(DimVector::from_vec_unchecked(v.to_vec()), p))
    }

    /// Indices of all roots in the box, in lexicographic order.
    pub fn root_indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.p.len()).filter(|&i| self.p[i].is_some())
    }

    pub fn roots(&self) -> Vec<RootInfo> {
        self.root_indices()
            .map(|i| RootInfo::new(DimVector::from_vec_unchecked(self.shape.vector(i)), self.p[i].unwrap()))
            .collect()
    }
}

/// All positive roots `0 < b <= bound`, lexicographically sorted.
pub fn enumerate_roots(q: &Quiver, bound: &DimVector) -> Result<Vec<RootInfo>> {
    Ok(RootTable::build(q, bound)?.roots())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn dv(v: &[i64]) -> DimVector {
        DimVector::new(v.to_vec()).unwrap()
    }

    fn affa1() -> Quiver {
        Quiver::cycle(2).unwrap()
    }

    #[test]
    fn support_examples() {
        let a2 = Quiver::path(2).unwrap();
        assert!(support_connected(&a2, &[1, 1]).unwrap());
        assert!(support_connected(&a2, &[1, 0]).unwrap());
        let two = Quiver::new(2, vec![]).unwrap();
        assert!(!support_connected(&two, &[1, 1]).unwrap());
        assert_eq!(support_connected(&a2, &[0, 0]), Err(Error::ZeroVector));
    }

    #[test]
    fn fundamental_region_examples() {
        assert!(in_fundamental_region(&affa1(), &[1, 1]));
        assert!(in_fundamental_region(&Quiver::jordan(2), &[1]));
        assert!(!in_fundamental_region(&Quiver::path(2).unwrap(), &[1, 1]));
        assert!(!in_fundamental_region(&affa1(), &[0, 0]));
    }

    #[test]
    fn classify_examples() {
        let a2 = Quiver::path(2).unwrap();
        let r = classify(&a2, &[1, 1]).unwrap().unwrap();
        assert_eq!((r.kind, r.p), (RootKind::Real, 0));
        for k in 1..=4 {
            let r = classify(&affa1(), &[k, k]).unwrap().unwrap();
            assert_eq!((r.kind, r.p), (RootKind::Isotropic, 1));
        }
        let r = classify(&Quiver::jordan(2), &[3]).unwrap().unwrap();
        assert_eq!((r.kind, r.p), (RootKind::NonIsotropic, 10));
        assert_eq!(classify(&a2, &[2, 1]).unwrap(), None);
        assert_eq!(classify(&a2, &[0, 0]), Err(Error::ZeroVector));
        assert!(matches!(classify(&a2, &[-1, 0]), Err(Error::NegativeEntry { .. })));
    }

    #[test]
    fn loop_vertex_coordinate_is_imaginary() {
        let r = classify(&Quiver::jordan(1), &[1]).unwrap().unwrap();
        assert_eq!(r.kind, RootKind::Isotropic);
    }

    #[test]
    fn enumerate_examples() {
        let a2 = Quiver::path(2).unwrap();
        let roots: Vec<Vec<i64>> = enumerate_roots(&a2, &dv(&[1, 1])).unwrap().into_iter().map(|r| r.vector.into_vec()).collect();
        assert_eq!(roots, vec![vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(enumerate_roots(&Quiver::path(3).unwrap(), &dv(&[1, 1, 1])).unwrap().len(), 6);

        let roots = enumerate_roots(&affa1(), &dv(&[3, 3])).unwrap();
        let mut expected: Vec<Vec<i64>> = Vec::new();
        for k in 0..=2 {
            expected.push(vec![k + 1, k]);
            expected.push(vec![k, k + 1]);
        }
        for k in 1..=3 {
            expected.push(vec![k, k]);
        }
        expected.sort();
        let got: Vec<Vec<i64>> = roots.iter().map(|r| r.vector.to_vec()).collect();
        assert_eq!(got, expected);
        for r in &roots {
            assert_eq!(r.kind == RootKind::Real, r.vector[0] != r.vector[1]);
        }
        assert!(enumerate_roots(&a2, &dv(&[0, 0])).unwrap().is_empty());
    }

    #[test]
    fn finite_type_counts() {
        for n in 1..=6 {
            let q = Quiver::path(n).unwrap();
            let bound = dv(&vec![1; n]);
            assert_eq!(enumerate_roots(&q, &bound).unwrap().len(), n * (n + 1) / 2);
        }
        let d4 = Quiver::star(3);
        let roots = enumerate_roots(&d4, &dv(&[2, 1, 1, 1])).unwrap();
        assert_eq!(roots.len(), 12);
        assert!(roots.iter().all(|r| r.kind == RootKind::Real));
    }

    #[test]
    fn box_index_is_lexicographic() {
        let shape = BoxShape::new(&[2, 0, 3]);
        let all: Vec<Vec<i64>> = shape.iter().collect();
        assert_eq!(all.len(), shape.volume());
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
        for (i, v) in all.iter().enumerate() {
            assert_eq!(shape.index(v), i);
            assert_eq!(&shape.vector(i), v);
        }
    }

    fn small_quiver() -> impl Strategy<Value = Quiver> {
        (1usize..4).prop_flat_map(|n| {
            prop::collection::vec((0..n, 0..n), 0..5).prop_map(move |arrows| Quiver::new(n, arrows).unwrap())
        })
    }

    fn quiver_and_bound() -> impl Strategy<Value = (Quiver, Vec<i64>)> {
        small_quiver().prop_flat_map(|q| {
            let n = q.vertex_count();
            (Just(q), prop::collection::vec(0i64..4, n))
        })
    }

    proptest! {
        #[test]
        fn table_agrees_with_direct_descent((q, bound) in quiver_and_bound()) {
            let table = RootTable::build(&q, &dv(&bound)).unwrap();
            for v in table.shape().iter().skip(1) {
                prop_assert_eq!(table.get(&v), classify(&q, &v).unwrap());
            }
        }

        #[test]
        fn reflections_preserve_roots((q, bound) in quiver_and_bound()) {
            for r in enumerate_roots(&q, &dv(&bound)).unwrap() {
                prop_assert_eq!(r.kind == RootKind::Real, r.p == 0);
                prop_assert!(r.p >= 0);
                prop_assert!(connected_support(&q, &r.vector));
                for i in 0..q.vertex_count() {
                    if !q.is_loopfree(i) {
                        continue;
                    }
                    let s = q.reflect(i, &r.vector).unwrap();
                    if s.iter().all(|&x| x >= 0) && s.iter().any(|&x| x > 0) {
                        let image = classify(&q, &s).unwrap();
                        prop_assert!(image.is_some(), "s_{}({}) dropped out", i, r.vector);
                        let image = image.unwrap();
                        prop_assert_eq!((image.kind, image.p), (r.kind, r.p));
                    }
                }
            }
        }

        #[test]
        fn isotropic_multiples_are_roots((q, bound) in quiver_and_bound()) {
            let bound = dv(&bound);
            let table = RootTable::build(&q, &bound).unwrap();
            for r in table.roots().into_iter().filter(|r| r.kind == RootKind::Isotropic) {
                let mut m = 2;
                loop {
                    let v = r.vector.scaled(m);
                    if !v.le(&bound) {
                        break;
                    }
                    let got = table.get(&v);
                    prop_assert!(got.is_some());
                    prop_assert_eq!(got.unwrap().p, 1);
                    m += 1;
                }
            }
        }

        #[test]
        fn orientation_does_not_matter((q, bound) in quiver_and_bound(), flips in prop::collection::vec(any::<bool>(), 5)) {
            let arrows = q.arrows().iter().zip(flips.iter().cycle()).map(|(&(t, h), &f)| if f { (h, t) } else { (t, h) }).collect();
            let flipped = Quiver::new(q.vertex_count(), arrows).unwrap();
            let bound = dv(&bound);
            prop_assert_eq!(enumerate_roots(&q, &bound).unwrap(), enumerate_roots(&flipped, &bound).unwrap());
        }
    }
}
