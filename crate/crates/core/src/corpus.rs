//! Builtin quivers and the reference set of instances exercised by the
//! test suites and the CLI sweeps.

use crate::quiver::{Covector, DimVector, ParamSet, Quiver};
use crate::variety::VarietyDescriptor;
use crate::{Error, Result};

fn suffix(name: &str, prefix: &str) -> Option<usize> {
    name.strip_prefix(prefix).filter(|s| !s.is_empty()).and_then(|s| s.parse().ok())
}

/// Resolves `a2`, `a3`, `aN`, `affa1`, `affa2`, `affaN`, `affd4`,
/// `jordanK` and `starK`.
pub fn builtin(name: &str) -> Result<Quiver> {
    let name = name.to_ascii_lowercase();
    let unknown = || Error::InvalidArgument(format!("unknown builtin quiver {name:?}"));
    if name == "affd4" {
        return Ok(Quiver::star(4));
    }
    if let Some(n) = suffix(&name, "affa") {
        return Quiver::cycle(n + 1);
    }
    if let Some(k) = suffix(&name, "jordan") {
        return Ok(Quiver::jordan(k));
    }
    if let Some(k) = suffix(&name, "star") {
        return Ok(Quiver::star(k));
    }
    if let Some(n) = suffix(&name, "a").filter(|&n| n >= 1) {
        return Quiver::path(n);
    }
    Err(unknown())
}

/// Minimal imaginary root of a builtin affine quiver.
pub fn affine_delta(name: &str) -> Option<DimVector> {
    let q = builtin(name).ok()?;
    let name = name.to_ascii_lowercase();
    if name == "affd4" {
        return Some(DimVector::new(vec![2, 1, 1, 1, 1]).unwrap());
    }
    suffix(&name, "affa").map(|_| DimVector::new(vec![1; q.vertex_count()]).unwrap())
}

#[derive(Debug, Clone)]
pub struct CorpusInstance {
    pub label: String,
    pub quiver_name: String,
    pub quiver: Quiver,
    pub alpha: DimVector,
    pub params: ParamSet,
}

impl CorpusInstance {
    fn new(label: &str, quiver_name: &str, alpha: &[i64], lambdas: &[&[i64]]) -> Self {
        let quiver = builtin(quiver_name).expect("corpus quivers are builtin");
        let n = quiver.vertex_count();
        let params = ParamSet::new(lambdas.iter().map(|l| Covector::from_ints(l)).collect(), Covector::zero(n));
        CorpusInstance {
            label: label.to_string(),
            quiver_name: quiver_name.to_string(),
            quiver,
            alpha: DimVector::new(alpha.to_vec()).expect("corpus vectors are nonnegative"),
            params,
        }
    }

    pub fn variety(&self) -> VarietyDescriptor {
        VarietyDescriptor::new(self.quiver.clone(), self.alpha.clone(), self.params.clone())
            .expect("corpus parameters annihilate their vectors")
    }
}

pub fn corpus_instances() -> Vec<CorpusInstance> {
    vec![
        CorpusInstance::new("a2-simple-sum", "a2", &[1, 1], &[]),
        CorpusInstance::new("a3-highest", "a3", &[1, 1, 1], &[]),
        CorpusInstance::new("affa1-delta", "affa1", &[1, 1], &[]),
        CorpusInstance::new("affa1-2delta", "affa1", &[2, 2], &[]),
        CorpusInstance::new("affa1-delta-generic", "affa1", &[1, 1], &[&[1, -1]]),
        CorpusInstance::new("affa2-delta", "affa2", &[1, 1, 1], &[]),
        CorpusInstance::new("affd4-delta", "affd4", &[2, 1, 1, 1, 1], &[]),
        CorpusInstance::new("affd4-2delta", "affd4", &[4, 2, 2, 2, 2], &[]),
        CorpusInstance::new("jordan1-1", "jordan1", &[1], &[]),
        CorpusInstance::new("jordan1-2", "jordan1", &[2], &[]),
        CorpusInstance::new("jordan1-3", "jordan1", &[3], &[]),
        CorpusInstance::new("jordan2-1", "jordan2", &[1], &[]),
        CorpusInstance::new("jordan2-2", "jordan2", &[2], &[]),
        CorpusInstance::new("jordan2-3", "jordan2", &[3], &[]),
        CorpusInstance::new("jordan3-2", "jordan3", &[2], &[]),
        CorpusInstance::new("star5-primitive", "star5", &[2, 1, 1, 1, 1, 1], &[]),
        CorpusInstance::new("star5-double", "star5", &[4, 2, 2, 2, 2, 2], &[]),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_resolve() {
        assert_eq!(builtin("a2").unwrap(), Quiver::path(2).unwrap());
        assert_eq!(builtin("A3").unwrap().vertex_count(), 3);
        assert_eq!(builtin("affa1").unwrap(), Quiver::cycle(2).unwrap());
        assert_eq!(builtin("affa2").unwrap().edge_count(0, 2), 1);
        assert_eq!(builtin("affd4").unwrap(), Quiver::star(4));
        assert_eq!(builtin("jordan3").unwrap(), Quiver::jordan(3));
        assert_eq!(builtin("star5").unwrap().vertex_count(), 6);
        for bad in ["", "a", "a0", "b2", "jordan", "starx"] {
            assert!(builtin(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn deltas_are_radical() {
        for name in ["affa1", "affa2", "affa3", "affd4"] {
            let q = builtin(name).unwrap();
            let d = affine_delta(name).unwrap();
            for i in 0..q.vertex_count() {
                assert_eq!(q.cartan_pairing(&d, &DimVector::unit(q.vertex_count(), i)).unwrap(), 0);
            }
        }
        assert!(affine_delta("a2").is_none());
    }

    #[test]
    fn corpus_is_well_formed() {
        let all = corpus_instances();
        assert!(all.len() >= 15);
        for inst in &all {
            assert!(!inst.variety().is_empty().unwrap(), "{}", inst.label);
        }
    }
}
