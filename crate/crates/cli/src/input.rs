use std::path::Path;

use anyhow::{bail, Context, Result};

use qsr_core::corpus::builtin;
use qsr_core::decomp::SigmaTable;
use qsr_core::variety::VarietyDescriptor;
use qsr_core::{Covector, DimVector, ParamSet, Quiver};

use crate::{cache, Target};

pub struct Job {
    pub quiver: Quiver,
    pub alpha: Option<DimVector>,
    pub params: ParamSet,
    pub bound: DimVector,
}

pub fn load_quiver(source: &str) -> Result<Quiver> {
    let path = Path::new(source);
    if path.extension().is_some_and(|e| e == "json") || path.is_file() {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading quiver file {source}"))?;
        return serde_json::from_str(&text).with_context(|| format!("parsing quiver file {source}"));
    }
    Ok(builtin(source)?)
}

fn parse_vector(s: &str, what: &str) -> Result<DimVector> {
    s.parse::<DimVector>().with_context(|| format!("parsing {what} {s:?}"))
}

pub fn parse_lambdas(s: &str) -> Result<Vec<Covector>> {
    s.split(';')
        .map(str::trim)
        .filter(|c| !c.is_empty())
        .map(|c| c.parse::<Covector>().with_context(|| format!("parsing lambda covector {c:?}")))
        .collect()
}

impl Job {
    pub fn from_target(t: &Target) -> Result<Job> {
        let quiver = load_quiver(&t.quiver)?;
        let n = quiver.vertex_count();
        let alpha = t.alpha.as_deref().map(|a| parse_vector(a, "alpha")).transpose()?;
        let lambdas = t.lambda.as_deref().map(parse_lambdas).transpose()?.unwrap_or_default();
        let theta = match t.theta.as_deref() {
            Some(s) => s.parse::<Covector>().with_context(|| format!("parsing theta {s:?}"))?,
            None => Covector::zero(n),
        };
        let params = ParamSet::new(lambdas, theta);
        params.check_len(n)?;
        let bound = match (t.bound.as_deref(), &alpha) {
            (Some(b), _) => parse_vector(b, "bound")?,
            (None, Some(a)) => a.clone(),
            (None, None) => bail!("need --alpha or --bound"),
        };
        quiver.ringel_form(&bound, &bound)?;
        if let Some(a) = &alpha {
            quiver.ringel_form(a, a)?;
        }
        Ok(Job { quiver, alpha, params, bound })
    }

    pub fn require_alpha(&self) -> Result<&DimVector> {
        self.alpha.as_ref().context("this command needs --alpha")
    }

    pub fn table(&self, bound: &DimVector) -> Result<SigmaTable> {
        Ok(cache::table(&self.quiver, &self.params, bound)?)
    }

    pub fn variety(&self) -> Result<VarietyDescriptor> {
        let alpha = self.require_alpha()?.clone();
        let v = VarietyDescriptor::new(self.quiver.clone(), alpha.clone(), self.params.clone())?;
        let table = self.table(&alpha)?;
        Ok(VarietyDescriptor::with_table(self.quiver.clone(), alpha, self.params.clone(), table).unwrap_or(v))
    }
}
