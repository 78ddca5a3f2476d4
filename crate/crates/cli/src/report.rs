//! JSON reports for each subcommand. Key order and list order are fixed so
//! identical inputs give byte-identical output.

use anyhow::{bail, Result};
use serde_json::{json, Value};

use qsr_core::charvar::{
    dimension_char, resolution_verdict_char, singular_components_char, strata_char, Group, SurfaceVariety,
};
use qsr_core::leaves::{codim2_leaves, modes_may_differ, namikawa_factors, permissive_only_leaves, Leaf, Mode};
use qsr_core::variety::{Stratum, VarietyDescriptor};
use qsr_core::{Quiver, RootInfo};

use crate::input::Job;
use crate::Target;

const WEYL_CAVEAT: &str =
    "Weyl factors are reported before the quotient by the fundamental group of each leaf";

fn root_entry(r: &RootInfo) -> Value {
    json!({"root": r.vector, "kind": r.kind.label(), "p": r.p})
}

fn quiver_json(q: &Quiver) -> Value {
    serde_json::to_value(q).expect("quivers serialize")
}

pub fn roots(t: &Target) -> Result<Value> {
    let job = Job::from_target(t)?;
    let table = job.table(&job.bound)?;
    let roots = table.root_table().roots();
    Ok(json!({
        "quiver": quiver_json(&job.quiver),
        "bound": job.bound,
        "count": roots.len(),
        "roots": roots.iter().map(root_entry).collect::<Vec<_>>(),
    }))
}

pub fn sigma(t: &Target) -> Result<Value> {
    let job = Job::from_target(t)?;
    if let Some(a) = &job.alpha {
        if !a.le(&job.bound) {
            bail!("alpha {a} does not lie below the bound {}", job.bound);
        }
    }
    let table = job.table(&job.bound)?;
    let restricted = table.restricted_roots();
    let sigma: Vec<Value> = table
        .sigma_roots()
        .iter()
        .map(|r| {
            let mut e = root_entry(r);
            e["minimal"] = json!(table.is_minimal(&r.vector).expect("Σ members are in the table"));
            e
        })
        .collect();
    Ok(json!({
        "bound": job.bound,
        "restricted": restricted.members.iter().map(root_entry).collect::<Vec<_>>(),
        "sigma": sigma,
        "alpha": job.alpha,
        "alpha_in_sigma": job.alpha.as_ref().map(|a| !a.is_zero() && table.is_sigma(a)),
    }))
}

fn canonical_entries(v: &VarietyDescriptor) -> Result<Option<Vec<Value>>> {
    Ok(v.canonical()?.map(|c| {
        c.parts
            .iter()
            .map(|p| json!({"mult": p.mult, "root": p.root.vector, "kind": p.root.kind.label(), "p": p.root.p}))
            .collect()
    }))
}

pub fn canon(t: &Target) -> Result<Value> {
    let job = Job::from_target(t)?;
    let v = job.variety()?;
    let parts = canonical_entries(&v)?;
    Ok(json!({
        "alpha": v.alpha(),
        "empty": parts.is_none(),
        "parts": parts.unwrap_or_default(),
        "p_sum": v.canonical()?.map(|c| c.p_sum()),
    }))
}

fn stratum_json(v: &VarietyDescriptor, s: &Stratum) -> Result<Value> {
    let local = if s.parts.is_empty() {
        Value::Null
    } else {
        let (q, e) = v.local_quiver(s)?;
        json!({"quiver": quiver_json(&q), "e": e})
    };
    Ok(json!({
        "parts": s.parts.iter().map(|p| json!({"mult": p.mult, "root": p.root.vector})).collect::<Vec<_>>(),
        "dim": s.dim,
        "codim": s.codim,
        "gcd": s.gcd_tau,
        "open": s.is_open,
        "formally_resolvable": s.formally_resolvable,
        "local_quiver": local,
    }))
}

pub fn variety(t: &Target) -> Result<Value> {
    let job = Job::from_target(t)?;
    let v = job.variety()?;
    let Some(canonical) = canonical_entries(&v)? else {
        return Ok(json!({
            "alpha": v.alpha(),
            "empty": true,
            "dimension": null,
            "canonical": [],
            "smooth": null,
            "resolvable": null,
            "parts": [],
            "strata": [],
        }));
    };
    let verdict = v.resolution_verdict()?;
    let strata = v.enumerate_strata()?.iter().map(|s| stratum_json(&v, s)).collect::<Result<Vec<_>>>()?;
    Ok(json!({
        "alpha": v.alpha(),
        "empty": false,
        "dimension": v.dimension()?,
        "canonical": canonical,
        "smooth": v.is_smooth()?,
        "resolvable": verdict.resolvable,
        "parts": verdict
            .per_part
            .iter()
            .map(|p| json!({"root": p.root.vector, "gcd": p.gcd, "method": p.method.label()}))
            .collect::<Vec<_>>(),
        "witness": verdict.witness.as_ref().map(|w| json!({"root": w.root.vector, "gcd": w.gcd})),
        "strata": strata,
    }))
}

pub fn strata(t: &Target) -> Result<Value> {
    let job = Job::from_target(t)?;
    let v = job.variety()?;
    let strata = v.enumerate_strata()?.iter().map(|s| stratum_json(&v, s)).collect::<Result<Vec<_>>>()?;
    Ok(json!({"alpha": v.alpha(), "dimension": v.dimension()?, "strata": strata}))
}

fn leaf_json(l: &Leaf) -> Value {
    let d = &l.decomposition;
    json!({
        "imag": d.imag_parts.iter().map(|r| &r.vector).collect::<Vec<_>>(),
        "real": d.real_parts.iter().map(|r| json!({"mult": r.mult, "root": r.root.vector})).collect::<Vec<_>>(),
        "type": d.affine.to_string(),
        "delta": d.affine.delta,
        "weyl": d.affine.weyl_label(),
        "codim": l.stratum.codim,
    })
}

fn mode_name(mode: Mode) -> &'static str {
    match mode {
        Mode::Strict => "strict",
        Mode::Permissive => "permissive",
    }
}

/// The report plus an optional warning for standard error.
pub fn leaves(t: &Target, mode: Mode) -> Result<(Value, Option<String>)> {
    let job = Job::from_target(t)?;
    let v = job.variety()?;
    let leaves = codim2_leaves(&v, mode)?;
    let warning = if mode == Mode::Strict && modes_may_differ(&v) {
        let extra = permissive_only_leaves(&v)?;
        (!extra.is_empty()).then(|| {
            let listed: Vec<String> = extra
                .iter()
                .map(|l| {
                    let parts: Vec<String> =
                        l.decomposition.signature().iter().map(|(m, r)| format!("{m}x{r:?}")).collect();
                    format!("[{}] ({})", parts.join(" + "), l.decomposition.affine)
                })
                .collect();
            format!(
                "alpha is twice a vector with p = 2; permissive mode also finds {} leaf(s) with repeated parts: {}",
                extra.len(),
                listed.join("; ")
            )
        })
    } else {
        None
    };
    let value = json!({
        "alpha": v.alpha(),
        "mode": mode_name(mode),
        "leaves": leaves.iter().map(leaf_json).collect::<Vec<_>>(),
        "namikawa": namikawa_factors(&v, mode)?,
        "caveat": WEYL_CAVEAT,
    });
    Ok((value, warning))
}

pub fn char_verdict(n: i64, g: i64, group: Group) -> Result<Value> {
    let s = SurfaceVariety::new(n, g, group)?;
    let verdict = resolution_verdict_char(&s);
    let strata = match group {
        Group::GL => Some(
            strata_char(&s)?
                .iter()
                .map(|c| {
                    json!({
                        "nu": c.partition.iter().map(|b| [b.mult, b.rank]).collect::<Vec<_>>(),
                        "dim": c.dim,
                        "codim": c.codim,
                    })
                })
                .collect::<Vec<_>>(),
        ),
        Group::SL => None,
    };
    Ok(json!({
        "n": n,
        "g": g,
        "group": group.to_string(),
        "dimension": dimension_char(&s),
        "resolvable": verdict.resolvable,
        "method": verdict.method.label(),
        "singular_components": singular_components_char(&s),
        "strata": strata,
    }))
}
