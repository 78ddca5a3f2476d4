//! Verdict grids in grid order, as CSV or Markdown.

use anyhow::{bail, Result};

use qsr_core::charvar::{char_as_quiver, dimension_char, resolution_verdict_char, Group, SurfaceVariety};
use qsr_core::corpus::{affine_delta, builtin};
use qsr_core::variety::{ResolutionVerdict, VarietyDescriptor};
use qsr_core::ParamSet;

use crate::{GridFormat, Grid};

const AFFINE_QUIVERS: [&str; 3] = ["affa1", "affa2", "affd4"];

struct Sheet {
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

fn methods(v: &ResolutionVerdict) -> String {
    let mut labels: Vec<&str> = Vec::new();
    for p in &v.per_part {
        if !labels.contains(&p.method.label()) {
            labels.push(p.method.label());
        }
    }
    labels.join("+")
}

fn quiver_row(v: &VarietyDescriptor) -> Result<[String; 4]> {
    let verdict = v.resolution_verdict()?;
    Ok([
        v.dimension()?.to_string(),
        v.is_smooth()?.to_string(),
        verdict.resolvable.to_string(),
        methods(&verdict),
    ])
}

fn check_bounds(nmax: i64, kmax: i64) -> Result<()> {
    if nmax < 1 || kmax < 1 {
        bail!("grid bounds must be at least 1, got nmax={nmax}, kmax={kmax}");
    }
    Ok(())
}

fn char_quiver_grid(nmax: i64, dmax: i64) -> Result<Sheet> {
    let mut rows = Vec::new();
    for n in 1..=nmax {
        for d in 1..=dmax {
            let [dim, smooth, res, method] = quiver_row(&char_as_quiver(n, d)?)?;
            rows.push(vec![n.to_string(), d.to_string(), dim, smooth, res, method]);
        }
    }
    Ok(Sheet { header: vec!["n", "d", "dimension", "smooth", "resolvable", "method"], rows })
}

fn char_group_grid(nmax: i64, gmax: i64, group: Group) -> Result<Sheet> {
    let mut rows = Vec::new();
    for n in 1..=nmax {
        for g in 1..=gmax {
            let s = SurfaceVariety::new(n, g, group)?;
            let verdict = resolution_verdict_char(&s);
            rows.push(vec![
                n.to_string(),
                g.to_string(),
                group.to_string(),
                dimension_char(&s).to_string(),
                verdict.resolvable.to_string(),
                verdict.method.label().to_string(),
            ]);
        }
    }
    Ok(Sheet { header: vec!["n", "g", "group", "dimension", "resolvable", "method"], rows })
}

fn affine_grid(mmax: i64) -> Result<Sheet> {
    let mut rows = Vec::new();
    for name in AFFINE_QUIVERS {
        let q = builtin(name)?;
        let delta = affine_delta(name).expect("affine corpus quivers have a null root");
        for m in 1..=mmax {
            let alpha = delta.scaled(m);
            let v = VarietyDescriptor::new(q.clone(), alpha.clone(), ParamSet::zero(q.vertex_count()))?;
            let [dim, smooth, res, method] = quiver_row(&v)?;
            rows.push(vec![name.to_string(), m.to_string(), alpha.to_string(), dim, smooth, res, method]);
        }
    }
    Ok(Sheet { header: vec!["quiver", "m", "alpha", "dimension", "smooth", "resolvable", "method"], rows })
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

impl Sheet {
    fn render(&self, format: GridFormat) -> String {
        let mut out = String::new();
        match format {
            GridFormat::Csv => {
                out.push_str(&self.header.join(","));
                out.push('\n');
                for row in &self.rows {
                    out.push_str(&row.iter().map(|c| csv_field(c)).collect::<Vec<_>>().join(","));
                    out.push('\n');
                }
            }
            GridFormat::Markdown => {
                out.push_str(&format!("| {} |\n", self.header.join(" | ")));
                out.push_str(&format!("|{}\n", "---|".repeat(self.header.len())));
                for row in &self.rows {
                    out.push_str(&format!("| {} |\n", row.join(" | ")));
                }
            }
        }
        out
    }
}

pub fn sweep(grid: Grid, nmax: i64, kmax: i64, format: GridFormat) -> Result<String> {
    check_bounds(nmax, kmax)?;
    let sheet = match grid {
        Grid::Char => char_quiver_grid(nmax, kmax)?,
        Grid::CharSl => char_group_grid(nmax, kmax, Group::SL)?,
        Grid::CharGl => char_group_grid(nmax, kmax, Group::GL)?,
        Grid::Affine => affine_grid(kmax)?,
    };
    Ok(sheet.render(format))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_quotes_vectors() {
        assert_eq!(csv_field("1,1"), "\"1,1\"");
        assert_eq!(csv_field("true"), "true");
    }

    #[test]
    fn char_grid_shape() {
        let out = sweep(Grid::Char, 2, 2, GridFormat::Csv).unwrap();
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines.len(), 5);
        assert_eq!(lines[0], "n,d,dimension,smooth,resolvable,method");
    }

    #[test]
    fn markdown_has_separator() {
        let out = sweep(Grid::CharSl, 1, 1, GridFormat::Markdown).unwrap();
        assert_eq!(out.lines().nth(1), Some("|---|---|---|---|---|---|"));
    }

    #[test]
    fn rejects_empty_grid() {
        assert!(sweep(Grid::Affine, 1, 0, GridFormat::Csv).is_err());
    }
}
