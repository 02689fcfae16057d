use crate::render::{self, Cell, Table};
use crate::{Command, Format, Method};
use anyhow::{bail, Context, Result};
use dirichlet_rkhs::diagnostics::{
    almost_periodicity_probe, gershgorin_partition, sequence_report, space_equivalence_report,
};
use dirichlet_rkhs::embeddings::{embedding_sweep, random_polynomial_corpus};
use dirichlet_rkhs::interpolation::{finite_interpolant, min_norm_interpolant, DirichletBlaschke};
use dirichlet_rkhs::zeta_kernels::{eval_weighted_remainder, eval_weighted_zeta, WeightedZetaParams};
use dirichlet_rkhs::{
    gram_matrix, kernel_norm, kernel_value, smallest_eigenvalue, DirichletPolynomial, EvalConfig, HalfPlanePoint,
    PointSequence, SpaceId,
};
use num_complex::Complex64;
use serde::de::DeserializeOwned;
use serde_json::{json, Map, Value};
use std::path::Path;

fn cx(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn point(z: Complex64) -> Result<HalfPlanePoint> {
    Ok(HalfPlanePoint::from_complex(z)?)
}

/// `α` of the weighted zeta function behind a Dirichlet-series space.
fn zeta_alpha(space: &SpaceId) -> Result<f64> {
    match space {
        SpaceId::HardyDirichlet => Ok(0.0),
        SpaceId::WeightedDirichlet { alpha } => Ok(*alpha),
        other => Err(dirichlet_rkhs::Error::Domain(format!("needs h or h_alpha, got {other}")).into()),
    }
}

pub fn run(command: &Command, space: &SpaceId, cfg: &EvalConfig, format: Format) -> Result<String> {
    let (value, table) = match command {
        Command::Kernel { w, s } => kernel(space, *w, *s, cfg)?,
        Command::Gram { points } => gram(space, &read_json(points)?, cfg)?,
        Command::Diagnose { points, delta_min, carleson_max, gershgorin, equivalence } => {
            let seq: PointSequence = read_json(points)?;
            diagnose(space, &seq, *delta_min, *carleson_max, *gershgorin, *equivalence, cfg)?
        }
        Command::Interpolate { points, targets, method } => {
            let nodes: PointSequence = read_json(points)?;
            let raw: Vec<[f64; 2]> = read_json(targets)?;
            let targets: Vec<Complex64> = raw.iter().map(|&[re, im]| Complex64::new(re, im)).collect();
            interpolate(space, &nodes, &targets, *method, cfg)?
        }
        Command::Blaschke { points, at } => blaschke(&read_json(points)?, at)?,
        Command::Asymptotics { k_max } => asymptotics(space, *k_max, cfg)?,
        Command::Embedding { count, max_degree, seed, theta } => embedding(space, *count, *max_degree, *seed, theta)?,
        Command::Probe { s, t_max, target } => probe(space, *s, *t_max, *target, cfg)?,
    };
    Ok(match format {
        Format::Json => render::json(&value),
        Format::Csv => table.render(),
    })
}

type Output = (Value, Table);

fn kernel(space: &SpaceId, w: Complex64, s: Complex64, cfg: &EvalConfig) -> Result<Output> {
    let (wp, sp) = (point(w)?, point(s)?);
    let value = kernel_value(space, &wp, &sp, cfg)?;
    let mut table = Table::new(&["re", "im"]);
    table.push(vec![value.re.into(), value.im.into()]);
    let out = json!({
        "space": space.to_string(),
        "w": cx(w),
        "s": cx(s),
        "value": cx(value),
        "norm_w": kernel_norm(space, &wp, cfg)?,
        "norm_s": kernel_norm(space, &sp, cfg)?,
    });
    Ok((out, table))
}

fn gram(space: &SpaceId, seq: &PointSequence, cfg: &EvalConfig) -> Result<Output> {
    let g = gram_matrix(space, seq, cfg)?;
    let lambda = smallest_eigenvalue(&g)?;
    let n = g.dim();
    let mut table = Table::new(&["i", "j", "re", "im"]);
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            let z = g.entries()[(i, j)];
            table.push(vec![i.into(), j.into(), z.re.into(), z.im.into()]);
            row.push(cx(z));
        }
        rows.push(Value::Array(row));
    }
    let out = json!({
        "space": space.to_string(),
        "n": n,
        "entries": rows,
        "kernel_norms": g.kernel_norms(),
        "lambda_min": lambda,
    });
    Ok((out, table))
}

fn diagnose(
    space: &SpaceId,
    seq: &PointSequence,
    delta_min: f64,
    carleson_max: f64,
    gershgorin: Option<f64>,
    equivalence: bool,
    cfg: &EvalConfig,
) -> Result<Output> {
    let mut spaces = vec![*space];
    let counterpart = space.half_plane_counterpart();
    if counterpart != *space {
        spaces.push(counterpart);
    }
    let report = sequence_report(seq, &spaces, delta_min, carleson_max, cfg)?;
    let mut table = Table::new(&["quantity", "value"]);
    table.push(vec!["separation".into(), report.separation.into()]);
    table.push(vec!["carleson".into(), report.carleson.into()]);
    table.push(vec!["blaschke_sum".into(), report.blaschke_sum.into()]);
    table.push(vec!["verdict_h2".into(), Cell::Int(report.verdict_h2 as i64)]);
    for (name, m) in &report.boas {
        table.push(vec![format!("boas[{name}]").into(), (*m).into()]);
    }
    let mut out = match serde_json::to_value(&report)? {
        Value::Object(map) => map,
        _ => Map::new(),
    };
    out.insert("n".into(), json!(seq.len()));
    out.insert("space".into(), json!(space.to_string()));
    if let Some(m_target) = gershgorin {
        let parts = gershgorin_partition(space, seq, m_target, cfg)?;
        table.push(vec!["gershgorin_parts".into(), parts.len().into()]);
        out.insert("gershgorin".into(), json!({ "m_target": m_target, "parts": parts }));
    }
    if equivalence {
        let report = space_equivalence_report(seq, space.alpha(), cfg)?;
        table.push(vec!["m_dirichlet".into(), report.m_dirichlet.into()]);
        table.push(vec!["m_half_plane".into(), report.m_half_plane.into()]);
        out.insert("equivalence".into(), serde_json::to_value(&report)?);
    }
    Ok((Value::Object(out), table))
}

fn interpolate(
    space: &SpaceId,
    nodes: &PointSequence,
    targets: &[Complex64],
    method: Method,
    cfg: &EvalConfig,
) -> Result<Output> {
    let f = match method {
        Method::Finite => {
            if *space != SpaceId::HardyDirichlet {
                bail!(dirichlet_rkhs::Error::Domain(format!("the finite construction lives in h, not {space}")));
            }
            finite_interpolant(nodes, targets, cfg)?
        }
        Method::MinNorm => min_norm_interpolant(space, nodes, targets, cfg)?,
    };
    let mut table = Table::new(&["j", "sigma", "t", "coef_re", "coef_im", "residual"]);
    for (j, (p, (c, r))) in nodes.iter().zip(f.coefficients().iter().zip(&f.residual().per_node)).enumerate() {
        table.push(vec![j.into(), p.sigma().into(), p.t().into(), c.re.into(), c.im.into(), (*r).into()]);
    }
    Ok((serde_json::to_value(&f)?, table))
}

fn blaschke(nodes: &PointSequence, at: &[Complex64]) -> Result<Output> {
    let b = DirichletBlaschke::for_nodes(nodes.clone())?;
    let mut table = Table::new(&["j", "prime", "sigma", "t", "derivative_re", "derivative_im"]);
    let mut derivatives = Vec::with_capacity(nodes.len());
    for (j, (p, &prime)) in nodes.iter().zip(b.primes()).enumerate() {
        let d = b.derivative_at_node(j);
        table.push(vec![j.into(), prime.into(), p.sigma().into(), p.t().into(), d.re.into(), d.im.into()]);
        derivatives.push(cx(d));
    }
    let values: Vec<Value> = at.iter().map(|&s| json!({ "s": cx(s), "value": cx(b.eval(s)) })).collect();
    let out = json!({
        "nodes": nodes,
        "primes": b.primes(),
        "derivative_at_nodes": derivatives,
        "values": values,
    });
    Ok((out, table))
}

fn asymptotics(space: &SpaceId, k_max: u32, cfg: &EvalConfig) -> Result<Output> {
    if !(1..=12).contains(&k_max) {
        bail!(dirichlet_rkhs::Error::Domain(format!("k_max must lie in [1, 12], got {k_max}")));
    }
    let p = WeightedZetaParams::new(zeta_alpha(space)?)?;
    let mut table =
        Table::new(&["k", "sigma", "value_re", "value_im", "remainder_re", "remainder_im", "remainder_abs"]);
    let mut rows = Vec::new();
    let mut first = None;
    let mut worst: f64 = 0.0;
    for k in 1..=k_max {
        let z = Complex64::new(1.0 + 10f64.powi(-(k as i32)), 0.0);
        let v = eval_weighted_zeta(&p, z, cfg)?;
        let r = eval_weighted_remainder(&p, z, cfg)?;
        let base = *first.get_or_insert(r.norm());
        worst = worst.max(r.norm() / base);
        table.push(vec![
            (k as usize).into(),
            z.re.into(),
            v.re.into(),
            v.im.into(),
            r.re.into(),
            r.im.into(),
            r.norm().into(),
        ]);
        rows.push(json!({ "k": k, "s": cx(z), "value": cx(v), "remainder": cx(r), "remainder_abs": r.norm() }));
    }
    let out = json!({
        "alpha": p.alpha(),
        "rows": rows,
        "max_ratio_to_first": worst,
    });
    Ok((out, table))
}

fn embedding(space: &SpaceId, count: usize, max_degree: usize, seed: u64, thetas: &[f64]) -> Result<Output> {
    let alpha = match space {
        SpaceId::HardyDirichlet => None,
        SpaceId::WeightedDirichlet { alpha } => Some(*alpha),
        other => bail!(dirichlet_rkhs::Error::Domain(format!("embedding needs h or h_alpha, got {other}"))),
    };
    let mut corpus = random_polynomial_corpus(count, max_degree, seed)?;
    if alpha.is_some_and(|a| a < 0.0) {
        // the half-strip integral only converges without the constant term
        corpus = corpus
            .into_iter()
            .map(|f| {
                let mut c = f.coeffs().to_vec();
                c[0] = Complex64::new(0.0, 0.0);
                DirichletPolynomial::new(c)
            })
            .collect::<dirichlet_rkhs::Result<Vec<_>>>()?;
    }
    let kept: Vec<usize> = (0..corpus.len()).filter(|&i| !corpus[i].is_zero()).collect();
    let used: Vec<DirichletPolynomial> = kept.iter().map(|&i| corpus[i].clone()).collect();
    let rows = embedding_sweep(&used, thetas, alpha)?;
    let mut table = Table::new(&["theta", "index", "degree", "ratio"]);
    let mut json_rows = Vec::with_capacity(rows.len());
    let mut maxima = Vec::with_capacity(thetas.len());
    for (k, chunk) in rows.chunks(used.len().max(1)).enumerate() {
        let mut best: f64 = 0.0;
        for (row, &index) in chunk.iter().zip(&kept) {
            best = best.max(row.ratio);
            table.push(vec![row.theta.into(), index.into(), row.degree.into(), row.ratio.into()]);
            json_rows.push(json!({ "theta": row.theta, "index": index, "degree": row.degree, "ratio": row.ratio }));
        }
        maxima.push(json!({ "theta": thetas[k], "max_ratio": best }));
    }
    let out = json!({
        "space": space.to_string(),
        "count": count,
        "used": used.len(),
        "max_degree": max_degree,
        "seed": seed,
        "max_by_theta": maxima,
        "rows": json_rows,
    });
    Ok((out, table))
}

fn probe(space: &SpaceId, s: Complex64, t_max: f64, target: f64, cfg: &EvalConfig) -> Result<Output> {
    let sp = point(s)?;
    let out = almost_periodicity_probe(space, &sp, t_max, target, cfg)?;
    let mut table = Table::new(&[
        "found",
        "tau",
        "correlation",
        "pseudohyperbolic_distance",
        "best_tau",
        "best_correlation",
        "grid_step",
        "evaluations",
    ]);
    let (tau, corr, rho) = match out.hit {
        Some(h) => (h.tau, h.correlation, h.pseudohyperbolic_distance),
        None => (f64::NAN, f64::NAN, f64::NAN),
    };
    table.push(vec![
        Cell::Int(out.hit.is_some() as i64),
        tau.into(),
        corr.into(),
        rho.into(),
        out.best_tau.into(),
        out.best_correlation.into(),
        out.grid_step.into(),
        out.evaluations.into(),
    ]);
    let mut map = match serde_json::to_value(&out)? {
        Value::Object(map) => map,
        _ => Map::new(),
    };
    map.insert("space".into(), json!(space.to_string()));
    map.insert("s".into(), cx(s));
    map.insert("t_max".into(), json!(t_max));
    map.insert("target".into(), json!(target));
    Ok((Value::Object(map), table))
}
