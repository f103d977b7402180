//! The per-job commands: each resolves its inputs, runs the relevant
//! computations, and emits an ordered list of checks.

use lab_core::cohomology::{
    euler_check, hs_decomposition_check, t_dimensions, t_setup_twisted, CEComplex, Direction,
};
use lab_core::dist::{
    c_r, graded_polynomial_check, log_one_plus_b, mahler_dirac, mahler_norm,
    multiplicativity_check, nu_norm, principal_symbol, DistError, LogNorm, RadiusParam,
};
use lab_core::field_tower::{identity_embedding, make_embedding, NfElem};
use lab_core::lie::{base_change_q, LieAlgebra};
use lab_core::linalg::{self, Matrix};
use lab_core::ring::{format_q, qi, Field, Rationals, Q};
use serde_json::Value;

use crate::job::{
    effective_field_def, expect_algebra, expect_module, param_i64_list, param_q, param_q_list,
    param_str, param_u64, param_usize, resolve_algebra, resolve_field, resolve_module,
    resolve_series, AlgebraOutcome, CliError, JobInput, ModuleDef, ModuleOutcome,
};
use crate::report::{dims, flag, s, strings, Check};

/// Parameter keys each command accepts on the command line.
pub const VALIDATE_PARAMS: &[&str] = &["field"];
pub const COHOMOLOGY_PARAMS: &[&str] = &["field", "module", "dchi", "direction", "degrees"];
pub const TVECTORS_PARAMS: &[&str] = &["field", "dchi", "sigma", "t_dim"];
pub const NORMS_PARAMS: &[&str] = &["p", "a", "trunc", "logn", "dirac", "degree"];

// ---------------------------------------------------------------------------
// validate
// ---------------------------------------------------------------------------

pub fn cmd_validate(job: &JobInput) -> Result<Vec<Check>, CliError> {
    let field_def = effective_field_def(job)?;
    if field_def.is_none() && job.algebra.is_none() {
        return Err(CliError::new(
            "nothing to validate: provide a field, an algebra, or both",
        ));
    }
    let mut checks = Vec::new();

    if let Some(def) = &field_def {
        match resolve_field(def) {
            Ok(f) => {
                let mut c = Check::pass("field").with("degree", s(f.degree()));
                if def.galois {
                    let autos = f
                        .galois_automorphisms()
                        .map_err(|e| CliError(e.to_string()))?;
                    c = c.with("automorphisms", s(autos.len()));
                }
                checks.push(c);
            }
            Err(e) => checks.push(Check::outcome("field", false).with("error", s(e))),
        }
    }

    let mut algebra = None;
    if let Some(def) = &job.algebra {
        match resolve_algebra(def)? {
            AlgebraOutcome::Ok(alg, _) => {
                checks.push(
                    Check::pass("algebra")
                        .with("dim", s(alg.dim()))
                        .with("labels", strings(alg.labels().iter())),
                );
                algebra = Some(alg);
            }
            AlgebraOutcome::Invalid(msg) => {
                checks.push(Check::outcome("algebra", false).with("error", s(msg)));
            }
        }
    }

    if let Some(def) = &job.module {
        match &algebra {
            Some(alg) => match resolve_module(&Rationals, alg, def)? {
                ModuleOutcome::Ok(m) => {
                    checks.push(
                        Check::pass("module")
                            .with("kind", s(&def.kind))
                            .with("dim", s(m.dim())),
                    );
                }
                ModuleOutcome::Invalid(msg) => {
                    checks.push(Check::outcome("module", false).with("error", s(msg)));
                }
            },
            None => {
                return Err(CliError::new(
                    "a module can only be validated against an algebra",
                ))
            }
        }
    }

    Ok(checks)
}

// ---------------------------------------------------------------------------
// cohomology
// ---------------------------------------------------------------------------

/// Module selection for the cohomology command: an explicit module block
/// wins, then the module/dchi parameters, then the 1-dimensional trivial
/// module.
fn effective_module_def(job: &JobInput) -> Result<ModuleDef, CliError> {
    if let Some(def) = &job.module {
        return Ok(def.clone());
    }
    let kind = param_str(job, "module").unwrap_or("trivial");
    let values = match kind {
        "character" => Some(
            param_q_list(job, "dchi")?
                .ok_or_else(|| CliError::new("module=character needs dchi=v1,v2,..."))?
                .iter()
                .map(format_q)
                .collect(),
        ),
        _ => None,
    };
    Ok(ModuleDef {
        kind: kind.to_string(),
        dim: None,
        values,
        matrices: None,
    })
}

pub fn cmd_cohomology(job: &JobInput) -> Result<Vec<Check>, CliError> {
    let algebra_def = job
        .algebra
        .as_ref()
        .ok_or_else(|| CliError::new("cohomology needs an algebra (--catalog or a job file)"))?;
    let (alg_q, _) = expect_algebra(resolve_algebra(algebra_def)?)?;
    let module_def = effective_module_def(job)?;
    let direction = match param_str(job, "direction").unwrap_or("cochain") {
        "cochain" => Direction::Cochain,
        "chain" => Direction::Chain,
        other => {
            return Err(CliError(format!(
                "unknown direction '{other}' (expected chain or cochain)"
            )))
        }
    };
    let degrees = param_usize(job, "degrees")?.unwrap_or(alg_q.dim());

    match effective_field_def(job)? {
        None => cohomology_table(&Rationals, &alg_q, &module_def, direction, degrees),
        Some(def) => {
            let l = resolve_field(&def)?;
            let alg = base_change_q(&alg_q, &l);
            cohomology_table(&l, &alg, &module_def, direction, degrees)
        }
    }
}

fn cohomology_table<F: Field>(
    f: &F,
    alg: &LieAlgebra<F>,
    module_def: &ModuleDef,
    direction: Direction,
    degrees: usize,
) -> Result<Vec<Check>, CliError> {
    let module = expect_module(resolve_module(f, alg, module_def)?)?;
    let cx = CEComplex::new(alg, &module, direction);
    let n = alg.dim();

    let spaces: Vec<usize> = (0..=degrees).map(|q| cx.space_dim(q)).collect();
    let composes = (0..n).all(|q| {
        let (first, second) = match direction {
            Direction::Chain => (cx.differential(q + 1), cx.differential(q)),
            Direction::Cochain => (cx.differential(q), cx.differential(q + 1)),
        };
        linalg::is_zero_matrix(f, &linalg::mat_mul(f, second, first))
    });
    let dir_name = match direction {
        Direction::Chain => "chain",
        Direction::Cochain => "cochain",
    };
    let mut checks = vec![Check::outcome("complex", composes)
        .with("direction", s(dir_name))
        .with("module_dim", s(module.dim()))
        .with("spaces", dims(&spaces))];

    let table: Vec<usize> = (0..=degrees).map(|q| cx.cohomology(q).dim).collect();
    checks.push(Check::pass("dimensions").with("dims", dims(&table)));

    let euler = euler_check(&cx);
    checks.push(
        Check::outcome("euler", euler.equal)
            .with("from_spaces", s(euler.from_spaces))
            .with("from_dims", s(euler.from_dims)),
    );
    Ok(checks)
}

// ---------------------------------------------------------------------------
// tvectors
// ---------------------------------------------------------------------------

pub fn cmd_tvectors(job: &JobInput) -> Result<Vec<Check>, CliError> {
    let field_def = effective_field_def(job)?.ok_or_else(|| {
        CliError::new("tvectors needs a base field (param field=NAME or a field block)")
    })?;
    let l = resolve_field(&field_def)?;
    let algebra_def = job
        .algebra
        .as_ref()
        .ok_or_else(|| CliError::new("tvectors needs an algebra (--catalog or a job file)"))?;
    let (alg_q, cat_t_dim) = expect_algebra(resolve_algebra(algebra_def)?)?;
    let t_dim = match param_usize(job, "t_dim")? {
        Some(t) => t,
        None => cat_t_dim.ok_or_else(|| {
            CliError::new("this algebra carries no torus dimension; pass t_dim=...")
        })?,
    };
    let b = base_change_q(&alg_q, &l);

    let (k, emb) = match &job.target_field {
        None => (l.clone(), identity_embedding(&l)),
        Some(def) => {
            let k = resolve_field(def)?;
            let raw = job.embedding.as_ref().ok_or_else(|| {
                CliError::new(
                    "target_field needs an embedding (power coordinates of the base generator)",
                )
            })?;
            if raw.len() != k.degree() {
                return Err(CliError(format!(
                    "embedding has {} coordinates, expected {}",
                    raw.len(),
                    k.degree()
                )));
            }
            let coords = raw
                .iter()
                .map(|c| {
                    lab_core::ring::parse_q(c)
                        .ok_or_else(|| CliError(format!("embedding: '{c}' is not a rational")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let emb =
                make_embedding(&l, &k, k.elem(coords)).map_err(|e| CliError(e.to_string()))?;
            (k, emb)
        }
    };

    let n = l.degree();
    let d = b.dim();
    let chi_q = match param_q_list(job, "dchi")? {
        Some(v) => {
            if v.len() != n * d {
                return Err(CliError(format!(
                    "dchi has {} values, expected {} (algebra dim {d} times field degree {n})",
                    v.len(),
                    n * d
                )));
            }
            v
        }
        None => vec![qi(0); n * d],
    };
    let smooth = chi_q.iter().all(|c| *c == qi(0));
    let chi_values: Vec<NfElem> = chi_q.iter().map(|c| k.from_q(c)).collect();

    let twist: Option<Matrix<Q>> = match param_usize(job, "sigma")? {
        None => None,
        Some(idx) => {
            let autos = l
                .galois_automorphisms()
                .map_err(|e| CliError(e.to_string()))?;
            if idx >= autos.len() {
                return Err(CliError(format!(
                    "sigma={idx} out of range; the field has {} automorphisms",
                    autos.len()
                )));
            }
            Some(autos[idx].clone())
        }
    };

    let setup = t_setup_twisted(&b, t_dim, &k, &emb, &chi_values, twist.as_ref())
        .map_err(|e| CliError(e.to_string()))?;

    let mut checks = Vec::new();
    let kernel_ok = setup.b0.dim() == (n - 1) * d && setup.b0.is_ideal;
    checks.push(
        Check::outcome("kernel_ideal", kernel_ok)
            .with("ambient_dim", s(n * d))
            .with("dim", s(setup.b0.dim()))
            .with("torus_dim", s(setup.t_dim))
            .with("ideal", flag(setup.b0.is_ideal)),
    );

    let table = t_dimensions(&setup).map_err(|e| CliError(e.to_string()))?;
    checks.push(Check::pass("t_dimensions").with("dims", dims(&table)));

    let hs = hs_decomposition_check(&setup).map_err(|e| CliError(e.to_string()))?;
    checks.push(
        Check::outcome("two_path_decomposition", hs.equal)
            .with("direct", dims(&hs.direct))
            .with("invariant_dims", dims(&hs.invariant_dims))
            .with("assembled", dims(&hs.assembled)),
    );

    let bound = (n - 1) * d;
    let module = lab_core::lie::one_dim_module(&setup.b0.induced, &setup.chi)
        .map_err(|e| CliError(e.to_string()))?;
    let cx = CEComplex::new(&setup.b0.induced, &module, Direction::Cochain);
    let above: Vec<usize> = (1..=2).map(|j| cx.cohomology(bound + j).dim).collect();
    checks.push(
        Check::outcome("vanishing_above_bound", above.iter().all(|&d| d == 0))
            .with("bound", s(bound))
            .with("above", dims(&above)),
    );

    if smooth && setup.t_dim >= 1 {
        let t1 = table.get(1).copied().unwrap_or(0);
        checks.push(
            Check::outcome("smooth_lower_bound", t1 >= setup.t_dim)
                .with("t1", s(t1))
                .with("torus_dim", s(setup.t_dim)),
        );
    } else if !smooth {
        checks.push(Check::skipped(
            "smooth_lower_bound",
            "the character is not smooth",
        ));
    } else {
        checks.push(Check::skipped(
            "smooth_lower_bound",
            "the kernel ideal has no torus part",
        ));
    }

    Ok(checks)
}

// ---------------------------------------------------------------------------
// norms
// ---------------------------------------------------------------------------

fn require_param(rp: &Option<RadiusParam>) -> Result<&RadiusParam, CliError> {
    rp.as_ref()
        .ok_or_else(|| CliError::new("this check needs the radius parameters p and a"))
}

fn require_algebra(job: &JobInput) -> Result<LieAlgebra<Rationals>, CliError> {
    let def = job
        .algebra
        .as_ref()
        .ok_or_else(|| CliError::new("this check needs an algebra (--catalog or a job file)"))?;
    Ok(expect_algebra(resolve_algebra(def)?)?.0)
}

fn symbol_terms(terms: &[(Vec<u32>, Q)]) -> Value {
    Value::Array(
        terms
            .iter()
            .map(|(beta, c)| {
                let mut obj = serde_json::Map::new();
                obj.insert("exponents".into(), strings(beta.iter()));
                obj.insert("coeff".into(), s(format_q(c)));
                Value::Object(obj)
            })
            .collect(),
    )
}

pub fn cmd_norms(job: &JobInput) -> Result<Vec<Check>, CliError> {
    let rp = match (param_u64(job, "p")?, param_q(job, "a")?) {
        (Some(p), Some(a)) => Some(RadiusParam::new(p, a).map_err(|e| CliError(e.to_string()))?),
        (None, None) => None,
        _ => return Err(CliError::new("p and a must be given together")),
    };
    let trunc = param_usize(job, "trunc")?.unwrap_or(8);
    let mut checks = Vec::new();

    if let Some(rp) = &rp {
        checks.push(
            Check::pass("radius_constant")
                .with("log_c_r", s(c_r(rp).render()))
                .with("kappa", s(rp.kappa()))
                .with("small_radius", flag(rp.small_radius())),
        );
    }

    if let Some(n) = param_usize(job, "logn")? {
        let rp = require_param(&rp)?;
        if n < 2 {
            return Err(CliError::new("logn must be at least 2"));
        }
        let rep = log_one_plus_b(rp, n);
        let target = c_r(rp);
        checks.push(
            Check::outcome("log_series", rep.norm == target)
                .with("norm", s(rep.norm.render()))
                .with("log_c_r", s(target.render()))
                .with("stable", flag(rep.stable)),
        );
    }

    if let Some(xs) = param_i64_list(job, "dirac")? {
        let rp = require_param(&rp)?;
        let series = mahler_dirac(&xs, trunc);
        let norm = mahler_norm(&series, rp);
        checks.push(
            Check::outcome("dirac", norm == LogNorm::Finite(qi(0)))
                .with("point", strings(xs.iter()))
                .with("norm", s(norm.render()))
                .with("exact", flag(series.is_exact())),
        );
    }

    if let Some(series_def) = &job.series {
        let alg = require_algebra(job)?;
        let rp = require_param(&rp)?;
        let a = resolve_series(&alg, series_def, trunc)?;
        checks.push(
            Check::pass("nu_norm")
                .with("norm", s(nu_norm(&a, rp).render()))
                .with("exact", flag(a.is_exact())),
        );
        checks.push(
            Check::pass("principal_symbol").with("terms", symbol_terms(&principal_symbol(&a, rp))),
        );
        if let Some(def2) = &job.series2 {
            let b = resolve_series(&alg, def2, trunc)?;
            match multiplicativity_check(&a, &b, rp) {
                Ok(rep) => checks.push(
                    Check::outcome("multiplicativity", rep.pass)
                        .with("product_norm", s(rep.product_norm.render()))
                        .with("factor_norm_sum", s(rep.factor_norm_sum.render())),
                ),
                Err(DistError::PreconditionUnmet(reason)) => {
                    checks.push(Check::skipped("multiplicativity", &reason));
                }
                Err(e) => return Err(CliError(e.to_string())),
            }
        }
    } else if job.series2.is_some() {
        return Err(CliError::new("series2 without series"));
    }

    if let Some(d_max) = param_u64(job, "degree")? {
        let alg = require_algebra(job)?;
        let rp = require_param(&rp)?;
        match graded_polynomial_check(&alg, rp, d_max as u32) {
            Ok(rep) => {
                let defects = Value::Array(
                    rep.defects
                        .iter()
                        .map(|(i, j, norm)| Value::Array(vec![s(i), s(j), s(norm.render())]))
                        .collect(),
                );
                checks.push(
                    Check::outcome("graded_polynomial", rep.pass)
                        .with("pairs_checked", s(rep.pairs_checked))
                        .with("defects", defects),
                );
            }
            Err(DistError::PreconditionUnmet(reason)) => {
                checks.push(Check::skipped("graded_polynomial", &reason));
            }
            Err(e) => return Err(CliError(e.to_string())),
        }
    }

    if checks.is_empty() {
        return Err(CliError::new(
            "nothing to compute: give p and a, and optionally logn, dirac, a series, or degree",
        ));
    }
    Ok(checks)
}
