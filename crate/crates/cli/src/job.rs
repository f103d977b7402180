//! Job ingestion: the JSON job document, parameter overrides, and the
//! resolution of definitions into core objects.
//!
//! A job is one JSON document. Rationals are written as strings
//! ("num/den" or "num"), field polynomials as integer coefficient lists
//! (constant term first), structure constants as sparse triples
//! [i, j, k, "c"] with i < j, the (j, i, k) entries filled in by
//! antisymmetry.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::Path;

use lab_core::field_tower::{validate_field, FieldSpec, NumberField};
use lab_core::lie::{catalog, one_dim_module, DifferentialCharacter, LieAlgebra, LieModule};
use lab_core::linalg::Matrix;
use lab_core::ring::{parse_q, qi, Field, Q};

use serde::{Deserialize, Serialize};

/// Anything that prevents a job from running: unreadable files, malformed
/// documents, unknown names, parameters out of range. Mapped to exit
/// code 2, as opposed to checks that run and fail.
#[derive(Debug)]
pub struct CliError(pub String);

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl CliError {
    pub fn new(msg: impl Into<String>) -> Self {
        CliError(msg.into())
    }
}

// ---------------------------------------------------------------------------
// The job document
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobInput {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldDef>,
    /// Larger field the kernel construction tensors with; defaults to the
    /// base field itself.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target_field: Option<FieldDef>,
    /// Power coordinates in the target field of the base field generator.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub embedding: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub algebra: Option<AlgebraDef>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub module: Option<ModuleDef>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub series: Option<SeriesDef>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub series2: Option<SeriesDef>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldDef {
    /// Integer coefficients of the defining polynomial, constant first,
    /// monic.
    pub poly: Vec<i64>,
    #[serde(default)]
    pub galois: bool,
    /// Optional designated basis: one power-coordinate vector per basis
    /// element.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<Vec<String>>>,
    /// Optional automorphisms, each given by the power coordinates of the
    /// image of the generator.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub automorphisms: Option<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDef {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub catalog: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub constants: Vec<(usize, usize, usize, String)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    /// For split solvable algebras ordered torus first: the torus dimension.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_dim: Option<usize>,
}

impl AlgebraDef {
    pub fn from_catalog(name: &str) -> Self {
        AlgebraDef {
            catalog: Some(name.to_string()),
            ..AlgebraDef::default()
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDef {
    /// trivial | adjoint | character | matrices
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    /// Character values on the algebra basis.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<String>>,
    /// Explicit action: one row-major matrix per algebra basis element.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrices: Option<Vec<Vec<Vec<String>>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesDef {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trunc: Option<usize>,
    pub terms: Vec<TermDef>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDef {
    pub exponents: Vec<u32>,
    pub coeff: String,
}

/// Every parameter key any command understands. A job file may carry the
/// whole union so one file can serve several commands; each command reads
/// only its own keys.
pub const ALL_PARAM_KEYS: &[&str] = &[
    "field",
    "module",
    "dchi",
    "direction",
    "degrees",
    "sigma",
    "t_dim",
    "p",
    "a",
    "trunc",
    "logn",
    "dirac",
    "degree",
];

/// Reads the job file if given, then applies the --catalog and --param
/// overrides. File parameters may be any known key; --param keys must
/// belong to the invoked command.
pub fn assemble(
    input: Option<&Path>,
    catalog_name: Option<&str>,
    params: &[String],
    allowed: &[&str],
) -> Result<JobInput, CliError> {
    let mut job: JobInput = match input {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError(format!("cannot read {}: {e}", path.display())))?;
            serde_json::from_str(&text)
                .map_err(|e| CliError(format!("cannot parse {}: {e}", path.display())))?
        }
        None => JobInput::default(),
    };
    for key in job.params.keys() {
        if !ALL_PARAM_KEYS.contains(&key.as_str()) {
            return Err(CliError(format!(
                "unknown parameter '{key}' in the job file (known keys: {})",
                ALL_PARAM_KEYS.join(", ")
            )));
        }
    }
    if let Some(name) = catalog_name {
        job.algebra = Some(AlgebraDef::from_catalog(name));
    }
    for pair in params {
        let (k, v) = pair
            .split_once('=')
            .ok_or_else(|| CliError(format!("malformed parameter '{pair}', expected key=value")))?;
        if !allowed.contains(&k) {
            return Err(CliError(format!(
                "unknown parameter '{k}' (expected one of: {})",
                allowed.join(", ")
            )));
        }
        job.params.insert(k.to_string(), v.to_string());
    }
    Ok(job)
}

// ---------------------------------------------------------------------------
// Parameter accessors
// ---------------------------------------------------------------------------

pub fn param_str<'a>(job: &'a JobInput, key: &str) -> Option<&'a str> {
    job.params.get(key).map(|s| s.as_str())
}

pub fn param_usize(job: &JobInput, key: &str) -> Result<Option<usize>, CliError> {
    match param_str(job, key) {
        None => Ok(None),
        Some(v) => v
            .parse()
            .map(Some)
            .map_err(|_| CliError(format!("parameter {key}={v} is not a nonnegative integer"))),
    }
}

pub fn param_u64(job: &JobInput, key: &str) -> Result<Option<u64>, CliError> {
    match param_str(job, key) {
        None => Ok(None),
        Some(v) => v
            .parse()
            .map(Some)
            .map_err(|_| CliError(format!("parameter {key}={v} is not a nonnegative integer"))),
    }
}

pub fn param_q(job: &JobInput, key: &str) -> Result<Option<Q>, CliError> {
    match param_str(job, key) {
        None => Ok(None),
        Some(v) => parse_q(v)
            .map(Some)
            .ok_or_else(|| CliError(format!("parameter {key}={v} is not a rational"))),
    }
}

/// Comma-separated rational list.
pub fn param_q_list(job: &JobInput, key: &str) -> Result<Option<Vec<Q>>, CliError> {
    match param_str(job, key) {
        None => Ok(None),
        Some(v) => v
            .split(',')
            .map(|part| {
                parse_q(part.trim())
                    .ok_or_else(|| CliError(format!("parameter {key}: '{part}' is not a rational")))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Some),
    }
}

/// Comma-separated integer list.
pub fn param_i64_list(job: &JobInput, key: &str) -> Result<Option<Vec<i64>>, CliError> {
    match param_str(job, key) {
        None => Ok(None),
        Some(v) => v
            .split(',')
            .map(|part| {
                part.trim()
                    .parse()
                    .map_err(|_| CliError(format!("parameter {key}: '{part}' is not an integer")))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Some),
    }
}

// ---------------------------------------------------------------------------
// Field resolution
// ---------------------------------------------------------------------------

/// Built-in field shorthands for --param field=NAME.
pub fn named_field_def(name: &str) -> Result<FieldDef, CliError> {
    let poly: Vec<i64> = match name {
        "q" => vec![0, 1],
        "qsqrt2" => vec![-2, 0, 1],
        "qi" => vec![1, 0, 1],
        "cyclic3" => vec![1, -2, -1, 1],
        _ => {
            return Err(CliError(format!(
                "unknown field name '{name}' (expected q, qsqrt2, qi, or cyclic3)"
            )))
        }
    };
    Ok(FieldDef {
        poly,
        galois: true,
        basis: None,
        automorphisms: None,
    })
}

/// The field in force for a job: the field parameter wins over the job
/// document block.
pub fn effective_field_def(job: &JobInput) -> Result<Option<FieldDef>, CliError> {
    match param_str(job, "field") {
        Some(name) => named_field_def(name).map(Some),
        None => Ok(job.field.clone()),
    }
}

fn parse_q_vec(raw: &[String], len: usize, what: &str) -> Result<Vec<Q>, CliError> {
    if raw.len() != len {
        return Err(CliError(format!(
            "{what} has {} entries, expected {len}",
            raw.len()
        )));
    }
    raw.iter()
        .map(|part| {
            parse_q(part).ok_or_else(|| CliError(format!("{what}: '{part}' is not a rational")))
        })
        .collect()
}

pub fn resolve_field(def: &FieldDef) -> Result<NumberField, CliError> {
    let n = def.poly.len().saturating_sub(1);
    if n == 0 {
        return Err(CliError::new("field polynomial must have positive degree"));
    }
    let mut spec = FieldSpec::from_int_poly(&def.poly);
    if let Some(vectors) = &def.basis {
        if vectors.len() != n {
            return Err(CliError(format!(
                "designated basis has {} vectors, expected {n}",
                vectors.len()
            )));
        }
        let cols = vectors
            .iter()
            .map(|v| parse_q_vec(v, n, "basis vector"))
            .collect::<Result<Vec<_>, _>>()?;
        spec.basis = Some(Matrix::from_cols(n, cols));
    }
    if let Some(images) = &def.automorphisms {
        // power coordinates of sigma(theta) determine the matrix: column j
        // holds sigma(theta)^j
        let plain = validate_field(&FieldSpec {
            galois: false,
            automorphisms: None,
            ..spec.clone()
        })
        .map_err(|e| CliError(format!("field invalid: {e}")))?;
        let mut mats = Vec::with_capacity(images.len());
        for im in images {
            let img = plain.elem(parse_q_vec(im, n, "automorphism image")?);
            let mut cols = Vec::with_capacity(n);
            let mut pow = plain.from_q(&qi(1));
            for _ in 0..n {
                cols.push(pow.0.clone());
                pow = plain.mul(&pow, &img);
            }
            mats.push(Matrix::from_cols(n, cols));
        }
        spec.automorphisms = Some(mats);
    }
    spec.galois = def.galois;
    validate_field(&spec).map_err(|e| CliError(format!("field invalid: {e}")))
}

// ---------------------------------------------------------------------------
// Algebra and module resolution
// ---------------------------------------------------------------------------

/// An algebra definition either resolves, or parses but violates the Lie
/// axioms. The latter is a reportable validation failure rather than an
/// input error.
pub enum AlgebraOutcome {
    Ok(LieAlgebra<lab_core::ring::Rationals>, Option<usize>),
    Invalid(String),
}

pub fn resolve_algebra(def: &AlgebraDef) -> Result<AlgebraOutcome, CliError> {
    if let Some(name) = &def.catalog {
        let entry = catalog(name).map_err(|e| CliError(e.to_string()))?;
        let t_dim = def.t_dim.or(entry.t_dim);
        return Ok(AlgebraOutcome::Ok(entry.algebra, t_dim));
    }
    let dim = def
        .dim
        .ok_or_else(|| CliError::new("algebra needs either a catalog name or a dim"))?;
    let labels = match &def.labels {
        Some(l) => {
            if l.len() != dim {
                return Err(CliError(format!(
                    "algebra has {} labels for dimension {dim}",
                    l.len()
                )));
            }
            l.clone()
        }
        None => (1..=dim).map(|i| format!("x{i}")).collect(),
    };
    let mut triples = Vec::with_capacity(def.constants.len());
    for (i, j, k, c) in &def.constants {
        if *i >= *j || *j >= dim || *k >= dim {
            return Err(CliError(format!(
                "constant entry ({i}, {j}, {k}) is not upper-triangular within dimension {dim}"
            )));
        }
        let coeff = parse_q(c).ok_or_else(|| {
            CliError(format!(
                "constant entry ({i}, {j}, {k}): '{c}' is not a rational"
            ))
        })?;
        triples.push((*i, *j, *k, coeff));
    }
    match LieAlgebra::from_sparse(lab_core::ring::Rationals, labels, &triples) {
        Ok(alg) => Ok(AlgebraOutcome::Ok(alg, def.t_dim)),
        Err(e) => Ok(AlgebraOutcome::Invalid(e.to_string())),
    }
}

pub fn expect_algebra(
    outcome: AlgebraOutcome,
) -> Result<(LieAlgebra<lab_core::ring::Rationals>, Option<usize>), CliError> {
    match outcome {
        AlgebraOutcome::Ok(alg, t) => Ok((alg, t)),
        AlgebraOutcome::Invalid(msg) => Err(CliError(format!("algebra invalid: {msg}"))),
    }
}

pub enum ModuleOutcome<F: Field> {
    Ok(LieModule<F>),
    Invalid(String),
}

pub fn resolve_module<F: Field>(
    f: &F,
    alg: &LieAlgebra<F>,
    def: &ModuleDef,
) -> Result<ModuleOutcome<F>, CliError> {
    match def.kind.as_str() {
        "trivial" => Ok(ModuleOutcome::Ok(LieModule::trivial(
            alg,
            def.dim.unwrap_or(1),
        ))),
        "adjoint" => Ok(ModuleOutcome::Ok(LieModule::adjoint(alg))),
        "character" => {
            let raw = def
                .values
                .as_ref()
                .ok_or_else(|| CliError::new("character module needs values"))?;
            let values = parse_q_vec(raw, alg.dim(), "character values")?
                .iter()
                .map(|c| f.from_q(c))
                .collect();
            let chi = DifferentialCharacter { values };
            match one_dim_module(alg, &chi) {
                Ok(m) => Ok(ModuleOutcome::Ok(m)),
                Err(e) => Ok(ModuleOutcome::Invalid(e.to_string())),
            }
        }
        "matrices" => {
            let mats = def
                .matrices
                .as_ref()
                .ok_or_else(|| CliError::new("matrices module needs matrices"))?;
            if mats.len() != alg.dim() {
                return Err(CliError(format!(
                    "module gives {} matrices for algebra dimension {}",
                    mats.len(),
                    alg.dim()
                )));
            }
            let m = mats
                .first()
                .map(|rows| rows.len())
                .ok_or_else(|| CliError::new("matrices module must act on something"))?;
            let mut action = Vec::with_capacity(mats.len());
            for rows in mats {
                if rows.len() != m {
                    return Err(CliError::new("module matrices have mismatched sizes"));
                }
                let parsed = rows
                    .iter()
                    .map(|r| {
                        parse_q_vec(r, m, "module matrix row")
                            .map(|row| row.iter().map(|c| f.from_q(c)).collect::<Vec<_>>())
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                action.push(Matrix::from_rows(parsed));
            }
            match LieModule::new(alg, action) {
                Ok(m) => Ok(ModuleOutcome::Ok(m)),
                Err(e) => Ok(ModuleOutcome::Invalid(e.to_string())),
            }
        }
        other => Err(CliError(format!(
            "unknown module kind '{other}' (expected trivial, adjoint, character, or matrices)"
        ))),
    }
}

pub fn expect_module<F: Field>(outcome: ModuleOutcome<F>) -> Result<LieModule<F>, CliError> {
    match outcome {
        ModuleOutcome::Ok(m) => Ok(m),
        ModuleOutcome::Invalid(msg) => Err(CliError(format!("module invalid: {msg}"))),
    }
}

// ---------------------------------------------------------------------------
// Series resolution
// ---------------------------------------------------------------------------

pub fn resolve_series(
    alg: &LieAlgebra<lab_core::ring::Rationals>,
    def: &SeriesDef,
    default_trunc: usize,
) -> Result<lab_core::dist::TruncatedPBWSeries, CliError> {
    let trunc = def.trunc.unwrap_or(default_trunc);
    if trunc == 0 {
        return Err(CliError::new("series truncation degree must be positive"));
    }
    let mut terms = Vec::with_capacity(def.terms.len());
    for t in &def.terms {
        if t.exponents.len() != alg.dim() {
            return Err(CliError(format!(
                "series term has {} exponents for algebra dimension {}",
                t.exponents.len(),
                alg.dim()
            )));
        }
        let c = parse_q(&t.coeff).ok_or_else(|| {
            CliError(format!(
                "series coefficient '{}' is not a rational",
                t.coeff
            ))
        })?;
        terms.push((t.exponents.clone(), c));
    }
    Ok(lab_core::dist::TruncatedPBWSeries::from_terms(
        alg, trunc, terms,
    ))
}
