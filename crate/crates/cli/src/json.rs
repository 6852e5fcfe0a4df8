//! Single-file JSON formats for matrices, groups, representations, tori,
//! cocycles, gauges and extension bundles.
//!
//! Scalars travel as strings in the text form `Display`/`FromStr` share, so
//! an emitted file re-parses to a structurally equal value on either backend.
//! An optional `"backend"` field on each top-level artifact records which
//! scalar type wrote it; readers use it to pick the parse type and to reject
//! mixed-backend invocations.

use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use schottky_core::cohomology::Cocycle;
use schottky_core::group::{GroupKind, GroupShape, GroupSpec};
use schottky_core::linalg::Matrix;
use schottky_core::rep::Representation;
use schottky_core::scalar::{Backend, NumericError, Scalar};
use schottky_core::schottky::{SchottkyGauge, TorusData};

use crate::error::CliError;

/// Array-of-arrays of scalar strings, row major.
pub type MatrixJson = Vec<Vec<String>>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupJson {
    pub kind: String,
    pub g: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub period: Option<MatrixJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RepJson {
    pub group: GroupJson,
    pub images: Vec<MatrixJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub backend: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TorusJson {
    pub g: usize,
    #[serde(rename = "Z")]
    pub z: MatrixJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub backend: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CocycleJson {
    pub coefficients: RepJson,
    pub values: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub backend: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaugeJson {
    pub coefficients: Vec<MatrixJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub backend: Option<String>,
}

/// A short exact sequence bundle as emitted by `ext-build` and `peel` and
/// consumed by `ext-extract`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtensionJson {
    pub total: RepJson,
    pub sub: RepJson,
    pub quotient: RepJson,
    pub inclusion: MatrixJson,
    pub projection: MatrixJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub backend: Option<String>,
}

/// One character-tensor-unipotent summand of a flat sum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComponentJson {
    pub character: RepJson,
    pub unipotent: RepJson,
}

pub fn matrix_to_json<S: Scalar>(m: &Matrix<S>) -> MatrixJson {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m[(i, j)].to_string()).collect())
        .collect()
}

pub fn matrix_from_json<S>(j: &MatrixJson) -> Result<Matrix<S>, CliError>
where
    S: Scalar + FromStr<Err = NumericError>,
{
    let rows = j
        .iter()
        .map(|row| {
            row.iter()
                .map(|s| s.parse::<S>().map_err(CliError::from))
                .collect::<Result<Vec<S>, CliError>>()
        })
        .collect::<Result<Vec<Vec<S>>, CliError>>()?;
    Matrix::from_rows(rows).map_err(|_| CliError::Parse("ragged matrix rows".into()))
}

pub fn vector_to_json<S: Scalar>(v: &[S]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

pub fn vector_from_json<S>(j: &[String]) -> Result<Vec<S>, CliError>
where
    S: Scalar + FromStr<Err = NumericError>,
{
    j.iter()
        .map(|s| s.parse::<S>().map_err(CliError::from))
        .collect()
}

pub fn group_to_json<S: Scalar>(g: &GroupSpec<S>) -> GroupJson {
    GroupJson {
        kind: g.kind().to_string(),
        g: g.rank(),
        period: g.period().map(matrix_to_json),
    }
}

pub fn group_from_json<S>(j: &GroupJson) -> Result<GroupSpec<S>, CliError>
where
    S: Scalar + FromStr<Err = NumericError>,
{
    let spec = match j.kind.as_str() {
        "free" => GroupSpec::free(j.g)?,
        "free_abelian" => GroupSpec::free_abelian(j.g)?,
        "surface" => GroupSpec::surface(j.g)?,
        "lattice" => {
            let period = j.period.as_ref().ok_or_else(|| {
                CliError::Parse("lattice group needs a \"period\" matrix".into())
            })?;
            let z = matrix_from_json::<S>(period)?;
            if z.rows() != j.g {
                return Err(CliError::Precondition(format!(
                    "group declares g = {} but the period matrix is {}x{}",
                    j.g,
                    z.rows(),
                    z.cols()
                )));
            }
            GroupSpec::lattice(z)?
        }
        other => {
            return Err(CliError::Parse(format!(
                "unknown group kind {other:?} (expected \"free\", \"free_abelian\", \"lattice\" or \"surface\")"
            )))
        }
    };
    if spec.kind() != GroupKind::Lattice && j.period.is_some() {
        return Err(CliError::Parse(format!(
            "group kind {:?} does not take a period matrix",
            j.kind
        )));
    }
    Ok(spec)
}

pub fn rep_to_json<S: Scalar>(rep: &Representation<S>) -> RepJson {
    RepJson {
        group: group_to_json(rep.group()),
        images: rep.images().iter().map(matrix_to_json).collect(),
        backend: Some(S::BACKEND.to_string()),
    }
}

pub fn rep_from_json<S>(j: &RepJson) -> Result<Representation<S>, CliError>
where
    S: Scalar + FromStr<Err = NumericError>,
{
    let group = group_from_json::<S>(&j.group)?;
    let images = j
        .images
        .iter()
        .map(matrix_from_json::<S>)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Representation::new(group, images)?)
}

pub fn torus_to_json<S: Scalar>(t: &TorusData<S>) -> TorusJson {
    TorusJson {
        g: t.g(),
        z: matrix_to_json(t.z()),
        backend: Some(S::BACKEND.to_string()),
    }
}

pub fn torus_from_json<S>(j: &TorusJson) -> Result<TorusData<S>, CliError>
where
    S: Scalar + FromStr<Err = NumericError>,
{
    let z = matrix_from_json::<S>(&j.z)?;
    if z.rows() != j.g {
        return Err(CliError::Precondition(format!(
            "torus declares g = {} but Z is {}x{}",
            j.g,
            z.rows(),
            z.cols()
        )));
    }
    Ok(TorusData::new(z)?)
}

pub fn cocycle_to_json<S: Scalar>(c: &Cocycle<S>) -> CocycleJson {
    CocycleJson {
        coefficients: rep_to_json(c.coefficients()),
        values: c.values().iter().map(|v| vector_to_json(v)).collect(),
        backend: Some(S::BACKEND.to_string()),
    }
}

pub fn cocycle_from_json<S>(j: &CocycleJson) -> Result<Cocycle<S>, CliError>
where
    S: Scalar + FromStr<Err = NumericError>,
{
    let coefficients = rep_from_json::<S>(&j.coefficients)?;
    let values = j
        .values
        .iter()
        .map(|v| vector_from_json::<S>(v))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Cocycle::new(coefficients, values)?)
}

pub fn gauge_to_json<S: Scalar>(gauge: &SchottkyGauge<S>) -> GaugeJson {
    GaugeJson {
        coefficients: gauge.coefficients.iter().map(matrix_to_json).collect(),
        backend: Some(S::BACKEND.to_string()),
    }
}

pub fn gauge_from_json<S>(j: &GaugeJson) -> Result<SchottkyGauge<S>, CliError>
where
    S: Scalar + FromStr<Err = NumericError>,
{
    let coefficients = j
        .coefficients
        .iter()
        .map(matrix_from_json::<S>)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SchottkyGauge { coefficients })
}

/// Reads an optional `"backend"` field.
pub fn declared_backend(field: &Option<String>) -> Result<Option<Backend>, CliError> {
    match field.as_deref() {
        None => Ok(None),
        Some("exact") => Ok(Some(Backend::Exact)),
        Some("approx") => Ok(Some(Backend::Approx)),
        Some(other) => Err(CliError::Parse(format!(
            "unknown backend {other:?} (expected \"exact\" or \"approx\")"
        ))),
    }
}

/// Folds the backends declared by the input files with the `--backend` flag:
/// files win over the flag, all declaring files must agree, and the default
/// is exact.
pub fn resolve_backend(
    declared: &[Option<Backend>],
    flag: Option<Backend>,
) -> Result<Backend, CliError> {
    let mut found: Option<Backend> = None;
    for b in declared.iter().flatten() {
        match found {
            None => found = Some(*b),
            Some(prev) if prev != *b => {
                return Err(CliError::Precondition(
                    "inputs declare conflicting backends".into(),
                ))
            }
            _ => {}
        }
    }
    Ok(found.or(flag).unwrap_or(Backend::Exact))
}

/// A parsed group shorthand: `F:g`, `Z:g`, `Lattice:<file>` or `Surface:g`.
#[derive(Debug, Clone, PartialEq)]
pub enum GroupArg {
    Free(usize),
    FreeAbelian(usize),
    Lattice(PathBuf),
    Surface(usize),
}

pub fn parse_group_arg(s: &str) -> Result<GroupArg, CliError> {
    let bad = || {
        CliError::Parse(format!(
            "bad group shorthand {s:?}: expected \"F:<g>\", \"Z:<g>\", \"Lattice:<file>\" or \"Surface:<g>\""
        ))
    };
    let (head, tail) = s.split_once(':').ok_or_else(bad)?;
    let rank = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
    match head.trim() {
        "F" => Ok(GroupArg::Free(rank(tail)?)),
        "Z" => Ok(GroupArg::FreeAbelian(rank(tail)?)),
        "Surface" => Ok(GroupArg::Surface(rank(tail)?)),
        "Lattice" => Ok(GroupArg::Lattice(PathBuf::from(tail))),
        _ => Err(bad()),
    }
}

impl GroupArg {
    /// The shape the shorthand names, when it can be known without reading
    /// a torus file.
    pub fn shape(&self) -> Option<GroupShape> {
        match self {
            GroupArg::Free(g) => Some(GroupShape::new(GroupKind::Free, *g)),
            GroupArg::FreeAbelian(g) => Some(GroupShape::new(GroupKind::FreeAbelian, *g)),
            GroupArg::Surface(g) => Some(GroupShape::new(GroupKind::Surface, *g)),
            GroupArg::Lattice(_) => None,
        }
    }
}
