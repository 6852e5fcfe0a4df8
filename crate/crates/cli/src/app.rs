//! Argument parsing, dispatch, and the JSON report envelope.
//!
//! Every invocation prints a single report object to stdout:
//! `{"command", "inputs", "ok", "result"}` on success and
//! `{"command", "inputs", "ok": false, "error"}` on failure, with the exit
//! code classifying the failure (1 parse, 2 precondition, 3 internal).

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use schottky_core::cohomology::{build_extension, extract_class, h0, h1, hom_rep};
use schottky_core::group::{
    alpha_surface, alpha_torus, format_word, parse_word, GroupKind, GroupSpec, Morphism,
};
use schottky_core::rep::{jordan_decompose, FlagOutcome, Representation};
use schottky_core::scalar::{ApproxComplex, Backend, GaussianRational, Scalar, Tolerance};
use schottky_core::schottky::{
    ad_schottky_check, is_principal_schottky, is_schottky_module, schottkyize_character,
    schottkyize_flat_sum, schottkyize_unipotent, verify_gauge, FlatComponent, GaugeCheck,
};

use crate::error::CliError;
use crate::json::{
    cocycle_from_json, declared_backend, gauge_from_json, gauge_to_json, group_to_json,
    matrix_from_json, matrix_to_json, parse_group_arg, rep_from_json, rep_to_json,
    resolve_backend, torus_from_json, vector_to_json, CocycleJson, ComponentJson, ExtensionJson,
    GaugeJson, GroupArg, MatrixJson, RepJson, TorusJson,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BackendArg {
    Exact,
    Approx,
}

impl From<BackendArg> for Backend {
    fn from(b: BackendArg) -> Backend {
        match b {
            BackendArg::Exact => Backend::Exact,
            BackendArg::Approx => Backend::Approx,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "schottky",
    version,
    about = "Exact and floating-point calculus for representations over lattices, free groups and surface groups"
)]
pub struct Cli {
    /// Fallback scalar backend when no input file declares one.
    #[arg(long, global = true, value_enum)]
    pub backend: Option<BackendArg>,

    /// Tolerance for approximate comparisons (default 1e-9).
    #[arg(long, global = true)]
    pub eps: Option<f64>,

    /// Also write the report to this file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a representation file against its group's invariants.
    Validate {
        #[arg(long)]
        rep: PathBuf,
    },
    /// Evaluate a representation on a word in its generators.
    Evaluate {
        #[arg(long)]
        rep: PathBuf,
        /// Free form "B1^2*B2^-1" (identity "e"), abelian form "[2,-1]".
        #[arg(long)]
        word: String,
    },
    /// Decide simultaneous unipotence: a flag certificate or a refusal
    /// witness naming the stage with no common fixed vector.
    Kolchin {
        #[arg(long)]
        rep: PathBuf,
    },
    /// Split a unipotent representation as trivial line -> total -> quotient.
    Peel {
        #[arg(long)]
        rep: PathBuf,
    },
    /// Pull a representation back along the canonical comparison morphism
    /// onto a lattice or surface group.
    Pullback {
        #[arg(long)]
        rep: PathBuf,
        /// Target shorthand: "Lattice:<torus file>" or "Surface:<genus>".
        #[arg(long)]
        to: String,
    },
    /// Canonical basis of the intertwiner space Hom(rep1, rep2).
    Intertwiners {
        #[arg(long)]
        rep1: PathBuf,
        #[arg(long)]
        rep2: PathBuf,
    },
    /// Decide isomorphism, producing an invertible intertwining witness
    /// when one exists.
    Iso {
        #[arg(long)]
        rep1: PathBuf,
        #[arg(long)]
        rep2: PathBuf,
    },
    /// Basis of the invariant vectors.
    H0 {
        #[arg(long)]
        rep: PathBuf,
        /// Optional shorthand ("F:g" or "Z:g") cross-checked against the file.
        #[arg(long)]
        group: Option<String>,
    },
    /// First cohomology: dimension with cocycle and coboundary bases.
    H1 {
        #[arg(long)]
        rep: PathBuf,
        /// Optional shorthand ("F:g" or "Z:g") cross-checked against the file.
        #[arg(long)]
        group: Option<String>,
    },
    /// dim Ext^1(rep1, rep2) with bases over the coefficients Hom(rep1, rep2).
    Ext1 {
        #[arg(long)]
        rep1: PathBuf,
        #[arg(long)]
        rep2: PathBuf,
    },
    /// Build the extension of rep1 by rep2 (rep2 is the sub) classified by
    /// a cocycle with coefficients Hom(rep1, rep2).
    ExtBuild {
        #[arg(long)]
        rep1: PathBuf,
        #[arg(long)]
        rep2: PathBuf,
        #[arg(long)]
        cocycle: PathBuf,
    },
    /// Extract the class of an extension bundle, reduced against the
    /// canonical coboundary basis.
    ExtExtract {
        #[arg(long)]
        extension: PathBuf,
    },
    /// Gauge a lattice representation to Schottky form; dispatches on input
    /// shape (exact unipotent, approximate character, or flat sum).
    Schottkyize {
        #[arg(long)]
        torus: PathBuf,
        #[arg(long)]
        rep: Option<PathBuf>,
        /// A JSON list of {"character", "unipotent"} component pairs.
        #[arg(long)]
        components: Option<PathBuf>,
    },
    /// Re-check a Schottky gauge certificate from its parts.
    VerifyGauge {
        #[arg(long)]
        torus: PathBuf,
        #[arg(long)]
        rep: PathBuf,
        #[arg(long)]
        sigma: PathBuf,
        #[arg(long)]
        gauge: PathBuf,
    },
    /// Does the representation kill the kernel of the comparison morphism?
    IsSchottky {
        #[arg(long)]
        rep: PathBuf,
    },
    /// Does the kernel of the comparison morphism act by scalars?
    IsPrincipalSchottky {
        #[arg(long)]
        rep: PathBuf,
    },
    /// The conjugation action on matrix space.
    Adjoint {
        #[arg(long)]
        rep: PathBuf,
    },
    /// Multiplicative Jordan decomposition of an exact invertible matrix.
    Jordan {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Is the adjoint representation a Schottky module?
    AdSchottky {
        #[arg(long)]
        rep: PathBuf,
    },
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Validate { .. } => "validate",
        Command::Evaluate { .. } => "evaluate",
        Command::Kolchin { .. } => "kolchin",
        Command::Peel { .. } => "peel",
        Command::Pullback { .. } => "pullback",
        Command::Intertwiners { .. } => "intertwiners",
        Command::Iso { .. } => "iso",
        Command::H0 { .. } => "h0",
        Command::H1 { .. } => "h1",
        Command::Ext1 { .. } => "ext1",
        Command::ExtBuild { .. } => "ext-build",
        Command::ExtExtract { .. } => "ext-extract",
        Command::Schottkyize { .. } => "schottkyize",
        Command::VerifyGauge { .. } => "verify-gauge",
        Command::IsSchottky { .. } => "is-schottky",
        Command::IsPrincipalSchottky { .. } => "is-principal-schottky",
        Command::Adjoint { .. } => "adjoint",
        Command::Jordan { .. } => "jordan",
        Command::AdSchottky { .. } => "ad-schottky",
    }
}

fn echo_inputs(cli: &Cli) -> Value {
    let p = |path: &Path| Value::String(path.display().to_string());
    let mut m = serde_json::Map::new();
    match &cli.command {
        Command::Validate { rep }
        | Command::Kolchin { rep }
        | Command::Peel { rep }
        | Command::IsSchottky { rep }
        | Command::IsPrincipalSchottky { rep }
        | Command::Adjoint { rep }
        | Command::AdSchottky { rep } => {
            m.insert("rep".into(), p(rep));
        }
        Command::Evaluate { rep, word } => {
            m.insert("rep".into(), p(rep));
            m.insert("word".into(), json!(word));
        }
        Command::Pullback { rep, to } => {
            m.insert("rep".into(), p(rep));
            m.insert("to".into(), json!(to));
        }
        Command::Intertwiners { rep1, rep2 }
        | Command::Iso { rep1, rep2 }
        | Command::Ext1 { rep1, rep2 } => {
            m.insert("rep1".into(), p(rep1));
            m.insert("rep2".into(), p(rep2));
        }
        Command::H0 { rep, group } | Command::H1 { rep, group } => {
            m.insert("rep".into(), p(rep));
            if let Some(g) = group {
                m.insert("group".into(), json!(g));
            }
        }
        Command::ExtBuild { rep1, rep2, cocycle } => {
            m.insert("rep1".into(), p(rep1));
            m.insert("rep2".into(), p(rep2));
            m.insert("cocycle".into(), p(cocycle));
        }
        Command::ExtExtract { extension } => {
            m.insert("extension".into(), p(extension));
        }
        Command::Schottkyize { torus, rep, components } => {
            m.insert("torus".into(), p(torus));
            if let Some(r) = rep {
                m.insert("rep".into(), p(r));
            }
            if let Some(c) = components {
                m.insert("components".into(), p(c));
            }
        }
        Command::VerifyGauge { torus, rep, sigma, gauge } => {
            m.insert("torus".into(), p(torus));
            m.insert("rep".into(), p(rep));
            m.insert("sigma".into(), p(sigma));
            m.insert("gauge".into(), p(gauge));
        }
        Command::Jordan { matrix } => {
            m.insert("matrix".into(), p(matrix));
        }
    }
    m.insert(
        "backend".into(),
        match cli.backend {
            Some(b) => json!(Backend::from(b).to_string()),
            None => Value::Null,
        },
    );
    m.insert(
        "eps".into(),
        match cli.eps {
            Some(e) => json!(e),
            None => Value::Null,
        },
    );
    Value::Object(m)
}

pub fn run() -> ExitCode {
    run_from(std::env::args_os())
}

pub fn run_from<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };

    let outcome = execute(&cli);
    let report = match &outcome {
        Ok(result) => json!({
            "command": command_name(&cli.command),
            "inputs": echo_inputs(&cli),
            "ok": true,
            "result": result,
        }),
        Err(e) => json!({
            "command": command_name(&cli.command),
            "inputs": echo_inputs(&cli),
            "ok": false,
            "error": e.to_string(),
        }),
    };
    let text = serde_json::to_string_pretty(&report).expect("report serializes");
    println!("{text}");
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, format!("{text}\n")) {
            eprintln!("cannot write {}: {e}", path.display());
            return ExitCode::from(1);
        }
    }
    match outcome {
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}

/// Runs the subcommand, returning the `result` payload of the report.
pub fn execute(cli: &Cli) -> Result<Value, CliError> {
    let flag = cli.backend.map(Backend::from);
    let tol = tolerance(cli.eps)?;
    match &cli.command {
        Command::Validate { rep } => cmd_validate(rep, flag),
        Command::Evaluate { rep, word } => cmd_evaluate(rep, word, flag),
        Command::Kolchin { rep } => cmd_kolchin(rep, flag),
        Command::Peel { rep } => cmd_peel(rep, flag),
        Command::Pullback { rep, to } => cmd_pullback(rep, to, flag),
        Command::Intertwiners { rep1, rep2 } => cmd_intertwiners(rep1, rep2, flag),
        Command::Iso { rep1, rep2 } => cmd_iso(rep1, rep2, flag),
        Command::H0 { rep, group } => cmd_h0(rep, group.as_deref(), flag),
        Command::H1 { rep, group } => cmd_h1(rep, group.as_deref(), flag),
        Command::Ext1 { rep1, rep2 } => cmd_ext1(rep1, rep2, flag),
        Command::ExtBuild { rep1, rep2, cocycle } => cmd_ext_build(rep1, rep2, cocycle, flag),
        Command::ExtExtract { extension } => cmd_ext_extract(extension, flag),
        Command::Schottkyize { torus, rep, components } => {
            cmd_schottkyize(torus, rep.as_deref(), components.as_deref(), flag)
        }
        Command::VerifyGauge { torus, rep, sigma, gauge } => {
            cmd_verify_gauge(torus, rep, sigma, gauge, flag, tol)
        }
        Command::IsSchottky { rep } => cmd_kernel_predicate(rep, flag, tol, Predicate::Schottky),
        Command::IsPrincipalSchottky { rep } => {
            cmd_kernel_predicate(rep, flag, tol, Predicate::Principal)
        }
        Command::Adjoint { rep } => cmd_adjoint(rep, flag),
        Command::Jordan { matrix } => cmd_jordan(matrix, flag),
        Command::AdSchottky { rep } => cmd_kernel_predicate(rep, flag, tol, Predicate::Adjoint),
    }
}

fn tolerance(eps: Option<f64>) -> Result<Tolerance, CliError> {
    Ok(eps.map(Tolerance::new).transpose()?.unwrap_or_default())
}

fn load<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

/// Picks the scalar type for `$backend` and substitutes it for `$S` in the
/// block, so one body serves both backends.
macro_rules! with_backend {
    ($backend:expr, $S:ident, $body:block) => {
        match $backend {
            Backend::Exact => {
                type $S = GaussianRational;
                $body
            }
            Backend::Approx => {
                type $S = ApproxComplex;
                $body
            }
        }
    };
}

fn cmd_validate(rep: &Path, flag: Option<Backend>) -> Result<Value, CliError> {
    let rep_json: RepJson = load(rep)?;
    let backend = resolve_backend(&[declared_backend(&rep_json.backend)?], flag)?;
    with_backend!(backend, S, {
        let rep = rep_from_json::<S>(&rep_json)?;
        Ok(json!({
            "valid": true,
            "group": group_to_json(rep.group()),
            "rank": rep.rank(),
            "backend": backend.to_string(),
        }))
    })
}

fn cmd_evaluate(rep: &Path, word: &str, flag: Option<Backend>) -> Result<Value, CliError> {
    let rep_json: RepJson = load(rep)?;
    let backend = resolve_backend(&[declared_backend(&rep_json.backend)?], flag)?;
    with_backend!(backend, S, {
        let rep = rep_from_json::<S>(&rep_json)?;
        let shape = rep.group().shape();
        let w = parse_word(word, shape)?;
        let m = rep.evaluate(&w)?;
        Ok(json!({
            "word": format_word(&w, shape),
            "matrix": matrix_to_json(&m),
        }))
    })
}

fn cmd_kolchin(rep: &Path, flag: Option<Backend>) -> Result<Value, CliError> {
    let rep_json: RepJson = load(rep)?;
    let backend = resolve_backend(&[declared_backend(&rep_json.backend)?], flag)?;
    with_backend!(backend, S, {
        let rep = rep_from_json::<S>(&rep_json)?;
        Ok(match rep.unipotence_flag() {
            FlagOutcome::Unipotent(cert) => json!({
                "unipotent": true,
                "flag_dims": cert.flag_dims,
                "triangularizer": matrix_to_json(&cert.triangularizer),
            }),
            FlagOutcome::NotUnipotent(w) => json!({
                "unipotent": false,
                "stage": w.stage,
                "remaining_rank": w.remaining_rank,
            }),
        })
    })
}

fn cmd_peel(rep: &Path, flag: Option<Backend>) -> Result<Value, CliError> {
    let rep_json: RepJson = load(rep)?;
    let backend = resolve_backend(&[declared_backend(&rep_json.backend)?], flag)?;
    with_backend!(backend, S, {
        let rep = rep_from_json::<S>(&rep_json)?;
        let peeled = rep.peel()?;
        let bundle = ExtensionJson {
            total: rep_to_json(&rep),
            sub: rep_to_json(&peeled.sub),
            quotient: rep_to_json(&peeled.quotient),
            inclusion: matrix_to_json(&peeled.inclusion),
            projection: matrix_to_json(&peeled.projection),
            backend: Some(backend.to_string()),
        };
        Ok(serde_json::to_value(bundle)?)
    })
}

fn cmd_pullback(rep: &Path, to: &str, flag: Option<Backend>) -> Result<Value, CliError> {
    let rep_json: RepJson = load(rep)?;
    match parse_group_arg(to)? {
        GroupArg::Lattice(torus_path) => {
            let torus_json: TorusJson = load(&torus_path)?;
            let backend = resolve_backend(
                &[
                    declared_backend(&rep_json.backend)?,
                    declared_backend(&torus_json.backend)?,
                ],
                flag,
            )?;
            with_backend!(backend, S, {
                let t = torus_from_json::<S>(&torus_json)?;
                let rep = rep_from_json::<S>(&rep_json)?;
                let pulled = rep.pullback(t.alpha(), t.lattice())?;
                Ok(json!({ "rep": rep_to_json(&pulled) }))
            })
        }
        GroupArg::Surface(genus) => {
            let backend = resolve_backend(&[declared_backend(&rep_json.backend)?], flag)?;
            with_backend!(backend, S, {
                let rep = rep_from_json::<S>(&rep_json)?;
                let alpha = alpha_surface(genus);
                let source = GroupSpec::<S>::surface(genus)?;
                let pulled = rep.pullback(&alpha, &source)?;
                Ok(json!({ "rep": rep_to_json(&pulled) }))
            })
        }
        GroupArg::Free(_) | GroupArg::FreeAbelian(_) => Err(CliError::Precondition(
            "pullback targets are \"Lattice:<torus file>\" or \"Surface:<genus>\"".into(),
        )),
    }
}

fn cmd_intertwiners(rep1: &Path, rep2: &Path, flag: Option<Backend>) -> Result<Value, CliError> {
    let (j1, j2): (RepJson, RepJson) = (load(rep1)?, load(rep2)?);
    let backend = resolve_backend(
        &[declared_backend(&j1.backend)?, declared_backend(&j2.backend)?],
        flag,
    )?;
    with_backend!(backend, S, {
        let r1 = rep_from_json::<S>(&j1)?;
        let r2 = rep_from_json::<S>(&j2)?;
        let basis = r1.intertwiners(&r2)?;
        Ok(json!({
            "dimension": basis.len(),
            "basis": basis.iter().map(matrix_to_json).collect::<Vec<MatrixJson>>(),
        }))
    })
}

fn cmd_iso(rep1: &Path, rep2: &Path, flag: Option<Backend>) -> Result<Value, CliError> {
    let (j1, j2): (RepJson, RepJson) = (load(rep1)?, load(rep2)?);
    let backend = resolve_backend(
        &[declared_backend(&j1.backend)?, declared_backend(&j2.backend)?],
        flag,
    )?;
    with_backend!(backend, S, {
        let r1 = rep_from_json::<S>(&j1)?;
        let r2 = rep_from_json::<S>(&j2)?;
        Ok(match r1.is_isomorphic(&r2)? {
            Some(witness) => json!({
                "isomorphic": true,
                "witness": matrix_to_json(&witness),
            }),
            None => json!({ "isomorphic": false }),
        })
    })
}

/// Rejects a `--group` shorthand that does not name the representation's
/// group; torus-file shorthands are not meaningful here.
fn check_group_flag<S: Scalar>(
    group: Option<&str>,
    rep: &Representation<S>,
) -> Result<(), CliError> {
    let Some(text) = group else { return Ok(()) };
    let arg = parse_group_arg(text)?;
    let shape = rep.group().shape();
    if arg.shape() != Some(shape) {
        return Err(CliError::Precondition(format!(
            "--group {:?} does not match the representation's group ({} of rank {})",
            text,
            shape.kind,
            shape.rank,
        )));
    }
    Ok(())
}

fn cmd_h0(rep: &Path, group: Option<&str>, flag: Option<Backend>) -> Result<Value, CliError> {
    let rep_json: RepJson = load(rep)?;
    let backend = resolve_backend(&[declared_backend(&rep_json.backend)?], flag)?;
    with_backend!(backend, S, {
        let rep = rep_from_json::<S>(&rep_json)?;
        check_group_flag(group, &rep)?;
        let basis = h0(&rep)?;
        Ok(json!({
            "dim": basis.len(),
            "basis": basis.iter().map(|v| vector_to_json(v)).collect::<Vec<_>>(),
        }))
    })
}

fn cmd_h1(rep: &Path, group: Option<&str>, flag: Option<Backend>) -> Result<Value, CliError> {
    let rep_json: RepJson = load(rep)?;
    let backend = resolve_backend(&[declared_backend(&rep_json.backend)?], flag)?;
    with_backend!(backend, S, {
        let rep = rep_from_json::<S>(&rep_json)?;
        check_group_flag(group, &rep)?;
        let data = h1(&rep)?;
        Ok(json!({
            "dim": data.dimension,
            "cocycle_basis": data.cocycle_basis.iter().map(|v| vector_to_json(v)).collect::<Vec<_>>(),
            "coboundary_basis": data.coboundary_basis.iter().map(|v| vector_to_json(v)).collect::<Vec<_>>(),
        }))
    })
}

fn cmd_ext1(rep1: &Path, rep2: &Path, flag: Option<Backend>) -> Result<Value, CliError> {
    let (j1, j2): (RepJson, RepJson) = (load(rep1)?, load(rep2)?);
    let backend = resolve_backend(
        &[declared_backend(&j1.backend)?, declared_backend(&j2.backend)?],
        flag,
    )?;
    with_backend!(backend, S, {
        let a = rep_from_json::<S>(&j1)?;
        let b = rep_from_json::<S>(&j2)?;
        let hom = hom_rep(&a, &b)?;
        let data = h1(&hom)?;
        Ok(json!({
            "dim": data.dimension,
            "coefficients": rep_to_json(&hom),
            "cocycle_basis": data.cocycle_basis.iter().map(|v| vector_to_json(v)).collect::<Vec<_>>(),
            "coboundary_basis": data.coboundary_basis.iter().map(|v| vector_to_json(v)).collect::<Vec<_>>(),
        }))
    })
}

fn cmd_ext_build(
    rep1: &Path,
    rep2: &Path,
    cocycle: &Path,
    flag: Option<Backend>,
) -> Result<Value, CliError> {
    let (j1, j2): (RepJson, RepJson) = (load(rep1)?, load(rep2)?);
    let jc: CocycleJson = load(cocycle)?;
    let backend = resolve_backend(
        &[
            declared_backend(&j1.backend)?,
            declared_backend(&j2.backend)?,
            declared_backend(&jc.backend)?,
            declared_backend(&jc.coefficients.backend)?,
        ],
        flag,
    )?;
    with_backend!(backend, S, {
        let a = rep_from_json::<S>(&j1)?;
        let b = rep_from_json::<S>(&j2)?;
        let c = cocycle_from_json::<S>(&jc)?;
        let e = build_extension(&a, &b, &c)?;
        let bundle = ExtensionJson {
            total: rep_to_json(&e.total),
            sub: rep_to_json(&e.sub),
            quotient: rep_to_json(&e.quotient),
            inclusion: matrix_to_json(&e.inclusion),
            projection: matrix_to_json(&e.projection),
            backend: Some(backend.to_string()),
        };
        Ok(serde_json::to_value(bundle)?)
    })
}

fn cmd_ext_extract(extension: &Path, flag: Option<Backend>) -> Result<Value, CliError> {
    let j: ExtensionJson = load(extension)?;
    let backend = resolve_backend(
        &[
            declared_backend(&j.backend)?,
            declared_backend(&j.total.backend)?,
            declared_backend(&j.sub.backend)?,
            declared_backend(&j.quotient.backend)?,
        ],
        flag,
    )?;
    with_backend!(backend, S, {
        let total = rep_from_json::<S>(&j.total)?;
        let sub = rep_from_json::<S>(&j.sub)?;
        let quotient = rep_from_json::<S>(&j.quotient)?;
        let inclusion = matrix_from_json::<S>(&j.inclusion)?;
        let projection = matrix_from_json::<S>(&j.projection)?;
        let class = extract_class(&total, &quotient, &sub, &inclusion, &projection)?;
        Ok(json!({
            "representative": vector_to_json(class.representative()),
            "is_zero": class.is_zero(),
        }))
    })
}

fn cmd_schottkyize(
    torus: &Path,
    rep: Option<&Path>,
    components: Option<&Path>,
    flag: Option<Backend>,
) -> Result<Value, CliError> {
    let torus_json: TorusJson = load(torus)?;
    let torus_backend = declared_backend(&torus_json.backend)?;
    match (rep, components) {
        (Some(_), Some(_)) | (None, None) => Err(CliError::Parse(
            "give exactly one of --rep and --components".into(),
        )),
        (Some(rep_path), None) => {
            let rep_json: RepJson = load(rep_path)?;
            let backend =
                resolve_backend(&[torus_backend, declared_backend(&rep_json.backend)?], flag)?;
            match backend {
                Backend::Exact => {
                    let t = torus_from_json::<GaussianRational>(&torus_json)?;
                    let rho = rep_from_json::<GaussianRational>(&rep_json)?;
                    let (sigma, gauge) = schottkyize_unipotent(&t, &rho)?;
                    Ok(json!({
                        "sigma": rep_to_json(&sigma),
                        "gauge": gauge_to_json(&gauge),
                    }))
                }
                Backend::Approx => {
                    let t = torus_from_json::<ApproxComplex>(&torus_json)?;
                    let chi = rep_from_json::<ApproxComplex>(&rep_json)?;
                    let (sigma, gauge) = schottkyize_character(&t, &chi)?;
                    Ok(json!({
                        "sigma": rep_to_json(&sigma),
                        "gauge": gauge_to_json(&gauge),
                    }))
                }
            }
        }
        (None, Some(comp_path)) => {
            let comps: Vec<ComponentJson> = load(comp_path)?;
            if comps.is_empty() {
                return Err(CliError::Precondition(
                    "a flat sum needs at least one component".into(),
                ));
            }
            // The torus stays exact: only the characters force floats.
            if torus_backend == Some(Backend::Approx) {
                return Err(CliError::Precondition(
                    "flat sums need an exact torus; only the characters are approximate".into(),
                ));
            }
            let t = torus_from_json::<GaussianRational>(&torus_json)?;
            let parts = comps
                .iter()
                .map(|c| {
                    if declared_backend(&c.character.backend)? == Some(Backend::Exact) {
                        return Err(CliError::Precondition(
                            "flat-sum characters live on the approximate backend".into(),
                        ));
                    }
                    if declared_backend(&c.unipotent.backend)? == Some(Backend::Approx) {
                        return Err(CliError::Precondition(
                            "flat-sum unipotent parts live on the exact backend".into(),
                        ));
                    }
                    Ok(FlatComponent {
                        character: rep_from_json::<ApproxComplex>(&c.character)?,
                        unipotent: rep_from_json::<GaussianRational>(&c.unipotent)?,
                    })
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            let (sigma, gauge) = schottkyize_flat_sum(&t, &parts)?;
            Ok(json!({
                "sigma": rep_to_json(&sigma),
                "gauge": gauge_to_json(&gauge),
            }))
        }
    }
}

fn cmd_verify_gauge(
    torus: &Path,
    rep: &Path,
    sigma: &Path,
    gauge: &Path,
    flag: Option<Backend>,
    tol: Tolerance,
) -> Result<Value, CliError> {
    let torus_json: TorusJson = load(torus)?;
    let rep_json: RepJson = load(rep)?;
    let sigma_json: RepJson = load(sigma)?;
    let gauge_json: GaugeJson = load(gauge)?;
    let backend = resolve_backend(
        &[
            declared_backend(&torus_json.backend)?,
            declared_backend(&rep_json.backend)?,
            declared_backend(&sigma_json.backend)?,
            declared_backend(&gauge_json.backend)?,
        ],
        flag,
    )?;
    with_backend!(backend, S, {
        let t = torus_from_json::<S>(&torus_json)?;
        let rho = rep_from_json::<S>(&rep_json)?;
        let sig = rep_from_json::<S>(&sigma_json)?;
        let gauge = gauge_from_json::<S>(&gauge_json)?;
        Ok(match verify_gauge(&t, &rho, &sig, &gauge, tol) {
            GaugeCheck::Verified(cert) => json!({
                "verified": true,
                "identities_checked": cert.identities_checked,
            }),
            GaugeCheck::Failed(failure) => json!({
                "verified": false,
                "identity": failure.identity,
                "residual": matrix_to_json(&failure.residual),
            }),
        })
    })
}

enum Predicate {
    Schottky,
    Principal,
    Adjoint,
}

/// The three kernel predicates share their setup: the comparison morphism is
/// inferred from the representation's group kind.
fn cmd_kernel_predicate(
    rep: &Path,
    flag: Option<Backend>,
    tol: Tolerance,
    which: Predicate,
) -> Result<Value, CliError> {
    let rep_json: RepJson = load(rep)?;
    let backend = resolve_backend(&[declared_backend(&rep_json.backend)?], flag)?;
    with_backend!(backend, S, {
        let rep = rep_from_json::<S>(&rep_json)?;
        let alpha = canonical_alpha(&rep)?;
        Ok(match which {
            Predicate::Schottky => json!({
                "schottky": is_schottky_module(&rep, &alpha, tol)?,
            }),
            Predicate::Principal => json!({
                "principal_schottky": is_principal_schottky(&rep, &alpha, tol)?,
            }),
            Predicate::Adjoint => json!({
                "ad_schottky": ad_schottky_check(&rep, &alpha, tol)?,
            }),
        })
    })
}

fn canonical_alpha<S: Scalar>(rep: &Representation<S>) -> Result<Morphism, CliError> {
    match rep.group().kind() {
        GroupKind::Lattice => Ok(alpha_torus(rep.group().rank())),
        GroupKind::Surface => Ok(alpha_surface(rep.group().rank())),
        _ => Err(CliError::Precondition(
            "Schottky predicates need a lattice or surface representation; \
             this one already lives over the comparison target"
                .into(),
        )),
    }
}

fn cmd_adjoint(rep: &Path, flag: Option<Backend>) -> Result<Value, CliError> {
    let rep_json: RepJson = load(rep)?;
    let backend = resolve_backend(&[declared_backend(&rep_json.backend)?], flag)?;
    with_backend!(backend, S, {
        let rep = rep_from_json::<S>(&rep_json)?;
        let ad = rep.adjoint_rep()?;
        Ok(json!({ "rep": rep_to_json(&ad) }))
    })
}

fn cmd_jordan(matrix: &Path, flag: Option<Backend>) -> Result<Value, CliError> {
    let backend = resolve_backend(&[], flag)?;
    if backend == Backend::Approx {
        return Err(CliError::Precondition(
            "the multiplicative Jordan decomposition runs on the exact backend".into(),
        ));
    }
    let j: MatrixJson = load(matrix)?;
    let m = matrix_from_json::<GaussianRational>(&j)?;
    let pair = jordan_decompose(&m)?;
    Ok(json!({
        "semisimple": matrix_to_json(&pair.semisimple),
        "unipotent": matrix_to_json(&pair.unipotent),
        "separable_poly": vector_to_json(&pair.separable_poly),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tolerance_flag_is_validated() {
        assert!(tolerance(None).is_ok());
        assert!(tolerance(Some(1e-6)).is_ok());
        let e = tolerance(Some(-1.0)).unwrap_err();
        assert_eq!(e.exit_code(), 2);
        let e = tolerance(Some(0.0)).unwrap_err();
        assert_eq!(e.exit_code(), 2);
    }

    #[test]
    fn subcommand_names_match_the_advertised_surface() {
        let cli = Cli::try_parse_from(["schottky", "h1", "--rep", "x.json"]).unwrap();
        assert_eq!(command_name(&cli.command), "h1");
        let cli =
            Cli::try_parse_from(["schottky", "ext-build", "--rep1", "a", "--rep2", "b", "--cocycle", "c"])
                .unwrap();
        assert_eq!(command_name(&cli.command), "ext-build");
        let cli = Cli::try_parse_from(["schottky", "is-principal-schottky", "--rep", "x"]).unwrap();
        assert_eq!(command_name(&cli.command), "is-principal-schottky");
        assert!(Cli::try_parse_from(["schottky", "bogus"]).is_err());
    }

    #[test]
    fn global_flags_parse_after_the_subcommand() {
        let cli = Cli::try_parse_from([
            "schottky", "iso", "--rep1", "a", "--rep2", "b", "--backend", "approx", "--eps",
            "1e-7",
        ])
        .unwrap();
        assert_eq!(cli.backend, Some(BackendArg::Approx));
        assert_eq!(cli.eps, Some(1e-7));
    }
}
