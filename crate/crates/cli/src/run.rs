use std::fmt::Write as _;

use rrc_core::arith::VarContext;
use rrc_core::classify::{self, ClassifyError, ClassifyOptions};
use rrc_core::grobner::{GrobnerError, ParametricSystem};
use rrc_core::hermite::{drl_matrix, interp_hermite, HermiteError, HermiteMatrix};
use rrc_core::linalg::modp_minor_probe;
use rrc_core::samplepoints::sample_points;
use serde_json::json;
use thiserror::Error;

use crate::config::{JobConfig, Mode};
use crate::input::{parse_system, polys_over, scan, InputError};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(#[from] InputError),
    #[error("{0}")]
    Classify(#[from] ClassifyError),
    #[error("cannot access {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 4,
            CliError::Classify(e) if e.is_not_zero_dimensional() => 2,
            CliError::Classify(ClassifyError::IdenticallyZeroDeterminant) => 3,
            _ => 1,
        }
    }
}

impl From<HermiteError> for CliError {
    fn from(e: HermiteError) -> Self {
        CliError::Classify(e.into())
    }
}

impl From<GrobnerError> for CliError {
    fn from(e: GrobnerError) -> Self {
        CliError::Classify(e.into())
    }
}

/// Text for standard output and the JSON document, if any.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub json: String,
}

fn read(cfg: &JobConfig) -> Result<String, CliError> {
    std::fs::read_to_string(&cfg.input).map_err(|source| CliError::Io { path: cfg.input.display().to_string(), source })
}

fn system(cfg: &JobConfig, text: &str) -> Result<ParametricSystem, CliError> {
    let sys = parse_system(text)?;
    match &cfg.x_order {
        Some(names) => {
            let perm = sys.x_order_from_names(names).map_err(|e| InputError::Invalid(e.to_string()))?;
            sys.with_x_order(&perm).map_err(|e| InputError::Invalid(e.to_string()).into())
        }
        None => Ok(sys),
    }
}

fn options(cfg: &JobConfig) -> ClassifyOptions {
    ClassifyOptions { fast_mode: cfg.fast_mode.into(), lambda: cfg.lambda, ..ClassifyOptions::with_seed(cfg.seed) }
}

fn matrix(sys: &ParametricSystem, cfg: &JobConfig) -> Result<HermiteMatrix, CliError> {
    Ok(match cfg.lambda {
        Some(l) => interp_hermite(sys, Some(l), cfg.seed)?,
        None => drl_matrix(sys)?,
    })
}

fn render_matrix(h: &HermiteMatrix) -> String {
    let rows: Vec<String> = h.render().iter().map(|r| format!("[{}]", r.join(", "))).collect();
    format!("[{}]\n", rows.join(",\n "))
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

/// Executes the job and returns what should be printed and written.
pub fn run(cfg: &JobConfig) -> Result<Output, CliError> {
    let text = read(cfg)?;
    if cfg.mode == Mode::SamplePoints {
        return run_sample_points(&text);
    }
    let sys = system(cfg, &text)?;
    let opts = options(cfg);
    let mut out = Output::default();
    if cfg.print_matrix || cfg.mode == Mode::MatrixOnly {
        let h = matrix(&sys, cfg)?;
        let basis = h.basis().render(sys.ctx());
        let _ = writeln!(out.text, "basis: {}", basis.join(", "));
        out.text.push_str(&render_matrix(&h));
        if cfg.mode == Mode::MatrixOnly {
            let mut doc = json!({ "seed": cfg.seed, "x_order": sys.ctx().vars(), "matrix": h });
            if let Some(p) = cfg.prime {
                let probe = modp_minor_probe(&h, p, cfg.seed).map_err(ClassifyError::from)?;
                let _ = writeln!(out.text, "mod-{p} minor probe: {probe}");
                doc["modp_probe"] = json!({ "prime": p, "value": probe });
            }
            out.json = pretty(&doc);
            return Ok(out);
        }
    }
    let result = match cfg.mode {
        Mode::HermiteWeak => classify::weak_rrc_hermite(&sys, &opts)?,
        Mode::HermiteFull => classify::rrc_hermite(&sys, &opts)?,
        Mode::Sturm => classify::rrc_sturm(&sys, &opts)?,
        Mode::CrossValidate => {
            let rep = classify::cross_validate(&sys, &opts)?;
            let _ = writeln!(
                out.text,
                "agreement at {} points; counts {:?} (Hermite), {:?} (Sturm)",
                rep.checked, rep.hermite_counts, rep.sturm_counts
            );
            out.json = pretty(&json!({
                "algorithm": "cross-validate",
                "x_order": sys.ctx().vars(),
                "seed": cfg.seed,
                "hermite_counts": rep.hermite_counts,
                "sturm_counts": rep.sturm_counts,
                "checked": rep.checked,
            }));
            return Ok(out);
        }
        Mode::MatrixOnly | Mode::SamplePoints => unreachable!("handled above"),
    };
    let _ = writeln!(out.text, "{} cells, counts {:?}", result.cells.len(), result.counts());
    out.text.push_str(&result.render_text());
    out.json = result.to_json();
    Ok(out)
}

/// Sample points of the polynomials over all declared names.
fn run_sample_points(text: &str) -> Result<Output, CliError> {
    let raw = scan(text)?;
    let names: Vec<&str> = raw.params.iter().chain(&raw.vars).map(String::as_str).collect();
    let ctx = VarContext::new(&names, &[]).map_err(InputError::from)?;
    let polys = polys_over(&raw, &ctx)?;
    let points = sample_points(&ctx, &polys).map_err(ClassifyError::from)?;
    let mut out = Output::default();
    let mut rows = Vec::with_capacity(points.len());
    for p in &points {
        let signs: Vec<i8> = polys.iter().map(|g| sign(&g.evaluate(p).expect("full point"))).collect();
        let coords: Vec<String> = p.iter().map(ToString::to_string).collect();
        let _ = writeln!(out.text, "({}) signs {:?}", coords.join(", "), signs);
        rows.push(json!({ "point": coords, "signs": signs }));
    }
    out.json = pretty(&json!({ "variables": names, "points": rows }));
    Ok(out)
}

fn sign(r: &rrc_core::arith::Rational) -> i8 {
    use num_traits::Signed;
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}
