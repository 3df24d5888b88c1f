//! Command implementations. Each returns the bytes to emit so callers and
//! tests see exactly what would be written.

use std::time::Instant;

use diracpt_core::spectrum::{self, GridRow, DEFAULT_TOL};
use diracpt_core::wavefunction::{self, GridSpec, Normalization, Spacing};
use diracpt_core::{Error, ModelParams, QuantumNumbers};
use serde_json::{json, Value};

use crate::checks;
use crate::cli::{
    Format, NormalizeArg, OnOff, PhysicsArgs, SpacingArg, SpectrumArgs, Table1Args, ValidateArgs,
    WavefunctionArgs,
};
use crate::format::{fmt_f64, num, to_csv, to_json};
use crate::reference::{table1, TABLE1_CSV};
use crate::report::ComparisonReport;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad flag values; exit code 2.
    #[error("{0}")]
    Usage(String),
    /// A well-posed request with no answer, such as a missing bound state.
    #[error("{0}")]
    Domain(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) | CliError::Io(_) => 1,
        }
    }
}

/// Output of a command: the text and whether every check passed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Emitted {
    pub text: String,
    /// Extra lines for standard error.
    pub notes: Vec<String>,
    pub success: bool,
}

impl Emitted {
    fn ok(text: String) -> Self {
        Self {
            text,
            notes: Vec::new(),
            success: true,
        }
    }
}

fn params(phys: &PhysicsArgs, alpha: f64) -> Result<ModelParams, CliError> {
    ModelParams::new(phys.mu, phys.v0, phys.s0, alpha, phys.c1)
        .map_err(|e| CliError::Usage(e.to_string()))
}

pub fn spectrum(args: &SpectrumArgs) -> Result<Emitted, CliError> {
    if args.n_max == 0 {
        return Err(CliError::Usage("--n-max must be at least 1".into()));
    }
    if args.dims.iter().any(|&d| d < 2) {
        return Err(CliError::Usage("--dim must be at least 2".into()));
    }
    for &alpha in &args.alphas {
        params(&args.physics, alpha)?;
    }
    let base = params(&args.physics, args.alphas[0])?;
    let n_values: Vec<u32> = (1..=args.n_max).collect();
    let rows = spectrum::spectrum_grid(&base, &args.dims, &n_values, &args.alphas, DEFAULT_TOL);
    let text = match args.output.format {
        Format::Csv => {
            let body: Vec<Vec<String>> = rows.iter().map(spectrum_fields).collect();
            to_csv(
                &["dim", "n", "alpha", "energy", "eps", "delta", "status"],
                &body,
            )
        }
        Format::Json => to_json(&Value::Array(rows.iter().map(spectrum_object).collect())),
    };
    Ok(Emitted::ok(text))
}

fn status(row: &GridRow) -> &'static str {
    match &row.outcome {
        Ok(_) => "ok",
        Err(Error::NoBoundState(_)) => "absent",
        Err(_) => "error",
    }
}

fn spectrum_fields(row: &GridRow) -> Vec<String> {
    let (e, eps, delta) = match &row.outcome {
        Ok(sp) => (fmt_f64(sp.energy), fmt_f64(sp.eps), fmt_f64(sp.delta)),
        Err(_) => (String::new(), String::new(), String::new()),
    };
    vec![
        row.dim.to_string(),
        row.n.to_string(),
        fmt_f64(row.alpha),
        e,
        eps,
        delta,
        status(row).to_owned(),
    ]
}

fn spectrum_object(row: &GridRow) -> Value {
    let (e, eps, delta) = match &row.outcome {
        Ok(sp) => (num(sp.energy), num(sp.eps), num(sp.delta)),
        Err(_) => (Value::Null, Value::Null, Value::Null),
    };
    json!({
        "dim": row.dim,
        "n": row.n,
        "alpha": num(row.alpha),
        "energy": e,
        "eps": eps,
        "delta": delta,
        "status": status(row),
    })
}

pub fn wavefunction(args: &WavefunctionArgs) -> Result<Emitted, CliError> {
    let p = params(&args.physics, args.alpha)?;
    let q = QuantumNumbers::new(args.nr, args.ell, args.dim)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    if args.samples < 2 {
        return Err(CliError::Usage("--samples must be at least 2".into()));
    }
    if let Some(r) = args.rmax {
        if !r.is_finite() || r <= 0.0 {
            return Err(CliError::Usage("--rmax must be positive".into()));
        }
    }
    let sp = spectrum::solve_level(&p, &q, DEFAULT_TOL).map_err(|e| match e {
        Error::NoBoundState(rep) => CliError::Domain(format!(
            "no bound state for D={} n_r={} l={}: {} (existence margin {})",
            args.dim,
            args.nr,
            args.ell,
            rep.reason,
            fmt_f64(rep.margin)
        )),
        other => CliError::Domain(other.to_string()),
    })?;
    let spacing = match args.spacing {
        SpacingArg::Linear => Spacing::Linear,
        SpacingArg::Log => Spacing::Log,
        SpacingArg::Hybrid => Spacing::Hybrid,
    };
    let which = match args.normalize {
        NormalizeArg::Upper => Normalization::UpperOnly,
        NormalizeArg::Both => Normalization::BothComponents,
    };
    let mut spec = GridSpec::new(args.samples, spacing);
    if let Some(r) = args.rmax {
        spec = spec.with_r_max(r);
    }
    let rf = wavefunction::sample_with(&sp, &spec, which)
        .map_err(|e| CliError::Domain(e.to_string()))?;
    let norm_line = format!("# norm={}", rf.norm_method.as_str());
    let mut out = Emitted::ok(String::new());
    out.text = match args.output.format {
        Format::Csv => {
            let body: Vec<Vec<String>> = rf
                .grid
                .iter()
                .zip(&rf.upper)
                .zip(&rf.lower)
                .map(|((r, f), g)| vec![fmt_f64(*r), fmt_f64(*f), fmt_f64(*g)])
                .collect();
            format!("{norm_line}\n{}", to_csv(&["r", "F", "G"], &body))
        }
        Format::Json => {
            // JSON has no comment syntax, so the method goes to stderr.
            out.notes.push(norm_line);
            let items = rf
                .grid
                .iter()
                .zip(&rf.upper)
                .zip(&rf.lower)
                .map(|((r, f), g)| json!({"r": num(*r), "F": num(*f), "G": num(*g)}))
                .collect();
            to_json(&Value::Array(items))
        }
    };
    Ok(out)
}

pub fn table1_report(args: &Table1Args) -> Result<Emitted, CliError> {
    if args.dump {
        return Ok(Emitted::ok(TABLE1_CSV.to_owned()));
    }
    let cells = table1();
    let report = ComparisonReport::build(&cells, args.oracle == OnOff::On);
    Ok(Emitted::ok(to_json(&report.to_value())))
}

pub fn validate(args: &ValidateArgs) -> Result<Emitted, CliError> {
    let start = Instant::now();
    let results = checks::run_suite(&checks::SuiteOptions {
        oracle: !args.fast,
        seed: args.seed,
    });
    let mut text = String::new();
    for r in &results {
        text.push_str(&r.line());
        text.push('\n');
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    text.push_str(&format!(
        "{} of {} checks passed\n",
        results.len() - failed,
        results.len()
    ));
    let mut out = Emitted::ok(text);
    out.success = failed == 0;
    // Timing varies between runs, so it stays off standard output.
    out.notes
        .push(format!("elapsed {:.2}s", start.elapsed().as_secs_f64()));
    Ok(out)
}
