//! Command implementations behind the `cycres` binary. Each command returns
//! its output and an exit code so tests and bindings can drive it directly.

use crate::cyc::{build_complex, ComplexExport, CycComplex};
use crate::error::{CycError, Result};
use crate::graph::{classify, laplacian, parse_digraph, prepare, MatrixClass};
use crate::verify::{full_verify, graded_homology_oracle, budgeted_max_degree, monomials_by_degree, strand, Status, VerifyOptions};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_CLASS: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

/// Settings shared by all commands.
#[derive(Clone, Debug)]
pub struct RunConfig {
    /// 1-based root vertex; the last vertex when absent.
    pub omega: Option<usize>,
    pub max_degree: Option<u128>,
    pub degree_cap: Option<u128>,
    pub strand_budget: u128,
    pub format: Format,
    pub seed: u64,
    pub require_minimal: bool,
    /// Zero all timings so reports are byte-stable.
    pub no_timings: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        let v = VerifyOptions::default();
        RunConfig {
            omega: None,
            max_degree: None,
            degree_cap: v.degree_cap,
            strand_budget: v.strand_budget,
            format: Format::Text,
            seed: v.seed,
            require_minimal: false,
            no_timings: false,
        }
    }
}

/// What a command prints and how it exits. `artifact` is the complex export
/// of `resolve`, written separately when an output path is given.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandOutput {
    pub stdout: String,
    pub code: i32,
    pub artifact: Option<String>,
}

impl CommandOutput {
    fn ok(stdout: String) -> Self {
        CommandOutput { stdout, code: EXIT_PASS, artifact: None }
    }
}

pub fn exit_code(e: &CycError) -> i32 {
    match e {
        CycError::NotIrreducible(_) | CycError::NotStronglyConnected(_) => EXIT_CLASS,
        _ => EXIT_INVALID,
    }
}

fn big_json(v: &BigInt) -> Value {
    i64::try_from(v).map(Value::from).unwrap_or_else(|_| Value::String(v.to_string()))
}

fn tuple<T: std::fmt::Display>(xs: &[T]) -> String {
    format!("({})", xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

fn pretty(v: &impl Serialize) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

/// A complex from either a digraph file or a complex export with differentials.
pub fn load_complex(text: &str, cfg: &RunConfig) -> Result<CycComplex> {
    let value: Value = serde_json::from_str(text).map_err(|e| CycError::Parse(e.to_string()))?;
    if value.get("diffs").is_some() {
        let doc: ComplexExport = serde_json::from_value(value).map_err(|e| CycError::Parse(e.to_string()))?;
        return CycComplex::from_export(&doc);
    }
    let g = parse_digraph(text)?;
    let omega = cfg.omega.unwrap_or(g.n());
    if omega == 0 || omega > g.n() {
        return Err(CycError::Validation(format!("omega {omega} is outside 1..{}", g.n())));
    }
    let p = prepare(&g, omega - 1)?;
    build_complex(&p.matrix)
}

pub fn cmd_classify(text: &str, cfg: &RunConfig) -> Result<CommandOutput> {
    let g = parse_digraph(text)?;
    let l = laplacian(&g);
    let class = classify(&l);
    let mu = l.mu();
    let label = match class {
        MatrixClass::CB => "CB (reducible)",
        MatrixClass::ICB => "ICB",
        MatrixClass::PCB => "PCB",
    };
    let mut doc = json!({
        "class": label,
        "mu": mu.iter().map(big_json).collect::<Vec<_>>(),
        "echelon_as_given": l.echelon.is_some(),
    });
    let mut text_out = format!("class: {label}\nmu: {}\n", tuple(&mu));
    if class.is_irreducible() {
        let nu = l.nu()?;
        let omega = cfg.omega.unwrap_or(g.n());
        if omega == 0 || omega > g.n() {
            return Err(CycError::Validation(format!("omega {omega} is outside 1..{}", g.n())));
        }
        let p = prepare(&g, omega - 1)?;
        let ech = p.matrix.echelon.clone().expect("prepared matrix is in echelon form");
        let perm: Vec<usize> = p.perm.iter().map(|v| v + 1).collect();
        doc["nu"] = Value::Array(nu.iter().map(big_json).collect());
        doc["delta"] = json!(ech.delta);
        doc["blocks"] = json!(ech.q);
        doc["perm"] = json!(perm);
        text_out.push_str(&format!(
            "nu: {}\ndelta: {}\nblocks: {}\nechelon as given: {}\nrelabeling: {}\n",
            tuple(&nu),
            ech.delta,
            tuple(&ech.q),
            if l.echelon.is_some() { "yes" } else { "no" },
            tuple(&perm)
        ));
    }
    Ok(CommandOutput::ok(match cfg.format {
        Format::Text => text_out,
        Format::Json => pretty(&doc)?,
    }))
}

pub fn cmd_resolve(text: &str, cfg: &RunConfig) -> Result<CommandOutput> {
    let c = load_complex(text, cfg)?;
    let export = pretty(&c.export())?;
    let (minimal, _) = c.minimality_check();
    let stdout = match cfg.format {
        Format::Text => format!("ranks: {}\nminimal: {minimal}\n", tuple(&c.ranks())),
        Format::Json => pretty(&json!({"ranks": c.ranks(), "minimal": minimal, "shifts": c.shifts}))?,
    };
    Ok(CommandOutput { stdout, code: EXIT_PASS, artifact: Some(export) })
}

fn verify_options(cfg: &RunConfig) -> VerifyOptions {
    VerifyOptions {
        d_max: cfg.max_degree,
        degree_cap: cfg.degree_cap,
        strand_budget: cfg.strand_budget,
        seed: cfg.seed,
        require_minimal: cfg.require_minimal,
        ..VerifyOptions::default()
    }
}

pub fn cmd_verify(text: &str, cfg: &RunConfig) -> Result<CommandOutput> {
    let c = load_complex(text, cfg)?;
    let mut report = full_verify(&c, &format!("n={}", c.n), &verify_options(cfg));
    if cfg.no_timings {
        report.checks.iter_mut().for_each(|r| r.millis = 0);
    }
    let code = if report.all_passed() { EXIT_PASS } else { EXIT_VERIFY_FAILED };
    let stdout = match cfg.format {
        Format::Text => report.to_text(),
        Format::Json => pretty(&report)?,
    };
    Ok(CommandOutput { stdout, code, artifact: None })
}

pub fn cmd_gb(text: &str, cfg: &RunConfig) -> Result<CommandOutput> {
    let c = load_complex(text, cfg)?;
    let entries: Vec<(String, String)> = (0..c.bases[1].len()).map(|j| (c.bases[1][j].to_string(), c.image_poly(j).to_text())).collect();
    let stdout = match cfg.format {
        Format::Text => entries.iter().map(|(p, f)| format!("{p}: {f}\n")).collect(),
        Format::Json => pretty(&entries.iter().map(|(p, f)| json!({"partition": p, "poly": f})).collect::<Vec<_>>())?,
    };
    Ok(CommandOutput::ok(stdout))
}

pub fn cmd_homology(text: &str, cfg: &RunConfig) -> Result<CommandOutput> {
    let c = load_complex(text, cfg)?;
    let d_max = cfg.max_degree.unwrap_or_else(|| budgeted_max_degree(&c, cfg.degree_cap, cfg.strand_budget));
    let outcome = graded_homology_oracle(&c, d_max);
    let by_degree = monomials_by_degree(&c.ctx.nu, d_max);
    let strands: Vec<Value> = (0..=d_max)
        .map(|d| {
            let s = strand(&c, &by_degree, d);
            json!({"degree": d as u64, "dims": s.dims, "ranks": s.ranks})
        })
        .collect();
    let status = if outcome.passed() { Status::Pass } else { Status::Fail };
    let stdout = match cfg.format {
        Format::Text => {
            let mut s = format!("homology up to degree {d_max}: {}\n", if outcome.passed() { "pass" } else { "FAIL" });
            if let Some(w) = &outcome.witness {
                s.push_str(&format!("witness: {w}\n"));
            }
            for v in &strands {
                s.push_str(&format!("  d={} dims={} ranks={}\n", v["degree"], v["dims"], v["ranks"]));
            }
            s
        }
        Format::Json => pretty(&json!({"d_max": d_max as u64, "status": status, "witness": outcome.witness, "strands": strands}))?,
    };
    Ok(CommandOutput { stdout, code: if outcome.passed() { EXIT_PASS } else { EXIT_VERIFY_FAILED }, artifact: None })
}
