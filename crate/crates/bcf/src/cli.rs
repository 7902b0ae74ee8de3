//! Command-line front end.  Problems are JSON files with exact
//! rational coefficients given as strings, e.g.
//!
//! ```json
//! { "x": "0", "residue": "-1", "a": ["0", "1", "0", "1"] }
//! ```
//!
//! Exit codes: 0 for solvable input, 2 for unsolvable input, 1 for any
//! other error (bad file, unsupported request, oracle mismatch).

use crate::arith::{format_crat, format_rat, parse_crat, parse_rat, rat_to_f64, CRat};
use crate::rational::Poly;
use crate::series::ProblemData;
use crate::solver::{self, Solution, Tail};
use crate::verify::{self, ToleranceConfig};
use crate::Error;
use clap::{Parser, Subcommand};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};
use std::path::PathBuf;

#[derive(Parser)]
#[command(name = "bcf", version, about = "Boundary interpolation in the Pick class")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the solvability verdict and Hankel classification.
    Classify { file: PathBuf },
    /// Construct a solution (exact when possible).
    Solve {
        file: PathBuf,
        /// Tail parameter: a constant like "1/2" or "1+2i", or
        /// "affine:slope,intercept", or "mobius:pole,offset".
        #[arg(long, default_value = "0")]
        tail: String,
    },
    /// Print the parameter table and both parametrizations
    /// (indeterminate real problems only).
    Params { file: PathBuf },
    /// Run the floating-point oracle suite against the exact verdict
    /// and the constructed solution.
    Verify {
        file: PathBuf,
        /// Upper-half-plane sample count.
        #[arg(long)]
        grid: Option<usize>,
        /// Tolerance overrides, e.g. --tol taylor_rel_tol=1e-8.
        #[arg(long = "tol")]
        tol: Vec<String>,
    },
    /// Sample a constructed solution at random upper-half-plane points.
    Sample {
        file: PathBuf,
        #[arg(long, default_value_t = 1000)]
        grid: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "0")]
        tail: String,
    },
}

#[derive(serde::Deserialize)]
struct ProblemFile {
    x: String,
    #[serde(default)]
    residue: Option<String>,
    a: Vec<String>,
}

fn load_problem(path: &PathBuf) -> Result<ProblemData, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let raw: ProblemFile =
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let x = parse_rat(&raw.x).map_err(|e| format!("field \"x\": {e}"))?;
    let residue = match &raw.residue {
        Some(s) => Some(parse_rat(s).map_err(|e| format!("field \"residue\": {e}"))?),
        None => None,
    };
    if raw.a.is_empty() {
        return Err("field \"a\": at least a^0 is required".into());
    }
    let mut a = Vec::with_capacity(raw.a.len());
    for (k, s) in raw.a.iter().enumerate() {
        a.push(parse_crat(s).map_err(|e| format!("field \"a\"[{k}]: {e}"))?);
    }
    Ok(ProblemData::new(x, residue, a))
}

fn parse_tail(s: &str) -> Result<Tail, String> {
    fn pair(rest: &str, what: &str) -> Result<(crate::Rat, crate::Rat), String> {
        let (a, b) = rest
            .split_once(',')
            .ok_or_else(|| format!("{what} tail needs two comma-separated values"))?;
        Ok((parse_rat(a.trim())?, parse_rat(b.trim())?))
    }
    if let Some(rest) = s.strip_prefix("affine:") {
        let (slope, intercept) = pair(rest, "affine")?;
        Ok(Tail::Affine { slope, intercept })
    } else if let Some(rest) = s.strip_prefix("mobius:") {
        let (pole, offset) = pair(rest, "mobius")?;
        Ok(Tail::Mobius { pole, offset })
    } else {
        Ok(Tail::Constant(parse_crat(s)?))
    }
}

fn jrats(v: &[crate::Rat]) -> Value {
    Value::Array(v.iter().map(|r| Value::String(format_rat(r))).collect())
}

fn jpoly(p: &Poly) -> Value {
    jrats(&p.coeffs)
}

fn verdict_json(v: &solver::Verdict) -> Value {
    json!({
        "status": serde_json::to_value(v.status).unwrap(),
        "reason": serde_json::to_value(v.reason).unwrap(),
        "rho": v.rho,
        "m": v.m,
        "rank": v.rank,
        "determinacy_basis": serde_json::to_value(v.determinacy_basis).unwrap(),
        "classification": {
            "tag": serde_json::to_value(v.classification.tag).unwrap(),
            "rank": v.classification.rank,
            "leading_minors": jrats(&v.classification.leading_minors),
        },
    })
}

fn solution_json(s: &Solution) -> Value {
    match s {
        Solution::Exact(rf) => {
            let mut obj = json!({
                "type": "exact",
                "num": jpoly(&rf.num),
                "den": jpoly(&rf.den),
                "degree": rf.degree(),
            });
            if rf.has_pole() {
                obj["pole_node"] = Value::String(format_rat(&rf.pole_node));
                obj["pole_residue"] = Value::String(format_rat(&rf.pole_residue));
            }
            obj
        }
        Solution::Numeric { description, .. } => json!({
            "type": "numeric",
            "description": description,
        }),
    }
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).unwrap());
}

/// Maps solver errors to exit codes: unsolvable data is 2, everything
/// else is 1.
fn fail(e: Error) -> i32 {
    match e {
        Error::Unsolvable(v) => {
            print_json(&verdict_json(&v));
            2
        }
        other => {
            eprintln!("error: {other}");
            1
        }
    }
}

fn apply_tol_overrides(tol: &mut ToleranceConfig, specs: &[String]) -> Result<(), String> {
    for spec in specs {
        let (key, val) = spec
            .split_once('=')
            .ok_or_else(|| format!("--tol expects key=value, got {spec:?}"))?;
        let fval = || val.parse::<f64>().map_err(|e| format!("--tol {key}: {e}"));
        let uval = || val.parse::<usize>().map_err(|e| format!("--tol {key}: {e}"));
        match key {
            "psd_eig_tol" => tol.psd_eig_tol = fval()?,
            "taylor_rel_tol" => tol.taylor_rel_tol = fval()?,
            "im_floor" => tol.im_floor = fval()?,
            "quad_points" => tol.quad_points = uval()?,
            "fallback_radius" => tol.fallback_radius = fval()?,
            "pick_grid" => tol.pick_grid = uval()?,
            other => return Err(format!("unknown tolerance key {other:?}")),
        }
    }
    Ok(())
}

pub fn run() -> i32 {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Classify { file } => {
            let p = match load_problem(&file) {
                Ok(p) => p,
                Err(e) => return err_msg(&e),
            };
            match solver::check_solvable(&p) {
                Ok(v) => {
                    let code =
                        if v.status == solver::VerdictStatus::Unsolvable { 2 } else { 0 };
                    print_json(&verdict_json(&v));
                    code
                }
                Err(e) => fail(e),
            }
        }
        Cmd::Solve { file, tail } => {
            let p = match load_problem(&file) {
                Ok(p) => p,
                Err(e) => return err_msg(&e),
            };
            let tail = match parse_tail(&tail) {
                Ok(t) => t,
                Err(e) => return err_msg(&e),
            };
            match solver::solve(&p, &tail) {
                Ok(sol) => {
                    let verdict = solver::check_solvable(&p)
                        .ok()
                        .map(|v| verdict_json(&v))
                        .unwrap_or(Value::Null);
                    print_json(&json!({
                        "verdict": verdict,
                        "solution": solution_json(&sol),
                    }));
                    0
                }
                Err(e) => fail(e),
            }
        }
        Cmd::Params { file } => {
            let p = match load_problem(&file) {
                Ok(p) => p,
                Err(e) => return err_msg(&e),
            };
            match solver::parametrize(&p) {
                Ok(pz) => {
                    print_json(&json!({
                        "s": jrats(&pz.params.s),
                        "t": jrats(&pz.params.t),
                        "s_extra": pz.params.s_extra.as_ref().map(|r| format_rat(r)),
                        "tail_constant":
                            pz.params.tail_constant.as_ref().map(|r| format_rat(r)),
                        "m": pz.m,
                        "k_const": format_rat(&pz.k_const),
                        "lft": {
                            "a": jpoly(&pz.lft.a),
                            "b": jpoly(&pz.lft.b),
                            "c": jpoly(&pz.lft.c),
                            "d": jpoly(&pz.lft.d),
                        },
                    }));
                    0
                }
                Err(e) => fail(e),
            }
        }
        Cmd::Verify { file, grid, tol } => {
            let p = match load_problem(&file) {
                Ok(p) => p,
                Err(e) => return err_msg(&e),
            };
            let mut cfg = ToleranceConfig::default();
            if let Some(g) = grid {
                cfg.pick_grid = g;
            }
            if let Err(e) = apply_tol_overrides(&mut cfg, &tol) {
                return err_msg(&e);
            }
            match verify::verify_problem(&p, &cfg) {
                Ok(report) => {
                    print_json(&serde_json::to_value(&report).unwrap());
                    if report.verdict_status == "Unsolvable" {
                        2
                    } else if report.ok {
                        0
                    } else {
                        1
                    }
                }
                Err(e) => fail(e),
            }
        }
        Cmd::Sample { file, grid, seed, tail } => {
            let p = match load_problem(&file) {
                Ok(p) => p,
                Err(e) => return err_msg(&e),
            };
            let tail = match parse_tail(&tail) {
                Ok(t) => t,
                Err(e) => return err_msg(&e),
            };
            match solver::solve(&p, &tail) {
                Ok(sol) => {
                    let x = rat_to_f64(&p.x);
                    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
                    let mut min_im = f64::INFINITY;
                    let mut head = Vec::new();
                    for k in 0..grid {
                        let re = x + rng.gen_range(-10.0..10.0);
                        let im = 10f64.powf(rng.gen_range(-3.0..1.0));
                        let z = Complex64::new(re, im);
                        let v = sol.eval(z);
                        min_im = min_im.min(v.im);
                        if k < 3 {
                            head.push(json!({
                                "z": [z.re, z.im],
                                "f": [v.re, v.im],
                            }));
                        }
                    }
                    print_json(&json!({
                        "count": grid,
                        "seed": seed,
                        "min_im": min_im,
                        "head": head,
                    }));
                    0
                }
                Err(e) => fail(e),
            }
        }
    }
}

fn err_msg(e: &str) -> i32 {
    eprintln!("error: {e}");
    1
}

/// Formats a complex target list for messages and logs.
pub fn format_targets(a: &[CRat]) -> String {
    a.iter().map(format_crat).collect::<Vec<_>>().join(", ")
}
