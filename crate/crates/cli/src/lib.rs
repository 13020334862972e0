//! Command-line front end for `ising-braid`.
//!
//! Every subcommand prints one JSON document. Exit codes: 0 success, 1 a
//! verification that ran but did not hold, 2 a usage or input error.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde_json::{json, Value};

use ising_braid::compiler::{self, BraidWord, SearchOptions};
use ising_braid::continuation_oracle::{self as oracle, OracleOptions, QhConfig};
use ising_braid::exact_arith::{cyclo_to_json, matrix_from_json, matrix_to_json};
use ising_braid::group_tools::{
    self, RelationMode, RelationReport, Verdict, DEFAULT_ELEMENT_LIMIT,
};
use ising_braid::rep_builder::{self, even_r_matrix, reference_matrices};
use ising_braid::{CMatrix, Convention, CycloNumber, RepSpec};

pub const ELEMENT_LIMIT_ENV: &str = "ISING_BRAID_ELEMENT_LIMIT";

#[derive(Debug, Parser)]
#[command(
    name = "ising-braid",
    version,
    about = "Exact Ising-anyon braid representations"
)]
struct Cli {
    /// Write the JSON result to this file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args)]
struct RepArgs {
    /// Number of anyons, an even number >= 4.
    #[arg(long, default_value_t = 4)]
    anyons: usize,

    /// Phase convention: wavefunction or quantumgroup.
    #[arg(long, default_value = "wavefunction")]
    convention: String,

    /// Use the parity-projected representation (the default).
    #[arg(long, conflicts_with = "unprojected")]
    projected: bool,

    /// Use the full unprojected tensor-product representation.
    #[arg(long)]
    unprojected: bool,
}

impl RepArgs {
    fn spec(&self) -> Result<RepSpec, String> {
        let convention: Convention = self
            .convention
            .parse()
            .map_err(|e: ising_braid::Error| e.to_string())?;
        RepSpec::new(self.anyons, convention, !self.unprojected).map_err(|e| e.to_string())
    }
}

#[derive(Debug, Clone, Args)]
struct TargetArgs {
    /// Named gate: I, X, Z, H, T, CNOT, CZ.
    #[arg(long, conflicts_with = "target_file")]
    target: Option<String>,

    /// Target matrix in the JSON matrix format.
    #[arg(long)]
    target_file: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Export the braid generators.
    Gens {
        #[command(flatten)]
        rep: RepArgs,
    },
    /// Export the parity projector, qubit encoding and optionally a projected generator.
    Project {
        #[command(flatten)]
        rep: RepArgs,
        /// Generator index to project.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Enumerate the finite image of the braid group.
    Enumerate {
        #[command(flatten)]
        rep: RepArgs,
        /// Maximum number of elements (default from the environment or 10^7).
        #[arg(long)]
        limit: Option<usize>,
        /// Include every element in the output.
        #[arg(long)]
        dump: bool,
    },
    /// Check braid relations, Yang-Baxter and projector commutation.
    Relations {
        #[command(flatten)]
        rep: RepArgs,
    },
    /// Check that a braid word realizes a target gate.
    Verify {
        #[command(flatten)]
        rep: RepArgs,
        /// Whitespace-separated signed generator indices.
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[command(flatten)]
        target: TargetArgs,
        #[arg(long)]
        up_to_phase: bool,
    },
    /// Breadth-first search for a shortest braid word realizing a target.
    Synthesize {
        #[command(flatten)]
        rep: RepArgs,
        #[command(flatten)]
        target: TargetArgs,
        #[arg(long, default_value_t = 12)]
        max_len: usize,
        #[arg(long)]
        up_to_phase: bool,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Membership of a target in the enumerated image.
    Contains {
        #[command(flatten)]
        rep: RepArgs,
        #[command(flatten)]
        target: TargetArgs,
        #[arg(long)]
        up_to_phase: bool,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Numerical analytic continuation of the 4-quasihole wave functions.
    Oracle {
        /// Four quasihole positions as a JSON array of [re, im] pairs.
        #[arg(long)]
        eta: Option<String>,
        /// Electron positions as a JSON array of [re, im] pairs.
        #[arg(long)]
        z: Option<String>,
        #[arg(long, default_value_t = 1)]
        a: usize,
        #[arg(long, default_value_t = 2)]
        b: usize,
        /// Number of full turns; 0.5 is one exchange.
        #[arg(long, default_value_t = 0.5, allow_hyphen_values = true)]
        turns: f64,
        #[arg(long, default_value_t = oracle::DEFAULT_STEPS)]
        steps: usize,
        /// Exponent of the Abelian prefactor.
        #[arg(long, default_value_t = oracle::DEFAULT_ABELIAN_EXPONENT, allow_hyphen_values = true)]
        gamma: f64,
        /// Leave out the Abelian prefactor.
        #[arg(long)]
        no_abelian: bool,
        /// Maximum entry error against the exact matrix for success.
        #[arg(long, default_value_t = 1e-8)]
        tolerance: f64,
    },
    /// Thermal error-rate estimate (k_B T/Δ)·exp(−Δ/k_B T).
    ErrorRate {
        /// Δ/(k_B T).
        #[arg(long, conflicts_with_all = ["temperature_mk", "gap_mk"])]
        ratio: Option<f64>,
        /// Temperature in millikelvin.
        #[arg(long, requires = "gap_mk")]
        temperature_mk: Option<f64>,
        /// Energy gap in millikelvin.
        #[arg(long, requires = "temperature_mk")]
        gap_mk: Option<f64>,
    },
}

/// `(k_B T/Δ)·exp(−Δ/k_B T)` as a function of `ratio = Δ/(k_B T)`.
pub fn error_rate(ratio: f64) -> Result<f64, String> {
    if !(ratio > 0.0) || !ratio.is_finite() {
        return Err(format!(
            "ratio must be a positive finite number, got {ratio}"
        ));
    }
    Ok((-ratio).exp() / ratio)
}

enum Outcome {
    Ok(Value),
    Failed(Value),
}

fn phase_json(p: &CycloNumber) -> Value {
    json!({ "coeffs": cyclo_to_json(p), "text": p.to_string() })
}

fn complex_json(c: Complex64) -> Value {
    json!([c.re, c.im])
}

fn report_json(r: &RelationReport) -> Value {
    let verdict = match &r.verdict {
        Verdict::Exact => json!("exact"),
        Verdict::Projective(p) => json!({ "projective": phase_json(p) }),
        Verdict::Fail => json!("fail"),
    };
    json!({ "relation": r.relation.to_string(), "verdict": verdict })
}

fn named_gate(name: &str, dim: usize) -> Result<CMatrix, String> {
    let c = reference_matrices();
    let z = CycloNumber::zeta_pow;
    let m = match name.to_ascii_uppercase().as_str() {
        "I" => CMatrix::identity(dim),
        "X" => CMatrix::from_zeta_powers(&[&[None, Some(0)], &[Some(0), None]]).expect("square"),
        "Z" => CMatrix::diag(vec![z(0), z(4)]),
        "H" => c["H"].clone(),
        "T" => c["T"].clone(),
        "CNOT" => c["CNOT"].clone(),
        "CZ" => CMatrix::diag(vec![z(0), z(0), z(0), z(4)]),
        other => {
            return Err(format!(
                "unknown gate `{other}`; known: I, X, Z, H, T, CNOT, CZ"
            ))
        }
    };
    Ok(m)
}

fn load_target(t: &TargetArgs, dim: usize) -> Result<(String, CMatrix), String> {
    match (&t.target, &t.target_file) {
        (Some(name), None) => Ok((name.clone(), named_gate(name, dim)?)),
        (None, Some(path)) => {
            let text =
                std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            let m = matrix_from_json(&text).map_err(|e| format!("{}: {e}", path.display()))?;
            Ok((path.display().to_string(), m))
        }
        _ => Err("exactly one of --target or --target-file is required".into()),
    }
}

fn element_limit(flag: Option<usize>) -> Result<usize, String> {
    if let Some(l) = flag {
        return Ok(l);
    }
    match std::env::var(ELEMENT_LIMIT_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| format!("{ELEMENT_LIMIT_ENV} must be a positive integer, got `{v}`")),
        Err(_) => Ok(DEFAULT_ELEMENT_LIMIT),
    }
}

fn parse_points(text: &str) -> Result<Vec<Complex64>, String> {
    let pts: Vec<[f64; 2]> =
        serde_json::from_str(text).map_err(|e| format!("bad point list: {e}"))?;
    Ok(pts
        .into_iter()
        .map(|[re, im]| Complex64::new(re, im))
        .collect())
}

fn spec_json(spec: &RepSpec) -> Value {
    json!({
        "anyons": spec.anyons(),
        "convention": spec.convention.as_str(),
        "projected": spec.projected,
        "dim": spec.dim(),
    })
}

fn execute(command: Command) -> Result<Outcome, String> {
    match command {
        Command::Gens { rep } => {
            let spec = rep.spec()?;
            let gens: Vec<Value> = rep_builder::generators(&spec)
                .iter()
                .map(matrix_to_json)
                .collect();
            let mut out = spec_json(&spec);
            out["generators"] = Value::Array(gens);
            Ok(Outcome::Ok(out))
        }
        Command::Project { rep, k } => {
            let spec = rep.spec()?;
            let n = spec.n_pairs();
            let p = rep_builder::parity_projector(n);
            let enc = rep_builder::qubit_basis_map(n);
            let basis: Vec<Value> = (0..1usize << enc.n_qubits())
                .map(|q| json!({ "qubits": enc.qubit_bits(q), "channels": enc.channel_bits(q) }))
                .collect();
            let mut out = json!({
                "anyons": spec.anyons(),
                "projector": matrix_to_json(&p),
                "rank": p.rank(),
                "basis": basis,
            });
            if let Some(k) = k {
                let g = rep_builder::project_generator(&spec, k).map_err(|e| e.to_string())?;
                out["k"] = json!(k);
                out["convention"] = json!(spec.convention.as_str());
                out["generator"] = matrix_to_json(&g);
            }
            Ok(Outcome::Ok(out))
        }
        Command::Enumerate { rep, limit, dump } => {
            let spec = rep.spec()?;
            let limit = element_limit(limit)?;
            let gens = rep_builder::generators(&spec);
            let image = group_tools::dimino_enumerate(&gens, limit).map_err(|e| e.to_string())?;
            let mut out = json!({
                "order": image.order(),
                "dim": image.dim(),
                "generators": gens.len(),
                "convention": spec.convention.as_str(),
                "anyons": spec.anyons(),
                "projected": spec.projected,
                "projective_order": image.projective_order(),
            });
            if let Ok(formula) = group_tools::read_order_formula(spec.anyons()) {
                out["closed_form_order"] = json!(formula.to_string());
                let f: f64 = formula.to_string().parse().unwrap_or(f64::NAN);
                out["order_over_closed_form"] = json!(image.order() as f64 / f);
            }
            if dump {
                out["elements"] =
                    Value::Array(image.elements().iter().map(matrix_to_json).collect());
            }
            Ok(Outcome::Ok(out))
        }
        Command::Relations { rep } => {
            let spec = rep.spec()?;
            let gens = rep_builder::generators(&spec);
            let artin = group_tools::check_artin_relations(&gens, RelationMode::Projective);
            let far = group_tools::check_far_commutativity(&gens);
            let ybe =
                group_tools::check_yang_baxter(&even_r_matrix()).map_err(|e| e.to_string())?;
            let commutes =
                group_tools::check_projector_commutation(&spec).map_err(|e| e.to_string())?;
            let ok = artin.iter().chain(&far).all(|r| r.verdict.holds()) && commutes;
            let out = json!({
                "spec": spec_json(&spec),
                "artin": artin.iter().map(report_json).collect::<Vec<_>>(),
                "far_commutation": far.iter().map(report_json).collect::<Vec<_>>(),
                "projector_commutes": commutes,
                "yang_baxter_even_r": report_json(&ybe),
            });
            Ok(if ok {
                Outcome::Ok(out)
            } else {
                Outcome::Failed(out)
            })
        }
        Command::Verify {
            rep,
            word,
            target,
            up_to_phase,
        } => {
            let spec = rep.spec()?;
            let word = BraidWord::parse(spec, &word).map_err(|e| e.to_string())?;
            let (name, target) = load_target(&target, spec.dim())?;
            let phase =
                compiler::verify_gate(&word, &target, up_to_phase).map_err(|e| e.to_string())?;
            let out = json!({
                "spec": spec_json(&spec),
                "word": word.to_string(),
                "target": name,
                "up_to_phase": up_to_phase,
                "match": phase.is_some(),
                "phase": phase.as_ref().map(phase_json),
            });
            Ok(if phase.is_some() {
                Outcome::Ok(out)
            } else {
                Outcome::Failed(out)
            })
        }
        Command::Synthesize {
            rep,
            target,
            max_len,
            up_to_phase,
            limit,
        } => {
            let spec = rep.spec()?;
            let (name, target) = load_target(&target, spec.dim())?;
            let opts = SearchOptions {
                max_len,
                up_to_phase,
                state_limit: element_limit(limit)?,
            };
            let result = compiler::synthesize(&spec, &target, opts).map_err(|e| e.to_string())?;
            let mut out = json!({
                "spec": spec_json(&spec),
                "target": name,
                "max_len": max_len,
                "up_to_phase": up_to_phase,
                "found": result.is_some(),
            });
            match result {
                Some(r) => {
                    out["word"] = json!(r.word.to_string());
                    out["length"] = json!(r.word.len());
                    out["phase"] = phase_json(&r.phase);
                    out["explored"] = json!(r.explored);
                    out["minimal"] = json!(r.minimal);
                    Ok(Outcome::Ok(out))
                }
                None => Ok(Outcome::Failed(out)),
            }
        }
        Command::Contains {
            rep,
            target,
            up_to_phase,
            limit,
        } => {
            let spec = rep.spec()?;
            let (name, target) = load_target(&target, spec.dim())?;
            if target.dim() != spec.dim() {
                return Err(format!(
                    "target is {0}x{0} but the representation is {1}x{1}",
                    target.dim(),
                    spec.dim()
                ));
            }
            let image = group_tools::dimino_enumerate(
                &rep_builder::generators(&spec),
                element_limit(limit)?,
            )
            .map_err(|e| e.to_string())?;
            Ok(Outcome::Ok(json!({
                "spec": spec_json(&spec),
                "target": name,
                "up_to_phase": up_to_phase,
                "order": image.order(),
                "contains": group_tools::contains(&image, &target, up_to_phase),
            })))
        }
        Command::Oracle {
            eta,
            z,
            a,
            b,
            turns,
            steps,
            gamma,
            no_abelian,
            tolerance,
        } => {
            let default = QhConfig::default_config();
            let eta: [Complex64; 4] = match eta {
                Some(t) => parse_points(&t)?
                    .try_into()
                    .map_err(|_| "--eta needs exactly four points".to_string())?,
                None => *default.eta(),
            };
            let z = match z {
                Some(t) => parse_points(&t)?,
                None => default.z().to_vec(),
            };
            let config = QhConfig::new(eta, z).map_err(|e| e.to_string())?;
            let opts = OracleOptions {
                steps,
                abelian_exponent: (!no_abelian).then_some(gamma),
                ..Default::default()
            };
            let result = oracle::continue_exchange(&config, a, b, turns, &opts)
                .map_err(|e| e.to_string())?;
            let matrix: Vec<Vec<Value>> = result
                .matrix
                .iter()
                .map(|row| row.iter().map(|&c| complex_json(c)).collect())
                .collect();
            let mut out = json!({
                "a": a,
                "b": b,
                "turns": turns,
                "steps": steps,
                "gamma": opts.abelian_exponent,
                "matrix": matrix,
                "error_estimate": result.error_estimate(),
            });
            // Adjacent exchanges have an exact counterpart: generator min(a,b)
            // raised to 2·turns in the projected 4-anyon representation.
            let (lo, hi) = (a.min(b), a.max(b));
            if hi == lo + 1 {
                let spec = RepSpec::computational(4).map_err(|e| e.to_string())?;
                let reps = (2.0 * turns).abs().round() as usize;
                let letter = if turns > 0.0 { lo as i32 } else { -(lo as i32) };
                let word = BraidWord::new(spec, vec![letter; reps]).map_err(|e| e.to_string())?;
                let exact = compiler::evaluate_word(&word).map_err(|e| e.to_string())?;
                let cmp =
                    oracle::compare_to_exact(&result.matrix, &exact).map_err(|e| e.to_string())?;
                out["exact_word"] = json!(word.to_string());
                out["max_entry_error"] = json!(cmp.max_entry_error);
                out["phase"] = complex_json(cmp.phase);
                out["phase_over_pi"] = json!(cmp.phase.arg() / std::f64::consts::PI);
                out["tolerance"] = json!(tolerance);
                if cmp.max_entry_error >= tolerance {
                    return Ok(Outcome::Failed(out));
                }
            }
            Ok(Outcome::Ok(out))
        }
        Command::ErrorRate {
            ratio,
            temperature_mk,
            gap_mk,
        } => {
            let ratio = match (ratio, temperature_mk, gap_mk) {
                (Some(r), None, None) => r,
                (None, Some(t), Some(g)) => {
                    if !(t > 0.0) {
                        return Err("temperature must be positive".into());
                    }
                    g / t
                }
                _ => return Err("give either --ratio or both --temperature-mk and --gap-mk".into()),
            };
            let rate = error_rate(ratio)?;
            Ok(Outcome::Ok(json!({ "ratio": ratio, "error_rate": rate })))
        }
    }
}

/// Runs the CLI on `argv` (including the program name) and returns the exit code.
pub fn run<I, S>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    return 0;
                }
                _ => 2,
            };
            let _ = write!(stderr, "{e}");
            return code;
        }
    };
    let (value, code) = match execute(cli.command) {
        Ok(Outcome::Ok(v)) => (v, 0),
        Ok(Outcome::Failed(v)) => (v, 1),
        Err(msg) => {
            let _ = writeln!(stderr, "error: {msg}");
            return 2;
        }
    };
    let text = serde_json::to_string_pretty(&value).expect("json value serializes") + "\n";
    match cli.output {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, text) {
                let _ = writeln!(stderr, "error: {}: {e}", path.display());
                return 2;
            }
        }
        None => {
            let _ = stdout.write_all(text.as_bytes());
        }
    }
    code
}
