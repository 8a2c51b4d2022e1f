//! Subcommand implementations.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use caustica::catalog::{get, Params, SingularityDef, SingularityId};
use caustica::coset::{euler_trace, newton_sums_coset, newton_sums_recursive};
use caustica::format::{csv_number, json_number};
use caustica::poly::rational_to_f64;
use caustica::sampling::{draw_exact, draw_numeric, draw_point, trial_rng, MAX_ATTEMPTS};
use caustica::scanner::{consistency_check, find_max_region, scan, ScanGrid};
use caustica::solver::{exact_trace, magnification_sum, MagReport, SolverConfig};
use caustica::{Error, Field, Polynomial, Rational, RationalFunc};
use num_complex::Complex64;
use num_traits::Zero;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::{Cli, Command, Common, Failure, Format};

pub fn run(cli: &Cli) -> Result<(), Failure> {
    let common = &cli.common;
    let cfg = solver_config(common)?;
    match &cli.command {
        Command::Verify { singularity, trials } => verify(common, &cfg, "verify", &[*singularity], *trials),
        Command::VerifyAll { trials } => verify(common, &cfg, "verify-all", &SingularityId::ALL, *trials),
        Command::Identities { singularity, trials } => {
            let ids = match singularity {
                Some(id) => vec![*id],
                None => SingularityId::ALL.to_vec(),
            };
            identities(common, &ids, *trials)
        }
        Command::Trace { phi, num, den } => trace(common, &phi.0, &num.0, &den.0),
        Command::Newton { phi, upto } => newton(common, &phi.0, *upto),
        Command::Scan { singularity, c, resolution, caustics, max_region, budget } => scan_cmd(
            common,
            &cfg,
            get(*singularity),
            &c.0,
            *resolution as usize,
            caustics.as_deref(),
            max_region.then_some(*budget),
        ),
        Command::Preimages { singularity, c, s } => preimages(common, &cfg, get(*singularity), &c.0, &s.0),
    }
}

fn solver_config(common: &Common) -> Result<SolverConfig, Failure> {
    let mut cfg = SolverConfig::default();
    for (name, value) in &common.tol {
        cfg.set(name, *value).map_err(|e| Failure::Usage(e.to_string()))?;
    }
    Ok(cfg)
}

fn failure(e: Error) -> Failure {
    match e {
        Error::Invalid(_)
        | Error::DegreeTooLow { .. }
        | Error::DivisionByZero
        | Error::DegenerateLeadingCoefficient
        | Error::NotInvertible { .. }
        | Error::NonDistinctRoots => Failure::Usage(e.to_string()),
        Error::NotProportional(_)
        | Error::IdentityFailure { .. }
        | Error::EquivalenceFailure(_)
        | Error::InconsistentSign(_)
        | Error::Catalog(_) => Failure::Identity(e.to_string()),
        _ => Failure::Tolerance(e.to_string()),
    }
}

fn emit(common: &Common, text: &str) -> Result<(), Failure> {
    match &common.output {
        Some(path) => write_file(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serialisable");
    s.push('\n');
    s
}

fn num(v: f64) -> Value {
    Value::String(json_number(v))
}

fn complex(z: Complex64) -> Value {
    json!([num(z.re), num(z.im)])
}

fn tolerances(cfg: &SolverConfig) -> Value {
    Value::Object(cfg.entries().iter().map(|(k, v)| (k.to_string(), num(*v))).collect())
}

fn epsilon_signs(ids: &[SingularityId]) -> Value {
    Value::Object(ids.iter().map(|&id| (id.label().to_string(), json!(get(id).hess_sign))).collect())
}

fn unsupported(format: Format, command: &str) -> Failure {
    Failure::Usage(format!("{command} does not support --format {format:?}").to_lowercase())
}

/// Trials of one singularity draw from disjoint streams of the same seed.
fn stream(id: SingularityId, trial: u64) -> u64 {
    (id as u64) << 32 | trial
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Status {
    Ok,
    Tolerance,
    Identity,
}

impl Status {
    fn label(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Tolerance => "tolerance",
            Status::Identity => "identity",
        }
    }
}

struct Trial {
    id: SingularityId,
    index: u64,
    rejected: usize,
    params: Option<Params<Rational>>,
    report: Result<MagReport, Error>,
    trace: Option<Result<Rational, Error>>,
}

impl Trial {
    fn status(&self) -> Status {
        match (&self.report, &self.trace) {
            (_, Some(Ok(t))) if !t.is_zero() => Status::Identity,
            (Ok(r), _) if r.within_tolerance() => Status::Ok,
            _ => Status::Tolerance,
        }
    }

    fn residual(&self) -> Option<f64> {
        self.report.as_ref().ok().map(|r| r.rel_residual_all)
    }

    fn json(&self) -> Value {
        let mut m = Map::new();
        m.insert("singularity".into(), json!(self.id.label()));
        m.insert("trial".into(), json!(self.index));
        m.insert("status".into(), json!(self.status().label()));
        m.insert("rejected".into(), json!(self.rejected));
        if let Some(p) = &self.params {
            m.insert("c".into(), p.c.iter().map(|v| num(rational_to_f64(v))).collect());
            m.insert("s".into(), p.s.iter().map(|v| num(rational_to_f64(v))).collect());
        }
        match &self.report {
            Ok(r) => {
                m.insert("n_real".into(), json!(r.n_real));
                m.insert("rel_residual_all".into(), num(r.rel_residual_all));
                m.insert("rel_residual_real".into(), r.rel_residual_real.map_or(Value::Null, num));
                m.insert("sum_all".into(), complex(r.sum_all));
                m.insert("max_preimage_residual".into(), num(r.max_residual()));
                m.insert("max_consistency_gap".into(), num(r.max_consistency_gap));
                m.insert("disc_metric".into(), num(r.disc_metric));
                m.insert("guards".into(), json!(r.guards));
            }
            Err(e) => {
                m.insert("error".into(), json!(e.to_string()));
            }
        }
        match &self.trace {
            Some(Ok(t)) => m.insert("algebraic_trace".into(), json!(t.to_string())),
            Some(Err(e)) => m.insert("algebraic_trace_error".into(), json!(e.to_string())),
            None => None,
        };
        Value::Object(m)
    }
}

fn run_trial(def: &SingularityDef, seed: u64, index: u64, cfg: &SolverConfig) -> Trial {
    let mut rng = trial_rng(seed, stream(def.id, index));
    match draw_numeric(def, &mut rng, cfg) {
        Ok(d) => Trial {
            id: def.id,
            index,
            rejected: d.rejected,
            report: magnification_sum(def, &d.params.map(Field::to_complex), cfg),
            trace: Some(exact_trace(def, &d.params)),
            params: Some(d.params),
        },
        Err(e) => Trial { id: def.id, index, rejected: MAX_ATTEMPTS, params: None, report: Err(e), trace: None },
    }
}

fn verify(common: &Common, cfg: &SolverConfig, command: &str, ids: &[SingularityId], trials: u64) -> Result<(), Failure> {
    let jobs: Vec<(SingularityId, u64)> = ids.iter().flat_map(|&id| (0..trials).map(move |k| (id, k))).collect();
    let results: Vec<Trial> = jobs.par_iter().map(|&(id, k)| run_trial(get(id), common.seed, k, cfg)).collect();

    let worst = results.iter().map(Trial::status).max().unwrap_or(Status::Ok);
    let n_failed = results.iter().filter(|t| t.status() != Status::Ok).count();
    let max_residual = results.iter().filter_map(Trial::residual).fold(0.0, f64::max);
    let n_rejected: usize = results.iter().map(|t| t.rejected).sum();

    let text = match common.format.unwrap_or(Format::Json) {
        Format::Json => {
            let mut per_id = Map::new();
            for &id in ids {
                let mine: Vec<&Trial> = results.iter().filter(|t| t.id == id).collect();
                per_id.insert(
                    id.label().into(),
                    json!({
                        "max_rel_residual": num(mine.iter().filter_map(|t| t.residual()).fold(0.0, f64::max)),
                        "n_rejected": mine.iter().map(|t| t.rejected).sum::<usize>(),
                        "n_failed": mine.iter().filter(|t| t.status() != Status::Ok).count(),
                    }),
                );
            }
            to_json(&json!({
                "command": command,
                "config": {
                    "singularities": ids.iter().map(|id| id.label()).collect::<Vec<_>>(),
                    "trials": trials,
                    "tolerances": tolerances(cfg),
                },
                "seed": common.seed,
                "per_trial": results.iter().map(Trial::json).collect::<Vec<_>>(),
                "summary": {
                    "max_rel_residual": num(max_residual),
                    "n_rejected": n_rejected,
                    "n_trials": results.len(),
                    "n_failed": n_failed,
                    "epsilon_signs": epsilon_signs(ids),
                    "per_singularity": per_id,
                },
            }))
        }
        Format::Csv => {
            let mut out = String::from("singularity,trial,status,rejected,n_real,rel_residual_all,max_preimage_residual,algebraic_trace\n");
            for t in &results {
                let (n_real, res, pre) = match &t.report {
                    Ok(r) => (r.n_real.to_string(), json_number(r.rel_residual_all), json_number(r.max_residual())),
                    Err(_) => (String::new(), String::new(), String::new()),
                };
                let trace = match &t.trace {
                    Some(Ok(v)) => v.to_string(),
                    _ => String::new(),
                };
                let _ = writeln!(out, "{},{},{},{},{n_real},{res},{pre},{trace}", t.id, t.index, t.status().label(), t.rejected);
            }
            out
        }
        Format::Text => {
            let mut out = format!("seed {}\n", common.seed);
            for &id in ids {
                let mine: Vec<&Trial> = results.iter().filter(|t| t.id == id).collect();
                let worst = mine.iter().filter_map(|t| t.residual()).fold(0.0, f64::max);
                let failed = mine.iter().filter(|t| t.status() != Status::Ok).count();
                let rejected: usize = mine.iter().map(|t| t.rejected).sum();
                let _ = writeln!(
                    out,
                    "{:<8} trials {:>4}  max residual {worst:.2e}  redraws {rejected:>4}  eps {:+}  failed {failed}",
                    id.label(),
                    mine.len(),
                    get(id).hess_sign,
                );
                for t in mine.iter().filter(|t| t.status() != Status::Ok).take(3) {
                    let why = match (&t.report, &t.trace) {
                        (_, Some(Ok(v))) if !v.is_zero() => format!("algebraic trace {v}"),
                        (Ok(r), _) => r.guards.join(", "),
                        (Err(e), _) => e.to_string(),
                    };
                    let _ = writeln!(out, "    trial {}: {why}", t.index);
                }
            }
            let _ = writeln!(out, "{} trials, {n_failed} failed, max relative residual {max_residual:.2e}", results.len());
            out
        }
    };
    emit(common, &text)?;
    match worst {
        Status::Ok => Ok(()),
        Status::Tolerance => Err(Failure::Tolerance(format!("{n_failed} trial(s) outside tolerance"))),
        Status::Identity => Err(Failure::Identity(format!("{n_failed} trial(s) with a nonzero algebraic trace"))),
    }
}

struct IdentityTrial {
    id: SingularityId,
    index: u64,
    rejected: usize,
    outcome: Result<(Rational, i8), Error>,
}

fn identity_trial(def: &SingularityDef, seed: u64, index: u64) -> IdentityTrial {
    let mut rng = trial_rng(seed, stream(def.id, index));
    let mut rejected = MAX_ATTEMPTS;
    let outcome = draw_exact(def, &mut rng).and_then(|d| {
        rejected = d.rejected;
        let p = &d.params;
        let lambda = def.verify_phi_vs_resultant(p)?;
        def.verify_multiplier_identity(p)?;
        let (x, y) = draw_point(&mut rng);
        def.verify_grad_equivalence(&p.c, &x, &y)?;
        let points: Vec<_> = (0..5).map(|_| draw_point(&mut rng)).collect();
        let eps = def.verify_det_consistency(&p.c, &points)?;
        let trace = exact_trace(def, p)?;
        if !trace.is_zero() {
            return Err(Error::IdentityFailure { label: format!("{} trace", def.id), residual: trace.to_string() });
        }
        Ok((lambda, eps))
    });
    IdentityTrial { id: def.id, index, rejected, outcome }
}

fn identities(common: &Common, ids: &[SingularityId], trials: u64) -> Result<(), Failure> {
    let jobs: Vec<(SingularityId, u64)> = ids.iter().flat_map(|&id| (0..trials).map(move |k| (id, k))).collect();
    let results: Vec<IdentityTrial> = jobs.par_iter().map(|&(id, k)| identity_trial(get(id), common.seed, k)).collect();
    let failed: Vec<&IdentityTrial> = results.iter().filter(|t| t.outcome.is_err()).collect();

    let text = match common.format.unwrap_or(Format::Text) {
        Format::Json => {
            let per_trial: Vec<Value> = results
                .iter()
                .map(|t| match &t.outcome {
                    Ok((lambda, eps)) => json!({
                        "singularity": t.id.label(), "trial": t.index, "status": "ok",
                        "rejected": t.rejected, "lambda": lambda.to_string(), "epsilon": eps,
                    }),
                    Err(e) => json!({
                        "singularity": t.id.label(), "trial": t.index, "status": "failed",
                        "rejected": t.rejected, "error": e.to_string(),
                    }),
                })
                .collect();
            to_json(&json!({
                "command": "identities",
                "config": { "singularities": ids.iter().map(|id| id.label()).collect::<Vec<_>>(), "trials": trials },
                "seed": common.seed,
                "per_trial": per_trial,
                "summary": {
                    "n_trials": results.len(),
                    "n_failed": failed.len(),
                    "n_rejected": results.iter().map(|t| t.rejected).sum::<usize>(),
                    "epsilon_signs": epsilon_signs(ids),
                },
            }))
        }
        Format::Text => {
            let mut out = format!("seed {}\n", common.seed);
            for &id in ids {
                let bad: Vec<_> = failed.iter().filter(|t| t.id == id).collect();
                let verdict = if bad.is_empty() { "ok".to_string() } else { format!("{} failed", bad.len()) };
                let _ = writeln!(out, "{:<8} {trials} draws  eps {:+}  {verdict}", id.label(), get(id).hess_sign);
                for t in bad.iter().take(3) {
                    if let Err(e) = &t.outcome {
                        let _ = writeln!(out, "    trial {}: {e}", t.index);
                    }
                }
            }
            out
        }
        Format::Csv => return Err(unsupported(Format::Csv, "identities")),
    };
    emit(common, &text)?;
    match failed.iter().map(|t| t.outcome.as_ref().unwrap_err()).next() {
        None => Ok(()),
        Some(Error::GuardViolation(m)) => Err(Failure::Tolerance(m.clone())),
        Some(_) => Err(Failure::Identity(format!("{} exact check(s) failed", failed.len()))),
    }
}

fn poly_strings(p: &[Rational]) -> Vec<String> {
    p.iter().map(ToString::to_string).collect()
}

fn trace(common: &Common, phi: &[Rational], num_c: &[Rational], den: &[Rational]) -> Result<(), Failure> {
    let phi_p = Polynomial::new(phi.to_vec());
    let h = RationalFunc::new(Polynomial::new(num_c.to_vec()), Polynomial::new(den.to_vec())).map_err(failure)?;
    let t = euler_trace(&h, &phi_p).map_err(failure)?;
    let value = rational_to_f64(&t);
    let text = match common.format.unwrap_or(Format::Text) {
        Format::Text if t.is_integer() => format!("trace = {t}\n"),
        Format::Text => format!("trace = {t} = {}\n", csv_number(value)),
        Format::Json => to_json(&json!({
            "command": "trace",
            "seed": common.seed,
            "phi": poly_strings(phi),
            "num": poly_strings(num_c),
            "den": poly_strings(den),
            "trace": t.to_string(),
            "value": num(value),
        })),
        Format::Csv => format!("trace,value\n{t},{}\n", csv_number(value)),
    };
    emit(common, &text)
}

fn newton(common: &Common, phi: &[Rational], upto: usize) -> Result<(), Failure> {
    let phi_p = Polynomial::new(phi.to_vec());
    let sums = newton_sums_coset(&phi_p, upto).map_err(failure)?;
    let check = newton_sums_recursive(&phi_p, upto).map_err(failure)?;
    let text = match common.format.unwrap_or(Format::Text) {
        Format::Text => sums.values.iter().enumerate().map(|(k, v)| format!("N{k} = {v}\n")).collect(),
        Format::Csv => {
            let rows: String = sums.values.iter().enumerate().map(|(k, v)| format!("{k},{v}\n")).collect();
            format!("k,N_k\n{rows}")
        }
        Format::Json => to_json(&json!({
            "command": "newton",
            "seed": common.seed,
            "phi": poly_strings(phi),
            "sums": poly_strings(&sums.values),
        })),
    };
    emit(common, &text)?;
    if sums.values != check.values {
        return Err(Failure::Identity("coset and recursive power sums disagree".into()));
    }
    Ok(())
}

fn float_params(def: &SingularityDef, c: &[f64], s: [f64; 2]) -> Result<Params<Complex64>, Failure> {
    if c.len() != def.id.n_params() {
        return Err(Failure::Usage(format!("{} takes {} parameter(s) c, got {}", def.id, def.id.n_params(), c.len())));
    }
    Ok(Params::new(c.iter().map(|&v| Complex64::from(v)).collect(), s.map(Complex64::from)))
}

fn plain(v: f64) -> String {
    format!("{v:+.12}")
}

fn complex_text(z: Complex64) -> String {
    format!("{:+.12}{:+.12}i", z.re, z.im)
}

fn preimages(common: &Common, cfg: &SolverConfig, def: &SingularityDef, c: &[f64], s: &[f64]) -> Result<(), Failure> {
    let s: [f64; 2] = s.try_into().map_err(|_| Failure::Usage(format!("--s takes two values, got {}", s.len())))?;
    let p = float_params(def, c, s)?;
    let r = magnification_sum(def, &p, cfg).map_err(failure)?;
    let text = match common.format.unwrap_or(Format::Text) {
        Format::Text => {
            let mut out = format!("{} c = {:?} s = {:?}\n", def.id, c, s);
            for (k, (pre, m)) in r.preimages.iter().zip(&r.mags).enumerate() {
                let [x, y] = pre.point;
                let (kind, x, y, m) = if pre.is_real {
                    ("real", plain(x.re), plain(y.re), plain(m.re))
                } else {
                    ("complex", complex_text(x), complex_text(y), complex_text(*m))
                };
                let _ = writeln!(out, "  {k}: {kind:<7} x = {x}  y = {y}  mag = {m}");
            }
            let _ = writeln!(out, "real pre-images {} of {}", r.n_real, r.preimages.len());
            let _ = writeln!(out, "|sum of magnifications| {:.3e}  relative {:.3e}", r.sum_all.norm(), r.rel_residual_all);
            if let Some(real) = r.rel_residual_real {
                let _ = writeln!(out, "sum over real pre-images, relative {real:.3e}");
            }
            if !r.within_tolerance() {
                let _ = writeln!(out, "outside tolerance: {}", r.guards.join(", "));
            }
            out
        }
        Format::Json => to_json(&json!({
            "command": "preimages",
            "singularity": def.id.label(),
            "config": { "tolerances": tolerances(cfg) },
            "seed": common.seed,
            "c": c.iter().map(|&v| num(v)).collect::<Vec<_>>(),
            "s": s.iter().map(|&v| num(v)).collect::<Vec<_>>(),
            "preimages": r.preimages.iter().zip(&r.mags).map(|(pre, m)| json!({
                "x": complex(pre.point[0]),
                "y": complex(pre.point[1]),
                "real": pre.is_real,
                "magnification": complex(*m),
                "residual": num(pre.residual),
            })).collect::<Vec<_>>(),
            "sum_all": complex(r.sum_all),
            "rel_residual_all": num(r.rel_residual_all),
            "rel_residual_real": r.rel_residual_real.map_or(Value::Null, num),
            "guards": r.guards,
        })),
        Format::Csv => {
            let mut out = String::from("x_re,x_im,y_re,y_im,real,mag_re,mag_im\n");
            for (pre, m) in r.preimages.iter().zip(&r.mags) {
                let [x, y] = pre.point;
                let f = json_number;
                let _ = writeln!(out, "{},{},{},{},{},{},{}", f(x.re), f(x.im), f(y.re), f(y.im), pre.is_real, f(m.re), f(m.im));
            }
            out
        }
    };
    emit(common, &text)?;
    r.check(cfg).map_err(failure)
}

/// `cells.csv` becomes `cells_caustics.csv`.
fn caustics_sibling(cells: &Path) -> PathBuf {
    let stem = cells.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    cells.with_file_name(format!("{stem}_caustics.csv"))
}

fn scan_cmd(
    common: &Common,
    cfg: &SolverConfig,
    def: &SingularityDef,
    c: &[f64],
    resolution: usize,
    caustics: Option<&Path>,
    budget: Option<usize>,
) -> Result<(), Failure> {
    if let Some(f) = common.format.filter(|&f| f != Format::Csv) {
        return Err(unsupported(f, "scan"));
    }
    float_params(def, c, [0.0, 0.0])?;
    let grid = ScanGrid::square(resolution, c.to_vec());
    let result = scan(def, &grid, cfg).map_err(failure)?;

    let mut cells = Vec::new();
    result.write_cells_csv(&mut cells).expect("write to memory");
    emit(common, &String::from_utf8(cells).expect("ascii"))?;
    let caustics_path = caustics.map(Path::to_path_buf).or_else(|| common.output.as_deref().map(caustics_sibling));
    if let Some(path) = &caustics_path {
        let mut out = Vec::new();
        result.write_caustics_csv(&mut out).expect("write to memory");
        write_file(path, &String::from_utf8(out).expect("ascii"))?;
    }

    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    for cell in &result.cells {
        let key = cell.n_real.map_or_else(|| "flagged".to_string(), |k| k.to_string());
        *counts.entry(key).or_default() += 1;
    }
    let counts: Vec<String> = counts.iter().map(|(k, v)| format!("{k}:{v}")).collect();
    eprintln!(
        "{} {resolution}x{resolution} cells [{}], {} caustic points, {} count transitions, seed {}",
        def.id,
        counts.join(" "),
        result.caustic_points.len(),
        result.transitions.len(),
        common.seed,
    );
    if let Some(budget) = budget {
        let m = find_max_region(def, c, budget, cfg).map_err(failure)?;
        eprintln!("all {} pre-images real at s = ({}, {}), level {}", m.n_real, csv_number(m.s[0]), csv_number(m.s[1]), m.level);
    }
    consistency_check(&result).map_err(failure)
}
