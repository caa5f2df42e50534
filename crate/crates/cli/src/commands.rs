use std::time::Instant;

use serde_json::{json, Value};
use weddle_core::cubic::{self, Reduction};
use weddle_core::fixtures;
use weddle_core::io::{parse_input, tensor_to_json, to_canonical, Input};
use weddle_core::poly::MultiPoly;
use weddle_core::solve::{self, jacobsthal_u64, SolutionSet, SolverConfig};
use weddle_core::tensor::{decompose, random_n1, SymmetryClass, Tensor3};
use weddle_core::weddle::{rank_lower_bound_certificate, weddle_matrix, LinearSystem, RankConclusion, SingularCount};

use crate::report::{digest, RunReport};
use crate::{Cli, CliError, Command, InputArgs};

/// Fraction of trials per dimension that must certify in a sweep.
pub const SWEEP_MIN_CERTIFIED: f64 = 0.8;

struct Loaded {
    input: Input,
    canonical: String,
}

fn load(path: Option<&std::path::Path>, fixture: Option<&str>) -> Result<Loaded, CliError> {
    let text = match (path, fixture) {
        (_, Some(name)) => fixtures::text(name)
            .ok_or_else(|| CliError::UnknownFixture {
                name: name.to_string(),
                available: fixtures::names().collect::<Vec<_>>().join(", "),
            })?
            .to_string(),
        (Some(p), None) => std::fs::read_to_string(p).map_err(|source| CliError::Read {
            path: p.to_path_buf(),
            source,
        })?,
        (None, None) => return Err(CliError::WrongInput("no input given".into())),
    };
    let input = parse_input(&text)?;
    Ok(Loaded {
        canonical: to_canonical(&input),
        input,
    })
}

fn load_args(a: &InputArgs) -> Result<Loaded, CliError> {
    load(a.path.as_deref(), a.fixture.as_deref())
}

fn system_of(l: &Loaded) -> Result<LinearSystem, CliError> {
    l.input
        .system()?
        .ok_or_else(|| CliError::WrongInput("expected a tensor or a linear system, got a polynomial".into()))
}

/// The polynomial itself, or the Weddle polynomial of a system.
fn poly_of(l: &Loaded) -> Result<MultiPoly, CliError> {
    if let Input::Poly(p) = &l.input {
        return Ok(p.clone());
    }
    let w = weddle_matrix(&system_of(l)?)?;
    if w.degenerate {
        return Err(CliError::WrongInput("the Weddle determinant vanishes identically".into()));
    }
    Ok(w.polynomial)
}

fn tensor_value(t: &Tensor3) -> Value {
    serde_json::from_str(&tensor_to_json(t)).expect("tensor JSON parses")
}

fn point_text(c: &solve::Cluster) -> String {
    match &c.rational_match {
        Some(r) => format!("[{}]", r.iter().map(ToString::to_string).collect::<Vec<_>>().join(":")),
        None => format!(
            "[{}] (approximate)",
            c.point
                .coords()
                .iter()
                .map(|z| format!("{:.6}{:+.6}i", z.re, z.im))
                .collect::<Vec<_>>()
                .join(" : ")
        ),
    }
}

fn solution_lines(label: &str, s: &SolutionSet) -> Vec<String> {
    let status = if s.certified { "" } else { " (uncertified)" };
    let mut lines = vec![format!("{label}: {}{status}", s.count())];
    lines.extend(s.clusters.iter().map(|c| format!("  {}", point_text(c))));
    lines.extend(s.issues.iter().map(|i| format!("  issue: {i}")));
    lines
}

struct Output {
    outputs: Value,
    certified: bool,
    summary: Vec<String>,
}

pub fn run(cli: &Cli) -> Result<RunReport, CliError> {
    let start = Instant::now();
    let cfg = cli.opts.solver_config();
    let (name, input_text, out) = match &cli.command {
        Command::Decompose(a) => {
            let l = load_args(a)?;
            ("decompose", l.canonical.clone(), cmd_decompose(&l)?)
        }
        Command::Weddle(a) => {
            let l = load_args(a)?;
            ("weddle", l.canonical.clone(), cmd_weddle(&l)?)
        }
        Command::Basepoints {
            path,
            fixture,
            random_n1: dim,
        } => {
            let l = match dim {
                Some(d) => {
                    if *d < 2 {
                        return Err(CliError::WrongInput("--random-n1 needs a dimension of at least 2".into()));
                    }
                    let input = Input::Tensor(random_n1(*d, cli.opts.seed));
                    Loaded {
                        canonical: to_canonical(&input),
                        input,
                    }
                }
                None => load(path.as_deref(), fixture.as_deref())?,
            };
            ("basepoints", l.canonical.clone(), cmd_basepoints(&l, &cfg)?)
        }
        Command::Singular(a) => {
            let l = load_args(a)?;
            ("singular", l.canonical.clone(), cmd_singular(&l, &cfg)?)
        }
        Command::Jinv(a) => {
            let l = load_args(a)?;
            ("jinv", l.canonical.clone(), cmd_jinv(&l, &cfg)?)
        }
        Command::Certify(a) => {
            let l = load_args(a)?;
            ("certify", l.canonical.clone(), cmd_certify(&l, &cfg)?)
        }
        Command::JacobsthalSweep { dims, trials } => {
            let range = parse_dims(dims)?;
            let text = format!("jacobsthal-sweep dims={}..{} trials={trials}", range.0, range.1);
            ("jacobsthal-sweep", text, cmd_sweep(range, *trials, &cfg)?)
        }
    };
    Ok(RunReport {
        command: name.to_string(),
        input_digest: digest(&input_text),
        seed: cli.opts.seed,
        config: cfg,
        outputs: out.outputs,
        certified: out.certified,
        timing_ms: start.elapsed().as_secs_f64() * 1e3,
        summary: out.summary,
    })
}

fn cmd_decompose(l: &Loaded) -> Result<Output, CliError> {
    let t = match &l.input {
        Input::Tensor(t) => t.clone(),
        Input::Poly(_) => return Err(CliError::WrongInput("expected a tensor, got a polynomial".into())),
        _ => system_of(l)?.to_tensor(),
    };
    let parts = decompose(&t);
    let exact = parts.sum() == t;
    let memberships: serde_json::Map<String, Value> = SymmetryClass::ALL
        .iter()
        .map(|c| (format!("{c:?}"), Value::Bool(t.is_in(*c))))
        .collect();
    let mut summary = Vec::new();
    for (label, part) in [
        ("symmetric", &parts.sym),
        ("residual1", &parts.n1),
        ("residual2", &parts.n2),
        ("skew", &parts.skew),
    ] {
        summary.push(format!("{label}:{}", if part.is_zero() { " 0" } else { "" }));
        if !part.is_zero() {
            summary.extend(part.to_string().lines().map(|s| format!("  {s}")));
        }
    }
    let member_of: Vec<&String> = memberships.iter().filter(|(_, v)| v == &&Value::Bool(true)).map(|(k, _)| k).collect();
    summary.push(format!(
        "member of: {}",
        if member_of.is_empty() {
            "none".to_string()
        } else {
            member_of.iter().map(|s| s.as_str()).collect::<Vec<_>>().join(", ")
        }
    ));
    summary.push(format!("parts sum to input: {exact}"));
    Ok(Output {
        outputs: json!({
            "symmetric": tensor_value(&parts.sym),
            "residual1": tensor_value(&parts.n1),
            "residual2": tensor_value(&parts.n2),
            "skew": tensor_value(&parts.skew),
            "memberships": memberships,
            "sum_matches_input": exact,
        }),
        certified: exact,
        summary,
    })
}

fn cmd_weddle(l: &Loaded) -> Result<Output, CliError> {
    let w = weddle_matrix(&system_of(l)?)?;
    let matrix: Vec<Vec<String>> = w.matrix.rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
    let mut summary: Vec<String> = vec!["weddle matrix:".into()];
    summary.extend(matrix.iter().map(|r| format!("  [{}]", r.join(", "))));
    summary.push(format!("polynomial: {}", w.polynomial));
    summary.push(format!("degenerate: {}", w.degenerate));
    Ok(Output {
        outputs: json!({
            "matrix": matrix,
            "polynomial": w.polynomial.to_string(),
            "degenerate": w.degenerate,
        }),
        certified: true,
        summary,
    })
}

fn cmd_basepoints(l: &Loaded, cfg: &SolverConfig) -> Result<Output, CliError> {
    let sys = system_of(l)?;
    let s = solve::base_points(&sys, cfg)?;
    Ok(Output {
        summary: solution_lines("base points", &s),
        certified: s.certified,
        outputs: json!({ "count": s.count(), "solutions": s }),
    })
}

fn cmd_singular(l: &Loaded, cfg: &SolverConfig) -> Result<Output, CliError> {
    let f = poly_of(l)?;
    let s = solve::singular_points(&f, cfg)?;
    let mut summary = vec![format!("polynomial: {f}")];
    summary.extend(solution_lines("singular points", &s));
    Ok(Output {
        summary,
        certified: s.certified,
        outputs: json!({ "polynomial": f.to_string(), "count": s.count(), "solutions": s }),
    })
}

fn cmd_jinv(l: &Loaded, cfg: &SolverConfig) -> Result<Output, CliError> {
    let f = poly_of(l)?;
    let mut summary = vec![format!("cubic: {f}")];
    Ok(match cubic::weierstrass_reduce(&f, cfg)? {
        Reduction::Exact { curve, flex } => {
            let j = cubic::j_short(&curve)?;
            let flex: Vec<String> = flex.iter().map(ToString::to_string).collect();
            summary.push(format!("flex: [{}]", flex.join(":")));
            summary.push(format!("weierstrass: y^2 = x^3 + ({})*x + ({})", curve.a, curve.b));
            summary.push(format!("j: {j}"));
            Output {
                outputs: json!({
                    "cubic": f.to_string(),
                    "exact": true,
                    "flex": flex,
                    "a": curve.a.to_string(),
                    "b": curve.b.to_string(),
                    "j": j.to_string(),
                }),
                certified: true,
                summary,
            }
        }
        Reduction::Numeric(n) => {
            summary.push(format!("weierstrass (numeric): a = {:?}, b = {:?}", n.a, n.b));
            summary.push(format!("j ≈ {:.12} {:+.3e}i", n.j[0], n.j[1]));
            summary.push(format!("flex residual: {:.3e}", n.flex_residual));
            Output {
                certified: n.flex_residual < cfg.residual_tol,
                outputs: json!({ "cubic": f.to_string(), "exact": false, "numeric": n }),
                summary,
            }
        }
    })
}

fn cmd_certify(l: &Loaded, cfg: &SolverConfig) -> Result<Output, CliError> {
    let sys = system_of(l)?;
    let c = rank_lower_bound_certificate(&sys, cfg)?;
    let line = match (c.singular_count, c.conclusion) {
        (SingularCount::Exact(k), RankConclusion::RankAtLeast6) => format!("singular points: {k} < 10 ⇒ rank ≥ 6"),
        (SingularCount::Exact(k), RankConclusion::Inconclusive) => format!("singular points: {k} ⇒ inconclusive"),
        (SingularCount::AtLeast(k), _) => format!("singular points: at least {k} (uncertified) ⇒ inconclusive"),
    };
    let mut summary = vec![line];
    summary.extend(solution_lines("points", &c.evidence).into_iter().skip(1));
    Ok(Output {
        certified: c.evidence.certified,
        outputs: serde_json::to_value(&c).expect("certificate serializes"),
        summary,
    })
}

fn parse_dims(s: &str) -> Result<(usize, usize), CliError> {
    let bad = || CliError::Dims(s.to_string());
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let (a, b): (usize, usize) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
    if a < 2 || a > b || b > 5 {
        return Err(bad());
    }
    Ok((a, b))
}

/// Seed of one sweep trial, derived from the master seed.
pub fn trial_seed(master: u64, dim: usize, trial: usize) -> u64 {
    master
        .wrapping_mul(0x9E37_79B9_7F4A_7C15)
        .wrapping_add((dim as u64) << 32)
        .wrapping_add(trial as u64)
}

fn cmd_sweep(dims: (usize, usize), trials: usize, cfg: &SolverConfig) -> Result<Output, CliError> {
    let mut rows = Vec::new();
    let mut summary = vec!["dim  J_dim  certified  matching  mismatches  uncertified".to_string()];
    let mut all_ok = true;
    for dim in dims.0..=dims.1 {
        let expected = jacobsthal_u64(dim as u32) as usize;
        let mut counts = Vec::new();
        let mut mismatches = Vec::new();
        let mut uncertified = Vec::new();
        for trial in 0..trials {
            let seed = trial_seed(cfg.seed, dim, trial);
            let t = random_n1(dim, seed);
            let sys = LinearSystem::from_tensor(&t)?;
            let s = solve::base_points(&sys, &cfg.with_seed(seed))?;
            if !s.certified {
                uncertified.push(json!({ "seed": seed, "count": s.count(), "issues": s.issues }));
                continue;
            }
            counts.push(s.count());
            if s.count() != expected {
                mismatches.push(json!({ "seed": seed, "count": s.count(), "tensor": tensor_value(&t) }));
            }
        }
        let certified = counts.len();
        let matching = counts.iter().filter(|&&c| c == expected).count();
        let ok = mismatches.is_empty() && (certified as f64) >= SWEEP_MIN_CERTIFIED * trials as f64;
        all_ok &= ok;
        summary.push(format!(
            "{dim:>3}  {expected:>5}  {certified:>9}  {matching:>8}  {:>10}  {:>11}",
            mismatches.len(),
            uncertified.len()
        ));
        rows.push(json!({
            "dim": dim,
            "expected": expected,
            "trials": trials,
            "certified": certified,
            "matching": matching,
            "fraction_matching": if certified == 0 { 0.0 } else { matching as f64 / certified as f64 },
            "counts": counts,
            "mismatches": mismatches,
            "uncertified": uncertified,
        }));
    }
    Ok(Output {
        outputs: json!({ "rows": rows }),
        certified: all_ok,
        summary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dims_ranges() {
        assert_eq!(parse_dims("2..5").unwrap(), (2, 5));
        assert_eq!(parse_dims("3..=4").unwrap(), (3, 4));
        assert!(parse_dims("1..3").is_err());
        assert!(parse_dims("4..3").is_err());
        assert!(parse_dims("2..6").is_err());
        assert!(parse_dims("five").is_err());
    }

    #[test]
    fn trial_seeds_differ() {
        assert_ne!(trial_seed(1, 3, 0), trial_seed(1, 3, 1));
        assert_ne!(trial_seed(1, 3, 0), trial_seed(1, 4, 0));
        assert_ne!(trial_seed(1, 3, 0), trial_seed(2, 3, 0));
    }
}
