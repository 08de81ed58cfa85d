//! Command-line harness: build the sphere algebras, run verification
//! suites, and compute the index pairing, with text or JSON reports.

use clap::{Args, Parser, Subcommand, ValueEnum};
use ncsphere::ncalg::set_default_step_budget;
use ncsphere::report::Report;
use ncsphere::theta::{build_instanton, build_theta_spheres, ThetaConfig};
use ncsphere::{cyclic, hodge, qrep, qsympl, twisted};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "ncsphere",
    version,
    about = "Exact symbolic verification of noncommutative spheres"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run verification suites and report each check.
    Verify(VerifyArgs),
    /// Compute the truncated index pairing and its closed forms.
    Pair(PairArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Which suite to run.
    #[arg(long, value_enum, default_value_t = Suite::All)]
    suite: Suite,
    /// Deformation angle of the toric spheres, as a rational n/d.
    #[arg(long, default_value = "1/3")]
    theta: String,
    /// Deformation parameter of the quantum spheres, 0 < q < 1.
    #[arg(long, default_value = "1/2")]
    q: String,
    /// Truncation cutoff of the representation window.
    #[arg(long, default_value_t = 40)]
    cutoff: usize,
    /// Seed for the randomized property checks.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Emit the report as JSON.
    #[arg(long)]
    json: bool,
    /// Rewriting step budget per normal-form computation.
    #[arg(long)]
    step_budget: Option<usize>,
}

#[derive(Args)]
struct PairArgs {
    /// Deformation parameter, 0 < q < 1 (rational or float).
    #[arg(long, default_value = "1/2")]
    q: String,
    /// Truncation cutoff of the representation window.
    #[arg(long, default_value_t = 40)]
    cutoff: usize,
    /// Emit the report as JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Suite {
    /// Toric spheres: rewriting, subalgebra, Clifford, instanton, Hodge.
    Theta,
    /// Orthogonal symmetry: Dirac brackets, invariance, relation
    /// preservation, Hopf and embedding compatibility.
    So5,
    /// Full bracket table of the conformal extension.
    So51,
    /// Conformal variations of the instanton and their self-duality.
    Variations,
    /// Symplectic quantum spheres: derivation, projection, Hopf quotient,
    /// coaction.
    Qsympl,
    /// Cyclic complex operators and Chern characters.
    Cyclic,
    /// Representation traces and index pairings.
    Pair,
    /// Everything.
    All,
}

fn config_error(msg: &str) -> ! {
    eprintln!("configuration error: {}", msg);
    std::process::exit(2);
}

/// Parse a rational "n/d" or a plain integer.
fn parse_rational(s: &str) -> Option<(i64, i64)> {
    if let Some((n, d)) = s.split_once('/') {
        let n = n.trim().parse().ok()?;
        let d: i64 = d.trim().parse().ok()?;
        if d == 0 {
            return None;
        }
        Some((n, d))
    } else {
        s.trim().parse().ok().map(|n| (n, 1))
    }
}

/// Parse the deformation parameter as a rational or a float and validate
/// the open-interval domain (the q = 1 boundary is excluded).
fn parse_q(s: &str) -> f64 {
    let v = if let Some((n, d)) = parse_rational(s) {
        n as f64 / d as f64
    } else if let Ok(v) = s.trim().parse::<f64>() {
        v
    } else {
        config_error(&format!("cannot parse deformation parameter '{}'", s));
    };
    if !(0.0 < v && v < 1.0) {
        config_error(&format!(
            "deformation parameter must satisfy 0 < q < 1 (the classical boundary q = 1 is excluded); got {}",
            v
        ));
    }
    v
}

fn theta_config(s: &str) -> ThetaConfig {
    match parse_rational(s) {
        Some((n, d)) => ThetaConfig::from_ratio(n, d),
        None => config_error(&format!("cannot parse deformation angle '{}'", s)),
    }
}

fn suite_theta(theta: &str) -> Report {
    let ts = build_theta_spheres(&theta_config(theta));
    let mut rep = Report::new();
    ts.verify_systems(&mut rep);
    ts.verify_subalgebra(&mut rep);
    ts.verify_clifford(&mut rep);
    let data = build_instanton(&ts, &mut rep);
    let h = hodge::build_hodge(&ts, &mut rep);
    hodge::self_duality_check(&ts, &data, &h, &mut rep);
    rep
}

fn suite_so5(theta: &str) -> Report {
    let ts = build_theta_spheres(&theta_config(theta));
    let alg = twisted::build_twisted(&ts);
    let mut rep = Report::new();
    alg.dirac_bracket_check(&mut rep);
    alg.relation_preservation_check(&mut rep);
    alg.hopf_check(&mut rep);
    alg.compatibility_check(&mut rep);
    let mut scratch = Report::new();
    let data = build_instanton(&alg.ts, &mut scratch);
    alg.omega_invariance_check(&data, &mut rep);
    rep
}

fn suite_so51(theta: &str) -> Report {
    let ts = build_theta_spheres(&theta_config(theta));
    let alg = twisted::build_twisted(&ts);
    let mut rep = Report::new();
    alg.bracket_check(&mut rep);
    rep
}

fn suite_variations(theta: &str) -> Report {
    let ts = build_theta_spheres(&theta_config(theta));
    let alg = twisted::build_twisted(&ts);
    let mut rep = Report::new();
    let data = build_instanton(&alg.ts, &mut rep);
    let h = hodge::build_hodge(&alg.ts, &mut rep);
    let vars = alg.conformal_variations(&data, &mut rep);
    alg.variation_self_duality(&vars, &h, &mut rep);
    rep
}

fn suite_qsympl(seed: u64) -> Report {
    let mut rep = Report::new();
    if let Err(e) = qsympl::run_suite(seed, &mut rep) {
        rep.check("qsympl.build", "the quantum sphere derivation succeeds", || {
            (false, format!("{}", e))
        });
    }
    rep
}

fn suite_cyclic(seed: u64) -> Report {
    let mut rep = Report::new();
    cyclic::run_suite(seed, &mut rep);
    rep
}

fn suite_pair(q: f64, cutoff: usize, seed: u64) -> Report {
    let mut rep = Report::new();
    qrep::sigma_checks(q, cutoff, &mut rep);
    let tol = 2.0 * q.powi(2 * cutoff as i32) + 1e-10;
    qrep::pairing_checks(q, cutoff, tol, &mut rep);
    qrep::tail_checks(q, &mut rep);
    match qsympl::build_qsphere() {
        Ok(qs) => {
            let mut scratch = Report::new();
            let inst = qsympl::build_projection_q(&qs, &mut scratch);
            qrep::numeric_symbolic_oracle(&qs, &inst, 100, seed, &mut rep);
        }
        Err(e) => {
            rep.check("qrep.oracle", "the symbolic side builds", || {
                (false, format!("{}", e))
            });
        }
    }
    rep
}

fn run_verify(args: &VerifyArgs) -> i32 {
    let q = parse_q(&args.q);
    if args.cutoff < 4 {
        config_error("cutoff must be at least 4");
    }
    if let Some(b) = args.step_budget {
        if b == 0 {
            config_error("step budget must be positive");
        }
        set_default_step_budget(b);
    }
    // Validate the angle eagerly so a bad value exits 2, not 1.
    let _ = theta_config(&args.theta);

    let wanted = |s: Suite| args.suite == s || args.suite == Suite::All;
    let mut jobs: Vec<(&str, Box<dyn Fn() -> Report + Send + Sync>)> = Vec::new();
    let theta = args.theta.clone();
    let seed = args.seed;
    let cutoff = args.cutoff;
    if wanted(Suite::Theta) {
        let t = theta.clone();
        jobs.push(("theta", Box::new(move || suite_theta(&t))));
    }
    if wanted(Suite::So5) {
        let t = theta.clone();
        jobs.push(("so5", Box::new(move || suite_so5(&t))));
    }
    if wanted(Suite::So51) {
        let t = theta.clone();
        jobs.push(("so51", Box::new(move || suite_so51(&t))));
    }
    if wanted(Suite::Variations) {
        let t = theta.clone();
        jobs.push(("variations", Box::new(move || suite_variations(&t))));
    }
    if wanted(Suite::Qsympl) {
        jobs.push(("qsympl", Box::new(move || suite_qsympl(seed))));
    }
    if wanted(Suite::Cyclic) {
        jobs.push(("cyclic", Box::new(move || suite_cyclic(seed))));
    }
    if wanted(Suite::Pair) {
        jobs.push(("pair", Box::new(move || suite_pair(q, cutoff, seed))));
    }

    use rayon::prelude::*;
    let reports: Vec<Report> = jobs.par_iter().map(|(_, f)| f()).collect();
    let mut all = Report::new();
    for r in reports {
        all.merge(r);
    }
    all.checks.sort_by(|a, b| a.id.cmp(&b.id));

    let failed = all.checks.iter().filter(|c| !c.passed).count();
    if args.json {
        let checks: Vec<_> = all
            .checks
            .iter()
            .map(|c| {
                json!({
                    "id": c.id,
                    "statement": c.statement,
                    "passed": c.passed,
                    "residual": c.detail,
                    "millis": c.millis,
                })
            })
            .collect();
        let doc = json!({
            "schema": "ncsphere-report/1",
            "config": {
                "suite": format!("{:?}", suite_name(args.suite)),
                "theta": args.theta,
                "q": q,
                "cutoff": args.cutoff,
                "seed": args.seed,
            },
            "summary": { "total": all.checks.len(), "failed": failed },
            "checks": checks,
        });
        println!("{}", serde_json::to_string_pretty(&doc).unwrap());
    } else {
        for c in &all.checks {
            if c.passed {
                println!("ok   {} ({} ms)", c.id, c.millis);
            } else {
                println!("FAIL {}: {}\n     {}", c.id, c.statement, c.detail);
            }
        }
        println!("{} checks, {} failed", all.checks.len(), failed);
    }
    if failed == 0 {
        0
    } else {
        1
    }
}

fn suite_name(s: Suite) -> &'static str {
    match s {
        Suite::Theta => "theta",
        Suite::So5 => "so5",
        Suite::So51 => "so51",
        Suite::Variations => "variations",
        Suite::Qsympl => "qsympl",
        Suite::Cyclic => "cyclic",
        Suite::Pair => "pair",
        Suite::All => "all",
    }
}

fn run_pair(args: &PairArgs) -> i32 {
    let q = parse_q(&args.q);
    if args.cutoff < 4 {
        config_error("cutoff must be at least 4");
    }
    let sr = match qrep::build_sigma(q, args.cutoff) {
        Ok(s) => s,
        Err(e) => config_error(&format!("{}", e)),
    };
    let pairing = qrep::index_pairing(&sr).unwrap();
    let trace_direct = sr.trace_t();
    let trace_closed = sr.trace_t_closed();
    let trace_limit = qrep::trace_t_limit(q);
    let tail_bound = 2.0 * q.powi(2 * args.cutoff as i32);
    let ok = (pairing + 1.0).abs() <= tail_bound + 1e-10;
    if args.json {
        let doc = json!({
            "schema": "ncsphere-pairing/1",
            "config": { "q": q, "cutoff": args.cutoff },
            "pairing": pairing,
            "pairing_limit": -1.0,
            "trace_t": trace_direct,
            "trace_t_closed_form": trace_closed,
            "trace_t_limit": trace_limit,
            "tail_bound": tail_bound,
            "within_tail_bound": ok,
        });
        println!("{}", serde_json::to_string_pretty(&doc).unwrap());
    } else {
        println!("index pairing (truncated): {:.15}", pairing);
        println!("limit value:               -1");
        println!("trace of t (truncated):    {:.15}", trace_direct);
        println!("trace of t (closed form):  {:.15}", trace_closed);
        println!("trace of t (limit):        {:.15}", trace_limit);
        println!("geometric tail bound:      {:.3e}", tail_bound);
    }
    if ok {
        0
    } else {
        1
    }
}

fn main() {
    // Cap worker threads from the environment before any parallel work.
    if let Ok(v) = std::env::var("NCG_WORKERS") {
        match v.parse::<usize>() {
            Ok(n) if n >= 1 => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            _ => config_error(&format!("NCG_WORKERS must be a positive integer, got '{}'", v)),
        }
    }
    let cli = Cli::parse();
    let code = match &cli.cmd {
        Cmd::Verify(a) => run_verify(a),
        Cmd::Pair(a) => run_pair(a),
    };
    std::process::exit(code);
}
