use negabeta::algebraic::{BetaSpec, FieldElement};
use negabeta::intervalmaps::{circle_mc_deviation, circle_nonwandering, example31_language_check, example31_measure_bounds, example31_rows, example31_system, CircleMap};
use negabeta::ldp::{compare_rate_functions, level1_rate, mc_deviation, mean_range, typical_mean, LdpError, Observable, RateResult, Window};
use negabeta::measures::{admissible_words, cylinder_csv, cylinder_measure, CylinderRow, GBeta};
use negabeta::negabeta::{format_word, parse_word, MinusBetaSystem};
use negabeta::shiftgraph::{build_gamma, chain_entropy, decompose, graph_report, presentation, to_dot, ComponentChain, FoldedAutomaton};
use negabeta::specprop::{gluing_trials, spec_bound, spec_bound_w, spec_bruteforce, SoficPresentation, SpecCertificate, SpecKind};
use serde::Serialize;
use serde_json::{json, Value};

use crate::cli::{BetaArgs, Command, Format};
use crate::error::CliError;
use crate::output::{csv, json, Report};
use crate::validate;

pub fn system(args: &BetaArgs) -> Result<MinusBetaSystem, CliError> {
    let spec: BetaSpec = args.beta.parse()?;
    Ok(MinusBetaSystem::new(spec)?)
}

/// System with i'(1) computed; decimal β fails here with exit 3.
pub fn yrrap_system(args: &BetaArgs) -> Result<MinusBetaSystem, CliError> {
    let mut sys = system(args)?;
    sys.expansion_of_one(args.max_steps)?;
    Ok(sys)
}

pub struct Chain {
    pub automaton: FoldedAutomaton,
    pub chain: ComponentChain,
    pub presentation: SoficPresentation,
}

pub fn chain(sys: &MinusBetaSystem) -> Result<Chain, CliError> {
    let automaton = presentation(sys.expansion()?)?;
    let chain = decompose(&automaton);
    let presentation = SoficPresentation::from_chain(&automaton, &chain)?;
    Ok(Chain { automaton, chain, presentation })
}

fn wrong_format(cmd: &str, f: Format) -> CliError {
    CliError::usage(format!("{cmd} does not support --format {f:?}").to_lowercase())
}

fn observable(s: &str, sys: &MinusBetaSystem) -> Result<Observable, CliError> {
    Observable::parse(s, sys.b()).ok_or_else(|| CliError::usage(format!("unknown observable {s:?} (expected digitK with K <= {} or value)", sys.b())))
}

fn parse_f64(s: &str, what: &str) -> Result<f64, CliError> {
    s.trim().parse().map_err(|_| CliError::usage(format!("bad number {s:?} in {what}")))
}

fn parse_window(s: &str) -> Result<Window, CliError> {
    let (lo, hi) = s.split_once(':').ok_or_else(|| CliError::usage(format!("window {s:?} must be lo:hi")))?;
    let w = Window { lo: parse_f64(lo, "--window")?, hi: parse_f64(hi, "--window")? };
    if w.lo > w.hi {
        return Err(CliError::usage(format!("empty window {s:?}")));
    }
    Ok(w)
}

pub fn run(cmd: &Command) -> Result<Report, CliError> {
    match cmd {
        Command::Yrrap(b) => yrrap(b),
        Command::Graph { beta, horizon, format } => graph(beta, *horizon, *format),
        Command::Components { beta, format } => components(beta, *format),
        Command::Spec { beta, maxlen, gluing, k, word_len, seed } => spec(beta, *maxlen, *gluing, *k, *word_len, *seed),
        Command::Cyl { beta, maxlen, word, format } => cyl(beta, *maxlen, word.as_deref(), *format),
        Command::Gbeta { beta, nmax } => gbeta(beta, *nmax),
        Command::Entropy(b) => entropy(b),
        Command::Rate { beta, obs, a, sweep, format } => rate(beta, obs, *a, sweep.as_deref(), *format),
        Command::Mc { beta, obs, window, n, samples, seed } => mc(beta, obs, window, *n, *samples, *seed),
        Command::CompareRates(b) => compare_rates(b),
        Command::Example31 { maxlen, points, seed, format } => example31(*maxlen, *points, *seed, *format),
        Command::Example32 { seed, n, samples, a, epsilon, amplitude, grid, iters, tolerance } => {
            example32(&Example32 { seed: *seed, n: *n, samples: *samples, levels: a, epsilon: *epsilon, amplitude: *amplitude, grid: *grid, iters: *iters, tolerance: *tolerance })
        }
        Command::Validate { beta, maxlen, trials, seed } => validate::run(beta, *maxlen, *trials, *seed),
    }
}

fn yrrap(b: &BetaArgs) -> Result<Report, CliError> {
    let sys = yrrap_system(b)?;
    let s = sys.expansion()?;
    let v = json!({
        "preperiod": format_word(s.preperiod(), sys.b()),
        "period": format_word(s.period(), sys.b()),
        "case": sys.case_tag(),
    });
    Ok(Report::new(json(&v)?))
}

fn graph(b: &BetaArgs, horizon: Option<usize>, format: Format) -> Result<Report, CliError> {
    let sys = yrrap_system(b)?;
    let body = match (horizon, format) {
        (Some(h), Format::Json) => {
            let g = build_gamma(sys.expansion()?, h)?;
            let edges: Vec<(usize, u8, usize)> = g.edges().map(|e| (e.from, e.label, e.to)).collect();
            json(&json!({ "horizon": h, "vertices": g.vertex_count(), "edges": edges }))?
        }
        (Some(h), Format::Dot) => to_dot(&build_gamma(sys.expansion()?, h)?, None),
        (None, Format::Json) => {
            let c = chain(&sys)?;
            json(&graph_report(&c.automaton, &c.chain))?
        }
        (None, Format::Dot) => to_dot(&chain(&sys)?.automaton.graph, None),
        (_, f) => return Err(wrong_format("graph", f)),
    };
    Ok(Report::new(body))
}

fn components(b: &BetaArgs, format: Format) -> Result<Report, CliError> {
    let sys = yrrap_system(b)?;
    let c = chain(&sys)?;
    let body = match format {
        Format::Json => json(&json!({ "N": c.chain.big_n, "q": c.chain.q(), "components": c.chain.components }))?,
        Format::Dot => to_dot(&c.automaton.graph, Some(&c.chain)),
        f => return Err(wrong_format("components", f)),
    };
    Ok(Report::new(body))
}

fn exact_within(cert: &SpecCertificate) -> bool {
    cert.exact_min_m.is_none_or(|m| m <= cert.m)
}

fn spec(b: &BetaArgs, maxlen: Option<usize>, gluing: usize, k: usize, word_len: usize, seed: Option<u64>) -> Result<Report, CliError> {
    let sys = yrrap_system(b)?;
    let p = chain(&sys)?.presentation;
    let mut cert = spec_bound(&p)?;
    let mut w_cert = spec_bound_w(&p)?;
    let mut out = serde_json::Map::new();
    let mut violations = Vec::new();
    if let Some(maxlen) = maxlen {
        let table = spec_bruteforce(&p, maxlen)?;
        cert = cert.with_exact_min(&table);
        w_cert = w_cert.with_exact_min(&table);
        if !exact_within(&cert) || !exact_within(&w_cert) {
            violations.push("brute-force gap exceeds a certified M".to_string());
        }
        out.insert("bruteforce".into(), serde_json::to_value(&table)?);
    }
    if gluing > 0 {
        let seed = seed.ok_or_else(|| CliError::usage("--gluing needs --seed"))?;
        let strong = gluing_trials(&p, &cert, k, gluing, word_len, seed);
        let weak = gluing_trials(&p, &w_cert, k, gluing, word_len, seed);
        if !strong.ok() || !weak.ok() {
            violations.push("a randomized gluing failed".to_string());
        }
        out.insert("gluing".into(), json!({ "certificate": strong, "w_certificate": weak, "k": k, "seed": seed }));
    }
    out.insert("certificate".into(), serde_json::to_value(&cert)?);
    out.insert("w_certificate".into(), serde_json::to_value(&w_cert)?);
    Ok(Report { body: json(&out)?, violations })
}

#[derive(Debug, Clone, Serialize)]
pub struct LengthSum {
    pub n: usize,
    pub words: usize,
    pub sum_is_one: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CylinderTable {
    pub rows: Vec<CylinderRow>,
    pub sums: Vec<LengthSum>,
    pub upper_failures: usize,
    pub lower_checked: usize,
    pub lower_failures: usize,
    pub first_lower_failure: Option<String>,
}

/// Every admissible word up to `maxlen` with exact lengths and per-length sums.
pub fn cylinder_table(sys: &MinusBetaSystem, maxlen: usize) -> Result<CylinderTable, CliError> {
    let one = FieldElement::one(sys.field()?);
    let mut t = CylinderTable { rows: Vec::new(), sums: Vec::new(), upper_failures: 0, lower_checked: 0, lower_failures: 0, first_lower_failure: None };
    for n in 1..=maxlen {
        let words = admissible_words(sys, n)?;
        let mut sum = FieldElement::zero(sys.field()?);
        for w in &words {
            let r = cylinder_measure(sys, w)?;
            sum = &sum + &r.length;
            t.upper_failures += usize::from(!r.upper_bound_ok);
            t.lower_checked += usize::from(r.lower_bound_applicable);
            if r.lower_bound_ok == Some(false) {
                t.lower_failures += 1;
                t.first_lower_failure.get_or_insert_with(|| format_word(w, sys.b()));
            }
            t.rows.push(r.row(sys.b()));
        }
        t.sums.push(LengthSum { n, words: words.len(), sum_is_one: sum == one });
    }
    Ok(t)
}

fn cyl(b: &BetaArgs, maxlen: usize, word: Option<&str>, format: Format) -> Result<Report, CliError> {
    let sys = yrrap_system(b)?;
    let table = match word {
        Some(w) => {
            let w = parse_word(w)?;
            let r = cylinder_measure(&sys, &w)?;
            let lower_failures = usize::from(r.lower_bound_ok == Some(false));
            CylinderTable {
                upper_failures: usize::from(!r.upper_bound_ok),
                lower_checked: usize::from(r.lower_bound_applicable),
                lower_failures,
                first_lower_failure: (lower_failures > 0).then(|| format_word(&w, sys.b())),
                rows: vec![r.row(sys.b())],
                sums: Vec::new(),
            }
        }
        None => cylinder_table(&sys, maxlen)?,
    };
    let body = match format {
        Format::Csv => cylinder_csv(&table.rows)?,
        Format::Json => json(&table)?,
        f => return Err(wrong_format("cyl", f)),
    };
    let mut report = Report::new(body);
    report.flag(table.upper_failures == 0, format!("{} words exceed the upper bound", table.upper_failures));
    report.flag(
        table.lower_failures == 0,
        format!("{} of {} branching words fall below the lower bound (first: {})", table.lower_failures, table.lower_checked, table.first_lower_failure.clone().unwrap_or_default()),
    );
    report.flag(table.sums.iter().all(|s| s.sum_is_one), "cylinder lengths do not sum to 1");
    Ok(report)
}

fn gbeta(b: &BetaArgs, nmax: usize) -> Result<Report, CliError> {
    let sys = yrrap_system(b)?;
    let profile = GBeta::from_automaton(&chain(&sys)?.automaton)?.profile(nmax);
    Ok(Report::new(json(&json!({ "nmax": nmax, "values": profile.values, "max": profile.max }))?))
}

fn entropy(b: &BetaArgs) -> Result<Report, CliError> {
    let sys = yrrap_system(b)?;
    let c = chain(&sys)?;
    let comps = chain_entropy(&c.automaton, &c.chain);
    let top = comps.iter().map(|e| e.entropy).fold(0.0, f64::max);
    let log_beta = sys.beta_approx().ln();
    let mut report = Report::new(json(&json!({
        "components": comps,
        "topological_entropy": top,
        "log_beta": log_beta,
        "difference": top - log_beta,
    }))?);
    report.flag((top - log_beta).abs() <= 1e-9, format!("topological entropy {top} differs from log beta {log_beta}"));
    Ok(report)
}

fn sweep_levels(spec: Option<&str>, range: (f64, f64)) -> Result<Vec<f64>, CliError> {
    let (lo, hi, steps) = match spec {
        Some(s) => {
            let parts: Vec<&str> = s.split(':').collect();
            let [lo, hi, steps] = parts[..] else {
                return Err(CliError::usage(format!("sweep {s:?} must be lo:hi:steps")));
            };
            let steps: usize = steps.parse().map_err(|_| CliError::usage(format!("bad step count in {s:?}")))?;
            (parse_f64(lo, "--sweep")?, parse_f64(hi, "--sweep")?, steps)
        }
        None => (range.0, range.1, 21),
    };
    if steps < 2 {
        return Ok(vec![lo]);
    }
    Ok((0..steps).map(|i| lo + (hi - lo) * i as f64 / (steps - 1) as f64).collect())
}

fn rate(b: &BetaArgs, obs: &str, a: Option<f64>, sweep: Option<&str>, format: Format) -> Result<Report, CliError> {
    let sys = yrrap_system(b)?;
    let psi = observable(obs, &sys)?;
    let p = chain(&sys)?.presentation;
    let phi = sys.beta_approx().ln();
    let levels = match a {
        Some(a) => vec![a],
        None => sweep_levels(sweep, mean_range(&p, &psi))?,
    };
    let rows: Vec<RateResult> = levels.iter().map(|&a| level1_rate(&p, &psi, a, phi)).collect::<Result<_, _>>()?;
    let body = match format {
        Format::Csv => csv(&rows)?,
        Format::Json => json(&json!({ "obs": psi.name, "phi": phi, "rows": rows }))?,
        f => return Err(wrong_format("rate", f)),
    };
    Ok(Report::new(body))
}

/// inf of the level-1 rate over the window; the rate is convex with its zero
/// at the typical mean, so the infimum sits at the point nearest to it.
fn predicted_rate(b: &BetaArgs, psi: &Observable, w: Window) -> Option<f64> {
    let sys = yrrap_system(b).ok()?;
    let p = chain(&sys).ok()?.presentation;
    let (lo, hi) = mean_range(&p, psi);
    let (lo, hi) = (w.lo.max(lo), w.hi.min(hi));
    if lo > hi {
        return None;
    }
    let a = typical_mean(&p, psi).ok()?.clamp(lo, hi);
    level1_rate(&p, psi, a, sys.beta_approx().ln()).ok().map(|r| r.rate)
}

fn mc(b: &BetaArgs, obs: &str, window: &str, n: usize, samples: u64, seed: u64) -> Result<Report, CliError> {
    let sys = system(b)?;
    let psi = observable(obs, &sys)?;
    let w = parse_window(window)?;
    let est = match mc_deviation(&sys, &psi, w, n, samples, seed) {
        Err(LdpError::WindowNeverHit { rate_lower_bound }) => {
            return Err(CliError { code: crate::error::EXIT_BUDGET, message: format!("window never hit in {samples} samples; rate is at least {rate_lower_bound}") });
        }
        r => r?,
    };
    let mut v = serde_json::to_value(&est)?;
    if let Value::Object(m) = &mut v {
        m.insert("obs".into(), psi.name.clone().into());
        m.insert("predicted_rate".into(), predicted_rate(b, &psi, w).map_or(Value::Null, Value::from));
        m.insert("exact_beta".into(), sys.is_exact().into());
    }
    let mut report = Report::new(json(&v)?);
    report.flag(est.audit_mismatches == 0, format!("{} audited orbits changed at doubled precision", est.audit_mismatches));
    Ok(report)
}

fn compare_rates(b: &BetaArgs) -> Result<Report, CliError> {
    let sys = yrrap_system(b)?;
    let cmp = compare_rate_functions(&sys)?;
    let mut report = Report::new(json(&cmp)?);
    report.flag(cmp.separated, "rate functions not separated");
    Ok(report)
}

fn example31(maxlen: usize, points: usize, seed: u64, format: Format) -> Result<Report, CliError> {
    if format == Format::Csv {
        return Ok(Report::new(cylinder_csv(&example31_rows(maxlen))?));
    }
    if format != Format::Json {
        return Err(wrong_format("example31", format));
    }
    let bounds = example31_measure_bounds(maxlen)?;
    let language = example31_language_check(points, maxlen, seed)?;
    let (_, p) = example31_system();
    let cert = spec_bound(&p)?.with_exact_min(&spec_bruteforce(&p, maxlen)?);
    let strong = cert.kind == SpecKind::StrongOneWay;
    let mut report = Report::new(json(&json!({ "bounds": bounds, "language": language, "certificate": cert, "seed": seed }))?);
    report.flag(bounds.all_ok, "cylinder bounds violated");
    report.flag(language.ok(), "coded points leave the language or words are unrealized");
    report.flag(strong && exact_within(&cert), "certificate is not a strong one-way certificate matching brute force");
    Ok(report)
}

struct Example32<'a> {
    seed: u64,
    n: usize,
    samples: u64,
    levels: &'a [f64],
    epsilon: f64,
    amplitude: f64,
    grid: usize,
    iters: usize,
    tolerance: f64,
}

fn example32(e: &Example32) -> Result<Report, CliError> {
    let map = CircleMap { amplitude: e.amplitude };
    let nw = circle_nonwandering(&map, e.grid, e.iters);
    let omega_ok = nw.points.len() == 2 && nw.points[0].abs() <= 1e-6 && (nw.points[1] - 0.5).abs() <= 1e-6;
    let mut deviations = Vec::new();
    let mut report = Report::default();
    for &a in e.levels {
        let d = circle_mc_deviation(&map, Window { lo: a, hi: 1.0 }, e.n, e.samples, e.epsilon, e.seed)?;
        let within = d.relative_error <= e.tolerance;
        report.flag(within, format!("a={a}: rate {:.4} vs predicted {:.4} ({:.1}% off)", d.estimate.rate, d.predicted_rate, 100.0 * d.relative_error));
        deviations.push(json!({ "a": a, "deviation": d, "within_tolerance": within }));
    }
    report.flag(omega_ok, format!("non-wandering points {:?}, expected [0, 0.5]", nw.points));
    report.body = json(&json!({ "nonwandering": nw, "omega_ok": omega_ok, "deviations": deviations, "tolerance": e.tolerance }))?;
    Ok(report)
}
