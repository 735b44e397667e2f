use negabeta::negabeta::{alt_compare, format_word, rational_point, AltOrdering, MinusBetaSystem};
use negabeta::shiftgraph::{chain_entropy, cross_validate};
use negabeta::specprop::{ergodic_support_check, gluing_trials, omega_coverage_check, spec_bound, spec_bound_w};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::cli::BetaArgs;
use crate::commands::{chain, cylinder_table, yrrap_system};
use crate::error::CliError;
use crate::output::{json, Report};

const ORDER_PAIRS: usize = 200;
const SUPPORT_TRIALS: usize = 100;

#[derive(Debug, Serialize)]
struct Check {
    name: &'static str,
    ok: bool,
    detail: String,
}

/// Random rational pairs x < y must have itineraries in alternating order.
fn order_check(sys: &MinusBetaSystem, rng: &mut ChaCha8Rng) -> Result<Check, CliError> {
    let (mut pairs, mut monotone, mut skipped) = (0, 0, 0);
    while pairs < ORDER_PAIRS && skipped < 100 * ORDER_PAIRS {
        let q = rng.random_range(2..200i64);
        let (x, y) = (rng.random_range(0..=q), rng.random_range(0..=q));
        if x == y {
            continue;
        }
        let s = sys.itinerary(&rational_point(sys, x.min(y), q)?, 30);
        let t = sys.itinerary(&rational_point(sys, x.max(y), q)?, 30);
        let (Ok(s), Ok(t)) = (s, t) else {
            skipped += 1;
            continue;
        };
        pairs += 1;
        monotone += usize::from(matches!(alt_compare(&s[..], &t[..]), AltOrdering::Less | AltOrdering::Equal));
    }
    Ok(Check {
        name: "alternating_order",
        ok: pairs == ORDER_PAIRS && monotone == pairs,
        detail: format!("{monotone}/{pairs} pairs monotone, {skipped} orbits hit a breakpoint"),
    })
}

pub fn run(b: &BetaArgs, maxlen: usize, trials: usize, seed: u64) -> Result<Report, CliError> {
    let sys = yrrap_system(b)?;
    let c = chain(&sys)?;
    let p = &c.presentation;
    let mut checks = Vec::new();

    let cv = cross_validate(&c.automaton, &sys, maxlen)?;
    checks.push(Check {
        name: "language",
        ok: cv.equal,
        detail: match &cv.counterexample {
            None => format!("{} words agree", cv.words_checked),
            Some(w) => format!("first mismatch {}", format_word(w, sys.b())),
        },
    });

    let t = cylinder_table(&sys, maxlen)?;
    checks.push(Check { name: "cylinder_upper", ok: t.upper_failures == 0, detail: format!("{} of {} words above beta^-n", t.upper_failures, t.rows.len()) });
    checks.push(Check {
        name: "cylinder_lower",
        ok: t.lower_failures == 0,
        detail: format!(
            "{} of {} branching words below (1-b/beta) beta^-n{}",
            t.lower_failures,
            t.lower_checked,
            t.first_lower_failure.as_ref().map(|w| format!(", first {w}")).unwrap_or_default()
        ),
    });
    let sums_ok = t.sums.iter().filter(|s| s.sum_is_one).count();
    checks.push(Check { name: "cylinder_sum", ok: sums_ok == t.sums.len(), detail: format!("{sums_ok}/{} lengths sum to 1 exactly", t.sums.len()) });

    let top = chain_entropy(&c.automaton, &c.chain).iter().map(|e| e.entropy).fold(0.0, f64::max);
    let log_beta = sys.beta_approx().ln();
    checks.push(Check { name: "entropy", ok: (top - log_beta).abs() <= 1e-9, detail: format!("h = {top:.12}, log beta = {log_beta:.12}") });

    checks.push(Check { name: "coverage", ok: omega_coverage_check(p), detail: format!("{} components", p.q()) });

    let cert = spec_bound(p)?;
    let w_cert = spec_bound_w(p)?;
    let strong = gluing_trials(p, &cert, 3, trials, 6, seed);
    let weak = gluing_trials(p, &w_cert, 3, trials, 6, seed);
    checks.push(Check {
        name: "specification",
        ok: strong.ok() && weak.ok(),
        detail: format!("{:?} M={}: {}/{}; (W) M={}: {}/{}", cert.kind, cert.m, strong.passed, trials, w_cert.m, weak.passed, trials),
    });

    let erg = ergodic_support_check(p, SUPPORT_TRIALS, seed)?;
    checks.push(Check {
        name: "support_confinement",
        ok: erg.ok(),
        detail: format!("{}/{} random, {}/{} cycles confined", erg.random_confined, erg.random_measures, erg.cycles_confined, erg.cycle_measures),
    });

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    checks.push(order_check(&sys, &mut rng)?);

    let ok = checks.iter().all(|c| c.ok);
    let mut report = Report::new(json(&json!({ "beta": b.beta, "maxlen": maxlen, "seed": seed, "checks": checks, "ok": ok }))?);
    for c in checks.iter().filter(|c| !c.ok) {
        report.violations.push(format!("{}: {}", c.name, c.detail));
    }
    Ok(report)
}
