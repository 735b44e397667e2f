use serde::Serialize;

use super::{free_energy, serialize_extended, LdpError, MeasureInput};
use crate::measures::{markov_entropy, MarkovMeasure};
use crate::negabeta::{DigitSequence, MinusBetaSystem};
use crate::shiftgraph::{decompose, presentation, Edge};
use crate::specprop::{support_component, SoficPresentation};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RateRow {
    pub measure: String,
    pub entropy: f64,
    #[serde(serialize_with = "serialize_extended")]
    pub q_lebesgue: f64,
    #[serde(serialize_with = "serialize_extended")]
    pub q_m: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RateComparison {
    pub log_beta: f64,
    /// Index of the positive-entropy component in the chain.
    pub main_component: usize,
    pub rows: Vec<RateRow>,
    pub witness: RateRow,
    pub separated: bool,
}

/// Free energy with respect to Lebesgue (all invariant measures) against the
/// rate for the measure of maximal entropy (only measures on the main component).
pub fn compare_rate_functions(sys: &MinusBetaSystem) -> Result<RateComparison, LdpError> {
    let expected = DigitSequence::parse("100(1)", 1).expect("literal");
    if sys.b() != 1 || sys.expansion().ok() != Some(&expected) {
        return Err(LdpError::WrongBeta);
    }
    let log_beta = sys.beta_approx().ln();
    let a = presentation(&expected)?;
    let chain = decompose(&a);
    let p = SoficPresentation::from_chain(&a, &chain)?;
    let g = &p.graph;

    let parry: Vec<MarkovMeasure> = p.components.iter().map(|c| MarkovMeasure::parry(g, c)).collect::<Result<_, _>>()?;
    let main = (0..parry.len()).max_by(|&i, &j| markov_entropy(&parry[i]).total_cmp(&markov_entropy(&parry[j]))).expect("nonempty chain");

    // fixed points (d+1)/(β+1) are self-loops labelled d
    let mut deltas = Vec::new();
    for v in 0..g.vertex_count() {
        for (d, t) in g.out_edges(v) {
            if t == v && !deltas.iter().any(|(e, _): &(u8, MarkovMeasure)| *e == d) {
                deltas.push((d, MarkovMeasure::cycle(g, &[Edge { from: v, label: d, to: v }])?));
            }
        }
    }
    deltas.sort_by_key(|(d, _)| *d);

    let row = |name: String, parts: Vec<(f64, &MarkovMeasure)>| {
        let mut support = Vec::new();
        for (w, m) in &parts {
            if *w > 0.0 {
                support.extend(m.support_edges());
            }
        }
        let entropy: f64 = parts.iter().map(|(w, m)| w * markov_entropy(m)).sum();
        let q_lebesgue = free_energy(&MeasureInput::Mixture(parts), log_beta);
        let q_m = if support_component(&p, &support) == Some(main) { q_lebesgue } else { f64::NEG_INFINITY };
        RateRow { measure: name, entropy, q_lebesgue, q_m }
    };

    let mut rows = Vec::new();
    for (d, m) in &deltas {
        rows.push(row(format!("delta_{}/(beta+1)", d + 1), vec![(1.0, m)]));
    }
    rows.push(row(format!("parry_X{}", main + 1), vec![(1.0, &parry[main])]));
    let zero = &deltas.iter().find(|(d, _)| *d == 0).ok_or(LdpError::WrongBeta)?.1;
    for a in [0.25, 0.5, 0.75] {
        rows.push(row(format!("{a}*delta_1/(beta+1)+{}*parry_X{}", 1.0 - a, main + 1), vec![(a, zero), (1.0 - a, &parry[main])]));
    }
    let witness = rows[0].clone();
    let separated = witness.q_lebesgue.is_finite() && witness.q_m == f64::NEG_INFINITY;
    Ok(RateComparison { log_beta, main_component: main, rows, witness, separated })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn separation_for_minimal_pisot() {
        let c = compare_rate_functions(&MinusBetaSystem::minimal_pisot()).unwrap();
        assert!(c.separated);
        assert_eq!(c.witness.measure, "delta_1/(beta+1)");
        assert!((c.witness.q_lebesgue + c.log_beta).abs() < 1e-12);
        let parry = c.rows.iter().find(|r| r.measure.starts_with("parry")).unwrap();
        assert!(parry.q_lebesgue.abs() < 1e-9 && parry.q_m.abs() < 1e-9);
    }

    #[test]
    fn other_beta_refused() {
        assert_eq!(compare_rate_functions(&MinusBetaSystem::integer(2)).unwrap_err(), LdpError::WrongBeta);
    }
}
