use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{rational_decimal, AffineBranch, IntervalMapError, PiecewiseExpandingMap, RatInterval};
use crate::measures::CylinderRow;
use crate::negabeta::format_word;
use crate::shiftgraph::{LabeledGraph, SubsetAutomaton};
use crate::specprop::SoficPresentation;

fn r(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}

/// The slope-3 map on J_0 = [0,1/6), J_1 = [1/6,1/2), J_2 = [1/2,2/3),
/// J_3 = [2/3,5/6), J_4 = [5/6,1], and its two-vertex presentation.
pub fn example31_system() -> (PiecewiseExpandingMap, SoficPresentation) {
    let cuts = [r(0, 1), r(1, 6), r(1, 2), r(2, 3), r(5, 6), r(1, 1)];
    let intercepts = [r(0, 1), r(-1, 2), r(-1, 1), r(-3, 2), r(-2, 1)];
    let branches = (0..5)
        .map(|i| AffineBranch {
            domain: RatInterval { lo: cuts[i].clone(), hi: cuts[i + 1].clone(), lo_closed: true, hi_closed: i == 4 },
            slope: r(3, 1),
            intercept: intercepts[i].clone(),
        })
        .collect();
    let map = PiecewiseExpandingMap::new(branches).expect("valid table");
    // A carries 0,1-loops, A -1-> B, B carries 2,3,4-loops
    let g = LabeledGraph::from_edges(2, 4, [(0, 0, 0), (0, 1, 0), (0, 1, 1), (1, 2, 1), (1, 3, 1), (1, 4, 1)]);
    let p = SoficPresentation::new(g, vec![vec![0], vec![1]]).expect("two loops");
    (map, p)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Example31Length {
    pub n: usize,
    pub words: usize,
    /// min and max of 3^n L([w]) as exact fractions
    pub min_scaled: String,
    pub max_scaled: String,
    pub sum_is_one: bool,
    pub bounds_ok: bool,
    pub denominators_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Example31Bounds {
    pub maxlen: usize,
    pub lengths: Vec<Example31Length>,
    pub all_ok: bool,
}

fn language(p: &SoficPresentation) -> SubsetAutomaton {
    SubsetAutomaton::full(&p.graph)
}

/// Exact cylinder lengths of every word up to `maxlen` against (1/2)3^{−n} ≤ L ≤ 3^{−n}.
pub fn example31_measure_bounds(maxlen: usize) -> Result<Example31Bounds, IntervalMapError> {
    let (map, p) = example31_system();
    let aut = language(&p);
    let mut lengths = Vec::new();
    for n in 0..=maxlen {
        let scale = BigRational::from_integer(BigInt::from(3).pow(n as u32));
        let den = BigInt::from(2) * BigInt::from(3).pow(n as u32);
        let mut sum = BigRational::zero();
        let (mut lo, mut hi): (Option<BigRational>, Option<BigRational>) = (None, None);
        let mut denominators_ok = true;
        let words = aut.words(n);
        for w in &words {
            let c = map.cylinder(w);
            if c.is_empty() {
                return Err(IntervalMapError::EmptyCylinder(format_word(w, 4)));
            }
            let l = c.length();
            denominators_ok &= (&den % l.denom()).is_zero();
            let s = &l * &scale;
            lo = Some(lo.map_or(s.clone(), |x| x.min(s.clone())));
            hi = Some(hi.map_or(s.clone(), |x| x.max(s.clone())));
            sum += l;
        }
        let (lo, hi) = (lo.unwrap_or_default(), hi.unwrap_or_default());
        let bounds_ok = lo >= r(1, 2) && hi <= BigRational::one();
        lengths.push(Example31Length { n, words: words.len(), min_scaled: lo.to_string(), max_scaled: hi.to_string(), sum_is_one: sum.is_one(), bounds_ok, denominators_ok });
    }
    let all_ok = lengths.iter().all(|l| l.sum_is_one && l.bounds_ok && l.denominators_ok);
    Ok(Example31Bounds { maxlen, lengths, all_ok })
}

/// Cylinder rows for every word of length 1..=maxlen, in the cylinder CSV layout.
pub fn example31_rows(maxlen: usize) -> Vec<CylinderRow> {
    let (map, p) = example31_system();
    let aut = language(&p);
    let mut rows = Vec::new();
    for n in 1..=maxlen {
        let scale = BigRational::from_integer(BigInt::from(3).pow(n as u32));
        for w in aut.words(n) {
            let c = map.cylinder(&w);
            let s = c.length() * &scale;
            rows.push(CylinderRow {
                word: format_word(&w, 4),
                lo_exact: c.lo.to_string(),
                hi_exact: c.hi.to_string(),
                lo: rational_decimal(&c.lo, 15),
                hi: rational_decimal(&c.hi, 15),
                length: rational_decimal(&c.length(), 15),
                upper_bound_ok: s <= BigRational::one(),
                lower_bound_applicable: true,
                lower_bound_ok: Some(s >= r(1, 2)),
            });
        }
    }
    rows
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LanguageCheck {
    pub points: usize,
    pub coded_in_language: usize,
    pub words_checked: usize,
    pub words_realized: usize,
}

impl LanguageCheck {
    pub fn ok(&self) -> bool {
        self.coded_in_language == self.points && self.words_realized == self.words_checked
    }
}

/// Codes random dyadic points, and realizes every presentation word by the
/// midpoint of its cylinder.
pub fn example31_language_check(points: usize, maxlen: usize, seed: u64) -> Result<LanguageCheck, IntervalMapError> {
    let (map, p) = example31_system();
    let aut = language(&p);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let denom: BigInt = BigInt::one() << 40u32;
    let mut coded_in_language = 0;
    for _ in 0..points {
        let x = BigRational::new(BigInt::from(rng.random_range(0..1u64 << 40)), denom.clone());
        if aut.accepts(&map.phi_code(&x, maxlen)?) {
            coded_in_language += 1;
        }
    }
    let (mut words_checked, mut words_realized): (usize, usize) = (0, 0);
    for n in 1..=maxlen {
        for w in aut.words(n) {
            words_checked += 1;
            let mid = map.cylinder(&w).midpoint();
            if map.phi_code(&mid, n)? == w {
                words_realized += 1;
            }
        }
    }
    Ok(LanguageCheck { points, coded_in_language, words_checked, words_realized })
}
