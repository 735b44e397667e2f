use std::cmp::Ordering;

use serde::Serialize;

use super::MeasureError;
use crate::algebraic::{FieldElement, Sign};
use crate::negabeta::{format_word, MinusBetaSystem};

/// Φ⁻¹([w]) as an interval with exact endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CylinderInterval {
    pub word: Vec<u8>,
    pub lo: FieldElement,
    pub hi: FieldElement,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl CylinderInterval {
    pub fn length(&self) -> FieldElement {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &FieldElement) -> bool {
        let lo = x.cmp_value(&self.lo);
        let hi = x.cmp_value(&self.hi);
        (lo == Ordering::Greater || (lo == Ordering::Equal && self.lo_closed))
            && (hi == Ordering::Less || (hi == Ordering::Equal && self.hi_closed))
    }
}

/// Backward recursion A_k = J_{w_k} ∩ (w_k + 1 − A_{k+1})/β from A_n = [0, 1].
pub fn cylinder_interval(sys: &MinusBetaSystem, w: &[u8]) -> Result<CylinderInterval, MeasureError> {
    sys.expansion()?;
    let inv = sys.beta_inv()?;
    let cells = sys.partition();
    let mut lo = sys.elem_int(0)?;
    let mut hi = sys.elem_int(1)?;
    let (mut lo_closed, mut hi_closed) = (true, true);
    let inadmissible = || MeasureError::InadmissibleWord(format_word(w, sys.b()));
    for &d in w.iter().rev() {
        let cell = cells.get(d as usize).ok_or_else(inadmissible)?;
        // the inverse branch reverses orientation
        let new_lo = &(-&hi).add_int(d as i64 + 1) * inv;
        let new_hi = &(-&lo).add_int(d as i64 + 1) * inv;
        (lo_closed, hi_closed) = (hi_closed, lo_closed);
        let (clo, chi) = (cell.lo(sys)?, cell.hi(sys)?);
        match new_lo.cmp_value(&clo) {
            Ordering::Less => {
                lo = clo;
                lo_closed = cell.lo_closed;
            }
            Ordering::Equal => {
                lo = new_lo;
                lo_closed &= cell.lo_closed;
            }
            Ordering::Greater => lo = new_lo,
        }
        match new_hi.cmp_value(&chi) {
            Ordering::Greater => {
                hi = chi;
                hi_closed = cell.hi_closed;
            }
            Ordering::Equal => {
                hi = new_hi;
                hi_closed &= cell.hi_closed;
            }
            Ordering::Less => hi = new_hi,
        }
        if lo.cmp_value(&hi) != Ordering::Less {
            return Err(inadmissible());
        }
    }
    Ok(CylinderInterval { word: w.to_vec(), lo, hi, lo_closed, hi_closed })
}

#[derive(Debug, Clone)]
pub struct CylinderReport {
    pub interval: CylinderInterval,
    pub length: FieldElement,
    pub upper_bound_ok: bool,
    /// w has two admissible one-letter extensions.
    pub lower_bound_applicable: bool,
    pub lower_bound_ok: Option<bool>,
}

/// Exact length of Φ⁻¹([w]) checked against β^{−n} and, when w branches,
/// against (1 − b/β) β^{−n}.
pub fn cylinder_measure(sys: &MinusBetaSystem, w: &[u8]) -> Result<CylinderReport, MeasureError> {
    let interval = cylinder_interval(sys, w)?;
    let length = interval.length();
    let scale = sys.beta_inv()?.pow(w.len() as u32);
    let upper_bound_ok = (&scale - &length).sign() != Sign::Negative;
    let mut ext = Vec::with_capacity(w.len() + 1);
    ext.extend_from_slice(w);
    ext.push(0);
    let mut branches = 0;
    for c in 0..=sys.b() {
        *ext.last_mut().expect("nonempty") = c;
        if sys.word_admissible(&ext)? {
            branches += 1;
        }
    }
    let lower_bound_applicable = branches >= 2;
    let lower_bound_ok = lower_bound_applicable.then(|| {
        let factor = sys.beta_inv().expect("exact").scale(&(-num_rational::BigRational::from_integer(sys.b().into()))).add_int(1);
        (&length - &(&factor * &scale)).sign() != Sign::Negative
    });
    Ok(CylinderReport { interval, length, upper_bound_ok, lower_bound_applicable, lower_bound_ok })
}

#[derive(Debug, Clone, Serialize)]
pub struct CylinderRow {
    pub word: String,
    pub lo_exact: String,
    pub hi_exact: String,
    pub lo: String,
    pub hi: String,
    pub length: String,
    pub upper_bound_ok: bool,
    pub lower_bound_applicable: bool,
    pub lower_bound_ok: Option<bool>,
}

impl CylinderReport {
    pub fn row(&self, b: u8) -> CylinderRow {
        CylinderRow {
            word: format_word(&self.interval.word, b),
            lo_exact: self.interval.lo.to_string(),
            hi_exact: self.interval.hi.to_string(),
            lo: self.interval.lo.to_decimal(15),
            hi: self.interval.hi.to_decimal(15),
            length: self.length.to_decimal(15),
            upper_bound_ok: self.upper_bound_ok,
            lower_bound_applicable: self.lower_bound_applicable,
            lower_bound_ok: self.lower_bound_ok,
        }
    }
}

/// RFC 4180 CSV of cylinder rows with a fixed header.
pub fn cylinder_csv(rows: &[CylinderRow]) -> Result<String, MeasureError> {
    let mut wtr = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(Vec::new());
    for r in rows {
        wtr.serialize(r).map_err(|e| MeasureError::Export(e.to_string()))?;
    }
    if rows.is_empty() {
        wtr.write_record(["word", "lo_exact", "hi_exact", "lo", "hi", "length", "upper_bound_ok", "lower_bound_applicable", "lower_bound_ok"])
            .map_err(|e| MeasureError::Export(e.to_string()))?;
    }
    let bytes = wtr.into_inner().map_err(|e| MeasureError::Export(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| MeasureError::Export(e.to_string()))
}

/// All admissible words of length n in lexicographic order.
pub fn admissible_words(sys: &MinusBetaSystem, n: usize) -> Result<Vec<Vec<u8>>, MeasureError> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for w in &out {
            for c in 0..=sys.b() {
                let mut x = w.clone();
                x.push(c);
                if sys.word_admissible(&x)? {
                    next.push(x);
                }
            }
        }
        out = next;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::negabeta::rational_point;

    #[test]
    fn beta_two_cylinders() {
        let two = MinusBetaSystem::integer(2);
        let c = cylinder_interval(&two, &[1]).unwrap();
        assert_eq!(c.lo, rational_point(&two, 1, 2).unwrap());
        assert_eq!(c.hi.cmp_int(1), Ordering::Equal);
        assert!(!c.lo_closed && c.hi_closed);
        let c = cylinder_interval(&two, &[1, 1]).unwrap();
        assert_eq!(c.length(), rational_point(&two, 1, 4).unwrap());
        assert!(c.contains(&rational_point(&two, 2, 3).unwrap()));
        let c = cylinder_interval(&two, &[]).unwrap();
        assert_eq!(c.length().cmp_int(1), Ordering::Equal);
        for w in admissible_words(&two, 4).unwrap() {
            let r = cylinder_measure(&two, &w).unwrap();
            assert_eq!(r.length, rational_point(&two, 1, 16).unwrap());
            assert!(r.upper_bound_ok && r.lower_bound_ok == Some(true));
        }
    }

    #[test]
    fn minimal_pisot_one() {
        let mp = MinusBetaSystem::minimal_pisot();
        let r = cylinder_measure(&mp, &[1]).unwrap();
        let expected = (-mp.beta_inv().unwrap()).add_int(1);
        assert_eq!(r.length, expected);
        assert!(r.upper_bound_ok);
        assert!(matches!(cylinder_interval(&mp, &[1, 0, 1]), Err(MeasureError::InadmissibleWord(_))));
    }

    #[test]
    fn csv_header_and_rows() {
        let two = MinusBetaSystem::integer(2);
        let rows: Vec<_> = admissible_words(&two, 1).unwrap().iter().map(|w| cylinder_measure(&two, w).unwrap().row(1)).collect();
        let csv = cylinder_csv(&rows).unwrap();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "word,lo_exact,hi_exact,lo,hi,length,upper_bound_ok,lower_bound_applicable,lower_bound_ok");
        assert_eq!(lines.next().unwrap(), "0,0,1/2,0.000000000000000,0.500000000000000,0.500000000000000,true,true,true");
    }
}
