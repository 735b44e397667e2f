use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;

use super::order::{alt_compare_with, AltOrder, AltOrdering, Digits};
use super::{DigitSequence, NegaBetaError};
use crate::algebraic::{self, AlgebraicNumber, BetaSpec, FieldElement, Sign};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CaseTag {
    /// i′(1) = (w0)^∞; interior breakpoints map to 0.
    Case1,
    /// Every other expansion; interior breakpoints map to 1.
    Case2,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    FromBelow,
    FromAbove,
    Exact,
}

impl Side {
    fn flip(self) -> Self {
        match self {
            Side::FromBelow => Side::FromAbove,
            Side::FromAbove => Side::FromBelow,
            Side::Exact => Side::Exact,
        }
    }
}

/// A point of [0, 1] together with the side from which it is approached.
///
/// Every branch reverses orientation, so the side flips at each step; it is
/// carried along the whole orbit and only matters when the orbit lands on a
/// breakpoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedPoint {
    pub value: FieldElement,
    pub side: Side,
}

/// One cell J_i of the digit partition. Endpoints are `lo_num/β` and
/// `hi_num/β`, with `hi_num = None` meaning the point 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionCell {
    pub digit: u8,
    pub lo_num: u8,
    pub hi_num: Option<u8>,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

#[derive(Debug, Clone)]
struct ExactBeta {
    beta: FieldElement,
    beta_inv: FieldElement,
}

#[derive(Debug, Clone)]
pub struct MinusBetaSystem {
    spec: BetaSpec,
    b: u8,
    case_tag: CaseTag,
    expansion: Option<DigitSequence>,
    exact: Option<ExactBeta>,
}

enum Position {
    Interior(u8),
    /// βx equals this integer.
    Breakpoint(u8),
}

impl MinusBetaSystem {
    pub fn new(spec: BetaSpec) -> Result<Self, NegaBetaError> {
        let (b, exact) = match &spec {
            BetaSpec::Exact(a) => {
                let beta = a.generator();
                if beta.cmp_int(1) != std::cmp::Ordering::Greater {
                    return Err(NegaBetaError::BetaTooSmall);
                }
                let beta_inv = beta.inv()?;
                let b = match beta.as_integer() {
                    Some(k) => k - 1,
                    None => beta.floor(),
                };
                (b, Some(ExactBeta { beta, beta_inv }))
            }
            BetaSpec::Decimal { value, .. } => {
                if *value <= BigRational::one() {
                    return Err(NegaBetaError::BetaTooSmall);
                }
                let b = if value.is_integer() { value.to_integer() - 1 } else { value.floor().to_integer() };
                (b, None)
            }
        };
        let b = b.to_u8().filter(|&b| b < u8::MAX).ok_or(NegaBetaError::AlphabetTooLarge)?;
        Ok(Self { spec, b, case_tag: CaseTag::Unknown, expansion: None, exact })
    }

    pub fn from_algebraic(beta: Arc<AlgebraicNumber>) -> Result<Self, NegaBetaError> {
        Self::new(BetaSpec::Exact(beta))
    }

    /// Builds the system and computes i′(1) in one go.
    pub fn yrrap(spec: BetaSpec, max_steps: usize) -> Result<Self, NegaBetaError> {
        let mut sys = Self::new(spec)?;
        sys.expansion_of_one(max_steps)?;
        Ok(sys)
    }

    pub fn minimal_pisot() -> Self {
        Self::yrrap(BetaSpec::Exact(algebraic::minimal_pisot()), 64).expect("minimal Pisot is Yrrap")
    }

    pub fn integer(n: i64) -> Self {
        Self::yrrap(BetaSpec::Exact(algebraic::integer_beta(n)), 64).expect("integer beta is Yrrap")
    }

    pub fn spec(&self) -> &BetaSpec {
        &self.spec
    }

    pub fn b(&self) -> u8 {
        self.b
    }

    pub fn case_tag(&self) -> CaseTag {
        self.case_tag
    }

    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    pub fn beta_approx(&self) -> f64 {
        self.spec.approx()
    }

    /// Rational approximation of β; exact mode refines to about `bits` bits.
    pub fn beta_rational(&self, bits: u64) -> BigRational {
        match &self.spec {
            BetaSpec::Exact(a) => a.approx_rational(bits),
            BetaSpec::Decimal { value, .. } => value.clone(),
        }
    }

    pub fn expansion(&self) -> Result<&DigitSequence, NegaBetaError> {
        self.expansion.as_ref().ok_or(NegaBetaError::ExpansionMissing)
    }

    fn exact(&self) -> Result<&ExactBeta, NegaBetaError> {
        self.exact.as_ref().ok_or(NegaBetaError::InexactMode)
    }

    pub fn field(&self) -> Result<&Arc<AlgebraicNumber>, NegaBetaError> {
        Ok(self.exact()?.beta.field())
    }

    pub fn beta(&self) -> Result<&FieldElement, NegaBetaError> {
        Ok(&self.exact()?.beta)
    }

    pub fn beta_inv(&self) -> Result<&FieldElement, NegaBetaError> {
        Ok(&self.exact()?.beta_inv)
    }

    pub fn elem_int(&self, n: i64) -> Result<FieldElement, NegaBetaError> {
        Ok(FieldElement::from_int(self.field()?, n))
    }

    pub fn elem_rational(&self, r: BigRational) -> Result<FieldElement, NegaBetaError> {
        Ok(FieldElement::from_rational(self.field()?, r))
    }

    /// The digit partition J_0, …, J_b; endpoint flags depend on the case.
    pub fn partition(&self) -> Vec<PartitionCell> {
        let case1 = self.case_tag == CaseTag::Case1;
        let known = self.case_tag != CaseTag::Unknown;
        (0..=self.b)
            .map(|i| PartitionCell {
                digit: i,
                lo_num: i,
                hi_num: (i < self.b).then_some(i + 1),
                lo_closed: i == 0 || (known && !case1),
                hi_closed: i == self.b || (case1 && known),
            })
            .collect()
    }

    fn check_domain(&self, x: &FieldElement) -> Result<(), NegaBetaError> {
        if x.sign() == Sign::Negative || x.cmp_int(1) == std::cmp::Ordering::Greater {
            return Err(NegaBetaError::OutOfDomain);
        }
        Ok(())
    }

    /// Locates x relative to the breakpoints and returns βx.
    fn locate(&self, x: &FieldElement) -> Result<(Position, FieldElement), NegaBetaError> {
        let y = &self.exact()?.beta * x;
        let k = y.floor();
        let kk = k.to_u8().filter(|&k| k <= self.b + 1).ok_or(NegaBetaError::OutOfDomain)?;
        let on_break = y.add_int(-(kk as i64)).is_zero();
        Ok((if on_break { Position::Breakpoint(kk) } else { Position::Interior(kk) }, y))
    }

    /// One application of T₋β to a signed point; returns the digit read.
    pub fn step(&self, p: &SignedPoint) -> Result<(u8, SignedPoint), NegaBetaError> {
        let (pos, y) = self.locate(&p.value)?;
        let (digit, value) = match pos {
            Position::Interior(k) => (k, (-&y).add_int(k as i64 + 1)),
            Position::Breakpoint(k) => {
                let f = self.field()?;
                match p.side {
                    Side::FromBelow if k == 0 => return Err(NegaBetaError::OutOfDomain),
                    Side::FromBelow => (k - 1, FieldElement::zero(f)),
                    Side::FromAbove if k > self.b => return Err(NegaBetaError::OutOfDomain),
                    Side::FromAbove => (k, FieldElement::one(f)),
                    Side::Exact => self.exact_breakpoint(k)?,
                }
            }
        };
        Ok((digit, SignedPoint { value, side: p.side.flip() }))
    }

    fn exact_breakpoint(&self, k: u8) -> Result<(u8, FieldElement), NegaBetaError> {
        let f = self.field()?;
        if k == 0 {
            return Ok((0, FieldElement::one(f)));
        }
        if k == self.b + 1 {
            // x = 1 with β an integer
            return Ok((self.b, FieldElement::zero(f)));
        }
        match self.case_tag {
            CaseTag::Case1 => Ok((k - 1, FieldElement::zero(f))),
            CaseTag::Case2 => Ok((k, FieldElement::one(f))),
            CaseTag::Unknown => Err(NegaBetaError::CaseUnknown),
        }
    }

    pub fn apply_map(&self, x: &FieldElement) -> Result<FieldElement, NegaBetaError> {
        self.exact()?;
        self.check_domain(x)?;
        Ok(self.step(&SignedPoint { value: x.clone(), side: Side::Exact })?.1.value)
    }

    /// Computes i′(1) by iterating (1, from below) until an exact (value, side)
    /// pair repeats; fixes the case tag.
    pub fn expansion_of_one(&mut self, max_steps: usize) -> Result<DigitSequence, NegaBetaError> {
        if let Some(s) = &self.expansion {
            return Ok(s.clone());
        }
        let one = FieldElement::one(self.field()?);
        let mut p = SignedPoint { value: one, side: Side::FromBelow };
        let mut seen: HashMap<(Vec<BigRational>, Side), usize> = HashMap::new();
        let mut digits = Vec::new();
        for n in 0..max_steps {
            if let Some(&j) = seen.get(&(p.value.coeffs().to_vec(), p.side)) {
                let period = digits.split_off(j);
                let s = DigitSequence::new(digits, period, self.b)?;
                self.case_tag = if s.is_w0_periodic() { CaseTag::Case1 } else { CaseTag::Case2 };
                self.expansion = Some(s.clone());
                return Ok(s);
            }
            seen.insert((p.value.coeffs().to_vec(), p.side), n);
            let (d, next) = self.step(&p)?;
            digits.push(d);
            p = next;
        }
        Err(NegaBetaError::NotEventuallyPeriodic { steps: max_steps })
    }

    /// Branch indices visited by x during n steps.
    pub fn itinerary(&self, x: &FieldElement, n: usize) -> Result<Vec<u8>, NegaBetaError> {
        self.exact()?;
        self.check_domain(x)?;
        let mut out = Vec::with_capacity(n);
        let mut x = x.clone();
        for step in 0..n {
            let (pos, y) = self.locate(&x)?;
            let d = match pos {
                Position::Interior(k) => k,
                Position::Breakpoint(0) => 0,
                Position::Breakpoint(k) if k == self.b + 1 => self.b,
                Position::Breakpoint(_) => return Err(NegaBetaError::HitBoundary { step }),
            };
            out.push(d);
            x = (-&y).add_int(d as i64 + 1);
        }
        Ok(out)
    }

    /// Itinerary of a signed point; breakpoints are resolved by the side.
    pub fn itinerary_signed(&self, p: &SignedPoint, n: usize) -> Result<Vec<u8>, NegaBetaError> {
        let mut p = p.clone();
        let mut out = Vec::with_capacity(n);
        for _ in 0..n {
            let (d, next) = self.step(&p)?;
            out.push(d);
            p = next;
        }
        Ok(out)
    }

    pub fn word_admissible(&self, w: &[u8]) -> Result<bool, NegaBetaError> {
        self.word_admissible_with(w, AltOrder::Adopted)
    }

    /// Every suffix of w must not exceed i′(1) in the alternating order.
    pub fn word_admissible_with(&self, w: &[u8], order: AltOrder) -> Result<bool, NegaBetaError> {
        let s = self.expansion()?;
        if w.iter().any(|&d| d > self.b) {
            return Ok(false);
        }
        Ok((0..w.len()).all(|k| alt_compare_with(Digits::Word(&w[k..]), Digits::Seq(s), order) != AltOrdering::Greater))
    }

    /// The point of [0, 1] coded by s: Σ (−1)^k (s_k + 1) β^{−(k+1)}.
    pub fn value_of(&self, s: &DigitSequence) -> Result<FieldElement, NegaBetaError> {
        let e = self.exact()?;
        let neg_inv = -&e.beta_inv;
        let partial = |w: &[u8]| {
            let mut acc = FieldElement::zero(e.beta.field());
            let mut pw = e.beta_inv.clone();
            for (k, &d) in w.iter().enumerate() {
                let term = pw.scale(&BigRational::from_integer(BigInt::from(d as i64 + 1)));
                acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
                pw = &pw * &e.beta_inv;
            }
            acc
        };
        let head = partial(s.preperiod());
        let cycle = partial(s.period());
        let denom = (-&neg_inv.pow(s.v() as u32)).add_int(1);
        let tail = &neg_inv.pow(s.u() as u32) * &cycle.checked_div(&denom)?;
        Ok(&head + &tail)
    }
}

impl PartitionCell {
    pub fn lo(&self, sys: &MinusBetaSystem) -> Result<FieldElement, NegaBetaError> {
        Ok(sys.beta_inv()?.scale(&BigRational::from_integer(self.lo_num.into())))
    }

    pub fn hi(&self, sys: &MinusBetaSystem) -> Result<FieldElement, NegaBetaError> {
        match self.hi_num {
            Some(k) => Ok(sys.beta_inv()?.scale(&BigRational::from_integer(k.into()))),
            None => sys.elem_int(1),
        }
    }
}

/// Rational point helper for tests and callers holding an exact system.
pub fn rational_point(sys: &MinusBetaSystem, p: i64, q: i64) -> Result<FieldElement, NegaBetaError> {
    let r = BigRational::new(p.into(), q.into());
    if r.is_negative() {
        return Err(NegaBetaError::OutOfDomain);
    }
    sys.elem_rational(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::negabeta::format_word;

    #[test]
    fn minimal_pisot_expansion() {
        let sys = MinusBetaSystem::minimal_pisot();
        assert_eq!(sys.expansion().unwrap().to_string(), "100(1)");
        assert_eq!(sys.case_tag(), CaseTag::Case2);
        assert_eq!(sys.b(), 1);
    }

    #[test]
    fn integer_expansions() {
        let two = MinusBetaSystem::integer(2);
        assert_eq!(two.expansion().unwrap().to_string(), "(10)");
        assert_eq!(two.case_tag(), CaseTag::Case1);
        let three = MinusBetaSystem::integer(3);
        assert_eq!(three.expansion().unwrap().to_string(), "(20)");
        assert_eq!(three.case_tag(), CaseTag::Case1);
    }

    #[test]
    fn apply_map_examples() {
        let two = MinusBetaSystem::integer(2);
        let x = rational_point(&two, 3, 4).unwrap();
        assert_eq!(two.apply_map(&x).unwrap(), rational_point(&two, 1, 2).unwrap());
        let zero = two.elem_int(0).unwrap();
        assert_eq!(two.apply_map(&zero).unwrap().cmp_int(1), std::cmp::Ordering::Equal);
        let mp = MinusBetaSystem::minimal_pisot();
        let inv = mp.beta_inv().unwrap().clone();
        assert_eq!(mp.apply_map(&inv).unwrap().cmp_int(1), std::cmp::Ordering::Equal);
        assert_eq!(mp.apply_map(&mp.elem_int(0).unwrap()).unwrap().cmp_int(1), std::cmp::Ordering::Equal);
        // β=2 is Case 1: the breakpoint 1/2 goes to 0
        let half = rational_point(&two, 1, 2).unwrap();
        assert!(two.apply_map(&half).unwrap().is_zero());
        assert_eq!(two.apply_map(&rational_point(&two, 3, 2).unwrap()), Err(NegaBetaError::OutOfDomain));
    }

    #[test]
    fn case_unknown_before_expansion() {
        let sys = MinusBetaSystem::new(BetaSpec::Exact(algebraic::minimal_pisot())).unwrap();
        let inv = sys.beta_inv().unwrap().clone();
        assert_eq!(sys.apply_map(&inv), Err(NegaBetaError::CaseUnknown));
    }

    #[test]
    fn itineraries() {
        let two = MinusBetaSystem::integer(2);
        let x = rational_point(&two, 2, 3).unwrap();
        assert_eq!(format_word(&two.itinerary(&x, 8).unwrap(), 1), "11111111");
        for sys in [MinusBetaSystem::minimal_pisot(), two.clone(), MinusBetaSystem::integer(3)] {
            let fixed0 = sys.beta().unwrap().add_int(1).inv().unwrap();
            assert_eq!(sys.itinerary(&fixed0, 12).unwrap(), vec![0; 12]);
            assert!(sys.itinerary(&fixed0, 0).unwrap().is_empty());
        }
        let half = rational_point(&two, 1, 2).unwrap();
        assert_eq!(two.itinerary(&half, 3), Err(NegaBetaError::HitBoundary { step: 0 }));
    }

    #[test]
    fn admissibility_examples() {
        let mp = MinusBetaSystem::minimal_pisot();
        assert!(mp.word_admissible(&[1, 1]).unwrap());
        assert!(!mp.word_admissible(&[1, 0, 1]).unwrap());
        assert!(mp.word_admissible(&[]).unwrap());
        assert!(mp.word_admissible(&[1, 0, 0, 1, 1, 1]).unwrap());
        assert!(!mp.word_admissible(&[0, 1, 0, 1]).unwrap());
    }

    #[test]
    fn values() {
        for sys in [MinusBetaSystem::minimal_pisot(), MinusBetaSystem::integer(2), MinusBetaSystem::integer(3)] {
            let one = sys.value_of(sys.expansion().unwrap()).unwrap();
            assert_eq!(one.cmp_int(1), std::cmp::Ordering::Equal);
            let zero_seq = DigitSequence::constant(0, sys.b()).unwrap();
            let expected = sys.beta().unwrap().add_int(1).inv().unwrap();
            assert_eq!(sys.value_of(&zero_seq).unwrap(), expected);
        }
        let two = MinusBetaSystem::integer(2);
        let ones = DigitSequence::constant(1, 1).unwrap();
        assert_eq!(two.value_of(&ones).unwrap(), rational_point(&two, 2, 3).unwrap());
    }

    #[test]
    fn decimal_mode_refuses_exact_work() {
        let spec: BetaSpec = "decimal:1.8;precision:50".parse().unwrap();
        let mut sys = MinusBetaSystem::new(spec).unwrap();
        assert_eq!(sys.b(), 1);
        assert_eq!(sys.expansion_of_one(10), Err(NegaBetaError::InexactMode));
        assert!(!sys.is_exact());
    }

    #[test]
    fn golden_ratio_expansion() {
        let p = algebraic::IntPolynomial::new([-1, -1, 1]).unwrap();
        let beta = algebraic::make_algebraic(&p, BigRational::one(), BigRational::from_integer(2.into())).unwrap();
        let sys = MinusBetaSystem::yrrap(BetaSpec::Exact(beta), 64).unwrap();
        assert_eq!(sys.expansion().unwrap().to_string(), "1(0)");
        assert_eq!(sys.case_tag(), CaseTag::Case2);
    }
}
