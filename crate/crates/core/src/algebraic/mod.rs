//! Exact arithmetic in the real number field Q(β) generated by an algebraic β.
//!
//! β is given by an integer polynomial and a rational interval isolating one
//! of its real roots. Field elements are polynomials in β reduced modulo the
//! (squarefree) defining polynomial; zero tests go through a gcd with that
//! polynomial and nonzero signs through interval refinement of β, so no
//! floating point enters any decision.

mod field;
mod number;
mod poly;

use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

pub use field::{FieldElement, Sign};
pub use number::AlgebraicNumber;
pub use poly::{IntPolynomial, RatPoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraicError {
    #[error("polynomial must be nonconstant")]
    ConstantPolynomial,
    #[error("no real root in [{lo}, {hi}]")]
    NoRootInInterval { lo: String, hi: String },
    #[error("interval contains {distinct} distinct roots ({with_multiplicity} counted with multiplicity)")]
    MultipleRootsInInterval { distinct: usize, with_multiplicity: usize },
    #[error("operands belong to different number fields")]
    MixedFields,
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse beta specification: {0}")]
    Parse(String),
}

/// Field operations exposed as a single entry point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
}

pub fn make_algebraic(p: &IntPolynomial, lo: BigRational, hi: BigRational) -> Result<Arc<AlgebraicNumber>, AlgebraicError> {
    AlgebraicNumber::new(p, lo, hi)
}

pub fn field_arith(a: &FieldElement, b: &FieldElement, op: FieldOp) -> Result<FieldElement, AlgebraicError> {
    match op {
        FieldOp::Add => a.checked_add(b),
        FieldOp::Sub => a.checked_sub(b),
        FieldOp::Mul => a.checked_mul(b),
    }
}

pub fn sign_of(a: &FieldElement) -> Sign {
    a.sign()
}

pub fn to_decimal(a: &FieldElement, digits: usize) -> String {
    a.to_decimal(digits)
}

/// Parsed β input.
///
/// Grammar: `poly:<c0,c1,...,ck>;interval:<lo>,<hi>` (coefficients low degree
/// first, rationals written `p/q`) or `decimal:<d>;precision:<digits>`.
#[derive(Debug, Clone)]
pub enum BetaSpec {
    Exact(Arc<AlgebraicNumber>),
    /// A decimal approximation; usable only by numeric (non-certifying) paths.
    Decimal { value: BigRational, digits: u32 },
}

impl BetaSpec {
    pub fn approx(&self) -> f64 {
        match self {
            BetaSpec::Exact(a) => a.approx(),
            BetaSpec::Decimal { value, .. } => num_traits::ToPrimitive::to_f64(value).unwrap_or(f64::NAN),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, BetaSpec::Exact(_))
    }
}

impl FromStr for BetaSpec {
    type Err = AlgebraicError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |m: &str| AlgebraicError::Parse(format!("{m} in {s:?}"));
        let mut fields = std::collections::BTreeMap::new();
        for part in s.split(';') {
            let (k, v) = part.split_once(':').ok_or_else(|| err("expected key:value"))?;
            fields.insert(k.trim(), v.trim());
        }
        if let Some(poly) = fields.get("poly") {
            let coeffs = poly
                .split(',')
                .map(|c| c.trim().parse::<BigInt>().map_err(|_| err("bad coefficient")))
                .collect::<Result<Vec<_>, _>>()?;
            let interval = fields.get("interval").ok_or_else(|| err("missing interval"))?;
            let (lo, hi) = interval.split_once(',').ok_or_else(|| err("interval needs lo,hi"))?;
            let p = IntPolynomial::new(coeffs)?;
            let beta = AlgebraicNumber::new(&p, parse_rational(lo).ok_or_else(|| err("bad lo"))?, parse_rational(hi).ok_or_else(|| err("bad hi"))?)?;
            Ok(BetaSpec::Exact(beta))
        } else if let Some(dec) = fields.get("decimal") {
            let value = parse_decimal(dec).ok_or_else(|| err("bad decimal"))?;
            let digits = match fields.get("precision") {
                Some(p) => p.parse().map_err(|_| err("bad precision"))?,
                None => 17,
            };
            Ok(BetaSpec::Decimal { value, digits })
        } else {
            Err(err("expected poly: or decimal:"))
        }
    }
}

/// Parses `n`, `p/q` or a plain decimal such as `1.5`.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(BigRational::new(p.trim().parse().ok()?, q));
    }
    parse_decimal(s)
}

fn parse_decimal(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    let digits = format!("{int}{frac}");
    if !digits.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let num: BigInt = digits.parse().ok()?;
    let den = BigInt::from(10u32).pow(frac.len() as u32);
    let r = BigRational::new(num, den);
    Some(if neg { -r } else { r })
}

/// Convenience: the minimal Pisot number, the real root of X³ − X − 1.
pub fn minimal_pisot() -> Arc<AlgebraicNumber> {
    let p = IntPolynomial::new([-1, -1, 0, 1]).expect("cubic");
    AlgebraicNumber::new(&p, BigRational::one(), BigRational::from_integer(2.into())).expect("isolated root")
}

/// Convenience: an integer β as a degree-one algebraic number.
pub fn integer_beta(n: i64) -> Arc<AlgebraicNumber> {
    Arc::new(AlgebraicNumber::rational(BigRational::from_integer(n.into())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_poly_spec() {
        let spec: BetaSpec = "poly:-1,-1,0,1;interval:1,2".parse().unwrap();
        let BetaSpec::Exact(beta) = spec else { panic!("expected exact") };
        assert_eq!(beta.minpoly().to_string(), "X^3 - X - 1");
        let spec: BetaSpec = "poly:-2,1;interval:1/2,3".parse().unwrap();
        assert!((spec.approx() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn parse_decimal_spec() {
        let spec: BetaSpec = "decimal:1.8;precision:200".parse().unwrap();
        match spec {
            BetaSpec::Decimal { value, digits } => {
                assert_eq!(value, BigRational::new(9.into(), 5.into()));
                assert_eq!(digits, 200);
            }
            _ => panic!("expected decimal"),
        }
        assert!("decimal:abc".parse::<BetaSpec>().is_err());
        assert!("poly:1,2".parse::<BetaSpec>().is_err());
        assert!("nonsense".parse::<BetaSpec>().is_err());
    }

    #[test]
    fn make_algebraic_examples() {
        let r = |n: i64| BigRational::from_integer(n.into());
        let beta = minimal_pisot();
        assert_eq!(beta.generator().to_decimal(10), "1.3247179572");
        let two = make_algebraic(&IntPolynomial::new([-2, 1]).unwrap(), r(1), r(3)).unwrap();
        assert_eq!(two.generator().cmp_int(2), std::cmp::Ordering::Equal);
        let sqrt2 = make_algebraic(&IntPolynomial::new([-2, 0, 1]).unwrap(), r(1), r(2)).unwrap();
        assert_eq!(sqrt2.generator().to_decimal(8), "1.41421356");
    }
}
