use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::RatPoly;
use super::{AlgebraicError, AlgebraicNumber};

/// Refinement levels tried before `to_decimal` settles for the midpoint.
const MAX_DECIMAL_LEVELS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn as_ordering(self) -> Ordering {
        match self {
            Sign::Negative => Ordering::Less,
            Sign::Zero => Ordering::Equal,
            Sign::Positive => Ordering::Greater,
        }
    }
}

/// Element of Q(β) in the power basis `c0 + c1 β + ... + c_{d-1} β^{d-1}`.
///
/// Equality and ordering are decided on the real value.
#[derive(Clone)]
pub struct FieldElement {
    field: Arc<AlgebraicNumber>,
    coeffs: Vec<BigRational>,
}

impl FieldElement {
    pub fn from_poly(field: &Arc<AlgebraicNumber>, p: &RatPoly) -> Self {
        let reduced = p.rem(field.modulus());
        let mut coeffs = reduced.coeffs().to_vec();
        coeffs.resize(field.degree(), BigRational::zero());
        Self { field: Arc::clone(field), coeffs }
    }

    pub fn from_rational(field: &Arc<AlgebraicNumber>, r: BigRational) -> Self {
        Self::from_poly(field, &RatPoly::constant(r))
    }

    pub fn from_int(field: &Arc<AlgebraicNumber>, n: i64) -> Self {
        Self::from_rational(field, BigRational::from_integer(n.into()))
    }

    pub fn zero(field: &Arc<AlgebraicNumber>) -> Self {
        Self::from_int(field, 0)
    }

    pub fn one(field: &Arc<AlgebraicNumber>) -> Self {
        Self::from_int(field, 1)
    }

    pub fn field(&self) -> &Arc<AlgebraicNumber> {
        &self.field
    }

    /// Coefficients in the power basis of β, length `deg(minpoly)`.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    fn as_poly(&self) -> RatPoly {
        RatPoly::new(self.coeffs.clone())
    }

    fn check_field(&self, other: &Self) -> Result<(), AlgebraicError> {
        if self.field.same_as(&other.field) {
            Ok(())
        } else {
            Err(AlgebraicError::MixedFields)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, AlgebraicError> {
        self.check_field(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(Self { field: Arc::clone(&self.field), coeffs })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, AlgebraicError> {
        self.check_field(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(Self { field: Arc::clone(&self.field), coeffs })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, AlgebraicError> {
        self.check_field(other)?;
        Ok(Self::from_poly(&self.field, &self.as_poly().mul(&other.as_poly())))
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self { field: Arc::clone(&self.field), coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    pub fn add_int(&self, n: i64) -> Self {
        let mut out = self.clone();
        out.coeffs[0] += BigRational::from_integer(n.into());
        out
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse of a nonzero element.
    pub fn inv(&self) -> Result<Self, AlgebraicError> {
        let modulus = self.field.modulus();
        let a = self.as_poly();
        let (g, s) = a.gcd_cofactor(modulus);
        if g.degree() == Some(0) {
            return Ok(Self::from_poly(&self.field, &s));
        }
        if self.is_zero() {
            return Err(AlgebraicError::DivisionByZero);
        }
        // β is a root of modulus/g; invert there instead
        let h = modulus.div_rem(&g).0;
        let (_, s) = a.gcd_cofactor(&h);
        Ok(Self::from_poly(&self.field, &s.rem(&h)))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, AlgebraicError> {
        self.checked_mul(&other.inv()?)
    }

    /// Rational enclosure of the value using the `level`-th refinement of β.
    pub fn enclosure(&self, level: usize) -> (BigRational, BigRational) {
        let (blo, bhi) = self.field.interval_at(level);
        let mut lo = BigRational::zero();
        let mut hi = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            let cands = [&lo * &blo, &lo * &bhi, &hi * &blo, &hi * &bhi];
            let mut min = cands[0].clone();
            let mut max = cands[0].clone();
            for v in &cands[1..] {
                if *v < min {
                    min = v.clone();
                }
                if *v > max {
                    max = v.clone();
                }
            }
            lo = min + c;
            hi = max + c;
        }
        (lo, hi)
    }

    pub fn is_zero(&self) -> bool {
        if self.coeffs.iter().all(Zero::is_zero) {
            return true;
        }
        let (lo, hi) = self.enclosure(0);
        if lo.is_positive() || hi.is_negative() {
            return false;
        }
        let modulus = self.field.modulus();
        let g = self.as_poly().gcd(modulus);
        if g.degree().unwrap_or(0) == 0 {
            return false;
        }
        let (blo, bhi) = self.field.interval();
        g.count_roots(blo, bhi) > 0
    }

    /// Exact sign; nonzero signs are found by refining β until the value's
    /// enclosure excludes zero.
    pub fn sign(&self) -> Sign {
        if self.is_zero() {
            return Sign::Zero;
        }
        let mut level = 0;
        loop {
            let (lo, hi) = self.enclosure(level);
            if lo.is_positive() {
                return Sign::Positive;
            }
            if hi.is_negative() {
                return Sign::Negative;
            }
            level += 1;
        }
    }

    pub fn cmp_value(&self, other: &Self) -> Ordering {
        (self - other).sign().as_ordering()
    }

    pub fn cmp_int(&self, n: i64) -> Ordering {
        self.add_int(-n).sign().as_ordering()
    }

    /// Largest integer not exceeding the value.
    pub fn floor(&self) -> BigInt {
        for level in 0..2 {
            let (lo, hi) = self.enclosure(level);
            let (fl, fh) = (lo.floor(), hi.floor());
            if fl == fh {
                return fl.to_integer();
            }
        }
        let guess = self.to_f64().floor();
        let mut k = BigInt::from(guess as i64);
        loop {
            let kk = k.to_i64().expect("floor fits in i64");
            match (self.cmp_int(kk), self.cmp_int(kk + 1)) {
                (Ordering::Less, _) => k -= 1,
                (_, Ordering::Less) => return k,
                _ => k += 1,
            }
        }
    }

    /// `Some(k)` when the value is exactly the integer k.
    pub fn as_integer(&self) -> Option<BigInt> {
        let k = self.floor();
        self.sub_int_big(&k).is_zero().then_some(k)
    }

    fn sub_int_big(&self, k: &BigInt) -> Self {
        let mut out = self.clone();
        out.coeffs[0] -= BigRational::from_integer(k.clone());
        out
    }

    /// Value as `f64`, with relative error near machine precision.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let mut level = 0;
        loop {
            let (lo, hi) = self.enclosure(level);
            let (l, h) = (lo.to_f64().unwrap_or(f64::NAN), hi.to_f64().unwrap_or(f64::NAN));
            let close = (h - l).abs() <= 1e-17 * l.abs().max(h.abs());
            if (close && l.signum() == h.signum()) || level >= 6 {
                return ((lo + hi) / BigRational::from_integer(2.into())).to_f64().unwrap_or(l);
            }
            level += 1;
        }
    }

    /// Decimal string with exactly `digits` digits after the point, rounded
    /// half away from zero.
    pub fn to_decimal(&self, digits: usize) -> String {
        let scale = BigInt::from(10u32).pow(digits as u32);
        let scale_r = BigRational::from_integer(scale.clone());
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let round = |x: &BigRational| -> BigInt {
            let y = x * &scale_r;
            if y.is_negative() {
                -((-y) + &half).floor().to_integer()
            } else {
                (y + &half).floor().to_integer()
            }
        };
        let rounded = if self.coeffs.iter().skip(1).all(Zero::is_zero) {
            round(&self.coeffs[0])
        } else {
            let mut level = 0;
            loop {
                let (lo, hi) = self.enclosure(level);
                let (a, b) = (round(&lo), round(&hi));
                if a == b || level >= MAX_DECIMAL_LEVELS {
                    break round(&((lo + hi) / BigRational::from_integer(2.into())));
                }
                level += 1;
            }
        };
        format_scaled(&rounded, &scale, digits)
    }
}

fn format_scaled(n: &BigInt, scale: &BigInt, digits: usize) -> String {
    let neg = n.is_negative();
    let abs = n.abs();
    let int_part = &abs / scale;
    let frac = &abs % scale;
    let sign = if neg && !abs.is_zero() { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{:0>width$}", frac.to_string(), width = digits)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement({self} ≈ {})", self.to_f64())
    }
}

/// Power-basis form, e.g. `1/2 + 0*b - 3*b^2`.
impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                if c.is_negative() {
                    write!(f, " - ")?;
                } else {
                    write!(f, " + ")?;
                }
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let abs = c.abs();
            match i {
                0 => write!(f, "{abs}")?,
                1 => write!(f, "{abs}*b")?,
                _ => write!(f, "{abs}*b^{i}")?,
            }
        }
        Ok(())
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.field.same_as(&other.field) && (self - other).is_zero()
    }
}

impl Eq for FieldElement {}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_value(other)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        /// Panics if the operands live in different fields.
        impl $trait<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$checked(rhs).expect("operands from the same field")
            }
        }

        impl $trait<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { field: Arc::clone(&self.field), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebraic::IntPolynomial;

    fn pisot() -> Arc<AlgebraicNumber> {
        let p = IntPolynomial::new([-1, -1, 0, 1]).unwrap();
        AlgebraicNumber::new(&p, BigRational::from_integer(1.into()), BigRational::from_integer(2.into())).unwrap()
    }

    fn coeffs_of(x: &FieldElement) -> Vec<BigRational> {
        x.coeffs().to_vec()
    }

    fn ints(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&n| BigRational::from_integer(n.into())).collect()
    }

    #[test]
    fn field_arith_examples() {
        let f = pisot();
        let beta = f.generator();
        assert_eq!(coeffs_of(&(&beta - &beta)), ints(&[0, 0, 0]));
        let sq = &beta * &beta;
        assert_eq!(coeffs_of(&sq), ints(&[0, 0, 1]));
        // β^3 = β + 1
        assert_eq!(coeffs_of(&(&beta * &sq)), ints(&[1, 1, 0]));
    }

    #[test]
    fn sign_examples() {
        let f = pisot();
        let beta = f.generator();
        let rel = &(&beta.pow(3) - &beta).add_int(-1);
        assert_eq!(rel.sign(), Sign::Zero);
        assert_eq!(beta.add_int(-1).sign(), Sign::Positive);
        assert_eq!((-&beta).add_int(2).sign(), Sign::Positive);
        assert_eq!(beta.floor(), BigInt::from(1));
    }

    #[test]
    fn decimals() {
        let f = pisot();
        assert_eq!(f.generator().to_decimal(10), "1.3247179572");
        let half = FieldElement::from_rational(&f, BigRational::new(1.into(), 2.into()));
        assert_eq!(half.to_decimal(10), "0.5000000000");
        assert_eq!(FieldElement::zero(&f).to_decimal(10), "0.0000000000");
        assert_eq!((-&f.generator()).to_decimal(3), "-1.325");
    }

    #[test]
    fn inverse_roundtrip() {
        let f = pisot();
        let beta = f.generator();
        let x = &beta.pow(2).add_int(-3) * &beta;
        let inv = x.inv().unwrap();
        assert_eq!(&x * &inv, FieldElement::one(&f));
        assert!(FieldElement::zero(&f).inv().is_err());
    }

    #[test]
    fn mixed_fields_rejected() {
        let a = pisot().generator();
        let p = IntPolynomial::new([-2, 0, 1]).unwrap();
        let sqrt2 = AlgebraicNumber::new(&p, BigRational::from_integer(1.into()), BigRational::from_integer(2.into()))
            .unwrap()
            .generator();
        assert!(matches!(a.checked_add(&sqrt2), Err(AlgebraicError::MixedFields)));
    }

    #[test]
    fn reducible_modulus_value_semantics() {
        // X^4 - 4 = (X^2 - 2)(X^2 + 2): irreducible pieces, no rational roots
        let p = IntPolynomial::new([-4, 0, 0, 0, 1]).unwrap();
        let f = AlgebraicNumber::new(&p, BigRational::from_integer(1.into()), BigRational::from_integer(2.into()))
            .unwrap();
        let beta = f.generator();
        let two = FieldElement::from_int(&f, 2);
        // β^2 - 2 is zero as a value even though the vector is not
        let z = &(&beta * &beta) - &two;
        assert!(z.coeffs().iter().any(|c| !c.is_zero()));
        assert_eq!(z.sign(), Sign::Zero);
        let inv = beta.inv().unwrap();
        assert_eq!(&inv * &beta, FieldElement::one(&f));
    }
}
