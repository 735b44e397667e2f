use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::AlgebraicError;

/// Integer polynomial, coefficients stored low degree first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new<I, T>(coeffs: I) -> Result<Self, AlgebraicError>
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let mut coeffs: Vec<BigInt> = coeffs.into_iter().map(Into::into).collect();
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.len() < 2 {
            return Err(AlgebraicError::ConstantPolynomial);
        }
        Ok(Self { coeffs })
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> &BigInt {
        self.coeffs.last().expect("degree >= 1")
    }

    pub fn to_rat(&self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect())
    }

    /// Clears denominators and content of a rational polynomial. Sign is
    /// normalized so the leading coefficient is positive.
    pub fn primitive_from(p: &RatPoly) -> Result<Self, AlgebraicError> {
        if p.degree().unwrap_or(0) == 0 {
            return Err(AlgebraicError::ConstantPolynomial);
        }
        let lcm = p
            .coeffs()
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut ints: Vec<BigInt> = p
            .coeffs()
            .iter()
            .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if !content.is_zero() {
            for c in &mut ints {
                *c /= &content;
            }
        }
        if ints.last().is_some_and(Signed::is_negative) {
            for c in &mut ints {
                *c = -&*c;
            }
        }
        Self::new(ints)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (sign, abs) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (i, abs.is_one()) {
                (0, _) => write!(f, "{abs}")?,
                (1, true) => write!(f, "X")?,
                (1, false) => write!(f, "{abs}X")?,
                (_, true) => write!(f, "X^{i}")?,
                (_, false) => write!(f, "{abs}X^{i}")?,
            }
        }
        Ok(())
    }
}

/// Dense polynomial over Q, low degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = BigRational::zero();
        Self::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead = divisor.leading().expect("nonzero").clone();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return (Self::zero(), Self::zero());
        };
        if nd < dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = &rem[k + dd] / &lead;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * d;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => {
                let inv = l.recip();
                self.scale(&inv)
            }
            None => Self::zero(),
        }
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s)` with `s*self ≡ g (mod modulus)` and `g` the monic gcd.
    pub fn gcd_cofactor(&self, modulus: &Self) -> (Self, Self) {
        let (mut r0, mut r1) = (modulus.clone(), self.rem(modulus));
        let (mut s0, mut s1) = (Self::zero(), Self::constant(BigRational::one()));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        let lead = r0.leading().cloned().unwrap_or_else(BigRational::one).recip();
        (r0.scale(&lead), s0.scale(&lead))
    }

    /// Canonical Sturm chain `p, p', -rem(p, p'), ...`.
    pub fn sturm_chain(&self) -> Vec<Self> {
        let mut chain = vec![self.clone(), self.derivative()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let r = chain[n - 2].rem(&chain[n - 1]).neg();
            if r.is_zero() {
                break;
            }
            chain.push(r);
        }
        chain
    }

    /// Number of distinct real roots in the half-open interval `(lo, hi]`.
    pub fn count_roots_half_open(chain: &[Self], lo: &BigRational, hi: &BigRational) -> usize {
        let v_lo = sign_variations(chain, lo);
        let v_hi = sign_variations(chain, hi);
        v_lo.saturating_sub(v_hi)
    }

    /// Number of distinct real roots in the closed interval `[lo, hi]`.
    pub fn count_roots(&self, lo: &BigRational, hi: &BigRational) -> usize {
        let chain = self.sturm_chain();
        let at_lo = usize::from(self.eval(lo).is_zero());
        Self::count_roots_half_open(&chain, lo, hi) + at_lo
    }

    /// Cauchy bound: every real root lies in `[-B, B]`.
    pub fn root_bound(&self) -> BigRational {
        let lead = self.leading().expect("nonzero").abs();
        let max = self
            .coeffs
            .iter()
            .take(self.coeffs.len() - 1)
            .map(|c| c.abs() / &lead)
            .fold(BigRational::zero(), |a, b| if b > a { b } else { a });
        max + BigRational::one()
    }

    /// Largest real root to within `tol`, by Sturm-guided bisection.
    pub fn largest_real_root(&self, tol: &BigRational) -> Option<(BigRational, BigRational)> {
        self.degree().filter(|&d| d >= 1)?;
        let squarefree = self.squarefree_part();
        let chain = squarefree.sturm_chain();
        let bound = squarefree.root_bound();
        let mut lo = -bound.clone();
        let mut hi = bound;
        if squarefree.count_roots(&lo, &hi) == 0 {
            return None;
        }
        let two = BigRational::from_integer(2.into());
        while &hi - &lo > *tol {
            let mid = (&lo + &hi) / &two;
            if Self::count_roots_half_open(&chain, &mid, &hi) > 0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Some((lo, hi))
    }

    pub fn squarefree_part(&self) -> Self {
        let g = self.gcd(&self.derivative());
        if g.degree().unwrap_or(0) == 0 {
            self.clone()
        } else {
            self.div_rem(&g).0
        }
    }
}

fn sign_variations(chain: &[RatPoly], x: &BigRational) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for p in chain {
        let v = p.eval(x);
        let s = if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        };
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn rp(c: &[i64]) -> RatPoly {
        RatPoly::new(c.iter().map(|&x| q(x, 1)).collect())
    }

    #[test]
    fn division_identity() {
        let a = rp(&[1, 0, -3, 2, 5]);
        let b = rp(&[-1, 1, 1]);
        let (quot, rem) = a.div_rem(&b);
        assert_eq!(quot.mul(&b).add(&rem), a);
        assert!(rem.degree().unwrap() < 2);
    }

    #[test]
    fn sturm_counts_cubic() {
        // X^3 - X - 1 has a single real root near 1.3247
        let p = rp(&[-1, -1, 0, 1]);
        assert_eq!(p.count_roots(&q(1, 1), &q(2, 1)), 1);
        assert_eq!(p.count_roots(&q(-10, 1), &q(10, 1)), 1);
        // X^2 - 2: two roots
        let p = rp(&[-2, 0, 1]);
        assert_eq!(p.count_roots(&q(-2, 1), &q(2, 1)), 2);
        assert_eq!(p.count_roots(&q(0, 1), &q(1, 1)), 0);
    }

    #[test]
    fn squarefree_removes_repeated_factor() {
        // (X-1)^2 (X+2)
        let p = rp(&[2, -3, 0, 1]);
        let s = p.squarefree_part().monic();
        assert_eq!(s, rp(&[-2, 1, 1]));
    }

    #[test]
    fn cofactor_inverts() {
        let m = rp(&[-1, -1, 0, 1]);
        let a = rp(&[0, 1]);
        let (g, s) = a.gcd_cofactor(&m);
        assert_eq!(g, rp(&[1]));
        assert_eq!(a.mul(&s).rem(&m), rp(&[1]));
    }

    #[test]
    fn display_int_poly() {
        let p = IntPolynomial::new([-1, -1, 0, 1]).unwrap();
        assert_eq!(p.to_string(), "X^3 - X - 1");
        assert!(IntPolynomial::new([5]).is_err());
    }
}
