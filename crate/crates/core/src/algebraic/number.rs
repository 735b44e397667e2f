use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::{IntPolynomial, RatPoly};
use super::{AlgebraicError, FieldElement};

/// Width of the isolating interval kept after construction, as a power of two.
const BASE_PRECISION_BITS: u32 = 64;

/// Rational-root search only enumerates divisors up to this magnitude.
const DIVISOR_SEARCH_LIMIT: u64 = 1_000_000_000_000;

/// A real algebraic number given by a squarefree integer polynomial and a
/// rational interval isolating exactly one of its real roots.
pub struct AlgebraicNumber {
    minpoly: IntPolynomial,
    modulus: RatPoly,
    lo: BigRational,
    hi: BigRational,
    refinements: RwLock<Vec<(BigRational, BigRational)>>,
    approx: f64,
}

impl fmt::Debug for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AlgebraicNumber")
            .field("minpoly", &self.minpoly.to_string())
            .field("approx", &self.approx)
            .finish()
    }
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "root of {} near {}", self.minpoly, self.approx)
    }
}

impl AlgebraicNumber {
    /// Builds the root of `p` isolated by `[lo, hi]`.
    ///
    /// `p` is replaced by its squarefree part. If the isolated root turns out
    /// to be rational the stored polynomial is the corresponding linear factor,
    /// and other rational roots are divided out when the coefficients are small
    /// enough to enumerate candidates.
    pub fn new(p: &IntPolynomial, lo: BigRational, hi: BigRational) -> Result<Arc<Self>, AlgebraicError> {
        let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
        let rat = p.to_rat();
        let squarefree = rat.squarefree_part();
        if squarefree.degree() != rat.degree() {
            log::info!("replaced {p} by its squarefree part");
        }
        let count = squarefree.count_roots(&lo, &hi);
        if count == 0 {
            return Err(AlgebraicError::NoRootInInterval { lo: lo.to_string(), hi: hi.to_string() });
        }
        if count > 1 {
            return Err(AlgebraicError::MultipleRootsInInterval {
                distinct: count,
                with_multiplicity: roots_with_multiplicity(&rat, &lo, &hi),
            });
        }
        let mut squarefree = IntPolynomial::primitive_from(&squarefree)?;

        // an endpoint may itself be the root
        for end in [&lo, &hi] {
            if squarefree.to_rat().eval(end).is_zero() {
                return Ok(Arc::new(Self::rational(end.clone())));
            }
        }

        let (mut lo, mut hi) = (lo, hi);
        let lead = squarefree.leading().abs();
        // once the interval is narrower than 1/lead, each admissible denominator
        // leaves at most two numerator candidates
        let needed = BigRational::new(BigInt::one(), &lead + BigInt::one());
        bisect_until(&squarefree.to_rat(), &mut lo, &mut hi, &needed);
        if let Some(divisors) = small_divisors(&lead) {
            for q in divisors {
                let qr = BigRational::from_integer(q.clone());
                let start = (&lo * &qr).floor().to_integer();
                let end = (&hi * &qr).ceil().to_integer();
                let mut num = start;
                while num <= end {
                    let cand = BigRational::new(num.clone(), q.clone());
                    if cand >= lo && cand <= hi && squarefree.to_rat().eval(&cand).is_zero() {
                        return Ok(Arc::new(Self::rational(cand)));
                    }
                    num += 1;
                }
            }
        }

        // the root is irrational: strip rational roots elsewhere
        squarefree = strip_rational_roots(&squarefree);
        let modulus = squarefree.to_rat().monic();
        let width = BigRational::new(BigInt::one(), BigInt::one() << BASE_PRECISION_BITS);
        bisect_until(&modulus, &mut lo, &mut hi, &width);
        let approx = midpoint_f64(&lo, &hi);
        Ok(Arc::new(Self {
            minpoly: squarefree,
            modulus,
            lo: lo.clone(),
            hi: hi.clone(),
            refinements: RwLock::new(vec![(lo, hi)]),
            approx,
        }))
    }

    /// The rational number `r` viewed as a degree-one algebraic number.
    pub fn rational(r: BigRational) -> Self {
        let minpoly = IntPolynomial::new([-r.numer().clone(), r.denom().clone()]).expect("linear");
        let modulus = minpoly.to_rat().monic();
        let approx = r.to_f64().unwrap_or(f64::NAN);
        Self {
            minpoly,
            modulus,
            lo: r.clone(),
            hi: r.clone(),
            refinements: RwLock::new(vec![(r.clone(), r)]),
            approx,
        }
    }

    pub fn minpoly(&self) -> &IntPolynomial {
        &self.minpoly
    }

    pub(crate) fn modulus(&self) -> &RatPoly {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.minpoly.degree()
    }

    pub fn is_rational(&self) -> bool {
        self.degree() == 1
    }

    /// Isolating interval kept at construction.
    pub fn interval(&self) -> (&BigRational, &BigRational) {
        (&self.lo, &self.hi)
    }

    pub fn approx(&self) -> f64 {
        self.approx
    }

    /// Isolating interval of width at most `2^(-64 * 2^level)`.
    pub fn interval_at(&self, level: usize) -> (BigRational, BigRational) {
        if let Some(iv) = self.refinements.read().expect("poisoned").get(level) {
            return iv.clone();
        }
        let mut cache = self.refinements.write().expect("poisoned");
        while cache.len() <= level {
            let (mut lo, mut hi) = cache.last().expect("base level").clone();
            let bits = BASE_PRECISION_BITS << cache.len();
            let width = BigRational::new(BigInt::one(), BigInt::one() << bits);
            bisect_until(&self.modulus, &mut lo, &mut hi, &width);
            cache.push((lo, hi));
        }
        cache[level].clone()
    }

    /// Rational approximation with absolute error below `2^-bits`.
    pub fn approx_rational(&self, bits: u64) -> BigRational {
        let mut level = 0;
        while (BASE_PRECISION_BITS as u64) << level < bits {
            level += 1;
        }
        let (lo, hi) = self.interval_at(level);
        (lo + hi) / BigRational::from_integer(2.into())
    }

    /// The generator of Q(β), i.e. β itself as a field element.
    pub fn generator(self: &Arc<Self>) -> FieldElement {
        FieldElement::from_poly(self, &RatPoly::new(vec![BigRational::zero(), BigRational::one()]))
    }

    pub fn same_as(&self, other: &Self) -> bool {
        std::ptr::eq(self, other)
            || (self.minpoly == other.minpoly && self.lo <= other.hi && other.lo <= self.hi)
    }
}

/// Bisects `[lo, hi]` (which brackets a sign change of `p`, or is a single
/// point) until its width is at most `width`.
fn bisect_until(p: &RatPoly, lo: &mut BigRational, hi: &mut BigRational, width: &BigRational) {
    if lo == hi {
        return;
    }
    let two = BigRational::from_integer(2.into());
    let sign_lo = p.eval(lo).signum();
    while &*hi - &*lo > *width {
        let mid = (&*lo + &*hi) / &two;
        let v = p.eval(&mid);
        if v.is_zero() {
            *lo = mid.clone();
            *hi = mid;
            return;
        }
        if v.signum() == sign_lo {
            *lo = mid;
        } else {
            *hi = mid;
        }
    }
}

fn midpoint_f64(lo: &BigRational, hi: &BigRational) -> f64 {
    ((lo + hi) / BigRational::from_integer(2.into())).to_f64().unwrap_or(f64::NAN)
}

fn roots_with_multiplicity(p: &RatPoly, lo: &BigRational, hi: &BigRational) -> usize {
    let mut total = 0;
    let mut g = p.clone();
    while g.degree().unwrap_or(0) >= 1 {
        total += g.squarefree_part().count_roots(lo, hi);
        g = g.gcd(&g.derivative());
    }
    total
}

fn small_divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n == 0 || n > DIVISOR_SEARCH_LIMIT {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    out.sort();
    Some(out)
}

fn strip_rational_roots(p: &IntPolynomial) -> IntPolynomial {
    let mut rat = p.to_rat();
    if rat.coeffs()[0].is_zero() && rat.degree() > Some(1) {
        rat = rat.div_rem(&RatPoly::new(vec![BigRational::zero(), BigRational::one()])).0;
    }
    let current = match IntPolynomial::primitive_from(&rat) {
        Ok(c) => c,
        Err(_) => return p.clone(),
    };
    let (Some(nums), Some(dens)) = (small_divisors(&current.coeffs()[0]), small_divisors(current.leading()))
    else {
        return current;
    };
    for num in &nums {
        for den in &dens {
            if num.gcd(den) != BigInt::one() {
                continue;
            }
            for sign in [1, -1] {
                let cand = BigRational::new(num * sign, den.clone());
                while rat.degree() > Some(1) && rat.eval(&cand).is_zero() {
                    let lin = RatPoly::new(vec![-cand.clone(), BigRational::one()]);
                    rat = rat.div_rem(&lin).0;
                }
            }
        }
    }
    IntPolynomial::primitive_from(&rat).unwrap_or(current)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn minimal_pisot_root() {
        let p = IntPolynomial::new([-1, -1, 0, 1]).unwrap();
        let beta = AlgebraicNumber::new(&p, q(1), q(2)).unwrap();
        assert!((beta.approx() - 1.324_717_957_244_746).abs() < 1e-12);
        let (lo, hi) = beta.interval_at(1);
        assert!(&hi - &lo <= BigRational::new(1.into(), BigInt::one() << 128));
    }

    #[test]
    fn linear_and_rational_roots() {
        let p = IntPolynomial::new([-2, 1]).unwrap();
        let beta = AlgebraicNumber::new(&p, q(1), q(3)).unwrap();
        assert!(beta.is_rational());
        assert_eq!(beta.approx(), 2.0);

        // (X - 2)(X^2 - 2), isolating the rational root
        let p = IntPolynomial::new([4, -2, -2, 1]).unwrap();
        let beta = AlgebraicNumber::new(&p, BigRational::new(3.into(), 2.into()), q(3)).unwrap();
        assert!(beta.is_rational());
        // ... and the irrational one: the linear factor is stripped
        let beta = AlgebraicNumber::new(&p, q(1), BigRational::new(3.into(), 2.into())).unwrap();
        assert_eq!(beta.degree(), 2);
    }

    #[test]
    fn interval_errors() {
        let p = IntPolynomial::new([-2, 0, 1]).unwrap();
        assert!(matches!(
            AlgebraicNumber::new(&p, q(2), q(3)),
            Err(AlgebraicError::NoRootInInterval { .. })
        ));
        match AlgebraicNumber::new(&p, q(-2), q(2)) {
            Err(AlgebraicError::MultipleRootsInInterval { distinct, with_multiplicity }) => {
                assert_eq!((distinct, with_multiplicity), (2, 2));
            }
            other => panic!("unexpected {other:?}"),
        }
        // (X-1)^2 (X-1.5)... squared factor counted twice with multiplicity
        let p = IntPolynomial::new([-3, 8, -7, 2]).unwrap();
        match AlgebraicNumber::new(&p, q(0), q(2)) {
            Err(AlgebraicError::MultipleRootsInInterval { distinct, with_multiplicity }) => {
                assert_eq!((distinct, with_multiplicity), (2, 3));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn squarefree_reduction_keeps_root() {
        // (X^2 - 2)^2
        let p = IntPolynomial::new([4, 0, -4, 0, 1]).unwrap();
        let beta = AlgebraicNumber::new(&p, q(1), q(2)).unwrap();
        assert_eq!(beta.degree(), 2);
        assert!((beta.approx() - std::f64::consts::SQRT_2).abs() < 1e-15);
    }
}
