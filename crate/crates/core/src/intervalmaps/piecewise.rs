use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::IntervalMapError;

/// Interval with rational endpoints and open/closed flags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatInterval {
    pub lo: BigRational,
    pub hi: BigRational,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl RatInterval {
    pub fn closed(lo: BigRational, hi: BigRational) -> Self {
        Self { lo, hi, lo_closed: true, hi_closed: true }
    }

    pub fn unit() -> Self {
        Self::closed(BigRational::zero(), BigRational::one())
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi || (self.lo == self.hi && !(self.lo_closed && self.hi_closed))
    }

    pub fn length(&self) -> BigRational {
        if self.is_empty() {
            BigRational::zero()
        } else {
            &self.hi - &self.lo
        }
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        (x > &self.lo || (x == &self.lo && self.lo_closed)) && (x < &self.hi || (x == &self.hi && self.hi_closed))
    }

    pub fn intersect(&self, o: &Self) -> Self {
        let (lo, lo_closed) = match self.lo.cmp(&o.lo) {
            std::cmp::Ordering::Greater => (self.lo.clone(), self.lo_closed),
            std::cmp::Ordering::Less => (o.lo.clone(), o.lo_closed),
            std::cmp::Ordering::Equal => (self.lo.clone(), self.lo_closed && o.lo_closed),
        };
        let (hi, hi_closed) = match self.hi.cmp(&o.hi) {
            std::cmp::Ordering::Less => (self.hi.clone(), self.hi_closed),
            std::cmp::Ordering::Greater => (o.hi.clone(), o.hi_closed),
            std::cmp::Ordering::Equal => (self.hi.clone(), self.hi_closed && o.hi_closed),
        };
        Self { lo, hi, lo_closed, hi_closed }
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(2.into())
    }
}

/// x ↦ slope·x + intercept on `domain`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineBranch {
    pub domain: RatInterval,
    pub slope: BigRational,
    pub intercept: BigRational,
}

impl AffineBranch {
    pub fn apply(&self, x: &BigRational) -> BigRational {
        &self.slope * x + &self.intercept
    }

    /// Points of the domain that the branch sends into `target`.
    pub fn preimage(&self, target: &RatInterval) -> RatInterval {
        let back = |y: &BigRational| (y - &self.intercept) / &self.slope;
        let pulled = if self.slope.is_positive() {
            RatInterval { lo: back(&target.lo), hi: back(&target.hi), lo_closed: target.lo_closed, hi_closed: target.hi_closed }
        } else {
            RatInterval { lo: back(&target.hi), hi: back(&target.lo), lo_closed: target.hi_closed, hi_closed: target.lo_closed }
        };
        self.domain.intersect(&pulled)
    }
}

/// Affine branches on consecutive intervals partitioning [0, 1].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiecewiseExpandingMap {
    pub branches: Vec<AffineBranch>,
    /// min |slope|
    pub alpha: BigRational,
    /// max |slope|
    pub beta_hat: BigRational,
}

impl PiecewiseExpandingMap {
    pub fn new(branches: Vec<AffineBranch>) -> Result<Self, IntervalMapError> {
        let bad = |s: &str| Err(IntervalMapError::BadBranches(s.into()));
        if branches.is_empty() {
            return bad("no branches");
        }
        if !branches[0].domain.lo.is_zero() || !branches.last().expect("nonempty").domain.hi.is_one() {
            return bad("branches must cover [0, 1]");
        }
        for w in branches.windows(2) {
            if w[0].domain.hi != w[1].domain.lo || w[0].domain.hi_closed == w[1].domain.lo_closed {
                return bad("branches must be consecutive and disjoint");
            }
        }
        for b in &branches {
            if b.slope.abs() <= BigRational::one() {
                return bad("every slope must exceed 1 in absolute value");
            }
            let (a, c) = (b.apply(&b.domain.lo), b.apply(&b.domain.hi));
            let (lo, hi) = if a <= c { (a, c) } else { (c, a) };
            if lo.is_negative() || hi > BigRational::one() {
                return bad("a branch leaves [0, 1]");
            }
        }
        let alpha = branches.iter().map(|b| b.slope.abs()).min().expect("nonempty");
        let beta_hat = branches.iter().map(|b| b.slope.abs()).max().expect("nonempty");
        Ok(Self { branches, alpha, beta_hat })
    }

    pub fn branch_of(&self, x: &BigRational) -> Option<usize> {
        self.branches.iter().position(|b| b.domain.contains(x))
    }

    /// Interior breakpoints a_1, …, a_{p−1}.
    pub fn is_breakpoint(&self, x: &BigRational) -> bool {
        self.branches.iter().skip(1).any(|b| &b.domain.lo == x)
    }

    pub fn apply(&self, x: &BigRational) -> Result<(u8, BigRational), IntervalMapError> {
        let i = self.branch_of(x).ok_or(IntervalMapError::OutOfDomain)?;
        Ok((i as u8, self.branches[i].apply(x)))
    }

    /// Branch itinerary of length n; fails if the orbit meets an interior breakpoint.
    pub fn code_point(&self, x: &BigRational, n: usize) -> Result<Vec<u8>, IntervalMapError> {
        let mut x = x.clone();
        let mut out = Vec::with_capacity(n);
        for step in 0..n {
            if self.is_breakpoint(&x) {
                return Err(IntervalMapError::HitBoundary { step });
            }
            let (d, y) = self.apply(&x)?;
            out.push(d);
            x = y;
        }
        Ok(out)
    }

    /// Coding by the half-open partition itself; defined everywhere.
    pub fn phi_code(&self, x: &BigRational, n: usize) -> Result<Vec<u8>, IntervalMapError> {
        let mut x = x.clone();
        let mut out = Vec::with_capacity(n);
        for _ in 0..n {
            let (d, y) = self.apply(&x)?;
            out.push(d);
            x = y;
        }
        Ok(out)
    }

    /// {x : phi_code(x) starts with w}, by backward recursion from [0, 1].
    pub fn cylinder(&self, w: &[u8]) -> RatInterval {
        let mut a = RatInterval::unit();
        for &d in w.iter().rev() {
            match self.branches.get(d as usize) {
                Some(b) => a = b.preimage(&a),
                None => return RatInterval { lo: BigRational::one(), hi: BigRational::zero(), lo_closed: false, hi_closed: false },
            }
            if a.is_empty() {
                break;
            }
        }
        a
    }
}

/// Decimal rendering rounded to `digits` places.
pub fn rational_decimal(r: &BigRational, digits: u32) -> String {
    let scale = BigInt::from(10).pow(digits);
    let scaled = (r * BigRational::from_integer(scale.clone())).round().to_integer();
    let neg = scaled.is_negative();
    let mag = scaled.abs();
    let int = &mag / &scale;
    let frac = (&mag % &scale).to_string();
    let pad = "0".repeat(digits as usize - frac.len());
    format!("{}{int}.{pad}{frac}", if neg { "-" } else { "" })
}
