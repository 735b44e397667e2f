use std::fmt;

use serde::Serialize;

use super::NegaBetaError;

/// Renders a digit word: concatenated for alphabets up to 9, comma separated otherwise.
pub fn format_word(w: &[u8], bound: u8) -> String {
    if bound <= 9 {
        w.iter().map(|d| char::from(b'0' + d)).collect()
    } else {
        w.iter().map(u8::to_string).collect::<Vec<_>>().join(",")
    }
}

pub fn parse_word(s: &str) -> Result<Vec<u8>, NegaBetaError> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    let bad = || NegaBetaError::BadWord(s.to_string());
    if s.contains(',') {
        s.split(',').map(|d| d.trim().parse::<u8>().map_err(|_| bad())).collect()
    } else {
        s.chars().map(|c| c.to_digit(10).map(|d| d as u8).ok_or_else(bad)).collect()
    }
}

/// An eventually periodic digit sequence `pre (per)^∞` in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DigitSequence {
    preperiod: Vec<u8>,
    period: Vec<u8>,
    bound: u8,
}

impl DigitSequence {
    /// Builds and canonicalizes; the period must be nonempty and digits ≤ `bound`.
    pub fn new(preperiod: Vec<u8>, period: Vec<u8>, bound: u8) -> Result<Self, NegaBetaError> {
        if period.is_empty() {
            return Err(NegaBetaError::EmptyPeriod);
        }
        if let Some(&d) = preperiod.iter().chain(&period).find(|&&d| d > bound) {
            return Err(NegaBetaError::DigitOutOfRange { digit: d, bound });
        }
        let mut s = Self { preperiod, period, bound };
        s.canonicalize();
        Ok(s)
    }

    /// The constant sequence d^∞.
    pub fn constant(d: u8, bound: u8) -> Result<Self, NegaBetaError> {
        Self::new(Vec::new(), vec![d], bound)
    }

    /// Parses `pre(per)`, e.g. `100(1)`; `pre` may be empty.
    pub fn parse(s: &str, bound: u8) -> Result<Self, NegaBetaError> {
        let bad = || NegaBetaError::BadWord(s.to_string());
        let open = s.find('(').ok_or_else(bad)?;
        let close = s.rfind(')').ok_or_else(bad)?;
        if close != s.len() - 1 || close < open {
            return Err(bad());
        }
        Self::new(parse_word(&s[..open])?, parse_word(&s[open + 1..close])?, bound)
    }

    fn canonicalize(&mut self) {
        let v = self.period.len();
        if let Some(d) = (1..=v).find(|d| v.is_multiple_of(*d) && (0..v).all(|i| self.period[i] == self.period[i % d])) {
            self.period.truncate(d);
        }
        while let Some(&last) = self.preperiod.last() {
            if last != *self.period.last().expect("nonempty period") {
                break;
            }
            self.preperiod.pop();
            self.period.rotate_right(1);
        }
    }

    pub fn preperiod(&self) -> &[u8] {
        &self.preperiod
    }

    pub fn period(&self) -> &[u8] {
        &self.period
    }

    pub fn bound(&self) -> u8 {
        self.bound
    }

    pub fn u(&self) -> usize {
        self.preperiod.len()
    }

    pub fn v(&self) -> usize {
        self.period.len()
    }

    pub fn digit(&self, k: usize) -> u8 {
        let u = self.u();
        if k < u {
            self.preperiod[k]
        } else {
            self.period[(k - u) % self.v()]
        }
    }

    pub fn prefix(&self, n: usize) -> Vec<u8> {
        (0..n).map(|k| self.digit(k)).collect()
    }

    /// The shifted sequence σ^k(s).
    pub fn shift(&self, k: usize) -> Self {
        let u = self.u();
        let (pre, per) = if k <= u {
            (self.preperiod[k..].to_vec(), self.period.clone())
        } else {
            let mut per = self.period.clone();
            per.rotate_left((k - u) % self.v());
            (Vec::new(), per)
        };
        Self { preperiod: pre, period: per, bound: self.bound }
    }

    /// True when the sequence is purely periodic with period ending in 0, i.e. (w0)^∞.
    pub fn is_w0_periodic(&self) -> bool {
        self.preperiod.is_empty() && self.period.last() == Some(&0)
    }
}

impl fmt::Display for DigitSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", format_word(&self.preperiod, self.bound), format_word(&self.period, self.bound))
    }
}

impl Serialize for DigitSequence {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_forms() {
        let s = DigitSequence::new(vec![1, 0, 0], vec![1, 1], 1).unwrap();
        assert_eq!(s.to_string(), "100(1)");
        let s = DigitSequence::new(vec![1, 0], vec![1, 0], 1).unwrap();
        assert_eq!(s.to_string(), "(10)");
        let s = DigitSequence::new(vec![0, 1, 1], vec![0, 1], 1).unwrap();
        assert_eq!(s.to_string(), "01(10)");
        assert_eq!(s.u(), 2);
        let s = DigitSequence::new(vec![], vec![2, 0, 2, 0, 2, 0], 2).unwrap();
        assert_eq!(s.to_string(), "(20)");
    }

    #[test]
    fn digits_and_shift() {
        let s = DigitSequence::parse("100(1)", 1).unwrap();
        assert_eq!(s.prefix(6), vec![1, 0, 0, 1, 1, 1]);
        assert_eq!(s.shift(1).to_string(), "00(1)");
        assert_eq!(s.shift(5).to_string(), "(1)");
        let t = DigitSequence::parse("(10)", 1).unwrap();
        assert_eq!(t.shift(3).to_string(), "(01)");
        assert!(t.is_w0_periodic());
        assert!(!s.is_w0_periodic());
    }

    #[test]
    fn word_format() {
        assert_eq!(format_word(&[1, 0, 2], 2), "102");
        assert_eq!(format_word(&[1, 10, 2], 11), "1,10,2");
        assert_eq!(parse_word("1,10,2").unwrap(), vec![1, 10, 2]);
        assert_eq!(parse_word("").unwrap(), Vec::<u8>::new());
        assert!(parse_word("1x").is_err());
        assert!(DigitSequence::new(vec![3], vec![0], 2).is_err());
        assert!(DigitSequence::new(vec![0], vec![], 2).is_err());
    }
}
