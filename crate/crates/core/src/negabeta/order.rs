use num_integer::Integer;
use serde::Serialize;

use super::DigitSequence;

/// Outcome of an alternating-order comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AltOrdering {
    Less,
    Equal,
    Greater,
    /// A finite word is a proper prefix of the other input.
    Prefix,
}

/// Parity convention for the alternating order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AltOrder {
    /// s < t iff (−1)^n (s_n − t_n) < 0 at the first disagreement n.
    #[default]
    Adopted,
    /// The opposite parity: smaller digit at odd n means smaller.
    Opposite,
}

/// Either operand of [`alt_compare`].
#[derive(Debug, Clone, Copy)]
pub enum Digits<'a> {
    Word(&'a [u8]),
    Seq(&'a DigitSequence),
}

impl Digits<'_> {
    fn get(&self, k: usize) -> Option<u8> {
        match self {
            Digits::Word(w) => w.get(k).copied(),
            Digits::Seq(s) => Some(s.digit(k)),
        }
    }
}

impl<'a> From<&'a [u8]> for Digits<'a> {
    fn from(w: &'a [u8]) -> Self {
        Digits::Word(w)
    }
}

impl<'a> From<&'a Vec<u8>> for Digits<'a> {
    fn from(w: &'a Vec<u8>) -> Self {
        Digits::Word(w)
    }
}

impl<'a> From<&'a DigitSequence> for Digits<'a> {
    fn from(s: &'a DigitSequence) -> Self {
        Digits::Seq(s)
    }
}

pub fn alt_compare<'a, 'b>(s: impl Into<Digits<'a>>, t: impl Into<Digits<'b>>) -> AltOrdering {
    alt_compare_with(s.into(), t.into(), AltOrder::Adopted)
}

pub fn alt_compare_with(s: Digits<'_>, t: Digits<'_>, order: AltOrder) -> AltOrdering {
    let limit = match (s, t) {
        (Digits::Seq(a), Digits::Seq(b)) => a.u().max(b.u()) + 2 * a.v().lcm(&b.v()),
        (Digits::Word(w), _) | (_, Digits::Word(w)) => w.len() + 1,
    };
    for n in 0..limit {
        match (s.get(n), t.get(n)) {
            (None, None) => return AltOrdering::Equal,
            (None, Some(_)) | (Some(_), None) => return AltOrdering::Prefix,
            (Some(a), Some(b)) if a != b => {
                let even = n % 2 == 0;
                let less = match order {
                    AltOrder::Adopted => (a < b) == even,
                    AltOrder::Opposite => (a < b) != even,
                };
                return if less { AltOrdering::Less } else { AltOrdering::Greater };
            }
            _ => {}
        }
    }
    AltOrdering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(s: &str) -> DigitSequence {
        DigitSequence::parse(s, 2).unwrap()
    }

    #[test]
    fn spec_examples() {
        assert_eq!(alt_compare(&seq("(0)"), &seq("(1)")), AltOrdering::Less);
        assert_eq!(alt_compare(&seq("(1)"), &seq("(10)")), AltOrdering::Less);
        assert_eq!(alt_compare(&seq("100(1)"), &seq("100(1)")), AltOrdering::Equal);
        assert_eq!(alt_compare(&vec![1, 0], &seq("100(1)")), AltOrdering::Prefix);
        assert_eq!(alt_compare(&vec![1, 0, 1], &seq("100(1)")), AltOrdering::Greater);
        assert_eq!(alt_compare(&vec![1, 1], &vec![1, 1]), AltOrdering::Equal);
    }

    #[test]
    fn printed_parity_reverses() {
        let (a, b) = (seq("(1)"), seq("(10)"));
        assert_eq!(alt_compare_with(Digits::Seq(&a), Digits::Seq(&b), AltOrder::Opposite), AltOrdering::Greater);
    }

    #[test]
    fn late_disagreement_found() {
        // agree on a long preperiod, differ inside the period
        let a = seq("2222222(01)");
        let b = seq("2222222(02)");
        assert_eq!(alt_compare(&a, &b), AltOrdering::Less);
    }
}
