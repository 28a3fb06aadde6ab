//! Polarity strings shared by the classical and quantum forms.
//!
//! Digit `k` (leftmost first) governs variable `c_{k+1}`, which is bit
//! `n - 1 - k` of a minterm or gate index. `0` is negative, `1` positive and
//! `2` mixed.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Digit {
    Negative,
    Positive,
    Mixed,
}

impl Digit {
    pub fn as_char(self) -> char {
        match self {
            Digit::Negative => '0',
            Digit::Positive => '1',
            Digit::Mixed => '2',
        }
    }

    pub fn from_char(c: char) -> Option<Digit> {
        match c {
            '0' => Some(Digit::Negative),
            '1' => Some(Digit::Positive),
            '2' => Some(Digit::Mixed),
            _ => None,
        }
    }

    fn from_ordinal(d: usize) -> Digit {
        match d {
            0 => Digit::Negative,
            1 => Digit::Positive,
            _ => Digit::Mixed,
        }
    }
}

/// Fixed polarities (FPRM / FPQF) or fixed-or-mixed polarities (KRM / KQF).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Fixed,
    Kronecker,
}

impl Family {
    /// Number of digit choices per variable.
    pub fn radix(self) -> usize {
        match self {
            Family::Fixed => 2,
            Family::Kronecker => 3,
        }
    }

    /// Number of polarities over `n` variables, if it fits in `usize`.
    pub fn count(self, n: usize) -> Option<usize> {
        self.radix().checked_pow(u32::try_from(n).ok()?)
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "fixed" | "fpqf" | "fprm" => Ok(Family::Fixed),
            "kronecker" | "kqf" | "krm" => Ok(Family::Kronecker),
            _ => Err(Error::InvalidPolarity(format!("unknown family `{s}`"))),
        }
    }
}

/// Bit masks over index positions, one per digit kind.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DigitMasks {
    pub negative: usize,
    pub positive: usize,
    pub mixed: usize,
}

impl DigitMasks {
    pub fn fixed(&self) -> usize {
        self.negative | self.positive
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Polarity(Vec<Digit>);

impl Polarity {
    pub fn new(digits: Vec<Digit>) -> Self {
        Polarity(digits)
    }

    pub fn uniform(n: usize, digit: Digit) -> Self {
        Polarity(vec![digit; n])
    }

    /// All-mixed polarity, the Kronecker view of the standard form.
    pub fn all_mixed(n: usize) -> Self {
        Self::uniform(n, Digit::Mixed)
    }

    pub fn digits(&self) -> &[Digit] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_fixed(&self) -> bool {
        !self.0.contains(&Digit::Mixed)
    }

    pub fn family(&self) -> Family {
        if self.is_fixed() {
            Family::Fixed
        } else {
            Family::Kronecker
        }
    }

    /// Index bit governed by digit `k`.
    pub fn bit_of(&self, k: usize) -> usize {
        self.0.len() - 1 - k
    }

    pub fn masks(&self) -> DigitMasks {
        let mut m = DigitMasks::default();
        for (k, d) in self.0.iter().enumerate() {
            let bit = 1usize << self.bit_of(k);
            match d {
                Digit::Negative => m.negative |= bit,
                Digit::Positive => m.positive |= bit,
                Digit::Mixed => m.mixed |= bit,
            }
        }
        m
    }

    pub fn expect_len(&self, n: usize) -> Result<()> {
        if self.len() == n {
            Ok(())
        } else {
            Err(Error::PolarityLengthMismatch {
                expected: n,
                found: self.len(),
            })
        }
    }

    /// The `ordinal`-th polarity of `family` in lexicographic order.
    pub fn from_ordinal(family: Family, n: usize, mut ordinal: usize) -> Self {
        let radix = family.radix();
        let mut digits = vec![Digit::Negative; n];
        for slot in digits.iter_mut().rev() {
            *slot = Digit::from_ordinal(ordinal % radix);
            ordinal /= radix;
        }
        Polarity(digits)
    }

    /// Position of `self` in the lexicographic order of `family`.
    pub fn ordinal(&self, family: Family) -> usize {
        let radix = family.radix();
        self.0
            .iter()
            .fold(0, |acc, &d| acc * radix + d as usize)
    }

    /// Every polarity of `family` over `n` variables, in lexicographic order.
    pub fn enumerate(family: Family, n: usize) -> impl Iterator<Item = Polarity> {
        let total = family.count(n).unwrap_or(usize::MAX);
        (0..total).map(move |i| Polarity::from_ordinal(family, n, i))
    }
}

impl fmt::Display for Polarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.0 {
            write!(f, "{}", d.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for Polarity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::InvalidPolarity(s.to_string()));
        }
        s.chars()
            .map(Digit::from_char)
            .collect::<Option<Vec<_>>>()
            .map(Polarity)
            .ok_or_else(|| Error::InvalidPolarity(s.to_string()))
    }
}

impl Serialize for Polarity {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Polarity {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
