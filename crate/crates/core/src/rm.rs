//! Fixed-polarity and Kronecker Reed-Muller forms of Boolean functions.
//!
//! The spectrum of a function is computed with one column of GF(2)
//! butterflies per variable, outermost variable first. For a variable with
//! polarity digit `1` each pair `(x, y)` of entries that differ only in that
//! variable's bit becomes `(x, x ⊕ y)`; digit `0` gives `(x ⊕ y, y)`; digit
//! `2` leaves the pair alone. The same transform written as a dense matrix
//! is the Kronecker product of the per-digit 2×2 matrices, available from
//! [`rm_transform_matrix`] for cross-checking.
//!
//! Coefficients are left in transform order. Position `i` of the spectrum
//! belongs to the base function returned by [`map_coefficient`]`(i, p)`.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::polarity::{Digit, Family, Polarity};

/// Largest variable count accepted by [`rm_search`] per family.
pub const MAX_FPRM_SEARCH_VARS: usize = 16;
pub const MAX_KRM_SEARCH_VARS: usize = 10;
/// Largest variable count for the dense-matrix path.
pub const MAX_MATRIX_VARS: usize = 12;

/// Largest variable count for any Boolean function held in memory.
pub const MAX_VARS: usize = 30;

/// A Boolean function as its minterm vector. Variable `c_1` is the most
/// significant bit of the minterm index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoolFunc {
    num_vars: usize,
    minterms: Bits,
}

impl BoolFunc {
    pub fn new(num_vars: usize, minterms: Bits) -> Result<Self> {
        if num_vars == 0 || num_vars > MAX_VARS {
            return Err(Error::SizeLimitExceeded {
                what: "Boolean function variables",
                size: num_vars,
                limit: MAX_VARS,
            });
        }
        if minterms.len() != 1 << num_vars {
            return Err(Error::LengthNotPowerOfTwo(minterms.len()));
        }
        Ok(BoolFunc { num_vars, minterms })
    }

    /// Infers the variable count from a vector of length `2^n`.
    pub fn from_minterms(minterms: Bits) -> Result<Self> {
        let len = minterms.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::LengthNotPowerOfTwo(len));
        }
        Self::new(len.trailing_zeros() as usize, minterms)
    }

    pub fn from_truth_table(num_vars: usize, f: impl FnMut(usize) -> bool) -> Result<Self> {
        if num_vars == 0 || num_vars > MAX_VARS {
            return Err(Error::SizeLimitExceeded {
                what: "Boolean function variables",
                size: num_vars,
                limit: MAX_VARS,
            });
        }
        Self::new(num_vars, Bits::from_fn(1 << num_vars, f))
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn minterms(&self) -> &Bits {
        &self.minterms
    }

    pub fn eval(&self, input: usize) -> bool {
        self.minterms.get(input)
    }
}

/// How one variable appears in a base function.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Literal {
    Absent,
    Positive,
    Negative,
}

/// A product of literals, or the constant 1 when every variable is absent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseFunction {
    /// One entry per variable, `c_1` first.
    pub literals: Vec<Literal>,
}

impl BaseFunction {
    pub fn literal_count(&self) -> usize {
        self.literals
            .iter()
            .filter(|l| **l != Literal::Absent)
            .count()
    }

    pub fn is_constant(&self) -> bool {
        self.literal_count() == 0
    }

    pub fn eval(&self, input: usize) -> bool {
        let n = self.literals.len();
        self.literals.iter().enumerate().all(|(k, l)| {
            let bit = (input >> (n - 1 - k)) & 1 == 1;
            match l {
                Literal::Absent => true,
                Literal::Positive => bit,
                Literal::Negative => !bit,
            }
        })
    }
}

impl fmt::Display for BaseFunction {
    /// Variables are named `a`, `b`, … (or `x1`, `x2`, … beyond 26);
    /// negation is a trailing `'`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_constant() {
            return f.write_str("1");
        }
        let many = self.literals.len() > 26;
        for (k, l) in self.literals.iter().enumerate() {
            if *l == Literal::Absent {
                continue;
            }
            if many {
                write!(f, "x{}", k + 1)?;
            } else {
                write!(f, "{}", (b'a' + k as u8) as char)?;
            }
            if *l == Literal::Negative {
                f.write_str("'")?;
            }
        }
        Ok(())
    }
}

/// Spectral coefficients of a function for one polarity, in transform order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RmSpectrum {
    pub polarity: Polarity,
    pub coefficients: Bits,
}

impl RmSpectrum {
    /// `(index, base function)` for every nonzero coefficient.
    pub fn terms(&self) -> impl Iterator<Item = (usize, BaseFunction)> + '_ {
        self.coefficients
            .iter_ones()
            .map(|i| (i, map_coefficient(i, &self.polarity)))
    }

    /// Coefficients reordered so that position `j` holds the base function
    /// whose literal-presence mask (first variable most significant) is `j`.
    /// For mixed variables the bit records the literal's polarity instead.
    pub fn base_order(&self) -> Bits {
        let mut out = Bits::zeros(self.coefficients.len());
        for i in self.coefficients.iter_ones() {
            out.set(base_order_index(i, &self.polarity), true);
        }
        out
    }

    /// Evaluates the XOR of the present base functions.
    pub fn eval(&self, input: usize) -> bool {
        self.terms().fold(false, |acc, (_, b)| acc ^ b.eval(input))
    }

    /// Recovers the minterm vector. The three kernels are involutions over
    /// GF(2), so this replays the columns in reverse order.
    pub fn inverse(&self) -> BoolFunc {
        let mut v = self.coefficients.clone();
        let n = self.polarity.len();
        for k in (0..n).rev() {
            butterfly_column(&mut v, self.polarity.bit_of(k), self.polarity.digits()[k]);
        }
        BoolFunc {
            num_vars: n,
            minterms: v,
        }
    }

    pub fn expression(&self) -> String {
        let terms: Vec<String> = self.terms().map(|(_, b)| b.to_string()).collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" ^ ")
        }
    }
}

/// Transform-order index to base-order index.
pub fn base_order_index(index: usize, p: &Polarity) -> usize {
    let masks = p.masks();
    // Fixed digits: presence bit is set where the index bit equals the digit.
    let matches = !(index ^ masks.positive) & masks.fixed();
    matches | (index & masks.mixed)
}

/// Applies one butterfly column for the variable at `bit`.
fn butterfly_column(v: &mut Bits, bit: usize, digit: Digit) {
    const LOW_HALVES: [u64; 6] = [
        0x5555_5555_5555_5555,
        0x3333_3333_3333_3333,
        0x0F0F_0F0F_0F0F_0F0F,
        0x00FF_00FF_00FF_00FF,
        0x0000_FFFF_0000_FFFF,
        0x0000_0000_FFFF_FFFF,
    ];
    if digit == Digit::Mixed {
        return;
    }
    let words = v.words_mut();
    if bit < 6 {
        let s = 1u32 << bit;
        let lo = LOW_HALVES[bit];
        for w in words.iter_mut() {
            match digit {
                Digit::Positive => *w ^= (*w & lo) << s,
                Digit::Negative => *w ^= (*w >> s) & lo,
                Digit::Mixed => unreachable!(),
            }
        }
    } else {
        let ws = 1usize << (bit - 6);
        for block in words.chunks_mut(2 * ws) {
            let (lo, hi) = block.split_at_mut(ws);
            for (x, y) in lo.iter_mut().zip(hi.iter_mut()) {
                match digit {
                    Digit::Positive => *y ^= *x,
                    Digit::Negative => *x ^= *y,
                    Digit::Mixed => unreachable!(),
                }
            }
        }
    }
}

/// Computes the Reed-Muller spectrum of `f` under polarity `p`.
pub fn rm_transform(f: &BoolFunc, p: &Polarity) -> Result<RmSpectrum> {
    p.expect_len(f.num_vars)?;
    let mut v = f.minterms.clone();
    for (k, &digit) in p.digits().iter().enumerate() {
        butterfly_column(&mut v, p.bit_of(k), digit);
    }
    Ok(RmSpectrum {
        polarity: p.clone(),
        coefficients: v,
    })
}

/// Dense square matrix over GF(2).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gf2Matrix {
    rows: Vec<Bits>,
}

impl Gf2Matrix {
    pub fn identity(size: usize) -> Self {
        Gf2Matrix {
            rows: (0..size).map(|r| Bits::from_fn(size, |c| c == r)).collect(),
        }
    }

    pub fn from_rows(rows: &[&[u8]]) -> Self {
        Gf2Matrix {
            rows: rows
                .iter()
                .map(|r| Bits::from_fn(r.len(), |c| r[c] != 0))
                .collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn kronecker(&self, rhs: &Gf2Matrix) -> Gf2Matrix {
        let (n, m) = (self.size(), rhs.size());
        let rows = (0..n * m)
            .map(|r| {
                Bits::from_fn(n * m, |c| {
                    self.get(r / m, c / m) && rhs.get(r % m, c % m)
                })
            })
            .collect();
        Gf2Matrix { rows }
    }

    pub fn mul_vec(&self, v: &Bits) -> Bits {
        Bits::from_fn(self.size(), |r| {
            let ones: u32 = self.rows[r]
                .words()
                .iter()
                .zip(v.words())
                .map(|(a, b)| (a & b).count_ones())
                .sum();
            ones % 2 == 1
        })
    }
}

/// Per-digit 2×2 polarity matrix.
pub fn digit_matrix(d: Digit) -> Gf2Matrix {
    match d {
        Digit::Positive => Gf2Matrix::from_rows(&[&[1, 0], &[1, 1]]),
        Digit::Negative => Gf2Matrix::from_rows(&[&[1, 1], &[0, 1]]),
        Digit::Mixed => Gf2Matrix::identity(2),
    }
}

/// The full transformation matrix, the Kronecker product of the per-digit
/// matrices with the first digit as the outer factor.
pub fn rm_transform_matrix(p: &Polarity) -> Result<Gf2Matrix> {
    if p.len() > MAX_MATRIX_VARS {
        return Err(Error::SizeLimitExceeded {
            what: "transformation matrix variables",
            size: p.len(),
            limit: MAX_MATRIX_VARS,
        });
    }
    Ok(p
        .digits()
        .iter()
        .fold(Gf2Matrix::identity(1), |acc, &d| acc.kronecker(&digit_matrix(d))))
}

/// Base function paired with spectral coefficient `index` under `p`.
pub fn map_coefficient(index: usize, p: &Polarity) -> BaseFunction {
    let literals = p
        .digits()
        .iter()
        .enumerate()
        .map(|(k, d)| {
            let bit = (index >> p.bit_of(k)) & 1 == 1;
            match (d, bit) {
                (Digit::Positive, true) => Literal::Positive,
                (Digit::Negative, false) => Literal::Negative,
                (Digit::Mixed, true) => Literal::Positive,
                (Digit::Mixed, false) => Literal::Negative,
                _ => Literal::Absent,
            }
        })
        .collect();
    BaseFunction { literals }
}

/// Total literal count over the nonzero coefficients. Negations are free and
/// the constant term costs nothing.
pub fn literal_cost(s: &RmSpectrum) -> u64 {
    let masks = s.polarity.masks();
    let mixed = masks.mixed.count_ones() as u64;
    s.coefficients
        .iter_ones()
        .map(|i| (!(i ^ masks.positive) & masks.fixed()).count_ones() as u64 + mixed)
        .sum()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankedPolarity {
    pub polarity: Polarity,
    pub cost: u64,
}

/// Literal cost of every polarity of `family`, cheapest first, ties in
/// lexicographic polarity order.
pub fn rm_search(f: &BoolFunc, family: Family) -> Result<Vec<RankedPolarity>> {
    let limit = match family {
        Family::Fixed => MAX_FPRM_SEARCH_VARS,
        Family::Kronecker => MAX_KRM_SEARCH_VARS,
    };
    let n = f.num_vars();
    if n > limit {
        return Err(Error::SizeLimitExceeded {
            what: "polarity search variables",
            size: n,
            limit,
        });
    }
    let total = family.count(n).expect("bounded by the search limit");
    let mut ranked: Vec<RankedPolarity> = (0..total)
        .into_par_iter()
        .map(|ordinal| {
            let polarity = Polarity::from_ordinal(family, n, ordinal);
            let spectrum = rm_transform(f, &polarity).expect("length checked");
            RankedPolarity {
                cost: literal_cost(&spectrum),
                polarity,
            }
        })
        .collect();
    // Stable sort keeps lexicographic order among equal costs.
    ranked.sort_by_key(|r| r.cost);
    Ok(ranked)
}
