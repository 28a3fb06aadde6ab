//! Direct solve of the polarized targets, independent of the butterfly path.
//!
//! For every control input the standard target must equal the ordered
//! product of the polarized targets that fire on that input. Each input has
//! one firing target of highest index (its pivot), and every other target
//! firing with it has a smaller index. Solving inputs in ascending pivot
//! order therefore yields each polarized target from already-known ones.

use crate::error::{Error, Result};
use crate::mux::{Form, Multiplexer};
use crate::polarity::{Digit, Polarity};
use crate::unitary::Unitary2;

pub const MAX_ORACLE_CONTROLS: usize = 8;

fn bit(x: usize, m: usize, k: usize) -> bool {
    (x >> (m - 1 - k)) & 1 == 1
}

// Written out digit by digit from the activation rules.
fn fires(p: &Polarity, gate: usize, input: usize) -> bool {
    let m = p.len();
    p.digits().iter().enumerate().all(|(k, d)| {
        let g = bit(gate, m, k);
        let x = bit(input, m, k);
        match d {
            Digit::Positive => !g || x,
            Digit::Negative => !g || !x,
            Digit::Mixed => g == x,
        }
    })
}

fn pivot(p: &Polarity, input: usize) -> usize {
    let m = p.len();
    p.digits().iter().enumerate().fold(0, |acc, (k, d)| {
        let x = bit(input, m, k);
        let b = match d {
            Digit::Positive => x,
            Digit::Negative => !x,
            Digit::Mixed => x,
        };
        (acc << 1) | usize::from(b)
    })
}

/// Solves for the polarized targets of `std` under `p`.
pub fn triangular_solve_oracle(std: &Multiplexer, p: &Polarity) -> Result<Multiplexer> {
    if *std.form() != Form::Standard {
        return Err(Error::FormMismatch {
            expected: "standard",
            found: std.form().to_string(),
        });
    }
    let m = std.controls();
    p.expect_len(m)?;
    if m > MAX_ORACLE_CONTROLS {
        return Err(Error::SizeLimitExceeded {
            what: "oracle controls",
            size: m,
            limit: MAX_ORACLE_CONTROLS,
        });
    }
    let n = 1usize << m;
    let f = std.targets();
    let mut input_of = vec![usize::MAX; n];
    for input in 0..n {
        input_of[pivot(p, input)] = input;
    }
    let mut g = vec![Unitary2::IDENTITY; n];
    for q in 0..n {
        let input = input_of[q];
        debug_assert!(fires(p, q, input));
        let below = (0..q)
            .filter(|&j| fires(p, j, input))
            .fold(Unitary2::IDENTITY, |acc, j| g[j] * acc);
        g[q] = f[input] * below.inverse();
    }
    Multiplexer::new(m, g, Form::for_polarity(p.clone()))
}
