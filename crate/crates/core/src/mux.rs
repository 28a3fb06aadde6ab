//! Binary quantum multiplexers and their circuit semantics.
//!
//! A multiplexer with `m` controls holds `2^m` single-qubit targets. Target
//! index bits name control lines, `c_1` being the most significant bit. Which
//! targets fire on a given control input depends on the form:
//!
//! * standard: target `i` fires only on input `i`;
//! * fixed-polarity digit `1`: a target whose bit is 1 needs the line at 1,
//!   a target whose bit is 0 ignores the line;
//! * fixed-polarity digit `0`: as above with the line read inverted;
//! * mixed digit `2`: the target needs the line equal to its bit.
//!
//! When several targets fire, they act in ascending index order, so the
//! resulting operator is the product with the highest index leftmost.

use std::fmt;

use crate::error::{Error, Result};
use crate::polarity::{Digit, DigitMasks, Polarity};
use crate::unitary::{Unitary2, EPSILON};

/// Upper bound on control count for any multiplexer held in memory.
pub const MAX_CONTROLS: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Form {
    Standard,
    /// Fixed Polarity Quantum Form. The polarity never contains `2`.
    Fpqf(Polarity),
    /// Kronecker Quantum Form.
    Kqf(Polarity),
}

impl Form {
    /// Polarity whose activation rule this form follows. The standard form
    /// behaves as the all-mixed Kronecker form.
    pub fn effective_polarity(&self, controls: usize) -> Polarity {
        match self {
            Form::Standard => Polarity::all_mixed(controls),
            Form::Fpqf(p) | Form::Kqf(p) => p.clone(),
        }
    }

    pub fn polarity(&self) -> Option<&Polarity> {
        match self {
            Form::Standard => None,
            Form::Fpqf(p) | Form::Kqf(p) => Some(p),
        }
    }

    /// FPQF for fixed polarities, KQF otherwise.
    pub fn for_polarity(p: Polarity) -> Form {
        if p.is_fixed() {
            Form::Fpqf(p)
        } else {
            Form::Kqf(p)
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Form::Standard => "standard",
            Form::Fpqf(_) => "fpqf",
            Form::Kqf(_) => "kqf",
        }
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Form::Standard => f.write_str("standard"),
            Form::Fpqf(p) => write!(f, "fpqf:{p}"),
            Form::Kqf(p) => write!(f, "kqf:{p}"),
        }
    }
}

impl std::str::FromStr for Form {
    type Err = Error;

    /// Accepts `standard`, `fpqf:<digits>` and `kqf:<digits>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("standard") {
            return Ok(Form::Standard);
        }
        let (kind, digits) = s
            .split_once(':')
            .ok_or_else(|| Error::InvalidPolarity(s.to_string()))?;
        let p: Polarity = digits.trim().parse()?;
        match kind.trim().to_ascii_lowercase().as_str() {
            "fpqf" if p.is_fixed() => Ok(Form::Fpqf(p)),
            "fpqf" => Err(Error::InvalidPolarity(format!(
                "fixed-polarity form cannot use mixed digits: {p}"
            ))),
            "kqf" => Ok(Form::Kqf(p)),
            _ => Err(Error::InvalidPolarity(s.to_string())),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Multiplexer {
    controls: usize,
    targets: Vec<Unitary2>,
    form: Form,
}

impl Multiplexer {
    pub fn new(controls: usize, targets: Vec<Unitary2>, form: Form) -> Result<Self> {
        if controls == 0 {
            return Err(Error::InvalidMultiplexer(
                "at least one control is required".into(),
            ));
        }
        if controls > MAX_CONTROLS {
            return Err(Error::SizeLimitExceeded {
                what: "multiplexer controls",
                size: controls,
                limit: MAX_CONTROLS,
            });
        }
        if targets.len() != 1 << controls {
            return Err(Error::InvalidMultiplexer(format!(
                "{} controls need {} targets, found {}",
                controls,
                1usize << controls,
                targets.len()
            )));
        }
        if let Some(p) = form.polarity() {
            p.expect_len(controls)?;
        }
        if let Form::Fpqf(p) = &form {
            if !p.is_fixed() {
                return Err(Error::InvalidPolarity(format!(
                    "fixed-polarity form cannot use mixed digits: {p}"
                )));
            }
        }
        if let Some((i, u)) = targets
            .iter()
            .enumerate()
            .find(|(_, u)| u.unitarity_deviation() > EPSILON)
        {
            return Err(Error::InvalidMultiplexer(format!(
                "target {i} is not unitary (deviation {:.3e})",
                u.unitarity_deviation()
            )));
        }
        Ok(Multiplexer {
            controls,
            targets,
            form,
        })
    }

    pub fn standard(targets: Vec<Unitary2>) -> Result<Self> {
        let len = targets.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::LengthNotPowerOfTwo(len));
        }
        Self::new(len.trailing_zeros() as usize, targets, Form::Standard)
    }

    /// Skips validation; `targets` must already satisfy the invariants.
    pub(crate) fn from_parts(controls: usize, targets: Vec<Unitary2>, form: Form) -> Self {
        debug_assert_eq!(targets.len(), 1 << controls);
        Multiplexer {
            controls,
            targets,
            form,
        }
    }

    pub fn controls(&self) -> usize {
        self.controls
    }

    pub fn targets(&self) -> &[Unitary2] {
        &self.targets
    }

    pub fn into_targets(self) -> Vec<Unitary2> {
        self.targets
    }

    pub fn form(&self) -> &Form {
        &self.form
    }

    pub fn effective_polarity(&self) -> Polarity {
        self.form.effective_polarity(self.controls)
    }

    /// Operator applied to the target qubit for control input `input_state`.
    pub fn semantics(&self, input_state: usize) -> Unitary2 {
        assert!(input_state < self.targets.len(), "input state out of range");
        let rule = ActivationRule::new(&self.effective_polarity());
        self.targets
            .iter()
            .enumerate()
            .filter(|(i, _)| rule.is_active(*i, input_state))
            .fold(Unitary2::IDENTITY, |acc, (_, g)| *g * acc)
    }

    /// Largest entrywise deviation between the two multiplexers' operators
    /// over every input state.
    pub fn max_semantic_deviation(&self, other: &Multiplexer) -> Result<f64> {
        if self.controls != other.controls {
            return Err(Error::InvalidMultiplexer(format!(
                "control counts differ: {} vs {}",
                self.controls, other.controls
            )));
        }
        Ok((0..self.targets.len())
            .map(|i| self.semantics(i).max_abs_diff(&other.semantics(i)))
            .fold(0.0, f64::max))
    }

    /// Rewrites negative fixed digits as positive digits on inverted lines.
    pub fn negative_control_realization(&self) -> InvertedLines {
        let p = self.effective_polarity();
        let inverted: Vec<bool> = p.digits().iter().map(|d| *d == Digit::Negative).collect();
        let digits = p
            .digits()
            .iter()
            .map(|d| match d {
                Digit::Negative => Digit::Positive,
                other => *other,
            })
            .collect();
        InvertedLines {
            controls: self.controls,
            targets: self.targets.clone(),
            inverted,
            polarity: Polarity::new(digits),
        }
    }
}

/// Activation rule of a polarity as bit masks.
#[derive(Clone, Copy, Debug)]
pub struct ActivationRule {
    masks: DigitMasks,
}

impl ActivationRule {
    pub fn new(p: &Polarity) -> Self {
        ActivationRule { masks: p.masks() }
    }

    /// Whether gate `gate` fires on control input `input`.
    pub fn is_active(&self, gate: usize, input: usize) -> bool {
        let m = self.masks;
        // Fixed lines whose value enables a controlled gate.
        let enabled = (input & m.positive) | (!input & m.negative);
        let fixed_ok = gate & m.fixed() & !enabled == 0;
        let mixed_ok = (gate ^ input) & m.mixed == 0;
        fixed_ok && mixed_ok
    }

    /// Control lines gate `gate` is conditioned on, as a bit mask.
    pub fn control_mask(&self, gate: usize) -> usize {
        (gate & self.masks.fixed()) | self.masks.mixed
    }
}

/// A polarized multiplexer with inverters on the negative-polarity lines,
/// every fixed line then following the positive rule.
#[derive(Clone, Debug, PartialEq)]
pub struct InvertedLines {
    pub controls: usize,
    pub targets: Vec<Unitary2>,
    /// `inverted[k]` is true when line `c_{k+1}` carries an inverter.
    pub inverted: Vec<bool>,
    /// Polarity seen after the inverters; contains no `0` digits.
    pub polarity: Polarity,
}

impl InvertedLines {
    fn inversion_mask(&self) -> usize {
        self.inverted
            .iter()
            .enumerate()
            .filter(|(_, inv)| **inv)
            .fold(0, |acc, (k, _)| acc | 1 << (self.controls - 1 - k))
    }

    pub fn semantics(&self, input_state: usize) -> Unitary2 {
        let seen = input_state ^ self.inversion_mask();
        let rule = ActivationRule::new(&self.polarity);
        self.targets
            .iter()
            .enumerate()
            .filter(|(i, _)| rule.is_active(*i, seen))
            .fold(Unitary2::IDENTITY, |acc, (_, g)| *g * acc)
    }

    pub fn inverter_count(&self) -> usize {
        self.inverted.iter().filter(|b| **b).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::unitary::GateName;

    fn gates(names: &[&str]) -> Vec<Unitary2> {
        names
            .iter()
            .map(|n| n.parse::<GateName>().unwrap().matrix())
            .collect()
    }

    fn distinct(m: usize) -> Vec<Unitary2> {
        (0..1 << m)
            .map(|i| Unitary2::rx(0.3 + i as f64) * Unitary2::rz(1.7 * i as f64 + 0.2))
            .collect()
    }

    #[test]
    fn standard_form_selects_one_target() {
        let t = distinct(2);
        let mux = Multiplexer::standard(t.clone()).unwrap();
        for i in 0..4 {
            assert_eq!(mux.semantics(i), t[i]);
        }
    }

    #[test]
    fn fixed_positive_products() {
        let g = distinct(2);
        let mux = Multiplexer::new(2, g.clone(), Form::Fpqf("11".parse().unwrap())).unwrap();
        let want = [g[0], g[1] * g[0], g[2] * g[0], g[3] * (g[2] * (g[1] * g[0]))];
        for (i, w) in want.iter().enumerate() {
            assert!(mux.semantics(i).approx_eq(w, 1e-12));
        }
    }

    #[test]
    fn fixed_negative_products() {
        let g = distinct(1);
        let mux = Multiplexer::new(1, g.clone(), Form::Fpqf("0".parse().unwrap())).unwrap();
        assert_eq!(mux.semantics(0), g[1] * g[0]);
        assert_eq!(mux.semantics(1), g[0]);
    }

    #[test]
    fn kronecker_mixed_digit() {
        // Polarity 12: the second line must match the gate bit exactly.
        let g = distinct(2);
        let mux = Multiplexer::new(2, g.clone(), Form::Kqf("12".parse().unwrap())).unwrap();
        assert_eq!(mux.semantics(0), g[0]);
        assert_eq!(mux.semantics(1), g[1]);
        assert_eq!(mux.semantics(2), g[2] * g[0]);
        assert_eq!(mux.semantics(3), g[3] * g[1]);
    }

    #[test]
    fn no_active_gate_is_identity() {
        let rule = ActivationRule::new(&"2".parse().unwrap());
        assert!(!rule.is_active(1, 0));
        let g = gates(&["X", "Y"]);
        let mux = Multiplexer::new(1, g, Form::Kqf("2".parse().unwrap())).unwrap();
        assert_eq!(mux.semantics(0), Unitary2::pauli_x());
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(Multiplexer::new(0, vec![Unitary2::IDENTITY], Form::Standard).is_err());
        assert!(Multiplexer::new(2, gates(&["I", "X"]), Form::Standard).is_err());
        assert!(Multiplexer::new(1, gates(&["I", "X"]), Form::Fpqf("2".parse().unwrap())).is_err());
        assert!(matches!(
            Multiplexer::new(1, gates(&["I", "X"]), Form::Kqf("22".parse().unwrap())),
            Err(Error::PolarityLengthMismatch { .. })
        ));
        assert!(Multiplexer::standard(gates(&["I", "X", "Y"])).is_err());
    }

    #[test]
    fn inverter_realization_preserves_semantics() {
        for p in ["0", "1"] {
            let g = distinct(1);
            let mux = Multiplexer::new(1, g, Form::Fpqf(p.parse().unwrap())).unwrap();
            let r = mux.negative_control_realization();
            assert_eq!(r.inverter_count(), usize::from(p == "0"));
            for i in 0..2 {
                assert!(r.semantics(i).approx_eq(&mux.semantics(i), 0.0));
            }
        }
        let mux = Multiplexer::new(2, distinct(2), Form::Fpqf("11".parse().unwrap())).unwrap();
        let r = mux.negative_control_realization();
        assert_eq!(r.inverted, [false, false]);
        assert_eq!(r.polarity.to_string(), "11");

        let mux = Multiplexer::new(2, distinct(2), Form::Fpqf("10".parse().unwrap())).unwrap();
        let r = mux.negative_control_realization();
        assert_eq!(r.inverted, [false, true]);
        for i in 0..4 {
            assert!(r.semantics(i).approx_eq(&mux.semantics(i), 0.0));
        }
    }

    #[test]
    fn inverter_realization_with_mixed_digits() {
        let mux = Multiplexer::new(3, distinct(3), Form::Kqf("021".parse().unwrap())).unwrap();
        let r = mux.negative_control_realization();
        assert_eq!(r.polarity.to_string(), "121");
        for i in 0..8 {
            assert!(r.semantics(i).approx_eq(&mux.semantics(i), 0.0));
        }
    }
}
