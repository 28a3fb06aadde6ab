//! Berkeley PLA files and their conversion to standard-form multiplexers.
//!
//! Supported directives: `.i`, `.o`, `.p`, `.type`, `.ilb`, `.ob`, `.e` /
//! `.end`. Other directives are skipped with a warning. A cube line holds an
//! input part over `{0,1,-}` and an output part over `{0,1,~,-}`, either
//! separated by whitespace or written back to back.

use std::fmt;
use std::str::FromStr;

use log::warn;

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::mux::{Form, Multiplexer, MAX_CONTROLS};
use crate::rm::BoolFunc;
use crate::unitary::Unitary2;

/// Input count beyond which cube expansion is refused.
pub const MAX_PLA_INPUTS: usize = MAX_CONTROLS;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InputBit {
    Zero,
    One,
    DontCare,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputBit {
    Zero,
    One,
    /// `~` or `-`: no value specified.
    Unspecified,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub inputs: Vec<InputBit>,
    pub outputs: Vec<OutputBit>,
}

impl Term {
    /// Minterm indices covered by the input cube, first column most
    /// significant.
    pub fn minterms(&self) -> Vec<usize> {
        let n = self.inputs.len();
        let mut base = 0usize;
        let mut free = Vec::new();
        for (k, b) in self.inputs.iter().enumerate() {
            let bit = 1usize << (n - 1 - k);
            match b {
                InputBit::One => base |= bit,
                InputBit::DontCare => free.push(bit),
                InputBit::Zero => {}
            }
        }
        (0..1usize << free.len())
            .map(|sel| {
                free.iter()
                    .enumerate()
                    .filter(|(j, _)| (sel >> j) & 1 == 1)
                    .fold(base, |acc, (_, b)| acc | b)
            })
            .collect()
    }
}

/// Which output entries define the ON-set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlaSemantics {
    /// ON-set only; everything not listed is 0.
    F,
    /// ON-set and OFF-set listed; points in neither are taken as 0.
    Fr,
}

impl FromStr for PlaSemantics {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "f" => Ok(PlaSemantics::F),
            "fr" => Ok(PlaSemantics::Fr),
            other => Err(Error::UnsupportedType(other.to_string())),
        }
    }
}

impl fmt::Display for PlaSemantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PlaSemantics::F => "f",
            PlaSemantics::Fr => "fr",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaFile {
    pub num_inputs: usize,
    pub num_outputs: usize,
    pub num_terms: Option<usize>,
    pub pla_type: Option<String>,
    pub input_labels: Vec<String>,
    pub output_labels: Vec<String>,
    pub terms: Vec<Term>,
}

fn parse_count(value: Option<&str>, line: usize, directive: &str) -> Result<usize> {
    value
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| Error::Parse {
            line,
            column: 1,
            message: format!("`{directive}` needs a non-negative integer"),
        })
}

pub fn parse_pla(text: &str) -> Result<PlaFile> {
    let mut num_inputs = None;
    let mut num_outputs = None;
    let mut pla = PlaFile {
        num_inputs: 0,
        num_outputs: 0,
        num_terms: None,
        pla_type: None,
        input_labels: Vec::new(),
        output_labels: Vec::new(),
        terms: Vec::new(),
    };
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(directive) = line.strip_prefix('.') {
            let mut parts = directive.split_whitespace();
            let name = parts.next().unwrap_or("");
            match name {
                "i" => num_inputs = Some(parse_count(parts.next(), line_no, ".i")?),
                "o" => num_outputs = Some(parse_count(parts.next(), line_no, ".o")?),
                "p" => pla.num_terms = Some(parse_count(parts.next(), line_no, ".p")?),
                "type" => pla.pla_type = parts.next().map(str::to_ascii_lowercase),
                "ilb" => pla.input_labels = parts.map(String::from).collect(),
                "ob" => pla.output_labels = parts.map(String::from).collect(),
                "e" | "end" => break,
                other => warn!("line {line_no}: ignoring directive `.{other}`"),
            }
            continue;
        }
        let ni = num_inputs.ok_or(Error::MissingHeader(".i"))?;
        let no = num_outputs.ok_or(Error::MissingHeader(".o"))?;
        pla.terms.push(parse_term(line, line_no, ni, no)?);
    }
    pla.num_inputs = num_inputs.ok_or(Error::MissingHeader(".i"))?;
    pla.num_outputs = num_outputs.ok_or(Error::MissingHeader(".o"))?;
    if let Some(p) = pla.num_terms {
        if p != pla.terms.len() {
            warn!(".p declares {p} terms, found {}", pla.terms.len());
        }
    }
    Ok(pla)
}

fn parse_term(line: &str, line_no: usize, ni: usize, no: usize) -> Result<Term> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    let (input, output) = match fields.as_slice() {
        [input, output] => (*input, *output),
        [joined] if joined.is_ascii() && joined.len() == ni + no => joined.split_at(ni),
        [joined] => {
            return Err(Error::InconsistentWidth {
                line: line_no,
                expected: ni + no,
                found: joined.chars().count(),
            })
        }
        _ => {
            return Err(Error::MalformedCube {
                line: line_no,
                cube: line.to_string(),
            })
        }
    };
    let malformed = || Error::MalformedCube {
        line: line_no,
        cube: line.to_string(),
    };
    if input.chars().count() != ni {
        return Err(Error::InconsistentWidth {
            line: line_no,
            expected: ni,
            found: input.chars().count(),
        });
    }
    if output.chars().count() != no {
        return Err(Error::InconsistentWidth {
            line: line_no,
            expected: no,
            found: output.chars().count(),
        });
    }
    let inputs = input
        .chars()
        .map(|c| match c {
            '0' => Some(InputBit::Zero),
            '1' => Some(InputBit::One),
            '-' | 'x' | 'X' => Some(InputBit::DontCare),
            _ => None,
        })
        .collect::<Option<Vec<_>>>()
        .ok_or_else(malformed)?;
    let outputs = output
        .chars()
        .map(|c| match c {
            '0' => Some(OutputBit::Zero),
            '1' | '4' => Some(OutputBit::One),
            '~' | '-' | '2' | '3' => Some(OutputBit::Unspecified),
            _ => None,
        })
        .collect::<Option<Vec<_>>>()
        .ok_or_else(malformed)?;
    Ok(Term { inputs, outputs })
}

/// Expands output `output_index` into a minterm vector.
pub fn to_bool_func(pla: &PlaFile, output_index: usize, semantics: PlaSemantics) -> Result<BoolFunc> {
    match pla.pla_type.as_deref() {
        None | Some("f") | Some("fr") => {}
        Some(other) => return Err(Error::UnsupportedType(other.to_string())),
    }
    if output_index >= pla.num_outputs {
        return Err(Error::OutputIndexOutOfRange {
            index: output_index,
            outputs: pla.num_outputs,
        });
    }
    let n = pla.num_inputs;
    if n == 0 || n > MAX_PLA_INPUTS {
        return Err(Error::SizeLimitExceeded {
            what: "PLA inputs",
            size: n,
            limit: MAX_PLA_INPUTS,
        });
    }
    let mut on = Bits::zeros(1 << n);
    for term in &pla.terms {
        // Under either semantics only ON entries set a minterm; OFF and
        // unspecified entries leave it at 0.
        if term.outputs[output_index] == OutputBit::One {
            for i in term.minterms() {
                on.set(i, true);
            }
        }
    }
    log::debug!("output {output_index} expanded under type {semantics}");
    BoolFunc::new(n, on)
}

/// Standard multiplexer with `X` on ON minterms and `I` elsewhere.
pub fn to_multiplexer(f: &BoolFunc) -> Result<Multiplexer> {
    let n = f.num_vars();
    if n > MAX_CONTROLS {
        return Err(Error::SizeLimitExceeded {
            what: "multiplexer controls",
            size: n,
            limit: MAX_CONTROLS,
        });
    }
    let x = Unitary2::pauli_x();
    let targets = (0..1usize << n)
        .map(|i| if f.eval(i) { x } else { Unitary2::IDENTITY })
        .collect();
    Multiplexer::new(n, targets, Form::Standard)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_xor() {
        let pla = parse_pla(".i 2\n.o 1\n.p 2\n01 1\n10 1\n.e").unwrap();
        assert_eq!(pla.num_inputs, 2);
        assert_eq!(pla.terms.len(), 2);
        let f = to_bool_func(&pla, 0, PlaSemantics::F).unwrap();
        assert_eq!(f.minterms().to_string(), "0110");
        let m = to_multiplexer(&f).unwrap();
        let names: Vec<String> = m.targets().iter().map(|u| u.to_token()).collect();
        assert_eq!(names, ["I", "X", "X", "I"]);
    }

    #[test]
    fn width_errors() {
        assert!(matches!(
            parse_pla(".i 1\n.o 1\n0- 1\n.e"),
            Err(Error::InconsistentWidth { line: 3, .. })
        ));
        assert!(matches!(
            parse_pla(".i 2\n.o 1\n01 11\n"),
            Err(Error::InconsistentWidth { .. })
        ));
        assert!(matches!(
            parse_pla(".i 2\n.o 1\n0a 1\n"),
            Err(Error::MalformedCube { .. })
        ));
    }

    #[test]
    fn missing_headers() {
        assert!(matches!(parse_pla("01 1\n"), Err(Error::MissingHeader(".i"))));
        assert!(matches!(parse_pla(".i 2\n01 1\n"), Err(Error::MissingHeader(".o"))));
        assert!(matches!(parse_pla(".o 1\n"), Err(Error::MissingHeader(".i"))));
    }

    #[test]
    fn dont_care_expansion() {
        let pla = parse_pla(".i 2\n.o 1\n1- 1\n").unwrap();
        let mut m = pla.terms[0].minterms();
        m.sort();
        assert_eq!(m, [2, 3]);
    }

    #[test]
    fn comments_joined_cubes_and_unknown_directives() {
        let text = "# header\n.i 3\n.o 2\n.ilb a b c\n.phase 11\n1-0 01 # cube\n00101\n.end\n111 11\n";
        let pla = parse_pla(text).unwrap();
        assert_eq!(pla.terms.len(), 2);
        assert_eq!(pla.input_labels, ["a", "b", "c"]);
        let f0 = to_bool_func(&pla, 0, PlaSemantics::F).unwrap();
        assert_eq!(f0.minterms().to_string(), "00000000");
        let f1 = to_bool_func(&pla, 1, PlaSemantics::F).unwrap();
        assert_eq!(f1.minterms().to_string(), "01001010");
    }

    #[test]
    fn overlapping_terms_or_together() {
        let pla = parse_pla(".i 2\n.o 1\n1- 1\n-1 1\n").unwrap();
        let f = to_bool_func(&pla, 0, PlaSemantics::F).unwrap();
        assert_eq!(f.minterms().to_string(), "0111");
    }

    #[test]
    fn empty_and_unspecified() {
        let pla = parse_pla(".i 3\n.o 1\n.e\n").unwrap();
        assert_eq!(to_bool_func(&pla, 0, PlaSemantics::F).unwrap().minterms().count_ones(), 0);
        let pla = parse_pla(".i 2\n.o 2\n.type fr\n11 1~\n00 01\n").unwrap();
        let f = to_bool_func(&pla, 1, PlaSemantics::Fr).unwrap();
        assert_eq!(f.minterms().to_string(), "1000");
    }

    #[test]
    fn unsupported_type_and_index() {
        let pla = parse_pla(".i 2\n.o 1\n.type fd\n11 1\n").unwrap();
        assert!(matches!(
            to_bool_func(&pla, 0, PlaSemantics::F),
            Err(Error::UnsupportedType(_))
        ));
        let pla = parse_pla(".i 2\n.o 1\n11 1\n").unwrap();
        assert!(matches!(
            to_bool_func(&pla, 1, PlaSemantics::F),
            Err(Error::OutputIndexOutOfRange { .. })
        ));
    }

    #[test]
    fn parity_five() {
        let mut text = String::from(".i 5\n.o 1\n");
        for i in 0..32u32 {
            if i.count_ones() % 2 == 1 {
                text.push_str(&format!("{i:05b} 1\n"));
            }
        }
        let f = to_bool_func(&parse_pla(&text).unwrap(), 0, PlaSemantics::F).unwrap();
        assert_eq!(f.minterms().len(), 32);
        assert_eq!(f.minterms().count_ones(), 16);
        // Brute-force enumeration of the truth table.
        for i in 0..32usize {
            assert_eq!(f.eval(i), i.count_ones() % 2 == 1);
        }
    }

    #[test]
    fn single_variable_identity_mux() {
        let f = BoolFunc::from_minterms("01".parse().unwrap()).unwrap();
        let m = to_multiplexer(&f).unwrap();
        assert_eq!(m.targets(), [Unitary2::IDENTITY, Unitary2::pauli_x()]);
    }
}
