//! The `.qmux` text format and its JSON mirror.
//!
//! ```text
//! # comment
//! controls: 2
//! form: standard
//! targets: I V V X
//! ```
//!
//! Targets may continue over further lines. Whitespace inside parentheses
//! belongs to the token, so `RZ(pi / 4)` and `M(1, 0, 0, 0, 0, 0, 1, 0)` are
//! single tokens.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mux::{Form, Multiplexer};
use crate::unitary::{parse_gate, Unitary2};

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Splits on whitespace outside parentheses. Yields 1-based columns.
fn tokens(text: &str) -> Vec<(usize, String)> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut current = String::new();
    let mut start = 0;
    for (i, c) in text.chars().enumerate() {
        if c.is_whitespace() && depth == 0 {
            if !current.is_empty() {
                out.push((start + 1, std::mem::take(&mut current)));
            }
            continue;
        }
        if current.is_empty() {
            start = i;
        }
        match c {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            _ => {}
        }
        if !(c.is_whitespace() && depth > 0) {
            current.push(c);
        }
    }
    if !current.is_empty() {
        out.push((start + 1, current));
    }
    out
}

pub fn parse_qmux(text: &str) -> Result<Multiplexer> {
    let mut controls: Option<(usize, usize)> = None;
    let mut form: Option<Form> = None;
    let mut targets: Option<Vec<Unitary2>> = None;
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let indent = line.len() - line.trim_start().len();
        let body = line.trim_start();
        let (key, rest, rest_col) = match body.split_once(':') {
            Some((k, r)) if targets.is_none() || ["controls", "form", "targets"].contains(&k.trim()) => {
                (Some(k.trim()), r, indent + k.len() + 1)
            }
            _ => (None, body, indent),
        };
        let value_col = rest_col + (rest.len() - rest.trim_start().len()) + 1;
        match key {
            Some("controls") => {
                let v = rest.trim();
                let m = v.parse::<usize>().map_err(|_| {
                    parse_err(line_no, value_col, format!("expected a control count, found `{v}`"))
                })?;
                controls = Some((m, line_no));
            }
            Some("form") => {
                let f = rest.trim().parse::<Form>().map_err(|e| parse_err(line_no, value_col, e.to_string()))?;
                form = Some(f);
            }
            Some("targets") => {
                let list = targets.get_or_insert_with(Vec::new);
                for (col, tok) in tokens(rest) {
                    list.push(
                        parse_gate(&tok).map_err(|e| parse_err(line_no, rest_col + col, e.to_string()))?,
                    );
                }
            }
            Some(other) if targets.is_none() => {
                return Err(parse_err(line_no, indent + 1, format!("unknown field `{other}`")));
            }
            _ => match targets.as_mut() {
                Some(list) => {
                    for (col, tok) in tokens(rest) {
                        list.push(
                            parse_gate(&tok)
                                .map_err(|e| parse_err(line_no, rest_col + col, e.to_string()))?,
                        );
                    }
                }
                None => return Err(parse_err(line_no, indent + 1, "expected `field: value`")),
            },
        }
    }
    let end = last_line.max(1);
    let (m, m_line) = controls.ok_or_else(|| parse_err(end, 1, "missing `controls:`"))?;
    let form = form.ok_or_else(|| parse_err(end, 1, "missing `form:`"))?;
    let targets = targets.ok_or_else(|| parse_err(end, 1, "missing `targets:`"))?;
    Multiplexer::new(m, targets, form).map_err(|e| match e {
        Error::SizeLimitExceeded { .. } => e,
        other => parse_err(m_line, 1, other.to_string()),
    })
}

/// Text rendering; [`parse_qmux`] reads it back exactly.
pub fn render_qmux(mux: &Multiplexer) -> String {
    let tokens: Vec<String> = mux.targets().iter().map(|u| u.to_token()).collect();
    format!(
        "controls: {}\nform: {}\ntargets: {}\n",
        mux.controls(),
        mux.form(),
        tokens.join(" ")
    )
}

/// JSON mirror of the text format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QmuxDocument {
    pub controls: usize,
    pub form: String,
    pub targets: Vec<String>,
}

impl From<&Multiplexer> for QmuxDocument {
    fn from(mux: &Multiplexer) -> Self {
        QmuxDocument {
            controls: mux.controls(),
            form: mux.form().to_string(),
            targets: mux.targets().iter().map(|u| u.to_token()).collect(),
        }
    }
}

impl QmuxDocument {
    pub fn to_multiplexer(&self) -> Result<Multiplexer> {
        let form: Form = self.form.parse()?;
        let targets = self
            .targets
            .iter()
            .map(|t| parse_gate(t))
            .collect::<Result<Vec<_>>>()?;
        Multiplexer::new(self.controls, targets, form)
    }
}

pub fn to_json(mux: &Multiplexer) -> String {
    serde_json::to_string_pretty(&QmuxDocument::from(mux)).expect("plain data serializes")
}

pub fn from_json(text: &str) -> Result<Multiplexer> {
    let doc: QmuxDocument = serde_json::from_str(text)
        .map_err(|e| parse_err(e.line(), e.column(), e.to_string()))?;
    doc.to_multiplexer()
}

/// Reads either format, choosing JSON when the first non-blank byte is `{`.
pub fn parse_any(text: &str) -> Result<Multiplexer> {
    if text.trim_start().starts_with('{') {
        from_json(text)
    } else {
        parse_qmux(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transform::forward_transform;

    const FIG: &str = "# two controls\ncontrols: 2\nform: standard\ntargets: I V V X\n";

    #[test]
    fn parse_and_render() {
        let m = parse_qmux(FIG).unwrap();
        assert_eq!(m.controls(), 2);
        assert_eq!(render_qmux(&m), "controls: 2\nform: standard\ntargets: I V V X\n");
        assert_eq!(parse_qmux(&render_qmux(&m)).unwrap(), m);
    }

    #[test]
    fn multiline_and_parenthesized_tokens() {
        let text = "controls: 1\nform: fpqf:0\ntargets:\n  RZ(pi / 4)\n  M(0, 0, 1, 0, 1, 0, 0, 0)  # X\n";
        let m = parse_qmux(text).unwrap();
        assert_eq!(m.targets()[1], crate::Unitary2::pauli_x());
        assert_eq!(m.form(), &Form::Fpqf("0".parse().unwrap()));
    }

    #[test]
    fn literal_round_trip_after_transform() {
        let m = parse_qmux("controls: 2\nform: standard\ntargets: H Y RX(0.3) V\n").unwrap();
        let k = forward_transform(&m, &"21".parse().unwrap()).unwrap();
        let back = parse_qmux(&render_qmux(&k)).unwrap();
        assert_eq!(back, k);
        assert_eq!(from_json(&to_json(&k)).unwrap(), k);
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse_qmux("controls: 2\nform: standard\ntargets: I V Q X\n").unwrap_err();
        assert_eq!(
            err,
            Error::Parse { line: 3, column: 14, message: "unknown gate `Q`".into() }
        );
        assert!(matches!(
            parse_qmux("controls: two\n"),
            Err(Error::Parse { line: 1, column: 11, .. })
        ));
        assert!(matches!(parse_qmux("controls: 2\ntargets: I I I I\n"), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_qmux("controls: 2\nform: standard\ntargets: I I I\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(parse_qmux("colour: red\n"), Err(Error::Parse { line: 1, column: 1, .. })));
        assert!(matches!(
            parse_qmux("controls: 1\nform: fpqf:2\ntargets: I I\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn json_mirror() {
        let m = parse_qmux(FIG).unwrap();
        let json = to_json(&m);
        assert!(json.contains("\"form\": \"standard\""));
        assert_eq!(parse_any(&json).unwrap(), m);
        assert!(matches!(from_json("{\"controls\": 1"), Err(Error::Parse { .. })));
    }
}
