//! Fixed-polarity (FPQF) and Kronecker (KQF) forms of binary quantum
//! multiplexers, found by butterfly transforms and polarity search, together
//! with the fixed-polarity and Kronecker Reed-Muller engine they mirror.
//!
//! ```
//! use qmux::{forward_transform, multiplexer_cost, parse_qmux};
//!
//! let std = parse_qmux("controls: 2\nform: standard\ntargets: I V V X\n").unwrap();
//! let fpqf = forward_transform(&std, &"11".parse().unwrap()).unwrap();
//! assert_eq!(multiplexer_cost(&std).total, 15);
//! assert_eq!(multiplexer_cost(&fpqf).total, 2);
//! ```

pub mod bits;
pub mod cost;
pub mod error;
pub mod format;
pub mod mux;
pub mod oracle;
pub mod pla;
pub mod polarity;
pub mod rm;
pub mod search;
pub mod testgen;
pub mod transform;
pub mod unitary;

pub use bits::Bits;
pub use cost::{control_count, gate_cost, inverted_lines_cost, multiplexer_cost, CostReport, GateCost};
pub use error::{Error, Result};
pub use format::{parse_any, parse_qmux, render_qmux};
pub use mux::{ActivationRule, Form, InvertedLines, Multiplexer};
pub use oracle::triangular_solve_oracle;
pub use pla::{parse_pla, to_bool_func, to_multiplexer, PlaFile, PlaSemantics};
pub use polarity::{Digit, Family, Polarity};
pub use rm::{rm_search, rm_transform, rm_transform_matrix, BoolFunc, RmSpectrum};
pub use search::{exhaustive_search, random_polarity_search, search, SearchConfig, SearchMode, SearchReport};
pub use testgen::{generate, known_cases, GatePool};
pub use transform::{apply_kernel, butterfly_stage, forward_transform, inverse_transform, Kernel};
pub use unitary::{parse_gate, GateName, Unitary2};
