//! Seeded random multiplexers and a few hand-built cases.
//!
//! Targets are drawn i.i.d. uniformly from a gate pool with a ChaCha8
//! generator seeded by `ChaCha8Rng::seed_from_u64(seed)`, one draw per
//! target in ascending index order.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::mux::Multiplexer;
use crate::pla::to_multiplexer;
use crate::rm::BoolFunc;
use crate::unitary::{GateName, Unitary2};

pub const MAX_GENERATED_CONTROLS: usize = 20;

#[derive(Clone, Debug, PartialEq)]
pub struct GatePool {
    pub name: String,
    pub gates: Vec<GateName>,
}

impl GatePool {
    /// X, Y, Z, H, V, VD and I.
    pub fn full() -> Self {
        use GateName::*;
        GatePool {
            name: "full".into(),
            gates: vec![X, Y, Z, H, V, Vd, I],
        }
    }

    /// X, V and VD.
    pub fn nvv() -> Self {
        use GateName::*;
        GatePool {
            name: "nvv".into(),
            gates: vec![X, V, Vd],
        }
    }

    pub fn custom(gates: Vec<GateName>) -> Result<Self> {
        if gates.is_empty() {
            return Err(Error::UnknownGate("empty gate pool".into()));
        }
        let name = format!(
            "custom:{}",
            gates.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(",")
        );
        Ok(GatePool { name, gates })
    }

    pub fn draw(&self, rng: &mut impl Rng) -> GateName {
        self.gates[rng.random_range(0..self.gates.len())]
    }
}

impl fmt::Display for GatePool {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl FromStr for GatePool {
    type Err = Error;

    /// `full`, `nvv` or `custom:<tok>,<tok>,...`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s.to_ascii_lowercase().as_str() {
            "full" => return Ok(GatePool::full()),
            "nvv" => return Ok(GatePool::nvv()),
            _ => {}
        }
        let list = s
            .strip_prefix("custom:")
            .ok_or_else(|| Error::UnknownGate(format!("unknown pool `{s}`")))?;
        let gates = list
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(str::parse)
            .collect::<Result<Vec<GateName>>>()?;
        GatePool::custom(gates)
    }
}

/// Standard multiplexer with `2^m` targets drawn from `pool`.
pub fn generate(m: usize, pool: &GatePool, seed: u64) -> Result<Multiplexer> {
    if m == 0 || m > MAX_GENERATED_CONTROLS {
        return Err(Error::SizeLimitExceeded {
            what: "generated controls (1 to 20)",
            size: m,
            limit: MAX_GENERATED_CONTROLS,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let targets = (0..1usize << m).map(|_| pool.draw(&mut rng).matrix()).collect();
    Multiplexer::standard(targets)
}

/// Random unitary from Z-Y-Z Euler angles and a global phase, for property
/// tests. Not Haar-distributed.
pub fn random_unitary(rng: &mut impl Rng) -> Unitary2 {
    let mut angle = || rng.random_range(-PI..PI);
    Unitary2::phase(angle()) * Unitary2::rz(angle()) * Unitary2::ry(angle()) * Unitary2::rz(angle())
}

/// Standard multiplexer of random unitaries.
pub fn random_unitary_multiplexer(m: usize, seed: u64) -> Result<Multiplexer> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Multiplexer::standard((0..1usize << m).map(|_| random_unitary(&mut rng)).collect())
}

#[derive(Clone, Debug)]
pub struct KnownCase {
    pub name: &'static str,
    pub mux: Multiplexer,
    /// Expected cheapest fixed polarity, where one is pinned down.
    pub best_fpqf: Option<&'static str>,
}

fn named(tokens: &[GateName]) -> Multiplexer {
    Multiplexer::standard(tokens.iter().map(|g| g.matrix()).collect()).expect("valid case")
}

pub fn known_cases() -> Vec<KnownCase> {
    use GateName::*;
    let parity3 = BoolFunc::from_truth_table(3, |i| i.count_ones() % 2 == 1).expect("3 vars");
    vec![
        KnownCase {
            name: "ivvx",
            mux: named(&[I, V, V, X]),
            best_fpqf: Some("11"),
        },
        KnownCase {
            name: "all-identity-2",
            mux: named(&[I, I, I, I]),
            best_fpqf: Some("00"),
        },
        KnownCase {
            name: "parity-3",
            mux: to_multiplexer(&parity3).expect("3 controls"),
            best_fpqf: Some("111"),
        },
        KnownCase {
            name: "toffoli",
            mux: named(&[I, I, I, X]),
            best_fpqf: Some("11"),
        },
        KnownCase {
            name: "uniform-h-2",
            mux: named(&[H, H, H, H]),
            best_fpqf: Some("00"),
        },
    ]
}
