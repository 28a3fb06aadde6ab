//! Gate cost of multiplexers.
//!
//! An `m`-controlled single-qubit gate is priced by the number of
//! uncontrolled and singly-controlled gates needed to build it, assuming one
//! ancilla shared by the whole circuit. Targets equal to the identity are
//! free, as are the inverters on negative-polarity lines.

use std::fmt;

use serde::Serialize;

use crate::mux::{ActivationRule, InvertedLines, Multiplexer};
use crate::polarity::Polarity;

/// Costs for 0 through 9 controls.
pub const COST_TABLE: [u64; 10] = [1, 1, 5, 13, 29, 52, 84, 116, 154, 192];

/// Cost of a gate with `num_controls` controls: table lookup below ten,
/// `32m − 96` from ten on.
pub fn gate_cost(num_controls: usize) -> u64 {
    match COST_TABLE.get(num_controls) {
        Some(&c) => c,
        None => 32 * num_controls as u64 - 96,
    }
}

/// Number of control lines gate `gate_index` is conditioned on under `p`.
/// A fixed digit counts when the gate's bit for that line is set; a mixed
/// digit always counts. The standard form is the all-mixed polarity.
pub fn control_count(gate_index: usize, p: &Polarity) -> usize {
    ActivationRule::new(p).control_mask(gate_index).count_ones() as usize
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GateCost {
    pub index: usize,
    pub controls: usize,
    pub cost: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CostReport {
    /// Non-identity gates only, ascending index.
    pub per_gate: Vec<GateCost>,
    pub total: u64,
    pub skipped_identities: usize,
}

impl CostReport {
    fn from_gates<'a>(
        gates: impl Iterator<Item = (usize, &'a crate::Unitary2)>,
        rule: ActivationRule,
    ) -> Self {
        let mut per_gate = Vec::new();
        let mut skipped_identities = 0;
        for (index, g) in gates {
            if g.is_identity() {
                skipped_identities += 1;
                continue;
            }
            let controls = rule.control_mask(index).count_ones() as usize;
            per_gate.push(GateCost {
                index,
                controls,
                cost: gate_cost(controls),
            });
        }
        let total = per_gate.iter().map(|g| g.cost).sum();
        CostReport {
            per_gate,
            total,
            skipped_identities,
        }
    }

    /// Aligned text table, one row per costed gate, then the total.
    pub fn to_table(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for CostReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:>8}  {:>8}  {:>10}", "gate", "controls", "cost")?;
        for g in &self.per_gate {
            writeln!(f, "{:>8}  {:>8}  {:>10}", g.index, g.controls, g.cost)?;
        }
        writeln!(f, "{:>8}  {:>8}  {:>10}", "total", "", self.total)?;
        write!(f, "identities skipped: {}", self.skipped_identities)
    }
}

pub fn multiplexer_cost(mux: &Multiplexer) -> CostReport {
    CostReport::from_gates(
        mux.targets().iter().enumerate(),
        ActivationRule::new(&mux.effective_polarity()),
    )
}

/// Cost of the inverter realization; inverters themselves are free.
pub fn inverted_lines_cost(r: &InvertedLines) -> CostReport {
    CostReport::from_gates(r.targets.iter().enumerate(), ActivationRule::new(&r.polarity))
}

/// Total cost only, without building the per-gate list.
pub(crate) fn total_cost(targets: &[crate::Unitary2], rule: ActivationRule) -> u64 {
    targets
        .iter()
        .enumerate()
        .filter(|(_, g)| !g.is_identity())
        .map(|(i, _)| gate_cost(rule.control_mask(i).count_ones() as usize))
        .sum()
}
