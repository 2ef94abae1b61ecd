// SPDX-License-Identifier: Apache-2.0
//! Builders for the reversible JK flip-flop and the N-bit counters built
//! from it.
//!
//! The flip-flop is modeled behaviorally by its characteristic equation and
//! carries a declared gate inventory (4 MUX, 2 New, 4 Feynman) for cost
//! analysis. The counters pair a [`SeqCircuit`] with a declared inventory
//! for the 3-bit case and an extrapolated one for other widths.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::gates::{GateKind, LogicCost};
use crate::metrics::{
    quantum_cost, total_logic_calc, Component, CostExpr, CostSymbol, DesignInventory, Expansions,
    InventorySource, MetricsError, Provenance, QuantumCostEntry, ReportEntry,
};
use crate::netlist::{Netlist, Wire};
use crate::sim::{self, Drive, FlipFlop, SeqCircuit, Topology};

/// Cost symbol of the reversible JK flip-flop in counter inventories.
pub const JK_SYMBOL: &str = "A";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DesignError {
    #[error("a counter needs at least one bit")]
    ZeroBits,
    #[error("counter width {0} exceeds 64 bits")]
    TooWide(usize),
    #[error("unknown design `{0}` (expected jk, sync<N> or async<N>)")]
    UnknownDesign(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JkDesign {
    pub inventory: DesignInventory,
}

impl JkDesign {
    pub fn next_state(&self, j: bool, k: bool, q: bool) -> bool {
        sim::jk_next_state(j, k, q)
    }
}

pub fn build_jk() -> JkDesign {
    JkDesign {
        inventory: DesignInventory::declared("jk", "published reversible JK flip-flop gate count")
            .with_symbol(JK_SYMBOL)
            .gate(GateKind::Mux, 4)
            .gate(GateKind::New, 2)
            .gate(GateKind::Feynman, 4),
    }
}

/// Expansions resolving [`JK_SYMBOL`] to the flip-flop inventory.
pub fn expansions() -> Expansions {
    Expansions::new().with(build_jk().inventory)
}

fn jk_component() -> Component {
    Component::Design(CostSymbol::new(JK_SYMBOL))
}

fn check_bits(bits: usize) -> Result<(), DesignError> {
    match bits {
        0 => Err(DesignError::ZeroBits),
        b if b > 64 => Err(DesignError::TooWide(b)),
        _ => Ok(()),
    }
}

/// Synchronous up-counter: `J_i = K_i = Q_0 … Q_{i-1}`, `J_0 = K_0 = 1`.
pub fn build_sync_counter(bits: usize) -> Result<SeqCircuit, DesignError> {
    check_bits(bits)?;
    let flipflops = (0..bits)
        .map(|i| {
            if i == 0 {
                FlipFlop::toggle()
            } else {
                let lower: Vec<usize> = (0..i).collect();
                FlipFlop {
                    j: Drive::And(lower.clone()),
                    k: Drive::And(lower),
                }
            }
        })
        .collect();
    let name = format!("sync{bits}");
    let base = if bits == 3 {
        DesignInventory::declared(name, "published 3-bit synchronous counter gate count")
    } else {
        DesignInventory {
            source: InventorySource::Extrapolated {
                note: "N flip-flops, N clock-copy Feynman gates, N-2 AND-forming MUX gates".into(),
            },
            ..DesignInventory::structural(name)
        }
    };
    let inventory = base
        .with(jk_component(), bits as u64)
        .gate(GateKind::Mux, bits.saturating_sub(2) as u64)
        .gate(GateKind::Feynman, bits as u64);
    Ok(SeqCircuit {
        flipflops,
        topology: Topology::Synchronous,
        inventory,
    })
}

/// Ripple up-counter: every flip-flop has `J = K = 1` and each stage is
/// clocked by the falling output of the one before.
pub fn build_async_counter(bits: usize) -> Result<SeqCircuit, DesignError> {
    check_bits(bits)?;
    let name = format!("async{bits}");
    let base = if bits == 3 {
        DesignInventory::declared(name, "published 3-bit asynchronous counter gate count")
    } else {
        DesignInventory {
            source: InventorySource::Extrapolated {
                note: "N flip-flops, one clock-input Feynman gate".into(),
            },
            ..DesignInventory::structural(name)
        }
    };
    Ok(SeqCircuit {
        flipflops: vec![FlipFlop::toggle(); bits],
        topology: Topology::Ripple,
        inventory: base
            .with(jk_component(), bits as u64)
            .gate(GateKind::Feynman, 1),
    })
}

/// A MUX realizing the JK next-state function on its `R` output.
///
/// Wires are `q`, `k`, `j`. A NOT stage turns `k` into `K'`, then the MUX
/// sees `A = Q`, `B = K'`, `C = J` and produces `R = Q'J ^ QK'` on wire `j`.
/// The `q` and `k` outputs are garbage.
pub fn jk_excitation_netlist() -> Netlist {
    Netlist {
        wires: vec![
            Wire::new("q").garbage(),
            Wire::new("k").garbage(),
            Wire::new("j"),
        ],
        ..Default::default()
    }
    .gate(GateKind::Not, ["k"])
    .gate(GateKind::Mux, ["q", "k", "j"])
}

/// A design addressable from the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DesignName {
    Jk,
    Sync(usize),
    Async(usize),
}

impl DesignName {
    pub fn inventory(&self) -> Result<DesignInventory, DesignError> {
        Ok(match *self {
            DesignName::Jk => build_jk().inventory,
            DesignName::Sync(b) => build_sync_counter(b)?.inventory,
            DesignName::Async(b) => build_async_counter(b)?.inventory,
        })
    }
}

impl FromStr for DesignName {
    type Err = DesignError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.to_ascii_lowercase();
        let bits = |rest: &str| -> Result<usize, DesignError> {
            let b: usize = rest
                .parse()
                .map_err(|_| DesignError::UnknownDesign(s.into()))?;
            check_bits(b)?;
            Ok(b)
        };
        if lower == "jk" {
            Ok(DesignName::Jk)
        } else if let Some(rest) = lower.strip_prefix("async") {
            Ok(DesignName::Async(bits(rest)?))
        } else if let Some(rest) = lower.strip_prefix("sync") {
            Ok(DesignName::Sync(bits(rest)?))
        } else {
            Err(DesignError::UnknownDesign(s.into()))
        }
    }
}

impl fmt::Display for DesignName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DesignName::Jk => f.write_str("jk"),
            DesignName::Sync(b) => write!(f, "sync{b}"),
            DesignName::Async(b) => write!(f, "async{b}"),
        }
    }
}

/// Published figures for the earlier Fredkin/Feynman-based counters.
pub const LITERATURE_SYNC_QC: u64 = 122;
pub const LITERATURE_SYNC_T: LogicCost = LogicCost::new(53, 64, 45);
pub const LITERATURE_ASYNC_QC: u64 = 115;
pub const LITERATURE_ASYNC_T: LogicCost = LogicCost::new(49, 60, 42);

/// The comparison table: both proposed 3-bit counters computed from their
/// inventories, followed by the earlier designs as literature constants.
pub fn comparison_entries() -> Result<Vec<ReportEntry<u64>>, MetricsError> {
    let exp = expansions();
    let computed = |name: &str, inv: DesignInventory| -> Result<ReportEntry<u64>, MetricsError> {
        Ok(ReportEntry {
            name: name.into(),
            quantum: QuantumCostEntry::Expr(quantum_cost(&inv, &exp)?),
            logic: total_logic_calc(&inv, &exp)?,
            provenance: Provenance::Computed,
        })
    };
    let literature = |name: &str, qc: u64, t: LogicCost| ReportEntry {
        name: name.into(),
        quantum: QuantumCostEntry::<u64>::Literal(qc),
        logic: t,
        provenance: Provenance::Literature {
            citation: "earlier Fredkin/Feynman counter".into(),
        },
    };
    let three = |b: Result<SeqCircuit, DesignError>| b.expect("3-bit counters build").inventory;
    Ok(vec![
        computed("proposed synchronous counter", three(build_sync_counter(3)))?,
        computed(
            "proposed asynchronous counter",
            three(build_async_counter(3)),
        )?,
        literature(
            "existing synchronous counter",
            LITERATURE_SYNC_QC,
            LITERATURE_SYNC_T,
        ),
        literature(
            "existing asynchronous counter",
            LITERATURE_ASYNC_QC,
            LITERATURE_ASYNC_T,
        ),
    ])
}

/// Quantum cost of a design expanded down to gate symbols.
pub fn design_quantum_cost(inv: &DesignInventory) -> Result<CostExpr, MetricsError> {
    quantum_cost(inv, &expansions())
}
