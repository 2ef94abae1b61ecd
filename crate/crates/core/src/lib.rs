// SPDX-License-Identifier: Apache-2.0
//! Reversible logic toolkit: a gate library with exact truth tables,
//! gate-cascade netlists with a text format, combinational and clocked
//! simulation, and cost metrics for the reversible JK flip-flop and the
//! counters built from it.
//!
//! Cost metrics are generic over the scalar used for gate costs. The
//! aliases below cover the common choices.

pub mod bits;
pub mod cli;
pub mod designs;
pub mod gates;
pub mod metrics;
pub mod netlist;
pub mod sim;

pub use bits::BitVector;
pub use designs::{
    build_async_counter, build_jk, build_sync_counter, jk_excitation_netlist, DesignName, JkDesign,
};
pub use gates::{
    builtin_library, eval_gate, is_bijection, truth_table, GateDef, GateKind, LogicCost,
};
pub use metrics::{
    compare_report, constant_input_count, eval_cost, garbage_count, quantum_cost, solve_for,
    total_logic_calc, CostExpr, CostSymbol, CostTable, DesignInventory, Report,
};
pub use netlist::{concat, parse_netlist, serialize_netlist, validate, Netlist};
pub use sim::{
    circuit_truth_table, eval_combinational, jk_next_state, run, step, verify_bijective,
    SeqCircuit, SimTrace,
};

/// Integer gate costs, as published.
pub type CostMap = CostTable<u64>;
/// Exact rational gate costs.
pub type RationalCostMap = CostTable<num_rational::Ratio<i64>>;
/// Floating-point gate costs.
pub type FloatCostMap = CostTable<f64>;

pub type IntReport = Report<u64>;
pub type RationalReport = Report<num_rational::Ratio<i64>>;
