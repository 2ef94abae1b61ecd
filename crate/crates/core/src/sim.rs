// SPDX-License-Identifier: Apache-2.0
//! Combinational evaluation of netlists and clocked simulation of JK
//! flip-flop networks.

use std::fmt::Write as _;

use thiserror::Error;

use crate::bits::{BitVector, MAX_WIDTH};
use crate::gates::{self, Bijection, GateError, GateKind, DEFAULT_ENUMERATION_CAP};
use crate::metrics::DesignInventory;
use crate::netlist::{Netlist, Violation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimError {
    #[error("width mismatch: expected {expected} bits, got {found}")]
    WidthMismatch { expected: usize, found: usize },
    #[error("wire `{wire}` is a constant input ({}) but was driven with the other value", u8::from(*.expected))]
    ConstantViolation { wire: String, expected: bool },
    #[error("invalid netlist: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error("{0} wires exceed the {MAX_WIDTH}-wire simulation limit")]
    TooWide(usize),
    #[error(transparent)]
    Gate(#[from] GateError),
}

/// A netlist with bindings resolved to wire indices.
struct Compiled {
    width: usize,
    stages: Vec<(GateKind, Vec<usize>)>,
}

impl Compiled {
    fn new(n: &Netlist) -> Result<Self, SimError> {
        if n.width() > MAX_WIDTH {
            return Err(SimError::TooWide(n.width()));
        }
        Ok(Compiled {
            width: n.width(),
            stages: n.resolve().map_err(SimError::Invalid)?,
        })
    }

    fn apply(&self, mut values: BitVector) -> BitVector {
        for (gate, wires) in &self.stages {
            let row = wires
                .iter()
                .fold(0u64, |acc, &w| (acc << 1) | u64::from(values.get(w)));
            let out = gate.apply_row(row);
            let arity = wires.len();
            for (pos, &w) in wires.iter().enumerate() {
                values.set(w, (out >> (arity - 1 - pos)) & 1 == 1);
            }
        }
        values
    }
}

/// Runs `inputs` (one bit per wire, declaration order) through the cascade.
/// Constant-role wires must carry their declared value.
pub fn eval_combinational(n: &Netlist, inputs: &BitVector) -> Result<BitVector, SimError> {
    let compiled = Compiled::new(n)?;
    if inputs.width() != compiled.width {
        return Err(SimError::WidthMismatch {
            expected: compiled.width,
            found: inputs.width(),
        });
    }
    for (i, w) in n.wires.iter().enumerate() {
        if let Some(c) = w.constant_value() {
            if inputs.get(i) != c {
                return Err(SimError::ConstantViolation {
                    wire: w.name.clone(),
                    expected: c,
                });
            }
        }
    }
    Ok(compiled.apply(*inputs))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircuitRow {
    /// Values of the free (non-constant) inputs, in wire order.
    pub free: BitVector,
    /// Full input vector including constants.
    pub inputs: BitVector,
    pub outputs: BitVector,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircuitTable {
    /// Wire indices of the free inputs.
    pub free_inputs: Vec<usize>,
    /// Wire indices whose outputs are garbage.
    pub garbage: Vec<usize>,
    pub rows: Vec<CircuitRow>,
}

pub fn circuit_truth_table(n: &Netlist) -> Result<CircuitTable, SimError> {
    circuit_truth_table_with_cap(n, DEFAULT_ENUMERATION_CAP)
}

/// Enumerates the free inputs in ascending order with constants held at
/// their declared values.
pub fn circuit_truth_table_with_cap(n: &Netlist, cap: usize) -> Result<CircuitTable, SimError> {
    gates::check_cap(n.width(), cap)?;
    let compiled = Compiled::new(n)?;
    let free_inputs: Vec<usize> = (0..n.width())
        .filter(|&i| n.wires[i].constant_value().is_none())
        .collect();
    let garbage = (0..n.width())
        .filter(|&i| n.wires[i].is_garbage())
        .collect();
    let mut base = BitVector::zeros(n.width());
    for (i, w) in n.wires.iter().enumerate() {
        if let Some(c) = w.constant_value() {
            base.set(i, c);
        }
    }
    let rows = (0..1u64 << free_inputs.len())
        .map(|r| {
            let free = BitVector::from_index(r, free_inputs.len());
            let mut inputs = base;
            for (k, &i) in free_inputs.iter().enumerate() {
                inputs.set(i, free.get(k));
            }
            CircuitRow {
                free,
                inputs,
                outputs: compiled.apply(inputs),
            }
        })
        .collect();
    Ok(CircuitTable {
        free_inputs,
        garbage,
        rows,
    })
}

/// Exhaustive bijectivity check over the full wire space, ignoring roles.
pub fn verify_bijective(n: &Netlist) -> Result<Bijection, SimError> {
    verify_bijective_with_cap(n, DEFAULT_ENUMERATION_CAP)
}

pub fn verify_bijective_with_cap(n: &Netlist, cap: usize) -> Result<Bijection, SimError> {
    gates::check_cap(n.width(), cap)?;
    let compiled = Compiled::new(n)?;
    Ok(gates::is_bijection_with_cap(
        |x| compiled.apply(*x),
        n.width(),
        cap,
    )?)
}

/// JK characteristic equation `Q+ = J Q' + K' Q`.
pub fn jk_next_state(j: bool, k: bool, q: bool) -> bool {
    (j && !q) || (!k && q)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Topology {
    /// Every flip-flop sees the common clock.
    Synchronous,
    /// Flip-flop 0 sees the clock; flip-flop `i` is clocked by the 1→0
    /// transition of flip-flop `i - 1`.
    Ripple,
}

/// A J or K input: a constant, or the AND of some state bits (`Q_i`).
/// `And(vec![])` is constant 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Drive {
    Const(bool),
    And(Vec<usize>),
}

impl Drive {
    fn eval(&self, state: &BitVector) -> bool {
        match self {
            Drive::Const(v) => *v,
            Drive::And(bits) => bits.iter().all(|&i| state_bit(state, i)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlipFlop {
    pub j: Drive,
    pub k: Drive,
}

impl FlipFlop {
    pub fn toggle() -> Self {
        FlipFlop {
            j: Drive::Const(true),
            k: Drive::Const(true),
        }
    }
}

/// A clocked network of JK flip-flops. `flipflops[i]` drives `Q_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeqCircuit {
    pub flipflops: Vec<FlipFlop>,
    pub topology: Topology,
    pub inventory: DesignInventory,
}

impl SeqCircuit {
    pub fn width(&self) -> usize {
        self.flipflops.len()
    }

    pub fn reset_state(&self) -> BitVector {
        BitVector::zeros(self.width())
    }
}

/// `Q_i` of a state vector. State vectors are written `Q_{w-1} … Q_0`, so
/// [`BitVector::index`] is the counter value.
pub fn state_bit(state: &BitVector, i: usize) -> bool {
    state.get(state.width() - 1 - i)
}

pub fn set_state_bit(state: &mut BitVector, i: usize, value: bool) {
    let w = state.width();
    state.set(w - 1 - i, value);
}

/// Applies one active clock edge.
pub fn step(c: &SeqCircuit, state: &BitVector) -> Result<BitVector, SimError> {
    if state.width() != c.width() {
        return Err(SimError::WidthMismatch {
            expected: c.width(),
            found: state.width(),
        });
    }
    let mut next = *state;
    match c.topology {
        Topology::Synchronous => {
            for (i, ff) in c.flipflops.iter().enumerate() {
                let q = jk_next_state(ff.j.eval(state), ff.k.eval(state), state_bit(state, i));
                set_state_bit(&mut next, i, q);
            }
        }
        Topology::Ripple => {
            // Zero-delay propagation: each falling output clocks the next
            // stage within the same edge until nothing changes.
            let mut clocked = if c.width() > 0 { Some(0) } else { None };
            while let Some(i) = clocked.take() {
                let ff = &c.flipflops[i];
                let old = state_bit(&next, i);
                let new = jk_next_state(ff.j.eval(&next), ff.k.eval(&next), old);
                set_state_bit(&mut next, i, new);
                if old && !new && i + 1 < c.width() {
                    clocked = Some(i + 1);
                }
            }
        }
    }
    Ok(next)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimTrace {
    /// `states[k]` is the state after `k` edges.
    pub states: Vec<BitVector>,
}

impl SimTrace {
    pub fn edges(&self) -> usize {
        self.states.len() - 1
    }

    pub fn last(&self) -> &BitVector {
        self.states.last().expect("trace holds the initial state")
    }

    /// CSV with header `edge,q<w-1>,...,q0` and one row per state.
    pub fn to_csv(&self) -> String {
        let width = self.states[0].width();
        let mut out = String::from("edge");
        for i in (0..width).rev() {
            write!(out, ",q{i}").unwrap();
        }
        out.push('\n');
        for (edge, s) in self.states.iter().enumerate() {
            write!(out, "{edge}").unwrap();
            for b in s.iter() {
                out.push_str(if b { ",1" } else { ",0" });
            }
            out.push('\n');
        }
        out
    }
}

pub fn run(c: &SeqCircuit, initial: &BitVector, edges: usize) -> Result<SimTrace, SimError> {
    if initial.width() != c.width() {
        return Err(SimError::WidthMismatch {
            expected: c.width(),
            found: initial.width(),
        });
    }
    let mut states = Vec::with_capacity(edges + 1);
    states.push(*initial);
    let mut s = *initial;
    for _ in 0..edges {
        s = step(c, &s)?;
        states.push(s);
    }
    Ok(SimTrace { states })
}
