// SPDX-License-Identifier: Apache-2.0
//! The built-in reversible gate library.
//!
//! Every gate is a bijection on `arity`-wide bit vectors. Inputs are named
//! `A, B, C` and outputs `P, Q, R`, leftmost first:
//!
//! | gate    | mnemonic | outputs                                  |
//! |---------|----------|------------------------------------------|
//! | NOT     | `not`    | `P = A'`                                 |
//! | Feynman | `f2`     | `P = A`, `Q = A ^ B`                     |
//! | Fredkin | `f3`     | `P = A`, `Q = A'B ^ AC`, `R = A'C ^ AB`  |
//! | MUX     | `mux`    | `P = A`, `Q = A ^ B ^ C`, `R = A'C ^ AB` |
//! | New     | `ng`     | `P = A`, `Q = AB ^ C`, `R = A'C' ^ B'`   |

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul};
use std::str::FromStr;

use thiserror::Error;

use crate::bits::BitVector;
use crate::metrics::CostSymbol;

/// Default limit on exhaustive enumeration: at most `2^20` rows.
pub const DEFAULT_ENUMERATION_CAP: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GateError {
    #[error("width mismatch: expected {expected} bits, got {found}")]
    WidthMismatch { expected: usize, found: usize },
    #[error("enumerating {width} bits exceeds the cap of {cap} bits")]
    EnumerationLimit { width: usize, cap: usize },
    #[error("unknown gate mnemonic `{0}`")]
    UnknownMnemonic(String),
}

/// Counts of two-input XOR (`α`), two-input AND (`β`) and NOT (`δ`)
/// operations in a gate's output expressions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct LogicCost {
    pub xor_count: u64,
    pub and_count: u64,
    pub not_count: u64,
}

impl LogicCost {
    pub const ZERO: LogicCost = LogicCost::new(0, 0, 0);

    pub const fn new(xor_count: u64, and_count: u64, not_count: u64) -> Self {
        LogicCost {
            xor_count,
            and_count,
            not_count,
        }
    }

    pub fn as_tuple(&self) -> (u64, u64, u64) {
        (self.xor_count, self.and_count, self.not_count)
    }
}

impl Add for LogicCost {
    type Output = LogicCost;

    fn add(self, rhs: LogicCost) -> LogicCost {
        LogicCost::new(
            self.xor_count + rhs.xor_count,
            self.and_count + rhs.and_count,
            self.not_count + rhs.not_count,
        )
    }
}

impl AddAssign for LogicCost {
    fn add_assign(&mut self, rhs: LogicCost) {
        *self = *self + rhs;
    }
}

impl Mul<u64> for LogicCost {
    type Output = LogicCost;

    fn mul(self, k: u64) -> LogicCost {
        LogicCost::new(self.xor_count * k, self.and_count * k, self.not_count * k)
    }
}

impl Sum for LogicCost {
    fn sum<I: Iterator<Item = LogicCost>>(iter: I) -> LogicCost {
        iter.fold(LogicCost::ZERO, Add::add)
    }
}

/// Formats as `Xα + Yβ + Zδ`.
impl fmt::Display for LogicCost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}α + {}β + {}δ",
            self.xor_count, self.and_count, self.not_count
        )
    }
}

/// The kinds of gate in the built-in library.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GateKind {
    Not,
    Feynman,
    Fredkin,
    Mux,
    New,
}

impl GateKind {
    pub const ALL: [GateKind; 5] = [
        GateKind::Not,
        GateKind::Feynman,
        GateKind::Fredkin,
        GateKind::Mux,
        GateKind::New,
    ];

    pub fn mnemonic(self) -> &'static str {
        match self {
            GateKind::Not => "not",
            GateKind::Feynman => "f2",
            GateKind::Fredkin => "f3",
            GateKind::Mux => "mux",
            GateKind::New => "ng",
        }
    }

    pub fn from_mnemonic(s: &str) -> Option<GateKind> {
        GateKind::ALL
            .into_iter()
            .find(|k| k.mnemonic().eq_ignore_ascii_case(s))
    }

    pub fn arity(self) -> usize {
        match self {
            GateKind::Not => 1,
            GateKind::Feynman => 2,
            GateKind::Fredkin | GateKind::Mux | GateKind::New => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GateKind::Not => "NOT",
            GateKind::Feynman => "FEYNMAN",
            GateKind::Fredkin => "FREDKIN",
            GateKind::Mux => "MUX",
            GateKind::New => "NEW",
        }
    }

    /// Symbol standing for this gate's quantum cost in cost expressions.
    pub fn cost_symbol(self) -> CostSymbol {
        CostSymbol::new(match self {
            GateKind::Not => "nt",
            GateKind::Feynman => "F",
            GateKind::Fredkin => "fr",
            GateKind::Mux => "m",
            GateKind::New => "n",
        })
    }

    pub fn default_logic_cost(self) -> LogicCost {
        match self {
            GateKind::Not => LogicCost::new(0, 0, 1),
            GateKind::Feynman => LogicCost::new(1, 0, 0),
            GateKind::Fredkin => LogicCost::new(2, 4, 2),
            GateKind::Mux => LogicCost::new(3, 2, 1),
            GateKind::New => LogicCost::new(2, 2, 3),
        }
    }

    /// Applies the gate to a packed row (bit `arity-1` is input `A`).
    pub(crate) fn apply_row(self, row: u64) -> u64 {
        match self {
            GateKind::Not => !row & 1,
            GateKind::Feynman => {
                let (a, b) = ((row >> 1) & 1, row & 1);
                (a << 1) | (a ^ b)
            }
            _ => {
                let (a, b, c) = ((row >> 2) & 1, (row >> 1) & 1, row & 1);
                let na = a ^ 1;
                let (q, r) = match self {
                    GateKind::Fredkin => ((na & b) ^ (a & c), (na & c) ^ (a & b)),
                    GateKind::Mux => (a ^ b ^ c, (na & c) ^ (a & b)),
                    GateKind::New => ((a & b) ^ c, (na & (c ^ 1)) ^ (b ^ 1)),
                    _ => unreachable!(),
                };
                (a << 2) | (q << 1) | r
            }
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.mnemonic())
    }
}

impl FromStr for GateKind {
    type Err = GateError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GateKind::from_mnemonic(s).ok_or_else(|| GateError::UnknownMnemonic(s.to_string()))
    }
}

/// A reversible gate with its cost metadata.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GateDef {
    pub kind: GateKind,
    pub name: &'static str,
    pub arity: usize,
    pub quantum_cost_symbol: CostSymbol,
    pub logic_cost: LogicCost,
}

impl GateDef {
    pub fn new(kind: GateKind) -> Self {
        GateDef {
            kind,
            name: kind.name(),
            arity: kind.arity(),
            quantum_cost_symbol: kind.cost_symbol(),
            logic_cost: kind.default_logic_cost(),
        }
    }

    pub fn eval(&self, inputs: &BitVector) -> Result<BitVector, GateError> {
        self.check_width(inputs)?;
        Ok(BitVector::from_index(
            self.kind.apply_row(inputs.index()),
            self.arity,
        ))
    }

    /// Recovers the input that produces `outputs`.
    pub fn invert(&self, outputs: &BitVector) -> Result<BitVector, GateError> {
        self.check_width(outputs)?;
        let row = (0..1u64 << self.arity)
            .find(|&r| self.kind.apply_row(r) == outputs.index())
            .expect("built-in gates are bijective");
        Ok(BitVector::from_index(row, self.arity))
    }

    pub fn truth_table(&self) -> Vec<TruthRow> {
        (0..1u64 << self.arity)
            .map(|r| TruthRow {
                input: BitVector::from_index(r, self.arity),
                output: BitVector::from_index(self.kind.apply_row(r), self.arity),
            })
            .collect()
    }

    /// Whether applying the gate twice is the identity.
    pub fn is_self_inverse(&self) -> bool {
        (0..1u64 << self.arity).all(|r| self.kind.apply_row(self.kind.apply_row(r)) == r)
    }

    fn check_width(&self, v: &BitVector) -> Result<(), GateError> {
        if v.width() != self.arity {
            return Err(GateError::WidthMismatch {
                expected: self.arity,
                found: v.width(),
            });
        }
        Ok(())
    }
}

/// A set of gate definitions keyed by [`GateKind`].
///
/// The built-in library can be adjusted, e.g. to count a gate's logic
/// operations differently.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GateLibrary {
    gates: Vec<GateDef>,
}

impl GateLibrary {
    pub fn get(&self, kind: GateKind) -> &GateDef {
        self.gates
            .iter()
            .find(|g| g.kind == kind)
            .expect("library covers every gate kind")
    }

    pub fn by_mnemonic(&self, mnemonic: &str) -> Option<&GateDef> {
        GateKind::from_mnemonic(mnemonic).map(|k| self.get(k))
    }

    pub fn iter(&self) -> impl Iterator<Item = &GateDef> {
        self.gates.iter()
    }

    pub fn with_logic_cost(mut self, kind: GateKind, cost: LogicCost) -> Self {
        if let Some(g) = self.gates.iter_mut().find(|g| g.kind == kind) {
            g.logic_cost = cost;
        }
        self
    }
}

impl Default for GateLibrary {
    fn default() -> Self {
        builtin_library()
    }
}

pub fn builtin_library() -> GateLibrary {
    GateLibrary {
        gates: GateKind::ALL.into_iter().map(GateDef::new).collect(),
    }
}

pub fn eval_gate(gate: &GateDef, inputs: &BitVector) -> Result<BitVector, GateError> {
    gate.eval(inputs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TruthRow {
    pub input: BitVector,
    pub output: BitVector,
}

/// Truth table in ascending input order; row `i` has input `i`.
pub fn truth_table(gate: &GateDef) -> Result<Vec<TruthRow>, GateError> {
    check_cap(gate.arity, DEFAULT_ENUMERATION_CAP)?;
    Ok(gate.truth_table())
}

/// Outcome of an exhaustive bijectivity check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bijection {
    Bijective,
    /// Two distinct inputs with the same image.
    Collision {
        first: BitVector,
        second: BitVector,
        image: BitVector,
    },
}

impl Bijection {
    pub fn is_bijective(&self) -> bool {
        matches!(self, Bijection::Bijective)
    }
}

pub fn is_bijection<F>(f: F, width: usize) -> Result<Bijection, GateError>
where
    F: Fn(&BitVector) -> BitVector,
{
    is_bijection_with_cap(f, width, DEFAULT_ENUMERATION_CAP)
}

/// Enumerates all `2^width` inputs of `f` and reports the first collision.
pub fn is_bijection_with_cap<F>(f: F, width: usize, cap: usize) -> Result<Bijection, GateError>
where
    F: Fn(&BitVector) -> BitVector,
{
    check_cap(width, cap)?;
    const UNSEEN: u64 = u64::MAX;
    let mut preimage = vec![UNSEEN; 1usize << width];
    for row in 0..1u64 << width {
        let input = BitVector::from_index(row, width);
        let image = f(&input);
        if image.width() != width {
            return Err(GateError::WidthMismatch {
                expected: width,
                found: image.width(),
            });
        }
        let slot = &mut preimage[image.index() as usize];
        if *slot != UNSEEN {
            return Ok(Bijection::Collision {
                first: BitVector::from_index(*slot, width),
                second: input,
                image,
            });
        }
        *slot = row;
    }
    Ok(Bijection::Bijective)
}

pub(crate) fn check_cap(width: usize, cap: usize) -> Result<(), GateError> {
    if width > cap {
        return Err(GateError::EnumerationLimit { width, cap });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bv(s: &str) -> BitVector {
        s.parse().unwrap()
    }

    fn gate(kind: GateKind) -> GateDef {
        builtin_library().get(kind).clone()
    }

    #[test]
    fn library_contents() {
        let lib = builtin_library();
        assert_eq!(lib.iter().count(), 5);
        assert_eq!(lib.get(GateKind::Mux).logic_cost, LogicCost::new(3, 2, 1));
        assert_eq!(lib.get(GateKind::New).logic_cost, LogicCost::new(2, 2, 3));
        assert_eq!(lib.get(GateKind::Feynman).arity, 2);
        assert_eq!(
            lib.get(GateKind::Fredkin).logic_cost,
            LogicCost::new(2, 4, 2)
        );
        assert_eq!(lib.get(GateKind::Not).logic_cost, LogicCost::new(0, 0, 1));
        assert!(lib.iter().all(|g| g.arity <= 3));
        assert_eq!(
            lib.get(GateKind::Mux).quantum_cost_symbol,
            CostSymbol::new("m")
        );
        assert_eq!(
            lib.get(GateKind::New).quantum_cost_symbol,
            CostSymbol::new("n")
        );
        assert_eq!(
            lib.get(GateKind::Feynman).quantum_cost_symbol,
            CostSymbol::new("F")
        );
    }

    #[test]
    fn mnemonics_are_case_insensitive() {
        assert_eq!("MUX".parse::<GateKind>().unwrap(), GateKind::Mux);
        assert_eq!("Ng".parse::<GateKind>().unwrap(), GateKind::New);
        assert_eq!("F3".parse::<GateKind>().unwrap(), GateKind::Fredkin);
        assert!(matches!(
            "t3".parse::<GateKind>(),
            Err(GateError::UnknownMnemonic(_))
        ));
    }

    #[test]
    fn eval_examples() {
        assert_eq!(gate(GateKind::Mux).eval(&bv("101")).unwrap(), bv("100"));
        assert_eq!(gate(GateKind::Feynman).eval(&bv("11")).unwrap(), bv("10"));
        assert_eq!(gate(GateKind::Fredkin).eval(&bv("101")).unwrap(), bv("110"));
        assert_eq!(gate(GateKind::New).eval(&bv("110")).unwrap(), bv("110"));
        assert_eq!(gate(GateKind::Not).eval(&bv("0")).unwrap(), bv("1"));
    }

    #[test]
    fn width_mismatch_rejected() {
        assert_eq!(
            gate(GateKind::Mux).eval(&bv("10")),
            Err(GateError::WidthMismatch {
                expected: 3,
                found: 2
            })
        );
    }

    #[test]
    fn new_gate_hand_evaluated_table() {
        // P=A, Q=AB^C, R=A'C'^B', evaluated by hand.
        let expected = ["000", "011", "001", "010", "101", "111", "110", "100"];
        let table = truth_table(&gate(GateKind::New)).unwrap();
        for (row, want) in table.iter().zip(expected) {
            assert_eq!(row.output, bv(want), "input {}", row.input);
        }
    }

    #[test]
    fn not_truth_table() {
        let t = truth_table(&gate(GateKind::Not)).unwrap();
        assert_eq!(
            t,
            vec![
                TruthRow {
                    input: bv("0"),
                    output: bv("1")
                },
                TruthRow {
                    input: bv("1"),
                    output: bv("0")
                },
            ]
        );
    }

    #[test]
    fn every_builtin_gate_is_bijective() {
        for g in builtin_library().iter() {
            let check = is_bijection(|x| g.eval(x).unwrap(), g.arity).unwrap();
            assert!(check.is_bijective(), "{}", g.name);
        }
    }

    #[test]
    fn collision_witness() {
        let and_like =
            |x: &BitVector| BitVector::from_bits(&[x.get(0), x.get(0) && x.get(1)]).unwrap();
        assert_eq!(
            is_bijection(and_like, 2).unwrap(),
            Bijection::Collision {
                first: bv("00"),
                second: bv("01"),
                image: bv("00"),
            }
        );
        assert!(is_bijection(|x| *x, 3).unwrap().is_bijective());
    }

    #[test]
    fn enumeration_cap() {
        assert_eq!(
            is_bijection(|x| *x, 21),
            Err(GateError::EnumerationLimit { width: 21, cap: 20 })
        );
        assert!(is_bijection_with_cap(|x| *x, 4, 3).is_err());
    }

    #[test]
    fn first_line_passes_through() {
        for kind in [
            GateKind::Fredkin,
            GateKind::Mux,
            GateKind::New,
            GateKind::Feynman,
        ] {
            for row in gate(kind).truth_table() {
                assert_eq!(row.output.get(0), row.input.get(0), "{kind}");
            }
        }
    }

    #[test]
    fn feynman_copies_with_zero_target() {
        let g = gate(GateKind::Feynman);
        assert_eq!(g.eval(&bv("00")).unwrap(), bv("00"));
        assert_eq!(g.eval(&bv("10")).unwrap(), bv("11"));
    }

    #[test]
    fn fredkin_is_controlled_swap() {
        let g = gate(GateKind::Fredkin);
        for row in g.truth_table() {
            let (a, b, c) = (row.input.get(0), row.input.get(1), row.input.get(2));
            let (q, r) = if a { (c, b) } else { (b, c) };
            assert_eq!((row.output.get(1), row.output.get(2)), (q, r));
        }
    }

    #[test]
    fn inverses_round_trip() {
        for g in builtin_library().iter() {
            let self_inverse = matches!(
                g.kind,
                GateKind::Not | GateKind::Feynman | GateKind::Fredkin
            );
            assert_eq!(g.is_self_inverse(), self_inverse, "{}", g.name);
            for row in g.truth_table() {
                assert_eq!(g.invert(&row.output).unwrap(), row.input);
            }
        }
    }

    #[test]
    fn logic_cost_algebra() {
        let a = LogicCost::new(1, 2, 3);
        let b = LogicCost::new(4, 0, 1);
        assert_eq!(a + b, b + a);
        assert_eq!(a + LogicCost::ZERO, a);
        assert_eq!(a * 3, a + a + a);
        assert_eq!(LogicCost::new(66, 38, 31).to_string(), "66α + 38β + 31δ");
    }

    #[test]
    fn configurable_logic_cost() {
        let lib = builtin_library().with_logic_cost(GateKind::Fredkin, LogicCost::new(2, 4, 1));
        assert_eq!(
            lib.get(GateKind::Fredkin).logic_cost,
            LogicCost::new(2, 4, 1)
        );
    }
}
