// SPDX-License-Identifier: Apache-2.0
//! Quantum cost, total logical calculation, garbage outputs and constant
//! inputs.
//!
//! Quantum cost is kept symbolic as a [`CostExpr`], an integer linear
//! combination of cost symbols (`4m+2n+4F`). A [`CostTable`] assigns each
//! symbol a value of some scalar type `S`. Integer tables reproduce
//! published figures, rational tables let a missing gate cost be solved for
//! exactly, and float tables accept non-integral literature values.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Display, Write as _};
use std::ops::{Add, AddAssign, Mul};
use std::str::FromStr;

use num_traits::{FromPrimitive, Num};
use thiserror::Error;

use crate::gates::{builtin_library, GateKind, GateLibrary, LogicCost};
use crate::netlist::Netlist;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricsError {
    #[error("no cost given for symbol `{0}`")]
    MissingSymbol(CostSymbol),
    #[error("sub-design `{0}` has no expansion")]
    UnresolvedDesign(CostSymbol),
    #[error("sub-design `{0}` expands into itself")]
    CyclicExpansion(CostSymbol),
    #[error("symbol `{0}` does not occur in the expression")]
    NotInExpression(CostSymbol),
    #[error("invalid cost assignment `{0}`")]
    InvalidAssignment(String),
}

/// Symbol standing for the quantum cost of a gate kind or sub-design.
///
/// Symbols order by library convention (`A`, `m`, `n`, `F`, `fr`, `nt`)
/// and then alphabetically, which fixes the term order when printing.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CostSymbol(String);

const SYMBOL_ORDER: [&str; 6] = ["A", "m", "n", "F", "fr", "nt"];

impl CostSymbol {
    pub fn new(s: impl Into<String>) -> Self {
        CostSymbol(s.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    fn rank(&self) -> usize {
        SYMBOL_ORDER
            .iter()
            .position(|s| *s == self.0)
            .unwrap_or(SYMBOL_ORDER.len())
    }
}

impl Ord for CostSymbol {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank()
            .cmp(&other.rank())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for CostSymbol {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Display for CostSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for CostSymbol {
    fn from(s: &str) -> Self {
        CostSymbol::new(s)
    }
}

/// Integer linear combination of cost symbols. Zero coefficients are never
/// stored, so structural equality is coefficient equality.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CostExpr {
    terms: BTreeMap<CostSymbol, u64>,
}

impl CostExpr {
    pub fn zero() -> Self {
        CostExpr::default()
    }

    pub fn term(symbol: impl Into<CostSymbol>, coefficient: u64) -> Self {
        let mut e = CostExpr::zero();
        e.add_term(symbol.into(), coefficient);
        e
    }

    pub fn from_terms<I, S>(terms: I) -> Self
    where
        I: IntoIterator<Item = (S, u64)>,
        S: Into<CostSymbol>,
    {
        terms
            .into_iter()
            .map(|(s, c)| CostExpr::term(s, c))
            .fold(CostExpr::zero(), Add::add)
    }

    pub fn add_term(&mut self, symbol: CostSymbol, coefficient: u64) {
        if coefficient == 0 {
            return;
        }
        *self.terms.entry(symbol).or_insert(0) += coefficient;
    }

    pub fn coefficient(&self, symbol: &CostSymbol) -> u64 {
        self.terms.get(symbol).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CostSymbol, u64)> {
        self.terms.iter().map(|(s, &c)| (s, c))
    }

    pub fn symbols(&self) -> BTreeSet<&CostSymbol> {
        self.terms.keys().collect()
    }

    /// Replaces every occurrence of `symbol` with `replacement`.
    pub fn substitute(&self, symbol: &CostSymbol, replacement: &CostExpr) -> CostExpr {
        let mut out = self.clone();
        if let Some(k) = out.terms.remove(symbol) {
            out += replacement.clone() * k;
        }
        out
    }
}

impl Add for CostExpr {
    type Output = CostExpr;

    fn add(mut self, rhs: CostExpr) -> CostExpr {
        self += rhs;
        self
    }
}

impl AddAssign for CostExpr {
    fn add_assign(&mut self, rhs: CostExpr) {
        for (s, c) in rhs.terms {
            self.add_term(s, c);
        }
    }
}

impl Mul<u64> for CostExpr {
    type Output = CostExpr;

    fn mul(self, k: u64) -> CostExpr {
        if k == 0 {
            return CostExpr::zero();
        }
        CostExpr {
            terms: self.terms.into_iter().map(|(s, c)| (s, c * k)).collect(),
        }
    }
}

/// Formats as `13m+6n+15F`; coefficients are always written.
impl Display for CostExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (s, c)) in self.terms().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            write!(f, "{c}{s}")?;
        }
        Ok(())
    }
}

/// Values for cost symbols, generic over the scalar type.
#[derive(Debug, Clone, PartialEq)]
pub struct CostTable<S> {
    values: BTreeMap<CostSymbol, S>,
}

impl<S> Default for CostTable<S> {
    fn default() -> Self {
        CostTable {
            values: BTreeMap::new(),
        }
    }
}

impl<S: Copy> CostTable<S> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, symbol: impl Into<CostSymbol>, value: S) -> Self {
        self.set(symbol, value);
        self
    }

    pub fn set(&mut self, symbol: impl Into<CostSymbol>, value: S) {
        self.values.insert(symbol.into(), value);
    }

    pub fn get(&self, symbol: &CostSymbol) -> Option<S> {
        self.values.get(symbol).copied()
    }

    pub fn remove(&mut self, symbol: &CostSymbol) -> Option<S> {
        self.values.remove(symbol)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CostSymbol, S)> {
        self.values.iter().map(|(k, &v)| (k, v))
    }

    /// Applies `sym=value` pairs separated by commas, e.g. `m=4,n=7,F=1`.
    pub fn apply_overrides(&mut self, spec: &str) -> Result<(), MetricsError>
    where
        S: FromStr,
    {
        for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (sym, value) = part
                .split_once('=')
                .ok_or_else(|| MetricsError::InvalidAssignment(part.into()))?;
            let (sym, value) = (sym.trim(), value.trim());
            if sym.is_empty() {
                return Err(MetricsError::InvalidAssignment(part.into()));
            }
            let value = value
                .parse()
                .map_err(|_| MetricsError::InvalidAssignment(part.into()))?;
            self.set(sym, value);
        }
        Ok(())
    }
}

impl<S: Copy + FromPrimitive> CostTable<S> {
    /// Published per-gate quantum costs: MUX 4, Feynman 1, Fredkin 5. The New
    /// gate gets 7, the value at which both published counter totals hold.
    /// NOT is taken as 1.
    pub fn standard() -> Self {
        let v = |x: u64| S::from_u64(x).expect("small integers are representable");
        CostTable::new()
            .with("m", v(4))
            .with("n", v(7))
            .with("F", v(1))
            .with("fr", v(5))
            .with("nt", v(1))
    }
}

impl<S: Display> Display for CostTable<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (k, v)) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{k}={v}")?;
        }
        Ok(())
    }
}

/// Substitutes `costs` into `e`.
pub fn eval_cost<S>(e: &CostExpr, costs: &CostTable<S>) -> Result<S, MetricsError>
where
    S: Num + Copy + FromPrimitive,
{
    e.terms().try_fold(S::zero(), |acc, (sym, k)| {
        let v = costs
            .get(sym)
            .ok_or_else(|| MetricsError::MissingSymbol(sym.clone()))?;
        Ok(acc + scalar::<S>(k) * v)
    })
}

/// Solves `eval_cost(e) = target` for `unknown`, with every other symbol
/// taken from `known`. Use an exact scalar (e.g. a rational) to avoid
/// rounding.
pub fn solve_for<S>(
    e: &CostExpr,
    known: &CostTable<S>,
    unknown: &CostSymbol,
    target: S,
) -> Result<S, MetricsError>
where
    S: Num + Copy + FromPrimitive,
{
    let k = e.coefficient(unknown);
    if k == 0 {
        return Err(MetricsError::NotInExpression(unknown.clone()));
    }
    let mut rest = e.clone();
    rest.terms.remove(unknown);
    let rest = eval_cost(&rest, known)?;
    Ok((target - rest) / scalar::<S>(k))
}

fn scalar<S: FromPrimitive>(k: u64) -> S {
    S::from_u64(k).expect("coefficient not representable in the cost scalar")
}

/// An entry in a design inventory: a library gate or a named sub-design.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Component {
    Gate(GateKind),
    Design(CostSymbol),
}

impl Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Component::Gate(g) => write!(f, "{g}"),
            Component::Design(s) => write!(f, "{s}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InventorySource {
    /// Counted from a netlist or circuit.
    Structural,
    /// Taken from a published gate count.
    Declared { citation: String },
    /// Generalized from a declared inventory to another size.
    Extrapolated { note: String },
}

impl Display for InventorySource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InventorySource::Structural => f.write_str("structural"),
            InventorySource::Declared { citation } => write!(f, "declared ({citation})"),
            InventorySource::Extrapolated { note } => write!(f, "extrapolated ({note})"),
        }
    }
}

/// Gate and sub-design counts of a design.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DesignInventory {
    pub name: String,
    /// Symbol under which other inventories refer to this design.
    pub symbol: Option<CostSymbol>,
    pub counts: BTreeMap<Component, u64>,
    pub source: InventorySource,
}

impl DesignInventory {
    pub fn structural(name: impl Into<String>) -> Self {
        DesignInventory {
            name: name.into(),
            symbol: None,
            counts: BTreeMap::new(),
            source: InventorySource::Structural,
        }
    }

    pub fn declared(name: impl Into<String>, citation: impl Into<String>) -> Self {
        DesignInventory {
            source: InventorySource::Declared {
                citation: citation.into(),
            },
            ..Self::structural(name)
        }
    }

    pub fn from_netlist(name: impl Into<String>, n: &Netlist) -> Self {
        let mut inv = Self::structural(name);
        for s in &n.stages {
            inv.add(Component::Gate(s.gate), 1);
        }
        inv
    }

    pub fn with_symbol(mut self, symbol: impl Into<CostSymbol>) -> Self {
        self.symbol = Some(symbol.into());
        self
    }

    pub fn with(mut self, component: Component, count: u64) -> Self {
        self.add(component, count);
        self
    }

    pub fn gate(self, kind: GateKind, count: u64) -> Self {
        self.with(Component::Gate(kind), count)
    }

    pub fn add(&mut self, component: Component, count: u64) {
        if count > 0 {
            *self.counts.entry(component).or_insert(0) += count;
        }
    }

    pub fn count(&self, component: &Component) -> u64 {
        self.counts.get(component).copied().unwrap_or(0)
    }

    /// Quantum cost with sub-designs left as their own symbols (`3A+1m+3F`).
    pub fn unexpanded_cost(&self) -> CostExpr {
        self.counts
            .iter()
            .map(|(c, &k)| {
                let sym = match c {
                    Component::Gate(g) => g.cost_symbol(),
                    Component::Design(s) => s.clone(),
                };
                CostExpr::term(sym, k)
            })
            .fold(CostExpr::zero(), Add::add)
    }
}

impl Display for DesignInventory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .counts
            .iter()
            .map(|(c, k)| format!("{c} x{k}"))
            .collect();
        f.write_str(&parts.join(", "))
    }
}

/// Sub-design inventories keyed by their symbol.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Expansions {
    designs: BTreeMap<CostSymbol, DesignInventory>,
}

impl Expansions {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registers `inv` under its symbol. Panics if it has none.
    pub fn with(mut self, inv: DesignInventory) -> Self {
        let sym = inv.symbol.clone().expect("sub-design needs a cost symbol");
        self.designs.insert(sym, inv);
        self
    }

    pub fn get(&self, symbol: &CostSymbol) -> Option<&DesignInventory> {
        self.designs.get(symbol)
    }
}

fn fold_inventory<T, G>(
    inv: &DesignInventory,
    exp: &Expansions,
    gate_value: &G,
    stack: &mut Vec<CostSymbol>,
) -> Result<T, MetricsError>
where
    T: Add<Output = T> + Mul<u64, Output = T> + Default,
    G: Fn(GateKind) -> T,
{
    let mut total = T::default();
    for (c, &k) in &inv.counts {
        let value = match c {
            Component::Gate(g) => gate_value(*g),
            Component::Design(sym) => {
                if stack.contains(sym) {
                    return Err(MetricsError::CyclicExpansion(sym.clone()));
                }
                let sub = exp
                    .get(sym)
                    .ok_or_else(|| MetricsError::UnresolvedDesign(sym.clone()))?;
                stack.push(sym.clone());
                let v = fold_inventory(sub, exp, gate_value, stack)?;
                stack.pop();
                v
            }
        };
        total = total + value * k;
    }
    Ok(total)
}

/// Quantum cost over gate symbols, with sub-designs expanded recursively.
pub fn quantum_cost(inv: &DesignInventory, exp: &Expansions) -> Result<CostExpr, MetricsError> {
    let mut stack: Vec<CostSymbol> = inv.symbol.iter().cloned().collect();
    fold_inventory(
        inv,
        exp,
        &|g: GateKind| CostExpr::term(g.cost_symbol(), 1),
        &mut stack,
    )
}

/// Total logical calculation using the built-in logic costs.
pub fn total_logic_calc(
    inv: &DesignInventory,
    exp: &Expansions,
) -> Result<LogicCost, MetricsError> {
    total_logic_calc_with(inv, exp, &builtin_library())
}

pub fn total_logic_calc_with(
    inv: &DesignInventory,
    exp: &Expansions,
    lib: &GateLibrary,
) -> Result<LogicCost, MetricsError> {
    let mut stack: Vec<CostSymbol> = inv.symbol.iter().cloned().collect();
    fold_inventory(inv, exp, &|g| lib.get(g).logic_cost, &mut stack)
}

/// Number of outputs declared garbage.
pub fn garbage_count(n: &Netlist) -> usize {
    n.wires.iter().filter(|w| w.is_garbage()).count()
}

/// Number of inputs held at a constant.
pub fn constant_input_count(n: &Netlist) -> usize {
    n.wires
        .iter()
        .filter(|w| w.constant_value().is_some())
        .count()
}

pub fn netlist_quantum_cost(n: &Netlist) -> CostExpr {
    quantum_cost(
        &DesignInventory::from_netlist("netlist", n),
        &Expansions::new(),
    )
    .expect("netlists contain only library gates")
}

pub fn netlist_logic_calc(n: &Netlist) -> LogicCost {
    total_logic_calc(
        &DesignInventory::from_netlist("netlist", n),
        &Expansions::new(),
    )
    .expect("netlists contain only library gates")
}

#[derive(Debug, Clone, PartialEq)]
pub enum QuantumCostEntry<S> {
    Expr(CostExpr),
    Literal(S),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    Computed,
    Literature { citation: String },
}

impl Provenance {
    pub fn tag(&self) -> &'static str {
        match self {
            Provenance::Computed => "computed",
            Provenance::Literature { .. } => "literature",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportEntry<S> {
    pub name: String,
    pub quantum: QuantumCostEntry<S>,
    pub logic: LogicCost,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow<S> {
    pub name: String,
    pub quantum_cost: S,
    pub logic: LogicCost,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report<S> {
    pub rows: Vec<ReportRow<S>>,
}

/// Evaluates each entry's quantum cost under `costs`; literal rows pass
/// through unchanged.
pub fn compare_report<S>(
    entries: &[ReportEntry<S>],
    costs: &CostTable<S>,
) -> Result<Report<S>, MetricsError>
where
    S: Num + Copy + FromPrimitive,
{
    let rows = entries
        .iter()
        .map(|e| {
            let quantum_cost = match &e.quantum {
                QuantumCostEntry::Expr(expr) => eval_cost(expr, costs)?,
                QuantumCostEntry::Literal(v) => *v,
            };
            Ok(ReportRow {
                name: e.name.clone(),
                quantum_cost,
                logic: e.logic,
                provenance: e.provenance.clone(),
            })
        })
        .collect::<Result<_, MetricsError>>()?;
    Ok(Report { rows })
}

impl<S: Display> Report<S> {
    /// Aligned plain-text table.
    pub fn to_text(&self) -> String {
        let header = [
            "design",
            "quantum cost",
            "logical calculation",
            "provenance",
        ];
        let cells: Vec<[String; 4]> = self
            .rows
            .iter()
            .map(|r| {
                let provenance = match &r.provenance {
                    Provenance::Computed => "computed".to_string(),
                    Provenance::Literature { citation } => format!("literature: {citation}"),
                };
                [
                    r.name.clone(),
                    r.quantum_cost.to_string(),
                    r.logic.to_string(),
                    provenance,
                ]
            })
            .collect();
        let mut widths = header.map(|h| h.chars().count());
        for row in &cells {
            for (w, c) in widths.iter_mut().zip(row) {
                *w = (*w).max(c.chars().count());
            }
        }
        let mut out = String::new();
        let mut line = |cols: &[String]| {
            let padded: Vec<String> = cols
                .iter()
                .zip(widths)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect();
            writeln!(out, "{}", padded.join("  ").trim_end()).unwrap();
        };
        line(&header.map(String::from));
        line(&widths.map(|w| "-".repeat(w)));
        for row in &cells {
            line(row);
        }
        out
    }

    /// CSV with header `name,quantum_cost,alpha,beta,delta,provenance`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("name,quantum_cost,alpha,beta,delta,provenance\n");
        for r in &self.rows {
            let (a, b, d) = r.logic.as_tuple();
            writeln!(
                out,
                "{},{},{a},{b},{d},{}",
                r.name,
                r.quantum_cost,
                r.provenance.tag()
            )
            .unwrap();
        }
        out
    }
}
