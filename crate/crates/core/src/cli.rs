// SPDX-License-Identifier: Apache-2.0
//! The `revseq` command-line front end.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::bits::{BitVector, BitsError};
use crate::designs::{self, DesignError, DesignName};
use crate::gates::{builtin_library, truth_table, GateError, GateKind};
use crate::metrics::{
    compare_report, constant_input_count, eval_cost, garbage_count, netlist_logic_calc,
    netlist_quantum_cost, total_logic_calc, CostTable, MetricsError,
};
use crate::netlist::{parse_netlist, validate, ParseError};
use crate::sim::{self, SimError};

#[derive(Parser, Debug)]
#[command(
    name = "revseq",
    version,
    about = "Reversible gate library, netlist checks, counter simulation and cost metrics"
)]
struct Cli {
    /// Override gate quantum costs, e.g. `m=4,n=7,F=1`.
    #[arg(long, global = true, value_name = "SYM=VAL,...")]
    cost: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the gate library with costs.
    Gates,
    /// Print a gate's truth table.
    Table { gate: String },
    /// Parse, validate and check a netlist for bijectivity.
    Verify { file: PathBuf },
    /// Evaluate a netlist on one input vector (one bit per wire).
    Sim {
        file: PathBuf,
        #[arg(long)]
        inputs: String,
    },
    /// Print a netlist's truth table over its free inputs.
    Truth { file: PathBuf },
    /// Simulate a counter.
    Counter {
        #[arg(long = "type", value_enum)]
        kind: CounterKind,
        #[arg(long, default_value_t = 3)]
        bits: usize,
        #[arg(long, default_value_t = 8)]
        edges: usize,
        /// Initial state, written Q_{N-1} … Q_0.
        #[arg(long)]
        init: Option<String>,
        /// Write the trace as CSV.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Cost analysis of a design (jk, sync<N>, async<N>) or a netlist file.
    Analyze { design: String },
    /// Print the counter comparison table.
    Compare {
        #[arg(long)]
        csv: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CounterKind {
    Sync,
    Async,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{}:{source}", path.display())]
    Parse { path: PathBuf, source: ParseError },
    #[error("{0}")]
    Message(String),
    #[error(transparent)]
    Bits(#[from] BitsError),
    #[error(transparent)]
    Gate(#[from] GateError),
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error(transparent)]
    Metrics(#[from] MetricsError),
    #[error(transparent)]
    Design(#[from] DesignError),
    #[error("output: {0}")]
    Output(#[from] std::io::Error),
}

/// Runs the CLI with `args` (including the program name) and returns the
/// exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn costs(cli: &Cli) -> Result<CostTable<u64>, CliError> {
    let mut table = CostTable::standard();
    if let Some(spec) = &cli.cost {
        table.apply_overrides(spec)?;
    }
    Ok(table)
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn load(path: &Path) -> Result<crate::netlist::Netlist, CliError> {
    parse_netlist(&read(path)?).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

fn spaced(v: &BitVector) -> String {
    v.iter()
        .map(|b| if b { "1" } else { "0" })
        .collect::<Vec<_>>()
        .join(" ")
}

const IN_NAMES: [&str; 3] = ["A", "B", "C"];
const OUT_NAMES: [&str; 3] = ["P", "Q", "R"];

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    match &cli.command {
        Command::Gates => {
            let costs = costs(cli)?;
            writeln!(
                out,
                "{:<5} {:<8} {:<5} {:<6} {:<4} logic",
                "gate", "name", "arity", "symbol", "qc"
            )?;
            for g in builtin_library().iter() {
                let qc = costs
                    .get(&g.quantum_cost_symbol)
                    .map_or_else(|| "?".to_string(), |v| v.to_string());
                writeln!(
                    out,
                    "{:<5} {:<8} {:<5} {:<6} {:<4} {}",
                    g.kind.mnemonic(),
                    g.name,
                    g.arity,
                    g.quantum_cost_symbol.to_string(),
                    qc,
                    g.logic_cost
                )?;
            }
        }
        Command::Table { gate } => {
            let kind: GateKind = gate.parse()?;
            let def = builtin_library().get(kind).clone();
            let a = def.arity;
            writeln!(
                out,
                "{} | {}",
                IN_NAMES[..a].join(" "),
                OUT_NAMES[..a].join(" ")
            )?;
            for row in truth_table(&def)? {
                writeln!(out, "{} | {}", spaced(&row.input), spaced(&row.output))?;
            }
        }
        Command::Verify { file } => {
            let n = load(file)?;
            writeln!(
                out,
                "parsed: {} wires, {} stages",
                n.width(),
                n.stages.len()
            )?;
            if let Err(violations) = validate(&n) {
                writeln!(out, "valid: no")?;
                for v in violations {
                    writeln!(out, "  {v}")?;
                }
                return Ok(1);
            }
            writeln!(out, "valid: yes")?;
            match sim::verify_bijective(&n)? {
                crate::gates::Bijection::Bijective => writeln!(out, "bijective: yes")?,
                crate::gates::Bijection::Collision {
                    first,
                    second,
                    image,
                } => {
                    writeln!(
                        out,
                        "bijective: no ({first} and {second} both map to {image})"
                    )?;
                    return Ok(1);
                }
            }
        }
        Command::Sim { file, inputs } => {
            let n = load(file)?;
            let inputs: BitVector = inputs.parse()?;
            writeln!(out, "{}", sim::eval_combinational(&n, &inputs)?)?;
        }
        Command::Truth { file } => {
            let n = load(file)?;
            let table = sim::circuit_truth_table(&n)?;
            let ins: Vec<&str> = table
                .free_inputs
                .iter()
                .map(|&i| n.wires[i].name.as_str())
                .collect();
            let outs: Vec<String> = n
                .wires
                .iter()
                .map(|w| {
                    if w.is_garbage() {
                        format!("{}*", w.name)
                    } else {
                        w.name.clone()
                    }
                })
                .collect();
            writeln!(out, "{} | {}", ins.join(" "), outs.join(" "))?;
            for row in &table.rows {
                writeln!(out, "{} | {}", spaced(&row.free), spaced(&row.outputs))?;
            }
        }
        Command::Counter {
            kind,
            bits,
            edges,
            init,
            trace,
        } => {
            let circuit = match kind {
                CounterKind::Sync => designs::build_sync_counter(*bits)?,
                CounterKind::Async => designs::build_async_counter(*bits)?,
            };
            let initial = match init {
                Some(s) => s.parse::<BitVector>()?,
                None => circuit.reset_state(),
            };
            let t = sim::run(&circuit, &initial, *edges)?;
            writeln!(out, "edge state")?;
            for (k, s) in t.states.iter().enumerate() {
                writeln!(out, "{k} {s}")?;
            }
            if let Some(path) = trace {
                fs::write(path, t.to_csv()).map_err(|source| CliError::Io {
                    path: path.clone(),
                    source,
                })?;
            }
        }
        Command::Analyze { design } => {
            let costs = costs(cli)?;
            match design.parse::<DesignName>() {
                Ok(name) => {
                    let inv = name.inventory()?;
                    let expanded = designs::design_quantum_cost(&inv)?;
                    let unexpanded = inv.unexpanded_cost();
                    writeln!(out, "design: {name}")?;
                    writeln!(out, "inventory: {inv}")?;
                    writeln!(out, "source: {}", inv.source)?;
                    if unexpanded != expanded {
                        writeln!(out, "QC = {unexpanded}")?;
                    }
                    writeln!(out, "QC = {expanded} = {}", eval_cost(&expanded, &costs)?)?;
                    writeln!(
                        out,
                        "T = {}",
                        total_logic_calc(&inv, &designs::expansions())?
                    )?;
                }
                Err(DesignError::UnknownDesign(_)) if Path::new(design).exists() => {
                    let n = load(Path::new(design))?;
                    if let Err(v) = validate(&n) {
                        return Err(CliError::Message(format!(
                            "invalid netlist: {}",
                            v.iter()
                                .map(ToString::to_string)
                                .collect::<Vec<_>>()
                                .join("; ")
                        )));
                    }
                    let qc = netlist_quantum_cost(&n);
                    writeln!(out, "netlist: {design}")?;
                    writeln!(out, "QC = {qc} = {}", eval_cost(&qc, &costs)?)?;
                    writeln!(out, "T = {}", netlist_logic_calc(&n))?;
                    writeln!(out, "garbage outputs: {}", garbage_count(&n))?;
                    writeln!(out, "constant inputs: {}", constant_input_count(&n))?;
                }
                Err(e) => return Err(e.into()),
            }
        }
        Command::Compare { csv } => {
            let report = compare_report(&designs::comparison_entries()?, &costs(cli)?)?;
            if *csv {
                out.write_all(report.to_csv().as_bytes())?;
            } else {
                out.write_all(report.to_text().as_bytes())?;
            }
        }
    }
    Ok(0)
}
