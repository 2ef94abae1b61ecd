// SPDX-License-Identifier: Apache-2.0
//! Gate cascades over named wires, and their text format.
//!
//! Gates act in place on the wires they are bound to, so a netlist is a
//! sequence of permutations of the wire space. Fan-out and feedback cannot
//! be expressed; copying a value needs an explicit Feynman stage with a
//! constant-0 target.
//!
//! The text format is line oriented:
//!
//! ```text
//! # comment
//! .variables a b c
//! .inputs a b c        # optional labels, one per variable
//! .outputs p q r       # optional labels, one per variable
//! .constants --0       # '-' primary, '0'/'1' constant input
//! .garbage 11-         # '-' primary, '1' garbage output
//! .begin
//! f2 a c
//! mux a b c
//! .end
//! ```

use std::collections::{HashMap, HashSet};
use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::gates::GateKind;

/// Role of a wire at the circuit boundary.
///
/// `Constant` is meaningful only on the input side and `Garbage` only on
/// the output side; [`validate`] reports any other placement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum WireRole {
    #[default]
    Primary,
    Constant(bool),
    Garbage,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Wire {
    pub name: String,
    pub input_role: WireRole,
    pub output_role: WireRole,
}

impl Wire {
    pub fn new(name: impl Into<String>) -> Self {
        Wire {
            name: name.into(),
            input_role: WireRole::Primary,
            output_role: WireRole::Primary,
        }
    }

    pub fn constant(mut self, value: bool) -> Self {
        self.input_role = WireRole::Constant(value);
        self
    }

    pub fn garbage(mut self) -> Self {
        self.output_role = WireRole::Garbage;
        self
    }

    pub fn constant_value(&self) -> Option<bool> {
        match self.input_role {
            WireRole::Constant(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_garbage(&self) -> bool {
        self.output_role == WireRole::Garbage
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GateInstance {
    pub gate: GateKind,
    /// Wire names in gate-line order (`A`, `B`, `C`).
    pub bindings: Vec<String>,
}

impl GateInstance {
    pub fn new<I, S>(gate: GateKind, bindings: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        GateInstance {
            gate,
            bindings: bindings.into_iter().map(Into::into).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Netlist {
    pub wires: Vec<Wire>,
    pub input_labels: Option<Vec<String>>,
    pub output_labels: Option<Vec<String>>,
    pub stages: Vec<GateInstance>,
}

impl Netlist {
    /// A netlist over primary wires with no stages.
    pub fn with_wires<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Netlist {
            wires: names.into_iter().map(Wire::new).collect(),
            ..Default::default()
        }
    }

    pub fn gate<I, S>(mut self, gate: GateKind, bindings: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.stages.push(GateInstance::new(gate, bindings));
        self
    }

    pub fn push(&mut self, stage: GateInstance) {
        self.stages.push(stage);
    }

    pub fn width(&self) -> usize {
        self.wires.len()
    }

    pub fn wire_index(&self, name: &str) -> Option<usize> {
        self.wires.iter().position(|w| w.name == name)
    }

    pub fn wire(&self, name: &str) -> Option<&Wire> {
        self.wires.iter().find(|w| w.name == name)
    }

    pub fn wire_mut(&mut self, name: &str) -> Option<&mut Wire> {
        self.wires.iter_mut().find(|w| w.name == name)
    }

    /// Resolves every stage's bindings to wire indices.
    pub fn resolve(&self) -> Result<Vec<(GateKind, Vec<usize>)>, Vec<Violation>> {
        validate(self)?;
        let index: HashMap<&str, usize> = self
            .wires
            .iter()
            .enumerate()
            .map(|(i, w)| (w.name.as_str(), i))
            .collect();
        Ok(self
            .stages
            .iter()
            .map(|s| {
                (
                    s.gate,
                    s.bindings.iter().map(|b| index[b.as_str()]).collect(),
                )
            })
            .collect())
    }
}

/// A structural problem found by [`validate`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("wire `{0}` declared more than once")]
    DuplicateWire(String),
    #[error("wire name `{0}` is not a valid identifier")]
    InvalidName(String),
    #[error("stage {stage}: `{gate}` takes {expected} wires, {found} bound")]
    ArityMismatch {
        stage: usize,
        gate: GateKind,
        expected: usize,
        found: usize,
    },
    #[error("stage {stage}: wire `{wire}` is not declared")]
    UndeclaredWire { stage: usize, wire: String },
    #[error("stage {stage}: wire `{wire}` bound twice")]
    DuplicateBinding { stage: usize, wire: String },
    #[error("wire `{0}` has a constant role on its output")]
    ConstantOnOutput(String),
    #[error("wire `{0}` has a garbage role on its input")]
    GarbageOnInput(String),
    #[error("{directive} lists {found} labels for {expected} wires")]
    LabelCount {
        directive: &'static str,
        expected: usize,
        found: usize,
    },
}

pub(crate) fn valid_name(name: &str) -> bool {
    !name.is_empty() && !name.starts_with(['.', '#']) && !name.chars().any(char::is_whitespace)
}

/// Checks every structural rule; returns all violations found.
pub fn validate(n: &Netlist) -> Result<(), Vec<Violation>> {
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for w in &n.wires {
        if !valid_name(&w.name) {
            out.push(Violation::InvalidName(w.name.clone()));
        }
        if !seen.insert(w.name.as_str()) {
            out.push(Violation::DuplicateWire(w.name.clone()));
        }
        if w.input_role == WireRole::Garbage {
            out.push(Violation::GarbageOnInput(w.name.clone()));
        }
        if matches!(w.output_role, WireRole::Constant(_)) {
            out.push(Violation::ConstantOnOutput(w.name.clone()));
        }
    }
    for (directive, labels) in [(".inputs", &n.input_labels), (".outputs", &n.output_labels)] {
        if let Some(labels) = labels {
            if labels.len() != n.wires.len() {
                out.push(Violation::LabelCount {
                    directive,
                    expected: n.wires.len(),
                    found: labels.len(),
                });
            }
            out.extend(
                labels
                    .iter()
                    .filter(|l| !valid_name(l))
                    .map(|l| Violation::InvalidName(l.clone())),
            );
        }
    }
    for (i, stage) in n.stages.iter().enumerate() {
        if stage.bindings.len() != stage.gate.arity() {
            out.push(Violation::ArityMismatch {
                stage: i,
                gate: stage.gate,
                expected: stage.gate.arity(),
                found: stage.bindings.len(),
            });
        }
        let mut bound = HashSet::new();
        for b in &stage.bindings {
            if !seen.contains(b.as_str()) {
                out.push(Violation::UndeclaredWire {
                    stage: i,
                    wire: b.clone(),
                });
            }
            if !bound.insert(b.as_str()) {
                out.push(Violation::DuplicateBinding {
                    stage: i,
                    wire: b.clone(),
                });
            }
        }
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unknown gate mnemonic `{0}`")]
    UnknownMnemonic(String),
    #[error("`{gate}` takes {expected} wires, {found} given")]
    ArityMismatch {
        gate: GateKind,
        expected: usize,
        found: usize,
    },
    #[error("wire `{0}` declared more than once")]
    DuplicateWire(String),
    #[error("wire `{0}` is not declared")]
    UndeclaredWire(String),
    #[error("wire `{0}` bound twice in one gate")]
    DuplicateBinding(String),
    #[error("malformed directive: {0}")]
    MalformedDirective(String),
    #[error("missing `{0}`")]
    Missing(&'static str),
}

/// A parse failure at a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(PartialEq)]
enum Section {
    Header,
    Body,
    Done,
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (col, (byte, c)) in line.char_indices().enumerate() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some((byte, col + 1)),
            (true, Some((b, column))) => {
                out.push(Token {
                    text: &line[b..byte],
                    column,
                });
                start = None;
            }
            _ => {}
        }
    }
    if let Some((b, column)) = start {
        out.push(Token {
            text: &line[b..],
            column,
        });
    }
    out
}

struct Parser {
    netlist: Netlist,
    names: HashMap<String, usize>,
    seen: HashSet<&'static str>,
    line: usize,
}

impl Parser {
    fn err(&self, column: usize, kind: ParseErrorKind) -> ParseError {
        ParseError {
            line: self.line,
            column,
            kind,
        }
    }

    fn malformed(&self, column: usize, msg: impl Into<String>) -> ParseError {
        self.err(column, ParseErrorKind::MalformedDirective(msg.into()))
    }

    fn directive(&mut self, name: &'static str, toks: &[Token<'_>]) -> Result<(), ParseError> {
        let col = toks[0].column;
        if !self.seen.insert(name) {
            return Err(self.malformed(col, format!("{name} given more than once")));
        }
        let args = &toks[1..];
        if name != ".variables" && !self.seen.contains(".variables") {
            return Err(self.malformed(col, format!("{name} before .variables")));
        }
        match name {
            ".variables" => {
                if args.is_empty() {
                    return Err(self.malformed(col, ".variables needs at least one name"));
                }
                for t in args {
                    if !valid_name(t.text) {
                        return Err(
                            self.malformed(t.column, format!("invalid wire name `{}`", t.text))
                        );
                    }
                    if self.names.contains_key(t.text) {
                        return Err(
                            self.err(t.column, ParseErrorKind::DuplicateWire(t.text.into()))
                        );
                    }
                    self.names
                        .insert(t.text.to_string(), self.netlist.wires.len());
                    self.netlist.wires.push(Wire::new(t.text));
                }
            }
            ".inputs" | ".outputs" => {
                let width = self.netlist.wires.len();
                if args.len() != width {
                    return Err(self.malformed(
                        col,
                        format!("{name} lists {} labels for {width} variables", args.len()),
                    ));
                }
                if let Some(t) = args.iter().find(|t| !valid_name(t.text)) {
                    return Err(self.malformed(t.column, format!("invalid label `{}`", t.text)));
                }
                let labels = Some(args.iter().map(|t| t.text.to_string()).collect());
                if name == ".inputs" {
                    self.netlist.input_labels = labels;
                } else {
                    self.netlist.output_labels = labels;
                }
            }
            ".constants" | ".garbage" => {
                let [roles] = args else {
                    return Err(
                        self.malformed(col, format!("{name} takes exactly one role string"))
                    );
                };
                let count = roles.text.chars().count();
                if count != self.netlist.wires.len() {
                    return Err(self.malformed(
                        roles.column,
                        format!(
                            "{name} has {count} roles for {} variables",
                            self.netlist.wires.len()
                        ),
                    ));
                }
                for (i, c) in roles.text.chars().enumerate() {
                    let wire = &mut self.netlist.wires[i];
                    match (name, c) {
                        (_, '-') => {}
                        (".constants", '0' | '1') => wire.input_role = WireRole::Constant(c == '1'),
                        (".garbage", '1') => wire.output_role = WireRole::Garbage,
                        _ => {
                            return Err(self.malformed(
                                roles.column + i,
                                format!("invalid role character {c:?} in {name}"),
                            ))
                        }
                    }
                }
            }
            _ => unreachable!(),
        }
        Ok(())
    }

    fn gate_line(&mut self, toks: &[Token<'_>]) -> Result<(), ParseError> {
        let head = &toks[0];
        let gate = GateKind::from_mnemonic(head.text).ok_or_else(|| {
            self.err(
                head.column,
                ParseErrorKind::UnknownMnemonic(head.text.into()),
            )
        })?;
        let args = &toks[1..];
        if args.len() != gate.arity() {
            return Err(self.err(
                head.column,
                ParseErrorKind::ArityMismatch {
                    gate,
                    expected: gate.arity(),
                    found: args.len(),
                },
            ));
        }
        let mut bound = HashSet::new();
        for t in args {
            if !self.names.contains_key(t.text) {
                return Err(self.err(t.column, ParseErrorKind::UndeclaredWire(t.text.into())));
            }
            if !bound.insert(t.text) {
                return Err(self.err(t.column, ParseErrorKind::DuplicateBinding(t.text.into())));
            }
        }
        self.netlist
            .stages
            .push(GateInstance::new(gate, args.iter().map(|t| t.text)));
        Ok(())
    }
}

fn directive_name(tok: &str) -> Option<&'static str> {
    [
        ".variables",
        ".inputs",
        ".outputs",
        ".constants",
        ".garbage",
        ".begin",
        ".end",
    ]
    .into_iter()
    .find(|d| d.eq_ignore_ascii_case(tok))
}

pub fn parse_netlist(text: &str) -> Result<Netlist, ParseError> {
    let mut p = Parser {
        netlist: Netlist::default(),
        names: HashMap::new(),
        seen: HashSet::new(),
        line: 0,
    };
    let mut section = Section::Header;
    for (i, raw) in text.lines().enumerate() {
        p.line = i + 1;
        let toks = tokens(raw);
        let Some(first) = toks.first() else { continue };
        if first.text.starts_with('#') {
            continue;
        }
        let directive = directive_name(first.text);
        match section {
            Section::Header => match directive {
                Some(".begin") => {
                    if let Some(t) = toks.get(1) {
                        return Err(p.malformed(t.column, "unexpected text after .begin"));
                    }
                    section = Section::Body;
                }
                Some(".end") => return Err(p.malformed(first.column, ".end before .begin")),
                Some(d) => p.directive(d, &toks)?,
                None if first.text.starts_with('.') => {
                    return Err(
                        p.malformed(first.column, format!("unknown directive `{}`", first.text))
                    )
                }
                None => return Err(p.malformed(first.column, "gate line before .begin")),
            },
            Section::Body => match directive {
                Some(".end") => {
                    if let Some(t) = toks.get(1) {
                        return Err(p.malformed(t.column, "unexpected text after .end"));
                    }
                    section = Section::Done;
                }
                _ if first.text.starts_with('.') => {
                    return Err(p.malformed(
                        first.column,
                        format!("directive `{}` inside .begin/.end block", first.text),
                    ))
                }
                _ => p.gate_line(&toks)?,
            },
            Section::Done => return Err(p.malformed(first.column, "content after .end")),
        }
    }
    p.line = text.lines().count() + 1;
    match section {
        Section::Header => Err(p.err(1, ParseErrorKind::Missing(".begin"))),
        Section::Body => Err(p.err(1, ParseErrorKind::Missing(".end"))),
        Section::Done => Ok(p.netlist),
    }
}

/// Writes `n` in the text format. Role directives are emitted only when
/// some wire has a non-primary role.
pub fn serialize_netlist(n: &Netlist) -> String {
    let mut out = String::new();
    let join = |names: &mut dyn Iterator<Item = &str>| names.collect::<Vec<_>>().join(" ");
    if !n.wires.is_empty() {
        writeln!(
            out,
            ".variables {}",
            join(&mut n.wires.iter().map(|w| w.name.as_str()))
        )
        .unwrap();
    }
    if let Some(labels) = &n.input_labels {
        writeln!(
            out,
            ".inputs {}",
            join(&mut labels.iter().map(String::as_str))
        )
        .unwrap();
    }
    if let Some(labels) = &n.output_labels {
        writeln!(
            out,
            ".outputs {}",
            join(&mut labels.iter().map(String::as_str))
        )
        .unwrap();
    }
    if n.wires.iter().any(|w| w.constant_value().is_some()) {
        let roles: String = n
            .wires
            .iter()
            .map(|w| match w.constant_value() {
                Some(true) => '1',
                Some(false) => '0',
                None => '-',
            })
            .collect();
        writeln!(out, ".constants {roles}").unwrap();
    }
    if n.wires.iter().any(Wire::is_garbage) {
        let roles: String = n
            .wires
            .iter()
            .map(|w| if w.is_garbage() { '1' } else { '-' })
            .collect();
        writeln!(out, ".garbage {roles}").unwrap();
    }
    out.push_str(".begin\n");
    for s in &n.stages {
        writeln!(out, "{} {}", s.gate, s.bindings.join(" ")).unwrap();
    }
    out.push_str(".end\n");
    out
}

impl fmt::Display for Netlist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize_netlist(self))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConcatError {
    #[error("wire map sends both `{0}` and `{1}` to `{2}`")]
    NonInjective(String, String, String),
    #[error("wire map names `{0}`, which is not a wire of the {1} netlist")]
    UnknownWire(String, &'static str),
    #[error("unmapped wire `{0}` of the second netlist clashes with a wire of the first")]
    NameClash(String),
}

/// Cascades `b` after `a`.
///
/// `wire_map` pairs wires of `b` with wires of `a` (`(b_name, a_name)`).
/// Mapped wires are merged: the input role comes from `a` and the output
/// role from `b`. Unmapped wires of `b` are appended after `a`'s wires with
/// their own roles; their names must not already be used by `a`. Wires of
/// `a` that `b` does not touch keep their output role.
pub fn concat(a: &Netlist, b: &Netlist, wire_map: &[(&str, &str)]) -> Result<Netlist, ConcatError> {
    let mut rename: HashMap<&str, &str> = HashMap::new();
    let mut targets: HashMap<&str, &str> = HashMap::new();
    for &(from, to) in wire_map {
        if b.wire(from).is_none() {
            return Err(ConcatError::UnknownWire(from.into(), "second"));
        }
        if a.wire(to).is_none() {
            return Err(ConcatError::UnknownWire(to.into(), "first"));
        }
        if let Some(prev) = targets.insert(to, from) {
            if prev != from {
                return Err(ConcatError::NonInjective(
                    prev.into(),
                    from.into(),
                    to.into(),
                ));
            }
        }
        rename.insert(from, to);
    }
    let mut out = Netlist {
        wires: a.wires.clone(),
        input_labels: None,
        output_labels: None,
        stages: a.stages.clone(),
    };
    for w in &b.wires {
        match rename.get(w.name.as_str()) {
            Some(&to) => out.wire_mut(to).expect("checked above").output_role = w.output_role,
            None => {
                if a.wire(&w.name).is_some() {
                    return Err(ConcatError::NameClash(w.name.clone()));
                }
                out.wires.push(w.clone());
            }
        }
    }
    out.stages.extend(b.stages.iter().map(|s| {
        GateInstance {
            gate: s.gate,
            bindings: s
                .bindings
                .iter()
                .map(|name| {
                    rename
                        .get(name.as_str())
                        .map_or_else(|| name.clone(), |t| t.to_string())
                })
                .collect(),
        }
    }));
    Ok(out)
}

/// Identity correspondence for two netlists over the same wire names.
pub fn same_wires(n: &Netlist) -> Vec<(&str, &str)> {
    n.wires
        .iter()
        .map(|w| (w.name.as_str(), w.name.as_str()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const FEYNMAN: &str = ".variables a b\n.constants -0\n.garbage -1\n.begin\nf2 a b\n.end";

    fn kind_of(text: &str) -> ParseErrorKind {
        parse_netlist(text).unwrap_err().kind
    }

    #[test]
    fn parses_feynman_example() {
        let n = parse_netlist(FEYNMAN).unwrap();
        assert_eq!(n.width(), 2);
        assert_eq!(
            n.stages,
            vec![GateInstance::new(GateKind::Feynman, ["a", "b"])]
        );
        assert_eq!(n.wires[1].input_role, WireRole::Constant(false));
        assert_eq!(n.wires[1].output_role, WireRole::Garbage);
        assert_eq!(n.wires[0], Wire::new("a"));
    }

    #[test]
    fn duplicate_binding() {
        let e = parse_netlist(".variables a b\n.begin\nf2 a a\n.end\n").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::DuplicateBinding("a".into()));
        assert_eq!((e.line, e.column), (3, 6));
    }

    #[test]
    fn undeclared_wire() {
        let e = parse_netlist(".begin\nmux a b c\n.end").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UndeclaredWire("a".into()));
        assert_eq!((e.line, e.column), (2, 5));
    }

    #[test]
    fn error_kinds() {
        assert_eq!(
            kind_of(".variables a\n.begin\nt1 a\n.end"),
            ParseErrorKind::UnknownMnemonic("t1".into())
        );
        assert!(matches!(
            kind_of(".variables a b\n.begin\nmux a b\n.end"),
            ParseErrorKind::ArityMismatch {
                expected: 3,
                found: 2,
                ..
            }
        ));
        assert_eq!(
            kind_of(".variables a a\n.begin\n.end"),
            ParseErrorKind::DuplicateWire("a".into())
        );
        assert_eq!(
            kind_of(".variables a\n.begin\n"),
            ParseErrorKind::Missing(".end")
        );
        assert_eq!(kind_of(".variables a\n"), ParseErrorKind::Missing(".begin"));
        assert!(matches!(
            kind_of(".variables a\n.constants 01\n.begin\n.end"),
            ParseErrorKind::MalformedDirective(_)
        ));
        assert!(matches!(
            kind_of(".variables a\n.garbage 0\n.begin\n.end"),
            ParseErrorKind::MalformedDirective(_)
        ));
        assert!(matches!(
            kind_of(".numvars 2\n.begin\n.end"),
            ParseErrorKind::MalformedDirective(_)
        ));
        assert!(matches!(
            kind_of(".begin\n.end\nnot a"),
            ParseErrorKind::MalformedDirective(_)
        ));
    }

    #[test]
    fn comments_whitespace_and_case() {
        let text =
            "# header\n  .VARIABLES   x  y \n\n.begin\n# body\n  F2\tx   y\n.End\n# trailing\n";
        let n = parse_netlist(text).unwrap();
        assert_eq!(
            n.stages,
            vec![GateInstance::new(GateKind::Feynman, ["x", "y"])]
        );
    }

    #[test]
    fn serialize_empty() {
        let n = Netlist::with_wires(["a", "b"]);
        assert_eq!(serialize_netlist(&n), ".variables a b\n.begin\n.end\n");
        assert_eq!(parse_netlist(&serialize_netlist(&n)).unwrap(), n);
        assert_eq!(serialize_netlist(&Netlist::default()), ".begin\n.end\n");
    }

    #[test]
    fn round_trip_feynman_and_all_gates() {
        let n = parse_netlist(FEYNMAN).unwrap();
        assert_eq!(parse_netlist(&serialize_netlist(&n)).unwrap(), n);

        let mut n = Netlist::with_wires(["a", "b", "c"])
            .gate(GateKind::Not, ["a"])
            .gate(GateKind::Feynman, ["b", "a"])
            .gate(GateKind::Fredkin, ["a", "b", "c"])
            .gate(GateKind::Mux, ["c", "a", "b"])
            .gate(GateKind::New, ["b", "c", "a"]);
        n.wires[2].input_role = WireRole::Constant(true);
        n.wires[0].output_role = WireRole::Garbage;
        n.input_labels = Some(vec!["x".into(), "y".into(), "one".into()]);
        assert_eq!(parse_netlist(&serialize_netlist(&n)).unwrap(), n);
    }

    #[test]
    fn validate_examples() {
        let ok = Netlist::with_wires(["a", "b", "c"]).gate(GateKind::Mux, ["a", "b", "c"]);
        assert_eq!(validate(&ok), Ok(()));

        let undeclared = Netlist::with_wires(["a", "b"]).gate(GateKind::Feynman, ["a", "z"]);
        assert_eq!(
            validate(&undeclared),
            Err(vec![Violation::UndeclaredWire {
                stage: 0,
                wire: "z".into()
            }])
        );

        let mut misuse = Netlist::with_wires(["a", "b"]);
        misuse.wires[1].input_role = WireRole::Garbage;
        misuse.wires[0].output_role = WireRole::Constant(true);
        let v = validate(&misuse).unwrap_err();
        assert!(v.contains(&Violation::GarbageOnInput("b".into())));
        assert!(v.contains(&Violation::ConstantOnOutput("a".into())));
    }

    #[test]
    fn validate_arity_and_duplicates() {
        let n = Netlist::with_wires(["a", "a"]).gate(GateKind::Mux, ["a", "a"]);
        let v = validate(&n).unwrap_err();
        assert!(v.contains(&Violation::DuplicateWire("a".into())));
        assert!(v.contains(&Violation::DuplicateBinding {
            stage: 0,
            wire: "a".into()
        }));
        assert!(v
            .iter()
            .any(|x| matches!(x, Violation::ArityMismatch { .. })));
    }

    #[test]
    fn concat_identity_and_order() {
        let x = Netlist::with_wires(["a", "b", "c"]).gate(GateKind::Mux, ["a", "b", "c"]);
        let empty = Netlist::with_wires(["a", "b", "c"]);
        let joined = concat(&x, &empty, &same_wires(&empty)).unwrap();
        assert_eq!(joined.stages, x.stages);

        let not_p = Netlist::with_wires(["p"]).gate(GateKind::Not, ["p"]);
        let joined = concat(&x, &not_p, &[("p", "a")]).unwrap();
        assert_eq!(
            joined.stages,
            vec![
                GateInstance::new(GateKind::Mux, ["a", "b", "c"]),
                GateInstance::new(GateKind::Not, ["a"]),
            ]
        );
        assert_eq!(joined.width(), 3);
    }

    #[test]
    fn concat_roles_and_new_wires() {
        let a = Netlist::with_wires(["a", "b"]).gate(GateKind::Feynman, ["a", "b"]);
        let mut b = Netlist::with_wires(["x", "t"]).gate(GateKind::Feynman, ["x", "t"]);
        b.wires[1].input_role = WireRole::Constant(false);
        b.wires[0].output_role = WireRole::Garbage;
        let n = concat(&a, &b, &[("x", "b")]).unwrap();
        assert_eq!(n.width(), 3);
        assert_eq!(n.wire("b").unwrap().output_role, WireRole::Garbage);
        assert_eq!(n.wire("t").unwrap().input_role, WireRole::Constant(false));
        assert_eq!(n.stages[1].bindings, vec!["b", "t"]);
    }

    #[test]
    fn concat_errors() {
        let a = Netlist::with_wires(["a", "b"]);
        let b = Netlist::with_wires(["x", "y"]);
        assert!(matches!(
            concat(&a, &b, &[("x", "a"), ("y", "a")]),
            Err(ConcatError::NonInjective(..))
        ));
        assert!(matches!(
            concat(&a, &b, &[("q", "a")]),
            Err(ConcatError::UnknownWire(..))
        ));
        assert!(matches!(
            concat(&a, &b, &[("x", "q")]),
            Err(ConcatError::UnknownWire(..))
        ));
        let clash = Netlist::with_wires(["a"]);
        assert_eq!(
            concat(&a, &clash, &[]),
            Err(ConcatError::NameClash("a".into()))
        );
    }
}
