// SPDX-License-Identifier: Apache-2.0
#![allow(dead_code)]

use proptest::prelude::*;
use revseq::gates::GateKind;
use revseq::netlist::{GateInstance, Netlist, Wire, WireRole};

/// Deterministic permutation of `0..n` from a seed (Fisher-Yates, xorshift).
fn permutation(n: usize, mut seed: u64) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    seed |= 1;
    for i in (1..n).rev() {
        seed ^= seed << 13;
        seed ^= seed >> 7;
        seed ^= seed << 17;
        p.swap(i, (seed % (i as u64 + 1)) as usize);
    }
    p
}

fn build(prefix: &str, width: usize, stages: &[(usize, u64)], roles: &[(u8, bool)]) -> Netlist {
    let allowed: Vec<GateKind> = GateKind::ALL
        .into_iter()
        .filter(|k| k.arity() <= width)
        .collect();
    let names: Vec<String> = (0..width).map(|i| format!("{prefix}{i}")).collect();
    let wires = names
        .iter()
        .zip(roles)
        .map(|(name, &(input, garbage))| {
            let mut w = Wire::new(name.clone());
            w.input_role = match input {
                1 => WireRole::Constant(false),
                2 => WireRole::Constant(true),
                _ => WireRole::Primary,
            };
            if garbage {
                w.output_role = WireRole::Garbage;
            }
            w
        })
        .collect();
    let stages = stages
        .iter()
        .map(|&(g, seed)| {
            let kind = allowed[g % allowed.len()];
            let perm = permutation(width, seed);
            GateInstance::new(kind, perm[..kind.arity()].iter().map(|&i| names[i].clone()))
        })
        .collect();
    Netlist {
        wires,
        stages,
        ..Default::default()
    }
}

/// Valid netlists over `1..=max_wires` wires with up to `max_stages`
/// library gates and random boundary roles.
pub fn netlist(max_wires: usize, max_stages: usize) -> impl Strategy<Value = Netlist> {
    (1..=max_wires, "[a-z][a-z0-9_]{0,3}").prop_flat_map(move |(w, prefix)| {
        (
            proptest::collection::vec((0..5usize, any::<u64>()), 0..=max_stages),
            proptest::collection::vec((0..3u8, any::<bool>()), w),
        )
            .prop_map(move |(stages, roles)| build(&prefix, w, &stages, &roles))
    })
}

/// Like [`netlist`] but with every wire primary.
pub fn plain_netlist(max_wires: usize, max_stages: usize) -> impl Strategy<Value = Netlist> {
    netlist(max_wires, max_stages).prop_map(|mut n| {
        for w in &mut n.wires {
            w.input_role = WireRole::Primary;
            w.output_role = WireRole::Primary;
        }
        n
    })
}

/// Netlist over the fixed wires `w0..w{width-1}`.
pub fn netlist_on(width: usize, max_stages: usize) -> impl Strategy<Value = Netlist> {
    proptest::collection::vec((0..5usize, any::<u64>()), 0..=max_stages)
        .prop_map(move |stages| build("w", width, &stages, &vec![(0, false); width]))
}
