//! Random chain campaigns for the pushing maps.

use std::sync::Arc;

use brinv_core::fragments::gglb;
use brinv_core::gamma::{gamma, glb_of_edges};
use brinv_core::pushing::{certificate_bound, check_all_sub_chains, evaluate_chain};
use brinv_core::text::{parse_chain, write_chain, write_below_set};
use brinv_core::{BelowSet, Chain, Edge, LeafId};
use rand::seq::SliceRandom;
use rand::Rng;

use super::{par_cases, record_error, SuiteResult};
use crate::gen;
use crate::report::{Recorder, SuiteOptions};

/// Splits a set of edges into its connected components.
fn edge_components(edges: &[Edge]) -> Vec<Vec<Edge>> {
    let mut comps: Vec<Vec<Edge>> = Vec::new();
    for e in edges {
        let touching: Vec<usize> = (0..comps.len())
            .filter(|&k| comps[k].iter().any(|f| !f.disjoint(e)))
            .collect();
        let mut merged = vec![*e];
        for &k in touching.iter().rev() {
            merged.extend(comps.remove(k));
        }
        merged.sort();
        comps.push(merged);
    }
    comps.sort();
    comps
}

fn general_case(chain: &Chain, rng: &mut impl Rng, rec: &mut Recorder) {
    let input = || write_chain(chain);
    // A random edge with locally maximal endpoints at each vertex.
    let mut omega = Vec::new();
    for a in chain.vertices() {
        let eligible: Vec<Edge> = gamma(a)
            .edges()
            .iter()
            .copied()
            .filter(|e| a.locally_maximal(e.i) && a.locally_maximal(e.j))
            .collect();
        match eligible.choose(rng) {
            Some(e) => omega.push(*e),
            None => {
                rec.stat("no_eligible_edge", 1);
                return;
            }
        }
    }
    rec.case();
    omega.sort();
    omega.dedup();
    let t = chain.t();
    let bottom = chain.bottom();
    let m = match glb_of_edges(bottom, &omega) {
        Ok(m) => m,
        Err(e) => return record_error(rec, e, input),
    };
    let comps = edge_components(&omega);
    let mut parts: Vec<BelowSet> = Vec::new();
    let mut seen: Vec<LeafId> = Vec::new();
    let mut disjoint = true;
    for comp in &comps {
        let mi = match glb_of_edges(bottom, comp) {
            Ok(mi) => mi,
            Err(e) => return record_error(rec, e, input),
        };
        rec.check(mi.in_c_r(4), "component_in_c4", || {
            format!("{}component glb:\n{}", input(), write_below_set(&mi))
        });
        for v in mi.involved() {
            disjoint &= !seen.contains(&v);
            seen.push(v);
        }
        parts.push(mi);
    }
    rec.check(disjoint, "components_disjoint", input);
    if disjoint {
        match gglb(bottom.base(), &parts) {
            Ok(g) => rec.check(g == m, "glb_is_union", input),
            Err(e) => record_error(rec, e, input),
        }
    }
    rec.check(m.in_c_r(4 * t.max(1)), "bound_4t", || {
        format!("{}involves {}", input(), m.involves())
    });
    if omega.len() == t + 1 && omega.iter().enumerate().all(|(k, e)| omega[k + 1..].iter().all(|f| e.disjoint(f))) {
        rec.stat("all_disjoint", 1);
        rec.check(m.in_c_r(2 * t + 2), "disjoint_bound", input);
    }
}

pub(super) fn general_2v(opts: &SuiteOptions) -> SuiteResult {
    let samples = opts.samples.unwrap_or(5000);
    let max = opts.max_size.unwrap_or(8);
    let ids: Vec<u64> = (0..samples as u64).collect();
    let rec = par_cases(&ids, |_, &k| {
        let mut rec = Recorder::default();
        let mut rng = gen::case_rng(opts.seed ^ 0x6765_6e32, k);
        let t = rng.gen_range(1..=3.min(max.max(3) - 2));
        let size = rng.gen_range(t + 2..=max.max(3));
        let y = Arc::new(gen::random_pattern(&mut rng, 2, size));
        let box_only = rng.gen_bool(0.5);
        if let Some(chain) = gen::random_chain(&mut rng, &y, t, box_only) {
            general_case(&chain, &mut rng, &mut rec);
        }
        rec
    });
    Ok((rec, Some(2)))
}

fn pushing_case(chain: &Chain, rec: &mut Recorder) {
    let input = || write_chain(chain);
    let report = match evaluate_chain(chain) {
        Ok(r) => r,
        Err(e) => return record_error(rec, e, input),
    };
    rec.case();
    let s = chain.base().s();
    rec.check(report.above_bottom, "above_bottom", input);
    rec.check(report.bound == certificate_bound(s, chain.t()), "bound_value", input);
    rec.check(report.involves <= report.bound, "bound", || {
        format!("{}involves {} > {}", input(), report.involves, report.bound)
    });
    if s == 3 {
        rec.check(report.parts_disjoint, "parts_disjoint", input);
        for p in &report.parts {
            rec.stat("parts", 1);
            if !p.inside_component {
                rec.stat("part_outside_component", 1);
            }
            if !p.n.in_c_r(8) {
                rec.stat("part_outside_c8", 1);
            }
        }
    }
    match check_all_sub_chains(chain) {
        Ok(ok) => rec.check(ok, "order_reversal", input),
        Err(e) => record_error(rec, e, input),
    }
    // Same verdict after a round trip through the text format.
    match parse_chain(&write_chain(chain)).and_then(|c| evaluate_chain(&c)) {
        Ok(again) => rec.check(again.m == report.m, "determinism", input),
        Err(e) => record_error(rec, e, input),
    }
}

pub(super) fn pushing(opts: &SuiteOptions, s: u8) -> SuiteResult {
    if let Some(given) = opts.s {
        if given != s {
            return Err(super::VerifyError::InvalidOption(format!(
                "this suite fixes s={s}, got s={given}"
            )));
        }
    }
    let samples = opts.samples.unwrap_or(10_000);
    let max = opts.max_size.unwrap_or(if s == 3 { 9 } else { 8 });
    let ids: Vec<u64> = (0..samples as u64).collect();
    let rec = par_cases(&ids, |_, &k| {
        let mut rec = Recorder::default();
        let mut rng = gen::case_rng(opts.seed ^ (0x7075_7368 + s as u64), k);
        // Redraw until the chain fits; every sample yields one chain.
        for _ in 0..100 {
            let t = rng.gen_range(0..=3.min(max.max(2) - 2));
            let size = rng.gen_range(t + 2..=max.max(2));
            let y = Arc::new(gen::random_pattern(&mut rng, s, size));
            let box_only = rng.gen_bool(0.3);
            if let Some(chain) = gen::random_chain(&mut rng, &y, t, box_only) {
                rec.stat(&format!("t{t}"), 1);
                pushing_case(&chain, &mut rec);
                break;
            }
        }
        rec
    });
    Ok((rec, Some(s)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use brinv_core::Colour;

    #[test]
    fn components_of_edge_sets() {
        let c = Colour::new(1, 2).unwrap();
        let e = |a, b| Edge::new(a, b, c);
        let comps = edge_components(&[e(0, 1), e(2, 3), e(1, 2), e(5, 6)]);
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].len(), 3);
    }
}
