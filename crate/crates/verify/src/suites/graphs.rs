//! Scans of the contraction graphs `Γ_A`.

use std::collections::BTreeSet;
use std::sync::Arc;

use brinv_core::gamma::{
    classify, gamma, gamma_oracle, glb_of_edges, star_witness, star_witness_exhaustive,
};
use brinv_core::boxes::DEFAULT_DEPTH_CAP;
use brinv_core::{BelowSet, ColouredGraph, ComponentShape, DyadicBox, Edge, LeafId, Pattern};
use rand::seq::SliceRandom;
use rand::Rng;

use super::{par_cases, record_error, repro, scan_pairs, SuiteResult};
use crate::fixtures::OPEN_BOOK_LABELS;
use crate::gen;
use crate::report::{Recorder, SuiteOptions};

fn edges_text(edges: &[Edge]) -> String {
    edges
        .iter()
        .map(|e| format!("{{{},{}}}c{}", e.i, e.j, e.colour.get()))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Γ against its definition, the adjacent-edge colour rule, and monotonicity
/// of Γ and of local maximality along expansions.
fn tec2a_case(a: &BelowSet, rec: &mut Recorder) {
    let g = gamma(a);
    match gamma_oracle(a) {
        Ok(oracle) => rec.check(oracle == g.edges(), "gamma_oracle", || {
            format!("{}fast: {}\noracle: {}", repro(a), edges_text(g.edges()), edges_text(&oracle))
        }),
        Err(e) => return record_error(rec, e, || repro(a)),
    }
    let edges = g.edges();
    for (k, e) in edges.iter().enumerate() {
        for f in &edges[k + 1..] {
            if e.disjoint(f) {
                continue;
            }
            rec.stat("adjacent_pairs", 1);
            let same_pair = e.i == f.i && e.j == f.j;
            rec.check(!same_pair && e.colour != f.colour, "colours_differ", || {
                format!("{}edges: {}", repro(a), edges_text(&[*e, *f]))
            });
        }
    }
    let before: BTreeSet<Edge> = edges.iter().copied().collect();
    let n = a.base().len() as LeafId;
    let maximal: Vec<bool> = (0..n).map(|v| a.locally_maximal(v)).collect();
    for b in a.expansions().into_iter().filter(|b| !b.is_top()) {
        rec.check(b.len() == a.len() + 1, "size_law", || repro(a));
        let gb = gamma(&b);
        rec.check(gb.edges().iter().all(|e| before.contains(e)), "gamma_monotone", || {
            format!("{}---- expanded to\n{}", repro(a), repro(&b))
        });
        rec.check(
            (0..n).all(|v| !maximal[v as usize] || b.locally_maximal(v)),
            "local_max_monotone",
            || format!("{}---- expanded to\n{}", repro(a), repro(&b)),
        );
    }
}

pub(super) fn tec2a(opts: &SuiteOptions) -> SuiteResult {
    let s = opts.s.unwrap_or(2);
    let max = opts.max_size.unwrap_or(if s == 3 { 5 } else { 7 });
    let rec = scan_pairs(s, max, 2, opts, tec2a_case)?;
    Ok((rec, Some(s)))
}

/// Two adjacent edges whose three vertices stay locally maximal at the glb of
/// their contractions lie in a square, and that glb is the square's.
fn tec2_case(a: &BelowSet, rec: &mut Recorder) {
    let g = gamma(a);
    let edges = g.edges();
    for (k, e) in edges.iter().enumerate() {
        for f in &edges[k + 1..] {
            if e.disjoint(f) {
                continue;
            }
            let b = match glb_of_edges(a, &[*e, *f]) {
                Ok(b) => b,
                Err(err) => return record_error(rec, err, || repro(a)),
            };
            let mut three = vec![e.i, e.j, f.i, f.j];
            three.sort_unstable();
            three.dedup();
            if !three.iter().all(|v| b.locally_maximal(*v)) {
                continue;
            }
            rec.stat("hypothesis_met", 1);
            let input = || format!("{}edges: {}", repro(a), edges_text(&[*e, *f]));
            let comp = g.component_of(e.i);
            let shape = classify(&comp);
            rec.check(shape == ComponentShape::Square, "square", || {
                format!("{}\nshape: {}", input(), shape.name())
            });
            rec.check(b.involved() == comp.vertices, "glb_on_square", input);
            rec.check(b.in_c_r(4), "glb_in_c4", input);
            match glb_of_edges(a, &comp.edges) {
                Ok(m) => rec.check(m == b, "glb_of_square", input),
                Err(err) => record_error(rec, err, input),
            }
        }
    }
}

pub(super) fn tec2(opts: &SuiteOptions) -> SuiteResult {
    let s = opts.s.unwrap_or(2);
    let max = opts.max_size.unwrap_or(7);
    let rec = scan_pairs(s, max, 2, opts, tec2_case)?;
    Ok((rec, Some(s)))
}

/// Star-connected components have one of the four shapes; away from open
/// books their glb stays on the component and involves at most eight leaves.
fn graphs_case(a: &BelowSet, rec: &mut Recorder, exhaustive_budget: Option<usize>) {
    let g = gamma(a);
    if exhaustive_budget.is_some() {
        same_gamma(a, &g, rec);
    }
    for comp in g.components().into_iter().filter(|c| !c.edges.is_empty()) {
        let input = || format!("{}component: {}", repro(a), edges_text(&comp.edges));
        let witness = match star_witness(a, &comp) {
            Ok(w) => w,
            Err(e) => return record_error(rec, e, input),
        };
        if let Some(budget) = exhaustive_budget {
            match star_witness_exhaustive(a, &comp, budget) {
                Ok(w) => rec.check(w.is_some() == witness.is_some(), "witness_oracle", input),
                Err(e) => record_error(rec, e, input),
            }
        }
        let Some(_) = witness else {
            rec.stat("not_star_connected", 1);
            continue;
        };
        let shape = classify(&comp);
        rec.stat(&format!("shape_{}", shape.name()), 1);
        rec.check(shape != ComponentShape::Other, "four_shapes", input);
        if matches!(shape, ComponentShape::OpenBook { .. }) {
            continue;
        }
        match glb_of_edges(a, &comp.edges) {
            Ok(m) => {
                rec.check(m.involved().iter().all(|v| comp.vertices.contains(v)), "glb_inside", input);
                rec.check(m.in_c_r(8), "glb_in_c8", input);
            }
            Err(e) => record_error(rec, e, input),
        }
    }
}

fn starred(a: &BelowSet, g: &ColouredGraph) -> brinv_core::Result<Vec<Vec<Edge>>> {
    let mut out = Vec::new();
    for comp in g.components().into_iter().filter(|c| !c.edges.is_empty()) {
        if star_witness(a, &comp)?.is_some() {
            out.push(comp.edges);
        }
    }
    Ok(out)
}

/// Counts expansions with the same graph whose star-connected components
/// differ. Measured, not asserted.
fn same_gamma(a: &BelowSet, g: &ColouredGraph, rec: &mut Recorder) {
    let Ok(mine) = starred(a, g) else { return };
    for b in a.expansions().into_iter().filter(|b| !b.is_top()) {
        let gb = gamma(&b);
        if gb.edges() != g.edges() {
            continue;
        }
        rec.stat("same_gamma_pairs", 1);
        if starred(&b, &gb).map_or(true, |theirs| theirs != mine) {
            rec.stat("same_gamma_star_differs", 1);
        }
    }
}

/// The octants or the open book, with colours permuted, placed in a random
/// box of a pattern with at most two boxes.
fn seeded_pattern(rng: &mut impl Rng) -> Pattern {
    let mut perm = [0usize, 1, 2];
    perm.shuffle(rng);
    let local: Vec<DyadicBox> = if rng.gen_bool(0.5) {
        (0..8u8)
            .map(|k| {
                let f: Vec<String> = (0..3).map(|i| ((k >> i) & 1).to_string()).collect();
                DyadicBox::from_fields(&[&f[0], &f[1], &f[2]]).expect("octant")
            })
            .collect()
    } else {
        OPEN_BOOK_LABELS
            .iter()
            .map(|f| DyadicBox::from_fields(f).expect("open book box"))
            .collect()
    };
    let host = if rng.gen_bool(0.5) {
        Pattern::root(3)
    } else {
        gen::random_pattern(rng, 3, 2)
    };
    let b = *host.boxes().choose(rng).expect("nonempty");
    let mut boxes: Vec<DyadicBox> = host.boxes().iter().filter(|x| **x != b).copied().collect();
    for cell in &local {
        let addrs: Vec<_> = (0..3).map(|i| cell.addrs()[perm[i]]).collect();
        let rel = DyadicBox::from_addrs(&addrs).expect("three colours");
        boxes.push(b.append(&rel, DEFAULT_DEPTH_CAP).expect("shallow"));
    }
    Pattern::new(3, boxes).expect("tiles")
}

pub(super) fn graphs(opts: &SuiteOptions) -> SuiteResult {
    let s = opts.s.unwrap_or(3);
    let max = opts.max_size.unwrap_or(if s == 3 { 6 } else { 7 });
    let budget = opts.budget;
    let mut rec = scan_pairs(s, max, 2, opts, |a, rec| {
        let oracle = (a.base().len() <= 5).then_some(budget);
        graphs_case(a, rec, oracle)
    })?;
    // Sampled instances just above the exhaustive range.
    let samples = opts.samples.unwrap_or(4000);
    let ids: Vec<u64> = (0..samples as u64).collect();
    rec.merge(par_cases(&ids, |_, &k| {
        let mut rec = Recorder::default();
        let mut rng = gen::case_rng(opts.seed ^ 0x6772_6170, k);
        let y = if s == 3 && k % 2 == 1 {
            rec.stat("seeded", 1);
            Arc::new(seeded_pattern(&mut rng))
        } else {
            let size = rng.gen_range(max + 1..=max + 2);
            Arc::new(gen::random_pattern(&mut rng, s, size))
        };
        let box_only = rng.gen_bool(0.5);
        if let Some(a) = gen::random_proper_below(&mut rng, &y, box_only) {
            rec.case();
            rec.stat("sampled", 1);
            graphs_case(&a, &mut rec, None);
        }
        rec
    }));
    Ok((rec, Some(s)))
}
