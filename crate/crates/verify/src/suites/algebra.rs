//! Group axioms, glb/lub laws and canonical forms of fragments.

use std::collections::HashMap;
use std::sync::Arc;

use brinv_core::boxes::{enumerate_patterns, DEFAULT_DEPTH_CAP};
use brinv_core::fragments::{canonicalize, glb_above, glb_above_by, interval_above, lower_set};
use brinv_core::gamma::{edge_contraction, gamma};
use brinv_core::group::{commutes_with_expansion, transitive_element};
use brinv_core::text::{write_below_set, write_element, write_pattern};
use brinv_core::{BelowSet, Colour, DyadicBox, Fragment, GroupElement, Pattern, Term};
use rand::seq::SliceRandom;
use rand::Rng;

use super::{par_cases, record_error, repro, SuiteResult};
use crate::gen;
use crate::report::{Recorder, SuiteOptions};

fn colour_counts(opts: &SuiteOptions) -> Vec<u8> {
    match opts.s {
        Some(s) => vec![s],
        None => vec![2, 3],
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..n {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push(q);
        }
    }
    out
}

/// A pattern containing `b`: split along its address, one cut at a time.
fn pattern_containing(b: &DyadicBox) -> Pattern {
    let s = b.s();
    let mut p = Pattern::root(s);
    let mut current = DyadicBox::root(s);
    while current != *b {
        let c = Colour::all(s)
            .find(|c| current.addr(*c).len() < b.addr(*c).len())
            .expect("proper prefix in some colour");
        let (low, high) = current.halves(c, DEFAULT_DEPTH_CAP).expect("below cap");
        p = p.expand(&current, c).expect("current is a box of p");
        current = if low.contains(b) { low } else { high };
    }
    p
}

/// Every box with total depth at most `depth`.
fn boxes_up_to(s: u8, depth: usize) -> Vec<DyadicBox> {
    let mut out = vec![DyadicBox::root(s)];
    let mut frontier = out.clone();
    for _ in 0..depth {
        let mut next = Vec::new();
        for b in &frontier {
            for c in Colour::all(s) {
                let (lo, hi) = b.halves(c, DEFAULT_DEPTH_CAP).expect("below cap");
                next.push(lo);
                next.push(hi);
            }
        }
        next.sort();
        next.dedup();
        out.extend(next.iter().copied());
        frontier = next;
    }
    out.sort();
    out.dedup();
    out
}

fn triple_text(g: &GroupElement, h: &GroupElement, k: &GroupElement) -> String {
    format!("{}--\n{}--\n{}", write_element(g), write_element(h), write_element(k))
}

fn group_triples(s: u8, samples: usize, seed: u64) -> Recorder {
    let ids: Vec<u64> = (0..samples as u64).collect();
    par_cases(&ids, |_, &k| {
        let mut rec = Recorder::default();
        rec.case();
        let mut rng = gen::case_rng(seed ^ (0x6772_7570 + s as u64), k);
        let draw = |rng: &mut rand_chacha::ChaCha8Rng| {
            let n = rng.gen_range(1..=5);
            gen::random_element(rng, s, n)
        };
        let (g, h, f) = (draw(&mut rng), draw(&mut rng), draw(&mut rng));
        let input = || triple_text(&g, &h, &f);
        let id = GroupElement::identity(s);
        let outcome = (|| -> brinv_core::Result<()> {
            let left = g.compose(&h)?.compose(&f)?;
            let right = g.compose(&h.compose(&f)?)?;
            rec.check(left.equal(&right)?, "associativity", input);
            rec.check(g.compose(&id)?.equal(&g)? && id.compose(&g)?.equal(&g)?, "identity", input);
            let inv = g.inverse();
            rec.check(
                g.compose(&inv)?.equal(&id)? && inv.compose(&g)?.equal(&id)?,
                "inverse",
                input,
            );
            rec.check(inv.inverse() == g, "double_inverse", input);
            // A finer representative is the same map.
            let dom = Arc::new(g.domain());
            let finer = gen::random_pattern_above(&mut rng, &dom, 2);
            rec.check(g.refine(&finer)?.equal(&g)?, "refinement", input);
            // The image of a random expansion of a domain box.
            let b = *dom.boxes().choose(&mut rng).expect("nonempty");
            let c = Colour::from_index(rng.gen_range(0..s as usize));
            let (lo, _) = b.halves(c, DEFAULT_DEPTH_CAP)?;
            let c2 = Colour::from_index(rng.gen_range(0..s as usize));
            rec.check(commutes_with_expansion(&g, &lo, c2)?, "apply_commutes_with_expansion", input);
            Ok(())
        })();
        if let Err(e) = outcome {
            record_error(&mut rec, e, input);
        }
        rec
    })
}

fn size_law(s: u8, max: usize, rec: &mut Recorder) -> brinv_core::Result<()> {
    for p in enumerate_patterns(s, max, 1_000_000)? {
        rec.case();
        for q in p.expansions(DEFAULT_DEPTH_CAP) {
            rec.check(q.len() == p.len() + 1 && p.leq(&q), "size_law", || write_pattern(&p));
        }
        for q in p.contractions() {
            rec.check(q.len() + 1 == p.len() && q.leq(&p), "size_law", || write_pattern(&p));
        }
    }
    Ok(())
}

fn alpha_commutation(s: u8, depth: usize, rec: &mut Recorder) -> brinv_core::Result<()> {
    for b in boxes_up_to(s, depth) {
        let p = pattern_containing(&b);
        for i in Colour::all(s) {
            for j in Colour::all(s).filter(|j| *j != i) {
                rec.case();
                let split = |first: Colour, second: Colour| -> brinv_core::Result<Pattern> {
                    let (lo, hi) = b.halves(first, DEFAULT_DEPTH_CAP)?;
                    p.expand(&b, first)?.expand(&lo, second)?.expand(&hi, second)
                };
                rec.check(split(i, j)? == split(j, i)?, "alpha_commutation", || {
                    format!("{}box {b}, colours {} {}", write_pattern(&p), i.get(), j.get())
                });
            }
        }
    }
    Ok(())
}

/// `g` stabilizes `Y` exactly when it is `transitive_element(Y, Y, π)` for a
/// permutation `π`, which is then the induced one.
fn stabilizers(s: u8, max: usize, seed: u64) -> brinv_core::Result<Recorder> {
    let ys = enumerate_patterns(s, max, 1_000_000)?;
    Ok(par_cases(&ys, |k, y| {
        let mut rec = Recorder::default();
        let mut rng = gen::case_rng(seed ^ 0x7374_6162, k as u64);
        let perms = permutations(y.len());
        let outcome = (|| -> brinv_core::Result<()> {
            let elems: Vec<GroupElement> = perms
                .iter()
                .map(|p| transitive_element(y, y, p))
                .collect::<brinv_core::Result<_>>()?;
            for (p, g) in perms.iter().zip(&elems) {
                rec.case();
                let induced = g.induced_permutation(y)?;
                rec.check(induced.as_deref() == Some(&p[..]), "stabilizer_permutation", || {
                    format!("{}{}", write_pattern(y), write_element(g))
                });
            }
            // Random elements, some built to stabilize Y.
            for _ in 0..8 {
                rec.case();
                let r = gen::random_element(&mut rng, s, y.len());
                let candidates = [
                    r.clone(),
                    elems.choose(&mut rng).expect("nonempty").compose(&r)?,
                    r.compose(&r.inverse())?.compose(elems.choose(&mut rng).expect("nonempty"))?,
                ];
                for g in candidates {
                    let stab = g.stabilizes(y)?;
                    let mut matched = None;
                    for (p, e) in perms.iter().zip(&elems) {
                        if g.equal(e)? {
                            matched = Some(p.clone());
                            break;
                        }
                    }
                    rec.check(stab == matched.is_some(), "stabilizer_iff", || {
                        format!("{}{}", write_pattern(y), write_element(&g))
                    });
                    if let Some(p) = matched {
                        rec.check(g.induced_permutation(y)? == Some(p), "stabilizer_iff", || {
                            format!("{}{}", write_pattern(y), write_element(&g))
                        });
                    }
                }
            }
            Ok(())
        })();
        if let Err(e) = outcome {
            record_error(&mut rec, e, || write_pattern(y));
        }
        rec
    }))
}

pub(super) fn group_axioms(opts: &SuiteOptions) -> SuiteResult {
    let samples = opts.samples.unwrap_or(1000);
    let mut rec = Recorder::default();
    for s in colour_counts(opts) {
        rec.merge(group_triples(s, samples, opts.seed));
        let mut local = Recorder::default();
        size_law(s, opts.max_size.unwrap_or(if s == 3 { 5 } else { 6 }), &mut local)?;
        alpha_commutation(s, 3, &mut local)?;
        rec.merge(local);
        rec.merge(stabilizers(s, 4, opts.seed)?);
    }
    Ok((rec, opts.s))
}

/// The element of `cands` above all others, if there is exactly one.
fn maximum(cands: &[&BelowSet]) -> Option<BelowSet> {
    let tops: Vec<&&BelowSet> = cands
        .iter()
        .filter(|m| cands.iter().all(|c| c.leq(m).unwrap_or(false)))
        .collect();
    (tops.len() == 1).then(|| (*tops[0]).clone())
}

fn omega_text(a: &BelowSet, omega: &[BelowSet]) -> String {
    let mut out = repro(a);
    for w in omega {
        out.push_str("==== omega\n");
        out.push_str(&write_below_set(w));
    }
    out
}

/// Greedy glb against the maximum of the brute-force interval.
fn glb_oracle_case(a: &BelowSet, rng: &mut impl Rng, budget: usize, rec: &mut Recorder) {
    let interval = match interval_above(a, budget) {
        Ok(i) => i,
        Err(e) => return record_error(rec, e, || repro(a)),
    };
    let zs: Vec<BelowSet> = gamma(a)
        .edges()
        .iter()
        .filter_map(|e| edge_contraction(a, e).ok().map(|z| z.result))
        .collect();
    let mut omegas: Vec<Vec<BelowSet>> = Vec::new();
    for (k, z) in zs.iter().enumerate() {
        omegas.push(vec![z.clone()]);
        for w in &zs[k + 1..] {
            omegas.push(vec![z.clone(), w.clone()]);
        }
    }
    if !zs.is_empty() {
        omegas.push(zs.clone());
    }
    for _ in 0..3 {
        let pick: Vec<BelowSet> = (0..rng.gen_range(1..=3))
            .map(|_| interval.choose(rng).expect("contains Y").clone())
            .collect();
        omegas.push(pick);
    }
    for omega in omegas {
        rec.case();
        let greedy = match glb_above(a, &omega) {
            Ok(g) => g,
            Err(e) => return record_error(rec, e, || omega_text(a, &omega)),
        };
        let cands: Vec<&BelowSet> = interval
            .iter()
            .filter(|w| omega.iter().all(|o| w.leq(o).unwrap_or(false)))
            .collect();
        let brute = maximum(&cands);
        rec.check(brute.as_ref() == Some(&greedy), "glb_oracle", || omega_text(a, &omega));
        let shuffled = glb_above_by(a, &omega, |n| rng.gen_range(0..n));
        rec.check(shuffled.as_ref() == Ok(&greedy), "climb_order", || omega_text(a, &omega));
    }
}

/// `glb_A(Ω) <= glb_A(Λ) = glb_B(Λ)` for `A <= B <= glb_A(Λ)`, `Λ ⊆ Ω`.
fn nested_glb_case(y: &Arc<Pattern>, rng: &mut impl Rng, rec: &mut Recorder) {
    let box_only = rng.gen_bool(0.2);
    let Some(a) = gen::random_proper_below(rng, y, box_only) else {
        return;
    };
    rec.case();
    let k = rng.gen_range(1..=4);
    let omega: Vec<BelowSet> = (0..k)
        .map(|_| {
            let steps = rng.gen_range(0..=y.len());
            gen::walk_up(rng, a.clone(), steps)
        })
        .collect();
    let lambda_len = rng.gen_range(1..=k);
    let lambda = &omega[..lambda_len];
    let input = || omega_text(&a, &omega);
    let outcome = (|| -> brinv_core::Result<()> {
        let g_omega = glb_above(&a, &omega)?;
        let g_lambda = glb_above(&a, lambda)?;
        rec.check(g_omega.leq(&g_lambda)?, "glb_monotone", input);
        // A random B between A and glb_A(Λ).
        let mut b = a.clone();
        for _ in 0..rng.gen_range(0..=3) {
            let ups: Vec<BelowSet> = b
                .expansions()
                .into_iter()
                .filter(|u| u.leq(&g_lambda).unwrap_or(false))
                .collect();
            match ups.choose(rng) {
                Some(u) => b = u.clone(),
                None => break,
            }
        }
        rec.check(glb_above(&b, lambda)? == g_lambda, "glb_base_change", input);
        Ok(())
    })();
    if let Err(e) = outcome {
        record_error(rec, e, input);
    }
}

pub(super) fn glb_laws(opts: &SuiteOptions) -> SuiteResult {
    let mut rec = Recorder::default();
    for s in colour_counts(opts) {
        let max = opts.max_size.unwrap_or(if s == 3 { 5 } else { 6 });
        let ys = gen::all_patterns(s, max, 10 * opts.budget)?;
        rec.merge(par_cases(&ys, |k, y| {
            let mut rec = Recorder::default();
            let mut rng = gen::case_rng(opts.seed ^ (0x676c_6200 + s as u64), k as u64);
            match super::below_sets(y, 2, &mut rng, opts.budget) {
                Ok(sets) => {
                    for a in &sets {
                        glb_oracle_case(a, &mut rng, opts.budget, &mut rec);
                    }
                }
                Err(e) => record_error(&mut rec, e, || write_pattern(y)),
            }
            rec
        }));
        let samples = opts.samples.unwrap_or(1000);
        let ids: Vec<u64> = (0..samples as u64).collect();
        rec.merge(par_cases(&ids, |_, &k| {
            let mut rec = Recorder::default();
            let mut rng = gen::case_rng(opts.seed ^ (0x6c33_3134 + s as u64), k);
            let size = rng.gen_range(2..=8);
            let y = Arc::new(gen::random_pattern(&mut rng, s, size));
            nested_glb_case(&y, &mut rng, &mut rec);
            rec
        }));
    }
    Ok((rec, opts.s))
}

fn lub_scan(s: u8, max: usize, budget: usize) -> brinv_core::Result<Recorder> {
    let all = enumerate_patterns(s, max, 10 * budget)?;
    let index: HashMap<&Pattern, u32> = all.iter().zip(0u32..).collect();
    // Upper bounds within the enumerated range, inverted from lower sets.
    let mut below: Vec<Vec<u32>> = Vec::with_capacity(all.len());
    for p in &all {
        let base = Arc::new(p.clone());
        let mut ids: Vec<u32> = lower_set(&base, true, budget)?
            .iter()
            .filter_map(|w| w.as_pattern())
            .filter_map(|q| index.get(&q).copied())
            .collect();
        ids.sort_unstable();
        below.push(ids);
    }
    let mut uppers: HashMap<(u32, u32), Vec<u32>> = HashMap::new();
    for (k, ids) in below.iter().enumerate() {
        for (x, &p) in ids.iter().enumerate() {
            for &q in &ids[x..] {
                uppers.entry((p, q)).or_default().push(k as u32);
            }
        }
    }
    let firsts: Vec<u32> = (0..all.len() as u32).collect();
    Ok(par_cases(&firsts, |_, &p| {
        let mut rec = Recorder::default();
        for q in p..all.len() as u32 {
            rec.case();
            let (pp, qq) = (&all[p as usize], &all[q as usize]);
            let input = || format!("{}{}", write_pattern(pp), write_pattern(qq));
            let lub = pp.lub(qq);
            match uppers.get(&(p, q)) {
                Some(ub) => {
                    let minimal: Vec<&Pattern> = ub
                        .iter()
                        .map(|&k| &all[k as usize])
                        .filter(|m| ub.iter().all(|&k| !all[k as usize].leq(m) || all[k as usize] == **m))
                        .collect();
                    rec.check(minimal.len() == 1, "unique_minimal_upper_bound", input);
                    rec.check(lub.as_ref().ok() == minimal.first().copied(), "lub_oracle", input);
                }
                None => {
                    rec.stat("no_upper_bound_in_range", 1);
                    rec.check(lub.map_or(true, |l| l.len() > max), "lub_out_of_range", input);
                }
            }
        }
        rec
    }))
}

pub(super) fn lub_minimality(opts: &SuiteOptions) -> SuiteResult {
    let mut rec = Recorder::default();
    for s in colour_counts(opts) {
        let max = opts.max_size.unwrap_or(if s == 3 { 5 } else { 6 });
        rec.merge(lub_scan(s, max, opts.budget)?);
    }
    Ok((rec, opts.s))
}

/// A random contraction term for `f`: random free cuts, and boxes sometimes
/// kept whole.
fn random_term(f: &Fragment, base: &Pattern, rng: &mut impl Rng) -> Term {
    if let Some(r) = f.as_box(base) {
        if f.is_trivial() || rng.gen_bool(0.3) {
            return Term::leaf(r);
        }
    }
    let mut free: Vec<Colour> = Colour::all(base.s()).filter(|c| f.split(*c).is_some()).collect();
    free.shuffle(rng);
    let c = free[0];
    let (lo, hi) = f.split(c).expect("free cut");
    Term::contract(c, random_term(&lo, base, rng), random_term(&hi, base, rng))
}

fn canonical_case(w: &BelowSet, rng: &mut impl Rng, rec: &mut Recorder) {
    for f in w.elems() {
        let t1 = random_term(f, w.base(), rng);
        let t2 = random_term(f, w.base(), rng);
        let ok = canonicalize(&t1, w.base()).as_ref() == Ok(f) && canonicalize(&t2, w.base()).as_ref() == Ok(f);
        rec.check(ok, "term_rebuild", || format!("{}{t1:?}\n{t2:?}", repro(w)));
    }
    for x in w.expansions() {
        let input = || format!("{}---- expanded to\n{}", repro(w), repro(&x));
        rec.check(x.len() == w.len() + 1, "size_law", input);
        rec.check(w.leq(&x).unwrap_or(false) && !x.leq(w).unwrap_or(true), "antisymmetry", input);
        rec.check(x.contractions().contains(w), "contraction_inverse", input);
    }
}

pub(super) fn fragment_canonical(opts: &SuiteOptions) -> SuiteResult {
    let mut rec = Recorder::default();
    for s in colour_counts(opts) {
        let max = opts.max_size.unwrap_or(if s == 3 { 3 } else { 4 });
        let mut ys = gen::all_patterns(s, max, 10 * opts.budget)?;
        // One orbit per size, so a few representatives of the next size.
        let mut rng = gen::case_rng(opts.seed, 0x6672_6167 + s as u64);
        for _ in 0..3 {
            ys.push(Arc::new(gen::random_pattern(&mut rng, s, max + 1)));
        }
        rec.merge(par_cases(&ys, |k, y| {
            let mut rec = Recorder::default();
            let mut rng = gen::case_rng(opts.seed ^ (0x6361_6e00 + s as u64), k as u64);
            match lower_set(y, false, opts.budget) {
                Ok(all) => {
                    rec.stat(&format!("lower_set_size_{}", y.len()), all.len() as u64);
                    for w in &all {
                        rec.case();
                        canonical_case(w, &mut rng, &mut rec);
                    }
                }
                Err(e) => record_error(&mut rec, e, || write_pattern(y)),
            }
            rec
        }));
        let samples = opts.samples.unwrap_or(2000);
        let ids: Vec<u64> = (0..samples as u64).collect();
        rec.merge(par_cases(&ids, |_, &k| {
            let mut rec = Recorder::default();
            let mut rng = gen::case_rng(opts.seed ^ (0x7465_726d + s as u64), k);
            let size = rng.gen_range(2..=9);
            let y = Arc::new(gen::random_pattern(&mut rng, s, size));
            if let Some(w) = gen::random_proper_below(&mut rng, &y, false) {
                rec.case();
                canonical_case(&w, &mut rng, &mut rec);
            }
            rec
        }));
    }
    Ok((rec, opts.s))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutations_are_complete() {
        assert_eq!(permutations(4).len(), 24);
        let mut p = permutations(3);
        p.sort();
        p.dedup();
        assert_eq!(p.len(), 6);
    }

    #[test]
    fn pattern_containing_contains() {
        let b = DyadicBox::from_fields(&["01", "1", "e"]).unwrap();
        let p = pattern_containing(&b);
        assert!(p.contains(&b));
        assert_eq!(p.len(), 4);
    }

    #[test]
    fn boxes_by_depth() {
        assert_eq!(boxes_up_to(2, 1).len(), 5);
    }
}
