//! The open-book and staircase regressions.

use std::collections::{HashSet, VecDeque};

use brinv_core::fragments::glb_above;
use brinv_core::gamma::{classify, enveloping_stack, gamma, star_witness};
use brinv_core::pushing::{choose_edge_2v, choose_edge_3v};
use brinv_core::text::write_below_set;
use brinv_core::{BelowSet, Colour, ComponentShape, Edge};

use super::{SuiteResult, VerifyError};
use crate::fixtures::{self, OpenBook};
use crate::report::{Recorder, SuiteOptions};

/// Every `W` with `lower <= W <= upper`, by downward search from `upper`.
pub(crate) fn interval_between(
    lower: &BelowSet,
    upper: &BelowSet,
    budget: usize,
) -> brinv_core::Result<Vec<BelowSet>> {
    let mut seen: HashSet<BelowSet> = HashSet::from([upper.clone()]);
    let mut queue = VecDeque::from([upper.clone()]);
    let mut out = Vec::new();
    while let Some(w) = queue.pop_front() {
        for z in w.contractions() {
            if !seen.contains(&z) && lower.leq(&z)? {
                if seen.len() >= budget {
                    return Err(brinv_core::Error::BudgetExceeded(budget));
                }
                seen.insert(z.clone());
                queue.push_back(z);
            }
        }
        out.push(w);
    }
    Ok(out)
}

fn colour(c: u8) -> Colour {
    Colour::new(c, 3).expect("three colours")
}

fn open_book_case(ob: &OpenBook, rec: &mut Recorder, budget: usize) -> Result<(), VerifyError> {
    rec.case();
    let n = ob.base.len();
    let tag = format!("open_book_{n}");
    let input = || format!("{}{}", write_below_set(&ob.y0), write_below_set(&ob.y1));
    let root = BelowSet::root(ob.base.clone())?;
    let m = glb_above(&root, &[ob.y0.clone(), ob.y1.clone()])?;
    rec.stat(&format!("{tag}_involves"), m.involves() as u64);
    rec.check(m.involves() == ob.expected_involves, &format!("{tag}_glb"), input);

    // Exhaustive oracle: all common lower bounds above the root.
    let common: Vec<BelowSet> = interval_between(&root, &ob.y0, budget)?
        .into_iter()
        .filter(|w| w.leq(&ob.y1).unwrap_or(false))
        .collect();
    rec.stat(&format!("{tag}_common_lower_bounds"), common.len() as u64);
    rec.check(common == [root.clone()], &format!("{tag}_oracle"), input);
    rec.check(m == root, &format!("{tag}_glb_is_root"), input);

    // No square of Γ_root carries both contractions.
    let g = gamma(&root);
    let l = &ob.labels;
    let (one, two, three) = (l[0], l[1], l[2]);
    let e0 = Edge::new(one, two, colour(2));
    let e1 = Edge::new(two, three, colour(1));
    rec.check(g.has_edge(&e0) && g.has_edge(&e1), &format!("{tag}_edges_present"), input);
    let closes_square = (0..n as u16).any(|w| {
        w != two
            && g.edges().iter().any(|e| e.touches(w) && e.touches(one))
            && g.edges().iter().any(|e| e.touches(w) && e.touches(three))
    });
    rec.check(!closes_square, &format!("{tag}_no_square"), input);

    // Halving the cubes adds colour-3 edges that join the component, so the
    // shape checks apply before the refinement only.
    if n <= 8 {
        let comp = g.component_of(two);
        let shape = classify(&comp);
        let middle = Edge::new(l[1], l[4], colour(3));
        rec.check(
            shape == ComponentShape::OpenBook { middle },
            &format!("{tag}_shape"),
            input,
        );
        rec.check(star_witness(&root, &comp)?.is_some(), &format!("{tag}_star"), input);
        rec.check(choose_edge_3v(&root)?.edge == middle, &format!("{tag}_choice"), input);
    }
    if n == 7 {
        let comp = g.component_of(two);
        rec.check(enveloping_stack(&root, &comp)?.len() == 8, "open_book_7_stack", input);
        let e = |a: usize, b: usize, c: u8| Edge::new(l[a - 1], l[b - 1], colour(c));
        let mut expected = vec![
            e(1, 2, 2),
            e(2, 3, 1),
            e(4, 5, 1),
            e(5, 6, 2),
            e(3, 4, 3),
            e(2, 5, 3),
            e(1, 6, 3),
        ];
        expected.sort();
        rec.check(g.edges() == expected, "open_book_7_gamma", input);
        let isolated: Vec<_> = g.components().into_iter().filter(|c| c.edges.is_empty()).collect();
        rec.check(
            isolated.len() == 1 && isolated[0].vertices.len() == 1,
            "open_book_7_isolated",
            input,
        );
    }
    Ok(())
}

fn staircase_case(rec: &mut Recorder) -> Result<(), VerifyError> {
    rec.case();
    let a = brinv_core::text::parse_below_set(fixtures::STAIRCASE)?;
    let [one, two, three, four, five, six] = fixtures::staircase_labels(a.base());
    let c1 = Colour::new(1, 2)?;
    let c2 = Colour::new(2, 2)?;
    let input = || write_below_set(&a);
    rec.check(a.length(five) == 2, "staircase_length", input);
    let mut glueable = Vec::new();
    let n = a.base().len() as u16;
    for i in 0..n {
        for j in i + 1..n {
            if let Some(c) = a.glueable(i, j) {
                glueable.push(Edge::new(i, j, c));
            }
        }
    }
    glueable.sort();
    let mut expected = vec![Edge::new(one, two, c1), Edge::new(five, six, c2)];
    expected.sort();
    rec.check(glueable == expected, "staircase_glueable", input);
    let maximal: Vec<u16> = (0..n).filter(|v| a.locally_maximal(*v)).collect();
    let mut expected_max = vec![one, two, three, five, six];
    expected_max.sort();
    rec.check(maximal == expected_max && !a.locally_maximal(four), "staircase_local_max", input);
    rec.check(choose_edge_2v(&a)?.edge == Edge::new(one, two, c1), "staircase_choice", input);
    Ok(())
}

pub(super) fn openbook(opts: &SuiteOptions) -> SuiteResult {
    let mut rec = Recorder::default();
    for ((name, text), fresh) in fixtures::GOLDEN.iter().zip(fixtures::rendered()) {
        rec.check(fresh == *text, "golden_bytes", || name.to_string());
    }
    for ob in fixtures::open_books()? {
        if let Err(e) = open_book_case(&ob, &mut rec, opts.budget) {
            match e {
                VerifyError::Core(e) => super::record_error(&mut rec, e, || write_below_set(&ob.y0)),
                other => return Err(other),
            }
        }
    }
    if let Err(e) = staircase_case(&mut rec) {
        match e {
            VerifyError::Core(e) => super::record_error(&mut rec, e, || fixtures::STAIRCASE.to_string()),
            other => return Err(other),
        }
    }
    Ok((rec, None))
}
