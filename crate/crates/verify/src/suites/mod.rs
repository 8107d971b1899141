mod algebra;
mod connectivity;
mod graphs;
mod pushing;
mod regression;

use std::sync::Arc;
use std::time::Instant;

use brinv_core::{BelowSet, Error as CoreError, Pattern};
use rand::Rng;
use rayon::prelude::*;

use crate::gen;
use crate::report::{Recorder, SuiteOptions, SuiteReport};

#[derive(Debug, thiserror::Error)]
pub enum VerifyError {
    #[error("unknown suite `{0}` (expected one of: {list})", list = SUITES.join(", "))]
    UnknownSuite(String),
    #[error("invalid option: {0}")]
    InvalidOption(String),
    #[error(transparent)]
    Core(#[from] CoreError),
}

pub const SUITES: [&str; 12] = [
    "tec2a",
    "tec2",
    "graphs",
    "general_2v",
    "pushing_2v",
    "pushing_3v",
    "openbook_regression",
    "group_axioms",
    "glb_laws",
    "lub_minimality",
    "connectivity_scan",
    "fragment_canonical",
];

/// Runs the named suite. Budget overruns are reported in the returned
/// report rather than as an error.
pub fn run_suite(name: &str, opts: &SuiteOptions) -> Result<SuiteReport, VerifyError> {
    if let Some(s) = opts.s {
        if !(1..=3).contains(&s) {
            return Err(VerifyError::InvalidOption(format!("s={s} (expected 1, 2 or 3)")));
        }
    }
    let start = Instant::now();
    let outcome = match name {
        "tec2a" => graphs::tec2a(opts),
        "tec2" => graphs::tec2(opts),
        "graphs" => graphs::graphs(opts),
        "general_2v" => pushing::general_2v(opts),
        "pushing_2v" => pushing::pushing(opts, 2),
        "pushing_3v" => pushing::pushing(opts, 3),
        "openbook_regression" => regression::openbook(opts),
        "group_axioms" => algebra::group_axioms(opts),
        "glb_laws" => algebra::glb_laws(opts),
        "lub_minimality" => algebra::lub_minimality(opts),
        "connectivity_scan" => connectivity::scan(opts),
        "fragment_canonical" => algebra::fragment_canonical(opts),
        other => return Err(VerifyError::UnknownSuite(other.to_string())),
    };
    let (rec, s) = match outcome {
        Err(VerifyError::Core(e)) if is_budget(&e) => {
            let mut rec = Recorder::default();
            rec.budget(e.to_string());
            (rec, opts.s)
        }
        other => other?,
    };
    let elapsed = start.elapsed().as_millis() as u64;
    Ok(rec.into_report(name, opts, s, elapsed))
}

type SuiteResult = Result<(Recorder, Option<u8>), VerifyError>;

fn is_budget(e: &CoreError) -> bool {
    matches!(e, CoreError::BudgetExceeded(_) | CoreError::StarSearchBudgetExceeded(_))
}

/// Records a core error met inside a case: budget overruns go in-band,
/// anything else is a failure of the case.
fn record_error(rec: &mut Recorder, e: CoreError, input: impl FnOnce() -> String) {
    if is_budget(&e) {
        rec.budget(e.to_string());
    } else {
        rec.fail("error", format!("{e}\n{}", input()));
    }
}

/// Maps `f` over `items` in parallel and merges the per-item recorders in
/// item order.
fn par_cases<T: Sync>(items: &[T], f: impl Fn(usize, &T) -> Recorder + Sync + Send) -> Recorder {
    let parts: Vec<Recorder> = items.par_iter().enumerate().map(|(k, x)| f(k, x)).collect();
    Recorder::merge_all(parts)
}

fn repro(a: &BelowSet) -> String {
    brinv_core::text::write_below_set(a)
}

/// Every box-world `A < Y` plus `exotic` random sets reached through
/// arbitrary contractions.
fn below_sets(
    y: &Arc<Pattern>,
    exotic: usize,
    rng: &mut impl Rng,
    budget: usize,
) -> Result<Vec<BelowSet>, CoreError> {
    let mut out: Vec<BelowSet> = brinv_core::fragments::lower_set(y, true, budget)?
        .into_iter()
        .filter(|w| !w.is_top())
        .collect();
    for _ in 0..exotic {
        if let Some(a) = gen::random_proper_below(rng, y, false) {
            if !out.contains(&a) {
                out.push(a);
            }
        }
    }
    Ok(out)
}

/// Runs `per_case` on every `(Y, A)` with `Y` hierarchical of size
/// `2..=max_size` and `A` from [`below_sets`].
fn scan_pairs(
    s: u8,
    max_size: usize,
    exotic: usize,
    opts: &SuiteOptions,
    per_case: impl Fn(&BelowSet, &mut Recorder) + Sync + Send,
) -> Result<Recorder, VerifyError> {
    let ys = gen::all_patterns(s, max_size, 10 * opts.budget)?;
    Ok(par_cases(&ys, |k, y| {
        let mut rec = Recorder::default();
        let mut rng = gen::case_rng(opts.seed, k as u64);
        match below_sets(y, exotic, &mut rng, opts.budget) {
            Ok(sets) => {
                for a in &sets {
                    rec.case();
                    per_case(a, &mut rec);
                }
            }
            Err(e) => record_error(&mut rec, e, || brinv_core::text::write_pattern(y)),
        }
        rec
    }))
}
