//! Connectivity of the slices `K_Y` and the bound functions.

use std::sync::Arc;

use brinv_core::complex::{betti, filtration_stats, k_y, nu_mu_alpha, sigma_r, SliceOptions};
use brinv_core::text::write_pattern;
use brinv_core::Pattern;
use num_bigint::BigUint;

use super::{par_cases, record_error, SuiteResult};
use crate::gen;
use crate::report::{Recorder, SuiteOptions};

/// `μ_r(t) = (t+1)!(r+4) + 2 Σ_{k=1..t} (t+1)!/(k+1)!`.
fn mu_closed_form(r: u64, t: u64) -> BigUint {
    let fact = |n: u64| (1..=n).fold(BigUint::from(1u32), |acc, k| acc * k);
    let top = fact(t + 1);
    let mut value = &top * (r + 4);
    for k in 1..=t {
        value += BigUint::from(2u32) * (&top / fact(k + 1));
    }
    value
}

fn bounds(rec: &mut Recorder) {
    let (nu00, _, alpha0) = nu_mu_alpha(0, 0);
    let (_, mu40, _) = nu_mu_alpha(4, 0);
    let (_, _, alpha1) = nu_mu_alpha(0, 1);
    rec.case();
    rec.check(nu00 == 4u32.into() && alpha0 == 4u32.into(), "nu_0_0", || format!("{nu00} {alpha0}"));
    rec.check(mu40 == 8u32.into(), "mu_4_0", || mu40.to_string());
    rec.check(alpha1 == 18u32.into(), "alpha_1", || alpha1.to_string());
    for r in 0..=8u64 {
        for t in 0..=4u64 {
            rec.case();
            let (nu, mu, _) = nu_mu_alpha(r, t);
            let closed = mu_closed_form(r, t);
            rec.check(mu == closed && nu == mu, "recurrence", || format!("r={r} t={t}: {mu} vs {closed}"));
            if t > 0 {
                let (_, prev, _) = nu_mu_alpha(r, t - 1);
                rec.check(mu == BigUint::from(2u32) + BigUint::from(t + 1) * prev, "recurrence", || {
                    format!("r={r} t={t}")
                });
            }
        }
    }
}

/// β₀ of the full slice of `y` (built to dimension 1).
fn full_beta0(y: &Arc<Pattern>, budget: usize, rec: &mut Recorder) -> Option<(usize, usize, bool)> {
    let outcome = (|| {
        let slice = k_y(y, SliceOptions { box_only: false, budget })?;
        let cx = slice.order_complex(1, budget.saturating_mul(20), |_| true)?;
        rec.check(cx.boundary_squares_to_zero(), "boundary_squares_to_zero", || write_pattern(y));
        let h = betti(&cx, 0)?;
        Ok::<_, brinv_core::Error>((h.betti[0], slice.len(), slice.minimum().is_some()))
    })();
    match outcome {
        Ok(v) => Some(v),
        Err(e) => {
            record_error(rec, e, || write_pattern(y));
            None
        }
    }
}

pub(super) fn scan(opts: &SuiteOptions) -> SuiteResult {
    let s = opts.s.unwrap_or(2);
    let full_size = opts.max_size.unwrap_or(4);
    let mut rec = Recorder::default();
    bounds(&mut rec);

    let ys = gen::all_patterns(s, full_size.max(2), 10 * opts.budget)?;
    rec.merge(par_cases(&ys, |_, y| {
        let mut rec = Recorder::default();
        let n = y.len();
        if n != 2 && n != full_size {
            return rec;
        }
        rec.case();
        if let Some((b0, vertices, has_min)) = full_beta0(y, opts.budget, &mut rec) {
            rec.stat(&format!("size{n}_patterns"), 1);
            rec.stat(&format!("size{n}_vertices"), vertices as u64);
            if s == 2 && n == 2 {
                rec.check(b0 == 4 && vertices == 4 && !has_min, "beta0_size2", || write_pattern(y));
            } else if s == 2 && n == 4 {
                rec.check(b0 == 1, "beta0_size4", || format!("{}beta0 = {b0}", write_pattern(y)));
            } else {
                rec.stat(&format!("size{n}_beta0_{b0}"), 1);
            }
        }
        rec
    }));

    // Box-only slices: a cone over the root for two colours.
    let box_max = if s == 2 { 6 } else { 5 };
    let ys = gen::all_patterns(s, box_max, 10 * opts.budget)?;
    rec.merge(par_cases(&ys, |_, y| {
        let mut rec = Recorder::default();
        rec.case();
        let outcome = (|| {
            let slice = k_y(y, SliceOptions { box_only: true, budget: opts.budget })?;
            let has_min = slice.minimum().is_some();
            if s == 2 {
                rec.check(has_min, "box_minimum", || write_pattern(y));
            } else {
                rec.stat(if has_min { "box_minimum_present" } else { "box_minimum_absent" }, 1);
            }
            if y.len() <= 4 {
                let cx = slice.order_complex(2, opts.budget, |_| true)?;
                let h = betti(&cx, 1)?;
                if s == 2 {
                    rec.check(h.betti == [1, 0], "box_cone", || write_pattern(y));
                }
                let whole = sigma_r(&slice, y.len(), 2, opts.budget)?;
                let empty = sigma_r(&slice, 0, 2, opts.budget)?;
                rec.check(whole.simplices == cx.simplices && empty.is_empty(), "sigma_r", || write_pattern(y));
            }
            Ok::<_, brinv_core::Error>(())
        })();
        if let Err(e) = outcome {
            record_error(&mut rec, e, || write_pattern(y));
        }
        rec
    }));

    // Pattern counts and transitivity on each size.
    let expected: &[usize] = match s {
        1 => &[1, 1, 2, 5, 14],
        2 => &[1, 2, 8, 39, 212],
        _ => &[1, 3, 18, 132, 1080],
    };
    match filtration_stats(s, expected.len(), 10 * opts.budget) {
        Ok(rows) => {
            rec.case();
            let counts: Vec<usize> = rows.iter().map(|r| r.patterns).collect();
            rec.check(counts == expected, "filtration_counts", || format!("{counts:?}"));
            rec.check(rows.iter().all(|r| r.single_orbit), "single_orbit", || format!("{rows:?}"));
        }
        Err(e) => record_error(&mut rec, e, || format!("s={s}")),
    }
    Ok((rec, Some(s)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_matches_small_values() {
        assert_eq!(mu_closed_form(0, 0), 4u32.into());
        assert_eq!(mu_closed_form(4, 1), 18u32.into());
        assert_eq!(mu_closed_form(0, 1), 10u32.into());
    }
}
