//! Desk-scale complexes: the slice `K_Y`, order complexes, `Σ_r`, integer
//! homology and the bound functions `ν`, `μ`, `α`.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};

use crate::boxes::{enumerate_patterns, Pattern};
use crate::error::{Error, Result};
use crate::fragments::{lower_set, BelowSet};
use crate::group::transitive_element;
use crate::snf::{invariant_factors_exact, SparseMatrix};

/// Vertices of `K_Y` (or its box-only part) with the order among them.
#[derive(Clone, Debug)]
pub struct PosetSlice {
    base: Arc<Pattern>,
    vertices: Vec<BelowSet>,
    /// `above[v]`: indices `w` with `v < w`.
    above: Vec<Vec<u32>>,
}

#[derive(Clone, Copy, Debug)]
pub struct SliceOptions {
    pub box_only: bool,
    pub budget: usize,
}

impl Default for SliceOptions {
    fn default() -> Self {
        SliceOptions {
            box_only: false,
            budget: 200_000,
        }
    }
}

/// All `W < Y` by downward search.
pub fn k_y(base: &Arc<Pattern>, opts: SliceOptions) -> Result<PosetSlice> {
    let mut vertices: Vec<BelowSet> = lower_set(base, opts.box_only, opts.budget)?
        .into_iter()
        .filter(|w| !w.is_top())
        .collect();
    vertices.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.elems().cmp(b.elems())));
    PosetSlice::from_vertices(base.clone(), vertices)
}

impl PosetSlice {
    pub fn from_vertices(base: Arc<Pattern>, vertices: Vec<BelowSet>) -> Result<PosetSlice> {
        let n = vertices.len();
        let mut above = vec![Vec::new(); n];
        for i in 0..n {
            for j in 0..n {
                if vertices[i].len() < vertices[j].len() && vertices[i].leq(&vertices[j])? {
                    above[i].push(j as u32);
                }
            }
        }
        Ok(PosetSlice {
            base,
            vertices,
            above,
        })
    }

    pub fn base(&self) -> &Arc<Pattern> {
        &self.base
    }

    pub fn vertices(&self) -> &[BelowSet] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn relation_count(&self) -> usize {
        self.above.iter().map(Vec::len).sum()
    }

    /// A vertex below every other one, if any.
    pub fn minimum(&self) -> Option<usize> {
        (0..self.len()).find(|&v| self.above[v].len() + 1 == self.len())
    }

    /// Order complex up to dimension `max_dim`, keeping the chains whose
    /// least vertex satisfies `keep`.
    pub fn order_complex(
        &self,
        max_dim: usize,
        budget: usize,
        keep: impl Fn(&BelowSet) -> bool,
    ) -> Result<OrderComplex> {
        let mut simplices: Vec<Vec<Vec<u32>>> = vec![Vec::new(); max_dim + 1];
        let mut total = 0usize;
        let mut stack: Vec<u32> = Vec::new();
        for v in 0..self.len() {
            if !keep(&self.vertices[v]) {
                continue;
            }
            stack.clear();
            stack.push(v as u32);
            self.extend_chains(&mut stack, max_dim, budget, &mut total, &mut simplices)?;
        }
        for dim in simplices.iter_mut() {
            dim.sort();
        }
        Ok(OrderComplex { simplices })
    }

    fn extend_chains(
        &self,
        stack: &mut Vec<u32>,
        max_dim: usize,
        budget: usize,
        total: &mut usize,
        out: &mut [Vec<Vec<u32>>],
    ) -> Result<()> {
        *total += 1;
        if *total > budget {
            return Err(Error::BudgetExceeded(budget));
        }
        out[stack.len() - 1].push(stack.clone());
        if stack.len() > max_dim {
            return Ok(());
        }
        let last = *stack.last().expect("nonempty") as usize;
        for &w in &self.above[last] {
            stack.push(w);
            self.extend_chains(stack, max_dim, budget, total, out)?;
            stack.pop();
        }
        Ok(())
    }
}

/// Simplices are strictly increasing chains of vertex indices, grouped by
/// dimension and sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderComplex {
    pub simplices: Vec<Vec<Vec<u32>>>,
}

impl OrderComplex {
    pub fn top_dim(&self) -> usize {
        self.simplices.len() - 1
    }

    pub fn counts(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.iter().all(Vec::is_empty)
    }

    /// `∂_k`, one row per `k`-simplex, one column per `(k-1)`-face.
    pub fn boundary(&self, k: usize) -> SparseMatrix<i64> {
        if k == 0 || k > self.top_dim() {
            let rows = self.simplices.get(k).map_or(0, Vec::len);
            let cols = if k == 0 { 0 } else { self.simplices[k - 1].len() };
            return SparseMatrix::zeros(rows, cols);
        }
        let faces: HashMap<&[u32], usize> = self.simplices[k - 1]
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_slice(), i))
            .collect();
        let mut m = SparseMatrix::zeros(self.simplices[k].len(), self.simplices[k - 1].len());
        let mut face = Vec::with_capacity(k);
        for (row, simplex) in self.simplices[k].iter().enumerate() {
            for drop in 0..=k {
                face.clear();
                face.extend(simplex.iter().enumerate().filter(|(p, _)| *p != drop).map(|(_, v)| *v));
                let col = faces[face.as_slice()];
                m.push(row, col, if drop % 2 == 0 { 1 } else { -1 });
            }
        }
        m
    }

    /// `∂_{k+1} ∂_k = 0` for every stored pair of dimensions.
    pub fn boundary_squares_to_zero(&self) -> bool {
        (2..=self.top_dim()).all(|k| self.boundary(k).mul(&self.boundary(k - 1)).is_zero())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homology {
    pub betti: Vec<usize>,
    /// Invariant factors above 1 of `H_k`.
    pub torsion: Vec<Vec<BigInt>>,
}

/// Betti numbers and torsion up to `max_dim`; the complex must be built to
/// dimension `max_dim + 1`.
pub fn betti(cx: &OrderComplex, max_dim: usize) -> Result<Homology> {
    if cx.top_dim() < max_dim + 1 {
        return Err(Error::PreconditionViolated(format!(
            "complex built to dimension {} but homology requested to {}",
            cx.top_dim(),
            max_dim
        )));
    }
    let factors: Vec<Vec<BigInt>> = (0..=max_dim + 1)
        .map(|k| {
            if k == 0 {
                Vec::new()
            } else {
                invariant_factors_exact(&cx.boundary(k))
            }
        })
        .collect();
    let mut out = Homology {
        betti: Vec::new(),
        torsion: Vec::new(),
    };
    let one = BigInt::from(1);
    for k in 0..=max_dim {
        let n = cx.simplices[k].len();
        out.betti.push(n - factors[k].len() - factors[k + 1].len());
        out.torsion
            .push(factors[k + 1].iter().filter(|f| **f != one).cloned().collect());
    }
    Ok(out)
}

/// `Σ_r`: chains whose least vertex involves at most `r` leaves.
pub fn sigma_r(slice: &PosetSlice, r: usize, max_dim: usize, budget: usize) -> Result<OrderComplex> {
    slice.order_complex(max_dim, budget, |w| w.in_c_r(r))
}

/// `(ν_r(t), μ_r(t), α(t))`.
pub fn nu_mu_alpha(r: u64, t: u64) -> (BigUint, BigUint, BigUint) {
    let mu = mu_fn(r, t);
    (mu.clone(), mu, mu_fn(4 * t, t))
}

/// `μ_r(0) = r + 4`, `μ_r(t) = 2 + (t + 1) μ_r(t - 1)`.
fn mu_fn(r: u64, t: u64) -> BigUint {
    let mut value = BigUint::from(r + 4);
    for k in 1..=t {
        value = BigUint::from(2u32) + BigUint::from(k + 1) * value;
    }
    value
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationRow {
    pub size: usize,
    pub patterns: usize,
    /// Every pattern of this size is reached from the first one.
    pub single_orbit: bool,
}

/// Pattern counts per size and transitivity of the group on each size.
pub fn filtration_stats(s: u8, n: usize, budget: usize) -> Result<Vec<FiltrationRow>> {
    let all = enumerate_patterns(s, n, budget)?;
    let mut rows = Vec::new();
    for size in 1..=n {
        let same: Vec<&Pattern> = all.iter().filter(|p| p.len() == size).collect();
        let mut single_orbit = true;
        if let Some(first) = same.first() {
            let identity: Vec<usize> = (0..size).collect();
            for other in &same {
                let g = transitive_element(first, other, &identity)?;
                let hit = first
                    .boxes()
                    .iter()
                    .zip(other.boxes())
                    .all(|(b, z)| g.apply_box(b).ok() == Some(*z));
                single_orbit &= hit;
            }
        }
        rows.push(FiltrationRow {
            size,
            patterns: same.len(),
            single_orbit,
        });
    }
    Ok(rows)
}
