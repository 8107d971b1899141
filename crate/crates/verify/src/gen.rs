//! Seeded generators for patterns, below-sets, chains and group elements.

use std::sync::Arc;

use brinv_core::boxes::{enumerate_patterns, DEFAULT_DEPTH_CAP};
use brinv_core::group::transitive_element;
use brinv_core::{BelowSet, Chain, Colour, GroupElement, Pattern};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Independent stream `k` of the generator seeded by `seed`.
pub fn case_rng(seed: u64, k: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(k);
    rng
}

/// Root followed by `size - 1` uniformly chosen expansions.
pub fn random_pattern(rng: &mut impl Rng, s: u8, size: usize) -> Pattern {
    let mut p = Pattern::root(s);
    while p.len() < size {
        let b = p.boxes()[rng.gen_range(0..p.len())];
        let c = Colour::from_index(rng.gen_range(0..s as usize));
        if let Ok(q) = p.expand_capped(&b, c, DEFAULT_DEPTH_CAP) {
            p = q;
        }
    }
    p
}

/// Up to `steps` random expansions of `p`.
pub fn random_pattern_above(rng: &mut impl Rng, p: &Pattern, steps: usize) -> Pattern {
    let mut p = p.clone();
    for _ in 0..steps {
        match p.expansions(DEFAULT_DEPTH_CAP).choose(rng) {
            Some(q) => p = q.clone(),
            None => break,
        }
    }
    p
}

/// Up to `steps` random simple contractions from the top (exotic ones
/// included unless `box_only`).
pub fn random_below(rng: &mut impl Rng, base: &Arc<Pattern>, steps: usize, box_only: bool) -> BelowSet {
    walk_down(rng, BelowSet::top(base.clone()), steps, box_only)
}

/// Up to `steps` random simple contractions starting from `w`.
pub fn walk_down(rng: &mut impl Rng, mut w: BelowSet, steps: usize, box_only: bool) -> BelowSet {
    for _ in 0..steps {
        let next = if box_only { w.box_contractions() } else { w.contractions() };
        match next.choose(rng) {
            Some(z) => w = z.clone(),
            None => break,
        }
    }
    w
}

/// Up to `steps` random expansions starting from `w`.
pub fn walk_up(rng: &mut impl Rng, mut w: BelowSet, steps: usize) -> BelowSet {
    for _ in 0..steps {
        match w.expansions().choose(rng) {
            Some(z) => w = z.clone(),
            None => break,
        }
    }
    w
}

/// A strictly proper below-set, or `None` when `|Y| = 1`.
pub fn random_proper_below(rng: &mut impl Rng, base: &Arc<Pattern>, box_only: bool) -> Option<BelowSet> {
    if base.len() < 2 {
        return None;
    }
    let steps = rng.gen_range(1..base.len());
    Some(random_below(rng, base, steps, box_only))
}

/// A chain `A_t < ... < A_0 < Y`; `None` if `Y` is too small for `t`.
pub fn random_chain(rng: &mut impl Rng, base: &Arc<Pattern>, t: usize, box_only: bool) -> Option<Chain> {
    if base.len() < t + 2 {
        return None;
    }
    let mut vertices = Vec::with_capacity(t + 1);
    let mut current = BelowSet::top(base.clone());
    for k in 0..=t {
        // Leave room for the vertices still to come.
        let room = current.len() - 1 - (t - k);
        let steps = rng.gen_range(1..=room.clamp(1, 2));
        let next = walk_down(rng, current.clone(), steps, box_only);
        if next.len() == current.len() {
            return None;
        }
        vertices.push(next.clone());
        current = next;
    }
    Chain::new(vertices).ok()
}

/// A random element sending a random pattern of the given size to another
/// by a random bijection.
pub fn random_element(rng: &mut impl Rng, s: u8, size: usize) -> GroupElement {
    let y = random_pattern(rng, s, size);
    let z = random_pattern(rng, s, size);
    let mut sigma: Vec<usize> = (0..size).collect();
    sigma.shuffle(rng);
    transitive_element(&y, &z, &sigma).expect("sizes agree")
}

/// Hierarchical patterns of size `2..=max_size` (the root is skipped).
pub fn all_patterns(s: u8, max_size: usize, budget: usize) -> brinv_core::Result<Vec<Arc<Pattern>>> {
    Ok(enumerate_patterns(s, max_size, budget)?
        .into_iter()
        .filter(|p| p.len() >= 2)
        .map(Arc::new)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_deterministic() {
        let a = random_pattern(&mut case_rng(7, 3), 3, 9);
        let b = random_pattern(&mut case_rng(7, 3), 3, 9);
        assert_eq!(a, b);
        assert_eq!(a.len(), 9);
        assert!(a.is_hierarchical());
    }

    #[test]
    fn chains_are_strict_and_proper() {
        let mut rng = case_rng(1, 0);
        let mut made = 0;
        for _ in 0..200 {
            let y = Arc::new(random_pattern(&mut rng, 2, 7));
            if let Some(c) = random_chain(&mut rng, &y, 3, false) {
                assert_eq!(c.t(), 3);
                assert!(c.vertices().iter().all(|v| !v.is_top()));
                made += 1;
            }
        }
        assert!(made > 150);
    }

    #[test]
    fn random_elements_are_valid() {
        let mut rng = case_rng(2, 0);
        for _ in 0..50 {
            let g = random_element(&mut rng, 3, 5);
            assert!(g.compose(&g.inverse()).unwrap().equal(&GroupElement::identity(3)).unwrap());
        }
    }
}
