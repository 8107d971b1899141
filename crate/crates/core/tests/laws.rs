use std::sync::Arc;

use brinv_core::boxes::DEFAULT_DEPTH_CAP;
use brinv_core::fragments::{glb_above, glb_above_by};
use brinv_core::gamma::{gamma, gamma_oracle};
use brinv_core::group::transitive_element;
use brinv_core::pushing::{check_all_sub_chains, evaluate_chain};
use brinv_core::text;
use brinv_core::{BelowSet, Chain, Colour, GroupElement, Pattern};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A hierarchical pattern grown from the root by the given expansions; each
/// step is `(box index, colour index)` reduced modulo what is available.
fn grow(s: u8, steps: &[(usize, usize)]) -> Pattern {
    let mut p = Pattern::root(s);
    for &(k, c) in steps {
        let b = p.boxes()[k % p.len()];
        let colour = Colour::from_index(c % s as usize);
        if let Ok(q) = p.expand(&b, colour) {
            p = q;
        }
    }
    p
}

/// Walks down from the top by the chosen contractions.
fn descend(y: &Arc<Pattern>, picks: &[usize]) -> BelowSet {
    let mut a = BelowSet::top(y.clone());
    for &k in picks {
        let down = a.contractions();
        if down.is_empty() {
            break;
        }
        a = down[k % down.len()].clone();
    }
    a
}

/// Walks up from `a` by the chosen expansions.
fn ascend(a: &BelowSet, picks: &[usize]) -> BelowSet {
    let mut b = a.clone();
    for &k in picks {
        let up = b.expansions();
        if up.is_empty() {
            break;
        }
        b = up[k % up.len()].clone();
    }
    b
}

fn steps() -> impl Strategy<Value = Vec<(usize, usize)>> {
    prop::collection::vec((0usize..64, 0usize..3), 1..6)
}

fn picks(max: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0usize..64, 0..max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn size_law(s in 2u8..=3, st in steps(), down in picks(5)) {
        let y = Arc::new(grow(s, &st));
        for q in y.expansions(DEFAULT_DEPTH_CAP) {
            prop_assert_eq!(q.len(), y.len() + 1);
        }
        let a = descend(&y, &down);
        for b in a.expansions() {
            prop_assert_eq!(b.len(), a.len() + 1);
        }
        for b in a.contractions() {
            prop_assert_eq!(b.len() + 1, a.len());
        }
    }

    #[test]
    fn order_laws(s in 2u8..=3, st in steps(), down in picks(5), up in picks(4), more in picks(3)) {
        let y = Arc::new(grow(s, &st));
        let a = descend(&y, &down);
        let b = ascend(&a, &up);
        let c = ascend(&b, &more);
        prop_assert!(a.leq(&a).unwrap());
        prop_assert!(a.leq(&b).unwrap() && b.leq(&c).unwrap() && a.leq(&c).unwrap());
        if b.leq(&a).unwrap() {
            prop_assert_eq!(&a, &b);
        }
        prop_assert!(a.leq(&BelowSet::top(y.clone())).unwrap());
    }

    #[test]
    fn pattern_lub(s in 2u8..=3, st in steps(), other in steps()) {
        let p = grow(s, &st);
        let q = grow(s, &other);
        let l = p.lub(&q).unwrap();
        prop_assert!(p.leq(&l) && q.leq(&l));
        prop_assert_eq!(&l, &q.lub(&p).unwrap());
        prop_assert_eq!(&p.lub(&l).unwrap(), &l);
        // No proper contraction of the lub is still above both.
        for c in l.contractions() {
            prop_assert!(!(p.leq(&c) && q.leq(&c)));
        }
    }

    #[test]
    fn glb_ignores_climb_order(
        s in 2u8..=3,
        st in steps(),
        down in picks(5),
        u0 in picks(4),
        u1 in picks(4),
        seed in any::<u64>(),
    ) {
        let y = Arc::new(grow(s, &st));
        let a = descend(&y, &down);
        let y0 = ascend(&a, &u0);
        let y1 = ascend(&a, &u1);
        let omega = [y0.clone(), y1.clone()];
        let m = glb_above(&a, &omega).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let other = glb_above_by(&a, &omega, |n| rng.gen_range(0..n)).unwrap();
        prop_assert_eq!(&m, &other);
        prop_assert!(a.leq(&m).unwrap() && m.leq(&y0).unwrap() && m.leq(&y1).unwrap());
        prop_assert_eq!(&glb_above(&a, &[y1, y0]).unwrap(), &m);
    }

    #[test]
    fn gamma_and_local_maximality_are_monotone(s in 2u8..=3, st in steps(), down in picks(5)) {
        let y = Arc::new(grow(s, &st));
        let a = descend(&y, &down);
        let g = gamma(&a);
        let oracle = gamma_oracle(&a).unwrap();
        prop_assert_eq!(g.edges(), oracle.as_slice());
        for b in a.expansions() {
            let gb = gamma(&b);
            prop_assert!(gb.edges().iter().all(|e| g.has_edge(e)));
            for v in 0..y.len() as u16 {
                prop_assert!(!a.locally_maximal(v) || b.locally_maximal(v));
            }
        }
    }

    #[test]
    fn text_round_trip(s in 2u8..=3, st in steps(), down in picks(5), up in picks(3)) {
        let y = Arc::new(grow(s, &st));
        prop_assert_eq!(&text::parse_pattern(&text::write_pattern(&y)).unwrap(), &*y);
        let a = descend(&y, &down);
        let back = text::parse_below_set(&text::write_below_set(&a)).unwrap();
        prop_assert_eq!(&back, &a);
        let b = ascend(&a, &up);
        if !a.is_top() && !b.is_top() && a != b {
            let chain = Chain::new(vec![b, a]).unwrap();
            let again = text::parse_chain(&text::write_chain(&chain)).unwrap();
            prop_assert_eq!(again.vertices(), chain.vertices());
        }
    }

    #[test]
    fn pushing_certificate(s in 2u8..=3, st in steps(), down in picks(6), up in picks(3)) {
        let y = Arc::new(grow(s, &st));
        let a = descend(&y, &down);
        let b = ascend(&a, &up);
        prop_assume!(!a.is_top() && !b.is_top());
        let vertices = if a == b { vec![a] } else { vec![b, a] };
        let chain = Chain::new(vertices).unwrap();
        let report = evaluate_chain(&chain).unwrap();
        prop_assert!(report.ok(), "{:?}", report.describe_failure());
        prop_assert!(check_all_sub_chains(&chain).unwrap());
    }

    #[test]
    fn group_axioms(
        s in 2u8..=3,
        st in steps(),
        shuffles in prop::collection::vec(any::<u64>(), 3),
        other in prop::collection::vec((0usize..64, 0usize..3), 0..4),
    ) {
        let y = grow(s, &st);
        // Equal-size targets: grow the same number of times from the root.
        let z = {
            let mut z = Pattern::root(s);
            let mut k = 0;
            while z.len() < y.len() {
                let (b, c) = other.get(k).copied().unwrap_or((k, k));
                let target = z.boxes()[b % z.len()];
                z = z.expand(&target, Colour::from_index(c % s as usize)).unwrap();
                k += 1;
            }
            z
        };
        let perm = |seed: u64| {
            let mut p: Vec<usize> = (0..y.len()).collect();
            p.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
            p
        };
        let f = transitive_element(&y, &z, &perm(shuffles[0])).unwrap();
        let g = transitive_element(&z, &y, &perm(shuffles[1])).unwrap();
        let h = transitive_element(&y, &y, &perm(shuffles[2])).unwrap();
        let e = GroupElement::identity(s);
        let fg_h = f.compose(&g).unwrap().compose(&h).unwrap();
        let f_gh = f.compose(&g.compose(&h).unwrap()).unwrap();
        prop_assert!(fg_h.equal(&f_gh).unwrap());
        prop_assert!(f.compose(&e).unwrap().equal(&f).unwrap());
        prop_assert!(e.compose(&f).unwrap().equal(&f).unwrap());
        prop_assert!(f.compose(&f.inverse()).unwrap().equal(&e).unwrap());
        prop_assert!(f.inverse().inverse().equal(&f).unwrap());
        let back = text::parse_element(&text::write_element(&f)).unwrap();
        prop_assert!(back.equal(&f).unwrap());
    }
}
