//! Elements of Brin's groups `sV` as pattern pairs with a bijection.
//!
//! `g` maps each domain box `d` affinely onto its image `g(d)`: a box `d · x`
//! goes to `g(d) · x`. Composition is written left to right, so
//! `compose(g, h)` applies `g` first.

use std::collections::HashMap;
use std::fmt;

use crate::boxes::{check_colour_count, Colour, DyadicBox, Pattern, DEFAULT_DEPTH_CAP};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    s: u8,
    /// `(domain box, image)`, sorted by domain box.
    pairs: Vec<(DyadicBox, DyadicBox)>,
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.pairs.iter().map(|(d, r)| format!("{d} -> {r}")))
            .finish()
    }
}

impl GroupElement {
    pub fn identity(s: u8) -> GroupElement {
        let root = DyadicBox::root(s);
        GroupElement {
            s,
            pairs: vec![(root, root)],
        }
    }

    /// Builds `g` from a bijection between the boxes of two hierarchical
    /// patterns, then removes matched carets greedily.
    pub fn new(s: u8, pairs: impl IntoIterator<Item = (DyadicBox, DyadicBox)>) -> Result<GroupElement> {
        let g = GroupElement::unreduced(s, pairs)?;
        Ok(g.reduced())
    }

    /// [`GroupElement::new`] from explicit patterns; every box of `dom` must
    /// be mapped onto a distinct box of `ran`.
    pub fn from_patterns(
        dom: &Pattern,
        ran: &Pattern,
        pairs: impl IntoIterator<Item = (DyadicBox, DyadicBox)>,
    ) -> Result<GroupElement> {
        if dom.s() != ran.s() {
            return Err(Error::ColourCountMismatch(dom.s(), ran.s()));
        }
        if dom.len() != ran.len() {
            return Err(Error::SizeMismatch(dom.len(), ran.len()));
        }
        let pairs: Vec<_> = pairs.into_iter().collect();
        if pairs.len() != dom.len() {
            return Err(Error::NotBijective);
        }
        for (d, r) in &pairs {
            if !dom.contains(d) {
                return Err(Error::BoxNotInPattern(*d));
            }
            if !ran.contains(r) {
                return Err(Error::BoxNotInPattern(*r));
            }
        }
        GroupElement::new(dom.s(), pairs)
    }

    fn unreduced(s: u8, pairs: impl IntoIterator<Item = (DyadicBox, DyadicBox)>) -> Result<GroupElement> {
        check_colour_count(s)?;
        let mut pairs: Vec<(DyadicBox, DyadicBox)> = pairs.into_iter().collect();
        for (d, r) in &pairs {
            for b in [d, r] {
                if b.s() != s {
                    return Err(Error::ColourCountMismatch(s, b.s()));
                }
            }
        }
        pairs.sort();
        let dom: Vec<DyadicBox> = pairs.iter().map(|p| p.0).collect();
        let mut ran: Vec<DyadicBox> = pairs.iter().map(|p| p.1).collect();
        ran.sort();
        if dom.windows(2).any(|w| w[0] == w[1]) || ran.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::NotBijective);
        }
        let dom = Pattern::new(s, dom).map_err(|_| Error::InvariantViolation("domain is not a tiling".into()))?;
        let ran = Pattern::new(s, ran).map_err(|_| Error::InvariantViolation("range is not a tiling".into()))?;
        if !dom.is_hierarchical() || !ran.is_hierarchical() {
            return Err(Error::NonHierarchicalFrame);
        }
        Ok(GroupElement { s, pairs })
    }

    /// Repeatedly merges two domain c-siblings whose images are c-siblings
    /// in the same order, while both sides stay hierarchical.
    fn reduced(mut self) -> GroupElement {
        'outer: loop {
            let n = self.pairs.len();
            for a in 0..n {
                for b in 0..n {
                    let (d0, r0) = self.pairs[a];
                    let (d1, r1) = self.pairs[b];
                    let Some(c) = d0.oriented_sibling_colour(&d1) else {
                        continue;
                    };
                    if r0.oriented_sibling_colour(&r1) != Some(c) {
                        continue;
                    }
                    let (Some(dp), Some(rp)) = (d0.parent_in(c), r0.parent_in(c)) else {
                        continue;
                    };
                    let mut next: Vec<_> = self
                        .pairs
                        .iter()
                        .enumerate()
                        .filter(|(k, _)| *k != a && *k != b)
                        .map(|(_, p)| *p)
                        .collect();
                    next.push((dp, rp));
                    if let Ok(g) = GroupElement::unreduced(self.s, next) {
                        self = g;
                        continue 'outer;
                    }
                }
            }
            return self;
        }
    }

    pub fn s(&self) -> u8 {
        self.s
    }

    pub fn pairs(&self) -> &[(DyadicBox, DyadicBox)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn domain(&self) -> Pattern {
        Pattern::new(self.s, self.pairs.iter().map(|p| p.0)).expect("valid by construction")
    }

    pub fn range(&self) -> Pattern {
        Pattern::new(self.s, self.pairs.iter().map(|p| p.1)).expect("valid by construction")
    }

    /// Image of a box lying inside one domain box.
    pub fn apply_box(&self, b: &DyadicBox) -> Result<DyadicBox> {
        let (d, r) = self
            .pairs
            .iter()
            .find(|(d, _)| d.contains(b))
            .ok_or(Error::BoxNotBelowDomain(*b))?;
        r.append(&b.relative_to(d).expect("contained"), DEFAULT_DEPTH_CAP)
    }

    /// Image of an arbitrary box when `g` maps it affinely onto a box.
    pub fn image_of_box(&self, b: &DyadicBox) -> Result<Option<DyadicBox>> {
        if let Ok(img) = self.apply_box(b) {
            return Ok(Some(img));
        }
        let mut hull = None;
        for (d, _) in &self.pairs {
            let Some(piece) = d.intersect(b) else { continue };
            let rel = piece.relative_to(b).expect("inside b");
            let img = self.apply_box(&piece)?;
            let Some(candidate) = img.strip_relative(&rel) else {
                return Ok(None);
            };
            if *hull.get_or_insert(candidate) != candidate {
                return Ok(None);
            }
        }
        Ok(hull)
    }

    /// `g` written over the finer domain `t`, which must lie above `dom(g)`.
    pub fn refine(&self, t: &Pattern) -> Result<GroupElement> {
        let pairs = t
            .boxes()
            .iter()
            .map(|b| Ok((*b, self.apply_box(b)?)))
            .collect::<Result<Vec<_>>>()?;
        GroupElement::unreduced(self.s, pairs)
    }

    pub fn inverse(&self) -> GroupElement {
        let mut pairs: Vec<_> = self.pairs.iter().map(|(d, r)| (*r, *d)).collect();
        pairs.sort();
        GroupElement { s: self.s, pairs }
    }

    /// `g` then `h`.
    pub fn compose(&self, h: &GroupElement) -> Result<GroupElement> {
        if self.s != h.s {
            return Err(Error::ColourCountMismatch(self.s, h.s));
        }
        let t = self.range().lub(&h.domain())?;
        let back = self.inverse();
        let pairs = t
            .boxes()
            .iter()
            .map(|b| Ok((back.apply_box(b)?, h.apply_box(b)?)))
            .collect::<Result<Vec<_>>>()?;
        GroupElement::new(self.s, pairs)
    }

    /// Equality as maps: both sides are refined to the lub of the domains.
    pub fn equal(&self, other: &GroupElement) -> Result<bool> {
        if self.s != other.s {
            return Ok(false);
        }
        let t = self.domain().lub(&other.domain())?;
        Ok(self.refine(&t)?.pairs == other.refine(&t)?.pairs)
    }

    /// Does `g` permute the boxes of `y`?
    pub fn stabilizes(&self, y: &Pattern) -> Result<bool> {
        if y.s() != self.s {
            return Err(Error::ColourCountMismatch(self.s, y.s()));
        }
        let mut images = Vec::with_capacity(y.len());
        for b in y.boxes() {
            match self.image_of_box(b)? {
                Some(img) if y.contains(&img) => images.push(img),
                _ => return Ok(false),
            }
        }
        images.sort();
        images.dedup();
        Ok(images.len() == y.len())
    }

    /// The permutation of `y` induced by `g`, if `g` stabilizes `y`.
    pub fn induced_permutation(&self, y: &Pattern) -> Result<Option<Vec<usize>>> {
        if !self.stabilizes(y)? {
            return Ok(None);
        }
        let index: HashMap<DyadicBox, usize> =
            y.boxes().iter().enumerate().map(|(k, b)| (*b, k)).collect();
        let perm = y
            .boxes()
            .iter()
            .map(|b| Ok(index[&self.image_of_box(b)?.expect("stabilized")]))
            .collect::<Result<Vec<_>>>()?;
        Ok(Some(perm))
    }
}

/// The element sending `y[k]` onto `z[sigma[k]]`.
pub fn transitive_element(y: &Pattern, z: &Pattern, sigma: &[usize]) -> Result<GroupElement> {
    if y.len() != z.len() {
        return Err(Error::SizeMismatch(y.len(), z.len()));
    }
    if sigma.len() != y.len() {
        return Err(Error::NotBijective);
    }
    let mut seen = vec![false; z.len()];
    for &k in sigma {
        if k >= z.len() || std::mem::replace(&mut seen[k], true) {
            return Err(Error::NotBijective);
        }
    }
    GroupElement::from_patterns(
        y,
        z,
        y.boxes()
            .iter()
            .zip(sigma)
            .map(|(b, &k)| (*b, z.boxes()[k])),
    )
}

/// Halves of `b` in `colour`, mapped by `g`, are the halves of `g(b)`.
pub fn commutes_with_expansion(g: &GroupElement, b: &DyadicBox, colour: Colour) -> Result<bool> {
    let img = g.apply_box(b)?;
    let (lo, hi) = b.halves(colour, DEFAULT_DEPTH_CAP)?;
    let (ilo, ihi) = img.halves(colour, DEFAULT_DEPTH_CAP)?;
    Ok(g.apply_box(&lo)? == ilo && g.apply_box(&hi)? == ihi)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bx(fields: &[&str]) -> DyadicBox {
        DyadicBox::from_fields(fields).unwrap()
    }

    fn fig5() -> GroupElement {
        GroupElement::new(
            2,
            [
                (bx(&["0", "0"]), bx(&["e", "0"])),
                (bx(&["0", "1"]), bx(&["e", "11"])),
                (bx(&["1", "e"]), bx(&["e", "10"])),
            ],
        )
        .unwrap()
    }

    fn swap() -> GroupElement {
        GroupElement::new(
            2,
            [
                (bx(&["0", "e"]), bx(&["1", "e"])),
                (bx(&["1", "e"]), bx(&["0", "e"])),
            ],
        )
        .unwrap()
    }

    #[test]
    fn three_box_element_action() {
        let g = fig5();
        assert_eq!(g.len(), 3);
        assert_eq!(g.apply_box(&bx(&["0", "0"])).unwrap(), bx(&["e", "0"]));
        assert_eq!(g.apply_box(&bx(&["00", "0"])).unwrap(), bx(&["0", "0"]));
        assert_eq!(
            g.apply_box(&bx(&["e", "0"])),
            Err(Error::BoxNotBelowDomain(bx(&["e", "0"])))
        );
    }

    #[test]
    fn identity_and_inverse() {
        let id = GroupElement::identity(2);
        let g = fig5();
        let b = bx(&["01", "1"]);
        assert_eq!(id.apply_box(&b).unwrap(), b);
        assert!(g.compose(&g.inverse()).unwrap().equal(&id).unwrap());
        assert!(g.inverse().compose(&g).unwrap().equal(&id).unwrap());
        assert_eq!(g.inverse().inverse(), g);
        assert_eq!(g.compose(&g.inverse()).unwrap(), id);
    }

    #[test]
    fn trivial_carets_reduce() {
        let g = GroupElement::new(
            2,
            [
                (bx(&["0", "e"]), bx(&["0", "e"])),
                (bx(&["1", "e"]), bx(&["1", "e"])),
            ],
        )
        .unwrap();
        assert_eq!(g, GroupElement::identity(2));
    }

    #[test]
    fn rejects_bad_pairs() {
        let y = Pattern::new(2, [bx(&["0", "e"]), bx(&["1", "e"])]).unwrap();
        let r = Pattern::root(2);
        assert_eq!(
            GroupElement::from_patterns(&y, &r, []).unwrap_err(),
            Error::SizeMismatch(2, 1)
        );
        let dup = [
            (bx(&["0", "e"]), bx(&["0", "e"])),
            (bx(&["1", "e"]), bx(&["0", "e"])),
        ];
        assert_eq!(GroupElement::new(2, dup), Err(Error::NotBijective));
    }

    #[test]
    fn swap_has_order_two() {
        let s = swap();
        assert_ne!(s, GroupElement::identity(2));
        assert!(s.compose(&s).unwrap().equal(&GroupElement::identity(2)).unwrap());
    }

    #[test]
    fn stabilizers() {
        let y = Pattern::new(2, [bx(&["0", "e"]), bx(&["1", "e"])]).unwrap();
        assert!(swap().stabilizes(&y).unwrap());
        assert!(!fig5().stabilizes(&fig5().domain()).unwrap());
        assert!(GroupElement::identity(2).stabilizes(&fig5().domain()).unwrap());
        assert_eq!(swap().induced_permutation(&y).unwrap(), Some(vec![1, 0]));
        // The halves across the cut are permuted as sets but not as boxes.
        let across = Pattern::new(2, [bx(&["e", "0"]), bx(&["e", "1"])]).unwrap();
        assert!(!swap().stabilizes(&across).unwrap());
        assert_eq!(swap().image_of_box(&bx(&["e", "0"])).unwrap(), None);
    }

    #[test]
    fn transitive_elements() {
        let y = Pattern::new(2, [bx(&["0", "e"]), bx(&["1", "e"])]).unwrap();
        let z = Pattern::new(2, [bx(&["e", "0"]), bx(&["e", "1"])]).unwrap();
        let g = transitive_element(&y, &z, &[0, 1]).unwrap();
        for (k, b) in y.boxes().iter().enumerate() {
            assert_eq!(g.apply_box(b).unwrap(), z.boxes()[k]);
        }
        assert!(transitive_element(&y, &y, &[0, 1])
            .unwrap()
            .stabilizes(&y)
            .unwrap());
        assert_eq!(
            transitive_element(&y, &Pattern::root(2), &[0]).unwrap_err(),
            Error::SizeMismatch(2, 1)
        );
    }

    #[test]
    fn refinement_does_not_change_elements() {
        let g = fig5();
        let t = g.domain().expand(&bx(&["1", "e"]), Colour::new(2, 2).unwrap()).unwrap();
        let fine = g.refine(&t).unwrap();
        assert_eq!(fine.len(), 4);
        assert!(fine.equal(&g).unwrap());
        assert_eq!(fine.reduced(), g);
    }

    #[test]
    fn expansion_commutes_with_action() {
        let g = fig5();
        for b in g.domain().boxes() {
            for c in Colour::all(2) {
                assert!(commutes_with_expansion(&g, b, c).unwrap());
            }
        }
    }
}
