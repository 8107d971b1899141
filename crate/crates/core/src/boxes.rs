//! Dyadic addresses, boxes and patterns of the unit s-cube.
//!
//! A box is an s-tuple of binary addresses, one per colour. Bit `0` selects
//! the low half of the current interval in that coordinate and bit `1` the
//! high half, so the box `(01, e)` of the unit square is `[1/4, 1/2) x [0, 1)`.
//! Halvings in different colours commute, which the tuple representation
//! gets for free: two boxes are equal exactly when their address tuples are.
//!
//! A [`Pattern`] is a finite partition of the unit cube into boxes. Patterns
//! need not be reachable from the root by expansions (for three colours there
//! are tilings that are not); [`is_hierarchical`] decides reachability.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};

/// Default maximum address length per coordinate.
pub const DEFAULT_DEPTH_CAP: usize = 32;

/// Hard ceiling for the configurable depth cap.
///
/// Volumes are summed exactly in `u128`, which needs `3 * cap < 128`.
pub const MAX_DEPTH_CAP: usize = 40;

/// A colour (cutting direction), numbered from 1.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Colour(u8);

impl Colour {
    pub fn new(colour: u8, s: u8) -> Result<Colour> {
        if colour == 0 || colour > s {
            return Err(Error::InvalidColour { colour, s });
        }
        Ok(Colour(colour))
    }

    /// Colour from a zero-based coordinate index.
    pub fn from_index(index: usize) -> Colour {
        debug_assert!(index < 3);
        Colour(index as u8 + 1)
    }

    pub fn get(self) -> u8 {
        self.0
    }

    /// Zero-based coordinate index.
    pub fn index(self) -> usize {
        self.0 as usize - 1
    }

    /// All colours for `s` coordinates, in increasing order.
    pub fn all(s: u8) -> impl Iterator<Item = Colour> {
        (1..=s).map(Colour)
    }
}

impl fmt::Display for Colour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub(crate) fn check_colour_count(s: u8) -> Result<()> {
    if (1..=3).contains(&s) {
        Ok(())
    } else {
        Err(Error::InvalidColourCount(s))
    }
}

/// A finite binary word, read as a dyadic subinterval of `[0, 1)`.
///
/// The first bit is stored as the most significant of the `len` low bits of
/// `bits`. Ordering is by `(len, bits)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Address {
    len: u8,
    bits: u64,
}

impl Address {
    pub const EMPTY: Address = Address { len: 0, bits: 0 };

    pub fn from_bits(len: usize, bits: u64) -> Result<Address> {
        if len > MAX_DEPTH_CAP {
            return Err(Error::DepthCapExceeded {
                depth: len,
                cap: MAX_DEPTH_CAP,
            });
        }
        let mask = if len == 0 { 0 } else { u64::MAX >> (64 - len) };
        Ok(Address {
            len: len as u8,
            bits: bits & mask,
        })
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Integer value of the word; the interval is `[bits, bits + 1) / 2^len`.
    pub fn bits(&self) -> u64 {
        self.bits
    }

    /// The `k`-th bit counted from the first (outermost) halving.
    pub fn bit(&self, k: usize) -> u8 {
        debug_assert!(k < self.len());
        ((self.bits >> (self.len() - 1 - k)) & 1) as u8
    }

    pub fn child(&self, bit: u8, cap: usize) -> Result<Address> {
        let depth = self.len() + 1;
        if depth > cap.min(MAX_DEPTH_CAP) {
            return Err(Error::DepthCapExceeded { depth, cap });
        }
        Ok(Address {
            len: depth as u8,
            bits: (self.bits << 1) | u64::from(bit & 1),
        })
    }

    pub fn parent(&self) -> Option<Address> {
        if self.len == 0 {
            None
        } else {
            Some(Address {
                len: self.len - 1,
                bits: self.bits >> 1,
            })
        }
    }

    pub fn last_bit(&self) -> Option<u8> {
        if self.len == 0 {
            None
        } else {
            Some((self.bits & 1) as u8)
        }
    }

    pub fn sibling(&self) -> Option<Address> {
        if self.len == 0 {
            None
        } else {
            Some(Address {
                len: self.len,
                bits: self.bits ^ 1,
            })
        }
    }

    pub fn is_prefix_of(&self, other: &Address) -> bool {
        self.len <= other.len && (other.bits >> (other.len - self.len)) == self.bits
    }

    pub fn comparable(&self, other: &Address) -> bool {
        self.is_prefix_of(other) || other.is_prefix_of(self)
    }

    /// The suffix `w` with `prefix · w == self`.
    pub fn strip_prefix(&self, prefix: &Address) -> Option<Address> {
        if !prefix.is_prefix_of(self) {
            return None;
        }
        let len = self.len - prefix.len;
        let mask = if len == 0 { 0 } else { u64::MAX >> (64 - len) };
        Some(Address {
            len,
            bits: self.bits & mask,
        })
    }

    /// The prefix `p` with `p · suffix == self`.
    pub fn strip_suffix(&self, suffix: &Address) -> Option<Address> {
        if suffix.len > self.len {
            return None;
        }
        let mask = if suffix.len == 0 {
            0
        } else {
            u64::MAX >> (64 - suffix.len)
        };
        if self.bits & mask != suffix.bits {
            return None;
        }
        Some(Address {
            len: self.len - suffix.len,
            bits: self.bits >> suffix.len,
        })
    }

    pub fn concat(&self, suffix: &Address, cap: usize) -> Result<Address> {
        let depth = self.len() + suffix.len();
        if depth > cap.min(MAX_DEPTH_CAP) {
            return Err(Error::DepthCapExceeded { depth, cap });
        }
        Ok(Address {
            len: depth as u8,
            bits: (self.bits << suffix.len) | suffix.bits,
        })
    }

    /// `bit · self`.
    pub fn prepend(&self, bit: u8, cap: usize) -> Result<Address> {
        let depth = self.len() + 1;
        if depth > cap.min(MAX_DEPTH_CAP) {
            return Err(Error::DepthCapExceeded { depth, cap });
        }
        Ok(Address {
            len: depth as u8,
            bits: (u64::from(bit & 1) << self.len) | self.bits,
        })
    }

    /// Splits off the first bit.
    pub fn split_first(&self) -> Option<(u8, Address)> {
        if self.len == 0 {
            return None;
        }
        let rest_len = self.len - 1;
        let first = ((self.bits >> rest_len) & 1) as u8;
        let mask = if rest_len == 0 {
            0
        } else {
            u64::MAX >> (64 - rest_len)
        };
        Some((
            first,
            Address {
                len: rest_len,
                bits: self.bits & mask,
            },
        ))
    }

    pub fn common_prefix(&self, other: &Address) -> Address {
        let mut len = self.len.min(other.len);
        loop {
            let a = self.bits >> (self.len - len);
            let b = other.bits >> (other.len - len);
            if a == b {
                return Address { len, bits: a };
            }
            len -= 1;
        }
    }

    pub fn parse(text: &str) -> Option<Address> {
        if text == "e" {
            return Some(Address::EMPTY);
        }
        if text.is_empty() || text.len() > MAX_DEPTH_CAP {
            return None;
        }
        let mut bits = 0u64;
        for ch in text.chars() {
            bits = (bits << 1)
                | match ch {
                    '0' => 0,
                    '1' => 1,
                    _ => return None,
                };
        }
        Some(Address {
            len: text.len() as u8,
            bits,
        })
    }
}

impl fmt::Display for Address {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len == 0 {
            return f.write_str("e");
        }
        for k in 0..self.len() {
            f.write_str(if self.bit(k) == 0 { "0" } else { "1" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Address {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A dyadic subparallelepiped of the unit s-cube.
///
/// The derived order is colour-major lexicographic on `(len, bits)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DyadicBox {
    s: u8,
    addrs: [Address; 3],
}

impl DyadicBox {
    pub fn root(s: u8) -> DyadicBox {
        debug_assert!((1..=3).contains(&s));
        DyadicBox {
            s,
            addrs: [Address::EMPTY; 3],
        }
    }

    pub fn from_addrs(addrs: &[Address]) -> Result<DyadicBox> {
        let s = addrs.len() as u8;
        check_colour_count(s)?;
        let mut out = DyadicBox::root(s);
        out.addrs[..addrs.len()].copy_from_slice(addrs);
        Ok(out)
    }

    /// Parses fields such as `["01", "e"]`.
    pub fn from_fields(fields: &[&str]) -> Option<DyadicBox> {
        let addrs: Option<Vec<Address>> = fields.iter().map(|f| Address::parse(f)).collect();
        DyadicBox::from_addrs(&addrs?).ok()
    }

    pub fn s(&self) -> u8 {
        self.s
    }

    pub fn addr(&self, colour: Colour) -> Address {
        self.addrs[colour.index()]
    }

    pub fn addrs(&self) -> &[Address] {
        &self.addrs[..self.s as usize]
    }

    pub(crate) fn addr_at(&self, index: usize) -> Address {
        self.addrs[index]
    }

    pub(crate) fn with_addr(&self, index: usize, addr: Address) -> DyadicBox {
        let mut out = *self;
        out.addrs[index] = addr;
        out
    }

    /// Total number of halvings (sum of address lengths).
    pub fn depth(&self) -> usize {
        self.addrs().iter().map(Address::len).sum()
    }

    pub fn child(&self, colour: Colour, bit: u8, cap: usize) -> Result<DyadicBox> {
        let i = colour.index();
        Ok(self.with_addr(i, self.addrs[i].child(bit, cap)?))
    }

    /// The low and high halves in `colour`.
    pub fn halves(&self, colour: Colour, cap: usize) -> Result<(DyadicBox, DyadicBox)> {
        Ok((self.child(colour, 0, cap)?, self.child(colour, 1, cap)?))
    }

    pub fn contains(&self, other: &DyadicBox) -> bool {
        self.s == other.s
            && self
                .addrs()
                .iter()
                .zip(other.addrs())
                .all(|(a, b)| a.is_prefix_of(b))
    }

    pub fn disjoint(&self, other: &DyadicBox) -> bool {
        self.addrs()
            .iter()
            .zip(other.addrs())
            .any(|(a, b)| !a.comparable(b))
    }

    pub fn intersect(&self, other: &DyadicBox) -> Option<DyadicBox> {
        let mut out = *self;
        for i in 0..self.s as usize {
            let (a, b) = (self.addrs[i], other.addrs[i]);
            if a.is_prefix_of(&b) {
                out.addrs[i] = b;
            } else if b.is_prefix_of(&a) {
                out.addrs[i] = a;
            } else {
                return None;
            }
        }
        Some(out)
    }

    /// Address of `self` relative to an enclosing box.
    pub fn relative_to(&self, outer: &DyadicBox) -> Option<DyadicBox> {
        let mut out = *self;
        for i in 0..self.s as usize {
            out.addrs[i] = self.addrs[i].strip_prefix(&outer.addrs[i])?;
        }
        Some(out)
    }

    /// The descendant of `self` at relative address `rel`.
    pub fn append(&self, rel: &DyadicBox, cap: usize) -> Result<DyadicBox> {
        let mut out = *self;
        for i in 0..self.s as usize {
            out.addrs[i] = self.addrs[i].concat(&rel.addrs[i], cap)?;
        }
        Ok(out)
    }

    /// The box `p` with `p.append(rel) == self`, if any.
    pub fn strip_relative(&self, rel: &DyadicBox) -> Option<DyadicBox> {
        let mut out = *self;
        for i in 0..self.s as usize {
            out.addrs[i] = self.addrs[i].strip_suffix(&rel.addrs[i])?;
        }
        Some(out)
    }

    pub fn parent_in(&self, colour: Colour) -> Option<DyadicBox> {
        let i = colour.index();
        Some(self.with_addr(i, self.addrs[i].parent()?))
    }

    /// The colour `c` for which `self` is the low and `high` the high
    /// c-half of a common box.
    pub fn oriented_sibling_colour(&self, high: &DyadicBox) -> Option<Colour> {
        let mut found = None;
        for i in 0..self.s as usize {
            let (a, b) = (self.addrs[i], high.addrs[i]);
            if a == b {
                continue;
            }
            if found.is_some()
                || a.len() != b.len()
                || a.len() == 0
                || a.last_bit() != Some(0)
                || a.sibling() != Some(b)
            {
                return None;
            }
            found = Some(Colour::from_index(i));
        }
        found
    }

    /// Colour in which the two boxes are siblings, ignoring orientation.
    pub fn sibling_colour(&self, other: &DyadicBox) -> Option<Colour> {
        self.oriented_sibling_colour(other)
            .or_else(|| other.oriented_sibling_colour(self))
    }

    /// Smallest dyadic box containing every box in `boxes`.
    pub fn join<'a>(boxes: impl IntoIterator<Item = &'a DyadicBox>) -> Option<DyadicBox> {
        let mut iter = boxes.into_iter();
        let mut out = *iter.next()?;
        for b in iter {
            for i in 0..out.s as usize {
                out.addrs[i] = out.addrs[i].common_prefix(&b.addrs[i]);
            }
        }
        Some(out)
    }

    /// `bit` prepended to the address in `colour`: the same relative box
    /// inside the `bit`-half of the unit cube.
    pub fn prepend(&self, colour: Colour, bit: u8, cap: usize) -> Result<DyadicBox> {
        let i = colour.index();
        Ok(self.with_addr(i, self.addrs[i].prepend(bit, cap)?))
    }
}

impl fmt::Display for DyadicBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, a) in self.addrs().iter().enumerate() {
            if k > 0 {
                f.write_str(":")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for DyadicBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

/// True iff `cells` partition `frame` exactly.
pub fn tiles(cells: &[DyadicBox], frame: &DyadicBox) -> bool {
    if cells.is_empty() || cells.iter().any(|c| !frame.contains(c)) {
        return false;
    }
    let base = frame.depth();
    let rel: Vec<usize> = cells.iter().map(|c| c.depth() - base).collect();
    let top = *rel.iter().max().unwrap_or(&0);
    if top >= 127 {
        return false;
    }
    let volume: u128 = rel.iter().map(|&d| 1u128 << (top - d)).sum();
    if volume != 1u128 << top {
        return false;
    }
    for (k, a) in cells.iter().enumerate() {
        if cells[k + 1..].iter().any(|b| !a.disjoint(b)) {
            return false;
        }
    }
    true
}

/// Decides whether `cells` is reachable from `{frame}` by simple expansions.
pub fn is_hierarchical(cells: &[DyadicBox], frame: &DyadicBox) -> Result<bool> {
    if !tiles(cells, frame) {
        return Err(Error::NotATiling);
    }
    Ok(hierarchical_unchecked(cells, frame))
}

/// Free-cut recursion; assumes `cells` tile `frame`.
///
/// If a mid-hyperplane of the frame cuts no cell, restricting any expansion
/// tree to the two halves keeps both halves hierarchical, so taking the
/// first free cut found is enough.
pub(crate) fn hierarchical_unchecked(cells: &[DyadicBox], frame: &DyadicBox) -> bool {
    if cells.len() == 1 {
        return cells[0] == *frame;
    }
    for i in 0..frame.s as usize {
        let flen = frame.addrs[i].len();
        if cells.iter().all(|c| c.addrs[i].len() > flen) {
            let (low, high): (Vec<DyadicBox>, Vec<DyadicBox>) =
                cells.iter().partition(|c| c.addrs[i].bit(flen) == 0);
            if low.is_empty() || high.is_empty() {
                return false;
            }
            let c = Colour::from_index(i);
            let (Ok(fl), Ok(fh)) = (
                frame.child(c, 0, MAX_DEPTH_CAP),
                frame.child(c, 1, MAX_DEPTH_CAP),
            ) else {
                return false;
            };
            return hierarchical_unchecked(&low, &fl) && hierarchical_unchecked(&high, &fh);
        }
    }
    false
}

/// A partition of the unit s-cube into dyadic boxes, kept in canonical order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern {
    s: u8,
    boxes: Vec<DyadicBox>,
}

impl Pattern {
    pub fn new(s: u8, boxes: impl IntoIterator<Item = DyadicBox>) -> Result<Pattern> {
        check_colour_count(s)?;
        let mut boxes: Vec<DyadicBox> = boxes.into_iter().collect();
        if let Some(b) = boxes.iter().find(|b| b.s() != s) {
            return Err(Error::ColourCountMismatch(s, b.s()));
        }
        boxes.sort();
        boxes.dedup();
        if !tiles(&boxes, &DyadicBox::root(s)) {
            return Err(Error::NotATiling);
        }
        Ok(Pattern { s, boxes })
    }

    pub(crate) fn from_sorted_unchecked(s: u8, boxes: Vec<DyadicBox>) -> Pattern {
        debug_assert!(boxes.windows(2).all(|w| w[0] < w[1]));
        Pattern { s, boxes }
    }

    pub fn root(s: u8) -> Pattern {
        Pattern {
            s,
            boxes: vec![DyadicBox::root(s)],
        }
    }

    pub fn s(&self) -> u8 {
        self.s
    }

    pub fn boxes(&self) -> &[DyadicBox] {
        &self.boxes
    }

    pub fn len(&self) -> usize {
        self.boxes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }

    pub fn index_of(&self, b: &DyadicBox) -> Option<usize> {
        self.boxes.binary_search(b).ok()
    }

    pub fn contains(&self, b: &DyadicBox) -> bool {
        self.index_of(b).is_some()
    }

    pub fn expand(&self, b: &DyadicBox, colour: Colour) -> Result<Pattern> {
        self.expand_capped(b, colour, DEFAULT_DEPTH_CAP)
    }

    pub fn expand_capped(&self, b: &DyadicBox, colour: Colour, cap: usize) -> Result<Pattern> {
        let k = self.index_of(b).ok_or(Error::BoxNotInPattern(*b))?;
        Colour::new(colour.get(), self.s)?;
        let (low, high) = b.halves(colour, cap)?;
        let mut boxes = self.boxes.clone();
        boxes.remove(k);
        for h in [low, high] {
            let at = boxes.binary_search(&h).unwrap_err();
            boxes.insert(at, h);
        }
        Ok(Pattern { s: self.s, boxes })
    }

    /// Replaces the low c-half `low` and high c-half `high` by their parent.
    pub fn contract(&self, low: &DyadicBox, high: &DyadicBox, colour: Colour) -> Result<Pattern> {
        let ki = self.index_of(low).ok_or(Error::BoxNotInPattern(*low))?;
        let kj = self.index_of(high).ok_or(Error::BoxNotInPattern(*high))?;
        if low.oriented_sibling_colour(high) != Some(colour) {
            return Err(Error::NotSiblings);
        }
        let parent = low.parent_in(colour).ok_or(Error::NotSiblings)?;
        let mut boxes: Vec<DyadicBox> = self
            .boxes
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != ki && *k != kj)
            .map(|(_, b)| *b)
            .collect();
        let at = boxes.binary_search(&parent).unwrap_err();
        boxes.insert(at, parent);
        Ok(Pattern { s: self.s, boxes })
    }

    /// Reachable from the root by expansions alone.
    pub fn is_hierarchical(&self) -> bool {
        hierarchical_unchecked(&self.boxes, &DyadicBox::root(self.s))
    }

    /// The expansion order: `self <= other` iff `other` is a descendant.
    pub fn leq(&self, other: &Pattern) -> bool {
        if self.s != other.s {
            return false;
        }
        let mut groups: Vec<Vec<DyadicBox>> = vec![Vec::new(); self.boxes.len()];
        for b in &other.boxes {
            match self.boxes.iter().position(|a| a.contains(b)) {
                Some(k) => groups[k].push(*b),
                None => return false,
            }
        }
        self.boxes
            .iter()
            .zip(&groups)
            .all(|(frame, cells)| hierarchical_unchecked(cells, frame))
    }

    /// Least upper bound by boxwise intersection.
    pub fn lub(&self, other: &Pattern) -> Result<Pattern> {
        if self.s != other.s {
            return Err(Error::ColourCountMismatch(self.s, other.s));
        }
        let mut boxes: Vec<DyadicBox> = self
            .boxes
            .iter()
            .flat_map(|p| other.boxes.iter().filter_map(move |q| p.intersect(q)))
            .collect();
        boxes.sort();
        let out = Pattern { s: self.s, boxes };
        if self.leq(&out) && other.leq(&out) {
            Ok(out)
        } else {
            Err(Error::NoCommonLowerBound)
        }
    }

    /// All single expansions, in canonical order of (box, colour).
    pub fn expansions(&self, cap: usize) -> Vec<Pattern> {
        let mut out = Vec::new();
        for b in &self.boxes {
            for c in Colour::all(self.s) {
                if let Ok(p) = self.expand_capped(b, c, cap) {
                    out.push(p);
                }
            }
        }
        out
    }

    /// All sibling contractions.
    pub fn contractions(&self) -> Vec<Pattern> {
        let mut out = Vec::new();
        for (k, a) in self.boxes.iter().enumerate() {
            for b in &self.boxes[k + 1..] {
                if let Some(c) = a.oriented_sibling_colour(b) {
                    out.push(self.contract(a, b, c).expect("siblings contract"));
                } else if let Some(c) = b.oriented_sibling_colour(a) {
                    out.push(self.contract(b, a, c).expect("siblings contract"));
                }
            }
        }
        out
    }
}

impl fmt::Debug for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(&self.boxes).finish()
    }
}

/// All expansion-reachable patterns with at most `max_size` boxes, ordered by
/// size and then canonically.
pub fn enumerate_patterns(s: u8, max_size: usize, budget: usize) -> Result<Vec<Pattern>> {
    check_colour_count(s)?;
    let mut out = vec![Pattern::root(s)];
    let mut frontier = vec![Pattern::root(s)];
    for _ in 1..max_size {
        let mut seen = HashSet::new();
        for p in &frontier {
            for q in p.expansions(DEFAULT_DEPTH_CAP) {
                seen.insert(q);
            }
        }
        let mut next: Vec<Pattern> = seen.into_iter().collect();
        next.sort();
        if out.len() + next.len() > budget {
            return Err(Error::BudgetExceeded(budget));
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bx(fields: &[&str]) -> DyadicBox {
        DyadicBox::from_fields(fields).unwrap()
    }

    fn pat(s: u8, boxes: &[&[&str]]) -> Pattern {
        Pattern::new(s, boxes.iter().map(|f| bx(f))).unwrap()
    }

    fn c(k: u8) -> Colour {
        Colour::new(k, 3).unwrap()
    }

    #[test]
    fn address_arithmetic() {
        let a = Address::parse("0110").unwrap();
        assert_eq!(a.len(), 4);
        assert_eq!(a.to_string(), "0110");
        assert_eq!(a.bit(0), 0);
        assert_eq!(a.bit(1), 1);
        let p = Address::parse("01").unwrap();
        assert!(p.is_prefix_of(&a));
        assert_eq!(a.strip_prefix(&p).unwrap().to_string(), "10");
        assert_eq!(a.strip_suffix(&Address::parse("10").unwrap()), Some(p));
        assert_eq!(a.split_first().unwrap().1.to_string(), "110");
        assert_eq!(p.prepend(1, 32).unwrap().to_string(), "101");
        assert_eq!(
            a.common_prefix(&Address::parse("0111").unwrap()).to_string(),
            "011"
        );
        assert_eq!(Address::EMPTY.to_string(), "e");
        assert!(Address::parse("").is_none());
        assert!(Address::parse("012").is_none());
    }

    #[test]
    fn depth_cap_is_enforced() {
        let mut a = Address::EMPTY;
        for _ in 0..3 {
            a = a.child(1, 3).unwrap();
        }
        assert_eq!(
            a.child(0, 3),
            Err(Error::DepthCapExceeded { depth: 4, cap: 3 })
        );
        let p = Pattern::root(1);
        let deep = p.expand_capped(&DyadicBox::root(1), c(1), 0);
        assert!(matches!(deep, Err(Error::DepthCapExceeded { .. })));
    }

    #[test]
    fn root_patterns() {
        for s in 1..=3 {
            let r = Pattern::root(s);
            assert_eq!(r.len(), 1);
            assert_eq!(r.boxes()[0].depth(), 0);
        }
        assert_eq!(format!("{:?}", Pattern::root(2)), "{(e:e)}");
    }

    #[test]
    fn expand_examples() {
        let root = Pattern::root(2);
        let halves = root.expand(&DyadicBox::root(2), c(1)).unwrap();
        assert_eq!(halves, pat(2, &[&["0", "e"], &["1", "e"]]));
        let mixed = halves.expand(&bx(&["1", "e"]), c(2)).unwrap();
        assert_eq!(mixed, pat(2, &[&["0", "e"], &["1", "0"], &["1", "1"]]));
        assert_eq!(mixed.len(), halves.len() + 1);
        assert_eq!(
            halves.expand(&bx(&["e", "e"]), c(2)),
            Err(Error::BoxNotInPattern(bx(&["e", "e"])))
        );
    }

    #[test]
    fn expansion_orders_commute_to_quadrants() {
        let root = Pattern::root(2);
        let r = DyadicBox::root(2);
        let a = root.expand(&r, c(1)).unwrap();
        let a = a.expand(&bx(&["0", "e"]), c(2)).unwrap();
        let a = a.expand(&bx(&["1", "e"]), c(2)).unwrap();
        let b = root.expand(&r, c(2)).unwrap();
        let b = b.expand(&bx(&["e", "0"]), c(1)).unwrap();
        let b = b.expand(&bx(&["e", "1"]), c(1)).unwrap();
        assert_eq!(a, b);
        assert_eq!(
            a,
            pat(2, &[&["0", "0"], &["0", "1"], &["1", "0"], &["1", "1"]])
        );
    }

    #[test]
    fn contract_examples() {
        let halves = pat(2, &[&["0", "e"], &["1", "e"]]);
        assert_eq!(
            halves
                .contract(&bx(&["0", "e"]), &bx(&["1", "e"]), c(1))
                .unwrap(),
            Pattern::root(2)
        );
        assert_eq!(
            halves.contract(&bx(&["0", "e"]), &bx(&["1", "e"]), c(2)),
            Err(Error::NotSiblings)
        );
        assert_eq!(
            halves.contract(&bx(&["1", "e"]), &bx(&["0", "e"]), c(1)),
            Err(Error::NotSiblings)
        );
        let quads = pat(2, &[&["0", "0"], &["0", "1"], &["1", "0"], &["1", "1"]]);
        assert_eq!(
            quads
                .contract(&bx(&["0", "0"]), &bx(&["1", "0"]), c(1))
                .unwrap(),
            pat(2, &[&["e", "0"], &["0", "1"], &["1", "1"]])
        );
    }

    #[test]
    fn twisted_tiling_is_not_hierarchical() {
        let tw = pat(
            3,
            &[
                &["e", "0", "0"],
                &["0", "e", "1"],
                &["1", "1", "e"],
                &["0", "1", "0"],
                &["1", "0", "1"],
            ],
        );
        assert!(!tw.is_hierarchical());
        assert!(!Pattern::root(3).leq(&tw));
        let octants = Pattern::new(
            3,
            (0..8u64).map(|k| {
                DyadicBox::from_addrs(&[
                    Address::from_bits(1, k >> 2).unwrap(),
                    Address::from_bits(1, k >> 1).unwrap(),
                    Address::from_bits(1, k).unwrap(),
                ])
                .unwrap()
            }),
        )
        .unwrap();
        assert!(tw.leq(&octants));
        assert!(tw.leq(&tw));
    }

    #[test]
    fn is_hierarchical_rejects_non_tilings() {
        let frame = DyadicBox::root(2);
        assert_eq!(
            is_hierarchical(&[bx(&["0", "e"])], &frame),
            Err(Error::NotATiling)
        );
        assert_eq!(is_hierarchical(&[frame], &frame), Ok(true));
        assert_eq!(
            is_hierarchical(&[bx(&["0", "e"]), bx(&["0", "e"])], &frame),
            Err(Error::NotATiling)
        );
    }

    #[test]
    fn lub_examples() {
        let v = pat(2, &[&["0", "e"], &["1", "e"]]);
        let h = pat(2, &[&["e", "0"], &["e", "1"]]);
        let quads = pat(2, &[&["0", "0"], &["0", "1"], &["1", "0"], &["1", "1"]]);
        assert_eq!(v.lub(&h).unwrap(), quads);
        assert_eq!(v.lub(&v).unwrap(), v);
        assert_eq!(v.lub(&Pattern::root(2)).unwrap(), v);
    }

    #[test]
    fn lub_without_common_lower_bound_fails() {
        // Two twisted tilings sharing no lower bound that would make their
        // intersection hierarchical inside each box.
        let tw = pat(
            3,
            &[
                &["e", "0", "0"],
                &["0", "e", "1"],
                &["1", "1", "e"],
                &["0", "1", "0"],
                &["1", "0", "1"],
            ],
        );
        let root = Pattern::root(3);
        assert_eq!(root.lub(&tw), Err(Error::NoCommonLowerBound));
    }

    #[test]
    fn enumeration_counts() {
        let two = enumerate_patterns(2, 3, 1000).unwrap();
        let by_size = |ps: &[Pattern], k: usize| ps.iter().filter(|p| p.len() == k).count();
        assert_eq!(by_size(&two, 1), 1);
        assert_eq!(by_size(&two, 2), 2);
        assert_eq!(by_size(&two, 3), 8);
        let one = enumerate_patterns(1, 3, 1000).unwrap();
        assert_eq!(one.len(), 4);
        assert_eq!(
            enumerate_patterns(2, 6, 10),
            Err(Error::BudgetExceeded(10))
        );
    }
}
