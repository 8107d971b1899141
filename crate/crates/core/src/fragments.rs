//! Elements and admissible sets lying below a fixed pattern `Y`.
//!
//! Every element `w` of an admissible set `W <= Y` expands to a subset of
//! `Y`. We record `w` as its *frame*: the hierarchical partition of a formal
//! unit cube whose cells are labelled, one leaf each, by the boxes of `Y`
//! that descend from `w`. A contraction `(u, v)λ_c` puts the frame of `u` in
//! the low c-half and the frame of `v` in the high c-half; an expansion cuts
//! a frame along a mid-hyperplane that crosses no cell.
//!
//! The leaf-level frame is a normal form. Two contraction terms that differ
//! by the laws `uα_cλ_c = u`, `(u,v)λ_cα_c = (u,v)` or the interchange of
//! colours produce the same set of labelled cells, so equality of elements is
//! equality of [`Fragment`] values. A fragment is a genuine box of the cube
//! exactly when some box `R` maps every cell `F` onto its leaf as `R · F`
//! (see [`Fragment::as_box`]).

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::boxes::{
    check_colour_count, hierarchical_unchecked, tiles, Colour, DyadicBox, Pattern,
    DEFAULT_DEPTH_CAP,
};
use crate::error::{Error, Result};

/// Index of a box of the base pattern (its position in canonical order).
pub type LeafId = u16;

/// An element below the base pattern: leaf-level labelled frame.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fragment {
    /// Sorted by leaf.
    cells: Vec<(LeafId, DyadicBox)>,
}

impl Fragment {
    pub fn trivial(s: u8, leaf: LeafId) -> Fragment {
        Fragment {
            cells: vec![(leaf, DyadicBox::root(s))],
        }
    }

    /// Builds a fragment from leaf-labelled cells of the formal cube.
    pub fn from_cells(s: u8, cells: impl IntoIterator<Item = (LeafId, DyadicBox)>) -> Result<Fragment> {
        check_colour_count(s)?;
        let mut cells: Vec<(LeafId, DyadicBox)> = cells.into_iter().collect();
        cells.sort();
        if cells.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::NotBijective);
        }
        let boxes: Vec<DyadicBox> = cells.iter().map(|c| c.1).collect();
        let frame = DyadicBox::root(s);
        if !tiles(&boxes, &frame) {
            return Err(Error::NotATiling);
        }
        if !hierarchical_unchecked(&boxes, &frame) {
            return Err(Error::NonHierarchicalFrame);
        }
        Ok(Fragment { cells })
    }

    pub fn s(&self) -> u8 {
        self.cells[0].1.s()
    }

    pub fn cells(&self) -> &[(LeafId, DyadicBox)] {
        &self.cells
    }

    pub fn leaves(&self) -> impl Iterator<Item = LeafId> + '_ {
        self.cells.iter().map(|c| c.0)
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.cells.len() == 1
    }

    pub fn first_leaf(&self) -> LeafId {
        self.cells[0].0
    }

    pub fn cell_of(&self, leaf: LeafId) -> Option<DyadicBox> {
        self.cells
            .binary_search_by_key(&leaf, |c| c.0)
            .ok()
            .map(|k| self.cells[k].1)
    }

    /// `(self, high)λ_colour`.
    pub fn contract(&self, high: &Fragment, colour: Colour) -> Result<Fragment> {
        let mut cells = Vec::with_capacity(self.len() + high.len());
        for (bit, part) in [(0u8, self), (1u8, high)] {
            for (leaf, cell) in &part.cells {
                cells.push((*leaf, cell.prepend(colour, bit, DEFAULT_DEPTH_CAP)?));
            }
        }
        cells.sort();
        if cells.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::NotBijective);
        }
        Ok(Fragment { cells })
    }

    /// The two halves `selfα_colour`, when the mid-hyperplane is a free cut.
    pub fn split(&self, colour: Colour) -> Option<(Fragment, Fragment)> {
        if self.is_trivial() {
            return None;
        }
        let i = colour.index();
        let mut low = Vec::new();
        let mut high = Vec::new();
        for (leaf, cell) in &self.cells {
            let (bit, rest) = cell.addr_at(i).split_first()?;
            let moved = (*leaf, cell.with_addr(i, rest));
            if bit == 0 {
                low.push(moved);
            } else {
                high.push(moved);
            }
        }
        Some((Fragment { cells: low }, Fragment { cells: high }))
    }

    /// The box `R` of the cube with `leaf = R · cell` for every cell, if any.
    pub fn as_box(&self, base: &Pattern) -> Option<DyadicBox> {
        let (leaf, cell) = self.cells[0];
        let candidate = base.boxes()[leaf as usize].strip_relative(&cell)?;
        self.cells
            .iter()
            .all(|(leaf, cell)| {
                candidate.append(cell, DEFAULT_DEPTH_CAP).ok() == Some(base.boxes()[*leaf as usize])
            })
            .then_some(candidate)
    }

    /// The fragment restricted to a union of its cells, rescaled to the
    /// formal cube. Returns `None` unless the given leaves fill a dyadic box.
    fn restrict_leaves(&self, leaves: &[LeafId]) -> Option<(DyadicBox, Fragment)> {
        let cells: Vec<(LeafId, DyadicBox)> = leaves
            .iter()
            .map(|l| self.cell_of(*l).map(|c| (*l, c)))
            .collect::<Option<_>>()?;
        let region = DyadicBox::join(cells.iter().map(|c| &c.1))?;
        if !fills(cells.iter().map(|c| &c.1), &region) {
            return None;
        }
        let mut rel: Vec<(LeafId, DyadicBox)> = cells
            .iter()
            .map(|(l, c)| (*l, c.relative_to(&region).expect("inside join")))
            .collect();
        rel.sort();
        Some((region, Fragment { cells: rel }))
    }

    fn display_with(&self, base: &Pattern) -> String {
        self.cells
            .iter()
            .map(|(leaf, cell)| format!("{cell}={}", base.boxes()[*leaf as usize]))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Debug for Fragment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.cells.iter().map(|(l, c)| format!("{c}={l}")))
            .finish()
    }
}

/// Disjoint `cells`, all inside `region`: do they cover it?
pub(crate) fn fills<'a>(cells: impl Iterator<Item = &'a DyadicBox> + Clone, region: &DyadicBox) -> bool {
    let base = region.depth();
    let top = match cells.clone().map(|c| c.depth() - base).max() {
        Some(t) if t < 127 => t,
        _ => return false,
    };
    let volume: u128 = cells.map(|c| 1u128 << (top - (c.depth() - base))).sum();
    volume == 1u128 << top
}

/// A contraction term: the raw form of an element below the base.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Term {
    /// A box of the cube that is a hierarchical union of base leaves.
    Leaf(DyadicBox),
    /// `(low, high)λ_colour`.
    Contract(Colour, std::boxed::Box<Term>, std::boxed::Box<Term>),
}

impl Term {
    pub fn leaf(b: DyadicBox) -> Term {
        Term::Leaf(b)
    }

    pub fn contract(colour: Colour, low: Term, high: Term) -> Term {
        Term::Contract(colour, std::boxed::Box::new(low), std::boxed::Box::new(high))
    }
}

/// Normal form of a contraction term over `base`.
pub fn canonicalize(term: &Term, base: &Pattern) -> Result<Fragment> {
    match term {
        Term::Leaf(b) => {
            if b.s() != base.s() {
                return Err(Error::ColourCountMismatch(base.s(), b.s()));
            }
            let mut cells = Vec::new();
            let mut boxes = Vec::new();
            for (k, y) in base.boxes().iter().enumerate() {
                if b.contains(y) {
                    cells.push((k as LeafId, y.relative_to(b).expect("contained")));
                    boxes.push(*y);
                } else if !b.disjoint(y) {
                    return Err(Error::PreconditionViolated(format!(
                        "box {b} is not a union of base boxes"
                    )));
                }
            }
            if boxes.is_empty() {
                return Err(Error::PreconditionViolated(format!(
                    "box {b} contains no base box"
                )));
            }
            if !hierarchical_unchecked(&boxes, b) {
                return Err(Error::NonHierarchicalFrame);
            }
            Ok(Fragment { cells })
        }
        Term::Contract(colour, low, high) => {
            Colour::new(colour.get(), base.s())?;
            let low = canonicalize(low, base)?;
            let high = canonicalize(high, base)?;
            low.contract(&high, *colour)
        }
    }
}

/// An admissible set below the base pattern `Y`.
#[derive(Clone)]
pub struct BelowSet {
    base: Arc<Pattern>,
    /// Sorted; leaf sets partition the base.
    elems: Vec<Fragment>,
}

impl PartialEq for BelowSet {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.base, &other.base) || self.base == other.base)
            && self.elems == other.elems
    }
}

impl Eq for BelowSet {}

impl std::hash::Hash for BelowSet {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.elems.hash(state);
    }
}

impl fmt::Debug for BelowSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.elems.iter().map(|e| e.display_with(&self.base)))
            .finish()
    }
}

impl BelowSet {
    /// Validates and normalises a set of fragments over `base`.
    pub fn new(base: Arc<Pattern>, elems: Vec<Fragment>) -> Result<BelowSet> {
        let mut seen = vec![false; base.len()];
        for e in &elems {
            if e.s() != base.s() {
                return Err(Error::ColourCountMismatch(base.s(), e.s()));
            }
            for leaf in e.leaves() {
                let slot = seen.get_mut(leaf as usize).ok_or_else(|| {
                    Error::InvariantViolation(format!("leaf {leaf} out of range"))
                })?;
                if *slot {
                    return Err(Error::InvariantViolation(format!("leaf {leaf} used twice")));
                }
                *slot = true;
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::InvariantViolation(
                "fragments do not cover the base".into(),
            ));
        }
        Ok(BelowSet::from_parts(base, elems))
    }

    fn from_parts(base: Arc<Pattern>, mut elems: Vec<Fragment>) -> BelowSet {
        elems.sort();
        BelowSet { base, elems }
    }

    /// `Y` itself, every leaf a trivial fragment.
    pub fn top(base: Arc<Pattern>) -> BelowSet {
        let s = base.s();
        let elems = (0..base.len())
            .map(|k| Fragment::trivial(s, k as LeafId))
            .collect();
        BelowSet { base, elems }
    }

    /// A box-world pattern `P <= Y` as a below-set.
    pub fn from_pattern(base: Arc<Pattern>, pattern: &Pattern) -> Result<BelowSet> {
        if pattern.s() != base.s() {
            return Err(Error::ColourCountMismatch(base.s(), pattern.s()));
        }
        if !pattern.leq(&base) {
            return Err(Error::PreconditionViolated(
                "pattern is not below the base".into(),
            ));
        }
        let elems = pattern
            .boxes()
            .iter()
            .map(|p| canonicalize(&Term::Leaf(*p), &base))
            .collect::<Result<Vec<_>>>()?;
        Ok(BelowSet::from_parts(base, elems))
    }

    /// The single root box, when the base is hierarchical.
    pub fn root(base: Arc<Pattern>) -> Result<BelowSet> {
        let root = Pattern::root(base.s());
        BelowSet::from_pattern(base, &root)
    }

    pub fn base(&self) -> &Arc<Pattern> {
        &self.base
    }

    pub fn s(&self) -> u8 {
        self.base.s()
    }

    pub fn elems(&self) -> &[Fragment] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn leaf_box(&self, leaf: LeafId) -> DyadicBox {
        self.base.boxes()[leaf as usize]
    }

    pub fn leaf_of(&self, b: &DyadicBox) -> Option<LeafId> {
        self.base.index_of(b).map(|k| k as LeafId)
    }

    pub fn is_top(&self) -> bool {
        self.elems.len() == self.base.len()
    }

    /// For each leaf: the index of its fragment and its cell there.
    pub fn locate(&self) -> Vec<(usize, DyadicBox)> {
        let mut out = vec![(usize::MAX, DyadicBox::root(self.s())); self.base.len()];
        for (k, e) in self.elems.iter().enumerate() {
            for (leaf, cell) in e.cells() {
                out[*leaf as usize] = (k, *cell);
            }
        }
        out
    }

    pub fn fragment_of(&self, leaf: LeafId) -> Option<&Fragment> {
        self.elems.iter().find(|e| e.cell_of(leaf).is_some())
    }

    /// The box pattern, when every fragment is a genuine box.
    pub fn as_pattern(&self) -> Option<Pattern> {
        let mut boxes: Vec<DyadicBox> = self
            .elems
            .iter()
            .map(|e| e.as_box(&self.base))
            .collect::<Option<_>>()?;
        boxes.sort();
        Some(Pattern::from_sorted_unchecked(self.s(), boxes))
    }

    /// Leaves of the base not appearing as trivial fragments.
    pub fn involved(&self) -> Vec<LeafId> {
        let mut out: Vec<LeafId> = self
            .elems
            .iter()
            .filter(|e| !e.is_trivial())
            .flat_map(|e| e.leaves())
            .collect();
        out.sort_unstable();
        out
    }

    /// Number of base elements contracted (`|Y \ W|`).
    pub fn involves(&self) -> usize {
        self.elems
            .iter()
            .filter(|e| !e.is_trivial())
            .map(Fragment::len)
            .sum()
    }

    pub fn in_c_r(&self, r: usize) -> bool {
        self.involves() <= r
    }

    fn replace(&self, remove: &[usize], add: Vec<Fragment>) -> BelowSet {
        let mut elems: Vec<Fragment> = self
            .elems
            .iter()
            .enumerate()
            .filter(|(k, _)| !remove.contains(k))
            .map(|(_, e)| e.clone())
            .collect();
        elems.extend(add);
        BelowSet::from_parts(self.base.clone(), elems)
    }

    /// The expansion order restricted below the base: `self <= other` iff
    /// `other` is obtained from `self` by splitting fragments.
    pub fn leq(&self, other: &BelowSet) -> Result<bool> {
        if !(Arc::ptr_eq(&self.base, &other.base) || self.base == other.base) {
            return Err(Error::BaseMismatch);
        }
        Ok(self.leq_same_base(other))
    }

    fn leq_same_base(&self, other: &BelowSet) -> bool {
        if other.len() < self.len() {
            return false;
        }
        let loc = self.locate();
        let mut regions: Vec<Vec<DyadicBox>> = vec![Vec::new(); self.elems.len()];
        for f in &other.elems {
            let k = loc[f.first_leaf() as usize].0;
            let host = &self.elems[k];
            let leaves: Vec<LeafId> = f.leaves().collect();
            if leaves.iter().any(|l| loc[*l as usize].0 != k) {
                return false;
            }
            match host.restrict_leaves(&leaves) {
                Some((region, restricted)) if restricted == *f => regions[k].push(region),
                _ => return false,
            }
        }
        let root = DyadicBox::root(self.s());
        regions
            .iter()
            .all(|r| hierarchical_unchecked(r, &root))
    }

    /// All one-step expansions, each splitting one fragment along a free
    /// mid-hyperplane of its frame.
    pub fn expansions(&self) -> Vec<BelowSet> {
        let mut out = Vec::new();
        for (k, e) in self.elems.iter().enumerate() {
            for c in Colour::all(self.s()) {
                if let Some((lo, hi)) = e.split(c) {
                    out.push(self.replace(&[k], vec![lo, hi]));
                }
            }
        }
        out
    }

    /// All simple contractions: every ordered pair of elements, every colour.
    pub fn contractions(&self) -> Vec<BelowSet> {
        let mut out = Vec::new();
        for a in 0..self.elems.len() {
            for b in 0..self.elems.len() {
                if a == b {
                    continue;
                }
                for c in Colour::all(self.s()) {
                    if let Ok(f) = self.elems[a].contract(&self.elems[b], c) {
                        out.push(self.replace(&[a, b], vec![f]));
                    }
                }
            }
        }
        out
    }

    /// Simple contractions that stay in the box world: two genuine boxes that
    /// are oriented siblings, merged into their parent.
    pub fn box_contractions(&self) -> Vec<BelowSet> {
        let boxes: Vec<Option<DyadicBox>> =
            self.elems.iter().map(|e| e.as_box(&self.base)).collect();
        let mut out = Vec::new();
        for a in 0..self.elems.len() {
            for b in 0..self.elems.len() {
                let (Some(x), Some(y)) = (boxes[a], boxes[b]) else {
                    continue;
                };
                if let Some(c) = x.oriented_sibling_colour(&y) {
                    if let Ok(f) = self.elems[a].contract(&self.elems[b], c) {
                        out.push(self.replace(&[a, b], vec![f]));
                    }
                }
            }
        }
        out
    }

    /// Depth of the leaf's cell in its fragment (the length `l(A, i)`).
    pub fn length(&self, leaf: LeafId) -> usize {
        self.fragment_of(leaf)
            .and_then(|f| f.cell_of(leaf))
            .map(|c| c.depth())
            .unwrap_or(0)
    }

    /// Some colour `c` for which a simple contraction `Z` of `{i, j}` with
    /// `self <= Z < Y` exists.
    pub fn glueable(&self, i: LeafId, j: LeafId) -> Option<Colour> {
        self.gluing(i, j).map(|(_, _, c)| c)
    }

    /// Like [`BelowSet::glueable`] but also reports the orientation
    /// `(low, high)` of the witnessing contraction.
    pub fn gluing(&self, i: LeafId, j: LeafId) -> Option<(LeafId, LeafId, Colour)> {
        if i == j {
            return None;
        }
        let f = self.fragment_of(i)?;
        let ci = f.cell_of(i)?;
        let cj = f.cell_of(j)?;
        let (low, high, c, parent) = if let Some(c) = ci.oriented_sibling_colour(&cj) {
            (i, j, c, ci.parent_in(c)?)
        } else if let Some(c) = cj.oriented_sibling_colour(&ci) {
            (j, i, c, cj.parent_in(c)?)
        } else {
            return None;
        };
        let mut cells: Vec<DyadicBox> = f
            .cells()
            .iter()
            .filter(|(l, _)| *l != i && *l != j)
            .map(|(_, c)| *c)
            .collect();
        cells.push(parent);
        hierarchical_unchecked(&cells, &DyadicBox::root(self.s())).then_some((low, high, c))
    }

    /// `l(A, i) >= l(A, j)` for every `j` in the same fragment.
    pub fn locally_maximal(&self, leaf: LeafId) -> bool {
        let Some(f) = self.fragment_of(leaf) else {
            return false;
        };
        let mine = f.cell_of(leaf).map(|c| c.depth()).unwrap_or(0);
        f.cells().iter().all(|(_, c)| c.depth() <= mine)
    }

    pub(crate) fn display_fragment(&self, f: &Fragment) -> String {
        f.display_with(&self.base)
    }
}

/// `self <= other` on same-base below-sets.
pub fn below_leq(lower: &BelowSet, upper: &BelowSet) -> Result<bool> {
    lower.leq(upper)
}

/// `Y` with the two leaves replaced by `(low, high)λ_colour`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SimpleContraction {
    pub low: LeafId,
    pub high: LeafId,
    pub colour: Colour,
    pub result: BelowSet,
}

impl SimpleContraction {
    pub fn new(base: &Arc<Pattern>, low: LeafId, high: LeafId, colour: Colour) -> Result<SimpleContraction> {
        let n = base.len() as LeafId;
        if low == high || low >= n || high >= n {
            return Err(Error::PreconditionViolated(
                "a simple contraction needs two distinct base leaves".into(),
            ));
        }
        Colour::new(colour.get(), base.s())?;
        let top = BelowSet::top(base.clone());
        let s = base.s();
        let merged = Fragment::trivial(s, low).contract(&Fragment::trivial(s, high), colour)?;
        let result = top.replace(&[low as usize, high as usize], vec![merged]);
        Ok(SimpleContraction {
            low,
            high,
            colour,
            result,
        })
    }

    /// Unordered leaf pair, smaller first.
    pub fn pair(&self) -> (LeafId, LeafId) {
        (self.low.min(self.high), self.low.max(self.high))
    }
}

fn check_same_base(sets: &[&BelowSet]) -> Result<()> {
    if let Some(first) = sets.first() {
        for other in &sets[1..] {
            if !(Arc::ptr_eq(first.base(), other.base()) || first.base() == other.base()) {
                return Err(Error::BaseMismatch);
            }
        }
    }
    Ok(())
}

/// Greatest lower bound of `omega` above `a`, by greedy climbing: take any
/// one-step expansion still below every member of `omega` until none is left.
pub fn glb_above(a: &BelowSet, omega: &[BelowSet]) -> Result<BelowSet> {
    glb_above_by(a, omega, |_| 0)
}

/// [`glb_above`] with an explicit choice among the eligible expansions at
/// each step; `choose(n)` must return an index below `n`.
pub fn glb_above_by(
    a: &BelowSet,
    omega: &[BelowSet],
    mut choose: impl FnMut(usize) -> usize,
) -> Result<BelowSet> {
    let mut all: Vec<&BelowSet> = vec![a];
    all.extend(omega.iter());
    check_same_base(&all)?;
    if omega.iter().any(|b| !a.leq_same_base(b)) {
        return Err(Error::PreconditionViolated(
            "base set is not below every member".into(),
        ));
    }
    let mut current = a.clone();
    loop {
        let eligible: Vec<BelowSet> = current
            .expansions()
            .into_iter()
            .filter(|n| omega.iter().all(|b| n.leq_same_base(b)))
            .collect();
        if eligible.is_empty() {
            return Ok(current);
        }
        let k = choose(eligible.len()).min(eligible.len() - 1);
        current = eligible.into_iter().nth(k).expect("index in range");
    }
}

/// Global greatest lower bound of pairwise disjoint contractions of the
/// base: all of them performed at once.
pub fn gglb(base: &Arc<Pattern>, ms: &[BelowSet]) -> Result<BelowSet> {
    let mut used = vec![false; base.len()];
    let mut elems = Vec::new();
    for m in ms {
        if !(Arc::ptr_eq(m.base(), base) || **m.base() == **base) {
            return Err(Error::BaseMismatch);
        }
        for f in m.elems().iter().filter(|f| !f.is_trivial()) {
            for leaf in f.leaves() {
                if std::mem::replace(&mut used[leaf as usize], true) {
                    return Err(Error::NotDisjoint);
                }
            }
            elems.push(f.clone());
        }
    }
    let s = base.s();
    elems.extend(
        used.iter()
            .enumerate()
            .filter(|(_, u)| !**u)
            .map(|(k, _)| Fragment::trivial(s, k as LeafId)),
    );
    Ok(BelowSet::from_parts(base.clone(), elems))
}

/// Every `W` with `a <= W <= Y`, found by downward search from `Y` over all
/// simple contractions (both orders, all colours) that stay above `a`.
pub fn interval_above(a: &BelowSet, budget: usize) -> Result<Vec<BelowSet>> {
    let top = BelowSet::top(a.base().clone());
    if !a.leq_same_base(&top) {
        return Err(Error::PreconditionViolated("not below the base".into()));
    }
    let mut seen: HashSet<BelowSet> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(top.clone());
    queue.push_back(top);
    let mut out = Vec::new();
    while let Some(w) = queue.pop_front() {
        for z in w.contractions() {
            if !seen.contains(&z) && a.leq_same_base(&z) {
                if seen.len() >= budget {
                    return Err(Error::BudgetExceeded(budget));
                }
                seen.insert(z.clone());
                queue.push_back(z);
            }
        }
        out.push(w);
    }
    Ok(out)
}

/// Every `W <= Y` reachable by downward search (`Y` included).
pub fn lower_set(base: &Arc<Pattern>, box_only: bool, budget: usize) -> Result<Vec<BelowSet>> {
    let top = BelowSet::top(base.clone());
    let mut seen: HashSet<BelowSet> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(top.clone());
    queue.push_back(top);
    let mut out = Vec::new();
    while let Some(w) = queue.pop_front() {
        let next = if box_only {
            w.box_contractions()
        } else {
            w.contractions()
        };
        for z in next {
            if !seen.contains(&z) {
                if seen.len() >= budget {
                    return Err(Error::BudgetExceeded(budget));
                }
                seen.insert(z.clone());
                queue.push_back(z);
            }
        }
        out.push(w);
    }
    Ok(out)
}
