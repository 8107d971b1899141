//! The coloured graph `Γ_A` on the boxes of `Y`, its components and their
//! shapes.

use std::collections::BTreeMap;
use std::fmt;

use crate::boxes::{Colour, DyadicBox, DEFAULT_DEPTH_CAP};
use crate::error::{Error, Result};
use crate::fragments::{glb_above, interval_above, BelowSet, LeafId, SimpleContraction};

/// Unordered edge `{i, j}` with `i < j`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Edge {
    pub colour: Colour,
    pub i: LeafId,
    pub j: LeafId,
}

impl Edge {
    pub fn new(a: LeafId, b: LeafId, colour: Colour) -> Edge {
        Edge {
            colour,
            i: a.min(b),
            j: a.max(b),
        }
    }

    pub fn touches(&self, v: LeafId) -> bool {
        self.i == v || self.j == v
    }

    pub fn other(&self, v: LeafId) -> LeafId {
        if self.i == v {
            self.j
        } else {
            self.i
        }
    }

    pub fn disjoint(&self, other: &Edge) -> bool {
        !self.touches(other.i) && !self.touches(other.j)
    }
}

#[derive(Clone, Debug)]
pub struct ColouredGraph {
    a: BelowSet,
    /// Sorted by colour, then vertices.
    edges: Vec<Edge>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Component {
    pub vertices: Vec<LeafId>,
    pub edges: Vec<Edge>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ComponentShape {
    Vertex,
    Edge,
    Square,
    OpenBook { middle: Edge },
    Cube,
    Other,
}

impl ComponentShape {
    pub fn name(&self) -> &'static str {
        match self {
            ComponentShape::Vertex => "vertex",
            ComponentShape::Edge => "edge",
            ComponentShape::Square => "square",
            ComponentShape::OpenBook { .. } => "open-book",
            ComponentShape::Cube => "cube",
            ComponentShape::Other => "other",
        }
    }
}

/// `Γ_A` over the base of `a`.
pub fn gamma(a: &BelowSet) -> ColouredGraph {
    let mut edges = Vec::new();
    for f in a.elems().iter().filter(|f| !f.is_trivial()) {
        let leaves: Vec<LeafId> = f.leaves().collect();
        for (x, &i) in leaves.iter().enumerate() {
            for &j in &leaves[x + 1..] {
                if let Some(c) = a.glueable(i, j) {
                    edges.push(Edge::new(i, j, c));
                }
            }
        }
    }
    edges.sort();
    ColouredGraph { a: a.clone(), edges }
}

/// `Γ_A` straight from the definition: every simple contraction of the base,
/// either orientation, tested with the order.
pub fn gamma_oracle(a: &BelowSet) -> Result<Vec<Edge>> {
    let base = a.base();
    let n = base.len() as LeafId;
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for c in Colour::all(base.s()) {
                let lo = SimpleContraction::new(base, i, j, c)?;
                let hi = SimpleContraction::new(base, j, i, c)?;
                if a.leq(&lo.result)? || a.leq(&hi.result)? {
                    edges.push(Edge::new(i, j, c));
                }
            }
        }
    }
    edges.sort();
    Ok(edges)
}

impl ColouredGraph {
    pub fn base_set(&self) -> &BelowSet {
        &self.a
    }

    pub fn vertex_count(&self) -> usize {
        self.a.base().len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn has_edge(&self, e: &Edge) -> bool {
        self.edges.binary_search(e).is_ok()
    }

    /// The simple contraction witnessing an edge, in its glueable orientation.
    pub fn contraction(&self, e: &Edge) -> Result<SimpleContraction> {
        edge_contraction(&self.a, e)
    }

    /// Connected components, isolated vertices included, ordered by least
    /// vertex.
    pub fn components(&self) -> Vec<Component> {
        let n = self.vertex_count();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for e in &self.edges {
            let (a, b) = (find(&mut parent, e.i as usize), find(&mut parent, e.j as usize));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut groups: BTreeMap<usize, Component> = BTreeMap::new();
        for v in 0..n {
            let r = find(&mut parent, v);
            groups
                .entry(r)
                .or_insert_with(|| Component {
                    vertices: Vec::new(),
                    edges: Vec::new(),
                })
                .vertices
                .push(v as LeafId);
        }
        for e in &self.edges {
            let r = find(&mut parent, e.i as usize);
            groups.get_mut(&r).expect("present").edges.push(*e);
        }
        let mut out: Vec<Component> = groups.into_values().collect();
        out.sort_by_key(|c| c.vertices[0]);
        out
    }

    pub fn component_of(&self, v: LeafId) -> Component {
        self.components()
            .into_iter()
            .find(|c| c.vertices.contains(&v))
            .expect("every vertex has a component")
    }

    /// Edge list, one `i <-> j : colour` line per edge, using box syntax.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for e in &self.edges {
            out.push_str(&format!(
                "{} <-> {} : {}\n",
                self.a.leaf_box(e.i),
                self.a.leaf_box(e.j),
                e.colour
            ));
        }
        out
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph gamma {\n");
        for (k, b) in self.a.base().boxes().iter().enumerate() {
            out.push_str(&format!("  v{k} [label=\"{b}\"];\n"));
        }
        for e in &self.edges {
            out.push_str(&format!("  v{} -- v{} [label=\"{}\"];\n", e.i, e.j, e.colour));
        }
        out.push_str("}\n");
        out
    }
}

impl fmt::Display for ColouredGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_edge_list())
    }
}

pub fn edge_contraction(a: &BelowSet, e: &Edge) -> Result<SimpleContraction> {
    let (low, high, c) = a.gluing(e.i, e.j).ok_or(Error::NoEdge)?;
    if c != e.colour {
        return Err(Error::NoEdge);
    }
    SimpleContraction::new(a.base(), low, high, c)
}

/// `glb_A` of the contractions of a set of edges.
pub fn glb_of_edges(a: &BelowSet, edges: &[Edge]) -> Result<BelowSet> {
    let omega = edges
        .iter()
        .map(|e| edge_contraction(a, e).map(|z| z.result))
        .collect::<Result<Vec<_>>>()?;
    glb_above(a, &omega)
}

fn all_locally_maximal(c: &BelowSet, vertices: &[LeafId]) -> bool {
    vertices.iter().all(|v| c.locally_maximal(*v))
}

/// A set `C` with `A <= C < Y`, below every edge contraction of `comp`, with
/// every vertex of `comp` locally maximal. `A` is tried first, then
/// `glb_A(comp)`, which suffices by monotonicity of local maximality.
/// Isolated vertices are vacuously star-connected.
pub fn star_witness(a: &BelowSet, comp: &Component) -> Result<Option<BelowSet>> {
    if comp.edges.is_empty() {
        return Ok(Some(a.clone()));
    }
    if all_locally_maximal(a, &comp.vertices) {
        return Ok(Some(a.clone()));
    }
    let m = glb_of_edges(a, &comp.edges)?;
    Ok(all_locally_maximal(&m, &comp.vertices).then_some(m))
}

/// [`star_witness`] by exhaustive search over the interval `[A, Y)`.
pub fn star_witness_exhaustive(
    a: &BelowSet,
    comp: &Component,
    budget: usize,
) -> Result<Option<BelowSet>> {
    if comp.edges.is_empty() {
        return Ok(Some(a.clone()));
    }
    let zs = comp
        .edges
        .iter()
        .map(|e| edge_contraction(a, e).map(|z| z.result))
        .collect::<Result<Vec<_>>>()?;
    let interval = interval_above(a, budget).map_err(|e| match e {
        Error::BudgetExceeded(n) => Error::StarSearchBudgetExceeded(n),
        other => other,
    })?;
    for c in std::iter::once(a.clone()).chain(interval) {
        if c.is_top() {
            continue;
        }
        let below_all = zs.iter().all(|z| c.leq(z).unwrap_or(false));
        if below_all && all_locally_maximal(&c, &comp.vertices) {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

/// Colour-relabelling-invariant match against the edge, square, open book
/// and cube templates.
pub fn classify(comp: &Component) -> ComponentShape {
    let nv = comp.vertices.len();
    let ne = comp.edges.len();
    match (nv, ne) {
        (1, 0) => ComponentShape::Vertex,
        (2, 1) => ComponentShape::Edge,
        (4, 4) if is_colour_cube(comp, 2) => ComponentShape::Square,
        (8, 12) if is_colour_cube(comp, 3) => ComponentShape::Cube,
        (6, 7) => open_book_middle(comp)
            .map(|middle| ComponentShape::OpenBook { middle })
            .unwrap_or(ComponentShape::Other),
        _ => ComponentShape::Other,
    }
}

fn neighbour(comp: &Component, v: LeafId, c: Colour) -> Option<LeafId> {
    let mut it = comp
        .edges
        .iter()
        .filter(|e| e.colour == c && e.touches(v))
        .map(|e| e.other(v));
    let first = it.next()?;
    it.next().is_none().then_some(first)
}

/// Every vertex has exactly one edge of each of `dim` colours, and moves in
/// different colours commute.
fn is_colour_cube(comp: &Component, dim: usize) -> bool {
    let mut colours: Vec<Colour> = comp.edges.iter().map(|e| e.colour).collect();
    colours.sort();
    colours.dedup();
    if colours.len() != dim {
        return false;
    }
    for &v in &comp.vertices {
        let degree = comp.edges.iter().filter(|e| e.touches(v)).count();
        if degree != dim {
            return false;
        }
        for &p in &colours {
            for &q in &colours {
                if p == q {
                    continue;
                }
                let pq = neighbour(comp, v, p).and_then(|x| neighbour(comp, x, q));
                let qp = neighbour(comp, v, q).and_then(|x| neighbour(comp, x, p));
                if pq.is_none() || pq != qp {
                    return false;
                }
            }
        }
    }
    true
}

/// Two squares sharing the middle edge, with colours `{a, c}` and `{b, c}`.
fn open_book_middle(comp: &Component) -> Option<Edge> {
    let degree = |v: LeafId| comp.edges.iter().filter(|e| e.touches(v)).count();
    let spine: Vec<LeafId> = comp.vertices.iter().copied().filter(|v| degree(*v) == 3).collect();
    if spine.len() != 2 || comp.vertices.iter().any(|v| ![2, 3].contains(&degree(*v))) {
        return None;
    }
    let (u, v) = (spine[0], spine[1]);
    let middle = *comp.edges.iter().find(|e| e.touches(u) && e.touches(v))?;
    let c = middle.colour;
    let mut page_colours = Vec::new();
    for e in comp.edges.iter().filter(|e| e.touches(u) && **e != middle) {
        let u1 = e.other(u);
        let v1 = neighbour(comp, v, e.colour)?;
        let rung = comp.edges.iter().find(|r| r.touches(u1) && r.touches(v1))?;
        if e.colour == c || rung.colour != c {
            return None;
        }
        page_colours.push(e.colour);
    }
    (page_colours.len() == 2 && page_colours[0] != page_colours[1]).then_some(middle)
}

/// The boxes of the stack of `2^s` subcubes around a component that are
/// needed to form a cube containing it: per colour, the addresses used by
/// the component's cells. Requires the host fragment to be a genuine box.
pub fn enveloping_stack(a: &BelowSet, comp: &Component) -> Result<Vec<DyadicBox>> {
    let host = a.fragment_of(comp.vertices[0]).ok_or(Error::NoEdge)?;
    let real = host.as_box(a.base()).ok_or(Error::NotBoxWorld)?;
    let cells: Vec<DyadicBox> = comp
        .vertices
        .iter()
        .map(|v| host.cell_of(*v).ok_or(Error::NotBoxWorld))
        .collect::<Result<_>>()?;
    let s = a.s() as usize;
    let mut per_colour: Vec<Vec<crate::boxes::Address>> = vec![Vec::new(); s];
    for cell in &cells {
        for (k, addrs) in per_colour.iter_mut().enumerate() {
            let x = cell.addrs()[k];
            if !addrs.contains(&x) {
                addrs.push(x);
            }
        }
    }
    for addrs in &mut per_colour {
        addrs.sort();
        match addrs.as_slice() {
            [_] => {}
            [x, y] if x.sibling() == Some(*y) => {}
            _ => return Err(Error::NotBoxWorld),
        }
    }
    let mut stack = vec![DyadicBox::root(a.s())];
    for (k, addrs) in per_colour.iter().enumerate() {
        let mut next = Vec::new();
        for b in &stack {
            for x in addrs {
                next.push(b.with_addr(k, *x));
            }
        }
        stack = next;
    }
    let mut out = stack
        .iter()
        .map(|cell| real.append(cell, DEFAULT_DEPTH_CAP))
        .collect::<Result<Vec<_>>>()?;
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boxes::Pattern;
    use std::sync::Arc;

    fn bx(fields: &[&str]) -> DyadicBox {
        DyadicBox::from_fields(fields).unwrap()
    }

    fn pat(s: u8, boxes: &[&[&str]]) -> Arc<Pattern> {
        Arc::new(Pattern::new(s, boxes.iter().map(|f| bx(f))).unwrap())
    }

    fn col(k: u8) -> Colour {
        Colour::new(k, 3).unwrap()
    }

    /// Leaves 1..=7 in the labelled order.
    fn open_book() -> (Arc<Pattern>, Vec<LeafId>) {
        let labels: [&[&str]; 7] = [
            &["1", "1", "0"],
            &["1", "0", "0"],
            &["0", "0", "0"],
            &["0", "0", "1"],
            &["1", "0", "1"],
            &["1", "1", "1"],
            &["0", "1", "e"],
        ];
        let y = pat(3, &labels);
        let ids = labels
            .iter()
            .map(|f| y.index_of(&bx(f)).unwrap() as LeafId)
            .collect();
        (y, ids)
    }

    #[test]
    fn open_book_graph() {
        let (y, l) = open_book();
        let a = BelowSet::root(y.clone()).unwrap();
        let g = gamma(&a);
        let e = |x: usize, z: usize, c: u8| Edge::new(l[x - 1], l[z - 1], col(c));
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
        assert_eq!(g.edges(), expected.as_slice());
        assert_eq!(gamma_oracle(&a).unwrap(), expected);
        let comps = g.components();
        assert_eq!(comps.len(), 2);
        let main = g.component_of(l[0]);
        assert_eq!(classify(&main), ComponentShape::OpenBook { middle: e(2, 5, 3) });
        assert_eq!(g.component_of(l[6]).vertices, vec![l[6]]);
        assert_eq!(star_witness(&a, &main).unwrap(), Some(a.clone()));
        let stack = enveloping_stack(&a, &main).unwrap();
        assert_eq!(stack.len(), 8);
        assert!(stack.iter().all(|b| b.depth() == 3));
    }

    #[test]
    fn top_has_no_edges() {
        let (y, _) = open_book();
        assert!(gamma(&BelowSet::top(y)).edges().is_empty());
    }

    #[test]
    fn quadrants_form_a_square() {
        let y = pat(2, &[&["0", "0"], &["0", "1"], &["1", "0"], &["1", "1"]]);
        let a = BelowSet::root(y).unwrap();
        let g = gamma(&a);
        assert_eq!(g.edges().len(), 4);
        let comps = g.components();
        assert_eq!(comps.len(), 1);
        assert_eq!(classify(&comps[0]), ComponentShape::Square);
    }

    #[test]
    fn halves_form_an_edge() {
        let y = pat(3, &[&["0", "e", "e"], &["1", "e", "e"]]);
        let a = BelowSet::root(y).unwrap();
        let comps = gamma(&a).components();
        assert_eq!(classify(&comps[0]), ComponentShape::Edge);
        assert_eq!(enveloping_stack(&a, &comps[0]).unwrap().len(), 2);
    }

    #[test]
    fn octants_form_a_cube() {
        let y = pat(
            3,
            &[
                &["0", "0", "0"],
                &["0", "0", "1"],
                &["0", "1", "0"],
                &["0", "1", "1"],
                &["1", "0", "0"],
                &["1", "0", "1"],
                &["1", "1", "0"],
                &["1", "1", "1"],
            ],
        );
        let a = BelowSet::root(y).unwrap();
        let comps = gamma(&a).components();
        assert_eq!(comps.len(), 1);
        assert_eq!(classify(&comps[0]), ComponentShape::Cube);
        assert_eq!(enveloping_stack(&a, &comps[0]).unwrap().len(), 8);
    }

    #[test]
    fn square_stack_is_its_boxes() {
        let y = pat(3, &[&["0", "0", "e"], &["0", "1", "e"], &["1", "0", "e"], &["1", "1", "e"]]);
        let a = BelowSet::root(y.clone()).unwrap();
        let comps = gamma(&a).components();
        assert_eq!(classify(&comps[0]), ComponentShape::Square);
        assert_eq!(enveloping_stack(&a, &comps[0]).unwrap(), y.boxes().to_vec());
    }

    #[test]
    fn exotic_host_is_not_box_world() {
        let y = pat(2, &[&["0", "e"], &["1", "e"]]);
        let z = SimpleContraction::new(&y, 1, 0, Colour::new(2, 2).unwrap()).unwrap();
        let comps = gamma(&z.result).components();
        assert_eq!(enveloping_stack(&z.result, &comps[0]), Err(Error::NotBoxWorld));
    }

    #[test]
    fn witness_search_agrees_with_exhaustive_search() {
        let (y, _) = open_book();
        let a = BelowSet::root(y).unwrap();
        let g = gamma(&a);
        for comp in g.components() {
            let fast = star_witness(&a, &comp).unwrap().is_some();
            let slow = star_witness_exhaustive(&a, &comp, 1_000_000).unwrap().is_some();
            assert_eq!(fast, slow);
        }
    }
}
