//! Pushing maps on chains of `K_Y`: each vertex `A` picks one edge `M(A)` of
//! `Γ_A`, and a chain `A_t < ... < A_0` is sent to the glb above `A_t` of
//! the picked contractions.

use std::sync::Arc;

use crate::boxes::Pattern;
use crate::error::{Error, Result};
use crate::fragments::{glb_above, BelowSet, LeafId, SimpleContraction};
use crate::gamma::{
    classify, edge_contraction, gamma, star_witness, Component, ComponentShape, Edge,
};

/// A strict chain `A_t < ... < A_0 < Y`, stored top first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    base: Arc<Pattern>,
    vertices: Vec<BelowSet>,
}

impl Chain {
    /// `vertices[0]` is `A_0` (the largest), `vertices[t]` is `A_t`.
    pub fn new(vertices: Vec<BelowSet>) -> Result<Chain> {
        let first = vertices
            .first()
            .ok_or_else(|| Error::PreconditionViolated("empty chain".into()))?;
        let base = first.base().clone();
        for v in &vertices {
            if v.base() != &base && **v.base() != *base {
                return Err(Error::BaseMismatch);
            }
            if v.is_top() {
                return Err(Error::PreconditionViolated(
                    "chain vertices must lie strictly below the base".into(),
                ));
            }
        }
        for w in vertices.windows(2) {
            if w[0] == w[1] || !w[1].leq(&w[0])? {
                return Err(Error::PreconditionViolated("chain is not strictly ascending".into()));
            }
        }
        Ok(Chain { base, vertices })
    }

    pub fn base(&self) -> &Arc<Pattern> {
        &self.base
    }

    pub fn vertices(&self) -> &[BelowSet] {
        &self.vertices
    }

    pub fn t(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn bottom(&self) -> &BelowSet {
        &self.vertices[self.t()]
    }

    /// The sub-chain on the given positions (`0` = `A_0`), kept in order.
    pub fn sub_chain(&self, positions: &[usize]) -> Result<Chain> {
        let mut ps = positions.to_vec();
        ps.sort_unstable();
        ps.dedup();
        let vertices = ps
            .iter()
            .map(|&p| {
                self.vertices
                    .get(p)
                    .cloned()
                    .ok_or_else(|| Error::PreconditionViolated(format!("no vertex {p}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Chain::new(vertices)
    }
}

/// The edge `M(A)` together with the component it was taken from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeChoice {
    pub edge: Edge,
    pub contraction: SimpleContraction,
    pub component: Component,
    pub shape: ComponentShape,
}

/// Least edge of `Γ_A` (by colour, then vertices) whose endpoints are
/// locally maximal with respect to `A`.
pub fn choose_edge_2v(a: &BelowSet) -> Result<EdgeChoice> {
    if a.is_top() {
        return Err(Error::PreconditionViolated("A must lie strictly below Y".into()));
    }
    let g = gamma(a);
    let edge = *g
        .edges()
        .iter()
        .find(|e| a.locally_maximal(e.i) && a.locally_maximal(e.j))
        .ok_or(Error::NoEdge)?;
    let component = g.component_of(edge.i);
    let shape = classify(&component);
    Ok(EdgeChoice {
        edge,
        contraction: edge_contraction(a, &edge)?,
        component,
        shape,
    })
}

/// Three-colour rule: the middle edge of a star-connected open book with
/// least middle colour; otherwise a star-connected separate edge of least
/// colour; otherwise the least edge of any star-connected component.
pub fn choose_edge_3v(a: &BelowSet) -> Result<EdgeChoice> {
    if a.is_top() {
        return Err(Error::PreconditionViolated("A must lie strictly below Y".into()));
    }
    let g = gamma(a);
    let mut starred: Vec<(Component, ComponentShape)> = Vec::new();
    for comp in g.components().into_iter().filter(|c| !c.edges.is_empty()) {
        if star_witness(a, &comp)?.is_some() {
            let shape = classify(&comp);
            starred.push((comp, shape));
        }
    }
    let pick = |edge: Edge, comp: &Component, shape: ComponentShape| -> Result<EdgeChoice> {
        Ok(EdgeChoice {
            edge,
            contraction: edge_contraction(a, &edge)?,
            component: comp.clone(),
            shape,
        })
    };
    let book = starred
        .iter()
        .filter_map(|(c, s)| match s {
            ComponentShape::OpenBook { middle } => Some((*middle, c, *s)),
            _ => None,
        })
        .min_by_key(|(m, _, _)| *m);
    if let Some((m, c, s)) = book {
        return pick(m, c, s);
    }
    let single = starred
        .iter()
        .filter(|(_, s)| *s == ComponentShape::Edge)
        .map(|(c, s)| (c.edges[0], c, *s))
        .min_by_key(|(e, _, _)| *e);
    if let Some((e, c, s)) = single {
        return pick(e, c, s);
    }
    let any = starred
        .iter()
        .map(|(c, s)| (*c.edges.iter().min().expect("nonempty"), c, *s))
        .min_by_key(|(e, _, _)| *e);
    match any {
        Some((e, c, s)) => pick(e, c, s),
        None => Err(Error::NoEdge),
    }
}

/// `M(A)` for the colour count of the base.
pub fn choose_edge(a: &BelowSet) -> Result<EdgeChoice> {
    match a.s() {
        3 => choose_edge_3v(a),
        _ => choose_edge_2v(a),
    }
}

/// One block `Ω_i` of the three-colour partition with its glb `N_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaPart {
    /// Position of `A_{α_i}` in the chain (`0` = `A_0`).
    pub alpha: usize,
    pub edges: Vec<Edge>,
    pub n: BelowSet,
    pub involved: Vec<LeafId>,
    pub inside_component: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PushReport {
    pub t: usize,
    pub m: BelowSet,
    pub omega: Vec<Edge>,
    pub involves: usize,
    pub bound: usize,
    pub above_bottom: bool,
    pub parts: Vec<OmegaPart>,
    pub parts_disjoint: bool,
}

impl PushReport {
    pub fn ok(&self) -> bool {
        self.above_bottom && self.involves <= self.bound && self.parts_disjoint
    }

    pub fn describe_failure(&self) -> Option<String> {
        if self.ok() {
            return None;
        }
        let mut why = Vec::new();
        if !self.above_bottom {
            why.push("A_t is not below M".to_string());
        }
        if self.involves > self.bound {
            why.push(format!("involves {} > bound {}", self.involves, self.bound));
        }
        if !self.parts_disjoint {
            why.push("the N_i are not pairwise disjoint".to_string());
        }
        Some(why.join("; "))
    }
}

/// `max(4t, 2)` for two colours, `max(8t, 2)` for three.
pub fn certificate_bound(s: u8, t: usize) -> usize {
    let per = if s == 3 { 8 } else { 4 };
    (per * t).max(2)
}

/// `M(A_j)` for every vertex, top first.
pub fn vertex_choices(chain: &Chain) -> Result<Vec<EdgeChoice>> {
    chain.vertices().iter().map(choose_edge).collect()
}

/// Evaluates the pushing map and its certificate without failing on a
/// violated bound.
pub fn evaluate_chain(chain: &Chain) -> Result<PushReport> {
    let choices = vertex_choices(chain)?;
    evaluate_with_choices(chain, &choices)
}

pub fn evaluate_with_choices(chain: &Chain, choices: &[EdgeChoice]) -> Result<PushReport> {
    let t = chain.t();
    let bottom = chain.bottom();
    let mut omega: Vec<Edge> = choices.iter().map(|c| c.edge).collect();
    omega.sort();
    omega.dedup();
    let zs: Vec<BelowSet> = omega
        .iter()
        .map(|e| edge_contraction(bottom, e).map(|z| z.result))
        .collect::<Result<_>>()?;
    let m = glb_above(bottom, &zs)?;
    let above_bottom = bottom.leq(&m)?;
    let involves = m.involves();
    let s = chain.base().s();
    let (parts, parts_disjoint) = if s == 3 {
        let parts = omega_partition(chain, choices)?;
        let mut used = vec![false; chain.base().len()];
        let mut disjoint = true;
        for p in &parts {
            for &leaf in &p.involved {
                if std::mem::replace(&mut used[leaf as usize], true) {
                    disjoint = false;
                }
            }
        }
        (parts, disjoint)
    } else {
        (Vec::new(), true)
    };
    Ok(PushReport {
        t,
        m,
        omega,
        involves,
        bound: certificate_bound(s, t),
        above_bottom,
        parts,
        parts_disjoint,
    })
}

/// `M(σ)`, failing with the full certificate on any violation.
pub fn push_chain(chain: &Chain) -> Result<PushReport> {
    let report = evaluate_chain(chain)?;
    match report.describe_failure() {
        None => Ok(report),
        Some(why) => Err(Error::CertificateViolation(why)),
    }
}

/// Start at the bottom; repeatedly take the lowest vertex whose edge is not
/// yet covered and collect the edges of `Ω` lying in its component.
fn omega_partition(chain: &Chain, choices: &[EdgeChoice]) -> Result<Vec<OmegaPart>> {
    let t = chain.t();
    let mut covered: Vec<Edge> = Vec::new();
    let mut parts = Vec::new();
    let all: Vec<Edge> = choices.iter().map(|c| c.edge).collect();
    let mut alpha = Some(t);
    while let Some(j) = alpha {
        let delta = &choices[j].component;
        let mut edges: Vec<Edge> = all
            .iter()
            .filter(|e| delta.edges.contains(e) && !covered.contains(e))
            .copied()
            .collect();
        if !edges.contains(&choices[j].edge) {
            edges.push(choices[j].edge);
        }
        edges.sort();
        edges.dedup();
        let a = &chain.vertices()[j];
        let zs: Vec<BelowSet> = edges
            .iter()
            .map(|e| edge_contraction(a, e).map(|z| z.result))
            .collect::<Result<_>>()?;
        let n = glb_above(a, &zs)?;
        let involved = n.involved();
        let inside_component = involved.iter().all(|v| delta.vertices.contains(v));
        covered.extend(edges.iter().copied());
        parts.push(OmegaPart {
            alpha: j,
            edges,
            n,
            involved,
            inside_component,
        });
        alpha = (0..=t).rev().find(|&k| !covered.contains(&all[k]));
    }
    Ok(parts)
}

/// `M(σ) <= M(τ)` for a sub-chain `τ` of `σ`.
pub fn check_order_reversing(sigma: &Chain, tau: &Chain) -> Result<bool> {
    let ms = evaluate_chain(sigma)?.m;
    let mt = evaluate_chain(tau)?.m;
    ms.leq(&mt)
}

/// Order reversal against every nonempty sub-chain, reusing vertex choices.
pub fn check_all_sub_chains(chain: &Chain) -> Result<bool> {
    let choices = vertex_choices(chain)?;
    let whole = evaluate_with_choices(chain, &choices)?.m;
    let n = chain.vertices().len();
    for mask in 1u32..(1 << n) {
        let positions: Vec<usize> = (0..n).filter(|k| mask & (1 << k) != 0).collect();
        let sub = chain.sub_chain(&positions)?;
        let sub_choices: Vec<EdgeChoice> = positions.iter().map(|&k| choices[k].clone()).collect();
        let m = evaluate_with_choices(&sub, &sub_choices)?.m;
        if !whole.leq(&m)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boxes::{Colour, DyadicBox};

    fn bx(fields: &[&str]) -> DyadicBox {
        DyadicBox::from_fields(fields).unwrap()
    }

    fn pat(s: u8, boxes: &[&[&str]]) -> Arc<Pattern> {
        Arc::new(Pattern::new(s, boxes.iter().map(|f| bx(f))).unwrap())
    }

    fn quads() -> Arc<Pattern> {
        pat(2, &[&["0", "0"], &["0", "1"], &["1", "0"], &["1", "1"]])
    }

    fn leaf(y: &Pattern, f: &[&str]) -> LeafId {
        y.index_of(&bx(f)).unwrap() as LeafId
    }

    #[test]
    fn two_colour_choice_on_quadrants() {
        let y = quads();
        let root = BelowSet::root(y.clone()).unwrap();
        let c = choose_edge_2v(&root).unwrap();
        assert_eq!(
            c.edge,
            Edge::new(leaf(&y, &["0", "0"]), leaf(&y, &["1", "0"]), Colour::new(1, 2).unwrap())
        );
        let a0 = BelowSet::from_pattern(
            y.clone(),
            &Pattern::new(2, [bx(&["e", "0"]), bx(&["0", "1"]), bx(&["1", "1"])]).unwrap(),
        )
        .unwrap();
        assert_eq!(choose_edge_2v(&a0).unwrap().edge, c.edge);
        assert!(choose_edge_2v(&BelowSet::top(y)).is_err());
    }

    #[test]
    fn staircase_choice() {
        let y = pat(
            2,
            &[&["00", "e"], &["01", "e"], &["1", "1"], &["10", "0"], &["11", "01"], &["11", "00"]],
        );
        let a = BelowSet::from_pattern(
            y.clone(),
            &Pattern::new(2, [bx(&["0", "e"]), bx(&["1", "1"]), bx(&["1", "0"])]).unwrap(),
        )
        .unwrap();
        let c = choose_edge_2v(&a).unwrap();
        assert_eq!(
            c.edge,
            Edge::new(leaf(&y, &["00", "e"]), leaf(&y, &["01", "e"]), Colour::new(1, 2).unwrap())
        );
    }

    #[test]
    fn push_of_a_short_chain() {
        let y = quads();
        let root = BelowSet::root(y.clone()).unwrap();
        let a0 = BelowSet::from_pattern(
            y.clone(),
            &Pattern::new(2, [bx(&["e", "0"]), bx(&["0", "1"]), bx(&["1", "1"])]).unwrap(),
        )
        .unwrap();
        let sigma = Chain::new(vec![a0.clone(), root]).unwrap();
        let r = push_chain(&sigma).unwrap();
        assert_eq!(r.m, a0);
        assert_eq!(r.involves, 2);
        assert_eq!(r.bound, 4);
        let tau = sigma.sub_chain(&[0]).unwrap();
        let single = push_chain(&tau).unwrap();
        assert_eq!(single.m, a0);
        assert_eq!(single.bound, 2);
        assert!(check_order_reversing(&sigma, &tau).unwrap());
        assert!(check_order_reversing(&sigma, &sigma).unwrap());
        assert!(check_all_sub_chains(&sigma).unwrap());
    }

    #[test]
    fn chains_must_ascend() {
        let y = quads();
        let root = BelowSet::root(y.clone()).unwrap();
        assert!(Chain::new(vec![root.clone(), root.clone()]).is_err());
        assert!(Chain::new(vec![BelowSet::top(y)]).is_err());
        assert!(Chain::new(vec![]).is_err());
    }

    #[test]
    fn three_colour_choices() {
        let y = pat(3, &[&["0", "e", "e"], &["1", "e", "e"]]);
        let root = BelowSet::root(y).unwrap();
        let c = choose_edge_3v(&root).unwrap();
        assert_eq!(c.shape, ComponentShape::Edge);

        let mut octants = Vec::new();
        for k in 0..8u64 {
            octants.push(
                DyadicBox::from_addrs(&[
                    crate::Address::from_bits(1, k >> 2).unwrap(),
                    crate::Address::from_bits(1, (k >> 1) & 1).unwrap(),
                    crate::Address::from_bits(1, k & 1).unwrap(),
                ])
                .unwrap(),
            );
        }
        let y = Arc::new(Pattern::new(3, octants).unwrap());
        let root = BelowSet::root(y).unwrap();
        let c = choose_edge_3v(&root).unwrap();
        assert_eq!(c.shape, ComponentShape::Cube);
        assert_eq!(c.edge.colour, Colour::new(1, 3).unwrap());
        let r = push_chain(&Chain::new(vec![root]).unwrap()).unwrap();
        assert_eq!(r.involves, 2);
        assert_eq!(r.parts.len(), 1);
    }

    #[test]
    fn bounds() {
        assert_eq!(certificate_bound(2, 0), 2);
        assert_eq!(certificate_bound(2, 3), 12);
        assert_eq!(certificate_bound(3, 1), 8);
    }
}
