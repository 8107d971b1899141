//! Plain-text formats for patterns, below-sets, chains, group elements and
//! edge lists. Blank lines and lines starting with `#` are ignored.
//!
//! ```text
//! s=2
//! 0:e
//! 1:e
//! ---
//! 0:e=1:e 1:e=0:e
//! ```

use std::sync::Arc;

use crate::boxes::{Address, Colour, DyadicBox, Pattern};
use crate::error::{Error, Result};
use crate::fragments::{BelowSet, Fragment, LeafId};
use crate::gamma::Edge;
use crate::group::GroupElement;
use crate::pushing::Chain;

const SEPARATOR: &str = "---";

struct Line<'a> {
    number: usize,
    /// Column of the first non-blank character.
    indent: usize,
    text: &'a str,
}

fn content_lines(text: &str) -> Vec<Line<'_>> {
    text.lines()
        .enumerate()
        .filter_map(|(k, raw)| {
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                return None;
            }
            let indent = raw.len() - raw.trim_start().len();
            Some(Line {
                number: k + 1,
                indent: indent + 1,
                text: trimmed,
            })
        })
        .collect()
}

fn syntax(line: &Line<'_>, offset: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line: line.number,
        column: line.indent + offset,
        message: message.into(),
    }
}

fn parse_header(line: &Line<'_>) -> Result<u8> {
    let value = line
        .text
        .strip_prefix("s=")
        .ok_or_else(|| syntax(line, 0, "expected `s=<1|2|3>`"))?;
    match value.trim() {
        "1" => Ok(1),
        "2" => Ok(2),
        "3" => Ok(3),
        other => Err(syntax(line, 2, format!("unsupported colour count `{other}`"))),
    }
}

/// A box in field syntax starting at byte `offset` of the line.
fn parse_box_at(line: &Line<'_>, token: &str, offset: usize, s: u8) -> Result<DyadicBox> {
    let mut addrs = Vec::with_capacity(s as usize);
    let mut col = offset;
    for field in token.split(':') {
        if field.is_empty() {
            return Err(syntax(line, col, "empty address field (use `e`)"));
        }
        let a = Address::parse(field)
            .ok_or_else(|| syntax(line, col, format!("bad address `{field}`")))?;
        addrs.push(a);
        col += field.len() + 1;
    }
    if addrs.len() != s as usize {
        return Err(syntax(
            line,
            offset,
            format!("expected {s} fields, found {}", addrs.len()),
        ));
    }
    DyadicBox::from_addrs(&addrs)
}

fn parse_pattern_lines(lines: &[Line<'_>]) -> Result<Pattern> {
    let header = lines.first().ok_or(Error::Syntax {
        line: 1,
        column: 1,
        message: "missing `s=` header".into(),
    })?;
    let s = parse_header(header)?;
    let boxes = lines[1..]
        .iter()
        .map(|l| parse_box_at(l, l.text, 0, s))
        .collect::<Result<Vec<_>>>()?;
    if boxes.is_empty() {
        return Err(syntax(header, 0, "pattern has no boxes"));
    }
    Pattern::new(s, boxes).map_err(|e| Error::InvariantViolation(e.to_string()))
}

pub fn parse_pattern(text: &str) -> Result<Pattern> {
    let lines = content_lines(text);
    if let Some(sep) = lines.iter().find(|l| l.text == SEPARATOR) {
        return Err(syntax(sep, 0, "unexpected separator in a pattern"));
    }
    parse_pattern_lines(&lines)
}

pub fn write_pattern(p: &Pattern) -> String {
    let mut out = format!("s={}\n", p.s());
    for b in p.boxes() {
        out.push_str(&format!("{b}\n"));
    }
    out
}

fn blocks<'a>(lines: Vec<Line<'a>>) -> Vec<Vec<Line<'a>>> {
    let mut out = vec![Vec::new()];
    for l in lines {
        if l.text == SEPARATOR {
            out.push(Vec::new());
        } else {
            out.last_mut().expect("nonempty").push(l);
        }
    }
    out
}

fn parse_fragment_line(line: &Line<'_>, base: &Pattern) -> Result<Fragment> {
    let mut cells = Vec::new();
    let mut offset = 0;
    for token in line.text.split(' ') {
        if token.is_empty() {
            offset += 1;
            continue;
        }
        let (cell, leaf) = token
            .split_once('=')
            .ok_or_else(|| syntax(line, offset, "expected `cell=leaf`"))?;
        let cell_box = parse_box_at(line, cell, offset, base.s())?;
        let leaf_box = parse_box_at(line, leaf, offset + cell.len() + 1, base.s())?;
        let id = base.index_of(&leaf_box).ok_or_else(|| {
            syntax(line, offset + cell.len() + 1, format!("{leaf_box} is not a base box"))
        })?;
        cells.push((id as LeafId, cell_box));
        offset += token.len() + 1;
    }
    Fragment::from_cells(base.s(), cells).map_err(|e| Error::InvariantViolation(format!("line {}: {e}", line.number)))
}

fn parse_below_block(lines: &[Line<'_>], base: &Arc<Pattern>) -> Result<BelowSet> {
    let elems = lines
        .iter()
        .map(|l| parse_fragment_line(l, base))
        .collect::<Result<Vec<_>>>()?;
    BelowSet::new(base.clone(), elems)
}

pub fn parse_below_set(text: &str) -> Result<BelowSet> {
    let bs = blocks(content_lines(text));
    if bs.len() != 2 {
        return Err(Error::Syntax {
            line: 1,
            column: 1,
            message: "expected a base block and one `---` separated fragment block".into(),
        });
    }
    let base = Arc::new(parse_pattern_lines(&bs[0])?);
    parse_below_block(&bs[1], &base)
}

fn write_fragments(w: &BelowSet, out: &mut String) {
    for f in w.elems() {
        out.push_str(&w.display_fragment(f));
        out.push('\n');
    }
}

pub fn write_below_set(w: &BelowSet) -> String {
    let mut out = write_pattern(w.base());
    out.push_str(SEPARATOR);
    out.push('\n');
    write_fragments(w, &mut out);
    out
}

/// Base block, then one block per vertex from the bottom `A_t` up to `A_0`.
pub fn parse_chain(text: &str) -> Result<Chain> {
    let bs = blocks(content_lines(text));
    if bs.len() < 2 {
        return Err(Error::Syntax {
            line: 1,
            column: 1,
            message: "a chain needs a base block and at least one vertex".into(),
        });
    }
    let base = Arc::new(parse_pattern_lines(&bs[0])?);
    let mut vertices = bs[1..]
        .iter()
        .map(|b| parse_below_block(b, &base))
        .collect::<Result<Vec<_>>>()?;
    vertices.reverse();
    Chain::new(vertices)
}

pub fn write_chain(chain: &Chain) -> String {
    let mut out = write_pattern(chain.base());
    for v in chain.vertices().iter().rev() {
        out.push_str(SEPARATOR);
        out.push('\n');
        write_fragments(v, &mut out);
    }
    out
}

pub fn parse_element(text: &str) -> Result<GroupElement> {
    let lines = content_lines(text);
    let header = lines.first().ok_or(Error::Syntax {
        line: 1,
        column: 1,
        message: "missing `s=` header".into(),
    })?;
    let s = parse_header(header)?;
    let mut pairs = Vec::new();
    for l in &lines[1..] {
        let (d, r) = l
            .text
            .split_once("->")
            .ok_or_else(|| syntax(l, 0, "expected `domBox -> ranBox`"))?;
        let dom = parse_box_at(l, d.trim(), 0, s)?;
        let ran_offset = l.text.len() - r.trim_start().len();
        let ran = parse_box_at(l, r.trim(), ran_offset, s)?;
        pairs.push((dom, ran));
    }
    GroupElement::new(s, pairs)
}

pub fn write_element(g: &GroupElement) -> String {
    let mut out = format!("s={}\n", g.s());
    for (d, r) in g.pairs() {
        out.push_str(&format!("{d} -> {r}\n"));
    }
    out
}

/// `i <-> j : colour` lines over the boxes of `base`.
pub fn parse_edge_list(text: &str, base: &Pattern) -> Result<Vec<Edge>> {
    let mut edges = Vec::new();
    for l in content_lines(text) {
        let (pair, colour) = l
            .text
            .rsplit_once(':')
            .filter(|(p, _)| p.contains("<->"))
            .ok_or_else(|| syntax(&l, 0, "expected `i <-> j : colour`"))?;
        let (a, b) = pair.split_once("<->").expect("checked");
        let ba = parse_box_at(&l, a.trim(), 0, base.s())?;
        let bb = parse_box_at(&l, b.trim(), pair.find("<->").unwrap_or(0) + 3, base.s())?;
        let c: u8 = colour
            .trim()
            .parse()
            .map_err(|_| syntax(&l, pair.len() + 1, "bad colour"))?;
        let c = Colour::new(c, base.s())?;
        let ia = base.index_of(&ba).ok_or(Error::BoxNotInPattern(ba))?;
        let ib = base.index_of(&bb).ok_or(Error::BoxNotInPattern(bb))?;
        edges.push(Edge::new(ia as LeafId, ib as LeafId, c));
    }
    edges.sort();
    Ok(edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fragments::SimpleContraction;

    #[test]
    fn pattern_round_trip() {
        let p = parse_pattern("s=2\n0:e\n1:e\n").unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(write_pattern(&p), "s=2\n0:e\n1:e\n");
        let commented = parse_pattern("# halves\ns=2\n\n1:e\n0:e\n").unwrap();
        assert_eq!(commented, p);
    }

    #[test]
    fn pattern_errors() {
        match parse_pattern("s=2\n0:\n") {
            Err(Error::Syntax { line: 2, column: 3, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_pattern("s=2\n0\n"), Err(Error::Syntax { line: 2, .. })));
        assert!(matches!(parse_pattern("s=4\n"), Err(Error::Syntax { line: 1, .. })));
        assert!(matches!(parse_pattern("0:e\n"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_pattern("s=2\n0:2\n"), Err(Error::Syntax { .. })));
        assert!(matches!(
            parse_pattern("s=2\n0:e\n0:0\n"),
            Err(Error::InvariantViolation(_))
        ));
    }

    #[test]
    fn below_set_round_trip() {
        let y = Arc::new(parse_pattern("s=2\n0:e\n1:e\n").unwrap());
        let z = SimpleContraction::new(&y, 1, 0, Colour::new(2, 2).unwrap()).unwrap();
        let text = write_below_set(&z.result);
        assert_eq!(text, "s=2\n0:e\n1:e\n---\ne:1=0:e e:0=1:e\n");
        assert_eq!(parse_below_set(&text).unwrap(), z.result);
        assert!(parse_below_set("s=2\n0:e\n1:e\n---\ne:1=0:e\n").is_err());
    }

    #[test]
    fn element_round_trip() {
        let text = "s=2\n0:0 -> e:0\n0:1 -> e:11\n1:e -> e:10\n";
        let g = parse_element(text).unwrap();
        assert_eq!(write_element(&g), text);
        assert!(matches!(parse_element("s=2\n0:0 e:0\n"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn chain_round_trip() {
        let y = Arc::new(parse_pattern("s=2\n0:0\n0:1\n1:0\n1:1\n").unwrap());
        let root = BelowSet::root(y.clone()).unwrap();
        let half = BelowSet::from_pattern(y.clone(), &parse_pattern("s=2\n0:e\n1:e\n").unwrap()).unwrap();
        let chain = Chain::new(vec![half, root]).unwrap();
        let text = write_chain(&chain);
        assert_eq!(parse_chain(&text).unwrap(), chain);
    }

    #[test]
    fn edge_list_round_trip() {
        let y = Arc::new(parse_pattern("s=2\n0:0\n0:1\n1:0\n1:1\n").unwrap());
        let g = crate::gamma::gamma(&BelowSet::root(y.clone()).unwrap());
        assert_eq!(parse_edge_list(&g.to_edge_list(), &y).unwrap(), g.edges());
    }
}
