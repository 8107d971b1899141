//! Worked instances shipped as golden files, plus builders that produce
//! them from scratch.

use std::sync::Arc;

use brinv_core::text::{parse_below_set, parse_pattern, write_below_set, write_pattern};
use brinv_core::{BelowSet, DyadicBox, LeafId, Pattern, SimpleContraction};

pub const OPEN_BOOK_7: &str = include_str!("../fixtures/open_book_7.pattern");
pub const OPEN_BOOK_7_Y0: &str = include_str!("../fixtures/open_book_7.y0");
pub const OPEN_BOOK_7_Y1: &str = include_str!("../fixtures/open_book_7.y1");
pub const OPEN_BOOK_8: &str = include_str!("../fixtures/open_book_8.pattern");
pub const OPEN_BOOK_8_Y0: &str = include_str!("../fixtures/open_book_8.y0");
pub const OPEN_BOOK_8_Y1: &str = include_str!("../fixtures/open_book_8.y1");
pub const OPEN_BOOK_13: &str = include_str!("../fixtures/open_book_13.pattern");
pub const OPEN_BOOK_13_Y0: &str = include_str!("../fixtures/open_book_13.y0");
pub const OPEN_BOOK_13_Y1: &str = include_str!("../fixtures/open_book_13.y1");
pub const STAIRCASE: &str = include_str!("../fixtures/staircase_6.below");

/// Every golden file with its name, for byte-stability checks.
pub const GOLDEN: [(&str, &str); 10] = [
    ("open_book_7.pattern", OPEN_BOOK_7),
    ("open_book_7.y0", OPEN_BOOK_7_Y0),
    ("open_book_7.y1", OPEN_BOOK_7_Y1),
    ("open_book_8.pattern", OPEN_BOOK_8),
    ("open_book_8.y0", OPEN_BOOK_8_Y0),
    ("open_book_8.y1", OPEN_BOOK_8_Y1),
    ("open_book_13.pattern", OPEN_BOOK_13),
    ("open_book_13.y0", OPEN_BOOK_13_Y0),
    ("open_book_13.y1", OPEN_BOOK_13_Y1),
    ("staircase_6.below", STAIRCASE),
];

fn bx(fields: &[&str]) -> DyadicBox {
    DyadicBox::from_fields(fields).expect("valid fixture box")
}

/// The seven cubes of the three-colour open book, numbered 1..7.
pub const OPEN_BOOK_LABELS: [[&str; 3]; 7] = [
    ["1", "1", "0"],
    ["1", "0", "0"],
    ["0", "0", "0"],
    ["0", "0", "1"],
    ["1", "0", "1"],
    ["1", "1", "1"],
    ["0", "1", "e"],
];

/// An open-book instance: the base, the leaves named 1..6, and the two
/// contractions `Y0 = {1,2}` (colour 2) and `Y1 = {2,3}` (colour 1) of the
/// root.
#[derive(Clone, Debug)]
pub struct OpenBook {
    pub base: Arc<Pattern>,
    pub labels: Vec<LeafId>,
    pub y0: BelowSet,
    pub y1: BelowSet,
    /// Expected number of leaves involved in `glb(Y0, Y1)`.
    pub expected_involves: usize,
}

fn contraction_of(base: &Arc<Pattern>, a: LeafId, b: LeafId) -> BelowSet {
    let root = BelowSet::root(base.clone()).expect("root");
    let (low, high, c) = root.gluing(a, b).expect("glueable at the root");
    SimpleContraction::new(base, low, high, c).expect("valid contraction").result
}

fn open_book_from(boxes: Vec<DyadicBox>, named: [DyadicBox; 6], expected: usize) -> OpenBook {
    let base = Arc::new(Pattern::new(3, boxes).expect("fixture tiles"));
    let labels: Vec<LeafId> = named
        .iter()
        .map(|b| base.index_of(b).expect("named box present") as LeafId)
        .collect();
    let y0 = contraction_of(&base, labels[0], labels[1]);
    let y1 = contraction_of(&base, labels[1], labels[2]);
    OpenBook {
        base,
        labels,
        y0,
        y1,
        expected_involves: expected,
    }
}

fn first_six() -> [DyadicBox; 6] {
    std::array::from_fn(|k| bx(&OPEN_BOOK_LABELS[k]))
}

pub fn build_open_book_7() -> OpenBook {
    let boxes = OPEN_BOOK_LABELS.iter().map(|f| bx(f)).collect();
    open_book_from(boxes, first_six(), 7)
}

/// Cube 7 split in colour 1.
pub fn build_open_book_8() -> OpenBook {
    let mut boxes: Vec<DyadicBox> = OPEN_BOOK_LABELS[..6].iter().map(|f| bx(f)).collect();
    boxes.push(bx(&["00", "1", "e"]));
    boxes.push(bx(&["01", "1", "e"]));
    open_book_from(boxes, first_six(), 8)
}

/// Cubes 1..6 halved in colour 3; the names 1..6 refer to the low halves.
pub fn build_open_book_13() -> OpenBook {
    let mut boxes = Vec::new();
    let mut named = Vec::new();
    for f in &OPEN_BOOK_LABELS[..6] {
        let low = format!("{}0", f[2]);
        let high = format!("{}1", f[2]);
        boxes.push(bx(&[f[0], f[1], &low]));
        boxes.push(bx(&[f[0], f[1], &high]));
        named.push(bx(&[f[0], f[1], &low]));
    }
    boxes.push(bx(&OPEN_BOOK_LABELS[6]));
    open_book_from(boxes, named.try_into().expect("six names"), 13)
}

/// The three open-book instances loaded from their golden files.
pub fn open_books() -> brinv_core::Result<Vec<OpenBook>> {
    let specs = [
        (OPEN_BOOK_7, OPEN_BOOK_7_Y0, OPEN_BOOK_7_Y1, build_open_book_7()),
        (OPEN_BOOK_8, OPEN_BOOK_8_Y0, OPEN_BOOK_8_Y1, build_open_book_8()),
        (OPEN_BOOK_13, OPEN_BOOK_13_Y0, OPEN_BOOK_13_Y1, build_open_book_13()),
    ];
    let mut out = Vec::new();
    for (p, y0, y1, built) in specs {
        let base = Arc::new(parse_pattern(p)?);
        let y0 = parse_below_set(y0)?;
        let y1 = parse_below_set(y1)?;
        // Rebase onto the shared pattern so the sets compare by identity.
        let y0 = BelowSet::new(base.clone(), y0.elems().to_vec())?;
        let y1 = BelowSet::new(base.clone(), y1.elems().to_vec())?;
        out.push(OpenBook {
            base,
            labels: built.labels,
            y0,
            y1,
            expected_involves: built.expected_involves,
        });
    }
    Ok(out)
}

/// The six-leaf staircase: `Y` and the below-set `A = {(0,e), (1,1), (1,0)}`.
pub fn build_staircase() -> BelowSet {
    let base = Arc::new(
        Pattern::new(
            2,
            [
                bx(&["00", "e"]),
                bx(&["01", "e"]),
                bx(&["1", "1"]),
                bx(&["10", "0"]),
                bx(&["11", "01"]),
                bx(&["11", "00"]),
            ],
        )
        .expect("tiles"),
    );
    let a = Pattern::new(2, [bx(&["0", "e"]), bx(&["1", "1"]), bx(&["1", "0"])]).expect("tiles");
    BelowSet::from_pattern(base, &a).expect("below")
}

/// The staircase leaves in the order 1..6.
pub fn staircase_labels(base: &Pattern) -> [LeafId; 6] {
    let named = [["00", "e"], ["01", "e"], ["1", "1"], ["10", "0"], ["11", "01"], ["11", "00"]];
    named.map(|f| base.index_of(&bx(&f)).expect("present") as LeafId)
}

/// Serialized forms of the builders, in [`GOLDEN`] order.
pub fn rendered() -> Vec<String> {
    let mut out = Vec::new();
    for ob in [build_open_book_7(), build_open_book_8(), build_open_book_13()] {
        out.push(write_pattern(&ob.base));
        out.push(write_below_set(&ob.y0));
        out.push(write_below_set(&ob.y1));
    }
    out.push(write_below_set(&build_staircase()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_files_are_byte_stable() {
        let fresh = rendered();
        if std::env::var_os("BRINV_BLESS").is_some() {
            let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
            std::fs::create_dir_all(&dir).unwrap();
            for ((name, _), text) in GOLDEN.iter().zip(&fresh) {
                std::fs::write(dir.join(name), text).unwrap();
            }
            return;
        }
        for ((name, golden), text) in GOLDEN.iter().zip(&fresh) {
            assert_eq!(golden, text, "{name} drifted");
        }
    }

    #[test]
    fn golden_files_round_trip() {
        for (name, text) in GOLDEN {
            let out = if name.ends_with(".pattern") {
                write_pattern(&parse_pattern(text).unwrap())
            } else {
                write_below_set(&parse_below_set(text).unwrap())
            };
            assert_eq!(out, text, "{name}");
        }
    }

    #[test]
    fn open_books_load() {
        let books = open_books().unwrap();
        assert_eq!(books.iter().map(|b| b.base.len()).collect::<Vec<_>>(), [7, 8, 13]);
        for b in &books {
            assert_eq!(b.y0.involves(), 2);
            assert_eq!(b.y1.involves(), 2);
        }
    }
}
