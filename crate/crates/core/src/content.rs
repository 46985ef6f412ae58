//! Content maps and the oriental reading of a diagram.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::affine::AffinePermutation;
use crate::diagram::{rothe_diagram, AffineDiagram, Cell};
use crate::labelling::Labelling;

/// Condition violated by a diagram that is not a permutation diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Rule {
    NW,
    C1,
    C2,
    C3,
    C4,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Rule::NW => "NW",
            Rule::C1 => "C1",
            Rule::C2 => "C2",
            Rule::C3 => "C3",
            Rule::C4 => "C4",
        };
        f.write_str(s)
    }
}

/// A failed rule with the witness boxes, in full-plane coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rejection {
    pub rule: Rule,
    pub cells: Vec<Cell>,
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at", self.rule)?;
        for c in &self.cells {
            write!(f, " ({}, {})", c.row, c.col)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContentMap {
    diagram: AffineDiagram,
    content: BTreeMap<Cell, i64>,
}

impl ContentMap {
    pub fn diagram(&self) -> &AffineDiagram {
        &self.diagram
    }

    /// Contents of the boxes of `[D]`.
    pub fn values(&self) -> &BTreeMap<Cell, i64> {
        &self.content
    }

    /// Content of any box of the full diagram, `C(b + t(n, n)) = C(b) + tn`.
    pub fn at(&self, cell: Cell) -> Option<i64> {
        let n = self.diagram.period();
        let (rep, t) = cell.representative(n);
        self.content.get(&rep).map(|c| c + t * n as i64)
    }

    /// Boxes of the full diagram with content `k`, north to south.
    pub fn boxes_with_content(&self, k: i64) -> Vec<Cell> {
        let n = self.diagram.period() as i64;
        let mut out: Vec<Cell> = self
            .content
            .iter()
            .filter(|(_, &c)| (k - c).rem_euclid(n) == 0)
            .map(|(b, &c)| b.shifted((k - c) / n, n as usize))
            .collect();
        out.sort();
        out
    }
}

/// Oriental reading: columns from right to left, each read top to bottom.
pub fn oriental_order(d: &AffineDiagram) -> Vec<Cell> {
    let mut cells: Vec<Cell> = d.cells().iter().copied().collect();
    cells.sort_by_key(|c| (-c.col, c.row));
    cells
}

/// Labels `1..=|[D]|` in oriental reading order.
pub fn oriental_labelling(d: &AffineDiagram) -> BTreeMap<Cell, u32> {
    oriental_order(d).into_iter().zip(1..).collect()
}

pub fn oriental_labelling_of(w: &AffinePermutation) -> Labelling {
    let values = oriental_labelling(&rothe_diagram(w));
    Labelling::new(w.clone(), values).expect("oriental labels are positive and cover D(w)")
}

/// `C(b) = row(b) + #boxes to the left of b`.
pub fn content_of_permutation_diagram(w: &AffinePermutation) -> ContentMap {
    let diagram = rothe_diagram(w);
    let content = diagram
        .cells()
        .iter()
        .map(|&b| (b, b.row + diagram.row(b.row).into_iter().filter(|&c| c < b.col).count() as i64))
        .collect();
    ContentMap { diagram, content }
}

/// `C(b) = col(b) + #boxes above b`.
pub fn content_by_columns(w: &AffinePermutation) -> ContentMap {
    let diagram = rothe_diagram(w);
    let content = diagram
        .cells()
        .iter()
        .map(|&b| (b, b.col + diagram.column(b.col).into_iter().filter(|&r| r < b.row).count() as i64))
        .collect();
    ContentMap { diagram, content }
}

/// The unique content map of `D`, if any.
///
/// Contents are forced along rows by the leftmost-box rule and unit steps,
/// and extended periodically; what remains is to check columns and strict
/// south-east pairs.
pub fn find_content(d: &AffineDiagram) -> Result<ContentMap, Rejection> {
    let n = d.period() as i64;
    let mut content = BTreeMap::new();
    for r in 1..=n {
        for (k, c) in d.row(r).into_iter().enumerate() {
            content.insert(Cell::new(r, c), r + k as i64);
        }
    }
    let map = ContentMap { diagram: d.clone(), content };

    for &b in d.cells() {
        let column = d.column(b.col);
        let pos = column.binary_search(&b.row).expect("box lies in its own column");
        if let Some(&below) = column.get(pos + 1) {
            let next = Cell::new(below, b.col);
            if map.at(next).unwrap() - map.content[&b] != 1 {
                return Err(Rejection { rule: Rule::C1, cells: vec![b, next] });
            }
        }
    }
    for &b in d.cells() {
        let topmost = d.column(b.col).first() == Some(&b.row);
        if topmost && map.content[&b] != b.col {
            return Err(Rejection { rule: Rule::C4, cells: vec![b] });
        }
    }
    // For a fixed pair of representatives the content gap grows with the
    // translate, so the nearest strictly south-east translate decides.
    for (&a, &ca) in &map.content {
        for (&b, &cb) in &map.content {
            let t = (a.row - b.row).div_euclid(n).max((a.col - b.col).div_euclid(n)) + 1;
            if cb + t * n - ca < 2 {
                return Err(Rejection { rule: Rule::C2, cells: vec![a, b.shifted(t, n as usize)] });
            }
        }
    }
    Ok(map)
}

/// Independent check of the four content conditions for every box pair
/// within `reach` translates.
pub fn verify_content(map: &ContentMap, reach: i64) -> Option<Rule> {
    let d = &map.diagram;
    let n = d.period();
    let boxes: Vec<Cell> = (-reach..=reach).flat_map(|t| d.cells().iter().map(move |b| b.shifted(t, n))).collect();
    for &b in &boxes {
        let c = map.at(b).unwrap();
        if map.at(b.shifted(1, n)) != Some(c + n as i64) {
            return Some(Rule::C3);
        }
        let row = d.row(b.row);
        if row.first() == Some(&b.col) && c != b.row {
            return Some(Rule::C4);
        }
        let col = d.column(b.col);
        if col.first() == Some(&b.row) && c != b.col {
            return Some(Rule::C4);
        }
        if let Some(&e) = row.iter().find(|&&x| x > b.col) {
            if map.at(Cell::new(b.row, e)) != Some(c + 1) {
                return Some(Rule::C1);
            }
        }
        if let Some(&s) = col.iter().find(|&&x| x > b.row) {
            if map.at(Cell::new(s, b.col)) != Some(c + 1) {
                return Some(Rule::C1);
            }
        }
        for &x in &boxes {
            if x.row > b.row && x.col > b.col && map.at(x).unwrap() - c < 2 {
                return Some(Rule::C2);
            }
        }
    }
    None
}
