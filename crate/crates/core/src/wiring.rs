//! Wiring diagrams of NW diagrams with a content map, and recognition of
//! affine permutation diagrams.
//!
//! Each box has four edge midpoints (ports). Inside a box the wires cross,
//! joining north to south and west to east. Every port carries exactly one
//! further attachment: a segment to a neighbouring box, a tunnel, or a ray.

use std::collections::BTreeMap;

use crate::affine::AffinePermutation;
use crate::content::{find_content, ContentMap, Rejection, Rule};
use crate::diagram::{rothe_diagram, AffineDiagram, Cell};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    N,
    E,
    S,
    W,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Port {
    pub cell: Cell,
    pub side: Side,
}

impl Port {
    fn new(cell: Cell, side: Side) -> Self {
        Self { cell, side }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Attachment {
    Port(Port),
    /// NE-ray with the given index.
    NeRay(i64),
    /// SW-ray of index `w_j`, storing `j`.
    SwRay(i64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SegmentKind {
    Horizontal,
    Vertical,
    Tunnel,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WiringDiagram {
    content: ContentMap,
    /// NE-rays leaving the boxes of `[D]`, by index.
    pub ne_rays: BTreeMap<i64, Port>,
    /// SW-rays leaving the boxes of `[D]`, by the `j` of `w_j`.
    pub sw_rays: BTreeMap<i64, Port>,
    /// Segments starting at an east or south port of a box of `[D]`.
    pub segments: Vec<(Port, Port, SegmentKind)>,
}

struct Geometry<'a> {
    d: &'a AffineDiagram,
    c: &'a ContentMap,
}

impl Geometry<'_> {
    fn content(&self, b: Cell) -> i64 {
        self.c.at(b).expect("box of the diagram")
    }

    fn right(&self, b: Cell) -> Option<Cell> {
        self.d.row(b.row).into_iter().find(|&c| c > b.col).map(|c| Cell::new(b.row, c))
    }

    fn left(&self, b: Cell) -> Option<Cell> {
        self.d.row(b.row).into_iter().rev().find(|&c| c < b.col).map(|c| Cell::new(b.row, c))
    }

    fn below(&self, b: Cell) -> Option<Cell> {
        self.d.column(b.col).into_iter().find(|&r| r > b.row).map(|r| Cell::new(r, b.col))
    }

    fn above(&self, b: Cell) -> Option<Cell> {
        self.d.column(b.col).into_iter().rev().find(|&r| r < b.row).map(|r| Cell::new(r, b.col))
    }

    /// Boxes sharing `b`'s content, north to south; they must form a chain
    /// running from north-east to south-west.
    fn chain(&self, b: Cell) -> Result<Vec<Cell>> {
        let chain = self.c.boxes_with_content(self.content(b));
        if chain.windows(2).any(|p| !(p[0].row < p[1].row && p[0].col > p[1].col)) {
            return Err(Error::MalformedWiring(format!("content {} boxes are not a NE-SW chain", self.content(b))));
        }
        Ok(chain)
    }

    fn is_ne_most(&self, b: Cell) -> Result<bool> {
        Ok(self.chain(b)?.first() == Some(&b))
    }

    fn is_sw_most(&self, b: Cell) -> Result<bool> {
        Ok(self.chain(b)?.last() == Some(&b))
    }

    /// Tunnel partner of `a`: the nearest box of the same content to its
    /// north-east, when `a` has no box to its right and is not NE-most.
    fn tunnel_up(&self, a: Cell) -> Result<Option<Cell>> {
        if self.right(a).is_some() || self.is_ne_most(a)? {
            return Ok(None);
        }
        let chain = self.chain(a)?;
        let pos = chain.iter().position(|&x| x == a).unwrap();
        Ok(Some(chain[pos - 1]))
    }

    fn attachments(&self, port: Port) -> Result<Vec<Attachment>> {
        let b = port.cell;
        let k = self.content(b);
        let mut out = Vec::new();
        match port.side {
            Side::N => match self.above(b) {
                Some(a) => out.push(Attachment::Port(Port::new(a, Side::S))),
                None if self.is_ne_most(b)? => out.push(Attachment::NeRay(k)),
                None => {}
            },
            Side::E => match self.right(b) {
                Some(r) => out.push(Attachment::Port(Port::new(r, Side::W))),
                None if self.is_ne_most(b)? => out.push(Attachment::NeRay(k + 1)),
                None => out.extend(self.tunnel_up(b)?.map(|t| Attachment::Port(Port::new(t, Side::S)))),
            },
            Side::S => {
                match self.below(b) {
                    Some(x) => out.push(Attachment::Port(Port::new(x, Side::N))),
                    None if self.is_sw_most(b)? => out.push(Attachment::SwRay(k + 1)),
                    None => {}
                }
                for a in self.chain(b)? {
                    if a != b && self.tunnel_up(a)? == Some(b) {
                        out.push(Attachment::Port(Port::new(a, Side::E)));
                    }
                }
            }
            Side::W => match self.left(b) {
                Some(l) => out.push(Attachment::Port(Port::new(l, Side::E))),
                None if self.is_sw_most(b)? => out.push(Attachment::SwRay(k)),
                None => {}
            },
        }
        Ok(out)
    }

    fn attachment(&self, port: Port) -> Result<Attachment> {
        let found = self.attachments(port)?;
        match found.as_slice() {
            [one] => Ok(*one),
            _ => Err(Error::MalformedWiring(format!(
                "{:?} port of ({}, {}) has {} attachments",
                port.side,
                port.cell.row,
                port.cell.col,
                found.len()
            ))),
        }
    }
}

/// Builds the wiring diagram and checks that every port has degree two.
pub fn build_wiring(d: &AffineDiagram, c: &ContentMap) -> Result<WiringDiagram> {
    let geo = Geometry { d, c };
    let mut ne_rays = BTreeMap::new();
    let mut sw_rays = BTreeMap::new();
    let mut segments = Vec::new();
    for &b in d.cells() {
        for side in [Side::N, Side::E, Side::S, Side::W] {
            let port = Port::new(b, side);
            match geo.attachment(port)? {
                Attachment::NeRay(i) => {
                    if ne_rays.insert(i, port).is_some() {
                        return Err(Error::MalformedWiring(format!("two NE-rays of index {i}")));
                    }
                }
                Attachment::SwRay(j) => {
                    if sw_rays.insert(j, port).is_some() {
                        return Err(Error::MalformedWiring(format!("two SW-rays of index w_{j}")));
                    }
                }
                Attachment::Port(other) => {
                    let kind = match (side, other.side) {
                        (Side::E, Side::W) => Some(SegmentKind::Horizontal),
                        (Side::S, Side::N) => Some(SegmentKind::Vertical),
                        (Side::E, Side::S) => Some(SegmentKind::Tunnel),
                        _ => None,
                    };
                    if let Some(kind) = kind {
                        segments.push((port, other, kind));
                    }
                }
            }
        }
    }
    Ok(WiringDiagram { content: c.clone(), ne_rays, sw_rays, segments })
}

impl WiringDiagram {
    pub fn content(&self) -> &ContentMap {
        &self.content
    }

    pub fn tunnels(&self) -> impl Iterator<Item = (Port, Port)> + '_ {
        self.segments.iter().filter(|s| s.2 == SegmentKind::Tunnel).map(|s| (s.0, s.1))
    }

    /// Follows the wire entering at NE-ray `i` down to its SW-ray and
    /// returns `j` with `w_j = i`.
    pub fn trace(&self, i: i64) -> Result<i64> {
        let d = self.content.diagram();
        let n = d.period();
        let (k, start) = self
            .ne_rays
            .iter()
            .find(|(&k, _)| (k - i).rem_euclid(n as i64) == 0)
            .ok_or_else(|| Error::MalformedWiring(format!("no NE-ray of index {i}")))?;
        let t = (i - k) / n as i64;
        let geo = Geometry { d, c: &self.content };
        let mut port = Port::new(start.cell.shifted(t, n), start.side);
        let limit = 8 * (d.len() + 1) * (n + 1) * (n + 1);
        for _ in 0..limit {
            // cross the box
            let exit_side = match port.side {
                Side::N => Side::S,
                Side::E => Side::W,
                _ => return Err(Error::MalformedWiring("wire entered a box from the south or west".into())),
            };
            let exit = Port::new(port.cell, exit_side);
            match geo.attachment(exit)? {
                Attachment::SwRay(j) => return Ok(j),
                Attachment::Port(next) => port = next,
                Attachment::NeRay(_) => return Err(Error::MalformedWiring("wire turned back north-east".into())),
            }
        }
        Err(Error::MalformedWiring(format!("wire from NE-ray {i} does not terminate")))
    }
}

/// Recovers `w` from `D(w)`, or rejects a diagram that is not a permutation
/// diagram.
pub fn recognize(d: &AffineDiagram) -> Result<AffinePermutation> {
    if let Some(cells) = d.northwest_violation() {
        return Err(Error::Rejected(Rejection { rule: Rule::NW, cells: cells.to_vec() }));
    }
    let content = find_content(d).map_err(Error::Rejected)?;
    let wiring = build_wiring(d, &content)?;
    let n = d.period() as i64;
    let mut window: Vec<Option<i64>> = vec![None; n as usize];
    for &i in wiring.ne_rays.keys() {
        let j = wiring.trace(i)?;
        let base = (j - 1).rem_euclid(n) + 1;
        let value = i - (j - base);
        let slot = &mut window[(base - 1) as usize];
        if slot.replace(value).is_some() {
            return Err(Error::MalformedWiring(format!("two wires end at w_{base}")));
        }
    }
    let window: Vec<i64> = window.into_iter().zip(1..).map(|(v, j)| v.unwrap_or(j)).collect();
    let w = AffinePermutation::new(window).map_err(|e| Error::Internal(format!("traced window is invalid: {e}")))?;
    if &rothe_diagram(&w) != d {
        return Err(Error::Internal(format!("traced {w} does not reproduce the diagram")));
    }
    Ok(w)
}
