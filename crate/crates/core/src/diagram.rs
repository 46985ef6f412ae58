//! Periodic diagrams and the diagrams of affine permutations.
//!
//! Coordinates are matrix-like: rows grow southward, columns eastward. A
//! diagram of period `n` is stored by its representatives in rows `1..=n`;
//! the full diagram is the union of the translates `(r + tn, c + tn)`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::affine::AffinePermutation;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub row: i64,
    pub col: i64,
}

impl Cell {
    pub const fn new(row: i64, col: i64) -> Self {
        Self { row, col }
    }

    pub fn shifted(self, t: i64, n: usize) -> Self {
        let d = t * n as i64;
        Self { row: self.row + d, col: self.col + d }
    }

    /// The translate lying in rows `1..=n`, and the shift `t` with
    /// `self = representative + t(n, n)`.
    pub fn representative(self, n: usize) -> (Cell, i64) {
        let t = (self.row - 1).div_euclid(n as i64);
        (self.shifted(-t, n), t)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineDiagram {
    period: usize,
    cells: BTreeSet<Cell>,
}

impl AffineDiagram {
    pub fn empty(period: usize) -> Self {
        Self { period, cells: BTreeSet::new() }
    }

    /// Builds a diagram from representatives, which must lie in rows `1..=n`.
    pub fn new(period: usize, cells: impl IntoIterator<Item = Cell>) -> Result<Self> {
        if period == 0 {
            return Err(Error::EmptyWindow);
        }
        let mut set = BTreeSet::new();
        for cell in cells {
            if !(1..=period as i64).contains(&cell.row) {
                return Err(Error::OutsideWindow { cell, period });
            }
            set.insert(cell);
        }
        Ok(Self { period, cells: set })
    }

    pub(crate) fn from_representatives(period: usize, cells: BTreeSet<Cell>) -> Self {
        debug_assert!(cells.iter().all(|c| (1..=period as i64).contains(&c.row)));
        Self { period, cells }
    }

    pub fn period(&self) -> usize {
        self.period
    }

    /// The boxes of `[D]`, sorted.
    pub fn cells(&self) -> &BTreeSet<Cell> {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Membership of an arbitrary box of the full diagram.
    pub fn contains(&self, cell: Cell) -> bool {
        self.cells.contains(&cell.representative(self.period).0)
    }

    /// Columns of the boxes in full row `r`, ascending.
    pub fn row(&self, r: i64) -> Vec<i64> {
        let rep_row = Cell::new(r, 0).representative(self.period);
        let (rep, t) = rep_row;
        let shift = t * self.period as i64;
        self.cells
            .range(Cell::new(rep.row, i64::MIN)..=Cell::new(rep.row, i64::MAX))
            .map(|c| c.col + shift)
            .collect()
    }

    /// Rows of the boxes in full column `c`, ascending.
    pub fn column(&self, c: i64) -> Vec<i64> {
        let n = self.period as i64;
        let mut rows: Vec<i64> = self
            .cells
            .iter()
            .filter(|b| (c - b.col).rem_euclid(n) == 0)
            .map(|b| b.row + (c - b.col))
            .collect();
        rows.sort_unstable();
        rows
    }

    /// Boxes `(i, j)`, `(k, l)` with `i < k`, `j > l` and `(i, l)` missing.
    ///
    /// Any violating pair can be translated so its first box is a
    /// representative `(i, j)`. For a representative `(k0, l0)` the translates
    /// `(k0 + tn, l0 + tn)` that sit strictly south-west of `(i, j)` are exactly
    /// `floor((i - k0) / n) + 1 <= t <= floor((j - l0 - 1) / n)`, so the scan is
    /// finite and exact.
    pub fn northwest_violation(&self) -> Option<[Cell; 3]> {
        let n = self.period as i64;
        for &a in &self.cells {
            for &b in &self.cells {
                let lo = (a.row - b.row).div_euclid(n) + 1;
                let hi = (a.col - b.col - 1).div_euclid(n);
                for t in lo..=hi {
                    let other = b.shifted(t, self.period);
                    let corner = Cell::new(a.row, other.col);
                    if !self.contains(corner) {
                        return Some([a, other, corner]);
                    }
                }
            }
        }
        None
    }

    pub fn is_northwest(&self) -> bool {
        self.northwest_violation().is_none()
    }

    /// Exchanges the full rows `p + rn` and `p + 1 + rn` for all `r`.
    pub(crate) fn exchange_rows(&self, p: i64) -> AffineDiagram {
        let cells = self.cells.iter().map(|&c| exchange_cell(c, p, self.period)).collect();
        AffineDiagram { period: self.period, cells }
    }
}

/// Image of a representative under the exchange of rows `p` and `p + 1`
/// (`1 <= p <= n`), renormalized into the fundamental window.
pub(crate) fn exchange_cell(c: Cell, p: i64, n: usize) -> Cell {
    let below = p % n as i64 + 1;
    let moved = if c.row == p {
        Cell::new(c.row + 1, c.col)
    } else if c.row == below {
        Cell::new(c.row - 1, c.col)
    } else {
        c
    };
    moved.representative(n).0
}

/// Applies `exchange_cell` to the keys of a labelled map.
pub(crate) fn exchange_map<V>(map: BTreeMap<Cell, V>, p: i64, n: usize) -> BTreeMap<Cell, V> {
    map.into_iter().map(|(c, v)| (exchange_cell(c, p, n), v)).collect()
}

/// `D(w) = {(i, w(j)) : i < j, w(i) > w(j)}` restricted to rows `1..=n`.
pub fn rothe_diagram(w: &AffinePermutation) -> AffineDiagram {
    let cells = w
        .inversions()
        .into_iter()
        .map(|(i, j)| Cell::new(i, w.apply(j)))
        .collect();
    AffineDiagram::from_representatives(w.period(), cells)
}

/// Columns of full row `i` of `D(w)`: `{w(j) : j > i, w(j) < w(i)}`.
pub fn row_boxes(w: &AffinePermutation, i: i64) -> Vec<i64> {
    let wi = w.apply(i);
    let horizon = w.period() as i64 * w.spread();
    let mut cols: Vec<i64> = (i + 1..=i + horizon).map(|j| w.apply(j)).filter(|&v| v < wi).collect();
    cols.sort_unstable();
    cols
}

/// Rows of full column `c` of `D(w)`: `{i : i < w^{-1}(c), w(i) > c}`.
pub fn col_boxes(w: &AffinePermutation, c: i64) -> Vec<i64> {
    let j = w.apply_inverse(c);
    let horizon = w.period() as i64 * w.spread();
    (j - horizon..j).filter(|&i| w.apply(i) > c).collect()
}

/// The border cell `(p, w(p+1))` of the descent at residue `d`, if any.
pub fn border_cell(w: &AffinePermutation, d: usize) -> Option<Cell> {
    let p = w.position_of(d);
    w.is_right_descent(d).then(|| Cell::new(p, w.apply(p + 1)))
}

/// One border cell per right descent.
pub fn border_cells(w: &AffinePermutation) -> BTreeSet<Cell> {
    w.descents().into_iter().filter_map(|d| border_cell(w, d)).collect()
}

/// Residue of the descent owning a border cell.
pub(crate) fn border_residue(w: &AffinePermutation, cell: Cell) -> Option<usize> {
    let d = (cell.row % w.period() as i64) as usize;
    (border_cell(w, d) == Some(cell)).then_some(d)
}

/// `D(w) \ α`: deletes the cell `α` and exchanges its row with the next.
/// The result is `D(w s_i)` for the descent `i` owning `α`.
pub fn remove_border_cell(w: &AffinePermutation, d: &AffineDiagram, alpha: Cell) -> Result<AffineDiagram> {
    if !d.cells.contains(&alpha) || border_residue(w, alpha).is_none() {
        return Err(Error::NotBorderCell(alpha));
    }
    let mut rest = d.clone();
    rest.cells.remove(&alpha);
    Ok(rest.exchange_rows(alpha.row))
}

/// Triples `i < j < k` with `1 <= i <= n` whose 3×3 subdiagram holds at least
/// two boxes. An inversion `(r, s)` has `s - r <= nK` (`K` = spread), and two
/// inversions inside a triple force `k - i <= 2nK`.
pub fn local_triples(w: &AffinePermutation) -> Vec<[i64; 3]> {
    let n = w.period() as i64;
    let band = 2 * n * w.spread();
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=i + band {
            for k in j + 1..=i + band {
                let t = [i, j, k];
                if subdiagram(w, t).len() >= 2 {
                    out.push(t);
                }
            }
        }
    }
    out
}

/// Boxes of `D(w)` at rows `{i, j, k}` and columns `{w(i), w(j), w(k)}`,
/// in full-plane coordinates.
pub fn subdiagram(w: &AffinePermutation, rows: [i64; 3]) -> Vec<Cell> {
    let mut out = Vec::with_capacity(3);
    for (a, &r) in rows.iter().enumerate() {
        for &s in &rows[a + 1..] {
            if w.apply(r) > w.apply(s) {
                out.push(Cell::new(r, w.apply(s)));
            }
        }
    }
    out.sort();
    out
}

/// JSON form `{"period": n, "cells": [[row, col], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramJson {
    pub period: usize,
    pub cells: Vec<(i64, i64)>,
}

impl From<&AffineDiagram> for DiagramJson {
    fn from(d: &AffineDiagram) -> Self {
        Self { period: d.period, cells: d.cells.iter().map(|c| (c.row, c.col)).collect() }
    }
}

impl TryFrom<DiagramJson> for AffineDiagram {
    type Error = Error;

    fn try_from(j: DiagramJson) -> Result<Self> {
        AffineDiagram::new(j.period, j.cells.into_iter().map(|(r, c)| Cell::new(r, c)))
    }
}
