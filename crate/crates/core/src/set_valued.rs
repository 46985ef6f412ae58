//! Set-valued labellings and their balance condition.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::affine::{demazure_product, AffinePermutation, NilHeckeWord};
use crate::diagram::{border_cell, border_residue, exchange_map, local_triples, rothe_diagram, subdiagram, AffineDiagram, Cell};
use crate::error::{Error, Result};
use crate::labelling::{column_strict, grow, Labelling};

pub type LabelSet = BTreeSet<u32>;
pub(crate) type SetMap = BTreeMap<Cell, LabelSet>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetValuedLabelling {
    w: AffinePermutation,
    diagram: AffineDiagram,
    values: SetMap,
}

impl SetValuedLabelling {
    pub fn new(w: AffinePermutation, values: BTreeMap<Cell, LabelSet>) -> Result<Self> {
        let diagram = rothe_diagram(&w);
        if !diagram.cells().iter().eq(values.keys()) {
            return Err(Error::CellMismatch);
        }
        if let Some((&c, _)) = values.iter().find(|(_, s)| s.is_empty()) {
            return Err(Error::EmptyLabelSet(c));
        }
        if values.values().any(|s| s.contains(&0)) {
            return Err(Error::ZeroLabel);
        }
        Ok(Self { w, diagram, values })
    }

    pub(crate) fn from_parts(w: AffinePermutation, values: SetMap) -> Self {
        let diagram = rothe_diagram(&w);
        debug_assert!(diagram.cells().iter().eq(values.keys()));
        Self { w, diagram, values }
    }

    /// Wraps every label of a single-valued labelling in a singleton.
    pub fn from_single(t: &Labelling) -> Self {
        let values = t.values().iter().map(|(&c, &v)| (c, LabelSet::from([v]))).collect();
        Self::from_parts(t.permutation().clone(), values)
    }

    pub fn permutation(&self) -> &AffinePermutation {
        &self.w
    }

    pub fn diagram(&self) -> &AffineDiagram {
        &self.diagram
    }

    pub fn values(&self) -> &BTreeMap<Cell, LabelSet> {
        &self.values
    }

    pub fn labels(&self, cell: Cell) -> Option<&LabelSet> {
        self.values.get(&cell.representative(self.w.period()).0)
    }

    /// `|T|`, the total number of labels over `[D]`.
    pub fn size(&self) -> usize {
        self.values.values().map(BTreeSet::len).sum()
    }

    pub fn max_label(&self) -> Option<u32> {
        self.values.values().filter_map(|s| s.last().copied()).max()
    }

    /// Label sets over `[D]` partition `1..=|T|`.
    pub fn is_injective(&self) -> bool {
        let all: BTreeSet<u32> = self.values.values().flatten().copied().collect();
        all.len() == self.size() && all.iter().copied().eq(1..=self.size() as u32)
    }

    pub fn is_column_strict(&self) -> bool {
        column_strict(self.w.period(), &self.values, |a, b| a.is_disjoint(b))
    }

    /// Multiplicity of each label `1..=m`.
    pub fn type_vector(&self, m: usize) -> Vec<usize> {
        let mut counts = vec![0; m];
        for &v in self.values.values().flatten() {
            if let Some(slot) = counts.get_mut(v as usize - 1) {
                *slot += 1;
            }
        }
        counts
    }

    fn hook(&self, c: Cell) -> (&LabelSet, Vec<&LabelSet>, Vec<&LabelSet>) {
        let right = self
            .diagram
            .row(c.row)
            .into_iter()
            .filter(|&col| col > c.col)
            .map(|col| self.labels(Cell::new(c.row, col)).unwrap())
            .collect();
        let bottom = self
            .diagram
            .column(c.col)
            .into_iter()
            .filter(|&row| row > c.row)
            .map(|row| self.labels(Cell::new(row, c.col)).unwrap())
            .collect();
        (&self.values[&c], right, bottom)
    }
}

fn arm_min(arm: &[&LabelSet]) -> u32 {
    arm.iter().filter_map(|s| s.first().copied()).min().unwrap_or(u32::MAX)
}

/// Labels a box of an arm may contribute: its minimum or anything strictly below `cap`,
/// the smallest label on the opposite arm.
fn allowed(set: &LabelSet, cap: u32) -> impl Iterator<Item = u32> + '_ {
    let min = *set.first().expect("nonempty label set");
    set.iter().copied().filter(move |&x| x == min || x < cap)
}

/// Every admissible choice of one label per box yields a balanced hook.
///
/// For a fixed corner label `c` the single-valued test needs
/// `#(picks < c) <= a` and `#(picks <= c) >= a` with `a` the arm length,
/// so it suffices to check the choice maximising the first count and the
/// one minimising the second.
pub fn sv_hook_is_balanced(corner: &LabelSet, right: &[&LabelSet], bottom: &[&LabelSet]) -> bool {
    let rmin = arm_min(right);
    let bmin = arm_min(bottom);
    let boxes: Vec<(&LabelSet, u32)> = right.iter().map(|s| (*s, bmin)).chain(bottom.iter().map(|s| (*s, rmin))).collect();
    let a = right.len();
    corner.iter().all(|&c| {
        let can_be_below = boxes.iter().filter(|(s, cap)| allowed(s, *cap).any(|x| x < c)).count();
        let must_be_at_most = boxes.iter().filter(|(s, cap)| allowed(s, *cap).all(|x| x <= c)).count();
        can_be_below <= a && must_be_at_most >= a
    })
}

pub fn is_sv_balanced_hook(t: &SetValuedLabelling, c: Cell) -> Result<bool> {
    let (rep, _) = c.representative(t.w.period());
    if !t.values.contains_key(&rep) {
        return Err(Error::CellNotInDiagram(c));
    }
    let (corner, right, bottom) = t.hook(rep);
    Ok(sv_hook_is_balanced(corner, &right, &bottom))
}

/// Every hook of the full diagram is s-v balanced. Weaker than
/// [`is_sv_balanced`].
pub fn is_sv_balanced_hooks(t: &SetValuedLabelling) -> bool {
    t.values.keys().all(|&c| {
        let (corner, right, bottom) = t.hook(c);
        sv_hook_is_balanced(corner, &right, &bottom)
    })
}

/// The first triple of rows whose 3×3 subdiagram is not s-v balanced.
pub fn sv_unbalanced_triple(t: &SetValuedLabelling) -> Option<[i64; 3]> {
    local_triples(&t.w).into_iter().find(|&rows| {
        let boxes = subdiagram(&t.w, rows);
        let sets = |f: &dyn Fn(&Cell) -> bool| -> Vec<&LabelSet> {
            boxes.iter().filter(|x| f(x)).map(|x| t.labels(*x).unwrap()).collect()
        };
        !boxes.iter().all(|b| {
            let right = sets(&|x| x.row == b.row && x.col > b.col);
            let bottom = sets(&|x| x.col == b.col && x.row > b.row);
            sv_hook_is_balanced(t.labels(*b).unwrap(), &right, &bottom)
        })
    })
}

/// Every 3×3 subdiagram `D_{ijk}` is s-v balanced.
pub fn is_sv_balanced(t: &SetValuedLabelling) -> bool {
    sv_unbalanced_triple(t).is_none()
}

/// `T_a`: a step that keeps the Demazure product adds its index to the
/// border cell of that descent, any other step creates a cell `{k}`.
pub fn canonical_sv_labelling(a: &NilHeckeWord) -> SetValuedLabelling {
    let mut w = AffinePermutation::identity(a.period());
    let mut values = SetMap::new();
    for (k, &d) in a.letters().iter().enumerate() {
        let k = k as u32 + 1;
        match border_cell(&w, d) {
            Some(cell) => {
                values.get_mut(&cell).expect("border cell is labelled").insert(k);
            }
            None => (w, values) = grow(&w, values, d, LabelSet::from([k])),
        }
    }
    SetValuedLabelling::from_parts(w, values)
}

/// `a_t = I(t) + R⁺(t) − U⁺(t) mod n`, where the counts are of boxes whose
/// minimal label exceeds `t`.
pub fn sv_decode(t: &SetValuedLabelling) -> Result<NilHeckeWord> {
    if !t.is_injective() {
        return Err(Error::NotInjective);
    }
    if !is_sv_balanced(t) {
        return Err(Error::NotBalanced);
    }
    let n = t.w.period() as i64;
    let owner: BTreeMap<u32, Cell> = t.values.iter().flat_map(|(&c, s)| s.iter().map(move |&v| (v, c))).collect();
    let min_at = |c: Cell| *t.labels(c).unwrap().first().unwrap();
    let letters = owner
        .iter()
        .map(|(&k, &cell)| {
            let row_larger = t.diagram.row(cell.row).into_iter().filter(|&c| min_at(Cell::new(cell.row, c)) > k).count() as i64;
            let above_larger = t
                .diagram
                .column(cell.col)
                .into_iter()
                .filter(|&r| r < cell.row && min_at(Cell::new(r, cell.col)) > k)
                .count() as i64;
            (cell.row + row_larger - above_larger).rem_euclid(n) as usize
        })
        .collect();
    let word = NilHeckeWord::new(t.w.period(), letters).map_err(|e| Error::Internal(format!("decoded word: {e}")))?;
    if demazure_product(&word) != t.w {
        return Err(Error::Internal(format!("decoded word {word} has the wrong Demazure product")));
    }
    Ok(word)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MaximalCellType {
    /// The largest label is alone in its cell.
    TypeI,
    /// The largest label shares its cell with smaller ones.
    TypeII,
}

fn maximal_border(t: &SetValuedLabelling, c: Cell) -> Result<(Cell, usize, u32)> {
    let (rep, _) = c.representative(t.w.period());
    let d = border_residue(&t.w, rep).ok_or(Error::NotMaximalBorderCell(c))?;
    let m = t.max_label().ok_or(Error::NotMaximalBorderCell(c))?;
    if !t.values[&rep].contains(&m) {
        return Err(Error::NotMaximalBorderCell(c));
    }
    Ok((rep, d, m))
}

pub fn maximal_cell_type(t: &SetValuedLabelling, c: Cell) -> Result<MaximalCellType> {
    let (rep, _, _) = maximal_border(t, c)?;
    Ok(if t.values[&rep].len() == 1 { MaximalCellType::TypeI } else { MaximalCellType::TypeII })
}

/// Deletes the largest label from a maximal border cell. A type-I cell
/// disappears and the labelling moves to `D(w s_i)`.
pub fn sv_remove_max(t: &SetValuedLabelling, c: Cell) -> Result<SetValuedLabelling> {
    let (rep, d, m) = maximal_border(t, c)?;
    let mut values = t.values.clone();
    let set = values.get_mut(&rep).unwrap();
    if set.len() > 1 {
        set.remove(&m);
        return Ok(SetValuedLabelling::from_parts(t.w.clone(), values));
    }
    values.remove(&rep);
    let shorter = t.w.multiply_right(d);
    let values = exchange_map(values, rep.row, t.w.period());
    Ok(SetValuedLabelling::from_parts(shorter, values))
}

fn finish(w: &AffinePermutation, maps: impl IntoIterator<Item = SetMap>) -> Vec<SetValuedLabelling> {
    maps.into_iter().map(|v| SetValuedLabelling::from_parts(w.clone(), v)).collect()
}

/// S-v injective balanced labellings of `D(w)` with `|T| = size`.
///
/// The cell holding the largest label `k` is a border cell; removing `k`
/// leaves a labelling of size `k - 1` on `D(w)` (type II) or on `D(w s_d)`
/// (type I).
pub fn enumerate_injective_sv(w: &AffinePermutation, size: usize) -> Vec<SetValuedLabelling> {
    fn go(w: &AffinePermutation, k: u32, memo: &mut HashMap<(AffinePermutation, u32), BTreeSet<SetMap>>) -> BTreeSet<SetMap> {
        let len = w.length() as u32;
        if k < len {
            return BTreeSet::new();
        }
        if k == 0 {
            return BTreeSet::from([SetMap::new()]);
        }
        let key = (w.clone(), k);
        if let Some(hit) = memo.get(&key) {
            return hit.clone();
        }
        let mut out = BTreeSet::new();
        for d in w.descents() {
            let cell = border_cell(w, d).unwrap();
            for mut values in go(w, k - 1, memo) {
                values.get_mut(&cell).unwrap().insert(k);
                out.insert(values);
            }
            let shorter = w.multiply_right(d);
            for values in go(&shorter, k - 1, memo) {
                out.insert(grow(&shorter, values, d, LabelSet::from([k])).1);
            }
        }
        memo.insert(key, out.clone());
        out
    }
    finish(w, go(w, size as u32, &mut HashMap::new()))
}

/// Column-strict s-v balanced labellings with every label in `1..=m`.
///
/// Labellings using `m` are generated from smaller ones: type-I growth from
/// labellings of `D(w s_d)`, then repeatedly adding `m` to border cells.
/// Deleting `m` from a maximal cell always leaves a balanced labelling, so
/// this reaches every candidate. Each candidate is still checked for
/// balance before it is kept.
pub fn enumerate_column_strict_sv(w: &AffinePermutation, m: u32) -> Vec<SetValuedLabelling> {
    fn go(w: &AffinePermutation, m: u32, memo: &mut HashMap<(AffinePermutation, u32), BTreeSet<SetMap>>) -> BTreeSet<SetMap> {
        if w.is_identity() {
            return BTreeSet::from([SetMap::new()]);
        }
        if m == 0 {
            return BTreeSet::new();
        }
        let key = (w.clone(), m);
        if let Some(hit) = memo.get(&key) {
            return hit.clone();
        }
        let n = w.period();
        let strict = |v: &SetMap| column_strict(n, v, |a, b| a.is_disjoint(b));
        let balanced = |v: &SetMap| is_sv_balanced(&SetValuedLabelling::from_parts(w.clone(), v.clone()));
        let mut out = go(w, m - 1, memo);
        for d in w.descents() {
            let shorter = w.multiply_right(d);
            for values in go(&shorter, m, memo) {
                let grown = grow(&shorter, values, d, LabelSet::from([m])).1;
                if strict(&grown) && balanced(&grown) {
                    out.insert(grown);
                }
            }
        }
        let borders: Vec<Cell> = w.descents().into_iter().filter_map(|d| border_cell(w, d)).collect();
        // unbalanced candidates still seed further additions
        let mut seen = out.clone();
        let mut work: Vec<SetMap> = out.iter().cloned().collect();
        while let Some(values) = work.pop() {
            for cell in &borders {
                if values[cell].contains(&m) {
                    continue;
                }
                let mut more = values.clone();
                more.get_mut(cell).unwrap().insert(m);
                if strict(&more) && seen.insert(more.clone()) {
                    if balanced(&more) {
                        out.insert(more.clone());
                    }
                    work.push(more);
                }
            }
        }
        memo.insert(key, out.clone());
        out
    }
    finish(w, go(w, m, &mut HashMap::new()))
}

/// Column-strict labellings with labels in `1..=m` found by trying every
/// nonempty subset in every box and keeping the s-v balanced ones.
pub fn enumerate_column_strict_sv_backtracking(w: &AffinePermutation, m: u32) -> Vec<SetValuedLabelling> {
    let n = w.period() as i64;
    let cells: Vec<Cell> = rothe_diagram(w).cells().iter().copied().collect();
    let subsets: Vec<LabelSet> =
        (1u32..1 << m).map(|mask| (1..=m).filter(|v| mask >> (v - 1) & 1 == 1).collect()).collect();
    let mut chosen: Vec<usize> = vec![0; cells.len()];
    let mut out = Vec::new();
    let mut stack = vec![0usize];
    // iterative depth-first search; `stack[k]` is the next subset to try at box k
    while let Some(next) = stack.pop() {
        let k = stack.len();
        if k == cells.len() {
            let values = cells.iter().copied().zip(chosen.iter().map(|&i| subsets[i].clone())).collect();
            let t = SetValuedLabelling::from_parts(w.clone(), values);
            if is_sv_balanced(&t) {
                out.push(t);
            }
            continue;
        }
        let Some(i) = (next..subsets.len()).find(|&i| {
            (0..k).all(|x| (cells[x].col - cells[k].col).rem_euclid(n) != 0 || subsets[chosen[x]].is_disjoint(&subsets[i]))
        }) else {
            continue;
        };
        chosen[k] = i;
        stack.push(i + 1);
        stack.push(0);
    }
    out.sort_by(|a, b| a.values.cmp(&b.values));
    out
}

/// JSON form `{"period": n, "window": [...], "cells": [[row, col, [labels]], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetValuedJson {
    pub period: usize,
    pub window: Vec<i64>,
    pub cells: Vec<(i64, i64, Vec<u32>)>,
}

impl From<&SetValuedLabelling> for SetValuedJson {
    fn from(t: &SetValuedLabelling) -> Self {
        Self {
            period: t.w.period(),
            window: t.w.window().to_vec(),
            cells: t.values.iter().map(|(c, s)| (c.row, c.col, s.iter().copied().collect())).collect(),
        }
    }
}

impl TryFrom<SetValuedJson> for SetValuedLabelling {
    type Error = Error;

    fn try_from(j: SetValuedJson) -> Result<Self> {
        let w = AffinePermutation::from_window(&j.window, j.period)?;
        let values = j.cells.into_iter().map(|(r, c, v)| (Cell::new(r, c), v.into_iter().collect())).collect();
        SetValuedLabelling::new(w, values)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labelling::{enumerate_column_strict, hook_is_balanced, is_balanced};

    fn w(v: &[i64]) -> AffinePermutation {
        AffinePermutation::new(v.to_vec()).unwrap()
    }

    fn set(v: &[u32]) -> LabelSet {
        v.iter().copied().collect()
    }

    fn sv(p: &AffinePermutation, cells: &[((i64, i64), &[u32])]) -> SetValuedLabelling {
        SetValuedLabelling::new(p.clone(), cells.iter().map(|&((r, c), s)| (Cell::new(r, c), set(s))).collect()).unwrap()
    }

    fn brute_hook(corner: &LabelSet, right: &[&LabelSet], bottom: &[&LabelSet]) -> bool {
        let rmin = arm_min(right);
        let bmin = arm_min(bottom);
        let choices: Vec<Vec<u32>> = right
            .iter()
            .map(|s| allowed(s, bmin).collect())
            .chain(bottom.iter().map(|s| allowed(s, rmin).collect()))
            .collect();
        let mut idx = vec![0usize; choices.len()];
        loop {
            let picks: Vec<u32> = idx.iter().zip(&choices).map(|(&i, c)| c[i]).collect();
            let (r, b) = picks.split_at(right.len());
            if !corner.iter().all(|&c| hook_is_balanced(c, r, b)) {
                return false;
            }
            let mut pos = 0;
            while pos < idx.len() && idx[pos] + 1 == choices[pos].len() {
                idx[pos] = 0;
                pos += 1;
            }
            if pos == idx.len() {
                return true;
            }
            idx[pos] += 1;
        }
    }

    #[test]
    fn hook_examples() {
        assert!(sv_hook_is_balanced(&set(&[1, 3, 5]), &[], &[]));
        assert!(sv_hook_is_balanced(&set(&[1]), &[], &[&set(&[2])]));
        assert!(!sv_hook_is_balanced(&set(&[2]), &[], &[&set(&[1])]));
        assert!(sv_hook_is_balanced(&set(&[5]), &[&set(&[7]), &set(&[3])], &[&set(&[2])]));
    }

    #[test]
    fn hook_shortcut_matches_enumeration() {
        let pool: Vec<LabelSet> = (1u32..16).map(|mask| (1..=4).filter(|v| mask >> (v - 1) & 1 == 1).collect()).collect();
        let mut state = 7u64;
        let mut pick = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            &pool[(state >> 33) as usize % pool.len()]
        };
        for _ in 0..4000 {
            let corner = pick().clone();
            let a = (pick().len()) % 3;
            let b = (pick().len()) % 3;
            let right: Vec<&LabelSet> = (0..a).map(|_| pick()).collect();
            let bottom: Vec<&LabelSet> = (0..b).map(|_| pick()).collect();
            assert_eq!(sv_hook_is_balanced(&corner, &right, &bottom), brute_hook(&corner, &right, &bottom));
        }
    }

    #[test]
    fn canonical_examples() {
        let a = NilHeckeWord::new(2, vec![1]).unwrap();
        assert_eq!(canonical_sv_labelling(&a).values(), &BTreeMap::from([(Cell::new(1, 1), set(&[1]))]));
        let a = NilHeckeWord::new(2, vec![1, 1]).unwrap();
        let t = canonical_sv_labelling(&a);
        assert_eq!(t.values(), &BTreeMap::from([(Cell::new(1, 1), set(&[1, 2]))]));
        assert_eq!(sv_decode(&t).unwrap(), a);
        let a = NilHeckeWord::new(3, vec![1, 2]).unwrap();
        let t = canonical_sv_labelling(&a);
        assert_eq!(t.values().len(), 2);
        assert!(t.values().values().all(|s| s.len() == 1));
        assert_eq!(sv_decode(&t).unwrap(), a);
    }

    fn words(n: usize, len: usize) -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        for _ in 0..len {
            out = out.into_iter().flat_map(|v| (0..n).map(move |a| [v.clone(), vec![a]].concat())).collect();
        }
        out
    }

    #[test]
    fn sv_round_trip_small() {
        for len in 0..=4 {
            for letters in words(3, len) {
                let a = NilHeckeWord::new(3, letters).unwrap();
                let t = canonical_sv_labelling(&a);
                assert!(t.is_injective());
                assert!(is_sv_balanced(&t), "{a}");
                assert!(is_sv_balanced_hooks(&t));
                assert_eq!(sv_decode(&t).unwrap(), a);
            }
        }
    }

    #[test]
    fn injective_sv_matches_words() {
        for len in 0..=4 {
            let mut by_w: BTreeMap<AffinePermutation, BTreeSet<SetMap>> = BTreeMap::new();
            for letters in words(3, len) {
                let t = canonical_sv_labelling(&NilHeckeWord::new(3, letters).unwrap());
                by_w.entry(t.w.clone()).or_default().insert(t.values);
            }
            for (p, expected) in by_w {
                let got: BTreeSet<SetMap> = enumerate_injective_sv(&p, len).into_iter().map(|t| t.values).collect();
                assert_eq!(got, expected, "{p} size {len}");
            }
        }
    }

    #[test]
    fn singletons_agree_with_single_valued() {
        for p in [w(&[3, 2, 1]), w(&[0, 4, 2]), w(&[4, 2, 3, 1])] {
            for m in 1..=3 {
                let single: BTreeSet<SetMap> =
                    enumerate_column_strict(&p, m).iter().map(|t| SetValuedLabelling::from_single(t).values).collect();
                let sv_single: BTreeSet<SetMap> = enumerate_column_strict_sv(&p, m)
                    .into_iter()
                    .filter(|t| t.values.values().all(|s| s.len() == 1))
                    .map(|t| t.values)
                    .collect();
                assert_eq!(single, sv_single);
            }
            for t in crate::labelling::enumerate_column_strict_backtracking(&p, 2) {
                assert_eq!(is_sv_balanced(&SetValuedLabelling::from_single(&t)), is_balanced(&t));
            }
        }
    }

    #[test]
    fn column_strict_examples() {
        assert_eq!(enumerate_column_strict_sv(&AffinePermutation::identity(3), 2).len(), 1);
        let s1 = w(&[2, 1]);
        let got: BTreeSet<LabelSet> =
            enumerate_column_strict_sv(&s1, 2).into_iter().map(|t| t.values[&Cell::new(1, 1)].clone()).collect();
        assert_eq!(got, BTreeSet::from([set(&[1]), set(&[2]), set(&[1, 2])]));
    }

    #[test]
    fn column_strict_routes_agree() {
        for p in [w(&[2, 1]), w(&[3, 2, 1]), w(&[0, 4, 2]), w(&[4, 2, 3, 1]), w(&[-1, 3, 4]), w(&[2, 5, 0, 7, 3, 4])] {
            for m in 1..=3 {
                if p.length() > 5 && m > 2 {
                    continue;
                }
                let peeled: BTreeSet<SetMap> = enumerate_column_strict_sv(&p, m).into_iter().map(|t| t.values).collect();
                let brute: BTreeSet<SetMap> =
                    enumerate_column_strict_sv_backtracking(&p, m).into_iter().map(|t| t.values).collect();
                assert_eq!(peeled, brute, "{p} m={m}");
                for values in &peeled {
                    let t = SetValuedLabelling::from_parts(p.clone(), values.clone());
                    if let Some(top) = t.max_label() {
                        let n = p.period() as i64;
                        assert!((1..=n).any(|r| t.values.iter().all(|(c, s)| c.row != r || !s.contains(&top))));
                    }
                }
            }
        }
    }

    #[test]
    fn maximal_cells() {
        let p = w(&[2, 1]);
        let t = sv(&p, &[((1, 1), &[2])]);
        assert_eq!(maximal_cell_type(&t, Cell::new(1, 1)), Ok(MaximalCellType::TypeI));
        let t = sv(&p, &[((1, 1), &[1, 2])]);
        assert_eq!(maximal_cell_type(&t, Cell::new(1, 1)), Ok(MaximalCellType::TypeII));
        assert_eq!(sv_remove_max(&t, Cell::new(1, 1)).unwrap().values(), &BTreeMap::from([(Cell::new(1, 1), set(&[1]))]));
        let t = sv(&p, &[((1, 1), &[1])]);
        let gone = sv_remove_max(&t, Cell::new(1, 1)).unwrap();
        assert!(gone.values().is_empty());
        assert!(gone.permutation().is_identity());

        let p = w(&[3, 2, 1]);
        let t = sv(&p, &[((1, 1), &[2]), ((1, 2), &[1]), ((2, 1), &[3])]);
        assert_eq!(maximal_cell_type(&t, Cell::new(1, 2)), Err(Error::NotMaximalBorderCell(Cell::new(1, 2))));
        let rest = sv_remove_max(&t, Cell::new(2, 1)).unwrap();
        let expected = crate::diagram::remove_border_cell(&p, &rothe_diagram(&p), Cell::new(2, 1)).unwrap();
        assert_eq!(rest.diagram(), &expected);
        assert_eq!(rest.permutation(), &p.multiply_right(2));
    }

    #[test]
    fn json_round_trip() {
        let t = canonical_sv_labelling(&NilHeckeWord::new(3, vec![1, 2, 1, 1, 0]).unwrap());
        let j = serde_json::to_string(&SetValuedJson::from(&t)).unwrap();
        let back: SetValuedJson = serde_json::from_str(&j).unwrap();
        assert_eq!(SetValuedLabelling::try_from(back).unwrap(), t);
    }
}
