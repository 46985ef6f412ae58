//! Single-valued balanced labellings of affine permutation diagrams.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::affine::{AffinePermutation, ReducedWord};
use crate::diagram::{exchange_map, local_triples, rothe_diagram, subdiagram, AffineDiagram, Cell};
use crate::error::{Error, Result};

pub(crate) type LabelMap = BTreeMap<Cell, u32>;

/// A labelling of `D(w)`: one positive label per box of `[D(w)]`, extended
/// periodically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Labelling {
    w: AffinePermutation,
    diagram: AffineDiagram,
    values: LabelMap,
}

impl Labelling {
    pub fn new(w: AffinePermutation, values: BTreeMap<Cell, u32>) -> Result<Self> {
        let diagram = rothe_diagram(&w);
        if !diagram.cells().iter().eq(values.keys()) {
            return Err(Error::CellMismatch);
        }
        if values.values().any(|&v| v == 0) {
            return Err(Error::ZeroLabel);
        }
        Ok(Self { w, diagram, values })
    }

    pub(crate) fn from_parts(w: AffinePermutation, values: LabelMap) -> Self {
        let diagram = rothe_diagram(&w);
        debug_assert!(diagram.cells().iter().eq(values.keys()));
        Self { w, diagram, values }
    }

    pub fn permutation(&self) -> &AffinePermutation {
        &self.w
    }

    pub fn diagram(&self) -> &AffineDiagram {
        &self.diagram
    }

    pub fn values(&self) -> &BTreeMap<Cell, u32> {
        &self.values
    }

    /// Label of any box of the full diagram.
    pub fn label(&self, cell: Cell) -> Option<u32> {
        self.values.get(&cell.representative(self.w.period()).0).copied()
    }

    pub fn max_label(&self) -> Option<u32> {
        self.values.values().copied().max()
    }

    /// Labels of `[D]` are exactly `1..=ℓ`.
    pub fn is_injective(&self) -> bool {
        let labels: BTreeSet<u32> = self.values.values().copied().collect();
        labels.len() == self.values.len() && labels.iter().copied().eq(1..=self.values.len() as u32)
    }

    pub fn is_column_strict(&self) -> bool {
        column_strict(self.w.period(), &self.values, |a, b| a != b)
    }

    /// `(#1's, #2's, ..., #m's)`.
    pub fn type_vector(&self, m: usize) -> Vec<usize> {
        let mut counts = vec![0; m];
        for &v in self.values.values() {
            if let Some(slot) = counts.get_mut(v as usize - 1) {
                *slot += 1;
            }
        }
        counts
    }

    /// Hook at a representative box: `(corner, right arm, bottom arm)`.
    fn hook(&self, c: Cell) -> (u32, Vec<u32>, Vec<u32>) {
        let corner = self.values[&c];
        let right = self
            .diagram
            .row(c.row)
            .into_iter()
            .filter(|&col| col > c.col)
            .map(|col| self.label(Cell::new(c.row, col)).unwrap())
            .collect();
        let bottom = self
            .diagram
            .column(c.col)
            .into_iter()
            .filter(|&row| row > c.row)
            .map(|row| self.label(Cell::new(row, c.col)).unwrap())
            .collect();
        (corner, right, bottom)
    }
}

/// Pairwise test over boxes sharing a full column. Two representatives lie
/// in a common column of the full diagram iff their columns agree mod `n`.
pub(crate) fn column_strict<V>(n: usize, values: &BTreeMap<Cell, V>, distinct: impl Fn(&V, &V) -> bool) -> bool {
    let n = n as i64;
    let entries: Vec<_> = values.iter().collect();
    for (x, (a, va)) in entries.iter().enumerate() {
        for (b, vb) in &entries[x + 1..] {
            if (a.col - b.col).rem_euclid(n) == 0 && !distinct(va, vb) {
                return false;
            }
        }
    }
    true
}

/// Balanced hook test: sorting the hook so labels weakly increase from right
/// to left along the arm and then top to bottom along the leg leaves the
/// corner label in place.
pub fn hook_is_balanced(corner: u32, right: &[u32], bottom: &[u32]) -> bool {
    let below = right.iter().chain(bottom).filter(|&&x| x < corner).count();
    let at_most = right.iter().chain(bottom).filter(|&&x| x <= corner).count() + 1;
    let slot = right.len();
    below <= slot && at_most > slot
}

pub fn is_balanced_hook(t: &Labelling, c: Cell) -> Result<bool> {
    let (rep, _) = c.representative(t.w.period());
    if !t.values.contains_key(&rep) {
        return Err(Error::CellNotInDiagram(c));
    }
    let (corner, right, bottom) = t.hook(rep);
    Ok(hook_is_balanced(corner, &right, &bottom))
}

/// Every hook of the full diagram is balanced.
pub fn is_balanced_hooks(t: &Labelling) -> bool {
    t.values.keys().all(|&c| {
        let (corner, right, bottom) = t.hook(c);
        hook_is_balanced(corner, &right, &bottom)
    })
}

/// Every 3×3 subdiagram `D_{ijk}` is balanced.
pub fn is_balanced_local(t: &Labelling) -> bool {
    local_triples(&t.w).into_iter().all(|rows| {
        let boxes = subdiagram(&t.w, rows);
        let label = |b: &Cell| t.label(*b).unwrap();
        boxes.iter().all(|b| {
            let right: Vec<u32> = boxes.iter().filter(|x| x.row == b.row && x.col > b.col).map(label).collect();
            let bottom: Vec<u32> = boxes.iter().filter(|x| x.col == b.col && x.row > b.row).map(label).collect();
            hook_is_balanced(label(b), &right, &bottom)
        })
    })
}

/// Localized test for column-strict labellings, hook test otherwise.
pub fn is_balanced(t: &Labelling) -> bool {
    if t.is_column_strict() {
        is_balanced_local(t)
    } else {
        is_balanced_hooks(t)
    }
}

/// Applies `s_d` to a labelling of `D(w)` with `d` an ascent: exchanges rows
/// `d`, `d + 1` and labels the new border cell `(d, w s_d (d + 1))`.
pub(crate) fn grow<V>(
    w: &AffinePermutation,
    values: BTreeMap<Cell, V>,
    d: usize,
    new_label: V,
) -> (AffinePermutation, BTreeMap<Cell, V>) {
    debug_assert!(!w.is_right_descent(d));
    let n = w.period();
    let p = w.position_of(d);
    let longer = w.multiply_right(d);
    let mut grown = exchange_map(values, p, n);
    grown.insert(Cell::new(p, longer.apply(p + 1)), new_label);
    (longer, grown)
}

/// `T_a`: box created by the `k`-th reflection gets label `k`.
pub fn canonical_labelling(period: usize, letters: &[usize]) -> Result<Labelling> {
    let word = ReducedWord::new(period, letters.to_vec())?;
    let mut w = AffinePermutation::identity(period);
    let mut values = LabelMap::new();
    for (k, &a) in word.letters().iter().enumerate() {
        (w, values) = grow(&w, values, a, k as u32 + 1);
    }
    Ok(Labelling::from_parts(w, values))
}

fn check_injective_balanced(t: &Labelling) -> Result<()> {
    if !t.is_injective() {
        return Err(Error::NotInjective);
    }
    if !is_balanced(t) {
        return Err(Error::NotBalanced);
    }
    Ok(())
}

fn finish_word(t: &Labelling, letters: Vec<usize>) -> Result<ReducedWord> {
    let n = t.w.period();
    let word = ReducedWord::new(n, letters).map_err(|e| Error::Internal(format!("decoded word: {e}")))?;
    if word.product() != t.w {
        return Err(Error::Internal(format!("decoded word {word} does not multiply to {}", t.w)));
    }
    Ok(word)
}

fn boxes_by_label(t: &Labelling) -> Vec<Cell> {
    let mut by_label: Vec<(u32, Cell)> = t.values.iter().map(|(&c, &v)| (v, c)).collect();
    by_label.sort();
    by_label.into_iter().map(|(_, c)| c).collect()
}

/// `a_k = I(k) + R⁺(k) − U⁺(k) mod n`.
pub fn decode(t: &Labelling) -> Result<ReducedWord> {
    check_injective_balanced(t)?;
    let n = t.w.period() as i64;
    let letters = boxes_by_label(t)
        .into_iter()
        .zip(1u32..)
        .map(|(cell, k)| {
            let row_larger = t
                .diagram
                .row(cell.row)
                .into_iter()
                .filter(|&c| t.label(Cell::new(cell.row, c)).unwrap() > k)
                .count() as i64;
            let above_larger = t
                .diagram
                .column(cell.col)
                .into_iter()
                .filter(|&r| r < cell.row && t.label(Cell::new(r, cell.col)).unwrap() > k)
                .count() as i64;
            (cell.row + row_larger - above_larger).rem_euclid(n) as usize
        })
        .collect();
    finish_word(t, letters)
}

/// `a_k = J(k) + C⁻(k) − L⁻(k) mod n`, with `J` the column index.
pub fn decode_reverse(t: &Labelling) -> Result<ReducedWord> {
    check_injective_balanced(t)?;
    let n = t.w.period() as i64;
    let letters = boxes_by_label(t)
        .into_iter()
        .zip(1u32..)
        .map(|(cell, k)| {
            let column_smaller = t
                .diagram
                .column(cell.col)
                .into_iter()
                .filter(|&r| t.label(Cell::new(r, cell.col)).unwrap() < k)
                .count() as i64;
            let left_smaller = t
                .diagram
                .row(cell.row)
                .into_iter()
                .filter(|&c| c < cell.col && t.label(Cell::new(cell.row, c)).unwrap() < k)
                .count() as i64;
            (cell.col + column_smaller - left_smaller).rem_euclid(n) as usize
        })
        .collect();
    finish_word(t, letters)
}

/// All injective balanced labellings of `D(w)`, built by attaching the
/// largest label to each border cell in turn.
pub fn enumerate_injective(w: &AffinePermutation) -> Vec<Labelling> {
    let mut memo = HashMap::new();
    let mut out: Vec<Labelling> = injective_maps(w, &mut memo)
        .into_iter()
        .map(|values| Labelling::from_parts(w.clone(), values))
        .collect();
    out.sort_by(|a, b| a.values.cmp(&b.values));
    out
}

fn injective_maps(w: &AffinePermutation, memo: &mut HashMap<AffinePermutation, Vec<LabelMap>>) -> Vec<LabelMap> {
    if let Some(hit) = memo.get(w) {
        return hit.clone();
    }
    let result = if w.is_identity() {
        vec![LabelMap::new()]
    } else {
        let top = w.length() as u32;
        let mut out = Vec::new();
        for d in w.descents() {
            let shorter = w.multiply_right(d);
            for values in injective_maps(&shorter, memo) {
                out.push(grow(&shorter, values, d, top).1);
            }
        }
        out
    };
    memo.insert(w.clone(), result.clone());
    result
}

/// `b_{D(w)} = Σ_α b_{D(w) \ α}` over the border cells `α`.
pub fn count_injective_recurrence(w: &AffinePermutation) -> u64 {
    fn go(w: &AffinePermutation, memo: &mut HashMap<AffinePermutation, u64>) -> u64 {
        if w.is_identity() {
            return 1;
        }
        if let Some(&hit) = memo.get(w) {
            return hit;
        }
        let total = w.descents().into_iter().map(|d| go(&w.multiply_right(d), memo)).sum();
        memo.insert(w.clone(), total);
        total
    }
    go(w, &mut HashMap::new())
}

/// Column-strict balanced labellings with labels in `1..=m`.
///
/// A labelling whose largest label `M` sits in a border cell is balanced
/// exactly when the labelling left after removing that cell is. Labellings
/// are therefore grown from those of `w s_d` by attaching `M` at the border
/// cell of `d`, keeping the column-strict results. Different peeling orders
/// of commuting border cells produce the same labelling; the set collapses
/// them.
pub fn enumerate_column_strict(w: &AffinePermutation, m: u32) -> Vec<Labelling> {
    let mut memo = HashMap::new();
    column_strict_maps(w, m, &mut memo)
        .into_iter()
        .map(|values| Labelling::from_parts(w.clone(), values))
        .collect()
}

fn column_strict_maps(
    w: &AffinePermutation,
    m: u32,
    memo: &mut HashMap<(AffinePermutation, u32), BTreeSet<LabelMap>>,
) -> BTreeSet<LabelMap> {
    if w.is_identity() {
        return BTreeSet::from([LabelMap::new()]);
    }
    if m == 0 {
        return BTreeSet::new();
    }
    let key = (w.clone(), m);
    if let Some(hit) = memo.get(&key) {
        return hit.clone();
    }
    let n = w.period();
    let mut out = column_strict_maps(w, m - 1, memo);
    for d in w.descents() {
        let shorter = w.multiply_right(d);
        for values in column_strict_maps(&shorter, m, memo) {
            let (_, grown) = grow(&shorter, values, d, m);
            if column_strict(n, &grown, |a, b| a != b) {
                out.insert(grown);
            }
        }
    }
    memo.insert(key, out.clone());
    out
}

/// Column-strict labellings with labels in `1..=m` found by assigning labels
/// box by box and keeping the balanced ones.
pub fn enumerate_column_strict_backtracking(w: &AffinePermutation, m: u32) -> Vec<Labelling> {
    let n = w.period() as i64;
    let cells: Vec<Cell> = rothe_diagram(w).cells().iter().copied().collect();
    let mut labels = vec![0u32; cells.len()];
    let mut out = Vec::new();

    fn place(
        k: usize,
        cells: &[Cell],
        labels: &mut Vec<u32>,
        n: i64,
        m: u32,
        w: &AffinePermutation,
        out: &mut Vec<Labelling>,
    ) {
        if k == cells.len() {
            let values = cells.iter().copied().zip(labels.iter().copied()).collect();
            let t = Labelling::from_parts(w.clone(), values);
            if is_balanced_local(&t) {
                out.push(t);
            }
            return;
        }
        for v in 1..=m {
            let clash = (0..k).any(|x| labels[x] == v && (cells[x].col - cells[k].col).rem_euclid(n) == 0);
            if !clash {
                labels[k] = v;
                place(k + 1, cells, labels, n, m, w, out);
            }
        }
    }

    place(0, &cells, &mut labels, n, m, w, &mut out);
    out.sort_by(|a, b| a.values.cmp(&b.values));
    out
}

/// JSON form `{"period": n, "window": [...], "cells": [[row, col, label], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabellingJson {
    pub period: usize,
    pub window: Vec<i64>,
    pub cells: Vec<(i64, i64, u32)>,
}

impl From<&Labelling> for LabellingJson {
    fn from(t: &Labelling) -> Self {
        Self {
            period: t.w.period(),
            window: t.w.window().to_vec(),
            cells: t.values.iter().map(|(c, &v)| (c.row, c.col, v)).collect(),
        }
    }
}

impl TryFrom<LabellingJson> for Labelling {
    type Error = Error;

    fn try_from(j: LabellingJson) -> Result<Self> {
        let w = AffinePermutation::from_window(&j.window, j.period)?;
        let values = j.cells.into_iter().map(|(r, c, v)| (Cell::new(r, c), v)).collect();
        Labelling::new(w, values)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::reduced_words;

    fn w(v: &[i64]) -> AffinePermutation {
        AffinePermutation::new(v.to_vec()).unwrap()
    }

    fn labelled(p: &AffinePermutation, v: &[((i64, i64), u32)]) -> Labelling {
        Labelling::new(p.clone(), v.iter().map(|&((r, c), l)| (Cell::new(r, c), l)).collect()).unwrap()
    }

    // Literal rearrangement: arm right-to-left, corner, leg top-to-bottom.
    fn sort_oracle(corner: u32, right: &[u32], bottom: &[u32]) -> bool {
        let mut all: Vec<u32> = right.iter().chain(bottom).copied().collect();
        all.push(corner);
        all.sort_unstable();
        all[right.len()] == corner
    }

    #[test]
    fn hook_examples() {
        assert!(hook_is_balanced(5, &[7, 3], &[2]));
        assert!(hook_is_balanced(4, &[], &[]));
        // the smaller label sits on top of a balanced vertical domino
        assert!(hook_is_balanced(1, &[], &[2]));
        assert!(!hook_is_balanced(2, &[], &[1]));
        assert!(hook_is_balanced(2, &[1], &[]));
        assert!(!hook_is_balanced(1, &[2], &[]));
    }

    #[test]
    fn hook_rule_matches_sorting() {
        let labels = [1u32, 2, 3, 4];
        for a in 0..3usize {
            for b in 0..3usize {
                let total = 1 + a + b;
                let mut idx = vec![0usize; total];
                loop {
                    let vals: Vec<u32> = idx.iter().map(|&i| labels[i]).collect();
                    let (corner, rest) = vals.split_first().unwrap();
                    let (right, bottom) = rest.split_at(a);
                    assert_eq!(hook_is_balanced(*corner, right, bottom), sort_oracle(*corner, right, bottom));
                    let mut pos = 0;
                    while pos < total && idx[pos] == labels.len() - 1 {
                        idx[pos] = 0;
                        pos += 1;
                    }
                    if pos == total {
                        break;
                    }
                    idx[pos] += 1;
                }
            }
        }
    }

    #[test]
    fn balance_examples() {
        let p = w(&[3, 2, 1]);
        let t = labelled(&p, &[((1, 1), 1), ((1, 2), 2), ((2, 1), 3)]);
        assert!(!is_balanced(&t));
        assert!(!is_balanced_hooks(&t));
        let t = labelled(&p, &[((1, 1), 2), ((1, 2), 1), ((2, 1), 3)]);
        assert!(is_balanced(&t));
        let e = Labelling::new(AffinePermutation::identity(3), BTreeMap::new()).unwrap();
        assert!(is_balanced(&e));
        assert_eq!(is_balanced_hook(&t, Cell::new(3, 3)), Err(Error::CellNotInDiagram(Cell::new(3, 3))));
    }

    #[test]
    fn canonical_single_box() {
        let t = canonical_labelling(2, &[1]).unwrap();
        assert_eq!(t.values(), &BTreeMap::from([(Cell::new(1, 1), 1)]));
        assert_eq!(decode(&t).unwrap().letters(), &[1]);
        assert_eq!(decode_reverse(&t).unwrap().letters(), &[1]);
        assert!(matches!(canonical_labelling(3, &[1, 1]), Err(Error::NotReduced { .. })));
    }

    // Labels canonical cells by the value pair each reflection swaps.
    fn canonical_by_value_pairs(n: usize, letters: &[usize]) -> LabelMap {
        let mut cur = AffinePermutation::identity(n);
        let mut pairs = Vec::new();
        for &a in letters {
            let p = cur.position_of(a);
            let (lo, hi) = (cur.apply(p), cur.apply(p + 1));
            pairs.push((hi, lo));
            cur = cur.multiply_right(a);
        }
        pairs
            .into_iter()
            .zip(1u32..)
            .map(|((big, small), k)| (Cell::new(cur.apply_inverse(big), small).representative(n).0, k))
            .collect()
    }

    #[test]
    fn canonical_matches_value_pairs() {
        for p in [w(&[3, 2, 1]), w(&[2, 5, 0, 7, 3, 4]), w(&[0, 4, 2]), w(&[4, 3, 2, 1])] {
            for word in reduced_words(&p) {
                let t = canonical_labelling(p.period(), word.letters()).unwrap();
                assert_eq!(t.values(), &canonical_by_value_pairs(p.period(), word.letters()));
            }
        }
    }

    #[test]
    fn worked_example_round_trip() {
        let letters = [0, 4, 5, 3, 4, 1, 2];
        let t = canonical_labelling(6, &letters).unwrap();
        assert_eq!(t.permutation(), &w(&[2, 5, 0, 7, 3, 4]));
        assert!(t.is_injective());
        assert!(is_balanced(&t));
        assert_eq!(decode(&t).unwrap().letters(), &letters);
        assert_eq!(decode_reverse(&t).unwrap().letters(), &letters);
    }

    #[test]
    fn decode_errors() {
        let p = w(&[3, 2, 1]);
        let t = labelled(&p, &[((1, 1), 1), ((1, 2), 2), ((2, 1), 3)]);
        assert_eq!(decode(&t), Err(Error::NotBalanced));
        let t = labelled(&p, &[((1, 1), 1), ((1, 2), 1), ((2, 1), 3)]);
        assert_eq!(decode(&t), Err(Error::NotInjective));
    }

    #[test]
    fn injective_counts() {
        assert_eq!(enumerate_injective(&AffinePermutation::identity(3)).len(), 1);
        assert_eq!(enumerate_injective(&w(&[3, 2, 1])).len(), 2);
        assert_eq!(count_injective_recurrence(&w(&[3, 2, 1])), 2);
        for p in [w(&[2, 5, 0, 7, 3, 4]), w(&[2, 6, 1, 4, 3, 7, 8, 5])] {
            let words = reduced_words(&p).len();
            assert_eq!(enumerate_injective(&p).len(), words);
            assert_eq!(count_injective_recurrence(&p) as usize, words);
        }
    }

    #[test]
    fn injective_matches_brute_force() {
        for p in [w(&[3, 2, 1]), w(&[4, 2, 3, 1]), w(&[0, 4, 2]), w(&[3, 1, -2, 8])] {
            let cells: Vec<Cell> = rothe_diagram(&p).cells().iter().copied().collect();
            let mut perm: Vec<u32> = (1..=cells.len() as u32).collect();
            let mut brute = BTreeSet::new();
            permutations(&mut perm, 0, &mut |labels| {
                let t = Labelling::from_parts(p.clone(), cells.iter().copied().zip(labels.iter().copied()).collect());
                if is_balanced_hooks(&t) {
                    brute.insert(t.values.clone());
                }
            });
            let built: BTreeSet<LabelMap> = enumerate_injective(&p).into_iter().map(|t| t.values).collect();
            assert_eq!(built, brute, "{p}");
        }
    }

    fn permutations(v: &mut Vec<u32>, k: usize, f: &mut impl FnMut(&[u32])) {
        if k == v.len() {
            f(v);
            return;
        }
        for i in k..v.len() {
            v.swap(k, i);
            permutations(v, k + 1, f);
            v.swap(k, i);
        }
    }

    #[test]
    fn column_strict_examples() {
        let s1 = AffinePermutation::identity(3).multiply_right(1);
        assert_eq!(enumerate_column_strict(&s1, 2).len(), 2);
        assert_eq!(enumerate_column_strict(&AffinePermutation::identity(3), 4).len(), 1);
        assert_eq!(enumerate_column_strict(&w(&[3, 2, 1]), 3).len(), 8);
    }

    #[test]
    fn column_strict_routes_agree() {
        for p in [w(&[3, 2, 1]), w(&[2, 5, 0, 7, 3, 4]), w(&[0, 4, 2]), w(&[4, 2, 3, 1]), w(&[-1, 3, 4])] {
            for m in 1..=3 {
                let peeled: BTreeSet<LabelMap> = enumerate_column_strict(&p, m).into_iter().map(|t| t.values).collect();
                let brute: BTreeSet<LabelMap> =
                    enumerate_column_strict_backtracking(&p, m).into_iter().map(|t| t.values).collect();
                assert_eq!(peeled, brute, "{p} m={m}");
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let t = canonical_labelling(6, &[0, 4, 5, 3, 4, 1, 2]).unwrap();
        let j = serde_json::to_string(&LabellingJson::from(&t)).unwrap();
        let back: LabellingJson = serde_json::from_str(&j).unwrap();
        assert_eq!(Labelling::try_from(back).unwrap(), t);
    }
}
