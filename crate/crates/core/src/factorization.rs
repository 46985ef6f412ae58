//! Cyclically decreasing factorizations, reduced and nilHecke.

use std::collections::{BTreeMap, BTreeSet};

use crate::affine::{cyclically_decreasing_word, AffinePermutation};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FactorizationKind {
    /// `w = v_1 ... v_m` with lengths adding up.
    Reduced,
    /// `u_w = u_{v_1} ... u_{v_m}` in the nilHecke monoid.
    NilHecke,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flag {
    None,
    /// Factor `i` only uses letters `a >= i` (finite permutations only).
    Grothendieck,
}

/// A cyclically decreasing element together with its letter set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicFactor {
    pub letters: BTreeSet<usize>,
    pub word: Vec<usize>,
    pub element: AffinePermutation,
}

impl CyclicFactor {
    pub fn length(&self) -> usize {
        self.word.len()
    }
}

/// Every cyclically decreasing element of period `n`, one per proper subset.
pub fn cyclic_factors(n: usize) -> Vec<CyclicFactor> {
    if n < 2 {
        return vec![CyclicFactor {
            letters: BTreeSet::new(),
            word: Vec::new(),
            element: AffinePermutation::identity(n.max(1)),
        }];
    }
    (0u64..(1 << n) - 1)
        .map(|mask| {
            let letters: BTreeSet<usize> = (0..n).filter(|&r| mask >> r & 1 == 1).collect();
            let word = cyclically_decreasing_word(&letters, n).expect("proper subset");
            let element = word
                .iter()
                .fold(AffinePermutation::identity(n), |w, &a| w.multiply_right(a));
            CyclicFactor { letters, word, element }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factorization {
    pub factors: Vec<CyclicFactor>,
    pub kind: FactorizationKind,
    pub flag: Flag,
}

impl Factorization {
    /// `(ℓ(v_1), ..., ℓ(v_m))`.
    pub fn type_vector(&self) -> Vec<usize> {
        self.factors.iter().map(CyclicFactor::length).collect()
    }

    /// `|α| = Σ ℓ(v_i)`.
    pub fn size(&self) -> usize {
        self.factors.iter().map(CyclicFactor::length).sum()
    }

    pub fn elements(&self) -> Vec<AffinePermutation> {
        self.factors.iter().map(|f| f.element.clone()).collect()
    }
}

fn admissible(factor: &CyclicFactor, position: usize, flag: Flag) -> bool {
    match flag {
        Flag::None => true,
        Flag::Grothendieck => factor.letters.iter().all(|&a| a >= position),
    }
}

/// All factorizations of `w` into exactly `m` cyclically decreasing factors
/// (identity factors allowed).
///
/// Partial products are grouped layer by layer; each layer keeps only the
/// products that can still reach `w`.
pub fn factorizations(
    w: &AffinePermutation,
    m: usize,
    kind: FactorizationKind,
    flag: Flag,
) -> Result<Vec<Factorization>> {
    if flag == Flag::Grothendieck && !w.is_finite() {
        return Err(Error::FlagOnAffine);
    }
    let n = w.period();
    let target_len = w.length();
    let inverse = w.inverse();
    let pool = cyclic_factors(n);

    let mut layer: BTreeMap<AffinePermutation, Vec<Vec<usize>>> = BTreeMap::new();
    layer.insert(AffinePermutation::identity(n), vec![Vec::new()]);

    for position in 1..=m {
        let mut next: BTreeMap<AffinePermutation, Vec<Vec<usize>>> = BTreeMap::new();
        for (partial, paths) in &layer {
            let partial_len = partial.length();
            for (idx, factor) in pool.iter().enumerate() {
                if !admissible(factor, position, flag) {
                    continue;
                }
                let product = match kind {
                    FactorizationKind::Reduced => {
                        let p = partial.compose(&factor.element);
                        let len = p.length();
                        // p must be a left prefix of w: ℓ(p^{-1} w) = ℓ(w) - ℓ(p).
                        if len != partial_len + factor.length()
                            || len > target_len
                            || inverse.compose(&p).length() != target_len - len
                        {
                            continue;
                        }
                        p
                    }
                    FactorizationKind::NilHecke => {
                        let p = factor.word.iter().fold(partial.clone(), |acc, &a| acc.demazure_right(a));
                        if p.length() > target_len {
                            continue;
                        }
                        p
                    }
                };
                let entry = next.entry(product).or_default();
                for path in paths {
                    let mut extended = path.clone();
                    extended.push(idx);
                    entry.push(extended);
                }
            }
        }
        layer = next;
    }

    let mut out: Vec<Factorization> = layer
        .remove(w)
        .unwrap_or_default()
        .into_iter()
        .map(|path| Factorization {
            factors: path.into_iter().map(|i| pool[i].clone()).collect(),
            kind,
            flag,
        })
        .collect();
    out.sort();
    Ok(out)
}
