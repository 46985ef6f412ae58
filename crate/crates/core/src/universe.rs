//! Finite families of permutations used by the self-test.

use std::collections::BTreeSet;

use crate::affine::AffinePermutation;

/// All affine permutations of period `n` with length at most `max_len`,
/// sorted by length and then window.
pub fn up_to_length(n: usize, max_len: usize) -> Vec<AffinePermutation> {
    let mut seen = BTreeSet::from([AffinePermutation::identity(n)]);
    let mut layer = vec![AffinePermutation::identity(n)];
    let mut out = layer.clone();
    for _ in 0..max_len {
        let mut next = BTreeSet::new();
        for w in &layer {
            for d in 0..n {
                if n > 1 && !w.is_right_descent(d) {
                    let longer = w.multiply_right(d);
                    if seen.insert(longer.clone()) {
                        next.insert(longer);
                    }
                }
            }
        }
        layer = next.into_iter().collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// All finite permutations of `1..=n`, in lexicographic window order.
pub fn finite(n: usize) -> Vec<AffinePermutation> {
    let mut out = Vec::new();
    let mut window: Vec<i64> = (1..=n as i64).collect();
    loop {
        out.push(AffinePermutation::new(window.clone()).expect("rearrangement of 1..=n"));
        // next lexicographic permutation
        let Some(i) = (1..window.len()).rev().find(|&i| window[i - 1] < window[i]) else {
            break;
        };
        let j = (i..window.len()).rev().find(|&j| window[j] > window[i - 1]).unwrap();
        window.swap(i - 1, j);
        window[i..].reverse();
    }
    out
}

/// The standard family: all of `Σ_3`, `Σ_4`; affine periods 2 and 3 up to
/// length 6; period 4 up to length 5.
pub fn standard() -> Vec<AffinePermutation> {
    let mut all = BTreeSet::new();
    all.extend(finite(3));
    all.extend(finite(4));
    all.extend(up_to_length(2, 6));
    all.extend(up_to_length(3, 6));
    all.extend(up_to_length(4, 5));
    let mut out: Vec<AffinePermutation> = all.into_iter().collect();
    out.sort_by_key(|w| (w.period(), w.length(), w.clone()));
    out
}
