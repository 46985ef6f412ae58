//! The affine symmetric group in window notation.
//!
//! An affine permutation of period `n` is a bijection `w` of the integers with
//! `w(i + n) = w(i) + n` whose window `[w(1), ..., w(n)]` sums to `n(n+1)/2`.
//! Simple reflections `s_0, ..., s_{n-1}` act on positions when multiplied on
//! the right and on values when multiplied on the left. Finite permutations
//! are the affine permutations whose window is a rearrangement of `1..=n`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffinePermutation {
    window: Vec<i64>,
}

impl AffinePermutation {
    /// Builds a permutation whose period is the window length.
    pub fn new(window: Vec<i64>) -> Result<Self> {
        let n = window.len();
        if n == 0 {
            return Err(Error::EmptyWindow);
        }
        let n_i = n as i64;
        let expected = n_i * (n_i + 1) / 2;
        let actual: i64 = window.iter().sum();
        if actual != expected {
            return Err(Error::SumMismatch { expected, actual });
        }
        let mut seen: HashMap<i64, i64> = HashMap::with_capacity(n);
        for &v in &window {
            if let Some(&prev) = seen.get(&v.rem_euclid(n_i)) {
                return Err(Error::ResidueCollision { first: prev, second: v, period: n });
            }
            seen.insert(v.rem_euclid(n_i), v);
        }
        Ok(Self { window })
    }

    pub fn from_window(window: &[i64], n: usize) -> Result<Self> {
        if window.len() != n {
            return Err(Error::WindowLength { len: window.len(), period: n });
        }
        Self::new(window.to_vec())
    }

    pub fn identity(n: usize) -> Self {
        assert!(n > 0, "period must be positive");
        Self { window: (1..=n as i64).collect() }
    }

    pub fn period(&self) -> usize {
        self.window.len()
    }

    fn n(&self) -> i64 {
        self.window.len() as i64
    }

    pub fn window(&self) -> &[i64] {
        &self.window
    }

    pub fn is_identity(&self) -> bool {
        self.window.iter().zip(1..).all(|(&v, i)| v == i)
    }

    /// True when the window is a rearrangement of `1..=n`.
    pub fn is_finite(&self) -> bool {
        let n = self.n();
        self.window.iter().all(|&v| (1..=n).contains(&v))
    }

    /// `w(i)` for any integer `i`.
    pub fn apply(&self, i: i64) -> i64 {
        let n = self.n();
        let q = (i - 1).div_euclid(n);
        let r = (i - 1).rem_euclid(n) as usize;
        self.window[r] + n * q
    }

    /// `w^{-1}(v)` for any integer `v`.
    pub fn apply_inverse(&self, v: i64) -> i64 {
        let n = self.n();
        let (p, &wp) = self
            .window
            .iter()
            .enumerate()
            .find(|(_, &x)| (x - v).rem_euclid(n) == 0)
            .expect("window residues are complete");
        p as i64 + 1 + (v - wp) / n * n
    }

    pub fn inverse(&self) -> Self {
        let window = (1..=self.n()).map(|v| self.apply_inverse(v)).collect();
        Self { window }
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.period(), other.period(), "periods differ");
        let window = (1..=self.n()).map(|i| self.apply(other.apply(i))).collect();
        Self { window }
    }

    /// Positions `j > i + n*K` satisfy `w(j) > w(i)`, with `K` returned here.
    pub fn spread(&self) -> i64 {
        let max = *self.window.iter().max().unwrap();
        let min = *self.window.iter().min().unwrap();
        1 + (max - min) / self.n()
    }

    /// Inversions `(i, j)` with `1 <= i <= n`, `i < j` and `w(i) > w(j)`.
    pub fn inversions(&self) -> Vec<(i64, i64)> {
        let n = self.n();
        let horizon = n * self.spread();
        let mut out = Vec::new();
        for i in 1..=n {
            let wi = self.apply(i);
            for j in i + 1..=i + horizon {
                if self.apply(j) < wi {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn length(&self) -> usize {
        self.inversions().len()
    }

    /// Position in `1..=n` acted on by the reflection `s_i`.
    pub fn position_of(&self, residue: usize) -> i64 {
        if residue == 0 {
            self.n()
        } else {
            residue as i64
        }
    }

    fn check_letter(&self, letter: usize) -> Result<()> {
        let n = self.period();
        if n < 2 {
            return Err(Error::NoGenerators(n));
        }
        if letter >= n {
            return Err(Error::InvalidLetter { letter, period: n });
        }
        Ok(())
    }

    pub fn is_right_descent(&self, residue: usize) -> bool {
        let p = self.position_of(residue);
        self.apply(p) > self.apply(p + 1)
    }

    pub fn is_left_descent(&self, residue: usize) -> bool {
        let p = self.position_of(residue);
        self.apply_inverse(p) > self.apply_inverse(p + 1)
    }

    /// Right descents as residues modulo `n`.
    pub fn descents(&self) -> BTreeSet<usize> {
        let n = self.period();
        if n < 2 {
            return BTreeSet::new();
        }
        (0..n).filter(|&r| self.is_right_descent(r)).collect()
    }

    /// `w · s_i`: swaps the entries at positions `i + rn` and `i + 1 + rn`.
    pub fn multiply_right(&self, residue: usize) -> Self {
        self.check_letter(residue).expect("invalid simple reflection");
        let n = self.period();
        let mut window = self.window.clone();
        if residue == 0 {
            let first = window[0];
            window[0] = window[n - 1] - n as i64;
            window[n - 1] = first + n as i64;
        } else {
            window.swap(residue - 1, residue);
        }
        Self { window }
    }

    /// `s_i · w`: swaps the values `i + rn` and `i + 1 + rn`.
    pub fn multiply_left(&self, residue: usize) -> Self {
        self.check_letter(residue).expect("invalid simple reflection");
        let n = self.n();
        let r = residue as i64;
        let window = self
            .window
            .iter()
            .map(|&v| match v.rem_euclid(n) {
                x if x == r => v + 1,
                x if x == (r + 1) % n => v - 1,
                _ => v,
            })
            .collect();
        Self { window }
    }

    /// One step of the Demazure product `u_w u_i`.
    pub fn demazure_right(&self, residue: usize) -> Self {
        if self.is_right_descent(residue) {
            self.clone()
        } else {
            self.multiply_right(residue)
        }
    }

    /// One step of the Demazure product `u_i u_w`.
    pub fn demazure_left(&self, residue: usize) -> Self {
        if self.is_left_descent(residue) {
            self.clone()
        } else {
            self.multiply_left(residue)
        }
    }
}

impl fmt::Display for AffinePermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_bracketed(f, &self.window)
    }
}

impl FromStr for AffinePermutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::new(parse_bracketed(s)?)
    }
}

pub(crate) fn write_bracketed<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T]) -> fmt::Result {
    f.write_str("[")?;
    for (k, x) in items.iter().enumerate() {
        if k > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    f.write_str("]")
}

/// Parses `[a,b,c]` (brackets optional, whitespace ignored).
pub fn parse_bracketed<T: FromStr>(s: &str) -> Result<Vec<T>> {
    let t = s.trim();
    let t = t.strip_prefix('[').unwrap_or(t);
    let t = t.strip_suffix(']').unwrap_or(t);
    if t.trim().is_empty() {
        return Ok(Vec::new());
    }
    t.split(',')
        .map(|x| x.trim().parse::<T>().map_err(|_| Error::Parse(format!("bad entry {x:?} in {s:?}"))))
        .collect()
}

fn validate_letters(letters: &[usize], period: usize) -> Result<()> {
    if period == 0 {
        return Err(Error::EmptyWindow);
    }
    if let Some(&letter) = letters.iter().find(|&&a| a >= period) {
        return Err(Error::InvalidLetter { letter, period });
    }
    if period < 2 && !letters.is_empty() {
        return Err(Error::NoGenerators(period));
    }
    Ok(())
}

fn product_of(letters: &[usize], period: usize) -> AffinePermutation {
    letters
        .iter()
        .fold(AffinePermutation::identity(period), |w, &a| w.multiply_right(a))
}

/// A word whose product has length equal to the number of letters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReducedWord {
    period: usize,
    letters: Vec<usize>,
}

impl ReducedWord {
    pub fn new(period: usize, letters: Vec<usize>) -> Result<Self> {
        validate_letters(&letters, period)?;
        let mut w = AffinePermutation::identity(period);
        for (k, &a) in letters.iter().enumerate() {
            if w.is_right_descent(a) {
                return Err(Error::NotReduced { position: k + 1 });
            }
            w = w.multiply_right(a);
        }
        Ok(Self { period, letters })
    }

    pub(crate) fn new_unchecked(period: usize, letters: Vec<usize>) -> Self {
        Self { period, letters }
    }

    pub fn period(&self) -> usize {
        self.period
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn product(&self) -> AffinePermutation {
        product_of(&self.letters, self.period)
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_bracketed(f, &self.letters)
    }
}

/// Any word over `{0, ..., n-1}`, multiplied in the nilHecke monoid.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NilHeckeWord {
    period: usize,
    letters: Vec<usize>,
}

impl NilHeckeWord {
    pub fn new(period: usize, letters: Vec<usize>) -> Result<Self> {
        validate_letters(&letters, period)?;
        Ok(Self { period, letters })
    }

    pub fn period(&self) -> usize {
        self.period
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The ordinary group product `s_{a_1} ... s_{a_k}`.
    pub fn product(&self) -> AffinePermutation {
        product_of(&self.letters, self.period)
    }
}

impl fmt::Display for NilHeckeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_bracketed(f, &self.letters)
    }
}

/// All reduced words of `w`, by stripping right descents.
pub fn reduced_words(w: &AffinePermutation) -> BTreeSet<ReducedWord> {
    let mut memo = HashMap::new();
    let n = w.period();
    reduced_words_memo(w, &mut memo)
        .iter()
        .map(|letters| ReducedWord::new_unchecked(n, letters.clone()))
        .collect()
}

fn reduced_words_memo<'a>(
    w: &AffinePermutation,
    memo: &'a mut HashMap<AffinePermutation, Vec<Vec<usize>>>,
) -> &'a Vec<Vec<usize>> {
    if !memo.contains_key(w) {
        let words = if w.is_identity() {
            vec![Vec::new()]
        } else {
            let mut words = Vec::new();
            for d in w.descents() {
                let shorter = w.multiply_right(d);
                for prefix in reduced_words_memo(&shorter, memo).clone() {
                    let mut word = prefix;
                    word.push(d);
                    words.push(word);
                }
            }
            words
        };
        memo.insert(w.clone(), words);
    }
    &memo[w]
}

/// `S(a)`: the permutation with `u_{S(a)} = u_{a_1} ... u_{a_k}`.
pub fn demazure_product(word: &NilHeckeWord) -> AffinePermutation {
    word.letters
        .iter()
        .fold(AffinePermutation::identity(word.period), |w, &a| w.demazure_right(a))
}

/// The cyclically decreasing word on a proper subset of `Z/nZ`.
///
/// Letters are emitted by sweeping downward from a missing residue, so `i+1`
/// always precedes `i`.
pub fn cyclically_decreasing_word(letters: &BTreeSet<usize>, n: usize) -> Result<Vec<usize>> {
    if let Some(&letter) = letters.iter().find(|&&a| a >= n) {
        return Err(Error::InvalidLetter { letter, period: n });
    }
    if letters.len() >= n {
        return Err(Error::FullCycle(n));
    }
    if letters.is_empty() {
        return Ok(Vec::new());
    }
    let gap = (0..n).find(|r| !letters.contains(r)).unwrap();
    Ok((1..n)
        .map(|k| (gap + n - k) % n)
        .filter(|r| letters.contains(r))
        .collect())
}

pub fn cyclically_decreasing(letters: &BTreeSet<usize>, n: usize) -> Result<AffinePermutation> {
    let word = cyclically_decreasing_word(letters, n)?;
    if n < 2 {
        return Ok(AffinePermutation::identity(n.max(1)));
    }
    Ok(product_of(&word, n))
}
