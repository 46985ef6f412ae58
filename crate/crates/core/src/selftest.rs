//! Property checks over a finite family of permutations, run by the
//! `selftest` subcommand.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::affine::{reduced_words, AffinePermutation, NilHeckeWord, ReducedWord};
use crate::content::{content_by_columns, content_of_permutation_diagram, find_content, verify_content};
use crate::diagram::{rothe_diagram, AffineDiagram, Cell};
use crate::error::Error;
use crate::labelling::{canonical_labelling, count_injective_recurrence, decode, decode_reverse, enumerate_injective};
use crate::set_valued::{
    canonical_sv_labelling, enumerate_injective_sv, is_sv_balanced, is_sv_balanced_hooks, sv_decode, sv_unbalanced_triple,
    SetValuedLabelling,
};
use crate::symfunc::{
    grothendieck_polynomial, grothendieck_stable_via_factorizations, grothendieck_stable_via_labellings,
    grothendieck_via_flagged_factorizations, is_321_avoiding, schubert_polynomial, skew_schur, skew_shape,
    stanley_via_factorizations, stanley_via_labellings,
};
use crate::universe;
use crate::wiring::recognize;

#[derive(Clone, Debug)]
pub struct Config {
    /// Largest period in the family.
    pub max_n: usize,
    /// Length bound for affine permutations of period 2 and 3; period 4 and
    /// above use one less.
    pub max_len: usize,
}

impl Default for Config {
    fn default() -> Self {
        Self { max_n: 4, max_len: 6 }
    }
}

impl Config {
    pub fn family(&self) -> Vec<AffinePermutation> {
        let mut all = BTreeSet::new();
        for k in 3..=self.max_n.min(4) {
            all.extend(universe::finite(k));
        }
        for k in 2..=self.max_n {
            let bound = if k >= 4 { self.max_len.saturating_sub(1) } else { self.max_len };
            all.extend(universe::up_to_length(k, bound));
        }
        let mut out: Vec<AffinePermutation> = all.into_iter().collect();
        out.sort_by_key(|w| (w.period(), w.length(), w.clone()));
        out
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

type Check = std::result::Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// A s-v labelling whose hooks are all balanced but whose subdiagram on rows
/// 1, 3, 4 is not.
pub fn hook_only_witness() -> SetValuedLabelling {
    let w = AffinePermutation::new(vec![4, 2, 1, 3]).unwrap();
    let cells = [((1, 1), vec![2]), ((1, 2), vec![3]), ((1, 3), vec![1, 3]), ((2, 1), vec![1])];
    let values = cells.into_iter().map(|((r, c), s)| (Cell::new(r, c), s.into_iter().collect())).collect();
    SetValuedLabelling::new(w, values).unwrap()
}

fn worked_example() -> Check {
    let w = AffinePermutation::new(vec![2, 5, 0, 7, 3, 4]).map_err(|e| e.to_string())?;
    ensure(w.length() == 7, || format!("length {}", w.length()))?;
    ensure(rothe_diagram(&w).len() == 7, || "diagram size".into())?;
    let word = ReducedWord::new(6, vec![0, 4, 5, 3, 4, 1, 2]).map_err(|e| e.to_string())?;
    ensure(word.product() == w, || format!("product {}", word.product()))
}

fn bijection_counts(family: &[AffinePermutation]) -> Check {
    for w in family {
        let words = reduced_words(w).len();
        let labellings = enumerate_injective(w).len();
        let recurrence = count_injective_recurrence(w) as usize;
        ensure(words == labellings && labellings == recurrence, || format!("{w}: {words} {labellings} {recurrence}"))?;
    }
    Ok(())
}

fn round_trips(family: &[AffinePermutation]) -> Check {
    for w in family {
        for word in reduced_words(w) {
            let t = canonical_labelling(w.period(), word.letters()).map_err(|e| e.to_string())?;
            ensure(decode(&t).as_ref() == Ok(&word), || format!("{w}: decode of {word}"))?;
            ensure(decode_reverse(&t).as_ref() == Ok(&word), || format!("{w}: reverse decode of {word}"))?;
        }
        for t in enumerate_injective(w) {
            let word = decode(&t).map_err(|e| format!("{w}: {e}"))?;
            ensure(decode_reverse(&t).as_ref() == Ok(&word), || format!("{w}: decoders disagree"))?;
            let back = canonical_labelling(w.period(), word.letters()).map_err(|e| e.to_string())?;
            ensure(back == t, || format!("{w}: canonical of decoded {word}"))?;
        }
    }
    Ok(())
}

fn stanley(family: &[AffinePermutation]) -> Check {
    for w in family {
        for m in 1..=3 {
            let a = stanley_via_labellings(w, m);
            let b = stanley_via_factorizations(w, m);
            ensure(a == b, || format!("{w} m={m}: {a} vs {b}"))?;
            ensure(a.is_symmetric(), || format!("{w} m={m}: not symmetric"))?;
        }
    }
    Ok(())
}

fn schur() -> Check {
    for w in universe::finite(4).into_iter().filter(is_321_avoiding) {
        let (lambda, mu) = skew_shape(&w).ok_or_else(|| format!("{w}: no skew shape"))?;
        let expected = skew_schur(&lambda, &mu, 3);
        let got = stanley_via_labellings(&w, 3);
        ensure(got == expected, || format!("{w}: {got} vs {expected}"))?;
    }
    Ok(())
}

fn nilhecke_words(n: usize, max_len: usize) -> Vec<NilHeckeWord> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer.iter().flat_map(|v: &Vec<usize>| (0..n).map(move |a| [v.as_slice(), &[a]].concat())).collect();
        out.extend(layer.iter().cloned());
    }
    out.into_iter().map(|v| NilHeckeWord::new(n, v).unwrap()).collect()
}

/// S-v injective balanced labellings by trying every assignment of the
/// labels `1..=size` to boxes.
pub fn brute_force_injective_sv(w: &AffinePermutation, size: usize) -> BTreeSet<SetValuedLabelling> {
    let cells: Vec<Cell> = rothe_diagram(w).cells().iter().copied().collect();
    let mut out = BTreeSet::new();
    if cells.is_empty() {
        if size == 0 {
            out.insert(SetValuedLabelling::new(w.clone(), BTreeMap::new()).unwrap());
        }
        return out;
    }
    let mut owner = vec![0usize; size];
    loop {
        let mut values: BTreeMap<Cell, BTreeSet<u32>> = cells.iter().map(|&c| (c, BTreeSet::new())).collect();
        for (label, &o) in owner.iter().enumerate() {
            values.get_mut(&cells[o]).unwrap().insert(label as u32 + 1);
        }
        if values.values().all(|s| !s.is_empty()) {
            let t = SetValuedLabelling::new(w.clone(), values).unwrap();
            if is_sv_balanced(&t) {
                out.insert(t);
            }
        }
        let mut pos = 0;
        while pos < size && owner[pos] + 1 == cells.len() {
            owner[pos] = 0;
            pos += 1;
        }
        if pos == size {
            break;
        }
        owner[pos] += 1;
    }
    out
}

fn sv_bijection(max_word: usize) -> Check {
    let mut images: BTreeMap<(AffinePermutation, usize), BTreeSet<SetValuedLabelling>> = BTreeMap::new();
    for a in nilhecke_words(3, max_word) {
        let t = canonical_sv_labelling(&a);
        ensure(sv_decode(&t).as_ref() == Ok(&a), || format!("round trip of {a}"))?;
        images.entry((t.permutation().clone(), a.len())).or_default().insert(t);
    }
    for ((w, size), image) in images {
        let brute = brute_force_injective_sv(&w, size);
        ensure(image == brute, || format!("{w} size {size}: {} canonical vs {} brute force", image.len(), brute.len()))?;
        let peeled: BTreeSet<SetValuedLabelling> = enumerate_injective_sv(&w, size).into_iter().collect();
        ensure(peeled == brute, || format!("{w} size {size}: peeling differs"))?;
    }
    Ok(())
}

fn hook_only() -> Check {
    let t = hook_only_witness();
    ensure(is_sv_balanced_hooks(&t), || "a hook is unbalanced".into())?;
    ensure(!is_sv_balanced(&t), || "subdiagrams are balanced".into())?;
    ensure(sv_unbalanced_triple(&t) == Some([1, 3, 4]), || format!("failing rows {:?}", sv_unbalanced_triple(&t)))
}

fn grothendieck_stable(family: &[AffinePermutation]) -> Check {
    for w in family {
        for m in 1..=2 {
            let a = grothendieck_stable_via_labellings(w, m);
            let b = grothendieck_stable_via_factorizations(w, m);
            ensure(a == b, || format!("{w} m={m}: {a} vs {b}"))?;
            let low = a.homogeneous_part(w.length() as u32);
            ensure(low == stanley_via_labellings(w, m), || format!("{w} m={m}: lowest degree part"))?;
        }
    }
    Ok(())
}

fn flagged(max_n: usize) -> Check {
    for k in 3..=max_n.min(4) {
        for w in universe::finite(k) {
            let a = grothendieck_polynomial(&w).map_err(|e| e.to_string())?;
            let b = grothendieck_via_flagged_factorizations(&w).map_err(|e| e.to_string())?;
            ensure(a == b, || format!("{w}: {a} vs {b}"))?;
            let s = schubert_polynomial(&w).map_err(|e| e.to_string())?;
            ensure(s == a.homogeneous_part(w.length() as u32), || format!("{w}: Schubert {s}"))?;
        }
    }
    let g = |v: &[i64]| grothendieck_polynomial(&AffinePermutation::new(v.to_vec()).unwrap()).unwrap().to_string();
    ensure(g(&[1, 3, 2]) == "x1 + x2 - x1*x2", || g(&[1, 3, 2]))?;
    ensure(g(&[2, 1]) == "x1", || g(&[2, 1]))
}

/// Adds or removes one box in rows `1..=n`.
pub fn perturb(d: &AffineDiagram, rng: &mut impl Rng) -> AffineDiagram {
    let n = d.period() as i64;
    let mut cells = d.cells().clone();
    if !cells.is_empty() && rng.gen_bool(0.5) {
        let k = rng.gen_range(0..cells.len());
        let victim = *cells.iter().nth(k).unwrap();
        cells.remove(&victim);
    } else {
        let cols: Vec<i64> = cells.iter().map(|c| c.col).collect();
        let lo = cols.iter().copied().min().unwrap_or(1).min(1) - n;
        let hi = cols.iter().copied().max().unwrap_or(n).max(n) + n;
        let c = Cell::new(rng.gen_range(1..=n), rng.gen_range(lo..=hi));
        cells.insert(c);
    }
    AffineDiagram::new(d.period(), cells).unwrap()
}

fn recognizer(family: &[AffinePermutation], samples: usize) -> Check {
    let mut extended = family.to_vec();
    extended.push(AffinePermutation::new(vec![2, 6, 1, 4, 3, 7, 8, 5, 9]).unwrap());
    for w in &extended {
        let got = recognize(&rothe_diagram(w)).map_err(|e| format!("{w}: {e}"))?;
        ensure(&got == w, || format!("{w} recognized as {got}"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..samples {
        let w = &family[rng.gen_range(0..family.len())];
        let d = perturb(&rothe_diagram(w), &mut rng);
        match recognize(&d) {
            Ok(v) => ensure(rothe_diagram(&v) == d, || format!("false accept {v}"))?,
            Err(Error::Rejected(_)) => {}
            Err(e) => return Err(format!("perturbation of {w}: {e}")),
        }
    }
    Ok(())
}

fn contents(family: &[AffinePermutation]) -> Check {
    for w in family {
        let by_rows = content_of_permutation_diagram(w);
        let found = find_content(&rothe_diagram(w)).map_err(|r| format!("{w}: {r}"))?;
        ensure(found == by_rows, || format!("{w}: row formula"))?;
        ensure(found == content_by_columns(w), || format!("{w}: column formula"))?;
        ensure(verify_content(&found, 2).is_none(), || format!("{w}: {:?}", verify_content(&found, 2)))?;
    }
    Ok(())
}

fn determinism() -> Check {
    for argv in crate::cli::sample_invocations() {
        let once = crate::cli::capture(&argv);
        let twice = crate::cli::capture(&argv);
        ensure(once == twice, || format!("{argv:?} differs between runs"))?;
    }
    Ok(())
}

pub const NAMES: [&str; 12] = [
    "worked example",
    "bijection counts",
    "round trips",
    "Stanley routes agree",
    "Schur specialization",
    "s-v bijection",
    "hook-only witness",
    "stable Grothendieck routes agree",
    "flagged Grothendieck",
    "recognizer",
    "content invariants",
    "CLI determinism",
];

/// Runs every check.
pub fn run(config: &Config) -> Vec<Outcome> {
    let family = config.family();
    let checks: Vec<Box<dyn Fn() -> Check>> = vec![
        Box::new(worked_example),
        Box::new(|| bijection_counts(&family)),
        Box::new(|| round_trips(&family)),
        Box::new(|| stanley(&family)),
        Box::new(schur),
        Box::new(|| sv_bijection(config.max_len.min(5))),
        Box::new(hook_only),
        Box::new(|| grothendieck_stable(&family)),
        Box::new(|| flagged(config.max_n)),
        Box::new(|| recognizer(&family, 200)),
        Box::new(|| contents(&family)),
        Box::new(determinism),
    ];
    checks
        .iter()
        .zip(NAMES)
        .enumerate()
        .map(|(k, (check, name))| {
            let result = check();
            Outcome { id: k + 1, name, passed: result.is_ok(), detail: result.err().unwrap_or_default() }
        })
        .collect()
}
