//! Test corpora of squarefree monomial ideals.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::monomial::{MonomialIdeal, MAX_VARS};

/// Every squarefree monomial ideal in `n` variables other than the zero and
/// unit ideals, i.e. every nonempty antichain of nonempty subsets of
/// {1..n}. Ordered by the sorted list of generator masks.
///
/// There are (Dedekind number - 2) of them: 1, 4, 18, 166, 7579 for n = 1..5.
pub fn all_squarefree_ideals(n: usize) -> Vec<MonomialIdeal> {
    assert!(n <= 5, "exhaustive corpus is limited to n <= 5");
    let subsets: Vec<u64> = (1u64..(1 << n)).collect();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    extend_antichains(&subsets, 0, &mut chosen, &mut |gens| {
        out.push(MonomialIdeal::from_masks(n, gens).expect("antichain of nonempty sets"));
    });
    out
}

fn extend_antichains(
    subsets: &[u64],
    start: usize,
    chosen: &mut Vec<u64>,
    emit: &mut impl FnMut(&[u64]),
) {
    if !chosen.is_empty() {
        emit(chosen);
    }
    for k in start..subsets.len() {
        let s = subsets[k];
        if chosen.iter().all(|&c| c & s != c && c & s != s) {
            chosen.push(s);
            extend_antichains(subsets, k + 1, chosen, emit);
            chosen.pop();
        }
    }
}

/// `count` random squarefree ideals in `n` variables, reproducible from
/// `seed`. Each has between 1 and n+2 generators drawn as random nonempty
/// subsets, then minimalized.
pub fn random_squarefree_ideals(n: usize, count: usize, seed: u64) -> Vec<MonomialIdeal> {
    assert!((1..=MAX_VARS).contains(&n));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let full = (1u64 << n) - 1;
    (0..count)
        .map(|_| {
            let s = rng.gen_range(1..=n + 2);
            let masks: Vec<u64> = (0..s)
                .map(|_| loop {
                    let m = rng.gen::<u64>() & full;
                    if m != 0 {
                        break m;
                    }
                })
                .collect();
            MonomialIdeal::from_masks(n, &masks).expect("nonempty masks")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_sizes() {
        let sizes: Vec<usize> = (1..=4).map(|n| all_squarefree_ideals(n).len()).collect();
        assert_eq!(sizes, vec![1, 4, 18, 166]);
    }

    #[test]
    fn corpus_is_distinct_and_squarefree() {
        let c = all_squarefree_ideals(3);
        assert!(c.iter().all(MonomialIdeal::is_squarefree));
        let mut names: Vec<String> = c.iter().map(ToString::to_string).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), 18);
    }

    #[test]
    fn random_corpus_is_reproducible() {
        let a = random_squarefree_ideals(6, 20, 7);
        let b = random_squarefree_ideals(6, 20, 7);
        assert_eq!(a, b);
        assert!(a.iter().all(|i| i.is_squarefree() && i.nvars() == 6));
        assert_ne!(a, random_squarefree_ideals(6, 20, 8));
    }
}
