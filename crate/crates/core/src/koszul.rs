//! Multigraded Betti numbers from Koszul homology.
//!
//! β_{i,α}(J) = dim Tor_i(J, k)_α is the i-th homology of the degree-α part
//! of J ⊗ K(x_1..x_n). Its term in homological degree k has a basis of the
//! k-subsets S ⊆ {1..n} with α - ε_S ≥ 0 and x^{α-ε_S} ∈ J.

use std::collections::BTreeMap;

use crate::invariants::{multiplicities, MultiplicityTable};
use crate::linalg::{self, FieldSpec, Matrix};
use crate::monomial::{Monomial, MonomialIdeal, SignVector};
use crate::poset::poset_from_ideal;
use crate::{Error, Result};

/// Nonzero graded Betti numbers keyed by (i, α).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BettiTable {
    entries: BTreeMap<(usize, Vec<u32>), usize>,
}

impl BettiTable {
    pub fn get(&self, i: usize, degree: &[u32]) -> usize {
        self.entries
            .get(&(i, degree.to_vec()))
            .copied()
            .unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, &[u32], usize)> {
        self.entries
            .iter()
            .map(|((i, a), &b)| (*i, a.as_slice(), b))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Σ_α β_{i,α}.
    pub fn total(&self, i: usize) -> usize {
        self.entries
            .iter()
            .filter(|((j, _), _)| *j == i)
            .map(|(_, &b)| b)
            .sum()
    }
}

/// The degree-α strand of J ⊗ K(x).
#[derive(Clone, Debug)]
pub struct KoszulFiber {
    degree: Vec<u32>,
    /// terms[k]: k-subsets of variables, as masks in lexicographic order
    terms: Vec<Vec<u64>>,
}

fn lex_key(mask: u64) -> Vec<u32> {
    (0..64).filter(|j| mask >> j & 1 == 1).collect()
}

impl KoszulFiber {
    pub fn new(ideal: &MonomialIdeal, degree: &[u32]) -> Self {
        let n = ideal.nvars();
        assert_eq!(degree.len(), n, "degree length must match nvars");
        let positive: u64 = (0..n).filter(|&i| degree[i] > 0).fold(0, |m, i| m | 1 << i);
        let mut terms = vec![Vec::new(); n + 1];
        // enumerate submasks of the positive support
        let mut s = positive;
        loop {
            let exps: Vec<u32> = (0..n)
                .map(|i| degree[i] - u32::from(s >> i & 1 == 1))
                .collect();
            if ideal.contains(&Monomial::new(exps)) {
                terms[s.count_ones() as usize].push(s);
            }
            if s == 0 {
                break;
            }
            s = (s - 1) & positive;
        }
        for t in terms.iter_mut() {
            t.sort_by_key(|&m| lex_key(m));
        }
        KoszulFiber {
            degree: degree.to_vec(),
            terms,
        }
    }

    pub fn degree(&self) -> &[u32] {
        &self.degree
    }

    pub fn term_counts(&self) -> Vec<usize> {
        self.terms.iter().map(Vec::len).collect()
    }

    fn terms(&self, k: usize) -> &[u64] {
        self.terms.get(k).map_or(&[], Vec::as_slice)
    }

    /// d_k : C_k → C_{k-1}, e_S ↦ Σ_{j∈S} (-1)^{pos(j,S)} e_{S∖j}.
    /// `d_0` is the zero map to nothing.
    pub fn differential(&self, k: usize) -> Matrix {
        let src = self.terms(k);
        if k == 0 {
            return Matrix::zeros(0, src.len());
        }
        let dst = self.terms(k - 1);
        let index: BTreeMap<u64, usize> = dst.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let mut triplets = Vec::new();
        for (col, &s) in src.iter().enumerate() {
            for (pos, j) in lex_key(s).into_iter().enumerate() {
                // x_j times a member of J stays in J
                let row = index[&(s & !(1u64 << j))];
                triplets.push((row, col, if pos % 2 == 0 { 1 } else { -1 }));
            }
        }
        Matrix::from_triplets(dst.len(), src.len(), triplets).expect("indices in range")
    }

    pub fn homology_dim(&self, i: usize, f: FieldSpec) -> Result<usize> {
        Ok(linalg::homology_dim(
            &self.differential(i + 1),
            &self.differential(i),
            f,
        )?)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.terms
            .iter()
            .enumerate()
            .map(|(k, t)| {
                if k % 2 == 0 {
                    t.len() as i64
                } else {
                    -(t.len() as i64)
                }
            })
            .sum()
    }
}

/// β_{i,α}(J) for all i at one degree; zero entries omitted.
pub fn betti_at(
    ideal: &MonomialIdeal,
    degree: &[u32],
    f: FieldSpec,
) -> Result<BTreeMap<usize, usize>> {
    let fiber = KoszulFiber::new(ideal, degree);
    let mut out = BTreeMap::new();
    for i in 0..ideal.nvars() {
        if fiber.terms(i).is_empty() {
            continue;
        }
        let b = fiber.homology_dim(i, f)?;
        if b > 0 {
            out.insert(i, b);
        }
    }
    Ok(out)
}

/// Full multigraded Betti table, scanning all 0 ≤ α ≤ lcm of the generators.
pub fn graded_betti(ideal: &MonomialIdeal, f: FieldSpec) -> Result<BettiTable> {
    let lcm = ideal.lcm();
    let bounds = lcm.exponents();
    let mut table = BettiTable::default();
    let mut degree = vec![0u32; bounds.len()];
    loop {
        for (i, b) in betti_at(ideal, &degree, f)? {
            table.entries.insert((i, degree.clone()), b);
        }
        // mixed-radix increment
        let mut k = 0;
        while k < degree.len() && degree[k] == bounds[k] {
            degree[k] = 0;
            k += 1;
        }
        if k == degree.len() {
            break;
        }
        degree[k] += 1;
    }
    Ok(table)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualMismatch {
    pub i: usize,
    pub alpha: SignVector,
    pub betti: usize,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualIdentityReport {
    pub ideal: MonomialIdeal,
    pub dual: MonomialIdeal,
    pub betti: BettiTable,
    pub multiplicities: MultiplicityTable,
    pub entries_checked: usize,
    pub mismatches: Vec<DualMismatch>,
    /// nonzero Betti entries at degrees that are not squarefree
    pub stray: Vec<(usize, Vec<u32>, usize)>,
}

impl DualIdentityReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.stray.is_empty()
    }
}

/// Check β_{i,-α}(I^∨) = m_{|α|-i, α} for every i and every α ∈ Ω, with -α
/// read as the 0/1 exponent vector of the support of α.
pub fn verify_dual_identity(ideal: &MonomialIdeal, f: FieldSpec) -> Result<DualIdentityReport> {
    if !ideal.is_squarefree() {
        return Err(Error::Ideal(crate::monomial::IdealError::NotSquarefree(
            ideal.to_string(),
        )));
    }
    let n = ideal.nvars();
    let dual = ideal.alexander_dual()?;
    let betti = graded_betti(&dual, f)?;
    let mults = multiplicities(&poset_from_ideal(ideal)?, f)?;
    let mut mismatches = Vec::new();
    let mut entries_checked = 0;
    for alpha in SignVector::all(n) {
        let exps: Vec<u32> = (0..n).map(|i| u32::from(alpha.is_negative_at(i))).collect();
        for i in 0..=n {
            let b = betti.get(i, &exps);
            let m = if i <= alpha.weight() {
                mults.get_by_sign(alpha.weight() - i, &alpha)
            } else {
                0
            };
            entries_checked += 1;
            if b != m {
                mismatches.push(DualMismatch {
                    i,
                    alpha,
                    betti: b,
                    multiplicity: m,
                });
            }
        }
    }
    let stray = betti
        .entries()
        .filter(|(_, a, _)| a.iter().any(|&e| e > 1))
        .map(|(i, a, b)| (i, a.to_vec(), b))
        .collect();
    Ok(DualIdentityReport {
        ideal: ideal.clone(),
        dual,
        betti,
        multiplicities: mults,
        entries_checked,
        mismatches,
        stray,
    })
}
