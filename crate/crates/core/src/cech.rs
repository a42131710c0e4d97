//! Graded pieces of local cohomology H^r_I(R) from the Čech complex on the
//! minimal generators g_1..g_s of a monomial ideal.
//!
//! In multidegree α the term of the Čech complex indexed by S ⊆ {1..s} is
//! the degree-α piece of R localized at the product of the g_j, j ∈ S. That
//! piece is k when α_i ≥ 0 for every variable i outside the union of the
//! supports of those generators, and zero otherwise. So each fiber is a
//! finite complex of 0/1-dimensional terms with ±1 differentials.
//!
//! Multiplication by x_i sends the degree-α fiber into the degree-(α + ε_i)
//! fiber by the identity on every term that is nonzero in degree α.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::linalg::{self, FieldSpec, LinalgError, Matrix};
use crate::monomial::{MonomialIdeal, SignVector};

/// Largest number of minimal generators the engine accepts.
pub const MAX_GENERATORS: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CechError {
    #[error("{0} minimal generators exceeds the Čech engine limit of {MAX_GENERATORS}")]
    TooManyGenerators(usize),
    #[error("degree has {found} entries, expected {expected}")]
    DegreeLength { expected: usize, found: usize },
    #[error("variable index {0} out of range")]
    BadVariable(usize),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// The degree-α fiber of the Čech complex.
#[derive(Clone, Debug)]
pub struct CechFiber {
    degree: Vec<i64>,
    ngens: usize,
    /// terms[k] = generator subsets of size k whose term is nonzero, as
    /// increasing bitmasks
    terms: Vec<Vec<u32>>,
    /// position of each nonzero subset within its level, u32::MAX if zero
    position: Vec<u32>,
}

impl CechFiber {
    pub fn new(ideal: &MonomialIdeal, degree: &[i64]) -> Result<Self, CechError> {
        let s = ideal.generators().len();
        if s > MAX_GENERATORS {
            return Err(CechError::TooManyGenerators(s));
        }
        if degree.len() != ideal.nvars() {
            return Err(CechError::DegreeLength {
                expected: ideal.nvars(),
                found: degree.len(),
            });
        }
        let negative = SignVector::pattern_of(degree).support_mask();
        let supports = ideal.support_masks();
        let mut terms = vec![Vec::new(); s + 1];
        let mut position = vec![u32::MAX; 1 << s];
        // union of supports, built incrementally from the subset minus its top bit
        let mut union = vec![0u64; 1 << s];
        for subset in 0u32..(1u32 << s) {
            if subset != 0 {
                let top = 31 - subset.leading_zeros();
                union[subset as usize] =
                    union[(subset & !(1 << top)) as usize] | supports[top as usize];
            }
            if negative & !union[subset as usize] == 0 {
                let level = &mut terms[subset.count_ones() as usize];
                position[subset as usize] = level.len() as u32;
                level.push(subset);
            }
        }
        Ok(CechFiber {
            degree: degree.to_vec(),
            ngens: s,
            terms,
            position,
        })
    }

    pub fn degree(&self) -> &[i64] {
        &self.degree
    }

    /// Nonzero terms in cohomological degree `k`.
    pub fn terms(&self, k: usize) -> &[u32] {
        self.terms.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn term_counts(&self) -> Vec<usize> {
        self.terms.iter().map(Vec::len).collect()
    }

    fn index_of(&self, subset: u32) -> Option<usize> {
        match self.position.get(subset as usize) {
            Some(&p) if p != u32::MAX => Some(p as usize),
            _ => None,
        }
    }

    /// Differential from degree `k` to `k + 1`. Adding generator j to S
    /// carries the sign (-1)^{#{l ∈ S : l < j}}.
    pub fn differential(&self, k: usize) -> Matrix {
        let src = self.terms(k);
        let dst = self.terms(k + 1);
        let mut triplets = Vec::new();
        for (col, &s) in src.iter().enumerate() {
            for j in 0..self.ngens {
                if s >> j & 1 == 1 {
                    continue;
                }
                if let Some(row) = self.index_of(s | 1 << j) {
                    let below = (s & ((1u32 << j) - 1)).count_ones();
                    let sign = if below.is_multiple_of(2) { 1 } else { -1 };
                    triplets.push((row, col, sign));
                }
            }
        }
        Matrix::from_triplets(dst.len(), src.len(), triplets).expect("indices in range")
    }

    /// Differential into degree `k` (zero map from nothing when `k = 0`).
    pub fn incoming(&self, k: usize) -> Matrix {
        if k == 0 {
            Matrix::zeros(self.terms(0).len(), 0)
        } else {
            self.differential(k - 1)
        }
    }

    /// dim H^r of the fiber.
    pub fn cohomology_dim(&self, r: usize, f: FieldSpec) -> Result<usize, CechError> {
        if r > self.ngens {
            return Ok(0);
        }
        Ok(linalg::homology_dim(
            &self.incoming(r),
            &self.differential(r),
            f,
        )?)
    }

    /// dim H^r of the fiber for r = 0..=s, each differential reduced once.
    pub fn cohomology_dims(&self, f: FieldSpec) -> Result<Vec<usize>, CechError> {
        let mut ranks = Vec::with_capacity(self.ngens + 1);
        for k in 0..=self.ngens {
            let d = self.differential(k);
            ranks.push(if d.is_zero() { 0 } else { linalg::rank(&d, f)? });
        }
        Ok((0..=self.ngens)
            .map(|r| {
                let incoming = if r == 0 { 0 } else { ranks[r - 1] };
                self.terms[r].len() - ranks[r] - incoming
            })
            .collect())
    }

    /// Euler characteristic Σ_k (-1)^k #terms_k.
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

/// dim_k H^r_I(R)_α.
pub fn graded_lc_dim(
    ideal: &MonomialIdeal,
    r: usize,
    degree: &[i64],
    f: FieldSpec,
) -> Result<usize, CechError> {
    CechFiber::new(ideal, degree)?.cohomology_dim(r, f)
}

/// dim_k H^r_I(R)_α for every r with a nonzero value.
pub fn graded_lc_dims(
    ideal: &MonomialIdeal,
    degree: &[i64],
    f: FieldSpec,
) -> Result<BTreeMap<usize, usize>, CechError> {
    let dims = CechFiber::new(ideal, degree)?.cohomology_dims(f)?;
    Ok(dims
        .into_iter()
        .enumerate()
        .filter(|&(_, d)| d > 0)
        .collect())
}

/// Matrix of ·x_i : H^r_I(R)_α → H^r_I(R)_{α+ε_i} in the homology bases of
/// the two fibers. Rows index the target basis, columns the source basis.
pub fn multiplication_map(
    ideal: &MonomialIdeal,
    r: usize,
    degree: &[i64],
    var: usize,
    f: FieldSpec,
) -> Result<Matrix, CechError> {
    if var >= ideal.nvars() {
        return Err(CechError::BadVariable(var));
    }
    let src = CechFiber::new(ideal, degree)?;
    let mut shifted = degree.to_vec();
    shifted[var] += 1;
    let dst = CechFiber::new(ideal, &shifted)?;
    let (src_dim, dst_dim) = (src.cohomology_dim(r, f)?, dst.cohomology_dim(r, f)?);
    induced_multiplication(&src, &dst, r, src_dim, dst_dim, f)
}

/// The map on H^r induced by including the terms of `src` into `dst`.
/// `dst` must be a fiber in a degree that dominates the degree of `src`.
pub fn induced_multiplication(
    src: &CechFiber,
    dst: &CechFiber,
    r: usize,
    src_dim: usize,
    dst_dim: usize,
    f: FieldSpec,
) -> Result<Matrix, CechError> {
    if src_dim == 0 || dst_dim == 0 {
        return Ok(Matrix::zeros(dst_dim, src_dim));
    }
    let triplets = src.terms(r).iter().enumerate().map(|(col, &s)| {
        let row = dst
            .index_of(s)
            .expect("a term nonzero in degree α stays nonzero in higher degrees");
        (row, col, 1)
    });
    let chain = Matrix::from_triplets(dst.terms(r).len(), src.terms(r).len(), triplets)?;
    Ok(linalg::induced_map_on_homology(
        &src.incoming(r),
        &dst.incoming(r),
        &src.differential(r),
        &dst.differential(r),
        &chain,
        f,
    )?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StraightnessViolation {
    /// dim at `degree` differs from dim at its {-1,0}-pattern
    Dimension {
        degree: Vec<i64>,
        dim: usize,
        pattern_dim: usize,
    },
    /// x_var from `degree` stays in the same pattern but is not bijective
    Multiplication {
        degree: Vec<i64>,
        var: usize,
        source_dim: usize,
        target_dim: usize,
        rank: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StraightnessReport {
    pub r: usize,
    pub bound: i64,
    pub degrees_checked: usize,
    pub maps_checked: usize,
    pub violations: Vec<StraightnessViolation>,
}

impl StraightnessReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check over all α in [-bound, bound]^n that dim H^r_I(R)_α depends only
/// on the pattern of α, and that each step α → α + ε_i that keeps the
/// pattern (α_i ≤ -2 or α_i ≥ 0) is bijective.
pub fn straightness_check(
    ideal: &MonomialIdeal,
    r: usize,
    bound: i64,
    f: FieldSpec,
) -> Result<StraightnessReport, CechError> {
    let n = ideal.nvars();
    let mut pattern_dims: BTreeMap<SignVector, usize> = BTreeMap::new();
    for a in SignVector::all(n) {
        pattern_dims.insert(a, graded_lc_dim(ideal, r, &a.degree(), f)?);
    }
    let mut report = StraightnessReport {
        r,
        bound,
        degrees_checked: 0,
        maps_checked: 0,
        violations: Vec::new(),
    };
    let width = (2 * bound + 1) as usize;
    let total = width.pow(n as u32);
    for idx in 0..total {
        let mut rem = idx;
        let degree: Vec<i64> = (0..n)
            .map(|_| {
                let d = (rem % width) as i64 - bound;
                rem /= width;
                d
            })
            .collect();
        let dim = graded_lc_dim(ideal, r, &degree, f)?;
        let pattern_dim = pattern_dims[&SignVector::pattern_of(&degree)];
        report.degrees_checked += 1;
        if dim != pattern_dim {
            report.violations.push(StraightnessViolation::Dimension {
                degree: degree.clone(),
                dim,
                pattern_dim,
            });
        }
        for var in 0..n {
            let d = degree[var];
            if d + 1 > bound || d == -1 {
                continue;
            }
            let mut target = degree.clone();
            target[var] += 1;
            let target_dim = graded_lc_dim(ideal, r, &target, f)?;
            let m = multiplication_map(ideal, r, &degree, var, f)?;
            let rank = linalg::rank(&m, f)?;
            report.maps_checked += 1;
            if !(dim == target_dim && rank == dim) {
                report
                    .violations
                    .push(StraightnessViolation::Multiplication {
                        degree: degree.clone(),
                        var,
                        source_dim: dim,
                        target_dim,
                        rank,
                    });
            }
        }
    }
    Ok(report)
}
