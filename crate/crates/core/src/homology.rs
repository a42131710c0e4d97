//! Reduced simplicial homology over a field.
//!
//! Chains are augmented by a single generator in degree -1 (the empty
//! simplex), so the empty complex has one-dimensional homology in degree -1
//! and a nonempty complex has none there.

use std::collections::{BTreeMap, BTreeSet};

use crate::linalg::{self, FieldSpec, LinalgError, Matrix};

/// A finite simplicial complex given by its facets.
///
/// The complex with no facets is the empty complex {∅}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertex_count: usize,
    facets: Vec<Vec<usize>>,
}

impl SimplicialComplex {
    /// Builds the downward closure of `facets`. Each facet is sorted and
    /// deduplicated, and faces of other facets are dropped.
    pub fn new(vertex_count: usize, facets: Vec<Vec<usize>>) -> Self {
        let mut fs: Vec<Vec<usize>> = facets
            .into_iter()
            .map(|mut f| {
                f.sort_unstable();
                f.dedup();
                f
            })
            .filter(|f| !f.is_empty())
            .collect();
        fs.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        fs.dedup();
        let mut kept: Vec<Vec<usize>> = Vec::new();
        for f in fs {
            if !kept.iter().any(|k| is_subset(&f, k)) {
                kept.push(f);
            }
        }
        kept.sort();
        let vertex_count = kept
            .iter()
            .flatten()
            .map(|v| v + 1)
            .max()
            .unwrap_or(0)
            .max(vertex_count);
        SimplicialComplex {
            vertex_count,
            facets: kept,
        }
    }

    pub fn empty() -> Self {
        SimplicialComplex {
            vertex_count: 0,
            facets: Vec::new(),
        }
    }

    /// The full simplex on `n` vertices.
    pub fn simplex(n: usize) -> Self {
        SimplicialComplex::new(n, vec![(0..n).collect()])
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    /// Dimension of the largest facet; `None` for the empty complex.
    pub fn dimension(&self) -> Option<usize> {
        self.facets.iter().map(|f| f.len() - 1).max()
    }

    /// All simplices of dimension `d`, sorted lexicographically. Dimension
    /// -1 holds the empty simplex.
    pub fn simplices(&self, d: i64) -> Vec<Vec<usize>> {
        if d < -1 {
            return Vec::new();
        }
        if d == -1 {
            return vec![Vec::new()];
        }
        let k = d as usize + 1;
        let mut out = BTreeSet::new();
        for f in self.facets.iter().filter(|f| f.len() >= k) {
            for_each_subset(f, k, &mut |s| {
                out.insert(s.to_vec());
            });
        }
        out.into_iter().collect()
    }

    /// Number of simplices in each dimension from -1 up to the dimension.
    pub fn f_vector(&self) -> Vec<usize> {
        let top = self.dimension().map_or(-1, |d| d as i64);
        (-1..=top).map(|d| self.simplices(d).len()).collect()
    }
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    small.iter().all(|v| big.binary_search(v).is_ok())
}

fn for_each_subset(set: &[usize], k: usize, visit: &mut impl FnMut(&[usize])) {
    fn rec(
        set: &[usize],
        k: usize,
        start: usize,
        acc: &mut Vec<usize>,
        visit: &mut impl FnMut(&[usize]),
    ) {
        if acc.len() == k {
            visit(acc);
            return;
        }
        for i in start..set.len() {
            if set.len() - i < k - acc.len() {
                break;
            }
            acc.push(set[i]);
            rec(set, k, i + 1, acc, visit);
            acc.pop();
        }
    }
    rec(set, k, 0, &mut Vec::with_capacity(k), visit);
}

/// Boundary map from `d`-simplices to `(d-1)`-simplices, both in
/// lexicographic order. Dropping the k-th vertex of a sorted simplex
/// carries sign (-1)^k. For `d = 0` the target is the empty simplex, which
/// gives the augmentation.
pub fn boundary_matrix(k: &SimplicialComplex, d: usize) -> Matrix {
    let cols = k.simplices(d as i64);
    let rows = k.simplices(d as i64 - 1);
    let index: BTreeMap<&[usize], usize> = rows
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_slice(), i))
        .collect();
    let mut triplets = Vec::with_capacity(cols.len() * (d + 1));
    for (j, s) in cols.iter().enumerate() {
        for drop in 0..s.len() {
            let face: Vec<usize> = s
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != drop)
                .map(|(_, &v)| v)
                .collect();
            let sign = if drop % 2 == 0 { 1 } else { -1 };
            triplets.push((index[face.as_slice()], j, sign));
        }
    }
    Matrix::from_triplets(rows.len(), cols.len(), triplets).expect("faces are indexed")
}

/// Nonzero dimensions of the reduced homology of `k` over `f`, keyed by
/// degree (from -1 upward).
pub fn reduced_homology_dims(
    k: &SimplicialComplex,
    f: FieldSpec,
) -> Result<BTreeMap<i64, usize>, LinalgError> {
    let Some(top) = k.dimension() else {
        return Ok(BTreeMap::from([(-1, 1)]));
    };
    // ranks[d] = rank of the boundary out of dimension d, d = 0..=top
    let mut ranks = Vec::with_capacity(top + 2);
    for d in 0..=top {
        ranks.push(linalg::rank(&boundary_matrix(k, d), f)?);
    }
    ranks.push(0);
    let counts = k.f_vector();
    let mut out = BTreeMap::new();
    // degree -1: one chain, nothing leaves it, rank of ∂_0 enters it
    let h_minus = 1 - ranks[0];
    if h_minus > 0 {
        out.insert(-1, h_minus);
    }
    for d in 0..=top {
        let h = counts[d + 1] - ranks[d] - ranks[d + 1];
        if h > 0 {
            out.insert(d as i64, h);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn augmentation_of_a_point() {
        let k = SimplicialComplex::new(1, vec![vec![0]]);
        let d0 = boundary_matrix(&k, 0);
        assert_eq!((d0.nrows(), d0.ncols()), (1, 1));
        assert_eq!(d0.get(0, 0), q(1));
    }

    #[test]
    fn boundary_of_an_edge() {
        let k = SimplicialComplex::new(2, vec![vec![0, 1]]);
        let d1 = boundary_matrix(&k, 1);
        assert_eq!((d1.nrows(), d1.ncols()), (2, 1));
        assert_eq!(d1.get(0, 0), q(-1));
        assert_eq!(d1.get(1, 0), q(1));
    }

    #[test]
    fn homology_examples() {
        let q = FieldSpec::Rationals;
        assert_eq!(
            reduced_homology_dims(&SimplicialComplex::empty(), q).unwrap(),
            BTreeMap::from([(-1, 1)])
        );
        let two_points = SimplicialComplex::new(2, vec![vec![0], vec![1]]);
        assert_eq!(
            reduced_homology_dims(&two_points, q).unwrap(),
            BTreeMap::from([(0, 1)])
        );
        let circle = SimplicialComplex::new(3, vec![vec![0, 1], vec![1, 2], vec![0, 2]]);
        assert_eq!(
            reduced_homology_dims(&circle, q).unwrap(),
            BTreeMap::from([(1, 1)])
        );
        assert!(reduced_homology_dims(&SimplicialComplex::simplex(4), q)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn projective_plane_has_torsion() {
        // 6-vertex triangulation of RP^2
        let facets = vec![
            vec![0, 1, 2],
            vec![0, 2, 3],
            vec![0, 3, 4],
            vec![0, 4, 5],
            vec![0, 1, 5],
            vec![1, 2, 4],
            vec![2, 3, 5],
            vec![1, 3, 4],
            vec![1, 3, 5],
            vec![2, 4, 5],
        ];
        let rp2 = SimplicialComplex::new(6, facets);
        assert!(reduced_homology_dims(&rp2, FieldSpec::Rationals)
            .unwrap()
            .is_empty());
        assert_eq!(
            reduced_homology_dims(&rp2, FieldSpec::PrimeField(2)).unwrap(),
            BTreeMap::from([(1, 1), (2, 1)])
        );
    }

    #[test]
    fn facets_are_normalised() {
        let k = SimplicialComplex::new(0, vec![vec![1, 0], vec![0], vec![0, 1], vec![]]);
        assert_eq!(k.facets(), &[vec![0, 1]]);
        assert_eq!(k.vertex_count(), 2);
        assert_eq!(k.f_vector(), vec![1, 2, 1]);
    }
}
