//! Intersection posets of subspace arrangements and their order complexes.
//!
//! Order convention: `p < q` means the subspace X_p is strictly contained in
//! X_q. Then K(>p), the order complex of the elements above p, consists of
//! the subspaces strictly containing X_p. This is the direction that makes
//! the multiplicity formula agree with graded local cohomology: for the
//! ideal (x1*x2) the hyperplane V(x1) must have nothing above it, since
//! dim H^1_{(x1x2)}(R) in degree (-1, 0) is 1 and the hyperplane has height
//! 1, which needs H~_{-1}(K(>V(x1))) = k, i.e. K(>V(x1)) empty.
//!
//! The ambient space is never an element.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::homology::SimplicialComplex;
use crate::linalg::{self, FieldSpec, LinalgError, Matrix};
use crate::monomial::{IdealError, MonomialIdeal, SignVector};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PosetError {
    #[error("subspace {index} is empty (its equations are inconsistent)")]
    Inconsistent { index: usize },
    #[error("subspace {index} is the whole ambient space")]
    Ambient { index: usize },
    #[error("subspace {index} lives in dimension {found}, expected {expected}")]
    AmbientMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("no subspaces given")]
    NoComponents,
    #[error("node {0} is not in the poset")]
    UnknownNode(usize),
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Nonempty affine subspace {x : A x = b} of Q^n.
///
/// Equations are kept as the reduced row echelon form of the augmented
/// matrix [A | b], so equal subspaces have equal representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineSubspace {
    nvars: usize,
    /// rows of length nvars + 1, the last entry being the constant
    rows: Vec<Vec<BigRational>>,
}

impl AffineSubspace {
    /// `None` when the system is inconsistent.
    pub fn new(
        nvars: usize,
        equations: Vec<(Vec<BigRational>, BigRational)>,
    ) -> Result<Option<Self>, LinalgError> {
        let mut aug = Matrix::zeros(equations.len(), nvars + 1);
        for (i, (a, b)) in equations.into_iter().enumerate() {
            if a.len() != nvars {
                return Err(LinalgError::DimensionMismatch(format!(
                    "equation {i} has {} coefficients, expected {nvars}",
                    a.len()
                )));
            }
            for (j, v) in a.into_iter().enumerate() {
                aug.set(i, j, v)?;
            }
            aug.set(i, nvars, b)?;
        }
        Ok(Self::from_augmented(nvars, &aug))
    }

    /// Coordinate subspace {x_i = 0 : α_i = -1}.
    pub fn coordinate(alpha: &SignVector) -> Self {
        let n = alpha.nvars();
        let rows = alpha
            .support()
            .into_iter()
            .map(|i| {
                let mut r = vec![BigRational::zero(); n + 1];
                r[i] = BigRational::one();
                r
            })
            .collect();
        AffineSubspace { nvars: n, rows }
    }

    fn from_augmented(nvars: usize, aug: &Matrix) -> Option<Self> {
        let rows = rref_rows(aug);
        // a pivot in the constant column means 0 = 1
        if rows.iter().any(|r| r[..nvars].iter().all(Zero::is_zero)) {
            return None;
        }
        Some(AffineSubspace { nvars, rows })
    }

    fn augmented(&self) -> Matrix {
        let mut m = Matrix::zeros(self.rows.len(), self.nvars + 1);
        for (i, r) in self.rows.iter().enumerate() {
            for (j, v) in r.iter().enumerate() {
                m.set(i, j, v.clone()).expect("in range");
            }
        }
        m
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn codimension(&self) -> usize {
        self.rows.len()
    }

    /// Reduced equations as (coefficients, constant).
    pub fn equations(&self) -> Vec<(Vec<BigRational>, BigRational)> {
        self.rows
            .iter()
            .map(|r| (r[..self.nvars].to_vec(), r[self.nvars].clone()))
            .collect()
    }

    /// Intersection, or `None` when empty.
    pub fn intersect(&self, other: &AffineSubspace) -> Option<AffineSubspace> {
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        let mut m = Matrix::zeros(rows.len(), self.nvars + 1);
        for (i, r) in rows.iter().enumerate() {
            for (j, v) in r.iter().enumerate() {
                m.set(i, j, v.clone()).expect("in range");
            }
        }
        Self::from_augmented(self.nvars, &m)
    }

    /// Whether `self ⊆ other`: every equation of `other` vanishes on
    /// `self`, i.e. lies in the row space of self's augmented system.
    pub fn is_contained_in(&self, other: &AffineSubspace) -> bool {
        let mine = self.augmented();
        let both = stack(&mine, &other.augmented());
        let f = FieldSpec::Rationals;
        linalg::rank(&mine, f).expect("rational") == linalg::rank(&both, f).expect("rational")
    }
}

fn stack(a: &Matrix, b: &Matrix) -> Matrix {
    let mut m = Matrix::zeros(a.nrows() + b.nrows(), a.ncols());
    for (i, j, v) in a.entries() {
        m.set(i, j, v.clone()).expect("in range");
    }
    for (i, j, v) in b.entries() {
        m.set(a.nrows() + i, j, v.clone()).expect("in range");
    }
    m
}

/// Nonzero rows of the reduced row echelon form over Q.
fn rref_rows(m: &Matrix) -> Vec<Vec<BigRational>> {
    let mut d = m.to_dense();
    let ncols = m.ncols();
    let mut prow = 0;
    for col in 0..ncols {
        let Some(found) = (prow..d.len()).find(|&r| !d[r][col].is_zero()) else {
            continue;
        };
        d.swap(found, prow);
        let inv = d[prow][col].recip();
        for v in d[prow].iter_mut() {
            *v *= &inv;
        }
        for r in 0..d.len() {
            if r != prow && !d[r][col].is_zero() {
                let factor = d[r][col].clone();
                for c in col..ncols {
                    let t = &factor * &d[prow][c];
                    d[r][c] -= t;
                }
            }
        }
        prow += 1;
        if prow == d.len() {
            break;
        }
    }
    d.truncate(prow);
    d
}

impl fmt::Display for AffineSubspace {
    /// Equations joined by `; `, e.g. `x1 - 2*x3 = 1/2; x2 = 0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut eqs = Vec::new();
        for r in &self.rows {
            let mut lhs = String::new();
            for (j, c) in r[..self.nvars].iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let neg = *c < BigRational::zero();
                let abs = if neg { -c.clone() } else { c.clone() };
                if lhs.is_empty() {
                    if neg {
                        lhs.push('-');
                    }
                } else {
                    lhs.push_str(if neg { " - " } else { " + " });
                }
                if !abs.is_one() {
                    lhs.push_str(&format!("{abs}*"));
                }
                lhs.push_str(&format!("x{}", j + 1));
            }
            eqs.push(format!("{lhs} = {}", r[self.nvars]));
        }
        write!(f, "{}", eqs.join("; "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Geometry {
    Coordinate(SignVector),
    Affine(AffineSubspace),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosetNode {
    pub id: usize,
    pub geometry: Geometry,
    /// Codimension of the subspace.
    pub height: usize,
}

impl PosetNode {
    pub fn sign_vector(&self) -> Option<SignVector> {
        match &self.geometry {
            Geometry::Coordinate(a) => Some(*a),
            Geometry::Affine(_) => None,
        }
    }

    /// `V(x2,x3)` for coordinate subspaces, `V(<equations>)` otherwise.
    pub fn label(&self) -> String {
        match &self.geometry {
            Geometry::Coordinate(a) => a.subspace_label(),
            Geometry::Affine(s) => format!("V({s})"),
        }
    }
}

/// Nonempty intersections of the components of an arrangement, ordered by
/// inclusion of subspaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionPoset {
    nvars: usize,
    nodes: Vec<PosetNode>,
    /// above[p] = sorted ids of q with p < q (X_p ⊊ X_q)
    above: Vec<Vec<usize>>,
}

impl IntersectionPoset {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn nodes(&self) -> &[PosetNode] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, id: usize) -> Result<&PosetNode, PosetError> {
        self.nodes.get(id).ok_or(PosetError::UnknownNode(id))
    }

    pub fn less_than(&self, p: usize, q: usize) -> bool {
        self.above
            .get(p)
            .is_some_and(|a| a.binary_search(&q).is_ok())
    }

    /// Elements strictly above `p`.
    pub fn above(&self, p: usize) -> &[usize] {
        &self.above[p]
    }

    /// All pairs (p, q) with p < q.
    pub fn relations(&self) -> Vec<(usize, usize)> {
        self.above
            .iter()
            .enumerate()
            .flat_map(|(p, qs)| qs.iter().map(move |&q| (p, q)))
            .collect()
    }

    /// The maximal elements, i.e. the irreducible components.
    pub fn maximal(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&p| self.above[p].is_empty())
            .collect()
    }

    pub fn find_sign(&self, alpha: &SignVector) -> Option<&PosetNode> {
        self.nodes
            .iter()
            .find(|n| n.sign_vector().as_ref() == Some(alpha))
    }

    fn from_nodes(
        nvars: usize,
        nodes: Vec<PosetNode>,
        lt: impl Fn(&PosetNode, &PosetNode) -> bool,
    ) -> Self {
        let above = nodes
            .iter()
            .map(|p| nodes.iter().filter(|q| lt(p, q)).map(|q| q.id).collect())
            .collect();
        IntersectionPoset {
            nvars,
            nodes,
            above,
        }
    }
}

/// Intersection poset of the coordinate arrangement defined by `ideal`.
///
/// Only the radical matters; nodes are the unions of supports of nonempty
/// sets of minimal primes.
pub fn poset_from_ideal(ideal: &MonomialIdeal) -> Result<IntersectionPoset, PosetError> {
    if !ideal.is_squarefree() {
        log::warn!("ideal {ideal} is not squarefree; using its radical");
    }
    let n = ideal.nvars();
    let primes: Vec<u64> = ideal
        .radical()
        .minimal_primes()?
        .iter()
        .map(SignVector::support_mask)
        .collect();
    let mut closed: BTreeSet<SignVector> = BTreeSet::new();
    let mut frontier: Vec<u64> = primes.clone();
    while let Some(m) = frontier.pop() {
        if closed.insert(SignVector::from_mask(n, m)) {
            frontier.extend(primes.iter().map(|p| p | m));
        }
    }
    let nodes: Vec<PosetNode> = closed
        .into_iter()
        .enumerate()
        .map(|(id, a)| PosetNode {
            id,
            height: a.weight(),
            geometry: Geometry::Coordinate(a),
        })
        .collect();
    Ok(IntersectionPoset::from_nodes(n, nodes, |p, q| {
        let (a, b) = (p.sign_vector().unwrap(), q.sign_vector().unwrap());
        // support(a) ⊋ support(b)
        a.support_mask() & b.support_mask() == b.support_mask() && a != b
    }))
}

/// Intersection poset of an arrangement of affine subspaces over Q.
///
/// Inputs contained in other inputs are not components and are dropped
/// with a warning. Empty intersections are discarded.
pub fn poset_from_subspaces(inputs: &[AffineSubspace]) -> Result<IntersectionPoset, PosetError> {
    let Some(first) = inputs.first() else {
        return Err(PosetError::NoComponents);
    };
    let n = first.nvars;
    for (index, s) in inputs.iter().enumerate() {
        if s.nvars != n {
            return Err(PosetError::AmbientMismatch {
                index,
                expected: n,
                found: s.nvars,
            });
        }
        if s.codimension() == 0 {
            return Err(PosetError::Ambient { index });
        }
    }
    let mut components: Vec<AffineSubspace> = Vec::new();
    for (i, s) in inputs.iter().enumerate() {
        if components.contains(s) {
            log::warn!("subspace {i} repeats an earlier input; ignoring it");
            continue;
        }
        let swallowed = inputs
            .iter()
            .enumerate()
            .any(|(j, t)| j != i && t != s && s.is_contained_in(t));
        if swallowed {
            log::warn!(
                "subspace {i} lies inside another input and is not a component; ignoring it"
            );
            continue;
        }
        components.push(s.clone());
    }

    let mut closed: BTreeSet<AffineSubspace> = BTreeSet::new();
    let mut frontier = components.clone();
    while let Some(s) = frontier.pop() {
        if closed.contains(&s) {
            continue;
        }
        for c in &components {
            if let Some(t) = s.intersect(c) {
                if !closed.contains(&t) {
                    frontier.push(t);
                }
            }
        }
        closed.insert(s);
    }
    let mut sorted: Vec<AffineSubspace> = closed.into_iter().collect();
    sorted.sort_by(|a, b| a.codimension().cmp(&b.codimension()).then_with(|| a.cmp(b)));
    let nodes: Vec<PosetNode> = sorted
        .into_iter()
        .enumerate()
        .map(|(id, s)| PosetNode {
            id,
            height: s.codimension(),
            geometry: Geometry::Affine(s),
        })
        .collect();
    Ok(IntersectionPoset::from_nodes(n, nodes, |p, q| {
        match (&p.geometry, &q.geometry) {
            (Geometry::Affine(a), Geometry::Affine(b)) => a != b && a.is_contained_in(b),
            _ => unreachable!("affine poset"),
        }
    }))
}

/// Order complex of the elements strictly above `p`. Vertices are numbered
/// by increasing node id; facets are the maximal chains.
pub fn strict_upset_complex(
    poset: &IntersectionPoset,
    p: usize,
) -> Result<SimplicialComplex, PosetError> {
    poset.node(p)?;
    let up: Vec<usize> = poset.above(p).to_vec();
    if up.is_empty() {
        return Ok(SimplicialComplex::empty());
    }
    let local: BTreeMap<usize, usize> = up.iter().enumerate().map(|(i, &q)| (q, i)).collect();
    // upper covers inside the upset
    let covers: BTreeMap<usize, Vec<usize>> = up
        .iter()
        .map(|&a| {
            let c = poset
                .above(a)
                .iter()
                .copied()
                .filter(|&b| {
                    !poset
                        .above(a)
                        .iter()
                        .any(|&m| m != b && poset.less_than(m, b))
                })
                .collect();
            (a, c)
        })
        .collect();
    let minimal: Vec<usize> = up
        .iter()
        .copied()
        .filter(|&a| !up.iter().any(|&b| poset.less_than(b, a)))
        .collect();

    let mut facets = Vec::new();
    let mut stack: Vec<Vec<usize>> = minimal.into_iter().map(|a| vec![a]).collect();
    while let Some(chain) = stack.pop() {
        let last = *chain.last().expect("chains are nonempty");
        let next = &covers[&last];
        if next.is_empty() {
            facets.push(chain.iter().map(|q| local[q]).collect());
        } else {
            for &b in next {
                let mut c = chain.clone();
                c.push(b);
                stack.push(c);
            }
        }
    }
    Ok(SimplicialComplex::new(up.len(), facets))
}

/// Parse a rational such as `3`, `-2/5`.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            (!d.is_zero()).then(|| BigRational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::reduced_homology_dims;
    use crate::monomial::parse_ideal;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn hyperplane(coeffs: &[i64], b: i64) -> AffineSubspace {
        AffineSubspace::new(
            coeffs.len(),
            vec![(coeffs.iter().map(|&c| q(c)).collect(), q(b))],
        )
        .unwrap()
        .unwrap()
    }

    fn labels(p: &IntersectionPoset) -> Vec<String> {
        p.nodes().iter().map(PosetNode::label).collect()
    }

    #[test]
    fn poset_of_two_components() {
        let i = parse_ideal("x1*x2, x1*x3", Some(3)).unwrap();
        let p = poset_from_ideal(&i).unwrap();
        assert_eq!(labels(&p), vec!["V(x1)", "V(x2,x3)", "V(x1,x2,x3)"]);
        let heights: Vec<usize> = p.nodes().iter().map(|n| n.height).collect();
        assert_eq!(heights, vec![1, 2, 3]);
        assert_eq!(p.relations(), vec![(2, 0), (2, 1)]);
        assert_eq!(p.maximal(), vec![0, 1]);
    }

    #[test]
    fn poset_of_maximal_ideal_is_a_point() {
        let i = parse_ideal("x1, x2, x3, x4", None).unwrap();
        let p = poset_from_ideal(&i).unwrap();
        assert_eq!(p.len(), 1);
        assert!(p.relations().is_empty());
    }

    #[test]
    fn poset_of_three_axes() {
        let i = parse_ideal("x1*x2, x2*x3, x1*x3", None).unwrap();
        let p = poset_from_ideal(&i).unwrap();
        assert_eq!(p.len(), 4);
        let origin = p.find_sign(&SignVector::from_mask(3, 0b111)).unwrap().id;
        assert_eq!(p.above(origin).len(), 3);
        assert_eq!(p.maximal().len(), 3);
    }

    #[test]
    fn non_squarefree_ideal_uses_radical() {
        let a = poset_from_ideal(&parse_ideal("x1^2*x2, x1*x3^3", None).unwrap()).unwrap();
        let b = poset_from_ideal(&parse_ideal("x1*x2, x1*x3", None).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn two_planes_through_origin() {
        let p =
            poset_from_subspaces(&[hyperplane(&[1, 0, 0], 0), hyperplane(&[1, 1, 1], 0)]).unwrap();
        assert_eq!(p.len(), 3);
        let heights: Vec<usize> = p.nodes().iter().map(|n| n.height).collect();
        assert_eq!(heights, vec![1, 1, 2]);
        assert!(p.less_than(2, 0) && p.less_than(2, 1));
        assert!(!p.less_than(0, 1) && !p.less_than(1, 0));
    }

    #[test]
    fn parallel_planes_do_not_meet() {
        let p = poset_from_subspaces(&[hyperplane(&[1, 1], 0), hyperplane(&[2, 2], 3)]).unwrap();
        assert_eq!(p.len(), 2);
        assert!(p.relations().is_empty());
    }

    #[test]
    fn coordinate_hyperplanes_form_boolean_lattice() {
        let hs = [
            hyperplane(&[1, 0, 0], 0),
            hyperplane(&[0, 1, 0], 0),
            hyperplane(&[0, 0, 1], 0),
        ];
        let p = poset_from_subspaces(&hs).unwrap();
        assert_eq!(p.len(), 7);
        // Boolean lattice minus the top: 3*2 covering-relations between
        // heights 1 and 2, 3 between 2 and 3, 3 between 1 and 3
        assert_eq!(p.relations().len(), 12);
    }

    #[test]
    fn contained_inputs_are_dropped_and_bad_inputs_rejected() {
        let line = AffineSubspace::new(
            3,
            vec![
                (vec![q(1), q(0), q(0)], q(0)),
                (vec![q(0), q(1), q(0)], q(0)),
            ],
        )
        .unwrap()
        .unwrap();
        let p = poset_from_subspaces(&[hyperplane(&[1, 0, 0], 0), line.clone(), line]).unwrap();
        assert_eq!(p.len(), 1);
        assert!(AffineSubspace::new(1, vec![(vec![q(0)], q(1))])
            .unwrap()
            .is_none());
        let whole = AffineSubspace::new(2, vec![]).unwrap().unwrap();
        assert_eq!(
            poset_from_subspaces(&[whole]),
            Err(PosetError::Ambient { index: 0 })
        );
        assert_eq!(poset_from_subspaces(&[]), Err(PosetError::NoComponents));
    }

    #[test]
    fn upset_complexes() {
        let i = parse_ideal("x1*x2, x1*x3", Some(3)).unwrap();
        let p = poset_from_ideal(&i).unwrap();
        let k = strict_upset_complex(&p, 2).unwrap();
        assert_eq!(k.facets(), &[vec![0], vec![1]]);
        assert!(strict_upset_complex(&p, 0).unwrap().is_empty());
        assert!(strict_upset_complex(&p, 9).is_err());
    }

    #[test]
    fn upset_of_origin_in_coordinate_arrangement() {
        let i = parse_ideal("x1*x2*x3", None).unwrap();
        let p = poset_from_ideal(&i).unwrap();
        assert_eq!(p.len(), 7);
        let origin = p.find_sign(&SignVector::from_mask(3, 0b111)).unwrap().id;
        let k = strict_upset_complex(&p, origin).unwrap();
        assert_eq!(k.f_vector(), vec![1, 6, 6]);
        assert_eq!(k.facets().len(), 6);
        assert_eq!(
            reduced_homology_dims(&k, FieldSpec::Rationals).unwrap(),
            BTreeMap::from([(1, 1)])
        );
    }

    #[test]
    fn affine_display_and_rationals() {
        let h = AffineSubspace::new(2, vec![(vec![q(2), q(-4)], q(1))])
            .unwrap()
            .unwrap();
        assert_eq!(h.to_string(), "x1 - 2*x2 = 1/2");
        assert_eq!(
            parse_rational("-2/4"),
            Some(BigRational::new((-1).into(), 2.into()))
        );
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }
}
