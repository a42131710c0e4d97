//! Independent recomputations of the library's outputs.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use subcyc_core::cech::{graded_lc_dims, straightness_check};
use subcyc_core::corpus::{all_squarefree_ideals, random_squarefree_ideals};
use subcyc_core::homology::{reduced_homology_dims, SimplicialComplex};
use subcyc_core::invariants::{complement_betti, cross_validate, multiplicities, Flavor};
use subcyc_core::koszul::graded_betti;
use subcyc_core::linalg::{rank, FieldSpec, Matrix};
use subcyc_core::monomial::{parse_ideal, MonomialIdeal, SignVector};
use subcyc_core::poset::{poset_from_ideal, poset_from_subspaces, AffineSubspace};

const Q: FieldSpec = FieldSpec::Rationals;

/// Alexander dual straight from the definition: x_S is a generator
/// candidate iff the complementary product x_{[n]∖S} is not in I.
fn dual_by_definition(ideal: &MonomialIdeal) -> MonomialIdeal {
    let n = ideal.nvars();
    let full = (1u64 << n) - 1;
    let masks: Vec<u64> = (0..=full)
        .filter(|&s| !contains_product(ideal, full & !s))
        .collect();
    MonomialIdeal::from_masks(n, &masks).unwrap()
}

/// whether Π_{i ∈ mask} x_i lies in the squarefree ideal
fn contains_product(ideal: &MonomialIdeal, mask: u64) -> bool {
    ideal.support_masks().iter().any(|&g| g & mask == g)
}

/// Reduced Betti numbers of R^n minus a coordinate arrangement, from the
/// stratification of R^n by the signs of the coordinates. The complement
/// is an upward-closed union of open sign cells of the sphere, so it is
/// homotopy equivalent to the order complex of those cells under the face
/// relation.
fn real_complement_by_strata(ideal: &MonomialIdeal) -> Vec<usize> {
    let n = ideal.nvars();
    let components: Vec<u64> = ideal
        .radical()
        .minimal_primes()
        .unwrap()
        .iter()
        .map(SignVector::support_mask)
        .collect();
    // cell = (zero mask, positive mask)
    let mut cells = Vec::new();
    for zero in 0..(1u64 << n) {
        if components.iter().any(|&c| c & zero == c) {
            continue;
        }
        let free = !zero & ((1u64 << n) - 1);
        let mut pos = free;
        loop {
            cells.push((zero, pos));
            if pos == 0 {
                break;
            }
            pos = (pos - 1) & free;
        }
    }
    // a < b iff a is a proper face of b: b's zero set is smaller and signs agree
    let face = |a: (u64, u64), b: (u64, u64)| a != b && b.0 & a.0 == b.0 && (b.1 & !a.0) == a.1;
    let mut facets = Vec::new();
    let mut stack: Vec<Vec<usize>> = (0..cells.len())
        .filter(|&i| !(0..cells.len()).any(|j| face(cells[j], cells[i])))
        .map(|i| vec![i])
        .collect();
    while let Some(chain) = stack.pop() {
        let last = cells[*chain.last().unwrap()];
        let next: Vec<usize> = (0..cells.len())
            .filter(|&j| {
                face(last, cells[j])
                    && !(0..cells.len()).any(|m| face(last, cells[m]) && face(cells[m], cells[j]))
            })
            .collect();
        if next.is_empty() {
            facets.push(chain);
        } else {
            for j in next {
                let mut c = chain.clone();
                c.push(j);
                stack.push(c);
            }
        }
    }
    let k = SimplicialComplex::new(cells.len(), facets);
    let dims = reduced_homology_dims(&k, Q).unwrap();
    (0..n)
        .map(|i| dims.get(&(i as i64)).copied().unwrap_or(0))
        .collect()
}

fn dense_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|&x| BigRational::from_integer(BigInt::from(x)))
                .collect()
        })
        .collect();
    let ncols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = BigRational::one() / m[r][c].clone();
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c].clone() * inv.clone();
                for j in 0..ncols {
                    let sub = factor.clone() * m[r][j].clone();
                    m[i][j] -= sub;
                }
            }
        }
        r += 1;
    }
    r
}

#[test]
fn alexander_dual_matches_definition() {
    for n in 1..=4 {
        for i in all_squarefree_ideals(n) {
            assert_eq!(i.alexander_dual().unwrap(), dual_by_definition(&i), "{i}");
        }
    }
}

#[test]
fn dual_examples() {
    let i = parse_ideal("x1*x2, x1*x3", Some(3)).unwrap();
    assert_eq!(i.alexander_dual().unwrap().to_string(), "x1, x2*x3");
    let m = parse_ideal("x1, x2, x3, x4", Some(4)).unwrap();
    assert_eq!(m.alexander_dual().unwrap().to_string(), "x1*x2*x3*x4");
}

#[test]
fn real_complement_matches_stratification() {
    for n in 1..=3 {
        for i in all_squarefree_ideals(n) {
            let p = poset_from_ideal(&i).unwrap();
            assert_eq!(
                complement_betti(&p, Flavor::Real).unwrap(),
                real_complement_by_strata(&i),
                "{i}"
            );
        }
    }
    let axes = parse_ideal("x1*x2, x2*x3, x1*x3", Some(3)).unwrap();
    assert_eq!(real_complement_by_strata(&axes), vec![0, 5, 0]);
}

#[test]
fn rank_matches_hand_elimination() {
    let cases: Vec<Vec<Vec<i64>>> = vec![
        vec![vec![1, 2], vec![2, 4]],
        vec![vec![0, 0, 0], vec![0, 0, 0]],
        vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]],
        vec![
            vec![1, 1, 0, 0],
            vec![0, 1, 1, 0],
            vec![0, 0, 1, 1],
            vec![1, 0, 0, 1],
        ],
        vec![vec![3, 6, 9], vec![1, 2, 3], vec![7, 1, 4], vec![8, 3, 7]],
    ];
    for rows in cases {
        let m = Matrix::from_rows(&rows).unwrap();
        assert_eq!(rank(&m, Q).unwrap(), dense_rank(&rows), "{rows:?}");
    }
}

#[test]
fn graded_dims_match_multiplicities_on_n4_corpus() {
    for i in all_squarefree_ideals(4) {
        let t = multiplicities(&poset_from_ideal(&i).unwrap(), Q).unwrap();
        for a in SignVector::all(4) {
            let dims = graded_lc_dims(&i, &a.degree(), Q).unwrap();
            for r in 0..=4 {
                assert_eq!(
                    dims.get(&r).copied().unwrap_or(0),
                    t.get_by_sign(r, &a),
                    "{i} r={r} α={a}"
                );
            }
        }
    }
}

#[test]
fn cross_validation_on_random_n5() {
    for i in random_squarefree_ideals(5, 20, 11) {
        let rep = cross_validate(&i, Q).unwrap();
        assert!(rep.passed(), "{rep}");
    }
}

fn rp2_ideal() -> MonomialIdeal {
    // Stanley-Reisner ideal of the 6-vertex RP^2: the ten missing triangles
    let faces: BTreeSet<[usize; 3]> = [
        [0, 1, 2],
        [0, 2, 3],
        [0, 3, 4],
        [0, 4, 5],
        [0, 1, 5],
        [1, 2, 4],
        [2, 3, 5],
        [1, 3, 4],
        [1, 3, 5],
        [2, 4, 5],
    ]
    .into_iter()
    .collect();
    let mut masks = Vec::new();
    for a in 0..6 {
        for b in a + 1..6 {
            for c in b + 1..6 {
                if !faces.contains(&[a, b, c]) {
                    masks.push(1u64 << a | 1 << b | 1 << c);
                }
            }
        }
    }
    MonomialIdeal::from_masks(6, &masks).unwrap()
}

#[test]
fn torsion_is_seen_by_every_route() {
    let i = rp2_ideal();
    assert_eq!(i.generators().len(), 10);
    let f2 = FieldSpec::PrimeField(2);
    // Hochster: β_{i,(1,..,1)}(I_Δ) = dim H~_{6-i-2}(Δ)
    let over_q = graded_betti(&i, Q).unwrap();
    let over_2 = graded_betti(&i, f2).unwrap();
    let top = [1u32; 6];
    assert_eq!(over_q.get(2, &top), 0);
    assert_eq!(over_q.get(3, &top), 0);
    assert_eq!(over_2.get(2, &top), 1);
    assert_eq!(over_2.get(3, &top), 1);
    for (k, a, b) in over_q.entries() {
        assert!(b <= over_2.get(k, a));
    }

    for f in [Q, f2] {
        let rep = cross_validate(&i, f).unwrap();
        assert!(rep.passed(), "{rep}");
    }
    let mq = multiplicities(&poset_from_ideal(&i).unwrap(), Q).unwrap();
    let m2 = multiplicities(&poset_from_ideal(&i).unwrap(), f2).unwrap();
    assert_ne!(mq.by_sign(), m2.by_sign());
}

#[test]
fn straightness_on_n3_corpus() {
    for i in all_squarefree_ideals(3) {
        for r in 1..=3 {
            let rep = straightness_check(&i, r, 2, Q).unwrap();
            assert!(rep.passed(), "{i} r={r}: {:?}", rep.violations);
        }
    }
}

#[test]
fn subspace_route_matches_ideal_route() {
    for n in 1..=4 {
        for i in all_squarefree_ideals(n) {
            let by_ideal = poset_from_ideal(&i).unwrap();
            let comps: Vec<AffineSubspace> = i
                .minimal_primes()
                .unwrap()
                .iter()
                .map(AffineSubspace::coordinate)
                .collect();
            let by_space = poset_from_subspaces(&comps).unwrap();
            assert_eq!(by_ideal.len(), by_space.len(), "{i}");

            // match nodes by geometry
            let ids: BTreeMap<usize, usize> = by_ideal
                .nodes()
                .iter()
                .map(|p| {
                    let target = AffineSubspace::coordinate(&p.sign_vector().unwrap());
                    let q = by_space
                        .nodes()
                        .iter()
                        .position(|q| {
                            matches!(&q.geometry, subcyc_core::poset::Geometry::Affine(s) if *s == target)
                        })
                        .expect("node present in both routes");
                    (p.id, q)
                })
                .collect();
            for (p, q) in by_ideal.relations() {
                assert!(by_space.less_than(ids[&p], ids[&q]));
            }
            assert_eq!(by_ideal.relations().len(), by_space.relations().len());

            let ta = multiplicities(&by_ideal, Q).unwrap();
            let tb = multiplicities(&by_space, Q).unwrap();
            let mapped: BTreeSet<(usize, usize, usize)> =
                ta.entries().map(|(r, p, m)| (r, ids[&p], m)).collect();
            let direct: BTreeSet<(usize, usize, usize)> = tb.entries().collect();
            assert_eq!(mapped, direct, "{i}");
            for flavor in [Flavor::Real, Flavor::Complex] {
                assert_eq!(
                    complement_betti(&by_ideal, flavor).unwrap(),
                    complement_betti(&by_space, flavor).unwrap()
                );
            }
        }
    }
}

#[test]
fn affine_arrangements() {
    let q = |n: i64| BigRational::from_integer(BigInt::from(n));
    let plane = |a: [i64; 2], b: i64| {
        AffineSubspace::new(2, vec![(vec![q(a[0]), q(a[1])], q(b))])
            .unwrap()
            .unwrap()
    };
    // three generic lines in the real plane: 7 regions
    let lines = [plane([1, 0], 0), plane([0, 1], 0), plane([1, 1], 1)];
    let p = poset_from_subspaces(&lines).unwrap();
    assert_eq!(p.len(), 6);
    assert_eq!(complement_betti(&p, Flavor::Real).unwrap(), vec![6, 0]);
    // complex: Poincaré polynomial 1 + 3t + 3t^2
    assert_eq!(
        complement_betti(&p, Flavor::Complex).unwrap(),
        vec![0, 3, 3, 0]
    );

    // two parallel lines: 3 regions, no intersection
    let par = [plane([1, 0], 0), plane([1, 0], 1)];
    let p = poset_from_subspaces(&par).unwrap();
    assert_eq!(p.len(), 2);
    assert!(p.relations().is_empty());
    assert_eq!(complement_betti(&p, Flavor::Real).unwrap(), vec![2, 0]);
}
