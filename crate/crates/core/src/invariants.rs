//! Invariants assembled from the poset route, and the cross-checks against
//! the Čech and Koszul routes.
//!
//! m_{r,p} = dim H~_{h(p)-r-1}(K(>p)). Characteristic cycles and complement
//! Betti numbers are always taken over Q.

use std::collections::BTreeMap;
use std::fmt;

use crate::cech::{graded_lc_dims, induced_multiplication, CechFiber};
use crate::homology::reduced_homology_dims;
use crate::koszul::{verify_dual_identity, DualMismatch};
use crate::linalg::{self, FieldSpec, Matrix};
use crate::monomial::{MonomialIdeal, SignVector};
use crate::poset::{poset_from_ideal, strict_upset_complex, IntersectionPoset};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeInfo {
    pub id: usize,
    pub label: String,
    pub height: usize,
    pub sign: Option<SignVector>,
}

/// Nonzero multiplicities m_{r,p}, keyed by (r, node id).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityTable {
    nvars: usize,
    field: FieldSpec,
    nodes: Vec<NodeInfo>,
    values: BTreeMap<(usize, usize), usize>,
}

impl MultiplicityTable {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn nodes(&self) -> &[NodeInfo] {
        &self.nodes
    }

    pub fn get(&self, r: usize, node: usize) -> usize {
        self.values.get(&(r, node)).copied().unwrap_or(0)
    }

    /// m_{r,α}; zero when α is not a node.
    pub fn get_by_sign(&self, r: usize, alpha: &SignVector) -> usize {
        self.nodes
            .iter()
            .find(|n| n.sign.as_ref() == Some(alpha))
            .map_or(0, |n| self.get(r, n.id))
    }

    /// Nonzero entries as (r, node id, value), sorted by r then node.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.values.iter().map(|(&(r, p), &m)| (r, p, m))
    }

    /// Nonzero entries of the coordinate case as (r, α) → m.
    pub fn by_sign(&self) -> BTreeMap<(usize, SignVector), usize> {
        self.entries()
            .filter_map(|(r, p, m)| self.nodes[p].sign.map(|a| ((r, a), m)))
            .collect()
    }

    pub fn total(&self) -> usize {
        self.values.values().sum()
    }

    /// Largest r with a nonzero entry.
    pub fn max_degree(&self) -> usize {
        self.values.keys().map(|&(r, _)| r).max().unwrap_or(0)
    }
}

pub fn multiplicities(poset: &IntersectionPoset, f: FieldSpec) -> Result<MultiplicityTable> {
    let mut values = BTreeMap::new();
    let mut nodes = Vec::with_capacity(poset.len());
    for node in poset.nodes() {
        let k = strict_upset_complex(poset, node.id)?;
        for (d, dim) in reduced_homology_dims(&k, f)? {
            let r = node.height as i64 - d - 1;
            if r < 0 {
                return Err(Error::CrossRouteMismatch(format!(
                    "order complex above {} has homology in degree {d}, beyond height {}",
                    node.label(),
                    node.height
                )));
            }
            values.insert((r as usize, node.id), dim);
        }
        nodes.push(NodeInfo {
            id: node.id,
            label: node.label(),
            height: node.height,
            sign: node.sign_vector(),
        });
    }
    Ok(MultiplicityTable {
        nvars: poset.nvars(),
        field: f,
        nodes,
        values,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CcTerm {
    pub node: usize,
    pub label: String,
    pub sign: Option<SignVector>,
    pub multiplicity: usize,
}

/// CC(H^r) = Σ_p m_{r,p} T*_{X_p} for every r with a nonzero term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacteristicCycle {
    pub cycles: BTreeMap<usize, Vec<CcTerm>>,
}

impl CharacteristicCycle {
    /// `T*_{V(x2,x3)} + 2 T*_{V(x1,x2,x3)}`
    pub fn formula(&self, r: usize) -> String {
        match self.cycles.get(&r) {
            None => "0".to_string(),
            Some(terms) => terms
                .iter()
                .map(|t| {
                    if t.multiplicity == 1 {
                        format!("T*_{{{}}}", t.label)
                    } else {
                        format!("{} T*_{{{}}}", t.multiplicity, t.label)
                    }
                })
                .collect::<Vec<_>>()
                .join(" + "),
        }
    }
}

impl fmt::Display for CharacteristicCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in self.cycles.keys() {
            writeln!(f, "CC(H^{r}) = {}", self.formula(*r))?;
        }
        Ok(())
    }
}

pub fn characteristic_cycle(poset: &IntersectionPoset) -> Result<CharacteristicCycle> {
    let table = multiplicities(poset, FieldSpec::Rationals)?;
    let mut cycles: BTreeMap<usize, Vec<CcTerm>> = BTreeMap::new();
    for (r, p, m) in table.entries() {
        let info = &table.nodes[p];
        cycles.entry(r).or_default().push(CcTerm {
            node: p,
            label: info.label.clone(),
            sign: info.sign,
            multiplicity: m,
        });
    }
    Ok(CharacteristicCycle { cycles })
}

pub fn characteristic_cycle_of_ideal(ideal: &MonomialIdeal) -> Result<CharacteristicCycle> {
    characteristic_cycle(&poset_from_ideal(ideal)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    Real,
    Complex,
}

/// Reduced Betti numbers b~_i of the complement of the arrangement, for
/// i in 0..n (real) or 0..2n (complex).
pub fn complement_betti(poset: &IntersectionPoset, flavor: Flavor) -> Result<Vec<usize>> {
    let table = multiplicities(poset, FieldSpec::Rationals)?;
    let n = poset.nvars();
    let len = match flavor {
        Flavor::Real => n,
        Flavor::Complex => 2 * n,
    };
    let mut b = vec![0; len];
    for (r, p, m) in table.entries() {
        let i = match flavor {
            Flavor::Real => r - 1,
            Flavor::Complex => r + table.nodes[p].height - 1,
        };
        b[i] += m;
    }
    Ok(b)
}

/// Ω-indexed vertices with the maps ·x_i : vertex(α) → vertex(α + ε_i) for
/// every α with α_i = -1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypercube {
    pub r: usize,
    pub nvars: usize,
    pub vertices: BTreeMap<SignVector, usize>,
    /// keyed by (variable index, source α)
    pub maps: BTreeMap<(usize, SignVector), Matrix>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutativityFailure {
    pub alpha: SignVector,
    pub i: usize,
    pub j: usize,
}

impl Hypercube {
    pub fn map(&self, var: usize, alpha: &SignVector) -> Option<&Matrix> {
        self.maps.get(&(var, *alpha))
    }

    /// Nonzero vertices.
    pub fn support(&self) -> Vec<(SignVector, usize)> {
        self.vertices
            .iter()
            .filter(|(_, &d)| d > 0)
            .map(|(a, &d)| (*a, d))
            .collect()
    }

    /// Maps with a nonzero source and target.
    pub fn nontrivial_maps(&self) -> impl Iterator<Item = (usize, SignVector, &Matrix)> {
        self.maps
            .iter()
            .filter(|(_, m)| m.nrows() > 0 && m.ncols() > 0)
            .map(|(&(i, a), m)| (i, a, m))
    }

    /// Squares where x_j ∘ x_i and x_i ∘ x_j differ.
    pub fn commutativity_failures(&self, f: FieldSpec) -> Result<Vec<CommutativityFailure>> {
        let mut out = Vec::new();
        for alpha in self.vertices.keys() {
            for i in 0..self.nvars {
                for j in i + 1..self.nvars {
                    if !(alpha.is_negative_at(i) && alpha.is_negative_at(j)) {
                        continue;
                    }
                    let (ai, aj) = (alpha.raise(i), alpha.raise(j));
                    let ij = linalg::mat_mul(&self.maps[&(j, ai)], &self.maps[&(i, *alpha)], f)?;
                    let ji = linalg::mat_mul(&self.maps[&(i, aj)], &self.maps[&(j, *alpha)], f)?;
                    if ij != ji {
                        out.push(CommutativityFailure {
                            alpha: *alpha,
                            i,
                            j,
                        });
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Hypercubes of H^r for each r in `rs`, sharing one Čech fiber per vertex.
fn hypercubes_unchecked(
    ideal: &MonomialIdeal,
    rs: &[usize],
    f: FieldSpec,
) -> Result<Vec<Hypercube>> {
    let n = ideal.nvars();
    let mut fibers = BTreeMap::new();
    for alpha in SignVector::all(n) {
        let fiber = CechFiber::new(ideal, &alpha.degree())?;
        let dims = fiber.cohomology_dims(f)?;
        fibers.insert(alpha, (fiber, dims));
    }
    let dim = |a: &SignVector, r: usize| fibers[a].1.get(r).copied().unwrap_or(0);
    let mut cubes = Vec::with_capacity(rs.len());
    for &r in rs {
        let vertices: BTreeMap<SignVector, usize> =
            fibers.keys().map(|a| (*a, dim(a, r))).collect();
        let mut maps = BTreeMap::new();
        for (alpha, (src, _)) in &fibers {
            for i in alpha.support() {
                let target = alpha.raise(i);
                let m = induced_multiplication(
                    src,
                    &fibers[&target].0,
                    r,
                    dim(alpha, r),
                    dim(&target, r),
                    f,
                )?;
                maps.insert((i, *alpha), m);
            }
        }
        cubes.push(Hypercube {
            r,
            nvars: n,
            vertices,
            maps,
        });
    }
    Ok(cubes)
}

/// Vertex dimensions disagreeing with the multiplicity table, as
/// (α, hypercube dim, multiplicity).
fn vertex_mismatches(
    cube: &Hypercube,
    table: &MultiplicityTable,
) -> Vec<(SignVector, usize, usize)> {
    cube.vertices
        .iter()
        .filter_map(|(a, &d)| {
            let m = table.get_by_sign(cube.r, a);
            (d != m).then_some((*a, d, m))
        })
        .collect()
}

/// Hypercube of H^r_I(R) from Čech fibers. Aborts if a vertex dimension
/// disagrees with the poset route.
pub fn hypercube(ideal: &MonomialIdeal, r: usize, f: FieldSpec) -> Result<Hypercube> {
    let cube = hypercubes_unchecked(ideal, &[r], f)?.remove(0);
    let table = multiplicities(&poset_from_ideal(ideal)?, f)?;
    if let Some((a, d, m)) = vertex_mismatches(&cube, &table).first() {
        return Err(Error::CrossRouteMismatch(format!(
            "H^{r} at {a}: Čech dimension {d}, poset multiplicity {m}"
        )));
    }
    Ok(cube)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionLevel {
    pub level: usize,
    /// dim F_j / F_{j-1} = Σ_{|α|=j} m_{r,α}
    pub quotient_dim: usize,
    pub maps_checked: usize,
    /// (variable, source α, rank) of every nonzero ·x_i out of this level
    pub nonzero_maps: Vec<(usize, SignVector, usize)>,
}

impl ExtensionLevel {
    pub fn splits(&self) -> bool {
        self.nonzero_maps.is_empty()
    }
}

/// For each level j = 1..n: the quotient dimension, and whether the
/// extension splits, i.e. every ·x_i out of weight-j degrees vanishes.
pub fn extension_analysis(
    ideal: &MonomialIdeal,
    r: usize,
    f: FieldSpec,
) -> Result<Vec<ExtensionLevel>> {
    let cube = hypercube(ideal, r, f)?;
    extension_levels(&cube, f)
}

pub fn extension_levels(cube: &Hypercube, f: FieldSpec) -> Result<Vec<ExtensionLevel>> {
    let mut levels: Vec<ExtensionLevel> = (1..=cube.nvars)
        .map(|j| ExtensionLevel {
            level: j,
            quotient_dim: cube
                .vertices
                .iter()
                .filter(|(a, _)| a.weight() == j)
                .map(|(_, &d)| d)
                .sum(),
            maps_checked: 0,
            nonzero_maps: Vec::new(),
        })
        .collect();
    for (&(i, alpha), m) in &cube.maps {
        let level = &mut levels[alpha.weight() - 1];
        level.maps_checked += 1;
        if !m.is_zero() {
            level.nonzero_maps.push((i, alpha, linalg::rank(m, f)?));
        }
    }
    Ok(levels)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMismatch {
    pub r: usize,
    pub alpha: SignVector,
    pub poset: usize,
    pub cech: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossValidationReport {
    /// the radical of the input
    pub ideal: MonomialIdeal,
    pub field: FieldSpec,
    pub multiplicities: MultiplicityTable,
    pub graded_checked: usize,
    pub graded_mismatches: Vec<GradedMismatch>,
    pub dual_checked: usize,
    pub dual_mismatches: Vec<DualMismatch>,
    pub dual_stray: Vec<(usize, Vec<u32>, usize)>,
    pub hypercube_vertex_mismatches: Vec<(usize, SignVector, usize, usize)>,
    pub commutativity_failures: Vec<(usize, CommutativityFailure)>,
}

impl CrossValidationReport {
    pub fn passed(&self) -> bool {
        self.graded_mismatches.is_empty()
            && self.dual_mismatches.is_empty()
            && self.dual_stray.is_empty()
            && self.hypercube_vertex_mismatches.is_empty()
            && self.commutativity_failures.is_empty()
    }
}

impl fmt::Display for CrossValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        writeln!(f, "{verdict} {}", self.ideal)?;
        for m in &self.graded_mismatches {
            writeln!(
                f,
                "  graded r={} α={}: poset {} vs Čech {}",
                m.r, m.alpha, m.poset, m.cech
            )?;
        }
        for m in &self.dual_mismatches {
            writeln!(
                f,
                "  dual i={} α={}: Betti {} vs multiplicity {}",
                m.i, m.alpha, m.betti, m.multiplicity
            )?;
        }
        for (i, a, b) in &self.dual_stray {
            writeln!(f, "  stray Betti entry i={i} degree {a:?}: {b}")?;
        }
        for (r, a, d, m) in &self.hypercube_vertex_mismatches {
            writeln!(f, "  hypercube r={r} α={a}: vertex {d} vs multiplicity {m}")?;
        }
        for (r, c) in &self.commutativity_failures {
            writeln!(
                f,
                "  hypercube r={r} α={}: x{} and x{} do not commute",
                c.alpha,
                c.i + 1,
                c.j + 1
            )?;
        }
        Ok(())
    }
}

/// Run the poset, Čech and Koszul routes against each other on the radical
/// of `ideal`.
pub fn cross_validate(ideal: &MonomialIdeal, f: FieldSpec) -> Result<CrossValidationReport> {
    if !ideal.is_squarefree() {
        log::warn!("ideal {ideal} is not squarefree; validating its radical");
    }
    let ideal = ideal.radical();
    let n = ideal.nvars();
    let table = multiplicities(&poset_from_ideal(&ideal)?, f)?;

    let mut graded_checked = 0;
    let mut graded_mismatches = Vec::new();
    for alpha in SignVector::all(n) {
        let dims = graded_lc_dims(&ideal, &alpha.degree(), f)?;
        for r in 0..=n {
            let cech = dims.get(&r).copied().unwrap_or(0);
            let poset = table.get_by_sign(r, &alpha);
            graded_checked += 1;
            if cech != poset {
                graded_mismatches.push(GradedMismatch {
                    r,
                    alpha,
                    poset,
                    cech,
                });
            }
        }
    }

    let dual = verify_dual_identity(&ideal, f)?;

    let mut hypercube_vertex_mismatches = Vec::new();
    let mut commutativity_failures = Vec::new();
    let rs: Vec<usize> = (1..=n).collect();
    for cube in hypercubes_unchecked(&ideal, &rs, f)? {
        let r = cube.r;
        hypercube_vertex_mismatches.extend(
            vertex_mismatches(&cube, &table)
                .into_iter()
                .map(|(a, d, m)| (r, a, d, m)),
        );
        commutativity_failures.extend(cube.commutativity_failures(f)?.into_iter().map(|c| (r, c)));
    }

    Ok(CrossValidationReport {
        ideal,
        field: f,
        multiplicities: table,
        graded_checked,
        graded_mismatches,
        dual_checked: dual.entries_checked,
        dual_mismatches: dual.mismatches,
        dual_stray: dual.stray,
        hypercube_vertex_mismatches,
        commutativity_failures,
    })
}
