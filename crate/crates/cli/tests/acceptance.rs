//! End-to-end acceptance run. Every criterion prints one PASS/FAIL line with
//! its detail; the test fails if any criterion fails.

use std::collections::BTreeMap;
use std::process::Command;
use std::time::{Duration, Instant};

use subcyc_core::cech::{graded_lc_dims, straightness_check, CechFiber};
use subcyc_core::corpus::{all_squarefree_ideals, random_squarefree_ideals};
use subcyc_core::homology::reduced_homology_dims;
use subcyc_core::invariants::{
    characteristic_cycle_of_ideal, complement_betti, extension_analysis, hypercube, multiplicities,
    Flavor,
};
use subcyc_core::koszul::{verify_dual_identity, KoszulFiber};
use subcyc_core::linalg::{kernel_basis, rank, FieldSpec};
use subcyc_core::monomial::{parse_ideal, MonomialIdeal, SignVector};
use subcyc_core::poset::{
    parse_rational, poset_from_ideal, poset_from_subspaces, strict_upset_complex,
};
use subcyc_core::AffineSubspace;

/// Writes straight to stderr so the lines survive libtest output capture.
macro_rules! report {
    ($($arg:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stderr().lock(), $($arg)*);
    }};
}

const Q: FieldSpec = FieldSpec::Rationals;

type Outcome = Result<String, Vec<String>>;

struct Criterion {
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn ideal(text: &str, n: usize) -> MonomialIdeal {
    parse_ideal(text, Some(n)).unwrap()
}

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in all_permutations(n - 1) {
        for k in 0..=p.len() {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push(q);
        }
    }
    out
}

fn finish(checked: usize, what: &str, diffs: Vec<String>) -> Outcome {
    if diffs.is_empty() {
        Ok(format!("{checked} {what}"))
    } else {
        Err(diffs)
    }
}

fn poset_vs_cech() -> Outcome {
    let corpus = all_squarefree_ideals(3);
    let mut diffs = Vec::new();
    let mut checked = 0;
    for i in &corpus {
        let table = multiplicities(&poset_from_ideal(i).unwrap(), Q).unwrap();
        for alpha in SignVector::all(3) {
            let cech = graded_lc_dims(i, &alpha.degree(), Q).unwrap();
            for r in 0..=3 {
                checked += 1;
                let (m, d) = (
                    table.get_by_sign(r, &alpha),
                    cech.get(&r).copied().unwrap_or(0),
                );
                if m != d {
                    diffs.push(format!(
                        "I = ({i}), r = {r}, alpha = ({alpha}): poset {m}, cech {d}"
                    ));
                }
            }
        }
    }
    finish(
        checked,
        &format!("entries over {} ideals", corpus.len()),
        diffs,
    )
}

fn dual_identity() -> Outcome {
    let mut diffs = Vec::new();
    let mut checked = 0;
    let corpus: Vec<_> = all_squarefree_ideals(3)
        .into_iter()
        .chain(random_squarefree_ideals(6, 50, 20240517))
        .collect();
    for i in &corpus {
        let report = verify_dual_identity(i, Q).unwrap();
        checked += report.entries_checked;
        for m in &report.mismatches {
            diffs.push(format!(
                "I = ({i}), i = {}, alpha = ({}): betti {}, m {}",
                m.i, m.alpha, m.betti, m.multiplicity
            ));
        }
        for (k, deg, b) in &report.stray {
            diffs.push(format!("I = ({i}): stray betti_{k} at {deg:?} = {b}"));
        }
    }
    finish(
        checked,
        &format!(
            "entries over {} ideals (18 exhaustive, 50 random on 6 variables)",
            corpus.len()
        ),
        diffs,
    )
}

fn named_example() -> Outcome {
    let i = ideal("x1*x2, x1*x3", 3);
    let mut diffs = Vec::new();
    let cc = characteristic_cycle_of_ideal(&i).unwrap();
    for (r, want) in [
        (0, "0"),
        (1, "T*_{V(x1)}"),
        (2, "T*_{V(x2,x3)} + T*_{V(x1,x2,x3)}"),
        (3, "0"),
    ] {
        if cc.formula(r) != want {
            diffs.push(format!("CC(H^{r}) = {}, expected {want}", cc.formula(r)));
        }
    }

    let cube = hypercube(&i, 2, Q).unwrap();
    let full = SignVector::from_signs(&[-1, -1, -1]).unwrap();
    let face = SignVector::from_signs(&[0, -1, -1]).unwrap();
    if cube.support() != vec![(face, 1), (full, 1)] {
        diffs.push(format!("H^2 hypercube support {:?}", cube.support()));
    }
    let maps: Vec<_> = cube
        .nontrivial_maps()
        .map(|(v, a, m)| (v, a, rank(m, Q).unwrap()))
        .collect();
    if maps != vec![(0, full, 1)] {
        diffs.push(format!(
            "H^2 hypercube maps {maps:?}, expected x1 at (-1,-1,-1) of rank 1"
        ));
    }
    for (alpha, d) in cube.support() {
        let cech = graded_lc_dims(&i, &alpha.degree(), Q).unwrap();
        if cech.get(&2) != Some(&d) {
            diffs.push(format!(
                "cech dimension at ({alpha}) is {cech:?}, hypercube {d}"
            ));
        }
    }

    let levels = extension_analysis(&i, 2, Q).unwrap();
    match levels.iter().find(|l| l.level == 3) {
        Some(l) if !l.splits() => {}
        other => diffs.push(format!("level 3 of H^2: {other:?}, expected non-split")),
    }
    if levels.iter().any(|l| l.level != 3 && !l.splits()) {
        diffs.push(format!("unexpected non-split levels: {levels:?}"));
    }
    if !verify_dual_identity(&i, Q).unwrap().passed() {
        diffs.push("koszul route disagrees".into());
    }
    finish(
        1,
        "ideal: CC, hypercube and extensions confirmed by the Čech and Koszul routes",
        diffs,
    )
}

fn hyperplane(coeffs: &[i64], b: i64) -> AffineSubspace {
    let q = |v: i64| parse_rational(&v.to_string()).unwrap();
    AffineSubspace::new(
        coeffs.len(),
        vec![(coeffs.iter().map(|&c| q(c)).collect(), q(b))],
    )
    .unwrap()
    .unwrap()
}

fn complement_topology() -> Outcome {
    let mut diffs = Vec::new();
    let mut check = |what: String, got: Vec<usize>, want: Vec<usize>| {
        if got != want {
            diffs.push(format!("{what}: got {got:?}, expected {want:?}"));
        }
    };
    let mut checked = 0;
    for n in 1..=4 {
        let mut real = vec![0; n];
        real[0] = 1;
        let mut complex = vec![0; 2 * n];
        complex[1] = 1;
        let coordinate = poset_from_ideal(&ideal("x1", n)).unwrap();
        let mut coeffs = vec![1; n];
        coeffs[0] = 2;
        let affine = poset_from_subspaces(&[hyperplane(&coeffs, 3)]).unwrap();
        for (label, p) in [("x1 = 0", &coordinate), ("affine hyperplane", &affine)] {
            check(
                format!("{label} in dimension {n}, real"),
                complement_betti(p, Flavor::Real).unwrap(),
                real.clone(),
            );
            check(
                format!("{label} in dimension {n}, complex"),
                complement_betti(p, Flavor::Complex).unwrap(),
                complex.clone(),
            );
            checked += 2;
        }
    }
    let axes = poset_from_ideal(&ideal("x1*x2, x1*x3, x2*x3", 3)).unwrap();
    check(
        "three coordinate axes, real".into(),
        complement_betti(&axes, Flavor::Real).unwrap(),
        vec![0, 5, 0],
    );
    finish(checked + 1, "complements", diffs)
}

fn maximal_ideal() -> Outcome {
    let mut diffs = Vec::new();
    for n in 1..=6 {
        let gens: Vec<String> = (1..=n).map(|k| format!("x{k}")).collect();
        let i = ideal(&gens.join(", "), n);
        let poset = poset_from_ideal(&i).unwrap();
        let table = multiplicities(&poset, Q).unwrap();
        let origin = SignVector::from_signs(&vec![-1; n]).unwrap();
        let entries: Vec<_> = table
            .entries()
            .map(|(r, p, m)| (r, table.nodes()[p].sign, m))
            .collect();
        if entries != vec![(n, Some(origin), 1)] {
            diffs.push(format!("n = {n}: multiplicities {entries:?}"));
        }
        let mut sphere = vec![0; 2 * n];
        sphere[2 * n - 1] = 1;
        let complex = complement_betti(&poset, Flavor::Complex).unwrap();
        if complex != sphere {
            diffs.push(format!(
                "n = {n}: complex complement {complex:?}, expected {sphere:?}"
            ));
        }
        let cech = graded_lc_dims(&i, &origin.degree(), Q).unwrap();
        if cech != BTreeMap::from([(n, 1)]) {
            diffs.push(format!("n = {n}: cech dims at the origin {cech:?}"));
        }
    }
    finish(6, "maximal ideals (n = 1..6)", diffs)
}

fn euler_identities(corpus: &[MonomialIdeal], diffs: &mut Vec<String>) -> usize {
    let mut checked = 0;
    for i in corpus {
        let poset = poset_from_ideal(i).unwrap();
        for p in 0..poset.len() {
            let k = strict_upset_complex(&poset, p).unwrap();
            let chi: i64 = k
                .f_vector()
                .iter()
                .enumerate()
                .map(|(d, &c)| if d % 2 == 0 { -(c as i64) } else { c as i64 })
                .sum();
            let h: i64 = reduced_homology_dims(&k, Q)
                .unwrap()
                .iter()
                .map(|(&d, &b)| {
                    if d.rem_euclid(2) == 0 {
                        b as i64
                    } else {
                        -(b as i64)
                    }
                })
                .sum();
            // reduced Euler characteristic: -f_{-1} + f_0 - f_1 + ...
            if chi != h {
                diffs.push(format!("I = ({i}), K(>{p}): chain {chi}, homology {h}"));
            }
            checked += 1;
        }
        for a in SignVector::all(i.nvars()) {
            for shift in [-1i64, 0, 1] {
                let degree: Vec<i64> = a.degree().iter().map(|&d| d + shift * (d + 1)).collect();
                let fiber = CechFiber::new(i, &degree).unwrap();
                let h: i64 = fiber
                    .cohomology_dims(Q)
                    .unwrap()
                    .iter()
                    .enumerate()
                    .map(|(r, &d)| if r % 2 == 0 { d as i64 } else { -(d as i64) })
                    .sum();
                if fiber.euler_characteristic() != h {
                    diffs.push(format!(
                        "I = ({i}), cech fiber {degree:?}: {} vs {h}",
                        fiber.euler_characteristic()
                    ));
                }
                checked += 1;
            }
            let zero_one: Vec<u32> = a.signs().iter().map(|&s| (-s) as u32).collect();
            let fiber = KoszulFiber::new(i, &zero_one);
            let h: i64 = (0..=i.nvars())
                .map(|k| {
                    let d = fiber.homology_dim(k, Q).unwrap() as i64;
                    if k % 2 == 0 {
                        d
                    } else {
                        -d
                    }
                })
                .sum();
            if fiber.euler_characteristic() != h {
                diffs.push(format!(
                    "I = ({i}), koszul fiber {zero_one:?}: {} vs {h}",
                    fiber.euler_characteristic()
                ));
            }
            checked += 1;
        }
    }
    checked
}

fn rank_nullity(corpus: &[MonomialIdeal], diffs: &mut Vec<String>) -> usize {
    let mut checked = 0;
    for i in corpus {
        for a in SignVector::all(i.nvars()) {
            let fiber = CechFiber::new(i, &a.degree()).unwrap();
            for k in 0..=i.generators().len() {
                let d = fiber.differential(k);
                for f in [Q, FieldSpec::PrimeField(2), FieldSpec::PrimeField(3)] {
                    let (rk, null) = (rank(&d, f).unwrap(), kernel_basis(&d, f).unwrap().len());
                    if rk + null != d.ncols() {
                        diffs.push(format!(
                            "I = ({i}), ({a}), d^{k} over {f}: {rk} + {null} != {}",
                            d.ncols()
                        ));
                    }
                    checked += 1;
                }
            }
        }
    }
    checked
}

fn property_suites() -> Outcome {
    let mut diffs = Vec::new();
    let n3 = all_squarefree_ideals(3);
    let mixed: Vec<_> = all_squarefree_ideals(3)
        .into_iter()
        .chain(random_squarefree_ideals(4, 20, 7))
        .collect();
    let mut summary = Vec::new();

    summary.push(format!("euler {}", euler_identities(&mixed, &mut diffs)));
    summary.push(format!("rank-nullity {}", rank_nullity(&mixed, &mut diffs)));

    let mut involution = 0;
    for n in 1..=4 {
        for i in all_squarefree_ideals(n) {
            let back = i.alexander_dual().unwrap().alexander_dual().unwrap();
            if back != i {
                diffs.push(format!("dual of dual of ({i}) is ({back})"));
            }
            involution += 1;
        }
    }
    summary.push(format!("involution {involution}"));

    let mut straight = 0;
    for i in &n3 {
        for r in 0..=3 {
            let report = straightness_check(i, r, 2, Q).unwrap();
            for v in &report.violations {
                diffs.push(format!("I = ({i}), r = {r}: {v:?}"));
            }
            straight += report.degrees_checked;
        }
    }
    summary.push(format!("straightness {straight}"));

    let mut squares = 0;
    for i in &mixed {
        for r in 0..=i.nvars() {
            let cube = hypercube(i, r, Q).unwrap();
            for c in cube.commutativity_failures(Q).unwrap() {
                diffs.push(format!(
                    "I = ({i}), H^{r}: x{} x{} square at ({}) does not commute",
                    c.i + 1,
                    c.j + 1,
                    c.alpha
                ));
            }
            squares += 1;
        }
    }
    summary.push(format!("hypercubes {squares}"));

    let mut equivariance = 0;
    for i in &mixed {
        let n = i.nvars();
        let base = multiplicities(&poset_from_ideal(i).unwrap(), Q)
            .unwrap()
            .by_sign();
        let base_real = complement_betti(&poset_from_ideal(i).unwrap(), Flavor::Real).unwrap();
        let base_complex =
            complement_betti(&poset_from_ideal(i).unwrap(), Flavor::Complex).unwrap();
        let base_dual = i.alexander_dual().unwrap();
        let base_cube = hypercube(i, n - 1, Q).unwrap();
        for perm in all_permutations(n) {
            let j = i.permuted(&perm);
            let poset = poset_from_ideal(&j).unwrap();
            let moved: BTreeMap<_, _> = base
                .iter()
                .map(|(&(r, a), &m)| ((r, a.permuted(&perm)), m))
                .collect();
            let got = multiplicities(&poset, Q).unwrap().by_sign();
            if got != moved {
                diffs.push(format!(
                    "I = ({i}), perm {perm:?}: multiplicities {got:?} vs {moved:?}"
                ));
            }
            if complement_betti(&poset, Flavor::Real).unwrap() != base_real
                || complement_betti(&poset, Flavor::Complex).unwrap() != base_complex
            {
                diffs.push(format!("I = ({i}), perm {perm:?}: complement changed"));
            }
            if j.alexander_dual().unwrap() != base_dual.permuted(&perm) {
                diffs.push(format!(
                    "I = ({i}), perm {perm:?}: dual does not commute with the permutation"
                ));
            }
            let cube = hypercube(&j, n - 1, Q).unwrap();
            let moved: BTreeMap<_, _> = base_cube
                .vertices
                .iter()
                .map(|(a, &d)| (a.permuted(&perm), d))
                .collect();
            if cube.vertices != moved {
                diffs.push(format!(
                    "I = ({i}), perm {perm:?}: hypercube vertices changed"
                ));
            }
            let ranks = |c: &subcyc_core::invariants::Hypercube,
                         relabel: bool|
             -> BTreeMap<(usize, SignVector), usize> {
                c.nontrivial_maps()
                    .map(|(v, a, m)| {
                        let key = if relabel {
                            (perm[v], a.permuted(&perm))
                        } else {
                            (v, a)
                        };
                        (key, rank(m, Q).unwrap())
                    })
                    .collect()
            };
            if ranks(&cube, false) != ranks(&base_cube, true) {
                diffs.push(format!(
                    "I = ({i}), perm {perm:?}: hypercube map ranks changed"
                ));
            }
            equivariance += 1;
        }
    }
    summary.push(format!("permutations {equivariance}"));

    if diffs.is_empty() {
        Ok(summary.join(", "))
    } else {
        Err(diffs)
    }
}

fn determinism() -> Outcome {
    let runs: [&[&str]; 3] = [
        &["selftest", "--format", "json"],
        &["check", "--all-squarefree", "-n", "3", "--format", "json"],
        &[
            "check", "--random", "12", "-n", "5", "--seed", "42", "--format", "json",
        ],
    ];
    let mut diffs = Vec::new();
    for args in runs {
        let out = || {
            let o = Command::new(env!("CARGO_BIN_EXE_subcyc"))
                .args(args)
                .output()
                .unwrap();
            (o.status.code(), o.stdout)
        };
        let (first, second) = (out(), out());
        if first.0 != Some(0) {
            diffs.push(format!("{args:?} exited with {:?}", first.0));
        }
        if first != second {
            diffs.push(format!("{args:?}: outputs differ"));
        }
    }
    finish(runs.len(), "commands byte-identical across two runs", diffs)
}

#[test]
fn acceptance() {
    let criteria = [
        Criterion {
            name: "poset and Čech routes agree on all squarefree ideals in 3 variables",
            limit: Some(Duration::from_secs(5)),
            run: poset_vs_cech,
        },
        Criterion {
            name: "Betti numbers of the Alexander dual equal multiplicities",
            limit: Some(Duration::from_secs(60)),
            run: dual_identity,
        },
        Criterion {
            name: "named example (x1x2, x1x3)",
            limit: None,
            run: named_example,
        },
        Criterion {
            name: "complement topology",
            limit: Some(Duration::from_secs(1)),
            run: complement_topology,
        },
        Criterion {
            name: "maximal ideal sanity",
            limit: None,
            run: maximal_ideal,
        },
        Criterion {
            name: "property suites",
            limit: None,
            run: property_suites,
        },
        Criterion {
            name: "deterministic structured output",
            limit: None,
            run: determinism,
        },
    ];
    let mut failed = Vec::new();
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let over = c.limit.filter(|&l| elapsed > l);
        match (&outcome, over) {
            (Ok(detail), None) => report!("PASS {}: {detail} ({elapsed:.2?})", c.name),
            (Ok(detail), Some(limit)) => {
                report!(
                    "FAIL {}: {detail}, but took {elapsed:.2?} (limit {limit:?})",
                    c.name
                );
                failed.push(c.name);
            }
            (Err(diffs), _) => {
                report!("FAIL {}: {} diffs ({elapsed:.2?})", c.name, diffs.len());
                for d in diffs.iter().take(20) {
                    report!("    {d}");
                }
                failed.push(c.name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
