// SPDX-License-Identifier: MIT OR Apache-2.0

//! Acceptance suite: one PASS/FAIL line per criterion.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::{actions, all_wreath, build, small_groupoids, unit_subgroups, xe_oracle, Built};
use grading_forge::algebra::corpus::{cyclotomic_order, direct_product, group_ring, quadratic_order};
use grading_forge::algebra::{Base, StructureAlgebra};
use grading_forge::cli::census_counts;
use grading_forge::grading::{cyclic_gradings, max_cross_inner_product, universal_abelian, AbelianGroup, GridGrading};
use grading_forge::groupoid::{centralizer, conj_type, transporter, WreathElement};
use grading_forge::linalg::{lattice_intersect, lattice_sum, saturate, IntMatrix, IntegerLattice};
use grading_forge::restriction::{restrict_grading, universal_grid, universal_restriction, DecompositionProblem};
use grading_forge::xe::{set_partitions, xe, XeProblem};
use num_bigint::{BigInt, BigUint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = std::result::Result<String, String>;

fn check(cond: bool, msg: impl Into<String>) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn lat(n: usize, vecs: &[Vec<i64>]) -> IntegerLattice {
    let v: Vec<Vec<BigInt>> = vecs.iter().map(|v| v.iter().map(|&x| BigInt::from(x)).collect()).collect();
    IntegerLattice::from_vectors(n, &v)
}

fn unit_vec(n: usize, j: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[j] = 1;
    v
}

// ---------------------------------------------------------------- 1

fn census(gradings: &mut Vec<GridGrading>) -> Outcome {
    let mut report = Vec::new();
    for (p, k_max) in [(3u64, 2u32), (5, 1), (7, 1)] {
        let counts = census_counts(p, k_max).map_err(|e| e.to_string())?;
        let want: Vec<usize> = (1..=k_max).map(|k| p.pow(k - 1) as usize).collect();
        check(counts == want, format!("p={}: {:?} != {:?}", p, counts, want))?;
        report.push(format!("p={} {:?}", p, counts));
    }
    let counts = census_counts(2, 4).map_err(|e| e.to_string())?;
    check(counts[1..] == [2, 6, 16], format!("p=2: {:?}", counts))?;
    report.push(format!("p=2 {:?}", counts));
    for (p, k) in [(3u64, 2u32), (2, 3), (2, 4)] {
        gradings.extend(cyclic_gradings(&cyclotomic_order(p.pow(k), Base::Q), p, k).map_err(|e| e.to_string())?);
    }
    Ok(report.join(", "))
}

// ---------------------------------------------------------------- 2

/// Every nonzero component is `Z·b_j` for a basis vector, distinct `j`
/// land in distinct components, and multiplication of basis vectors up to
/// sign matches the grid.
fn basis_grading(r: &StructureAlgebra, g: &GridGrading) -> std::result::Result<Vec<usize>, String> {
    let n = r.rank();
    let mut comp_of = vec![usize::MAX; n];
    for s in g.support() {
        let c = &g.components[s];
        check(c.rank() == 1, format!("component {} has rank {}", g.grid.label(s), c.rank()))?;
        let j = (0..n)
            .find(|&j| *c == lat(n, &[unit_vec(n, j)]))
            .ok_or_else(|| format!("component {} is not spanned by a basis vector", g.grid.label(s)))?;
        comp_of[j] = s;
    }
    check(comp_of.iter().all(|&s| s != usize::MAX), "basis vector outside every component")?;
    for i in 0..n {
        for j in 0..n {
            let prod = r.mul(&r.basis_vector(i), &r.basis_vector(j));
            let k = prod.iter().position(|c| *c != num_rational::BigRational::from_integer(0.into()));
            let k = k.ok_or("zero product of basis vectors")?;
            check(g.grid.mul(comp_of[i], comp_of[j]) == Some(comp_of[k]), format!("b{}·b{} lands outside", i, j))?;
        }
    }
    Ok(comp_of)
}

fn universal_abelian_examples(gradings: &mut Vec<GridGrading>) -> Outcome {
    let mut report = Vec::new();
    let cases: Vec<(&str, StructureAlgebra, Vec<u64>)> = vec![
        ("Z[sqrt2]", quadratic_order(2, Base::Z), vec![2]),
        ("Z[zeta8]", cyclotomic_order(8, Base::Z), vec![4]),
        ("Z[C2]", group_ring(&[2], Base::Z), vec![2]),
        ("Z[C2xC2]", group_ring(&[2, 2], Base::Z), vec![2, 2]),
        ("Z[C4]", group_ring(&[4], Base::Z), vec![4]),
        ("Z[C6]", group_ring(&[6], Base::Z), vec![6]),
    ];
    for (name, r, moduli) in cases {
        let t = Instant::now();
        let u = universal_abelian(&r).map_err(|e| format!("{}: {}", name, e))?;
        let secs = t.elapsed().as_secs_f64();
        check(secs < 120.0, format!("{} took {:.1} s", name, secs))?;
        check(u.group.moduli == moduli, format!("{}: group {:?}, want {:?}", name, u.group.moduli, moduli))?;
        check(u.grading.is_efficient(), format!("{}: not efficient", name))?;
        check(u.grading.nonzero_count() == r.rank(), format!("{}: {} components", name, u.grading.nonzero_count()))?;
        basis_grading(&r, &u.grading).map_err(|e| format!("{}: {}", name, e))?;
        report.push(format!("{} {:?} {:.1}s", name, moduli, secs));
        gradings.push(u.grading);
    }
    Ok(report.join(", "))
}

// ---------------------------------------------------------------- 3

fn universal_grid_example(gradings: &mut Vec<GridGrading>) -> Outcome {
    let s = quadratic_order(2, Base::Z);
    let r = direct_product(&s, &s);
    let u = universal_grid(&r).map_err(|e| e.to_string())?;
    let g = &u.grading;
    check(g.nonzero_count() == 3, format!("{} nonzero components", g.nonzero_count()))?;
    let unit = g.grid.unit();
    let others: Vec<usize> = g.support().into_iter().filter(|&x| x != unit).collect();
    let (a, b) = (others[0], others[1]);
    check(g.grid.mul(a, a) == Some(unit) && g.grid.mul(b, b) == Some(unit), "a*a or b*b is not 1")?;
    check(g.grid.mul(a, b).is_none() && g.grid.mul(b, a).is_none(), "a*b is defined")?;
    // the presentation is ⟨a, b | a², b²⟩ up to renaming
    let p = &u.presentation;
    let mut rels = p.relators.clone();
    rels.sort();
    check(p.generators.len() == 2 && rels == vec![vec![(0, 2)], vec![(1, 2)]], format!("presentation {}", p))?;
    gradings.push(u.grading.clone());
    Ok(format!("presentation {}", p))
}

// ---------------------------------------------------------------- 4

fn factorial(k: usize) -> u128 {
    (1..=k as u128).product()
}

/// `∏ c! · (k·#C(γ))^c` over the conjugacy type.
fn centralizer_formula(b: &Built, rho: &WreathElement) -> u128 {
    conj_type(&b.c, rho)
        .entries
        .iter()
        .map(|&(k, label, c)| {
            let cent = centralizer(&b.c, label.1).len() as u128;
            factorial(c) * (k as u128 * cent).pow(c as u32)
        })
        .product()
}

fn transporter_oracle() -> Outcome {
    let pool: Vec<_> = small_groupoids(4, 6).into_iter().filter(|g| g.iter().map(|c| c.1).sum::<usize>() <= 4).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut conjugate_pairs = 0;
    let trials = 240;
    for _ in 0..trials {
        let comps = &pool[rng.gen_range(0..pool.len())];
        let b = build(comps);
        let c = &b.c;
        let all = all_wreath(c);
        let rho = all[rng.gen_range(0..all.len())].clone();
        let sigma = if rng.gen_bool(0.5) {
            let alpha = &all[rng.gen_range(0..all.len())];
            c.wreath_compose(alpha, &c.wreath_compose(&rho, &c.wreath_invert(alpha)))
        } else {
            all[rng.gen_range(0..all.len())].clone()
        };
        let brute: Vec<WreathElement> =
            all.iter().filter(|a| c.wreath_compose(a, &rho) == c.wreath_compose(&sigma, a)).cloned().collect();
        let t = transporter(c, &c.full_mask(), &rho, &sigma);
        check(t == brute, format!("transporter differs from enumeration on {} objects", c.n_objects()))?;
        if !t.is_empty() {
            conjugate_pairs += 1;
            let f = centralizer_formula(&b, &rho);
            check(t.len() as u128 == f, format!("{} transporters, formula {}", t.len(), f))?;
        }
    }
    Ok(format!("{} groupoids, {} conjugate pairs", trials, conjugate_pairs))
}

// ---------------------------------------------------------------- 5

/// `(2·m·a^c)^m` from the group data: `m` object orbits, `a = Σ #Aut`.
fn bound_oracle(b: &Built, p: &XeProblem) -> BigUint {
    let n = b.c.n_objects();
    let mut seen = BTreeSet::new();
    let mut m = 0u32;
    for k in 0..n {
        if seen.contains(&k) {
            continue;
        }
        m += 1;
        for &g in p.action.elements() {
            seen.insert(p.action.act_object(g, k));
        }
    }
    let a: usize = b.comp.iter().map(|&k| b.groups[k].order()).sum();
    let c = if p.e.is_multiple_of(4) { 3 } else { 2 };
    (BigUint::from(2 * m) * BigUint::from(a).pow(c)).pow(m)
}

fn xe_oracle_and_bound(bound_ok: &mut bool) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut instances = 0;
    let mut worst = 0.0f64;
    for comps in small_groupoids(3, 4) {
        let b = build(&comps);
        for e in [2u64, 3, 4, 8] {
            for sub in unit_subgroups(e) {
                for act in actions(&b, e, &sub, &mut rng) {
                    let p = XeProblem::new(b.c.clone(), e, act).map_err(|e| e.to_string())?;
                    let got = xe(&p);
                    let want = xe_oracle(&p.groupoid, &p.action, e);
                    check(got == want, format!("xe differs from the filter: e={} G={:?}", e, sub))?;
                    let bound = bound_oracle(&b, &p);
                    if BigUint::from(got.len()) > bound {
                        *bound_ok = false;
                        return Err(format!("#xe = {} exceeds the bound {}", got.len(), bound));
                    }
                    let ratio = got.len() as f64 / bound.to_string().parse::<f64>().unwrap_or(f64::INFINITY);
                    worst = worst.max(ratio);
                    instances += 1;
                }
            }
        }
    }
    Ok(format!("{} instances, max #xe/bound = {:.3}", instances, worst))
}

// ---------------------------------------------------------------- 6

fn axis(n: usize, i: usize) -> Vec<i64> {
    unit_vec(n, i)
}

fn cols(n: usize, vecs: &[Vec<i64>]) -> IntMatrix {
    let v: Vec<Vec<BigInt>> = vecs.iter().map(|v| v.iter().map(|&x| BigInt::from(x)).collect()).collect();
    IntMatrix::from_columns(n, &v)
}

fn oracle_restricts(n: usize, rel: &[Vec<i64>], gens: &[Vec<i64>], assignment: &[usize]) -> bool {
    let span = |vs: &[Vec<i64>]| {
        let all: Vec<Vec<i64>> = vs.iter().chain(rel).cloned().collect();
        IntegerLattice::from_generators(&cols(n, &all))
    };
    let b = span(gens);
    let mut acc = span(&[]);
    for t in 0..n {
        let block: Vec<Vec<i64>> = (0..n).filter(|&i| assignment[i] == t).map(|i| axis(n, i)).collect();
        if !block.is_empty() {
            acc = lattice_sum(&acc, &lattice_intersect(&b, &span(&block)).unwrap()).unwrap();
        }
    }
    b.is_sublattice_of(&acc)
}

fn restriction_checks() -> Outcome {
    // Q(ζ8) graded by (Z/2)² through 1, i, √2, √-2
    let e = cyclotomic_order(8, Base::Q);
    let grid = AbelianGroup::new(vec![2, 2]).to_grid();
    let q_comps = vec![
        lat(4, &[vec![1, 0, 0, 0]]),
        lat(4, &[vec![0, 0, 1, 0]]),
        lat(4, &[vec![0, 1, 0, -1]]),
        lat(4, &[vec![0, 1, 0, 1]]),
    ];
    let g = GridGrading::new(e, grid, q_comps.clone()).map_err(|e| e.to_string())?;
    let res = restrict_grading(&cyclotomic_order(8, Base::Z), &g).map_err(|e| e.to_string())?;
    let h = &res.grading;
    check(h.nonzero_count() == 2, format!("{} components", h.nonzero_count()))?;
    // oracle: B̄ ∩ Z[ζ8] for the two classes of the merged index map
    let mut want = Vec::new();
    for t in 0..res.map.targets {
        let mut acc = IntegerLattice::zero(4);
        for (s, c) in q_comps.iter().enumerate() {
            if res.map.assignment[s] == t {
                acc = lattice_sum(&acc, c).unwrap();
            }
        }
        want.push(saturate(&acc));
    }
    let mut got: Vec<IntegerLattice> = h.support().iter().map(|&s| h.components[s].clone()).collect();
    got.sort_by_key(|l| l.basis_vectors());
    want.sort_by_key(|l| l.basis_vectors());
    check(got == want, "restricted components differ from the lattice oracle")?;
    let even = lat(4, &[vec![1, 0, 0, 0], vec![0, 0, 1, 0]]);
    check(got.contains(&even), "Z + Zζ² is not a component")?;

    // universality against every coarser index map
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let trials = 300;
    for _ in 0..trials {
        let n = rng.gen_range(2..=5);
        let d: Vec<i64> = (0..n).map(|_| [0, 0, 2, 3, 4][rng.gen_range(0..5)]).collect();
        let rel: Vec<Vec<i64>> =
            (0..n).filter(|&i| d[i] > 0).map(|i| axis(n, i).iter().map(|x| x * d[i]).collect()).collect();
        let k = rng.gen_range(1..=3);
        let gens: Vec<Vec<i64>> = (0..k).map(|_| (0..n).map(|_| rng.gen_range(-2..=2)).collect()).collect();
        let comps = (0..n).map(|i| cols(n, &[axis(n, i)])).collect();
        let p = DecompositionProblem::new(cols(n, &rel), comps, cols(n, &gens)).map_err(|e| e.to_string())?;
        let u = universal_restriction(&p).map_err(|e| e.to_string())?;
        check(oracle_restricts(n, &rel, &gens, &u.map.assignment), "universal map does not restrict")?;
        for blocks in set_partitions(n) {
            let mut f = vec![0; n];
            for (t, bl) in blocks.iter().enumerate() {
                for &i in bl {
                    f[i] = t;
                }
            }
            check(
                oracle_restricts(n, &rel, &gens, &f) == u.map.factors(&f),
                format!("partition {:?} breaks universality", blocks),
            )?;
        }
    }
    Ok(format!("Z[zeta8] components {:?}; {} universality instances", got.iter().map(|l| l.rank()).collect::<Vec<_>>(), trials))
}

// ---------------------------------------------------------------- 7

fn orthogonality(gradings: &[GridGrading]) -> Outcome {
    let mut worst = 0.0f64;
    for g in gradings {
        let v = max_cross_inner_product(g).map_err(|e| e.to_string())?;
        worst = worst.max(v);
        check(v < 1e-6, format!("cross inner product {:e} on a rank {} grading", v, g.rank()))?;
    }
    check(!gradings.is_empty(), "no gradings collected")?;
    Ok(format!("{} gradings, max |<x,y>| = {:.2e}", gradings.len(), worst))
}

// ----------------------------------------------------------------

fn run(n: usize, name: &str, budget: Duration, f: impl FnOnce() -> Outcome) -> (bool, Duration) {
    let t = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
        Err(format!("panic: {}", msg.unwrap_or_default()))
    });
    let took = t.elapsed();
    let (ok, detail) = match outcome {
        Ok(d) if took <= budget => (true, d),
        Ok(d) => (false, format!("{} (over budget {:?})", d, budget)),
        Err(e) => (false, e),
    };
    println!("criterion {} [{}]: {} in {:.1} s; {}", n, name, if ok { "PASS" } else { "FAIL" }, took.as_secs_f64(), detail);
    (ok, took)
}

fn main() {
    let mut gradings = Vec::new();
    let mut bound_ok = true;
    let mut results = Vec::new();
    results.push(run(1, "cyclotomic census", Duration::from_secs(300), || census(&mut gradings)));
    results.push(run(2, "universal abelian gradings", Duration::from_secs(6 * 120), || {
        universal_abelian_examples(&mut gradings)
    }));
    results.push(run(3, "universal grid grading", Duration::from_secs(120), || universal_grid_example(&mut gradings)));
    results.push(run(4, "transporter oracle", Duration::from_secs(60), transporter_oracle));
    results.push(run(5, "X_e oracle and bound", Duration::from_secs(120), || xe_oracle_and_bound(&mut bound_ok)));
    results.push(run(6, "restriction", Duration::from_secs(30), restriction_checks));
    results.push(run(7, "orthogonality", Duration::from_secs(120), || orthogonality(&gradings)));
    let budgets_ok = results.iter().all(|(ok, _)| *ok);
    let (ok8, _) = run(8, "budgets and bound", Duration::from_secs(1), || {
        check(bound_ok, "bound violated")?;
        check(budgets_ok, "a criterion failed or ran over budget")?;
        let total: f64 = results.iter().map(|(_, d)| d.as_secs_f64()).sum();
        Ok(format!("criteria 1-7 within budget, total {:.1} s", total))
    });
    if !(budgets_ok && ok8) {
        std::process::exit(1);
    }
}
