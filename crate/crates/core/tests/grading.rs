// SPDX-License-Identifier: MIT OR Apache-2.0

use std::collections::BTreeMap;

use grading_forge::algebra::corpus::{cyclotomic_order, group_ring, integers, quadratic_order};
use grading_forge::algebra::{Base, StructureAlgebra};
use grading_forge::grading::{
    cyclic_automorphism, cyclic_gradings, cyclic_gradings_of_order, effective_exponent, joint_eigenspaces,
    max_cross_inner_product, universal_abelian, xe_automorphisms, AbelianGroup, Grid, GridGrading,
};
use grading_forge::linalg::IntegerLattice;
use grading_forge::Error;
use num_bigint::BigInt;
use proptest::prelude::*;

fn lat(n: usize, vecs: &[&[i64]]) -> IntegerLattice {
    let v: Vec<Vec<BigInt>> = vecs.iter().map(|v| v.iter().map(|&x| BigInt::from(x)).collect()).collect();
    IntegerLattice::from_vectors(n, &v)
}

fn sqrt2() -> StructureAlgebra {
    quadratic_order(2, Base::Z)
}

#[test]
fn census_counts() {
    for (p, k, want) in [(3u64, 1u32, 1usize), (5, 1, 1), (7, 1, 1), (3, 2, 3), (2, 1, 1), (2, 2, 2), (2, 3, 6), (2, 4, 16)] {
        let e = cyclotomic_order(p.pow(k), Base::Q);
        assert_eq!(cyclic_gradings(&e, p, k).unwrap().len(), want, "p={} k={}", p, k);
    }
}

#[test]
fn exponent_cap() {
    assert_eq!(effective_exponent(3, 1, 2), 0);
    assert_eq!(effective_exponent(3, 2, 6), 1);
    assert_eq!(effective_exponent(2, 4, 8), 3);
    assert_eq!(effective_exponent(2, 2, 2), 1);
    assert_eq!(effective_exponent(5, 3, 1000), 3);
}

#[test]
fn cyclic_examples() {
    let q = integers(Base::Q);
    for (p, k) in [(2, 1), (2, 3), (3, 2), (7, 1)] {
        let gs = cyclic_gradings(&q, p, k).unwrap();
        assert_eq!(gs.len(), 1);
        assert_eq!(gs[0].nonzero_count(), 1);
    }
    let gs = cyclic_gradings(&quadratic_order(2, Base::Q), 2, 1).unwrap();
    assert_eq!(gs.len(), 2);
    assert_eq!(gs.iter().filter(|g| g.nonzero_count() == 2).count(), 1);

    assert!(matches!(cyclic_gradings(&q, 6, 1), Err(Error::InvalidArgument(_))));
    let nil = grading_forge::algebra::corpus::polynomial_quotient(
        &grading_forge::poly::Polynomial::from_ints(&[0, 0, 1]),
        Base::Q,
    );
    assert!(matches!(cyclic_gradings(&nil, 2, 1), Err(Error::NotReduced)));
}

#[test]
fn grading_validation() {
    let r = sqrt2();
    let z2 = Grid::cyclic(2);
    let g = GridGrading::new(r.clone(), z2.clone(), vec![lat(2, &[&[1, 0]]), lat(2, &[&[0, 1]])]).unwrap();
    assert!(g.is_efficient() && g.is_loose());
    let swapped = GridGrading::new(r.clone(), z2.clone(), vec![lat(2, &[&[0, 1]]), lat(2, &[&[1, 0]])]);
    assert!(matches!(swapped, Err(Error::InvalidGrading(_))));
    let t = GridGrading::trivial(r.clone());
    t.validate().unwrap();
    assert!(t.is_efficient() && t.is_loose());
    // 2Z ⊕ √2Z has index 2 in Z[√2]
    let bad = GridGrading::new(r.clone(), z2, vec![lat(2, &[&[2, 0]]), lat(2, &[&[0, 1]])]);
    assert!(matches!(bad, Err(Error::NotADecomposition(_))));

    // Z/4 grading with the support in {0, 2}: valid but not efficient
    let z4 = Grid::cyclic(4);
    let g = GridGrading::new(r.clone(), z4, vec![lat(2, &[&[1, 0]]), lat(2, &[]), lat(2, &[&[0, 1]]), lat(2, &[])]).unwrap();
    assert!(!g.is_efficient());
    assert!(!g.is_loose());
}

#[test]
fn product_outside_component_is_named() {
    // Z[√2] graded by Z/3 with √2 in degree 1: √2·√2 = 2 lands outside R_2
    let g = GridGrading::new(sqrt2(), Grid::cyclic(3), vec![lat(2, &[&[1, 0]]), lat(2, &[&[0, 1]]), lat(2, &[])]);
    match g {
        Err(Error::InvalidGrading(msg)) => assert!(msg.contains("R_1 · R_1"), "{}", msg),
        other => panic!("{:?}", other),
    }
}

#[test]
fn eigenspaces_without_operators() {
    let r = cyclotomic_order(8, Base::Z);
    let js = joint_eigenspaces(&r, &[]).unwrap();
    assert_eq!(js.labels, vec![Vec::<u64>::new()]);
    assert_eq!(js.spaces, vec![IntegerLattice::full(4)]);
}

#[test]
fn sqrt2_conjugation_eigenspaces() {
    let gs = cyclic_gradings_of_order(&sqrt2(), 2, 1).unwrap();
    assert_eq!(gs.len(), 2);
    let split = gs.iter().find(|g| g.nonzero_count() == 2).unwrap();
    assert_eq!(split.components, vec![lat(2, &[&[1, 0]]), lat(2, &[&[0, 1]])]);
}

#[test]
fn zeta8_order_four_grading() {
    let r = cyclotomic_order(8, Base::Z);
    let gs = cyclic_gradings_of_order(&r, 2, 2).unwrap();
    let full: Vec<&GridGrading> = gs.iter().filter(|g| g.nonzero_count() == 4).collect();
    assert_eq!(full.len(), 2);
    // ζ₈ⁿZ in degree n or in degree -n
    let want: Vec<IntegerLattice> = (0..4).map(|n| lat(4, &[&unit(4, n)])).collect();
    let mut rev = want.clone();
    rev[1..].reverse();
    assert!(full.iter().any(|g| g.components == want));
    assert!(full.iter().any(|g| g.components == rev));
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

#[test]
fn pushforward_z4_to_z2() {
    let r = cyclotomic_order(8, Base::Z);
    let comps: Vec<IntegerLattice> = (0..4).map(|n| lat(4, &[&unit(4, n)])).collect();
    let g = GridGrading::new(r.clone(), Grid::cyclic(4), comps).unwrap();
    let same = g.pushforward(&[0, 1, 2, 3], &Grid::cyclic(4)).unwrap();
    assert_eq!(same.components, g.components);
    let p = g.pushforward(&[0, 1, 0, 1], &Grid::cyclic(2)).unwrap();
    assert_eq!(p.components, vec![lat(4, &[&[1, 0, 0, 0], &[0, 0, 1, 0]]), lat(4, &[&[0, 1, 0, 0], &[0, 0, 0, 1]])]);
    let point = g.pushforward(&[0, 0, 0, 0], &Grid::trivial()).unwrap();
    assert_eq!(point.components, vec![IntegerLattice::full(4)]);
    assert!(matches!(g.pushforward(&[0, 1, 1, 0], &Grid::cyclic(2)), Err(Error::NotAMorphism(_))));
}

#[test]
fn groupify_examples() {
    let (p, map) = Grid::cyclic(2).groupify();
    assert_eq!(p.to_string(), "< 1 | 1^2 >");
    assert_eq!(map, vec![None, Some(0)]);

    let v = Grid::new(vec!["1".into(), "a".into(), "b".into()], 0, &[(1, 1, 0), (2, 2, 0)]).unwrap();
    let (p, _) = v.groupify();
    assert_eq!(p.generators, vec!["a", "b"]);
    assert_eq!(p.relators, vec![vec![(0, 2)], vec![(1, 2)]]);
    assert_eq!(p.to_string(), "< a, b | a^2, b^2 >");

    let (p, _) = AbelianGroup::new(vec![3]).to_grid().groupify();
    assert_eq!(p.generators.len(), 2);
    assert!(!p.relators.is_empty());
}

#[test]
fn grid_axioms() {
    let labels = || vec!["1".to_string(), "a".to_string()];
    assert!(matches!(Grid::new(labels(), 0, &[(1, 1, 1)]), Err(Error::InvalidGrid(_))));
    assert!(matches!(Grid::new(labels(), 0, &[(1, 0, 0)]), Err(Error::InvalidGrid(_))));
    assert!(matches!(Grid::new(labels(), 2, &[]), Err(Error::InvalidGrid(_))));
    let g = Grid::new(labels(), 0, &[]).unwrap();
    assert_eq!(g.mul(1, 1), None);
    let (c, maps) = Grid::coproduct(&[Grid::cyclic(2), Grid::cyclic(3)]);
    assert_eq!(c.len(), 4);
    assert_eq!(maps, vec![vec![0, 1], vec![0, 2, 3]]);
    assert_eq!(c.mul(1, 2), None);
    assert_eq!(c.mul(2, 3), Some(0));
}

#[test]
fn abelian_group_coordinates() {
    let g = AbelianGroup::new(vec![2, 4]);
    assert_eq!(g.order(), 8);
    for i in 0..8 {
        assert_eq!(g.index(&g.element(i)), i);
    }
    assert_eq!(g.element(5), vec![1, 1]);
    assert_eq!(g.label(&[1, 3]), "(1,3)");
    assert_eq!(AbelianGroup::new(vec![]).to_grid().labels(), &["0".to_string()]);
}

/// The σ built from a grading lies in `X_e`, and its eigenspaces give the
/// grading back.
#[test]
fn grading_automorphism_round_trip() {
    for (e_alg, p, k) in [
        (cyclotomic_order(8, Base::Q), 2u64, 3u32),
        (quadratic_order(2, Base::Q), 2, 1),
        (group_ring(&[4], Base::Q), 2, 2),
        (cyclotomic_order(9, Base::Q), 3, 2),
    ] {
        let q = p.pow(k);
        let (tensor, mats) = xe_automorphisms(&e_alg, q).unwrap();
        let gs = cyclic_gradings(&e_alg, p, k).unwrap();
        assert_eq!(gs.len(), mats.len());
        for g in &gs {
            let parts: Vec<_> = g
                .components
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(j, c)| (j as u64, c.to_rational()))
                .collect();
            let sigma = cyclic_automorphism(&tensor, &parts).unwrap();
            assert!(mats.contains(&sigma));
            let op = grading_forge::grading::EigenOperator { tensor: &tensor, matrix: &sigma };
            let js = joint_eigenspaces(&e_alg, &[op]).unwrap();
            let back: BTreeMap<u64, IntegerLattice> = js.labels.iter().map(|z| z[0]).zip(js.spaces).collect();
            for (j, c) in g.components.iter().enumerate() {
                assert_eq!(back.get(&(j as u64)).cloned().unwrap_or_else(|| IntegerLattice::zero(g.rank())), *c);
            }
        }
    }
}

fn rank_one_components(g: &GridGrading) -> bool {
    g.support().iter().all(|&s| g.components[s].rank() == 1)
}

#[test]
fn universal_abelian_examples() {
    let u = universal_abelian(&integers(Base::Z)).unwrap();
    assert_eq!(u.group.order(), 1);

    let u = universal_abelian(&sqrt2()).unwrap();
    assert_eq!(u.group.moduli, vec![2]);
    assert!(rank_one_components(&u.grading));

    let u = universal_abelian(&cyclotomic_order(8, Base::Z)).unwrap();
    assert_eq!(u.group.moduli, vec![4]);
    let gen = u.grading.components.iter().position(|c| *c == lat(4, &[&[0, 1, 0, 0]])).unwrap();
    for n in 0..4 {
        let mut g = 0;
        for _ in 0..n {
            g = u.grading.grid.mul(g, gen).unwrap();
        }
        assert_eq!(u.grading.components[g], lat(4, &[&unit(4, n)]));
    }

    for (orders, moduli) in [(vec![2u64], vec![2u64]), (vec![2, 2], vec![2, 2]), (vec![4], vec![4]), (vec![6], vec![6])] {
        let r = group_ring(&orders, Base::Z);
        let u = universal_abelian(&r).unwrap();
        assert_eq!(u.group.moduli, moduli, "{:?}", orders);
        assert_eq!(u.grading.nonzero_count(), r.rank());
        // each component is spanned by a group element
        for c in &u.grading.components {
            let v = &c.basis_vectors()[0];
            assert_eq!(v.iter().filter(|x| **x != BigInt::from(0)).count(), 1);
        }
        assert!(u.grading.is_efficient());
    }

    assert!(matches!(universal_abelian(&quadratic_order(2, Base::Q)), Err(Error::NotAnOrder)));
}

/// Extends `f` on the support of the universal grading to a homomorphism
/// of its group, failing if the values are inconsistent.
fn extend_to_group(group: &AbelianGroup, support: &BTreeMap<usize, u64>, q: u64) -> Option<Vec<usize>> {
    let n = group.order();
    let mut f: Vec<Option<u64>> = vec![None; n];
    f[0] = Some(0);
    let mut frontier = vec![0];
    while let Some(g) = frontier.pop() {
        for (&s, &v) in support {
            let h = group.index(&group.add(&group.element(g), &group.element(s)));
            let val = (f[g].expect("visited") + v) % q;
            match f[h] {
                Some(w) if w != val => return None,
                Some(_) => {}
                None => {
                    f[h] = Some(val);
                    frontier.push(h);
                }
            }
        }
    }
    f.into_iter().map(|x| x.map(|v| v as usize)).collect()
}

#[test]
fn universal_maps_onto_cyclic_gradings() {
    for (r, primes) in [
        (cyclotomic_order(8, Base::Z), vec![(2u64, 2u32), (3, 1)]),
        (group_ring(&[4], Base::Z), vec![(2, 2), (3, 1)]),
        (group_ring(&[2, 2], Base::Z), vec![(2, 2)]),
        (group_ring(&[6], Base::Z), vec![(2, 2), (3, 1), (5, 1)]),
    ] {
        let u = universal_abelian(&r).unwrap();
        for (p, k) in primes {
            let q = p.pow(k);
            for c in cyclic_gradings_of_order(&r, p, k).unwrap() {
                let mut values = BTreeMap::new();
                for s in u.grading.support() {
                    let comp = &u.grading.components[s];
                    let j = (0..c.grid.len()).find(|&j| comp.is_sublattice_of(&c.components[j])).expect("homogeneous");
                    values.insert(s, j as u64);
                }
                let f = extend_to_group(&u.group, &values, q).expect("a homomorphism");
                let pushed = u.grading.pushforward(&f, &c.grid).unwrap();
                assert_eq!(pushed.components, c.components);
            }
        }
    }
}

#[test]
fn orthogonality_of_components() {
    let mut gradings = Vec::new();
    for name in ["Z[sqrt2]", "Z[zeta8]", "Z[C2xC2]", "Z[C6]"] {
        let r = grading_forge::algebra::corpus::corpus_entry(name).unwrap();
        gradings.push(universal_abelian(&r).unwrap().grading);
        gradings.extend(cyclic_gradings_of_order(&r, 2, 2).unwrap());
    }
    gradings.extend(cyclic_gradings(&cyclotomic_order(9, Base::Q), 3, 2).unwrap());
    for g in &gradings {
        assert!(max_cross_inner_product(g).unwrap() < 1e-6);
    }
    // a decomposition that is not a grading is not orthogonal
    let r = sqrt2();
    let g = GridGrading::new_unchecked(r, Grid::cyclic(2), vec![lat(2, &[&[1, 0]]), lat(2, &[&[1, 1]])]);
    assert!(max_cross_inner_product(&g).unwrap() > 1.0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Cyclic gradings of group rings: every output validates and the
    /// pushforward to the trivial grid is the trivial grading.
    #[test]
    fn group_ring_gradings_validate(a in 1u64..5, b in 1u64..3) {
        let r = group_ring(&[a, b], Base::Z);
        for g in cyclic_gradings_of_order(&r, 2, 2).unwrap() {
            g.validate().unwrap();
            let f = vec![0; g.grid.len()];
            let t = g.pushforward(&f, &Grid::trivial()).unwrap();
            prop_assert_eq!(t.components, vec![IntegerLattice::full(r.rank())]);
        }
    }
}
