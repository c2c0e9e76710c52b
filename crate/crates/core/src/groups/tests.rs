use std::collections::HashSet;

use proptest::prelude::*;

use super::*;

/// Naive closure of permutations as a set, independent of the table code.
fn naive_perm_closure(gens: &[Vec<u32>]) -> HashSet<Vec<u32>> {
    let n = gens[0].len();
    let id: Vec<u32> = (0..n as u32).collect();
    let mut set = HashSet::from([id.clone()]);
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y: Vec<u32> = x.iter().map(|&i| g[i as usize]).collect();
            if set.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    set
}

fn of_order(g: &FiniteGroup, k: u32) -> Elem {
    g.elements_of_order(k)[0]
}

#[test]
fn builtin_facts_match_constructions() {
    for &b in BuiltinGroup::all() {
        let g = b.group();
        let f = b.facts();
        let cd = g.commutator_data();
        assert_eq!(g.order(), f.order, "{}", b.name());
        assert_eq!(cd.subgroup.order(), f.commutator_order, "{}", b.name());
        assert_eq!(cd.abelianization, f.abelianization, "{}", b.name());
        assert_eq!(*g.order_spectrum().last().unwrap(), f.max_element_order, "{}", b.name());
        assert_eq!(cd.abelianization.iter().product::<u64>() as usize * cd.subgroup.order(), g.order());
    }
}

#[test]
fn maximal_groups_have_symplectic_element_orders() {
    for &b in BuiltinGroup::maximal() {
        assert!(b.group().order_spectrum().iter().all(|&k| k <= 8), "{}", b.name());
    }
}

#[test]
fn orders_from_names() {
    assert_eq!(BuiltinGroup::T192.group().order(), 192);
    assert_eq!(BuiltinGroup::H192.group().order(), 192);
    assert_eq!(BuiltinGroup::Trivial.group().order(), 1);
}

#[test]
fn psl27_order_matches_naive_closure() {
    let gens = vec![vec![1, 2, 3, 4, 5, 6, 0, 7], vec![0, 2, 4, 6, 1, 3, 5, 7], vec![7, 6, 3, 2, 5, 4, 1, 0]];
    let naive = naive_perm_closure(&gens);
    let g = BuiltinGroup::L27.group();
    assert_eq!(naive.len(), 168);
    assert_eq!(g.order(), naive.len());
    assert!(g.elements().all(|e| naive.contains(g.key(e))));
}

#[test]
fn names_resolve() {
    assert_eq!(BuiltinGroup::from_name("L_2(7)").unwrap(), BuiltinGroup::L27);
    assert_eq!(BuiltinGroup::from_name("A_{4,4}").unwrap(), BuiltinGroup::A44);
    assert_eq!(BuiltinGroup::from_name("(Z2)^3").unwrap(), BuiltinGroup::Z2Cubed);
    assert_eq!(BuiltinGroup::from_name("a4×a4").unwrap(), BuiltinGroup::A4xA4);
    assert!(matches!(BuiltinGroup::from_name("M24"), Err(Error::InvalidInput(_))));
    for &b in BuiltinGroup::all() {
        assert_eq!(BuiltinGroup::from_name(b.name()).unwrap(), b);
    }
}

#[test]
fn a6_has_two_order_three_classes_with_centralizer_nine() {
    let g = BuiltinGroup::A6.group();
    let threes: Vec<_> = g.conjugacy_classes().iter().filter(|c| c.element_order == 3).collect();
    assert_eq!(threes.len(), 2);
    assert!(threes.iter().all(|c| c.centralizer_order == 9 && c.size == 40));
    let c = g.centralizer(threes[0].representative).unwrap();
    assert_eq!(c.order(), 9);
    assert_eq!(abelian_invariants(&c).unwrap(), vec![3, 3]);
}

#[test]
fn a4xa4_order_three_classes_and_swap_fusion() {
    let g = BuiltinGroup::A4xA4.group();
    let threes: Vec<_> = g.conjugacy_classes().iter().filter(|c| c.element_order == 3).collect();
    assert_eq!(threes.len(), 8);
    let a4 = BuiltinGroup::A4.group();
    let c = a4.find(&[1, 2, 0, 3]).unwrap();
    let c2 = a4.mul(c, c);
    let pair = |x: Elem, y: Elem| g.find(&[x.index() as u32, y.index() as u32]).unwrap();
    let e = a4.identity();
    let reps = [pair(c, e), pair(e, c), pair(c, c), pair(c, c2)];
    let classes: HashSet<usize> = reps.iter().map(|&r| g.class_index(r).unwrap()).collect();
    assert_eq!(classes.len(), 4);
    assert_eq!(g.centralizer(pair(c, c)).unwrap().order(), 9);
    assert_eq!(g.centralizer(pair(c, c2)).unwrap().order(), 9);

    // inside A4,4 the odd swap fuses the eight classes of [G,G] in pairs
    let big = BuiltinGroup::A44.group();
    let h = &big.commutator_data().subgroup;
    let h3: Vec<usize> =
        h.conjugacy_classes().iter().enumerate().filter(|(_, c)| c.element_order == 3).map(|(i, _)| i).collect();
    assert_eq!(h3.len(), 8);
    let fused: Vec<Vec<usize>> =
        big.fuse_classes(h).unwrap().into_iter().filter(|grp| grp.iter().any(|i| h3.contains(i))).collect();
    assert_eq!(fused.len(), 4);
    assert!(fused.iter().all(|grp| grp.len() == 2));
}

#[test]
fn centralizer_examples() {
    let g = BuiltinGroup::A6.group();
    let c = g.centralizer(g.identity()).unwrap();
    assert_eq!(c.order(), g.order());
    let five = of_order(&g, 5);
    assert_eq!(g.centralizer(five).unwrap().order(), 5);

    let other = BuiltinGroup::A5.group();
    assert!(matches!(g.centralizer(other.identity()), Err(Error::InvalidInput(_))));
}

#[test]
fn normalizer_examples() {
    let l = BuiltinGroup::L27.group();
    let seven = of_order(&l, 7);
    let n = l.normalizer(&l.cyclic_subgroup(seven).unwrap()).unwrap();
    assert_eq!((n.group.order(), n.index), (21, 8));

    let t = BuiltinGroup::T24.group();
    let n = t.normalizer(&t.cyclic_subgroup(of_order(&t, 3)).unwrap()).unwrap();
    assert_eq!((n.group.order(), n.index), (6, 4));
    assert!(n.group.is_abelian());

    let n = t.normalizer(&t).unwrap();
    assert_eq!((n.group.order(), n.index), (24, 1));

    let a5 = BuiltinGroup::A5.group();
    assert!(matches!(t.normalizer(&a5), Err(Error::InvalidInput(_))));

    let d10 = BuiltinGroup::D10.group();
    assert!(!d10.is_abelian());
    assert_eq!(d10.elements_of_order(2).len(), 5);
}

#[test]
fn commuting_involution_examples() {
    let m = BuiltinGroup::M20.group();
    for e in m.elements_of_order(3) {
        assert_eq!(m.commuting_involutions(e).unwrap(), 0);
    }
    let ew = even_weight_extension().unwrap();
    for e in ew.elements_of_order(3) {
        assert_eq!(ew.commuting_involutions(e).unwrap(), 3);
    }
    let z = BuiltinGroup::Z2Cubed.group();
    assert_eq!(z.commuting_involutions(z.identity()).unwrap(), 7);
    let a6 = BuiltinGroup::A6.group();
    assert_eq!(a6.commuting_involutions(of_order(&a6, 5)).unwrap(), 0);
}

#[test]
fn a6_order_five_centralizer_against_brute_force() {
    let g = BuiltinGroup::A6.group();
    let x = of_order(&g, 5);
    let xp = g.key(x).to_vec();
    let compose = |a: &[u32], b: &[u32]| -> Vec<u32> { a.iter().map(|&i| b[i as usize]).collect() };
    let involutions = g
        .elements()
        .filter(|&e| {
            let k = g.key(e);
            compose(k, k) == (0..6).collect::<Vec<u32>>() && g.element_order(e) == 2
        })
        .filter(|&e| compose(g.key(e), &xp) == compose(&xp, g.key(e)))
        .count();
    assert_eq!(involutions, 0);
}

#[test]
fn m20_models_differ() {
    let spectrum = |g: &FiniteGroup| {
        let mut c = std::collections::BTreeMap::new();
        for e in g.elements() {
            *c.entry(g.element_order(e)).or_insert(0usize) += 1;
        }
        c.into_iter().collect::<Vec<_>>()
    };
    let m = BuiltinGroup::M20.group();
    assert_eq!(spectrum(&m), vec![(1, 1), (2, 75), (3, 320), (4, 180), (5, 384)]);
    let ew = even_weight_extension().unwrap();
    assert_eq!(ew.order(), 960);
    assert_eq!(ew.elements_of_order(6).len(), 240);
    assert!(ew.is_perfect());
}

#[test]
fn perfect_groups_are_fixed_by_commutator() {
    for b in [BuiltinGroup::L27, BuiltinGroup::A6, BuiltinGroup::M20] {
        let g = b.group();
        assert!(g.is_perfect());
        let h = g.commutator_data().subgroup.clone();
        assert_eq!(h.commutator_data().subgroup.order(), h.order());
    }
}

#[test]
fn t48_structure() {
    let g = BuiltinGroup::T48.group();
    let q = BuiltinGroup::Q8.group();
    assert_eq!(q.elements_of_order(2).len(), 1);
    // the unique involution of Q8 stays central in T48
    let minus = q.find_label("-1").unwrap();
    let z = g.find(&[minus.index() as u32, BuiltinGroup::S3.group().identity().index() as u32]).unwrap();
    assert_eq!(g.centralizer(z).unwrap().order(), 48);
    assert_eq!(g.commutator_data().subgroup.order(), 24);
}

#[test]
fn trivial_group_has_one_class() {
    let g = BuiltinGroup::Trivial.group();
    assert_eq!(g.conjugacy_classes().len(), 1);
    assert_eq!(g.conjugacy_classes()[0].size, 1);
    assert!(g.commutator_data().abelianization.is_empty());
}

#[test]
fn class_equation_and_spectrum() {
    for &b in BuiltinGroup::all() {
        let g = b.group();
        let classes = g.conjugacy_classes();
        assert_eq!(classes.iter().map(|c| c.size).sum::<usize>(), g.order(), "{}", b.name());
        for c in classes {
            assert_eq!(g.order() % c.size, 0);
            assert_eq!(c.size * c.centralizer_order, g.order());
            assert_eq!(g.class_members(g.class_index(c.representative).unwrap()).len(), c.size);
        }
        let keys: Vec<_> = classes.iter().map(|c| (c.element_order, c.size, c.representative.index())).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert!(g.order_spectrum().iter().all(|&k| g.order() % k as usize == 0));
    }
    assert_eq!(BuiltinGroup::Z2Cubed.group().order_spectrum(), vec![1, 2]);
}

#[test]
fn abelian_invariants_of_products() {
    let z = build::keyed_group("Z4xZ6", vec![0, 0], vec![vec![1, 0], vec![0, 1]], |a, b| vec![(a[0] + b[0]) % 4, (a[1] + b[1]) % 6], |k| format!("{k:?}"))
        .unwrap();
    assert_eq!(abelian_invariants(&z).unwrap(), vec![2, 12]);
    let a6 = BuiltinGroup::A6.group();
    assert!(abelian_invariants(&a6).is_err());
}

#[test]
fn non_group_law_is_rejected() {
    // subtraction mod 5 closes but is not associative
    let r = build::keyed_group("bad", vec![0], vec![vec![1]], |a, b| vec![(a[0] + 5 - b[0]) % 5], |k| k[0].to_string());
    assert!(matches!(r, Err(Error::MalformedGroup(_))));
    assert!(permutation_group("bad", 3, &[vec![0, 0, 1]]).is_err());
}

#[test]
fn bad_automorphism_is_rejected() {
    let q = BuiltinGroup::Q8.group();
    let i = q.find_label("i").unwrap();
    assert!(Automorphism::from_generator_images(&q, &[i, i]).is_err());
    let z3 = builtin::cyclic(3).unwrap();
    let z2 = builtin::cyclic(2).unwrap();
    let trivial = Automorphism::identity(&z3);
    assert!(action_from_generators(&z2, &z3, &[trivial]).is_ok());
    let inv = Automorphism::from_generator_images(&z3, &[z3.find(&[2]).unwrap()]).unwrap();
    // Z3 cannot act on itself by an involution through a generator of order 3
    assert!(action_from_generators(&z3, &z3, &[inv]).is_err());
}

#[test]
fn quotient_requires_normal_subgroup() {
    let s3 = BuiltinGroup::S3.group();
    let t = s3.find(&[1, 0, 2]).unwrap();
    assert!(s3.quotient(&s3.cyclic_subgroup(t).unwrap()).is_err());
    let r = s3.find(&[1, 2, 0]).unwrap();
    let q = s3.quotient(&s3.cyclic_subgroup(r).unwrap()).unwrap();
    assert_eq!(q.order(), 2);
    assert_eq!(q.project(t).unwrap(), q.generators()[q.generators().len() - 1]);
}

fn arb_builtin() -> impl Strategy<Value = BuiltinGroup> {
    prop::sample::select(BuiltinGroup::all().to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn centralizer_contains_cyclic_subgroup(b in arb_builtin(), i in any::<prop::sample::Index>()) {
        let g = b.group();
        let x = g.element(i.index(g.order())).unwrap();
        let c = g.centralizer(x).unwrap();
        let cy = g.cyclic_subgroup(x).unwrap();
        prop_assert_eq!(cy.order() as u32, g.element_order(x));
        prop_assert_eq!(c.order() % cy.order(), 0);
        for e in cy.elements() {
            let p = cy.embed(e).unwrap();
            prop_assert!(c.elements().any(|y| c.embed(y).unwrap() == p));
        }
        let cls = g.conjugacy_classes()[g.class_index(x).unwrap()].clone();
        prop_assert_eq!(cls.centralizer_order, c.order());
    }

    #[test]
    fn normalizer_contains_subgroup(b in arb_builtin(), i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let g = b.group();
        let x = g.element(i.index(g.order())).unwrap();
        let y = g.element(j.index(g.order())).unwrap();
        let h = g.subgroup(&[x, y]).unwrap();
        prop_assert_eq!(g.order() % h.order(), 0);
        let n = g.normalizer(&h).unwrap();
        prop_assert_eq!(n.group.order() % h.order(), 0);
        prop_assert_eq!(n.index * n.group.order(), g.order());
        let mask: HashSet<Elem> = n.group.elements().map(|e| n.group.embed(e).unwrap()).collect();
        for e in h.elements() {
            prop_assert!(mask.contains(&h.embed(e).unwrap()));
        }
    }

    #[test]
    fn cyclic_invariants_are_single_factor(b in arb_builtin(), i in any::<prop::sample::Index>()) {
        let g = b.group();
        let x = g.element(i.index(g.order())).unwrap();
        let c = g.cyclic_subgroup(x).unwrap();
        let k = g.element_order(x) as u64;
        let expected: Vec<u64> = if k == 1 { vec![] } else { vec![k] };
        prop_assert_eq!(abelian_invariants(&c).unwrap(), expected);
    }

    #[test]
    fn class_of_conjugate_is_stable(b in arb_builtin(), i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let g = b.group();
        let x = g.element(i.index(g.order())).unwrap();
        let y = g.element(j.index(g.order())).unwrap();
        prop_assert_eq!(g.class_index(x).unwrap(), g.class_index(g.conjugate(x, y)).unwrap());
        prop_assert_eq!(g.mul(g.inv(y), y), g.identity());
    }
}
