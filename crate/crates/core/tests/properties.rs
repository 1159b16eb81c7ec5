//! Property tests over randomly generated inputs.

use proptest::prelude::*;

use dcg_core::autiso::{aut_bruteforce, is_automorphism};
use dcg_core::construct::{cayley, CayleySpec};
use dcg_core::digraph::{deleted_wreath, twin_classes, wreath, Digraph};
use dcg_core::fixtures;
use dcg_core::group::{
    canonical_set, max_two_sided_stabilizer, product_set, subgroup_generated, subgroups,
};
use dcg_core::json;
use dcg_core::perm::{Perm, PermGroup};

fn arb_digraph(max_n: usize) -> impl Strategy<Value = Digraph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(proptest::bool::ANY, n * n).prop_map(move |bits| {
            let arcs: Vec<(usize, usize)> = bits
                .iter()
                .enumerate()
                .filter(|&(i, &b)| b && i / n != i % n)
                .map(|(i, _)| (i / n, i % n))
                .collect();
            Digraph::from_arcs(n, &arcs).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn wreath_arc_count_formula(d1 in arb_digraph(5), d2 in arb_digraph(5)) {
        let w = wreath(&d1, &d2).unwrap();
        let (n1, n2) = (d1.vertex_count(), d2.vertex_count());
        prop_assert_eq!(
            w.arc_count(),
            n1 * d2.arc_count() + d1.arc_count() * n2 * n2
        );
        let dw = deleted_wreath(&d1, &d2).unwrap();
        prop_assert_eq!(
            dw.arc_count(),
            d1.arc_count() * n2 * (n2 - 1) + n1 * d2.arc_count()
        );
    }

    #[test]
    fn digraph_json_round_trip(d in arb_digraph(6)) {
        let text = json::digraph_to_json(&d);
        let back = json::digraph_from_json(&text).unwrap();
        prop_assert_eq!(back, d);
    }

    #[test]
    fn twin_classes_are_equivalence_classes(d in arb_digraph(7)) {
        let (p, _) = twin_classes(&d);
        let idx = p.validate(d.vertex_count()).unwrap();
        for u in 0..d.vertex_count() {
            for v in 0..d.vertex_count() {
                let twins = d.out_neighbors(u) == d.out_neighbors(v)
                    && d.in_neighbors(u) == d.in_neighbors(v);
                prop_assert_eq!(twins, idx[u] == idx[v]);
            }
        }
    }

    #[test]
    fn product_set_is_associative(
        a in proptest::collection::btree_set(0usize..8, 0..5),
        b in proptest::collection::btree_set(0usize..8, 0..5),
        c in proptest::collection::btree_set(0usize..8, 0..5),
    ) {
        let g = fixtures::dihedral(4);
        let a: Vec<usize> = a.into_iter().collect();
        let b: Vec<usize> = b.into_iter().collect();
        let c: Vec<usize> = c.into_iter().collect();
        let left = product_set(&g, &product_set(&g, &a, &b), &c);
        let right = product_set(&g, &a, &product_set(&g, &b, &c));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn chain_order_matches_plain_closure(
        images in proptest::collection::vec(0usize..5, 5..=5),
        images2 in proptest::collection::vec(0usize..5, 5..=5),
    ) {
        // Turn arbitrary index vectors into permutations by ranking.
        let to_perm = |v: &[usize]| {
            let mut order: Vec<usize> = (0..5).collect();
            order.sort_by_key(|&i| (v[i], i));
            let mut images = vec![0; 5];
            for (rank, &i) in order.iter().enumerate() {
                images[i] = rank;
            }
            Perm::new(images)
        };
        let gens = vec![to_perm(&images), to_perm(&images2)];
        let group = PermGroup::new(5, gens.clone());
        let mut elems = std::collections::HashSet::new();
        elems.insert(Perm::identity(5).images().to_vec());
        let mut queue = vec![Perm::identity(5)];
        while let Some(p) = queue.pop() {
            for g in &gens {
                let q = p.compose(g);
                if elems.insert(q.images().to_vec()) {
                    queue.push(q);
                }
            }
        }
        prop_assert_eq!(group.order(), num_bigint::BigUint::from(elems.len()));
    }

    #[test]
    fn stabilizer_dominates_and_left_translations_preserve_cayley(
        bits in 0u32..256,
    ) {
        let g = fixtures::quaternion();
        let s: Vec<usize> = (1..8).filter(|&x| bits >> (x - 1) & 1 == 1).collect();
        let s = canonical_set(s);
        let k = max_two_sided_stabilizer(&g, &s);
        let ksk = product_set(&g, k.members(), &product_set(&g, &s, k.members()));
        prop_assert_eq!(&ksk, &s);
        for l in subgroups(&g).unwrap() {
            let lsl = product_set(&g, l.members(), &product_set(&g, &s, l.members()));
            if lsl == s {
                prop_assert!(l.is_subset_of(&k));
            }
        }
        let d = cayley(&CayleySpec::new(g.clone(), &s).unwrap());
        for a in 0..8 {
            prop_assert!(is_automorphism(&d, &g.left_translation(a)));
        }
    }

    #[test]
    fn aut_generators_preserve_arcs(d in arb_digraph(6)) {
        let aut = aut_bruteforce(&d).unwrap();
        for gen in aut.group.generators() {
            prop_assert!(is_automorphism(&d, gen));
        }
    }

    #[test]
    fn join_of_fiber_members_fixes_connection_set(bits in 0u32..2048) {
        let g = fixtures::cyclic(12);
        let s: Vec<usize> = (1..12).filter(|&x| bits >> (x - 1) & 1 == 1).collect();
        let k = max_two_sided_stabilizer(&g, &s);
        // every pair of subgroups of K joins inside K
        let subs = subgroups(&g).unwrap();
        let fiber: Vec<_> = subs.iter().filter(|h| h.is_subset_of(&k)).collect();
        for a in &fiber {
            for b in &fiber {
                let seed: Vec<usize> =
                    a.members().iter().chain(b.members()).copied().collect();
                let j = subgroup_generated(&g, &seed);
                prop_assert!(j.is_subset_of(&k));
            }
        }
    }
}
