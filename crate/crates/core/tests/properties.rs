use proptest::prelude::*;

use upoly_core::constructions::{
    build_ab, build_yz, d_transform, pair_difference_holds, d_identity_holds, p_cumulative, phi_upper_bound,
};
use upoly_core::invariants::{u_polynomial, u_rooted, u_rooted_tree, u_tree, w_polynomial, Strategy as Method};
use upoly_core::reconstruction::{enumerate_rooted, read_invariants};
use upoly_core::search::{collision_scan, phi_restricted, Level};
use upoly_core::{CodeMode, Graph, Monomial, Partition, RootedTree, UPolynomial, WeightedGraph};

fn monomial() -> impl Strategy<Value = Monomial> {
    (prop::collection::vec(1u32..6, 0..4), 0u32..3, 0u32..3)
        .prop_map(|(parts, y, z)| Monomial::new(Partition::new(parts).unwrap(), y, z))
}

fn poly() -> impl Strategy<Value = UPolynomial> {
    prop::collection::vec((monomial(), -9i128..10), 0..20).prop_map(UPolynomial::from_terms)
}

fn unrooted_poly() -> impl Strategy<Value = UPolynomial> {
    prop::collection::vec((prop::collection::vec(1u32..6, 0..5), -9i128..10), 0..20).prop_map(|ts| {
        UPolynomial::from_terms(
            ts.into_iter()
                .map(|(p, c)| (Monomial::new(Partition::new(p).unwrap(), 0, 0), c)),
        )
    })
}

prop_compose! {
    fn tree(max_n: usize)(picks in prop::collection::vec(any::<u32>(), 0..max_n), root in any::<u32>()) -> RootedTree {
        let n = picks.len() + 1;
        let parent = (0..n).map(|i| (i > 0).then(|| picks[i - 1] as usize % i)).collect();
        let t = RootedTree::from_parents(parent).unwrap();
        t.reroot(root as usize % n).unwrap()
    }
}

prop_compose! {
    fn multigraph()(n in 1usize..=5)(n in Just(n), edges in prop::collection::vec((0..n, 0..n), 0..8)) -> Graph {
        Graph::new(n, edges).unwrap()
    }
}

fn code(t: &RootedTree) -> String {
    t.canonical_form(CodeMode::Rooted).to_string()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn division_inverts_multiplication(a in poly(), b in poly()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).exact_divide(&b).unwrap(), a);
    }

    #[test]
    fn star_is_linear(a in poly(), b in poly(), c in -5i128..6) {
        prop_assert_eq!((&a + &b).star_specialize(), a.star_specialize() + b.star_specialize());
        prop_assert_eq!(a.scale(c).star_specialize(), a.star_specialize().scale(c));
    }

    #[test]
    fn truncations_compose(p in unrooted_poly(), a in 0usize..6, b in 0usize..6) {
        let twice = p.truncate_length(a).unwrap().truncate_length(b).unwrap();
        prop_assert_eq!(twice, p.truncate_length(a.min(b)).unwrap());
    }

    #[test]
    fn join_commutes_and_associates(g in tree(6), h in tree(6), k in tree(6)) {
        prop_assert_eq!(code(&g.join(&h)), code(&h.join(&g)));
        prop_assert_eq!(code(&g.join(&h).join(&k)), code(&g.join(&h.join(&k))));
        prop_assert_eq!(g.join(&h).vertex_count(), g.vertex_count() + h.vertex_count() - 1);
    }

    #[test]
    fn product_formulas(g in tree(7), h in tree(7)) {
        let (rg, rh) = (u_rooted_tree(&g), u_rooted_tree(&h));
        let join = u_rooted(&g.join(&h).to_rooted_graph(), Method::Subset).unwrap();
        prop_assert_eq!(join, (&rg * &rh).div_z().unwrap());
        let concat = u_rooted(&g.concat(&h).to_rooted_graph(), Method::Subset).unwrap();
        prop_assert_eq!(concat, &rg * &(&rh + &rh.star_specialize()));
    }

    #[test]
    fn w_matches_u(g in multigraph()) {
        prop_assert_eq!(w_polynomial(&WeightedGraph::unit(g.clone())).unwrap(), u_polynomial(&g).unwrap());
    }

    #[test]
    fn d_identity(t in tree(6), i in 0usize..=2) {
        prop_assert!(d_identity_holds(i, &t).unwrap());
    }

    #[test]
    fn branches_multiply(t in tree(9)) {
        prop_assume!(t.root_degree() > 1);
        let whole = u_rooted_tree(&t).div_z().unwrap();
        let product: UPolynomial = t.branches().iter().map(|b| u_rooted_tree(b).div_z().unwrap()).product();
        prop_assert_eq!(whole, product);
    }
}

#[test]
fn vertex_count_and_root_degree_are_readable() {
    for n in 1..=10 {
        for t in enumerate_rooted(n).unwrap() {
            assert_eq!(read_invariants(&u_rooted_tree(&t)).unwrap(), (n, t.root_degree()));
        }
    }
}

#[test]
fn family_products_have_long_terms() {
    for k in 0..=4 {
        assert!(p_cumulative(k).unwrap().min_length().unwrap() >= k);
    }
    let (a1, _) = build_ab(1).unwrap();
    assert!(d_transform(&a1).min_length().unwrap() >= 2);
}

#[test]
fn pair_difference_identity() {
    for k in 0..=2 {
        for l in 0..=2 {
            assert!(pair_difference_holds(k, l).unwrap(), "({k},{l})");
            let (y, z) = build_yz(k, l).unwrap();
            let diff = u_tree(&y) - u_tree(&z);
            assert!(diff.min_length().unwrap() >= k + l + 4, "({k},{l})");
        }
    }
}

#[test]
fn collisions_persist_at_lower_levels() {
    let upper = collision_scan(10, Level::Truncated(2)).unwrap();
    assert!(!upper.is_empty());
    for rec in upper {
        let lower = collision_scan(rec.n, Level::Truncated(1)).unwrap();
        let covered = lower
            .iter()
            .any(|r| r.n == rec.n && rec.members.iter().all(|m| r.members.contains(m)));
        assert!(covered, "{:?}", rec.members);
    }
}

#[test]
fn restricted_phi_respects_the_bound() {
    for m in 0..=3 {
        let found = phi_restricted(m, 12).unwrap();
        if let Ok(bound) = phi_upper_bound(m) {
            if bound <= 12 {
                assert!(found.unwrap() as u64 <= bound, "m = {m}");
            }
        }
    }
}

#[test]
fn collision_members_are_distinct() {
    for rec in collision_scan(11, Level::Truncated(2)).unwrap() {
        assert!(rec.members.len() >= 2);
        let mut sorted = rec.members.clone();
        sorted.dedup();
        assert_eq!(sorted.len(), rec.members.len());
    }
}
