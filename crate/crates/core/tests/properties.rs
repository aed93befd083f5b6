//! Randomized invariants: algebraic identities on imsets, move behavior,
//! and orbit structure, over small ground sets.

use imsets::{
    brute_force_fiber, semi_elementary, split_identity_check, Imset, Limits, RepGrid, Triplet,
    VarSet,
};
use proptest::prelude::*;

fn disjoint_quadruple(n: usize) -> impl Strategy<Value = [VarSet; 4]> {
    proptest::collection::vec(0..5usize, n).prop_map(|roles| {
        let mut sets = [VarSet::EMPTY; 4];
        for (i, &r) in roles.iter().enumerate() {
            if r < 4 {
                sets[r] = sets[r].with(i);
            }
        }
        sets
    })
}

fn small_imset(n: usize) -> impl Strategy<Value = Imset> {
    proptest::collection::vec(-3i64..=3, 1 << n).prop_map(move |vals| {
        let mut u = Imset::zero(n);
        for (bits, v) in vals.into_iter().enumerate() {
            u.bump(VarSet::from_bits(bits as u32), v);
        }
        u
    })
}

proptest! {
    #[test]
    fn split_identity_random(sets in disjoint_quadruple(6)) {
        prop_assert!(split_identity_check(6, sets[0], sets[1], sets[2], sets[3]).unwrap());
    }

    #[test]
    fn imset_algebra(f in small_imset(4), g in small_imset(4), k in -4i64..=4) {
        let sum = f.add(&g).unwrap();
        prop_assert_eq!(sum.value(VarSet::from_bits(5)), f.value(VarSet::from_bits(5)) + g.value(VarSet::from_bits(5)));
        // inner product is bilinear in the scalar
        prop_assert_eq!(f.scale(k).inner_product(&g).unwrap(), k * f.inner_product(&g).unwrap());
        // cancellation prunes to the zero imset
        prop_assert!(f.add(&f.scale(-1)).unwrap().is_zero());
    }

    #[test]
    fn semi_elementary_symmetry(sets in disjoint_quadruple(6)) {
        let [a, b, c, _] = sets;
        let lhs = semi_elementary(6, &Triplet::new(a, b, c).unwrap());
        let rhs = semi_elementary(6, &Triplet::new(b, a, c).unwrap());
        prop_assert_eq!(lhs, rhs);
    }
}

/// Pools of small fibers shared by the randomized grid properties.
fn pool() -> &'static Vec<Vec<RepGrid>> {
    use std::sync::OnceLock;
    static POOL: OnceLock<Vec<Vec<RepGrid>>> = OnceLock::new();
    POOL.get_or_init(|| {
        let limits = Limits::default();
        [(2, 2), (2, 3), (3, 3)]
            .iter()
            .map(|&(na, nb)| brute_force_fiber(na, nb, &limits).unwrap())
            .collect()
    })
}

proptest! {
    #[test]
    fn moves_preserve_sum_and_invert(which in 0..3usize, pick in any::<prop::sample::Index>(), mv in any::<prop::sample::Index>()) {
        let fiber = &pool()[which];
        let g = &fiber[pick.index(fiber.len())];
        let moves = g.available_moves();
        prop_assume!(!moves.is_empty());
        let m = moves[mv.index(moves.len())];
        let h = g.apply_move(m).unwrap();
        prop_assert!(h.validate());
        prop_assert_eq!(h.sum(), g.sum());
        prop_assert_eq!(&h.apply_move(m).unwrap(), g);
    }

    #[test]
    fn canonical_constant_on_orbits(which in 0..3usize, pick in any::<prop::sample::Index>(), seed in any::<u64>()) {
        let fiber = &pool()[which];
        let g = &fiber[pick.index(fiber.len())];
        let (na, nb) = g.dims();
        // a pseudo-random relabeling pair derived from the seed
        let perm = |n: usize, mut s: u64| -> Vec<usize> {
            let mut p: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                p.swap(i, (s >> 33) as usize % (i + 1));
            }
            p
        };
        let r = g.relabel(&perm(na, seed), &perm(nb, seed ^ 0x9e3779b97f4a7c15)).unwrap();
        prop_assert_eq!(r.canonical_representative(), g.canonical_representative());
    }

    #[test]
    fn relabeling_orbits_are_free(which in 0..3usize, pick in any::<prop::sample::Index>()) {
        use itertools::Itertools;
        let fiber = &pool()[which];
        let g = &fiber[pick.index(fiber.len())];
        let (na, nb) = g.dims();
        let mut seen = std::collections::BTreeSet::new();
        for pa in (0..na).permutations(na) {
            for pb in (0..nb).permutations(nb) {
                seen.insert(g.relabel(&pa, &pb).unwrap().cell_key());
            }
        }
        let fact = |n: usize| (1..=n).product::<usize>();
        prop_assert_eq!(seen.len(), fact(na) * fact(nb));
    }
}
