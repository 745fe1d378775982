use std::collections::BTreeSet;

use liecascade_core::cascade::cascade;
use liecascade_core::centralizer::subpair;
use liecascade_core::field::{q, qi, Field, Gaussian};
use liecascade_core::matrix_model::{
    cayley_transform, inverse_cayley_transform, minimal_cayley_triple, random_p_element, GMatrix,
    SoPair,
};
use liecascade_core::orbits::{
    characteristic, enumerate_dyo, enumerate_yd, forget_signs, is_even, Ambient, Numeral,
    SignedYoungDiagram,
};
use liecascade_core::parabolic::AbelianParabolic;
use liecascade_core::{CartanType, Family, Matrix, RootSystem};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn small_types() -> Vec<CartanType> {
    let mut v = Vec::new();
    for n in 1..=6 {
        v.push(CartanType::new(Family::A, n).unwrap());
    }
    for n in 2..=6 {
        v.push(CartanType::new(Family::B, n).unwrap());
        v.push(CartanType::new(Family::C, n).unwrap());
    }
    for n in 4..=6 {
        v.push(CartanType::new(Family::D, n).unwrap());
    }
    for (f, n) in [
        (Family::E, 6),
        (Family::E, 7),
        (Family::F, 4),
        (Family::G, 2),
    ] {
        v.push(CartanType::new(f, n).unwrap());
    }
    v
}

fn diagram(p: usize, idx: usize) -> SignedYoungDiagram {
    let all = enumerate_dyo(p);
    all[idx % all.len()].clone()
}

/// Random real matrix in `so(p,2)`: skew within each block, symmetric across.
fn real_form_element(pair: &SoPair, entries: &[i64]) -> GMatrix {
    let mut m = Matrix::zeros(pair.n, pair.n);
    let mut it = entries.iter().cycle();
    for a in 0..pair.n {
        for b in a + 1..pair.n {
            let v = Gaussian::from_i64(*it.next().unwrap());
            let across = (a < pair.p) != (b < pair.p);
            m.set(a, b, v.clone());
            m.set(b, a, if across { v } else { v.negated() });
        }
    }
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cascade_partitions_positive_roots(ti in 0usize..64, mask in any::<u16>()) {
        let types = small_types();
        let t = types[ti % types.len()];
        let rs = RootSystem::build(t).unwrap();
        let subset: BTreeSet<usize> = (0..t.rank).filter(|i| mask & (1 << i) != 0).collect();
        let entries = cascade(&rs, &subset);
        let pos = rs.positive_roots_in(&subset);
        let mut seen = BTreeSet::new();
        for e in &entries {
            prop_assert!(e.subset.is_subset(&subset));
            prop_assert!(e.gamma.contains(&e.epsilon));
            for r in &e.gamma {
                prop_assert!(seen.insert(r.clone()), "{} in two Gamma sets", r);
            }
        }
        prop_assert_eq!(seen.len(), pos.len());
        for (i, a) in entries.iter().enumerate() {
            for b in &entries[i + 1..] {
                prop_assert!(!rs.is_root(&a.epsilon.add(&b.epsilon)));
                prop_assert!(!rs.is_root(&a.epsilon.sub(&b.epsilon)));
            }
        }
    }

    #[test]
    fn forgetting_signs_gives_a_young_diagram(p in 2usize..14, idx in 0usize..64) {
        let d = diagram(p, idx);
        let f = forget_signs(&d);
        prop_assert!(enumerate_yd(p + 2).iter().any(|y| y.rows == f.diagram.rows));
        prop_assert!(d.max_row() <= 5);
        prop_assert_eq!(d.p(), p);
    }

    #[test]
    fn numeral_swap_keeps_evenness(p in 2usize..14, idx in 0usize..64) {
        let d = diagram(p, idx);
        prop_assume!(!d.numerals.is_empty());
        let swapped: Vec<Numeral> = d
            .numerals
            .iter()
            .map(|n| if *n == Numeral::I { Numeral::II } else { Numeral::I })
            .collect();
        let twin = enumerate_dyo(p).into_iter().find(|e| e.rows == d.rows && e.numerals == swapped);
        prop_assert!(twin.is_some());
        let c = characteristic(&forget_signs(&d).diagram, Ambient::for_size(p + 2)).unwrap();
        let evens: Vec<bool> = c.all().iter().map(|c| is_even(c)).collect();
        prop_assert!(evens.iter().all(|&e| e == evens[0]));
    }

    #[test]
    fn orbit_strings_round_trip(p in 2usize..12, idx in 0usize..64) {
        let d = diagram(p, idx);
        let nums: Vec<String> = d.numerals.iter().map(|n| n.to_string()).collect();
        let shape: Vec<String> = d.shape().iter().map(|r| r.to_string()).collect();
        let s = format!("{}:{}:{}", shape.join(","), d.pattern(), nums.join(","));
        prop_assert_eq!(SignedYoungDiagram::parse(p, &s).unwrap(), d);
    }

    #[test]
    fn cayley_transform_round_trips(p in 2usize..8, second in any::<bool>()) {
        let pair = SoPair::new(p).unwrap();
        let c = minimal_cayley_triple(&pair, if second { Numeral::II } else { Numeral::I });
        let n = cayley_transform(&pair, &c).unwrap();
        let back = inverse_cayley_transform(&pair, &n).unwrap();
        prop_assert_eq!(back.h0, c.h0);
        prop_assert_eq!(back.x0, c.x0);
        prop_assert_eq!(back.y0, c.y0);
    }

    #[test]
    fn phi_is_an_equivariant_homomorphism(p in 2usize..6, a in prop::collection::vec(-4i64..=4, 1..30), b in prop::collection::vec(-4i64..=4, 1..30)) {
        let pair = SoPair::new(p).unwrap();
        let x = real_form_element(&pair, &a);
        let y = real_form_element(&pair, &b);
        prop_assert!(pair.in_real_form(&x));
        let fx = pair.phi(&x);
        prop_assert!(pair.is_skew(&fx));
        prop_assert_eq!(pair.phi(&x.commutator(&y)), fx.commutator(&pair.phi(&y)));
        prop_assert_eq!(pair.phi(&pair.theta0(&x)), pair.theta(&fx));
        prop_assert_eq!(pair.phi_inverse(&fx), x);
    }

    #[test]
    fn orbit_tangent_and_centralizer_fill_p(p in 2usize..7, seed in any::<u64>()) {
        let pair = SoPair::new(p).unwrap();
        let x = random_p_element(&pair, &mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(pair.k_orbit_tangent_dim(&x) + pair.p_centralizer(&x).len(), pair.dim_p());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn subpair_dimensions_add_up(which in 0usize..4, c in prop::collection::vec((-6i64..=6, 1i64..=3), 3)) {
        let (f, n, node) = [(Family::B, 3, 0), (Family::D, 5, 0), (Family::C, 3, 2), (Family::A, 3, 1)][which];
        let p = AbelianParabolic::maximal(CartanType::new(f, n).unwrap(), node).unwrap();
        let coeffs: Vec<_> = c.iter().take(p.rank()).map(|&(a, b)| q(a, b)).collect();
        prop_assume!(coeffs.iter().any(|x| *x != qi(0)));
        let r = subpair(&p, &p.cartan_element(&coeffs)).unwrap();
        prop_assert_eq!(r.dim_g_x, r.dim_k_x + r.dim_p_x);
        prop_assert_eq!(r.dim_g_x, r.l_dim + r.center_dim);
        prop_assert_eq!(r.l_dim, r.l_plus_dim + r.l_minus_dim);
        prop_assert!(r.r_dim <= r.l_dim);
        prop_assert!(r.dim_p_x >= p.rank());
    }
}
