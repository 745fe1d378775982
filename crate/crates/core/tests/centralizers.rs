use std::collections::BTreeSet;

use liecascade_core::centralizer::{
    commuting_nilpotent_witness, nonregular_locus, restricted_hyperplanes, special_strata, subpair,
    PairKind,
};
use liecascade_core::field::qi;
use liecascade_core::parabolic::AbelianParabolic;
use liecascade_core::{CartanType, Family, Root, Q};

fn pair(f: Family, n: usize, node: usize) -> AbelianParabolic {
    AbelianParabolic::maximal(CartanType::new(f, n).unwrap(), node).unwrap()
}

fn entry_index(p: &AbelianParabolic, subset: &[usize]) -> usize {
    let want: BTreeSet<usize> = subset.iter().copied().collect();
    p.e_set.iter().position(|e| e.subset == want).unwrap()
}

fn root(c: &[i64]) -> Root {
    Root::new(c.to_vec())
}

/// Lines of the restricted-root arrangement in the plane `μ X_{K1} + λ X_{K2}`.
fn arrangement_lines(p: &AbelianParabolic) -> Vec<[i64; 2]> {
    let mut out: Vec<[i64; 2]> = restricted_hyperplanes(p)
        .into_iter()
        .map(|v| {
            // μ v0 + λ v1 = 0  →  [λ:μ] = [v0 : -v1]
            let (mut l, mut m) = (v[0], -v[1]);
            if l < 0 || (l == 0 && m < 0) {
                l = -l;
                m = -m;
            }
            [l, m]
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

#[test]
fn d5_first_node_dimensions() {
    let p = pair(Family::D, 5, 0);
    let loc = nonregular_locus(&p, 0, 1).unwrap();
    assert_eq!(loc.special_lines, vec![[0, 1], [1, -1], [1, 0], [1, 1]]);
    let mut seen = Vec::new();
    for [l, m] in loc.special_lines {
        let rep = subpair(&p, &p.cartan_element(&[qi(m), qi(l)])).unwrap();
        seen.push((
            rep.dim_g_x,
            rep.l_dim,
            rep.center_dim,
            rep.l_type_label.clone(),
        ));
    }
    seen.sort();
    assert_eq!(
        seen,
        vec![
            (19, 18, 1, "A1xA3".to_string()),
            (19, 18, 1, "A1xA3".to_string()),
            (29, 28, 1, "D4".to_string()),
            (29, 28, 1, "D4".to_string())
        ]
    );
}

#[test]
fn e6_first_node_semisimple_part() {
    let p = pair(Family::E, 6, 0);
    let k = entry_index(&p, &[0, 2, 3, 4, 5]);
    let rep = subpair(&p, &p.cartan_subspace[k]).unwrap();
    assert_eq!(rep.l_type_label, "A5");
    assert_eq!(rep.dim_g_x, rep.dim_k_x + rep.dim_p_x);
}

#[test]
fn locus_matches_restricted_root_arrangement() {
    let cases = [
        (Family::B, 3, 0),
        (Family::B, 5, 0),
        (Family::D, 4, 0),
        (Family::D, 6, 0),
        (Family::C, 2, 1),
        (Family::A, 4, 1),
        (Family::A, 5, 1),
        (Family::D, 5, 4),
        (Family::E, 6, 0),
    ];
    for (f, n, node) in cases {
        let p = pair(f, n, node);
        let loc = nonregular_locus(&p, 0, 1).unwrap();
        assert_eq!(
            loc.special_lines,
            arrangement_lines(&p),
            "{f:?}{n} node {node}"
        );
        assert!(loc.irrational_factor.is_none());
    }
}

#[test]
fn locus_rejects_other_ranks() {
    assert!(nonregular_locus(&pair(Family::C, 3, 2), 0, 1).is_err());
    assert!(nonregular_locus(&pair(Family::A, 3, 0), 0, 0).is_err());
}

#[test]
fn special_lines_of_b_and_d_are_so_rank_one() {
    let mut cases: Vec<(Family, usize)> = (2..=8).map(|n| (Family::B, n)).collect();
    cases.extend((4..=8).map(|n| (Family::D, n)));
    for (f, n) in cases {
        let p = pair(f, n, 0);
        let loc = nonregular_locus(&p, 0, 1).unwrap();
        assert_eq!(loc.special_lines.len(), 4);
        for [l, m] in loc.special_lines {
            let rep = subpair(&p, &p.cartan_element(&[qi(m), qi(l)])).unwrap();
            assert!(!rep.p_regular);
            let factors = rep.r_factors();
            assert!(!factors.is_empty());
            for fac in factors {
                assert!(
                    matches!(fac.kind, Some(PairKind::SoRankOne { .. })),
                    "{f:?}{n} [{l}:{m}]: {:?}",
                    rep.r_pair_label
                );
            }
        }
    }
}

#[test]
fn e7_special_strata_classification() {
    // Restricted roots of this pair are ±2e_i (multiplicity 1) and ±e_i±e_j (multiplicity 8),
    // with dim 𝔪 = 79 - 51 = 28. On |c1| = |c2| = |c3| the vanishing roots form an A2 of
    // multiplicity 8, so dim 𝔤^X = 28 + 3 + 6·8 = 79 and (𝔯, 𝔯₊) = (E6, F4). Everywhere else
    // the factors are of so type.
    let p = pair(Family::E, 7, 6);
    let strata = special_strata(&p, 7);
    assert_eq!(strata.len(), 22);
    let mut e6_lines = 0;
    for s in &strata {
        let rep = subpair(&p, &p.cartan_element(&s.sample_q)).unwrap();
        assert!(!rep.p_regular);
        let c: Vec<Q> = s
            .sample_q
            .iter()
            .map(|x| {
                if *x < Q::from_integer(0.into()) {
                    -x
                } else {
                    x.clone()
                }
            })
            .collect();
        if c[0] == c[1] && c[1] == c[2] {
            e6_lines += 1;
            assert_eq!(rep.dim_g_x, 79);
            assert_eq!(rep.l_type_label, "E6");
            assert_eq!(rep.r_pair_label, "(E6, F4)");
        } else {
            let factors = rep.r_factors();
            assert!(!factors.is_empty());
            for f in factors {
                assert!(
                    matches!(
                        f.kind,
                        Some(PairKind::SoRankOne { .. } | PairKind::SoRankTwo { .. })
                    ),
                    "{:?}: {}",
                    s.hyperplanes,
                    rep.r_pair_label
                );
            }
        }
    }
    assert_eq!(e6_lines, 4);
}

#[test]
fn generic_points_are_regular() {
    let p = pair(Family::E, 7, 6);
    let rep = subpair(
        &p,
        &p.cartan_element(&[Q::new(3.into(), 2.into()), qi(5), qi(-7)]),
    )
    .unwrap();
    assert!(rep.p_regular);
    assert_eq!(rep.r_pair_label, "trivial");
}

#[test]
fn commuting_nilpotent_witnesses() {
    // (A_n, α2): K = {α2..α_{n-1}}
    for n in 4..=7 {
        let p = pair(Family::A, n, 1);
        let k = entry_index(&p, &(1..n - 1).collect::<Vec<_>>());
        let top = p.root_system().highest_root();
        let mut b = vec![0; n];
        b[0] = 1;
        b[1] = 1;
        let w = commuting_nilpotent_witness(&p, k, [&top, &root(&b)]).unwrap();
        assert!(w.holds(), "A{n}: {w:?}");
        let rep = subpair(&p, &p.cartan_subspace[k]).unwrap();
        assert!(rep.dim_p_x > p.rank());
    }
    // (D5, α5): K = {α3, α4, α5}
    let p = pair(Family::D, 5, 4);
    let k = entry_index(&p, &[2, 3, 4]);
    let top = p.root_system().highest_root();
    let w = commuting_nilpotent_witness(&p, k, [&top, &root(&[1, 1, 1, 0, 1])]).unwrap();
    assert!(w.holds(), "{w:?}");
    // (E6, α1): K = Π∖{α2}
    let p = pair(Family::E, 6, 0);
    let k = entry_index(&p, &[0, 2, 3, 4, 5]);
    let top = p.root_system().highest_root();
    let w = commuting_nilpotent_witness(&p, k, [&top, &root(&[1, 1, 1, 1, 0, 0])]).unwrap();
    assert!(w.holds(), "{w:?}");
}

#[test]
fn a_series_second_node_semisimple_part() {
    // H_{ε_K} = E_22 - E_nn in gl_{n+1}: eigenvalues 1, -1 and 0 with multiplicity n-1,
    // so the centralizer is s(gl_1 × gl_1 × gl_{n-1}).
    for n in 4..=7 {
        let p = pair(Family::A, n, 1);
        let k = entry_index(&p, &(1..n - 1).collect::<Vec<_>>());
        let rep = subpair(&p, &p.cartan_subspace[k]).unwrap();
        assert_eq!(rep.dim_g_x, (n - 1) * (n - 1) + 1);
        assert_eq!(rep.l_type_label, format!("A{}", n - 2));
        assert_eq!(
            rep.r_pair_label,
            format!("(sl_{}, sl_{} x C)", n - 1, n - 2)
        );
    }
}
