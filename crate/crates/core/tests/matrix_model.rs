use liecascade_core::field::{q, Field, Gaussian};
use liecascade_core::linalg::Matrix;
use liecascade_core::matrix_model::*;
use liecascade_core::orbits::{enumerate_dyo, is_even, Numeral, Sign, SignedYoungDiagram};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// `dim ker X^k ∩ V₊` read off the diagram: plus boxes among the last `k` of each row.
/// The second row of each pair of equal even rows carries the opposite signs.
fn kernel_plus_counts(d: &SignedYoungDiagram, kmax: usize) -> Vec<usize> {
    let mut flip_next = std::collections::HashMap::new();
    let mut rows: Vec<Vec<Sign>> = Vec::new();
    for r in &d.rows {
        let mut s = r.signs();
        if r.len % 2 == 0 {
            let f = flip_next.entry(r.len).or_insert(false);
            if *f {
                s = s.into_iter().map(Sign::flip).collect();
            }
            *f = !*f;
        }
        rows.push(s);
    }
    (1..=kmax)
        .map(|k| {
            rows.iter()
                .map(|s| s.iter().rev().take(k).filter(|&&x| x == Sign::Plus).count())
                .sum()
        })
        .collect()
}

fn kernel_plus_counts_matrix(pair: &SoPair, x: &GMatrix, kmax: usize) -> Vec<usize> {
    // ker X^k ∩ V₊ = kernel of X^k restricted to the first p coordinates
    (1..=kmax)
        .map(|k| {
            let xk = x.pow(k);
            let cols: Vec<Vec<Gaussian>> = (0..pair.p).map(|j| xk.col(j)).collect();
            pair.p - Matrix::from_cols(pair.n, &cols).rank()
        })
        .collect()
}

fn jordan_type(x: &GMatrix) -> Vec<usize> {
    let n = x.rows();
    let ranks: Vec<usize> = (0..=n + 1).map(|k| x.pow(k).rank()).collect();
    // number of blocks of size ≥ k is rank(X^{k-1}) - rank(X^k)
    let ge: Vec<usize> = (1..=n + 1).map(|k| ranks[k - 1] - ranks[k]).collect();
    let mut rows = Vec::new();
    for k in 1..=n {
        let exact = ge[k - 1] - ge[k];
        rows.extend(std::iter::repeat_n(k, exact));
    }
    rows.sort_unstable_by(|a, b| b.cmp(a));
    rows
}

#[test]
fn representatives_realize_their_diagrams() {
    for p in 2..=7 {
        let pair = SoPair::new(p).unwrap();
        for d in enumerate_dyo(p) {
            let x = orbit_representative(&pair, &d).unwrap();
            assert!(pair.in_p(&x), "{d}");
            assert!(x.is_nilpotent(), "{d}");
            assert_eq!(jordan_type(&x), d.shape(), "{d}");
            let m = d.max_row();
            assert_eq!(
                kernel_plus_counts_matrix(&pair, &x, m),
                kernel_plus_counts(&d, m),
                "{d}"
            );
        }
    }
}

#[test]
fn characteristics_match_recipe() {
    for p in 2..=8 {
        let pair = SoPair::new(p).unwrap();
        for d in enumerate_dyo(p) {
            let c = characteristic_check(&pair, &d).unwrap();
            assert!(
                c.agrees,
                "{d}: computed {} recipe {:?}",
                c.computed, c.recipe
            );
        }
    }
}

#[test]
fn very_even_numerals_give_both_characteristics() {
    // (2,2) in so_4 and (2,2,2,2) in so_8 each carry two numerals
    // only (2,2) in so_4 is very even with signature (p, 2)
    for (p, shape) in [(2, vec![2, 2])] {
        let pair = SoPair::new(p).unwrap();
        let mut seen = Vec::new();
        for d in enumerate_dyo(p).into_iter().filter(|d| d.shape() == shape) {
            seen.push(characteristic_check(&pair, &d).unwrap().computed);
        }
        seen.sort_by(|a, b| a.entries.cmp(&b.entries));
        seen.dedup();
        assert_eq!(seen.len(), 2, "p = {p}");
    }
}

#[test]
fn minimal_orbit_witnesses() {
    for p in 3..=6 {
        for numeral in [Numeral::I, Numeral::II] {
            let w = minimal_orbit_not_distinguished(p, numeral).unwrap();
            assert!(w.holds(), "p = {p} {numeral}");
            // agrees with the chain representative of (2,2,1,..)
            let pair = SoPair::new(p).unwrap();
            let d = enumerate_dyo(p)
                .into_iter()
                .find(|d| d.shape().starts_with(&[2, 2, 1]) && d.numerals == [numeral])
                .unwrap();
            let c = characteristic_check(&pair, &d).unwrap();
            assert!(c.recipe.contains(&w.characteristic));
            assert_eq!(pair.p_centralizer(&w.x.entries).len(), c.dim_p_x);
        }
    }
}

#[test]
fn cayley_round_trip() {
    for p in 3..=6 {
        let pair = SoPair::new(p).unwrap();
        for numeral in [Numeral::I, Numeral::II] {
            let c = minimal_cayley_triple(&pair, numeral);
            let t = cayley_transform(&pair, &c).unwrap();
            assert_eq!(inverse_cayley_transform(&pair, &t).unwrap(), c);
        }
    }
}

#[test]
fn even_orbits_lie_in_sheets() {
    let lambdas = [q(0, 1), q(1, 1), q(2, 1), q(3, 1), q(-1, 2)];
    let mut checked = 0;
    for p in 2..=6 {
        let pair = SoPair::new(p).unwrap();
        for d in enumerate_dyo(p) {
            let x = orbit_representative(&pair, &d).unwrap();
            if x.is_zero() {
                continue;
            }
            let t = normal_triple_for(&pair, &x).unwrap();
            let c = characteristic_from_h(&pair, &t.h).unwrap();
            match even_sheet_witness(&pair, &t, &lambdas) {
                Ok(r) => {
                    assert!(is_even(&c));
                    assert!(r.holds, "{d}");
                    checked += 1;
                }
                Err(ModelError::NotEven(_)) => assert!(!is_even(&c)),
                Err(e) => panic!("{d}: {e}"),
            }
        }
    }
    assert!(checked > 0);
}

#[test]
fn semisimple_parts_stay_on_the_line() {
    let mut rng = ChaCha8Rng::seed_from_u64(51);
    for p in 3..=6 {
        let pair = SoPair::new(p).unwrap();
        for t in 0..4 {
            let x = random_admissible_element(&pair, &mut rng).unwrap();
            let r = semisimple_part_check(&pair, &x, 5, 1000 + t);
            assert!(r.admissible, "{:?}", r.reason);
            assert!(r.holds(), "p = {p}");
        }
    }
    // nilpotent and semisimple inputs are rejected as inadmissible
    let pair = SoPair::new(3).unwrap();
    let h = pair.cartan_h(1);
    assert!(!semisimple_part_check(&pair, &h, 1, 0).admissible);
    let d = SignedYoungDiagram::parse(3, "3,1,1").unwrap_or_else(|_| enumerate_dyo(3)[1].clone());
    let x = orbit_representative(&pair, &d).unwrap();
    assert!(!semisimple_part_check(&pair, &x, 1, 0).admissible);
}

#[test]
fn tangent_dimension_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for p in 2..=6 {
        let pair = SoPair::new(p).unwrap();
        let mut samples = vec![
            random_p_element(&pair, &mut rng),
            pair.cartan_h(1),
            Matrix::zeros(pair.n, pair.n),
        ];
        for d in enumerate_dyo(p) {
            let k = random_k_element(&pair, &mut rng);
            samples.push(conjugate(&k, &orbit_representative(&pair, &d).unwrap()));
        }
        if p >= 3 {
            samples.push(random_admissible_element(&pair, &mut rng).unwrap());
        }
        for x in samples {
            assert!(pair.in_p(&x));
            assert_eq!(
                pair.k_orbit_tangent_dim(&x) + pair.p_centralizer(&x).len(),
                pair.dim_p()
            );
        }
    }
}

#[test]
fn wrong_inputs_are_rejected() {
    let pair = SoPair::new(3).unwrap();
    assert_eq!(
        normal_triple_for(&pair, &Matrix::zeros(5, 5)),
        Err(ModelError::Zero)
    );
    assert_eq!(
        normal_triple_for(&pair, &pair.cartan_h(1)),
        Err(ModelError::NotNilpotent)
    );
    let k = pair.skew_unit(0, 1);
    assert!(matches!(
        normal_triple_for(&pair, &k),
        Err(ModelError::WrongSpace { .. })
    ));
    let mut bad = Matrix::zeros(5, 5);
    bad.set(0, 1, Gaussian::one());
    assert_eq!(pair.element(bad), Err(ModelError::NotSkew));
}
