//! Subpairs `(𝔯, 𝔯₊)` attached to semisimple elements of the cascade Cartan subspace,
//! type identification of the semisimple part, and the non-regular locus.
//!
//! Identification works by conjugating `X = Σ c_K X_K` to the toral element
//! `H_X = Σ c_K H_{ε_K}` with the explicit automorphism
//! `C = Π_K exp(ad X_{-ε_K}) exp(ad(-X_{ε_K}/2))`, which sends `H_{ε_K}` to `X_K`.
//! The root system of `𝔤^{H_X}` is read off combinatorially, and every step is
//! certified against the directly computed centralizer before a label is reported.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::chevalley::{ChevalleyAlgebra, LieElement};
use crate::field::{fmt_q, q, Field, Q};
use crate::linalg::{Echelon, Matrix};
use crate::parabolic::AbelianParabolic;
use crate::poly::{rational_roots, Poly};
use crate::root_system::{Family, Root, RootSystem};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CentralizerError {
    #[error("element is not in the span of the cascade Cartan subspace")]
    NotInCartan,
    #[error("element is not ad-semisimple")]
    NotSemisimple,
    #[error("non-regular locus needs a rank-2 pair, this one has rank {0}")]
    NotRankTwo(usize),
    #[error("index {0} is not a member of 𝓔")]
    BadIndex(usize),
    #[error("generic centralizer dimension {got} differs from the rank {rank}")]
    GenericRank { got: usize, rank: usize },
}

/// A simple Lie type such as `A3` or `B2`, normalized by its Dynkin diagram.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub struct SimpleType {
    pub family: Family,
    pub rank: usize,
}

impl std::fmt::Display for SimpleType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let c = match self.family {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        };
        write!(f, "{c}{}", self.rank)
    }
}

fn st(family: Family, rank: usize) -> SimpleType {
    SimpleType { family, rank }
}

/// Simple factors of `so_N` with the low-rank conventions (`so_3 = A1`, `so_4 = A1×A1`,
/// `so_5 = B2`, `so_6 = A3`).
pub fn so_types(n: usize) -> Vec<SimpleType> {
    match n {
        0..=2 => vec![],
        3 => vec![st(Family::A, 1)],
        4 => vec![st(Family::A, 1), st(Family::A, 1)],
        5 => vec![st(Family::B, 2)],
        6 => vec![st(Family::A, 3)],
        _ if n % 2 == 1 => vec![st(Family::B, n / 2)],
        _ => vec![st(Family::D, n / 2)],
    }
}

fn sp_type(n: usize) -> SimpleType {
    match n {
        1 => st(Family::A, 1),
        2 => st(Family::B, 2),
        _ => st(Family::C, n),
    }
}

/// Structural kind of a classified simple symmetric pair.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum PairKind {
    /// `(so_{m+1}, so_m)`
    SoRankOne {
        m: usize,
    },
    /// `(so_{m+2}, so_m × so_2)`
    SoRankTwo {
        m: usize,
    },
    Other,
}

/// A row of the static rank-one / rank-two classification lists.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ListEntry {
    /// The family template as listed.
    pub template: &'static str,
    /// Instantiated label.
    pub label: String,
    pub rank: usize,
    pub types: Vec<SimpleType>,
    pub dim_plus: usize,
    pub kind: PairKind,
}

/// Rank-one simple symmetric pairs, parameters up to `max_n`.
pub fn rank_one_list(max_n: usize) -> Vec<ListEntry> {
    let mut v = Vec::new();
    for n in 2..=max_n {
        let t = so_types(n + 1);
        v.push(ListEntry {
            template: "(so_{n+1}, so_n)",
            label: format!("(so_{}, so_{})", n + 1, n),
            rank: 1,
            types: t,
            dim_plus: n * (n - 1) / 2,
            kind: PairKind::SoRankOne { m: n },
        });
    }
    for n in 1..=max_n {
        v.push(ListEntry {
            template: "(sl_{n+1}, sl_n x C)",
            label: format!("(sl_{}, sl_{} x C)", n + 1, n),
            rank: 1,
            types: vec![st(Family::A, n)],
            dim_plus: n * n,
            kind: PairKind::Other,
        });
    }
    for n in 2..=max_n {
        // The subalgebra is sp_{2n-2} x sp_2.
        v.push(ListEntry {
            template: "(sp_{2n}, sp_{2n-1} x sp_2)",
            label: format!("(sp_{}, sp_{} x sp_2)", 2 * n, 2 * n - 2),
            rank: 1,
            types: vec![sp_type(n)],
            dim_plus: (n - 1) * (2 * n - 1) + 3,
            kind: PairKind::Other,
        });
    }
    v.push(ListEntry {
        template: "(F4, B4)",
        label: "(F4, B4)".into(),
        rank: 1,
        types: vec![st(Family::F, 4)],
        dim_plus: 36,
        kind: PairKind::Other,
    });
    v
}

/// Rank-two simple symmetric pairs, parameters up to `max_n`.
pub fn rank_two_list(max_n: usize) -> Vec<ListEntry> {
    let mut v = Vec::new();
    for n in 3..=max_n {
        v.push(ListEntry {
            template: "(so_{n+2}, so_n x so_2)",
            label: format!("(so_{}, so_{} x so_2)", n + 2, n),
            rank: 2,
            types: so_types(n + 2),
            dim_plus: n * (n - 1) / 2 + 1,
            kind: PairKind::SoRankTwo { m: n },
        });
    }
    for n in 2..=max_n {
        v.push(ListEntry {
            template: "(sl_{n+2}, sl_n x sl_2 x C)",
            label: format!("(sl_{}, sl_{} x sl_2 x C)", n + 2, n),
            rank: 2,
            types: vec![st(Family::A, n + 1)],
            dim_plus: n * n + 3,
            kind: PairKind::Other,
        });
    }
    let fixed: [(&'static str, SimpleType, usize); 8] = [
        ("(sl_3, so_3)", st(Family::A, 2), 3),
        ("(sl_6, sp_6)", st(Family::A, 5), 21),
        ("(sp_4, sl_2 x C)", st(Family::B, 2), 4),
        ("(so_10, sl_5 x C)", st(Family::D, 5), 25),
        ("(E6, F4)", st(Family::E, 6), 52),
        ("(E6, D5 x C)", st(Family::E, 6), 46),
        ("(G2, A1 x A1)", st(Family::G, 2), 6),
        ("(F4, B4)", st(Family::F, 4), 0),
    ];
    for (label, t, d) in fixed.into_iter().take(7) {
        v.push(ListEntry {
            template: label,
            label: label.into(),
            rank: 2,
            types: vec![t],
            dim_plus: d,
            kind: PairKind::Other,
        });
    }
    for n in 2..=max_n {
        v.push(ListEntry {
            template: "(sp_{2n+4}, sp_{2n} x sp_4)",
            label: format!("(sp_{}, sp_{} x sp_4)", 2 * n + 4, 2 * n),
            rank: 2,
            types: vec![sp_type(n + 2)],
            dim_plus: n * (2 * n + 1) + 10,
            kind: PairKind::Other,
        });
    }
    v
}

/// Look up a θ-stable semisimple ideal by (types, dim of fixed part, rank).
pub fn classify_pair(types: &[SimpleType], dim_plus: usize, rank: usize) -> Option<ListEntry> {
    let mut key: Vec<SimpleType> = types.to_vec();
    key.sort();
    let max_n = 40;
    let lists = if rank == 1 {
        rank_one_list(max_n)
    } else if rank == 2 {
        rank_two_list(max_n)
    } else {
        vec![]
    };
    lists.into_iter().find(|e| {
        let mut t = e.types.clone();
        t.sort();
        t == key && e.dim_plus == dim_plus
    })
}

/// Decompose a closed root subsystem (given by its roots) into simple components.
pub fn classify_subsystem(rs: &RootSystem, roots: &[Root]) -> Vec<(SimpleType, Vec<Root>)> {
    let pos: Vec<Root> = roots.iter().filter(|r| r.is_positive()).cloned().collect();
    let posset: BTreeSet<&Root> = pos.iter().collect();
    let simple: Vec<Root> = pos
        .iter()
        .filter(|a| !pos.iter().any(|b| posset.contains(&a.sub(b))))
        .cloned()
        .collect();
    // components of the simple system
    let mut comps: Vec<Vec<Root>> = Vec::new();
    let mut left = simple.clone();
    while let Some(s) = left.pop() {
        let mut comp = vec![s];
        let mut i = 0;
        while i < comp.len() {
            let cur = comp[i].clone();
            let (adj, rest): (Vec<Root>, Vec<Root>) = left
                .into_iter()
                .partition(|b| rs.inner6(&b.coords, &cur.coords) != 0);
            left = rest;
            comp.extend(adj);
            i += 1;
        }
        comps.push(comp);
    }
    let mut out: Vec<(SimpleType, Vec<Root>)> = comps
        .into_iter()
        .map(|mut simples| {
            simples.sort();
            let r = simples.len();
            let members: Vec<&Root> = pos
                .iter()
                .filter(|b| simples.iter().any(|s| rs.inner6(&b.coords, &s.coords) != 0))
                .collect();
            let n = members.len();
            let max6 = members
                .iter()
                .map(|b| rs.inner6(&b.coords, &b.coords))
                .max()
                .unwrap();
            let long = members
                .iter()
                .filter(|b| rs.inner6(&b.coords, &b.coords) == max6)
                .count();
            let t = if long == n {
                match (r, n) {
                    (6, 36) => st(Family::E, 6),
                    (7, 63) => st(Family::E, 7),
                    (8, 120) => st(Family::E, 8),
                    _ if n == r * (r + 1) / 2 => st(Family::A, r),
                    _ => st(Family::D, r),
                }
            } else if r == 2 && n == 6 {
                st(Family::G, 2)
            } else if r == 4 && n == 24 {
                st(Family::F, 4)
            } else if long == r * (r - 1) {
                st(Family::B, r)
            } else {
                st(Family::C, r)
            };
            (t, simples)
        })
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
    out
}

/// Join simple types as `A1xA3`, or `0` for none.
pub fn types_label(types: &[SimpleType]) -> String {
    if types.is_empty() {
        return "0".into();
    }
    let mut t = types.to_vec();
    t.sort();
    t.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join("x")
}

/// A θ-stable ideal of `𝔩` and its classification.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct IdealReport {
    pub types: Vec<SimpleType>,
    pub dim: usize,
    pub dim_plus: usize,
    pub dim_minus: usize,
    pub rank: usize,
    pub label: Option<String>,
    pub kind: Option<PairKind>,
}

/// Centralizer data for one `X ∈ 𝔞`.
#[derive(Clone, Debug, Serialize)]
pub struct SubpairReport {
    /// Coefficients of `X` on the `X_K`, as `"a/b"` strings.
    pub x: Vec<String>,
    pub dim_g_x: usize,
    pub dim_k_x: usize,
    pub dim_p_x: usize,
    pub l_dim: usize,
    pub center_dim: usize,
    pub l_plus_dim: usize,
    pub l_minus_dim: usize,
    pub r_dim: usize,
    pub r_plus_dim: usize,
    /// Simple components of `𝔩`, or `None` when identification could not be certified.
    pub l_type: Option<Vec<SimpleType>>,
    pub l_type_label: String,
    pub ideals: Vec<IdealReport>,
    pub r_pair_label: String,
    pub p_regular: bool,
}

impl SubpairReport {
    /// θ-stable ideals that make up `𝔯`.
    pub fn r_factors(&self) -> Vec<&IdealReport> {
        self.ideals.iter().filter(|i| i.dim_minus > 0).collect()
    }
}

/// Values `α(H_X) = Σ c_K <α, ε_K^∨>` on all roots.
fn toral_values(rs: &RootSystem, p: &AbelianParabolic, c: &[Q]) -> Vec<Q> {
    rs.roots()
        .iter()
        .map(|a| {
            p.e_set.iter().zip(c).fold(Q::zero(), |acc, (e, ck)| {
                acc + ck * Q::from_i64(rs.pairing(a, &e.epsilon))
            })
        })
        .collect()
}

/// Apply the conjugating automorphism `C`.
fn cayley_apply(g: &ChevalleyAlgebra, p: &AbelianParabolic, v: &LieElement) -> LieElement {
    let mut out = v.clone();
    let half = q(-1, 2);
    for e in &p.e_set {
        out = g.exp_ad_apply(&g.x(&e.epsilon).scale(&half), &out);
        out = g.exp_ad_apply(&g.x(&e.epsilon.neg()), &out);
    }
    out
}

fn coroot_vec(g: &ChevalleyAlgebra, r: &Root) -> Vec<Q> {
    g.coroot(r).into_iter().map(Q::from_i64).collect()
}

/// Compute the subpair report for `x ∈ 𝔞`.
pub fn subpair(p: &AbelianParabolic, x: &LieElement) -> Result<SubpairReport, CentralizerError> {
    let g = p.algebra().clone();
    let rs = g.root_system();
    let c = p.cartan_coords(x).ok_or(CentralizerError::NotInCartan)?;
    if !g.is_ad_semisimple(x) {
        return Err(CentralizerError::NotSemisimple);
    }
    let k_x = g
        .centralizer_in(x, &p.k_elements())
        .expect("independent basis");
    let p_x = g
        .centralizer_in(x, &p.p_elements())
        .expect("independent basis");
    let mut g_x = k_x.clone();
    g_x.extend(p_x.iter().cloned());
    let (dim_k_x, dim_p_x, dim_g_x) = (k_x.len(), p_x.len(), k_x.len() + p_x.len());

    let vals = toral_values(rs, p, &c);
    let all_roots = rs.roots();
    let phi: Vec<Root> = all_roots
        .iter()
        .zip(&vals)
        .filter(|(_, v)| v.is_zero())
        .map(|(r, _)| r.clone())
        .collect();
    let comps = classify_subsystem(rs, &phi);
    let semisimple_rank: usize = comps.iter().map(|(_, s)| s.len()).sum();
    let expected_l = phi.len() + semisimple_rank;

    // Certification of the conjugation.
    let mut certified = dim_g_x == rs.rank() + phi.len();
    for (e, xk) in p.e_set.iter().zip(&p.cartan_subspace) {
        if !certified {
            break;
        }
        certified = cayley_apply(&g, p, &g.h_root(&e.epsilon)) == *xk;
    }

    let l = if certified {
        g.derived_trusted(&g_x, Some(expected_l))
    } else {
        g.derived_trusted(&g_x, None)
    };
    let l_dim = l.len();
    certified &= l_dim == expected_l;
    let center_dim = dim_g_x - l_dim;

    // 𝔩± and 𝔯 computed directly.
    let dim = g.dim();
    let l_plus: Vec<Vec<Q>> = l.iter().map(|v| v.add(&p.theta(v)).coeffs).collect();
    let l_minus_ech = Echelon::from_vectors(
        dim,
        l.iter()
            .map(|v| v.sub(&p.theta(v)).coeffs)
            .collect::<Vec<_>>()
            .iter(),
    );
    let l_plus_dim = Echelon::from_vectors(dim, l_plus.iter()).dim();
    let l_minus = g.elements_from(l_minus_ech.basis());
    let r_plus = g.derived_trusted(&l_minus, None);
    let r_plus_dim = r_plus.len();
    let r_dim = r_plus_dim + l_minus.len();

    let mut ideals = Vec::new();
    let mut l_type = None;
    if certified {
        l_type = Some(comps.iter().map(|(t, _)| *t).collect::<Vec<_>>());
        match theta_stable_ideals(&g, p, &c, &comps) {
            Some(v) => ideals = v,
            None => certified = false,
        }
    }
    if certified {
        let r_sum: usize = ideals
            .iter()
            .filter(|i| i.dim_minus > 0)
            .map(|i| i.dim)
            .sum();
        let minus_sum: usize = ideals.iter().map(|i| i.dim_minus).sum();
        certified = r_sum == r_dim && minus_sum == l_minus.len();
    }
    let r_pair_label = if !certified {
        "not-identified".to_string()
    } else if r_dim == 0 {
        "trivial".to_string()
    } else {
        let labels: Option<Vec<String>> = ideals
            .iter()
            .filter(|i| i.dim_minus > 0)
            .map(|i| i.label.clone())
            .collect();
        labels
            .map(|v| v.join(" x "))
            .unwrap_or_else(|| "not-identified".into())
    };
    if !certified {
        l_type = None;
        ideals.clear();
    }
    let l_type_label = l_type
        .as_ref()
        .map(|t| types_label(t))
        .unwrap_or_else(|| "not-identified".into());
    Ok(SubpairReport {
        x: c.iter().map(fmt_q).collect(),
        dim_g_x,
        dim_k_x,
        dim_p_x,
        l_dim,
        center_dim,
        l_plus_dim,
        l_minus_dim: l_minus.len(),
        r_dim,
        r_plus_dim,
        l_type,
        l_type_label,
        ideals,
        r_pair_label,
        p_regular: dim_p_x == p.rank(),
    })
}

/// Group the simple ideals into θ-stable ideals and classify each.
fn theta_stable_ideals(
    g: &ChevalleyAlgebra,
    p: &AbelianParabolic,
    c: &[Q],
    comps: &[(SimpleType, Vec<Root>)],
) -> Option<Vec<IdealReport>> {
    let rs = g.root_system();
    let dim = g.dim();
    let rank = rs.rank();
    let phi_pos: Vec<Root> = rs.positive_roots().to_vec();
    // Ideal bases: images under C of root vectors and coroots of each component.
    let mut ideal_vecs: Vec<Vec<Vec<Q>>> = Vec::new();
    let mut ideal_cartans: Vec<Vec<Vec<Q>>> = Vec::new();
    for (_, simples) in comps {
        let members: Vec<&Root> = phi_pos
            .iter()
            .filter(|b| {
                let v = toral_values_single(rs, p, c, b);
                v.is_zero() && simples.iter().any(|s| rs.inner6(&b.coords, &s.coords) != 0)
            })
            .collect();
        let mut vs = Vec::new();
        for b in &members {
            vs.push(cayley_apply(g, p, &g.x(b)).coeffs);
            vs.push(cayley_apply(g, p, &g.x(&b.neg())).coeffs);
        }
        for s in simples {
            vs.push(cayley_apply(g, p, &g.h_root(s)).coeffs);
        }
        ideal_vecs.push(vs);
        ideal_cartans.push(simples.iter().map(|s| coroot_vec(g, s)).collect());
    }
    let echs: Vec<Echelon<Q>> = ideal_vecs
        .iter()
        .map(|v| Echelon::from_vectors(dim, v.iter()))
        .collect();
    let theta_of = |v: &Vec<Q>| {
        p.theta(&LieElement {
            algebra: g.cartan_type(),
            coeffs: v.clone(),
        })
        .coeffs
    };
    let m = comps.len();
    let mut partner = vec![usize::MAX; m];
    for j in 0..m {
        let images: Vec<Vec<Q>> = ideal_vecs[j].iter().map(theta_of).collect();
        let k = (0..m).find(|&k| images.iter().all(|v| echs[k].contains(v)))?;
        partner[j] = k;
    }
    // Toral picture: decompose each H_{ε_K} along the coroot spans of the components and the center.
    let phi_all: Vec<Root> = comps.iter().flat_map(|(_, s)| s.clone()).collect();
    let z_rows: Vec<Vec<Q>> = phi_all
        .iter()
        .map(|s| (0..rank).map(|i| pairing_row(rs, s, i)).collect())
        .collect();
    let center_basis = if z_rows.is_empty() {
        (0..rank).map(|i| unit(rank, i)).collect()
    } else {
        Matrix::from_rows(z_rows).kernel()
    };
    let mut cols: Vec<Vec<Q>> = Vec::new();
    let mut owner: Vec<Option<usize>> = Vec::new();
    for (j, hc) in ideal_cartans.iter().enumerate() {
        for h in hc {
            cols.push(h.clone());
            owner.push(Some(j));
        }
    }
    for z in center_basis {
        cols.push(z);
        owner.push(None);
    }
    let basis_mat = Matrix::from_cols(rank, &cols);
    let mut proj_coords: Vec<Vec<Q>> = Vec::new();
    for e in &p.e_set {
        let h = coroot_vec(g, &e.epsilon);
        proj_coords.push(basis_mat.solve(&h)?);
    }
    let mut seen = vec![false; m];
    let mut out = Vec::new();
    for j in 0..m {
        if seen[j] {
            continue;
        }
        let group: Vec<usize> = if partner[j] == j {
            vec![j]
        } else {
            vec![j, partner[j]]
        };
        for &k in &group {
            seen[k] = true;
        }
        let mut vs: Vec<Vec<Q>> = Vec::new();
        for &k in &group {
            vs.extend(ideal_vecs[k].iter().cloned());
        }
        let basis = Echelon::from_vectors(dim, vs.iter()).basis();
        let plus: Vec<Vec<Q>> = basis.iter().map(|v| add_vec(v, &theta_of(v))).collect();
        let minus: Vec<Vec<Q>> = basis.iter().map(|v| sub_vec(v, &theta_of(v))).collect();
        let dim_plus = Echelon::from_vectors(dim, plus.iter()).dim();
        let dim_minus = Echelon::from_vectors(dim, minus.iter()).dim();
        // rank: span of the projections of H_{ε_K} to this group's coroot span
        let projections: Vec<Vec<Q>> = proj_coords
            .iter()
            .map(|coords| {
                let mut v = vec![Q::zero(); rank];
                for (t, a) in coords.iter().enumerate() {
                    if owner[t].is_some_and(|o| group.contains(&o)) && !a.is_zero() {
                        for (x, y) in v.iter_mut().zip(&cols[t]) {
                            *x += a * y;
                        }
                    }
                }
                v
            })
            .collect();
        let pair_rank = Echelon::from_vectors(rank, projections.iter()).dim();
        let types: Vec<SimpleType> = group.iter().map(|&k| comps[k].0).collect();
        let entry = if dim_minus > 0 {
            classify_pair(&types, dim_plus, pair_rank)
        } else {
            None
        };
        out.push(IdealReport {
            types,
            dim: basis.len(),
            dim_plus,
            dim_minus,
            rank: pair_rank,
            label: entry.as_ref().map(|e| e.label.clone()),
            kind: entry.map(|e| e.kind),
        });
    }
    Some(out)
}

fn pairing_row(rs: &RootSystem, s: &Root, i: usize) -> Q {
    // α(H_i) = <α, α_i^∨>
    Q::from_i64(rs.pairing(s, &rs.simple_root(i)))
}

fn unit(n: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); n];
    v[i] = Q::one();
    v
}

fn add_vec(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}
fn sub_vec(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn toral_values_single(rs: &RootSystem, p: &AbelianParabolic, c: &[Q], a: &Root) -> Q {
    p.e_set.iter().zip(c).fold(Q::zero(), |acc, (e, ck)| {
        acc + ck * Q::from_i64(rs.pairing(a, &e.epsilon))
    })
}

/// `dim 𝔭^X == rank of the pair`.
pub fn regularity_check(p: &AbelianParabolic, x: &LieElement) -> Result<bool, CentralizerError> {
    p.cartan_coords(x).ok_or(CentralizerError::NotInCartan)?;
    let m = p.algebra().ad_restricted(x, &p.p_elements());
    Ok(p.p_basis.len() - m.rank() == p.rank())
}

/// Lines `[λ:μ]` with `μ X_{K1} + λ X_{K2}` not 𝔭-regular.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct RegularityLocus {
    pub line_basis: [String; 2],
    /// Primitive integer representatives `[λ, μ]`, first nonzero entry positive, sorted.
    pub special_lines: Vec<[i64; 2]>,
    pub generic_rank: usize,
    pub determinantal_divisor: String,
    /// Factor of the divisor without rational roots, if any (lines not defined over Q).
    pub irrational_factor: Option<String>,
}

/// Product of the nonzero pivots of a unimodular diagonalization over `Q[t]`.
fn determinantal_divisor(mut m: Vec<Vec<Poly<Q>>>) -> (usize, Poly<Q>) {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut prod = Poly::one();
    let mut k = 0;
    while k < rows.min(cols) {
        let mut best: Option<(usize, usize, usize)> = None;
        for (i, row) in m.iter().enumerate().skip(k) {
            for (j, e) in row.iter().enumerate().skip(k) {
                if let Some(d) = e.degree() {
                    if best.is_none_or(|b| d < b.2) {
                        best = Some((i, j, d));
                    }
                }
            }
        }
        let Some((bi, bj, _)) = best else { break };
        m.swap(k, bi);
        for r in m.iter_mut() {
            r.swap(k, bj);
        }
        loop {
            let mut leftover: Option<(bool, usize, usize)> = None;
            for i in k + 1..rows {
                if m[i][k].is_zero() {
                    continue;
                }
                let (qt, r) = m[i][k].div_rem(&m[k][k]);
                for j in k..cols {
                    let t = qt.mul(&m[k][j]);
                    m[i][j] = m[i][j].sub(&t);
                }
                if !r.is_zero() {
                    let d = r.degree().unwrap();
                    if leftover.is_none_or(|l| d < l.2) {
                        leftover = Some((true, i, d));
                    }
                }
            }
            for j in k + 1..cols {
                if m[k][j].is_zero() {
                    continue;
                }
                let (qt, r) = m[k][j].div_rem(&m[k][k]);
                for row in m.iter_mut().skip(k) {
                    let t = qt.mul(&row[k]);
                    row[j] = row[j].sub(&t);
                }
                if !r.is_zero() {
                    let d = r.degree().unwrap();
                    if leftover.is_none_or(|l| d < l.2) {
                        leftover = Some((false, j, d));
                    }
                }
            }
            match leftover {
                None => break,
                Some((true, i, _)) => {
                    if !m[i][k].is_zero() {
                        m.swap(k, i);
                    }
                }
                Some((false, j, _)) => {
                    if !m[k][j].is_zero() {
                        for r in m.iter_mut() {
                            r.swap(k, j);
                        }
                    }
                }
            }
            if (k + 1..rows).all(|i| m[i][k].is_zero()) && (k + 1..cols).all(|j| m[k][j].is_zero())
            {
                break;
            }
        }
        prod = prod.mul(&m[k][k]);
        k += 1;
    }
    (k, prod.monic())
}

fn normalize_line(l: Q, mu: Q) -> [i64; 2] {
    use num_integer::Integer;
    let den = l.denom().lcm(mu.denom());
    let a = (l * Q::from_integer(den.clone())).to_integer();
    let b = (mu * Q::from_integer(den)).to_integer();
    let g = a.gcd(&b);
    let (mut a, mut b) = (a / &g, b / &g);
    let zero = num_bigint::BigInt::from(0);
    if a < zero || (a == zero && b < zero) {
        a = -a;
        b = -b;
    }
    [i64::try_from(a).unwrap(), i64::try_from(b).unwrap()]
}

/// Non-regular lines in the plane spanned by `X_{K1}`, `X_{K2}` (indices into `𝓔`).
pub fn nonregular_locus(
    p: &AbelianParabolic,
    k1: usize,
    k2: usize,
) -> Result<RegularityLocus, CentralizerError> {
    if p.rank() != 2 {
        return Err(CentralizerError::NotRankTwo(p.rank()));
    }
    for k in [k1, k2] {
        if k >= p.rank() {
            return Err(CentralizerError::BadIndex(k));
        }
    }
    let g = p.algebra();
    let pe = p.p_elements();
    let restrict = |x: &LieElement| -> Matrix<Q> {
        let full = g.ad_restricted(x, &pe);
        let rows: Vec<Vec<Q>> = p.k_basis.iter().map(|&r| full.row(r).to_vec()).collect();
        Matrix::from_rows(rows)
    };
    let a = restrict(&p.cartan_subspace[k1]);
    let b = restrict(&p.cartan_subspace[k2]);
    let pm: Vec<Vec<Poly<Q>>> = (0..a.rows())
        .map(|i| {
            (0..a.cols())
                .map(|j| Poly::new(vec![a.get(i, j).clone(), b.get(i, j).clone()]))
                .collect()
        })
        .collect();
    let (r, d) = determinantal_divisor(pm);
    let generic = p.p_basis.len() - r;
    if generic != p.rank() {
        return Err(CentralizerError::GenericRank {
            got: generic,
            rank: p.rank(),
        });
    }
    let (roots, rest) = rational_roots(&d);
    let mut lines: Vec<[i64; 2]> = roots
        .into_iter()
        .map(|t| normalize_line(t, Q::one()))
        .collect();
    if b.rank() < r {
        lines.push([1, 0]);
    }
    lines.sort();
    lines.dedup();
    Ok(RegularityLocus {
        line_basis: [p.e_set[k1].label(), p.e_set[k2].label()],
        special_lines: lines,
        generic_rank: generic,
        determinantal_divisor: d.to_string(),
        irrational_factor: (rest.degree().unwrap_or(0) > 0).then(|| rest.to_string()),
    })
}

/// Restricted-root vectors `(<α, ε_K^∨>)_K` for roots not orthogonal to all of 𝓔, deduplicated up to sign.
pub fn restricted_hyperplanes(p: &AbelianParabolic) -> Vec<Vec<i64>> {
    let rs = p.root_system();
    let mut set: BTreeSet<Vec<i64>> = BTreeSet::new();
    for a in rs.positive_roots() {
        let v: Vec<i64> = p.e_set.iter().map(|e| rs.pairing(a, &e.epsilon)).collect();
        if v.iter().all(|&x| x == 0) {
            continue;
        }
        let first = *v.iter().find(|&&x| x != 0).unwrap();
        let v = if first < 0 {
            v.iter().map(|x| -x).collect()
        } else {
            v
        };
        let g = v.iter().fold(0i64, |acc, &x| num_integer::gcd(acc, x));
        set.insert(v.iter().map(|x| x / g).collect());
    }
    set.into_iter().collect()
}

/// A flat of the restricted-root arrangement with a generic sample point.
#[derive(Clone, Debug, Serialize)]
pub struct Stratum {
    /// Hyperplanes (indices into `restricted_hyperplanes`) containing the flat.
    pub hyperplanes: Vec<usize>,
    pub dim: usize,
    pub sample: Vec<String>,
    #[serde(skip)]
    pub sample_q: Vec<Q>,
}

/// All nonzero flats of the arrangement, each with a seeded generic point.
pub fn special_strata(p: &AbelianParabolic, seed: u64) -> Vec<Stratum> {
    let hs = restricted_hyperplanes(p);
    let n = p.rank();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut flats: BTreeMap<Vec<usize>, Vec<Vec<Q>>> = BTreeMap::new();
    // Closure under intersection, keyed by the full set of containing hyperplanes.
    let mut frontier: Vec<Vec<usize>> = (0..hs.len()).map(|i| vec![i]).collect();
    let containing = |basis: &[Vec<Q>]| -> Vec<usize> {
        (0..hs.len())
            .filter(|&i| {
                basis.iter().all(|b| {
                    b.iter()
                        .zip(&hs[i])
                        .fold(Q::zero(), |acc, (x, &h)| acc + x * Q::from_i64(h))
                        .is_zero()
                })
            })
            .collect()
    };
    while let Some(set) = frontier.pop() {
        let rows: Vec<Vec<Q>> = set
            .iter()
            .map(|&i| hs[i].iter().map(|&h| Q::from_i64(h)).collect())
            .collect();
        let basis = Matrix::from_rows(rows).kernel();
        if basis.is_empty() {
            continue;
        }
        let full = containing(&basis);
        if flats.contains_key(&full) {
            continue;
        }
        for j in 0..hs.len() {
            if !full.contains(&j) {
                let mut s = full.clone();
                s.push(j);
                frontier.push(s);
            }
        }
        flats.insert(full, basis);
    }
    flats
        .into_iter()
        .map(|(hyps, basis)| {
            let sample = loop {
                let coeffs: Vec<Q> = basis
                    .iter()
                    .map(|_| q(rng.gen_range(1..=30), rng.gen_range(1..=5)))
                    .collect();
                let mut v = vec![Q::zero(); n];
                for (c, b) in coeffs.iter().zip(&basis) {
                    for (x, y) in v.iter_mut().zip(b) {
                        *x += c * y;
                    }
                }
                if containing(std::slice::from_ref(&v)) == hyps {
                    break v;
                }
            };
            Stratum {
                dim: basis.len(),
                hyperplanes: hyps,
                sample: sample.iter().map(fmt_q).collect(),
                sample_q: sample,
            }
        })
        .collect()
}

/// Two root vectors that commute with each other and with `X_K`, and lie in `𝔭`.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct WitnessReport {
    pub k: String,
    pub roots: [String; 2],
    pub in_p: bool,
    pub centralize_x: bool,
    pub commute: bool,
    pub non_proportional: bool,
}

impl WitnessReport {
    pub fn holds(&self) -> bool {
        self.in_p && self.centralize_x && self.commute && self.non_proportional
    }
}

/// Check that `X_{β1}`, `X_{β2}` are commuting nilpotents of `𝔭^{X_K}`.
pub fn commuting_nilpotent_witness(
    p: &AbelianParabolic,
    k: usize,
    betas: [&Root; 2],
) -> Result<WitnessReport, CentralizerError> {
    if k >= p.rank() {
        return Err(CentralizerError::BadIndex(k));
    }
    let g = p.algebra();
    let xk = &p.cartan_subspace[k];
    let xs: Vec<LieElement> = betas.iter().map(|b| g.x(b)).collect();
    let in_p = betas.iter().all(|b| p.is_odd_root(b));
    let centralize_x = xs.iter().all(|x| g.bracket_unchecked(xk, x).is_zero());
    let commute = g.bracket_unchecked(&xs[0], &xs[1]).is_zero();
    let non_proportional = betas[0] != betas[1];
    Ok(WitnessReport {
        k: p.e_set[k].label(),
        roots: [betas[0].to_string(), betas[1].to_string()],
        in_p,
        centralize_x,
        commute,
        non_proportional,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::CartanType;

    fn pair(f: Family, n: usize, node: usize) -> AbelianParabolic {
        AbelianParabolic::maximal(CartanType::new(f, n).unwrap(), node).unwrap()
    }

    #[test]
    fn b3_lines() {
        let p = pair(Family::B, 3, 0);
        let loc = nonregular_locus(&p, 0, 1).unwrap();
        assert_eq!(loc.special_lines, vec![[0, 1], [1, -1], [1, 0], [1, 1]]);
        let cases = [
            (vec![1, 0], 7, "A1xA1"),
            (vec![0, 1], 7, "A1xA1"),
            (vec![1, 1], 11, "B2"),
            (vec![1, -1], 11, "B2"),
        ];
        for (c, d, t) in cases {
            let c: Vec<Q> = c.into_iter().map(Q::from_i64).collect();
            let rep = subpair(&p, &p.cartan_element(&c)).unwrap();
            assert_eq!(rep.dim_g_x, d);
            assert_eq!(rep.l_type_label, t);
            assert!(!rep.p_regular);
            let f = rep.r_factors();
            assert_eq!(f.len(), 1);
            assert!(
                matches!(f[0].kind, Some(PairKind::SoRankOne { .. })),
                "{rep:?}"
            );
        }
    }

    #[test]
    fn so4_two_lines() {
        let alg = ChevalleyAlgebra::from_type(CartanType::new(Family::D, 2).unwrap());
        let p = AbelianParabolic::new(alg, BTreeSet::new()).unwrap();
        let loc = nonregular_locus(&p, 0, 1).unwrap();
        assert_eq!(loc.special_lines, vec![[0, 1], [1, 0]]);
        let rep = subpair(&p, &p.cartan_element(&[Q::one(), Q::zero()])).unwrap();
        assert_eq!(rep.r_pair_label, "(so_3, so_2)");
    }

    #[test]
    fn regularity() {
        let p = pair(Family::B, 3, 0);
        assert!(!regularity_check(&p, &p.cartan_subspace[1]).unwrap());
        assert!(regularity_check(&p, &p.cartan_element(&[q(3, 2), q(-5, 7)])).unwrap());
        assert!(!regularity_check(&p, &p.algebra().zero()).unwrap());
    }

    #[test]
    fn lists_are_consistent() {
        let e = classify_pair(&[st(Family::A, 1)], 1, 1).unwrap();
        assert_eq!(e.label, "(so_3, so_2)");
        let e = classify_pair(&[st(Family::B, 2)], 4, 2).unwrap();
        assert_eq!(e.label, "(so_5, so_3 x so_2)");
        let e = classify_pair(&[st(Family::A, 3)], 7, 2).unwrap();
        assert_eq!(e.label, "(so_6, so_4 x so_2)");
    }
}
