//! Parabolics with abelian unipotent radical, their symmetric pairs and cascade Cartan subspaces.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::cascade::{cascade, CascadeEntry};
use crate::chevalley::{ChevalleyAlgebra, LieElement};
use crate::field::{q, Field, Q};
use crate::root_system::{fmt_simple_set, CartanType, Family, Root, RootSystem};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParabolicError {
    #[error("S = {0} is not a proper subset of the simple roots")]
    NotProper(String),
    #[error("unipotent radical for S = {0} is not abelian")]
    NotAbelian(String),
    #[error("Cartan subspace check failed: {0}")]
    CartanCheck(String),
    #[error("catalog scan disagrees with the reference table for {cartan_type}: {detail}")]
    Mismatch { cartan_type: String, detail: String },
}

/// `R⁺ ∖ R_S`
pub fn radical_roots(rs: &RootSystem, s: &BTreeSet<usize>) -> Vec<Root> {
    rs.positive_roots()
        .iter()
        .filter(|r| !r.support().is_subset(s))
        .cloned()
        .collect()
}

/// No two roots of `R_S¹` sum to a root.
pub fn is_abelian_radical(rs: &RootSystem, s: &BTreeSet<usize>) -> bool {
    let r1 = radical_roots(rs, s);
    for (i, a) in r1.iter().enumerate() {
        for b in &r1[i..] {
            if rs.is_root(&a.add(b)) {
                return false;
            }
        }
    }
    true
}

/// One row of the reference table of abelian parabolics.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub cartan_type: CartanType,
    /// Removed simple root, 0-based.
    pub node: usize,
    pub label: String,
    /// Members of `𝓔` as sets of simple-root indices, sorted.
    pub e_set: Vec<BTreeSet<usize>>,
}

fn range_set(lo: usize, hi: usize) -> BTreeSet<usize> {
    (lo..=hi).collect()
}

/// Reference rows, encoded from the closed-form descriptions of the classification.
pub fn reference_rows(t: CartanType) -> Vec<TableRow> {
    let n = t.rank;
    let mut rows = Vec::new();
    let mut push = |node: usize, label: String, mut e: Vec<BTreeSet<usize>>| {
        e.sort();
        rows.push(TableRow {
            cartan_type: t,
            node,
            label,
            e_set: e,
        });
    };
    match t.family {
        Family::A => {
            for i in 1..=n {
                let e = (1..=i.min(n + 1 - i))
                    .map(|j| range_set(j - 1, n - j))
                    .collect();
                push(
                    i - 1,
                    format!("(sl_{}, sl_{} x sl_{} x C)", n + 1, n + 1 - i, i),
                    e,
                );
            }
        }
        Family::B => push(
            0,
            format!("(so_{}, so_{} x so_2)", 2 * n + 1, 2 * n - 1),
            vec![range_set(0, 0), range_set(0, n - 1)],
        ),
        Family::C => push(
            n - 1,
            format!("(sp_{}, gl_{})", 2 * n, n),
            (0..n).map(|j| range_set(j, n - 1)).collect(),
        ),
        Family::D if n >= 4 => {
            push(
                0,
                format!("(so_{}, so_{} x so_2)", 2 * n, 2 * n - 2),
                vec![range_set(0, 0), range_set(0, n - 1)],
            );
            for i in [n - 1, n] {
                let mut e: Vec<BTreeSet<usize>> = (1..=n - 2)
                    .filter(|m| m % 2 == 1)
                    .map(|m| range_set(m - 1, n - 1))
                    .collect();
                if n.is_multiple_of(2) {
                    e.push(range_set(i - 1, i - 1));
                }
                push(i - 1, format!("(so_{}, gl_{})", 2 * n, n), e);
            }
        }
        Family::E if n == 6 => {
            let k: BTreeSet<usize> = [0, 2, 3, 4, 5].into_iter().collect();
            for node in [0, 5] {
                push(
                    node,
                    "(E6, D5 x C)".into(),
                    vec![k.clone(), range_set(0, 5)],
                );
            }
        }
        Family::E if n == 7 => push(
            6,
            "(E7, E6 x C)".into(),
            vec![range_set(6, 6), range_set(1, 6), range_set(0, 6)],
        ),
        _ => {}
    }
    rows
}

/// The symmetric pair `(𝔤, 𝔨_S)` attached to an abelian parabolic.
#[derive(Debug, Clone)]
pub struct AbelianParabolic {
    algebra: Arc<ChevalleyAlgebra>,
    pub s: BTreeSet<usize>,
    pub r_s1: Vec<Root>,
    pub e_set: Vec<CascadeEntry>,
    /// Basis indices spanning `𝔨_S`.
    pub k_basis: Vec<usize>,
    /// Basis indices spanning `𝔭_S`.
    pub p_basis: Vec<usize>,
    /// The elements `X_K = X_{ε_K} + X_{-ε_K}`, one per member of `𝓔`.
    pub cartan_subspace: Vec<LieElement>,
    pub pair_label: String,
}

/// Summary of the Cartan-subspace verification.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct CartanCheckReport {
    pub rank: usize,
    pub commuting: bool,
    pub semisimple: bool,
    pub covered_by_gamma: bool,
    pub complement_outside_radical: bool,
    pub reference_rank: Option<usize>,
}

impl AbelianParabolic {
    pub fn new(algebra: Arc<ChevalleyAlgebra>, s: BTreeSet<usize>) -> Result<Self, ParabolicError> {
        let rs = algebra.root_system().clone();
        let n = rs.rank();
        if s.len() >= n || s.iter().any(|&i| i >= n) {
            return Err(ParabolicError::NotProper(fmt_simple_set(&s)));
        }
        if !is_abelian_radical(&rs, &s) {
            return Err(ParabolicError::NotAbelian(fmt_simple_set(&s)));
        }
        let r_s1 = radical_roots(&rs, &s);
        let all: BTreeSet<usize> = (0..n).collect();
        let e_set: Vec<CascadeEntry> = cascade(&rs, &all)
            .into_iter()
            .filter(|e| r_s1.contains(&e.epsilon))
            .collect();
        let np = rs.num_positive();
        let mut k_basis = Vec::new();
        let mut p_basis = Vec::new();
        for k in 0..algebra.num_roots() {
            let pos = if k < np { k } else { k - np };
            if r_s1.contains(&rs.positive_roots()[pos]) {
                p_basis.push(k);
            } else {
                k_basis.push(k);
            }
        }
        k_basis.extend((0..n).map(|i| algebra.h_index(i)));
        let cartan_subspace = e_set
            .iter()
            .map(|e| algebra.x(&e.epsilon).add(&algebra.x(&e.epsilon.neg())))
            .collect();
        let pair_label = pair_label_for(rs.cartan_type(), &s);
        Ok(AbelianParabolic {
            algebra,
            s,
            r_s1,
            e_set,
            k_basis,
            p_basis,
            cartan_subspace,
            pair_label,
        })
    }

    /// Build from a type and the removed simple root (0-based).
    pub fn maximal(t: CartanType, node: usize) -> Result<Self, ParabolicError> {
        let s: BTreeSet<usize> = (0..t.rank).filter(|&i| i != node).collect();
        Self::new(ChevalleyAlgebra::from_type(t), s)
    }

    pub fn algebra(&self) -> &Arc<ChevalleyAlgebra> {
        &self.algebra
    }
    pub fn root_system(&self) -> &RootSystem {
        self.algebra.root_system()
    }
    pub fn rank(&self) -> usize {
        self.e_set.len()
    }
    pub fn is_maximal(&self) -> bool {
        self.s.len() + 1 == self.root_system().rank()
    }
    /// The removed simple roots `Π ∖ S`.
    pub fn nodes(&self) -> Vec<usize> {
        (0..self.root_system().rank())
            .filter(|i| !self.s.contains(i))
            .collect()
    }
    pub fn k_elements(&self) -> Vec<LieElement> {
        self.k_basis
            .iter()
            .map(|&k| self.algebra.basis_element(k))
            .collect()
    }
    pub fn p_elements(&self) -> Vec<LieElement> {
        self.p_basis
            .iter()
            .map(|&k| self.algebra.basis_element(k))
            .collect()
    }
    /// Parity of a root under the grading: true for roots in `±R_S¹`.
    pub fn is_odd_root(&self, r: &Root) -> bool {
        let s: i64 = self.nodes().iter().map(|&i| r.coords[i]).sum();
        s % 2 != 0
    }
    /// The involution `θ`: `+1` on `𝔨_S`, `-1` on `𝔭_S`.
    pub fn theta(&self, x: &LieElement) -> LieElement {
        let mut out = x.clone();
        for &k in &self.p_basis {
            out.coeffs[k] = -&out.coeffs[k];
        }
        out
    }
    /// `Σ c_K X_K`
    pub fn cartan_element(&self, c: &[Q]) -> LieElement {
        self.algebra.combine(c, &self.cartan_subspace)
    }
    /// Coordinates of `x` in the basis `X_K`, if `x ∈ 𝔞`.
    pub fn cartan_coords(&self, x: &LieElement) -> Option<Vec<Q>> {
        let cols: Vec<Vec<Q>> = self
            .cartan_subspace
            .iter()
            .map(|e| e.coeffs.clone())
            .collect();
        crate::linalg::Matrix::from_cols(self.algebra.dim(), &cols).solve(&x.coeffs)
    }

    /// Verify that `𝔞` is abelian, made of semisimple elements, of the right size,
    /// and the two covering properties of `R_S¹`.
    pub fn verify_cartan_subspace(&self) -> Result<CartanCheckReport, ParabolicError> {
        let g = &self.algebra;
        let rs = g.root_system();
        let fail = |m: String| Err(ParabolicError::CartanCheck(m));
        for (i, a) in self.cartan_subspace.iter().enumerate() {
            for b in &self.cartan_subspace[i + 1..] {
                if !g.bracket_unchecked(a, b).is_zero() {
                    return fail("X_K do not commute".into());
                }
            }
        }
        for (e, x) in self.e_set.iter().zip(&self.cartan_subspace) {
            if !g.is_ad_semisimple(x) {
                return fail(format!("X_K for K = {} is not ad-semisimple", e.label()));
            }
        }
        for a in &self.r_s1 {
            if !self.e_set.iter().any(|e| e.gamma.contains(a)) {
                return fail(format!("{a} not in any Γ^K with K in 𝓔"));
            }
        }
        for e in &self.e_set {
            for a in e.gamma.iter().filter(|a| self.r_s1.contains(a)) {
                let d = e.epsilon.sub(a);
                if self.r_s1.contains(&d) {
                    return fail(format!("ε_K - {a} lies in R_S¹ for K = {}", e.label()));
                }
            }
        }
        let reference_rank = if self.is_maximal() {
            let node = self.nodes()[0];
            reference_rows(rs.cartan_type())
                .into_iter()
                .find(|r| r.node == node)
                .map(|r| r.e_set.len())
        } else {
            None
        };
        if let Some(r) = reference_rank {
            if r != self.rank() {
                return fail(format!(
                    "rank {} differs from reference rank {r}",
                    self.rank()
                ));
            }
        }
        Ok(CartanCheckReport {
            rank: self.rank(),
            commuting: true,
            semisimple: true,
            covered_by_gamma: true,
            complement_outside_radical: true,
            reference_rank,
        })
    }

    /// Random nonzero rational point of `𝔞` with small coefficients.
    pub fn random_cartan_point(&self, rng: &mut ChaCha8Rng) -> Vec<Q> {
        loop {
            let c: Vec<Q> = (0..self.rank())
                .map(|_| q(rng.gen_range(-40..=40), rng.gen_range(1..=7)))
                .collect();
            if c.iter().all(|x| !x.is_zero()) {
                return c;
            }
        }
    }

    /// `dim 𝔭^X` for `X = Σ c_K X_K`.
    pub fn p_centralizer_dim(&self, c: &[Q]) -> usize {
        let x = self.cartan_element(c);
        let m = self.algebra.ad_restricted(&x, &self.p_elements());
        self.p_basis.len() - m.rank()
    }

    /// Smallest `dim 𝔭^X` over a few seeded samples of `𝔞`; re-draws on degeneracy.
    pub fn generic_p_centralizer_dim(&self, seed: u64, samples: usize) -> usize {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..samples.max(1))
            .map(|_| {
                let c = self.random_cartan_point(&mut rng);
                self.p_centralizer_dim(&c)
            })
            .min()
            .unwrap()
    }
}

fn pair_label_for(t: CartanType, s: &BTreeSet<usize>) -> String {
    let n = t.rank;
    let nodes: Vec<usize> = (0..n).filter(|i| !s.contains(i)).collect();
    if nodes.len() == 1 {
        if let Some(row) = reference_rows(t).into_iter().find(|r| r.node == nodes[0]) {
            return row.label;
        }
        if t.family == Family::D && n == 3 {
            return if nodes[0] == 0 {
                "(so_6, so_4 x so_2)".into()
            } else {
                "(so_6, gl_3)".into()
            };
        }
    }
    if t.family == Family::D && n == 2 && s.is_empty() {
        return "(so_4, so_2 x so_2)".into();
    }
    format!("({t}, levi {})", fmt_simple_set(s))
}

/// One catalog entry: the reference row with the scanned parabolic.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub row: TableRow,
    pub parabolic: AbelianParabolic,
}

/// Types scanned by the catalog for a rank bound.
pub fn catalog_types(max_rank: usize) -> Vec<CartanType> {
    let mut v = Vec::new();
    for n in 1..=max_rank {
        v.push(CartanType {
            family: Family::A,
            rank: n,
        });
    }
    for n in 2..=max_rank {
        v.push(CartanType {
            family: Family::B,
            rank: n,
        });
    }
    for n in 2..=max_rank {
        v.push(CartanType {
            family: Family::C,
            rank: n,
        });
    }
    for n in 4..=max_rank {
        v.push(CartanType {
            family: Family::D,
            rank: n,
        });
    }
    for (f, n) in [
        (Family::E, 6),
        (Family::E, 7),
        (Family::E, 8),
        (Family::F, 4),
        (Family::G, 2),
    ] {
        v.push(CartanType { family: f, rank: n });
    }
    v
}

/// Scan maximal parabolics of one type and compare with the reference rows.
pub fn scan_type(t: CartanType) -> Result<Vec<CatalogEntry>, ParabolicError> {
    let rs = RootSystem::build(t).expect("valid type");
    let all: BTreeSet<usize> = (0..t.rank).collect();
    let found: Vec<usize> = (0..t.rank)
        .filter(|&i| {
            let mut s = all.clone();
            s.remove(&i);
            is_abelian_radical(&rs, &s)
        })
        .collect();
    let reference = reference_rows(t);
    let ref_nodes: Vec<usize> = reference.iter().map(|r| r.node).collect();
    if found != ref_nodes {
        return Err(ParabolicError::Mismatch {
            cartan_type: t.to_string(),
            detail: format!("scan found nodes {found:?}, reference lists {ref_nodes:?}"),
        });
    }
    if found.is_empty() {
        return Ok(vec![]);
    }
    let algebra = Arc::new(ChevalleyAlgebra::new(rs).expect("structure constants"));
    let mut out = Vec::new();
    for row in reference {
        let s: BTreeSet<usize> = all.iter().copied().filter(|&i| i != row.node).collect();
        let p = AbelianParabolic::new(algebra.clone(), s)?;
        let mut got: Vec<BTreeSet<usize>> = p.e_set.iter().map(|e| e.subset.clone()).collect();
        got.sort();
        if got != row.e_set {
            let show =
                |v: &[BTreeSet<usize>]| v.iter().map(fmt_simple_set).collect::<Vec<_>>().join(" ");
            return Err(ParabolicError::Mismatch {
                cartan_type: t.to_string(),
                detail: format!(
                    "node a{}: scanned 𝓔 = {}, reference 𝓔 = {}",
                    row.node + 1,
                    show(&got),
                    show(&row.e_set)
                ),
            });
        }
        out.push(CatalogEntry { row, parabolic: p });
    }
    Ok(out)
}

/// Exhaustive scan over every type in `catalog_types(max_rank)`.
pub fn enumerate_catalog(max_rank: usize) -> Result<Vec<CatalogEntry>, ParabolicError> {
    let mut out = Vec::new();
    for t in catalog_types(max_rank) {
        out.extend(scan_type(t)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::simple_set;

    #[test]
    fn b3_abelian_checks() {
        let b3 = RootSystem::from_label(Family::B, 3).unwrap();
        assert!(is_abelian_radical(&b3, &simple_set(&[1, 2])));
        assert!(!is_abelian_radical(&b3, &simple_set(&[0, 2])));
        assert!(is_abelian_radical(&b3, &simple_set(&[0, 1, 2])));
    }

    #[test]
    fn b3_pair() {
        let p = AbelianParabolic::maximal(CartanType::new(Family::B, 3).unwrap(), 0).unwrap();
        assert_eq!(p.rank(), 2);
        assert_eq!(p.r_s1.len(), 5);
        assert_eq!(p.p_basis.len(), 10);
        assert_eq!(p.k_basis.len() + p.p_basis.len(), 21);
        assert_eq!(p.pair_label, "(so_7, so_5 x so_2)");
        let rep = p.verify_cartan_subspace().unwrap();
        assert_eq!(rep.reference_rank, Some(2));
        assert_eq!(p.generic_p_centralizer_dim(7, 3), 2);
    }

    #[test]
    fn so4_non_maximal_pair() {
        let alg = ChevalleyAlgebra::from_type(CartanType::new(Family::D, 2).unwrap());
        let p = AbelianParabolic::new(alg, BTreeSet::new()).unwrap();
        assert_eq!(p.rank(), 2);
        assert_eq!(p.pair_label, "(so_4, so_2 x so_2)");
        assert!(!p.is_maximal());
    }

    #[test]
    fn small_catalog_matches_reference() {
        let cat = enumerate_catalog(4).unwrap();
        assert!(cat
            .iter()
            .any(|c| c.row.cartan_type.family == Family::E && c.row.cartan_type.rank == 7));
        for c in &cat {
            assert_eq!(c.parabolic.rank(), c.row.e_set.len());
        }
    }
}
