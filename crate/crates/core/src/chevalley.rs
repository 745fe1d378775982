//! Chevalley basis of a complex simple Lie algebra with integer structure constants.
//!
//! Basis order: `X_α` for the roots in `RootSystem::roots()` order (positives, then
//! negatives), followed by `H_1, …, H_rank` (simple coroots).

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::field::{Field, Q};
use crate::linalg::{Echelon, Matrix, SparseMatrix};
use crate::root_system::{CartanType, Root, RootSystem};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ChevalleyError {
    #[error("elements belong to different algebras ({0} vs {1})")]
    Mismatch(String, String),
    #[error("element has {got} coordinates, algebra has dimension {expected}")]
    Length { expected: usize, got: usize },
    #[error("subspace basis is linearly dependent")]
    DependentBasis,
    #[error("span is not closed under the bracket")]
    NotClosed,
    #[error("structure constant inconsistency at ({0}, {1})")]
    Inconsistent(String, String),
}

/// An element of the algebra as a rational coefficient vector.
#[derive(Clone, PartialEq, Debug)]
pub struct LieElement {
    pub algebra: CartanType,
    pub coeffs: Vec<Q>,
}

impl LieElement {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.algebra, o.algebra);
        LieElement {
            algebra: self.algebra,
            coeffs: self
                .coeffs
                .iter()
                .zip(&o.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!(self.algebra, o.algebra);
        LieElement {
            algebra: self.algebra,
            coeffs: self
                .coeffs
                .iter()
                .zip(&o.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
    pub fn scale(&self, s: &Q) -> Self {
        LieElement {
            algebra: self.algebra,
            coeffs: self.coeffs.iter().map(|a| a * s).collect(),
        }
    }
    /// Indices of nonzero coordinates.
    pub fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len())
            .filter(|&i| !self.coeffs[i].is_zero())
            .collect()
    }
}

/// The Chevalley basis together with its multiplication table.
#[derive(Debug)]
pub struct ChevalleyAlgebra {
    rs: RootSystem,
    roots: Vec<Root>,
    /// `n[a * nr + b] = N_{a,b}` for root indices `a`, `b` (0 when `a + b` is not a root).
    n: Vec<i64>,
    /// Coroot of each root in the `H_i` basis.
    coroots: Vec<Vec<i64>>,
    /// Sparse products of basis elements, `table[i * dim + j] = [e_i, e_j]`.
    table: Vec<Vec<(usize, i64)>>,
}

/// JSON dump of the structure constants on positive pairs.
#[derive(Serialize, Debug)]
pub struct StructureConstantsJson {
    #[serde(rename = "type")]
    pub type_label: String,
    pub rank: usize,
    pub constants: Vec<(Vec<i64>, Vec<i64>, i64)>,
}

impl ChevalleyAlgebra {
    pub fn new(rs: RootSystem) -> Result<Self, ChevalleyError> {
        let roots = rs.roots();
        let nr = roots.len();
        let np = rs.num_positive();
        let rank = rs.rank();
        let mut alg = ChevalleyAlgebra {
            rs,
            roots,
            n: vec![0; nr * nr],
            coroots: Vec::new(),
            table: Vec::new(),
        };
        alg.coroots = (0..nr).map(|k| alg.coroot_coords(k)).collect();
        alg.compute_structure_constants()?;
        let dim = nr + rank;
        let mut table = vec![Vec::new(); dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                table[i * dim + j] = alg.basis_bracket_raw(i, j);
            }
        }
        alg.table = table;
        debug_assert_eq!(np * 2, nr);
        Ok(alg)
    }

    pub fn from_type(t: CartanType) -> Arc<Self> {
        let rs = RootSystem::build(t).expect("valid type");
        Arc::new(ChevalleyAlgebra::new(rs).expect("structure constants"))
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }
    pub fn cartan_type(&self) -> CartanType {
        self.rs.cartan_type()
    }
    pub fn dim(&self) -> usize {
        self.roots.len() + self.rs.rank()
    }
    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }
    pub fn rank(&self) -> usize {
        self.rs.rank()
    }
    pub fn root_of_index(&self, k: usize) -> &Root {
        &self.roots[k]
    }
    /// Basis index of `X_α`.
    pub fn root_index(&self, r: &Root) -> Option<usize> {
        self.rs.index_of(r)
    }
    /// Basis index of `H_i`.
    pub fn h_index(&self, i: usize) -> usize {
        self.roots.len() + i
    }
    pub fn is_cartan_index(&self, b: usize) -> bool {
        b >= self.roots.len()
    }

    fn coroot_coords(&self, k: usize) -> Vec<i64> {
        // α^∨ = Σ a_i (α_i,α_i)/(α,α) α_i^∨
        let a = &self.roots[k];
        let aa = self.rs.inner6(&a.coords, &a.coords);
        (0..self.rank())
            .map(|i| {
                let si = Root::simple(self.rank(), i);
                let ii = self.rs.inner6(&si.coords, &si.coords);
                let num = a.coords[i] * ii;
                assert_eq!(num % aa, 0, "non-integral coroot");
                num / aa
            })
            .collect()
    }

    /// Coroot `H_α` in the `H_i` basis.
    pub fn coroot(&self, r: &Root) -> Vec<i64> {
        self.coroots[self.root_index(r).expect("root")].clone()
    }

    /// `N_{α,β}` for roots with `α+β` a root, else 0.
    pub fn n_const(&self, a: &Root, b: &Root) -> i64 {
        match (self.root_index(a), self.root_index(b)) {
            (Some(i), Some(j)) => self.n[i * self.roots.len() + j],
            _ => 0,
        }
    }

    fn norm6(&self, r: &Root) -> i64 {
        self.rs.inner6(&r.coords, &r.coords)
    }

    fn compute_structure_constants(&mut self) -> Result<(), ChevalleyError> {
        let rs = self.rs.clone();
        let pos = rs.positive_roots().to_vec();
        let np = pos.len();
        let nr = 2 * np;
        // Positive-positive constants, filled in order of the height of the sum.
        let mut pp: HashMap<(usize, usize), Q> = HashMap::new();
        let idx = |r: &Root| rs.index_of(r);

        let mut by_height: Vec<usize> = (0..np).collect();
        by_height.sort_by_key(|&k| (pos[k].height(), k));
        for &xi_k in &by_height {
            let xi = &pos[xi_k];
            let pairs: Vec<(usize, usize)> = (0..np)
                .filter_map(|a| {
                    let b = xi.sub(&pos[a]);
                    match idx(&b) {
                        Some(bk) if bk < np && a < bk => Some((a, bk)),
                        _ => None,
                    }
                })
                .collect();
            if pairs.is_empty() {
                continue;
            }
            let (a0, b0) = pairs[0];
            let p0 = string_down(&rs, &pos[b0], &pos[a0]);
            let n0 = Q::from_i64(p0 + 1);
            pp.insert((a0, b0), n0.clone());
            pp.insert((b0, a0), n0.negated());
            for &(a, b) in &pairs[1..] {
                let (al, be) = (&pos[a], &pos[b]);
                let (al0, be0) = (&pos[a0], &pos[b0]);
                let xi6 = Q::from_i64(self.norm6(xi));
                let mut acc = Q::zero();
                // N_{β,-α0} N_{α,-β0} / |β-α0|^2
                let d1 = be.sub(al0);
                if rs.is_root(&d1) {
                    let t = general_n(&rs, &pp, be, &al0.neg())
                        .times(&general_n(&rs, &pp, al, &be0.neg()))
                        .div(&Q::from_i64(self.norm6(&d1)));
                    acc = acc.plus(&t);
                }
                // N_{-α0,α} N_{β,-β0} / |α-α0|^2
                let d2 = al.sub(al0);
                if rs.is_root(&d2) {
                    let t = general_n(&rs, &pp, &al0.neg(), al)
                        .times(&general_n(&rs, &pp, be, &be0.neg()))
                        .div(&Q::from_i64(self.norm6(&d2)));
                    acc = acc.plus(&t);
                }
                let val = xi6.times(&acc).div(&n0);
                pp.insert((a, b), val.clone());
                pp.insert((b, a), val.negated());
            }
        }

        for i in 0..nr {
            for j in 0..nr {
                let (a, b) = (&self.roots[i], &self.roots[j]);
                if !rs.is_root(&a.add(b)) {
                    continue;
                }
                let v = general_n(&rs, &pp, a, b);
                let expect = string_down(&rs, b, a) + 1;
                let int = crate::field::q_to_i64(&v)
                    .ok_or_else(|| ChevalleyError::Inconsistent(a.to_string(), b.to_string()))?;
                if int.abs() != expect {
                    return Err(ChevalleyError::Inconsistent(a.to_string(), b.to_string()));
                }
                self.n[i * nr + j] = int;
            }
        }
        Ok(())
    }

    fn basis_bracket_raw(&self, i: usize, j: usize) -> Vec<(usize, i64)> {
        let nr = self.roots.len();
        let rank = self.rank();
        match (i < nr, j < nr) {
            (true, true) => {
                let (a, b) = (&self.roots[i], &self.roots[j]);
                let s = a.add(b);
                if s.coords.iter().all(|&c| c == 0) {
                    self.coroots[i]
                        .iter()
                        .enumerate()
                        .filter(|(_, &c)| c != 0)
                        .map(|(t, &c)| (nr + t, c))
                        .collect()
                } else {
                    let v = self.n[i * nr + j];
                    if v == 0 {
                        vec![]
                    } else {
                        vec![(self.rs.index_of(&s).unwrap(), v)]
                    }
                }
            }
            (false, true) => {
                let hi = i - nr;
                let a = &self.roots[j];
                let v: i64 = (0..rank)
                    .map(|t| a.coords[t] * self.rs.cartan_matrix()[hi][t])
                    .sum();
                if v == 0 {
                    vec![]
                } else {
                    vec![(j, v)]
                }
            }
            (true, false) => self
                .basis_bracket_raw(j, i)
                .into_iter()
                .map(|(k, c)| (k, -c))
                .collect(),
            (false, false) => vec![],
        }
    }

    /// `[e_i, e_j]` as sparse integer coordinates.
    pub fn basis_bracket(&self, i: usize, j: usize) -> &[(usize, i64)] {
        &self.table[i * self.dim() + j]
    }

    /// Jacobi identity on basis elements `e_i, e_j, e_k`, in integer arithmetic.
    pub fn jacobi_holds(&self, i: usize, j: usize, k: usize) -> bool {
        let mut acc: Vec<(usize, i64)> = Vec::new();
        for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
            for &(m, x) in self.basis_bracket(a, b) {
                for &(t, y) in self.basis_bracket(m, c) {
                    acc.push((t, x * y));
                }
            }
        }
        acc.sort_unstable_by_key(|e| e.0);
        acc.chunk_by(|a, b| a.0 == b.0)
            .all(|g| g.iter().map(|e| e.1).sum::<i64>() == 0)
    }

    pub fn zero(&self) -> LieElement {
        LieElement {
            algebra: self.cartan_type(),
            coeffs: vec![Q::zero(); self.dim()],
        }
    }
    pub fn basis_element(&self, k: usize) -> LieElement {
        let mut e = self.zero();
        e.coeffs[k] = Q::one();
        e
    }
    pub fn x(&self, r: &Root) -> LieElement {
        self.basis_element(self.root_index(r).expect("root"))
    }
    pub fn h(&self, i: usize) -> LieElement {
        self.basis_element(self.h_index(i))
    }
    /// `H_α` as an element.
    pub fn h_root(&self, r: &Root) -> LieElement {
        let mut e = self.zero();
        for (i, c) in self.coroot(r).into_iter().enumerate() {
            e.coeffs[self.h_index(i)] = Q::from_i64(c);
        }
        e
    }
    pub fn element(&self, coeffs: Vec<Q>) -> Result<LieElement, ChevalleyError> {
        if coeffs.len() != self.dim() {
            return Err(ChevalleyError::Length {
                expected: self.dim(),
                got: coeffs.len(),
            });
        }
        Ok(LieElement {
            algebra: self.cartan_type(),
            coeffs,
        })
    }

    fn check(&self, x: &LieElement) -> Result<(), ChevalleyError> {
        if x.algebra != self.cartan_type() {
            return Err(ChevalleyError::Mismatch(
                x.algebra.to_string(),
                self.cartan_type().to_string(),
            ));
        }
        if x.coeffs.len() != self.dim() {
            return Err(ChevalleyError::Length {
                expected: self.dim(),
                got: x.coeffs.len(),
            });
        }
        Ok(())
    }

    pub fn bracket(&self, x: &LieElement, y: &LieElement) -> Result<LieElement, ChevalleyError> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.bracket_unchecked(x, y))
    }

    pub(crate) fn bracket_unchecked(&self, x: &LieElement, y: &LieElement) -> LieElement {
        let mut out = vec![Q::zero(); self.dim()];
        let ys = y.support();
        for i in x.support() {
            for &j in &ys {
                let c = &x.coeffs[i] * &y.coeffs[j];
                for &(k, v) in self.basis_bracket(i, j) {
                    out[k] += &c * Q::from_i64(v);
                }
            }
        }
        LieElement {
            algebra: x.algebra,
            coeffs: out,
        }
    }

    /// Sparse matrix of `ad x` (column `j` is `[x, e_j]`).
    pub fn ad_sparse(&self, x: &LieElement) -> SparseMatrix<Q> {
        let dim = self.dim();
        let mut rows: Vec<Vec<(usize, Q)>> = vec![Vec::new(); dim];
        let mut acc: HashMap<(usize, usize), Q> = HashMap::new();
        for i in x.support() {
            for j in 0..dim {
                for &(k, v) in self.basis_bracket(i, j) {
                    *acc.entry((k, j)).or_insert_with(Q::zero) += &x.coeffs[i] * Q::from_i64(v);
                }
            }
        }
        let mut entries: Vec<((usize, usize), Q)> =
            acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        entries.sort_by_key(|(k, _)| *k);
        for ((k, j), v) in entries {
            rows[k].push((j, v));
        }
        SparseMatrix::from_rows(dim, rows)
    }

    /// Dense matrix of `ad x`.
    pub fn ad_matrix(&self, x: &LieElement) -> Matrix<Q> {
        let dim = self.dim();
        let mut m = Matrix::zeros(dim, dim);
        for i in x.support() {
            for j in 0..dim {
                for &(k, v) in self.basis_bracket(i, j) {
                    let cur = m.get(k, j) + &x.coeffs[i] * Q::from_i64(v);
                    m.set(k, j, cur);
                }
            }
        }
        m
    }

    /// Matrix of `ad x` restricted to `domain`, columns `[x, d_j]` in full coordinates.
    pub fn ad_restricted(&self, x: &LieElement, domain: &[LieElement]) -> Matrix<Q> {
        let cols: Vec<Vec<Q>> = domain
            .iter()
            .map(|d| self.bracket_unchecked(x, d).coeffs)
            .collect();
        Matrix::from_cols(self.dim(), &cols)
    }

    /// Basis of `{y ∈ span(subspace) : [x, y] = 0}`.
    pub fn centralizer_in(
        &self,
        x: &LieElement,
        subspace: &[LieElement],
    ) -> Result<Vec<LieElement>, ChevalleyError> {
        self.check(x)?;
        for s in subspace {
            self.check(s)?;
        }
        if subspace.is_empty() {
            return Ok(vec![]);
        }
        let vs: Vec<Vec<Q>> = subspace.iter().map(|s| s.coeffs.clone()).collect();
        if Echelon::from_vectors(self.dim(), vs.iter()).dim() != subspace.len() {
            return Err(ChevalleyError::DependentBasis);
        }
        let m = self.ad_restricted(x, subspace);
        Ok(m.kernel()
            .into_iter()
            .map(|k| self.combine(&k, subspace))
            .collect())
    }

    /// `Σ c_j s_j`
    pub fn combine(&self, c: &[Q], s: &[LieElement]) -> LieElement {
        let mut out = self.zero();
        for (cj, sj) in c.iter().zip(s) {
            if cj.is_zero() {
                continue;
            }
            for k in sj.support() {
                out.coeffs[k] += cj * &sj.coeffs[k];
            }
        }
        out
    }

    /// Whether `ad x` has squarefree minimal polynomial.
    pub fn is_ad_semisimple(&self, x: &LieElement) -> bool {
        self.ad_sparse(x).minimal_polynomial().is_squarefree()
    }

    /// Basis of the span of all brackets, after checking closure of the input span.
    pub fn derived_subalgebra(
        &self,
        basis: &[LieElement],
    ) -> Result<Vec<LieElement>, ChevalleyError> {
        for b in basis {
            self.check(b)?;
        }
        let span = Echelon::from_vectors(self.dim(), basis.iter().map(|b| &b.coeffs));
        let mut derived = Echelon::new(self.dim());
        for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                let c = self.bracket_unchecked(&basis[i], &basis[j]).coeffs;
                if !span.contains(&c) {
                    return Err(ChevalleyError::NotClosed);
                }
                derived.insert(c);
            }
        }
        Ok(self.elements_from(derived.basis()))
    }

    /// Span of brackets for an input known to be a subalgebra; stops once `target` is reached.
    pub(crate) fn derived_trusted(
        &self,
        basis: &[LieElement],
        target: Option<usize>,
    ) -> Vec<LieElement> {
        let mut derived = Echelon::new(self.dim());
        'outer: for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                derived.insert(self.bracket_unchecked(&basis[i], &basis[j]).coeffs);
                if Some(derived.dim()) == target {
                    break 'outer;
                }
            }
        }
        self.elements_from(derived.basis())
    }

    pub fn elements_from(&self, vs: Vec<Vec<Q>>) -> Vec<LieElement> {
        vs.into_iter()
            .map(|c| LieElement {
                algebra: self.cartan_type(),
                coeffs: c,
            })
            .collect()
    }

    /// `exp(ad z) v` for `ad z` nilpotent.
    pub fn exp_ad_apply(&self, z: &LieElement, v: &LieElement) -> LieElement {
        let mut out = v.clone();
        let mut term = v.clone();
        let mut k = 1i64;
        loop {
            term = self
                .bracket_unchecked(z, &term)
                .scale(&crate::field::q(1, k));
            if term.is_zero() {
                break;
            }
            out = out.add(&term);
            k += 1;
            assert!(k < 64, "ad z is not nilpotent");
        }
        out
    }

    pub fn structure_constants_json(&self) -> StructureConstantsJson {
        let np = self.rs.num_positive();
        let mut constants = Vec::new();
        for i in 0..np {
            for j in 0..np {
                let v = self.n[i * self.roots.len() + j];
                if v != 0 {
                    constants.push((
                        self.roots[i].coords.clone(),
                        self.roots[j].coords.clone(),
                        v,
                    ));
                }
            }
        }
        StructureConstantsJson {
            type_label: self.cartan_type().family_label(),
            rank: self.rank(),
            constants,
        }
    }
}

/// Largest `p` with `β - pα` a root.
fn string_down(rs: &RootSystem, beta: &Root, alpha: &Root) -> i64 {
    let mut p = 0;
    let mut cur = beta.sub(alpha);
    while rs.is_root(&cur) {
        p += 1;
        cur = cur.sub(alpha);
    }
    p
}

/// `N_{a,b}` for arbitrary roots, derived from the positive-positive table.
fn general_n(rs: &RootSystem, pp: &HashMap<(usize, usize), Q>, a: &Root, b: &Root) -> Q {
    let s = a.add(b);
    if !rs.is_root(&s) {
        return Q::zero();
    }
    let n6 = |r: &Root| Q::from_i64(rs.inner6(&r.coords, &r.coords));
    match (a.is_positive(), b.is_positive()) {
        (true, true) => pp
            .get(&(rs.index_of(a).unwrap(), rs.index_of(b).unwrap()))
            .cloned()
            .expect("positive constant computed in height order"),
        (false, false) => general_n(rs, pp, &a.neg(), &b.neg()).negated(),
        (false, true) => general_n(rs, pp, b, a).negated(),
        (true, false) => {
            let d = b.neg();
            if s.is_positive() {
                // a = d + ε with ε = a - d positive: N_{a,-d} = -|ε|²/|a|² N_{d,ε}
                let eps = s;
                general_n(rs, pp, &d, &eps)
                    .times(&n6(&eps))
                    .div(&n6(a))
                    .negated()
            } else {
                // d = a + ε with ε = d - a positive: N_{a,-d} = |ε|²/|d|² N_{ε,a}
                let eps = s.neg();
                general_n(rs, pp, &eps, a).times(&n6(&eps)).div(&n6(&d))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::Family;

    fn alg(f: Family, n: usize) -> Arc<ChevalleyAlgebra> {
        ChevalleyAlgebra::from_type(CartanType::new(f, n).unwrap())
    }

    fn jacobi_exhaustive(g: &ChevalleyAlgebra) {
        let d = g.dim();
        let e: Vec<LieElement> = (0..d).map(|k| g.basis_element(k)).collect();
        for i in 0..d {
            for j in 0..d {
                let ij = g.bracket(&e[i], &e[j]).unwrap();
                for k in 0..d {
                    let a = g.bracket(&ij, &e[k]).unwrap();
                    let jk = g.bracket(&e[j], &e[k]).unwrap();
                    let b = g.bracket(&jk, &e[i]).unwrap();
                    let ki = g.bracket(&e[k], &e[i]).unwrap();
                    let c = g.bracket(&ki, &e[j]).unwrap();
                    assert!(a.add(&b).add(&c).is_zero(), "Jacobi fails at {i},{j},{k}");
                }
            }
        }
    }

    #[test]
    fn jacobi_small_types() {
        for (f, n) in [
            (Family::A, 2),
            (Family::B, 2),
            (Family::G, 2),
            (Family::C, 3),
            (Family::B, 3),
        ] {
            jacobi_exhaustive(&alg(f, n));
        }
    }

    #[test]
    fn basic_brackets() {
        let g = alg(Family::A, 2);
        let a1 = g.root_system().simple_root(0);
        let a2 = g.root_system().simple_root(1);
        let h = g.bracket(&g.x(&a1), &g.x(&a1.neg())).unwrap();
        assert_eq!(h, g.h_root(&a1));
        let two_x = g.bracket(&g.h_root(&a1), &g.x(&a1)).unwrap();
        assert_eq!(two_x, g.x(&a1).scale(&Q::from_i64(2)));
        let s = g.bracket(&g.x(&a1), &g.x(&a2)).unwrap();
        assert_eq!(g.n_const(&a1, &a2).abs(), 1);
        assert_eq!(
            s,
            g.x(&a1.add(&a2)).scale(&Q::from_i64(g.n_const(&a1, &a2)))
        );
    }

    #[test]
    fn mismatched_algebras_rejected() {
        let b3 = alg(Family::B, 3);
        let c3 = alg(Family::C, 3);
        assert!(matches!(
            b3.bracket(&b3.h(0), &c3.h(0)),
            Err(ChevalleyError::Mismatch(..))
        ));
    }

    #[test]
    fn semisimplicity() {
        let g = alg(Family::B, 3);
        let a1 = g.root_system().simple_root(0);
        assert!(!g.is_ad_semisimple(&g.x(&a1)));
        assert!(g.is_ad_semisimple(&g.h(0)));
        let xk = g.x(&a1).add(&g.x(&a1.neg()));
        assert!(g.is_ad_semisimple(&xk));
    }

    #[test]
    fn b3_centralizer_dims() {
        let g = alg(Family::B, 3);
        let rs = g.root_system();
        let a1 = rs.simple_root(0);
        let top = rs.highest_root();
        let x_a1 = g.x(&a1).add(&g.x(&a1.neg()));
        let x_pi = g.x(&top).add(&g.x(&top.neg()));
        let full: Vec<LieElement> = (0..g.dim()).map(|k| g.basis_element(k)).collect();
        let c = g.centralizer_in(&x_a1, &full).unwrap();
        assert_eq!(c.len(), 7);
        assert_eq!(g.derived_subalgebra(&c).unwrap().len(), 6);
        let c2 = g.centralizer_in(&x_a1.add(&x_pi), &full).unwrap();
        assert_eq!(c2.len(), 11);
        assert_eq!(g.centralizer_in(&g.zero(), &full).unwrap().len(), g.dim());
    }

    #[test]
    fn derived_of_simple_and_abelian() {
        let g = alg(Family::A, 2);
        let full: Vec<LieElement> = (0..g.dim()).map(|k| g.basis_element(k)).collect();
        assert_eq!(g.derived_subalgebra(&full).unwrap().len(), 8);
        assert!(g.derived_subalgebra(&[g.h(0), g.h(1)]).unwrap().is_empty());
        let a1 = g.root_system().simple_root(0);
        let a2 = g.root_system().simple_root(1);
        assert_eq!(
            g.derived_subalgebra(&[g.x(&a1), g.x(&a2)]),
            Err(ChevalleyError::NotClosed)
        );
    }
}
