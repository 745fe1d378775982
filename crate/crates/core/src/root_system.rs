//! Finite reduced root systems in simple-root coordinates.
//!
//! Simple roots follow Bourbaki numbering. Internally simple roots are indexed from 0,
//! so `α_i` of the usual notation is index `i - 1`.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{q, Q};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootSystemError {
    #[error("invalid type/rank pair {family:?}{rank}")]
    InvalidType { family: Family, rank: usize },
    #[error("cannot parse type label {0:?}")]
    Parse(String),
    #[error("{0:?} is not a root of {1}")]
    NotARoot(Vec<i64>, String),
    #[error("strong orthogonality needs two distinct roots")]
    EqualRoots,
    #[error("simple root index {0} out of range")]
    SimpleIndex(usize),
}

/// A Cartan–Killing type such as `B3` or `E7`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CartanType {
    pub family: Family,
    pub rank: usize,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<Self, RootSystemError> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C | Family::D => rank >= 2,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(CartanType { family, rank })
        } else {
            Err(RootSystemError::InvalidType { family, rank })
        }
    }

    /// Label in the `{A,B,C,D,E6,E7,E8,F4,G2}` vocabulary.
    pub fn family_label(&self) -> String {
        match self.family {
            Family::A => "A".into(),
            Family::B => "B".into(),
            Family::C => "C".into(),
            Family::D => "D".into(),
            Family::E => format!("E{}", self.rank),
            Family::F => "F4".into(),
            Family::G => "G2".into(),
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fam = match self.family {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::E => "E",
            Family::F => "F",
            Family::G => "G",
        };
        write!(f, "{fam}{}", self.rank)
    }
}

impl FromStr for CartanType {
    type Err = RootSystemError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let err = || RootSystemError::Parse(s.to_string());
        let mut chars = s.chars();
        let fam = match chars.next().ok_or_else(err)?.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return Err(err()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| err())?;
        CartanType::new(fam, rank)
    }
}

/// A root, as integer coordinates in the basis of simple roots.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Root {
    pub coords: Vec<i64>,
}

impl Root {
    pub fn new(coords: Vec<i64>) -> Self {
        Root { coords }
    }
    pub fn simple(rank: usize, i: usize) -> Self {
        let mut c = vec![0; rank];
        c[i] = 1;
        Root { coords: c }
    }
    pub fn height(&self) -> i64 {
        self.coords.iter().sum()
    }
    pub fn is_positive(&self) -> bool {
        self.coords.iter().all(|&c| c >= 0) && self.coords.iter().any(|&c| c > 0)
    }
    pub fn neg(&self) -> Root {
        Root {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
    pub fn add(&self, o: &Root) -> Root {
        Root {
            coords: self
                .coords
                .iter()
                .zip(&o.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
    pub fn sub(&self, o: &Root) -> Root {
        Root {
            coords: self
                .coords
                .iter()
                .zip(&o.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
    /// Simple-root indices with nonzero coefficient.
    pub fn support(&self) -> BTreeSet<usize> {
        self.coords
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, _)| i)
            .collect()
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, &c) in self.coords.iter().enumerate() {
            match c {
                0 => {}
                1 => parts.push(format!("a{}", i + 1)),
                -1 => parts.push(format!("-a{}", i + 1)),
                _ => parts.push(format!("{c}a{}", i + 1)),
            }
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", parts.join("+").replace("+-", "-"))
    }
}

/// A finite reduced root system with its invariant form.
#[derive(Clone, Debug)]
pub struct RootSystem {
    cartan_type: CartanType,
    /// `cartan[i][j] = 2(α_i, α_j) / (α_i, α_i)`
    cartan: Vec<Vec<i64>>,
    /// Six times the invariant form on simple roots (integral for every type).
    form6: Vec<Vec<i64>>,
    positive: Vec<Root>,
    index: HashMap<Vec<i64>, usize>,
}

/// Serialized shape of a root system.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct RootSystemJson {
    #[serde(rename = "type")]
    pub type_label: String,
    pub rank: usize,
    pub cartan_matrix: Vec<Vec<i64>>,
    pub positive_roots: Vec<Vec<i64>>,
}

fn simple_form6(t: CartanType) -> Vec<Vec<i64>> {
    let n = t.rank;
    let mut g = vec![vec![0i64; n]; n];
    let bond = |g: &mut Vec<Vec<i64>>, i: usize, j: usize, v: i64| {
        g[i][j] = v;
        g[j][i] = v;
    };
    match t.family {
        Family::A => {
            for i in 0..n {
                g[i][i] = 12;
            }
            for i in 0..n.saturating_sub(1) {
                bond(&mut g, i, i + 1, -6);
            }
        }
        Family::B => {
            for i in 0..n - 1 {
                g[i][i] = 12;
            }
            g[n - 1][n - 1] = 6;
            for i in 0..n - 1 {
                bond(&mut g, i, i + 1, -6);
            }
        }
        Family::C => {
            for i in 0..n - 1 {
                g[i][i] = 6;
            }
            g[n - 1][n - 1] = 12;
            for i in 0..n - 2 {
                bond(&mut g, i, i + 1, -3);
            }
            bond(&mut g, n - 2, n - 1, -6);
        }
        Family::D => {
            for i in 0..n {
                g[i][i] = 12;
            }
            for i in 0..n.saturating_sub(2) {
                bond(&mut g, i, i + 1, -6);
            }
            if n >= 3 {
                bond(&mut g, n - 3, n - 1, -6);
            }
        }
        Family::E => {
            for i in 0..n {
                g[i][i] = 12;
            }
            bond(&mut g, 0, 2, -6);
            bond(&mut g, 1, 3, -6);
            for i in 2..n - 1 {
                bond(&mut g, i, i + 1, -6);
            }
        }
        Family::F => {
            g[0][0] = 12;
            g[1][1] = 12;
            g[2][2] = 6;
            g[3][3] = 6;
            bond(&mut g, 0, 1, -6);
            bond(&mut g, 1, 2, -6);
            bond(&mut g, 2, 3, -3);
        }
        Family::G => {
            g[0][0] = 4;
            g[1][1] = 12;
            bond(&mut g, 0, 1, -6);
        }
    }
    g
}

impl RootSystem {
    /// Build by reflection closure of the simple roots.
    pub fn build(t: CartanType) -> Result<Self, RootSystemError> {
        let t = CartanType::new(t.family, t.rank)?;
        let n = t.rank;
        let form6 = simple_form6(t);
        let cartan: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| 2 * form6[i][j] / form6[i][i]).collect())
            .collect();
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
        for i in 0..n {
            let r = Root::simple(n, i).coords;
            seen.insert(r.clone());
            queue.push_back(r);
        }
        while let Some(b) = queue.pop_front() {
            for i in 0..n {
                // <b, α_i^∨> = sum_j b_j cartan[i][j]
                let pairing: i64 = (0..n).map(|j| b[j] * cartan[i][j]).sum();
                if pairing == 0 {
                    continue;
                }
                let mut s = b.clone();
                s[i] -= pairing;
                if seen.insert(s.clone()) {
                    queue.push_back(s);
                }
            }
        }
        let mut positive: Vec<Root> = seen
            .into_iter()
            .map(Root::new)
            .filter(|r| r.is_positive())
            .collect();
        positive.sort_by(|a, b| {
            a.height()
                .cmp(&b.height())
                .then_with(|| b.coords.cmp(&a.coords))
        });
        let np = positive.len();
        let mut index = HashMap::with_capacity(2 * np);
        for (k, r) in positive.iter().enumerate() {
            index.insert(r.coords.clone(), k);
            index.insert(r.neg().coords, np + k);
        }
        Ok(RootSystem {
            cartan_type: t,
            cartan,
            form6,
            positive,
            index,
        })
    }

    pub fn from_label(family: Family, rank: usize) -> Result<Self, RootSystemError> {
        Self::build(CartanType::new(family, rank)?)
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }
    pub fn rank(&self) -> usize {
        self.cartan_type.rank
    }
    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }
    /// The invariant form on simple roots, long roots of squared length 2.
    pub fn bilinear_form(&self) -> Vec<Vec<Q>> {
        self.form6
            .iter()
            .map(|r| r.iter().map(|&x| q(x, 6)).collect())
            .collect()
    }
    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }
    pub fn num_positive(&self) -> usize {
        self.positive.len()
    }
    /// All roots: positive roots followed by their negatives in the same order.
    pub fn roots(&self) -> Vec<Root> {
        let mut v = self.positive.clone();
        v.extend(self.positive.iter().map(|r| r.neg()));
        v
    }
    /// Root at position `k` in the `roots()` ordering.
    pub fn root(&self, k: usize) -> Root {
        let np = self.positive.len();
        if k < np {
            self.positive[k].clone()
        } else {
            self.positive[k - np].neg()
        }
    }
    pub fn index_of(&self, r: &Root) -> Option<usize> {
        self.index.get(&r.coords).copied()
    }
    pub fn is_root(&self, r: &Root) -> bool {
        self.index.contains_key(&r.coords)
    }
    pub fn simple_root(&self, i: usize) -> Root {
        Root::simple(self.rank(), i)
    }
    pub fn highest_root(&self) -> Root {
        self.positive.last().unwrap().clone()
    }

    /// Six times the invariant inner product of two coordinate vectors.
    pub fn inner6(&self, a: &[i64], b: &[i64]) -> i64 {
        let n = self.rank();
        let mut s = 0;
        for i in 0..n {
            if a[i] == 0 {
                continue;
            }
            for j in 0..n {
                s += a[i] * self.form6[i][j] * b[j];
            }
        }
        s
    }
    pub fn inner(&self, a: &Root, b: &Root) -> Q {
        q(self.inner6(&a.coords, &b.coords), 6)
    }
    pub fn norm2(&self, a: &Root) -> Q {
        self.inner(a, a)
    }
    /// `<β, α^∨> = 2(β,α)/(α,α)`, always an integer for roots.
    pub fn pairing(&self, beta: &Root, alpha: &Root) -> i64 {
        2 * self.inner6(&beta.coords, &alpha.coords) / self.inner6(&alpha.coords, &alpha.coords)
    }
    pub fn reflect(&self, beta: &Root, alpha: &Root) -> Root {
        let k = self.pairing(beta, alpha);
        Root::new(
            beta.coords
                .iter()
                .zip(&alpha.coords)
                .map(|(b, a)| b - k * a)
                .collect(),
        )
    }
    pub fn is_long(&self, a: &Root) -> bool {
        self.inner6(&a.coords, &a.coords) == 12
    }

    fn check(&self, r: &Root) -> Result<(), RootSystemError> {
        if self.is_root(r) {
            Ok(())
        } else {
            Err(RootSystemError::NotARoot(
                r.coords.clone(),
                self.cartan_type.to_string(),
            ))
        }
    }

    /// `α + β` if it is a root.
    pub fn root_sum(&self, a: &Root, b: &Root) -> Result<Option<Root>, RootSystemError> {
        self.check(a)?;
        self.check(b)?;
        let s = a.add(b);
        Ok(self.is_root(&s).then_some(s))
    }

    pub fn strongly_orthogonal(&self, a: &Root, b: &Root) -> Result<bool, RootSystemError> {
        self.check(a)?;
        self.check(b)?;
        if a == b {
            return Err(RootSystemError::EqualRoots);
        }
        Ok(!self.is_root(&a.add(b)) && !self.is_root(&a.sub(b)))
    }

    /// Simple roots `i`, `j` are joined in the Dynkin diagram.
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        i != j && self.form6[i][j] != 0
    }

    /// Dynkin-connected parts of `t`, each sorted, ordered by least element.
    pub fn connected_components(&self, t: &BTreeSet<usize>) -> Vec<BTreeSet<usize>> {
        let mut left: BTreeSet<usize> = t.clone();
        let mut out = Vec::new();
        while let Some(&start) = left.iter().next() {
            let mut comp = BTreeSet::new();
            let mut stack = vec![start];
            left.remove(&start);
            while let Some(v) = stack.pop() {
                comp.insert(v);
                let nbrs: Vec<usize> = left
                    .iter()
                    .copied()
                    .filter(|&w| self.adjacent(v, w))
                    .collect();
                for w in nbrs {
                    left.remove(&w);
                    stack.push(w);
                }
            }
            out.push(comp);
        }
        out
    }

    /// Positive roots supported in `t`.
    pub fn positive_roots_in(&self, t: &BTreeSet<usize>) -> Vec<Root> {
        self.positive
            .iter()
            .filter(|r| r.support().is_subset(t))
            .cloned()
            .collect()
    }

    /// Highest root of the subsystem generated by a connected subset `k`.
    pub fn highest_root_of(&self, k: &BTreeSet<usize>) -> Option<Root> {
        self.positive_roots_in(k)
            .into_iter()
            .max_by_key(|r| r.height())
    }

    pub fn to_json(&self) -> RootSystemJson {
        RootSystemJson {
            type_label: self.cartan_type.family_label(),
            rank: self.rank(),
            cartan_matrix: self.cartan.clone(),
            positive_roots: self.positive.iter().map(|r| r.coords.clone()).collect(),
        }
    }

    /// Validate a simple-root index.
    pub fn check_simple(&self, i: usize) -> Result<(), RootSystemError> {
        if i < self.rank() {
            Ok(())
        } else {
            Err(RootSystemError::SimpleIndex(i))
        }
    }
}

/// Convenience: set of simple-root indices.
pub fn simple_set(ix: &[usize]) -> BTreeSet<usize> {
    ix.iter().copied().collect()
}

/// Format a set of 0-based simple indices as `{a1,a3}`.
pub fn fmt_simple_set(s: &BTreeSet<usize>) -> String {
    let inner: Vec<String> = s.iter().map(|i| format!("a{}", i + 1)).collect();
    format!("{{{}}}", inner.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(f: Family, n: usize) -> RootSystem {
        RootSystem::from_label(f, n).unwrap()
    }

    #[test]
    fn counts() {
        let cases = [
            (Family::A, 1, 1),
            (Family::A, 4, 10),
            (Family::B, 3, 9),
            (Family::C, 4, 16),
            (Family::D, 2, 2),
            (Family::D, 3, 6),
            (Family::D, 5, 20),
            (Family::E, 6, 36),
            (Family::E, 7, 63),
            (Family::E, 8, 120),
            (Family::F, 4, 24),
            (Family::G, 2, 6),
        ];
        for (f, n, c) in cases {
            assert_eq!(rs(f, n).num_positive(), c, "{f:?}{n}");
        }
    }

    #[test]
    fn b3_highest_and_sums() {
        let b3 = rs(Family::B, 3);
        assert_eq!(b3.highest_root().coords, vec![1, 2, 2]);
        let a2 = b3.simple_root(1);
        let x = Root::new(vec![1, 1, 2]);
        assert_eq!(
            b3.root_sum(&a2, &x).unwrap(),
            Some(Root::new(vec![1, 2, 2]))
        );
        assert_eq!(
            b3.root_sum(&b3.simple_root(0), &b3.simple_root(2)).unwrap(),
            None
        );
        let a1 = rs(Family::A, 1);
        assert_eq!(
            a1.root_sum(&a1.simple_root(0), &a1.simple_root(0)).unwrap(),
            None
        );
    }

    #[test]
    fn b3_strong_orthogonality() {
        let b3 = rs(Family::B, 3);
        // e1+e2 = a1+2a2+2a3, e1-e2 = a1, e3 = a3
        let e12 = Root::new(vec![1, 2, 2]);
        assert!(b3.strongly_orthogonal(&e12, &b3.simple_root(0)).unwrap());
        assert!(!b3
            .strongly_orthogonal(&b3.simple_root(0), &b3.simple_root(1))
            .unwrap());
        assert!(b3.strongly_orthogonal(&e12, &b3.simple_root(2)).unwrap());
        assert_eq!(
            b3.strongly_orthogonal(&e12, &e12),
            Err(RootSystemError::EqualRoots)
        );
    }

    #[test]
    fn components() {
        let b3 = rs(Family::B, 3);
        assert_eq!(
            b3.connected_components(&simple_set(&[0, 2])),
            vec![simple_set(&[0]), simple_set(&[2])]
        );
        assert!(b3.connected_components(&BTreeSet::new()).is_empty());
        assert_eq!(
            b3.connected_components(&simple_set(&[0, 1, 2])),
            vec![simple_set(&[0, 1, 2])]
        );
    }

    #[test]
    fn invalid_ranks_rejected() {
        assert!(CartanType::new(Family::B, 1).is_err());
        assert!(CartanType::new(Family::E, 5).is_err());
        assert!(CartanType::new(Family::A, 0).is_err());
        assert!("X3".parse::<CartanType>().is_err());
        assert_eq!(
            "e7".parse::<CartanType>().unwrap(),
            CartanType {
                family: Family::E,
                rank: 7
            }
        );
    }

    #[test]
    fn cartan_matrix_conventions() {
        let b2 = rs(Family::B, 2);
        assert_eq!(b2.cartan_matrix(), &[vec![2, -1], vec![-2, 2]]);
        let g2 = rs(Family::G, 2);
        assert_eq!(g2.cartan_matrix(), &[vec![2, -3], vec![-1, 2]]);
        assert_eq!(g2.highest_root().coords, vec![3, 2]);
    }
}
