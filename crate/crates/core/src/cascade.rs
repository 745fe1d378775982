//! Kostant's cascade of strongly orthogonal highest roots and the `Γ^K` decomposition.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::root_system::{fmt_simple_set, Root, RootSystem};

/// A member `K` of the cascade with its highest root and `Γ^K`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CascadeEntry {
    /// Connected subset of simple-root indices (0-based).
    pub subset: BTreeSet<usize>,
    pub epsilon: Root,
    /// Positive roots of `R_K` not orthogonal to `epsilon`, in root-system order.
    pub gamma: Vec<Root>,
}

impl CascadeEntry {
    pub fn label(&self) -> String {
        fmt_simple_set(&self.subset)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CascadeError {
    #[error("Γ sets of {k1} and {k2} share the root {root}")]
    Overlap {
        k1: String,
        k2: String,
        root: String,
    },
    #[error("positive root {0} is not covered by any Γ^K")]
    Uncovered(String),
    #[error("root {alpha} in Γ^{k} has {count} complements summing to the highest root")]
    Complement {
        k: String,
        alpha: String,
        count: usize,
    },
    #[error("sum {alpha} + {beta} violates the nesting property")]
    Nesting { alpha: String, beta: String },
    #[error("highest roots {0} and {1} are not strongly orthogonal")]
    NotStronglyOrthogonal(String, String),
}

/// `𝒦(T)` in recursion order, components ordered by their least simple root.
pub fn cascade(rs: &RootSystem, t: &BTreeSet<usize>) -> Vec<CascadeEntry> {
    let mut out = Vec::new();
    for comp in rs.connected_components(t) {
        let eps = rs
            .highest_root_of(&comp)
            .expect("nonempty connected subset");
        let gamma: Vec<Root> = rs
            .positive_roots_in(&comp)
            .into_iter()
            .filter(|a| rs.inner6(&a.coords, &eps.coords) != 0)
            .collect();
        let orth: BTreeSet<usize> = comp
            .iter()
            .copied()
            .filter(|&i| rs.inner6(&rs.simple_root(i).coords, &eps.coords) == 0)
            .collect();
        out.push(CascadeEntry {
            subset: comp,
            epsilon: eps,
            gamma,
        });
        out.extend(cascade(rs, &orth));
    }
    out
}

/// Outcome of a successful partition check.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct GammaReport {
    pub entries: usize,
    pub gamma_sizes: Vec<usize>,
    pub positive_roots_in_t: usize,
}

/// Check disjointness, covering, unique complements, nesting and strong orthogonality.
pub fn verify_gamma_partition(
    rs: &RootSystem,
    t: &BTreeSet<usize>,
) -> Result<GammaReport, CascadeError> {
    let entries = cascade(rs, t);
    let positive = rs.positive_roots_in(t);
    let owner = |r: &Root| entries.iter().position(|e| e.gamma.contains(r));

    for (i, e) in entries.iter().enumerate() {
        for f in &entries[i + 1..] {
            if let Some(r) = e.gamma.iter().find(|r| f.gamma.contains(r)) {
                return Err(CascadeError::Overlap {
                    k1: e.label(),
                    k2: f.label(),
                    root: r.to_string(),
                });
            }
            if !rs
                .strongly_orthogonal(&e.epsilon, &f.epsilon)
                .unwrap_or(false)
            {
                return Err(CascadeError::NotStronglyOrthogonal(
                    e.epsilon.to_string(),
                    f.epsilon.to_string(),
                ));
            }
        }
    }
    for r in &positive {
        if owner(r).is_none() {
            return Err(CascadeError::Uncovered(r.to_string()));
        }
    }
    for e in &entries {
        for a in e.gamma.iter().filter(|a| **a != e.epsilon) {
            let count = e.gamma.iter().filter(|b| a.add(b) == e.epsilon).count();
            if count != 1 {
                return Err(CascadeError::Complement {
                    k: e.label(),
                    alpha: a.to_string(),
                    count,
                });
            }
        }
    }
    for (i, e) in entries.iter().enumerate() {
        for (j, f) in entries.iter().enumerate() {
            for a in &e.gamma {
                for b in &f.gamma {
                    let s = a.add(b);
                    if !rs.is_root(&s) {
                        continue;
                    }
                    let ok = (e.subset.is_subset(&f.subset) && entries[j].gamma.contains(&s))
                        || (f.subset.is_subset(&e.subset) && entries[i].gamma.contains(&s));
                    if !ok {
                        return Err(CascadeError::Nesting {
                            alpha: a.to_string(),
                            beta: b.to_string(),
                        });
                    }
                }
            }
        }
    }
    Ok(GammaReport {
        entries: entries.len(),
        gamma_sizes: entries.iter().map(|e| e.gamma.len()).collect(),
        positive_roots_in_t: positive.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::{simple_set, Family};

    #[test]
    fn b3_cascade() {
        let b3 = RootSystem::from_label(Family::B, 3).unwrap();
        let c = cascade(&b3, &simple_set(&[0, 1, 2]));
        let eps: Vec<Vec<i64>> = c.iter().map(|e| e.epsilon.coords.clone()).collect();
        assert_eq!(eps, vec![vec![1, 2, 2], vec![1, 0, 0], vec![0, 0, 1]]);
        let rep = verify_gamma_partition(&b3, &simple_set(&[0, 1, 2])).unwrap();
        assert_eq!(rep.gamma_sizes, vec![7, 1, 1]);
        assert!(cascade(&b3, &BTreeSet::new()).is_empty());
    }

    #[test]
    fn c_cascade_has_rank_entries() {
        for n in 2..=6 {
            let c = RootSystem::from_label(Family::C, n).unwrap();
            let all: BTreeSet<usize> = (0..n).collect();
            let k = cascade(&c, &all);
            assert_eq!(k.len(), n);
            assert!(k.iter().all(|e| c.is_long(&e.epsilon)));
        }
    }

    #[test]
    fn a1_single_entry() {
        let a1 = RootSystem::from_label(Family::A, 1).unwrap();
        let rep = verify_gamma_partition(&a1, &simple_set(&[0])).unwrap();
        assert_eq!(rep.gamma_sizes, vec![1]);
    }
}
