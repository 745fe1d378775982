//! Machine-readable verification reports and the aggregate `verify-all` check.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Value};

use crate::cascade::verify_gamma_partition;
use crate::centralizer::{nonregular_locus, subpair};
use crate::field::qi;
use crate::matrix_model::{characteristic_check, minimal_orbit_not_distinguished, SoPair};
use crate::orbits::{
    characteristic, enumerate_dyo, forget_signs, is_even, Ambient, Numeral, SignedYoungDiagram,
};
use crate::parabolic::{catalog_types, scan_type, AbelianParabolic};
use crate::root_system::{fmt_simple_set, CartanType, Family, RootSystem};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Assertion {
    pub name: String,
    pub expected: Value,
    pub actual: Value,
    pub status: Status,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct VerificationReport {
    pub schema: u32,
    pub command: String,
    pub inputs: Value,
    pub assertions: Vec<Assertion>,
    pub seed: u64,
    pub version: String,
    /// Command output (rows, reports) alongside the assertions.
    #[serde(skip_serializing_if = "Value::is_null")]
    pub data: Value,
}

impl VerificationReport {
    pub fn new(command: &str, inputs: Value, seed: u64) -> Self {
        VerificationReport {
            schema: SCHEMA_VERSION,
            command: command.to_string(),
            inputs,
            assertions: Vec::new(),
            seed,
            version: env!("CARGO_PKG_VERSION").to_string(),
            data: Value::Null,
        }
    }

    /// Record `expected == actual`; returns whether it passed.
    pub fn check<T: Serialize + PartialEq>(
        &mut self,
        name: impl Into<String>,
        expected: T,
        actual: T,
    ) -> bool {
        let ok = expected == actual;
        self.push(name, json!(expected), json!(actual), ok);
        ok
    }

    pub fn check_true(&mut self, name: impl Into<String>, actual: bool) -> bool {
        self.push(name, json!(true), json!(actual), actual);
        actual
    }

    /// Record an assertion that could not be evaluated because of an error.
    pub fn error(&mut self, name: impl Into<String>, expected: Value, err: impl std::fmt::Display) {
        self.push(name, expected, json!({ "error": err.to_string() }), false);
    }

    pub fn skip(&mut self, name: impl Into<String>, reason: &str) {
        self.assertions.push(Assertion {
            name: name.into(),
            expected: Value::Null,
            actual: json!({ "skipped": reason }),
            status: Status::Skipped,
        });
    }

    fn push(&mut self, name: impl Into<String>, expected: Value, actual: Value, ok: bool) {
        let status = if ok { Status::Pass } else { Status::Fail };
        self.assertions.push(Assertion {
            name: name.into(),
            expected,
            actual,
            status,
        });
    }

    pub fn count(&self, s: Status) -> usize {
        self.assertions.iter().filter(|a| a.status == s).count()
    }

    pub fn passed(&self) -> bool {
        self.count(Status::Fail) == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Plain-text table, one assertion per line.
    pub fn to_text(&self) -> String {
        let width = self
            .assertions
            .iter()
            .map(|a| a.name.len())
            .max()
            .unwrap_or(0);
        let mut out = String::new();
        for a in &self.assertions {
            let tag = match a.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Skipped => "skip",
            };
            let _ = write!(out, "{tag}  {:width$}  {}", a.name, compact(&a.actual));
            if a.status == Status::Fail {
                let _ = write!(out, "  (expected {})", compact(&a.expected));
            }
            out.push('\n');
        }
        let _ = writeln!(
            out,
            "{} passed, {} failed, {} skipped",
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Skipped)
        );
        out
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn set_labels(v: &[BTreeSet<usize>]) -> Vec<String> {
    v.iter().map(fmt_simple_set).collect()
}

/// Abelian-parabolic table, Cartan subspace checks and cascade invariants.
pub fn verify_parabolics(r: &mut VerificationReport, max_rank: usize) {
    for t in catalog_types(max_rank) {
        match scan_type(t) {
            Err(e) => r.error(format!("table/{t}"), json!("scan matches reference"), e),
            Ok(entries) if entries.is_empty() => {
                r.check(format!("table/{t}/no-abelian-maximal"), 0, 0);
            }
            Ok(entries) => {
                for e in entries {
                    let name = format!("table/{t}/a{}", e.row.node + 1);
                    let mut got: Vec<BTreeSet<usize>> =
                        e.parabolic.e_set.iter().map(|k| k.subset.clone()).collect();
                    got.sort();
                    r.check(
                        name.clone(),
                        json!({ "E": set_labels(&e.row.e_set), "rank": e.row.e_set.len() }),
                        json!({ "E": set_labels(&got), "rank": e.parabolic.rank() }),
                    );
                    match e.parabolic.verify_cartan_subspace() {
                        Ok(c) => {
                            r.check_true(
                                format!("cartan-subspace/{t}/a{}", e.row.node + 1),
                                c.commuting && c.semisimple,
                            );
                        }
                        Err(err) => r.error(
                            format!("cartan-subspace/{t}/a{}", e.row.node + 1),
                            json!(true),
                            err,
                        ),
                    }
                }
            }
        }
    }
    for t in catalog_types(max_rank) {
        let rs = RootSystem::build(t).expect("valid type");
        let all: BTreeSet<usize> = (0..t.rank).collect();
        match verify_gamma_partition(&rs, &all) {
            Ok(g) => {
                r.check(
                    format!("cascade/{t}/gamma-partition"),
                    rs.num_positive(),
                    g.gamma_sizes.iter().sum::<usize>(),
                );
            }
            Err(e) => r.error(
                format!("cascade/{t}/gamma-partition"),
                json!(rs.num_positive()),
                e,
            ),
        }
    }
}

fn line_dim(
    p: &AbelianParabolic,
    k_first: usize,
    k_pi: usize,
    mu: i64,
    lambda: i64,
) -> Option<usize> {
    let mut c = vec![qi(0); p.rank()];
    c[k_first] = qi(mu);
    c[k_pi] = qi(lambda);
    subpair(p, &p.cartan_element(&c)).ok().map(|s| s.dim_g_x)
}

/// Centralizer dimensions on the four special lines of `(B3, α1)` and `(D5, α1)`.
pub fn verify_special_lines(r: &mut VerificationReport) {
    for (family, n, near, far) in [(Family::B, 3, 7, 11), (Family::D, 5, 19, 29)] {
        let t = CartanType::new(family, n).expect("valid type");
        let p = match AbelianParabolic::maximal(t, 0) {
            Ok(p) => p,
            Err(e) => {
                r.error(format!("lines/{t}"), json!("pair"), e);
                continue;
            }
        };
        let first: BTreeSet<usize> = [0].into_iter().collect();
        let k_first = p
            .e_set
            .iter()
            .position(|e| e.subset == first)
            .expect("{α1} in the cascade");
        let k_pi = 1 - k_first;
        for (label, mu, lambda, want) in [
            ("X_{a1}", 1, 0, near),
            ("X_Pi", 0, 1, near),
            ("X_{a1}+X_Pi", 1, 1, far),
            ("X_{a1}-X_Pi", 1, -1, far),
        ] {
            r.check(
                format!("lines/{t}/dim g^X at {label}"),
                Some(want),
                line_dim(&p, k_first, k_pi, mu, lambda),
            );
        }
        match nonregular_locus(&p, k_first, k_pi) {
            Ok(l) => {
                r.check(
                    format!("lines/{t}/non-regular locus"),
                    vec![[0, 1], [1, -1], [1, 0], [1, 1]],
                    l.special_lines,
                );
            }
            Err(e) => r.error(format!("lines/{t}/non-regular locus"), json!("4 lines"), e),
        }
    }
}

/// Orbit counts, row bound and the evenness statement for `p ≤ max_p`.
pub fn verify_orbits(r: &mut VerificationReport, max_p: usize) {
    let expected_count = |p: usize| match p {
        2 => 9,
        3 => 8,
        4 => 10,
        _ => 9,
    };
    for p in 2..=max_p {
        let all = enumerate_dyo(p);
        r.check(format!("orbits/p={p}/count"), expected_count(p), all.len());
        r.check(
            format!("orbits/p={p}/max row <= 5"),
            true,
            all.iter().all(|d| d.max_row() <= 5),
        );
        let amb = Ambient::for_size(p + 2);
        let mut parity_ok = true;
        for d in &all {
            let yd = forget_signs(d).diagram;
            let c = characteristic(&yd, amb).expect("sizes agree");
            let even = c.all().iter().all(|c| is_even(c));
            let minimal = p >= 3 && is_minimal_shape(d);
            if even == minimal {
                parity_ok = false;
            }
        }
        r.check(
            format!("orbits/p={p}/even unless (2,2,1,..)"),
            true,
            parity_ok,
        );
        if p >= 3 {
            for numeral in [Numeral::I, Numeral::II] {
                let name = format!("orbits/p={p}/minimal {numeral} has semisimple centralizing H");
                match minimal_orbit_not_distinguished(p, numeral) {
                    Ok(w) => {
                        r.check_true(name, w.holds());
                    }
                    Err(e) => r.error(name, json!(true), e),
                }
            }
        }
    }
}

fn is_minimal_shape(d: &SignedYoungDiagram) -> bool {
    let s = d.shape();
    s.len() >= 2 && s[0] == 2 && s[1] == 2 && s[2..].iter().all(|&x| x == 1)
}

/// Combinatorial characteristic against the matrix computation for every orbit.
pub fn verify_characteristics(r: &mut VerificationReport, max_p: usize) {
    for p in 2..=max_p {
        let pair = SoPair::new(p).expect("p >= 2");
        let mut bad = Vec::new();
        for d in enumerate_dyo(p) {
            match characteristic_check(&pair, &d) {
                Ok(c) if c.agrees => {}
                Ok(c) => bad.push(format!("{}: {}", d, c.computed)),
                Err(e) => bad.push(format!("{d}: {e}")),
            }
        }
        r.check(
            format!("characteristics/p={p}/recipe = matrix"),
            Vec::<String>::new(),
            bad,
        );
    }
}

/// The aggregate report.
pub fn verify_all(max_rank: usize, seed: u64) -> VerificationReport {
    let max_p = (2 * max_rank).saturating_sub(1).clamp(2, 8);
    let mut r = VerificationReport::new(
        "verify-all",
        json!({ "max_rank": max_rank, "max_p": max_p }),
        seed,
    );
    verify_parabolics(&mut r, max_rank);
    verify_special_lines(&mut r);
    verify_orbits(&mut r, max_p.max(12));
    verify_characteristics(&mut r, max_p);
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn statuses() {
        let mut r = VerificationReport::new("x", json!({}), 0);
        assert!(r.check("a", 1, 1));
        assert!(!r.check("b", "1/2", "1/3"));
        r.skip("c", "not applicable");
        assert_eq!(
            (
                r.count(Status::Pass),
                r.count(Status::Fail),
                r.count(Status::Skipped)
            ),
            (1, 1, 1)
        );
        assert!(!r.passed());
        assert!(r.to_json().contains("\"status\": \"fail\""));
        assert!(r.to_text().contains("1 passed, 1 failed, 1 skipped"));
    }

    #[test]
    fn special_lines_pass() {
        let mut r = VerificationReport::new("lines", json!({}), 0);
        verify_special_lines(&mut r);
        assert!(r.passed(), "{}", r.to_text());
        assert_eq!(r.assertions.len(), 10);
    }
}
