//! Young diagrams for nilpotent orbits of `so_{p+2}`, orthogonal signed Young diagrams of
//! signature `(p, 2)`, and characteristics.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrbitError {
    #[error("diagram has {got} boxes, ambient {ambient} needs {want}")]
    SizeMismatch {
        got: usize,
        want: usize,
        ambient: String,
    },
    #[error("cannot parse orbit description: {0}")]
    Parse(String),
    #[error("diagram violates {0}")]
    Invalid(&'static str),
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub enum Numeral {
    I,
    II,
}

impl fmt::Display for Numeral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Numeral::I => "I",
            Numeral::II => "II",
        })
    }
}

impl FromStr for Numeral {
    type Err = OrbitError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "I" => Ok(Numeral::I),
            "II" => Ok(Numeral::II),
            _ => Err(OrbitError::Parse(format!("numeral {s:?}"))),
        }
    }
}

/// A partition with the optional numeral of very even diagrams.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct YoungDiagram {
    pub rows: Vec<usize>,
    pub numeral: Option<Numeral>,
}

impl YoungDiagram {
    /// Checks P1 and the P2 numeral rule; rows are sorted decreasingly.
    pub fn new(mut rows: Vec<usize>, numeral: Option<Numeral>) -> Result<Self, OrbitError> {
        rows.retain(|&r| r > 0);
        rows.sort_unstable_by(|a, b| b.cmp(a));
        let d = YoungDiagram { rows, numeral };
        if !d.satisfies_p1() {
            return Err(OrbitError::Invalid("P1"));
        }
        if d.all_even() != numeral.is_some() {
            return Err(OrbitError::Invalid("P2"));
        }
        Ok(d)
    }
    pub fn size(&self) -> usize {
        self.rows.iter().sum()
    }
    pub fn all_even(&self) -> bool {
        !self.rows.is_empty() && self.rows.iter().all(|r| r % 2 == 0)
    }
    fn satisfies_p1(&self) -> bool {
        self.rows
            .iter()
            .filter(|r| *r % 2 == 0)
            .all(|r| self.rows.iter().filter(|s| *s == r).count() % 2 == 0)
    }
    /// Shorthand such as `(3,1,1)`.
    pub fn shape_label(&self) -> String {
        shape_label(&self.rows)
    }
}

impl fmt::Display for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.shape_label())?;
        if let Some(n) = self.numeral {
            write!(f, "-{n}")?;
        }
        Ok(())
    }
}

pub fn shape_label(rows: &[usize]) -> String {
    format!("({})", rows.iter().join(","))
}

/// Partitions of `n` in decreasing lexicographic order.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=n.min(max)).rev() {
            cur.push(k);
            rec(n - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Young diagrams of size `n` satisfying P1, with numerals expanded per P2.
pub fn enumerate_yd(n: usize) -> Vec<YoungDiagram> {
    let mut out = Vec::new();
    for rows in partitions(n) {
        let d = YoungDiagram {
            rows,
            numeral: None,
        };
        if !d.satisfies_p1() {
            continue;
        }
        if d.all_even() {
            for num in [Numeral::I, Numeral::II] {
                out.push(YoungDiagram {
                    numeral: Some(num),
                    ..d.clone()
                });
            }
        } else {
            out.push(d);
        }
    }
    out
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

impl Serialize for Sign {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_char(self.symbol())
    }
}

/// A row with alternating signs starting from `lead`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct SignedRow {
    pub len: usize,
    pub lead: Sign,
}

impl SignedRow {
    pub fn plus_count(&self) -> usize {
        match self.lead {
            Sign::Plus => self.len.div_ceil(2),
            Sign::Minus => self.len / 2,
        }
    }
    pub fn minus_count(&self) -> usize {
        self.len - self.plus_count()
    }
    pub fn signs(&self) -> Vec<Sign> {
        let mut s = self.lead;
        (0..self.len)
            .map(|_| {
                let c = s;
                s = s.flip();
                c
            })
            .collect()
    }
    pub fn pattern(&self) -> String {
        self.signs().into_iter().map(Sign::symbol).collect()
    }
}

/// Orthogonal signed Young diagram of signature `(p, 2)` in canonical row order.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct SignedYoungDiagram {
    pub rows: Vec<SignedRow>,
    pub numerals: Vec<Numeral>,
}

fn canonical(rows: &mut [SignedRow]) {
    rows.sort_by(|a, b| b.len.cmp(&a.len).then(a.lead.cmp(&b.lead)));
}

/// Numeral arity forced by P4/P5 for a set of rows.
pub fn numeral_arity(rows: &[SignedRow]) -> usize {
    if rows.iter().all(|r| r.len % 2 == 0) {
        return 2;
    }
    let odd: Vec<&SignedRow> = rows.iter().filter(|r| r.len % 2 == 1).collect();
    let even_plus = odd.iter().all(|r| r.plus_count() % 2 == 0);
    let even_minus = odd.iter().all(|r| r.minus_count() % 2 == 0);
    usize::from(even_plus || even_minus)
}

impl SignedYoungDiagram {
    /// Validate signature, P1, P3 and the numeral arity of P4/P5, then canonicalize.
    pub fn new(
        mut rows: Vec<SignedRow>,
        numerals: Vec<Numeral>,
        p: usize,
    ) -> Result<Self, OrbitError> {
        rows.retain(|r| r.len > 0);
        canonical(&mut rows);
        let plus: usize = rows.iter().map(|r| r.plus_count()).sum();
        let minus: usize = rows.iter().map(|r| r.minus_count()).sum();
        if plus != p || minus != 2 {
            return Err(OrbitError::Invalid("signature"));
        }
        if !(YoungDiagram {
            rows: rows.iter().map(|r| r.len).collect(),
            numeral: None,
        })
        .satisfies_p1()
        {
            return Err(OrbitError::Invalid("P1"));
        }
        if rows.iter().any(|r| r.len % 2 == 0 && r.lead != Sign::Plus) {
            return Err(OrbitError::Invalid("P3"));
        }
        if numerals.len() != numeral_arity(&rows) {
            return Err(OrbitError::Invalid("P4/P5"));
        }
        Ok(SignedYoungDiagram { rows, numerals })
    }

    pub fn p(&self) -> usize {
        self.rows.iter().map(|r| r.plus_count()).sum()
    }
    pub fn shape(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.len).collect()
    }
    pub fn max_row(&self) -> usize {
        self.rows.first().map_or(0, |r| r.len)
    }
    /// Row patterns joined by `|`, e.g. `+-+|-|+`.
    pub fn pattern(&self) -> String {
        self.rows.iter().map(|r| r.pattern()).join("|")
    }

    /// Parse `shape[:leads][:numerals]`, e.g. `3,1,1:+-+:I` or `2,2,1:++ +`.
    /// `leads` gives one leading sign per row; omitted means the unique valid choice.
    pub fn parse(p: usize, s: &str) -> Result<Self, OrbitError> {
        let mut parts = s.split(':');
        let shape: Vec<usize> = parts
            .next()
            .unwrap_or("")
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<usize>()
                    .map_err(|_| OrbitError::Parse(s.into()))
            })
            .collect::<Result<_, _>>()?;
        // either one lead sign per row ("-++") or the full pattern ("-+-|+|+")
        let leads: Option<String> = match parts.next().filter(|x| !x.is_empty()) {
            None => None,
            // a single-row pattern has no `|`; it is told apart from leads by its length
            Some(l)
                if l.contains('|')
                    || (l.trim().len() == shape.iter().sum::<usize>()
                        && l.trim().len() != shape.len()) =>
            {
                let rows: Vec<&str> = l.split('|').map(str::trim).collect();
                let valid = rows.len() == shape.len()
                    && rows.iter().zip(&shape).all(|(r, &len)| {
                        r.chars().count() == len
                            && r.chars().all(|c| c == '+' || c == '-')
                            && r.as_bytes().windows(2).all(|w| w[0] != w[1])
                    });
                if !valid {
                    return Err(OrbitError::Parse(format!(
                        "sign pattern {l:?} does not fit the shape"
                    )));
                }
                Some(rows.iter().map(|r| &r[..1]).collect())
            }
            Some(l) => Some(l.to_string()),
        };
        let nums: Vec<Numeral> = match parts.next() {
            None | Some("") => vec![],
            Some(n) => n.split(',').map(str::parse).collect::<Result<_, _>>()?,
        };
        if parts.next().is_some() {
            return Err(OrbitError::Parse(s.into()));
        }
        let mut sorted = shape.clone();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        let candidates: Vec<SignedYoungDiagram> = enumerate_dyo(p)
            .into_iter()
            .filter(|d| d.shape() == sorted)
            .filter(|d| nums.is_empty() || d.numerals == nums)
            .filter(|d| match leads.as_deref() {
                None => true,
                Some(l) => {
                    let want: Vec<char> = l.chars().filter(|c| !c.is_whitespace()).collect();
                    let mut given: Vec<SignedRow> = shape
                        .iter()
                        .zip(&want)
                        .map(|(&len, &c)| SignedRow {
                            len,
                            lead: if c == '-' { Sign::Minus } else { Sign::Plus },
                        })
                        .collect();
                    canonical(&mut given);
                    want.len() == shape.len() && given == d.rows
                }
            })
            .collect();
        match candidates.len() {
            1 => Ok(candidates.into_iter().next().unwrap()),
            0 => Err(OrbitError::Parse(format!("no orbit {s:?} for p = {p}"))),
            _ => Err(OrbitError::Parse(format!(
                "{s:?} is ambiguous, give signs and numerals"
            ))),
        }
    }
}

impl fmt::Display for SignedYoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", shape_label(&self.shape()), self.pattern())?;
        if !self.numerals.is_empty() {
            write!(f, " [{}]", self.numerals.iter().join(","))?;
        }
        Ok(())
    }
}

/// All orthogonal signed Young diagrams of signature `(p, 2)`, numerals expanded.
pub fn enumerate_dyo(p: usize) -> Vec<SignedYoungDiagram> {
    let mut out = Vec::new();
    for shape in partitions(p + 2) {
        if !(YoungDiagram {
            rows: shape.clone(),
            numeral: None,
        })
        .satisfies_p1()
        {
            continue;
        }
        // distinct lengths with multiplicities; choose how many rows of each length lead with '-'
        let mut groups: Vec<(usize, usize)> = Vec::new();
        for &l in &shape {
            match groups.last_mut() {
                Some((len, m)) if *len == l => *m += 1,
                _ => groups.push((l, 1)),
            }
        }
        let mut choice = vec![0usize; groups.len()];
        loop {
            let mut rows = Vec::new();
            for ((len, m), &k) in groups.iter().zip(&choice) {
                rows.extend((0..m - k).map(|_| SignedRow {
                    len: *len,
                    lead: Sign::Plus,
                }));
                rows.extend((0..k).map(|_| SignedRow {
                    len: *len,
                    lead: Sign::Minus,
                }));
            }
            let arity = numeral_arity(&rows);
            let numeral_sets: Vec<Vec<Numeral>> = match arity {
                0 => vec![vec![]],
                1 => vec![vec![Numeral::I], vec![Numeral::II]],
                _ => vec![
                    vec![Numeral::I, Numeral::I],
                    vec![Numeral::I, Numeral::II],
                    vec![Numeral::II, Numeral::I],
                    vec![Numeral::II, Numeral::II],
                ],
            };
            for nums in numeral_sets {
                if let Ok(d) = SignedYoungDiagram::new(rows.clone(), nums, p) {
                    out.push(d);
                }
            }
            // odometer over the minus-lead counts
            let mut i = 0;
            while i < groups.len() && choice[i] == groups[i].1 {
                choice[i] = 0;
                i += 1;
            }
            if i == groups.len() {
                break;
            }
            choice[i] += 1;
        }
    }
    out
}

/// The underlying complex orbit's shape; numerals are not carried over.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Forgotten {
    pub diagram: YoungDiagram,
    /// Set for very even shapes: which numeral the complex orbit carries is not determined here.
    pub numeral_undetermined: bool,
}

pub fn forget_signs(d: &SignedYoungDiagram) -> Forgotten {
    let rows = d.shape();
    let all_even = rows.iter().all(|r| r % 2 == 0);
    Forgotten {
        diagram: YoungDiagram {
            rows,
            numeral: None,
        },
        numeral_undetermined: all_even,
    }
}

/// Type of the ambient simple algebra: `B_r` (size `2r+1`) or `D_r` (size `2r`).
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum Ambient {
    B(usize),
    D(usize),
}

impl Ambient {
    /// Ambient for `so_n`.
    pub fn for_size(n: usize) -> Ambient {
        if n % 2 == 1 {
            Ambient::B(n / 2)
        } else {
            Ambient::D(n / 2)
        }
    }
    pub fn size(&self) -> usize {
        match *self {
            Ambient::B(r) => 2 * r + 1,
            Ambient::D(r) => 2 * r,
        }
    }
    pub fn rank(&self) -> usize {
        match *self {
            Ambient::B(r) | Ambient::D(r) => r,
        }
    }
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ambient::B(r) => write!(f, "B{r}"),
            Ambient::D(r) => write!(f, "D{r}"),
        }
    }
}

/// Labels `α_i(h⁺)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct Characteristic {
    pub entries: Vec<i64>,
}

impl fmt::Display for Characteristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.entries.iter().join(","))
    }
}

/// One characteristic, or the pair for a very even diagram in type D.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(untagged)]
pub enum Characteristics {
    Single(Characteristic),
    VeryEven {
        one: Characteristic,
        two: Characteristic,
    },
}

impl Characteristics {
    pub fn all(&self) -> Vec<&Characteristic> {
        match self {
            Characteristics::Single(c) => vec![c],
            Characteristics::VeryEven { one, two } => vec![one, two],
        }
    }
    /// The entry for a numeral (ignored unless very even).
    pub fn select(&self, n: Option<Numeral>) -> &Characteristic {
        match (self, n) {
            (Characteristics::Single(c), _) => c,
            (Characteristics::VeryEven { two, .. }, Some(Numeral::II)) => two,
            (Characteristics::VeryEven { one, .. }, _) => one,
        }
    }
}

/// The dominant sequence `h_1 ≥ … ≥ h_r` of a partition.
pub fn dominant_sequence(rows: &[usize], r: usize) -> Vec<i64> {
    let mut terms: Vec<i64> = rows
        .iter()
        .flat_map(|&d| (0..d).map(move |k| d as i64 - 1 - 2 * k as i64))
        .collect();
    terms.sort_unstable_by(|a, b| b.cmp(a));
    terms.truncate(r);
    terms
}

/// Characteristic of the complex orbit with partition `d` in the given ambient type.
pub fn characteristic(d: &YoungDiagram, ambient: Ambient) -> Result<Characteristics, OrbitError> {
    if d.size() != ambient.size() {
        return Err(OrbitError::SizeMismatch {
            got: d.size(),
            want: ambient.size(),
            ambient: ambient.to_string(),
        });
    }
    let r = ambient.rank();
    let h = dominant_sequence(&d.rows, r);
    let diffs = |upto: usize| -> Vec<i64> { (0..upto).map(|i| h[i] - h[i + 1]).collect() };
    Ok(match ambient {
        Ambient::B(_) => {
            let mut c = diffs(r - 1);
            c.push(h[r - 1]);
            Characteristics::Single(Characteristic { entries: c })
        }
        Ambient::D(_) if d.all_even() => {
            let a = if r.is_multiple_of(4) { 0 } else { 2 };
            let prefix = diffs(r - 2);
            let mut one = prefix.clone();
            one.extend([a, 2 - a]);
            let mut two = prefix;
            two.extend([2 - a, a]);
            Characteristics::VeryEven {
                one: Characteristic { entries: one },
                two: Characteristic { entries: two },
            }
        }
        Ambient::D(_) => {
            let mut c = diffs(r - 1);
            c.push(h[r - 2] + h[r - 1]);
            Characteristics::Single(Characteristic { entries: c })
        }
    })
}

pub fn is_even(c: &Characteristic) -> bool {
    c.entries.iter().all(|e| e % 2 == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn yd(rows: &[usize]) -> YoungDiagram {
        YoungDiagram {
            rows: rows.to_vec(),
            numeral: None,
        }
    }

    #[test]
    fn small_yd_lists() {
        let labels: Vec<String> = enumerate_yd(4).iter().map(|d| d.to_string()).collect();
        assert_eq!(labels, vec!["(3,1)", "(2,2)-I", "(2,2)-II", "(1,1,1,1)"]);
        let labels: Vec<String> = enumerate_yd(5).iter().map(|d| d.to_string()).collect();
        assert_eq!(labels, vec!["(5)", "(3,1,1)", "(2,2,1)", "(1,1,1,1,1)"]);
        assert_eq!(enumerate_yd(2).len(), 1);
    }

    #[test]
    fn recipe_examples() {
        let c = characteristic(&yd(&[5, 1, 1]), Ambient::B(3)).unwrap();
        assert_eq!(
            c,
            Characteristics::Single(Characteristic {
                entries: vec![2, 2, 0]
            })
        );
        assert_eq!(dominant_sequence(&[5, 1, 1], 3), vec![4, 2, 0]);
        let c = characteristic(&yd(&[2, 2, 1, 1, 1]), Ambient::B(3)).unwrap();
        assert_eq!(c.all()[0].entries, vec![0, 1, 0]);
        assert!(!is_even(c.all()[0]));
        let c = characteristic(&yd(&[3, 1]), Ambient::D(2)).unwrap();
        assert_eq!(c.all()[0].entries, vec![2, 2]);
        let c = characteristic(&yd(&[2, 2]), Ambient::D(2)).unwrap();
        assert_eq!(
            c.all()
                .iter()
                .map(|c| c.entries.clone())
                .collect::<Vec<_>>(),
            vec![vec![2, 0], vec![0, 2]]
        );
        assert!(characteristic(&yd(&[3, 1]), Ambient::B(2)).is_err());
    }

    #[test]
    fn dyo_p2() {
        let all = enumerate_dyo(2);
        assert_eq!(all.len(), 9);
        assert!(all.iter().all(|d| d.max_row() <= 5));
    }

    #[test]
    fn parse_round_trip() {
        let d = SignedYoungDiagram::parse(3, "3,1,1:-++:I").unwrap();
        assert_eq!(d.pattern(), "-+-|+|+");
        assert!(SignedYoungDiagram::parse(3, "3,1,1:+-+").is_ok());
        assert!(SignedYoungDiagram::parse(3, "3,1,1:-++").is_err());
        assert_eq!(SignedYoungDiagram::parse(3, "3,1,1:-+-|+|+:I").unwrap(), d);
        assert!(SignedYoungDiagram::parse(3, "3,1,1:-++|+|+:I").is_err());
        let shown = SignedYoungDiagram::parse(4, "5,1:+-+-+|+:II").unwrap();
        assert_eq!(shown.to_string(), "(5,1) +-+-+|+ [II]");
        assert!(SignedYoungDiagram::parse(3, "4,1").is_err());
    }
}
