//! The pair `(so_{p+2}, so_p × so_2)` as explicit matrices over `ℚ(i)`: the involution,
//! the real form `so(p,2)` and its embedding, Cayley triples, normal triples, exact
//! Jordan decomposition, and the witnesses used for nilpotent orbits.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::field::{q, qi, Field, Gaussian, Q};
use crate::linalg::{Echelon, Matrix};
use crate::orbits::{
    characteristic, forget_signs, numeral_arity, Ambient, Characteristic, Numeral, Sign,
    SignedYoungDiagram,
};

pub type GMatrix = Matrix<Gaussian>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("p must be at least {min}, got {p}")]
    PTooSmall { p: usize, min: usize },
    #[error("matrix has size {got}, expected {want}")]
    Size { got: usize, want: usize },
    #[error("matrix is not skew-symmetric")]
    NotSkew,
    #[error("{role} is not in {space}")]
    WrongSpace {
        role: &'static str,
        space: &'static str,
    },
    #[error("relation {0} fails")]
    Relation(&'static str),
    #[error("element is not nilpotent")]
    NotNilpotent,
    #[error("element is zero")]
    Zero,
    #[error("no normal triple found: {0}")]
    NoTriple(&'static str),
    #[error("orbit is not even: characteristic {0}")]
    NotEven(String),
}

fn gq(x: Q) -> Gaussian {
    Gaussian::real(x)
}
fn gn(n: i64) -> Gaussian {
    Gaussian::from_i64(n)
}

pub fn bracket(a: &GMatrix, b: &GMatrix) -> GMatrix {
    a.commutator(b)
}

fn flatten(m: &GMatrix) -> Vec<Gaussian> {
    (0..m.rows()).flat_map(|i| m.row(i).to_vec()).collect()
}

fn is_semisimple_matrix(m: &GMatrix) -> bool {
    m.minimal_polynomial().is_squarefree()
}

/// Number of linearly independent matrices in the list.
fn span_dim(ms: &[GMatrix]) -> usize {
    if ms.is_empty() {
        return 0;
    }
    let n2 = ms[0].rows() * ms[0].cols();
    let vs: Vec<Vec<Gaussian>> = ms.iter().map(flatten).collect();
    Echelon::from_vectors(n2, vs.iter()).dim()
}

/// Where an element sits with respect to `𝔤 = 𝔨 ⊕ 𝔭`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Parity {
    K,
    P,
    Mixed,
}

impl Serialize for Parity {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(match self {
            Parity::K => "in-k",
            Parity::P => "in-p",
            Parity::Mixed => "mixed",
        })
    }
}

/// A skew-symmetric matrix with its parity tag.
#[derive(Clone, PartialEq, Debug)]
pub struct MatrixElement {
    pub entries: GMatrix,
    pub parity: Parity,
}

impl Serialize for MatrixElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("MatrixElement", 2)?;
        st.serialize_field("entries", &matrix_strings(&self.entries))?;
        st.serialize_field("parity", &self.parity)?;
        st.end()
    }
}

pub fn matrix_strings(m: &GMatrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|x| x.to_string()).collect())
        .collect()
}

/// `(so_{p+2}, so_p × so_2)` with `θ(X) = J X J`, `J = diag(I_p, -I_2)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct SoPair {
    pub p: usize,
    pub n: usize,
}

impl SoPair {
    pub fn new(p: usize) -> Result<Self, ModelError> {
        if p < 2 {
            return Err(ModelError::PTooSmall { p, min: 2 });
        }
        Ok(SoPair { p, n: p + 2 })
    }
    pub fn dim_g(&self) -> usize {
        self.n * (self.n - 1) / 2
    }
    pub fn dim_k(&self) -> usize {
        self.p * (self.p - 1) / 2 + 1
    }
    pub fn dim_p(&self) -> usize {
        2 * self.p
    }
    /// Rank of the pair.
    pub fn rank(&self) -> usize {
        2
    }
    pub fn ambient(&self) -> Ambient {
        Ambient::for_size(self.n)
    }
    fn plus_side(&self, a: usize) -> bool {
        a < self.p
    }
    /// `E_ab - E_ba`
    pub fn skew_unit(&self, a: usize, b: usize) -> GMatrix {
        let mut m = Matrix::zeros(self.n, self.n);
        m.set(a, b, gn(1));
        m.set(b, a, gn(-1));
        m
    }
    pub fn k_basis(&self) -> Vec<GMatrix> {
        let mut v = Vec::new();
        for a in 0..self.n {
            for b in a + 1..self.n {
                if self.plus_side(a) == self.plus_side(b) {
                    v.push(self.skew_unit(a, b));
                }
            }
        }
        v
    }
    pub fn p_basis(&self) -> Vec<GMatrix> {
        let mut v = Vec::new();
        for a in 0..self.p {
            for b in self.p..self.n {
                v.push(self.skew_unit(a, b));
            }
        }
        v
    }
    /// `H_i = E_{i,n-i+1} - E_{n-i+1,i}` for `i = 1, 2`.
    pub fn cartan_h(&self, i: usize) -> GMatrix {
        assert!(i == 1 || i == 2);
        self.skew_unit(i - 1, self.n - i)
    }
    pub fn theta(&self, m: &GMatrix) -> GMatrix {
        let mut out = m.clone();
        for a in 0..self.n {
            for b in 0..self.n {
                if self.plus_side(a) != self.plus_side(b) {
                    out.set(a, b, m.get(a, b).negated());
                }
            }
        }
        out
    }
    /// Cartan involution of the real form, `X ↦ -Xᵀ`.
    pub fn theta0(&self, x0: &GMatrix) -> GMatrix {
        x0.transpose().neg()
    }
    fn phi_factor(&self, a: usize, b: usize, inverse: bool) -> Gaussian {
        let i = if inverse {
            Gaussian::i().negated()
        } else {
            Gaussian::i()
        };
        match (self.plus_side(a), self.plus_side(b)) {
            (true, false) => i,
            (false, true) => i.negated(),
            _ => gn(1),
        }
    }
    /// Embedding of `so(p,2)`: `X₀ ↦ J̃ X₀ J̃⁻¹`, `J̃ = diag(I_p, -i I_2)`.
    pub fn phi(&self, x0: &GMatrix) -> GMatrix {
        let mut out = x0.clone();
        for a in 0..self.n {
            for b in 0..self.n {
                out.set(a, b, x0.get(a, b).times(&self.phi_factor(a, b, false)));
            }
        }
        out
    }
    pub fn phi_inverse(&self, x: &GMatrix) -> GMatrix {
        let mut out = x.clone();
        for a in 0..self.n {
            for b in 0..self.n {
                out.set(a, b, x.get(a, b).times(&self.phi_factor(a, b, true)));
            }
        }
        out
    }
    /// Whether `x0` is a real matrix in `so(p,2)`.
    pub fn in_real_form(&self, x0: &GMatrix) -> bool {
        let real = (0..self.n).all(|a| x0.row(a).iter().all(|e| e.is_real()));
        let j = self.j();
        real && x0.transpose().mul(&j).add(&j.mul(x0)).is_zero()
    }
    fn j(&self) -> GMatrix {
        Matrix::diagonal(
            &(0..self.n)
                .map(|a| gn(if self.plus_side(a) { 1 } else { -1 }))
                .collect::<Vec<_>>(),
        )
    }
    pub fn is_skew(&self, m: &GMatrix) -> bool {
        m.rows() == self.n && m.cols() == self.n && m.add(&m.transpose()).is_zero()
    }
    pub fn parity(&self, m: &GMatrix) -> Parity {
        let t = self.theta(m);
        if t == *m {
            Parity::K
        } else if t == m.neg() {
            Parity::P
        } else {
            Parity::Mixed
        }
    }
    pub fn in_p(&self, m: &GMatrix) -> bool {
        self.is_skew(m) && self.theta(m) == m.neg()
    }
    pub fn in_k(&self, m: &GMatrix) -> bool {
        self.is_skew(m) && self.theta(m) == *m
    }
    pub fn element(&self, m: GMatrix) -> Result<MatrixElement, ModelError> {
        if m.rows() != self.n || m.cols() != self.n {
            return Err(ModelError::Size {
                got: m.rows(),
                want: self.n,
            });
        }
        if !self.is_skew(&m) {
            return Err(ModelError::NotSkew);
        }
        let parity = self.parity(&m);
        Ok(MatrixElement { entries: m, parity })
    }

    /// Basis of `𝔭^X`.
    pub fn p_centralizer(&self, x: &GMatrix) -> Vec<GMatrix> {
        self.centralizer_in(x, &self.p_basis())
    }
    pub fn k_centralizer(&self, x: &GMatrix) -> Vec<GMatrix> {
        self.centralizer_in(x, &self.k_basis())
    }
    fn centralizer_in(&self, x: &GMatrix, basis: &[GMatrix]) -> Vec<GMatrix> {
        let cols: Vec<Vec<Gaussian>> = basis.iter().map(|b| flatten(&bracket(x, b))).collect();
        let m = Matrix::from_cols(self.n * self.n, &cols);
        m.kernel().into_iter().map(|c| combine(&c, basis)).collect()
    }
    /// `dim [𝔨, X]`.
    pub fn k_orbit_tangent_dim(&self, x: &GMatrix) -> usize {
        let images: Vec<GMatrix> = self.k_basis().iter().map(|k| bracket(k, x)).collect();
        span_dim(&images)
    }
}

fn combine(c: &[Gaussian], basis: &[GMatrix]) -> GMatrix {
    let n = basis[0].rows();
    let mut out = Matrix::zeros(n, n);
    for (ci, b) in c.iter().zip(basis) {
        if !ci.is_zero() {
            out = out.add(&b.scale(ci));
        }
    }
    out
}

/// Dimensions and the grading checks of the pair.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct PairReport {
    pub p: usize,
    pub dim_g: usize,
    pub dim_k: usize,
    pub dim_p: usize,
    pub theta_involutive: bool,
    pub grading_holds: bool,
}

pub fn build_pair(p: usize) -> Result<(SoPair, PairReport), ModelError> {
    let pair = SoPair::new(p)?;
    let kb = pair.k_basis();
    let pb = pair.p_basis();
    let theta_involutive = kb
        .iter()
        .chain(&pb)
        .all(|m| pair.theta(&pair.theta(m)) == *m);
    let mut grading_holds = true;
    'outer: for (i, a) in kb.iter().chain(&pb).enumerate() {
        for b in kb.iter().chain(&pb).skip(i) {
            let want_k = pair.parity(a) == pair.parity(b);
            let c = bracket(a, b);
            if c.is_zero() {
                continue;
            }
            let ok = if want_k { pair.in_k(&c) } else { pair.in_p(&c) };
            if !ok {
                grading_holds = false;
                break 'outer;
            }
        }
    }
    let report = PairReport {
        p,
        dim_g: kb.len() + pb.len(),
        dim_k: kb.len(),
        dim_p: pb.len(),
        theta_involutive,
        grading_holds,
    };
    Ok((pair, report))
}

fn check_sl2(h: &GMatrix, x: &GMatrix, y: &GMatrix) -> Result<(), ModelError> {
    if bracket(h, x) != x.scale(&gn(2)) {
        return Err(ModelError::Relation("[H,X] = 2X"));
    }
    if bracket(h, y) != y.scale(&gn(-2)) {
        return Err(ModelError::Relation("[H,Y] = -2Y"));
    }
    if bracket(x, y) != *h {
        return Err(ModelError::Relation("[X,Y] = H"));
    }
    Ok(())
}

/// An sl₂-triple in the embedded real form with `θ(H₀) = -H₀`, `θ(X₀) = -Y₀`.
#[derive(Clone, Debug, PartialEq)]
pub struct CayleyTriple {
    pub h0: GMatrix,
    pub x0: GMatrix,
    pub y0: GMatrix,
}

impl CayleyTriple {
    pub fn check(&self, pair: &SoPair) -> Result<(), ModelError> {
        for (m, role) in [(&self.h0, "H0"), (&self.x0, "X0"), (&self.y0, "Y0")] {
            if !pair.is_skew(m) {
                return Err(ModelError::WrongSpace {
                    role,
                    space: "so_{p+2}",
                });
            }
            if !pair.in_real_form(&pair.phi_inverse(m)) {
                return Err(ModelError::WrongSpace {
                    role,
                    space: "the real form",
                });
            }
        }
        check_sl2(&self.h0, &self.x0, &self.y0)?;
        if pair.theta(&self.h0) != self.h0.neg() {
            return Err(ModelError::Relation("θ(H0) = -H0"));
        }
        if pair.theta(&self.x0) != self.y0.neg() {
            return Err(ModelError::Relation("θ(X0) = -Y0"));
        }
        Ok(())
    }
}

/// An sl₂-triple with `H ∈ 𝔨` and `X, Y ∈ 𝔭`.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalTriple {
    pub h: GMatrix,
    pub x: GMatrix,
    pub y: GMatrix,
}

impl NormalTriple {
    pub fn check(&self, pair: &SoPair) -> Result<(), ModelError> {
        if !pair.in_k(&self.h) {
            return Err(ModelError::WrongSpace {
                role: "H",
                space: "k",
            });
        }
        if !pair.in_p(&self.x) {
            return Err(ModelError::WrongSpace {
                role: "X",
                space: "p",
            });
        }
        if !pair.in_p(&self.y) {
            return Err(ModelError::WrongSpace {
                role: "Y",
                space: "p",
            });
        }
        check_sl2(&self.h, &self.x, &self.y)
    }
}

fn half() -> Gaussian {
    gq(q(1, 2))
}

/// `H_S = i(X₀ - Y₀)`, `X_S = ½(X₀ + Y₀ + iH₀)`, `Y_S = ½(X₀ + Y₀ - iH₀)`.
pub fn cayley_transform(pair: &SoPair, t: &CayleyTriple) -> Result<NormalTriple, ModelError> {
    t.check(pair)?;
    let i = Gaussian::i();
    let s = t.x0.add(&t.y0);
    let ih = t.h0.scale(&i);
    let out = NormalTriple {
        h: t.x0.sub(&t.y0).scale(&i),
        x: s.add(&ih).scale(&half()),
        y: s.sub(&ih).scale(&half()),
    };
    out.check(pair)?;
    Ok(out)
}

/// Inverse transform: `H₀ = -i(X_S - Y_S)`, `X₀ = ½(X_S + Y_S - iH_S)`, `Y₀ = ½(X_S + Y_S + iH_S)`.
pub fn inverse_cayley_transform(
    pair: &SoPair,
    t: &NormalTriple,
) -> Result<CayleyTriple, ModelError> {
    t.check(pair)?;
    let i = Gaussian::i();
    let s = t.x.add(&t.y);
    let ih = t.h.scale(&i);
    let out = CayleyTriple {
        h0: t.x.sub(&t.y).scale(&i.negated()),
        x0: s.sub(&ih).scale(&half()),
        y0: s.add(&ih).scale(&half()),
    };
    out.check(pair)?;
    Ok(out)
}

fn real_unit(n: usize, entries: &[(usize, usize, i64)]) -> GMatrix {
    let mut m: GMatrix = Matrix::zeros(n, n);
    for &(a, b, v) in entries {
        m.set(a, b, m.get(a, b).plus(&gn(v)));
    }
    m
}

/// Restricted-root data of the real form: `a₁ = E_{1,n} + E_{n,1}`, `a₂ = E_{2,n-1} + E_{n-1,2}`
/// span a Cartan subspace of `𝔭₀`.
pub fn real_cartan(pair: &SoPair) -> [GMatrix; 2] {
    let n = pair.n;
    [
        real_unit(n, &[(0, n - 1, 1), (n - 1, 0, 1)]),
        real_unit(n, &[(1, n - 2, 1), (n - 2, 1, 1)]),
    ]
}

/// Cayley triple on `X₀ = X_{e₁-e₂}` (numeral I) or `-X₀` (numeral II), embedded by `φ`.
pub fn minimal_cayley_triple(pair: &SoPair, numeral: Numeral) -> CayleyTriple {
    let n = pair.n;
    let [a1, a2] = real_cartan(pair);
    // joint eigenvector of (ad a₁, ad a₂) with eigenvalues (1, -1)
    let z = real_unit(
        n,
        &[
            (0, 1, 1),
            (1, 0, -1),
            (0, n - 2, 1),
            (n - 2, 0, 1),
            (1, n - 1, 1),
            (n - 1, 1, 1),
            (n - 2, n - 1, -1),
            (n - 1, n - 2, 1),
        ],
    );
    let sign = gn(if numeral == Numeral::I { 1 } else { -1 });
    let x0 = z.scale(&half()).scale(&sign);
    let y0 = x0.transpose();
    let h0 = a1.sub(&a2);
    CayleyTriple {
        h0: pair.phi(&h0),
        x0: pair.phi(&x0),
        y0: pair.phi(&y0),
    }
}

fn isotropic_pair(
    n: usize,
    a: usize,
    b: usize,
    scale: &Gaussian,
) -> (Vec<Gaussian>, Vec<Gaussian>) {
    // u = e_a + i e_b, w = scale·(e_a - i e_b); (u, w) = 2·scale
    let mut u = vec![Gaussian::zero(); n];
    let mut w = vec![Gaussian::zero(); n];
    u[a] = gn(1);
    u[b] = Gaussian::i();
    w[a] = scale.clone();
    w[b] = scale.times(&Gaussian::i()).negated();
    (u, w)
}

fn outer(u: &[Gaussian], w: &[Gaussian]) -> GMatrix {
    Matrix::from_rows(
        u.iter()
            .map(|a| w.iter().map(|b| a.times(b)).collect())
            .collect(),
    )
}

/// Nilpotent representative in `𝔭` of the `K`-orbit attached to a signed diagram.
///
/// Each odd row is a chain `f₁ → … → f_l` with `(f_j, f_{l+1-j}) = ±1` and all other pairings
/// zero; even rows of equal length are paired. Vectors alternate between `V₊ = ℂ^p` and
/// `V₋ = ℂ²` following the signs. Numeral II conjugates by a reflection of `V₊` or `V₋`.
pub fn orbit_representative(pair: &SoPair, d: &SignedYoungDiagram) -> Result<GMatrix, ModelError> {
    if d.p() != pair.p {
        return Err(ModelError::Size {
            got: d.p() + 2,
            want: pair.n,
        });
    }
    let n = pair.n;
    let mut plus_pool: Vec<usize> = (0..pair.p).rev().collect();
    let mut minus_pool: Vec<usize> = (pair.p..n).rev().collect();
    let mut take = |s: Sign| -> usize {
        match s {
            Sign::Plus => plus_pool.pop().expect("signature"),
            Sign::Minus => minus_pool.pop().expect("signature"),
        }
    };
    let mut x: GMatrix = Matrix::zeros(n, n);
    // chain vectors and their dual functionals
    let mut add_chain = |vecs: &[Vec<Gaussian>], duals: &[Vec<Gaussian>]| {
        for j in 0..vecs.len() - 1 {
            x = x.add(&outer(&vecs[j + 1], &duals[j]));
        }
    };
    let mut pending_even: Option<usize> = None;
    for row in &d.rows {
        let l = row.len;
        if l % 2 == 1 {
            let m = l / 2;
            let signs = row.signs();
            let mut f = vec![vec![Gaussian::zero(); n]; l];
            // c_j = (-1)^(j+m+1) for 1-based j, so c at the middle is 1
            let c = |j1: usize| gn(if (j1 + m + 1).is_multiple_of(2) { 1 } else { -1 });
            for j in 0..m {
                let a = take(signs[j]);
                let b = take(signs[j]);
                let (u, w) = isotropic_pair(n, a, b, &c(j + 1).times(&half()));
                f[j] = u;
                f[l - 1 - j] = w;
            }
            f[m][take(signs[m])] = gn(1);
            // dual of f_j is (f_{l+1-j}, ·) / c_{l+1-j}
            let duals: Vec<Vec<Gaussian>> = (0..l)
                .map(|j| f[l - 1 - j].iter().map(|e| e.div(&c(l - j))).collect())
                .collect();
            add_chain(&f, &duals);
        } else {
            match pending_even.take() {
                None => pending_even = Some(l),
                Some(l2) => {
                    assert_eq!(l, l2, "even rows pair up");
                    // f leads with +, g with -; (f_j, g_{l+1-j}) = d_j = (-1)^(j-1)
                    let mut f = vec![vec![Gaussian::zero(); n]; l];
                    let mut g = vec![vec![Gaussian::zero(); n]; l];
                    let dj = |j1: usize| gn(if j1 % 2 == 1 { 1 } else { -1 });
                    for j in 0..l {
                        let s = if j % 2 == 0 { Sign::Plus } else { Sign::Minus };
                        let a = take(s);
                        let b = take(s);
                        let (u, w) = isotropic_pair(n, a, b, &dj(j + 1).times(&half()));
                        f[j] = u;
                        g[l - 1 - j] = w;
                    }
                    let f_duals: Vec<Vec<Gaussian>> = (0..l)
                        .map(|j| g[l - 1 - j].iter().map(|e| e.div(&dj(j + 1))).collect())
                        .collect();
                    let g_duals: Vec<Vec<Gaussian>> = (0..l)
                        .map(|k| f[l - 1 - k].iter().map(|e| e.div(&dj(l - k))).collect())
                        .collect();
                    add_chain(&f, &f_duals);
                    add_chain(&g, &g_duals);
                }
            }
        }
    }
    // numerals
    let reflect = |m: &GMatrix, coord: usize| -> GMatrix {
        let mut r = Matrix::identity(n);
        r.set(coord, coord, gn(-1));
        r.mul(m).mul(&r)
    };
    let r_plus = 0;
    let r_minus = n - 1;
    match numeral_arity(&d.rows) {
        2 => {
            if d.numerals[0] == Numeral::II {
                x = reflect(&x, r_plus);
            }
            if d.numerals[1] == Numeral::II {
                x = reflect(&x, r_minus);
            }
        }
        1 if d.numerals[0] == Numeral::II => {
            let odd_even_plus = d
                .rows
                .iter()
                .filter(|r| r.len % 2 == 1)
                .all(|r| r.plus_count() % 2 == 0);
            x = reflect(&x, if odd_even_plus { r_plus } else { r_minus });
        }
        _ => {}
    }
    Ok(x)
}

/// Exact Chevalley–Jordan decomposition `M = S + N`.
pub fn jordan_decompose(m: &GMatrix) -> (GMatrix, GMatrix) {
    let s_poly = m.minimal_polynomial().squarefree_part();
    let ds = s_poly.derivative();
    let mut s = m.clone();
    loop {
        let v = s_poly.eval_matrix(&s);
        if v.is_zero() {
            break;
        }
        let inv = ds.eval_matrix(&s).inverse().expect("s'(S) is invertible");
        s = s.sub(&v.mul(&inv));
    }
    let n = m.sub(&s);
    (s, n)
}

/// Normal triple through `X`: solve `H = [X, Z]` with `Z ∈ 𝔭`, `[H, X] = 2X`, then `Y ∈ 𝔭`.
pub fn normal_triple_for(pair: &SoPair, x: &GMatrix) -> Result<NormalTriple, ModelError> {
    if !pair.in_p(x) {
        return Err(ModelError::WrongSpace {
            role: "X",
            space: "p",
        });
    }
    if x.is_zero() {
        return Err(ModelError::Zero);
    }
    let (s, _) = jordan_decompose(x);
    if !s.is_zero() {
        return Err(ModelError::NotNilpotent);
    }
    let n2 = pair.n * pair.n;
    let pb = pair.p_basis();
    let cols: Vec<Vec<Gaussian>> = pb
        .iter()
        .map(|z| flatten(&bracket(&bracket(x, z), x)))
        .collect();
    let target = flatten(&x.scale(&gn(2)));
    let zc = Matrix::from_cols(n2, &cols)
        .solve(&target)
        .ok_or(ModelError::NoTriple("no H"))?;
    let h = bracket(x, &combine(&zc, &pb));
    // Y ∈ 𝔭 with [X,Y] = H and [H,Y] + 2Y = 0
    let cols: Vec<Vec<Gaussian>> = pb
        .iter()
        .map(|y| {
            let mut v = flatten(&bracket(x, y));
            v.extend(flatten(&bracket(&h, y).add(&y.scale(&gn(2)))));
            v
        })
        .collect();
    let mut rhs = flatten(&h);
    rhs.extend(vec![Gaussian::zero(); n2]);
    let yc = Matrix::from_cols(2 * n2, &cols)
        .solve(&rhs)
        .ok_or(ModelError::NoTriple("no Y"))?;
    let t = NormalTriple {
        h,
        x: x.clone(),
        y: combine(&yc, &pb),
    };
    t.check(pair)?;
    Ok(t)
}

/// Pfaffian by expansion along the first row.
fn pfaffian(m: &GMatrix) -> Gaussian {
    fn rec(m: &GMatrix, idx: &[usize]) -> Gaussian {
        if idx.is_empty() {
            return Gaussian::one();
        }
        let first = idx[0];
        let mut acc = Gaussian::zero();
        for (k, &j) in idx.iter().enumerate().skip(1) {
            let a = m.get(first, j);
            if a.is_zero() {
                continue;
            }
            let rest: Vec<usize> = idx
                .iter()
                .copied()
                .filter(|&t| t != first && t != j)
                .collect();
            let term = a.times(&rec(m, &rest));
            acc = if k % 2 == 1 {
                acc.plus(&term)
            } else {
                acc.minus(&term)
            };
        }
        acc
    }
    let idx: Vec<usize> = (0..m.rows()).collect();
    rec(m, &idx)
}

/// Eigenvalues of a semisimple matrix with integer spectrum, with multiplicity, descending.
pub fn integer_spectrum(h: &GMatrix) -> Option<Vec<i64>> {
    let n = h.rows() as i64;
    let mut out = Vec::new();
    for k in (-2 * n..=2 * n).rev() {
        let shifted = h.sub(&Matrix::identity(h.rows()).scale(&gn(k)));
        let mult = h.rows() - shifted.rank();
        out.extend(std::iter::repeat_n(k, mult));
    }
    (out.len() == h.rows()).then_some(out)
}

/// `(α_i(H))` after moving `H` to the dominant chamber, read from the spectrum of `H`
/// on `ℂ^{p+2}`; in type D the sign of the last coordinate comes from the Pfaffian.
pub fn characteristic_from_h(pair: &SoPair, h: &GMatrix) -> Option<Characteristic> {
    let spec = integer_spectrum(h)?;
    let amb = pair.ambient();
    let r = amb.rank();
    let mut hd: Vec<i64> = spec[..r].to_vec();
    if let Ambient::D(_) = amb {
        if hd[r - 1] != 0 {
            // Pf(Σ h_i T_i) = i^r Π h_i for T_i = i(E_{2i-1,2i} - E_{2i,2i-1})
            let prod: i64 = hd.iter().product();
            let mut ir = Gaussian::one();
            for _ in 0..r {
                ir = ir.times(&Gaussian::i());
            }
            let ratio = pfaffian(h).div(&ir.times(&gn(prod)));
            if ratio == gn(-1) {
                hd[r - 1] = -hd[r - 1];
            } else if ratio != gn(1) {
                return None;
            }
        }
    }
    let mut c: Vec<i64> = (0..r - 1).map(|i| hd[i] - hd[i + 1]).collect();
    match amb {
        Ambient::B(_) => c.push(hd[r - 1]),
        Ambient::D(_) => c.push(hd[r - 2] + hd[r - 1]),
    }
    Some(Characteristic { entries: c })
}

/// Result of comparing the recipe against the matrix computation for one signed diagram.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CharacteristicCheck {
    pub orbit: String,
    pub recipe: Vec<Characteristic>,
    pub computed: Characteristic,
    pub agrees: bool,
    pub dim_p_x: usize,
}

pub fn characteristic_check(
    pair: &SoPair,
    d: &SignedYoungDiagram,
) -> Result<CharacteristicCheck, ModelError> {
    let x = orbit_representative(pair, d)?;
    let computed = if x.is_zero() {
        Characteristic {
            entries: vec![0; pair.ambient().rank()],
        }
    } else {
        let t = normal_triple_for(pair, &x)?;
        characteristic_from_h(pair, &t.h).ok_or(ModelError::NoTriple("non-integral spectrum"))?
    };
    let yd = forget_signs(d).diagram;
    let recipe: Vec<Characteristic> = characteristic(&yd, pair.ambient())
        .expect("sizes agree")
        .all()
        .into_iter()
        .cloned()
        .collect();
    Ok(CharacteristicCheck {
        orbit: d.to_string(),
        agrees: recipe.contains(&computed),
        recipe,
        computed,
        dim_p_x: pair.p_centralizer(&x).len(),
    })
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SheetPoint {
    pub lambda: String,
    pub dim_p: usize,
    pub semisimple: bool,
}

/// `dim 𝔭^{X+λY}` against `dim 𝔭^X` along the line through an even triple.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SheetReport {
    pub characteristic: Characteristic,
    pub dim_p_x: usize,
    pub points: Vec<SheetPoint>,
    pub holds: bool,
}

pub fn even_sheet_witness(
    pair: &SoPair,
    t: &NormalTriple,
    lambdas: &[Q],
) -> Result<SheetReport, ModelError> {
    t.check(pair)?;
    let c =
        characteristic_from_h(pair, &t.h).ok_or(ModelError::NoTriple("non-integral spectrum"))?;
    if !crate::orbits::is_even(&c) {
        return Err(ModelError::NotEven(c.to_string()));
    }
    let base = pair.p_centralizer(&t.x).len();
    let points: Vec<SheetPoint> = lambdas
        .iter()
        .map(|l| {
            let xl = t.x.add(&t.y.scale(&gq(l.clone())));
            SheetPoint {
                lambda: crate::field::fmt_q(l),
                dim_p: pair.p_centralizer(&xl).len(),
                semisimple: is_semisimple_matrix(&xl),
            }
        })
        .collect();
    let holds = points
        .iter()
        .zip(lambdas)
        .all(|(pt, l)| pt.dim_p == base && (Field::is_zero(l) || pt.semisimple));
    Ok(SheetReport {
        characteristic: c,
        dim_p_x: base,
        points,
        holds,
    })
}

/// A nonzero semisimple element of `𝔭` commuting with the Cayley image of `±X_{e₁-e₂}`.
#[derive(Clone, Debug, Serialize)]
pub struct DistinguishedWitness {
    pub p: usize,
    pub numeral: Numeral,
    pub x: MatrixElement,
    pub h: MatrixElement,
    pub commutes: bool,
    pub h_in_p: bool,
    pub h_nonzero: bool,
    pub h_semisimple: bool,
    pub x_nilpotent: bool,
    pub characteristic: Characteristic,
}

impl DistinguishedWitness {
    pub fn holds(&self) -> bool {
        self.commutes && self.h_in_p && self.h_nonzero && self.h_semisimple && self.x_nilpotent
    }
}

pub fn minimal_orbit_not_distinguished(
    p: usize,
    numeral: Numeral,
) -> Result<DistinguishedWitness, ModelError> {
    if p < 3 {
        return Err(ModelError::PTooSmall { p, min: 3 });
    }
    let pair = SoPair::new(p)?;
    let t = cayley_transform(&pair, &minimal_cayley_triple(&pair, numeral))?;
    let [a1, a2] = real_cartan(&pair);
    let h = pair.phi(&a1.add(&a2));
    let (xs, _) = jordan_decompose(&t.x);
    let characteristic =
        characteristic_from_h(&pair, &t.h).ok_or(ModelError::NoTriple("non-integral spectrum"))?;
    Ok(DistinguishedWitness {
        p,
        numeral,
        commutes: bracket(&h, &t.x).is_zero(),
        h_in_p: pair.in_p(&h),
        h_nonzero: !h.is_zero(),
        h_semisimple: is_semisimple_matrix(&h),
        x_nilpotent: xs.is_zero(),
        x: pair.element(t.x)?,
        h: pair.element(h)?,
        characteristic,
    })
}

/// Outcome of sampling `Y ∈ 𝔭^X` and testing `Y_s ∈ ℂ X_s`.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SemisimplePartReport {
    pub admissible: bool,
    pub reason: Option<String>,
    pub seed: u64,
    pub trials: usize,
    pub passed: usize,
    pub dim_p_x: usize,
}

impl SemisimplePartReport {
    pub fn holds(&self) -> bool {
        self.admissible && self.passed == self.trials
    }
}

pub fn semisimple_part_check(
    pair: &SoPair,
    x: &GMatrix,
    trials: usize,
    seed: u64,
) -> SemisimplePartReport {
    let mut rep = SemisimplePartReport {
        admissible: false,
        reason: None,
        seed,
        trials,
        passed: 0,
        dim_p_x: 0,
    };
    if !pair.in_p(x) {
        rep.reason = Some("X is not in p".into());
        return rep;
    }
    let (xs, xn) = jordan_decompose(x);
    if xs.is_zero() || xn.is_zero() {
        rep.reason = Some("no admissible X: X is semisimple or nilpotent".into());
        return rep;
    }
    if !pair.in_p(&xs) || !pair.in_p(&xn) {
        rep.reason = Some("components of X are not in p".into());
        return rep;
    }
    rep.admissible = true;
    let basis = pair.p_centralizer(x);
    rep.dim_p_x = basis.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let xs_flat = flatten(&xs);
    for _ in 0..trials {
        let y = loop {
            let c: Vec<Gaussian> = basis.iter().map(|_| gn(rng.gen_range(-5..=5))).collect();
            let y = combine(&c, &basis);
            if !y.is_zero() {
                break y;
            }
        };
        let (ys, _) = jordan_decompose(&y);
        let vs = [xs_flat.clone(), flatten(&ys)];
        if Echelon::from_vectors(xs_flat.len(), vs.iter()).dim() <= 1 {
            rep.passed += 1;
        }
    }
    rep
}

/// Random rational element of `SO(p) × SO(2)` via the Cayley map `(I - A)(I + A)⁻¹`.
pub fn random_k_element(pair: &SoPair, rng: &mut ChaCha8Rng) -> GMatrix {
    let n = pair.n;
    let mut a: GMatrix = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            if pair.plus_side(i) == pair.plus_side(j) {
                let v = gq(q(rng.gen_range(-3..=3), rng.gen_range(1..=3)));
                a.set(i, j, v.clone());
                a.set(j, i, v.negated());
            }
        }
    }
    let id = Matrix::identity(n);
    id.sub(&a).mul(
        &id.add(&a)
            .inverse()
            .expect("I + A is invertible for real skew A"),
    )
}

/// `k X k⁻¹` for orthogonal `k`.
pub fn conjugate(k: &GMatrix, x: &GMatrix) -> GMatrix {
    k.mul(x).mul(&k.transpose())
}

/// A random `X = c H₁ + X_n` with `X_n` a nonzero nilpotent of `𝔭^{H₁}`, conjugated by `K`.
pub fn random_admissible_element(
    pair: &SoPair,
    rng: &mut ChaCha8Rng,
) -> Result<GMatrix, ModelError> {
    if pair.p < 3 {
        return Err(ModelError::PTooSmall { p: pair.p, min: 3 });
    }
    let n = pair.n;
    let c =
        q(rng.gen_range(1..=9), rng.gen_range(1..=4)) * qi(if rng.gen_bool(0.5) { 1 } else { -1 });
    let xs = pair.cartan_h(1).scale(&gq(c));
    // isotropic x in span(e_2..e_p) as a sum over disjoint coordinate pairs
    let mut x = vec![Gaussian::zero(); n];
    let mut coords: Vec<usize> = (1..pair.p).collect();
    let mut first = true;
    while coords.len() >= 2 && (first || rng.gen_bool(0.5)) {
        first = false;
        let a = coords.remove(rng.gen_range(0..coords.len()));
        let b = coords.remove(rng.gen_range(0..coords.len()));
        let alpha = gq(q(rng.gen_range(1..=5), rng.gen_range(1..=3)));
        x[a] = x[a].plus(&alpha);
        x[b] = x[b].plus(&alpha.times(&Gaussian::i()));
    }
    // X_n = x e_pᵀ - e_p xᵀ, with e_p the first V₋ coordinate
    let mut e = vec![Gaussian::zero(); n];
    e[pair.p] = gn(1);
    let xn = outer(&x, &e).sub(&outer(&e, &x));
    let k = random_k_element(pair, rng);
    Ok(conjugate(&k, &xs.add(&xn)))
}

/// A random element of `𝔭` with rational entries in `[-4, 4]`.
pub fn random_p_element(pair: &SoPair, rng: &mut ChaCha8Rng) -> GMatrix {
    let pb = pair.p_basis();
    let c: Vec<Gaussian> = pb.iter().map(|_| gn(rng.gen_range(-4..=4))).collect();
    combine(&c, &pb)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        let (_, r) = build_pair(2).unwrap();
        assert_eq!(r.dim_p, 4);
        let (pair, r) = build_pair(3).unwrap();
        assert_eq!((r.dim_g, r.dim_k), (10, 4));
        assert!(r.theta_involutive && r.grading_holds);
        let h1 = pair.cartan_h(1);
        assert_eq!(pair.theta(&h1), h1.neg());
        assert!(build_pair(1).is_err());
    }

    #[test]
    fn phi_is_equivariant() {
        let pair = SoPair::new(3).unwrap();
        for a in 0..pair.n {
            for b in a + 1..pair.n {
                let x0 = if pair.plus_side(a) == pair.plus_side(b) {
                    pair.skew_unit(a, b)
                } else {
                    real_unit(pair.n, &[(a, b, 1), (b, a, 1)])
                };
                assert!(pair.in_real_form(&x0));
                assert_eq!(pair.phi(&pair.theta0(&x0)), pair.theta(&pair.phi(&x0)));
                assert!(pair.is_skew(&pair.phi(&x0)));
            }
        }
    }

    #[test]
    fn minimal_triple_round_trip() {
        let pair = SoPair::new(3).unwrap();
        let t = minimal_cayley_triple(&pair, Numeral::I);
        t.check(&pair).unwrap();
        let s = cayley_transform(&pair, &t).unwrap();
        assert_eq!(inverse_cayley_transform(&pair, &s).unwrap(), t);
        let doubled = CayleyTriple {
            h0: t.h0.scale(&gn(2)),
            ..t.clone()
        };
        assert_eq!(
            cayley_transform(&pair, &doubled),
            Err(ModelError::Relation("[H,X] = 2X"))
        );
    }

    #[test]
    fn jordan_small() {
        let mut m = Matrix::zeros(3, 3);
        m.set(0, 0, gn(2));
        m.set(0, 1, gn(1));
        m.set(1, 1, gn(2));
        m.set(2, 2, gn(3));
        let (s, nn) = jordan_decompose(&m);
        let mut want = Matrix::zeros(3, 3);
        want.set(0, 1, gn(1));
        assert_eq!(nn, want);
        assert_eq!(s.mul(&nn), nn.mul(&s));
        assert_eq!(jordan_decompose(&want), (Matrix::zeros(3, 3), want.clone()));
    }

    #[test]
    fn witness_p3() {
        let w = minimal_orbit_not_distinguished(3, Numeral::I).unwrap();
        assert!(w.holds());
        assert!(minimal_orbit_not_distinguished(2, Numeral::I).is_err());
    }
}
