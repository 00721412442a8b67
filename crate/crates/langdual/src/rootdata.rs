//! Root data: Cartan matrices, symmetrizers, character lattices, the map ψ
//! and Weyl-word combinatorics.
//!
//! Weights live in the ω-basis of 𝔥*, coweights in the ω^∨-basis of 𝔥.
//! With these bases α_i is column i of A, α_i^∨ is row i of A, and ψ is the
//! diagonal matrix diag(d_i).

use crate::error::{Error, Result};
use crate::linalg::{self, Mat};
use crate::registry::registry;
use crate::scalar::{q, Q};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Isogeny {
    SimplyConnected,
    Adjoint,
}

impl Isogeny {
    pub fn flip(self) -> Self {
        match self {
            Isogeny::SimplyConnected => Isogeny::Adjoint,
            Isogeny::Adjoint => Isogeny::SimplyConnected,
        }
    }
}

impl std::str::FromStr for Isogeny {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "sc" | "simply_connected" | "simply-connected" => Ok(Isogeny::SimplyConnected),
            "ad" | "adj" | "adjoint" => Ok(Isogeny::Adjoint),
            _ => Err(Error::Parse(format!("unknown isogeny '{s}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanDatum {
    pub rank: usize,
    pub cartan: Vec<Vec<i64>>,
    pub symmetrizer: Vec<i64>,
    pub lcm_d: i64,
}

impl CartanDatum {
    /// Validates `cartan` and attaches the smallest symmetrizer.
    pub fn new(cartan: Vec<Vec<i64>>) -> Result<Self> {
        let d = minimal_symmetrizer(&cartan)?;
        Self::with_symmetrizer(cartan, d)
    }

    pub fn with_symmetrizer(cartan: Vec<Vec<i64>>, symmetrizer: Vec<i64>) -> Result<Self> {
        let r = cartan.len();
        if r == 0 || cartan.iter().any(|row| row.len() != r) || symmetrizer.len() != r {
            return Err(Error::UnsupportedType("Cartan matrix must be square".into()));
        }
        for i in 0..r {
            if cartan[i][i] != 2 {
                return Err(Error::UnsupportedType(format!("a_{0}{0} != 2", i + 1)));
            }
            for j in 0..r {
                if i != j && cartan[i][j] > 0 {
                    return Err(Error::UnsupportedType("positive off-diagonal entry".into()));
                }
                if cartan[i][j] * symmetrizer[j] != cartan[j][i] * symmetrizer[i] {
                    return Err(Error::SymmetrizerMismatch(format!(
                        "a_ij d_j != a_ji d_i at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        if symmetrizer.iter().any(|&x| x <= 0) {
            return Err(Error::SymmetrizerMismatch("symmetrizer must be positive".into()));
        }
        // A·diag(d) positive definite: all leading principal minors positive.
        let ad: Mat<Q> = (0..r)
            .map(|i| (0..r).map(|j| q(cartan[i][j] * symmetrizer[j])).collect())
            .collect();
        for k in 1..=r {
            let sub: Mat<Q> = ad[..k].iter().map(|row| row[..k].to_vec()).collect();
            if !linalg::det(&sub).is_positive() {
                return Err(Error::UnsupportedType("A·D is not positive definite".into()));
            }
        }
        let lcm_d = symmetrizer.iter().fold(1i64, |acc, &x| acc.lcm(&x));
        Ok(CartanDatum { rank: r, cartan, symmetrizer, lcm_d })
    }

    /// Transposed Cartan matrix with symmetrizer (d/d_i).
    pub fn dual(&self) -> Self {
        let r = self.rank;
        let cartan = (0..r).map(|i| (0..r).map(|j| self.cartan[j][i]).collect()).collect();
        let symmetrizer = self.symmetrizer.iter().map(|&x| self.lcm_d / x).collect();
        CartanDatum { rank: r, cartan, symmetrizer, lcm_d: self.lcm_d }
    }
}

fn minimal_symmetrizer(a: &[Vec<i64>]) -> Result<Vec<i64>> {
    let r = a.len();
    let mut d: Vec<Option<Q>> = vec![None; r];
    for start in 0..r {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some(Q::one());
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            let di = d[i].clone().unwrap();
            for j in 0..r {
                if i == j || a[i][j] == 0 {
                    continue;
                }
                if a[j][i] == 0 {
                    return Err(Error::SymmetrizerMismatch("not symmetrizable".into()));
                }
                // a_ij d_j = a_ji d_i
                let dj = di.clone() * q(a[j][i]) / q(a[i][j]);
                match &d[j] {
                    None => {
                        d[j] = Some(dj);
                        queue.push_back(j);
                    }
                    Some(x) if *x != dj => {
                        return Err(Error::SymmetrizerMismatch("not symmetrizable".into()))
                    }
                    _ => {}
                }
            }
        }
    }
    let d: Vec<Q> = d.into_iter().map(Option::unwrap).collect();
    let den = d.iter().fold(num_bigint::BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let scaled: Vec<i64> = d
        .iter()
        .map(|x| crate::scalar::to_i64(&(x.clone() * Q::from_integer(den.clone()))).unwrap())
        .collect();
    let g = scaled.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    Ok(scaled.into_iter().map(|x| x / g).collect())
}

/// A positive root, recorded in both bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositiveRoot {
    /// Coefficients on the simple roots.
    pub alpha: Vec<i64>,
    /// Coordinates in the ω-basis.
    pub omega: Vec<i64>,
    /// d_α = 2/(α, α).
    pub d: i64,
}

/// A word in the simple reflections; letters are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylWord {
    pub letters: Vec<usize>,
}

impl WeylWord {
    pub fn new(letters: Vec<usize>) -> Self {
        WeylWord { letters }
    }
    pub fn empty() -> Self {
        WeylWord { letters: vec![] }
    }
    pub fn len(&self) -> usize {
        self.letters.len()
    }
    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
    pub fn reversed(&self) -> Self {
        WeylWord { letters: self.letters.iter().rev().copied().collect() }
    }
}

impl fmt::Display for WeylWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.letters.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

#[derive(Clone, Debug)]
pub struct RootDatum {
    pub kind: String,
    pub cartan: CartanDatum,
    pub isogeny: Isogeny,
    /// Basis of X*(H), one row per vector, ω-coordinates.
    pub char_basis: Vec<Vec<i64>>,
    /// Basis of X_*(H) dual to `char_basis`, ω^∨-coordinates.
    pub cochar_basis: Vec<Vec<i64>>,
    /// ψ in the lattice bases: column j holds ψ(cochar_j) in the char basis.
    /// Integral for data built from the registry; a dual datum may carry a
    /// fractional matrix (ψ^∨ = dψ^{-1} need not preserve lattices).
    pub psi_matrix: Mat<Q>,
    a: Mat<Q>,
    a_inv: Mat<Q>,
    char_inv: Mat<Q>,
    cochar_inv: Mat<Q>,
}

impl PartialEq for RootDatum {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
            && self.cartan == other.cartan
            && self.char_basis == other.char_basis
            && self.cochar_basis == other.cochar_basis
    }
}

#[derive(Serialize)]
struct RootDatumJson<'a> {
    #[serde(rename = "type")]
    kind: &'a str,
    rank: usize,
    isogeny: Isogeny,
    cartan: &'a Vec<Vec<i64>>,
    symmetrizer: &'a Vec<i64>,
    d: i64,
    char_basis: &'a Vec<Vec<i64>>,
    psi_matrix: Vec<Vec<serde_json::Value>>,
}

fn q_json(x: &Q) -> serde_json::Value {
    match crate::scalar::to_i64(x) {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::from(x.to_string()),
    }
}

fn to_int_matrix(m: &Mat<Q>) -> Option<Vec<Vec<i64>>> {
    m.iter()
        .map(|row| row.iter().map(crate::scalar::to_i64).collect::<Option<Vec<_>>>())
        .collect()
}

/// Registry lookup plus lattice choice.
pub fn build_datum(kind: &str, rank: usize, isogeny: Isogeny) -> Result<RootDatum> {
    let entry = registry()
        .find(kind, rank)
        .ok_or_else(|| Error::UnsupportedType(format!("{kind}{rank}")))?;
    let cd = CartanDatum::new(entry.cartan.clone())?;
    let char_basis = match isogeny {
        Isogeny::SimplyConnected => {
            (0..rank).map(|i| (0..rank).map(|j| i64::from(i == j)).collect()).collect()
        }
        // rows are the simple roots α_i = Σ_j a_ji ω_j
        Isogeny::Adjoint => (0..rank).map(|i| (0..rank).map(|j| cd.cartan[j][i]).collect()).collect(),
    };
    let dat = RootDatum::from_parts(entry.kind.to_ascii_uppercase(), cd, isogeny, char_basis)?;
    if !dat.psi_is_integral() {
        return Err(Error::SymmetrizerMismatch(format!(
            "ψ(X_*(H)) is not contained in X*(H) for {}",
            dat.name()
        )));
    }
    Ok(dat)
}

/// Parses names such as `B2`, `SO5`, `Sp4`, `SL3`, `PSL2`.
pub fn datum_by_name(name: &str, isogeny: Option<Isogeny>) -> Result<RootDatum> {
    let upper = name.to_ascii_uppercase();
    let (kind, rank, default) = match upper.as_str() {
        "SL2" => ("A", 1, Isogeny::SimplyConnected),
        // with d = 1 the adjoint A_n data only arise as duals
        "PSL2" | "PGL2" | "SO3" => return Ok(build_datum("A", 1, Isogeny::SimplyConnected)?.langlands_dual()),
        "PSL3" | "PGL3" => return Ok(build_datum("A", 2, Isogeny::SimplyConnected)?.langlands_dual()),
        "PSL4" | "PGL4" => return Ok(build_datum("A", 3, Isogeny::SimplyConnected)?.langlands_dual()),
        "SL3" => ("A", 2, Isogeny::SimplyConnected),
        "SL4" => ("A", 3, Isogeny::SimplyConnected),
        "SO5" => ("B", 2, Isogeny::Adjoint),
        "SPIN5" => ("B", 2, Isogeny::SimplyConnected),
        "SP4" => ("C", 2, Isogeny::SimplyConnected),
        "PSP4" => ("C", 2, Isogeny::Adjoint),
        // B2 means SO5 so that its dual is Sp4.
        "B2" => ("B", 2, Isogeny::Adjoint),
        _ => {
            let mut chars = upper.chars();
            let k = chars.next().ok_or_else(|| Error::UnsupportedType(name.into()))?;
            let r: usize =
                chars.as_str().parse().map_err(|_| Error::UnsupportedType(name.into()))?;
            let kind = match k {
                'A' => "A",
                'B' => "B",
                'C' => "C",
                _ => return Err(Error::UnsupportedType(name.into())),
            };
            (kind, r, Isogeny::SimplyConnected)
        }
    };
    build_datum(kind, rank, isogeny.unwrap_or(default))
}

impl RootDatum {
    /// General constructor from a character lattice basis (rows, ω-coordinates).
    pub fn from_parts(
        kind: String,
        cartan: CartanDatum,
        isogeny: Isogeny,
        char_basis: Vec<Vec<i64>>,
    ) -> Result<Self> {
        let r = cartan.rank;
        let a: Mat<Q> = linalg::from_i64(&cartan.cartan);
        let a_inv = linalg::inverse(&a).ok_or_else(|| Error::UnsupportedType("singular".into()))?;
        if char_basis.len() != r || char_basis.iter().any(|v| v.len() != r) {
            return Err(Error::LatticeError("character basis has wrong shape".into()));
        }
        let bx: Mat<Q> = linalg::from_i64(&char_basis);
        let bx_inv = linalg::inverse(&bx)
            .ok_or_else(|| Error::LatticeError("character basis is degenerate".into()))?;
        // Q ⊆ X*: each α_i has integral coordinates in the basis.
        for i in 0..r {
            let alpha: Vec<Q> = (0..r).map(|j| a[j][i].clone()).collect();
            let c = linalg::mul_vec(&linalg::transpose(&bx_inv), &alpha);
            if c.iter().any(|x| !x.is_integer()) {
                return Err(Error::LatticeError("root lattice not contained in X*".into()));
            }
        }
        // Dual basis: B_Y = B_X^{-T} A.
        let by = linalg::mul(&linalg::transpose(&bx_inv), &a);
        let cochar_basis = to_int_matrix(&by)
            .ok_or_else(|| Error::LatticeError("cocharacter basis not integral".into()))?;
        let by_inv = linalg::inverse(&by).unwrap();
        // ψ(y_j) = D y_j, expressed in the X* basis: c^T B_X = (D y_j)^T.
        let mut psi = linalg::zeros::<Q>(r, r);
        for j in 0..r {
            let img: Vec<Q> = (0..r).map(|k| by[j][k].clone() * q(cartan.symmetrizer[k])).collect();
            let c = linalg::mul_vec(&linalg::transpose(&bx_inv), &img);
            for k in 0..r {
                psi[k][j] = c[k].clone();
            }
        }
        Ok(RootDatum {
            kind,
            cartan,
            isogeny,
            char_basis,
            cochar_basis,
            psi_matrix: psi,
            a,
            a_inv,
            char_inv: bx_inv,
            cochar_inv: by_inv,
        })
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank
    }

    /// d_i for a 1-based index.
    pub fn d(&self, i: usize) -> i64 {
        self.cartan.symmetrizer[i - 1]
    }

    pub fn lcm_d(&self) -> i64 {
        self.cartan.lcm_d
    }

    pub fn a(&self, i: usize, j: usize) -> i64 {
        self.cartan.cartan[i - 1][j - 1]
    }

    pub fn cartan_q(&self) -> &Mat<Q> {
        &self.a
    }

    pub fn cartan_inverse(&self) -> &Mat<Q> {
        &self.a_inv
    }

    pub fn name(&self) -> String {
        let iso = match self.isogeny {
            Isogeny::SimplyConnected => "sc",
            Isogeny::Adjoint => "ad",
        };
        format!("{}{} ({iso})", self.kind, self.rank())
    }

    pub fn langlands_dual(&self) -> RootDatum {
        let cartan = self.cartan.dual();
        let kind = match (self.kind.as_str(), self.rank()) {
            ("B", 2) => "C".to_string(),
            ("C", 2) => "B".to_string(),
            (k, _) => k.to_string(),
        };
        RootDatum::from_parts(kind, cartan, self.isogeny.flip(), self.cochar_basis.clone())
            .expect("dual of a valid datum is valid")
    }

    /// Whether ψ(X_*(H)) ⊆ X*(H).
    pub fn psi_is_integral(&self) -> bool {
        self.psi_matrix.iter().flatten().all(|x| x.is_integer())
    }

    pub fn simple_root(&self, i: usize) -> Vec<Q> {
        (0..self.rank()).map(|j| self.a[j][i - 1].clone()).collect()
    }

    pub fn simple_coroot(&self, i: usize) -> Vec<Q> {
        self.a[i - 1].clone()
    }

    pub fn fundamental_weight(&self, i: usize) -> Vec<Q> {
        unit(self.rank(), i)
    }

    pub fn fundamental_coweight(&self, i: usize) -> Vec<Q> {
        unit(self.rank(), i)
    }

    pub fn rho(&self) -> Vec<Q> {
        vec![Q::one(); self.rank()]
    }

    pub fn rho_vee(&self) -> Vec<Q> {
        vec![Q::one(); self.rank()]
    }

    /// ⟨λ, μ⟩ for λ in ω-coordinates and μ in ω^∨-coordinates; ⟨ω_i, ω_j^∨⟩ = (A^{-1})_{ji}.
    pub fn pair(&self, lambda: &[Q], mu: &[Q]) -> Q {
        let v = linalg::mul_vec(&self.a_inv, lambda);
        linalg::dot(mu, &v)
    }

    /// (λ, μ) on 𝔥* with Gram matrix A^{-T} D^{-1} in the ω-basis.
    pub fn form_hstar(&self, lambda: &[Q], mu: &[Q]) -> Q {
        let r = self.rank();
        let scaled: Vec<Q> = (0..r).map(|i| mu[i].clone() / q(self.d(i + 1))).collect();
        let v = linalg::mul_vec(&self.a_inv, lambda);
        linalg::dot(&v, &scaled)
    }

    /// (x, y) on 𝔥 with Gram matrix D A^{-T} in the ω^∨-basis.
    pub fn form_h(&self, x: &[Q], y: &[Q]) -> Q {
        self.pair(&self.psi(x), y)
    }

    /// Simple-root coefficients of a weight.
    pub fn weight_to_alpha(&self, lambda: &[Q]) -> Vec<Q> {
        linalg::mul_vec(&self.a_inv, lambda)
    }

    /// Simple-coroot coefficients of a coweight.
    pub fn coweight_to_coroot(&self, mu: &[Q]) -> Vec<Q> {
        linalg::mul_vec(&linalg::transpose(&self.a_inv), mu)
    }

    pub fn coroot_to_coweight(&self, c: &[Q]) -> Vec<Q> {
        linalg::mul_vec(&linalg::transpose(&self.a), c)
    }

    pub fn alpha_to_weight(&self, c: &[Q]) -> Vec<Q> {
        linalg::mul_vec(&self.a, c)
    }

    /// ψ on 𝔥 ⊗ ℚ: ω_i^∨ ↦ d_i ω_i.
    pub fn psi(&self, x: &[Q]) -> Vec<Q> {
        x.iter().enumerate().map(|(i, v)| v.clone() * q(self.d(i + 1))).collect()
    }

    /// ψ on X_*(H); errors if `x` is not a cocharacter.
    pub fn psi_apply(&self, x: &[Q]) -> Result<Vec<Q>> {
        if x.len() != self.rank() {
            return Err(Error::ArityMismatch { expected: self.rank(), got: x.len() });
        }
        if !self.in_cochar_lattice(x) {
            return Err(Error::LatticeError(format!("{x:?} is not in X_*(H)")));
        }
        Ok(self.psi(x))
    }

    /// ψ in lattice coordinates (cochar basis → char basis).
    pub fn psi_lattice(&self, y: &[Q]) -> Vec<Q> {
        linalg::mul_vec(&self.psi_matrix, y)
    }

    pub fn char_coords(&self, lambda: &[Q]) -> Vec<Q> {
        linalg::mul_vec(&linalg::transpose(&self.char_inv), lambda)
    }

    pub fn cochar_coords(&self, mu: &[Q]) -> Vec<Q> {
        linalg::mul_vec(&linalg::transpose(&self.cochar_inv), mu)
    }

    pub fn from_char_coords(&self, c: &[Q]) -> Vec<Q> {
        linalg::mul_vec(&linalg::transpose(&linalg::from_i64(&self.char_basis)), c)
    }

    pub fn from_cochar_coords(&self, c: &[Q]) -> Vec<Q> {
        linalg::mul_vec(&linalg::transpose(&linalg::from_i64(&self.cochar_basis)), c)
    }

    pub fn in_char_lattice(&self, lambda: &[Q]) -> bool {
        self.char_coords(lambda).iter().all(|x| x.is_integer())
    }

    pub fn in_cochar_lattice(&self, mu: &[Q]) -> bool {
        self.cochar_coords(mu).iter().all(|x| x.is_integer())
    }

    pub fn is_dominant(&self, lambda: &[Q]) -> bool {
        lambda.iter().all(|x| !x.is_negative())
    }

    /// s_i(λ) = λ − ⟨λ, α_i^∨⟩ α_i on weights.
    pub fn reflect_weight(&self, i: usize, lambda: &[Q]) -> Vec<Q> {
        let c = lambda[i - 1].clone();
        lambda
            .iter()
            .enumerate()
            .map(|(j, x)| x.clone() - c.clone() * self.a[j][i - 1].clone())
            .collect()
    }

    /// s_i(μ) = μ − ⟨α_i, μ⟩ α_i^∨ on coweights.
    pub fn reflect_coweight(&self, i: usize, mu: &[Q]) -> Vec<Q> {
        let c = mu[i - 1].clone();
        mu.iter()
            .enumerate()
            .map(|(j, x)| x.clone() - c.clone() * self.a[i - 1][j].clone())
            .collect()
    }

    /// w(λ) for w = s_{l_1} ··· s_{l_k}.
    pub fn act_weight(&self, w: &WeylWord, lambda: &[Q]) -> Vec<Q> {
        w.letters.iter().rev().fold(lambda.to_vec(), |v, &i| self.reflect_weight(i, &v))
    }

    pub fn act_coweight(&self, w: &WeylWord, mu: &[Q]) -> Vec<Q> {
        w.letters.iter().rev().fold(mu.to_vec(), |v, &i| self.reflect_coweight(i, &v))
    }

    /// Matrices of w on 𝔥* (ω-basis) and on 𝔥 (ω^∨-basis).
    pub fn weyl(&self, w: &WeylWord) -> Result<(Mat<Q>, Mat<Q>)> {
        let r = self.rank();
        if let Some(&bad) = w.letters.iter().find(|&&i| i == 0 || i > r) {
            return Err(Error::Parse(format!("letter {bad} out of range")));
        }
        let cols_w: Vec<Vec<Q>> = (1..=r).map(|i| self.act_weight(w, &unit(r, i))).collect();
        let cols_c: Vec<Vec<Q>> = (1..=r).map(|i| self.act_coweight(w, &unit(r, i))).collect();
        Ok((linalg::transpose(&cols_w), linalg::transpose(&cols_c)))
    }

    fn is_positive_root_weight(&self, beta: &[Q]) -> bool {
        let c = self.weight_to_alpha(beta);
        c.iter().all(|x| !x.is_negative()) && c.iter().any(|x| x.is_positive())
    }

    /// Reducedness by the exchange condition: each s_{i_1}···s_{i_{j-1}} α_{i_j} is positive.
    pub fn is_reduced(&self, w: &WeylWord) -> bool {
        let mut prefix = WeylWord::empty();
        for &i in &w.letters {
            if i == 0 || i > self.rank() {
                return false;
            }
            let beta = self.act_weight(&prefix, &self.simple_root(i));
            if !self.is_positive_root_weight(&beta) {
                return false;
            }
            prefix.letters.push(i);
        }
        true
    }

    pub fn require_reduced(&self, w: &WeylWord) -> Result<()> {
        if self.is_reduced(w) {
            Ok(())
        } else {
            Err(Error::NotReduced(w.to_string()))
        }
    }

    /// Length ℓ(w): number of positive roots sent negative by w^{-1}.
    pub fn length(&self, w: &WeylWord) -> usize {
        let winv = w.reversed();
        self.positive_roots()
            .iter()
            .filter(|b| {
                let img = self.act_weight(&winv, &to_q(&b.omega));
                !self.is_positive_root_weight(&img)
            })
            .count()
    }

    /// Lexicographically smallest reduced word of w_0.
    pub fn longest_word(&self) -> WeylWord {
        let r = self.rank();
        let mut w = WeylWord::empty();
        loop {
            let next = (1..=r).find(|&i| {
                let beta = self.act_weight(&w, &self.simple_root(i));
                self.is_positive_root_weight(&beta)
            });
            match next {
                Some(i) => w.letters.push(i),
                None => return w,
            }
        }
    }

    pub fn num_positive_roots(&self) -> usize {
        self.longest_word().len()
    }

    /// All reduced words of w_0 in lexicographic order.
    pub fn reduced_words_of_w0(&self) -> Vec<WeylWord> {
        let mut out = vec![];
        let mut cur = WeylWord::empty();
        self.extend_words(&mut cur, &mut out);
        out
    }

    fn extend_words(&self, cur: &mut WeylWord, out: &mut Vec<WeylWord>) {
        let mut extended = false;
        for i in 1..=self.rank() {
            let beta = self.act_weight(cur, &self.simple_root(i));
            if self.is_positive_root_weight(&beta) {
                extended = true;
                cur.letters.push(i);
                self.extend_words(cur, out);
                cur.letters.pop();
            }
        }
        if !extended {
            out.push(cur.clone());
        }
    }

    /// Positive roots ordered along the reduced word `w` of w_0.
    pub fn positive_roots_along(&self, w: &WeylWord) -> Result<Vec<PositiveRoot>> {
        self.require_reduced(w)?;
        let mut prefix = WeylWord::empty();
        let mut out = vec![];
        for &i in &w.letters {
            let beta = self.act_weight(&prefix, &self.simple_root(i));
            let alpha = self.weight_to_alpha(&beta);
            out.push(PositiveRoot {
                alpha: alpha.iter().map(|x| crate::scalar::to_i64(x).unwrap()).collect(),
                omega: beta.iter().map(|x| crate::scalar::to_i64(x).unwrap()).collect(),
                d: self.d(i),
            });
            prefix.letters.push(i);
        }
        Ok(out)
    }

    pub fn positive_roots(&self) -> Vec<PositiveRoot> {
        self.positive_roots_along(&self.longest_word()).unwrap()
    }

    pub fn prod_d_alpha(&self) -> i64 {
        self.positive_roots().iter().map(|b| b.d).product()
    }

    /// i* with α_{i*} = −w_0 α_i.
    pub fn star(&self, i: usize) -> usize {
        let w0 = self.longest_word();
        let img = self.act_weight(&w0, &self.simple_root(i));
        let neg: Vec<Q> = img.iter().map(|x| -x.clone()).collect();
        (1..=self.rank()).find(|&j| self.simple_root(j) == neg).expect("w_0 permutes -Δ")
    }

    /// Weyl dimension ∏_{α>0} (λ+ρ, α)/(ρ, α).
    pub fn weyl_dim(&self, lambda: &[Q]) -> Result<Q> {
        if lambda.len() != self.rank() {
            return Err(Error::ArityMismatch { expected: self.rank(), got: lambda.len() });
        }
        if !self.is_dominant(lambda) {
            return Err(Error::NotDominant(format!("{lambda:?}")));
        }
        let rho = self.rho();
        let lr: Vec<Q> = lambda.iter().zip(&rho).map(|(a, b)| a.clone() + b.clone()).collect();
        let mut out = Q::one();
        for b in self.positive_roots() {
            let beta = to_q(&b.omega);
            out = out * self.form_hstar(&lr, &beta) / self.form_hstar(&rho, &beta);
        }
        Ok(out)
    }

    /// ∏_{α>0} ⟨ρ^∨, α⟩ against ∏_{α^∨>0} ⟨α^∨, ρ⟩, the coroots taken from the dual datum.
    pub fn denominator_products(&self) -> (Q, Q) {
        let lhs = self
            .positive_roots()
            .iter()
            .fold(Q::one(), |acc, b| acc * self.pair(&to_q(&b.omega), &self.rho_vee()));
        let dual = self.langlands_dual();
        // dual ω-coordinates are ω^∨-coordinates here
        let rhs = dual
            .positive_roots()
            .iter()
            .fold(Q::one(), |acc, b| acc * self.pair(&self.rho(), &to_q(&b.omega)));
        (lhs, rhs)
    }

    pub fn denominator_identity_check(&self) -> bool {
        let (l, r) = self.denominator_products();
        l == r
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(RootDatumJson {
            kind: &self.kind,
            rank: self.rank(),
            isogeny: self.isogeny,
            cartan: &self.cartan.cartan,
            symmetrizer: &self.cartan.symmetrizer,
            d: self.lcm_d(),
            char_basis: &self.char_basis,
            psi_matrix: self.psi_matrix.iter().map(|r| r.iter().map(q_json).collect()).collect(),
        })
        .unwrap()
    }
}

pub fn unit(r: usize, i: usize) -> Vec<Q> {
    (1..=r).map(|j| if i == j { Q::one() } else { Q::zero() }).collect()
}

pub fn to_q(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&x| q(x)).collect()
}
