//! Double reduced words, the seed σ(𝐢), factorization charts and their cluster transition.

use super::element::{Group, GroupElement, GroupWord};
use super::minors::generalized_minor;
use crate::cluster::{DecoratedSeed, Seed};
use crate::error::{Error, Result};
use crate::rootdata::{RootDatum, WeylWord};
use crate::scalar::{to_i64, Q};
use crate::symbolic::{positivity_normalize, vars, LaurentPoly, PosRational, Vars};
use std::collections::BTreeMap;

/// A shuffle of a reduced word for u (negative letters) and one for v (positive letters).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleWord {
    pub rank: usize,
    pub letters: Vec<i64>,
}

fn sign(x: i64) -> i64 {
    x.signum()
}

impl DoubleWord {
    pub fn new(datum: &RootDatum, letters: Vec<i64>) -> Result<Self> {
        let r = datum.rank() as i64;
        if let Some(&bad) = letters.iter().find(|&&l| l == 0 || l.abs() > r) {
            return Err(Error::Parse(format!("letter {bad} out of range")));
        }
        let w = DoubleWord { rank: datum.rank(), letters };
        datum.require_reduced(&w.u())?;
        datum.require_reduced(&w.v())?;
        Ok(w)
    }

    /// Parses "-1,-2,-1" (spaces and parentheses are ignored).
    pub fn parse(datum: &RootDatum, s: &str) -> Result<Self> {
        let letters = s
            .trim_matches(|c| c == '(' || c == ')' || c == '[' || c == ']')
            .split(',')
            .filter(|x| !x.trim().is_empty())
            .map(|x| x.trim().parse::<i64>().map_err(|e| Error::Parse(format!("{x}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(datum, letters)
    }

    /// The reduced word (−w_0 letters) for (w_0, e) built from the greedy longest word.
    pub fn longest_negative(datum: &RootDatum) -> Self {
        let w0 = datum.longest_word();
        DoubleWord { rank: datum.rank(), letters: w0.letters.iter().map(|&i| -(i as i64)).collect() }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn u(&self) -> WeylWord {
        WeylWord::new(self.letters.iter().filter(|&&l| l < 0).map(|&l| (-l) as usize).collect())
    }

    pub fn v(&self) -> WeylWord {
        WeylWord::new(self.letters.iter().filter(|&&l| l > 0).map(|&l| l as usize).collect())
    }

    /// Letter i_k with i_k = k for k < 0 and 0 beyond the end.
    pub fn letter(&self, k: i64) -> i64 {
        if k < 0 {
            k
        } else if k >= 1 && (k as usize) <= self.len() {
            self.letters[k as usize - 1]
        } else {
            0
        }
    }

    /// k⁺ = min{j > k : |i_j| = |i_k|}, or n + 1.
    pub fn plus(&self, k: i64) -> i64 {
        let target = self.letter(k).abs();
        let start = if k < 0 { 1 } else { k + 1 };
        (start..=self.len() as i64)
            .find(|&j| self.letter(j).abs() == target)
            .unwrap_or(self.len() as i64 + 1)
    }

    /// 𝐞(𝐢) = {k ∈ [1, n] : k⁺ ≤ n}.
    pub fn exchangeable(&self) -> Vec<i64> {
        (1..=self.len() as i64).filter(|&k| self.plus(k) <= self.len() as i64).collect()
    }

    /// I = [−r, −1] ∪ 𝐞(𝐢), in increasing order.
    pub fn index_set(&self) -> Vec<i64> {
        let mut out: Vec<i64> = (1..=self.rank as i64).rev().map(|k| -k).collect();
        out.extend(self.exchangeable());
        out
    }

    /// Entry M(𝐢)_{kl}.
    pub fn matrix_entry(&self, datum: &RootDatum, k: i64, l: i64) -> i64 {
        let (kp, lp) = (self.plus(k), self.plus(l));
        let p = k.max(l);
        let q = kp.min(lp);
        let ep = sign(self.letter(p));
        if p == q {
            -sign(k - l) * ep
        } else if p < q && ep * sign(self.letter(q)) * (k - l) * (kp - lp) > 0 {
            let (a, b) = (self.letter(k).unsigned_abs() as usize, self.letter(l).unsigned_abs() as usize);
            -sign(k - l) * ep * datum.a(a, b)
        } else {
            0
        }
    }

    pub fn matrix(&self, datum: &RootDatum) -> Vec<Vec<i64>> {
        let idx = self.index_set();
        idx.iter().map(|&k| idx.iter().map(|&l| self.matrix_entry(datum, k, l)).collect()).collect()
    }

    /// 𝐝 restricted to I: d_{|i_k|}.
    pub fn symmetrizer(&self, datum: &RootDatum) -> Vec<i64> {
        self.index_set().iter().map(|&k| datum.d(self.letter(k).unsigned_abs() as usize)).collect()
    }

    /// 𝐝_𝐢 = (d_{i_1}, …, d_{i_n}).
    pub fn word_symmetrizer(&self, datum: &RootDatum) -> Vec<i64> {
        self.letters.iter().map(|&l| datum.d(l.unsigned_abs() as usize)).collect()
    }

    /// u_k = ∏_{l ≤ k, i_l < 0} s_{|i_l|} (increasing).
    pub fn u_k(&self, k: usize) -> WeylWord {
        WeylWord::new(self.letters[..k].iter().filter(|&&l| l < 0).map(|&l| (-l) as usize).collect())
    }

    /// v_k = ∏_{l = n, …, k+1, i_l > 0} s_{i_l} (decreasing).
    pub fn v_k(&self, k: usize) -> WeylWord {
        WeylWord::new(self.letters[k..].iter().rev().filter(|&&l| l > 0).map(|&l| l as usize).collect())
    }

    /// (u, v, i) with Δ_k = Δ_{uω_i, vω_i}.
    pub fn cluster_minor_data(&self, k: i64) -> (WeylWord, WeylWord, usize) {
        if k < 0 {
            (WeylWord::empty(), self.v().reversed(), (-k) as usize)
        } else {
            let k = k as usize;
            (self.u_k(k), self.v_k(k), self.letters[k - 1].unsigned_abs() as usize)
        }
    }

    pub fn to_string_plain(&self) -> String {
        self.letters.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(",")
    }
}

/// σ(𝐢) = ([−r, −1] ∪ 𝐞(𝐢), 𝐞(𝐢), M(𝐢)).
pub fn word_seed(datum: &RootDatum, w: &DoubleWord) -> Result<Seed> {
    datum.require_reduced(&w.u())?;
    datum.require_reduced(&w.v())?;
    Seed::new(w.index_set(), w.exchangeable(), w.matrix(datum), w.symmetrizer(datum), datum.lcm_d())
}

/// σ(𝐢) decorated by H with Ψ^H in lattice coordinates.
pub fn decorated_word_seed(datum: &RootDatum, w: &DoubleWord) -> Result<DecoratedSeed> {
    let psi_h = datum
        .psi_matrix
        .iter()
        .map(|row| row.iter().map(to_i64).collect::<Option<Vec<_>>>())
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::LatticeError("Ψ^H is not integral for this datum".into()))?;
    Ok(DecoratedSeed { torus_rank: datum.rank(), seed: word_seed(datum, w)?, psi_h })
}

/// Chart variables h_1..h_r (cocharacter basis) followed by t_1..t_n.
pub fn chart_vars(datum: &RootDatum, w: &DoubleWord) -> Vars {
    let mut names: Vec<String> = (1..=datum.rank()).map(|j| format!("h{j}")).collect();
    names.extend((1..=w.len()).map(|k| format!("t{k}")));
    vars(&names)
}

/// h = ∏_j b_j(h_j) over the cocharacter basis b_j.
pub fn torus_word(datum: &RootDatum, vs: &Vars) -> GroupWord {
    let mut g = GroupWord::identity(vs);
    for (j, b) in datum.cochar_basis.iter().enumerate() {
        let lambda: Vec<Q> = b.iter().map(|&x| Q::from_integer(x.into())).collect();
        g = g.mul(&GroupWord::cochar(lambda, &LaurentPoly::var(vs, j)));
    }
    g
}

/// x_{i_1}(t_1)···x_{i_n}(t_n) in the chart variables.
pub fn reduced_word(datum: &RootDatum, w: &DoubleWord, vs: &Vars) -> Result<GroupWord> {
    let r = datum.rank();
    let mut g = GroupWord::identity(vs);
    for (k, &l) in w.letters.iter().enumerate() {
        g = g.mul(&GroupWord::elementary(datum, l, &LaurentPoly::var(vs, r + k))?);
    }
    Ok(g)
}

/// h·x_{i_1}(t_1)···x_{i_n}(t_n).
pub fn factorization_word(datum: &RootDatum, w: &DoubleWord) -> Result<GroupWord> {
    let vs = chart_vars(datum, w);
    Ok(torus_word(datum, &vs).mul(&reduced_word(datum, w, &vs)?))
}

pub fn factorization_chart(group: &Group, w: &DoubleWord) -> Result<GroupElement> {
    Ok(factorization_word(&group.datum, w)?.eval(group))
}

/// The reduced-cell part z = x_𝐢(t) (h omitted) in the chart variables.
pub fn reduced_chart(group: &Group, w: &DoubleWord) -> Result<GroupElement> {
    let vs = chart_vars(&group.datum, w);
    Ok(reduced_word(&group.datum, w, &vs)?.eval(group))
}

/// A minor passed through sign normalization.
#[derive(Clone, Debug)]
pub struct SignedMinor {
    pub sign: i8,
    pub value: PosRational,
}

/// Δ_k(z) for every k ∈ [−r, −1] ∪ [1, n].
pub fn cluster_minors(group: &Group, w: &DoubleWord) -> Result<BTreeMap<i64, SignedMinor>> {
    let z = reduced_chart(group, w)?;
    let mut out = BTreeMap::new();
    let ks = (1..=group.rank() as i64).map(|k| -k).chain(1..=w.len() as i64);
    for k in ks {
        let (u, v, i) = w.cluster_minor_data(k);
        let p = generalized_minor(group, &u, &v, i, &z)?;
        let (sign, value) = positivity_normalize(&p)?;
        out.insert(k, SignedMinor { sign, value });
    }
    Ok(out)
}

/// (h, t) ↦ (h, (Δ_k)_{k ∈ I}), the coordinates of id × σ(𝐢) in terms of x_𝐢.
pub fn chart_transition_to_cluster(group: &Group, w: &DoubleWord) -> Result<Vec<PosRational>> {
    let vs = chart_vars(&group.datum, w);
    let minors = cluster_minors(group, w)?;
    let mut out: Vec<PosRational> = (0..group.rank()).map(|j| PosRational::var(&vs, j)).collect();
    for k in w.index_set() {
        out.push(minors[&k].value.clone());
    }
    Ok(out)
}

/// g ↦ (g^T, g^ι) at the level of generator words.
pub fn transpose_iota(g: &GroupWord) -> (GroupWord, GroupWord) {
    (g.transpose(), g.iota())
}
