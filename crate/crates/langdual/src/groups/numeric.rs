//! Exact numeric matrices: the twist ζ, peeling factorization parameters off an
//! element of L^{u,e}, and inversion of the cluster chart on sample points.

use super::element::{Group, GroupElement, GroupWord};
use super::word::{chart_vars, reduced_word, DoubleWord};
use crate::error::{Error, Result};
use crate::linalg::{self, Mat};
use crate::rootdata::WeylWord;
use crate::scalar::{q, Q};
use crate::symbolic::{vars, LaurentPoly};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

/// Rational matrices of one element, keyed by fundamental index.
pub type NumericElement = BTreeMap<usize, Mat<Q>>;

fn numeric_word(group: &Group, w: &GroupWord, point: &[Q]) -> Result<NumericElement> {
    w.eval(group).at(point)
}

fn mul(a: &NumericElement, b: &NumericElement) -> NumericElement {
    a.iter().map(|(i, m)| (*i, linalg::mul(m, &b[i]))).collect()
}

/// Δ_{uω_i, vω_i} on a numeric element.
pub fn minor_at(group: &Group, u: &WeylWord, v: &WeylWord, i: usize, g: &NumericElement) -> Result<Q> {
    let rep = group.rep(i)?;
    let (ju, cu) = rep.extreme_vector(u)?;
    let (jv, cv) = rep.extreme_vector(v)?;
    let m = g.get(&i).ok_or(Error::UnsupportedWeight(i))?;
    Ok(m[ju][jv].clone() * cv / cu)
}

/// Unit-lower times diagonal part of an LDU factorization.
fn lower_diag(m: &Mat<Q>) -> Result<Mat<Q>> {
    let n = m.len();
    let mut u = m.clone();
    let mut l = linalg::identity::<Q>(n);
    for k in 0..n {
        if u[k][k].is_zero() {
            return Err(Error::NotDecomposable("singular leading minor".into()));
        }
        for i in k + 1..n {
            let f = u[i][k].clone() / u[k][k].clone();
            l[i][k] = f.clone();
            for j in k..n {
                let s = u[k][j].clone() * f.clone();
                u[i][j] -= s;
            }
        }
    }
    let mut ld = l;
    for row in ld.iter_mut() {
        for (j, x) in row.iter_mut().enumerate() {
            *x *= u[j][j].clone();
        }
    }
    Ok(ld)
}

/// ι on matrices: g ↦ S g^{-1} S with S = (−1)^{depth}.
fn iota(group: &Group, g: &NumericElement) -> Result<NumericElement> {
    g.iter()
        .map(|(i, m)| {
            let s = group.rep(*i)?.sign_twist();
            let inv = linalg::inverse(m).ok_or_else(|| Error::NotDecomposable("singular matrix".into()))?;
            let out = inv
                .iter()
                .enumerate()
                .map(|(a, row)| row.iter().enumerate().map(|(b, x)| x.clone() * q(s[a] * s[b])).collect())
                .collect();
            Ok((*i, out))
        })
        .collect()
}

/// ζ(x) = ([x \bar{w_0}]_− [x \bar{w_0}]_0)^ι.
pub fn twist(group: &Group, x: &NumericElement) -> Result<NumericElement> {
    let w0 = group.datum.longest_word();
    let prod: NumericElement = x.iter().map(|(i, m)| (*i, linalg::mul(m, &group.reps[i - 1].lift_word(&w0)))).collect();
    let ld = prod.iter().map(|(i, m)| Ok((*i, lower_diag(m)?))).collect::<Result<NumericElement>>()?;
    iota(group, &ld)
}

fn x_neg_inverse(group: &Group, i: usize, t: &Q) -> Result<NumericElement> {
    let vs = vars::<&str>(&[]);
    let c = LaurentPoly::constant(&vs, t.clone());
    let m = numeric_word(group, &GroupWord::x_neg(&group.datum, i, &c)?, &[])?;
    m.into_iter()
        .map(|(k, a)| Ok((k, linalg::inverse(&a).ok_or_else(|| Error::NotDecomposable("singular matrix".into()))?)))
        .collect()
}

fn is_identity(g: &NumericElement) -> bool {
    g.values().all(|m| m.iter().enumerate().all(|(a, row)| row.iter().enumerate().all(|(b, x)| *x == Q::from_integer(i64::from(a == b).into()))))
}

/// Recovers t from z = x_{i_1}(t_1)···x_{i_n}(t_n) for a word of negative letters,
/// using t_n = Δ_{uω_{i_n}, s_{i_n}ω_{i_n}}(z) and peeling from the right.
pub fn peel(group: &Group, w: &DoubleWord, z: &NumericElement) -> Result<Vec<Q>> {
    if w.letters.iter().any(|&l| l > 0) {
        return Err(Error::Parse("peeling needs a word of negative letters".into()));
    }
    let mut z = z.clone();
    let mut u = w.u();
    let mut out = vec![Q::zero(); w.len()];
    for k in (0..w.len()).rev() {
        let i = u.letters[k];
        let t = minor_at(group, &u, &WeylWord::new(vec![i]), i, &z)?;
        if !t.is_positive() {
            return Err(Error::InconclusiveWitness("non-positive or non-monomial value".into()));
        }
        z = mul(&z, &x_neg_inverse(group, i, &t)?);
        u = WeylWord::new(u.letters[..k].to_vec());
        out[k] = t;
    }
    if !is_identity(&z) {
        return Err(Error::InconclusiveWitness("non-positive or non-monomial value".into()));
    }
    Ok(out)
}

fn positive_word(w: &DoubleWord) -> DoubleWord {
    DoubleWord { rank: w.rank, letters: w.letters.iter().map(|l| -l).collect() }
}

fn valuation(mut x: Q, p: i64) -> Option<i64> {
    let pq = q(p);
    let mut e = 0;
    while !x.is_zero() && x.numer().clone() % p == 0.into() {
        x /= pq.clone();
        e += 1;
    }
    while x.denom().clone() % p == 0.into() {
        x *= pq.clone();
        e -= 1;
    }
    (x.abs() == Q::one()).then_some(e)
}

fn int_inverse(m: &[Vec<i64>]) -> Option<Vec<Vec<i64>>> {
    let inv = linalg::inverse(&linalg::from_i64(m))?;
    inv.iter().map(|row| row.iter().map(crate::scalar::to_i64).collect()).collect()
}

fn int_pow(x: &Q, e: i64) -> Q {
    let p = num_traits::pow(x.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        Q::one() / p
    } else {
        p
    }
}

/// Inverse of the cluster chart on L^{w_0,e}: the cluster minors of ζ(x_{−𝐢}(s))
/// are monomials c_k ∏ s_l^{M_kl}, so a ↦ s is monomial, and t is peeled off
/// z = ζ(x_{−𝐢}(s)).
pub struct TransitionInverse<'a> {
    group: &'a Group,
    word: DoubleWord,
    positive: GroupElement,
    pub constants: Vec<Q>,
    pub exponents: Vec<Vec<i64>>,
    inverse: Vec<Vec<i64>>,
}

impl<'a> TransitionInverse<'a> {
    pub fn new(group: &'a Group, w: &DoubleWord) -> Result<Self> {
        let pw = positive_word(w);
        let vs = chart_vars(&group.datum, &pw);
        let positive = reduced_word(&group.datum, &pw, &vs)?.eval(group);
        let mut me = TransitionInverse {
            group,
            word: w.clone(),
            positive,
            constants: vec![],
            exponents: vec![],
            inverse: vec![],
        };
        let n = w.len();
        let base = me.twisted_minors(&vec![Q::one(); n])?;
        let mut m = vec![vec![0i64; n]; base.len()];
        for l in 0..n {
            let mut s = vec![Q::one(); n];
            s[l] = q(2);
            for (k, (v, c)) in me.twisted_minors(&s)?.into_iter().zip(&base).enumerate() {
                m[k][l] = valuation(v / c.clone(), 2).ok_or_else(|| Error::InconclusiveWitness("non-monomial minor".into()))?;
            }
        }
        me.inverse = int_inverse(&m).ok_or_else(|| Error::InconclusiveWitness("non-monomial minor".into()))?;
        me.constants = base;
        me.exponents = m;
        Ok(me)
    }

    /// ζ(x_{−𝐢}(s)).
    pub fn twisted_element(&self, s: &[Q]) -> Result<NumericElement> {
        let mut point = vec![Q::one(); self.group.rank()];
        point.extend(s.iter().cloned());
        twist(self.group, &self.positive.at(&point)?)
    }

    /// Cluster minors (I-ordered, signs included) of ζ(x_{−𝐢}(s)).
    pub fn twisted_minors(&self, s: &[Q]) -> Result<Vec<Q>> {
        let z = self.twisted_element(s)?;
        self.word
            .index_set()
            .iter()
            .map(|&k| {
                let (u, v, i) = self.word.cluster_minor_data(k);
                minor_at(self.group, &u, &v, i, &z)
            })
            .collect()
    }

    /// Whether the monomial law holds at s.
    pub fn monomial_at(&self, s: &[Q]) -> Result<bool> {
        let vals = self.twisted_minors(s)?;
        Ok(vals.iter().enumerate().all(|(k, v)| {
            let pred = self.exponents[k]
                .iter()
                .zip(s)
                .fold(self.constants[k].clone(), |acc, (&e, x)| acc * int_pow(x, e));
            *v == pred
        }))
    }

    /// t with Δ_k(x_𝐢(t)) = sign_k · a_k for k ∈ I.
    pub fn apply(&self, a: &[Q], signs: &[i8]) -> Result<Vec<Q>> {
        let b: Vec<Q> = a
            .iter()
            .zip(signs)
            .zip(&self.constants)
            .map(|((x, &sg), ck)| x.clone() * q(sg as i64) / ck.clone())
            .collect();
        if b.iter().any(|x| !x.is_positive()) {
            return Err(Error::InconclusiveWitness("non-positive or non-monomial value".into()));
        }
        let s: Vec<Q> = self
            .inverse
            .iter()
            .map(|row| row.iter().zip(&b).fold(Q::one(), |acc, (&e, x)| acc * int_pow(x, e)))
            .collect();
        peel(self.group, &self.word, &self.twisted_element(&s)?)
    }
}
