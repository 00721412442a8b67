//! Fundamental representations from the registry, with exterior powers built on demand.

use crate::error::{Error, Result};
use crate::linalg::{self, Mat};
use crate::registry::{registry, RepEntry, Triple};
use crate::rootdata::{RootDatum, WeylWord};
use crate::scalar::{q, Q};
use crate::symbolic::LaurentPoly;
use num_traits::{One, Zero};
use std::str::FromStr;

/// A fundamental representation V(ω_i) in a weight basis ordered so that
/// every F_j is strictly lower triangular.
#[derive(Clone, Debug)]
pub struct RepData {
    pub index: usize,
    pub dim: usize,
    pub e: Vec<Mat<Q>>,
    pub f: Vec<Mat<Q>>,
    /// Weight of each basis vector in ω-coordinates.
    pub weights: Vec<Vec<i64>>,
    lifts: Vec<Mat<Q>>,
    lift_invs: Vec<Mat<Q>>,
    depth: Vec<usize>,
}

fn parse_q(s: &str) -> Result<Q> {
    Q::from_str(s.trim()).map_err(|e| Error::Parse(format!("{s}: {e}")))
}

fn sparse(dim: usize, triples: &[Triple]) -> Result<Mat<Q>> {
    let mut m = linalg::zeros::<Q>(dim, dim);
    for (r, c, v) in triples {
        if *r == 0 || *c == 0 || *r > dim || *c > dim {
            return Err(Error::Parse(format!("entry ({r},{c}) outside a {dim}-dimensional space")));
        }
        m[r - 1][c - 1] = parse_q(v)?;
    }
    Ok(m)
}

fn sub(a: &Mat<Q>, b: &Mat<Q>) -> Mat<Q> {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.iter().zip(y).map(|(u, v)| u - v).collect())
        .collect()
}

fn add(a: &Mat<Q>, b: &Mat<Q>) -> Mat<Q> {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.iter().zip(y).map(|(u, v)| u + v).collect())
        .collect()
}

/// exp(sX) for nilpotent X and a rational s.
pub fn exp_nilpotent(x: &Mat<Q>, s: &Q) -> Mat<Q> {
    let n = x.len();
    let mut out = linalg::identity::<Q>(n);
    let mut power = linalg::identity::<Q>(n);
    let mut fact = Q::one();
    for k in 1..=n {
        power = linalg::mul(&power, x);
        if power.iter().flatten().all(|v| v.is_zero()) {
            break;
        }
        fact *= q(k as i64);
        let c = num_traits::pow(s.clone(), k) / fact.clone();
        out = add(&out, &linalg::scale(&power, &c));
    }
    out
}

/// exp(tX) for nilpotent X and a Laurent polynomial t.
pub fn exp_symbolic(x: &Mat<Q>, t: &LaurentPoly) -> Mat<LaurentPoly> {
    let n = x.len();
    let vs = t.vars().clone();
    let mut out: Mat<LaurentPoly> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { LaurentPoly::one(&vs) } else { LaurentPoly::zero(&vs) })
                .collect()
        })
        .collect();
    let mut power = linalg::identity::<Q>(n);
    let mut fact = Q::one();
    let mut tk = LaurentPoly::one(&vs);
    for k in 1..=n {
        power = linalg::mul(&power, x);
        if power.iter().flatten().all(|v| v.is_zero()) {
            break;
        }
        fact *= q(k as i64);
        tk = &tk * t;
        for i in 0..n {
            for j in 0..n {
                if !power[i][j].is_zero() {
                    let c = power[i][j].clone() / fact.clone();
                    out[i][j] = &out[i][j] + &tk.scale(&c);
                }
            }
        }
    }
    out
}

impl RepData {
    fn finish(index: usize, e: Vec<Mat<Q>>, f: Vec<Mat<Q>>, weights: Vec<Vec<i64>>) -> Self {
        let dim = weights.len();
        let one = Q::one();
        let lifts: Vec<Mat<Q>> = (0..e.len())
            .map(|i| {
                let xe = exp_nilpotent(&e[i], &-one.clone());
                let yf = exp_nilpotent(&f[i], &one);
                linalg::mul(&linalg::mul(&xe, &yf), &xe)
            })
            .collect();
        let lift_invs = lifts.iter().map(|m| linalg::inverse(m).expect("lift is invertible")).collect();
        // depth below the highest weight, used for the sign twist in ι
        let mut depth = vec![usize::MAX; dim];
        let top = weights
            .iter()
            .position(|w| w.iter().enumerate().all(|(j, &x)| x == i64::from(j + 1 == index)))
            .unwrap_or(0);
        depth[top] = 0;
        let mut frontier = vec![top];
        while let Some(b) = frontier.pop() {
            for fi in &f {
                for (r, row) in fi.iter().enumerate() {
                    if !row[b].is_zero() && depth[r] == usize::MAX {
                        depth[r] = depth[b] + 1;
                        frontier.push(r);
                    }
                }
            }
        }
        // components not reached from the top (the trivial summand of Λ²) get depth by weight
        for (b, dep) in depth.iter_mut().enumerate() {
            if *dep == usize::MAX {
                *dep = b;
            }
        }
        RepData { index, dim, e, f, weights, lifts, lift_invs, depth }
    }

    fn from_entry(entry: &RepEntry) -> Result<Self> {
        let dim = entry.dim.ok_or_else(|| Error::Parse("rep without dim".into()))?;
        let f = entry
            .f
            .as_ref()
            .ok_or_else(|| Error::Parse("rep without F generators".into()))?
            .iter()
            .map(|t| sparse(dim, t))
            .collect::<Result<Vec<_>>>()?;
        let e = match &entry.e {
            Some(es) => es.iter().map(|t| sparse(dim, t)).collect::<Result<Vec<_>>>()?,
            None => f.iter().map(linalg::transpose).collect(),
        };
        let weights = entry.weights.clone().ok_or_else(|| Error::Parse("rep without weights".into()))?;
        if weights.len() != dim {
            return Err(Error::Parse("weight list length differs from dim".into()));
        }
        Ok(Self::finish(entry.index, e, f, weights))
    }

    /// Λ^k of `base`, basis of increasing k-subsets in lexicographic order.
    fn wedge(base: &RepData, k: usize, index: usize) -> Self {
        let subsets = k_subsets(base.dim, k);
        let pos = |s: &Vec<usize>| subsets.iter().position(|t| t == s).unwrap();
        let derive = |x: &Mat<Q>| -> Mat<Q> {
            let mut m = linalg::zeros::<Q>(subsets.len(), subsets.len());
            for (c, s) in subsets.iter().enumerate() {
                for slot in 0..k {
                    let b = s[slot];
                    for (r, row) in x.iter().enumerate() {
                        if row[b].is_zero() {
                            continue;
                        }
                        let mut t = s.clone();
                        t[slot] = r;
                        if t.iter().filter(|&&v| v == r).count() > 1 {
                            continue;
                        }
                        let (sorted, sign) = sort_with_sign(t);
                        m[pos(&sorted)][c] += row[b].clone() * q(sign);
                    }
                }
            }
            m
        };
        let e = base.e.iter().map(derive).collect();
        let f = base.f.iter().map(derive).collect();
        let weights = subsets
            .iter()
            .map(|s| {
                (0..base.weights[0].len())
                    .map(|j| s.iter().map(|&b| base.weights[b][j]).sum())
                    .collect()
            })
            .collect();
        Self::finish(index, e, f, weights)
    }

    pub fn rank(&self) -> usize {
        self.e.len()
    }

    /// Basis position of the highest weight vector v_{ω_i}.
    pub fn highest(&self) -> usize {
        self.weights
            .iter()
            .position(|w| w.iter().enumerate().all(|(j, &x)| x == i64::from(j + 1 == self.index)))
            .expect("registry representation contains its highest weight")
    }

    /// The numeric lift \bar{s}_i = x_i(−1) y_i(1) x_i(−1).
    pub fn lift(&self, i: usize) -> &Mat<Q> {
        &self.lifts[i - 1]
    }

    pub fn lift_inv(&self, i: usize) -> &Mat<Q> {
        &self.lift_invs[i - 1]
    }

    /// \bar{w} as a matrix, w = s_{l_1}···s_{l_k}.
    pub fn lift_word(&self, w: &WeylWord) -> Mat<Q> {
        w.letters
            .iter()
            .fold(linalg::identity(self.dim), |m, &i| linalg::mul(&m, self.lift(i)))
    }

    /// \bar{w} v_{ω_i} = c · e_j; returns (j, c).
    pub fn extreme_vector(&self, w: &WeylWord) -> Result<(usize, Q)> {
        let mut v = vec![Q::zero(); self.dim];
        v[self.highest()] = Q::one();
        for &i in w.letters.iter().rev() {
            if i == 0 || i > self.rank() {
                return Err(Error::Parse(format!("letter {i} out of range")));
            }
            v = linalg::mul_vec(self.lift(i), &v);
        }
        let nz: Vec<usize> = (0..self.dim).filter(|&j| !v[j].is_zero()).collect();
        match nz.as_slice() {
            [j] => Ok((*j, v[*j].clone())),
            _ => Err(Error::UnsupportedWeight(self.index)),
        }
    }

    /// The sign matrix (−1)^{depth}; conjugating by it negates every E_i and F_i.
    pub fn sign_twist(&self) -> Vec<i64> {
        self.depth.iter().map(|d| if d % 2 == 0 { 1 } else { -1 }).collect()
    }

    /// [E_i, F_j] = δ_ij diag(⟨μ, α_i^∨⟩).
    pub fn check_relations(&self) -> bool {
        let r = self.rank();
        (0..r).all(|i| {
            (0..r).all(|j| {
                let c = sub(&linalg::mul(&self.e[i], &self.f[j]), &linalg::mul(&self.f[j], &self.e[i]));
                (0..self.dim).all(|a| {
                    (0..self.dim).all(|b| {
                        let want = if i == j && a == b { q(self.weights[a][i]) } else { Q::zero() };
                        c[a][b] == want
                    })
                })
            })
        })
    }

    /// Each F_j lowers weights by α_j (column j of A).
    pub fn check_weights(&self, datum: &RootDatum) -> bool {
        let r = self.rank();
        (0..r).all(|j| {
            (0..self.dim).all(|b| {
                (0..self.dim).all(|a| {
                    self.f[j][a][b].is_zero()
                        || (0..r).all(|k| self.weights[a][k] == self.weights[b][k] - datum.a(k + 1, j + 1))
                })
            })
        })
    }
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = vec![];
    go(0, n, k, &mut vec![], &mut out);
    out
}

fn sort_with_sign(mut t: Vec<usize>) -> (Vec<usize>, i64) {
    let mut sign = 1;
    for i in 0..t.len() {
        for j in 0..t.len() - 1 - i {
            if t[j] > t[j + 1] {
                t.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    (t, sign)
}

/// All registered fundamental representations for a Cartan type, indexed 1..=r.
pub fn fundamental_reps(kind: &str, rank: usize) -> Result<Vec<RepData>> {
    let entry = registry()
        .find(kind, rank)
        .ok_or_else(|| Error::UnsupportedType(format!("{kind}{rank}")))?;
    let mut reps: Vec<Option<RepData>> = vec![None; rank];
    for r in entry.reps.iter().filter(|r| r.wedge_of.is_none()) {
        reps[r.index - 1] = Some(RepData::from_entry(r)?);
    }
    for r in entry.reps.iter().filter(|r| r.wedge_of.is_some()) {
        let base = reps[r.wedge_of.unwrap() - 1]
            .clone()
            .ok_or_else(|| Error::Parse("wedge of a missing rep".into()))?;
        let k = r.k.ok_or_else(|| Error::Parse("wedge without k".into()))?;
        reps[r.index - 1] = Some(RepData::wedge(&base, k, r.index));
    }
    reps.into_iter()
        .enumerate()
        .map(|(i, r)| r.ok_or(Error::UnsupportedWeight(i + 1)))
        .collect()
}
