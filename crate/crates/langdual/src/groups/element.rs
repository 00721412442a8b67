//! Words in the generators x_i, y_i, torus elements and lifts, and their matrices.

use super::rep::{exp_symbolic, fundamental_reps, RepData};
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::rootdata::{RootDatum, WeylWord};
use crate::scalar::{to_i64, Q};
use crate::symbolic::{LaurentPoly, Vars};
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// A group together with its fundamental representations.
#[derive(Clone, Debug)]
pub struct Group {
    pub datum: RootDatum,
    pub reps: Vec<RepData>,
}

impl Group {
    pub fn new(datum: RootDatum) -> Result<Self> {
        let reps = fundamental_reps(&datum.kind, datum.rank())?;
        Ok(Group { datum, reps })
    }

    pub fn by_name(name: &str) -> Result<Self> {
        Self::new(crate::rootdata::datum_by_name(name, None)?)
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    pub fn rep(&self, i: usize) -> Result<&RepData> {
        if i == 0 {
            return Err(Error::UnsupportedWeight(0));
        }
        self.reps.get(i - 1).ok_or(Error::UnsupportedWeight(i))
    }

    pub fn langlands_dual(&self) -> Result<Group> {
        Group::new(self.datum.langlands_dual())
    }
}

/// One generator of a group word.
#[derive(Clone, Debug, PartialEq)]
pub enum Factor {
    /// x_i(t) = exp(t E_i)
    X(usize, LaurentPoly),
    /// y_i(t) = exp(t F_i)
    Y(usize, LaurentPoly),
    /// λ(c) for a coweight λ (ω^∨-coordinates) and c = ± monomial
    Torus(Vec<Q>, LaurentPoly),
    Lift(usize),
    LiftInv(usize),
}

/// A formal product of generators; matrices are produced per representation.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupWord {
    pub vars: Vars,
    pub factors: Vec<Factor>,
}

impl GroupWord {
    pub fn identity(vars: &Vars) -> Self {
        GroupWord { vars: vars.clone(), factors: vec![] }
    }

    fn single(vars: &Vars, f: Factor) -> Self {
        GroupWord { vars: vars.clone(), factors: vec![f] }
    }

    pub fn x(i: usize, t: &LaurentPoly) -> Self {
        Self::single(t.vars(), Factor::X(i, t.clone()))
    }

    pub fn y(i: usize, t: &LaurentPoly) -> Self {
        Self::single(t.vars(), Factor::Y(i, t.clone()))
    }

    pub fn coroot(datum: &RootDatum, i: usize, c: &LaurentPoly) -> Self {
        Self::single(c.vars(), Factor::Torus(datum.simple_coroot(i), c.clone()))
    }

    pub fn cochar(lambda: Vec<Q>, c: &LaurentPoly) -> Self {
        Self::single(c.vars(), Factor::Torus(lambda, c.clone()))
    }

    /// x_{−i}(t) = y_i(t) α_i^∨(t^{-1}).
    pub fn x_neg(datum: &RootDatum, i: usize, t: &LaurentPoly) -> Result<Self> {
        let inv = t
            .monomial_inverse()
            .ok_or_else(|| Error::VariableContextError("x_{-i}(t) needs a monomial t".into()))?;
        Ok(Self::y(i, t).mul(&Self::coroot(datum, i, &inv)))
    }

    /// x_i(t) for i > 0 and x_{−|i|}(t) for i < 0.
    pub fn elementary(datum: &RootDatum, i: i64, t: &LaurentPoly) -> Result<Self> {
        let a = i.unsigned_abs() as usize;
        if a == 0 || a > datum.rank() {
            return Err(Error::Parse(format!("letter {i} out of range")));
        }
        if i > 0 {
            Ok(Self::x(a, t))
        } else {
            Self::x_neg(datum, a, t)
        }
    }

    pub fn lift(vars: &Vars, i: usize) -> Self {
        Self::single(vars, Factor::Lift(i))
    }

    pub fn lift_word(vars: &Vars, w: &WeylWord) -> Self {
        GroupWord { vars: vars.clone(), factors: w.letters.iter().map(|&i| Factor::Lift(i)).collect() }
    }

    pub fn mul(&self, other: &GroupWord) -> GroupWord {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        GroupWord { vars: self.vars.clone(), factors }
    }

    /// g ↦ g^T: x_i ↔ y_i, torus fixed, order reversed.
    pub fn transpose(&self) -> GroupWord {
        let factors = self
            .factors
            .iter()
            .rev()
            .map(|f| match f {
                Factor::X(i, t) => Factor::Y(*i, t.clone()),
                Factor::Y(i, t) => Factor::X(*i, t.clone()),
                Factor::Torus(l, c) => Factor::Torus(l.clone(), c.clone()),
                // \bar{s}_i^T = y_i(−1) x_i(1) y_i(−1) = \bar{s}_i^{-1}
                Factor::Lift(i) => Factor::LiftInv(*i),
                Factor::LiftInv(i) => Factor::Lift(*i),
            })
            .collect();
        GroupWord { vars: self.vars.clone(), factors }
    }

    /// g ↦ g^ι: x_i, y_i fixed, a ↦ a^{-1} on the torus, order reversed.
    pub fn iota(&self) -> GroupWord {
        let factors = self
            .factors
            .iter()
            .rev()
            .map(|f| match f {
                Factor::Torus(l, c) => {
                    Factor::Torus(l.clone(), c.monomial_inverse().expect("torus factors are monomial"))
                }
                other => other.clone(),
            })
            .collect();
        GroupWord { vars: self.vars.clone(), factors }
    }

    /// Matrix of the word in one representation.
    pub fn matrix_in(&self, datum: &RootDatum, rep: &RepData) -> Result<Mat<LaurentPoly>> {
        let mut m = identity(&self.vars, rep.dim);
        for f in &self.factors {
            m = match f {
                Factor::X(i, t) => mat_mul(&m, &exp_symbolic(&rep.e[i - 1], t)),
                Factor::Y(i, t) => mat_mul(&m, &exp_symbolic(&rep.f[i - 1], t)),
                Factor::Lift(i) => mat_mul_q(&m, rep.lift(*i)),
                Factor::LiftInv(i) => mat_mul_q(&m, rep.lift_inv(*i)),
                Factor::Torus(lambda, c) => {
                    if !c.is_monomial() {
                        return Err(Error::VariableContextError("torus argument must be a monomial".into()));
                    }
                    let mut out = m.clone();
                    for (b, w) in rep.weights.iter().enumerate() {
                        let wq: Vec<Q> = w.iter().map(|&x| Q::from_integer(x.into())).collect();
                        let k = to_i64(&datum.pair(&wq, lambda)).ok_or_else(|| {
                            Error::LatticeError(format!(
                                "cocharacter {lambda:?} does not act on V(ω_{})",
                                rep.index
                            ))
                        })?;
                        let mono = c.powi(k).expect("monomial powers exist");
                        for row in out.iter_mut() {
                            row[b] = &row[b] * &mono;
                        }
                    }
                    out
                }
            };
        }
        Ok(m)
    }

    /// Matrices in every representation on which the torus factors act.
    pub fn eval(&self, group: &Group) -> GroupElement {
        let mats = group
            .reps
            .iter()
            .filter_map(|rep| self.matrix_in(&group.datum, rep).ok().map(|m| (rep.index, m)))
            .collect();
        GroupElement { vars: self.vars.clone(), mats }
    }
}

/// Symbolic matrices of a group element, keyed by fundamental index.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupElement {
    pub vars: Vars,
    pub mats: BTreeMap<usize, Mat<LaurentPoly>>,
}

impl GroupElement {
    pub fn mat(&self, i: usize) -> Result<&Mat<LaurentPoly>> {
        self.mats.get(&i).ok_or(Error::UnsupportedWeight(i))
    }

    pub fn mul(&self, other: &GroupElement) -> GroupElement {
        let mats = self
            .mats
            .iter()
            .filter_map(|(i, a)| other.mats.get(i).map(|b| (*i, mat_mul(a, b))))
            .collect();
        GroupElement { vars: self.vars.clone(), mats }
    }

    /// Numeric matrices at a point.
    pub fn at(&self, point: &[Q]) -> Result<BTreeMap<usize, Mat<Q>>> {
        self.mats
            .iter()
            .map(|(i, m)| {
                let v = m
                    .iter()
                    .map(|row| row.iter().map(|p| p.eval(point)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Mat<Q>>>()?;
                Ok((*i, v))
            })
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.mats.values().all(|m| {
            m.iter().enumerate().all(|(i, row)| {
                row.iter().enumerate().all(|(j, p)| {
                    if i == j {
                        p.is_constant() && p.coeff(&vec![0; p.arity()]) == Q::one()
                    } else {
                        p.is_zero()
                    }
                })
            })
        })
    }
}

pub fn identity(vars: &Vars, n: usize) -> Mat<LaurentPoly> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { LaurentPoly::one(vars) } else { LaurentPoly::zero(vars) })
                .collect()
        })
        .collect()
}

pub fn mat_mul(a: &Mat<LaurentPoly>, b: &Mat<LaurentPoly>) -> Mat<LaurentPoly> {
    let vs = a[0][0].vars().clone();
    let n = a.len();
    let m = b[0].len();
    let mut out = vec![vec![LaurentPoly::zero(&vs); m]; n];
    for i in 0..n {
        for k in 0..b.len() {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[k][j].is_zero() {
                    out[i][j] = &out[i][j] + &(&a[i][k] * &b[k][j]);
                }
            }
        }
    }
    out
}

pub fn mat_mul_q(a: &Mat<LaurentPoly>, b: &Mat<Q>) -> Mat<LaurentPoly> {
    let vs = a[0][0].vars().clone();
    let n = a.len();
    let mut out = vec![vec![LaurentPoly::zero(&vs); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    out[i][j] = &out[i][j] + &a[i][k].scale(&b[k][j]);
                }
            }
        }
    }
    out
}
