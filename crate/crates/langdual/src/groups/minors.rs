//! Generalized minors as extreme matrix coefficients, and Gaussian decomposition.

use super::element::{Group, GroupElement};
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::rootdata::WeylWord;
use crate::symbolic::{det, LaurentPoly, Vars};
use num_traits::One;
use std::collections::BTreeMap;

/// Δ_{uω_i, vω_i}(g) = ⟨v_{ω_i}^*, \bar{u}^{-1} g \bar{v} v_{ω_i}⟩.
pub fn generalized_minor(
    group: &Group,
    u: &WeylWord,
    v: &WeylWord,
    i: usize,
    g: &GroupElement,
) -> Result<LaurentPoly> {
    let rep = group.rep(i)?;
    let m = g.mat(i)?;
    let (ju, cu) = rep.extreme_vector(u)?;
    let (jv, cv) = rep.extreme_vector(v)?;
    Ok(m[ju][jv].scale(&(cv / cu)))
}

/// A quotient of Laurent polynomials, kept reduced only when division is exact.
#[derive(Clone, Debug)]
pub struct Frac {
    pub num: LaurentPoly,
    pub den: LaurentPoly,
}

impl Frac {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::NotDecomposable("singular leading minor".into()));
        }
        Ok(match num.exact_div(&den) {
            Some(qt) => Frac { den: LaurentPoly::one(num.vars()), num: qt },
            None => Frac { num, den },
        })
    }

    pub fn poly(p: LaurentPoly) -> Self {
        Frac { den: LaurentPoly::one(p.vars()), num: p }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn equals(&self, other: &Frac) -> bool {
        (&(&self.num * &other.den) - &(&other.num * &self.den)).is_zero()
    }

    pub fn equals_poly(&self, p: &LaurentPoly) -> bool {
        (&self.num - &(p * &self.den)).is_zero()
    }

    pub fn as_poly(&self) -> Option<LaurentPoly> {
        self.num.exact_div(&self.den)
    }

    pub fn mul(&self, o: &Frac) -> Frac {
        Frac::new(&self.num * &o.num, &self.den * &o.den).expect("nonzero denominators")
    }

    pub fn add(&self, o: &Frac) -> Frac {
        if (&self.den - &o.den).is_zero() {
            return Frac::new(&self.num + &o.num, self.den.clone()).unwrap();
        }
        Frac::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den).unwrap()
    }
}

/// g = g_− g_0 g_+ in one representation: unit lower, diagonal, unit upper.
#[derive(Clone, Debug)]
pub struct Gaussian {
    pub lower: Mat<Frac>,
    pub diag: Vec<Frac>,
    pub upper: Mat<Frac>,
}

fn submatrix(m: &Mat<LaurentPoly>, rows: &[usize], cols: &[usize]) -> Mat<LaurentPoly> {
    rows.iter().map(|&r| cols.iter().map(|&c| m[r][c].clone()).collect()).collect()
}

fn minor(m: &Mat<LaurentPoly>, rows: &[usize], cols: &[usize], vars: &Vars) -> Result<LaurentPoly> {
    if rows.is_empty() {
        return Ok(LaurentPoly::one(vars));
    }
    det(&submatrix(m, rows, cols), vars)
}

/// LDU factorization of a square matrix through its leading principal minors.
pub fn ldu(m: &Mat<LaurentPoly>, vars: &Vars) -> Result<Gaussian> {
    let n = m.len();
    let lead: Vec<LaurentPoly> =
        (0..=n).map(|k| minor(m, &(0..k).collect::<Vec<_>>(), &(0..k).collect::<Vec<_>>(), vars)).collect::<Result<_>>()?;
    if lead.iter().any(|p| p.is_zero()) {
        return Err(Error::NotDecomposable("singular leading minor".into()));
    }
    let zero = Frac::poly(LaurentPoly::zero(vars));
    let one = Frac::poly(LaurentPoly::one(vars));
    let mut lower = vec![vec![zero.clone(); n]; n];
    let mut upper = vec![vec![zero.clone(); n]; n];
    let mut diag = Vec::with_capacity(n);
    for k in 0..n {
        diag.push(Frac::new(lead[k + 1].clone(), lead[k].clone())?);
        lower[k][k] = one.clone();
        upper[k][k] = one.clone();
        let head: Vec<usize> = (0..k).collect();
        for i in k + 1..n {
            let mut rows = head.clone();
            rows.push(i);
            let cols: Vec<usize> = (0..=k).collect();
            lower[i][k] = Frac::new(minor(m, &rows, &cols, vars)?, lead[k + 1].clone())?;
            let mut cols2 = head.clone();
            cols2.push(i);
            let rows2: Vec<usize> = (0..=k).collect();
            upper[k][i] = Frac::new(minor(m, &rows2, &cols2, vars)?, lead[k + 1].clone())?;
        }
    }
    Ok(Gaussian { lower, diag, upper })
}

/// Gaussian decomposition in every representation carried by g.
pub fn gaussian_decompose(g: &GroupElement) -> Result<BTreeMap<usize, Gaussian>> {
    g.mats.iter().map(|(i, m)| Ok((*i, ldu(m, &g.vars)?))).collect()
}

/// [g]_0^{ω_i} for each fundamental weight: the highest-weight diagonal entry.
pub fn torus_part(group: &Group, g: &GroupElement) -> Result<BTreeMap<usize, Frac>> {
    let parts = gaussian_decompose(g)?;
    parts
        .into_iter()
        .map(|(i, gs)| Ok((i, gs.diag[group.rep(i)?.highest()].clone())))
        .collect()
}

impl Gaussian {
    /// Recombines g_− g_0 g_+ entrywise.
    pub fn product(&self) -> Mat<Frac> {
        let n = self.diag.len();
        let vars = self.diag[0].num.vars().clone();
        let mut out = vec![vec![Frac::poly(LaurentPoly::zero(&vars)); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = Frac::poly(LaurentPoly::zero(&vars));
                for k in 0..=i.min(j) {
                    if self.lower[i][k].is_zero() || self.upper[k][j].is_zero() {
                        continue;
                    }
                    acc = acc.add(&self.lower[i][k].mul(&self.diag[k]).mul(&self.upper[k][j]));
                }
                out[i][j] = acc;
            }
        }
        out
    }

    pub fn is_trivial_unipotent(&self) -> bool {
        let n = self.diag.len();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let want_one = i == j;
                let chk = |f: &Frac| {
                    if want_one {
                        f.as_poly().is_some_and(|p| p.is_constant() && p.coeff(&vec![0; p.arity()]).is_one())
                    } else {
                        f.is_zero()
                    }
                };
                chk(&self.lower[i][j]) && chk(&self.upper[i][j])
            })
        })
    }
}
