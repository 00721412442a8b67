//! Min-plus tropical polynomials and piecewise-linear maps.

use crate::error::{Error, Result};
use crate::polyhedra::{Ineq, System};
use crate::scalar::Q;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::fmt;

/// An integer affine form ⟨χ, ξ⟩ + c.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Form {
    pub coeffs: Vec<i64>,
    pub constant: i64,
}

impl Form {
    pub fn linear(coeffs: Vec<i64>) -> Self {
        Form { coeffs, constant: 0 }
    }

    pub fn zero(n: usize) -> Self {
        Form::linear(vec![0; n])
    }

    pub fn eval(&self, x: &[Q]) -> Q {
        let mut s = Q::from_integer(self.constant.into());
        for (c, v) in self.coeffs.iter().zip(x) {
            if *c != 0 {
                s += Q::from_integer((*c).into()) * v;
            }
        }
        s
    }

    pub fn sub(&self, other: &Form) -> Form {
        Form {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
            constant: self.constant - other.constant,
        }
    }

    pub fn add(&self, other: &Form) -> Form {
        Form {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
            constant: self.constant + other.constant,
        }
    }

    pub fn scale(&self, k: i64) -> Form {
        Form { coeffs: self.coeffs.iter().map(|a| a * k).collect(), constant: self.constant * k }
    }

    pub fn is_zero(&self) -> bool {
        self.constant == 0 && self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_linear(&self) -> bool {
        self.constant == 0
    }

    /// Row `self − other ≥ 0` (or `> 0`).
    fn ineq_over(&self, other: &Form, strict: bool) -> Ineq<i128> {
        let d = self.sub(other);
        Ineq::new(d.coeffs.iter().map(|&c| c as i128).collect(), d.constant as i128, strict)
    }

    /// Composition with an integer-affine change of coordinates ξ = Mη + v.
    pub fn pullback(&self, m: &[Vec<i64>], v: &[i64]) -> Form {
        let n = m.first().map_or(0, |r| r.len());
        let mut coeffs = vec![0i64; n];
        let mut constant = self.constant;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c != 0 {
                for j in 0..n {
                    coeffs[j] += c * m[i][j];
                }
                constant += c * v[i];
            }
        }
        Form { coeffs, constant }
    }
}

/// Writes a form with variable names.
pub fn format_form(f: &Form, names: &[String]) -> String {
    let mut s = String::new();
    for (c, n) in f.coeffs.iter().zip(names) {
        if *c == 0 {
            continue;
        }
        let sign = if *c < 0 { "-" } else { "+" };
        let mag = c.abs();
        if s.is_empty() {
            if *c < 0 {
                s.push('-');
            }
        } else {
            s.push_str(&format!(" {sign} "));
        }
        if mag == 1 {
            s.push_str(n);
        } else {
            s.push_str(&format!("{mag}{n}"));
        }
    }
    if f.constant != 0 || s.is_empty() {
        if s.is_empty() {
            s = f.constant.to_string();
        } else {
            s.push_str(&format!(" {} {}", if f.constant < 0 { "-" } else { "+" }, f.constant.abs()));
        }
    }
    s
}

/// min over a finite nonempty set of forms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TropPoly {
    pub arity: usize,
    pub forms: Vec<Form>,
}

impl TropPoly {
    pub fn new(arity: usize, forms: Vec<Form>) -> Self {
        assert!(forms.iter().all(|f| f.coeffs.len() == arity), "form arity");
        TropPoly { arity, forms }
    }

    pub fn single(f: Form) -> Self {
        TropPoly { arity: f.coeffs.len(), forms: vec![f] }
    }

    pub fn zero(arity: usize) -> Self {
        TropPoly::single(Form::zero(arity))
    }

    pub fn eval(&self, x: &[Q]) -> Result<Q> {
        if x.len() != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, got: x.len() });
        }
        self.forms
            .iter()
            .map(|f| f.eval(x))
            .min()
            .ok_or_else(|| Error::Parse("empty tropical polynomial".into()))
    }

    /// (f·g)^t = f^t + g^t.
    pub fn plus(&self, other: &TropPoly) -> TropPoly {
        let mut forms = vec![];
        for a in &self.forms {
            for b in &other.forms {
                forms.push(a.add(b));
            }
        }
        canonicalize(&TropPoly::new(self.arity, forms))
    }

    /// (f+g)^t = min(f^t, g^t).
    pub fn min_with(&self, other: &TropPoly) -> TropPoly {
        let mut forms = self.forms.clone();
        forms.extend(other.forms.iter().cloned());
        canonicalize(&TropPoly::new(self.arity, forms))
    }

    pub fn is_linear(&self) -> bool {
        self.forms.iter().all(Form::is_linear)
    }

    /// Region (as an FM system) where form `j` attains the minimum.
    fn argmin_rows(&self, j: usize, strict: bool) -> Vec<Ineq<i128>> {
        self.forms
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != j)
            .map(|(_, f)| f.ineq_over(&self.forms[j], strict))
            .collect()
    }
}

/// Removes every form that is ≥ the minimum of the others on all of ℝⁿ.
/// A form survives exactly when its strict argmin region is nonempty.
pub fn canonicalize(t: &TropPoly) -> TropPoly {
    let mut forms = t.forms.clone();
    forms.sort();
    forms.dedup();
    if forms.len() <= 1 {
        return TropPoly::new(t.arity, forms);
    }
    let dedup = TropPoly::new(t.arity, forms.clone());
    let keep: Vec<Form> = forms
        .iter()
        .enumerate()
        .filter(|(j, _)| System::from_rows(t.arity, dedup.argmin_rows(*j, true)).is_feasible())
        .map(|(_, f)| f.clone())
        .collect();
    TropPoly::new(t.arity, keep)
}

/// f^t − g^t.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TropRational {
    pub num: TropPoly,
    pub den: TropPoly,
}

impl TropRational {
    pub fn new(num: TropPoly, den: TropPoly) -> Self {
        assert_eq!(num.arity, den.arity);
        TropRational { num, den }
    }

    pub fn from_poly(p: TropPoly) -> Self {
        let n = p.arity;
        TropRational { num: p, den: TropPoly::zero(n) }
    }

    pub fn linear(f: Form) -> Self {
        Self::from_poly(TropPoly::single(f))
    }

    pub fn arity(&self) -> usize {
        self.num.arity
    }

    pub fn eval(&self, x: &[Q]) -> Result<Q> {
        Ok(self.num.eval(x)? - self.den.eval(x)?)
    }

    pub fn canonical(&self) -> Self {
        TropRational { num: canonicalize(&self.num), den: canonicalize(&self.den) }
    }

    /// A single linear form when both parts are single forms.
    pub fn as_form(&self) -> Option<Form> {
        let c = self.canonical();
        if c.num.forms.len() == 1 && c.den.forms.len() == 1 {
            Some(c.num.forms[0].sub(&c.den.forms[0]))
        } else {
            None
        }
    }

    /// Exact test of pointwise equality on ℝⁿ by comparing the linear pieces
    /// on every full-dimensional chamber of the common refinement.
    pub fn equals_exact(&self, other: &TropRational) -> bool {
        let a = self.canonical();
        let b = other.canonical();
        if a == b {
            return true;
        }
        let n = a.arity();
        let parts = [&a.num, &a.den, &b.num, &b.den];
        let sizes: Vec<usize> = parts.iter().map(|p| p.forms.len()).collect();
        let total: usize = sizes.iter().product();
        for code in 0..total {
            let mut c = code;
            let mut pick = [0usize; 4];
            for (k, s) in sizes.iter().enumerate() {
                pick[k] = c % s;
                c /= s;
            }
            let lhs = a.num.forms[pick[0]].sub(&a.den.forms[pick[1]]);
            let rhs = b.num.forms[pick[2]].sub(&b.den.forms[pick[3]]);
            if lhs == rhs {
                continue;
            }
            let mut rows = vec![];
            for (k, p) in parts.iter().enumerate() {
                rows.extend(p.argmin_rows(pick[k], true));
            }
            if System::from_rows(n, rows).is_feasible() {
                return false;
            }
        }
        true
    }
}

impl fmt::Display for TropRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.arity()).map(|i| format!("ξ{i}")).collect();
        let show = |p: &TropPoly| {
            let parts: Vec<String> = p.forms.iter().map(|x| format_form(x, &names)).collect();
            if parts.len() == 1 {
                parts[0].clone()
            } else {
                format!("min({})", parts.join(", "))
            }
        };
        if self.den.forms.len() == 1 && self.den.forms[0].is_zero() {
            write!(f, "{}", show(&self.num))
        } else {
            write!(f, "{} - {}", show(&self.num), show(&self.den))
        }
    }
}

/// A piecewise ℤ-linear map ℤⁿ → ℤᵖ given componentwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PLMap {
    pub arity: usize,
    pub components: Vec<TropRational>,
}

impl PLMap {
    pub fn new(arity: usize, components: Vec<TropRational>) -> Self {
        assert!(components.iter().all(|c| c.arity() == arity));
        PLMap { arity, components }
    }

    pub fn coarity(&self) -> usize {
        self.components.len()
    }

    pub fn identity(n: usize) -> Self {
        Self::linear(&(0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect::<Vec<_>>())
    }

    /// The linear map with matrix `m` (rows are output components).
    pub fn linear(m: &[Vec<i64>]) -> Self {
        let n = m.first().map_or(0, |r| r.len());
        PLMap::new(n, m.iter().map(|row| TropRational::linear(Form::linear(row.clone()))).collect())
    }

    pub fn is_homogeneous(&self) -> bool {
        self.components.iter().all(|c| c.num.is_linear() && c.den.is_linear())
    }

    pub fn eval(&self, x: &[Q]) -> Result<Vec<Q>> {
        if x.len() != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, got: x.len() });
        }
        self.components.iter().map(|c| c.eval(x)).collect()
    }

    pub fn eval_int(&self, x: &[i64]) -> Result<Vec<Q>> {
        let v: Vec<Q> = x.iter().map(|&a| Q::from_integer(a.into())).collect();
        self.eval(&v)
    }

    /// The matrix when every component is a single linear form.
    pub fn as_linear(&self) -> Option<Vec<Vec<i64>>> {
        self.components
            .iter()
            .map(|c| c.as_form().filter(Form::is_linear).map(|f| f.coeffs))
            .collect()
    }

    pub fn equal_on(&self, other: &PLMap, samples: &[Vec<Q>]) -> Result<bool> {
        pl_equal_on(self, other, samples)
    }

    /// Exact equality, chamber by chamber.
    pub fn equals_exact(&self, other: &PLMap) -> bool {
        self.arity == other.arity
            && self.coarity() == other.coarity()
            && self.components.iter().zip(&other.components).all(|(a, b)| a.equals_exact(b))
    }
}

pub fn pl_eval(m: &PLMap, point: &[Q]) -> Result<Vec<Q>> {
    m.eval(point)
}

/// Pointwise equality on a finite sample set.
pub fn pl_equal_on(m1: &PLMap, m2: &PLMap, samples: &[Vec<Q>]) -> Result<bool> {
    if m1.arity != m2.arity || m1.coarity() != m2.coarity() {
        return Err(Error::ArityMismatch { expected: m1.arity, got: m2.arity });
    }
    for s in samples {
        if m1.eval(s)? != m2.eval(s)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exact when the arity is small, otherwise by sampling.
pub fn pl_equal(m1: &PLMap, m2: &PLMap, samples: &[Vec<Q>]) -> Result<bool> {
    if m1.arity <= 8 {
        Ok(m1.equals_exact(m2))
    } else {
        pl_equal_on(m1, m2, samples)
    }
}

pub fn is_zero_q(x: &Q) -> bool {
    x.is_zero()
}
