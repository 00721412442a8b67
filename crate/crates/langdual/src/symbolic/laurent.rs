//! Laurent polynomials with exact coefficients in named variables.

use crate::error::{Error, Result};
use crate::scalar::{Field, Q};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

/// Ordered variable names shared between polynomials of one context.
pub type Vars = Arc<Vec<String>>;

pub fn vars<S: AsRef<str>>(names: &[S]) -> Vars {
    Arc::new(names.iter().map(|s| s.as_ref().to_string()).collect())
}

pub type Exp = Vec<i64>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly<C: Field = Q> {
    vars: Vars,
    terms: BTreeMap<Exp, C>,
}

impl<C: Field> LaurentPoly<C> {
    pub fn zero(vars: &Vars) -> Self {
        LaurentPoly { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &Vars, c: C) -> Self {
        Self::monomial(vars, vec![0; vars.len()], c)
    }

    pub fn one(vars: &Vars) -> Self {
        Self::constant(vars, C::one())
    }

    pub fn monomial(vars: &Vars, exp: Exp, c: C) -> Self {
        assert_eq!(exp.len(), vars.len(), "exponent arity");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPoly { vars: vars.clone(), terms }
    }

    /// The variable with index `i` (0-based).
    pub fn var(vars: &Vars, i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Self::monomial(vars, e, C::one())
    }

    pub fn var_named(vars: &Vars, name: &str) -> Result<Self> {
        let i = vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::VariableContextError(format!("unknown variable {name}")))?;
        Ok(Self::var(vars, i))
    }

    pub fn from_terms(vars: &Vars, terms: impl IntoIterator<Item = (Exp, C)>) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent arity");
            p.add_term(e, c);
        }
        p
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: &[i64]) -> C {
        self.terms.get(e).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn as_monomial(&self) -> Option<(&Exp, &C)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn is_constant(&self) -> bool {
        self.is_zero() || (self.is_monomial() && self.terms.keys().next().unwrap().iter().all(|&x| x == 0))
    }

    fn add_term(&mut self, e: Exp, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v = v.clone() + c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars {
            Ok(())
        } else {
            Err(Error::VariableContextError(format!(
                "{:?} vs {:?}",
                self.vars, other.vars
            )))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(&self.vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exp = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1.clone() * c2.clone());
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v.clone() * c.clone())).collect(),
        }
    }

    /// Multiplication by the monomial x^e.
    pub fn shift(&self, e: &[i64]) -> Self {
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.iter().zip(e).map(|(a, b)| a + b).collect(), v.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one(&self.vars);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                out = &out * &base;
            }
            base = &base * &base;
            n >>= 1;
        }
        out
    }

    /// Inverse of a monomial; `None` otherwise.
    pub fn monomial_inverse(&self) -> Option<Self> {
        let (e, c) = self.as_monomial()?;
        Some(Self::monomial(&self.vars, e.iter().map(|x| -x).collect(), C::one() / c.clone()))
    }

    /// Integer power, negative allowed for monomials.
    pub fn powi(&self, n: i64) -> Option<Self> {
        if n >= 0 {
            Some(self.pow(n as u32))
        } else {
            Some(self.monomial_inverse()?.pow((-n) as u32))
        }
    }

    pub fn leading(&self) -> Option<(&Exp, &C)> {
        self.terms.iter().next_back()
    }

    pub fn lowest(&self) -> Option<(&Exp, &C)> {
        self.terms.iter().next()
    }

    /// Exact division in the Laurent ring; `None` if `other` does not divide `self`.
    pub fn exact_div(&self, other: &Self) -> Option<Self> {
        self.check(other).ok()?;
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero(&self.vars));
        }
        if let Some(inv) = other.monomial_inverse() {
            return Some(self * &inv);
        }
        // If the quotient exists, its Newton polytope is the Minkowski
        // difference, so each exponent coordinate lies in a known box; lex
        // order alone is not a well-order on ℤⁿ.
        let (glead_e, glead_c) = other.leading().map(|(e, c)| (e.clone(), c.clone()))?;
        let n = self.arity();
        let (flo, fhi) = self.exponent_box();
        let (glo, ghi) = other.exponent_box();
        let lo: Exp = (0..n).map(|i| flo[i] - glo[i]).collect();
        let hi: Exp = (0..n).map(|i| fhi[i] - ghi[i]).collect();
        if (0..n).any(|i| lo[i] > hi[i]) {
            return None;
        }
        let mut rem = self.clone();
        let mut quot = Self::zero(&self.vars);
        while let Some((re, rc)) = rem.leading().map(|(e, c)| (e.clone(), c.clone())) {
            let qe: Exp = re.iter().zip(&glead_e).map(|(a, b)| a - b).collect();
            if (0..n).any(|i| qe[i] < lo[i] || qe[i] > hi[i]) {
                return None;
            }
            let qc = rc / glead_c.clone();
            let term = Self::monomial(&self.vars, qe, qc);
            rem = &rem - &(&term * other);
            quot = &quot + &term;
        }
        Some(quot)
    }

    /// Componentwise minimum and maximum of the support exponents.
    pub fn exponent_box(&self) -> (Exp, Exp) {
        let n = self.arity();
        let mut lo = vec![i64::MAX; n];
        let mut hi = vec![i64::MIN; n];
        for e in self.terms.keys() {
            for i in 0..n {
                lo[i] = lo[i].min(e[i]);
                hi[i] = hi[i].max(e[i]);
            }
        }
        (lo, hi)
    }

    /// Evaluation at a point with nonzero coordinates where negative exponents occur.
    pub fn eval(&self, point: &[C]) -> Result<C> {
        if point.len() != self.arity() {
            return Err(Error::ArityMismatch { expected: self.arity(), got: point.len() });
        }
        let mut s = C::zero();
        for (e, c) in &self.terms {
            let mut v = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    for _ in 0..k {
                        v = v * x.clone();
                    }
                } else if k < 0 {
                    if x.is_zero() {
                        return Err(Error::VariableContextError("pole at evaluation point".into()));
                    }
                    for _ in 0..(-k) {
                        v = v / x.clone();
                    }
                }
            }
            s = s + v;
        }
        Ok(s)
    }

    /// Substitutes Laurent polynomials (in a common target context) for the
    /// variables; negative exponents require monomial images.
    pub fn substitute(&self, images: &[LaurentPoly<C>], target: &Vars) -> Result<Self> {
        if images.len() != self.arity() {
            return Err(Error::ArityMismatch { expected: self.arity(), got: images.len() });
        }
        let mut out = LaurentPoly::zero(target);
        for (e, c) in &self.terms {
            let mut t = LaurentPoly::constant(target, c.clone());
            for (img, &k) in images.iter().zip(e) {
                if k != 0 {
                    let p = img.powi(k).ok_or_else(|| {
                        Error::VariableContextError("negative power of a non-monomial".into())
                    })?;
                    t = t.try_mul(&p)?;
                }
            }
            out = out.try_add(&t)?;
        }
        Ok(out)
    }

    /// Re-expresses the polynomial in a larger context by variable names.
    pub fn embed(&self, target: &Vars) -> Result<Self> {
        let idx: Vec<usize> = self
            .vars
            .iter()
            .map(|v| {
                target.iter().position(|t| t == v).ok_or_else(|| {
                    Error::VariableContextError(format!("{v} missing from target context"))
                })
            })
            .collect::<Result<_>>()?;
        let mut out = Self::zero(target);
        for (e, c) in &self.terms {
            let mut ne = vec![0; target.len()];
            for (k, &i) in idx.iter().enumerate() {
                ne[i] += e[k];
            }
            out.add_term(ne, c.clone());
        }
        Ok(out)
    }

    pub fn all_coeffs_positive(&self) -> bool {
        self.terms.values().all(|c| c.is_positive())
    }

    /// Support exponents.
    pub fn support(&self) -> Vec<Exp> {
        self.terms.keys().cloned().collect()
    }
}

impl<C: Field> fmt::Display for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mut factors: Vec<String> = vec![];
            for (name, &k) in self.vars.iter().zip(e) {
                match k {
                    0 => {}
                    1 => factors.push(name.clone()),
                    _ => factors.push(format!("{name}^{k}")),
                }
            }
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{abs}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl<C: Field> fmt::Debug for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<C: Field> Add for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn add(self, rhs: Self) -> LaurentPoly<C> {
        self.try_add(rhs).expect("variable contexts agree")
    }
}

impl<C: Field> Sub for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn sub(self, rhs: Self) -> LaurentPoly<C> {
        self.try_sub(rhs).expect("variable contexts agree")
    }
}

impl<C: Field> Mul for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn mul(self, rhs: Self) -> LaurentPoly<C> {
        self.try_mul(rhs).expect("variable contexts agree")
    }
}

impl<C: Field> Neg for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn neg(self) -> LaurentPoly<C> {
        self.scale(&-C::one())
    }
}

/// Parses `coeff * x1^e1*...` sums, e.g. `x1^2 - 3/2*x2*x3^-1 + 4`.
pub fn parse(text: &str, vars: &Vars) -> Result<LaurentPoly<Q>> {
    let s: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut pos = 0;
    let mut out = LaurentPoly::zero(vars);
    let err = |m: &str| Error::Parse(format!("{m} in '{text}'"));
    if s.is_empty() {
        return Err(err("empty expression"));
    }
    while pos < s.len() {
        let mut sign = 1i64;
        while pos < s.len() && (s[pos] == '+' || s[pos] == '-') {
            if s[pos] == '-' {
                sign = -sign;
            }
            pos += 1;
        }
        let mut coeff = Q::from_integer(sign.into());
        let mut exp = vec![0i64; vars.len()];
        let mut need_factor = true;
        while need_factor {
            if pos >= s.len() {
                return Err(err("dangling operator"));
            }
            if s[pos].is_ascii_digit() {
                let start = pos;
                while pos < s.len() && (s[pos].is_ascii_digit() || s[pos] == '/') {
                    pos += 1;
                }
                let lit: String = s[start..pos].iter().collect();
                let v: Q = lit.parse().map_err(|_| err("bad number"))?;
                coeff *= v;
            } else if s[pos].is_alphabetic() || s[pos] == '_' {
                let start = pos;
                while pos < s.len() && (s[pos].is_alphanumeric() || s[pos] == '_') {
                    pos += 1;
                }
                let name: String = s[start..pos].iter().collect();
                let i = vars
                    .iter()
                    .position(|v| *v == name)
                    .ok_or_else(|| Error::VariableContextError(format!("unknown variable {name}")))?;
                let mut k = 1i64;
                if pos < s.len() && s[pos] == '^' {
                    pos += 1;
                    let st = pos;
                    if pos < s.len() && s[pos] == '-' {
                        pos += 1;
                    }
                    while pos < s.len() && s[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    let lit: String = s[st..pos].iter().collect();
                    k = lit.parse().map_err(|_| err("bad exponent"))?;
                }
                exp[i] += k;
            } else {
                return Err(err("unexpected character"));
            }
            if pos < s.len() && s[pos] == '*' {
                pos += 1;
            } else {
                need_factor = false;
            }
        }
        out.add_term(exp, coeff);
    }
    Ok(out)
}

/// Determinant by Laplace expansion along rows with memoized column subsets.
pub fn det<C: Field>(m: &[Vec<LaurentPoly<C>>], vars: &Vars) -> Result<LaurentPoly<C>> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::ArityMismatch { expected: n, got: m.first().map_or(0, |r| r.len()) });
    }
    if n > 16 {
        return Err(Error::UnsupportedType("determinant size".into()));
    }
    for row in m {
        for e in row {
            if e.vars != *vars && !Arc::ptr_eq(&e.vars, vars) {
                return Err(Error::VariableContextError("matrix entry context".into()));
            }
        }
    }
    // memo[mask] = determinant of the submatrix on the last popcount(mask) rows and columns in mask
    let mut memo: Vec<Option<LaurentPoly<C>>> = vec![None; 1 << n];
    memo[0] = Some(LaurentPoly::one(vars));
    for mask in 1usize..(1 << n) {
        let k = mask.count_ones() as usize;
        let row = n - k;
        let mut acc = LaurentPoly::zero(vars);
        let mut sign_pos = 0;
        for col in 0..n {
            if mask & (1 << col) == 0 {
                continue;
            }
            let entry = &m[row][col];
            if !entry.is_zero() {
                let sub = memo[mask & !(1 << col)].as_ref().unwrap();
                if !sub.is_zero() {
                    let t = entry * sub;
                    acc = if sign_pos % 2 == 0 { &acc + &t } else { &acc - &t };
                }
            }
            sign_pos += 1;
        }
        memo[mask] = Some(acc);
    }
    Ok(memo[(1 << n) - 1].take().unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qr};
    use proptest::prelude::*;

    fn ctx() -> Vars {
        vars(&["x1", "x2", "x3"])
    }

    #[test]
    fn square_of_binomial() {
        let v = ctx();
        let p = parse("x1 + x3", &v).unwrap();
        assert_eq!(&p * &p, parse("x1^2 + 2*x1*x3 + x3^2", &v).unwrap());
    }

    #[test]
    fn parse_and_format_roundtrip() {
        let v = ctx();
        let p = parse("x1^2 - 3/2*x2*x3^-1 + 4", &v).unwrap();
        assert_eq!(p.coeff(&[0, 1, -1]), qr(-3, 2));
        assert_eq!(parse(&p.to_string(), &v).unwrap(), p);
        assert!(matches!(parse("y", &v), Err(Error::VariableContextError(_))));
        assert!(matches!(parse("x1 +", &v), Err(Error::Parse(_))));
    }

    #[test]
    fn context_mismatch() {
        let a = parse("x1", &ctx()).unwrap();
        let b = parse("t", &vars(&["t"])).unwrap();
        assert!(matches!(a.try_add(&b), Err(Error::VariableContextError(_))));
        assert!(matches!(a.try_mul(&b), Err(Error::VariableContextError(_))));
    }

    #[test]
    fn det_of_sl2_factor() {
        let v = vars(&["t"]);
        let t = LaurentPoly::<Q>::var(&v, 0);
        let m = vec![
            vec![t.monomial_inverse().unwrap(), LaurentPoly::zero(&v)],
            vec![LaurentPoly::one(&v), t.clone()],
        ];
        assert_eq!(det(&m, &v).unwrap(), LaurentPoly::one(&v));
    }

    #[test]
    fn det_matches_leibniz_on_integer_matrices() {
        let v = vars(&["t"]);
        let raw = [[2, -1, 0, 3], [1, 4, -2, 0], [0, 1, 1, 1], [5, 0, -1, 2]];
        let m: Vec<Vec<LaurentPoly>> = raw
            .iter()
            .map(|r| r.iter().map(|&x| LaurentPoly::constant(&v, q(x))).collect())
            .collect();
        let qm: Vec<Vec<Q>> = raw.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
        assert_eq!(det(&m, &v).unwrap(), LaurentPoly::constant(&v, crate::linalg::det(&qm)));
    }

    #[test]
    fn exact_division() {
        let v = ctx();
        let f = parse("x1^2*x2^-1 - x3^2*x2^-1", &v).unwrap();
        let g = parse("x1 + x3", &v).unwrap();
        assert_eq!(f.exact_div(&g).unwrap(), parse("x1*x2^-1 - x3*x2^-1", &v).unwrap());
        assert!(parse("x1 + 1", &v).unwrap().exact_div(&g).is_none());
    }

    #[test]
    fn eval_and_substitute() {
        let v = ctx();
        let p = parse("x1*x2^-1 + 2*x3", &v).unwrap();
        assert_eq!(p.eval(&[q(3), q(2), q(1)]).unwrap(), qr(7, 2));
        let w = vars(&["a"]);
        let a = LaurentPoly::<Q>::var(&w, 0);
        let s = p.substitute(&[a.pow(2), a.clone(), LaurentPoly::one(&w)], &w).unwrap();
        assert_eq!(s, parse("a + 2", &w).unwrap());
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        proptest::collection::vec((proptest::collection::vec(-2i64..3, 3), -3i64..4), 0..5)
            .prop_map(|ts| LaurentPoly::from_terms(&ctx(), ts.into_iter().map(|(e, c)| (e, q(c)))))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn division_inverts_multiplication(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            let prod = &a * &b;
            prop_assert_eq!(prod.exact_div(&b).unwrap(), a);
        }

        #[test]
        fn eval_is_a_ring_map(a in arb_poly(), b in arb_poly(), x in proptest::collection::vec(1i64..5, 3)) {
            let p: Vec<Q> = x.iter().map(|&v| q(v)).collect();
            prop_assert_eq!((&a * &b).eval(&p).unwrap(), a.eval(&p).unwrap() * b.eval(&p).unwrap());
        }
    }
}
