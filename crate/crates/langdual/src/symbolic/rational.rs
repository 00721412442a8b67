//! Subtraction-free rational functions and their tropicalization.

use super::laurent::{LaurentPoly, Vars};
use super::trop::{Form, PLMap, TropPoly, TropRational};
use crate::error::{Error, Result};
use crate::scalar::{Field, Q};
use std::fmt;

/// numerator / denominator, both with strictly positive coefficients.
#[derive(Clone)]
pub struct PosRational<C: Field = Q> {
    num: LaurentPoly<C>,
    den: LaurentPoly<C>,
}

impl<C: Field> PosRational<C> {
    pub fn new(num: LaurentPoly<C>, den: LaurentPoly<C>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::NotSubtractionFree("zero denominator".into()));
        }
        if !num.all_coeffs_positive() || !den.all_coeffs_positive() || num.is_zero() {
            return Err(Error::NotSubtractionFree(format!("({num}) / ({den})")));
        }
        let mut r = PosRational { num, den };
        r.reduce();
        Ok(r)
    }

    pub fn from_poly(p: LaurentPoly<C>) -> Result<Self> {
        let one = LaurentPoly::one(p.vars());
        Self::new(p, one)
    }

    pub fn one(vars: &Vars) -> Self {
        PosRational { num: LaurentPoly::one(vars), den: LaurentPoly::one(vars) }
    }

    pub fn var(vars: &Vars, i: usize) -> Self {
        PosRational { num: LaurentPoly::var(vars, i), den: LaurentPoly::one(vars) }
    }

    pub fn monomial(vars: &Vars, exp: Vec<i64>) -> Self {
        PosRational { num: LaurentPoly::monomial(vars, exp, C::one()), den: LaurentPoly::one(vars) }
    }

    pub fn num(&self) -> &LaurentPoly<C> {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly<C> {
        &self.den
    }

    pub fn vars(&self) -> &Vars {
        self.num.vars()
    }

    pub fn arity(&self) -> usize {
        self.num.arity()
    }

    /// Clears monomial denominators and, when the denominator divides the
    /// numerator exactly, returns a Laurent polynomial over 1.
    fn reduce(&mut self) {
        if self.den.is_monomial() {
            let inv = self.den.monomial_inverse().unwrap();
            self.num = &self.num * &inv;
            self.den = LaurentPoly::one(self.num.vars());
        } else if let Some(qt) = self.num.exact_div(&self.den) {
            if qt.all_coeffs_positive() {
                self.num = qt;
                self.den = LaurentPoly::one(self.num.vars());
            }
        }
    }

    /// The Laurent polynomial when the denominator is trivial.
    pub fn as_laurent(&self) -> Option<&LaurentPoly<C>> {
        if self.den.is_constant() && self.den == LaurentPoly::one(self.den.vars()) {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        Self::new(self.num.try_mul(&other.num)?, self.den.try_mul(&other.den)?)
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Self::new(self.num.try_mul(&other.den)?, self.den.try_mul(&other.num)?)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.den == other.den {
            return Self::new(self.num.try_add(&other.num)?, self.den.clone());
        }
        let n = self.num.try_mul(&other.den)?.try_add(&other.num.try_mul(&self.den)?)?;
        Self::new(n, self.den.try_mul(&other.den)?)
    }

    pub fn inv(&self) -> Self {
        let mut r = PosRational { num: self.den.clone(), den: self.num.clone() };
        r.reduce();
        r
    }

    pub fn powi(&self, k: i64) -> Self {
        let base = if k < 0 { self.inv() } else { self.clone() };
        let n = k.unsigned_abs() as u32;
        let mut r = PosRational { num: base.num.pow(n), den: base.den.pow(n) };
        r.reduce();
        r
    }

    /// Equality of rational functions by cross-multiplication.
    pub fn equals(&self, other: &Self) -> bool {
        match (self.num.try_mul(&other.den), other.num.try_mul(&self.den)) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        }
    }

    pub fn eval(&self, x: &[C]) -> Result<C> {
        Ok(self.num.eval(x)? / self.den.eval(x)?)
    }

    /// f ∘ (g_1, …, g_n), all subtraction-free.
    pub fn compose(&self, args: &[PosRational<C>]) -> Result<Self> {
        let n = self.arity();
        if args.len() != n {
            return Err(Error::ArityMismatch { expected: n, got: args.len() });
        }
        let target = args
            .first()
            .map(|a| a.vars().clone())
            .ok_or_else(|| Error::VariableContextError("no arguments".into()))?;
        let top = compose_poly(&self.num, args, &target)?;
        let bot = compose_poly(&self.den, args, &target)?;
        top.div(&bot)
    }

    pub fn tropicalize(&self) -> TropRational {
        TropRational::new(trop_poly(&self.num), trop_poly(&self.den))
    }

    pub fn embed(&self, target: &Vars) -> Result<Self> {
        Ok(PosRational { num: self.num.embed(target)?, den: self.den.embed(target)? })
    }
}

/// Σ c_χ ∏ g_i^{χ_i} brought to a single fraction without subtraction.
fn compose_poly<C: Field>(
    p: &LaurentPoly<C>,
    args: &[PosRational<C>],
    target: &Vars,
) -> Result<PosRational<C>> {
    let n = args.len();
    let mut pmax = vec![i64::MIN; n];
    let mut pmin = vec![i64::MAX; n];
    for (e, _) in p.terms() {
        for i in 0..n {
            pmax[i] = pmax[i].max(e[i]);
            pmin[i] = pmin[i].min(e[i]);
        }
    }
    // common denominator ∏ den_i^{pmax_i} num_i^{-pmin_i} over the terms
    let mut top = LaurentPoly::zero(target);
    for (e, c) in p.terms() {
        let mut t = LaurentPoly::constant(target, c.clone());
        for i in 0..n {
            let up = (e[i] - pmin[i]) as u32;
            let down = (pmax[i] - e[i]) as u32;
            if up > 0 {
                t = t.try_mul(&args[i].num.pow(up))?;
            }
            if down > 0 {
                t = t.try_mul(&args[i].den.pow(down))?;
            }
        }
        top = top.try_add(&t)?;
    }
    let mut bot = LaurentPoly::one(target);
    for i in 0..n {
        if pmax[i] > pmin[i] || pmax[i] != 0 {
            // multiply numerator by ∏ num^{pmin} den^{-pmax}
            if pmin[i] > 0 {
                top = top.try_mul(&args[i].num.pow(pmin[i] as u32))?;
            } else if pmin[i] < 0 {
                bot = bot.try_mul(&args[i].num.pow((-pmin[i]) as u32))?;
            }
            if pmax[i] > 0 {
                bot = bot.try_mul(&args[i].den.pow(pmax[i] as u32))?;
            } else if pmax[i] < 0 {
                top = top.try_mul(&args[i].den.pow((-pmax[i]) as u32))?;
            }
        } else if pmin[i] < 0 {
            bot = bot.try_mul(&args[i].num.pow((-pmin[i]) as u32))?;
        }
    }
    PosRational::new(top, bot)
}

/// min over the support; coefficients are positive so no cancellation occurs.
pub fn trop_poly<C: Field>(p: &LaurentPoly<C>) -> TropPoly {
    TropPoly::new(p.arity(), p.support().into_iter().map(Form::linear).collect())
}

impl<C: Field> fmt::Display for PosRational<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.as_laurent().is_some() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl<C: Field> fmt::Debug for PosRational<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Sign normalization: returns (s, s·p) when s·p has only positive coefficients.
pub fn positivity_normalize<C: Field>(p: &LaurentPoly<C>) -> Result<(i8, PosRational<C>)> {
    if p.is_zero() {
        return Err(Error::NotSubtractionFree("zero".into()));
    }
    if p.all_coeffs_positive() {
        return Ok((1, PosRational::from_poly(p.clone())?));
    }
    let neg = -p;
    if neg.all_coeffs_positive() {
        return Ok((-1, PosRational::from_poly(neg)?));
    }
    Err(Error::NotSubtractionFree(p.to_string()))
}

pub fn tropicalize<C: Field>(f: &PosRational<C>) -> TropRational {
    f.tropicalize()
}

pub fn tropicalize_map<C: Field>(phi: &[PosRational<C>]) -> PLMap {
    let n = phi.first().map_or(0, |f| f.arity());
    PLMap::new(n, phi.iter().map(|f| f.tropicalize()).collect())
}

/// f ∘ g for maps given componentwise.
pub fn compose_maps<C: Field>(f: &[PosRational<C>], g: &[PosRational<C>]) -> Result<Vec<PosRational<C>>> {
    f.iter().map(|c| c.compose(g)).collect()
}

/// Pointwise equality of two maps as rational functions.
pub fn maps_equal<C: Field>(a: &[PosRational<C>], b: &[PosRational<C>]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.equals(y))
}

#[cfg(test)]
mod tests {
    use super::super::laurent::{parse, vars};
    use super::*;
    use crate::scalar::{q, qr};
    use proptest::prelude::*;

    fn ctx() -> Vars {
        vars(&["x1", "x2", "x3"])
    }

    fn pr(n: &str, d: &str) -> PosRational {
        let v = ctx();
        PosRational::new(parse(n, &v).unwrap(), parse(d, &v).unwrap()).unwrap()
    }

    /// The example map (x2x3/(x1+x3), x1+x3, x1x2/(x1+x3)).
    fn example_map() -> Vec<PosRational> {
        vec![pr("x2*x3", "x1 + x3"), pr("x1 + x3", "1"), pr("x1*x2", "x1 + x3")]
    }

    #[test]
    fn normalize_signs() {
        let v = ctx();
        let (s, p) = positivity_normalize(&parse("x1 + x3", &v).unwrap()).unwrap();
        assert_eq!((s, p.to_string()), (1, "x1 + x3".to_string()));
        let (s, p) = positivity_normalize(&parse("-x1*x2", &v).unwrap()).unwrap();
        assert_eq!((s, p.to_string()), (-1, "x1*x2".to_string()));
        assert!(matches!(
            positivity_normalize(&parse("x1 - x2", &v).unwrap()),
            Err(Error::NotSubtractionFree(_))
        ));
    }

    #[test]
    fn tropicalize_examples() {
        let f = pr("x2*x3", "x1 + x3").tropicalize();
        assert_eq!(f.canonical().to_string(), "ξ2 + ξ3 - min(ξ3, ξ1)");
        let one = pr("1", "1").tropicalize();
        assert_eq!(one.eval(&[q(4), q(-2), q(7)]).unwrap(), q(0));
        let mono = pr("x1^2*x2^-1", "1").tropicalize();
        assert_eq!(mono.as_form().unwrap().coeffs, vec![2, -1, 0]);
    }

    #[test]
    fn example_map_tropical_values() {
        let m = tropicalize_map(&example_map());
        // (ξ2+ξ3−min(ξ1,ξ3), min(ξ1,ξ3), ξ1+ξ2−min(ξ1,ξ3)) at (0,0,1)
        assert_eq!(m.eval_int(&[0, 0, 1]).unwrap(), vec![q(1), q(0), q(0)]);
        for (x1, x2, x3) in [(3, -1, 2), (-4, 5, 0), (1, 1, 1)] {
            let mn = x1.min(x3);
            assert_eq!(
                m.eval_int(&[x1, x2, x3]).unwrap(),
                vec![q(x2 + x3 - mn), q(mn), q(x1 + x2 - mn)]
            );
        }
        let id = tropicalize_map(&[pr("x1", "1"), pr("x2", "1"), pr("x3", "1")]);
        assert!(id.equals_exact(&PLMap::identity(3)));
    }

    #[test]
    fn composition_and_equality() {
        let m = example_map();
        let sq = compose_maps(&m, &m).unwrap();
        let p = [q(2), qr(1, 3), q(5)];
        let once: Vec<Q> = m.iter().map(|f| f.eval(&p).unwrap()).collect();
        let twice: Vec<Q> = m.iter().map(|f| f.eval(&once).unwrap()).collect();
        let direct: Vec<Q> = sq.iter().map(|f| f.eval(&p).unwrap()).collect();
        assert_eq!(twice, direct);
        assert!(pr("x1^2 + x1*x3", "x1").equals(&pr("x1 + x3", "1")));
    }

    fn arb_pos() -> impl Strategy<Value = PosRational> {
        let term = (proptest::collection::vec(-2i64..3, 3), 1i64..4);
        (proptest::collection::vec(term.clone(), 1..4), proptest::collection::vec(term, 1..3)).prop_map(|(n, d)| {
            let v = ctx();
            PosRational::new(
                LaurentPoly::from_terms(&v, n.into_iter().map(|(e, c)| (e, q(c)))),
                LaurentPoly::from_terms(&v, d.into_iter().map(|(e, c)| (e, q(c)))),
            )
            .unwrap()
        })
    }

    proptest! {
        #[test]
        fn tropicalization_is_monoidal(f in arb_pos(), g in arb_pos(), x in proptest::collection::vec(-20i64..21, 3)) {
            let p: Vec<Q> = x.iter().map(|&v| q(v)).collect();
            let prod = f.mul(&g).unwrap().tropicalize().eval(&p).unwrap();
            prop_assert_eq!(prod, f.tropicalize().eval(&p).unwrap() + g.tropicalize().eval(&p).unwrap());
            let sum = f.add(&g).unwrap().tropicalize().eval(&p).unwrap();
            let a = f.tropicalize().eval(&p).unwrap();
            let b = g.tropicalize().eval(&p).unwrap();
            prop_assert_eq!(sum, a.min(b));
        }

    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn tropicalization_respects_composition(f in arb_pos(), g0 in arb_pos(), g1 in arb_pos(), g2 in arb_pos(),
                                                x in proptest::collection::vec(-20i64..21, 3)) {
            let g = vec![g0, g1, g2];
            let fg = f.compose(&g).unwrap();
            let p: Vec<Q> = x.iter().map(|&v| q(v)).collect();
            let inner: Vec<Q> = g.iter().map(|c| c.tropicalize().eval(&p).unwrap()).collect();
            prop_assert_eq!(fg.tropicalize().eval(&p).unwrap(), f.tropicalize().eval(&inner).unwrap());
        }

        /// Valuation oracle: substitute x_i = s^{ξ_i} and read off the lowest power of s.
        #[test]
        fn tropicalization_is_a_valuation(f in arb_pos(), x in proptest::collection::vec(-6i64..7, 3)) {
            let s = vars(&["s"]);
            let imgs: Vec<LaurentPoly> = x.iter().map(|&k| LaurentPoly::monomial(&s, vec![k], q(1))).collect();
            let n = f.num().substitute(&imgs, &s).unwrap();
            let d = f.den().substitute(&imgs, &s).unwrap();
            let val = n.lowest().unwrap().0[0] - d.lowest().unwrap().0[0];
            let p: Vec<Q> = x.iter().map(|&v| q(v)).collect();
            prop_assert_eq!(f.tropicalize().eval(&p).unwrap(), q(val));
        }
    }
}
