//! Fourier-Motzkin elimination over integer rows.
//!
//! A row `(a, b, strict)` encodes `a·x + b ≥ 0`, or `> 0` when strict.
//! Feasibility is over ℚ.

use crate::scalar::{IntScalar, Q};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use std::collections::HashSet;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ineq<T: IntScalar> {
    pub a: Vec<T>,
    pub b: T,
    pub strict: bool,
}

impl<T: IntScalar> Ineq<T> {
    pub fn new(a: Vec<T>, b: T, strict: bool) -> Self {
        Ineq { a, b, strict }.normalized()
    }

    fn normalized(mut self) -> Self {
        let g = self.a.iter().fold(self.b.abs(), |g, x| g.gcd(x));
        if !g.is_zero() && !g.is_one() {
            for x in self.a.iter_mut() {
                *x = x.clone() / g.clone();
            }
            self.b = self.b.clone() / g;
        }
        self
    }

    pub fn is_trivial(&self) -> bool {
        self.a.iter().all(|x| x.is_zero())
    }

    /// For a trivial row, whether it holds.
    pub fn trivially_holds(&self) -> bool {
        if self.strict {
            self.b.is_positive()
        } else {
            !self.b.is_negative()
        }
    }

    /// Exact evaluation of a·x + b at a rational point.
    pub fn value(&self, x: &[Q]) -> Q {
        let mut s = Q::from_integer(to_big(&self.b));
        for (c, v) in self.a.iter().zip(x) {
            if !c.is_zero() {
                s += Q::from_integer(to_big(c)) * v;
            }
        }
        s
    }

    pub fn holds(&self, x: &[Q]) -> bool {
        let v = self.value(x);
        if self.strict {
            v.is_positive()
        } else {
            !v.is_negative()
        }
    }
}

pub fn to_big<T: IntScalar>(x: &T) -> BigInt {
    match x.to_i128() {
        Some(v) => BigInt::from(v),
        None => x.to_string().parse().expect("integer literal"),
    }
}

#[derive(Clone, Debug)]
pub struct System<T: IntScalar> {
    pub dim: usize,
    pub rows: Vec<Ineq<T>>,
    infeasible: bool,
}

impl<T: IntScalar> System<T> {
    pub fn new(dim: usize) -> Self {
        System { dim, rows: vec![], infeasible: false }
    }

    pub fn from_rows(dim: usize, rows: impl IntoIterator<Item = Ineq<T>>) -> Self {
        let mut s = Self::new(dim);
        for r in rows {
            s.push(r);
        }
        s
    }

    pub fn push(&mut self, row: Ineq<T>) {
        assert_eq!(row.a.len(), self.dim, "row arity");
        let row = row.normalized();
        if row.is_trivial() {
            if !row.trivially_holds() {
                self.infeasible = true;
            }
            return;
        }
        self.rows.push(row);
    }

    pub fn contains(&self, x: &[Q]) -> bool {
        !self.infeasible && self.rows.iter().all(|r| r.holds(x))
    }

    fn dedup(&mut self) {
        let mut seen = HashSet::new();
        // a non-strict copy is implied by a strict one
        let strict: HashSet<(Vec<T>, T)> =
            self.rows.iter().filter(|r| r.strict).map(|r| (r.a.clone(), r.b.clone())).collect();
        self.rows.retain(|r| {
            if !r.strict && strict.contains(&(r.a.clone(), r.b.clone())) {
                return false;
            }
            seen.insert(r.clone())
        });
    }

    /// Eliminates variable `k`; the result no longer involves it.
    pub fn eliminate(&self, k: usize) -> Self {
        let mut out = Self::new(self.dim);
        out.infeasible = self.infeasible;
        let (mut pos, mut neg) = (vec![], vec![]);
        for r in &self.rows {
            if r.a[k].is_positive() {
                pos.push(r);
            } else if r.a[k].is_negative() {
                neg.push(r);
            } else {
                out.push(r.clone());
            }
        }
        for p in &pos {
            for n in &neg {
                let cp = p.a[k].clone();
                let cn = -n.a[k].clone();
                let a: Vec<T> = p
                    .a
                    .iter()
                    .zip(&n.a)
                    .map(|(x, y)| x.clone() * cn.clone() + y.clone() * cp.clone())
                    .collect();
                let b = p.b.clone() * cn.clone() + n.b.clone() * cp.clone();
                out.push(Ineq::new(a, b, p.strict || n.strict));
            }
        }
        out.dedup();
        out
    }

    fn best_var(&self, remaining: &[usize]) -> Option<usize> {
        remaining.iter().copied().min_by_key(|&k| {
            let p = self.rows.iter().filter(|r| r.a[k].is_positive()).count();
            let n = self.rows.iter().filter(|r| r.a[k].is_negative()).count();
            p * n
        })
    }

    /// Rational feasibility.
    pub fn is_feasible(&self) -> bool {
        let mut s = self.clone();
        s.dedup();
        let mut remaining: Vec<usize> = (0..self.dim).collect();
        while !remaining.is_empty() {
            if s.infeasible {
                return false;
            }
            let k = s.best_var(&remaining).unwrap();
            remaining.retain(|&x| x != k);
            s = s.eliminate(k);
        }
        !s.infeasible
    }

    /// Projection onto the first `k` coordinates.
    pub fn project_prefix(&self, k: usize) -> Self {
        let mut s = self.clone();
        s.dedup();
        for v in (k..self.dim).rev() {
            s = s.eliminate(v);
        }
        s
    }

    /// Bounds on coordinate `k` when the first `k` coordinates are fixed to
    /// `prefix`; rows involving later coordinates are ignored.
    pub fn bounds(&self, k: usize, prefix: &[Q]) -> Option<(Option<Q>, Option<Q>)> {
        let mut lo: Option<Q> = None;
        let mut hi: Option<Q> = None;
        for r in &self.rows {
            if r.a[k + 1..].iter().any(|x| !x.is_zero()) {
                continue;
            }
            let mut rest = Q::from_integer(to_big(&r.b));
            for (c, v) in r.a[..k].iter().zip(prefix) {
                if !c.is_zero() {
                    rest += Q::from_integer(to_big(c)) * v;
                }
            }
            let c = Q::from_integer(to_big(&r.a[k]));
            if c.is_zero() {
                let ok = if r.strict { rest.is_positive() } else { !rest.is_negative() };
                if !ok {
                    return None;
                }
            } else if c.is_positive() {
                let v = -rest / c;
                if lo.as_ref().is_none_or(|l| v > *l) {
                    lo = Some(v);
                }
            } else {
                let v = -rest / c;
                if hi.as_ref().is_none_or(|h| v < *h) {
                    hi = Some(v);
                }
            }
        }
        Some((lo, hi))
    }
}

/// Integer points of a bounded system, enumerated coordinate by coordinate
/// using the chain of projections.
pub fn integer_points<T: IntScalar>(sys: &System<T>) -> Option<Vec<Vec<i64>>> {
    let n = sys.dim;
    let projections: Vec<System<T>> = (1..=n).map(|k| sys.project_prefix(k)).collect();
    if !sys.is_feasible() {
        return Some(vec![]);
    }
    let mut out = vec![];
    let mut cur: Vec<Q> = vec![];
    fn rec<T: IntScalar>(
        projections: &[System<T>],
        cur: &mut Vec<Q>,
        out: &mut Vec<Vec<i64>>,
    ) -> Option<()> {
        let k = cur.len();
        if k == projections.len() {
            out.push(cur.iter().map(|x| x.to_integer().to_i64().unwrap()).collect());
            return Some(());
        }
        let Some((lo, hi)) = projections[k].bounds(k, cur) else {
            return Some(());
        };
        let lo = lo?.ceil().to_integer().to_i64()?;
        let hi = hi?.floor().to_integer().to_i64()?;
        for v in lo..=hi {
            cur.push(Q::from_integer(v.into()));
            if projections[k].contains_prefix(k + 1, cur) {
                rec(projections, cur, out)?;
            }
            cur.pop();
        }
        Some(())
    }
    rec(&projections, &mut cur, &mut out)?;
    Some(out)
}

/// Number of integer points of a bounded system; the last coordinate is
/// counted from its bounds instead of being enumerated.
pub fn integer_point_count<T: IntScalar>(sys: &System<T>) -> Option<u64> {
    let n = sys.dim;
    if !sys.is_feasible() {
        return Some(0);
    }
    if n == 0 {
        return Some(1);
    }
    let projections: Vec<System<T>> = (1..=n).map(|k| sys.project_prefix(k)).collect();
    fn rec<T: IntScalar>(projections: &[System<T>], cur: &mut Vec<Q>) -> Option<u64> {
        let k = cur.len();
        let Some((lo, hi)) = projections[k].bounds(k, cur) else {
            return Some(0);
        };
        let lo = lo?.ceil().to_integer().to_i64()?;
        let hi = hi?.floor().to_integer().to_i64()?;
        if k + 1 == projections.len() {
            return Some((hi - lo + 1).max(0) as u64);
        }
        let mut total = 0;
        for v in lo..=hi {
            cur.push(Q::from_integer(v.into()));
            if projections[k].contains_prefix(k + 1, cur) {
                total += rec(projections, cur)?;
            }
            cur.pop();
        }
        Some(total)
    }
    rec(&projections, &mut vec![])
}

impl<T: IntScalar> System<T> {
    /// Dimension of the solution set, n minus the rank of the implicit equalities.
    pub fn affine_dimension(&self) -> usize {
        if !self.is_feasible() {
            return 0;
        }
        let mut eq: Vec<Vec<Q>> = vec![];
        for r in &self.rows {
            let mut s = self.clone();
            s.push(Ineq { a: r.a.clone(), b: r.b.clone(), strict: true });
            if !s.is_feasible() {
                eq.push(r.a.iter().map(|c| Q::from_integer(to_big(c))).collect());
            }
        }
        self.dim - crate::linalg::rank(&eq)
    }

    fn contains_prefix(&self, k: usize, x: &[Q]) -> bool {
        self.rows
            .iter()
            .filter(|r| r.a[k..].iter().all(|c| c.is_zero()))
            .all(|r| {
                let mut s = Q::from_integer(to_big(&r.b));
                for (c, v) in r.a[..k].iter().zip(x) {
                    s += Q::from_integer(to_big(c)) * v;
                }
                if r.strict {
                    s.is_positive()
                } else {
                    !s.is_negative()
                }
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;
    use proptest::prelude::*;

    fn row(a: &[i64], b: i64, strict: bool) -> Ineq<i64> {
        Ineq::new(a.to_vec(), b, strict)
    }

    #[test]
    fn strict_infeasibility() {
        // x1 - x3 > 0 and x3 - x1 > 0
        let s = System::from_rows(2, [row(&[1, -1], 0, true), row(&[-1, 1], 0, true)]);
        assert!(!s.is_feasible());
        let s = System::from_rows(2, [row(&[1, -1], 0, false), row(&[-1, 1], 0, false)]);
        assert!(s.is_feasible());
    }

    #[test]
    fn triangle_points() {
        // x ≥ 0, y ≥ 0, 3 - x - y ≥ 0 has 10 integer points
        let s = System::from_rows(
            2,
            [row(&[1, 0], 0, false), row(&[0, 1], 0, false), row(&[-1, -1], 3, false)],
        );
        assert_eq!(integer_points(&s).unwrap().len(), 10);
        let wide: System<i128> = System::from_rows(
            2,
            [
                Ineq::new(vec![1, 0], 0, false),
                Ineq::new(vec![0, 1], 0, false),
                Ineq::new(vec![-1, -1], 3, false),
            ],
        );
        assert_eq!(integer_points(&wide).unwrap().len(), 10);
    }

    #[test]
    fn counting_matches_enumeration() {
        let s = System::from_rows(
            2,
            [row(&[1, 0], 0, false), row(&[0, 1], 0, false), row(&[-1, -1], 3, false)],
        );
        assert_eq!(integer_point_count(&s), Some(10));
        let empty = System::from_rows(1, [row(&[1], -1, false), row(&[-1], 0, false)]);
        assert_eq!(integer_point_count(&empty), Some(0));
    }

    #[test]
    fn dimension_of_faces() {
        // the segment x = y, 0 ≤ x ≤ 2
        let seg = System::from_rows(
            2,
            [row(&[1, -1], 0, false), row(&[-1, 1], 0, false), row(&[1, 0], 0, false), row(&[-1, 0], 2, false)],
        );
        assert_eq!(seg.affine_dimension(), 1);
        let pt = System::from_rows(1, [row(&[1], 0, false), row(&[-1], 0, false)]);
        assert_eq!(pt.affine_dimension(), 0);
        let tri = System::from_rows(
            2,
            [row(&[1, 0], 0, false), row(&[0, 1], 0, false), row(&[-1, -1], 3, false)],
        );
        assert_eq!(tri.affine_dimension(), 2);
    }

    #[test]
    fn unbounded_returns_none() {
        let s = System::from_rows(1, [row(&[1], 0, false)]);
        assert!(integer_points(&s).is_none());
    }

    #[test]
    fn projection_of_square() {
        let s = System::from_rows(
            2,
            [row(&[1, -1], 0, false), row(&[0, 1], 0, false), row(&[-1, 0], 4, false)],
        );
        let p = s.project_prefix(1);
        assert!(p.contains(&[q(0), q(0)]));
        assert!(p.contains(&[q(4), q(0)]));
        assert!(!p.contains(&[q(5), q(0)]));
    }

    proptest! {
        /// Brute-force oracle for integer points of random boxes cut by one extra row.
        #[test]
        fn enumeration_matches_brute_force(c in proptest::collection::vec(-3i64..4, 3), b in -4i64..8) {
            let mut rows = vec![];
            for k in 0..3 {
                let mut a = vec![0; 3];
                a[k] = 1;
                rows.push(row(&a, 2, false));
                a[k] = -1;
                rows.push(row(&a, 2, false));
            }
            rows.push(row(&c, b, false));
            let s = System::from_rows(3, rows);
            let mut got = integer_points(&s).unwrap();
            got.sort();
            let mut want = vec![];
            for x in -2..=2 { for y in -2..=2 { for z in -2..=2 {
                if c[0]*x + c[1]*y + c[2]*z + b >= 0 { want.push(vec![x, y, z]); }
            }}}
            prop_assert_eq!(got, want);
        }
    }
}
