//! The constant Poisson bracket on the partial tropicalization PT(K*) in the
//! cluster chart σ(𝐢): the bracket matrix and its D·B′ factorization,
//! symplectic leaves, Bohr–Sommerfeld lattices, volume identities and the
//! quantizability criterion for decorated tropical Poisson varieties.

use crate::error::{Error, Result};
use crate::groups::{cluster_minors, DoubleWord, Group};
use crate::linalg::{self, Mat};
use crate::polyhedra::{integer_points, Ineq, System};
use crate::potential::{bk_cone, bk_potential, require_longest, BKCone, Report};
use crate::rootdata::{to_q, RootDatum, WeylWord};
use crate::scalar::{q, to_i64, Q};
use crate::symbolic::TropRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;

/// λ-coordinate labels −r, …, −1, 1, …, m.
pub fn coordinate_labels(w: &DoubleWord) -> Vec<i64> {
    let mut out: Vec<i64> = (1..=w.rank as i64).rev().map(|k| -k).collect();
    out.extend(1..=w.len() as i64);
    out
}

fn root_index(w: &DoubleWord, k: i64) -> usize {
    w.letter(k).unsigned_abs() as usize
}

/// u_k ω_{i_k}, with u_k = e and ω_{i_k} = ω_{|k|} for k < 0.
fn moved_weight(datum: &RootDatum, w: &DoubleWord, k: i64) -> Vec<Q> {
    let om = datum.fundamental_weight(root_index(w, k));
    let u = if k < 0 { WeylWord::empty() } else { w.u_k(k as usize) };
    datum.act_weight(&u, &om)
}

/// {λ_k, φ_p}: zero for k ≥ p, else (ω_{i_k}, ω_{i_p}) − (u_kω_{i_k}, u_pω_{i_p}).
pub fn bracket(datum: &RootDatum, w: &DoubleWord, k: i64, p: i64) -> Q {
    if k >= p {
        return Q::zero();
    }
    let (ok, op) = (datum.fundamental_weight(root_index(w, k)), datum.fundamental_weight(root_index(w, p)));
    datum.form_hstar(&ok, &op) - datum.form_hstar(&moved_weight(datum, w, k), &moved_weight(datum, w, p))
}

/// Constant bracket of PT(K*) in the chart σ(𝐢).
#[derive(Clone, Debug)]
pub struct PTSkeleton {
    pub datum: RootDatum,
    pub word: DoubleWord,
    pub labels: Vec<i64>,
    /// {λ_k, φ_p}, rows in label order, columns p = 1..m.
    pub bracket_table: Vec<Vec<Q>>,
    /// Row labels of B, k ∈ [−r, −1] ∪ 𝐞(𝐢) ordered by k⁺.
    pub rows: Vec<i64>,
    /// B = [{λ_k, φ_{s⁺}}].
    pub b: Mat<Q>,
    /// Diagonal of D.
    pub d: Vec<Q>,
    pub b_prime: Vec<Vec<i64>>,
    /// Labels whose bracket row vanishes.
    pub casimirs: Vec<i64>,
}

pub fn build_skeleton(datum: &RootDatum, w: &DoubleWord) -> Result<PTSkeleton> {
    require_longest(datum, w)?;
    let m = w.len() as i64;
    let labels = coordinate_labels(w);
    let bracket_table: Vec<Vec<Q>> =
        labels.iter().map(|&k| (1..=m).map(|p| bracket(datum, w, k, p)).collect()).collect();
    let mut rows = w.index_set();
    rows.sort_by_key(|&k| w.plus(k));
    let b: Mat<Q> = rows.iter().map(|&k| (1..=m).map(|p| bracket(datum, w, k, p)).collect()).collect();
    let violation = |msg: String| Error::TheoremSymViolation(format!("{}: {msg}", w.to_string_plain()));
    let mut d = vec![];
    let mut b_prime = vec![];
    for (j, &k) in rows.iter().enumerate() {
        if w.plus(k) != j as i64 + 1 {
            return Err(violation(format!("row {k} has k+ = {}", w.plus(k))));
        }
        let dj = Q::one() / q(datum.d(root_index(w, j as i64 + 1)));
        let row = b[j]
            .iter()
            .map(|x| to_i64(&(x.clone() / dj.clone())))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| violation(format!("row {k} is not an integer multiple of {dj}")))?;
        if row[j] != 1 || row[..j].iter().any(|&x| x != 0) || row.iter().any(|&x| x < 0) {
            return Err(violation(format!("row {k} of B' is {row:?}")));
        }
        d.push(dj);
        b_prime.push(row);
    }
    let casimirs = labels
        .iter()
        .zip(&bracket_table)
        .filter(|(_, row)| row.iter().all(Q::is_zero))
        .map(|(&k, _)| k)
        .collect();
    Ok(PTSkeleton { datum: datum.clone(), word: w.clone(), labels, bracket_table, rows, b, d, b_prime, casimirs })
}

impl PTSkeleton {
    pub fn det_b(&self) -> Q {
        linalg::det(&self.b)
    }

    /// Positions of the B rows among the labels.
    pub fn leaf_positions(&self) -> Vec<usize> {
        self.rows.iter().map(|k| self.labels.iter().position(|l| l == k).unwrap()).collect()
    }

    /// z with B·z = v, when integral.
    fn lattice_coefficients(&self, v: &[Q]) -> Option<Vec<Q>> {
        let inv = linalg::inverse(&self.b)?;
        let z = linalg::mul_vec(&inv, v);
        z.iter().all(|c| c.is_integer()).then_some(z)
    }
}

/// One linear piece of the tropical chart transition.
#[derive(Clone, Debug)]
struct Chamber {
    pick: Vec<(usize, usize)>,
    inverse: Mat<Q>,
}

/// The tropicalized transition (h; t) ↦ (Δ_k(hz)^t)_k from x_𝐢 to σ(𝐢).
#[derive(Clone, Debug)]
pub struct SigmaChart {
    pub cone: BKCone,
    pub labels: Vec<i64>,
    /// Δ_k(hz) = h^{u_kω_{i_k}} Δ_k(z): the h-exponent per label.
    pub shift: Vec<Vec<Q>>,
    /// Δ_k(z)^t per label, over (h; t).
    pub minors: Vec<TropRational>,
    chambers: Vec<Chamber>,
}

impl SigmaChart {
    pub fn new(group: &Group, w: &DoubleWord) -> Result<Self> {
        let datum = &group.datum;
        let cone = bk_cone(&bk_potential(group, w)?);
        let labels = coordinate_labels(w);
        let mut minors_by_label = cluster_minors(group, w)?;
        let mut minors = vec![];
        let mut shift = vec![];
        for &k in &labels {
            let m = minors_by_label.remove(&k).expect("minor for every label");
            minors.push(m.value.tropicalize().canonical());
            let mu = moved_weight(datum, w, k);
            shift.push(datum.cochar_basis.iter().map(|b| datum.pair(&mu, &to_q(b))).collect());
        }
        let mut chart = SigmaChart { cone, labels, shift, minors, chambers: vec![] };
        chart.chambers = chart.linear_pieces();
        Ok(chart)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    fn linear_pieces(&self) -> Vec<Chamber> {
        let n = self.dim();
        let r = self.cone.rank();
        let sizes: Vec<(usize, usize)> =
            self.minors.iter().map(|t| (t.num.forms.len(), t.den.forms.len())).collect();
        let total: usize = sizes.iter().map(|(a, b)| a * b).product();
        let mut out = vec![];
        for code in 0..total {
            let mut c = code;
            let mut pick = vec![];
            for (a, b) in &sizes {
                pick.push(((c % (a * b)) / b, c % b));
                c /= a * b;
            }
            let mat: Mat<Q> = (0..n)
                .map(|k| {
                    let f = self.minors[k].num.forms[pick[k].0].sub(&self.minors[k].den.forms[pick[k].1]);
                    (0..n)
                        .map(|j| {
                            let s = if j < r { self.shift[k][j].clone() } else { Q::zero() };
                            s + q(f.coeffs[j])
                        })
                        .collect()
                })
                .collect();
            if let Some(inverse) = linalg::inverse(&mat) {
                out.push(Chamber { pick, inverse });
            }
        }
        out
    }

    pub fn eval(&self, x: &[Q]) -> Result<Vec<Q>> {
        if x.len() != self.dim() {
            return Err(Error::ArityMismatch { expected: self.dim(), got: x.len() });
        }
        let r = self.cone.rank();
        self.minors
            .iter()
            .zip(&self.shift)
            .map(|(t, s)| Ok(linalg::dot(s, &x[..r]) + t.eval(x)?))
            .collect()
    }

    pub fn eval_int(&self, x: &[i64]) -> Result<Vec<Q>> {
        self.eval(&to_q(x))
    }

    /// The unique x with T(x) = y, found on the linear piece containing it.
    pub fn inverse(&self, y: &[Q]) -> Option<Vec<Q>> {
        self.chambers.iter().find_map(|c| {
            let x = linalg::mul_vec(&c.inverse, y);
            let on_piece = self.minors.iter().zip(&c.pick).all(|(t, &(a, b))| {
                t.num.forms[a].eval(&x) == t.num.eval(&x).unwrap() && t.den.forms[b].eval(&x) == t.den.eval(&x).unwrap()
            });
            on_piece.then_some(x)
        })
    }

    /// Membership of a real point in the σ(𝐢) cone.
    pub fn contains(&self, y: &[Q]) -> bool {
        self.inverse(y).is_some_and(|x| self.cone.contains_q(&x))
    }
}

/// ψ_{σ(𝐢)} = diag(d_{|i_k|}) on the λ-coordinates.
pub fn sigma_psi(datum: &RootDatum, w: &DoubleWord) -> Vec<i64> {
    coordinate_labels(w).iter().map(|&k| datum.d(root_index(w, k))).collect()
}

/// T^∨∘ψ_𝐢 = ψ_{σ(𝐢)}∘T on the given x_𝐢 points.
pub fn verify_sigma_comparison(chart: &SigmaChart, dual: &SigmaChart, points: &[Vec<i64>]) -> Result<Report> {
    let mut rep = Report::new("sigma_comparison");
    let datum = &chart.cone.datum;
    let w = &chart.cone.word;
    let psi_x = crate::potential::comparison_matrix(datum, w)?;
    let psi_s = sigma_psi(datum, w);
    for x in points {
        let px: Vec<i64> = psi_x.iter().map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum()).collect();
        let lhs = dual.eval_int(&px)?;
        let rhs: Vec<Q> = chart.eval_int(x)?.into_iter().zip(&psi_s).map(|(v, d)| v * q(*d)).collect();
        if lhs != rhs {
            rep.counterexamples.push(format!("{x:?}"));
        }
    }
    rep.samples = points.len();
    Ok(rep)
}

/// A symplectic leaf hw^{−t}(λ^∨) × (S¹)^m.
#[derive(Clone, Debug)]
pub struct Leaf {
    /// λ^∨ in cocharacter-basis coordinates.
    pub label: Vec<i64>,
    /// Values of the Casimir coordinates on the leaf.
    pub casimirs: Vec<(i64, Q)>,
    /// Free λ-coordinates, paired with the angles.
    pub free: Vec<i64>,
    pub dimension: usize,
}

pub fn leaves(skel: &PTSkeleton, chart: &SigmaChart, lambda: &[i64]) -> Result<Leaf> {
    let fiber_dim = chart.cone.fiber_dimension(lambda)?;
    let mut x = lambda.to_vec();
    x.resize(chart.dim(), 0);
    let y = chart.eval_int(&x)?;
    let casimirs = skel
        .labels
        .iter()
        .zip(y)
        .filter(|(k, _)| skel.casimirs.contains(k))
        .map(|(&k, v)| (k, v))
        .collect();
    Ok(Leaf { label: lambda.to_vec(), casimirs, free: skel.rows.clone(), dimension: 2 * fiber_dim })
}

/// Λ̃ = (ξ_λ + B·ℤ^m) ∩ 𝒞(ℝ) over one leaf, cut by a box.
#[derive(Clone, Debug)]
pub struct BSLattice {
    /// λ^∨ in cocharacter-basis coordinates.
    pub label: Vec<i64>,
    /// ξ_λ in σ(𝐢) coordinates.
    pub base: Vec<Q>,
    pub points: Vec<Vec<Q>>,
}

/// λ^∨ = ψ^{-1}(λ) for a weight λ in character-basis coordinates.
pub fn psi_preimage(datum: &RootDatum, cone: &BKCone, lambda: &[i64]) -> Result<Vec<i64>> {
    let inv = linalg::inverse(&datum.psi_matrix).ok_or_else(|| Error::LatticeError("Ψ^H is singular".into()))?;
    let pre = linalg::mul_vec(&inv, &to_q(lambda));
    let v = pre
        .iter()
        .map(to_i64)
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::NotQuantizable(format!("{lambda:?} is not ψ of a cocharacter")))?;
    if cone.h_coweight(&v).iter().any(|c| c.is_negative()) {
        return Err(Error::NotQuantizable(format!("{lambda:?} is ψ of a non-dominant coweight")));
    }
    Ok(v)
}

/// Λ̃ over λ^∨ = ψ^{-1}(λ) inside |y_k| ≤ box.
///
/// With L = lcm(d_i), every point of ξ_λ + B·ℤ^m lies in ξ_λ + L^{-1}ℤ^m, and by
/// homogeneity y is in the cone exactly when L·y is a lattice point of the
/// fiber over Lλ^∨, so candidates come from that fiber in the x_𝐢 chart.
pub fn bs_lattice(skel: &PTSkeleton, chart: &SigmaChart, lambda: &[i64], box_radius: i64) -> Result<BSLattice> {
    let label = psi_preimage(&skel.datum, &chart.cone, lambda)?;
    let l = skel.datum.lcm_d();
    let mut x0 = label.clone();
    x0.resize(chart.dim(), 0);
    let base = chart.eval_int(&x0)?;
    let pos = skel.leaf_positions();
    let scaled: Vec<i64> = label.iter().map(|c| c * l).collect();
    let bound = q(box_radius);
    let mut points = vec![];
    for p in chart.cone.fiber_enumerate(&scaled)? {
        let y: Vec<Q> = chart.eval_int(&p)?.into_iter().map(|v| v / q(l)).collect();
        if y.iter().any(|v| v.abs() > bound) {
            continue;
        }
        let v: Vec<Q> = pos.iter().map(|&j| y[j].clone() - base[j].clone()).collect();
        if skel.lattice_coefficients(&v).is_some() {
            points.push(y);
        }
    }
    points.sort();
    Ok(BSLattice { label, base, points })
}

/// ψ_σ(Λ̃ ∩ box) against the lattice points of the dual fiber over λ inside ψ_σ(box).
pub fn verify_bs_duality(
    skel: &PTSkeleton,
    chart: &SigmaChart,
    dual: &SigmaChart,
    lambda: &[i64],
    box_radius: i64,
) -> Result<Report> {
    let mut rep = Report::new("bs_duality");
    let lat = bs_lattice(skel, chart, lambda, box_radius)?;
    let psi = sigma_psi(&skel.datum, &skel.word);
    let lhs: BTreeSet<Vec<Q>> = lat
        .points
        .iter()
        .map(|y| y.iter().zip(&psi).map(|(v, d)| v.clone() * q(*d)).collect())
        .collect();
    let mut rhs = BTreeSet::new();
    for p in dual.cone.fiber_enumerate(lambda)? {
        let y = dual.eval_int(&p)?;
        if y.iter().zip(&psi).all(|(v, d)| v.abs() <= q(box_radius * d)) {
            rhs.insert(y);
        }
    }
    let show = |v: &Vec<Q>| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
    for v in lhs.difference(&rhs) {
        rep.counterexamples.push(format!("psi image {} not in dual fiber", show(v)));
    }
    for v in rhs.difference(&lhs) {
        rep.counterexamples.push(format!("dual point {} not hit", show(v)));
    }
    rep.samples = lhs.len();
    rep.notes.push(format!("lambda={lambda:?} lattice={} dual={}", lhs.len(), rhs.len()));
    Ok(rep)
}

/// One row of the volume table.
#[derive(Clone, Debug)]
pub struct VolumeRow {
    pub n: i64,
    /// Bohr–Sommerfeld points over Nλ^∨.
    pub count: u64,
    /// N^m ∏_{α>0} (λ, α)/(ρ, α) with λ = ψ(λ^∨).
    pub weyl_product: Q,
    pub ratio: Q,
}

/// ∏_{α>0} (λ, α)/(ρ, α) for λ in ω-coordinates.
pub fn weyl_product(datum: &RootDatum, lambda: &[Q]) -> Q {
    let rho = datum.rho();
    datum.positive_roots().iter().fold(Q::one(), |acc, b| {
        let beta = to_q(&b.omega);
        acc * datum.form_hstar(lambda, &beta) / datum.form_hstar(&rho, &beta)
    })
}

/// Lattice counts of the leaves over Nλ^∨ for N = 1..=n_max against the leading
/// Weyl term. The Bohr–Sommerfeld points are counted on the dual cone, to
/// which ψ_σ carries them bijectively (see [`verify_bs_duality`]).
pub fn volume(skel: &PTSkeleton, cone: &BKCone, dual: &BKCone, lambda: &[i64], n_max: i64) -> Result<Vec<VolumeRow>> {
    let datum = &skel.datum;
    let cw = cone.h_coweight(lambda);
    if cw.iter().any(|c| !c.is_positive()) {
        return Err(Error::NotRegular(format!("{lambda:?}")));
    }
    let lam = datum.psi(&cw);
    let m = skel.word.len() as u32;
    let image: Vec<Q> = linalg::mul_vec(&datum.psi_matrix, &to_q(lambda));
    let image: Vec<i64> = image.iter().map(|v| to_i64(v).expect("Ψ^H is integral")).collect();
    let base = weyl_product(datum, &lam);
    (1..=n_max)
        .map(|n| {
            let target: Vec<i64> = image.iter().map(|v| v * n).collect();
            let count = dual.fiber_count(&target)?;
            let weyl_product = base.clone() * q(n).pow(m as i32);
            let ratio = Q::from_integer(count.into()) / weyl_product.clone();
            Ok(VolumeRow { n, count, weyl_product, ratio })
        })
        .collect()
}

/// dim V_{λ−ρ} = (∏_{α>0} d_α) · dim V^∨_{λ^∨−ρ^∨} with λ = ψ(λ^∨); λ^∨ in ω^∨-coordinates.
pub fn corollary_vol_check(datum: &RootDatum, lambdas: &[Vec<Q>]) -> Result<Report> {
    let mut rep = Report::new("corollary_vol");
    let dual = datum.langlands_dual();
    let factor = q(datum.prod_d_alpha());
    let rho = datum.rho();
    for lv in lambdas {
        let lam = datum.psi(lv);
        let shifted: Vec<Q> = lam.iter().zip(&rho).map(|(a, b)| a.clone() - b.clone()).collect();
        let shifted_v: Vec<Q> = lv.iter().map(|a| a.clone() - Q::one()).collect();
        let lhs = datum.weyl_dim(&shifted)?;
        let rhs = factor.clone() * dual.weyl_dim(&shifted_v)?;
        rep.notes.push(format!("{}: {lhs} vs {factor}*{}", fmt(lv), dual.weyl_dim(&shifted_v)?));
        if lhs != rhs {
            rep.counterexamples.push(format!("{}: {lhs} != {rhs}", fmt(lv)));
        }
    }
    rep.samples = lambdas.len();
    Ok(rep)
}

fn fmt(v: &[Q]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// A decorated tropical Poisson variety with constant bivector.
pub trait TropPoissonVariety {
    /// Lattice points X^t ∩ 𝒞_λ of the fiber over λ ∈ P.
    fn fiber_points(&self, lambda: &[i64]) -> Result<Vec<Vec<Q>>>;
    /// Coordinates of λ on the fundamental generators of the dominant cone.
    fn fundamental_coords(&self, lambda: &[i64]) -> Vec<Q>;
    /// Positions of the leaf coordinates.
    fn leaf_positions(&self) -> Vec<usize>;
    /// The bracket matrix B on the leaf coordinates against the angles.
    fn bivector(&self) -> Mat<Q>;
}

/// PT(K*) in the chart σ(𝐢), graded by hw^t.
pub struct PTVariety<'a> {
    pub skeleton: &'a PTSkeleton,
    pub chart: &'a SigmaChart,
}

impl TropPoissonVariety for PTVariety<'_> {
    fn fiber_points(&self, lambda: &[i64]) -> Result<Vec<Vec<Q>>> {
        self.chart.cone.fiber_enumerate(lambda)?.iter().map(|p| self.chart.eval_int(p)).collect()
    }

    fn fundamental_coords(&self, lambda: &[i64]) -> Vec<Q> {
        self.chart.cone.h_coweight(lambda)
    }

    fn leaf_positions(&self) -> Vec<usize> {
        self.skeleton.leaf_positions()
    }

    fn bivector(&self) -> Mat<Q> {
        self.skeleton.b.clone()
    }
}

/// A polyhedral cone {c·x ≥ 0} ⊂ ℝⁿ with linear hw and a given constant bracket.
#[derive(Clone, Debug)]
pub struct PolyhedralPoisson {
    pub dim: usize,
    pub cone: Vec<Vec<i64>>,
    pub hw: Vec<Vec<i64>>,
    pub leaf: Vec<usize>,
    pub bivector: Mat<Q>,
}

impl TropPoissonVariety for PolyhedralPoisson {
    fn fiber_points(&self, lambda: &[i64]) -> Result<Vec<Vec<Q>>> {
        let mut rows: Vec<Ineq<i64>> = self.cone.iter().map(|c| Ineq::new(c.clone(), 0, false)).collect();
        for (h, &l) in self.hw.iter().zip(lambda) {
            rows.push(Ineq::new(h.clone(), -l, false));
            rows.push(Ineq::new(h.iter().map(|c| -c).collect(), l, false));
        }
        let pts = integer_points(&System::from_rows(self.dim, rows))
            .ok_or_else(|| Error::InconclusiveWitness("unbounded fiber".into()))?;
        Ok(pts.iter().map(|p| to_q(p)).collect())
    }

    fn fundamental_coords(&self, lambda: &[i64]) -> Vec<Q> {
        to_q(lambda)
    }

    fn leaf_positions(&self) -> Vec<usize> {
        self.leaf.clone()
    }

    fn bivector(&self) -> Mat<Q> {
        self.bivector.clone()
    }
}

/// Fiber 0 ≤ u_1, u_2 ≤ c over c with B = [[1/2, 1/3], [0, 1]]: the entry 1/3
/// is not a multiple of 1/d = 1/2, so ℤ² ⊄ B·ℤ².
pub fn synthetic_counterexample() -> PolyhedralPoisson {
    PolyhedralPoisson {
        dim: 3,
        cone: vec![vec![0, 1, 0], vec![1, -1, 0], vec![0, 0, 1], vec![1, 0, -1]],
        hw: vec![vec![1, 0, 0]],
        leaf: vec![1, 2],
        bivector: vec![vec![Q::new(1.into(), 2.into()), Q::new(1.into(), 3.into())], vec![Q::zero(), Q::one()]],
    }
}

/// X^t ∩ 𝒞_λ ⊂ Λ_x on a witness fiber whose fundamental coordinates are all ≥ bound.
pub fn quantizability_check(v: &dyn TropPoissonVariety, lambda: &[i64], bound: i64) -> Result<bool> {
    if v.fundamental_coords(lambda).iter().any(|c| *c < q(bound)) {
        return Err(Error::InconclusiveWitness(format!("{lambda:?} has a coordinate below {bound}")));
    }
    let pts = v.fiber_points(lambda)?;
    let Some(base) = pts.first() else {
        return Err(Error::InconclusiveWitness(format!("empty fiber over {lambda:?}")));
    };
    let leaf = v.leaf_positions();
    let inv = linalg::inverse(&v.bivector()).ok_or_else(|| Error::InconclusiveWitness("degenerate bivector".into()))?;
    for y in &pts {
        let fixed = (0..y.len()).filter(|j| !leaf.contains(j)).all(|j| y[j] == base[j]);
        let d: Vec<Q> = leaf.iter().map(|&j| y[j].clone() - base[j].clone()).collect();
        if !fixed || !linalg::mul_vec(&inv, &d).iter().all(|c| c.is_integer()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Skeleton and σ-charts for a group and its dual on one word.
pub fn pt_setup(group: &Group, w: &DoubleWord) -> Result<(PTSkeleton, SigmaChart, SigmaChart)> {
    let skel = build_skeleton(&group.datum, w)?;
    let chart = SigmaChart::new(group, w)?;
    let dual = SigmaChart::new(&group.langlands_dual()?, w)?;
    Ok((skel, chart, dual))
}

#[cfg(test)]
mod tests;
