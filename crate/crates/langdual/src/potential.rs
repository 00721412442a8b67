//! The BK potential on G^{w_0,e}, its cone of tropical nonnegativity, the
//! crystal operators on cone points and the comparison map ψ_𝐢 to the
//! Langlands dual cone.

use crate::error::{Error, Result};
use crate::groups::{chart_transition_to_cluster, generalized_minor, reduced_chart, DoubleWord, Group};
use crate::polyhedra::{integer_point_count, integer_points, Ineq, System};
use crate::rootdata::{RootDatum, WeylWord};
use crate::scalar::{q, to_i64, Q};
use crate::symbolic::laurent::vars;
use crate::symbolic::rational::trop_poly;
use crate::symbolic::{positivity_normalize, tropicalize_map, trop_canonicalize, Form, LaurentPoly, PLMap, Vars};
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

/// Φ_BK(hz) = Σ_i ( p_i(z) + h^{−w_0α_i} q_i(z) ) in the variables (h; t).
#[derive(Clone, Debug)]
pub struct BKPotential {
    pub datum: RootDatum,
    pub word: DoubleWord,
    pub vars: Vars,
    /// p_i = Δ_{w_0ω_i, s_iω_i}(z), sign-normalized.
    pub p: Vec<LaurentPoly>,
    /// q_i = Δ_{w_0 s_iω_i, ω_i}(z), sign-normalized.
    pub q: Vec<LaurentPoly>,
    /// Exponents of h in h^{−w_0α_i}, cocharacter-basis coordinates.
    pub q_weight: Vec<Vec<i64>>,
    /// Signs absorbed by normalization, (p_i, q_i).
    pub signs: Vec<(i8, i8)>,
    pub total: LaurentPoly,
}

impl BKPotential {
    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    /// h^{−w_0α_i} q_i as a Laurent polynomial in (h; t).
    pub fn weighted_q(&self, i: usize) -> LaurentPoly {
        let mut e = self.q_weight[i - 1].clone();
        e.resize(self.vars.len(), 0);
        self.q[i - 1].shift(&e)
    }

    /// Canonical tropical forms of Φ_BK, sorted.
    pub fn tropical_forms(&self) -> Vec<Form> {
        let mut forms = trop_canonicalize(&trop_poly(&self.total)).forms;
        forms.sort();
        forms
    }
}

/// w_0 must be spelled by the negative letters and v = e.
pub(crate) fn require_longest(datum: &RootDatum, w: &DoubleWord) -> Result<()> {
    if w.letters.iter().any(|&l| l > 0) || w.len() != datum.num_positive_roots() {
        return Err(Error::NotReduced(format!("{} is not a word for (w_0, e)", w.to_string_plain())));
    }
    datum.require_reduced(&w.u())
}

/// h^γ = ∏_j h_j^{⟨γ, b_j⟩} over the cocharacter basis.
fn character_exponents(datum: &RootDatum, gamma: &[Q]) -> Result<Vec<i64>> {
    datum
        .cochar_basis
        .iter()
        .map(|b| {
            let bq: Vec<Q> = b.iter().map(|&x| q(x)).collect();
            let v = datum.pair(gamma, &bq);
            to_i64(&v).ok_or_else(|| Error::LatticeError(format!("⟨{gamma:?}, b⟩ = {v}")))
        })
        .collect()
}

pub fn bk_potential(group: &Group, w: &DoubleWord) -> Result<BKPotential> {
    let datum = &group.datum;
    require_longest(datum, w)?;
    let z = reduced_chart(group, w)?;
    let vs = z.vars.clone();
    let w0 = datum.longest_word();
    let r = datum.rank();
    let (mut p, mut qs, mut weights, mut signs) = (vec![], vec![], vec![], vec![]);
    for i in 1..=r {
        let si = WeylWord::new(vec![i]);
        let mut w0si = w0.letters.clone();
        w0si.push(i);
        let w0si = reduce(datum, &w0si);
        let (sp, pi) = positivity_normalize(&generalized_minor(group, &w0, &si, i, &z)?)?;
        let (sq, qi) = positivity_normalize(&generalized_minor(group, &w0si, &WeylWord::empty(), i, &z)?)?;
        let neg: Vec<Q> = datum.act_weight(&w0, &datum.simple_root(i)).into_iter().map(|x| -x).collect();
        weights.push(character_exponents(datum, &neg)?);
        p.push(laurent(pi)?);
        qs.push(laurent(qi)?);
        signs.push((sp, sq));
    }
    let mut pot = BKPotential {
        datum: datum.clone(),
        word: w.clone(),
        vars: vs.clone(),
        p,
        q: qs,
        q_weight: weights,
        signs,
        total: LaurentPoly::zero(&vs),
    };
    let mut total = LaurentPoly::zero(&vs);
    for i in 1..=r {
        total = &(&total + &pot.p[i - 1]) + &pot.weighted_q(i);
    }
    pot.total = total;
    Ok(pot)
}

fn laurent(f: crate::symbolic::PosRational) -> Result<LaurentPoly> {
    f.as_laurent()
        .cloned()
        .ok_or_else(|| Error::NotSubtractionFree(format!("{f} is not a Laurent polynomial")))
}

/// A reduced word for the product s_{l_1}···s_{l_k}, found by cancelling
/// through the action on ρ.
fn reduce(datum: &RootDatum, letters: &[usize]) -> WeylWord {
    let target = datum.act_weight(&WeylWord::new(letters.to_vec()), &datum.rho());
    // walk down from target to ρ by simple reflections that raise it
    let mut mu = target;
    let mut out = vec![];
    let rho = datum.rho();
    while mu != rho {
        let i = (1..=datum.rank())
            .find(|&i| datum.pair(&mu, &datum.simple_coroot(i)).is_negative())
            .expect("a non-dominant weight has a negative coordinate");
        mu = datum.reflect_weight(i, &mu);
        out.push(i);
    }
    WeylWord::new(out)
}

/// Cone {Φ^t ≥ 0} in coordinates (cocharacter-basis h; ξ_1..ξ_n).
#[derive(Clone, Debug, Serialize)]
pub struct BKCone {
    #[serde(skip)]
    pub datum: RootDatum,
    #[serde(skip)]
    pub word: DoubleWord,
    pub coords: Vec<String>,
    /// Rows c with c·(x; ξ) ≥ 0, sorted lexicographically.
    pub inequalities: Vec<Vec<i64>>,
    #[serde(skip)]
    pub partial_sum: PartialSum,
}

pub fn bk_cone(pot: &BKPotential) -> BKCone {
    let inequalities = pot.tropical_forms().into_iter().map(|f| f.coeffs).collect();
    let r = pot.rank();
    let mut coords: Vec<String> = (1..=r).map(|j| format!("x{j}")).collect();
    coords.extend((1..=pot.word.len()).map(|k| format!("t{k}")));
    BKCone { datum: pot.datum.clone(), word: pot.word.clone(), coords, inequalities, partial_sum: PartialSum::default() }
}

/// Partial sums ranked by the crystal operators at positions l with i_l = i.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PartialSum {
    /// X_l = Σ_{k<l} a_{i_k,i} ξ_k + ξ_l.
    #[default]
    HalfDiagonal,
    /// X_l = Σ_{k≤l} a_{i_k,i} ξ_k, which breaks ẽ_i f̃_i = id on the B2 cone.
    Inclusive,
}

/// A lattice point (cocharacter-basis h; ξ).
pub type CrystalPoint = Vec<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CrystalOp {
    E,
    F,
}

/// wt, ε_i and φ_i of a cone point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrystalStats {
    /// ω^∨-coordinates.
    pub wt: Vec<Q>,
    pub epsilon: Vec<i64>,
    pub phi: Vec<i64>,
}

impl BKCone {
    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.inequalities
            .iter()
            .all(|row| row.iter().zip(x).map(|(a, b)| a * b).sum::<i64>() >= 0)
    }

    pub fn contains_q(&self, x: &[Q]) -> bool {
        self.inequalities.iter().all(|row| {
            let s: Q = row.iter().zip(x).map(|(a, b)| q(*a) * b).sum();
            !s.is_negative()
        })
    }

    fn require(&self, x: &[i64]) -> Result<()> {
        if x.len() != self.dim() {
            return Err(Error::ArityMismatch { expected: self.dim(), got: x.len() });
        }
        if !self.contains(x) {
            return Err(Error::NotInCone(format!("{x:?}")));
        }
        Ok(())
    }

    /// The H-component as an ω^∨-coordinate vector.
    pub fn h_coweight(&self, h: &[i64]) -> Vec<Q> {
        let r = self.rank();
        let mut out = vec![Q::zero(); r];
        for (c, b) in h.iter().zip(&self.datum.cochar_basis) {
            for (o, x) in out.iter_mut().zip(b) {
                *o += q(c * x);
            }
        }
        out
    }

    /// hw^t: projection to the H-factor, returned in cocharacter-basis coordinates.
    pub fn hw_trop(&self, x: &[i64]) -> Result<Vec<i64>> {
        self.require(x)?;
        let h = x[..self.rank()].to_vec();
        debug_assert!(self.h_coweight(&h).iter().all(|c| !c.is_negative()));
        Ok(h)
    }

    fn letter(&self, k: usize) -> usize {
        self.word.letters[k].unsigned_abs() as usize
    }

    /// (n_f, n_e): first and last positions of letter i minimizing the partial sum.
    /// Positions are 0-based.
    fn argmins(&self, x: &[i64], i: usize) -> Option<(usize, usize)> {
        let r = self.rank();
        let mut acc = 0i64;
        let mut best: Option<(i64, usize, usize)> = None;
        for k in 0..self.word.len() {
            let step = self.datum.a(self.letter(k), i) * x[r + k];
            if self.letter(k) != i {
                acc += step;
                continue;
            }
            let val = match self.partial_sum {
                PartialSum::Inclusive => acc + step,
                PartialSum::HalfDiagonal => acc + x[r + k],
            };
            acc += step;
            best = match best {
                None => Some((val, k, k)),
                Some((m, _, _)) if val < m => Some((val, k, k)),
                Some((m, f, _)) if val == m => Some((m, f, k)),
                b => b,
            };
        }
        best.map(|(_, f, e)| (f, e))
    }

    /// ẽ_i or f̃_i; None is the ghost element.
    pub fn crystal_apply(&self, op: CrystalOp, i: usize, x: &[i64]) -> Result<Option<CrystalPoint>> {
        self.require(x)?;
        if i == 0 || i > self.rank() {
            return Err(Error::Parse(format!("crystal index {i} out of range")));
        }
        let Some((nf, ne)) = self.argmins(x, i) else { return Ok(None) };
        let mut y = x.to_vec();
        let r = self.rank();
        match op {
            CrystalOp::F => y[r + nf] += 1,
            CrystalOp::E => y[r + ne] -= 1,
        }
        Ok(self.contains(&y).then_some(y))
    }

    /// wt = hw^t − Σ_k ξ_k α^∨_{i_k}, in ω^∨-coordinates.
    pub fn wt(&self, x: &[i64]) -> Result<Vec<Q>> {
        let h = self.hw_trop(x)?;
        let mut w = self.h_coweight(&h);
        let r = self.rank();
        for k in 0..self.word.len() {
            let c = self.datum.simple_coroot(self.letter(k));
            for (o, a) in w.iter_mut().zip(c) {
                *o -= a * q(x[r + k]);
            }
        }
        Ok(w)
    }

    fn string_length(&self, op: CrystalOp, i: usize, x: &[i64]) -> Result<i64> {
        let mut n = 0;
        let mut cur = x.to_vec();
        while let Some(y) = self.crystal_apply(op, i, &cur)? {
            cur = y;
            n += 1;
        }
        Ok(n)
    }

    pub fn crystal_stats(&self, x: &[i64]) -> Result<CrystalStats> {
        let r = self.rank();
        let mut epsilon = vec![];
        let mut phi = vec![];
        for i in 1..=r {
            epsilon.push(self.string_length(CrystalOp::E, i, x)?);
            phi.push(self.string_length(CrystalOp::F, i, x)?);
        }
        Ok(CrystalStats { wt: self.wt(x)?, epsilon, phi })
    }

    /// The fiber over λ^∨ as a system in ξ alone.
    pub fn fiber_system(&self, lambda: &[i64]) -> Result<System<i64>> {
        let r = self.rank();
        if lambda.len() != r {
            return Err(Error::ArityMismatch { expected: r, got: lambda.len() });
        }
        if self.h_coweight(lambda).iter().any(|c| c.is_negative()) {
            return Err(Error::NotDominant(format!("{lambda:?}")));
        }
        let rows = self.inequalities.iter().map(|row| {
            let b: i64 = row[..r].iter().zip(lambda).map(|(a, x)| a * x).sum();
            Ineq::new(row[r..].to_vec(), b, false)
        });
        Ok(System::from_rows(self.word.len(), rows))
    }

    /// All lattice points with hw^t = λ^∨ (cocharacter-basis coordinates).
    pub fn fiber_enumerate(&self, lambda: &[i64]) -> Result<Vec<CrystalPoint>> {
        let sys = self.fiber_system(lambda)?;
        let pts = integer_points(&sys).ok_or_else(|| Error::NotInCone("unbounded fiber".into()))?;
        Ok(pts
            .into_iter()
            .map(|xi| {
                let mut p = lambda.to_vec();
                p.extend(xi);
                p
            })
            .collect())
    }

    /// Number of lattice points over λ^∨, without materializing them.
    pub fn fiber_count(&self, lambda: &[i64]) -> Result<u64> {
        integer_point_count(&self.fiber_system(lambda)?).ok_or_else(|| Error::NotInCone("unbounded fiber".into()))
    }

    /// Dimension of the real fiber over λ^∨.
    pub fn fiber_dimension(&self, lambda: &[i64]) -> Result<usize> {
        Ok(self.fiber_system(lambda)?.affine_dimension())
    }

    /// The fiber as a DOT graph with f̃_i edges labelled by i.
    pub fn fiber_dot(&self, lambda: &[i64]) -> Result<String> {
        let pts = self.fiber_enumerate(lambda)?;
        let name = |p: &[i64]| format!("\"{}\"", p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","));
        let mut s = String::from("digraph crystal {\n");
        for p in &pts {
            s.push_str(&format!("  {};\n", name(p)));
        }
        for p in &pts {
            for i in 1..=self.rank() {
                if let Some(y) = self.crystal_apply(CrystalOp::F, i, p)? {
                    s.push_str(&format!("  {} -> {} [label=\"{i}\", colorscheme=set19, color={i}];\n", name(p), name(&y)));
                }
            }
        }
        s.push_str("}\n");
        Ok(s)
    }
}

/// ψ_𝐢(x; ξ) = (Ψ^H x; d_{i_1}ξ_1, …, d_{i_n}ξ_n) as an integer matrix.
pub fn comparison_matrix(datum: &RootDatum, w: &DoubleWord) -> Result<Vec<Vec<i64>>> {
    let r = datum.rank();
    let n = w.len();
    let mut m = vec![vec![0i64; r + n]; r + n];
    for (a, row) in datum.psi_matrix.iter().enumerate() {
        for (b, x) in row.iter().enumerate() {
            m[a][b] = to_i64(x).ok_or_else(|| Error::LatticeError("Ψ^H is not integral for this datum".into()))?;
        }
    }
    for (k, d) in w.word_symmetrizer(datum).into_iter().enumerate() {
        m[r + k][r + k] = d;
    }
    Ok(m)
}

pub fn comparison_map(datum: &RootDatum, w: &DoubleWord) -> Result<PLMap> {
    Ok(PLMap::linear(&comparison_matrix(datum, w)?))
}

fn apply(m: &[Vec<i64>], x: &[i64]) -> Vec<i64> {
    m.iter().map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum()).collect()
}

fn apply_q(m: &[Vec<i64>], x: &[Q]) -> Vec<Q> {
    m.iter().map(|row| row.iter().zip(x).map(|(a, b)| q(*a) * b).sum()).collect()
}

/// Result of one property check.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub check: String,
    pub samples: usize,
    pub counterexamples: Vec<String>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(check: &str) -> Self {
        Report { check: check.into(), samples: 0, counterexamples: vec![], notes: vec![] }
    }

    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

fn fmt_q(x: &[Q]) -> String {
    x.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

/// Membership equivalence x ∈ 𝒞^G(ℝ) ⟺ ψ(x) ∈ 𝒞^{G∨}(ℝ) on random rational points in
/// [0, bound]^{r+n}, and integrality of ψ on the integral points of small fibers.
pub fn verify_cone_comparison(
    cone: &BKCone,
    dual: &BKCone,
    psi: &[Vec<i64>],
    bound: i64,
    samples: usize,
    seed: u64,
) -> Result<Report> {
    verify_cone_comparison_in(cone, dual, psi, (0, bound), samples, seed)
}

/// [`verify_cone_comparison`] sampling from [lo, hi]^{r+n}.
pub fn verify_cone_comparison_in(
    cone: &BKCone,
    dual: &BKCone,
    psi: &[Vec<i64>],
    (lo, hi): (i64, i64),
    samples: usize,
    seed: u64,
) -> Result<Report> {
    let mut rep = Report::new("cone_comparison");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim = cone.dim();
    let points: Vec<Vec<Q>> = (0..samples)
        .map(|_| {
            (0..dim)
                .map(|_| {
                    let den = rng.gen_range(1..=4);
                    Q::new(rng.gen_range(lo * den..=hi * den).into(), den.into())
                })
                .collect()
        })
        .collect();
    let bad: Vec<String> = points
        .par_iter()
        .filter(|x| cone.contains_q(x) != dual.contains_q(&apply_q(psi, x)))
        .map(|x| fmt_q(x))
        .collect();
    let inside = points.iter().filter(|x| cone.contains_q(x)).count();
    rep.samples = samples;
    rep.counterexamples = bad;
    rep.notes.push(format!("{inside} of {samples} samples inside the cone"));
    // integral points of the fibers over small dominant λ^∨ map into the dual lattice cone
    let mut integral = 0;
    for lambda in small_dominant(cone, 2) {
        for x in cone.fiber_enumerate(&lambda)? {
            integral += 1;
            let y = apply(psi, &x);
            if !dual.contains(&y) {
                rep.counterexamples.push(format!("integral {x:?} -> {y:?}"));
            }
        }
    }
    rep.notes.push(format!("{integral} integral fiber points mapped"));
    Ok(rep)
}

/// Dominant λ^∨ in cocharacter-basis coordinates whose ω^∨-coordinates lie in [0, bound].
pub fn small_dominant(cone: &BKCone, bound: i64) -> Vec<Vec<i64>> {
    let r = cone.rank();
    let mut out = vec![];
    let mut cur = vec![0i64; r];
    // ω^∨ coordinates c, converted back to the cocharacter basis when integral
    loop {
        let cq: Vec<Q> = cur.iter().map(|&c| q(c)).collect();
        let coords = cone.datum.cochar_coords(&cq);
        if let Some(v) = coords.iter().map(to_i64).collect::<Option<Vec<_>>>() {
            out.push(v);
        }
        let mut k = 0;
        while k < r {
            cur[k] += 1;
            if cur[k] <= bound {
                break;
            }
            cur[k] = 0;
            k += 1;
        }
        if k == r {
            return out;
        }
    }
}

fn apply_op_n(cone: &BKCone, op: CrystalOp, i: usize, x: &[i64], n: i64) -> Result<Option<CrystalPoint>> {
    let mut cur = x.to_vec();
    for _ in 0..n {
        match cone.crystal_apply(op, i, &cur)? {
            Some(y) => cur = y,
            None => return Ok(None),
        }
    }
    Ok(Some(cur))
}

/// ψ∘ẽ_i = ẽ_i^{d_i}∘ψ and ψ∘f̃_i = f̃_i^{d_i}∘ψ on the fiber over λ^∨.
pub fn verify_crystal_scaling(cone: &BKCone, dual: &BKCone, psi: &[Vec<i64>], lambda: &[i64]) -> Result<Report> {
    let mut rep = Report::new("crystal_scaling");
    let fiber = cone.fiber_enumerate(lambda)?;
    let r = cone.rank();
    let bad: Vec<String> = fiber
        .par_iter()
        .map(|x| -> Result<Vec<String>> {
            let mut out = vec![];
            let px = apply(psi, x);
            for i in 1..=r {
                let d = cone.datum.d(i);
                for op in [CrystalOp::E, CrystalOp::F] {
                    let lhs = cone.crystal_apply(op, i, x)?.map(|y| apply(psi, &y));
                    let rhs = apply_op_n(dual, op, i, &px, d)?;
                    if lhs != rhs {
                        out.push(format!("{op:?}_{i} at {x:?}: {lhs:?} vs {rhs:?}"));
                    }
                }
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    rep.samples = fiber.len();
    rep.counterexamples = bad;
    Ok(rep)
}

/// Normal crystal axioms on a fiber: φ_i − ε_i = ⟨wt, α_i⟩, ẽ_i f̃_i = id and
/// wt(f̃_i x) = wt(x) − α_i^∨.
pub fn verify_crystal_axioms(cone: &BKCone, lambda: &[i64]) -> Result<Report> {
    let mut rep = Report::new("crystal_axioms");
    let fiber = cone.fiber_enumerate(lambda)?;
    let r = cone.rank();
    for x in &fiber {
        let st = cone.crystal_stats(x)?;
        for i in 1..=r {
            let pairing = cone.datum.pair(&cone.datum.simple_root(i), &st.wt);
            if q(st.phi[i - 1] - st.epsilon[i - 1]) != pairing {
                rep.counterexamples.push(format!("φ−ε at {x:?}, i={i}"));
            }
            if let Some(y) = cone.crystal_apply(CrystalOp::F, i, x)? {
                if cone.crystal_apply(CrystalOp::E, i, &y)?.as_deref() != Some(x.as_slice()) {
                    rep.counterexamples.push(format!("ẽf̃ at {x:?}, i={i}"));
                }
                let want: Vec<Q> =
                    st.wt.iter().zip(cone.datum.simple_coroot(i)).map(|(a, b)| a.clone() - b).collect();
                if cone.wt(&y)? != want {
                    rep.counterexamples.push(format!("wt(f̃x) at {x:?}, i={i}"));
                }
            }
        }
    }
    rep.samples = fiber.len();
    Ok(rep)
}

fn random_ints(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> Vec<i64> {
    (0..n).map(|_| rng.gen_range(-bound..=bound)).collect()
}

fn ints_q(x: &[i64]) -> Vec<Q> {
    x.iter().map(|&v| q(v)).collect()
}

/// Tropical comparison via x_𝐢 and via σ(𝐢) agree: T^∨ ∘ ψ_𝐢 = ψ_σ ∘ T, where T is
/// the tropicalized transition from factorization to cluster coordinates.
pub fn verify_chart_independence(
    group: &Group,
    dual: &Group,
    w: &DoubleWord,
    samples: usize,
    seed: u64,
) -> Result<Report> {
    let mut rep = Report::new("chart_independence");
    let t = tropicalize_map(&chart_transition_to_cluster(group, w)?);
    let tv = tropicalize_map(&chart_transition_to_cluster(dual, w)?);
    let psi_i = comparison_matrix(&group.datum, w)?;
    let r = group.rank();
    let ids = w.index_set();
    let mut psi_s = vec![vec![0i64; r + ids.len()]; r + ids.len()];
    for a in 0..r {
        for b in 0..r {
            psi_s[a][b] = psi_i[a][b];
        }
    }
    for (k, d) in w.symmetrizer(&group.datum).into_iter().enumerate() {
        psi_s[r + k][r + k] = d;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pts: Vec<Vec<i64>> = (0..samples).map(|_| random_ints(&mut rng, r + w.len(), 20)).collect();
    let bad = pts
        .par_iter()
        .map(|x| -> Result<Option<String>> {
            let lhs = tv.eval(&ints_q(&apply(&psi_i, x)))?;
            let rhs = apply_q(&psi_s, &t.eval(&ints_q(x))?);
            Ok((lhs != rhs).then(|| format!("{x:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    rep.samples = samples;
    rep.counterexamples = bad.into_iter().flatten().collect();
    Ok(rep)
}

/// (p_i^∨∘Ψ)^t = d_i p_i^t and (h^{−w_0α_i^∨} q_i^∨ ∘ Ψ)^t = d_i (h^{−w_0α_i} q_i)^t.
pub fn verify_scaling_identities(pot: &BKPotential, dual: &BKPotential, samples: usize, seed: u64) -> Result<Report> {
    let mut rep = Report::new("scaling_identities");
    let psi = comparison_matrix(&pot.datum, &pot.word)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = pot.vars.len();
    let mut pairs = vec![];
    for i in 1..=pot.rank() {
        let d = pot.datum.d(i);
        pairs.push((format!("p{i}"), trop_poly(&pot.p[i - 1]), trop_poly(&dual.p[i - 1]), d));
        pairs.push((format!("q{i}"), trop_poly(&pot.weighted_q(i)), trop_poly(&dual.weighted_q(i)), d));
    }
    for _ in 0..samples {
        let x = random_ints(&mut rng, n, 20);
        let px = ints_q(&apply(&psi, &x));
        let xq = ints_q(&x);
        for (name, f, fv, d) in &pairs {
            if fv.eval(&px)? != f.eval(&xq)? * q(*d) {
                rep.counterexamples.push(format!("{name} at {x:?}"));
            }
        }
    }
    rep.samples = samples;
    Ok(rep)
}

/// Fiber sizes on both sides; ψ injects but need not be onto lattice points.
pub fn fiber_image_index(cone: &BKCone, dual: &BKCone, psi: &[Vec<i64>], lambda: &[i64]) -> Result<(usize, usize)> {
    let a = cone.fiber_enumerate(lambda)?.len();
    let r = cone.rank();
    let plambda: Vec<i64> = apply(psi, &[lambda.to_vec(), vec![0; cone.word.len()]].concat())[..r].to_vec();
    let b = dual.fiber_enumerate(&plambda)?.len();
    Ok((a, b))
}

/// Text rendering of a cone row as `form ≥ 0`.
pub fn format_inequality(cone: &BKCone, row: &[i64]) -> String {
    let f = Form::linear(row.to_vec());
    format!("{} >= 0", crate::symbolic::trop::format_form(&f, &cone.coords))
}

/// Variables of a cone as a symbolic context.
pub fn cone_vars(cone: &BKCone) -> Vars {
    vars(&cone.coords)
}
