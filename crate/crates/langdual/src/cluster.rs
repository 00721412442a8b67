//! Seeds, mutation of matrices and charts, dual seeds and the comparison maps Ψ_σ.

use crate::error::{Error, Result};
use crate::scalar::{q, Q};
use crate::symbolic::{tropicalize_map, vars, LaurentPoly, PLMap, PosRational, Vars};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, VecDeque};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Seed {
    pub index_set: Vec<i64>,
    pub exchangeable: Vec<i64>,
    /// Row-major, indexed by positions in `index_set`.
    pub matrix: Vec<Vec<i64>>,
    pub skew_symmetrizer: Vec<i64>,
    pub d: i64,
}

/// μ_k on an arbitrary integer matrix (k is a position).
pub fn mutate_matrix(m: &[Vec<i64>], k: usize) -> Vec<Vec<i64>> {
    let n = m.len();
    let mut out = m.to_vec();
    for i in 0..n {
        for j in 0..n {
            out[i][j] = if i == k || j == k {
                -m[i][j]
            } else {
                // |M_ik| M_kj + M_ik |M_kj| is always even
                m[i][j] + (m[i][k].abs() * m[k][j] + m[i][k] * m[k][j].abs()) / 2
            };
        }
    }
    out
}

impl Seed {
    pub fn new(
        index_set: Vec<i64>,
        exchangeable: Vec<i64>,
        matrix: Vec<Vec<i64>>,
        skew_symmetrizer: Vec<i64>,
        d: i64,
    ) -> Result<Self> {
        let n = index_set.len();
        if matrix.len() != n || matrix.iter().any(|r| r.len() != n) || skew_symmetrizer.len() != n {
            return Err(Error::ArityMismatch { expected: n, got: matrix.len() });
        }
        if let Some(k) = exchangeable.iter().find(|k| !index_set.contains(k)) {
            return Err(Error::NotExchangeable(*k));
        }
        let s = Seed { index_set, exchangeable, matrix, skew_symmetrizer, d };
        if !s.is_skew_symmetrized() {
            return Err(Error::SymmetrizerMismatch("M_ij d_j != -M_ji d_i".into()));
        }
        if s.skew_symmetrizer.iter().any(|&x| x <= 0 || d % x != 0) {
            return Err(Error::SymmetrizerMismatch("d_i must be positive divisors of d".into()));
        }
        Ok(s)
    }

    /// The pentagon seed for G(2,5): coordinates b13,b14,b12,b23,b34,b45,b15.
    /// The lower-left block is −M12^T so that the matrix is skew-symmetric.
    pub fn stasheff() -> Self {
        let m12 = [[1, -1, 1, 0, 0], [0, 0, -1, 1, -1]];
        let mut m = vec![vec![0i64; 7]; 7];
        m[0][1] = -1;
        m[1][0] = 1;
        for i in 0..2 {
            for j in 0..5 {
                m[i][j + 2] = m12[i][j];
                m[j + 2][i] = -m12[i][j];
            }
        }
        Seed::new((1..=7).collect(), vec![1, 2], m, vec![1; 7], 1).unwrap()
    }

    /// Stasheff seed with every d_i = d (the matrix is skew-symmetric).
    pub fn stasheff_scaled(d: i64) -> Self {
        let mut s = Self::stasheff();
        s.skew_symmetrizer = vec![d; 7];
        s.d = d;
        s
    }

    pub fn stasheff_names() -> Vec<String> {
        ["b13", "b14", "b12", "b23", "b34", "b45", "b15"].iter().map(|s| s.to_string()).collect()
    }

    pub fn len(&self) -> usize {
        self.index_set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index_set.is_empty()
    }

    pub fn pos(&self, label: i64) -> Option<usize> {
        self.index_set.iter().position(|&x| x == label)
    }

    pub fn entry(&self, k: i64, l: i64) -> i64 {
        self.matrix[self.pos(k).unwrap()][self.pos(l).unwrap()]
    }

    pub fn is_skew_symmetrized(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| {
            (0..n).all(|j| {
                self.matrix[i][j] * self.skew_symmetrizer[j]
                    == -self.matrix[j][i] * self.skew_symmetrizer[i]
            })
        })
    }

    /// Principal part M_0 on J × J.
    pub fn principal_part(&self) -> Vec<Vec<i64>> {
        self.exchangeable
            .iter()
            .map(|&i| self.exchangeable.iter().map(|&j| self.entry(i, j)).collect())
            .collect()
    }

    pub fn mutate(&self, k: i64) -> Result<Seed> {
        if !self.exchangeable.contains(&k) {
            return Err(Error::NotExchangeable(k));
        }
        let p = self.pos(k).unwrap();
        Ok(Seed { matrix: mutate_matrix(&self.matrix, p), ..self.clone() })
    }

    pub fn mutate_path(&self, path: &[i64]) -> Result<Seed> {
        path.iter().try_fold(self.clone(), |s, &k| s.mutate(k))
    }

    /// Default coordinate names a_k, with `m` for negative labels.
    pub fn default_names(&self) -> Vec<String> {
        self.index_set
            .iter()
            .map(|&k| if k < 0 { format!("a_m{}", -k) } else { format!("a_{k}") })
            .collect()
    }

    pub fn vars(&self) -> Vars {
        vars(&self.default_names())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).unwrap()
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let s: Seed = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        Seed::new(s.index_set, s.exchangeable, s.matrix, s.skew_symmetrizer, s.d)
    }
}

/// μ_k^* as a tuple: the coordinates of μ_k(σ) written in the coordinates of σ.
pub fn mutate_chart(seed: &Seed, k: i64, vs: &Vars) -> Result<Vec<PosRational>> {
    if !seed.exchangeable.contains(&k) {
        return Err(Error::NotExchangeable(k));
    }
    let n = seed.len();
    if vs.len() != n {
        return Err(Error::VariableContextError("chart arity".into()));
    }
    let p = seed.pos(k).unwrap();
    let mut plus = vec![0i64; n];
    let mut minus = vec![0i64; n];
    for j in 0..n {
        let mjk = seed.matrix[j][p];
        if mjk > 0 {
            plus[j] = mjk;
        } else if mjk < 0 {
            minus[j] = -mjk;
        }
    }
    let binom = LaurentPoly::from_terms(vs, [(plus, q(1)), (minus, q(1))]);
    let mut inv = vec![0i64; n];
    inv[p] = -1;
    let new_k = PosRational::from_poly(&binom * &LaurentPoly::monomial(vs, inv, q(1)))?;
    Ok((0..n)
        .map(|i| if i == p { new_k.clone() } else { PosRational::var(vs, i) })
        .collect())
}

/// Transition along a path: coordinates of μ_path(σ) in terms of σ.
pub fn mutate_chart_path(seed: &Seed, path: &[i64], vs: &Vars) -> Result<Vec<PosRational>> {
    let mut cur_seed = seed.clone();
    let mut cur: Vec<PosRational> = (0..seed.len()).map(|i| PosRational::var(vs, i)).collect();
    for &k in path {
        let step = mutate_chart(&cur_seed, k, vs)?;
        cur = crate::symbolic::compose_maps(&step, &cur)?;
        cur_seed = cur_seed.mutate(k)?;
    }
    Ok(cur)
}

/// σ^∨ = (I, J, −M^T) with skew-symmetrizer d/d_i.
pub fn dual_seed(seed: &Seed) -> Seed {
    let n = seed.len();
    Seed {
        index_set: seed.index_set.clone(),
        exchangeable: seed.exchangeable.clone(),
        matrix: (0..n).map(|i| (0..n).map(|j| -seed.matrix[j][i]).collect()).collect(),
        skew_symmetrizer: seed.skew_symmetrizer.iter().map(|&x| seed.d / x).collect(),
        d: seed.d,
    }
}

/// Ψ_σ^*: a_i^∨ ↦ a_i^{d_i}.
pub fn comparison_on_seed(seed: &Seed, vs: &Vars) -> Vec<PosRational> {
    (0..seed.len())
        .map(|i| {
            let mut e = vec![0; seed.len()];
            e[i] = seed.skew_symmetrizer[i];
            PosRational::monomial(vs, e)
        })
        .collect()
}

/// ψ_σ = diag(d_i).
pub fn comparison_pl(seed: &Seed) -> PLMap {
    let n = seed.len();
    PLMap::linear(
        &(0..n)
            .map(|i| (0..n).map(|j| if i == j { seed.skew_symmetrizer[i] } else { 0 }).collect())
            .collect::<Vec<_>>(),
    )
}

/// Tropical mutation steps along a path, as PL maps (one per step).
pub fn tropical_path(seed: &Seed, path: &[i64]) -> Result<Vec<PLMap>> {
    let vs = seed.vars();
    let mut cur = seed.clone();
    let mut out = vec![];
    for &k in path {
        out.push(tropicalize_map(&mutate_chart(&cur, k, &vs)?));
        cur = cur.mutate(k)?;
    }
    Ok(out)
}

fn run_chain(maps: &[PLMap], x: &[Q]) -> Result<Vec<Q>> {
    maps.iter().try_fold(x.to_vec(), |v, m| m.eval(&v))
}

/// (μ∘ψ_σ)^t = (ψ_{μ(σ)}∘μ)^t on every sample.
pub fn verify_commuting_square(seed: &Seed, path: &[i64], samples: &[Vec<i64>]) -> Result<bool> {
    let top = tropical_path(seed, path)?;
    let bottom = tropical_path(&dual_seed(seed), path)?;
    let psi = comparison_pl(seed);
    let psi_end = comparison_pl(&seed.mutate_path(path)?);
    let bad = samples
        .par_iter()
        .map(|s| -> Result<bool> {
            let x: Vec<Q> = s.iter().map(|&v| q(v)).collect();
            let lhs = run_chain(&bottom, &psi.eval(&x)?)?;
            let rhs = psi_end.eval(&run_chain(&top, &x)?)?;
            Ok(lhs != rhs)
        })
        .collect::<Result<Vec<bool>>>()?;
    Ok(!bad.into_iter().any(|b| b))
}

/// A seed and a sequence of mutation directions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MutationPath {
    pub start: Seed,
    pub directions: Vec<i64>,
}

impl MutationPath {
    pub fn new(start: Seed, directions: Vec<i64>) -> Result<Self> {
        start.mutate_path(&directions)?;
        Ok(MutationPath { start, directions })
    }

    pub fn end(&self) -> Seed {
        self.start.mutate_path(&self.directions).expect("validated on construction")
    }
}

/// Breadth-first search for a mutation path σ → σ′ (matrix equality).
pub fn find_mutation_path(from: &Seed, to: &Seed, max_depth: usize) -> Result<MutationPath> {
    if from.index_set != to.index_set {
        return Err(Error::ArityMismatch { expected: from.len(), got: to.len() });
    }
    let mut seen: HashMap<Vec<Vec<i64>>, Vec<i64>> = HashMap::new();
    let mut frontier = VecDeque::from([(from.clone(), vec![])]);
    seen.insert(from.matrix.clone(), vec![]);
    while let Some((s, path)) = frontier.pop_front() {
        if s.matrix == to.matrix {
            return Ok(MutationPath { start: from.clone(), directions: path });
        }
        if path.len() >= max_depth {
            continue;
        }
        for &k in &s.exchangeable {
            let next = s.mutate(k)?;
            if seen.contains_key(&next.matrix) {
                continue;
            }
            let mut p = path.clone();
            p.push(k);
            seen.insert(next.matrix.clone(), p.clone());
            frontier.push_back((next, p));
        }
    }
    Err(Error::NotFound(max_depth))
}

/// A seed together with a torus factor H of rank r and Ψ^H.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecoratedSeed {
    pub torus_rank: usize,
    pub seed: Seed,
    pub psi_h: Vec<Vec<i64>>,
}

impl DecoratedSeed {
    /// The seed (I ∪ {h_1..h_r}, J, diag(M, 0)); the torus labels follow the
    /// largest label of I.
    pub fn extended_seed(&self) -> Seed {
        let n = self.seed.len();
        let r = self.torus_rank;
        let top = self.seed.index_set.iter().copied().max().unwrap_or(0).max(0);
        let mut index_set = self.seed.index_set.clone();
        index_set.extend((1..=r as i64).map(|j| top + j));
        let mut matrix = vec![vec![0i64; n + r]; n + r];
        for i in 0..n {
            matrix[i][..n].copy_from_slice(&self.seed.matrix[i]);
        }
        let mut skew = self.seed.skew_symmetrizer.clone();
        skew.extend(std::iter::repeat_n(self.seed.d, r));
        Seed {
            index_set,
            exchangeable: self.seed.exchangeable.clone(),
            matrix,
            skew_symmetrizer: skew,
            d: self.seed.d,
        }
    }

    /// Ψ^H × ψ_σ on (H-coordinates, seed coordinates).
    pub fn comparison_pl(&self) -> PLMap {
        let n = self.seed.len();
        let r = self.torus_rank;
        let mut m = vec![vec![0i64; r + n]; r + n];
        for i in 0..r {
            m[i][..r].copy_from_slice(&self.psi_h[i]);
        }
        for i in 0..n {
            m[r + i][r + i] = self.seed.skew_symmetrizer[i];
        }
        PLMap::linear(&m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::{maps_equal, parse};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn samples(n: usize, count: usize, r: i64, seed: u64) -> Vec<Vec<i64>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count).map(|_| (0..n).map(|_| rng.gen_range(-r..=r)).collect()).collect()
    }

    #[test]
    fn stasheff_is_skew_symmetric() {
        let s = Seed::stasheff();
        assert_eq!(s.principal_part(), vec![vec![0, -1], vec![1, 0]]);
        for k in [1, 2] {
            assert_eq!(s.mutate(k).unwrap().mutate(k).unwrap(), s);
            assert!(s.mutate(k).unwrap().is_skew_symmetrized());
        }
        let m2 = s.mutate(2).unwrap();
        assert_eq!(m2.entry(1, 2), 1);
        assert_eq!(m2.entry(2, 1), -1);
        assert!(matches!(s.mutate(3), Err(Error::NotExchangeable(3))));
    }

    #[test]
    fn dual_commutes_with_mutation() {
        let s = Seed::stasheff();
        for k in [1, 2] {
            assert_eq!(dual_seed(&s.mutate(k).unwrap()), dual_seed(&s).mutate(k).unwrap());
        }
        assert_eq!(dual_seed(&dual_seed(&s)), s);
    }

    #[test]
    fn stasheff_exchange_relations() {
        let s = Seed::stasheff();
        let vs = vars(&Seed::stasheff_names());
        let mu2 = mutate_chart(&s, 2, &vs).unwrap();
        let want = PosRational::new(
            parse("b13*b45 + b15*b34", &vs).unwrap(),
            parse("b14", &vs).unwrap(),
        )
        .unwrap();
        assert!(mu2[1].equals(&want));
        let mu1 = mutate_chart(&s, 1, &vs).unwrap();
        let want1 = PosRational::new(
            parse("b14*b23 + b12*b34", &vs).unwrap(),
            parse("b13", &vs).unwrap(),
        )
        .unwrap();
        assert!(mu1[0].equals(&want1));
        for (i, c) in mu2.iter().enumerate() {
            if i != 1 {
                assert!(c.equals(&PosRational::var(&vs, i)));
            }
        }
    }

    #[test]
    fn chart_mutation_is_an_involution() {
        let s = Seed::stasheff();
        let vs = s.vars();
        for k in [1, 2] {
            let there_and_back = mutate_chart_path(&s, &[k, k], &vs).unwrap();
            let id: Vec<PosRational> = (0..7).map(|i| PosRational::var(&vs, i)).collect();
            assert!(maps_equal(&there_and_back, &id));
        }
    }

    #[test]
    fn pentagon_returns_with_swap() {
        let s = Seed::stasheff();
        let vs = s.vars();
        let path = [1, 2, 1, 2, 1];
        let m = mutate_chart_path(&s, &path, &vs).unwrap();
        let end = s.mutate_path(&path).unwrap();
        // coordinates 1 and 2 are exchanged, the frozen ones fixed
        assert!(m[0].equals(&PosRational::var(&vs, 1)));
        assert!(m[1].equals(&PosRational::var(&vs, 0)));
        for (i, c) in m.iter().enumerate().skip(2) {
            assert!(c.equals(&PosRational::var(&vs, i)));
        }
        // and the matrix is the original with rows/cols 1, 2 swapped
        let perm = [1usize, 0, 2, 3, 4, 5, 6];
        for i in 0..7 {
            for j in 0..7 {
                assert_eq!(end.matrix[i][j], s.matrix[perm[i]][perm[j]]);
            }
        }
    }

    #[test]
    fn grassmannian_comparison_on_mutated_variable() {
        let d = 3;
        let s = Seed::stasheff_scaled(d);
        let vs = vars(&Seed::stasheff_names());
        // Ψ_σ^* pulled through the dual mutation: μ_2 on σ^∨ then a_i ↦ a_i^d
        let dual_mu = mutate_chart(&dual_seed(&s), 2, &vs).unwrap();
        let psi = comparison_on_seed(&s, &vs);
        let lhs = dual_mu[1].compose(&psi).unwrap();
        let want = PosRational::new(
            parse("b13^3*b45^3 + b15^3*b34^3", &vs).unwrap(),
            parse("b14^3", &vs).unwrap(),
        )
        .unwrap();
        assert!(lhs.equals(&want));
        // and on σ′ it is (μ_2 b14)^d; both tropicalize to the same function
        let rhs = mutate_chart(&s, 2, &vs).unwrap()[1].powi(d);
        assert!(lhs.tropicalize().equals_exact(&rhs.tropicalize()));
        assert!(!lhs.equals(&rhs));
    }

    #[test]
    fn double_comparison_is_multiplication_by_d() {
        let mut s = Seed::stasheff_scaled(2);
        s.skew_symmetrizer[0] = 1;
        s.skew_symmetrizer[1] = 1;
        let composed = comparison_pl(&dual_seed(&s));
        let m = comparison_pl(&s);
        for x in samples(7, 20, 10, 1) {
            let xq: Vec<Q> = x.iter().map(|&v| q(v)).collect();
            let twice = composed.eval(&m.eval(&xq).unwrap()).unwrap();
            let want: Vec<Q> = x.iter().map(|&v| q(2 * v)).collect();
            assert_eq!(twice, want);
        }
    }

    #[test]
    fn commuting_square_on_stasheff() {
        let s = Seed::stasheff_scaled(2);
        let pts = samples(7, 500, 10, 7);
        assert!(verify_commuting_square(&s, &[2], &pts).unwrap());
        assert!(verify_commuting_square(&s, &[], &pts).unwrap());
        assert!(verify_commuting_square(&s, &[1, 2, 1, 2, 1], &pts).unwrap());
    }

    #[test]
    fn commuting_square_non_simply_laced() {
        // B2-type principal part with a frozen vertex, d = (1, 2, 2)
        let s = Seed::new(
            vec![1, 2, 3],
            vec![1, 2],
            vec![vec![0, 1, 1], vec![-2, 0, 1], vec![-2, -1, 0]],
            vec![1, 2, 2],
            2,
        )
        .unwrap();
        let pts = samples(3, 500, 12, 3);
        for path in [vec![1], vec![2], vec![1, 2, 1, 2, 1, 2]] {
            assert!(verify_commuting_square(&s, &path, &pts).unwrap());
        }
    }

    #[test]
    fn bfs_paths() {
        let s = Seed::stasheff();
        assert!(find_mutation_path(&s, &s, 3).unwrap().directions.is_empty());
        let t = s.mutate(2).unwrap();
        assert_eq!(find_mutation_path(&s, &t, 3).unwrap().directions, vec![2]);
        let far = s.mutate_path(&[1, 2]).unwrap();
        assert!(matches!(find_mutation_path(&s, &far, 1), Err(Error::NotFound(1))));
    }

    #[test]
    fn json_roundtrip() {
        let s = Seed::stasheff();
        let j = s.to_json();
        assert_eq!(
            serde_json::to_string(&j).unwrap().split(':').next().unwrap(),
            "{\"index_set\""
        );
        assert_eq!(Seed::from_json(&j).unwrap(), s);
    }

    #[test]
    fn decorated_extension() {
        let s = Seed::stasheff();
        let dec = DecoratedSeed { torus_rank: 2, seed: s.clone(), psi_h: vec![vec![1, 1], vec![1, 2]] };
        let ext = dec.extended_seed();
        assert_eq!(ext.len(), 9);
        assert!(ext.is_skew_symmetrized());
        assert_eq!(ext.mutate(2).unwrap().matrix[7], vec![0; 9]);
        let m = dec.comparison_pl().as_linear().unwrap();
        assert_eq!(m[0][..2], [1, 1]);
        assert_eq!(m[3][3], 1);
    }
}
