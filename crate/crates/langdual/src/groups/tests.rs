use super::*;
use crate::cluster::{dual_seed, find_mutation_path, verify_commuting_square};
use crate::linalg::{self, Mat};
use crate::rootdata::{datum_by_name, WeylWord};
use crate::scalar::{q, qr, Q};
use crate::symbolic::{det, parse, vars, LaurentPoly, Vars};
use num_traits::{One, Zero};
use rand::{rngs::StdRng, Rng, SeedableRng};

fn group(name: &str) -> Group {
    Group::by_name(name).unwrap()
}

fn word(g: &Group, s: &str) -> DoubleWord {
    DoubleWord::parse(&g.datum, s).unwrap()
}

fn lp(s: &str, vs: &Vars) -> LaurentPoly {
    parse(s, vs).unwrap()
}

fn assert_matrix(m: &Mat<LaurentPoly>, want: &[&[&str]]) {
    let vs = m[0][0].vars().clone();
    for (a, row) in want.iter().enumerate() {
        for (b, e) in row.iter().enumerate() {
            assert_eq!(m[a][b], lp(e, &vs), "entry ({}, {})", a + 1, b + 1);
        }
    }
}

fn rand_pos(rng: &mut StdRng) -> Q {
    qr(rng.gen_range(1..12), rng.gen_range(1..7))
}

const ALL: [&str; 6] = ["SL2", "SL3", "SL4", "SO5", "SP4", "PSL2"];

#[test]
fn registered_reps_satisfy_relations() {
    for name in ALL {
        let g = group(name);
        for rep in &g.reps {
            assert!(rep.check_relations(), "{name} rep {}", rep.index);
            assert!(rep.check_weights(&g.datum), "{name} rep {}", rep.index);
            assert!(rep.f.iter().all(|f| (0..f.len()).all(|a| (a..f.len()).all(|b| f[a][b].is_zero()))));
        }
    }
}

#[test]
fn exponentials_are_inverse() {
    let g = group("SO5");
    let vs = vars(&["t"]);
    let t = LaurentPoly::var(&vs, 0);
    for i in 1..=2 {
        let w = GroupWord::x(i, &t).mul(&GroupWord::x(i, &-&t));
        assert!(w.eval(&g).is_identity());
        let w = GroupWord::y(i, &t).mul(&GroupWord::y(i, &-&t));
        assert!(w.eval(&g).is_identity());
    }
}

#[test]
fn sl2_negative_generator() {
    let g = group("SL2");
    let vs = vars(&["t"]);
    let m = GroupWord::x_neg(&g.datum, 1, &LaurentPoly::var(&vs, 0)).unwrap().eval(&g);
    assert_matrix(m.mat(1).unwrap(), &[&["t^-1", "0"], &["1", "t"]]);
    let w = word(&g, "-1");
    let z = factorization_chart(&g, &w).unwrap();
    assert_matrix(z.mat(1).unwrap(), &[&["h1*t1^-1", "0"], &["h1^-1", "h1^-1*t1"]]);
}

#[test]
fn so5_generators_match_matrix_model() {
    let g = group("SO5");
    let vs = vars(&["t"]);
    let t = LaurentPoly::var(&vs, 0);
    let m1 = GroupWord::x_neg(&g.datum, 1, &t).unwrap().eval(&g);
    assert_matrix(
        m1.mat(1).unwrap(),
        &[
            &["t^-1", "0", "0", "0", "0"],
            &["1", "t", "0", "0", "0"],
            &["0", "0", "1", "0", "0"],
            &["0", "0", "0", "t^-1", "0"],
            &["0", "0", "0", "-1", "t"],
        ],
    );
    let m2 = GroupWord::x_neg(&g.datum, 2, &t).unwrap().eval(&g);
    assert_matrix(
        m2.mat(1).unwrap(),
        &[
            &["1", "0", "0", "0", "0"],
            &["0", "t^-2", "0", "0", "0"],
            &["0", "t^-1", "1", "0", "0"],
            &["0", "-1/2", "-t", "t^2", "0"],
            &["0", "0", "0", "0", "1"],
        ],
    );
}

#[test]
fn so5_longest_word_product() {
    let g = group("SO5");
    let z = reduced_chart(&g, &word(&g, "-1,-2,-1,-2")).unwrap();
    assert_matrix(
        z.mat(1).unwrap(),
        &[
            &["t1^-1*t3^-1", "0", "0", "0", "0"],
            &["t1*t2^-2 + t3^-1", "t1*t3*t2^-2*t4^-2", "0", "0", "0"],
            &["t2^-1", "t3*t2^-1*t4^-2 + t4^-1", "1", "0", "0"],
            &[
                "-1/2*t1^-1",
                "-1/2*t1^-1*t3*t4^-2 - t1^-1*t2*t4^-1 - 1/2*t1^-1*t2^2*t3^-1",
                "-t1^-1*t2 - t1^-1*t2^2*t3^-1*t4",
                "t1^-1*t2^2*t3^-1*t4^2",
                "0",
            ],
            &[
                "1/2",
                "1/2*t3*t4^-2 + t2*t4^-1 + 1/2*t2^2*t3^-1 + 1/2*t1",
                "t2^2*t3^-1*t4 + t2 + t1*t4",
                "-t2^2*t3^-1*t4^2 - t1*t4^2",
                "t1*t3",
            ],
        ],
    );
}

#[test]
fn sp4_longest_word_product() {
    let g = group("SP4");
    let z = reduced_chart(&g, &word(&g, "-1,-2,-1,-2")).unwrap();
    assert_matrix(
        z.mat(1).unwrap(),
        &[
            &["t1^-1*t3^-1", "0", "0", "0"],
            &["t1*t2^-1 + t3^-1", "t1*t3*t2^-1*t4^-1", "0", "0"],
            &["t1^-1", "t2*t1^-1*t3^-1 + t3*t1^-1*t4^-1", "t2*t4*t1^-1*t3^-1", "0"],
            &["-1", "-t1 - t2*t3^-1 - t3*t4^-1", "-t1*t4 - t2*t4*t3^-1", "t1*t3"],
        ],
    );
}

fn perm_block(n: usize, i: usize) -> Mat<Q> {
    let mut m = linalg::identity::<Q>(n);
    m[i - 1][i - 1] = Q::zero();
    m[i][i] = Q::zero();
    m[i - 1][i] = Q::one();
    m[i][i - 1] = -Q::one();
    m
}

#[test]
fn lifts_against_permutation_blocks() {
    // \bar{s}_i = exp(−E) exp(F) exp(−E) differs from P_i = E_{i,i+1} − E_{i+1,i}:
    // \bar{s}_2 = P_2^{-1} and \bar{s}_1 = diag(1, 1, −1, −1) (P_1 P_3)^{-1} on Sp4.
    let g = group("SP4");
    let rep = g.rep(1).unwrap();
    let p2 = perm_block(4, 2);
    assert_eq!(rep.lift(2), &linalg::inverse(&p2).unwrap());
    assert_ne!(rep.lift(2), &p2);
    let p13 = linalg::mul(&perm_block(4, 1), &perm_block(4, 3));
    let mut d = linalg::identity::<Q>(4);
    d[2][2] = -Q::one();
    d[3][3] = -Q::one();
    assert_eq!(linalg::mul(rep.lift(1), &p13), d);
}

#[test]
fn lifts_satisfy_braid_relations() {
    for name in ["SL3", "SL4", "SO5", "SP4"] {
        let g = group(name);
        let words = g.datum.reduced_words_of_w0();
        for rep in &g.reps {
            let first = rep.lift_word(&words[0]);
            for w in &words[1..] {
                assert_eq!(rep.lift_word(w), first, "{name} rep {} word {:?}", rep.index, w.letters);
            }
        }
    }
}

fn random_word(g: &Group, rng: &mut StdRng, len: usize) -> (GroupWord, Vars) {
    let vs = vars(&["x"]);
    let mut w = GroupWord::identity(&vs);
    for _ in 0..len {
        let i = rng.gen_range(1..=g.rank());
        let c = LaurentPoly::constant(&vs, rand_pos(rng));
        let f = match rng.gen_range(0..3) {
            0 => GroupWord::x(i, &c),
            1 => GroupWord::y(i, &c),
            _ => GroupWord::coroot(&g.datum, i, &c),
        };
        w = w.mul(&f);
    }
    (w, vs)
}

fn weyl_elements(g: &Group) -> Vec<WeylWord> {
    let w0 = g.datum.longest_word();
    let mut out = vec![];
    for k in 0..=w0.len() {
        out.push(WeylWord::new(w0.letters[..k].to_vec()));
    }
    out
}

#[test]
fn minors_scale_under_torus() {
    // Δ_{uω,vω}(a g b) = a^{uω} b^{vω} Δ_{uω,vω}(g) with a = α_j^∨(c)
    let mut rng = StdRng::seed_from_u64(11);
    for name in ["SL3", "SO5", "SP4"] {
        let g = group(name);
        let ws = weyl_elements(&g);
        for _ in 0..12 {
            let (w, vs) = random_word(&g, &mut rng, 6);
            let i = rng.gen_range(1..=g.rank());
            let j = rng.gen_range(1..=g.rank());
            let u = &ws[rng.gen_range(0..ws.len())];
            let v = &ws[rng.gen_range(0..ws.len())];
            let (c1, c2) = (rand_pos(&mut rng), rand_pos(&mut rng));
            let a = GroupWord::coroot(&g.datum, j, &LaurentPoly::constant(&vs, c1.clone()));
            let b = GroupWord::coroot(&g.datum, j, &LaurentPoly::constant(&vs, c2.clone()));
            let base = generalized_minor(&g, u, v, i, &w.eval(&g)).unwrap();
            let moved = generalized_minor(&g, u, v, i, &a.mul(&w).mul(&b).eval(&g)).unwrap();
            let om = g.datum.fundamental_weight(i);
            let cj = g.datum.simple_coroot(j);
            let eu = crate::scalar::to_i64(&g.datum.pair(&g.datum.act_weight(u, &om), &cj)).unwrap();
            let ev = crate::scalar::to_i64(&g.datum.pair(&g.datum.act_weight(v, &om), &cj)).unwrap();
            let factor = pow_i(&c1, eu) * pow_i(&c2, ev);
            assert_eq!(moved, base.scale(&factor), "{name} u={:?} v={:?} i={i}", u.letters, v.letters);
        }
    }
}

fn pow_i(x: &Q, e: i64) -> Q {
    let p = num_traits::pow(x.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        Q::one() / p
    } else {
        p
    }
}

#[test]
fn minors_of_sl_n_are_ordinary_minors() {
    let mut rng = StdRng::seed_from_u64(5);
    for name in ["SL3", "SL4"] {
        let g = group(name);
        let n = g.rank() + 1;
        let ws = weyl_elements(&g);
        let (w, vs) = random_word(&g, &mut rng, 10);
        let el = w.eval(&g);
        let m = el.mat(1).unwrap();
        for i in 1..n {
            for u in &ws {
                for v in &ws {
                    let rows = perm_image(&g, u, i, n);
                    let cols = perm_image(&g, v, i, n);
                    let sub: Mat<LaurentPoly> =
                        rows.iter().map(|&a| cols.iter().map(|&b| m[a][b].clone()).collect()).collect();
                    let want = det(&sub, &vs).unwrap();
                    assert_eq!(generalized_minor(&g, u, v, i, &el).unwrap(), want);
                }
            }
        }
    }
}

/// Sorted image of {0..i−1} under the permutation w acting on positions.
fn perm_image(_g: &Group, w: &WeylWord, i: usize, n: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    for &s in w.letters.iter().rev() {
        for p in perm.iter_mut() {
            if *p == s - 1 {
                *p = s;
            } else if *p == s {
                *p = s - 1;
            }
        }
    }
    let mut out: Vec<usize> = perm[..i].to_vec();
    out.sort();
    out
}

#[test]
fn minors_on_reduced_cells_with_trivial_left_part() {
    // Δ_{uω_i, ω_i}(z) = 1 on z ∈ L^{u,e} written in negative letters
    for (name, letters) in [("SL3", "-1,-2,-1"), ("SO5", "-1,-2,-1,-2"), ("SP4", "-2,-1,-2,-1")] {
        let g = group(name);
        let w = word(&g, letters);
        let z = reduced_chart(&g, &w).unwrap();
        for i in 1..=g.rank() {
            let p = generalized_minor(&g, &w.u(), &WeylWord::empty(), i, &z).unwrap();
            assert!(p.is_constant() && p.coeff(&vec![0; p.arity()]) == Q::one(), "{name} i={i}");
        }
    }
}

#[test]
fn last_and_first_letter_minors() {
    for (name, letters) in [("SL2", "-1"), ("SL3", "-1,-2,-1"), ("SO5", "-1,-2,-1,-2"), ("SP4", "-1,-2,-1,-2")] {
        let g = group(name);
        let w = word(&g, letters);
        let z = reduced_chart(&g, &w).unwrap();
        let vs = z.vars.clone();
        let n = w.len();
        let r = g.rank();
        let w0 = g.datum.longest_word();
        let im = w.letters[n - 1].unsigned_abs() as usize;
        let last = generalized_minor(&g, &w0, &WeylWord::new(vec![im]), im, &z).unwrap();
        assert_eq!(last, LaurentPoly::var(&vs, r + n - 1), "{name}");
        let i1 = w.letters[0].unsigned_abs() as usize;
        let star = g.datum.star(i1);
        let ending = g.datum.reduced_words_of_w0().into_iter().find(|x| x.letters.last() == Some(&star)).unwrap();
        let ws = WeylWord::new(ending.letters[..ending.len() - 1].to_vec());
        let first = generalized_minor(&g, &ws, &WeylWord::empty(), star, &z).unwrap();
        assert_eq!(first, LaurentPoly::var(&vs, r).monomial_inverse().unwrap(), "{name}");
    }
}

#[test]
fn torus_part_of_gaussian_decomposition() {
    let g = group("SL2");
    let vs = vars(&["t"]);
    let el = GroupWord::x_neg(&g.datum, 1, &LaurentPoly::var(&vs, 0)).unwrap().eval(&g);
    let gd = gaussian_decompose(&el).unwrap();
    let d = &gd[&1].diag;
    assert!(d[0].equals_poly(&lp("t^-1", &vs)) && d[1].equals_poly(&lp("t", &vs)));

    let h = group("SO5");
    let w = word(&h, "-1,-2,-1,-2");
    let z = reduced_chart(&h, &w).unwrap();
    let parts = torus_part(&h, &z).unwrap();
    for i in 1..=2 {
        let minor = generalized_minor(&h, &WeylWord::empty(), &WeylWord::empty(), i, &z).unwrap();
        assert!(parts[&i].equals_poly(&minor), "ω_{i}");
    }
    for (i, gs) in gaussian_decompose(&z).unwrap() {
        let back = gs.product();
        let m = z.mat(i).unwrap();
        for (a, row) in back.iter().enumerate() {
            for (b, x) in row.iter().enumerate() {
                assert!(x.equals_poly(&m[a][b]));
            }
        }
    }
    let diag = GroupWord::coroot(&h.datum, 1, &LaurentPoly::var(&z.vars, 2)).eval(&h);
    assert!(gaussian_decompose(&diag).unwrap().values().all(Gaussian::is_trivial_unipotent));
}

#[test]
fn transpose_and_iota() {
    let mut rng = StdRng::seed_from_u64(3);
    // E_i = F_i^T holds in the Sp4 basis, so the transpose is the matrix transpose there
    let g = group("SP4");
    for _ in 0..5 {
        let (a, _) = random_word(&g, &mut rng, 4);
        let (b, _) = random_word(&g, &mut rng, 4);
        let (ab_t, _) = transpose_iota(&a.mul(&b));
        let lhs = ab_t.eval(&g);
        let rhs = b.transpose().mul(&a.transpose()).eval(&g);
        assert_eq!(lhs.mats, rhs.mats);
        for (i, m) in a.eval(&g).mats {
            assert_eq!(a.transpose().eval(&g).mats[&i], linalg_transpose(&m));
        }
    }
    let vs = vars(&["t"]);
    let t = LaurentPoly::var(&vs, 0);
    for i in 1..=2 {
        let x = GroupWord::x(i, &t);
        assert_eq!(x.iota().eval(&g).mats, x.eval(&g).mats);
        let c = GroupWord::coroot(&g.datum, i, &t);
        assert_eq!(c.transpose().eval(&g).mats, c.eval(&g).mats);
    }
}

fn linalg_transpose(m: &Mat<LaurentPoly>) -> Mat<LaurentPoly> {
    (0..m.len()).map(|b| m.iter().map(|row| row[b].clone()).collect()).collect()
}

#[test]
fn word_seeds() {
    let a1 = datum_by_name("SL2", None).unwrap();
    let s = word_seed(&a1, &DoubleWord::parse(&a1, "-1").unwrap()).unwrap();
    assert_eq!(s.index_set, vec![-1]);
    assert!(s.exchangeable.is_empty());

    let a2 = datum_by_name("SL3", None).unwrap();
    let s = word_seed(&a2, &DoubleWord::parse(&a2, "-1,-2,-1").unwrap()).unwrap();
    assert_eq!(s.index_set, vec![-2, -1, 1]);
    assert_eq!(s.exchangeable, vec![1]);

    let b2 = datum_by_name("SO5", None).unwrap();
    let c2 = datum_by_name("SP4", None).unwrap();
    let wb = DoubleWord::parse(&b2, "-1,-2,-1,-2").unwrap();
    let wc = DoubleWord::parse(&c2, "-1,-2,-1,-2").unwrap();
    let sb = word_seed(&b2, &wb).unwrap();
    let sc = word_seed(&c2, &wc).unwrap();
    assert_eq!(sb.exchangeable, vec![1, 2]);
    assert!(sb.is_skew_symmetrized());
    let dual = dual_seed(&sb);
    assert_eq!(dual.matrix, sc.matrix);
    assert_eq!(dual.skew_symmetrizer, sc.skew_symmetrizer);
}

#[test]
fn decorated_seed_needs_integral_psi() {
    let so5 = datum_by_name("SO5", None).unwrap();
    let w = DoubleWord::longest_negative(&so5);
    let ds = decorated_word_seed(&so5, &w).unwrap();
    assert_eq!(ds.psi_h, vec![vec![1, 1], vec![1, 2]]);
    let psl2 = datum_by_name("PSL2", None).unwrap();
    let w = DoubleWord::longest_negative(&psl2);
    assert!(matches!(decorated_word_seed(&psl2, &w), Err(crate::Error::LatticeError(_))));
}

#[test]
fn seeds_of_different_words_are_mutation_equivalent() {
    let a2 = datum_by_name("SL3", None).unwrap();
    let s1 = word_seed(&a2, &DoubleWord::parse(&a2, "-1,-2,-1").unwrap()).unwrap();
    let s2 = word_seed(&a2, &DoubleWord::parse(&a2, "-2,-1,-2").unwrap()).unwrap();
    let path = find_mutation_path(&s1, &s2, 2).unwrap();
    assert!(path.directions.len() <= 2);
    assert_eq!(path.end().matrix, s2.matrix);
}

#[test]
fn word_seeds_satisfy_commuting_square() {
    let mut rng = StdRng::seed_from_u64(17);
    for (name, letters) in [("SO5", "-1,-2,-1,-2"), ("SL3", "-1,-2,-1"), ("SL4", "-1,-2,-1,-3,-2,-1")] {
        let d = datum_by_name(name, None).unwrap();
        let s = word_seed(&d, &DoubleWord::parse(&d, letters).unwrap()).unwrap();
        let samples: Vec<Vec<i64>> =
            (0..60).map(|_| (0..s.len()).map(|_| rng.gen_range(-9..10)).collect()).collect();
        let ex = s.exchangeable.clone();
        let mut path = vec![];
        for _ in 0..4 {
            path.push(ex[rng.gen_range(0..ex.len())]);
        }
        assert!(verify_commuting_square(&s, &path, &samples).unwrap(), "{name} {path:?}");
    }
}

#[test]
fn cluster_minors_are_positive_in_factorization_coordinates() {
    for (name, letters) in [("SL3", "-1,-2,-1"), ("SO5", "-1,-2,-1,-2"), ("SP4", "-2,-1,-2,-1")] {
        let g = group(name);
        let w = word(&g, letters);
        let mins = cluster_minors(&g, &w).unwrap();
        assert!(mins.values().all(|m| m.sign == 1), "{name}");
        let tr = chart_transition_to_cluster(&g, &w).unwrap();
        assert_eq!(tr.len(), g.rank() + w.index_set().len());
    }
    // the known values for SO5: a_{−1} = 1/(t1 t3), a_{−2} = 1/(t2 t4), a_1 = t1/t2² + 1/t3
    let g = group("SO5");
    let w = word(&g, "-1,-2,-1,-2");
    let mins = cluster_minors(&g, &w).unwrap();
    let vs = chart_vars(&g.datum, &w);
    let check = |k: i64, s: &str| assert!(mins[&k].value.equals(&crate::symbolic::PosRational::from_poly(lp(s, &vs)).unwrap()), "Δ_{k}");
    check(-1, "t1^-1*t3^-1");
    check(-2, "t2^-1*t4^-1");
    check(1, "t1*t2^-2 + t3^-1");
}

#[test]
fn twisted_minors_are_monomial() {
    let mut rng = StdRng::seed_from_u64(23);
    for (name, letters) in [("SL2", "-1"), ("SL3", "-1,-2,-1"), ("SO5", "-1,-2,-1,-2"), ("SP4", "-2,-1,-2,-1")] {
        let g = group(name);
        let w = word(&g, letters);
        let inv = TransitionInverse::new(&g, &w).unwrap();
        for _ in 0..5 {
            let s: Vec<Q> = (0..w.len()).map(|_| rand_pos(&mut rng)).collect();
            assert!(inv.monomial_at(&s).unwrap(), "{name}");
        }
    }
}

#[test]
fn cluster_chart_is_injective_on_samples() {
    let mut rng = StdRng::seed_from_u64(29);
    for (name, letters) in [("SL3", "-1,-2,-1"), ("SO5", "-1,-2,-1,-2"), ("SP4", "-1,-2,-1,-2")] {
        let g = group(name);
        let w = word(&g, letters);
        let inv = TransitionInverse::new(&g, &w).unwrap();
        let z = reduced_chart(&g, &w).unwrap();
        let mins = cluster_minors(&g, &w).unwrap();
        let ids = w.index_set();
        let signs: Vec<i8> = ids.iter().map(|k| mins[k].sign).collect();
        for _ in 0..20 {
            let t: Vec<Q> = (0..w.len()).map(|_| rand_pos(&mut rng)).collect();
            let mut point = vec![Q::one(); g.rank()];
            point.extend(t.iter().cloned());
            let zt = z.at(&point).unwrap();
            let a: Vec<Q> = ids
                .iter()
                .map(|&k| {
                    let (u, v, i) = w.cluster_minor_data(k);
                    minor_at(&g, &u, &v, i, &zt).unwrap() * q(mins[&k].sign as i64)
                })
                .collect();
            assert_eq!(inv.apply(&a, &signs).unwrap(), t, "{name}");
        }
    }
}

#[test]
fn peeling_recovers_parameters() {
    let mut rng = StdRng::seed_from_u64(31);
    for (name, letters) in [("SL4", "-1,-2,-3,-1,-2,-1"), ("SO5", "-2,-1,-2,-1"), ("SP4", "-1,-2")] {
        let g = group(name);
        let w = word(&g, letters);
        let z = reduced_chart(&g, &w).unwrap();
        let t: Vec<Q> = (0..w.len()).map(|_| rand_pos(&mut rng)).collect();
        let mut point = vec![Q::one(); g.rank()];
        point.extend(t.iter().cloned());
        assert_eq!(peel(&g, &w, &z.at(&point).unwrap()).unwrap(), t, "{name}");
    }
}

#[test]
fn langlands_dual_group() {
    let g = group("SO5");
    let d = g.langlands_dual().unwrap();
    assert_eq!(d.datum.kind, "C");
    assert_eq!(d.reps[0].dim, 4);
}
