use super::*;
use crate::rootdata::datum_by_name;
use proptest::prelude::*;

fn word(datum: &RootDatum, s: &str) -> DoubleWord {
    DoubleWord::parse(datum, s).unwrap()
}

fn setup(name: &str, letters: &str) -> (PTSkeleton, SigmaChart, SigmaChart) {
    let g = Group::by_name(name).unwrap();
    let w = word(&g.datum, letters);
    pt_setup(&g, &w).unwrap()
}

fn qv(v: &[(i64, i64)]) -> Vec<Q> {
    v.iter().map(|&(a, b)| Q::new(a.into(), b.into())).collect()
}

/// The bracket through W-invariance: (ω_{i_k}, ω_{i_p} − u_k^{-1}u_p ω_{i_p}).
fn bracket_oracle(datum: &RootDatum, w: &DoubleWord, k: i64, p: i64) -> Q {
    if k >= p {
        return Q::zero();
    }
    let ik = w.letter(k).unsigned_abs() as usize;
    let ip = w.letter(p).unsigned_abs() as usize;
    let start = if k < 0 { 0 } else { k as usize };
    let tail: Vec<usize> = w.letters[start..p as usize].iter().map(|l| l.unsigned_abs() as usize).collect();
    let op = datum.fundamental_weight(ip);
    let moved = datum.act_weight(&WeylWord::new(tail), &op);
    let diff: Vec<Q> = op.iter().zip(&moved).map(|(a, b)| a - b).collect();
    datum.form_hstar(&datum.fundamental_weight(ik), &diff)
}

fn all_words(name: &str) -> (RootDatum, Vec<DoubleWord>) {
    let datum = datum_by_name(name, None).unwrap();
    let words = datum
        .reduced_words_of_w0()
        .into_iter()
        .map(|u| DoubleWord::new(&datum, u.letters.iter().map(|&i| -(i as i64)).collect()).unwrap())
        .collect();
    (datum, words)
}

#[test]
fn sl2_single_bracket() {
    let datum = datum_by_name("SL2", None).unwrap();
    let w = word(&datum, "-1");
    let s = build_skeleton(&datum, &w).unwrap();
    assert_eq!(s.labels, vec![-1, 1]);
    assert_eq!(s.bracket_table, vec![vec![q(1)], vec![q(0)]]);
    assert_eq!(s.b, vec![vec![q(1)]]);
    assert_eq!(s.casimirs, vec![1]);
}

#[test]
fn brackets_match_the_invariant_form() {
    for name in ["SL3", "SO5", "SP4", "SL4"] {
        let (datum, words) = all_words(name);
        for w in words {
            let s = build_skeleton(&datum, &w).unwrap();
            for (row, &k) in s.bracket_table.iter().zip(&s.labels) {
                for (p, v) in row.iter().enumerate() {
                    assert_eq!(*v, bracket_oracle(&datum, &w, k, p as i64 + 1), "{name} {k} {p}");
                }
            }
            for k in 1..=w.len() {
                assert!(s.bracket_table[datum.rank() + k - 1][k - 1].is_zero());
            }
        }
    }
}

#[test]
fn b2_diagonal_is_alpha_omega() {
    let datum = datum_by_name("SO5", None).unwrap();
    let w = word(&datum, "-1,-2,-1,-2");
    let s = build_skeleton(&datum, &w).unwrap();
    for &k in &s.rows {
        let i = w.letter(k).unsigned_abs() as usize;
        let expect = datum.form_hstar(&datum.simple_root(i), &datum.fundamental_weight(i));
        assert_eq!(bracket(&datum, &w, k, w.plus(k)), expect);
        assert_eq!(expect, Q::one() / q(datum.d(i)));
    }
    assert_eq!(s.d, qv(&[(1, 1), (1, 2), (1, 1), (1, 2)]));
}

#[test]
fn factorization_for_every_reduced_word() {
    for name in ["SL3", "SL4", "SO5", "SP4"] {
        let (datum, words) = all_words(name);
        assert!(!words.is_empty());
        for w in words {
            let s = build_skeleton(&datum, &w).unwrap();
            // B = D B'
            for (j, row) in s.b.iter().enumerate() {
                for (p, v) in row.iter().enumerate() {
                    assert_eq!(*v, s.d[j].clone() * q(s.b_prime[j][p]));
                }
            }
            let prod: Q = w.letters.iter().map(|l| Q::one() / q(datum.d(l.unsigned_abs() as usize))).product();
            assert_eq!(s.det_b(), prod, "{name} {}", w.to_string_plain());
            let mut frozen: Vec<i64> = (1..=w.len() as i64).filter(|k| !w.exchangeable().contains(k)).collect();
            frozen.sort();
            assert_eq!(s.casimirs, frozen);
        }
    }
}

#[test]
fn skeleton_rejects_other_words() {
    let datum = datum_by_name("SL3", None).unwrap();
    assert!(matches!(build_skeleton(&datum, &word(&datum, "-1,-2")), Err(Error::NotReduced(_))));
}

#[test]
fn chart_inverse_round_trips() {
    for (name, w) in [("SL2", "-1"), ("SL3", "-1,-2,-1"), ("SO5", "-1,-2,-1,-2"), ("SP4", "-2,-1,-2,-1")] {
        let (_, chart, _) = setup(name, w);
        let r = chart.cone.rank();
        let lam = vec![2; r];
        for p in chart.cone.fiber_enumerate(&lam).unwrap() {
            let y = chart.eval_int(&p).unwrap();
            assert_eq!(chart.inverse(&y), Some(to_q(&p)), "{name} {p:?}");
            assert!(chart.contains(&y));
        }
    }
}

#[test]
fn casimirs_are_fixed_on_fibers() {
    let (skel, chart, _) = setup("SO5", "-1,-2,-1,-2");
    let datum = &skel.datum;
    let w0 = datum.longest_word();
    for lam in [vec![1, 0], vec![1, 1], vec![0, 2]] {
        let leaf = leaves(&skel, &chart, &lam).unwrap();
        let cw = chart.cone.h_coweight(&lam);
        for (k, v) in &leaf.casimirs {
            let i = skel.word.letter(*k).unsigned_abs() as usize;
            let expect = datum.pair(&datum.act_weight(&w0, &datum.fundamental_weight(i)), &cw);
            assert_eq!(*v, expect);
        }
        let pos: Vec<usize> = leaf.casimirs.iter().map(|(k, _)| skel.labels.iter().position(|l| l == k).unwrap()).collect();
        for p in chart.cone.fiber_enumerate(&lam).unwrap() {
            let y = chart.eval_int(&p).unwrap();
            for (j, (_, v)) in pos.iter().zip(&leaf.casimirs) {
                assert_eq!(&y[*j], v);
            }
        }
    }
}

#[test]
fn leaf_dimensions() {
    let (skel, chart, _) = setup("SL2", "-1");
    assert_eq!(leaves(&skel, &chart, &[1]).unwrap().dimension, 2);
    assert_eq!(leaves(&skel, &chart, &[0]).unwrap().dimension, 0);
    assert!(matches!(leaves(&skel, &chart, &[-1]), Err(Error::NotDominant(_))));
    let (skel, chart, _) = setup("SO5", "-1,-2,-1,-2");
    let leaf = leaves(&skel, &chart, &[1, 1]).unwrap();
    assert_eq!(leaf.dimension, 8);
    assert_eq!(leaf.free, skel.rows);
    assert_eq!(leaves(&skel, &chart, &[1, 0]).unwrap().dimension, 6);
}

#[test]
fn sigma_comparison_is_diagonal() {
    for (name, w) in [("SL2", "-1"), ("SL3", "-2,-1,-2"), ("SO5", "-1,-2,-1,-2"), ("SP4", "-1,-2,-1,-2")] {
        let (_, chart, dual) = setup(name, w);
        let r = chart.cone.rank();
        let mut pts = vec![];
        for lam in crate::potential::small_dominant(&chart.cone, 2) {
            pts.extend(chart.cone.fiber_enumerate(&lam).unwrap());
        }
        // off-cone points too
        pts.push([vec![3; r], vec![-2; chart.dim() - r]].concat());
        let rep = verify_sigma_comparison(&chart, &dual, &pts).unwrap();
        assert!(rep.passed(), "{name}: {:?}", rep.counterexamples);
    }
}

#[test]
fn sl2_lattice_points() {
    let (skel, chart, _) = setup("SL2", "-1");
    let lat = bs_lattice(&skel, &chart, &[2], 12).unwrap();
    assert_eq!(lat.label, vec![1]);
    let xs: Vec<Vec<Q>> = lat.points.iter().map(|y| chart.inverse(y).unwrap()).collect();
    let mut xs = xs;
    xs.sort();
    assert_eq!(xs, vec![to_q(&[1, 0]), to_q(&[1, 1]), to_q(&[1, 2])]);
    assert_eq!(chart.inverse(&lat.base), Some(to_q(&[1, 0])));
    let zero = bs_lattice(&skel, &chart, &[0], 12).unwrap();
    assert_eq!(zero.points.len(), 1);
    assert!(matches!(bs_lattice(&skel, &chart, &[1], 12), Err(Error::NotQuantizable(_))));
    assert!(matches!(bs_lattice(&skel, &chart, &[-2], 12), Err(Error::NotQuantizable(_))));
}

#[test]
fn sl2_duality() {
    let (skel, chart, dual) = setup("SL2", "-1");
    let rep = verify_bs_duality(&skel, &chart, &dual, &[2], 12).unwrap();
    assert!(rep.passed(), "{:?}", rep.counterexamples);
    assert_eq!(rep.samples, 3);
    let rep = verify_bs_duality(&skel, &chart, &dual, &[0], 12).unwrap();
    assert!(rep.passed());
    assert_eq!(rep.samples, 1);
}

#[test]
fn b2_duality() {
    let (skel, chart, dual) = setup("SO5", "-1,-2,-1,-2");
    // ψ(ω_1^∨) = ω_1, ψ(ω_2^∨) = 2ω_2, ψ(ρ^∨) = ω_1 + 2ω_2
    for (lam, omega) in [(vec![1, 1], [1, 0]), (vec![1, 2], [0, 2]), (vec![2, 3], [1, 2])] {
        let rep = verify_bs_duality(&skel, &chart, &dual, &lam, 12).unwrap();
        assert!(rep.passed(), "{lam:?}: {:?}", rep.counterexamples);
        let dim = skel.datum.weyl_dim(&to_q(&omega)).unwrap();
        assert_eq!(Q::from_integer(rep.samples.into()), dim, "{lam:?}");
    }
}

#[test]
fn b2_short_root_spacing() {
    let (skel, chart, _) = setup("SO5", "-1,-2,-1,-2");
    let lat = bs_lattice(&skel, &chart, &[1, 2], 12).unwrap();
    assert!(lat.points.iter().flatten().any(|v| *v.denom() == 2.into()));
    assert!(lat.points.iter().flatten().all(|v| (v.clone() * q(2)).is_integer()));
}

#[test]
fn sl2_volume_table() {
    let (skel, chart, dual) = setup("SL2", "-1");
    let rows = volume(&skel, &chart.cone, &dual.cone, &[1], 5).unwrap();
    for row in &rows {
        assert_eq!(row.count, 2 * row.n as u64 + 1);
        assert_eq!(row.weyl_product, q(2 * row.n));
    }
    assert!(matches!(volume(&skel, &chart.cone, &dual.cone, &[0], 3), Err(Error::NotRegular(_))));
}

#[test]
fn b2_volume_counts_are_weyl_dimensions() {
    let (skel, chart, dual) = setup("SO5", "-1,-2,-1,-2");
    let rows = volume(&skel, &chart.cone, &dual.cone, &[1, 1], 3).unwrap();
    for row in rows {
        // λ = ψ(ρ^∨) = ω_1 + 2ω_2 in ω-coordinates
        let dim = skel.datum.weyl_dim(&[q(row.n), q(2 * row.n)]).unwrap();
        assert_eq!(Q::from_integer(row.count.into()), dim);
        // ∏ (λ, α^∨) = 1·2·4·3 and ∏ (ρ, α^∨) = 1·1·3·2
        assert_eq!(row.weyl_product, q(row.n.pow(4)) * q(24) / q(6));
    }
}

#[test]
fn corollary_volume_identity() {
    let datum = datum_by_name("SO5", None).unwrap();
    let rep = corollary_vol_check(&datum, &[to_q(&[1, 1]), to_q(&[2, 2]), to_q(&[3, 1])]).unwrap();
    assert!(rep.passed(), "{:?}", rep.counterexamples);
    assert!(rep.notes[0].starts_with("1,1: 4 vs 4*1"));
    let a1 = datum_by_name("SL2", None).unwrap();
    assert!(corollary_vol_check(&a1, &[to_q(&[1]), to_q(&[5])]).unwrap().passed());
}

#[test]
fn quantizability() {
    for (name, w, lam) in [("SL2", "-1", vec![3]), ("SL3", "-1,-2,-1", vec![2, 2]), ("SO5", "-1,-2,-1,-2", vec![2, 2])] {
        let (skel, chart, _) = setup(name, w);
        let v = PTVariety { skeleton: &skel, chart: &chart };
        assert!(quantizability_check(&v, &lam, 2).unwrap(), "{name}");
        assert!(matches!(quantizability_check(&v, &lam, 7), Err(Error::InconclusiveWitness(_))));
    }
    let bad = synthetic_counterexample();
    assert!(!quantizability_check(&bad, &[3], 2).unwrap());
    let mut good = bad.clone();
    good.bivector[0][1] = Q::new(1.into(), 2.into());
    assert!(quantizability_check(&good, &[3], 2).unwrap());
}

proptest! {
    #[test]
    fn chart_is_a_bijection_on_lattice_points(xs in proptest::collection::vec(-6i64..7, 6)) {
        let (_, chart, _) = setup("SO5", "-1,-2,-1,-2");
        let y = chart.eval_int(&xs).unwrap();
        prop_assert_eq!(chart.inverse(&y), Some(to_q(&xs)));
    }

    #[test]
    fn bracket_vanishes_on_and_below_the_diagonal(k in -2i64..5, p in 1i64..5) {
        let datum = datum_by_name("SP4", None).unwrap();
        let w = word(&datum, "-2,-1,-2,-1");
        if k != 0 && k >= p {
            prop_assert!(bracket(&datum, &w, k, p).is_zero());
        }
    }
}
