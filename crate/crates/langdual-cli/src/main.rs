//! `langdual`: command-line front end for root data, seeds, minors, potential
//! cones, crystals, the comparison map and the Poisson checks.

use clap::{Args, Parser, Subcommand, ValueEnum};
use langdual::groups::{factorization_chart, generalized_minor, word_seed, DoubleWord, Group};
use langdual::poisson::{
    build_skeleton, bs_lattice, corollary_vol_check, pt_setup, quantizability_check, synthetic_counterexample,
    verify_bs_duality, volume, PTVariety, TropPoissonVariety,
};
use langdual::potential::{
    bk_cone, bk_potential, comparison_matrix, format_inequality, small_dominant, verify_chart_independence,
    verify_cone_comparison_in, verify_crystal_axioms, verify_crystal_scaling, verify_scaling_identities, BKCone, Report,
};
use langdual::rootdata::WeylWord;
use langdual::{datum_by_name, Error, Isogeny, Q};
use serde_json::{json, Value};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "langdual", version, about = "Cluster, tropical and crystal computations for a group and its Langlands dual")]
struct Cli {
    /// Seed for every sampling-based check.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Args, Clone)]
struct GroupArgs {
    /// Group name: SL2, PSL2, SL3, SL4, B2 (= SO5), SO5, Spin5, C2, Sp4, ...
    #[arg(long)]
    group: String,
    /// Override the isogeny (sc or adjoint).
    #[arg(long)]
    isogeny: Option<Isogeny>,
}

#[derive(Args, Clone)]
struct WordArgs {
    #[command(flatten)]
    group: GroupArgs,
    /// Signed word such as -1,-2,-1,-2; defaults to a reduced word for (w_0, e).
    #[arg(long, allow_hyphen_values = true)]
    word: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Cartan matrix, symmetrizer, lattices and ψ.
    Rootdata(GroupArgs),
    /// The seed σ(𝐢) of a double reduced word, optionally mutated.
    Seed {
        #[command(flatten)]
        w: WordArgs,
        /// Mutation directions applied in order.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        at: Vec<i64>,
    },
    /// Mutates σ(𝐢) along the given directions.
    Mutate {
        #[command(flatten)]
        w: WordArgs,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        at: Vec<i64>,
    },
    /// Δ_{uω_i, vω_i} on the chart h·x_𝐢(t).
    Minor {
        #[command(flatten)]
        w: WordArgs,
        /// Weyl word for u, e.g. 1,2 (empty for e).
        #[arg(long, default_value = "")]
        u: String,
        #[arg(long, default_value = "")]
        v: String,
        #[arg(long)]
        i: usize,
    },
    /// The BK potential and its tropical forms.
    Potential {
        #[command(flatten)]
        w: WordArgs,
        #[arg(long)]
        json: bool,
    },
    /// Inequalities of the cone {Φ^t ≥ 0}.
    Cone {
        #[command(flatten)]
        w: WordArgs,
    },
    /// Points of the crystal fiber over λ^∨ (cocharacter-basis coordinates).
    Crystal {
        #[command(flatten)]
        w: WordArgs,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        fiber: Vec<i64>,
        #[arg(long)]
        dot: bool,
    },
    /// Image of a point under ψ_𝐢.
    Compare {
        #[command(flatten)]
        w: WordArgs,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        point: Vec<i64>,
    },
    /// The constant Poisson structure on PT(K*).
    Poisson {
        #[command(subcommand)]
        command: PoissonCommand,
    },
    /// Theorem checks; exits 1 on any discrepancy.
    Verify {
        #[arg(value_enum)]
        check: Check,
        #[command(flatten)]
        w: WordArgs,
        /// Sample count for sampling-based checks.
        #[arg(long, default_value_t = 2000)]
        samples: usize,
        /// Sampled points lie in [-bound, bound]^n.
        #[arg(long, default_value_t = 20)]
        bound: i64,
        /// Largest ω^∨-coordinate of the fibers that are enumerated.
        #[arg(long, default_value_t = 2)]
        fibers: i64,
        /// Minimal ω^∨-coordinate of the quantizability witness.
        #[arg(long, default_value_t = 1)]
        witness_bound: i64,
    },
}

#[derive(Subcommand)]
enum PoissonCommand {
    /// The bracket matrix B = D·B′.
    Bracket {
        #[command(flatten)]
        w: WordArgs,
    },
    /// The Bohr–Sommerfeld lattice over λ = ψ(λ^∨) (character-basis coordinates).
    Bs {
        #[command(flatten)]
        w: WordArgs,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        lambda: Vec<i64>,
        #[arg(long = "box", default_value_t = 12)]
        box_radius: i64,
    },
    /// Lattice counts over Nλ^∨ against the leading Weyl term.
    Volume {
        #[command(flatten)]
        w: WordArgs,
        /// λ^∨ in cocharacter-basis coordinates.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        lambda: Vec<i64>,
        #[arg(long = "N", default_value_t = 10)]
        n: i64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Check {
    All,
    Cones,
    Charts,
    Crystal,
    Sym,
    Lattices,
    Volumes,
    Quantizable,
}

/// Usage errors exit 2, failed theorem checks exit 1.
enum Failure {
    Usage(String),
    Theorem(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::TheoremSymViolation(_) => Failure::Theorem(json!({"error": e.to_string()})),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type CliResult = std::result::Result<(), Failure>;

fn group_of(a: &GroupArgs) -> Result<Group, Error> {
    Group::new(datum_by_name(&a.group, a.isogeny)?)
}

fn word_of(group: &Group, a: &WordArgs) -> Result<DoubleWord, Error> {
    match &a.word {
        Some(s) => DoubleWord::parse(&group.datum, s),
        None => Ok(DoubleWord::longest_negative(&group.datum)),
    }
}

fn setup(a: &WordArgs) -> Result<(Group, DoubleWord), Error> {
    let g = group_of(&a.group)?;
    let w = word_of(&g, a)?;
    Ok((g, w))
}

fn weyl_word(s: &str) -> Result<WeylWord, Error> {
    let letters = s
        .split(',')
        .filter(|x| !x.trim().is_empty())
        .map(|x| x.trim().parse::<usize>().map_err(|e| Error::Parse(format!("{x}: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(WeylWord::new(letters))
}

fn qs(v: &[Q]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn print(format: Format, value: &Value, text: impl FnOnce() -> String) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(value).unwrap()),
        _ => print!("{}", text()),
    }
}

fn cone_for(g: &Group, w: &DoubleWord) -> Result<BKCone, Error> {
    Ok(bk_cone(&bk_potential(g, w)?))
}

fn report_json(r: &Report, seed: u64) -> Value {
    json!({
        "check": r.check,
        "status": if r.passed() { "pass" } else { "fail" },
        "samples": r.samples,
        "seed": seed,
        "counterexamples": r.counterexamples,
        "notes": r.notes,
    })
}

fn run(cli: &Cli) -> CliResult {
    let fmt = cli.format;
    match &cli.command {
        Command::Rootdata(a) => {
            let g = group_of(a)?;
            let v = g.datum.to_json();
            print(fmt, &v, || format!("{}\n", serde_json::to_string_pretty(&v).unwrap()));
        }
        Command::Seed { w, at } | Command::Mutate { w, at } => {
            let (g, w) = setup(w)?;
            let s = word_seed(&g.datum, &w)?.mutate_path(at)?;
            let v = s.to_json();
            print(fmt, &v, || format!("{}\n", serde_json::to_string(&v).unwrap()));
        }
        Command::Minor { w, u, v, i } => {
            let (g, w) = setup(w)?;
            let z = factorization_chart(&g, &w)?;
            let p = generalized_minor(&g, &weyl_word(u)?, &weyl_word(v)?, *i, &z)?;
            let val = json!({"minor": p.to_string(), "vars": p.vars().as_slice()});
            print(fmt, &val, || format!("{p}\n"));
        }
        Command::Potential { w, json: as_json } => {
            let (g, w) = setup(w)?;
            let pot = bk_potential(&g, &w)?;
            let forms: Vec<Vec<i64>> = pot.tropical_forms().into_iter().map(|f| f.coeffs).collect();
            let terms: Vec<Value> = (1..=pot.rank())
                .map(|i| json!({"i": i, "p": pot.p[i - 1].to_string(), "q": pot.weighted_q(i).to_string()}))
                .collect();
            let v = json!({"group": g.datum.name(), "word": w.letters, "potential": pot.total.to_string(), "terms": terms, "tropical_forms": forms});
            let f = if *as_json { Format::Json } else { fmt };
            print(f, &v, || format!("{}\n", pot.total));
        }
        Command::Cone { w } => {
            let (g, w) = setup(w)?;
            let cone = cone_for(&g, &w)?;
            let v = serde_json::to_value(&cone).unwrap();
            print(fmt, &v, || cone.inequalities.iter().map(|r| format_inequality(&cone, r) + "\n").collect());
        }
        Command::Crystal { w, fiber, dot } => {
            let (g, w) = setup(w)?;
            let cone = cone_for(&g, &w)?;
            if *dot || fmt == Format::Dot {
                print!("{}", cone.fiber_dot(fiber)?);
                return Ok(());
            }
            let mut rows = vec![];
            for p in cone.fiber_enumerate(fiber)? {
                let st = cone.crystal_stats(&p)?;
                rows.push(json!({"point": p, "wt": qs(&st.wt), "epsilon": st.epsilon, "phi": st.phi}));
            }
            let v = json!({"fiber": fiber, "size": rows.len(), "points": rows});
            print(fmt, &v, || {
                rows.iter().map(|r| format!("{} wt={} eps={} phi={}\n", r["point"], r["wt"], r["epsilon"], r["phi"])).collect()
            });
        }
        Command::Compare { w, point } => {
            let (g, w) = setup(w)?;
            let m = comparison_matrix(&g.datum, &w)?;
            if point.len() != m.len() {
                return Err(Error::ArityMismatch { expected: m.len(), got: point.len() }.into());
            }
            let y: Vec<i64> = m.iter().map(|row| row.iter().zip(point).map(|(a, b)| a * b).sum()).collect();
            let v = json!({"point": point, "image": y});
            print(fmt, &v, || format!("{}\n", y.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")));
        }
        Command::Poisson { command } => poisson(fmt, command)?,
        Command::Verify { check, w, samples, bound, fibers, witness_bound } => {
            let reports = verify(*check, w, *samples, *bound, *fibers, *witness_bound, cli.seed)?;
            let all: Vec<Value> = reports.iter().map(|r| report_json(r, cli.seed)).collect();
            let v = Value::Array(all);
            print(fmt, &v, || {
                reports
                    .iter()
                    .map(|r| {
                        let head = format!("{} {} ({} samples)", if r.passed() { "PASS" } else { "FAIL" }, r.check, r.samples);
                        let bad: String = r.counterexamples.iter().take(5).map(|c| format!("\n  {c}")).collect();
                        head + &bad + "\n"
                    })
                    .collect()
            });
            if reports.iter().any(|r| !r.passed()) {
                return Err(Failure::Theorem(v));
            }
        }
    }
    Ok(())
}

fn poisson(fmt: Format, command: &PoissonCommand) -> CliResult {
    match command {
        PoissonCommand::Bracket { w } => {
            let (g, w) = setup(w)?;
            let s = build_skeleton(&g.datum, &w)?;
            let b: Vec<Vec<String>> = s.b.iter().map(|r| qs(r)).collect();
            let v = json!({"rows": s.rows, "B": b, "D": qs(&s.d), "B_prime": s.b_prime, "casimirs": s.casimirs});
            print(fmt, &v, || {
                let mut out = format!("rows (by k+): {:?}\nB:\n", s.rows);
                for r in &b {
                    out += &format!("  {}\n", r.join(" "));
                }
                out += &format!("D: {}\nB':\n", qs(&s.d).join(" "));
                for r in &s.b_prime {
                    out += &format!("  {r:?}\n");
                }
                out + &format!("casimirs: {:?}\n", s.casimirs)
            });
        }
        PoissonCommand::Bs { w, lambda, box_radius } => {
            let (g, w) = setup(w)?;
            let (skel, chart, dual) = pt_setup(&g, &w)?;
            let lat = bs_lattice(&skel, &chart, lambda, *box_radius)?;
            let rep = verify_bs_duality(&skel, &chart, &dual, lambda, *box_radius)?;
            let pts: Vec<Vec<String>> = lat.points.iter().map(|p| qs(p)).collect();
            let v = json!({"labels": skel.labels, "lambda_vee": lat.label, "base": qs(&lat.base), "points": pts, "duality": report_json(&rep, 0)});
            print(fmt, &v, || {
                let mut out = format!("lambda_vee {:?}, base {}\n", lat.label, qs(&lat.base).join(","));
                for p in &pts {
                    out += &format!("{}\n", p.join(","));
                }
                out + &format!("duality: {}\n", if rep.passed() { "pass" } else { "fail" })
            });
            if !rep.passed() {
                return Err(Failure::Theorem(v));
            }
        }
        PoissonCommand::Volume { w, lambda, n } => {
            let (g, w) = setup(w)?;
            let skel = build_skeleton(&g.datum, &w)?;
            let cone = cone_for(&g, &w)?;
            let dual = cone_for(&g.langlands_dual()?, &w)?;
            let rows = volume(&skel, &cone, &dual, lambda, *n)?;
            let vals: Vec<Value> = rows
                .iter()
                .map(|r| json!({"N": r.n, "count": r.count, "weyl_product": r.weyl_product.to_string(), "ratio": ratio_f64(&r.ratio)}))
                .collect();
            let v = Value::Array(vals);
            print(fmt, &v, || {
                rows.iter()
                    .map(|r| format!("N={} count={} weyl={} ratio={:.6}\n", r.n, r.count, r.weyl_product, ratio_f64(&r.ratio)))
                    .collect()
            });
        }
    }
    Ok(())
}

fn ratio_f64(r: &Q) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

#[allow(clippy::too_many_arguments)]
fn verify(
    check: Check,
    a: &WordArgs,
    samples: usize,
    bound: i64,
    fibers: i64,
    witness_bound: i64,
    seed: u64,
) -> Result<Vec<Report>, Error> {
    let (g, w) = setup(a)?;
    let dg = g.langlands_dual()?;
    let pot = bk_potential(&g, &w)?;
    let cone = bk_cone(&pot);
    let dual_pot = bk_potential(&dg, &w)?;
    let dual = bk_cone(&dual_pot);
    let psi = comparison_matrix(&g.datum, &w)?;
    let want = |c: Check| check == Check::All || check == c;
    let mut out = vec![];
    let lambdas = small_dominant(&cone, fibers);
    if want(Check::Cones) {
        out.push(verify_cone_comparison_in(&cone, &dual, &psi, (-bound, bound), samples, seed)?);
        out.push(verify_scaling_identities(&pot, &dual_pot, samples.min(500), seed)?);
        let mut rep = Report::new("fiber_counts");
        for l in &lambdas {
            let n = cone.fiber_enumerate(l)?.len();
            let dim = dg.datum.weyl_dim(&cone.h_coweight(l))?;
            rep.samples += 1;
            if Q::from_integer(n.into()) != dim {
                rep.counterexamples.push(format!("{l:?}: {n} points, dual dimension {dim}"));
            }
        }
        out.push(rep);
    }
    if want(Check::Charts) {
        out.push(verify_chart_independence(&g, &dg, &w, samples, seed)?);
    }
    if want(Check::Crystal) {
        let mut axioms = Report::new("crystal_axioms");
        let mut scaling = Report::new("crystal_scaling");
        for l in &lambdas {
            merge(&mut axioms, verify_crystal_axioms(&cone, l)?);
            merge(&mut scaling, verify_crystal_scaling(&cone, &dual, &psi, l)?);
        }
        out.push(axioms);
        out.push(scaling);
    }
    if want(Check::Sym) {
        let mut rep = Report::new("bracket_factorization");
        for u in g.datum.reduced_words_of_w0() {
            let ww = DoubleWord::new(&g.datum, u.letters.iter().map(|&i| -(i as i64)).collect())?;
            rep.samples += 1;
            if let Err(e) = build_skeleton(&g.datum, &ww) {
                rep.counterexamples.push(e.to_string());
            }
        }
        out.push(rep);
    }
    if want(Check::Lattices) {
        let (skel, chart, dchart) = pt_setup(&g, &w)?;
        let mut rep = Report::new("bs_duality");
        for l in &lambdas {
            let image: Vec<i64> = psi[..g.rank()].iter().map(|row| row.iter().zip(l).map(|(a, b)| a * b).sum()).collect();
            merge(&mut rep, verify_bs_duality(&skel, &chart, &dchart, &image, 12)?);
        }
        out.push(rep);
    }
    if want(Check::Volumes) {
        let r = g.rank();
        let rho = vec![Q::from_integer(1.into()); r];
        let two_rho = vec![Q::from_integer(2.into()); r];
        out.push(corollary_vol_check(&g.datum, &[rho, two_rho])?);
        let mut den = Report::new("denominator_identity");
        den.samples = 1;
        if !g.datum.denominator_identity_check() {
            den.counterexamples.push(format!("{:?}", g.datum.denominator_products()));
        }
        out.push(den);
    }
    if want(Check::Quantizable) {
        let (skel, chart, _) = pt_setup(&g, &w)?;
        let mut rep = Report::new("quantizability");
        let v = PTVariety { skeleton: &skel, chart: &chart };
        let floor = Q::from_integer(witness_bound.into());
        let witness = small_dominant(&cone, 2 * witness_bound.max(1) + 2)
            .into_iter()
            .filter(|l| v.fundamental_coords(l).iter().all(|c| *c >= floor))
            .min_by_key(|l| l.iter().map(|x| x.abs()).sum::<i64>())
            .ok_or_else(|| Error::InconclusiveWitness(format!("no witness with coordinates at least {witness_bound}")))?;
        rep.samples = 2;
        if !quantizability_check(&v, &witness, witness_bound)? {
            rep.counterexamples.push(format!("PT(K*) fails on the fiber over {witness:?}"));
        }
        if quantizability_check(&synthetic_counterexample(), &[3], 1)? {
            rep.counterexamples.push("synthetic counterexample passed".into());
        }
        out.push(rep);
    }
    Ok(out)
}

fn merge(into: &mut Report, r: Report) {
    into.samples += r.samples;
    into.counterexamples.extend(r.counterexamples);
    into.notes.extend(r.notes);
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Theorem(v)) => {
            if cli.format != Format::Json {
                eprintln!("{}", serde_json::to_string(&v).unwrap());
            }
            ExitCode::from(1)
        }
    }
}
