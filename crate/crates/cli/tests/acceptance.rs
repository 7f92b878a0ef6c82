//! Acceptance gate: one line per criterion, nonzero exit if any fails.

use std::panic;
use std::sync::Arc;
use std::time::{Duration, Instant};

use anyhow::{bail, ensure, Context, Result};
use bohrcheck::args::{Format, GlobalArgs};
use bohrcheck::commands::{liecheck, soundness, Corpus};
use bohrcheck::{fixtures, run, Cli};
use bohrcheck_core::amalgam::{
    bohr_lipschitz_check, eval_hom, split_decomposition_check, AmalgamSpec, AmalgamWord, Letter, LengthFunction,
    PermutationRep, Pseudometric,
};
use bohrcheck_core::character::{clifford_multiplicity, equalizer_witness, RestrictionTable};
use bohrcheck_core::group::{cyclic, cyclic_named, direct_product, heisenberg, symmetric, FiniteGroup, GroupHom};
use bohrcheck_core::lie::torus2_automorphism_family_witness;
use bohrcheck_core::zmat::{char_orbit, minkowski_bound, IntMatrix};
use clap::Parser;
use nalgebra::DMatrix;
use num::{Rational64, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

fn global() -> GlobalArgs {
    GlobalArgs {
        format: Format::Json,
        seed: 0,
        cap: 100_000,
        cache_dir: None,
        no_cache: true,
    }
}

fn cli_json(args: &[&str]) -> Result<(Value, u8)> {
    let cli = Cli::try_parse_from(std::iter::once("bohrcheck").chain(args.iter().copied()))?;
    let out = run(&cli)?;
    Ok((out.json, out.code))
}

fn torus_collapse() -> Result<String> {
    let out = soundness("notemb", &global())?;
    ensure!(out.json["verdict"] == "unsound", "verdict {}", out.json["verdict"]);
    ensure!(out.json["criterion"] == "joint-action-finiteness");
    ensure!(out.code == 0);
    let bound = minkowski_bound(2)?;
    ensure!(bound == 24, "bound {bound}");
    let (a, _) = cli_json(&["zmat", "finiteness", "[[0,-1],[1,0]]"])?;
    let (b, _) = cli_json(&["zmat", "finiteness", "[[0,-1],[1,1]]"])?;
    let (ab, _) = cli_json(&["zmat", "finiteness", "[[0,-1],[1,0]]", "[[0,-1],[1,1]]"])?;
    ensure!(a["order"] == 4 && b["order"] == 6, "orders {} {}", a["order"], b["order"]);
    ensure!(ab["finite"] == false);
    let count = ab["witness_count"].as_u64().context("witness count")?;
    ensure!(count > bound, "{count} elements");
    Ok(format!("orders 4 and 6, joint group has more than {bound} elements"))
}

fn heisenberg_profile() -> Result<String> {
    let z2 = Arc::new(cyclic(2)?);
    let mut profile = Vec::new();
    for i in 1..=3u32 {
        let h = heisenberg(i)?;
        let emb = GroupHom::new(z2.clone(), h.group.clone(), vec![0, h.central_involution()])?;
        let rt = RestrictionTable::new(&emb)?;
        let sign = (0..rt.h_table().len())
            .find(|&r| rt.h_table().row(r).iter().any(|&v| v != 1))
            .context("nontrivial character of Z/2")?;
        let expected = 1u64 << i;
        let mut square_sum = 0u64;
        for pi in 0..rt.g_table().len() {
            if rt.multiplicity(pi, sign) > 0 {
                let d = rt.g_table().degree(pi);
                ensure!(d == expected, "heisenberg({i}): irreducible {pi} has degree {d}");
                ensure!(rt.multiplicity(pi, 0) == 0, "heisenberg({i}): {pi} is not central-character pure");
                square_sum += d * d;
            }
        }
        ensure!(square_sum == h.group.order() as u64 / 2, "heisenberg({i}): degrees miss part of the group");
        let m = clifford_multiplicity(sign, &emb)?;
        ensure!(m == expected, "heisenberg({i}): multiplicity {m}");
        profile.push(m);
    }
    let out = soundness("heis", &global())?;
    ensure!(out.json["verdict"] == "unknown_prefix_only" && out.code == 2);
    ensure!(out.json["certificate"]["growing"] == serde_json::json!([1]));
    Ok(format!("multiplicities {profile:?}, flagged growing"))
}

fn equalizer_dichotomy() -> Result<String> {
    let corpus = Corpus::load("corpus")?;
    let (mut checked, mut groups) = (0usize, 0usize);
    for g in &corpus.groups {
        let group = g.group.build()?;
        groups += 1;
        for sub in group.all_subgroups()? {
            if sub.order() == group.order() {
                continue;
            }
            let (_, emb) = sub.materialize(&group)?;
            let w = equalizer_witness(&emb).with_context(|| format!("{} subgroup {:?}", g.name, sub.elements()))?;
            let rt = RestrictionTable::new(&emb)?;
            ensure!(w.verify(&rt), "{}: witness {w:?} does not verify", g.name);
            checked += 1;
        }
    }
    Ok(format!("{checked} proper subgroups of {groups} groups"))
}

fn sl2z_random_word(spec: &AmalgamSpec, rng: &mut ChaCha8Rng) -> Vec<Letter> {
    let n = rng.gen_range(0..=8);
    (0..n)
        .map(|_| {
            let f = rng.gen_range(0..2);
            Letter::new(f, rng.gen_range(0..spec.factor(f).order()))
        })
        .collect()
}

/// Rewrites keeping the element and a length of at most 8: trading `a^2`
/// for `b^3`, multiplying two letters by the central involution, merging
/// neighbours and splitting a letter.
fn sl2z_rewrite(spec: &AmalgamSpec, w: &[Letter], rng: &mut ChaCha8Rng) -> Vec<Letter> {
    let involution = [2usize, 3usize];
    let mut l = w.to_vec();
    for _ in 0..rng.gen_range(1..=3) {
        match rng.gen_range(0..4) {
            0 => {
                if let Some(k) = (0..l.len()).find(|&k| l[k].element == involution[l[k].factor]) {
                    let other = 1 - l[k].factor;
                    l[k] = Letter::new(other, involution[other]);
                }
            }
            1 if l.len() >= 2 => {
                for _ in 0..2 {
                    let k = rng.gen_range(0..l.len());
                    let g = spec.factor(l[k].factor);
                    l[k].element = g.mul(l[k].element, involution[l[k].factor]);
                }
            }
            2 => {
                if let Some(k) = (1..l.len()).find(|&k| l[k].factor == l[k - 1].factor) {
                    let g = spec.factor(l[k].factor);
                    l[k - 1].element = g.mul(l[k - 1].element, l[k].element);
                    l.remove(k);
                }
            }
            _ if !l.is_empty() && l.len() < 8 => {
                let k = rng.gen_range(0..l.len());
                let g = spec.factor(l[k].factor);
                let a = rng.gen_range(0..g.order());
                let rest = g.mul(g.inv(a), l[k].element);
                l.splice(k..=k, [Letter::new(l[k].factor, a), Letter::new(l[k].factor, rest)]);
            }
            _ => {}
        }
    }
    l
}

fn sl2z_consistency() -> Result<String> {
    let spec = fixtures::load::<bohrcheck::amalgam_input::AmalgamInput>("sl2z")?.build()?;
    let targets = fixtures::load::<bohrcheck::amalgam_input::TargetsInput>("sl2z-matrices")?.build(&spec)?;
    let bohrcheck::amalgam_input::Targets::Matrix(t, images) = targets else {
        bail!("matrix targets expected");
    };
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut equal, mut total) = (0, 0);
    for k in 0..500 {
        let w = sl2z_random_word(&spec, &mut rng);
        let w2 = if k % 2 == 0 {
            sl2z_random_word(&spec, &mut rng)
        } else {
            sl2z_rewrite(&spec, &w, &mut rng)
        };
        ensure!(w.len() <= 8 && w2.len() <= 8);
        let (w, w2) = (AmalgamWord::new(w), AmalgamWord::new(w2));
        let same = spec.word_equal(&w, &w2)?;
        let matrices_equal = eval_hom(&spec, &w, &t, &images)? == eval_hom(&spec, &w2, &t, &images)?;
        ensure!(
            same == matrices_equal,
            "{} vs {}: word_equal {same}, matrices {matrices_equal}",
            spec.format_word(&w),
            spec.format_word(&w2)
        );
        equal += usize::from(same);
        total += 1;
    }
    ensure!(equal >= 200 && total - equal >= 150, "{equal} equal pairs of {total}");
    Ok(format!("{total} pairs, {equal} equal"))
}

fn pushout_intersection() -> Result<String> {
    let spec = fixtures::load::<bohrcheck::amalgam_input::AmalgamInput>("sl2z")?.build()?;
    let r = spec.intersection_check()?;
    ensure!(r.holds && r.intersection_order == 2, "{r:?}");
    Ok("intersection of order 2".into())
}

fn small_groups() -> Result<Vec<Arc<FiniteGroup>>> {
    let z2 = cyclic(2)?;
    Ok(vec![
        Arc::new(cyclic(1)?),
        Arc::new(z2.clone()),
        Arc::new(cyclic(3)?),
        Arc::new(cyclic(4)?),
        Arc::new(direct_product(&z2, &z2)?),
    ])
}

/// Lengths pulled back from permutation representations: the regular one,
/// and for order 4 a non-faithful one through a quotient of order 2.
fn representation_lengths(g: &Arc<FiniteGroup>) -> Result<Vec<LengthFunction>> {
    let mut out = vec![LengthFunction::moved_points(&PermutationRep::regular(g.clone(), 0))];
    if g.order() == 4 {
        // elements 1 and 3 are the odd ones in both Z/4 and Z/2 x Z/2
        let images = (0..4).map(|x| if x % 2 == 1 { vec![1, 0] } else { vec![0, 1] }).collect();
        out.push(LengthFunction::moved_points(&PermutationRep::new(g.clone(), images)?));
    }
    Ok(out)
}

fn reduces_to_identity(groups: &[Arc<FiniteGroup>], letters: &[(usize, usize)]) -> bool {
    let mut stack: Vec<(usize, usize)> = Vec::new();
    for &(f, e) in letters {
        if e == 0 {
            continue;
        }
        match stack.last_mut() {
            Some(top) if top.0 == f => {
                top.1 = groups[f].mul(top.1, e);
                if top.1 == 0 {
                    stack.pop();
                }
            }
            _ => stack.push((f, e)),
        }
    }
    stack.is_empty()
}

/// Minimum of `sum l(g_i e_i^-1)` over all tuples `(e_i)` with `prod e_i = 1`.
fn exhaustive(groups: &[Arc<FiniteGroup>], lengths: &[LengthFunction], w: &[(usize, usize)]) -> Rational64 {
    let mut best: Option<Rational64> = None;
    let mut choice = vec![0usize; w.len()];
    loop {
        let tuple: Vec<(usize, usize)> = w.iter().zip(&choice).map(|(&(f, _), &e)| (f, e)).collect();
        if reduces_to_identity(groups, &tuple) {
            let cost = w
                .iter()
                .zip(&choice)
                .fold(Rational64::zero(), |acc, (&(f, g), &e)| acc + lengths[f].distance(g, e));
            best = Some(best.map_or(cost, |b| b.min(cost)));
        }
        let mut k = 0;
        loop {
            if k == w.len() {
                return best.expect("the all-identity tuple qualifies");
            }
            choice[k] += 1;
            if choice[k] < groups[w[k].0].order() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

fn words_up_to(alphabet: &[(usize, usize)], max_len: usize) -> Vec<Vec<(usize, usize)>> {
    let mut all = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| {
                alphabet.iter().map(move |&l| {
                    let mut w: Vec<(usize, usize)> = w.clone();
                    w.push(l);
                    w
                })
            })
            .collect();
        all.extend(layer.iter().cloned());
    }
    all
}

/// Calls `visit(spec, groups, lengths, words, discrete)` for every pair of
/// groups of order at most 4 and every length family.
fn sweep(
    mut visit: impl FnMut(&AmalgamSpec, &[Arc<FiniteGroup>], &[LengthFunction], &[Vec<(usize, usize)>], bool) -> Result<()>,
) -> Result<usize> {
    let groups = small_groups()?;
    let mut words_seen = 0;
    for i in 0..groups.len() {
        for j in i..groups.len() {
            let pair = vec![groups[i].clone(), groups[j].clone()];
            let spec = AmalgamSpec::coproduct(pair.clone(), vec!["P".into(), "Q".into()])?;
            let alphabet: Vec<(usize, usize)> =
                (0..2).flat_map(|f| (0..pair[f].order()).map(move |e| (f, e))).collect();
            let words = words_up_to(&alphabet, 4);
            let mut families = vec![(
                vec![LengthFunction::discrete(pair[0].clone()), LengthFunction::discrete(pair[1].clone())],
                true,
            )];
            for a in representation_lengths(&pair[0])? {
                for b in representation_lengths(&pair[1])? {
                    families.push((vec![a.clone(), b], false));
                }
            }
            for (lengths, discrete) in &families {
                visit(&spec, &pair, lengths, &words, *discrete)?;
                words_seen += words.len();
            }
        }
    }
    Ok(words_seen)
}

fn pseudometric_oracle() -> Result<String> {
    let n = sweep(|spec, groups, lengths, words, _| {
        let metric = Pseudometric::new(spec, lengths.to_vec())?;
        for w in words {
            let dp = metric.value(&AmalgamWord::from_pairs(w))?;
            let oracle = exhaustive(groups, lengths, w);
            ensure!(dp == oracle, "word {w:?}: dynamic program {dp}, exhaustive {oracle}");
        }
        Ok(())
    })?;
    Ok(format!("{n} word evaluations agree"))
}

fn permutation_matrix(perm: &[usize]) -> DMatrix<f64> {
    DMatrix::from_fn(perm.len(), perm.len(), |i, j| if perm[j] == i { 1.0 } else { 0.0 })
}

fn image_matrix(reps: &[PermutationRep], w: &AmalgamWord) -> DMatrix<f64> {
    let d = reps[0].degree();
    w.letters
        .iter()
        .fold(DMatrix::identity(d, d), |acc, l| acc * permutation_matrix(reps[l.factor].image(l.element)))
}

fn lipschitz_bound() -> Result<String> {
    let s3 = Arc::new(symmetric(3)?);
    let z4 = Arc::new(cyclic_named(4, "a")?);
    let spec = AmalgamSpec::coproduct(vec![s3.clone(), z4.clone()], vec!["S".into(), "Z".into()])?;
    let reps = vec![PermutationRep::regular(s3, 0), PermutationRep::regular(z4, 2)];
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut pairs = 0;
    let mut attempts = 0;
    while pairs < 200 {
        attempts += 1;
        ensure!(attempts < 10_000, "could not find 200 pairs with distance below 1");
        let n = rng.gen_range(0..=5);
        let w: Vec<Letter> = (0..n)
            .map(|_| {
                let f = rng.gen_range(0..2);
                Letter::new(f, rng.gen_range(0..spec.factor(f).order()))
            })
            .collect();
        let mut w2 = w.clone();
        for _ in 0..rng.gen_range(0..=2) {
            let f = rng.gen_range(0..2);
            let g = spec.factor(f);
            let a = rng.gen_range(0..g.order());
            let at = rng.gen_range(0..=w2.len());
            w2.splice(at..at, [Letter::new(f, a), Letter::new(f, g.inv(a))]);
        }
        if rng.gen_bool(0.3) {
            let f = rng.gen_range(0..2);
            let at = rng.gen_range(0..=w2.len());
            w2.insert(at, Letter::new(f, rng.gen_range(1..spec.factor(f).order())));
        }
        let (w, w2) = (AmalgamWord::new(w), AmalgamWord::new(w2));
        let rec = bohr_lipschitz_check(&spec, &reps, &w, &w2)?;
        if rec.delta >= Rational64::from_integer(1) {
            continue;
        }
        let delta = *rec.delta.numer() as f64 / *rec.delta.denom() as f64;
        let diff = image_matrix(&reps, &w) - image_matrix(&reps, &w2);
        let norm = diff.singular_values().max();
        let bound = delta / (1.0 - delta) + 1e-9;
        ensure!(norm <= bound, "norm {norm} exceeds {bound} (delta {})", rec.delta);
        ensure!(rec.norm <= bound && rec.telescoping_holds, "{rec:?}");
        pairs += 1;
    }
    Ok(format!("{pairs} pairs within the bound ({attempts} sampled)"))
}

fn discreteness() -> Result<String> {
    let mut nontrivial = 0usize;
    sweep(|spec, _, lengths, words, discrete| {
        if !discrete {
            return Ok(());
        }
        let metric = Pseudometric::new(spec, lengths.to_vec())?;
        for w in words {
            let w = AmalgamWord::from_pairs(w);
            if !spec.normal_form(&w)?.is_identity() {
                let d = metric.value(&w)?;
                ensure!(d >= Rational64::from_integer(1), "{} at distance {d}", spec.format_word(&w));
                nontrivial += 1;
            }
        }
        Ok(())
    })?;
    Ok(format!("{nontrivial} nontrivial words at distance >= 1"))
}

fn abelian_order(v: &Value) -> Result<u64> {
    v["invariant_factors"]
        .as_array()
        .context("invariant factors")?
        .iter()
        .map(|d| d.as_u64().context("factor"))
        .product()
}

fn lie_checker() -> Result<String> {
    let abc = |v: &Value| {
        let c = &v["conditions"];
        (c["no_central_2torus"].clone(), c["dual_rank_le_1"].clone(), c["aut_compact"].clone())
    };
    let limit = Duration::from_secs(1);
    let timed = |name: &str| -> Result<Value> {
        let start = Instant::now();
        let out = liecheck(name)?;
        ensure!(start.elapsed() < limit, "{name} took {:?}", start.elapsed());
        Ok(out.json)
    };
    let su2 = timed("su2")?;
    ensure!(abc(&su2) == (true.into(), true.into(), true.into()), "su2 conditions {:?}", abc(&su2));
    let t2 = timed("bare-torus")?;
    ensure!(abc(&t2) == (false.into(), false.into(), false.into()), "torus conditions {:?}", abc(&t2));
    ensure!(t2["largest_compact"]["verdict"] == "no_largest");
    let mut sizes = Vec::new();
    for (name, k, l) in [("lgstcpct", 3, 2), ("lgstcpct-4-2", 4, 2), ("lgstcpct-4-3", 4, 3)] {
        let v = timed(name)?;
        ensure!(abc(&v) == (false.into(), false.into(), false.into()), "{name} conditions {:?}", abc(&v));
        let report = &v["largest_compact"];
        ensure!(report["verdict"] == "has_largest", "{name}: {}", report["verdict"]);
        let glue = abelian_order(&report["delta0"])?;
        ensure!(glue == 3u64.pow(k + l - 1), "{name}: glue order {glue}");
        let mut largest_finite = 0;
        for c in report["classes"].as_array().context("classes")? {
            ensure!(c["embeds"] == false, "{name}: class {} admits the glue", c["representative"]);
            if c["fixed"]["circle_rank"] == 0 {
                let size = abelian_order(&c["fixed"]["torsion"])?;
                ensure!(size <= 4, "{name}: fixed subgroup of order {size}");
                largest_finite = largest_finite.max(size);
            }
        }
        sizes.push(format!("{largest_finite} vs {glue}"));
    }
    Ok(format!("fixed sizes vs glue: {}", sizes.join(", ")))
}

fn torsion_witnesses() -> Result<String> {
    let m = |rows: &[&[i64]]| IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>());
    let a = m(&[&[0, 1], &[-1, -1]])?;
    let i2 = IntMatrix::identity(2);
    let alpha = IntMatrix::block_diag(&[&a, &a]);
    let b1 = IntMatrix::block_diag(&[&-&i2, &i2]);
    let b2 = m(&[&[1, 0, 1, 0], &[0, 1, 0, 1], &[0, 0, 1, 0], &[0, 0, 0, 1]])?;
    let fam = torus2_automorphism_family_witness(&alpha, &b1, &b2, 20)?;
    ensure!(fam.witnesses.len() == 21 && !fam.degenerate, "{} witnesses", fam.witnesses.len());
    for (i, w) in fam.witnesses.iter().enumerate() {
        ensure!(!w.is_identity() && (w * w).is_identity(), "witness {i} does not have order 2");
        ensure!(w.commutes_with(&alpha), "witness {i} does not commute");
        ensure!(fam.witnesses[..i].iter().all(|x| x != w), "witness {i} repeats");
    }
    Ok("21 distinct involutions".into())
}

fn split_decomposition() -> Result<String> {
    let h = Arc::new(cyclic(2)?);
    let z3 = Arc::new(cyclic(3)?);
    let inversion = vec![vec![0, 1, 2], vec![0, 2, 1]];
    let report = split_decomposition_check(&h, &[(z3.clone(), inversion.clone()), (z3, inversion)], 200, 0)?;
    ensure!(report.passed && report.agreements == 200, "{report:?}");
    let fixtures = ["split-inversion", "split-torus-cycles", "split-mixed-kernels"];
    for name in fixtures {
        let out = soundness(name, &global())?;
        ensure!(out.json["verdict"] == "sound", "{name}: {}", out.json["verdict"]);
    }
    // the torus members see orbits of the first character growing with p
    let mut orbits = Vec::new();
    for p in [2usize, 3, 5] {
        let cycle = IntMatrix::permutation(&(0..p).map(|i| (i + 1) % p).collect::<Vec<_>>());
        let mut v = vec![0; p];
        v[0] = 1;
        orbits.push(char_orbit(&v, &[cycle], 1000)?.size().context("finite orbit")?);
    }
    ensure!(orbits == [2, 3, 5], "{orbits:?}");
    Ok(format!("200/200 samples, {} fixtures sound, orbits {orbits:?}", fixtures.len()))
}

fn orbit_obstruction() -> Result<String> {
    let out = soundness("orbit-cycles", &global())?;
    let report = &out.json["certificate"]["report"];
    ensure!(report["orbit_sizes"] == serde_json::json!([2, 3, 5, 7]), "{}", report["orbit_sizes"]);
    ensure!(report["growing"] == true);
    ensure!(out.code == 2);
    Ok("orbit sizes [2, 3, 5, 7], growing".into())
}

struct Criterion {
    number: u32,
    name: &'static str,
    limit: Option<Duration>,
    check: fn() -> Result<String>,
}

const fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

const CRITERIA: &[Criterion] = &[
    Criterion { number: 1, name: "torus collapse", limit: secs(1), check: torus_collapse },
    Criterion { number: 2, name: "heisenberg profile", limit: secs(30), check: heisenberg_profile },
    Criterion { number: 3, name: "equalizer dichotomy", limit: None, check: equalizer_dichotomy },
    Criterion { number: 4, name: "amalgam matrix consistency", limit: secs(5), check: sl2z_consistency },
    Criterion { number: 5, name: "pushout intersection", limit: None, check: pushout_intersection },
    Criterion { number: 6, name: "pseudometric oracle", limit: secs(60), check: pseudometric_oracle },
    Criterion { number: 7, name: "lipschitz bound", limit: None, check: lipschitz_bound },
    Criterion { number: 8, name: "discreteness", limit: None, check: discreteness },
    Criterion { number: 9, name: "lie checker", limit: None, check: lie_checker },
    Criterion { number: 10, name: "order-2 torsion witnesses", limit: None, check: torsion_witnesses },
    Criterion { number: 11, name: "split decomposition", limit: None, check: split_decomposition },
    Criterion { number: 12, name: "orbit obstruction", limit: None, check: orbit_obstruction },
];

fn main() {
    panic::set_hook(Box::new(|_| {}));
    let mut failures = 0;
    for c in CRITERIA {
        let start = Instant::now();
        let outcome = panic::catch_unwind(c.check).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(anyhow::anyhow!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|detail| match c.limit {
            Some(limit) if elapsed > limit => bail!("{detail}; took {elapsed:.2?}, limit {limit:?}"),
            _ => Ok(detail),
        });
        match outcome {
            Ok(detail) => println!("criterion {:>2} ({}): PASS [{elapsed:.2?}] {detail}", c.number, c.name),
            Err(e) => {
                failures += 1;
                println!("criterion {:>2} ({}): FAIL [{elapsed:.2?}] {e:#}", c.number, c.name);
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", CRITERIA.len() - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
