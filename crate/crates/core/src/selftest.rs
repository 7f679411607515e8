//! The acceptance suite over the built-in models, shared by `cu-lattice selftest` and
//! the `acceptance` test target. Every criterion reports its individual checks; nothing
//! here is tuned to pass, so a failing check means what it says.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::axioms::{self, Axiom, SampleConfig};
use crate::cone::{self, Functional, FunctionalCone};
use crate::error::Error;
use crate::ext::{rat, ExtNat, ExtRational, Rational};
use crate::fixtures;
use crate::grid::{self, refinement_witness, verify_refinement};
use crate::halving::{self, Halving};
use crate::lattice;
use crate::model::{CuModel, Element};
use crate::real::{self, add, leq_r, scale, NamedCheck, RealContext, RealElement};
use crate::report::RunReport;

#[derive(Clone, Debug, Serialize)]
pub struct Config {
    pub seed: u64,
    pub trials: usize,
    pub denominator_bound: u32,
    pub compare_pairs: usize,
    pub lattice_samples: usize,
    pub property_cases: usize,
    pub force: bool,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            seed: 0,
            trials: 1000,
            denominator_bound: grid::DEFAULT_DENOMINATOR_BOUND,
            compare_pairs: 500,
            lattice_samples: 200,
            property_cases: 500,
            force: false,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Criterion {
    pub id: u8,
    pub name: &'static str,
    pub pass: bool,
    pub summary: String,
    pub checks: Vec<NamedCheck>,
}

impl Criterion {
    fn new(id: u8, name: &'static str, checks: Vec<NamedCheck>) -> Self {
        let failed = checks.iter().filter(|c| !c.pass).count();
        let summary = if failed == 0 {
            format!("{} checks passed", checks.len())
        } else {
            let names: Vec<&str> = checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
            format!("{failed} of {} checks failed: {}", checks.len(), names.join(", "))
        };
        Criterion { id, name, pass: failed == 0, summary, checks }
    }

    pub fn failing(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect()
    }
}

fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// O1–O6 on every built-in model, and a replayable O6 failure on the broken fixture.
pub fn axiom_conformance(cfg: &Config) -> Criterion {
    let sc = SampleConfig { trials: cfg.trials, seed: cfg.seed, ..SampleConfig::default() };
    let per_model: Vec<Vec<NamedCheck>> = fixtures::all_fixtures()
        .par_iter()
        .map(|(name, m)| match axioms::check_all(m, &sc, cfg.force) {
            Err(e) => vec![NamedCheck::new(format!("{name}/axioms"), false, e.to_string())],
            Ok(reports) => reports
                .iter()
                .map(|r| {
                    let detail = match &r.counterexample {
                        Some(c) => {
                            format!("counterexample {}", c.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" "))
                        }
                        None => format!("{:?}", r.method),
                    };
                    NamedCheck::new(format!("{name}/{:?}", r.axiom), r.passed(), detail)
                })
                .collect(),
        })
        .collect();
    let mut checks: Vec<NamedCheck> = per_model.into_iter().flatten().collect();
    let broken = fixtures::broken_o6();
    let reports = axioms::check_all(&broken, &sc, cfg.force).expect("fixture is small");
    let o6 = reports.iter().find(|r| r.axiom == Axiom::O6).unwrap();
    checks.push(NamedCheck::new(
        "broken_o6/O6_fails_replayably",
        !o6.passed() && axioms::replay(&broken, o6),
        format!("{:?}", o6.counterexample),
    ));
    checks.push(NamedCheck::new(
        "broken_o6/O1-O5_pass",
        reports.iter().filter(|r| r.axiom != Axiom::O6).all(|r| r.passed()),
        String::new(),
    ));
    Criterion::new(1, "axiom conformance", checks)
}

const MN_DEPTH: u32 = 8;

/// `compare_hat_lp` and `compare_hat_mn` agree: all pairs on tables, sampled pairs on
/// vector models.
pub fn oracle_equivalence(cfg: &Config) -> Criterion {
    let models = fixtures::all_fixtures();
    let checks: Vec<NamedCheck> = models
        .par_iter()
        .enumerate()
        .map(|(idx, (name, m))| {
            let cone = match FunctionalCone::compute(m, cfg.force) {
                Ok(c) => c,
                Err(e) => return NamedCheck::new(format!("{name}/agreement"), false, e.to_string()),
            };
            let pairs: Vec<(Element, Element)> = match m {
                CuModel::FiniteTable(_) => {
                    let el = m.elements().unwrap();
                    el.iter().flat_map(|a| el.iter().map(move |b| (a.clone(), b.clone()))).collect()
                }
                _ => {
                    let mut r = rng(cfg.seed, idx as u64);
                    (0..cfg.compare_pairs)
                        .map(|_| (axioms::sample(m, &mut r, 5), axioms::sample(m, &mut r, 5)))
                        .collect()
                }
            };
            let mut disagreements = Vec::new();
            for (s, t) in &pairs {
                let lp = cone.compare_hat_lp(s, t);
                match cone::compare_hat_mn(m, s, t, MN_DEPTH) {
                    Ok(v) if v.holds == lp => {}
                    Ok(v) => disagreements.push(format!("{s} vs {t}: lp {lp}, mn {}", v.holds)),
                    Err(e) => disagreements.push(format!("{s} vs {t}: {e}")),
                }
            }
            NamedCheck::new(
                format!("{name}/agreement"),
                disagreements.is_empty(),
                format!("{} pairs, {} disagreements {:?}", pairs.len(), disagreements.len(), disagreements.first()),
            )
        })
        .collect();
    Criterion::new(2, "comparison oracle equivalence", checks)
}

/// For every pair of representatives `α <= β`, `complement` returns `γ` with `α + γ = β`.
pub fn pointwise_is_algebraic(cfg: &Config) -> Criterion {
    let checks = fixtures::all_fixtures()
        .par_iter()
        .map(|(name, m)| {
            let cone = match FunctionalCone::compute(m, cfg.force) {
                Ok(c) => c,
                Err(e) => return NamedCheck::new(format!("{name}/complements"), false, e.to_string()),
            };
            let fs: Vec<&Functional> = cone.functionals().collect();
            let (mut total, mut failures) = (0usize, Vec::new());
            for a in &fs {
                for b in &fs {
                    if !a.leq(m, b) {
                        continue;
                    }
                    total += 1;
                    match cone::complement(m, a, b) {
                        Ok(g) if a.add(&g).generator_values(m) == b.generator_values(m) => {}
                        Ok(_) => {
                            failures.push(format!("{} <= {}: sum differs", a.to_string_short(), b.to_string_short()))
                        }
                        Err(e) => failures.push(format!("{} <= {}: {e}", a.to_string_short(), b.to_string_short())),
                    }
                }
            }
            NamedCheck::new(
                format!("{name}/complements"),
                failures.is_empty(),
                format!("{total} ordered pairs, {} failures {:?}", failures.len(), failures.first()),
            )
        })
        .collect();
    Criterion::new(3, "pointwise order is algebraic", checks)
}

fn sample_coefficients(r: &mut ChaCha8Rng, k: usize) -> Vec<ExtRational> {
    (0..k)
        .map(|_| {
            if r.gen_range(0..10) == 0 {
                ExtRational::Inf
            } else {
                let b = r.gen_range(1..=6);
                ExtRational::fin(rat(r.gen_range(0..=6 * b), b))
            }
        })
        .collect()
}

/// Kantorovich join/meet on `N̄^k` against coordinatewise max/min, and the lattice laws.
pub fn lattice_theorem(cfg: &Config) -> Criterion {
    let checks: Vec<Vec<NamedCheck>> = (1..=3usize)
        .into_par_iter()
        .map(|k| {
            let m = CuModel::nbar_power(k);
            let name = format!("nbar_power_{k}");
            let oracle = |a: &Functional, b: &Functional, max: bool| -> Vec<ExtRational> {
                let (x, y) = (a.generator_values(&m), b.generator_values(&m));
                x.iter().zip(&y).map(|(p, q)| if max { p.max(q).clone() } else { p.min(q).clone() }).collect()
            };
            let agree = |a: &Functional, b: &Functional| -> std::result::Result<(), String> {
                let j = lattice::join(&m, a, b).map_err(|e| e.to_string())?;
                let mt = lattice::meet(&m, a, b).map_err(|e| e.to_string())?;
                if j.generator_values(&m) != oracle(a, b, true) || mt.generator_values(&m) != oracle(a, b, false) {
                    return Err(format!("{} , {}", a.to_string_short(), b.to_string_short()));
                }
                Ok(())
            };
            let cone = FunctionalCone::compute(&m, false).unwrap();
            let reps: Vec<&Functional> = cone.functionals().collect();
            let rep_fail =
                reps.iter().flat_map(|a| reps.iter().map(move |b| (a, b))).find_map(|(a, b)| agree(a, b).err());
            let mut r = rng(cfg.seed, 100 + k as u64);
            let mut sample = || Functional::coefficients(&m, sample_coefficients(&mut r, k));
            let pairs: Vec<(Functional, Functional)> = (0..cfg.lattice_samples).map(|_| (sample(), sample())).collect();
            let sample_fail = pairs.iter().find_map(|(a, b)| agree(a, b).err());
            let triples: Vec<[Functional; 3]> =
                (0..cfg.lattice_samples).map(|_| [sample(), sample(), sample()]).collect();
            let ident_fail =
                triples.iter().find_map(|[a, b, c]| match lattice::check_lattice_identities(&m, a, b, c) {
                    Err(e) => Some(e.to_string()),
                    Ok(ids) => ids.iter().find(|i| !i.pass).map(|i| format!("{}: {:?}", i.name, i.witness)),
                });
            vec![
                NamedCheck::new(
                    format!("{name}/representative_pairs"),
                    rep_fail.is_none(),
                    format!("{} pairs {}", reps.len() * reps.len(), rep_fail.unwrap_or_default()),
                ),
                NamedCheck::new(
                    format!("{name}/sampled_pairs"),
                    sample_fail.is_none(),
                    format!("{} pairs {}", pairs.len(), sample_fail.unwrap_or_default()),
                ),
                NamedCheck::new(
                    format!("{name}/identities"),
                    ident_fail.is_none(),
                    format!("{} triples {}", triples.len(), ident_fail.unwrap_or_default()),
                ),
            ]
        })
        .collect();
    Criterion::new(4, "lattice theorem", checks.into_iter().flatten().collect())
}

fn multisets(items: usize, len: usize) -> Vec<Vec<usize>> {
    if len == 0 {
        return vec![vec![]];
    }
    multisets(items, len - 1)
        .into_iter()
        .flat_map(|v| {
            let start = v.last().copied().unwrap_or(0);
            (start..items).map(move |x| {
                let mut w = v.clone();
                w.push(x);
                w
            })
        })
        .collect()
}

fn predecessor(e: &Element) -> Element {
    Element::Vector(e.as_vector().unwrap().iter().map(|x| x.monus(ExtNat::Fin(1))).collect())
}

/// Refinement witnesses over `N̄` and `N̄²` (entries <= 3), the canonical instance, and
/// the integer-grid control.
pub fn refinement(cfg: &Config) -> Criterion {
    let den = cfg.denominator_bound;
    let mut checks = Vec::new();
    for k in 1..=2usize {
        let ctx = RealContext::new(CuModel::nbar_power(k), false).unwrap();
        let elems = ctx.model.grid(3, false);
        let hats: Vec<RealElement> = elems.iter().map(|e| ctx.embed(e).unwrap()).collect();
        let preds: Vec<RealElement> = elems.iter().map(|e| ctx.embed(&predecessor(e)).unwrap()).collect();
        let zero = ctx.zero();
        let mut instances = Vec::new();
        for n in 1..=2 {
            for m in 1..=2 {
                for fi in multisets(elems.len(), n) {
                    for gj in multisets(elems.len(), m) {
                        instances.push((fi.clone(), gj));
                    }
                }
            }
        }
        let results: Vec<Option<String>> = instances
            .par_iter()
            .map(|(fi, gj)| {
                let f: Vec<RealElement> = fi.iter().map(|&i| hats[i].clone()).collect();
                let f1: Vec<RealElement> = fi.iter().map(|&i| preds[i].clone()).collect();
                let g: Vec<RealElement> = gj.iter().map(|&j| hats[j].clone()).collect();
                if !leq_r(&real::sum(&f, &zero), &real::sum(&g, &zero)) {
                    return None;
                }
                let label = || {
                    format!(
                        "f={:?} g={:?}",
                        fi.iter().map(|&i| elems[i].to_string()).collect::<Vec<_>>(),
                        gj.iter().map(|&j| elems[j].to_string()).collect::<Vec<_>>()
                    )
                };
                match refinement_witness(&ctx, &f1, &f, &g, den) {
                    Ok(w) if verify_refinement(&f1, &f, &g, &w.h, &zero).iter().all(|c| c.pass) => Some(String::new()),
                    Ok(_) => Some(format!("{}: witness fails verification", label())),
                    Err(e) => Some(format!("{}: {e}", label())),
                }
            })
            .collect();
        let hyp = results.iter().flatten().count();
        let failures: Vec<&String> = results.iter().flatten().filter(|s| !s.is_empty()).collect();
        checks.push(NamedCheck::new(
            format!("nbar_power_{k}/witness_whenever_hypothesis_holds"),
            failures.is_empty(),
            format!(
                "{} instances, {hyp} satisfy the hypothesis, {} without witness {:?}",
                instances.len(),
                failures.len(),
                failures.first()
            ),
        ));
    }
    let ctx = RealContext::new(CuModel::nbar_power(1), false).unwrap();
    let one = ctx.embed(&Element::vector(&[1])).unwrap();
    let half = scale(&rat(1, 2), &one);
    let (f1, f, g) = (vec![half.clone(), half.clone()], vec![one.clone(), one.clone()], vec![one.clone(), one.clone()]);
    match refinement_witness(&ctx, &f1, &f, &g, den) {
        Ok(w) => {
            let ok = verify_refinement(&f1, &f, &g, &w.h, &ctx.zero()).iter().all(|c| c.pass);
            let ray = ctx.representative_index(1, Some(0));
            let shown: Vec<Vec<String>> =
                w.h.iter().map(|r| r.iter().map(|x| x.values[ray].to_string()).collect()).collect();
            checks.push(NamedCheck::new("canonical/witness_found", ok, format!("h = {shown:?}")));
            let all_half = w.h.iter().flatten().all(|x| *x == half);
            checks.push(NamedCheck::new(
                "canonical/h_is_half",
                all_half,
                format!("h = {shown:?}; h_ij = 1/2 gives row sums 1, and 1 ≪ 1 fails"),
            ));
        }
        Err(e) => checks.push(NamedCheck::new("canonical/witness_found", false, e.to_string())),
    }
    let control = refinement_witness(&ctx, &f1, &f, &g, 1);
    checks.push(NamedCheck::new(
        "integer_grid/grid_exhausted",
        matches!(control, Err(Error::GridExhausted(_))),
        format!("{control:?}").chars().take(120).collect::<String>(),
    ));
    Criterion::new(5, "refinement", checks)
}

fn dyadic(n: u32) -> Rational {
    rat(1, 1i128 << n)
}

fn property_checks(ctx: &RealContext, name: &str, cases: usize, seed: u64, den: i128) -> Vec<NamedCheck> {
    let mut r = rng(seed, 300 + ctx.model.dim().unwrap_or(0) as u64);
    let one = Rational::from_integer(1);
    let mut fails: [Option<String>; 5] = Default::default();
    let note = |slot: &mut Option<String>, msg: String| {
        if slot.is_none() {
            *slot = Some(msg);
        }
    };
    for _ in 0..cases {
        let x = real::sample_combination(ctx, &mut r, den, 3);
        let y = real::sample_combination(ctx, &mut r, den, 3);
        let a = r.gen_range(1..=5u32);
        // complement_R: f = (1 − 2^{-a}) x ◁ g = x + y
        let g = add(&x, &y);
        let f = scale(&(one - dyadic(a)), &x);
        match real::complement_r(&f, &g, Some(1 << 8)) {
            Ok(c) if add(&f, &c.h) == g && c.proportional.is_some() => {}
            other => note(&mut fails[0], format!("{} ; {}: {:?}", f.term, g.term, other.err())),
        }
        // dini_index: minimal N with f <= (1 − 2^{-N}) g + ε g
        let chain = real::rapid_chain(&g, 40);
        let eps = dyadic(r.gen_range(1..=8));
        match real::dini_index(&f, &chain, &g, &eps) {
            Ok(n) => {
                let at = |i: usize| leq_r(&f, &add(&chain[i - 1], &scale(&eps, &g)));
                if !(at(n) && (n == 1 || !at(n - 1))) {
                    note(&mut fails[1], format!("{}: index {n} not minimal", f.term));
                }
            }
            Err(e) => note(&mut fails[1], format!("{}: {e}", f.term)),
        }
        // almost_algebraic_split: f' = (1 − 2^{-a}) x ≪ x <= g
        match real::almost_algebraic_split(&f, &x, &g) {
            Ok((h, h2)) if real::way_below_r(&f, &h) && real::way_below_r(&h, &x) && add(&h, &h2) == g => {}
            other => note(&mut fails[2], format!("{} ; {}: {:?}", x.term, g.term, other.err())),
        }
        // cancellation with h = q·y ∝ y
        let q = Rational::from_integer(r.gen_range(0..=3));
        let h = scale(&q, &y);
        match real::cancellation_check(&x, &y, &h, 8) {
            Ok(c) if c.holds() => {}
            other => note(&mut fails[3], format!("{} ; {} ; {}: {other:?}", x.term, y.term, h.term)),
        }
        let n = r.gen_range(1..=6);
        if !real::unperforated(&x, &y, n) || !real::unperforated(&x, &add(&x, &y), n) {
            note(&mut fails[4], format!("{} ; {} ; n = {n}", x.term, y.term));
        }
    }
    ["complement_r", "dini_index", "almost_algebraic_split", "cancellation", "unperforation"]
        .iter()
        .zip(fails)
        .map(|(p, f)| {
            NamedCheck::new(format!("{name}/{p}"), f.is_none(), f.unwrap_or_else(|| format!("{cases} cases")))
        })
        .collect()
}

/// Cone isomorphism on every built-in model; the sampled axiom suite and the property
/// checks on `N̄^k`.
pub fn realification(cfg: &Config) -> Criterion {
    let mut checks: Vec<NamedCheck> = fixtures::all_fixtures()
        .par_iter()
        .map(|(name, m)| match RealContext::new(m.clone(), cfg.force) {
            Err(e) => vec![NamedCheck::new(format!("{name}/cone_iso"), false, e.to_string())],
            Ok(ctx) => real::cone_iso_check(&ctx)
                .into_iter()
                .map(|c| NamedCheck { name: format!("{name}/{}", c.name), ..c })
                .collect(),
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    let den = cfg.denominator_bound as i128;
    let per_k: Vec<Vec<NamedCheck>> = (1..=3usize)
        .into_par_iter()
        .map(|k| {
            let ctx = RealContext::new(CuModel::nbar_power(k), false).unwrap();
            let name = format!("nbar_power_{k}");
            let mut out: Vec<NamedCheck> = real::sr_axiom_suite(&ctx, cfg.trials, cfg.seed, den)
                .into_iter()
                .map(|c| NamedCheck { name: format!("{name}/S_R_{}", c.name), ..c })
                .collect();
            out.extend(property_checks(&ctx, &name, cfg.property_cases, cfg.seed, den));
            out
        })
        .collect();
    checks.extend(per_k.into_iter().flatten());
    Criterion::new(6, "realification invariants", checks)
}

fn halving_holds(m: &CuModel, x: &Element, h: &Halving) -> bool {
    match h {
        Halving::Witness { z } => !m.is_zero(z) && m.leq(&m.add(z, z).unwrap(), x).unwrap(),
        Halving::ChainCase { .. } => halving::chain_generator(m).is_some(),
    }
}

/// Halving on `N̄`, on the simple non-chain fixtures, and on every simple table with at
/// most four elements satisfying O1–O6.
pub fn glimm_halving(cfg: &Config) -> Criterion {
    let nbar = CuModel::nbar_power(1);
    let mut checks = vec![
        NamedCheck::new(
            "nbar/x=1_chain_case",
            matches!(halving::halving(&nbar, &Element::vector(&[1])), Ok(Halving::ChainCase { .. })),
            String::new(),
        ),
        NamedCheck::new(
            "nbar/x=2_gives_z=1",
            halving::halving(&nbar, &Element::vector(&[2])) == Ok(Halving::Witness { z: Element::vector(&[1]) }),
            String::new(),
        ),
    ];
    let mut simple_non_chain = 0;
    for (name, m) in fixtures::finite_fixtures() {
        let nonzero: Vec<Element> = m.elements().unwrap().into_iter().skip(1).collect();
        if halving::check_simple(&m).is_err() || nonzero.is_empty() || halving::chain_generator(&m).is_some() {
            continue;
        }
        simple_non_chain += 1;
        let bad = nonzero.iter().find(|x| !matches!(halving::halving(&m, x), Ok(Halving::Witness { .. })));
        checks.push(NamedCheck::new(
            format!("{name}/witness_for_every_x"),
            bad.is_none(),
            format!("{} nonzero elements {bad:?}", nonzero.len()),
        ));
    }
    checks.push(NamedCheck::new(
        "fixtures/simple_non_chain_present",
        simple_non_chain > 0,
        format!("{simple_non_chain} fixtures"),
    ));
    let sc = SampleConfig { seed: cfg.seed, ..SampleConfig::default() };
    for n in 2..=4 {
        let (mut cu, mut simple, mut chain, mut witnessed, mut bad) = (0, 0, 0, 0, Vec::new());
        for m in fixtures::enumerate_tables(n) {
            if !axioms::check_all(&m, &sc, false).unwrap().iter().all(|r| r.passed()) {
                continue;
            }
            cu += 1;
            if halving::check_simple(&m).is_err() {
                continue;
            }
            simple += 1;
            let is_chain = halving::chain_generator(&m).is_some();
            chain += is_chain as usize;
            for x in m.elements().unwrap().into_iter().skip(1) {
                match halving::halving(&m, &x) {
                    Ok(h @ Halving::Witness { .. }) if halving_holds(&m, &x, &h) => witnessed += 1,
                    Ok(h @ Halving::ChainCase { .. }) if is_chain => {
                        debug_assert!(halving_holds(&m, &x, &h));
                    }
                    other => bad.push(format!("{} x={x}: {other:?}", m.to_json())),
                }
            }
        }
        checks.push(NamedCheck::new(
            format!("enumerated_n{n}/halving_or_chain_case"),
            bad.is_empty(),
            format!(
                "{cu} tables satisfy O1-O6, {simple} simple, {chain} chains, {witnessed} witnesses {:?}",
                bad.first()
            ),
        ));
    }
    Criterion::new(7, "halving", checks)
}

fn criteria_1_to_7(cfg: &Config) -> Vec<Criterion> {
    vec![
        axiom_conformance(cfg),
        oracle_equivalence(cfg),
        pointwise_is_algebraic(cfg),
        lattice_theorem(cfg),
        refinement(cfg),
        realification(cfg),
        glimm_halving(cfg),
    ]
}

/// Criteria 1–7, then criterion 8: a second run must serialize byte-identically.
pub fn run(cfg: &Config) -> Vec<Criterion> {
    let mut first = criteria_1_to_7(cfg);
    let second = criteria_1_to_7(cfg);
    let (a, b) = (report(cfg, &first).to_json_untimed(), report(cfg, &second).to_json_untimed());
    let at = a.bytes().zip(b.bytes()).position(|(x, y)| x != y);
    first.push(Criterion::new(
        8,
        "determinism",
        vec![NamedCheck::new(
            "second_run_byte_identical",
            a == b,
            format!("{} bytes, first difference at {at:?}", a.len()),
        )],
    ));
    first
}

pub fn report(cfg: &Config, criteria: &[Criterion]) -> RunReport {
    let mut r = RunReport::new("selftest", None, cfg.seed)
        .param("trials", cfg.trials)
        .param("denominator_bound", cfg.denominator_bound)
        .param("compare_pairs", cfg.compare_pairs)
        .param("lattice_samples", cfg.lattice_samples)
        .param("property_cases", cfg.property_cases)
        .param("force", cfg.force);
    r.checks = criteria
        .iter()
        .map(|c| NamedCheck::new(format!("criterion_{}: {}", c.id, c.name), c.pass, c.summary.clone()))
        .collect();
    r.witnesses = serde_json::to_value(criteria).expect("criteria serialize");
    r
}

/// One `PASS`/`FAIL` line per criterion.
pub fn summary(criteria: &[Criterion]) -> String {
    let mut s = String::new();
    for c in criteria {
        let _ = writeln!(s, "{} criterion {} ({}): {}", if c.pass { "PASS" } else { "FAIL" }, c.id, c.name, c.summary);
    }
    s
}
