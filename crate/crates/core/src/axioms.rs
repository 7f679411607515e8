//! Verification of O1–O6.
//!
//! Finite tables are checked exhaustively. For the vector models, O1–O4 follow from
//! the coordinatewise description of suprema and of `≪`; O5 and O6 are checked by
//! sampling, trying a constructive witness first and falling back to a complete
//! search over the (finite) set of candidate witnesses.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::ext::{ExtNat, INF};
use crate::model::{CuModel, Element, FiniteTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Axiom {
    O1,
    O2,
    O3,
    O4,
    O5,
    O6,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Pass,
    Fail,
    Vacuous,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE", tag = "kind")]
pub enum Method {
    Exhaustive,
    Analytic,
    Sampled { seed: u64, trials: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub axiom: Axiom,
    pub status: Status,
    /// O3/O4: `(a', a, b', b)`; O5: `(s', s, t)`; O6: `(s, r, t, s')`.
    pub counterexample: Option<Vec<Element>>,
    pub method: Method,
    pub note: String,
}

impl AxiomReport {
    fn new(axiom: Axiom, status: Status, method: Method, note: impl Into<String>) -> Self {
        AxiomReport { axiom, status, counterexample: None, method, note: note.into() }
    }

    fn from_search(axiom: Axiom, method: Method, hypotheses: usize, cex: Option<Vec<Element>>) -> Self {
        let status = match (&cex, hypotheses) {
            (Some(_), _) => Status::Fail,
            (None, 0) => Status::Vacuous,
            (None, _) => Status::Pass,
        };
        let note = format!("{hypotheses} hypothesis instances examined");
        AxiomReport { axiom, status, counterexample: cex, method, note }
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SampleConfig {
    pub trials: usize,
    pub coord_bound: u64,
    pub seed: u64,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig { trials: 1000, coord_bound: 6, seed: 0 }
    }
}

/// Runs all six checks.
pub fn check_all(m: &CuModel, cfg: &SampleConfig, force: bool) -> Result<Vec<AxiomReport>> {
    m.guard_exhaustive(force)?;
    let mut out = check_o1_to_o4(m);
    out.push(check_o5(m, cfg));
    out.push(check_o6(m, cfg));
    Ok(out)
}

pub fn check_o1_to_o4(m: &CuModel) -> Vec<AxiomReport> {
    match m {
        CuModel::FiniteTable(t) => table_o1_to_o4(t),
        _ => vec![
            AxiomReport::new(
                Axiom::O1,
                Status::Pass,
                Method::Analytic,
                "increasing sequences have coordinatewise suprema in N̄; nondecreasing vectors stay nondecreasing",
            ),
            AxiomReport::new(
                Axiom::O2,
                Status::Pass,
                Method::Analytic,
                "s = sup_n min(s, n·1) and min(s, n·1) << min(s, (n+1)·1) since it is finite",
            ),
            AxiomReport::new(Axiom::O3, Status::Pass, Method::Analytic, "a'<<a, b'<<b: a'+b' is finite and below a+b"),
            AxiomReport::new(
                Axiom::O4,
                Status::Pass,
                Method::Analytic,
                "coordinatewise sup commutes with addition in N̄",
            ),
        ],
    }
}

/// Every increasing chain in a finite poset is eventually constant, so its supremum
/// is its last term. This checks the consequences that O1–O4 reduce to.
fn table_o1_to_o4(t: &FiniteTable) -> Vec<AxiomReport> {
    let n = t.n();
    let e = |i: usize| Element::Index(i);
    // O1: the orbit chains n·a, the ones the other routines rely on, stabilize in <= n steps.
    let o1 = (0..n).find(|&a| t.stabilization_index(a) as usize >= n);
    let mut r1 = AxiomReport::new(
        Axiom::O1,
        Status::Pass,
        Method::Exhaustive,
        "finite poset: every increasing sequence is eventually constant",
    );
    if let Some(a) = o1 {
        r1.status = Status::Fail;
        r1.counterexample = Some(vec![e(a)]);
    }
    // O2: s << s, so the constant sequence works.
    let o2 = (0..n).find(|&a| !t.le(a, a));
    let mut r2 = AxiomReport::new(Axiom::O2, Status::Pass, Method::Exhaustive, "s << s for every s");
    if let Some(a) = o2 {
        r2.status = Status::Fail;
        r2.counterexample = Some(vec![e(a)]);
    }
    // O3/O4 both amount to monotonicity of addition in each variable.
    let mono = (0..n).into_par_iter().find_map_first(|a1| {
        for a in 0..n {
            if !t.le(a1, a) {
                continue;
            }
            for b1 in 0..n {
                for b in 0..n {
                    if t.le(b1, b) && !t.le(t.sum(a1, b1), t.sum(a, b)) {
                        return Some(vec![e(a1), e(a), e(b1), e(b)]);
                    }
                }
            }
        }
        None
    });
    let r3 = AxiomReport {
        counterexample: mono.clone(),
        status: if mono.is_some() { Status::Fail } else { Status::Pass },
        ..AxiomReport::new(Axiom::O3, Status::Pass, Method::Exhaustive, "a'<=a, b'<=b implies a'+b' <= a+b")
    };
    let r4 = AxiomReport {
        counterexample: mono.clone(),
        status: if mono.is_some() { Status::Fail } else { Status::Pass },
        ..AxiomReport::new(
            Axiom::O4,
            Status::Pass,
            Method::Exhaustive,
            "suprema are eventual values, so sup(a_n + b_n) = sup a_n + sup b_n",
        )
    };
    vec![r1, r2, r3, r4]
}

pub fn check_o5(m: &CuModel, cfg: &SampleConfig) -> AxiomReport {
    match m {
        CuModel::FiniteTable(t) => {
            let n = t.n();
            let per_s1: Vec<(usize, Option<Vec<Element>>)> = (0..n)
                .into_par_iter()
                .map(|s1| {
                    let mut count = 0;
                    for s in (0..n).filter(|&s| t.le(s1, s)) {
                        for tt in (0..n).filter(|&tt| t.le(s, tt)) {
                            count += 1;
                            if table_o5_witness(t, s1, s, tt).is_none() {
                                let cex = [s1, s, tt].map(Element::Index).to_vec();
                                return (count, Some(cex));
                            }
                        }
                    }
                    (count, None)
                })
                .collect();
            let count = per_s1.iter().map(|x| x.0).sum();
            let cex = per_s1.into_iter().find_map(|x| x.1);
            AxiomReport::from_search(Axiom::O5, Method::Exhaustive, count, cex)
        }
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            let mut cex = None;
            for _ in 0..cfg.trials {
                let s = sample(m, &mut rng, cfg.coord_bound);
                let s1 = meet(&s, &sample_finite(m, &mut rng, cfg.coord_bound));
                let t = if rng.gen_bool(0.5) {
                    join(&s, &sample(m, &mut rng, cfg.coord_bound))
                } else {
                    m.add_unchecked(&s, &sample(m, &mut rng, cfg.coord_bound))
                };
                if vector_o5_witness(m, &s1, &s, &t).is_none() {
                    cex = Some(vec![s1, s, t]);
                    break;
                }
            }
            let method = Method::Sampled { seed: cfg.seed, trials: cfg.trials };
            AxiomReport::from_search(Axiom::O5, method, cfg.trials, cex)
        }
    }
}

pub fn check_o6(m: &CuModel, cfg: &SampleConfig) -> AxiomReport {
    match m {
        CuModel::FiniteTable(t) => {
            let n = t.n();
            let per_s: Vec<(usize, Option<Vec<Element>>)> = (0..n)
                .into_par_iter()
                .map(|s| {
                    let mut count = 0;
                    for r in 0..n {
                        for tt in (0..n).filter(|&tt| t.le(s, t.sum(r, tt))) {
                            count += 1;
                            // a split for s' = s also serves every s' <= s
                            if table_o6_witness(t, s, r, tt, s).is_some() {
                                continue;
                            }
                            for s1 in (0..n).filter(|&s1| t.le(s1, s)) {
                                if table_o6_witness(t, s, r, tt, s1).is_none() {
                                    return (count, Some([s, r, tt, s1].map(Element::Index).to_vec()));
                                }
                            }
                        }
                    }
                    (count, None)
                })
                .collect();
            let count = per_s.iter().map(|x| x.0).sum();
            let cex = per_s.into_iter().find_map(|x| x.1);
            AxiomReport::from_search(Axiom::O6, Method::Exhaustive, count, cex)
        }
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(1));
            let mut cex = None;
            for _ in 0..cfg.trials {
                let r = sample(m, &mut rng, cfg.coord_bound);
                let t = sample(m, &mut rng, cfg.coord_bound);
                let s = meet(&m.add_unchecked(&r, &t), &sample(m, &mut rng, cfg.coord_bound));
                let s1 = meet(&s, &sample_finite(m, &mut rng, cfg.coord_bound));
                if vector_o6_witness(m, &s, &r, &t, &s1).is_none() {
                    cex = Some(vec![s, r, t, s1]);
                    break;
                }
            }
            let method = Method::Sampled { seed: cfg.seed, trials: cfg.trials };
            AxiomReport::from_search(Axiom::O6, method, cfg.trials, cex)
        }
    }
}

fn table_o5_witness(t: &FiniteTable, s1: usize, s: usize, tt: usize) -> Option<usize> {
    (0..t.n()).find(|&r| t.le(t.sum(s1, r), tt) && t.le(tt, t.sum(s, r)))
}

fn table_o6_witness(t: &FiniteTable, s: usize, r: usize, tt: usize, s1: usize) -> Option<(usize, usize)> {
    let n = t.n();
    for r1 in (0..n).filter(|&x| t.le(x, r) && t.le(x, s)) {
        for t1 in (0..n).filter(|&x| t.le(x, tt) && t.le(x, s)) {
            if t.le(s1, t.sum(r1, t1)) {
                return Some((r1, t1));
            }
        }
    }
    None
}

/// `r` with `s' + r <= t <= s + r`: first the truncated difference, then a complete
/// search over `r <= t` (any witness satisfies `r <= s' + r <= t`).
pub fn vector_o5_witness(m: &CuModel, s1: &Element, s: &Element, t: &Element) -> Option<Element> {
    let ok = |r: &Element| {
        m.check(r).is_ok() && m.leq_unchecked(&m.add_unchecked(s1, r), t) && m.leq_unchecked(t, &m.add_unchecked(s, r))
    };
    let (sv, tv) = (s.as_vector()?, t.as_vector()?);
    let diff =
        Element::Vector(sv.iter().zip(tv).map(|(&a, &b)| if b.is_finite() { b.monus(a) } else { INF }).collect());
    if ok(&diff) {
        return Some(diff);
    }
    m.elements_below(t).into_iter().find(|r| ok(r))
}

/// `(r', t')` with `r' <= r, s`, `t' <= t, s` and `s' <= r' + t'`.
pub fn vector_o6_witness(
    m: &CuModel,
    s: &Element,
    r: &Element,
    t: &Element,
    s1: &Element,
) -> Option<(Element, Element)> {
    let ok = |r1: &Element, t1: &Element| {
        m.check(r1).is_ok()
            && m.check(t1).is_ok()
            && m.leq_unchecked(r1, r)
            && m.leq_unchecked(r1, s)
            && m.leq_unchecked(t1, t)
            && m.leq_unchecked(t1, s)
            && m.leq_unchecked(s1, &m.add_unchecked(r1, t1))
    };
    let r1 = meet(r, s1);
    let t1 = Element::Vector(s1.as_vector()?.iter().zip(r1.as_vector()?).map(|(&a, &b)| a.monus(b)).collect());
    if ok(&r1, &t1) {
        return Some((r1, t1));
    }
    let below_r = m.elements_below(&meet(r, s));
    let below_t = m.elements_below(&meet(t, s));
    for a in &below_r {
        for b in &below_t {
            if ok(a, b) {
                return Some((a.clone(), b.clone()));
            }
        }
    }
    None
}

/// Re-runs the predicate a FAIL report was issued for; `true` if the violation
/// reproduces.
pub fn replay(m: &CuModel, report: &AxiomReport) -> bool {
    let Some(cex) = &report.counterexample else { return false };
    if cex.iter().any(|x| m.check(x).is_err()) {
        return false;
    }
    let le = |a: &Element, b: &Element| m.leq_unchecked(a, b);
    let wb = |a: &Element, b: &Element| m.way_below_unchecked(a, b);
    match (report.axiom, cex.as_slice()) {
        (Axiom::O1, [a]) => {
            let t = m.table().unwrap();
            t.stabilization_index(a.as_index().unwrap()) as usize >= t.n()
        }
        (Axiom::O2, [a]) => !wb(a, a),
        (Axiom::O3 | Axiom::O4, [a1, a, b1, b]) => {
            le(a1, a) && le(b1, b) && !le(&m.add_unchecked(a1, b1), &m.add_unchecked(a, b))
        }
        (Axiom::O5, [s1, s, t]) => {
            if !(wb(s1, s) && le(s, t)) {
                return false;
            }
            match m {
                CuModel::FiniteTable(tab) => {
                    let i = |x: &Element| x.as_index().unwrap();
                    table_o5_witness(tab, i(s1), i(s), i(t)).is_none()
                }
                _ => vector_o5_witness(m, s1, s, t).is_none(),
            }
        }
        (Axiom::O6, [s, r, t, s1]) => {
            if !(le(s, &m.add_unchecked(r, t)) && wb(s1, s)) {
                return false;
            }
            match m {
                CuModel::FiniteTable(tab) => {
                    let i = |x: &Element| x.as_index().unwrap();
                    table_o6_witness(tab, i(s), i(r), i(t), i(s1)).is_none()
                }
                _ => vector_o6_witness(m, s, r, t, s1).is_none(),
            }
        }
        _ => false,
    }
}

fn sample_coord(rng: &mut ChaCha8Rng, bound: u64, allow_inf: bool) -> ExtNat {
    if allow_inf && rng.gen_range(0..bound + 2) == 0 {
        INF
    } else {
        ExtNat::Fin(rng.gen_range(0..=bound))
    }
}

fn sample_vec(m: &CuModel, rng: &mut ChaCha8Rng, bound: u64, allow_inf: bool) -> Element {
    let k = m.dim().expect("vector model");
    let mut v: Vec<ExtNat> = (0..k).map(|_| sample_coord(rng, bound, allow_inf)).collect();
    if matches!(m, CuModel::MonotoneChain { .. }) {
        v.sort();
    }
    Element::Vector(v)
}

/// A random element of a vector model, coordinates in `{0..=bound, inf}`.
pub fn sample(m: &CuModel, rng: &mut ChaCha8Rng, bound: u64) -> Element {
    sample_vec(m, rng, bound, true)
}

pub fn sample_finite(m: &CuModel, rng: &mut ChaCha8Rng, bound: u64) -> Element {
    sample_vec(m, rng, bound, false)
}

/// Coordinatewise minimum; nondecreasing inputs give a nondecreasing result.
pub fn meet(a: &Element, b: &Element) -> Element {
    let (u, v) = (a.as_vector().unwrap(), b.as_vector().unwrap());
    Element::Vector(u.iter().zip(v).map(|(&x, &y)| x.min(y)).collect())
}

pub fn join(a: &Element, b: &Element) -> Element {
    let (u, v) = (a.as_vector().unwrap(), b.as_vector().unwrap());
    Element::Vector(u.iter().zip(v).map(|(&x, &y)| x.max(y)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn statuses(m: &CuModel) -> Vec<Status> {
        check_all(m, &SampleConfig::default(), false).unwrap().iter().map(|r| r.status).collect()
    }

    #[test]
    fn nbar_power_passes_everything() {
        for k in 1..=3 {
            assert_eq!(statuses(&CuModel::nbar_power(k)), vec![Status::Pass; 6]);
        }
    }

    #[test]
    fn finite_fixtures_pass() {
        for (name, m) in fixtures::finite_fixtures() {
            assert_eq!(statuses(&m), vec![Status::Pass; 6], "{name}");
        }
    }

    #[test]
    fn o5_constructive_witnesses() {
        let m = CuModel::nbar_power(1);
        let r = vector_o5_witness(&m, &Element::vector(&[2]), &Element::vector(&[3]), &Element::vector(&[5]));
        assert_eq!(r, Some(Element::vector(&[2])));
        let inf = Element::Vector(vec![INF]);
        assert_eq!(vector_o5_witness(&m, &Element::vector(&[2]), &Element::vector(&[3]), &inf), Some(inf));
    }

    #[test]
    fn o6_constructive_split() {
        let m = CuModel::nbar_power(1);
        let v = |x| Element::vector(&[x]);
        let (r1, t1) = vector_o6_witness(&m, &v(3), &v(2), &v(2), &v(3)).unwrap();
        assert_eq!((r1, t1), (v(2), v(1)));
        let (r1, t1) = vector_o6_witness(&m, &v(3), &v(2), &v(2), &v(0)).unwrap();
        assert_eq!((r1, t1), (v(0), v(0)));
    }

    #[test]
    fn broken_table_fails_o6_with_replayable_counterexample() {
        let m = fixtures::broken_o6();
        let reports = check_all(&m, &SampleConfig::default(), false).unwrap();
        let o6 = &reports[5];
        assert_eq!(o6.status, Status::Fail);
        assert!(replay(&m, o6));
        assert!(reports[..5].iter().all(|r| r.status == Status::Pass));
    }

    #[test]
    fn size_guard() {
        let big = fixtures::product(&fixtures::truncated_nbar(7), &fixtures::truncated_nbar(7));
        assert!(check_all(&big, &SampleConfig::default(), false).is_err());
    }

    #[test]
    fn reports_are_deterministic() {
        let m = CuModel::monotone_chain(3);
        let cfg = SampleConfig { trials: 200, coord_bound: 4, seed: 9 };
        assert_eq!(check_all(&m, &cfg, false).unwrap(), check_all(&m, &cfg, false).unwrap());
    }
}
