//! The realification `S_R = L(F(S))`, represented by values on the representative
//! functionals of [`FunctionalCone`].
//!
//! An element is stored as its vector of values on the representatives. Since every
//! functional is `λ_I` plus a conic combination of the rays of `C_I`, and elements of
//! `S_R` are additive and positively homogeneous, the values on representatives fix
//! the element, and the order of `S_R` is the pointwise order on those values.
//!
//! `f ◁ g` requires `f <= (1−ε) g` for some `ε > 0` and continuity of `f` wherever `g`
//! is finite. The continuity clause is replaced by the finiteness of `f` on every
//! representative where `g` is finite; `◁` is also used as the (stronger) stand-in
//! for `≪` inside `S_R`.

use std::fmt;

use num::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::cone::{Functional, FunctionalCone};
use crate::error::{Error, Result};
use crate::ext::{fmt_rational, int, rat, ExtNat, ExtRational, Rational};
use crate::model::{CuModel, Element};

/// How an element was built; replayable through the term language where possible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Term {
    Hat(Element),
    Scale(Rational, Box<Term>),
    Add(Box<Term>, Box<Term>),
    Sup(Vec<Term>),
    /// `g − f` computed pointwise.
    Difference(Box<Term>, Box<Term>),
    /// Greatest grid element below both.
    Meet(Box<Term>, Box<Term>),
}

impl Term {
    /// Value of the term at `λ`, when the term only uses the free constructors.
    pub fn eval_at(&self, l: &Functional) -> Option<ExtRational> {
        Some(match self {
            Term::Hat(s) => l.eval(s),
            Term::Scale(q, t) => t.eval_at(l)?.scale(q),
            Term::Add(a, b) => a.eval_at(l)? + b.eval_at(l)?,
            Term::Sup(ts) => ts.iter().map(|t| t.eval_at(l)).collect::<Option<Vec<_>>>()?.into_iter().max()?,
            Term::Difference(..) | Term::Meet(..) => return None,
        })
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Hat(s) => write!(f, "hat({s})"),
            Term::Scale(q, t) => write!(f, "{}*({t})", fmt_rational(q)),
            Term::Add(a, b) => write!(f, "{a}+{b}"),
            Term::Sup(ts) => {
                f.write_str("sup[")?;
                for (i, t) in ts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{t}")?;
                }
                f.write_str("]")
            }
            Term::Difference(g, h) => write!(f, "diff({g};{h})"),
            Term::Meet(a, b) => write!(f, "meet({a};{b})"),
        }
    }
}

impl Serialize for Term {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// An element of `S_R`. Equality compares values only.
#[derive(Clone, Debug, Serialize)]
pub struct RealElement {
    pub values: Vec<ExtRational>,
    pub term: Term,
}

impl PartialEq for RealElement {
    fn eq(&self, other: &Self) -> bool {
        self.values == other.values
    }
}

impl Eq for RealElement {}

/// A model together with its functional cone.
#[derive(Clone, Debug)]
pub struct RealContext {
    pub model: CuModel,
    pub cone: FunctionalCone,
}

pub const CHAIN_SEARCH_DEPTH: u32 = 16;

impl RealContext {
    pub fn new(model: CuModel, force: bool) -> Result<Self> {
        let cone = FunctionalCone::compute(&model, force)?;
        Ok(RealContext { model, cone })
    }

    pub fn len(&self) -> usize {
        self.cone.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cone.is_empty()
    }

    pub fn embed(&self, s: &Element) -> Result<RealElement> {
        self.model.check(s)?;
        Ok(RealElement { values: self.cone.hat_evaluate(s), term: Term::Hat(s.clone()) })
    }

    pub fn zero(&self) -> RealElement {
        self.embed(&self.model.zero()).expect("zero is an element")
    }

    /// Elements whose hats generate `S_R` under sums, positive multiples and suprema:
    /// every table element, or the generators of a vector model and their infinite
    /// multiples.
    pub fn generating_elements(&self) -> Vec<Element> {
        match &self.model {
            CuModel::FiniteTable(_) => self.model.elements().unwrap(),
            m => {
                let mut out = m.generators();
                out.extend(m.generators().iter().map(|g| m.infinity_multiple(g).unwrap()));
                out
            }
        }
    }

    /// Index of the representative `λ_I + ray` among `self.cone.representatives`.
    pub fn representative_index(&self, ideal: usize, ray: Option<usize>) -> usize {
        self.cone.representatives.iter().position(|r| r.ideal == ideal && r.ray == ray).expect("representative")
    }

    /// `Σ_c q_c · ê_c` from per-generator coefficients (`None` meaning `∞·ĝ_c`).
    pub fn combination(&self, coeffs: &[Option<Rational>]) -> Result<RealElement> {
        let gens = self.model.generators();
        let mut acc = self.zero();
        for (g, q) in gens.iter().zip(coeffs) {
            let term = match q {
                Some(q) if q.is_zero() => continue,
                Some(q) => scale(q, &self.embed(g)?),
                None => self.embed(&self.model.infinity_multiple(g)?)?,
            };
            acc = add(&acc, &term);
        }
        Ok(acc)
    }
}

pub fn scale(q: &Rational, f: &RealElement) -> RealElement {
    assert!(!q.is_negative(), "scalar must be nonnegative");
    if q.is_one() {
        return f.clone();
    }
    RealElement {
        values: f.values.iter().map(|x| x.scale(q)).collect(),
        term: Term::Scale(*q, Box::new(f.term.clone())),
    }
}

pub fn add(f: &RealElement, g: &RealElement) -> RealElement {
    RealElement {
        values: f.values.iter().zip(&g.values).map(|(a, b)| a + b).collect(),
        term: Term::Add(Box::new(f.term.clone()), Box::new(g.term.clone())),
    }
}

/// `Σ items`, starting from `zero`.
pub fn sum(items: &[RealElement], zero: &RealElement) -> RealElement {
    match items.split_first() {
        None => zero.clone(),
        Some((first, rest)) => rest.iter().fold(first.clone(), |acc, x| add(&acc, x)),
    }
}

pub fn leq_r(f: &RealElement, g: &RealElement) -> bool {
    f.values.iter().zip(&g.values).all(|(a, b)| a <= b)
}

/// Pointwise supremum of an increasing chain.
pub fn sup_increasing(chain: &[RealElement]) -> Result<RealElement> {
    for i in 1..chain.len() {
        if !leq_r(&chain[i - 1], &chain[i]) {
            return Err(Error::NotIncreasing(i));
        }
    }
    let last = chain.last().ok_or_else(|| Error::HypothesisFailed("empty chain".into()))?;
    Ok(RealElement { values: last.values.clone(), term: Term::Sup(chain.iter().map(|c| c.term.clone()).collect()) })
}

/// `Some(ε)` when `f ◁ g`: `ε = 1 − max f/g` over representatives where `g` is finite and
/// positive (`1/2` if that maximum is 0).
pub fn triangle_lhd(f: &RealElement, g: &RealElement) -> Option<Rational> {
    let mut rho = Rational::zero();
    for (a, b) in f.values.iter().zip(&g.values) {
        match (a, b) {
            (_, ExtRational::Inf) => {}
            (ExtRational::Inf, ExtRational::Fin(_)) => return None,
            (ExtRational::Fin(x), ExtRational::Fin(y)) => {
                if y.is_zero() {
                    if !x.is_zero() {
                        return None;
                    }
                } else {
                    rho = rho.max(x / y);
                }
            }
        }
    }
    if rho >= Rational::one() {
        None
    } else if rho.is_zero() {
        Some(rat(1, 2))
    } else {
        Some(Rational::one() - rho)
    }
}

/// The `◁`-based stand-in for `≪` in `S_R`.
pub fn way_below_r(f: &RealElement, g: &RealElement) -> bool {
    triangle_lhd(f, g).is_some()
}

fn dyadic(n: u32) -> Rational {
    rat(1, 1i128 << n)
}

/// `(1 − 2^{-n}) f` for `n = 1..=len`; consecutive terms satisfy `◁` and the chain's
/// supremum is `f` (see [`rapid_chain_sup`]).
pub fn rapid_chain(f: &RealElement, len: u32) -> Vec<RealElement> {
    (1..=len).map(|n| scale(&(Rational::one() - dyadic(n)), f)).collect()
}

/// Supremum of the infinite chain `(1 − 2^{-n}) f`: pointwise `lim (1 − 2^{-n}) x = x`
/// for every `x` in `[0, inf]`.
pub fn rapid_chain_sup(f: &RealElement) -> RealElement {
    RealElement { values: f.values.clone(), term: Term::Sup(vec![f.term.clone()]) }
}

/// Least `N >= 1` with `f <= chain[N] + ε g` (1-based).
pub fn dini_index(f: &RealElement, chain: &[RealElement], g: &RealElement, eps: &Rational) -> Result<usize> {
    if !eps.is_positive() {
        return Err(Error::HypothesisFailed("ε must be positive".into()));
    }
    for i in 1..chain.len() {
        if !leq_r(&chain[i - 1], &chain[i]) {
            return Err(Error::NotIncreasing(i));
        }
    }
    if !way_below_r(f, g) {
        return Err(Error::HypothesisFailed("f ◁ g fails".into()));
    }
    let eg = scale(eps, g);
    chain.iter().position(|c| leq_r(f, &add(c, &eg))).map(|i| i + 1).ok_or(Error::NoIndexWithinChain)
}

#[derive(Clone, Debug, Serialize)]
pub struct ComplementR {
    pub h: RealElement,
    /// The intermediate `g'` with `f ◁ g' ≪ g`.
    pub g_prime: RealElement,
    /// Smallest `n` with `f <= n·h`, when requested.
    pub proportional: Option<u64>,
}

/// `h` with `f + h = g`: `h = g − f` where `g` is finite and `inf` elsewhere.
///
/// Requires `g'` with `f ◁ g' ≪ g`; candidates `(1 − 2^{-n}) g` and `(1 + 2^{-n}) f` are
/// tried. With `proportional_bound = Some(B)` the result is also certified to satisfy
/// `f ∝ h` by finding `n <= B` with `f <= n·h`. (When `f ◁ g` with margin `ε`,
/// `g − f >= ε g >= ε/(1−ε) f`, so such an `n` exists.)
pub fn complement_r(f: &RealElement, g: &RealElement, proportional_bound: Option<u64>) -> Result<ComplementR> {
    let g_prime = (1..=CHAIN_SEARCH_DEPTH)
        .flat_map(|n| [scale(&(Rational::one() - dyadic(n)), g), scale(&(Rational::one() + dyadic(n)), f)])
        .find(|gp| way_below_r(f, gp) && way_below_r(gp, g))
        .ok_or_else(|| Error::HypothesisFailed("no g' with f ◁ g' ≪ g".into()))?;
    let values: Vec<ExtRational> = f
        .values
        .iter()
        .zip(&g.values)
        .map(|(a, b)| match b {
            ExtRational::Inf => Ok(ExtRational::Inf),
            _ => b.checked_sub(a).ok_or_else(|| Error::HypothesisFailed("f is not below g".into())),
        })
        .collect::<Result<_>>()?;
    let h = RealElement { values, term: Term::Difference(Box::new(g.term.clone()), Box::new(f.term.clone())) };
    if add(f, &h) != *g {
        return Err(Error::InvariantViolation("f + h differs from g".into()));
    }
    let proportional = match proportional_bound {
        None => None,
        Some(bound) => Some(
            (0..=bound)
                .find(|&n| leq_r(f, &scale(&int(n as i128), &h)))
                .ok_or(Error::ProportionalityUnverified(bound))?,
        ),
    };
    Ok(ComplementR { h, g_prime, proportional })
}

/// `(h, h')` with `f' ≪ h ≪ f` and `h + h' = g`, for `f' ≪ f <= g`.
pub fn almost_algebraic_split(
    f1: &RealElement,
    f: &RealElement,
    g: &RealElement,
) -> Result<(RealElement, RealElement)> {
    if !way_below_r(f1, f) || !leq_r(f, g) {
        return Err(Error::HypothesisFailed("need f' ≪ f <= g".into()));
    }
    let half = rat(1, 2);
    let mut candidates = vec![scale(&half, &add(f1, f))];
    for j in 1..=CHAIN_SEARCH_DEPTH {
        candidates.push(scale(&(Rational::one() + dyadic(j)), f1));
        candidates.push(scale(&(Rational::one() - dyadic(j)), f));
    }
    for h in candidates {
        if way_below_r(f1, &h) && way_below_r(&h, f) {
            if let Ok(c) = complement_r(&h, g, None) {
                return Ok((h, c.h));
            }
        }
    }
    Err(Error::HypothesisFailed("no h found between f' and f".into()))
}

#[derive(Clone, Debug, Serialize)]
pub struct Cancellation {
    /// `n` with `h <= n·g`.
    pub n: u64,
    pub premise: bool,
    pub conclusion: bool,
    /// Representative where `f > g`, if any.
    pub witness: Option<usize>,
}

impl Cancellation {
    pub fn holds(&self) -> bool {
        !self.premise || self.conclusion
    }
}

/// `f + h <= g + h` and `h ∝ g` imply `f <= g`.
pub fn cancellation_check(f: &RealElement, g: &RealElement, h: &RealElement, bound: u64) -> Result<Cancellation> {
    let n =
        (0..=bound).find(|&n| leq_r(h, &scale(&int(n as i128), g))).ok_or(Error::ProportionalityUnverified(bound))?;
    let premise = leq_r(&add(f, h), &add(g, h));
    let witness = f.values.iter().zip(&g.values).position(|(a, b)| a > b);
    Ok(Cancellation { n, premise, conclusion: witness.is_none(), witness })
}

/// `n·f <= n·g` implies `f <= g` (for `n >= 1`).
pub fn unperforated(f: &RealElement, g: &RealElement, n: u64) -> bool {
    assert!(n >= 1);
    let q = int(n as i128);
    !leq_r(&scale(&q, f), &scale(&q, g)) || leq_r(f, g)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NamedCheck {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl NamedCheck {
    pub fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        NamedCheck { name: name.into(), pass, detail: detail.into() }
    }
}

/// Checks that representatives of `F(S)` and of `F(S_R)` correspond.
pub fn cone_iso_check(ctx: &RealContext) -> Vec<NamedCheck> {
    let m = &ctx.model;
    let gens = ctx.generating_elements();
    let hats: Vec<RealElement> = gens.iter().map(|g| ctx.embed(g).unwrap()).collect();
    let mut out = Vec::new();

    // each representative is determined by its values on the generating hats, and
    // distinct representatives give distinct functionals on S_R
    let restriction = |i: usize| hats.iter().map(|h| h.values[i].clone()).collect::<Vec<_>>();
    let mut dup = None;
    for i in 0..ctx.len() {
        for j in i + 1..ctx.len() {
            if restriction(i) == restriction(j) {
                dup = Some((i, j));
            }
        }
    }
    out.push(NamedCheck::new("representatives_distinct", dup.is_none(), format!("{dup:?}")));

    // evaluation of ŝ at a representative is the representative's value at s
    let mut bad = None;
    for (g, h) in gens.iter().zip(&hats) {
        for (i, f) in ctx.cone.functionals().enumerate() {
            if h.values[i] != f.eval(g) {
                bad = Some((g.to_string(), i));
            }
        }
    }
    out.push(NamedCheck::new("evaluation_compatible", bad.is_none(), format!("{bad:?}")));

    // hats of sums are sums of hats
    let mut bad = None;
    for (a, ha) in gens.iter().zip(&hats) {
        for (b, hb) in gens.iter().zip(&hats) {
            let hab = ctx.embed(&m.add_unchecked(a, b)).unwrap();
            if hab != add(ha, hb) {
                bad = Some(format!("{a} + {b}"));
            }
        }
    }
    out.push(NamedCheck::new("embedding_additive", bad.is_none(), bad.unwrap_or_default()));

    // within one ideal, λ_I + ρ1 + ρ2 evaluates as the sum of the two representatives' values
    let mut bad = None;
    for (ii, rays) in ctx.cone.rays.iter().enumerate() {
        let base = Functional::of_ideal(m, &ctx.cone.ideals[ii]);
        let idx: Vec<usize> = (0..rays.len()).map(|r| ctx.representative_index(ii, Some(r))).collect();
        for (a, ra) in rays.iter().enumerate() {
            for (b, rb) in rays.iter().enumerate() {
                let combo = base.add(&ra.add(rb));
                for (g, h) in gens.iter().zip(&hats) {
                    if combo.eval(g) != &h.values[idx[a]] + &h.values[idx[b]] {
                        bad = Some(format!("ideal {ii}, rays {a},{b}, element {g}"));
                    }
                }
            }
        }
    }
    out.push(NamedCheck::new("ray_combinations_additive", bad.is_none(), bad.unwrap_or_default()));

    // (S_R)_R: the hat of f in the second realification is λ ↦ λ(f); replaying each
    // generated element's construction at every representative must return its values
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut bad = None;
    for _ in 0..32 {
        let f = sample_combination(ctx, &mut rng, 4, 3);
        for (i, l) in ctx.cone.functionals().enumerate() {
            if f.term.eval_at(l).as_ref() != Some(&f.values[i]) {
                bad = Some(f.term.to_string());
            }
        }
    }
    out.push(NamedCheck::new("double_realification_identical", bad.is_none(), bad.unwrap_or_default()));
    out
}

/// Random `Σ q_c ĝ_c` (tables: `Σ q_s ŝ` over a few elements), coefficients with
/// denominators dividing `den`, numerators up to `den·bound`; occasionally `∞·ĝ`.
pub fn sample_combination(ctx: &RealContext, rng: &mut ChaCha8Rng, den: i128, bound: i128) -> RealElement {
    let mut pick = |allow_inf: bool| -> Option<Rational> {
        if allow_inf && rng.gen_range(0..10) == 0 {
            None
        } else if rng.gen_range(0..4) == 0 {
            Some(Rational::zero())
        } else {
            Some(rat(rng.gen_range(0..=den * bound), den))
        }
    };
    match &ctx.model {
        CuModel::FiniteTable(t) => {
            let mut acc = ctx.zero();
            for s in 1..t.n() {
                if let Some(q) = pick(false) {
                    if !q.is_zero() && s % 2 == 1 {
                        acc = add(&acc, &scale(&q, &ctx.embed(&Element::Index(s)).unwrap()));
                    }
                }
            }
            acc
        }
        m => {
            let coeffs: Vec<Option<Rational>> = (0..m.generators().len()).map(|_| pick(true)).collect();
            ctx.combination(&coeffs).unwrap()
        }
    }
}

/// Sampled O1–O6 on `S_R`, with `◁` standing in for `≪`. Meets needed for O6 come from
/// the grid (see [`crate::grid::interpolation_meet`]); samples use coefficients in
/// `(1/den)·N` so those meets are exact.
pub fn sr_axiom_suite(ctx: &RealContext, trials: usize, seed: u64, den: i128) -> Vec<NamedCheck> {
    use crate::grid::interpolation_meet;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut fails: [Option<String>; 6] = Default::default();
    let dbound = den as u32;
    for _ in 0..trials {
        let f = sample_combination(ctx, &mut rng, den, 3);
        let g = sample_combination(ctx, &mut rng, den, 3);
        let a = rng.gen_range(1..=4u32);
        let chain = rapid_chain(&f, 12);
        let sup = rapid_chain_sup(&f);
        if fails[0].is_none() && !(sup_increasing(&chain).is_ok() && chain.iter().all(|c| leq_r(c, &sup)) && sup == f) {
            fails[0] = Some(f.term.to_string());
        }
        if fails[1].is_none() && !chain.windows(2).all(|w| way_below_r(&w[0], &w[1])) {
            fails[1] = Some(f.term.to_string());
        }
        let f1 = scale(&(Rational::one() - dyadic(a)), &f);
        let g1 = scale(&(Rational::one() - dyadic(a + 1)), &g);
        if fails[2].is_none() && !way_below_r(&add(&f1, &g1), &add(&f, &g)) {
            fails[2] = Some(format!("{} ; {}", f.term, g.term));
        }
        let gchain = rapid_chain(&g, 12);
        let sums: Vec<RealElement> = chain.iter().zip(&gchain).map(|(x, y)| add(x, y)).collect();
        if fails[3].is_none() && !(sup_increasing(&sums).is_ok() && rapid_chain_sup(&add(&f, &g)) == add(&f, &g)) {
            fails[3] = Some(format!("{} ; {}", f.term, g.term));
        }
        // O5: f' ≪ f <= f + g
        let big = add(&f, &g);
        match almost_algebraic_split(&f1, &f, &big) {
            Ok((_, r)) if leq_r(&add(&f1, &r), &big) && leq_r(&big, &add(&f, &r)) => {}
            _ if fails[4].is_none() => fails[4] = Some(format!("{} ; {}", f.term, g.term)),
            _ => {}
        }
        // O6: s' ≪ s <= r + t with s = (r + t) ∧ x
        let (r, t, x) = (f.clone(), g.clone(), sample_combination(ctx, &mut rng, den, 3));
        let ok = (|| -> Result<bool> {
            let s = interpolation_meet(ctx, &add(&r, &t), &x, dbound)?;
            let s1 = scale(&(Rational::one() - dyadic(a)), &s);
            let r1 = interpolation_meet(ctx, &r, &s, dbound)?;
            let t1 = interpolation_meet(ctx, &t, &s, dbound)?;
            Ok(leq_r(&r1, &r) && leq_r(&r1, &s) && leq_r(&t1, &t) && leq_r(&t1, &s) && leq_r(&s1, &add(&r1, &t1)))
        })();
        if fails[5].is_none() && !matches!(ok, Ok(true)) {
            fails[5] = Some(format!("{} ; {} ; {} ({ok:?})", r.term, t.term, x.term));
        }
    }
    fails
        .into_iter()
        .enumerate()
        .map(|(i, f)| {
            NamedCheck::new(format!("O{}", i + 1), f.is_none(), f.unwrap_or_else(|| format!("{trials} trials")))
        })
        .collect()
}

/// `ℕ̄`-valued helper used by tests and the CLI: the hat of `n` on a one-coordinate model.
pub fn hat_n(ctx: &RealContext, n: ExtNat) -> RealElement {
    ctx.embed(&Element::Vector(vec![n])).expect("one-coordinate model")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ext::INF;

    fn nbar1() -> RealContext {
        RealContext::new(CuModel::nbar_power(1), false).unwrap()
    }
    fn h(ctx: &RealContext, n: u64) -> RealElement {
        hat_n(ctx, ExtNat::Fin(n))
    }

    #[test]
    fn embed_scale_add() {
        let ctx = nbar1();
        assert!(ctx.zero().values.iter().all(|v| v.is_zero()));
        let two = h(&ctx, 2);
        assert_eq!(scale(&rat(1, 2), &two), h(&ctx, 1));
        assert_eq!(scale(&Rational::one(), &two), two);
        assert_eq!(add(&two, &ctx.zero()), two);
        assert!(leq_r(&two, &add(&two, &h(&ctx, 1))));
    }

    #[test]
    fn lhd_examples() {
        let ctx = nbar1();
        let g = h(&ctx, 2);
        assert_eq!(triangle_lhd(&scale(&rat(1, 2), &g), &g), Some(rat(1, 2)));
        assert_eq!(triangle_lhd(&g, &g), None);
        let inf = hat_n(&ctx, INF);
        assert!(triangle_lhd(&h(&ctx, 1), &inf).is_some());
        let chain = rapid_chain(&h(&ctx, 1), 6);
        for (n, w) in chain.windows(2).enumerate() {
            // ε = 1 − (1 − 2^{-n})/(1 − 2^{-n-1}) with n starting at 1
            let (a, b) = (Rational::one() - dyadic(n as u32 + 1), Rational::one() - dyadic(n as u32 + 2));
            assert_eq!(triangle_lhd(&w[0], &w[1]), Some(Rational::one() - a / b));
        }
    }

    #[test]
    fn rapid_chain_values() {
        let ctx = nbar1();
        let one = h(&ctx, 1);
        let c = rapid_chain(&one, 3);
        let ray = ctx.representative_index(1, Some(0));
        let vals: Vec<_> = c.iter().map(|x| x.values[ray].clone()).collect();
        assert_eq!(vals, vec![ExtRational::fin(rat(1, 2)), ExtRational::fin(rat(3, 4)), ExtRational::fin(rat(7, 8))]);
        assert_eq!(rapid_chain_sup(&one), one);
        assert!(rapid_chain(&ctx.zero(), 4).iter().all(|x| *x == ctx.zero()));
    }

    #[test]
    fn dini_examples() {
        let ctx = nbar1();
        let f = h(&ctx, 1);
        let g = h(&ctx, 2);
        let chain = rapid_chain(&f, 12);
        // f <= (1 − 2^{-N}) f + ε·2f  iff  2^{-N} <= 2ε
        assert_eq!(dini_index(&f, &chain, &g, &rat(1, 16)).unwrap(), 3);
        assert_eq!(dini_index(&f, &chain, &g, &Rational::one()).unwrap(), 1);
        assert_eq!(dini_index(&ctx.zero(), &rapid_chain(&ctx.zero(), 3), &g, &rat(1, 8)).unwrap(), 1);
        assert!(matches!(dini_index(&f, &chain[..2], &g, &rat(1, 1024)), Err(Error::NoIndexWithinChain)));
    }

    #[test]
    fn complement_examples() {
        let ctx = nbar1();
        let g = h(&ctx, 2);
        let half = scale(&rat(1, 2), &g);
        assert_eq!(complement_r(&half, &g, None).unwrap().h, half);
        assert_eq!(complement_r(&ctx.zero(), &g, None).unwrap().h, g);
        let f = scale(&rat(1, 2), &h(&ctx, 1));
        let c = complement_r(&f, &g, Some(8)).unwrap();
        let ray = ctx.representative_index(1, Some(0));
        assert_eq!(c.h.values[ray], ExtRational::fin(rat(3, 2)));
        assert_eq!(c.proportional, Some(1));
        assert!(complement_r(&g, &g, None).is_err());
    }

    #[test]
    fn split_examples() {
        let ctx = nbar1();
        let f = h(&ctx, 2);
        let (hh, h2) = almost_algebraic_split(&scale(&rat(1, 2), &f), &f, &f).unwrap();
        assert_eq!(hh, scale(&rat(3, 4), &f));
        assert_eq!(add(&hh, &h2), f);
        let (hh, h2) = almost_algebraic_split(&ctx.zero(), &f, &h(&ctx, 3)).unwrap();
        assert!(way_below_r(&hh, &f) && way_below_r(&ctx.zero(), &hh));
        assert_eq!(add(&hh, &h2), h(&ctx, 3));
    }

    #[test]
    fn cancellation_and_unperforation() {
        let ctx = nbar1();
        let (f, g) = (h(&ctx, 1), h(&ctx, 2));
        let c = cancellation_check(&f, &g, &g, 4).unwrap();
        assert!(c.premise && c.conclusion);
        let c = cancellation_check(&g, &f, &ctx.zero(), 4).unwrap();
        assert!(!c.premise && c.holds());
        assert!(matches!(cancellation_check(&f, &ctx.zero(), &g, 4), Err(Error::ProportionalityUnverified(4))));
        assert!(unperforated(&f, &g, 3) && unperforated(&g, &f, 3));
    }

    #[test]
    fn sup_of_chain_must_increase() {
        let ctx = nbar1();
        let (a, b) = (h(&ctx, 2), h(&ctx, 1));
        assert!(matches!(sup_increasing(&[a.clone(), b.clone()]), Err(Error::NotIncreasing(1))));
        assert_eq!(sup_increasing(&[b, a.clone()]).unwrap(), a);
    }

    #[test]
    fn iso_checks_pass_on_small_models() {
        for m in
            [CuModel::nbar_power(1), CuModel::nbar_power(2), crate::fixtures::trivial(), crate::fixtures::three_point()]
        {
            let ctx = RealContext::new(m, false).unwrap();
            for c in cone_iso_check(&ctx) {
                assert!(c.pass, "{}: {}", c.name, c.detail);
            }
        }
    }

    #[test]
    fn sampled_axioms_hold_on_nbar() {
        let ctx = RealContext::new(CuModel::nbar_power(2), false).unwrap();
        for c in sr_axiom_suite(&ctx, 60, 7, 4) {
            assert!(c.pass, "{}: {}", c.name, c.detail);
        }
    }
}
