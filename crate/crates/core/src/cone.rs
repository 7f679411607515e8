//! The cone of functionals `F(S)` of a model.
//!
//! A functional is finite exactly on an ideal `I`, and its finite part ranges over a
//! rational polyhedral cone. So `F(S)` is the union over ideals of `λ_I + C_I`, and
//! `ŝ <= t̂` holds iff `λ(s) <= λ(t)` for `λ_I` and for `λ_I + ρ` with `ρ` an extreme
//! ray of `C_I` (values are linear in the finite part). These are the *representatives*.
//!
//! Ideals of the vector models: an ideal of `N̄^k` is determined by the coordinates
//! its members may use. If `u` is in the ideal, so is `min(u, e_i)`-style data: every
//! `e_i` with `u_i > 0` lies below `u`, and conversely those `e_i` generate, under sums
//! and increasing suprema, everything supported on them. For monotone chains the
//! possible supports are the suffixes `{q, ..., k-1}`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use num::{One, Zero};

use crate::dd;
use crate::error::{Error, Result};
use crate::ext::{int, rat, ExtRational, Rational};
use crate::lp::{Cmp, Lp, LpOutcome};
use crate::model::{CuModel, Element};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Ideal {
    /// Member indices of a finite table.
    Members(Vec<usize>),
    /// Coordinates members of a vector model may be nonzero on.
    Support(Vec<usize>),
}

impl Ideal {
    pub fn contains(&self, a: &Element) -> bool {
        match (self, a) {
            (Ideal::Members(ms), Element::Index(i)) => ms.binary_search(i).is_ok(),
            (Ideal::Support(sup), Element::Vector(v)) => {
                v.iter().enumerate().all(|(i, x)| x.is_zero() || sup.binary_search(&i).is_ok())
            }
            _ => false,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Ideal::Members(v) | Ideal::Support(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn indices(&self) -> &[usize] {
        match self {
            Ideal::Members(v) | Ideal::Support(v) => v,
        }
    }
}

/// A functional: a table of values, or `λ(u) = Σ c_i u_i` on a vector model.
///
/// On monotone chains the coefficient vector is kept canonical: infinite entries form a
/// prefix. (Only `d_p = Σ_{i>=p} c_i`, the value on the step vector `χ_p`, is
/// observable, and `d_p = inf` forces `d_q = inf` for `q < p`.)
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Functional {
    Values(Vec<ExtRational>),
    Coefficients(Vec<ExtRational>),
}

impl Functional {
    pub fn zero(m: &CuModel) -> Functional {
        match m {
            CuModel::FiniteTable(t) => Functional::Values(vec![ExtRational::zero(); t.n()]),
            _ => Functional::Coefficients(vec![ExtRational::zero(); m.dim().unwrap()]),
        }
    }

    /// `λ_I`: 0 on `I`, `inf` elsewhere.
    pub fn of_ideal(m: &CuModel, ideal: &Ideal) -> Functional {
        match m {
            CuModel::FiniteTable(t) => Functional::Values(
                (0..t.n())
                    .map(|i| if ideal.contains(&Element::Index(i)) { ExtRational::zero() } else { ExtRational::Inf })
                    .collect(),
            ),
            _ => {
                let k = m.dim().unwrap();
                Functional::coefficients(
                    m,
                    (0..k)
                        .map(|i| if ideal.indices().contains(&i) { ExtRational::zero() } else { ExtRational::Inf })
                        .collect(),
                )
            }
        }
    }

    /// Coefficient functional, canonicalized on chains.
    pub fn coefficients(m: &CuModel, mut c: Vec<ExtRational>) -> Functional {
        if matches!(m, CuModel::MonotoneChain { .. }) {
            if let Some(last) = c.iter().rposition(|x| x.is_inf()) {
                c[..last].iter_mut().for_each(|x| *x = ExtRational::Inf);
            }
        }
        Functional::Coefficients(c)
    }

    pub fn eval(&self, a: &Element) -> ExtRational {
        match (self, a) {
            (Functional::Values(v), Element::Index(i)) => v[*i].clone(),
            (Functional::Coefficients(c), Element::Vector(u)) => {
                c.iter().zip(u).map(|(ci, &ui)| ci.times_nat(ui)).sum()
            }
            _ => panic!("functional/element kind mismatch"),
        }
    }

    pub fn add(&self, other: &Functional) -> Functional {
        match (self, other) {
            (Functional::Values(a), Functional::Values(b)) => {
                Functional::Values(a.iter().zip(b).map(|(x, y)| x + y).collect())
            }
            // a prefix of infinities stays a prefix under addition
            (Functional::Coefficients(a), Functional::Coefficients(b)) => {
                Functional::Coefficients(a.iter().zip(b).map(|(x, y)| x + y).collect())
            }
            _ => panic!("functional kind mismatch"),
        }
    }

    pub fn scale(&self, q: &Rational) -> Functional {
        let f = |v: &[ExtRational]| v.iter().map(|x| x.scale(q)).collect();
        match self {
            Functional::Values(v) => Functional::Values(f(v)),
            Functional::Coefficients(c) => Functional::Coefficients(f(c)),
        }
    }

    /// Values on the model's generators (every element, for tables). These determine
    /// the functional, and the order on functionals is the order on these values.
    pub fn generator_values(&self, m: &CuModel) -> Vec<ExtRational> {
        match (self, m) {
            (Functional::Values(v), _) => v.clone(),
            (Functional::Coefficients(c), CuModel::MonotoneChain { .. }) => {
                let mut d = vec![ExtRational::zero(); c.len()];
                let mut acc = ExtRational::zero();
                for p in (0..c.len()).rev() {
                    acc = &acc + &c[p];
                    d[p] = acc.clone();
                }
                d
            }
            (Functional::Coefficients(c), _) => c.clone(),
        }
    }

    /// Inverse of [`Functional::generator_values`].
    pub fn from_generator_values(m: &CuModel, d: Vec<ExtRational>) -> Result<Functional> {
        let f = match m {
            CuModel::FiniteTable(_) => Functional::Values(d),
            CuModel::NbarPower { .. } => Functional::Coefficients(d),
            CuModel::MonotoneChain { k } => {
                let mut c = Vec::with_capacity(*k);
                for p in 0..*k {
                    let next = if p + 1 < *k { d[p + 1].clone() } else { ExtRational::zero() };
                    if next > d[p] {
                        return Err(Error::NotMonotone(format!(
                            "value {} on step {} exceeds value {} on step {p}",
                            next,
                            p + 1,
                            d[p]
                        )));
                    }
                    c.push(d[p].checked_sub(&next).unwrap_or(ExtRational::Inf));
                }
                Functional::coefficients(m, c)
            }
        };
        f.validate(m)?;
        Ok(f)
    }

    pub fn leq(&self, m: &CuModel, other: &Functional) -> bool {
        self.generator_values(m).iter().zip(other.generator_values(m)).all(|(a, b)| *a <= b)
    }

    /// Elements on which the functional is finite.
    pub fn ideal(&self, m: &CuModel) -> Ideal {
        match self {
            Functional::Values(v) => Ideal::Members((0..v.len()).filter(|&i| v[i].is_finite()).collect()),
            Functional::Coefficients(_) => {
                let d = self.generator_values(m);
                Ideal::Support((0..d.len()).filter(|&i| d[i].is_finite()).collect())
            }
        }
    }

    /// λ(0) = 0, additivity, monotonicity (tables, exhaustively); shape checks otherwise.
    pub fn validate(&self, m: &CuModel) -> Result<()> {
        match (self, m) {
            (Functional::Values(v), CuModel::FiniteTable(t)) => {
                let n = t.n();
                if v.len() != n {
                    return Err(Error::InvariantViolation(format!("{} values for {n} elements", v.len())));
                }
                if !v[0].is_zero() {
                    return Err(Error::NotNormalized);
                }
                for a in 0..n {
                    for b in 0..n {
                        if v[t.sum(a, b)] != &v[a] + &v[b] {
                            return Err(Error::NotAdditive(format!("({a},{b})")));
                        }
                        if t.le(a, b) && v[a] > v[b] {
                            return Err(Error::NotMonotone(format!("({a},{b})")));
                        }
                    }
                }
                Ok(())
            }
            (Functional::Coefficients(c), _) if Some(c.len()) == m.dim() => {
                if matches!(m, CuModel::MonotoneChain { .. }) {
                    if let Some(last) = c.iter().rposition(|x| x.is_inf()) {
                        if c[..last].iter().any(|x| x.is_finite()) {
                            return Err(Error::InvariantViolation("non-canonical chain coefficients".into()));
                        }
                    }
                }
                Ok(())
            }
            _ => Err(Error::InvariantViolation("functional does not match the model".into())),
        }
    }

    pub fn to_string_short(&self) -> String {
        let parts = |v: &[ExtRational]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        match self {
            Functional::Values(v) => format!("values[{}]", parts(v)),
            Functional::Coefficients(c) => format!("coeffs[{}]", parts(c)),
        }
    }
}

/// Ideals in a fixed order: by size, then lexicographically.
pub fn enumerate_ideals(m: &CuModel, force: bool) -> Result<Vec<Ideal>> {
    m.guard_exhaustive(force)?;
    let mut out = match m {
        CuModel::FiniteTable(t) => {
            let n = t.n();
            let close = |set: &mut Vec<bool>| loop {
                let mut changed = false;
                for a in 0..n {
                    if !set[a] {
                        continue;
                    }
                    for b in 0..n {
                        if !set[b] && t.le(b, a) {
                            set[b] = true;
                            changed = true;
                        }
                        if set[b] && !set[t.sum(a, b)] {
                            set[t.sum(a, b)] = true;
                            changed = true;
                        }
                    }
                }
                if !changed {
                    break;
                }
            };
            let to_ideal = |s: &[bool]| Ideal::Members((0..n).filter(|&i| s[i]).collect());
            let mut zero = vec![false; n];
            zero[0] = true;
            let mut seen = vec![to_ideal(&zero)];
            let mut frontier = vec![zero];
            while let Some(set) = frontier.pop() {
                for x in (0..n).filter(|&x| !set[x]) {
                    let mut next = set.clone();
                    next[x] = true;
                    close(&mut next);
                    let id = to_ideal(&next);
                    if !seen.contains(&id) {
                        seen.push(id);
                        frontier.push(next);
                    }
                }
            }
            seen
        }
        CuModel::NbarPower { k } => {
            (0..1usize << k).map(|mask| Ideal::Support((0..*k).filter(|i| mask >> i & 1 == 1).collect())).collect()
        }
        CuModel::MonotoneChain { k } => (0..=*k).rev().map(|q| Ideal::Support((q..*k).collect())).collect(),
    };
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

/// The linear system whose solution cone is the finite parts of functionals finite on
/// `ideal`: `vars[j]` is the element index (tables) or coordinate (vector models) of
/// unknown `j`; solutions satisfy `eqs·x = 0` and `ineqs·x >= 0`.
#[derive(Clone, Debug)]
pub struct FinitePartSystem {
    pub vars: Vec<usize>,
    pub eqs: Vec<Vec<Rational>>,
    pub ineqs: Vec<Vec<Rational>>,
}

pub fn finite_part_system(m: &CuModel, ideal: &Ideal) -> FinitePartSystem {
    let vars = ideal.indices().to_vec();
    let nv = vars.len();
    let unit = |j: usize, c: i128, row: &mut Vec<Rational>| row[j] += int(c);
    let mut ineqs: Vec<Vec<Rational>> = (0..nv)
        .map(|j| {
            let mut r = vec![Rational::zero(); nv];
            unit(j, 1, &mut r);
            r
        })
        .collect();
    let mut eqs = Vec::new();
    if let CuModel::FiniteTable(t) = m {
        let pos = |a: usize| vars.binary_search(&a).expect("ideal member");
        let mut r = vec![Rational::zero(); nv];
        unit(pos(0), 1, &mut r);
        eqs.push(r);
        for (ia, &a) in vars.iter().enumerate() {
            for &b in &vars[ia..] {
                let mut r = vec![Rational::zero(); nv];
                unit(pos(t.sum(a, b)), 1, &mut r);
                unit(pos(a), -1, &mut r);
                unit(pos(b), -1, &mut r);
                if r.iter().any(|x| !x.is_zero()) {
                    eqs.push(r);
                }
                for (x, y) in [(a, b), (b, a)] {
                    if x != y && t.le(x, y) {
                        let mut r = vec![Rational::zero(); nv];
                        unit(pos(y), 1, &mut r);
                        unit(pos(x), -1, &mut r);
                        ineqs.push(r);
                    }
                }
            }
        }
    }
    FinitePartSystem { vars, eqs, ineqs }
}

impl FinitePartSystem {
    pub fn satisfied_by(&self, x: &[Rational]) -> bool {
        let dot = |r: &[Rational]| -> Rational { r.iter().zip(x).map(|(a, b)| a * b).sum() };
        self.eqs.iter().all(|r| dot(r).is_zero()) && self.ineqs.iter().all(|r| dot(r) >= Rational::zero())
    }

    /// Adds the system's constraints to an LP whose first `vars.len()` variables are the
    /// unknowns.
    pub fn add_to(&self, lp: &mut Lp) {
        let nv = lp.num_vars();
        let pad = |r: &Vec<Rational>| {
            let mut row = r.clone();
            row.resize(nv, Rational::zero());
            row
        };
        for r in &self.eqs {
            lp.constrain(pad(r), Cmp::Eq, Rational::zero());
        }
        for r in &self.ineqs {
            lp.constrain(pad(r), Cmp::Ge, Rational::zero());
        }
    }

    /// The functional with finite part `x` on this system's ideal.
    pub fn functional(&self, m: &CuModel, x: &[Rational]) -> Functional {
        match m {
            CuModel::FiniteTable(t) => {
                let mut v = vec![ExtRational::Inf; t.n()];
                for (j, &a) in self.vars.iter().enumerate() {
                    v[a] = ExtRational::fin(x[j]);
                }
                Functional::Values(v)
            }
            _ => {
                let mut c = vec![ExtRational::Inf; m.dim().unwrap()];
                for (j, &i) in self.vars.iter().enumerate() {
                    c[i] = ExtRational::fin(x[j]);
                }
                Functional::coefficients(m, c)
            }
        }
    }

    /// Finite part of `f` in this system's coordinates (`None` if some value is infinite).
    pub fn finite_part(&self, m: &CuModel, f: &Functional) -> Option<Vec<Rational>> {
        let d = match f {
            Functional::Values(v) => v.clone(),
            Functional::Coefficients(c) => {
                let _ = m;
                c.clone()
            }
        };
        self.vars.iter().map(|&i| d[i].finite().cloned()).collect()
    }
}

/// Extreme rays of the finite-part cone of `ideal`, as functionals.
pub fn cone_rays(m: &CuModel, ideal: &Ideal) -> Vec<Functional> {
    let sys = finite_part_system(m, ideal);
    dd::extreme_rays(sys.vars.len(), &sys.eqs, &sys.ineqs).into_iter().map(|x| sys.functional(m, &x)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Representative {
    pub ideal: usize,
    /// `None` for `λ_I` itself.
    pub ray: Option<usize>,
    pub functional: Functional,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FunctionalCone {
    pub ideals: Vec<Ideal>,
    pub rays: Vec<Vec<Functional>>,
    pub representatives: Vec<Representative>,
}

impl FunctionalCone {
    pub fn compute(m: &CuModel, force: bool) -> Result<FunctionalCone> {
        let ideals = enumerate_ideals(m, force)?;
        let rays: Vec<Vec<Functional>> = ideals.par_iter().map(|i| cone_rays(m, i)).collect();
        let mut representatives = Vec::new();
        for (ii, ideal) in ideals.iter().enumerate() {
            let base = Functional::of_ideal(m, ideal);
            representatives.push(Representative { ideal: ii, ray: None, functional: base });
            for (ri, r) in rays[ii].iter().enumerate() {
                representatives.push(Representative { ideal: ii, ray: Some(ri), functional: r.clone() });
            }
        }
        Ok(FunctionalCone { ideals, rays, representatives })
    }

    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    pub fn functionals(&self) -> impl Iterator<Item = &Functional> {
        self.representatives.iter().map(|r| &r.functional)
    }

    pub fn hat_evaluate(&self, s: &Element) -> Vec<ExtRational> {
        self.functionals().map(|f| f.eval(s)).collect()
    }

    /// `ŝ <= t̂`, decided on the representatives.
    pub fn compare_hat_lp(&self, s: &Element, t: &Element) -> bool {
        self.functionals().all(|f| f.eval(s) <= f.eval(t))
    }

    /// First representative separating `s` from `t`, if any.
    pub fn separating(&self, s: &Element, t: &Element) -> Option<usize> {
        self.functionals().position(|f| f.eval(s) > f.eval(t))
    }

    /// Checks, on `samples` random points per ideal, that the finite-part cone lies in
    /// the conic hull of the computed rays. Points are LP optima of random objectives over
    /// the cone truncated by `Σ x <= 1`; membership in the hull is an LP feasibility test.
    pub fn verify_hull(&self, m: &CuModel, samples: usize, seed: u64) -> Result<()> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for (ii, ideal) in self.ideals.iter().enumerate() {
            let sys = finite_part_system(m, ideal);
            let nv = sys.vars.len();
            if nv == 0 {
                continue;
            }
            let ray_parts: Vec<Vec<Rational>> =
                self.rays[ii].iter().map(|r| sys.finite_part(m, r).expect("ray is finite on its ideal")).collect();
            for r in &ray_parts {
                if !sys.satisfied_by(r) {
                    return Err(Error::InvariantViolation(format!("ray outside cone of ideal {ii}")));
                }
            }
            for _ in 0..samples {
                let mut lp = Lp::new(nv);
                sys.add_to(&mut lp);
                lp.constrain(vec![Rational::one(); nv], Cmp::Le, Rational::one());
                let w: Vec<Rational> = (0..nv).map(|_| int(rng.gen_range(-3..=3))).collect();
                let LpOutcome::Optimal { x, .. } = lp.maximize(&w) else {
                    return Err(Error::InvariantViolation("bounded sampling LP failed".into()));
                };
                // midpoint with a second optimum keeps samples off the vertices too
                let w2: Vec<Rational> = (0..nv).map(|_| int(rng.gen_range(-3..=3))).collect();
                let LpOutcome::Optimal { x: x2, .. } = lp.maximize(&w2) else { unreachable!() };
                let p: Vec<Rational> = x.iter().zip(&x2).map(|(a, b)| (a + b) * rat(1, 2)).collect();
                let mut mem = Lp::new(ray_parts.len());
                for j in 0..nv {
                    let row: Vec<Rational> = ray_parts.iter().map(|r| r[j]).collect();
                    mem.constrain(row, Cmp::Eq, p[j]);
                }
                if mem.feasible_point().is_none() {
                    return Err(Error::InvariantViolation(format!(
                        "point {p:?} of ideal {ii} not in the hull of its rays"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Supremum-preserving regularization `λ̃(s) = sup_{s' << s} α(s')` of an additive,
/// monotone map with `α(0) = 0`.
///
/// On tables `≪` is `≤`, so `λ̃ = α`. On vector models every generator is finite, hence
/// `≪` itself, so `λ̃` agrees with `α` on generators; `λ̃` is then the unique functional
/// with those generator values.
pub fn regularize(m: &CuModel, alpha: &dyn Fn(&Element) -> ExtRational) -> Result<Functional> {
    let probe = match m {
        CuModel::FiniteTable(_) => m.elements().unwrap(),
        _ => m.grid(2, true),
    };
    if !alpha(&m.zero()).is_zero() {
        return Err(Error::NotNormalized);
    }
    for a in &probe {
        for b in &probe {
            if alpha(&m.add_unchecked(a, b)) != alpha(a) + alpha(b) {
                return Err(Error::NotAdditive(format!("({a},{b})")));
            }
            if m.leq_unchecked(a, b) && alpha(a) > alpha(b) {
                return Err(Error::NotMonotone(format!("({a},{b})")));
            }
        }
    }
    match m {
        CuModel::FiniteTable(_) => {
            let f = Functional::Values(probe.iter().map(alpha).collect());
            f.validate(m)?;
            Ok(f)
        }
        _ => Functional::from_generator_values(m, m.generators().iter().map(alpha).collect()),
    }
}

/// `γ` with `α + γ = β`, from `γ(s) = β(s) − α(s)` where `β(s) < inf` (else `inf`),
/// followed by regularization.
pub fn complement(m: &CuModel, alpha: &Functional, beta: &Functional) -> Result<Functional> {
    let (da, db) = (alpha.generator_values(m), beta.generator_values(m));
    let probe = match m {
        CuModel::FiniteTable(_) => m.elements().unwrap(),
        _ => m.generators(),
    };
    for (i, (a, b)) in da.iter().zip(&db).enumerate() {
        if a > b {
            return Err(Error::NotDominated(probe[i].to_string()));
        }
    }
    let dg: Vec<ExtRational> = da
        .iter()
        .zip(&db)
        .map(|(a, b)| if b.is_finite() { b.checked_sub(a).unwrap() } else { ExtRational::Inf })
        .collect();
    let gamma = Functional::from_generator_values(m, dg)?;
    if alpha.add(&gamma).generator_values(m) != db {
        return Err(Error::InvariantViolation("α + γ differs from β".into()));
    }
    Ok(gamma)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MnWitness {
    pub s_prime: Element,
    pub epsilon: String,
    pub m: u64,
    pub n: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MnVerdict {
    pub holds: bool,
    pub witnesses: Vec<MnWitness>,
    /// `(s', ε)` for which no admissible `(M, N)` exists.
    pub failure: Option<(Element, String)>,
}

pub fn epsilon_schedule(depth: u32) -> Vec<Rational> {
    (1..=depth).map(|j| rat(1, 1i128 << j)).collect()
}

/// Decides `ŝ <= t̂` through multiples: for each `s' << s` (from a cofinal finite set)
/// and each `ε` of the schedule, looks for `M/N > 1 − ε` with `M s' <= N t`.
///
/// Tables: `s'` ranges over `{s' <= s}`. Orbits `n·x` are constant from the
/// stabilization index `L(x)` on. If `∞s' <= ∞t` then `M = N = max(L)` works; otherwise
/// `M < L(s')` and for each such `M` the least `N` is found by scanning `N <= L(t)`.
///
/// Vector models: `s'` ranges over the truncations `min(s, c·1)`; then `M s' <= N t`
/// iff `M/N <= ρ = min_{s'_i > 0} t_i / s'_i`, so an admissible ratio exists iff
/// `ρ > 1 − ε`.
pub fn compare_hat_mn(m: &CuModel, s: &Element, t: &Element, depth: u32) -> Result<MnVerdict> {
    m.check(s)?;
    m.check(t)?;
    let eps = epsilon_schedule(depth);
    let mut witnesses = Vec::new();
    let fail = |s1: &Element, e: &Rational, w: Vec<MnWitness>| MnVerdict {
        holds: false,
        witnesses: w,
        failure: Some((s1.clone(), crate::ext::fmt_rational(e))),
    };
    match m {
        CuModel::FiniteTable(tab) => {
            let ti = t.as_index().unwrap();
            let lt = tab.stabilization_index(ti).max(1);
            for s1 in m.elements_below(s) {
                let si = s1.as_index().unwrap();
                let ls = tab.stabilization_index(si);
                let inf_s = tab.multiple(ls, si);
                let inf_t = tab.multiple(lt, ti);
                if tab.le(inf_s, inf_t) {
                    let l = ls.max(lt).max(1);
                    for e in &eps {
                        witnesses.push(MnWitness {
                            s_prime: s1.clone(),
                            epsilon: crate::ext::fmt_rational(e),
                            m: l,
                            n: l,
                        });
                    }
                    continue;
                }
                // best ratio over M < L(s')
                let mut best: Option<(u64, u64)> = None;
                for mm in 1..ls {
                    let lhs = tab.multiple(mm, si);
                    if let Some(nn) = (1..=lt).find(|&nn| tab.le(lhs, tab.multiple(nn, ti))) {
                        let better = match best {
                            None => true,
                            Some((bm, bn)) => (mm as u128) * (bn as u128) > (bm as u128) * (nn as u128),
                        };
                        if better {
                            best = Some((mm, nn));
                        }
                    }
                }
                for e in &eps {
                    match best {
                        Some((mm, nn)) if rat(mm as i128, nn as i128) > Rational::one() - e => {
                            witnesses.push(MnWitness {
                                s_prime: s1.clone(),
                                epsilon: crate::ext::fmt_rational(e),
                                m: mm,
                                n: nn,
                            })
                        }
                        _ => return Ok(fail(&s1, e, witnesses)),
                    }
                }
            }
        }
        _ => {
            let (sv, tv) = (s.as_vector().unwrap(), t.as_vector().unwrap());
            let maxf = sv.iter().chain(tv).filter_map(|x| x.finite()).max().unwrap_or(0);
            let bound = 2 * maxf + 2;
            for c in 0..=bound {
                let s1 = m.truncate(s, c);
                let s1v = s1.as_vector().unwrap();
                // ρ as (num, den); None means +inf
                let mut rho: Option<(u64, u64)> = None;
                for (a, b) in s1v.iter().zip(tv) {
                    let a = a.finite().unwrap();
                    if a == 0 {
                        continue;
                    }
                    if let Some(b) = b.finite() {
                        let smaller = match rho {
                            None => true,
                            Some((rn, rd)) => (b as u128) * (rd as u128) < (rn as u128) * (a as u128),
                        };
                        if smaller {
                            rho = Some((b, a));
                        }
                    }
                }
                for e in &eps {
                    let (mm, nn) = match rho {
                        None => (1, 1),
                        Some((rn, rd)) if rn >= rd => (1, 1),
                        Some((rn, rd)) => (rn, rd),
                    };
                    let ok = rat(mm as i128, nn as i128) > Rational::one() - e;
                    if !ok {
                        return Ok(fail(&s1, e, witnesses));
                    }
                    debug_assert!(m.leq_unchecked(&m.nat_multiple_unchecked(mm, &s1), &m.nat_multiple_unchecked(nn, t)));
                    witnesses.push(MnWitness {
                        s_prime: s1.clone(),
                        epsilon: crate::ext::fmt_rational(e),
                        m: mm,
                        n: nn,
                    });
                }
            }
        }
    }
    Ok(MnVerdict { holds: true, witnesses, failure: None })
}
