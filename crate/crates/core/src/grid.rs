//! Finite-grid searches in `S_R`: refinement witnesses and greatest lower bounds.
//!
//! Coefficients range over `a/b` with `1 <= b <= D` (plus `inf` where allowed). On `N̄^k`
//! elements built from the generators are determined coordinatewise, so both searches
//! solve one scalar problem per coordinate and then verify the assembled result on every
//! representative. Other models fall back to enumerating grid elements: `Σ q_c ĝ_c` on
//! vector models, `q·ŝ` on tables.

use num::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ext::{int, ExtRational, Rational};
use crate::model::CuModel;
use crate::real::{add, leq_r, rapid_chain, scale, way_below_r, NamedCheck, RealContext, RealElement, Term};

pub const DEFAULT_DENOMINATOR_BOUND: u32 = 4;
pub const NODE_BUDGET: u64 = 2_000_000;
pub const MAX_REFINEMENT_SIZE: usize = 3;

/// All `a/b` in `[0, max]` with `1 <= b <= den`, ascending.
pub fn grid_values(den: u32, max: &Rational) -> Vec<Rational> {
    let mut out: Vec<Rational> = (1..=den as i128)
        .flat_map(|b| {
            let top = (max * int(b)).floor().to_integer();
            (0..=top).map(move |a| Rational::new(a, b))
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Greatest grid value `<= x`.
pub fn floor_to_grid(x: &ExtRational, den: u32) -> ExtRational {
    match x {
        ExtRational::Inf => ExtRational::Inf,
        ExtRational::Fin(q) => ExtRational::Fin(
            (1..=den as i128).map(|b| Rational::new((q * int(b)).floor().to_integer(), b)).max().unwrap(),
        ),
    }
}

fn scalar_lhd(x: &ExtRational, y: &ExtRational) -> bool {
    y.is_inf() || (x.is_finite() && (x < y || (x.is_zero() && y.is_zero())))
}

fn pointwise_min(f: &RealElement, g: &RealElement) -> Vec<ExtRational> {
    f.values.iter().zip(&g.values).map(|(a, b)| a.min(b).clone()).collect()
}

fn within(x: &RealElement, ub: &[ExtRational]) -> bool {
    x.values.iter().zip(ub).all(|(a, b)| a <= b)
}

/// Indices of the representatives reading off the coefficient of each generator, when
/// the model is `N̄^k`.
fn coordinate_readers(ctx: &RealContext) -> Option<Vec<usize>> {
    if !matches!(ctx.model, CuModel::NbarPower { .. }) {
        return None;
    }
    let gens = ctx.model.generators();
    gens.iter()
        .enumerate()
        .map(|(c, _)| {
            ctx.cone.functionals().position(|l| {
                gens.iter().enumerate().all(|(d, g)| l.eval(g) == ExtRational::from_int((c == d) as i128))
            })
        })
        .collect()
}

fn coordinates(f: &RealElement, readers: &[usize]) -> Vec<ExtRational> {
    readers.iter().map(|&i| f.values[i].clone()).collect()
}

fn assemble(ctx: &RealContext, coords: &[ExtRational]) -> Result<RealElement> {
    let coeffs: Vec<Option<Rational>> = coords.iter().map(|c| c.finite().cloned()).collect();
    ctx.combination(&coeffs)
}

fn max_finite(ub: &[ExtRational]) -> Rational {
    ub.iter().filter_map(|v| v.finite().cloned()).max().unwrap_or_else(Rational::zero).max(Rational::one())
}

/// Grid elements below `ub`, in enumeration order.
pub fn candidates_below(ctx: &RealContext, ub: &[ExtRational], den: u32) -> Result<Vec<RealElement>> {
    let values = grid_values(den, &max_finite(ub));
    let mut out: Vec<RealElement> = Vec::new();
    let push = |x: RealElement, out: &mut Vec<RealElement>| {
        if within(&x, ub) && !out.contains(&x) {
            out.push(x);
        }
    };
    match &ctx.model {
        CuModel::FiniteTable(_) => {
            push(ctx.zero(), &mut out);
            for s in ctx.model.elements().unwrap().into_iter().skip(1) {
                let hat = ctx.embed(&s)?;
                for q in values.iter().filter(|q| !q.is_zero()) {
                    push(scale(q, &hat), &mut out);
                }
            }
        }
        m => {
            let gens: Vec<RealElement> = m.generators().iter().map(|g| ctx.embed(g)).collect::<Result<_>>()?;
            let infs: Vec<RealElement> =
                m.generators().iter().map(|g| ctx.embed(&m.infinity_multiple(g)?)).collect::<Result<_>>()?;
            fn rec(
                c: usize,
                acc: RealElement,
                gens: &[RealElement],
                infs: &[RealElement],
                values: &[Rational],
                ub: &[ExtRational],
                out: &mut Vec<RealElement>,
            ) {
                if !within(&acc, ub) {
                    return;
                }
                if c == gens.len() {
                    if !out.contains(&acc) {
                        out.push(acc);
                    }
                    return;
                }
                for q in values {
                    let next = if q.is_zero() { acc.clone() } else { add(&acc, &scale(q, &gens[c])) };
                    if !within(&next, ub) {
                        break;
                    }
                    rec(c + 1, next, gens, infs, values, ub, out);
                }
                rec(c + 1, add(&acc, &infs[c]), gens, infs, values, ub, out);
            }
            rec(0, ctx.zero(), &gens, &infs, &values, ub, &mut out);
        }
    }
    Ok(out)
}

fn tag_meet(mut x: RealElement, f: &RealElement, g: &RealElement) -> RealElement {
    x.term = Term::Meet(Box::new(f.term.clone()), Box::new(g.term.clone()));
    x
}

/// Greatest grid element below both `f` and `g`.
pub fn interpolation_meet(ctx: &RealContext, f: &RealElement, g: &RealElement, den: u32) -> Result<RealElement> {
    let ub = pointwise_min(f, g);
    if let Some(readers) = coordinate_readers(ctx) {
        let coords: Vec<ExtRational> = readers.iter().map(|&i| floor_to_grid(&ub[i], den)).collect();
        let x = assemble(ctx, &coords)?;
        // every grid element below f and g has coordinates below these, hence lies below x
        if within(&x, &ub) {
            return Ok(tag_meet(x, f, g));
        }
    }
    let cands = candidates_below(ctx, &ub, den)?;
    cands
        .iter()
        .find(|c| cands.iter().all(|d| leq_r(d, c)))
        .map(|c| tag_meet(c.clone(), f, g))
        .ok_or_else(|| Error::GridExhausted(format!("no greatest grid element below both (D = {den})")))
}

/// The interpolation identities on a given triple, with meets from the grid.
pub fn interpolation_checks(
    ctx: &RealContext,
    f: &RealElement,
    g: &RealElement,
    h: &RealElement,
    den: u32,
) -> Result<Vec<NamedCheck>> {
    let meet = |a: &RealElement, b: &RealElement, d: u32| interpolation_meet(ctx, a, b, d);
    let fg = meet(f, g, den)?;
    let ub = pointwise_min(f, g);
    let below = candidates_below(ctx, &ub, den)?;
    let greatest = within(&fg, &ub) && below.iter().all(|c| leq_r(c, &fg));

    // sup_n (f ∧ g_n) = f ∧ sup_n g_n for g_n = (1 − 2^{-n}) g: the chain is increasing,
    // stays below f ∧ g, and f ∧ g <= (f ∧ g_N) + 2^{-N} g for every N
    const N: u32 = 6;
    let fine = den * (1 << (N + 1));
    let chain: Vec<RealElement> = rapid_chain(g, N).iter().map(|gn| meet(f, gn, fine)).collect::<Result<_>>()?;
    let fg_fine = meet(f, g, fine)?;
    let increasing = chain.windows(2).all(|w| leq_r(&w[0], &w[1]));
    let bounded = chain.iter().all(|c| leq_r(c, &fg_fine));
    let converges =
        chain.iter().enumerate().all(|(n, c)| leq_r(&fg_fine, &add(c, &scale(&Rational::new(1, 1 << (n + 1)), g))));

    let lhs = add(&fg, h);
    let rhs = meet(&add(f, h), &add(g, h), den)?;
    let pre_l = meet(&add(f, g), h, den)?;
    let pre_r = add(&meet(f, h, den)?, &meet(g, h, den)?);
    Ok(vec![
        NamedCheck::new("meet_is_greatest_lower_bound", greatest, format!("{} candidates", below.len())),
        NamedCheck::new(
            "meet_commutes_with_increasing_sup",
            increasing && bounded && converges,
            format!("chain of {N}"),
        ),
        NamedCheck::new("meet_translation_invariant", lhs == rhs, String::new()),
        NamedCheck::new("meet_subadditive", leq_r(&pre_l, &pre_r), String::new()),
    ])
}

#[derive(Clone, Debug, Serialize)]
pub struct Refinement {
    /// `h[i][j]`, rows indexed by the `f_i`, columns by the `g_j`.
    pub h: Vec<Vec<RealElement>>,
    pub nodes: u64,
}

/// Checks `f'_i ≪ Σ_j h_ij ≪ f_i` and `Σ_i h_ij <= g_j`.
pub fn verify_refinement(
    f1: &[RealElement],
    f: &[RealElement],
    g: &[RealElement],
    h: &[Vec<RealElement>],
    zero: &RealElement,
) -> Vec<NamedCheck> {
    let mut out = Vec::new();
    for (i, row) in h.iter().enumerate() {
        let r = crate::real::sum(row, zero);
        out.push(NamedCheck::new(format!("row_{i}_above_f'"), way_below_r(&f1[i], &r), String::new()));
        out.push(NamedCheck::new(format!("row_{i}_below_f"), way_below_r(&r, &f[i]), String::new()));
    }
    for (j, gj) in g.iter().enumerate() {
        let col: Vec<RealElement> = h.iter().map(|row| row[j].clone()).collect();
        out.push(NamedCheck::new(
            format!("column_{j}_below_g"),
            leq_r(&crate::real::sum(&col, zero), gj),
            String::new(),
        ));
    }
    out
}

fn scalar_refinement(
    f1: &[ExtRational],
    f: &[ExtRational],
    g: &[ExtRational],
    den: u32,
    nodes: &mut u64,
) -> Result<Option<Vec<Vec<ExtRational>>>> {
    let (n, m) = (f.len(), g.len());
    let gsum: ExtRational = g.iter().cloned().sum();
    let cells: Vec<Vec<ExtRational>> = (0..n * m)
        .map(|k| {
            let (i, j) = (k / m, k % m);
            let ub = f[i].clone().min(g[j].clone());
            let mut vals: Vec<ExtRational> = grid_values(den, &max_finite(std::slice::from_ref(&ub)))
                .into_iter()
                .map(ExtRational::Fin)
                .filter(|v| *v <= ub)
                .collect();
            if ub.is_inf() {
                vals.push(ExtRational::Inf);
            }
            // nearest to the proportional split f_i g_j / Σ g first
            if let (Some(fi), Some(gj), Some(gs)) = (f[i].finite(), g[j].finite(), gsum.finite()) {
                if !gs.is_zero() {
                    let target = fi * gj / gs;
                    vals.sort_by_key(|v| (v.is_inf(), v.finite().map(|x| (x - target).abs())));
                }
            }
            vals
        })
        .collect();
    fn rec(
        k: usize,
        cur: &mut Vec<ExtRational>,
        cells: &[Vec<ExtRational>],
        f1: &[ExtRational],
        f: &[ExtRational],
        g: &[ExtRational],
        nodes: &mut u64,
    ) -> Result<bool> {
        let m = g.len();
        *nodes += 1;
        if *nodes > NODE_BUDGET {
            return Err(Error::SearchBoundExceeded(format!("{NODE_BUDGET} nodes")));
        }
        if k == cells.len() {
            return Ok(true);
        }
        let (i, j) = (k / m, k % m);
        for v in &cells[k] {
            cur.push(v.clone());
            let col: ExtRational = (0..=i).map(|r| cur[r * m + j].clone()).sum();
            let row: ExtRational = cur[i * m..].iter().cloned().sum();
            let ok = col <= g[j]
                && (f[i].is_inf() || row <= f[i])
                && (j + 1 < m || (scalar_lhd(&f1[i], &row) && scalar_lhd(&row, &f[i])));
            if ok && rec(k + 1, cur, cells, f1, f, g, nodes)? {
                return Ok(true);
            }
            cur.pop();
        }
        Ok(false)
    }
    let mut cur = Vec::new();
    Ok(if rec(0, &mut cur, &cells, f1, f, g, nodes)? {
        Some(cur.chunks(m).map(|c| c.to_vec()).collect())
    } else {
        None
    })
}

/// Search for `h_ij` with `f'_i ≪ Σ_j h_ij ≪ f_i` and `Σ_i h_ij <= g_j`, given
/// `f'_i ≪ f_i` and `Σ f_i <= Σ g_j` (at most three of each).
pub fn refinement_witness(
    ctx: &RealContext,
    f1: &[RealElement],
    f: &[RealElement],
    g: &[RealElement],
    den: u32,
) -> Result<Refinement> {
    let (n, m) = (f.len(), g.len());
    if n == 0 || m == 0 || n > MAX_REFINEMENT_SIZE || m > MAX_REFINEMENT_SIZE || f1.len() != n {
        return Err(Error::HypothesisFailed(format!("need 1..={MAX_REFINEMENT_SIZE} elements on each side")));
    }
    if let Some(i) = (0..n).find(|&i| !way_below_r(&f1[i], &f[i])) {
        return Err(Error::HypothesisFailed(format!("f'_{i} ≪ f_{i} fails")));
    }
    let zero = ctx.zero();
    if !leq_r(&crate::real::sum(f, &zero), &crate::real::sum(g, &zero)) {
        return Err(Error::HypothesisFailed("Σ f_i <= Σ g_j fails".into()));
    }
    let mut nodes = 0u64;
    if let Some(readers) = coordinate_readers(ctx) {
        let coords = |xs: &[RealElement]| xs.iter().map(|x| coordinates(x, &readers)).collect::<Vec<_>>();
        let (c1, cf, cg) = (coords(f1), coords(f), coords(g));
        let mut per_coord = Vec::new();
        for c in 0..readers.len() {
            let pick = |v: &Vec<Vec<ExtRational>>| v.iter().map(|x| x[c].clone()).collect::<Vec<_>>();
            match scalar_refinement(&pick(&c1), &pick(&cf), &pick(&cg), den, &mut nodes)? {
                Some(sol) => per_coord.push(sol),
                None => {
                    per_coord.clear();
                    break;
                }
            }
        }
        if per_coord.len() == readers.len() {
            let h: Vec<Vec<RealElement>> = (0..n)
                .map(|i| {
                    (0..m)
                        .map(|j| assemble(ctx, &per_coord.iter().map(|s| s[i][j].clone()).collect::<Vec<_>>()))
                        .collect::<Result<_>>()
                })
                .collect::<Result<_>>()?;
            if verify_refinement(f1, f, g, &h, &zero).iter().all(|c| c.pass) {
                return Ok(Refinement { h, nodes });
            }
        }
    }
    generic_refinement(ctx, f1, f, g, den, nodes)
}

fn generic_refinement(
    ctx: &RealContext,
    f1: &[RealElement],
    f: &[RealElement],
    g: &[RealElement],
    den: u32,
    mut nodes: u64,
) -> Result<Refinement> {
    let (n, m) = (f.len(), g.len());
    let zero = ctx.zero();
    let mut cells = Vec::new();
    for fi in f {
        for gj in g {
            let mut c = candidates_below(ctx, &pointwise_min(fi, gj), den)?;
            c.reverse();
            cells.push(c);
        }
    }
    struct Search<'a> {
        cells: &'a [Vec<RealElement>],
        f1: &'a [RealElement],
        f: &'a [RealElement],
        g: &'a [RealElement],
        zero: &'a RealElement,
        nodes: u64,
    }
    impl Search<'_> {
        fn rec(&mut self, k: usize, cur: &mut Vec<RealElement>) -> Result<bool> {
            let m = self.g.len();
            self.nodes += 1;
            if self.nodes > NODE_BUDGET {
                return Err(Error::SearchBoundExceeded(format!("{NODE_BUDGET} nodes")));
            }
            if k == self.cells.len() {
                return Ok(true);
            }
            let (i, j) = (k / m, k % m);
            for v in &self.cells[k] {
                cur.push(v.clone());
                let col: Vec<RealElement> = (0..=i).map(|r| cur[r * m + j].clone()).collect();
                let row = crate::real::sum(&cur[i * m..], self.zero);
                let ok = leq_r(&crate::real::sum(&col, self.zero), &self.g[j])
                    && leq_r(&row, &self.f[i])
                    && (j + 1 < m || (way_below_r(&self.f1[i], &row) && way_below_r(&row, &self.f[i])));
                if ok && self.rec(k + 1, cur)? {
                    return Ok(true);
                }
                cur.pop();
            }
            Ok(false)
        }
    }
    let mut s = Search { cells: &cells, f1, f, g, zero: &zero, nodes };
    let mut cur = Vec::new();
    let found = s.rec(0, &mut cur)?;
    nodes = s.nodes;
    if !found {
        return Err(Error::GridExhausted(format!("no refinement with denominators <= {den} ({nodes} nodes)")));
    }
    let h = cur.chunks(m).map(|c| c.to_vec()).collect::<Vec<_>>();
    debug_assert_eq!(h.len(), n);
    Ok(Refinement { h, nodes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ext::rat;
    use crate::model::Element;

    fn nbar(k: usize) -> RealContext {
        RealContext::new(CuModel::nbar_power(k), false).unwrap()
    }

    #[test]
    fn grid_value_sets() {
        assert_eq!(grid_values(2, &Rational::one()), vec![rat(0, 1), rat(1, 2), rat(1, 1)]);
        assert_eq!(grid_values(3, &rat(1, 2)).len(), 3);
        assert_eq!(floor_to_grid(&ExtRational::fin(rat(5, 7)), 4), ExtRational::fin(rat(2, 3)));
        assert_eq!(floor_to_grid(&ExtRational::Inf, 4), ExtRational::Inf);
    }

    #[test]
    fn meet_on_nbar_squared() {
        let ctx = nbar(2);
        let a = ctx.embed(&Element::vector(&[2, 1])).unwrap();
        let b = ctx.embed(&Element::vector(&[1, 3])).unwrap();
        let x = interpolation_meet(&ctx, &a, &b, 4).unwrap();
        assert_eq!(x, ctx.embed(&Element::vector(&[1, 1])).unwrap());
        for c in interpolation_checks(&ctx, &a, &b, &ctx.embed(&Element::vector(&[0, 2])).unwrap(), 4).unwrap() {
            assert!(c.pass, "{}", c.name);
        }
    }

    #[test]
    fn meet_generic_path_on_chain() {
        let ctx = RealContext::new(CuModel::monotone_chain(2), false).unwrap();
        let a = ctx.embed(&Element::vector(&[1, 1])).unwrap();
        let b = ctx.embed(&Element::vector(&[0, 2])).unwrap();
        let x = interpolation_meet(&ctx, &a, &b, 2).unwrap();
        assert!(leq_r(&x, &a) && leq_r(&x, &b));
    }

    #[test]
    fn refinement_on_nbar() {
        let ctx = nbar(1);
        let one = ctx.embed(&Element::vector(&[1])).unwrap();
        let half = scale(&rat(1, 2), &one);
        let r = refinement_witness(
            &ctx,
            &[half.clone(), half.clone()],
            &[one.clone(), one.clone()],
            &[one.clone(), one.clone()],
            4,
        )
        .unwrap();
        assert!(verify_refinement(
            &[half.clone(), half.clone()],
            &[one.clone(), one.clone()],
            &[one.clone(), one.clone()],
            &r.h,
            &ctx.zero()
        )
        .iter()
        .all(|c| c.pass));
        assert!(matches!(
            refinement_witness(
                &ctx,
                &[half.clone(), half.clone()],
                &[one.clone(), one.clone()],
                &[one.clone(), one.clone()],
                1
            ),
            Err(Error::GridExhausted(_))
        ));
        let single = vec![one];
        assert!(matches!(refinement_witness(&ctx, &single, &single, &single, 4), Err(Error::HypothesisFailed(_))));
    }
}
