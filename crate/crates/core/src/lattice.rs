//! Joins and meets of functionals through the Kantorovich formulas
//!
//! ```text
//! κ(f)  = sup { λ1(f1) + λ2(f2) : f1 + f2 <= f }
//! κ'(f) = inf { λ1(f1) + λ2(f2) : f <= f1 + f2 }
//! ```
//!
//! followed by regularization. Every upper bound `μ` of `λ1, λ2` satisfies
//! `μ(f) >= μ(f1) + μ(f2) >= κ(f)`, and every lower bound `ν` satisfies `ν <= κ'`; so
//! the join is the least functional above `κ` and the meet the greatest below `κ'`.
//!
//! Vector models: generators are finite, so the regularized value on a generator is
//! the raw one, and both searches run over the finite grid below the generator (a cover
//! `f <= f1 + f2` can be truncated to `min(f1, f) + min(f2, f)` without raising the cost).
//!
//! Finite tables: if `κ` (resp. `κ'`) is already a functional it is the answer.
//! Otherwise the bound is found by exact LPs over the finite-part cones: the join takes,
//! for each element, the least value any functional `>= κ` can have there, and the result
//! is checked to be a functional itself.

use serde::Serialize;

use num::Zero;

use crate::cone::{enumerate_ideals, finite_part_system, Functional, Ideal};
use crate::error::{Error, Result};
use crate::ext::{ExtRational, Rational};
use crate::lp::{Cmp, Lp, LpOutcome};
use crate::model::{CuModel, Element};

/// Raw `κ(f)`.
pub fn kantorovich_sup(m: &CuModel, l1: &Functional, l2: &Functional, f: &Element) -> ExtRational {
    let below = m.elements_below(f);
    let mut best = ExtRational::zero();
    for f1 in &below {
        for f2 in &below {
            if m.leq_unchecked(&m.add_unchecked(f1, f2), f) {
                best = best.max(l1.eval(f1) + l2.eval(f2));
            }
        }
    }
    best
}

/// Raw `κ'(f)`; covers are truncated below `f` (vector models) or range over the whole
/// table.
pub fn kantorovich_inf(m: &CuModel, l1: &Functional, l2: &Functional, f: &Element) -> ExtRational {
    let pool = match m {
        CuModel::FiniteTable(_) => m.elements().unwrap(),
        _ => m.elements_below(f),
    };
    let mut best = ExtRational::Inf;
    for f1 in &pool {
        for f2 in &pool {
            if m.leq_unchecked(f, &m.add_unchecked(f1, f2)) {
                best = best.min(l1.eval(f1) + l2.eval(f2));
            }
        }
    }
    best
}

pub fn join(m: &CuModel, l1: &Functional, l2: &Functional) -> Result<Functional> {
    let gens = probe(m);
    let kappa: Vec<ExtRational> = gens.iter().map(|g| kantorovich_sup(m, l1, l2, g)).collect();
    let out = match Functional::from_generator_values(m, kappa.clone()) {
        Ok(f) => f,
        Err(_) if m.is_finite() => least_above(m, &kappa)?,
        Err(e) => return Err(Error::Lattice(format!("join: {e}"))),
    };
    if !(l1.leq(m, &out) && l2.leq(m, &out)) {
        return Err(Error::Lattice("join is not an upper bound".into()));
    }
    Ok(out)
}

pub fn meet(m: &CuModel, l1: &Functional, l2: &Functional) -> Result<Functional> {
    let gens = probe(m);
    let kappa: Vec<ExtRational> = gens.iter().map(|g| kantorovich_inf(m, l1, l2, g)).collect();
    let out = match Functional::from_generator_values(m, kappa.clone()) {
        Ok(f) => f,
        Err(_) if m.is_finite() => greatest_below(m, &kappa)?,
        Err(e) => return Err(Error::Lattice(format!("meet: {e}"))),
    };
    if !(out.leq(m, l1) && out.leq(m, l2)) {
        return Err(Error::Lattice("meet is not a lower bound".into()));
    }
    Ok(out)
}

fn probe(m: &CuModel) -> Vec<Element> {
    match m {
        CuModel::FiniteTable(_) => m.elements().unwrap(),
        _ => m.generators(),
    }
}

fn unit(nv: usize, j: usize) -> Vec<Rational> {
    let mut c = vec![Rational::zero(); nv];
    c[j] = Rational::from_integer(1);
    c
}

/// Least functional `>= kappa` on a finite table.
fn least_above(m: &CuModel, kappa: &[ExtRational]) -> Result<Functional> {
    let n = kappa.len();
    let mut best = vec![ExtRational::Inf; n];
    for ideal in enumerate_ideals(m, true)? {
        if ideal.indices().iter().any(|&a| kappa[a].is_inf()) {
            continue;
        }
        let sys = finite_part_system(m, &ideal);
        let nv = sys.vars.len();
        let mut lp = Lp::new(nv);
        sys.add_to(&mut lp);
        for (j, &a) in sys.vars.iter().enumerate() {
            lp.constrain(unit(nv, j), Cmp::Ge, *kappa[a].finite().unwrap());
        }
        for (j, &a) in sys.vars.iter().enumerate() {
            match lp.minimize(&unit(nv, j)) {
                LpOutcome::Optimal { value, .. } => best[a] = best[a].clone().min(ExtRational::fin(value)),
                LpOutcome::Infeasible => break,
                LpOutcome::Unbounded => unreachable!("bounded below by zero"),
            }
        }
    }
    let f = Functional::Values(best);
    f.validate(m).map_err(|e| Error::Lattice(format!("no least upper bound: {e}")))?;
    Ok(f)
}

/// Greatest functional `<= kappa` on a finite table.
fn greatest_below(m: &CuModel, kappa: &[ExtRational]) -> Result<Functional> {
    let n = kappa.len();
    let ideal = Ideal::Members((0..n).filter(|&a| kappa[a].is_finite()).collect());
    if !enumerate_ideals(m, true)?.contains(&ideal) {
        return Err(Error::Lattice("finiteness set of κ' is not an ideal".into()));
    }
    let sys = finite_part_system(m, &ideal);
    let nv = sys.vars.len();
    let mut lp = Lp::new(nv);
    sys.add_to(&mut lp);
    for (j, &a) in sys.vars.iter().enumerate() {
        lp.constrain(unit(nv, j), Cmp::Le, *kappa[a].finite().unwrap());
    }
    let mut best = vec![ExtRational::Inf; n];
    for (j, &a) in sys.vars.iter().enumerate() {
        match lp.maximize(&unit(nv, j)) {
            LpOutcome::Optimal { value, .. } => best[a] = ExtRational::fin(value),
            other => return Err(Error::Lattice(format!("meet LP: {other:?}"))),
        }
    }
    let f = Functional::Values(best);
    f.validate(m).map_err(|e| Error::Lattice(format!("no greatest lower bound: {e}")))?;
    Ok(f)
}

/// Pointwise supremum of an upward directed finite family.
pub fn directed_sup(m: &CuModel, family: &[Functional]) -> Result<Functional> {
    for (i, a) in family.iter().enumerate() {
        for (j, b) in family.iter().enumerate().skip(i + 1) {
            if !family.iter().any(|c| a.leq(m, c) && b.leq(m, c)) {
                return Err(Error::NotDirected(format!("members {i} and {j} have no upper bound in the family")));
            }
        }
    }
    let mut d = Functional::zero(m).generator_values(m);
    for f in family {
        for (x, y) in d.iter_mut().zip(f.generator_values(m)) {
            if y > *x {
                *x = y;
            }
        }
    }
    Functional::from_generator_values(m, d)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub pass: bool,
    /// Generator (element) at which the two sides differ.
    pub witness: Option<String>,
}

type Op<'a> = &'a dyn Fn(&Functional, &Functional) -> Result<Functional>;

/// Lattice laws and the two translation identities on a triple.
pub fn check_lattice_identities(
    m: &CuModel,
    l1: &Functional,
    l2: &Functional,
    l3: &Functional,
) -> Result<Vec<IdentityCheck>> {
    check_lattice_identities_with(m, l1, l2, l3, &|a, b| join(m, a, b), &|a, b| meet(m, a, b))
}

/// As [`check_lattice_identities`] with caller-supplied operations.
pub fn check_lattice_identities_with(
    m: &CuModel,
    l1: &Functional,
    l2: &Functional,
    l3: &Functional,
    j: Op,
    mt: Op,
) -> Result<Vec<IdentityCheck>> {
    let gens = probe(m);
    let cmp = |name: &'static str, a: Functional, b: Functional| {
        let (da, db) = (a.generator_values(m), b.generator_values(m));
        let witness = (0..da.len()).find(|&i| da[i] != db[i]).map(|i| gens[i].to_string());
        IdentityCheck { name, pass: witness.is_none(), witness }
    };
    let add = |a: &Functional, b: &Functional| a.add(b);
    let mut out = vec![
        cmp("join_translation", add(&j(l1, l2)?, l3), j(&add(l1, l3), &add(l2, l3))?),
        cmp("meet_translation", add(&mt(l1, l2)?, l3), mt(&add(l1, l3), &add(l2, l3))?),
        cmp("join_commutative", j(l1, l2)?, j(l2, l1)?),
        cmp("meet_commutative", mt(l1, l2)?, mt(l2, l1)?),
        cmp("join_associative", j(&j(l1, l2)?, l3)?, j(l1, &j(l2, l3)?)?),
        cmp("meet_associative", mt(&mt(l1, l2)?, l3)?, mt(l1, &mt(l2, l3)?)?),
        cmp("join_idempotent", j(l1, l1)?, l1.clone()),
        cmp("meet_idempotent", mt(l1, l1)?, l1.clone()),
        cmp("absorption_join_meet", j(l1, &mt(l1, l2)?)?, l1.clone()),
        cmp("absorption_meet_join", mt(l1, &j(l1, l2)?)?, l1.clone()),
        cmp("meet_distributes", mt(l1, &j(l2, l3)?)?, j(&mt(l1, l2)?, &mt(l1, l3)?)?),
        cmp("join_distributes", j(l1, &mt(l2, l3)?)?, mt(&j(l1, l2)?, &j(l1, l3)?)?),
    ];
    // order consistency: a <= b iff a ∧ b = a
    let le = l1.leq(m, l2);
    let consistent = le == (mt(l1, l2)? == *l1);
    out.push(IdentityCheck { name: "order_consistency", pass: consistent, witness: None });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::FunctionalCone;
    use crate::ext::int;
    use crate::fixtures;

    fn c(v: &[i128]) -> Functional {
        Functional::Coefficients(v.iter().map(|&x| ExtRational::from_int(x)).collect())
    }

    #[test]
    fn nbar_examples() {
        let m = CuModel::nbar_power(2);
        let (e1, e2) = (c(&[1, 0]), c(&[0, 1]));
        let j = join(&m, &e1, &e2).unwrap();
        assert_eq!(j, c(&[1, 1]));
        assert_eq!(j.eval(&Element::vector(&[1, 1])), ExtRational::from_int(2));
        assert_eq!(kantorovich_sup(&m, &e1, &e2, &Element::vector(&[1, 1])), ExtRational::from_int(2));
        assert_eq!(meet(&m, &e1, &e2).unwrap(), c(&[0, 0]));
        let l = c(&[3, 2]);
        assert_eq!(join(&m, &l, &l).unwrap(), l);
        assert_eq!(meet(&m, &l, &l).unwrap(), l);
        assert_eq!(join(&m, &l, &Functional::zero(&m)).unwrap(), l);
        assert_eq!(meet(&m, &l, &Functional::zero(&m)).unwrap(), Functional::zero(&m));
    }

    #[test]
    fn directed_suprema() {
        let m = CuModel::nbar_power(1);
        let fam: Vec<Functional> = [1, 2, 4].iter().map(|&x| c(&[x])).collect();
        assert_eq!(directed_sup(&m, &fam).unwrap(), c(&[4]));
        assert_eq!(directed_sup(&m, &[c(&[2]), c(&[2])]).unwrap(), c(&[2]));
        let m2 = CuModel::nbar_power(2);
        let (e1, e2) = (c(&[1, 0]), c(&[0, 1]));
        assert!(matches!(directed_sup(&m2, &[e1.clone(), e2.clone()]), Err(Error::NotDirected(_))));
        let j = join(&m2, &e1, &e2).unwrap();
        assert_eq!(directed_sup(&m2, &[e1, e2, j.clone()]).unwrap(), j);
    }

    #[test]
    fn identities_hold_on_nbar_and_detect_a_corrupted_meet() {
        let m = CuModel::nbar_power(2);
        let (e1, e2) = (c(&[1, 0]), c(&[0, 1]));
        let checks = check_lattice_identities(&m, &e1, &e2, &e1).unwrap();
        assert!(checks.iter().all(|c| c.pass), "{checks:?}");
        let zero = Functional::zero(&m);
        assert!(check_lattice_identities(&m, &e1, &e2, &zero).unwrap().iter().all(|c| c.pass));
        // meet that forgets to take the minimum on the second coordinate
        let bad = |a: &Functional, b: &Functional| -> Result<Functional> {
            let mut g = meet(&m, a, b)?.generator_values(&m);
            g[1] = a.generator_values(&m)[1].clone();
            Ok(Functional::Coefficients(g))
        };
        let checks = check_lattice_identities_with(&m, &e2, &e1, &e1, &|a, b| join(&m, a, b), &bad).unwrap();
        let failed: Vec<_> = checks.iter().filter(|c| !c.pass).collect();
        assert!(!failed.is_empty());
        assert!(failed.iter().all(|c| c.witness.is_some() || c.name == "order_consistency"));
    }

    #[test]
    fn table_joins_and_meets_are_bounds() {
        for (name, m) in fixtures::finite_fixtures() {
            let cone = FunctionalCone::compute(&m, false).unwrap();
            let reps: Vec<&Functional> = cone.functionals().collect();
            for a in &reps {
                for b in &reps {
                    let j = join(&m, a, b).unwrap_or_else(|e| panic!("{name}: {e}"));
                    let mt = meet(&m, a, b).unwrap_or_else(|e| panic!("{name}: {e}"));
                    for r in &reps {
                        if a.leq(&m, r) && b.leq(&m, r) {
                            assert!(j.leq(&m, r), "{name}");
                        }
                        if r.leq(&m, a) && r.leq(&m, b) {
                            assert!(r.leq(&m, &mt), "{name}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn chain_join_is_generatorwise_max() {
        let m = CuModel::monotone_chain(2);
        let a = Functional::from_generator_values(&m, vec![ExtRational::from_int(1), ExtRational::zero()]).unwrap();
        let b =
            Functional::from_generator_values(&m, vec![ExtRational::from_int(1), ExtRational::from_int(1)]).unwrap();
        let j = join(&m, &a, &b).unwrap();
        assert_eq!(j.generator_values(&m), vec![ExtRational::from_int(1), ExtRational::from_int(1)]);
        let _ = int(0);
    }
}
