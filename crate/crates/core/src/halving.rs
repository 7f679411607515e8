//! Halving in simple semigroups: a nonzero `z` with `2z <= x`, unless the semigroup is
//! generated by a single element as `{0, e, 2e, ..., inf}`.
//!
//! In a finite table every minimal nonzero `x` can only be halved by `z = x`, forcing
//! `x + x = x`; so a finite simple table halves all its elements only when it is
//! `{0, inf}`. Finite truncations `{0, e, ..., m·e, inf}` are the finite analogue of the
//! chain case and are reported as such.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{CuModel, Element};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Halving {
    Witness { z: Element },
    ChainCase { generator: Element },
}

/// Grid bound for checks on `N̄`.
const GRID: u64 = 8;

fn candidates(m: &CuModel, x: &Element) -> Vec<Element> {
    match x {
        Element::Index(_) => m.elements().unwrap(),
        Element::Vector(v) => {
            let bound = v.iter().filter_map(|c| c.finite()).max().unwrap_or(0).max(1);
            m.grid(bound, true)
        }
    }
}

/// Every nonzero element has `inf·s` equal to the maximum.
pub fn check_simple(m: &CuModel) -> Result<()> {
    let top = m.top().ok_or_else(|| Error::NotSimple("no maximum element".into()))?;
    let elems = match m {
        CuModel::FiniteTable(_) => m.elements().unwrap(),
        // inf·s depends only on the support of s
        _ => m.generators(),
    };
    for s in elems.iter().filter(|s| !m.is_zero(s)) {
        if m.infinity_multiple(s)? != top {
            return Err(Error::NotSimple(format!("inf·{s} is not the maximum")));
        }
    }
    Ok(())
}

/// `S = {0, e, 2e, ..., inf}` with `e` the least nonzero element and `e` not the maximum.
pub fn chain_generator(m: &CuModel) -> Option<Element> {
    let top = m.top()?;
    let elems = match m {
        CuModel::FiniteTable(_) => m.elements().unwrap(),
        CuModel::NbarPower { k: 1 } | CuModel::MonotoneChain { k: 1 } => m.grid(GRID, true),
        _ => return None,
    };
    let nonzero: Vec<&Element> = elems.iter().filter(|s| !m.is_zero(s)).collect();
    let e = *nonzero.iter().find(|e| nonzero.iter().all(|s| m.leq_unchecked(e, s)))?;
    if *e == top {
        return None;
    }
    let total = elems.iter().all(|a| elems.iter().all(|b| m.leq_unchecked(a, b) || m.leq_unchecked(b, a)));
    let generated = elems
        .iter()
        .all(|s| *s == top || (0..=elems.len() as u64 + GRID).any(|n| m.nat_multiple_unchecked(n, e) == *s));
    (total && generated).then(|| e.clone())
}

/// A nonzero `z` with `2z <= x` (least in enumeration order), or the chain case.
pub fn halving(m: &CuModel, x: &Element) -> Result<Halving> {
    m.check(x)?;
    check_simple(m)?;
    if m.is_zero(x) {
        return Err(Error::HypothesisFailed("x must be nonzero".into()));
    }
    let found = candidates(m, x).into_iter().find(|z| !m.is_zero(z) && m.leq_unchecked(&m.add_unchecked(z, z), x));
    if let Some(z) = found {
        return Ok(Halving::Witness { z });
    }
    chain_generator(m).map(|generator| Halving::ChainCase { generator }).ok_or_else(|| {
        Error::HypothesisFailed(format!("no z with 2z <= {x}, yet the model is not a single-generator chain"))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn nbar_examples() {
        let m = CuModel::nbar_power(1);
        assert_eq!(
            halving(&m, &Element::vector(&[1])).unwrap(),
            Halving::ChainCase { generator: Element::vector(&[1]) }
        );
        assert_eq!(halving(&m, &Element::vector(&[2])).unwrap(), Halving::Witness { z: Element::vector(&[1]) });
        assert_eq!(
            halving(&m, &Element::parse("inf").unwrap()).unwrap(),
            Halving::Witness { z: Element::vector(&[1]) }
        );
        assert!(halving(&m, &Element::vector(&[0])).is_err());
    }

    #[test]
    fn simplicity_is_checked_first() {
        assert!(matches!(halving(&CuModel::nbar_power(2), &Element::vector(&[1, 1])), Err(Error::NotSimple(_))));
        assert!(matches!(halving(&CuModel::monotone_chain(2), &Element::vector(&[1, 1])), Err(Error::NotSimple(_))));
        let p = fixtures::product(&fixtures::two_point(), &fixtures::two_point());
        assert!(matches!(halving(&p, &Element::Index(3)), Err(Error::NotSimple(_))));
    }

    #[test]
    fn finite_tables() {
        assert_eq!(
            halving(&fixtures::two_point(), &Element::Index(1)).unwrap(),
            Halving::Witness { z: Element::Index(1) }
        );
        let t = fixtures::three_point();
        assert_eq!(halving(&t, &Element::Index(1)).unwrap(), Halving::ChainCase { generator: Element::Index(1) });
        assert_eq!(halving(&t, &Element::Index(2)).unwrap(), Halving::Witness { z: Element::Index(1) });
    }

    #[test]
    fn enumerated_tables_never_error() {
        let mut simple = 0;
        for n in 1..=3 {
            for m in fixtures::enumerate_tables(n) {
                if check_simple(&m).is_err() {
                    continue;
                }
                simple += 1;
                for x in m.elements().unwrap().into_iter().skip(1) {
                    halving(&m, &x).unwrap();
                }
            }
        }
        assert!(simple > 0);
    }
}
