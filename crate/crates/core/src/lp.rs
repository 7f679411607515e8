//! Dense two-phase simplex over exact rationals with Bland's anti-cycling rule.
//!
//! All variables are nonnegative. Problems here have at most a few hundred entries,
//! so a dense tableau is the simplest correct choice.

use num::{Signed, Zero};

use crate::ext::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cmp {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug, Default)]
pub struct Lp {
    n: usize,
    rows: Vec<(Vec<Rational>, Cmp, Rational)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { value: Rational, x: Vec<Rational> },
    Infeasible,
    Unbounded,
}

impl Lp {
    /// `n` nonnegative variables and no constraints yet.
    pub fn new(n: usize) -> Self {
        Lp { n, rows: Vec::new() }
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn constrain(&mut self, coeffs: Vec<Rational>, cmp: Cmp, rhs: Rational) -> &mut Self {
        assert_eq!(coeffs.len(), self.n);
        self.rows.push((coeffs, cmp, rhs));
        self
    }

    /// Sparse helper: `Σ coef·x_var  cmp  rhs`.
    pub fn constrain_sparse(&mut self, terms: &[(usize, Rational)], cmp: Cmp, rhs: Rational) -> &mut Self {
        let mut row = vec![Rational::zero(); self.n];
        for (v, c) in terms {
            row[*v] += c;
        }
        self.constrain(row, cmp, rhs)
    }

    pub fn minimize(&self, c: &[Rational]) -> LpOutcome {
        assert_eq!(c.len(), self.n);
        Tableau::build(self).solve(c)
    }

    pub fn maximize(&self, c: &[Rational]) -> LpOutcome {
        let neg: Vec<Rational> = c.iter().map(|x| -x).collect();
        match self.minimize(&neg) {
            LpOutcome::Optimal { value, x } => LpOutcome::Optimal { value: -value, x },
            other => other,
        }
    }

    pub fn feasible_point(&self) -> Option<Vec<Rational>> {
        match self.minimize(&vec![Rational::zero(); self.n]) {
            LpOutcome::Optimal { x, .. } => Some(x),
            _ => None,
        }
    }
}

struct Tableau {
    n: usize,
    /// columns: original vars, then slack/surplus, then artificials
    cols: usize,
    first_art: usize,
    a: Vec<Vec<Rational>>,
    b: Vec<Rational>,
    basis: Vec<usize>,
}

impl Tableau {
    fn build(lp: &Lp) -> Tableau {
        let m = lp.rows.len();
        let n = lp.n;
        let slacks = lp.rows.iter().filter(|r| r.1 != Cmp::Eq).count();
        let mut rows: Vec<(Vec<Rational>, Cmp, Rational)> = lp.rows.clone();
        for (coef, cmp, rhs) in rows.iter_mut() {
            if rhs.is_negative() {
                coef.iter_mut().for_each(|x| *x = -*x);
                *rhs = -*rhs;
                *cmp = match cmp {
                    Cmp::Le => Cmp::Ge,
                    Cmp::Ge => Cmp::Le,
                    Cmp::Eq => Cmp::Eq,
                };
            }
        }
        let arts = rows.iter().filter(|r| r.1 != Cmp::Le).count();
        let cols = n + slacks + arts;
        let first_art = n + slacks;
        let mut a = vec![vec![Rational::zero(); cols]; m];
        let mut b = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let (mut next_slack, mut next_art) = (n, first_art);
        for (i, (coef, cmp, rhs)) in rows.into_iter().enumerate() {
            a[i][..n].clone_from_slice(&coef);
            match cmp {
                Cmp::Le => {
                    a[i][next_slack] = Rational::from_integer(1);
                    basis.push(next_slack);
                    next_slack += 1;
                }
                Cmp::Ge => {
                    a[i][next_slack] = Rational::from_integer(-1);
                    next_slack += 1;
                    a[i][next_art] = Rational::from_integer(1);
                    basis.push(next_art);
                    next_art += 1;
                }
                Cmp::Eq => {
                    a[i][next_art] = Rational::from_integer(1);
                    basis.push(next_art);
                    next_art += 1;
                }
            }
            b.push(rhs);
        }
        Tableau { n, cols, first_art, a, b, basis }
    }

    fn pivot(&mut self, r: usize, c: usize, obj: &mut [Rational], obj_val: &mut Rational) {
        let p = self.a[r][c];
        self.a[r].iter_mut().for_each(|x| *x /= p);
        self.b[r] /= p;
        let prow = self.a[r].clone();
        let pb = self.b[r];
        for i in 0..self.a.len() {
            if i == r || self.a[i][c].is_zero() {
                continue;
            }
            let f = self.a[i][c];
            for (x, y) in self.a[i].iter_mut().zip(&prow) {
                if !y.is_zero() {
                    *x -= f * y;
                }
            }
            self.b[i] -= f * pb;
        }
        if !obj[c].is_zero() {
            let f = obj[c];
            for (x, y) in obj.iter_mut().zip(&prow) {
                if !y.is_zero() {
                    *x -= f * y;
                }
            }
            *obj_val -= f * pb;
        }
        self.basis[r] = c;
    }

    /// Minimizes the objective whose reduced-cost row is `obj` over columns `< limit`.
    /// Returns false if unbounded.
    fn run(&mut self, obj: &mut [Rational], obj_val: &mut Rational, limit: usize) -> bool {
        loop {
            let Some(c) = (0..limit).find(|&j| obj[j].is_negative()) else { return true };
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.a.len() {
                if self.a[i][c].is_positive() {
                    let ratio = self.b[i] / self.a[i][c];
                    let better = match &best {
                        None => true,
                        Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                    };
                    if better {
                        best = Some((i, ratio));
                    }
                }
            }
            let Some((r, _)) = best else { return false };
            self.pivot(r, c, obj, obj_val);
        }
    }

    fn solve(mut self, c: &[Rational]) -> LpOutcome {
        let m = self.a.len();
        // phase I: minimize the sum of artificials
        let mut obj = vec![Rational::zero(); self.cols];
        let mut val = Rational::zero();
        for j in self.first_art..self.cols {
            obj[j] = Rational::from_integer(1);
        }
        for i in 0..m {
            if self.basis[i] >= self.first_art {
                for j in 0..self.cols {
                    obj[j] -= self.a[i][j];
                }
                val -= self.b[i];
            }
        }
        let cols = self.cols;
        self.run(&mut obj, &mut val, cols);
        if !val.is_zero() {
            return LpOutcome::Infeasible;
        }
        // drive remaining (zero-valued) artificials out of the basis
        let mut i = 0;
        while i < self.a.len() {
            if self.basis[i] >= self.first_art {
                match (0..self.first_art).find(|&j| !self.a[i][j].is_zero()) {
                    Some(j) => self.pivot(i, j, &mut obj, &mut val),
                    None => {
                        self.a.remove(i);
                        self.b.remove(i);
                        self.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
        // phase II
        let mut obj = vec![Rational::zero(); self.cols];
        obj[..self.n].clone_from_slice(c);
        let mut val = Rational::zero();
        for i in 0..self.a.len() {
            let cb = if self.basis[i] < self.n { c[self.basis[i]] } else { Rational::zero() };
            if cb.is_zero() {
                continue;
            }
            for j in 0..self.cols {
                obj[j] -= cb * self.a[i][j];
            }
            val -= cb * self.b[i];
        }
        let limit = self.first_art;
        if !self.run(&mut obj, &mut val, limit) {
            return LpOutcome::Unbounded;
        }
        let mut x = vec![Rational::zero(); self.n];
        for (i, &bv) in self.basis.iter().enumerate() {
            if bv < self.n {
                x[bv] = self.b[i];
            }
        }
        LpOutcome::Optimal { value: -val, x }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ext::{int, rat};

    #[test]
    fn small_maximization() {
        // max x + y s.t. x + 2y <= 4, 3x + y <= 6
        let mut lp = Lp::new(2);
        lp.constrain(vec![int(1), int(2)], Cmp::Le, int(4));
        lp.constrain(vec![int(3), int(1)], Cmp::Le, int(6));
        match lp.maximize(&[int(1), int(1)]) {
            LpOutcome::Optimal { value, x } => {
                assert_eq!(value, rat(14, 5));
                assert_eq!(x, vec![rat(8, 5), rat(6, 5)]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn equality_and_ge_rows() {
        // min x s.t. x + y = 3, x >= 1, y <= 1  ->  x = 2
        let mut lp = Lp::new(2);
        lp.constrain(vec![int(1), int(1)], Cmp::Eq, int(3));
        lp.constrain(vec![int(1), int(0)], Cmp::Ge, int(1));
        lp.constrain(vec![int(0), int(1)], Cmp::Le, int(1));
        assert_eq!(lp.minimize(&[int(1), int(0)]), LpOutcome::Optimal { value: int(2), x: vec![int(2), int(1)] });
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut lp = Lp::new(1);
        lp.constrain(vec![int(1)], Cmp::Ge, int(2));
        lp.constrain(vec![int(1)], Cmp::Le, int(1));
        assert_eq!(lp.minimize(&[int(1)]), LpOutcome::Infeasible);
        let mut lp = Lp::new(1);
        lp.constrain(vec![int(1)], Cmp::Ge, int(2));
        assert_eq!(lp.maximize(&[int(1)]), LpOutcome::Unbounded);
    }

    #[test]
    fn redundant_equalities_and_negative_rhs() {
        let mut lp = Lp::new(2);
        lp.constrain(vec![int(1), int(1)], Cmp::Eq, int(2));
        lp.constrain(vec![int(2), int(2)], Cmp::Eq, int(4));
        lp.constrain(vec![int(-1), int(0)], Cmp::Le, int(-1));
        match lp.maximize(&[int(0), int(1)]) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, int(1)),
            other => panic!("{other:?}"),
        }
    }

    /// Degenerate problem known to cycle under the textbook largest-coefficient rule.
    #[test]
    fn bland_rule_terminates_on_degenerate_problem() {
        let mut lp = Lp::new(4);
        lp.constrain(vec![rat(1, 2), rat(-11, 2), rat(-5, 2), int(9)], Cmp::Le, int(0));
        lp.constrain(vec![rat(1, 2), rat(-3, 2), rat(-1, 2), int(1)], Cmp::Le, int(0));
        lp.constrain(vec![int(1), int(0), int(0), int(0)], Cmp::Le, int(1));
        match lp.maximize(&[int(10), int(-57), int(-9), int(-24)]) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, int(1)),
            other => panic!("{other:?}"),
        }
    }
}
