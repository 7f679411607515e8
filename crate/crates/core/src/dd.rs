//! Extreme rays of a pointed rational polyhedral cone by the double description method.
//!
//! The cone is `{x : E x = 0, G x >= 0}`. Equalities are eliminated first by passing to
//! a nullspace basis; the inequalities are then added one at a time, starting from a
//! simplicial cone cut out by `d` linearly independent rows. Adjacency of rays is
//! decided combinatorially: two rays are adjacent when no third ray is tight on every
//! constraint they share.

use num::{Signed, Zero};

use crate::ext::Rational;

type Row = Vec<Rational>;

#[derive(Clone, Debug, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }
    fn contains(&self, o: &Bits) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| b & !a == 0)
    }
    fn count(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).filter(|(x, y)| !x.is_zero() && !y.is_zero()).map(|(x, y)| x * y).sum()
}

/// Divides by the absolute value of the first nonzero entry.
pub fn normalize(v: &mut [Rational]) {
    if let Some(p) = v.iter().find(|x| !x.is_zero()).map(|x| x.abs()) {
        v.iter_mut().for_each(|x| *x /= p);
    }
}

/// Reduced row echelon form in place; returns pivot columns.
fn rref(m: &mut [Row], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let pv = m[r][c];
        m[r].iter_mut().for_each(|x| *x /= pv);
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c];
                let pr = m[r].clone();
                m[i].iter_mut().zip(&pr).for_each(|(x, y)| *x -= f * y);
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    pivots
}

/// Basis of `{x in Q^n : E x = 0}`.
pub fn nullspace(eqs: &[Row], n: usize) -> Vec<Row> {
    let mut m: Vec<Row> = eqs.to_vec();
    let pivots = rref(&mut m, n);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); n];
            v[f] = Rational::from_integer(1);
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[r][f];
            }
            v
        })
        .collect()
}

/// Inverse of a square nonsingular matrix by Gauss–Jordan.
fn inverse(a: &[Row]) -> Vec<Row> {
    let d = a.len();
    let mut aug: Vec<Row> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..d).map(|j| Rational::from_integer((i == j) as i128)));
            r
        })
        .collect();
    let piv = rref(&mut aug, d);
    assert_eq!(piv.len(), d, "matrix is singular");
    aug.into_iter().map(|r| r[d..].to_vec()).collect()
}

/// Extreme rays of `{x : E x = 0, G x >= 0}`, normalized so the first nonzero entry is
/// 1 and sorted lexicographically.
///
/// Panics if the cone is not pointed; callers always include `x >= 0` among the rows.
pub fn extreme_rays(n: usize, eqs: &[Row], ineqs: &[Row]) -> Vec<Row> {
    let basis = nullspace(eqs, n);
    let d = basis.len();
    if d == 0 {
        return Vec::new();
    }
    // inequalities in nullspace coordinates
    let rows: Vec<Row> = ineqs.iter().map(|g| basis.iter().map(|b| dot(g, b)).collect()).collect();
    let m = rows.len();

    // d independent rows for the initial simplicial cone
    let mut chosen: Vec<usize> = Vec::new();
    let mut echelon: Vec<Row> = Vec::new();
    for (j, row) in rows.iter().enumerate() {
        let mut trial = echelon.clone();
        trial.push(row.clone());
        if rref(&mut trial, d).len() > echelon.len() {
            echelon = trial;
            chosen.push(j);
            if chosen.len() == d {
                break;
            }
        }
    }
    assert_eq!(chosen.len(), d, "cone is not pointed");
    let a0: Vec<Row> = chosen.iter().map(|&j| rows[j].clone()).collect();
    let inv = inverse(&a0);
    let mut rays: Vec<(Row, Bits)> = (0..d)
        .map(|k| {
            let mut r: Row = (0..d).map(|i| inv[i][k]).collect();
            normalize(&mut r);
            let mut z = Bits::new(m);
            for (idx, &j) in chosen.iter().enumerate() {
                if idx != k {
                    z.set(j);
                }
            }
            (r, z)
        })
        .collect();

    for j in (0..m).filter(|j| !chosen.contains(j)) {
        let vals: Vec<Rational> = rays.iter().map(|(r, _)| dot(&rows[j], r)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        if neg.is_empty() {
            for (i, v) in vals.iter().enumerate() {
                if v.is_zero() {
                    rays[i].1.set(j);
                }
            }
            continue;
        }
        let mut next: Vec<(Row, Bits)> = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common = rays[p].1.and(&rays[q].1);
                if (common.count() as usize) + 2 < d {
                    continue;
                }
                let adjacent = (0..rays.len()).all(|r| r == p || r == q || !rays[r].1.contains(&common));
                if !adjacent {
                    continue;
                }
                let (sp, sq) = (vals[p], vals[q]);
                let mut v: Row = rays[q].0.iter().zip(&rays[p].0).map(|(x, y)| sp * x - sq * y).collect();
                normalize(&mut v);
                let mut z = common;
                z.set(j);
                next.push((v, z));
            }
        }
        for (i, v) in vals.iter().enumerate() {
            if v.is_zero() {
                let mut ray = rays[i].clone();
                ray.1.set(j);
                next.push(ray);
            } else if v.is_positive() {
                next.push(rays[i].clone());
            }
        }
        rays = next;
    }

    let mut out: Vec<Row> = rays
        .into_iter()
        .map(|(y, _)| {
            let mut x = vec![Rational::zero(); n];
            for (k, b) in basis.iter().enumerate() {
                if !y[k].is_zero() {
                    x.iter_mut().zip(b).for_each(|(xi, bi)| *xi += y[k] * bi);
                }
            }
            normalize(&mut x);
            x
        })
        .collect();
    out.sort();
    out.dedup();
    out
}
